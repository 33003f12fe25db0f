// Copyright 2026 The slingloiter Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "slingloiter/geometry.hpp"

#include <cmath>

#include "slingloiter/errors.hpp"

namespace slingloiter {

UnitVec3 UnitVec3::FromUnit(const Vec3& v) {
  if (!v.allFinite() || std::abs(v.norm() - 1.0) > kUnitTolerance) {
    throw InvalidModel("vector is not unit length");
  }
  return UnitVec3(v);
}

UnitVec3 UnitVec3::Normalize(const Vec3& v) {
  const double n = v.norm();
  if (!(n > kGeometryEpsilon)) {
    throw InvalidModel("cannot normalize a (near) zero vector");
  }
  return UnitVec3(v / n);
}

Rotation Rotation::FromMatrix(const Mat3& m) {
  Rotation r(m, kTrusted);
  if (!m.allFinite() || r.OrthonormalityError() > kUnitTolerance) {
    throw InvalidModel("matrix is not a proper rotation");
  }
  return r;
}

Rotation Rotation::Project(const Mat3& m) {
  Eigen::JacobiSVD<Mat3> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  Mat3 u = svd.matrixU();
  const Mat3& v = svd.matrixV();
  if ((u * v.transpose()).determinant() < 0.0) u.col(2) *= -1.0;
  return Rotation(u * v.transpose(), kTrusted);
}

Rotation Rotation::FromRollPitchYaw(double roll, double pitch, double yaw) {
  const Mat3 m = (Eigen::AngleAxisd(yaw, Vec3::UnitZ()) *
                  Eigen::AngleAxisd(pitch, Vec3::UnitY()) *
                  Eigen::AngleAxisd(roll, Vec3::UnitX()))
                     .toRotationMatrix();
  return Rotation(m, kTrusted);
}

Vec3 Rotation::RollPitchYaw() const {
  const double pitch =
      std::atan2(-m_(2, 0), std::hypot(m_(0, 0), m_(1, 0)));
  const double roll = std::atan2(m_(2, 1), m_(2, 2));
  const double yaw = std::atan2(m_(1, 0), m_(0, 0));
  return {roll, pitch, yaw};
}

double Rotation::OrthonormalityError() const {
  const double ortho =
      (m_.transpose() * m_ - Mat3::Identity()).cwiseAbs().maxCoeff();
  return std::max(ortho, std::abs(m_.determinant() - 1.0));
}

Mat3 skew(const Vec3& v) {
  Mat3 s;
  s << 0.0, -v.z(), v.y(),
       v.z(), 0.0, -v.x(),
       -v.y(), v.x(), 0.0;
  return s;
}

Rotation so3_exp(const Vec3& w) {
  const double theta = w.norm();
  const Mat3 k = skew(w);
  double a;
  double b;
  if (theta < 1e-6) {
    // Taylor expansions of sin(t)/t and (1 - cos t)/t^2.
    const double t2 = theta * theta;
    a = 1.0 - t2 / 6.0 + t2 * t2 / 120.0;
    b = 0.5 - t2 / 24.0 + t2 * t2 / 720.0;
  } else {
    a = std::sin(theta) / theta;
    b = (1.0 - std::cos(theta)) / (theta * theta);
  }
  return Rotation::FromMatrix(Mat3::Identity() + a * k + b * k * k);
}

UnitVec3 unit_between(const Vec3& bi, const Vec3& bj, int i, int j) {
  const Vec3 d = bi - bj;
  const double n = d.norm();
  if (!(n > kGeometryEpsilon)) throw CoincidentAnchors(i, j);
  return UnitVec3::FromUnit(d / n);
}

double geodesic_angle(const Rotation& a, const Rotation& b) {
  const Mat3 r = a.matrix().transpose() * b.matrix();
  const Vec3 axis(r(2, 1) - r(1, 2), r(0, 2) - r(2, 0), r(1, 0) - r(0, 1));
  const double s = 0.5 * axis.norm();
  const double c = 0.5 * (r.trace() - 1.0);
  return std::atan2(s, c);
}

}  // namespace slingloiter
