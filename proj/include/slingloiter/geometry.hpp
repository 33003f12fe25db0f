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

// SO(3) and vector primitives shared by every other module.

#ifndef SLINGLOITER_GEOMETRY_HPP_
#define SLINGLOITER_GEOMETRY_HPP_

#include <Eigen/Dense>

namespace slingloiter {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

// Anchors closer than this are treated as the same point (m).
inline constexpr double kGeometryEpsilon = 1e-9;
// Tolerance on |v| - 1 for UnitVec3 and on R^T R - I / det R - 1 for Rotation.
inline constexpr double kUnitTolerance = 1e-9;

// A Vec3 whose norm is within kUnitTolerance of one.
class UnitVec3 {
 public:
  // Throws InvalidModel if |v| is not already unit.
  static UnitVec3 FromUnit(const Vec3& v);
  // Throws InvalidModel if |v| <= kGeometryEpsilon.
  static UnitVec3 Normalize(const Vec3& v);

  const Vec3& vec() const { return v_; }
  operator const Vec3&() const { return v_; }  // NOLINT
  double operator[](int i) const { return v_[i]; }
  UnitVec3 operator-() const { return UnitVec3(-v_); }

 private:
  explicit UnitVec3(const Vec3& v) : v_(v) {}
  Vec3 v_;
};

// Attitude of a frame w.r.t. the world frame, stored as a proper orthogonal
// matrix.
class Rotation {
 public:
  Rotation() : m_(Mat3::Identity()) {}

  static Rotation Identity() { return Rotation(); }
  // Throws InvalidModel unless m is orthonormal with det +1 (kUnitTolerance).
  static Rotation FromMatrix(const Mat3& m);
  // Closest rotation in Frobenius norm (SVD polar projection).
  static Rotation Project(const Mat3& m);
  // Z-Y-X convention: R = Rz(yaw) * Ry(pitch) * Rx(roll). Radians.
  static Rotation FromRollPitchYaw(double roll, double pitch, double yaw);

  const Mat3& matrix() const { return m_; }
  Rotation transpose() const { return Rotation(m_.transpose(), kTrusted); }
  Vec3 operator*(const Vec3& v) const { return m_ * v; }
  Rotation operator*(const Rotation& other) const {
    return Rotation(m_ * other.m_, kTrusted);
  }
  // (roll, pitch, yaw) in radians, inverse of FromRollPitchYaw.
  Vec3 RollPitchYaw() const;
  // max(|R^T R - I|_max, |det R - 1|).
  double OrthonormalityError() const;

 private:
  struct TrustedTag {};
  static constexpr TrustedTag kTrusted{};
  Rotation(const Mat3& m, TrustedTag) : m_(m) {}
  Mat3 m_;
};

// S(v) with S(v) w = v x w.
Mat3 skew(const Vec3& v);

// Rodrigues' formula; so3_exp(0) = I.
Rotation so3_exp(const Vec3& w);

// (bi - bj) / |bi - bj|. Throws CoincidentAnchors if |bi - bj| <= 1e-9 m.
// The indices only label the error.
UnitVec3 unit_between(const Vec3& bi, const Vec3& bj, int i = 0, int j = 1);

// Geodesic distance on SO(3): arccos((tr(A^T B) - 1) / 2), evaluated with
// atan2 so that small angles keep full precision.
double geodesic_angle(const Rotation& a, const Rotation& b);

}  // namespace slingloiter

#endif  // SLINGLOITER_GEOMETRY_HPP_
