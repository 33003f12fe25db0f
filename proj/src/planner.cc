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

#include "slingloiter/planner.hpp"

#include <cmath>
#include <numbers>
#include <utility>

#include "slingloiter/errors.hpp"

namespace slingloiter {

void LambdaTrajectory::Validate() const {
  const auto m = initial.size();
  if (amplitude.size() != m || frequency.size() != m || phase.size() != m) {
    throw InvalidModel("lambda trajectory arrays differ in length");
  }
  if (!(lower_bound <= upper_bound)) {
    throw InvalidModel("lambda lower bound exceeds upper bound");
  }
  for (Eigen::Index i = 0; i < m; ++i) {
    if (!std::isfinite(initial(i)) || !std::isfinite(frequency(i)) ||
        !std::isfinite(phase(i))) {
      throw InvalidModel("lambda trajectory has non-finite entries");
    }
    if (!(amplitude(i) > 0.0) || !std::isfinite(amplitude(i))) {
      throw InvalidModel("lambda amplitude must be positive and finite");
    }
    if (initial(i) < lower_bound || initial(i) > upper_bound) {
      throw InvalidModel("lambda initial value outside its bounds");
    }
  }
}

bool LambdaTrajectory::IsPhaseSeparated(double min_separation) const {
  const auto m = initial.size();
  for (Eigen::Index i = 0; i < m; ++i) {
    if (!(frequency(i) > 0.0) || frequency(i) != frequency(0)) return false;
    for (Eigen::Index j = 0; j < i; ++j) {
      const double d = std::fmod(std::abs(phase(i) - phase(j)), std::numbers::pi);
      if (std::min(d, std::numbers::pi - d) < min_separation) return false;
    }
  }
  return true;
}

LambdaSample lambda_eval(const LambdaTrajectory& traj, double t) {
  if (!(t >= 0.0)) throw InvalidModel("lambda evaluated at negative time");
  const auto m = traj.initial.size();
  LambdaSample out{VectorXd(m), VectorXd(m)};
  for (Eigen::Index i = 0; i < m; ++i) {
    const double arg = traj.frequency(i) * t + traj.phase(i);
    out.value(i) = traj.initial(i) + traj.amplitude(i) * std::cos(arg);
    out.rate(i) = -traj.amplitude(i) * traj.frequency(i) * std::sin(arg);
  }
  return out;
}

void CableModel::Validate() const {
  if (!(length > 0.0) || !std::isfinite(length)) {
    throw InvalidModel("cable length must be positive");
  }
  if (!(stiffness > 0.0) || !std::isfinite(stiffness)) {
    throw InvalidModel("cable stiffness must be positive");
  }
}

Vec6 static_wrench(const LoadModel& load, double gravity) {
  Vec6 w = Vec6::Zero();
  w(2) = load.mass * gravity;
  return w;
}

const MatrixXd& basis_matrix(const GraspSystem& gs, Basis basis) {
  return basis == Basis::kPairwise ? gs.pairwise_basis()
                                   : gs.orthonormal_basis();
}

VectorXd distribute_forces(const GraspSystem& gs, const Vec6& wrench,
                           const VectorXd& lambda, Basis basis) {
  const MatrixXd& n = basis_matrix(gs, basis);
  if (lambda.size() != n.cols()) {
    throw DimensionMismatch("internal force vector", n.cols(), lambda.size());
  }
  return gs.grasp_pinv() * wrench + n * lambda;
}

VectorXd force_rate(const GraspSystem& gs, const VectorXd& lambda_rate,
                    Basis basis) {
  const MatrixXd& n = basis_matrix(gs, basis);
  if (lambda_rate.size() != n.cols()) {
    throw DimensionMismatch("internal force rate", n.cols(),
                            lambda_rate.size());
  }
  return n * lambda_rate;
}

CableState cable_state(const Vec3& force, int cable, double t) {
  const double tension = force.norm();
  if (!(tension > kTensionEpsilon)) throw SlackCable(cable, t);
  return {tension, UnitVec3::FromUnit(force / tension)};
}

CableRate q_rate(const Vec3& force, const Vec3& force_rate, int cable,
                 double t) {
  const CableState cs = cable_state(force, cable, t);
  const Vec3& q = cs.direction.vec();
  const double tension_rate = q.dot(force_rate);
  const Vec3 tangential = force_rate - tension_rate * q;
  return {tension_rate, tangential / cs.tension};
}

Vec3 carrier_pose(const Vec3& load_position, const Rotation& attitude,
                  const LoadModel& load, const UnitVec3& direction,
                  double length, int index) {
  return load_position + attitude * load.anchors.at(index) +
         direction.vec() * length;
}

Vec3 carrier_velocity_static(const Vec3& direction_rate, double length) {
  return direction_rate * length;
}

std::vector<double> feasibility_margins(const GraspSystem& gs,
                                        const Vec6& wrench) {
  const int n = gs.cable_count();
  const PairSet& pairs = gs.pairs();
  const MatrixXd& pw = gs.pairwise_basis();
  const VectorXd f0 = gs.grasp_pinv() * wrench;
  const auto& anchors = gs.load().anchors;

  std::vector<double> margins(n);
  for (int i = 0; i < n; ++i) {
    std::vector<int> cols;
    for (std::size_t k = 0; k < pairs.size(); ++k) {
      if (pairs[k].first == i || pairs[k].second == i) {
        cols.push_back(static_cast<int>(k));
      }
    }
    if (cols.size() != 2) {
      throw InvalidModel("cable " + std::to_string(i + 1) +
                         " must appear in exactly two pairs");
    }
    // The third anchor must stay off the line through the other two.
    const auto other = [&](int k) {
      return pairs[k].first == i ? pairs[k].second : pairs[k].first;
    };
    const int j = other(cols[0]);
    const int k = other(cols[1]);
    const Vec3 dij = (anchors[j] - anchors[i]).normalized();
    const double offset = (anchors[k] - anchors[i]).cross(dij).norm();
    if (offset <= kCollinearTolerance) {
      throw DegenerateGeometry("anchors " + std::to_string(i + 1) + ", " +
                               std::to_string(j + 1) + ", " +
                               std::to_string(k + 1) + " are collinear");
    }
    const Vec3 a = pw.block<3, 1>(3 * i, cols[0]);
    const Vec3 b = pw.block<3, 1>(3 * i, cols[1]);
    const Vec3 normal = a.cross(b).normalized();
    margins[i] = std::abs(normal.dot(f0.segment<3>(3 * i)));
  }
  return margins;
}

std::vector<double> feasibility_fact3(const GraspSystem& gs,
                                      const LoadModel& load, double gravity) {
  if (gs.cable_count() != 3) {
    throw InvalidModel("three-carrier feasibility needs exactly 3 cables");
  }
  if (anchors_collinear(load.anchors)) {
    throw DegenerateGeometry("anchors are collinear");
  }
  return feasibility_margins(gs, static_wrench(load, gravity));
}

InternalForcePlanner::InternalForcePlanner(GraspSystem gs,
                                           std::vector<CableModel> cables,
                                           LambdaTrajectory trajectory,
                                           Basis basis, double gravity)
    : gs_(std::move(gs)),
      cables_(std::move(cables)),
      trajectory_(std::move(trajectory)),
      basis_(basis),
      gravity_(gravity) {
  if (static_cast<int>(cables_.size()) != gs_.cable_count()) {
    throw DimensionMismatch("cable models", gs_.cable_count(),
                            static_cast<long>(cables_.size()));
  }
  for (const auto& c : cables_) c.Validate();
  trajectory_.Validate();
  if (trajectory_.size() != basis_matrix().cols()) {
    throw DimensionMismatch("internal force trajectory", basis_matrix().cols(),
                            trajectory_.size());
  }
  wrench_ = static_wrench(gs_.load(), gravity_);
  base_forces_ = gs_.grasp_pinv() * wrench_;
}

const MatrixXd& InternalForcePlanner::basis_matrix() const {
  return slingloiter::basis_matrix(gs_, basis_);
}

PlanSample InternalForcePlanner::Sample(double t) const {
  PlanSample s;
  s.t = t;
  LambdaSample ls = lambda_eval(trajectory_, t);
  const MatrixXd& n = basis_matrix();
  const VectorXd f = base_forces_ + n * ls.value;
  const VectorXd fdot = n * ls.rate;
  s.lambda = std::move(ls.value);
  s.lambda_rate = std::move(ls.rate);

  const int cables = gs_.cable_count();
  s.cables.reserve(cables);
  for (int i = 0; i < cables; ++i) {
    CableSample c;
    c.force = f.segment<3>(3 * i);
    c.force_rate = fdot.segment<3>(3 * i);
    const CableState cs = cable_state(c.force, i, t);
    const CableRate cr = q_rate(c.force, c.force_rate, i, t);
    c.tension = cs.tension;
    c.tension_rate = cr.tension_rate;
    c.direction = cs.direction.vec();
    c.direction_rate = cr.direction_rate;
    c.carrier_position = carrier_pose(gs_.position(), gs_.attitude(),
                                      gs_.load(), cs.direction,
                                      cables_[i].length, i);
    c.carrier_velocity =
        carrier_velocity_static(cr.direction_rate, cables_[i].length);
    s.cables.push_back(c);
  }
  return s;
}

std::vector<double> uniform_grid(double dt, double horizon) {
  if (!(dt > 0.0) || !(horizon > 0.0)) {
    throw InvalidModel("time grid needs dt > 0 and horizon > 0");
  }
  const auto count = static_cast<std::size_t>(std::llround(horizon / dt));
  std::vector<double> grid(count);
  for (std::size_t k = 0; k < count; ++k) {
    grid[k] = static_cast<double>(k) * dt;
  }
  return grid;
}

PlannedTrajectory plan(const InternalForcePlanner& planner,
                       const std::vector<double>& t_grid) {
  PlannedTrajectory out;
  out.pairs = planner.grasp().pairs();
  out.basis = planner.basis();
  out.load_position = planner.grasp().position();
  out.attitude = planner.grasp().attitude();
  out.samples.reserve(t_grid.size());
  for (double t : t_grid) out.samples.push_back(planner.Sample(t));
  return out;
}

PlannedTrajectory plan(const GraspSystem& gs,
                       const std::vector<CableModel>& cables,
                       const LambdaTrajectory& trajectory,
                       const std::vector<double>& t_grid, Basis basis) {
  return plan(InternalForcePlanner(gs, cables, trajectory, basis), t_grid);
}

}  // namespace slingloiter
