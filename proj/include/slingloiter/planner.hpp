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

// Internal-force trajectories and the carrier motion they induce while the
// load is held at a static equilibrium.
//
// With the load static, the stacked cable forces are
//
//     f(t) = G^+ W + N lambda(t),      f'(t) = N lambda'(t),
//
// each cable force splits into tension and direction, f_i = T_i q_i, and the
// carrier sits at p_Ri = p_L + R b_i + L_i q_i with velocity L_i q_i'.

#ifndef SLINGLOITER_PLANNER_HPP_
#define SLINGLOITER_PLANNER_HPP_

#include <limits>
#include <vector>

#include "slingloiter/geometry.hpp"
#include "slingloiter/grasp.hpp"

namespace slingloiter {

inline constexpr double kStandardGravity = 9.81;    // m/s^2
inline constexpr double kTensionEpsilon = 1e-6;     // N
inline constexpr double kFeasibilityEpsilon = 1e-6; // N
inline constexpr double kDefaultPhaseSeparation = 0.3;  // rad

// lambda_i(t) = lambda_i(0) + A_i cos(psi_i t + phi_i).
struct LambdaTrajectory {
  VectorXd initial;    // N
  VectorXd amplitude;  // N
  VectorXd frequency;  // rad/s
  VectorXd phase;      // rad
  double lower_bound = -std::numeric_limits<double>::infinity();
  double upper_bound = std::numeric_limits<double>::infinity();

  int size() const { return static_cast<int>(initial.size()); }

  // Throws InvalidModel.
  void Validate() const;

  // True when every component shares one positive frequency and every pair of
  // phases is at least `min_separation` apart modulo pi. Phases exactly pi
  // apart give proportional rates, so the distance is taken modulo pi.
  bool IsPhaseSeparated(double min_separation = kDefaultPhaseSeparation) const;
};

struct LambdaSample {
  VectorXd value;
  VectorXd rate;
};

// Requires t >= 0.
LambdaSample lambda_eval(const LambdaTrajectory& traj, double t);

struct CableModel {
  double length = 0.8;       // m
  double stiffness = 500.0;  // N/m, used by the simulator only

  void Validate() const;
};

// [0, 0, m g, 0, 0, 0]: the wrench that holds the load still.
Vec6 static_wrench(const LoadModel& load, double gravity = kStandardGravity);

enum class Basis { kPairwise, kOrthonormal };

const MatrixXd& basis_matrix(const GraspSystem& gs, Basis basis);

// G^+ W + N lambda. Throws DimensionMismatch.
VectorXd distribute_forces(const GraspSystem& gs, const Vec6& wrench,
                           const VectorXd& lambda,
                           Basis basis = Basis::kPairwise);

// N lambda'. Throws DimensionMismatch.
VectorXd force_rate(const GraspSystem& gs, const VectorXd& lambda_rate,
                    Basis basis = Basis::kPairwise);

struct CableState {
  double tension;
  UnitVec3 direction;  // from the anchor toward the carrier
};

// Throws SlackCable when |f| <= kTensionEpsilon; `cable` and `t` label it.
CableState cable_state(const Vec3& force, int cable = 0, double t = 0.0);

struct CableRate {
  double tension_rate;
  Vec3 direction_rate;  // orthogonal to the cable direction
};

// Splits f' into T' q + T q'. Throws SlackCable.
CableRate q_rate(const Vec3& force, const Vec3& force_rate, int cable = 0,
                 double t = 0.0);

Vec3 carrier_pose(const Vec3& load_position, const Rotation& attitude,
                  const LoadModel& load, const UnitVec3& direction,
                  double length, int index);

// L q'; valid only while the load is static.
Vec3 carrier_velocity_static(const Vec3& direction_rate, double length);

// For each cable i, the norm of the component of f_0i = (G^+ W)_i normal to
// the plane spanned by the world-frame directions of the two selected pairs
// that touch cable i. Requires every cable to appear in exactly two pairs
// (InvalidModel otherwise) and throws DegenerateGeometry if the three anchors
// of a cable's pairs are collinear.
std::vector<double> feasibility_margins(const GraspSystem& gs,
                                        const Vec6& wrench);

// feasibility_margins for three cables under gravity.
std::vector<double> feasibility_fact3(const GraspSystem& gs,
                                      const LoadModel& load,
                                      double gravity = kStandardGravity);

struct CableSample {
  Vec3 force;
  Vec3 force_rate;
  double tension;
  double tension_rate;
  Vec3 direction;
  Vec3 direction_rate;
  Vec3 carrier_position;
  Vec3 carrier_velocity;
};

struct PlanSample {
  double t = 0.0;
  VectorXd lambda;
  VectorXd lambda_rate;
  std::vector<CableSample> cables;
};

// Evaluates the whole force-to-carrier chain at any time. Immutable.
class InternalForcePlanner {
 public:
  // Throws InvalidModel or DimensionMismatch.
  InternalForcePlanner(GraspSystem gs, std::vector<CableModel> cables,
                       LambdaTrajectory trajectory,
                       Basis basis = Basis::kPairwise,
                       double gravity = kStandardGravity);

  // Throws SlackCable.
  PlanSample Sample(double t) const;

  const GraspSystem& grasp() const { return gs_; }
  const std::vector<CableModel>& cables() const { return cables_; }
  const LambdaTrajectory& trajectory() const { return trajectory_; }
  Basis basis() const { return basis_; }
  double gravity() const { return gravity_; }
  const Vec6& wrench() const { return wrench_; }
  // f_0 = G^+ W.
  const VectorXd& base_forces() const { return base_forces_; }
  const MatrixXd& basis_matrix() const;

 private:
  GraspSystem gs_;
  std::vector<CableModel> cables_;
  LambdaTrajectory trajectory_;
  Basis basis_;
  double gravity_;
  Vec6 wrench_;
  VectorXd base_forces_;
};

struct PlannedTrajectory {
  std::vector<PlanSample> samples;
  PairSet pairs;  // labels the lambda components when basis is pairwise
  Basis basis = Basis::kPairwise;
  Vec3 load_position = Vec3::Zero();
  Rotation attitude;
};

// t_k = k dt for k = 0 .. round(horizon / dt) - 1.
std::vector<double> uniform_grid(double dt, double horizon);

// Throws SlackCable at the first offending sample.
PlannedTrajectory plan(const InternalForcePlanner& planner,
                       const std::vector<double>& t_grid);

PlannedTrajectory plan(const GraspSystem& gs,
                       const std::vector<CableModel>& cables,
                       const LambdaTrajectory& trajectory,
                       const std::vector<double>& t_grid,
                       Basis basis = Basis::kPairwise);

}  // namespace slingloiter

#endif  // SLINGLOITER_PLANNER_HPP_
