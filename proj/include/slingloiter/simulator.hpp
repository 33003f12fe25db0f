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

// Closed-loop simulation of a rigid load hanging from n elastic cables whose
// upper ends are held by point-mass carriers. Each carrier is a double
// integrator under PD feedback tracking the planner's reference.
//
// Load (world-frame position, body-frame angular velocity):
//   m_L v_L'  = -m_L g e3 - c_t v_L + sum f_i
//   J w'      = -w x J w - c_r w + sum b_i x (R^T f_i)
//   R'        = S(R w) R
// Carrier i:
//   m_R v_Ri' = u_i - m_R g e3 - f_i
//   u_i       = K_p (p_ref - p) + K_d (v_ref - v) [+ m_R g e3 + f_i,ref]
// where f_i is the force cable i exerts on the load.

#ifndef SLINGLOITER_SIMULATOR_HPP_
#define SLINGLOITER_SIMULATOR_HPP_

#include <memory>
#include <optional>
#include <vector>

#include "slingloiter/geometry.hpp"
#include "slingloiter/grasp.hpp"
#include "slingloiter/planner.hpp"

namespace slingloiter {

// Any state component above this norm aborts the run with Diverged.
inline constexpr double kDivergenceBound = 1e6;

struct CarrierModel {
  double mass = 0.1;   // kg
  double kd = 1.5;     // N s / m
  double kp = 1000.0;  // N / m

  void Validate() const;
};

enum class CableMode {
  kSpring,        // massless unilateral linear springs
  kIdealForce,    // cables apply exactly the planned f_i(t)
  kDisconnected,  // no cable forces at all
};

struct SimState {
  double t = 0.0;
  Vec3 load_position = Vec3::Zero();
  Vec3 load_velocity = Vec3::Zero();
  Rotation attitude;
  Vec3 angular_velocity = Vec3::Zero();  // body frame
  std::vector<Vec3> carrier_position;
  std::vector<Vec3> carrier_velocity;
};

struct SimConfig {
  LoadModel load;
  std::vector<CableModel> cables;
  std::vector<CarrierModel> carriers;
  std::shared_ptr<const InternalForcePlanner> reference;
  double dt = 1e-3;
  double duration = 20.0;
  double gravity = kStandardGravity;
  bool feedforward = true;
  CableMode cable_mode = CableMode::kSpring;
  // Defaults to the planner equilibrium with carriers on their references.
  std::optional<SimState> initial_state;

  // Throws InvalidModel or DimensionMismatch.
  void Validate() const;
};

struct StateDerivative {
  Vec3 load_velocity;
  Vec3 load_acceleration;
  Vec3 angular_velocity_world;  // R w, so that R' = S(R w) R
  Vec3 angular_acceleration;    // body frame
  std::vector<Vec3> carrier_velocity;
  std::vector<Vec3> carrier_acceleration;
};

// Force on the load from a spring cable anchored at `anchor` and held at
// `carrier`. Zero when the cable is not stretched; the carrier feels the
// negative.
Vec3 spring_cable_force(const Vec3& anchor, const Vec3& carrier,
                        double rest_length, double stiffness);

struct CarrierReference {
  Vec3 position;
  Vec3 velocity;
  Vec3 force;  // expected force on the load along cable i
};

// Reference of carrier i. For spring cables the rigid-cable position is
// pushed outward by T_i / K_c so the stretch produces the planned tension:
// p_ref = a_i + L_0 q_i + f_i / K_c.
CarrierReference carrier_reference(const SimConfig& config,
                                   const PlanSample& sample, int i);

SimState initial_state(const SimConfig& config);

// Cable forces on the load in the given state.
std::vector<Vec3> cable_forces(const SimState& state, const SimConfig& config,
                               const PlanSample& sample);

StateDerivative dynamics_rhs(const SimState& state, const SimConfig& config);

// One step of a fourth-order Runge-Kutta-Munthe-Kaas scheme: classical RK4
// on the vector states, the attitude advanced as R <- exp(theta) R with the
// stage rates corrected by the inverse exponential differential, then
// projected back onto SO(3).
SimState step_rk4(const SimState& state, const SimConfig& config, double dt);

struct SimRecord {
  double t = 0.0;
  Vec3 load_position;
  Vec3 load_velocity;
  Rotation attitude;
  Vec3 angular_velocity;
  std::vector<Vec3> carrier_position;
  std::vector<Vec3> carrier_velocity;
  std::vector<double> tension;  // actual cable tension
  VectorXd lambda;              // reference
  VectorXd lambda_rate;         // reference
  std::vector<double> z;        // z_i of the reference cable forces
};

struct SimSeries {
  std::vector<SimRecord> records;
  PairSet pairs;
  Basis basis = Basis::kPairwise;
  Vec3 target_position = Vec3::Zero();
  Rotation target_attitude;
};

// Integrates for round(duration / dt) steps and records every state,
// including the initial one. Throws Diverged.
SimSeries run(const SimConfig& config);

}  // namespace slingloiter

#endif  // SLINGLOITER_SIMULATOR_HPP_
