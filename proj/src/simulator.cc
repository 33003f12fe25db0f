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

#include "slingloiter/simulator.hpp"

#include <cmath>

#include "slingloiter/collinearity.hpp"
#include "slingloiter/errors.hpp"

namespace slingloiter {
namespace {

const Vec3 kUp = Vec3::UnitZ();

// Truncated inverse of the differential of exp on so(3); the terms kept are
// what a fourth-order method needs.
Vec3 DexpInv(const Vec3& theta, const Vec3& w) {
  const Vec3 tw = theta.cross(w);
  return w - 0.5 * tw + theta.cross(tw) / 12.0;
}

SimState Advance(const SimState& s, const StateDerivative& k, double h,
                 const Vec3& theta) {
  SimState out;
  out.t = s.t + h;
  out.load_position = s.load_position + h * k.load_velocity;
  out.load_velocity = s.load_velocity + h * k.load_acceleration;
  out.attitude = so3_exp(theta) * s.attitude;
  out.angular_velocity = s.angular_velocity + h * k.angular_acceleration;
  const std::size_t n = s.carrier_position.size();
  out.carrier_position.resize(n);
  out.carrier_velocity.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    out.carrier_position[i] = s.carrier_position[i] + h * k.carrier_velocity[i];
    out.carrier_velocity[i] =
        s.carrier_velocity[i] + h * k.carrier_acceleration[i];
  }
  return out;
}

bool Bounded(const Vec3& v) {
  return v.allFinite() && v.norm() <= kDivergenceBound;
}

bool Bounded(const SimState& s) {
  if (!Bounded(s.load_position) || !Bounded(s.load_velocity) ||
      !Bounded(s.angular_velocity) || !s.attitude.matrix().allFinite()) {
    return false;
  }
  for (std::size_t i = 0; i < s.carrier_position.size(); ++i) {
    if (!Bounded(s.carrier_position[i]) || !Bounded(s.carrier_velocity[i])) {
      return false;
    }
  }
  return true;
}

SimRecord Record(const SimState& s, const SimConfig& config) {
  const PlanSample ref = config.reference->Sample(s.t);
  const std::vector<Vec3> forces = cable_forces(s, config, ref);
  SimRecord r;
  r.t = s.t;
  r.load_position = s.load_position;
  r.load_velocity = s.load_velocity;
  r.attitude = s.attitude;
  r.angular_velocity = s.angular_velocity;
  r.carrier_position = s.carrier_position;
  r.carrier_velocity = s.carrier_velocity;
  for (std::size_t i = 0; i < forces.size(); ++i) {
    r.tension.push_back(forces[i].norm());
    r.z.push_back(z_value(ref.cables[i].force, ref.cables[i].force_rate));
  }
  r.lambda = ref.lambda;
  r.lambda_rate = ref.lambda_rate;
  return r;
}

}  // namespace

void CarrierModel::Validate() const {
  if (!(mass > 0.0) || !(kd > 0.0) || !(kp > 0.0)) {
    throw InvalidModel("carrier mass and gains must be positive");
  }
}

void SimConfig::Validate() const {
  load.Validate();
  const auto n = static_cast<std::size_t>(load.cable_count());
  if (cables.size() != n) {
    throw DimensionMismatch("cable models", static_cast<long>(n),
                            static_cast<long>(cables.size()));
  }
  if (carriers.size() != n) {
    throw DimensionMismatch("carrier models", static_cast<long>(n),
                            static_cast<long>(carriers.size()));
  }
  for (const auto& c : cables) c.Validate();
  for (const auto& c : carriers) c.Validate();
  if (!reference) throw InvalidModel("simulation needs a reference planner");
  if (reference->grasp().cable_count() != static_cast<int>(n)) {
    throw DimensionMismatch("reference cables", static_cast<long>(n),
                            reference->grasp().cable_count());
  }
  if (!(dt > 0.0)) throw InvalidModel("dt must be positive");
  if (!(duration >= dt)) throw InvalidModel("duration must be at least dt");
  if (initial_state && (initial_state->carrier_position.size() != n ||
                        initial_state->carrier_velocity.size() != n)) {
    throw DimensionMismatch("initial carrier states", static_cast<long>(n),
                            static_cast<long>(
                                initial_state->carrier_position.size()));
  }
}

Vec3 spring_cable_force(const Vec3& anchor, const Vec3& carrier,
                        double rest_length, double stiffness) {
  const Vec3 d = carrier - anchor;
  const double len = d.norm();
  if (!(len > rest_length)) return Vec3::Zero();
  return stiffness * (len - rest_length) * (d / len);
}

CarrierReference carrier_reference(const SimConfig& config,
                                   const PlanSample& sample, int i) {
  const CableSample& c = sample.cables[i];
  CarrierReference ref;
  ref.force = c.force;
  if (config.cable_mode == CableMode::kSpring) {
    const GraspSystem& gs = config.reference->grasp();
    const Vec3 anchor = gs.position() + gs.attitude() * gs.load().anchors[i];
    const CableModel& cable = config.cables[i];
    ref.position =
        anchor + cable.length * c.direction + c.force / cable.stiffness;
    ref.velocity =
        cable.length * c.direction_rate + c.force_rate / cable.stiffness;
  } else {
    ref.position = c.carrier_position;
    ref.velocity = c.carrier_velocity;
  }
  return ref;
}

SimState initial_state(const SimConfig& config) {
  if (config.initial_state) return *config.initial_state;
  const GraspSystem& gs = config.reference->grasp();
  const PlanSample sample = config.reference->Sample(0.0);
  SimState s;
  s.t = 0.0;
  s.load_position = gs.position();
  s.attitude = gs.attitude();
  for (int i = 0; i < gs.cable_count(); ++i) {
    const CarrierReference ref = carrier_reference(config, sample, i);
    s.carrier_position.push_back(ref.position);
    s.carrier_velocity.push_back(ref.velocity);
  }
  return s;
}

std::vector<Vec3> cable_forces(const SimState& state, const SimConfig& config,
                               const PlanSample& sample) {
  const int n = config.load.cable_count();
  std::vector<Vec3> out(n, Vec3::Zero());
  for (int i = 0; i < n; ++i) {
    switch (config.cable_mode) {
      case CableMode::kSpring: {
        const Vec3 anchor =
            state.load_position + state.attitude * config.load.anchors[i];
        out[i] = spring_cable_force(anchor, state.carrier_position[i],
                                    config.cables[i].length,
                                    config.cables[i].stiffness);
        break;
      }
      case CableMode::kIdealForce:
        out[i] = sample.cables[i].force;
        break;
      case CableMode::kDisconnected:
        break;
    }
  }
  return out;
}

StateDerivative dynamics_rhs(const SimState& state, const SimConfig& config) {
  const LoadModel& load = config.load;
  const PlanSample sample = config.reference->Sample(state.t);
  const std::vector<Vec3> forces = cable_forces(state, config, sample);
  const Mat3 rt = state.attitude.matrix().transpose();

  Vec3 force = -load.mass * config.gravity * kUp -
               load.linear_friction * state.load_velocity;
  const Vec3& w = state.angular_velocity;
  Vec3 torque = -w.cross(load.inertia * w) - load.angular_friction * w;
  for (std::size_t i = 0; i < forces.size(); ++i) {
    force += forces[i];
    torque += load.anchors[i].cross(rt * forces[i]);
  }

  StateDerivative d;
  d.load_velocity = state.load_velocity;
  d.load_acceleration = force / load.mass;
  d.angular_velocity_world = state.attitude * w;
  d.angular_acceleration = load.inertia.llt().solve(torque);

  const std::size_t n = forces.size();
  d.carrier_velocity.resize(n);
  d.carrier_acceleration.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const CarrierModel& carrier = config.carriers[i];
    const CarrierReference ref =
        carrier_reference(config, sample, static_cast<int>(i));
    Vec3 u = carrier.kp * (ref.position - state.carrier_position[i]) +
             carrier.kd * (ref.velocity - state.carrier_velocity[i]);
    if (config.feedforward) {
      u += carrier.mass * config.gravity * kUp + ref.force;
    }
    d.carrier_velocity[i] = state.carrier_velocity[i];
    d.carrier_acceleration[i] =
        (u - carrier.mass * config.gravity * kUp - forces[i]) / carrier.mass;
  }
  return d;
}

SimState step_rk4(const SimState& s, const SimConfig& config, double dt) {
  const StateDerivative k1 = dynamics_rhs(s, config);
  const Vec3 r1 = k1.angular_velocity_world;

  const Vec3 th2 = 0.5 * dt * r1;
  const StateDerivative k2 = dynamics_rhs(Advance(s, k1, 0.5 * dt, th2), config);
  const Vec3 r2 = DexpInv(th2, k2.angular_velocity_world);

  const Vec3 th3 = 0.5 * dt * r2;
  const StateDerivative k3 = dynamics_rhs(Advance(s, k2, 0.5 * dt, th3), config);
  const Vec3 r3 = DexpInv(th3, k3.angular_velocity_world);

  const Vec3 th4 = dt * r3;
  const StateDerivative k4 = dynamics_rhs(Advance(s, k3, dt, th4), config);
  const Vec3 r4 = DexpInv(th4, k4.angular_velocity_world);

  const double h6 = dt / 6.0;
  SimState out;
  out.t = s.t + dt;
  out.load_position =
      s.load_position + h6 * (k1.load_velocity + 2.0 * k2.load_velocity +
                              2.0 * k3.load_velocity + k4.load_velocity);
  out.load_velocity =
      s.load_velocity +
      h6 * (k1.load_acceleration + 2.0 * k2.load_acceleration +
            2.0 * k3.load_acceleration + k4.load_acceleration);
  out.angular_velocity =
      s.angular_velocity +
      h6 * (k1.angular_acceleration + 2.0 * k2.angular_acceleration +
            2.0 * k3.angular_acceleration + k4.angular_acceleration);
  const Vec3 theta = h6 * (r1 + 2.0 * r2 + 2.0 * r3 + r4);
  out.attitude =
      Rotation::Project((so3_exp(theta) * s.attitude).matrix());

  const std::size_t n = s.carrier_position.size();
  out.carrier_position.resize(n);
  out.carrier_velocity.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    out.carrier_position[i] =
        s.carrier_position[i] +
        h6 * (k1.carrier_velocity[i] + 2.0 * k2.carrier_velocity[i] +
              2.0 * k3.carrier_velocity[i] + k4.carrier_velocity[i]);
    out.carrier_velocity[i] =
        s.carrier_velocity[i] +
        h6 * (k1.carrier_acceleration[i] + 2.0 * k2.carrier_acceleration[i] +
              2.0 * k3.carrier_acceleration[i] + k4.carrier_acceleration[i]);
  }
  return out;
}

SimSeries run(const SimConfig& config) {
  config.Validate();
  SimSeries series;
  series.pairs = config.reference->grasp().pairs();
  series.basis = config.reference->basis();
  series.target_position = config.reference->grasp().position();
  series.target_attitude = config.reference->grasp().attitude();

  const auto steps =
      static_cast<std::size_t>(std::llround(config.duration / config.dt));
  series.records.reserve(steps + 1);
  SimState state = initial_state(config);
  if (!Bounded(state)) throw Diverged(state.t);
  series.records.push_back(Record(state, config));
  for (std::size_t k = 1; k <= steps; ++k) {
    state = step_rk4(state, config, config.dt);
    // Re-anchor time to the grid so long runs do not accumulate drift.
    state.t = static_cast<double>(k) * config.dt;
    if (!Bounded(state)) throw Diverged(state.t);
    series.records.push_back(Record(state, config));
  }
  return series;
}

}  // namespace slingloiter
