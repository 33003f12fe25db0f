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

// Acceptance suite: one [PASS] or [FAIL] line per criterion, exit status 1
// if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "oracles/oracle_values.hpp"
#include "slingloiter/analysis.hpp"
#include "slingloiter/cli/commands.hpp"
#include "slingloiter/collinearity.hpp"
#include "slingloiter/grasp.hpp"
#include "slingloiter/io/config.hpp"
#include "slingloiter/planner.hpp"
#include "slingloiter/simulator.hpp"
#include "test_support.hpp"

namespace slingloiter {
namespace {

constexpr double kPi = std::numbers::pi;

struct Outcome {
  bool pass = true;
  std::string detail;
};

std::string Fmt(const char* format, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof(buf), format, a, b, c);
  return buf;
}

double Seconds(std::chrono::steady_clock::time_point since) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - since)
      .count();
}

io::RunConfig Config(const char* name) {
  return io::load_run_config(testing::ConfigPath(name));
}

// Smallest planner speed of `carrier` within one grid step of t.
double SpeedNear(const InternalForcePlanner& p, int carrier, double t,
                 double dt) {
  return refine_speed_minimum(p, carrier, std::max(0.0, t - dt), t + dt).speed;
}

Outcome Ac1NullspaceDimensions() {
  const auto start = std::chrono::steady_clock::now();
  const std::vector<std::pair<const char*, int>> cases = {
      {"paper-n1", 0}, {"paper-n2", 1}, {"paper-n3", 3},
      {"generic-n4", 6}, {"generic-n5", 9}};
  Outcome o;
  std::string got;
  for (const auto& [name, expected] : cases) {
    const int m = cli::analyze(Config(name))["nullity"].get<int>();
    got += (got.empty() ? "" : ",") + std::to_string(m);
    o.pass = o.pass && m == expected;
  }
  const double elapsed = Seconds(start);
  o.pass = o.pass && elapsed < 1.0;
  o.detail = "m = {" + got + "} for n = 1..5" + Fmt(", %.3f s", elapsed);
  return o;
}

Outcome Ac2GraspNullspaceResidual() {
  const auto start = std::chrono::steady_clock::now();
  std::mt19937_64 rng(2026);
  double worst = 0.0;
  for (int trial = 0; trial < 1000; ++trial) {
    const int n = 2 + trial % 4;
    const LoadModel load = testing::RandomLoad(rng, n);
    const Rotation r = testing::RandomRotation(rng);
    const GraspSystem gs =
        GraspSystem::Build(load, r, Vec3::Zero(), default_pairs(n));
    for (const MatrixXd* nb : {&gs.pairwise_basis(), &gs.orthonormal_basis()}) {
      const MatrixXd res = gs.grasp() * *nb;
      for (Eigen::Index c = 0; c < res.cols(); ++c) {
        worst = std::max(worst, res.col(c).norm());
      }
    }
    const MatrixXd full = pairwise_nullspace(load, r, all_pairs(n));
    worst = std::max(worst, (gs.grasp() * full).colwise().norm().maxCoeff());
  }
  const double elapsed = Seconds(start);
  return {worst < 1e-9 && elapsed < 10.0,
          Fmt("max |G N_col| = %.2e over 1000 configurations, %.3f s", worst,
              elapsed)};
}

Outcome Ac3TwoCarrierStops() {
  const io::RunConfig c = Config("paper-n2");
  const auto p = io::make_planner(c);
  const double dt = c.dt;
  const PlannedTrajectory traj = plan(*p, uniform_grid(dt, c.duration));
  const NonStopReport rep = min_speed(traj, c.v_min);
  Outcome o;
  o.pass = !rep.nonstop;
  double worst_offset = 0.0;
  double worst_speed = 0.0;
  int zeros = 0;
  for (int k = 0; 2 * k * kPi < c.duration; ++k) {
    const double tz = 2 * k * kPi;
    // Grid minimum over the period centred on the expected zero.
    for (int carrier = 0; carrier < 2; ++carrier) {
      double best = 1e300;
      double best_t = 0.0;
      for (const auto& s : traj.samples) {
        if (s.t < tz - kPi || s.t >= tz + kPi) continue;
        const double v = s.cables[carrier].carrier_velocity.norm();
        if (v < best) {
          best = v;
          best_t = s.t;
        }
      }
      worst_offset = std::max(worst_offset, std::abs(best_t - tz));
      const SpeedMinimum m = refine_speed_minimum(
          *p, carrier, std::max(0.0, tz - kPi), std::min(c.duration, tz + kPi));
      worst_speed = std::max(worst_speed, m.speed);
    }
    ++zeros;
  }
  o.pass = o.pass && zeros == 4 && worst_offset <= dt * (1 + 1e-9) &&
           worst_speed < 1e-9;
  o.detail = Fmt("%g zeros at 2k pi, grid offset <= %.1e s, period minima <= %.1e m/s",
                 zeros, worst_offset, worst_speed) +
             (rep.nonstop ? ", verdict non-stop" : ", verdict not non-stop");
  return o;
}

Outcome Ac4ThreeCarrierNonStop() {
  const io::RunConfig c = Config("paper-n3");
  const auto p = io::make_planner(c);
  const PlannedTrajectory fine = plan(*p, uniform_grid(1e-4, c.duration));
  const NonStopReport rep = min_speed(fine, c.v_min);
  const double grid_min = rep.overall_min_speed();
  const int slow = rep.slowest_carrier();
  const double t0 = rep.carriers[slow].argmin_time;
  const double refined = SpeedNear(*p, slow, t0, 1e-4);
  const double rel =
      std::abs(grid_min - oracle::kGoldenMinSpeed) / oracle::kGoldenMinSpeed;
  return {refined > 0.0 && grid_min > 0.0 && rel < 0.01 && rep.nonstop,
          Fmt("min speed %.9f m/s (refined %.9f), golden deviation %.1e", grid_min,
              refined, rel)};
}

Outcome Ac5ProportionalRates() {
  const io::RunConfig c = Config("paper-case1");
  const auto p = io::make_planner(c);
  const PlannedTrajectory traj = plan(*p, uniform_grid(c.dt, c.duration));
  const NonStopReport rep = min_speed(traj, c.v_min);
  Outcome o;
  o.pass = false;
  double worst = 0.0;
  for (const auto& f : rep.degenerate.case1) {
    if (std::abs(f.ratio - 1.0) > 1e-9 || f.cable < 0) continue;
    o.pass = true;
    // Rates vanish where sin(psi t + phi) = 0 for the first component.
    const double psi = c.lambda.frequency(f.first);
    const double phi = c.lambda.phase(f.first);
    for (int k = 0;; ++k) {
      const double tz = (k * kPi - phi) / psi;
      if (tz < 0) continue;
      if (tz >= c.duration) break;
      worst = std::max(worst, SpeedNear(*p, f.cable, tz, c.dt));
    }
    o.detail = "components " + std::to_string(f.first + 1) + "," +
               std::to_string(f.second + 1) + " on carrier " +
               std::to_string(f.cable + 1) + Fmt(", ratio %.12f", f.ratio);
  }
  o.pass = o.pass && worst < 1e-6;
  o.detail += Fmt(", speed at rate zeros <= %.1e m/s", worst);
  return o;
}

Outcome Ac6JointRateZeros() {
  const io::RunConfig c = Config("paper-case2");
  const auto p = io::make_planner(c);
  const PlannedTrajectory traj = plan(*p, uniform_grid(c.dt, c.duration));
  const NonStopReport rep = min_speed(traj, c.v_min);
  if (rep.degenerate.case2.empty()) return {false, "no joint zeros flagged"};
  double plan_worst = 0.0;
  std::vector<std::pair<int, double>> instants;
  for (const auto& f : rep.degenerate.case2) {
    if (f.cable < 0) return {false, "joint zero without a shared carrier"};
    for (double t : f.instants) {
      plan_worst = std::max(plan_worst, SpeedNear(*p, f.cable, t, c.dt));
      instants.push_back({f.cable, t});
    }
  }
  const SimSeries sim = run(io::make_sim_config(c));
  double sim_worst = 0.0;
  for (const auto& [cable, t] : instants) {
    double best = 1e300;
    for (const auto& r : sim.records) {
      if (std::abs(r.t - t) <= 0.05) {
        best = std::min(best, r.carrier_velocity[cable].norm());
      }
    }
    sim_worst = std::max(sim_worst, best);
  }
  return {plan_worst < 1e-6 && sim_worst < 1e-2,
          Fmt("%g instants, planner speed <= %.1e m/s, simulator speed <= %.1e m/s",
              static_cast<double>(instants.size()), plan_worst, sim_worst)};
}

Outcome Ac7PoseHold() {
  const io::RunConfig c = Config("paper-n3");
  const SimSeries sim = run(io::make_sim_config(c));
  const NonStopReport rep = min_speed(sim, c.v_min);
  const double deg = rep.pose->attitude * 180.0 / kPi;
  return {rep.pose->position < 0.05 && deg < 5.0,
          Fmt("position error %.2e m, attitude error %.3f deg over %.0f s",
              rep.pose->position, deg, sim.records.back().t)};
}

Outcome Ac8WrenchBalance() {
  double worst = 0.0;
  for (const char* name : {"paper-n3", "generic-n4", "generic-n5"}) {
    const io::RunConfig c = Config(name);
    const auto p = io::make_planner(c);
    const PlannedTrajectory traj = plan(*p, uniform_grid(c.dt, c.duration));
    const MatrixXd& g = p->grasp().grasp();
    const int n = c.cable_count();
    VectorXd f(3 * n);
    for (const auto& s : traj.samples) {
      for (int i = 0; i < n; ++i) f.segment<3>(3 * i) = s.cables[i].force;
      worst = std::max(worst, (g * f - p->wrench()).norm());
    }
  }
  return {worst < 1e-8, Fmt("max |G f - W| = %.2e N over n = 3, 4, 5 plans", worst)};
}

Outcome Ac9FiniteDifferences() {
  const double h = 1e-4;
  double force_err = 0.0;
  double pos_err = 0.0;
  for (const char* name : {"paper-n3", "generic-n4"}) {
    const io::RunConfig c = Config(name);
    const auto p = io::make_planner(c);
    for (double t = h; t < c.duration - h; t += 0.01) {
      const PlanSample s = p->Sample(t);
      const PlanSample a = p->Sample(t - h);
      const PlanSample b = p->Sample(t + h);
      for (std::size_t i = 0; i < s.cables.size(); ++i) {
        const Vec3 df = (b.cables[i].force - a.cables[i].force) / (2 * h);
        const Vec3 dp =
            (b.cables[i].carrier_position - a.cables[i].carrier_position) /
            (2 * h);
        force_err = std::max(force_err, (df - s.cables[i].force_rate).norm());
        pos_err = std::max(pos_err, (dp - s.cables[i].carrier_velocity).norm());
      }
    }
  }
  return {force_err < 1e-5 && pos_err < 1e-5,
          Fmt("max |df/dt - N dlambda| = %.2e N/s, max |dp/dt - v| = %.2e m/s",
              force_err, pos_err)};
}

Outcome Ac10Collinearity() {
  std::mt19937_64 rng(10);
  std::uniform_int_distribution<int> pow2(-8, 8);
  std::uniform_real_distribution<double> u(-5.0, 5.0);
  int violations = 0;
  for (int k = 0; k < 100000; ++k) {
    const Vec3 y = testing::RandomVec(rng, 3.0);
    const Vec3 yd = testing::RandomVec(rng, 3.0);
    const double z = z_value(y, yd);
    const double lagrange =
        y.squaredNorm() * yd.squaredNorm() - y.dot(yd) * y.dot(yd);
    const double scale = 1.0 + y.squaredNorm() * yd.squaredNorm();
    if (z < 0.0) ++violations;
    // Power-of-two multiples are exactly parallel in floating point.
    const double exact = std::ldexp(u(rng) < 0 ? -1.0 : 1.0, pow2(rng));
    if (z_value(y, exact * y) != 0.0) ++violations;
    const double a = u(rng);
    if (z_value(y, a * y) > 1e-14 * std::abs(a) * y.squaredNorm()) ++violations;
    if (std::abs(z_squared(y, yd) - lagrange) > 1e-12 * scale) ++violations;
  }
  const io::RunConfig n3 = Config("paper-n3");
  const PersistenceCheck golden = persistent_change_check(
      plan(*io::make_planner(n3), uniform_grid(n3.dt, n3.duration)), n3.z_min);
  const double golden_min =
      *std::min_element(golden.series.min.begin(), golden.series.min.end());

  // z of the affected cable at each flagged instant of the degenerate plans.
  double flagged_max = 0.0;
  int flagged = 0;
  for (const char* name : {"paper-case1", "paper-case2"}) {
    const io::RunConfig c = Config(name);
    const auto p = io::make_planner(c);
    const NonStopReport rep =
        min_speed(plan(*p, uniform_grid(c.dt, c.duration)), c.v_min);
    const auto z_at = [&](int cable, double t) {
      const PlanSample s = p->Sample(t);
      return z_value(s.cables[cable].force, s.cables[cable].force_rate);
    };
    for (const auto& f : rep.degenerate.case2) {
      for (double t : f.instants) {
        flagged_max = std::max(flagged_max, z_at(f.cable, t));
        ++flagged;
      }
    }
    for (const auto& f : rep.degenerate.case1) {
      const double psi = c.lambda.frequency(f.first);
      const double phi = c.lambda.phase(f.first);
      for (int k = 0;; ++k) {
        const double tz = (k * kPi - phi) / psi;
        if (tz < 0) continue;
        if (tz >= c.duration) break;
        flagged_max = std::max(flagged_max, z_at(f.cable, tz));
        ++flagged;
      }
    }
  }
  return {violations == 0 && golden_min > 0.0 && golden.persistent &&
              flagged > 0 && flagged_max < 1e-9,
          Fmt("%g property violations in 1e5 pairs, golden min z %.3e, ",
              violations, golden_min) +
              Fmt("max z at %g flagged instants %.1e", flagged, flagged_max)};
}

// Concatenated state difference.
double StateDistance(const SimState& a, const SimState& b) {
  double sq = (a.load_position - b.load_position).squaredNorm() +
              (a.load_velocity - b.load_velocity).squaredNorm() +
              (a.angular_velocity - b.angular_velocity).squaredNorm();
  const double angle = geodesic_angle(a.attitude, b.attitude);
  sq += angle * angle;
  for (std::size_t i = 0; i < a.carrier_position.size(); ++i) {
    sq += (a.carrier_position[i] - b.carrier_position[i]).squaredNorm() +
          (a.carrier_velocity[i] - b.carrier_velocity[i]).squaredNorm();
  }
  return std::sqrt(sq);
}

Outcome Ac11ConvergenceOrder() {
  const io::RunConfig c = Config("paper-n3");
  const SimConfig sc = io::make_sim_config(c);
  const double horizon = 0.5;
  const double dt = 1e-3;
  const auto integrate = [&](double h) {
    SimState s = initial_state(sc);
    const auto steps = std::llround(horizon / h);
    for (long long k = 0; k < steps; ++k) {
      s = step_rk4(s, sc, h);
      s.t = static_cast<double>(k + 1) * h;
    }
    return s;
  };
  const SimState ref = integrate(dt / 8);
  const double e1 = StateDistance(integrate(dt), ref);
  const double e2 = StateDistance(integrate(dt / 2), ref);
  const double ratio = e1 / e2;
  return {ratio >= 12.0 && ratio <= 20.0,
          Fmt("error ratio %.2f (dt %.0e s: %.2e, ", ratio, dt, e1) +
              Fmt("dt/2: %.2e) over %.1f s", e2, horizon)};
}

}  // namespace
}  // namespace slingloiter

int main() {
  using slingloiter::Outcome;
  const std::vector<std::pair<const char*, std::function<Outcome()>>> checks = {
      {"AC1 nullspace dimensions", slingloiter::Ac1NullspaceDimensions},
      {"AC2 grasp nullspace residual", slingloiter::Ac2GraspNullspaceResidual},
      {"AC3 two carriers must stop", slingloiter::Ac3TwoCarrierStops},
      {"AC4 three carriers never stop", slingloiter::Ac4ThreeCarrierNonStop},
      {"AC5 proportional rates", slingloiter::Ac5ProportionalRates},
      {"AC6 joint rate zeros", slingloiter::Ac6JointRateZeros},
      {"AC7 closed-loop pose hold", slingloiter::Ac7PoseHold},
      {"AC8 equilibrium consistency", slingloiter::Ac8WrenchBalance},
      {"AC9 finite differences", slingloiter::Ac9FiniteDifferences},
      {"AC10 collinearity functions", slingloiter::Ac10Collinearity},
      {"AC11 integrator order", slingloiter::Ac11ConvergenceOrder},
  };
  int failures = 0;
  for (const auto& [name, check] : checks) {
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failures;
    std::printf("[%s] %s: %s\n", o.pass ? "PASS" : "FAIL", name,
                o.detail.c_str());
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
