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

#include "slingloiter/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/SVD>

#include "slingloiter/errors.hpp"

namespace slingloiter {
namespace {

int SharedEndpoint(const AnchorPair& a, const AnchorPair& b) {
  if (a.first == b.first || a.first == b.second) return a.first;
  if (a.second == b.first || a.second == b.second) return a.second;
  return -1;
}

void CheckProportional(const std::vector<double>& t,
                       const std::vector<VectorXd>& rates,
                       const ComponentPair& cp, std::size_t begin,
                       std::size_t end, double tol,
                       std::vector<ProportionalRates>& out) {
  const auto k = static_cast<Eigen::Index>(end - begin);
  MatrixXd m(k, 2);
  for (Eigen::Index r = 0; r < k; ++r) {
    m(r, 0) = rates[begin + r](cp.first);
    m(r, 1) = rates[begin + r](cp.second);
  }
  const Eigen::JacobiSVD<MatrixXd> svd(m);
  const auto& s = svd.singularValues();
  if (s(0) > 0.0 && !(s(1) < tol * s(0))) return;

  ProportionalRates flag;
  flag.first = cp.first;
  flag.second = cp.second;
  flag.cable = cp.cable;
  const double aa = m.col(0).squaredNorm();
  flag.ratio = aa > 0.0 ? m.col(0).dot(m.col(1)) / aa : 0.0;
  flag.window_start = t[begin];
  flag.window_end = t[end - 1];
  out.push_back(flag);
}

std::vector<double> JointZeros(const std::vector<double>& t,
                               const std::vector<VectorXd>& rates, int a,
                               int b, double tol) {
  std::vector<double> instants;
  const std::size_t n = t.size();
  for (std::size_t k = 0; k < n; ++k) {
    const double ra = rates[k](a);
    const double rb = rates[k](b);
    if (ra == 0.0) {
      if (std::abs(rb) < tol) instants.push_back(t[k]);
      continue;
    }
    if (k + 1 == n) break;
    const double ra1 = rates[k + 1](a);
    if (!(ra * ra1 < 0.0)) continue;
    const double s = ra / (ra - ra1);
    const double rb_star = rb + s * (rates[k + 1](b) - rb);
    if (std::abs(rb_star) < tol) {
      instants.push_back(t[k] + s * (t[k + 1] - t[k]));
    }
  }
  return instants;
}

}  // namespace

double NonStopReport::overall_min_speed() const {
  double m = std::numeric_limits<double>::infinity();
  for (const auto& c : carriers) m = std::min(m, c.min_speed);
  return m;
}

int NonStopReport::slowest_carrier() const {
  int best = -1;
  for (std::size_t i = 0; i < carriers.size(); ++i) {
    if (best < 0 || carriers[i].min_speed < carriers[best].min_speed) {
      best = static_cast<int>(i);
    }
  }
  return best;
}

SeriesView series_view(const PlannedTrajectory& plan) {
  SeriesView v;
  if (plan.basis == Basis::kPairwise) v.pairs = plan.pairs;
  const std::size_t n =
      plan.samples.empty() ? 0 : plan.samples.front().cables.size();
  v.speed.assign(n, {});
  v.tension.assign(n, {});
  for (const auto& s : plan.samples) {
    v.t.push_back(s.t);
    v.lambda_rate.push_back(s.lambda_rate);
    for (std::size_t i = 0; i < n; ++i) {
      v.speed[i].push_back(s.cables[i].carrier_velocity.norm());
      v.tension[i].push_back(s.cables[i].tension);
    }
  }
  return v;
}

SeriesView series_view(const SimSeries& series) {
  SeriesView v;
  if (series.basis == Basis::kPairwise) v.pairs = series.pairs;
  const std::size_t n = series.records.empty()
                            ? 0
                            : series.records.front().carrier_velocity.size();
  v.speed.assign(n, {});
  v.tension.assign(n, {});
  for (const auto& r : series.records) {
    v.t.push_back(r.t);
    v.lambda_rate.push_back(r.lambda_rate);
    for (std::size_t i = 0; i < n; ++i) {
      v.speed[i].push_back(r.carrier_velocity[i].norm());
      v.tension[i].push_back(r.tension[i]);
    }
  }
  return v;
}

std::vector<ComponentPair> shared_cable_components(const PairSet& pairs,
                                                   int components) {
  std::vector<ComponentPair> out;
  if (pairs.empty()) {
    for (int k = 0; k < components; ++k) {
      for (int l = k + 1; l < components; ++l) out.push_back({k, l, -1});
    }
    return out;
  }
  if (static_cast<int>(pairs.size()) != components) {
    throw DimensionMismatch("pair labels", components,
                            static_cast<long>(pairs.size()));
  }
  for (int k = 0; k < components; ++k) {
    for (int l = k + 1; l < components; ++l) {
      const int c = SharedEndpoint(pairs[k], pairs[l]);
      if (c >= 0) out.push_back({k, l, c});
    }
  }
  return out;
}

DegenerateFlags detect_degenerate(const std::vector<double>& t,
                                  const std::vector<VectorXd>& lambda_rate,
                                  const PairSet& pairs,
                                  const DetectorOptions& options) {
  if (t.size() < static_cast<std::size_t>(kMinDetectorSamples)) {
    throw InvalidModel("degenerate-case detection needs at least " +
                       std::to_string(kMinDetectorSamples) + " samples");
  }
  if (lambda_rate.size() != t.size()) {
    throw DimensionMismatch("lambda rate samples", static_cast<long>(t.size()),
                            static_cast<long>(lambda_rate.size()));
  }
  const int m = static_cast<int>(lambda_rate.front().size());
  for (const auto& r : lambda_rate) {
    if (r.size() != m) throw DimensionMismatch("lambda rate", m, r.size());
  }

  DegenerateFlags flags;
  const std::size_t total = t.size();
  const auto window =
      options.window_samples > 0
          ? static_cast<std::size_t>(options.window_samples)
          : total;
  for (const ComponentPair& cp : shared_cable_components(pairs, m)) {
    for (std::size_t begin = 0; begin < total; begin += window) {
      const std::size_t end = std::min(total, begin + window);
      if (end - begin < static_cast<std::size_t>(kMinDetectorSamples)) break;
      CheckProportional(t, lambda_rate, cp, begin, end,
                        options.proportional_tol, flags.case1);
    }
    std::vector<double> instants =
        JointZeros(t, lambda_rate, cp.first, cp.second, options.zero_tol);
    if (!instants.empty()) {
      flags.case2.push_back({cp.first, cp.second, cp.cable,
                             std::move(instants)});
    }
  }
  return flags;
}

NonStopReport nonstop_report(const SeriesView& view, double v_min,
                             const DetectorOptions& options) {
  if (view.t.empty()) throw InvalidModel("empty series");
  NonStopReport report;
  report.v_min = v_min;
  for (const auto& speeds : view.speed) {
    if (speeds.size() != view.t.size()) throw InvalidModel("ragged series");
    const auto it = std::min_element(speeds.begin(), speeds.end());
    CarrierSpeed c;
    c.min_speed = *it;
    c.argmin_time = view.t[static_cast<std::size_t>(it - speeds.begin())];
    c.nonstop = c.min_speed >= v_min;
    report.carriers.push_back(c);
  }
  for (const auto& tension : view.tension) {
    report.min_tension.push_back(
        *std::min_element(tension.begin(), tension.end()));
  }
  if (!view.lambda_rate.empty() && view.lambda_rate.front().size() > 0 &&
      view.t.size() >= static_cast<std::size_t>(kMinDetectorSamples)) {
    report.degenerate =
        detect_degenerate(view.t, view.lambda_rate, view.pairs, options);
  }
  report.nonstop = std::all_of(report.carriers.begin(), report.carriers.end(),
                               [](const CarrierSpeed& c) { return c.nonstop; });
  return report;
}

NonStopReport min_speed(const PlannedTrajectory& plan, double v_min,
                        const DetectorOptions& options) {
  return nonstop_report(series_view(plan), v_min, options);
}

NonStopReport min_speed(const SimSeries& series, double v_min,
                        const DetectorOptions& options) {
  NonStopReport report = nonstop_report(series_view(series), v_min, options);
  report.pose =
      pose_error(series, series.target_position, series.target_attitude);
  return report;
}

PoseError pose_error(const SimSeries& series, const Vec3& target_position,
                     const Rotation& target_attitude) {
  PoseError e;
  for (const auto& r : series.records) {
    e.position = std::max(e.position, (r.load_position - target_position).norm());
    e.attitude = std::max(e.attitude, geodesic_angle(target_attitude, r.attitude));
  }
  return e;
}

SpeedMinimum refine_speed_minimum(const InternalForcePlanner& planner,
                                  int carrier, double t_lo, double t_hi,
                                  double t_tol) {
  if (!(t_lo <= t_hi)) throw InvalidModel("empty refinement interval");
  const auto speed = [&](double t) {
    return planner.Sample(t).cables.at(carrier).carrier_velocity.norm();
  };
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = t_lo;
  double b = t_hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = speed(c);
  double fd = speed(d);
  while (b - a > t_tol) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = speed(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = speed(d);
    }
    if (c == d) break;
  }
  SpeedMinimum best{c, fc};
  if (fd < best.speed) best = {d, fd};
  for (double edge : {t_lo, t_hi}) {
    const double s = speed(edge);
    if (s < best.speed) best = {edge, s};
  }
  return best;
}

}  // namespace slingloiter
