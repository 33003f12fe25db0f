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

// Post-hoc checks on planned or simulated series: carrier speed floors,
// cable tension minima, stalled internal-force rates and pose hold.

#ifndef SLINGLOITER_ANALYSIS_HPP_
#define SLINGLOITER_ANALYSIS_HPP_

#include <optional>
#include <vector>

#include "slingloiter/geometry.hpp"
#include "slingloiter/grasp.hpp"
#include "slingloiter/planner.hpp"
#include "slingloiter/simulator.hpp"

namespace slingloiter {

inline constexpr double kProportionalTolerance = 1e-9;
inline constexpr double kRateZeroTolerance = 1e-9;
inline constexpr int kMinDetectorSamples = 10;

struct CarrierSpeed {
  double min_speed = 0.0;
  double argmin_time = 0.0;
  bool nonstop = false;
};

// Two internal-force rates that are proportional over a window:
// lambda_rate[second] = ratio * lambda_rate[first].
struct ProportionalRates {
  int first = 0;   // component indices, 0-based
  int second = 0;
  int cable = -1;  // shared cable, -1 when the basis has no pair labels
  double ratio = 0.0;
  double window_start = 0.0;
  double window_end = 0.0;
};

// Instants at which two rates that feed the same cable vanish together.
struct JointRateZeros {
  int first = 0;
  int second = 0;
  int cable = -1;
  std::vector<double> instants;
};

struct DegenerateFlags {
  std::vector<ProportionalRates> case1;
  std::vector<JointRateZeros> case2;

  bool any() const { return !case1.empty() || !case2.empty(); }
};

struct DetectorOptions {
  // 0 checks proportionality over the whole horizon; otherwise over
  // consecutive windows of this many samples.
  int window_samples = 0;
  double proportional_tol = kProportionalTolerance;
  double zero_tol = kRateZeroTolerance;
};

struct PoseError {
  double position = 0.0;  // m
  double attitude = 0.0;  // rad, geodesic
};

struct NonStopReport {
  double v_min = 0.0;
  std::vector<CarrierSpeed> carriers;
  std::vector<double> min_tension;
  DegenerateFlags degenerate;
  std::optional<PoseError> pose;
  bool nonstop = false;  // every carrier at or above v_min

  // Smallest carrier speed and the carrier that attains it.
  double overall_min_speed() const;
  int slowest_carrier() const;
};

// Raw columns a report is computed from; what a series CSV holds.
struct SeriesView {
  std::vector<double> t;
  std::vector<std::vector<double>> speed;    // [carrier][sample]
  std::vector<std::vector<double>> tension;  // [cable][sample]
  std::vector<VectorXd> lambda_rate;         // [sample]
  PairSet pairs;  // empty when the lambda components are not pair-labelled
};

SeriesView series_view(const PlannedTrajectory& plan);
SeriesView series_view(const SimSeries& series);

// Component pairs (k, l) that both load a common cable, with that cable.
// Without pair labels every component pair is returned with cable -1.
struct ComponentPair {
  int first;
  int second;
  int cable;
};
std::vector<ComponentPair> shared_cable_components(const PairSet& pairs,
                                                   int components);

// Requires at least kMinDetectorSamples samples.
DegenerateFlags detect_degenerate(const std::vector<double>& t,
                                  const std::vector<VectorXd>& lambda_rate,
                                  const PairSet& pairs,
                                  const DetectorOptions& options = {});

NonStopReport nonstop_report(const SeriesView& view, double v_min,
                             const DetectorOptions& options = {});

NonStopReport min_speed(const PlannedTrajectory& plan, double v_min,
                        const DetectorOptions& options = {});

// Also fills the pose error against the series target.
NonStopReport min_speed(const SimSeries& series, double v_min,
                        const DetectorOptions& options = {});

PoseError pose_error(const SimSeries& series, const Vec3& target_position,
                     const Rotation& target_attitude);

struct SpeedMinimum {
  double t = 0.0;
  double speed = 0.0;
};

// Golden-section search for the smallest speed of one carrier on
// [t_lo, t_hi], evaluated on the continuous-time planner. Grid minima miss
// isolated zeros by O(dt); this pins them down.
SpeedMinimum refine_speed_minimum(const InternalForcePlanner& planner,
                                  int carrier, double t_lo, double t_hi,
                                  double t_tol = 1e-13);

}  // namespace slingloiter

#endif  // SLINGLOITER_ANALYSIS_HPP_
