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

// Non-collinearity of a cable force and its rate. A cable changes direction
// at time t exactly when f_i(t) and f_i'(t) are not parallel, which the
// scalar z_i = |f_i'| |f_i| - |f_i'^T f_i| >= 0 detects.

#ifndef SLINGLOITER_COLLINEARITY_HPP_
#define SLINGLOITER_COLLINEARITY_HPP_

#include <vector>

#include "slingloiter/geometry.hpp"
#include "slingloiter/planner.hpp"

namespace slingloiter {

inline constexpr double kDefaultZMin = 1e-6;

// |ydot| |y| - |ydot^T y|; zero iff y and ydot are parallel or either is zero.
double z_value(const Vec3& y, const Vec3& ydot);

// |y|^2 |ydot|^2 - (y^T ydot)^2, evaluated as |y x ydot|^2 (Lagrange).
double z_squared(const Vec3& y, const Vec3& ydot);

struct ZSeries {
  std::vector<double> t;
  std::vector<std::vector<double>> z;  // [cable][sample]
  std::vector<double> min;             // per cable
  std::vector<double> argmin_time;     // per cable
};

struct PersistenceCheck {
  ZSeries series;
  double threshold = kDefaultZMin;
  bool persistent = false;  // min z_i > threshold for every cable
};

// Fills min / argmin from t and z. Requires a non-empty grid.
ZSeries summarize_z(std::vector<double> t, std::vector<std::vector<double>> z);

PersistenceCheck persistent_change_check(const PlannedTrajectory& plan,
                                         double zmin = kDefaultZMin);

PersistenceCheck persistent_change_check(ZSeries series,
                                         double zmin = kDefaultZMin);

}  // namespace slingloiter

#endif  // SLINGLOITER_COLLINEARITY_HPP_
