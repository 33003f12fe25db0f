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

#include "slingloiter/collinearity.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "slingloiter/errors.hpp"

namespace slingloiter {

// |a||b| - |a.b| = |a x b|^2 / (|a||b| + |a.b|), which avoids cancellation
// when the vectors are nearly parallel.
double z_value(const Vec3& y, const Vec3& ydot) {
  const double denom = ydot.norm() * y.norm() + std::abs(ydot.dot(y));
  if (!(denom > 0.0)) return 0.0;
  return y.cross(ydot).squaredNorm() / denom;
}

double z_squared(const Vec3& y, const Vec3& ydot) {
  return y.cross(ydot).squaredNorm();
}

ZSeries summarize_z(std::vector<double> t,
                    std::vector<std::vector<double>> z) {
  if (t.empty()) throw InvalidModel("empty z series");
  ZSeries s;
  s.t = std::move(t);
  s.z = std::move(z);
  for (const auto& zi : s.z) {
    if (zi.size() != s.t.size()) throw InvalidModel("ragged z series");
    const auto it = std::min_element(zi.begin(), zi.end());
    s.min.push_back(*it);
    s.argmin_time.push_back(s.t[static_cast<std::size_t>(it - zi.begin())]);
  }
  return s;
}

PersistenceCheck persistent_change_check(ZSeries series, double zmin) {
  PersistenceCheck out;
  out.threshold = zmin;
  out.persistent = std::all_of(series.min.begin(), series.min.end(),
                               [zmin](double m) { return m > zmin; });
  out.series = std::move(series);
  return out;
}

PersistenceCheck persistent_change_check(const PlannedTrajectory& plan,
                                         double zmin) {
  if (plan.samples.empty()) throw InvalidModel("empty plan");
  const std::size_t n = plan.samples.front().cables.size();
  std::vector<double> t;
  std::vector<std::vector<double>> z(n);
  t.reserve(plan.samples.size());
  for (auto& zi : z) zi.reserve(plan.samples.size());
  for (const auto& s : plan.samples) {
    t.push_back(s.t);
    for (std::size_t i = 0; i < n; ++i) {
      z[i].push_back(z_value(s.cables[i].force, s.cables[i].force_rate));
    }
  }
  return persistent_change_check(summarize_z(std::move(t), std::move(z)),
                                 zmin);
}

}  // namespace slingloiter
