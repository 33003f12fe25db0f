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

#include "slingloiter/io/report.hpp"

#include <numbers>

namespace slingloiter::io {
namespace {

using nlohmann::json;

json ComponentPairs(const PairSet& pairs, int a, int b) {
  if (pairs.empty()) return json::array();
  return json::array({{pairs[a].first + 1, pairs[a].second + 1},
                      {pairs[b].first + 1, pairs[b].second + 1}});
}

json Cable(int c) { return c < 0 ? json(nullptr) : json(c + 1); }

}  // namespace

json pairs_json(const PairSet& pairs) {
  json out = json::array();
  for (const auto& p : pairs) out.push_back({p.first + 1, p.second + 1});
  return out;
}

json report_json(const NonStopReport& report, const PairSet& pairs) {
  json carriers = json::array();
  for (std::size_t i = 0; i < report.carriers.size(); ++i) {
    const CarrierSpeed& c = report.carriers[i];
    carriers.push_back({{"index", i + 1},
                        {"min_speed", c.min_speed},
                        {"argmin_time", c.argmin_time},
                        {"nonstop", c.nonstop}});
  }
  json case1 = json::array();
  for (const auto& f : report.degenerate.case1) {
    case1.push_back({{"components", {f.first + 1, f.second + 1}},
                     {"pairs", ComponentPairs(pairs, f.first, f.second)},
                     {"cable", Cable(f.cable)},
                     {"ratio", f.ratio},
                     {"window", {f.window_start, f.window_end}}});
  }
  json case2 = json::array();
  for (const auto& f : report.degenerate.case2) {
    case2.push_back({{"components", {f.first + 1, f.second + 1}},
                     {"pairs", ComponentPairs(pairs, f.first, f.second)},
                     {"cable", Cable(f.cable)},
                     {"instants", f.instants}});
  }
  json out = {
      {"v_min", report.v_min},
      {"nonstop", report.nonstop},
      {"min_speed", report.carriers.empty() ? 0.0 : report.overall_min_speed()},
      {"slowest_carrier", report.slowest_carrier() + 1},
      {"carriers", carriers},
      {"min_tension", report.min_tension},
      {"degenerate", {{"case1", case1}, {"case2", case2}}},
  };
  if (report.pose) {
    out["pose_error"] = {
        {"position", report.pose->position},
        {"attitude_rad", report.pose->attitude},
        {"attitude_deg", report.pose->attitude * 180.0 / std::numbers::pi}};
  }
  return out;
}

json persistence_json(const PersistenceCheck& check) {
  return {{"threshold", check.threshold},
          {"persistent", check.persistent},
          {"min", check.series.min},
          {"argmin_time", check.series.argmin_time}};
}

}  // namespace slingloiter::io
