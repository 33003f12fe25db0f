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

// JSON views of analysis results. Indices in the output are 1-based.
//
// nonstop report:
//   {"v_min", "nonstop", "min_speed", "slowest_carrier",
//    "carriers": [{"index", "min_speed", "argmin_time", "nonstop"}],
//    "min_tension": [...],
//    "degenerate": {"case1": [{"components", "pairs", "cable", "ratio",
//                              "window"}],
//                   "case2": [{"components", "pairs", "cable", "instants"}]},
//    "pose_error": {"position", "attitude_rad", "attitude_deg"}  (sim only)}
// persistence:
//   {"threshold", "persistent", "min": [...], "argmin_time": [...]}

#ifndef SLINGLOITER_IO_REPORT_HPP_
#define SLINGLOITER_IO_REPORT_HPP_

#include <json.hpp>

#include "slingloiter/analysis.hpp"
#include "slingloiter/collinearity.hpp"
#include "slingloiter/grasp.hpp"

namespace slingloiter::io {

nlohmann::json pairs_json(const PairSet& pairs);
nlohmann::json report_json(const NonStopReport& report, const PairSet& pairs);
nlohmann::json persistence_json(const PersistenceCheck& check);

}  // namespace slingloiter::io

#endif  // SLINGLOITER_IO_REPORT_HPP_
