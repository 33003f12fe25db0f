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

// Time-series CSV shared by planned and simulated runs. Columns, in order:
//
//   t
//   pL_x pL_y pL_z roll pitch yaw             load pose, radians
//   pR<i>_x pR<i>_y pR<i>_z                   for each carrier i = 1..n
//   vR<i>_x vR<i>_y vR<i>_z speed<i> T<i>
//   lambda_<a>_<b>  ...                       one per anchor pair (a, b), or
//   lambda_<k>      ...                       one per orthonormal component
//   dlambda_...                               same labels, rates
//   z<i>                                      for each cable
//
// Numbers carry 17 significant digits so a file replays bit-exactly.

#ifndef SLINGLOITER_IO_SERIES_CSV_HPP_
#define SLINGLOITER_IO_SERIES_CSV_HPP_

#include <filesystem>
#include <string>
#include <vector>

#include "slingloiter/analysis.hpp"
#include "slingloiter/planner.hpp"
#include "slingloiter/simulator.hpp"

namespace slingloiter::io {

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};

std::vector<std::string> series_header(int n, const PairSet& pairs,
                                       Basis basis, int components);

Table plan_table(const PlannedTrajectory& plan);
Table sim_table(const SimSeries& series);

std::string format_double(double v);
std::string to_csv(const Table& table);
// Throws ConfigError on ragged rows, non-numeric fields or a missing final
// newline (a truncated file).
Table parse_csv(const std::string& text);
Table read_csv(const std::filesystem::path& path);

// Writes to a sibling temporary file, then renames over `path`.
void write_file_atomic(const std::filesystem::path& path,
                       const std::string& content);

struct StoredSeries {
  int cables = 0;
  Basis basis = Basis::kPairwise;
  SeriesView view;
  std::vector<std::vector<double>> z;  // [cable][sample]
  std::vector<Vec3> load_position;
  std::vector<Rotation> attitude;
};

// Checks the header against the fixed schema; throws ConfigError.
StoredSeries parse_series(const Table& table);

}  // namespace slingloiter::io

#endif  // SLINGLOITER_IO_SERIES_CSV_HPP_
