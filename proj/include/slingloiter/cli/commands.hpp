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

// The slingloiter command line:
//
//   slingloiter analyze  --config F [--out DIR]
//   slingloiter plan     --config F [--out DIR] [--dt S] [--duration S] [--v-min V]
//   slingloiter simulate --config F [--out DIR] [--dt S] [--duration S] [--v-min V]
//   slingloiter verify   --csv F [--config F] [--out DIR] [--v-min V] [--z-min Z]
//   slingloiter sweep    --config F --vary NAME=START:STEP:STOP [--vary ...]
//                        [--out DIR] [--threads K]
//
// Exit codes: 0 ok, 1 unexpected failure, 2 config or schema error,
// 3 degenerate geometry, 4 slack cable, 5 diverged.

#ifndef SLINGLOITER_CLI_COMMANDS_HPP_
#define SLINGLOITER_CLI_COMMANDS_HPP_

#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "slingloiter/io/config.hpp"

namespace slingloiter::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitFailure = 1,
  kExitConfig = 2,
  kExitDegenerate = 3,
  kExitSlack = 4,
  kExitDiverged = 5,
};

// Maps the exception currently being handled to an exit code.
int exit_code_for_current_exception();

nlohmann::json analyze(const io::RunConfig& config);

// Writes plan.csv and plan_summary.json under out_dir and returns the
// summary.
nlohmann::json plan_command(const io::RunConfig& config,
                            const std::filesystem::path& out_dir);

// Writes sim.csv and sim_summary.json.
nlohmann::json simulate_command(const io::RunConfig& config,
                                const std::filesystem::path& out_dir);

// Recomputes the report from a stored series. With a config the load pose
// is also compared against its equilibrium.
nlohmann::json verify_command(const std::filesystem::path& csv, double v_min,
                              double z_min,
                              const std::optional<io::RunConfig>& config);

struct SweepAxis {
  std::string name;
  std::vector<double> values;
};

// NAME=START:STEP:STOP (inclusive) or NAME=VALUE. Names: lambda0<k>,
// amplitude<k>, frequency<k>, phase<k> (1-based component), load_mass,
// cable_length, cable_stiffness. Throws ConfigError.
SweepAxis parse_axis(const std::string& spec);

void apply_axis(io::RunConfig& config, const std::string& name, double value);

struct SweepRow {
  std::vector<double> values;
  std::string status;  // ok, slack, invalid, degenerate
  double min_speed = 0.0;
  int slowest_carrier = 0;  // 1-based
  double min_tension = 0.0;
  double min_z = 0.0;
  bool case1 = false;
  bool case2 = false;
  bool nonstop = false;
  bool persistent = false;
};

// Evaluates the plan at every grid point, in parallel when threads > 1.
// Rows come back in grid order, first axis slowest.
std::vector<SweepRow> sweep(const io::RunConfig& config,
                            const std::vector<SweepAxis>& axes, int threads);

std::string sweep_csv(const std::vector<SweepAxis>& axes,
                      const std::vector<SweepRow>& rows);

int run_cli(int argc, const char* const* argv, std::ostream& out,
            std::ostream& err);

}  // namespace slingloiter::cli

#endif  // SLINGLOITER_CLI_COMMANDS_HPP_
