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

// Run configuration files. The JSON layout is documented in
// configs/runconfig.schema.json; parse errors raise ConfigError.

#ifndef SLINGLOITER_IO_CONFIG_HPP_
#define SLINGLOITER_IO_CONFIG_HPP_

#include <cstdint>
#include <filesystem>
#include <memory>
#include <string>
#include <vector>

#include <json.hpp>

#include "slingloiter/grasp.hpp"
#include "slingloiter/planner.hpp"
#include "slingloiter/simulator.hpp"

namespace slingloiter::io {

struct RunConfig {
  LoadModel load;
  std::vector<CableModel> cables;
  std::vector<CarrierModel> carriers;
  bool feedforward = true;
  CableMode cable_mode = CableMode::kSpring;
  Vec3 position = Vec3::Zero();
  Vec3 attitude_rpy_deg = Vec3::Zero();
  Rotation attitude;  // from attitude_rpy_deg
  LambdaTrajectory lambda;
  double dt = 1e-3;
  double duration = 20.0;
  double v_min = 0.05;
  double z_min = 1e-6;
  double gravity = kStandardGravity;
  Basis basis = Basis::kPairwise;
  std::uint64_t hamiltonian_seed = 0;

  int cable_count() const { return load.cable_count(); }
  PairSet pairs() const { return default_pairs(cable_count(), hamiltonian_seed); }
};

RunConfig parse_run_config(const nlohmann::json& doc);
RunConfig load_run_config(const std::filesystem::path& path);
nlohmann::json to_json(const RunConfig& config);

GraspSystem make_grasp(const RunConfig& config);
std::shared_ptr<const InternalForcePlanner> make_planner(const RunConfig& c);
SimConfig make_sim_config(const RunConfig& config);

}  // namespace slingloiter::io

#endif  // SLINGLOITER_IO_CONFIG_HPP_
