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

#include "slingloiter/io/config.hpp"

#include <cmath>
#include <fstream>
#include <initializer_list>
#include <numbers>
#include <set>

#include "slingloiter/errors.hpp"

namespace slingloiter::io {
namespace {

using nlohmann::json;

void AllowOnly(const json& obj, const std::string& where,
               std::initializer_list<const char*> keys) {
  if (!obj.is_object()) throw ConfigError(where + " must be an object");
  const std::set<std::string> allowed(keys.begin(), keys.end());
  for (const auto& [key, value] : obj.items()) {
    if (!allowed.count(key)) {
      throw ConfigError("unknown key " + where + "." + key);
    }
  }
}

double Number(const json& v, const std::string& where) {
  if (!v.is_number()) throw ConfigError(where + " must be a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) throw ConfigError(where + " must be finite");
  return d;
}

double NumberOr(const json& obj, const char* key, const std::string& where,
                double fallback) {
  return obj.contains(key) ? Number(obj.at(key), where + "." + key) : fallback;
}

bool BoolOr(const json& obj, const char* key, const std::string& where,
            bool fallback) {
  if (!obj.contains(key)) return fallback;
  if (!obj.at(key).is_boolean()) {
    throw ConfigError(where + "." + key + " must be a boolean");
  }
  return obj.at(key).get<bool>();
}

Vec3 Vector3(const json& v, const std::string& where) {
  if (!v.is_array() || v.size() != 3) {
    throw ConfigError(where + " must be an array of 3 numbers");
  }
  return {Number(v[0], where + "[0]"), Number(v[1], where + "[1]"),
          Number(v[2], where + "[2]")};
}

// A scalar broadcasts to every entry.
std::vector<double> NumberList(const json& v, std::size_t count,
                               const std::string& where) {
  if (v.is_number()) return std::vector<double>(count, Number(v, where));
  if (!v.is_array() || v.size() != count) {
    throw ConfigError(where + " must be a number or an array of " +
                      std::to_string(count) + " numbers");
  }
  std::vector<double> out;
  for (std::size_t i = 0; i < count; ++i) {
    out.push_back(Number(v[i], where + "[" + std::to_string(i) + "]"));
  }
  return out;
}

VectorXd ToVector(const std::vector<double>& v) {
  return Eigen::Map<const VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

constexpr double kDegree = std::numbers::pi / 180.0;

}  // namespace

RunConfig parse_run_config(const json& doc) {
  AllowOnly(doc, "config",
            {"load", "cables", "carriers", "equilibrium", "lambda", "sim",
             "verify", "gravity", "basis", "hamiltonian_seed"});
  RunConfig c;
  if (!doc.contains("load")) throw ConfigError("missing load section");
  const json& load = doc.at("load");
  AllowOnly(load, "load",
            {"mass", "inertia_diag", "anchors", "friction_lin", "friction_rot"});
  if (!load.contains("mass") || !load.contains("anchors") ||
      !load.contains("inertia_diag")) {
    throw ConfigError("load needs mass, inertia_diag and anchors");
  }
  c.load.mass = Number(load.at("mass"), "load.mass");
  c.load.inertia = Vector3(load.at("inertia_diag"), "load.inertia_diag")
                       .asDiagonal();
  const json& anchors = load.at("anchors");
  if (!anchors.is_array() || anchors.empty()) {
    throw ConfigError("load.anchors must be a non-empty array");
  }
  for (std::size_t i = 0; i < anchors.size(); ++i) {
    c.load.anchors.push_back(
        Vector3(anchors[i], "load.anchors[" + std::to_string(i) + "]"));
  }
  c.load.linear_friction = NumberOr(load, "friction_lin", "load", 0.0);
  c.load.angular_friction = NumberOr(load, "friction_rot", "load", 0.0);
  const std::size_t n = c.load.anchors.size();

  const json cables = doc.value("cables", json::object());
  AllowOnly(cables, "cables", {"length", "stiffness"});
  const CableModel cable_default;
  const auto lengths = NumberList(cables.value("length", json(cable_default.length)),
                                  n, "cables.length");
  const auto stiffness = NumberList(
      cables.value("stiffness", json(cable_default.stiffness)), n,
      "cables.stiffness");
  for (std::size_t i = 0; i < n; ++i) {
    c.cables.push_back({lengths[i], stiffness[i]});
  }

  const json carriers = doc.value("carriers", json::object());
  AllowOnly(carriers, "carriers", {"mass", "kp", "kd", "feedforward"});
  CarrierModel carrier;
  carrier.mass = NumberOr(carriers, "mass", "carriers", carrier.mass);
  carrier.kp = NumberOr(carriers, "kp", "carriers", carrier.kp);
  carrier.kd = NumberOr(carriers, "kd", "carriers", carrier.kd);
  c.carriers.assign(n, carrier);
  c.feedforward = BoolOr(carriers, "feedforward", "carriers", true);

  const json eq = doc.value("equilibrium", json::object());
  AllowOnly(eq, "equilibrium", {"position", "attitude_rpy"});
  if (eq.contains("position")) {
    c.position = Vector3(eq.at("position"), "equilibrium.position");
  }
  if (eq.contains("attitude_rpy")) {
    c.attitude_rpy_deg = Vector3(eq.at("attitude_rpy"), "equilibrium.attitude_rpy");
  }
  c.attitude = Rotation::FromRollPitchYaw(c.attitude_rpy_deg.x() * kDegree,
                                          c.attitude_rpy_deg.y() * kDegree,
                                          c.attitude_rpy_deg.z() * kDegree);

  c.gravity = NumberOr(doc, "gravity", "config", kStandardGravity);
  if (doc.contains("basis")) {
    const json& b = doc.at("basis");
    if (b == "pairwise") {
      c.basis = Basis::kPairwise;
    } else if (b == "orthonormal") {
      c.basis = Basis::kOrthonormal;
    } else {
      throw ConfigError("basis must be \"pairwise\" or \"orthonormal\"");
    }
  }
  if (doc.contains("hamiltonian_seed")) {
    const json& s = doc.at("hamiltonian_seed");
    if (!s.is_number_unsigned() &&
        !(s.is_number_integer() && s.get<std::int64_t>() >= 0)) {
      throw ConfigError("hamiltonian_seed must be a non-negative integer");
    }
    c.hamiltonian_seed = s.get<std::uint64_t>();
  }

  const json sim = doc.value("sim", json::object());
  AllowOnly(sim, "sim", {"dt", "duration", "cable_mode"});
  c.dt = NumberOr(sim, "dt", "sim", c.dt);
  c.duration = NumberOr(sim, "duration", "sim", c.duration);
  if (!(c.dt > 0.0) || !(c.duration >= c.dt)) {
    throw ConfigError("sim needs dt > 0 and duration >= dt");
  }
  if (sim.contains("cable_mode")) {
    const json& m = sim.at("cable_mode");
    if (m == "spring") {
      c.cable_mode = CableMode::kSpring;
    } else if (m == "ideal") {
      c.cable_mode = CableMode::kIdealForce;
    } else if (m == "none") {
      c.cable_mode = CableMode::kDisconnected;
    } else {
      throw ConfigError("sim.cable_mode must be spring, ideal or none");
    }
  }

  const json verify = doc.value("verify", json::object());
  AllowOnly(verify, "verify", {"v_min", "z_min"});
  c.v_min = NumberOr(verify, "v_min", "verify", c.v_min);
  c.z_min = NumberOr(verify, "z_min", "verify", c.z_min);

  // Model-level checks surface here so a bad file fails before any command
  // starts; the lambda dimension depends on the grasp.
  try {
    for (const auto& cm : c.cables) cm.Validate();
    for (const auto& cm : c.carriers) cm.Validate();
    const GraspSystem gs = make_grasp(c);
    const auto m = static_cast<std::size_t>(basis_matrix(gs, c.basis).cols());
    const json lambda = doc.value("lambda", json::object());
    AllowOnly(lambda, "lambda",
              {"lambda0", "amplitude", "frequency", "phase", "bounds"});
    if (m > 0) {
      for (const char* key : {"lambda0", "amplitude", "frequency", "phase"}) {
        if (!lambda.contains(key)) {
          throw ConfigError(std::string("missing lambda.") + key);
        }
      }
      c.lambda.initial = ToVector(NumberList(lambda.at("lambda0"), m, "lambda.lambda0"));
      c.lambda.amplitude = ToVector(NumberList(lambda.at("amplitude"), m, "lambda.amplitude"));
      c.lambda.frequency = ToVector(NumberList(lambda.at("frequency"), m, "lambda.frequency"));
      c.lambda.phase = ToVector(NumberList(lambda.at("phase"), m, "lambda.phase"));
    } else {
      c.lambda.initial = c.lambda.amplitude = c.lambda.frequency =
          c.lambda.phase = VectorXd(0);
    }
    if (lambda.contains("bounds")) {
      const json& b = lambda.at("bounds");
      if (!b.is_array() || b.size() != 2) {
        throw ConfigError("lambda.bounds must be [lower, upper]");
      }
      c.lambda.lower_bound = Number(b[0], "lambda.bounds[0]");
      c.lambda.upper_bound = Number(b[1], "lambda.bounds[1]");
    }
    c.lambda.Validate();
  } catch (const ConfigError&) {
    throw;
  } catch (const DegenerateGeometry&) {
    throw;
  } catch (const Error& e) {
    throw ConfigError(e.what());
  }
  return c;
}

RunConfig load_run_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open " + path.string());
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
  return parse_run_config(doc);
}

json to_json(const RunConfig& c) {
  json anchors = json::array();
  for (const auto& a : c.load.anchors) anchors.push_back({a.x(), a.y(), a.z()});
  json lengths = json::array();
  json stiffness = json::array();
  for (const auto& cm : c.cables) {
    lengths.push_back(cm.length);
    stiffness.push_back(cm.stiffness);
  }
  const auto list = [](const VectorXd& v) {
    return std::vector<double>(v.data(), v.data() + v.size());
  };
  const CarrierModel carrier = c.carriers.empty() ? CarrierModel{} : c.carriers.front();
  json doc = {
      {"load",
       {{"mass", c.load.mass},
        {"inertia_diag",
         {c.load.inertia(0, 0), c.load.inertia(1, 1), c.load.inertia(2, 2)}},
        {"anchors", anchors},
        {"friction_lin", c.load.linear_friction},
        {"friction_rot", c.load.angular_friction}}},
      {"cables", {{"length", lengths}, {"stiffness", stiffness}}},
      {"carriers",
       {{"mass", carrier.mass},
        {"kp", carrier.kp},
        {"kd", carrier.kd},
        {"feedforward", c.feedforward}}},
      {"equilibrium",
       {{"position", {c.position.x(), c.position.y(), c.position.z()}},
        {"attitude_rpy",
         {c.attitude_rpy_deg.x(), c.attitude_rpy_deg.y(),
          c.attitude_rpy_deg.z()}}}},
      {"sim",
       {{"dt", c.dt},
        {"duration", c.duration},
        {"cable_mode", c.cable_mode == CableMode::kSpring       ? "spring"
                       : c.cable_mode == CableMode::kIdealForce ? "ideal"
                                                                : "none"}}},
      {"verify", {{"v_min", c.v_min}, {"z_min", c.z_min}}},
      {"gravity", c.gravity},
      {"basis", c.basis == Basis::kPairwise ? "pairwise" : "orthonormal"},
      {"hamiltonian_seed", c.hamiltonian_seed},
  };
  if (c.lambda.size() > 0) {
    doc["lambda"] = {{"lambda0", list(c.lambda.initial)},
                     {"amplitude", list(c.lambda.amplitude)},
                     {"frequency", list(c.lambda.frequency)},
                     {"phase", list(c.lambda.phase)}};
    if (std::isfinite(c.lambda.lower_bound) &&
        std::isfinite(c.lambda.upper_bound)) {
      doc["lambda"]["bounds"] = {c.lambda.lower_bound, c.lambda.upper_bound};
    }
  }
  return doc;
}

GraspSystem make_grasp(const RunConfig& c) {
  return GraspSystem::Build(c.load, c.attitude, c.position, c.pairs());
}

std::shared_ptr<const InternalForcePlanner> make_planner(const RunConfig& c) {
  return std::make_shared<const InternalForcePlanner>(
      make_grasp(c), c.cables, c.lambda, c.basis, c.gravity);
}

SimConfig make_sim_config(const RunConfig& c) {
  SimConfig s;
  s.load = c.load;
  s.cables = c.cables;
  s.carriers = c.carriers;
  s.reference = make_planner(c);
  s.dt = c.dt;
  s.duration = c.duration;
  s.gravity = c.gravity;
  s.feedforward = c.feedforward;
  s.cable_mode = c.cable_mode;
  return s;
}

}  // namespace slingloiter::io
