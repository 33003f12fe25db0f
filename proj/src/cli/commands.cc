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

#include "slingloiter/cli/commands.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <exception>
#include <regex>
#include <thread>

#include <CLI11.hpp>

#include "slingloiter/analysis.hpp"
#include "slingloiter/collinearity.hpp"
#include "slingloiter/errors.hpp"
#include "slingloiter/io/report.hpp"
#include "slingloiter/io/series_csv.hpp"

namespace slingloiter::cli {
namespace {

using nlohmann::json;
namespace fs = std::filesystem;

constexpr std::size_t kMaxSweepPoints = 1000000;

std::string BasisName(Basis b) {
  return b == Basis::kPairwise ? "pairwise" : "orthonormal";
}

void WriteJson(const fs::path& path, const json& doc) {
  io::write_file_atomic(path, doc.dump(2) + "\n");
}

fs::path PrepareOut(const fs::path& dir) {
  fs::create_directories(dir);
  return dir;
}

double ParseNumber(const std::string& s, const std::string& spec) {
  double v = 0.0;
  const char* end = s.data() + s.size();
  const auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (s.empty() || ec != std::errc() || ptr != end || !std::isfinite(v)) {
    throw ConfigError("malformed sweep axis '" + spec + "'");
  }
  return v;
}

bool Pass(const NonStopReport& report, const PersistenceCheck& z) {
  return report.nonstop && z.persistent && !report.degenerate.any();
}

VectorXd& LambdaField(io::RunConfig& c, const std::string& field) {
  if (field == "lambda0") return c.lambda.initial;
  if (field == "amplitude") return c.lambda.amplitude;
  if (field == "frequency") return c.lambda.frequency;
  return c.lambda.phase;
}

SweepRow EvaluatePoint(io::RunConfig config,
                       const std::vector<SweepAxis>& axes,
                       const std::vector<double>& values) {
  SweepRow row;
  row.values = values;
  try {
    for (std::size_t a = 0; a < axes.size(); ++a) {
      apply_axis(config, axes[a].name, values[a]);
    }
    const auto planner = io::make_planner(config);
    const PlannedTrajectory p =
        plan(*planner, uniform_grid(config.dt, config.duration));
    const NonStopReport report = min_speed(p, config.v_min);
    const PersistenceCheck z = persistent_change_check(p, config.z_min);
    row.status = "ok";
    row.min_speed = report.overall_min_speed();
    row.slowest_carrier = report.slowest_carrier() + 1;
    row.min_tension =
        *std::min_element(report.min_tension.begin(), report.min_tension.end());
    row.min_z = *std::min_element(z.series.min.begin(), z.series.min.end());
    row.case1 = !report.degenerate.case1.empty();
    row.case2 = !report.degenerate.case2.empty();
    row.nonstop = report.nonstop;
    row.persistent = z.persistent;
  } catch (const SlackCable&) {
    row.status = "slack";
  } catch (const DegenerateGeometry&) {
    row.status = "degenerate";
  } catch (const Error&) {
    row.status = "invalid";
  }
  return row;
}

io::RunConfig LoadWithOverrides(const std::string& path,
                                const std::optional<double>& dt,
                                const std::optional<double>& duration,
                                const std::optional<double>& v_min) {
  io::RunConfig c = io::load_run_config(path);
  if (dt) c.dt = *dt;
  if (duration) c.duration = *duration;
  if (v_min) c.v_min = *v_min;
  if (!(c.dt > 0.0) || !(c.duration >= c.dt)) {
    throw ConfigError("need dt > 0 and duration >= dt");
  }
  return c;
}

}  // namespace

int exit_code_for_current_exception() {
  try {
    throw;
  } catch (const ConfigError&) {
    return kExitConfig;
  } catch (const DegenerateGeometry&) {
    return kExitDegenerate;
  } catch (const SlackCable&) {
    return kExitSlack;
  } catch (const Diverged&) {
    return kExitDiverged;
  } catch (const Error&) {
    return kExitConfig;
  } catch (const json::exception&) {
    return kExitConfig;
  } catch (...) {
    return kExitFailure;
  }
}

json analyze(const io::RunConfig& config) {
  const GraspSystem gs = io::make_grasp(config);
  const int n = gs.cable_count();
  json out = {
      {"n", n},
      {"grasp_rank", gs.rank()},
      {"nullity", gs.nullity()},
      {"pairwise_rank", gs.pairwise_rank()},
      {"pairs", io::pairs_json(gs.pairs())},
      {"collinear", gs.collinear_anchors()},
      {"hamiltonian", nullptr},
      {"feasibility_margins", json::array()},
      {"feasible", false},
      {"phase_separated", config.lambda.size() > 0 &&
                              config.lambda.IsPhaseSeparated()},
  };
  if (n > 3) {
    out["hamiltonian"] = {{"seed", config.hamiltonian_seed},
                          {"cycle_count", count_hamiltonian_cycles(n)}};
  }
  if (gs.nullity() == 0) {
    out["verdict"] = "non-stop impossible (Fact 1)";
  } else if (n == 2) {
    out["verdict"] = "non-stop impossible (Fact 2)";
  } else {
    if (gs.collinear_anchors()) {
      throw DegenerateGeometry("anchors are collinear");
    }
    const auto margins =
        feasibility_margins(gs, static_wrench(gs.load(), config.gravity));
    const bool feasible =
        std::all_of(margins.begin(), margins.end(),
                    [](double m) { return m > kFeasibilityEpsilon; });
    out["feasibility_margins"] = margins;
    out["feasible"] = feasible;
    out["verdict"] = feasible ? "non-stop possible (Fact 3)"
                              : "non-stop not guaranteed (Fact 3)";
  }
  return out;
}

json plan_command(const io::RunConfig& config, const fs::path& out_dir) {
  const auto planner = io::make_planner(config);
  const PlannedTrajectory p =
      plan(*planner, uniform_grid(config.dt, config.duration));
  const NonStopReport report = min_speed(p, config.v_min);
  const PersistenceCheck z = persistent_change_check(p, config.z_min);
  json summary = {
      {"command", "plan"},
      {"n", config.cable_count()},
      {"samples", p.samples.size()},
      {"dt", config.dt},
      {"duration", config.duration},
      {"basis", BasisName(p.basis)},
      {"pairs", io::pairs_json(p.pairs)},
      {"report", io::report_json(report, p.pairs)},
      {"collinearity", io::persistence_json(z)},
      {"pass", Pass(report, z)},
  };
  PrepareOut(out_dir);
  io::write_file_atomic(out_dir / "plan.csv", io::to_csv(io::plan_table(p)));
  WriteJson(out_dir / "plan_summary.json", summary);
  return summary;
}

json simulate_command(const io::RunConfig& config, const fs::path& out_dir) {
  const SimSeries series = run(io::make_sim_config(config));
  const NonStopReport report = min_speed(series, config.v_min);
  std::vector<double> t;
  std::vector<std::vector<double>> zs(config.cable_count());
  for (const auto& r : series.records) {
    t.push_back(r.t);
    for (std::size_t i = 0; i < zs.size(); ++i) zs[i].push_back(r.z[i]);
  }
  const PersistenceCheck z = persistent_change_check(
      summarize_z(std::move(t), std::move(zs)), config.z_min);
  json summary = {
      {"command", "simulate"},
      {"n", config.cable_count()},
      {"samples", series.records.size()},
      {"dt", config.dt},
      {"duration", config.duration},
      {"basis", BasisName(series.basis)},
      {"pairs", io::pairs_json(series.pairs)},
      {"report", io::report_json(report, series.pairs)},
      {"collinearity", io::persistence_json(z)},
      {"pass", Pass(report, z)},
  };
  PrepareOut(out_dir);
  io::write_file_atomic(out_dir / "sim.csv", io::to_csv(io::sim_table(series)));
  WriteJson(out_dir / "sim_summary.json", summary);
  return summary;
}

json verify_command(const fs::path& csv, double v_min, double z_min,
                    const std::optional<io::RunConfig>& config) {
  const io::StoredSeries s = io::parse_series(io::read_csv(csv));
  if (s.view.t.size() < static_cast<std::size_t>(kMinDetectorSamples)) {
    throw ConfigError("series needs at least " +
                      std::to_string(kMinDetectorSamples) + " rows");
  }
  NonStopReport report = nonstop_report(s.view, v_min);
  if (config) {
    if (config->cable_count() != s.cables) {
      throw ConfigError("config and CSV disagree on the cable count");
    }
    PoseError e;
    for (std::size_t k = 0; k < s.view.t.size(); ++k) {
      e.position =
          std::max(e.position, (s.load_position[k] - config->position).norm());
      e.attitude = std::max(e.attitude,
                            geodesic_angle(config->attitude, s.attitude[k]));
    }
    report.pose = e;
  }
  const PersistenceCheck z =
      persistent_change_check(summarize_z(s.view.t, s.z), z_min);
  return {
      {"command", "verify"},
      {"csv", csv.string()},
      {"n", s.cables},
      {"samples", s.view.t.size()},
      {"basis", BasisName(s.basis)},
      {"pairs", io::pairs_json(s.view.pairs)},
      {"report", io::report_json(report, s.view.pairs)},
      {"collinearity", io::persistence_json(z)},
      {"pass", Pass(report, z)},
  };
}

SweepAxis parse_axis(const std::string& spec) {
  static const std::regex kName(
      R"(^(lambda0|amplitude|frequency|phase)[1-9][0-9]*$|^(load_mass|cable_length|cable_stiffness)$)");
  const auto eq = spec.find('=');
  if (eq == std::string::npos) {
    throw ConfigError("malformed sweep axis '" + spec + "'");
  }
  SweepAxis axis;
  axis.name = spec.substr(0, eq);
  if (!std::regex_match(axis.name, kName)) {
    throw ConfigError("unknown sweep variable '" + axis.name + "'");
  }
  const std::string range = spec.substr(eq + 1);
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    const auto colon = range.find(':', start);
    parts.push_back(range.substr(start, colon - start));
    if (colon == std::string::npos) break;
    start = colon + 1;
  }
  if (parts.size() == 1) {
    axis.values.push_back(ParseNumber(parts[0], spec));
    return axis;
  }
  if (parts.size() != 3) {
    throw ConfigError("malformed sweep axis '" + spec + "'");
  }
  const double lo = ParseNumber(parts[0], spec);
  const double step = ParseNumber(parts[1], spec);
  const double hi = ParseNumber(parts[2], spec);
  if (!(step > 0.0)) throw ConfigError("sweep step must be positive");
  if (hi < lo) throw ConfigError("sweep axis '" + spec + "' is empty");
  const double count = std::floor((hi - lo) / step + 1e-9) + 1.0;
  if (count > static_cast<double>(kMaxSweepPoints)) {
    throw ConfigError("sweep axis '" + spec + "' has too many points");
  }
  for (std::size_t k = 0; k < static_cast<std::size_t>(count); ++k) {
    axis.values.push_back(lo + static_cast<double>(k) * step);
  }
  return axis;
}

void apply_axis(io::RunConfig& config, const std::string& name,
                double value) {
  if (name == "load_mass") {
    config.load.mass = value;
    return;
  }
  if (name == "cable_length" || name == "cable_stiffness") {
    for (auto& c : config.cables) {
      (name == "cable_length" ? c.length : c.stiffness) = value;
    }
    return;
  }
  const std::size_t digit = name.rfind("lambda0", 0) == 0
                                ? 7
                                : name.find_first_of("123456789");
  const std::string field = name.substr(0, digit);
  const int k = std::stoi(name.substr(digit)) - 1;
  VectorXd& v = LambdaField(config, field);
  if (k >= v.size()) {
    throw ConfigError("sweep variable '" + name + "' exceeds " +
                      std::to_string(v.size()) + " components");
  }
  v(k) = value;
}

std::vector<SweepRow> sweep(const io::RunConfig& config,
                            const std::vector<SweepAxis>& axes, int threads) {
  if (axes.empty() || axes.size() > 2) {
    throw ConfigError("sweep takes one or two --vary axes");
  }
  std::size_t total = 1;
  for (const auto& a : axes) {
    if (a.values.empty()) throw ConfigError("sweep axis " + a.name + " is empty");
    total *= a.values.size();
  }
  if (total > kMaxSweepPoints) throw ConfigError("sweep grid too large");
  // Surface bad names before any work starts.
  {
    io::RunConfig probe = config;
    for (const auto& a : axes) apply_axis(probe, a.name, a.values.front());
  }

  std::vector<SweepRow> rows(total);
  std::atomic<std::size_t> next{0};
  const auto worker = [&] {
    for (std::size_t i = next++; i < total; i = next++) {
      std::vector<double> values;
      std::size_t rest = i;
      std::size_t stride = total;
      for (const auto& a : axes) {
        stride /= a.values.size();
        values.push_back(a.values[rest / stride]);
        rest %= stride;
      }
      rows[i] = EvaluatePoint(config, axes, values);
    }
  };
  const int count = std::max(1, std::min<int>(threads, static_cast<int>(total)));
  std::vector<std::thread> pool;
  for (int w = 1; w < count; ++w) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  return rows;
}

std::string sweep_csv(const std::vector<SweepAxis>& axes,
                      const std::vector<SweepRow>& rows) {
  std::string out;
  for (const auto& a : axes) out += a.name + ",";
  out +=
      "status,min_speed,slowest_carrier,min_tension,min_z,case1,case2,"
      "nonstop,persistent\n";
  for (const auto& r : rows) {
    for (double v : r.values) out += io::format_double(v) + ",";
    out += r.status + "," + io::format_double(r.min_speed) + "," +
           std::to_string(r.slowest_carrier) + "," +
           io::format_double(r.min_tension) + "," +
           io::format_double(r.min_z) + "," + (r.case1 ? "1" : "0") + "," +
           (r.case2 ? "1" : "0") + "," + (r.nonstop ? "1" : "0") + "," +
           (r.persistent ? "1" : "0") + "\n";
  }
  return out;
}

int run_cli(int argc, const char* const* argv, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"Plan, verify and simulate non-stop carrier trajectories that "
               "hold a cable-suspended load still."};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir = ".";
  std::string csv_path;
  std::optional<double> dt;
  std::optional<double> duration;
  std::optional<double> v_min;
  std::optional<double> z_min;
  std::vector<std::string> vary;
  int threads = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));

  auto* analyze_cmd = app.add_subcommand("analyze", "Grasp rank, nullspace and feasibility");
  auto* plan_cmd = app.add_subcommand("plan", "Generate the carrier trajectories");
  auto* sim_cmd = app.add_subcommand("simulate", "Closed-loop simulation");
  auto* verify_cmd = app.add_subcommand("verify", "Re-check a stored series");
  auto* sweep_cmd = app.add_subcommand("sweep", "Plan over a parameter grid");

  for (auto* cmd : {analyze_cmd, plan_cmd, sim_cmd, sweep_cmd}) {
    cmd->add_option("--config", config_path, "Run configuration (JSON)")
        ->required();
  }
  verify_cmd->add_option("--config", config_path, "Run configuration (JSON)");
  for (auto* cmd : {analyze_cmd, plan_cmd, sim_cmd, verify_cmd, sweep_cmd}) {
    cmd->add_option("--out", out_dir, "Output directory");
  }
  for (auto* cmd : {plan_cmd, sim_cmd, sweep_cmd}) {
    cmd->add_option("--dt", dt, "Time step [s]");
    cmd->add_option("--duration", duration, "Horizon [s]");
  }
  for (auto* cmd : {plan_cmd, sim_cmd, verify_cmd, sweep_cmd}) {
    cmd->add_option("--v-min", v_min, "Carrier speed floor [m/s]");
  }
  verify_cmd->add_option("--csv", csv_path, "Series CSV")->required();
  verify_cmd->add_option("--z-min", z_min, "Collinearity threshold");
  sweep_cmd->add_option("--vary", vary, "NAME=START:STEP:STOP")->required();
  sweep_cmd->add_option("--threads", threads, "Worker threads");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitConfig;
  }

  const bool out_given = app.get_subcommand("verify")->count("--out") > 0 ||
                         app.get_subcommand("analyze")->count("--out") > 0;
  try {
    if (analyze_cmd->parsed()) {
      const json report = analyze(io::load_run_config(config_path));
      if (out_given) WriteJson(PrepareOut(out_dir) / "analyze.json", report);
      out << report.dump(2) << "\n";
    } else if (plan_cmd->parsed()) {
      const auto c = LoadWithOverrides(config_path, dt, duration, v_min);
      out << plan_command(c, out_dir).dump(2) << "\n";
    } else if (sim_cmd->parsed()) {
      const auto c = LoadWithOverrides(config_path, dt, duration, v_min);
      out << simulate_command(c, out_dir).dump(2) << "\n";
    } else if (verify_cmd->parsed()) {
      std::optional<io::RunConfig> c;
      if (!config_path.empty()) c = io::load_run_config(config_path);
      const double vm = v_min ? *v_min : (c ? c->v_min : io::RunConfig{}.v_min);
      const double zm = z_min ? *z_min : (c ? c->z_min : io::RunConfig{}.z_min);
      const json report = verify_command(csv_path, vm, zm, c);
      if (out_given) WriteJson(PrepareOut(out_dir) / "verify.json", report);
      out << report.dump(2) << "\n";
    } else if (sweep_cmd->parsed()) {
      std::vector<SweepAxis> axes;
      for (const auto& v : vary) axes.push_back(parse_axis(v));
      const auto c = LoadWithOverrides(config_path, dt, duration, v_min);
      const std::string table = sweep_csv(axes, sweep(c, axes, threads));
      if (sweep_cmd->count("--out") > 0) {
        io::write_file_atomic(PrepareOut(out_dir) / "sweep.csv", table);
      } else {
        out << table;
      }
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return exit_code_for_current_exception();
  }
  return kExitOk;
}

}  // namespace slingloiter::cli
