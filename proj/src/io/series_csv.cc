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

#include "slingloiter/io/series_csv.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <system_error>

#include "slingloiter/collinearity.hpp"
#include "slingloiter/errors.hpp"

namespace slingloiter::io {
namespace {

std::string N(int i) { return std::to_string(i + 1); }

std::vector<std::string> LambdaLabels(const PairSet& pairs, Basis basis,
                                      int components) {
  std::vector<std::string> out;
  for (int k = 0; k < components; ++k) {
    if (basis == Basis::kPairwise) {
      out.push_back(N(pairs.at(k).first) + "_" + N(pairs.at(k).second));
    } else {
      out.push_back(N(k));
    }
  }
  return out;
}

void AppendVec(std::vector<double>& row, const Vec3& v) {
  row.insert(row.end(), {v.x(), v.y(), v.z()});
}

void AppendCarrier(std::vector<double>& row, const Vec3& p, const Vec3& v,
                   double tension) {
  AppendVec(row, p);
  AppendVec(row, v);
  row.push_back(v.norm());
  row.push_back(tension);
}

void AppendLambda(std::vector<double>& row, const VectorXd& lambda,
                  const VectorXd& rate) {
  for (Eigen::Index k = 0; k < lambda.size(); ++k) row.push_back(lambda(k));
  for (Eigen::Index k = 0; k < rate.size(); ++k) row.push_back(rate(k));
}

std::vector<std::string> SplitLine(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream s(line);
  while (std::getline(s, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

double ParseDouble(const std::string& s, std::size_t line) {
  double v = 0.0;
  const char* end = s.data() + s.size();
  const auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc() || ptr != end || !std::isfinite(v)) {
    throw ConfigError("line " + std::to_string(line) + ": bad number '" + s +
                      "'");
  }
  return v;
}

}  // namespace

std::vector<std::string> series_header(int n, const PairSet& pairs,
                                       Basis basis, int components) {
  std::vector<std::string> h = {"t",    "pL_x",  "pL_y", "pL_z",
                                "roll", "pitch", "yaw"};
  for (int i = 0; i < n; ++i) {
    for (const char* c : {"_x", "_y", "_z"}) h.push_back("pR" + N(i) + c);
    for (const char* c : {"_x", "_y", "_z"}) h.push_back("vR" + N(i) + c);
    h.push_back("speed" + N(i));
    h.push_back("T" + N(i));
  }
  const auto labels = LambdaLabels(pairs, basis, components);
  for (const auto& l : labels) h.push_back("lambda_" + l);
  for (const auto& l : labels) h.push_back("dlambda_" + l);
  for (int i = 0; i < n; ++i) h.push_back("z" + N(i));
  return h;
}

Table plan_table(const PlannedTrajectory& plan) {
  Table t;
  if (plan.samples.empty()) throw InvalidModel("empty plan");
  const int n = static_cast<int>(plan.samples.front().cables.size());
  const int m = static_cast<int>(plan.samples.front().lambda.size());
  t.header = series_header(n, plan.pairs, plan.basis, m);
  const Vec3 rpy = plan.attitude.RollPitchYaw();
  for (const auto& s : plan.samples) {
    std::vector<double> row{s.t};
    AppendVec(row, plan.load_position);
    AppendVec(row, rpy);
    for (const auto& c : s.cables) {
      AppendCarrier(row, c.carrier_position, c.carrier_velocity, c.tension);
    }
    AppendLambda(row, s.lambda, s.lambda_rate);
    for (const auto& c : s.cables) row.push_back(z_value(c.force, c.force_rate));
    t.rows.push_back(std::move(row));
  }
  return t;
}

Table sim_table(const SimSeries& series) {
  Table t;
  if (series.records.empty()) throw InvalidModel("empty simulation");
  const auto& first = series.records.front();
  const int n = static_cast<int>(first.carrier_position.size());
  t.header = series_header(n, series.pairs, series.basis,
                           static_cast<int>(first.lambda.size()));
  for (const auto& r : series.records) {
    std::vector<double> row{r.t};
    AppendVec(row, r.load_position);
    AppendVec(row, r.attitude.RollPitchYaw());
    for (int i = 0; i < n; ++i) {
      AppendCarrier(row, r.carrier_position[i], r.carrier_velocity[i],
                    r.tension[i]);
    }
    AppendLambda(row, r.lambda, r.lambda_rate);
    for (double z : r.z) row.push_back(z);
    t.rows.push_back(std::move(row));
  }
  return t;
}

std::string format_double(double v) {
  char buf[64];
  const auto [ptr, ec] =
      std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
  if (ec != std::errc()) throw InvalidModel("cannot format number");
  return std::string(buf, ptr);
}

std::string to_csv(const Table& table) {
  std::string out;
  for (std::size_t i = 0; i < table.header.size(); ++i) {
    if (i) out += ',';
    out += table.header[i];
  }
  out += '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += format_double(row[i]);
    }
    out += '\n';
  }
  return out;
}

Table parse_csv(const std::string& text) {
  if (text.empty()) throw ConfigError("empty CSV");
  if (text.back() != '\n') throw ConfigError("CSV truncated: no final newline");
  Table t;
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    auto cells = SplitLine(line);
    if (lineno == 1) {
      t.header = std::move(cells);
      continue;
    }
    if (cells.size() != t.header.size()) {
      throw ConfigError("line " + std::to_string(lineno) + ": expected " +
                        std::to_string(t.header.size()) + " fields, got " +
                        std::to_string(cells.size()));
    }
    std::vector<double> row;
    row.reserve(cells.size());
    for (const auto& c : cells) row.push_back(ParseDouble(c, lineno));
    t.rows.push_back(std::move(row));
  }
  if (t.rows.empty()) throw ConfigError("CSV has no data rows");
  return t;
}

Table read_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_csv(buf.str());
}

void write_file_atomic(const std::filesystem::path& path,
                       const std::string& content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw ConfigError("cannot write " + tmp.string());
    out << content;
    out.flush();
    if (!out) throw ConfigError("write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

StoredSeries parse_series(const Table& table) {
  const auto& h = table.header;
  int n = 0;
  while (std::find(h.begin(), h.end(), "speed" + N(n)) != h.end()) ++n;
  if (n == 0) throw ConfigError("CSV header has no carrier columns");
  const std::size_t fixed = 7 + 8 * static_cast<std::size_t>(n) + n;
  if (h.size() < fixed || (h.size() - fixed) % 2 != 0) {
    throw ConfigError("CSV header does not match the series schema");
  }
  const int m = static_cast<int>((h.size() - fixed) / 2);

  StoredSeries s;
  s.cables = n;
  PairSet pairs;
  const std::size_t lambda_col = 7 + 8 * static_cast<std::size_t>(n);
  if (m > 0) {
    const std::string& first = h[lambda_col];
    s.basis = first.find('_', 7) == std::string::npos ? Basis::kOrthonormal
                                                      : Basis::kPairwise;
  }
  if (s.basis == Basis::kPairwise) {
    for (int k = 0; k < m; ++k) {
      const std::string& label = h[lambda_col + k];
      int a = 0;
      int b = 0;
      if (std::sscanf(label.c_str(), "lambda_%d_%d", &a, &b) != 2 || a < 1 ||
          b < 1 || a > n || b > n) {
        throw ConfigError("bad lambda column '" + label + "'");
      }
      pairs.push_back({a - 1, b - 1});
    }
  }
  if (series_header(n, pairs, s.basis, m) != h) {
    throw ConfigError("CSV header does not match the series schema");
  }
  s.view.pairs = pairs;

  s.view.speed.assign(n, {});
  s.view.tension.assign(n, {});
  s.z.assign(n, {});
  for (const auto& row : table.rows) {
    s.view.t.push_back(row[0]);
    s.load_position.emplace_back(row[1], row[2], row[3]);
    s.attitude.push_back(Rotation::FromRollPitchYaw(row[4], row[5], row[6]));
    for (int i = 0; i < n; ++i) {
      const std::size_t base = 7 + 8 * static_cast<std::size_t>(i);
      s.view.speed[i].push_back(row[base + 6]);
      s.view.tension[i].push_back(row[base + 7]);
      s.z[i].push_back(row[lambda_col + 2 * m + i]);
    }
    VectorXd rate(m);
    for (int k = 0; k < m; ++k) rate(k) = row[lambda_col + m + k];
    s.view.lambda_rate.push_back(std::move(rate));
  }
  return s;
}

}  // namespace slingloiter::io
