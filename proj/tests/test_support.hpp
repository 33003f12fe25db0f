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

// Fixtures shared by the unit and acceptance tests.

#ifndef SLINGLOITER_TESTS_TEST_SUPPORT_HPP_
#define SLINGLOITER_TESTS_TEST_SUPPORT_HPP_

#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "slingloiter/geometry.hpp"
#include "slingloiter/grasp.hpp"
#include "slingloiter/planner.hpp"

namespace slingloiter::testing {

inline std::filesystem::path SourceDir() { return SLINGLOITER_SOURCE_DIR; }

inline std::filesystem::path ConfigPath(const std::string& name) {
  return SourceDir() / "configs" / (name + ".json");
}

// The three-anchor load used throughout: 1 kg, 0.01 kg m^2, friction 0.1.
inline LoadModel ReferenceLoad3() {
  LoadModel load;
  load.mass = 1.0;
  load.inertia = 0.01 * Mat3::Identity();
  load.anchors = {{0.259, 0.034, 0.399},
                  {-0.156, 0.269, 0.556},
                  {-0.1223, -0.1399, 0.1778}};
  load.linear_friction = 0.1;
  load.angular_friction = 0.1;
  return load;
}

inline LoadModel TwoAnchorLoad() {
  LoadModel load = ReferenceLoad3();
  load.anchors = {{0.5, 0.0, 0.0}, {-0.5, 0.0, 0.0}};
  return load;
}

inline LambdaTrajectory Cosine(std::vector<double> l0, std::vector<double> a,
                               std::vector<double> psi,
                               std::vector<double> phi) {
  const auto v = [](const std::vector<double>& x) {
    return VectorXd(Eigen::Map<const VectorXd>(
        x.data(), static_cast<Eigen::Index>(x.size())));
  };
  LambdaTrajectory t;
  t.initial = v(l0);
  t.amplitude = v(a);
  t.frequency = v(psi);
  t.phase = v(phi);
  return t;
}

// lambda0 = 2, A = 1.2, psi = 2, phases {0, 0.7, 1.7}.
inline LambdaTrajectory Fact3Trajectory() {
  return Cosine({2, 2, 2}, {1.2, 1.2, 1.2}, {2, 2, 2}, {0, 0.7, 1.7});
}

inline LambdaTrajectory Case1Trajectory() {
  return Cosine({2, 2, 2}, {1, 1, 1}, {1, 1, 1}, {0, 0.7, 0});
}

inline LambdaTrajectory Case2Trajectory() {
  return Cosine({2, 2, 2}, {1.2, 1.2, 1.2}, {1, 0.5, 1}, {0, 0, 0.7});
}

inline std::vector<CableModel> Cables(int n) {
  return std::vector<CableModel>(static_cast<std::size_t>(n), CableModel{});
}

inline GraspSystem ReferenceGrasp3() {
  return GraspSystem::Build(ReferenceLoad3(), Rotation::Identity(),
                            Vec3::Zero(), default_pairs(3));
}

inline Vec3 RandomVec(std::mt19937_64& rng, double scale = 1.0) {
  std::uniform_real_distribution<double> u(-scale, scale);
  return {u(rng), u(rng), u(rng)};
}

inline Rotation RandomRotation(std::mt19937_64& rng) {
  return so3_exp(RandomVec(rng, 3.0));
}

// Anchors spread over a box; rejects near-collinear triples so every
// Hamiltonian triangle has a well-defined plane.
inline LoadModel RandomLoad(std::mt19937_64& rng, int n) {
  LoadModel load;
  load.mass = std::uniform_real_distribution<double>(0.5, 3.0)(rng);
  load.inertia = 0.02 * Mat3::Identity();
  while (true) {
    load.anchors.clear();
    for (int i = 0; i < n; ++i) load.anchors.push_back(RandomVec(rng, 0.5));
    bool ok = true;
    for (int i = 0; i < n && ok; ++i) {
      for (int j = i + 1; j < n && ok; ++j) {
        ok = (load.anchors[i] - load.anchors[j]).norm() > 0.05;
        for (int k = j + 1; k < n && ok; ++k) {
          ok = (load.anchors[j] - load.anchors[i])
                   .cross(load.anchors[k] - load.anchors[i])
                   .norm() > 1e-3;
        }
      }
    }
    if (ok) return load;
  }
}

}  // namespace slingloiter::testing

#endif  // SLINGLOITER_TESTS_TEST_SUPPORT_HPP_
