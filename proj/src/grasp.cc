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

#include "slingloiter/grasp.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <utility>

#include "slingloiter/errors.hpp"

namespace slingloiter {
namespace {

using Svd = Eigen::JacobiSVD<MatrixXd>;

int RankFromSingularValues(const VectorXd& sv) {
  if (sv.size() == 0 || sv(0) <= 0.0) return 0;
  const double cutoff = sv(0) * kRankCutoff;
  int r = 0;
  for (Eigen::Index k = 0; k < sv.size(); ++k) {
    if (sv(k) > cutoff) ++r;
  }
  return r;
}

}  // namespace

void LoadModel::Validate() const {
  if (!(mass > 0.0) || !std::isfinite(mass)) {
    throw InvalidModel("load mass must be positive");
  }
  if (anchors.empty()) throw InvalidModel("load needs at least one anchor");
  if (!inertia.allFinite() ||
      (inertia - inertia.transpose()).cwiseAbs().maxCoeff() >
          1e-12 * std::max(1.0, inertia.cwiseAbs().maxCoeff())) {
    throw InvalidModel("inertia must be symmetric");
  }
  Eigen::LLT<Mat3> llt(inertia);
  if (llt.info() != Eigen::Success) {
    throw InvalidModel("inertia must be positive definite");
  }
  if (linear_friction < 0.0 || angular_friction < 0.0) {
    throw InvalidModel("friction coefficients must be non-negative");
  }
  for (std::size_t i = 0; i < anchors.size(); ++i) {
    if (!anchors[i].allFinite()) throw InvalidModel("anchor is not finite");
    for (std::size_t j = i + 1; j < anchors.size(); ++j) {
      if (!((anchors[i] - anchors[j]).norm() > kGeometryEpsilon)) {
        throw CoincidentAnchors(static_cast<int>(i), static_cast<int>(j));
      }
    }
  }
}

void ValidatePairs(const PairSet& pairs, int n) {
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    const auto& p = pairs[k];
    if (p.first < 0 || p.second >= n || p.first >= p.second) {
      throw InvalidModel("invalid anchor pair (" + std::to_string(p.first + 1) +
                         "," + std::to_string(p.second + 1) + ")");
    }
    for (std::size_t l = 0; l < k; ++l) {
      if (pairs[l] == p) throw InvalidModel("duplicated anchor pair");
    }
  }
}

PairSet all_pairs(int n) {
  PairSet out;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) out.push_back({i, j});
  }
  return out;
}

PairSet hamiltonian_pairs(int n, std::uint64_t seed) {
  if (n < 3) throw TooFewCables(n);
  // Unrank a permutation of {1..n-1} from the factorial digits of the seed.
  std::vector<int> pool(n - 1);
  std::iota(pool.begin(), pool.end(), 1);
  std::vector<int> digits(n - 1);
  std::uint64_t r = seed;
  for (int base = 1; base <= n - 1; ++base) {
    digits[n - 1 - base] = static_cast<int>(r % base);
    r /= base;
  }
  std::vector<int> order{0};
  for (int d : digits) {
    order.push_back(pool[d]);
    pool.erase(pool.begin() + d);
  }
  // A cycle and its reverse are the same undirected cycle.
  if (order[1] > order.back()) std::reverse(order.begin() + 1, order.end());

  PairSet out;
  for (int k = 0; k < n; ++k) {
    const int a = order[k];
    const int b = order[(k + 1) % n];
    out.push_back({std::min(a, b), std::max(a, b)});
  }
  return out;
}

std::uint64_t count_hamiltonian_cycles(int n) {
  if (n < 3) throw TooFewCables(n);
  if (n > 21) throw std::overflow_error("cycle count exceeds 64 bits");
  std::uint64_t f = 1;
  for (int k = 2; k <= n - 1; ++k) f *= static_cast<std::uint64_t>(k);
  return f / 2;
}

PairSet default_pairs(int n, std::uint64_t seed) {
  if (n <= 1) return {};
  if (n == 2) return {{0, 1}};
  return hamiltonian_pairs(n, seed);
}

MatrixXd build_grasp(const LoadModel& load, const Rotation& attitude) {
  const int n = load.cable_count();
  MatrixXd g = MatrixXd::Zero(6, 3 * n);
  const Mat3 rt = attitude.matrix().transpose();
  for (int i = 0; i < n; ++i) {
    g.block<3, 3>(0, 3 * i) = Mat3::Identity();
    g.block<3, 3>(3, 3 * i) = skew(load.anchors[i]) * rt;
  }
  return g;
}

MatrixXd pseudo_inverse(const MatrixXd& m) {
  if (m.size() == 0) return MatrixXd::Zero(m.cols(), m.rows());
  Svd svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const VectorXd& sv = svd.singularValues();
  const int r = RankFromSingularValues(sv);
  MatrixXd out = MatrixXd::Zero(m.cols(), m.rows());
  for (int k = 0; k < r; ++k) {
    out += svd.matrixV().col(k) * (1.0 / sv(k)) *
           svd.matrixU().col(k).transpose();
  }
  return out;
}

int matrix_rank(const MatrixXd& m) {
  if (m.size() == 0) return 0;
  Svd svd(m);
  return RankFromSingularValues(svd.singularValues());
}

NullspaceBasis nullspace_orthonormal(const MatrixXd& m) {
  NullspaceBasis out;
  const Eigen::Index cols = m.cols();
  if (m.rows() == 0) {
    out.basis = MatrixXd::Identity(cols, cols);
    out.nullity = static_cast<int>(cols);
    return out;
  }
  Svd svd(m, Eigen::ComputeFullV);
  const int r = RankFromSingularValues(svd.singularValues());
  out.nullity = static_cast<int>(cols) - r;
  out.basis = svd.matrixV().rightCols(out.nullity);
  return out;
}

MatrixXd pairwise_nullspace(const LoadModel& load, const Rotation& attitude,
                            const PairSet& pairs) {
  const int n = load.cable_count();
  ValidatePairs(pairs, n);
  MatrixXd out = MatrixXd::Zero(3 * n, static_cast<Eigen::Index>(pairs.size()));
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    const auto [i, j] = pairs[k];
    const Vec3 dir =
        attitude * unit_between(load.anchors[i], load.anchors[j], i, j).vec();
    const auto col = static_cast<Eigen::Index>(k);
    out.block<3, 1>(3 * i, col) = dir;
    out.block<3, 1>(3 * j, col) = -dir;
  }
  return out;
}

bool anchors_collinear(const std::vector<Vec3>& anchors) {
  if (anchors.size() < 3) return true;
  // Line through the two mutually farthest anchors.
  std::size_t a = 0;
  std::size_t b = 1;
  double best = -1.0;
  for (std::size_t i = 0; i < anchors.size(); ++i) {
    for (std::size_t j = i + 1; j < anchors.size(); ++j) {
      const double d = (anchors[i] - anchors[j]).norm();
      if (d > best) {
        best = d;
        a = i;
        b = j;
      }
    }
  }
  if (!(best > kGeometryEpsilon)) return true;
  const Vec3 dir = (anchors[b] - anchors[a]) / best;
  for (const Vec3& p : anchors) {
    if ((p - anchors[a]).cross(dir).norm() > kCollinearTolerance) return false;
  }
  return true;
}

GraspSystem GraspSystem::Build(const LoadModel& load, const Rotation& attitude,
                               const Vec3& position, PairSet pairs) {
  load.Validate();
  ValidatePairs(pairs, load.cable_count());
  GraspSystem gs;
  gs.load_ = load;
  gs.attitude_ = attitude;
  gs.position_ = position;
  gs.pairs_ = std::move(pairs);
  gs.grasp_ = build_grasp(load, attitude);
  gs.grasp_pinv_ = pseudo_inverse(gs.grasp_);
  gs.rank_ = matrix_rank(gs.grasp_);
  auto ns = nullspace_orthonormal(gs.grasp_);
  gs.orthonormal_basis_ = std::move(ns.basis);
  gs.nullity_ = ns.nullity;
  gs.pairwise_basis_ = pairwise_nullspace(load, attitude, gs.pairs_);
  gs.pairwise_rank_ = matrix_rank(gs.pairwise_basis_);
  gs.collinear_ = load.cable_count() >= 3 && anchors_collinear(load.anchors);
  return gs;
}

}  // namespace slingloiter
