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

// Grasp matrix of a cable-suspended rigid body and the bases of its
// nullspace (internal forces).
//
// Cable forces f_i are expressed in the world frame and stacked as
// f = [f_1; ...; f_n]. The wrench W = G f has a world-frame force block and a
// body-frame torque block, so the lower blocks of G are S(b_i) R^T where b_i
// is the body-frame anchor and R the load attitude.
//
// Two nullspace bases are provided:
//  * an orthonormal basis from the SVD of G, and
//  * a "pairwise" basis whose column for the anchor pair (i, j) holds the
//    world-frame unit vector R b_ij in block i and -R b_ij in block j: a pair
//    of equal and opposite forces along the line joining the two anchors.
//
// For n >= 3 the pairwise columns can be restricted to a Hamiltonian cycle of
// the complete graph on the anchors, so that every cable is driven by exactly
// two internal forces.

#ifndef SLINGLOITER_GRASP_HPP_
#define SLINGLOITER_GRASP_HPP_

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "slingloiter/geometry.hpp"

namespace slingloiter {

using Eigen::MatrixXd;
using Eigen::VectorXd;
using Vec6 = Eigen::Matrix<double, 6, 1>;

// Relative singular-value cutoff used for every rank decision.
inline constexpr double kRankCutoff = 1e-12;
// Anchors within this distance (m) of a common line are reported as
// collinear.
inline constexpr double kCollinearTolerance = 1e-6;

struct LoadModel {
  double mass = 1.0;                    // kg
  Mat3 inertia = Mat3::Identity();      // kg m^2, body frame
  std::vector<Vec3> anchors;            // body frame, m
  double linear_friction = 0.0;         // N s / m
  double angular_friction = 0.0;        // N m s / rad

  int cable_count() const { return static_cast<int>(anchors.size()); }

  // Throws InvalidModel or CoincidentAnchors.
  void Validate() const;
};

// Zero-based anchor indices with first < second.
struct AnchorPair {
  int first;
  int second;
  friend bool operator==(const AnchorPair&, const AnchorPair&) = default;
};

using PairSet = std::vector<AnchorPair>;

// Throws InvalidModel on out-of-range, unordered or duplicated pairs.
void ValidatePairs(const PairSet& pairs, int n);

// Every pair in lexicographic order (1,2),(1,3),...,(n-1,n).
PairSet all_pairs(int n);

// One Hamiltonian cycle on vertices 0..n-1, listed in traversal order
// (v0,v1),(v1,v2),...,(v_{n-1},v0), each pair normalised to first < second.
// The seed picks the cycle deterministically: it is read as a rank in the
// factorial number system over permutations of {1..n-1}. Seed 0 gives the
// cycle 0-1-2-...-(n-1). Throws TooFewCables for n < 3.
PairSet hamiltonian_pairs(int n, std::uint64_t seed = 0);

// (n-1)!/2. Throws TooFewCables for n < 3, std::overflow_error for n > 21.
std::uint64_t count_hamiltonian_cycles(int n);

// The pairs the planner uses by default: none for n = 1, {(1,2)} for n = 2,
// hamiltonian_pairs(n, seed) otherwise.
PairSet default_pairs(int n, std::uint64_t seed = 0);

MatrixXd build_grasp(const LoadModel& load, const Rotation& attitude);

// SVD based, singular values below sigma_max * kRankCutoff are dropped.
MatrixXd pseudo_inverse(const MatrixXd& m);

int matrix_rank(const MatrixXd& m);

struct NullspaceBasis {
  MatrixXd basis;  // rows x nullity, orthonormal columns
  int nullity = 0;
};

NullspaceBasis nullspace_orthonormal(const MatrixXd& m);

// 3n x pairs.size() matrix of pairwise internal-force directions in the world
// frame.
MatrixXd pairwise_nullspace(const LoadModel& load, const Rotation& attitude,
                            const PairSet& pairs);

// True when all anchors lie within kCollinearTolerance of one line. A single
// anchor and two anchors are trivially collinear.
bool anchors_collinear(const std::vector<Vec3>& anchors);

// Immutable grasp data at a fixed equilibrium pose.
class GraspSystem {
 public:
  // Validates the load and the pair set; throws InvalidModel,
  // CoincidentAnchors.
  static GraspSystem Build(const LoadModel& load, const Rotation& attitude,
                           const Vec3& position, PairSet pairs);

  const LoadModel& load() const { return load_; }
  int cable_count() const { return load_.cable_count(); }
  const Rotation& attitude() const { return attitude_; }
  const Vec3& position() const { return position_; }
  const PairSet& pairs() const { return pairs_; }

  const MatrixXd& grasp() const { return grasp_; }
  const MatrixXd& grasp_pinv() const { return grasp_pinv_; }
  const MatrixXd& pairwise_basis() const { return pairwise_basis_; }
  const MatrixXd& orthonormal_basis() const { return orthonormal_basis_; }

  int rank() const { return rank_; }
  int nullity() const { return nullity_; }
  // Rank of the selected pairwise columns.
  int pairwise_rank() const { return pairwise_rank_; }
  bool collinear_anchors() const { return collinear_; }

 private:
  GraspSystem() = default;

  LoadModel load_;
  Rotation attitude_;
  Vec3 position_ = Vec3::Zero();
  PairSet pairs_;
  MatrixXd grasp_;
  MatrixXd grasp_pinv_;
  MatrixXd pairwise_basis_;
  MatrixXd orthonormal_basis_;
  int rank_ = 0;
  int nullity_ = 0;
  int pairwise_rank_ = 0;
  bool collinear_ = false;
};

}  // namespace slingloiter

#endif  // SLINGLOITER_GRASP_HPP_
