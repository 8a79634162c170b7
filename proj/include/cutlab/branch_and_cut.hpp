// Copyright 2026 The cutlab Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Branch-and-cut with cuts at the root only, product-score branching,
// best-bound node selection and a cap on the number of created nodes.

#ifndef CUTLAB_BRANCH_AND_CUT_HPP_
#define CUTLAB_BRANCH_AND_CUT_HPP_

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "cutlab/cuts.hpp"
#include "cutlab/ip.hpp"
#include "cutlab/lp.hpp"

namespace cutlab {

struct BCConfig {
  std::size_t kappa = 100000;
  Rational gamma = Rational(1, 1000000);
  // Never fathom by bound; every non-integral feasible node is branched.
  bool suppress_bounding = false;
};

/// x_var <= level (kLe) or x_var >= level (kGe).
struct BranchBound {
  Eigen::Index var = 0;
  Sense sense = Sense::kLe;
  Integer level = 0;

  bool operator==(const BranchBound&) const = default;
};
using BranchSet = std::vector<BranchBound>;

/// Tightest LE and GE per variable, ordered by variable then LE before GE.
BranchSet ReduceBranchSet(const BranchSet& sigma);
/// "{}" or e.g. "x1<=0,x3>=1" (1-based names).
std::string ToString(const BranchSet& sigma);
std::vector<Constraint> BranchRows(const BranchSet& sigma, Eigen::Index n);

enum class NodeStatus {
  kBranched,
  kFathomedInfeasible,
  kFathomedIntegral,
  kFathomedByBound,
  kOpenCapped,
};
std::string_view NodeStatusName(NodeStatus s);

struct BCNode {
  BranchSet sigma;  // reduced
  int depth = 0;
  std::optional<std::size_t> parent;
  LpOutcome lp;
  NodeStatus status = NodeStatus::kOpenCapped;
  std::optional<Eigen::Index> branch_var;
};

struct BCTree {
  std::vector<BCNode> nodes;         // creation order; children of a node are adjacent
  std::vector<std::size_t> order;    // processing order (capped nodes excluded)
  // (node, max-form LP objective) at each strict incumbent improvement.
  std::vector<std::pair<std::size_t, Rational>> incumbent_trace;
  bool capped = false;
  std::optional<RVector> optimal;    // meaningful only when !capped
  std::optional<Rational> value;     // optimal's objective in the IP's direction

  std::size_t size() const { return nodes.size(); }
};

/// +infinity when a child LP is infeasible.
struct ProductScoreValue {
  bool infinite = false;
  Rational value = 0;

  bool operator>(const ProductScoreValue& other) const {
    if (infinite != other.infinite) return infinite;
    return !infinite && value > other.value;
  }
};

/// max{z - z_le, gamma} * max{z - z_ge, gamma} for branching on x_i at a node
/// whose LP (sigma already applied as rows) has optimum `opt`. Throws
/// kIntegralCoordinate when opt.vertex(i) is an integer.
ProductScoreValue ProductScore(const LinearProgram& node_lp, const LpOptimal& opt,
                               Eigen::Index i, const Rational& gamma);

BCTree BranchAndCut(const IPInstance& ip, const std::vector<CutPlane>& root_cuts,
                    const BCConfig& config = {});

/// Discrete shape of the tree: one record per node in processing order,
/// then the capped nodes in creation order. LP values are not included.
std::string Fingerprint(const BCTree& tree);

/// One line per node in creation order:
/// "node <i> parent <p> sigma <s> status <tag> [var <x>] [z <p/q>]".
std::string DumpTree(const BCTree& tree);

}  // namespace cutlab

#endif  // CUTLAB_BRANCH_AND_CUT_HPP_
