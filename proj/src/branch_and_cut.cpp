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

#include "cutlab/branch_and_cut.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <sstream>

#include "cutlab/error.hpp"

namespace cutlab {
namespace {

using ChildSolver = std::function<const LpOutcome&(const BranchSet&)>;

BranchSet With(const BranchSet& sigma, BranchBound b) {
  BranchSet out = sigma;
  out.push_back(std::move(b));
  return ReduceBranchSet(out);
}

ProductScoreValue Score(const LpOptimal& opt, const BranchSet& sigma, Eigen::Index i,
                        const Rational& gamma, const ChildSolver& solve) {
  const Rational& v = opt.vertex(i);
  if (IsInteger(v)) {
    throw Error(ErrorKind::kIntegralCoordinate,
                "x" + std::to_string(i + 1) + " is integral at the node optimum");
  }
  ProductScoreValue score{false, 1};
  for (const BranchBound& b : {BranchBound{i, Sense::kLe, Floor(v)},
                               BranchBound{i, Sense::kGe, Ceil(v)}}) {
    const LpOutcome& child = solve(With(sigma, b));
    if (!IsOptimal(child)) {
      // Infeasible child; an unbounded child cannot occur under a bounded parent.
      score.infinite = true;
      continue;
    }
    const Rational drop = opt.value - std::get<LpOptimal>(child).value;
    score.value *= std::max(drop, gamma);
  }
  if (score.infinite) score.value = 0;
  return score;
}

}  // namespace

BranchSet ReduceBranchSet(const BranchSet& sigma) {
  std::map<Eigen::Index, std::pair<std::optional<Integer>, std::optional<Integer>>> tight;
  for (const BranchBound& b : sigma) {
    auto& [le, ge] = tight[b.var];
    if (b.sense == Sense::kLe) {
      if (!le || b.level < *le) le = b.level;
    } else {
      if (!ge || b.level > *ge) ge = b.level;
    }
  }
  BranchSet out;
  for (const auto& [var, bounds] : tight) {
    if (bounds.first) out.push_back({var, Sense::kLe, *bounds.first});
    if (bounds.second) out.push_back({var, Sense::kGe, *bounds.second});
  }
  return out;
}

std::string ToString(const BranchSet& sigma) {
  if (sigma.empty()) return "{}";
  std::string out;
  for (const BranchBound& b : sigma) {
    if (!out.empty()) out += ',';
    out += "x" + std::to_string(b.var + 1) + (b.sense == Sense::kLe ? "<=" : ">=") +
           b.level.str();
  }
  return out;
}

std::vector<Constraint> BranchRows(const BranchSet& sigma, Eigen::Index n) {
  std::vector<Constraint> rows;
  for (const BranchBound& b : sigma) {
    RVector e = ZeroVector(n);
    e(b.var) = 1;
    rows.push_back({e, b.sense, Rational(b.level)});
  }
  return rows;
}

std::string_view NodeStatusName(NodeStatus s) {
  switch (s) {
    case NodeStatus::kBranched: return "branched";
    case NodeStatus::kFathomedInfeasible: return "infeasible";
    case NodeStatus::kFathomedIntegral: return "integral";
    case NodeStatus::kFathomedByBound: return "bound";
    case NodeStatus::kOpenCapped: return "capped";
  }
  return "?";
}

ProductScoreValue ProductScore(const LinearProgram& node_lp, const LpOptimal& opt,
                               Eigen::Index i, const Rational& gamma) {
  LpOutcome last;
  const ChildSolver solve = [&](const BranchSet& child) -> const LpOutcome& {
    // child holds exactly one bound; node_lp already carries the parent's.
    last = Solve(AddConstraints(node_lp, BranchRows(child, node_lp.num_vars())));
    return last;
  };
  return Score(opt, {}, i, gamma, solve);
}

BCTree BranchAndCut(const IPInstance& ip, const std::vector<CutPlane>& root_cuts,
                    const BCConfig& config) {
  if (config.kappa < 1 || config.gamma <= 0) {
    throw Error(ErrorKind::kInvalidArgument, "kappa must be >= 1 and gamma > 0");
  }
  ip.Validate();
  const Eigen::Index n = ip.num_vars();
  std::vector<Constraint> cut_rows;
  for (const CutPlane& cut : root_cuts) {
    if (cut.alpha.size() != n) {
      throw Error(ErrorKind::kDimensionMismatch, "cut length differs from n");
    }
    cut_rows.push_back(cut.AsConstraint());
  }
  const LinearProgram base = AddConstraints(ip.Relaxation(), cut_rows);

  // Every LP is a function of the reduced branch set alone.
  std::map<std::string, LpOutcome> memo;
  const ChildSolver solve = [&](const BranchSet& sigma) -> const LpOutcome& {
    const std::string key = ToString(sigma);
    auto it = memo.find(key);
    if (it == memo.end()) {
      it = memo.emplace(key, Solve(AddConstraints(base, BranchRows(sigma, n)))).first;
    }
    return it->second;
  };

  BCTree tree;
  tree.nodes.push_back({{}, 0, std::nullopt, solve({}), NodeStatus::kOpenCapped, {}});
  if (std::holds_alternative<LpUnbounded>(tree.nodes[0].lp)) {
    throw Error(ErrorKind::kUnboundedRelaxation, "root relaxation is unbounded");
  }
  std::vector<std::size_t> open = {0};
  std::optional<Rational> incumbent;

  // Infeasible nodes carry no bound and are closed first.
  auto better = [&](std::size_t a, std::size_t b) {
    const LpOutcome& la = tree.nodes[a].lp;
    const LpOutcome& lb = tree.nodes[b].lp;
    if (IsOptimal(la) != IsOptimal(lb)) return !IsOptimal(la);
    if (!IsOptimal(la)) return a < b;
    const Rational& za = std::get<LpOptimal>(la).value;
    const Rational& zb = std::get<LpOptimal>(lb).value;
    if (za != zb) return za > zb;
    return a < b;
  };

  while (!open.empty()) {
    const auto pick = std::min_element(open.begin(), open.end(), better);
    const std::size_t id = *pick;
    open.erase(pick);

    // Copies: tree.nodes may reallocate when children are appended.
    const LpOutcome lp = tree.nodes[id].lp;
    if (!IsOptimal(lp)) {
      tree.nodes[id].status = NodeStatus::kFathomedInfeasible;
      tree.order.push_back(id);
      continue;
    }
    const LpOptimal& opt = std::get<LpOptimal>(lp);
    if (IsIntegral(opt.vertex)) {
      if (!incumbent || opt.value > *incumbent) {
        incumbent = opt.value;
        tree.optimal = opt.vertex;
        tree.incumbent_trace.emplace_back(id, opt.value);
      }
      tree.nodes[id].status = NodeStatus::kFathomedIntegral;
      tree.order.push_back(id);
      continue;
    }
    if (!config.suppress_bounding && incumbent && opt.value <= *incumbent) {
      tree.nodes[id].status = NodeStatus::kFathomedByBound;
      tree.order.push_back(id);
      continue;
    }
    if (tree.nodes.size() + 2 > config.kappa) {
      tree.capped = true;
      break;  // this node and the rest of `open` stay OpenCapped
    }

    const BranchSet sigma = tree.nodes[id].sigma;
    Eigen::Index var = -1;
    ProductScoreValue best;
    for (Eigen::Index i = 0; i < n; ++i) {
      if (IsInteger(opt.vertex(i))) continue;
      const ProductScoreValue s = Score(opt, sigma, i, config.gamma, solve);
      if (var < 0 || s > best) {
        var = i;
        best = s;
      }
    }
    tree.nodes[id].status = NodeStatus::kBranched;
    tree.nodes[id].branch_var = var;
    tree.order.push_back(id);
    const int depth = tree.nodes[id].depth + 1;
    const Rational v = opt.vertex(var);
    for (const BranchBound& b : {BranchBound{var, Sense::kLe, Floor(v)},
                                 BranchBound{var, Sense::kGe, Ceil(v)}}) {
      BranchSet child = With(sigma, b);
      const LpOutcome& child_lp = solve(child);
      open.push_back(tree.nodes.size());
      tree.nodes.push_back({std::move(child), depth, id, child_lp,
                            NodeStatus::kOpenCapped, std::nullopt});
    }
  }

  if (tree.optimal) {
    tree.value = ip.Value(*tree.optimal);
  }
  return tree;
}

std::string Fingerprint(const BCTree& tree) {
  std::ostringstream out;
  auto record = [&](const BCNode& node) {
    out << ToString(node.sigma) << ' ' << NodeStatusName(node.status);
    if (node.branch_var) out << " x" << *node.branch_var + 1;
    out << ';';
  };
  for (std::size_t id : tree.order) record(tree.nodes[id]);
  for (const BCNode& node : tree.nodes) {
    if (node.status == NodeStatus::kOpenCapped) record(node);
  }
  return out.str();
}

std::string DumpTree(const BCTree& tree) {
  std::ostringstream out;
  for (std::size_t i = 0; i < tree.nodes.size(); ++i) {
    const BCNode& node = tree.nodes[i];
    out << "node " << i << " parent "
        << (node.parent ? std::to_string(*node.parent) : std::string("-1")) << " sigma "
        << ToString(node.sigma) << " status " << NodeStatusName(node.status);
    if (node.branch_var) out << " var " << *node.branch_var + 1;
    if (IsOptimal(node.lp)) out << " z " << ToString(std::get<LpOptimal>(node.lp).value);
    out << '\n';
  }
  return out.str();
}

}  // namespace cutlab
