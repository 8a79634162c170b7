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

#include "cutlab/experiments.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <map>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

#include "cutlab/error.hpp"
#include "cutlab/rng.hpp"
#include "cutlab/sensitivity.hpp"

namespace cutlab {
namespace {

std::string Fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

// Shortest round-trip decimal; enough for plotting, stable across runs.
std::string Decimal(const Rational& r) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", ToDouble(r));
  return buf;
}

std::pair<double, double> MeanSd(const std::vector<double>& xs) {
  if (xs.empty()) return {0, 0};
  double mean = 0;
  for (double x : xs) mean += x;
  mean /= static_cast<double>(xs.size());
  if (xs.size() < 2) return {mean, 0};
  double ss = 0;
  for (double x : xs) ss += (x - mean) * (x - mean);
  return {mean, std::sqrt(ss / static_cast<double>(xs.size() - 1))};
}

}  // namespace

void ParallelFor(std::size_t count, int threads, const std::function<void(std::size_t)>& fn) {
  const std::size_t workers =
      std::min<std::size_t>(count, static_cast<std::size_t>(std::max(1, threads)));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mu;
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i; (i = next++) < count;) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard lock(failure_mu);
          if (!failure) failure = std::current_exception();
          next = count;
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

std::uint64_t StableHash(std::string_view text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return h;
}

// ---------------------------------------------------------------------------
// mu sweep

std::size_t SweepInstance::DistinctSelections() const {
  return std::set<std::vector<std::size_t>>(selections.begin(), selections.end()).size();
}

std::size_t SweepInstance::DistinctSizes() const {
  return std::set<std::size_t>(sizes.begin(), sizes.end()).size();
}

std::vector<Rational> MuGrid(const Rational& step) {
  if (step <= 0 || step > 1) {
    throw Error(ErrorKind::kInvalidArgument, "mu step must lie in (0, 1]");
  }
  std::vector<Rational> grid;
  for (Rational mu = 0; mu <= 1; mu += step) grid.push_back(mu);
  if (grid.back() != 1) grid.push_back(1);
  return grid;
}

std::string SweepResult::Csv() const {
  std::string out = "mu,mean_tree_size,sd,n_samples\n";
  for (const SweepRow& r : rows) {
    out += Decimal(r.mu) + "," + Fixed(r.mean_tree_size, 6) + "," + Fixed(r.sd, 6) + "," +
           std::to_string(r.n_samples) + "\n";
  }
  return out;
}

SweepResult MuSweep(const SweepConfig& config) {
  if (config.samples < 1) throw Error(ErrorKind::kInvalidArgument, "samples must be >= 1");
  const std::vector<Rational> grid = MuGrid(config.mu_step);
  SweepResult result;
  result.instances.resize(static_cast<std::size_t>(config.samples));

  ParallelFor(result.instances.size(), config.threads, [&](std::size_t i) {
    SweepInstance& inst = result.instances[i];
    inst.seed = DeriveSeed(config.seed, i);
    const IPInstance ip = Sample(config.distribution, inst.seed);
    const RootPool pool = BuildRootPool(ip);
    inst.pool_size = pool.cuts.size();
    std::vector<ScoredCut> scored;
    if (pool.lp_optimal) scored = ScoreCuts(pool.cuts, ip.objective, pool.x_lp);

    // Neighbouring mu values mostly pick the same cuts; solve each set once.
    std::map<std::vector<std::size_t>, std::pair<std::size_t, bool>> solved;
    for (const Rational& mu : grid) {
      std::vector<std::size_t> pick =
          SelectCutIndices(scored, ToDouble(mu), config.cuts_per_instance);
      std::sort(pick.begin(), pick.end());
      auto it = solved.find(pick);
      if (it == solved.end()) {
        std::vector<CutPlane> cuts;
        for (std::size_t k : pick) cuts.push_back(pool.cuts[k]);
        const BCTree tree = BranchAndCut(ip, cuts, config.bc);
        it = solved.emplace(pick, std::make_pair(tree.size(), tree.capped)).first;
      }
      inst.selections.push_back(pick);
      inst.sizes.push_back(it->second.first);
      inst.capped.push_back(it->second.second);
    }
  });

  for (std::size_t g = 0; g < grid.size(); ++g) {
    std::vector<double> sizes;
    for (const SweepInstance& inst : result.instances) {
      sizes.push_back(static_cast<double>(inst.sizes[g]));
    }
    const auto [mean, sd] = MeanSd(sizes);
    result.rows.push_back({grid[g], mean, sd, config.samples});
  }
  return result;
}

// ---------------------------------------------------------------------------
// scans

std::vector<std::string> ScanReport::Fingerprints() const {
  std::vector<std::string> ids;
  auto note = [&](const std::string& f) {
    if (std::find(ids.begin(), ids.end(), f) == ids.end()) ids.push_back(f);
  };
  for (const auto& [t, f] : samples) note(f);
  for (const std::string& f : intervals) note(f);
  return ids;
}

std::string ScanReport::Csv() const {
  const std::vector<std::string> ids = Fingerprints();
  std::string out = "t,fingerprint_id\n";
  for (const auto& [t, f] : samples) {
    const auto id = std::find(ids.begin(), ids.end(), f) - ids.begin();
    out += Decimal(t) + "," + std::to_string(id) + "\n";
  }
  return out;
}

std::string ScanReport::SidecarCsv() const {
  std::string out = "fingerprint_id,fingerprint_hash\n";
  const std::vector<std::string> ids = Fingerprints();
  for (std::size_t k = 0; k < ids.size(); ++k) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%016llx",
                  static_cast<unsigned long long>(StableHash(ids[k])));
    out += std::to_string(k) + "," + buf + "\n";
  }
  return out;
}

const std::string& ScanReport::IntervalAt(const Rational& t) const {
  const auto k = std::upper_bound(breakpoints.begin(), breakpoints.end(), t) -
                 breakpoints.begin();
  return intervals[static_cast<std::size_t>(k)];
}

ScanReport ScanLine(const Rational& lo, const Rational& hi, int resolution,
                    const std::function<std::string(const Rational&)>& f,
                    const ScanConfig& config) {
  if (resolution < 2 || hi <= lo) {
    throw Error(ErrorKind::kInvalidArgument, "scan needs lo < hi and resolution >= 2");
  }
  ScanReport report;
  report.lo = lo;
  report.hi = hi;
  std::map<Rational, std::string> seen;
  auto eval = [&](const Rational& t) -> const std::string& {
    auto it = seen.find(t);
    if (it == seen.end()) it = seen.emplace(t, f(t)).first;
    return it->second;
  };

  Rational width = hi - lo;
  for (int k = 0; k < config.bisection_depth; ++k) width /= 2;

  struct Cross {
    Rational at;
    std::string right;
  };
  std::vector<Cross> crossings;
  // Depth-first, left half first, so crossings come out in increasing order.
  std::function<void(const Rational&, const std::string&, const Rational&,
                     const std::string&)>
      refine = [&](const Rational& a, const std::string& fa, const Rational& b,
                   const std::string& fb) {
        if (report.exceeded) return;
        if (b - a <= width) {
          crossings.push_back({(a + b) / 2, fb});
          if (crossings.size() > config.max_breakpoints) report.exceeded = true;
          return;
        }
        const Rational m = (a + b) / 2;
        const std::string fm = eval(m);
        if (fm != fa) refine(a, fa, m, fm);
        if (fm != fb) refine(m, fm, b, fb);
      };

  const Rational step = (hi - lo) / (resolution - 1);
  Rational prev_t = lo;
  std::string prev_f = eval(lo);
  report.intervals.push_back(prev_f);
  for (int k = 1; k < resolution && !report.exceeded; ++k) {
    const Rational t = k == resolution - 1 ? hi : lo + step * k;
    const std::string ft = eval(t);
    if (ft != prev_f) refine(prev_t, prev_f, t, ft);
    prev_t = t;
    prev_f = ft;
  }
  for (Cross& c : crossings) {
    report.breakpoints.push_back(c.at);
    report.intervals.push_back(std::move(c.right));
  }
  report.samples.assign(seen.begin(), seen.end());
  return report;
}

ScanReport LineScan(const IPInstance& ip, const RVector& alpha, const Rational& lo,
                    const Rational& hi, int resolution, const ScanConfig& config) {
  if (alpha.size() != ip.objective.size()) {
    throw Error(ErrorKind::kDimensionMismatch, "alpha has the wrong length");
  }
  // Validity only depends on max alpha·x over the integer points.
  std::optional<Rational> best;
  for (const RVector& x : EnumerateIntegerPoints(ip)) {
    const Rational v = Dot(alpha, x);
    if (!best || v > *best) best = v;
  }
  ScanReport report = ScanLine(
      lo, hi, resolution,
      [&](const Rational& t) {
        if (best && *best > t) return std::string(kInvalidCutFingerprint);
        return Fingerprint(BranchAndCut(ip, {CutPlane{alpha, t}}, config.bc));
      },
      config);
  report.line = "alpha=(" + ToString(alpha, ",") + ") beta in [" + ToString(lo) + "," +
                ToString(hi) + "]";
  return report;
}

std::vector<ScanReport> GmiGridScan(const IPInstance& ip, const RVector& base,
                                    const Rational& U, int resolution,
                                    const ScanConfig& config,
                                    std::optional<Eigen::Index> only_axis) {
  const EqualityForm eq = ToEqualityForm(ip);
  const Eigen::Index m = static_cast<Eigen::Index>(eq.ip.rows.size());
  if (base.size() != m) throw Error(ErrorKind::kDimensionMismatch, "base has the wrong length");
  if (m > 8 || static_cast<long long>(resolution) * m > 10000) {
    throw Error(ErrorKind::kBudgetExceeded, "GMI grid scan limited to 8 rows and 10^4 points");
  }
  if (U <= 0) throw Error(ErrorKind::kInvalidArgument, "U must be positive");
  if (only_axis && (*only_axis < 0 || *only_axis >= m)) {
    throw Error(ErrorKind::kInvalidArgument, "axis out of range");
  }
  std::vector<ScanReport> reports;
  for (Eigen::Index axis = 0; axis < m; ++axis) {
    if (only_axis && axis != *only_axis) continue;
    ScanReport r = ScanLine(
        -U, U, resolution,
        [&](const Rational& t) {
          RVector u = base;
          u(axis) = t;
          try {
            return Fingerprint(BranchAndCut(ip, {GmiCut(eq, u)}, config.bc));
          } catch (const Error& e) {
            if (e.kind() != ErrorKind::kDegenerateCut) throw;
            return std::string(kDegenerateCutFingerprint);
          }
        },
        config);
    r.line = "u" + std::to_string(axis + 1) + " through (" + ToString(base, ",") + ")";
    reports.push_back(std::move(r));
  }
  return reports;
}

std::string_view BreakpointCauseName(BreakpointCause c) {
  switch (c) {
    case BreakpointCause::kLpArrangement: return "lp-arrangement";
    case BreakpointCause::kValidity: return "validity";
    case BreakpointCause::kBoundComparison: return "bound-comparison";
    case BreakpointCause::kNodeOrder: return "node-order";
    case BreakpointCause::kIntegrality: return "integrality";
    case BreakpointCause::kBranchingScore: return "branching-score";
    case BreakpointCause::kUnexplained: return "unexplained";
  }
  return "?";
}

namespace {

int Sign(const Rational& r) { return r > 0 ? 1 : r < 0 ? -1 : 0; }

// -1, 0, +1 for a < b, a == b, a > b.
int Compare(const ProductScoreValue& a, const ProductScoreValue& b) {
  return a > b ? 1 : b > a ? -1 : 0;
}

// Node LP with the cut at one end of the bracket.
struct NodeSide {
  LinearProgram lp;
  LpOutcome outcome;
};

}  // namespace

BreakpointCause ExplainBreakpoint(const IPInstance& ip, const RVector& alpha, const Rational& t,
                                  const Rational& radius, const BCConfig& bc) {
  const Rational ends[2] = {t - radius, t + radius};
  const auto points = EnumerateIntegerPoints(ip);
  bool valid[2];
  for (int e = 0; e < 2; ++e) {
    valid[e] = std::all_of(points.begin(), points.end(),
                           [&](const RVector& x) { return Dot(alpha, x) <= ends[e]; });
  }
  if (valid[0] != valid[1]) return BreakpointCause::kValidity;
  if (!valid[0]) return BreakpointCause::kUnexplained;

  std::vector<BCTree> trees;
  for (const Rational& b : ends) trees.push_back(BranchAndCut(ip, {CutPlane{alpha, b}}, bc));
  std::vector<BranchSet> sigmas;
  std::set<std::string> seen;
  for (const BCTree& tree : trees) {
    for (const BCNode& node : tree.nodes) {
      if (seen.insert(ToString(node.sigma)).second) sigmas.push_back(node.sigma);
    }
  }

  const Eigen::Index n = ip.num_vars();
  std::vector<Polynomial> subs;
  for (Eigen::Index j = 0; j < n; ++j) subs.emplace_back(alpha(j));
  subs.push_back(Polynomial::Variable(0));
  for (const BranchSet& sigma : sigmas) {
    const LinearProgram lp = AddConstraints(ip.Relaxation(), BranchRows(sigma, n));
    if (!IsOptimal(Solve(lp))) continue;
    for (const auto& surface : BuildArrangement(lp).surfaces) {
      const Polynomial q = surface.poly.Substitute(subs);
      if (!q.IsZero() && HasRootIn(q, ends[0], ends[1])) return BreakpointCause::kLpArrangement;
    }
  }

  // side[k][e]: node k's LP with the cut at ends[e].
  std::vector<std::array<NodeSide, 2>> side(sigmas.size());
  for (std::size_t k = 0; k < sigmas.size(); ++k) {
    for (int e = 0; e < 2; ++e) {
      side[k][e].lp = AddConstraints(ip.Relaxation(), {CutPlane{alpha, ends[e]}.AsConstraint()});
      side[k][e].lp = AddConstraints(side[k][e].lp, BranchRows(sigmas[k], n));
      side[k][e].outcome = Solve(side[k][e].lp);
    }
  }
  auto value = [&](std::size_t k, int e) -> const Rational* {
    const auto* opt = std::get_if<LpOptimal>(&side[k][e].outcome);
    return opt ? &opt->value : nullptr;
  };

  std::set<Rational> incumbents;
  for (const BCTree& tree : trees) {
    for (const auto& [node, v] : tree.incumbent_trace) incumbents.insert(v);
  }
  for (std::size_t k = 0; k < sigmas.size(); ++k) {
    const Rational *lo = value(k, 0), *hi = value(k, 1);
    if (!lo || !hi) continue;
    for (const Rational& inc : incumbents) {
      if (Sign(*lo - inc) != Sign(*hi - inc)) return BreakpointCause::kBoundComparison;
    }
  }
  for (std::size_t a = 0; a < sigmas.size(); ++a) {
    for (std::size_t b = a + 1; b < sigmas.size(); ++b) {
      const Rational *a0 = value(a, 0), *a1 = value(a, 1), *b0 = value(b, 0), *b1 = value(b, 1);
      if (a0 && a1 && b0 && b1 && Sign(*a0 - *b0) != Sign(*a1 - *b1)) {
        return BreakpointCause::kNodeOrder;
      }
    }
  }
  for (std::size_t k = 0; k < sigmas.size(); ++k) {
    if (!value(k, 0) || !value(k, 1)) continue;
    const RVector& x0 = std::get<LpOptimal>(side[k][0].outcome).vertex;
    const RVector& x1 = std::get<LpOptimal>(side[k][1].outcome).vertex;
    for (Eigen::Index j = 0; j < n; ++j) {
      if (IsInteger(x0(j)) != IsInteger(x1(j)) || Floor(x0(j)) != Floor(x1(j))) {
        return BreakpointCause::kIntegrality;
      }
    }
  }
  for (std::size_t k = 0; k < sigmas.size(); ++k) {
    if (!value(k, 0) || !value(k, 1)) continue;
    std::vector<Eigen::Index> fractional;
    const RVector& x0 = std::get<LpOptimal>(side[k][0].outcome).vertex;
    for (Eigen::Index j = 0; j < n; ++j) {
      if (!IsInteger(x0(j))) fractional.push_back(j);
    }
    std::vector<std::array<ProductScoreValue, 2>> scores;
    for (Eigen::Index j : fractional) {
      std::array<ProductScoreValue, 2> s;
      for (int e = 0; e < 2; ++e) {
        s[e] = ProductScore(side[k][e].lp, std::get<LpOptimal>(side[k][e].outcome), j, bc.gamma);
      }
      scores.push_back(s);
    }
    for (std::size_t a = 0; a < scores.size(); ++a) {
      for (std::size_t b = a + 1; b < scores.size(); ++b) {
        if (Compare(scores[a][0], scores[b][0]) != Compare(scores[a][1], scores[b][1])) {
          return BreakpointCause::kBranchingScore;
        }
      }
    }
  }
  return BreakpointCause::kUnexplained;
}

// ---------------------------------------------------------------------------
// generalization gap

std::size_t GmiTreeSize(const IPInstance& ip, const RVector& u, const BCConfig& bc) {
  const EqualityForm eq = ToEqualityForm(ip);
  std::vector<CutPlane> cuts;
  try {
    cuts.push_back(GmiCut(eq, u));
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::kDegenerateCut) throw;
  }
  return BranchAndCut(ip, cuts, bc).size();
}

std::string GapReport::Csv() const {
  std::string out = "n,mean_gap,q90_gap\n";
  for (const GapRow& r : rows) {
    out += std::to_string(r.n) + "," + Fixed(r.mean_gap, 6) + "," + Fixed(r.q90_gap, 6) + "\n";
  }
  return out;
}

GapReport GeneralizationGap(const GapConfig& config) {
  if (config.u_grid.empty() || config.n_schedule.empty() || config.repetitions < 1) {
    throw Error(ErrorKind::kInvalidArgument, "gap needs a u grid, sizes and repetitions");
  }
  const int max_n = *std::max_element(config.n_schedule.begin(), config.n_schedule.end());
  if (max_n < 1) throw Error(ErrorKind::kInvalidArgument, "sample sizes must be positive");
  const int holdout = config.holdout > 0 ? config.holdout : 10 * max_n;
  const std::size_t nu = config.u_grid.size();

  // Mean tree size per u over the first `count` instances of a stream.
  std::map<std::uint64_t, std::vector<double>> sizes_by_seed;
  std::mutex mu;
  auto sizes_for = [&](std::uint64_t stream, int count) {
    std::vector<std::uint64_t> seeds;
    for (int i = 0; i < count; ++i) seeds.push_back(DeriveSeed(stream, static_cast<std::uint64_t>(i)));
    std::vector<std::vector<double>> rows(seeds.size());
    ParallelFor(seeds.size(), config.threads, [&](std::size_t i) {
      {
        std::lock_guard lock(mu);
        if (auto it = sizes_by_seed.find(seeds[i]); it != sizes_by_seed.end()) {
          rows[i] = it->second;
          return;
        }
      }
      const IPInstance ip = Sample(config.distribution, seeds[i]);
      std::vector<double> s;
      for (const RVector& u : config.u_grid) {
        s.push_back(static_cast<double>(GmiTreeSize(ip, u, config.bc)));
      }
      std::lock_guard lock(mu);
      sizes_by_seed.emplace(seeds[i], s);
      rows[i] = std::move(s);
    });
    std::vector<double> mean(nu, 0.0);
    for (const auto& r : rows) {
      for (std::size_t k = 0; k < nu; ++k) mean[k] += r[k];
    }
    for (double& v : mean) v /= count;
    return mean;
  };

  GapReport report;
  report.reference =
      sizes_for(config.holdout_stream.value_or(DeriveSeed(config.seed, 0)), holdout);
  for (int n : config.n_schedule) {
    std::vector<double> gaps;
    for (int r = 0; r < config.repetitions; ++r) {
      const std::vector<double> train =
          sizes_for(DeriveSeed(config.seed, static_cast<std::uint64_t>(r) + 1), n);
      double gap = 0;
      for (std::size_t k = 0; k < nu; ++k) {
        gap = std::max(gap, std::abs(train[k] - report.reference[k]));
      }
      gaps.push_back(gap);
    }
    std::vector<double> sorted = gaps;
    std::sort(sorted.begin(), sorted.end());
    const auto rank = static_cast<std::size_t>(std::ceil(0.9 * static_cast<double>(sorted.size())));
    report.rows.push_back({n, MeanSd(gaps).first, sorted[std::max<std::size_t>(rank, 1) - 1]});
  }
  return report;
}

}  // namespace cutlab
