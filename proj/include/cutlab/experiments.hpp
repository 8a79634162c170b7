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

// Experiment drivers: the cut-selection mu sweep, scans of the B&C tree along
// lines in cut space and multiplier space, and an empirical generalization
// gap estimate. Every randomized task i of a run seeded with s draws from
// DeriveSeed(s, i), so output does not depend on thread scheduling.

#ifndef CUTLAB_EXPERIMENTS_HPP_
#define CUTLAB_EXPERIMENTS_HPP_

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cutlab/branch_and_cut.hpp"
#include "cutlab/ip.hpp"

namespace cutlab {

/// Runs fn(i) for i in [0, count) on up to `threads` threads.
void ParallelFor(std::size_t count, int threads, const std::function<void(std::size_t)>& fn);

/// Stable 64-bit FNV-1a, for fingerprint ids that survive across builds.
std::uint64_t StableHash(std::string_view text);

// ---------------------------------------------------------------------------
// mu sweep

struct SweepConfig {
  InstanceDistribution distribution = Jeroslow{5};
  int samples = 1;
  Rational mu_step = Rational(1, 100);
  std::size_t cuts_per_instance = 5;
  BCConfig bc;
  std::uint64_t seed = 0;
  int threads = 1;
};

struct SweepInstance {
  std::uint64_t seed = 0;
  std::size_t pool_size = 0;
  // Per grid point: selected pool indices (sorted) and the tree it produced.
  std::vector<std::vector<std::size_t>> selections;
  std::vector<std::size_t> sizes;
  std::vector<bool> capped;

  std::size_t DistinctSelections() const;
  std::size_t DistinctSizes() const;
};

struct SweepRow {
  Rational mu;
  double mean_tree_size = 0;
  double sd = 0;  // sample standard deviation; 0 for a single sample
  int n_samples = 0;
};

struct SweepResult {
  std::vector<SweepRow> rows;
  std::vector<SweepInstance> instances;

  /// "mu,mean_tree_size,sd,n_samples".
  std::string Csv() const;
};

/// 0, step, 2 step, ... up to 1 inclusive.
std::vector<Rational> MuGrid(const Rational& step);

SweepResult MuSweep(const SweepConfig& config);

// ---------------------------------------------------------------------------
// scans

inline constexpr const char* kInvalidCutFingerprint = "INVALID";
inline constexpr const char* kDegenerateCutFingerprint = "DEGENERATE";

struct ScanConfig {
  BCConfig bc;
  int bisection_depth = 20;          // final bracket width (hi - lo) / 2^depth
  std::size_t max_breakpoints = 64;  // refinement stops once exceeded
};

struct ScanReport {
  std::string line;  // human-readable description of the scanned line
  Rational lo, hi;
  std::vector<Rational> breakpoints;       // increasing
  std::vector<std::string> intervals;      // fingerprint per interval, size breakpoints+1
  std::vector<std::pair<Rational, std::string>> samples;  // every evaluated t, increasing
  bool exceeded = false;                   // more than max_breakpoints found

  /// Distinct fingerprints in order of first appearance; ids index this list.
  std::vector<std::string> Fingerprints() const;
  /// "t,fingerprint_id".
  std::string Csv() const;
  /// "fingerprint_id,fingerprint_hash" (16 hex digits).
  std::string SidecarCsv() const;
  /// Fingerprint of the interval containing t (a breakpoint belongs to the
  /// interval on its right).
  const std::string& IntervalAt(const Rational& t) const;
};

/// Evaluates `f` at `resolution` evenly spaced points of [lo, hi] and bisects
/// every adjacent pair that differs. Each breakpoint is the midpoint of its
/// final bracket.
ScanReport ScanLine(const Rational& lo, const Rational& hi, int resolution,
                    const std::function<std::string(const Rational&)>& f,
                    const ScanConfig& config);

/// Trees for the cut alpha·x <= t, t in [lo, hi]. Cuts that some integer
/// point violates get kInvalidCutFingerprint.
ScanReport LineScan(const IPInstance& ip, const RVector& alpha, const Rational& lo,
                    const Rational& hi, int resolution, const ScanConfig& config = {});

/// Trees for the GMI cut of u over the instance's equality form, u moving
/// along each axis through `base` within [-U, U]. One report per axis, or
/// only for `axis` when given. Throws kBudgetExceeded beyond 8 rows or 10^4
/// grid points in total.
std::vector<ScanReport> GmiGridScan(const IPInstance& ip, const RVector& base,
                                    const Rational& U, int resolution,
                                    const ScanConfig& config = {},
                                    std::optional<Eigen::Index> axis = std::nullopt);

/// What makes the tree change at a line-scan breakpoint, tested exactly on
/// [t - radius, t + radius] for the cut alpha·x <= beta:
///   kLpArrangement   a zero of a BuildArrangement surface of some node LP
///                    (the node LPs of both neighbouring trees, without the cut)
///   kValidity        alpha·x <= beta stops being valid
///   kBoundComparison a node LP value crosses an incumbent value
///   kNodeOrder       two node LP values cross (best-bound order)
///   kIntegrality     a node vertex coordinate reaches an integer
///   kBranchingScore  two product scores at one node cross
/// The last four are sign changes of functions continuous in beta, so each
/// has a zero inside the bracket. Checked in this order; kUnexplained when
/// none applies. Needs n <= 3 for the arrangement.
enum class BreakpointCause {
  kLpArrangement,
  kValidity,
  kBoundComparison,
  kNodeOrder,
  kIntegrality,
  kBranchingScore,
  kUnexplained,
};
std::string_view BreakpointCauseName(BreakpointCause c);

BreakpointCause ExplainBreakpoint(const IPInstance& ip, const RVector& alpha, const Rational& t,
                                  const Rational& radius, const BCConfig& bc = {});

// ---------------------------------------------------------------------------
// generalization gap

struct GapConfig {
  InstanceDistribution distribution = JeroslowMixture{};
  std::vector<RVector> u_grid;  // GMI multipliers over each instance's equality form
  std::vector<int> n_schedule = {10, 20, 40};
  int repetitions = 10;
  int holdout = 0;  // 0 means 10 * max(n_schedule)
  std::uint64_t seed = 0;
  // Training repetition r draws instance i from DeriveSeed(DeriveSeed(seed, r + 1), i);
  // the holdout draws from DeriveSeed(DeriveSeed(seed, 0), i) unless overridden.
  std::optional<std::uint64_t> holdout_stream;
  BCConfig bc;
  int threads = 1;
};

struct GapRow {
  int n = 0;
  double mean_gap = 0;
  double q90_gap = 0;  // nearest-rank 0.9 quantile over repetitions
};

struct GapReport {
  std::vector<double> reference;  // holdout mean tree size per u
  std::vector<GapRow> rows;

  /// "n,mean_gap,q90_gap".
  std::string Csv() const;
};

/// Tree size with the GMI cut of u at the root (no cut when degenerate).
std::size_t GmiTreeSize(const IPInstance& ip, const RVector& u, const BCConfig& bc);

GapReport GeneralizationGap(const GapConfig& config);

}  // namespace cutlab

#endif  // CUTLAB_EXPERIMENTS_HPP_
