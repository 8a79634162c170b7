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

// Pure-integer programs, the brute-force integer-point oracle, instance
// generators and the text instance format.

#ifndef CUTLAB_IP_HPP_
#define CUTLAB_IP_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "cutlab/lp.hpp"
#include "cutlab/rational.hpp"

namespace cutlab {

enum class Direction { kMaximize, kMinimize };

/// opt objective·x + offset  s.t. rows, 0 <= x <= upper, x integer.
/// Row coefficients and right-hand sides are integers.
struct IPInstance {
  RVector objective;
  Rational offset = 0;
  std::vector<Constraint> rows;
  std::vector<std::optional<Integer>> upper;  // length n; nullopt = no bound
  Direction direction = Direction::kMaximize;

  Eigen::Index num_vars() const { return objective.size(); }
  Eigen::Index num_rows() const { return static_cast<Eigen::Index>(rows.size()); }

  /// Throws kDimensionMismatch / kInvalidArgument on shape or integrality
  /// violations.
  void Validate() const;

  /// LP relaxation in maximization form (objective negated when minimizing);
  /// upper bounds carried as LP bounds.
  LinearProgram Relaxation() const;

  /// Objective in the instance's own direction, offset included.
  Rational Value(const RVector& x) const;
  bool IsFeasible(const RVector& x) const;

  bool operator==(const IPInstance& other) const;
};

inline constexpr std::uint64_t kDefaultEnumerationCap = 10'000'000;

/// ceil of the largest coordinate over the relaxation; n exact LP solves.
/// Throws kUnboundedRelaxation. Returns 0 for an empty relaxation.
Integer TauBound(const IPInstance& ip);

/// Every integer point of the relaxation, lexicographic order. Throws
/// kTooLarge when the scanned box exceeds `cap` points.
std::vector<RVector> EnumerateIntegerPoints(
    const IPInstance& ip, std::uint64_t cap = kDefaultEnumerationCap);

/// Best integer point by brute force, or nullopt if none exists.
std::optional<RVector> BruteForceOptimum(
    const IPInstance& ip, std::uint64_t cap = kDefaultEnumerationCap);

// ---------------------------------------------------------------------------
// Generators. All are pure functions of (parameters, seed).

struct FacilityPerturb {
  int locations = 40;
  int clients = 40;
  std::uint64_t base_seed = 0;
  double noise_sd = 10.0;
  int cost_max = 100;
  int capacity_max = 39;
};

struct FacilityLine {
  int locations = 80;
  int clients = 80;
  int capacity_max = 43;
};

struct Jeroslow {
  int n = 5;
};

/// Jeroslow instances with n drawn uniformly from `sizes`.
struct JeroslowMixture {
  std::vector<int> sizes = {3, 5};
};

struct RandomPacking {
  int n = 3;
  int m = 2;
  int coeff_max = 5;
  int upper_max = 4;
};

using InstanceDistribution =
    std::variant<FacilityPerturb, FacilityLine, Jeroslow, JeroslowMixture,
                 RandomPacking>;

/// Quantizes to the nearest rational with denominator 10^6.
Rational Quantize(double value);

/// Unperturbed base instance of a FacilityPerturb distribution.
IPInstance FacilityBase(const FacilityPerturb& params);

IPInstance GenerateFacility(const FacilityPerturb& params, std::uint64_t seed);
IPInstance GenerateFacility(const FacilityLine& params, std::uint64_t seed);

/// maximize c s.t. 2x_1 + ... + 2x_n = n, x binary. Throws kEvenN.
IPInstance GenerateJeroslow(int n, const Rational& c);

IPInstance GenerateRandomPacking(const RandomPacking& params, std::uint64_t seed);

IPInstance Sample(const InstanceDistribution& dist, std::uint64_t seed);

// Variable layout of the facility model: x_j first, then y_{c,j}.
inline Eigen::Index FacilityOpenVar(int j) { return j; }
inline Eigen::Index FacilityAssignVar(int locations, int c, int j) {
  return locations + static_cast<Eigen::Index>(c) * locations + j;
}

// ---------------------------------------------------------------------------
// Text format:
//   ip <n> <m> <max|min>
//   c <r_1> ... <r_n>
//   [const <r>]
//   row <a_1> ... <a_n> <LE|EQ|GE> <rhs>      (m lines)
//   ub <u_1> ... <u_n>                        ("inf" for no bound)
// Lines starting with '#' and blank lines are ignored.

std::string SerializeInstance(const IPInstance& ip);
/// Throws kParseError with a line number.
IPInstance ParseInstance(std::string_view text);

IPInstance ReadInstanceFile(const std::string& path);
void WriteTextFile(const std::string& path, const std::string& text);

}  // namespace cutlab

#endif  // CUTLAB_IP_HPP_
