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

#include "cutlab/ip.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "cutlab/error.hpp"
#include "cutlab/rng.hpp"

namespace cutlab {

void IPInstance::Validate() const {
  const Eigen::Index n = num_vars();
  if (static_cast<Eigen::Index>(upper.size()) != n) {
    throw Error(ErrorKind::kDimensionMismatch, "upper bound count differs from n");
  }
  for (const Constraint& row : rows) {
    if (row.coeffs.size() != n) {
      throw Error(ErrorKind::kDimensionMismatch, "row length differs from n");
    }
    if (!IsIntegral(row.coeffs) || !IsInteger(row.rhs)) {
      throw Error(ErrorKind::kInvalidArgument, "IP rows must be integral");
    }
  }
  for (const auto& u : upper) {
    if (u && *u < 0) throw Error(ErrorKind::kInvalidArgument, "negative upper bound");
  }
}

LinearProgram IPInstance::Relaxation() const {
  LinearProgram lp;
  lp.objective = direction == Direction::kMaximize ? objective : RVector(-objective);
  lp.rows = rows;
  lp.upper.resize(upper.size());
  for (std::size_t j = 0; j < upper.size(); ++j) {
    if (upper[j]) lp.upper[j] = Rational(*upper[j]);
  }
  return lp;
}

Rational IPInstance::Value(const RVector& x) const {
  return Dot(objective, x) + offset;
}

bool IPInstance::IsFeasible(const RVector& x) const {
  if (x.size() != num_vars()) return false;
  for (Eigen::Index j = 0; j < x.size(); ++j) {
    if (x(j) < 0) return false;
    if (upper[j] && x(j) > Rational(*upper[j])) return false;
  }
  for (const Constraint& row : rows) {
    if (!row.SatisfiedBy(x)) return false;
  }
  return true;
}

bool IPInstance::operator==(const IPInstance& other) const {
  if (direction != other.direction || offset != other.offset ||
      !Equal(objective, other.objective) || upper != other.upper ||
      rows.size() != other.rows.size()) {
    return false;
  }
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].sense != other.rows[i].sense || rows[i].rhs != other.rows[i].rhs ||
        !Equal(rows[i].coeffs, other.rows[i].coeffs)) {
      return false;
    }
  }
  return true;
}

Integer TauBound(const IPInstance& ip) {
  LinearProgram lp = ip.Relaxation();
  Integer tau = 0;
  for (Eigen::Index i = 0; i < ip.num_vars(); ++i) {
    lp.objective = ZeroVector(ip.num_vars());
    lp.objective(i) = 1;
    const LpOutcome out = Solve(lp);
    if (std::holds_alternative<LpUnbounded>(out)) {
      throw Error(ErrorKind::kUnboundedRelaxation,
                  "x" + std::to_string(i + 1) + " is unbounded over the relaxation");
    }
    if (IsInfeasible(out)) return 0;
    const Integer c = Ceil(std::get<LpOptimal>(out).value);
    if (c > tau) tau = c;
  }
  return tau;
}

std::vector<RVector> EnumerateIntegerPoints(const IPInstance& ip,
                                            std::uint64_t cap) {
  ip.Validate();
  const Eigen::Index n = ip.num_vars();
  const Integer tau = TauBound(ip);
  std::vector<std::int64_t> hi(static_cast<std::size_t>(n));
  long double volume = 1;
  for (Eigen::Index j = 0; j < n; ++j) {
    Integer h = tau;
    if (ip.upper[j] && *ip.upper[j] < h) h = *ip.upper[j];
    hi[j] = h.convert_to<std::int64_t>();
    volume *= static_cast<long double>(hi[j] + 1);
  }
  if (volume > static_cast<long double>(cap)) {
    throw Error(ErrorKind::kTooLarge, "integer box has more than " +
                                          std::to_string(cap) + " points");
  }
  // Integer rows as machine integers for the scan.
  struct IntRow {
    std::vector<std::int64_t> a;
    Sense sense;
    std::int64_t b;
  };
  std::vector<IntRow> rows;
  for (const Constraint& c : ip.rows) {
    IntRow r{std::vector<std::int64_t>(static_cast<std::size_t>(n)), c.sense,
             Numerator(c.rhs).convert_to<std::int64_t>()};
    for (Eigen::Index j = 0; j < n; ++j) {
      r.a[j] = Numerator(c.coeffs(j)).convert_to<std::int64_t>();
    }
    rows.push_back(std::move(r));
  }
  std::vector<RVector> points;
  std::vector<std::int64_t> x(static_cast<std::size_t>(n), 0);
  if (n == 0) return points;
  for (;;) {
    bool ok = true;
    for (const IntRow& r : rows) {
      std::int64_t lhs = 0;
      for (Eigen::Index j = 0; j < n; ++j) lhs += r.a[j] * x[j];
      if ((r.sense == Sense::kLe && lhs > r.b) ||
          (r.sense == Sense::kGe && lhs < r.b) ||
          (r.sense == Sense::kEq && lhs != r.b)) {
        ok = false;
        break;
      }
    }
    if (ok) {
      RVector p(n);
      for (Eigen::Index j = 0; j < n; ++j) p(j) = x[j];
      points.push_back(std::move(p));
    }
    // Odometer, last coordinate fastest.
    Eigen::Index k = n - 1;
    while (k >= 0 && x[k] == hi[k]) x[k--] = 0;
    if (k < 0) break;
    ++x[k];
  }
  return points;
}

std::optional<RVector> BruteForceOptimum(const IPInstance& ip, std::uint64_t cap) {
  std::optional<RVector> best;
  Rational best_value;
  for (RVector& p : EnumerateIntegerPoints(ip, cap)) {
    const Rational v = ip.Value(p);
    const bool better = ip.direction == Direction::kMaximize ? v > best_value
                                                             : v < best_value;
    if (!best || better) {
      best_value = v;
      best = std::move(p);
    }
  }
  return best;
}

// ---------------------------------------------------------------------------

Rational Quantize(double value) {
  return Rational(Integer(std::llround(value * 1e6)), Integer(1000000));
}

namespace {

struct FacilityData {
  std::vector<Rational> open_cost;               // f_j
  std::vector<std::vector<Rational>> serve_cost;  // s_{c,j}
  std::vector<std::int64_t> capacity;           // kappa_j
};

IPInstance BuildFacility(const FacilityData& d) {
  const int nl = static_cast<int>(d.open_cost.size());
  const int nc = static_cast<int>(d.serve_cost.size());
  const Eigen::Index n = nl + static_cast<Eigen::Index>(nc) * nl;
  IPInstance ip;
  ip.direction = Direction::kMinimize;
  ip.objective = ZeroVector(n);
  for (int j = 0; j < nl; ++j) ip.objective(FacilityOpenVar(j)) = d.open_cost[j];
  for (int c = 0; c < nc; ++c) {
    for (int j = 0; j < nl; ++j) {
      ip.objective(FacilityAssignVar(nl, c, j)) = d.serve_cost[c][j];
    }
  }
  for (int c = 0; c < nc; ++c) {
    RVector a = ZeroVector(n);
    for (int j = 0; j < nl; ++j) a(FacilityAssignVar(nl, c, j)) = 1;
    ip.rows.push_back({std::move(a), Sense::kEq, 1});
  }
  for (int j = 0; j < nl; ++j) {
    RVector a = ZeroVector(n);
    for (int c = 0; c < nc; ++c) a(FacilityAssignVar(nl, c, j)) = 1;
    a(FacilityOpenVar(j)) = -d.capacity[j];
    ip.rows.push_back({std::move(a), Sense::kLe, 0});
  }
  ip.upper.assign(static_cast<std::size_t>(n), Integer(1));
  return ip;
}

FacilityData BaseData(const FacilityPerturb& p) {
  CounterRng rng(p.base_seed);
  FacilityData d;
  for (int j = 0; j < p.locations; ++j) {
    d.open_cost.push_back(Quantize(rng.Uniform() * p.cost_max));
  }
  d.serve_cost.resize(static_cast<std::size_t>(p.clients));
  for (int c = 0; c < p.clients; ++c) {
    for (int j = 0; j < p.locations; ++j) {
      d.serve_cost[c].push_back(Quantize(rng.Uniform() * p.cost_max));
    }
  }
  for (int j = 0; j < p.locations; ++j) {
    d.capacity.push_back(rng.UniformInt(0, p.capacity_max));
  }
  return d;
}

}  // namespace

IPInstance FacilityBase(const FacilityPerturb& params) {
  return BuildFacility(BaseData(params));
}

IPInstance GenerateFacility(const FacilityPerturb& params, std::uint64_t seed) {
  FacilityData d = BaseData(params);
  CounterRng rng(seed);
  for (Rational& f : d.open_cost) {
    f = Quantize(ToDouble(f) + rng.Gaussian(0.0, params.noise_sd));
  }
  for (auto& row : d.serve_cost) {
    for (Rational& s : row) {
      s = Quantize(ToDouble(s) + rng.Gaussian(0.0, params.noise_sd));
    }
  }
  // Perturbed capacities: round to nearest, clamp at zero.
  for (std::int64_t& k : d.capacity) {
    const double v = static_cast<double>(k) + rng.Gaussian(0.0, params.noise_sd);
    k = std::max<std::int64_t>(0, std::llround(v));
  }
  return BuildFacility(d);
}

IPInstance GenerateFacility(const FacilityLine& params, std::uint64_t seed) {
  CounterRng rng(seed);
  FacilityData d;
  std::vector<std::pair<double, double>> sites;
  for (int j = 0; j < params.locations; ++j) {
    const double x = params.locations == 1
                         ? 0.5
                         : static_cast<double>(j) / (params.locations - 1);
    sites.emplace_back(x, 0.5);
    d.open_cost.push_back(1);
  }
  d.serve_cost.resize(static_cast<std::size_t>(params.clients));
  for (int c = 0; c < params.clients; ++c) {
    const double cx = rng.Uniform();
    const double cy = rng.Uniform();
    for (const auto& [sx, sy] : sites) {
      d.serve_cost[c].push_back(Quantize(std::hypot(cx - sx, cy - sy)));
    }
  }
  for (int j = 0; j < params.locations; ++j) {
    d.capacity.push_back(rng.UniformInt(0, params.capacity_max));
  }
  return BuildFacility(d);
}

IPInstance GenerateJeroslow(int n, const Rational& c) {
  if (n < 1 || n % 2 == 0) {
    throw Error(ErrorKind::kEvenN, "Jeroslow instances need odd n, got " +
                                       std::to_string(n));
  }
  IPInstance ip;
  ip.objective = ZeroVector(n);
  ip.offset = c;
  RVector a(n);
  for (int j = 0; j < n; ++j) a(j) = 2;
  ip.rows.push_back({std::move(a), Sense::kEq, n});
  ip.upper.assign(static_cast<std::size_t>(n), Integer(1));
  return ip;
}

IPInstance GenerateRandomPacking(const RandomPacking& p, std::uint64_t seed) {
  CounterRng rng(seed);
  IPInstance ip;
  ip.objective = RVector(p.n);
  for (int j = 0; j < p.n; ++j) ip.objective(j) = rng.UniformInt(1, 10);
  for (int i = 0; i < p.m; ++i) {
    RVector a(p.n);
    for (int j = 0; j < p.n; ++j) a(j) = rng.UniformInt(0, p.coeff_max);
    const auto b = rng.UniformInt(p.coeff_max, static_cast<std::int64_t>(p.n) *
                                                   p.coeff_max);
    ip.rows.push_back({std::move(a), Sense::kLe, b});
  }
  ip.upper.assign(static_cast<std::size_t>(p.n), Integer(p.upper_max));
  return ip;
}

IPInstance Sample(const InstanceDistribution& dist, std::uint64_t seed) {
  struct Visitor {
    std::uint64_t seed;
    IPInstance operator()(const FacilityPerturb& p) const {
      return GenerateFacility(p, seed);
    }
    IPInstance operator()(const FacilityLine& p) const {
      return GenerateFacility(p, seed);
    }
    IPInstance operator()(const Jeroslow& p) const {
      CounterRng rng(seed);
      return GenerateJeroslow(p.n, Quantize(rng.Uniform() * 100.0));
    }
    IPInstance operator()(const JeroslowMixture& p) const {
      CounterRng rng(seed);
      const auto k = rng.UniformInt(0, static_cast<std::int64_t>(p.sizes.size()) - 1);
      return GenerateJeroslow(p.sizes[static_cast<std::size_t>(k)],
                              Quantize(rng.Uniform() * 100.0));
    }
    IPInstance operator()(const RandomPacking& p) const {
      return GenerateRandomPacking(p, seed);
    }
  };
  return std::visit(Visitor{seed}, dist);
}

// ---------------------------------------------------------------------------

std::string SerializeInstance(const IPInstance& ip) {
  std::ostringstream out;
  out << "ip " << ip.num_vars() << ' ' << ip.rows.size() << ' '
      << (ip.direction == Direction::kMaximize ? "max" : "min") << '\n';
  out << "c " << ToString(ip.objective) << '\n';
  if (ip.offset != 0) out << "const " << ToString(ip.offset) << '\n';
  for (const Constraint& row : ip.rows) {
    out << "row " << ToString(row.coeffs) << ' ' << SenseName(row.sense) << ' '
        << ToString(row.rhs) << '\n';
  }
  out << "ub";
  for (const auto& u : ip.upper) out << ' ' << (u ? u->str() : "inf");
  out << '\n';
  return out.str();
}

namespace {

[[noreturn]] void Fail(int line, const std::string& what) {
  throw Error(ErrorKind::kParseError, "line " + std::to_string(line) + ": " + what);
}

std::vector<std::string> Tokens(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> out;
  for (std::string t; in >> t;) out.push_back(t);
  return out;
}

Rational FieldRational(const std::string& tok, int line, const char* field) {
  try {
    return ParseRational(tok);
  } catch (const Error&) {
    Fail(line, std::string("bad ") + field + " value '" + tok + "'");
  }
}

}  // namespace

IPInstance ParseInstance(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::vector<std::pair<int, std::vector<std::string>>> lines;
  int number = 0;
  for (std::string line; std::getline(in, line);) {
    ++number;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    lines.emplace_back(number, Tokens(line));
  }
  std::size_t k = 0;
  auto next = [&](const char* keyword) -> const std::vector<std::string>& {
    if (k >= lines.size()) {
      Fail(number, std::string("missing '") + keyword + "' line");
    }
    const auto& [ln, toks] = lines[k];
    if (toks.empty() || toks[0] != keyword) {
      Fail(ln, std::string("expected '") + keyword + "'");
    }
    ++k;
    return toks;
  };

  const auto& header = next("ip");
  const int hl = lines[k - 1].first;
  if (header.size() != 4) Fail(hl, "header must be 'ip <n> <m> <max|min>'");
  long n = 0;
  long m = 0;
  try {
    n = std::stol(header[1]);
    m = std::stol(header[2]);
  } catch (const std::exception&) {
    Fail(hl, "bad n or m");
  }
  if (n < 0 || m < 0) Fail(hl, "negative n or m");
  IPInstance ip;
  if (header[3] == "max") {
    ip.direction = Direction::kMaximize;
  } else if (header[3] == "min") {
    ip.direction = Direction::kMinimize;
  } else {
    Fail(hl, "sense must be max or min");
  }

  const auto& c = next("c");
  if (static_cast<long>(c.size()) != n + 1) {
    Fail(lines[k - 1].first, "objective has " + std::to_string(c.size() - 1) +
                                 " entries, expected " + std::to_string(n));
  }
  ip.objective = RVector(n);
  for (long j = 0; j < n; ++j) {
    ip.objective(j) = FieldRational(c[j + 1], lines[k - 1].first, "objective");
  }
  if (k < lines.size() && !lines[k].second.empty() && lines[k].second[0] == "const") {
    const auto& [ln, toks] = lines[k++];
    if (toks.size() != 2) Fail(ln, "const takes one value");
    ip.offset = FieldRational(toks[1], ln, "const");
  }
  for (long i = 0; i < m; ++i) {
    const auto& row = next("row");
    const int ln = lines[k - 1].first;
    if (static_cast<long>(row.size()) != n + 3) {
      Fail(ln, "row has " + std::to_string(static_cast<long>(row.size()) - 3) +
                   " coefficients, expected " + std::to_string(n));
    }
    Constraint con;
    con.coeffs = RVector(n);
    for (long j = 0; j < n; ++j) {
      con.coeffs(j) = FieldRational(row[j + 1], ln, "coefficient");
      if (!IsInteger(con.coeffs(j))) Fail(ln, "coefficient must be an integer");
    }
    try {
      con.sense = ParseSense(row[n + 1]);
    } catch (const Error&) {
      Fail(ln, "bad sense '" + row[n + 1] + "'");
    }
    con.rhs = FieldRational(row[n + 2], ln, "rhs");
    if (!IsInteger(con.rhs)) Fail(ln, "rhs must be an integer");
    ip.rows.push_back(std::move(con));
  }
  const auto& ub = next("ub");
  const int ul = lines[k - 1].first;
  if (static_cast<long>(ub.size()) != n + 1) Fail(ul, "ub needs n entries");
  for (long j = 0; j < n; ++j) {
    if (ub[j + 1] == "inf") {
      ip.upper.emplace_back(std::nullopt);
      continue;
    }
    const Rational u = FieldRational(ub[j + 1], ul, "ub");
    if (!IsInteger(u) || u < 0) Fail(ul, "ub must be a nonnegative integer");
    ip.upper.emplace_back(Numerator(u));
  }
  if (k != lines.size()) Fail(lines[k].first, "trailing content");
  return ip;
}

IPInstance ReadInstanceFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::kInvalidArgument, "cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return ParseInstance(buf.str());
}

void WriteTextFile(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::kInvalidArgument, "cannot write " + path);
  out << text;
}

}  // namespace cutlab
