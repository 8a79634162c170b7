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

#include "cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <optional>
#include <sstream>

#include "cutlab/branch_and_cut.hpp"
#include "cutlab/cuts.hpp"
#include "cutlab/error.hpp"
#include "cutlab/experiments.hpp"
#include "cutlab/ip.hpp"
#include "cutlab/sensitivity.hpp"

namespace cutlab::cli {
namespace {

std::string ReadText(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::kInvalidArgument, "cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// Writes to `path`, or to `out` when no path was given.
void Emit(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty()) {
    out << text;
  } else {
    WriteTextFile(path, text);
  }
}

// Distribution flags shared by gen, sweep and gap. Unset flags keep the
// generator's defaults.
struct DistFlags {
  std::string name;
  std::optional<int> n, m, locations, clients, capacity_max, cost_max, coeff_max, upper_max;
  std::optional<double> noise_sd;
  std::optional<std::uint64_t> base_seed;
  std::string sizes;

  void Attach(CLI::App* app) {
    app->add_option("--dist", name, "fl-perturb | fl-line | jeroslow | jeroslow-mix | packing")
        ->required()
        ->check(CLI::IsMember({"fl-perturb", "fl-line", "jeroslow", "jeroslow-mix", "packing"}));
    app->add_option("--n", n, "jeroslow size or packing variables");
    app->add_option("--m", m, "packing rows");
    app->add_option("--locations", locations);
    app->add_option("--clients", clients);
    app->add_option("--capacity-max", capacity_max);
    app->add_option("--cost-max", cost_max);
    app->add_option("--noise-sd", noise_sd);
    app->add_option("--base-seed", base_seed);
    app->add_option("--coeff-max", coeff_max);
    app->add_option("--upper-max", upper_max);
    app->add_option("--sizes", sizes, "jeroslow-mix sizes, e.g. \"3,5\"");
  }

  InstanceDistribution Build() const {
    if (name == "fl-perturb") {
      FacilityPerturb d;
      d.locations = locations.value_or(d.locations);
      d.clients = clients.value_or(d.clients);
      d.capacity_max = capacity_max.value_or(d.capacity_max);
      d.cost_max = cost_max.value_or(d.cost_max);
      d.noise_sd = noise_sd.value_or(d.noise_sd);
      d.base_seed = base_seed.value_or(d.base_seed);
      return d;
    }
    if (name == "fl-line") {
      FacilityLine d;
      d.locations = locations.value_or(d.locations);
      d.clients = clients.value_or(d.clients);
      d.capacity_max = capacity_max.value_or(d.capacity_max);
      return d;
    }
    if (name == "jeroslow") return Jeroslow{n.value_or(Jeroslow{}.n)};
    if (name == "jeroslow-mix") {
      JeroslowMixture d;
      if (!sizes.empty()) {
        d.sizes.clear();
        for (const Rational& s : ParseRationalList(sizes)) {
          if (!IsInteger(s)) throw Error(ErrorKind::kParseError, "sizes must be integers");
          d.sizes.push_back(static_cast<int>(s));
        }
      }
      return d;
    }
    RandomPacking d;
    d.n = n.value_or(d.n);
    d.m = m.value_or(d.m);
    d.coeff_max = coeff_max.value_or(d.coeff_max);
    d.upper_max = upper_max.value_or(d.upper_max);
    return d;
  }
};

std::vector<RVector> ReadUGrid(const std::string& path) {
  std::vector<RVector> grid;
  std::istringstream in(ReadText(path));
  std::string line;
  while (std::getline(in, line)) {
    if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    grid.push_back(ParseRationalList(line));
  }
  if (grid.empty()) throw Error(ErrorKind::kParseError, path + ": empty u grid");
  return grid;
}

std::string SolveSummary(const BCTree& tree) {
  std::ostringstream s;
  const char* status = tree.capped ? "capped" : tree.optimal ? "optimal" : "infeasible";
  s << "status " << status << "\n";
  s << "size " << tree.size() << "\n";
  if (tree.optimal && tree.value) {
    s << (tree.capped ? "incumbent " : "value ") << ToString(*tree.value) << "\n";
    s << "x " << ToString(*tree.optimal) << "\n";
  }
  return s.str();
}

std::string SweepTraces(const SweepResult& r, const std::vector<Rational>& grid) {
  std::string out = "instance,seed,mu,tree_size,capped,selection\n";
  for (std::size_t i = 0; i < r.instances.size(); ++i) {
    const SweepInstance& inst = r.instances[i];
    for (std::size_t g = 0; g < grid.size(); ++g) {
      std::string pick;
      for (std::size_t k : inst.selections[g]) pick += (pick.empty() ? "" : ";") + std::to_string(k);
      out += std::to_string(i) + "," + std::to_string(inst.seed) + "," + ToString(grid[g]) + "," +
             std::to_string(inst.sizes[g]) + "," + (inst.capped[g] ? "1" : "0") + "," + pick +
             "\n";
    }
  }
  return out;
}

std::string DefaultSidecar(const std::string& path) {
  const auto dot = path.rfind(".csv");
  return (dot != std::string::npos && dot + 4 == path.size() ? path.substr(0, dot) : path) +
         "_ids.csv";
}

}  // namespace

int Main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact-rational branch-and-cut laboratory", "cutlab"};
  app.require_subcommand(1);
  int code = kExitOk;

  // solve
  std::string instance_path, cuts_path;
  std::size_t kappa = BCConfig{}.kappa;
  bool dump = false, show_fingerprint = false;
  auto* solve = app.add_subcommand("solve", "Branch-and-cut with optional root cuts");
  solve->add_option("--instance", instance_path)->required();
  solve->add_option("--cuts", cuts_path, "file of \"cut a1 ... an <= b\" lines");
  solve->add_option("--kappa", kappa, "tree size cap");
  solve->add_flag("--dump", dump, "print every node");
  solve->add_flag("--fingerprint", show_fingerprint);

  // gen
  DistFlags gen_dist;
  std::optional<std::uint64_t> seed;
  std::string out_path;
  auto* gen = app.add_subcommand("gen", "Sample an instance");
  gen_dist.Attach(gen);
  gen->add_option("--seed", seed)->required();
  gen->add_option("--out", out_path);

  // gmi
  std::string u_text;
  bool cg = false;
  auto* gmi = app.add_subcommand("gmi", "GMI (or CG) cut for a multiplier over the equality form");
  gmi->add_option("--instance", instance_path)->required();
  gmi->add_option("--u", u_text, "\"p/q,...\", one entry per row")->required();
  gmi->add_flag("--cg", cg, "emit the CG cut instead");

  // sensitivity
  int trials = 200;
  auto* sens = app.add_subcommand("sensitivity", "Closed-form LP sensitivity to one cut");
  sens->require_subcommand(1);
  auto* verify = sens->add_subcommand("verify", "Random cuts checked against re-solves");
  verify->add_option("--instance", instance_path)->required();
  verify->add_option("--trials", trials);
  verify->add_option("--seed", seed)->required();
  auto* arrange = sens->add_subcommand("arrange", "Surface arrangement of the relaxation");
  arrange->add_option("--instance", instance_path)->required();

  // scan
  std::string alpha_text, lo_text, hi_text, sidecar_path;
  int resolution = 64;
  auto* scan = app.add_subcommand("scan", "Tree fingerprints along alpha·x <= beta");
  scan->add_option("--instance", instance_path)->required();
  scan->add_option("--alpha", alpha_text)->required();
  scan->add_option("--beta-lo", lo_text)->required();
  scan->add_option("--beta-hi", hi_text)->required();
  scan->add_option("--res", resolution);
  scan->add_option("--kappa", kappa);
  scan->add_option("--out", out_path);
  scan->add_option("--sidecar", sidecar_path, "default: <out>_ids.csv");

  // gmi-scan
  std::string base_text, u_bound_text = "1";
  int axis = 1;
  auto* gscan = app.add_subcommand("gmi-scan", "Tree fingerprints along one axis of u-space");
  gscan->add_option("--instance", instance_path)->required();
  gscan->add_option("--base", base_text, "base multiplier; default 0");
  gscan->add_option("--U", u_bound_text);
  gscan->add_option("--axis", axis, "1-based row index")->check(CLI::PositiveNumber);
  gscan->add_option("--res", resolution);
  gscan->add_option("--kappa", kappa);
  gscan->add_option("--out", out_path);
  gscan->add_option("--sidecar", sidecar_path);

  // sweep
  DistFlags sweep_dist;
  int samples = 50, threads = 1;
  std::size_t cuts_per_instance = 5;
  std::string mu_step_text = "1/100", traces_path;
  auto* sweep = app.add_subcommand("sweep", "Tree size against the selection weight mu");
  sweep_dist.Attach(sweep);
  sweep->add_option("--samples", samples);
  sweep->add_option("--mu-step", mu_step_text);
  sweep->add_option("--cuts", cuts_per_instance, "cuts selected per instance");
  sweep->add_option("--kappa", kappa);
  sweep->add_option("--threads", threads);
  sweep->add_option("--seed", seed)->required();
  sweep->add_option("--out", out_path);
  sweep->add_option("--traces", traces_path, "per-instance CSV");

  // gap
  DistFlags gap_dist;
  std::string u_grid_path, schedule_text = "10,20,40";
  int repetitions = 10;
  auto* gap = app.add_subcommand("gap", "Empirical generalization gap of GMI tree size");
  gap_dist.Attach(gap);
  gap->add_option("--u-grid", u_grid_path, "one multiplier per line")->required();
  gap->add_option("--n-schedule", schedule_text);
  gap->add_option("--repetitions", repetitions);
  gap->add_option("--kappa", kappa);
  gap->add_option("--threads", threads);
  gap->add_option("--seed", seed)->required();
  gap->add_option("--out", out_path);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }

  BCConfig bc;
  bc.kappa = kappa;
  try {
    if (*solve) {
      const IPInstance ip = ReadInstanceFile(instance_path);
      std::vector<CutPlane> cuts;
      if (!cuts_path.empty()) cuts = ParseCuts(ReadText(cuts_path));
      const BCTree tree = BranchAndCut(ip, cuts, bc);
      out << SolveSummary(tree);
      if (show_fingerprint) out << "fingerprint " << Fingerprint(tree) << "\n";
      if (dump) out << DumpTree(tree);
    } else if (*gen) {
      Emit(out_path, SerializeInstance(Sample(gen_dist.Build(), *seed)), out);
    } else if (*gmi) {
      const IPInstance ip = ReadInstanceFile(instance_path);
      const EqualityForm eq = ToEqualityForm(ip);
      const RVector u = ParseRationalList(u_text);
      out << ToString(cg ? CgCut(eq, u) : GmiCut(eq, u)) << "\n";
    } else if (*verify) {
      const IPInstance ip = ReadInstanceFile(instance_path);
      const auto witnesses = VerifyClosedForm(ip.Relaxation(), trials, *seed);
      std::size_t verified = 0, matched = 0, unchanged = 0, active = 0, empty = 0;
      for (const RegionWitness& w : witnesses) {
        verified += w.verified;
        matched += w.vertex_match;
        unchanged += w.regime == Regime::kUnchanged;
        active += w.regime == Regime::kActiveEdge;
        empty += w.regime == Regime::kEmpty;
        if (!w.verified) {
          out << "unverified alpha " << ToString(w.alpha) << " beta " << ToString(w.beta) << "\n";
        }
      }
      out << "trials " << witnesses.size() << " verified " << verified << " vertex_match "
          << matched << " unchanged " << unchanged << " active_edge " << active << " empty "
          << empty << "\n";
      if (verified != witnesses.size()) code = kExitVerificationFailed;
    } else if (*arrange) {
      const IPInstance ip = ReadInstanceFile(instance_path);
      out << BuildArrangement(ip.Relaxation()).Dump();
    } else if (*scan || *gscan) {
      const IPInstance ip = ReadInstanceFile(instance_path);
      ScanConfig cfg;
      cfg.bc = bc;
      ScanReport report;
      if (*scan) {
        report = LineScan(ip, ParseRationalList(alpha_text), ParseRational(lo_text),
                          ParseRational(hi_text), resolution, cfg);
      } else {
        const Eigen::Index m = ToEqualityForm(ip).ip.num_rows();
        const RVector base = base_text.empty() ? ZeroVector(m) : ParseRationalList(base_text);
        report = GmiGridScan(ip, base, ParseRational(u_bound_text), resolution, cfg,
                             axis - 1)
                     .front();
      }
      Emit(out_path, report.Csv(), out);
      if (!out_path.empty() || !sidecar_path.empty()) {
        WriteTextFile(sidecar_path.empty() ? DefaultSidecar(out_path) : sidecar_path,
                      report.SidecarCsv());
      }
      if (report.exceeded) {
        err << "breakpoint ceiling exceeded\n";
        code = kExitBudget;
      }
    } else if (*sweep) {
      SweepConfig cfg;
      cfg.distribution = sweep_dist.Build();
      cfg.samples = samples;
      cfg.mu_step = ParseRational(mu_step_text);
      cfg.cuts_per_instance = cuts_per_instance;
      cfg.bc = bc;
      cfg.seed = *seed;
      cfg.threads = threads;
      const SweepResult r = MuSweep(cfg);
      Emit(out_path, r.Csv(), out);
      if (!traces_path.empty()) WriteTextFile(traces_path, SweepTraces(r, MuGrid(cfg.mu_step)));
    } else if (*gap) {
      GapConfig cfg;
      cfg.distribution = gap_dist.Build();
      cfg.u_grid = ReadUGrid(u_grid_path);
      cfg.n_schedule.clear();
      for (const Rational& v : ParseRationalList(schedule_text)) {
        if (!IsInteger(v) || v < 1) throw Error(ErrorKind::kParseError, "bad --n-schedule");
        cfg.n_schedule.push_back(static_cast<int>(v));
      }
      cfg.repetitions = repetitions;
      cfg.seed = *seed;
      cfg.bc = bc;
      cfg.threads = threads;
      Emit(out_path, GeneralizationGap(cfg).Csv(), out);
    }
  } catch (const Error& e) {
    err << e.what() << "\n";
    const bool budget =
        e.kind() == ErrorKind::kBudgetExceeded || e.kind() == ErrorKind::kTooLarge;
    return budget ? kExitBudget : kExitUsage;
  }
  return code;
}

}  // namespace cutlab::cli
