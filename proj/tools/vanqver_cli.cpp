// Copyright 2026 The VanQver Simulator Authors
//
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

// Command-line front end: run, tca, sweep, diagnose and fixtures list.
//
// Exit status: 0 success, 1 run failure, 2 usage or configuration error.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "vanqver/diagnostics.hpp"
#include "vanqver/fixture.hpp"
#include "vanqver/report.hpp"
#include "vanqver/vanqver.hpp"

namespace fs = std::filesystem;
using namespace vanqver;

namespace {

/// Configuration problems (exit 2) as opposed to failures while running.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ProblemArgs {
  std::string fixture;
  std::optional<double> d;
  double alpha = 1.0;
  std::string ordering = "interleaved";

  ProblemOptions options() const {
    ProblemOptions o;
    o.ordering = parse_spin_ordering(ordering);
    o.alpha = alpha;
    return o;
  }
  Problem load(std::optional<double> distance) const {
    return Problem::from_fixture(load_fixture(fixture, distance), options());
  }
  Problem load() const { return load(d); }
};

struct OptimizerArgs {
  double tol = 1e-3;
  int max_iterations = 500;
  int steps = 0;
  std::string gradient = "adjoint";
  std::string termination = "gradient";
  int jobs = 1;

  OptimizeConfig config() const {
    OptimizeConfig c;
    c.epsilon_tol = tol;
    c.max_iterations = max_iterations;
    c.n_time_steps = steps;
    c.gradient = parse_gradient_method(gradient);
    c.termination = parse_termination(termination);
    c.jobs = jobs;
    return c;
  }
};

void add_problem_options(CLI::App* cmd, ProblemArgs& p, bool need_fixture = true) {
  auto* f = cmd->add_option("--fixture", p.fixture,
                            "fixture name (h2, lih, p4), file stem or .fcidump path");
  if (need_fixture) f->required();
  cmd->add_option("--d", p.d, "P4 separation in Angstrom");
  cmd->add_option("--alpha", p.alpha, "navigator amplitude scale")->check(CLI::PositiveNumber);
  cmd->add_option("--ordering", p.ordering, "spin-orbital ordering")
      ->check(CLI::IsMember({"interleaved", "blocked"}));
}

void add_optimizer_options(CLI::App* cmd, OptimizerArgs& o) {
  cmd->add_option("--tol", o.tol, "optimizer termination tolerance")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--max-iter", o.max_iterations, "optimizer iteration cap")
      ->check(CLI::NonNegativeNumber);
  cmd->add_option("--steps", o.steps, "time steps per anneal (0: automatic)")
      ->check(CLI::NonNegativeNumber);
  cmd->add_option("--gradient", o.gradient, "gradient method")
      ->check(CLI::IsMember({"adjoint", "fd"}));
  cmd->add_option("--termination", o.termination, "termination rule")
      ->check(CLI::IsMember({"gradient", "energy"}));
  cmd->add_option("--jobs", o.jobs, "worker threads")->check(CLI::PositiveNumber);
}

/// Runs a setup step, reporting any failure as a configuration error.
template <class F>
auto configure(F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const FixtureNotFound&) {
    throw;
  } catch (const UsageError&) {
    throw;
  } catch (const std::exception& e) {
    throw UsageError(e.what());
  }
}

std::optional<fs::path> results_dir() {
  const char* env = std::getenv("VANQVER_RESULTS_DIR");
  if (env == nullptr || *env == '\0') return std::nullopt;
  return fs::path(env);
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  const fs::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << text;
  }
  fs::rename(tmp, path);
}

void dump_hamiltonian(const std::string& path, const Problem& problem) {
  std::ostringstream ss;
  write_text(ss, problem.h_fin());
  write_file(path, ss.str());
}

/// Skeleton record carrying only what the config hash depends on.
RunRecord keyed_record(const Problem& problem, const ProblemArgs& p, AnnealMode mode,
                       double T, const OptimizeConfig& config) {
  RunRecord r;
  r.problem = problem.name();
  r.distance = p.d;
  r.mode = mode;
  r.T = T;
  r.config = config;
  return r;
}

std::string hash_of(const RunRecord& r, const Problem& problem) {
  return config_hash(r, problem.options().alpha, problem.options().ordering);
}

std::optional<RunRecord> cached_record(const std::string& hash) {
  const auto dir = results_dir();
  if (!dir) return std::nullopt;
  const fs::path path = *dir / (hash + ".json");
  if (!fs::exists(path)) return std::nullopt;
  return record_from_json(read_file(path));
}

void store_record(const RunRecord& r, const std::string& hash) {
  if (const auto dir = results_dir()) write_file(*dir / (hash + ".json"), record_to_json(r, hash));
}

RunRecord execute(const Problem& problem, const RunRecord& key) {
  RunRecord r = key.mode == AnnealMode::vanqver
                    ? optimize(problem, key.T, key.config)
                    : standard_record(problem, key.T, key.config.n_time_steps);
  r.distance = key.distance;
  return r;
}

std::vector<double> parse_grid(const std::string& text) {
  std::vector<double> grid;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.find_first_not_of(" \t") == std::string::npos) continue;
    try {
      std::size_t used = 0;
      grid.push_back(std::stod(item, &used));
      if (item.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument("");
    } catch (const std::exception&) {
      throw UsageError("bad grid value: " + item);
    }
  }
  return grid;
}

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

// ---------------------------------------------------------------------------
// Commands

struct RunArgs {
  ProblemArgs problem;
  OptimizerArgs opt;
  std::string mode = "vanqver";
  double T = 0.1;
  std::string out, csv, dump;
};

int cmd_run(const RunArgs& a) {
  const AnnealMode mode = configure([&] { return parse_anneal_mode(a.mode); });
  const OptimizeConfig config = configure([&] { return a.opt.config(); });
  const Problem problem = configure([&] { return a.problem.load(); });
  if (!a.dump.empty()) dump_hamiltonian(a.dump, problem);
  const RunRecord key = keyed_record(problem, a.problem, mode, a.T, config);
  const std::string hash = hash_of(key, problem);

  RunRecord r;
  if (auto cached = cached_record(hash)) {
    r = std::move(*cached);
    std::cerr << "using cached result " << hash << "\n";
  } else {
    r = execute(problem, key);
    store_record(r, hash);
  }
  if (!a.out.empty()) write_file(a.out, record_to_json(r, hash));
  if (!a.csv.empty()) write_file(a.csv, csv_header() + csv_row(r, hash));

  std::cout << "problem: " << r.problem << "\n"
            << "mode: " << to_string(r.mode) << "\n"
            << "T: " << format_double(r.T) << "\n"
            << "E_final: " << fmt("%.10f", r.final_energy) << "\n"
            << "E_FCI: " << fmt("%.10f", r.e_fci) << "\n"
            << "delta_E: " << fmt("%.3e", r.error()) << "\n";
  if (r.mode == AnnealMode::vanqver) {
    std::cout << "iterations: " << r.n_iterations << "\n"
              << "converged: " << (r.converged ? "yes" : "no") << " (" << r.message << ")\n";
  }
  std::cout << "chemical accuracy: " << (r.chemically_accurate() ? "YES" : "NO") << "\n"
            << "config_hash: " << hash << "\n";
  return 0;
}

struct TcaArgs {
  ProblemArgs problem;
  OptimizerArgs opt;
  std::vector<std::string> modes{"vanqver", "standard"};
  std::vector<double> vanqver_bracket{0.01, 1.0};
  std::vector<double> standard_bracket{1.0, 20.0};
  double resolution = 0.05;
  int max_expansions = 12;
};

int cmd_tca(const TcaArgs& a) {
  std::vector<AnnealMode> modes;
  for (const auto& m : a.modes) modes.push_back(configure([&] { return parse_anneal_mode(m); }));
  if (a.vanqver_bracket[0] <= 0 || a.vanqver_bracket[1] <= a.vanqver_bracket[0] ||
      a.standard_bracket[0] <= 0 || a.standard_bracket[1] <= a.standard_bracket[0]) {
    throw UsageError("brackets need 0 < lo < hi");
  }
  const OptimizeConfig config = configure([&] { return a.opt.config(); });
  const Problem problem = configure([&] { return a.problem.load(); });

  std::cout << "mode,T_CA,T_fail,non_monotone,probes\n";
  std::vector<std::string> notes;
  std::optional<double> t_vanqver, t_standard;
  for (AnnealMode mode : modes) {
    const auto& br = mode == AnnealMode::vanqver ? a.vanqver_bracket : a.standard_bracket;
    TcaOptions o;
    o.t_lo = br[0];
    o.t_hi = br[1];
    o.relative_resolution = a.resolution;
    o.max_expansions = a.max_expansions;
    const TcaResult r = time_to_chemical_accuracy(problem, mode, config, o);
    std::cout << to_string(mode) << "," << format_double(r.t_ca) << ","
              << format_double(r.t_fail) << "," << (r.non_monotone ? "true" : "false") << ","
              << r.probes.size() << "\n";
    for (const auto& n : r.notes) notes.push_back(std::string(to_string(mode)) + ": " + n);
    (mode == AnnealMode::vanqver ? t_vanqver : t_standard) = r.t_ca;
  }
  if (t_vanqver && t_standard) {
    std::cout << "ratio_standard_over_vanqver," << fmt("%.6g", *t_standard / *t_vanqver) << "\n";
  }
  RunRecord key = keyed_record(problem, a.problem, AnnealMode::vanqver, 0.0, config);
  for (const auto& n : notes) std::cout << "# " << n << "\n";
  std::cout << "# config_hash=" << hash_of(key, problem) << "\n";
  return 0;
}

struct SweepArgs {
  ProblemArgs problem;
  OptimizerArgs opt;
  std::string mode = "vanqver";
  double T = 0.1;
  std::string variable;
  std::string grid;
  std::string out, json;
};

int cmd_sweep(const SweepArgs& a) {
  const SweepVariable variable = configure([&] { return parse_sweep_variable(a.variable); });
  const std::vector<double> grid = parse_grid(a.grid);
  SweepPoint base;
  base.T = a.T;
  base.distance = a.problem.d;
  base.mode = configure([&] { return parse_anneal_mode(a.mode); });
  base.config = configure([&] { return a.opt.config(); });
  configure([&] { return a.problem.options(); });
  // Resolve fixtures up front so a missing one is a configuration error.
  if (variable == SweepVariable::distance) {
    for (double d : grid) resolve_fixture_path(a.problem.fixture, d);
  } else {
    resolve_fixture_path(a.problem.fixture, a.problem.d);
  }
  const auto rows = sweep([&](std::optional<double> d) { return a.problem.load(d); }, variable,
                          grid, base, a.opt.jobs);

  std::string csv = csv_header();
  std::string json = "[";
  bool failed = false;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& row = rows[i];
    if (!row.ok) {
      failed = true;
      csv += "# error at " + std::string(to_string(variable)) + "=" + format_double(row.value) +
             ": " + row.error + "\n";
      continue;
    }
    const Problem problem = a.problem.load(row.record.distance);
    const std::string hash = hash_of(row.record, problem);
    csv += csv_row(row.record, hash);
    json += (json.size() > 1 ? ",\n" : "\n") + record_to_json(row.record, hash);
    store_record(row.record, hash);
  }
  json += "]\n";
  if (a.out.empty()) {
    std::cout << csv;
  } else {
    write_file(a.out, csv);
  }
  if (!a.json.empty()) write_file(a.json, json);
  return failed ? 1 : 0;
}

struct DiagnoseArgs {
  ProblemArgs problem;
  OptimizerArgs opt;
  double T = 0.1;
  int samples = 51;
  bool sector = false;
  bool groups = false;
  std::string params, plot_data, dump;
};

std::string trace_csv(const std::string& hash, const char* axis,
                      const std::vector<std::pair<double, double>>& rows) {
  std::string s = "# config_hash=" + hash + "\n" + axis + ",value\n";
  for (const auto& [x, v] : rows) s += format_double(x) + "," + format_double(v) + "\n";
  return s;
}

std::vector<std::pair<double, double>> pairs(const std::vector<TraceSample>& s) {
  std::vector<std::pair<double, double>> out;
  for (const auto& x : s) out.emplace_back(x.t, x.value);
  return out;
}

int cmd_diagnose(const DiagnoseArgs& a) {
  const OptimizeConfig config = configure([&] { return a.opt.config(); });
  const Problem problem = configure([&] { return a.problem.load(); });
  if (!a.dump.empty()) dump_hamiltonian(a.dump, problem);

  if (a.groups) {
    const MeasurementGrouping g = group_commuting(problem.h_fin());
    std::cout << "measurement groups for H_fin: " << g.groups.size() << " groups, "
              << problem.h_fin().size() << " terms\n";
    for (std::size_t k = 0; k < g.groups.size(); ++k) {
      std::string rot;
      for (int q = 0; q < g.n_qubits; ++q) {
        switch (g.groups[k].rotation[q]) {
          case BasisRotation::none: break;
          case BasisRotation::x_to_z: rot += " q" + std::to_string(q) + ":X->Z"; break;
          case BasisRotation::y_to_z: rot += " q" + std::to_string(q) + ":Y->Z"; break;
        }
      }
      std::cout << "group " << k << " (" << g.groups[k].terms.size()
                << " terms) rotate:" << (rot.empty() ? " none" : rot) << "\n";
      for (std::size_t t = 0; t < g.groups[k].terms.size(); ++t) {
        std::cout << "  " << fmt("%+.10f", g.groups[k].coefficients[t].real()) << " "
                  << g.groups[k].terms[t].to_letters() << "\n";
      }
    }
    if (a.plot_data.empty()) return 0;
  }

  const RunRecord key = keyed_record(problem, a.problem, AnnealMode::vanqver, a.T, config);
  const std::string hash = hash_of(key, problem);
  std::optional<RunRecord> source;
  if (!a.params.empty()) {
    source = configure([&] { return record_from_json(read_file(a.params)); });
  } else {
    source = cached_record(hash);
  }
  VariationalParams params = VariationalParams::initial(problem);
  int steps = config.n_time_steps;
  if (source) {
    params = source->best;
    configure([&] {
      params.validate(problem);
      return 0;
    });
    if (steps == 0) steps = source->n_time_steps;
  } else {
    std::cerr << "warning: no stored parameters for this configuration; using theta = 0 and "
                 "the initial eta\n";
  }
  VariationalParams bare = params;
  std::fill(bare.theta.begin(), bare.theta.end(), 0.0);
  const AnnealSpec nav = make_vanqver_spec(problem, params, a.T, steps);
  const AnnealSpec no_nav = make_vanqver_spec(problem, bare, a.T, steps);

  DiagnosticsOptions o;
  if (a.sector) o.sector = problem.basis();
  o.propagation = problem.options().propagation;
  const StateVector psi0 = problem.reference_state();
  const GapTrace gap_n = gap_trace(nav, a.samples, o);
  const GapTrace gap_0 = gap_trace(no_nav, a.samples, o);
  const OverlapTrace ov_n = overlap_trace(nav, psi0, a.samples, o);
  const OverlapTrace ov_0 = overlap_trace(no_nav, psi0, a.samples, o);
  const auto bound_n = adiabatic_bound(nav, a.samples, o);
  const auto bound_0 = adiabatic_bound(no_nav, a.samples, o);

  auto min_of = [](const std::vector<TraceSample>& s) {
    double m = s.front().value;
    for (const auto& x : s) m = std::min(m, x.value);
    return m;
  };
  std::cout << "parameters: " << (source ? "stored" : "initial (theta = 0)") << "\n"
            << "samples: " << a.samples << (a.sector ? " (particle sector)" : " (full register)")
            << "\n"
            << "min gap navigator: " << fmt("%.8f", min_of(gap_n.samples)) << "\n"
            << "min gap no navigator: " << fmt("%.8f", min_of(gap_0.samples)) << "\n"
            << "overlap at T navigator: " << fmt("%.8f", ov_n.samples.back().value) << "\n"
            << "overlap at T no navigator: " << fmt("%.8f", ov_0.samples.back().value) << "\n"
            << "min overlap navigator: " << fmt("%.8f", min_of(ov_n.samples)) << "\n"
            << "config_hash: " << hash << "\n";
  if (!ov_n.degenerate.empty() || !ov_0.degenerate.empty()) {
    std::cout << "note: degenerate ground space at some samples; projection norm used\n";
  }

  if (!a.plot_data.empty()) {
    const fs::path dir = a.plot_data;
    auto bound_pairs = [](const std::vector<BoundSample>& b) {
      std::vector<std::pair<double, double>> out;
      for (const auto& x : b) out.emplace_back(x.s, x.value);
      return out;
    };
    write_file(dir / "gap_navigator.csv", trace_csv(hash, "t", pairs(gap_n.samples)));
    write_file(dir / "gap_no_navigator.csv", trace_csv(hash, "t", pairs(gap_0.samples)));
    write_file(dir / "overlap_navigator.csv", trace_csv(hash, "t", pairs(ov_n.samples)));
    write_file(dir / "overlap_no_navigator.csv", trace_csv(hash, "t", pairs(ov_0.samples)));
    write_file(dir / "bound_navigator.csv", trace_csv(hash, "s", bound_pairs(bound_n)));
    write_file(dir / "bound_no_navigator.csv", trace_csv(hash, "s", bound_pairs(bound_0)));
  }
  return 0;
}

int cmd_fixtures_list() {
  std::cout << "name,n_spatial_orbitals,n_electrons,hf_energy,fci_energy\n";
  for (const auto& f : list_fixtures()) {
    std::cout << f.name << "," << f.n_spatial_orbitals << "," << f.n_electrons << ","
              << (f.hf_energy ? format_double(*f.hf_energy) : "") << ","
              << (f.fci_energy ? format_double(*f.fci_energy) : "") << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Variational adiabatic quantum eigensolver simulator"};
  app.set_config("--config", "", "key = value file with one [command] table per command");
  app.allow_config_extras(CLI::config_extras_mode::error);
  app.require_subcommand(1);

  RunArgs run;
  auto* c_run = app.add_subcommand("run", "optimize (vanqver) or anneal once (standard)");
  add_problem_options(c_run, run.problem);
  add_optimizer_options(c_run, run.opt);
  c_run->add_option("--mode", run.mode)->check(CLI::IsMember({"vanqver", "standard"}));
  c_run->add_option("--T", run.T, "annealing time")->check(CLI::NonNegativeNumber);
  c_run->add_option("--out", run.out, "write the JSON record here");
  c_run->add_option("--csv", run.csv, "write a one-row CSV summary here");
  c_run->add_option("--dump-hamiltonian", run.dump, "write H_fin as Pauli text");

  TcaArgs tca;
  auto* c_tca = app.add_subcommand("tca", "time to chemical accuracy for both modes");
  add_problem_options(c_tca, tca.problem);
  add_optimizer_options(c_tca, tca.opt);
  c_tca->add_option("--modes", tca.modes)->delimiter(',')->check(
      CLI::IsMember({"vanqver", "standard"}));
  c_tca->add_option("--bracket", tca.vanqver_bracket, "vanqver bracket lo,hi")
      ->delimiter(',')->expected(2);
  c_tca->add_option("--standard-bracket", tca.standard_bracket, "standard bracket lo,hi")
      ->delimiter(',')->expected(2);
  c_tca->add_option("--resolution", tca.resolution, "relative bisection resolution")
      ->check(CLI::PositiveNumber);
  c_tca->add_option("--max-expansions", tca.max_expansions)->check(CLI::NonNegativeNumber);

  SweepArgs sw;
  auto* c_sweep = app.add_subcommand("sweep", "one run per grid value, CSV table");
  add_problem_options(c_sweep, sw.problem);
  add_optimizer_options(c_sweep, sw.opt);
  c_sweep->add_option("--mode", sw.mode)->check(CLI::IsMember({"vanqver", "standard"}));
  c_sweep->add_option("--T", sw.T)->check(CLI::NonNegativeNumber);
  c_sweep->add_option("--variable", sw.variable)
      ->required()
      ->check(CLI::IsMember({"T", "distance", "tolerance"}));
  c_sweep->add_option("--grid", sw.grid, "comma-separated values")->required();
  c_sweep->add_option("--out", sw.out, "CSV path (default stdout)");
  c_sweep->add_option("--json", sw.json, "write all records as a JSON array");

  DiagnoseArgs dg;
  auto* c_diag = app.add_subcommand("diagnose", "gap, overlap and adiabatic-bound traces");
  add_problem_options(c_diag, dg.problem);
  add_optimizer_options(c_diag, dg.opt);
  c_diag->add_option("--T", dg.T)->check(CLI::NonNegativeNumber);
  c_diag->add_option("--samples", dg.samples)->check(CLI::Range(2, 100000));
  c_diag->add_option("--params", dg.params, "JSON record to take parameters from");
  c_diag->add_flag("--sector", dg.sector, "diagonalize in the reachable particle sector");
  c_diag->add_flag("--groups", dg.groups, "list qubit-wise measurement groups of H_fin");
  c_diag->add_option("--plot-data", dg.plot_data, "directory for trace CSVs");
  c_diag->add_option("--dump-hamiltonian", dg.dump, "write H_fin as Pauli text");

  auto* c_fix = app.add_subcommand("fixtures", "bundled fixtures");
  auto* c_fix_list = c_fix->add_subcommand("list", "list fixtures");
  c_fix->require_subcommand(1);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  auto report = [](const char* kind, const std::exception& e) {
    std::cerr << "error: " << kind << e.what() << "\n";
  };
  try {
    if (c_run->parsed()) return cmd_run(run);
    if (c_tca->parsed()) return cmd_tca(tca);
    if (c_sweep->parsed()) return cmd_sweep(sw);
    if (c_diag->parsed()) return cmd_diagnose(dg);
    if (c_fix_list->parsed()) return cmd_fixtures_list();
  } catch (const FixtureNotFound& e) {
    report("", e);
    return 2;
  } catch (const UsageError& e) {
    report("invalid configuration: ", e);
    return 2;
  } catch (const std::exception& e) {
    report("run failed: ", e);
    return 1;
  }
  return 2;
}
