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

#pragma once

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "vanqver/dynamics.hpp"
#include "vanqver/fermion.hpp"
#include "vanqver/fixture.hpp"
#include "vanqver/schedule.hpp"
#include "vanqver/subspace.hpp"

namespace vanqver {

/// Chemical accuracy in Hartree.
inline constexpr double kChemicalAccuracy = 1.5e-3;

enum class AnnealMode { vanqver, standard };
enum class GradientMethod { adjoint, finite_difference };
/// gradient_inf_norm: stop when max_i |dE/dx_i| <= epsilon_tol.
/// energy_delta: stop when an accepted step lowers E by <= epsilon_tol.
enum class Termination { gradient_inf_norm, energy_delta };

AnnealMode parse_anneal_mode(std::string_view name);
std::string_view to_string(AnnealMode mode);
GradientMethod parse_gradient_method(std::string_view name);
std::string_view to_string(GradientMethod method);
Termination parse_termination(std::string_view name);
std::string_view to_string(Termination termination);

struct ProblemOptions {
  SpinOrdering ordering = SpinOrdering::interleaved;
  PropagationOptions propagation{};
  double alpha = 1.0;
};

/**
 * Everything about one molecule that does not depend on the variational
 * parameters: the Hamiltonians, the excitation generators and their
 * restrictions to the subspace reachable from the reference determinant.
 */
class Problem {
 public:
  Problem(IntegralSet integrals, std::string name, ProblemOptions options = {},
          std::optional<FixtureInfo> info = std::nullopt);
  static Problem from_fixture(const Fixture& fixture, ProblemOptions options = {});

  const std::string& name() const noexcept { return name_; }
  const std::optional<FixtureInfo>& info() const noexcept { return info_; }
  const ProblemOptions& options() const noexcept { return options_; }
  const IntegralSet& integrals() const noexcept { return ints_; }
  const SpinOrbitalMap& map() const noexcept { return map_; }
  int n_qubits() const noexcept { return map_.n_spin_orbitals(); }

  const PauliSum& h_fin() const noexcept { return h_fin_; }
  const PauliSum& h_mp() const noexcept { return h_mp_; }
  const std::vector<Excitation>& excitations() const noexcept { return excitations_; }
  const std::vector<PauliSum>& generators() const noexcept { return generators_; }
  const std::vector<int>& sign_mask() const noexcept { return sign_mask_; }

  std::size_t n_eta() const noexcept { return sign_mask_.size(); }
  std::size_t n_theta() const noexcept { return excitations_.size(); }

  /// Reference determinant as a full-register state.
  StateVector reference_state() const;
  /// <ref|H_fin|ref>.
  double hf_energy() const noexcept { return e_hf_; }
  /// Ground energy of H_fin in the reachable sector.
  double fci_energy() const noexcept { return e_fci_; }

  const Subspace& basis() const noexcept { return basis_; }
  const SubspaceOperator& fin_op() const noexcept { return fin_op_; }
  const SubspaceOperator& mp_op() const noexcept { return mp_op_; }
  const std::vector<SubspaceOperator>& generator_ops() const noexcept {
    return generator_ops_;
  }
  /// Restricted diagonal of Z_p for every qubit p.
  const std::vector<std::vector<double>>& z_diagonals() const noexcept {
    return z_diag_;
  }
  std::size_t reference_index() const noexcept { return ref_index_; }

 private:
  std::string name_;
  std::optional<FixtureInfo> info_;
  ProblemOptions options_;
  IntegralSet ints_;
  SpinOrbitalMap map_;
  PauliSum h_fin_, h_mp_;
  std::vector<Excitation> excitations_;
  std::vector<PauliSum> generators_;
  std::vector<int> sign_mask_;
  double e_hf_ = 0.0, e_fci_ = 0.0;
  Subspace basis_;
  SubspaceOperator fin_op_, mp_op_;
  std::vector<SubspaceOperator> generator_ops_;
  std::vector<std::vector<double>> z_diag_;
  std::size_t ref_index_ = 0;
};

/// eta carries the fixed sign mask; theta is indexed like
/// Problem::excitations().
struct VariationalParams {
  std::vector<double> eta;
  std::vector<double> theta;

  /// eta = sign mask (|eta| = 1), theta = 0.
  static VariationalParams initial(const Problem& problem);
  /// Throws SignConstraintError / DimensionError on a violation.
  void validate(const Problem& problem, double eta_floor = 0.0) const;
};

/// Full-register spec of one VanQver anneal.
AnnealSpec make_vanqver_spec(const Problem& problem, const VariationalParams& params,
                             double T, int n_time_steps = 0);
/// Full-register spec of the standard anneal with H_ini = H_MP.
AnnealSpec make_standard_spec(const Problem& problem, double T, int n_time_steps = 0);

struct AnnealResult {
  double energy = 0.0;
  int n_time_steps = 0;
  std::vector<Complex> state;  ///< restricted to Problem::basis()

  StateVector full_state(const Problem& problem) const;
};

AnnealResult run_anneal(const Problem& problem, const VariationalParams& params,
                        double T, int n_time_steps = 0);
AnnealResult standard_aqc(const Problem& problem, double T, int n_time_steps = 0);

/// Gradient of E with respect to eta_p and theta_q (not log-magnitudes).
struct ParamGradient {
  double energy = 0.0;
  std::vector<double> d_eta;
  std::vector<double> d_theta;
};

/// Exact gradient of the discretized propagator, by a backward costate pass.
ParamGradient adjoint_gradient(const Problem& problem, const VariationalParams& params,
                               double T, int n_time_steps);
/// Central differences: step theta_step on theta, eta_step on |eta|.
ParamGradient finite_difference_gradient(const Problem& problem,
                                         const VariationalParams& params, double T,
                                         int n_time_steps, double theta_step = 1e-4,
                                         double eta_step = 1e-3, int jobs = 1);

struct OptimizeConfig {
  double epsilon_tol = 1e-3;
  int max_iterations = 500;
  GradientMethod gradient = GradientMethod::adjoint;
  Termination termination = Termination::gradient_inf_norm;
  double theta_step = 1e-4;
  double eta_step = 1e-3;
  double eta_floor = 1e-3;
  /// 0: default_time_steps at the initial parameters, raised if an iterate
  /// needs more.
  int n_time_steps = 0;
  /// Worker threads for finite-difference probes.
  int jobs = 1;
};

struct TrajectoryEntry {
  int iteration = 0;
  std::vector<double> eta;
  std::vector<double> theta;
  double energy = 0.0;
  double gradient_norm = 0.0;  ///< infinity norm in optimizer coordinates
};

struct RunRecord {
  std::string problem;
  std::optional<double> distance;  ///< geometry parameter, when one applies
  AnnealMode mode = AnnealMode::vanqver;
  double T = 0.0;
  OptimizeConfig config;
  std::vector<TrajectoryEntry> trajectory;
  double final_energy = 0.0;  ///< best energy seen
  VariationalParams best;
  double e_fci = 0.0;
  double e_hf = 0.0;
  int n_iterations = 0;
  int n_evaluations = 0;
  int n_time_steps = 0;  ///< discretization behind final_energy
  bool converged = false;
  std::string message;
  double wall_time = 0.0;

  double error() const noexcept { return final_energy - e_fci; }
  bool chemically_accurate() const noexcept {
    return std::abs(error()) <= kChemicalAccuracy;
  }
};

/// BFGS over (log-magnitudes of eta above the floor, theta) from
/// VariationalParams::initial. Never throws on non-convergence.
RunRecord optimize(const Problem& problem, double T, const OptimizeConfig& config = {});
/// RunRecord of one standard anneal (no optimization).
RunRecord standard_record(const Problem& problem, double T, int n_time_steps = 0);

// ---------------------------------------------------------------------------
// Time to chemical accuracy

class BracketError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct TcaOptions {
  double t_lo = 0.01;
  double t_hi = 1.0;
  double relative_resolution = 0.05;
  int max_expansions = 12;
};

struct TcaProbe {
  double T = 0.0;
  double energy = 0.0;
  int iterations = 0;
  bool success = false;
};

struct TcaResult {
  AnnealMode mode = AnnealMode::vanqver;
  double t_ca = 0.0;
  double t_fail = 0.0;  ///< largest failing T of the final bracket
  bool non_monotone = false;
  std::vector<TcaProbe> probes;  ///< in evaluation order
  std::vector<std::string> notes;
};

/// Geometric bisection for the smallest T with |E(T) - E_FCI| <= chemical
/// accuracy. Expands or shrinks the bracket as needed and flags any
/// observed non-monotonicity. Throws BracketError when expansion fails.
TcaResult time_to_chemical_accuracy(const Problem& problem, AnnealMode mode,
                                    const OptimizeConfig& config,
                                    const TcaOptions& options = {});

// ---------------------------------------------------------------------------
// Sweeps

enum class SweepVariable { T, distance, tolerance };
SweepVariable parse_sweep_variable(std::string_view name);
std::string_view to_string(SweepVariable variable);

struct SweepPoint {
  double T = 0.1;
  std::optional<double> distance;  ///< for a distance-dependent family
  AnnealMode mode = AnnealMode::vanqver;
  OptimizeConfig config;
};

struct SweepRow {
  double value = 0.0;
  bool ok = false;
  std::string error;
  RunRecord record;
};

/// One run per grid value, each on the problem returned by `problem_at`
/// for that point's distance (nullopt when the family has none). Failures are recorded per row. Rows are in
/// grid order whatever the worker count.
std::vector<SweepRow> sweep(const std::function<Problem(std::optional<double> distance)>& problem_at,
                            SweepVariable variable, const std::vector<double>& grid,
                            const SweepPoint& base, int jobs = 1);

}  // namespace vanqver
