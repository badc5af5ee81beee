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
#include <span>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "vanqver/pauli.hpp"
#include "vanqver/schedule.hpp"
#include "vanqver/subspace.hpp"

namespace vanqver {

/// Raised when the propagated norm drifts beyond tolerance.
class NormDriftError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Amplitudes over the 2^n computational basis (qubit 0 = most significant).
class StateVector {
 public:
  StateVector() = default;
  StateVector(int n_qubits, std::vector<Complex> amplitudes);

  static StateVector basis_state(int n_qubits, std::uint64_t basis);

  int n_qubits() const noexcept { return n_qubits_; }
  std::size_t dim() const noexcept { return amps_.size(); }
  std::span<const Complex> amplitudes() const noexcept { return amps_; }
  std::span<Complex> amplitudes() noexcept { return amps_; }
  Complex operator[](std::size_t k) const { return amps_[k]; }

  double norm() const;
  void normalize();
  /// <this|other>
  Complex inner(const StateVector& other) const;

 private:
  int n_qubits_ = 0;
  std::vector<Complex> amps_;
};

/// Ascending eigenvalues with optional column eigenvectors.
struct Spectrum {
  Eigen::VectorXd eigenvalues;
  Eigen::MatrixXcd eigenvectors;  ///< empty when not requested

  bool has_vectors() const noexcept { return eigenvectors.size() != 0; }
};

struct PropagationOptions {
  /// Dense scaling-and-squaring exponential at or below this dimension,
  /// Lanczos exp-times-vector above it.
  std::size_t dense_expm_max_dim = 16;
  /// Instantaneous Hamiltonians are densified for matvecs up to this size.
  std::size_t dense_matvec_max_dim = 1024;
  int krylov_max_dim = 30;
  double krylov_tol = 1e-12;
  /// Allowed |norm - 1| at the end of a propagation.
  double norm_tol = 1e-8;
};

using MatVec = std::function<void(const Complex* x, Complex* y)>;

/// v <- exp(-i dt H) v for Hermitian H given by its matvec, via Lanczos
/// with full reorthogonalization. Returns the largest Krylov dimension used.
int expv_lanczos(double dt, const MatVec& h, std::span<Complex> v,
                 int max_dim = 30, double tol = 1e-12);

/**
 * Propagates restricted states under A(t) H_ini + B(t) H_fin + C(t) H_nav.
 *
 * The three operators are borrowed and must outlive the engine. Each step
 * applies exp(-i dt H(t_mid)) with H taken at the interval midpoint.
 */
class AnnealEngine {
 public:
  AnnealEngine(const SubspaceOperator& h_ini, const SubspaceOperator& h_fin,
               const SubspaceOperator& h_nav, Schedule schedule,
               PropagationOptions options = {});

  std::size_t dim() const noexcept { return dim_; }
  const Schedule& schedule() const noexcept { return schedule_; }
  const PropagationOptions& options() const noexcept { return options_; }

  /// psi <- exp(-i dt H(t)) psi.
  void step(double t, double dt, std::span<Complex> psi);
  /// psi <- exp(-i dt H) psi for explicit schedule weights.
  void step_weights(const ScheduleWeights& w, double dt, std::span<Complex> psi);

  /// y = H(w) x
  void apply(const ScheduleWeights& w, const Complex* x, Complex* y);

  /// Runs `steps` midpoint steps over [0, T]. observer(k, psi) sees the
  /// state after step k (1-based).
  void propagate(int steps, std::span<Complex> psi,
                 const std::function<void(int, std::span<const Complex>)>&
                     observer = {});

 private:
  void assemble(const ScheduleWeights& w);

  const SubspaceOperator* ops_[3];
  Schedule schedule_;
  PropagationOptions options_;
  std::size_t dim_ = 0;
  bool real_ = true;
  bool dense_ = true;
  // Per-operator dense forms and the assembled combination.
  std::vector<double> dense_real_[3];
  std::vector<Complex> dense_complex_[3];
  std::vector<double> h_real_;
  std::vector<Complex> h_complex_;
  ScheduleWeights assembled_{-1.0, -1.0, -1.0};
  bool have_assembled_ = false;
  std::vector<Complex> scratch_;
};

/// Propagation subspace for an anneal started from psi0.
Subspace propagation_subspace(const AnnealSpec& spec, const StateVector& psi0);

/// psi(T) under the time-ordered exponential of the spec.
StateVector evolve(const AnnealSpec& spec, const StateVector& psi0,
                   const PropagationOptions& options = {});

struct TimedState {
  double t = 0.0;
  StateVector state;
};

/// States at n_samples uniform times including both endpoints. The main
/// propagation chain is the one evolve() runs; off-grid samples branch off
/// it with a partial step.
std::vector<TimedState> evolve_trace(const AnnealSpec& spec,
                                     const StateVector& psi0, int n_samples,
                                     const PropagationOptions& options = {});

/// Lowest k eigenpairs (k < 0: all) of the dense matrix of h.
Spectrum full_spectrum(const PauliSum& h, int k = -1, bool with_vectors = true,
                       int qubit_cap = kDefaultDenseQubitCap);

/// Lowest k eigenpairs of h restricted to a subspace closed under it.
/// Eigenvectors are returned embedded in the full register.
Spectrum subspace_spectrum(const PauliSum& h, const Subspace& basis, int k = -1,
                           bool with_vectors = true);

/// <psi|h|psi>; throws if the imaginary residual exceeds 1e-10.
double expectation(const StateVector& state, const PauliSum& h);

}  // namespace vanqver
