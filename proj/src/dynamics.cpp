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

#include "vanqver/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <unsupported/Eigen/MatrixFunctions>

#include "vanqver/kernels.hpp"

namespace vanqver {

// ---------------------------------------------------------------------------
// StateVector

StateVector::StateVector(int n_qubits, std::vector<Complex> amplitudes)
    : n_qubits_(n_qubits), amps_(std::move(amplitudes)) {
  if (n_qubits < 1 || n_qubits > 30) throw std::invalid_argument("bad qubit count");
  if (amps_.size() != (std::size_t{1} << n_qubits)) {
    throw DimensionError("state needs 2^" + std::to_string(n_qubits) +
                         " amplitudes, got " + std::to_string(amps_.size()));
  }
}

StateVector StateVector::basis_state(int n_qubits, std::uint64_t basis) {
  std::vector<Complex> amps(std::size_t{1} << n_qubits);
  if (basis >= amps.size()) throw std::out_of_range("basis label outside register");
  amps[basis] = 1.0;
  return StateVector(n_qubits, std::move(amps));
}

double StateVector::norm() const { return std::sqrt(kernels::norm2(amps_)); }

void StateVector::normalize() {
  const double n = norm();
  if (n == 0.0) throw std::invalid_argument("cannot normalize the zero vector");
  for (auto& a : amps_) a /= n;
}

Complex StateVector::inner(const StateVector& other) const {
  if (other.dim() != dim()) throw DimensionError("state dimension mismatch");
  return kernels::dotc(amps_, other.amps_);
}

// ---------------------------------------------------------------------------
// Lanczos exponential

namespace {

int expv_once(double dt, const MatVec& h, std::span<Complex> v, int max_dim,
              double tol, bool& converged) {
  const std::size_t n = v.size();
  const double beta = std::sqrt(kernels::norm2(v));
  converged = true;
  if (beta == 0.0 || dt == 0.0) return 0;
  const int m_cap = static_cast<int>(std::min<std::size_t>(max_dim, n));

  std::vector<std::vector<Complex>> basis;
  basis.reserve(m_cap);
  basis.emplace_back(v.begin(), v.end());
  for (auto& a : basis[0]) a /= beta;
  std::vector<double> alpha, off;
  std::vector<Complex> w(n);
  Eigen::VectorXcd y;
  int m = 0;
  converged = false;
  for (int j = 0; j < m_cap; ++j) {
    h(basis[j].data(), w.data());
    const double a = kernels::dotc(basis[j], w).real();
    kernels::axpy(-a, basis[j], w);
    if (j > 0) kernels::axpy(-off[j - 1], basis[j - 1], w);
    for (int i = 0; i <= j; ++i) {
      const Complex c = kernels::dotc(basis[i], w);
      kernels::axpy(-c, basis[i], w);
    }
    const double b = std::sqrt(kernels::norm2(w));
    alpha.push_back(a);
    m = j + 1;

    Eigen::VectorXd diag = Eigen::Map<Eigen::VectorXd>(alpha.data(), m);
    Eigen::VectorXd sub = m > 1 ? Eigen::VectorXd(Eigen::Map<Eigen::VectorXd>(off.data(), m - 1))
                                : Eigen::VectorXd();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
    es.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
    const Eigen::MatrixXd& q = es.eigenvectors();
    Eigen::VectorXcd phases(m);
    for (int k = 0; k < m; ++k) {
      phases[k] = std::exp(Complex{0.0, -dt * es.eigenvalues()[k]}) * q(0, k);
    }
    y = q.cast<Complex>() * phases;

    const bool invariant = b <= 1e-14 * std::max(1.0, std::abs(a));
    if (invariant || b * std::abs(y[m - 1]) < tol) {
      converged = true;
      break;
    }
    if (j + 1 < m_cap) {
      off.push_back(b);
      basis.emplace_back(w);
      for (auto& x : basis.back()) x /= b;
    }
  }
  if (!converged) return m;
  std::fill(v.begin(), v.end(), Complex{});
  for (int k = 0; k < m; ++k) kernels::axpy(beta * y[k], basis[k], v);
  return m;
}

}  // namespace

int expv_lanczos(double dt, const MatVec& h, std::span<Complex> v, int max_dim,
                 double tol) {
  bool converged = false;
  std::vector<Complex> backup(v.begin(), v.end());
  int used = expv_once(dt, h, v, max_dim, tol, converged);
  if (converged) return used;
  // Too large a step for the Krylov budget: halve it.
  std::copy(backup.begin(), backup.end(), v.begin());
  int depth = 0;
  int pieces = 2;
  while (depth < 20) {
    bool all = true;
    for (int p = 0; p < pieces && all; ++p) {
      used = std::max(used, expv_once(dt / pieces, h, v, max_dim, tol, converged));
      all = converged;
    }
    if (all) return used;
    std::copy(backup.begin(), backup.end(), v.begin());
    pieces *= 2;
    ++depth;
  }
  throw std::runtime_error("Lanczos exponential failed to converge");
}

// ---------------------------------------------------------------------------
// AnnealEngine

AnnealEngine::AnnealEngine(const SubspaceOperator& h_ini,
                           const SubspaceOperator& h_fin,
                           const SubspaceOperator& h_nav, Schedule schedule,
                           PropagationOptions options)
    : ops_{&h_ini, &h_fin, &h_nav},
      schedule_(schedule),
      options_(options),
      dim_(h_fin.dim()) {
  for (const auto* op : ops_) {
    if (op->dim() != dim_) throw DimensionError("anneal operators differ in dimension");
    real_ = real_ && op->is_real();
  }
  dense_ = dim_ <= options_.dense_matvec_max_dim || dim_ <= options_.dense_expm_max_dim;
  if (dense_) {
    for (int k = 0; k < 3; ++k) {
      if (ops_[k]->empty()) continue;
      if (real_) {
        dense_real_[k].assign(dim_ * dim_, 0.0);
        ops_[k]->add_to(1.0, dense_real_[k].data());
      } else {
        dense_complex_[k].assign(dim_ * dim_, Complex{});
        ops_[k]->add_to(Complex{1.0, 0.0}, dense_complex_[k].data());
      }
    }
  }
  scratch_.resize(dim_);
}

void AnnealEngine::assemble(const ScheduleWeights& w) {
  if (have_assembled_ && w.a == assembled_.a && w.b == assembled_.b &&
      w.c == assembled_.c) {
    return;
  }
  const double weights[3] = {w.a, w.b, w.c};
  const std::size_t size = dim_ * dim_;
  if (real_) {
    h_real_.assign(size, 0.0);
    for (int k = 0; k < 3; ++k) {
      if (weights[k] == 0.0 || dense_real_[k].empty()) continue;
      const double s = weights[k];
      const double* src = dense_real_[k].data();
      double* dst = h_real_.data();
      for (std::size_t e = 0; e < size; ++e) dst[e] += s * src[e];
    }
  } else {
    h_complex_.assign(size, Complex{});
    for (int k = 0; k < 3; ++k) {
      if (weights[k] == 0.0 || dense_complex_[k].empty()) continue;
      kernels::active().axpy(size, weights[k], dense_complex_[k].data(),
                             h_complex_.data());
    }
  }
  assembled_ = w;
  have_assembled_ = true;
}

void AnnealEngine::apply(const ScheduleWeights& w, const Complex* x, Complex* y) {
  if (dense_) {
    assemble(w);
    if (real_) {
      kernels::active().gemv_real(dim_, dim_, h_real_.data(), x, y);
    } else {
      kernels::active().gemv(dim_, dim_, h_complex_.data(), x, y);
    }
    return;
  }
  std::fill(y, y + dim_, Complex{});
  const double weights[3] = {w.a, w.b, w.c};
  for (int k = 0; k < 3; ++k) {
    if (weights[k] != 0.0) ops_[k]->apply_add(weights[k], x, y);
  }
}

void AnnealEngine::step_weights(const ScheduleWeights& w, double dt,
                                std::span<Complex> psi) {
  if (psi.size() != dim_) throw DimensionError("state does not match engine dimension");
  if (dt == 0.0) return;
  if (dim_ <= options_.dense_expm_max_dim) {
    assemble(w);
    const Eigen::Index d = static_cast<Eigen::Index>(dim_);
    Eigen::MatrixXcd h(d, d);
    for (Eigen::Index r = 0; r < d; ++r) {
      for (Eigen::Index c = 0; c < d; ++c) {
        h(r, c) = real_ ? Complex{h_real_[r * d + c], 0.0} : h_complex_[r * d + c];
      }
    }
    const Eigen::MatrixXcd u = (Complex{0.0, -dt} * h).exp();
    Eigen::Map<Eigen::VectorXcd> v(psi.data(), d);
    Eigen::VectorXcd out = u * v;
    v = out;
    return;
  }
  expv_lanczos(
      dt, [&](const Complex* x, Complex* y) { apply(w, x, y); }, psi,
      options_.krylov_max_dim, options_.krylov_tol);
}

void AnnealEngine::step(double t, double dt, std::span<Complex> psi) {
  step_weights(schedule_.evaluate(t), dt, psi);
}

void AnnealEngine::propagate(
    int steps, std::span<Complex> psi,
    const std::function<void(int, std::span<const Complex>)>& observer) {
  const double T = schedule_.T();
  if (T == 0.0) return;
  if (steps < 1) throw std::invalid_argument("step count must be positive");
  const double dt = T / steps;
  for (int k = 0; k < steps; ++k) {
    const double t_mid = std::min((k + 0.5) * dt, T);
    step(t_mid, dt, psi);
    if (observer) observer(k + 1, psi);
  }
}

// ---------------------------------------------------------------------------
// evolve

namespace {

void check_initial_state(const AnnealSpec& spec, const StateVector& psi0,
                         double tol) {
  spec.validate();
  if (psi0.n_qubits() != spec.n_qubits()) {
    throw DimensionError("initial state has " + std::to_string(psi0.n_qubits()) +
                         " qubits, spec has " + std::to_string(spec.n_qubits()));
  }
  if (std::abs(psi0.norm() - 1.0) > tol) {
    throw std::invalid_argument("initial state is not normalized");
  }
}

void finish_norm(std::vector<Complex>& psi, double tol) {
  const double n = std::sqrt(kernels::norm2(psi));
  if (std::abs(n - 1.0) > tol) {
    throw NormDriftError("norm drifted to " + std::to_string(n) +
                         "; increase the number of time steps");
  }
  for (auto& a : psi) a /= n;
}

struct RestrictedSpec {
  Subspace basis;
  SubspaceOperator ini, fin, nav;
};

RestrictedSpec restrict_spec(const AnnealSpec& spec, const StateVector& psi0) {
  RestrictedSpec r;
  r.basis = propagation_subspace(spec, psi0);
  r.ini = SubspaceOperator(spec.h_ini, r.basis);
  r.fin = SubspaceOperator(spec.h_fin, r.basis);
  r.nav = SubspaceOperator(spec.h_nav, r.basis);
  return r;
}

int step_count(const AnnealSpec& spec) {
  return spec.n_time_steps > 0 ? spec.n_time_steps : default_time_steps(spec);
}

}  // namespace

Subspace propagation_subspace(const AnnealSpec& spec, const StateVector& psi0) {
  std::vector<std::uint64_t> seeds;
  for (std::size_t b = 0; b < psi0.dim(); ++b) {
    if (psi0[b] != Complex{}) seeds.push_back(b);
  }
  const PauliSum* ops[] = {&spec.h_ini, &spec.h_fin, &spec.h_nav};
  return Subspace::closure(spec.n_qubits(), seeds, ops);
}

StateVector evolve(const AnnealSpec& spec, const StateVector& psi0,
                   const PropagationOptions& options) {
  check_initial_state(spec, psi0, options.norm_tol);
  if (spec.schedule.T() == 0.0) return psi0;
  RestrictedSpec r = restrict_spec(spec, psi0);
  AnnealEngine engine(r.ini, r.fin, r.nav, spec.schedule, options);
  std::vector<Complex> psi = r.basis.restrict_vector(psi0.amplitudes());
  engine.propagate(step_count(spec), psi);
  finish_norm(psi, options.norm_tol);
  return StateVector(spec.n_qubits(), r.basis.embed(psi));
}

std::vector<TimedState> evolve_trace(const AnnealSpec& spec,
                                     const StateVector& psi0, int n_samples,
                                     const PropagationOptions& options) {
  if (n_samples < 2) throw std::invalid_argument("need at least two samples");
  check_initial_state(spec, psi0, options.norm_tol);
  const double T = spec.schedule.T();
  std::vector<TimedState> out;
  out.reserve(n_samples);
  if (T == 0.0) {
    for (int j = 0; j < n_samples; ++j) out.push_back({0.0, psi0});
    return out;
  }
  RestrictedSpec r = restrict_spec(spec, psi0);
  AnnealEngine engine(r.ini, r.fin, r.nav, spec.schedule, options);
  std::vector<Complex> psi = r.basis.restrict_vector(psi0.amplitudes());
  const int steps = step_count(spec);
  const double dt = T / steps;

  auto emit = [&](double t, std::vector<Complex> state) {
    finish_norm(state, options.norm_tol);
    out.push_back({t, StateVector(spec.n_qubits(), r.basis.embed(state))});
  };
  int next = 0;
  auto sample_time = [&](int j) {
    return j == n_samples - 1 ? T : T * j / (n_samples - 1);
  };
  for (int k = 0; k <= steps && next < n_samples; ++k) {
    const double t_k = k == steps ? T : k * dt;
    const double t_next = k == steps ? T : (k + 1) * dt;
    while (next < n_samples) {
      const double ts = sample_time(next);
      const bool last_interval = k == steps;
      if (!last_interval && ts >= t_next - 1e-12 * T) break;
      if (std::abs(ts - t_k) <= 1e-12 * T || last_interval) {
        emit(ts, psi);
      } else {
        std::vector<Complex> branch = psi;
        const double partial = ts - t_k;
        engine.step(t_k + 0.5 * partial, partial, branch);
        emit(ts, std::move(branch));
      }
      ++next;
    }
    if (k < steps) engine.step(std::min((k + 0.5) * dt, T), dt, psi);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Spectra and expectations

namespace {

Spectrum truncate_spectrum(const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd>& es,
                           int k, bool with_vectors) {
  const Eigen::Index n = es.eigenvalues().size();
  const Eigen::Index keep = k < 0 ? n : std::min<Eigen::Index>(k, n);
  Spectrum s;
  s.eigenvalues = es.eigenvalues().head(keep);
  if (with_vectors) s.eigenvectors = es.eigenvectors().leftCols(keep);
  return s;
}

}  // namespace

Spectrum full_spectrum(const PauliSum& h, int k, bool with_vectors, int qubit_cap) {
  const Eigen::MatrixXcd m = to_matrix(h, qubit_cap);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(
      m, with_vectors ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly);
  return truncate_spectrum(es, k, with_vectors);
}

Spectrum subspace_spectrum(const PauliSum& h, const Subspace& basis, int k,
                           bool with_vectors) {
  const SubspaceOperator op(h, basis);
  const Eigen::Index d = static_cast<Eigen::Index>(basis.dim());
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(d, d);
  op.add_to(Complex{1.0, 0.0}, m.data());  // column-major transpose of H
  m.transposeInPlace();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(
      m, with_vectors ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly);
  Spectrum restricted = truncate_spectrum(es, k, with_vectors);
  if (!with_vectors) return restricted;
  Spectrum s;
  s.eigenvalues = restricted.eigenvalues;
  const Eigen::Index full = Eigen::Index{1} << basis.n_qubits();
  s.eigenvectors = Eigen::MatrixXcd::Zero(full, restricted.eigenvectors.cols());
  for (Eigen::Index r = 0; r < d; ++r) {
    s.eigenvectors.row(static_cast<Eigen::Index>(basis.state(r))) =
        restricted.eigenvectors.row(r);
  }
  return s;
}

double expectation(const StateVector& state, const PauliSum& h) {
  if (h.n_qubits() != 0 && h.n_qubits() != state.n_qubits()) {
    throw DimensionError("state and operator registers differ");
  }
  if (std::abs(state.norm() - 1.0) > 1e-8) {
    throw std::invalid_argument("expectation requires a normalized state");
  }
  if (h.empty()) return 0.0;
  std::vector<Complex> hpsi(state.dim());
  apply(h, state.amplitudes(), hpsi);
  const Complex value = kernels::dotc(state.amplitudes(), hpsi);
  if (std::abs(value.imag()) > 1e-10) {
    throw std::logic_error("expectation has imaginary residual " +
                           std::to_string(value.imag()));
  }
  return value.real();
}

}  // namespace vanqver
