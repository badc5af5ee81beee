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

#include "vanqver/vanqver.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <limits>
#include <map>
#include <memory>
#include <thread>

#include <Eigen/Dense>

#include "vanqver/kernels.hpp"

namespace vanqver {

AnnealMode parse_anneal_mode(std::string_view name) {
  if (name == "vanqver") return AnnealMode::vanqver;
  if (name == "standard") return AnnealMode::standard;
  throw std::invalid_argument("unknown mode: " + std::string(name));
}

std::string_view to_string(AnnealMode mode) {
  return mode == AnnealMode::vanqver ? "vanqver" : "standard";
}

GradientMethod parse_gradient_method(std::string_view name) {
  if (name == "adjoint") return GradientMethod::adjoint;
  if (name == "fd" || name == "finite-difference") return GradientMethod::finite_difference;
  throw std::invalid_argument("unknown gradient method: " + std::string(name));
}

std::string_view to_string(GradientMethod method) {
  return method == GradientMethod::adjoint ? "adjoint" : "fd";
}

Termination parse_termination(std::string_view name) {
  if (name == "gradient") return Termination::gradient_inf_norm;
  if (name == "energy") return Termination::energy_delta;
  throw std::invalid_argument("unknown termination rule: " + std::string(name));
}

std::string_view to_string(Termination termination) {
  return termination == Termination::gradient_inf_norm ? "gradient" : "energy";
}

SweepVariable parse_sweep_variable(std::string_view name) {
  if (name == "T") return SweepVariable::T;
  if (name == "d" || name == "distance") return SweepVariable::distance;
  if (name == "tol" || name == "tolerance") return SweepVariable::tolerance;
  throw std::invalid_argument("unknown sweep variable: " + std::string(name));
}

std::string_view to_string(SweepVariable variable) {
  switch (variable) {
    case SweepVariable::T: return "T";
    case SweepVariable::distance: return "distance";
    case SweepVariable::tolerance: return "tolerance";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Problem

Problem::Problem(IntegralSet integrals, std::string name, ProblemOptions options,
                 std::optional<FixtureInfo> info)
    : name_(std::move(name)),
      info_(std::move(info)),
      options_(options),
      ints_(std::move(integrals)) {
  map_ = SpinOrbitalMap::aufbau(ints_, options_.ordering);
  h_fin_ = build_final_hamiltonian(ints_, map_);
  h_mp_ = build_mp_hamiltonian(ints_, map_);
  excitations_ = singles_doubles(map_);
  generators_.reserve(excitations_.size());
  for (const auto& ex : excitations_) generators_.push_back(excitation_generator(ex, map_));
  sign_mask_ = reference_sign_mask(map_);

  const int n = n_qubits();
  const std::uint64_t ref = map_.reference_basis_state();
  std::vector<const PauliSum*> ops{&h_fin_, &h_mp_};
  for (const auto& g : generators_) ops.push_back(&g);
  basis_ = Subspace::closure(n, std::span(&ref, 1), ops);
  ref_index_ = *basis_.index_of(ref);

  fin_op_ = SubspaceOperator(h_fin_, basis_);
  mp_op_ = SubspaceOperator(h_mp_, basis_);
  generator_ops_.reserve(generators_.size());
  for (const auto& g : generators_) generator_ops_.emplace_back(g, basis_);

  const PauliString probe(n);
  z_diag_.assign(n, std::vector<double>(basis_.dim()));
  for (int p = 0; p < n; ++p) {
    const std::uint64_t bit = probe.qubit_bit(p);
    for (std::size_t k = 0; k < basis_.dim(); ++k) {
      z_diag_[p][k] = (basis_.state(k) & bit) ? -1.0 : 1.0;
    }
  }

  std::vector<Complex> e_ref(basis_.dim());
  e_ref[ref_index_] = 1.0;
  e_hf_ = fin_op_.sandwich(e_ref.data(), e_ref.data()).real();
  e_fci_ = subspace_spectrum(h_fin_, basis_, 1, false).eigenvalues(0);
}

Problem Problem::from_fixture(const Fixture& fixture, ProblemOptions options) {
  return Problem(fixture.integrals, fixture.info.name, options, fixture.info);
}

StateVector Problem::reference_state() const {
  return StateVector::basis_state(n_qubits(), map_.reference_basis_state());
}

// ---------------------------------------------------------------------------
// Parameters and specs

VariationalParams VariationalParams::initial(const Problem& problem) {
  VariationalParams p;
  p.eta.assign(problem.sign_mask().begin(), problem.sign_mask().end());
  p.theta.assign(problem.n_theta(), 0.0);
  return p;
}

void VariationalParams::validate(const Problem& problem, double eta_floor) const {
  if (eta.size() != problem.n_eta() || theta.size() != problem.n_theta()) {
    throw DimensionError("parameter vector sizes do not match the problem");
  }
  const auto& mask = problem.sign_mask();
  for (std::size_t p = 0; p < eta.size(); ++p) {
    if (!(eta[p] * mask[p] > 0.0) || std::abs(eta[p]) < eta_floor) {
      throw SignConstraintError("eta[" + std::to_string(p) +
                                "] violates the sign mask or the floor");
    }
  }
}

namespace {

PauliSum navigator_sum(const Problem& problem, std::span<const double> theta) {
  PauliSum nav(problem.n_qubits());
  for (std::size_t q = 0; q < theta.size(); ++q) {
    if (theta[q] != 0.0) nav += theta[q] * problem.generators()[q];
  }
  return nav;
}

PauliSum initial_sum(const Problem& problem, std::span<const double> eta) {
  PauliSum h(problem.n_qubits());
  for (std::size_t p = 0; p < eta.size(); ++p) {
    h.add_term(PauliString::single(problem.n_qubits(), static_cast<int>(p), PauliLetter::Z),
               eta[p]);
  }
  return h;
}

int vanqver_default_steps(const Problem& problem, const VariationalParams& params,
                          double T) {
  AnnealSpec spec;
  spec.h_ini = initial_sum(problem, params.eta);
  spec.h_fin = problem.h_fin();
  spec.h_nav = navigator_sum(problem, params.theta);
  spec.schedule = Schedule(T, problem.options().alpha);
  return default_time_steps(spec);
}

/// Restricted operators of one anneal plus an engine over them.
struct Anneal {
  SubspaceOperator ini;
  SubspaceOperator nav;
  std::unique_ptr<AnnealEngine> engine;
  int steps = 0;

  Anneal(const Problem& problem, SubspaceOperator ini_op, SubspaceOperator nav_op,
         double T, int n_steps)
      : ini(std::move(ini_op)), nav(std::move(nav_op)), steps(n_steps) {
    engine = std::make_unique<AnnealEngine>(ini, problem.fin_op(), nav,
                                            Schedule(T, problem.options().alpha),
                                            problem.options().propagation);
  }
};

SubspaceOperator restricted_initial(const Problem& problem, std::span<const double> eta) {
  return SubspaceOperator(initial_sum(problem, eta), problem.basis());
}

SubspaceOperator restricted_navigator(const Problem& problem,
                                      std::span<const double> theta) {
  std::vector<const SubspaceOperator*> ops;
  for (const auto& g : problem.generator_ops()) ops.push_back(&g);
  if (ops.empty()) return SubspaceOperator(PauliSum(problem.n_qubits()), problem.basis());
  return SubspaceOperator::linear_combination(theta, ops, problem.basis().dim());
}

std::vector<Complex> reference_vector(const Problem& problem) {
  std::vector<Complex> v(problem.basis().dim());
  v[problem.reference_index()] = 1.0;
  return v;
}

double finish(const Problem& problem, std::vector<Complex>& psi) {
  const double n = std::sqrt(kernels::norm2(psi));
  if (std::abs(n - 1.0) > problem.options().propagation.norm_tol) {
    throw NormDriftError("norm drifted to " + std::to_string(n) +
                         "; increase the number of time steps");
  }
  for (auto& a : psi) a /= n;
  return problem.fin_op().sandwich(psi.data(), psi.data()).real();
}

}  // namespace

AnnealSpec make_vanqver_spec(const Problem& problem, const VariationalParams& params,
                             double T, int n_time_steps) {
  params.validate(problem);
  AnnealSpec spec;
  spec.h_ini = build_initial_hamiltonian(params.eta, problem.map());
  spec.h_fin = problem.h_fin();
  spec.h_nav = navigator_sum(problem, params.theta);
  spec.schedule = Schedule(T, problem.options().alpha);
  spec.n_time_steps = n_time_steps;
  return spec;
}

AnnealSpec make_standard_spec(const Problem& problem, double T, int n_time_steps) {
  AnnealSpec spec;
  spec.h_ini = problem.h_mp();
  spec.h_fin = problem.h_fin();
  spec.h_nav = PauliSum(problem.n_qubits());
  spec.schedule = Schedule(T, problem.options().alpha);
  spec.n_time_steps = n_time_steps;
  return spec;
}

StateVector AnnealResult::full_state(const Problem& problem) const {
  return StateVector(problem.n_qubits(), problem.basis().embed(state));
}

AnnealResult run_anneal(const Problem& problem, const VariationalParams& params,
                        double T, int n_time_steps) {
  params.validate(problem);
  AnnealResult out;
  out.state = reference_vector(problem);
  if (T == 0.0) {
    out.energy = problem.hf_energy();
    return out;
  }
  out.n_time_steps =
      n_time_steps > 0 ? n_time_steps : vanqver_default_steps(problem, params, T);
  Anneal anneal(problem, restricted_initial(problem, params.eta),
                restricted_navigator(problem, params.theta), T, out.n_time_steps);
  anneal.engine->propagate(out.n_time_steps, out.state);
  out.energy = finish(problem, out.state);
  return out;
}

AnnealResult standard_aqc(const Problem& problem, double T, int n_time_steps) {
  AnnealResult out;
  out.state = reference_vector(problem);
  if (T == 0.0) {
    out.energy = problem.hf_energy();
    return out;
  }
  out.n_time_steps = n_time_steps > 0
                         ? n_time_steps
                         : default_time_steps(make_standard_spec(problem, T));
  Anneal anneal(problem, problem.mp_op(),
                SubspaceOperator(PauliSum(problem.n_qubits()), problem.basis()), T,
                out.n_time_steps);
  anneal.engine->propagate(out.n_time_steps, out.state);
  out.energy = finish(problem, out.state);
  return out;
}

// ---------------------------------------------------------------------------
// Gradients

ParamGradient adjoint_gradient(const Problem& problem, const VariationalParams& params,
                               double T, int n_time_steps) {
  params.validate(problem);
  ParamGradient g;
  g.d_eta.assign(problem.n_eta(), 0.0);
  g.d_theta.assign(problem.n_theta(), 0.0);
  if (T == 0.0) {
    g.energy = problem.hf_energy();
    return g;
  }
  if (n_time_steps < 1) throw std::invalid_argument("adjoint gradient needs a step count");
  const std::size_t dim = problem.basis().dim();
  Anneal anneal(problem, restricted_initial(problem, params.eta),
                restricted_navigator(problem, params.theta), T, n_time_steps);
  AnnealEngine& engine = *anneal.engine;
  const Schedule& schedule = engine.schedule();
  const double dt = T / n_time_steps;
  auto midpoint = [&](int k) { return std::min((k + 0.5) * dt, T); };

  // Forward pass, keeping every intermediate state.
  std::vector<std::vector<Complex>> psi(n_time_steps + 1);
  psi[0] = reference_vector(problem);
  for (int k = 0; k < n_time_steps; ++k) {
    psi[k + 1] = psi[k];
    engine.step(midpoint(k), dt, psi[k + 1]);
  }
  const auto& final = psi.back();
  std::vector<Complex> lambda(dim);
  problem.fin_op().apply(final.data(), lambda.data());
  g.energy = kernels::dotc(final, lambda).real();

  // Three-point Gauss-Legendre rule for the Frechet derivative of each step
  // exponential: dU = -i int_0^dt e^{-i(dt-s)H} dH e^{-isH} ds.
  const double r = std::sqrt(15.0) / 10.0;
  const double nodes[3] = {(0.5 - r) * dt, 0.5 * dt, (0.5 + r) * dt};
  const double weights[3] = {5.0 / 18.0, 8.0 / 18.0, 5.0 / 18.0};

  std::vector<Complex> a(dim), b(dim), m(dim);
  const auto& z = problem.z_diagonals();
  const auto& gens = problem.generator_ops();
  std::vector<Complex> nav_acc(gens.size());
  for (int k = n_time_steps - 1; k >= 0; --k) {
    const ScheduleWeights w = schedule.evaluate(midpoint(k));
    engine.step_weights(w, -dt, lambda);  // lambda_{k} <- U_k^dagger lambda_{k+1}
    a = lambda;
    b = psi[k];
    std::fill(m.begin(), m.end(), Complex{});
    std::fill(nav_acc.begin(), nav_acc.end(), Complex{});
    double s_prev = 0.0;
    for (int j = 0; j < 3; ++j) {
      engine.step_weights(w, nodes[j] - s_prev, a);
      engine.step_weights(w, nodes[j] - s_prev, b);
      s_prev = nodes[j];
      for (std::size_t x = 0; x < dim; ++x) m[x] += weights[j] * std::conj(a[x]) * b[x];
      if (w.c != 0.0) {
        for (std::size_t q = 0; q < gens.size(); ++q) {
          nav_acc[q] += weights[j] * gens[q].sandwich(a.data(), b.data());
        }
      }
    }
    // dE/dp += 2 Re(-i dt w_H <..>) = 2 dt w_H Im(<..>)
    for (std::size_t p = 0; p < z.size(); ++p) {
      Complex acc{};
      for (std::size_t x = 0; x < dim; ++x) acc += m[x] * z[p][x];
      g.d_eta[p] += 2.0 * dt * w.a * acc.imag();
    }
    for (std::size_t q = 0; q < gens.size(); ++q) {
      g.d_theta[q] += 2.0 * dt * w.c * nav_acc[q].imag();
    }
  }
  return g;
}

namespace {

template <class Fn>
void parallel_for(std::size_t n, int jobs, Fn&& fn) {
  const std::size_t workers =
      std::clamp<std::size_t>(jobs < 1 ? 1 : static_cast<std::size_t>(jobs), 1, n);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::size_t i = next++; i < n; i = next++) fn(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace

ParamGradient finite_difference_gradient(const Problem& problem,
                                         const VariationalParams& params, double T,
                                         int n_time_steps, double theta_step,
                                         double eta_step, int jobs) {
  params.validate(problem);
  const std::size_t ne = problem.n_eta(), nt = problem.n_theta();
  ParamGradient g;
  g.d_eta.assign(ne, 0.0);
  g.d_theta.assign(nt, 0.0);
  g.energy = run_anneal(problem, params, T, n_time_steps).energy;
  if (T == 0.0) return g;

  // Probe 2i is the + side of parameter i, 2i+1 the - side.
  const std::size_t n = ne + nt;
  std::vector<double> energies(2 * n), steps(n);
  parallel_for(2 * n, jobs, [&](std::size_t probe) {
    const std::size_t i = probe / 2;
    const double sign = probe % 2 == 0 ? 1.0 : -1.0;
    VariationalParams shifted = params;
    if (i < ne) {
      const double mag = std::abs(params.eta[i]);
      const double h = std::min(eta_step, 0.5 * mag);
      shifted.eta[i] = (mag + sign * h) * (params.eta[i] > 0 ? 1.0 : -1.0);
      steps[i] = h;
    } else {
      shifted.theta[i - ne] += sign * theta_step;
      steps[i] = theta_step;
    }
    energies[probe] = run_anneal(problem, shifted, T, n_time_steps).energy;
  });
  for (std::size_t i = 0; i < n; ++i) {
    const double d = (energies[2 * i] - energies[2 * i + 1]) / (2.0 * steps[i]);
    if (i < ne) {
      // Derivative along |eta|; convert to d/d eta.
      g.d_eta[i] = d * (params.eta[i] > 0 ? 1.0 : -1.0);
    } else {
      g.d_theta[i - ne] = d;
    }
  }
  return g;
}

// ---------------------------------------------------------------------------
// BFGS

namespace {

using Vec = Eigen::VectorXd;

struct Evaluation {
  double f = std::numeric_limits<double>::infinity();
  Vec g;
  int steps = 0;  ///< time steps the energy was computed with
  bool finite() const { return std::isfinite(f); }
};

/// Optimizer coordinates: u_p with |eta_p| = floor + exp(u_p), then theta.
class Objective {
 public:
  Objective(const Problem& problem, double T, const OptimizeConfig& config)
      : problem_(problem), T_(T), config_(config) {}

  Vec initial_point() const {
    const auto p0 = VariationalParams::initial(problem_);
    Vec x(problem_.n_eta() + problem_.n_theta());
    for (std::size_t p = 0; p < problem_.n_eta(); ++p) {
      x[p] = std::log(std::abs(p0.eta[p]) - config_.eta_floor);
    }
    for (std::size_t q = 0; q < problem_.n_theta(); ++q) x[problem_.n_eta() + q] = 0.0;
    return x;
  }

  VariationalParams params(const Vec& x) const {
    VariationalParams p;
    p.eta.resize(problem_.n_eta());
    p.theta.resize(problem_.n_theta());
    for (std::size_t i = 0; i < problem_.n_eta(); ++i) {
      p.eta[i] = problem_.sign_mask()[i] * (config_.eta_floor + std::exp(x[i]));
    }
    for (std::size_t q = 0; q < problem_.n_theta(); ++q) {
      p.theta[q] = x[problem_.n_eta() + q];
    }
    return p;
  }

  int steps_for(const VariationalParams& p) {
    if (config_.n_time_steps > 0) return config_.n_time_steps;
    const int want = vanqver_default_steps(problem_, p, T_);
    base_steps_ = std::max(base_steps_, want);
    return base_steps_;
  }

  Evaluation operator()(const Vec& x) {
    ++evaluations_;
    Evaluation e;
    e.g = Vec::Zero(x.size());
    const VariationalParams p = params(x);
    for (double v : p.eta) {
      if (!std::isfinite(v)) return e;
    }
    try {
      if (T_ == 0.0) {
        e.f = problem_.hf_energy();
        return e;
      }
      const int steps = steps_for(p);
      e.steps = steps;
      const ParamGradient pg =
          config_.gradient == GradientMethod::adjoint
              ? adjoint_gradient(problem_, p, T_, steps)
              : finite_difference_gradient(problem_, p, T_, steps, config_.theta_step,
                                           config_.eta_step, config_.jobs);
      e.f = pg.energy;
      for (std::size_t i = 0; i < problem_.n_eta(); ++i) {
        e.g[i] = pg.d_eta[i] * problem_.sign_mask()[i] * std::exp(x[i]);
      }
      for (std::size_t q = 0; q < problem_.n_theta(); ++q) {
        e.g[problem_.n_eta() + q] = pg.d_theta[q];
      }
    } catch (const NormDriftError&) {
      e.f = std::numeric_limits<double>::infinity();
    }
    return e;
  }

  int evaluations() const noexcept { return evaluations_; }

 private:
  const Problem& problem_;
  double T_;
  OptimizeConfig config_;
  int base_steps_ = 0;
  int evaluations_ = 0;
};

double cubic_min(double a, double fa, double fpa, double b, double fb, double c,
                 double fc) {
  // Minimizer of the cubic through (a, fa, fpa), (b, fb), (c, fc).
  const double C = fpa;
  const double db = b - a, dc = c - a;
  const double denom = (db * dc) * (db * dc) * (db - dc);
  if (denom == 0.0) return std::numeric_limits<double>::quiet_NaN();
  const double r1 = fb - fa - C * db, r2 = fc - fa - C * dc;
  const double A = (dc * dc * r1 - db * db * r2) / denom;
  const double B = (-dc * dc * dc * r1 + db * db * db * r2) / denom;
  const double radical = B * B - 3.0 * A * C;
  if (A == 0.0 || radical < 0.0) return std::numeric_limits<double>::quiet_NaN();
  return a + (-B + std::sqrt(radical)) / (3.0 * A);
}

double quad_min(double a, double fa, double fpa, double b, double fb) {
  const double db = b - a;
  const double B = (fb - fa - fpa * db) / (db * db);
  if (B <= 0.0 || db == 0.0) return std::numeric_limits<double>::quiet_NaN();
  return a - fpa / (2.0 * B);
}

struct LineSearchResult {
  bool ok = false;
  double alpha = 0.0;
  Evaluation at;
};

/// Strong-Wolfe line search (interpolating zoom, as in scipy's
/// scalar_search_wolfe2).
LineSearchResult strong_wolfe(Objective& f, const Vec& x, const Vec& p, double phi0,
                              double dphi0, double alpha1, double c1 = 1e-4,
                              double c2 = 0.9, int max_iter = 20) {
  auto eval = [&](double a, Evaluation& out) {
    out = f(x + a * p);
    return std::pair{out.f, out.finite() ? out.g.dot(p) : 0.0};
  };
  auto zoom = [&](double a_lo, double a_hi, double phi_lo, double phi_hi,
                  double dphi_lo) -> LineSearchResult {
    double a_rec = 0.0, phi_rec = phi0;
    for (int i = 0; i < 10; ++i) {
      const double d = a_hi - a_lo;
      const double lo = std::min(a_lo, a_hi), hi = std::max(a_lo, a_hi);
      double a_j = std::numeric_limits<double>::quiet_NaN();
      if (i > 0) {
        a_j = cubic_min(a_lo, phi_lo, dphi_lo, a_hi, phi_hi, a_rec, phi_rec);
        if (std::isnan(a_j) || a_j > hi - 0.2 * std::abs(d) || a_j < lo + 0.2 * std::abs(d)) {
          a_j = std::numeric_limits<double>::quiet_NaN();
        }
      }
      if (std::isnan(a_j) && std::isfinite(phi_hi)) {
        a_j = quad_min(a_lo, phi_lo, dphi_lo, a_hi, phi_hi);
        if (std::isnan(a_j) || a_j > hi - 0.1 * std::abs(d) || a_j < lo + 0.1 * std::abs(d)) {
          a_j = std::numeric_limits<double>::quiet_NaN();
        }
      }
      if (std::isnan(a_j)) a_j = a_lo + 0.5 * d;
      Evaluation e;
      const auto [phi_j, dphi_j] = eval(a_j, e);
      if (!std::isfinite(phi_j) || phi_j > phi0 + c1 * a_j * dphi0 || phi_j >= phi_lo) {
        a_rec = a_hi;
        phi_rec = phi_hi;
        a_hi = a_j;
        phi_hi = phi_j;
      } else {
        if (std::abs(dphi_j) <= -c2 * dphi0) return {true, a_j, e};
        if (dphi_j * (a_hi - a_lo) >= 0) {
          a_rec = a_hi;
          phi_rec = phi_hi;
          a_hi = a_lo;
          phi_hi = phi_lo;
        } else {
          a_rec = a_lo;
          phi_rec = phi_lo;
        }
        a_lo = a_j;
        phi_lo = phi_j;
        dphi_lo = dphi_j;
      }
    }
    return {};
  };

  double a_prev = 0.0, phi_prev = phi0, dphi_prev = dphi0;
  double a = alpha1;
  for (int i = 0; i < max_iter; ++i) {
    Evaluation e;
    const auto [phi_a, dphi_a] = eval(a, e);
    if (!std::isfinite(phi_a) || phi_a > phi0 + c1 * a * dphi0 ||
        (phi_a >= phi_prev && i > 0)) {
      return zoom(a_prev, a, phi_prev, phi_a, dphi_prev);
    }
    if (std::abs(dphi_a) <= -c2 * dphi0) return {true, a, e};
    if (dphi_a >= 0) return zoom(a, a_prev, phi_a, phi_prev, dphi_a);
    a_prev = a;
    phi_prev = phi_a;
    dphi_prev = dphi_a;
    a *= 2.0;
  }
  return {};
}

TrajectoryEntry entry(int iteration, const VariationalParams& p, double f, const Vec& g) {
  return {iteration, p.eta, p.theta, f, g.size() ? g.cwiseAbs().maxCoeff() : 0.0};
}

}  // namespace

RunRecord optimize(const Problem& problem, double T, const OptimizeConfig& config) {
  if (!(config.epsilon_tol > 0.0)) throw std::invalid_argument("epsilon_tol must be positive");
  if (config.max_iterations < 0) throw std::invalid_argument("max_iterations must be >= 0");
  if (T < 0.0) throw std::invalid_argument("T must be non-negative");
  const auto start = std::chrono::steady_clock::now();
  RunRecord rec;
  rec.problem = problem.name();
  rec.mode = AnnealMode::vanqver;
  rec.T = T;
  rec.config = config;
  rec.e_fci = problem.fci_energy();
  rec.e_hf = problem.hf_energy();

  Objective f(problem, T, config);
  Vec x = f.initial_point();
  Evaluation cur = f(x);
  if (!cur.finite()) {
    rec.message = "initial anneal failed";
    rec.final_energy = std::numeric_limits<double>::infinity();
    rec.best = f.params(x);
    return rec;
  }
  rec.trajectory.push_back(entry(0, f.params(x), cur.f, cur.g));
  double best = cur.f;
  Vec best_x = x;
  int best_steps = cur.steps;

  const Eigen::Index n = x.size();
  Eigen::MatrixXd H = Eigen::MatrixXd::Identity(n, n);
  double old_old = cur.f + cur.g.norm() / 2.0;
  int k = 0;
  auto gnorm = [](const Vec& g) { return g.size() ? g.cwiseAbs().maxCoeff() : 0.0; };
  bool done = config.termination == Termination::gradient_inf_norm &&
              gnorm(cur.g) <= config.epsilon_tol;
  if (done) {
    rec.converged = true;
    rec.message = "gradient below tolerance";
  }
  while (!done && k < config.max_iterations) {
    const Vec p = -H * cur.g;
    double dphi0 = cur.g.dot(p);
    if (!(dphi0 < 0.0)) {
      rec.message = "not a descent direction";
      break;
    }
    double alpha1 = 1.0;
    if (dphi0 != 0.0) {
      const double guess = 1.01 * 2.0 * (cur.f - old_old) / dphi0;
      if (guess > 0.0) alpha1 = std::min(1.0, guess);
    }
    LineSearchResult ls = strong_wolfe(f, x, p, cur.f, dphi0, alpha1);
    if (!ls.ok) {
      rec.message = "line search failed (precision loss)";
      break;
    }
    const Vec s = ls.alpha * p;
    const Vec y = ls.at.g - cur.g;
    old_old = cur.f;
    const double f_prev = cur.f;
    x += s;
    cur = ls.at;
    ++k;
    rec.trajectory.push_back(entry(k, f.params(x), cur.f, cur.g));
    if (cur.f < best) {
      best = cur.f;
      best_x = x;
      best_steps = cur.steps;
    }
    if (config.termination == Termination::gradient_inf_norm) {
      if (gnorm(cur.g) <= config.epsilon_tol) {
        rec.converged = true;
        rec.message = "gradient below tolerance";
        break;
      }
    } else if (f_prev - cur.f <= config.epsilon_tol) {
      rec.converged = true;
      rec.message = "energy change below tolerance";
      break;
    }
    const double ys = y.dot(s);
    if (ys > 1e-14 * s.norm() * y.norm()) {
      const double rho = 1.0 / ys;
      const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(n, n);
      H = (I - rho * s * y.transpose()) * H * (I - rho * y * s.transpose()) +
          rho * s * s.transpose();
    }
  }
  if (!rec.converged && rec.message.empty()) rec.message = "maximum iterations reached";
  rec.n_iterations = k;
  rec.final_energy = best;
  rec.best = f.params(best_x);
  rec.n_evaluations = f.evaluations();
  rec.n_time_steps = best_steps;
  rec.wall_time =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rec;
}

RunRecord standard_record(const Problem& problem, double T, int n_time_steps) {
  const auto start = std::chrono::steady_clock::now();
  RunRecord rec;
  rec.problem = problem.name();
  rec.mode = AnnealMode::standard;
  rec.T = T;
  rec.config.n_time_steps = n_time_steps;
  rec.e_fci = problem.fci_energy();
  rec.e_hf = problem.hf_energy();
  const AnnealResult r = standard_aqc(problem, T, n_time_steps);
  rec.final_energy = r.energy;
  rec.n_time_steps = r.n_time_steps;
  rec.n_evaluations = 1;
  rec.converged = true;
  rec.message = "single anneal";
  TrajectoryEntry e;
  e.energy = r.energy;
  rec.trajectory.push_back(e);
  rec.wall_time =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rec;
}

// ---------------------------------------------------------------------------
// Time to chemical accuracy

TcaResult time_to_chemical_accuracy(const Problem& problem, AnnealMode mode,
                                    const OptimizeConfig& config,
                                    const TcaOptions& options) {
  if (!(options.t_lo > 0.0) || !(options.t_hi > options.t_lo)) {
    throw std::invalid_argument("bracket needs 0 < T_lo < T_hi");
  }
  if (!(options.relative_resolution > 0.0)) {
    throw std::invalid_argument("relative resolution must be positive");
  }
  TcaResult out;
  out.mode = mode;
  std::map<double, TcaProbe> seen;
  auto probe = [&](double T) {
    if (auto it = seen.find(T); it != seen.end()) return it->second.success;
    TcaProbe pr;
    pr.T = T;
    if (mode == AnnealMode::vanqver) {
      const RunRecord r = optimize(problem, T, config);
      pr.energy = r.final_energy;
      pr.iterations = r.n_iterations;
    } else {
      pr.energy = standard_aqc(problem, T, config.n_time_steps).energy;
    }
    pr.success = std::abs(pr.energy - problem.fci_energy()) <= kChemicalAccuracy;
    seen[T] = pr;
    out.probes.push_back(pr);
    return pr.success;
  };

  double lo = options.t_lo, hi = options.t_hi;
  int shrinks = 0;
  while (probe(lo)) {
    if (++shrinks > options.max_expansions) {
      throw BracketError("chemical accuracy reached at every tried lower bound down to T = " +
                         std::to_string(lo));
    }
    out.notes.push_back("auto-shrink: T_lo = " + std::to_string(lo) +
                        " already reaches chemical accuracy");
    hi = lo;
    lo /= 4.0;
  }
  int expansions = 0;
  while (!probe(hi)) {
    if (++expansions > options.max_expansions) {
      throw BracketError("no chemical accuracy up to T = " + std::to_string(hi));
    }
    out.notes.push_back("auto-expand: T_hi = " + std::to_string(hi) +
                        " misses chemical accuracy");
    lo = hi;
    hi *= 2.0;
  }
  while (hi / lo > 1.0 + options.relative_resolution) {
    const double mid = std::sqrt(lo * hi);
    if (probe(mid)) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  out.t_ca = hi;
  out.t_fail = lo;
  // Any success strictly below a failure contradicts a monotone profile.
  double first_success = std::numeric_limits<double>::infinity();
  for (const auto& [T, pr] : seen) {
    if (pr.success) {
      first_success = std::min(first_success, T);
    } else if (T > first_success) {
      out.non_monotone = true;
    }
  }
  if (out.non_monotone) out.notes.push_back("non-monotone success profile observed");
  return out;
}

// ---------------------------------------------------------------------------
// Sweeps

std::vector<SweepRow> sweep(const std::function<Problem(std::optional<double> distance)>& problem_at,
                            SweepVariable variable, const std::vector<double>& grid,
                            const SweepPoint& base, int jobs) {
  std::vector<SweepRow> rows(grid.size());
  if (grid.empty()) return rows;
  std::optional<Problem> shared;
  if (variable != SweepVariable::distance) shared.emplace(problem_at(base.distance));
  parallel_for(grid.size(), jobs, [&](std::size_t i) {
    SweepRow& row = rows[i];
    row.value = grid[i];
    try {
      SweepPoint pt = base;
      switch (variable) {
        case SweepVariable::T: pt.T = grid[i]; break;
        case SweepVariable::distance: pt.distance = grid[i]; break;
        case SweepVariable::tolerance: pt.config.epsilon_tol = grid[i]; break;
      }
      std::optional<Problem> local;
      if (!shared) local.emplace(problem_at(pt.distance));
      const Problem& problem = shared ? *shared : *local;
      row.record = pt.mode == AnnealMode::vanqver
                       ? optimize(problem, pt.T, pt.config)
                       : standard_record(problem, pt.T, pt.config.n_time_steps);
      row.record.distance = pt.distance;
      row.ok = true;
    } catch (const std::exception& e) {
      row.error = e.what();
    }
  });
  return rows;
}

}  // namespace vanqver
