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

#include <numbers>
#include <random>

#include <unsupported/Eigen/MatrixFunctions>

#include "doctest.h"
#include "test_util.hpp"
#include "vanqver/dynamics.hpp"
#include "vanqver/fermion.hpp"
#include "vanqver/fixture.hpp"
#include "vanqver/kernels.hpp"

using namespace vanqver;

namespace {

Eigen::VectorXcd vec(const StateVector& s) {
  auto a = s.amplitudes();
  return Eigen::Map<const Eigen::VectorXcd>(a.data(), static_cast<Eigen::Index>(a.size()));
}

struct Molecule {
  Fixture fx;
  SpinOrbitalMap map;
  PauliSum h_fin;
  std::vector<Excitation> ex;
};

Molecule molecule(const std::string& name, std::optional<double> d = std::nullopt) {
  Molecule m{load_fixture(name, d), {}, {}, {}};
  m.map = SpinOrbitalMap::aufbau(m.fx.integrals);
  m.h_fin = build_final_hamiltonian(m.fx.integrals, m.map);
  m.ex = singles_doubles(m.map);
  return m;
}

AnnealSpec random_molecular_spec(const Molecule& m, std::mt19937_64& rng, double T) {
  std::normal_distribution<double> g;
  std::uniform_real_distribution<double> u(0.05, 1.0);
  auto mask = reference_sign_mask(m.map);
  std::vector<double> eta(mask.size()), theta(m.ex.size());
  for (std::size_t p = 0; p < eta.size(); ++p) eta[p] = mask[p] * u(rng);
  for (auto& t : theta) t = 0.5 * g(rng);
  AnnealSpec spec;
  spec.h_ini = build_initial_hamiltonian(eta, m.map);
  spec.h_fin = m.h_fin;
  spec.h_nav = build_navigator(theta, m.ex, m.map);
  spec.schedule = Schedule(T);
  return spec;
}

}  // namespace

TEST_CASE("evolve: constant Z keeps an eigenstate") {
  AnnealSpec spec;
  spec.h_ini = spec.h_fin = PauliSum::from_terms({{"Z", 1.0}});
  for (double T : {0.0, 0.3, 7.0}) {
    spec.schedule = Schedule(T);
    auto psi = evolve(spec, StateVector::basis_state(1, 0));
    CHECK(std::abs(std::abs(psi[0]) - 1.0) < 1e-12);
  }
}

TEST_CASE("evolve: constant X for pi/2 flips the qubit") {
  AnnealSpec spec;
  spec.h_ini = spec.h_fin = PauliSum::from_terms({{"X", 1.0}});
  spec.schedule = Schedule(std::numbers::pi / 2);
  auto psi = evolve(spec, StateVector::basis_state(1, 0));
  CHECK(std::abs(std::abs(psi[1]) - 1.0) < 1e-10);
  CHECK(std::abs(psi[1] - Complex{0, -1}) < 1e-10);
}

TEST_CASE("evolve: T = 0 returns the input") {
  AnnealSpec spec;
  spec.h_ini = spec.h_fin = PauliSum::from_terms({{"X", 1.0}});
  spec.schedule = Schedule(0.0);
  auto psi = evolve(spec, StateVector::basis_state(1, 0));
  CHECK(psi[0] == Complex{1, 0});
}

TEST_CASE("evolve: errors") {
  AnnealSpec spec;
  spec.h_ini = spec.h_fin = PauliSum::from_terms({{"XX", 1.0}});
  spec.schedule = Schedule(1.0);
  CHECK_THROWS_AS(evolve(spec, StateVector::basis_state(1, 0)), DimensionError);
  CHECK_THROWS(evolve(spec, StateVector(2, {1.0, 1.0, 0.0, 0.0})));
}

TEST_CASE("evolve matches exp(-iHT) for time-independent specs") {
  std::mt19937_64 rng(41);
  for (int n = 1; n <= 4; ++n) {
    AnnealSpec spec;
    spec.h_ini = spec.h_fin = test::random_real_sum(rng, n, 3 * n);
    spec.h_nav = PauliSum(n);
    spec.schedule = Schedule(1.3);
    auto psi0 = test::random_state(rng, n);
    auto psi = evolve(spec, psi0);
    const Complex mi{0, -1.3};
    Eigen::MatrixXcd u = (mi * to_matrix(spec.h_fin)).exp();
    CHECK((vec(psi) - u * vec(psi0)).cwiseAbs().maxCoeff() <= 1e-8);
  }
}

TEST_CASE("unitarity drift before renormalization") {
  std::mt19937_64 rng(42);
  auto m = molecule("p4", 0.8);
  auto spec = random_molecular_spec(m, rng, 2.0);
  auto ref = StateVector::basis_state(8, m.map.reference_basis_state());
  auto basis = propagation_subspace(spec, ref);
  SubspaceOperator hi(spec.h_ini, basis), hf(spec.h_fin, basis), hn(spec.h_nav, basis);
  for (std::size_t dense_cap : {std::size_t{16}, std::size_t{64}}) {
    PropagationOptions opt;
    opt.dense_expm_max_dim = dense_cap;
    AnnealEngine engine(hi, hf, hn, spec.schedule, opt);
    auto psi = basis.restrict_vector(ref.amplitudes());
    engine.propagate(default_time_steps(spec), psi);
    CHECK(std::abs(std::sqrt(kernels::norm2(psi)) - 1.0) <= 1e-8);
  }
}

TEST_CASE("dense and Krylov step paths agree") {
  std::mt19937_64 rng(43);
  auto m = molecule("p4", 2.0);
  auto spec = random_molecular_spec(m, rng, 1.0);
  auto ref = StateVector::basis_state(8, m.map.reference_basis_state());
  PropagationOptions dense, krylov;
  dense.dense_expm_max_dim = 1 << 10;
  krylov.dense_expm_max_dim = 0;
  auto a = evolve(spec, ref, dense), b = evolve(spec, ref, krylov);
  CHECK((vec(a) - vec(b)).cwiseAbs().maxCoeff() < 1e-9);
}

TEST_CASE("expv_lanczos matches a dense exponential") {
  std::mt19937_64 rng(44);
  std::normal_distribution<double> g;
  const int n = 60;
  Eigen::MatrixXcd h(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) h(i, j) = {g(rng), g(rng)};
  h = (h + h.adjoint()).eval() * 0.1;
  Eigen::VectorXcd v = Eigen::VectorXcd::Random(n).normalized();
  std::vector<Complex> w(v.data(), v.data() + n);
  expv_lanczos(0.05, [&](const Complex* x, Complex* y) {
    Eigen::Map<Eigen::VectorXcd>(y, n) = h * Eigen::Map<const Eigen::VectorXcd>(x, n);
  }, w);
  Eigen::VectorXcd expected = (Complex{0, -0.05} * h).exp() * v;
  CHECK((Eigen::Map<Eigen::VectorXcd>(w.data(), n) - expected).cwiseAbs().maxCoeff() < 1e-11);
}

TEST_CASE("midpoint rule converges at second order") {
  std::mt19937_64 rng(45);
  AnnealSpec spec;
  spec.h_ini = test::random_real_sum(rng, 3, 8);
  spec.h_fin = test::random_real_sum(rng, 3, 8);
  spec.h_nav = test::random_real_sum(rng, 3, 8);
  spec.schedule = Schedule(1.0);
  auto psi0 = test::random_state(rng, 3);
  auto run = [&](int steps) {
    spec.n_time_steps = steps;
    return vec(evolve(spec, psi0));
  };
  const int coarse = 20;
  const Eigen::VectorXcd ref = run(coarse * 64);
  const double e1 = (run(coarse) - ref).norm();
  const double e2 = (run(2 * coarse) - ref).norm();
  const double ratio = e1 / e2;
  MESSAGE("convergence ratio " << ratio);
  CHECK(ratio >= 4.0 * 0.85);
  CHECK(ratio <= 4.0 * 1.15);
}

TEST_CASE("evolve_trace: endpoints and eigenstate samples") {
  std::mt19937_64 rng(46);
  auto m = molecule("h2");
  auto spec = random_molecular_spec(m, rng, 0.4);
  auto ref = StateVector::basis_state(4, m.map.reference_basis_state());
  auto trace = evolve_trace(spec, ref, 2);
  REQUIRE(trace.size() == 2);
  CHECK(trace[0].t == 0.0);
  CHECK(trace[1].t == 0.4);
  CHECK((vec(trace[1].state) - vec(evolve(spec, ref))).cwiseAbs().maxCoeff() == 0.0);

  // Samples that fall between grid points still end on the same final state.
  auto fine = evolve_trace(spec, ref, 7);
  CHECK((vec(fine.back().state) - vec(evolve(spec, ref))).cwiseAbs().maxCoeff() == 0.0);

  AnnealSpec constant;
  constant.h_ini = constant.h_fin = PauliSum::from_terms({{"ZZ", 0.7}, {"IZ", 0.2}});
  constant.schedule = Schedule(3.0);
  auto psi0 = StateVector::basis_state(2, 0b10);
  for (const auto& sample : evolve_trace(constant, psi0, 9)) {
    CHECK(std::abs(std::abs(sample.state.inner(psi0)) - 1.0) < 1e-12);
  }
  CHECK_THROWS(evolve_trace(constant, psi0, 1));
}

TEST_CASE("particle numbers are conserved along traces on every fixture") {
  std::mt19937_64 rng(47);
  for (const auto& info : list_fixtures()) {
    auto m = molecule(info.fcidump_path);
    auto spec = random_molecular_spec(m, rng, 0.5);
    auto nops = number_operators(m.map);
    auto ref = StateVector::basis_state(m.map.n_spin_orbitals(), m.map.reference_basis_state());
    const double n0 = expectation(ref, nops.total), u0 = expectation(ref, nops.up),
                 d0 = expectation(ref, nops.down);
    for (const auto& s : evolve_trace(spec, ref, 5)) {
      CHECK(std::abs(expectation(s.state, nops.total) - n0) <= 1e-7);
      CHECK(std::abs(expectation(s.state, nops.up) - u0) <= 1e-7);
      CHECK(std::abs(expectation(s.state, nops.down) - d0) <= 1e-7);
    }
  }
}

TEST_CASE("full_spectrum and subspace_spectrum") {
  auto z = full_spectrum(PauliSum::from_terms({{"Z", 1.0}}));
  CHECK(z.eigenvalues(0) == doctest::Approx(-1.0));
  CHECK(z.eigenvalues(1) == doctest::Approx(1.0));

  auto m = molecule("p4", 0.8);
  auto full = full_spectrum(m.h_fin, 3);
  CHECK(full.eigenvalues.size() == 3);
  const Eigen::MatrixXcd gram = full.eigenvectors.adjoint() * full.eigenvectors;
  CHECK((gram - Eigen::MatrixXcd::Identity(3, 3)).cwiseAbs().maxCoeff() < 1e-8);

  const std::uint64_t seed = m.map.reference_basis_state();
  const PauliSum* ops[] = {&m.h_fin};
  auto basis = Subspace::closure(8, std::span(&seed, 1), ops);
  CHECK(basis.dim() <= 36);  // point-group symmetry shrinks it below the sector
  auto sector = subspace_spectrum(m.h_fin, basis, 1);
  CHECK(std::abs(sector.eigenvalues(0) - full.eigenvalues(0)) < 1e-10);
  auto ground = StateVector(8, std::vector<Complex>(sector.eigenvectors.col(0).data(),
                                                    sector.eigenvectors.col(0).data() + 256));
  CHECK(expectation(ground, m.h_fin) == doctest::Approx(full.eigenvalues(0)).epsilon(1e-12));
  CHECK_THROWS(full_spectrum(PauliSum::identity(15), 1, false));
}

TEST_CASE("expectation: examples and errors") {
  std::mt19937_64 rng(48);
  auto psi = test::random_state(rng, 3);
  CHECK(expectation(psi, PauliSum::identity(3, -2.25)) == doctest::Approx(-2.25));
  auto h = test::random_real_sum(rng, 3, 10);
  const double direct = (vec(psi).adjoint() * to_matrix(h) * vec(psi))(0).real();
  CHECK(std::abs(expectation(psi, h) - direct) < 1e-12);
  CHECK_THROWS(expectation(psi, PauliSum::identity(2)));
  CHECK_THROWS(expectation(StateVector(1, {1.0, 1.0}), PauliSum::identity(1)));
}

TEST_CASE("variational bound over random parameter draws") {
  std::mt19937_64 rng(49);
  for (const char* name : {"h2", "p4"}) {
    auto m = molecule(name, 0.8);
    const double e_fci = *m.fx.info.fci_energy;
    auto ref = StateVector::basis_state(m.map.n_spin_orbitals(), m.map.reference_basis_state());
    for (int draw = 0; draw < 200; ++draw) {
      auto spec = random_molecular_spec(m, rng, 0.02 + 0.3 * (draw % 5));
      spec.n_time_steps = 40;
      CHECK(expectation(evolve(spec, ref), m.h_fin) >= e_fci - 1e-9);
    }
  }
}

TEST_CASE("kernel tables give the same anneal") {
  if (kernels::avx2_table() == nullptr) return;
  std::mt19937_64 rng(50);
  auto m = molecule("p4", 2.0);
  auto spec = random_molecular_spec(m, rng, 1.0);
  auto ref = StateVector::basis_state(8, m.map.reference_basis_state());
  kernels::select("scalar");
  auto a = evolve(spec, ref);
  kernels::select("avx2");
  auto b = evolve(spec, ref);
  CHECK((vec(a) - vec(b)).cwiseAbs().maxCoeff() < 1e-11);
}

TEST_CASE("closure sums amplitudes within an operator but not across operators") {
  const std::uint64_t seed = 0;
  auto hop = PauliSum::from_terms({{"XX", 1.0}, {"YY", 1.0}});
  const PauliSum* one[] = {&hop};
  auto within = Subspace::closure(2, std::span(&seed, 1), one);
  CHECK(within.dim() == 1);
  CHECK_NOTHROW(SubspaceOperator(hop, within));

  auto xx = PauliSum::from_terms({{"XX", 1.0}});
  auto yy = PauliSum::from_terms({{"YY", 1.0}});
  const PauliSum* two[] = {&xx, &yy};
  auto across = Subspace::closure(2, std::span(&seed, 1), two);
  CHECK(across.dim() == 2);
  CHECK_THROWS(SubspaceOperator(xx, within));
}
