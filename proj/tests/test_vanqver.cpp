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

#include <cmath>
#include <random>

#include "doctest.h"
#include "test_util.hpp"
#include "vanqver/vanqver.hpp"

using namespace vanqver;

namespace {

const Problem& h2() {
  static const Problem p = Problem::from_fixture(load_fixture("h2"));
  return p;
}

const Problem& p4(double d) {
  static const Problem p08 = Problem::from_fixture(load_fixture("p4", 0.8));
  static const Problem p20 = Problem::from_fixture(load_fixture("p4", 2.0));
  return d < 1.0 ? p08 : p20;
}

VariationalParams random_params(const Problem& p, std::mt19937_64& rng, double spread = 1.0) {
  std::uniform_real_distribution<double> mag(0.3, 2.0);
  std::normal_distribution<double> g(0.0, spread);
  VariationalParams v = VariationalParams::initial(p);
  for (std::size_t k = 0; k < v.eta.size(); ++k) v.eta[k] = p.sign_mask()[k] * mag(rng);
  for (auto& t : v.theta) t = g(rng);
  return v;
}

}  // namespace

TEST_CASE("problem dimensions for the bundled molecules") {
  CHECK(h2().n_eta() == 4);
  CHECK(h2().n_theta() == 3);
  CHECK(h2().basis().dim() == 4);
  CHECK(p4(0.8).n_eta() == 8);
  CHECK(p4(0.8).n_theta() == 26);
  CHECK(h2().fci_energy() ==
        doctest::Approx(*h2().info()->fci_energy).epsilon(1e-10));
  CHECK(h2().hf_energy() == doctest::Approx(*h2().info()->hf_energy).epsilon(1e-10));
}

TEST_CASE("initial parameters follow the sign mask with unit magnitude") {
  const auto v = VariationalParams::initial(h2());
  CHECK(v.eta == std::vector<double>{1, 1, -1, -1});
  CHECK(v.theta == std::vector<double>(3, 0.0));
  CHECK_NOTHROW(v.validate(h2(), 1e-3));
}

TEST_CASE("parameter validation") {
  auto v = VariationalParams::initial(h2());
  v.eta[0] = -1.0;
  CHECK_THROWS_AS(v.validate(h2()), SignConstraintError);
  v = VariationalParams::initial(h2());
  v.eta[2] = -1e-4;
  CHECK_THROWS_AS(v.validate(h2(), 1e-3), SignConstraintError);
  v = VariationalParams::initial(h2());
  v.theta.pop_back();
  CHECK_THROWS_AS(v.validate(h2()), DimensionError);
  CHECK_THROWS_AS(run_anneal(h2(), v, 0.1), DimensionError);
}

TEST_CASE("T = 0 gives the Hartree-Fock energy") {
  CHECK(run_anneal(h2(), VariationalParams::initial(h2()), 0.0).energy ==
        doctest::Approx(h2().hf_energy()).epsilon(1e-12));
  const RunRecord r = optimize(h2(), 0.0);
  CHECK(r.final_energy == doctest::Approx(h2().hf_energy()).epsilon(1e-12));
  CHECK(r.n_iterations == 0);
}

TEST_CASE("short anneals stay near Hartree-Fock") {
  // theta = 0 and T -> 0+ leaves the reference nearly untouched.
  const double e = run_anneal(h2(), VariationalParams::initial(h2()), 1e-4).energy;
  CHECK(std::abs(e - h2().hf_energy()) < 1e-6);
  const RunRecord r = optimize(p4(0.8), 0.03);
  CHECK(std::abs(r.final_energy - p4(0.8).hf_energy()) < 0.05);
}

TEST_CASE("theta = 0 reduces to a two-Hamiltonian anneal") {
  // With theta = 0 and eta equal to the H_MP Z-coefficients, the initial
  // Hamiltonian differs from H_MP only by a constant, which changes the
  // state by a global phase.
  const Problem& p = h2();
  VariationalParams v = VariationalParams::initial(p);
  for (std::size_t q = 0; q < v.eta.size(); ++q) {
    v.eta[q] = p.h_mp().coefficient(PauliString::single(4, static_cast<int>(q),
                                                        PauliLetter::Z)).real();
  }
  const double T = 3.0;
  CHECK(run_anneal(p, v, T, 2000).energy ==
        doctest::Approx(standard_aqc(p, T, 2000).energy).epsilon(1e-10));
}

TEST_CASE("run_anneal is deterministic") {
  std::mt19937_64 rng(8);
  const auto v = random_params(p4(0.8), rng);
  const double a = run_anneal(p4(0.8), v, 0.3).energy;
  const double b = run_anneal(p4(0.8), v, 0.3).energy;
  CHECK(a == b);
}

TEST_CASE("adjoint gradient agrees with central differences") {
  std::mt19937_64 rng(17);
  for (const Problem* p : {&h2(), &p4(0.8)}) {
    for (double T : {0.1, 1.0}) {
      const auto v = random_params(*p, rng);
      const int steps = 300;
      const ParamGradient a = adjoint_gradient(*p, v, T, steps);
      const ParamGradient f = finite_difference_gradient(*p, v, T, steps, 1e-4, 1e-4);
      CHECK(a.energy == doctest::Approx(f.energy).epsilon(1e-12));
      for (std::size_t k = 0; k < a.d_eta.size(); ++k) {
        CHECK(a.d_eta[k] == doctest::Approx(f.d_eta[k]).epsilon(1e-6).scale(1.0));
      }
      for (std::size_t k = 0; k < a.d_theta.size(); ++k) {
        CHECK(a.d_theta[k] == doctest::Approx(f.d_theta[k]).epsilon(1e-6).scale(1.0));
      }
    }
  }
}

TEST_CASE("finite-difference gradient is independent of the worker count") {
  std::mt19937_64 rng(4);
  const auto v = random_params(p4(0.8), rng);
  const auto a = finite_difference_gradient(p4(0.8), v, 0.2, 250, 1e-4, 1e-3, 1);
  const auto b = finite_difference_gradient(p4(0.8), v, 0.2, 250, 1e-4, 1e-3, 3);
  CHECK(a.d_eta == b.d_eta);
  CHECK(a.d_theta == b.d_theta);
}

TEST_CASE("max_iterations = 0 returns the initial energy") {
  OptimizeConfig c;
  c.max_iterations = 0;
  const RunRecord r = optimize(h2(), 0.5, c);
  const double e0 = run_anneal(h2(), VariationalParams::initial(h2()), 0.5,
                               r.n_time_steps).energy;
  CHECK(r.final_energy == doctest::Approx(e0).epsilon(1e-13));
  CHECK(r.n_iterations == 0);
  CHECK(r.trajectory.size() == 1);
  CHECK_FALSE(r.converged);
}

TEST_CASE("optimizer trajectories respect the invariants") {
  OptimizeConfig c;
  c.epsilon_tol = 1e-5;
  c.max_iterations = 40;
  for (const Problem* p : {&h2(), &p4(0.8)}) {
    const RunRecord r = optimize(*p, 0.5, c);
    REQUIRE_FALSE(r.trajectory.empty());
    double lowest = r.trajectory.front().energy;
    for (std::size_t k = 0; k < r.trajectory.size(); ++k) {
      const auto& t = r.trajectory[k];
      CHECK(t.iteration == static_cast<int>(k));
      CHECK(t.energy >= p->fci_energy() - 1e-9);
      CHECK_NOTHROW(VariationalParams{t.eta, t.theta}.validate(*p, c.eta_floor));
      lowest = std::min(lowest, t.energy);
    }
    CHECK(r.final_energy == doctest::Approx(lowest).epsilon(1e-12));
    CHECK(r.n_iterations == static_cast<int>(r.trajectory.size()) - 1);
    // The reported energy is reproduced by re-running the best parameters.
    CHECK(run_anneal(*p, r.best, 0.5, r.n_time_steps).energy ==
          doctest::Approx(r.final_energy).epsilon(1e-12));
  }
}

TEST_CASE("optimize is deterministic") {
  const RunRecord a = optimize(p4(0.8), 0.3);
  const RunRecord b = optimize(p4(0.8), 0.3);
  REQUIRE(a.trajectory.size() == b.trajectory.size());
  for (std::size_t k = 0; k < a.trajectory.size(); ++k) {
    CHECK(a.trajectory[k].energy == b.trajectory[k].energy);
    CHECK(a.trajectory[k].theta == b.trajectory[k].theta);
  }
  CHECK(a.final_energy == b.final_energy);
}

TEST_CASE("tightening the tolerance never hurts on H2") {
  OptimizeConfig loose, tight;
  loose.epsilon_tol = 1e-3;
  tight.epsilon_tol = 1e-4;
  for (double T : {0.2, 0.5}) {
    const RunRecord a = optimize(h2(), T, loose);
    const RunRecord b = optimize(h2(), T, tight);
    CHECK(b.final_energy <= a.final_energy + 1e-12);
    CHECK(b.n_iterations >= a.n_iterations);
  }
}

TEST_CASE("energy-delta termination stops on a small decrease") {
  OptimizeConfig c;
  c.termination = Termination::energy_delta;
  c.epsilon_tol = 1e-6;
  const RunRecord r = optimize(h2(), 0.5, c);
  CHECK(r.converged);
  CHECK(r.message == "energy change below tolerance");
  const auto& t = r.trajectory;
  REQUIRE(t.size() >= 2);
  CHECK(t[t.size() - 2].energy - t.back().energy <= 1e-6);
}

TEST_CASE("vanqver is never worse than the standard anneal at matched T") {
  for (const Problem* p : {&h2(), &p4(0.8)}) {
    for (double T : {0.1, 1.0}) {
      CHECK(optimize(*p, T).final_energy <= standard_aqc(*p, T).energy + 1e-9);
    }
  }
}

TEST_CASE("optimize rejects invalid configurations") {
  OptimizeConfig c;
  c.epsilon_tol = 0.0;
  CHECK_THROWS_AS(optimize(h2(), 0.1, c), std::invalid_argument);
  CHECK_THROWS_AS(optimize(h2(), -1.0), std::invalid_argument);
}

TEST_CASE("enum names round-trip") {
  for (auto m : {AnnealMode::vanqver, AnnealMode::standard}) {
    CHECK(parse_anneal_mode(to_string(m)) == m);
  }
  for (auto g : {GradientMethod::adjoint, GradientMethod::finite_difference}) {
    CHECK(parse_gradient_method(to_string(g)) == g);
  }
  for (auto t : {Termination::gradient_inf_norm, Termination::energy_delta}) {
    CHECK(parse_termination(to_string(t)) == t);
  }
  for (auto v : {SweepVariable::T, SweepVariable::distance, SweepVariable::tolerance}) {
    CHECK(parse_sweep_variable(to_string(v)) == v);
  }
  CHECK_THROWS_AS(parse_anneal_mode("fast"), std::invalid_argument);
}

// ---------------------------------------------------------------------------

TEST_CASE("standard-mode T_CA for H2 lies near 13") {
  TcaOptions o;
  o.t_lo = 5;
  o.t_hi = 20;
  const TcaResult r = time_to_chemical_accuracy(h2(), AnnealMode::standard, {}, o);
  CHECK(r.t_ca == doctest::Approx(13.0).epsilon(0.1));
  CHECK(r.t_fail < r.t_ca);
  CHECK(r.t_ca / r.t_fail <= 1.05 + 1e-12);
  for (const auto& probe : r.probes) {
    CHECK(probe.success == (std::abs(standard_aqc(h2(), probe.T).energy -
                                     h2().fci_energy()) <= kChemicalAccuracy));
  }
}

TEST_CASE("T_CA bracket adjusts itself") {
  TcaOptions o;
  o.t_lo = 20;
  o.t_hi = 40;
  const TcaResult shrunk = time_to_chemical_accuracy(h2(), AnnealMode::standard, {}, o);
  CHECK(shrunk.t_ca == doctest::Approx(13.0).epsilon(0.1));
  REQUIRE_FALSE(shrunk.notes.empty());
  CHECK(shrunk.notes.front().rfind("auto-shrink", 0) == 0);

  o.t_lo = 1;
  o.t_hi = 2;
  const TcaResult grown = time_to_chemical_accuracy(h2(), AnnealMode::standard, {}, o);
  CHECK(grown.t_ca == doctest::Approx(13.0).epsilon(0.1));
  CHECK(grown.notes.front().rfind("auto-expand", 0) == 0);

  o.max_expansions = 1;
  CHECK_THROWS_AS(time_to_chemical_accuracy(h2(), AnnealMode::standard, {}, o), BracketError);
}

TEST_CASE("sweep keeps grid order and records failures per row") {
  auto family = [](std::optional<double> d) {
    return Problem::from_fixture(load_fixture("p4", d));
  };
  SweepPoint base;
  base.mode = AnnealMode::standard;
  base.T = 2.0;
  const auto rows = sweep(family, SweepVariable::distance, {2.0, 0.33, 0.8}, base, 2);
  REQUIRE(rows.size() == 3);
  CHECK(rows[0].ok);
  CHECK(rows[0].record.problem == "p4_sto3g_d2.00");
  CHECK(rows[0].record.distance == 2.0);
  CHECK_FALSE(rows[1].ok);
  CHECK(rows[1].error.find("p4_sto3g_d0.33") != std::string::npos);
  CHECK(rows[2].ok);
  CHECK(rows[2].record.problem == "p4_sto3g_d0.80");

  CHECK(sweep(family, SweepVariable::T, {}, base).empty());
}

TEST_CASE("tolerance sweep on one problem") {
  auto family = [](std::optional<double>) { return Problem::from_fixture(load_fixture("h2")); };
  SweepPoint base;
  base.T = 0.3;
  const auto rows = sweep(family, SweepVariable::tolerance, {1e-3, 5e-4, 1e-4}, base);
  REQUIRE(rows.size() == 3);
  for (std::size_t k = 0; k < rows.size(); ++k) {
    CHECK(rows[k].ok);
    CHECK(rows[k].record.config.epsilon_tol == rows[k].value);
    if (k > 0) CHECK(rows[k].record.final_energy <= rows[k - 1].record.final_energy + 1e-12);
  }
}
