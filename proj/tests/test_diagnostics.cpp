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
#include <set>

#include "doctest.h"
#include "test_util.hpp"
#include "vanqver/diagnostics.hpp"
#include "vanqver/vanqver.hpp"

using namespace vanqver;

namespace {

AnnealSpec spec_of(PauliSum ini, PauliSum fin, PauliSum nav, double T, double alpha = 1.0) {
  AnnealSpec s;
  s.h_ini = std::move(ini);
  s.h_fin = std::move(fin);
  s.h_nav = std::move(nav);
  s.schedule = Schedule(T, alpha);
  return s;
}

AnnealSpec z_to_x(double T) {
  return spec_of(PauliSum::from_terms({{"Z", 1.0}}), PauliSum::from_terms({{"X", 1.0}}),
                 PauliSum(1), T);
}

const Problem& h2() {
  static const Problem p = Problem::from_fixture(load_fixture("h2"));
  return p;
}

}  // namespace

TEST_CASE("sample times are uniform and end exactly at T") {
  const auto t = sample_times(0.3, 4);
  REQUIRE(t.size() == 4);
  CHECK(t[0] == 0.0);
  CHECK(t[1] == doctest::Approx(0.1));
  CHECK(t[3] == 0.3);
  CHECK(sample_times(0.3, 1) == std::vector<double>{0.3});
  CHECK_THROWS_AS(sample_times(1.0, 0), std::invalid_argument);
}

TEST_CASE("single-qubit gap matches the closed form 2 sqrt(A^2 + B^2)") {
  const AnnealSpec spec = z_to_x(2.0);
  const GapTrace g = gap_trace(spec, 11);
  REQUIRE(g.samples.size() == 11);
  for (const auto& x : g.samples) {
    const double s = x.t / 2.0;
    const double a = 1 - s * s, b = s * s;
    CHECK(x.value == doctest::Approx(2 * std::sqrt(a * a + b * b)).epsilon(1e-12));
  }
}

TEST_CASE("gap at t = T is the final-Hamiltonian gap whatever theta is") {
  const Problem& p = h2();
  std::mt19937_64 rng(5);
  std::normal_distribution<double> g;
  VariationalParams params = VariationalParams::initial(p);
  for (auto& th : params.theta) th = g(rng);
  const Spectrum fin = full_spectrum(p.h_fin(), 2, false);
  const GapTrace trace = gap_trace(make_vanqver_spec(p, params, 0.1), 3);
  CHECK(trace.samples.back().value ==
        doctest::Approx(fin.eigenvalues[1] - fin.eigenvalues[0]).epsilon(1e-10));
  for (const auto& x : trace.samples) CHECK(x.value >= 0.0);
}

TEST_CASE("adiabatic bound of the single-qubit spec matches the analytic value") {
  // H = A Z + B X has gap 2r with r = sqrt(A^2 + B^2); the matrix element of
  // dH/ds between the two eigenvectors is |B'A - A'B| / r = 2s / r.
  const auto b = adiabatic_bound(z_to_x(1.0), 9);
  for (const auto& x : b) {
    const double s = x.s;
    const double a = 1 - s * s, bb = s * s;
    const double r = std::sqrt(a * a + bb * bb);
    CHECK_FALSE(x.gap_collapsed);
    CHECK(x.value == doctest::Approx(s / (2 * r * r * r)).epsilon(1e-10));
  }
}

TEST_CASE("adiabatic bound at s = 1 sees the navigator derivative -alpha") {
  // At s = 1, H = Z with gap 2 and dH/ds = -alpha X, so the bound is alpha / 4.
  for (double alpha : {1.0, 2.5}) {
    const auto spec = spec_of(PauliSum::from_terms({{"Z", 1.0}}),
                              PauliSum::from_terms({{"Z", 1.0}}),
                              PauliSum::from_terms({{"X", 1.0}}), 1.0, alpha);
    const auto b = adiabatic_bound(spec, 2);
    CHECK(b.back().s == 1.0);
    CHECK(b.back().value == doctest::Approx(alpha / 4).epsilon(1e-12));
  }
}

TEST_CASE("adiabatic bound vanishes for a symmetric spec without navigator") {
  std::mt19937_64 rng(11);
  const PauliSum h = test::random_real_sum(rng, 3, 8);
  for (const auto& x : adiabatic_bound(spec_of(h, h, PauliSum(3), 1.0), 7)) {
    CHECK(x.value == doctest::Approx(0.0).epsilon(1e-12));
  }
}

TEST_CASE("collapsed gap makes the bound infinite and flagged") {
  const PauliSum zi = PauliSum::from_terms({{"ZI", 1.0}});
  const auto b = adiabatic_bound(spec_of(zi, zi, PauliSum(2), 1.0), 3);
  for (const auto& x : b) {
    CHECK(x.gap_collapsed);
    CHECK(std::isinf(x.value));
  }
}

TEST_CASE("overlap starts at one and stays within [0, 1]") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 5; ++trial) {
    const auto spec = spec_of(PauliSum::from_terms({{"ZI", 1.0}, {"IZ", 0.7}}),
                              test::random_real_sum(rng, 2, 6),
                              test::random_real_sum(rng, 2, 4), 1.5);
    // Ground state of Z_0 + 0.7 Z_1 is |11>.
    const auto tr = overlap_trace(spec, StateVector::basis_state(2, 3), 9);
    REQUIRE(tr.samples.size() == 9);
    CHECK(tr.samples.front().value == doctest::Approx(1.0).epsilon(1e-12));
    for (const auto& x : tr.samples) {
      CHECK(x.value >= 0.0);
      CHECK(x.value <= 1.0 + 1e-10);
    }
  }
}

TEST_CASE("degenerate ground space uses the projection norm") {
  // ZI has the two-fold ground space span{|10>, |11>}.
  const PauliSum zi = PauliSum::from_terms({{"ZI", 1.0}});
  const double r = 1 / std::sqrt(2.0);
  StateVector psi(2, {0, 0, r, r});
  const auto tr = overlap_trace(spec_of(zi, zi, PauliSum(2), 1.0), psi, 3);
  CHECK(tr.degenerate.size() == 3);
  for (const auto& x : tr.samples) CHECK(x.value == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("sector diagonalization agrees with the full register for H2") {
  const Problem& p = h2();
  const AnnealSpec spec = make_vanqver_spec(p, VariationalParams::initial(p), 0.2);
  DiagnosticsOptions sector;
  sector.sector = p.basis();
  const auto full = overlap_trace(spec, p.reference_state(), 5);
  const auto restricted = overlap_trace(spec, p.reference_state(), 5, sector);
  for (std::size_t j = 0; j < full.samples.size(); ++j) {
    CHECK(restricted.samples[j].value == doctest::Approx(full.samples[j].value).epsilon(1e-9));
  }
}

TEST_CASE("diagnostics reject registers above the cap") {
  DiagnosticsOptions o;
  o.qubit_cap = 1;
  CHECK_THROWS_AS(gap_trace(spec_of(PauliSum::from_terms({{"ZZ", 1.0}}), PauliSum(2),
                                    PauliSum(2), 1.0),
                            3, o),
                  DimensionError);
}

TEST_CASE("fix_phase makes the largest amplitude real and positive") {
  std::vector<Complex> v{{0.1, 0.2}, {0.0, -0.9}, {0.3, 0.0}};
  fix_phase(v);
  CHECK(v[1].real() == doctest::Approx(0.9));
  CHECK(v[1].imag() == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(std::abs(v[0]) == doctest::Approx(std::sqrt(0.05)));
}

// ---------------------------------------------------------------------------

TEST_CASE("grouping: IIXX and IXXI share a group rotating qubits 1, 2, 3") {
  const auto g = group_commuting(PauliSum::from_terms({{"IIXX", 0.5}, {"IXXI", 0.25}}));
  REQUIRE(g.groups.size() == 1);
  const std::vector<BasisRotation> expect{BasisRotation::none, BasisRotation::x_to_z,
                                          BasisRotation::x_to_z, BasisRotation::x_to_z};
  CHECK(g.groups[0].rotation == expect);
}

TEST_CASE("grouping: an all-Z Hamiltonian is one group with no rotation") {
  const Problem& p = h2();
  const auto g = group_commuting(p.h_mp() - PauliSum::identity(4, p.h_mp().coefficient(
                                                                      PauliString(4))));
  REQUIRE(g.groups.size() == 1);
  for (auto r : g.groups[0].rotation) CHECK(r == BasisRotation::none);
}

TEST_CASE("grouping: XX and YY split qubit-wise but not under full commutation") {
  const PauliSum h = PauliSum::from_terms({{"XX", 1.0}, {"YY", 1.0}});
  CHECK(group_commuting(h).groups.size() == 2);
  CHECK(group_commuting(h, CommutationMode::full).groups.size() == 1);
}

TEST_CASE("grouping order follows descending magnitude") {
  const auto g =
      group_commuting(PauliSum::from_terms({{"XI", 0.1}, {"ZI", -0.9}, {"YI", 0.5}}));
  REQUIRE(g.groups.size() == 3);
  CHECK(g.groups[0].terms[0].to_letters() == "ZI");
  CHECK(g.groups[1].terms[0].to_letters() == "YI");
  CHECK(g.groups[2].terms[0].to_letters() == "XI");
}

TEST_CASE("grouping partitions molecular Hamiltonians into qubit-wise groups") {
  for (const char* name : {"h2", "lih"}) {
    const Problem p = Problem::from_fixture(load_fixture(name));
    const PauliSum& h = p.h_fin();
    const auto g = group_commuting(h);
    std::set<PauliString> seen;
    std::size_t count = 0;
    PauliSum rebuilt(h.n_qubits());
    for (const auto& grp : g.groups) {
      for (std::size_t a = 0; a < grp.terms.size(); ++a) {
        seen.insert(grp.terms[a]);
        rebuilt.add_term(grp.terms[a], grp.coefficients[a]);
        for (std::size_t b = a + 1; b < grp.terms.size(); ++b) {
          CHECK(commutes(grp.terms[a], grp.terms[b], CommutationMode::qubit_wise));
        }
      }
      count += grp.terms.size();
    }
    CHECK(count == h.size());
    CHECK(seen.size() == h.size());
    CHECK(g.groups.size() <= h.size());
    CHECK(rebuilt.max_abs_difference(h) == 0.0);

    // Regrouping the concatenation gives a partition of the same terms.
    PauliSum concat(h.n_qubits());
    for (const auto& grp : g.groups) {
      for (std::size_t a = 0; a < grp.terms.size(); ++a) {
        concat.add_term(grp.terms[a], grp.coefficients[a]);
      }
    }
    std::size_t again = 0;
    for (const auto& grp : group_commuting(concat).groups) again += grp.terms.size();
    CHECK(again == h.size());
  }
}

TEST_CASE("grouped expectation reproduces the direct expectation") {
  std::mt19937_64 rng(2024);
  const Problem& p = h2();
  for (int trial = 0; trial < 20; ++trial) {
    const StateVector psi = test::random_state(rng, 4);
    const PauliSum h = trial % 2 ? p.h_fin() : test::random_real_sum(rng, 4, 12);
    const double direct = expectation(psi, h);
    CHECK(grouped_expectation(group_commuting(h), psi.amplitudes()) ==
          doctest::Approx(direct).epsilon(1e-10));
  }
}

TEST_CASE("group_expectation rejects a group that is not qubit-wise") {
  MeasurementGroup g;
  g.terms = {PauliString::from_letters("XX"), PauliString::from_letters("YY")};
  g.coefficients = {1.0, 1.0};
  g.rotation = {BasisRotation::x_to_z, BasisRotation::x_to_z};
  const StateVector psi = StateVector::basis_state(2, 0);
  CHECK_THROWS_AS(group_expectation(g, psi.amplitudes()), std::invalid_argument);
}
