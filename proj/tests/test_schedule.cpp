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

#include "doctest.h"
#include "vanqver/schedule.hpp"

using namespace vanqver;

TEST_CASE("evaluate: endpoints and midpoint") {
  Schedule s(2.5);
  auto w0 = s.evaluate(0.0);
  CHECK(w0.a == 1.0);
  CHECK(w0.b == 0.0);
  CHECK(w0.c == 0.0);
  auto w1 = s.evaluate(2.5);
  CHECK(w1.a == 0.0);
  CHECK(w1.b == 1.0);
  CHECK(w1.c == 0.0);
  auto wm = s.evaluate(1.25);
  CHECK(wm.a == doctest::Approx(0.75));
  CHECK(wm.b == doctest::Approx(0.25));
  CHECK(wm.c == doctest::Approx(0.25));
  CHECK_THROWS_AS(s.evaluate(-1e-9), std::out_of_range);
  CHECK_THROWS_AS(s.evaluate(2.5 + 1e-9), std::out_of_range);
  CHECK_THROWS(Schedule(-1.0));
  CHECK_THROWS(Schedule(1.0, 0.0));
}

TEST_CASE("profile identities") {
  for (double alpha : {0.5, 1.0, 3.0}) {
    Schedule s(0.7, alpha);
    for (int k = 0; k <= 1000; ++k) {
      const double t = 0.7 * k / 1000.0;
      auto w = s.evaluate(t);
      CHECK(std::abs(w.a + w.b - 1.0) <= 1e-14);
      if (k > 0 && k < 1000) CHECK(w.c > 0.0);
      CHECK(w.c <= alpha / 4 + 1e-14);
    }
    CHECK(std::abs(s.evaluate(0.35).c - alpha / 4) <= 1e-14);
    auto d = s.derivative_at_fraction(1.0);
    CHECK(d.a == -2.0);
    CHECK(d.b == 2.0);
    CHECK(d.c == -alpha);
  }
  Schedule zero(0.0);
  CHECK(zero.evaluate(0.0).a == 1.0);
  CHECK_THROWS(zero.evaluate(0.1));
}

TEST_CASE("hamiltonian_at") {
  AnnealSpec spec;
  spec.h_ini = PauliSum::from_terms({{"ZI", 1.0}, {"IZ", -0.5}});
  spec.h_fin = PauliSum::from_terms({{"XX", 0.3}, {"ZZ", 0.2}, {"II", -1.0}});
  spec.schedule = Schedule(2.0);
  CHECK(hamiltonian_at(spec, 0.0).max_abs_difference(spec.h_ini) == 0.0);
  CHECK(hamiltonian_at(spec, 2.0).max_abs_difference(spec.h_fin) == 0.0);
  auto mid = hamiltonian_at(spec, 0.6);
  auto w = spec.schedule.evaluate(0.6);
  CHECK(mid.max_abs_difference(w.a * spec.h_ini + w.b * spec.h_fin) < 1e-15);

  spec.h_nav = PauliSum::from_terms({{"XY", 0.1}, {"YX", -0.1}});
  auto with_nav = hamiltonian_at(spec, 0.6);
  CHECK(with_nav.max_abs_difference(w.a * spec.h_ini + w.b * spec.h_fin + w.c * spec.h_nav) < 1e-15);
  Eigen::MatrixXcd m = to_matrix(with_nav);
  CHECK((m - m.adjoint()).cwiseAbs().maxCoeff() < 1e-14);

  spec.h_nav = PauliSum::from_terms({{"XYZ", 0.1}});
  CHECK_THROWS_AS(spec.validate(), DimensionError);
}

TEST_CASE("default_time_steps") {
  AnnealSpec spec;
  spec.h_ini = PauliSum::from_terms({{"Z", 1.0}});
  spec.h_fin = PauliSum::from_terms({{"X", 2.0}, {"I", 100.0}});
  spec.schedule = Schedule(0.1);
  CHECK(default_time_steps(spec) == 200);
  spec.schedule = Schedule(10.0);
  // Identity terms carry no dynamics and are excluded from the norm.
  CHECK(default_time_steps(spec) == 3000);
}
