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

#include "vanqver/schedule.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace vanqver {

Schedule::Schedule(double T, double alpha, ProfileFamily family)
    : T_(T), alpha_(alpha), family_(family) {
  if (!(T >= 0.0) || !std::isfinite(T)) {
    throw std::invalid_argument("annealing time must be finite and >= 0");
  }
  if (!(alpha > 0.0)) throw std::invalid_argument("alpha must be positive");
}

ScheduleWeights Schedule::evaluate(double t) const {
  if (!(t >= 0.0 && t <= T_)) {
    throw std::out_of_range("t = " + std::to_string(t) + " outside [0, " +
                            std::to_string(T_) + "]");
  }
  if (T_ == 0.0) return at_fraction(0.0);
  // Endpoints exactly, independent of round-off in t / T.
  if (t == T_) return at_fraction(1.0);
  return at_fraction(t / T_);
}

ScheduleWeights Schedule::at_fraction(double s) const {
  if (!(s >= 0.0 && s <= 1.0)) throw std::out_of_range("s outside [0, 1]");
  const double s2 = s * s;
  return {1.0 - s2, s2, alpha_ * s * (1.0 - s)};
}

ScheduleWeights Schedule::derivative_at_fraction(double s) const {
  if (!(s >= 0.0 && s <= 1.0)) throw std::out_of_range("s outside [0, 1]");
  return {-2.0 * s, 2.0 * s, alpha_ * (1.0 - 2.0 * s)};
}

int AnnealSpec::n_qubits() const {
  for (const PauliSum* h : {&h_ini, &h_fin, &h_nav}) {
    if (h->n_qubits() != 0) return h->n_qubits();
  }
  return 0;
}

void AnnealSpec::validate() const {
  const int n = n_qubits();
  if (n == 0) throw std::invalid_argument("anneal spec has no register");
  for (const PauliSum* h : {&h_ini, &h_fin, &h_nav}) {
    if (h->n_qubits() != 0 && h->n_qubits() != n) {
      throw DimensionError("anneal Hamiltonians act on different registers");
    }
  }
  if (n_time_steps < 0) throw std::invalid_argument("negative step count");
}

PauliSum hamiltonian_at(const AnnealSpec& spec, double t) {
  spec.validate();
  const auto w = spec.schedule.evaluate(t);
  PauliSum h(spec.n_qubits());
  if (w.a != 0.0) h += spec.h_ini * Complex{w.a, 0.0};
  if (w.b != 0.0) h += spec.h_fin * Complex{w.b, 0.0};
  if (w.c != 0.0) h += spec.h_nav * Complex{w.c, 0.0};
  return h;
}

int default_time_steps(const AnnealSpec& spec) {
  const double norm = spec.h_ini.coefficient_one_norm() +
                      spec.h_fin.coefficient_one_norm() +
                      0.25 * spec.schedule.alpha() * spec.h_nav.coefficient_one_norm();
  const double want = std::ceil(100.0 * spec.schedule.T() * norm);
  return static_cast<int>(std::clamp(want, 200.0, 1e8));
}

}  // namespace vanqver
