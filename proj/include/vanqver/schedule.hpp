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

#include <stdexcept>
#include <string_view>

#include "vanqver/pauli.hpp"

namespace vanqver {

/// Time-profile families. Only the quadratic family is built in.
enum class ProfileFamily { quadratic };

struct ScheduleWeights {
  double a = 0.0;  ///< initial Hamiltonian
  double b = 0.0;  ///< final Hamiltonian
  double c = 0.0;  ///< navigator
};

/**
 * Anneal time profile with s = t/T:
 *   A = 1 - s^2,  B = s^2,  C = alpha * s * (1 - s).
 *
 * T is in inverse Hartree (hbar = 1). T = 0 is allowed and means no
 * dynamics; evaluate() then accepts only t = 0.
 */
class Schedule {
 public:
  Schedule() = default;
  explicit Schedule(double T, double alpha = 1.0,
                    ProfileFamily family = ProfileFamily::quadratic);

  double T() const noexcept { return T_; }
  double alpha() const noexcept { return alpha_; }
  ProfileFamily family() const noexcept { return family_; }

  ScheduleWeights evaluate(double t) const;
  /// Weights as a function of s = t/T in [0, 1].
  ScheduleWeights at_fraction(double s) const;
  /// d(A, B, C)/ds.
  ScheduleWeights derivative_at_fraction(double s) const;

 private:
  double T_ = 0.0;
  double alpha_ = 1.0;
  ProfileFamily family_ = ProfileFamily::quadratic;
};

/// The three Hamiltonians of one anneal plus its schedule and step count.
struct AnnealSpec {
  PauliSum h_ini;
  PauliSum h_fin;
  PauliSum h_nav;
  Schedule schedule;
  int n_time_steps = 0;  ///< 0 selects default_time_steps()

  int n_qubits() const;
  /// Throws unless all non-empty sums share one register.
  void validate() const;
};

/// A(t) h_ini + B(t) h_fin + C(t) h_nav.
PauliSum hamiltonian_at(const AnnealSpec& spec, double t);

/// max(200, ceil(100 * T * ||H||)), with ||H|| bounded by the coefficient
/// one-norms of the three parts weighted by their peak schedule values.
int default_time_steps(const AnnealSpec& spec);

}  // namespace vanqver
