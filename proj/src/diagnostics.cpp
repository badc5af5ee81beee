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

#include "vanqver/diagnostics.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace vanqver {

namespace {

Spectrum instantaneous_spectrum(const AnnealSpec& spec, double t, int k,
                                bool with_vectors, const DiagnosticsOptions& options) {
  const PauliSum h = hamiltonian_at(spec, t);
  if (options.sector) return subspace_spectrum(h, *options.sector, k, with_vectors);
  return full_spectrum(h, k, with_vectors, options.qubit_cap);
}

void check_samples(const AnnealSpec& spec, int n_samples, const DiagnosticsOptions& options) {
  spec.validate();
  if (n_samples < 1) throw std::invalid_argument("need at least one sample");
  if (!options.sector && spec.n_qubits() > options.qubit_cap) {
    throw DimensionError("register exceeds the diagonalization cap");
  }
  if (options.sector && options.sector->n_qubits() != spec.n_qubits()) {
    throw DimensionError("sector and spec registers differ");
  }
}

// Number of eigenvalues within tol of the lowest one.
Eigen::Index ground_multiplicity(const Eigen::VectorXd& e, double tol) {
  Eigen::Index m = 1;
  while (m < e.size() && e[m] - e[0] < tol) ++m;
  return m;
}

Complex column_dot(const Eigen::MatrixXcd& vecs, Eigen::Index col,
                   std::span<const Complex> psi) {
  Complex acc{};
  for (Eigen::Index r = 0; r < vecs.rows(); ++r) {
    acc += std::conj(vecs(r, col)) * psi[static_cast<std::size_t>(r)];
  }
  return acc;
}

BasisRotation rotation_for(PauliLetter l) {
  switch (l) {
    case PauliLetter::X: return BasisRotation::x_to_z;
    case PauliLetter::Y: return BasisRotation::y_to_z;
    default: return BasisRotation::none;
  }
}

void rotate_qubit(std::span<Complex> psi, int n_qubits, int qubit, BasisRotation rot) {
  if (rot == BasisRotation::none) return;
  const std::uint64_t bit = std::uint64_t{1} << (n_qubits - 1 - qubit);
  const double r = 1.0 / std::sqrt(2.0);
  const Complex minus_i{0.0, -1.0};
  for (std::uint64_t b = 0; b < psi.size(); ++b) {
    if (b & bit) continue;
    Complex a0 = psi[b];
    Complex a1 = psi[b | bit];
    if (rot == BasisRotation::y_to_z) a1 *= minus_i;  // S^dagger
    psi[b] = r * (a0 + a1);
    psi[b | bit] = r * (a0 - a1);
  }
}

}  // namespace

std::vector<double> sample_times(double T, int n_samples) {
  if (n_samples < 1) throw std::invalid_argument("need at least one sample");
  if (n_samples == 1) return {T};
  std::vector<double> t(n_samples);
  for (int j = 0; j < n_samples; ++j) {
    t[j] = j == n_samples - 1 ? T : T * j / (n_samples - 1);
  }
  return t;
}

void fix_phase(std::span<Complex> v) {
  std::size_t best = 0;
  double mag = -1.0;
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (std::abs(v[k]) > mag + 1e-14) {
      mag = std::abs(v[k]);
      best = k;
    }
  }
  if (mag <= 0.0) return;
  const Complex phase = std::conj(v[best]) / mag;
  for (auto& a : v) a *= phase;
}

GapTrace gap_trace(const AnnealSpec& spec, int n_samples, const DiagnosticsOptions& options) {
  check_samples(spec, n_samples, options);
  GapTrace out;
  for (double t : sample_times(spec.schedule.T(), n_samples)) {
    const Spectrum s = instantaneous_spectrum(spec, t, 2, false, options);
    const double gap = s.eigenvalues.size() < 2 ? 0.0 : s.eigenvalues[1] - s.eigenvalues[0];
    out.samples.push_back({t, std::max(gap, 0.0)});
  }
  return out;
}

OverlapTrace overlap_trace(const AnnealSpec& spec, const StateVector& psi0, int n_samples,
                           const DiagnosticsOptions& options) {
  check_samples(spec, n_samples, options);
  const double T = spec.schedule.T();
  std::vector<TimedState> states;
  if (n_samples == 1 || T == 0.0) {
    for (double t : sample_times(T, n_samples)) {
      states.push_back({t, t == 0.0 ? psi0 : evolve(spec, psi0, options.propagation)});
    }
  } else {
    states = evolve_trace(spec, psi0, n_samples, options.propagation);
  }
  OverlapTrace out;
  for (std::size_t j = 0; j < states.size(); ++j) {
    const double t = states[j].t;
    Spectrum s = instantaneous_spectrum(spec, t, -1, true, options);
    const Eigen::Index m = ground_multiplicity(s.eigenvalues, options.degeneracy_tol);
    const auto psi = states[j].state.amplitudes();
    double value = 0.0;
    if (m == 1) {
      Eigen::VectorXcd phi0 = s.eigenvectors.col(0);
      fix_phase({phi0.data(), static_cast<std::size_t>(phi0.size())});
      Complex acc{};
      for (Eigen::Index r = 0; r < phi0.size(); ++r) {
        acc += std::conj(phi0[r]) * psi[static_cast<std::size_t>(r)];
      }
      value = std::abs(acc);
    } else {
      double w = 0.0;
      for (Eigen::Index c = 0; c < m; ++c) w += std::norm(column_dot(s.eigenvectors, c, psi));
      value = std::sqrt(w);
      out.degenerate.push_back(j);
    }
    out.samples.push_back({t, std::min(value, 1.0 + 1e-10)});
  }
  return out;
}

std::vector<BoundSample> adiabatic_bound(const AnnealSpec& spec, int n_samples,
                                         const DiagnosticsOptions& options) {
  check_samples(spec, n_samples, options);
  std::vector<BoundSample> out;
  const double T = spec.schedule.T();
  for (double s : sample_times(1.0, n_samples)) {
    const Spectrum sp = instantaneous_spectrum(spec, s * T, 2, true, options);
    BoundSample b;
    b.s = s;
    if (sp.eigenvalues.size() < 2) {
      out.push_back(b);
      continue;
    }
    const double gap = sp.eigenvalues[1] - sp.eigenvalues[0];
    const ScheduleWeights d = spec.schedule.derivative_at_fraction(s);
    PauliSum dh(spec.n_qubits());
    if (!spec.h_ini.empty()) dh += spec.h_ini * Complex{d.a};
    if (!spec.h_fin.empty()) dh += spec.h_fin * Complex{d.b};
    if (!spec.h_nav.empty()) dh += spec.h_nav * Complex{d.c};
    const Eigen::VectorXcd phi0 = sp.eigenvectors.col(0);
    const Eigen::VectorXcd phi1 = sp.eigenvectors.col(1);
    Eigen::VectorXcd dphi0(phi0.size());
    apply(dh, {phi0.data(), static_cast<std::size_t>(phi0.size())},
          {dphi0.data(), static_cast<std::size_t>(dphi0.size())});
    const double num = std::abs(phi1.dot(dphi0));  // dot conjugates the left
    if (gap < 1e-12) {
      b.value = std::numeric_limits<double>::infinity();
      b.gap_collapsed = true;
    } else {
      b.value = num / (gap * gap);
    }
    out.push_back(b);
  }
  return out;
}

// ---------------------------------------------------------------------------

MeasurementGrouping group_commuting(const PauliSum& h, CommutationMode mode) {
  std::vector<std::pair<PauliString, Complex>> terms(h.terms().begin(), h.terms().end());
  std::stable_sort(terms.begin(), terms.end(), [](const auto& a, const auto& b) {
    return std::abs(a.second) > std::abs(b.second);
  });
  MeasurementGrouping out;
  out.n_qubits = h.n_qubits();
  std::optional<std::pair<PauliString, Complex>> identity;
  for (const auto& [s, c] : terms) {
    if (s.is_identity()) {
      identity = {s, c};
      continue;
    }
    auto fits = [&, &s = s](const MeasurementGroup& g) {
      return std::all_of(g.terms.begin(), g.terms.end(),
                         [&](const PauliString& t) { return commutes(s, t, mode); });
    };
    auto it = std::find_if(out.groups.begin(), out.groups.end(), fits);
    if (it == out.groups.end()) it = out.groups.insert(out.groups.end(), MeasurementGroup{});
    it->terms.push_back(s);
    it->coefficients.push_back(c);
  }
  if (identity) out.groups.push_back({{identity->first}, {identity->second}, {}});
  for (auto& g : out.groups) {
    g.rotation.assign(out.n_qubits, BasisRotation::none);
    for (int q = 0; q < out.n_qubits; ++q) {
      for (const auto& s : g.terms) {
        const PauliLetter l = s.letter(q);
        if (l == PauliLetter::X || l == PauliLetter::Y) g.rotation[q] = rotation_for(l);
      }
    }
  }
  return out;
}

double group_expectation(const MeasurementGroup& group, std::span<const Complex> state) {
  if (group.terms.empty()) return 0.0;
  const int n = group.terms.front().n_qubits();
  if (state.size() != (std::size_t{1} << n)) throw DimensionError("state length mismatch");
  std::vector<Complex> psi(state.begin(), state.end());
  for (int q = 0; q < n; ++q) {
    const BasisRotation rot =
        q < static_cast<int>(group.rotation.size()) ? group.rotation[q] : BasisRotation::none;
    for (const auto& s : group.terms) {
      const PauliLetter l = s.letter(q);
      if (l != PauliLetter::I && rotation_for(l) != rot) {
        throw std::invalid_argument("group is not qubit-wise commuting");
      }
    }
    rotate_qubit(psi, n, q, rot);
  }
  double total = 0.0;
  for (std::size_t k = 0; k < group.terms.size(); ++k) {
    // After rotation every non-identity factor reads as Z.
    const auto& s = group.terms[k];
    const std::uint64_t mask = s.x_mask() | s.z_mask();
    double value = 0.0;
    for (std::uint64_t b = 0; b < psi.size(); ++b) {
      const double p = std::norm(psi[b]);
      value += (std::popcount(b & mask) & 1) ? -p : p;
    }
    total += group.coefficients[k].real() * value;
  }
  return total;
}

double grouped_expectation(const MeasurementGrouping& grouping,
                           std::span<const Complex> state) {
  double total = 0.0;
  for (const auto& g : grouping.groups) total += group_expectation(g, state);
  return total;
}

}  // namespace vanqver
