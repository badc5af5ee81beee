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

#include <optional>
#include <span>
#include <vector>

#include "vanqver/dynamics.hpp"
#include "vanqver/pauli.hpp"
#include "vanqver/schedule.hpp"
#include "vanqver/subspace.hpp"

namespace vanqver {

struct TraceSample {
  double t = 0.0;
  double value = 0.0;
};

/// E1(t) - E0(t) of the instantaneous Hamiltonian.
struct GapTrace {
  std::vector<TraceSample> samples;
};

/// |<phi0(t)|psi(t)>| along the anneal. A sample whose ground space is
/// degenerate uses the norm of the projection onto that space instead and
/// is listed in `degenerate`.
struct OverlapTrace {
  std::vector<TraceSample> samples;
  std::vector<std::size_t> degenerate;
};

struct BoundSample {
  double s = 0.0;
  double value = 0.0;  ///< infinity when the gap collapses
  bool gap_collapsed = false;
};

struct DiagnosticsOptions {
  /// Diagonalize inside this subspace (it must be closed under all three
  /// Hamiltonians). Unset: the full register, up to qubit_cap qubits.
  std::optional<Subspace> sector;
  int qubit_cap = kDefaultDenseQubitCap;
  /// Eigenvalues closer than this to E0 count as ground.
  double degeneracy_tol = 1e-10;
  PropagationOptions propagation{};
};

/// Uniform sample times 0, T/(n-1), ..., T; n >= 2 unless T = 0.
std::vector<double> sample_times(double T, int n_samples);

GapTrace gap_trace(const AnnealSpec& spec, int n_samples,
                   const DiagnosticsOptions& options = {});

OverlapTrace overlap_trace(const AnnealSpec& spec, const StateVector& psi0,
                           int n_samples, const DiagnosticsOptions& options = {});

/// |<phi1(s)| dH/ds |phi0(s)>| / (E1 - E0)^2 at uniform s in [0, 1].
std::vector<BoundSample> adiabatic_bound(const AnnealSpec& spec, int n_samples,
                                         const DiagnosticsOptions& options = {});

/// Multiplies the vector by the phase that makes its largest-magnitude
/// amplitude real and positive (first such index on ties).
void fix_phase(std::span<Complex> v);

// ---------------------------------------------------------------------------
// Measurement grouping

/// Per-qubit basis change before a Z-basis measurement.
enum class BasisRotation { none, x_to_z, y_to_z };

struct MeasurementGroup {
  std::vector<PauliString> terms;
  std::vector<Complex> coefficients;
  std::vector<BasisRotation> rotation;  ///< one per qubit
};

struct MeasurementGrouping {
  int n_qubits = 0;
  std::vector<MeasurementGroup> groups;
};

/// Greedy first-fit over terms sorted by descending |coefficient| (ties by
/// string order). Every pair within a group commutes under `mode`. The
/// identity term, if present, forms a group of its own at the end.
MeasurementGrouping group_commuting(const PauliSum& h,
                                    CommutationMode mode = CommutationMode::qubit_wise);

/// Expectation of one group's terms from the Z-basis probabilities of the
/// rotated state. Only valid for qubit-wise groups.
double group_expectation(const MeasurementGroup& group, std::span<const Complex> state);

/// Sum of group_expectation over all groups.
double grouped_expectation(const MeasurementGrouping& grouping,
                           std::span<const Complex> state);

}  // namespace vanqver
