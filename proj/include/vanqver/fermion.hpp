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

#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "vanqver/pauli.hpp"

namespace vanqver {

class FcidumpError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Thrown when initial-Hamiltonian signs would select a different particle
/// sector than the reference determinant.
class SignConstraintError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// One- and two-electron integrals over spatial orbitals, in Hartree.
/// Two-electron integrals are stored in chemists' notation (pq|rs).
class IntegralSet {
 public:
  IntegralSet() = default;
  IntegralSet(int n_spatial_orbitals, int n_electrons, int ms2 = 0);

  int n_spatial_orbitals() const noexcept { return n_orb_; }
  int n_spin_orbitals() const noexcept { return 2 * n_orb_; }
  int n_electrons() const noexcept { return n_elec_; }
  int ms2() const noexcept { return ms2_; }
  double e_nuclear() const noexcept { return e_nuc_; }
  void set_e_nuclear(double e) noexcept { e_nuc_ = e; }
  const std::string& point_group_note() const noexcept { return note_; }
  void set_point_group_note(std::string note) { note_ = std::move(note); }

  double one_body(int p, int q) const { return h1_(p, q); }
  /// (pq|rs), chemists' notation.
  double two_body(int p, int q, int r, int s) const {
    return h2_[index(p, q, r, s)];
  }

  /// Sets h_pq and its transpose image.
  void set_one_body(int p, int q, double value);
  /// Sets (pq|rs) and all eight real-orbital permutational images.
  void set_two_body(int p, int q, int r, int s, double value);

  /// Throws if the stored tensors break the required symmetries beyond tol.
  void validate(double tol = 1e-10) const;

 private:
  std::size_t index(int p, int q, int r, int s) const noexcept {
    const std::size_t n = static_cast<std::size_t>(n_orb_);
    return ((static_cast<std::size_t>(p) * n + q) * n + r) * n + s;
  }

  int n_orb_ = 0;
  int n_elec_ = 0;
  int ms2_ = 0;
  double e_nuc_ = 0.0;
  std::string note_;
  Eigen::MatrixXd h1_;
  std::vector<double> h2_;
};

/// Parses FCIDUMP text: a &FCI namelist header (NORB, NELEC, MS2), then
/// `value i j k l` records with 1-based indices. `i j 0 0` is one-electron,
/// `0 0 0 0` the scalar, `i 0 0 0` (orbital energies) is ignored.
IntegralSet parse_fcidump(std::istream& in);
IntegralSet load_fcidump(const std::string& path);

enum class SpinOrdering { interleaved, blocked };

SpinOrdering parse_spin_ordering(std::string_view name);
std::string_view to_string(SpinOrdering ordering);

/// Spin-orbital (= qubit) layout and reference occupation.
struct SpinOrbitalMap {
  SpinOrdering ordering = SpinOrdering::interleaved;
  int n_spatial = 0;
  std::vector<int> occupied;
  std::vector<int> virtuals;

  int n_spin_orbitals() const noexcept { return 2 * n_spatial; }
  /// Qubit index of spatial orbital p with spin (0 = up, 1 = down).
  int spin_orbital(int spatial, int spin) const noexcept {
    return ordering == SpinOrdering::interleaved ? 2 * spatial + spin
                                                 : spin * n_spatial + spatial;
  }
  int spatial_of(int so) const noexcept {
    return ordering == SpinOrdering::interleaved ? so / 2 : so % n_spatial;
  }
  int spin_of(int so) const noexcept {
    return ordering == SpinOrdering::interleaved ? so % 2 : so / n_spatial;
  }
  bool is_occupied(int so) const;

  /// Aufbau reference: the lowest n_up / n_down spatial orbitals.
  static SpinOrbitalMap aufbau(const IntegralSet& ints,
                               SpinOrdering ordering = SpinOrdering::interleaved);

  /// Computational basis label of the reference determinant (1 = occupied).
  std::uint64_t reference_basis_state() const;
};

struct LadderOp {
  int index = 0;
  bool creation = false;
};

struct FermionTerm {
  Complex coeff;
  std::vector<LadderOp> ops;  ///< applied right to left, as written
};

struct FermionOperator {
  std::vector<FermionTerm> terms;

  FermionOperator& add(Complex coeff, std::vector<LadderOp> ops) {
    terms.push_back({coeff, std::move(ops)});
    return *this;
  }
};

inline LadderOp cre(int p) { return {p, true}; }
inline LadderOp ann(int p) { return {p, false}; }

/// Jordan-Wigner image; a_p = Z_0 ... Z_{p-1} (X_p + iY_p)/2.
PauliSum jordan_wigner(const FermionOperator& op, int n_spin_orbitals);

/// Second-quantized electronic Hamiltonian over spin-orbitals, mapped
/// through Jordan-Wigner, plus e_nuclear * I.
PauliSum build_final_hamiltonian(const IntegralSet& ints,
                                 const SpinOrbitalMap& map);

/// Diagonal Fock energies f_PP over spin-orbitals for the map's occupation.
std::vector<double> fock_diagonal(const IntegralSet& ints,
                                  const SpinOrbitalMap& map);

/// Sum_P f_PP (I - Z_P)/2 + e_nuclear * I.
PauliSum build_mp_hamiltonian(const IntegralSet& ints,
                              const SpinOrbitalMap& map);

/// Sign mask of the initial Hamiltonian: +1 on occupied qubits, -1 on
/// virtual ones, so that the reference determinant is its ground state.
std::vector<int> reference_sign_mask(const SpinOrbitalMap& map);

/// Sum_p eta_p Z_p; throws SignConstraintError on a zero or wrong-sign entry.
PauliSum build_initial_hamiltonian(std::span<const double> eta,
                                   const SpinOrbitalMap& map);

/// One excitation a^dag_{occ...} a_{vir...}: singles have one index on each
/// side, doubles two (occ i<j, vir a<b).
struct Excitation {
  std::vector<int> occupied;
  std::vector<int> virtuals;

  bool is_single() const noexcept { return occupied.size() == 1; }
};

/// Spin-conserving singles and doubles for the map, singles first.
std::vector<Excitation> singles_doubles(const SpinOrbitalMap& map);

/// JW image of one excitation plus its Hermitian conjugate.
PauliSum excitation_generator(const Excitation& ex, const SpinOrbitalMap& map);

/// Sum_k theta_k (A_k + A_k^dag).
PauliSum build_navigator(std::span<const double> theta,
                         std::span<const Excitation> excitations,
                         const SpinOrbitalMap& map);

struct NumberOperators {
  PauliSum total;
  PauliSum up;
  PauliSum down;
};

NumberOperators number_operators(const SpinOrbitalMap& map);

}  // namespace vanqver
