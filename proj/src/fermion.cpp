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

#include "vanqver/fermion.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <sstream>

namespace vanqver {

IntegralSet::IntegralSet(int n_spatial_orbitals, int n_electrons, int ms2)
    : n_orb_(n_spatial_orbitals), n_elec_(n_electrons), ms2_(ms2) {
  if (n_orb_ < 1) throw std::invalid_argument("NORB must be positive");
  if (n_elec_ < 0 || n_elec_ > 2 * n_orb_) {
    throw std::invalid_argument("NELEC must lie in [0, 2*NORB]");
  }
  if ((n_elec_ + ms2_) % 2 != 0 || std::abs(ms2_) > n_elec_) {
    throw std::invalid_argument("MS2 inconsistent with NELEC");
  }
  h1_ = Eigen::MatrixXd::Zero(n_orb_, n_orb_);
  h2_.assign(static_cast<std::size_t>(n_orb_) * n_orb_ * n_orb_ * n_orb_, 0.0);
}

void IntegralSet::set_one_body(int p, int q, double value) {
  h1_(p, q) = value;
  h1_(q, p) = value;
}

void IntegralSet::set_two_body(int p, int q, int r, int s, double value) {
  for (auto [a, b, c, d] : {std::array{p, q, r, s}, std::array{q, p, r, s},
                            std::array{p, q, s, r}, std::array{q, p, s, r},
                            std::array{r, s, p, q}, std::array{s, r, p, q},
                            std::array{r, s, q, p}, std::array{s, r, q, p}}) {
    h2_[index(a, b, c, d)] = value;
  }
}

void IntegralSet::validate(double tol) const {
  for (int p = 0; p < n_orb_; ++p) {
    for (int q = 0; q < n_orb_; ++q) {
      if (std::abs(h1_(p, q) - h1_(q, p)) > tol) {
        throw std::invalid_argument("one-electron integrals not symmetric");
      }
      for (int r = 0; r < n_orb_; ++r) {
        for (int s = 0; s < n_orb_; ++s) {
          const double v = two_body(p, q, r, s);
          if (std::abs(v - two_body(q, p, r, s)) > tol ||
              std::abs(v - two_body(p, q, s, r)) > tol ||
              std::abs(v - two_body(r, s, p, q)) > tol) {
            throw std::invalid_argument(
                "two-electron integrals lack 8-fold symmetry");
          }
        }
      }
    }
  }
}

// ---------------------------------------------------------------------------
// FCIDUMP

namespace {

int header_int(const std::string& header, const std::string& key,
               bool required, int fallback) {
  // Keys appear as KEY=value with arbitrary spacing and comma separators.
  std::string upper = header;
  std::transform(upper.begin(), upper.end(), upper.begin(),
                 [](unsigned char c) { return std::toupper(c); });
  std::size_t pos = 0;
  while ((pos = upper.find(key, pos)) != std::string::npos) {
    const bool boundary =
        pos == 0 || !std::isalnum(static_cast<unsigned char>(upper[pos - 1]));
    std::size_t eq = pos + key.size();
    while (eq < upper.size() && std::isspace(static_cast<unsigned char>(upper[eq]))) ++eq;
    if (boundary && eq < upper.size() && upper[eq] == '=') {
      std::istringstream value(upper.substr(eq + 1));
      int v = 0;
      if (!(value >> v)) throw FcidumpError("malformed header: bad " + key);
      return v;
    }
    pos += key.size();
  }
  if (required) throw FcidumpError("malformed header: missing " + key);
  return fallback;
}

}  // namespace

IntegralSet parse_fcidump(std::istream& in) {
  std::string header;
  std::string line;
  bool opened = false;
  bool closed = false;
  while (std::getline(in, line)) {
    std::string upper = line;
    std::transform(upper.begin(), upper.end(), upper.begin(),
                   [](unsigned char c) { return std::toupper(c); });
    if (!opened) {
      if (upper.find_first_not_of(" \t\r") == std::string::npos) continue;
      if (upper.find("&FCI") == std::string::npos) {
        throw FcidumpError("malformed header: expected &FCI");
      }
      opened = true;
    }
    header += line + ' ';
    if (upper.find("&END") != std::string::npos ||
        upper.find_first_of('/') != std::string::npos) {
      closed = true;
      break;
    }
  }
  if (!closed) throw FcidumpError("malformed header: unterminated namelist");

  const int norb = header_int(header, "NORB", true, 0);
  const int nelec = header_int(header, "NELEC", true, 0);
  const int ms2 = header_int(header, "MS2", false, 0);
  if (norb < 1 || norb > 31) throw FcidumpError("malformed header: NORB out of range");
  IntegralSet ints = [&] {
    try {
      return IntegralSet(norb, nelec, ms2);
    } catch (const std::invalid_argument& e) {
      throw FcidumpError(std::string("malformed header: ") + e.what());
    }
  }();

  constexpr double kAsymmetryTol = 1e-8;
  std::vector<bool> seen2(static_cast<std::size_t>(norb) * norb * norb * norb, false);
  std::vector<bool> seen1(static_cast<std::size_t>(norb) * norb, false);
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::istringstream rec(line);
    double value = 0.0;
    int i = 0, j = 0, k = 0, l = 0;
    if (!(rec >> value >> i >> j >> k >> l)) {
      throw FcidumpError("malformed integral record after header, line " +
                         std::to_string(lineno));
    }
    for (int idx : {i, j, k, l}) {
      if (idx < 0 || idx > norb) {
        throw FcidumpError("index " + std::to_string(idx) +
                           " out of range on record " + std::to_string(lineno));
      }
    }
    if (i == 0 && j == 0 && k == 0 && l == 0) {
      ints.set_e_nuclear(value);
    } else if (k == 0 && l == 0) {
      if (j == 0) continue;  // orbital energy
      const int p = i - 1, q = j - 1;
      // Check every image against earlier records before marking any of them.
      const std::size_t key = static_cast<std::size_t>(p) * norb + q;
      const std::size_t key_t = static_cast<std::size_t>(q) * norb + p;
      if ((seen1[key] || seen1[key_t]) &&
          std::abs(ints.one_body(p, q) - value) > kAsymmetryTol) {
        throw FcidumpError("asymmetric one-electron integral at (" +
                           std::to_string(i) + "," + std::to_string(j) + ")");
      }
      seen1[key] = seen1[key_t] = true;
      ints.set_one_body(p, q, value);
    } else {
      if (i == 0 || j == 0 || k == 0 || l == 0) {
        throw FcidumpError("index out of range: mixed zero and nonzero "
                           "indices on record " + std::to_string(lineno));
      }
      const int p = i - 1, q = j - 1, r = k - 1, s = l - 1;
      const std::size_t n = static_cast<std::size_t>(norb);
      auto flat = [n](int a, int b, int c, int d) {
        return ((static_cast<std::size_t>(a) * n + b) * n + c) * n + d;
      };
      const std::array<std::array<int, 4>, 8> images{
          std::array{p, q, r, s}, std::array{q, p, r, s}, std::array{p, q, s, r},
          std::array{q, p, s, r}, std::array{r, s, p, q}, std::array{s, r, p, q},
          std::array{r, s, q, p}, std::array{s, r, q, p}};
      for (auto [a, b, c, d] : images) {
        if (seen2[flat(a, b, c, d)] &&
            std::abs(ints.two_body(a, b, c, d) - value) > kAsymmetryTol) {
          throw FcidumpError("asymmetric two-electron integral (" +
                             std::to_string(i) + std::to_string(j) + "|" +
                             std::to_string(k) + std::to_string(l) + ")");
        }
      }
      for (auto [a, b, c, d] : images) seen2[flat(a, b, c, d)] = true;
      ints.set_two_body(p, q, r, s, value);
    }
  }
  return ints;
}

IntegralSet load_fcidump(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FcidumpError("cannot open FCIDUMP file: " + path);
  return parse_fcidump(in);
}

// ---------------------------------------------------------------------------
// Orbital layout

SpinOrdering parse_spin_ordering(std::string_view name) {
  if (name == "interleaved") return SpinOrdering::interleaved;
  if (name == "blocked") return SpinOrdering::blocked;
  throw std::invalid_argument("unknown spin-orbital ordering: " + std::string(name));
}

std::string_view to_string(SpinOrdering ordering) {
  return ordering == SpinOrdering::interleaved ? "interleaved" : "blocked";
}

bool SpinOrbitalMap::is_occupied(int so) const {
  return std::binary_search(occupied.begin(), occupied.end(), so);
}

SpinOrbitalMap SpinOrbitalMap::aufbau(const IntegralSet& ints,
                                      SpinOrdering ordering) {
  SpinOrbitalMap map;
  map.ordering = ordering;
  map.n_spatial = ints.n_spatial_orbitals();
  const int n_up = (ints.n_electrons() + ints.ms2()) / 2;
  const int n_down = ints.n_electrons() - n_up;
  for (int so = 0; so < map.n_spin_orbitals(); ++so) {
    const int limit = map.spin_of(so) == 0 ? n_up : n_down;
    (map.spatial_of(so) < limit ? map.occupied : map.virtuals).push_back(so);
  }
  return map;
}

std::uint64_t SpinOrbitalMap::reference_basis_state() const {
  const int n = n_spin_orbitals();
  std::uint64_t b = 0;
  for (int so : occupied) b |= std::uint64_t{1} << (n - 1 - so);
  return b;
}

// ---------------------------------------------------------------------------
// Jordan-Wigner

namespace {

PauliSum ladder_image(const LadderOp& op, int n) {
  if (op.index < 0 || op.index >= n) {
    throw std::out_of_range("ladder index " + std::to_string(op.index) +
                            " outside " + std::to_string(n) + " spin-orbitals");
  }
  PauliString x(n), y(n);
  for (int q = 0; q < op.index; ++q) {
    x.set_letter(q, PauliLetter::Z);
    y.set_letter(q, PauliLetter::Z);
  }
  x.set_letter(op.index, PauliLetter::X);
  y.set_letter(op.index, PauliLetter::Y);
  // a = (X + iY)/2 = |0><1|, a^dag = (X - iY)/2 = |1><0|.
  const Complex y_coeff = op.creation ? Complex{0, -0.5} : Complex{0, 0.5};
  PauliSum out(n);
  out.add_term(x, 0.5);
  out.add_term(y, y_coeff);
  return out;
}

}  // namespace

PauliSum jordan_wigner(const FermionOperator& op, int n_spin_orbitals) {
  PauliSum out(n_spin_orbitals);
  std::map<std::pair<int, bool>, PauliSum> cache;
  auto image = [&](const LadderOp& l) -> const PauliSum& {
    auto key = std::pair{l.index, l.creation};
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, ladder_image(l, n_spin_orbitals)).first;
    return it->second;
  };
  for (const auto& term : op.terms) {
    PauliSum product = PauliSum::identity(n_spin_orbitals, term.coeff);
    for (const auto& l : term.ops) product = product * image(l);
    out += product;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Hamiltonians

PauliSum build_final_hamiltonian(const IntegralSet& ints,
                                 const SpinOrbitalMap& map) {
  const int n = map.n_spin_orbitals();
  if (n != ints.n_spin_orbitals()) {
    throw DimensionError("orbital map does not match the integral set");
  }
  FermionOperator op;
  // One-body: h_PQ = h_pq when spins match.
  for (int P = 0; P < n; ++P) {
    for (int Q = 0; Q < n; ++Q) {
      if (map.spin_of(P) != map.spin_of(Q)) continue;
      const double h = ints.one_body(map.spatial_of(P), map.spatial_of(Q));
      if (h != 0.0) op.add(h, {cre(P), ann(Q)});
    }
  }
  // Two-body: 1/2 sum <PQ|SR> a^dag_P a^dag_Q a_R a_S with
  // <PQ|SR> = (ps|qr) (chemists') when spin(P)=spin(S), spin(Q)=spin(R).
  for (int P = 0; P < n; ++P) {
    for (int Q = 0; Q < n; ++Q) {
      if (P == Q) continue;
      for (int R = 0; R < n; ++R) {
        for (int S = 0; S < n; ++S) {
          if (R == S) continue;
          if (map.spin_of(P) != map.spin_of(S) || map.spin_of(Q) != map.spin_of(R)) continue;
          const double v = ints.two_body(map.spatial_of(P), map.spatial_of(S),
                                         map.spatial_of(Q), map.spatial_of(R));
          if (v != 0.0) op.add(0.5 * v, {cre(P), cre(Q), ann(R), ann(S)});
        }
      }
    }
  }
  PauliSum h = jordan_wigner(op, n);
  h.add_term(PauliString(n), ints.e_nuclear());
  h.assert_hermitian();
  return h;
}

std::vector<double> fock_diagonal(const IntegralSet& ints,
                                  const SpinOrbitalMap& map) {
  const int n = map.n_spin_orbitals();
  std::vector<double> f(n);
  for (int P = 0; P < n; ++P) {
    const int p = map.spatial_of(P);
    double value = ints.one_body(p, p);
    for (int I : map.occupied) {
      const int i = map.spatial_of(I);
      value += ints.two_body(p, p, i, i);  // <pi|pi> = (pp|ii)
      if (map.spin_of(P) == map.spin_of(I)) {
        value -= ints.two_body(p, i, i, p);  // <pi|ip> = (pi|ip)
      }
    }
    f[P] = value;
  }
  return f;
}

PauliSum build_mp_hamiltonian(const IntegralSet& ints,
                              const SpinOrbitalMap& map) {
  const int n = map.n_spin_orbitals();
  const auto f = fock_diagonal(ints, map);
  PauliSum h(n);
  for (int P = 0; P < n; ++P) {
    h.add_term(PauliString(n), 0.5 * f[P]);
    h.add_term(PauliString::single(n, P, PauliLetter::Z), -0.5 * f[P]);
  }
  h.add_term(PauliString(n), ints.e_nuclear());
  return h;
}

std::vector<int> reference_sign_mask(const SpinOrbitalMap& map) {
  std::vector<int> mask(map.n_spin_orbitals());
  for (int p = 0; p < map.n_spin_orbitals(); ++p) {
    mask[p] = map.is_occupied(p) ? 1 : -1;
  }
  return mask;
}

PauliSum build_initial_hamiltonian(std::span<const double> eta,
                                   const SpinOrbitalMap& map) {
  const int n = map.n_spin_orbitals();
  if (static_cast<int>(eta.size()) != n) {
    throw DimensionError("eta has " + std::to_string(eta.size()) +
                         " entries for " + std::to_string(n) + " qubits");
  }
  const auto mask = reference_sign_mask(map);
  PauliSum h(n);
  for (int p = 0; p < n; ++p) {
    if (eta[p] == 0.0 || (eta[p] > 0) != (mask[p] > 0)) {
      throw SignConstraintError(
          "eta[" + std::to_string(p) + "] = " + std::to_string(eta[p]) +
          " breaks the occupation sign constraint (expected " +
          (mask[p] > 0 ? "positive" : "negative") + ")");
    }
    h.add_term(PauliString::single(n, p, PauliLetter::Z), eta[p]);
  }
  return h;
}

std::vector<Excitation> singles_doubles(const SpinOrbitalMap& map) {
  std::vector<Excitation> out;
  const auto& occ = map.occupied;
  const auto& vir = map.virtuals;
  for (int i : occ) {
    for (int a : vir) {
      if (map.spin_of(i) == map.spin_of(a)) out.push_back({{i}, {a}});
    }
  }
  for (std::size_t x = 0; x < occ.size(); ++x) {
    for (std::size_t y = x + 1; y < occ.size(); ++y) {
      for (std::size_t u = 0; u < vir.size(); ++u) {
        for (std::size_t v = u + 1; v < vir.size(); ++v) {
          const int i = occ[x], j = occ[y], a = vir[u], b = vir[v];
          if (map.spin_of(i) + map.spin_of(j) != map.spin_of(a) + map.spin_of(b)) continue;
          out.push_back({{i, j}, {a, b}});
        }
      }
    }
  }
  return out;
}

PauliSum excitation_generator(const Excitation& ex, const SpinOrbitalMap& map) {
  const int n = map.n_spin_orbitals();
  if (ex.occupied.size() != ex.virtuals.size() || ex.occupied.empty() ||
      ex.occupied.size() > 2) {
    throw std::invalid_argument("excitation must be a single or a double");
  }
  for (int i : ex.occupied) {
    if (!map.is_occupied(i)) {
      throw std::invalid_argument("index " + std::to_string(i) +
                                  " is not in the occupied partition");
    }
  }
  for (int a : ex.virtuals) {
    if (a < 0 || a >= n || map.is_occupied(a)) {
      throw std::invalid_argument("index " + std::to_string(a) +
                                  " is not in the virtual partition");
    }
  }
  FermionOperator op;
  std::vector<LadderOp> forward;
  for (int i : ex.occupied) forward.push_back(cre(i));
  for (int a : ex.virtuals) forward.push_back(ann(a));
  // Hermitian conjugate reverses the order and flips each ladder type.
  std::vector<LadderOp> backward;
  for (auto it = forward.rbegin(); it != forward.rend(); ++it) {
    backward.push_back({it->index, !it->creation});
  }
  op.add(1.0, forward).add(1.0, backward);
  PauliSum g = jordan_wigner(op, n);
  g.assert_hermitian();
  return g;
}

PauliSum build_navigator(std::span<const double> theta,
                         std::span<const Excitation> excitations,
                         const SpinOrbitalMap& map) {
  if (theta.size() != excitations.size()) {
    throw DimensionError("theta has " + std::to_string(theta.size()) +
                         " entries for " + std::to_string(excitations.size()) +
                         " excitations");
  }
  PauliSum h(map.n_spin_orbitals());
  for (std::size_t k = 0; k < theta.size(); ++k) {
    PauliSum g = excitation_generator(excitations[k], map);
    if (theta[k] != 0.0) h += g * Complex{theta[k], 0.0};
  }
  return h;
}

NumberOperators number_operators(const SpinOrbitalMap& map) {
  const int n = map.n_spin_orbitals();
  NumberOperators out{PauliSum(n), PauliSum(n), PauliSum(n)};
  for (int p = 0; p < n; ++p) {
    PauliSum np(n);
    np.add_term(PauliString(n), 0.5);
    np.add_term(PauliString::single(n, p, PauliLetter::Z), -0.5);
    out.total += np;
    (map.spin_of(p) == 0 ? out.up : out.down) += np;
  }
  return out;
}

}  // namespace vanqver
