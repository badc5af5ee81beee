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
#include <stdexcept>
#include <string>
#include <vector>

#include "vanqver/fermion.hpp"

namespace vanqver {

/// Raised when a fixture name or path cannot be resolved; what() names the path.
class FixtureNotFound : public std::runtime_error {
 public:
  explicit FixtureNotFound(const std::string& path)
      : std::runtime_error("fixture not found: " + path), path_(path) {}
  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

/// Sidecar metadata stored next to each FCIDUMP file.
struct FixtureInfo {
  std::string name;  ///< file stem, e.g. h2_sto3g_r1.00
  std::string fcidump_path;
  std::string sidecar_path;  ///< empty when no sidecar exists
  std::string geometry;
  std::string basis;
  SpinOrdering ordering = SpinOrdering::interleaved;
  int n_spatial_orbitals = 0;
  int n_electrons = 0;
  std::optional<double> hf_energy;
  std::optional<double> fci_energy;
  std::optional<double> nuclear_repulsion;
};

struct Fixture {
  FixtureInfo info;
  IntegralSet integrals;
};

/// $VANQVER_FIXTURE_DIR if set, else the source-tree fixture directory.
std::string fixture_dir();

/// Resolves "h2", "lih", "p4" (with distance), a file stem, or a path to a
/// .fcidump file. Throws FixtureNotFound.
std::string resolve_fixture_path(const std::string& name_or_path,
                                 std::optional<double> distance = std::nullopt);

Fixture load_fixture(const std::string& name_or_path,
                     std::optional<double> distance = std::nullopt);

/// All fixture stems in fixture_dir(), sorted.
std::vector<FixtureInfo> list_fixtures();

}  // namespace vanqver
