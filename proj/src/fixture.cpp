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

#include "vanqver/fixture.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "json.hpp"

namespace vanqver {

namespace fs = std::filesystem;

namespace {

FixtureInfo read_info(const fs::path& fcidump) {
  FixtureInfo info;
  info.name = fcidump.stem().string();
  info.fcidump_path = fcidump.string();
  fs::path sidecar = fcidump;
  sidecar.replace_extension(".json");
  if (!fs::exists(sidecar)) return info;
  info.sidecar_path = sidecar.string();
  std::ifstream in(sidecar);
  const auto j = nlohmann::json::parse(in);
  info.geometry = j.value("geometry", "");
  info.basis = j.value("basis", "");
  if (j.contains("ordering")) info.ordering = parse_spin_ordering(j["ordering"].get<std::string>());
  info.n_spatial_orbitals = j.value("n_spatial_orbitals", 0);
  info.n_electrons = j.value("n_electrons", 0);
  if (j.contains("hf_energy")) info.hf_energy = j["hf_energy"].get<double>();
  if (j.contains("fci_energy")) info.fci_energy = j["fci_energy"].get<double>();
  if (j.contains("nuclear_repulsion")) {
    info.nuclear_repulsion = j["nuclear_repulsion"].get<double>();
  }
  return info;
}

}  // namespace

std::string fixture_dir() {
  if (const char* env = std::getenv("VANQVER_FIXTURE_DIR"); env && *env) return env;
  return VANQVER_FIXTURE_DIR;
}

std::string resolve_fixture_path(const std::string& name_or_path,
                                 std::optional<double> distance) {
  if (name_or_path.find('/') != std::string::npos ||
      name_or_path.ends_with(".fcidump")) {
    if (!fs::is_regular_file(name_or_path)) throw FixtureNotFound(name_or_path);
    return name_or_path;
  }
  std::string stem = name_or_path;
  if (name_or_path == "h2") {
    stem = "h2_sto3g_r1.00";
  } else if (name_or_path == "lih") {
    stem = "lih_sto3g_r1.00";
  } else if (name_or_path == "p4") {
    if (!distance) throw std::invalid_argument("fixture p4 needs a distance d");
    char buf[32];
    std::snprintf(buf, sizeof buf, "p4_sto3g_d%.2f", *distance);
    stem = buf;
  }
  const fs::path path = fs::path(fixture_dir()) / (stem + ".fcidump");
  if (!fs::is_regular_file(path)) throw FixtureNotFound(path.string());
  return path.string();
}

Fixture load_fixture(const std::string& name_or_path,
                     std::optional<double> distance) {
  const std::string path = resolve_fixture_path(name_or_path, distance);
  Fixture f;
  f.info = read_info(path);
  f.integrals = load_fcidump(path);
  if (f.info.n_spatial_orbitals == 0) {
    f.info.n_spatial_orbitals = f.integrals.n_spatial_orbitals();
    f.info.n_electrons = f.integrals.n_electrons();
  } else if (f.info.n_spatial_orbitals != f.integrals.n_spatial_orbitals() ||
             f.info.n_electrons != f.integrals.n_electrons()) {
    throw FcidumpError("sidecar disagrees with FCIDUMP header: " + path);
  }
  return f;
}

std::vector<FixtureInfo> list_fixtures() {
  std::vector<FixtureInfo> out;
  const fs::path dir = fixture_dir();
  if (!fs::is_directory(dir)) return out;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.path().extension() == ".fcidump") out.push_back(read_info(entry.path()));
  }
  std::sort(out.begin(), out.end(),
            [](const auto& a, const auto& b) { return a.name < b.name; });
  return out;
}

}  // namespace vanqver
