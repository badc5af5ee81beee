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

#include <string>
#include <string_view>
#include <vector>

#include "vanqver/vanqver.hpp"

namespace vanqver {

/// Lower-case hex SHA-256 of the bytes.
std::string sha256_hex(std::string_view bytes);

/// Canonical text of everything that determines a run's result: problem,
/// distance, mode, T, alpha, ordering and the optimizer settings. Worker
/// counts are excluded since they never change results.
std::string canonical_config(const RunRecord& record, double alpha = 1.0,
                             SpinOrdering ordering = SpinOrdering::interleaved);
std::string config_hash(const RunRecord& record, double alpha = 1.0,
                        SpinOrdering ordering = SpinOrdering::interleaved);

/// Full record with trajectory. Wall time is left out so that repeated runs
/// serialize identically. `hash` is embedded verbatim.
std::string record_to_json(const RunRecord& record, const std::string& hash,
                           int indent = 2);
/// Inverse of record_to_json (wall_time reads as 0).
RunRecord record_from_json(std::string_view text);

/// molecule,d,T,epsilon_tol,E_final,E_FCI,delta_E,iterations,converged,config_hash
std::string csv_header();
std::string csv_row(const RunRecord& record, const std::string& hash);

/// Shortest decimal text that reads back to the same double.
std::string format_double(double v);

}  // namespace vanqver
