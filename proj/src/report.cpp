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

#include "vanqver/report.hpp"

#include <openssl/evp.h>

#include <array>
#include <charconv>
#include <cstdio>
#include <stdexcept>

#include <json.hpp>

namespace vanqver {

using nlohmann::json;

std::string sha256_hex(std::string_view bytes) {
  std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest.data(), &len, EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("SHA-256 failed");
  }
  std::string out;
  out.reserve(2 * len);
  for (unsigned int k = 0; k < len; ++k) {
    char buf[3];
    std::snprintf(buf, sizeof buf, "%02x", digest[k]);
    out += buf;
  }
  return out;
}

std::string format_double(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  if (ec != std::errc{}) throw std::runtime_error("number formatting failed");
  return std::string(buf, end);
}

namespace {

json config_json(const OptimizeConfig& c) {
  return json{{"epsilon_tol", c.epsilon_tol},
              {"max_iterations", c.max_iterations},
              {"gradient", to_string(c.gradient)},
              {"termination", to_string(c.termination)},
              {"theta_step", c.theta_step},
              {"eta_step", c.eta_step},
              {"eta_floor", c.eta_floor},
              {"n_time_steps", c.n_time_steps}};
}

OptimizeConfig config_from_json(const json& j) {
  OptimizeConfig c;
  c.epsilon_tol = j.at("epsilon_tol").get<double>();
  c.max_iterations = j.at("max_iterations").get<int>();
  c.gradient = parse_gradient_method(j.at("gradient").get<std::string>());
  c.termination = parse_termination(j.at("termination").get<std::string>());
  c.theta_step = j.at("theta_step").get<double>();
  c.eta_step = j.at("eta_step").get<double>();
  c.eta_floor = j.at("eta_floor").get<double>();
  c.n_time_steps = j.at("n_time_steps").get<int>();
  return c;
}

json distance_json(const std::optional<double>& d) { return d ? json(*d) : json(nullptr); }

}  // namespace

std::string canonical_config(const RunRecord& record, double alpha, SpinOrdering ordering) {
  json j{{"problem", record.problem},
         {"distance", distance_json(record.distance)},
         {"mode", to_string(record.mode)},
         {"T", record.T},
         {"alpha", alpha},
         {"ordering", to_string(ordering)}};
  // Optimizer settings are irrelevant to a standard anneal apart from steps.
  if (record.mode == AnnealMode::vanqver) {
    j["optimizer"] = config_json(record.config);
  } else {
    j["n_time_steps"] = record.config.n_time_steps;
  }
  return j.dump();
}

std::string config_hash(const RunRecord& record, double alpha, SpinOrdering ordering) {
  return sha256_hex(canonical_config(record, alpha, ordering));
}

std::string record_to_json(const RunRecord& r, const std::string& hash, int indent) {
  json traj = json::array();
  for (const auto& t : r.trajectory) {
    traj.push_back({{"iteration", t.iteration},
                    {"eta", t.eta},
                    {"theta", t.theta},
                    {"energy", t.energy},
                    {"gradient_norm", t.gradient_norm}});
  }
  json j{{"config_hash", hash},
         {"problem", r.problem},
         {"distance", distance_json(r.distance)},
         {"mode", to_string(r.mode)},
         {"T", r.T},
         {"config", config_json(r.config)},
         {"final_energy", r.final_energy},
         {"e_fci", r.e_fci},
         {"e_hf", r.e_hf},
         {"delta_e", r.error()},
         {"chemically_accurate", r.chemically_accurate()},
         {"best", {{"eta", r.best.eta}, {"theta", r.best.theta}}},
         {"n_iterations", r.n_iterations},
         {"n_evaluations", r.n_evaluations},
         {"n_time_steps", r.n_time_steps},
         {"converged", r.converged},
         {"message", r.message},
         {"trajectory", std::move(traj)}};
  return j.dump(indent) + "\n";
}

RunRecord record_from_json(std::string_view text) {
  const json j = json::parse(text);
  RunRecord r;
  r.problem = j.at("problem").get<std::string>();
  if (!j.at("distance").is_null()) r.distance = j.at("distance").get<double>();
  r.mode = parse_anneal_mode(j.at("mode").get<std::string>());
  r.T = j.at("T").get<double>();
  r.config = config_from_json(j.at("config"));
  r.final_energy = j.at("final_energy").get<double>();
  r.e_fci = j.at("e_fci").get<double>();
  r.e_hf = j.at("e_hf").get<double>();
  r.best.eta = j.at("best").at("eta").get<std::vector<double>>();
  r.best.theta = j.at("best").at("theta").get<std::vector<double>>();
  r.n_iterations = j.at("n_iterations").get<int>();
  r.n_evaluations = j.at("n_evaluations").get<int>();
  r.n_time_steps = j.at("n_time_steps").get<int>();
  r.converged = j.at("converged").get<bool>();
  r.message = j.at("message").get<std::string>();
  for (const auto& t : j.at("trajectory")) {
    TrajectoryEntry e;
    e.iteration = t.at("iteration").get<int>();
    e.eta = t.at("eta").get<std::vector<double>>();
    e.theta = t.at("theta").get<std::vector<double>>();
    e.energy = t.at("energy").get<double>();
    e.gradient_norm = t.at("gradient_norm").get<double>();
    r.trajectory.push_back(std::move(e));
  }
  return r;
}

std::string csv_header() {
  return "molecule,d,T,epsilon_tol,E_final,E_FCI,delta_E,iterations,converged,config_hash\n";
}

std::string csv_row(const RunRecord& r, const std::string& hash) {
  std::string row = r.problem + ",";
  if (r.distance) row += format_double(*r.distance);
  row += "," + format_double(r.T) + ",";
  if (r.mode == AnnealMode::vanqver) row += format_double(r.config.epsilon_tol);
  row += "," + format_double(r.final_energy) + "," + format_double(r.e_fci) + "," +
         format_double(r.error()) + "," + std::to_string(r.n_iterations) + "," +
         (r.converged ? "true" : "false") + "," + hash + "\n";
  return row;
}

}  // namespace vanqver
