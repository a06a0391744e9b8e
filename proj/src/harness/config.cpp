/*
 * Copyright 2026 The Oracle Sim Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */


#include <cmath>
#include <fstream>
#include <istream>
#include <string>

#include <json.hpp>

#include "oracle/crypto/bytes.hpp"
#include "oracle/errors.hpp"
#include "oracle/harness.hpp"

namespace oracle::harness {

using nlohmann::json;

namespace {

std::string_view to_string(AttackSign sign) {
  return sign == AttackSign::kPositive ? "positive" : "alternating";
}

AttackSign parse_attack_sign(std::string_view name) {
  if (name == "positive") return AttackSign::kPositive;
  if (name == "alternating") return AttackSign::kAlternating;
  throw ConfigError("attack_sign must be positive or alternating, got '" + std::string(name) + "'");
}

template <typename T>
void read(const json& j, const char* key, T& field) {
  auto it = j.find(key);
  if (it == j.end()) return;
  try {
    field = it->get<T>();
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config field '") + key + "': " + e.what());
  }
}

template <typename Parse>
void read_enum(const json& j, const char* key, Parse parse) {
  auto it = j.find(key);
  if (it == j.end()) return;
  if (!it->is_string()) throw ConfigError(std::string("config field '") + key + "' must be a string");
  try {
    parse(it->get<std::string>());
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    throw ConfigError(std::string("config field '") + key + "': " + e.what());
  }
}

const char* const kKnownKeys[] = {
    "seed", "N", "lambda", "M", "K", "u", "tasks", "selection_mode",
    "publisher_strategy", "malicious_strategy", "random_delta_max", "fixed_delta",
    "true_price", "noise_sigma", "sources", "vrf", "reputation_memory",
    "attack_sign", "fee_mapping", "seeds", "snapshot_every"};

}  // namespace

void RunConfig::validate() const {
  auto finite = [](double x) { return std::isfinite(x); };
  if (N < 1) throw ConfigError("N must be >= 1");
  if (!finite(lambda) || lambda < 0.0 || lambda > 1.0) throw ConfigError("lambda must lie in [0, 1]");
  if (M <= 0 || M > N) throw ConfigError("M must satisfy 0 < M <= N");
  if (tasks < 1) throw ConfigError("tasks must be >= 1");
  if (!finite(K) || K <= 0.0) throw ConfigError("K must be > 0");
  if (!finite(u)) throw ConfigError("u must be finite");
  if (fee_mapping == incentive::FeeMapping::kInverse && (u < 0.0 || u > 1.0)) {
    throw ConfigError("u must lie in [0, 1]");
  }
  if (fee_mapping == incentive::FeeMapping::kLiteral && (u <= 0.0 || u >= 1.0)) {
    throw ConfigError("u must lie in (0, 1) under the literal fee mapping");
  }
  if (malicious_strategy != "rational" && malicious_strategy != "random" &&
      malicious_strategy != "fixed") {
    throw ConfigError("malicious_strategy must be rational, random or fixed");
  }
  if (!finite(random_delta_max) || random_delta_max < 0.0) throw ConfigError("random_delta_max must be >= 0");
  if (!finite(fixed_delta) || fixed_delta < 0.0) throw ConfigError("fixed_delta must be >= 0");
  if (!finite(true_price)) throw ConfigError("true_price must be finite");
  if (!finite(noise_sigma) || noise_sigma < 0.0) throw ConfigError("noise_sigma must be >= 0");
  if (sources < 1) throw ConfigError("sources must be >= 1");
  if (!finite(reputation_memory) || reputation_memory < 0.0 || reputation_memory >= 1.0) {
    throw ConfigError("reputation_memory must lie in [0, 1)");
  }
  if (seeds < 1) throw ConfigError("seeds must be >= 1");
  if (snapshot_every < 0) throw ConfigError("snapshot_every must be >= 0");
}

RunConfig load_config(std::istream& in) {
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    bool known = false;
    for (const char* k : kKnownKeys) known = known || key == k;
    if (!known) throw ConfigError("unknown config field '" + key + "'");
  }

  RunConfig c;
  read(j, "seed", c.seed);
  read(j, "N", c.N);
  read(j, "lambda", c.lambda);
  read(j, "M", c.M);
  read(j, "K", c.K);
  read(j, "u", c.u);
  read(j, "tasks", c.tasks);
  read_enum(j, "selection_mode",
            [&](const std::string& s) { c.selection_mode = protocol::parse_selection_mode(s); });
  read_enum(j, "publisher_strategy",
            [&](const std::string& s) { c.publisher_strategy = agents::parse_publisher_strategy(s); });
  read(j, "malicious_strategy", c.malicious_strategy);
  read(j, "random_delta_max", c.random_delta_max);
  read(j, "fixed_delta", c.fixed_delta);
  read(j, "true_price", c.true_price);
  read(j, "noise_sigma", c.noise_sigma);
  read(j, "sources", c.sources);
  read_enum(j, "vrf", [&](const std::string& s) { c.vrf = crypto::parse_vrf_scheme(s); });
  read(j, "reputation_memory", c.reputation_memory);
  read_enum(j, "attack_sign", [&](const std::string& s) { c.attack_sign = parse_attack_sign(s); });
  read_enum(j, "fee_mapping",
            [&](const std::string& s) { c.fee_mapping = incentive::parse_fee_mapping(s); });
  read(j, "seeds", c.seeds);
  read(j, "snapshot_every", c.snapshot_every);
  c.validate();
  return c;
}

RunConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  return load_config(in);
}

namespace {

json config_json(const RunConfig& c) {
  return json{{"seed", c.seed},
              {"N", c.N},
              {"lambda", c.lambda},
              {"M", c.M},
              {"K", c.K},
              {"u", c.u},
              {"tasks", c.tasks},
              {"selection_mode", std::string(protocol::to_string(c.selection_mode))},
              {"publisher_strategy", std::string(agents::to_string(c.publisher_strategy))},
              {"malicious_strategy", c.malicious_strategy},
              {"random_delta_max", c.random_delta_max},
              {"fixed_delta", c.fixed_delta},
              {"true_price", c.true_price},
              {"noise_sigma", c.noise_sigma},
              {"sources", c.sources},
              {"vrf", std::string(crypto::to_string(c.vrf))},
              {"reputation_memory", c.reputation_memory},
              {"attack_sign", std::string(to_string(c.attack_sign))},
              {"fee_mapping", std::string(incentive::to_string(c.fee_mapping))},
              {"seeds", c.seeds},
              {"snapshot_every", c.snapshot_every}};
}

}  // namespace

std::string config_to_json(const RunConfig& config) { return config_json(config).dump(2); }

std::string run_metadata_json(const RunConfig& config) {
  json j{{"hash", std::string(crypto::kHashName)},
         {"vrf", std::string(crypto::to_string(config.vrf))},
         {"rng", "mt19937_64 + boost.random, seeds from sha256(master, tag, index)"},
         {"reputation_rule", "D <- memory * D + |X - mean|, C = exp(-D)"},
         {"filtered_nodes_update_reputation", true},
         {"variance", "population"},
         {"csv_columns", kMetricsHeader},
         {"config", config_json(config)}};
  return j.dump(2);
}

}  // namespace oracle::harness
