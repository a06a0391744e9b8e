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

#include "oracle/reputation.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

#include "oracle/errors.hpp"

namespace oracle::reputation {

ReputationTable::ReputationTable(double memory) : memory_(memory) {
  if (!(memory >= 0.0 && memory < 1.0)) {
    throw InputError("reputation memory must lie in [0, 1)");
  }
}

void ReputationTable::register_node(NodeId id) { distance_.try_emplace(id, 0.0); }

double ReputationTable::distance(NodeId id) const {
  auto it = distance_.find(id);
  if (it == distance_.end()) throw RegistrationError("node " + to_string(id) + " not registered");
  return it->second;
}

double ReputationTable::reputation(NodeId id) const { return std::exp(-distance(id)); }

double ReputationTable::total_reputation() const {
  double sum = 0.0;
  for (const auto& [id, d] : distance_) sum += std::exp(-d);
  return sum;
}

void ReputationTable::apply_update(std::span<const Reveal> reveals, double mean) {
  if (reveals.empty()) throw InputError("reputation_update: no reveals");
  if (!std::isfinite(mean)) throw InputError("reputation_update: non-finite mean");
  for (const auto& r : reveals) {
    if (!contains(r.node)) {
      throw RegistrationError("node " + to_string(r.node) + " not registered");
    }
  }
  for (const auto& r : reveals) {
    double& d = distance_[r.node];
    d = memory_ * d + std::abs(r.price - mean);
  }
}

double ReputationTable::optional_range(NodeId id, int expected_committee) const {
  if (distance_.empty()) throw StateError("optional_range: empty reputation table");
  if (expected_committee <= 0) throw InputError("optional_range: M must be positive");
  double own = distance(id);
  double floor = std::numeric_limits<double>::infinity();
  for (const auto& [_, d] : distance_) floor = std::min(floor, d);
  double scaled_sum = 0.0;
  for (const auto& [_, d] : distance_) scaled_sum += std::exp(floor - d);
  double gamma = std::exp(floor - own) * expected_committee / scaled_sum;
  return std::clamp(gamma, 0.0, 1.0);
}

std::vector<NodeId> ReputationTable::nodes() const {
  std::vector<NodeId> out;
  out.reserve(distance_.size());
  for (const auto& [id, _] : distance_) out.push_back(id);
  return out;
}

void ReputationTable::set_distance(NodeId id, double distance) {
  if (!(distance >= 0.0) || !std::isfinite(distance)) {
    throw InputError("reputation distance must be finite and non-negative");
  }
  distance_[id] = distance;
}

void ReputationTable::write_csv(std::ostream& out) const {
  out << "node_id,reputation\n";
  std::ostringstream line;
  line << std::setprecision(17);
  for (const auto& [id, d] : distance_) {
    line.str({});
    line << id.value << ',' << std::exp(-d) << '\n';
    out << line.str();
  }
}

ReputationTable ReputationTable::read_csv(std::istream& in, double memory) {
  ReputationTable table(memory);
  std::string line;
  if (!std::getline(in, line) || line != "node_id,reputation") {
    throw InputError("reputation snapshot: missing header");
  }
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto comma = line.find(',');
    if (comma == std::string::npos) throw InputError("reputation snapshot: malformed line");
    NodeId id{static_cast<std::uint32_t>(std::stoul(line.substr(0, comma)))};
    double c = std::stod(line.substr(comma + 1));
    if (!(c > 0.0 && c <= 1.0)) throw InputError("reputation snapshot: value outside (0, 1]");
    table.set_distance(id, -std::log(c));
  }
  return table;
}

ReputationTable reputation_update(ReputationTable table,
                                  std::span<const Reveal> reveals, double mean) {
  table.apply_update(reveals, mean);
  return table;
}

double optional_range(const ReputationTable& table, NodeId node, int expected_committee) {
  return table.optional_range(node, expected_committee);
}

double baseline_range(int node_count, int expected_committee) {
  if (node_count <= 0 || expected_committee <= 0) {
    throw InputError("baseline_range: N and M must be positive");
  }
  if (expected_committee > node_count) throw InputError("baseline_range: M exceeds N");
  return static_cast<double>(expected_committee) / node_count;
}

}  // namespace oracle::reputation
