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

#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace oracle {

struct NodeId {
  std::uint32_t value = 0;
  auto operator<=>(const NodeId&) const = default;
};

inline std::string to_string(NodeId id) { return std::to_string(id.value); }

}  // namespace oracle

template <>
struct std::hash<oracle::NodeId> {
  std::size_t operator()(oracle::NodeId id) const noexcept {
    return std::hash<std::uint32_t>{}(id.value);
  }
};

namespace oracle::reputation {

struct Reveal {
  NodeId node;
  double price = 0.0;
};

// Per-node reputation C_i = exp(-D_i), where D_i is the node's discounted
// history of Manhattan distances to the task mean:
//
//   D_i <- memory * D_i + |X_i - mu|
//
// memory = 0 keeps only the latest task (C_i = exp(-|X_i - mu|)). Every node
// starts at D_i = 0, i.e. C_i = 1. Distances are stored rather than C_i so
// that long histories never underflow.
class ReputationTable {
 public:
  explicit ReputationTable(double memory = 0.0);

  void register_node(NodeId id);
  bool contains(NodeId id) const { return distance_.contains(id); }
  std::size_t size() const { return distance_.size(); }
  bool empty() const { return distance_.empty(); }
  double memory() const { return memory_; }

  double reputation(NodeId id) const;  // C_i in (0, 1]
  double distance(NodeId id) const;    // D_i >= 0
  double total_reputation() const;     // sum of C_j

  // Throws RegistrationError for any unknown node; the table is untouched
  // in that case.
  void apply_update(std::span<const Reveal> reveals, double mean);

  // Gamma_i = C_i * M / sum_j C_j clamped to [0, 1]. Evaluated relative to
  // the smallest D so that it stays exact when every C_j is tiny.
  double optional_range(NodeId id, int expected_committee) const;

  std::vector<NodeId> nodes() const;

  // Flat "node_id,reputation" records, one per line, header first. Round
  // trips through read_csv up to 17 significant digits.
  void write_csv(std::ostream& out) const;
  static ReputationTable read_csv(std::istream& in, double memory = 0.0);

  // Directly sets D_i (C_i = exp(-distance)). For snapshots and tests.
  void set_distance(NodeId id, double distance);

 private:
  double memory_;
  std::map<NodeId, double> distance_;
};

// Functional form: returns the updated table.
ReputationTable reputation_update(ReputationTable table,
                                  std::span<const Reveal> reveals, double mean);

double optional_range(const ReputationTable& table, NodeId node,
                      int expected_committee);

// Reputation-free threshold M / N.
double baseline_range(int node_count, int expected_committee);

}  // namespace oracle::reputation
