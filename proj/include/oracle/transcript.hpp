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

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "oracle/protocol.hpp"

namespace oracle::protocol {

// Line-delimited JSON record stream of every task event. Each line is one
// object with a "type" of request | commit | reveal | filter | outcome.
class TranscriptWriter {
 public:
  explicit TranscriptWriter(std::ostream& out) : out_(out) {}

  void request(const TaskRequest& req, crypto::VrfScheme scheme);
  void commit(std::uint64_t task, const Submission& s, Verdict v);
  void reveal(std::uint64_t task, NodeId node, double price, crypto::ByteView pk, Verdict v);
  void filter(std::uint64_t task, const FilterResult& f);
  void outcome(const RoundOutcome& o);

  // Records the public key a node registered; written once per node.
  void registration(NodeId node, crypto::ByteView public_key);

 private:
  void line(const std::string& json);
  std::ostream& out_;
};

struct AuditReport {
  std::size_t tasks = 0;
  std::size_t commits_checked = 0;
  std::size_t reveals_checked = 0;
  std::size_t failures = 0;
  std::vector<std::string> problems;

  bool ok() const { return failures == 0; }
};

// Replays a transcript: re-verifies every accepted VRF credential against
// the registered key, re-opens every accepted commitment and checks escrow
// conservation of every outcome (absolute tolerance 1e-9).
AuditReport audit_transcript(std::istream& in);

}  // namespace oracle::protocol
