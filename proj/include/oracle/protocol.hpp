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
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "oracle/agents.hpp"
#include "oracle/crypto/bytes.hpp"
#include "oracle/crypto/vrf.hpp"
#include "oracle/incentive.hpp"
#include "oracle/reputation.hpp"
#include "oracle/rng.hpp"

namespace oracle::protocol {

class TranscriptWriter;

enum class SelectionMode { kReputation, kBaseline };

SelectionMode parse_selection_mode(std::string_view name);
std::string_view to_string(SelectionMode mode);

// The request event E = (Q, D, P, K) plus the round randomness R.
struct TaskRequest {
  std::uint64_t id = 0;                // Q
  std::vector<std::uint32_t> sources;  // D
  double fee = 0.0;                    // P, escrowed
  double goods = 1.0;                  // K
  crypto::Bytes randomness;            // R
};

// R_next = SHA-256(prev || Q as 8 big-endian bytes).
crypto::Bytes next_randomness(crypto::ByteView prev, std::uint64_t task_id);

// Builds a request with P = recommend_fee(u, K) unless `fee_override` is
// given, and R = next_randomness(prior_randomness, Q). Throws InputError for
// K <= 0, u outside [0, 1], an empty source set or a negative override.
TaskRequest open_task(std::uint64_t task_id, std::vector<std::uint32_t> sources,
                      double u, double goods, crypto::ByteView prior_randomness,
                      std::optional<double> fee_override = std::nullopt,
                      incentive::FeeMapping mapping = incentive::FeeMapping::kInverse);

// Gamma_i for every registered node under the given policy.
std::map<NodeId, double> selection_thresholds(const reputation::ReputationTable& table,
                                              SelectionMode mode, int expected_committee);

struct SelectionStub {
  NodeId node;
  double vrf_value = 0.0;
  crypto::Bytes vrf_proof;
  double threshold = 0.0;
};

// Node-local lottery: R_i = VRF(R, sk_i).value; selected iff R_i <= Gamma_i.
// The proof is only built for selected nodes.
std::optional<SelectionStub> try_select(const crypto::Vrf& vrf,
                                        const agents::NodeIdentity& node,
                                        const TaskRequest& task, double threshold);

std::optional<SelectionStub> try_select(const crypto::Vrf& vrf,
                                        const agents::NodeIdentity& node,
                                        const TaskRequest& task,
                                        const reputation::ReputationTable& table,
                                        int expected_committee);

// Credential Pi = (chi_i, R_i, xi_i) plus the later reveal.
struct Submission {
  NodeId node;
  crypto::Digest commit_digest{};
  double vrf_value = 0.0;
  crypto::Bytes vrf_proof;
  std::optional<double> revealed_price;
  std::optional<crypto::Bytes> revealed_pk;
};

Submission make_submission(const SelectionStub& stub, double price,
                           crypto::ByteView public_key);

enum class Verdict {
  kAccepted,
  kNotSelected,     // VRF proof invalid or value above threshold
  kDuplicate,
  kWrongPhase,
  kUnknownNode,
  kNoCommit,        // reveal without a prior commit
  kDigestMismatch,  // commit(price, pk) != stored digest
  kKeyMismatch,     // pk differs from the registered key
};

std::string_view to_string(Verdict v);

struct FilterResult {
  std::vector<reputation::Reveal> reveals;  // in reveal order
  std::vector<bool> survived;               // parallel to reveals
  double mean = 0.0;                        // mu over all reveals
  std::optional<double> aggregate;          // mean of survivors
  double reveal_variance = 0.0;             // population variance of reveals
  double survivor_variance = 0.0;
  std::size_t survivor_count() const;
};

// Each reveal survives independently with probability exp(-|X_i - mu|).
// Throws InputError for an empty reveal set.
FilterResult filter_and_aggregate(std::span<const reputation::Reveal> reveals, Rng& rng);

struct RoundOutcome {
  std::uint64_t task_id = 0;
  double fee = 0.0;
  std::vector<NodeId> selected;      // committed nodes
  std::vector<NodeId> revealed;
  std::vector<NodeId> filtered_out;
  std::optional<double> aggregate;
  std::map<NodeId, double> payouts;
  double refund = 0.0;
  int malicious_selected_count = 0;  // filled by callers that know roles
  double reveal_variance = 0.0;
  double survivor_variance = 0.0;
  bool voided = false;
  bool reputation_updated = false;

  double total_paid() const;
};

// Pays P/n to each surviving revealer, refunds everything else and updates
// reputation of every revealer (filtered ones included). A task with no
// survivors is voided: full refund, reputation untouched.
RoundOutcome settle(const TaskRequest& task, const FilterResult* filtered,
                    reputation::ReputationTable& table);

enum class Phase { kCommit, kReveal, kSettled };

// One task's commit-reveal state machine. Holds the escrowed fee, the
// registered public keys and the thresholds fixed when the task opened.
class TaskEngine {
 public:
  TaskEngine(TaskRequest request, std::shared_ptr<const crypto::Vrf> vrf,
             std::map<NodeId, crypto::Bytes> public_keys,
             std::map<NodeId, double> thresholds,
             TranscriptWriter* transcript = nullptr);

  const TaskRequest& request() const { return request_; }
  Phase phase() const { return phase_; }
  double escrow() const { return escrow_; }
  const std::vector<Submission>& submissions() const { return submissions_; }
  double threshold(NodeId id) const;

  Verdict accept_commit(const Submission& submission);
  void close_commits();
  Verdict accept_reveal(NodeId node, double price, crypto::ByteView public_key);

  // Filters, aggregates and settles. Legal once, in the reveal phase.
  RoundOutcome finish(Rng& filter_rng, reputation::ReputationTable& table);

 private:
  Submission* find(NodeId id);

  TaskRequest request_;
  std::shared_ptr<const crypto::Vrf> vrf_;
  std::map<NodeId, crypto::Bytes> public_keys_;
  std::map<NodeId, double> thresholds_;
  TranscriptWriter* transcript_;
  Phase phase_ = Phase::kCommit;
  double escrow_ = 0.0;
  std::vector<Submission> submissions_;
};

}  // namespace oracle::protocol
