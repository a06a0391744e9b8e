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

#include "oracle/protocol.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "oracle/crypto/commitment.hpp"
#include "oracle/errors.hpp"
#include "oracle/transcript.hpp"

namespace oracle::protocol {

SelectionMode parse_selection_mode(std::string_view name) {
  if (name == "reputation") return SelectionMode::kReputation;
  if (name == "baseline") return SelectionMode::kBaseline;
  throw InputError("unknown selection mode: " + std::string(name));
}

std::string_view to_string(SelectionMode mode) {
  return mode == SelectionMode::kReputation ? "reputation" : "baseline";
}

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::kAccepted: return "accepted";
    case Verdict::kNotSelected: return "not_selected";
    case Verdict::kDuplicate: return "duplicate";
    case Verdict::kWrongPhase: return "wrong_phase";
    case Verdict::kUnknownNode: return "unknown_node";
    case Verdict::kNoCommit: return "no_commit";
    case Verdict::kDigestMismatch: return "digest_mismatch";
    case Verdict::kKeyMismatch: return "key_mismatch";
  }
  return "unknown";
}

crypto::Bytes next_randomness(crypto::ByteView prev, std::uint64_t task_id) {
  return crypto::to_bytes(crypto::Sha256().update(prev).update_u64(task_id).finish());
}

TaskRequest open_task(std::uint64_t task_id, std::vector<std::uint32_t> sources,
                      double u, double goods, crypto::ByteView prior_randomness,
                      std::optional<double> fee_override, incentive::FeeMapping mapping) {
  if (!(goods > 0.0)) throw InputError("open_task: K must be positive");
  if (mapping == incentive::FeeMapping::kInverse && !(u >= 0.0 && u <= 1.0)) {
    throw InputError("open_task: u must lie in [0, 1]");
  }
  if (sources.empty()) throw InputError("open_task: data source set D is empty");
  TaskRequest req;
  req.id = task_id;
  req.sources = std::move(sources);
  req.goods = goods;
  if (fee_override) {
    if (!(*fee_override >= 0.0)) throw InputError("open_task: fee must be non-negative");
    req.fee = *fee_override;
  } else {
    req.fee = incentive::recommend_fee(u, goods, mapping);
  }
  req.randomness = next_randomness(prior_randomness, task_id);
  return req;
}

std::map<NodeId, double> selection_thresholds(const reputation::ReputationTable& table,
                                              SelectionMode mode, int expected_committee) {
  std::map<NodeId, double> out;
  if (table.empty()) throw StateError("selection_thresholds: no registered nodes");
  if (mode == SelectionMode::kBaseline) {
    double gamma = reputation::baseline_range(static_cast<int>(table.size()), expected_committee);
    for (NodeId id : table.nodes()) out[id] = gamma;
    return out;
  }
  if (expected_committee <= 0) throw InputError("selection_thresholds: M must be positive");
  // Same value as table.optional_range(id, M) for each id, in one pass.
  double floor = std::numeric_limits<double>::infinity();
  for (NodeId id : table.nodes()) floor = std::min(floor, table.distance(id));
  double sum = 0.0;
  for (NodeId id : table.nodes()) sum += std::exp(floor - table.distance(id));
  for (NodeId id : table.nodes()) {
    out[id] = std::clamp(std::exp(floor - table.distance(id)) * expected_committee / sum, 0.0, 1.0);
  }
  return out;
}

std::optional<SelectionStub> try_select(const crypto::Vrf& vrf, const agents::NodeIdentity& node,
                                        const TaskRequest& task, double threshold) {
  double value = vrf.evaluate_value(task.randomness, node.key);
  if (value > threshold) return std::nullopt;
  crypto::VrfOutput out = vrf.evaluate(task.randomness, node.key);
  return SelectionStub{node.id, out.value, std::move(out.proof), threshold};
}

std::optional<SelectionStub> try_select(const crypto::Vrf& vrf, const agents::NodeIdentity& node,
                                        const TaskRequest& task,
                                        const reputation::ReputationTable& table,
                                        int expected_committee) {
  return try_select(vrf, node, task, table.optional_range(node.id, expected_committee));
}

Submission make_submission(const SelectionStub& stub, double price, crypto::ByteView public_key) {
  Submission s;
  s.node = stub.node;
  s.commit_digest = crypto::commit(price, public_key);
  s.vrf_value = stub.vrf_value;
  s.vrf_proof = stub.vrf_proof;
  return s;
}

namespace {

double population_variance(std::span<const double> xs) {
  if (xs.empty()) return 0.0;
  double mean = std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
  double acc = 0.0;
  for (double x : xs) acc += (x - mean) * (x - mean);
  return acc / static_cast<double>(xs.size());
}

}  // namespace

std::size_t FilterResult::survivor_count() const {
  return static_cast<std::size_t>(std::count(survived.begin(), survived.end(), true));
}

FilterResult filter_and_aggregate(std::span<const reputation::Reveal> reveals, Rng& rng) {
  if (reveals.empty()) throw InputError("filter_and_aggregate: no reveals");
  FilterResult r;
  r.reveals.assign(reveals.begin(), reveals.end());
  std::vector<double> prices;
  prices.reserve(reveals.size());
  for (const auto& rv : reveals) prices.push_back(rv.price);
  r.mean = std::accumulate(prices.begin(), prices.end(), 0.0) / static_cast<double>(prices.size());
  r.reveal_variance = population_variance(prices);

  std::vector<double> kept;
  for (double x : prices) {
    bool keep = uniform01(rng) < std::exp(-std::abs(x - r.mean));
    r.survived.push_back(keep);
    if (keep) kept.push_back(x);
  }
  if (!kept.empty()) {
    r.aggregate = std::accumulate(kept.begin(), kept.end(), 0.0) / static_cast<double>(kept.size());
    r.survivor_variance = population_variance(kept);
  }
  return r;
}

double RoundOutcome::total_paid() const {
  double sum = 0.0;
  for (const auto& [_, amount] : payouts) sum += amount;
  return sum;
}

RoundOutcome settle(const TaskRequest& task, const FilterResult* filtered,
                    reputation::ReputationTable& table) {
  RoundOutcome out;
  out.task_id = task.id;
  out.fee = task.fee;
  if (filtered == nullptr || filtered->reveals.empty()) {
    out.voided = true;
    out.refund = task.fee;
    return out;
  }
  out.aggregate = filtered->aggregate;
  out.reveal_variance = filtered->reveal_variance;
  out.survivor_variance = filtered->survivor_variance;
  for (std::size_t i = 0; i < filtered->reveals.size(); ++i) {
    out.revealed.push_back(filtered->reveals[i].node);
    if (!filtered->survived[i]) out.filtered_out.push_back(filtered->reveals[i].node);
  }
  if (!filtered->aggregate) {
    out.voided = true;
    out.refund = task.fee;
    return out;
  }
  const double share = task.fee / static_cast<double>(filtered->reveals.size());
  for (std::size_t i = 0; i < filtered->reveals.size(); ++i) {
    if (filtered->survived[i]) out.payouts[filtered->reveals[i].node] = share;
  }
  out.refund = task.fee - out.total_paid();
  table.apply_update(filtered->reveals, filtered->mean);
  out.reputation_updated = true;
  return out;
}

TaskEngine::TaskEngine(TaskRequest request, std::shared_ptr<const crypto::Vrf> vrf,
                       std::map<NodeId, crypto::Bytes> public_keys,
                       std::map<NodeId, double> thresholds, TranscriptWriter* transcript)
    : request_(std::move(request)),
      vrf_(std::move(vrf)),
      public_keys_(std::move(public_keys)),
      thresholds_(std::move(thresholds)),
      transcript_(transcript),
      escrow_(request_.fee) {
  if (!vrf_) throw InputError("TaskEngine: no VRF");
  if (transcript_ != nullptr) transcript_->request(request_, vrf_->scheme());
}

double TaskEngine::threshold(NodeId id) const {
  auto it = thresholds_.find(id);
  if (it == thresholds_.end()) throw RegistrationError("node " + to_string(id) + " has no threshold");
  return it->second;
}

Submission* TaskEngine::find(NodeId id) {
  auto it = std::find_if(submissions_.begin(), submissions_.end(),
                         [&](const Submission& s) { return s.node == id; });
  return it == submissions_.end() ? nullptr : &*it;
}

Verdict TaskEngine::accept_commit(const Submission& submission) {
  Verdict v = Verdict::kAccepted;
  auto pk = public_keys_.find(submission.node);
  auto th = thresholds_.find(submission.node);
  if (phase_ != Phase::kCommit) {
    v = Verdict::kWrongPhase;
  } else if (pk == public_keys_.end() || th == thresholds_.end()) {
    v = Verdict::kUnknownNode;
  } else if (find(submission.node) != nullptr) {
    v = Verdict::kDuplicate;
  } else if (!(submission.vrf_value <= th->second) ||
             !vrf_->verify(submission.vrf_value, submission.vrf_proof, request_.randomness,
                           pk->second)) {
    v = Verdict::kNotSelected;
  }
  if (v == Verdict::kAccepted) {
    Submission stored = submission;
    stored.revealed_price.reset();
    stored.revealed_pk.reset();
    submissions_.push_back(std::move(stored));
  }
  if (transcript_ != nullptr) transcript_->commit(request_.id, submission, v);
  return v;
}

void TaskEngine::close_commits() {
  if (phase_ != Phase::kCommit) throw StateError("close_commits: commit phase already closed");
  phase_ = Phase::kReveal;
}

Verdict TaskEngine::accept_reveal(NodeId node, double price, crypto::ByteView public_key) {
  Verdict v = Verdict::kAccepted;
  Submission* s = find(node);
  auto pk = public_keys_.find(node);
  if (phase_ != Phase::kReveal) {
    v = Verdict::kWrongPhase;
  } else if (s == nullptr) {
    v = Verdict::kNoCommit;
  } else if (s->revealed_price) {
    v = Verdict::kDuplicate;
  } else if (!crypto::open_commitment(s->commit_digest, price, public_key)) {
    v = Verdict::kDigestMismatch;
  } else if (pk == public_keys_.end() ||
             !std::equal(pk->second.begin(), pk->second.end(), public_key.begin(), public_key.end())) {
    v = Verdict::kKeyMismatch;
  }
  if (v == Verdict::kAccepted) {
    s->revealed_price = price;
    s->revealed_pk = crypto::Bytes(public_key.begin(), public_key.end());
  }
  if (transcript_ != nullptr) transcript_->reveal(request_.id, node, price, public_key, v);
  return v;
}

RoundOutcome TaskEngine::finish(Rng& filter_rng, reputation::ReputationTable& table) {
  if (phase_ != Phase::kReveal) throw StateError("finish: task is not in the reveal phase");
  std::vector<reputation::Reveal> reveals;
  for (const auto& s : submissions_) {
    if (s.revealed_price) reveals.push_back({s.node, *s.revealed_price});
  }
  std::optional<FilterResult> filtered;
  if (!reveals.empty()) filtered = filter_and_aggregate(reveals, filter_rng);
  RoundOutcome out = settle(request_, filtered ? &*filtered : nullptr, table);
  for (const auto& s : submissions_) out.selected.push_back(s.node);
  phase_ = Phase::kSettled;
  escrow_ = 0.0;
  if (transcript_ != nullptr) {
    if (filtered) transcript_->filter(request_.id, *filtered);
    transcript_->outcome(out);
  }
  return out;
}

}  // namespace oracle::protocol
