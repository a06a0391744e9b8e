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


#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "oracle/errors.hpp"
#include "oracle/harness.hpp"
#include "oracle/rng.hpp"
#include "oracle/stats.hpp"
#include "oracle/transcript.hpp"

namespace oracle::harness {

namespace {

constexpr std::size_t kMovingWindow = 10;

double mean_or_zero(const std::vector<double>& xs) {
  return xs.empty() ? 0.0 : stats::mean(xs);
}

}  // namespace

std::vector<agents::NodeIdentity> make_population(const RunConfig& config) {
  config.validate();
  auto vrf = crypto::make_vrf(config.vrf);
  const auto n = static_cast<std::size_t>(config.N);
  const auto malicious = static_cast<std::size_t>(std::llround(config.lambda * config.N));

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  Rng roles = make_rng(config.seed, "roles");
  for (std::size_t i = n; i > 1; --i) std::swap(order[i - 1], order[uniform_index(roles, i)]);
  std::vector<bool> is_malicious(n, false);
  for (std::size_t i = 0; i < malicious; ++i) is_malicious[order[i]] = true;

  std::vector<agents::NodeIdentity> nodes;
  nodes.reserve(n);
  int malicious_seen = 0;
  for (std::size_t i = 0; i < n; ++i) {
    agents::NodeIdentity node;
    node.id = NodeId{static_cast<std::uint32_t>(i)};
    node.key = vrf->keygen(derive_seed(config.seed, "node-key", i));
    if (is_malicious[i]) {
      node.role = agents::Role::kMalicious;
      bool flip = config.attack_sign == AttackSign::kAlternating && malicious_seen % 2 == 1;
      node.attack_direction = flip ? -1.0 : 1.0;
      ++malicious_seen;
    }
    nodes.push_back(std::move(node));
  }
  return nodes;
}

RunResult run(const RunConfig& config, const RowSink& sink,
              protocol::TranscriptWriter* transcript) {
  config.validate();
  RunResult result;
  result.config = config;
  result.nodes = make_population(config);
  result.final_table = reputation::ReputationTable(config.reputation_memory);

  auto vrf = crypto::make_vrf(config.vrf);
  const auto strategy = agents::parse_attack_strategy(
      config.malicious_strategy, config.random_delta_max, config.fixed_delta);
  const double alpha_eff = config.fee_mapping == incentive::FeeMapping::kInverse
                               ? incentive::alpha_effective(config.u, config.K)
                               : config.u;

  auto& table = result.final_table;
  std::map<NodeId, crypto::Bytes> public_keys;
  std::map<NodeId, const agents::NodeIdentity*> by_id;
  for (const auto& node : result.nodes) {
    table.register_node(node.id);
    public_keys[node.id] = node.key.public_key;
    by_id[node.id] = &node;
    if (transcript) transcript->registration(node.id, node.key.public_key);
  }

  std::vector<agents::PriceSource> sources;
  std::vector<std::uint32_t> source_ids;
  for (int s = 0; s < config.sources; ++s) {
    sources.push_back({static_cast<std::uint32_t>(s), config.true_price, config.noise_sigma});
    source_ids.push_back(static_cast<std::uint32_t>(s));
  }

  crypto::Bytes randomness = crypto::to_bytes(
      crypto::Sha256().update(std::string_view("oracle-sim/genesis")).update_u64(config.seed).finish());
  std::vector<double> malicious_counts;

  for (int t = 0; t < config.tasks; ++t) {
    const auto q = static_cast<std::uint64_t>(t) + 1;
    Rng publisher_rng = make_rng(config.seed, "publisher", q);
    Rng agent_rng = make_rng(config.seed, "agents", q);
    Rng filter_rng = make_rng(config.seed, "filter", q);

    const double fee = agents::publisher_action(config.u, config.K, config.publisher_strategy,
                                                publisher_rng, config.fee_mapping);
    protocol::TaskRequest request =
        protocol::open_task(q, source_ids, config.u, config.K, randomness, fee, config.fee_mapping);
    randomness = request.randomness;

    auto thresholds = protocol::selection_thresholds(table, config.selection_mode, config.M);
    protocol::TaskEngine engine(request, vrf, public_keys, thresholds, transcript);

    struct Pending {
      NodeId id;
      double price;
      double offset;  // signed deviation from the node's own sample
    };
    std::vector<Pending> pending;
    for (const auto& node : result.nodes) {
      auto stub = protocol::try_select(*vrf, node, request, thresholds.at(node.id));
      if (!stub) continue;
      const double sample = agents::fetch_price(sources, agent_rng);
      double price = agents::honest_action(node, sample);
      if (node.role == agents::Role::kMalicious) {
        price = agents::malicious_action(node, {request.goods, request.fee}, sample, strategy,
                                         agent_rng);
      }
      auto verdict = engine.accept_commit(protocol::make_submission(*stub, price, node.key.public_key));
      if (verdict != protocol::Verdict::kAccepted) {
        throw StateError("harness commit rejected for node " + to_string(node.id) + ": " +
                         std::string(protocol::to_string(verdict)));
      }
      pending.push_back({node.id, price, price - sample});
    }
    engine.close_commits();
    for (const auto& p : pending) {
      auto verdict = engine.accept_reveal(p.id, p.price, by_id.at(p.id)->key.public_key);
      if (verdict != protocol::Verdict::kAccepted) {
        throw StateError("harness reveal rejected for node " + to_string(p.id));
      }
    }
    protocol::RoundOutcome outcome = engine.finish(filter_rng, table);

    MetricsRow row;
    row.task = t;
    row.fee = fee;
    row.committee_size = static_cast<int>(pending.size());
    row.reveals = static_cast<int>(outcome.revealed.size());
    row.survivors = row.reveals - static_cast<int>(outcome.filtered_out.size());
    row.reveal_variance = outcome.reveal_variance;
    row.survivor_variance = outcome.survivor_variance;
    row.aggregate = outcome.aggregate;
    row.refund = outcome.refund;

    double deviation_sum = 0.0;
    for (const auto& p : pending) {
      const auto& node = *by_id.at(p.id);
      auto paid = outcome.payouts.find(p.id);
      const double amount = paid == outcome.payouts.end() ? 0.0 : paid->second;
      if (node.role == agents::Role::kHonest) {
        row.paid_honest += amount;
        continue;
      }
      ++row.malicious_selected;
      row.paid_malicious += amount;
      deviation_sum += std::abs(p.offset);
      if (paid != outcome.payouts.end()) {
        row.malicious_utility_sum += amount + config.K * std::abs(p.offset) / row.reveals;
      }
    }
    if (row.malicious_selected > 0) row.mean_deviation = deviation_sum / row.malicious_selected;
    if (outcome.aggregate) {
      row.publisher_utility = alpha_eff * std::exp(-std::abs(*outcome.aggregate - config.true_price)) -
                              (1.0 - alpha_eff) * (fee - outcome.refund);
    }

    malicious_counts.push_back(row.malicious_selected);
    row.malicious_selected_ma10 = stats::moving_average(malicious_counts, kMovingWindow).back();

    double honest_sum = 0.0, malicious_sum = 0.0;
    int honest_n = 0, malicious_n = 0;
    row.min_rep_honest = std::numeric_limits<double>::infinity();
    row.max_rep_malicious = 0.0;
    for (const auto& node : result.nodes) {
      const double c = table.reputation(node.id);
      if (node.role == agents::Role::kHonest) {
        honest_sum += c;
        ++honest_n;
        row.min_rep_honest = std::min(row.min_rep_honest, c);
      } else {
        malicious_sum += c;
        ++malicious_n;
        row.max_rep_malicious = std::max(row.max_rep_malicious, c);
      }
    }
    if (honest_n == 0) row.min_rep_honest = 0.0;
    row.mean_rep_honest = honest_n ? honest_sum / honest_n : 0.0;
    row.mean_rep_malicious = malicious_n ? malicious_sum / malicious_n : 0.0;

    if (config.snapshot_every > 0 && (t + 1) % config.snapshot_every == 0) {
      std::ostringstream snap;
      table.write_csv(snap);
      result.snapshots[t] = snap.str();
      row.reputation_snapshot = "reputation_" + std::to_string(t) + ".csv";
    }

    if (sink) sink(row);
    result.rows.push_back(std::move(row));
  }
  return result;
}

double RunResult::mean_reveal_variance() const {
  std::vector<double> xs;
  for (const auto& r : rows)
    if (r.reveals > 0) xs.push_back(r.reveal_variance);
  return mean_or_zero(xs);
}

double RunResult::mean_survivor_variance() const {
  std::vector<double> xs;
  for (const auto& r : rows)
    if (r.aggregate) xs.push_back(r.survivor_variance);
  return mean_or_zero(xs);
}

double RunResult::aggregate_variance() const {
  std::vector<double> xs;
  for (const auto& r : rows)
    if (r.aggregate) xs.push_back(*r.aggregate);
  if (xs.empty()) return 0.0;
  const double m = stats::mean(xs);
  double acc = 0.0;
  for (double x : xs) acc += (x - m) * (x - m);
  return acc / static_cast<double>(xs.size());
}

double RunResult::mean_malicious_selected() const {
  std::vector<double> xs;
  for (const auto& r : rows) xs.push_back(r.malicious_selected);
  return mean_or_zero(xs);
}

double RunResult::mean_committee_size() const {
  std::vector<double> xs;
  for (const auto& r : rows) xs.push_back(r.committee_size);
  return mean_or_zero(xs);
}

bool RunResult::reputation_separated() const {
  double min_honest = std::numeric_limits<double>::infinity();
  double max_malicious = -std::numeric_limits<double>::infinity();
  for (const auto& node : nodes) {
    const double c = final_table.reputation(node.id);
    if (node.role == agents::Role::kHonest) {
      min_honest = std::min(min_honest, c);
    } else {
      max_malicious = std::max(max_malicious, c);
    }
  }
  return min_honest > max_malicious;
}

}  // namespace oracle::harness
