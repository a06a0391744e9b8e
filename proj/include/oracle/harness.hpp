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
#include <functional>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "oracle/agents.hpp"
#include "oracle/crypto/vrf.hpp"
#include "oracle/incentive.hpp"
#include "oracle/protocol.hpp"
#include "oracle/reputation.hpp"

namespace oracle::harness {

enum class AttackSign { kPositive, kAlternating };

// Field names match the JSON configuration keys.
struct RunConfig {
  std::uint64_t seed = 1;
  int N = 50;
  double lambda = 0.4;
  int M = 5;
  double K = 10.0;
  double u = 0.5;
  int tasks = 200;
  protocol::SelectionMode selection_mode = protocol::SelectionMode::kReputation;
  agents::PublisherStrategy publisher_strategy = agents::PublisherStrategy::kRecommended;
  std::string malicious_strategy = "rational";  // rational | random | fixed
  double random_delta_max = 2.0;
  double fixed_delta = 1.0;
  double true_price = 100.0;
  double noise_sigma = 0.1;
  int sources = 3;
  crypto::VrfScheme vrf = crypto::VrfScheme::kEcP256;
  double reputation_memory = 0.8;
  AttackSign attack_sign = AttackSign::kAlternating;
  incentive::FeeMapping fee_mapping = incentive::FeeMapping::kInverse;
  int seeds = 10;           // replication count for sweeps / experiments
  int snapshot_every = 0;   // 0 disables reputation snapshots

  // Throws ConfigError naming the first violated constraint.
  void validate() const;
};

RunConfig load_config(std::istream& in);
RunConfig load_config_file(const std::string& path);
std::string config_to_json(const RunConfig& config);

// Build/run facts that make a CSV reproducible.
std::string run_metadata_json(const RunConfig& config);

struct MetricsRow {
  int task = 0;
  double fee = 0.0;
  int committee_size = 0;
  int malicious_selected = 0;
  double malicious_selected_ma10 = 0.0;
  int reveals = 0;
  int survivors = 0;
  double reveal_variance = 0.0;
  double survivor_variance = 0.0;
  std::optional<double> aggregate;
  double refund = 0.0;
  double paid_honest = 0.0;
  double paid_malicious = 0.0;
  double publisher_utility = 0.0;      // realized U1
  double malicious_utility_sum = 0.0;  // realized U2 summed over selected malicious nodes
  double mean_deviation = 0.0;         // mean |offset| among selected malicious nodes
  double mean_rep_honest = 0.0;
  double mean_rep_malicious = 0.0;
  double min_rep_honest = 0.0;
  double max_rep_malicious = 0.0;
  std::string reputation_snapshot;
};

struct RunResult {
  RunConfig config;
  std::vector<MetricsRow> rows;
  std::vector<agents::NodeIdentity> nodes;
  reputation::ReputationTable final_table;
  std::map<int, std::string> snapshots;  // task -> snapshot CSV text
  std::size_t transcript_failures = 0;

  double mean_reveal_variance() const;   // over tasks with >= 1 reveal
  double mean_survivor_variance() const; // over tasks with an aggregate
  double aggregate_variance() const;     // across tasks with an aggregate
  double mean_malicious_selected() const;
  double mean_committee_size() const;
  // min honest C > max malicious C at the end of the run.
  bool reputation_separated() const;
};

using RowSink = std::function<void(const MetricsRow&)>;

// Executes config.tasks sequential tasks. Deterministic in the config.
// Throws ConfigError before any task runs when the config is invalid.
RunResult run(const RunConfig& config, const RowSink& sink = {},
              protocol::TranscriptWriter* transcript = nullptr);

// Builds the node population for a config (keys, roles, attack signs).
std::vector<agents::NodeIdentity> make_population(const RunConfig& config);

struct ModeSummary {
  double mean_reveal_variance = 0.0;
  double mean_survivor_variance = 0.0;
  double aggregate_variance = 0.0;
  double mean_malicious_selected = 0.0;
  double mean_committee_size = 0.0;
  bool separated = false;
};

ModeSummary summarize(const RunResult& r);

struct Consistency {
  ModeSummary reputation;
  ModeSummary baseline;
};

// Same seed, both selection modes.
Consistency compare_consistency(const RunConfig& config);

// Seed for replicate `replicate` of sweep cell `cell`.
std::uint64_t cell_seed(std::uint64_t master, std::uint64_t cell, std::uint64_t replicate);

// config.seeds replicates of one cell, each with cell_seed(config.seed, cell, i).
std::vector<ModeSummary> replicate(const RunConfig& config, std::uint64_t cell);

enum class SweepAxis { kU, kLambda, kM, kK };

SweepAxis parse_axis(std::string_view name);
std::string_view to_string(SweepAxis axis);

struct SweepRow {
  SweepAxis axis = SweepAxis::kU;
  double value = 0.0;
  double alpha_eff = 0.0;
  protocol::SelectionMode mode = protocol::SelectionMode::kReputation;
  int seeds = 0;
  double mean_reveal_variance = 0.0;
  double se_reveal_variance = 0.0;
  double mean_survivor_variance = 0.0;
  double mean_malicious_selected = 0.0;
  double mean_committee_size = 0.0;
  std::vector<double> per_seed_reveal_variance;
};

// One row per (value, mode); both modes of a value share replicate seeds.
// Throws ConfigError for an illegal axis value.
std::vector<SweepRow> sweep(const RunConfig& config, SweepAxis axis,
                            const std::vector<double>& values);

struct PayoffCell {
  agents::PublisherStrategy publisher = agents::PublisherStrategy::kRecommended;
  std::string executor;  // rational | random
  double mean_u1 = 0.0;                // publisher, per task
  double mean_u2 = 0.0;                // per malicious node per task (0 when not selected)
  double mean_u2_per_selection = 0.0;  // per task in which a malicious node was selected
  std::size_t u2_samples = 0;          // malicious selections
  std::vector<double> per_seed_u1;
  std::vector<double> per_seed_u2;  // NaN where a replicate has no malicious node
};

// {recommended, random} publisher x {rational, random} executor, each cell
// run for `trials` tasks on the same config.seeds replicate seeds.
std::vector<PayoffCell> payoff_experiment(const RunConfig& config, int trials);

const PayoffCell& find_cell(const std::vector<PayoffCell>& cells,
                            agents::PublisherStrategy publisher, std::string_view executor);

// CSV output. Numbers use 17 significant digits.
extern const char* const kMetricsHeader;
void write_metrics_csv(std::ostream& out, const std::vector<MetricsRow>& rows);
void emit_csv(const std::vector<MetricsRow>& rows, const std::string& path);
void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows);
void write_payoff_csv(std::ostream& out, const std::vector<PayoffCell>& cells);

std::string format_number(double x);

}  // namespace oracle::harness
