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
#include <limits>
#include <string>

#include "oracle/errors.hpp"
#include "oracle/harness.hpp"
#include "oracle/rng.hpp"
#include "oracle/stats.hpp"

namespace oracle::harness {

ModeSummary summarize(const RunResult& r) {
  return ModeSummary{r.mean_reveal_variance(), r.mean_survivor_variance(), r.aggregate_variance(),
                     r.mean_malicious_selected(), r.mean_committee_size(),
                     r.reputation_separated()};
}

Consistency compare_consistency(const RunConfig& config) {
  RunConfig rep = config;
  rep.selection_mode = protocol::SelectionMode::kReputation;
  RunConfig base = config;
  base.selection_mode = protocol::SelectionMode::kBaseline;
  return Consistency{summarize(run(rep)), summarize(run(base))};
}

std::uint64_t cell_seed(std::uint64_t master, std::uint64_t cell, std::uint64_t replicate) {
  return derive_seed(master, "cell", cell, replicate);
}

std::vector<ModeSummary> replicate(const RunConfig& config, std::uint64_t cell) {
  config.validate();
  std::vector<ModeSummary> out;
  out.reserve(static_cast<std::size_t>(config.seeds));
  for (int i = 0; i < config.seeds; ++i) {
    RunConfig c = config;
    c.seed = cell_seed(config.seed, cell, static_cast<std::uint64_t>(i));
    out.push_back(summarize(run(c)));
  }
  return out;
}

SweepAxis parse_axis(std::string_view name) {
  if (name == "u") return SweepAxis::kU;
  if (name == "lambda") return SweepAxis::kLambda;
  if (name == "M") return SweepAxis::kM;
  if (name == "K") return SweepAxis::kK;
  throw ConfigError("sweep axis must be one of u, lambda, M, K; got '" + std::string(name) + "'");
}

std::string_view to_string(SweepAxis axis) {
  switch (axis) {
    case SweepAxis::kU: return "u";
    case SweepAxis::kLambda: return "lambda";
    case SweepAxis::kM: return "M";
    case SweepAxis::kK: return "K";
  }
  return "?";
}

namespace {

RunConfig with_axis(const RunConfig& base, SweepAxis axis, double value) {
  RunConfig c = base;
  switch (axis) {
    case SweepAxis::kU:
      c.u = value;
      break;
    case SweepAxis::kLambda:
      c.lambda = value;
      break;
    case SweepAxis::kM:
      if (!std::isfinite(value) || value != std::floor(value) || value < 1.0 ||
          value > static_cast<double>(base.N)) {
        throw ConfigError("sweep value for M must be an integer in [1, N], got " +
                          std::to_string(value));
      }
      c.M = static_cast<int>(value);
      break;
    case SweepAxis::kK:
      c.K = value;
      break;
  }
  c.validate();
  return c;
}

}  // namespace

std::vector<SweepRow> sweep(const RunConfig& config, SweepAxis axis,
                            const std::vector<double>& values) {
  std::vector<RunConfig> cells;
  for (double v : values) cells.push_back(with_axis(config, axis, v));

  std::vector<SweepRow> rows;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    for (auto mode : {protocol::SelectionMode::kReputation, protocol::SelectionMode::kBaseline}) {
      RunConfig c = cells[i];
      c.selection_mode = mode;
      auto reps = replicate(c, i);
      SweepRow row;
      row.axis = axis;
      row.value = values[i];
      row.alpha_eff = c.fee_mapping == incentive::FeeMapping::kInverse
                          ? incentive::alpha_effective(c.u, c.K)
                          : c.u;
      row.mode = mode;
      row.seeds = c.seeds;
      std::vector<double> survivor, malicious, committee;
      for (const auto& r : reps) {
        row.per_seed_reveal_variance.push_back(r.mean_reveal_variance);
        survivor.push_back(r.mean_survivor_variance);
        malicious.push_back(r.mean_malicious_selected);
        committee.push_back(r.mean_committee_size);
      }
      row.mean_reveal_variance = stats::mean(row.per_seed_reveal_variance);
      row.se_reveal_variance = stats::standard_error(row.per_seed_reveal_variance);
      row.mean_survivor_variance = stats::mean(survivor);
      row.mean_malicious_selected = stats::mean(malicious);
      row.mean_committee_size = stats::mean(committee);
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

std::vector<PayoffCell> payoff_experiment(const RunConfig& config, int trials) {
  if (trials < 1) throw ConfigError("payoff experiment needs trials >= 1");
  config.validate();
  std::vector<PayoffCell> cells;
  for (auto publisher : {agents::PublisherStrategy::kRecommended, agents::PublisherStrategy::kRandom}) {
    for (const char* executor : {"rational", "random"}) {
      PayoffCell cell;
      cell.publisher = publisher;
      cell.executor = executor;
      double u1_total = 0.0, u2_total = 0.0, node_tasks = 0.0;
      std::size_t u1_count = 0;
      for (int i = 0; i < config.seeds; ++i) {
        RunConfig c = config;
        c.tasks = trials;
        c.publisher_strategy = publisher;
        c.malicious_strategy = executor;
        c.seed = cell_seed(config.seed, 0, static_cast<std::uint64_t>(i));
        RunResult r = run(c);
        double u1 = 0.0, u2 = 0.0;
        int instances = 0;
        for (const auto& row : r.rows) {
          u1 += row.publisher_utility;
          u2 += row.malicious_utility_sum;
          instances += row.malicious_selected;
        }
        int malicious_nodes = 0;
        for (const auto& node : r.nodes) malicious_nodes += node.role == agents::Role::kMalicious;
        const double exposure = static_cast<double>(malicious_nodes) * static_cast<double>(r.rows.size());
        u1_total += u1;
        u1_count += r.rows.size();
        u2_total += u2;
        node_tasks += exposure;
        cell.u2_samples += static_cast<std::size_t>(instances);
        cell.per_seed_u1.push_back(u1 / static_cast<double>(r.rows.size()));
        cell.per_seed_u2.push_back(exposure > 0 ? u2 / exposure
                                                : std::numeric_limits<double>::quiet_NaN());
      }
      cell.mean_u1 = u1_total / static_cast<double>(u1_count);
      cell.mean_u2 = node_tasks > 0 ? u2_total / node_tasks : 0.0;
      cell.mean_u2_per_selection =
          cell.u2_samples > 0 ? u2_total / static_cast<double>(cell.u2_samples) : 0.0;
      cells.push_back(std::move(cell));
    }
  }
  return cells;
}

const PayoffCell& find_cell(const std::vector<PayoffCell>& cells,
                            agents::PublisherStrategy publisher, std::string_view executor) {
  for (const auto& c : cells)
    if (c.publisher == publisher && c.executor == executor) return c;
  throw InputError("no payoff cell for " + std::string(agents::to_string(publisher)) + "/" +
                   std::string(executor));
}

}  // namespace oracle::harness
