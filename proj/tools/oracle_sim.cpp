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


// oracle-sim: command-line front end for the oracle network simulator.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "oracle/errors.hpp"
#include "oracle/harness.hpp"
#include "oracle/incentive.hpp"
#include "oracle/transcript.hpp"

namespace {

using namespace oracle;

harness::RunConfig base_config(const std::string& path) {
  return path.empty() ? harness::RunConfig{} : harness::load_config_file(path);
}

std::vector<double> parse_values(const std::string& list) {
  std::vector<double> values;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != item.size()) throw ConfigError("cannot parse sweep value '" + item + "'");
    values.push_back(v);
  }
  if (values.empty()) throw ConfigError("--values is empty");
  return values;
}

// Writes to `path`, or stdout when it is empty or "-".
template <typename Fn>
void with_output(const std::string& path, Fn fn) {
  if (path.empty() || path == "-") {
    fn(std::cout);
    return;
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  fn(out);
  if (!out) throw IoError("write to '" + path + "' failed");
}

int cmd_run(const std::string& config_path, const std::string& out_path,
            const std::string& transcript_path, const std::string& snapshot_dir) {
  harness::RunConfig config = harness::load_config_file(config_path);

  std::unique_ptr<std::ofstream> transcript_file;
  std::unique_ptr<protocol::TranscriptWriter> transcript;
  if (!transcript_path.empty()) {
    transcript_file = std::make_unique<std::ofstream>(transcript_path, std::ios::trunc);
    if (!*transcript_file) throw IoError("cannot open '" + transcript_path + "' for writing");
    transcript = std::make_unique<protocol::TranscriptWriter>(*transcript_file);
  }

  harness::RunResult result = harness::run(config, {}, transcript.get());
  if (auto parent = std::filesystem::path(out_path).parent_path(); !parent.empty()) {
    std::filesystem::create_directories(parent);
  }
  harness::emit_csv(result.rows, out_path);
  with_output(out_path + ".meta.json",
              [&](std::ostream& os) { os << harness::run_metadata_json(config) << '\n'; });

  if (!result.snapshots.empty()) {
    std::filesystem::path dir =
        snapshot_dir.empty() ? std::filesystem::path(out_path).parent_path() : std::filesystem::path(snapshot_dir);
    if (!dir.empty()) std::filesystem::create_directories(dir);
    for (const auto& row : result.rows) {
      if (row.reputation_snapshot.empty()) continue;
      with_output((dir / row.reputation_snapshot).string(),
                  [&](std::ostream& os) { os << result.snapshots.at(row.task); });
    }
  }
  std::cerr << "wrote " << result.rows.size() << " rows to " << out_path << '\n';
  return 0;
}

int cmd_sweep(const std::string& config_path, const std::string& axis_name,
              const std::string& values, int seeds, const std::string& out_path) {
  harness::RunConfig config = base_config(config_path);
  if (seeds > 0) config.seeds = seeds;
  auto rows = harness::sweep(config, harness::parse_axis(axis_name), parse_values(values));
  with_output(out_path, [&](std::ostream& os) { harness::write_sweep_csv(os, rows); });
  return 0;
}

int cmd_price(double goods, double u, int n, const std::string& mapping_name) {
  auto mapping = incentive::parse_fee_mapping(mapping_name);
  std::vector<Warning> warnings;
  nlohmann::json record;
  if (mapping == incentive::FeeMapping::kInverse) {
    auto eq = incentive::equilibrium(u, goods, n);
    record = {{"K", goods}, {"u", u}, {"n", n}, {"mapping", "inverse"},
              {"alpha_eff", eq.alpha_eff}, {"P", eq.fee}, {"delta", eq.deviation},
              {"U1", eq.payoffs.leader}, {"U2", eq.payoffs.follower}};
  } else {
    double fee = incentive::recommend_fee(u, goods, mapping, &warnings);
    double clamped = std::clamp(fee, 0.0, goods);
    double delta = incentive::follower_best_response(goods, clamped, &warnings);
    incentive::GameParams g{goods, n, clamped, delta, u, u};
    record = {{"K", goods}, {"u", u}, {"n", n}, {"mapping", "literal"},
              {"alpha_eff", u}, {"P", fee}, {"delta", delta},
              {"U1", incentive::leader_payoff(g)}, {"U2", incentive::follower_payoff(g)}};
  }
  nlohmann::json notes = nlohmann::json::array();
  for (const auto& w : warnings) notes.push_back({{"code", w.code}, {"message", w.message}});
  record["warnings"] = notes;
  std::cout << record.dump() << '\n';
  return 0;
}

int cmd_payoffs(const std::string& config_path, int trials, int seeds, const std::string& out_path) {
  harness::RunConfig config = base_config(config_path);
  if (seeds > 0) config.seeds = seeds;
  auto cells = harness::payoff_experiment(config, trials);
  with_output(out_path, [&](std::ostream& os) { harness::write_payoff_csv(os, cells); });
  return 0;
}

int cmd_audit(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "'");
  auto report = protocol::audit_transcript(in);
  for (const auto& p : report.problems) std::cout << "problem: " << p << '\n';
  std::cout << "tasks=" << report.tasks << " commits=" << report.commits_checked
            << " reveals=" << report.reveals_checked << " failures=" << report.failures << '\n';
  return report.ok() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Reputation-weighted oracle network simulator"};
  app.require_subcommand(1);

  std::string config_path, out_path, transcript_path, snapshot_dir;
  auto* run = app.add_subcommand("run", "Run one configuration and write per-task metrics");
  run->add_option("--config", config_path, "JSON run configuration")->required()->check(CLI::ExistingFile);
  run->add_option("--out", out_path, "Metrics CSV path")->required();
  run->add_option("--transcript", transcript_path, "Write a JSON-lines protocol transcript");
  run->add_option("--snapshot-dir", snapshot_dir, "Directory for reputation snapshots");

  std::string axis, values, sweep_config, sweep_out;
  int sweep_seeds = 0;
  auto* sweep = app.add_subcommand("sweep", "Sweep one parameter in both selection modes");
  sweep->add_option("--axis", axis, "u | lambda | M | K")->required();
  sweep->add_option("--values", values, "Comma-separated axis values")->required();
  sweep->add_option("--config", sweep_config, "Base JSON configuration")->check(CLI::ExistingFile);
  sweep->add_option("--seeds", sweep_seeds, "Replicates per cell (overrides config)");
  sweep->add_option("--out", sweep_out, "CSV path (default stdout)");

  double goods = 10.0, alpha = 0.5;
  int n = 5;
  std::string mapping = "inverse";
  auto* price = app.add_subcommand("price", "Print the recommended fee and equilibrium payoffs");
  price->add_option("--k", goods, "Goods quantity K")->required();
  price->add_option("--alpha", alpha, "Normalized quality weight u in [0, 1]")->required();
  price->add_option("--n", n, "Submissions n")->capture_default_str();
  price->add_option("--mapping", mapping, "inverse | literal")->capture_default_str();

  int trials = 50, payoff_seeds = 0;
  std::string payoff_config, payoff_out;
  auto* payoffs = app.add_subcommand("payoffs", "Realized payoffs under recommended vs random play");
  payoffs->add_option("--trials", trials, "Tasks per replicate")->required();
  payoffs->add_option("--config", payoff_config, "Base JSON configuration")->check(CLI::ExistingFile);
  payoffs->add_option("--seeds", payoff_seeds, "Replicates (overrides config)");
  payoffs->add_option("--out", payoff_out, "CSV path (default stdout)");

  std::string audit_path;
  auto* audit = app.add_subcommand("audit", "Re-verify a protocol transcript");
  audit->add_option("--transcript", audit_path, "JSON-lines transcript")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) return cmd_run(config_path, out_path, transcript_path, snapshot_dir);
    if (*sweep) return cmd_sweep(sweep_config, axis, values, sweep_seeds, sweep_out);
    if (*price) return cmd_price(goods, alpha, n, mapping);
    if (*payoffs) return cmd_payoffs(payoff_config, trials, payoff_seeds, payoff_out);
    if (*audit) return cmd_audit(audit_path);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
