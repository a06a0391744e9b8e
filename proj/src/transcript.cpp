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

#include "oracle/transcript.hpp"

#include <cmath>
#include <istream>
#include <map>
#include <ostream>

#include <json.hpp>

#include "oracle/crypto/commitment.hpp"

namespace oracle::protocol {

using nlohmann::json;
using crypto::from_hex;
using crypto::to_hex;

void TranscriptWriter::line(const std::string& text) { out_ << text << '\n'; }

void TranscriptWriter::registration(NodeId node, crypto::ByteView public_key) {
  line(json{{"type", "register"}, {"node", node.value}, {"public_key", to_hex(public_key)}}.dump());
}

void TranscriptWriter::request(const TaskRequest& req, crypto::VrfScheme scheme) {
  line(json{{"type", "request"},
            {"task", req.id},
            {"sources", req.sources},
            {"fee", req.fee},
            {"goods", req.goods},
            {"randomness", to_hex(req.randomness)},
            {"vrf", std::string(crypto::to_string(scheme))}}
           .dump());
}

void TranscriptWriter::commit(std::uint64_t task, const Submission& s, Verdict v) {
  line(json{{"type", "commit"},
            {"task", task},
            {"node", s.node.value},
            {"digest", to_hex(crypto::as_view(s.commit_digest))},
            {"vrf_value", s.vrf_value},
            {"vrf_proof", to_hex(s.vrf_proof)},
            {"verdict", std::string(to_string(v))}}
           .dump());
}

void TranscriptWriter::reveal(std::uint64_t task, NodeId node, double price,
                              crypto::ByteView pk, Verdict v) {
  line(json{{"type", "reveal"},
            {"task", task},
            {"node", node.value},
            {"price", price},
            {"public_key", to_hex(pk)},
            {"verdict", std::string(to_string(v))}}
           .dump());
}

void TranscriptWriter::filter(std::uint64_t task, const FilterResult& f) {
  json survivors = json::array();
  json removed = json::array();
  for (std::size_t i = 0; i < f.reveals.size(); ++i) {
    (f.survived[i] ? survivors : removed).push_back(f.reveals[i].node.value);
  }
  json j{{"type", "filter"}, {"task", task}, {"mean", f.mean},
         {"survivors", survivors}, {"filtered_out", removed}};
  j["aggregate"] = f.aggregate ? json(*f.aggregate) : json(nullptr);
  line(j.dump());
}

void TranscriptWriter::outcome(const RoundOutcome& o) {
  json payouts = json::object();
  for (const auto& [id, amount] : o.payouts) payouts[std::to_string(id.value)] = amount;
  json j{{"type", "outcome"},
         {"task", o.task_id},
         {"fee", o.fee},
         {"refund", o.refund},
         {"payouts", payouts},
         {"voided", o.voided},
         {"reputation_updated", o.reputation_updated}};
  j["aggregate"] = o.aggregate ? json(*o.aggregate) : json(nullptr);
  line(j.dump());
}

AuditReport audit_transcript(std::istream& in) {
  AuditReport report;
  std::map<std::uint32_t, crypto::Bytes> keys;
  std::map<std::uint64_t, std::pair<crypto::Bytes, crypto::VrfScheme>> rounds;
  std::map<std::pair<std::uint64_t, std::uint32_t>, crypto::Digest> digests;
  auto fail = [&](std::string why) {
    ++report.failures;
    report.problems.push_back(std::move(why));
  };

  std::string text;
  while (std::getline(in, text)) {
    if (text.empty()) continue;
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded() || !j.contains("type")) {
      fail("unparseable line");
      continue;
    }
    const std::string type = j["type"];
    if (type == "register") {
      keys[j["node"].get<std::uint32_t>()] = from_hex(j["public_key"].get<std::string>());
    } else if (type == "request") {
      ++report.tasks;
      rounds[j["task"].get<std::uint64_t>()] = {
          from_hex(j["randomness"].get<std::string>()),
          crypto::parse_vrf_scheme(j["vrf"].get<std::string>())};
    } else if (type == "commit") {
      if (j["verdict"] != "accepted") continue;
      ++report.commits_checked;
      auto task = j["task"].get<std::uint64_t>();
      auto node = j["node"].get<std::uint32_t>();
      auto round = rounds.find(task);
      auto key = keys.find(node);
      if (round == rounds.end() || key == keys.end()) {
        fail("commit for unknown task or node");
        continue;
      }
      auto vrf = crypto::make_vrf(round->second.second);
      crypto::Bytes proof = from_hex(j["vrf_proof"].get<std::string>());
      if (!vrf->verify(j["vrf_value"].get<double>(), proof, round->second.first, key->second)) {
        fail("task " + std::to_string(task) + ": credential of node " + std::to_string(node) +
             " does not verify");
      }
      crypto::Bytes d = from_hex(j["digest"].get<std::string>());
      crypto::Digest digest{};
      if (d.size() == digest.size()) std::copy(d.begin(), d.end(), digest.begin());
      digests[{task, node}] = digest;
    } else if (type == "reveal") {
      if (j["verdict"] != "accepted") continue;
      ++report.reveals_checked;
      auto key = std::make_pair(j["task"].get<std::uint64_t>(), j["node"].get<std::uint32_t>());
      auto it = digests.find(key);
      crypto::Bytes pk = from_hex(j["public_key"].get<std::string>());
      if (it == digests.end() || !crypto::open_commitment(it->second, j["price"].get<double>(), pk)) {
        fail("task " + std::to_string(key.first) + ": reveal of node " +
             std::to_string(key.second) + " does not open its commitment");
      }
    } else if (type == "outcome") {
      double paid = 0.0;
      for (const auto& [_, amount] : j["payouts"].items()) paid += amount.get<double>();
      double gap = paid + j["refund"].get<double>() - j["fee"].get<double>();
      if (std::abs(gap) > 1e-9) {
        fail("task " + std::to_string(j["task"].get<std::uint64_t>()) + ": escrow off by " +
             std::to_string(gap));
      }
    }
  }
  return report;
}

}  // namespace oracle::protocol
