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

#include "oracle/agents.hpp"

#include <cmath>

#include "oracle/errors.hpp"

namespace oracle::agents {

std::string_view to_string(Role role) {
  return role == Role::kHonest ? "honest" : "malicious";
}

double sample_price(const PriceSource& source, Rng& rng) {
  return gaussian(rng, source.true_price, source.noise_sigma);
}

double fetch_price(std::span<const PriceSource> sources, Rng& rng) {
  if (sources.empty()) throw InputError("fetch_price: no data sources");
  return sample_price(sources[uniform_index(rng, sources.size())], rng);
}

AttackStrategy parse_attack_strategy(std::string_view name, double random_max,
                                     double fixed_deviation) {
  if (name == "rational") return Rational{};
  if (name == "random") {
    if (!(random_max >= 0.0)) throw InputError("random strategy needs max deviation >= 0");
    return RandomOffset{random_max};
  }
  if (name == "fixed") {
    if (!(fixed_deviation >= 0.0)) throw InputError("fixed strategy needs deviation >= 0");
    return FixedOffset{fixed_deviation};
  }
  throw InputError("unknown malicious strategy: " + std::string(name));
}

std::string attack_strategy_name(const AttackStrategy& s) {
  struct {
    std::string operator()(const Rational&) const { return "rational"; }
    std::string operator()(const RandomOffset&) const { return "random"; }
    std::string operator()(const FixedOffset&) const { return "fixed"; }
  } visitor;
  return std::visit(visitor, s);
}

PublisherStrategy parse_publisher_strategy(std::string_view name) {
  if (name == "recommended") return PublisherStrategy::kRecommended;
  if (name == "random") return PublisherStrategy::kRandom;
  throw InputError("unknown publisher strategy: " + std::string(name));
}

std::string_view to_string(PublisherStrategy s) {
  return s == PublisherStrategy::kRecommended ? "recommended" : "random";
}

double honest_action(const NodeIdentity&, double source_sample) { return source_sample; }

double malicious_action(const NodeIdentity& node, const TaskTerms& task,
                        double source_sample, const AttackStrategy& strategy, Rng& rng) {
  if (node.role != Role::kMalicious) {
    throw InputError("malicious_action: node " + to_string(node.id) + " is honest");
  }
  double offset = 0.0;
  if (std::holds_alternative<Rational>(strategy)) {
    offset = incentive::follower_best_response(task.goods, task.fee);
  } else if (const auto* r = std::get_if<RandomOffset>(&strategy)) {
    offset = uniform(rng, 0.0, r->max_deviation);
  } else {
    offset = std::get<FixedOffset>(strategy).deviation;
  }
  return source_sample + node.attack_direction * offset;
}

double publisher_action(double u, double goods, PublisherStrategy strategy, Rng& rng,
                        incentive::FeeMapping mapping) {
  if (strategy == PublisherStrategy::kRandom) {
    if (!(goods > 0.0)) throw InputError("publisher_action: K must be positive");
    return uniform(rng, 0.0, goods);
  }
  return incentive::recommend_fee(u, goods, mapping);
}

}  // namespace oracle::agents
