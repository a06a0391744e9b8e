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
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "oracle/crypto/vrf.hpp"
#include "oracle/incentive.hpp"
#include "oracle/reputation.hpp"
#include "oracle/rng.hpp"

namespace oracle::agents {

enum class Role { kHonest, kMalicious };

std::string_view to_string(Role role);

struct NodeIdentity {
  NodeId id;
  crypto::KeyPair key;
  Role role = Role::kHonest;
  double stake = 0.0;            // bookkeeping only
  double attack_direction = 1.0; // sign applied to malicious offsets (+1 / -1)
};

struct PriceSource {
  std::uint32_t id = 0;
  double true_price = 100.0;
  double noise_sigma = 0.1;
};

// true_price + N(0, sigma).
double sample_price(const PriceSource& source, Rng& rng);

// Picks a source uniformly from `sources` and samples it.
double fetch_price(std::span<const PriceSource> sources, Rng& rng);

struct Rational {};
struct RandomOffset {
  double max_deviation = 2.0;
};
struct FixedOffset {
  double deviation = 0.0;
};
using AttackStrategy = std::variant<Rational, RandomOffset, FixedOffset>;

AttackStrategy parse_attack_strategy(std::string_view name, double random_max,
                                     double fixed_deviation);
std::string attack_strategy_name(const AttackStrategy& s);

enum class PublisherStrategy { kRecommended, kRandom };

PublisherStrategy parse_publisher_strategy(std::string_view name);
std::string_view to_string(PublisherStrategy s);

// The public part of a request a node can act on.
struct TaskTerms {
  double goods = 1.0;  // K
  double fee = 0.0;    // P
};

double honest_action(const NodeIdentity& node, double source_sample);

// Rational: Delta*(K, P); random: U[0, max]; fixed: the given Delta. The
// offset is applied in node.attack_direction. `rng` is only drawn from by
// the random strategy. Throws InputError for a non-malicious node.
double malicious_action(const NodeIdentity& node, const TaskTerms& task,
                        double source_sample, const AttackStrategy& strategy,
                        Rng& rng);

// Recommended: recommend_fee(u, K); random: U[0, K].
double publisher_action(double u, double goods, PublisherStrategy strategy, Rng& rng,
                        incentive::FeeMapping mapping = incentive::FeeMapping::kInverse);

}  // namespace oracle::agents
