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


#include <doctest.h>

#include <cmath>
#include <vector>

#include "oracle/agents.hpp"
#include "oracle/errors.hpp"
#include "oracle/stats.hpp"

using namespace oracle;
using namespace oracle::agents;

namespace {

NodeIdentity node(Role role, double direction = 1.0) {
  NodeIdentity n;
  n.id = NodeId{1};
  n.role = role;
  n.attack_direction = direction;
  return n;
}

}  // namespace

TEST_CASE("honest nodes submit what they fetched") {
  CHECK(honest_action(node(Role::kHonest), 100.07) == 100.07);
}

TEST_CASE("rational malicious nodes deviate by the best response") {
  Rng rng(1);
  TaskTerms terms{10.0, 3.4375};
  CHECK(malicious_action(node(Role::kMalicious), terms, 100.0, Rational{}, rng) ==
        doctest::Approx(100.65625));
  CHECK(malicious_action(node(Role::kMalicious, -1.0), terms, 100.0, Rational{}, rng) ==
        doctest::Approx(99.34375));
  TaskTerms full{10.0, 10.0};
  CHECK(malicious_action(node(Role::kMalicious), full, 100.0, Rational{}, rng) == 100.0);
}

TEST_CASE("fixed and random offsets") {
  Rng rng(2);
  TaskTerms terms{10.0, 1.0};
  CHECK(malicious_action(node(Role::kMalicious), terms, 50.0, FixedOffset{0.25}, rng) == 50.25);
  for (int i = 0; i < 1000; ++i) {
    double x = malicious_action(node(Role::kMalicious), terms, 50.0, RandomOffset{2.0}, rng);
    CHECK(x >= 50.0);
    CHECK(x < 52.0);
  }
  CHECK_THROWS_AS(malicious_action(node(Role::kHonest), terms, 50.0, Rational{}, rng), InputError);
}

TEST_CASE("strategy parsing") {
  CHECK(attack_strategy_name(parse_attack_strategy("rational", 2, 1)) == "rational");
  CHECK(std::get<RandomOffset>(parse_attack_strategy("random", 3, 1)).max_deviation == 3.0);
  CHECK(std::get<FixedOffset>(parse_attack_strategy("fixed", 2, 0.5)).deviation == 0.5);
  CHECK_THROWS_AS(parse_attack_strategy("greedy", 2, 1), InputError);
  CHECK_THROWS_AS(parse_attack_strategy("fixed", 2, -1), InputError);
  CHECK(parse_publisher_strategy("random") == PublisherStrategy::kRandom);
  CHECK_THROWS_AS(parse_publisher_strategy("cheap"), InputError);
}

TEST_CASE("publisher fees") {
  Rng rng(3);
  CHECK(publisher_action(0.5, 10.0, PublisherStrategy::kRecommended, rng) == doctest::Approx(3.4375));
  std::vector<double> fees;
  for (int i = 0; i < 5000; ++i) fees.push_back(publisher_action(0.5, 10.0, PublisherStrategy::kRandom, rng));
  for (double f : fees) {
    CHECK(f >= 0.0);
    CHECK(f <= 10.0);
  }
  CHECK(stats::mean(fees) == doctest::Approx(5.0).epsilon(0.03));
}

TEST_CASE("price sources are unbiased with the configured noise") {
  Rng rng(4);
  std::vector<PriceSource> sources{{0, 100.0, 0.1}, {1, 100.0, 0.1}, {2, 100.0, 0.1}};
  std::vector<double> xs;
  for (int i = 0; i < 20000; ++i) xs.push_back(fetch_price(sources, rng));
  CHECK(stats::mean(xs) == doctest::Approx(100.0).epsilon(1e-4));
  CHECK(std::sqrt(stats::sample_variance(xs)) == doctest::Approx(0.1).epsilon(0.03));
  PriceSource exact{0, 42.0, 0.0};
  CHECK(sample_price(exact, rng) == 42.0);
  CHECK_THROWS_AS(fetch_price(std::span<const PriceSource>{}, rng), InputError);
}

TEST_CASE("seed derivation separates streams") {
  CHECK(derive_seed(1, "a") == derive_seed(1, "a"));
  CHECK(derive_seed(1, "a") != derive_seed(2, "a"));
  CHECK(derive_seed(1, "a") != derive_seed(1, "b"));
  CHECK(derive_seed(1, "a", 1, 2) != derive_seed(1, "a", 2, 1));
  Rng a = make_rng(9, "x"), b = make_rng(9, "x");
  CHECK(uniform01(a) == uniform01(b));
}
