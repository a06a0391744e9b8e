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

#include "oracle/incentive.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace oracle::incentive {

namespace {

void require_goods(double goods) {
  if (!(goods > 0.0) || !std::isfinite(goods)) throw InputError("K must be positive and finite");
}

void require_unit(double u, const char* what) {
  if (!(u >= 0.0 && u <= 1.0)) throw InputError(std::string(what) + " must lie in [0, 1]");
}

}  // namespace

double improper_profit(double goods, double price, double modified_price) {
  return goods * std::abs(price - modified_price);
}

double screening_prob(double deviation) {
  if (!(deviation >= 0.0)) throw InputError("screening_prob: deviation must be non-negative");
  return std::exp(-deviation);
}

double follower_payoff(const GameParams& g) {
  if (g.submissions < 1) throw InputError("follower_payoff: n must be at least 1");
  const double n = g.submissions;
  return screening_prob(g.deviation) * (g.fee / n + g.goods * g.deviation / n);
}

double leader_payoff(const GameParams& g) {
  const double h = screening_prob(g.deviation);
  return g.alpha_eff * std::exp(-g.deviation) + (1.0 - g.alpha_eff) * h * (-g.fee);
}

double follower_best_response(double goods, double fee, std::vector<Warning>* warnings) {
  require_goods(goods);
  if (!(fee >= 0.0)) throw InputError("follower_best_response: fee must be non-negative");
  if (fee > goods) {
    if (warnings != nullptr) {
      warnings->push_back({"fee_above_goods",
                           "P > K lies outside the follower derivation; Delta* clamped to 0"});
    }
    return 0.0;
  }
  return (goods - fee) / goods;
}

double scale_alpha(double alpha, double goods) {
  require_goods(goods);
  return alpha * (1.0 + goods) * (1.0 + 2.0 * goods) / goods - (1.0 + 2.0 * goods);
}

double alpha_effective(double u, double goods) {
  require_goods(goods);
  require_unit(u, "u");
  return goods * (u + 1.0 + 2.0 * goods) / ((1.0 + goods) * (1.0 + 2.0 * goods));
}

double optimal_fee(double alpha_eff, double goods) {
  require_goods(goods);
  if (!(alpha_eff < 1.0)) throw InputError("optimal_fee: alpha must be below 1");
  return (goods * (alpha_eff - 1.0) + alpha_eff) / (1.0 - alpha_eff);
}

FeeMapping parse_fee_mapping(std::string_view name) {
  if (name == "inverse") return FeeMapping::kInverse;
  if (name == "literal") return FeeMapping::kLiteral;
  throw InputError("unknown fee mapping: " + std::string(name));
}

std::string_view to_string(FeeMapping mapping) {
  return mapping == FeeMapping::kInverse ? "inverse" : "literal";
}

double recommend_fee(double u, double goods, FeeMapping mapping,
                     std::vector<Warning>* warnings) {
  require_goods(goods);
  if (mapping == FeeMapping::kInverse) {
    require_unit(u, "u");
    // optimal_fee(alpha_effective(u, K), K) simplified to K u (1 + K) / (1 + 2K - K u),
    // which is exact at both endpoints.
    double fee = goods * u * (1.0 + goods) / (1.0 + 2.0 * goods - goods * u);
    return std::clamp(fee, 0.0, goods);
  }

  double phi = scale_alpha(u, goods);
  if (!(phi < 1.0)) {
    throw InputError("recommend_fee(literal): Phi(alpha) >= 1 makes the fee unbounded");
  }
  double fee = optimal_fee(phi, goods);
  if (warnings != nullptr && (fee < 0.0 || fee > goods)) {
    warnings->push_back({"fee_outside_feasible",
                         "literal Phi mapping gives P = " + std::to_string(fee) +
                             " outside [0, K]"});
  }
  return fee;
}

Equilibrium equilibrium(double u, double goods, int submissions) {
  Equilibrium eq;
  eq.alpha_eff = alpha_effective(u, goods);
  eq.fee = recommend_fee(u, goods);
  eq.deviation = follower_best_response(goods, eq.fee);
  GameParams g{goods, submissions, eq.fee, eq.deviation, u, eq.alpha_eff};
  eq.payoffs = {leader_payoff(g), follower_payoff(g)};
  return eq;
}

}  // namespace oracle::incentive
