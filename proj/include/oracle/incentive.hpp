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

#include <string_view>
#include <vector>

#include "oracle/errors.hpp"

namespace oracle::incentive {

// Parameters of the publisher (leader) / malicious executor (follower) game.
struct GameParams {
  double goods = 1.0;            // K > 0
  int submissions = 1;           // n >= 1
  double fee = 0.0;              // P, 0 <= P <= K
  double deviation = 0.0;        // Delta >= 0
  double quality_weight = 0.5;   // u in [0, 1]
  double alpha_eff = 0.5;        // effective weight, K/(1+K) <= alpha_eff <= 2K/(1+2K)
};

struct PayoffPair {
  double leader = 0.0;    // U1
  double follower = 0.0;  // U2
};

// V = K |X - X'|.
double improper_profit(double goods, double price, double modified_price);

// h(Delta) = exp(-Delta): chance a submission deviating by Delta survives
// screening. Throws InputError for Delta < 0.
double screening_prob(double deviation);

// U2 = h(Delta) (P/n + K Delta / n). Throws InputError for n < 1.
double follower_payoff(const GameParams& g);

// U1 = alpha_eff e^{-Delta} + (1 - alpha_eff) h(Delta) (-P).
double leader_payoff(const GameParams& g);

// Delta* = (K - P) / K. P > K clamps to 0 and appends a warning.
double follower_best_response(double goods, double fee,
                              std::vector<Warning>* warnings = nullptr);

// Forward scaling map Phi: feasible alpha interval -> [0, 1].
double scale_alpha(double alpha, double goods);

// Inverse of scale_alpha: alpha_eff = K (u + 1 + 2K) / ((1 + K)(1 + 2K)).
double alpha_effective(double u, double goods);

// Closed-form leader optimum for a weight already inside the feasible
// interval: P* = (K (alpha - 1) + alpha) / (1 - alpha).
double optimal_fee(double alpha_eff, double goods);

enum class FeeMapping {
  kInverse,  // u -> alpha_eff = Phi^{-1}(u) -> P*
  kLiteral,  // alpha -> Phi(alpha) substituted straight into P*
};

FeeMapping parse_fee_mapping(std::string_view name);
std::string_view to_string(FeeMapping mapping);

// Recommended fee for a publisher with normalized quality weight u. With
// kLiteral, `u` is read as the raw alpha and violations of 0 <= P <= K are
// reported through `warnings` rather than thrown.
double recommend_fee(double u, double goods,
                     FeeMapping mapping = FeeMapping::kInverse,
                     std::vector<Warning>* warnings = nullptr);

struct Equilibrium {
  double fee = 0.0;        // P*
  double deviation = 0.0;  // Delta*
  double alpha_eff = 0.0;
  PayoffPair payoffs;
};

Equilibrium equilibrium(double u, double goods, int submissions);

}  // namespace oracle::incentive
