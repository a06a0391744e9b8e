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
#include <random>
#include <string_view>

namespace oracle {

// All randomness flows through mt19937_64 streams whose seeds are derived by
// hashing (master seed, purpose tag, index...). Distributions come from
// Boost.Random so sequences are identical across standard libraries.
using Rng = std::mt19937_64;

std::uint64_t derive_seed(std::uint64_t master, std::string_view tag,
                          std::uint64_t a = 0, std::uint64_t b = 0);

inline Rng make_rng(std::uint64_t master, std::string_view tag,
                    std::uint64_t a = 0, std::uint64_t b = 0) {
  return Rng(derive_seed(master, tag, a, b));
}

double uniform01(Rng& rng);                        // [0, 1)
double uniform(Rng& rng, double lo, double hi);   // [lo, hi)
double gaussian(Rng& rng, double mean, double sigma);
std::size_t uniform_index(Rng& rng, std::size_t n);  // [0, n)

}  // namespace oracle
