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

#include "oracle/rng.hpp"

#include <boost/random/normal_distribution.hpp>
#include <boost/random/uniform_int_distribution.hpp>
#include <boost/random/uniform_real_distribution.hpp>

#include "oracle/crypto/bytes.hpp"

namespace oracle {

std::uint64_t derive_seed(std::uint64_t master, std::string_view tag,
                          std::uint64_t a, std::uint64_t b) {
  crypto::Digest d =
      crypto::Sha256().update_u64(master).update(tag).update_u64(a).update_u64(b).finish();
  std::uint64_t out = 0;
  for (int i = 0; i < 8; ++i) out = out << 8 | d[i];
  return out;
}

double uniform01(Rng& rng) { return boost::random::uniform_real_distribution<double>(0.0, 1.0)(rng); }

double uniform(Rng& rng, double lo, double hi) {
  if (hi <= lo) return lo;
  return boost::random::uniform_real_distribution<double>(lo, hi)(rng);
}

double gaussian(Rng& rng, double mean, double sigma) {
  if (sigma <= 0.0) return mean;
  return boost::random::normal_distribution<double>(mean, sigma)(rng);
}

std::size_t uniform_index(Rng& rng, std::size_t n) {
  return boost::random::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
}

}  // namespace oracle
