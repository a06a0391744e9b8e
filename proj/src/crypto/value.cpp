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

#include <bit>
#include <cmath>

#include "oracle/crypto/bytes.hpp"

namespace oracle::crypto {

double unit_interval_value(const Digest& digest) {
  std::uint64_t top = 0;
  for (int i = 0; i < 8; ++i) top = top << 8 | digest[i];
  // floor(x / 2^256 * 2^53) / 2^53, x the 256-bit big-endian integer.
  return std::ldexp(static_cast<double>(top >> 11), -53);
}

std::array<std::uint8_t, 8> encode_double(double value) {
  auto bits = std::bit_cast<std::uint64_t>(value);
  std::array<std::uint8_t, 8> out{};
  for (int i = 7; i >= 0; --i) {
    out[i] = static_cast<std::uint8_t>(bits & 0xff);
    bits >>= 8;
  }
  return out;
}

double decode_double(std::span<const std::uint8_t, 8> bytes) {
  std::uint64_t bits = 0;
  for (auto b : bytes) bits = bits << 8 | b;
  return std::bit_cast<double>(bits);
}

}  // namespace oracle::crypto
