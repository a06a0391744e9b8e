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

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace oracle::crypto {

using Bytes = std::vector<std::uint8_t>;
using ByteView = std::span<const std::uint8_t>;

inline constexpr std::size_t kDigestSize = 32;
using Digest = std::array<std::uint8_t, kDigestSize>;

inline constexpr std::string_view kHashName = "sha256";

Digest sha256(ByteView data);

// Incremental SHA-256. Owns an OpenSSL digest context.
class Sha256 {
 public:
  Sha256();
  ~Sha256();
  Sha256(const Sha256&) = delete;
  Sha256& operator=(const Sha256&) = delete;
  Sha256(Sha256&& other) noexcept;
  Sha256& operator=(Sha256&& other) noexcept;

  Sha256& update(ByteView data);
  Sha256& update(std::uint8_t byte);
  Sha256& update(std::string_view text);
  Sha256& update_u64(std::uint64_t value);  // big-endian, 8 bytes
  Digest finish();

 private:
  void* ctx_ = nullptr;
};

std::string to_hex(ByteView bytes);
Bytes from_hex(std::string_view hex);

inline ByteView as_view(const Digest& d) { return {d.data(), d.size()}; }
inline Bytes to_bytes(const Digest& d) { return {d.begin(), d.end()}; }
inline ByteView as_view(std::string_view s) {
  return {reinterpret_cast<const std::uint8_t*>(s.data()), s.size()};
}

// Maps a 256-bit digest, read as a big-endian unsigned integer, onto [0, 1)
// by division by 2^256. The quotient is truncated to 53 significant bits so
// the result is always strictly below 1.
double unit_interval_value(const Digest& digest);

// Big-endian IEEE-754 binary64 encoding used for prices and VRF values.
std::array<std::uint8_t, 8> encode_double(double value);
double decode_double(std::span<const std::uint8_t, 8> bytes);

}  // namespace oracle::crypto
