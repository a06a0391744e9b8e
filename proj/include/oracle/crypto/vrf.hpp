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
#include <memory>
#include <string_view>

#include "oracle/crypto/bytes.hpp"

namespace oracle::crypto {

enum class VrfScheme {
  kEcP256,      // ECVRF-P256-SHA256-TAI
  kSimulation,  // keyed SHA-256 digest + Ed25519 signature
};

std::string_view to_string(VrfScheme scheme);
VrfScheme parse_vrf_scheme(std::string_view name);

struct KeyPair {
  Bytes secret_key;
  Bytes public_key;
  VrfScheme scheme = VrfScheme::kEcP256;

  bool operator==(const KeyPair&) const = default;
};

struct VrfOutput {
  double value = 0.0;  // in [0, 1)
  Bytes proof;

  bool operator==(const VrfOutput&) const = default;
};

// A verifiable random function. Implementations are stateless after
// construction and safe to share between threads.
class Vrf {
 public:
  virtual ~Vrf() = default;

  virtual VrfScheme scheme() const = 0;

  // Deterministic in `rng_seed`.
  virtual KeyPair keygen(std::uint64_t rng_seed) const = 0;

  // Throws InputError on an empty seed or a key of the wrong scheme.
  virtual VrfOutput evaluate(ByteView seed, const KeyPair& key) const = 0;

  // Same value as evaluate(seed, key).value without building the proof.
  virtual double evaluate_value(ByteView seed, const KeyPair& key) const = 0;

  // Never throws; malformed inputs verify as false.
  virtual bool verify(double value, ByteView proof, ByteView seed,
                      ByteView public_key) const = 0;
};

std::shared_ptr<const Vrf> make_vrf(VrfScheme scheme);

// Convenience wrappers over the default (elliptic-curve) construction.
KeyPair keygen(std::uint64_t rng_seed);
VrfOutput vrf_evaluate(ByteView seed, const KeyPair& key);
bool vrf_verify(double value, ByteView proof, ByteView seed,
                ByteView public_key);

}  // namespace oracle::crypto
