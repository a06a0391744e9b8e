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

#include "oracle/crypto/vrf.hpp"

namespace oracle::crypto {

// Lightweight VRF for large simulations: value = SHA-256(sk || seed) / 2^256,
// proof = Ed25519 signature over (seed || value encoding). The signature binds
// the value to the key owner. Unlike EcVrf, uniqueness of the value rests on
// the signer computing the digest honestly; use EcVrf where that matters.
class SimVrf final : public Vrf {
 public:
  static constexpr std::size_t kProofSize = 64;

  VrfScheme scheme() const override { return VrfScheme::kSimulation; }
  KeyPair keygen(std::uint64_t rng_seed) const override;
  VrfOutput evaluate(ByteView seed, const KeyPair& key) const override;
  double evaluate_value(ByteView seed, const KeyPair& key) const override;
  bool verify(double value, ByteView proof, ByteView seed,
              ByteView public_key) const override;
};

}  // namespace oracle::crypto
