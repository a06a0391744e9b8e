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

// ECVRF over NIST P-256 with SHA-256 and try-and-increment hash-to-curve
// (suite string 0x01). Proofs are 81 bytes: Gamma (33, compressed) || c (16)
// || s (32). Public keys are 33-byte compressed points; secret keys are
// 32-byte big-endian scalars.
class EcVrf final : public Vrf {
 public:
  static constexpr std::size_t kProofSize = 81;
  static constexpr std::size_t kPointSize = 33;
  static constexpr std::size_t kScalarSize = 32;
  static constexpr std::size_t kChallengeSize = 16;

  EcVrf();
  ~EcVrf() override;
  EcVrf(const EcVrf&) = delete;
  EcVrf& operator=(const EcVrf&) = delete;

  VrfScheme scheme() const override { return VrfScheme::kEcP256; }
  KeyPair keygen(std::uint64_t rng_seed) const override;
  VrfOutput evaluate(ByteView seed, const KeyPair& key) const override;
  double evaluate_value(ByteView seed, const KeyPair& key) const override;
  bool verify(double value, ByteView proof, ByteView seed,
              ByteView public_key) const override;

  // Key pair for an explicit 32-byte scalar (must be in [1, q-1]).
  KeyPair key_from_scalar(ByteView scalar) const;

  // Full protocol surface: proof bytes and the 32-byte VRF hash output.
  Bytes prove(ByteView secret_key, ByteView alpha) const;
  // Returns false when the proof does not verify; `beta` is set otherwise.
  bool verify_proof(ByteView public_key, ByteView alpha, ByteView proof,
                    Digest* beta) const;
  Digest proof_to_hash(ByteView proof) const;

  // RFC 6979 deterministic nonce for this curve with SHA-256, over message
  // bytes `m` (hashed internally). Exposed for known-answer tests.
  Bytes rfc6979_nonce(ByteView secret_key, ByteView m) const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace oracle::crypto
