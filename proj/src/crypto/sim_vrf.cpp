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

#include "oracle/crypto/sim_vrf.hpp"

#include <sodium.h>

#include <stdexcept>

#include "oracle/crypto/ecvrf.hpp"
#include "oracle/errors.hpp"

namespace oracle::crypto {

namespace {

void ensure_sodium() {
  static const bool ready = sodium_init() >= 0;
  if (!ready) throw std::runtime_error("libsodium initialisation failed");
}

Bytes signed_message(ByteView seed, double value) {
  Bytes msg(seed.begin(), seed.end());
  auto enc = encode_double(value);
  msg.insert(msg.end(), enc.begin(), enc.end());
  return msg;
}

}  // namespace

KeyPair SimVrf::keygen(std::uint64_t rng_seed) const {
  ensure_sodium();
  Digest seed = Sha256().update("oracle-sim/sim-vrf-keygen").update_u64(rng_seed).finish();
  KeyPair key{Bytes(crypto_sign_SECRETKEYBYTES), Bytes(crypto_sign_PUBLICKEYBYTES),
              VrfScheme::kSimulation};
  crypto_sign_seed_keypair(key.public_key.data(), key.secret_key.data(), seed.data());
  return key;
}

double SimVrf::evaluate_value(ByteView seed, const KeyPair& key) const {
  if (seed.empty()) throw InputError("vrf_evaluate: empty seed");
  if (key.scheme != scheme() || key.secret_key.size() != crypto_sign_SECRETKEYBYTES) {
    throw InputError("vrf: key belongs to another scheme");
  }
  return unit_interval_value(Sha256().update(ByteView(key.secret_key)).update(seed).finish());
}

VrfOutput SimVrf::evaluate(ByteView seed, const KeyPair& key) const {
  ensure_sodium();
  double value = evaluate_value(seed, key);
  Bytes msg = signed_message(seed, value);
  Bytes sig(crypto_sign_BYTES);
  crypto_sign_detached(sig.data(), nullptr, msg.data(), msg.size(), key.secret_key.data());
  return VrfOutput{value, std::move(sig)};
}

bool SimVrf::verify(double value, ByteView proof, ByteView seed,
                    ByteView public_key) const {
  ensure_sodium();
  if (seed.empty() || proof.size() != crypto_sign_BYTES ||
      public_key.size() != crypto_sign_PUBLICKEYBYTES) {
    return false;
  }
  if (!(value >= 0.0 && value < 1.0)) return false;
  Bytes msg = signed_message(seed, value);
  return crypto_sign_verify_detached(proof.data(), msg.data(), msg.size(),
                                     public_key.data()) == 0;
}

std::string_view to_string(VrfScheme scheme) {
  switch (scheme) {
    case VrfScheme::kEcP256:
      return "ecvrf-p256-sha256-tai";
    case VrfScheme::kSimulation:
      return "simulation";
  }
  return "unknown";
}

VrfScheme parse_vrf_scheme(std::string_view name) {
  if (name == "ecvrf" || name == "ecvrf-p256-sha256-tai") return VrfScheme::kEcP256;
  if (name == "simulation") return VrfScheme::kSimulation;
  throw InputError("unknown vrf scheme: " + std::string(name));
}

std::shared_ptr<const Vrf> make_vrf(VrfScheme scheme) {
  static const auto ec = std::make_shared<const EcVrf>();
  static const auto sim = std::make_shared<const SimVrf>();
  return scheme == VrfScheme::kEcP256 ? std::shared_ptr<const Vrf>(ec)
                                      : std::shared_ptr<const Vrf>(sim);
}

KeyPair keygen(std::uint64_t rng_seed) { return make_vrf(VrfScheme::kEcP256)->keygen(rng_seed); }

VrfOutput vrf_evaluate(ByteView seed, const KeyPair& key) {
  return make_vrf(key.scheme)->evaluate(seed, key);
}

bool vrf_verify(double value, ByteView proof, ByteView seed, ByteView public_key) {
  return make_vrf(VrfScheme::kEcP256)->verify(value, proof, seed, public_key);
}

}  // namespace oracle::crypto
