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

#include "oracle/crypto/ecvrf.hpp"

#include <openssl/bn.h>
#include <openssl/ec.h>
#include <openssl/evp.h>
#include <openssl/hmac.h>
#include <openssl/obj_mac.h>

#include <algorithm>
#include <cstring>
#include <memory>
#include <stdexcept>

#include "oracle/errors.hpp"

namespace oracle::crypto {

namespace {

constexpr std::uint8_t kSuite = 0x01;  // ECVRF-P256-SHA256-TAI

struct BnFree {
  void operator()(BIGNUM* p) const { BN_clear_free(p); }
};
struct CtxFree {
  void operator()(BN_CTX* p) const { BN_CTX_free(p); }
};
struct PointFree {
  void operator()(EC_POINT* p) const { EC_POINT_clear_free(p); }
};
using BnPtr = std::unique_ptr<BIGNUM, BnFree>;
using CtxPtr = std::unique_ptr<BN_CTX, CtxFree>;
using PointPtr = std::unique_ptr<EC_POINT, PointFree>;

BnPtr bn_from(ByteView bytes) {
  return BnPtr(BN_bin2bn(bytes.data(), static_cast<int>(bytes.size()), nullptr));
}

Bytes bn_to_fixed(const BIGNUM* n, std::size_t width) {
  Bytes out(width, 0);
  if (BN_bn2binpad(n, out.data(), static_cast<int>(width)) < 0) {
    throw std::runtime_error("ecvrf: integer wider than field");
  }
  return out;
}

Bytes hmac_sha256(ByteView key, ByteView data) {
  Bytes out(32);
  unsigned int len = 0;
  HMAC(EVP_sha256(), key.data(), static_cast<int>(key.size()), data.data(),
       data.size(), out.data(), &len);
  return out;
}

Bytes concat(std::initializer_list<ByteView> parts) {
  Bytes out;
  for (auto p : parts) out.insert(out.end(), p.begin(), p.end());
  return out;
}

}  // namespace

struct EcVrf::Impl {
  EC_GROUP* group = nullptr;
  BnPtr order;

  Impl() : group(EC_GROUP_new_by_curve_name(NID_X9_62_prime256v1)), order(BN_new()) {
    if (group == nullptr || !order) throw std::runtime_error("ecvrf: P-256 unavailable");
    EC_GROUP_get_order(group, order.get(), nullptr);
  }
  ~Impl() { EC_GROUP_free(group); }

  PointPtr new_point() const { return PointPtr(EC_POINT_new(group)); }

  Bytes point_to_string(const EC_POINT* p, BN_CTX* ctx) const {
    Bytes out(kPointSize);
    std::size_t n = EC_POINT_point2oct(group, p, POINT_CONVERSION_COMPRESSED,
                                       out.data(), out.size(), ctx);
    out.resize(n);
    return out;
  }

  // Rejects anything that is not a 33-byte compressed encoding of a curve
  // point other than the identity.
  PointPtr string_to_point(ByteView s, BN_CTX* ctx) const {
    if (s.size() != kPointSize || (s[0] != 0x02 && s[0] != 0x03)) return nullptr;
    auto p = new_point();
    if (EC_POINT_oct2point(group, p.get(), s.data(), s.size(), ctx) != 1) return nullptr;
    if (EC_POINT_is_at_infinity(group, p.get())) return nullptr;
    return p;
  }

  // Scalar from a 32-byte big-endian string; null unless 1 <= x < q.
  BnPtr scalar(ByteView s) const {
    if (s.size() != kScalarSize) return nullptr;
    auto x = bn_from(s);
    if (!x || BN_is_zero(x.get()) || BN_cmp(x.get(), order.get()) >= 0) return nullptr;
    return x;
  }

  PointPtr mul_generator(const BIGNUM* k, BN_CTX* ctx) const {
    auto r = new_point();
    EC_POINT_mul(group, r.get(), k, nullptr, nullptr, ctx);
    return r;
  }

  PointPtr mul(const EC_POINT* p, const BIGNUM* k, BN_CTX* ctx) const {
    auto r = new_point();
    EC_POINT_mul(group, r.get(), nullptr, p, k, ctx);
    return r;
  }

  PointPtr encode_to_curve(ByteView salt, ByteView alpha, BN_CTX* ctx) const {
    for (unsigned ctr = 0; ctr < 256; ++ctr) {
      Digest h = Sha256()
                     .update(kSuite)
                     .update(std::uint8_t{0x01})
                     .update(salt)
                     .update(alpha)
                     .update(static_cast<std::uint8_t>(ctr))
                     .update(std::uint8_t{0x00})
                     .finish();
      std::uint8_t candidate[kPointSize];
      candidate[0] = 0x02;
      std::memcpy(candidate + 1, h.data(), h.size());
      if (auto p = string_to_point(ByteView(candidate, kPointSize), ctx)) return p;
    }
    return nullptr;  // probability ~2^-256
  }

  Bytes challenge(std::initializer_list<const EC_POINT*> points, BN_CTX* ctx) const {
    Sha256 h;
    h.update(kSuite).update(std::uint8_t{0x02});
    for (const EC_POINT* p : points) h.update(ByteView(point_to_string(p, ctx)));
    Digest d = h.update(std::uint8_t{0x00}).finish();
    return Bytes(d.begin(), d.begin() + kChallengeSize);
  }

  Digest gamma_to_hash(const EC_POINT* gamma, BN_CTX* ctx) const {
    return Sha256()
        .update(kSuite)
        .update(std::uint8_t{0x03})
        .update(ByteView(point_to_string(gamma, ctx)))
        .update(std::uint8_t{0x00})
        .finish();
  }

  Bytes nonce(ByteView sk, ByteView m, BN_CTX* ctx) const {
    Digest h1 = sha256(m);
    auto h1_int = bn_from(as_view(h1));
    BN_nnmod(h1_int.get(), h1_int.get(), order.get(), ctx);
    Bytes h1_octets = bn_to_fixed(h1_int.get(), kScalarSize);

    Bytes v(32, 0x01);
    Bytes k(32, 0x00);
    const std::uint8_t zero = 0x00, one = 0x01;
    k = hmac_sha256(k, concat({v, ByteView(&zero, 1), sk, h1_octets}));
    v = hmac_sha256(k, v);
    k = hmac_sha256(k, concat({v, ByteView(&one, 1), sk, h1_octets}));
    v = hmac_sha256(k, v);
    for (;;) {
      v = hmac_sha256(k, v);  // qlen == hlen == 256
      auto candidate = bn_from(v);
      if (!BN_is_zero(candidate.get()) && BN_cmp(candidate.get(), order.get()) < 0) {
        return v;
      }
      k = hmac_sha256(k, concat({v, ByteView(&zero, 1)}));
      v = hmac_sha256(k, v);
    }
  }
};

EcVrf::EcVrf() : impl_(std::make_unique<Impl>()) {}
EcVrf::~EcVrf() = default;

KeyPair EcVrf::key_from_scalar(ByteView scalar) const {
  CtxPtr ctx(BN_CTX_new());
  auto x = impl_->scalar(scalar);
  if (!x) throw InputError("ecvrf: secret scalar out of range");
  auto y = impl_->mul_generator(x.get(), ctx.get());
  return KeyPair{Bytes(scalar.begin(), scalar.end()),
                 impl_->point_to_string(y.get(), ctx.get()), VrfScheme::kEcP256};
}

KeyPair EcVrf::keygen(std::uint64_t rng_seed) const {
  for (std::uint64_t ctr = 0;; ++ctr) {
    Digest d = Sha256().update("oracle-sim/ecvrf-keygen").update_u64(rng_seed).update_u64(ctr).finish();
    if (impl_->scalar(as_view(d))) return key_from_scalar(as_view(d));
  }
}

Bytes EcVrf::prove(ByteView secret_key, ByteView alpha) const {
  CtxPtr ctx(BN_CTX_new());
  BN_CTX* c = ctx.get();
  auto x = impl_->scalar(secret_key);
  if (!x) throw InputError("ecvrf: secret scalar out of range");

  auto y = impl_->mul_generator(x.get(), c);
  Bytes pk = impl_->point_to_string(y.get(), c);
  auto h = impl_->encode_to_curve(pk, alpha, c);
  if (!h) throw std::runtime_error("ecvrf: encode_to_curve exhausted counter");
  Bytes h_string = impl_->point_to_string(h.get(), c);
  auto gamma = impl_->mul(h.get(), x.get(), c);

  auto k = bn_from(impl_->nonce(secret_key, h_string, c));
  auto u = impl_->mul_generator(k.get(), c);
  auto v = impl_->mul(h.get(), k.get(), c);
  Bytes c_bytes = impl_->challenge({y.get(), h.get(), gamma.get(), u.get(), v.get()}, c);

  auto c_int = bn_from(c_bytes);
  BnPtr s(BN_new());
  BN_mod_mul(s.get(), c_int.get(), x.get(), impl_->order.get(), c);
  BN_mod_add(s.get(), s.get(), k.get(), impl_->order.get(), c);

  Bytes pi = impl_->point_to_string(gamma.get(), c);
  pi.insert(pi.end(), c_bytes.begin(), c_bytes.end());
  Bytes s_bytes = bn_to_fixed(s.get(), kScalarSize);
  pi.insert(pi.end(), s_bytes.begin(), s_bytes.end());
  return pi;
}

Digest EcVrf::proof_to_hash(ByteView proof) const {
  if (proof.size() != kProofSize) throw InputError("ecvrf: bad proof length");
  CtxPtr ctx(BN_CTX_new());
  auto gamma = impl_->string_to_point(proof.first(kPointSize), ctx.get());
  if (!gamma) throw InputError("ecvrf: proof carries an invalid point");
  return impl_->gamma_to_hash(gamma.get(), ctx.get());
}

bool EcVrf::verify_proof(ByteView public_key, ByteView alpha, ByteView proof,
                         Digest* beta) const {
  if (proof.size() != kProofSize) return false;
  CtxPtr ctx(BN_CTX_new());
  BN_CTX* c = ctx.get();

  auto y = impl_->string_to_point(public_key, c);
  if (!y) return false;
  auto gamma = impl_->string_to_point(proof.first(kPointSize), c);
  if (!gamma) return false;
  ByteView c_bytes = proof.subspan(kPointSize, kChallengeSize);
  ByteView s_bytes = proof.subspan(kPointSize + kChallengeSize, kScalarSize);
  auto c_int = bn_from(c_bytes);
  auto s = bn_from(s_bytes);
  if (BN_cmp(s.get(), impl_->order.get()) >= 0) return false;

  auto h = impl_->encode_to_curve(public_key, alpha, c);
  if (!h) return false;

  // U = s*B - c*Y ; V = s*H - c*Gamma
  BnPtr neg_c(BN_new());
  BN_sub(neg_c.get(), impl_->order.get(), c_int.get());
  auto u = impl_->new_point();
  EC_POINT_mul(impl_->group, u.get(), s.get(), y.get(), neg_c.get(), c);
  auto sh = impl_->mul(h.get(), s.get(), c);
  auto cg = impl_->mul(gamma.get(), neg_c.get(), c);
  auto v = impl_->new_point();
  EC_POINT_add(impl_->group, v.get(), sh.get(), cg.get(), c);

  Bytes expected = impl_->challenge({y.get(), h.get(), gamma.get(), u.get(), v.get()}, c);
  if (!std::equal(expected.begin(), expected.end(), c_bytes.begin())) return false;
  if (beta != nullptr) *beta = impl_->gamma_to_hash(gamma.get(), c);
  return true;
}

Bytes EcVrf::rfc6979_nonce(ByteView secret_key, ByteView m) const {
  CtxPtr ctx(BN_CTX_new());
  return impl_->nonce(secret_key, m, ctx.get());
}

namespace {
void require_scheme(const KeyPair& key, VrfScheme scheme) {
  if (key.scheme != scheme) throw InputError("vrf: key belongs to another scheme");
}
}  // namespace

VrfOutput EcVrf::evaluate(ByteView seed, const KeyPair& key) const {
  if (seed.empty()) throw InputError("vrf_evaluate: empty seed");
  require_scheme(key, scheme());
  Bytes pi = prove(key.secret_key, seed);
  return VrfOutput{unit_interval_value(proof_to_hash(pi)), std::move(pi)};
}

double EcVrf::evaluate_value(ByteView seed, const KeyPair& key) const {
  if (seed.empty()) throw InputError("vrf_evaluate: empty seed");
  require_scheme(key, scheme());
  CtxPtr ctx(BN_CTX_new());
  auto x = impl_->scalar(key.secret_key);
  if (!x) throw InputError("ecvrf: secret scalar out of range");
  auto h = impl_->encode_to_curve(key.public_key, seed, ctx.get());
  if (!h) throw std::runtime_error("ecvrf: encode_to_curve exhausted counter");
  auto gamma = impl_->mul(h.get(), x.get(), ctx.get());
  return unit_interval_value(impl_->gamma_to_hash(gamma.get(), ctx.get()));
}

bool EcVrf::verify(double value, ByteView proof, ByteView seed,
                   ByteView public_key) const {
  if (seed.empty()) return false;
  Digest beta{};
  if (!verify_proof(public_key, seed, proof, &beta)) return false;
  return unit_interval_value(beta) == value;
}

}  // namespace oracle::crypto
