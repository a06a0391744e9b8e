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


#include <doctest.h>

#include <cmath>
#include <string>
#include <vector>

#include "oracle/crypto/bytes.hpp"
#include "oracle/crypto/commitment.hpp"
#include "oracle/crypto/ecvrf.hpp"
#include "oracle/crypto/sim_vrf.hpp"
#include "oracle/crypto/vrf.hpp"
#include "oracle/errors.hpp"
#include "oracle/stats.hpp"

using namespace oracle;
using namespace oracle::crypto;

namespace {

Bytes text(const std::string& s) { return Bytes(s.begin(), s.end()); }

}  // namespace

TEST_CASE("sha256 known answers") {
  CHECK(to_hex(as_view(sha256(as_view(std::string_view(""))))) ==
        "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  CHECK(to_hex(as_view(Sha256().update(std::string_view("ab")).update(std::string_view("c")).finish())) ==
        "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST_CASE("hex round trip and rejection of malformed hex") {
  Bytes b{0x00, 0x01, 0xab, 0xff};
  CHECK(to_hex(b) == "0001abff");
  CHECK(from_hex("0001ABff") == b);
  CHECK_THROWS_AS(from_hex("abc"), InputError);
  CHECK_THROWS_AS(from_hex("zz"), InputError);
}

TEST_CASE("unit interval mapping") {
  CHECK(unit_interval_value(Digest{}) == 0.0);
  Digest ones;
  ones.fill(0xff);
  double v = unit_interval_value(ones);
  CHECK(v < 1.0);
  CHECK(v == doctest::Approx(1.0).epsilon(1e-15));
  Digest half{};
  half[0] = 0x80;
  CHECK(unit_interval_value(half) == 0.5);
}

TEST_CASE("double encoding is big-endian binary64") {
  auto e = encode_double(1.0);
  CHECK(to_hex(e) == "3ff0000000000000");
  for (double x : {0.0, -0.0, 100.25, -3.5e-300, 1e300}) {
    auto bytes = encode_double(x);
    CHECK(std::signbit(decode_double(bytes)) == std::signbit(x));
    CHECK(decode_double(bytes) == x);
  }
}

TEST_CASE("ECVRF-P256-SHA256-TAI known answer") {
  EcVrf vrf;
  auto key = vrf.key_from_scalar(from_hex("c9afa9d845ba75166b5c215767b1d6934e50c3db36e89b127b8a622b120f6721"));
  CHECK(to_hex(key.public_key) == "0360fed4ba255a9d31c961eb74c6356d68c049b8923b61fa6ce669622e60f29fb6");
  Bytes alpha = text("sample");
  Bytes pi = vrf.prove(key.secret_key, alpha);
  CHECK(to_hex(pi) ==
        "035b5c726e8c0e2c488a107c600578ee75cb702343c153cb1eb8dec77f4b5071b4"
        "a53f0a46f018bc2c56e58d383f2305e0"
        "975972c26feea0eb122fe7893c15af376b33edf7de17c6ea056d4d82de6bc02f");
  Digest beta{};
  REQUIRE(vrf.verify_proof(key.public_key, alpha, pi, &beta));
  CHECK(to_hex(as_view(beta)) == "a3ad7b0ef73d8fc6655053ea22f9bede8c743f08bbed3d38821f0e16474b505e");
  CHECK(to_hex(as_view(vrf.proof_to_hash(pi))) == to_hex(as_view(beta)));
}

TEST_CASE("RFC 6979 nonce for P-256 / SHA-256") {
  EcVrf vrf;
  Bytes sk = from_hex("c9afa9d845ba75166b5c215767b1d6934e50c3db36e89b127b8a622b120f6721");
  CHECK(to_hex(vrf.rfc6979_nonce(sk, text("sample"))) ==
        "a6e3c57dd01abe90086538398355dd4c3b17aa873382b0f24d6129493d8aad60");
}

TEST_CASE("scalar range is enforced") {
  EcVrf vrf;
  CHECK_THROWS_AS(vrf.key_from_scalar(Bytes(32, 0)), InputError);
  CHECK_THROWS_AS(vrf.key_from_scalar(Bytes(32, 0xff)), InputError);
  CHECK_THROWS_AS(vrf.key_from_scalar(Bytes(31, 1)), InputError);
}

TEST_CASE_TEMPLATE("VRF evaluate/verify contract", V, EcVrf, SimVrf) {
  V vrf;
  auto key = vrf.keygen(42);
  auto other = vrf.keygen(43);
  Bytes seed = text("round randomness");

  SUBCASE("deterministic keys and outputs") {
    CHECK(vrf.keygen(42).public_key == key.public_key);
    CHECK(vrf.keygen(43).public_key != key.public_key);
    auto a = vrf.evaluate(seed, key);
    auto b = vrf.evaluate(seed, key);
    CHECK(a == b);
    CHECK(vrf.evaluate_value(seed, key) == a.value);
    CHECK(a.value >= 0.0);
    CHECK(a.value < 1.0);
  }
  SUBCASE("verification binds key, seed and value") {
    auto out = vrf.evaluate(seed, key);
    CHECK(vrf.verify(out.value, out.proof, seed, key.public_key));
    CHECK_FALSE(vrf.verify(out.value, out.proof, seed, other.public_key));
    CHECK_FALSE(vrf.verify(out.value, out.proof, text("other randomness"), key.public_key));
    CHECK_FALSE(vrf.verify(std::nextafter(out.value, 1.0), out.proof, seed, key.public_key));
    CHECK_FALSE(vrf.verify(out.value, Bytes{}, seed, key.public_key));
    CHECK_FALSE(vrf.verify(out.value, out.proof, seed, Bytes{0x02}));
  }
  SUBCASE("empty seed is rejected") {
    CHECK_THROWS_AS(vrf.evaluate(Bytes{}, key), InputError);
  }
  SUBCASE("every single-bit flip of a proof is rejected") {
    auto out = vrf.evaluate(seed, key);
    int rejected = 0;
    const int flips = static_cast<int>(out.proof.size()) * 8;
    for (int bit = 0; bit < flips; ++bit) {
      Bytes p = out.proof;
      p[static_cast<std::size_t>(bit / 8)] ^= static_cast<std::uint8_t>(1u << (bit % 8));
      rejected += vrf.verify(out.value, p, seed, key.public_key) ? 0 : 1;
    }
    CHECK(rejected == flips);
  }
}

TEST_CASE("cross-scheme keys are refused") {
  auto ec = make_vrf(VrfScheme::kEcP256);
  auto sim = make_vrf(VrfScheme::kSimulation);
  auto key = sim->keygen(1);
  CHECK_THROWS_AS(ec->evaluate(text("x"), key), InputError);
  CHECK(make_vrf(VrfScheme::kEcP256) == ec);
  CHECK(parse_vrf_scheme("ecvrf") == VrfScheme::kEcP256);
  CHECK(parse_vrf_scheme("simulation") == VrfScheme::kSimulation);
  CHECK_THROWS_AS(parse_vrf_scheme("rsa"), InputError);
}

TEST_CASE("ECVRF values pooled over keys and seeds are uniform on [0, 1)") {
  EcVrf vrf;
  std::vector<double> values;
  Bytes seed(8);
  for (std::uint64_t k = 0; k < 100; ++k) {
    auto key = vrf.keygen(1000 + k);
    for (std::uint64_t i = 0; i < 100; ++i) {
      for (int b = 0; b < 8; ++b) seed[static_cast<std::size_t>(b)] = static_cast<std::uint8_t>(i >> (8 * b));
      values.push_back(vrf.evaluate_value(seed, key));
    }
  }
  auto ks = stats::ks_uniform(values);
  CHECK(ks.p_value > 0.01);
}

TEST_CASE("commitment binds price and key") {
  auto sim = make_vrf(VrfScheme::kSimulation);
  Bytes pk = sim->keygen(1).public_key;
  Bytes pk2 = sim->keygen(2).public_key;
  Digest c = commit(100.5, pk);
  CHECK(open_commitment(c, 100.5, pk));
  CHECK_FALSE(open_commitment(c, 100.50000000000001, pk));
  CHECK_FALSE(open_commitment(c, 100.5, pk2));
  CHECK(commit(100.5, pk) == c);
  CHECK_THROWS_AS(commit(std::nan(""), pk), InputError);
  CHECK_THROWS_AS(commit(INFINITY, pk), InputError);

  // Layout: SHA-256(8-byte big-endian price || pk).
  Bytes preimage;
  auto enc = encode_double(100.5);
  preimage.insert(preimage.end(), enc.begin(), enc.end());
  preimage.insert(preimage.end(), pk.begin(), pk.end());
  CHECK(sha256(preimage) == c);
}

TEST_CASE("stats helpers") {
  CHECK(stats::kolmogorov_q(0.0) == doctest::Approx(1.0));
  CHECK(stats::kolmogorov_q(1.36) == doctest::Approx(0.0494).epsilon(0.01));
  std::vector<double> xs{1, 2, 3, 4};
  CHECK(stats::mean(xs) == 2.5);
  CHECK(stats::sample_variance(xs) == doctest::Approx(5.0 / 3.0));
  auto ma = stats::moving_average(xs, 2);
  CHECK(ma == std::vector<double>{1.0, 1.5, 2.5, 3.5});
  CHECK(stats::student_t_quantile(0.95, 9) == doctest::Approx(1.8331).epsilon(1e-4));
  std::vector<double> a{1, 2, 3}, b{0, 0, 0};
  auto bound = stats::paired_difference_bound(a, b, 0.95);
  CHECK(bound.mean_difference == 2.0);
  CHECK(bound.lower < 2.0);
  CHECK(bound.upper > 2.0);
}
