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


// Acceptance suite. Prints one PASS/FAIL line per criterion and exits
// non-zero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "oracle/crypto/commitment.hpp"
#include "oracle/crypto/ecvrf.hpp"
#include "oracle/crypto/vrf.hpp"
#include "oracle/harness.hpp"
#include "oracle/incentive.hpp"
#include "oracle/protocol.hpp"
#include "oracle/reputation.hpp"
#include "oracle/stats.hpp"
#include "oracle/transcript.hpp"

namespace {

using namespace oracle;
using Clock = std::chrono::steady_clock;

struct Verdict {
  bool pass = false;
  std::string detail;
};

int failures = 0;
std::vector<std::string> only;  // optional criterion filter from argv

void report(const char* id, const std::function<Verdict()>& check) {
  if (!only.empty() && std::find(only.begin(), only.end(), id) == only.end()) return;
  auto start = Clock::now();
  Verdict v;
  try {
    v = check();
  } catch (const std::exception& e) {
    v = {false, std::string("exception: ") + e.what()};
  }
  double secs = std::chrono::duration<double>(Clock::now() - start).count();
  if (!v.pass) ++failures;
  std::printf("%s %s %s [%.1fs]\n", id, v.pass ? "PASS" : "FAIL", v.detail.c_str(), secs);
  std::fflush(stdout);
}

std::string fmt(const char* f, double a) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

// Follower payoff written out independently of the library.
double oracle_follower(double k, double p, double delta, int n) {
  return std::exp(-delta) * (p / n + k * delta / n);
}

// alpha_eff by bisection on the forward scaling map.
double oracle_alpha(double u, double k) {
  auto phi = [k](double a) { return a * (1 + k) * (1 + 2 * k) / k - (1 + 2 * k); };
  double lo = k / (1 + k), hi = 2 * k / (1 + 2 * k);
  for (int i = 0; i < 200; ++i) {
    double mid = 0.5 * (lo + hi);
    (phi(mid) < u ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

double oracle_leader(double k, double p, double alpha) {
  double delta = (k - p) / k;
  return alpha * std::exp(-delta) - (1 - alpha) * std::exp(-delta) * p;
}

Verdict ac1() {
  std::mt19937_64 gen(101);
  std::uniform_real_distribution<double> kdist(0.1, 100.0), frac(0.0, 1.0);
  const double step = 1e-6;
  const auto points = static_cast<long>(std::llround(2.0 / step));
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    double k = kdist(gen);
    double p = frac(gen) * k;
    if (i == 0) p = 0.0;
    if (i == 1) p = k;
    double best = -1.0, arg = 0.0;
    for (long j = 0; j <= points; ++j) {
      double d = static_cast<double>(j) * step;
      double v = oracle_follower(k, p, d, 5);
      if (v > best) best = v, arg = d;
    }
    worst = std::max(worst, std::abs(incentive::follower_best_response(k, p) - arg));
  }
  return {worst <= 1e-5, "max|closed-form - grid argmax|=" + fmt("%.3g", worst) + " (tol 1e-5, 100 pairs)"};
}

Verdict ac2() {
  std::mt19937_64 gen(202);
  std::uniform_real_distribution<double> kdist(0.1, 100.0), udist(0.0, 1.0);
  double worst = 0.0;
  for (int i = 0; i < 50; ++i) {
    double k = kdist(gen), u = udist(gen);
    double alpha = oracle_alpha(u, k);
    // Coarse grid over [0, K], then a fine grid around the coarse argmax.
    auto grid = [&](double lo, double hi, long n) {
      double best = -std::numeric_limits<double>::infinity(), arg = lo;
      for (long j = 0; j <= n; ++j) {
        double p = lo + (hi - lo) * static_cast<double>(j) / static_cast<double>(n);
        double v = oracle_leader(k, p, alpha);
        if (v > best) best = v, arg = p;
      }
      return arg;
    };
    const long coarse = 100000;
    double h = k / coarse;
    double p0 = grid(0.0, k, coarse);
    double p1 = grid(std::max(0.0, p0 - 2 * h), std::min(k, p0 + 2 * h), 40000);
    worst = std::max(worst, std::abs(incentive::recommend_fee(u, k) - p1));
  }
  return {worst <= 1e-4, "max|recommend_fee - grid argmax|=" + fmt("%.3g", worst) + " (tol 1e-4, 50 pairs)"};
}

Verdict ac3() {
  double worst = 0.0;
  for (double k : {1.0, 10.0, 100.0}) {
    worst = std::max(worst, std::abs(incentive::recommend_fee(0.0, k) - 0.0));
    worst = std::max(worst, std::abs(incentive::recommend_fee(1.0, k) - k));
    worst = std::max(worst, std::abs(incentive::alpha_effective(0.0, k) - k / (1 + k)));
    worst = std::max(worst, std::abs(incentive::alpha_effective(1.0, k) - 2 * k / (1 + 2 * k)));
  }
  return {worst <= 1e-12, "max endpoint error=" + fmt("%.3g", worst) + " (tol 1e-12, K in {1,10,100})"};
}

// Shared default-parameter replicates for the variance, selection and
// separation criteria.
struct DefaultRuns {
  std::vector<harness::ModeSummary> reputation, baseline;
  double seconds = 0.0;
};

const DefaultRuns& default_runs() {
  static DefaultRuns runs = [] {
    auto start = Clock::now();
    harness::RunConfig c;  // N=50, lambda=0.4, M=5, K=10, u=0.5, 200 tasks, ECVRF
    c.seeds = 20;
    DefaultRuns r;
    c.selection_mode = protocol::SelectionMode::kReputation;
    r.reputation = harness::replicate(c, 0);
    c.selection_mode = protocol::SelectionMode::kBaseline;
    r.baseline = harness::replicate(c, 0);
    r.seconds = std::chrono::duration<double>(Clock::now() - start).count();
    return r;
  }();
  return runs;
}

Verdict ac4() {
  const auto& r = default_runs();
  std::vector<double> rep, base;
  for (const auto& s : r.reputation) rep.push_back(s.mean_reveal_variance);
  for (const auto& s : r.baseline) base.push_back(s.mean_reveal_variance);
  double ratio = stats::mean(rep) / stats::mean(base);
  bool fast = r.seconds < 120.0;
  return {ratio <= 0.65 && fast,
          "variance ratio reputation/baseline=" + fmt("%.4f", ratio) + " (<= 0.65, 20 seeds x 200 tasks, " +
              fmt("%.1f", r.seconds) + "s < 120s)"};
}

Verdict ac5() {
  const auto& r = default_runs();
  std::vector<double> rep, base;
  for (std::size_t i = 0; i < 10; ++i) {
    rep.push_back(r.reputation[i].mean_malicious_selected);
    base.push_back(r.baseline[i].mean_malicious_selected);
  }
  auto b = stats::paired_difference_bound(rep, base, 0.95);
  return {b.upper < 0.0, "malicious/task reputation=" + fmt("%.4f", stats::mean(rep)) + " baseline=" +
                             fmt("%.4f", stats::mean(base)) + ", 95% upper bound of difference=" +
                             fmt("%.4f", b.upper) + " (< 0, 10 seeds)"};
}

Verdict ac6() {
  const auto& r = default_runs();
  int separated = 0;
  for (std::size_t i = 0; i < 10; ++i) separated += r.reputation[i].separated ? 1 : 0;
  return {separated >= 8, "separated seeds=" + std::to_string(separated) + "/10 (>= 8)"};
}

Verdict ac7() {
  harness::RunConfig c;
  c.vrf = crypto::VrfScheme::kSimulation;
  c.seeds = 30;
  auto cells = harness::payoff_experiment(c, 50);
  using agents::PublisherStrategy;
  const auto& rec_rat = harness::find_cell(cells, PublisherStrategy::kRecommended, "rational");
  const auto& rnd_rat = harness::find_cell(cells, PublisherStrategy::kRandom, "rational");
  const auto& rec_rnd = harness::find_cell(cells, PublisherStrategy::kRecommended, "random");
  auto u1 = stats::paired_difference_bound(rec_rat.per_seed_u1, rnd_rat.per_seed_u1, 0.95);
  std::vector<double> a, b;
  for (std::size_t i = 0; i < rec_rat.per_seed_u2.size(); ++i) {
    if (std::isnan(rec_rat.per_seed_u2[i]) || std::isnan(rec_rnd.per_seed_u2[i])) continue;
    a.push_back(rec_rat.per_seed_u2[i]);
    b.push_back(rec_rnd.per_seed_u2[i]);
  }
  auto u2 = stats::paired_difference_bound(a, b, 0.95);
  std::ostringstream d;
  d << "U1 recommended=" << fmt("%.4f", rec_rat.mean_u1) << " random=" << fmt("%.4f", rnd_rat.mean_u1)
    << " lower95=" << fmt("%.4f", u1.lower) << "; U2 rational=" << fmt("%.4f", rec_rat.mean_u2)
    << " random=" << fmt("%.4f", rec_rnd.mean_u2) << " per malicious node per task, lower95=" << fmt("%.4f", u2.lower)
    << " (both > 0, " << a.size() << " seeds x 50 tasks)";
  return {u1.lower > 0.0 && u2.lower > 0.0, d.str()};
}

Verdict ac8() {
  const double ks[] = {1.0, 5.0, 10.0, 20.0};
  bool ok = true;
  std::string why;
  for (int ki = 0; ki < 4; ++ki) {
    for (int ui = 0; ui <= 10; ++ui) {
      double u = ui / 10.0, k = ks[ki];
      double p = incentive::recommend_fee(u, k);
      double d = incentive::follower_best_response(k, p);
      if (ui > 0) {
        double pu = incentive::recommend_fee((ui - 1) / 10.0, k);
        double du = incentive::follower_best_response(k, pu);
        if (!(p > pu)) ok = false, why += " P not increasing in u at K=" + fmt("%g", k);
        if (!(d <= du)) ok = false, why += " Delta increasing in u at K=" + fmt("%g", k);
      }
      if (ki > 0) {
        double pk = incentive::recommend_fee(u, ks[ki - 1]);
        // At u = 0 the fee is identically zero for every K.
        if (ui == 0 ? !(p == 0.0 && pk == 0.0) : !(p > pk)) {
          ok = false, why += " P not increasing in K at u=" + fmt("%g", u);
        }
      }
    }
  }
  return {ok, ok ? "P* strictly increasing in u and K (u > 0; P*=0 at u=0), Delta* non-increasing in u on "
                   "u in {0..1 step 0.1} x K in {1,5,10,20}"
                 : why};
}

Verdict ac9() {
  harness::RunConfig c;
  c.vrf = crypto::VrfScheme::kSimulation;
  c.seeds = 10;
  std::ostringstream d;
  bool ok = true;
  auto check = [&](harness::SweepAxis axis, const std::vector<double>& values) {
    auto rows = harness::sweep(c, axis, values);
    d << harness::to_string(axis) << ":";
    for (std::size_t i = 0; i + 1 < rows.size(); i += 2) {
      double ratio = rows[i].mean_reveal_variance / rows[i + 1].mean_reveal_variance;
      ok = ok && rows[i].mean_reveal_variance <= rows[i + 1].mean_reveal_variance;
      d << " " << fmt("%g", rows[i].value) << "->" << fmt("%.3f", ratio);
    }
    d << "; ";
  };
  check(harness::SweepAxis::kLambda, {0.1, 0.2, 0.3, 0.4, 0.5});
  check(harness::SweepAxis::kM, {3, 5, 10, 15});
  d << "(reputation/baseline variance <= 1 at every point, 10 seeds)";
  return {ok, d.str()};
}

Verdict ac10() {
  std::ostringstream d;
  bool ok = true;

  // Escrow conservation over a 10^4-task randomized run, plus transcript audit.
  {
    std::mt19937_64 gen(303);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    long tasks = 0, violations = 0;
    std::size_t audit_failures = 0;
    for (int chunk = 0; chunk < 20; ++chunk) {
      harness::RunConfig c;
      c.vrf = crypto::VrfScheme::kSimulation;
      c.seed = 1000 + chunk;
      c.tasks = 500;
      c.N = 5 + static_cast<int>(unit(gen) * 60);
      c.M = 1 + static_cast<int>(unit(gen) * c.N);
      c.lambda = unit(gen);
      c.K = 0.5 + unit(gen) * 50;
      c.u = unit(gen);
      c.noise_sigma = unit(gen) * 2;
      c.publisher_strategy = chunk % 2 ? agents::PublisherStrategy::kRandom
                                       : agents::PublisherStrategy::kRecommended;
      c.malicious_strategy = chunk % 3 == 0 ? "random" : (chunk % 3 == 1 ? "rational" : "fixed");
      c.fixed_delta = unit(gen) * 5;
      c.selection_mode = chunk % 4 == 3 ? protocol::SelectionMode::kBaseline
                                        : protocol::SelectionMode::kReputation;
      std::stringstream transcript;
      protocol::TranscriptWriter writer(transcript);
      auto result = harness::run(c, {}, &writer);
      for (const auto& row : result.rows) {
        ++tasks;
        double gap = row.paid_honest + row.paid_malicious + row.refund - row.fee;
        if (std::abs(gap) > 1e-9) ++violations;
      }
      audit_failures += protocol::audit_transcript(transcript).failures;
    }
    ok = ok && violations == 0 && audit_failures == 0 && tasks == 10000;
    d << "escrow violations=" << violations << "/" << tasks << " audit failures=" << audit_failures;
  }

  // Commit-reveal binding: every tampered reveal is rejected.
  {
    auto vrf = crypto::make_vrf(crypto::VrfScheme::kSimulation);
    std::mt19937_64 gen(404);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    int tampered = 0, rejected = 0;
    for (int trial = 0; trial < 500; ++trial) {
      agents::NodeIdentity a{NodeId{0}, vrf->keygen(2 * trial), agents::Role::kHonest, 0, 1};
      agents::NodeIdentity b{NodeId{1}, vrf->keygen(2 * trial + 1), agents::Role::kHonest, 0, 1};
      protocol::TaskRequest req;
      req.id = trial;
      req.sources = {0};
      req.fee = 1.0;
      req.goods = 10.0;
      req.randomness = crypto::to_bytes(crypto::sha256(crypto::as_view(std::to_string(trial))));
      std::map<NodeId, crypto::Bytes> pks{{a.id, a.key.public_key}, {b.id, b.key.public_key}};
      std::map<NodeId, double> th{{a.id, 1.0}, {b.id, 1.0}};
      protocol::TaskEngine engine(req, vrf, pks, th);
      double price = 90 + 20 * unit(gen);
      auto stub = protocol::try_select(*vrf, a, req, 1.0);
      engine.accept_commit(protocol::make_submission(*stub, price, a.key.public_key));
      engine.close_commits();
      // Tampered price (one flipped bit of its encoding) and foreign key.
      auto bits = crypto::encode_double(price);
      bits[static_cast<std::size_t>(trial % 8)] ^= static_cast<std::uint8_t>(1u << (trial % 7));
      double forged = crypto::decode_double(bits);
      tampered += 2;
      if (engine.accept_reveal(a.id, forged, a.key.public_key) != protocol::Verdict::kAccepted) ++rejected;
      if (engine.accept_reveal(a.id, price, b.key.public_key) != protocol::Verdict::kAccepted) ++rejected;
      if (engine.accept_reveal(a.id, price, a.key.public_key) != protocol::Verdict::kAccepted) ok = false;
    }
    ok = ok && rejected == tampered;
    d << "; tampered reveals rejected=" << rejected << "/" << tampered;
  }

  // VRF soundness: every single-bit flip of an ECVRF proof fails verification.
  {
    auto vrf = crypto::make_vrf(crypto::VrfScheme::kEcP256);
    int flips = 0, rejected = 0;
    for (int round = 0; round < 2; ++round) {
      auto key = vrf->keygen(77 + round);
      crypto::Bytes seed = crypto::to_bytes(crypto::sha256(crypto::as_view("round-" + std::to_string(round))));
      auto out = vrf->evaluate(seed, key);
      if (!vrf->verify(out.value, out.proof, seed, key.public_key)) ok = false;
      for (std::size_t bit = 0; bit < out.proof.size() * 8; ++bit) {
        crypto::Bytes proof = out.proof;
        proof[bit / 8] ^= static_cast<std::uint8_t>(1u << (bit % 8));
        ++flips;
        if (!vrf->verify(out.value, proof, seed, key.public_key)) ++rejected;
      }
    }
    ok = ok && flips >= 1000 && rejected == flips;
    d << "; proof bit flips rejected=" << rejected << "/" << flips;
  }

  // Committee size under uniform reputation.
  {
    auto vrf = crypto::make_vrf(crypto::VrfScheme::kEcP256);
    const int n = 50, m = 5, tasks = 2000;
    reputation::ReputationTable table;
    std::vector<crypto::KeyPair> keys;
    for (int i = 0; i < n; ++i) {
      table.register_node(NodeId{static_cast<std::uint32_t>(i)});
      keys.push_back(vrf->keygen(5000 + i));
    }
    auto th = protocol::selection_thresholds(table, protocol::SelectionMode::kReputation, m);
    crypto::Bytes r = crypto::to_bytes(crypto::sha256(crypto::as_view(std::string("committee"))));
    std::vector<double> sizes;
    for (int t = 1; t <= tasks; ++t) {
      r = protocol::next_randomness(r, static_cast<std::uint64_t>(t));
      int size = 0;
      for (int i = 0; i < n; ++i) {
        size += vrf->evaluate_value(r, keys[i]) <= th.at(NodeId{static_cast<std::uint32_t>(i)}) ? 1 : 0;
      }
      sizes.push_back(size);
    }
    double mean = stats::mean(sizes), se = stats::standard_error(sizes);
    bool within = std::abs(mean - m) <= 3 * se;
    ok = ok && within;
    d << "; committee mean=" << fmt("%.4f", mean) << " M=" << m << " 3SE=" << fmt("%.4f", 3 * se);
  }
  return {ok, d.str()};
}

}  // namespace

int main(int argc, char** argv) {
  for (int i = 1; i < argc; ++i) only.emplace_back(argv[i]);
  report("AC1", ac1);
  report("AC2", ac2);
  report("AC3", ac3);
  report("AC4", ac4);
  report("AC5", ac5);
  report("AC6", ac6);
  report("AC7", ac7);
  report("AC8", ac8);
  report("AC9", ac9);
  report("AC10", ac10);
  std::printf("%d criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
