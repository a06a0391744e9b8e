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

#include "oracle/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <boost/math/distributions/students_t.hpp>

#include "oracle/errors.hpp"

namespace oracle::stats {

double mean(std::span<const double> xs) {
  if (xs.empty()) throw InputError("mean of an empty sample");
  return std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
}

double sample_variance(std::span<const double> xs) {
  if (xs.size() < 2) return 0.0;
  double m = mean(xs);
  double acc = 0.0;
  for (double x : xs) acc += (x - m) * (x - m);
  return acc / static_cast<double>(xs.size() - 1);
}

double standard_error(std::span<const double> xs) {
  if (xs.size() < 2) return 0.0;
  return std::sqrt(sample_variance(xs) / static_cast<double>(xs.size()));
}

double student_t_quantile(double confidence, double df) {
  boost::math::students_t dist(df);
  return boost::math::quantile(dist, confidence);
}

PairedBound paired_difference_bound(std::span<const double> a, std::span<const double> b,
                                    double confidence) {
  if (a.size() != b.size() || a.size() < 2) {
    throw InputError("paired_difference_bound: need two equal samples of size >= 2");
  }
  std::vector<double> diff(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) diff[i] = a[i] - b[i];
  PairedBound r;
  r.mean_difference = mean(diff);
  r.standard_error = standard_error(diff);
  double t = student_t_quantile(confidence, static_cast<double>(diff.size() - 1));
  r.lower = r.mean_difference - t * r.standard_error;
  r.upper = r.mean_difference + t * r.standard_error;
  return r;
}

double kolmogorov_q(double lambda) {
  if (lambda < 0.2) return 1.0;
  double sum = 0.0;
  double sign = 1.0;
  for (int k = 1; k <= 100; ++k) {
    double term = sign * std::exp(-2.0 * k * k * lambda * lambda);
    sum += term;
    if (std::abs(term) < 1e-12) break;
    sign = -sign;
  }
  return std::clamp(2.0 * sum, 0.0, 1.0);
}

KsResult ks_uniform(std::vector<double> sample) {
  if (sample.empty()) throw InputError("ks_uniform: empty sample");
  std::sort(sample.begin(), sample.end());
  const double n = static_cast<double>(sample.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sample.size(); ++i) {
    double x = std::clamp(sample[i], 0.0, 1.0);
    d = std::max({d, (static_cast<double>(i) + 1.0) / n - x, x - static_cast<double>(i) / n});
  }
  double root = std::sqrt(n);
  return {d, kolmogorov_q((root + 0.12 + 0.11 / root) * d)};
}

std::vector<double> moving_average(std::span<const double> xs, std::size_t window) {
  std::vector<double> out(xs.size());
  if (window == 0) window = 1;
  double running = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    running += xs[i];
    if (i >= window) running -= xs[i - window];
    out[i] = running / static_cast<double>(std::min(i + 1, window));
  }
  return out;
}

}  // namespace oracle::stats
