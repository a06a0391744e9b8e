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

#include <span>
#include <vector>

namespace oracle::stats {

double mean(std::span<const double> xs);
double sample_variance(std::span<const double> xs);  // divides by n - 1
double standard_error(std::span<const double> xs);

// Upper quantile t_{1-alpha, df} of Student's t.
double student_t_quantile(double confidence, double df);

// One-sided confidence bound on mean(a - b) for paired samples.
struct PairedBound {
  double mean_difference = 0.0;
  double standard_error = 0.0;
  double lower = 0.0;  // mean - t * se
  double upper = 0.0;  // mean + t * se
};
PairedBound paired_difference_bound(std::span<const double> a, std::span<const double> b,
                                    double confidence = 0.95);

// One-sample Kolmogorov-Smirnov test against U(0, 1).
struct KsResult {
  double statistic = 0.0;  // D_n
  double p_value = 1.0;    // asymptotic, with the Stephens small-n correction
};
KsResult ks_uniform(std::vector<double> sample);

// Kolmogorov survival function Q(lambda) = 2 sum (-1)^{k-1} exp(-2 k^2 lambda^2).
double kolmogorov_q(double lambda);

// Trailing moving average with the given window (shorter at the start).
std::vector<double> moving_average(std::span<const double> xs, std::size_t window);

}  // namespace oracle::stats
