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


#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>

#include "oracle/errors.hpp"
#include "oracle/harness.hpp"

namespace oracle::harness {

const char* const kMetricsHeader =
    "task,fee,committee_size,malicious_selected,malicious_selected_ma10,reveals,survivors,"
    "reveal_variance,survivor_variance,aggregate,refund,paid_honest,paid_malicious,"
    "publisher_utility,malicious_utility_sum,mean_deviation,mean_rep_honest,"
    "mean_rep_malicious,min_rep_honest,max_rep_malicious,reputation_snapshot";

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void write_metrics_csv(std::ostream& out, const std::vector<MetricsRow>& rows) {
  out << kMetricsHeader << '\n';
  for (const auto& r : rows) {
    out << r.task << ',' << format_number(r.fee) << ',' << r.committee_size << ','
        << r.malicious_selected << ',' << format_number(r.malicious_selected_ma10) << ','
        << r.reveals << ',' << r.survivors << ',' << format_number(r.reveal_variance) << ','
        << format_number(r.survivor_variance) << ','
        << (r.aggregate ? format_number(*r.aggregate) : std::string()) << ','
        << format_number(r.refund) << ',' << format_number(r.paid_honest) << ','
        << format_number(r.paid_malicious) << ',' << format_number(r.publisher_utility) << ','
        << format_number(r.malicious_utility_sum) << ',' << format_number(r.mean_deviation) << ','
        << format_number(r.mean_rep_honest) << ',' << format_number(r.mean_rep_malicious) << ','
        << format_number(r.min_rep_honest) << ',' << format_number(r.max_rep_malicious) << ','
        << r.reputation_snapshot << '\n';
  }
}

void emit_csv(const std::vector<MetricsRow>& rows, const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  write_metrics_csv(out, rows);
  out.flush();
  if (!out) throw IoError("write to '" + path + "' failed");
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
  out << "axis,value,alpha_eff,mode,seeds,mean_reveal_variance,se_reveal_variance,"
         "mean_survivor_variance,mean_malicious_selected,mean_committee_size\n";
  for (const auto& r : rows) {
    out << to_string(r.axis) << ',' << format_number(r.value) << ',' << format_number(r.alpha_eff)
        << ',' << protocol::to_string(r.mode) << ',' << r.seeds << ','
        << format_number(r.mean_reveal_variance) << ',' << format_number(r.se_reveal_variance)
        << ',' << format_number(r.mean_survivor_variance) << ','
        << format_number(r.mean_malicious_selected) << ',' << format_number(r.mean_committee_size)
        << '\n';
  }
}

void write_payoff_csv(std::ostream& out, const std::vector<PayoffCell>& cells) {
  out << "publisher,executor,seeds,mean_u1,mean_u2,mean_u2_per_selection,u2_samples\n";
  for (const auto& c : cells) {
    out << agents::to_string(c.publisher) << ',' << c.executor << ',' << c.per_seed_u1.size()
        << ',' << format_number(c.mean_u1) << ',' << format_number(c.mean_u2) << ','
        << format_number(c.mean_u2_per_selection) << ',' << c.u2_samples << '\n';
  }
}

}  // namespace oracle::harness
