// Copyright 2026 The percldp Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "percldp/io.hpp"

#include <fmt/format.h>
#include <fmt/ostream.h>

#include <algorithm>
#include <cmath>
#include <ostream>

#include "json.hpp"

namespace percldp {

using nlohmann::json;

std::string format_double(double value) { return fmt::format("{:.17g}", value); }

namespace {

std::string dump(const json& j) { return j.dump(2) + "\n"; }

json bound_json(const ContagiousBoundReport& b) {
  return json{{"r", b.r},         {"n", b.n},         {"vartheta", b.vartheta},
              {"delta", b.delta}, {"p", b.p},         {"t_c", b.t_c},
              {"bound", b.bound}, {"t_delta", b.t_delta}, {"nu", b.nu},
              {"o1_term", b.o1_term}};
}

}  // namespace

void write_rate_csv(std::ostream& out, std::span<const RatePoint> points) {
  out << "alpha,beta,xi,branch\n";
  for (const RatePoint& pt : points) {
    fmt::print(out, "{:.17g},{:.17g},{:.17g},{}\n", pt.alpha, pt.beta, pt.xi, to_string(pt.branch));
  }
}

void write_survival_csv(std::ostream& out, const SurvivalTable& table) {
  out << "t,pmf,log_survival\n";
  for (std::size_t t = 0; t < table.dist.size(); ++t) {
    fmt::print(out, "{},{:.17g},{:.17g}\n", t, table.dist[t], table.log_survival[t]);
  }
}

void write_exponent_csv(std::ostream& out, std::span<const ExponentPoint> points) {
  out << "n,p,t_c,a,t,log_survival,exponent,xi\n";
  for (const ExponentPoint& pt : points) {
    fmt::print(out, "{},{:.17g},{:.17g},{},{},{:.17g},{:.17g},{:.17g}\n", pt.model.n, pt.model.p,
               pt.t_c, pt.a, pt.t, pt.log_survival, pt.exponent, pt.xi);
  }
}

void write_trace_csv(std::ostream& out, const ChainTrace& trace) {
  out << "t,S_t\n";
  for (std::size_t t = 0; t < trace.s_values.size(); ++t) {
    fmt::print(out, "{},{}\n", t, trace.s_values[t]);
  }
}

void write_final_sizes_csv(std::ostream& out, std::span<const std::int64_t> sizes) {
  out << "run,final_size\n";
  for (std::size_t i = 0; i < sizes.size(); ++i) fmt::print(out, "{},{}\n", i, sizes[i]);
}

void write_claims_csv(std::ostream& out, const DiagonalClaimsReport& report) {
  out << "claim,r,alpha,beta,knob,lhs,rhs,margin\n";
  auto rows = [&](const char* name, const ClaimSummary& summary) {
    for (const ClaimCheck& c : summary.checks) {
      fmt::print(out, "{},{},{:.17g},{:.17g},{:.17g},{:.17g},{:.17g},{:.17g}\n", name, report.r,
                 c.alpha, c.beta, c.knob, c.lhs, c.rhs, c.margin);
    }
  };
  rows("coincide", report.coincide);
  rows("touch", report.touch);
  rows("contact", report.contact);
}

void write_trajectory_csv(std::ostream& out, const Trajectory& closed_form,
                          const OptimizerResult& result, int r) {
  const SigmaEvaluation sigma = sigma_total(result.refined, r);
  out << "x,closed_form,lattice,refined,gap,sigma\n";
  for (std::size_t i = 0; i < closed_form.size(); ++i) {
    const double gap = std::abs(result.refined.values[i] - closed_form.values[i]);
    fmt::print(out, "{:.17g},{:.17g},{:.17g},{:.17g},{:.17g},", closed_form.grid[i],
               closed_form.values[i], result.lattice.values[i], result.refined.values[i], gap);
    if (i < sigma.sigma.size()) fmt::print(out, "{:.17g}", sigma.sigma[i]);
    out << '\n';
  }
}

std::string to_json(const ContagiousBoundReport& report) { return dump(bound_json(report)); }

std::string to_json(const FirstMomentReport& report) {
  return dump(json{{"bound", bound_json(report.bound)},
                   {"k", report.k},
                   {"t", report.t},
                   {"log_choose", report.log_choose},
                   {"log_probability", report.log_probability},
                   {"log_expected", report.log_expected},
                   {"log_analytic_bound", report.log_analytic_bound},
                   {"censored_mass", report.censored_mass}});
}

std::string to_json(const SurvivalEstimate& e, const ChainParams& params) {
  return dump(json{{"p_hat", e.p_hat},
                   {"stderr", e.std_error},
                   {"params",
                    {{"n", params.model.n},
                     {"p", params.model.p},
                     {"r", params.model.r},
                     {"a", params.a},
                     {"horizon", params.horizon}}},
                   {"runs", e.runs},
                   {"hits", e.hits},
                   {"t_target", e.t_target},
                   {"seed", e.seed}});
}

std::string to_json(const FinalSizeMoments& m) {
  return dump(json{{"mean", m.mean},
                   {"variance", m.variance},
                   {"mean_stderr", m.mean_stderr},
                   {"variance_stderr", m.variance_stderr},
                   {"runs", m.runs},
                   {"used_runs", m.used_runs},
                   {"censored_runs", m.censored_runs}});
}

std::string to_json(const ContagiousSearch& s) {
  json j{{"subsets_examined", s.subsets_examined}};
  if (s.size) {
    j["size"] = *s.size;
    j["witness"] = s.witness;
  } else {
    j["size"] = nullptr;
    j["status"] = "exceeds limit";
  }
  return dump(j);
}

}  // namespace percldp
