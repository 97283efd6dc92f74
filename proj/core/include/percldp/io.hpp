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

#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "percldp/analytics.hpp"
#include "percldp/chain.hpp"
#include "percldp/exact_dp.hpp"
#include "percldp/extremal.hpp"
#include "percldp/variational.hpp"

namespace percldp {

// Shortest decimal form that round-trips a double.
std::string format_double(double value);

// CSV writers: header line followed by one row per record.
void write_rate_csv(std::ostream& out, std::span<const RatePoint> points);
void write_survival_csv(std::ostream& out, const SurvivalTable& table);
void write_exponent_csv(std::ostream& out, std::span<const ExponentPoint> points);
void write_trace_csv(std::ostream& out, const ChainTrace& trace);
void write_final_sizes_csv(std::ostream& out, std::span<const std::int64_t> sizes);
void write_claims_csv(std::ostream& out, const DiagonalClaimsReport& report);

// x, closed form, lattice, refined, |refined - closed form|, sigma of the
// refined trajectory per cell (empty on the last row).
void write_trajectory_csv(std::ostream& out, const Trajectory& closed_form,
                          const OptimizerResult& result, int r);

// JSON writers for single reports (pretty printed, trailing newline).
std::string to_json(const ContagiousBoundReport& report);
std::string to_json(const FirstMomentReport& report);
std::string to_json(const SurvivalEstimate& estimate, const ChainParams& params);
std::string to_json(const FinalSizeMoments& moments);
std::string to_json(const ContagiousSearch& search);

}  // namespace percldp
