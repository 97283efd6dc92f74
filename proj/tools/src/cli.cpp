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

#include "percldp_cli/cli.hpp"

#include <fmt/format.h>
#include <fmt/ostream.h>

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "percldp/analytics.hpp"
#include "percldp/chain.hpp"
#include "percldp/error.hpp"
#include "percldp/exact_dp.hpp"
#include "percldp/extremal.hpp"
#include "percldp/graph.hpp"
#include "percldp/io.hpp"
#include "percldp/variational.hpp"

namespace percldp::cli {
namespace {

using nlohmann::json;

std::int64_t integral_n(double n) {
  if (!(n >= 1.0) || n != std::floor(n) || n > 9.0e15) {
    throw DomainError(fmt::format("n must be a positive integer, got {}", n));
  }
  return static_cast<std::int64_t>(n);
}

// "lo:hi:step" (inclusive) or a comma separated list.
std::vector<double> parse_grid(const std::string& text) {
  std::vector<double> values;
  auto to_double = [&](const std::string& s) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(s, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != s.size()) throw DomainError("bad number in grid: '" + s + "'");
    return v;
  };
  if (text.find(':') != std::string::npos) {
    std::vector<std::string> parts;
    std::stringstream ss(text);
    for (std::string part; std::getline(ss, part, ':');) parts.push_back(part);
    if (parts.size() != 3) throw DomainError("grid must look like lo:hi:step");
    const double lo = to_double(parts[0]);
    const double hi = to_double(parts[1]);
    const double step = to_double(parts[2]);
    if (!(step > 0.0) || hi < lo) throw DomainError("grid needs step > 0 and hi >= lo");
    const auto count = static_cast<std::int64_t>(std::floor((hi - lo) / step + 1e-9)) + 1;
    if (count > 1'000'000) throw DomainError("grid has too many points");
    for (std::int64_t i = 0; i < count; ++i) values.push_back(lo + static_cast<double>(i) * step);
  } else {
    std::stringstream ss(text);
    for (std::string part; std::getline(ss, part, ',');) values.push_back(to_double(part));
  }
  if (values.empty()) throw DomainError("empty grid");
  return values;
}

struct Common {
  std::optional<std::uint64_t> seed;
  unsigned threads = 0;
  std::string out_path;
  bool write_config = false;
};

std::uint64_t resolve_seed(const Common& common) {
  if (common.seed) return *common.seed;
  if (const char* env = std::getenv("PERC_LDP_SEED")) {
    std::string text(env);
    std::size_t used = 0;
    unsigned long long value = 0;
    try {
      value = std::stoull(text, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != text.size()) throw DomainError("PERC_LDP_SEED is not an integer");
    return value;
  }
  return 1;
}

struct ModelArgs {
  double n = 0.0;
  double p = 0.0;
  int r = 2;

  void add(CLI::App* cmd) {
    cmd->add_option("--n", n, "number of vertices (scientific notation allowed)")->required();
    cmd->add_option("--p", p, "edge probability")->required();
    cmd->add_option("--r", r, "activation threshold")->capture_default_str();
  }
  ModelParams model() const { return ModelParams(integral_n(n), p, r); }
};

std::int64_t initial_size(const ModelParams& model, const std::optional<std::int64_t>& a,
                          const std::optional<double>& alpha) {
  if (a && alpha) throw DomainError("give either --a or --alpha, not both");
  if (a) return *a;
  if (alpha) {
    if (!(*alpha >= 0.0)) throw DomainError("alpha must be non-negative");
    return std::llround(*alpha * critical_scales(model).a_c);
  }
  throw DomainError("one of --a or --alpha is required");
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Large deviations toolkit for r-neighbour bootstrap percolation on G(n, p)"};
  app.name("percldp");
  app.require_subcommand(1);
  app.fallthrough();
  app.set_config("--config", "", "read options from a TOML/INI file");

  Common common;
  app.add_option("--seed", common.seed, "RNG seed (default: $PERC_LDP_SEED, else 1)");
  app.add_option("--threads", common.threads, "worker threads (0 = hardware)");
  app.add_option("--out", common.out_path, "write data to this file instead of stdout");
  app.add_flag("--write-config", common.write_config, "print the given options as a config file")
      ->configurable(false);

  std::function<int(std::ostream&)> action;

  // rate
  auto* rate = app.add_subcommand("rate", "rate function xi(alpha, beta)");
  int rate_r = 2;
  std::string rate_alpha = "0";
  std::string rate_beta;
  rate->add_option("--r", rate_r)->capture_default_str();
  rate->add_option("--alpha,--alpha-grid", rate_alpha, "alpha value or grid")->capture_default_str();
  rate->add_option("--beta,--beta-grid", rate_beta, "beta value or grid (lo:hi:step or a,b,c)")
      ->required();
  rate->callback([&] {
    action = [&](std::ostream& os) {
      os << "alpha,beta,xi,branch\n";
      for (double alpha : parse_grid(rate_alpha)) {
        const double phi_a = phi(alpha, rate_r);
        for (double beta : parse_grid(rate_beta)) {
          if (beta <= phi_a) {
            fmt::print(os, "{},{},nan,below_phi\n", format_double(alpha), format_double(beta));
            continue;
          }
          const RatePoint pt = rate_xi(alpha, beta, rate_r);
          fmt::print(os, "{},{},{},{}\n", format_double(alpha), format_double(beta),
                     format_double(pt.xi), to_string(pt.branch));
        }
      }
      return kExitOk;
    };
  });

  // trajectory
  auto* traj = app.add_subcommand("trajectory", "closed-form f* next to the numerical optimum");
  TrajectoryProblem problem;
  double resolution = 1.0 / 2000.0;
  std::string endpoint = "free";
  std::string search = "split";
  traj->add_option("--alpha", problem.alpha)->required();
  traj->add_option("--beta", problem.beta)->required();
  traj->add_option("--r", problem.r)->capture_default_str();
  traj->add_option("--m", problem.m, "grid cells")->capture_default_str();
  traj->add_option("--cap", problem.cap, "upper bound on f")->capture_default_str();
  traj->add_option("--resolution", resolution, "lattice spacing")->capture_default_str();
  traj->add_option("--endpoint", endpoint, "free or fixed:<value>")->capture_default_str();
  traj->add_option("--search", search, "split or exhaustive")->capture_default_str();
  traj->callback([&] {
    action = [&](std::ostream& os) {
      if (endpoint.rfind("fixed:", 0) == 0) {
        problem.endpoint = EndpointMode::Fixed;
        problem.fixed_end = parse_grid(endpoint.substr(6)).front();
      } else if (endpoint != "free") {
        throw DomainError("endpoint must be free or fixed:<value>");
      }
      LatticeSearch mode = LatticeSearch::MonotoneSplit;
      if (search == "exhaustive") {
        mode = LatticeSearch::Exhaustive;
      } else if (search != "split") {
        throw DomainError("search must be split or exhaustive");
      }
      const OptimizerResult result =
          maximize_trajectory(problem, lattice_levels(problem, resolution), mode);
      Trajectory closed;
      try {
        closed = optimal_trajectory(problem.alpha, problem.beta, problem.r, problem.m);
      } catch (const DomainError&) {
        closed.grid = result.refined.grid;
        closed.values.assign(closed.grid.size(), std::nan(""));
      }
      write_trajectory_csv(os, closed, result, problem.r);
      double gap_lattice = 0.0;
      double gap_refined = 0.0;
      for (std::size_t i = 0; i < closed.size(); ++i) {
        gap_lattice = std::max(gap_lattice, std::abs(result.lattice.values[i] - closed.values[i]));
        gap_refined = std::max(gap_refined, std::abs(result.refined.values[i] - closed.values[i]));
      }
      fmt::print(err, "sup_gap_lattice={} sup_gap_refined={} objective={}\n",
                 format_double(gap_lattice), format_double(gap_refined),
                 format_double(result.refined_objective));
      return kExitOk;
    };
  });

  // exponent
  auto* expo = app.add_subcommand("exponent", "t_c^{-1} log P(a, t) from the exact chain law");
  double expo_alpha = 0.5;
  double expo_beta = 1.0;
  int expo_r = 2;
  std::string expo_n = "1e4,1e5,1e6";
  double tc_power = 0.5;
  double expo_cap = kDefaultCapMultiplier;
  expo->add_option("--alpha", expo_alpha)->capture_default_str();
  expo->add_option("--beta", expo_beta)->capture_default_str();
  expo->add_option("--r", expo_r)->capture_default_str();
  expo->add_option("--n", expo_n, "list or grid of n")->capture_default_str();
  expo->add_option("--tc-power", tc_power, "p is chosen so that t_c = n^power")
      ->capture_default_str();
  expo->add_option("--cap-mult", expo_cap, "DP truncation at cap-mult * t_c")
      ->capture_default_str();
  expo->callback([&] {
    action = [&](std::ostream& os) {
      std::vector<ModelParams> models;
      for (double n : parse_grid(expo_n)) {
        const std::int64_t ni = integral_n(n);
        models.emplace_back(ni, p_for_critical_time(ni, expo_r, std::pow(n, tc_power)), expo_r);
      }
      int code = kExitOk;
      os << "n,p,t_c,a,t,log_survival,exponent,xi\n";
      for (const ModelParams& model : models) {
        try {
          const auto pts = empirical_exponent(expo_alpha, expo_beta, {model}, expo_cap);
          std::ostringstream rows;
          write_exponent_csv(rows, pts);
          const std::string text = rows.str();
          os << text.substr(text.find('\n') + 1);
        } catch (const GuardError& e) {
          fmt::print(err, "warning: n={} skipped: {}\n", model.n, e.what());
          code = kExitGuard;
        }
      }
      return code;
    };
  });

  // simulate
  auto* sim = app.add_subcommand("simulate", "graph Monte Carlo of |A*|");
  ModelArgs sim_model;
  std::int64_t sim_a = 0;
  std::int64_t sim_runs = 1000;
  bool sim_lazy = false;
  bool sim_random = false;
  sim_model.add(sim);
  sim->add_option("--a", sim_a, "initial set size")->required();
  sim->add_option("--runs", sim_runs, "independent graph samples")->capture_default_str();
  sim->add_flag("--lazy", sim_lazy, "reveal edges only when needed");
  sim->add_flag("--random-initial", sim_random, "uniform random initial set");
  sim->callback([&] {
    action = [&](std::ostream& os) {
      FinalSizeOptions options;
      options.initial = sim_random ? InitialSet::UniformRandom : InitialSet::FirstVertices;
      options.sampling = sim_lazy ? GraphSampling::Lazy : GraphSampling::Full;
      options.threads = common.threads;
      const auto sizes =
          final_size_samples(sim_model.model(), sim_a, sim_runs, resolve_seed(common), options);
      write_final_sizes_csv(os, sizes);
      return kExitOk;
    };
  });

  // chain
  auto* chain = app.add_subcommand("chain", "binomial chain Monte Carlo");
  ModelArgs chain_model;
  std::optional<std::int64_t> chain_a;
  std::optional<double> chain_alpha;
  std::optional<std::int64_t> chain_horizon;
  std::optional<std::int64_t> chain_target;
  std::int64_t chain_runs = 10000;
  bool chain_trace = false;
  bool chain_full = false;
  chain_model.add(chain);
  chain->add_option("--a", chain_a, "initial set size");
  chain->add_option("--alpha", chain_alpha, "initial size as a multiple of a_c");
  chain->add_option("--horizon", chain_horizon, "last step simulated");
  chain->add_flag("--full", chain_full, "simulate up to t = n");
  chain->add_option("--target", chain_target, "estimate P(|A*| >= target)");
  chain->add_option("--runs", chain_runs, "independent chain runs")->capture_default_str();
  chain->add_flag("--trace", chain_trace, "dump one trajectory as (t, S_t)");
  chain->callback([&] {
    action = [&](std::ostream& os) {
      const ModelParams model = chain_model.model();
      const std::int64_t a = initial_size(model, chain_a, chain_alpha);
      std::optional<std::int64_t> horizon = chain_horizon;
      if (chain_full) horizon = model.n;
      const ChainParams params = make_chain_params(model, a, horizon);
      const std::uint64_t seed = resolve_seed(common);
      if (chain_trace) {
        write_trace_csv(os, simulate_chain(params, seed));
        return kExitOk;
      }
      if (chain_target) {
        os << to_json(survival_mc(params, *chain_target, chain_runs, seed, common.threads), params);
        return kExitOk;
      }
      const auto times = stopping_times(params, chain_runs, seed, common.threads);
      const FinalSizeMoments mom = summarize_stopping_times(times);
      const CriticalScales sc = critical_scales(model);
      json j{{"n", model.n},        {"p", model.p},           {"r", model.r},
             {"a", a},              {"horizon", params.horizon}, {"seed", seed},
             {"t_c", sc.t_c},       {"a_c", sc.a_c},           {"runs", mom.runs},
             {"mean", mom.mean},    {"variance", mom.variance}, {"mean_stderr", mom.mean_stderr},
             {"censored_runs", mom.censored_runs}};
      const double alpha = static_cast<double>(a) / sc.a_c;
      if (alpha < 1.0) {
        const CltMoments clt = clt_moments(alpha, model);
        j["clt_mean"] = clt.mu;
        j["clt_variance"] = clt.sigma2;
      }
      const std::int64_t half = (model.n + 1) / 2;
      if (params.horizon >= half) {
        std::int64_t reached = 0;
        for (const auto& st : times) reached += (st.censored || st.t_star >= half) ? 1 : 0;
        j["fraction_reaching_half"] = static_cast<double>(reached) / static_cast<double>(chain_runs);
      } else {
        j["fraction_reaching_half"] = nullptr;
      }
      os << j.dump(2) << '\n';
      return kExitOk;
    };
  });

  // dp
  auto* dp = app.add_subcommand("dp", "exact law of |A*| for the chain");
  ModelArgs dp_model;
  std::int64_t dp_a = 0;
  std::optional<std::int64_t> dp_horizon;
  double dp_cap = kDefaultCapMultiplier;
  dp_model.add(dp);
  dp->add_option("--a", dp_a, "initial set size")->required();
  dp->add_option("--horizon", dp_horizon);
  dp->add_option("--cap-mult", dp_cap)->capture_default_str();
  dp->callback([&] {
    action = [&](std::ostream& os) {
      const ChainParams params = make_chain_params(dp_model.model(), dp_a, dp_horizon, dp_cap);
      const SurvivalTable table = exact_distribution(params, truncated_cap(params, dp_cap));
      write_survival_csv(os, table);
      fmt::print(err, "censored_mass={} truncated_mass={}\n", format_double(table.mass_censored),
                 format_double(table.mass_truncated));
      return kExitOk;
    };
  });

  // bound
  auto* bound = app.add_subcommand("bound", "lower bound on minimal contagious sets");
  int bound_r = 2;
  double bound_n = 0.0;
  double vartheta = 0.0;
  double delta = 0.0;
  bool with_moment = false;
  bound->add_option("--r", bound_r)->capture_default_str();
  bound->add_option("--n", bound_n)->required();
  bound->add_option("--vartheta", vartheta)->required();
  bound->add_option("--delta", delta)->capture_default_str();
  bound->add_flag("--first-moment", with_moment, "add the finite-n expected count");
  bound->callback([&] {
    action = [&](std::ostream& os) {
      if (with_moment) {
        os << to_json(first_moment(bound_r, bound_n, vartheta, delta));
      } else {
        os << to_json(corollary_bound(bound_r, bound_n, vartheta, delta));
      }
      return kExitOk;
    };
  });

  // claims
  auto* claims = app.add_subcommand("claims", "margins of the three diagonal comparisons");
  int claims_r = 2;
  std::string claims_alpha = "0.1,0.25,0.4,0.55,0.7";
  std::string claims_beta = "0.6,0.7,0.8,0.9,1";
  claims->add_option("--r", claims_r)->capture_default_str();
  claims->add_option("--alpha-grid", claims_alpha)->capture_default_str();
  claims->add_option("--beta-grid", claims_beta)->capture_default_str();
  claims->callback([&] {
    action = [&](std::ostream& os) {
      const auto alphas = parse_grid(claims_alpha);
      const auto betas = parse_grid(claims_beta);
      const DiagonalClaimsReport report = verify_diagonal_claims(claims_r, alphas, betas);
      write_claims_csv(os, report);
      fmt::print(err, "all_strict={} min_margins: coincide={} touch={} contact={}\n",
                 report.all_strict(), format_double(report.coincide.min_margin),
                 format_double(report.touch.min_margin), format_double(report.contact.min_margin));
      return kExitOk;
    };
  });

  // contagious
  auto* cont = app.add_subcommand("contagious", "brute-force minimal contagious set");
  std::string graph_path;
  std::optional<std::int64_t> complete_n;
  std::optional<std::int64_t> path_n;
  int cont_r = 2;
  std::int64_t limit = 6;
  auto* graph_opt = cont->add_option("--graph", graph_path, "edge list file");
  auto* complete_opt = cont->add_option("--complete", complete_n, "use K_n");
  auto* path_opt = cont->add_option("--path", path_n, "use the path on n vertices");
  graph_opt->excludes(complete_opt)->excludes(path_opt);
  complete_opt->excludes(path_opt);
  cont->add_option("--r", cont_r)->capture_default_str();
  cont->add_option("--limit", limit, "largest subset size tried")->capture_default_str();
  cont->callback([&] {
    action = [&](std::ostream& os) {
      Graph graph;
      if (complete_n) {
        graph = complete_graph(*complete_n);
      } else if (path_n) {
        graph = path_graph(*path_n);
      } else if (!graph_path.empty()) {
        std::ifstream in(graph_path);
        if (!in) throw DomainError("cannot open graph file " + graph_path);
        graph = read_edge_list(in);
      } else {
        throw DomainError("one of --graph, --complete, --path is required");
      }
      os << to_json(min_contagious_bruteforce(graph, cont_r, limit));
      return kExitOk;
    };
  });

  // gnp
  auto* gnp = app.add_subcommand("gnp", "sample G(n, p) as an edge list");
  double gnp_n = 0.0;
  double gnp_p = 0.0;
  gnp->add_option("--n", gnp_n)->required();
  gnp->add_option("--p", gnp_p)->required();
  gnp->callback([&] {
    action = [&](std::ostream& os) {
      write_edge_list(os, sample_gnp(integral_n(gnp_n), gnp_p, resolve_seed(common)));
      return kExitOk;
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    std::ostringstream cli_out;
    std::ostringstream cli_err;
    const int code = app.exit(e, cli_out, cli_err);
    out << cli_out.str();
    err << cli_err.str();
    if (code == 0) return kExitOk;
    err << app.help();
    return kExitUsage;
  } catch (const DomainError& e) {
    fmt::print(err, "error: {}\n", e.what());
    return kExitUsage;
  }

  if (common.write_config) {
    out << app.config_to_str(false, false);
    return kExitOk;
  }

  try {
    if (!action) return kExitUsage;
    std::unique_ptr<std::ofstream> file;
    std::ostream* target = &out;
    if (!common.out_path.empty()) {
      file = std::make_unique<std::ofstream>(common.out_path);
      if (!*file) throw DomainError("cannot open output file " + common.out_path);
      target = file.get();
    }
    return action(*target);
  } catch (const GuardError& e) {
    fmt::print(err, "guard: {}\n", e.what());
    return kExitGuard;
  } catch (const std::invalid_argument& e) {
    fmt::print(err, "error: {}\n", e.what());
    return kExitUsage;
  } catch (const std::out_of_range& e) {
    fmt::print(err, "error: {}\n", e.what());
    return kExitUsage;
  }
}

}  // namespace percldp::cli
