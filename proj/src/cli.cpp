#include "crvn/cli.hpp"

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <limits>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"

#include "crvn/mapper.hpp"
#include "crvn/metrics.hpp"
#include "crvn/oracle_sim.hpp"
#include "crvn/scenario_io.hpp"
#include "crvn/sweep.hpp"

namespace crvn::cli {

namespace {

constexpr std::uint64_t kDefaultSeed = 1729;
constexpr std::uint64_t kDefaultSamples = 1'000'000;

std::string g12(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

// tables are for reading; csv carries the full precision
std::string g6(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

// channel lists serialized comma-free for CSV cells: svn1=ch1+ch2;svn2=ch3
std::string assignments_text(const Mapping& m) {
  std::string s;
  for (const auto& [svn_id, set] : m.assignments) {
    if (!s.empty()) s += ';';
    s += svn_id + "=";
    for (std::size_t i = 0; i < set.size(); ++i) {
      if (i > 0) s += '+';
      s += set[i];
    }
  }
  return s;
}

int write_metrics(const MetricsReport& rep, const std::string& format,
                  std::ostream& os) {
  double mean_attempt = 0.0;
  for (const auto& m : rep.per_svn) mean_attempt += m.handover_attempt_prob;
  mean_attempt /= static_cast<double>(rep.per_svn.size());

  std::vector<std::string> over_utilized;
  for (const auto& m : rep.per_svn)
    if (m.joint_utilization > 1.0) over_utilized.push_back(m.svn_id);

  if (format == "csv") {
    os << "svn_id,collision,blocking,utilization,handover_attempt,handover\n";
    for (const auto& m : rep.per_svn)
      os << m.svn_id << ',' << g12(m.collision_prob) << ',' << g12(m.blocking_prob)
         << ',' << g12(m.joint_utilization) << ',' << g12(m.handover_attempt_prob)
         << ',' << g12(m.handover_prob) << '\n';
    os << "__layer__," << g12(rep.layer.mean_collision) << ','
       << g12(rep.layer.mean_blocking) << ',' << g12(rep.layer.mean_utilization)
       << ',' << g12(mean_attempt) << ',' << g12(rep.layer.mean_handover) << '\n';
    for (const auto& id : over_utilized)
      os << "# warning: svn " << id << " utilization exceeds 1\n";
    return kExitOk;
  }

  os << std::left << std::setw(12) << "svn" << std::setw(14) << "collision"
     << std::setw(14) << "blocking" << std::setw(14) << "utilization"
     << std::setw(14) << "ho_attempt" << std::setw(14) << "handover"
     << std::setw(10) << "chsu" << std::setw(14) << "admitted"
     << std::setw(16) << "alloc_bps" << "req_bps\n";
  for (const auto& m : rep.per_svn)
    os << std::left << std::setw(12) << m.svn_id << std::setw(14)
       << g6(m.collision_prob) << std::setw(14) << g6(m.blocking_prob)
       << std::setw(14) << g6(m.joint_utilization) << std::setw(14)
       << g6(m.handover_attempt_prob) << std::setw(14) << g6(m.handover_prob)
       << std::setw(10) << g6(m.channels_per_su) << std::setw(14)
       << g6(m.admitted_sus) << std::setw(16) << g6(m.allocated_rate_bps)
       << g6(m.requested_rate_bps) << '\n';
  os << std::left << std::setw(12) << "layer mean" << std::setw(14)
     << g6(rep.layer.mean_collision) << std::setw(14)
     << g6(rep.layer.mean_blocking) << std::setw(14)
     << g6(rep.layer.mean_utilization) << std::setw(14) << g6(mean_attempt)
     << g6(rep.layer.mean_handover) << '\n';
  for (const auto& id : over_utilized)
    os << "warning: svn " << id << " utilization exceeds 1\n";
  return kExitOk;
}

int run_metrics(const std::string& scenario_path, const std::string& mapping_path,
                const std::string& format, std::ostream& os) {
  const Scenario s = load_scenario(scenario_path);
  const Mapping m = load_mapping(mapping_path, s);
  return write_metrics(evaluate_mapping(s, m), format, os);
}

int run_map(const std::string& scenario_path, const std::string& mode,
            const std::vector<double>& weights, std::uint64_t budget,
            std::uint64_t move_budget, const std::string& format, std::ostream& os,
            std::ostream& err) {
  const Scenario s = load_scenario(scenario_path);

  if (mode == "exhaustive") {
    const ParetoFront front = enumerate_pareto(s, budget);
    if (front.members.empty()) {
      err << "no feasible mapping exists for this scenario\n";
      return kExitInfeasible;
    }
    if (format == "csv") {
      os << "index,mean_handover,mean_blocking,mean_utilization,assignments\n";
      for (std::size_t i = 0; i < front.members.size(); ++i) {
        const CandidateSolution& c = front.members[i];
        os << i << ',' << g12(c.objectives.mean_handover) << ','
           << g12(c.objectives.mean_blocking) << ','
           << g12(c.objectives.mean_utilization) << ','
           << assignments_text(c.mapping) << '\n';
      }
    } else {
      os << "pareto front: " << front.members.size() << " mapping(s)\n";
      for (std::size_t i = 0; i < front.members.size(); ++i) {
        const CandidateSolution& c = front.members[i];
        os << "[" << i << "] handover=" << g6(c.objectives.mean_handover)
           << " blocking=" << g6(c.objectives.mean_blocking)
           << " utilization=" << g6(c.objectives.mean_utilization) << "\n    "
           << assignments_text(c.mapping) << '\n';
      }
    }
    return kExitOk;
  }

  ScalarWeights w{weights[0], weights[1], weights[2]};
  const CandidateSolution c = heuristic_map(s, w, move_budget);
  if (format == "csv") {
    os << "feasible,mean_handover,mean_blocking,mean_utilization,assignments\n";
    os << (c.feasible ? "yes" : "no") << ',' << g12(c.objectives.mean_handover)
       << ',' << g12(c.objectives.mean_blocking) << ','
       << g12(c.objectives.mean_utilization) << ',' << assignments_text(c.mapping)
       << '\n';
  } else {
    os << "heuristic solution (" << (c.feasible ? "feasible" : "infeasible")
       << ")\n  handover=" << g6(c.objectives.mean_handover)
       << " blocking=" << g6(c.objectives.mean_blocking)
       << " utilization=" << g6(c.objectives.mean_utilization) << "\n  "
       << assignments_text(c.mapping) << '\n';
  }
  if (!c.feasible) {
    err << "no feasible mapping found; violated constraints:\n";
    for (const auto& v : c.violations) err << "  - " << v << '\n';
    return kExitInfeasible;
  }
  return kExitOk;
}

int run_sweep_cmd(const std::string& scenario_path, const std::string& preset,
                  const std::string& param, double start, double stop, int steps,
                  const std::string& format, std::ostream& os, std::ostream& err) {
  const Scenario s =
      scenario_path.empty() ? preset_scenario() : load_scenario(scenario_path);

  SweepSpec spec;
  if (!preset.empty()) {
    spec = preset_spec(preset);
  } else if (!param.empty()) {
    if (param == "rho")
      spec.param = SweepParam::kChannelRho;
    else if (param == "channel_count")
      spec.param = SweepParam::kChannelCount;
    else if (param == "imposed_blocking")
      spec.param = SweepParam::kImposedBlocking;
    else {
      err << "unknown sweep parameter '" << param
          << "' (expected rho, channel_count, or imposed_blocking)\n";
      return kExitUsage;
    }
    spec.start = start;
    spec.stop = stop;
    spec.steps = steps;
  } else {
    err << "sweep needs either --preset or --param with --start/--stop/--steps\n";
    return kExitUsage;
  }

  const SweepResult r = run_sweep(s, spec);
  const std::string column = sweep_param_name(spec.param);
  if (format == "csv") {
    for (const auto& c : r.header_comments) os << "# " << c << '\n';
    os << column
       << ",collision,blocking,utilization,su_utilization,handover_attempt,"
          "handover\n";
    for (const auto& row : r.rows) {
      if (row.skipped) {
        os << "# skipped " << column << "=" << g12(row.value) << ": "
           << row.warning << '\n';
        continue;
      }
      os << g12(row.value) << ',' << g12(row.collision) << ',' << g12(row.blocking)
         << ',' << g12(row.utilization) << ',' << g12(row.su_utilization) << ','
         << g12(row.handover_attempt) << ',' << g12(row.handover) << '\n';
    }
  } else {
    for (const auto& c : r.header_comments) os << c << '\n';
    os << std::left << std::setw(16) << column << std::setw(14) << "collision"
       << std::setw(14) << "blocking" << std::setw(14) << "utilization"
       << std::setw(16) << "su_utilization" << std::setw(14) << "ho_attempt"
       << "handover\n";
    for (const auto& row : r.rows) {
      if (row.skipped) {
        os << "skipped " << g12(row.value) << ": " << row.warning << '\n';
        continue;
      }
      os << std::left << std::setw(16) << g6(row.value) << std::setw(14)
         << g6(row.collision) << std::setw(14) << g6(row.blocking)
         << std::setw(14) << g6(row.utilization) << std::setw(16)
         << g6(row.su_utilization) << std::setw(14) << g6(row.handover_attempt)
         << g6(row.handover) << '\n';
    }
  }
  return kExitOk;
}

int run_oracle(const std::string& scenario_path, const std::string& mapping_path,
               std::uint64_t samples, std::uint64_t seed, double perturb,
               const std::string& format, std::ostream& os) {
  const Scenario s = load_scenario(scenario_path);
  const Mapping m = load_mapping(mapping_path, s);
  const MetricsReport rep = evaluate_mapping(s, m);
  const std::vector<SvnContext> ctx = build_contexts(s, m);
  const std::vector<HandoverEstimate> ho =
      sample_handover_chain(ctx, samples, seed + 1000003);

  struct Row {
    std::string svn_id;
    const char* metric;
    double analytic;
    OracleEstimate estimate;
  };
  std::vector<Row> rows;
  for (std::size_t l = 0; l < ctx.size(); ++l) {
    const CollisionBlockingEstimate cb = sample_metrics(
        ctx[l].profiles, ctx[l].su_mean, ctx[l].chsu, samples, seed + l);
    rows.push_back({ctx[l].svn_id, "collision",
                    rep.per_svn[l].collision_prob + perturb, cb.collision});
    rows.push_back({ctx[l].svn_id, "blocking",
                    rep.per_svn[l].blocking_prob + perturb, cb.blocking});
    rows.push_back({ctx[l].svn_id, "handover_attempt",
                    rep.per_svn[l].handover_attempt_prob + perturb,
                    ho[l].attempt});
    rows.push_back({ctx[l].svn_id, "handover",
                    rep.per_svn[l].handover_prob + perturb, ho[l].handover});
  }

  bool all_pass = true;
  if (format == "csv") {
    os << "svn_id,metric,analytic,estimate,std_error,result\n";
    for (const auto& row : rows) {
      const bool pass = row.estimate.within_3_sigma(row.analytic);
      all_pass &= pass;
      os << row.svn_id << ',' << row.metric << ',' << g12(row.analytic) << ','
         << g12(row.estimate.value) << ',' << g12(row.estimate.std_error) << ','
         << (pass ? "PASS" : "FAIL") << '\n';
    }
  } else {
    os << "oracle validation: " << samples << " samples, seed " << seed << '\n';
    os << std::left << std::setw(12) << "svn" << std::setw(18) << "metric"
       << std::setw(18) << "analytic" << std::setw(18) << "estimate"
       << std::setw(16) << "std_error" << "result\n";
    for (const auto& row : rows) {
      const bool pass = row.estimate.within_3_sigma(row.analytic);
      all_pass &= pass;
      os << std::left << std::setw(12) << row.svn_id << std::setw(18) << row.metric
         << std::setw(18) << g6(row.analytic) << std::setw(18)
         << g6(row.estimate.value) << std::setw(16) << g6(row.estimate.std_error)
         << (pass ? "PASS" : "FAIL") << '\n';
    }
  }
  return all_pass ? kExitOk : kExitValidationFail;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"analytic metrics, channel mapping, and Monte Carlo validation "
               "for opportunistic-spectrum virtual networks", "crvn"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string format;  // resolved per subcommand when left empty
  std::string out_path;
  std::uint64_t seed = kDefaultSeed;
  app.add_option("--format", format, "output format: csv or table")
      ->check(CLI::IsMember({"csv", "table"}));
  app.add_option("--out", out_path, "write the report to this file");
  app.add_option("--seed", seed, "base seed for sampling commands");

  std::string metrics_scenario, metrics_mapping;
  CLI::App* metrics = app.add_subcommand(
      "metrics", "per-SVN and layer metrics of a scenario + mapping");
  metrics->add_option("scenario", metrics_scenario, "scenario JSON file")
      ->required();
  metrics->add_option("mapping", metrics_mapping, "mapping JSON file")->required();

  std::string map_scenario, map_mode = "exhaustive";
  std::vector<double> map_weights{1.0, 1.0, 1.0};
  std::uint64_t map_budget = kDefaultEnumerationBudget;
  std::uint64_t map_move_budget = kDefaultMoveBudget;
  CLI::App* map_cmd =
      app.add_subcommand("map", "solve the channel-to-SVN mapping problem");
  map_cmd->add_option("scenario", map_scenario, "scenario JSON file")->required();
  map_cmd->add_option("--mode", map_mode, "exhaustive or heuristic")
      ->check(CLI::IsMember({"exhaustive", "heuristic"}));
  map_cmd
      ->add_option("--weights", map_weights,
                   "handover,blocking,utilization scalarization weights")
      ->delimiter(',')
      ->expected(3);
  map_cmd->add_option("--budget", map_budget,
                      "assignment budget for exhaustive enumeration");
  map_cmd->add_option("--move-budget", map_move_budget,
                      "evaluation budget for the heuristic local search");

  std::string sweep_scenario, sweep_preset, sweep_param;
  double sweep_start = 0.0, sweep_stop = 1.0;
  int sweep_steps = 2;
  CLI::App* sweep_cmd =
      app.add_subcommand("sweep", "metric curves over one swept parameter");
  sweep_cmd->add_option("scenario", sweep_scenario,
                        "scenario JSON file (defaults to the built-in preset "
                        "scenario)");
  sweep_cmd->add_option("--preset", sweep_preset, "fig2, fig3, or fig4");
  sweep_cmd->add_option("--param", sweep_param,
                        "rho, channel_count, or imposed_blocking");
  sweep_cmd->add_option("--start", sweep_start, "first swept value");
  sweep_cmd->add_option("--stop", sweep_stop, "last swept value");
  sweep_cmd->add_option("--steps", sweep_steps, "number of sweep points (>= 2)");

  std::string oracle_scenario, oracle_mapping;
  std::uint64_t oracle_samples = kDefaultSamples;
  double oracle_perturb = 0.0;
  CLI::App* oracle_cmd = app.add_subcommand(
      "oracle", "cross-check analytic metrics against direct sampling");
  oracle_cmd->add_option("scenario", oracle_scenario, "scenario JSON file")
      ->required();
  oracle_cmd->add_option("mapping", oracle_mapping, "mapping JSON file")
      ->required();
  oracle_cmd
      ->add_option("--samples", oracle_samples, "Monte Carlo replications (>= 1)")
      ->check(CLI::Range(std::uint64_t{1},
                         std::numeric_limits<std::uint64_t>::max()));
  oracle_cmd->add_option(
      "--perturb-analytic", oracle_perturb,
      "offset added to every analytic value (failure-path hook)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\nrun with --help for usage\n";
    return kExitUsage;
  }

  std::ofstream file;
  std::ostream* sink = &out;
  if (!out_path.empty()) {
    file.open(out_path);
    if (!file) {
      err << "cannot open output file: " << out_path << '\n';
      return kExitInput;
    }
    sink = &file;
  }

  try {
    if (metrics->parsed()) {
      if (format.empty()) format = "table";
      return run_metrics(metrics_scenario, metrics_mapping, format, *sink);
    }
    if (map_cmd->parsed()) {
      if (format.empty()) format = "table";
      return run_map(map_scenario, map_mode, map_weights, map_budget,
                     map_move_budget, format, *sink, err);
    }
    if (sweep_cmd->parsed()) {
      if (format.empty()) format = "csv";
      return run_sweep_cmd(sweep_scenario, sweep_preset, sweep_param, sweep_start,
                           sweep_stop, sweep_steps, format, *sink, err);
    }
    if (oracle_cmd->parsed()) {
      if (format.empty()) format = "table";
      return run_oracle(oracle_scenario, oracle_mapping, oracle_samples, seed,
                        oracle_perturb, format, *sink);
    }
  } catch (const EnumerationBudgetExceeded& e) {
    err << "budget exceeded: " << e.what() << '\n';
    return kExitBudget;
  } catch (const ParseError& e) {
    err << "input error: " << e.what() << '\n';
    return kExitInput;
  } catch (const std::invalid_argument& e) {
    err << "input error: " << e.what() << '\n';
    return kExitInput;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  }
  err << "no subcommand selected\n";
  return kExitUsage;
}

}  // namespace crvn::cli
