// Command line front end: generate or ingest instances, solve the offline
// relaxation, run Monte-Carlo policy comparisons, and verify the structural
// properties of the pipeline on concrete instances.

#include <cstdio>
#include <exception>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "otap/analysis.hpp"
#include "otap/decomposition.hpp"
#include "otap/generator.hpp"
#include "otap/lp_model.hpp"
#include "otap/lp_offline.hpp"
#include "otap/oracle.hpp"
#include "otap/policies.hpp"
#include "otap/serialization.hpp"
#include "otap/simulator.hpp"
#include "otap/taxi.hpp"
#include "otap/value_tables.hpp"

namespace {

constexpr const char* kVersion = "0.1.0";

struct CommonArgs {
  std::string instance_path;
  std::string params_path;
  std::string out_path;
  std::string policies = "proposed,nadap,greedy,random";
  long trials = 1000;
  std::uint64_t seed = 0;
  bool seed_set = false;
  int threads = 0;
};

otap::Instance load_normalized(const std::string& path) {
  otap::Instance inst = otap::normalize_instance(otap::load_instance(path));
  const auto violations = otap::validate_instance(inst);
  if (!violations.empty()) {
    for (const auto& v : violations)
      std::cerr << "invalid instance [" << v.field << "]: " << v.message << "\n";
    throw std::runtime_error("instance failed validation");
  }
  return inst;
}

std::vector<otap::PolicyKind> parse_policies(const std::string& csv) {
  std::vector<otap::PolicyKind> out;
  std::string cur;
  auto flush = [&] {
    if (cur.empty()) return;
    auto kind = otap::parse_policy_name(cur);
    if (!kind) throw std::runtime_error("unknown policy '" + cur + "'");
    out.push_back(*kind);
    cur.clear();
  };
  for (char c : csv) {
    if (c == ',') {
      flush();
    } else if (c != ' ') {
      cur += c;
    }
  }
  flush();
  if (out.empty()) throw std::runtime_error("at least one policy is required");
  return out;
}

struct Pipeline {
  otap::Instance inst;
  otap::Indexer idx;
  otap::LpSolution sol;
  otap::SamplingTable sampling;
  otap::ValueTables tables;

  explicit Pipeline(otap::Instance instance)
      : inst(std::move(instance)),
        idx(inst),
        sol(otap::solve_offline_lp(otap::LpModel::build(inst, idx))),
        sampling(otap::build_sampling_tables(sol, inst, idx)),
        tables(otap::compute_value_tables(inst, idx, sol)) {}
};

std::vector<otap::RunReport> simulate_policies(const Pipeline& pipe,
                                               const std::vector<otap::PolicyKind>& kinds,
                                               long trials, std::uint64_t seed, int threads) {
  std::vector<otap::RunReport> reports;
  for (otap::PolicyKind kind : kinds) {
    const otap::Policy policy = otap::make_policy(kind, &pipe.sampling, &pipe.tables);
    reports.push_back(otap::run_monte_carlo(pipe.inst, pipe.idx, policy, trials, seed,
                                            pipe.sol.objective, threads));
  }
  return reports;
}

int run_verification(const std::vector<otap::CheckResult>& checks, const std::string& out) {
  const std::string csv = otap::checks_to_csv(checks);
  if (out.empty()) {
    std::cout << csv;
  } else {
    otap::write_text_file(out, csv);
  }
  int failures = 0;
  for (const auto& c : checks) failures += c.pass ? 0 : 1;
  if (failures > 0)
    std::cerr << failures << " of " << checks.size() << " checks failed\n";
  else
    std::cout << "all " << checks.size() << " checks passed\n";
  return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"online task assignment with reusable agents: LP-guided policies, "
               "simulation and verification"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  CommonArgs args;

  auto* gen = app.add_subcommand("gen", "generate a synthetic instance");
  gen->add_option("--params", args.params_path, "synthetic parameter JSON");
  auto* gen_seed = gen->add_option("--seed", args.seed, "override the generator seed");
  gen->add_option("--out", args.out_path, "instance output path")->required();

  auto* ingest = app.add_subcommand("ingest", "build an instance from trip records");
  std::string records_path;
  ingest->add_option("--records", records_path, "trip record CSV")->required();
  ingest->add_option("--params", args.params_path, "ingestion parameter JSON");
  ingest->add_option("--seed", args.seed, "ingestion seed");
  ingest->add_option("--out", args.out_path, "instance output path")->required();

  auto* solve = app.add_subcommand("solve", "solve the offline relaxation");
  solve->add_option("--instance", args.instance_path, "instance JSON")->required();
  solve->add_option("--out", args.out_path, "solution output path");

  auto* simulate = app.add_subcommand("simulate", "Monte-Carlo policy comparison");
  simulate->add_option("--instance", args.instance_path, "instance JSON")->required();
  simulate->add_option("--policies", args.policies, "comma separated policy names");
  simulate->add_option("--trials", args.trials, "trial count");
  simulate->add_option("--seed", args.seed, "master seed");
  simulate->add_option("--threads", args.threads, "worker count (0 = cores)");
  simulate->add_option("--out", args.out_path, "report CSV path");

  auto* verify = app.add_subcommand("verify", "structural checks on instances");
  int sweep_count = 0;
  bool no_oracle = false;
  verify->add_option("--instance", args.instance_path, "instance JSON");
  verify->add_option("--sweep", sweep_count, "verify this many random tiny instances");
  verify->add_option("--seed", args.seed, "sweep seed");
  verify->add_flag("--no-oracle", no_oracle, "skip the enumeration oracle check");
  verify->add_option("--out", args.out_path, "verification CSV path");

  auto* run = app.add_subcommand("run", "solve + simulate + verify in one pass");
  run->add_option("--instance", args.instance_path, "instance JSON");
  run->add_option("--params", args.params_path, "synthetic parameter JSON");
  run->add_option("--policies", args.policies, "comma separated policy names");
  run->add_option("--trials", args.trials, "trial count");
  run->add_option("--seed", args.seed, "master seed");
  run->add_option("--threads", args.threads, "worker count (0 = cores)");
  run->add_option("--out", args.out_path, "report CSV path")->required();
  std::string solution_out, verify_out;
  bool do_verify = false;
  run->add_option("--solution-out", solution_out, "LP solution output path");
  run->add_flag("--verify", do_verify, "also run the verification battery");
  run->add_option("--verify-out", verify_out, "verification CSV path");

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed()) {
      otap::SyntheticParams params;
      if (!args.params_path.empty())
        params = otap::synthetic_params_from_json(otap::read_text_file(args.params_path));
      if (!gen_seed->empty()) params.seed = args.seed;
      const otap::Instance inst = otap::gen_synthetic(params);
      otap::save_instance(inst, args.out_path);
      std::cout << "wrote " << args.out_path << " (" << inst.agents.size() << " agents, "
                << inst.task_types.size() << " types, " << inst.edges.size() << " edges, T="
                << inst.horizon << ")\n";
      return 0;
    }
    if (ingest->parsed()) {
      otap::IngestParams params;
      if (!args.params_path.empty())
        params = otap::ingest_params_from_json(otap::read_text_file(args.params_path));
      const auto records = otap::read_trip_records(records_path);
      const otap::Instance inst = otap::ingest_trip_records(records, params, args.seed);
      otap::save_instance(inst, args.out_path);
      std::cout << "wrote " << args.out_path << " (" << inst.agents.size() << " agents, "
                << inst.task_types.size() << " types, " << inst.edges.size() << " edges, T="
                << inst.horizon << ")\n";
      return 0;
    }
    if (solve->parsed()) {
      const otap::Instance inst = load_normalized(args.instance_path);
      const otap::Indexer idx(inst);
      otap::SolveInfo info;
      const otap::LpSolution sol =
          otap::solve_offline_lp(otap::LpModel::build(inst, idx), {}, &info);
      std::printf("objective %.10g residual %.3g (%s, %ld iterations)\n", sol.objective,
                  sol.max_residual,
                  info.used == otap::SolveOptions::Method::Simplex ? "simplex" : "first-order",
                  info.iterations);
      if (!args.out_path.empty()) otap::save_solution(sol, inst, idx, args.out_path);
      return 0;
    }
    if (simulate->parsed()) {
      const Pipeline pipe(load_normalized(args.instance_path));
      const auto reports = simulate_policies(pipe, parse_policies(args.policies), args.trials,
                                             args.seed, args.threads);
      const std::string csv = otap::reports_to_csv(reports);
      if (args.out_path.empty())
        std::cout << csv;
      else
        otap::write_text_file(args.out_path, csv);
      return 0;
    }
    if (verify->parsed()) {
      std::vector<otap::CheckResult> checks;
      otap::VerifyOptions vopts;
      vopts.with_oracle = !no_oracle;
      if (!args.instance_path.empty()) {
        vopts.instance_id = args.instance_path;
        const auto rows = otap::verify_instance(otap::load_instance(args.instance_path), vopts);
        checks.insert(checks.end(), rows.begin(), rows.end());
      }
      for (int i = 0; i < sweep_count; ++i) {
        otap::TinySweepOptions topts;
        topts.oracle_sized = vopts.with_oracle;
        vopts.instance_id = "sweep-" + std::to_string(i);
        const auto rows = otap::verify_instance(
            otap::random_tiny_instance(otap::mix64(args.seed, i), topts), vopts);
        checks.insert(checks.end(), rows.begin(), rows.end());
      }
      if (checks.empty()) throw std::runtime_error("verify needs --instance or --sweep");
      return run_verification(checks, args.out_path);
    }
    if (run->parsed()) {
      otap::Instance inst;
      if (!args.instance_path.empty()) {
        inst = load_normalized(args.instance_path);
      } else if (!args.params_path.empty()) {
        otap::SyntheticParams params =
            otap::synthetic_params_from_json(otap::read_text_file(args.params_path));
        inst = otap::gen_synthetic(params);
      } else {
        throw std::runtime_error("run needs --instance or --params");
      }
      const Pipeline pipe(std::move(inst));
      std::printf("lp objective %.10g residual %.3g; dp value %.10g\n", pipe.sol.objective,
                  pipe.sol.max_residual, pipe.tables.total_initial_value());
      if (!solution_out.empty())
        otap::save_solution(pipe.sol, pipe.inst, pipe.idx, solution_out);
      const auto reports = simulate_policies(pipe, parse_policies(args.policies), args.trials,
                                             args.seed, args.threads);
      otap::write_text_file(args.out_path, otap::reports_to_csv(reports));
      for (const auto& r : reports) {
        std::printf("%-9s mean %.6g +- %.3g  ratio %.4f\n", r.policy.c_str(), r.mean,
                    r.stderr_mean, r.ratio);
      }
      int status = pipe.sol.max_residual <= 1e-7 ? 0 : 1;
      if (do_verify) {
        otap::VerifyOptions vopts;
        vopts.instance_id = args.instance_path.empty() ? "synthetic" : args.instance_path;
        const auto checks = otap::verify_instance(pipe.inst, vopts);
        const int vstatus = run_verification(checks, verify_out);
        status = status != 0 ? status : vstatus;
      }
      return status;
    }
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return 1;
  }
  return 0;
}
