// End-to-end smoke tests driving the installed binary through a shell.

#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <string>

#include "fixtures.hpp"
#include "otap/serialization.hpp"

#ifndef OTAP_CLI_PATH
#define OTAP_CLI_PATH "otap"
#endif

namespace {

std::string tmp_path(const std::string& name) {
  return std::string("/tmp/otap_cli_test_") + name;
}

int run(const std::string& args) {
  const std::string cmd = std::string(OTAP_CLI_PATH) + " " + args + " > /dev/null 2>&1";
  return std::system(cmd.c_str());
}

}  // namespace

TEST_CASE("version flag exits cleanly") {
  CHECK(run("--version") == 0);
  CHECK(run("--help") == 0);
}

TEST_CASE("gen, solve, simulate and verify round-trip through files") {
  const std::string params = tmp_path("params.json");
  otap::write_text_file(params,
                        R"({"n_agents": 3, "n_types": 4, "horizon": 5,
                            "edge_prob": 0.7, "capacity": 2, "seed": 21})");
  const std::string inst = tmp_path("instance.json");
  REQUIRE(run("gen --params " + params + " --out " + inst) == 0);
  CHECK(otap::validate_instance(otap::load_instance(inst)).empty());

  const std::string sol = tmp_path("solution.json");
  CHECK(run("solve --instance " + inst + " --out " + sol) == 0);

  const std::string report = tmp_path("report.csv");
  CHECK(run("simulate --instance " + inst + " --trials 200 --seed 3 --out " + report) == 0);
  const std::string csv = otap::read_text_file(report);
  CHECK(csv.find("policy,N,mean,std,stderr,lp_objective,ratio") == 0);

  CHECK(run("verify --instance " + inst) == 0);
}

TEST_CASE("identical seeds give byte-identical reports") {
  const std::string inst = tmp_path("det_instance.json");
  otap::save_instance(otap::fixtures::three_step_budget_one(0.1), inst);
  const std::string r1 = tmp_path("r1.csv"), r2 = tmp_path("r2.csv");
  REQUIRE(run("simulate --instance " + inst + " --trials 400 --seed 17 --out " + r1) == 0);
  REQUIRE(run("simulate --instance " + inst + " --trials 400 --seed 17 --threads 2 --out " +
              r2) == 0);
  CHECK(otap::read_text_file(r1) == otap::read_text_file(r2));
}

TEST_CASE("run composite writes report and verification") {
  const std::string inst = tmp_path("run_instance.json");
  otap::save_instance(otap::fixtures::two_step_skip_trap(50.0), inst);
  const std::string report = tmp_path("run_report.csv");
  const std::string verify = tmp_path("run_verify.csv");
  const std::string solution = tmp_path("run_solution.json");
  CHECK(run("run --instance " + inst + " --trials 300 --seed 4 --out " + report +
            " --solution-out " + solution + " --verify --verify-out " + verify) == 0);
  CHECK(otap::read_text_file(report).find("proposed") != std::string::npos);
  CHECK(otap::read_text_file(verify).find("lemma2_dominance") != std::string::npos);
}

TEST_CASE("verify sweep mode exercises random instances") {
  CHECK(run("verify --sweep 2 --seed 5") == 0);
}

TEST_CASE("broken instances are rejected with a nonzero status") {
  const std::string bad = tmp_path("bad_instance.json");
  auto inst = otap::fixtures::prophet_pair(0.1);
  inst.edges[0].accept_prob = 1.7;
  otap::save_instance(inst, bad);
  CHECK(run("solve --instance " + bad) != 0);
}
