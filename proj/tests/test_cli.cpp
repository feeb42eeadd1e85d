#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

#include <json.hpp>

using nlohmann::ordered_json;

namespace {

struct RunResult {
  int exit_code = -1;
  std::string out;
};

// FATPLANE_BIN is injected by the build with the path to the CLI binary
RunResult run(const std::string& args, const std::string& env = "") {
  std::string cmd = env.empty() ? "" : env + " ";
  cmd += std::string(FATPLANE_BIN) + " " + args + " 2>/dev/null";
  RunResult res;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  char buf[4096];
  size_t got;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) res.out.append(buf, got);
  int status = pclose(pipe);
  res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return res;
}

ordered_json parse(const RunResult& res) {
  return ordered_json::parse(res.out);
}

}  // namespace

TEST_CASE("bound subcommand emits the pinned large-degree report") {
  RunResult res = run("bound -r 5 -d 20,30 --format json");
  CHECK(res.exit_code == 0);
  ordered_json j = parse(res);
  CHECK(j["conjecture_n"] == 200);
  CHECK(j["elv_n"] == 1800260);
  CHECK(j["small_step_n"] == 363009);
  CHECK(j["best_n"] == 363009);
  CHECK(j["strategy"] == ordered_json::array({"small", "small", "base"}));
  CHECK(j["strategies"].size() == 3);
  CHECK(j["strategies"][1]["value"] == 657800);
}

TEST_CASE("rho subcommand") {
  RunResult res = run("rho -n 3 -r 1 -t 2 -d 2 --format json");
  CHECK(res.exit_code == 0);
  ordered_json j = parse(res);
  CHECK(j["rho"] == 0);
  CHECK(j["flag_dim"] == 5);
  CHECK(j["c"] == 5);

  RunResult table = run("rho -n 3 -r 1 -t 2 -d 2");
  CHECK(table.exit_code == 0);
  CHECK(table.out.find("rho          : 0") != std::string::npos);
}

TEST_CASE("usage errors exit with code 2") {
  CHECK(run("bound -r 1 -d 3,2").exit_code == 2);   // not non-decreasing
  CHECK(run("bound -r 1 -d 1,3").exit_code == 2);   // degree below 2
  CHECK(run("bound -r 1").exit_code == 2);          // missing -d
  CHECK(run("no-such-command").exit_code == 2);
  CHECK(run("verify maxrank -r 1 -t 3 -d 3").exit_code == 2);  // no --p-count
  CHECK(run("verify").exit_code == 2);
  CHECK(run("--p 6 verify quadric").exit_code == 2);  // composite modulus
}

TEST_CASE("verification verdicts map to exit codes") {
  RunResult pass = run("verify quadric --trials 20 --format json");
  CHECK(pass.exit_code == 0);
  CHECK(parse(pass)["verdict"] == "pass");

  RunResult inconclusive =
      run("verify maxrank -r 1 -t 3 -d 3 --p-count 2 --format json");
  CHECK(inconclusive.exit_code == 0);
  CHECK(parse(inconclusive)["verdict"] == "inconclusive");

  // at p=5 with this seed some trials degenerate: verdict fail, exit 1
  RunResult fail = run(
      "--p 5 --seed 1 verify maxrank -r 1 -t 3 -d 3 --p-count 3 --format json");
  CHECK(fail.exit_code == 1);
  ordered_json j = parse(fail);
  CHECK(j["verdict"] == "fail");
  CHECK(j["successes"].get<int>() < 20);
  CHECK(j["detail"].get<std::string>().find("child seed") !=
        std::string::npos);
}

TEST_CASE("output is byte-identical across reruns") {
  const std::string cmd =
      "verify tangent -n 5 -r 1 -t 3 -d 3 --format json --seed 9";
  RunResult a = run(cmd);
  RunResult b = run(cmd);
  CHECK(a.exit_code == 0);
  CHECK(a.out == b.out);

  RunResult c = run("report paper-examples --format json");
  RunResult d = run("report paper-examples --format json");
  CHECK(c.exit_code == 0);
  CHECK(c.out == d.out);
}

TEST_CASE("environment variables supply defaults, flags win") {
  RunResult env_only =
      run("verify codim -n 3 -r 1 -t 2 -d 2 --format json", "FATPLANE_P=101");
  CHECK(env_only.exit_code == 0);
  CHECK(parse(env_only)["params"]["p"] == 101);

  RunResult flag_wins = run("--p 13 verify codim -n 3 -r 1 -t 2 -d 2 --format json",
                            "FATPLANE_P=101");
  CHECK(parse(flag_wins)["params"]["p"] == 13);

  RunResult seed_env =
      run("verify quadric --trials 5 --format json", "FATPLANE_SEED=77");
  CHECK(parse(seed_env)["seed"] == 77);
}

TEST_CASE("fatpoint defaults to the small field") {
  RunResult res = run("verify fatpoint -n 6 -d 2,3 --format json");
  CHECK(res.exit_code == 0);
  ordered_json j = parse(res);
  CHECK(j["params"]["p"] == 7);
  CHECK(j["verdict"] == "pass");
  CHECK(j["witness"]["verified"] == true);

  RunResult wide = run("--p 11 verify fatpoint -n 6 -d 2,3 --format json");
  CHECK(parse(wide)["params"]["p"] == 11);
}

TEST_CASE("tangent dump and reload round trip") {
  std::string file = std::string(std::getenv("TMPDIR") ? std::getenv("TMPDIR")
                                                       : "/tmp") +
                     "/fatplane_cli_system.json";
  std::remove(file.c_str());
  RunResult dump = run("verify tangent -n 5 -r 1 -t 3 -d 3 --dump-system " +
                       file + " --format json");
  CHECK(dump.exit_code == 0);

  std::ifstream in(file);
  REQUIRE(in.good());
  ordered_json stored = ordered_json::parse(in);
  CHECK(stored["n"] == 5);
  CHECK(stored["equations"].size() == 1);

  RunResult reload =
      run("verify tangent -r 1 -t 3 --system " + file + " --format json");
  CHECK(reload.exit_code == 0);
  ordered_json j = parse(reload);
  CHECK(j["trials"] == 1);
  CHECK(j["params"]["max_rank"] == 9);
  CHECK(j["params"]["c"] == 9);
  CHECK(j["verdict"] == "pass");
  std::remove(file.c_str());
}

TEST_CASE("report paper-examples is consistent in both formats") {
  RunResult js = run("report paper-examples --format json");
  CHECK(js.exit_code == 0);
  ordered_json j = parse(js);
  CHECK(j["consistent"] == true);
  REQUIRE(j["rows"].size() == 3);
  CHECK(j["rows"][0]["computed"]["elv_n"] == 1800260);
  CHECK(j["rows"][0]["computed"]["best_n"] == 363009);
  CHECK(j["rows"][0]["consistent"] == true);
  CHECK(j["rows"][1]["computed"]["best_n"] == 6);
  CHECK(j["rows"][2]["computed"]["first_term"] == 363009);
  for (const auto& row : j["rows"]) {
    CHECK(row.contains("paper_claim"));
    CHECK(row.contains("computed"));
  }

  RunResult table = run("report paper-examples");
  CHECK(table.exit_code == 0);
  CHECK(table.out.find("consistent") != std::string::npos);
  CHECK(table.out.find("DISCREPANT") == std::string::npos);
}
