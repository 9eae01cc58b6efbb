#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

#include <json.hpp>

#include "stochord/json_io.hpp"

namespace {

using nlohmann::json;

struct RunResult {
  int exit_code = -1;
  std::string out;
};

std::string cli_path() {
  const char* p = std::getenv("STOCHORD_CLI");
  REQUIRE_MESSAGE(p != nullptr, "STOCHORD_CLI must point at the binary");
  return p;
}

RunResult run(const std::string& args) {
  const std::string cmd = cli_path() + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult r;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
  const int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

struct TempDir {
  std::string path;
  TempDir() {
    char tmpl[] = "/tmp/stochord-test-XXXXXX";
    path = mkdtemp(tmpl);
  }
  std::string file(const std::string& name, const std::string& content) const {
    const std::string p = path + "/" + name;
    std::ofstream(p) << content;
    return p;
  }
};

}  // namespace

TEST_CASE("check / sup / eval / alpha-min / tv end to end") {
  TempDir dir;
  const std::string d01 =
      dir.file("d01.json", R"({"kind":"samples","values":[0,1]})");
  const std::string dm12 =
      dir.file("dm12.json", R"({"kind":"samples","values":[-1,2]})");

  const RunResult check = run("check --relation icx " + d01 + " " + dm12);
  CHECK(check.exit_code == 0);
  CHECK(check.out ==
        "{\"holds\":true,\"margin\":0.0,\"relation\":\"icx\"}\n");

  // A failed check still exits 0.
  const RunResult fail = run("check --relation st " + d01 + " " + dm12);
  CHECK(fail.exit_code == 0);
  CHECK(json::parse(fail.out)["holds"] == false);

  const std::string sup_out = dir.path + "/sup.json";
  const RunResult sup =
      run("sup --relation st --out " + sup_out + " " + d01 + " " + dm12);
  CHECK(sup.exit_code == 0);
  CHECK(sup.out ==
        "{\"breakpoints\":[0.5,1.0],\"kind\":\"quantile\",\"values\":[0.0,2.0]}\n");
  // The written file re-ingests as the same canonical distribution.
  std::ifstream in(sup_out);
  json reread;
  in >> reread;
  CHECK(stochord::distribution_from_json(reread) ==
        stochord::distribution_from_json(json::parse(sup.out)));

  const RunResult eval =
      run("eval --spec '{\"tag\":\"var\",\"u\":0.75}' " + d01);
  CHECK(eval.exit_code == 0);
  CHECK(eval.out == "{\"value\":1.0}\n");

  const RunResult es_inf = run(
      "eval --spec '{\"tag\":\"penalty_st\",\"curve\":{\"kind\":\"step-left\","
      "\"grid\":[0.5],\"values\":[0.0,\"-inf\"]}}' " +
      d01);
  CHECK(es_inf.exit_code == 0);
  CHECK(es_inf.out == "{\"value\":\"inf\"}\n");

  const RunResult amin =
      run("alpha-min --relation st --set " + d01 + " " + dm12);
  CHECK(amin.exit_code == 0);
  CHECK(amin.out ==
        "{\"grid\":[0.5],\"kind\":\"step-left\",\"values\":[0.0,2.0]}\n");

  const RunResult tv =
      run("tv --set " + d01 + " " + dm12 + " --from 0 --to 1");
  CHECK(tv.exit_code == 0);
  CHECK(tv.out == "{\"interval\":[0.0,1.0],\"tv\":3.0}\n");

  const RunResult tv_half =
      run("tv --set " + d01 + " " + dm12 + " --from 0 --to 0.5");
  CHECK(json::parse(tv_half.out)["tv"] == 0.0);

  // A directory stands for its *.json files, in sorted order.
  const RunResult tv_dir = run("tv --set " + dir.path + " --from 0 --to 1");
  CHECK(tv_dir.exit_code == 0);
  CHECK(json::parse(tv_dir.out)["tv"] == 3.0);
}

TEST_CASE("plot-data emits CSV") {
  TempDir dir;
  const std::string d01 =
      dir.file("d01.json", R"({"kind":"samples","values":[0,1]})");
  const RunResult r = run("plot-data " + d01 + " --what q --points 3");
  CHECK(r.exit_code == 0);
  CHECK(r.out == "u,value\n0.25,0\n0.5,0\n0.75,1\n");
}

TEST_CASE("input errors exit 2") {
  TempDir dir;
  const std::string bad = dir.file("bad.json", "{ not json");
  const std::string schema =
      dir.file("schema.json", R"({"kind":"quantile","breakpoints":[0.5],"values":[1,2]})");
  const std::string ok =
      dir.file("ok.json", R"({"kind":"samples","values":[0,1]})");

  CHECK(run("check --relation st " + bad + " " + ok).exit_code == 2);
  CHECK(run("check --relation st " + schema + " " + ok).exit_code == 2);
  CHECK(run("check --relation nope " + ok + " " + ok).exit_code == 2);
  CHECK(run("check --bogus-flag x " + ok + " " + ok).exit_code == 2);
  CHECK(run("eval --spec '{\"tag\":\"var\"}' " + ok).exit_code == 2);
  CHECK(run("--tol -1 check --relation st " + ok + " " + ok).exit_code == 2);
  CHECK(run("tv --set " + ok + " --from 0.9 --to 0.1").exit_code == 2);
  CHECK(run("sup --relation st").exit_code == 2);  // empty family
  CHECK(run("eval --spec '{\"tag\":\"var\",\"u\":1.5}' " + ok).exit_code == 2);
  CHECK(run("plot-data " + ok + " --what nope").exit_code == 2);
}

TEST_CASE("verify is deterministic and reports via exit codes") {
  const RunResult a = run("--seed 7 verify --suite quantile --trials 20");
  const RunResult b = run("--seed 7 verify --suite quantile --trials 20");
  CHECK(a.exit_code == 0);
  CHECK(a.out == b.out);
  const json report = json::parse(a.out);
  CHECK(report["violations"] == 0);
  CHECK(report["seed"] == 7);

  // A different seed changes nothing structurally.
  const RunResult c = run("--seed 8 verify --suite quantile --trials 20");
  CHECK(c.exit_code == 0);

  // The documented synthetic violation exercises exit code 3.
  const RunResult selfcheck = run("verify --suite selfcheck");
  CHECK(selfcheck.exit_code == 3);
  CHECK(json::parse(selfcheck.out)["violations"] == 1);

  CHECK(run("verify --suite nonsense").exit_code == 2);
}
