#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

namespace {

std::string fixture(const std::string& name) {
  return std::string(TAUFORGE_FIXTURES) + "/" + name;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

// stdout bytes and exit code of one invocation; stderr is discarded
std::pair<std::string, int> run(const std::string& args) {
  std::string cmd = std::string(TAUFORGE_BIN) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe);
  std::string out;
  char buf[4096];
  std::size_t got;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, got);
  int status = pclose(pipe);
  REQUIRE(WIFEXITED(status));
  return {out, WEXITSTATUS(status)};
}

void replay(const std::string& name, int want_exit) {
  std::string args = "--spec " + fixture(name + ".job.json");
  auto [out, code] = run(args);
  CHECK(code == want_exit);
  CHECK(out == slurp(fixture(name + ".golden.json")));
  // byte-identical on repeat
  CHECK(run(args).first == out);
}

}  // namespace

TEST_CASE("fixture replay") {
  replay("kp_det", 0);
  replay("bkp_pf", 0);
  replay("skp_full", 0);
  replay("lkdv_kdv", 0);
  replay("lkdv_two_component", 0);
  replay("jacobi_trudi", 0);
  replay("q_schur", 0);
}

TEST_CASE("verification failure exits 2 with the residual artifact") {
  auto [out, code] = run("--spec " + fixture("verify_fail.job.json"));
  CHECK(code == 2);
  CHECK(out == slurp(fixture("verify_fail.golden.json")));
  CHECK(out.find("\"passed\": false") != std::string::npos);
  CHECK(out.find("\"residual\"") != std::string::npos);
}

TEST_CASE("input errors exit 1") {
  CHECK(run("--spec " + fixture("junk.job.json")).second == 1);
  CHECK(run("--spec " + fixture("unknown_ctor.job.json")).second == 1);
  CHECK(run("--spec " + fixture("zero_verify.job.json")).second == 1);
  CHECK(run("--spec /definitely/not/there.json").second == 1);
  CHECK(run("").second == 1);
  CHECK(run("--basis q --spec " + fixture("kp_det.job.json")).second == 1);
  CHECK(run("--selfcheck all --spec " + fixture("kp_det.job.json")).second == 1);
}

TEST_CASE("flag overrides") {
  auto [out, code] =
      run("--spec " + fixture("kp_det.job.json") + " --alpha 2,1 --basis t");
  CHECK(code == 0);
  CHECK(out.find("\"rendering\": \"-1/2*t1^2 + t2\"") != std::string::npos);

  auto [pout, pcode] = run("--spec " + fixture("kp_det.job.json") + " --basis p");
  CHECK(pcode == 0);
  CHECK(pout.find("\"rendering\": \"-1/3*p1^3 + 1/3*p3\"") != std::string::npos);
}

TEST_CASE("output file matches stdout bytes") {
  std::string tmp = std::string(TAUFORGE_FIXTURES) + "/../.out_tmp.json";
  auto [out, code] =
      run("--spec " + fixture("kp_det.job.json") + " --out " + tmp);
  CHECK(code == 0);
  CHECK(out.empty());
  CHECK(slurp(tmp) == slurp(fixture("kp_det.golden.json")));
  std::remove(tmp.c_str());
}

TEST_CASE("selfcheck suites") {
  auto [out, code] = run("--selfcheck all --max-degree 2 --max-mode 1");
  CHECK(code == 0);
  CHECK(out.find("result: pass") != std::string::npos);
  CHECK(run("--selfcheck series --max-degree 12").second == 0);
}
