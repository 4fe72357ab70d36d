#include <doctest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <json.hpp>
#include <string>

#include "acsv/error.hpp"
#include "acsv/report.hpp"

using namespace acsv;

namespace {

struct RunResult {
  int code = -1;
  std::string out;
};

// Runs the CLI with stderr discarded; returns exit status and stdout.
RunResult run_cli(const std::string& args) {
  std::string cmd = std::string(ACSV_CLI_PATH) + " " + args + " 2>/dev/null";
  RunResult r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buf{};
  size_t n = 0;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string gf(const char* name) { return std::string("--gf ") + ACSV_DATA_DIR + "/" + name; }

}  // namespace

TEST_CASE("compare ladder halves to the first odd multiplier") {
  CHECK(compare_ladder(80) == std::vector<long>{5, 10, 20, 40, 80});
  CHECK(compare_ladder(60) == std::vector<long>{15, 30, 60});
  CHECK(compare_ladder(7) == std::vector<long>{7});
  CHECK(compare_ladder(0).empty());
  CHECK(compare_ladder(1) == std::vector<long>{1});
}

TEST_CASE("compare report survives a structured round trip") {
  RationalGF g = gf_read_file(std::string(ACSV_DATA_DIR) + "/delannoy.gf");
  CompareReport rep = build_compare(g, Direction::parse("1,1"), 2, 40, true);
  CHECK(rep.rows.size() == 4);
  CHECK(rep.converged);
  CHECK(compare_from_json(compare_json(rep)) == rep);
  CHECK_THROWS_AS(compare_from_json("{\"rows\": 3}"), Error);
}

TEST_CASE("cli coeff prints exact values") {
  auto r = run_cli("coeff " + gf("delannoy.gf") + " --index 5,5");
  CHECK(r.code == 0);
  CHECK(r.out == "1683\n");
  r = run_cli("coeff " + gf("chebyshev.gf") + " --index 1,2");
  CHECK(r.code == 0);
  CHECK(r.out == "0\n");
  r = run_cli("coeff " + gf("delannoy.gf") + " --index 2,2 --format structured");
  CHECK(r.code == 0);
  CHECK(nlohmann::json::parse(r.out)["value"] == "13");
}

TEST_CASE("cli coeff exports a box of coefficients") {
  auto r = run_cli("coeff " + gf("delannoy.gf") + " --box 2,1");
  CHECK(r.code == 0);
  CHECK(r.out == "0,0: 1\n0,1: 1\n1,0: 1\n1,1: 3\n2,0: 1\n2,1: 5\n");
  CHECK(run_cli("coeff " + gf("delannoy.gf") + " --box 1,1 --index 1,1").code == 2);
  CHECK(run_cli("coeff " + gf("delannoy.gf")).code == 2);
}

TEST_CASE("cli exit codes follow the error kind") {
  CHECK(run_cli("asymp " + gf("repeated.gf") + " --dir 1,1").code == 3);
  CHECK(run_cli("coeff " + gf("delannoy.gf") + " --index 5,x").code == 2);
  CHECK(run_cli("coeff " + gf("delannoy.gf") + " --index 5").code == 2);
  CHECK(run_cli("coeff " + gf("delannoy.gf") + " --index -1,2").code == 2);
  CHECK(run_cli("coeff --gf /nonexistent.gf --index 1,1").code == 2);
  CHECK(run_cli("asymp " + gf("delannoy.gf") + " --dir 1,x").code == 2);
  CHECK(run_cli("asymp " + gf("delannoy.gf") + " --dir 1,1 --format xml").code == 2);
  CHECK(run_cli("").code == 2);

  auto r = run_cli("asymp " + gf("repeated.gf") + " --dir 1,1 --format structured");
  CHECK(r.code == 3);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["error"]["kind"] == "out_of_scope");
  CHECK(j["error"].contains("module"));
  CHECK(j["error"].contains("message"));
}

TEST_CASE("cli critical reports the order of vanishing") {
  auto r = run_cli("critical " + gf("cuberoot.gf") + " --dir 1,1 --format structured");
  REQUIRE(r.code == 0);
  auto j = nlohmann::json::parse(r.out);
  bool found = false;
  for (const auto& p : j["points"]) {
    if (p["minimality"] == "strict") {
      CHECK(p["k"] == 3);
      found = true;
    }
  }
  CHECK(found);
}

TEST_CASE("cli asymp lists the requested number of constants") {
  auto r = run_cli("asymp " + gf("delannoy.gf") + " --dir 1,1 --terms 3 --format structured");
  REQUIRE(r.code == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j.dump().find("5.72681632647") != std::string::npos);
  r = run_cli("asymp " + gf("delannoy.gf") + " --dir 1,1 --terms 0");
  CHECK(r.code == 2);
}

TEST_CASE("cli compare on the fixtures") {
  auto r = run_cli("compare " + gf("delannoy.gf") + " --dir 1,1 --terms 1 --upto 80 --format structured");
  REQUIRE(r.code == 0);
  CompareReport rep = compare_from_json(r.out);
  CHECK(rep.converged);
  REQUIRE(rep.rows.size() == 5);
  CHECK(rep.rows.front().index == std::vector<long>{5, 5});
  CHECK(rep.rows.back().index == std::vector<long>{80, 80});
  CHECK(rep.rows.back().exact.substr(0, 10) == "1121607158");

  // Chebyshev along (1,2): the odd multiplier gives a vanishing coefficient.
  r = run_cli("compare " + gf("chebyshev.gf") + " --dir 1,2 --upto 60 --format structured");
  REQUIRE(r.code == 0);
  rep = compare_from_json(r.out);
  REQUIRE(rep.rows.size() == 3);
  CHECK(rep.rows[0].exact == "0");
  CHECK(rep.rows[0].rel_error.empty());
  CHECK(!rep.rows[1].rel_error.empty());
  CHECK(rep.converged);

  r = run_cli("compare " + gf("delannoy.gf") + " --dir 1,1 --upto 0 --format structured");
  REQUIRE(r.code == 0);
  rep = compare_from_json(r.out);
  CHECK(rep.rows.empty());
  CHECK(rep.converged);

  r = run_cli("compare " + gf("delannoy.gf") + " --dir 1,1 --upto 20");
  CHECK(r.code == 0);
  CHECK(r.out.find("converged: yes") != std::string::npos);
}
