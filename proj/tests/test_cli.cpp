#include <sys/wait.h>

#include <cmath>
#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "doctest.h"

namespace {
struct Run {
  int status = -1;
  std::string out;
};

// stderr is discarded unless merge is set
Run run(const std::string& args, bool merge = false) {
  const std::string cmd =
      std::string("\"") + PQBASK_CLI + "\" " + args + (merge ? " 2>&1" : " 2>/dev/null");
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  char buf[4096];
  std::size_t got = 0;
  while ((got = std::fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, got);
  const int raw = pclose(pipe);
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return r;
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

std::vector<std::string> cells(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream in(line);
  for (std::string cell; std::getline(in, cell, ',');) out.push_back(cell);
  return out;
}

const std::string kDesk = " --n 2 --p 0.9 --q 0.8";
}  // namespace

TEST_CASE("exit codes") {
  CHECK(run("eval --f x --x 1" + kDesk).status == 0);
  const Run bad_pq = run("eval --f x --x 1 --n 2 --p 0.8 --q 0.9", true);
  CHECK(bad_pq.status == 2);
  CHECK(bad_pq.out.find("q < p") != std::string::npos);
  CHECK(run("eval --f x --x 1").status == 2);
  CHECK(run("nonsense").status == 2);
  CHECK(run("eval --f x+ --x 1" + kDesk).status == 2);
  CHECK(run("eval --f 1/x --x 0" + kDesk).status == 4);
  CHECK(run("eval --f \"sqrt(x-5)\" --x 1" + kDesk).status == 4);

  const Run partial = run("eval --f x --x 50 --kmax 2" + kDesk);
  CHECK(partial.status == 3);
  const auto ls = lines(partial.out);
  REQUIRE(ls.size() == 2);
  CHECK(cells(ls[1]).back() == "false");
}

TEST_CASE("eval output") {
  const Run r = run("eval --f x^2 --x 1 --operator king" + kDesk);
  const auto ls = lines(r.out);
  REQUIRE(ls.size() == 2);
  CHECK(ls[0] == "value,terms_used,accumulated_weight,tail_error_estimate,converged");
  CHECK(std::fabs(std::stod(cells(ls[1])[0]) - 1.0) < 1e-8);

  const Run j = run("eval --f x --x 1 --format json" + kDesk);
  const auto doc = nlohmann::json::parse(j.out);
  CHECK(doc["meta"]["command"] == "eval");
  CHECK(doc["meta"]["operator"] == "plain");
  CHECK(doc["meta"]["policy"]["max_terms"] == 10000);
  REQUIRE(doc["rows"].size() == 1);
  CHECK(std::fabs(doc["rows"][0]["value"].get<double>() - 1.0) < 1e-10);
  CHECK(doc["rows"][0]["converged"] == true);
}

TEST_CASE("moments, bounds and converge tables") {
  const auto m = lines(run("moments --range 0:5:0.25" + kDesk).out);
  REQUIRE(m.size() == 22);
  for (std::size_t i = 1; i < m.size(); ++i) {
    CHECK(std::stod(cells(m[i]).back()) < 1e-8);
  }

  const auto b = lines(run("bounds --x-list 1").out);
  REQUIRE(b.size() == 5);
  CHECK(b[0].rfind("n,p,q,x,", 0) == 0);
  const auto desk = cells(b[1]);
  REQUIRE(desk.size() == 10);
  CHECK(desk[0] == "2");
  CHECK(std::stod(desk[4]) == doctest::Approx(0.3570411134409260).epsilon(1e-13));
  CHECK(std::stod(desk[5]) == doctest::Approx(0.1104015396645871).epsilon(1e-13));
  CHECK(desk[6] == "true");
  CHECK(std::stod(desk[7]) == doctest::Approx(0.7140822268818520).epsilon(1e-13));
  CHECK(std::stod(desk[8]) == doctest::Approx(0.5526003143522157).epsilon(1e-13));
  CHECK(desk[9] == "true");
  const auto near = cells(b[4]);
  CHECK(near[0] == "10");
  CHECK(near[6] == "false");
  CHECK(near[9] == "false");

  const auto c = lines(run("converge").out);
  REQUIRE(c.size() == 5);
  CHECK(c[0] == "n,p_n,q_n,bracket_n,norm_e0,norm_e1,norm_e2");
  CHECK(cells(c[4])[5] == "0.003686972111631753");

  CHECK(run("converge --schedule \"p=0.5,q=0.9\"").status == 2);
  const Run p1 = run("converge --schedule p1 --n-list 4,8");
  CHECK(p1.status == 0);
  CHECK(lines(p1.out).size() == 3);
}

TEST_CASE("figure") {
  const Run r = run("figure --f \"sin(x^2)\" --n 2 --p 0.9 --q 0.8 --range 0:2:0.01");
  CHECK(r.status == 0);
  const auto ls = lines(r.out);
  REQUIRE(ls.size() == 203);
  CHECK(ls[0] == "x,f,B_plain,B_king,err_plain,err_king");
  CHECK(ls[1] == "0,0,0,0,0,0");
  CHECK(cells(ls[201])[0] == "2");
  CHECK(ls[202].rfind("# summary,", 0) == 0);

  // every cell round-trips through strtod to the printed text
  for (std::size_t i = 1; i <= 201; ++i) {
    const auto cs = cells(ls[i]);
    REQUIRE(cs.size() == 6);
    for (const auto& c : cs) {
      char buf[64];
      std::snprintf(buf, sizeof buf, "%.17g", std::stod(c));
      CHECK(std::stod(buf) == std::stod(c));
    }
  }

  const auto j = nlohmann::json::parse(
      run("figure --format json --f \"sin(x^2)\" --n 2 --p 0.9 --q 0.8 --range 0:2:0.01").out);
  CHECK(j["rows"].size() == 201);
  CHECK(j["summary"].contains("sup_err_plain"));
  CHECK(j["summary"].contains("sup_err_king"));
}

TEST_CASE("theorem reports") {
  const auto t2 = lines(run("theorem2 --range 0:1:0.5" + kDesk).out);
  REQUIRE(t2.size() == 5);
  CHECK(t2[0] == "x,lhs,delta_n,omega2_part,omega_part,m_required");
  CHECK(t2[1] == "0,0,0,0,0,0");
  CHECK(t2[4].rfind("# summary,m_required_max=", 0) == 0);

  const Run t3 = run("theorem3 --f x --n 10 --p 0.99 --q 0.98");
  CHECK(t3.status == 0);
  const auto ls = lines(t3.out);
  REQUIRE(ls.size() == 17);
  for (std::size_t i = 1; i < ls.size(); ++i) CHECK(cells(ls[i]).back() == "true");
}

TEST_CASE("output is deterministic") {
  for (const std::string& args : std::vector<std::string>
       {"figure", "converge --format json", "bounds", "theorem2 --range 0:2:0.1" + kDesk}) {
    const Run a = run(args);
    const Run b = run(args);
    CHECK(a.status == 0);
    CHECK(a.out == b.out);
  }
}

TEST_CASE("--out writes the file instead of stdout") {
  const std::string path = std::string(PQBASK_CLI) + ".test_out.csv";
  std::remove(path.c_str());
  const Run r = run("converge --out \"" + path + "\"");
  CHECK(r.status == 0);
  CHECK(r.out.empty());
  FILE* f = std::fopen(path.c_str(), "r");
  REQUIRE(f != nullptr);
  char buf[128] = {};
  CHECK(std::fgets(buf, sizeof buf, f) != nullptr);
  std::fclose(f);
  CHECK(std::string(buf).rfind("n,p_n,q_n", 0) == 0);
  std::remove(path.c_str());
}
