#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#ifndef BCALC_BIN
#define BCALC_BIN "bcalc"
#endif
#ifndef BCALC_FIXTURES
#define BCALC_FIXTURES "fixtures"
#endif

namespace {

struct Run {
  int code;
  std::string out, err;
};

std::string slurp(const std::string& p) {
  std::ifstream f(p);
  std::stringstream s;
  s << f.rdbuf();
  return s.str();
}

Run run(const std::string& args) {
  std::string o = "/tmp/bcalc-test-out.txt", e = "/tmp/bcalc-test-err.txt";
  int st = std::system((std::string(BCALC_BIN) + " " + args + " >" + o + " 2>" + e).c_str());
  return {WIFEXITED(st) ? WEXITSTATUS(st) : -1, slurp(o), slurp(e)};
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("derive prints the d=4 obstruction") {
    Run r = run("derive --d 4");
    CHECK(r.code == 0);
    CHECK(r.out.find("O_AB = ") != std::string::npos);
    CHECK(r.err.empty());
  }
  TEST_CASE("output is deterministic") {
    Run a = run("derive --d 6 --sector ym --emit json --out /tmp/bcalc-a.json");
    Run b = run("derive --d 6 --sector ym --emit json --out /tmp/bcalc-b.json");
    CHECK(a.code == 0);
    CHECK(b.code == 0);
    CHECK(slurp("/tmp/bcalc-a.json") == slurp("/tmp/bcalc-b.json"));
  }
  TEST_CASE("latex and tables") {
    Run r = run("tables --d 5 --sector scalar --gjms-order 2 --emit latex --out /tmp/bcalc-t.tex");
    CHECK(r.code == 0);
    CHECK(slurp("/tmp/bcalc-t.tex").find("\\begin{equation}") != std::string::npos);
  }
  TEST_CASE("unsupported dimensions exit 3") {
    CHECK(run("derive --d 3").code == 3);
    CHECK(run("derive --d 9").code == 3);
    Run r = run("tables --d 2");
    CHECK(r.code == 3);
    CHECK(r.err.rfind("error[unsupported-dimension]: ", 0) == 0);
  }
  TEST_CASE("usage errors exit 2 with one line") {
    for (const char* a : {"derive", "derive --d 4 --emit pdf", "derive --d 4 --sector scalar",
                          "derive --d 4 --weight 1", "verify --suite nosuch", "nosuch"}) {
      CAPTURE(a);
      Run r = run(a);
      CHECK(r.code == 2);
      CHECK(r.err.find('\n') == r.err.size() - 1);
    }
  }
  TEST_CASE("missing fixtures exit 4 without a partial report") {
    Run r = run("verify --fixtures /nonexistent");
    CHECK(r.code == 4);
    CHECK(r.out.empty());
    CHECK(r.err.rfind("error[fixture]: ", 0) == 0);
  }
  TEST_CASE("a scalar weight with no equation exits 5") {
    CHECK(run("derive --d 4 --sector scalar --weight 1/3").code == 5);
  }
  TEST_CASE("numeric suite through the command line") {
    Run r = run(std::string("verify --suite flat-zeros --fixtures ") + BCALC_FIXTURES);
    CHECK(r.code == 0);
    CHECK(r.out.find("verify: PASS") != std::string::npos);
    CHECK(r.out.find("symbolic") == std::string::npos);
  }
}
