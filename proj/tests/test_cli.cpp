#include "doctest.h"

#include <cstdio>
#include <regex>
#include <string>
#include <sys/wait.h>

namespace {

struct RunResult {
  std::string out;
  int code = -1;
};

RunResult run_cli(const std::string& args) {
  std::string cmd = std::string(COMPSTAR_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  RunResult r;
  char buf[4096];
  while (std::size_t got = fread(buf, 1, sizeof buf, p)) r.out.append(buf, got);
  int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string strip_elapsed(std::string s) {
  static const std::regex re("\"elapsed_ms\":[0-9]+");
  return std::regex_replace(s, re, "\"elapsed_ms\":X");
}

}  // namespace

TEST_CASE("star subcommand reproduces the two-ladders example") {
  RunResult r = run_cli("star --n 8 \"[1,1]+[3,4]+[4,7]\" \"[2,4]+[5,6]+[8,8]\"");
  CHECK(r.code == 0);
  CHECK(r.out == "[4,8]+[3,6]+[1,4]\n");
}

TEST_CASE("rigidity and duality subcommands") {
  CHECK(run_cli("rigid --n 5 \"[4,5]+[2,4]+[3,3]+[1,2]\"").out == "false\n");
  CHECK(run_cli("rigid \"[1,2]\"").out == "true\n");
  CHECK(run_cli("dual --n 5 \"[4,5]\"").out == "[1,2]\n");
  CHECK(run_cli("grdim --n 5 \"[4,5]+[2,4]+[3,3]+[1,2]\"").out ==
        "(1,2,2,2,1)\n");
  CHECK(run_cli("hom --n 5 \"[4,5]+[2,4]+[3,3]+[1,2]\" "
                "\"[4,5]+[2,4]+[3,3]+[1,2]\"")
            .out == "3\n");
}

TEST_CASE("structure subcommands") {
  CHECK(run_cli("regular \"[1,1]+[1,2]\"").out == "false\n");
  CHECK(run_cli("ladder \"[1,1]+[3,4]+[4,7]\" --n 8").out == "true\n");
  CHECK(run_cli("balanced \"[1,2]+[2,3]\"").out == "true\n");
  RunResult w = run_cli("balanced --n 5 \"[4,5]+[2,4]+[3,3]+[1,2]\"");
  CHECK(w.code == 0);
  CHECK(w.out.substr(0, 5) == "false");
  CHECK(run_cli("split \"[1,1]+[4,4]\"").out == "true\n");
  CHECK(run_cli("peel \"[1,2]+[2,3]\"").out ==
        "sigma=Z[2,3] rest=[1,2] case=1\n");
  CHECK(run_cli("matching \"[2,3]\" \"[2,3]\"").out.find("hom_pi_lamina=1") !=
        std::string::npos);
}

TEST_CASE("cw subcommand") {
  RunResult r = run_cli("cw 2143");
  CHECK(r.code == 0);
  CHECK(r.out.find("avoids 1324 and 2143: false") != std::string::npos);
  CHECK(run_cli("cw 1,2").out.find("[2,3]+[1,2]") != std::string::npos);
}

TEST_CASE("exit codes") {
  CHECK(run_cli("star \"[1,2\" \"[1,2]\"").code == 2);     // parse error
  CHECK(run_cli("frobnicate").code == 2);                  // unknown subcommand
  CHECK(run_cli("balanced \"[1,1]+[1,2]\"").code == 4);    // not regular
  // factor requires a rigid known factor.
  CHECK(run_cli("factor --n 5 \"[4,5]+[2,4]+[3,3]+[1,2]\" "
                "\"[4,5]+[2,4]+[3,3]+[1,2]\"")
            .code == 4);
}

TEST_CASE("json output is deterministic modulo elapsed time") {
  std::string args =
      "--json --seed 7 star --n 8 \"[1,1]+[3,4]+[4,7]\" \"[2,4]+[5,6]+[8,8]\"";
  RunResult a = run_cli(args);
  RunResult b = run_cli(args);
  CHECK(a.code == 0);
  CHECK(strip_elapsed(a.out) == strip_elapsed(b.out));
  CHECK(a.out.find("\"command\":\"star\"") != std::string::npos);
  CHECK(a.out.find("\"value\":\"[4,8]+[3,6]+[1,4]\"") != std::string::npos);
  CHECK(a.out.find("\"trials\":5") != std::string::npos);
  CHECK(a.out.find("\"error_bound\":") != std::string::npos);
  // A different seed still yields the same value.
  RunResult c = run_cli(
      "--json --seed 99 star --n 8 \"[1,1]+[3,4]+[4,7]\" \"[2,4]+[5,6]+[8,8]\"");
  CHECK(c.out.find("\"value\":\"[4,8]+[3,6]+[1,4]\"") != std::string::npos);
}

TEST_CASE("verify subcommand") {
  RunResult r = run_cli("verify paper-examples");
  CHECK(r.code == 0);
  CHECK(r.out.find("11/11 passed") != std::string::npos);
  RunResult lm = run_cli("verify lm-sweep --k 3");
  CHECK(lm.code == 0);
  CHECK(lm.out.find("8/8 passed") != std::string::npos);
  CHECK(run_cli("verify no-such-suite").code == 2);
}

TEST_CASE("sigma-decompose subcommand") {
  RunResult r = run_cli("sigma-decompose \"[1,2]+[2,3]\" \"Z[2,3]\"");
  CHECK(r.code == 0);
  CHECK(r.out == "saturated=[2,3] reduced=[1,2] is_reduced=false\n");
}
