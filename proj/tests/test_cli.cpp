#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <set>
#include <string>

#include "doctest.h"
#include "expr.hpp"
#include "json.hpp"
#include "report.hpp"
#include "spec.hpp"

using namespace prolim::cli;

namespace {

struct Run {
  int code = -1;
  std::string out;
};

/// Runs the binary with stderr folded into stdout.
Run run(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + (env.empty() ? "" : " ") + PROLIM_CLI + std::string(" ") + args + " 2>&1";
  Run r;
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = std::fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), n);
  const int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string spec(const std::string& name) { return std::string(PROLIM_SPECS) + "/" + name; }

std::string temp_spec(const std::string& name, const std::string& text) {
  const std::string path = "/tmp/prolim-test-" + name + ".yaml";
  std::ofstream(path) << text;
  return path;
}

nlohmann::json json_of(const Run& r) { return nlohmann::json::parse(r.out); }

}  // namespace

TEST_CASE("expressions") {
  CHECK(Expr::parse("2^(n + 1)")(3) == 16);
  CHECK(Expr::parse("min(n + 2, 4)")(5) == 4);
  CHECK(Expr::parse("max(1, n) * 3 - 1")(0) == 2);
  CHECK(Expr::parse("-n % 3")(4) == -1);
  CHECK(Expr::parse("2^min(n + 1, 3)")(7) == 8);
  CHECK_THROWS(Expr::parse("n +"));
  CHECK_THROWS(Expr::parse("k"));
  CHECK_THROWS(Expr::parse("(n"));
  CHECK_THROWS(Expr::parse("n / 0")(1));
}

TEST_CASE("spec loading reports the offending line") {
  auto line_of = [](const std::string& text) {
    try {
      parse_spec(text, "t.yaml");
    } catch (const SpecError& e) {
      return e.line();
    }
    return -1;
  };
  CHECK(line_of("base: finset\n") == 1);
  CHECK(line_of("prolim: 1\nbase: finset\nobjects:\n  X: {level: 2, step: bogus}\n") == 4);
  CHECK(line_of("prolim: 1\nbase: finset\nobjects:\n  X:\n    level: 2\n    colour: red\n") == 6);
  CHECK(line_of("prolim: 1\nbase: finset\nmaps:\n  f: {from: X, to: X}\n") == 4);
  CHECK(line_of("prolim: 1\nbase: finab\nobjects:\n  X: {level: [\"2^\"]}\n") == 4);
  CHECK(line_of("prolim: 1\nbase: finset\nobjects:\n  X: {level: [1, 2], step: [[0], [0, 0]]}\n") == -1);

  const auto s = parse_spec("prolim: 1\nbase: finab\nbudget: {depth: 2}\nobjects:\n"
                            "  D: {level: [\"2^(n + 1)\", 3], step: reduce}\n",
                            "t.yaml");
  CHECK(s.depth == 2);
  REQUIRE(s.objects.count("D"));
  CHECK(s.objects.at("D").level.size() == 2);
  CHECK(s.objects.at("D").level[0](2) == 8);
}

TEST_CASE("digests") {
  CHECK(sha256_hex("") == "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  CHECK(exit_code(prolim::Verdict::certified) == 0);
  CHECK(exit_code(prolim::Verdict::refuted) == 2);
  CHECK(exit_code(prolim::Verdict::undetermined) == 3);
  CHECK(exit_code(prolim::Verdict::exhausted) == 3);
}

TEST_CASE("homset on c(2), c(2) has 4 classes") {
  const auto r = run("homset " + spec("constant-two.yaml") + " C2 C2 --json");
  REQUIRE(r.code == 0);
  const auto j = json_of(r);
  CHECK(j["facts"]["classes"] == "4");
  CHECK(j["checks"][0]["verdict"] == "certified");
}

TEST_CASE("repro-inexactness at depth 3 certifies its sections") {
  const auto r = run("repro-inexactness --depth 3 --json");
  REQUIRE(r.code == 0);
  const auto j = json_of(r);
  std::set<std::string> certified;
  for (const auto& c : j["checks"]) {
    CHECK(c["depth"] == 3);
    if (c["verdict"] == "certified") certified.insert(c["check"].get<std::string>());
  }
  CHECK(certified.count("f_n level-mono"));
  CHECK(certified.count("fg = 0"));
  CHECK(certified.count("g != 0"));
}

TEST_CASE("check-commute on the tower coequalizer against an oracle") {
  const auto r = run("check-commute " + spec("tower-coequalizer.yaml") + " --json");
  REQUIRE(r.code == 0);
  const auto j = json_of(r);
  CHECK(j["verdict"] == "certified");
  // Oracle: T_n = 2^min(n+1,3) with 1 ~ 0 glued, at level (s, a) with n = a + s.
  for (const auto& level : j["objects"][0]["levels"]) {
    int s = 0, a = 0;
    std::sscanf(level["index"].get<std::string>().c_str(), "(%d,%d)", &s, &a);
    const int t = 1 << std::min(a + s + 1, 3);
    CHECK(std::stoi(level["object"].get<std::string>()) == t - 1);
  }
}

TEST_CASE("reports are byte-identical across runs") {
  for (const std::string args : {"cocompact " + spec("dyadic.yaml") + " C4 --samples 3 --seed 9",
                                 "procolim " + spec("sequence.yaml") + " --json",
                                 std::string("repro-inexactness --depth 2")}) {
    CAPTURE(args);
    const auto a = run(args), b = run(args);
    CHECK(a.code == b.code);
    CHECK(a.out == b.out);
  }
  const auto a = run("cocompact " + spec("dyadic.yaml") + " C4 --samples 3 --seed 9");
  const auto b = run("cocompact " + spec("dyadic.yaml") + " C4 --samples 3 --seed 10");
  CHECK(a.out != b.out);
}

TEST_CASE("exit codes") {
  CHECK(run("cocompact " + spec("dyadic.yaml") + " D").code == 2);
  CHECK(run("cocompact " + spec("dyadic.yaml") + " C4 --samples 0").code == 3);
  CHECK(run("homset " + spec("constant-two.yaml") + " C2 Q").code == 1);
  CHECK(run("levelrep /nonexistent.yaml").code == 1);
  CHECK(run("").code == 1);
  CHECK(run("prolim " + spec("pullback.yaml") + " --method pairs").code == 1);
  const auto bad = run("levelrep " + temp_spec("bad", "prolim: 1\nbase: finset\nobjects:\n  X: {level: \"n +\"}\n"));
  CHECK(bad.code == 1);
  CHECK(bad.out.find(":4:") != std::string::npos);
}

TEST_CASE("non-natural maps are rejected at load") {
  const auto r = run("prolim " + temp_spec("unnatural",
                                           "prolim: 1\nbase: finset\nobjects:\n"
                                           "  A: {level: \"min(n + 1, 3)\"}\n  C: {level: 2}\n"
                                           "maps:\n  p: {from: A, to: C, rule: mod}\n"
                                           "diagram:\n  shape: arrow\n  objects: [A, C]\n"
                                           "  arrows:\n    - {from: 0, to: 1, map: p}\n"));
  CHECK(r.code == 1);
  CHECK(r.out.find(":7: map p") != std::string::npos);
}

TEST_CASE("depth resolution") {
  auto depth = [](const Run& r) { return json_of(r)["depth"].get<int>(); };
  CHECK(depth(run("repro-inexactness --json", "PROLIM_DEPTH_DEFAULT=2")) == 2);
  CHECK(depth(run("repro-inexactness --json --depth 1", "PROLIM_DEPTH_DEFAULT=2")) == 1);
  CHECK(depth(run("homset " + spec("constant-two.yaml") + " C2 C2 --json", "PROLIM_DEPTH_DEFAULT=1")) == 3);
  CHECK(run("repro-inexactness", "PROLIM_DEPTH_DEFAULT=x").code == 1);
}

TEST_CASE("every bundled spec runs certified") {
  for (const std::string args :
       {"levelrep " + spec("square.yaml"), "prolim " + spec("square.yaml"),
        "prolim " + spec("pullback.yaml"), "prolim " + spec("tower-of-towers.yaml") + " --method pairs",
        "procolim " + spec("tower-coequalizer.yaml"), "procolim " + spec("sequence.yaml"),
        "procolim " + spec("inexact-free.yaml"), "levelrep " + spec("inexact-free.yaml"),
        "cocompact " + spec("dyadic.yaml") + " C4 --samples 2"}) {
    CAPTURE(args);
    const auto r = run(args);
    CAPTURE(r.out);
    CHECK(r.code == 0);
  }
}

TEST_CASE("timing is opt-in") {
  CHECK(run("repro-inexactness --depth 1").out.find("wall-time") == std::string::npos);
  CHECK(run("repro-inexactness --depth 1 --timing").out.find("wall-time") != std::string::npos);
}
