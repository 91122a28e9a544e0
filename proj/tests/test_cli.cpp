#include <catch2/catch_amalgamated.hpp>

#include <sstream>

#include "explog/cli.hpp"

using namespace explog;

namespace {
struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args, const std::string& stdin_text = "") {
  std::istringstream in(stdin_text);
  std::ostringstream out, err;
  int code = run_cli(std::move(args), in, out, err);
  return {code, out.str(), err.str()};
}
}  // namespace

TEST_CASE("cli normalize") {
  Result r = run({"normalize", "(p | q) -> r", "--notation", "poly"});
  CHECK(r.code == 0);
  CHECK(r.out == "r^p r^q\n");

  Result both = run({"normalize", "p -> q"});
  CHECK(both.code == 0);
  CHECK(both.out.find("q^p") != std::string::npos);

  Result verbose = run({"normalize", "p", "--notation", "poly", "--verbose-units"});
  CHECK(verbose.out == "p^1 1\n");

  Result json_out = run({"normalize", "p -> q", "--emit", "json"});
  CHECK(json_out.code == 0);
  CHECK(json_out.out.find("\"polynomial\": \"q^p\"") != std::string::npos);
}

TEST_CASE("cli classify") {
  Result r = run({"classify", "p | q"});
  CHECK(r.code == 0);
  CHECK(r.out.find("Sigma") != std::string::npos);
}

TEST_CASE("cli prove exit codes") {
  CHECK(run({"prove", "p -> p"}).code == 0);
  CHECK(run({"prove", "((p -> q) -> p) -> p"}).code == 1);
  CHECK(run({"prove", "((p"}).code == 2);
  CHECK(run({"prove", "bot -> p"}).code == 1);
  CHECK(run({"prove", "bot -> p", "--logic", "ex-falso"}).code == 0);
}

TEST_CASE("cli prove with the hs calculus emits the example spine") {
  Result r = run({"prove", "r & (q -> (r|t) -> s) -> q -> s", "--calculus", "hs", "--emit",
                  "latex"});
  CHECK(r.code == 0);
  // two imp_l_atom nodes over an axiom
  size_t first = r.out.find("\\to_l^{P}");
  REQUIRE(first != std::string::npos);
  size_t second = r.out.find("\\to_l^{P}", first + 1);
  CHECK(second != std::string::npos);
  CHECK(r.out.find("\\text{axiom}") != std::string::npos);
}

TEST_CASE("cli translate and check round-trip through json") {
  Result proof = run({"prove", "r & (q -> (r|t) -> s) -> q -> s", "--emit", "json"});
  REQUIRE(proof.code == 0);

  Result checked = run({"check", "--calculus", "g4ip", "--input", "-"}, proof.out);
  CHECK(checked.code == 0);

  Result hs = run({"translate", "--to", "hs", "--input", "-"}, proof.out);
  REQUIRE(hs.code == 0);

  Result hs_checked = run({"check", "--calculus", "hs", "--input", "-"}, hs.out);
  CHECK(hs_checked.code == 0);

  Result back = run({"translate", "--to", "g4ip", "--input", "-"}, hs.out);
  REQUIRE(back.code == 0);
  Result back_checked = run({"check", "--calculus", "g4ip", "--input", "-"}, back.out);
  CHECK(back_checked.code == 0);
}

TEST_CASE("cli json output is stable across runs") {
  Result a = run({"prove", "p -> q -> p", "--emit", "json"});
  Result b = run({"prove", "p -> q -> p", "--emit", "json"});
  CHECK(a.out == b.out);
  Result c = run({"translate", "--to", "hs", "--input", "-"}, a.out);
  Result d = run({"translate", "--to", "hs", "--input", "-"}, b.out);
  CHECK(c.out == d.out);
}

TEST_CASE("cli measure") {
  Result proof = run({"prove", "p -> q -> p", "--emit", "json"});
  Result audit = run({"measure", "--input", "-"}, proof.out);
  CHECK(audit.code == 0);
  CHECK(audit.out.find("VIOLATION") == std::string::npos);

  Result sweep = run({"measure", "--sweep", "--values", "2", "--gamma-max", "2"});
  CHECK(sweep.code == 0);
}

TEST_CASE("cli lemmas") {
  Result r = run({"lemmas"});
  CHECK(r.code == 0);
  CHECK(r.out.find("0 violations") != std::string::npos);
  CHECK(r.out.find("fails as predicted") != std::string::npos);

  Result j = run({"lemmas", "--emit", "json"});
  CHECK(j.code == 0);
  CHECK(j.out.find("\"inequality_holds\": false") != std::string::npos);
}

TEST_CASE("cli reads formulas from stdin") {
  Result r = run({"normalize", "-", "--notation", "poly"}, "p -> q\n");
  CHECK(r.code == 0);
  CHECK(r.out == "q^p\n");
}
