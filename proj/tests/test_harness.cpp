#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "caylab/suites.hpp"

using namespace caylab;

TEST_CASE("laws suite over gf(2) exhaustively") {
  SuiteConfig cfg;
  cfg.suite = "laws";
  cfg.field = "gf(2)";
  cfg.mode = "exhaustive";
  Report rep = run_suite(cfg);
  CHECK(rep.all_pass());
  bool found = false;
  for (const auto& c : rep.checks)
    if (c.name == "norm_multiplicativity") {
      CHECK(c.details.at("pass").get<uint64_t>() == 65536);
      found = true;
    }
  CHECK(found);
}

TEST_CASE("structured reports are byte-identical across runs") {
  SuiteConfig cfg;
  cfg.suite = "local-aut";
  cfg.field = "gf(3)";
  cfg.trials = 5;
  cfg.points = 3;
  cfg.seed = 42;
  Report a = run_suite(cfg);
  Report b = run_suite(cfg);
  CHECK(a.to_json().dump(2) == b.to_json().dump(2));
  CHECK(a.all_pass());
}

TEST_CASE("two-local suites dispatch by certificate") {
  SuiteConfig cfg;
  cfg.suite = "two-local-split";
  cfg.field = "gf(3)";
  cfg.trials = 4;
  Report rep = run_suite(cfg);
  CHECK(rep.all_pass());
  SuiteConfig div;
  div.suite = "two-local-division";
  div.field = "q";
  div.algebra = "double";
  div.trials = 4;
  Report drep = run_suite(div);
  CHECK(drep.all_pass());
  SuiteConfig wrong = div;
  wrong.algebra = "split";
  CHECK_THROWS_WITH_AS(run_suite(wrong), doctest::Contains("ConfigInvalid"), Error);
}

TEST_CASE("char2 suite runs over gf(2) and gf(4) and rejects odd fields") {
  for (const char* f : {"gf(2)", "gf(4)"}) {
    SuiteConfig cfg;
    cfg.suite = "char2";
    cfg.field = f;
    cfg.trials = 10;
    Report rep = run_suite(cfg);
    CHECK(rep.all_pass());
  }
  SuiteConfig odd;
  odd.suite = "char2";
  odd.field = "gf(3)";
  CHECK_THROWS_WITH_AS(run_suite(odd), doctest::Contains("ConfigInvalid"), Error);
}

TEST_CASE("unknown suites and bad algebra sources are config errors") {
  SuiteConfig cfg;
  cfg.suite = "nonsense";
  CHECK_THROWS_WITH_AS(run_suite(cfg), doctest::Contains("ConfigInvalid"), Error);
  SuiteConfig bad;
  bad.suite = "laws";
  bad.algebra = "file:/nonexistent/path.json";
  CHECK_THROWS_WITH_AS(run_suite(bad), doctest::Contains("ConfigInvalid"), Error);
}

TEST_CASE("linearize suite shape") {
  auto A = Algebra::split(Field::gf(3));
  Report rep = suite_linearize(*A, 6, 3, 11);
  CHECK(rep.all_pass());
}

TEST_CASE("witt suite shape") {
  auto A = Algebra::split(Field::gf(4));
  Report rep = suite_witt(*A, 20, 5, 3);
  CHECK(rep.all_pass());
}

TEST_CASE("lambda candidates are local automorphisms but not automorphisms") {
  auto A = Algebra::split(Field::gf(5));
  LinMap cand = lambda_diagonal_candidate(*A, Field::gf(5).from_int(2));
  CHECK(is_local_automorphism(cand));
  CHECK(!is_automorphism(cand));
}

TEST_CASE("unit reflection generators fix the unit") {
  auto A = Algebra::split(Field::gf(2));
  auto gens = unit_reflection_generators(*A);
  CHECK(gens.size() > 0);
  for (const auto& g : gens) {
    CHECK(is_isometry(g));
    CHECK(g.apply(A->unit()) == A->unit());
  }
}

TEST_CASE("human and structured outputs render") {
  SuiteConfig cfg;
  cfg.suite = "laws";
  cfg.field = "gf(3)";
  cfg.trials = 20;
  Report rep = run_suite(cfg);
  CHECK(rep.human().find("PASS") != std::string::npos);
  Json j = rep.to_json();
  CHECK(j.at("totals").at("fail").get<unsigned>() == 0);
  CHECK(j.at("config").at("field").get<std::string>() == "gf(3)");
}
