#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "caylab/suites.hpp"

using namespace caylab;

namespace {

int emit_report(const Report& rep, const std::string& format) {
  if (format == "json" || format == "structured")
    std::cout << rep.to_json().dump(2) << "\n";
  else
    std::cout << rep.human();
  return rep.all_pass() ? 0 : 1;
}

void add_common(CLI::App* cmd, SuiteConfig& cfg) {
  cmd->add_option("--field", cfg.field, "field descriptor, e.g. gf(5), gf(2^2), q");
  cmd->add_option("--algebra", cfg.algebra, "split | double | file:<path>");
  cmd->add_option("--params", cfg.params, "doubling parameters (3 field elements)");
  cmd->add_option("--seed", cfg.seed, "deterministic seed");
  cmd->add_option("--trials", cfg.trials, "trial count");
  cmd->add_option("--cap", cfg.cap, "closure / search cap");
  cmd->add_option("--format", cfg.format, "human | json");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact Cayley-algebra laboratory: constructions, automorphism "
               "witnesses, 2-local decisions, char-2 analysis, closures"};
  app.require_subcommand(1);

  SuiteConfig cfg;
  std::string out_path, map_path, inject_lambda, x_text, y_text;
  unsigned points = 20;

  auto* algebra = app.add_subcommand("algebra", "algebra constructions");
  auto* build = algebra->add_subcommand("build", "build an algebra and emit its document");
  add_common(build, cfg);
  build->add_option("-o,--out", out_path, "output file (default stdout)");

  auto* verify = app.add_subcommand("verify", "law and theorem suites");
  auto* laws = verify->add_subcommand("laws", "algebra law suite");
  add_common(laws, cfg);
  laws->add_option("--mode", cfg.mode, "exhaustive | sample");
  auto* localaut = verify->add_subcommand("local-aut", "local automorphism characterization");
  add_common(localaut, cfg);
  localaut->add_option("--points", points, "points per sampled map");

  auto* decide = app.add_subcommand("decide", "decision procedures");
  auto* twolocal = decide->add_subcommand("two-local", "split/division 2-local behavior");
  add_common(twolocal, cfg);
  twolocal->add_option("--inject-lambda", inject_lambda,
                       "decide the diagonal candidate with this lambda (split)");
  twolocal->add_option("--map", map_path, "decide a candidate map from a JSON file");

  auto* witness = app.add_subcommand("witness", "constructive witnesses");
  auto* orbit = witness->add_subcommand("orbit", "conjugating automorphism for x -> y");
  add_common(orbit, cfg);
  orbit->add_option("--x", x_text, "point x as a JSON array of element strings")->required();
  orbit->add_option("--y", y_text, "target y as a JSON array of element strings")->required();

  auto* char2 = app.add_subcommand("char2", "characteristic-2 analysis");
  auto* analyze = char2->add_subcommand("analyze", "kernel, decomposition and obstruction");
  add_common(analyze, cfg);

  auto* closure = app.add_subcommand("closure", "matrix group enumeration");
  auto* enumerate = closure->add_subcommand("enumerate", "breadth-first closure");
  add_common(enumerate, cfg);
  enumerate->add_option("--generators", cfg.generators, "automorphisms | reflections");

  CLI11_PARSE(app, argc, argv);

  try {
    if (build->parsed()) {
      auto A = build_algebra(cfg);
      Json doc = algebra_to_json(*A);
      if (out_path.empty()) {
        std::cout << doc.dump(2) << "\n";
      } else {
        std::ofstream out(out_path);
        out << doc.dump(2) << "\n";
      }
      return 0;
    }
    if (laws->parsed()) {
      cfg.suite = "laws";
      return emit_report(run_suite(cfg), cfg.format);
    }
    if (localaut->parsed()) {
      cfg.suite = "local-aut";
      cfg.points = points;
      return emit_report(run_suite(cfg), cfg.format);
    }
    if (twolocal->parsed()) {
      auto A = build_algebra(cfg);
      if (A->is_division()) {
        cfg.suite = "two-local-division";
        return emit_report(run_suite(cfg), cfg.format);
      }
      if (!inject_lambda.empty() || !map_path.empty()) {
        LinMap cand;
        if (!inject_lambda.empty()) {
          cand = lambda_diagonal_candidate(*A, A->field().parse_elem(inject_lambda));
        } else {
          std::ifstream in(map_path);
          if (!in) fail("ConfigInvalid", "cannot open map file " + map_path);
          Json j;
          in >> j;
          cand = linmap_from_json(*A, j);
        }
        TwoLocalVerdict v = split_two_local_decide(cand);
        Json out = verdict_to_json(v);
        if (cfg.format == "json" || cfg.format == "structured")
          std::cout << out.dump(2) << "\n";
        else
          std::cout << "verdict: " << out.at("outcome").get<std::string>() << "\n"
                    << out.dump(2) << "\n";
        return v.kind == TwoLocalVerdict::Kind::automorphism ? 0 : 1;
      }
      cfg.suite = "two-local-split";
      return emit_report(run_suite(cfg), cfg.format);
    }
    if (orbit->parsed()) {
      auto A = build_algebra(cfg);
      Octonion x = octonion_from_json(*A, Json::parse(x_text));
      Octonion y = octonion_from_json(*A, Json::parse(y_text));
      AutWitness w = conjugating_automorphism(x, y);
      std::cout << witness_to_json(w).dump(2) << "\n";
      return 0;
    }
    if (analyze->parsed()) {
      cfg.suite = "char2";
      return emit_report(run_suite(cfg), cfg.format);
    }
    if (enumerate->parsed()) {
      cfg.suite = "closure";
      return emit_report(run_suite(cfg), cfg.format);
    }
  } catch (const Error& e) {
    std::string code = e.code();
    std::cerr << "error: " << e.what() << "\n";
    bool config_error = code == "ConfigInvalid" || code == "ParseError" ||
                        code == "UnsupportedField" || code == "PreconditionViolated" ||
                        code == "TooLargeForExhaustive";
    return config_error ? 2 : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  std::cerr << "error: no subcommand executed\n";
  return 2;
}
