#pragma once

#include <memory>
#include <string>
#include <vector>

#include "caylab/serialize.hpp"

namespace caylab {

struct SuiteConfig {
  std::string suite;                  // laws | local-aut | two-local-split |
                                      // two-local-division | char2 | closure
  std::string field = "gf(2)";
  std::string algebra = "split";      // split | double | file:<path>
  std::vector<std::string> params;    // doubling parameters, element syntax
  std::string mode = "sample";        // laws: exhaustive | sample
  unsigned trials = 200;
  unsigned points = 20;
  uint64_t seed = 1;
  uint64_t cap = 4000000;
  unsigned height_cap = 50;
  std::string generators = "automorphisms";  // closure: automorphisms | reflections
  std::string format = "human";
};

struct CheckResult {
  std::string name;
  bool pass = false;
  Json details;
};

struct Report {
  std::string suite;
  Json config;
  std::vector<CheckResult> checks;
  double elapsed_s = 0;  // human output only; structured reports stay byte-stable

  bool all_pass() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return true;
  }
  unsigned passed() const {
    unsigned n = 0;
    for (const auto& c : checks) n += c.pass;
    return n;
  }
  unsigned failed() const { return static_cast<unsigned>(checks.size()) - passed(); }
  Json to_json() const;
  std::string human() const;
};

std::shared_ptr<const Algebra> build_algebra(const SuiteConfig& cfg);

Report run_suite(const SuiteConfig& cfg);

// Individual suites; the acceptance binary drives these directly.
Report suite_laws(const Algebra& A, const SuiteConfig& cfg);
Report suite_local_aut(const Algebra& A, unsigned maps, unsigned points, unsigned autos,
                       uint64_t seed);
Report suite_two_local_split(const Algebra& A, unsigned autos, uint64_t seed);
Report suite_two_local_division(const Algebra& A, unsigned triples, uint64_t seed);
Report suite_char2(std::shared_ptr<const Algebra> A, unsigned trials, uint64_t seed);
Report suite_closure(const Algebra& A, const std::string& generators, uint64_t cap,
                     uint64_t seed);
Report suite_linearize(const Algebra& A, unsigned sets, unsigned bad_sets, uint64_t seed);
Report suite_witt(const Algebra& A, unsigned instances, unsigned pattern_instances,
                  uint64_t seed);

// Deterministic generator recipes shared between suites and tests.
std::vector<LinMap> automorphism_generators(const Algebra& A, unsigned count, uint64_t seed);
std::vector<LinMap> unit_reflection_generators(const Algebra& A);

// The lambda-family candidate u3 -> lambda u3, v3 -> lambda^{-1} v3 in the
// split table model.
LinMap lambda_diagonal_candidate(const Algebra& A, const Fe& lambda);

}  // namespace caylab
