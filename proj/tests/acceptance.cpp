// Acceptance suite: one line per criterion, exit 0 only if all pass.

#include <chrono>
#include <cstdio>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "caylab/char2.hpp"
#include "caylab/suites.hpp"

using namespace caylab;

namespace {

int g_failures = 0;

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void report(const std::string& id, bool pass, const std::string& detail) {
  std::printf("[%s] %s %s\n", pass ? "PASS" : "FAIL", id.c_str(), detail.c_str());
  std::fflush(stdout);
  if (!pass) ++g_failures;
}

std::string describe_failures(const Report& rep) {
  std::ostringstream os;
  for (const auto& c : rep.checks)
    if (!c.pass) os << " [" << c.name << ": " << c.details.dump() << "]";
  return os.str();
}

std::shared_ptr<const Algebra> rational_division() {
  Field Q = Field::rationals();
  std::vector<Fe> params(3, -Q.one());
  return Algebra::by_doubling(Q, params);
}

// Criterion 1: table fidelity entry-for-entry plus the exhaustive gf(2) law
// suite, under 5 seconds.
void criterion1() {
  auto t0 = std::chrono::steady_clock::now();
  bool ok = true;
  std::string detail;

  // Independent transcription of the multiplication table.
  static const char* rows[8] = {
      "e1  0   u1  u2  u3  0   0   0",  "0   e2  0   0   0   v1  v2  v3",
      "0   u1  0   v3  -v2 -e1 0   0",  "0   u2  -v3 0   v1  0   -e1 0",
      "0   u3  v2  -v1 0   0   0   -e1", "v1  0   -e2 0   0   0   u3  -u2",
      "v2  0   0   -e2 0   -u3 0   u1", "v3  0   0   0   -e2 u2  -u1 0"};
  static const std::map<std::string, unsigned> idx = {
      {"e1", 0}, {"e2", 1}, {"u1", 2}, {"u2", 3}, {"u3", 4},
      {"v1", 5}, {"v2", 6}, {"v3", 7}};
  auto A = Algebra::split(Field::gf(2));
  unsigned matched = 0;
  for (unsigned i = 0; i < 8 && ok; ++i) {
    std::istringstream row(rows[i]);
    for (unsigned j = 0; j < 8 && ok; ++j) {
      std::string token;
      row >> token;
      Octonion want = A->zero();
      if (token != "0") {
        bool neg = token[0] == '-';
        Octonion b = A->basis_elem(idx.at(neg ? token.substr(1) : token));
        want = neg ? -b : b;
      }
      if (mul(A->basis_elem(i), A->basis_elem(j)) != want) {
        ok = false;
        detail = "table mismatch at (" + std::to_string(i) + "," + std::to_string(j) + ")";
      } else {
        ++matched;
      }
    }
  }

  uint64_t pair_checks = 0;
  if (ok) {
    SuiteConfig cfg;
    cfg.suite = "laws";
    cfg.mode = "exhaustive";
    Report rep = suite_laws(*A, cfg);
    if (!rep.all_pass()) {
      ok = false;
      detail = describe_failures(rep);
    } else {
      for (const auto& c : rep.checks)
        if (c.name == "norm_multiplicativity")
          pair_checks = c.details.at("pass").get<uint64_t>();
      if (pair_checks != 65536) {
        ok = false;
        detail = "expected 65536 exhaustive pairs";
      }
    }
  }
  double el = seconds_since(t0);
  if (ok && el >= 5.0) {
    ok = false;
    detail = "runtime bound exceeded";
  }
  std::ostringstream os;
  os << "table fidelity (" << matched << "/64 products) + exhaustive gf(2) laws ("
     << pair_checks << " pairs), " << el << " s (< 5 s)" << detail;
  report("C1", ok, os.str());
}

// Criterion 2: local automorphism characterization over three split fields
// and the rational division algebra, under 2 minutes total.
void criterion2() {
  auto t0 = std::chrono::steady_clock::now();
  bool ok = true;
  std::string detail;
  std::vector<std::pair<std::string, std::shared_ptr<const Algebra>>> algebras = {
      {"gf(2)", Algebra::split(Field::gf(2))},
      {"gf(3)", Algebra::split(Field::gf(3))},
      {"gf(5)", Algebra::split(Field::gf(5))},
      {"q-division", rational_division()}};
  for (auto& [name, A] : algebras) {
    Report rep = suite_local_aut(*A, 200, 20, 50, 0xC2);
    if (!rep.all_pass()) {
      ok = false;
      detail += " " + name + ":" + describe_failures(rep);
    }
  }
  double el = seconds_since(t0);
  if (ok && el >= 120.0) {
    ok = false;
    detail = "runtime bound exceeded";
  }
  std::ostringstream os;
  os << "local-aut witnesses: 4 algebras x 200 stabilizer maps x 20 points, 50 "
        "automorphisms each pass the membership test, "
     << el << " s (< 120 s)" << detail;
  report("C2", ok, os.str());
}

// Criterion 3: split two-local decision accepts automorphisms and rejects
// the lambda family with the proof pair.
void criterion3() {
  auto t0 = std::chrono::steady_clock::now();
  bool ok = true;
  std::string detail;
  for (unsigned q : {3u, 5u}) {
    auto A = Algebra::split(Field::gf(q));
    Report rep = suite_two_local_split(*A, 50, 0xC3 + q);
    if (!rep.all_pass()) {
      ok = false;
      detail += " gf(" + std::to_string(q) + "):" + describe_failures(rep);
    }
  }
  std::ostringstream os;
  os << "split 2-local: 50 automorphisms accepted per field; lambda in {2,3,4} over "
        "gf(5) and lambda=2 over gf(3) rejected naming (v1-u1, u3+v2), "
     << seconds_since(t0) << " s" << detail;
  report("C3", ok, os.str());
}

// Criterion 4: division two-point witnesses for 100 seeded triples.
void criterion4() {
  auto t0 = std::chrono::steady_clock::now();
  auto A = rational_division();
  Report rep = suite_two_local_division(*A, 100, 0xC4);
  bool ok = rep.all_pass();
  std::string detail = ok ? "" : describe_failures(rep);
  double el = seconds_since(t0);
  if (ok && el >= 120.0) {
    ok = false;
    detail = "runtime bound exceeded";
  }
  std::ostringstream os;
  os << "division 2-local: 100 verified two-point witnesses over the rational "
        "octonions (scalar, dependent and generic branches), "
     << el << " s (< 120 s)" << detail;
  report("C4", ok, os.str());
}

// Criterion 5: characteristic-2 laboratory over gf(2) and gf(4).
void criterion5() {
  auto t0 = std::chrono::steady_clock::now();
  bool ok = true;
  std::string detail;
  for (unsigned q : {2u, 4u}) {
    auto A = Algebra::split(Field::gf(q));
    Report rep = suite_char2(A, 200, 0xC5 + q);
    if (!rep.all_pass()) {
      ok = false;
      detail += " gf(" + std::to_string(q) + "):" + describe_failures(rep);
    }
  }
  std::ostringstream os;
  os << "char-2: kernel of order 2 over gf(2) and gf(4); 200 decompose/extend "
        "roundtrips per field recover phi or phi*kappa; norm-1 obstruction blocks "
        "over gf(2) and extends with mu=omega over gf(4), "
     << seconds_since(t0) << " s" << detail;
  report("C5", ok, os.str());
}

// Criterion 6: group enumeration over gf(2).
void criterion6() {
  auto t0 = std::chrono::steady_clock::now();
  auto A = Algebra::split(Field::gf(2));
  bool ok = true;
  std::string detail;
  uint64_t auto_order = 0, refl_order = 0;
  {
    Report rep = suite_closure(*A, "automorphisms", 4000000, 0xC6);
    for (const auto& c : rep.checks)
      if (c.name == "automorphism-closure-order")
        auto_order = c.details.at("order").get<uint64_t>();
    if (!rep.all_pass() || auto_order != 12096) {
      ok = false;
      detail += describe_failures(rep);
    }
  }
  std::string flag;
  {
    Report rep = suite_closure(*A, "reflections", 4000000, 0xC6);
    for (const auto& c : rep.checks)
      if (c.name == "reflection-closure-order") {
        refl_order = c.details.at("order").get<uint64_t>();
        if (c.details.contains("flag")) flag = c.details.at("flag").get<std::string>();
      }
    if (!rep.all_pass()) {
      ok = false;
      detail += describe_failures(rep);
    }
  }
  double el = seconds_since(t0);
  if (ok && el >= 600.0) {
    ok = false;
    detail = "runtime bound exceeded";
  }
  std::ostringstream os;
  os << "closure orders: automorphisms " << auto_order
     << " (= 2^6(2^6-1)(2^2-1) = 12096), 1-fixing reflections " << refl_order
     << " (stabilizer order 2903040); every element re-verified, " << el
     << " s (< 600 s)";
  if (!flag.empty()) os << " *** " << flag;
  os << detail;
  report("C6", ok, os.str());
}

// Criterion 7: linearization over gf(3) and Q.
void criterion7() {
  auto t0 = std::chrono::steady_clock::now();
  bool ok = true;
  std::string detail;
  {
    auto A = Algebra::split(Field::gf(3));
    Report rep = suite_linearize(*A, 100, 20, 0xC7);
    if (!rep.all_pass()) {
      ok = false;
      detail += " gf(3):" + describe_failures(rep);
    }
  }
  {
    auto A = rational_division();
    Report rep = suite_linearize(*A, 100, 20, 0xC7);
    if (!rep.all_pass()) {
      ok = false;
      detail += " q:" + describe_failures(rep);
    }
  }
  std::ostringstream os;
  os << "linearization: 100 consistent pointwise sample sets per field reproduce a "
        "local automorphism; 20 inconsistent sets per field return absent, "
     << seconds_since(t0) << " s" << detail;
  report("C7", ok, os.str());
}

// Criterion 8: Witt extension of 500 random partial isometries per field and
// the char-2 totally isotropic pattern.
void criterion8() {
  auto t0 = std::chrono::steady_clock::now();
  bool ok = true;
  std::string detail;
  for (unsigned q : {2u, 3u, 4u, 5u}) {
    auto A = Algebra::split(Field::gf(q));
    unsigned pattern = (q == 2 || q == 4) ? 50 : 0;
    Report rep = suite_witt(*A, 500, pattern, 0xC8 + q);
    if (!rep.all_pass()) {
      ok = false;
      detail += " gf(" + std::to_string(q) + "):" + describe_failures(rep);
    }
  }
  std::ostringstream os;
  os << "witt extension: 500 random partial isometries per field over gf(2), gf(3), "
        "gf(4), gf(5), plus 50 totally isotropic 4-dim instances over each of gf(2) "
        "and gf(4), "
     << seconds_since(t0) << " s" << detail;
  report("C8", ok, os.str());
}

}  // namespace

int main() {
  auto t0 = std::chrono::steady_clock::now();
  try {
    criterion1();
    criterion2();
    criterion3();
    criterion4();
    criterion5();
    criterion6();
    criterion7();
    criterion8();
  } catch (const Error& e) {
    std::printf("[FAIL] acceptance aborted: %s\n", e.what());
    return 1;
  }
  std::printf("acceptance: %s (%.1f s total)\n",
              g_failures ? "FAILURES" : "all criteria passed", seconds_since(t0));
  return g_failures ? 1 : 0;
}
