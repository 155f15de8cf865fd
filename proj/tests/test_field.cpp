#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "caylab/field.hpp"
#include "caylab/rng.hpp"

using namespace caylab;

TEST_CASE("prime field inverse matches exhaustive search") {
  Field F = Field::gf(5);
  // independent oracle: scan for the inverse of 2
  Fe two = F.from_int(2);
  unsigned found = 0;
  for (unsigned i = 1; i < 5; ++i)
    if ((two * F.from_index(i)).is_one()) found = i;
  CHECK(found == 3);
  CHECK(two.inv() == F.from_int(3));
  CHECK(Field::gf(2).from_int(1).inv() == Field::gf(2).one());
}

TEST_CASE("rational inverse and canonical fractions") {
  Field Q = Field::rationals();
  Fe x = Q.from_fraction(3, 4);
  CHECK(x.inv() == Q.from_fraction(4, 3));
  CHECK(x.inv().str() == "4/3");
  CHECK(Q.from_fraction(2, 4).str() == "1/2");
  CHECK(Q.from_fraction(-2, -4).str() == "1/2");
  CHECK(Q.from_fraction(2, -4).str() == "-1/2");
  CHECK_THROWS_WITH_AS(Q.zero().inv(), doctest::Contains("ZeroInversion"), Error);
}

TEST_CASE("zero inversion rejected over finite fields") {
  CHECK_THROWS_AS(Field::gf(7).zero().inv(), Error);
}

TEST_CASE("gf(4) frobenius and its inverse") {
  Field F = Field::gf(4);
  Fe omega = F.from_index(2);  // [0,1]
  // oracle: omega^2 = omega + 1 under the modulus x^2 + x + 1
  Fe omega_sq = omega * omega;
  CHECK(omega_sq == omega + F.one());
  CHECK(frobenius(omega) == omega + F.one());
  CHECK(frobenius_inverse(omega + F.one()) == omega);
  CHECK(frobenius(Field::gf(2).one()) == Field::gf(2).one());
  CHECK_THROWS_AS(frobenius(Field::gf(3).one()), Error);
}

TEST_CASE("absolute trace over binary fields") {
  Field F2 = Field::gf(2), F4 = Field::gf(4);
  CHECK(absolute_trace(F2.one()) == F2.one());
  Fe omega = F4.from_index(2);
  CHECK(absolute_trace(omega) == F4.one());
  CHECK(absolute_trace(F4.one()) == F4.zero());
  CHECK_THROWS_AS(absolute_trace(Field::gf(3).one()), Error);
  CHECK_THROWS_AS(absolute_trace(Field::rationals().one()), Error);
}

TEST_CASE("artin-schreier solver examples") {
  Field F2 = Field::gf(2), F4 = Field::gf(4);
  CHECK(!artin_schreier_solve(F2.one()).has_value());
  auto zero_case = artin_schreier_solve(F2.zero());
  REQUIRE(zero_case.has_value());
  CHECK(zero_case->is_zero());  // least of {0, 1}
  auto omega_case = artin_schreier_solve(F4.one());
  REQUIRE(omega_case.has_value());
  CHECK(*omega_case == F4.from_index(2));  // omega, since omega^2 + omega = 1
  CHECK_THROWS_AS(artin_schreier_solve(Field::gf(5).one()), Error);
}

TEST_CASE("artin-schreier solvability matches the trace criterion exhaustively") {
  for (unsigned k = 1; k <= 4; ++k) {
    Field F = Field::gf(1u << k);
    for (unsigned i = 0; i < F.order(); ++i) {
      Fe c = F.from_index(i);
      bool solvable = artin_schreier_solve(c).has_value();
      CHECK(solvable == absolute_trace(c).is_zero());
    }
  }
}

TEST_CASE("artin-schreier solution sets are {mu, mu+1}") {
  for (unsigned k = 1; k <= 3; ++k) {
    Field F = Field::gf(1u << k);
    for (unsigned i = 0; i < F.order(); ++i) {
      Fe c = F.from_index(i);
      std::vector<Fe> sols;
      for (unsigned m = 0; m < F.order(); ++m) {
        Fe mu = F.from_index(m);
        if (frobenius(mu) + mu == c) sols.push_back(mu);
      }
      auto least = artin_schreier_solve(c);
      if (!least) {
        CHECK(sols.empty());
      } else {
        REQUIRE(sols.size() == 2);
        CHECK(sols[1] == sols[0] + F.one());
        CHECK(*least == sols[0]);
      }
    }
  }
}

TEST_CASE("field axioms hold exhaustively on small fields") {
  for (unsigned q : {2u, 3u, 4u, 5u}) {
    Field F = Field::gf(q);
    for (unsigned a = 0; a < q; ++a)
      for (unsigned b = 0; b < q; ++b) {
        Fe x = F.from_index(a), y = F.from_index(b);
        CHECK(x + y == y + x);
        CHECK(x * y == y * x);
        if (!y.is_zero()) CHECK((x / y) * y == x);
        for (unsigned c = 0; c < q; ++c) {
          Fe z = F.from_index(c);
          CHECK((x + y) + z == x + (y + z));
          CHECK((x * y) * z == x * (y * z));
          CHECK(x * (y + z) == x * y + x * z);
        }
      }
  }
}

TEST_CASE("field axioms hold on sampled rational and extension triples") {
  Rng rng(42);
  Field Q = Field::rationals(), F9 = Field::gf(9), F8 = Field::gf(8);
  for (unsigned t = 0; t < 1000; ++t) {
    for (Field F : {Q, F9, F8}) {
      Fe x = rng.fe(F), y = rng.fe(F), z = rng.fe(F);
      CHECK((x + y) + z == x + (y + z));
      CHECK(x * y == y * x);
      CHECK(x * (y + z) == x * y + x * z);
      if (!x.is_zero()) CHECK((x.inv() * x).is_one());
    }
  }
}

TEST_CASE("frobenius is a homomorphism on all binary fields up to gf(16)") {
  for (unsigned k = 1; k <= 4; ++k) {
    Field F = Field::gf(1u << k);
    for (unsigned a = 0; a < F.order(); ++a)
      for (unsigned b = 0; b < F.order(); ++b) {
        Fe x = F.from_index(a), y = F.from_index(b);
        CHECK(frobenius(x + y) == frobenius(x) + frobenius(y));
        CHECK(frobenius(x * y) == frobenius(x) * frobenius(y));
      }
  }
}

TEST_CASE("descriptor parsing round-trips") {
  CHECK(Field::parse("gf(5)") == Field::gf(5));
  CHECK(Field::parse("q") == Field::rationals());
  Field F4 = Field::parse("gf(2^2;modulus=[1,1,1])");
  CHECK(F4 == Field::gf(4));
  CHECK(F4.name() == "gf(2^2;modulus=[1,1,1])");
  CHECK(Field::parse(F4.name()) == F4);
  CHECK_THROWS_AS(Field::parse("gf(2^2;modulus=[1,0,1])"), Error);  // reducible
  CHECK_THROWS_AS(Field::parse("gf(6)"), Error);
  CHECK_THROWS_AS(Field::parse("nonsense"), Error);
}

TEST_CASE("element text round-trips") {
  Field F4 = Field::gf(4), F7 = Field::gf(7), Q = Field::rationals();
  for (unsigned i = 0; i < 4; ++i) {
    Fe x = F4.from_index(i);
    CHECK(F4.parse_elem(x.str()) == x);
  }
  CHECK(F7.parse_elem("-1") == F7.from_int(6));
  CHECK(Q.parse_elem("3/4") == Q.from_fraction(3, 4));
  CHECK(Q.parse_elem("-7") == Q.from_int(-7));
  CHECK_THROWS_AS(Q.parse_elem("2/0"), Error);
  CHECK_THROWS_AS(F4.parse_elem("oops"), Error);
}

TEST_CASE("unsupported fields are rejected") {
  CHECK_THROWS_AS(Field::gf_prime(101), Error);
  CHECK_THROWS_AS(Field::gf_ext(2, 9), Error);  // 512 > 256
  CHECK(Field::gf(97).order() == 97);
  CHECK(Field::gf(256).order() == 256);
}
