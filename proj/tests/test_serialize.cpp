#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "caylab/serialize.hpp"

using namespace caylab;

TEST_CASE("octonion documents round-trip") {
  auto A = Algebra::split(Field::gf(4));
  Rng rng(1);
  for (unsigned i = 0; i < 30; ++i) {
    Octonion x = random_octonion(*A, rng);
    CHECK(octonion_from_json(*A, octonion_to_json(x)) == x);
  }
  Field Q = Field::rationals();
  std::vector<Fe> params(3, -Q.one());
  auto AQ = Algebra::by_doubling(Q, params);
  for (unsigned i = 0; i < 30; ++i) {
    Octonion x = random_octonion(*AQ, rng);
    CHECK(octonion_from_json(*AQ, octonion_to_json(x)) == x);
  }
}

TEST_CASE("algebra documents round-trip with equal descriptors") {
  auto A = Algebra::split(Field::gf(3));
  Json doc = algebra_to_json(*A);
  auto B = algebra_from_json(doc);
  CHECK(A->structurally_equal(*B));
  CHECK(B->is_split());
  CHECK(B->basis_norm(0) == A->basis_norm(0));
  CHECK(B->polar_matrix() == A->polar_matrix());
  // byte-identity of re-serialization
  CHECK(algebra_to_json(*B).dump() == doc.dump());
}

TEST_CASE("division algebra document keeps its declarative certificate") {
  Field Q = Field::rationals();
  std::vector<Fe> params(3, -Q.one());
  auto A = Algebra::by_doubling(Q, params);
  auto B = algebra_from_json(algebra_to_json(*A));
  CHECK(B->is_division());
  CHECK(B->certificate() == "positive-definite over Q");
}

TEST_CASE("linear map documents round-trip") {
  auto A = Algebra::split(Field::gf(4));
  LinMap m = random_orthogonal_stab1(*A, 9, 5);
  LinMap back = linmap_from_json(*A, linmap_to_json(m));
  CHECK(back == m);
}

TEST_CASE("partial isometry documents round-trip") {
  auto A = Algebra::split(Field::gf(3));
  LinMap sigma = random_orthogonal(*A, 4, 3);
  Rng rng(2);
  std::vector<Octonion> dom, img;
  for (unsigned i = 0; i < 3; ++i) {
    Octonion x = random_octonion(*A, rng);
    dom.push_back(x);
    img.push_back(sigma.apply(x));
  }
  PartialIsometry p = make_partial_isometry(*A, dom, img);
  PartialIsometry q = partial_isometry_from_json(*A, partial_isometry_to_json(p));
  CHECK(q.domain == p.domain);
  CHECK(q.images == p.images);
}

TEST_CASE("malformed documents raise parse errors") {
  auto A = Algebra::split(Field::gf(3));
  CHECK_THROWS_WITH_AS(octonion_from_json(*A, Json::array({"1", "2"})),
                       doctest::Contains("ParseError"), Error);
  CHECK_THROWS_WITH_AS(Field::rationals().parse_elem("2/0"),
                       doctest::Contains("ParseError"), Error);
  Json bad = algebra_to_json(*A);
  bad["unit"][0] = "2";  // inconsistent with the constants
  CHECK_THROWS_WITH_AS(algebra_from_json(bad), doctest::Contains("ParseError"), Error);
  Json noise = Json{{"field", "gf(3)"}};
  CHECK_THROWS_WITH_AS(algebra_from_json(noise), doctest::Contains("ParseError"), Error);
}

TEST_CASE("witness and verdict documents are self-contained") {
  auto A = Algebra::split(Field::gf(2));
  AutWitness w = conjugating_automorphism(A->basis_elem(2), A->basis_elem(3));
  Json jw = witness_to_json(w);
  CHECK(jw.contains("claim"));
  CHECK(jw.contains("map"));
  CHECK(jw.at("claim").size() == 1);
  LinMap back = linmap_from_json(*A, jw.at("map"));
  CHECK(back == w.map);
}
