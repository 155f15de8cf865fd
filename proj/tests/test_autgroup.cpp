#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "caylab/autgroup.hpp"
#include "caylab/suites.hpp"

using namespace caylab;

namespace {

Octonion bvec(const Algebra& A, unsigned i) { return A.basis_elem(i); }

std::shared_ptr<const Algebra> rational_division() {
  Field Q = Field::rationals();
  std::vector<Fe> params(3, -Q.one());
  return Algebra::by_doubling(Q, params);
}

LinMap cyclic_triple_map(const Algebra& A) {
  // e1, e2 fixed; u1->u2->u3->u1 and v1->v2->v3->v1
  Mat m(A.field(), 8, 8);
  m.at(0, 0) = A.field().one();
  m.at(1, 1) = A.field().one();
  unsigned perm[3] = {1, 2, 0};
  for (unsigned j = 0; j < 3; ++j) {
    m.at(2 + perm[j], 2 + j) = A.field().one();
    m.at(5 + perm[j], 5 + j) = A.field().one();
  }
  return LinMap(&A, m);
}

}  // namespace

TEST_CASE("automorphism membership examples") {
  auto A = Algebra::split(Field::gf(5));
  CHECK(is_automorphism(LinMap::identity(*A)));
  CHECK(is_automorphism(cyclic_triple_map(*A)));
  // scaling u3 alone breaks u1 u2 = v3 consistency
  Mat m = Mat::identity(Field::gf(5), 8);
  m.at(4, 4) = Field::gf(5).from_int(2);
  LinMap bad(A.get(), m);
  CHECK(!is_automorphism(bad));
  CHECK(!bad.automorphism_flag->evidence.empty());
}

TEST_CASE("local automorphism membership examples") {
  auto A = Algebra::split(Field::gf(5));
  Field F = Field::gf(5);
  CHECK(is_local_automorphism(cyclic_triple_map(*A)));
  Mat m = Mat::identity(F, 8);
  m.at(4, 4) = F.from_int(2);
  m.at(7, 7) = F.from_int(3);
  LinMap diag(A.get(), m);
  CHECK(is_local_automorphism(diag));
  CHECK(!is_automorphism(diag));
  // moving 1 disqualifies
  Mat m2 = Mat::identity(F, 8);
  m2.at(2, 0) = F.one();
  CHECK(!is_local_automorphism(LinMap(A.get(), m2)));
}

TEST_CASE("conjugating automorphism between nilpotents over gf(2)") {
  auto A = Algebra::split(Field::gf(2));
  AutWitness w = conjugating_automorphism(bvec(*A, 2), bvec(*A, 3));
  CHECK(is_automorphism(w.map));
  CHECK(w.map.apply(bvec(*A, 2)) == bvec(*A, 3));
}

TEST_CASE("conjugating automorphism between the split idempotents") {
  auto A = Algebra::split(Field::gf(3));
  AutWitness w = conjugating_automorphism(bvec(*A, 0), bvec(*A, 1));
  CHECK(is_automorphism(w.map));
  CHECK(w.map.apply(bvec(*A, 0)) == bvec(*A, 1));
}

TEST_CASE("conjugating automorphism preconditions") {
  auto A = Algebra::split(Field::gf(3));
  CHECK_THROWS_WITH_AS(conjugating_automorphism(A->unit(), A->unit()),
                       doctest::Contains("PreconditionViolated"), Error);
  CHECK_THROWS_WITH_AS(conjugating_automorphism(bvec(*A, 2), bvec(*A, 0)),
                       doctest::Contains("PreconditionViolated"), Error);
  AutWitness id = conjugating_automorphism(bvec(*A, 2), bvec(*A, 2));
  CHECK(id.map == LinMap::identity(*A));
}

TEST_CASE("conjugating automorphism across invariant classes and fields") {
  for (unsigned q : {2u, 3u, 4u, 5u}) {
    auto A = Algebra::split(Field::gf(q));
    Rng rng(q * 101);
    unsigned done = 0, guard = 0;
    while (done < 25 && guard < 4000) {
      ++guard;
      Octonion x = random_octonion(*A, rng);
      Octonion y = random_octonion(*A, rng);
      if (in_span_of_unit(x) || in_span_of_unit(y)) continue;
      if (norm(x) != norm(y) || trace(x) != trace(y)) continue;
      AutWitness w = conjugating_automorphism(x, y);
      CHECK(w.map.apply(x) == y);
      ++done;
    }
    CHECK(done == 25);
  }
}

TEST_CASE("conjugating automorphism over the rational division algebra") {
  auto A = rational_division();
  Rng rng(5);
  for (unsigned i = 0; i < 10; ++i) {
    Octonion x = random_octonion(*A, rng);
    if (in_span_of_unit(x)) continue;
    LinMap rho = random_orthogonal_stab1(*A, Rng::derive(77, i), 2);
    Octonion y = rho.apply(x);
    if (y == x) continue;
    AutWitness w = conjugating_automorphism(x, y);
    CHECK(w.map.apply(x) == y);
  }
}

TEST_CASE("doubling extension of a partial isomorphism") {
  auto A = rational_division();
  // identity on the quaternions span(1, i, j, ij), then l -> -l
  std::vector<Octonion> qb = {A->unit(), bvec(*A, 1), bvec(*A, 2), bvec(*A, 3)};
  PartialAlgIso idq = make_partial_alg_iso(*A, qb, qb);
  Octonion l = bvec(*A, 4);
  PartialAlgIso ext = extend_iso_doubling(idq, l, -l);
  CHECK(ext.dim() == 8);
  // identity on span(1, y)
  PartialAlgIso id1 = make_partial_alg_iso(*A, {A->unit()}, {A->unit()});
  PartialAlgIso two = extend_iso_doubling(id1, bvec(*A, 1), bvec(*A, 1));
  CHECK(two.dim() == 2);
  // norm mismatch is rejected
  auto S = Algebra::split(Field::gf(3));
  PartialAlgIso ids = make_partial_alg_iso(*S, {S->unit()}, {S->unit()});
  Octonion v = bvec(*S, 0) - bvec(*S, 1);        // norm -1
  Octonion w = bvec(*S, 2) + bvec(*S, 5);        // norm 1
  CHECK_THROWS_WITH_AS(extend_iso_doubling(ids, v, w), doctest::Contains("NormMismatch"),
                       Error);
}

TEST_CASE("agreement on K and one extra point over the rationals") {
  auto A = rational_division();
  LinMap phi = random_orthogonal_stab1(*A, 3, 4);
  SubalgebraBasis K = make_subalgebra(*A, {A->unit(), bvec(*A, 1)});
  Octonion x = bvec(*A, 2);
  AutWitness w = agree_on_K_and_x(phi, K, x);
  CHECK(w.map.apply(bvec(*A, 1)) == phi.apply(bvec(*A, 1)));
  CHECK(w.map.apply(x) == phi.apply(x));
  // a point inside K needs only the K-matching step
  AutWitness w2 = agree_on_K_and_x(phi, K, bvec(*A, 1));
  CHECK(w2.map.apply(bvec(*A, 1)) == phi.apply(bvec(*A, 1)));
  // split algebras are rejected without the experimental flag
  auto S = Algebra::split(Field::gf(3));
  SubalgebraBasis KS = make_subalgebra(*S, {S->unit(), bvec(*S, 0)});
  CHECK_THROWS_WITH_AS(agree_on_K_and_x(random_orthogonal_stab1(*S, 1, 2), KS, bvec(*S, 2)),
                       doctest::Contains("NotDivision"), Error);
}

TEST_CASE("two-point witnesses over the rational division algebra") {
  auto A = rational_division();
  LinMap phi = random_orthogonal_stab1(*A, 9, 4);
  Octonion x = bvec(*A, 1), y = bvec(*A, 2);
  AutWitness w = two_point_witness(phi, x, y);
  CHECK(w.map.apply(x) == phi.apply(x));
  CHECK(w.map.apply(y) == phi.apply(y));
  // scalar point reduces to a one-point witness
  Octonion s = Field::rationals().from_int(3) * A->unit();
  AutWitness w2 = two_point_witness(phi, s, y);
  CHECK(w2.map.apply(s) == phi.apply(s));
  CHECK(w2.map.apply(y) == phi.apply(y));
  // identity candidate yields an identity-compatible witness
  AutWitness w3 = two_point_witness(LinMap::identity(*A), x, y);
  CHECK(w3.map.apply(x) == x);
  CHECK(w3.map.apply(y) == y);
}

TEST_CASE("experimental char-2 two-point branches over split algebras") {
  for (unsigned q : {2u, 4u}) {
    auto A = Algebra::split(Field::gf(q));
    LinMap phi = random_orthogonal_stab1(*A, 13 + q, 3);
    // case gamma != 0: x = u1 + v1, y = 1 + u1
    Octonion x = bvec(*A, 2) + bvec(*A, 5);
    Octonion y = A->unit() + bvec(*A, 2);
    REQUIRE(trace(x).is_zero());
    REQUIRE(trace(y).is_zero());
    REQUIRE(polar(x, y).is_one());
    AutWitness w = two_point_witness(phi, x, y, true);
    CHECK(w.map.apply(x) == phi.apply(x));
    CHECK(w.map.apply(y) == phi.apply(y));
    // case gamma = 0: x = u1 + v1, y = u2 + v2 (totally isotropic span)
    Octonion y2 = bvec(*A, 3) + bvec(*A, 6);
    REQUIRE(polar(x, y2).is_zero());
    AutWitness w2 = two_point_witness(phi, x, y2, true);
    CHECK(w2.map.apply(x) == phi.apply(x));
    CHECK(w2.map.apply(y2) == phi.apply(y2));
    // the quaternion table identity x(xy) = n(x) y in characteristic 2
    Octonion xy = mul(x, y);
    CHECK(mul(x, xy) == norm(x) * y);
    // without the experimental flag the division precondition is enforced
    CHECK_THROWS_WITH_AS(two_point_witness(phi, x, y2), doctest::Contains("NotDivision"),
                         Error);
  }
}

TEST_CASE("split two-local decision accepts automorphisms") {
  for (unsigned q : {2u, 3u, 5u}) {
    auto A = Algebra::split(Field::gf(q));
    for (unsigned i = 0; i < 8; ++i) {
      LinMap a = random_automorphism(*A, Rng::derive(q, i));
      TwoLocalVerdict v = split_two_local_decide(a);
      CHECK(v.kind == TwoLocalVerdict::Kind::automorphism);
      REQUIRE(v.certificate.has_value());
      CHECK(is_automorphism(v.certificate->map));
    }
  }
}

TEST_CASE("split two-local decision rejects the lambda family with the proof pair") {
  auto A = Algebra::split(Field::gf(5));
  Field F = Field::gf(5);
  for (long long lam : {2, 3, 4}) {
    TwoLocalVerdict v = split_two_local_decide(lambda_diagonal_candidate(*A, F.from_int(lam)));
    CHECK(v.kind == TwoLocalVerdict::Kind::rejected);
    REQUIRE(v.pair.has_value());
    CHECK(v.pair->first == bvec(*A, 5) - bvec(*A, 2));   // v1 - u1
    CHECK(v.pair->second == bvec(*A, 4) + bvec(*A, 6));  // u3 + v2
    REQUIRE(v.normal_form.has_value());
    CHECK(v.normal_form->lambda == F.from_int(lam));
    CHECK(!v.explanation.empty());
  }
  auto A3 = Algebra::split(Field::gf(3));
  TwoLocalVerdict v3 =
      split_two_local_decide(lambda_diagonal_candidate(*A3, Field::gf(3).from_int(2)));
  CHECK(v3.kind == TwoLocalVerdict::Kind::rejected);
  CHECK(v3.pair->first == bvec(*A3, 5) - bvec(*A3, 2));
  CHECK(v3.pair->second == bvec(*A3, 4) + bvec(*A3, 6));
}

TEST_CASE("split decision rejects peirce-breaking stabilizer elements") {
  // swapping u_i and v_i is an isometry fixing 1, e1, e2 but moves U to V
  auto A = Algebra::split(Field::gf(3));
  Field F = Field::gf(3);
  Mat m(F, 8, 8);
  m.at(0, 0) = F.one();
  m.at(1, 1) = F.one();
  for (unsigned i = 0; i < 3; ++i) {
    m.at(5 + i, 2 + i) = F.one();
    m.at(2 + i, 5 + i) = F.one();
  }
  LinMap swap(A.get(), m);
  REQUIRE(is_local_automorphism(swap));
  REQUIRE(!is_automorphism(swap));
  TwoLocalVerdict v = split_two_local_decide(swap);
  CHECK(v.kind == TwoLocalVerdict::Kind::rejected);
  REQUIRE(v.pair.has_value());
  CHECK(!v.explanation.empty());
}

TEST_CASE("split decision transports through a recorded basis change") {
  Field F3 = Field::gf(3);
  std::vector<Fe> ones(3, F3.one());
  auto A = Algebra::by_doubling(F3, ones);  // split, non-table model
  REQUIRE(A->is_split());
  TwoLocalVerdict v = split_two_local_decide(LinMap::identity(*A));
  CHECK(v.kind == TwoLocalVerdict::Kind::automorphism);
  // transport the lambda candidate from the table model into this algebra
  const Mat& P = *A->split_basis_change();
  Mat model_cand = Mat::identity(F3, 8);
  model_cand.at(4, 4) = F3.from_int(2);
  model_cand.at(7, 7) = F3.from_int(2);
  LinMap cand(A.get(), P * model_cand * *P.inverse());
  REQUIRE(is_local_automorphism(cand));
  TwoLocalVerdict r = split_two_local_decide(cand);
  CHECK(r.kind == TwoLocalVerdict::Kind::rejected);
  REQUIRE(r.pair.has_value());
  // the counterexample pair comes back in this algebra's coordinates
  Octonion x = r.pair->first, yv = r.pair->second;
  CHECK(mul(x, yv) == yv);
  CHECK(mul(x, cand.apply(yv)) != cand.apply(yv));
}

TEST_CASE("verdict class is invariant under composition with automorphisms") {
  auto A = Algebra::split(Field::gf(5));
  Fe lam = Field::gf(5).from_int(2);
  LinMap cand = lambda_diagonal_candidate(*A, lam);
  for (unsigned i = 0; i < 3; ++i) {
    LinMap a = random_automorphism(*A, Rng::derive(400, i));
    CHECK(split_two_local_decide(a.compose(cand)).kind == TwoLocalVerdict::Kind::rejected);
    CHECK(split_two_local_decide(cand.compose(a)).kind == TwoLocalVerdict::Kind::rejected);
    LinMap b = random_automorphism(*A, Rng::derive(500, i));
    CHECK(split_two_local_decide(a.compose(b)).kind ==
          TwoLocalVerdict::Kind::automorphism);
  }
}

TEST_CASE("linearize recovers maps from consistent samples") {
  auto A = Algebra::split(Field::gf(3));
  LinMap theta = random_automorphism(*A, 31);
  Rng rng(77);
  std::vector<std::pair<Octonion, Octonion>> pairs;
  for (unsigned i = 0; i < 10; ++i) {
    Octonion x = random_octonion(*A, rng);
    pairs.push_back({x, theta.apply(x)});
  }
  auto m = linearize_samples(*A, pairs);
  REQUIRE(m.has_value());
  CHECK(*m == theta);
  CHECK(is_local_automorphism(*m));
  // one extra consistent point leaves the result unchanged
  Octonion extra = random_octonion(*A, rng);
  pairs.push_back({extra, theta.apply(extra)});
  auto m2 = linearize_samples(*A, pairs);
  REQUIRE(m2.has_value());
  CHECK(*m2 == theta);
}

TEST_CASE("linearize returns absent on mixed-automorphism samples") {
  auto A = Algebra::split(Field::gf(3));
  LinMap t1 = random_automorphism(*A, 41);
  LinMap t2 = cyclic_triple_map(*A);
  REQUIRE(t1 != t2);
  Rng rng(99);
  for (unsigned attempt = 0; attempt < 20; ++attempt) {
    std::vector<std::pair<Octonion, Octonion>> pairs;
    for (unsigned i = 0; i < 8; ++i) {
      Octonion x = random_octonion(*A, rng);
      pairs.push_back({x, t1.apply(x)});
    }
    Octonion z = random_octonion(*A, rng);
    if (t1.apply(z) == t2.apply(z)) continue;
    pairs.push_back({z, t2.apply(z)});
    try {
      CHECK(!linearize_samples(*A, pairs).has_value());
    } catch (const Error& e) {
      CHECK(e.code() == "UnderdeterminedSpan");
      continue;
    }
    return;
  }
  FAIL("never constructed an inconsistent spanning sample");
}

TEST_CASE("linearize rejects norm violations and non-spanning input") {
  auto A = Algebra::split(Field::gf(3));
  std::vector<std::pair<Octonion, Octonion>> bad = {{bvec(*A, 2), bvec(*A, 2) + bvec(*A, 5)}};
  CHECK_THROWS_WITH_AS(linearize_samples(*A, bad), doctest::Contains("PreconditionViolated"),
                       Error);
  std::vector<std::pair<Octonion, Octonion>> small = {{bvec(*A, 2), bvec(*A, 3)}};
  CHECK_THROWS_WITH_AS(linearize_samples(*A, small),
                       doctest::Contains("UnderdeterminedSpan"), Error);
}

TEST_CASE("group closure of the identity and of a small automorphism set") {
  auto A = Algebra::split(Field::gf(2));
  ClosureResult id = group_closure({LinMap::identity(*A)}, 10);
  CHECK(id.order == 1);
  // the cyclic map generates a subgroup of order 3
  ClosureResult cyc = group_closure({cyclic_triple_map(*A)}, 10);
  CHECK(cyc.order == 3);
  // generic path over gf(3)
  auto A3 = Algebra::split(Field::gf(3));
  ClosureResult cyc3 = group_closure({cyclic_triple_map(*A3)}, 10);
  CHECK(cyc3.order == 3);
  CHECK_THROWS_WITH_AS(group_closure({cyclic_triple_map(*A3)}, 2),
                       doctest::Contains("CapExceeded"), Error);
}

TEST_CASE("sl3 block maps are automorphisms exactly for determinant one") {
  auto A = Algebra::split(Field::gf(5));
  Field F = Field::gf(5);
  Mat M = Mat::identity(F, 3);
  M.at(0, 1) = F.from_int(3);  // elementary transvection, det 1
  LinMap t = sl3_automorphism(*A, M);
  CHECK(is_automorphism(t));
  Mat bad = Mat::identity(F, 3);
  bad.at(2, 2) = F.from_int(2);
  CHECK_THROWS_WITH_AS(sl3_automorphism(*A, bad), doctest::Contains("PreconditionViolated"),
                       Error);
}

TEST_CASE("packed gf(2) maps round-trip") {
  auto A = Algebra::split(Field::gf(2));
  LinMap c = cyclic_triple_map(*A);
  CHECK(unpack_gf2_map(*A, pack_gf2_map(c)) == c);
  LinMap r = random_orthogonal_stab1(*A, 5, 4);
  CHECK(unpack_gf2_map(*A, pack_gf2_map(r)) == r);
}

TEST_CASE("closure composition property on two-local witnesses") {
  // composites of a witness-passing map with automorphisms keep passing on
  // transported pairs
  auto A = rational_division();
  LinMap phi = random_orthogonal_stab1(*A, 21, 3);
  LinMap a = random_automorphism(*A, 22);
  Rng rng(23);
  for (unsigned i = 0; i < 4; ++i) {
    Octonion x = random_octonion(*A, rng), y = random_octonion(*A, rng);
    AutWitness base = two_point_witness(phi, x, y);
    LinMap left = a.compose(phi);
    AutWitness wl = two_point_witness(left, x, y);
    CHECK(wl.map.apply(x) == left.apply(x));
    LinMap right = phi.compose(a);
    AutWitness wr = two_point_witness(right, x, y);
    CHECK(wr.map.apply(y) == right.apply(y));
  }
}
