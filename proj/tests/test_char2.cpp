#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "caylab/char2.hpp"

using namespace caylab;

namespace {

Octonion bvec(const Algebra& A, unsigned i) { return A.basis_elem(i); }

}  // namespace

TEST_CASE("context anchors at e1 in the split table model") {
  auto A = Algebra::split(Field::gf(2));
  Char2Context ctx = make_char2_context(A);
  CHECK(ctx.a == bvec(*A, 0));  // first basis vector pairing with 1, scaled
  CHECK(ctx.w_basis.rows() == 6);
  for (unsigned i = 0; i < 6; ++i) {
    CHECK(polar(ctx.w_vec(i), A->unit()).is_zero());
    CHECK(polar(ctx.w_vec(i), ctx.a).is_zero());
  }
  CHECK_THROWS_WITH_AS(make_char2_context(Algebra::split(Field::gf(3))),
                       doctest::Contains("WrongCharacteristic"), Error);
}

TEST_CASE("restriction to C0 is a homomorphism into O(C0, n)") {
  for (unsigned q : {2u, 4u}) {
    auto A = Algebra::split(Field::gf(q));
    Char2Context ctx = make_char2_context(A);
    LinMap id = LinMap::identity(*A);
    C0Map r = restrict_to_C0(id, ctx);
    CHECK(r.m == Mat::identity(A->field(), 7));
    for (unsigned i = 0; i < 10; ++i) {
      LinMap f = random_orthogonal_stab1(*A, Rng::derive(q, i), 2);
      LinMap g = random_orthogonal_stab1(*A, Rng::derive(q, 100 + i), 3);
      C0Map rf = restrict_to_C0(f, ctx), rg = restrict_to_C0(g, ctx);
      C0Map rfg = restrict_to_C0(LinMap(A.get(), f.matrix() * g.matrix()), ctx);
      CHECK(rfg.m == rf.m * rg.m);
    }
    Mat bad = Mat::identity(A->field(), 8);
    bad.at(2, 0) = A->field().one();
    CHECK_THROWS_WITH_AS(restrict_to_C0(LinMap(A.get(), bad), ctx),
                         doctest::Contains("NotStabilizer"), Error);
  }
}

TEST_CASE("kernel of the restriction is the identity and kappa") {
  for (unsigned q : {2u, 4u}) {
    auto A = Algebra::split(Field::gf(q));
    Char2Context ctx = make_char2_context(A);
    auto kernel = kernel_phi(ctx);
    REQUIRE(kernel.size() == 2);
    LinMap id = LinMap::identity(*A);
    LinMap kappa = kernel[0] == id ? kernel[1] : kernel[0];
    CHECK((kernel[0] == id || kernel[1] == id));
    CHECK(kappa.apply(ctx.a) == ctx.a + A->unit());
    CHECK(kappa.apply(A->unit()) == A->unit());
    for (unsigned i = 0; i < 6; ++i) CHECK(kappa.apply(ctx.w_vec(i)) == ctx.w_vec(i));
    CHECK(is_isometry(kappa));
    // kappa restricts to the identity on C0
    CHECK(restrict_to_C0(kappa, ctx).m == Mat::identity(A->field(), 7));
    // norm bookkeeping: n(a + 1) = n(a) + n(a,1) + n(1) = n(a)
    CHECK(norm(ctx.a + A->unit()) == norm(ctx.a));
  }
}

TEST_CASE("decompose splits a restriction into symplectic part and w_sigma") {
  for (unsigned q : {2u, 4u}) {
    auto A = Algebra::split(Field::gf(q));
    Char2Context ctx = make_char2_context(A);
    // identity decomposes trivially
    SympDecomp d0 = decompose(restrict_to_C0(LinMap::identity(*A), ctx), ctx);
    CHECK(d0.sigma == Mat::identity(A->field(), 6));
    CHECK(vec_is_zero(d0.w_sigma));
    // a reflection in a norm-1 vector of W keeps W inside W
    Subspace W{A.get(), ctx.w_basis};
    auto v = represent_norm(W, A->field().one());
    REQUIRE(v.has_value());
    LinMap tau = reflection(*v);
    SympDecomp d1 = decompose(restrict_to_C0(tau, ctx), ctx);
    CHECK(vec_is_zero(d1.w_sigma));
    CHECK(is_symplectic(d1.sigma, ctx));
  }
}

TEST_CASE("decompose recovers a constructed nonzero w_sigma exactly") {
  auto A = Algebra::split(Field::gf(4));
  Field F = Field::gf(4);
  Char2Context ctx = make_char2_context(A);
  // phi0 built from a chosen transvection; its w_sigma is lambda-scaled u
  Subspace W{A.get(), ctx.w_basis};
  auto u = represent_norm(W, F.one());
  REQUIRE(u.has_value());
  auto ucoords = ctx.w_basis.transpose().solve(u->coords());
  REQUIRE(ucoords.has_value());
  Fe omega = F.from_index(2);
  Mat sigma = symplectic_transvection(ctx, *ucoords, omega);
  C0Map phi0 = c0map_from_symplectic(ctx, sigma);
  bool has_one_component = false;
  for (unsigned j = 1; j < 7; ++j)
    if (!phi0.m.at(0, j).is_zero()) has_one_component = true;
  CHECK(has_one_component);
  SympDecomp d = decompose(phi0, ctx);
  CHECK(d.sigma == sigma);
  CHECK(!vec_is_zero(d.w_sigma));
  // reconstruction round-trip through the derived w_sigma
  C0Map again = c0map_from_symplectic(ctx, d.sigma);
  CHECK(again.m == phi0.m);
}

TEST_CASE("extension succeeds exactly on vanishing artin-schreier obstruction") {
  auto A2 = Algebra::split(Field::gf(2));
  Char2Context ctx2 = make_char2_context(A2);
  Field F2 = Field::gf(2);
  // identity decomposition extends with mu = 0
  SympDecomp d0 = decompose(restrict_to_C0(LinMap::identity(*A2), ctx2), ctx2);
  ExtendResult e0 = extend_from_C0(d0, ctx2);
  REQUIRE(e0.map.has_value());
  CHECK(e0.mu->is_zero());
  CHECK(*e0.map == LinMap::identity(*A2));
  // raw pair with norm-1 w_sigma: obstruction 1 has trace 1 over gf(2)
  Subspace W2{A2.get(), ctx2.w_basis};
  auto w1 = represent_norm(W2, F2.one());
  REQUIRE(w1.has_value());
  auto w1c = ctx2.w_basis.transpose().solve(w1->coords());
  SympDecomp raw = make_symp_decomp(ctx2, Mat::identity(F2, 6), *w1c, false);
  ExtendResult blocked = extend_from_C0(raw, ctx2);
  CHECK(!blocked.map.has_value());
  CHECK(blocked.obstruction.is_one());
  // over gf(4) the same obstruction value extends with mu = omega
  auto A4 = Algebra::split(Field::gf(4));
  Char2Context ctx4 = make_char2_context(A4);
  Field F4 = Field::gf(4);
  Subspace W4{A4.get(), ctx4.w_basis};
  auto u = represent_norm(W4, F4.one());
  REQUIRE(u.has_value());
  auto uc = ctx4.w_basis.transpose().solve(u->coords());
  Fe omega = F4.from_index(2);
  Mat sigma = symplectic_transvection(ctx4, *uc, omega);
  SympDecomp d4 = decompose(c0map_from_symplectic(ctx4, sigma), ctx4);
  CHECK(norm(ctx4.from_w_coords(d4.w_sigma)).is_one());
  ExtendResult e4 = extend_from_C0(d4, ctx4);
  REQUIRE(e4.map.has_value());
  CHECK(*e4.mu == omega);
  CHECK(is_isometry(*e4.map));
  CHECK(e4.map->apply(A4->unit()) == A4->unit());
}

TEST_CASE("roundtrip recovers phi or phi composed with kappa") {
  for (unsigned q : {2u, 4u}) {
    auto A = Algebra::split(Field::gf(q));
    Char2Context ctx = make_char2_context(A);
    auto kernel = kernel_phi(ctx);
    LinMap kappa = kernel[0] == LinMap::identity(*A) ? kernel[1] : kernel[0];
    for (unsigned i = 0; i < 50; ++i) {
      LinMap phi = random_orthogonal_stab1(*A, Rng::derive(3 * q, i), 1 + i % 5);
      SympDecomp d = decompose(restrict_to_C0(phi, ctx), ctx);
      ExtendResult ext = extend_from_C0(d, ctx);
      REQUIRE(ext.map.has_value());
      CHECK((*ext.map == phi || *ext.map == phi.compose(kappa)));
    }
  }
}

TEST_CASE("symplectic membership test") {
  auto A = Algebra::split(Field::gf(2));
  Field F = Field::gf(2);
  Char2Context ctx = make_char2_context(A);
  CHECK(is_symplectic(Mat::identity(F, 6), ctx));
  // a shear that breaks the pairing
  Mat shear = Mat::identity(F, 6);
  shear.at(1, 0) = F.one();
  bool sympl = is_symplectic(shear, ctx);
  // whether this particular shear is symplectic depends on the pairing of
  // w1 and w2; verify the test agrees with a direct pairing check
  Octonion s0 = ctx.from_w_coords(shear.col(0));
  bool pairing_ok = true;
  for (unsigned j = 1; j < 6; ++j)
    if (polar(s0, ctx.from_w_coords(shear.col(j))) != polar(ctx.w_vec(0), ctx.w_vec(j)))
      pairing_ok = false;
  CHECK(sympl == pairing_ok);
  // transvections are always symplectic
  for (unsigned i = 0; i < 20; ++i) {
    Mat t = random_symplectic(ctx, Rng::derive(5, i), 1 + i % 3);
    CHECK(is_symplectic(t, ctx));
  }
}

TEST_CASE("symplectic reconstruction via the perfect-field square root") {
  for (unsigned q : {2u, 4u}) {
    auto A = Algebra::split(Field::gf(q));
    Char2Context ctx = make_char2_context(A);
    for (unsigned i = 0; i < 100; ++i) {
      Mat sigma = random_symplectic(ctx, Rng::derive(7 * q, i), 1 + i % 4);
      C0Map phi0 = c0map_from_symplectic(ctx, sigma);
      SympDecomp d = decompose(phi0, ctx);
      CHECK(d.sigma == sigma);
    }
  }
}

TEST_CASE("char-2 context over a doubled algebra") {
  Field F2 = Field::gf(2);
  std::vector<Fe> params = {F2.one(), F2.one(), F2.one()};
  auto A = Algebra::by_doubling(F2, params);
  Char2Context ctx = make_char2_context(A);
  CHECK(polar(ctx.a, A->unit()).is_one());
  auto kernel = kernel_phi(ctx);
  CHECK(kernel.size() == 2);
  LinMap phi = random_orthogonal_stab1(*A, 4, 3);
  SympDecomp d = decompose(restrict_to_C0(phi, ctx), ctx);
  ExtendResult ext = extend_from_C0(d, ctx);
  CHECK(ext.map.has_value());
}
