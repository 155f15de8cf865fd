#include "caylab/char2.hpp"

namespace caylab {

Octonion Char2Context::from_w_coords(const Vec& c) const {
  Octonion v = alg->zero();
  for (unsigned i = 0; i < 6; ++i) v = v + c[i] * w_vec(i);
  return v;
}

Char2Context make_char2_context(std::shared_ptr<const Algebra> A) {
  if (A->field().characteristic() != 2)
    fail("WrongCharacteristic", "the context requires characteristic 2");
  const Algebra& alg = *A;
  Octonion one = alg.unit();
  std::optional<Octonion> a;
  for (unsigned i = 0; i < 8; ++i) {
    Fe p = polar(alg.basis_elem(i), one);
    if (!p.is_zero()) {
      a = p.inv() * alg.basis_elem(i);
      break;
    }
  }
  if (!a) fail("InternalError", "no basis vector pairs with the unit");
  Subspace W = orthogonal_complement(span_of(alg, {one, *a}));
  if (W.dim() != 6) fail("InternalError", "K-perp does not have dimension 6");
  Char2Context ctx;
  ctx.keep = std::move(A);
  ctx.alg = &alg;
  ctx.a = *a;
  ctx.w_basis = W.basis;
  ctx.c0_basis = Mat(alg.field(), 7, 8);
  ctx.c0_basis.set_row(0, one.coords());
  for (unsigned i = 0; i < 6; ++i) ctx.c0_basis.set_row(1 + i, W.basis.row(i));
  if (ctx.c0_basis.rank() != 7) fail("InternalError", "C0 basis is degenerate");
  return ctx;
}

Fe c0map_norm(const Char2Context& ctx, const Vec& c0_coords) {
  Octonion v = ctx.alg->zero();
  for (unsigned i = 0; i < 7; ++i)
    v = v + c0_coords[i] * Octonion(ctx.alg, ctx.c0_basis.row(i));
  return norm(v);
}

C0Map restrict_to_C0(const LinMap& phi, const Char2Context& ctx) {
  if (ctx.field().characteristic() != 2)
    fail("WrongCharacteristic", "restriction requires characteristic 2");
  if (!is_isometry(phi) || !fixes_unit(phi))
    fail("NotStabilizer", "map is not an isometry fixing 1");
  Mat c0t = ctx.c0_basis.transpose();
  Mat m(ctx.field(), 7, 7);
  for (unsigned j = 0; j < 7; ++j) {
    Octonion b(ctx.alg, ctx.c0_basis.row(j));
    auto coords = c0t.solve(phi.apply(b).coords());
    if (!coords) fail("InternalError", "stabilizer image leaves C0");
    m.set_col(j, *coords);
  }
  return C0Map{&ctx, m};
}

std::vector<LinMap> kernel_phi(const Char2Context& ctx) {
  const Algebra& A = *ctx.alg;
  Field F = A.field();
  if (F.characteristic() != 2)
    fail("WrongCharacteristic", "kernel computation requires characteristic 2");
  // Linear constraints on g = phi(a): pairings with 1 and W match those of a.
  Mat sys(F, 7, 8);
  Vec rhs(7, F.zero());
  sys.set_row(0, A.polar_matrix().apply(A.unit().coords()));
  rhs[0] = F.one();
  for (unsigned i = 0; i < 6; ++i)
    sys.set_row(1 + i, A.polar_matrix().apply(ctx.w_vec(i).coords()));
  auto part = sys.solve(rhs);
  if (!part) fail("InternalError", "kernel constraint system is inconsistent");
  Mat null = sys.nullspace();
  if (null.rows() != 1) fail("InternalError", "kernel constraint nullspace is not a line");

  // Candidate images a + mu 1 filtered by the quadratic condition, then
  // assembled into maps fixing 1 and W pointwise.
  Mat basis(F, 8, 8);
  basis.set_col(0, A.unit().coords());
  basis.set_col(1, ctx.a.coords());
  for (unsigned i = 0; i < 6; ++i) basis.set_col(2 + i, ctx.w_vec(i).coords());
  Mat basis_inv = *basis.inverse();

  std::vector<LinMap> out;
  Fe target = norm(ctx.a);
  for (unsigned idx = 0; idx < F.order(); ++idx) {
    Fe mu = F.from_index(idx);
    Vec g = *part;
    for (unsigned m = 0; m < 8; ++m) g[m] += mu * null.at(0, m);
    Octonion ga(&A, g);
    if (norm(ga) != target) continue;
    Mat images(F, 8, 8);
    images.set_col(0, A.unit().coords());
    images.set_col(1, ga.coords());
    for (unsigned i = 0; i < 6; ++i) images.set_col(2 + i, ctx.w_vec(i).coords());
    LinMap cand(&A, images * basis_inv);
    if (is_isometry(cand) && fixes_unit(cand)) out.push_back(cand);
  }
  return out;
}

SympDecomp decompose(const C0Map& phi0, const Char2Context& ctx) {
  Field F = ctx.field();
  // Membership in O(C0, n): exact quadratic data on the context basis.
  {
    if (!phi0.m.inverse()) fail("NotOrthogonalOnC0", "restriction matrix is singular");
    for (unsigned j = 0; j < 7; ++j) {
      Vec cj = phi0.m.col(j);
      Vec ej(7, F.zero());
      ej[j] = F.one();
      if (c0map_norm(ctx, cj) != c0map_norm(ctx, ej))
        fail("NotOrthogonalOnC0", "norm not preserved on C0 basis vector " + std::to_string(j));
    }
    for (unsigned i = 0; i < 7; ++i)
      for (unsigned j = i + 1; j < 7; ++j) {
        Octonion vi = ctx.alg->zero(), vj = ctx.alg->zero();
        for (unsigned m = 0; m < 7; ++m) {
          vi = vi + phi0.m.at(m, i) * Octonion(ctx.alg, ctx.c0_basis.row(m));
          vj = vj + phi0.m.at(m, j) * Octonion(ctx.alg, ctx.c0_basis.row(m));
        }
        Octonion bi(ctx.alg, ctx.c0_basis.row(i)), bj(ctx.alg, ctx.c0_basis.row(j));
        if (polar(vi, vj) != polar(bi, bj))
          fail("NotOrthogonalOnC0", "polar pairing not preserved on C0");
      }
    // The polar radical of C0 is F1, so phi0 must fix 1 exactly.
    for (unsigned i = 0; i < 7; ++i) {
      Fe want = i == 0 ? F.one() : F.zero();
      if (phi0.m.at(i, 0) != want)
        fail("NotOrthogonalOnC0", "restriction does not fix the radical line");
    }
  }
  SympDecomp d;
  d.ctx = &ctx;
  d.sigma = Mat(F, 6, 6);
  Vec alpha(6, F.zero());
  for (unsigned j = 0; j < 6; ++j) {
    alpha[j] = phi0.m.at(0, 1 + j);
    for (unsigned i = 0; i < 6; ++i) d.sigma.at(i, j) = phi0.m.at(1 + i, 1 + j);
  }
  // Unique w_sigma with n(w_sigma, w_j) = alpha_j.
  Mat gram(F, 6, 6);
  for (unsigned i = 0; i < 6; ++i)
    for (unsigned j = 0; j < 6; ++j) gram.at(i, j) = polar(ctx.w_vec(i), ctx.w_vec(j));
  auto ws = gram.solve(alpha);
  if (!ws) fail("InternalError", "W polar form is degenerate");
  d.w_sigma = *ws;
  if (!is_symplectic(d.sigma, ctx))
    fail("NotOrthogonalOnC0", "W component of the restriction is not symplectic");
  for (unsigned j = 0; j < 6; ++j) {
    Octonion wj = ctx.w_vec(j);
    Octonion swj = ctx.from_w_coords(d.sigma.col(j));
    if (norm(wj) - norm(swj) != alpha[j] * alpha[j])
      fail("NotOrthogonalOnC0", "norm defect is not the square of the linear form");
  }
  return d;
}

SympDecomp make_symp_decomp(const Char2Context& ctx, Mat sigma, Vec w_sigma, bool verify) {
  SympDecomp d;
  d.ctx = &ctx;
  d.sigma = std::move(sigma);
  d.w_sigma = std::move(w_sigma);
  if (verify) {
    if (!is_symplectic(d.sigma, ctx))
      fail("PreconditionViolated", "sigma is not symplectic");
    Octonion ws = ctx.from_w_coords(d.w_sigma);
    for (unsigned j = 0; j < 6; ++j) {
      Octonion wj = ctx.w_vec(j);
      Octonion swj = ctx.from_w_coords(d.sigma.col(j));
      Fe a = polar(ws, wj);
      if (norm(wj) - norm(swj) != a * a)
        fail("PreconditionViolated", "w_sigma is not compatible with sigma");
    }
  }
  return d;
}

ExtendResult extend_from_C0(const SympDecomp& d, const Char2Context& ctx) {
  const Algebra& A = *ctx.alg;
  Field F = A.field();
  Octonion ws = ctx.from_w_coords(d.w_sigma);
  ExtendResult res{std::nullopt, std::nullopt, norm(ws)};
  auto mu = artin_schreier_solve(res.obstruction);
  if (!mu) return res;

  Mat basis(F, 8, 8);
  basis.set_col(0, A.unit().coords());
  basis.set_col(1, ctx.a.coords());
  for (unsigned i = 0; i < 6; ++i) basis.set_col(2 + i, ctx.w_vec(i).coords());
  Mat images(F, 8, 8);
  images.set_col(0, A.unit().coords());
  Octonion sws = ctx.from_w_coords(d.sigma.apply(d.w_sigma));
  Octonion fa = *mu * A.unit() + ctx.a + sws;
  images.set_col(1, fa.coords());
  for (unsigned j = 0; j < 6; ++j) {
    Octonion img = ctx.from_w_coords(d.sigma.col(j)) + polar(ws, ctx.w_vec(j)) * A.unit();
    images.set_col(2 + j, img.coords());
  }
  LinMap phi(&A, images * *basis.inverse());
  if (!is_isometry(phi) || !fixes_unit(phi))
    fail("PreconditionViolated", "decomposition does not lift to an isometry");
  res.map = phi;
  res.mu = *mu;
  return res;
}

bool is_symplectic(const Mat& sigma, const Char2Context& ctx) {
  if (ctx.field().characteristic() != 2)
    fail("WrongCharacteristic", "symplectic test requires characteristic 2");
  if (!sigma.inverse()) return false;
  for (unsigned i = 0; i < 6; ++i)
    for (unsigned j = i + 1; j < 6; ++j) {
      Octonion si = ctx.from_w_coords(sigma.col(i));
      Octonion sj = ctx.from_w_coords(sigma.col(j));
      if (polar(si, sj) != polar(ctx.w_vec(i), ctx.w_vec(j))) return false;
    }
  return true;
}

Mat symplectic_transvection(const Char2Context& ctx, const Vec& u_coords, const Fe& lambda) {
  Field F = ctx.field();
  Octonion u = ctx.from_w_coords(u_coords);
  Mat t(F, 6, 6);
  for (unsigned j = 0; j < 6; ++j) {
    Fe c = lambda * polar(ctx.w_vec(j), u);
    for (unsigned i = 0; i < 6; ++i)
      t.at(i, j) = (i == j ? F.one() : F.zero()) + c * u_coords[i];
  }
  return t;
}

Mat random_symplectic(const Char2Context& ctx, uint64_t seed, unsigned length) {
  Field F = ctx.field();
  Rng rng(seed);
  Mat acc = Mat::identity(F, 6);
  for (unsigned s = 0; s < length; ++s) {
    Vec u(6, F.zero());
    bool nonzero = false;
    while (!nonzero) {
      for (unsigned i = 0; i < 6; ++i) {
        u[i] = rng.fe(F);
        if (!u[i].is_zero()) nonzero = true;
      }
    }
    acc = symplectic_transvection(ctx, u, rng.fe_nonzero(F)) * acc;
  }
  return acc;
}

C0Map c0map_from_symplectic(const Char2Context& ctx, const Mat& sigma) {
  Field F = ctx.field();
  if (!is_symplectic(sigma, ctx))
    fail("PreconditionViolated", "sigma is not symplectic");
  Mat m(F, 7, 7);
  m.at(0, 0) = F.one();
  for (unsigned j = 0; j < 6; ++j) {
    Octonion wj = ctx.w_vec(j);
    Octonion swj = ctx.from_w_coords(sigma.col(j));
    Fe alpha = frobenius_inverse(norm(wj) - norm(swj));
    m.at(0, 1 + j) = alpha;
    for (unsigned i = 0; i < 6; ++i) m.at(1 + i, 1 + j) = sigma.at(i, j);
  }
  return C0Map{&ctx, m};
}

}  // namespace caylab
