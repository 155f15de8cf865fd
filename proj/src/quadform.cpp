#include "caylab/quadform.hpp"

#include "int_scaled.hpp"

#include <algorithm>
#include <sstream>

namespace caylab {
namespace {

Octonion col_octonion(const LinMap& m, unsigned j) {
  return Octonion(m.algebra(), m.matrix().col(j));
}

}  // namespace

bool is_isometry(const LinMap& m) {
  if (m.orthogonal_flag) return m.orthogonal_flag->value;
  const Algebra& A = *m.algebra();
  LinMap::Flag flag;
  flag.value = true;
  if (detail::algebra_integral(A)) {
    detail::ScaledMap sm = detail::scale_map(m);
    BigInt d2 = sm.den * sm.den;
    for (unsigned i = 0; i < 8 && flag.value; ++i) {
      if (detail::int_norm(A, sm.col[i]) != numerator(A.basis_norm(i).rat()) * d2) {
        flag.value = false;
        flag.evidence = "norm mismatch at basis " + std::to_string(i);
      }
      for (unsigned j = i + 1; j < 8 && flag.value; ++j)
        if (detail::int_polar(A, sm.col[i], sm.col[j]) !=
            numerator(A.polar_matrix().at(i, j).rat()) * d2) {
          flag.value = false;
          flag.evidence = "polar mismatch at basis pair (" + std::to_string(i) + "," +
                          std::to_string(j) + ")";
        }
    }
    if (flag.value && !detail::int_invertible(sm)) {
      flag.value = false;
      flag.evidence = "matrix is singular";
    }
    m.orthogonal_flag = flag;
    return flag.value;
  }
  for (unsigned i = 0; i < 8 && flag.value; ++i) {
    Octonion mi = col_octonion(m, i);
    if (norm(mi) != A.basis_norm(i)) {
      flag.value = false;
      flag.evidence = "norm mismatch at basis " + std::to_string(i);
    }
    for (unsigned j = i + 1; j < 8 && flag.value; ++j) {
      if (polar(mi, col_octonion(m, j)) != A.polar_matrix().at(i, j)) {
        flag.value = false;
        flag.evidence = "polar mismatch at basis pair (" + std::to_string(i) + "," +
                        std::to_string(j) + ")";
      }
    }
  }
  if (flag.value && !m.matrix().inverse()) {
    flag.value = false;
    flag.evidence = "matrix is singular";
  }
  m.orthogonal_flag = flag;
  return flag.value;
}

bool fixes_unit(const LinMap& m) {
  if (m.fixes_unit_flag) return m.fixes_unit_flag->value;
  const Algebra& A = *m.algebra();
  bool v = m.apply(A.unit()) == A.unit();
  m.fixes_unit_flag = LinMap::Flag{v, v ? "" : "image of 1 differs from 1"};
  return v;
}

LinMap reflection(const Octonion& raw_mirror) {
  Octonion v = primitive_scale(raw_mirror);
  const Algebra& A = *v.algebra();
  Fe nv = norm(v);
  if (nv.is_zero()) fail("IsotropicMirror", "reflection mirror has norm 0");
  Fe inv = nv.inv();
  Mat m(A.field(), 8, 8);
  for (unsigned j = 0; j < 8; ++j) {
    Octonion b = A.basis_elem(j);
    Fe c = polar(b, v) * inv;
    Vec col = b.coords();
    for (unsigned i = 0; i < 8; ++i) col[i] -= c * v[i];
    m.set_col(j, col);
  }
  return LinMap(&A, std::move(m));
}

LinMap eichler_transvection(const Octonion& a, const Octonion& b) {
  const Algebra& A = *a.algebra();
  if (!norm(a).is_zero() || !polar(a, b).is_zero())
    fail("PreconditionViolated", "eichler transvection needs isotropic a with b orthogonal to a");
  Fe nb = norm(b);
  Mat m(A.field(), 8, 8);
  for (unsigned j = 0; j < 8; ++j) {
    Octonion x = A.basis_elem(j);
    Fe pa = polar(x, a), pb = polar(x, b);
    Octonion img = x + pa * b - pb * a - (nb * pa) * a;
    m.set_col(j, img.coords());
  }
  return LinMap(&A, std::move(m));
}

Subspace orthogonal_complement(const Subspace& S) {
  const Algebra& A = *S.alg;
  Field F = A.field();
  if (S.dim() == 0) return span_of_rows(A, Mat::identity(F, 8));
  Mat constraints(F, S.dim(), 8);
  for (unsigned i = 0; i < S.dim(); ++i) {
    Vec bs = A.polar_matrix().apply(S.basis.row(i));
    constraints.set_row(i, bs);
  }
  return span_of_rows(A, constraints.nullspace());
}

Octonion project_onto(const Subspace& S, const Octonion& x) {
  const Algebra& A = *S.alg;
  Field F = A.field();
  unsigned d = S.dim();
  Mat gram(F, d, d);
  Vec rhs;
  for (unsigned i = 0; i < d; ++i) {
    Octonion si = S.vec(i);
    for (unsigned j = 0; j < d; ++j) gram.at(i, j) = polar(si, S.vec(j));
    rhs.push_back(polar(x, si));
  }
  auto c = gram.solve(rhs);
  if (!c) fail("SingularProjection", "projection needs a regular subspace");
  Octonion p = A.zero();
  for (unsigned i = 0; i < d; ++i) p = p + (*c)[i] * S.vec(i);
  return p;
}

PartialIsometry make_partial_isometry(const Algebra& alg, const std::vector<Octonion>& domain,
                                      const std::vector<Octonion>& images) {
  if (domain.size() != images.size())
    fail("NotIsometric", "domain and image lists differ in length");
  const Algebra* A = &alg;
  unsigned n = static_cast<unsigned>(domain.size());
  Field F = alg.field();
  // Row-reduce [D | T] with pivots restricted to the domain half, so the
  // canonical domain basis carries its images along.
  Mat aug(F, n, 16);
  for (unsigned i = 0; i < n; ++i) {
    for (unsigned j = 0; j < 8; ++j) {
      aug.at(i, j) = domain[i][j];
      aug.at(i, 8 + j) = images[i][j];
    }
  }
  unsigned rank = 0;
  for (unsigned c = 0; c < 8 && rank < n; ++c) {
    unsigned piv = n;
    for (unsigned r = rank; r < n; ++r)
      if (!aug.at(r, c).is_zero()) {
        piv = r;
        break;
      }
    if (piv == n) continue;
    if (piv != rank)
      for (unsigned j = 0; j < 16; ++j) std::swap(aug.at(piv, j), aug.at(rank, j));
    Fe s = aug.at(rank, c).inv();
    for (unsigned j = 0; j < 16; ++j) aug.at(rank, j) *= s;
    for (unsigned r = 0; r < n; ++r) {
      if (r == rank || aug.at(r, c).is_zero()) continue;
      Fe mfac = aug.at(r, c);
      for (unsigned j = 0; j < 16; ++j) aug.at(r, j) -= mfac * aug.at(rank, j);
    }
    ++rank;
  }
  for (unsigned r = rank; r < n; ++r)
    for (unsigned j = 8; j < 16; ++j)
      if (!aug.at(r, j).is_zero())
        fail("NotIsometric", "dependent domain vectors with inconsistent images");
  PartialIsometry p;
  p.alg = A;
  p.domain = Mat(F, rank, 8);
  p.images = Mat(F, rank, 8);
  for (unsigned i = 0; i < rank; ++i)
    for (unsigned j = 0; j < 8; ++j) {
      p.domain.at(i, j) = aug.at(i, j);
      p.images.at(i, j) = aug.at(i, 8 + j);
    }
  if (p.images.rank() != rank)
    fail("NotIsometric", "independent domain vectors with dependent images");
  for (unsigned i = 0; i < rank; ++i) {
    Octonion di = p.domain_vec(i), ti = p.image_vec(i);
    if (norm(di) != norm(ti))
      fail("NotIsometric", "norm mismatch at domain vector " + std::to_string(i));
    for (unsigned j = i + 1; j < rank; ++j)
      if (polar(di, p.domain_vec(j)) != polar(ti, p.image_vec(j)))
        fail("NotIsometric", "polar mismatch at domain pair (" + std::to_string(i) + "," +
                                 std::to_string(j) + ")");
  }
  return p;
}

namespace {

// Machinery for matching one vector at a time while fixing the already
// matched targets pointwise. All mirrors are chosen orthogonal to the
// matched span, so fixing is automatic.

struct Matcher {
  const Algebra* A;
  Field F;
  std::vector<Octonion> fixed;  // matched targets

  bool fixed_orthogonal(const Octonion& w) const {
    for (const auto& t : fixed)
      if (!polar(w, t).is_zero()) return false;
    return true;
  }

  // Single elementary isometry fixing `fixed` with c -> t, if one exists.
  std::optional<LinMap> single_move(const Octonion& c, const Octonion& t) const {
    if (c == t) return LinMap::identity(*A);
    Octonion delta = t - c;
    if (!norm(delta).is_zero()) return reflection(c - t);
    // n(delta) = 0 forces polar(c, delta) = 0; an Eichler transvection with
    // a = delta needs b orthogonal to fixed and delta with n(c,b) = -1.
    {
      unsigned rows = static_cast<unsigned>(fixed.size()) + 2;
      Mat sys(F, rows, 8);
      Vec rhs(rows, F.zero());
      unsigned r = 0;
      for (const auto& tf : fixed) sys.set_row(r++, A->polar_matrix().apply(tf.coords()));
      sys.set_row(r, A->polar_matrix().apply(delta.coords()));
      rhs[r++] = F.zero();
      sys.set_row(r, A->polar_matrix().apply(c.coords()));
      rhs[r++] = -F.one();
      if (auto b = sys.solve(rhs)) {
        LinMap e = eichler_transvection(delta, Octonion(A, *b));
        if (e.apply(c) == t) return e;
      }
    }
    // General Eichler: isotropic a orthogonal to fixed and delta with
    // n(c,a) != 0, then b = delta / n(c,a).
    {
      std::vector<Octonion> span = fixed;
      span.push_back(delta);
      Subspace W = orthogonal_complement(span_of(*A, span));
      if (auto a = first_isotropic_pairing(W, c)) {
        Fe p = polar(c, *a);
        LinMap e = eichler_transvection(*a, p.inv() * delta);
        if (e.apply(c) == t) return e;
      }
    }
    return std::nullopt;
  }

  // First isotropic vector of W (canonical order) pairing nontrivially with c.
  std::optional<Octonion> first_isotropic_pairing(const Subspace& W, const Octonion& c) const {
    unsigned d = W.dim();
    if (d == 0) return std::nullopt;
    if (F.finite()) {
      uint64_t total = 1;
      for (unsigned i = 0; i < d; ++i) {
        total *= F.order();
        if (total > (1u << 21)) return std::nullopt;  // out of enumeration budget
      }
      for (uint64_t idx = 1; idx < total; ++idx) {
        Octonion v = W_combination(W, idx);
        if (norm(v).is_zero() && !polar(c, v).is_zero()) return v;
      }
      return std::nullopt;
    }
    Rng rng(0xa11ce5ULL);
    for (unsigned t = 0; t < 4000; ++t) {
      Octonion v = A->zero();
      for (unsigned i = 0; i < d; ++i) v = v + rng.fe(F) * W.vec(i);
      if (!v.is_zero() && norm(v).is_zero() && !polar(c, v).is_zero()) return v;
    }
    return std::nullopt;
  }

  Octonion W_combination(const Subspace& W, uint64_t idx) const {
    Octonion v = A->zero();
    for (unsigned i = 0; i < W.dim(); ++i) {
      unsigned digit = static_cast<unsigned>(idx % F.order());
      idx /= F.order();
      if (digit) v = v + F.from_index(digit) * W.vec(i);
    }
    return v;
  }

  LinMap move(const Octonion& c, const Octonion& t) const {
    if (auto m = single_move(c, t)) return *m;
    // Intermediate-vector search: z with the pairings and norm of t, where
    // both hops admit elementary moves. The linear part is enumerated from a
    // particular solution plus its nullspace.
    unsigned rows = static_cast<unsigned>(fixed.size());
    Mat sys(F, rows == 0 ? 1 : rows, 8);
    Vec rhs(rows == 0 ? 1 : rows, F.zero());
    if (rows == 0) {
      sys.set_row(0, Vec(8, F.zero()));
    } else {
      for (unsigned i = 0; i < rows; ++i) {
        sys.set_row(i, A->polar_matrix().apply(fixed[i].coords()));
        rhs[i] = polar(t, fixed[i]);
      }
    }
    auto part = sys.solve(rhs);
    if (!part) fail("ExtensionSearchFailed", "inconsistent matching constraints");
    Mat null = sys.nullspace();
    Fe target_norm = norm(t);

    if (F.finite()) {
      uint64_t total = 1;
      bool enumerable = true;
      for (unsigned i = 0; i < null.rows(); ++i) {
        total *= F.order();
        if (total > (1ull << 22)) {
          enumerable = false;
          break;
        }
      }
      if (enumerable) {
        std::vector<Octonion> zs;
        for (uint64_t idx = 0; idx < total; ++idx) {
          Vec zc = *part;
          uint64_t rem = idx;
          for (unsigned i = 0; i < null.rows(); ++i) {
            unsigned digit = static_cast<unsigned>(rem % F.order());
            rem /= F.order();
            if (!digit) continue;
            Fe d = F.from_index(digit);
            Vec nr = null.row(i);
            for (unsigned m = 0; m < 8; ++m) zc[m] += d * nr[m];
          }
          Octonion z(A, zc);
          if (norm(z) != target_norm) continue;
          if (z == c || z == t) continue;
          // cheap pass first: reflections on both hops
          if (!norm(c - z).is_zero() && !norm(z - t).is_zero())
            return reflection(z - t).compose(reflection(c - z));
          zs.push_back(z);
        }
        for (const auto& z : zs) {
          auto m1 = single_move(c, z);
          if (!m1) continue;
          auto m2 = single_move(z, t);
          if (!m2) continue;
          return m2->compose(*m1);
        }
        // depth 3 over the collected nodes
        for (const auto& z1 : zs) {
          auto m1 = single_move(c, z1);
          if (!m1) continue;
          for (const auto& z2 : zs) {
            if (z2 == z1) continue;
            auto m2 = single_move(z1, z2);
            if (!m2) continue;
            auto m3 = single_move(z2, t);
            if (!m3) continue;
            return m3->compose(m2->compose(*m1));
          }
        }
      }
      fail("ExtensionSearchFailed", "no reflection/transvection chain found");
    }
    // Over Q: bounded-height seeded search for an intermediate vector.
    Rng rng(0x717e5ULL);
    for (unsigned t2 = 0; t2 < 20000; ++t2) {
      Vec zc = *part;
      for (unsigned i = 0; i < null.rows(); ++i) {
        Fe d = rng.fe(F);
        Vec nr = null.row(i);
        for (unsigned m = 0; m < 8; ++m) zc[m] += d * nr[m];
      }
      Octonion z(A, zc);
      if (norm(z) != target_norm || z == c || z == t) continue;
      if (!norm(c - z).is_zero() && !norm(z - t).is_zero())
        return reflection(z - t).compose(reflection(c - z));
    }
    fail("ExtensionSearchFailed", "bounded search over Q exhausted");
  }
};

}  // namespace

LinMap witt_extend(const PartialIsometry& p) {
  if (!p.alg) fail("NotIsometric", "empty partial isometry without an algebra");
  return witt_extend(p, LinMap::identity(*p.alg));
}

LinMap witt_extend(const PartialIsometry& p, const LinMap& start) {
  if (p.dim() == 0) {
    if (!p.alg) fail("NotIsometric", "empty partial isometry without an algebra");
    return start;
  }
  const Algebra& A = *p.alg;
  if (!is_isometry(start)) fail("NotIsometric", "starting map is not an isometry");
  LinMap sigma = start;
  Matcher matcher{&A, A.field(), {}};
  for (unsigned i = 0; i < p.dim(); ++i) {
    Octonion c = sigma.apply(p.domain_vec(i));
    Octonion t = p.image_vec(i);
    if (c != t) {
      LinMap rho = matcher.move(c, t);
      sigma = rho.compose(sigma);
    }
    matcher.fixed.push_back(t);
  }
  if (!is_isometry(sigma)) fail("InternalError", "witt extension is not an isometry");
  for (unsigned i = 0; i < p.dim(); ++i)
    if (sigma.apply(p.domain_vec(i)) != p.image_vec(i))
      fail("InternalError", "witt extension disagrees on its domain");
  return sigma;
}

namespace {

LinMap reflection_product(const Algebra& A, uint64_t seed, unsigned length, bool stab1) {
  Field F = A.field();
  Subspace mirrors = stab1 ? orthogonal_complement(span_of(A, {A.unit()}))
                           : span_of_rows(A, Mat::identity(F, 8));
  Rng rng(seed);
  LinMap m = LinMap::identity(A);
  for (unsigned r = 0; r < length; ++r) {
    bool found = false;
    for (unsigned attempt = 0; attempt < 256; ++attempt) {
      Octonion v = A.zero();
      for (unsigned i = 0; i < mirrors.dim(); ++i) {
        Fe c = F.is_rationals() ? F.from_int(rng.range(-20, 20)) : rng.fe(F);
        v = v + c * mirrors.vec(i);
      }
      if (v.is_zero() || norm(v).is_zero()) continue;
      m = reflection(v).compose(m);
      found = true;
      break;
    }
    if (!found) fail("SamplerExhausted", "no anisotropic mirror found");
  }
  return m;
}

}  // namespace

LinMap random_orthogonal_stab1(const Algebra& A, uint64_t seed, unsigned length) {
  return reflection_product(A, seed, length, true);
}

LinMap random_orthogonal(const Algebra& A, uint64_t seed, unsigned length) {
  return reflection_product(A, seed, length, false);
}

std::optional<Octonion> represent_norm(const Subspace& S, const Fe& target,
                                       unsigned height_cap) {
  const Algebra& A = *S.alg;
  Field F = A.field();
  unsigned d = S.dim();
  if (d == 0) return std::nullopt;
  if (F.is_rationals() && A.is_division()) {
    // Positive-definite certificate: nonzero vectors have positive norm.
    if (!(target.rat() > 0)) return std::nullopt;
  }
  if (F.finite()) {
    uint64_t total = 1;
    for (unsigned i = 0; i < d; ++i) total *= F.order();
    for (uint64_t idx = 1; idx < total; ++idx) {
      Octonion v = A.zero();
      uint64_t rem = idx;
      for (unsigned i = 0; i < d; ++i) {
        unsigned digit = static_cast<unsigned>(rem % F.order());
        rem /= F.order();
        if (digit) v = v + F.from_index(digit) * S.vec(i);
      }
      if (!v.is_zero() && norm(v) == target) return v;
    }
    return std::nullopt;
  }
  long long cap = static_cast<long long>(height_cap);
  for (long long num = -12; num <= 12; ++num)
    for (long long den = 1; den <= 12; ++den) {
      if (num == 0 && den > 1) continue;
      Fe a = F.from_fraction(BigInt(num), BigInt(den));
      for (unsigned i = 0; i < d; ++i) {
        Octonion v = a * S.vec(i);
        if (!v.is_zero() && norm(v) == target) return v;
      }
    }
  Rng rng(0x5ca1eULL);
  for (unsigned t = 0; t < 20000; ++t) {
    Octonion v = A.zero();
    for (unsigned i = 0; i < d; ++i) {
      Fe c = F.from_fraction(BigInt(rng.range(-cap, cap)), BigInt(rng.range(1, cap)));
      v = v + c * S.vec(i);
    }
    if (!v.is_zero() && norm(v) == target) return v;
  }
  return std::nullopt;
}

}  // namespace caylab
