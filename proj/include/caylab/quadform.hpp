#pragma once

#include <optional>
#include <string>

#include "caylab/algebra.hpp"

namespace caylab {

// 8x8 matrix over the field; column j is the image of basis vector j.
// Role flags are computed lazily and cached together with their evidence.
class LinMap {
 public:
  LinMap() = default;
  LinMap(const Algebra* alg, Mat m) : alg_(alg), m_(std::move(m)) {}

  static LinMap identity(const Algebra& A) {
    return LinMap(&A, Mat::identity(A.field(), 8));
  }

  const Algebra* algebra() const { return alg_; }
  const Mat& matrix() const { return m_; }
  Mat& matrix() { return m_; }

  Octonion apply(const Octonion& x) const {
    if (x.algebra() != alg_) fail("AlgebraMismatch", "map applied across algebras");
    return Octonion(alg_, m_.apply(x.coords()));
  }
  Octonion operator()(const Octonion& x) const { return apply(x); }

  LinMap compose(const LinMap& inner) const {  // this after inner
    return LinMap(alg_, m_ * inner.m_);
  }
  LinMap inverse() const {
    auto inv = m_.inverse();
    if (!inv) fail("NotInvertible", "singular linear map");
    return LinMap(alg_, *inv);
  }

  bool operator==(const LinMap& b) const { return alg_ == b.alg_ && m_ == b.m_; }
  bool operator!=(const LinMap& b) const { return !(*this == b); }

  struct Flag {
    bool value = false;
    std::string evidence;
  };
  mutable std::optional<Flag> orthogonal_flag, fixes_unit_flag, automorphism_flag;

 private:
  const Algebra* alg_ = nullptr;
  Mat m_;
};

// Exact membership test for O(C, n): basis norms, polar pairings and
// invertibility.
bool is_isometry(const LinMap& m);
bool fixes_unit(const LinMap& m);

// tau_v : x -> x - (n(x,v)/n(v)) v; valid in every characteristic.
LinMap reflection(const Octonion& v);

// Siegel/Eichler transvection for isotropic a and b orthogonal to a.
LinMap eichler_transvection(const Octonion& a, const Octonion& b);

Subspace orthogonal_complement(const Subspace& S);

// Projection of x onto a regular subspace S along S-perp.
Octonion project_onto(const Subspace& S, const Octonion& x);

// Correspondence between subspace bases that preserves the quadratic data
// (norms and polar pairings), stored in echelonized paired form.
struct PartialIsometry {
  const Algebra* alg = nullptr;
  Mat domain;  // rows, RREF
  Mat images;  // rows, transformed with the same row operations
  unsigned dim() const { return domain.rows(); }
  Octonion domain_vec(unsigned i) const { return Octonion(alg, domain.row(i)); }
  Octonion image_vec(unsigned i) const { return Octonion(alg, images.row(i)); }
};

PartialIsometry make_partial_isometry(const Algebra& A, const std::vector<Octonion>& domain,
                                      const std::vector<Octonion>& images);

// Constructive Witt extension: incremental vector matching with reflections,
// with Eichler transvections and an intermediate-vector search when no
// single anisotropic mirror works. A starting isometry that already matches
// a prefix of the domain skips those steps.
LinMap witt_extend(const PartialIsometry& p);
LinMap witt_extend(const PartialIsometry& p, const LinMap& start);

// Product of `length` reflections in seeded mirrors orthogonal to 1; the
// result is an isometry fixing the unit.
LinMap random_orthogonal_stab1(const Algebra& A, uint64_t seed, unsigned length);

// General isometry sampler (mirrors not constrained to 1-perp); test helper.
LinMap random_orthogonal(const Algebra& A, uint64_t seed, unsigned length);

// Vector of prescribed norm inside a subspace: deterministic enumeration
// over finite fields, bounded-height search over Q.
std::optional<Octonion> represent_norm(const Subspace& S, const Fe& target,
                                       unsigned height_cap = 50);

}  // namespace caylab
