#pragma once

// Integer-scaled verification helpers for maps over Q. Clearing the common
// denominator once turns the multiplicativity and isometry checks into pure
// integer arithmetic, avoiding per-operation gcd normalization.

#include <array>
#include <optional>

#include "caylab/quadform.hpp"

namespace caylab::detail {

using IntVec = std::array<BigInt, 8>;

inline bool rat_integral(const Fe& x) { return denominator(x.rat()) == 1; }

// All structure constants, norms, polar entries and the unit are integers.
inline bool algebra_integral(const Algebra& A) {
  if (!A.field().is_rationals()) return false;
  for (unsigned i = 0; i < 8; ++i) {
    if (!rat_integral(A.basis_norm(i)) || !rat_integral(A.unit_coords()[i])) return false;
    for (unsigned j = 0; j < 8; ++j) {
      if (!rat_integral(A.polar_matrix().at(i, j))) return false;
      for (unsigned k = 0; k < 8; ++k)
        if (!rat_integral(A.sc(i, j, k))) return false;
    }
  }
  return true;
}

struct ScaledMap {
  BigInt den = 1;
  std::array<IntVec, 8> col;  // den * column j
};

inline ScaledMap scale_map(const LinMap& m) {
  ScaledMap s;
  for (unsigned i = 0; i < 8; ++i)
    for (unsigned j = 0; j < 8; ++j) {
      const BigInt& d = denominator(m.matrix().at(i, j).rat());
      s.den = lcm(s.den, d);
    }
  for (unsigned j = 0; j < 8; ++j)
    for (unsigned i = 0; i < 8; ++i) {
      const BigRat& r = m.matrix().at(i, j).rat();
      s.col[j][i] = numerator(r) * (s.den / denominator(r));
    }
  return s;
}

inline IntVec int_mul(const Algebra& A, const IntVec& x, const IntVec& y) {
  IntVec out{};
  for (unsigned i = 0; i < 8; ++i) {
    if (x[i].is_zero()) continue;
    for (unsigned j = 0; j < 8; ++j) {
      if (y[j].is_zero()) continue;
      BigInt xy = x[i] * y[j];
      for (unsigned k = 0; k < 8; ++k) {
        const Fe& c = A.sc(i, j, k);
        if (!c.is_zero()) out[k] += xy * numerator(c.rat());
      }
    }
  }
  return out;
}

inline IntVec int_apply(const ScaledMap& m, const IntVec& x) {
  IntVec out{};
  for (unsigned j = 0; j < 8; ++j) {
    if (x[j].is_zero()) continue;
    for (unsigned i = 0; i < 8; ++i) out[i] += m.col[j][i] * x[j];
  }
  return out;
}

inline BigInt int_norm(const Algebra& A, const IntVec& x) {
  BigInt n = 0;
  for (unsigned i = 0; i < 8; ++i) {
    if (x[i].is_zero()) continue;
    n += x[i] * x[i] * numerator(A.basis_norm(i).rat());
    for (unsigned j = i + 1; j < 8; ++j)
      if (!x[j].is_zero()) n += x[i] * x[j] * numerator(A.polar_matrix().at(i, j).rat());
  }
  return n;
}

inline BigInt int_polar(const Algebra& A, const IntVec& x, const IntVec& y) {
  BigInt n = 0;
  for (unsigned i = 0; i < 8; ++i) {
    if (x[i].is_zero()) continue;
    for (unsigned j = 0; j < 8; ++j)
      if (!y[j].is_zero()) n += x[i] * y[j] * numerator(A.polar_matrix().at(i, j).rat());
  }
  return n;
}

// Fraction-free Gaussian elimination; nonzero result iff invertible.
inline bool int_invertible(const ScaledMap& m) {
  std::array<IntVec, 8> a;
  for (unsigned i = 0; i < 8; ++i)
    for (unsigned j = 0; j < 8; ++j) a[i][j] = m.col[j][i];
  BigInt prev = 1;
  for (unsigned k = 0; k < 8; ++k) {
    if (a[k][k].is_zero()) {
      unsigned piv = 8;
      for (unsigned r = k + 1; r < 8; ++r)
        if (!a[r][k].is_zero()) {
          piv = r;
          break;
        }
      if (piv == 8) return false;
      std::swap(a[k], a[piv]);
    }
    for (unsigned i = k + 1; i < 8; ++i) {
      for (unsigned j = k + 1; j < 8; ++j) {
        a[i][j] = a[k][k] * a[i][j] - a[i][k] * a[k][j];
        a[i][j] /= prev;  // exact by Bareiss
      }
      a[i][k] = 0;
    }
    prev = a[k][k];
  }
  return !a[7][7].is_zero();
}

inline IntVec int_octonion(const Octonion& x) {
  IntVec v{};
  for (unsigned i = 0; i < 8; ++i) v[i] = numerator(x[i].rat());
  return v;
}

}  // namespace caylab::detail
