#pragma once

#include <optional>
#include <vector>

#include "caylab/field.hpp"

namespace caylab {

using Vec = std::vector<Fe>;

inline Vec vec_add(const Vec& a, const Vec& b) {
  Vec c(a);
  for (size_t i = 0; i < a.size(); ++i) c[i] += b[i];
  return c;
}
inline Vec vec_sub(const Vec& a, const Vec& b) {
  Vec c(a);
  for (size_t i = 0; i < a.size(); ++i) c[i] -= b[i];
  return c;
}
inline Vec vec_scale(const Fe& s, const Vec& a) {
  Vec c(a);
  for (auto& x : c) x *= s;
  return c;
}
inline bool vec_is_zero(const Vec& a) {
  for (const auto& x : a)
    if (!x.is_zero()) return false;
  return true;
}

// Dense exact matrix. Row-major storage.
class Mat {
 public:
  Mat() = default;
  Mat(Field F, unsigned rows, unsigned cols)
      : F_(F), rows_(rows), cols_(cols), a_(size_t(rows) * cols, F.zero()) {}

  static Mat identity(Field F, unsigned n) {
    Mat m(F, n, n);
    for (unsigned i = 0; i < n; ++i) m.at(i, i) = F.one();
    return m;
  }
  static Mat from_rows(Field F, const std::vector<Vec>& rows) {
    Mat m(F, static_cast<unsigned>(rows.size()),
          rows.empty() ? 0 : static_cast<unsigned>(rows[0].size()));
    for (unsigned i = 0; i < m.rows_; ++i)
      for (unsigned j = 0; j < m.cols_; ++j) m.at(i, j) = rows[i][j];
    return m;
  }

  Field field() const { return F_; }
  unsigned rows() const { return rows_; }
  unsigned cols() const { return cols_; }
  Fe& at(unsigned r, unsigned c) { return a_[size_t(r) * cols_ + c]; }
  const Fe& at(unsigned r, unsigned c) const { return a_[size_t(r) * cols_ + c]; }

  Vec row(unsigned r) const {
    return Vec(a_.begin() + size_t(r) * cols_, a_.begin() + size_t(r + 1) * cols_);
  }
  Vec col(unsigned c) const {
    Vec v;
    v.reserve(rows_);
    for (unsigned r = 0; r < rows_; ++r) v.push_back(at(r, c));
    return v;
  }
  void set_row(unsigned r, const Vec& v) {
    for (unsigned j = 0; j < cols_; ++j) at(r, j) = v[j];
  }
  void set_col(unsigned c, const Vec& v) {
    for (unsigned r = 0; r < rows_; ++r) at(r, c) = v[r];
  }

  Mat operator*(const Mat& b) const {
    if (F_.is_rationals()) return rational_product(b);
    Mat c(F_, rows_, b.cols_);
    for (unsigned i = 0; i < rows_; ++i)
      for (unsigned k = 0; k < cols_; ++k) {
        const Fe& aik = at(i, k);
        if (aik.is_zero()) continue;
        for (unsigned j = 0; j < b.cols_; ++j) c.at(i, j) += aik * b.at(k, j);
      }
    return c;
  }

  // Clearing denominators once turns the accumulation into integer work;
  // a single normalization per output entry replaces per-op gcds.
  Mat rational_product(const Mat& b) const {
    BigInt da = 1, db = 1;
    for (const Fe& x : a_) da = lcm(da, denominator(x.rat()));
    for (const Fe& x : b.a_) db = lcm(db, denominator(x.rat()));
    std::vector<BigInt> ia(a_.size()), ib(b.a_.size());
    for (size_t i = 0; i < a_.size(); ++i) {
      const BigRat& r = a_[i].rat();
      ia[i] = numerator(r) * (da / denominator(r));
    }
    for (size_t i = 0; i < b.a_.size(); ++i) {
      const BigRat& r = b.a_[i].rat();
      ib[i] = numerator(r) * (db / denominator(r));
    }
    BigInt den = da * db;
    Mat c(F_, rows_, b.cols_);
    for (unsigned i = 0; i < rows_; ++i)
      for (unsigned j = 0; j < b.cols_; ++j) {
        BigInt acc = 0;
        for (unsigned k = 0; k < cols_; ++k) {
          const BigInt& l = ia[size_t(i) * cols_ + k];
          if (!l.is_zero()) acc += l * ib[size_t(k) * b.cols_ + j];
        }
        c.at(i, j) = Fe(F_.data(), Fe::make_rat(acc, den));
      }
    return c;
  }

  Vec apply(const Vec& x) const {  // column-vector convention
    Vec y(rows_, F_.zero());
    for (unsigned j = 0; j < cols_; ++j) {
      if (x[j].is_zero()) continue;
      for (unsigned i = 0; i < rows_; ++i) y[i] += at(i, j) * x[j];
    }
    return y;
  }

  Mat transpose() const {
    Mat t(F_, cols_, rows_);
    for (unsigned i = 0; i < rows_; ++i)
      for (unsigned j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
    return t;
  }

  bool operator==(const Mat& b) const {
    if (rows_ != b.rows_ || cols_ != b.cols_ || F_ != b.F_) return false;
    for (size_t i = 0; i < a_.size(); ++i)
      if (a_[i] != b.a_[i]) return false;
    return true;
  }
  bool operator!=(const Mat& b) const { return !(*this == b); }

  // Gauss-Jordan to reduced row echelon form; returns the rank. Column
  // pivots are recorded in *pivots when given.
  unsigned rref_inplace(std::vector<unsigned>* pivots = nullptr) {
    unsigned rank = 0;
    for (unsigned c = 0; c < cols_ && rank < rows_; ++c) {
      unsigned piv = rows_;
      for (unsigned r = rank; r < rows_; ++r)
        if (!at(r, c).is_zero()) {
          piv = r;
          break;
        }
      if (piv == rows_) continue;
      if (piv != rank)
        for (unsigned j = 0; j < cols_; ++j) std::swap(at(piv, j), at(rank, j));
      Fe s = at(rank, c).inv();
      for (unsigned j = 0; j < cols_; ++j) at(rank, j) *= s;
      for (unsigned r = 0; r < rows_; ++r) {
        if (r == rank || at(r, c).is_zero()) continue;
        Fe m = at(r, c);
        for (unsigned j = 0; j < cols_; ++j) at(r, j) -= m * at(rank, j);
      }
      if (pivots) pivots->push_back(c);
      ++rank;
    }
    return rank;
  }

  unsigned rank() const {
    Mat m = *this;
    return m.rref_inplace();
  }

  Fe det() const {
    Mat m = *this;
    Fe d = F_.one();
    for (unsigned c = 0; c < cols_; ++c) {
      unsigned piv = rows_;
      for (unsigned r = c; r < rows_; ++r)
        if (!m.at(r, c).is_zero()) {
          piv = r;
          break;
        }
      if (piv == rows_) return F_.zero();
      if (piv != c) {
        for (unsigned j = 0; j < cols_; ++j) std::swap(m.at(piv, j), m.at(c, j));
        d = -d;
      }
      d *= m.at(c, c);
      Fe s = m.at(c, c).inv();
      for (unsigned r = c + 1; r < rows_; ++r) {
        if (m.at(r, c).is_zero()) continue;
        Fe f = m.at(r, c) * s;
        for (unsigned j = c; j < cols_; ++j) m.at(r, j) -= f * m.at(c, j);
      }
    }
    return d;
  }

  std::optional<Mat> inverse() const {
    Mat aug(F_, rows_, 2 * cols_);
    for (unsigned i = 0; i < rows_; ++i) {
      for (unsigned j = 0; j < cols_; ++j) aug.at(i, j) = at(i, j);
      aug.at(i, cols_ + i) = F_.one();
    }
    if (aug.rref_inplace() < rows_) return std::nullopt;
    for (unsigned i = 0; i < rows_; ++i)
      for (unsigned j = 0; j < cols_; ++j)
        if ((i == j) != aug.at(i, j).is_one() && !(i != j && aug.at(i, j).is_zero()))
          return std::nullopt;
    Mat inv(F_, rows_, cols_);
    for (unsigned i = 0; i < rows_; ++i)
      for (unsigned j = 0; j < cols_; ++j) inv.at(i, j) = aug.at(i, cols_ + j);
    return inv;
  }

  // One solution of A x = b, if any.
  std::optional<Vec> solve(const Vec& b) const {
    Mat aug(F_, rows_, cols_ + 1);
    for (unsigned i = 0; i < rows_; ++i) {
      for (unsigned j = 0; j < cols_; ++j) aug.at(i, j) = at(i, j);
      aug.at(i, cols_) = b[i];
    }
    std::vector<unsigned> piv;
    unsigned rank = aug.rref_inplace(&piv);
    for (unsigned r = 0; r < rank; ++r)
      if (piv[r] == cols_) return std::nullopt;  // inconsistent
    Vec x(cols_, F_.zero());
    for (unsigned r = 0; r < rank; ++r) x[piv[r]] = aug.at(r, cols_);
    return x;
  }

  // Basis of the kernel {x | A x = 0}, rows of the result, canonical order.
  Mat nullspace() const {
    Mat m = *this;
    std::vector<unsigned> piv;
    unsigned rank = m.rref_inplace(&piv);
    std::vector<bool> is_piv(cols_, false);
    for (unsigned c : piv) is_piv[c] = true;
    std::vector<Vec> basis;
    for (unsigned c = 0; c < cols_; ++c) {
      if (is_piv[c]) continue;
      Vec v(cols_, F_.zero());
      v[c] = F_.one();
      for (unsigned r = 0; r < rank; ++r) v[piv[r]] = -m.at(r, c);
      basis.push_back(v);
    }
    Mat out(F_, static_cast<unsigned>(basis.size()), cols_);
    for (unsigned i = 0; i < basis.size(); ++i) out.set_row(i, basis[i]);
    return out;
  }

 private:
  Field F_;
  unsigned rows_ = 0, cols_ = 0;
  std::vector<Fe> a_;
};

}  // namespace caylab
