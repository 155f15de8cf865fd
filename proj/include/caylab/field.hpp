#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "caylab/error.hpp"

namespace caylab {

using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

enum class FieldKind { prime, extension, rationals };

// Immutable descriptor of a supported field: GF(p) with p <= 97, GF(p^k)
// with p^k <= 256 (modulus verified irreducible at construction), or exact
// rationals. Finite fields carry full arithmetic tables; elements are
// canonical indices in [0, q) encoding the coefficient tuple c0 + c1*p + ...
struct FieldData {
  FieldKind kind = FieldKind::rationals;
  unsigned p = 0, k = 0, q = 0;
  std::vector<unsigned> modulus;  // monic, length k+1, constant term first
  std::string name;

  std::vector<uint8_t> add_t, mul_t;   // q*q
  std::vector<uint8_t> neg_t, inv_t;   // q
  std::vector<uint8_t> frob_t, sqrt_t; // q, characteristic 2 only

  unsigned add(unsigned a, unsigned b) const { return add_t[a * q + b]; }
  unsigned mul(unsigned a, unsigned b) const { return mul_t[a * q + b]; }
  unsigned neg(unsigned a) const { return neg_t[a]; }
  unsigned characteristic() const { return kind == FieldKind::rationals ? 0 : p; }
};

class Fe;

class Field {
 public:
  Field() = default;

  static Field gf(unsigned q);  // q = p or p^k, default modulus
  static Field gf_prime(unsigned p);
  static Field gf_ext(unsigned p, unsigned k, std::vector<unsigned> modulus = {});
  static Field rationals();
  // "gf(5)" | "gf(2^2)" | "gf(2^2;modulus=[1,1,1])" | "q"
  static Field parse(const std::string& text);

  FieldKind kind() const { return d_->kind; }
  bool finite() const { return d_->kind != FieldKind::rationals; }
  bool is_rationals() const { return d_->kind == FieldKind::rationals; }
  unsigned characteristic() const { return d_->characteristic(); }
  unsigned p() const { return d_->p; }
  unsigned degree() const { return d_->kind == FieldKind::extension ? d_->k : 1; }
  unsigned order() const { return d_->q; }  // finite only
  const std::string& name() const { return d_->name; }
  const FieldData* data() const { return d_; }

  Fe zero() const;
  Fe one() const;
  Fe from_int(long long n) const;
  Fe from_index(unsigned idx) const;  // finite only
  Fe from_fraction(const BigInt& num, const BigInt& den) const;
  Fe parse_elem(const std::string& text) const;

  bool operator==(const Field& o) const { return d_ == o.d_; }
  bool operator!=(const Field& o) const { return d_ != o.d_; }

 private:
  explicit Field(const FieldData* d) : d_(d) {}
  const FieldData* d_ = nullptr;
  friend class Fe;
};

// Exact field element with canonical representation: residue index for
// finite fields, normalized fraction for the rationals. Equality is
// structural and sound because representations are canonical.
class Fe {
 public:
  Fe() = default;
  Fe(const FieldData* f, unsigned v) : f_(f), v_(v) {}
  Fe(const FieldData* f, BigRat r) : f_(f), r_(std::move(r)) {}

  Field field() const { return Field(f_); }
  const FieldData* data() const { return f_; }
  bool valid() const { return f_ != nullptr; }
  bool finite() const { return f_->kind != FieldKind::rationals; }
  unsigned index() const { return v_; }
  const BigRat& rat() const { return r_; }

  bool is_zero() const {
    return finite() ? v_ == 0 : r_.is_zero();
  }
  bool is_one() const {
    return finite() ? v_ == 1 : r_ == 1;
  }

  friend Fe operator+(const Fe& a, const Fe& b) {
    a.check_same(b);
    if (a.finite()) return Fe(a.f_, a.f_->add(a.v_, b.v_));
    return Fe(a.f_, a.r_ + b.r_);
  }
  friend Fe operator-(const Fe& a, const Fe& b) {
    a.check_same(b);
    if (a.finite()) return Fe(a.f_, a.f_->add(a.v_, a.f_->neg(b.v_)));
    return Fe(a.f_, a.r_ - b.r_);
  }
  friend Fe operator-(const Fe& a) {
    if (a.finite()) return Fe(a.f_, a.f_->neg(a.v_));
    return Fe(a.f_, -a.r_);
  }
  friend Fe operator*(const Fe& a, const Fe& b) {
    a.check_same(b);
    if (a.finite()) return Fe(a.f_, a.f_->mul(a.v_, b.v_));
    return Fe(a.f_, a.r_ * b.r_);
  }
  friend Fe operator/(const Fe& a, const Fe& b) { return a * b.inv(); }

  Fe& operator+=(const Fe& b) { *this = *this + b; return *this; }
  Fe& operator-=(const Fe& b) { *this = *this - b; return *this; }
  Fe& operator*=(const Fe& b) { *this = *this * b; return *this; }

  Fe inv() const {
    if (is_zero()) fail("ZeroInversion", "inverse of zero in " + f_->name);
    if (finite()) return Fe(f_, f_->inv_t[v_]);
    return Fe(f_, make_rat(denominator(r_), numerator(r_)));
  }

  // cpp_rational rejects negative denominators; normalize the sign first.
  static BigRat make_rat(BigInt num, BigInt den) {
    if (den < 0) {
      num = -num;
      den = -den;
    }
    return BigRat(num, den);
  }

  Fe pow(long long e) const;

  bool operator==(const Fe& b) const {
    check_same(b);
    return finite() ? v_ == b.v_ : r_ == b.r_;
  }
  bool operator!=(const Fe& b) const { return !(*this == b); }

  std::string str() const;

  void check_same(const Fe& b) const {
    if (f_ != b.f_) fail("FieldMismatch", "elements of different fields");
  }

 private:
  const FieldData* f_ = nullptr;
  unsigned v_ = 0;
  BigRat r_;
};

// x -> x^2, the Frobenius endomorphism; characteristic 2 only.
Fe frobenius(const Fe& x);
// Unique square root over the (perfect) supported char-2 fields.
Fe frobenius_inverse(const Fe& x);
// x + x^2 + ... + x^(2^(k-1)) into the prime subfield; GF(2^k) only.
Fe absolute_trace(const Fe& x);
// Least mu with mu^2 + mu = c, if one exists; characteristic 2 only.
std::optional<Fe> artin_schreier_solve(const Fe& c);

}  // namespace caylab
