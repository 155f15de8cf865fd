#pragma once

#include <array>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "caylab/matrix.hpp"
#include "caylab/rng.hpp"

namespace caylab {

class Algebra;

// Coordinate vector of length 8 bound to an algebra descriptor.
class Octonion {
 public:
  Octonion() = default;
  Octonion(const Algebra* alg, Vec coords) : alg_(alg), c_(std::move(coords)) {}

  const Algebra* algebra() const { return alg_; }
  const Vec& coords() const { return c_; }
  const Fe& operator[](unsigned i) const { return c_[i]; }
  Fe& operator[](unsigned i) { return c_[i]; }
  bool is_zero() const { return vec_is_zero(c_); }

  friend Octonion operator+(const Octonion& a, const Octonion& b) {
    a.check_same(b);
    return Octonion(a.alg_, vec_add(a.c_, b.c_));
  }
  friend Octonion operator-(const Octonion& a, const Octonion& b) {
    a.check_same(b);
    return Octonion(a.alg_, vec_sub(a.c_, b.c_));
  }
  friend Octonion operator-(const Octonion& a) {
    Vec c = a.c_;
    for (auto& x : c) x = -x;
    return Octonion(a.alg_, std::move(c));
  }
  friend Octonion operator*(const Fe& s, const Octonion& a) {
    return Octonion(a.alg_, vec_scale(s, a.c_));
  }
  bool operator==(const Octonion& b) const {
    check_same(b);
    return c_ == b.c_;
  }
  bool operator!=(const Octonion& b) const { return !(*this == b); }

  void check_same(const Octonion& b) const {
    if (alg_ != b.alg_) fail("AlgebraMismatch", "octonions from different algebras");
  }

  std::string str() const;

 private:
  const Algebra* alg_ = nullptr;
  Vec c_;
};

enum class AlgebraTag { split_certified, division_certified, unclassified };

// 8-dimensional Cayley algebra descriptor: structure constants, quadratic
// data (basis norms + polar matrix, kept separately because in
// characteristic 2 the quadratic form is not recoverable from its polar
// form), unit coordinates and a classification certificate.
class Algebra {
 public:
  static std::shared_ptr<const Algebra> split(Field F);
  // char != 2: params = (mu1, mu2, mu3), all nonzero, v_i^2 = mu_i.
  // char == 2: params = (c, mu2, mu3) with a^2 = a + c and mu2, mu3 nonzero.
  static std::shared_ptr<const Algebra> by_doubling(Field F, const std::vector<Fe>& params);
  // Raw constructor used by the parser and by corruption tests.
  static std::shared_ptr<const Algebra> from_parts(Field F, std::vector<Fe> constants,
                                                   AlgebraTag tag, std::string certificate,
                                                   bool verify);

  Field field() const { return F_; }
  const std::string& name() const { return name_; }
  AlgebraTag tag() const { return tag_; }
  const std::string& certificate() const { return certificate_; }
  bool is_split() const { return tag_ == AlgebraTag::split_certified; }
  bool is_division() const { return tag_ == AlgebraTag::division_certified; }
  // Columns express the Table-1 model basis in this algebra's coordinates.
  const std::optional<Mat>& split_basis_change() const { return split_change_; }

  const Fe& sc(unsigned i, unsigned j, unsigned k) const {
    return constants_[(size_t(i) * 8 + j) * 8 + k];
  }
  const Fe& basis_norm(unsigned i) const { return basis_norms_[i]; }
  const Fe& basis_trace(unsigned i) const { return basis_traces_[i]; }
  const Mat& polar_matrix() const { return polar_; }
  const Vec& unit_coords() const { return unit_; }

  Octonion o(Vec coords) const { return Octonion(this, std::move(coords)); }
  Octonion from_ints(const std::array<long long, 8>& v) const;
  Octonion zero() const { return o(Vec(8, F_.zero())); }
  Octonion unit() const { return o(unit_); }
  Octonion basis_elem(unsigned i) const {
    Vec c(8, F_.zero());
    c[i] = F_.one();
    return o(std::move(c));
  }
  const Octonion& basis_product(unsigned i, unsigned j) const {
    return basis_products_[i * 8 + j];
  }

  Octonion mul(const Octonion& x, const Octonion& y) const;
  Fe norm(const Octonion& x) const;
  Fe polar(const Octonion& x, const Octonion& y) const;
  Fe trace(const Octonion& x) const;
  Octonion conj(const Octonion& x) const;

  bool structurally_equal(const Algebra& b) const;

 private:
  Algebra() = default;
  void derive_norm_data();     // degree-2 equation on the basis + polarization
  void build_sparse();         // nonzero structure-constant lists per (i,j)
  void verify_construction() const;
  void classify_and_name(const std::string& base_name);

  Field F_;
  std::string name_;
  std::vector<Fe> constants_;  // 8*8*8
  struct Term { unsigned k; Fe coef; };
  std::vector<std::vector<Term>> sparse_;  // per (i,j)
  std::vector<Octonion> basis_products_;   // per (i,j)
  Vec basis_norms_, basis_traces_;
  Mat polar_;
  Vec unit_;
  AlgebraTag tag_ = AlgebraTag::unclassified;
  std::string certificate_;
  std::optional<Mat> split_change_;
};

inline Octonion mul(const Octonion& x, const Octonion& y) {
  x.check_same(y);
  return x.algebra()->mul(x, y);
}
inline Fe norm(const Octonion& x) { return x.algebra()->norm(x); }
inline Fe polar(const Octonion& x, const Octonion& y) {
  x.check_same(y);
  return x.algebra()->polar(x, y);
}
inline Fe trace(const Octonion& x) { return x.algebra()->trace(x); }
inline Octonion conj(const Octonion& x) { return x.algebra()->conj(x); }

// xy + yx - t(x)y - t(y)x + n(x,y)1 = 0, exactly.
bool linearized_identity_check(const Octonion& x, const Octonion& y);

bool in_span_of_unit(const Octonion& x);

// Ordered basis of a unital subalgebra, closed under multiplication
// (verified at construction); regularity of the restricted norm is recorded.
struct SubalgebraBasis {
  const Algebra* alg = nullptr;
  std::vector<Octonion> basis;
  bool unital = false;
  bool regular = false;
  unsigned dim() const { return static_cast<unsigned>(basis.size()); }
};

SubalgebraBasis make_subalgebra(const Algebra& A, const std::vector<Octonion>& gens_basis);
bool restricted_norm_regular(const Algebra& A, const std::vector<Octonion>& basis);

// Cayley-Dickson step inside the ambient algebra: basis(S) followed by
// basis(S)*v; closure is verified against the ambient product.
SubalgebraBasis double_subalgebra(const SubalgebraBasis& S, const Octonion& v);

// Subspace of the 8-dimensional norm space with a canonical (reduced row
// echelon) basis, so subspace equality is basis equality.
struct Subspace {
  const Algebra* alg = nullptr;
  Mat basis;  // rows, RREF
  unsigned dim() const { return basis.rows(); }
  bool contains(const Octonion& x) const;
  Octonion vec(unsigned i) const { return Octonion(alg, basis.row(i)); }
  bool operator==(const Subspace& o) const {
    return alg == o.alg && basis == o.basis;
  }
};

Subspace span_of(const Algebra& A, const std::vector<Octonion>& vecs);
Subspace span_of_rows(const Algebra& A, const Mat& rows);

struct PeirceComponents {
  SubalgebraBasis K;
  Subspace U, V;
};

// e must be a proper idempotent (trace 1, norm 0).
PeirceComponents peirce_components(const Octonion& e);

// From a nonzero isotropic x, build an idempotent with trace 1 and norm 0.
Octonion proper_idempotent_from_isotropic(const Octonion& x);

// Completes a proper idempotent (optionally with a prescribed nilpotent in
// its U-component) to a full basis multiplying exactly as the split table.
std::optional<std::vector<Octonion>> canonical_frame(const Octonion& e,
                                                     const Octonion* preferred_u1 = nullptr);

// Split-table product pattern: entry (i, j) gives (k, sign) with k = 8 for
// a zero product.
struct TableEntry { unsigned k; int sign; };
const std::array<TableEntry, 64>& split_table();

// Sampled octonions: coordinate-wise uniform over finite fields, bounded
// numerators/denominators over Q.
Octonion random_octonion(const Algebra& A, Rng& rng);

// Over Q, the primitive integer rescaling of x (nonzero scalar multiple);
// identity over finite fields. Scale-invariant constructions use it to keep
// coefficient growth down.
Octonion primitive_scale(const Octonion& x);

std::optional<Octonion> find_isotropic(const Algebra& A, unsigned trials = 4000,
                                       uint64_t seed = 1);

struct LawReport {
  struct Entry {
    std::string law;
    uint64_t pass = 0, fail = 0;
    std::string witness;  // serialized first failure, if any
  };
  std::vector<Entry> entries;
  bool all_pass() const {
    for (const auto& e : entries)
      if (e.fail) return false;
    return true;
  }
  uint64_t total_pass() const {
    uint64_t t = 0;
    for (const auto& e : entries) t += e.pass;
    return t;
  }
};

struct LawMode {
  bool exhaustive = false;
  unsigned trials = 1000;
  uint64_t seed = 1;
};

LawReport law_check(const Algebra& A, const LawMode& mode);

}  // namespace caylab
