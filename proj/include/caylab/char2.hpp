#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "caylab/quadform.hpp"

namespace caylab {

// Fixed frame for the characteristic-2 analysis of the unit stabilizer:
// a is the first basis direction pairing nontrivially with 1 (scaled so
// n(a,1) = 1), K = F1 + Fa, W = K-perp, C0 = F1 + W the trace-zero
// hyperplane.
struct Char2Context {
  std::shared_ptr<const Algebra> keep;
  const Algebra* alg = nullptr;
  Octonion a;
  Mat w_basis;   // 6x8 rows, RREF
  Mat c0_basis;  // 7x8 rows: unit first, then the W rows

  Field field() const { return alg->field(); }
  Octonion w_vec(unsigned i) const { return Octonion(alg, w_basis.row(i)); }
  Octonion from_w_coords(const Vec& c) const;
};

Char2Context make_char2_context(std::shared_ptr<const Algebra> A);

// Element of O(C0, n) in the context basis (1, w1..w6).
struct C0Map {
  const Char2Context* ctx = nullptr;
  Mat m;  // 7x7
};

// The restriction homomorphism Phi on the unit stabilizer.
C0Map restrict_to_C0(const LinMap& phi, const Char2Context& ctx);

// Exactly the isometries fixing 1 and W pointwise: the identity and
// kappa : a -> a + 1.
std::vector<LinMap> kernel_phi(const Char2Context& ctx);

// phi0(w) = sigma(w) + n(w_sigma, w) 1 with sigma symplectic and
// n(w) - n(sigma(w)) = n(w_sigma, w)^2.
struct SympDecomp {
  const Char2Context* ctx = nullptr;
  Mat sigma;    // 6x6 in the W basis
  Vec w_sigma;  // length 6, W coordinates
};

SympDecomp decompose(const C0Map& phi0, const Char2Context& ctx);

// Raw constructor; verify=false admits pairs used only to exhibit the
// Artin-Schreier obstruction value.
SympDecomp make_symp_decomp(const Char2Context& ctx, Mat sigma, Vec w_sigma, bool verify);

struct ExtendResult {
  std::optional<LinMap> map;  // present iff the obstruction vanishes
  std::optional<Fe> mu;
  Fe obstruction;             // n(w_sigma)
};

// Lift a decomposition to the unit stabilizer when n(w_sigma) lies in
// {mu + mu^2}; the obstruction is checked before anything else.
ExtendResult extend_from_C0(const SympDecomp& d, const Char2Context& ctx);

bool is_symplectic(const Mat& sigma, const Char2Context& ctx);

// Symplectic transvection w -> w + lambda n(w,u) u in the W basis.
Mat symplectic_transvection(const Char2Context& ctx, const Vec& u_coords, const Fe& lambda);

// Seeded product of symplectic transvections.
Mat random_symplectic(const Char2Context& ctx, uint64_t seed, unsigned length);

// Perfect-field reconstruction: the unique phi0 in O(C0,n) over sigma.
C0Map c0map_from_symplectic(const Char2Context& ctx, const Mat& sigma);

Fe c0map_norm(const Char2Context& ctx, const Vec& c0_coords);

}  // namespace caylab
