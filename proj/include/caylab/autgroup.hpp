#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "caylab/quadform.hpp"

namespace caylab {

// Certificate pairing a claim (point-to-target agreements) with a verified
// automorphism. Construction re-verifies multiplicativity and agreement; a
// failing witness is a hard internal error.
struct AutWitness {
  LinMap map;
  std::vector<std::pair<Octonion, Octonion>> claim;  // (point, target)
  std::string transcript;

  static AutWitness make(const LinMap& map,
                         std::vector<std::pair<Octonion, Octonion>> claim,
                         const std::string& context);
};

// Invertibility plus multiplicativity on all 64 basis pairs.
bool is_automorphism(const LinMap& m);
// Theorem-level membership test: isometry fixing the unit.
bool is_local_automorphism(const LinMap& m);

// Orbit lemma, constructive: an automorphism sending x to y, given equal
// norms and traces and x, y outside F1.
AutWitness conjugating_automorphism(const Octonion& x, const Octonion& y);

// A witness agreeing with the local automorphism phi at the single point x.
AutWitness local_aut_witness(const LinMap& phi, const Octonion& x);

// Multiplicative correspondence between unital composition subalgebras,
// stored as paired bases (the unit must be in the span).
struct PartialAlgIso {
  const Algebra* alg = nullptr;
  std::vector<Octonion> domain;
  std::vector<Octonion> images;
  unsigned dim() const { return static_cast<unsigned>(domain.size()); }
};

PartialAlgIso make_partial_alg_iso(const Algebra& A, std::vector<Octonion> domain,
                                   std::vector<Octonion> images);

// Cayley-Dickson extension step: psi on S extends to S + S*y by y -> y2.
PartialAlgIso extend_iso_doubling(const PartialAlgIso& psi, const Octonion& y,
                                  const Octonion& y2);

// Lemma (division case): automorphism agreeing with phi on the 2-dimensional
// composition subalgebra K and at the extra point x.
AutWitness agree_on_K_and_x(const LinMap& phi, const SubalgebraBasis& K, const Octonion& x,
                            bool allow_split = false);

// Theorem (division case): automorphism agreeing with the local
// automorphism phi at both x and y. `experimental` admits split algebras
// when the construction's anisotropy requirements happen to hold.
AutWitness two_point_witness(const LinMap& phi, const Octonion& x, const Octonion& y,
                             bool experimental = false);

struct SplitNormalForm {
  Mat peirce_matrix;  // 3x3 action on U in the model basis u1,u2,u3
  Fe lambda;          // its determinant
  Mat dual_action;    // (A^t)^{-1} on V
};

struct TwoLocalVerdict {
  enum class Kind { automorphism, rejected, witness_set };
  Kind kind = Kind::rejected;
  std::optional<AutWitness> certificate;                 // automorphism case
  std::optional<std::pair<Octonion, Octonion>> pair;     // rejection case
  std::string explanation;
  std::optional<SplitNormalForm> normal_form;
  std::vector<AutWitness> witnesses;                     // division case
};

// Decision procedure for split algebras: either certifies the candidate as
// an automorphism or rejects it with a two-point counterexample.
TwoLocalVerdict split_two_local_decide(const LinMap& phi);

// Unique linear map through consistent pointwise samples; absent when the
// assignment is not linearly consistent.
std::optional<LinMap> linearize_samples(const Algebra& A,
                                        const std::vector<std::pair<Octonion, Octonion>>& pairs);

struct ClosureResult {
  uint64_t order = 0;
  bool packed = false;                 // gf(2) fast path
  std::vector<uint64_t> packed_elems;  // column-byte encoding
  std::vector<Mat> elems;              // generic path
};

// Breadth-first closure of invertible maps over a finite field under
// multiplication; gf(2) maps are packed into 64-bit words.
ClosureResult group_closure(const std::vector<LinMap>& generators, uint64_t cap);

// Maps fixing e1, e2 and acting as M on U and (M^t)^{-1} on V in the split
// table model; automorphisms exactly when det(M) = 1.
LinMap sl3_automorphism(const Algebra& A, const Mat& M3);

// Deterministic seeded automorphism: a product of conjugation witnesses.
LinMap random_automorphism(const Algebra& A, uint64_t seed);

// gf(2) packed helpers (column j stored in byte j).
uint64_t pack_gf2_map(const LinMap& m);
LinMap unpack_gf2_map(const Algebra& A, uint64_t packed);

}  // namespace caylab
