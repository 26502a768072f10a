#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "hallforge/quiver_category.hpp"

namespace hallforge {

/// Z_2-graded complex of projectives M1 ⇄ M0.  Each component is ⊕ P_v over
/// a vertex list (its "tops"); d1: M1 -> M0 and d0: M0 -> M1.
struct TwoComplex {
  std::vector<std::size_t> m1_tops;
  std::vector<std::size_t> m0_tops;
  RepMorphism d1;
  RepMorphism d0;

  friend bool operator==(const TwoComplex&, const TwoComplex&) = default;
};

/// M ≅ C_A ⊕ C_B* ⊕ K_P ⊕ K_Q*, with P and Q given by multiplicities of
/// indecomposable projectives and by their classes.
struct DecompositionWitness {
  IsoLabel a;
  IsoLabel b;
  std::vector<long long> p_mult;
  std::vector<long long> q_mult;
  KClass p_class;
  KClass q_class;

  friend bool operator==(const DecompositionWitness&, const DecompositionWitness&) = default;
  friend auto operator<=>(const DecompositionWitness&, const DecompositionWitness&) = default;
};

/// [M] = t^exponent · K_{cl P} ∗ K*_{cl Q} ∗ [C_A ⊕ C_B*].
struct Decomposition {
  long long exponent = 0;
  DecompositionWitness witness;
};

struct ComplexHom {
  std::size_t dim = 0;
  std::size_t homotopy_quotient_dim = 0;
};

struct ChainMap {
  RepMorphism f1;  ///< M1 -> N1
  RepMorphism f0;  ///< M0 -> N0
};

/// Extension data for 0 -> Y -> L -> X -> 0: σ1: X1 -> Y0 and σ0: X0 -> Y1.
struct ComplexCocycle {
  RepMorphism s1;
  RepMorphism s0;
};

/// Middle terms of Ext¹(X, Y) in C(A) grouped by their decomposition.
struct ExtMiddleHistogram {
  std::size_t hom_dim = 0;  ///< dim Hom_{C(A)}(X, Y)
  std::size_t ext_dim = 0;
  std::map<DecompositionWitness, std::pair<long long, std::uint64_t>> terms;  ///< witness -> (exponent, count)
};

/// The category of Z_2-graded complexes of projective representations.
class ComplexCategory {
 public:
  explicit ComplexCategory(const QuiverCategory& base) : base_(&base) {}

  const QuiverCategory& base() const noexcept { return *base_; }
  const RepObject& m1(const TwoComplex& m) const { return base_->projective(m.m1_tops); }
  const RepObject& m0(const TwoComplex& m) const { return base_->projective(m.m0_tops); }

  /// Validates shapes, that d1, d0 are representation morphisms, and d∘d = 0.
  /// Throws InvalidComplex.
  TwoComplex make_complex(std::vector<std::size_t> m1_tops, std::vector<std::size_t> m0_tops, RepMorphism d1,
                          RepMorphism d0) const;
  void validate(const TwoComplex& m) const;

  TwoComplex zero() const;
  TwoComplex shift(const TwoComplex& m) const;
  TwoComplex direct_sum(const TwoComplex& m, const TwoComplex& n) const;
  /// K_P = (P ⇄ P, d1 = Id, d0 = 0) for P with the given multiplicities.
  TwoComplex k_of(const std::vector<long long>& mult) const;
  /// K_P* = (P ⇄ P, d1 = 0, d0 = -Id).
  TwoComplex kstar_of(const std::vector<long long>& mult) const;
  /// C_A = (P_A ⇄ Q_A, d1 = f_A, d0 = 0) from the minimal resolution.
  TwoComplex c_of(const IsoLabel& a) const;
  /// C_A ⊕ C_B*.
  TwoComplex normal_form_complex(const IsoLabel& a, const IsoLabel& b) const;
  TwoComplex reassemble(const DecompositionWitness& w) const;

  /// M̂ = cl M0 - cl M1.
  KClass hat(const TwoComplex& m) const;

  /// (H0, H1) with H0 = ker d0 / im d1 and H1 = ker d1 / im d0.
  std::pair<RepObject, RepObject> homology_objects(const TwoComplex& m) const;
  std::pair<IsoLabel, IsoLabel> homology(const TwoComplex& m) const;
  /// Per-vertex ranks of a differential.
  KClass rank_vector(const RepMorphism& d) const;

  std::vector<ChainMap> chain_map_basis(const TwoComplex& m, const TwoComplex& n) const;
  ComplexHom complex_hom(const TwoComplex& m, const TwoComplex& n) const;
  bool is_chain_map(const ChainMap& f, const TwoComplex& m, const TwoComplex& n) const;
  std::optional<ChainMap> find_isomorphism(const TwoComplex& m, const TwoComplex& n) const;
  bool is_isomorphic(const TwoComplex& m, const TwoComplex& n) const;

  std::size_t ext1_dim(const TwoComplex& x, const TwoComplex& y) const;
  /// One cocycle per class of Ext¹_{C(A)}(X, Y), from a fixed transversal.
  std::vector<ComplexCocycle> ext1_classes(const TwoComplex& x, const TwoComplex& y) const;
  /// L with L_i = Y_i ⊕ X_i and d_L = [[d_Y, σ], [0, d_X]].
  TwoComplex ext_middle(const TwoComplex& x, const TwoComplex& y, const ComplexCocycle& s) const;
  /// Number of classes whose middle term is isomorphic to L (exhaustive isomorphism test).
  std::uint64_t ext1_complex_count_with_middle(const TwoComplex& x, const TwoComplex& y, const TwoComplex& l) const;
  /// Middle terms grouped by decomposition witness.
  ExtMiddleHistogram ext_middle_histogram(const TwoComplex& x, const TwoComplex& y) const;

  /// Throws InternalError if the rank vectors are inconsistent with the homology.
  Decomposition decompose(const TwoComplex& m) const;

 private:
  struct Ext1Space;
  Ext1Space ext1_space(const TwoComplex& x, const TwoComplex& y) const;

  const QuiverCategory* base_;
};

}  // namespace hallforge
