#pragma once

#include <compare>
#include <string>
#include <tuple>
#include <utility>

#include "hallforge/coeff.hpp"
#include "hallforge/linear_combination.hpp"
#include "hallforge/quiver_category.hpp"

namespace hallforge {

/// The symbol [A]∗K_α.
struct HallBasis {
  IsoLabel label;
  KClass k;

  friend bool operator==(const HallBasis&, const HallBasis&) = default;
  friend auto operator<=>(const HallBasis&, const HallBasis&) = default;

  /// "[(1,0)#0]" or "[(1,0)#0]K(0,1)"
  std::string to_string() const;
};

using HallElement = LinearCombination<HallBasis>;
using TensorKey = std::pair<HallBasis, HallBasis>;
using TensorElement = LinearCombination<TensorKey>;

enum class CoproductVariant {
  /// Δ([A]K_α) = Σ c [B]K_α ⊗ [C]K_α.
  literal,
  /// Δ([A]K_α) = Σ c [B]K_{α + cl C} ⊗ [C]K_α.
  k_inserted,
};

std::string to_string(CoproductVariant v);

/// Hall algebra, twisted and extended Hall algebra of a QuiverCategory, with
/// coproduct, counit and pairing.
///
/// Hall number:   [A]⋄[B] = Σ_C |Ext¹(A,B)_C| / |Hom(A,B)| [C]
/// Twisted:       [A]∗[B] = t^{⟨A,B⟩} [A]⋄[B],  K_α∗[B] = t^{(α,B)} [B]∗K_α
/// Coproduct:     c^A_{B,C} = t^{⟨B,C⟩} |Ext¹(B,C)_A| |Aut A| / (|Hom(B,C)| |Aut B| |Aut C|)
/// Pairing:       ([A]K_α, [B]K_β) = δ_{A,B} |Aut A| t^{(α,β)}
class HallAlgebra {
 public:
  explicit HallAlgebra(const QuiverCategory& cat) : cat_(&cat) {}

  const QuiverCategory& category() const noexcept { return *cat_; }
  int q() const noexcept { return cat_->q(); }
  Coeff tpow(long long k) const { return Coeff::tpow(q(), k); }
  KClass zero_class() const { return cat_->quiver().zero_class(); }

  HallBasis basis(const IsoLabel& label) const { return HallBasis{label, zero_class()}; }
  HallBasis basis(const IsoLabel& label, const KClass& k) const { return HallBasis{label, k}; }
  HallElement symbol(const IsoLabel& label) const { return HallElement::single(basis(label)); }
  HallElement symbol(const IsoLabel& label, const KClass& k) const { return HallElement::single(basis(label, k)); }
  HallElement k_symbol(const KClass& k) const;
  HallElement unit() const;

  /// Untwisted Hall product on K-free elements.  Throws ContractViolation on K symbols.
  HallElement diamond(const HallElement& x, const HallElement& y) const;
  HallElement diamond(const IsoLabel& a, const IsoLabel& b) const;
  /// Twisted product on the extended algebra.
  HallElement star(const HallElement& x, const HallElement& y) const;
  HallElement star(const HallBasis& a, const HallBasis& b) const;

  /// c^A_{B,C}; zero when C does not occur as a subobject of A with quotient B.
  Coeff coproduct_coefficient(const IsoLabel& a, const IsoLabel& b, const IsoLabel& c) const;
  TensorElement coproduct(const HallBasis& a, CoproductVariant variant) const;
  TensorElement coproduct(const HallElement& x, CoproductVariant variant) const;
  Coeff counit(const HallElement& x) const;

  Coeff hopf_pairing(const HallBasis& a, const HallBasis& b) const;
  Coeff hopf_pairing(const HallElement& x, const HallElement& y) const;
  Coeff tensor_pairing(const TensorElement& x, const TensorElement& y) const;

  TensorElement tensor(const HallElement& x, const HallElement& y) const;
  TensorElement tensor_star(const TensorElement& x, const TensorElement& y) const;
  /// (Δ ⊗ 1) or (1 ⊗ Δ) followed by flattening into triples.
  LinearCombination<std::tuple<HallBasis, HallBasis, HallBasis>> coproduct_left(const TensorElement& x,
                                                                               CoproductVariant variant) const;
  LinearCombination<std::tuple<HallBasis, HallBasis, HallBasis>> coproduct_right(const TensorElement& x,
                                                                                CoproductVariant variant) const;
  /// (ε ⊗ 1)x and (1 ⊗ ε)x.
  HallElement counit_left(const TensorElement& x) const;
  HallElement counit_right(const TensorElement& x) const;

 private:
  const QuiverCategory* cat_;
};

}  // namespace hallforge
