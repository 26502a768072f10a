#pragma once

#include <compare>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <tuple>
#include <vector>

#include "hallforge/hall_algebra.hpp"
#include "hallforge/two_complex.hpp"

namespace hallforge {

/// Normal-form basis element K_α ∗ K*_β ∗ [C_A ⊕ C_B*].
struct DHTerm {
  KClass alpha;
  KClass beta;
  IsoLabel a;
  IsoLabel b;

  friend bool operator==(const DHTerm&, const DHTerm&) = default;
  friend auto operator<=>(const DHTerm&, const DHTerm&) = default;

  /// Total dimension of the homology A ⊕ B.
  int homology_dim() const { return a.total_dim() + b.total_dim(); }
  std::string to_string() const;
};

using DHElement = LinearCombination<DHTerm>;

/// Which double relation to evaluate (Sweedler notation, Δa = a₁ ⊗ a₂).
enum class RelationForm {
  /// Σ (a₂,b₁) I₊(a₁)∗I₋(b₂) = Σ (a₁,b₂) I₋(b₁)∗I₊(a₂)
  crossed,
  /// Σ (a₂,b₂) I₊(a₁)∗I₋(b₁) = Σ (a₁,b₁) I₋(b₂)∗I₊(a₂)
  literal,
};

std::string to_string(RelationForm f);

struct DoubleReport {
  std::string case_tag;  ///< "KK", "AK", "KA" or "AA"
  HallBasis a;
  HallBasis b;
  RelationForm form = RelationForm::crossed;
  CoproductVariant variant = CoproductVariant::k_inserted;
  DHElement lhs;
  DHElement rhs;
  bool equal = false;
};

struct TriangularReport {
  std::size_t products = 0;
  std::size_t rank = 0;
  bool independent = false;
  bool triangular = false;
  std::vector<std::string> failures;  ///< first few offending products
};

/// The localized Hall algebra of Z_2-graded complexes, in K-first normal form.
///
/// Products of complexes use [M]∗[N] = t^{⟨M0,N0⟩+⟨M1,N1⟩} Σ_L |Ext¹(M,N)_L| / |Hom(M,N)| [L]
/// and every middle term L is rewritten through its decomposition.
class DoubleAlgebra {
 public:
  DoubleAlgebra(const HallAlgebra& hall, const ComplexCategory& complexes) : hall_(&hall), cx_(&complexes) {}

  const HallAlgebra& hall() const noexcept { return *hall_; }
  const ComplexCategory& complexes() const noexcept { return *cx_; }
  const QuiverCategory& base() const { return cx_->base(); }
  Coeff tpow(long long k) const { return Coeff::tpow(base().q(), k); }

  DHElement unit() const;
  DHElement term(const KClass& alpha, const KClass& beta, const IsoLabel& a, const IsoLabel& b,
                 const Coeff& c = Coeff(1)) const;
  DHElement k_plus(const KClass& alpha) const;
  DHElement k_minus(const KClass& alpha) const;
  /// E_A = t^{⟨cl P_A, cl A⟩} K_{-cl P_A} ∗ [C_A].
  DHElement e(const IsoLabel& a) const;
  /// F_A = t^{⟨cl P_A, cl A⟩} K*_{-cl P_A} ∗ [C_A*].
  DHElement f(const IsoLabel& a) const;

  /// c·[M] in normal form.
  DHElement normalize(const TwoComplex& m, const Coeff& c = Coeff(1)) const;
  /// Brute-force Hall product of two arbitrary complexes, normalized.
  DHElement complex_hall_product(const TwoComplex& m, const TwoComplex& n) const;
  /// [C_A ⊕ C_B*] ∗ [C_A' ⊕ C_B'*] in normal form.  Memoized and persisted.
  std::shared_ptr<const DHElement> normal_form_product(const IsoLabel& a, const IsoLabel& b, const IsoLabel& a2,
                                                       const IsoLabel& b2) const;
  DHElement multiply(const DHElement& x, const DHElement& y) const;
  DHElement multiply(const std::vector<DHElement>& factors) const;

  /// (α, β, A, B) ↦ (β, α, B, A).
  DHElement star(const DHElement& x) const;

  /// [A]K_α ↦ E_A ∗ K_α.
  DHElement embed_plus(const HallBasis& h) const;
  DHElement embed_plus(const HallElement& h) const;
  /// [A]K_α ↦ F_A ∗ K*_α.
  DHElement embed_minus(const HallBasis& h) const;
  DHElement embed_minus(const HallElement& h) const;

  DoubleReport check_double_relation(const HallBasis& a, const HallBasis& b, RelationForm form,
                                     CoproductVariant variant) const;

  /// Products E_A ∗ K_α ∗ K*_β ∗ F_B for all classes A, B with total dimension
  /// <= bound and α, β in [-kgrid, kgrid]^vertices.
  TriangularReport check_triangular_basis(int bound, int kgrid) const;

  /// All vectors in [-radius, radius]^n in lexicographic order.
  static std::vector<KClass> k_grid(std::size_t n, int radius);

 private:
  const HallAlgebra* hall_;
  const ComplexCategory* cx_;

  using ProductKey = std::tuple<IsoLabel, IsoLabel, IsoLabel, IsoLabel>;
  mutable std::mutex mu_;
  mutable std::map<ProductKey, std::shared_ptr<const DHElement>> products_;
};

}  // namespace hallforge
