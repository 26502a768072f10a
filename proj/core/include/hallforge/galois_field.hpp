#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace hallforge {

/// Element of F_q in canonical form.
///
/// For prime q the value is the residue in [0, q).  For q = p^k the value
/// encodes the coefficient vector (c_0, ..., c_{k-1}) of a polynomial in the
/// fixed generator x as c_0 + c_1 p + ... + c_{k-1} p^{k-1}.  Equality is
/// structural because every element has exactly one encoding.
struct FieldElem {
  std::uint8_t value = 0;

  friend constexpr auto operator<=>(FieldElem, FieldElem) = default;
};

/// Finite field F_q for q in a small fixed table.
///
/// Prime powers use these irreducible polynomials:
///   q = 4: x^2 + x + 1 over F_2
///   q = 8: x^3 + x + 1 over F_2
///   q = 9: x^2 + 1     over F_3
/// All arithmetic is table driven; instances are immutable singletons.
class GaloisField {
 public:
  static const GaloisField& get(int q);
  static bool is_supported(int q);
  static std::span<const int> supported_orders();

  int order() const noexcept { return q_; }
  int characteristic() const noexcept { return p_; }
  int degree() const noexcept { return k_; }

  FieldElem zero() const noexcept { return FieldElem{0}; }
  FieldElem one() const noexcept { return FieldElem{1}; }
  /// Element with canonical index `index` (0 <= index < q).
  FieldElem element(int index) const;
  /// Image of an integer under Z -> F_p ⊂ F_q.
  FieldElem from_integer(long long n) const;

  FieldElem add(FieldElem a, FieldElem b) const noexcept { return add_[a.value * q_ + b.value]; }
  FieldElem sub(FieldElem a, FieldElem b) const noexcept { return add(a, neg(b)); }
  FieldElem mul(FieldElem a, FieldElem b) const noexcept { return mul_[a.value * q_ + b.value]; }
  FieldElem neg(FieldElem a) const noexcept { return neg_[a.value]; }
  /// Throws std::domain_error on zero.
  FieldElem inv(FieldElem a) const;
  FieldElem div(FieldElem a, FieldElem b) const { return mul(a, inv(b)); }

  /// A generator of the multiplicative group.
  FieldElem primitive_element() const noexcept { return primitive_; }
  /// 1, x, ..., x^{k-1}: a basis of F_q over F_p.
  const std::vector<FieldElem>& prime_field_basis() const noexcept { return basis_; }

  std::string to_string(FieldElem a) const;

 private:
  explicit GaloisField(int q);

  int q_;
  int p_;
  int k_;
  std::vector<FieldElem> add_;
  std::vector<FieldElem> mul_;
  std::vector<FieldElem> neg_;
  std::vector<FieldElem> inv_;
  std::vector<FieldElem> basis_;
  FieldElem primitive_;
};

}  // namespace hallforge
