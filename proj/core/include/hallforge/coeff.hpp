#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace hallforge {

/// Exact element a + b·t of Q(√q), t² = q.
///
/// A coefficient created without a field order (q = 0) is a plain rational
/// and combines with any other coefficient.  Mixing two different nonzero
/// orders is a contract violation.  For q = 4 and q = 9 the representation is
/// always reduced to b = 0.
class Coeff {
 public:
  Coeff() = default;
  Coeff(long long n) : a_(static_cast<long>(n)) {}  // NOLINT(google-explicit-constructor)
  explicit Coeff(mpq_class a) : a_(std::move(a)) { a_.canonicalize(); }
  Coeff(int q, mpq_class a, mpq_class b);

  /// t^k reduced via t² = q; k may be negative.
  static Coeff tpow(int q, long long k);
  static Coeff from_ratio(long long num, long long den);

  const mpq_class& a() const noexcept { return a_; }
  const mpq_class& b() const noexcept { return b_; }
  int q() const noexcept { return q_; }

  bool is_zero() const { return sgn(a_) == 0 && sgn(b_) == 0; }
  bool is_one() const { return a_ == 1 && sgn(b_) == 0; }

  Coeff& operator+=(const Coeff& o);
  Coeff& operator-=(const Coeff& o);
  Coeff& operator*=(const Coeff& o);
  /// Throws std::domain_error when `o` is zero.
  Coeff& operator/=(const Coeff& o);

  friend Coeff operator+(Coeff x, const Coeff& y) { return x += y; }
  friend Coeff operator-(Coeff x, const Coeff& y) { return x -= y; }
  friend Coeff operator*(Coeff x, const Coeff& y) { return x *= y; }
  friend Coeff operator/(Coeff x, const Coeff& y) { return x /= y; }
  Coeff operator-() const;

  /// Throws std::domain_error on zero.
  Coeff inverse() const;

  /// Equality of canonical forms.  An untyped rational equals a typed
  /// coefficient with the same a and b = 0.
  friend bool operator==(const Coeff& x, const Coeff& y) { return x.a_ == y.a_ && x.b_ == y.b_; }

  /// "a + b*t" with exact rational components, e.g. "0 + 1/2*t"; just "a" when b = 0.
  std::string to_string() const;
  /// Inverse of to_string; also accepts a bare rational "a".
  static Coeff parse(int q, std::string_view text);

 private:
  void adopt(const Coeff& o);
  void canonicalize();

  int q_ = 0;
  mpq_class a_{0};
  mpq_class b_{0};
};

}  // namespace hallforge
