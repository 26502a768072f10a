#include "hallforge/coeff.hpp"

#include <cmath>
#include <stdexcept>

#include "hallforge/errors.hpp"

namespace hallforge {
namespace {

int integer_sqrt(int q) {
  for (int r = 0; r * r <= q; ++r)
    if (r * r == q) return r;
  return -1;
}

mpq_class parse_rational(std::string_view s) {
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
  if (s.empty()) throw std::invalid_argument("empty rational");
  mpq_class r;
  if (r.set_str(std::string(s), 10) != 0) throw std::invalid_argument("malformed rational: " + std::string(s));
  if (sgn(r.get_den()) == 0) throw std::invalid_argument("zero denominator: " + std::string(s));
  r.canonicalize();
  return r;
}

}  // namespace

Coeff::Coeff(int q, mpq_class a, mpq_class b) : q_(q), a_(std::move(a)), b_(std::move(b)) {
  if (q < 0) throw ContractViolation("negative field order");
  if (q == 0 && sgn(b_) != 0) throw ContractViolation("t-component requires a field order");
  a_.canonicalize();
  b_.canonicalize();
  canonicalize();
}

Coeff Coeff::tpow(int q, long long k) {
  if (q <= 0) throw ContractViolation("tpow requires a positive field order");
  const long long half = (k >= 0) ? k / 2 : -((-k + 1) / 2);  // floor(k / 2)
  const bool odd = (k - 2 * half) == 1;
  mpz_class qz(q);
  mpz_class p;
  mpz_pow_ui(p.get_mpz_t(), qz.get_mpz_t(), static_cast<unsigned long>(half >= 0 ? half : -half));
  mpq_class mag = half >= 0 ? mpq_class(p) : mpq_class(1, 1) / mpq_class(p);
  mag.canonicalize();
  return odd ? Coeff(q, 0, mag) : Coeff(q, mag, 0);
}

Coeff Coeff::from_ratio(long long num, long long den) {
  if (den == 0) throw std::domain_error("zero denominator");
  mpq_class r(static_cast<long>(num), 1);
  r /= mpq_class(static_cast<long>(den), 1);
  return Coeff(r);
}

void Coeff::adopt(const Coeff& o) {
  if (o.q_ == 0 || o.q_ == q_) return;
  if (q_ == 0) {
    q_ = o.q_;
    return;
  }
  throw ContractViolation("coefficients over different fields: q = " + std::to_string(q_) + " and q = " +
                          std::to_string(o.q_));
}

void Coeff::canonicalize() {
  if (q_ == 0 || sgn(b_) == 0) return;
  const int r = integer_sqrt(q_);
  if (r >= 0) {
    a_ += b_ * r;
    b_ = 0;
  }
}

Coeff& Coeff::operator+=(const Coeff& o) {
  adopt(o);
  a_ += o.a_;
  b_ += o.b_;
  return *this;
}

Coeff& Coeff::operator-=(const Coeff& o) {
  adopt(o);
  a_ -= o.a_;
  b_ -= o.b_;
  return *this;
}

Coeff& Coeff::operator*=(const Coeff& o) {
  adopt(o);
  if (sgn(b_) == 0 && sgn(o.b_) == 0) {
    a_ *= o.a_;
    return *this;
  }
  mpq_class na = a_ * o.a_ + b_ * o.b_ * q_;
  mpq_class nb = a_ * o.b_ + b_ * o.a_;
  a_ = std::move(na);
  b_ = std::move(nb);
  canonicalize();
  return *this;
}

Coeff Coeff::inverse() const {
  if (is_zero()) throw std::domain_error("division by zero coefficient");
  if (sgn(b_) == 0) {
    Coeff r = *this;
    r.a_ = 1 / a_;
    return r;
  }
  // (a + bt)^-1 = (a - bt) / (a^2 - q b^2); the norm is nonzero since q is not a square here.
  const mpq_class norm = a_ * a_ - b_ * b_ * q_;
  return Coeff(q_, a_ / norm, -b_ / norm);
}

Coeff& Coeff::operator/=(const Coeff& o) {
  adopt(o);
  return *this *= o.inverse();
}

Coeff Coeff::operator-() const {
  Coeff r = *this;
  r.a_ = -a_;
  r.b_ = -b_;
  return r;
}

std::string Coeff::to_string() const {
  if (sgn(b_) == 0) return a_.get_str();
  return a_.get_str() + " + " + b_.get_str() + "*t";
}

Coeff Coeff::parse(int q, std::string_view text) {
  const auto plus = text.find(" + ");
  if (plus == std::string_view::npos) return Coeff(q, parse_rational(text), 0);
  std::string_view rest = text.substr(plus + 3);
  while (!rest.empty() && rest.back() == ' ') rest.remove_suffix(1);
  if (rest.size() < 2 || rest.substr(rest.size() - 2) != "*t")
    throw std::invalid_argument("malformed coefficient: " + std::string(text));
  rest.remove_suffix(2);
  return Coeff(q, parse_rational(text.substr(0, plus)), parse_rational(rest));
}

}  // namespace hallforge
