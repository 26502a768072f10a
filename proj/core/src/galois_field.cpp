#include "hallforge/galois_field.hpp"

#include <array>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>

#include "hallforge/errors.hpp"

namespace hallforge {
namespace {

constexpr std::array<int, 7> kSupported = {2, 3, 4, 5, 7, 8, 9};

struct FieldParams {
  int p;
  int k;
  // Low-order coefficients c_0..c_{k-1} of the monic modulus x^k + ... + c_0.
  std::vector<int> modulus;
};

FieldParams params_for(int q) {
  switch (q) {
    case 2: return {2, 1, {}};
    case 3: return {3, 1, {}};
    case 5: return {5, 1, {}};
    case 7: return {7, 1, {}};
    case 4: return {2, 2, {1, 1}};     // x^2 + x + 1
    case 8: return {2, 3, {1, 1, 0}};  // x^3 + x + 1
    case 9: return {3, 2, {1, 0}};     // x^2 + 1
    default: break;
  }
  throw UnsupportedField("unsupported field order q = " + std::to_string(q) +
                         " (supported: 2, 3, 4, 5, 7, 8, 9)");
}

std::vector<int> digits(int value, int p, int k) {
  std::vector<int> out(k);
  for (int i = 0; i < k; ++i) {
    out[i] = value % p;
    value /= p;
  }
  return out;
}

int undigits(const std::vector<int>& d, int p) {
  int v = 0;
  for (int i = static_cast<int>(d.size()) - 1; i >= 0; --i) v = v * p + d[i];
  return v;
}

}  // namespace

GaloisField::GaloisField(int q) : q_(q) {
  const FieldParams params = params_for(q);
  p_ = params.p;
  k_ = params.k;
  add_.resize(q * q);
  mul_.resize(q * q);
  neg_.resize(q);
  inv_.resize(q);

  for (int a = 0; a < q; ++a) {
    const auto da = digits(a, p_, k_);
    std::vector<int> dn(k_);
    for (int i = 0; i < k_; ++i) dn[i] = (p_ - da[i]) % p_;
    neg_[a] = FieldElem{static_cast<std::uint8_t>(undigits(dn, p_))};
    for (int b = 0; b < q; ++b) {
      const auto db = digits(b, p_, k_);
      std::vector<int> ds(k_);
      for (int i = 0; i < k_; ++i) ds[i] = (da[i] + db[i]) % p_;
      add_[a * q + b] = FieldElem{static_cast<std::uint8_t>(undigits(ds, p_))};

      std::vector<int> prod(2 * k_ - 1, 0);
      for (int i = 0; i < k_; ++i)
        for (int j = 0; j < k_; ++j) prod[i + j] = (prod[i + j] + da[i] * db[j]) % p_;
      // Reduce x^d for d >= k using x^k = -(c_0 + ... + c_{k-1} x^{k-1}).
      for (int d = 2 * k_ - 2; d >= k_; --d) {
        const int c = prod[d];
        if (c == 0) continue;
        prod[d] = 0;
        for (int i = 0; i < k_; ++i)
          prod[d - k_ + i] = ((prod[d - k_ + i] - c * params.modulus[i]) % p_ + p_) % p_;
      }
      prod.resize(k_);
      mul_[a * q + b] = FieldElem{static_cast<std::uint8_t>(undigits(prod, p_))};
    }
  }
  for (int a = 1; a < q; ++a)
    for (int b = 1; b < q; ++b)
      if (mul_[a * q + b].value == 1) inv_[a] = FieldElem{static_cast<std::uint8_t>(b)};

  for (int i = 0; i < k_; ++i) {
    int v = 1;
    for (int j = 0; j < i; ++j) v *= p_;
    basis_.push_back(FieldElem{static_cast<std::uint8_t>(v)});
  }

  // Smallest-index generator of the multiplicative group.
  primitive_ = one();
  for (int g = 2; g < q; ++g) {
    int order = 1;
    FieldElem x{static_cast<std::uint8_t>(g)};
    while (x.value != 1) {
      x = mul(x, FieldElem{static_cast<std::uint8_t>(g)});
      ++order;
    }
    if (order == q - 1) {
      primitive_ = FieldElem{static_cast<std::uint8_t>(g)};
      break;
    }
  }
}

const GaloisField& GaloisField::get(int q) {
  static std::mutex mu;
  static std::map<int, std::unique_ptr<GaloisField>> fields;
  std::lock_guard lock(mu);
  auto it = fields.find(q);
  if (it == fields.end()) it = fields.emplace(q, std::unique_ptr<GaloisField>(new GaloisField(q))).first;
  return *it->second;
}

bool GaloisField::is_supported(int q) {
  for (int s : kSupported)
    if (s == q) return true;
  return false;
}

std::span<const int> GaloisField::supported_orders() { return kSupported; }

FieldElem GaloisField::element(int index) const {
  if (index < 0 || index >= q_) throw ContractViolation("field element index out of range");
  return FieldElem{static_cast<std::uint8_t>(index)};
}

FieldElem GaloisField::from_integer(long long n) const {
  long long r = n % p_;
  if (r < 0) r += p_;
  return FieldElem{static_cast<std::uint8_t>(r)};
}

FieldElem GaloisField::inv(FieldElem a) const {
  if (a.value == 0) throw std::domain_error("inverse of zero in F_" + std::to_string(q_));
  return inv_[a.value];
}

std::string GaloisField::to_string(FieldElem a) const { return std::to_string(a.value); }

}  // namespace hallforge
