#pragma once

#include <map>
#include <utility>

#include "hallforge/coeff.hpp"

namespace hallforge {

/// Finitely supported formal combination of keys with Coeff coefficients.
/// Zero coefficients are never stored; iteration is in key order.
template <class Key>
class LinearCombination {
 public:
  using map_type = std::map<Key, Coeff>;
  using const_iterator = typename map_type::const_iterator;

  LinearCombination() = default;
  static LinearCombination single(Key k, Coeff c = Coeff(1)) {
    LinearCombination r;
    r.add(std::move(k), c);
    return r;
  }

  void add(const Key& k, const Coeff& c) {
    if (c.is_zero()) return;
    auto it = terms_.find(k);
    if (it == terms_.end()) {
      terms_.emplace(k, c);
      return;
    }
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }

  void add(const LinearCombination& o, const Coeff& scale = Coeff(1)) {
    if (scale.is_zero()) return;
    for (const auto& [k, c] : o.terms_) add(k, scale.is_one() ? c : c * scale);
  }

  Coeff coefficient(const Key& k) const {
    auto it = terms_.find(k);
    return it == terms_.end() ? Coeff() : it->second;
  }

  LinearCombination scaled(const Coeff& s) const {
    LinearCombination r;
    if (s.is_zero()) return r;
    for (const auto& [k, c] : terms_) r.terms_.emplace(k, c * s);
    return r;
  }

  LinearCombination& operator+=(const LinearCombination& o) {
    add(o);
    return *this;
  }
  LinearCombination& operator-=(const LinearCombination& o) {
    add(o, Coeff(-1));
    return *this;
  }
  friend LinearCombination operator+(LinearCombination x, const LinearCombination& y) { return x += y; }
  friend LinearCombination operator-(LinearCombination x, const LinearCombination& y) { return x -= y; }
  friend bool operator==(const LinearCombination& x, const LinearCombination& y) { return x.terms_ == y.terms_; }

  bool is_zero() const noexcept { return terms_.empty(); }
  std::size_t size() const noexcept { return terms_.size(); }
  const_iterator begin() const { return terms_.begin(); }
  const_iterator end() const { return terms_.end(); }
  const map_type& terms() const noexcept { return terms_; }

 private:
  map_type terms_;
};

}  // namespace hallforge
