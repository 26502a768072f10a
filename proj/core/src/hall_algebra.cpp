#include "hallforge/hall_algebra.hpp"

#include <gmpxx.h>

#include "hallforge/errors.hpp"

namespace hallforge {
namespace {

mpz_class ipow(int q, std::size_t e) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(q), static_cast<unsigned long>(e));
  return r;
}

/// All dimension vectors d with 0 <= d <= bound componentwise.
std::vector<DimVec> sub_dimvecs(const DimVec& bound) {
  std::vector<DimVec> out;
  DimVec d(bound.size(), 0);
  while (true) {
    out.push_back(d);
    std::size_t i = bound.size();
    while (i-- > 0) {
      if (d[i] < bound[i]) {
        ++d[i];
        break;
      }
      d[i] = 0;
    }
    if (i == static_cast<std::size_t>(-1)) break;
  }
  return out;
}

}  // namespace

std::string HallBasis::to_string() const {
  std::string s = "[" + label.to_string() + "]";
  if (!k.is_zero()) s += "K" + k.to_string();
  return s;
}

std::string to_string(CoproductVariant v) { return v == CoproductVariant::literal ? "literal" : "k-inserted"; }

HallElement HallAlgebra::k_symbol(const KClass& k) const {
  return HallElement::single(HallBasis{IsoLabel::zero(cat_->quiver().vertex_count()), k});
}

HallElement HallAlgebra::unit() const { return k_symbol(zero_class()); }

HallElement HallAlgebra::diamond(const IsoLabel& a, const IsoLabel& b) const {
  HallElement out;
  const auto counts = cat_->ext_counts(a, b);
  const mpq_class denom(ipow(q(), cat_->hom_dim(a, b)));
  for (const auto& [c, n] : *counts) {
    mpq_class v(mpz_class(static_cast<unsigned long>(n)), denom.get_num());
    v.canonicalize();
    out.add(basis(c), Coeff(q(), v, 0));
  }
  return out;
}

HallElement HallAlgebra::diamond(const HallElement& x, const HallElement& y) const {
  HallElement out;
  for (const auto& [bx, cx] : x) {
    if (!bx.k.is_zero()) throw ContractViolation("diamond product is defined on K-free elements only");
    for (const auto& [by, cy] : y) {
      if (!by.k.is_zero()) throw ContractViolation("diamond product is defined on K-free elements only");
      out.add(diamond(bx.label, by.label), cx * cy);
    }
  }
  return out;
}

HallElement HallAlgebra::star(const HallBasis& a, const HallBasis& b) const {
  const auto& quiver = cat_->quiver();
  const KClass ca = a.label.kclass(), cb = b.label.kclass();
  const Coeff twist = tpow(quiver.sym_euler_form(a.k, cb) + quiver.euler_form(ca, cb));
  const KClass k = a.k + b.k;
  HallElement out;
  for (const auto& [c, v] : diamond(a.label, b.label)) out.add(HallBasis{c.label, k}, v * twist);
  return out;
}

HallElement HallAlgebra::star(const HallElement& x, const HallElement& y) const {
  HallElement out;
  for (const auto& [bx, cx] : x)
    for (const auto& [by, cy] : y) out.add(star(bx, by), cx * cy);
  return out;
}

Coeff HallAlgebra::coproduct_coefficient(const IsoLabel& a, const IsoLabel& b, const IsoLabel& c) const {
  for (std::size_t v = 0; v < a.dims.size(); ++v)
    if (a.dims[v] != b.dims.at(v) + c.dims.at(v)) return Coeff();
  const auto counts = cat_->ext_counts(b, c);
  const auto it = counts->find(a);
  if (it == counts->end()) return Coeff();
  mpz_class num = mpz_class(static_cast<unsigned long>(it->second)) * static_cast<unsigned long>(cat_->aut_order(a));
  mpz_class den = ipow(q(), cat_->hom_dim(b, c)) * static_cast<unsigned long>(cat_->aut_order(b)) *
                  static_cast<unsigned long>(cat_->aut_order(c));
  mpq_class r(num, den);
  r.canonicalize();
  return Coeff(q(), r, 0) * tpow(cat_->quiver().euler_form(b.kclass(), c.kclass()));
}

TensorElement HallAlgebra::coproduct(const HallBasis& a, CoproductVariant variant) const {
  TensorElement out;
  for (const auto& db : sub_dimvecs(a.label.dims)) {
    DimVec dc(db.size());
    for (std::size_t v = 0; v < db.size(); ++v) dc[v] = a.label.dims[v] - db[v];
    const auto cs = cat_->labels_of_dimvec(dc);
    for (const auto& b : cat_->labels_of_dimvec(db))
      for (const auto& c : cs) {
        const Coeff coef = coproduct_coefficient(a.label, b, c);
        if (coef.is_zero()) continue;
        const KClass left_k = variant == CoproductVariant::k_inserted ? a.k + c.kclass() : a.k;
        out.add(TensorKey{HallBasis{b, left_k}, HallBasis{c, a.k}}, coef);
      }
  }
  return out;
}

TensorElement HallAlgebra::coproduct(const HallElement& x, CoproductVariant variant) const {
  TensorElement out;
  for (const auto& [b, c] : x) out.add(coproduct(b, variant), c);
  return out;
}

Coeff HallAlgebra::counit(const HallElement& x) const {
  Coeff out;
  for (const auto& [b, c] : x)
    if (b.label.is_zero()) out += c;
  return out;
}

Coeff HallAlgebra::hopf_pairing(const HallBasis& a, const HallBasis& b) const {
  if (a.label != b.label) return Coeff();
  return Coeff(static_cast<long long>(cat_->aut_order(a.label))) * tpow(cat_->quiver().sym_euler_form(a.k, b.k));
}

Coeff HallAlgebra::hopf_pairing(const HallElement& x, const HallElement& y) const {
  Coeff out;
  for (const auto& [bx, cx] : x)
    for (const auto& [by, cy] : y) {
      if (bx.label != by.label) continue;
      out += cx * cy * hopf_pairing(bx, by);
    }
  return out;
}

Coeff HallAlgebra::tensor_pairing(const TensorElement& x, const TensorElement& y) const {
  Coeff out;
  for (const auto& [kx, cx] : x)
    for (const auto& [ky, cy] : y) {
      if (kx.first.label != ky.first.label || kx.second.label != ky.second.label) continue;
      out += cx * cy * hopf_pairing(kx.first, ky.first) * hopf_pairing(kx.second, ky.second);
    }
  return out;
}

TensorElement HallAlgebra::tensor(const HallElement& x, const HallElement& y) const {
  TensorElement out;
  for (const auto& [bx, cx] : x)
    for (const auto& [by, cy] : y) out.add(TensorKey{bx, by}, cx * cy);
  return out;
}

TensorElement HallAlgebra::tensor_star(const TensorElement& x, const TensorElement& y) const {
  TensorElement out;
  for (const auto& [kx, cx] : x)
    for (const auto& [ky, cy] : y) {
      const auto left = star(kx.first, ky.first);
      const auto right = star(kx.second, ky.second);
      out.add(tensor(left, right), cx * cy);
    }
  return out;
}

LinearCombination<std::tuple<HallBasis, HallBasis, HallBasis>> HallAlgebra::coproduct_left(
    const TensorElement& x, CoproductVariant variant) const {
  LinearCombination<std::tuple<HallBasis, HallBasis, HallBasis>> out;
  for (const auto& [k, c] : x)
    for (const auto& [k2, c2] : coproduct(k.first, variant)) out.add({k2.first, k2.second, k.second}, c * c2);
  return out;
}

LinearCombination<std::tuple<HallBasis, HallBasis, HallBasis>> HallAlgebra::coproduct_right(
    const TensorElement& x, CoproductVariant variant) const {
  LinearCombination<std::tuple<HallBasis, HallBasis, HallBasis>> out;
  for (const auto& [k, c] : x)
    for (const auto& [k2, c2] : coproduct(k.second, variant)) out.add({k.first, k2.first, k2.second}, c * c2);
  return out;
}

HallElement HallAlgebra::counit_left(const TensorElement& x) const {
  HallElement out;
  for (const auto& [k, c] : x)
    if (k.first.label.is_zero()) out.add(k.second, c);
  return out;
}

HallElement HallAlgebra::counit_right(const TensorElement& x) const {
  HallElement out;
  for (const auto& [k, c] : x)
    if (k.second.label.is_zero()) out.add(k.first, c);
  return out;
}

}  // namespace hallforge
