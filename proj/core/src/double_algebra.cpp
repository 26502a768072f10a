#include "hallforge/double_algebra.hpp"

#include <algorithm>

#include "hallforge/errors.hpp"

namespace hallforge {
namespace {

nlohmann::json kclass_json(const KClass& k) { return k.values(); }

KClass kclass_from_json(const nlohmann::json& j) { return KClass(j.get<std::vector<long long>>()); }

/// Larger homology first, then larger term.
bool eliminates_before(const DHTerm& x, const DHTerm& y) {
  if (x.homology_dim() != y.homology_dim()) return x.homology_dim() > y.homology_dim();
  return y < x;
}

const DHTerm& leading_term(const DHElement& e) {
  const DHTerm* best = nullptr;
  for (const auto& [t, c] : e)
    if (!best || eliminates_before(t, *best)) best = &t;
  return *best;
}

}  // namespace

std::string DHTerm::to_string() const {
  return "K" + alpha.to_string() + " K*" + beta.to_string() + " [C_" + a.to_string() + " + C*_" + b.to_string() + "]";
}

std::string to_string(RelationForm f) { return f == RelationForm::crossed ? "crossed" : "literal"; }

DHElement DoubleAlgebra::term(const KClass& alpha, const KClass& beta, const IsoLabel& a, const IsoLabel& b,
                              const Coeff& c) const {
  return DHElement::single(DHTerm{alpha, beta, a, b}, c);
}

DHElement DoubleAlgebra::unit() const {
  const auto& q = base().quiver();
  const auto z = IsoLabel::zero(q.vertex_count());
  return term(q.zero_class(), q.zero_class(), z, z);
}

DHElement DoubleAlgebra::k_plus(const KClass& alpha) const {
  const auto& q = base().quiver();
  const auto z = IsoLabel::zero(q.vertex_count());
  return term(alpha, q.zero_class(), z, z);
}

DHElement DoubleAlgebra::k_minus(const KClass& alpha) const {
  const auto& q = base().quiver();
  const auto z = IsoLabel::zero(q.vertex_count());
  return term(q.zero_class(), alpha, z, z);
}

DHElement DoubleAlgebra::e(const IsoLabel& a) const {
  const auto& q = base().quiver();
  const KClass p = base().resolution_p_class(a);
  return term(-p, q.zero_class(), a, IsoLabel::zero(q.vertex_count()), tpow(q.euler_form(p, a.kclass())));
}

DHElement DoubleAlgebra::f(const IsoLabel& a) const {
  const auto& q = base().quiver();
  const KClass p = base().resolution_p_class(a);
  return term(q.zero_class(), -p, IsoLabel::zero(q.vertex_count()), a, tpow(q.euler_form(p, a.kclass())));
}

DHElement DoubleAlgebra::normalize(const TwoComplex& m, const Coeff& c) const {
  const auto d = cx_->decompose(m);
  const auto& w = d.witness;
  return term(w.p_class, w.q_class, w.a, w.b, c * tpow(d.exponent));
}

DHElement DoubleAlgebra::complex_hall_product(const TwoComplex& m, const TwoComplex& n) const {
  const auto& quiver = base().quiver();
  const auto hist = cx_->ext_middle_histogram(m, n);
  const long long twist = quiver.euler_form(cx_->m0(m).kclass(), cx_->m0(n).kclass()) +
                          quiver.euler_form(cx_->m1(m).kclass(), cx_->m1(n).kclass());
  mpz_class hom_size;
  mpz_ui_pow_ui(hom_size.get_mpz_t(), static_cast<unsigned long>(base().q()), static_cast<unsigned long>(hist.hom_dim));
  DHElement out;
  for (const auto& [w, entry] : hist.terms) {
    const auto& [exponent, count] = entry;
    mpq_class r(mpz_class(static_cast<unsigned long>(count)), hom_size);
    r.canonicalize();
    out.add(DHTerm{w.p_class, w.q_class, w.a, w.b}, Coeff(base().q(), r, 0) * tpow(twist + exponent));
  }
  return out;
}

std::shared_ptr<const DHElement> DoubleAlgebra::normal_form_product(const IsoLabel& a, const IsoLabel& b,
                                                                    const IsoLabel& a2, const IsoLabel& b2) const {
  const ProductKey key{a, b, a2, b2};
  {
    std::lock_guard lock(mu_);
    auto it = products_.find(key);
    if (it != products_.end()) return it->second;
  }
  const auto& store = base().store();
  const std::string skey = base().cache_key_prefix() + "|cxprod|" + a.to_string() + "|" + b.to_string() + "|" +
                           a2.to_string() + "|" + b2.to_string();
  std::shared_ptr<DHElement> value;
  if (store) {
    if (auto j = store->load(skey)) {
      try {
        auto parsed = std::make_shared<DHElement>();
        for (const auto& t : j->at("terms")) {
          const Coeff c = Coeff::parse(base().q(), t.at(4).get<std::string>());
          if (c.is_zero()) throw ContractViolation("zero coefficient");
          parsed->add(DHTerm{kclass_from_json(t.at(0)), kclass_from_json(t.at(1)),
                             IsoLabel::parse(t.at(2).get<std::string>()), IsoLabel::parse(t.at(3).get<std::string>())},
                      c);
        }
        value = std::move(parsed);
      } catch (const std::exception& ex) {
        store->note_corrupt(skey, ex.what());
      }
    }
  }
  if (!value) {
    value = std::make_shared<DHElement>(
        complex_hall_product(cx_->normal_form_complex(a, b), cx_->normal_form_complex(a2, b2)));
    if (store) {
      nlohmann::json terms = nlohmann::json::array();
      for (const auto& [t, c] : *value)
        terms.push_back({kclass_json(t.alpha), kclass_json(t.beta), t.a.to_string(), t.b.to_string(), c.to_string()});
      store->store(skey, {{"terms", terms}});
    }
  }
  std::lock_guard lock(mu_);
  auto [it, inserted] = products_.emplace(key, std::move(value));
  return it->second;
}

DHElement DoubleAlgebra::multiply(const DHElement& x, const DHElement& y) const {
  const auto& quiver = base().quiver();
  DHElement out;
  for (const auto& [tx, cx] : x) {
    const KClass xhat = tx.a.kclass() - tx.b.kclass();
    for (const auto& [ty, cy] : y) {
      // Move K_γ K*_δ of the right factor to the left across [C_A ⊕ C_B*].
      const long long pre = -quiver.sym_euler_form(ty.alpha, xhat) + quiver.sym_euler_form(ty.beta, xhat);
      const Coeff scale = cx * cy * tpow(pre);
      const KClass alpha = tx.alpha + ty.alpha, beta = tx.beta + ty.beta;
      for (const auto& [tp, cp] : *normal_form_product(tx.a, tx.b, ty.a, ty.b))
        out.add(DHTerm{alpha + tp.alpha, beta + tp.beta, tp.a, tp.b}, scale * cp);
    }
  }
  return out;
}

DHElement DoubleAlgebra::multiply(const std::vector<DHElement>& factors) const {
  DHElement acc = unit();
  for (const auto& f : factors) acc = multiply(acc, f);
  return acc;
}

DHElement DoubleAlgebra::star(const DHElement& x) const {
  DHElement out;
  for (const auto& [t, c] : x) out.add(DHTerm{t.beta, t.alpha, t.b, t.a}, c);
  return out;
}

DHElement DoubleAlgebra::embed_plus(const HallBasis& h) const { return multiply(e(h.label), k_plus(h.k)); }

DHElement DoubleAlgebra::embed_minus(const HallBasis& h) const { return multiply(f(h.label), k_minus(h.k)); }

DHElement DoubleAlgebra::embed_plus(const HallElement& h) const {
  DHElement out;
  for (const auto& [b, c] : h) out.add(embed_plus(b), c);
  return out;
}

DHElement DoubleAlgebra::embed_minus(const HallElement& h) const {
  DHElement out;
  for (const auto& [b, c] : h) out.add(embed_minus(b), c);
  return out;
}

DoubleReport DoubleAlgebra::check_double_relation(const HallBasis& a, const HallBasis& b, RelationForm form,
                                                  CoproductVariant variant) const {
  DoubleReport r;
  r.a = a;
  r.b = b;
  r.form = form;
  r.variant = variant;
  r.case_tag = std::string(a.label.is_zero() ? "K" : "A") + (b.label.is_zero() ? "K" : "A");

  std::map<HallBasis, DHElement> plus, minus;
  auto ip = [&](const HallBasis& h) -> const DHElement& {
    auto it = plus.find(h);
    if (it == plus.end()) it = plus.emplace(h, embed_plus(h)).first;
    return it->second;
  };
  auto im = [&](const HallBasis& h) -> const DHElement& {
    auto it = minus.find(h);
    if (it == minus.end()) it = minus.emplace(h, embed_minus(h)).first;
    return it->second;
  };

  const auto da = hall_->coproduct(a, variant);
  const auto db = hall_->coproduct(b, variant);
  for (const auto& [ka, ca] : da) {
    const auto& [a1, a2] = ka;
    for (const auto& [kb, cb] : db) {
      const auto& [b1, b2] = kb;
      const Coeff c = ca * cb;
      if (form == RelationForm::crossed) {
        if (const Coeff p = hall_->hopf_pairing(a2, b1); !p.is_zero()) r.lhs.add(multiply(ip(a1), im(b2)), p * c);
        if (const Coeff p = hall_->hopf_pairing(a1, b2); !p.is_zero()) r.rhs.add(multiply(im(b1), ip(a2)), p * c);
      } else {
        if (const Coeff p = hall_->hopf_pairing(a2, b2); !p.is_zero()) r.lhs.add(multiply(ip(a1), im(b1)), p * c);
        if (const Coeff p = hall_->hopf_pairing(a1, b1); !p.is_zero()) r.rhs.add(multiply(im(b2), ip(a2)), p * c);
      }
    }
  }
  r.equal = (r.lhs - r.rhs).is_zero();
  return r;
}

std::vector<KClass> DoubleAlgebra::k_grid(std::size_t n, int radius) {
  std::vector<KClass> out;
  if (radius < 0) return out;
  KClass k(n);
  for (std::size_t i = 0; i < n; ++i) k[i] = -radius;
  while (true) {
    out.push_back(k);
    std::size_t i = n;
    while (i-- > 0) {
      if (k[i] < radius) {
        ++k[i];
        break;
      }
      k[i] = -radius;
    }
    if (i == static_cast<std::size_t>(-1)) break;
  }
  return out;
}

TriangularReport DoubleAlgebra::check_triangular_basis(int bound, int kgrid) const {
  TriangularReport rep;
  rep.triangular = true;
  const auto& quiver = base().quiver();
  const auto labels = base().iso_classes(bound);
  const auto grid = k_grid(quiver.vertex_count(), kgrid);

  std::map<DHTerm, DHElement> pivots;  // leading term -> row with leading coefficient 1
  auto note = [&](const std::string& msg) {
    if (rep.failures.size() < 10) rep.failures.push_back(msg);
  };

  for (const auto& a : labels)
    for (const auto& b : labels) {
      for (const auto& alpha : grid)
        for (const auto& beta : grid) {
          // E_A K_α K*_β F_B = E_A (K_α K*_β) F_B; K's commute with each other.
          const DHElement row = multiply({e(a), k_plus(alpha), k_minus(beta), f(b)});
          ++rep.products;
          const std::string name = "E_" + a.to_string() + " K" + alpha.to_string() + " K*" + beta.to_string() + " F_" +
                                   b.to_string();

          std::size_t own = 0;
          bool ok = true;
          for (const auto& [t, c] : row) {
            if (t.a == a && t.b == b)
              ++own;
            else if (t.homology_dim() >= a.total_dim() + b.total_dim())
              ok = false;
          }
          if (own != 1 || !ok) {
            rep.triangular = false;
            note(name + ": not triangular");
          }

          DHElement r = row;
          while (!r.is_zero()) {
            const DHTerm lead = leading_term(r);
            auto it = pivots.find(lead);
            if (it == pivots.end()) {
              const Coeff inv = r.coefficient(lead).inverse();
              pivots.emplace(lead, r.scaled(inv));
              break;
            }
            r.add(it->second, -r.coefficient(lead));
          }
          if (r.is_zero()) note(name + ": linearly dependent on earlier products");
        }
    }
  rep.rank = pivots.size();
  rep.independent = rep.rank == rep.products;
  return rep;
}

}  // namespace hallforge
