#include "hallforge/two_complex.hpp"

#include <functional>
#include <memory>

#include "hallforge/errors.hpp"

namespace hallforge {
namespace {

/// A tuple of representation morphisms (from_i -> to_i) flattened into one vector.
class MorphismTuple {
 public:
  MorphismTuple(const QuiverCategory& cat, std::vector<std::pair<const RepObject*, const RepObject*>> blocks)
      : cat_(&cat), blocks_(std::move(blocks)) {
    for (const auto& [from, to] : blocks_) {
      offsets_.push_back(total_);
      layouts_.push_back(cat.morphism_layout(*from, *to));
      total_ += layouts_.back().size();
    }
  }

  std::size_t size() const noexcept { return total_; }

  std::vector<RepMorphism> unpack(const Vector& v) const {
    std::vector<RepMorphism> out;
    for (std::size_t i = 0; i < blocks_.size(); ++i) {
      Vector part(v.begin() + static_cast<std::ptrdiff_t>(offsets_[i]),
                  v.begin() + static_cast<std::ptrdiff_t>(offsets_[i] + layouts_[i].size()));
      out.push_back(RepMorphism{layouts_[i].unflatten(cat_->field(), part)});
    }
    return out;
  }

  Vector pack(const std::vector<RepMorphism>& ms) const {
    Vector out;
    out.reserve(total_);
    for (std::size_t i = 0; i < blocks_.size(); ++i) {
      const auto part = layouts_[i].flatten(cat_->field(), ms[i].components);
      out.insert(out.end(), part.begin(), part.end());
    }
    return out;
  }

  /// Basis of ⊕_i Hom(from_i, to_i).
  std::vector<Vector> hom_basis() const {
    std::vector<Vector> out;
    for (std::size_t i = 0; i < blocks_.size(); ++i)
      for (const auto& m : cat_->hom_space(*blocks_[i].first, *blocks_[i].second).basis) {
        Vector v(total_, cat_->field().zero());
        const auto part = layouts_[i].flatten(cat_->field(), m.components);
        std::copy(part.begin(), part.end(), v.begin() + static_cast<std::ptrdiff_t>(offsets_[i]));
        out.push_back(std::move(v));
      }
    return out;
  }

 private:
  const QuiverCategory* cat_;
  std::vector<std::pair<const RepObject*, const RepObject*>> blocks_;
  std::vector<BlockLayout> layouts_;
  std::vector<std::size_t> offsets_;
  std::size_t total_ = 0;
};

Vector flatten_all(const std::vector<RepMorphism>& ms) {
  Vector out;
  for (const auto& m : ms)
    for (const auto& c : m.components) out.insert(out.end(), c.entries().begin(), c.entries().end());
  return out;
}

/// Basis of {Σ c_i basis_i : fn(Σ c_i basis_i) = 0} for a linear fn.
std::vector<Vector> restricted_kernel(const GaloisField& f, std::size_t ambient, const std::vector<Vector>& basis,
                                      const std::function<Vector(const Vector&)>& fn) {
  if (basis.empty()) return {};
  std::vector<Vector> cols;
  for (const auto& b : basis) cols.push_back(fn(b));
  const std::size_t rows = cols.front().size();
  if (rows == 0) return basis;
  const auto rk = rank_and_kernel(FieldMatrix::from_columns(f, rows, cols));
  std::vector<Vector> out;
  for (const auto& c : rk.kernel_basis) {
    Vector v(ambient, f.zero());
    for (std::size_t i = 0; i < basis.size(); ++i)
      if (c[i].value != 0) v = add(f, v, scale(f, c[i], basis[i]));
    out.push_back(std::move(v));
  }
  return out;
}

}  // namespace

struct ComplexCategory::Ext1Space {
  std::shared_ptr<MorphismTuple> sigma;
  std::vector<Vector> transversal_basis;
};

TwoComplex ComplexCategory::make_complex(std::vector<std::size_t> m1_tops, std::vector<std::size_t> m0_tops,
                                         RepMorphism d1, RepMorphism d0) const {
  TwoComplex m{std::move(m1_tops), std::move(m0_tops), std::move(d1), std::move(d0)};
  validate(m);
  return m;
}

void ComplexCategory::validate(const TwoComplex& m) const {
  const std::size_t n = base_->quiver().vertex_count();
  for (auto v : m.m1_tops)
    if (v >= n) throw InvalidComplex("not projective components: top vertex out of range");
  for (auto v : m.m0_tops)
    if (v >= n) throw InvalidComplex("not projective components: top vertex out of range");
  const auto& r1 = m1(m);
  const auto& r0 = m0(m);
  if (!base_->is_morphism(m.d1, r1, r0)) throw InvalidComplex("d1 is not a morphism of representations M1 -> M0");
  if (!base_->is_morphism(m.d0, r0, r1)) throw InvalidComplex("d0 is not a morphism of representations M0 -> M1");
  for (std::size_t v = 0; v < n; ++v) {
    if (!(m.d0.components[v] * m.d1.components[v]).is_zero() || !(m.d1.components[v] * m.d0.components[v]).is_zero())
      throw InvalidComplex("not a complex: d∘d ≠ 0 at vertex " + std::to_string(v));
  }
}

TwoComplex ComplexCategory::zero() const {
  const auto& z = base_->projective({});
  return TwoComplex{{}, {}, base_->zero_morphism(z, z), base_->zero_morphism(z, z)};
}

TwoComplex ComplexCategory::shift(const TwoComplex& m) const {
  return TwoComplex{m.m0_tops, m.m1_tops, base_->negate(m.d0), base_->negate(m.d1)};
}

TwoComplex ComplexCategory::direct_sum(const TwoComplex& m, const TwoComplex& n) const {
  auto t1 = m.m1_tops;
  t1.insert(t1.end(), n.m1_tops.begin(), n.m1_tops.end());
  auto t0 = m.m0_tops;
  t0.insert(t0.end(), n.m0_tops.begin(), n.m0_tops.end());
  return TwoComplex{std::move(t1), std::move(t0), base_->direct_sum(m.d1, n.d1), base_->direct_sum(m.d0, n.d0)};
}

TwoComplex ComplexCategory::k_of(const std::vector<long long>& mult) const {
  const auto tops = QuiverCategory::tops_from_multiplicities(mult);
  const auto& p = base_->projective(tops);
  return TwoComplex{tops, tops, base_->identity(p), base_->zero_morphism(p, p)};
}

TwoComplex ComplexCategory::kstar_of(const std::vector<long long>& mult) const {
  const auto tops = QuiverCategory::tops_from_multiplicities(mult);
  const auto& p = base_->projective(tops);
  return TwoComplex{tops, tops, base_->zero_morphism(p, p), base_->negate(base_->identity(p))};
}

TwoComplex ComplexCategory::c_of(const IsoLabel& a) const {
  const auto res = base_->minimal_resolution(a);
  return TwoComplex{res->p_tops, res->q_tops, res->f, base_->zero_morphism(res->q, res->p)};
}

TwoComplex ComplexCategory::normal_form_complex(const IsoLabel& a, const IsoLabel& b) const {
  return direct_sum(c_of(a), shift(c_of(b)));
}

TwoComplex ComplexCategory::reassemble(const DecompositionWitness& w) const {
  return direct_sum(direct_sum(normal_form_complex(w.a, w.b), k_of(w.p_mult)), kstar_of(w.q_mult));
}

KClass ComplexCategory::hat(const TwoComplex& m) const { return m0(m).kclass() - m1(m).kclass(); }

std::pair<RepObject, RepObject> ComplexCategory::homology_objects(const TwoComplex& m) const {
  const auto& r1 = m1(m);
  const auto& r0 = m0(m);
  RepObject h0 = base_->subquotient(r0, base_->kernel_family(m.d0, r0), base_->image_family(m.d1, r0));
  RepObject h1 = base_->subquotient(r1, base_->kernel_family(m.d1, r1), base_->image_family(m.d0, r1));
  return {std::move(h0), std::move(h1)};
}

std::pair<IsoLabel, IsoLabel> ComplexCategory::homology(const TwoComplex& m) const {
  const auto [h0, h1] = homology_objects(m);
  return {base_->identify(h0), base_->identify(h1)};
}

KClass ComplexCategory::rank_vector(const RepMorphism& d) const {
  KClass r(base_->quiver().vertex_count());
  for (std::size_t v = 0; v < d.components.size(); ++v) r[v] = static_cast<long long>(rank(d.components[v]));
  return r;
}

std::vector<ChainMap> ComplexCategory::chain_map_basis(const TwoComplex& m, const TwoComplex& n) const {
  const auto& f = base_->field();
  const auto &m1r = m1(m), &m0r = m0(m), &n1r = m1(n), &n0r = m0(n);
  MorphismTuple tuple(*base_, {{&m1r, &n1r}, {&m0r, &n0r}});
  const auto basis = restricted_kernel(f, tuple.size(), tuple.hom_basis(), [&](const Vector& v) {
    const auto fs = tuple.unpack(v);
    // f0 d1M - d1N f1 and f1 d0M - d0N f0
    return flatten_all({base_->add(base_->compose(fs[1], m.d1), base_->negate(base_->compose(n.d1, fs[0]))),
                        base_->add(base_->compose(fs[0], m.d0), base_->negate(base_->compose(n.d0, fs[1])))});
  });
  std::vector<ChainMap> out;
  for (const auto& v : basis) {
    auto fs = tuple.unpack(v);
    out.push_back(ChainMap{std::move(fs[0]), std::move(fs[1])});
  }
  return out;
}

bool ComplexCategory::is_chain_map(const ChainMap& f, const TwoComplex& m, const TwoComplex& n) const {
  if (!base_->is_morphism(f.f1, m1(m), m1(n)) || !base_->is_morphism(f.f0, m0(m), m0(n))) return false;
  return base_->compose(f.f0, m.d1) == base_->compose(n.d1, f.f1) &&
         base_->compose(f.f1, m.d0) == base_->compose(n.d0, f.f0);
}

ComplexHom ComplexCategory::complex_hom(const TwoComplex& m, const TwoComplex& n) const {
  const auto& f = base_->field();
  const auto chain = chain_map_basis(m, n);
  const auto &m1r = m1(m), &m0r = m0(m), &n1r = m1(n), &n0r = m0(n);
  MorphismTuple chain_coords(*base_, {{&m1r, &n1r}, {&m0r, &n0r}});
  MorphismTuple homotopies(*base_, {{&m1r, &n0r}, {&m0r, &n1r}});
  EchelonBasis image(f, chain_coords.size());
  for (const auto& hv : homotopies.hom_basis()) {
    const auto hs = homotopies.unpack(hv);  // h1: M1 -> N0, h0: M0 -> N1
    const auto f1 = base_->add(base_->compose(n.d0, hs[0]), base_->compose(hs[1], m.d1));
    const auto f0 = base_->add(base_->compose(n.d1, hs[1]), base_->compose(hs[0], m.d0));
    image.add(chain_coords.pack({f1, f0}));
  }
  return ComplexHom{chain.size(), chain.size() - image.dim()};
}

std::optional<ChainMap> ComplexCategory::find_isomorphism(const TwoComplex& m, const TwoComplex& n) const {
  if (m1(m).dims() != m1(n).dims() || m0(m).dims() != m0(n).dims()) return std::nullopt;
  const auto& f = base_->field();
  const auto &m1r = m1(m), &m0r = m0(m), &n1r = m1(n), &n0r = m0(n);
  MorphismTuple tuple(*base_, {{&m1r, &n1r}, {&m0r, &n0r}});
  std::vector<Vector> basis;
  for (const auto& c : chain_map_basis(m, n)) basis.push_back(tuple.pack({c.f1, c.f0}));
  std::optional<ChainMap> found;
  for_each_in_span(f, tuple.size(), basis, base_->budget(), "complex isomorphism search", [&](const Vector& v) {
    auto fs = tuple.unpack(v);
    if (base_->is_invertible(fs[0]) && base_->is_invertible(fs[1])) {
      found = ChainMap{std::move(fs[0]), std::move(fs[1])};
      return false;
    }
    return true;
  });
  return found;
}

bool ComplexCategory::is_isomorphic(const TwoComplex& m, const TwoComplex& n) const {
  return find_isomorphism(m, n).has_value();
}

ComplexCategory::Ext1Space ComplexCategory::ext1_space(const TwoComplex& x, const TwoComplex& y) const {
  const auto& f = base_->field();
  const auto &x1 = m1(x), &x0 = m0(x), &y1 = m1(y), &y0 = m0(y);
  auto sigma = std::make_shared<MorphismTuple>(*base_, std::vector<std::pair<const RepObject*, const RepObject*>>{
                                                           {&x1, &y0}, {&x0, &y1}});
  const auto cocycles = restricted_kernel(f, sigma->size(), sigma->hom_basis(), [&](const Vector& v) {
    const auto s = sigma->unpack(v);  // s1: X1 -> Y0, s0: X0 -> Y1
    return flatten_all({base_->add(base_->compose(y.d0, s[0]), base_->compose(s[1], x.d1)),
                        base_->add(base_->compose(y.d1, s[1]), base_->compose(s[0], x.d0))});
  });
  MorphismTuple homotopies(*base_, {{&x1, &y1}, {&x0, &y0}});
  std::vector<Vector> coboundaries;
  for (const auto& hv : homotopies.hom_basis()) {
    const auto h = homotopies.unpack(hv);  // h1: X1 -> Y1, h0: X0 -> Y0
    const auto s1 = base_->add(base_->compose(y.d1, h[0]), base_->negate(base_->compose(h[1], x.d1)));
    const auto s0 = base_->add(base_->compose(y.d0, h[1]), base_->negate(base_->compose(h[0], x.d0)));
    coboundaries.push_back(sigma->pack({s1, s0}));
  }
  Ext1Space out;
  out.sigma = sigma;
  out.transversal_basis = complement_basis(f, sigma->size(), coboundaries, cocycles);
  return out;
}

std::size_t ComplexCategory::ext1_dim(const TwoComplex& x, const TwoComplex& y) const {
  return ext1_space(x, y).transversal_basis.size();
}

std::vector<ComplexCocycle> ComplexCategory::ext1_classes(const TwoComplex& x, const TwoComplex& y) const {
  const auto space = ext1_space(x, y);
  std::vector<ComplexCocycle> out;
  for_each_in_span(base_->field(), space.sigma->size(), space.transversal_basis, base_->budget(),
                   "complex extension classes", [&](const Vector& v) {
                     auto s = space.sigma->unpack(v);
                     out.push_back(ComplexCocycle{std::move(s[0]), std::move(s[1])});
                     return true;
                   });
  return out;
}

TwoComplex ComplexCategory::ext_middle(const TwoComplex& x, const TwoComplex& y, const ComplexCocycle& s) const {
  const auto& f = base_->field();
  const std::size_t n = base_->quiver().vertex_count();
  const auto &x1 = m1(x), &x0 = m0(x), &y1 = m1(y), &y0 = m0(y);
  auto block = [&](const RepMorphism& dy, const RepMorphism& sig, const RepMorphism& dx, const RepObject& ya,
                   const RepObject& yb, const RepObject& xa, const RepObject& xb) {
    RepMorphism out;
    for (std::size_t v = 0; v < n; ++v) {
      const auto yav = static_cast<std::size_t>(ya.dim(v)), ybv = static_cast<std::size_t>(yb.dim(v));
      FieldMatrix m(f, ybv + static_cast<std::size_t>(xb.dim(v)), yav + static_cast<std::size_t>(xa.dim(v)));
      m.place(0, 0, dy.components[v]);
      m.place(0, yav, sig.components[v]);
      m.place(ybv, yav, dx.components[v]);
      out.components.push_back(std::move(m));
    }
    return out;
  };
  auto t1 = y.m1_tops;
  t1.insert(t1.end(), x.m1_tops.begin(), x.m1_tops.end());
  auto t0 = y.m0_tops;
  t0.insert(t0.end(), x.m0_tops.begin(), x.m0_tops.end());
  return TwoComplex{std::move(t1), std::move(t0), block(y.d1, s.s1, x.d1, y1, y0, x1, x0),
                    block(y.d0, s.s0, x.d0, y0, y1, x0, x1)};
}

std::uint64_t ComplexCategory::ext1_complex_count_with_middle(const TwoComplex& x, const TwoComplex& y,
                                                              const TwoComplex& l) const {
  std::uint64_t n = 0;
  for (const auto& s : ext1_classes(x, y))
    if (is_isomorphic(ext_middle(x, y, s), l)) ++n;
  return n;
}

ExtMiddleHistogram ComplexCategory::ext_middle_histogram(const TwoComplex& x, const TwoComplex& y) const {
  ExtMiddleHistogram out;
  out.hom_dim = chain_map_basis(x, y).size();
  const auto space = ext1_space(x, y);
  out.ext_dim = space.transversal_basis.size();
  for_each_in_span(base_->field(), space.sigma->size(), space.transversal_basis, base_->budget(),
                   "complex extension classes", [&](const Vector& v) {
                     auto s = space.sigma->unpack(v);
                     const auto d = decompose(ext_middle(x, y, ComplexCocycle{std::move(s[0]), std::move(s[1])}));
                     auto [it, inserted] = out.terms.try_emplace(d.witness, d.exponent, 0);
                     ++it->second.second;
                     return true;
                   });
  return out;
}

Decomposition ComplexCategory::decompose(const TwoComplex& m) const {
  const auto& quiver = base_->quiver();
  const auto [a, b] = homology(m);
  const KClass p_class = rank_vector(m.d1) - base_->resolution_p_class(a);
  const KClass q_class = rank_vector(m.d0) - base_->resolution_p_class(b);
  const auto pm = base_->projective_multiplicities(p_class);
  const auto qm = base_->projective_multiplicities(q_class);
  if (!pm || !qm)
    throw InternalError("inconsistent rank vectors in decomposition: P class " + p_class.to_string() +
                        ", Q class " + q_class.to_string());
  const KClass xhat = a.kclass() - b.kclass();
  Decomposition d;
  d.exponent = -quiver.euler_form(p_class, xhat) + quiver.euler_form(q_class, xhat);
  d.witness = DecompositionWitness{a, b, *pm, *qm, p_class, q_class};
  return d;
}

}  // namespace hallforge
