#include "hallforge/quiver_category.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

#include "hallforge/errors.hpp"

namespace hallforge {

struct QuiverCategory::RegistryTable {
  std::vector<std::uint32_t> label_of_code;
  std::vector<RepObject> reps;
};

namespace {

std::string dims_string(const DimVec& d) { return KClass::from_dims(d).to_string(); }

}  // namespace

QuiverCategory::QuiverCategory(Quiver quiver, int q, EnumerationBudget budget, std::shared_ptr<CountStore> store)
    : quiver_(std::move(quiver)), field_(&GaloisField::get(q)), budget_(budget), store_(std::move(store)) {}

std::string QuiverCategory::cache_key_prefix() const {
  return "hallforge/1|" + quiver_.fingerprint() + "|q=" + std::to_string(q());
}

void QuiverCategory::check_dims(const RepObject& x) const {
  if (x.dims().size() != quiver_.vertex_count() || x.maps().size() != quiver_.arrows().size())
    throw ContractViolation("representation does not belong to quiver '" + quiver_.name() + "'");
}

// ---------------------------------------------------------------- objects

RepObject QuiverCategory::zero_object() const { return RepObject::zero(quiver_, *field_); }

RepObject QuiverCategory::simple(std::size_t v) const {
  DimVec dims(quiver_.vertex_count(), 0);
  dims.at(v) = 1;
  std::vector<FieldMatrix> maps;
  for (const auto& a : quiver_.arrows())
    maps.emplace_back(*field_, static_cast<std::size_t>(dims[a.target]), static_cast<std::size_t>(dims[a.source]));
  return RepObject(quiver_, *field_, dims, std::move(maps));
}

RepObject QuiverCategory::make_object(DimVec dims, std::vector<FieldMatrix> maps) const {
  return RepObject(quiver_, *field_, std::move(dims), std::move(maps));
}

RepObject QuiverCategory::direct_sum(const RepObject& a, const RepObject& b) const {
  check_dims(a);
  check_dims(b);
  DimVec dims(quiver_.vertex_count());
  for (std::size_t v = 0; v < dims.size(); ++v) dims[v] = a.dim(v) + b.dim(v);
  std::vector<FieldMatrix> maps;
  for (std::size_t i = 0; i < quiver_.arrows().size(); ++i) {
    const auto& ar = quiver_.arrows()[i];
    FieldMatrix m(*field_, static_cast<std::size_t>(dims[ar.target]), static_cast<std::size_t>(dims[ar.source]));
    m.place(0, 0, a.map(i));
    m.place(static_cast<std::size_t>(a.dim(ar.target)), static_cast<std::size_t>(a.dim(ar.source)), b.map(i));
    maps.push_back(std::move(m));
  }
  return RepObject(quiver_, *field_, std::move(dims), std::move(maps));
}

const RepObject& QuiverCategory::projective(const std::vector<std::size_t>& tops) const {
  {
    std::lock_guard lock(proj_mu_);
    auto it = projectives_.find(tops);
    if (it != projectives_.end()) return *it->second;
  }
  const std::size_t n = quiver_.vertex_count();
  for (auto v : tops)
    if (v >= n) throw ContractViolation("projective top out of range");
  std::vector<std::vector<std::pair<std::size_t, Path>>> bases(n);
  for (std::size_t w = 0; w < n; ++w)
    for (std::size_t k = 0; k < tops.size(); ++k)
      for (const auto& p : quiver_.paths(tops[k], w)) bases[w].emplace_back(k, p);
  DimVec dims(n);
  for (std::size_t w = 0; w < n; ++w) dims[w] = static_cast<int>(bases[w].size());
  std::vector<FieldMatrix> maps;
  for (std::size_t ai = 0; ai < quiver_.arrows().size(); ++ai) {
    const auto& ar = quiver_.arrows()[ai];
    FieldMatrix m(*field_, bases[ar.target].size(), bases[ar.source].size());
    for (std::size_t c = 0; c < bases[ar.source].size(); ++c) {
      auto [k, p] = bases[ar.source][c];
      p.push_back(ai);
      const auto& tb = bases[ar.target];
      const auto it = std::find(tb.begin(), tb.end(), std::make_pair(k, p));
      if (it == tb.end()) throw InternalError("path basis not closed under arrows");
      m.set(static_cast<std::size_t>(it - tb.begin()), c, field_->one());
    }
    maps.push_back(std::move(m));
  }
  auto rep = std::make_shared<const RepObject>(quiver_, *field_, std::move(dims), std::move(maps));
  std::lock_guard lock(proj_mu_);
  auto [it, inserted] = projectives_.emplace(tops, std::move(rep));
  return *it->second;
}

std::size_t QuiverCategory::projective_basis_index(const std::vector<std::size_t>& tops, std::size_t w,
                                                   std::size_t k, const Path& path) const {
  std::size_t idx = 0;
  for (std::size_t j = 0; j < tops.size(); ++j) {
    const auto& ps = quiver_.paths(tops[j], w);
    if (j == k) {
      const auto it = std::find(ps.begin(), ps.end(), path);
      if (it == ps.end()) throw ContractViolation("path does not start at the summand's top");
      return idx + static_cast<std::size_t>(it - ps.begin());
    }
    idx += ps.size();
  }
  throw ContractViolation("summand index out of range");
}

std::vector<RepObject> QuiverCategory::indecomposable_projectives() const {
  std::vector<RepObject> out;
  for (std::size_t v = 0; v < quiver_.vertex_count(); ++v) out.push_back(projective({v}));
  return out;
}

std::vector<std::size_t> QuiverCategory::tops_from_multiplicities(const std::vector<long long>& mult) {
  std::vector<std::size_t> tops;
  for (std::size_t v = 0; v < mult.size(); ++v) {
    if (mult[v] < 0) throw ContractViolation("negative projective multiplicity");
    for (long long i = 0; i < mult[v]; ++i) tops.push_back(v);
  }
  return tops;
}

std::optional<std::vector<long long>> QuiverCategory::projective_multiplicities(const KClass& cls) const {
  if (cls.size() != quiver_.vertex_count()) throw ContractViolation("class length mismatch");
  std::vector<long long> m(quiver_.vertex_count(), 0);
  KClass rem = cls;
  for (auto v : quiver_.topological_order()) {
    m[v] = rem[v];
    if (m[v] < 0) return std::nullopt;
    rem -= quiver_.projective_class(v).scaled(m[v]);
  }
  if (!rem.is_zero()) return std::nullopt;
  return m;
}

// ---------------------------------------------------------------- morphisms

RepMorphism QuiverCategory::identity(const RepObject& a) const {
  RepMorphism f;
  for (std::size_t v = 0; v < quiver_.vertex_count(); ++v)
    f.components.push_back(FieldMatrix::identity(*field_, static_cast<std::size_t>(a.dim(v))));
  return f;
}

RepMorphism QuiverCategory::zero_morphism(const RepObject& from, const RepObject& to) const {
  RepMorphism f;
  for (std::size_t v = 0; v < quiver_.vertex_count(); ++v)
    f.components.emplace_back(*field_, static_cast<std::size_t>(to.dim(v)), static_cast<std::size_t>(from.dim(v)));
  return f;
}

RepMorphism QuiverCategory::compose(const RepMorphism& g, const RepMorphism& f) const {
  if (g.components.size() != f.components.size()) throw ContractViolation("morphism vertex count mismatch");
  RepMorphism h;
  for (std::size_t v = 0; v < f.components.size(); ++v) h.components.push_back(g.components[v] * f.components[v]);
  return h;
}

RepMorphism QuiverCategory::add(const RepMorphism& f, const RepMorphism& g) const {
  if (g.components.size() != f.components.size()) throw ContractViolation("morphism vertex count mismatch");
  RepMorphism h;
  for (std::size_t v = 0; v < f.components.size(); ++v) h.components.push_back(f.components[v] + g.components[v]);
  return h;
}

RepMorphism QuiverCategory::negate(const RepMorphism& f) const {
  RepMorphism h;
  for (const auto& c : f.components) h.components.push_back(-c);
  return h;
}

RepMorphism QuiverCategory::direct_sum(const RepMorphism& f, const RepMorphism& g) const {
  RepMorphism h;
  for (std::size_t v = 0; v < f.components.size(); ++v) {
    const auto& a = f.components[v];
    const auto& b = g.components[v];
    FieldMatrix m(*field_, a.rows() + b.rows(), a.cols() + b.cols());
    m.place(0, 0, a);
    m.place(a.rows(), a.cols(), b);
    h.components.push_back(std::move(m));
  }
  return h;
}

bool QuiverCategory::is_morphism(const RepMorphism& f, const RepObject& from, const RepObject& to) const {
  if (f.components.size() != quiver_.vertex_count()) return false;
  for (std::size_t v = 0; v < quiver_.vertex_count(); ++v)
    if (f.components[v].rows() != static_cast<std::size_t>(to.dim(v)) ||
        f.components[v].cols() != static_cast<std::size_t>(from.dim(v)))
      return false;
  for (std::size_t ai = 0; ai < quiver_.arrows().size(); ++ai) {
    const auto& ar = quiver_.arrows()[ai];
    if (!(f.components[ar.target] * from.map(ai) == to.map(ai) * f.components[ar.source])) return false;
  }
  return true;
}

bool QuiverCategory::is_invertible(const RepMorphism& f) const {
  for (const auto& c : f.components)
    if (!c.is_invertible()) return false;
  return true;
}

BlockLayout QuiverCategory::morphism_layout(const RepObject& from, const RepObject& to) const {
  std::vector<BlockLayout::Shape> shapes;
  for (std::size_t v = 0; v < quiver_.vertex_count(); ++v)
    shapes.push_back({static_cast<std::size_t>(to.dim(v)), static_cast<std::size_t>(from.dim(v))});
  return BlockLayout(std::move(shapes));
}

void QuiverCategory::append_intertwining_rows(const RepObject& from, const RepObject& to, std::size_t column_offset,
                                              std::size_t total_columns, std::vector<Vector>& rows) const {
  const auto layout = morphism_layout(from, to);
  const auto& f = *field_;
  for (std::size_t ai = 0; ai < quiver_.arrows().size(); ++ai) {
    const auto& ar = quiver_.arrows()[ai];
    const std::size_t s = ar.source, t = ar.target;
    const std::size_t xs = static_cast<std::size_t>(from.dim(s)), xt = static_cast<std::size_t>(from.dim(t));
    const std::size_t ys = static_cast<std::size_t>(to.dim(s)), yt = static_cast<std::size_t>(to.dim(t));
    const std::size_t off_s = column_offset + layout.offset(s), off_t = column_offset + layout.offset(t);
    for (std::size_t r = 0; r < yt; ++r)
      for (std::size_t c = 0; c < xs; ++c) {
        Vector row(total_columns, f.zero());
        // (f_t X_a)[r][c] - (Y_a f_s)[r][c]
        for (std::size_t l = 0; l < xt; ++l) {
          auto& e = row[off_t + r * xt + l];
          e = f.add(e, from.map(ai).at(l, c));
        }
        for (std::size_t l = 0; l < ys; ++l) {
          auto& e = row[off_s + l * xs + c];
          e = f.sub(e, to.map(ai).at(r, l));
        }
        rows.push_back(std::move(row));
      }
  }
}

Vector QuiverCategory::apply_path(const RepObject& x, const Path& p, const Vector& v) const {
  Vector out = v;
  for (auto a : p) out = x.map(a).apply(out);
  return out;
}

RepMorphism QuiverCategory::morphism_from_generators(const std::vector<std::size_t>& tops, const RepObject& x,
                                                     const std::vector<Vector>& gens) const {
  if (gens.size() != tops.size()) throw ContractViolation("one generator image per summand required");
  const RepObject& p = projective(tops);
  RepMorphism f;
  for (std::size_t w = 0; w < quiver_.vertex_count(); ++w) {
    FieldMatrix m(*field_, static_cast<std::size_t>(x.dim(w)), static_cast<std::size_t>(p.dim(w)));
    std::size_t c = 0;
    for (std::size_t k = 0; k < tops.size(); ++k)
      for (const auto& path : quiver_.paths(tops[k], w)) {
        const Vector col = apply_path(x, path, gens[k]);
        for (std::size_t r = 0; r < col.size(); ++r) m.set(r, c, col[r]);
        ++c;
      }
    f.components.push_back(std::move(m));
  }
  return f;
}

HomSpace QuiverCategory::hom_space(const RepObject& a, const RepObject& b) const {
  check_dims(a);
  check_dims(b);
  const auto layout = morphism_layout(a, b);
  const std::size_t n = layout.size();
  HomSpace out;
  if (n == 0) return out;
  std::vector<Vector> rows;
  append_intertwining_rows(a, b, 0, n, rows);
  std::vector<FieldElem> entries;
  entries.reserve(rows.size() * n);
  for (const auto& r : rows) entries.insert(entries.end(), r.begin(), r.end());
  const auto rk = rank_and_kernel(FieldMatrix(*field_, rows.size(), n, std::move(entries)));
  out.dim = rk.kernel_basis.size();
  for (const auto& v : rk.kernel_basis) out.basis.push_back(RepMorphism{layout.unflatten(*field_, v)});
  return out;
}

std::size_t QuiverCategory::hom_dim(const IsoLabel& a, const IsoLabel& b) const {
  const auto key = std::make_pair(a, b);
  {
    std::lock_guard lock(memo_mu_);
    auto it = hom_memo_.find(key);
    if (it != hom_memo_.end()) return it->second;
  }
  const std::size_t d = hom_space(representative(a), representative(b)).dim;
  std::lock_guard lock(memo_mu_);
  hom_memo_.emplace(key, d);
  return d;
}

std::uint64_t QuiverCategory::aut_order(const RepObject& a) const {
  const auto end = hom_space(a, a);
  const auto layout = morphism_layout(a, a);
  std::vector<Vector> basis;
  for (const auto& m : end.basis) basis.push_back(layout.flatten(*field_, m.components));
  std::uint64_t count = 0;
  for_each_in_span(*field_, layout.size(), basis, budget_, "automorphisms of " + dims_string(a.dims()),
                   [&](const Vector& v) {
                     if (is_invertible(RepMorphism{layout.unflatten(*field_, v)})) ++count;
                     return true;
                   });
  return count;
}

std::uint64_t QuiverCategory::aut_order(const IsoLabel& a) const {
  {
    std::lock_guard lock(memo_mu_);
    auto it = aut_memo_.find(a);
    if (it != aut_memo_.end()) return it->second;
  }
  const std::string key = cache_key_prefix() + "|aut|" + a.to_string();
  std::optional<std::uint64_t> value;
  if (store_) {
    if (auto j = store_->load(key)) {
      if (j->is_number_unsigned() && j->get<std::uint64_t>() > 0)
        value = j->get<std::uint64_t>();
      else
        store_->note_corrupt(key, "expected a positive integer");
    }
  }
  if (!value) {
    value = aut_order(representative(a));
    if (store_) store_->store(key, *value);
  }
  std::lock_guard lock(memo_mu_);
  aut_memo_.emplace(a, *value);
  return *value;
}

// ---------------------------------------------------------------- extensions

namespace {

struct ExtSpace {
  BlockLayout target;                 // per arrow: B_t x A_s
  std::vector<std::size_t> coords;    // non-pivot coordinates of im(phi)
};

}  // namespace

static ExtSpace make_ext_space(const QuiverCategory& cat, const RepObject& a, const RepObject& b) {
  const auto& quiver = cat.quiver();
  const auto& f = cat.field();
  const auto src = cat.morphism_layout(a, b);
  std::vector<BlockLayout::Shape> shapes;
  for (const auto& ar : quiver.arrows())
    shapes.push_back({static_cast<std::size_t>(b.dim(ar.target)), static_cast<std::size_t>(a.dim(ar.source))});
  ExtSpace out{BlockLayout(std::move(shapes)), {}};
  const std::size_t nt = out.target.size();
  EchelonBasis image(f, nt);
  Vector e(src.size(), f.zero());
  for (std::size_t k = 0; k < src.size(); ++k) {
    e[k] = f.one();
    const auto fv = src.unflatten(f, e);
    e[k] = f.zero();
    std::vector<FieldMatrix> blocks;
    for (std::size_t ai = 0; ai < quiver.arrows().size(); ++ai) {
      const auto& ar = quiver.arrows()[ai];
      blocks.push_back(b.map(ai) * fv[ar.source] - fv[ar.target] * a.map(ai));
    }
    image.add(out.target.flatten(f, blocks));
  }
  std::vector<bool> pivot(nt, false);
  for (auto p : image.pivots()) pivot[p] = true;
  for (std::size_t c = 0; c < nt; ++c)
    if (!pivot[c]) out.coords.push_back(c);
  return out;
}

std::size_t QuiverCategory::ext_dim(const RepObject& a, const RepObject& b) const {
  check_dims(a);
  check_dims(b);
  return make_ext_space(*this, a, b).coords.size();
}

std::size_t QuiverCategory::ext_dim(const IsoLabel& a, const IsoLabel& b) const {
  const auto key = std::make_pair(a, b);
  {
    std::lock_guard lock(memo_mu_);
    auto it = ext_dim_memo_.find(key);
    if (it != ext_dim_memo_.end()) return it->second;
  }
  const std::size_t d = ext_dim(representative(a), representative(b));
  std::lock_guard lock(memo_mu_);
  ext_dim_memo_.emplace(key, d);
  return d;
}

std::vector<Cocycle> QuiverCategory::ext_classes(const RepObject& a, const RepObject& b) const {
  check_dims(a);
  check_dims(b);
  const auto space = make_ext_space(*this, a, b);
  const auto& f = *field_;
  budget_.check(q(), space.coords.size(),
                "extension classes Ext^1(" + dims_string(a.dims()) + ", " + dims_string(b.dims()) + ")");
  std::vector<Cocycle> out;
  for (const auto& coeffs : VectorEnumeration(f, space.coords.size())) {
    Vector v(space.target.size(), f.zero());
    for (std::size_t i = 0; i < coeffs.size(); ++i) v[space.coords[i]] = coeffs[i];
    out.push_back(space.target.unflatten(f, v));
  }
  return out;
}

RepObject QuiverCategory::middle_term(const RepObject& a, const RepObject& b, const Cocycle& e) const {
  check_dims(a);
  check_dims(b);
  if (e.size() != quiver_.arrows().size()) throw ContractViolation("cocycle has the wrong number of blocks");
  DimVec dims(quiver_.vertex_count());
  for (std::size_t v = 0; v < dims.size(); ++v) dims[v] = b.dim(v) + a.dim(v);
  std::vector<FieldMatrix> maps;
  for (std::size_t ai = 0; ai < quiver_.arrows().size(); ++ai) {
    const auto& ar = quiver_.arrows()[ai];
    const auto bt = static_cast<std::size_t>(b.dim(ar.target)), bs = static_cast<std::size_t>(b.dim(ar.source));
    if (e[ai].rows() != bt || e[ai].cols() != static_cast<std::size_t>(a.dim(ar.source)))
      throw ContractViolation("cocycle block has the wrong shape");
    FieldMatrix m(*field_, static_cast<std::size_t>(dims[ar.target]), static_cast<std::size_t>(dims[ar.source]));
    m.place(0, 0, b.map(ai));
    if (!e[ai].empty()) m.place(0, bs, e[ai]);
    m.place(bt, bs, a.map(ai));
    maps.push_back(std::move(m));
  }
  return RepObject(quiver_, *field_, std::move(dims), std::move(maps));
}

std::uint64_t QuiverCategory::ext_count_with_middle(const RepObject& a, const RepObject& b, const IsoLabel& c) const {
  for (std::size_t v = 0; v < quiver_.vertex_count(); ++v)
    if (c.dims.at(v) != a.dim(v) + b.dim(v)) return 0;
  const RepObject& target = representative(c);
  std::uint64_t n = 0;
  for (const auto& e : ext_classes(a, b))
    if (is_isomorphic(middle_term(a, b, e), target)) ++n;
  return n;
}

std::shared_ptr<const ExtCounts> QuiverCategory::ext_counts(const IsoLabel& a, const IsoLabel& b) const {
  const auto memo_key = std::make_pair(a, b);
  {
    std::lock_guard lock(memo_mu_);
    auto it = ext_memo_.find(memo_key);
    if (it != ext_memo_.end()) return it->second;
  }
  const std::string key = cache_key_prefix() + "|ext|" + a.to_string() + "|" + b.to_string();
  std::shared_ptr<ExtCounts> counts;
  if (store_) {
    if (auto j = store_->load(key)) {
      try {
        auto parsed = std::make_shared<ExtCounts>();
        for (const auto& entry : j->at("counts")) {
          const auto label = IsoLabel::parse(entry.at(0).get<std::string>());
          const auto n = entry.at(1).get<std::uint64_t>();
          if (n == 0 || !parsed->emplace(label, n).second) throw ContractViolation("bad count");
        }
        counts = std::move(parsed);
      } catch (const std::exception& ex) {
        store_->note_corrupt(key, ex.what());
      }
    }
  }
  if (!counts) {
    counts = std::make_shared<ExtCounts>();
    const RepObject& ra = representative(a);
    const RepObject& rb = representative(b);
    for (const auto& e : ext_classes(ra, rb)) ++(*counts)[identify(middle_term(ra, rb, e))];
    if (store_) {
      nlohmann::json arr = nlohmann::json::array();
      for (const auto& [label, n] : *counts) arr.push_back({label.to_string(), n});
      store_->store(key, {{"counts", arr}});
    }
  }
  std::lock_guard lock(memo_mu_);
  auto [it, inserted] = ext_memo_.emplace(memo_key, std::move(counts));
  return it->second;
}

// ---------------------------------------------------------------- registry

std::uint64_t QuiverCategory::code_count(const DimVec& dims) const {
  std::size_t entries = 0;
  for (const auto& ar : quiver_.arrows())
    entries += static_cast<std::size_t>(dims.at(ar.target)) * static_cast<std::size_t>(dims.at(ar.source));
  return EnumerationBudget::power(q(), entries);
}

std::uint64_t QuiverCategory::encode(const RepObject& x) const {
  std::uint64_t code = 0;
  const auto qq = static_cast<std::uint64_t>(q());
  for (const auto& m : x.maps())
    for (auto e : m.entries()) code = code * qq + e.value;
  return code;
}

RepObject QuiverCategory::decode(const DimVec& dims, std::uint64_t code) const {
  std::size_t entries = 0;
  for (const auto& ar : quiver_.arrows())
    entries += static_cast<std::size_t>(dims.at(ar.target)) * static_cast<std::size_t>(dims.at(ar.source));
  std::vector<FieldElem> digits(entries);
  const auto qq = static_cast<std::uint64_t>(q());
  for (std::size_t i = entries; i-- > 0;) {
    digits[i] = FieldElem{static_cast<std::uint8_t>(code % qq)};
    code /= qq;
  }
  std::vector<FieldMatrix> maps;
  std::size_t k = 0;
  for (const auto& ar : quiver_.arrows()) {
    const auto r = static_cast<std::size_t>(dims[ar.target]), c = static_cast<std::size_t>(dims[ar.source]);
    std::vector<FieldElem> block(digits.begin() + static_cast<std::ptrdiff_t>(k),
                                 digits.begin() + static_cast<std::ptrdiff_t>(k + r * c));
    maps.emplace_back(*field_, r, c, std::move(block));
    k += r * c;
  }
  return RepObject(quiver_, *field_, dims, std::move(maps));
}

const QuiverCategory::RegistryTable& QuiverCategory::table(const DimVec& dims) const {
  if (dims.size() != quiver_.vertex_count()) throw ContractViolation("dimension vector length mismatch");
  for (int d : dims)
    if (d < 0) throw ContractViolation("negative dimension");
  std::lock_guard lock(registry_mu_);
  auto it = tables_.find(dims);
  if (it != tables_.end()) return *it->second;

  std::size_t entries = 0;
  for (const auto& ar : quiver_.arrows())
    entries += static_cast<std::size_t>(dims[ar.target]) * static_cast<std::size_t>(dims[ar.source]);
  budget_.check(q(), entries, "iso classes of dimension vector " + dims_string(dims));
  const std::uint64_t total = EnumerationBudget::power(q(), entries);
  if (total > std::numeric_limits<std::uint32_t>::max())
    throw BudgetExceeded(total, std::numeric_limits<std::uint32_t>::max(),
                         "iso classes of dimension vector " + dims_string(dims));

  // GL generators per vertex: diag(primitive, 1, ...) and elementary transvections
  // I + λE_ij with λ running over an F_p-basis of F_q.
  struct Gen {
    std::size_t v;
    FieldMatrix g, g_inv;
  };
  std::vector<Gen> gens;
  const auto& f = *field_;
  for (std::size_t v = 0; v < dims.size(); ++v) {
    const auto d = static_cast<std::size_t>(dims[v]);
    if (d == 0) continue;
    if (f.order() > 2) {
      auto g = FieldMatrix::identity(f, d);
      g.set(0, 0, f.primitive_element());
      auto gi = FieldMatrix::identity(f, d);
      gi.set(0, 0, f.inv(f.primitive_element()));
      gens.push_back({v, g, gi});
    }
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) {
        if (i == j) continue;
        for (auto lambda : f.prime_field_basis()) {
          auto g = FieldMatrix::identity(f, d);
          g.set(i, j, lambda);
          auto gi = FieldMatrix::identity(f, d);
          gi.set(i, j, f.neg(lambda));
          gens.push_back({v, g, gi});
        }
      }
  }

  std::vector<std::uint32_t> parent(static_cast<std::size_t>(total));
  std::iota(parent.begin(), parent.end(), 0u);
  auto find = [&](std::uint32_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  };
  for (std::uint64_t code = 0; code < total; ++code) {
    const RepObject x = decode(dims, code);
    for (const auto& gen : gens) {
      std::vector<FieldMatrix> maps = x.maps();
      for (std::size_t ai = 0; ai < quiver_.arrows().size(); ++ai) {
        const auto& ar = quiver_.arrows()[ai];
        if (ar.target == gen.v) maps[ai] = gen.g * maps[ai];
        if (ar.source == gen.v) maps[ai] = maps[ai] * gen.g_inv;
      }
      const std::uint64_t other = encode(RepObject(quiver_, f, dims, std::move(maps)));
      const auto ra = find(static_cast<std::uint32_t>(code)), rb = find(static_cast<std::uint32_t>(other));
      if (ra < rb)
        parent[rb] = ra;
      else if (rb < ra)
        parent[ra] = rb;
    }
  }

  auto t = std::make_shared<RegistryTable>();
  t->label_of_code.resize(static_cast<std::size_t>(total));
  std::map<std::uint32_t, std::uint32_t> index_of_root;
  for (std::uint64_t code = 0; code < total; ++code) {
    const auto r = find(static_cast<std::uint32_t>(code));
    if (r == code) {
      index_of_root.emplace(r, static_cast<std::uint32_t>(t->reps.size()));
      t->reps.push_back(decode(dims, code));
    }
    t->label_of_code[code] = index_of_root.at(r);
  }
  auto [pos, inserted] = tables_.emplace(dims, std::move(t));
  return *pos->second;
}

IsoLabel QuiverCategory::identify(const RepObject& x) const {
  check_dims(x);
  const auto& t = table(x.dims());
  return IsoLabel{x.dims(), t.label_of_code.at(static_cast<std::size_t>(encode(x)))};
}

const RepObject& QuiverCategory::representative(const IsoLabel& label) const {
  const auto& t = table(label.dims);
  if (label.index >= t.reps.size())
    throw ContractViolation("iso label " + label.to_string() + " does not exist (only " +
                            std::to_string(t.reps.size()) + " classes)");
  return t.reps[label.index];
}

std::vector<IsoLabel> QuiverCategory::labels_of_dimvec(const DimVec& dims) const {
  const auto& t = table(dims);
  std::vector<IsoLabel> out;
  for (std::size_t i = 0; i < t.reps.size(); ++i) out.push_back(IsoLabel{dims, i});
  return out;
}

std::vector<DimVec> QuiverCategory::dimvecs_up_to(int bound) const {
  std::vector<DimVec> out;
  const std::size_t n = quiver_.vertex_count();
  DimVec d(n, 0);
  while (true) {
    if (std::accumulate(d.begin(), d.end(), 0) <= bound) out.push_back(d);
    std::size_t i = n;
    while (i-- > 0) {
      if (d[i] < bound) {
        ++d[i];
        break;
      }
      d[i] = 0;
    }
    if (i == static_cast<std::size_t>(-1)) break;
  }
  std::stable_sort(out.begin(), out.end(), [](const DimVec& x, const DimVec& y) {
    return std::accumulate(x.begin(), x.end(), 0) < std::accumulate(y.begin(), y.end(), 0);
  });
  return out;
}

std::vector<IsoLabel> QuiverCategory::iso_classes(int bound) const {
  std::vector<IsoLabel> out;
  if (bound < 0) return out;
  for (const auto& d : dimvecs_up_to(bound)) {
    auto ls = labels_of_dimvec(d);
    out.insert(out.end(), ls.begin(), ls.end());
  }
  return out;
}

std::optional<RepMorphism> QuiverCategory::find_isomorphism(const RepObject& m, const RepObject& n) const {
  check_dims(m);
  check_dims(n);
  if (m.dims() != n.dims()) return std::nullopt;
  const auto hom = hom_space(m, n);
  const auto layout = morphism_layout(m, n);
  std::vector<Vector> basis;
  for (const auto& b : hom.basis) basis.push_back(layout.flatten(*field_, b.components));
  std::optional<RepMorphism> found;
  for_each_in_span(*field_, layout.size(), basis, budget_, "isomorphism search in dimension " + dims_string(m.dims()),
                   [&](const Vector& v) {
                     RepMorphism f{layout.unflatten(*field_, v)};
                     if (is_invertible(f)) {
                       found = std::move(f);
                       return false;
                     }
                     return true;
                   });
  return found;
}

bool QuiverCategory::is_isomorphic(const RepObject& m, const RepObject& n) const {
  return find_isomorphism(m, n).has_value();
}

// ---------------------------------------------------------------- subspaces and resolutions

SubspaceFamily QuiverCategory::whole(const RepObject& x) const {
  SubspaceFamily out(quiver_.vertex_count());
  for (std::size_t v = 0; v < out.size(); ++v) {
    const auto d = static_cast<std::size_t>(x.dim(v));
    for (std::size_t i = 0; i < d; ++i) {
      Vector e(d, field_->zero());
      e[i] = field_->one();
      out[v].push_back(std::move(e));
    }
  }
  return out;
}

SubspaceFamily QuiverCategory::kernel_family(const RepMorphism& f, const RepObject& from) const {
  SubspaceFamily out(quiver_.vertex_count());
  for (std::size_t v = 0; v < out.size(); ++v) {
    if (from.dim(v) == 0) continue;
    out[v] = rank_and_kernel(f.components[v]).kernel_basis;
  }
  return out;
}

SubspaceFamily QuiverCategory::image_family(const RepMorphism& f, const RepObject& to) const {
  SubspaceFamily out(quiver_.vertex_count());
  for (std::size_t v = 0; v < out.size(); ++v) {
    EchelonBasis eb(*field_, static_cast<std::size_t>(to.dim(v)));
    for (std::size_t c = 0; c < f.components[v].cols(); ++c) eb.add(f.components[v].column(c));
    out[v] = eb.rows();
  }
  return out;
}

SubspaceFamily QuiverCategory::top_complement(const RepObject& x, const SubspaceFamily& sub) const {
  SubspaceFamily out(quiver_.vertex_count());
  for (std::size_t w = 0; w < out.size(); ++w) {
    EchelonBasis rad(*field_, static_cast<std::size_t>(x.dim(w)));
    for (std::size_t ai = 0; ai < quiver_.arrows().size(); ++ai) {
      const auto& ar = quiver_.arrows()[ai];
      if (ar.target != w) continue;
      for (const auto& v : sub[ar.source]) rad.add(x.map(ai).apply(v));
    }
    for (const auto& v : sub[w])
      if (rad.add(v)) out[w].push_back(v);
  }
  return out;
}

RepObject QuiverCategory::subquotient(const RepObject& x, const SubspaceFamily& k, const SubspaceFamily& i) const {
  const std::size_t n = quiver_.vertex_count();
  std::vector<std::vector<Vector>> ibasis(n), comp(n);
  DimVec dims(n);
  for (std::size_t w = 0; w < n; ++w) {
    EchelonBasis eb(*field_, static_cast<std::size_t>(x.dim(w)));
    for (const auto& v : i[w]) eb.add(v);
    ibasis[w] = eb.rows();
    for (const auto& v : k[w])
      if (eb.add(v)) comp[w].push_back(v);
    dims[w] = static_cast<int>(comp[w].size());
  }
  std::vector<FieldMatrix> maps;
  for (std::size_t ai = 0; ai < quiver_.arrows().size(); ++ai) {
    const auto& ar = quiver_.arrows()[ai];
    FieldMatrix m(*field_, comp[ar.target].size(), comp[ar.source].size());
    if (!comp[ar.source].empty() && !comp[ar.target].empty()) {
      std::vector<Vector> cols = ibasis[ar.target];
      cols.insert(cols.end(), comp[ar.target].begin(), comp[ar.target].end());
      const auto basis = FieldMatrix::from_columns(*field_, static_cast<std::size_t>(x.dim(ar.target)), cols);
      const std::size_t skip = ibasis[ar.target].size();
      for (std::size_t c = 0; c < comp[ar.source].size(); ++c) {
        const auto sol = solve(basis, x.map(ai).apply(comp[ar.source][c]));
        if (!sol) throw InternalError("subquotient: K is not a subrepresentation");
        for (std::size_t r = 0; r < comp[ar.target].size(); ++r) m.set(r, c, sol->particular[skip + r]);
      }
    }
    maps.push_back(std::move(m));
  }
  return RepObject(quiver_, *field_, std::move(dims), std::move(maps));
}

Resolution QuiverCategory::minimal_resolution(const RepObject& a) const {
  check_dims(a);
  const std::size_t n = quiver_.vertex_count();
  Resolution res;
  std::vector<Vector> q_gens;
  const auto top = top_complement(a, whole(a));
  for (std::size_t v = 0; v < n; ++v)
    for (const auto& x : top[v]) {
      res.q_tops.push_back(v);
      q_gens.push_back(x);
    }
  res.q = projective(res.q_tops);
  res.g = morphism_from_generators(res.q_tops, a, q_gens);
  const auto ker = kernel_family(res.g, res.q);
  const auto ktop = top_complement(res.q, ker);
  std::vector<Vector> p_gens;
  for (std::size_t v = 0; v < n; ++v)
    for (const auto& x : ktop[v]) {
      res.p_tops.push_back(v);
      p_gens.push_back(x);
    }
  res.p = projective(res.p_tops);
  res.f = morphism_from_generators(res.p_tops, res.q, p_gens);
  return res;
}

std::shared_ptr<const Resolution> QuiverCategory::minimal_resolution(const IsoLabel& a) const {
  {
    std::lock_guard lock(memo_mu_);
    auto it = resolution_memo_.find(a);
    if (it != resolution_memo_.end()) return it->second;
  }
  auto r = std::make_shared<const Resolution>(minimal_resolution(representative(a)));
  std::lock_guard lock(memo_mu_);
  auto [it, inserted] = resolution_memo_.emplace(a, std::move(r));
  return it->second;
}

KClass QuiverCategory::resolution_p_class(const IsoLabel& a) const { return minimal_resolution(a)->p.kclass(); }

KClass QuiverCategory::resolution_q_class(const IsoLabel& a) const { return minimal_resolution(a)->q.kclass(); }

}  // namespace hallforge
