#include "hallforge/verify.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <chrono>
#include <ctime>
#include <map>
#include <exception>
#include <mutex>
#include <thread>

#include "hallforge/errors.hpp"
#include "hallforge/json_io.hpp"

namespace hallforge {
namespace {

using nlohmann::json;
using Example = std::optional<json>;

constexpr std::size_t kMaxCounterexamples = 5;

const char* kHallAssoc = "hall-assoc";
const char* kBialgebra = "bialgebra";
const char* kPairing = "pairing";
const char* kComplexRelations = "complex-relations";
const char* kTriangular = "triangular";
const char* kDoubleRelation = "double-relation";

CheckResult make_check(std::string name, bool gating = true) {
  CheckResult r;
  r.name = std::move(name);
  r.gating = gating;
  return r;
}

SuiteResult make_suite(std::string name) {
  SuiteResult s;
  s.name = std::move(name);
  return s;
}

unsigned worker_count(const RunConfig& c) {
  if (c.threads) return c.threads;
  return std::max(1u, std::thread::hardware_concurrency());
}

/// Evaluates `fn` on every item in parallel and records outcomes in item order.
template <class Item, class Fn>
void sweep(const Workspace& ws, CheckResult& r, const std::vector<Item>& items, Fn fn) {
  std::vector<Example> out(items.size());
  parallel_for(items.size(), worker_count(ws.config()), [&](std::size_t i) { out[i] = fn(items[i]); });
  r.cases += items.size();
  for (auto& e : out)
    if (e) r.fail(std::move(*e));
}

mpz_class int_pow(int q, long long k) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(q), static_cast<unsigned long>(k));
  return r;
}

/// {0} ∪ {±e_v}: small K-set used to exercise mixed symbols.
std::vector<KClass> unit_k_set(std::size_t n) {
  std::vector<KClass> out{KClass(n)};
  for (std::size_t v = 0; v < n; ++v) {
    KClass e(n);
    e[v] = 1;
    out.push_back(e);
    out.push_back(-e);
  }
  return out;
}

KClass class_of_mult(const Quiver& q, const std::vector<long long>& mult) {
  KClass out = q.zero_class();
  for (std::size_t v = 0; v < mult.size(); ++v) out = out + q.projective_class(v).scaled(mult[v]);
  return out;
}

long long mult_total(const std::vector<long long>& m) {
  long long s = 0;
  for (auto x : m) s += x;
  return s;
}

std::string mult_string(const std::vector<long long>& m) { return KClass(m).to_string(); }

std::string witness_string(const DecompositionWitness& w) {
  return "C_" + w.a.to_string() + " + C*_" + w.b.to_string() + " + K_P" + mult_string(w.p_mult) + " + K*_Q" +
         mult_string(w.q_mult);
}

int witness_size(const DecompositionWitness& w) {
  return w.a.total_dim() + w.b.total_dim() + static_cast<int>(mult_total(w.p_mult) + mult_total(w.q_mult));
}

HallElement brute_force_diamond(const QuiverCategory& cat, const IsoLabel& a, const IsoLabel& b) {
  const RepObject& x = cat.representative(a);
  const RepObject& y = cat.representative(b);
  DimVec dims = a.dims;
  for (std::size_t v = 0; v < dims.size(); ++v) dims[v] += b.dims[v];
  const mpz_class hom = int_pow(cat.q(), static_cast<long long>(cat.hom_space(x, y).dim));
  HallElement out;
  for (const auto& c : cat.labels_of_dimvec(dims)) {
    const auto n = cat.ext_count_with_middle(x, y, c);
    if (n == 0) continue;
    mpq_class r(mpz_class(static_cast<unsigned long>(n)), hom);
    r.canonicalize();
    out.add(HallBasis{c, cat.quiver().zero_class()}, Coeff(cat.q(), r, 0));
  }
  return out;
}

// ---------------------------------------------------------------------------
// hall-assoc

void classical_values(const Workspace& ws, SuiteResult& s) {
  const auto& cat = ws.category();
  const auto& hall = ws.hall();
  const auto& quiver = cat.quiver();
  const int q = cat.q();
  CheckResult r = make_check("classical-values");
  auto expect = [&](const std::string& what, const HallElement& got, const HallElement& want) {
    ++r.cases;
    if (!(got == want)) r.fail({{"identity", what}, {"got", to_json(got)}, {"expected", to_json(want)}});
  };
  const int bound = ws.config().max_total_dim;
  if (quiver.vertex_count() == 1 && quiver.arrows().empty() && bound >= 2) {
    const IsoLabel k = cat.identify(cat.simple(0));
    const IsoLabel k2 = cat.identify(cat.direct_sum(cat.simple(0), cat.simple(0)));
    HallElement want;
    want.add(hall.basis(k2), Coeff(q, mpq_class(1, q), 0));
    expect("[k]<>[k] = q^-1 [k^2]", hall.diamond(k, k), want);
    expect("[k]<>[k] brute force", brute_force_diamond(cat, k, k), want);
  }
  if (quiver.vertex_count() == 2 && quiver.arrows().size() == 1 && quiver.arrows()[0].source == 0 &&
      quiver.arrows()[0].target == 1 && bound >= 2) {
    const IsoLabel s1 = cat.identify(cat.simple(0)), s2 = cat.identify(cat.simple(1));
    const IsoLabel split = cat.identify(cat.direct_sum(cat.simple(0), cat.simple(1)));
    const IsoLabel p1 = cat.identify(cat.projective({0}));
    HallElement want12;
    want12.add(hall.basis(split), Coeff(1));
    want12.add(hall.basis(p1), Coeff(q - 1));
    HallElement want21 = hall.symbol(split);
    expect("[S1]<>[S2] = [S1+S2] + (q-1)[P1]", hall.diamond(s1, s2), want12);
    expect("[S1]<>[S2] brute force", brute_force_diamond(cat, s1, s2), want12);
    expect("[S2]<>[S1] = [S1+S2]", hall.diamond(s2, s1), want21);
    expect("[S2]<>[S1] brute force", brute_force_diamond(cat, s2, s1), want21);
  }
  s.checks.push_back(std::move(r));
}

void suite_hall_assoc(const Workspace& ws, SuiteResult& s) {
  const auto& cat = ws.category();
  const auto& hall = ws.hall();
  const int bound = ws.config().max_total_dim;
  const auto labels = cat.iso_classes(bound);

  using Triple = std::tuple<IsoLabel, IsoLabel, IsoLabel>;
  std::vector<Triple> triples;
  for (const auto& a : labels)
    for (const auto& b : labels)
      for (const auto& c : labels)
        if (a.total_dim() + b.total_dim() + c.total_dim() <= bound) triples.emplace_back(a, b, c);

  {
    CheckResult r = make_check("diamond-associativity");
    sweep(ws, r, triples, [&](const Triple& t) -> Example {
      const auto& [a, b, c] = t;
      const auto x = hall.symbol(a), y = hall.symbol(b), z = hall.symbol(c);
      const auto lhs = hall.diamond(hall.diamond(x, y), z);
      const auto rhs = hall.diamond(x, hall.diamond(y, z));
      if (lhs == rhs) return std::nullopt;
      return json{{"a", a.to_string()}, {"b", b.to_string()}, {"c", c.to_string()}, {"lhs", to_json(lhs)},
                  {"rhs", to_json(rhs)}};
    });
    s.checks.push_back(std::move(r));
  }
  {
    const auto ks = unit_k_set(cat.quiver().vertex_count());
    using BTriple = std::tuple<HallBasis, HallBasis, HallBasis>;
    std::vector<BTriple> items;
    for (const auto& [a, b, c] : triples)
      for (const auto& ka : ks)
        for (const auto& kb : ks)
          for (const auto& kc : ks) items.emplace_back(HallBasis{a, ka}, HallBasis{b, kb}, HallBasis{c, kc});
    CheckResult r = make_check("star-associativity");
    sweep(ws, r, items, [&](const BTriple& t) -> Example {
      const auto& [a, b, c] = t;
      const auto x = HallElement::single(a), y = HallElement::single(b), z = HallElement::single(c);
      const auto lhs = hall.star(hall.star(x, y), z);
      const auto rhs = hall.star(x, hall.star(y, z));
      if (lhs == rhs) return std::nullopt;
      return json{{"a", a.to_string()}, {"b", b.to_string()}, {"c", c.to_string()}, {"lhs", to_json(lhs)},
                  {"rhs", to_json(rhs)}};
    });
    s.checks.push_back(std::move(r));
  }
  {
    using Pair = std::pair<IsoLabel, IsoLabel>;
    std::vector<Pair> pairs;
    for (const auto& a : labels)
      for (const auto& b : labels)
        if (a.total_dim() + b.total_dim() <= bound) pairs.emplace_back(a, b);
    CheckResult grading = make_check("grading");
    sweep(ws, grading, pairs, [&](const Pair& p) -> Example {
      const KClass want = p.first.kclass() + p.second.kclass();
      for (const auto& [h, c] : hall.star(hall.basis(p.first), hall.basis(p.second)))
        if (h.label.kclass() != want || !h.k.is_zero())
          return json{{"a", p.first.to_string()}, {"b", p.second.to_string()}, {"term", h.to_string()}};
      return std::nullopt;
    });
    s.checks.push_back(std::move(grading));

    CheckResult brute = make_check("diamond-vs-extension-enumeration");
    sweep(ws, brute, pairs, [&](const Pair& p) -> Example {
      const auto got = hall.diamond(p.first, p.second);
      const auto want = brute_force_diamond(cat, p.first, p.second);
      if (got == want) return std::nullopt;
      return json{{"a", p.first.to_string()}, {"b", p.second.to_string()}, {"got", to_json(got)},
                  {"expected", to_json(want)}};
    });
    s.checks.push_back(std::move(brute));
  }
  classical_values(ws, s);
}

// ---------------------------------------------------------------------------
// bialgebra

void suite_bialgebra(const Workspace& ws, SuiteResult& s) {
  const auto& cat = ws.category();
  const auto& hall = ws.hall();
  const int bound = ws.config().max_total_dim;
  const auto labels = cat.iso_classes(bound);
  const auto ks = unit_k_set(cat.quiver().vertex_count());

  std::vector<HallBasis> singles;
  for (const auto& a : labels)
    for (const auto& k : ks) singles.push_back(HallBasis{a, k});

  using Pair = std::pair<HallBasis, HallBasis>;
  std::vector<Pair> pairs;
  for (const auto& a : labels)
    for (const auto& b : labels)
      if (a.total_dim() + b.total_dim() <= bound)
        for (const auto& ka : ks)
          for (const auto& kb : ks) pairs.emplace_back(HallBasis{a, ka}, HallBasis{b, kb});

  for (auto variant : {CoproductVariant::k_inserted, CoproductVariant::literal}) {
    const std::string tag = "[" + to_string(variant) + "]";
    CheckResult coassoc = make_check("coassociativity" + tag);
    sweep(ws, coassoc, singles, [&](const HallBasis& a) -> Example {
      const auto d = hall.coproduct(a, variant);
      if (hall.coproduct_left(d, variant) == hall.coproduct_right(d, variant)) return std::nullopt;
      return json{{"a", a.to_string()}};
    });
    s.checks.push_back(std::move(coassoc));

    CheckResult counit = make_check("counit" + tag);
    sweep(ws, counit, singles, [&](const HallBasis& a) -> Example {
      const auto d = hall.coproduct(a, variant);
      const auto want = HallElement::single(a);
      const auto l = hall.counit_left(d), r = hall.counit_right(d);
      if (l == want && r == want) return std::nullopt;
      return json{{"a", a.to_string()}, {"left", to_json(l)}, {"right", to_json(r)}};
    });
    s.checks.push_back(std::move(counit));

    CheckResult hom = make_check("coproduct-homomorphism" + tag, false);
    sweep(ws, hom, pairs, [&](const Pair& p) -> Example {
      const auto x = HallElement::single(p.first), y = HallElement::single(p.second);
      const auto lhs = hall.coproduct(hall.star(x, y), variant);
      const auto rhs = hall.tensor_star(hall.coproduct(x, variant), hall.coproduct(y, variant));
      if (lhs == rhs) return std::nullopt;
      return json{{"x", p.first.to_string()}, {"y", p.second.to_string()}};
    });
    hom.info = {{"variant", to_string(variant)}, {"holds", hom.passed()}};
    s.checks.push_back(std::move(hom));
  }
}

// ---------------------------------------------------------------------------
// pairing

void suite_pairing(const Workspace& ws, SuiteResult& s) {
  const auto& cat = ws.category();
  const auto& quiver = cat.quiver();
  const auto& hall = ws.hall();
  const int bound = ws.config().max_total_dim;
  const auto labels = cat.iso_classes(bound);
  const auto ks = unit_k_set(quiver.vertex_count());
  const auto variant = CoproductVariant::k_inserted;

  // (x, y, z) with cl z = cl x + cl y.
  using Triple = std::tuple<HallBasis, HallBasis, HallBasis>;
  std::vector<Triple> triples;
  for (const auto& a : labels)
    for (const auto& b : labels) {
      if (a.total_dim() + b.total_dim() > bound) continue;
      DimVec dims = a.dims;
      for (std::size_t v = 0; v < dims.size(); ++v) dims[v] += b.dims[v];
      for (const auto& c : cat.labels_of_dimvec(dims))
        for (const auto& ka : ks)
          for (const auto& kb : ks)
            for (const auto& kc : ks) triples.emplace_back(HallBasis{a, ka}, HallBasis{b, kb}, HallBasis{c, kc});
    }

  CheckResult r = make_check("hopf-pairing");
  sweep(ws, r, triples, [&](const Triple& t) -> Example {
    const auto& [x, y, z] = t;
    const auto xe = HallElement::single(x), ye = HallElement::single(y), ze = HallElement::single(z);
    const Coeff lhs = hall.hopf_pairing(hall.star(xe, ye), ze);
    const Coeff rhs = hall.tensor_pairing(hall.tensor(xe, ye), hall.coproduct(ze, variant));
    if (lhs == rhs) return std::nullopt;
    return json{{"x", x.to_string()}, {"y", y.to_string()}, {"z", z.to_string()}, {"lhs", to_json(lhs)},
                {"rhs", to_json(rhs)}};
  });
  s.checks.push_back(std::move(r));

  CheckResult dual = make_check("hopf-pairing-dual");
  sweep(ws, dual, triples, [&](const Triple& t) -> Example {
    const auto& [y, z, x] = t;
    const auto xe = HallElement::single(x), ye = HallElement::single(y), ze = HallElement::single(z);
    const Coeff lhs = hall.hopf_pairing(xe, hall.star(ye, ze));
    const Coeff rhs = hall.tensor_pairing(hall.coproduct(xe, variant), hall.tensor(ye, ze));
    if (lhs == rhs) return std::nullopt;
    return json{{"x", x.to_string()}, {"y", y.to_string()}, {"z", z.to_string()}, {"lhs", to_json(lhs)},
                {"rhs", to_json(rhs)}};
  });
  s.checks.push_back(std::move(dual));

  CheckResult values = make_check("pairing-values");
  using Pair = std::pair<HallBasis, HallBasis>;
  std::vector<Pair> pairs;
  for (const auto& a : labels)
    for (const auto& b : labels) pairs.emplace_back(hall.basis(a), hall.basis(b));
  for (const auto& ka : DoubleAlgebra::k_grid(quiver.vertex_count(), std::min(ws.config().kgrid, 1)))
    for (const auto& kb : DoubleAlgebra::k_grid(quiver.vertex_count(), std::min(ws.config().kgrid, 1)))
      pairs.emplace_back(hall.basis(IsoLabel::zero(quiver.vertex_count()), ka),
                         hall.basis(IsoLabel::zero(quiver.vertex_count()), kb));
  sweep(ws, values, pairs, [&](const Pair& p) -> Example {
    const Coeff got = hall.hopf_pairing(p.first, p.second);
    Coeff want(0);
    if (p.first.label == p.second.label)
      want = Coeff(static_cast<long long>(cat.aut_order(p.first.label))) *
             hall.tpow(quiver.sym_euler_form(p.first.k, p.second.k));
    if (got == want) return std::nullopt;
    return json{{"x", p.first.to_string()}, {"y", p.second.to_string()}, {"got", to_json(got)},
                {"expected", to_json(want)}};
  });
  s.checks.push_back(std::move(values));
}

// ---------------------------------------------------------------------------
// complex-relations

void suite_complex_relations(const Workspace& ws, SuiteResult& s) {
  const auto& cat = ws.category();
  const auto& quiver = cat.quiver();
  const auto& cx = ws.complexes();
  const auto& dh = ws.dh();
  const int bound = ws.config().max_total_dim;
  const int q = cat.q();
  const auto labels = cat.iso_classes(bound);

  using NF = std::pair<IsoLabel, IsoLabel>;
  std::vector<NF> nfs;
  for (const auto& a : labels)
    for (const auto& b : labels)
      if (a.total_dim() + b.total_dim() <= bound) nfs.emplace_back(a, b);
  auto nf_string = [](const NF& n) { return "C_" + n.first.to_string() + " + C*_" + n.second.to_string(); };
  auto nf_size = [](const NF& n) { return n.first.total_dim() + n.second.total_dim(); };

  using NFPair = std::pair<NF, NF>;
  std::vector<NFPair> all_pairs, small_pairs;
  for (const auto& x : nfs)
    for (const auto& y : nfs) {
      all_pairs.emplace_back(x, y);
      if (nf_size(x) + nf_size(y) <= bound) small_pairs.emplace_back(x, y);
    }

  {
    CheckResult r = make_check("ext-equals-homotopy-hom");
    sweep(ws, r, all_pairs, [&](const NFPair& p) -> Example {
      const auto n = cx.normal_form_complex(p.first.first, p.first.second);
      const auto m = cx.normal_form_complex(p.second.first, p.second.second);
      const auto ext = cx.ext1_dim(n, m);
      const auto hq = cx.complex_hom(n, cx.shift(m)).homotopy_quotient_dim;
      if (ext == hq) return std::nullopt;
      return json{{"n", nf_string(p.first)}, {"m", nf_string(p.second)}, {"ext1_dim", ext}, {"homotopy_hom_dim", hq}};
    });
    s.checks.push_back(std::move(r));
  }
  {
    CheckResult r = make_check("ext-middle-total");
    sweep(ws, r, small_pairs, [&](const NFPair& p) -> Example {
      const auto x = cx.normal_form_complex(p.first.first, p.first.second);
      const auto y = cx.normal_form_complex(p.second.first, p.second.second);
      const auto h = cx.ext_middle_histogram(x, y);
      mpz_class total = 0;
      for (const auto& [w, e] : h.terms) total += mpz_class(static_cast<unsigned long>(e.second));
      if (total == int_pow(q, static_cast<long long>(h.ext_dim)) && h.ext_dim == cx.ext1_dim(x, y))
        return std::nullopt;
      return json{{"x", nf_string(p.first)}, {"y", nf_string(p.second)}, {"total", total.get_str()},
                  {"ext1_dim", h.ext_dim}};
    });
    s.checks.push_back(std::move(r));
  }
  {
    // Histogram counts (decomposition-based) against the exhaustive isomorphism oracle.
    std::vector<NFPair> tiny;
    for (const auto& p : small_pairs)
      if (nf_size(p.first) + nf_size(p.second) <= std::min(bound, 2)) tiny.push_back(p);
    CheckResult r = make_check("ext-middle-oracle");
    sweep(ws, r, tiny, [&](const NFPair& p) -> Example {
      const auto x = cx.normal_form_complex(p.first.first, p.first.second);
      const auto y = cx.normal_form_complex(p.second.first, p.second.second);
      const auto h = cx.ext_middle_histogram(x, y);
      for (const auto& [w, e] : h.terms) {
        const auto n = cx.ext1_complex_count_with_middle(x, y, cx.reassemble(w));
        if (n != e.second)
          return json{{"x", nf_string(p.first)}, {"y", nf_string(p.second)}, {"middle", witness_string(w)},
                      {"histogram", e.second}, {"oracle", n}};
      }
      return std::nullopt;
    });
    s.checks.push_back(std::move(r));
  }

  const auto witnesses = enumerate_witnesses(cx, bound);
  {
    CheckResult r = make_check("decomposition-roundtrip");
    sweep(ws, r, witnesses, [&](const DecompositionWitness& w) -> Example {
      const auto m = cx.reassemble(w);
      const auto d = cx.decompose(m);
      const KClass xhat = w.a.kclass() - w.b.kclass();
      const long long want = -quiver.euler_form(w.p_class, xhat) + quiver.euler_form(w.q_class, xhat);
      if (d.witness == w && d.exponent == want && cx.is_isomorphic(cx.reassemble(d.witness), m)) return std::nullopt;
      return json{{"complex", witness_string(w)}, {"decomposed", witness_string(d.witness)}, {"exponent", d.exponent}};
    });
    // Middle terms of extensions are not in block form; they exercise the general case.
    std::vector<NFPair> ext_sources;
    for (const auto& p : small_pairs)
      if (nf_size(p.first) + nf_size(p.second) <= std::min(bound, 2)) ext_sources.push_back(p);
    sweep(ws, r, ext_sources, [&](const NFPair& p) -> Example {
      const auto x = cx.normal_form_complex(p.first.first, p.first.second);
      const auto y = cx.normal_form_complex(p.second.first, p.second.second);
      for (const auto& sigma : cx.ext1_classes(x, y)) {
        const auto l = cx.ext_middle(x, y, sigma);
        const auto d = cx.decompose(l);
        if (!cx.is_isomorphic(cx.reassemble(d.witness), l))
          return json{{"x", nf_string(p.first)}, {"y", nf_string(p.second)}, {"decomposed", witness_string(d.witness)}};
      }
      return std::nullopt;
    });
    s.checks.push_back(std::move(r));
  }
  {
    // Acyclic complexes: extensions among K_P and K_Q* pieces, plus the block ones.
    const auto mults = multiplicity_vectors(quiver.vertex_count(), bound);
    using MPair = std::tuple<std::vector<long long>, std::vector<long long>, int>;
    std::vector<MPair> items;
    for (const auto& p : mults)
      for (const auto& qm : mults)
        if (mult_total(p) + mult_total(qm) <= bound)
          for (int kind = 0; kind < 4; ++kind) items.emplace_back(p, qm, kind);
    CheckResult r = make_check("acyclic-decomposition");
    sweep(ws, r, items, [&](const MPair& it) -> Example {
      const auto& [p, qm, kind] = it;
      const auto x = (kind & 1) ? cx.kstar_of(p) : cx.k_of(p);
      const auto y = (kind & 2) ? cx.kstar_of(qm) : cx.k_of(qm);
      for (const auto& sigma : cx.ext1_classes(x, y)) {
        const auto l = cx.ext_middle(x, y, sigma);
        const auto d = cx.decompose(l);
        const bool acyclic = d.witness.a.is_zero() && d.witness.b.is_zero();
        if (!acyclic || !cx.is_isomorphic(cx.reassemble(d.witness), l))
          return json{{"p", mult_string(p)}, {"q", mult_string(qm)}, {"kind", kind},
                      {"decomposed", witness_string(d.witness)}};
      }
      return std::nullopt;
    });
    s.checks.push_back(std::move(r));
  }
  {
    using LPair = std::pair<IsoLabel, IsoLabel>;
    std::vector<LPair> items;
    for (const auto& a : labels)
      for (const auto& b : labels) items.emplace_back(a, b);
    CheckResult r = make_check("hom-c-cstar-count");
    sweep(ws, r, items, [&](const LPair& p) -> Example {
      const auto dim = cx.complex_hom(cx.c_of(p.first), cx.shift(cx.c_of(p.second))).dim;
      const long long e = quiver.euler_form(cat.resolution_p_class(p.first), cat.resolution_q_class(p.second));
      // |Hom| = t^{2e} = q^e, as exact integers.
      const bool ok = e >= 0 && int_pow(q, static_cast<long long>(dim)) == int_pow(q, e);
      if (ok) return std::nullopt;
      return json{{"a", p.first.to_string()}, {"b", p.second.to_string()}, {"hom_dim", dim}, {"euler", e}};
    });
    s.checks.push_back(std::move(r));
  }

  const auto mults = multiplicity_vectors(quiver.vertex_count(), bound);
  {
    using KM = std::pair<std::vector<long long>, DecompositionWitness>;
    std::vector<KM> items;
    for (const auto& p : mults)
      if (mult_total(p) > 0)
        for (const auto& w : witnesses)
          if (mult_total(p) + witness_size(w) <= bound) items.emplace_back(p, w);

    CheckResult rel = make_check("k-product-relations");
    sweep(ws, rel, items, [&](const KM& it) -> Example {
      const auto& [p, w] = it;
      const auto m = cx.reassemble(w);
      const KClass pc = class_of_mult(quiver, p);
      const KClass mh = cx.hat(m);
      const auto kp = cx.k_of(p), kps = cx.kstar_of(p);
      const auto sum = cx.direct_sum(kp, m), sums = cx.direct_sum(kps, m);
      struct Case {
        const char* name;
        DHElement got;
        DHElement want;
      };
      const Case cases[] = {
          {"[K_P]*[M] = t^<P,M^>[K_P+M]", dh.complex_hall_product(kp, m),
           dh.normalize(sum, dh.tpow(quiver.euler_form(pc, mh)))},
          {"[M]*[K_P] = t^-<M^,P>[K_P+M]", dh.complex_hall_product(m, kp),
           dh.normalize(sum, dh.tpow(-quiver.euler_form(mh, pc)))},
          {"[K*_P]*[M] = t^-<P,M^>[K*_P+M]", dh.complex_hall_product(kps, m),
           dh.normalize(sums, dh.tpow(-quiver.euler_form(pc, mh)))},
          {"[M]*[K*_P] = t^<M^,P>[K*_P+M]", dh.complex_hall_product(m, kps),
           dh.normalize(sums, dh.tpow(quiver.euler_form(mh, pc)))},
      };
      for (const auto& c : cases)
        if (!(c.got == c.want))
          return json{{"relation", c.name}, {"p", mult_string(p)}, {"m", witness_string(w)}, {"got", to_json(c.got)},
                      {"expected", to_json(c.want)}};
      return std::nullopt;
    });
    s.checks.push_back(std::move(rel));

    CheckResult comm = make_check("k-commutation");
    sweep(ws, comm, items, [&](const KM& it) -> Example {
      const auto& [p, w] = it;
      const auto m = cx.reassemble(w);
      const long long e = quiver.sym_euler_form(class_of_mult(quiver, p), cx.hat(m));
      const auto kp = cx.k_of(p), kps = cx.kstar_of(p);
      const auto l1 = dh.complex_hall_product(kp, m);
      const auto r1 = dh.complex_hall_product(m, kp).scaled(dh.tpow(e));
      const auto l2 = dh.complex_hall_product(kps, m);
      const auto r2 = dh.complex_hall_product(m, kps).scaled(dh.tpow(-e));
      if (l1 == r1 && l2 == r2) return std::nullopt;
      return json{{"p", mult_string(p)}, {"m", witness_string(w)}, {"plus_ok", l1 == r1}, {"star_ok", l2 == r2}};
    });
    s.checks.push_back(std::move(comm));
  }
  {
    // K_α depends only on α: [K_P]∗[K_Q'] = [K_P']∗[K_Q] and [K_P]∗[K_Q*] = [K_Q*]∗[K_P]
    // whenever cl P - cl Q = cl P' - cl Q'.
    using Quad = std::array<std::vector<long long>, 4>;
    std::vector<Quad> items;
    for (const auto& p : mults)
      for (const auto& qm : mults)
        for (const auto& p2 : mults)
          for (const auto& q2 : mults) {
            if (mult_total(p) + mult_total(q2) > bound || mult_total(p2) + mult_total(qm) > bound) continue;
            if (p == p2) continue;
            if (class_of_mult(quiver, p) - class_of_mult(quiver, qm) != class_of_mult(quiver, p2) - class_of_mult(quiver, q2))
              continue;
            items.push_back({p, qm, p2, q2});
          }
    CheckResult r = make_check("k-well-defined");
    sweep(ws, r, items, [&](const Quad& t) -> Example {
      const auto lhs = dh.complex_hall_product(cx.k_of(t[0]), cx.k_of(t[3]));
      const auto rhs = dh.complex_hall_product(cx.k_of(t[2]), cx.k_of(t[1]));
      if (lhs == rhs) return std::nullopt;
      return json{{"p", mult_string(t[0])}, {"q", mult_string(t[1])}, {"p2", mult_string(t[2])}, {"q2", mult_string(t[3])}};
    });
    using MP = std::pair<std::vector<long long>, std::vector<long long>>;
    std::vector<MP> pairs;
    for (const auto& p : mults)
      for (const auto& qm : mults)
        if (mult_total(p) + mult_total(qm) <= bound) pairs.emplace_back(p, qm);
    sweep(ws, r, pairs, [&](const MP& pq) -> Example {
      const auto kp = cx.k_of(pq.first), kq = cx.kstar_of(pq.second);
      const auto a = dh.complex_hall_product(kp, kq), b = dh.complex_hall_product(kq, kp);
      const auto want = dh.multiply(dh.k_plus(class_of_mult(quiver, pq.first)), dh.k_minus(class_of_mult(quiver, pq.second)));
      if (a == b && a == want && dh.normalize(cx.direct_sum(kp, kq)) == want) return std::nullopt;
      return json{{"p", mult_string(pq.first)}, {"q*", mult_string(pq.second)}, {"lhs", to_json(a)}, {"rhs", to_json(b)}};
    });
    s.checks.push_back(std::move(r));
  }
}

// ---------------------------------------------------------------------------
// triangular

void suite_triangular(const Workspace& ws, SuiteResult& s) {
  CheckResult r = make_check("triangular-basis");
  const auto rep = ws.dh().check_triangular_basis(ws.config().max_total_dim, ws.config().kgrid);
  r.cases = rep.products;
  if (!rep.independent || !rep.triangular) {
    r.failures = std::max<std::size_t>(1, rep.failures.size());
    for (const auto& f : rep.failures)
      if (r.counterexamples.size() < kMaxCounterexamples) r.counterexamples.push_back(f);
  }
  r.info = to_json(rep);
  s.checks.push_back(std::move(r));
}

// ---------------------------------------------------------------------------
// double-relation

void suite_double_relation(const Workspace& ws, SuiteResult& s) {
  const auto& cat = ws.category();
  const auto& quiver = cat.quiver();
  const auto& hall = ws.hall();
  const auto& dh = ws.dh();
  const int bound = ws.config().max_total_dim;
  const std::size_t n = quiver.vertex_count();
  const auto labels = cat.iso_classes(bound);
  const auto zero = IsoLabel::zero(n);

  {
    using Pair = std::pair<HallBasis, HallBasis>;
    std::vector<Pair> pairs;
    const auto ks = unit_k_set(n);
    for (const auto& a : labels)
      for (const auto& b : labels)
        if (a.total_dim() + b.total_dim() <= bound)
          for (const auto& k : ks) pairs.emplace_back(HallBasis{a, k}, HallBasis{b, quiver.zero_class()});
    CheckResult r = make_check("embedding-homomorphism");
    sweep(ws, r, pairs, [&](const Pair& p) -> Example {
      const auto prod = hall.star(p.first, p.second);
      const bool plus = dh.embed_plus(prod) == dh.multiply(dh.embed_plus(p.first), dh.embed_plus(p.second));
      const bool minus = dh.embed_minus(prod) == dh.multiply(dh.embed_minus(p.first), dh.embed_minus(p.second));
      if (plus && minus) return std::nullopt;
      return json{{"x", p.first.to_string()}, {"y", p.second.to_string()}, {"plus_ok", plus}, {"minus_ok", minus}};
    });
    s.checks.push_back(std::move(r));
  }

  // Generators E_A, F_A, K_{±e_v}, K*_{±e_v} with their homology size.
  std::vector<std::pair<std::string, DHElement>> gens;
  std::vector<int> gen_size;
  for (const auto& a : labels) {
    if (a.is_zero()) continue;
    gens.emplace_back("E[" + a.to_string() + "]", dh.e(a));
    gen_size.push_back(a.total_dim());
    gens.emplace_back("F[" + a.to_string() + "]", dh.f(a));
    gen_size.push_back(a.total_dim());
  }
  for (const auto& k : unit_k_set(n)) {
    if (k.is_zero()) continue;
    gens.emplace_back("K" + k.to_string(), dh.k_plus(k));
    gen_size.push_back(0);
    gens.emplace_back("K*" + k.to_string(), dh.k_minus(k));
    gen_size.push_back(0);
  }
  {
    using Idx = std::array<std::size_t, 3>;
    std::vector<Idx> triples;
    for (std::size_t i = 0; i < gens.size(); ++i)
      for (std::size_t j = 0; j < gens.size(); ++j)
        for (std::size_t k = 0; k < gens.size(); ++k)
          if (gen_size[i] + gen_size[j] + gen_size[k] <= bound) triples.push_back({i, j, k});
    CheckResult r = make_check("dh-associativity");
    sweep(ws, r, triples, [&](const Idx& t) -> Example {
      const auto& x = gens[t[0]].second;
      const auto& y = gens[t[1]].second;
      const auto& z = gens[t[2]].second;
      if (dh.multiply(dh.multiply(x, y), z) == dh.multiply(x, dh.multiply(y, z))) return std::nullopt;
      return json{{"x", gens[t[0]].first}, {"y", gens[t[1]].first}, {"z", gens[t[2]].first}};
    });
    s.checks.push_back(std::move(r));

    using Idx2 = std::array<std::size_t, 2>;
    std::vector<Idx2> pairs;
    for (std::size_t i = 0; i < gens.size(); ++i)
      for (std::size_t j = 0; j < gens.size(); ++j)
        if (gen_size[i] + gen_size[j] <= bound) pairs.push_back({i, j});
    CheckResult inv = make_check("star-automorphism");
    sweep(ws, inv, pairs, [&](const Idx2& t) -> Example {
      const auto& x = gens[t[0]].second;
      const auto& y = gens[t[1]].second;
      if (dh.star(dh.multiply(x, y)) == dh.multiply(dh.star(x), dh.star(y))) return std::nullopt;
      return json{{"x", gens[t[0]].first}, {"y", gens[t[1]].first}};
    });
    s.checks.push_back(std::move(inv));
  }

  // Symbols: K_α on the grid, [A] within bound, and [A]K_{±e_v} for |A| = 1.
  std::vector<HallBasis> symbols;
  for (const auto& k : DoubleAlgebra::k_grid(n, ws.config().kgrid)) symbols.push_back(HallBasis{zero, k});
  for (const auto& a : labels)
    if (!a.is_zero()) symbols.push_back(hall.basis(a));
  for (const auto& a : labels)
    if (a.total_dim() == 1)
      for (const auto& k : unit_k_set(n))
        if (!k.is_zero()) symbols.push_back(HallBasis{a, k});

  using Pair = std::pair<HallBasis, HallBasis>;
  std::vector<Pair> pairs;
  for (const auto& a : symbols)
    for (const auto& b : symbols) pairs.emplace_back(a, b);

  CheckResult r = make_check("double-relation");
  std::map<std::string, std::pair<std::size_t, std::size_t>> by_case;  // tag -> (cases, equal)
  std::vector<std::optional<DoubleReport>> reports(pairs.size());
  parallel_for(pairs.size(), worker_count(ws.config()), [&](std::size_t i) {
    reports[i] = dh.check_double_relation(pairs[i].first, pairs[i].second, RelationForm::crossed,
                                          CoproductVariant::k_inserted);
  });
  for (const auto& rep : reports) {
    ++r.cases;
    auto& c = by_case[rep->case_tag];
    ++c.first;
    if (rep->equal)
      ++c.second;
    else
      r.fail(to_json(*rep));
  }
  json cases = json::object();
  for (const auto& [tag, c] : by_case) cases[tag] = {{"cases", c.first}, {"equal", c.second}};
  r.info = {{"form", to_string(RelationForm::crossed)},
            {"variant", to_string(CoproductVariant::k_inserted)},
            {"by_case", cases}};
  s.checks.push_back(std::move(r));

  // The literal form, recorded for reference over the plain [A] symbols.
  std::vector<Pair> plain;
  for (const auto& a : labels)
    for (const auto& b : labels) plain.emplace_back(hall.basis(a), hall.basis(b));
  CheckResult lit = make_check("double-relation-literal", false);
  sweep(ws, lit, plain, [&](const Pair& p) -> Example {
    const auto rep = dh.check_double_relation(p.first, p.second, RelationForm::literal, CoproductVariant::literal);
    if (rep.equal) return std::nullopt;
    return json{{"a", p.first.to_string()}, {"b", p.second.to_string()}};
  });
  lit.info = {{"form", to_string(RelationForm::literal)},
              {"variant", to_string(CoproductVariant::literal)},
              {"holds", lit.passed()}};
  s.checks.push_back(std::move(lit));
}

std::string iso_now() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace

const std::vector<std::string>& known_suites() {
  static const std::vector<std::string> s{kHallAssoc, kBialgebra, kPairing, kComplexRelations, kTriangular,
                                          kDoubleRelation};
  return s;
}

void validate(const RunConfig& c, bool require_suites) {
  if (!GaloisField::is_supported(c.q)) {
    std::string list;
    for (int q : GaloisField::supported_orders()) list += (list.empty() ? "" : ", ") + std::to_string(q);
    throw UsageError("unsupported field order q = " + std::to_string(c.q) + " (supported: " + list + ")");
  }
  if (c.max_total_dim < 0) throw UsageError("--max-dim must be non-negative");
  if (c.kgrid < 0) throw UsageError("--kgrid must be non-negative");
  if (c.budget == 0) throw UsageError("--budget must be positive");
  if (require_suites && c.suites.empty()) throw UsageError("at least one --suite is required");
  for (const auto& s : c.suites)
    if (std::find(known_suites().begin(), known_suites().end(), s) == known_suites().end())
      throw UsageError("unknown suite: " + s);
}

Workspace::Workspace(const RunConfig& config, std::shared_ptr<CountStore> store)
    : config_(config), store_(std::move(store)) {
  validate(config_, false);
  std::optional<Quiver> quiver;
  try {
    quiver = Quiver::load(config_.quiver);
  } catch (const std::exception& ex) {
    throw UsageError("invalid quiver '" + config_.quiver + "': " + ex.what());
  }
  EnumerationBudget budget;
  budget.max_candidates = config_.budget;
  cat_ = std::make_unique<QuiverCategory>(std::move(*quiver), config_.q, budget, store_);
  hall_ = std::make_unique<HallAlgebra>(*cat_);
  cx_ = std::make_unique<ComplexCategory>(*cat_);
  dh_ = std::make_unique<DoubleAlgebra>(*hall_, *cx_);
}

json Workspace::config_json() const {
  return {{"quiver", cat_->quiver().name()},
          {"quiver_fingerprint", cat_->quiver().fingerprint()},
          {"q", config_.q},
          {"max_dim", config_.max_total_dim},
          {"kgrid", config_.kgrid},
          {"suites", config_.suites},
          {"budget", config_.budget}};
}

void CheckResult::fail(json example) {
  ++failures;
  if (counterexamples.size() < kMaxCounterexamples) counterexamples.push_back(std::move(example));
}

json CheckResult::to_json() const {
  json j{{"name", name},         {"gating", gating},
         {"passed", passed()},   {"cases", cases},
         {"failures", failures}, {"counterexamples", counterexamples}};
  if (!info.is_null()) j["info"] = info;
  return j;
}

bool SuiteResult::passed() const {
  if (aborted) return false;
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return !c.gating || c.passed(); });
}

json SuiteResult::to_json() const {
  json cs = json::array();
  for (const auto& c : checks) cs.push_back(c.to_json());
  json j{{"name", name}, {"passed", passed()}, {"checks", cs}};
  if (aborted) j["aborted"] = *aborted;
  return j;
}

SuiteResult run_suite(const Workspace& ws, const std::string& suite) {
  using Fn = void (*)(const Workspace&, SuiteResult&);
  static const std::map<std::string, Fn> table{
      {kHallAssoc, suite_hall_assoc},   {kBialgebra, suite_bialgebra},   {kPairing, suite_pairing},
      {kComplexRelations, suite_complex_relations}, {kTriangular, suite_triangular}, {kDoubleRelation, suite_double_relation},
  };
  auto it = table.find(suite);
  if (it == table.end()) throw UsageError("unknown suite: " + suite);
  SuiteResult s = make_suite(suite);
  try {
    it->second(ws, s);
  } catch (const BudgetExceeded& ex) {
    s.aborted = ex.what();
  }
  return s;
}

VerifyOutcome run_verify(const Workspace& ws) {
  const auto started = std::chrono::steady_clock::now();
  const std::string started_at = iso_now();
  VerifyOutcome out;
  json suites = json::array();
  json skipped = json::array();
  bool all = true;
  for (const auto& name : ws.config().suites) {
    if (out.status == RunStatus::budget_exceeded) {
      skipped.push_back(name);
      continue;
    }
    SuiteResult s = run_suite(ws, name);
    if (s.aborted) out.status = RunStatus::budget_exceeded;
    all = all && s.passed();
    suites.push_back(s.to_json());
  }
  if (out.status != RunStatus::budget_exceeded) out.status = all ? RunStatus::pass : RunStatus::fail;

  const auto elapsed =
      std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - started).count();
  json cache = nullptr;
  if (ws.store()) {
    const auto st = ws.store()->stats();
    cache = {{"hits", st.hits}, {"misses", st.misses}, {"writes", st.writes}, {"corrupt", st.corrupt}};
  }
  static const char* status_names[] = {"pass", "fail", "budget_exceeded"};
  out.report = {{"schema_version", kSchemaVersion},
                {"command", "verify"},
                {"config", ws.config_json()},
                {"status", status_names[static_cast<int>(out.status)]},
                {"all_passed", out.status == RunStatus::pass},
                {"suites", suites},
                {"skipped", skipped},
                {"runtime", {{"started_at", started_at}, {"elapsed_ms", elapsed}, {"cache", cache}}}};
  return out;
}

void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& fn) {
  if (n == 0) return;
  threads = static_cast<unsigned>(std::min<std::size_t>(std::max(1u, threads), n));
  std::vector<std::exception_ptr> errors(n);
  std::atomic<std::size_t> next{0};
  std::atomic<bool> stop{false};
  auto work = [&] {
    for (std::size_t i; !stop && (i = next.fetch_add(1)) < n;) {
      try {
        fn(i);
      } catch (...) {
        errors[i] = std::current_exception();
        stop = true;
      }
    }
  };
  if (threads == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

std::vector<std::vector<long long>> multiplicity_vectors(std::size_t n, int bound) {
  std::vector<std::vector<long long>> out;
  std::vector<long long> cur(n, 0);
  std::function<void(std::size_t, int)> rec = [&](std::size_t v, int left) {
    if (v == n) {
      out.push_back(cur);
      return;
    }
    for (int m = 0; m <= left; ++m) {
      cur[v] = m;
      rec(v + 1, left - m);
    }
    cur[v] = 0;
  };
  rec(0, std::max(bound, 0));
  return out;
}

std::vector<DecompositionWitness> enumerate_witnesses(const ComplexCategory& cx, int bound) {
  const auto& cat = cx.base();
  const auto& quiver = cat.quiver();
  const auto labels = cat.iso_classes(bound);
  const auto mults = multiplicity_vectors(quiver.vertex_count(), bound);
  std::vector<DecompositionWitness> out;
  for (const auto& a : labels)
    for (const auto& b : labels)
      for (const auto& p : mults)
        for (const auto& qm : mults) {
          DecompositionWitness w{a, b, p, qm, class_of_mult(quiver, p), class_of_mult(quiver, qm)};
          if (witness_size(w) <= bound) out.push_back(std::move(w));
        }
  return out;
}

}  // namespace hallforge
