#include "hallforge/json_io.hpp"

#include <stdexcept>

#include "hallforge/errors.hpp"

namespace hallforge {
namespace {

using nlohmann::json;

std::vector<std::size_t> read_tops(const json& j, const char* mult_key, const char* tops_key, std::size_t n) {
  if (j.contains(tops_key)) return j.at(tops_key).get<std::vector<std::size_t>>();
  if (!j.contains(mult_key)) return {};
  auto mult = j.at(mult_key).get<std::vector<long long>>();
  if (mult.size() != n) throw InvalidComplex(std::string(mult_key) + ": expected one multiplicity per vertex");
  for (long long m : mult)
    if (m < 0) throw InvalidComplex(std::string(mult_key) + ": negative multiplicity");
  return QuiverCategory::tops_from_multiplicities(mult);
}

RepMorphism read_differential(const QuiverCategory& base, const json& j, const char* key, const RepObject& from,
                              const RepObject& to) {
  const auto& field = base.field();
  const std::size_t n = base.quiver().vertex_count();
  RepMorphism d;
  for (std::size_t v = 0; v < n; ++v)
    d.components.emplace_back(field, static_cast<std::size_t>(to.dim(v)), static_cast<std::size_t>(from.dim(v)));
  if (!j.contains(key)) return d;
  const auto& per_vertex = j.at(key);
  if (!per_vertex.is_array() || per_vertex.size() != n)
    throw InvalidComplex(std::string(key) + ": expected one matrix per vertex");
  for (std::size_t v = 0; v < n; ++v) {
    const auto& rows = per_vertex[v];
    auto& m = d.components[v];
    if (rows.size() != m.rows()) throw InvalidComplex(std::string(key) + ": wrong row count at vertex " + std::to_string(v));
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (rows[r].size() != m.cols())
        throw InvalidComplex(std::string(key) + ": wrong column count at vertex " + std::to_string(v));
      for (std::size_t c = 0; c < m.cols(); ++c) {
        const int e = rows[r][c].get<int>();
        if (e < 0 || e >= field.order()) throw InvalidComplex(std::string(key) + ": entry is not a field element");
        m.set(r, c, field.element(e));
      }
    }
  }
  return d;
}

json differential_json(const RepMorphism& d) {
  json out = json::array();
  for (const auto& m : d.components) {
    json rows = json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) {
      json row = json::array();
      for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(m.at(r, c).value);
      rows.push_back(row);
    }
    out.push_back(rows);
  }
  return out;
}

json record(const std::string& op, const std::string& left, const std::string& right, json result) {
  return {{"op", op}, {"left", left}, {"right", right}, {"result", std::move(result)}};
}

}  // namespace

json to_json(const Coeff& c) { return c.to_string(); }

json to_json(const KClass& k) { return k.values(); }

json to_json(const HallBasis& h) { return {{"label", h.label.to_string()}, {"k", to_json(h.k)}}; }

json to_json(const HallElement& x) {
  json out = json::array();
  for (const auto& [b, c] : x) {
    json e = to_json(b);
    e["coeff"] = to_json(c);
    out.push_back(std::move(e));
  }
  return out;
}

json to_json(const TensorElement& x) {
  json out = json::array();
  for (const auto& [k, c] : x) out.push_back({{"left", to_json(k.first)}, {"right", to_json(k.second)}, {"coeff", to_json(c)}});
  return out;
}

json to_json(const DHTerm& t) {
  return {{"alpha", to_json(t.alpha)}, {"beta", to_json(t.beta)}, {"a", t.a.to_string()}, {"b", t.b.to_string()}};
}

json to_json(const DHElement& x) {
  json out = json::array();
  for (const auto& [t, c] : x) {
    json e = to_json(t);
    e["coeff"] = to_json(c);
    out.push_back(std::move(e));
  }
  return out;
}

json to_json(const DoubleReport& r) {
  return {{"case", r.case_tag},           {"a", r.a.to_string()},         {"b", r.b.to_string()},
          {"form", to_string(r.form)},    {"variant", to_string(r.variant)}, {"lhs", to_json(r.lhs)},
          {"rhs", to_json(r.rhs)},        {"equal", r.equal}};
}

json to_json(const TriangularReport& r) {
  return {{"products", r.products},   {"rank", r.rank},         {"independent", r.independent},
          {"triangular", r.triangular}, {"failures", r.failures}};
}

json to_json(const DecompositionWitness& w) {
  return {{"a", w.a.to_string()},     {"b", w.b.to_string()},         {"p_mult", w.p_mult},
          {"q_mult", w.q_mult},       {"p_class", to_json(w.p_class)}, {"q_class", to_json(w.q_class)}};
}

HallBasis parse_hall_basis(const std::string& text, std::size_t vertices) {
  HallBasis h{IsoLabel::zero(vertices), KClass(vertices)};
  std::string rest = text;
  if (!rest.empty() && rest.front() == '[') {
    const auto close = rest.find(']');
    if (close == std::string::npos) throw std::invalid_argument("unterminated symbol: " + text);
    h.label = IsoLabel::parse(rest.substr(1, close - 1));
    rest = rest.substr(close + 1);
  }
  if (!rest.empty()) {
    if (rest.front() != 'K' || rest.size() < 3 || rest[1] != '(' || rest.back() != ')')
      throw std::invalid_argument("malformed K symbol: " + text);
    std::vector<long long> v;
    std::string body = rest.substr(2, rest.size() - 3);
    std::size_t pos = 0;
    while (pos <= body.size()) {
      const auto comma = body.find(',', pos);
      const std::string part = body.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
      std::size_t used = 0;
      v.push_back(std::stoll(part, &used));
      if (used != part.size()) throw std::invalid_argument("malformed K symbol: " + text);
      if (comma == std::string::npos) break;
      pos = comma + 1;
    }
    h.k = KClass(std::move(v));
  }
  if (h.label.dims.size() != vertices || h.k.size() != vertices)
    throw std::invalid_argument("symbol has the wrong number of vertices: " + text);
  return h;
}

TwoComplex complex_from_json(const ComplexCategory& cx, const json& j) {
  try {
    const auto& base = cx.base();
    const std::size_t n = base.quiver().vertex_count();
    auto m1_tops = read_tops(j, "m1", "m1_tops", n);
    auto m0_tops = read_tops(j, "m0", "m0_tops", n);
    for (auto v : m1_tops)
      if (v >= n) throw InvalidComplex("m1_tops: vertex out of range");
    for (auto v : m0_tops)
      if (v >= n) throw InvalidComplex("m0_tops: vertex out of range");
    const RepObject& m1 = base.projective(m1_tops);
    const RepObject& m0 = base.projective(m0_tops);
    RepMorphism d1 = read_differential(base, j, "d1", m1, m0);
    RepMorphism d0 = read_differential(base, j, "d0", m0, m1);
    return cx.make_complex(std::move(m1_tops), std::move(m0_tops), std::move(d1), std::move(d0));
  } catch (const json::exception& ex) {
    throw InvalidComplex(std::string("malformed complex literal: ") + ex.what());
  }
}

json complex_to_json(const ComplexCategory&, const TwoComplex& m) {
  return {{"m1_tops", m.m1_tops}, {"m0_tops", m.m0_tops}, {"d1", differential_json(m.d1)}, {"d0", differential_json(m.d0)}};
}

json export_tables(const DoubleAlgebra& dh, int bound) {
  const HallAlgebra& hall = dh.hall();
  const QuiverCategory& cat = hall.category();
  const auto labels = cat.iso_classes(bound);

  json mult = json::array();
  json dh_mul = json::array();
  for (const auto& a : labels)
    for (const auto& b : labels) {
      if (a.total_dim() + b.total_dim() > bound) continue;
      const std::string ls = "[" + a.to_string() + "]", rs = "[" + b.to_string() + "]";
      mult.push_back(record("diamond", ls, rs, to_json(hall.diamond(a, b))));
      mult.push_back(record("star", ls, rs, to_json(hall.star(hall.basis(a), hall.basis(b)))));
      const std::string e = "E" + ls, f = "F" + rs;
      dh_mul.push_back(record("dh_mul", e, f, to_json(dh.multiply(dh.e(a), dh.f(b)))));
      dh_mul.push_back(record("dh_mul", f, e, to_json(dh.multiply(dh.f(b), dh.e(a)))));
      dh_mul.push_back(record("dh_mul", e, "E" + rs, to_json(dh.multiply(dh.e(a), dh.e(b)))));
    }

  json coproduct = json::array();
  json pairing = json::array();
  for (const auto& a : labels) {
    const HallBasis h = hall.basis(a);
    for (auto variant : {CoproductVariant::k_inserted, CoproductVariant::literal})
      coproduct.push_back({{"op", "coproduct"},
                           {"variant", to_string(variant)},
                           {"arg", h.to_string()},
                           {"result", to_json(hall.coproduct(h, variant))}});
    pairing.push_back({{"op", "pairing"}, {"left", h.to_string()}, {"right", h.to_string()},
                       {"value", to_json(hall.hopf_pairing(h, h))}});
  }

  json basis = json::array();
  for (const auto& a : labels) basis.push_back(a.to_string());
  return {{"basis", basis}, {"multiplication", mult}, {"dh_mul", dh_mul}, {"coproduct", coproduct}, {"pairing", pairing}};
}

}  // namespace hallforge
