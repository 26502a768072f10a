#pragma once

#include <memory>
#include <random>
#include <string>

#include "hallforge/double_algebra.hpp"
#include "hallforge/errors.hpp"
#include "hallforge/json_io.hpp"

namespace hallforge {

// gtest printers
inline void PrintTo(const Coeff& c, std::ostream* os) { *os << c.to_string(); }
inline void PrintTo(const KClass& k, std::ostream* os) { *os << to_json(k).dump(); }
inline void PrintTo(const IsoLabel& l, std::ostream* os) { *os << l.to_string(); }
inline void PrintTo(const HallElement& x, std::ostream* os) { *os << to_json(x).dump(); }
inline void PrintTo(const TensorElement& x, std::ostream* os) { *os << to_json(x).dump(); }
inline void PrintTo(const DHElement& x, std::ostream* os) { *os << to_json(x).dump(); }
inline void PrintTo(const DecompositionWitness& w, std::ostream* os) { *os << to_json(w).dump(); }

}  // namespace hallforge

namespace hallforge::testing {

/// Category, algebras and complexes for one (fixture, q).
struct Env {
  explicit Env(const std::string& quiver, int q, std::shared_ptr<CountStore> store = nullptr)
      : cat(Quiver::fixture(quiver), q, EnumerationBudget{}, std::move(store)), hall(cat), cx(cat), dh(hall, cx) {}

  IsoLabel label(const RepObject& x) const { return cat.identify(x); }
  IsoLabel simple(std::size_t v) const { return cat.identify(cat.simple(v)); }
  KClass k(std::vector<long long> v) const { return KClass(std::move(v)); }
  Coeff t(long long e) const { return Coeff::tpow(cat.q(), e); }
  IsoLabel zero_label() const { return IsoLabel::zero(cat.quiver().vertex_count()); }

  QuiverCategory cat;
  HallAlgebra hall;
  ComplexCategory cx;
  DoubleAlgebra dh;
};

inline FieldMatrix random_matrix(const GaloisField& f, std::size_t r, std::size_t c, std::mt19937& rng) {
  std::uniform_int_distribution<int> d(0, f.order() - 1);
  FieldMatrix m(f, r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m.set(i, j, f.element(d(rng)));
  return m;
}

inline FieldMatrix random_invertible(const GaloisField& f, std::size_t n, std::mt19937& rng) {
  while (true) {
    auto m = random_matrix(f, n, n, rng);
    if (m.is_invertible()) return m;
  }
}

inline RepObject random_rep(const QuiverCategory& cat, const DimVec& dims, std::mt19937& rng) {
  std::vector<FieldMatrix> maps;
  for (const auto& a : cat.quiver().arrows())
    maps.push_back(random_matrix(cat.field(), static_cast<std::size_t>(dims[a.target]),
                                 static_cast<std::size_t>(dims[a.source]), rng));
  return cat.make_object(dims, std::move(maps));
}

/// g·x: arrow a: i -> j acts by g_j X_a g_i^{-1}.
inline RepObject conjugate(const QuiverCategory& cat, const RepObject& x, std::mt19937& rng) {
  std::vector<FieldMatrix> g, ginv;
  for (std::size_t v = 0; v < x.dims().size(); ++v) {
    g.push_back(random_invertible(cat.field(), static_cast<std::size_t>(x.dim(v)), rng));
    ginv.push_back(g.back().inverse());
  }
  std::vector<FieldMatrix> maps;
  const auto& arrows = cat.quiver().arrows();
  for (std::size_t a = 0; a < arrows.size(); ++a) maps.push_back(g[arrows[a].target] * x.map(a) * ginv[arrows[a].source]);
  return cat.make_object(x.dims(), std::move(maps));
}

}  // namespace hallforge::testing
