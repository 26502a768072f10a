#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "hallforge/double_algebra.hpp"

namespace hallforge {

nlohmann::json to_json(const Coeff& c);
nlohmann::json to_json(const KClass& k);
nlohmann::json to_json(const HallBasis& h);
nlohmann::json to_json(const HallElement& x);
nlohmann::json to_json(const TensorElement& x);
nlohmann::json to_json(const DHTerm& t);
nlohmann::json to_json(const DHElement& x);
nlohmann::json to_json(const DoubleReport& r);
nlohmann::json to_json(const TriangularReport& r);
nlohmann::json to_json(const DecompositionWitness& w);

/// "[(1,0)#0]", "[(1,0)#0]K(0,1)" or "K(0,1)".  Throws std::invalid_argument.
HallBasis parse_hall_basis(const std::string& text, std::size_t vertices);

/// Complex literal:
///   {"m1": [mult per vertex], "m0": [...], "d1": [[rows]...], "d0": [...]}
/// where "d1"[v] is the matrix of d1 at vertex v (dim M0_v rows, dim M1_v
/// columns) with entries given as field element indices.  Missing
/// differentials default to zero.  Throws InvalidComplex.
TwoComplex complex_from_json(const ComplexCategory& cx, const nlohmann::json& j);
nlohmann::json complex_to_json(const ComplexCategory& cx, const TwoComplex& m);

/// Multiplication, coproduct and pairing tables over all classes of total
/// dimension <= bound, ordered by label.
nlohmann::json export_tables(const DoubleAlgebra& dh, int bound);

}  // namespace hallforge
