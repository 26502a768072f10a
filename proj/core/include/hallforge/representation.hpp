#pragma once

#include <compare>
#include <cstddef>
#include <string>
#include <vector>

#include "hallforge/field_matrix.hpp"
#include "hallforge/quiver.hpp"

namespace hallforge {

using DimVec = std::vector<int>;

/// Representation of a quiver: a vector space per vertex (given by its
/// dimension) and a matrix per arrow, shaped target-dim x source-dim.
class RepObject {
 public:
  RepObject() = default;
  /// Throws ContractViolation when a matrix shape disagrees with `dims`.
  RepObject(const Quiver& quiver, const GaloisField& field, DimVec dims, std::vector<FieldMatrix> maps);
  static RepObject zero(const Quiver& quiver, const GaloisField& field);

  const GaloisField& field() const { return *field_; }
  const DimVec& dims() const noexcept { return dims_; }
  int dim(std::size_t v) const { return dims_[v]; }
  int total_dim() const;
  const std::vector<FieldMatrix>& maps() const noexcept { return maps_; }
  const FieldMatrix& map(std::size_t arrow) const { return maps_[arrow]; }
  KClass kclass() const { return KClass::from_dims(dims_); }
  bool is_zero() const { return total_dim() == 0; }

  friend bool operator==(const RepObject& a, const RepObject& b) { return a.dims_ == b.dims_ && a.maps_ == b.maps_; }

 private:
  const GaloisField* field_ = nullptr;
  DimVec dims_;
  std::vector<FieldMatrix> maps_;
};

/// Morphism of representations: one matrix per vertex, codomain-dim x domain-dim.
struct RepMorphism {
  std::vector<FieldMatrix> components;

  friend bool operator==(const RepMorphism&, const RepMorphism&) = default;
};

/// Isomorphism class label: dimension vector plus the rank of the orbit's
/// least arrow-matrix code among all orbits of that dimension vector.
struct IsoLabel {
  DimVec dims;
  std::size_t index = 0;

  friend bool operator==(const IsoLabel&, const IsoLabel&) = default;
  friend auto operator<=>(const IsoLabel&, const IsoLabel&) = default;

  KClass kclass() const { return KClass::from_dims(dims); }
  int total_dim() const;
  bool is_zero() const { return total_dim() == 0; }
  /// "(1,0)#0"
  std::string to_string() const;
  static IsoLabel parse(const std::string& text);
  static IsoLabel zero(std::size_t vertices) { return IsoLabel{DimVec(vertices, 0), 0}; }
};

}  // namespace hallforge
