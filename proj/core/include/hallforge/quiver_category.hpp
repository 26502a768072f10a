#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "hallforge/count_store.hpp"
#include "hallforge/field_matrix.hpp"
#include "hallforge/quiver.hpp"
#include "hallforge/representation.hpp"

namespace hallforge {

struct HomSpace {
  std::size_t dim = 0;
  std::vector<RepMorphism> basis;
};

/// One matrix per arrow a: i -> j, shaped dim B_j x dim A_i.
using Cocycle = std::vector<FieldMatrix>;

/// Per-vertex list of vectors spanning a subspace.
using SubspaceFamily = std::vector<std::vector<Vector>>;

/// 0 -> P -> Q -> A -> 0 with P, Q given by the tops of their indecomposable
/// summands (a vertex list, repeated as needed).
struct Resolution {
  std::vector<std::size_t> p_tops;
  std::vector<std::size_t> q_tops;
  RepObject p;
  RepObject q;
  RepMorphism f;  ///< P -> Q
  RepMorphism g;  ///< Q -> A
};

using ExtCounts = std::map<IsoLabel, std::uint64_t>;

/// rep(Q, F_q) for a finite acyclic quiver: morphism spaces, extensions, the
/// isomorphism-class registry and minimal projective resolutions.
///
/// All queries are safe to call concurrently.  Registry tables are built on
/// first use, one dimension vector at a time.
class QuiverCategory {
 public:
  QuiverCategory(Quiver quiver, int q, EnumerationBudget budget = {}, std::shared_ptr<CountStore> store = nullptr);
  QuiverCategory(const QuiverCategory&) = delete;
  QuiverCategory& operator=(const QuiverCategory&) = delete;

  const Quiver& quiver() const noexcept { return quiver_; }
  const GaloisField& field() const noexcept { return *field_; }
  int q() const noexcept { return field_->order(); }
  const EnumerationBudget& budget() const noexcept { return budget_; }
  const std::shared_ptr<CountStore>& store() const noexcept { return store_; }
  /// Prefix shared by all persistent cache keys of this category.
  std::string cache_key_prefix() const;

  // Objects.
  RepObject zero_object() const;
  RepObject simple(std::size_t v) const;
  RepObject make_object(DimVec dims, std::vector<FieldMatrix> maps) const;
  RepObject direct_sum(const RepObject& a, const RepObject& b) const;
  /// ⊕ P_{tops[k]}; the basis at w is (k, path from tops[k] to w) in lexicographic order.
  const RepObject& projective(const std::vector<std::size_t>& tops) const;
  /// Index of basis vector (summand k, path) of projective(tops) at vertex w.
  std::size_t projective_basis_index(const std::vector<std::size_t>& tops, std::size_t w, std::size_t k,
                                     const Path& path) const;
  std::vector<RepObject> indecomposable_projectives() const;
  /// Vertex list with v repeated mult[v] times, vertices in index order.
  static std::vector<std::size_t> tops_from_multiplicities(const std::vector<long long>& mult);
  /// Multiplicities m with sum m_v cl P_v = cls, or nullopt if cls is not the
  /// class of a projective.  Unitriangular solve in topological order.
  std::optional<std::vector<long long>> projective_multiplicities(const KClass& cls) const;

  // Morphisms.
  RepMorphism identity(const RepObject& a) const;
  RepMorphism zero_morphism(const RepObject& from, const RepObject& to) const;
  RepMorphism compose(const RepMorphism& g, const RepMorphism& f) const;
  RepMorphism add(const RepMorphism& f, const RepMorphism& g) const;
  RepMorphism negate(const RepMorphism& f) const;
  RepMorphism direct_sum(const RepMorphism& f, const RepMorphism& g) const;
  bool is_morphism(const RepMorphism& f, const RepObject& from, const RepObject& to) const;
  bool is_invertible(const RepMorphism& f) const;
  BlockLayout morphism_layout(const RepObject& from, const RepObject& to) const;
  /// Rows expressing f_j X_a - Y_a f_i = 0 for f laid out by morphism_layout.
  /// Columns are offset by `column_offset` inside a system of `total_columns` unknowns.
  void append_intertwining_rows(const RepObject& from, const RepObject& to, std::size_t column_offset,
                                std::size_t total_columns, std::vector<Vector>& rows) const;
  /// The morphism P(tops) -> x sending the generator of summand k to gens[k] ∈ x_{tops[k]}.
  RepMorphism morphism_from_generators(const std::vector<std::size_t>& tops, const RepObject& x,
                                       const std::vector<Vector>& gens) const;
  /// x_p(v) for a path p from `start`.
  Vector apply_path(const RepObject& x, const Path& p, const Vector& v) const;

  HomSpace hom_space(const RepObject& a, const RepObject& b) const;
  std::size_t hom_dim(const IsoLabel& a, const IsoLabel& b) const;
  std::uint64_t aut_order(const RepObject& a) const;
  std::uint64_t aut_order(const IsoLabel& a) const;

  // Extensions 0 -> B -> C -> A -> 0.
  std::size_t ext_dim(const RepObject& a, const RepObject& b) const;
  std::size_t ext_dim(const IsoLabel& a, const IsoLabel& b) const;
  /// One cocycle per class of Ext^1(A, B), from a fixed transversal.
  std::vector<Cocycle> ext_classes(const RepObject& a, const RepObject& b) const;
  RepObject middle_term(const RepObject& a, const RepObject& b, const Cocycle& e) const;
  std::uint64_t ext_count_with_middle(const RepObject& a, const RepObject& b, const IsoLabel& c) const;
  /// Middle-term histogram of Ext^1(A, B) over registry labels.  Memoized.
  std::shared_ptr<const ExtCounts> ext_counts(const IsoLabel& a, const IsoLabel& b) const;

  // Registry.
  IsoLabel identify(const RepObject& x) const;
  const RepObject& representative(const IsoLabel& label) const;
  std::vector<IsoLabel> labels_of_dimvec(const DimVec& dims) const;
  /// All classes with total dimension <= bound, ordered by total dimension, then label.
  std::vector<IsoLabel> iso_classes(int bound) const;
  std::vector<DimVec> dimvecs_up_to(int bound) const;
  /// Number of arrow-matrix tuples of dimension vector `dims`.
  std::uint64_t code_count(const DimVec& dims) const;
  /// Code of x's arrow matrices (first entry most significant).
  std::uint64_t encode(const RepObject& x) const;
  RepObject decode(const DimVec& dims, std::uint64_t code) const;

  bool is_isomorphic(const RepObject& m, const RepObject& n) const;
  std::optional<RepMorphism> find_isomorphism(const RepObject& m, const RepObject& n) const;

  // Resolutions.
  Resolution minimal_resolution(const RepObject& a) const;
  std::shared_ptr<const Resolution> minimal_resolution(const IsoLabel& a) const;
  /// Class of P_A and Q_A in the minimal resolution of A.
  KClass resolution_p_class(const IsoLabel& a) const;
  KClass resolution_q_class(const IsoLabel& a) const;

  // Subspace helpers.
  SubspaceFamily kernel_family(const RepMorphism& f, const RepObject& from) const;
  SubspaceFamily image_family(const RepMorphism& f, const RepObject& to) const;
  /// The representation K / I for subrepresentations I ⊆ K of x.
  RepObject subquotient(const RepObject& x, const SubspaceFamily& k, const SubspaceFamily& i) const;
  /// Per vertex, a complement of the radical of the subrepresentation `sub`
  /// inside sub, chosen greedily from sub's spanning vectors.
  SubspaceFamily top_complement(const RepObject& x, const SubspaceFamily& sub) const;
  SubspaceFamily whole(const RepObject& x) const;

 private:
  struct RegistryTable;
  const RegistryTable& table(const DimVec& dims) const;
  void check_dims(const RepObject& x) const;

  Quiver quiver_;
  const GaloisField* field_;
  EnumerationBudget budget_;
  std::shared_ptr<CountStore> store_;

  mutable std::mutex registry_mu_;
  mutable std::map<DimVec, std::shared_ptr<const RegistryTable>> tables_;

  mutable std::mutex proj_mu_;
  mutable std::map<std::vector<std::size_t>, std::shared_ptr<const RepObject>> projectives_;

  mutable std::mutex memo_mu_;
  mutable std::map<IsoLabel, std::uint64_t> aut_memo_;
  mutable std::map<std::pair<IsoLabel, IsoLabel>, std::size_t> hom_memo_;
  mutable std::map<std::pair<IsoLabel, IsoLabel>, std::size_t> ext_dim_memo_;
  mutable std::map<std::pair<IsoLabel, IsoLabel>, std::shared_ptr<const ExtCounts>> ext_memo_;
  mutable std::map<IsoLabel, std::shared_ptr<const Resolution>> resolution_memo_;
};

}  // namespace hallforge
