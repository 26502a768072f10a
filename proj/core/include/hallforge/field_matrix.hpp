#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iterator>
#include <optional>
#include <string>
#include <vector>

#include "hallforge/galois_field.hpp"

namespace hallforge {

using Vector = std::vector<FieldElem>;

/// Per-call cap on exhaustive enumeration.  Every enumerating operation
/// checks q^dim against it before starting.
struct EnumerationBudget {
  static constexpr std::uint64_t kDefault = std::uint64_t{1} << 24;

  std::uint64_t max_candidates = kDefault;

  /// q^dim, saturating at UINT64_MAX.
  static std::uint64_t power(int q, std::size_t dim);
  /// Throws BudgetExceeded naming q^dim and `context` when q^dim > max_candidates.
  void check(int q, std::size_t dim, const std::string& context) const;
};

/// Dense row-major matrix over F_q.
class FieldMatrix {
 public:
  FieldMatrix() = default;
  FieldMatrix(const GaloisField& field, std::size_t rows, std::size_t cols);
  FieldMatrix(const GaloisField& field, std::size_t rows, std::size_t cols, std::vector<FieldElem> entries);

  static FieldMatrix identity(const GaloisField& field, std::size_t n);
  /// Matrix whose columns are the given vectors (all of length `rows`).
  static FieldMatrix from_columns(const GaloisField& field, std::size_t rows, const std::vector<Vector>& columns);

  const GaloisField& field() const { return *field_; }
  bool has_field() const noexcept { return field_ != nullptr; }
  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool empty() const noexcept { return rows_ == 0 || cols_ == 0; }

  FieldElem at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  void set(std::size_t r, std::size_t c, FieldElem v) { data_[r * cols_ + c] = v; }
  const std::vector<FieldElem>& entries() const noexcept { return data_; }

  Vector column(std::size_t c) const;
  Vector apply(const Vector& v) const;

  FieldMatrix operator*(const FieldMatrix& rhs) const;
  FieldMatrix operator+(const FieldMatrix& rhs) const;
  FieldMatrix operator-(const FieldMatrix& rhs) const;
  FieldMatrix operator-() const;
  FieldMatrix scaled(FieldElem s) const;

  bool is_zero() const;
  /// Square and of full rank.
  bool is_invertible() const;
  FieldMatrix inverse() const;

  /// Copy `block` into this matrix with its top-left corner at (r0, c0).
  void place(std::size_t r0, std::size_t c0, const FieldMatrix& block);
  FieldMatrix submatrix(std::size_t r0, std::size_t c0, std::size_t rows, std::size_t cols) const;

  friend bool operator==(const FieldMatrix& a, const FieldMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  const GaloisField* field_ = nullptr;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<FieldElem> data_;
};

struct RankKernel {
  std::size_t rank = 0;
  /// Basis of ker(M), one vector per free column, in reduced echelon form.
  std::vector<Vector> kernel_basis;
};

/// Reduced row echelon form with first-nonzero pivoting in column order.
struct RowEchelon {
  std::vector<Vector> rows;
  std::vector<std::size_t> pivots;
};

RowEchelon row_echelon(const FieldMatrix& m);
RankKernel rank_and_kernel(const FieldMatrix& m);
std::size_t rank(const FieldMatrix& m);

struct Solution {
  Vector particular;
  std::vector<Vector> kernel_basis;
};

/// Solves M x = b.  Absent when inconsistent.  Throws ContractViolation when
/// b has the wrong length.
std::optional<Solution> solve(const FieldMatrix& m, const Vector& b);

/// Incrementally maintained reduced echelon basis of a subspace of F_q^n.
class EchelonBasis {
 public:
  EchelonBasis(const GaloisField& field, std::size_t ambient_dim);

  /// Adds v to the span; returns true when v was independent.
  bool add(const Vector& v);
  bool contains(const Vector& v) const;
  /// v reduced against the current basis (zero iff v is in the span).
  Vector reduce(const Vector& v) const;
  std::size_t dim() const noexcept { return rows_.size(); }
  std::size_t ambient_dim() const noexcept { return n_; }
  const std::vector<Vector>& rows() const noexcept { return rows_; }
  const std::vector<std::size_t>& pivots() const noexcept { return pivots_; }

 private:
  const GaloisField* field_;
  std::size_t n_;
  std::vector<Vector> rows_;
  std::vector<std::size_t> pivots_;
};

/// Vectors from `candidates` that extend a basis of `subspace`, picked greedily
/// in order.  Their span is a complement of `subspace` inside span(subspace ∪ candidates).
std::vector<Vector> complement_basis(const GaloisField& field, std::size_t ambient_dim,
                                     const std::vector<Vector>& subspace, const std::vector<Vector>& candidates);

/// Lexicographic enumeration of F_q^dim (first coordinate most significant).
class VectorEnumeration {
 public:
  class iterator {
   public:
    using iterator_category = std::input_iterator_tag;
    using value_type = Vector;
    using difference_type = std::ptrdiff_t;
    using pointer = const Vector*;
    using reference = const Vector&;

    iterator() = default;
    reference operator*() const { return current_; }
    pointer operator->() const { return &current_; }
    iterator& operator++();
    void operator++(int) { ++*this; }
    friend bool operator==(const iterator& a, const iterator& b) { return a.done_ == b.done_; }

   private:
    friend class VectorEnumeration;
    iterator(const GaloisField* field, std::size_t dim);

    const GaloisField* field_ = nullptr;
    Vector current_;
    bool done_ = true;
  };

  VectorEnumeration(const GaloisField& field, std::size_t dim) : field_(&field), dim_(dim) {}
  iterator begin() const { return iterator(field_, dim_); }
  iterator end() const { return iterator(); }
  std::uint64_t size() const { return EnumerationBudget::power(field_->order(), dim_); }

 private:
  const GaloisField* field_;
  std::size_t dim_;
};

/// All q^dim vectors in lexicographic order; throws BudgetExceeded first if too many.
VectorEnumeration enumerate_vectors(const GaloisField& field, std::size_t dim, const EnumerationBudget& budget);

/// Calls `visit` on every linear combination of `basis` (vectors of length
/// `ambient_dim`), coefficients enumerated lexicographically.  Stops early when
/// `visit` returns false.  Returns false iff stopped early.
bool for_each_in_span(const GaloisField& field, std::size_t ambient_dim, const std::vector<Vector>& basis,
                      const EnumerationBudget& budget, const std::string& context,
                      const std::function<bool(const Vector&)>& visit);

/// Shapes of a tuple of matrices laid out consecutively in one flat vector
/// (each block row-major).  Used to turn systems in matrix unknowns into
/// ordinary linear systems.
class BlockLayout {
 public:
  struct Shape {
    std::size_t rows;
    std::size_t cols;
  };

  BlockLayout() = default;
  explicit BlockLayout(std::vector<Shape> shapes);

  std::size_t size() const noexcept { return total_; }
  std::size_t block_count() const noexcept { return shapes_.size(); }
  const Shape& shape(std::size_t i) const { return shapes_[i]; }
  std::size_t offset(std::size_t i) const { return offsets_[i]; }

  std::vector<FieldMatrix> unflatten(const GaloisField& field, const Vector& v) const;
  Vector flatten(const GaloisField& field, const std::vector<FieldMatrix>& blocks) const;

 private:
  std::vector<Shape> shapes_;
  std::vector<std::size_t> offsets_;
  std::size_t total_ = 0;
};

/// Matrix of a linear map F_q^domain_dim -> F_q^m, obtained by evaluating it on
/// unit vectors.
FieldMatrix matrix_of_linear_map(const GaloisField& field, std::size_t domain_dim, std::size_t codomain_dim,
                                 const std::function<Vector(const Vector&)>& map);

Vector add(const GaloisField& field, const Vector& a, const Vector& b);
Vector scale(const GaloisField& field, FieldElem s, const Vector& a);
bool is_zero(const Vector& v);

}  // namespace hallforge
