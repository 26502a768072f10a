#include "hallforge/field_matrix.hpp"

#include <limits>
#include <utility>

#include "hallforge/errors.hpp"

namespace hallforge {

std::uint64_t EnumerationBudget::power(int q, std::size_t dim) {
  std::uint64_t r = 1;
  for (std::size_t i = 0; i < dim; ++i) {
    if (r > std::numeric_limits<std::uint64_t>::max() / static_cast<std::uint64_t>(q))
      return std::numeric_limits<std::uint64_t>::max();
    r *= static_cast<std::uint64_t>(q);
  }
  return r;
}

void EnumerationBudget::check(int q, std::size_t dim, const std::string& context) const {
  const auto n = power(q, dim);
  if (n > max_candidates) throw BudgetExceeded(n, max_candidates, context);
}

FieldMatrix::FieldMatrix(const GaloisField& field, std::size_t rows, std::size_t cols)
    : field_(&field), rows_(rows), cols_(cols), data_(rows * cols, field.zero()) {}

FieldMatrix::FieldMatrix(const GaloisField& field, std::size_t rows, std::size_t cols,
                         std::vector<FieldElem> entries)
    : field_(&field), rows_(rows), cols_(cols), data_(std::move(entries)) {
  if (data_.size() != rows * cols) throw ContractViolation("matrix entry count does not match shape");
}

FieldMatrix FieldMatrix::identity(const GaloisField& field, std::size_t n) {
  FieldMatrix m(field, n, n);
  for (std::size_t i = 0; i < n; ++i) m.set(i, i, field.one());
  return m;
}

FieldMatrix FieldMatrix::from_columns(const GaloisField& field, std::size_t rows, const std::vector<Vector>& columns) {
  FieldMatrix m(field, rows, columns.size());
  for (std::size_t c = 0; c < columns.size(); ++c) {
    if (columns[c].size() != rows) throw ContractViolation("column length does not match row count");
    for (std::size_t r = 0; r < rows; ++r) m.set(r, c, columns[c][r]);
  }
  return m;
}

Vector FieldMatrix::column(std::size_t c) const {
  Vector v(rows_);
  for (std::size_t r = 0; r < rows_; ++r) v[r] = at(r, c);
  return v;
}

Vector FieldMatrix::apply(const Vector& v) const {
  if (v.size() != cols_) throw ContractViolation("vector length does not match matrix columns");
  Vector out(rows_, FieldElem{0});
  for (std::size_t r = 0; r < rows_; ++r) {
    FieldElem acc{0};
    for (std::size_t c = 0; c < cols_; ++c) acc = field_->add(acc, field_->mul(at(r, c), v[c]));
    out[r] = acc;
  }
  return out;
}

FieldMatrix FieldMatrix::operator*(const FieldMatrix& rhs) const {
  if (cols_ != rhs.rows_) throw ContractViolation("matrix product shape mismatch");
  const GaloisField& f = field_ ? *field_ : rhs.field();
  FieldMatrix out(f, rows_, rhs.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      const FieldElem a = at(i, k);
      if (a.value == 0) continue;
      for (std::size_t j = 0; j < rhs.cols_; ++j)
        out.data_[i * out.cols_ + j] = f.add(out.data_[i * out.cols_ + j], f.mul(a, rhs.at(k, j)));
    }
  return out;
}

FieldMatrix FieldMatrix::operator+(const FieldMatrix& rhs) const {
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_) throw ContractViolation("matrix sum shape mismatch");
  FieldMatrix out = *this;
  for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] = field_->add(data_[i], rhs.data_[i]);
  return out;
}

FieldMatrix FieldMatrix::operator-(const FieldMatrix& rhs) const { return *this + (-rhs); }

FieldMatrix FieldMatrix::operator-() const {
  FieldMatrix out = *this;
  for (auto& e : out.data_) e = field_->neg(e);
  return out;
}

FieldMatrix FieldMatrix::scaled(FieldElem s) const {
  FieldMatrix out = *this;
  for (auto& e : out.data_) e = field_->mul(s, e);
  return out;
}

bool FieldMatrix::is_zero() const {
  for (auto e : data_)
    if (e.value != 0) return false;
  return true;
}

bool FieldMatrix::is_invertible() const { return rows_ == cols_ && rank(*this) == rows_; }

FieldMatrix FieldMatrix::inverse() const {
  if (rows_ != cols_) throw ContractViolation("inverse of a non-square matrix");
  const std::size_t n = rows_;
  // Gauss-Jordan on [M | I].
  std::vector<Vector> aug(n, Vector(2 * n, FieldElem{0}));
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) aug[r][c] = at(r, c);
    aug[r][n + r] = field_->one();
  }
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && aug[p][c].value == 0) ++p;
    if (p == n) throw ContractViolation("matrix is singular");
    std::swap(aug[p], aug[c]);
    const FieldElem inv = field_->inv(aug[c][c]);
    for (auto& e : aug[c]) e = field_->mul(inv, e);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || aug[r][c].value == 0) continue;
      const FieldElem f = aug[r][c];
      for (std::size_t k = 0; k < 2 * n; ++k) aug[r][k] = field_->sub(aug[r][k], field_->mul(f, aug[c][k]));
    }
  }
  FieldMatrix out(*field_, n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) out.set(r, c, aug[r][n + c]);
  return out;
}

void FieldMatrix::place(std::size_t r0, std::size_t c0, const FieldMatrix& block) {
  if (r0 + block.rows_ > rows_ || c0 + block.cols_ > cols_) throw ContractViolation("block does not fit");
  for (std::size_t r = 0; r < block.rows_; ++r)
    for (std::size_t c = 0; c < block.cols_; ++c) set(r0 + r, c0 + c, block.at(r, c));
}

FieldMatrix FieldMatrix::submatrix(std::size_t r0, std::size_t c0, std::size_t rows, std::size_t cols) const {
  if (r0 + rows > rows_ || c0 + cols > cols_) throw ContractViolation("submatrix out of range");
  FieldMatrix out(*field_, rows, cols);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) out.set(r, c, at(r0 + r, c0 + c));
  return out;
}

RowEchelon row_echelon(const FieldMatrix& m) {
  RowEchelon out;
  if (m.rows() == 0 || m.cols() == 0) return out;
  const GaloisField& f = m.field();
  std::vector<Vector> rows(m.rows(), Vector(m.cols()));
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) rows[r][c] = m.at(r, c);

  std::size_t lead = 0;
  for (std::size_t c = 0; c < m.cols() && lead < rows.size(); ++c) {
    std::size_t p = lead;
    while (p < rows.size() && rows[p][c].value == 0) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[p], rows[lead]);
    const FieldElem inv = f.inv(rows[lead][c]);
    for (auto& e : rows[lead]) e = f.mul(inv, e);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r == lead || rows[r][c].value == 0) continue;
      const FieldElem factor = rows[r][c];
      for (std::size_t k = c; k < m.cols(); ++k) rows[r][k] = f.sub(rows[r][k], f.mul(factor, rows[lead][k]));
    }
    out.pivots.push_back(c);
    ++lead;
  }
  rows.resize(lead);
  out.rows = std::move(rows);
  return out;
}

RankKernel rank_and_kernel(const FieldMatrix& m) {
  RankKernel out;
  const std::size_t n = m.cols();
  if (n == 0) return out;
  if (m.rows() == 0) {
    const GaloisField& f = m.field();
    for (std::size_t c = 0; c < n; ++c) {
      Vector v(n, f.zero());
      v[c] = f.one();
      out.kernel_basis.push_back(std::move(v));
    }
    return out;
  }
  const GaloisField& f = m.field();
  const RowEchelon e = row_echelon(m);
  out.rank = e.pivots.size();
  std::vector<bool> is_pivot(n, false);
  for (auto p : e.pivots) is_pivot[p] = true;
  for (std::size_t free = 0; free < n; ++free) {
    if (is_pivot[free]) continue;
    Vector v(n, f.zero());
    v[free] = f.one();
    for (std::size_t i = 0; i < e.pivots.size(); ++i) v[e.pivots[i]] = f.neg(e.rows[i][free]);
    out.kernel_basis.push_back(std::move(v));
  }
  return out;
}

std::size_t rank(const FieldMatrix& m) {
  if (m.rows() == 0 || m.cols() == 0) return 0;
  return row_echelon(m).pivots.size();
}

std::optional<Solution> solve(const FieldMatrix& m, const Vector& b) {
  if (b.size() != m.rows()) throw ContractViolation("right-hand side length does not match matrix rows");
  const std::size_t n = m.cols();
  Solution sol;
  if (m.rows() == 0) {
    auto rk = rank_and_kernel(m);
    sol.particular.assign(n, FieldElem{0});
    sol.kernel_basis = std::move(rk.kernel_basis);
    return sol;
  }
  const GaloisField& f = m.field();
  FieldMatrix aug(f, m.rows(), n + 1);
  aug.place(0, 0, m);
  for (std::size_t r = 0; r < m.rows(); ++r) aug.set(r, n, b[r]);
  const RowEchelon e = row_echelon(aug);
  if (!e.pivots.empty() && e.pivots.back() == n) return std::nullopt;
  sol.particular.assign(n, f.zero());
  for (std::size_t i = 0; i < e.pivots.size(); ++i) sol.particular[e.pivots[i]] = e.rows[i][n];
  sol.kernel_basis = rank_and_kernel(m).kernel_basis;
  return sol;
}

EchelonBasis::EchelonBasis(const GaloisField& field, std::size_t ambient_dim) : field_(&field), n_(ambient_dim) {}

Vector EchelonBasis::reduce(const Vector& v) const {
  if (v.size() != n_) throw ContractViolation("vector length does not match ambient dimension");
  Vector w = v;
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    const FieldElem c = w[pivots_[i]];
    if (c.value == 0) continue;
    for (std::size_t k = 0; k < n_; ++k) w[k] = field_->sub(w[k], field_->mul(c, rows_[i][k]));
  }
  return w;
}

bool EchelonBasis::contains(const Vector& v) const { return is_zero(reduce(v)); }

bool EchelonBasis::add(const Vector& v) {
  Vector w = reduce(v);
  std::size_t p = 0;
  while (p < n_ && w[p].value == 0) ++p;
  if (p == n_) return false;
  const FieldElem inv = field_->inv(w[p]);
  for (auto& e : w) e = field_->mul(inv, e);
  for (auto& row : rows_) {
    const FieldElem c = row[p];
    if (c.value == 0) continue;
    for (std::size_t k = 0; k < n_; ++k) row[k] = field_->sub(row[k], field_->mul(c, w[k]));
  }
  // Keep pivots sorted.
  std::size_t pos = 0;
  while (pos < pivots_.size() && pivots_[pos] < p) ++pos;
  rows_.insert(rows_.begin() + static_cast<std::ptrdiff_t>(pos), std::move(w));
  pivots_.insert(pivots_.begin() + static_cast<std::ptrdiff_t>(pos), p);
  return true;
}

std::vector<Vector> complement_basis(const GaloisField& field, std::size_t ambient_dim,
                                     const std::vector<Vector>& subspace, const std::vector<Vector>& candidates) {
  EchelonBasis eb(field, ambient_dim);
  for (const auto& v : subspace) eb.add(v);
  std::vector<Vector> out;
  for (const auto& v : candidates)
    if (eb.add(v)) out.push_back(v);
  return out;
}

VectorEnumeration::iterator::iterator(const GaloisField* field, std::size_t dim)
    : field_(field), current_(dim, FieldElem{0}), done_(false) {}

VectorEnumeration::iterator& VectorEnumeration::iterator::operator++() {
  const int q = field_->order();
  for (std::size_t i = current_.size(); i-- > 0;) {
    if (current_[i].value + 1 < q) {
      current_[i].value = static_cast<std::uint8_t>(current_[i].value + 1);
      return *this;
    }
    current_[i].value = 0;
  }
  done_ = true;
  return *this;
}

VectorEnumeration enumerate_vectors(const GaloisField& field, std::size_t dim, const EnumerationBudget& budget) {
  budget.check(field.order(), dim, "vectors of F_" + std::to_string(field.order()) + "^" + std::to_string(dim));
  return VectorEnumeration(field, dim);
}

bool for_each_in_span(const GaloisField& field, std::size_t ambient_dim, const std::vector<Vector>& basis,
                      const EnumerationBudget& budget, const std::string& context,
                      const std::function<bool(const Vector&)>& visit) {
  budget.check(field.order(), basis.size(), context);
  for (const auto& coeffs : VectorEnumeration(field, basis.size())) {
    Vector v(ambient_dim, field.zero());
    for (std::size_t i = 0; i < basis.size(); ++i) {
      if (coeffs[i].value == 0) continue;
      for (std::size_t k = 0; k < ambient_dim; ++k) v[k] = field.add(v[k], field.mul(coeffs[i], basis[i][k]));
    }
    if (!visit(v)) return false;
  }
  return true;
}

BlockLayout::BlockLayout(std::vector<Shape> shapes) : shapes_(std::move(shapes)) {
  for (const auto& s : shapes_) {
    offsets_.push_back(total_);
    total_ += s.rows * s.cols;
  }
}

std::vector<FieldMatrix> BlockLayout::unflatten(const GaloisField& field, const Vector& v) const {
  if (v.size() != total_) throw ContractViolation("flat vector length does not match block layout");
  std::vector<FieldMatrix> out;
  out.reserve(shapes_.size());
  for (std::size_t i = 0; i < shapes_.size(); ++i) {
    const auto& s = shapes_[i];
    std::vector<FieldElem> entries(v.begin() + static_cast<std::ptrdiff_t>(offsets_[i]),
                                   v.begin() + static_cast<std::ptrdiff_t>(offsets_[i] + s.rows * s.cols));
    out.emplace_back(field, s.rows, s.cols, std::move(entries));
  }
  return out;
}

Vector BlockLayout::flatten(const GaloisField& field, const std::vector<FieldMatrix>& blocks) const {
  if (blocks.size() != shapes_.size()) throw ContractViolation("block count does not match layout");
  Vector out(total_, field.zero());
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    if (blocks[i].rows() != shapes_[i].rows || blocks[i].cols() != shapes_[i].cols)
      throw ContractViolation("block shape does not match layout");
    const auto& e = blocks[i].entries();
    std::copy(e.begin(), e.end(), out.begin() + static_cast<std::ptrdiff_t>(offsets_[i]));
  }
  return out;
}

FieldMatrix matrix_of_linear_map(const GaloisField& field, std::size_t domain_dim, std::size_t codomain_dim,
                                 const std::function<Vector(const Vector&)>& map) {
  FieldMatrix m(field, codomain_dim, domain_dim);
  Vector e(domain_dim, field.zero());
  for (std::size_t c = 0; c < domain_dim; ++c) {
    e[c] = field.one();
    const Vector img = map(e);
    if (img.size() != codomain_dim) throw ContractViolation("linear map returned a vector of the wrong length");
    for (std::size_t r = 0; r < codomain_dim; ++r) m.set(r, c, img[r]);
    e[c] = field.zero();
  }
  return m;
}

Vector add(const GaloisField& field, const Vector& a, const Vector& b) {
  if (a.size() != b.size()) throw ContractViolation("vector length mismatch");
  Vector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = field.add(a[i], b[i]);
  return out;
}

Vector scale(const GaloisField& field, FieldElem s, const Vector& a) {
  Vector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = field.mul(s, a[i]);
  return out;
}

bool is_zero(const Vector& v) {
  for (auto e : v)
    if (e.value != 0) return false;
  return true;
}

}  // namespace hallforge
