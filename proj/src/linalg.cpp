#include "unistab/linalg.hpp"

#include <algorithm>

#include "unistab/error.hpp"

namespace unistab {

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = Scalar{1};
  return m;
}

Matrix Matrix::from_rows(std::span<const Vector> rows, std::size_t cols) {
  Matrix m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw PreconditionError("row length mismatch");
    for (std::size_t c = 0; c < cols; ++c) m.at(r, c) = rows[r][c];
  }
  return m;
}

Vector Matrix::row(std::size_t r) const { return Vector(a_.begin() + r * cols_, a_.begin() + (r + 1) * cols_); }

Vector Matrix::col(std::size_t c) const {
  Vector v(rows_);
  for (std::size_t r = 0; r < rows_; ++r) v[r] = at(r, c);
  return v;
}

Matrix multiply(const Field& f, const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) throw PreconditionError("matrix dimension mismatch");
  Matrix r(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Scalar x = a.at(i, k);
      if (x.value == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) r.at(i, j) = f.add(r.at(i, j), f.mul(x, b.at(k, j)));
    }
  return r;
}

Matrix transpose(const Matrix& a) {
  Matrix r(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) r.at(j, i) = a.at(i, j);
  return r;
}

Vector Echelon::reduce(Vector v) const {
  if (v.size() != dim_) throw PreconditionError("vector dimension mismatch");
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    const Scalar c = v[pivots_[i]];
    if (c.value == 0) continue;
    const Vector& row = rows_[i];
    for (std::size_t j = pivots_[i]; j < dim_; ++j) v[j] = f_->sub(v[j], f_->mul(c, row[j]));
  }
  return v;
}

bool Echelon::contains(const Vector& v) const {
  const Vector r = reduce(v);
  return std::all_of(r.begin(), r.end(), [](Scalar s) { return s.value == 0; });
}

bool Echelon::add(const Vector& v) {
  Vector r = reduce(v);
  std::size_t p = 0;
  while (p < dim_ && r[p].value == 0) ++p;
  if (p == dim_) return false;
  const Scalar s = f_->inv(r[p]);
  for (std::size_t j = p; j < dim_; ++j) r[j] = f_->mul(r[j], s);
  // keep the basis fully reduced
  for (auto& row : rows_) {
    const Scalar c = row[p];
    if (c.value == 0) continue;
    for (std::size_t j = p; j < dim_; ++j) row[j] = f_->sub(row[j], f_->mul(c, r[j]));
  }
  const auto pos = std::lower_bound(pivots_.begin(), pivots_.end(), p) - pivots_.begin();
  pivots_.insert(pivots_.begin() + pos, p);
  rows_.insert(rows_.begin() + pos, std::move(r));
  return true;
}

std::vector<Vector> Echelon::basis() const { return rows_; }

std::size_t rank_of(const Field& f, std::span<const Vector> vectors, std::size_t dim) {
  Echelon e(f, dim);
  for (const auto& v : vectors) e.add(v);
  return e.rank();
}

std::size_t rank_of(const Field& f, const Matrix& m) {
  Echelon e(f, m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r) e.add(m.row(r));
  return e.rank();
}

bool independent(const Field& f, std::span<const Vector> vectors, std::size_t dim) {
  return rank_of(f, vectors, dim) == vectors.size();
}

std::vector<Vector> nullspace(const Field& f, const Matrix& m) {
  Echelon e(f, m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r) e.add(m.row(r));
  const auto rows = e.basis();
  std::vector<std::size_t> pivots;
  for (const auto& row : rows) {
    std::size_t p = 0;
    while (row[p].value == 0) ++p;
    pivots.push_back(p);
  }
  std::vector<Vector> basis;
  for (std::size_t freec = 0; freec < m.cols(); ++freec) {
    if (std::find(pivots.begin(), pivots.end(), freec) != pivots.end()) continue;
    Vector x(m.cols());
    x[freec] = f.one();
    for (std::size_t i = 0; i < rows.size(); ++i) x[pivots[i]] = f.neg(rows[i][freec]);
    basis.push_back(std::move(x));
  }
  return basis;
}

std::optional<Matrix> left_inverse(const Field& f, const Matrix& m) {
  // Row-reduce [m | I]; full column rank means the top block becomes [I_c ; 0].
  const std::size_t r = m.rows();
  const std::size_t c = m.cols();
  Matrix aug(r, c + r);
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < c; ++j) aug.at(i, j) = m.at(i, j);
    aug.at(i, c + i) = f.one();
  }
  std::size_t row = 0;
  for (std::size_t col = 0; col < c; ++col) {
    std::size_t piv = row;
    while (piv < r && aug.at(piv, col).value == 0) ++piv;
    if (piv == r) return std::nullopt;
    for (std::size_t j = 0; j < c + r; ++j) std::swap(aug.at(piv, j), aug.at(row, j));
    const Scalar s = f.inv(aug.at(row, col));
    for (std::size_t j = 0; j < c + r; ++j) aug.at(row, j) = f.mul(aug.at(row, j), s);
    for (std::size_t i = 0; i < r; ++i) {
      if (i == row || aug.at(i, col).value == 0) continue;
      const Scalar t = aug.at(i, col);
      for (std::size_t j = 0; j < c + r; ++j) aug.at(i, j) = f.sub(aug.at(i, j), f.mul(t, aug.at(row, j)));
    }
    ++row;
  }
  Matrix l(c, r);
  for (std::size_t i = 0; i < c; ++i)
    for (std::size_t j = 0; j < r; ++j) l.at(i, j) = aug.at(i, c + j);
  return l;
}

std::vector<Vector> span_basis(const Field& f, std::span<const Vector> vectors, std::size_t dim) {
  Echelon e(f, dim);
  for (const auto& v : vectors) e.add(v);
  return e.basis();
}

Vector normalize_line(const Field& f, Vector v) {
  std::size_t i = 0;
  while (i < v.size() && v[i].value == 0) ++i;
  if (i == v.size()) return v;
  const Scalar s = f.inv(v[i]);
  for (std::size_t j = i; j < v.size(); ++j) v[j] = f.mul(v[j], s);
  return v;
}

Vector unit_vector(std::size_t dim, std::size_t i, const Field& f) {
  Vector v(dim, f.zero());
  v.at(i) = f.one();
  return v;
}

}  // namespace unistab
