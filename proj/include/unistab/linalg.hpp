#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "unistab/scalars.hpp"

namespace unistab {

using Vector = std::vector<Scalar>;

/// Dense row-major matrix over a Field. Used for the small pairing, Gram and
/// certificate matrices; group elements use the fixed-size UnitaryMatrix.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}

  static Matrix identity(std::size_t n);
  static Matrix from_rows(std::span<const Vector> rows, std::size_t cols);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Scalar& at(std::size_t r, std::size_t c) { return a_[r * cols_ + c]; }
  Scalar at(std::size_t r, std::size_t c) const { return a_[r * cols_ + c]; }
  Vector row(std::size_t r) const;
  Vector col(std::size_t c) const;

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Scalar> a_;
};

Matrix multiply(const Field& f, const Matrix& a, const Matrix& b);
Matrix transpose(const Matrix& a);

/// Incrementally maintained reduced row echelon basis of a subspace.
class Echelon {
 public:
  Echelon(const Field& f, std::size_t dim) : f_(&f), dim_(dim) {}

  std::size_t dim() const { return dim_; }
  std::size_t rank() const { return rows_.size(); }
  /// Residue of v after elimination against the current basis.
  Vector reduce(Vector v) const;
  bool contains(const Vector& v) const;
  /// Adds v; returns false (and leaves the basis unchanged) if v is dependent.
  bool add(const Vector& v);
  /// Reduced echelon basis, pivot columns strictly increasing.
  std::vector<Vector> basis() const;

 private:
  const Field* f_;
  std::size_t dim_;
  std::vector<Vector> rows_;
  std::vector<std::size_t> pivots_;
};

std::size_t rank_of(const Field& f, std::span<const Vector> vectors, std::size_t dim);
std::size_t rank_of(const Field& f, const Matrix& m);
bool independent(const Field& f, std::span<const Vector> vectors, std::size_t dim);

/// Basis of {x : m x = 0}.
std::vector<Vector> nullspace(const Field& f, const Matrix& m);

/// L with L m = I for m of full column rank; nullopt otherwise.
std::optional<Matrix> left_inverse(const Field& f, const Matrix& m);

/// Reduced echelon basis of span(vectors).
std::vector<Vector> span_basis(const Field& f, std::span<const Vector> vectors, std::size_t dim);

/// Scales v so that its first nonzero coordinate is 1. Zero stays zero.
Vector normalize_line(const Field& f, Vector v);

Vector unit_vector(std::size_t dim, std::size_t i, const Field& f);

}  // namespace unistab
