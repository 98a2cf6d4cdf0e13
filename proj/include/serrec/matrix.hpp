#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "serrec/scalar.hpp"

namespace serrec {

/// Dense exact matrix, row-major.  Every entry shares the matrix field tag;
/// mixed-field operations throw FieldMismatch, shape errors DimensionMismatch.
///
/// Conventions fixed here and inherited by everything downstream:
///   - linear maps act on ROW vectors from the right: v |-> v * M;
///   - kernel_basis/image_basis/solve use the column picture (m * x = b);
///   - kron(a, b) orders the tensor basis left-index-major:
///     (i,k) |-> i * b.cols + k.
class Matrix {
 public:
  Matrix() : rows_(0), cols_(0), tag_(FieldTag::rationals()) {}
  Matrix(std::size_t rows, std::size_t cols, FieldTag tag);

  static Matrix zero(std::size_t rows, std::size_t cols, FieldTag tag) {
    return Matrix(rows, cols, tag);
  }
  static Matrix identity(std::size_t n, FieldTag tag);
  /// Convenience for tests: integer entries coerced into the field.
  static Matrix from_ints(const std::vector<std::vector<long long>>& rows,
                          FieldTag tag);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const FieldTag& tag() const { return tag_; }

  Scalar& at(std::size_t i, std::size_t j) { return e_[i * cols_ + j]; }
  const Scalar& at(std::size_t i, std::size_t j) const {
    return e_[i * cols_ + j];
  }

  bool is_zero() const;
  bool operator==(const Matrix& o) const;
  bool operator!=(const Matrix& o) const { return !(*this == o); }

  Matrix operator+(const Matrix& o) const;
  Matrix operator-(const Matrix& o) const;
  Matrix operator-() const;
  Matrix operator*(const Matrix& o) const;  // matmul
  Matrix scaled(const Scalar& c) const;
  Matrix transpose() const;

  Matrix row(std::size_t i) const;
  /// Stacks rows of `o` below this matrix.
  Matrix vstack(const Matrix& o) const;
  Matrix hstack(const Matrix& o) const;
  Matrix submatrix_rows(const std::vector<std::size_t>& idx) const;
  Matrix submatrix_cols(const std::vector<std::size_t>& idx) const;

  std::string str() const;

 private:
  std::size_t rows_, cols_;
  FieldTag tag_;
  std::vector<Scalar> e_;
};

/// Accumulates rows and materializes one matrix at the end; avoids the
/// quadratic copying of vstack-in-a-loop.
class RowBuilder {
 public:
  RowBuilder(std::size_t cols, FieldTag tag) : cols_(cols), tag_(tag) {}
  void add(const Matrix& row);
  void add_rows(const Matrix& m);
  std::size_t count() const { return rows_.size(); }
  Matrix take() const;

 private:
  std::size_t cols_;
  FieldTag tag_;
  std::vector<Matrix> rows_;
};

struct RrefResult {
  Matrix reduced;
  std::vector<std::size_t> pivot_columns;
  std::size_t rank = 0;
};

/// Unique reduced row-echelon form.
RrefResult rref(const Matrix& m);

std::size_t rank(const Matrix& m);

/// Columns span the (right) null space { x : m * x = 0 }.
Matrix kernel_basis(const Matrix& m);

/// Columns span the column space: the pivot columns of m.
Matrix image_basis(const Matrix& m);

/// Canonical solution x of m * x = b (zeros in non-pivot coordinates),
/// or nullopt when some column of b is outside the column space.
std::optional<Matrix> solve(const Matrix& m, const Matrix& b);

/// Inverse of a square invertible matrix; nullopt when singular.
std::optional<Matrix> inverse(const Matrix& m);

bool is_invertible(const Matrix& m);

/// Kronecker product in the fixed lexicographic order (left index major).
Matrix kron(const Matrix& a, const Matrix& b);

/// Block diagonal sum.
Matrix direct_sum_mat(const Matrix& a, const Matrix& b);

/// Rows span { v : v * m = 0 } (the row-picture kernel).
Matrix left_kernel(const Matrix& m);

/// Row basis for the row space of m: the nonzero rows of rref(m).
Matrix row_basis(const Matrix& m);

/// A row space with membership, coordinates and reduction against it.
/// Built once from a spanning set of rows; used for submodule arithmetic.
class RowSpace {
 public:
  explicit RowSpace(const Matrix& spanning_rows);

  std::size_t dim() const { return basis_.rows(); }
  std::size_t ambient() const { return basis_.cols(); }
  /// Canonical (rref) row basis.
  const Matrix& basis() const { return basis_; }

  bool contains(const Matrix& row_vec) const;
  bool contains_rows(const Matrix& rows) const;
  /// Coordinates of row_vec in the rref basis; nullopt if not a member.
  std::optional<Matrix> coordinates(const Matrix& row_vec) const;
  Matrix coordinates_rows(const Matrix& rows) const;  // throws if not members
  /// Reduces row_vec modulo the space: result vanishes on pivot columns.
  Matrix reduce(const Matrix& row_vec) const;
  const std::vector<std::size_t>& pivot_columns() const { return pivots_; }
  /// Ambient column indices not used as pivots (complement coordinates).
  std::vector<std::size_t> complement_columns() const;

 private:
  Matrix basis_;
  std::vector<std::size_t> pivots_;
};

}  // namespace serrec
