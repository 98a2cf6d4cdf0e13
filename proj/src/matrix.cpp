#include "serrec/matrix.hpp"

#include <sstream>

namespace serrec {

namespace {

void check_tags(const Matrix& a, const Matrix& b) {
  if (!(a.tag() == b.tag()))
    throw Error(Errc::FieldMismatch,
                "matrices over " + a.tag().str() + " and " + b.tag().str());
}

}  // namespace

Matrix::Matrix(std::size_t rows, std::size_t cols, FieldTag tag)
    : rows_(rows), cols_(cols), tag_(tag),
      e_(rows * cols, Scalar::zero(tag)) {}

Matrix Matrix::identity(std::size_t n, FieldTag tag) {
  Matrix m(n, n, tag);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = Scalar::one(tag);
  return m;
}

Matrix Matrix::from_ints(const std::vector<std::vector<long long>>& rows,
                         FieldTag tag) {
  std::size_t r = rows.size();
  std::size_t c = r == 0 ? 0 : rows[0].size();
  Matrix m(r, c, tag);
  for (std::size_t i = 0; i < r; ++i) {
    if (rows[i].size() != c)
      throw Error(Errc::DimensionMismatch, "ragged initializer");
    for (std::size_t j = 0; j < c; ++j)
      m.at(i, j) = Scalar::from_int(rows[i][j], tag);
  }
  return m;
}

bool Matrix::is_zero() const {
  for (const auto& x : e_)
    if (!x.is_zero()) return false;
  return true;
}

bool Matrix::operator==(const Matrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_ || !(tag_ == o.tag_)) return false;
  for (std::size_t k = 0; k < e_.size(); ++k)
    if (e_[k] != o.e_[k]) return false;
  return true;
}

Matrix Matrix::operator+(const Matrix& o) const {
  check_tags(*this, o);
  if (rows_ != o.rows_ || cols_ != o.cols_)
    throw Error(Errc::DimensionMismatch, "add: shapes differ");
  Matrix m(rows_, cols_, tag_);
  for (std::size_t k = 0; k < e_.size(); ++k) m.e_[k] = e_[k] + o.e_[k];
  return m;
}

Matrix Matrix::operator-(const Matrix& o) const { return *this + (-o); }

Matrix Matrix::operator-() const {
  Matrix m(rows_, cols_, tag_);
  for (std::size_t k = 0; k < e_.size(); ++k) m.e_[k] = -e_[k];
  return m;
}

Matrix Matrix::operator*(const Matrix& o) const {
  check_tags(*this, o);
  if (cols_ != o.rows_)
    throw Error(Errc::DimensionMismatch,
                "matmul: " + std::to_string(cols_) + " vs " +
                    std::to_string(o.rows_));
  Matrix m(rows_, o.cols_, tag_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      const Scalar& aik = at(i, k);
      if (aik.is_zero()) continue;
      for (std::size_t j = 0; j < o.cols_; ++j)
        m.at(i, j) = m.at(i, j) + aik * o.at(k, j);
    }
  return m;
}

Matrix Matrix::scaled(const Scalar& c) const {
  Matrix m(rows_, cols_, tag_);
  for (std::size_t k = 0; k < e_.size(); ++k) m.e_[k] = e_[k] * c;
  return m;
}

Matrix Matrix::transpose() const {
  Matrix m(cols_, rows_, tag_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) m.at(j, i) = at(i, j);
  return m;
}

Matrix Matrix::row(std::size_t i) const {
  Matrix m(1, cols_, tag_);
  for (std::size_t j = 0; j < cols_; ++j) m.at(0, j) = at(i, j);
  return m;
}

Matrix Matrix::vstack(const Matrix& o) const {
  check_tags(*this, o);
  if (rows_ != 0 && o.rows_ != 0 && cols_ != o.cols_)
    throw Error(Errc::DimensionMismatch, "vstack: widths differ");
  std::size_t c = rows_ == 0 ? o.cols_ : cols_;
  Matrix m(rows_ + o.rows_, c, tag_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) m.at(i, j) = at(i, j);
  for (std::size_t i = 0; i < o.rows_; ++i)
    for (std::size_t j = 0; j < o.cols_; ++j) m.at(rows_ + i, j) = o.at(i, j);
  return m;
}

Matrix Matrix::hstack(const Matrix& o) const {
  check_tags(*this, o);
  if (rows_ != o.rows_)
    throw Error(Errc::DimensionMismatch, "hstack: heights differ");
  Matrix m(rows_, cols_ + o.cols_, tag_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) m.at(i, j) = at(i, j);
    for (std::size_t j = 0; j < o.cols_; ++j) m.at(i, cols_ + j) = o.at(i, j);
  }
  return m;
}

Matrix Matrix::submatrix_rows(const std::vector<std::size_t>& idx) const {
  Matrix m(idx.size(), cols_, tag_);
  for (std::size_t i = 0; i < idx.size(); ++i)
    for (std::size_t j = 0; j < cols_; ++j) m.at(i, j) = at(idx[i], j);
  return m;
}

Matrix Matrix::submatrix_cols(const std::vector<std::size_t>& idx) const {
  Matrix m(rows_, idx.size(), tag_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < idx.size(); ++j) m.at(i, j) = at(i, idx[j]);
  return m;
}

std::string Matrix::str() const {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < rows_; ++i) {
    os << (i ? "; " : "");
    for (std::size_t j = 0; j < cols_; ++j)
      os << (j ? " " : "") << at(i, j).str();
  }
  os << "]";
  return os.str();
}

void RowBuilder::add(const Matrix& row) {
  if (row.rows() != 1 || row.cols() != cols_)
    throw Error(Errc::DimensionMismatch, "RowBuilder: bad row shape");
  rows_.push_back(row);
}

void RowBuilder::add_rows(const Matrix& m) {
  for (std::size_t i = 0; i < m.rows(); ++i) rows_.push_back(m.row(i));
}

Matrix RowBuilder::take() const {
  Matrix out(rows_.size(), cols_, tag_);
  for (std::size_t i = 0; i < rows_.size(); ++i)
    for (std::size_t j = 0; j < cols_; ++j) out.at(i, j) = rows_[i].at(0, j);
  return out;
}

RrefResult rref(const Matrix& m) {
  RrefResult out;
  Matrix a = m;
  std::size_t r = 0;
  for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
    std::size_t piv = a.rows();
    for (std::size_t i = r; i < a.rows(); ++i)
      if (!a.at(i, c).is_zero()) {
        piv = i;
        break;
      }
    if (piv == a.rows()) continue;
    if (piv != r)
      for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a.at(piv, j), a.at(r, j));
    Scalar inv = a.at(r, c).inverse();
    for (std::size_t j = c; j < a.cols(); ++j) a.at(r, j) = a.at(r, j) * inv;
    for (std::size_t i = 0; i < a.rows(); ++i) {
      if (i == r || a.at(i, c).is_zero()) continue;
      Scalar f = a.at(i, c);
      for (std::size_t j = c; j < a.cols(); ++j)
        a.at(i, j) = a.at(i, j) - f * a.at(r, j);
    }
    out.pivot_columns.push_back(c);
    ++r;
  }
  out.rank = r;
  out.reduced = std::move(a);
  return out;
}

std::size_t rank(const Matrix& m) { return rref(m).rank; }

Matrix kernel_basis(const Matrix& m) {
  RrefResult rr = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : rr.pivot_columns) is_pivot[c] = true;
  std::vector<std::size_t> free_cols;
  for (std::size_t c = 0; c < m.cols(); ++c)
    if (!is_pivot[c]) free_cols.push_back(c);
  Matrix k(m.cols(), free_cols.size(), m.tag());
  for (std::size_t f = 0; f < free_cols.size(); ++f) {
    std::size_t fc = free_cols[f];
    k.at(fc, f) = Scalar::one(m.tag());
    for (std::size_t t = 0; t < rr.pivot_columns.size(); ++t)
      k.at(rr.pivot_columns[t], f) = -rr.reduced.at(t, fc);
  }
  return k;
}

Matrix image_basis(const Matrix& m) {
  RrefResult rr = rref(m);
  return m.submatrix_cols(rr.pivot_columns);
}

std::optional<Matrix> solve(const Matrix& m, const Matrix& b) {
  check_tags(m, b);
  if (m.rows() != b.rows())
    throw Error(Errc::DimensionMismatch, "solve: row counts differ");
  RrefResult rr = rref(m.hstack(b));
  // A pivot inside the b-block means inconsistency.
  for (auto c : rr.pivot_columns)
    if (c >= m.cols()) return std::nullopt;
  Matrix x(m.cols(), b.cols(), m.tag());
  for (std::size_t t = 0; t < rr.pivot_columns.size(); ++t)
    for (std::size_t j = 0; j < b.cols(); ++j)
      x.at(rr.pivot_columns[t], j) = rr.reduced.at(t, m.cols() + j);
  return x;
}

std::optional<Matrix> inverse(const Matrix& m) {
  if (m.rows() != m.cols()) return std::nullopt;
  auto x = solve(m, Matrix::identity(m.rows(), m.tag()));
  if (!x) return std::nullopt;
  if (!((*x) * m == Matrix::identity(m.rows(), m.tag()))) return std::nullopt;
  return x;
}

bool is_invertible(const Matrix& m) {
  return m.rows() == m.cols() && rank(m) == m.rows();
}

Matrix kron(const Matrix& a, const Matrix& b) {
  check_tags(a, b);
  Matrix m(a.rows() * b.rows(), a.cols() * b.cols(), a.tag());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (a.at(i, j).is_zero()) continue;
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l)
          m.at(i * b.rows() + k, j * b.cols() + l) = a.at(i, j) * b.at(k, l);
    }
  return m;
}

Matrix direct_sum_mat(const Matrix& a, const Matrix& b) {
  check_tags(a, b);
  Matrix m(a.rows() + b.rows(), a.cols() + b.cols(), a.tag());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) m.at(i, j) = a.at(i, j);
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j)
      m.at(a.rows() + i, a.cols() + j) = b.at(i, j);
  return m;
}

Matrix left_kernel(const Matrix& m) { return kernel_basis(m.transpose()).transpose(); }

Matrix row_basis(const Matrix& m) {
  RrefResult rr = rref(m);
  std::vector<std::size_t> idx(rr.rank);
  for (std::size_t i = 0; i < rr.rank; ++i) idx[i] = i;
  return rr.reduced.submatrix_rows(idx);
}

RowSpace::RowSpace(const Matrix& spanning_rows) {
  RrefResult rr = rref(spanning_rows);
  std::vector<std::size_t> idx(rr.rank);
  for (std::size_t i = 0; i < rr.rank; ++i) idx[i] = i;
  basis_ = rr.reduced.submatrix_rows(idx);
  if (rr.rank == 0) basis_ = Matrix(0, spanning_rows.cols(), spanning_rows.tag());
  pivots_ = rr.pivot_columns;
}

Matrix RowSpace::reduce(const Matrix& row_vec) const {
  if (row_vec.rows() != 1 || row_vec.cols() != ambient())
    throw Error(Errc::DimensionMismatch, "reduce: bad row vector");
  Matrix v = row_vec;
  for (std::size_t t = 0; t < pivots_.size(); ++t) {
    Scalar f = v.at(0, pivots_[t]);
    if (f.is_zero()) continue;
    for (std::size_t j = 0; j < ambient(); ++j)
      v.at(0, j) = v.at(0, j) - f * basis_.at(t, j);
  }
  return v;
}

bool RowSpace::contains(const Matrix& row_vec) const {
  return reduce(row_vec).is_zero();
}

bool RowSpace::contains_rows(const Matrix& rows) const {
  for (std::size_t i = 0; i < rows.rows(); ++i)
    if (!contains(rows.row(i))) return false;
  return true;
}

std::optional<Matrix> RowSpace::coordinates(const Matrix& row_vec) const {
  Matrix v = row_vec;
  Matrix coords(1, dim(), v.tag());
  for (std::size_t t = 0; t < pivots_.size(); ++t) {
    Scalar f = v.at(0, pivots_[t]);
    coords.at(0, t) = f;
    if (f.is_zero()) continue;
    for (std::size_t j = 0; j < ambient(); ++j)
      v.at(0, j) = v.at(0, j) - f * basis_.at(t, j);
  }
  if (!v.is_zero()) return std::nullopt;
  return coords;
}

Matrix RowSpace::coordinates_rows(const Matrix& rows) const {
  Matrix out(rows.rows(), dim(), rows.tag());
  for (std::size_t i = 0; i < rows.rows(); ++i) {
    auto c = coordinates(rows.row(i));
    if (!c)
      throw Error(Errc::InternalInconsistency,
                  "coordinates_rows: row outside the space");
    for (std::size_t j = 0; j < dim(); ++j) out.at(i, j) = c->at(0, j);
  }
  return out;
}

std::vector<std::size_t> RowSpace::complement_columns() const {
  std::vector<bool> is_pivot(ambient(), false);
  for (auto c : pivots_) is_pivot[c] = true;
  std::vector<std::size_t> out;
  for (std::size_t c = 0; c < ambient(); ++c)
    if (!is_pivot[c]) out.push_back(c);
  return out;
}

}  // namespace serrec
