#pragma once

// Dense exact linear algebra. Vectors are rows unless stated otherwise;
// elimination always takes the first nonzero entry in column order as pivot,
// so every derived basis is reproducible.

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "eqrec/errors.hpp"
#include "eqrec/scalar.hpp"

namespace eqrec {

using Vector = std::vector<Scalar>;

inline Vector zero_vector(std::size_t n) { return Vector(n); }

inline Vector unit_vector(std::size_t n, std::size_t i, const Field& f) {
  Vector v(n);
  v[i] = f.one();
  return v;
}

inline bool is_zero(const Vector& v) {
  return std::all_of(v.begin(), v.end(), [](const Scalar& s) { return s.is_zero(); });
}

inline Vector operator+(Vector a, const Vector& b) {
  if (a.size() != b.size()) throw UsageError("vector length mismatch");
  for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
  return a;
}

inline Vector operator-(Vector a, const Vector& b) {
  if (a.size() != b.size()) throw UsageError("vector length mismatch");
  for (std::size_t i = 0; i < a.size(); ++i) a[i] -= b[i];
  return a;
}

inline Vector operator*(const Scalar& c, Vector v) {
  for (auto& x : v) x *= c;
  return v;
}

/// y += c * x
inline void axpy(Vector& y, const Scalar& c, const Vector& x) {
  if (c.is_zero()) return;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!x[i].is_zero()) y[i] += c * x[i];
  }
}

class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static Matrix identity(std::size_t n, const Field& f) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = f.one();
    return m;
  }

  static Matrix from_rows(const std::vector<Vector>& rows, std::size_t cols) {
    Matrix m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) m.set_row(i, rows[i]);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Scalar& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Scalar& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  Vector row(std::size_t i) const {
    return Vector(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                  data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
  }

  Vector column(std::size_t j) const {
    Vector v(rows_);
    for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
    return v;
  }

  void set_row(std::size_t i, const Vector& v) {
    if (v.size() != cols_) throw UsageError("row length mismatch");
    std::copy(v.begin(), v.end(), data_.begin() + static_cast<std::ptrdiff_t>(i * cols_));
  }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
    Matrix b(nr, nc);
    for (std::size_t i = 0; i < nr; ++i)
      for (std::size_t j = 0; j < nc; ++j) b(i, j) = (*this)(r0 + i, c0 + j);
    return b;
  }

  void set_block(std::size_t r0, std::size_t c0, const Matrix& b) {
    for (std::size_t i = 0; i < b.rows(); ++i)
      for (std::size_t j = 0; j < b.cols(); ++j) (*this)(r0 + i, c0 + j) = b(i, j);
  }

  bool is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](const Scalar& s) { return s.is_zero(); });
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }
  friend bool operator!=(const Matrix& a, const Matrix& b) { return !(a == b); }

  friend Matrix operator+(Matrix a, const Matrix& b) {
    a.check_same_shape(b);
    for (std::size_t i = 0; i < a.data_.size(); ++i) a.data_[i] += b.data_[i];
    return a;
  }

  friend Matrix operator-(Matrix a, const Matrix& b) {
    a.check_same_shape(b);
    for (std::size_t i = 0; i < a.data_.size(); ++i) a.data_[i] -= b.data_[i];
    return a;
  }

  friend Matrix operator*(const Scalar& c, Matrix a) {
    for (auto& x : a.data_) x *= c;
    return a;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw UsageError("matrix product shape mismatch");
    Matrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i) {
      for (std::size_t l = 0; l < a.cols_; ++l) {
        const Scalar& x = a(i, l);
        if (x.is_zero()) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) {
          const Scalar& y = b(l, j);
          if (!y.is_zero()) c(i, j) += x * y;
        }
      }
    }
    return c;
  }

  /// Row vector times matrix.
  friend Vector operator*(const Vector& v, const Matrix& m) {
    if (v.size() != m.rows_) throw UsageError("vector-matrix shape mismatch");
    Vector out(m.cols_);
    for (std::size_t l = 0; l < m.rows_; ++l) {
      if (v[l].is_zero()) continue;
      for (std::size_t j = 0; j < m.cols_; ++j) {
        const Scalar& y = m(l, j);
        if (!y.is_zero()) out[j] += v[l] * y;
      }
    }
    return out;
  }

  /// Matrix times column vector.
  friend Vector operator*(const Matrix& m, const Vector& v) {
    if (v.size() != m.cols_) throw UsageError("matrix-vector shape mismatch");
    Vector out(m.rows_);
    for (std::size_t i = 0; i < m.rows_; ++i) {
      for (std::size_t j = 0; j < m.cols_; ++j) {
        const Scalar& x = m(i, j);
        if (!x.is_zero() && !v[j].is_zero()) out[i] += x * v[j];
      }
    }
    return out;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Scalar> data_;

  void check_same_shape(const Matrix& b) const {
    if (rows_ != b.rows_ || cols_ != b.cols_) throw UsageError("matrix shape mismatch");
  }
};

/// Horizontal concatenation [a | b].
inline Matrix hstack(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows()) throw UsageError("hstack row mismatch");
  Matrix m(a.rows(), a.cols() + b.cols());
  m.set_block(0, 0, a);
  m.set_block(0, a.cols(), b);
  return m;
}

/// Vertical concatenation.
inline Matrix vstack(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.cols()) throw UsageError("vstack column mismatch");
  Matrix m(a.rows() + b.rows(), a.cols());
  m.set_block(0, 0, a);
  m.set_block(a.rows(), 0, b);
  return m;
}

/// Block-diagonal sum.
inline Matrix direct_sum(const Matrix& a, const Matrix& b) {
  Matrix m(a.rows() + b.rows(), a.cols() + b.cols());
  m.set_block(0, 0, a);
  m.set_block(a.rows(), a.cols(), b);
  return m;
}

struct Echelon {
  Matrix reduced;                   // rows [0, rank) hold the reduced echelon basis
  std::vector<std::size_t> pivots;  // pivot column of each nonzero row

  std::size_t rank() const { return pivots.size(); }
};

/// Reduced row echelon form by Gauss-Jordan elimination.
inline Echelon row_reduce(Matrix m) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  std::vector<std::size_t> support;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t p = r;
    while (p < m.rows() && m(p, c).is_zero()) ++p;
    if (p == m.rows()) continue;
    if (p != r) {
      for (std::size_t j = c; j < m.cols(); ++j) std::swap(m(p, j), m(r, j));
    }
    Scalar inv = m(r, c).inverse();
    support.clear();
    for (std::size_t j = c; j < m.cols(); ++j) {
      if (!m(r, j).is_zero()) {
        m(r, j) *= inv;
        support.push_back(j);
      }
    }
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || m(i, c).is_zero()) continue;
      Scalar f = m(i, c);
      for (std::size_t j : support) m(i, j) -= f * m(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return Echelon{std::move(m), std::move(pivots)};
}

inline std::size_t rank(const Matrix& a) { return row_reduce(a).rank(); }

/// Basis of {x : A x = 0} as column vectors, one per free column.
inline std::vector<Vector> nullspace_basis(const Matrix& a) {
  Echelon e = row_reduce(a);
  std::vector<bool> is_pivot(a.cols(), false);
  for (auto p : e.pivots) is_pivot[p] = true;
  std::vector<Vector> basis;
  for (std::size_t f = 0; f < a.cols(); ++f) {
    if (is_pivot[f]) continue;
    Vector x(a.cols());
    x[f] = Scalar(1);
    for (std::size_t i = 0; i < e.rank(); ++i) x[e.pivots[i]] = -e.reduced(i, f);
    basis.push_back(std::move(x));
  }
  return basis;
}

/// Basis of {v : v A = 0} as row vectors.
inline std::vector<Vector> left_nullspace_basis(const Matrix& a) { return nullspace_basis(a.transpose()); }

/// Some x with A x = b, or nothing when the system is inconsistent.
inline std::optional<Vector> solve_linear(const Matrix& a, const Vector& b) {
  if (a.rows() != b.size()) throw UsageError("solve_linear: A has " + std::to_string(a.rows()) +
                                             " rows but b has " + std::to_string(b.size()));
  Matrix aug(a.rows(), a.cols() + 1);
  aug.set_block(0, 0, a);
  for (std::size_t i = 0; i < b.size(); ++i) aug(i, a.cols()) = b[i];
  Echelon e = row_reduce(std::move(aug));
  if (!e.pivots.empty() && e.pivots.back() == a.cols()) return std::nullopt;
  Vector x(a.cols());
  for (std::size_t i = 0; i < e.rank(); ++i) x[e.pivots[i]] = e.reduced(i, a.cols());
  return x;
}

/// Some X with A X = B, solving every column at once.
inline std::optional<Matrix> solve_linear_multi(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows()) throw UsageError("solve_linear_multi: row mismatch");
  Echelon e = row_reduce(hstack(a, b));
  std::size_t r = 0;
  while (r < e.rank() && e.pivots[r] < a.cols()) ++r;
  if (r < e.rank()) return std::nullopt;
  Matrix x(a.cols(), b.cols());
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) x(e.pivots[i], j) = e.reduced(i, a.cols() + j);
  return x;
}

/// Solves x A = b for a row vector x.
inline std::optional<Vector> solve_left(const Matrix& a, const Vector& b) { return solve_linear(a.transpose(), b); }

inline std::optional<Matrix> inverse(const Matrix& a, const Field& f) {
  if (a.rows() != a.cols()) throw UsageError("inverse of a non-square matrix");
  std::size_t n = a.rows();
  Echelon e = row_reduce(hstack(a, Matrix::identity(n, f)));
  if (e.rank() < n || (n > 0 && e.pivots[n - 1] != n - 1)) return std::nullopt;
  return e.reduced.block(0, n, n, n);
}

/// A linear subspace of k^n stored as a reduced echelon basis.
class Subspace {
 public:
  Subspace() = default;
  explicit Subspace(std::size_t ambient) : ambient_(ambient) {}

  static Subspace span(std::size_t ambient, const std::vector<Vector>& vectors) {
    Subspace s(ambient);
    if (vectors.empty()) return s;
    Echelon e = row_reduce(Matrix::from_rows(vectors, ambient));
    for (std::size_t i = 0; i < e.rank(); ++i) s.rows_.push_back(e.reduced.row(i));
    s.pivots_ = e.pivots;
    return s;
  }

  static Subspace row_space(const Matrix& m) {
    Subspace s(m.cols());
    Echelon e = row_reduce(m);
    for (std::size_t i = 0; i < e.rank(); ++i) s.rows_.push_back(e.reduced.row(i));
    s.pivots_ = e.pivots;
    return s;
  }

  static Subspace whole(std::size_t ambient, const Field& f) {
    Subspace s(ambient);
    for (std::size_t i = 0; i < ambient; ++i) {
      s.rows_.push_back(unit_vector(ambient, i, f));
      s.pivots_.push_back(i);
    }
    return s;
  }

  std::size_t ambient_dim() const { return ambient_; }
  std::size_t dim() const { return rows_.size(); }
  const std::vector<Vector>& basis() const { return rows_; }
  const Vector& basis_vector(std::size_t i) const { return rows_[i]; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }
  Matrix basis_matrix() const { return Matrix::from_rows(rows_, ambient_); }

  /// Canonical representative of v modulo this subspace.
  Vector reduce(Vector v) const {
    check(v);
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      if (v[pivots_[i]].is_zero()) continue;
      Scalar c = v[pivots_[i]];
      axpy(v, -c, rows_[i]);
    }
    return v;
  }

  bool contains(const Vector& v) const { return is_zero(reduce(v)); }

  bool contains(const Subspace& other) const {
    return std::all_of(other.rows_.begin(), other.rows_.end(), [&](const Vector& v) { return contains(v); });
  }

  /// Coordinates of v in the echelon basis; v must lie in the subspace.
  Vector coordinates(const Vector& v) const {
    check(v);
    Vector c(rows_.size());
    for (std::size_t i = 0; i < rows_.size(); ++i) c[i] = v[pivots_[i]];
    return c;
  }

  Vector combine(const Vector& coords) const {
    Vector v(ambient_);
    for (std::size_t i = 0; i < rows_.size(); ++i) axpy(v, coords[i], rows_[i]);
    return v;
  }

  /// Adds v; returns true when the dimension grew.
  bool add(const Vector& v) {
    Vector r = reduce(v);
    std::size_t p = 0;
    while (p < r.size() && r[p].is_zero()) ++p;
    if (p == r.size()) return false;
    Scalar inv = r[p].inverse();
    for (auto& x : r) x *= inv;
    for (auto& row : rows_) {
      if (!row[p].is_zero()) {
        Scalar c = row[p];
        axpy(row, -c, r);
      }
    }
    auto pos = std::lower_bound(pivots_.begin(), pivots_.end(), p);
    auto idx = pos - pivots_.begin();
    pivots_.insert(pos, p);
    rows_.insert(rows_.begin() + idx, std::move(r));
    return true;
  }

  Subspace sum(const Subspace& o) const {
    Subspace s = *this;
    for (const auto& v : o.rows_) s.add(v);
    return s;
  }

  Subspace intersect(const Subspace& o) const {
    if (ambient_ != o.ambient_) throw UsageError("subspace ambient mismatch");
    if (rows_.empty() || o.rows_.empty()) return Subspace(ambient_);
    std::vector<Vector> stacked = rows_;
    stacked.insert(stacked.end(), o.rows_.begin(), o.rows_.end());
    auto rel = left_nullspace_basis(Matrix::from_rows(stacked, ambient_));
    std::vector<Vector> out;
    for (const auto& c : rel) {
      Vector v(ambient_);
      for (std::size_t i = 0; i < rows_.size(); ++i) axpy(v, c[i], rows_[i]);
      out.push_back(std::move(v));
    }
    return span(ambient_, out);
  }

  /// Columns without a pivot; the standard vectors there span a complement.
  std::vector<std::size_t> free_columns() const {
    std::vector<std::size_t> out;
    std::size_t k = 0;
    for (std::size_t c = 0; c < ambient_; ++c) {
      if (k < pivots_.size() && pivots_[k] == c) {
        ++k;
        continue;
      }
      out.push_back(c);
    }
    return out;
  }

  friend bool operator==(const Subspace& a, const Subspace& b) {
    return a.ambient_ == b.ambient_ && a.pivots_ == b.pivots_ && a.rows_ == b.rows_;
  }

 private:
  std::size_t ambient_ = 0;
  std::vector<Vector> rows_;
  std::vector<std::size_t> pivots_;

  void check(const Vector& v) const {
    if (v.size() != ambient_) throw UsageError("vector does not live in the subspace's ambient space");
  }
};

}  // namespace eqrec
