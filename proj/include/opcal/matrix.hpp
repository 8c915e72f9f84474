#pragma once

#include <cassert>
#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

#include "opcal/field.hpp"

namespace opcal {

// Dense exact matrix. Row-major; sized for the small blocks that exact
// elimination actually touches (per-degree slices, constraint systems).
template <typename K>
class Matrix {
 public:
  Matrix() : rows_(0), cols_(0) {}
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols, K(0)) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = K(1);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  K& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const K& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

  friend bool operator==(const Matrix& x, const Matrix& y) {
    return x.rows_ == y.rows_ && x.cols_ == y.cols_ && x.a_ == y.a_;
  }

  Matrix operator*(const Matrix& o) const {
    assert(cols_ == o.rows_);
    Matrix r(rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t k = 0; k < cols_; ++k) {
        const K& x = (*this)(i, k);
        if (is_zero(x)) continue;
        for (std::size_t j = 0; j < o.cols_; ++j) {
          if (is_zero(o(k, j))) continue;
          r(i, j) += x * o(k, j);
        }
      }
    return r;
  }

  Matrix operator+(const Matrix& o) const {
    assert(rows_ == o.rows_ && cols_ == o.cols_);
    Matrix r = *this;
    for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] += o.a_[i];
    return r;
  }

  Matrix operator-(const Matrix& o) const {
    assert(rows_ == o.rows_ && cols_ == o.cols_);
    Matrix r = *this;
    for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] -= o.a_[i];
    return r;
  }

  Matrix scaled(const K& c) const {
    Matrix r = *this;
    for (auto& x : r.a_) x *= c;
    return r;
  }

  Matrix transposed() const {
    Matrix r(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
    return r;
  }

  bool is_zero_matrix() const {
    for (const auto& x : a_)
      if (!is_zero(x)) return false;
    return true;
  }

  std::vector<K> apply(const std::vector<K>& v) const {
    assert(v.size() == cols_);
    std::vector<K> r(rows_, K(0));
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j)
        if (!is_zero((*this)(i, j)) && !is_zero(v[j])) r[i] += (*this)(i, j) * v[j];
    return r;
  }

 private:
  std::size_t rows_, cols_;
  std::vector<K> a_;
};

// In-place reduced row echelon form: leading entries normalized to 1, zeros
// above and below each pivot. Returns the pivot columns in order.
template <typename K>
std::vector<std::size_t> rref(Matrix<K>& m) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    std::size_t sel = row;
    while (sel < m.rows() && is_zero(m(sel, col))) ++sel;
    if (sel == m.rows()) continue;
    if (sel != row)
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(sel, j), m(row, j));
    K inv = K(1) / m(row, col);
    for (std::size_t j = col; j < m.cols(); ++j) m(row, j) *= inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == row || is_zero(m(i, col))) continue;
      K f = m(i, col);
      for (std::size_t j = col; j < m.cols(); ++j) m(i, j) -= f * m(row, j);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

template <typename K>
std::size_t rank(Matrix<K> m) {
  return rref(m).size();
}

// A linear subspace of K^ambient_dim in canonical form: the basis rows are
// the nonzero rows of an RREF matrix, so equal subspaces have identical
// representations and operator== is subspace equality.
template <typename K>
class Subspace {
 public:
  Subspace() : ambient_(0) {}
  explicit Subspace(std::size_t ambient_dim) : ambient_(ambient_dim) {}

  // Canonicalizes arbitrary spanning rows.
  static Subspace from_span(std::size_t ambient_dim, std::vector<std::vector<K>> vectors) {
    Matrix<K> m(vectors.size(), ambient_dim);
    for (std::size_t i = 0; i < vectors.size(); ++i) {
      if (vectors[i].size() != ambient_dim) throw std::invalid_argument("span vector has wrong length");
      for (std::size_t j = 0; j < ambient_dim; ++j) m(i, j) = vectors[i][j];
    }
    auto pivots = rref(m);
    Subspace s(ambient_dim);
    for (std::size_t i = 0; i < pivots.size(); ++i) {
      std::vector<K> row(ambient_dim);
      for (std::size_t j = 0; j < ambient_dim; ++j) row[j] = m(i, j);
      s.basis_.push_back(std::move(row));
      s.pivots_.push_back(pivots[i]);
    }
    return s;
  }

  static Subspace full(std::size_t ambient_dim) {
    Subspace s(ambient_dim);
    for (std::size_t i = 0; i < ambient_dim; ++i) {
      std::vector<K> row(ambient_dim, K(0));
      row[i] = K(1);
      s.basis_.push_back(std::move(row));
      s.pivots_.push_back(i);
    }
    return s;
  }

  std::size_t ambient_dim() const { return ambient_; }
  std::size_t dim() const { return basis_.size(); }
  const std::vector<std::vector<K>>& basis() const { return basis_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }

  friend bool operator==(const Subspace& a, const Subspace& b) {
    return a.ambient_ == b.ambient_ && a.basis_ == b.basis_;
  }

  bool contains(const std::vector<K>& v) const {
    if (v.size() != ambient_) throw std::invalid_argument("vector/ambient mismatch");
    std::vector<K> r = v;
    for (std::size_t i = 0; i < basis_.size(); ++i) {
      const K& c = r[pivots_[i]];
      if (is_zero(c)) continue;
      K f = c;
      for (std::size_t j = 0; j < ambient_; ++j) r[j] -= f * basis_[i][j];
    }
    for (const auto& x : r)
      if (!is_zero(x)) return false;
    return true;
  }

  bool contains(const Subspace& other) const {
    if (other.ambient_ != ambient_) throw std::invalid_argument("ambient mismatch");
    for (const auto& v : other.basis_)
      if (!contains(v)) return false;
    return true;
  }

  // Coordinates of v in the basis of this subspace. RREF pivots carry the
  // coefficients directly; validity is checked by reconstruction.
  std::vector<K> coordinates(const std::vector<K>& v) const {
    std::vector<K> coeff(basis_.size());
    for (std::size_t i = 0; i < basis_.size(); ++i) coeff[i] = v[pivots_[i]];
    std::vector<K> rec(ambient_, K(0));
    for (std::size_t i = 0; i < basis_.size(); ++i)
      if (!is_zero(coeff[i]))
        for (std::size_t j = 0; j < ambient_; ++j) rec[j] += coeff[i] * basis_[i][j];
    if (rec != v) throw std::domain_error("vector not in subspace");
    return coeff;
  }

 private:
  std::size_t ambient_;
  std::vector<std::vector<K>> basis_;
  std::vector<std::size_t> pivots_;
};

// kernel(M) = {v : Mv = 0}, canonical.
template <typename K>
Subspace<K> kernel(Matrix<K> m) {
  std::size_t n = m.cols();
  auto pivots = rref(m);
  std::vector<bool> is_pivot(n, false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<std::vector<K>> gens;
  for (std::size_t j = 0; j < n; ++j) {
    if (is_pivot[j]) continue;
    std::vector<K> v(n, K(0));
    v[j] = K(1);
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -m(i, j);
    gens.push_back(std::move(v));
  }
  return Subspace<K>::from_span(n, std::move(gens));
}

// Column space of M, canonical.
template <typename K>
Subspace<K> image(const Matrix<K>& m) {
  std::vector<std::vector<K>> cols;
  for (std::size_t j = 0; j < m.cols(); ++j) {
    std::vector<K> v(m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i) v[i] = m(i, j);
    cols.push_back(std::move(v));
  }
  return Subspace<K>::from_span(m.rows(), std::move(cols));
}

// Rows q with q . s = 0 for every s in S; S is recovered as their kernel.
template <typename K>
Matrix<K> constraint_matrix(const Subspace<K>& s) {
  Matrix<K> b(s.dim(), s.ambient_dim());
  for (std::size_t i = 0; i < s.dim(); ++i)
    for (std::size_t j = 0; j < s.ambient_dim(); ++j) b(i, j) = s.basis()[i][j];
  Subspace<K> ann = kernel(b);
  Matrix<K> q(ann.dim(), s.ambient_dim());
  for (std::size_t i = 0; i < ann.dim(); ++i)
    for (std::size_t j = 0; j < s.ambient_dim(); ++j) q(i, j) = ann.basis()[i][j];
  return q;
}

// preimage(M, S) = {v : Mv in S}.
template <typename K>
Subspace<K> preimage(const Matrix<K>& m, const Subspace<K>& s) {
  if (m.rows() != s.ambient_dim()) throw std::invalid_argument("preimage: dimension mismatch");
  return kernel(constraint_matrix(s) * m);
}

template <typename K>
Subspace<K> intersect(const Subspace<K>& a, const Subspace<K>& b) {
  if (a.ambient_dim() != b.ambient_dim()) throw std::invalid_argument("intersect: ambient mismatch");
  Matrix<K> qa = constraint_matrix(a), qb = constraint_matrix(b);
  Matrix<K> q(qa.rows() + qb.rows(), a.ambient_dim());
  for (std::size_t i = 0; i < qa.rows(); ++i)
    for (std::size_t j = 0; j < a.ambient_dim(); ++j) q(i, j) = qa(i, j);
  for (std::size_t i = 0; i < qb.rows(); ++i)
    for (std::size_t j = 0; j < a.ambient_dim(); ++j) q(qa.rows() + i, j) = qb(i, j);
  return kernel(q);
}

template <typename K>
Subspace<K> subspace_sum(const Subspace<K>& a, const Subspace<K>& b) {
  if (a.ambient_dim() != b.ambient_dim()) throw std::invalid_argument("sum: ambient mismatch");
  std::vector<std::vector<K>> gens = a.basis();
  for (const auto& v : b.basis()) gens.push_back(v);
  return Subspace<K>::from_span(a.ambient_dim(), std::move(gens));
}

// Image of a subspace under a matrix.
template <typename K>
Subspace<K> push_forward(const Matrix<K>& m, const Subspace<K>& s) {
  if (m.cols() != s.ambient_dim()) throw std::invalid_argument("push_forward: dimension mismatch");
  std::vector<std::vector<K>> gens;
  for (const auto& v : s.basis()) gens.push_back(m.apply(v));
  return Subspace<K>::from_span(m.rows(), std::move(gens));
}

// One solution x of Mx = b, or empty if inconsistent.
template <typename K>
std::pair<bool, std::vector<K>> solve(const Matrix<K>& m, const std::vector<K>& b) {
  if (b.size() != m.rows()) throw std::invalid_argument("solve: dimension mismatch");
  Matrix<K> aug(m.rows(), m.cols() + 1);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) aug(i, j) = m(i, j);
    aug(i, m.cols()) = b[i];
  }
  auto pivots = rref(aug);
  std::vector<K> x(m.cols(), K(0));
  for (std::size_t i = 0; i < pivots.size(); ++i) {
    if (pivots[i] == m.cols()) return {false, {}};
    x[pivots[i]] = aug(i, m.cols());
  }
  return {true, std::move(x)};
}

}  // namespace opcal
