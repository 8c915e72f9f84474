#pragma once

#include <algorithm>
#include <cassert>
#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

#include "opcal/matrix.hpp"

namespace opcal {

// Sparse vector: (index, coefficient) pairs, sorted by index, no zeros.
template <typename K>
using SparseVec = std::vector<std::pair<std::size_t, K>>;

template <typename K>
void sparse_normalize(SparseVec<K>& v) {
  std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  SparseVec<K> out;
  out.reserve(v.size());
  for (auto& [i, c] : v) {
    if (!out.empty() && out.back().first == i)
      out.back().second += c;
    else
      out.emplace_back(i, c);
  }
  out.erase(std::remove_if(out.begin(), out.end(), [](const auto& p) { return is_zero(p.second); }),
            out.end());
  v = std::move(out);
}

template <typename K>
void sparse_axpy(SparseVec<K>& acc, const K& c, const SparseVec<K>& v) {
  for (const auto& [i, x] : v) acc.emplace_back(i, c * x);
}

// Column-major sparse matrix. The structure maps of the kernel (tensor
// shuffles, operad compositions, Hom duals) are all built and composed in
// this form; dense elimination only ever sees small slices.
template <typename K>
class SparseMat {
 public:
  SparseMat() : rows_(0) {}
  SparseMat(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols) {}

  static SparseMat identity(std::size_t n) {
    SparseMat m(n, n);
    for (std::size_t j = 0; j < n; ++j) m.add_entry(j, j, K(1));
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  void add_entry(std::size_t i, std::size_t j, const K& c) {
    assert(i < rows_ && j < cols_);
    if (is_zero(c)) return;
    col_store_.resize(cols_);
    col_store_[j].emplace_back(i, c);
    dirty_ = true;
  }

  void set_column(std::size_t j, SparseVec<K> v) {
    col_store_.resize(cols_);
    col_store_[j] = std::move(v);
    sparse_normalize(col_store_[j]);
  }

  const SparseVec<K>& column(std::size_t j) const {
    normalize();
    static const SparseVec<K> empty;
    if (j >= col_store_.size()) return empty;
    return col_store_[j];
  }

  std::size_t nnz() const {
    normalize();
    std::size_t n = 0;
    for (const auto& c : col_store_) n += c.size();
    return n;
  }

  bool is_zero_matrix() const { return nnz() == 0; }

  friend bool operator==(const SparseMat& a, const SparseMat& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) return false;
    a.normalize();
    b.normalize();
    for (std::size_t j = 0; j < a.cols_; ++j)
      if (a.column(j) != b.column(j)) return false;
    return true;
  }

  SparseMat operator*(const SparseMat& o) const {
    assert(cols_ == o.rows_);
    SparseMat r(rows_, o.cols_);
    r.col_store_.resize(o.cols_);
    for (std::size_t j = 0; j < o.cols_; ++j) {
      SparseVec<K> acc;
      for (const auto& [k, c] : o.column(j)) sparse_axpy(acc, c, column(k));
      sparse_normalize(acc);
      r.col_store_[j] = std::move(acc);
    }
    return r;
  }

  SparseMat operator+(const SparseMat& o) const {
    assert(rows_ == o.rows_ && cols_ == o.cols_);
    SparseMat r(rows_, cols_);
    r.col_store_.resize(cols_);
    for (std::size_t j = 0; j < cols_; ++j) {
      SparseVec<K> acc = column(j);
      sparse_axpy(acc, K(1), o.column(j));
      sparse_normalize(acc);
      r.col_store_[j] = std::move(acc);
    }
    return r;
  }

  SparseMat operator-(const SparseMat& o) const { return *this + o.scaled(K(-1)); }

  SparseMat scaled(const K& c) const {
    SparseMat r(rows_, cols_);
    r.col_store_.resize(cols_);
    for (std::size_t j = 0; j < cols_; ++j) {
      SparseVec<K> v = column(j);
      for (auto& [i, x] : v) x *= c;
      r.col_store_[j] = std::move(v);
    }
    if (is_zero(c)) r.col_store_.assign(cols_, {});
    return r;
  }

  SparseVec<K> apply(const SparseVec<K>& v) const {
    SparseVec<K> acc;
    for (const auto& [j, c] : v) sparse_axpy(acc, c, column(j));
    sparse_normalize(acc);
    return acc;
  }

  std::vector<K> apply_dense(const std::vector<K>& v) const {
    assert(v.size() == cols_);
    std::vector<K> r(rows_, K(0));
    for (std::size_t j = 0; j < cols_; ++j) {
      if (is_zero(v[j])) continue;
      for (const auto& [i, c] : column(j)) r[i] += c * v[j];
    }
    return r;
  }

  Matrix<K> to_dense() const {
    Matrix<K> m(rows_, cols_);
    for (std::size_t j = 0; j < cols_; ++j)
      for (const auto& [i, c] : column(j)) m(i, j) = c;
    return m;
  }

  static SparseMat from_dense(const Matrix<K>& m) {
    SparseMat r(m.rows(), m.cols());
    for (std::size_t j = 0; j < m.cols(); ++j)
      for (std::size_t i = 0; i < m.rows(); ++i)
        if (!is_zero(m(i, j))) r.add_entry(i, j, m(i, j));
    return r;
  }

 private:
  void normalize() const {
    if (!dirty_) {
      if (col_store_.size() != cols_) col_store_.resize(cols_);
      return;
    }
    col_store_.resize(cols_);
    for (auto& c : col_store_) sparse_normalize(c);
    dirty_ = false;
  }

  std::size_t rows_, cols_;
  mutable std::vector<SparseVec<K>> col_store_;
  mutable bool dirty_ = false;
};

// Streams short homogeneous constraint rows into a growing RREF; the joint
// kernel is read off once at the end. Width stays small (one degree block),
// so each insertion is cheap no matter how many rows go by.
template <typename K>
class RowAccumulator {
 public:
  explicit RowAccumulator(std::size_t width) : width_(width) {}

  std::size_t width() const { return width_; }
  std::size_t rank() const { return rows_.size(); }

  // Returns true if the row was independent of those already seen.
  bool add_row(std::vector<K> row) {
    assert(row.size() == width_);
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      const K& c = row[pivots_[i]];
      if (is_zero(c)) continue;
      K f = c;
      for (std::size_t j = 0; j < width_; ++j) row[j] -= f * rows_[i][j];
    }
    std::size_t p = 0;
    while (p < width_ && is_zero(row[p])) ++p;
    if (p == width_) return false;
    K inv = K(1) / row[p];
    for (std::size_t j = p; j < width_; ++j) row[j] *= inv;
    // Keep fully reduced: clear this pivot from earlier rows.
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      const K& c = rows_[i][p];
      if (is_zero(c)) continue;
      K f = c;
      for (std::size_t j = 0; j < width_; ++j) rows_[i][j] -= f * row[j];
    }
    std::size_t pos = 0;
    while (pos < pivots_.size() && pivots_[pos] < p) ++pos;
    rows_.insert(rows_.begin() + pos, std::move(row));
    pivots_.insert(pivots_.begin() + pos, p);
    return true;
  }

  bool saturated() const { return rows_.size() == width_; }

  Subspace<K> kernel_space() const {
    Matrix<K> m(rows_.size(), width_);
    for (std::size_t i = 0; i < rows_.size(); ++i)
      for (std::size_t j = 0; j < width_; ++j) m(i, j) = rows_[i][j];
    return kernel(m);
  }

 private:
  std::size_t width_;
  std::vector<std::vector<K>> rows_;
  std::vector<std::size_t> pivots_;
};

}  // namespace opcal
