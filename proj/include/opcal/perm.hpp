#pragma once

#include <algorithm>
#include <cassert>
#include <cstddef>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace opcal {

// Permutation of {0,...,n-1} in one-line notation: img[i] is the image of i.
// Composition is functional: (a*b)(i) = a(b(i)). Acting on a tuple moves the
// item at position i to position sigma(i).
class Permutation {
 public:
  Permutation() = default;
  explicit Permutation(std::size_t n) : img_(n) { std::iota(img_.begin(), img_.end(), 0); }
  explicit Permutation(std::vector<std::size_t> images) : img_(std::move(images)) {
    std::vector<bool> seen(img_.size(), false);
    for (auto v : img_) {
      if (v >= img_.size() || seen[v]) throw std::invalid_argument("not a permutation");
      seen[v] = true;
    }
  }

  static Permutation transposition(std::size_t n, std::size_t i, std::size_t j) {
    Permutation p(n);
    std::swap(p.img_[i], p.img_[j]);
    return p;
  }

  std::size_t size() const { return img_.size(); }
  std::size_t operator()(std::size_t i) const { return img_[i]; }
  const std::vector<std::size_t>& images() const { return img_; }

  bool is_identity() const {
    for (std::size_t i = 0; i < img_.size(); ++i)
      if (img_[i] != i) return false;
    return true;
  }

  friend Permutation operator*(const Permutation& a, const Permutation& b) {
    assert(a.size() == b.size());
    std::vector<std::size_t> img(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) img[i] = a(b(i));
    return Permutation(std::move(img));
  }

  Permutation inverse() const {
    std::vector<std::size_t> img(img_.size());
    for (std::size_t i = 0; i < img_.size(); ++i) img[img_[i]] = i;
    return Permutation(std::move(img));
  }

  friend bool operator==(const Permutation& a, const Permutation& b) { return a.img_ == b.img_; }
  friend bool operator!=(const Permutation& a, const Permutation& b) { return !(a == b); }
  friend bool operator<(const Permutation& a, const Permutation& b) { return a.img_ < b.img_; }

  // Applies sigma to a tuple: result[sigma(i)] = t[i].
  template <typename T>
  std::vector<T> act_on_tuple(const std::vector<T>& t) const {
    assert(t.size() == img_.size());
    std::vector<T> r(t.size());
    for (std::size_t i = 0; i < t.size(); ++i) r[img_[i]] = t[i];
    return r;
  }

  std::string str() const {
    std::string s = "[";
    for (std::size_t i = 0; i < img_.size(); ++i) {
      if (i) s += ' ';
      s += std::to_string(img_[i] + 1);
    }
    return s + "]";
  }

 private:
  std::vector<std::size_t> img_;
};

// All of S_n in lexicographic one-line order; index 0 is the identity.
inline std::vector<Permutation> all_permutations(std::size_t n) {
  std::vector<std::size_t> a(n);
  std::iota(a.begin(), a.end(), 0);
  std::vector<Permutation> out;
  do {
    out.push_back(Permutation(a));
  } while (std::next_permutation(a.begin(), a.end()));
  return out;
}

// Lexicographic rank via the Lehmer code.
inline std::size_t perm_lex_index(const Permutation& p) {
  std::size_t n = p.size(), idx = 0, fact = 1;
  std::vector<std::size_t> code(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (p(j) < p(i)) ++code[i];
  for (std::size_t i = 0; i < n; ++i) {
    idx += code[n - 1 - i] * fact;
    fact *= (i + 1);
  }
  return idx;
}

// T_{k_1,...,k_n}(sigma): the permutation of {0,...,K-1} that carries the
// contiguous blocks of sizes k_i around as sigma carries {0,...,n-1}.
// Blocks of size zero vanish. Computed by permuting labeled block lists.
inline Permutation block_transpose(const Permutation& sigma, const std::vector<std::size_t>& ks) {
  if (ks.size() != sigma.size()) throw std::invalid_argument("block_transpose: arity mismatch");
  std::size_t total = 0;
  for (auto k : ks) total += k;
  // before[p] = (block, offset); after applying sigma, block i sits at slot sigma(i).
  std::vector<std::size_t> offset(ks.size(), 0);
  {
    std::size_t acc = 0;
    for (std::size_t i = 0; i < ks.size(); ++i) {
      offset[i] = acc;
      acc += ks[i];
    }
  }
  Permutation inv = sigma.inverse();
  std::vector<std::size_t> new_start(ks.size(), 0);
  {
    std::size_t acc = 0;
    for (std::size_t slot = 0; slot < ks.size(); ++slot) {
      std::size_t blk = inv(slot);
      new_start[blk] = acc;
      acc += ks[blk];
    }
  }
  std::vector<std::size_t> img(total);
  for (std::size_t blk = 0; blk < ks.size(); ++blk)
    for (std::size_t o = 0; o < ks[blk]; ++o) img[offset[blk] + o] = new_start[blk] + o;
  return Permutation(std::move(img));
}

// tau_1 (+) ... (+) tau_k: acts as tau_s inside the s-th consecutive block.
inline Permutation block_sum(const std::vector<Permutation>& taus) {
  std::size_t total = 0;
  for (const auto& t : taus) total += t.size();
  std::vector<std::size_t> img(total);
  std::size_t base = 0;
  for (const auto& t : taus) {
    for (std::size_t i = 0; i < t.size(); ++i) img[base + i] = base + t(i);
    base += t.size();
  }
  return Permutation(std::move(img));
}

// Writes sigma as a product of adjacent transpositions s_i = (i, i+1):
// sigma = s_{a_0} * s_{a_1} * ... in composition order.
inline std::vector<std::size_t> adjacent_factorization(const Permutation& sigma) {
  std::vector<std::size_t> a(sigma.images());
  std::vector<std::size_t> swaps;
  bool moved = true;
  while (moved) {
    moved = false;
    for (std::size_t i = 0; i + 1 < a.size(); ++i) {
      if (a[i] > a[i + 1]) {
        std::swap(a[i], a[i + 1]);
        swaps.push_back(i);
        moved = true;
      }
    }
  }
  std::reverse(swaps.begin(), swaps.end());
  return swaps;
}

// Koszul sign of permuting homogeneous factors of the given degrees by
// sigma: each inverted pair (i < j, sigma(i) > sigma(j)) contributes
// (-1)^(deg_i * deg_j).
inline int koszul_sign(const Permutation& sigma, const std::vector<long>& degrees) {
  assert(degrees.size() == sigma.size());
  long count = 0;
  for (std::size_t i = 0; i < degrees.size(); ++i)
    for (std::size_t j = i + 1; j < degrees.size(); ++j)
      if (sigma(i) > sigma(j) && (degrees[i] % 2 != 0) && (degrees[j] % 2 != 0)) ++count;
  return (count % 2 == 0) ? 1 : -1;
}

}  // namespace opcal
