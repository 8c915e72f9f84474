#pragma once

#include <cassert>
#include <cstddef>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "opcal/matrix.hpp"
#include "opcal/sparse.hpp"

namespace opcal {

// Finite-rank free graded module with a degree -1 differential. Immutable
// after construction; shared by pointer everywhere downstream. Labels are
// optional; big derived modules (hom modules, tensor powers) skip them.
template <typename K>
struct GradedModule {
  std::vector<std::string> labels;  // empty, or one per basis element
  std::vector<long> degrees;
  SparseMat<K> d;  // entry (i,j): coefficient of basis i in d(basis j)

  std::size_t dim() const { return degrees.size(); }

  std::string label(std::size_t i) const {
    return i < labels.size() ? labels[i] : "e" + std::to_string(i);
  }

  // Differential strictly lowers degree by one and squares to zero.
  void validate() const {
    if (!labels.empty() && labels.size() != degrees.size())
      throw std::invalid_argument("labels/degrees mismatch");
    if (d.rows() != dim() || d.cols() != dim()) throw std::invalid_argument("differential shape mismatch");
    for (std::size_t j = 0; j < dim(); ++j)
      for (const auto& [i, c] : d.column(j)) {
        (void)c;
        if (degrees[i] != degrees[j] - 1)
          throw std::invalid_argument("differential entry off degree -1: " + label(j) + " -> " + label(i));
      }
    if (!(d * d).is_zero_matrix()) throw std::invalid_argument("differential does not square to zero");
  }
};

template <typename K>
using ModulePtr = std::shared_ptr<const GradedModule<K>>;

template <typename K>
ModulePtr<K> make_module(std::vector<std::string> labels, std::vector<long> degrees, SparseMat<K> d) {
  auto m = std::make_shared<GradedModule<K>>();
  m->labels = std::move(labels);
  m->degrees = std::move(degrees);
  m->d = std::move(d);
  m->validate();
  return m;
}

template <typename K>
ModulePtr<K> make_module(std::vector<std::string> labels, std::vector<long> degrees) {
  SparseMat<K> d(labels.size(), labels.size());
  return make_module<K>(std::move(labels), std::move(degrees), std::move(d));
}

// The ground field as a module: one generator in degree 0.
template <typename K>
ModulePtr<K> ground_module() {
  return make_module<K>({"1"}, {0});
}

template <typename K>
ModulePtr<K> zero_module() {
  return make_module<K>({}, {});
}

template <typename K>
bool same_shape(const GradedModule<K>& a, const GradedModule<K>& b) {
  return a.degrees == b.degrees;
}

// Graded map of fixed degree between graded modules.
template <typename K>
struct GradedMap {
  ModulePtr<K> src, tgt;
  long degree = 0;
  SparseMat<K> mat;  // tgt.dim() x src.dim()

  void validate() const {
    if (mat.rows() != tgt->dim() || mat.cols() != src->dim())
      throw std::invalid_argument("map shape mismatch");
    for (std::size_t j = 0; j < src->dim(); ++j)
      for (const auto& [i, c] : mat.column(j)) {
        (void)c;
        if (tgt->degrees[i] != src->degrees[j] + degree)
          throw std::invalid_argument("map entry violates declared degree");
      }
  }
};

template <typename K>
GradedMap<K> make_map(ModulePtr<K> src, ModulePtr<K> tgt, long degree, SparseMat<K> mat) {
  GradedMap<K> f{std::move(src), std::move(tgt), degree, std::move(mat)};
  f.validate();
  return f;
}

template <typename K>
GradedMap<K> zero_map(ModulePtr<K> src, ModulePtr<K> tgt, long degree = 0) {
  return {src, tgt, degree, SparseMat<K>(tgt->dim(), src->dim())};
}

template <typename K>
GradedMap<K> identity_map(ModulePtr<K> m) {
  return {m, m, 0, SparseMat<K>::identity(m->dim())};
}

// Same matrix, reinterpreted between structurally equal modules.
template <typename K>
GradedMap<K> retyped(const GradedMap<K>& f, ModulePtr<K> src, ModulePtr<K> tgt) {
  if (src->dim() != f.src->dim() || tgt->dim() != f.tgt->dim())
    throw std::invalid_argument("retyped: dimension mismatch");
  return {std::move(src), std::move(tgt), f.degree, f.mat};
}

// Canonical degree-preserving identification of two same-shaped modules.
template <typename K>
GradedMap<K> identity_reindex(ModulePtr<K> src, ModulePtr<K> tgt) {
  if (!same_shape(*src, *tgt)) throw std::invalid_argument("identity_reindex: shape mismatch");
  return {src, tgt, 0, SparseMat<K>::identity(src->dim())};
}

// Plain composition; map composition itself carries no Koszul sign.
template <typename K>
GradedMap<K> compose(const GradedMap<K>& f, const GradedMap<K>& g) {
  assert(f.src->dim() == g.tgt->dim());
  return {g.src, f.tgt, f.degree + g.degree, f.mat * g.mat};
}

template <typename K>
GradedMap<K> add(const GradedMap<K>& f, const GradedMap<K>& g) {
  assert(f.degree == g.degree && f.src->dim() == g.src->dim() && f.tgt->dim() == g.tgt->dim());
  return {f.src, f.tgt, f.degree, f.mat + g.mat};
}

template <typename K>
GradedMap<K> scale(const GradedMap<K>& f, const K& c) {
  return {f.src, f.tgt, f.degree, f.mat.scaled(c)};
}

template <typename K>
bool maps_equal(const GradedMap<K>& f, const GradedMap<K>& g) {
  return f.degree == g.degree && f.mat == g.mat;
}

// --- tensor products ------------------------------------------------------

// Mixed-radix tuple <-> flat index, first factor most significant.
struct TensorShape {
  std::vector<std::size_t> dims;

  std::size_t total() const {
    std::size_t t = 1;
    for (auto d : dims) t *= d;
    return t;
  }
  std::size_t flat(const std::vector<std::size_t>& tuple) const {
    std::size_t idx = 0;
    for (std::size_t k = 0; k < dims.size(); ++k) idx = idx * dims[k] + tuple[k];
    return idx;
  }
  std::vector<std::size_t> tuple(std::size_t idx) const {
    std::vector<std::size_t> t(dims.size());
    for (std::size_t k = dims.size(); k-- > 0;) {
      t[k] = idx % dims[k];
      idx /= dims[k];
    }
    return t;
  }
};

template <typename K>
TensorShape shape_of(const std::vector<ModulePtr<K>>& factors) {
  TensorShape s;
  for (const auto& f : factors) s.dims.push_back(f->dim());
  return s;
}

// C_1 (x) ... (x) C_k with the Koszul differential
// d(a_1 (x) ... (x) a_k) = sum_j (-1)^(deg a_1 + ... + deg a_{j-1}) ... d a_j ...
// The empty product is the ground field.
template <typename K>
ModulePtr<K> tensor_module(const std::vector<ModulePtr<K>>& factors) {
  if (factors.empty()) return ground_module<K>();
  TensorShape sh = shape_of(factors);
  std::size_t n = sh.total();
  const bool want_labels = n <= 20000;
  std::vector<std::string> labels;
  if (want_labels) labels.resize(n);
  std::vector<long> degrees(n, 0);
  for (std::size_t idx = 0; idx < n; ++idx) {
    auto t = sh.tuple(idx);
    long deg = 0;
    std::string lab;
    for (std::size_t k = 0; k < t.size(); ++k) {
      if (want_labels) {
        if (k) lab += '*';
        lab += factors[k]->label(t[k]);
      }
      deg += factors[k]->degrees[t[k]];
    }
    if (want_labels) labels[idx] = lab;
    degrees[idx] = deg;
  }
  SparseMat<K> d(n, n);
  for (std::size_t idx = 0; idx < n; ++idx) {
    auto t = sh.tuple(idx);
    long prefix = 0;
    for (std::size_t k = 0; k < t.size(); ++k) {
      K sgn = (prefix % 2 == 0) ? K(1) : K(-1);
      for (const auto& [i, c] : factors[k]->d.column(t[k])) {
        auto t2 = t;
        t2[k] = i;
        d.add_entry(sh.flat(t2), idx, sgn * c);
      }
      prefix += factors[k]->degrees[t[k]];
    }
  }
  return make_module<K>(std::move(labels), std::move(degrees), std::move(d));
}

template <typename K>
ModulePtr<K> tensor_module(ModulePtr<K> a, ModulePtr<K> b) {
  return tensor_module<K>(std::vector<ModulePtr<K>>{a, b});
}

template <typename K>
ModulePtr<K> power_module(ModulePtr<K> c, std::size_t n) {
  return tensor_module<K>(std::vector<ModulePtr<K>>(n, c));
}

// f_1 (x) ... (x) f_k on a_1 (x) ... (x) a_k picks up the Koszul sign
// prod_{i<j} (-1)^(deg f_j * deg a_i).
template <typename K>
GradedMap<K> tensor_map(const std::vector<GradedMap<K>>& maps) {
  std::vector<ModulePtr<K>> srcs, tgts;
  long degree = 0;
  for (const auto& f : maps) {
    srcs.push_back(f.src);
    tgts.push_back(f.tgt);
    degree += f.degree;
  }
  ModulePtr<K> src = tensor_module<K>(srcs), tgt = tensor_module<K>(tgts);
  TensorShape ssh = shape_of(srcs), tsh = shape_of(tgts);
  SparseMat<K> mat(tgt->dim(), src->dim());
  for (std::size_t col = 0; col < src->dim(); ++col) {
    auto t = ssh.tuple(col);
    long sign_exp = 0;
    {
      // prefix degree of a_i weighted against deg f_j for j > i
      long suffix_map_deg = 0;
      std::vector<long> mapdeg(maps.size());
      for (std::size_t k = 0; k < maps.size(); ++k) mapdeg[k] = maps[k].degree;
      for (std::size_t i = 0; i < maps.size(); ++i) {
        suffix_map_deg = 0;
        for (std::size_t j = i + 1; j < maps.size(); ++j) suffix_map_deg += mapdeg[j];
        sign_exp += suffix_map_deg * srcs[i]->degrees[t[i]];
      }
    }
    K base = (((sign_exp % 2) + 2) % 2 == 0) ? K(1) : K(-1);
    // expand the product of sparse columns
    std::vector<std::pair<std::vector<std::size_t>, K>> parts{{std::vector<std::size_t>{}, base}};
    for (std::size_t k = 0; k < maps.size(); ++k) {
      std::vector<std::pair<std::vector<std::size_t>, K>> next;
      for (const auto& [rows, coeff] : parts)
        for (const auto& [i, c] : maps[k].mat.column(t[k])) {
          auto r = rows;
          r.push_back(i);
          next.emplace_back(std::move(r), coeff * c);
        }
      parts = std::move(next);
      if (parts.empty()) break;
    }
    for (const auto& [rows, coeff] : parts) mat.add_entry(tsh.flat(rows), col, coeff);
  }
  return {src, tgt, degree, std::move(mat)};
}

template <typename K>
GradedMap<K> tensor_map(const GradedMap<K>& f, const GradedMap<K>& g) {
  return tensor_map<K>(std::vector<GradedMap<K>>{f, g});
}

// --- Hom modules ----------------------------------------------------------

// Hom(A,B): basis e_{a->b} (a-major), degree deg b - deg a, differential
// d(f) = d_B o f - (-1)^deg(f) f o d_A. Degree-zero cycles are the chain maps.
template <typename K>
ModulePtr<K> hom_module(const ModulePtr<K>& a, const ModulePtr<K>& b) {
  std::size_t na = a->dim(), nb = b->dim(), n = na * nb;
  const bool want_labels = n <= 20000;
  std::vector<std::string> labels;
  if (want_labels) labels.resize(n);
  std::vector<long> degrees(n);
  for (std::size_t i = 0; i < na; ++i)
    for (std::size_t j = 0; j < nb; ++j) {
      if (want_labels) labels[i * nb + j] = a->label(i) + "->" + b->label(j);
      degrees[i * nb + j] = b->degrees[j] - a->degrees[i];
    }
  SparseMat<K> d(n, n);
  for (std::size_t i = 0; i < na; ++i)
    for (std::size_t j = 0; j < nb; ++j) {
      std::size_t col = i * nb + j;
      long fdeg = degrees[col];
      for (const auto& [k, c] : b->d.column(j)) d.add_entry(i * nb + k, col, c);
      K sgn = (((fdeg % 2) + 2) % 2 == 0) ? K(-1) : K(1);
      // - (-1)^deg(f) * (f o d_A): (e_{a_i -> b_j} o d_A) = sum_x dA(i,x) e_{a_x -> b_j}
      for (std::size_t x = 0; x < na; ++x)
        for (const auto& [r, c] : a->d.column(x))
          if (r == i) d.add_entry(x * nb + j, col, sgn * c);
    }
  return make_module<K>(std::move(labels), std::move(degrees), std::move(d));
}

template <typename K>
std::size_t hom_index(const ModulePtr<K>& b, std::size_t ia, std::size_t ib) {
  return ia * b->dim() + ib;
}

// Post-composition Hom(A,B) -> Hom(A,C) by g: B -> C (no sign; shifts
// degree by deg g).
template <typename K>
GradedMap<K> hom_post(const ModulePtr<K>& a, const GradedMap<K>& g) {
  ModulePtr<K> src = hom_module(a, g.src), tgt = hom_module(a, g.tgt);
  SparseMat<K> mat(tgt->dim(), src->dim());
  std::size_t nb = g.src->dim(), nc = g.tgt->dim();
  for (std::size_t i = 0; i < a->dim(); ++i)
    for (std::size_t j = 0; j < nb; ++j)
      for (const auto& [k, c] : g.mat.column(j)) mat.add_entry(i * nc + k, i * nb + j, c);
  return {src, tgt, g.degree, std::move(mat)};
}

// Pre-composition Hom(B,C) -> Hom(A,C) by h: A -> B, i.e. Hom(h, 1).
// For f of degree |f| the Koszul rule reads Hom(h,1)(f) = (-1)^(|f||h|) f o h.
template <typename K>
GradedMap<K> hom_pre(const GradedMap<K>& h, const ModulePtr<K>& c) {
  ModulePtr<K> src = hom_module(h.tgt, c), tgt = hom_module(h.src, c);
  SparseMat<K> mat(tgt->dim(), src->dim());
  std::size_t nc = c->dim();
  for (std::size_t ja = 0; ja < h.src->dim(); ++ja)
    for (const auto& [ib, coeff] : h.mat.column(ja))
      for (std::size_t jc = 0; jc < nc; ++jc) {
        long fdeg = c->degrees[jc] - h.tgt->degrees[ib];
        K sgn = ((((fdeg * h.degree) % 2) + 2) % 2 == 0) ? K(1) : K(-1);
        mat.add_entry(ja * nc + jc, ib * nc + jc, sgn * coeff);
      }
  return {src, tgt, h.degree, std::move(mat)};
}

// The interchange Hom(A_1,B_1) (x) ... (x) Hom(A_k,B_k) -> Hom(A_1...A_k, B_1...B_k),
// Phi(f_1...f_k)(a_1...a_k) = prod_{i<j} (-1)^(deg f_j * deg a_i) f_1(a_1)...f_k(a_k).
// An isomorphism for finite-rank free modules.
template <typename K>
GradedMap<K> hom_tensor_interchange(const std::vector<ModulePtr<K>>& as,
                                    const std::vector<ModulePtr<K>>& bs) {
  assert(as.size() == bs.size());
  std::size_t k = as.size();
  std::vector<ModulePtr<K>> homs;
  for (std::size_t i = 0; i < k; ++i) homs.push_back(hom_module(as[i], bs[i]));
  ModulePtr<K> src = tensor_module<K>(homs);
  ModulePtr<K> ta = tensor_module<K>(as), tb = tensor_module<K>(bs);
  ModulePtr<K> tgt = hom_module(ta, tb);
  TensorShape hsh = shape_of(homs), ash = shape_of(as), bsh = shape_of(bs);
  SparseMat<K> mat(tgt->dim(), src->dim());
  for (std::size_t col = 0; col < src->dim(); ++col) {
    auto ht = hsh.tuple(col);
    std::vector<std::size_t> ai(k), bi(k);
    std::vector<long> fdeg(k);
    for (std::size_t i = 0; i < k; ++i) {
      ai[i] = ht[i] / bs[i]->dim();
      bi[i] = ht[i] % bs[i]->dim();
      fdeg[i] = bs[i]->degrees[bi[i]] - as[i]->degrees[ai[i]];
    }
    long se = 0;
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = i + 1; j < k; ++j) se += fdeg[j] * as[i]->degrees[ai[i]];
    K sgn = (((se % 2) + 2) % 2 == 0) ? K(1) : K(-1);
    mat.add_entry(ash.flat(ai) * tb->dim() + bsh.flat(bi), col, sgn);
  }
  return {src, tgt, 0, std::move(mat)};
}

// Hom(A, Hom(B, C)) = Hom(A (x) B, C): identity on the canonical bases.
template <typename K>
GradedMap<K> curry_iso(const ModulePtr<K>& a, const ModulePtr<K>& b, const ModulePtr<K>& c) {
  ModulePtr<K> src = hom_module(a, hom_module(b, c));
  ModulePtr<K> tgt = hom_module(tensor_module(a, b), c);
  assert(src->dim() == tgt->dim());
  return {src, tgt, 0, SparseMat<K>::identity(src->dim())};
}

// Hom(C, Hom(V, W)) -> Hom(V, Hom(C, W)): swap the two arguments with the
// Koszul sign (-1)^(deg c * deg v) on basis elements.
template <typename K>
GradedMap<K> hom_swap_args(const ModulePtr<K>& c, const ModulePtr<K>& v, const ModulePtr<K>& w) {
  ModulePtr<K> src = hom_module(c, hom_module(v, w));
  ModulePtr<K> tgt = hom_module(v, hom_module(c, w));
  SparseMat<K> mat(tgt->dim(), src->dim());
  std::size_t nv = v->dim(), nw = w->dim(), nc = c->dim();
  for (std::size_t ic = 0; ic < nc; ++ic)
    for (std::size_t iv = 0; iv < nv; ++iv)
      for (std::size_t iw = 0; iw < nw; ++iw) {
        long se = c->degrees[ic] * v->degrees[iv];
        K sgn = (((se % 2) + 2) % 2 == 0) ? K(1) : K(-1);
        mat.add_entry(iv * (nc * nw) + ic * nw + iw, ic * (nv * nw) + iv * nw + iw, sgn);
      }
  return {src, tgt, 0, std::move(mat)};
}

// The Hom differential as a map, d(f) = d_B o f - (-1)^deg(f) f o d_A;
// is_chain_map(f) means d(f) = 0.
template <typename K>
GradedMap<K> hom_differential(const GradedMap<K>& f) {
  GradedMap<K> left = compose(make_map<K>(f.tgt, f.tgt, -1, f.tgt->d), f);
  GradedMap<K> right = compose(f, make_map<K>(f.src, f.src, -1, f.src->d));
  K sgn = (((f.degree % 2) + 2) % 2 == 0) ? K(-1) : K(1);
  return add(left, scale(right, sgn));
}

template <typename K>
bool is_chain_map(const GradedMap<K>& f) {
  return hom_differential(f).mat.is_zero_matrix();
}

// --- submodules and truncation ---------------------------------------------

// A coordinate submodule spanned by homogeneous canonical-basis vectors,
// with the induced differential and the inclusion into the ambient module.
template <typename K>
struct SubmodulePair {
  ModulePtr<K> module;
  GradedMap<K> inclusion;
};

template <typename K>
SubmodulePair<K> submodule_from_subspace(const ModulePtr<K>& ambient, const Subspace<K>& s,
                                         const std::string& label_prefix) {
  std::vector<std::string> labels;
  std::vector<long> degrees;
  SparseMat<K> incl(ambient->dim(), s.dim());
  for (std::size_t i = 0; i < s.dim(); ++i) {
    long deg = 0;
    bool found = false;
    for (std::size_t j = 0; j < ambient->dim(); ++j) {
      if (is_zero(s.basis()[i][j])) continue;
      if (!found) {
        deg = ambient->degrees[j];
        found = true;
      } else if (ambient->degrees[j] != deg) {
        throw std::invalid_argument("submodule basis vector not homogeneous");
      }
      incl.add_entry(j, i, s.basis()[i][j]);
    }
    labels.push_back(label_prefix + std::to_string(i));
    degrees.push_back(deg);
  }
  // induced differential: solve incl * x = d(incl * e_i); requires d-closure
  SparseMat<K> dsub(s.dim(), s.dim());
  for (std::size_t i = 0; i < s.dim(); ++i) {
    std::vector<K> v(ambient->dim(), K(0));
    for (const auto& [r, c] : incl.column(i)) v[r] = c;
    std::vector<K> dv = ambient->d.apply_dense(v);
    std::vector<K> coeff = s.coordinates(dv);  // throws if not d-closed
    for (std::size_t j = 0; j < coeff.size(); ++j)
      if (!is_zero(coeff[j])) dsub.add_entry(j, i, coeff[j]);
  }
  auto mod = make_module<K>(std::move(labels), std::move(degrees), std::move(dsub));
  return {mod, make_map<K>(mod, ambient, 0, std::move(incl))};
}

// E^(>t): zero in degrees <= t, ker d in degree t+1, unchanged above.
template <typename K>
SubmodulePair<K> truncate_above(const ModulePtr<K>& e, long t) {
  // kernel of d restricted to degree t+1
  std::vector<std::size_t> deg_t1;
  for (std::size_t j = 0; j < e->dim(); ++j)
    if (e->degrees[j] == t + 1) deg_t1.push_back(j);
  Matrix<K> block(e->dim(), deg_t1.size());
  for (std::size_t jj = 0; jj < deg_t1.size(); ++jj)
    for (const auto& [i, c] : e->d.column(deg_t1[jj])) block(i, jj) = c;
  Subspace<K> ker_t1 = kernel(block);
  std::vector<std::vector<K>> gens;
  for (const auto& kv : ker_t1.basis()) {
    std::vector<K> v(e->dim(), K(0));
    for (std::size_t jj = 0; jj < deg_t1.size(); ++jj) v[deg_t1[jj]] = kv[jj];
    gens.push_back(std::move(v));
  }
  for (std::size_t j = 0; j < e->dim(); ++j)
    if (e->degrees[j] > t + 1) {
      std::vector<K> v(e->dim(), K(0));
      v[j] = K(1);
      gens.push_back(std::move(v));
    }
  auto s = Subspace<K>::from_span(e->dim(), std::move(gens));
  return submodule_from_subspace(e, s, "trunc");
}

// Restriction to a degree window. Basis elements outside [lo,hi] are
// dropped; a differential entry leaving the window is discarded, keeping
// d^2 = 0. dropped counts the omissions for the caller's log.
template <typename K>
struct WindowedModule {
  ModulePtr<K> module;
  std::vector<std::size_t> kept;  // index into the original basis
  std::size_t dropped = 0;
};

template <typename K>
WindowedModule<K> window_restrict(const ModulePtr<K>& e, long lo, long hi) {
  WindowedModule<K> out;
  std::vector<long> inv(e->dim(), -1);
  std::vector<std::string> labels;
  std::vector<long> degrees;
  for (std::size_t j = 0; j < e->dim(); ++j) {
    if (e->degrees[j] < lo || e->degrees[j] > hi) {
      ++out.dropped;
      continue;
    }
    inv[j] = static_cast<long>(out.kept.size());
    out.kept.push_back(j);
    labels.push_back(e->labels[j]);
    degrees.push_back(e->degrees[j]);
  }
  SparseMat<K> d(out.kept.size(), out.kept.size());
  for (std::size_t jj = 0; jj < out.kept.size(); ++jj)
    for (const auto& [i, c] : e->d.column(out.kept[jj]))
      if (inv[i] >= 0) d.add_entry(static_cast<std::size_t>(inv[i]), jj, c);
  out.module = make_module<K>(std::move(labels), std::move(degrees), std::move(d));
  return out;
}

// Degree block utilities.
template <typename K>
std::vector<std::size_t> indices_of_degree(const GradedModule<K>& m, long d) {
  std::vector<std::size_t> out;
  for (std::size_t j = 0; j < m.dim(); ++j)
    if (m.degrees[j] == d) out.push_back(j);
  return out;
}

template <typename K>
std::vector<long> degrees_present(const GradedModule<K>& m) {
  std::map<long, bool> seen;
  for (auto d : m.degrees) seen[d] = true;
  std::vector<long> out;
  for (auto& [d, _] : seen) out.push_back(d);
  return out;
}

}  // namespace opcal
