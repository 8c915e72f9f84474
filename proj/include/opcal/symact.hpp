#pragma once

#include <cstddef>
#include <map>
#include <stdexcept>
#include <vector>

#include "opcal/graded.hpp"
#include "opcal/perm.hpp"

namespace opcal {

// A graded module with a left S_n action given on the adjacent
// transpositions s_i = (i,i+1). Coxeter relations and compatibility with
// the differential are verified at construction.
template <typename K>
struct SymModule {
  std::size_t n = 1;  // the symmetric group acting
  ModulePtr<K> mod;
  std::vector<GradedMap<K>> gens;  // gens[i] = action of s_i, i < n-1
  bool free_regular = false;       // marks the regular representation R[S_n]

  GradedMap<K> action(const Permutation& sigma) const {
    if (sigma.size() != n) throw std::invalid_argument("action: permutation of wrong degree");
    GradedMap<K> acc = identity_map(mod);
    for (auto i : adjacent_factorization(sigma)) acc = compose(acc, gens[i]);
    return acc;
  }

  void validate() const {
    if (n >= 2 && gens.size() != n - 1) throw std::invalid_argument("wrong generator count");
    for (const auto& g : gens) {
      if (g.degree != 0) throw std::invalid_argument("action generator not degree 0");
      if (!is_chain_map(g)) throw std::invalid_argument("action does not commute with differential");
    }
    SparseMat<K> id = SparseMat<K>::identity(mod->dim());
    for (std::size_t i = 0; i < gens.size(); ++i) {
      if (!((gens[i].mat * gens[i].mat) == id)) throw std::invalid_argument("s_i^2 != 1");
      if (i + 1 < gens.size()) {
        SparseMat<K> aba = gens[i].mat * gens[i + 1].mat * gens[i].mat;
        SparseMat<K> bab = gens[i + 1].mat * gens[i].mat * gens[i + 1].mat;
        if (!(aba == bab)) throw std::invalid_argument("braid relation fails");
      }
      for (std::size_t j = i + 2; j < gens.size(); ++j) {
        if (!((gens[i].mat * gens[j].mat) == (gens[j].mat * gens[i].mat)))
          throw std::invalid_argument("distant generators do not commute");
      }
    }
  }
};

template <typename K>
SymModule<K> make_sym_module(std::size_t n, ModulePtr<K> mod, std::vector<GradedMap<K>> gens,
                             bool free_regular = false) {
  SymModule<K> s{n, std::move(mod), std::move(gens), free_regular};
  s.validate();
  return s;
}

template <typename K>
SymModule<K> trivial_sym_module(std::size_t n, ModulePtr<K> mod) {
  std::vector<GradedMap<K>> gens;
  for (std::size_t i = 0; i + 1 < n; ++i) gens.push_back(identity_map(mod));
  return make_sym_module(n, std::move(mod), std::move(gens));
}

// The group algebra R[S_n] in degree 0, basis in lexicographic one-line
// order, with the left translation action.
template <typename K>
SymModule<K> regular_rep(std::size_t n) {
  auto perms = all_permutations(n);
  std::vector<std::string> labels;
  std::vector<long> degrees(perms.size(), 0);
  for (const auto& p : perms) labels.push_back(p.str());
  auto mod = make_module<K>(std::move(labels), std::move(degrees));
  std::vector<GradedMap<K>> gens;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    Permutation s = Permutation::transposition(n, i, i + 1);
    SparseMat<K> m(mod->dim(), mod->dim());
    for (std::size_t j = 0; j < perms.size(); ++j) m.add_entry(perm_lex_index(s * perms[j]), j, K(1));
    gens.push_back(make_map<K>(mod, mod, 0, std::move(m)));
  }
  return make_sym_module(n, std::move(mod), std::move(gens), true);
}

// sigma acting on C^n: permutes the tensor factors, with the Koszul sign of
// the permutation on the graded entries. A degree-0 chain map, and a group
// homomorphism for functional composition.
template <typename K>
GradedMap<K> act_on_power(const Permutation& sigma, const ModulePtr<K>& c, std::size_t n) {
  if (sigma.size() != n) throw std::invalid_argument("act_on_power: arity mismatch");
  ModulePtr<K> p = power_module(c, n);
  TensorShape sh{std::vector<std::size_t>(n, c->dim())};
  SparseMat<K> m(p->dim(), p->dim());
  for (std::size_t col = 0; col < p->dim(); ++col) {
    auto t = sh.tuple(col);
    std::vector<long> degs(n);
    for (std::size_t i = 0; i < n; ++i) degs[i] = c->degrees[t[i]];
    int sgn = koszul_sign(sigma, degs);
    m.add_entry(sh.flat(sigma.act_on_tuple(t)), col, K(sgn));
  }
  return make_map<K>(p, p, 0, std::move(m));
}

// The action of S_n on C^n as a SymModule.
template <typename K>
SymModule<K> power_sym_module(const ModulePtr<K>& c, std::size_t n) {
  ModulePtr<K> p = power_module(c, n);
  std::vector<GradedMap<K>> gens;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    auto g = act_on_power(Permutation::transposition(n, i, i + 1), c, n);
    gens.push_back(make_map<K>(p, p, 0, g.mat));
  }
  return make_sym_module(n, p, std::move(gens));
}

namespace detail {

inline bool monomial_matrix(const auto& m) {
  for (std::size_t j = 0; j < m.cols(); ++j)
    if (m.column(j).size() > 1) return false;
  return true;
}

}  // namespace detail

// Hom_{S_n}(V, W): the equivariant maps f with f(s v) = s f(v) for the
// generators, as a submodule of Hom(V, W) with the restricted differential.
// When every generator matrix is monomial the orbit structure gives the
// kernel directly; otherwise the equivariance equations are solved per
// degree block.
template <typename K>
SubmodulePair<K> equivariant_hom(const SymModule<K>& v, const SymModule<K>& w) {
  if (v.n != w.n) throw std::invalid_argument("equivariant_hom: group mismatch");
  ModulePtr<K> hom = hom_module(v.mod, w.mod);
  std::size_t nv = v.mod->dim(), nw = w.mod->dim(), nh = nv * nw;

  bool monomial = true;
  for (const auto& g : v.gens) monomial = monomial && detail::monomial_matrix(g.mat);
  for (const auto& g : w.gens) monomial = monomial && detail::monomial_matrix(g.mat);

  std::vector<std::vector<K>> basis_rows;
  if (monomial) {
    // Orbit pairing: condition f o s_V = s_W o f relates (a,b) to
    // (s_V a, s_W b) with the ratio of the two coefficients. Union-find
    // with coefficients; inconsistent orbits are forced to zero.
    // invariant: coordinate[i] = ratio[i] * coordinate[parent[i]]
    std::vector<std::size_t> parent(nh);
    std::vector<K> ratio(nh, K(1));
    std::vector<bool> dead(nh, false);
    for (std::size_t i = 0; i < nh; ++i) parent[i] = i;
    auto find = [&](std::size_t x) {
      std::vector<std::size_t> chain;
      std::size_t root = x;
      while (parent[root] != root) {
        chain.push_back(root);
        root = parent[root];
      }
      // compress: re-anchor every node on the chain directly to the root
      K acc(1);
      for (auto it = chain.rbegin(); it != chain.rend(); ++it) {
        acc = ratio[*it] * acc;
        parent[*it] = root;
        ratio[*it] = acc;
      }
      K r = chain.empty() ? K(1) : ratio[x];
      return std::make_pair(root, r);
    };
    auto unite = [&](std::size_t x, std::size_t y, const K& rxy) {
      // coordinate_x = rxy * coordinate_y
      auto [rx, cx] = find(x);
      auto [ry, cy] = find(y);
      if (rx == ry) {
        // coordinate_x = cx * root, coordinate_x = rxy * cy * root
        if (!(cx == rxy * cy)) dead[rx] = true;
        return;
      }
      // root_x = (rxy * cy / cx) * root_y
      parent[rx] = ry;
      ratio[rx] = rxy * cy / cx;
      if (dead[rx]) dead[ry] = true;
    };
    for (std::size_t gi = 0; gi < v.gens.size(); ++gi) {
      const auto& gv = v.gens[gi].mat;
      const auto& gw = w.gens[gi].mat;
      for (std::size_t a = 0; a < nv; ++a) {
        const auto& cva = gv.column(a);
        if (cva.empty()) {
          // s_V kills a: condition forces s_W f(a) = 0, i.e. f(a)=0 (s_W invertible)
          for (std::size_t b = 0; b < nw; ++b) dead[find(a * nw + b).first] = true;
          continue;
        }
        auto [a2, ca] = cva[0];
        for (std::size_t b = 0; b < nw; ++b) {
          const auto& cwb = gw.column(b);
          if (cwb.empty()) {
            dead[find(a2 * nw + b).first] = true;
            continue;
          }
          auto [b2, cb] = cwb[0];
          // f(s a)=s f(b-part): f_{a2,b2} * ca-side... condition:
          // sum_b f_{a2,b} e ... coefficficient matching gives
          // f_{a2, b2} * ca = cb * f_{a, b}
          unite(a2 * nw + b2, a * nw + b, cb / ca);
        }
      }
    }
    // collect: one basis vector per live root, entries = ratio to root
    std::map<std::size_t, std::vector<std::pair<std::size_t, K>>> orbits;
    for (std::size_t i = 0; i < nh; ++i) {
      auto [root, r] = find(i);
      if (!dead[root]) orbits[root].emplace_back(i, r);
    }
    for (auto& [root, members] : orbits) {
      bool drop = false;
      long deg = hom->degrees[root];
      for (auto& [i, r] : members)
        if (hom->degrees[i] != deg) drop = true;  // cannot happen: actions are degree 0
      if (drop) continue;
      std::vector<K> row(nh, K(0));
      // normalize so the smallest member index carries coefficient 1
      K lead = members.front().second;
      for (auto& [i, r] : members) row[i] = r / lead;
      basis_rows.push_back(std::move(row));
    }
  } else {
    // generic: kernel of the stacked equivariance conditions, one degree
    // block at a time so the basis stays homogeneous
    std::vector<SparseMat<K>> conds;
    for (std::size_t gi = 0; gi < v.gens.size(); ++gi)
      conds.push_back(hom_pre(v.gens[gi], w.mod).mat - hom_post(v.mod, w.gens[gi]).mat);
    for (long deg : degrees_present(*hom)) {
      auto idx = indices_of_degree(*hom, deg);
      std::vector<std::vector<K>> rows;
      for (const auto& cm : conds) {
        std::map<std::size_t, std::size_t> row_ids;
        std::vector<std::vector<K>> block;
        for (std::size_t jj = 0; jj < idx.size(); ++jj)
          for (const auto& [i, c] : cm.column(idx[jj])) {
            auto it = row_ids.find(i);
            if (it == row_ids.end()) {
              it = row_ids.emplace(i, block.size()).first;
              block.emplace_back(idx.size(), K(0));
            }
            block[it->second][jj] = c;
          }
        for (auto& r : block) rows.push_back(std::move(r));
      }
      Matrix<K> m(rows.size(), idx.size());
      for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < idx.size(); ++j) m(i, j) = rows[i][j];
      Subspace<K> ker = kernel(m);
      for (const auto& kv : ker.basis()) {
        std::vector<K> row(nh, K(0));
        for (std::size_t j = 0; j < idx.size(); ++j) row[idx[j]] = kv[j];
        basis_rows.push_back(std::move(row));
      }
    }
  }
  auto s = Subspace<K>::from_span(nh, std::move(basis_rows));
  return submodule_from_subspace(hom, s, "eq");
}

}  // namespace opcal
