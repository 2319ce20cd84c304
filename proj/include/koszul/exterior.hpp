#pragma once
// Exterior algebra bookkeeping over a free module of rank n.  Basis elements
// of the a-th exterior power are increasing a-subsets of {0..n-1}, listed in
// lexicographic order.  The same coordinates serve for the dual powers; what
// distinguishes a "form" from an "element" is which argument slot of the
// contraction it occupies.
//
// Conventions, applied consistently everywhere:
//   wedge:        e_S ^ e_T = sign . e_{S u T}, sign = parity of the merge
//   contraction:  f -| (v1 ^ ... ^ vb) = sum_i (-1)^(i-1) f(v_i) v1 ^ ... ^ v^_i ^ ... ^ vb
//                 (p1 ^ ... ^ pb) -| w = (p1 ^ ... ^ p_{b-1}) -| (pb -| w)
// so e.g. (e1* ^ e2*) -| (e1 ^ e2) = -1.

#include <vector>

#include "koszul/ring.hpp"

namespace koszul {

inline int binom(int n, int k) {
  if (k < 0 || k > n) return 0;
  long r = 1;
  for (int i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
  return static_cast<int>(r);
}

inline std::vector<std::vector<int>> ext_sets(int n, int a) {
  std::vector<std::vector<int>> out;
  if (a < 0 || a > n) return out;
  std::vector<int> s(a);
  for (int i = 0; i < a; ++i) s[i] = i;
  for (;;) {
    out.push_back(s);
    int i = a - 1;
    while (i >= 0 && s[i] == n - a + i) --i;
    if (i < 0) break;
    ++s[i];
    for (int j = i + 1; j < a; ++j) s[j] = s[j - 1] + 1;
  }
  return out;
}

inline int ext_rank(int n, int a) { return binom(n, a); }

inline int ext_index(int n, const std::vector<int>& s) {
  auto sets = ext_sets(n, static_cast<int>(s.size()));
  for (size_t i = 0; i < sets.size(); ++i)
    if (sets[i] == s) return static_cast<int>(i);
  throw error("ext_index: not an increasing subset in range");
}

// Element of the a-th exterior power (or its dual), coordinates over the
// subset basis.
struct ExtVec {
  RingPtr R;
  int n = 0, a = 0;
  std::vector<RingElement> c;  // length binom(n, a)
};

inline ExtVec ext_zero(const RingPtr& R, int n, int a) {
  ExtVec v{R, n, a, {}};
  v.c.assign(std::max(ext_rank(n, a), 0), re_zero(R));
  return v;
}

inline ExtVec ext_basis_elt(const RingPtr& R, int n, const std::vector<int>& s) {
  ExtVec v = ext_zero(R, n, static_cast<int>(s.size()));
  v.c[ext_index(n, s)] = re_one(R);
  return v;
}

inline ExtVec ext_add(const ExtVec& x, const ExtVec& y) {
  require(x.n == y.n && x.a == y.a, "ext_add: mixed exterior powers");
  ExtVec r = x;
  for (size_t i = 0; i < r.c.size(); ++i) r.c[i] = r.c[i] + y.c[i];
  return r;
}

inline ExtVec ext_scale(const ExtVec& x, const RingElement& q) {
  ExtVec r = x;
  for (auto& v : r.c) v = q * v;
  return r;
}

inline bool ext_is_zero(const ExtVec& x) {
  for (const auto& v : x.c)
    if (!v.is_zero()) return false;
  return true;
}

inline bool ext_equal(const ExtVec& x, const ExtVec& y) {
  if (x.n != y.n || x.a != y.a) return false;
  for (size_t i = 0; i < x.c.size(); ++i)
    if (!(x.c[i] == y.c[i])) return false;
  return true;
}

// sign and target of e_S ^ e_T on disjoint increasing subsets; 0 on overlap
inline int wedge_sign(const std::vector<int>& s, const std::vector<int>& t,
                      std::vector<int>& merged) {
  merged.clear();
  int inversions = 0;
  size_t i = 0, j = 0;
  while (i < s.size() && j < t.size()) {
    if (s[i] == t[j]) return 0;
    if (s[i] < t[j]) {
      merged.push_back(s[i++]);
    } else {
      merged.push_back(t[j++]);
      inversions += static_cast<int>(s.size() - i);
    }
  }
  for (; i < s.size(); ++i) merged.push_back(s[i]);
  for (; j < t.size(); ++j) merged.push_back(t[j]);
  return inversions % 2 == 0 ? 1 : -1;
}

inline ExtVec wedge(const ExtVec& x, const ExtVec& y) {
  require(x.n == y.n, "wedge: mixed ambient ranks");
  require(x.R && y.R && x.R->same_as(*y.R), "wedge: mixed rings");
  ExtVec r = ext_zero(x.R, x.n, x.a + y.a);
  if (x.a + y.a > x.n) return r;
  auto xs = ext_sets(x.n, x.a), ys = ext_sets(y.n, y.a);
  std::vector<int> merged;
  for (size_t i = 0; i < xs.size(); ++i) {
    if (x.c[i].is_zero()) continue;
    for (size_t j = 0; j < ys.size(); ++j) {
      if (y.c[j].is_zero()) continue;
      int sg = wedge_sign(xs[i], ys[j], merged);
      if (sg == 0) continue;
      int idx = ext_index(x.n, merged);
      RingElement term = x.c[i] * y.c[j];
      r.c[idx] = sg > 0 ? r.c[idx] + term : r.c[idx] - term;
    }
  }
  return r;
}

// e_i* -| x for a single dual index i.
inline ExtVec contract_index(int i, const ExtVec& x) {
  ExtVec r = ext_zero(x.R, x.n, x.a - 1);
  if (x.a <= 0) return r;
  auto sets = ext_sets(x.n, x.a);
  for (size_t si = 0; si < sets.size(); ++si) {
    if (x.c[si].is_zero()) continue;
    const auto& s = sets[si];
    for (size_t p = 0; p < s.size(); ++p) {
      if (s[p] != i) continue;
      std::vector<int> rest;
      for (size_t q = 0; q < s.size(); ++q)
        if (q != p) rest.push_back(s[q]);
      int idx = ext_index(x.n, rest);
      r.c[idx] = (p % 2 == 0) ? r.c[idx] + x.c[si] : r.c[idx] - x.c[si];
    }
  }
  return r;
}

// f -| x for a one-form f given by its values on the basis.
inline ExtVec contract_form1(const std::vector<RingElement>& f, const ExtVec& x) {
  require(static_cast<int>(f.size()) == x.n, "contract_form1: arity mismatch");
  ExtVec r = ext_zero(x.R, x.n, x.a - 1);
  for (int i = 0; i < x.n; ++i) {
    if (f[i].is_zero()) continue;
    r = ext_add(r, ext_scale(contract_index(i, x), f[i]));
  }
  return r;
}

// psi -| x for psi in the b-th dual power (last wedge factor acts first).
inline ExtVec contract(const ExtVec& psi, const ExtVec& x) {
  require(psi.n == x.n, "contract: mixed ambient ranks");
  ExtVec r = ext_zero(x.R, x.n, x.a - psi.a);
  if (psi.a > x.a) return r;
  auto psets = ext_sets(psi.n, psi.a);
  for (size_t pi = 0; pi < psets.size(); ++pi) {
    if (psi.c[pi].is_zero()) continue;
    ExtVec cur = x;
    const auto& t = psets[pi];
    for (auto it = t.rbegin(); it != t.rend(); ++it) cur = contract_index(*it, cur);
    r = ext_add(r, ext_scale(cur, psi.c[pi]));
  }
  return r;
}

}  // namespace koszul
