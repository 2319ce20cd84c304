#pragma once
// Finitely presented modules over a quotient ring: a generator count and a
// relation matrix whose columns span everything declared zero.  Modules are
// never canonicalized up to isomorphism; all comparisons go through explicit
// maps and membership tests, which keeps every question decidable.

#include <string>
#include <utility>
#include <vector>

#include "koszul/linalg.hpp"

namespace koszul {

struct ModulePresentation {
  RingPtr R;
  int ngens = 0;
  FreeModuleMatrix relations;       // ngens rows, one column per relation
  std::vector<std::string> labels;  // optional generator names, empty or ngens long
};

inline ModulePresentation make_presentation(RingPtr R, int ngens, FreeModuleMatrix rel,
                                            std::vector<std::string> labels = {}) {
  require(ngens >= 0, "presentation: negative generator count");
  require(rel.rows == ngens, "presentation: relation matrix height != generator count");
  require(rel.R && rel.R->same_as(*R), "presentation: relation matrix over the wrong ring");
  require(labels.empty() || static_cast<int>(labels.size()) == ngens,
          "presentation: label count != generator count");
  return {std::move(R), ngens, std::move(rel), std::move(labels)};
}

inline ModulePresentation zero_module(RingPtr R) {
  FreeModuleMatrix rel(R, 0, 0);
  return make_presentation(std::move(R), 0, std::move(rel));
}

inline ModulePresentation free_presentation(RingPtr R, int ngens) {
  FreeModuleMatrix rel(R, ngens, 0);
  return make_presentation(std::move(R), ngens, std::move(rel));
}

// Free module of rank ngens over R/(ideal): one relation f * e_i per ideal
// generator f and basis vector e_i.
inline ModulePresentation free_over_quotient(const RingPtr& R, int ngens,
                                             const std::vector<RingElement>& ideal) {
  FreeModuleMatrix rel(R, ngens, ngens * static_cast<int>(ideal.size()));
  int j = 0;
  for (const RingElement& f : ideal) {
    assert_same_ring(re_zero(R), f);
    for (int i = 0; i < ngens; ++i) rel.set(i, j++, f);
  }
  return make_presentation(R, ngens, std::move(rel));
}

inline std::vector<RingElement> unit_vector(const RingPtr& R, int n, int i) {
  std::vector<RingElement> e(n, re_zero(R));
  e[i] = re_one(R);
  return e;
}

inline bool is_zero_module(const ModulePresentation& P) {
  ColumnSolver s(P.relations);
  for (int i = 0; i < P.ngens; ++i)
    if (!s.solve(unit_vector(P.R, P.ngens, i)).feasible) return false;
  return true;
}

namespace detail {

// Standard monomials m * e_i of the presentation: m * e_i survives exactly
// when no lead of the combined relation-plus-ring-relation basis at position
// i divides m.  Returns false when the count is infinite, i.e. when some
// live position's lead ideal misses a pure power of some variable.
inline bool standard_monomials(const ModulePresentation& P,
                               std::vector<std::pair<int, Monomial>>& out) {
  const RingPtr& R = P.R;
  ModuleOrder ord{R->order, P.ngens};
  std::vector<ModVec> gens;
  for (int j = 0; j < P.relations.cols; ++j)
    gens.push_back(matrix_column_vec(P.relations, j, std::nullopt, ord));
  append_relation_columns(gens, R, P.ngens, ord);
  ModuleGB gb = module_gb(gens, ord, P.ngens);

  std::vector<std::vector<Monomial>> leads(P.ngens);
  for (const ModVec& g : gb.g) leads[g.lead().k.pos].push_back(g.lead().k.m);

  const int nv = R->nvars();
  for (int i = 0; i < P.ngens; ++i) {
    bool dead = false;
    for (const Monomial& m : leads[i])
      if (m.is_one()) dead = true;
    if (dead) continue;

    // A pure power of each variable must appear among the leads, else the
    // powers of the missing variable give infinitely many standard monomials.
    std::vector<int> box(nv, 0);
    for (int v = 0; v < nv; ++v) {
      int best = -1;
      for (const Monomial& m : leads[i]) {
        if (m.deg != m[v]) continue;  // not a pure power of v
        if (best < 0 || m[v] < best) best = m[v];
      }
      if (best < 0) return false;
      box[v] = best;
    }

    // Walk the finite box of exponent vectors up to the pure-power bounds;
    // the divisibility filter discards the boundary layer.
    std::vector<int> e(nv, 0);
    while (true) {
      Monomial m = Monomial::one();
      for (int v = 0; v < nv; ++v)
        if (e[v] > 0) m = mul(m, Monomial::var(v, e[v]));
      bool standard = true;
      for (const Monomial& l : leads[i])
        if (divides(l, m)) standard = false;
      if (standard) out.emplace_back(i, m);
      int v = 0;
      while (v < nv && e[v] == box[v]) e[v++] = 0;
      if (v == nv) break;
      ++e[v];
    }
  }
  return true;
}

}  // namespace detail

// Dimension of the presented module as a vector space over the ground field,
// or -1 when infinite.
inline long kdim(const ModulePresentation& P) {
  if (P.ngens == 0) return 0;
  std::vector<std::pair<int, Monomial>> b;
  if (!detail::standard_monomials(P, b)) return -1;
  return static_cast<long>(b.size());
}

// Monomial basis (generator index, standard monomial) of a module that is
// finite-dimensional over the ground field.
inline std::vector<std::pair<int, Monomial>> standard_basis(const ModulePresentation& P) {
  std::vector<std::pair<int, Monomial>> b;
  if (P.ngens == 0) return b;
  require(detail::standard_monomials(P, b), "standard basis: module is not finite-dimensional");
  return b;
}

}  // namespace koszul
