#pragma once
// Gluing data for endomorphism complexes over a cover of an affine base by
// distinguished opens.  A cover inverts elements u_1..u_c of R; every chart
// intersection gets the single-inverter presentation R[w]/(w * prod(u) - 1).
// Localizing the resolution along each intersection yields a semicosimplicial
// family of endomorphism algebras; its total cochain complex compares against
// the endomorphisms over R itself through the restriction-to-charts map, with
// every normalization step certified by an explicit homotopy, and flat-family
// data over Artin coefficients descend chartwise through that comparison.

#include <algorithm>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "koszul/cohomology.hpp"
#include "koszul/deformation.hpp"

namespace koszul {

// ---------------------------------------------------------------------------
// localizations of the base ring

struct Localization {
  RingPtr base;
  RingPtr R;               // base for the empty chart set, else base + inverter w
  std::vector<int> alpha;  // strictly increasing chart indices
  RingElement u;           // product of the inverted elements, over the base ring
};

namespace detail {

inline std::string subset_name(const std::vector<int>& a) {
  std::string s = "{";
  for (size_t i = 0; i < a.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(a[i]);
  }
  return s + "}";
}

inline Localization make_localization(const RingPtr& base, const std::vector<RingElement>& us,
                                      std::vector<int> alpha) {
  RingElement u = re_one(base);
  for (int i : alpha) u = u * us[i];
  if (alpha.empty()) return {base, base, std::move(alpha), std::move(u)};

  std::vector<std::string> names = base->names;
  for (const std::string& n : names)
    require(n != "w", "cech: the base ring already uses the inverter name");
  names.push_back("w");

  RingPtr free_ext = PolyRing::make(names, {}, base->order);
  std::vector<RingElement> imgs;
  for (int v = 0; v < base->nvars(); ++v) imgs.push_back(re_var(free_ext, v));
  RingElement rel = re_var(free_ext, base->nvars()) * map_element(u, free_ext, imgs) -
                    re_one(free_ext);

  std::vector<Poly> rels = base->rel_gb;  // monomials zero-pad into the extended ring
  rels.push_back(rel.p);
  RingPtr R = PolyRing::make(std::move(names), std::move(rels), base->order);
  return {base, std::move(R), std::move(alpha), std::move(u)};
}

}  // namespace detail

// ---------------------------------------------------------------------------
// covers by distinguished opens

struct AffineCover {
  RingPtr R;
  std::vector<RingElement> u;
  std::vector<Localization> locs;        // every chart subset, empty set first
  std::map<std::vector<int>, int> index;  // subset -> position in locs

  int charts() const { return static_cast<int>(u.size()); }
  const Localization& at(const std::vector<int>& a) const { return locs[index.at(a)]; }
};

// The cover is global: 1 must lie in (u_1..u_c), certified by the solver.
inline AffineCover affine_cover(RingPtr R, std::vector<RingElement> us) {
  require(!us.empty(), "cech: a cover needs at least one chart");
  const int c = static_cast<int>(us.size());
  for (const RingElement& e : us) {
    assert_same_ring(re_zero(R), e);
    require(!e.is_zero(), "cech: a chart inverts the zero element");
  }

  FreeModuleMatrix M(R, 1, c);
  for (int i = 0; i < c; ++i) M.set(0, i, us[i]);
  require(solve_linear(M, {re_one(R)}).feasible,
          "cech: the cover does not generate the unit ideal");

  AffineCover C{std::move(R), std::move(us), {}, {}};
  std::vector<std::vector<int>> subsets{{}};
  for (int sz = 1; sz <= c; ++sz) {
    std::vector<int> pick(sz);
    for (int i = 0; i < sz; ++i) pick[i] = i;
    while (true) {
      subsets.push_back(pick);
      int i = sz - 1;
      while (i >= 0 && pick[i] == c - sz + i) --i;
      if (i < 0) break;
      ++pick[i];
      for (int j = i + 1; j < sz; ++j) pick[j] = pick[j - 1] + 1;
    }
  }
  for (auto& a : subsets) {
    C.index[a] = static_cast<int>(C.locs.size());
    C.locs.push_back(detail::make_localization(C.R, C.u, a));
  }
  return C;
}

// Coefficients c_i with sum c_i * u_i^N = 1; exists at every power for a
// cover of the whole base, and the solver result is the certificate.
inline std::vector<RingElement> partition_of_unity(const AffineCover& C, int N) {
  FreeModuleMatrix M(C.R, 1, C.charts());
  for (int i = 0; i < C.charts(); ++i) M.set(0, i, re_pow(C.u[i], N));
  LinSolveResult r = solve_linear(M, {re_one(C.R)});
  require(r.feasible, "cech: no partition of unity at this power");
  return r.u;
}

// Restriction along an inclusion of chart subsets.  Base variables map to
// themselves; the source inverter maps to w times the extra factors.
inline RingElement cech_restrict(const AffineCover& C, int from, int to, const RingElement& e) {
  const Localization& F = C.locs[from];
  const Localization& T = C.locs[to];
  require(e.R && e.R->same_as(*F.R), "cech: restriction of an element over the wrong ring");
  require(std::includes(T.alpha.begin(), T.alpha.end(), F.alpha.begin(), F.alpha.end()),
          "cech: restriction goes along inclusions of chart subsets");
  if (from == to) return e;

  const int nb = C.R->nvars();
  std::vector<RingElement> imgs;
  for (int v = 0; v < nb; ++v) imgs.push_back(re_var(T.R, v));
  if (!F.alpha.empty()) {
    RingElement wimg = re_var(T.R, nb);
    for (int i : T.alpha)
      if (!std::binary_search(F.alpha.begin(), F.alpha.end(), i))
        wimg = wimg * cech_restrict(C, 0, to, C.u[i]);
    imgs.push_back(wimg);
  }
  return map_element(e, T.R, imgs);
}

inline std::vector<RingElement> restrict_coords(const AffineCover& C, int from, int to,
                                                const std::vector<RingElement>& v) {
  std::vector<RingElement> out;
  out.reserve(v.size());
  for (const RingElement& e : v) out.push_back(cech_restrict(C, from, to, e));
  return out;
}

inline int inverter_degree(const AffineCover& C, int loc, const RingElement& e) {
  if (C.locs[loc].alpha.empty()) return 0;
  const int wv = C.R->nvars();
  int d = 0;
  for (const Term& t : e.p.t) d = std::max(d, static_cast<int>(t.m[wv]));
  return d;
}

// Preimage of u_i^N * e under the restriction R_sub -> R_sup where sup adds
// the single chart i: each w^k clears against u_i^k, so N must bound the
// inverter degree of e.  The result is certified by restricting it back.
inline RingElement pull_down(const AffineCover& C, int sub, int sup, int i,
                             const RingElement& e, int N) {
  const Localization& S = C.locs[sub];
  {
    std::vector<int> expect = S.alpha;
    expect.insert(std::lower_bound(expect.begin(), expect.end(), i), i);
    require(expect == C.locs[sup].alpha, "cech: clearing step expects adjacent chart subsets");
  }
  const int wv = C.R->nvars();
  RingElement ui = cech_restrict(C, 0, sub, C.u[i]);
  RingElement out = re_zero(S.R);
  for (const Term& t : e.p.t) {
    const int k = t.m[wv];
    require(k <= N, "cech: clearing power too small");
    Monomial m0 = k > 0 ? div(t.m, Monomial::var(wv, k)) : t.m;
    RingElement piece = RingElement(S.R, poly_mono(m0, t.c)) * re_pow(ui, N - k);
    if (!S.alpha.empty()) piece = piece * re_pow(re_var(S.R, wv), k);
    out = out + piece;
  }
  require(cech_restrict(C, sub, sup, out) == re_pow(cech_restrict(C, 0, sup, C.u[i]), N) * e,
          "cech: denominator clearing failed");
  return out;
}

// ---------------------------------------------------------------------------
// the semicosimplicial family of localized endomorphism algebras

struct CechFactor {
  int loc = 0;                // localization index in the cover
  std::vector<int> alpha;
  ComplexPtr K;               // the resolution base-changed to this chart set
  EndoDGLA E;
};

struct CechEnd {
  AffineCover cover;
  ComplexPtr K;
  EndoDGLA global;                      // endomorphisms over the base ring
  std::vector<CechFactor> fac;          // nonempty chart subsets, level by level
  std::vector<std::vector<int>> level;  // level n -> factor ids, |alpha| = n + 1
  std::vector<int> loc_to_fac;          // localization index -> factor id, -1 for the base

  int top() const { return static_cast<int>(level.size()) - 1; }
  int chart_factor(int i) const { return i; }  // size-one subsets come first
  int factor_of(const std::vector<int>& a) const { return loc_to_fac[cover.index.at(a)]; }
  int endrank(int f, int q) const { return fac[f].E.E.H->rank(q); }
};

// Coordinates of an endomorphism over a smaller chart set restricted to a
// larger one; the localized complexes share ranks, so layouts agree.
inline std::vector<RingElement> face_coords(const CechEnd& L, int src, int dst,
                                            const std::vector<RingElement>& v) {
  return restrict_coords(L.cover, L.fac[src].loc, L.fac[dst].loc, v);
}

inline TensorElement restrict_tensor(const CechEnd& L, int src, int dst,
                                     const TensorElement& t) {
  TensorElement out{t.deg, {}};
  for (const auto& [k, v] : t.c) out.c[k] = face_coords(L, src, dst, v);
  return tens_prune(out);
}

inline TensorElement global_tensor_to_chart(const CechEnd& L, int f, const TensorElement& t) {
  TensorElement out{t.deg, {}};
  for (const auto& [k, v] : t.c)
    out.c[k] = restrict_coords(L.cover, 0, L.fac[f].loc, v);
  return tens_prune(out);
}

namespace detail {

// Restriction maps are algebra maps, so two paths around a square of face
// maps agree as soon as they agree on every ring generator.  For a target
// chart set gam at level n+1 the faces drop one position; the square pairs
// dropping positions l and k+1 of gam in either order, l <= k <= n.
inline void check_face_squares(const CechEnd& L) {
  for (int n = 1; n + 1 <= L.top(); ++n) {
    for (int g : L.level[n + 1]) {
      const std::vector<int>& gam = L.fac[g].alpha;  // size n + 2
      for (int l = 0; l <= n; ++l) {
        for (int k = l; k <= n; ++k) {
          std::vector<int> m1 = gam, m2 = gam;
          m1.erase(m1.begin() + l);
          m2.erase(m2.begin() + k + 1);
          std::vector<int> s1 = m1, s2 = m2;
          s1.erase(s1.begin() + k);
          s2.erase(s2.begin() + l);
          require(s1 == s2, "cech: face bookkeeping is inconsistent");
          int fs = L.factor_of(s1), f1 = L.factor_of(m1), f2 = L.factor_of(m2);
          const RingPtr& SR = L.fac[fs].K->R;
          for (int v = 0; v < SR->nvars(); ++v) {
            RingElement e = re_var(SR, v);
            RingElement a = face_coords(L, f1, g, face_coords(L, fs, f1, {e}))[0];
            RingElement b = face_coords(L, f2, g, face_coords(L, fs, f2, {e}))[0];
            require(a == b, "cech: face maps fail the simplicial identities");
          }
        }
      }
    }
  }
}

}  // namespace detail

// Builds every localized endomorphism algebra of the resolution over the
// cover and checks the hypotheses the descent machinery relies on: the face
// maps satisfy the simplicial identities, and no chart set carries
// endomorphism cohomology below degree zero.
inline CechEnd cech_end(AffineCover cover, ComplexPtr K) {
  require(K && K->R->same_as(*cover.R), "cech: the resolution lives over a different base ring");
  CechEnd L;
  L.cover = std::move(cover);
  L.K = std::move(K);
  L.global = endo_dgla(L.K);
  L.loc_to_fac.assign(L.cover.locs.size(), -1);
  L.level.resize(L.cover.charts());

  for (size_t li = 1; li < L.cover.locs.size(); ++li) {
    const Localization& loc = L.cover.locs[li];
    std::vector<int> ranks;
    for (int k = L.K->lo; k <= L.K->hi; ++k) ranks.push_back(L.K->rank(k));
    std::vector<FreeModuleMatrix> d;
    for (int k = L.K->lo; k < L.K->hi; ++k) {
      FreeModuleMatrix m(loc.R, L.K->rank(k + 1), L.K->rank(k));
      L.K->diff(k).for_entries([&](int r, int c, const RingElement& e) {
        m.set(r, c, cech_restrict(L.cover, 0, static_cast<int>(li), e));
      });
      d.push_back(std::move(m));
    }
    CechFactor f;
    f.loc = static_cast<int>(li);
    f.alpha = loc.alpha;
    f.K = make_complex(loc.R, L.K->lo, std::move(ranks), std::move(d));
    f.E = endo_dgla(f.K);
    for (int j = f.E.E.H->lo; j < 0; ++j)
      require(is_exact_at(f.E.E.H, j),
              "cech: endomorphism cohomology below degree zero persists over chart " +
                  detail::subset_name(loc.alpha));
    L.loc_to_fac[li] = static_cast<int>(L.fac.size());
    L.level[static_cast<int>(loc.alpha.size()) - 1].push_back(static_cast<int>(L.fac.size()));
    L.fac.push_back(std::move(f));
  }
  detail::check_face_squares(L);
  return L;
}

// ---------------------------------------------------------------------------
// total cochains

// One coordinate block per chart set; a block at level n and total degree p
// holds an endomorphism of internal degree p - n.  Empty blocks are zero.
struct CechVector {
  int deg = 0;
  std::vector<std::vector<RingElement>> comp;  // by factor id
};

inline CechVector cech_zero(const CechEnd& L, int deg) {
  CechVector z;
  z.deg = deg;
  z.comp.resize(L.fac.size());
  return z;
}

inline bool cech_is_zero(const CechVector& z) {
  for (const auto& v : z.comp)
    for (const RingElement& e : v)
      if (!e.is_zero()) return false;
  return true;
}

inline CechVector cech_add(const CechEnd& L, const CechVector& a, const CechVector& b) {
  require(a.deg == b.deg, "cech: total degree mismatch");
  CechVector out = cech_zero(L, a.deg);
  for (size_t f = 0; f < L.fac.size(); ++f) {
    if (a.comp[f].empty())
      out.comp[f] = b.comp[f];
    else if (b.comp[f].empty())
      out.comp[f] = a.comp[f];
    else
      out.comp[f] = vec_add(a.comp[f], b.comp[f]);
  }
  return out;
}

inline CechVector cech_scale(const CechEnd& L, const CechVector& a, const mpq_class& q) {
  CechVector out = cech_zero(L, a.deg);
  for (size_t f = 0; f < L.fac.size(); ++f) {
    if (a.comp[f].empty()) continue;
    out.comp[f] = vec_scale(a.comp[f], re_const(L.fac[f].K->R, q));
  }
  return out;
}

inline CechVector cech_sub(const CechEnd& L, const CechVector& a, const CechVector& b) {
  return cech_add(L, a, cech_scale(L, b, -1));
}

// Total differential: the internal one with the level-parity sign plus the
// alternating sum of faces.  No face lands in level zero.
inline CechVector cech_D(const CechEnd& L, const CechVector& z) {
  CechVector out = cech_zero(L, z.deg + 1);
  for (size_t fi = 0; fi < L.fac.size(); ++fi) {
    const int f = static_cast<int>(fi);
    const int n = static_cast<int>(L.fac[f].alpha.size()) - 1;
    const int q = z.deg - n;  // incoming internal degree at this level
    const int rk = L.endrank(f, q + 1);
    if (rk == 0) continue;
    const RingPtr& FR = L.fac[f].K->R;
    std::vector<RingElement> acc = vec_zero(FR, rk);
    if (!z.comp[f].empty()) {
      std::vector<RingElement> dv = mat_apply(L.fac[f].E.E.H->diff(q), z.comp[f]);
      if (n % 2) dv = vec_scale(dv, re_const(FR, -1));
      acc = vec_add(acc, dv);
    }
    if (n > 0) {
      for (int k = 0; k <= n; ++k) {
        std::vector<int> src = L.fac[f].alpha;
        src.erase(src.begin() + k);
        const int s = L.factor_of(src);
        if (z.comp[s].empty()) continue;
        std::vector<RingElement> fv = face_coords(L, s, f, z.comp[s]);
        if (k % 2) fv = vec_scale(fv, re_const(FR, -1));
        acc = vec_add(acc, fv);
      }
    }
    out.comp[f] = acc;
  }
  return out;
}

struct TotalCochain {
  int lo = 0, hi = 0;  // total degrees that can carry a nonzero cochain
  bool certified = false;
};

// Certifies D . D = 0 on every coordinate generator of every level.
inline TotalCochain total_cochain(const CechEnd& L) {
  TotalCochain T;
  T.lo = L.global.E.H->lo;
  T.hi = L.global.E.H->hi + L.top();
  for (size_t fi = 0; fi < L.fac.size(); ++fi) {
    const int f = static_cast<int>(fi);
    const int n = static_cast<int>(L.fac[f].alpha.size()) - 1;
    for (int q = L.fac[f].E.E.H->lo; q <= L.fac[f].E.E.H->hi; ++q) {
      const int rk = L.endrank(f, q);
      for (int i = 0; i < rk; ++i) {
        CechVector z = cech_zero(L, q + n);
        z.comp[f] = vec_zero(L.fac[f].K->R, rk);
        z.comp[f][i] = re_one(L.fac[f].K->R);
        require(cech_is_zero(cech_D(L, cech_D(L, z))),
                "cech: the total differential does not square to zero");
      }
    }
  }
  T.certified = true;
  return T;
}

inline std::vector<std::vector<RingElement>> edge_projection(const CechEnd& L,
                                                             const CechVector& z) {
  std::vector<std::vector<RingElement>> out;
  for (int i = 0; i < L.cover.charts(); ++i) out.push_back(z.comp[L.chart_factor(i)]);
  return out;
}

// A global endomorphism cochain restricted to every chart, as a level-zero
// total cochain.  Chain map: restriction commutes with the differentials and
// the two faces into each overlap cancel on it.
inline CechVector edge_inclusion(const CechEnd& L, int q, const std::vector<RingElement>& xi) {
  require(static_cast<int>(xi.size()) == L.global.E.H->rank(q),
          "cech: wrong length for a global cochain");
  CechVector z = cech_zero(L, q);
  for (int i = 0; i < L.cover.charts(); ++i) {
    const int f = L.chart_factor(i);
    z.comp[f] = restrict_coords(L.cover, 0, L.fac[f].loc, xi);
  }
  return z;
}

// ---------------------------------------------------------------------------
// cocycle normalization onto the edge

struct EdgeNormalization {
  std::vector<RingElement> xi;  // global representative over the base ring
  CechVector b;                 // z - edge_inclusion(xi) = D b, re-verified
};

// Clears a total cocycle level by level from the top.  At each stage the top
// level is an alternating-face cocycle, so averaging against a partition of
// unity at a power clearing all inverters produces a one-level-down primitive;
// what remains at level zero agrees on overlaps and is the restriction of a
// global cocycle.  Every stage and the final identity are checked exactly.
inline EdgeNormalization normalize_to_edge(const CechEnd& L, const CechVector& z) {
  require(cech_is_zero(cech_D(L, z)), "cech: normalization expects a cocycle");
  CechVector cur = z;
  CechVector btot = cech_zero(L, z.deg - 1);

  for (int n = L.top(); n >= 1; --n) {
    int N = 0;
    bool any = false;
    for (int g : L.level[n])
      for (const RingElement& e : cur.comp[g]) {
        if (!e.is_zero()) any = true;
        N = std::max(N, inverter_degree(L.cover, L.fac[g].loc, e));
      }
    if (!any) continue;
    std::vector<RingElement> cs = partition_of_unity(L.cover, N);

    CechVector step = cech_zero(L, cur.deg - 1);
    const int q = cur.deg - n;  // internal degree at the level being cleared
    for (int s : L.level[n - 1]) {
      const int rk = L.endrank(s, q);
      if (rk == 0) continue;
      const std::vector<int>& beta = L.fac[s].alpha;
      const RingPtr& SR = L.fac[s].K->R;
      std::vector<RingElement> acc = vec_zero(SR, rk);
      for (int i = 0; i < L.cover.charts(); ++i) {
        if (std::binary_search(beta.begin(), beta.end(), i)) continue;
        std::vector<int> gam = beta;
        gam.insert(std::lower_bound(gam.begin(), gam.end(), i), i);
        const int g = L.factor_of(gam);
        if (cur.comp[g].empty()) continue;
        const int pos =
            static_cast<int>(std::lower_bound(beta.begin(), beta.end(), i) - beta.begin());
        RingElement ci = cech_restrict(L.cover, 0, L.fac[s].loc, cs[i]);
        if (pos % 2) ci = re_const(SR, -1) * ci;
        for (int r = 0; r < rk; ++r) {
          RingElement pulled =
              pull_down(L.cover, L.fac[s].loc, L.fac[g].loc, i, cur.comp[g][r], N);
          acc[r] = acc[r] + ci * pulled;
        }
      }
      step.comp[s] = acc;
    }
    cur = cech_sub(L, cur, cech_D(L, step));
    for (int g : L.level[n])
      require(cur.comp[g].empty() || vec_is_zero(cur.comp[g]),
              "cech: edge normalization stalled");
    btot = cech_add(L, btot, step);
  }

  const int q = cur.deg;
  const int rk = L.global.E.H->rank(q);
  int N = 0;
  for (int i = 0; i < L.cover.charts(); ++i)
    for (const RingElement& e : cur.comp[L.chart_factor(i)])
      N = std::max(N, inverter_degree(L.cover, L.fac[L.chart_factor(i)].loc, e));
  std::vector<RingElement> cs = partition_of_unity(L.cover, N);
  std::vector<RingElement> xi = vec_zero(L.cover.R, rk);
  for (int i = 0; i < L.cover.charts(); ++i) {
    const int f = L.chart_factor(i);
    if (cur.comp[f].empty()) continue;
    for (int r = 0; r < rk; ++r) {
      RingElement pulled = pull_down(L.cover, 0, L.fac[f].loc, i, cur.comp[f][r], N);
      xi[r] = xi[r] + cs[i] * pulled;
    }
  }
  CechVector inc = edge_inclusion(L, q, xi);
  require(cech_is_zero(cech_sub(L, cur, inc)),
          "cech: the edge component is not a global restriction");
  require(vec_is_zero(mat_apply(L.global.E.H->diff(q), xi)),
          "cech: normalized representative is not closed");
  require(cech_is_zero(cech_sub(L, cech_sub(L, z, inc), cech_D(L, btot))),
          "cech: edge normalization certificate failed");
  return {std::move(xi), std::move(btot)};
}

// ---------------------------------------------------------------------------
// chart restriction of cohomology

// A finitely presented module over the base ring, seen over a chart ring.
inline ModulePresentation transport_presentation(const AffineCover& C, int loc,
                                                 const ModulePresentation& P) {
  FreeModuleMatrix rel(C.locs[loc].R, P.ngens, P.relations.cols);
  P.relations.for_entries(
      [&](int r, int c, const RingElement& e) { rel.set(r, c, cech_restrict(C, 0, loc, e)); });
  return make_presentation(C.locs[loc].R, P.ngens, std::move(rel), P.labels);
}

// The chart restriction of the global endomorphism cohomology in degree q,
// as a map of presented modules over the chart ring.
inline InducedMap edge_h_map(const CechEnd& L, int chart, int q,
                             const CohomologyPresentation& global_h) {
  require(global_h.degree == q, "cech: cohomology presentation in the wrong degree");
  const int f = L.chart_factor(chart);
  CohomologyPresentation local_h = cohomology_presentation(L.fac[f].E.E.H, q);
  ModulePresentation src = transport_presentation(L.cover, L.fac[f].loc, global_h.pres);
  FreeModuleMatrix images(L.fac[f].K->R, L.fac[f].E.E.H->rank(q), global_h.pres.ngens);
  global_h.kernel_gens.for_entries([&](int r, int c, const RingElement& e) {
    images.set(r, c, cech_restrict(L.cover, 0, L.fac[f].loc, e));
  });
  return induced_map_from_cocycles(src, local_h, images);
}

// ---------------------------------------------------------------------------
// descent of flat families over Artin coefficients

// Chartwise families glued over overlaps: x_i solves the flatness equation
// over its chart, exp(m_ij) carries the restriction of x_j to that of x_i,
// and the gluing exponentials compose on triple overlaps.
struct DescentDatum {
  std::vector<TensorElement> x;                    // one degree-1 family per chart
  std::map<std::pair<int, int>, TensorElement> m;  // gluing exponents, pairs i < j
};

inline TensorElement datum_glue(const DescentDatum& d, int i, int j) {
  auto it = d.m.find({i, j});
  if (it != d.m.end()) return it->second;
  return tens_zero(0);
}

inline DescentDatum make_descent_datum(const CechEnd& L, const ArtinRing& A,
                                       std::vector<TensorElement> xs,
                                       std::map<std::pair<int, int>, TensorElement> ms) {
  const int c = L.cover.charts();
  require(static_cast<int>(xs.size()) == c, "cech: one family per chart required");
  DescentDatum d{std::move(xs), std::move(ms)};
  for (int i = 0; i < c; ++i) {
    require(d.x[i].deg == 1, "cech: chart families must sit in degree one");
    make_mc(L.fac[L.chart_factor(i)].E.L, A, d.x[i]);
  }
  for (const auto& [ij, g] : d.m) {
    require(0 <= ij.first && ij.first < ij.second && ij.second < c,
            "cech: gluing indexed by an invalid chart pair");
    require(g.deg == 0, "cech: gluing exponents must sit in degree zero");
  }
  for (int i = 0; i < c; ++i)
    for (int j = i + 1; j < c; ++j) {
      const int pf = L.factor_of({i, j});
      const Dgla& PL = L.fac[pf].E.L;
      TensorElement g = datum_glue(d, i, j);
      tens_validate(PL, A, g, "cech gluing");
      TensorElement xj = restrict_tensor(L, L.chart_factor(j), pf, d.x[j]);
      TensorElement xi = restrict_tensor(L, L.chart_factor(i), pf, d.x[i]);
      require(tens_equal(PL, gauge_series(PL, A, g, xj), xi),
              "cech: gluing fails on an overlap");
    }
  for (int i = 0; i < c; ++i)
    for (int j = i + 1; j < c; ++j)
      for (int k = j + 1; k < c; ++k) {
        const int tf = L.factor_of({i, j, k});
        const EndoDGLA& TE = L.fac[tf].E;
        TensorElement gij = restrict_tensor(L, L.factor_of({i, j}), tf, datum_glue(d, i, j));
        TensorElement gjk = restrict_tensor(L, L.factor_of({j, k}), tf, datum_glue(d, j, k));
        TensorElement gik = restrict_tensor(L, L.factor_of({i, k}), tf, datum_glue(d, i, k));
        TensorElement lhs = op_mul1p(TE, A, op_exp(TE, A, gij), op_exp(TE, A, gjk));
        require(tens_equal(TE.L, lhs, op_exp(TE, A, gik)),
                "cech: gluing does not close on a triple overlap");
      }
  return d;
}

// Moves a datum by one exponential per chart: x_i is gauged by a_i and each
// gluing becomes log of e^{a_i} e^{m_ij} e^{-a_j}.  The result is certified
// on the way out, so a twist that fails to glue cannot escape.
inline DescentDatum twist_descent_datum(const CechEnd& L, const ArtinRing& A,
                                        const DescentDatum& d,
                                        const std::vector<TensorElement>& a) {
  const int c = L.cover.charts();
  require(static_cast<int>(a.size()) == c, "cech: one gauge per chart required");
  std::vector<TensorElement> xs;
  for (int i = 0; i < c; ++i)
    xs.push_back(gauge_series(L.fac[L.chart_factor(i)].E.L, A, a[i], d.x[i]));
  std::map<std::pair<int, int>, TensorElement> ms;
  for (int i = 0; i < c; ++i)
    for (int j = i + 1; j < c; ++j) {
      const int pf = L.factor_of({i, j});
      const EndoDGLA& PE = L.fac[pf].E;
      TensorElement ai = restrict_tensor(L, L.chart_factor(i), pf, a[i]);
      TensorElement aj = restrict_tensor(L, L.chart_factor(j), pf, a[j]);
      TensorElement prod =
          op_mul1p(PE, A, op_exp(PE, A, ai), op_exp(PE, A, datum_glue(d, i, j)));
      prod = op_mul1p(PE, A, prod, op_exp(PE, A, tens_scale(aj, re_const(PE.L.R, -1))));
      ms[{i, j}] = op_log1p(PE, A, prod);
    }
  return make_descent_datum(L, A, std::move(xs), std::move(ms));
}

// Checks a family of chart gauges as a morphism of descent data: each gauge
// carries x to x', and on every overlap the operator square against the two
// gluing exponentials commutes.
inline bool verify_descent_equivalence(const CechEnd& L, const ArtinRing& A,
                                       const DescentDatum& d1, const DescentDatum& d2,
                                       const std::vector<TensorElement>& a) {
  const int c = L.cover.charts();
  require(static_cast<int>(a.size()) == c, "cech: one gauge per chart required");
  for (int i = 0; i < c; ++i) {
    const Dgla& CL = L.fac[L.chart_factor(i)].E.L;
    if (!tens_equal(CL, gauge_series(CL, A, a[i], d1.x[i]), d2.x[i])) return false;
  }
  for (int i = 0; i < c; ++i)
    for (int j = i + 1; j < c; ++j) {
      const int pf = L.factor_of({i, j});
      const EndoDGLA& PE = L.fac[pf].E;
      TensorElement ai = restrict_tensor(L, L.chart_factor(i), pf, a[i]);
      TensorElement aj = restrict_tensor(L, L.chart_factor(j), pf, a[j]);
      TensorElement lhs =
          op_mul1p(PE, A, op_exp(PE, A, ai), op_exp(PE, A, datum_glue(d1, i, j)));
      TensorElement rhs =
          op_mul1p(PE, A, op_exp(PE, A, datum_glue(d2, i, j)), op_exp(PE, A, aj));
      if (!tens_equal(PE.L, lhs, rhs)) return false;
    }
  return true;
}

// Grade-1 coefficient of a datum along one first-order direction of the
// coefficient ring, laid out as a total 1-cochain.
inline CechVector first_order_slice(const CechEnd& L, const ArtinRing& A,
                                    const DescentDatum& d, int mu) {
  require(mu >= 0 && mu < A.dim() && A.grade[mu] == 1,
          "cech: slices are taken along first-order directions");
  CechVector z = cech_zero(L, 1);
  for (int i = 0; i < L.cover.charts(); ++i) {
    const int f = L.chart_factor(i);
    z.comp[f] = tens_coeff(L.fac[f].E.L, d.x[i], mu);
  }
  for (int i = 0; i < L.cover.charts(); ++i)
    for (int j = i + 1; j < L.cover.charts(); ++j) {
      const int pf = L.factor_of({i, j});
      z.comp[pf] = tens_coeff(L.fac[pf].E.L, datum_glue(d, i, j), mu);
    }
  return z;
}

struct FirstOrderDecision {
  bool equivalent = true;
  std::map<int, std::vector<RingElement>> classes;  // direction -> global H^1 coordinates
};

// First-order comparison: the difference of grade-1 slices is a total
// cocycle, and the data agree to first order exactly when its normalized
// class dies in the global degree-one cohomology.  Decisive when the maximal
// ideal squares to zero; at deeper coefficients it is the leading test.
inline FirstOrderDecision descent_equivalent_first_order(const CechEnd& L, const ArtinRing& A,
                                                         const DescentDatum& d1,
                                                         const DescentDatum& d2) {
  CohomologyPresentation H1 = cohomology_presentation(L.global.E.H, 1);
  ColumnSolver ks(H1.kernel_gens);
  FirstOrderDecision out;
  for (int mu = 0; mu < A.dim(); ++mu) {
    if (A.grade[mu] != 1) continue;
    CechVector z =
        cech_sub(L, first_order_slice(L, A, d1, mu), first_order_slice(L, A, d2, mu));
    if (cech_is_zero(z)) continue;
    EdgeNormalization nz = normalize_to_edge(L, z);
    LinSolveResult r = ks.solve(nz.xi);
    require(r.feasible, "cech: normalized difference escapes the kernel generators");
    out.classes[mu] = r.u;
    if (!class_is_zero(H1.pres, r.u)) out.equivalent = false;
  }
  return out;
}

struct DescentEnumeration {
  long first_order_dim = 0;        // grade-1 classes over the ground field
  std::vector<DescentDatum> reps;  // certified, with trivial gluing
  std::vector<std::pair<int, int>> obstructed;  // (class index, direction) that refuse to lift
};

// Families over A modulo gauge, enumerated through the edge: every
// first-order class is the restriction of a global one, lifts over the base
// ring order by order, and restricts back to the charts with trivial gluing.
inline DescentEnumeration descent_mc(const CechEnd& L, const ArtinRing& A) {
  DescentEnumeration out;
  const int c = L.cover.charts();
  if (A.dim() == 0) {
    std::vector<TensorElement> xs(c, tens_zero(1));
    out.reps.push_back(make_descent_datum(L, A, std::move(xs), {}));
    return out;
  }
  CohomologyPresentation H1 = cohomology_presentation(L.global.E.H, 1);
  std::vector<std::pair<int, Monomial>> basis = standard_basis(H1.pres);
  std::vector<int> dirs;
  for (int mu = 0; mu < A.dim(); ++mu)
    if (A.grade[mu] == 1) dirs.push_back(mu);
  out.first_order_dim = static_cast<long>(basis.size()) * static_cast<long>(dirs.size());

  for (size_t b = 0; b < basis.size(); ++b) {
    RingElement mono{L.cover.R, poly_mono(basis[b].second)};
    std::vector<RingElement> xi;
    for (int r = 0; r < H1.kernel_gens.rows; ++r)
      xi.push_back(H1.kernel_gens.get(r, basis[b].first) * mono);
    for (int mu : dirs) {
      TensorElement seed{1, {{mu, xi}}};
      MCSolution sol = mc_solve(L.global.L, A, seed);
      if (!sol.lifted) {
        out.obstructed.push_back({static_cast<int>(b), mu});
        continue;
      }
      std::vector<TensorElement> xs;
      for (int i = 0; i < c; ++i)
        xs.push_back(global_tensor_to_chart(L, L.chart_factor(i), sol.x.x));
      out.reps.push_back(make_descent_datum(L, A, std::move(xs), {}));
    }
  }
  return out;
}

struct DescentObstruction {
  bool vanishes = true;     // the class dies in the global degree-two cohomology
  bool edge_killed = true;  // its restriction dies in every chart's cohomology
  std::map<int, std::vector<RingElement>> classes;  // kernel direction -> global H^2 coords
  CohomologyPresentation h2;
};

// Lifting a datum through a small extension fails by chart defects, gluing
// defects on overlaps, and closure defects on triples; per kernel direction
// these assemble into a total 2-cocycle whose normalized class is the
// obstruction.  Every slice is certified closed before it is normalized.
inline DescentObstruction descent_obstruction(const CechEnd& L, const SmallExtension& e,
                                              const DescentDatum& dat) {
  const int c = L.cover.charts();
  const ArtinRing& A = e.A;
  make_descent_datum(L, e.B, dat.x, dat.m);  // the datum must hold over the quotient

  auto lift = [&](const TensorElement& t) {
    TensorElement out{t.deg, {}};
    for (const auto& [k, v] : t.c) out.c[e.section[k]] = v;
    return out;
  };
  std::vector<char> in_kernel(A.dim(), 0);
  for (int k : e.kernel) in_kernel[k] = 1;

  std::map<int, CechVector> slices;
  auto add_slice = [&](int f, const TensorElement& t) {
    for (const auto& [k, v] : t.c) {
      require(in_kernel[k], "cech: obstruction leaks outside the extension kernel");
      auto it = slices.find(k);
      if (it == slices.end()) it = slices.emplace(k, cech_zero(L, 2)).first;
      it->second.comp[f] = v;
    }
  };

  std::vector<TensorElement> xt;
  for (int i = 0; i < c; ++i) xt.push_back(lift(dat.x[i]));
  for (int i = 0; i < c; ++i) {
    const int f = L.chart_factor(i);
    add_slice(f, tens_prune(mc_defect(L.fac[f].E.L, A, xt[i])));
  }
  for (int i = 0; i < c; ++i)
    for (int j = i + 1; j < c; ++j) {
      const int pf = L.factor_of({i, j});
      const Dgla& PL = L.fac[pf].E.L;
      TensorElement g = lift(datum_glue(dat, i, j));
      TensorElement xj = restrict_tensor(L, L.chart_factor(j), pf, xt[j]);
      TensorElement xi = restrict_tensor(L, L.chart_factor(i), pf, xt[i]);
      add_slice(pf, tens_prune(tens_sub(PL, gauge_series(PL, A, g, xj), xi)));
    }
  for (int i = 0; i < c; ++i)
    for (int j = i + 1; j < c; ++j)
      for (int k = j + 1; k < c; ++k) {
        const int tf = L.factor_of({i, j, k});
        const EndoDGLA& TE = L.fac[tf].E;
        TensorElement gij =
            restrict_tensor(L, L.factor_of({i, j}), tf, lift(datum_glue(dat, i, j)));
        TensorElement gjk =
            restrict_tensor(L, L.factor_of({j, k}), tf, lift(datum_glue(dat, j, k)));
        TensorElement gik =
            restrict_tensor(L, L.factor_of({i, k}), tf, lift(datum_glue(dat, i, k)));
        TensorElement prod = op_mul1p(TE, A, op_mul1p(TE, A, op_exp(TE, A, gij),
                                                      op_exp(TE, A, gjk)),
                                      op_exp(TE, A, tens_scale(gik, re_const(TE.L.R, -1))));
        add_slice(tf, tens_prune(prod));
      }

  DescentObstruction out;
  out.h2 = cohomology_presentation(L.global.E.H, 2);
  ColumnSolver ks(out.h2.kernel_gens);
  for (auto& [kappa, z] : slices) {
    if (cech_is_zero(z)) continue;
    require(cech_is_zero(cech_D(L, z)), "cech: obstruction slice is not a cocycle");
    EdgeNormalization nz = normalize_to_edge(L, z);
    LinSolveResult r = ks.solve(nz.xi);
    require(r.feasible, "cech: obstruction escapes the kernel generators");
    out.classes[kappa] = r.u;
    if (!class_is_zero(out.h2.pres, r.u)) out.vanishes = false;
  }
  for (int i = 0; i < c && !out.classes.empty(); ++i) {
    InducedMap im = edge_h_map(L, i, 2, out.h2);
    for (const auto& [kappa, cls] : out.classes) {
      std::vector<RingElement> loc =
          restrict_coords(L.cover, 0, L.fac[L.chart_factor(i)].loc, cls);
      if (!class_is_zero(im.dst, mat_apply(im.A, loc))) out.edge_killed = false;
    }
  }
  return out;
}

}  // namespace koszul
