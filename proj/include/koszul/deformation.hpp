#pragma once
// Maurer-Cartan theory of a tabulated dg-Lie algebra with coefficients in a
// local Artin ring: solutions of dx + [x,x]/2 = 0 in L^1 (x) m_A, the gauge
// action of exp(L^0 (x) m_A), order-by-order lifting along the adic
// filtration, and obstruction classes in H^2 for small extensions.  Every
// positive answer is replayed against the defining identity before it is
// returned, so nothing depends on the solver's internals.

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "koszul/artin.hpp"
#include "koszul/dgla.hpp"

namespace koszul {

// Element of L^deg (x) m_A: finitely many Artin-basis coefficients, each a
// coordinate vector over the generators of the graded piece.
struct TensorElement {
  int deg = 0;
  std::map<int, std::vector<RingElement>> c;
};

inline TensorElement tens_zero(int deg) { return TensorElement{deg, {}}; }

inline std::vector<RingElement> tens_coeff(const Dgla& L, const TensorElement& x, int i) {
  auto it = x.c.find(i);
  if (it != x.c.end()) return it->second;
  return vec_zero(L.R, L.ngens(x.deg));
}

inline TensorElement tens_prune(const TensorElement& x) {
  TensorElement r;
  r.deg = x.deg;
  for (const auto& [i, v] : x.c)
    if (!vec_is_zero(v)) r.c.emplace(i, v);
  return r;
}

inline void tens_validate(const Dgla& L, const ArtinRing& A, const TensorElement& x,
                          const std::string& who) {
  for (const auto& [i, v] : x.c) {
    require(i >= 0 && i < A.dim(), who + ": coefficient index outside the basis");
    require(static_cast<int>(v.size()) == L.ngens(x.deg),
            who + ": coefficient has the wrong length");
    for (const RingElement& e : v) require(e.R && e.R->same_as(*L.R), who + ": wrong ring");
  }
}

inline TensorElement tens_add(const TensorElement& a, const TensorElement& b) {
  require(a.deg == b.deg, "tensor add: degree mismatch");
  TensorElement r = a;
  for (const auto& [i, v] : b.c) {
    auto it = r.c.find(i);
    if (it == r.c.end())
      r.c.emplace(i, v);
    else
      it->second = vec_add(it->second, v);
  }
  return tens_prune(r);
}

inline TensorElement tens_scale(const TensorElement& a, const RingElement& s) {
  TensorElement r;
  r.deg = a.deg;
  for (const auto& [i, v] : a.c) r.c.emplace(i, vec_scale(v, s));
  return tens_prune(r);
}

inline TensorElement tens_sub(const Dgla& L, const TensorElement& a, const TensorElement& b) {
  return tens_add(a, tens_scale(b, re_const(L.R, -1)));
}

inline TensorElement tens_d(const Dgla& L, const TensorElement& x) {
  TensorElement r;
  r.deg = x.deg + 1;
  const FreeModuleMatrix d = L.diff(x.deg);
  if (d.rows == 0) return r;
  for (const auto& [i, v] : x.c) r.c.emplace(i, mat_apply(d, v));
  return tens_prune(r);
}

inline TensorElement tens_bracket(const Dgla& L, const ArtinRing& A, const TensorElement& x,
                                  const TensorElement& y) {
  TensorElement r;
  r.deg = x.deg + y.deg;
  if (L.ngens(r.deg) == 0) return r;
  for (const auto& [i, u] : x.c)
    for (const auto& [j, v] : y.c) {
      if (A.table[i][j].empty()) continue;
      std::vector<RingElement> w = vec_zero(L.R, L.ngens(r.deg));
      for (int a = 0; a < L.ngens(x.deg); ++a)
        if (!u[a].is_zero())
          w = vec_add(w, vec_scale(bracket_gen_vec(L, x.deg, a, y.deg, v), u[a]));
      if (vec_is_zero(w)) continue;
      for (const auto& [k, q] : A.table[i][j]) {
        std::vector<RingElement> qw = vec_scale(w, re_const(L.R, q));
        auto it = r.c.find(k);
        if (it == r.c.end())
          r.c.emplace(k, std::move(qw));
        else
          it->second = vec_add(it->second, qw);
      }
    }
  return tens_prune(r);
}

// Zero and equality are taken in the graded pieces, i.e. modulo their
// presentations; the Artin directions are a free basis, so a tensor vanishes
// exactly when every coefficient does.
inline bool tens_is_zero(const Dgla& L, const TensorElement& x) {
  for (const auto& [i, v] : x.c)
    if (!detail::piece_zero(L, x.deg, v)) return false;
  return true;
}

inline bool tens_equal(const Dgla& L, const TensorElement& a, const TensorElement& b) {
  return tens_is_zero(L, tens_sub(L, a, b));
}

inline TensorElement tens_grade_part(const ArtinRing& A, const TensorElement& x, int k) {
  TensorElement r;
  r.deg = x.deg;
  for (const auto& [i, v] : x.c)
    if (A.grade[i] == k) r.c.emplace(i, v);
  return r;
}

// Transport along a chain map given degreewise by blocks.
inline TensorElement push_tensor(const GradedMap& phi, const TensorElement& x) {
  TensorElement r;
  r.deg = x.deg + phi.k;
  const FreeModuleMatrix blk = phi.block(x.deg);
  for (const auto& [i, v] : x.c) r.c.emplace(i, mat_apply(blk, v));
  return tens_prune(r);
}

inline TensorElement mc_defect(const Dgla& L, const ArtinRing& A, const TensorElement& x) {
  require(x.deg == 1, "maurer-cartan: element must sit in degree 1");
  return tens_add(tens_d(L, x),
                  tens_scale(tens_bracket(L, A, x, x), re_const(L.R, mpq_class(1, 2))));
}

struct MCElement {
  TensorElement x;
};

inline MCElement make_mc(const Dgla& L, const ArtinRing& A, TensorElement x) {
  tens_validate(L, A, x, "maurer-cartan");
  require(x.deg == 1, "maurer-cartan: element must sit in degree 1");
  require(tens_is_zero(L, mc_defect(L, A, x)), "maurer-cartan: dx + [x,x]/2 != 0");
  return MCElement{tens_prune(x)};
}

// exp(a) * x = x + sum_{n>=0} ad_a^n([a,x] - da) / (n+1)!.  The series is
// finite because each bracket with a raises the adic order.
inline TensorElement gauge_series(const Dgla& L, const ArtinRing& A, const TensorElement& a,
                                  const TensorElement& x) {
  require(a.deg == 0, "gauge: exponent must sit in degree 0");
  require(x.deg == 1, "gauge: operand must sit in degree 1");
  tens_validate(L, A, a, "gauge");
  TensorElement cur = tens_sub(L, tens_bracket(L, A, a, x), tens_d(L, a));
  TensorElement res = x;
  mpq_class fact = 1;
  for (int k = 1; !cur.c.empty(); ++k) {
    fact *= k;
    res = tens_add(res, tens_scale(cur, re_const(L.R, mpq_class(1) / fact)));
    cur = tens_bracket(L, A, a, cur);
    require(k <= A.nilpotency + 2, "gauge: series did not terminate");
  }
  return res;
}

inline MCElement gauge_act(const Dgla& L, const ArtinRing& A, const TensorElement& a,
                           const MCElement& x) {
  return make_mc(L, A, gauge_series(L, A, a, x.x));
}

// The graded pieces as a cochain complex; needs literal freeness, which is
// what the cohomology layer speaks about.
inline ComplexPtr dgla_complex(const Dgla& L) {
  std::vector<int> ranks;
  std::vector<FreeModuleMatrix> d;
  for (int k = L.lo; k <= L.hi; ++k) {
    require(L.piece_is_free(k), "dgla complex: graded pieces must be free");
    ranks.push_back(L.ngens(k));
    if (k < L.hi) d.push_back(L.diff(k));
  }
  return make_complex(L.R, L.lo, std::move(ranks), std::move(d));
}

inline bool class_is_zero(const ModulePresentation& pres, const std::vector<RingElement>& u) {
  if (vec_is_zero(u)) return true;
  if (pres.relations.cols == 0) return false;
  return in_column_module(pres.relations, u);
}

namespace detail {

// Shared tail of the lifting and obstruction reports: express each defect
// coefficient as a class in H^2 when the pieces are free, otherwise decide
// vanishing directly as exactness.
struct H2Report {
  bool has_h2 = false;
  CohomologyPresentation h2;
  std::map<int, std::vector<RingElement>> classes;
  bool all_zero = true;
};

inline H2Report h2_classes(const Dgla& L,
                           const std::map<int, std::vector<RingElement>>& defect) {
  H2Report rep;
  bool free_pieces = true;
  for (int k = L.lo; k <= L.hi; ++k)
    if (!L.piece_is_free(k)) free_pieces = false;
  if (free_pieces) {
    rep.has_h2 = true;
    rep.h2 = cohomology_presentation(dgla_complex(L), 2);
    for (const auto& [i, v] : defect) {
      LinSolveResult s = solve_linear(rep.h2.kernel_gens, v);
      require(s.feasible, "obstruction: cocycle escapes the kernel span");
      if (!class_is_zero(rep.h2.pres, s.u)) rep.all_zero = false;
      rep.classes.emplace(i, std::move(s.u));
    }
  } else {
    ColumnSolver s(mat_hcat(L.diff(1), L.relations(2)));
    for (const auto& [i, v] : defect)
      if (!s.solve(v).feasible) rep.all_zero = false;
  }
  return rep;
}

}  // namespace detail

// Order-by-order lifting along the adic filtration.  The seed prescribes the
// first-order part; each later stage corrects the freshly recomputed defect,
// whose stage slice is certified to be a family of cocycles before solving.
struct MCSolution {
  bool lifted = false;
  MCElement x;  // certified when lifted
  int failing_grade = 0;
  std::map<int, std::vector<RingElement>> defect;  // unreachable stage slice
  bool has_h2 = false;
  CohomologyPresentation h2;
  std::map<int, std::vector<RingElement>> obstruction;  // H^2 coordinates
};

inline MCSolution mc_solve(const Dgla& L, const ArtinRing& A, const TensorElement& seed) {
  require(seed.deg == 1, "mc solve: seed must sit in degree 1");
  tens_validate(L, A, seed, "mc solve");
  for (const auto& [i, v] : seed.c) {
    require(A.grade[i] == 1, "mc solve: seed must be a first-order family");
    require(detail::piece_zero(L, 2, mat_apply(L.diff(1), v)),
            "mc solve: seed is not a family of cocycles");
  }
  TensorElement x = tens_prune(seed);
  ColumnSolver stage(mat_hcat(L.diff(1), L.relations(2)));
  const int g1 = L.ngens(1);
  for (int k = 2; k < A.nilpotency; ++k) {
    TensorElement defect = mc_defect(L, A, x);
    std::map<int, std::vector<RingElement>> bad;
    for (const auto& [i, v] : defect.c) {
      if (A.grade[i] < k)
        require(detail::piece_zero(L, 2, v), "mc solve: defect drifted below the current stage");
      if (A.grade[i] != k || detail::piece_zero(L, 2, v)) continue;
      require(detail::piece_zero(L, 3, mat_apply(L.diff(2), v)),
              "mc solve: stage defect is not a cocycle");
      LinSolveResult s = stage.solve(vec_scale(v, re_const(L.R, -1)));
      if (!s.feasible) {
        bad.emplace(i, v);
        continue;
      }
      std::vector<RingElement> u(s.u.begin(), s.u.begin() + g1);
      auto it = x.c.find(i);
      if (it == x.c.end())
        x.c.emplace(i, std::move(u));
      else
        it->second = vec_add(it->second, u);
    }
    if (!bad.empty()) {
      MCSolution out;
      out.failing_grade = k;
      detail::H2Report rep = detail::h2_classes(L, bad);
      out.defect = std::move(bad);
      out.has_h2 = rep.has_h2;
      out.h2 = std::move(rep.h2);
      out.obstruction = std::move(rep.classes);
      return out;
    }
  }
  MCSolution out;
  out.lifted = true;
  out.x = make_mc(L, A, std::move(x));
  return out;
}

// Obstruction of a solution over the target of a small extension against the
// source: lift the coefficients through the monomial section, read off the
// kernel-supported defect, and present its class in H^2.  Since the maximal
// ideal kills the kernel, two lifts differ by an exact term; the recomputation
// with a second lift checks exactly that.
struct ObstructionClass {
  std::map<int, std::vector<RingElement>> defect;  // kernel index -> cocycle
  bool has_h2 = false;
  CohomologyPresentation h2;
  std::map<int, std::vector<RingElement>> classes;
  bool vanishes = true;
};

inline ObstructionClass obstruction_map(const Dgla& L, const SmallExtension& e,
                                        const MCElement& xB) {
  tens_validate(L, e.B, xB.x, "obstruction");
  require(tens_is_zero(L, mc_defect(L, e.B, xB.x)),
          "obstruction: input fails its own equation");

  auto lift = [&](const TensorElement& extra) {
    TensorElement xt;
    xt.deg = 1;
    for (const auto& [j, v] : xB.x.c) xt.c.emplace(e.section[j], v);
    return tens_add(xt, extra);
  };
  auto kernel_defect = [&](const TensorElement& xt) {
    TensorElement defect = mc_defect(L, e.A, xt);
    for (const auto& [i, v] : defect.c)
      require(e.proj[i] < 0 || detail::piece_zero(L, 2, v),
              "obstruction: defect escapes the kernel");
    std::map<int, std::vector<RingElement>> dm;
    for (int k : e.kernel) {
      std::vector<RingElement> v = tens_coeff(L, defect, k);
      require(detail::piece_zero(L, 3, mat_apply(L.diff(2), v)),
              "obstruction: defect is not a family of cocycles");
      dm.emplace(k, std::move(v));
    }
    return dm;
  };

  ObstructionClass out;
  out.defect = kernel_defect(lift(tens_zero(1)));
  detail::H2Report rep = detail::h2_classes(L, out.defect);
  out.has_h2 = rep.has_h2;
  out.h2 = std::move(rep.h2);
  out.classes = std::move(rep.classes);
  out.vanishes = rep.all_zero;

  if (!e.kernel.empty() && L.ngens(1) > 0) {
    TensorElement extra;
    extra.deg = 1;
    for (int k : e.kernel) {
      std::vector<RingElement> v(L.ngens(1), re_one(L.R));
      extra.c.emplace(k, std::move(v));
    }
    std::map<int, std::vector<RingElement>> dm2 = kernel_defect(lift(extra));
    if (out.has_h2) {
      detail::H2Report rep2 = detail::h2_classes(L, dm2);
      for (int k : e.kernel)
        require(class_is_zero(out.h2.pres,
                              vec_sub(out.classes.at(k), rep2.classes.at(k))),
                "obstruction: class depends on the lift");
    }
  }
  return out;
}

// Order-by-order search for a gauge transformation carrying x to y.  Each
// stage is a linear problem in the stage slice of the exponent; a returned
// witness is replayed in full.  A failure at the first stage is conclusive;
// at later stages it reports the unreachable slice for the choices made.
struct GaugeSearch {
  bool found = false;
  TensorElement a;  // certified witness when found
  int failing_grade = 0;
  std::map<int, std::vector<RingElement>> defect;
};

inline GaugeSearch gauge_equivalent_order_by_order(const Dgla& L, const ArtinRing& A,
                                                   const MCElement& x, const MCElement& y) {
  GaugeSearch out;
  out.a = tens_zero(0);
  ColumnSolver stage(mat_hcat(L.diff(0), L.relations(1)));
  const int g0 = L.ngens(0);
  for (int k = 1; k < A.nilpotency; ++k) {
    TensorElement diff = tens_sub(L, gauge_series(L, A, out.a, x.x), y.x);
    for (const auto& [i, v] : diff.c) {
      if (A.grade[i] < k)
        require(detail::piece_zero(L, 1, v), "gauge search: drift below the current stage");
      if (A.grade[i] != k || detail::piece_zero(L, 1, v)) continue;
      LinSolveResult s = stage.solve(v);
      if (!s.feasible) {
        out.failing_grade = k;
        out.defect.emplace(i, v);
        continue;
      }
      TensorElement u;
      u.deg = 0;
      u.c.emplace(i, std::vector<RingElement>(s.u.begin(), s.u.begin() + g0));
      out.a = tens_add(out.a, u);
    }
    if (!out.defect.empty()) return out;
  }
  require(tens_equal(L, gauge_series(L, A, out.a, x.x), y.x),
          "gauge search: witness failed re-verification");
  out.found = true;
  return out;
}

// ---- endomorphism-type refinements -------------------------------------
//
// When L is the endomorphism algebra of a complex, the gauge action of
// exp(a) is conjugation of the twisted differential by the operator exp(a),
// so x and y are equivalent exactly when some operator g = 1 + h with h in
// End^0 (x) m_A intertwines g (d + x) = (d + y) g.  That is one linear
// system, which makes the equivalence decision complete: a solution yields
// the exponent log g, and infeasibility rules every candidate out.

inline TensorElement tens_compose(const EndoDGLA& E, const ArtinRing& A,
                                  const TensorElement& s, const TensorElement& t) {
  const Dgla& L = E.L;
  TensorElement r;
  r.deg = s.deg + t.deg;
  if (L.ngens(r.deg) == 0) return r;
  for (const auto& [i, u] : s.c)
    for (const auto& [j, v] : t.c) {
      if (A.table[i][j].empty()) continue;
      std::vector<RingElement> w =
          E.E.to_vec(gm_compose(E.E.from_vec(s.deg, u), E.E.from_vec(t.deg, v)));
      if (vec_is_zero(w)) continue;
      for (const auto& [k, q] : A.table[i][j]) {
        std::vector<RingElement> qw = vec_scale(w, re_const(L.R, q));
        auto it = r.c.find(k);
        if (it == r.c.end())
          r.c.emplace(k, std::move(qw));
        else
          it->second = vec_add(it->second, qw);
      }
    }
  return tens_prune(r);
}

// exp(a) - 1 as an operator series.
inline TensorElement op_exp(const EndoDGLA& E, const ArtinRing& A, const TensorElement& a) {
  require(a.deg == 0, "exp: exponent must sit in degree 0");
  TensorElement r = tens_zero(0);
  TensorElement cur = a;  // a^k / k!
  for (int k = 1; !cur.c.empty(); ++k) {
    r = tens_add(r, cur);
    cur = tens_scale(tens_compose(E, A, cur, a), re_const(E.L.R, mpq_class(1, k + 1)));
    require(k <= A.nilpotency + 2, "exp: series did not terminate");
  }
  return r;
}

// log(1 + h) for h in End^0 (x) m_A.
inline TensorElement op_log1p(const EndoDGLA& E, const ArtinRing& A, const TensorElement& h) {
  require(h.deg == 0, "log: operand must sit in degree 0");
  TensorElement r = tens_zero(0);
  TensorElement cur = h;  // h^k
  for (int k = 1; !cur.c.empty(); ++k) {
    r = tens_add(r, tens_scale(cur, re_const(E.L.R, mpq_class(k % 2 ? 1 : -1, k))));
    cur = tens_compose(E, A, cur, h);
    require(k <= A.nilpotency + 2, "log: series did not terminate");
  }
  return r;
}

// (1 + g)(1 + h) - 1.
inline TensorElement op_mul1p(const EndoDGLA& E, const ArtinRing& A, const TensorElement& g,
                              const TensorElement& h) {
  return tens_add(tens_add(g, h), tens_compose(E, A, g, h));
}

struct EquivalenceDecision {
  bool equivalent = false;
  TensorElement a;  // certified gauge exponent when equivalent
};

inline EquivalenceDecision are_gauge_equivalent(const EndoDGLA& E, const ArtinRing& A,
                                                const MCElement& x, const MCElement& y) {
  const Dgla& L = E.L;
  const RingPtr& R = L.R;
  tens_validate(L, A, x.x, "gauge");
  tens_validate(L, A, y.x, "gauge");
  require(tens_is_zero(L, mc_defect(L, A, x.x)) && tens_is_zero(L, mc_defect(L, A, y.x)),
          "gauge: inputs fail their own equation");
  const int D = A.dim(), g0 = L.ngens(0), g1 = L.ngens(1);

  // columns of e_c . x_mu and y_mu . e_c over the End^1 coordinates
  auto comp_cols = [&](const TensorElement& t, bool on_right) {
    std::map<int, std::vector<std::vector<RingElement>>> cols;
    for (const auto& [mu, v] : t.c) {
      GradedMap gv = E.E.from_vec(1, v);
      std::vector<std::vector<RingElement>> per;
      per.reserve(g0);
      for (int cc = 0; cc < g0; ++cc) {
        std::vector<RingElement> ec = vec_zero(R, g0);
        ec[cc] = re_one(R);
        GradedMap ge = E.E.from_vec(0, ec);
        per.push_back(E.E.to_vec(on_right ? gm_compose(ge, gv) : gm_compose(gv, ge)));
      }
      cols.emplace(mu, std::move(per));
    }
    return cols;
  };
  auto cx = comp_cols(x.x, true);   // e_c . x_mu
  auto yc = comp_cols(y.x, false);  // y_mu . e_c

  FreeModuleMatrix M(R, D * g1, D * g0);
  std::vector<RingElement> b = vec_zero(R, D * g1);
  const FreeModuleMatrix D0 = L.diff(0);
  for (int kappa = 0; kappa < D; ++kappa) {
    std::vector<RingElement> xv = tens_coeff(L, x.x, kappa);
    std::vector<RingElement> yv = tens_coeff(L, y.x, kappa);
    for (int r = 0; r < g1; ++r) b[kappa * g1 + r] = yv[r] - xv[r];
    for (int cc = 0; cc < g0; ++cc)
      for (int r = 0; r < g1; ++r)
        if (!D0.get(r, cc).is_zero())
          M.add_to(kappa * g1 + r, kappa * g0 + cc, -D0.get(r, cc));
  }
  auto cross = [&](const std::map<int, std::vector<std::vector<RingElement>>>& cols, int sign) {
    for (int nu = 0; nu < D; ++nu)
      for (const auto& [mu, per] : cols)
        for (const auto& [kappa, q] : A.table[nu][mu]) {
          RingElement qq = re_const(R, sign * q);
          for (int cc = 0; cc < g0; ++cc)
            for (int r = 0; r < g1; ++r)
              if (!per[cc][r].is_zero())
                M.add_to(kappa * g1 + r, nu * g0 + cc, qq * per[cc][r]);
        }
  };
  cross(cx, 1);
  cross(yc, -1);

  LinSolveResult s = solve_linear(M, b);
  if (!s.feasible) return {};
  TensorElement h;
  h.deg = 0;
  for (int nu = 0; nu < D; ++nu) {
    std::vector<RingElement> v(s.u.begin() + nu * g0, s.u.begin() + (nu + 1) * g0);
    if (!vec_is_zero(v)) h.c.emplace(nu, std::move(v));
  }
  TensorElement a = op_log1p(E, A, h);
  require(tens_equal(L, gauge_series(L, A, a, x.x), y.x),
          "gauge: intertwiner exponent failed re-verification");
  return {true, std::move(a)};
}

// Membership of a self-equivalence exponent in the irrelevant stabilizer
// I(x) = { exp(du + [x,u]) : u in L^{-1} (x) m_A }, a single linear system.
// The quotient of morphisms by I(x) only behaves when the algebra has no
// cohomology below degree 0, so that is checked first.
struct StabilizerDecision {
  bool irrelevant = false;
  TensorElement u;  // a = du + [x,u], certified
};

inline StabilizerDecision in_irrelevant_stabilizer(const Dgla& L, const ArtinRing& A,
                                                   const MCElement& x, const TensorElement& a) {
  require(a.deg == 0, "stabilizer: exponent must sit in degree 0");
  tens_validate(L, A, a, "stabilizer");
  for (int k = L.lo; k < 0; ++k) {
    require(L.piece_is_free(k - 1) && L.piece_is_free(k),
            "stabilizer: negative-degree pieces must be free");
    if (L.ngens(k) == 0) continue;
    FreeModuleMatrix Z = kernel_matrix(L.diff(k));
    ColumnSolver im(L.diff(k - 1));
    for (int j = 0; j < Z.cols; ++j)
      require(im.solve(mat_col(Z, j)).feasible,
              "stabilizer: cohomology below degree 0 must vanish");
  }
  const RingPtr& R = L.R;
  const int D = A.dim(), gm1 = L.ngens(-1), g0 = L.ngens(0);
  if (gm1 == 0) {
    if (tens_is_zero(L, a)) return {true, tens_zero(-1)};
    return {};
  }
  const FreeModuleMatrix Dm1 = L.diff(-1);
  const FreeModuleMatrix rel0 = L.relations(0);
  FreeModuleMatrix M(R, D * g0, D * gm1 + D * rel0.cols);
  std::vector<RingElement> b = vec_zero(R, D * g0);
  for (int kappa = 0; kappa < D; ++kappa) {
    std::vector<RingElement> av = tens_coeff(L, a, kappa);
    for (int r = 0; r < g0; ++r) b[kappa * g0 + r] = av[r];
    for (int cc = 0; cc < gm1; ++cc)
      for (int r = 0; r < g0; ++r)
        if (!Dm1.get(r, cc).is_zero())
          M.add_to(kappa * g0 + r, kappa * gm1 + cc, Dm1.get(r, cc));
    for (int rr = 0; rr < rel0.cols; ++rr)
      for (int r = 0; r < g0; ++r)
        if (!rel0.get(r, rr).is_zero())
          M.add_to(kappa * g0 + r, D * gm1 + kappa * rel0.cols + rr, rel0.get(r, rr));
  }
  for (int nu = 0; nu < D; ++nu)
    for (const auto& [mu, xv] : x.x.c)
      for (const auto& [kappa, q] : A.table[mu][nu]) {
        RingElement qq = re_const(R, q);
        for (int cc = 0; cc < gm1; ++cc) {
          // [x_mu, e_cc] = [e_cc, x_mu] since the degrees multiply to -1
          std::vector<RingElement> w = bracket_gen_vec(L, -1, cc, 1, xv);
          for (int r = 0; r < g0; ++r)
            if (!w[r].is_zero()) M.add_to(kappa * g0 + r, nu * gm1 + cc, qq * w[r]);
        }
      }
  LinSolveResult s = solve_linear(M, b);
  if (!s.feasible) return {};
  TensorElement u;
  u.deg = -1;
  for (int nu = 0; nu < D; ++nu) {
    std::vector<RingElement> v(s.u.begin() + nu * gm1, s.u.begin() + (nu + 1) * gm1);
    if (!vec_is_zero(v)) u.c.emplace(nu, std::move(v));
  }
  require(tens_equal(L, a, tens_add(tens_d(L, u), tens_bracket(L, A, x.x, u))),
          "stabilizer: witness failed re-verification");
  return {true, std::move(u)};
}

// Two parallel morphisms x -> y agree in the quotient groupoid exactly when
// exp(-a) exp(b) is an irrelevant automorphism of x.
inline StabilizerDecision deligne_equal(const EndoDGLA& E, const ArtinRing& A,
                                        const MCElement& x, const TensorElement& a,
                                        const TensorElement& b) {
  TensorElement prod = op_mul1p(E, A, op_exp(E, A, tens_scale(a, re_const(E.L.R, -1))),
                                op_exp(E, A, b));
  TensorElement c = op_log1p(E, A, prod);
  require(tens_equal(E.L, gauge_series(E.L, A, c, x.x), x.x),
          "deligne: the two exponents are not parallel morphisms");
  return in_irrelevant_stabilizer(E.L, A, x, c);
}

}  // namespace koszul
