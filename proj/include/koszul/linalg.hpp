#pragma once
// Linear algebra over quotient rings, certified.  A system M u = b is solved
// by completing the columns of M, augmented with unit tags, together with the
// ring relations placed in every payload position; the tag coordinates of the
// normal form of b recover a witness u, which is then re-verified by exact
// multiplication.  Infeasible systems return the nonzero normal form of b as
// a certificate.  Syzygies fall out of the same completion: the basis
// elements supported entirely on tags.
//
// When the columns are homogeneous for some assignment of position weights,
// the completion is truncated at the degree of the right-hand side; normal
// forms below the cap agree with the full basis, so verdicts are unaffected.

#include <optional>
#include <vector>

#include "koszul/groebner.hpp"
#include "koszul/matrix.hpp"

namespace koszul {

struct LinSolveResult {
  bool feasible = false;
  std::vector<RingElement> u;        // M u = b over the ring when feasible
  std::vector<RingElement> residue;  // nonzero normal form of b otherwise
};

namespace detail {

inline ModVec matrix_column_vec(const FreeModuleMatrix& M, int j, std::optional<int> tag,
                                const ModuleOrder& o) {
  std::vector<ModTerm> ts;
  for (const auto& [i, v] : M.col[j])
    for (const Term& t : v.p.t) ts.push_back({{i, t.m}, t.c});
  if (tag) ts.push_back({{*tag, Monomial::one()}, 1});
  return modvec_normalize(std::move(ts), o);
}

inline void append_relation_columns(std::vector<ModVec>& out, const RingPtr& R, int rows,
                                    const ModuleOrder& o) {
  for (const Poly& r : R->rel_gb)
    for (int i = 0; i < rows; ++i) {
      std::vector<ModTerm> ts;
      for (const Term& t : r.t) ts.push_back({{i, t.m}, t.c});
      out.push_back(modvec_normalize(std::move(ts), o));
    }
}

inline ModVec payload_vec(const std::vector<RingElement>& b, const ModuleOrder& o) {
  std::vector<ModTerm> ts;
  for (size_t i = 0; i < b.size(); ++i)
    for (const Term& t : b[i].p.t) ts.push_back({{static_cast<int>(i), t.m}, t.c});
  return modvec_normalize(std::move(ts), o);
}

}  // namespace detail

// Reusable solver for many right-hand sides against one matrix.  Pass
// max_rhs_degree to allow degree truncation (only applied when the columns
// turn out to be homogeneous); every rhs fed to solve() must then stay at or
// below that degree.
struct ColumnSolver {
  RingPtr R;
  int rows = 0, cols = 0;
  ModuleOrder ord;
  FreeModuleMatrix M;
  ModuleGB gb;

  explicit ColumnSolver(FreeModuleMatrix m, std::optional<long> max_rhs_degree = std::nullopt)
      : R(m.R), rows(m.rows), cols(m.cols), ord{m.R->order, m.rows}, M(std::move(m)) {
    const int npos = rows + cols;
    std::vector<ModVec> gens;
    gens.reserve(cols);
    for (int j = 0; j < cols; ++j)
      gens.push_back(detail::matrix_column_vec(M, j, rows + j, ord));
    detail::append_relation_columns(gens, R, rows, ord);
    std::vector<long> wt;
    std::optional<long> cap;
    if (max_rhs_degree) {
      if (auto w = detect_weights(gens, npos)) {
        wt = std::move(*w);
        // max_rhs_degree bounds the plain monomial degree of rhs entries;
        // translate to the weighted scale before capping.
        long wmax = 0;
        for (int i = 0; i < rows; ++i) wmax = std::max(wmax, wt[i]);
        cap = *max_rhs_degree + wmax;
      }
    }
    gb = module_gb(gens, ord, npos, std::move(wt), cap, /*interreduce=*/!cap.has_value());
  }

  LinSolveResult solve(const std::vector<RingElement>& b) const {
    require(static_cast<int>(b.size()) == rows, "solve: right-hand side length mismatch");
    for (const RingElement& x : b)
      require(x.R && x.R->same_as(*R), "solve: right-hand side from the wrong ring");
    ModVec bv = detail::payload_vec(b, ord);
    require(!gb.cap || vec_sugar(bv, gb.wt) <= *gb.cap,
            "solve: right-hand side exceeds the degree cap of this solver");
    ModVec nf = gb.reduce(bv);

    std::vector<Poly> pay(rows), tag(cols);
    for (const ModTerm& t : nf.t) {
      if (t.k.pos < rows) pay[t.k.pos].t.push_back({t.k.m, t.c});
      else tag[t.k.pos - rows].t.push_back({t.k.m, t.c});
    }

    LinSolveResult res;
    bool pay_zero = true;
    for (const Poly& p : pay)
      if (!p.is_zero()) pay_zero = false;
    if (!pay_zero) {
      res.feasible = false;
      res.residue.reserve(rows);
      for (Poly& p : pay) res.residue.push_back(RingElement{R, std::move(p)});
      bool nonzero = false;
      for (const RingElement& x : res.residue)
        if (!x.is_zero()) nonzero = true;
      require(nonzero, "solve: residue vanished mod relations after completion");
      return res;
    }
    res.feasible = true;
    res.u.reserve(cols);
    for (Poly& p : tag) res.u.push_back(RingElement{R, neg(p)});
    std::vector<RingElement> check = mat_apply(M, res.u);
    for (int i = 0; i < rows; ++i)
      require(check[i] == b[i], "solve: witness failed exact re-verification");
    return res;
  }
};

inline LinSolveResult solve_linear(const FreeModuleMatrix& M, const std::vector<RingElement>& b) {
  ModuleOrder ord{M.R->order, M.rows};
  long bdeg = 0;
  for (const RingElement& x : b)
    if (!x.is_zero()) bdeg = std::max(bdeg, static_cast<long>(x.p.total_degree()));
  ColumnSolver s(M, bdeg);
  return s.solve(b);
}

inline bool in_column_module(const FreeModuleMatrix& M, const std::vector<RingElement>& b) {
  return solve_linear(M, b).feasible;
}

// Generators of { u : M u = 0 over the ring }, returned as columns.  The
// result is verified by exact multiplication.
inline FreeModuleMatrix syzygies(const FreeModuleMatrix& M) {
  ModuleOrder ord{M.R->order, M.rows};
  const int npos = M.rows + M.cols;
  std::vector<ModVec> gens;
  gens.reserve(M.cols);
  for (int j = 0; j < M.cols; ++j)
    gens.push_back(detail::matrix_column_vec(M, j, M.rows + j, ord));
  detail::append_relation_columns(gens, M.R, M.rows, ord);
  ModuleGB gb = module_gb(gens, ord, npos);

  std::vector<std::vector<RingElement>> out;
  for (const ModVec& g : gb.g) {
    if (g.t.front().k.pos < M.rows) continue;  // has payload, not a syzygy
    std::vector<Poly> tag(M.cols);
    for (const ModTerm& t : g.t) {
      require(t.k.pos >= M.rows, "syzygies: tag-led element with payload terms");
      tag[t.k.pos - M.rows].t.push_back({t.k.m, t.c});
    }
    std::vector<RingElement> u;
    u.reserve(M.cols);
    bool nonzero = false;
    for (Poly& p : tag) {
      u.push_back(RingElement{M.R, std::move(p)});
      if (!u.back().is_zero()) nonzero = true;
    }
    if (nonzero) out.push_back(std::move(u));
  }
  FreeModuleMatrix S = mat_from_cols(M.R, M.cols, out);
  require(mat_mul(M, S).is_zero(), "syzygies: verification M S = 0 failed");
  return S;
}

// Kernel of the module map represented by M, as a matrix whose columns
// generate it.
inline FreeModuleMatrix kernel_matrix(const FreeModuleMatrix& M) { return syzygies(M); }

}  // namespace koszul
