#pragma once
// Differential graded Lie algebras in a lowered tabular form: graded pieces
// given by generators (free or presented), a differential table, and a
// bracket table, everything over one quotient ring.  Three species lower to
// this form: endomorphism complexes with the commutator bracket, the exterior
// algebra of dual forms with the zero bracket, and hand-built tables.  On top
// of the common form sit the axiom checker, the contraction morphisms with
// their certificates, and the decision procedure for whether the bracket is
// null-homotopic through a bilinear degree -1 homotopy over the base ring.

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "koszul/cohomology.hpp"

namespace koszul {

struct DglaPiece {
  int ngens = 0;
  FreeModuleMatrix relations;  // ngens rows; zero columns means a free piece
};

struct Dgla {
  RingPtr R;
  int lo = 0, hi = 0;
  std::vector<DglaPiece> pieces;                  // [k - lo]
  std::vector<FreeModuleMatrix> d;                // [k - lo]: piece k -> piece k+1
  std::vector<std::vector<FreeModuleMatrix>> br;  // [j - lo][k - lo]: piece j+k valued

  int ngens(int k) const { return (k < lo || k > hi) ? 0 : pieces[k - lo].ngens; }

  FreeModuleMatrix relations(int k) const {
    if (k < lo || k > hi) return FreeModuleMatrix(R, 0, 0);
    return pieces[k - lo].relations;
  }

  bool piece_is_free(int k) const { return relations(k).cols == 0; }

  FreeModuleMatrix diff(int k) const {
    if (k >= lo && k < hi) return d[k - lo];
    return FreeModuleMatrix(R, ngens(k + 1), ngens(k));
  }

  // columns indexed by (a, b) -> a * ngens(k) + b
  FreeModuleMatrix bracket_block(int j, int k) const {
    if (j >= lo && j <= hi && k >= lo && k <= hi) return br[j - lo][k - lo];
    return FreeModuleMatrix(R, ngens(j + k), ngens(j) * ngens(k));
  }

  std::vector<RingElement> bracket(int j, int a, int k, int b) const {
    return mat_col(bracket_block(j, k), a * ngens(k) + b);
  }
};

namespace detail {

// zero test in a presented piece: literal zero when free (entries are already
// in normal form mod the ring relations), membership otherwise
inline bool piece_zero(const Dgla& L, int m, const std::vector<RingElement>& v) {
  if (vec_is_zero(v)) return true;
  if (L.relations(m).cols == 0) return false;
  return in_column_module(L.relations(m), v);
}

}  // namespace detail

// [e_a, v] for v a coordinate vector in piece k
inline std::vector<RingElement> bracket_gen_vec(const Dgla& L, int j, int a, int k,
                                                const std::vector<RingElement>& v) {
  std::vector<RingElement> r = vec_zero(L.R, L.ngens(j + k));
  for (int b = 0; b < L.ngens(k); ++b)
    if (!v[b].is_zero()) r = vec_add(r, vec_scale(L.bracket(j, a, k, b), v[b]));
  return r;
}

inline Dgla make_dgla(RingPtr R, int lo, std::vector<DglaPiece> pieces,
                      std::vector<FreeModuleMatrix> d,
                      std::vector<std::vector<FreeModuleMatrix>> br) {
  require(!pieces.empty(), "dgla: no graded pieces");
  require(d.size() + 1 == pieces.size(), "dgla: need one differential per adjacent pair");
  require(br.size() == pieces.size(), "dgla: bracket grid has wrong height");
  Dgla L;
  L.R = std::move(R);
  L.lo = lo;
  L.hi = lo + static_cast<int>(pieces.size()) - 1;
  L.pieces = std::move(pieces);
  L.d = std::move(d);
  L.br = std::move(br);

  for (int k = L.lo; k <= L.hi; ++k) {
    const DglaPiece& p = L.pieces[k - L.lo];
    require(p.ngens >= 0, "dgla: negative generator count");
    require(p.relations.rows == p.ngens, "dgla: relation matrix height mismatch");
    require(p.relations.R && p.relations.R->same_as(*L.R), "dgla: relations over the wrong ring");
  }
  for (int k = L.lo; k < L.hi; ++k) {
    const FreeModuleMatrix& m = L.d[k - L.lo];
    require(m.rows == L.ngens(k + 1) && m.cols == L.ngens(k),
            "dgla: differential shape mismatch at degree " + std::to_string(k));
    require(m.R && m.R->same_as(*L.R), "dgla: differential over the wrong ring");
  }
  for (int j = L.lo; j <= L.hi; ++j)
    for (int k = L.lo; k <= L.hi; ++k) {
      const FreeModuleMatrix& m = L.br[j - L.lo][k - L.lo];
      require(m.rows == L.ngens(j + k) && m.cols == L.ngens(j) * L.ngens(k),
              "dgla: bracket block shape mismatch at degrees " + std::to_string(j) + "," +
                  std::to_string(k));
      require(m.R && m.R->same_as(*L.R), "dgla: bracket block over the wrong ring");
    }

  // the differential respects relations and squares to zero modulo them
  for (int k = L.lo; k < L.hi; ++k) {
    FreeModuleMatrix dr = mat_mul(L.diff(k), L.relations(k));
    for (int j = 0; j < dr.cols; ++j)
      require(detail::piece_zero(L, k + 1, mat_col(dr, j)),
              "dgla: differential does not respect the relations at degree " + std::to_string(k));
    FreeModuleMatrix dd = mat_mul(L.diff(k + 1), L.diff(k));
    for (int j = 0; j < dd.cols; ++j)
      require(detail::piece_zero(L, k + 2, mat_col(dd, j)),
              "dgla: d . d != 0 at degree " + std::to_string(k));
  }

  // the bracket respects relations in either slot
  for (int j = L.lo; j <= L.hi; ++j)
    for (int k = L.lo; k <= L.hi; ++k) {
      if (L.ngens(j + k) == 0) continue;
      const FreeModuleMatrix relj = L.relations(j);
      for (int r = 0; r < relj.cols; ++r) {
        std::vector<RingElement> rho = mat_col(relj, r);
        for (int b = 0; b < L.ngens(k); ++b) {
          std::vector<RingElement> v = vec_zero(L.R, L.ngens(j + k));
          for (int a = 0; a < L.ngens(j); ++a)
            if (!rho[a].is_zero()) v = vec_add(v, vec_scale(L.bracket(j, a, k, b), rho[a]));
          require(detail::piece_zero(L, j + k, v),
                  "dgla: bracket does not respect the relations of piece " + std::to_string(j));
        }
      }
      const FreeModuleMatrix relk = L.relations(k);
      for (int r = 0; r < relk.cols; ++r) {
        std::vector<RingElement> rho = mat_col(relk, r);
        for (int a = 0; a < L.ngens(j); ++a) {
          std::vector<RingElement> v = bracket_gen_vec(L, j, a, k, rho);
          require(detail::piece_zero(L, j + k, v),
                  "dgla: bracket does not respect the relations of piece " + std::to_string(k));
        }
      }
    }
  return L;
}

// ---------------------------------------------------------------------------
// axiom checking

struct AxiomFailure {
  std::string axiom;
  int j = 0, a = 0;   // first generator (degree, index)
  int k = 0, b = 0;   // second, when applicable
  int l = 0, c = 0;   // third, when applicable
};

struct AxiomReport {
  bool ok = true;
  std::vector<AxiomFailure> failures;
};

inline AxiomReport check_axioms(const Dgla& L, std::size_t max_failures = 8) {
  AxiomReport rep;
  auto fail = [&](AxiomFailure f) {
    rep.ok = false;
    if (rep.failures.size() < max_failures) rep.failures.push_back(std::move(f));
  };
  const int sgn_tab[2] = {1, -1};
  auto sgn = [&](long e) { return sgn_tab[((e % 2) + 2) % 2]; };

  for (int j = L.lo; j <= L.hi; ++j)
    for (int a = 0; a < L.ngens(j); ++a) {
      // even squares and odd cubes
      if (j % 2 == 0) {
        if (L.ngens(2 * j) > 0 && !detail::piece_zero(L, 2 * j, L.bracket(j, a, j, a)))
          fail({"square", j, a, j, a, 0, 0});
      } else if (L.ngens(2 * j) > 0 && L.ngens(3 * j) > 0) {
        std::vector<RingElement> w = L.bracket(j, a, j, a);
        if (!detail::piece_zero(L, 3 * j, bracket_gen_vec(L, j, a, 2 * j, w)))
          fail({"cube", j, a, j, a, j, a});
      }

      for (int k = L.lo; k <= L.hi; ++k)
        for (int b = 0; b < L.ngens(k); ++b) {
          if (L.ngens(j + k) > 0) {
            // graded antisymmetry
            std::vector<RingElement> anti = L.bracket(j, a, k, b);
            std::vector<RingElement> flip = L.bracket(k, b, j, a);
            std::vector<RingElement> v =
                sgn(static_cast<long>(j) * k) > 0 ? vec_add(anti, flip) : vec_sub(anti, flip);
            if (!detail::piece_zero(L, j + k, v)) fail({"antisymmetry", j, a, k, b, 0, 0});
          }
          if (L.ngens(j + k + 1) > 0) {
            // Leibniz: d[a,b] = [da,b] + (-1)^j [a,db]
            std::vector<RingElement> lhs =
                mat_apply(L.diff(j + k), L.bracket(j, a, k, b));
            std::vector<RingElement> rhs = vec_zero(L.R, L.ngens(j + k + 1));
            const FreeModuleMatrix dj = L.diff(j), dk = L.diff(k);
            for (const auto& [c2, val] : dj.col[a])
              rhs = vec_add(rhs, vec_scale(L.bracket(j + 1, c2, k, b), val));
            for (const auto& [c2, val] : dk.col[b]) {
              std::vector<RingElement> t = vec_scale(L.bracket(j, a, k + 1, c2), val);
              rhs = sgn(j) > 0 ? vec_add(rhs, t) : vec_sub(rhs, t);
            }
            if (!detail::piece_zero(L, j + k + 1, vec_sub(lhs, rhs)))
              fail({"Leibniz", j, a, k, b, 0, 0});
          }

          // Jacobi on triples
          for (int l = L.lo; l <= L.hi; ++l) {
            if (L.ngens(j + k + l) == 0) continue;
            for (int c = 0; c < L.ngens(l); ++c) {
              // [a,[b,c]] = [[a,b],c] + (-1)^{jk} [b,[a,c]]
              std::vector<RingElement> t1 =
                  bracket_gen_vec(L, j, a, k + l, L.bracket(k, b, l, c));
              std::vector<RingElement> ab = L.bracket(j, a, k, b);
              std::vector<RingElement> abc = vec_zero(L.R, L.ngens(j + k + l));
              for (int e = 0; e < L.ngens(j + k); ++e)
                if (!ab[e].is_zero())
                  abc = vec_add(abc, vec_scale(L.bracket(j + k, e, l, c), ab[e]));
              std::vector<RingElement> t3 =
                  bracket_gen_vec(L, k, b, j + l, L.bracket(j, a, l, c));
              std::vector<RingElement> rhs =
                  sgn(static_cast<long>(j) * k) > 0 ? vec_add(abc, t3) : vec_sub(abc, t3);
              if (!detail::piece_zero(L, j + k + l, vec_sub(t1, rhs)))
                fail({"Jacobi", j, a, k, b, l, c});
            }
          }
        }
    }
  return rep;
}

// ---------------------------------------------------------------------------
// null homotopy of the bracket

struct ResidueEntry {
  std::string equation;
  std::vector<RingElement> value;
};

struct HomotopyDecision {
  bool feasible = false;
  // (j, k) -> matrix ngens(j+k-1) x ngens(j)*ngens(k); column (a,b) is h(e_a, e_b)
  std::map<std::pair<int, int>, FreeModuleMatrix> h;
  std::vector<ResidueEntry> residues;
};

namespace detail {

inline std::vector<RingElement> homotopy_value(const HomotopyDecision& dec, const Dgla& L,
                                               int j, int k, int a, int b) {
  auto it = dec.h.find({j, k});
  if (it == dec.h.end()) return vec_zero(L.R, L.ngens(j + k - 1));
  return mat_col(it->second, a * L.ngens(k) + b);
}

}  // namespace detail

// Decides whether an R-bilinear degree -1 map h on the generators satisfies
// [x,y] = d h(x,y) + h(dx,y) + (-1)^|x| h(x,dy) throughout, with h required
// to kill piece relations in both slots.  Feasibility returns h re-verified
// against the tables; infeasibility returns the nonzero residue rows of the
// assembled linear system, labeled by the equations they came from.
inline HomotopyDecision is_bracket_null_homotopic(const Dgla& L) {
  const RingPtr& R = L.R;

  std::map<std::pair<int, int>, int> uoff;
  int ncols = 0;
  for (int j = L.lo; j <= L.hi; ++j)
    for (int k = L.lo; k <= L.hi; ++k) {
      if (L.ngens(j) == 0 || L.ngens(k) == 0 || L.ngens(j + k - 1) == 0) continue;
      uoff[{j, k}] = ncols;
      ncols += L.ngens(j) * L.ngens(k) * L.ngens(j + k - 1);
    }
  auto uidx = [&](int j, int k, int a, int b, int c) {
    return uoff.at({j, k}) + (a * L.ngens(k) + b) * L.ngens(j + k - 1) + c;
  };
  auto has_block = [&](int j, int k) { return uoff.count({j, k}) > 0; };

  struct EqBlock {
    std::string label;
    int row0 = 0, rows = 0;
  };
  std::vector<EqBlock> blocks;
  std::vector<RingElement> b;
  std::vector<std::tuple<int, int, RingElement>> entries;
  std::vector<std::vector<std::pair<int, RingElement>>> slack;

  auto open_block = [&](std::string label, int m) {
    int row0 = static_cast<int>(b.size());
    blocks.push_back({std::move(label), row0, L.ngens(m)});
    for (int i = 0; i < L.ngens(m); ++i) b.push_back(re_zero(R));
    const FreeModuleMatrix rel = L.relations(m);
    for (int r = 0; r < rel.cols; ++r) {
      std::vector<std::pair<int, RingElement>> col;
      for (const auto& [i, v] : rel.col[r]) col.push_back({row0 + i, v});
      slack.push_back(std::move(col));
    }
    return row0;
  };

  for (int j = L.lo; j <= L.hi; ++j)
    for (int k = L.lo; k <= L.hi; ++k) {
      if (L.ngens(j) == 0 || L.ngens(k) == 0) continue;
      const int m = j + k;

      // bracket identities
      if (L.ngens(m) > 0) {
        const FreeModuleMatrix dj = L.diff(j), dk = L.diff(k), dt = L.diff(m - 1);
        for (int a = 0; a < L.ngens(j); ++a)
          for (int bb = 0; bb < L.ngens(k); ++bb) {
            int row0 = open_block("bracket j=" + std::to_string(j) + " a=" + std::to_string(a) +
                                      " k=" + std::to_string(k) + " b=" + std::to_string(bb),
                                  m);
            std::vector<RingElement> lhs = L.bracket(j, a, k, bb);
            for (int i = 0; i < L.ngens(m); ++i) b[row0 + i] = lhs[i];

            if (has_block(j, k))
              for (int c = 0; c < L.ngens(m - 1); ++c)
                for (const auto& [i, v] : dt.col[c])
                  entries.push_back({row0 + i, uidx(j, k, a, bb, c), v});
            if (has_block(j + 1, k))
              for (const auto& [c2, v] : dj.col[a])
                for (int c = 0; c < L.ngens(m); ++c)
                  entries.push_back({row0 + c, uidx(j + 1, k, c2, bb, c), v});
            if (has_block(j, k + 1)) {
              RingElement s = re_const(R, (((j % 2) + 2) % 2 == 0) ? 1 : -1);
              for (const auto& [c2, v] : dk.col[bb])
                for (int c = 0; c < L.ngens(m); ++c)
                  entries.push_back({row0 + c, uidx(j, k + 1, a, c2, c), s * v});
            }
          }
      }

      // h must kill relations in the first slot ...
      if (has_block(j, k)) {
        const FreeModuleMatrix relj = L.relations(j);
        for (int r = 0; r < relj.cols; ++r)
          for (int bb = 0; bb < L.ngens(k); ++bb) {
            int row0 = open_block("linearity piece=" + std::to_string(j) +
                                      " relation=" + std::to_string(r) + " against k=" +
                                      std::to_string(k) + " b=" + std::to_string(bb),
                                  m - 1);
            for (const auto& [a, v] : relj.col[r])
              for (int c = 0; c < L.ngens(m - 1); ++c)
                entries.push_back({row0 + c, uidx(j, k, a, bb, c), v});
          }
        // ... and in the second slot
        const FreeModuleMatrix relk = L.relations(k);
        for (int r = 0; r < relk.cols; ++r)
          for (int a = 0; a < L.ngens(j); ++a) {
            int row0 = open_block("linearity piece=" + std::to_string(k) +
                                      " relation=" + std::to_string(r) + " against j=" +
                                      std::to_string(j) + " a=" + std::to_string(a),
                                  m - 1);
            for (const auto& [bb, v] : relk.col[r])
              for (int c = 0; c < L.ngens(m - 1); ++c)
                entries.push_back({row0 + c, uidx(j, k, a, bb, c), v});
          }
      }
    }

  const int nrows = static_cast<int>(b.size());
  FreeModuleMatrix M(R, nrows, ncols + static_cast<int>(slack.size()));
  for (const auto& [i, jj, v] : entries) M.add_to(i, jj, v);
  for (size_t s = 0; s < slack.size(); ++s)
    for (const auto& [i, v] : slack[s]) M.add_to(i, ncols + static_cast<int>(s), v);

  LinSolveResult res = solve_linear(M, b);
  HomotopyDecision dec;
  dec.feasible = res.feasible;

  if (!res.feasible) {
    for (const EqBlock& blk : blocks) {
      std::vector<RingElement> v(res.residue.begin() + blk.row0,
                                 res.residue.begin() + blk.row0 + blk.rows);
      if (!vec_is_zero(v) && dec.residues.size() < 16)
        dec.residues.push_back({blk.label, std::move(v)});
    }
    require(!dec.residues.empty(), "null homotopy: infeasible but residue vanished");
    return dec;
  }

  for (const auto& [jk, off] : uoff) {
    auto [j, k] = jk;
    FreeModuleMatrix hm(R, L.ngens(j + k - 1), L.ngens(j) * L.ngens(k));
    for (int col = 0; col < hm.cols; ++col)
      for (int c = 0; c < hm.rows; ++c) hm.set(c, col, res.u[off + col * hm.rows + c]);
    dec.h[jk] = std::move(hm);
  }

  // independent re-verification against the tables
  for (int j = L.lo; j <= L.hi; ++j)
    for (int k = L.lo; k <= L.hi; ++k) {
      if (L.ngens(j) == 0 || L.ngens(k) == 0 || L.ngens(j + k) == 0) continue;
      const FreeModuleMatrix dj = L.diff(j), dk = L.diff(k);
      for (int a = 0; a < L.ngens(j); ++a)
        for (int bb = 0; bb < L.ngens(k); ++bb) {
          std::vector<RingElement> rhs =
              mat_apply(L.diff(j + k - 1), detail::homotopy_value(dec, L, j, k, a, bb));
          for (const auto& [c2, v] : dj.col[a])
            rhs = vec_add(rhs, vec_scale(detail::homotopy_value(dec, L, j + 1, k, c2, bb), v));
          RingElement s = re_const(R, (((j % 2) + 2) % 2 == 0) ? 1 : -1);
          for (const auto& [c2, v] : dk.col[bb])
            rhs = vec_add(rhs, vec_scale(detail::homotopy_value(dec, L, j, k + 1, a, c2), s * v));
          require(detail::piece_zero(L, j + k, vec_sub(L.bracket(j, a, k, bb), rhs)),
                  "null homotopy: witness failed re-verification");
        }
    }
  return dec;
}

// ---------------------------------------------------------------------------
// species

struct EndoDGLA {
  ComplexPtr K;
  HomComplex E;
  Dgla L;
};

inline EndoDGLA endo_dgla(const ComplexPtr& K) {
  HomComplex E = end_complex(K);
  const RingPtr& R = K->R;
  const int lo = E.H->lo, hi = E.H->hi;
  std::vector<DglaPiece> pieces;
  std::vector<FreeModuleMatrix> d;
  for (int k = lo; k <= hi; ++k) {
    pieces.push_back({E.rank(k), FreeModuleMatrix(R, E.rank(k), 0)});
    if (k < hi) d.push_back(E.H->diff(k));
  }
  std::vector<std::vector<FreeModuleMatrix>> br;
  for (int j = lo; j <= hi; ++j) {
    br.emplace_back();
    for (int k = lo; k <= hi; ++k) {
      FreeModuleMatrix blk(R, E.rank(j + k), E.rank(j) * E.rank(k));
      if (blk.rows > 0 && blk.cols > 0) {
        for (int a = 0; a < E.rank(j); ++a) {
          std::vector<RingElement> ea = vec_zero(R, E.rank(j));
          ea[a] = re_one(R);
          GradedMap fa = E.from_vec(j, ea);
          for (int bb = 0; bb < E.rank(k); ++bb) {
            std::vector<RingElement> eb = vec_zero(R, E.rank(k));
            eb[bb] = re_one(R);
            std::vector<RingElement> v = E.to_vec(gm_bracket(fa, E.from_vec(k, eb)));
            for (int i = 0; i < blk.rows; ++i)
              if (!v[i].is_zero()) blk.set(i, a * E.rank(k) + bb, v[i]);
          }
        }
      }
      br.back().push_back(std::move(blk));
    }
  }
  return {K, std::move(E), make_dgla(R, lo, std::move(pieces), std::move(d), std::move(br))};
}

// Exterior algebra of dual forms: zero differential, wedge product, zero
// bracket (the commutator of a graded-commutative product).
struct AbelianDGA {
  RingPtr R;
  int n = 0;
  ComplexPtr W;  // rank C(n,k) in degree k, zero differential
  Dgla L;

  ExtVec basis_form(int k, int idx) const {
    return ext_basis_elt(R, n, ext_sets(n, k)[idx]);
  }
};

inline AbelianDGA abelian_wedge_dga(const RingPtr& R, int n) {
  require(n >= 1 && n <= Monomial::max_vars, "wedge algebra: rank out of range");
  std::vector<int> ranks;
  std::vector<FreeModuleMatrix> zd;
  std::vector<DglaPiece> pieces;
  std::vector<FreeModuleMatrix> d;
  for (int k = 0; k <= n; ++k) {
    int r = ext_rank(n, k);
    ranks.push_back(r);
    pieces.push_back({r, FreeModuleMatrix(R, r, 0)});
    if (k < n) {
      zd.emplace_back(R, ext_rank(n, k + 1), r);
      d.emplace_back(R, ext_rank(n, k + 1), r);
    }
  }
  ComplexPtr W = make_complex(R, 0, ranks, zd);
  std::vector<std::vector<FreeModuleMatrix>> br;
  for (int j = 0; j <= n; ++j) {
    br.emplace_back();
    for (int k = 0; k <= n; ++k)
      br.back().emplace_back(R, j + k <= n ? ext_rank(n, j + k) : 0,
                             ext_rank(n, j) * ext_rank(n, k));
  }
  return {R, n, W, make_dgla(R, 0, std::move(pieces), std::move(d), std::move(br))};
}

// A DGLA given by explicit tables, with named generators.
struct HandDGLA {
  Dgla L;
  std::vector<std::vector<std::string>> names;  // per degree, parallel to pieces
};

inline HandDGLA make_hand_dgla(Dgla L, std::vector<std::vector<std::string>> names) {
  require(names.size() == L.pieces.size(), "hand dgla: name rows != piece count");
  for (size_t i = 0; i < names.size(); ++i)
    require(static_cast<int>(names[i].size()) == L.pieces[i].ngens,
            "hand dgla: name count mismatch in degree " + std::to_string(L.lo + (int)i));
  return {std::move(L), std::move(names)};
}

inline HomotopyDecision is_bracket_null_homotopic(const EndoDGLA& E) {
  return is_bracket_null_homotopic(E.L);
}
inline HomotopyDecision is_bracket_null_homotopic(const HandDGLA& H) {
  return is_bracket_null_homotopic(H.L);
}

// ---------------------------------------------------------------------------
// contraction morphisms and their certificates

namespace detail {

inline GradedMap contraction_chain_map(const KoszulComplex& KK, const AbelianDGA& A,
                                       const HomComplex& E,
                                       const std::function<GradedMap(const ExtVec&)>& op) {
  GradedMap i = gm_zero(A.W, E.H, 0);
  for (int k = 0; k <= KK.n; ++k) {
    std::vector<std::vector<RingElement>> cols;
    for (int s = 0; s < ext_rank(KK.n, k); ++s) cols.push_back(E.to_vec(op(A.basis_form(k, s))));
    i.set_block(k, mat_from_cols(KK.R, E.rank(k), cols));
  }
  return i;
}

}  // namespace detail

struct ContractionMorphism {
  KoszulComplex KK;
  AbelianDGA A;
  EndoDGLA end;
  GradedMap i;  // A.W -> end.E.H, degree 0
  bool chain = false, multiplicative = false, bracket_compatible = false, injective = false;
};

inline ContractionMorphism contraction_morphism(const KoszulComplex& KK) {
  AbelianDGA A = abelian_wedge_dga(KK.R, KK.n);
  EndoDGLA end = endo_dgla(KK.K);
  auto op = [&](const ExtVec& psi) { return contraction_operator(KK, psi); };
  GradedMap i = detail::contraction_chain_map(KK, A, end.E, op);

  require(is_chain_map(i), "contraction morphism: not a chain map");

  for (int k1 = 0; k1 <= KK.n; ++k1)
    for (int k2 = 0; k2 <= KK.n; ++k2)
      for (int s = 0; s < ext_rank(KK.n, k1); ++s)
        for (int t = 0; t < ext_rank(KK.n, k2); ++t) {
          GradedMap lhsm = gm_compose(op(A.basis_form(k1, s)), op(A.basis_form(k2, t)));
          if (k1 + k2 > KK.n) {
            require(lhsm.is_zero(), "contraction morphism: overshooting product not zero");
          } else {
            ExtVec w = wedge(A.basis_form(k1, s), A.basis_form(k2, t));
            require(gm_equal(op(w), lhsm), "contraction morphism: not multiplicative");
          }
          require(gm_bracket(op(A.basis_form(k1, s)), op(A.basis_form(k2, t))).is_zero(),
                  "contraction morphism: bracket image not zero");
        }

  for (int k = 0; k <= KK.n; ++k)
    require(syzygies(i.block(k)).cols == 0,
            "contraction morphism: kernel in form degree " + std::to_string(k));

  ContractionMorphism m{KK, std::move(A), std::move(end), std::move(i)};
  m.chain = m.multiplicative = m.bracket_compatible = m.injective = true;
  return m;
}

struct TruncatedContractionMorphism {
  KoszulComplex KK;
  TruncatedComplex tr;
  AbelianDGA A;
  EndoDGLA end;
  GradedMap i;  // A.W -> end.E.H, degree 0
  bool chain = false, multiplicative = false, bracket_compatible = false;
  bool projection_identity = false;  // proj . i_psi == proj . i_psi . incl . proj
};

inline TruncatedContractionMorphism truncated_contraction_morphism(const KoszulComplex& KK,
                                                                   int p = 0) {
  require(p <= 0, "truncated contraction morphism: truncation point must be <= 0");
  TruncatedComplex tr = truncate_below(KK.K, p);
  AbelianDGA A = abelian_wedge_dga(KK.R, KK.n);
  EndoDGLA end = endo_dgla(tr.T);
  auto op = [&](const ExtVec& psi) { return truncated_contraction(KK, tr, psi); };
  GradedMap i = detail::contraction_chain_map(KK, A, end.E, op);

  require(is_chain_map(i), "truncated contraction morphism: not a chain map");

  GradedMap jpi = gm_compose(tr.incl, tr.proj);
  for (int k = 0; k <= KK.n; ++k)
    for (int s = 0; s < ext_rank(KK.n, k); ++s) {
      GradedMap pi_full = gm_compose(tr.proj, contraction_operator(KK, A.basis_form(k, s)));
      require(gm_equal(pi_full, gm_compose(pi_full, jpi)),
              "truncated contraction morphism: projection identity fails");
    }

  for (int k1 = 0; k1 <= KK.n; ++k1)
    for (int k2 = 0; k2 <= KK.n; ++k2)
      for (int s = 0; s < ext_rank(KK.n, k1); ++s)
        for (int t = 0; t < ext_rank(KK.n, k2); ++t) {
          GradedMap a = op(A.basis_form(k1, s)), bq = op(A.basis_form(k2, t));
          if (k1 + k2 <= KK.n)
            require(gm_equal(op(wedge(A.basis_form(k1, s), A.basis_form(k2, t))),
                             gm_compose(a, bq)),
                    "truncated contraction morphism: not multiplicative");
          require(gm_bracket(a, bq).is_zero(),
                  "truncated contraction morphism: bracket image not zero");
        }

  TruncatedContractionMorphism m{KK, std::move(tr), std::move(A), std::move(end), std::move(i)};
  m.chain = m.multiplicative = m.bracket_compatible = m.projection_identity = true;
  return m;
}

struct HSurjectivity {
  bool surjective = true;
  std::optional<int> failing_degree;
};

// Degreewise surjectivity in cohomology of a chain map; degrees where the
// source vanishes require the target cohomology to vanish.
inline HSurjectivity surjective_in_cohomology(const GradedMap& i) {
  int lo = std::min(i.src->lo, i.dst->lo - i.k);
  int hi = std::max(i.src->hi, i.dst->hi - i.k);
  for (int k = lo; k <= hi; ++k) {
    if (i.src->rank(k) == 0) {
      if (!is_exact_at(i.dst, k + i.k)) return {false, k};
      continue;
    }
    if (!is_surjective_h(induced_map(i, k)).surjective) return {false, k};
  }
  return {true, std::nullopt};
}

// ---------------------------------------------------------------------------
// the witness pair against null homotopy

struct NonabelianWitness {
  GradedMap alpha, beta;  // degree 0 and degree n endomorphisms
  std::vector<RingElement> ideal;
};

inline NonabelianWitness nonabelian_witness(const ComplexPtr& K,
                                            std::vector<RingElement> ideal) {
  const RingPtr& R = K->R;
  require(K->hi == 0 && K->lo < 0, "witness pair: complex must run from -n to 0 with n > 0");
  require(K->rank(0) > 0 && K->rank(K->lo) > 0, "witness pair: end modules vanish");
  require(!ideal.empty(), "witness pair: empty ideal");
  FreeModuleMatrix Irow(R, 1, static_cast<int>(ideal.size()));
  for (size_t j = 0; j < ideal.size(); ++j) {
    assert_same_ring(re_zero(R), ideal[j]);
    Irow.set(0, static_cast<int>(j), ideal[j]);
  }
  ColumnSolver is(Irow);
  require(!is.solve({re_one(R)}).feasible, "witness pair: the ideal is not proper");
  for (int m = K->lo; m < K->hi; ++m) {
    bool inside = true;
    K->diff(m).for_entries([&](int, int, const RingElement& v) {
      if (!is.solve({v}).feasible) inside = false;
    });
    require(inside, "witness pair: differential entries escape the ideal at degree " +
                        std::to_string(m));
  }

  const int n = -K->lo;
  GradedMap alpha = gm_zero(K, K, 0);
  alpha.set_block(0, FreeModuleMatrix::identity(R, K->rank(0)));
  GradedMap beta = gm_zero(K, K, n);
  FreeModuleMatrix bb(R, K->rank(0), K->rank(K->lo));
  bb.set(0, 0, re_one(R));
  beta.set_block(K->lo, std::move(bb));

  require(gm_equal(gm_bracket(alpha, beta), beta), "witness pair: [alpha,beta] != beta");
  require(gm_d(beta).is_zero(), "witness pair: beta is not closed");
  GradedMap da = gm_d(alpha);
  for (int m = K->lo; m <= K->hi; ++m) {
    bool inside = true;
    da.block(m).for_entries([&](int, int, const RingElement& v) {
      if (!is.solve({v}).feasible) inside = false;
    });
    require(inside, "witness pair: d(alpha) escapes the ideal");
  }
  return {std::move(alpha), std::move(beta), std::move(ideal)};
}

}  // namespace koszul
