#pragma once
// The complex attached to a sequence f = (f_1..f_n): the a-th exterior power
// of a rank-n free module sits in degree -a, and the differential contracts
// with the one-form sending e_i to f_i.  Also here: contraction operators
// i_psi for arbitrary dual forms psi, the brutal below-p truncation with its
// projection and (degreewise) inclusion, and the exact self-duality
// Hom(K, R) ~ K[-n].

#include <vector>

#include "koszul/exterior.hpp"
#include "koszul/hom.hpp"

namespace koszul {

struct KoszulComplex {
  RingPtr R;
  std::vector<RingElement> f;
  int n = 0;
  ComplexPtr K;  // degrees -n .. 0
};

inline KoszulComplex koszul_complex(const RingPtr& R, std::vector<RingElement> f) {
  int n = static_cast<int>(f.size());
  require(n >= 1 && n <= Monomial::max_vars, "koszul complex: sequence length out of range");
  for (const RingElement& x : f)
    require(x.R && x.R->same_as(*R), "koszul complex: sequence entry from the wrong ring");

  std::vector<int> ranks;
  for (int a = n; a >= 0; --a) ranks.push_back(ext_rank(n, a));
  std::vector<FreeModuleMatrix> d;
  for (int a = n; a >= 1; --a) {
    auto sets = ext_sets(n, a);
    std::vector<std::vector<RingElement>> cols;
    for (const auto& s : sets) {
      ExtVec img = contract_form1(f, ext_basis_elt(R, n, s));
      cols.push_back(img.c);
    }
    d.push_back(mat_from_cols(R, ext_rank(n, a - 1), cols));
  }
  KoszulComplex KK;
  KK.R = R;
  KK.f = std::move(f);
  KK.n = n;
  KK.K = make_complex(R, -n, std::move(ranks), std::move(d));
  return KK;
}

// i_psi as a graded endomorphism of the complex: contraction with a dual
// form of degree b lowers exterior degree by b, i.e. raises cohomological
// degree by b.
inline GradedMap contraction_operator(const KoszulComplex& KK, const ExtVec& psi) {
  require(psi.n == KK.n, "contraction operator: arity mismatch");
  GradedMap op = gm_zero(KK.K, KK.K, psi.a);
  for (int a = KK.n; a >= psi.a; --a) {
    auto sets = ext_sets(KK.n, a);
    std::vector<std::vector<RingElement>> cols;
    for (const auto& s : sets)
      cols.push_back(contract(psi, ext_basis_elt(KK.R, KK.n, s)).c);
    op.set_block(-a, mat_from_cols(KK.R, ext_rank(KK.n, a - psi.a), cols));
  }
  return op;
}

// Brutal truncation keeping degrees < p, with the projection (a chain map)
// and the degreewise inclusion (not a chain map unless the truncation is
// trivial; the flag records which).
struct TruncatedComplex {
  ComplexPtr T;
  GradedMap proj;  // K -> T
  GradedMap incl;  // T -> K
  bool incl_is_chain_map = false;
};

inline TruncatedComplex truncate_below(const ComplexPtr& K, int p) {
  require(p > K->lo, "truncate_below: nothing left below the cut");
  int hi = std::min(K->hi, p - 1);
  std::vector<int> ranks;
  std::vector<FreeModuleMatrix> d;
  for (int k = K->lo; k <= hi; ++k) {
    ranks.push_back(K->rank(k));
    if (k < hi) d.push_back(K->diff(k));
  }
  TruncatedComplex out;
  out.T = make_complex(K->R, K->lo, std::move(ranks), std::move(d));
  out.proj = gm_zero(K, out.T, 0);
  out.incl = gm_zero(out.T, K, 0);
  for (int k = K->lo; k <= hi; ++k) {
    if (K->rank(k) == 0) continue;
    out.proj.set_block(k, FreeModuleMatrix::identity(K->R, K->rank(k)));
    out.incl.set_block(k, FreeModuleMatrix::identity(K->R, K->rank(k)));
  }
  require(is_chain_map(out.proj), "truncate_below: projection failed to commute");
  out.incl_is_chain_map = is_chain_map(out.incl);
  return out;
}

// pi . i_psi . incl, the contraction operator pushed onto the truncation
inline GradedMap truncated_contraction(const KoszulComplex& KK, const TruncatedComplex& tr,
                                       const ExtVec& psi) {
  return gm_compose(tr.proj, gm_compose(contraction_operator(KK, psi), tr.incl));
}

// Hom(K, R) is isomorphic to K[-n]; the isomorphism contracts the dual basis
// into the top form, with one sign per degree chosen to make it a chain map.
// Every step is verified exactly.
struct SelfDuality {
  HomComplex dual;        // Hom(K, unit)
  ComplexPtr shifted;     // K[-n]
  GradedMap phi;          // dual.H -> shifted, degree 0 chain isomorphism
  std::vector<int> sign;  // the per-degree constants, sign[k] for degree k
};

inline SelfDuality self_duality(const KoszulComplex& KK) {
  SelfDuality sd;
  sd.dual = hom_complex(KK.K, unit_complex(KK.R));
  sd.shifted = shift(KK.K, -KK.n);
  const int n = KK.n;
  std::vector<int> top(n);
  for (int i = 0; i < n; ++i) top[i] = i;
  ExtVec omega = ext_basis_elt(KK.R, n, top);

  // unsigned candidate blocks P_k : dual^k -> K[-n]^k, e_S* |-> e_S* -| omega
  std::vector<FreeModuleMatrix> P;
  for (int k = 0; k <= n; ++k) {
    auto sets = ext_sets(n, k);
    std::vector<std::vector<RingElement>> cols;
    for (const auto& s : sets)
      cols.push_back(contract(ext_basis_elt(KK.R, n, s), omega).c);
    P.push_back(mat_from_cols(KK.R, ext_rank(n, n - k), cols));
  }

  // propagate signs so that d . (c_k P_k) = (c_{k+1} P_{k+1}) . d
  sd.sign.assign(n + 1, 1);
  for (int k = 0; k < n; ++k) {
    FreeModuleMatrix U = mat_mul(sd.shifted->diff(k), P[k]);
    FreeModuleMatrix V = mat_mul(P[k + 1], sd.dual.H->diff(k));
    int eps = 0;
    if (mat_equal(U, V)) eps = 1;
    else if (mat_equal(U, mat_neg(V))) eps = -1;
    require(eps != 0, "self duality: composites differ by more than a sign");
    sd.sign[k + 1] = sd.sign[k] * eps;
  }

  sd.phi = gm_zero(sd.dual.H, sd.shifted, 0);
  for (int k = 0; k <= n; ++k)
    sd.phi.set_block(k, sd.sign[k] > 0 ? P[k] : mat_neg(P[k]));
  require(is_chain_map(sd.phi), "self duality: chain condition failed");

  // degreewise bijectivity: each column is a signed basis vector, rows distinct
  for (int k = 0; k <= n; ++k) {
    FreeModuleMatrix b = sd.phi.block(k);
    std::vector<char> hit(b.rows, 0);
    for (int j = 0; j < b.cols; ++j) {
      require(b.col[j].size() == 1, "self duality: block not a signed permutation");
      auto [r, v] = b.col[j][0];
      require(v == re_one(KK.R) || v == re_const(KK.R, -1),
              "self duality: entry is not a unit sign");
      require(!hit[r], "self duality: repeated row");
      hit[r] = 1;
    }
    require(b.rows == b.cols, "self duality: block not square");
  }
  return sd;
}

}  // namespace koszul
