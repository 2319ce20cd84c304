#pragma once
// Cohomology of a complex of free modules, presented by generators and
// relations: kernel generators of one differential, divided by everything the
// previous differential can hit.  Maps induced in cohomology carry their own
// well-definedness certificates, and surjectivity or injectivity of such a
// map is decided by membership computations rather than by any attempt to
// classify modules up to isomorphism.

#include <optional>
#include <string>
#include <vector>

#include "koszul/koszul_complex.hpp"
#include "koszul/presentation.hpp"

namespace koszul {

struct CohomologyPresentation {
  ComplexPtr C;
  int degree = 0;
  FreeModuleMatrix kernel_gens;  // rank(degree) rows; columns are cocycle representatives
  ModulePresentation pres;       // one generator per kernel column
};

inline CohomologyPresentation cohomology_presentation(const ComplexPtr& C, int k) {
  if (C->rank(k) == 0)
    return {C, k, FreeModuleMatrix(C->R, 0, 0), zero_module(C->R)};

  FreeModuleMatrix Kg = kernel_matrix(C->diff(k));
  FreeModuleMatrix joint = syzygies(mat_hcat(Kg, C->diff(k - 1)));

  // A class sum u_i [Kg_i] dies exactly when Kg u lands in the image of the
  // previous differential, so the relations are the kernel-block rows of the
  // joint syzygies.  Columns supported entirely on the image block drop out.
  std::vector<std::vector<RingElement>> rel;
  for (int j = 0; j < joint.cols; ++j) {
    std::vector<RingElement> u(Kg.cols, re_zero(C->R));
    bool nonzero = false;
    for (const auto& [i, v] : joint.col[j])
      if (i < Kg.cols) {
        u[i] = v;
        nonzero = true;
      }
    if (nonzero) rel.push_back(std::move(u));
  }
  ModulePresentation P =
      make_presentation(C->R, Kg.cols, mat_from_cols(C->R, Kg.cols, rel));
  return {C, k, std::move(Kg), std::move(P)};
}

// Dimension of H^k over the ground field, or -1 when infinite.
inline long h_dim(const ComplexPtr& C, int k) {
  return kdim(cohomology_presentation(C, k).pres);
}

inline bool is_exact_at(const ComplexPtr& C, int k) {
  return is_zero_module(cohomology_presentation(C, k).pres);
}

// A map of presented modules, recorded as a matrix from source generators to
// target-generator combinations.  Constructors certify well-definedness:
// every source relation must land in the target relation module.
struct InducedMap {
  ModulePresentation src, dst;
  FreeModuleMatrix A;  // dst.ngens x src.ngens
};

namespace detail {

inline void require_well_defined(const ModulePresentation& src, const ModulePresentation& dst,
                                 const FreeModuleMatrix& A, const char* who) {
  FreeModuleMatrix mapped = mat_mul(A, src.relations);
  if (mapped.cols == 0) return;
  ColumnSolver s(dst.relations);
  for (int j = 0; j < mapped.cols; ++j)
    require(s.solve(mat_col(mapped, j)).feasible,
            std::string(who) + ": a source relation escapes the target relations");
}

}  // namespace detail

// Map determined by explicit cocycles in the ambient module of dst: column j
// of images is where the j-th source generator goes.
inline InducedMap induced_map_from_cocycles(const ModulePresentation& src,
                                            const CohomologyPresentation& dst,
                                            const FreeModuleMatrix& images) {
  require(images.rows == dst.C->rank(dst.degree),
          "induced map: image vectors live in the wrong ambient module");
  require(images.cols == src.ngens, "induced map: one image per source generator required");
  require(mat_mul(dst.C->diff(dst.degree), images).is_zero(),
          "induced map: an image vector is not a cocycle");

  FreeModuleMatrix A(dst.C->R, dst.pres.ngens, src.ngens);
  if (src.ngens > 0) {
    ColumnSolver s(dst.kernel_gens);
    for (int j = 0; j < images.cols; ++j) {
      LinSolveResult r = s.solve(mat_col(images, j));
      require(r.feasible, "induced map: cocycle not expressible in the kernel generators");
      for (int i = 0; i < A.rows; ++i) A.set(i, j, r.u[i]);
    }
  }
  detail::require_well_defined(src, dst.pres, A, "induced map");
  return {src, dst.pres, std::move(A)};
}

inline void require_chain_map(const GradedMap& phi, const char* who) {
  GradedMap d = gm_d(phi);
  for (int j = phi.src->lo; j <= phi.src->hi; ++j)
    require(d.block(j).is_zero(),
            std::string(who) + ": not a chain map, the square over degree " +
                std::to_string(j) + " does not commute");
}

inline InducedMap induced_map(const GradedMap& phi, const CohomologyPresentation& src,
                              const CohomologyPresentation& dst) {
  require(complexes_equal(phi.src, src.C) && complexes_equal(phi.dst, dst.C),
          "induced map: presentations belong to different complexes");
  require(dst.degree == src.degree + phi.k, "induced map: degree mismatch");
  require_chain_map(phi, "induced map");
  FreeModuleMatrix images = mat_mul(phi.block(src.degree), src.kernel_gens);
  return induced_map_from_cocycles(src.pres, dst, images);
}

inline InducedMap induced_map(const GradedMap& phi, int k) {
  return induced_map(phi, cohomology_presentation(phi.src, k),
                     cohomology_presentation(phi.dst, k + phi.k));
}

// Equality of maps between the same presentations, up to target relations.
inline bool induced_maps_equal(const InducedMap& a, const InducedMap& b) {
  if (a.src.ngens != b.src.ngens || a.dst.ngens != b.dst.ngens) return false;
  FreeModuleMatrix d = mat_sub(a.A, b.A);
  ColumnSolver s(a.dst.relations);
  for (int j = 0; j < d.cols; ++j)
    if (!s.solve(mat_col(d, j)).feasible) return false;
  return true;
}

struct SurjectivityResult {
  bool surjective = false;
  std::optional<int> failing_generator;  // target generator not hit, when any
};

inline SurjectivityResult is_surjective_h(const InducedMap& m) {
  if (m.dst.ngens == 0) return {true, std::nullopt};
  ColumnSolver s(mat_hcat(m.A, m.dst.relations));
  for (int i = 0; i < m.dst.ngens; ++i)
    if (!s.solve(unit_vector(m.dst.R, m.dst.ngens, i)).feasible) return {false, i};
  return {true, std::nullopt};
}

struct InjectivityResult {
  bool injective = false;
  std::vector<RingElement> kernel_witness;  // nonzero source class killed by the map
};

inline InjectivityResult is_injective_h(const InducedMap& m) {
  // Classes killed by the map are the source-block rows of the syzygies of
  // [A | target relations]; injectivity means each lies in the source
  // relation module already.
  FreeModuleMatrix S = syzygies(mat_hcat(m.A, m.dst.relations));
  ColumnSolver s(m.src.relations);
  for (int j = 0; j < S.cols; ++j) {
    std::vector<RingElement> u(m.src.ngens, re_zero(m.src.R));
    bool nonzero = false;
    for (const auto& [i, v] : S.col[j])
      if (i < m.src.ngens) {
        u[i] = v;
        nonzero = true;
      }
    if (nonzero && !s.solve(u).feasible) return {false, std::move(u)};
  }
  return {true, {}};
}

// Reduction of a cocycle in the endomorphisms of the below-zero truncation to
// a contraction operator with the same image in Hom(K^{<0}, I[1]).  For
// degrees m below n-1 this follows the two-step route: the edge composite
// beta = i_f . alpha_{-m-1} is a cocycle of the dual Koszul complex, exactness
// there lets a gamma with beta = (-1)^m gamma . i_f be solved for, and gamma
// pairs back to a form eta of degree m.  At m = n-1 the contraction map onto
// endomorphism degree n-1 is an isomorphism and eta is its exact preimage.
struct EtaReduction {
  ExtVec eta;
  GradedMap i_eta;          // truncated contraction by eta
  FreeModuleMatrix beta;    // 1 x rank K^{-m-1}; zero-width at m = n-1
  FreeModuleMatrix gamma;   // 1 x rank K^{-m};   zero-width at m = n-1
  bool exact_preimage = false;  // i_eta == alpha on the nose (m = n-1 branch)
};

inline EtaReduction eta_reduction(const KoszulComplex& KK, const TruncatedComplex& tr,
                                  const GradedMap& alpha) {
  const int n = KK.n;
  const int m = alpha.k;
  const RingPtr& R = KK.R;
  require(complexes_equal(tr.proj.src, KK.K) && tr.T->hi == -1,
          "eta reduction: expected the below-zero truncation of the Koszul complex");
  require(complexes_equal(alpha.src, tr.T) && complexes_equal(alpha.dst, tr.T),
          "eta reduction: alpha is not an endomorphism of the truncation");
  require(m >= 0 && m <= n - 1, "eta reduction: degree outside 0..n-1");
  require(gm_d(alpha).is_zero(), "eta reduction: alpha is not a cocycle");

  auto sets = ext_sets(n, m);

  if (m == n - 1) {
    // Single block K^{-n} -> K^{-1}; solve alpha = i_eta exactly.
    FreeModuleMatrix blk = alpha.block(-n);
    std::vector<std::vector<RingElement>> cols;
    for (const auto& s : sets) {
      GradedMap basis = truncated_contraction(KK, tr, ext_basis_elt(R, n, s));
      FreeModuleMatrix bb = basis.block(-n);
      cols.push_back(mat_col(bb, 0));
    }
    LinSolveResult r = solve_linear(mat_from_cols(R, n, cols), mat_col(blk, 0));
    require(r.feasible, "eta reduction: top-degree contraction map failed to be onto");
    ExtVec eta{R, n, m, r.u};
    GradedMap ie = truncated_contraction(KK, tr, eta);
    require(gm_equal(ie, alpha), "eta reduction: exact preimage re-verification failed");
    return {std::move(eta), std::move(ie), FreeModuleMatrix(R, 1, 0), FreeModuleMatrix(R, 1, 0),
            true};
  }

  // beta = i_f . alpha_{-m-1} : K^{-m-1} -> R.
  FreeModuleMatrix beta = mat_mul(KK.K->diff(-1), alpha.block(-m - 1));
  require(mat_mul(beta, KK.K->diff(-m - 2)).is_zero(),
          "eta reduction: beta . i_f must vanish for a cocycle");

  // Solve beta = (-1)^m gamma . i_f, transposed into column form.
  std::vector<RingElement> b = mat_col(mat_transpose(beta), 0);
  if (m % 2 == 1)
    for (RingElement& x : b) x = re_const(R, -1) * x;
  LinSolveResult r = solve_linear(mat_transpose(KK.K->diff(-m - 1)), b);
  require(r.feasible,
          "eta reduction: dual cocycle is not a coboundary; the sequence is not regular here");
  FreeModuleMatrix gamma(R, 1, ext_rank(n, m));
  for (int j = 0; j < gamma.cols; ++j) gamma.set(0, j, r.u[j]);

  // eta pairs to gamma against the basis m-vectors; the diagonal contraction
  // signs are +-1, so dividing is multiplying.
  ExtVec eta = ext_zero(R, n, m);
  for (size_t s = 0; s < sets.size(); ++s) {
    ExtVec diag = contract(ext_basis_elt(R, n, sets[s]), ext_basis_elt(R, n, sets[s]));
    eta.c[s] = r.u[s] * diag.c[0];
  }
  GradedMap ie = truncated_contraction(KK, tr, eta);
  require(mat_mul(KK.K->diff(-1), gm_sub(alpha, ie).block(-m - 1)).is_zero(),
          "eta reduction: i_f . (alpha - i_eta) did not vanish");
  return {std::move(eta), std::move(ie), std::move(beta), std::move(gamma), false};
}

}  // namespace koszul
