#include "koszul/cohomology.hpp"

#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"

using namespace koszul;

namespace {

ModulePresentation cyclic(const RingPtr& R, const std::vector<std::string>& rels) {
  std::vector<RingElement> v;
  for (const auto& s : rels) v.push_back(kt::rp(R, s));
  return free_over_quotient(R, 1, v);
}

// Wedge powers of the dual bundle as a complex with zero differential,
// together with the contraction chain map into the endomorphism complex.
std::pair<ComplexPtr, GradedMap> contraction_into_end(const KoszulComplex& KK,
                                                      const HomComplex& E) {
  std::vector<int> ranks;
  std::vector<FreeModuleMatrix> d;
  for (int k = 0; k <= KK.n; ++k) {
    ranks.push_back(ext_rank(KK.n, k));
    if (k > 0) d.emplace_back(KK.R, ranks[k], ranks[k - 1]);
  }
  ComplexPtr W = make_complex(KK.R, 0, ranks, d);
  GradedMap i = gm_zero(W, E.H, 0);
  for (int k = 0; k <= KK.n; ++k) {
    std::vector<std::vector<RingElement>> cols;
    for (const auto& s : ext_sets(KK.n, k))
      cols.push_back(E.to_vec(contraction_operator(KK, ext_basis_elt(KK.R, KK.n, s))));
    i.set_block(k, mat_from_cols(KK.R, E.rank(k), cols));
  }
  return {W, i};
}

}  // namespace

TEST_CASE("vector space dimensions of presented modules") {
  auto Qx = kt::Qx();
  auto Qxy = kt::Qxy();

  CHECK(kdim(free_presentation(Qx, 1)) == -1);
  CHECK(kdim(zero_module(Qx)) == 0);
  CHECK(is_zero_module(zero_module(Qx)));

  CHECK(kdim(cyclic(Qx, {"x^2"})) == 2);
  CHECK(kdim(cyclic(Qx, {"x^5", "x^3"})) == 3);
  CHECK(kdim(cyclic(Qxy, {"x", "y"})) == 1);
  CHECK(kdim(cyclic(Qxy, {"x^2", "y^3"})) == 6);
  CHECK(kdim(cyclic(Qxy, {"x^2 - y"})) == -1);
  CHECK(kdim(free_over_quotient(Qxy, 3, {kt::rp(Qxy, "x"), kt::rp(Qxy, "y")})) == 3);

  ModulePresentation dead = cyclic(Qx, {"2"});
  CHECK(kdim(dead) == 0);
  CHECK(is_zero_module(dead));
  CHECK_FALSE(is_zero_module(cyclic(Qx, {"x"})));

  auto T = PolyRing::make_str({"x"}, {"x^3"});
  CHECK(kdim(free_presentation(T, 2)) == 6);
  CHECK(kdim(cyclic(T, {"x^2"})) == 2);
}

TEST_CASE("Koszul cohomology of a regular pair, frozen") {
  auto R = kt::Qxy();
  auto KK = koszul_complex(R, {re_var(R, 0), re_var(R, 1)});

  SECTION("top cohomology presents the coordinate quotient") {
    CohomologyPresentation H0 = cohomology_presentation(KK.K, 0);
    REQUIRE(H0.pres.ngens == 1);
    CHECK(mat_equal(H0.kernel_gens, FreeModuleMatrix::identity(R, 1)));
    CHECK(kdim(H0.pres) == 1);

    ModulePresentation model = cyclic(R, {"x", "y"});
    // relation modules coincide in both directions
    for (int j = 0; j < H0.pres.relations.cols; ++j)
      CHECK(in_column_module(model.relations, mat_col(H0.pres.relations, j)));
    for (int j = 0; j < model.relations.cols; ++j)
      CHECK(in_column_module(H0.pres.relations, mat_col(model.relations, j)));

    InducedMap iso = induced_map_from_cocycles(model, H0, FreeModuleMatrix::identity(R, 1));
    CHECK(is_surjective_h(iso).surjective);
    CHECK(is_injective_h(iso).injective);
  }

  SECTION("lower degrees vanish") {
    CHECK(is_exact_at(KK.K, -1));
    CHECK(is_exact_at(KK.K, -2));
    CHECK(h_dim(KK.K, -1) == 0);
    CHECK(h_dim(KK.K, 1) == 0);
    CHECK(cohomology_presentation(KK.K, 5).pres.ngens == 0);
  }
}

TEST_CASE("a repeated entry breaks exactness") {
  auto R = kt::Qx();
  auto KK = koszul_complex(R, {re_var(R, 0), re_var(R, 0)});
  CHECK_FALSE(is_exact_at(KK.K, -1));
  CHECK(h_dim(KK.K, -1) == 1);
}

TEST_CASE("regular element over a quotient base ring") {
  auto R = PolyRing::make_str({"x", "y"}, {"x*y"});
  auto KK = koszul_complex(R, {kt::rp(R, "x + y")});
  CHECK(is_exact_at(KK.K, -1));
  CHECK(h_dim(KK.K, 0) == 2);
}

TEST_CASE("dual Koszul complex is exact below the top") {
  SECTION("two variables, fat points") {
    auto R = kt::Qxy();
    auto KK = koszul_complex(R, {kt::rp(R, "x^2"), kt::rp(R, "y^3")});
    ComplexPtr dual = hom_complex(KK.K, unit_complex(R)).H;
    CHECK(h_dim(dual, 0) == 0);
    CHECK(h_dim(dual, 1) == 0);
    CHECK(h_dim(dual, 2) == 6);
  }
  SECTION("three variables") {
    auto R = kt::Qxyz();
    auto KK = koszul_complex(R, {re_var(R, 0), re_var(R, 1), re_var(R, 2)});
    ComplexPtr dual = hom_complex(KK.K, unit_complex(R)).H;
    for (int k = 0; k < 3; ++k) CHECK(h_dim(dual, k) == 0);
    CHECK(h_dim(dual, 3) == 1);
  }
}

TEST_CASE("endomorphism cohomology of the plane pair") {
  auto R = kt::Qxy();
  auto KK = koszul_complex(R, {re_var(R, 0), re_var(R, 1)});
  HomComplex E = end_complex(KK.K);

  SECTION("dimensions across all degrees") {
    CHECK(h_dim(E.H, -2) == 0);
    CHECK(h_dim(E.H, -1) == 0);
    CHECK(h_dim(E.H, 0) == 1);
    CHECK(h_dim(E.H, 1) == 2);
    CHECK(h_dim(E.H, 2) == 1);
  }

  SECTION("contraction classes present each degree exactly") {
    std::vector<RingElement> I = {re_var(R, 0), re_var(R, 1)};
    for (int k = 0; k <= 2; ++k) {
      ModulePresentation src = free_over_quotient(R, ext_rank(2, k), I);
      std::vector<std::vector<RingElement>> cols;
      for (const auto& s : ext_sets(2, k))
        cols.push_back(E.to_vec(contraction_operator(KK, ext_basis_elt(R, 2, s))));
      InducedMap m = induced_map_from_cocycles(
          src, cohomology_presentation(E.H, k), mat_from_cols(R, E.rank(k), cols));
      CHECK(is_surjective_h(m).surjective);
      CHECK(is_injective_h(m).injective);
      CHECK(kdim(src) == h_dim(E.H, k));
    }
  }

  SECTION("contraction chain map is onto in cohomology") {
    auto [W, i] = contraction_into_end(KK, E);
    REQUIRE(is_chain_map(i));
    for (int k = 0; k <= 2; ++k) {
      InducedMap m = induced_map(i, k);
      CHECK(is_surjective_h(m).surjective);
    }
  }
}

TEST_CASE("induced map constructors and decisions") {
  auto R = kt::Qxy();
  auto KK = koszul_complex(R, {re_var(R, 0), re_var(R, 1)});
  HomComplex E = end_complex(KK.K);
  CohomologyPresentation H0 = cohomology_presentation(E.H, 0);

  SECTION("identity chain map induces the identity") {
    InducedMap id = induced_map(gm_identity(E.H), H0, H0);
    InducedMap lit{H0.pres, H0.pres, FreeModuleMatrix::identity(R, H0.pres.ngens)};
    CHECK(induced_maps_equal(id, lit));
    CHECK(is_surjective_h(id).surjective);
    CHECK(is_injective_h(id).injective);
  }

  SECTION("zero chain map induces zero") {
    InducedMap z = induced_map(gm_zero(E.H, E.H, 0), H0, H0);
    InducedMap lit{H0.pres, H0.pres, FreeModuleMatrix(R, H0.pres.ngens, H0.pres.ngens)};
    CHECK(induced_maps_equal(z, lit));
    CHECK_FALSE(is_surjective_h(z).surjective);
    CHECK(is_surjective_h(z).failing_generator.has_value());
  }

  SECTION("a non chain map is rejected with its failing square") {
    GradedMap bad = gm_zero(KK.K, KK.K, 0);
    bad.set_block(-1, FreeModuleMatrix::identity(R, 2));
    CHECK_THROWS_WITH(induced_map(bad, 0),
                      Catch::Matchers::ContainsSubstring("square over degree"));
  }

  SECTION("multiplication by x kills top cohomology of the Koszul pair") {
    CohomologyPresentation HK = cohomology_presentation(KK.K, 0);
    GradedMap mx = gm_scale(gm_identity(KK.K), re_var(R, 0));
    InducedMap m = induced_map(mx, HK, HK);
    InjectivityResult inj = is_injective_h(m);
    CHECK_FALSE(inj.injective);
    REQUIRE(inj.kernel_witness.size() == 1);
    CHECK_FALSE(inj.kernel_witness[0].is_zero());
    CHECK_FALSE(is_surjective_h(m).surjective);
  }
}

TEST_CASE("eta reduction in the truncated endomorphisms") {
  SECTION("two variables, degree zero, identity input") {
    auto R = kt::Qxy();
    auto KK = koszul_complex(R, {re_var(R, 0), re_var(R, 1)});
    TruncatedComplex tr = truncate_below(KK.K, 0);
    EtaReduction red = eta_reduction(KK, tr, gm_identity(tr.T));
    CHECK_FALSE(red.exact_preimage);
    CHECK(red.eta.a == 0);
    CHECK(red.eta.c[0] == re_one(R));
    // beta is the bottom differential row, gamma the constant one
    CHECK(mat_equal(red.beta, KK.K->diff(-1)));
    CHECK(red.gamma.get(0, 0) == re_one(R));
  }

  SECTION("two variables, top degree is an exact preimage") {
    auto R = kt::Qxy();
    auto KK = koszul_complex(R, {kt::rp(R, "x^2"), kt::rp(R, "y - x")});
    TruncatedComplex tr = truncate_below(KK.K, 0);
    ExtVec eta0 = ext_zero(R, 2, 1);
    eta0.c[0] = re_const(R, 2);
    eta0.c[1] = re_var(R, 0);
    EtaReduction red = eta_reduction(KK, tr, truncated_contraction(KK, tr, eta0));
    CHECK(red.exact_preimage);
    CHECK(ext_equal(red.eta, eta0));
  }

  SECTION("three variables, random cocycles in middle degrees") {
    auto R = kt::Qxyz();
    auto KK = koszul_complex(R, {re_var(R, 0), re_var(R, 1), re_var(R, 2)});
    TruncatedComplex tr = truncate_below(KK.K, 0);
    HomComplex E = end_complex(tr.T);
    kt::RandomPolys gen(R, 2026);

    for (int m = 0; m <= 1; ++m) {
      for (int trial = 0; trial < 3; ++trial) {
        // general cocycle: a coboundary plus a contraction operator
        GradedMap w = gm_zero(tr.T, tr.T, m - 1);
        for (int j = tr.T->lo; j <= tr.T->hi; ++j) {
          if (tr.T->rank(j) == 0 || tr.T->rank(j + m - 1) == 0) continue;
          FreeModuleMatrix blk(R, tr.T->rank(j + m - 1), tr.T->rank(j));
          for (int r = 0; r < blk.rows; ++r)
            for (int c = 0; c < blk.cols; ++c) blk.set(r, c, gen.element(1, 1));
          w.set_block(j, blk);
        }
        ExtVec psi = ext_zero(R, 3, m);
        for (auto& cc : psi.c) cc = gen.element(1, 1);
        GradedMap alpha = gm_add(gm_d(w), truncated_contraction(KK, tr, psi));
        REQUIRE(gm_d(alpha).is_zero());

        EtaReduction red = eta_reduction(KK, tr, alpha);
        CHECK(red.eta.a == m);
        CHECK(mat_mul(KK.K->diff(-1), gm_sub(alpha, red.i_eta).block(-m - 1)).is_zero());
      }
    }

    // the top degree uses the exact-preimage branch
    kt::RandomPolys g2(R, 7);
    ExtVec top = ext_zero(R, 3, 2);
    for (auto& cc : top.c) cc = g2.element(2, 2);
    EtaReduction red = eta_reduction(KK, tr, truncated_contraction(KK, tr, top));
    CHECK(red.exact_preimage);
    CHECK(ext_equal(red.eta, top));
  }

  SECTION("a non cocycle is rejected") {
    auto R = kt::Qxy();
    auto KK = koszul_complex(R, {re_var(R, 0), re_var(R, 1)});
    TruncatedComplex tr = truncate_below(KK.K, 0);
    GradedMap bad = gm_zero(tr.T, tr.T, 0);
    bad.set_block(-1, FreeModuleMatrix::identity(R, 2));
    CHECK_THROWS_WITH(eta_reduction(KK, tr, bad),
                      Catch::Matchers::ContainsSubstring("not a cocycle"));
  }
}
