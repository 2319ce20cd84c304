// Covers of an affine base by distinguished opens: certified localizations
// and denominator clearing, the gluing complex of chartwise endomorphisms,
// normalization of total cocycles onto global representatives, and descent
// of flat families with its obstruction against the edge projection.

#include <catch2/catch_amalgamated.hpp>

#include <map>
#include <utility>
#include <vector>

#include "helpers.hpp"
#include "koszul/cech.hpp"
#include "koszul/koszul_complex.hpp"

using namespace koszul;
using Catch::Matchers::ContainsSubstring;

namespace {

TensorElement tv(int deg, std::vector<std::pair<int, std::vector<RingElement>>> parts) {
  TensorElement t;
  t.deg = deg;
  for (auto& [i, v] : parts) t.c.emplace(i, std::move(v));
  return t;
}

// One degree-zero gauge per chart along the direction mu, with small random
// coordinates so the overlap algebra sees honest inverter powers.
std::vector<TensorElement> chart_gauges(const CechEnd& L, int mu, uint64_t seed, int terms) {
  std::vector<TensorElement> a;
  for (int i = 0; i < L.cover.charts(); ++i) {
    const int f = L.chart_factor(i);
    kt::RandomPolys gen(L.fac[f].K->R, seed + static_cast<uint64_t>(i));
    std::vector<RingElement> v;
    for (int r = 0; r < L.endrank(f, 0); ++r) v.push_back(gen.element(terms, 1));
    a.push_back(tv(0, {{mu, v}}));
  }
  return a;
}

}  // namespace

TEST_CASE("localizations invert their charts and clear denominators") {
  RingPtr R = kt::Qx();
  RingElement x = re_var(R, 0);
  AffineCover C = affine_cover(R, {x, x - re_one(R)});
  REQUIRE(C.charts() == 2);
  REQUIRE(C.locs.size() == 4);
  REQUIRE(C.locs[0].alpha.empty());

  REQUIRE_THROWS_WITH(affine_cover(R, {x, x * x}), ContainsSubstring("unit ideal"));
  REQUIRE_THROWS_WITH(affine_cover(R, {x, re_zero(R)}), ContainsSubstring("zero element"));
  RingPtr W = PolyRing::make_str({"w"}, {});
  REQUIRE_THROWS_WITH(affine_cover(W, {re_var(W, 0), re_var(W, 0) - re_one(W)}),
                      ContainsSubstring("inverter name"));

  const int l0 = C.index.at({0});
  const int l01 = C.index.at({0, 1});
  const Localization& L0 = C.locs[l0];
  RingElement w = re_var(L0.R, 1);

  // w is an honest inverse on its chart
  REQUIRE(w * cech_restrict(C, 0, l0, x) == re_one(L0.R));
  REQUIRE(C.locs[l01].u == x * (x - re_one(R)));

  // restriction through a chart agrees with the direct arrow
  RingElement p = kt::rp(R, "x^3-2*x+1");
  REQUIRE(cech_restrict(C, l0, l01, cech_restrict(C, 0, l0, p)) ==
          cech_restrict(C, 0, l01, p));
  RingElement wo = cech_restrict(C, l0, l01, w);
  REQUIRE(wo * cech_restrict(C, 0, l01, x) == re_one(C.locs[l01].R));
  REQUIRE_THROWS_WITH(cech_restrict(C, l01, l0, re_one(C.locs[l01].R)),
                      ContainsSubstring("inclusions"));

  // clearing x^2 against 3 + 1/x leaves a polynomial, checked on the nose
  REQUIRE(pull_down(C, 0, l0, 0, re_const(L0.R, 3) + w, 2) == kt::rp(R, "3*x^2+x"));
  REQUIRE_THROWS_WITH(pull_down(C, 0, l0, 0, w * w, 1), ContainsSubstring("clearing power"));

  // 1/(x(x-1)) loses its pole at x-1 after one power
  RingElement w01 = re_var(C.locs[l01].R, 1);
  REQUIRE(pull_down(C, l0, l01, 1, w01, 1) == w);

  std::vector<RingElement> cs = partition_of_unity(C, 3);
  RingElement s = re_zero(R);
  for (int i = 0; i < 2; ++i) s = s + cs[i] * re_pow(C.u[i], 3);
  REQUIRE(s == re_one(R));
}

TEST_CASE("endomorphisms glue into a cover-indexed algebra") {
  RingPtr R = kt::Qx();
  RingElement x = re_var(R, 0);
  AffineCover C = affine_cover(R, {x, x - re_one(R)});
  CechEnd L = cech_end(C, koszul_complex(R, {kt::rp(R, "x^2")}).K);

  REQUIRE(L.top() == 1);
  REQUIRE(L.level[0].size() == 2);
  REQUIRE(L.level[1].size() == 1);
  REQUIRE(L.fac[L.factor_of({0, 1})].alpha == std::vector<int>{0, 1});

  // x^2 becomes a unit on the first chart, so the complex contracts there;
  // on the second it keeps its cohomology
  REQUIRE(is_exact_at(L.fac[L.chart_factor(0)].E.E.H, 0));
  REQUIRE(!is_exact_at(L.fac[L.chart_factor(1)].E.E.H, 0));
  REQUIRE(h_dim(L.global.E.H, 1) == 2);

  // a three-chart cover passes the internal simplicial screening
  AffineCover C3 = affine_cover(R, {x, x - re_one(R), x + re_one(R)});
  CechEnd L3 = cech_end(C3, koszul_complex(R, {kt::rp(R, "x^2")}).K);
  REQUIRE(L3.top() == 2);
  REQUIRE(L3.fac.size() == 7);

  // a non-resolution is refused chart by chart, naming the offender
  REQUIRE_THROWS_WITH(cech_end(C, koszul_complex(R, {x, x}).K),
                      ContainsSubstring("below degree zero persists over chart {1}"));
}

TEST_CASE("the total differential squares to zero and extends the edge") {
  RingPtr R = kt::Qx();
  RingElement x = re_var(R, 0);
  CechEnd L = cech_end(affine_cover(R, {x, x - re_one(R)}),
                       koszul_complex(R, {kt::rp(R, "x^2")}).K);

  TotalCochain T = total_cochain(L);
  REQUIRE(T.certified);
  REQUIRE(T.lo == -1);
  REQUIRE(T.hi == 2);

  // a mixed cochain with inverter-heavy coordinates still squares to zero
  CechVector z = cech_zero(L, 0);
  for (int i = 0; i < 2; ++i) {
    const int f = L.chart_factor(i);
    kt::RandomPolys gen(L.fac[f].K->R, 23 + static_cast<uint64_t>(i));
    z.comp[f] = {gen.element(2, 2), gen.element(2, 2)};
  }
  const int pf = L.factor_of({0, 1});
  z.comp[pf] = {kt::RandomPolys(L.fac[pf].K->R, 29).element(2, 2)};
  REQUIRE(cech_is_zero(cech_D(L, cech_D(L, z))));

  // global cochains ride along the edge as a chain map
  std::vector<RingElement> xi0 = {kt::rp(R, "x"), re_one(R)};
  CechVector dz = cech_D(L, edge_inclusion(L, 0, xi0));
  CechVector want = edge_inclusion(L, 1, mat_apply(L.global.E.H->diff(0), xi0));
  REQUIRE(cech_is_zero(cech_sub(L, dz, want)));

  // over a one-chart cover the total complex is the endomorphism complex
  CechEnd L1 = cech_end(affine_cover(R, {re_one(R)}),
                        koszul_complex(R, {kt::rp(R, "x^2")}).K);
  REQUIRE(L1.top() == 0);
  REQUIRE(total_cochain(L1).certified);
}

TEST_CASE("total cocycles normalize onto global representatives") {
  RingPtr R = kt::Qx();
  RingElement x = re_var(R, 0);
  CechEnd L = cech_end(affine_cover(R, {x, x - re_one(R)}),
                       koszul_complex(R, {kt::rp(R, "x^2")}).K);
  CohomologyPresentation H1 = cohomology_presentation(L.global.E.H, 1);
  REQUIRE(kdim(H1.pres) == 2);
  ColumnSolver ks(H1.kernel_gens);

  // a pure overlap cocycle built from the identity times 1/(x(x-1)) bounds
  const int pf = L.factor_of({0, 1});
  RingElement w01 = re_var(L.fac[pf].K->R, 1);
  CechVector z = cech_zero(L, 1);
  z.comp[pf] = {w01, w01};
  EdgeNormalization nz = normalize_to_edge(L, z);
  REQUIRE(vec_is_zero(nz.xi));
  REQUIRE(cech_is_zero(cech_sub(L, z, cech_D(L, nz.b))));

  // shifting a global representative by an exact total cochain does not move
  // its class, and the class stays visibly nonzero
  std::vector<RingElement> xi = {x};
  CechVector b = cech_zero(L, 0);
  for (int i = 0; i < 2; ++i) {
    const int f = L.chart_factor(i);
    kt::RandomPolys gen(L.fac[f].K->R, 7 + static_cast<uint64_t>(i));
    b.comp[f] = {gen.element(2, 1), gen.element(2, 1)};
  }
  b.comp[pf] = {kt::RandomPolys(L.fac[pf].K->R, 11).element(2, 1)};
  CechVector moved = cech_add(L, edge_inclusion(L, 1, xi), cech_D(L, b));
  EdgeNormalization mz = normalize_to_edge(L, moved);

  LinSolveResult diff = ks.solve(vec_sub(mz.xi, xi));
  REQUIRE(diff.feasible);
  REQUIRE(class_is_zero(H1.pres, diff.u));
  LinSolveResult cls = ks.solve(mz.xi);
  REQUIRE(cls.feasible);
  REQUIRE(!class_is_zero(H1.pres, cls.u));

  REQUIRE_THROWS_WITH(normalize_to_edge(L, edge_inclusion(L, 0, {re_one(R), re_zero(R)})),
                      ContainsSubstring("expects a cocycle"));
}

TEST_CASE("first-order descent data match the global tangent") {
  RingPtr R = kt::Qx();
  RingElement x = re_var(R, 0);
  CechEnd L = cech_end(affine_cover(R, {x, x - re_one(R)}),
                       koszul_complex(R, {kt::rp(R, "x^2")}).K);
  ArtinRing De = make_artin({"e"}, {"e^2"});

  DescentEnumeration en = descent_mc(L, De);
  REQUIRE(en.first_order_dim == 2);
  REQUIRE(en.reps.size() == 2);
  REQUIRE(en.obstructed.empty());

  // distinct tangent classes stay distinct through the gluing complex
  FirstOrderDecision far = descent_equivalent_first_order(L, De, en.reps[0], en.reps[1]);
  REQUIRE(!far.equivalent);
  REQUIRE(!far.classes.empty());

  // chartwise exponentials move a datum to an equivalent one
  std::vector<TensorElement> a = chart_gauges(L, 0, 1311, 2);
  DescentDatum tw = twist_descent_datum(L, De, en.reps[0], a);
  REQUIRE(verify_descent_equivalence(L, De, en.reps[0], tw, a));
  REQUIRE(descent_equivalent_first_order(L, De, en.reps[0], tw).equivalent);

  // over the ground field there is exactly the trivial datum
  ArtinRing K0 = make_artin({"t"}, {"t"});
  DescentEnumeration none = descent_mc(L, K0);
  REQUIRE(none.first_order_dim == 0);
  REQUIRE(none.reps.size() == 1);
  REQUIRE(tens_is_zero(L.fac[L.chart_factor(0)].E.L, none.reps[0].x[0]));

  // a one-chart cover reproduces the plain deformation count
  CechEnd L1 = cech_end(affine_cover(R, {re_one(R)}),
                        koszul_complex(R, {kt::rp(R, "x^2")}).K);
  DescentEnumeration plain = descent_mc(L1, De);
  REQUIRE(plain.first_order_dim == 2);
  REQUIRE(plain.reps.size() == 2);
  REQUIRE(!descent_equivalent_first_order(L1, De, plain.reps[0], plain.reps[1]).equivalent);
}

TEST_CASE("descent along a surface model and its obstruction") {
  RingPtr R = kt::Qxy();
  RingElement x = re_var(R, 0);
  CechEnd L = cech_end(affine_cover(R, {x, x - re_one(R)}),
                       koszul_complex(R, {kt::rp(R, "x^2"), kt::rp(R, "y")}).K);
  REQUIRE(h_dim(L.global.E.H, 1) == 4);
  REQUIRE(h_dim(L.global.E.H, 2) == 2);
  REQUIRE(total_cochain(L).certified);

  ArtinRing B = make_artin({"t"}, {"t^2"});
  ArtinRing A3 = make_artin({"t"}, {"t^3"});
  SmallExtension ext = small_extension(A3, B);

  DescentEnumeration en = descent_mc(L, B);
  REQUIRE(en.first_order_dim == 4);
  REQUIRE(en.reps.size() == 4);
  REQUIRE(en.obstructed.empty());

  // a twisted datum carries honest defects through the small extension, and
  // the obstruction they assemble into dies on every chart
  std::vector<TensorElement> a = chart_gauges(L, 0, 1723, 1);
  DescentDatum tw = twist_descent_datum(L, B, en.reps[0], a);
  DescentObstruction ob = descent_obstruction(L, ext, tw);
  REQUIRE(!ob.classes.empty());
  REQUIRE(ob.vanishes);
  REQUIRE(ob.edge_killed);

  // and indeed every first-order class extends over the thicker base
  DescentEnumeration deep = descent_mc(L, A3);
  REQUIRE(deep.obstructed.empty());
  REQUIRE(deep.reps.size() == 4);
}

TEST_CASE("three charts close their gluing on the triple overlap") {
  RingPtr R = kt::Qx();
  RingElement x = re_var(R, 0);
  AffineCover C = affine_cover(R, {x, x - re_one(R), x + re_one(R)});
  CechEnd L = cech_end(C, koszul_complex(R, {kt::rp(R, "x^2")}).K);
  REQUIRE(total_cochain(L).certified);

  ArtinRing B = make_artin({"t"}, {"t^2"});
  ArtinRing A3 = make_artin({"t"}, {"t^3"});
  SmallExtension ext = small_extension(A3, B);

  DescentEnumeration en = descent_mc(L, B);
  REQUIRE(en.first_order_dim == 2);
  REQUIRE(en.reps.size() == 2);

  // twisting by three unrelated chart gauges makes every pair glue through a
  // nontrivial exponential; closure on the triple overlap is certified inside
  std::vector<TensorElement> a = chart_gauges(L, 0, 4177, 2);
  DescentDatum tw = twist_descent_datum(L, B, en.reps[1], a);
  int live = 0;
  for (const auto& [ij, g] : tw.m)
    if (!tens_is_zero(L.fac[L.factor_of({ij.first, ij.second})].E.L, g)) ++live;
  REQUIRE(live == 3);
  REQUIRE(verify_descent_equivalence(L, B, en.reps[1], tw, a));
  REQUIRE(descent_equivalent_first_order(L, B, en.reps[1], tw).equivalent);

  // the staircase clears gluing and closure defects from the deepest level
  DescentObstruction ob = descent_obstruction(L, ext, tw);
  REQUIRE(!ob.classes.empty());
  REQUIRE(ob.vanishes);
  REQUIRE(ob.edge_killed);
}
