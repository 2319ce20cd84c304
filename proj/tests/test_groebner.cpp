#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"

using namespace koszul;

static Poly P(const std::string& s, TermOrder o = TermOrder::degrevlex) {
  return parse_poly(s, {"x", "y"}, o);
}

TEST_CASE("textbook basis, frozen") {
  // ideal (x^2 - y, x^3 - x) in Q[x,y], degrevlex
  auto gb = groebner_basis({P("x^2 - y"), P("x^3 - x")}, TermOrder::degrevlex);
  REQUIRE(gb.size() == 3);
  // reduced basis in ascending leading-term order
  CHECK(gb[0] == P("y^2 - y"));
  CHECK(gb[1] == P("x*y - x"));
  CHECK(gb[2] == P("x^2 - y"));
}

TEST_CASE("normal forms, frozen") {
  std::vector<Poly> basis = {P("x^2 - y")};
  CHECK(normal_form(P("x^2*y + y"), basis, TermOrder::degrevlex) == P("y^2 + y"));
  CHECK(normal_form(P("x^2 - y"), basis, TermOrder::degrevlex).is_zero());
  CHECK(normal_form(P("x + 1"), basis, TermOrder::degrevlex) == P("x + 1"));
  // non-monic reducer
  std::vector<Poly> basis2 = {P("2*x - y")};
  CHECK(normal_form(P("x"), basis2, TermOrder::degrevlex) == P("1/2*y"));
}

TEST_CASE("buchberger closure: S-vectors of the output reduce to zero") {
  auto run = [](std::vector<std::string> gens_s, TermOrder o) {
    std::vector<Poly> gens;
    for (const auto& s : gens_s) gens.push_back(P(s, o));
    PolyGB g = poly_gb(gens, o);
    const auto& basis = g.gb.g;
    for (size_t i = 0; i < basis.size(); ++i)
      for (size_t j = i + 1; j < basis.size(); ++j) {
        const ModMono &a = basis[i].t.front().k, &b = basis[j].t.front().k;
        ModMono l{a.pos, lcm(a.m, b.m)};
        ModVec s = modvec_add(modvec_mul_term(basis[i], div(l.m, a.m), 1),
                              modvec_mul_term(basis[j], div(l.m, b.m), -1), g.gb.ord);
        CHECK(g.gb.reduce(s).is_zero());
      }
  };
  run({"x^2 - y", "x^3 - x"}, TermOrder::degrevlex);
  run({"x*y - 1", "y^2 - x"}, TermOrder::degrevlex);
  run({"x*y - 1", "y^2 - x"}, TermOrder::lex);
  run({"x^2 + y^2 - 1", "x - y^3"}, TermOrder::lex);
}

TEST_CASE("membership certificates both ways") {
  // the computed basis and the generators span the same ideal, with witnesses
  auto R = kt::Qxy();
  std::vector<RingElement> gens = {kt::rp(R, "x^2 - y"), kt::rp(R, "x^3 - x")};
  auto gb = groebner_basis({gens[0].p, gens[1].p}, R->order);

  FreeModuleMatrix G = mat_from_cols(R, 1, {{gens[0]}, {gens[1]}});
  for (const Poly& b : gb) {
    auto sol = solve_linear(G, {RingElement{R, b}});
    CHECK(sol.feasible);
  }
  std::vector<std::vector<RingElement>> cols;
  for (const Poly& b : gb) cols.push_back({RingElement{R, b}});
  FreeModuleMatrix B = mat_from_cols(R, 1, cols);
  for (const RingElement& g : gens) CHECK(solve_linear(B, {g}).feasible);
}

TEST_CASE("random ideal members reduce to zero") {
  auto R = kt::Qxy();
  kt::RandomPolys gen(R, 5150);
  for (int it = 0; it < 25; ++it) {
    RingElement f = gen.element(3, 3), g = gen.element(3, 3);
    if (f.is_zero() || g.is_zero()) continue;
    auto gb = groebner_basis({f.p, g.p}, R->order);
    for (int k = 0; k < 4; ++k) {
      RingElement a = gen.element(2, 2), b = gen.element(2, 2);
      Poly member = add(mul(a.p, f.p, R->order), mul(b.p, g.p, R->order), R->order);
      CHECK(normal_form(member, gb, R->order).is_zero());
    }
  }
}

TEST_CASE("normal form is a linear projection") {
  auto R = kt::Qxy();
  kt::RandomPolys gen(R, 640);
  auto gb = groebner_basis({P("x^2 - y"), P("x*y^2 - 1")}, R->order);
  for (int it = 0; it < 30; ++it) {
    Poly a = gen.element(4, 4).p, b = gen.element(4, 4).p;
    Poly na = normal_form(a, gb, R->order), nb = normal_form(b, gb, R->order);
    CHECK(normal_form(add(a, b, R->order), gb, R->order) == add(na, nb, R->order));
    CHECK(normal_form(na, gb, R->order) == na);
  }
}

TEST_CASE("lex elimination finds the eliminant") {
  // (x*y - 1, y^2 - x) in lex with x first: the basis must contain a poly in y only
  auto gb = groebner_basis({parse_poly("x*y - 1", {"x", "y"}, TermOrder::lex),
                            parse_poly("y^2 - x", {"x", "y"}, TermOrder::lex)},
                           TermOrder::lex);
  bool found = false;
  for (const Poly& g : gb) {
    bool only_y = true;
    for (const Term& t : g.t)
      if (t.m.e[0] != 0) only_y = false;
    if (only_y && !g.is_zero()) found = true;
  }
  CHECK(found);
}

TEST_CASE("position weights are detected for graded systems") {
  // two columns with linear entries plus constant tags: weights payload 0, tag 1
  auto R = kt::Qxy();
  ModuleOrder ord{R->order, 1};
  std::vector<ModVec> vs;
  vs.push_back(modvec_normalize({{{0, Monomial::var(0)}, 1}, {{1, Monomial::one()}, 1}}, ord));
  vs.push_back(modvec_normalize({{{0, Monomial::var(1)}, 1}, {{2, Monomial::one()}, 1}}, ord));
  auto wt = detect_weights(vs, 3);
  REQUIRE(wt.has_value());
  CHECK((*wt)[0] == 0);
  CHECK((*wt)[1] == 1);
  CHECK((*wt)[2] == 1);
  for (const ModVec& v : vs) CHECK(is_homogeneous(v, *wt));

  // an inhomogeneous vector defeats detection
  vs.push_back(modvec_normalize({{{0, Monomial::var(0, 2)}, 1}, {{0, Monomial::one()}, 1}}, ord));
  CHECK(!detect_weights(vs, 3).has_value());
}

TEST_CASE("degree-capped completion agrees with the full one below the cap") {
  // homogeneous module generators; compare normal forms of low-degree vectors
  auto R = kt::Qxy();
  ModuleOrder ord{R->order, 2};
  auto V = [&](std::initializer_list<std::tuple<int, Monomial, int>> ts) {
    std::vector<ModTerm> v;
    for (auto& [p, m, c] : ts) v.push_back({{p, m}, c});
    return modvec_normalize(std::move(v), ord);
  };
  Monomial x = Monomial::var(0), y = Monomial::var(1);
  std::vector<ModVec> gens = {
      V({{0, x, 1}, {1, y, 1}}),
      V({{0, y, 1}, {1, x, -1}}),
      V({{0, mul(x, x), 1}, {1, mul(x, y), 2}}),
  };
  auto wt = detect_weights(gens, 2);
  REQUIRE(wt.has_value());
  ModuleGB full = module_gb(gens, ord, 2, *wt);
  ModuleGB capped = module_gb(gens, ord, 2, *wt, 2, false);
  kt::RandomPolys gen(R, 4242);
  for (int it = 0; it < 40; ++it) {
    // random homogeneous vector of weighted degree <= 2
    std::vector<ModTerm> ts;
    std::uniform_int_distribution<int> pick(0, 1);
    for (int p = 0; p < 2; ++p)
      for (const Monomial& m : {Monomial::one(), x, y, mul(x, x), mul(x, y), mul(y, y)})
        if (pick(gen.rng)) ts.push_back({{p, m}, gen.coeff()});
    ModVec v = modvec_normalize(std::move(ts), ord);
    // keep only terms of weighted degree <= 2 (they all are, weights are 0)
    CHECK(modvec_equal(full.reduce(v), capped.reduce(v)));
  }
}
