#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"

using namespace koszul;

static const std::vector<std::string> XY = {"x", "y"};

TEST_CASE("basic parses") {
  Poly p = parse_poly("x^2 - y", XY);
  CHECK(p.t.size() == 2);
  CHECK(p.lead().m == Monomial::var(0, 2));
  CHECK(p.lead().c == 1);

  CHECK(parse_poly("3/2*x*y + 1", XY) ==
        add(poly_mono(mul(Monomial::var(0), Monomial::var(1)), rat(3, 2)), poly_const(1),
            TermOrder::degrevlex));
  CHECK(parse_poly("-x + x", XY).is_zero());
  CHECK(parse_poly("(x + y)*(x - y)", XY) == parse_poly("x^2 - y^2", XY));
  CHECK(parse_poly("2*3", XY) == poly_const(6));
  CHECK(parse_poly("  - y ", XY) == neg(poly_mono(Monomial::var(1))));
}

TEST_CASE("parse errors carry a column") {
  auto col = [](const std::string& s) {
    try {
      parse_poly(s, XY);
    } catch (const parse_error& e) {
      return e.column;
    }
    return -1;
  };
  CHECK(col("x + z") == 5);      // unknown variable, reported at its start
  CHECK(col("x + ") == 5);       // missing operand
  CHECK(col("(x + y") == 7);     // unclosed paren
  CHECK(col("x y") == 3);        // trailing input
  CHECK(col("x + 1/") == 7);     // missing denominator
  CHECK(col("x ^ x") == 5);      // exponent must be a number
}

TEST_CASE("printing is canonical") {
  auto R = kt::Qxy();
  CHECK(to_string(kt::rp(R, "y + x^2")) == "x^2 + y");
  CHECK(to_string(kt::rp(R, "-x - 1")) == "-x - 1");
  CHECK(to_string(kt::rp(R, "x - y")) == "x - y");
  CHECK(to_string(re_zero(R)) == "0");
  CHECK(to_string(kt::rp(R, "1/2*x*y^2 - 3*x")) == "1/2*x*y^2 - 3*x");
  CHECK(to_string(re_const(R, rat(-5, 3))) == "-5/3");
}

TEST_CASE("parse then print round-trips on random input") {
  for (TermOrder o : {TermOrder::degrevlex, TermOrder::lex, TermOrder::deglex}) {
    auto R = PolyRing::make_str({"x", "y", "z"}, {}, o);
    kt::RandomPolys gen(R, 911);
    for (int it = 0; it < 120; ++it) {
      RingElement a = gen.element(5, 4);
      RingElement back = kt::rp(R, to_string(a));
      CHECK(back == a);
    }
  }
}

TEST_CASE("exponent bounds are enforced") {
  CHECK_THROWS_AS(parse_poly("x^300", XY), error);
  CHECK(parse_poly("x^0", XY) == poly_const(1));
}
