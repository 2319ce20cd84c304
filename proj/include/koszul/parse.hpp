#pragma once
// Text form of polynomials.  The grammar is
//   expr    := ['+'|'-'] product (('+'|'-') product)*
//   product := atom ('*' atom)*
//   atom    := number | ident ['^' uint] | '(' expr ')'
//   number  := uint ['/' uint]
// and printing produces the unique canonical form (terms in decreasing
// order, coefficients as reduced fractions), so parse . print = id.

#include <cctype>
#include <string>
#include <vector>

#include "koszul/poly.hpp"

namespace koszul {

struct parse_error : error {
  int column;  // 1-based
  parse_error(const std::string& msg, int col)
      : error(msg + " (column " + std::to_string(col) + ")"), column(col) {}
};

namespace detail {

struct PolyParser {
  const std::string& s;
  const std::vector<std::string>& names;
  TermOrder ord;
  size_t i = 0;

  void skip() {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  }
  [[noreturn]] void fail(const std::string& msg) { throw parse_error(msg, static_cast<int>(i) + 1); }

  bool eat(char c) {
    skip();
    if (i < s.size() && s[i] == c) {
      ++i;
      return true;
    }
    return false;
  }

  long uint_lit() {
    skip();
    size_t start = i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
    if (i == start) fail("expected number");
    return std::stol(s.substr(start, i - start));
  }

  Poly atom() {
    skip();
    if (i >= s.size()) fail("unexpected end of input");
    char c = s[i];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      size_t start = i;
      while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
      std::string num = s.substr(start, i - start);
      if (eat('/')) {
        skip();
        size_t dstart = i;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
        if (i == dstart) fail("expected denominator");
        num += "/" + s.substr(dstart, i - dstart);
      }
      return poly_const(rat_from_string(num));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      size_t start = i;
      while (i < s.size() && (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_')) ++i;
      std::string id = s.substr(start, i - start);
      int vi = -1;
      for (size_t k = 0; k < names.size(); ++k)
        if (names[k] == id) vi = static_cast<int>(k);
      if (vi < 0) {
        i = start;
        fail("unknown variable '" + id + "'");
      }
      int e = 1;
      if (eat('^')) e = static_cast<int>(uint_lit());
      return poly_mono(Monomial::var(vi, e));
    }
    if (c == '(') {
      ++i;
      Poly p = expr();
      if (!eat(')')) fail("expected ')'");
      return p;
    }
    fail(std::string("unexpected character '") + c + "'");
  }

  Poly product() {
    Poly p = atom();
    while (eat('*')) p = mul(p, atom(), ord);
    return p;
  }

  Poly expr() {
    skip();
    bool negate = false;
    if (eat('-')) negate = true;
    else eat('+');
    Poly p = product();
    if (negate) p = neg(p);
    for (;;) {
      skip();
      if (i < s.size() && (s[i] == '+' || s[i] == '-')) {
        bool minus = s[i] == '-';
        ++i;
        Poly q = product();
        p = minus ? sub(p, q, ord) : add(p, q, ord);
      } else {
        break;
      }
    }
    return p;
  }
};

}  // namespace detail

inline Poly parse_poly(const std::string& src, const std::vector<std::string>& names,
                       TermOrder ord = TermOrder::degrevlex) {
  detail::PolyParser p{src, names, ord};
  Poly r = p.expr();
  p.skip();
  if (p.i != src.size()) p.fail("trailing input");
  return r;
}

inline std::string print_monomial(const Monomial& m, const std::vector<std::string>& names) {
  std::string out;
  for (size_t i = 0; i < names.size(); ++i) {
    if (m.e[i] == 0) continue;
    if (!out.empty()) out += "*";
    out += names[i];
    if (m.e[i] > 1) out += "^" + std::to_string(static_cast<int>(m.e[i]));
  }
  return out;
}

inline std::string print_poly(const Poly& p, const std::vector<std::string>& names) {
  if (p.is_zero()) return "0";
  std::string out;
  for (size_t k = 0; k < p.t.size(); ++k) {
    mpq_class c = p.t[k].c;
    bool negative = c < 0;
    if (k == 0) {
      if (negative) out += "-";
    } else {
      out += negative ? " - " : " + ";
    }
    mpq_class a = abs(c);
    std::string mono = print_monomial(p.t[k].m, names);
    if (mono.empty()) {
      out += a.get_str();
    } else if (a == 1) {
      out += mono;
    } else {
      out += a.get_str() + "*" + mono;
    }
  }
  return out;
}

}  // namespace koszul
