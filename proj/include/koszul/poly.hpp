#pragma once
// Sparse multivariate polynomials over Q.  Terms are kept sorted in strictly
// decreasing order (leading term first) with respect to the active term
// order, with no zero coefficients; every operation preserves that canonical
// form.  Coefficients are exact GMP rationals.

#include <algorithm>
#include <vector>

#include <gmpxx.h>

#include "koszul/monomial.hpp"

namespace koszul {

inline mpq_class rat(long num, long den = 1) {
  mpq_class q(num, den);
  q.canonicalize();
  return q;
}

inline mpq_class rat_from_string(const std::string& s) {
  mpq_class q;
  if (q.set_str(s, 10) != 0) throw error("bad rational literal: " + s);
  require(q.get_den() != 0, "bad rational literal (zero denominator): " + s);
  q.canonicalize();
  return q;
}

struct Term {
  Monomial m;
  mpq_class c;
};

struct Poly {
  std::vector<Term> t;  // strictly decreasing, no zero coefficients

  bool is_zero() const { return t.empty(); }
  const Term& lead() const {
    require(!t.empty(), "poly: leading term of zero");
    return t.front();
  }
  int total_degree() const {  // -1 for the zero polynomial
    int d = -1;
    for (const Term& x : t) d = std::max(d, static_cast<int>(x.m.deg));
    return d;
  }
  bool operator==(const Poly& o) const {
    if (t.size() != o.t.size()) return false;
    for (size_t i = 0; i < t.size(); ++i)
      if (t[i].m != o.t[i].m || t[i].c != o.t[i].c) return false;
    return true;
  }
  bool operator!=(const Poly& o) const { return !(*this == o); }
};

// Sort + merge an arbitrary term list into canonical form.
inline Poly poly_normalize(std::vector<Term> ts, TermOrder o) {
  std::sort(ts.begin(), ts.end(), [o](const Term& a, const Term& b) {
    return mono_cmp(a.m, b.m, o) > 0;
  });
  Poly p;
  for (Term& x : ts) {
    if (x.c == 0) continue;
    if (!p.t.empty() && p.t.back().m == x.m) {
      p.t.back().c += x.c;
      if (p.t.back().c == 0) p.t.pop_back();
    } else {
      p.t.push_back(std::move(x));
    }
  }
  return p;
}

inline Poly poly_zero() { return Poly{}; }

inline Poly poly_const(const mpq_class& c) {
  Poly p;
  if (c != 0) p.t.push_back({Monomial::one(), c});
  return p;
}

inline Poly poly_mono(const Monomial& m, const mpq_class& c = 1) {
  Poly p;
  if (c != 0) p.t.push_back({m, c});
  return p;
}

inline Poly add(const Poly& a, const Poly& b, TermOrder o) {
  Poly r;
  r.t.reserve(a.t.size() + b.t.size());
  size_t i = 0, j = 0;
  while (i < a.t.size() && j < b.t.size()) {
    int c = mono_cmp(a.t[i].m, b.t[j].m, o);
    if (c > 0) {
      r.t.push_back(a.t[i++]);
    } else if (c < 0) {
      r.t.push_back(b.t[j++]);
    } else {
      mpq_class s = a.t[i].c + b.t[j].c;
      if (s != 0) r.t.push_back({a.t[i].m, s});
      ++i, ++j;
    }
  }
  for (; i < a.t.size(); ++i) r.t.push_back(a.t[i]);
  for (; j < b.t.size(); ++j) r.t.push_back(b.t[j]);
  return r;
}

inline Poly neg(const Poly& a) {
  Poly r = a;
  for (Term& x : r.t) x.c = -x.c;
  return r;
}

inline Poly sub(const Poly& a, const Poly& b, TermOrder o) { return add(a, neg(b), o); }

inline Poly scale(const Poly& a, const mpq_class& c) {
  if (c == 0) return Poly{};
  Poly r = a;
  for (Term& x : r.t) x.c *= c;
  return r;
}

// a * (c . m); multiplying by a single term preserves the term order.
inline Poly mul_term(const Poly& a, const Monomial& m, const mpq_class& c) {
  if (c == 0) return Poly{};
  Poly r;
  r.t.reserve(a.t.size());
  for (const Term& x : a.t) r.t.push_back({mul(x.m, m), x.c * c});
  return r;
}

inline Poly mul(const Poly& a, const Poly& b, TermOrder o) {
  Poly r;
  for (const Term& x : a.t) r = add(r, mul_term(b, x.m, x.c), o);
  return r;
}

inline Poly pow(const Poly& a, int k, TermOrder o) {
  require(k >= 0, "poly: negative power");
  Poly r = poly_const(1);
  for (int i = 0; i < k; ++i) r = mul(r, a, o);
  return r;
}

}  // namespace koszul
