#pragma once
// Polynomial rings Q[x1..xn]/(relations) and their elements.  Rings are
// immutable shared values; the relation ideal is stored as a reduced
// Groebner basis computed at construction, and every element is kept in
// normal form with respect to it, so equality of elements is term-by-term
// equality of representatives.

#include <memory>
#include <string>
#include <vector>

#include "koszul/groebner.hpp"
#include "koszul/parse.hpp"

namespace koszul {

struct PolyRing;
using RingPtr = std::shared_ptr<const PolyRing>;

struct PolyRing {
  std::vector<std::string> names;
  TermOrder order = TermOrder::degrevlex;
  std::vector<Poly> rel_gb;  // reduced basis; empty for a free polynomial ring

  static RingPtr make(std::vector<std::string> names, std::vector<Poly> relations = {},
                      TermOrder o = TermOrder::degrevlex) {
    require(!names.empty() && names.size() <= Monomial::max_vars,
            "ring: variable count out of range");
    for (size_t i = 0; i < names.size(); ++i)
      for (size_t j = i + 1; j < names.size(); ++j)
        require(names[i] != names[j], "ring: duplicate variable name " + names[i]);
    auto r = std::make_shared<PolyRing>();
    r->names = std::move(names);
    r->order = o;
    if (!relations.empty()) {
      r->rel_gb = groebner_basis(relations, o);
      for (const Poly& g : r->rel_gb)
        require(g.total_degree() != 0, "ring: relations generate the unit ideal");
    }
    return r;
  }

  static RingPtr make_str(std::vector<std::string> names, const std::vector<std::string>& relations,
                          TermOrder o = TermOrder::degrevlex) {
    std::vector<Poly> rel;
    for (const std::string& s : relations) rel.push_back(parse_poly(s, names, o));
    return make(std::move(names), std::move(rel), o);
  }

  int nvars() const { return static_cast<int>(names.size()); }

  int var_index(const std::string& name) const {
    for (size_t i = 0; i < names.size(); ++i)
      if (names[i] == name) return static_cast<int>(i);
    return -1;
  }

  Poly reduce(const Poly& p) const {
    if (rel_gb.empty()) return p;
    return normal_form(p, rel_gb, order);
  }

  bool same_as(const PolyRing& o) const {
    if (this == &o) return true;
    if (names != o.names || order != o.order || rel_gb.size() != o.rel_gb.size()) return false;
    for (size_t i = 0; i < rel_gb.size(); ++i)
      if (rel_gb[i] != o.rel_gb[i]) return false;
    return true;
  }
};

struct RingElement {
  RingPtr R;
  Poly p;  // always reduced mod R->rel_gb

  RingElement() = default;
  RingElement(RingPtr ring, Poly raw) : R(std::move(ring)) { p = R->reduce(raw); }

  bool is_zero() const { return p.is_zero(); }
};

inline void assert_same_ring(const RingElement& a, const RingElement& b) {
  require(a.R && b.R && a.R->same_as(*b.R), "ring elements from different rings");
}

inline RingElement re_zero(const RingPtr& R) { return RingElement{R, Poly{}}; }
inline RingElement re_const(const RingPtr& R, const mpq_class& c) { return RingElement{R, poly_const(c)}; }
inline RingElement re_one(const RingPtr& R) { return re_const(R, 1); }
inline RingElement re_var(const RingPtr& R, int i) {
  require(i >= 0 && i < R->nvars(), "ring: variable index out of range");
  return RingElement{R, poly_mono(Monomial::var(i))};
}
inline RingElement re_parse(const RingPtr& R, const std::string& s) {
  return RingElement{R, parse_poly(s, R->names, R->order)};
}

inline RingElement operator+(const RingElement& a, const RingElement& b) {
  assert_same_ring(a, b);
  return RingElement{a.R, add(a.p, b.p, a.R->order)};
}
inline RingElement operator-(const RingElement& a, const RingElement& b) {
  assert_same_ring(a, b);
  return RingElement{a.R, sub(a.p, b.p, a.R->order)};
}
inline RingElement operator-(const RingElement& a) { return RingElement{a.R, neg(a.p)}; }
inline RingElement operator*(const RingElement& a, const RingElement& b) {
  assert_same_ring(a, b);
  return RingElement{a.R, mul(a.p, b.p, a.R->order)};
}
inline RingElement operator*(const mpq_class& c, const RingElement& a) {
  return RingElement{a.R, scale(a.p, c)};
}
inline bool operator==(const RingElement& a, const RingElement& b) {
  assert_same_ring(a, b);
  return a.p == b.p;
}
inline bool operator!=(const RingElement& a, const RingElement& b) { return !(a == b); }

inline RingElement re_pow(const RingElement& a, int k) {
  RingElement r = re_one(a.R);
  for (int i = 0; i < k; ++i) r = r * a;
  return r;
}

inline std::string to_string(const RingElement& a) { return print_poly(a.p, a.R->names); }

// Transport an element along a variable renaming / substitution given by
// images of the source generators in the target ring.
inline RingElement map_element(const RingElement& a, const RingPtr& target,
                               const std::vector<RingElement>& images) {
  require(static_cast<int>(images.size()) == a.R->nvars(),
          "map_element: wrong number of generator images");
  RingElement out = re_zero(target);
  for (const Term& t : a.p.t) {
    RingElement m = re_const(target, t.c);
    for (int i = 0; i < a.R->nvars(); ++i)
      for (int k = 0; k < t.m.e[i]; ++k) m = m * images[i];
    out = out + m;
  }
  return out;
}

}  // namespace koszul
