#pragma once
// Shared fixtures for the test suite: stock rings and a seeded random
// polynomial source so failures reproduce.

#include <random>
#include <vector>

#include "koszul/linalg.hpp"
#include "koszul/ring.hpp"

namespace kt {

using namespace koszul;

inline RingPtr Qx() { return PolyRing::make_str({"x"}, {}); }
inline RingPtr Qxy() { return PolyRing::make_str({"x", "y"}, {}); }
inline RingPtr Qxyz() { return PolyRing::make_str({"x", "y", "z"}, {}); }

struct RandomPolys {
  std::mt19937_64 rng;
  RingPtr R;
  explicit RandomPolys(const RingPtr& ring, uint64_t seed) : rng(seed), R(ring) {}

  mpq_class coeff() {
    std::uniform_int_distribution<int> num(-6, 6), den(1, 4);
    return rat(num(rng), den(rng));
  }

  Monomial monomial(int maxdeg) {
    std::uniform_int_distribution<int> d(0, maxdeg);
    Monomial m;
    for (int i = 0; i < R->nvars(); ++i) {
      int e = d(rng);
      m = mul(m, Monomial::var(i, e));
    }
    return m;
  }

  RingElement element(int terms, int maxdeg) {
    std::vector<Term> ts;
    for (int k = 0; k < terms; ++k) ts.push_back({monomial(maxdeg), coeff()});
    return RingElement{R, poly_normalize(std::move(ts), R->order)};
  }
};

inline RingElement rp(const RingPtr& R, const std::string& s) { return re_parse(R, s); }

}  // namespace kt
