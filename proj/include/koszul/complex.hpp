#pragma once
// Bounded cochain complexes of finite free modules.  A complex stores its
// nonzero degree window [lo, hi], the ranks inside it, and the differentials
// d_k : C^k -> C^{k+1} as matrices (columns are images of basis vectors).
// Construction checks shapes and d . d = 0, so a ComplexPtr is always a
// genuine complex.

#include <memory>
#include <vector>

#include "koszul/matrix.hpp"

namespace koszul {

struct CochainComplex {
  RingPtr R;
  int lo = 0, hi = 0;
  std::vector<int> ranks_;           // ranks_[k - lo], k in [lo, hi]
  std::vector<FreeModuleMatrix> d_;  // d_[k - lo] : C^k -> C^{k+1}, k in [lo, hi)

  int rank(int k) const { return (k < lo || k > hi) ? 0 : ranks_[k - lo]; }

  FreeModuleMatrix diff(int k) const {
    if (k >= lo && k < hi) return d_[k - lo];
    return FreeModuleMatrix(R, rank(k + 1), rank(k));
  }

  int total_rank() const {
    int s = 0;
    for (int r : ranks_) s += r;
    return s;
  }
};

using ComplexPtr = std::shared_ptr<const CochainComplex>;

inline ComplexPtr make_complex(RingPtr R, int lo, std::vector<int> ranks,
                               std::vector<FreeModuleMatrix> d) {
  require(!ranks.empty(), "complex: empty rank list");
  require(d.size() + 1 == ranks.size(), "complex: need one differential per adjacent pair");
  auto c = std::make_shared<CochainComplex>();
  c->R = std::move(R);
  c->lo = lo;
  c->hi = lo + static_cast<int>(ranks.size()) - 1;
  for (int r : ranks) require(r >= 0, "complex: negative rank");
  c->ranks_ = std::move(ranks);
  for (size_t i = 0; i < d.size(); ++i) {
    require(d[i].R && d[i].R->same_as(*c->R), "complex: differential over the wrong ring");
    require(d[i].rows == c->ranks_[i + 1] && d[i].cols == c->ranks_[i],
            "complex: differential shape mismatch at degree " + std::to_string(lo + (int)i));
  }
  c->d_ = std::move(d);
  for (size_t i = 0; i + 1 < c->d_.size(); ++i)
    require(mat_mul(c->d_[i + 1], c->d_[i]).is_zero(),
            "complex: d . d != 0 at degree " + std::to_string(lo + (int)i));
  return c;
}

// R placed in degree 0.
inline ComplexPtr unit_complex(const RingPtr& R) { return make_complex(R, 0, {1}, {}); }

// (C[m])^k = C^{k+m}, with differential scaled by (-1)^m.
inline ComplexPtr shift(const ComplexPtr& C, int m) {
  std::vector<FreeModuleMatrix> d = C->d_;
  if (std::abs(m) % 2 == 1)
    for (FreeModuleMatrix& x : d) x = mat_neg(x);
  return make_complex(C->R, C->lo - m, C->ranks_, std::move(d));
}

inline bool complexes_equal(const ComplexPtr& a, const ComplexPtr& b) {
  if (a.get() == b.get()) return true;
  if (!a || !b) return false;
  if (!a->R->same_as(*b->R) || a->lo != b->lo || a->hi != b->hi || a->ranks_ != b->ranks_)
    return false;
  for (size_t i = 0; i < a->d_.size(); ++i)
    if (!mat_equal(a->d_[i], b->d_[i])) return false;
  return true;
}

}  // namespace koszul
