#pragma once
// Graded maps between complexes and the complex Hom(C, D).
//
// A GradedMap of degree k holds one matrix per source degree j, representing
// C^j -> D^{j+k}.  Hom(C, D)^k is the direct sum of those blocks; its basis
// lists blocks by ascending j, and within the block for j the elementary map
// (basis c of C^j) |-> (basis r of D^{j+k}) sits at offset r * rank_C(j) + c.
// The differential is d(phi) = d_D . phi - (-1)^k phi . d_C, both as an
// operation on GradedMaps and as the matrix of the Hom complex; the two agree
// by construction and the tests hold them to it.

#include <map>
#include <vector>

#include "koszul/complex.hpp"

namespace koszul {

struct GradedMap {
  ComplexPtr src, dst;
  int k = 0;
  std::map<int, FreeModuleMatrix> blocks_;  // j -> matrix of C^j -> D^{j+k}

  FreeModuleMatrix block(int j) const {
    auto it = blocks_.find(j);
    if (it != blocks_.end()) return it->second;
    return FreeModuleMatrix(src->R, dst->rank(j + k), src->rank(j));
  }

  void set_block(int j, FreeModuleMatrix m) {
    require(m.rows == dst->rank(j + k) && m.cols == src->rank(j),
            "graded map: block shape mismatch at degree " + std::to_string(j));
    if (m.is_zero()) blocks_.erase(j);
    else blocks_[j] = std::move(m);
  }

  bool is_zero() const {
    for (const auto& [j, m] : blocks_)
      if (!m.is_zero()) return false;
    return true;
  }
};

inline GradedMap gm_zero(const ComplexPtr& src, const ComplexPtr& dst, int k) {
  return GradedMap{src, dst, k, {}};
}

inline GradedMap gm_identity(const ComplexPtr& C) {
  GradedMap f = gm_zero(C, C, 0);
  for (int j = C->lo; j <= C->hi; ++j)
    if (C->rank(j) > 0) f.set_block(j, FreeModuleMatrix::identity(C->R, C->rank(j)));
  return f;
}

inline GradedMap gm_add(const GradedMap& a, const GradedMap& b) {
  require(complexes_equal(a.src, b.src) && complexes_equal(a.dst, b.dst) && a.k == b.k,
          "graded map add: incompatible maps");
  GradedMap r = a;
  for (const auto& [j, m] : b.blocks_) r.set_block(j, mat_add(r.block(j), m));
  return r;
}

inline GradedMap gm_scale(const GradedMap& a, const RingElement& q) {
  GradedMap r = gm_zero(a.src, a.dst, a.k);
  for (const auto& [j, m] : a.blocks_) r.set_block(j, mat_scale(m, q));
  return r;
}

inline GradedMap gm_scale(const GradedMap& a, const mpq_class& q) {
  return gm_scale(a, re_const(a.src->R, q));
}

inline GradedMap gm_neg(const GradedMap& a) { return gm_scale(a, mpq_class(-1)); }

inline GradedMap gm_sub(const GradedMap& a, const GradedMap& b) {
  return gm_add(a, gm_neg(b));
}

inline bool gm_equal(const GradedMap& a, const GradedMap& b) {
  if (!complexes_equal(a.src, b.src) || !complexes_equal(a.dst, b.dst) || a.k != b.k)
    return false;
  return gm_sub(a, b).is_zero();
}

// g after f
inline GradedMap gm_compose(const GradedMap& g, const GradedMap& f) {
  require(complexes_equal(f.dst, g.src), "graded map compose: middle complexes differ");
  GradedMap r = gm_zero(f.src, g.dst, f.k + g.k);
  for (int j = f.src->lo; j <= f.src->hi; ++j) {
    if (f.src->rank(j) == 0 || g.dst->rank(j + r.k) == 0) continue;
    r.set_block(j, mat_mul(g.block(j + f.k), f.block(j)));
  }
  return r;
}

// d(phi) = d_D . phi - (-1)^k phi . d_C
inline GradedMap gm_d(const GradedMap& phi) {
  GradedMap r = gm_zero(phi.src, phi.dst, phi.k + 1);
  int sgn = (std::abs(phi.k) % 2 == 0) ? 1 : -1;
  for (int j = phi.src->lo; j <= phi.src->hi; ++j) {
    if (phi.src->rank(j) == 0 || phi.dst->rank(j + phi.k + 1) == 0) continue;
    FreeModuleMatrix m = mat_mul(phi.dst->diff(j + phi.k), phi.block(j));
    FreeModuleMatrix n = mat_mul(phi.block(j + 1), phi.src->diff(j));
    r.set_block(j, sgn > 0 ? mat_sub(m, n) : mat_add(m, n));
  }
  return r;
}

inline bool is_chain_map(const GradedMap& phi) { return gm_d(phi).is_zero(); }

// [f, g] = f.g - (-1)^{|f||g|} g.f on endomorphism maps
inline GradedMap gm_bracket(const GradedMap& f, const GradedMap& g) {
  require(complexes_equal(f.src, f.dst) && complexes_equal(g.src, g.dst) &&
              complexes_equal(f.src, g.src),
          "bracket: needs endomorphisms of one complex");
  GradedMap fg = gm_compose(f, g), gf = gm_compose(g, f);
  int sgn = (std::abs(f.k * g.k) % 2 == 0) ? 1 : -1;
  return sgn > 0 ? gm_sub(fg, gf) : gm_add(fg, gf);
}

// ---- the Hom complex ----

struct HomComplex {
  ComplexPtr src, dst;  // C and D
  ComplexPtr H;         // Hom(C, D) as a complex

  struct Block {
    int j, offset, rows, cols;  // rows = rank_D(j+k), cols = rank_C(j)
  };
  std::map<int, std::vector<Block>> layout;  // degree k -> blocks by ascending j

  int rank(int k) const { return H->rank(k); }

  const std::vector<Block>& blocks_at(int k) const {
    static const std::vector<Block> none;
    auto it = layout.find(k);
    return it == layout.end() ? none : it->second;
  }

  // index of the elementary map (c of C^j) |-> (r of D^{j+k})
  int index_of(int k, int j, int r, int c) const {
    for (const Block& b : blocks_at(k))
      if (b.j == j) {
        require(r >= 0 && r < b.rows && c >= 0 && c < b.cols, "hom index out of range");
        return b.offset + r * b.cols + c;
      }
    throw error("hom index: no block at that degree");
  }

  std::vector<RingElement> to_vec(const GradedMap& phi) const {
    require(complexes_equal(phi.src, src) && complexes_equal(phi.dst, dst),
            "hom to_vec: map between different complexes");
    std::vector<RingElement> v(rank(phi.k), re_zero(src->R));
    for (const Block& b : blocks_at(phi.k)) {
      FreeModuleMatrix m = phi.block(b.j);
      m.for_entries([&](int r, int c, const RingElement& x) { v[b.offset + r * b.cols + c] = x; });
    }
    return v;
  }

  GradedMap from_vec(int k, const std::vector<RingElement>& v) const {
    require(static_cast<int>(v.size()) == rank(k), "hom from_vec: wrong length");
    GradedMap phi = gm_zero(src, dst, k);
    for (const Block& b : blocks_at(k)) {
      FreeModuleMatrix m(src->R, b.rows, b.cols);
      for (int r = 0; r < b.rows; ++r)
        for (int c = 0; c < b.cols; ++c) m.set(r, c, v[b.offset + r * b.cols + c]);
      phi.set_block(b.j, m);
    }
    return phi;
  }
};

inline HomComplex hom_complex(const ComplexPtr& C, const ComplexPtr& D) {
  require(C->R->same_as(*D->R), "hom complex: mixed rings");
  HomComplex h;
  h.src = C;
  h.dst = D;
  const RingPtr& R = C->R;

  int klo = D->lo - C->hi, khi = D->hi - C->lo;
  std::vector<int> ranks;
  for (int k = klo; k <= khi; ++k) {
    int off = 0;
    std::vector<HomComplex::Block> bl;
    for (int j = C->lo; j <= C->hi; ++j) {
      int rows = D->rank(j + k), cols = C->rank(j);
      if (rows == 0 || cols == 0) continue;
      bl.push_back({j, off, rows, cols});
      off += rows * cols;
    }
    h.layout[k] = std::move(bl);
    ranks.push_back(off);
  }

  // d(E^j_{r,c}) = sum_s dD[s,r] E^j_{s,c} - (-1)^k sum_{c'} dC[c,c'] E^{j-1}_{r,c'}
  std::vector<FreeModuleMatrix> dm;
  for (int k = klo; k < khi; ++k) {
    FreeModuleMatrix d(R, ranks[k + 1 - klo], ranks[k - klo]);
    int sgn = (std::abs(k) % 2 == 0) ? 1 : -1;
    auto tgt_index = [&](int j, int r, int c) -> int {
      for (const auto& b : h.layout[k + 1])
        if (b.j == j) return b.offset + r * b.cols + c;
      return -1;
    };
    for (const auto& b : h.layout[k]) {
      FreeModuleMatrix dD = D->diff(b.j + k);
      FreeModuleMatrix dC = C->diff(b.j - 1);
      for (int r = 0; r < b.rows; ++r)
        for (int c = 0; c < b.cols; ++c) {
          int col = b.offset + r * b.cols + c;
          for (const auto& [s, v] : dD.col[r]) {
            int t = tgt_index(b.j, s, c);
            if (t >= 0) d.add_to(t, col, v);
          }
          // entries dC[c, c'] live in column c' at row c
          for (int cp = 0; cp < dC.cols; ++cp) {
            RingElement v = dC.get(c, cp);
            if (v.is_zero()) continue;
            int t = tgt_index(b.j - 1, r, cp);
            if (t >= 0) d.add_to(t, col, sgn > 0 ? -v : v);
          }
        }
    }
    dm.push_back(std::move(d));
  }
  h.H = make_complex(R, klo, std::move(ranks), std::move(dm));
  return h;
}

inline HomComplex end_complex(const ComplexPtr& C) { return hom_complex(C, C); }

}  // namespace koszul
