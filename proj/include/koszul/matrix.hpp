#pragma once
// Sparse matrices over a polynomial quotient ring, stored column-major.
// These represent maps of finite free modules (and generator/relation data
// of presented modules); entries are always normal-form ring elements.

#include <functional>
#include <vector>

#include "koszul/ring.hpp"

namespace koszul {

struct FreeModuleMatrix {
  RingPtr R;
  int rows = 0, cols = 0;
  // per column: (row, value), sorted by row, no zero values
  std::vector<std::vector<std::pair<int, RingElement>>> col;

  FreeModuleMatrix() = default;
  FreeModuleMatrix(RingPtr ring, int r, int c) : R(std::move(ring)), rows(r), cols(c), col(c) {
    require(r >= 0 && c >= 0, "matrix: negative dimensions");
  }

  static FreeModuleMatrix identity(const RingPtr& R, int n) {
    FreeModuleMatrix m(R, n, n);
    for (int i = 0; i < n; ++i) m.col[i].push_back({i, re_one(R)});
    return m;
  }

  RingElement get(int i, int j) const {
    require(i >= 0 && i < rows && j >= 0 && j < cols, "matrix: index out of range");
    for (const auto& [r, v] : col[j])
      if (r == i) return v;
    return re_zero(R);
  }

  void set(int i, int j, const RingElement& v) {
    require(i >= 0 && i < rows && j >= 0 && j < cols, "matrix: index out of range");
    auto& c = col[j];
    auto it = std::lower_bound(c.begin(), c.end(), i,
                               [](const auto& a, int r) { return a.first < r; });
    if (it != c.end() && it->first == i) {
      if (v.is_zero()) c.erase(it);
      else it->second = v;
    } else if (!v.is_zero()) {
      c.insert(it, {i, v});
    }
  }

  void add_to(int i, int j, const RingElement& v) {
    if (v.is_zero()) return;
    auto& c = col[j];
    auto it = std::lower_bound(c.begin(), c.end(), i,
                               [](const auto& a, int r) { return a.first < r; });
    if (it != c.end() && it->first == i) {
      RingElement s = it->second + v;
      if (s.is_zero()) c.erase(it);
      else it->second = s;
    } else {
      c.insert(it, {i, v});
    }
  }

  bool is_zero() const {
    for (const auto& c : col)
      if (!c.empty()) return false;
    return true;
  }

  void for_entries(const std::function<void(int, int, const RingElement&)>& f) const {
    for (int j = 0; j < cols; ++j)
      for (const auto& [i, v] : col[j]) f(i, j, v);
  }
};

inline FreeModuleMatrix mat_add(const FreeModuleMatrix& a, const FreeModuleMatrix& b) {
  require(a.rows == b.rows && a.cols == b.cols, "matrix add: shape mismatch");
  FreeModuleMatrix r(a.R, a.rows, a.cols);
  for (int j = 0; j < a.cols; ++j) {
    for (const auto& [i, v] : a.col[j]) r.add_to(i, j, v);
    for (const auto& [i, v] : b.col[j]) r.add_to(i, j, v);
  }
  return r;
}

inline FreeModuleMatrix mat_scale(const FreeModuleMatrix& a, const RingElement& c) {
  FreeModuleMatrix r(a.R, a.rows, a.cols);
  for (int j = 0; j < a.cols; ++j)
    for (const auto& [i, v] : a.col[j]) r.add_to(i, j, c * v);
  return r;
}

inline FreeModuleMatrix mat_neg(const FreeModuleMatrix& a) {
  return mat_scale(a, re_const(a.R, -1));
}

inline FreeModuleMatrix mat_sub(const FreeModuleMatrix& a, const FreeModuleMatrix& b) {
  return mat_add(a, mat_neg(b));
}

inline FreeModuleMatrix mat_mul(const FreeModuleMatrix& a, const FreeModuleMatrix& b) {
  require(a.cols == b.rows, "matrix mul: shape mismatch");
  FreeModuleMatrix r(a.R, a.rows, b.cols);
  for (int j = 0; j < b.cols; ++j)
    for (const auto& [k, bv] : b.col[j])
      for (const auto& [i, av] : a.col[k]) r.add_to(i, j, av * bv);
  return r;
}

inline std::vector<RingElement> mat_apply(const FreeModuleMatrix& a,
                                          const std::vector<RingElement>& x) {
  require(static_cast<int>(x.size()) == a.cols, "matrix apply: size mismatch");
  std::vector<RingElement> y(a.rows, re_zero(a.R));
  for (int j = 0; j < a.cols; ++j) {
    if (x[j].is_zero()) continue;
    for (const auto& [i, v] : a.col[j]) y[i] = y[i] + v * x[j];
  }
  return y;
}

inline std::vector<RingElement> vec_zero(const RingPtr& R, int n) {
  return std::vector<RingElement>(n, re_zero(R));
}

inline std::vector<RingElement> vec_add(const std::vector<RingElement>& a,
                                        const std::vector<RingElement>& b) {
  require(a.size() == b.size(), "vector add: length mismatch");
  std::vector<RingElement> r = a;
  for (size_t i = 0; i < r.size(); ++i) r[i] = r[i] + b[i];
  return r;
}

inline std::vector<RingElement> vec_sub(const std::vector<RingElement>& a,
                                        const std::vector<RingElement>& b) {
  require(a.size() == b.size(), "vector sub: length mismatch");
  std::vector<RingElement> r = a;
  for (size_t i = 0; i < r.size(); ++i) r[i] = r[i] - b[i];
  return r;
}

inline std::vector<RingElement> vec_scale(const std::vector<RingElement>& a,
                                          const RingElement& q) {
  std::vector<RingElement> r = a;
  for (RingElement& x : r) x = x * q;
  return r;
}

inline bool vec_is_zero(const std::vector<RingElement>& a) {
  for (const RingElement& x : a)
    if (!x.is_zero()) return false;
  return true;
}

inline FreeModuleMatrix mat_transpose(const FreeModuleMatrix& a) {
  FreeModuleMatrix r(a.R, a.cols, a.rows);
  a.for_entries([&](int i, int j, const RingElement& v) { r.set(j, i, v); });
  return r;
}

inline FreeModuleMatrix mat_hcat(const FreeModuleMatrix& a, const FreeModuleMatrix& b) {
  require(a.rows == b.rows, "matrix hcat: row mismatch");
  FreeModuleMatrix r(a.R, a.rows, a.cols + b.cols);
  r.col.clear();
  r.col.insert(r.col.end(), a.col.begin(), a.col.end());
  r.col.insert(r.col.end(), b.col.begin(), b.col.end());
  return r;
}

inline FreeModuleMatrix mat_from_cols(const RingPtr& R, int rows,
                                      const std::vector<std::vector<RingElement>>& cs) {
  FreeModuleMatrix r(R, rows, static_cast<int>(cs.size()));
  for (size_t j = 0; j < cs.size(); ++j) {
    require(static_cast<int>(cs[j].size()) == rows, "mat_from_cols: column length mismatch");
    for (int i = 0; i < rows; ++i)
      if (!cs[j][i].is_zero()) r.col[j].push_back({i, cs[j][i]});
  }
  return r;
}

inline std::vector<RingElement> mat_col(const FreeModuleMatrix& m, int j) {
  std::vector<RingElement> v(m.rows, re_zero(m.R));
  for (const auto& [i, x] : m.col[j]) v[i] = x;
  return v;
}

inline bool mat_equal(const FreeModuleMatrix& a, const FreeModuleMatrix& b) {
  return a.rows == b.rows && a.cols == b.cols && mat_sub(a, b).is_zero();
}

// Entry-wise transport along a ring map (used for localization restrictions).
inline FreeModuleMatrix mat_map(const FreeModuleMatrix& a, const RingPtr& target,
                                const std::vector<RingElement>& images) {
  FreeModuleMatrix r(target, a.rows, a.cols);
  for (int j = 0; j < a.cols; ++j)
    for (const auto& [i, v] : a.col[j]) r.add_to(i, j, map_element(v, target, images));
  return r;
}

}  // namespace koszul
