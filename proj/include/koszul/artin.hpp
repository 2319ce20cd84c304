#pragma once
// Finite-dimensional local Q-algebras Q[t1..ts]/J presented by a monomial
// basis of the maximal ideal together with an explicit multiplication table.
// Construction certifies everything the deformation layer relies on: the
// basis is closed under multiplication, the maximal ideal is nilpotent of a
// recorded order, and each basis monomial carries its exact adic order, so
// order-by-order computations can filter coefficients by grade.

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "koszul/ring.hpp"

namespace koszul {

namespace detail {

// Row-echelon accumulator over Q, enough for membership tests in spaces of
// modest dimension.  Rows keep their leading entry normalized to 1.
class QEchelon {
 public:
  explicit QEchelon(int) {}

  // Reduces v against the current rows in place; returns true when the
  // remainder is nonzero (and, for insert, was added as a new row).
  bool insert(std::vector<mpq_class> v) {
    if (!reduce(v)) return false;
    size_t p = pivot(v);
    mpq_class inv = 1 / v[p];
    for (auto& x : v) x *= inv;
    rows_.push_back(std::move(v));
    std::sort(rows_.begin(), rows_.end(),
              [](const auto& a, const auto& b) { return pivot(a) < pivot(b); });
    return true;
  }

  bool contains(std::vector<mpq_class> v) const { return !reduce(v); }

  int dim() const { return static_cast<int>(rows_.size()); }
  bool empty() const { return rows_.empty(); }
  const std::vector<std::vector<mpq_class>>& rows() const { return rows_; }

 private:
  static size_t pivot(const std::vector<mpq_class>& v) {
    for (size_t i = 0; i < v.size(); ++i)
      if (v[i] != 0) return i;
    return v.size();
  }

  bool reduce(std::vector<mpq_class>& v) const {
    for (const auto& r : rows_) {
      size_t p = pivot(r);
      if (v[p] != 0) {
        mpq_class c = v[p];
        for (size_t i = p; i < v.size(); ++i) v[i] -= c * r[i];
      }
    }
    return pivot(v) != v.size();
  }

  int dim_;
  std::vector<std::vector<mpq_class>> rows_;
};

}  // namespace detail

// A product of two basis monomials expanded over the basis again.
using ArtinTerm = std::pair<int, mpq_class>;
using ArtinCombo = std::vector<ArtinTerm>;

struct ArtinRing {
  RingPtr ring;                 // polynomial model of the quotient
  std::vector<Monomial> basis;  // monomial basis of the maximal ideal
  std::vector<int> grade;       // adic order of each basis monomial
  int nilpotency = 0;           // smallest N with m^N = 0, certified
  std::vector<std::vector<ArtinCombo>> table;  // basis[i] * basis[j]

  int dim() const { return static_cast<int>(basis.size()); }

  int index_of(const Monomial& m) const {
    for (size_t i = 0; i < basis.size(); ++i)
      if (basis[i] == m) return static_cast<int>(i);
    return -1;
  }

  std::string name_of(int i) const {
    return print_poly(poly_mono(basis[i]), ring->names);
  }
};

namespace detail {

// Coefficient vector of e_i * v given the multiplication table.
inline std::vector<mpq_class> artin_mulv(const std::vector<std::vector<ArtinCombo>>& table,
                                         int i, const std::vector<mpq_class>& v) {
  std::vector<mpq_class> out(v.size(), 0);
  for (size_t j = 0; j < v.size(); ++j) {
    if (v[j] == 0) continue;
    for (const auto& [k, q] : table[i][j]) out[k] += q * v[j];
  }
  return out;
}

}  // namespace detail

inline ArtinRing make_artin(std::vector<std::string> params,
                            const std::vector<std::string>& relations) {
  ArtinRing A;
  A.ring = PolyRing::make_str(std::move(params), relations);
  const RingPtr& R = A.ring;
  const int n = R->nvars();
  require(!R->rel_gb.empty(), "artin: the quotient must be finite-dimensional");

  // Locality: the defining ideal has to sit inside (t1..ts), otherwise some
  // parameter acquires a unit component and the monomial picture breaks.
  for (const Poly& g : R->rel_gb)
    for (const Term& t : g.t)
      require(!t.m.is_one(), "artin: relations must lie in the parameter ideal");

  // A pure power of every parameter must appear among the lead monomials;
  // the standard monomials then live in a finite box.
  std::vector<int> cap(n, -1);
  for (const Poly& g : R->rel_gb) {
    const Monomial& m = g.lead().m;
    for (int i = 0; i < n; ++i)
      if (m.e[i] > 0 && m.deg == static_cast<uint32_t>(m.e[i]))
        if (cap[i] < 0 || m.e[i] < cap[i]) cap[i] = m.e[i];
  }
  for (int i = 0; i < n; ++i)
    require(cap[i] > 0, "artin: no pure power of " + R->names[i] + " in the lead ideal");

  std::vector<int> exp(n, 0);
  for (;;) {
    Monomial m = Monomial::one();
    for (int i = 0; i < n; ++i) m = mul(m, Monomial::var(i, exp[i]));
    bool standard = true;
    for (const Poly& g : R->rel_gb)
      if (divides(g.lead().m, m)) {
        standard = false;
        break;
      }
    if (standard && m.deg > 0) A.basis.push_back(m);
    int i = 0;
    while (i < n && ++exp[i] >= cap[i]) exp[i++] = 0;
    if (i == n) break;
  }
  std::sort(A.basis.begin(), A.basis.end(), [&](const Monomial& a, const Monomial& b) {
    if (a.deg != b.deg) return a.deg < b.deg;
    return mono_cmp(a, b, R->order) > 0;
  });

  const int D = A.dim();
  A.table.assign(D, std::vector<ArtinCombo>(D));
  for (int i = 0; i < D; ++i)
    for (int j = i; j < D; ++j) {
      Poly nf = R->reduce(poly_mono(mul(A.basis[i], A.basis[j])));
      ArtinCombo combo;
      for (const Term& t : nf.t) {
        int k = A.index_of(t.m);
        require(k >= 0, "artin: product escapes the basis");
        combo.emplace_back(k, t.c);
      }
      std::sort(combo.begin(), combo.end(),
                [](const ArtinTerm& a, const ArtinTerm& b) { return a.first < b.first; });
      A.table[i][j] = combo;
      A.table[j][i] = std::move(combo);
    }

  // Powers of the maximal ideal as subspaces of its basis span.  The chain
  // must reach zero, and every step must be spanned by basis monomials so
  // that grade filtering of coefficients is faithful.
  std::vector<detail::QEchelon> filt;  // filt[k-1] spans m^k
  filt.emplace_back(D);
  for (int i = 0; i < D; ++i) {
    std::vector<mpq_class> e(D, 0);
    e[i] = 1;
    filt.back().insert(std::move(e));
  }
  while (!filt.back().empty()) {
    detail::QEchelon next(D);
    for (int i = 0; i < D; ++i)
      for (const auto& v : filt.back().rows()) next.insert(detail::artin_mulv(A.table, i, v));
    require(next.dim() < filt.back().dim(), "artin: the maximal ideal is not nilpotent");
    filt.push_back(std::move(next));
  }
  A.nilpotency = static_cast<int>(filt.size());

  A.grade.assign(D, 1);
  for (int i = 0; i < D; ++i) {
    std::vector<mpq_class> e(D, 0);
    e[i] = 1;
    for (size_t k = 1; k < filt.size() && filt[k].contains(e); ++k) A.grade[i]++;
  }
  for (size_t k = 0; k < filt.size(); ++k) {
    int count = 0;
    for (int g : A.grade)
      if (g >= static_cast<int>(k) + 1) count++;
    require(count == filt[k].dim(),
            "artin: basis is not adapted to the maximal-ideal filtration");
  }
  return A;
}

// Surjection A -> B of Artin rings over the same parameters whose kernel is
// killed by the maximal ideal.  Basis monomials of A either survive as basis
// monomials of B or die; the surviving ones index a multiplicative section.
struct SmallExtension {
  ArtinRing A, B;
  std::vector<int> proj;     // A basis index -> B basis index, -1 when it dies
  std::vector<int> kernel;   // A basis indices spanning the kernel
  std::vector<int> section;  // B basis index -> A basis index
};

inline SmallExtension small_extension(ArtinRing A, ArtinRing B) {
  require(A.ring->names == B.ring->names && A.ring->order == B.ring->order,
          "small extension: parameter rings differ");
  for (const Poly& g : A.ring->rel_gb)
    require(B.ring->reduce(g).is_zero(),
            "small extension: target is not a quotient of the source");

  SmallExtension e;
  e.proj.assign(A.dim(), -1);
  for (int i = 0; i < A.dim(); ++i) {
    Poly nf = B.ring->reduce(poly_mono(A.basis[i]));
    if (nf.is_zero()) {
      e.kernel.push_back(i);
      continue;
    }
    require(nf == poly_mono(A.basis[i]),
            "small extension: basis monomial " + A.name_of(i) + " maps outside the basis");
    int j = B.index_of(A.basis[i]);
    require(j >= 0, "small extension: basis monomial lost in the target");
    e.proj[i] = j;
  }
  e.section.assign(B.dim(), -1);
  for (int j = 0; j < B.dim(); ++j) {
    int i = A.index_of(B.basis[j]);
    require(i >= 0, "small extension: no section through " + B.name_of(j));
    e.section[j] = i;
  }
  for (int k : e.kernel)
    for (int i = 0; i < A.dim(); ++i)
      require(A.table[i][k].empty(),
              "small extension: kernel is not annihilated by the maximal ideal");
  e.A = std::move(A);
  e.B = std::move(B);
  return e;
}

}  // namespace koszul
