#pragma once
// Monomials in a bounded number of variables, with the classical global
// term orders.  Exponents are kept small on purpose: the engine targets
// desk-scale inputs and checks for overflow instead of growing storage.

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace koszul {

struct error : std::runtime_error {
  explicit error(const std::string& what) : std::runtime_error(what) {}
};

inline void require(bool ok, const std::string& msg) {
  if (!ok) throw error(msg);
}

enum class TermOrder { degrevlex, lex, deglex };

struct Monomial {
  static constexpr int max_vars = 8;
  std::array<uint8_t, max_vars> e{};
  uint32_t deg = 0;

  static Monomial one() { return Monomial{}; }

  static Monomial var(int i, int k = 1) {
    require(i >= 0 && i < max_vars, "monomial: variable index out of range");
    require(k >= 0 && k < 256, "monomial: exponent out of range");
    Monomial m;
    m.e[i] = static_cast<uint8_t>(k);
    m.deg = static_cast<uint32_t>(k);
    return m;
  }

  bool is_one() const { return deg == 0; }
  int operator[](int i) const { return e[i]; }

  bool operator==(const Monomial& o) const { return deg == o.deg && e == o.e; }
  bool operator!=(const Monomial& o) const { return !(*this == o); }
};

inline Monomial mul(const Monomial& a, const Monomial& b) {
  Monomial r;
  for (int i = 0; i < Monomial::max_vars; ++i) {
    int s = a.e[i] + b.e[i];
    require(s < 256, "monomial: exponent overflow");
    r.e[i] = static_cast<uint8_t>(s);
  }
  r.deg = a.deg + b.deg;
  return r;
}

inline bool divides(const Monomial& a, const Monomial& b) {  // a | b
  if (a.deg > b.deg) return false;
  for (int i = 0; i < Monomial::max_vars; ++i)
    if (a.e[i] > b.e[i]) return false;
  return true;
}

inline Monomial div(const Monomial& a, const Monomial& b) {  // a / b
  Monomial r;
  for (int i = 0; i < Monomial::max_vars; ++i) {
    require(a.e[i] >= b.e[i], "monomial: division not exact");
    r.e[i] = static_cast<uint8_t>(a.e[i] - b.e[i]);
  }
  r.deg = a.deg - b.deg;
  return r;
}

inline Monomial lcm(const Monomial& a, const Monomial& b) {
  Monomial r;
  uint32_t d = 0;
  for (int i = 0; i < Monomial::max_vars; ++i) {
    r.e[i] = a.e[i] > b.e[i] ? a.e[i] : b.e[i];
    d += r.e[i];
  }
  r.deg = d;
  return r;
}

inline bool coprime(const Monomial& a, const Monomial& b) {
  for (int i = 0; i < Monomial::max_vars; ++i)
    if (a.e[i] && b.e[i]) return false;
  return true;
}

// Three-way comparison: > 0 iff a > b in the given order.
inline int mono_cmp(const Monomial& a, const Monomial& b, TermOrder o) {
  switch (o) {
    case TermOrder::degrevlex: {
      if (a.deg != b.deg) return a.deg < b.deg ? -1 : 1;
      for (int i = Monomial::max_vars - 1; i >= 0; --i) {
        if (a.e[i] != b.e[i]) return a.e[i] > b.e[i] ? -1 : 1;
      }
      return 0;
    }
    case TermOrder::deglex:
      if (a.deg != b.deg) return a.deg < b.deg ? -1 : 1;
      [[fallthrough]];
    case TermOrder::lex: {
      for (int i = 0; i < Monomial::max_vars; ++i) {
        if (a.e[i] != b.e[i]) return a.e[i] > b.e[i] ? 1 : -1;
      }
      return 0;
    }
  }
  return 0;
}

}  // namespace koszul
