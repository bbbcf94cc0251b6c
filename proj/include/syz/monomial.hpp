#pragma once

#include "syz/error.hpp"

#include <cstdint>
#include <numeric>
#include <vector>

namespace syz {

/// Exponent vector of fixed length; the length is the ambient variable
/// count and never grows implicitly.
struct Monomial {
  std::vector<std::uint32_t> e;

  Monomial() = default;
  explicit Monomial(int n) : e(static_cast<std::size_t>(n), 0u) {}
  explicit Monomial(std::vector<std::uint32_t> exps) : e(std::move(exps)) {}

  int vars() const { return static_cast<int>(e.size()); }

  int degree() const {
    long long d = 0;
    for (auto x : e) d += x;
    return static_cast<int>(d);
  }

  bool is_one() const {
    for (auto x : e)
      if (x != 0) return false;
    return true;
  }

  Monomial operator*(const Monomial& o) const {
    Monomial r(*this);
    for (std::size_t i = 0; i < e.size(); ++i) r.e[i] += o.e[i];
    return r;
  }

  bool divides(const Monomial& o) const {
    for (std::size_t i = 0; i < e.size(); ++i)
      if (e[i] > o.e[i]) return false;
    return true;
  }

  /// Quotient o / this; caller guarantees divisibility.
  Monomial divide_into(const Monomial& o) const {
    Monomial r(o);
    for (std::size_t i = 0; i < e.size(); ++i) r.e[i] -= e[i];
    return r;
  }

  static Monomial lcm(const Monomial& a, const Monomial& b) {
    Monomial r(a);
    for (std::size_t i = 0; i < a.e.size(); ++i)
      if (b.e[i] > r.e[i]) r.e[i] = b.e[i];
    return r;
  }

  static bool coprime(const Monomial& a, const Monomial& b) {
    for (std::size_t i = 0; i < a.e.size(); ++i)
      if (a.e[i] != 0 && b.e[i] != 0) return false;
    return true;
  }

  bool operator==(const Monomial& o) const { return e == o.e; }
  bool operator!=(const Monomial& o) const { return !(*this == o); }
};

enum class OrderKind { GrevLex, Lex, GrLex };

/// Total order on monomials compatible with multiplication. The optional
/// permutation reorders variables before comparison: perm[k] is the index
/// of the variable treated as k-th most significant.
struct MonomialOrder {
  OrderKind kind = OrderKind::GrevLex;
  std::vector<int> perm;  // empty means identity

  int mapped(std::size_t k, const Monomial& m) const {
    return static_cast<int>(perm.empty() ? m.e[k] : m.e[static_cast<std::size_t>(perm[k])]);
  }

  /// Strict comparison: true when a < b.
  bool less(const Monomial& a, const Monomial& b) const {
    const std::size_t n = a.e.size();
    if (n != b.e.size()) throw Error("MonomialOrder: variable-count mismatch");
    switch (kind) {
      case OrderKind::Lex: {
        for (std::size_t k = 0; k < n; ++k) {
          int d = mapped(k, a) - mapped(k, b);
          if (d != 0) return d < 0;
        }
        return false;
      }
      case OrderKind::GrLex: {
        int da = a.degree(), db = b.degree();
        if (da != db) return da < db;
        for (std::size_t k = 0; k < n; ++k) {
          int d = mapped(k, a) - mapped(k, b);
          if (d != 0) return d < 0;
        }
        return false;
      }
      case OrderKind::GrevLex:
      default: {
        int da = a.degree(), db = b.degree();
        if (da != db) return da < db;
        for (std::size_t k = n; k-- > 0;) {
          int d = mapped(k, a) - mapped(k, b);
          if (d != 0) return d > 0;  // smaller exponent in the last place wins
        }
        return false;
      }
    }
  }

  bool equal_order(const MonomialOrder& o) const { return kind == o.kind && perm == o.perm; }
};

/// Canonical storage comparator: graded reverse lexicographic with the
/// identity permutation. Polynomials keep their term maps sorted by this
/// order so equal polynomials have identical representations.
struct CanonicalLess {
  bool operator()(const Monomial& a, const Monomial& b) const {
    int da = a.degree(), db = b.degree();
    if (da != db) return da < db;
    for (std::size_t k = a.e.size(); k-- > 0;) {
      if (a.e[k] != b.e[k]) return a.e[k] > b.e[k];
    }
    return false;
  }
};

}  // namespace syz
