#pragma once

#include "syz/polynomial.hpp"

namespace syz {

/// Coefficient of var^k in f, viewed as a univariate polynomial in var;
/// the result does not mention var.
inline Polynomial coeff_of_power(const Polynomial& f, int var, std::uint32_t k) {
  Polynomial r(f.vars());
  for (const auto& [m, c] : f.terms()) {
    if (m.e[static_cast<std::size_t>(var)] != k) continue;
    Monomial rest(m);
    rest.e[static_cast<std::size_t>(var)] = 0;
    r.add_term(rest, c);
  }
  return r;
}

/// Leading coefficient of f with respect to var (a polynomial in the
/// remaining variables).
inline Polynomial leading_coeff_in(const Polynomial& f, int var) {
  int d = f.degree_in(var);
  if (d <= kDegreeOfZero) return Polynomial::zero(f.vars());
  return coeff_of_power(f, var, static_cast<std::uint32_t>(d));
}

/// Pseudo-remainder of a by b in the variable var (b nonzero in var).
inline Polynomial pseudo_remainder(const Polynomial& a, const Polynomial& b, int var) {
  int db = b.degree_in(var);
  Polynomial lb = coeff_of_power(b, var, static_cast<std::uint32_t>(db));
  Polynomial r(a);
  while (!r.is_zero()) {
    int dr = r.degree_in(var);
    if (dr < db) break;
    Polynomial lr = coeff_of_power(r, var, static_cast<std::uint32_t>(dr));
    Monomial shift(r.vars());
    shift.e[static_cast<std::size_t>(var)] = static_cast<std::uint32_t>(dr - db);
    r = lb * r - (lr * b).times_term(shift, Rat(1));
  }
  return r;
}

namespace detail {

inline Polynomial gcd_impl(const Polynomial& f, const Polynomial& g);

/// gcd of the var-coefficients of f; the "content" of f as a univariate
/// polynomial in var.
inline Polynomial content_in(const Polynomial& f, int var) {
  Polynomial acc = Polynomial::zero(f.vars());
  int d = f.degree_in(var);
  for (int k = 0; k <= d; ++k) {
    Polynomial ck = coeff_of_power(f, var, static_cast<std::uint32_t>(k));
    if (ck.is_zero()) continue;
    acc = acc.is_zero() ? ck : gcd_impl(acc, ck);
    if (acc.is_constant()) break;
  }
  return acc.is_zero() ? Polynomial::constant(f.vars(), 1) : acc;
}

inline int top_variable(const Polynomial& f, const Polynomial& g) {
  for (int v = f.vars() - 1; v >= 0; --v)
    if (f.uses_variable(v) || g.uses_variable(v)) return v;
  return -1;
}

/// Primitive pseudo-remainder sequence. Exact; adequate at desk scale.
inline Polynomial gcd_impl(const Polynomial& f, const Polynomial& g) {
  if (f.is_zero()) return g;
  if (g.is_zero()) return f;
  int v = top_variable(f, g);
  if (v < 0) return Polynomial::constant(f.vars(), 1);  // both nonzero constants

  Polynomial cf = content_in(f, v);
  Polynomial cg = content_in(g, v);
  Polynomial cont = gcd_impl(cf, cg);
  Polynomial a = *divide_exact(f, cf);
  Polynomial b = *divide_exact(g, cg);
  if (a.degree_in(v) < b.degree_in(v)) std::swap(a, b);

  while (true) {
    if (b.is_zero()) break;
    if (b.degree_in(v) == 0) {
      // primitive and v-free means the primitive gcd in v is trivial
      a = Polynomial::constant(f.vars(), 1);
      break;
    }
    Polynomial r = pseudo_remainder(a, b, v);
    if (r.is_zero()) {
      a = b;
      break;
    }
    a = b;
    b = *divide_exact(r, content_in(r, v));
  }
  return cont * a;
}

}  // namespace detail

/// Monic under the default order; gcd(f, 0) is normalized f and the gcd
/// of coprime inputs is the constant 1.
inline Polynomial normalize_monic(const Polynomial& f) {
  if (f.is_zero()) return f;
  return f * (Rat(1) / f.leading_coefficient());
}

inline Polynomial multivariate_gcd(const Polynomial& f, const Polynomial& g) {
  f.check_same_ring(g);
  return normalize_monic(detail::gcd_impl(f, g));
}

}  // namespace syz
