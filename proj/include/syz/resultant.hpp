#pragma once

#include "syz/gcd.hpp"
#include "syz/poly_matrix.hpp"

namespace syz {

/// Sylvester matrix of f and g with respect to var. Requires positive
/// degree in var on both sides.
inline PolyMatrix sylvester_matrix(const Polynomial& f, const Polynomial& g, int var) {
  int df = f.degree_in(var), dg = g.degree_in(var);
  if (df < 1 || dg < 1) throw Error("sylvester_matrix: both arguments need positive degree in var");
  int N = df + dg;
  PolyMatrix S(N, N, f.vars());
  for (int i = 0; i < dg; ++i)
    for (int k = 0; k <= df; ++k) S.at(i, i + k) = coeff_of_power(f, var, static_cast<std::uint32_t>(df - k));
  for (int j = 0; j < df; ++j)
    for (int k = 0; k <= dg; ++k) S.at(dg + j, j + k) = coeff_of_power(g, var, static_cast<std::uint32_t>(dg - k));
  return S;
}

namespace detail {

inline Polynomial poly_pow(const Polynomial& base, int e) {
  Polynomial r = Polynomial::constant(base.vars(), 1);
  for (int k = 0; k < e; ++k) r = r * base;
  return r;
}

}  // namespace detail

/// Resultant of f and g with respect to var: the Sylvester determinant,
/// free of var. Degenerate conventions: both var-free -> 1; exactly one
/// var-free with value c -> c^(deg of the other). Both zero is an error.
inline Polynomial resultant(const Polynomial& f, const Polynomial& g, int var) {
  f.check_same_ring(g);
  if (f.is_zero() && g.is_zero()) throw Error("resultant: both arguments are zero");
  int df = std::max(f.degree_in(var), 0), dg = std::max(g.degree_in(var), 0);
  if (df == 0 && dg == 0) return Polynomial::constant(f.vars(), 1);
  if (df == 0) return detail::poly_pow(f, dg);
  if (dg == 0) return detail::poly_pow(g, df);
  return sylvester_matrix(f, g, var).determinant();
}

struct ResultantCertificate {
  Polynomial res;  // the resultant
  Polynomial u, v; // u*f + v*g = res, with deg_var(u) < deg_var(g), deg_var(v) < deg_var(f)
};

/// Resultant together with polynomial cofactors, via signed minors of the
/// Sylvester matrix (Cramer solve of u*f + v*g = res). Only meaningful
/// when the resultant is nonzero; callers resample otherwise.
inline ResultantCertificate resultant_with_cofactors(const Polynomial& f, const Polynomial& g, int var) {
  f.check_same_ring(g);
  const int n = f.vars();
  int df = std::max(f.degree_in(var), 0), dg = std::max(g.degree_in(var), 0);
  if (df == 0 && dg == 0) throw Error("resultant_with_cofactors: both arguments are var-free");
  if (df == 0) {
    // res = f^dg = f^(dg-1) * f + 0 * g
    return {detail::poly_pow(f, dg), detail::poly_pow(f, dg - 1), Polynomial::zero(n)};
  }
  if (dg == 0) {
    return {detail::poly_pow(g, df), Polynomial::zero(n), detail::poly_pow(g, df - 1)};
  }
  PolyMatrix S = sylvester_matrix(f, g, var);
  const int N = df + dg;
  Polynomial res = S.determinant();
  ResultantCertificate cert{res, Polynomial::zero(n), Polynomial::zero(n)};
  if (res.is_zero()) return cert;

  // x_i = (-1)^(N+i) det(S with row i and the last column deleted); the
  // first dg entries are the coefficients of u (descending powers), the
  // remaining df those of v.
  std::vector<int> keep_cols;
  for (int j = 0; j < N - 1; ++j) keep_cols.push_back(j);
  for (int i = 0; i < N; ++i) {
    std::vector<int> keep_rows;
    for (int r = 0; r < N; ++r)
      if (r != i) keep_rows.push_back(r);
    Polynomial mi = S.select(keep_rows, keep_cols).determinant();
    if ((N + i + 1) % 2 == 1) mi = -mi;  // (-1)^(N + (i+1)) with 1-based i
    Monomial shift(n);
    if (i < dg) {
      shift.e[static_cast<std::size_t>(var)] = static_cast<std::uint32_t>(dg - 1 - i);
      cert.u += mi.times_term(shift, Rat(1));
    } else {
      shift.e[static_cast<std::size_t>(var)] = static_cast<std::uint32_t>(df - 1 - (i - dg));
      cert.v += mi.times_term(shift, Rat(1));
    }
  }
  Polynomial check = cert.u * f + cert.v * g;
  if (check != cert.res) {
    cert.u = -cert.u;
    cert.v = -cert.v;
    if (-check != cert.res) throw Error("resultant_with_cofactors: certificate mismatch (internal)");
  }
  return cert;
}

}  // namespace syz
