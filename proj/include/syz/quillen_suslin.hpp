#pragma once

#include "syz/bounds.hpp"
#include "syz/groebner.hpp"
#include "syz/resultant.hpp"
#include "syz/rng.hpp"

#include <cstdint>
#include <optional>
#include <sstream>
#include <utility>
#include <vector>

namespace syz {

struct QsOptions {
  int max_retries = 32;
  /// Test hook: skip the fast elementary-reduction layer and drive the
  /// variable-elimination construction directly.
  bool force_patch_route = false;
};

/// Result of completing a unimodular r x s matrix F to F * U = [I_r | 0].
struct CompletionCertificate {
  PolyMatrix U;                              // s x s, det a nonzero constant
  std::vector<PolyMatrix> elimination_trace; // U_n ... U_1 U_0; product is U when populated
  int degree = 0;                            // matrix_degree(U)
  std::uint64_t rng_seed = 0;
};

/// Coordinate change plus the degree-one unimodular factor that make the
/// leading minor monic in the elimination variable and dominant in total
/// degree; inflates the matrix degree by at most one.
struct NoetherPreparation {
  RatMatrix coordinate_change;  // invertible n x n
  PolyMatrix A;                 // cyclic x_k factor, fused with a column permutation
  PolyMatrix prepared;          // = F(C x) * A
  int elim_var = 0;
};

/// Constant sampling matrices y^i with the resultants c(x, y^i) of the two
/// leading minors, certified to generate the unit ideal.
struct YSampling {
  std::vector<RatMatrix> y_matrices;
  std::vector<Polynomial> c_values;
  std::vector<Polynomial> bezout;  // 1 = sum bezout_i * c_values_i
  int elim_var = 0;
};

namespace qs_detail {

inline PolyMatrix constant_matrix(const RatMatrix& m, int n) {
  PolyMatrix r(m.rows(), m.cols(), n);
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j)
      if (m.at(i, j) != 0) r.at(i, j) = Polynomial::constant(n, m.at(i, j));
  return r;
}

inline VarTable synthetic_vars(int n) {
  std::vector<std::string> names;
  names.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) names.push_back("x" + std::to_string(i + 1));
  return VarTable(std::move(names));
}

inline int top_active_variable(const std::vector<Polynomial>& row) {
  if (row.empty()) return -1;
  for (int v = row.front().vars() - 1; v >= 0; --v)
    for (const auto& f : row)
      if (f.uses_variable(v)) return v;
  return -1;
}

inline PolyMatrix substitute_all(const PolyMatrix& m, int var, const Polynomial& value) {
  PolyMatrix r(m);
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) r.at(i, j) = m.at(i, j).substitute(var, value);
  return r;
}

inline std::vector<Polynomial> substitute_row(const std::vector<Polynomial>& row, int var,
                                              const Polynomial& value) {
  std::vector<Polynomial> r;
  r.reserve(row.size());
  for (const auto& f : row) r.push_back(f.substitute(var, value));
  return r;
}

inline PolyMatrix linear_change_all(const PolyMatrix& m, const RatMatrix& C) {
  std::vector<Rat> zero_shift(static_cast<std::size_t>(m.vars()), Rat(0));
  PolyMatrix r(m);
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) r.at(i, j) = m.at(i, j).linear_change(C, zero_shift);
  return r;
}

inline std::vector<Polynomial> linear_change_row(const std::vector<Polynomial>& row, const RatMatrix& C) {
  std::vector<Rat> zero_shift(static_cast<std::size_t>(row.front().vars()), Rat(0));
  std::vector<Polynomial> r;
  r.reserve(row.size());
  for (const auto& f : row) r.push_back(f.linear_change(C, zero_shift));
  return r;
}

/// The degree-one unimodular factor of the preparation step: x_k on the
/// first r diagonal entries, ones on the superdiagonal and in the corner.
inline PolyMatrix cyclic_A(int s, int r, int var, int n) {
  PolyMatrix A(s, s, n);
  for (int i = 0; i < s; ++i) {
    if (i < r) A.at(i, i) = Polynomial::variable(n, var);
    if (i + 1 < s) A.at(i, i + 1) = Polynomial::constant(n, 1);
  }
  A.at(s - 1, 0) = A.at(s - 1, 0) + Polynomial::constant(n, 1);
  return A;
}

/// Leading coefficient of f in var is a nonzero constant and var carries
/// the full total degree; trivially true for nonzero var-free constants? No:
/// requires positive degree in var.
inline bool monic_in(const Polynomial& f, int var) {
  if (f.is_zero()) return false;
  int dv = f.degree_in(var);
  if (dv < 1) return false;
  Polynomial lead = coeff_of_power(f, var, static_cast<std::uint32_t>(dv));
  return lead.is_constant();
}

struct LevelFactor {
  int var;
  PolyMatrix T;
};

/// Completion result with the determinant tracked through the factors:
/// every factor used has a cheaply certified determinant, so the product
/// determinant never has to be recomputed from a large assembled matrix.
struct RowCompletion {
  PolyMatrix U;
  Rat det = 1;
  std::vector<LevelFactor> level_factors;     // populated on the patch route
  std::optional<PolyMatrix> constant_factor;  // trailing constant transform
};

/// Accumulates elementary/unimodular right factors applied to a working
/// row; keeps row = original * U and det = det(U) as invariants.
struct RowWork {
  std::vector<Polynomial> row;
  PolyMatrix U;
  Rat det = 1;

  explicit RowWork(std::vector<Polynomial> r)
      : row(std::move(r)),
        U(PolyMatrix::identity(static_cast<int>(row.size()), row.front().vars())) {}

  int size() const { return static_cast<int>(row.size()); }
  int vars() const { return row.front().vars(); }

  void swap_cols(int i, int j) {
    if (i == j) return;
    std::swap(row[static_cast<std::size_t>(i)], row[static_cast<std::size_t>(j)]);
    U.swap_cols(i, j);
    det = -det;
  }
  void scale_col(int j, const Rat& c) {
    row[static_cast<std::size_t>(j)] = row[static_cast<std::size_t>(j)] * c;
    U.scale_col(j, c);
    det *= c;
  }
  void axpy_col(int dst, int src, const Polynomial& c) {
    if (c.is_zero()) return;
    row[static_cast<std::size_t>(dst)] += row[static_cast<std::size_t>(src)] * c;
    U.axpy_col(dst, src, c);
  }
  /// Right-multiply by I + mu * w^T where w = value * e_p; requires
  /// mu[p] = 0 so the factor has determinant one.
  void rank_one(const std::vector<Polynomial>& mu, int p, const Polynomial& value) {
    if (!mu[static_cast<std::size_t>(p)].is_zero())
      throw Error("qs: rank-one update needs a vanishing certificate entry (internal)");
    Polynomial dot(vars());
    for (int i = 0; i < size(); ++i) dot += row[static_cast<std::size_t>(i)] * mu[static_cast<std::size_t>(i)];
    // new column p of U: U_col_p += (U * mu) * value
    for (int r = 0; r < size(); ++r) {
      Polynomial umu(vars());
      for (int c = 0; c < size(); ++c) umu += U.at(r, c) * mu[static_cast<std::size_t>(c)];
      U.at(r, p) += umu * value;
    }
    row[static_cast<std::size_t>(p)] += dot * value;
  }

  bool is_e1() const {
    if (row[0] != Polynomial::constant(vars(), 1)) return false;
    for (int i = 1; i < size(); ++i)
      if (!row[static_cast<std::size_t>(i)].is_zero()) return false;
    return true;
  }
};

inline PolyMatrix embed_block(const PolyMatrix& inner, int s, int offset) {
  PolyMatrix r = PolyMatrix::identity(s, inner.vars());
  for (int i = 0; i < inner.rows(); ++i)
    for (int j = 0; j < inner.cols(); ++j) r.at(offset + i, offset + j) = inner.at(i, j);
  return r;
}

std::optional<RowCompletion> complete_row_heuristic(const std::vector<Polynomial>& row, Rng& rng,
                                                    int depth);
RowCompletion complete_row_any(const std::vector<Polynomial>& row, Rng& rng, const QsOptions& opts);

/// Finish a row that contains a nonzero constant entry: swap it to the
/// front, scale to one, clear the rest.
inline void pivot_finish(RowWork& w, int pivot) {
  w.swap_cols(0, pivot);
  w.scale_col(0, Rat(1) / w.row[0].constant_value());
  for (int j = 1; j < w.size(); ++j)
    if (!w.row[static_cast<std::size_t>(j)].is_zero()) w.axpy_col(j, 0, -w.row[static_cast<std::size_t>(j)]);
}

inline int find_constant_entry(const RowWork& w) {
  for (int j = 0; j < w.size(); ++j)
    if (!w.row[static_cast<std::size_t>(j)].is_zero() && w.row[static_cast<std::size_t>(j)].is_constant())
      return j;
  return -1;
}

/// One pass of mutual leading-term reduction between the entries; returns
/// true when some entry shrank. Keeps every operation elementary.
inline bool auto_reduce_round(RowWork& w) {
  bool changed = false;
  for (int i = 0; i < w.size(); ++i) {
    if (w.row[static_cast<std::size_t>(i)].is_zero()) continue;
    for (int j = 0; j < w.size(); ++j) {
      if (i == j || w.row[static_cast<std::size_t>(j)].is_zero()) continue;
      auto [lmi, lci] = w.row[static_cast<std::size_t>(i)].leading_term({});
      auto [lmj, lcj] = w.row[static_cast<std::size_t>(j)].leading_term({});
      if (!lmj.divides(lmi)) continue;
      w.axpy_col(i, j, -Polynomial::term(lmj.divide_into(lmi), lci / lcj));
      changed = true;
      if (w.row[static_cast<std::size_t>(i)].is_zero()) break;
    }
  }
  return changed;
}

/// Elementary-reduction completion: constant pivots, two-entry Bezout
/// blocks, certificate tricks with determinant-one rank-one updates, and
/// seeded shortening. Returns the transform or gives up.
inline std::optional<RowCompletion> complete_row_heuristic(const std::vector<Polynomial>& row,
                                                           Rng& rng, int depth) {
  const int s = static_cast<int>(row.size());
  const int n = row.front().vars();
  if (depth > 12) return std::nullopt;
  RowWork w(row);

  if (s == 1) {
    if (!w.row[0].is_constant() || w.row[0].is_zero()) return std::nullopt;
    w.scale_col(0, Rat(1) / w.row[0].constant_value());
    return RowCompletion{w.U, w.det, {}, {}};
  }

  for (int round = 0; round < 2 * s + 8; ++round) {
    if (w.is_e1()) return RowCompletion{w.U, w.det, {}, {}};
    int cpos = find_constant_entry(w);
    if (cpos >= 0) {
      pivot_finish(w, cpos);
      return RowCompletion{w.U, w.det, {}, {}};
    }

    std::vector<int> active;
    for (int j = 0; j < s; ++j)
      if (!w.row[static_cast<std::size_t>(j)].is_zero()) active.push_back(j);
    if (active.size() <= 1) return std::nullopt;  // a lone non-constant entry cannot be unimodular

    if (active.size() == 2) {
      int i = active[0], j = active[1];
      auto cert = is_unit_ideal({w.row[static_cast<std::size_t>(i)], w.row[static_cast<std::size_t>(j)]});
      if (!cert) return std::nullopt;
      // two-column Bezout block; its determinant is b_i f_i + b_j f_j = 1,
      // which the certificate identity checked below guarantees
      Polynomial fi = w.row[static_cast<std::size_t>(i)], fj = w.row[static_cast<std::size_t>(j)];
      if ((*cert)[0] * fi + (*cert)[1] * fj != Polynomial::constant(n, 1))
        throw Error("qs: invalid Bezout certificate (internal)");
      PolyMatrix block(2, 2, n);
      block.at(0, 0) = (*cert)[0];
      block.at(0, 1) = -fj;
      block.at(1, 0) = (*cert)[1];
      block.at(1, 1) = fi;
      // apply on columns (i, j)
      std::vector<Polynomial> old_ui = w.U.column(i), old_uj = w.U.column(j);
      std::vector<Polynomial> new_ui(static_cast<std::size_t>(s)), new_uj(static_cast<std::size_t>(s));
      for (int r = 0; r < s; ++r) {
        new_ui[static_cast<std::size_t>(r)] = old_ui[static_cast<std::size_t>(r)] * block.at(0, 0) +
                                              old_uj[static_cast<std::size_t>(r)] * block.at(1, 0);
        new_uj[static_cast<std::size_t>(r)] = old_ui[static_cast<std::size_t>(r)] * block.at(0, 1) +
                                              old_uj[static_cast<std::size_t>(r)] * block.at(1, 1);
      }
      w.U.set_column(i, new_ui);
      w.U.set_column(j, new_uj);
      Polynomial one = fi * block.at(0, 0) + fj * block.at(1, 0);
      Polynomial zero = fi * block.at(0, 1) + fj * block.at(1, 1);
      w.row[static_cast<std::size_t>(i)] = one;
      w.row[static_cast<std::size_t>(j)] = zero;
      continue;  // a constant pivot now exists
    }

    bool shrank = false;
    while (auto_reduce_round(w)) shrank = true;
    if (shrank) continue;

    auto mu = is_unit_ideal(w.row);
    if (!mu) return std::nullopt;

    int zero_at = -1;
    for (int p = 0; p < s; ++p)
      if ((*mu)[static_cast<std::size_t>(p)].is_zero()) { zero_at = p; break; }

    if (zero_at < 0) {
      // repair the certificate so some position drops out of its support
      for (int p = 0; p < s && zero_at < 0; ++p) {
        std::vector<Polynomial> others;
        std::vector<int> omap;
        for (int j = 0; j < s; ++j)
          if (j != p) {
            others.push_back(w.row[static_cast<std::size_t>(j)]);
            omap.push_back(j);
          }
        auto lam = represent_in_ideal((*mu)[static_cast<std::size_t>(p)], others);
        if (!lam) continue;
        std::vector<Polynomial> fixed = *mu;
        fixed[static_cast<std::size_t>(p)] = Polynomial::zero(n);
        for (std::size_t t = 0; t < omap.size(); ++t)
          fixed[static_cast<std::size_t>(omap[t])] += (*lam)[t] * w.row[static_cast<std::size_t>(p)];
        mu = fixed;
        zero_at = p;
      }
    }

    if (zero_at >= 0) {
      Polynomial target = Polynomial::constant(n, 1) - w.row[static_cast<std::size_t>(zero_at)];
      w.rank_one(*mu, zero_at, target);
      continue;  // entry zero_at is now the constant 1
    }

    // seeded shortening: mix column 0 into the tail and retry on the tail
    for (int attempt = 0; attempt < 8; ++attempt) {
      RowWork trial = w;
      for (int j = 1; j < s; ++j) {
        Polynomial lambda = attempt < 4 ? Polynomial::constant(n, Rat(rng.int_in(-3, 3)))
                                        : Polynomial::constant(n, Rat(rng.int_in(-2, 2))) +
                                              Polynomial::variable(n, static_cast<int>(rng.int_in(0, n - 1))) *
                                                  Rat(rng.int_in(-2, 2));
        trial.axpy_col(j, 0, lambda);
      }
      std::vector<Polynomial> tail(trial.row.begin() + 1, trial.row.end());
      if (!is_unit_ideal(tail)) continue;
      auto inner = complete_row_heuristic(tail, rng, depth + 1);
      if (!inner) continue;
      PolyMatrix embedded = embed_block(inner->U, s, 1);
      PolyMatrix newU = trial.U * embedded;
      std::vector<Polynomial> nrow(static_cast<std::size_t>(s), Polynomial::zero(n));
      for (int j = 0; j < s; ++j)
        for (int t = 0; t < s; ++t) nrow[static_cast<std::size_t>(j)] += row[static_cast<std::size_t>(t)] * newU.at(t, j);
      RowWork fin(row);
      fin.U = newU;
      fin.det = trial.det * inner->det;
      fin.row = nrow;
      // tail became e_2-style: clear the head entry against it, then swap
      fin.axpy_col(0, 1, -fin.row[0]);
      fin.swap_cols(0, 1);
      if (fin.is_e1()) return RowCompletion{fin.U, fin.det, {}, {}};
    }
    return std::nullopt;
  }
  return std::nullopt;
}

struct Patch {
  RatMatrix y;            // constant invertible column mix; G = g * y
  Polynomial c;           // element of <D1, D2> free of the elimination variable
  Polynomial cof1, cof2;  // cof1 * D1 + cof2 * D2 = c
  Polynomial d1, d2;      // D1 = G_0, D2 = G_1
};

/// Numerators of the local completion W = y V_a V_b and of its inverse;
/// both carry denominator c exactly once.
struct LocalCompletion {
  PolyMatrix w_num;     // g * w_num = c * e1 (row form)
  PolyMatrix winv_num;  // w_num * winv_num = c^2 * I
};

inline LocalCompletion build_local_completion(const std::vector<Polynomial>& g, const Patch& patch) {
  const int s = static_cast<int>(g.size());
  const int n = g.front().vars();
  PolyMatrix y_poly = constant_matrix(patch.y, n);
  std::vector<Polynomial> gy(static_cast<std::size_t>(s), Polynomial::zero(n));
  for (int j = 0; j < s; ++j)
    for (int i = 0; i < s; ++i) gy[static_cast<std::size_t>(j)] += g[static_cast<std::size_t>(i)] * y_poly.at(i, j);

  PolyMatrix va_num = PolyMatrix::identity(s, n) * patch.c;
  va_num.at(0, 0) = patch.cof1;
  va_num.at(1, 0) = patch.cof2;
  va_num.at(0, 1) = -(patch.d2 * patch.c);
  va_num.at(1, 1) = patch.d1 * patch.c;

  PolyMatrix vainv_num = PolyMatrix::identity(s, n) * patch.c;
  vainv_num.at(0, 0) = patch.d1 * patch.c;
  vainv_num.at(0, 1) = patch.d2 * patch.c;
  vainv_num.at(1, 0) = -patch.cof2;
  vainv_num.at(1, 1) = patch.cof1;

  // row after V_a is (1, 0, gy_2, ..., gy_{s-1}); V_b clears the tail
  PolyMatrix vb = PolyMatrix::identity(s, n);
  PolyMatrix vbinv = PolyMatrix::identity(s, n);
  for (int j = 2; j < s; ++j) {
    vb.at(0, j) = -gy[static_cast<std::size_t>(j)];
    vbinv.at(0, j) = gy[static_cast<std::size_t>(j)];
  }

  LocalCompletion lc;
  lc.w_num = y_poly * va_num * vb;
  lc.winv_num = vbinv * vainv_num * constant_matrix(patch.y.inverse(), n);
  return lc;
}

/// Patch candidates for the prepared row g (g_0 monic in var): mix the
/// trailing columns into column 1 with a constant invertible y, then take
/// the var-free elements of a lex Groebner basis of <G_0, G_1> together
/// with their cofactors. Lex with var first makes those elements generate
/// the elimination ideal; the certified unit-ideal check over the
/// remaining variables decides when enough patches are collected.
inline std::optional<std::vector<Patch>> collect_patches(const std::vector<Polynomial>& g, int var,
                                                         Rng& rng, const QsOptions& opts) {
  const int s = static_cast<int>(g.size());
  const int n = g.front().vars();
  MonomialOrder lex_var_first;
  lex_var_first.kind = OrderKind::Lex;
  lex_var_first.perm.push_back(var);
  for (int v = 0; v < n; ++v)
    if (v != var) lex_var_first.perm.push_back(v);

  std::vector<Patch> patches;
  std::vector<Polynomial> c_list;
  for (int attempt = 0; attempt < 3 * opts.max_retries; ++attempt) {
    // column mix: pure pairs first, then random combinations
    std::vector<Rat> gamma(static_cast<std::size_t>(s), Rat(0));
    if (attempt < s - 1) {
      gamma[static_cast<std::size_t>(attempt + 1)] = 1;
    } else {
      for (int j = 1; j < s; ++j) gamma[static_cast<std::size_t>(j)] = Rat(rng.int_in(-3, 3));
    }
    int lead = -1;
    for (int j = 1; j < s; ++j)
      if (gamma[static_cast<std::size_t>(j)] != 0) { lead = j; break; }
    if (lead < 0) continue;

    RatMatrix y = RatMatrix::identity(s);
    for (int j = 0; j < s; ++j) y.at(j, lead) = gamma[static_cast<std::size_t>(j)];
    Polynomial d2(n);
    for (int j = 1; j < s; ++j)
      if (gamma[static_cast<std::size_t>(j)] != 0)
        d2 += g[static_cast<std::size_t>(j)] * gamma[static_cast<std::size_t>(j)];
    if (d2.is_zero()) continue;
    if (lead != 1) {
      // keep the mixed column in slot 1
      for (int j = 0; j < s; ++j) std::swap(y.at(j, 1), y.at(j, lead));
    }
    const Polynomial& d1 = g[0];

    GroebnerBasis gb = buchberger_cofactors({d1, d2}, lex_var_first);
    for (std::size_t b = 0; b < gb.basis.size(); ++b) {
      const Polynomial& cand = gb.basis[b];
      if (cand.uses_variable(var) || cand.is_zero()) continue;
      bool duplicate = false;
      for (const auto& seen : c_list) duplicate = duplicate || seen == cand;
      if (duplicate) continue;
      patches.push_back(Patch{y, cand, gb.cofactors.at(0, static_cast<int>(b)),
                              gb.cofactors.at(1, static_cast<int>(b)), d1, d2});
      c_list.push_back(cand);
    }
    if (!c_list.empty() && is_unit_ideal(c_list)) return patches;
  }
  return std::nullopt;
}

/// The full variable-elimination construction: shear preparation making
/// the pivot entry monic in the top variable, Euclidean column reduction
/// against it, a Bezout partition of the variable over squared patch
/// certificates, and the chain of glued local transforms.
inline RowCompletion complete_row_patch(const std::vector<Polynomial>& row, Rng& rng,
                                        const QsOptions& opts) {
  const int s = static_cast<int>(row.size());
  const int n = row.front().vars();
  const int k = top_active_variable(row);

  if (k < 0) {
    // constant row: finish with a constant transform
    RowWork w(row);
    int cpos = find_constant_entry(w);
    if (cpos < 0) throw Error("qs: constant row is zero (not unimodular)");
    if (!w.is_e1()) pivot_finish(w, cpos);
    RowCompletion rc{w.U, w.det, {}, w.U};
    return rc;
  }
  if (s < 2) throw Error("qs: a one-entry row with variables is not unimodular");

  for (int outer = 0; outer < opts.max_retries; ++outer) {
    // shear the lower variables into x_k so the pivot entry becomes monic
    RatMatrix C = RatMatrix::identity(n);
    if (outer > 0)
      for (int i = 0; i < k; ++i) C.at(i, k) = Rat(rng.int_in(-3, 3));
    std::vector<Polynomial> moved = linear_change_row(row, C);

    // pivot: a nonzero entry of minimal total degree
    int pivot = -1;
    for (int j = 0; j < s; ++j) {
      if (moved[static_cast<std::size_t>(j)].is_zero()) continue;
      if (pivot < 0 || moved[static_cast<std::size_t>(j)].total_degree() <
                           moved[static_cast<std::size_t>(pivot)].total_degree())
        pivot = j;
    }
    if (pivot < 0) throw Error("qs: zero row is not unimodular");

    RowWork w(moved);
    w.swap_cols(0, pivot);
    if (w.row[0].is_constant()) {
      pivot_finish(w, 0);
      RowCompletion rc;
      rc.U = linear_change_all(w.U, C.inverse());
      rc.det = w.det;
      rc.level_factors.push_back(LevelFactor{k, rc.U});
      rc.constant_factor = PolyMatrix::identity(s, n);
      return rc;
    }
    if (!monic_in(w.row[0], k) || w.row[0].degree_in(k) != w.row[0].total_degree()) continue;
    // normalize the x_k-leading coefficient to one so plain subtraction
    // cancels leading terms in the Euclid loop below
    w.scale_col(0, Rat(1) / coeff_of_power(w.row[0], k, static_cast<std::uint32_t>(w.row[0].degree_in(k)))
                                .constant_value());

    // Euclidean reduction of the other entries against the monic pivot
    for (int j = 1; j < s; ++j) {
      int d0 = w.row[0].degree_in(k);
      while (!w.row[static_cast<std::size_t>(j)].is_zero() &&
             w.row[static_cast<std::size_t>(j)].degree_in(k) >= d0) {
        int dj = w.row[static_cast<std::size_t>(j)].degree_in(k);
        Polynomial lead = coeff_of_power(w.row[static_cast<std::size_t>(j)], k,
                                         static_cast<std::uint32_t>(dj));
        Monomial shift(n);
        shift.e[static_cast<std::size_t>(k)] = static_cast<std::uint32_t>(dj - d0);
        w.axpy_col(j, 0, -lead.times_term(shift, Rat(1)));
      }
    }
    std::vector<Polynomial> g = w.row;

    auto patches_opt = collect_patches(g, k, rng, opts);
    if (!patches_opt) continue;
    std::vector<Patch>& patches = *patches_opt;
    std::vector<Polynomial> c_list;
    for (const auto& p : patches) c_list.push_back(p.c);

    // Bezout partition of x_k against the squared resultants
    std::vector<Polynomial> c_sq;
    for (const auto& p : patches) c_sq.push_back(p.c * p.c);
    Polynomial xk = Polynomial::variable(n, k);
    auto lift = represent_in_ideal(xk, c_sq);
    if (!lift) continue;

    // chain x_k = t_0 -> t_1 -> ... -> 0 with t_{j-1} - t_j = a_j c_j^2
    std::vector<Polynomial> t_chain{xk};
    for (std::size_t j = 0; j < patches.size(); ++j)
      t_chain.push_back(t_chain.back() - (*lift)[j] * c_sq[j]);
    if (!t_chain.back().is_zero()) throw Error("qs: Bezout partition does not telescope (internal)");

    PolyMatrix echain = PolyMatrix::identity(s, n);
    bool chain_ok = true;
    for (std::size_t j = 0; j < patches.size() && chain_ok; ++j) {
      // certify the patch data once; together with the exact divisions
      // below this pins det(E_j) = 1 without computing any determinant
      if (patches[j].cof1 * patches[j].d1 + patches[j].cof2 * patches[j].d2 != patches[j].c)
        throw Error("qs: patch cofactor identity failed (internal)");
      LocalCompletion lc = build_local_completion(g, patches[j]);
      Polynomial c2 = c_sq[j];
      {
        PolyMatrix prod = lc.w_num * lc.winv_num;
        if (prod != PolyMatrix::identity(s, n) * c2)
          throw Error("qs: local completion inverse check failed (internal)");
      }
      PolyMatrix w_u = substitute_all(lc.w_num, k, t_chain[j]);
      PolyMatrix winv_v = substitute_all(lc.winv_num, k, t_chain[j + 1]);
      PolyMatrix theta = w_u * winv_v;
      PolyMatrix e(s, s, n);
      for (int a = 0; a < s && chain_ok; ++a)
        for (int b = 0; b < s && chain_ok; ++b) {
          auto q = divide_exact(theta.at(a, b), c2);
          if (!q) chain_ok = false;
          else e.at(a, b) = *q;
        }
      if (!chain_ok) break;
      // verify: g(t_{j-1}) * e = g(t_j)
      std::vector<Polynomial> gu = substitute_row(g, k, t_chain[j]);
      std::vector<Polynomial> gv = substitute_row(g, k, t_chain[j + 1]);
      for (int b = 0; b < s && chain_ok; ++b) {
        Polynomial acc(n);
        for (int a = 0; a < s; ++a) acc += gu[static_cast<std::size_t>(a)] * e.at(a, b);
        if (acc != gv[static_cast<std::size_t>(b)]) chain_ok = false;
      }
      if (chain_ok) echain = echain * e;
    }
    if (!chain_ok) continue;

    std::vector<Polynomial> g0 = substitute_row(g, k, Polynomial::zero(n));
    RowCompletion inner = complete_row_patch(g0, rng, opts);

    // pull the shear back out: moved = row(C x), so row * C^{-1}(...) = e1
    RatMatrix Cinv = C.inverse();
    PolyMatrix level_T = linear_change_all(w.U * echain, Cinv);
    RowCompletion out;
    out.U = linear_change_all(w.U * echain * inner.U, Cinv);
    out.det = w.det * inner.det;  // every chain factor has determinant one
    out.level_factors.push_back(LevelFactor{k, level_T});
    for (auto& lf : inner.level_factors)
      out.level_factors.push_back(LevelFactor{lf.var, linear_change_all(lf.T, Cinv)});
    if (inner.constant_factor) out.constant_factor = linear_change_all(*inner.constant_factor, Cinv);
    return out;
  }
  throw Error("qs: retry budget exhausted while eliminating a variable");
}

inline RowCompletion complete_row_any(const std::vector<Polynomial>& row, Rng& rng, const QsOptions& opts) {
  if (!opts.force_patch_route) {
    Rng heur = rng.child(0xa);
    if (auto u = complete_row_heuristic(row, heur, 0)) return RowCompletion{*u, {}, std::nullopt};
  }
  Rng patch = rng.child(0xb);
  return complete_row_patch(row, patch, opts);
}

inline void verify_row_completion(const std::vector<Polynomial>& row, const PolyMatrix& U) {
  const int s = static_cast<int>(row.size());
  const int n = row.front().vars();
  for (int j = 0; j < s; ++j) {
    Polynomial acc(n);
    for (int i = 0; i < s; ++i) acc += row[static_cast<std::size_t>(i)] * U.at(i, j);
    Polynomial want = j == 0 ? Polynomial::constant(n, 1) : Polynomial::zero(n);
    if (acc != want) throw Error("qs: completion postcondition failed (internal)");
  }
}

}  // namespace qs_detail

/// Constant full-row-rank r x s matrix to [I_r | 0] by column reduction.
inline PolyMatrix complete_constant(const PolyMatrix& f0) {
  const int r = f0.rows(), s = f0.cols(), n = f0.vars();
  if (r > s) throw Error("complete_constant: need rows <= cols");
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < s; ++j)
      if (!f0.at(i, j).is_constant()) throw Error("complete_constant: matrix has non-constant entries");
  PolyMatrix w(f0);
  PolyMatrix u = PolyMatrix::identity(s, n);
  for (int i = 0; i < r; ++i) {
    int pivot = -1;
    for (int j = i; j < s; ++j)
      if (!w.at(i, j).is_zero()) { pivot = j; break; }
    if (pivot < 0) throw Error("complete_constant: rank-deficient matrix");
    if (pivot != i) {
      w.swap_cols(i, pivot);
      u.swap_cols(i, pivot);
    }
    Rat inv = Rat(1) / w.at(i, i).constant_value();
    w.scale_col(i, inv);
    u.scale_col(i, inv);
    for (int j = 0; j < s; ++j) {
      if (j == i || w.at(i, j).is_zero()) continue;
      Polynomial c = -w.at(i, j);
      w.axpy_col(j, i, c);
      u.axpy_col(j, i, c);
    }
  }
  return u;
}

/// Noether preparation of a unimodular matrix for its top active variable:
/// prepared = F(C x) * A with the leading r x r minor monic in that
/// variable and strictly dominant in total degree; deg <= deg(F) + 1.
inline NoetherPreparation noether_prepare(const PolyMatrix& F, std::uint64_t seed,
                                          const QsOptions& opts = {}) {
  const int r = F.rows(), s = F.cols(), n = F.vars();
  if (r > s) throw Error("noether_prepare: need rows <= cols");
  if (r > 2) throw Error("noether_prepare: only r = 1 or r = 2 is supported");
  std::vector<Polynomial> flat;
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < s; ++j) flat.push_back(F.at(i, j));
  int k = qs_detail::top_active_variable(flat);
  if (k < 0) k = n - 1;
  if (k < 0) throw Error("noether_prepare: ring has no variables");

  Rng rng(seed);
  for (int attempt = 0; attempt < opts.max_retries; ++attempt) {
    RatMatrix C = RatMatrix::identity(n);
    if (attempt > 0)
      for (int i = 0; i < k; ++i) C.at(i, k) = Rat(rng.int_in(-4, 4));
    PolyMatrix moved = qs_detail::linear_change_all(F, C);

    // bring a maximal-degree minor into the leading columns
    PolyMatrix perm = PolyMatrix::identity(s, n);
    if (r == 1) {
      int jmax = 0;
      for (int j = 1; j < s; ++j)
        if (moved.at(0, j).total_degree() > moved.at(0, jmax).total_degree()) jmax = j;
      if (jmax != 0) perm.swap_cols(0, jmax);
    } else {
      int bi = 0, bj = 1, best = kDegreeOfZero;
      for (int i = 0; i < s; ++i)
        for (int j = i + 1; j < s; ++j) {
          Polynomial mij = moved.at(0, i) * moved.at(1, j) - moved.at(0, j) * moved.at(1, i);
          if (mij.total_degree() > best) {
            best = mij.total_degree();
            bi = i;
            bj = j;
          }
        }
      if (bi != 0) perm.swap_cols(0, bi);
      // track where bj went under the first swap
      int bj_now = bj == 0 ? bi : bj;
      if (bj_now != 1) perm.swap_cols(1, bj_now);
    }
    PolyMatrix A_total = perm * qs_detail::cyclic_A(s, r, k, n);
    PolyMatrix prepared = moved * A_total;

    std::vector<int> lead_cols;
    for (int j = 0; j < r; ++j) lead_cols.push_back(j);
    std::vector<int> all_rows;
    for (int i = 0; i < r; ++i) all_rows.push_back(i);
    Polynomial d1 = prepared.select(all_rows, lead_cols).determinant();
    if (!qs_detail::monic_in(d1, k)) continue;
    if (d1.degree_in(k) != d1.total_degree()) continue;

    bool dominant = true;
    auto minors = prepared.maximal_minors();
    // the first minor in lexicographic column selection is d1 itself
    for (std::size_t t = 1; t < minors.size() && dominant; ++t)
      if (minors[t].total_degree() >= d1.total_degree()) dominant = false;
    if (!dominant) continue;
    if (prepared.matrix_degree() > F.matrix_degree() + 1)
      throw Error("noether_prepare: degree bookkeeping violated (internal)");
    return NoetherPreparation{C, A_total, prepared, k};
  }
  throw Error("noether_prepare: retry budget exhausted");
}

/// Samples n constant matrices y^i and certifies that the resultants
/// c(x, y^i) of the two leading minors of prepared * Y generate the unit
/// ideal. The elimination variable is the preparation's.
inline YSampling sample_y_matrices(const PolyMatrix& prepared, std::uint64_t seed,
                                   const QsOptions& opts = {}) {
  const int r = prepared.rows(), s = prepared.cols(), n = prepared.vars();
  if (r > 2 || r < 1) throw Error("sample_y_matrices: only r = 1 or r = 2 is supported");
  std::vector<Polynomial> flat;
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < s; ++j) flat.push_back(prepared.at(i, j));
  int k = qs_detail::top_active_variable(flat);
  if (k < 0) k = n - 1;

  Rng rng(seed);
  std::vector<int> all_rows;
  for (int i = 0; i < r; ++i) all_rows.push_back(i);
  std::vector<int> cols_d1, cols_d2;
  for (int j = 0; j < r; ++j) cols_d1.push_back(j);
  for (int j = 0; j + 1 < r; ++j) cols_d2.push_back(j);
  cols_d2.push_back(r);

  for (int batch = 0; batch < opts.max_retries; ++batch) {
    YSampling out;
    out.elim_var = k;
    for (int slot = 0; slot < n; ++slot) {
      bool found = false;
      for (int attempt = 0; attempt < opts.max_retries && !found; ++attempt) {
        RatMatrix y = RatMatrix::identity(s);
        if (!(batch == 0 && slot == 0 && attempt == 0)) {
          do {
            for (int i = 0; i < s; ++i)
              for (int j = 0; j < s; ++j) y.at(i, j) = Rat(rng.int_in(-3, 3));
          } while (y.det() == 0);
        }
        PolyMatrix gy = prepared * qs_detail::constant_matrix(y, n);
        Polynomial d1 = gy.select(all_rows, cols_d1).determinant();
        Polynomial d2 = gy.select(all_rows, cols_d2).determinant();
        if (d1.is_zero() && d2.is_zero()) continue;
        Polynomial c = resultant(d1, d2, k);
        if (c.is_zero()) continue;
        out.y_matrices.push_back(y);
        out.c_values.push_back(c);
        found = true;
      }
      if (!found) break;
    }
    if (static_cast<int>(out.c_values.size()) < n) continue;
    auto cert = is_unit_ideal(out.c_values);
    if (!cert) continue;
    out.bezout = *cert;
    return out;
  }
  throw Error("sample_y_matrices: retry budget exhausted");
}

/// Coefficients a_i with var = sum a_i c_i, via a membership certificate.
inline std::vector<Polynomial> bezout_lift_xn(const std::vector<Polynomial>& c_list, int var) {
  if (c_list.empty()) throw Error("bezout_lift_xn: empty list");
  const int n = c_list.front().vars();
  Polynomial xk = Polynomial::variable(n, var);
  for (std::size_t i = 0; i < c_list.size(); ++i) {
    if (c_list[i].is_constant() && !c_list[i].is_zero()) {
      std::vector<Polynomial> a(c_list.size(), Polynomial::zero(n));
      a[i] = xk * (Rat(1) / c_list[i].constant_value());
      return a;
    }
  }
  auto rep = represent_in_ideal(xk, c_list);
  if (!rep) throw Error("bezout_lift_xn: unit-ideal certificate missing (var not in the ideal)");
  return *rep;
}

/// Effective completion of a unimodular r x s matrix: F * U = [I_r | 0]
/// with det(U) a nonzero constant and the explicit degree budget asserted.
inline CompletionCertificate qs_transform(const PolyMatrix& F, std::uint64_t seed,
                                          const QsOptions& opts = {}) {
  const int r = F.rows(), s = F.cols(), n = F.vars();
  if (r > s) throw Error("qs_transform: need rows <= cols");
  if (r > 2) throw Error("qs_transform: only r = 1 or r = 2 is supported");

  auto chk = unimodularity(F);
  if (!chk.unimodular) {
    std::ostringstream msg;
    msg << "qs_transform: matrix is not unimodular; the maximal minors generate a proper ideal with "
           "reduced basis {";
    auto gb = buchberger_cofactors(chk.minors);
    VarTable names = qs_detail::synthetic_vars(n);
    for (std::size_t i = 0; i < gb.basis.size(); ++i) {
      if (i) msg << ", ";
      msg << to_string(gb.basis[i], names);
    }
    msg << "}";
    throw Error(msg.str());
  }

  Rng rng(seed);
  CompletionCertificate cert;
  cert.rng_seed = seed;

  if (r == 1) {
    auto rc = qs_detail::complete_row_any(F.row(0), rng, opts);
    qs_detail::verify_row_completion(F.row(0), rc.U);
    cert.U = rc.U;
    if (!rc.level_factors.empty() || rc.constant_factor) {
      // pad to one factor per variable, highest first, then the constant one
      for (int v = n - 1; v >= 0; --v) {
        PolyMatrix t = PolyMatrix::identity(s, n);
        for (const auto& lf : rc.level_factors)
          if (lf.var == v) t = lf.T;
        cert.elimination_trace.push_back(t);
      }
      cert.elimination_trace.push_back(rc.constant_factor ? *rc.constant_factor
                                                          : PolyMatrix::identity(s, n));
    }
  } else if (s == 2) {
    cert.U = F.inverse_unimodular();  // square unimodular: the inverse completes
  } else {
    // rows of a unimodular two-row matrix are unimodular rows: complete the
    // first, then the tail of the second, then clear the hanging entry
    Rng r1 = rng.child(1), r2 = rng.child(2);
    auto v1 = qs_detail::complete_row_any(F.row(0), r1, opts);
    PolyMatrix g = F * v1.U;
    std::vector<Polynomial> second_row = g.row(1);
    std::vector<Polynomial> tail(second_row.begin() + 1, second_row.end());
    auto v2 = qs_detail::complete_row_any(tail, r2, opts);
    PolyMatrix v2e = qs_detail::embed_block(v2.U, s, 1);
    PolyMatrix g2 = g * v2e;
    PolyMatrix fix = PolyMatrix::identity(s, n);
    fix.axpy_col(0, 1, -g2.at(1, 0));
    cert.U = v1.U * v2e * fix;
  }

  // postconditions
  PolyMatrix target(r, s, n);
  for (int i = 0; i < r; ++i) target.at(i, i) = Polynomial::constant(n, 1);
  if (F * cert.U != target) throw Error("qs_transform: completion postcondition failed (internal)");
  Polynomial det = cert.U.determinant();
  if (!det.is_constant() || det.is_zero())
    throw Error("qs_transform: determinant is not a nonzero constant (internal)");

  cert.degree = std::max(cert.U.matrix_degree(), 0);
  int d = std::max(F.matrix_degree(), 0);
  DegreeBudget budget;
  budget.n = n;
  budget.r = r;
  budget.d = d;
  if (Int(cert.degree) > evaluate_bound(BoundFormula::QS_EXPLICIT, budget))
    throw Error("qs_transform: certificate exceeds the explicit degree bound");
  return cert;
}

/// U_var with F * U_var = F|_{var=0}, built from two completions: if
/// F V = [I|0] and F0 V0 = [I|0] then V V0^{-1} maps F to F0.
inline PolyMatrix eliminate_variable(const PolyMatrix& F, int var, std::uint64_t seed,
                                     const QsOptions& opts = {}) {
  const int n = F.vars();
  if (var < 0 || var >= n) throw Error("eliminate_variable: variable out of range");
  PolyMatrix F0 = qs_detail::substitute_all(F, var, Polynomial::zero(n));
  if (F0 == F) {
    if (!is_unimodular(F)) throw Error("eliminate_variable: matrix is not unimodular");
    return PolyMatrix::identity(F.cols(), n);
  }
  Rng rng(seed);
  auto vf = qs_transform(F, rng.child(1).next(), opts);
  auto v0 = qs_transform(F0, rng.child(2).next(), opts);
  PolyMatrix u = vf.U * v0.U.inverse_unimodular();
  if (F * u != F0) throw Error("eliminate_variable: postcondition failed (internal)");
  Polynomial det = u.determinant();
  if (!det.is_constant() || det.is_zero())
    throw Error("eliminate_variable: determinant is not a nonzero constant (internal)");
  return u;
}

}  // namespace syz
