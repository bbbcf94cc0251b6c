#pragma once

#include "syz/quillen_suslin.hpp"

#include <optional>
#include <string>
#include <vector>

namespace syz {

/// Input data: generators a_1..a_m together with p, q generating the same
/// grade-two ideal, plus optional conversion matrices that are verified,
/// never trusted.
struct Grade2Instance {
  int n = 0;  // variable count
  int m = 0;  // number of generators, >= 2
  std::vector<Polynomial> a;
  Polynomial p, q;
  std::optional<PolyMatrix> M;  // 2 x m with (p q) M = (a_1 ... a_m)
  std::optional<PolyMatrix> N;  // m x 2 with (a_1 ... a_m) N = (p q)
  bool zero_dimensional = false;
};

inline Grade2Instance make_instance(std::vector<Polynomial> a, Polynomial p, Polynomial q,
                                    std::optional<PolyMatrix> M = {}, std::optional<PolyMatrix> N = {},
                                    bool zero_dimensional = false) {
  if (a.size() < 2) throw Error("at least two generators required");
  Grade2Instance inst;
  inst.n = p.vars();
  inst.m = static_cast<int>(a.size());
  for (const auto& f : a) p.check_same_ring(f);
  p.check_same_ring(q);
  if (M) {
    if (M->rows() != 2 || M->cols() != inst.m) throw Error("matrix M must have shape 2 x m");
  }
  if (N) {
    if (N->rows() != inst.m || N->cols() != 2) throw Error("matrix N must have shape m x 2");
  }
  inst.a = std::move(a);
  inst.p = std::move(p);
  inst.q = std::move(q);
  inst.M = std::move(M);
  inst.N = std::move(N);
  inst.zero_dimensional = zero_dimensional;
  return inst;
}

/// The conversion matrices with the 2 x 2 product K = M N and the pair
/// (e, f) that writes K in the forced shape [[1-eq, fq], [ep, 1-fp]].
struct ConversionPair {
  PolyMatrix M;  // 2 x m
  PolyMatrix N;  // m x 2
  PolyMatrix K;  // M * N
  Polynomial e, f;
};

enum class Strategy { Auto, ViaTildeM, ViaM, ViaN, UnitIdealDirect };

inline const char* strategy_id(Strategy s) {
  switch (s) {
    case Strategy::Auto: return "auto";
    case Strategy::ViaTildeM: return "tilde-m";
    case Strategy::ViaM: return "m";
    case Strategy::ViaN: return "n";
    case Strategy::UnitIdealDirect: return "unit-ideal";
  }
  return "?";
}

inline std::optional<Strategy> parse_strategy(const std::string& s) {
  for (Strategy k : {Strategy::Auto, Strategy::ViaTildeM, Strategy::ViaM, Strategy::ViaN,
                     Strategy::UnitIdealDirect})
    if (s == strategy_id(k)) return k;
  return std::nullopt;
}

struct BoundComparison {
  BoundFormula formula;
  Int value;
  int actual_degree;
  bool satisfied;
};

/// Everything the Hilbert-Burch converse asks of a candidate basis, plus
/// the degree bookkeeping against the applicable closed-form bounds.
struct VerificationReport {
  std::vector<bool> syzygy_ok;       // one flag per column
  bool minors_ok = false;            // signed maximal minors = unit * (a_i)
  Rat unit = 0;
  std::vector<int> column_degrees;
  std::vector<BoundComparison> bounds;
  std::vector<std::string> warnings;

  bool all_ok() const {
    if (!minors_ok || unit == 0) return false;
    for (bool ok : syzygy_ok)
      if (!ok) return false;
    for (const auto& b : bounds)
      if (!b.satisfied) return false;
    return true;
  }
};

struct SyzygyBasis {
  PolyMatrix B;  // m x (m-1); columns form a basis of the syzygy module
  Strategy strategy = Strategy::Auto;
  std::optional<CompletionCertificate> certificate;
  VerificationReport verification;
};

namespace syz_detail {

inline std::vector<Polynomial> row_times_matrix(const std::vector<Polynomial>& row,
                                                const PolyMatrix& m) {
  const int n = row.front().vars();
  std::vector<Polynomial> out(static_cast<std::size_t>(m.cols()), Polynomial::zero(n));
  for (int j = 0; j < m.cols(); ++j)
    for (int i = 0; i < m.rows(); ++i) out[static_cast<std::size_t>(j)] += row[static_cast<std::size_t>(i)] * m.at(i, j);
  return out;
}

inline bool pq_times_M_is_a(const Polynomial& p, const Polynomial& q, const PolyMatrix& M,
                            const std::vector<Polynomial>& a) {
  std::vector<Polynomial> prod = row_times_matrix({p, q}, M);
  for (std::size_t i = 0; i < a.size(); ++i)
    if (prod[i] != a[i]) return false;
  return true;
}

inline bool a_times_N_is_pq(const std::vector<Polynomial>& a, const PolyMatrix& N,
                            const Polynomial& p, const Polynomial& q) {
  std::vector<Polynomial> prod = row_times_matrix(a, N);
  return prod[0] == p && prod[1] == q;
}

inline int degree_of(const std::vector<Polynomial>& polys) {
  int d = kDegreeOfZero;
  for (const auto& f : polys) d = std::max(d, f.total_degree());
  return d;
}

}  // namespace syz_detail

/// Hilbert-Burch converse certificate on a candidate m x (m-1) matrix:
/// every column a syzygy of a, and the signed maximal minors reproducing
/// (a_i) up to one global nonzero constant, found at the first index with
/// a_i != 0 and then enforced everywhere.
inline VerificationReport verify_basis(const std::vector<Polynomial>& a, const PolyMatrix& B) {
  const int m = static_cast<int>(a.size());
  const int n = a.front().vars();
  if (B.rows() != m || B.cols() != m - 1)
    throw Error("verify_basis: candidate must have shape m x (m-1)");
  VerificationReport rep;
  for (int j = 0; j < m - 1; ++j) {
    Polynomial acc(n);
    int cd = kDegreeOfZero;
    for (int i = 0; i < m; ++i) {
      acc += a[static_cast<std::size_t>(i)] * B.at(i, j);
      cd = std::max(cd, B.at(i, j).total_degree());
    }
    rep.syzygy_ok.push_back(acc.is_zero());
    rep.column_degrees.push_back(cd);
  }
  std::vector<Polynomial> minors = B.signed_maximal_minors();
  rep.minors_ok = true;
  rep.unit = 0;
  for (int i = 0; i < m && rep.unit == 0; ++i) {
    if (a[static_cast<std::size_t>(i)].is_zero()) continue;
    auto qm = divide_exact(minors[static_cast<std::size_t>(i)], a[static_cast<std::size_t>(i)]);
    if (!qm || !qm->is_constant()) {
      rep.minors_ok = false;
      return rep;
    }
    rep.unit = qm->constant_value();
  }
  if (rep.unit == 0) {
    rep.minors_ok = false;  // a is the zero sequence or the minors vanish
    return rep;
  }
  for (int i = 0; i < m; ++i)
    if (minors[static_cast<std::size_t>(i)] != a[static_cast<std::size_t>(i)] * rep.unit) {
      rep.minors_ok = false;
      return rep;
    }
  return rep;
}

inline void attach_bound(VerificationReport& rep, BoundFormula formula, const DegreeBudget& budget,
                         int actual_degree) {
  Int value = evaluate_bound(formula, budget);
  rep.bounds.push_back(BoundComparison{formula, value, actual_degree, Int(actual_degree) <= value});
}

PolyMatrix extend_tilde_M(const PolyMatrix& M, const Polynomial& p, const Polynomial& q);

namespace syz_detail {

/// A raw certificate N need not have unimodular transpose (contrary to
/// what the source theory asserts: adding a syzygy column to N preserves
/// (a) N = (p q) but can kill the minor ideal). The reliable repair goes
/// through a unimodular M: with gcd(p, q) = 1 every valid M is
/// M0 + (-q, p)^t h^t for some h, a generic h makes it unimodular, and the
/// first two columns of its completion give N with M N = I_2, which forces
/// the minor ideal of N to be the whole ring.
inline std::optional<PolyMatrix> repair_N(const Grade2Instance& inst, const PolyMatrix& M,
                                          const PolyMatrix& N0, const QsOptions& opts) {
  if (is_unimodular(N0.transpose())) return N0;
  const int m = inst.m, n = inst.n;

  Rng rng(0x5eedULL);
  std::optional<PolyMatrix> good_M;
  for (int attempt = 0; attempt < opts.max_retries && !good_M; ++attempt) {
    PolyMatrix candidate = M;
    if (attempt > 0) {
      for (int j = 0; j < m; ++j) {
        Polynomial h = Polynomial::constant(n, Rat(rng.int_in(-2, 2)));
        if (attempt >= 8)
          h += Polynomial::variable(n, static_cast<int>(rng.int_in(0, n - 1))) * Rat(rng.int_in(-2, 2));
        candidate.at(0, j) += -inst.q * h;
        candidate.at(1, j) += inst.p * h;
      }
    }
    if (is_unimodular(candidate)) good_M = candidate;
  }
  if (!good_M) return std::nullopt;

  auto cert = qs_transform(*good_M, rng.next(), opts);
  std::vector<int> top;
  for (int i = 0; i < m; ++i) top.push_back(i);
  PolyMatrix N = cert.U.select(top, {0, 1});
  if (!a_times_N_is_pq(inst.a, N, inst.p, inst.q)) return std::nullopt;
  if (!is_unimodular(N.transpose())) return std::nullopt;
  return N;
}

}  // namespace syz_detail

/// M, N, K, e, f for a validated instance. Supplied matrices are verified;
/// missing ones are built from Groebner cofactor certificates (valid but
/// not canonical), with N repaired to a unimodular representative when the
/// raw certificate is not one.
inline ConversionPair derive_conversion(const Grade2Instance& inst, const QsOptions& opts = {}) {
  const int n = inst.n;
  PolyMatrix M(2, inst.m, n), N(inst.m, 2, n);
  if (inst.M) {
    if (!syz_detail::pq_times_M_is_a(inst.p, inst.q, *inst.M, inst.a))
      throw Error("derive_conversion: supplied M does not satisfy (p q) M = (a_1 ... a_m)");
    M = *inst.M;
  } else {
    GroebnerBasis gb = buchberger_cofactors({inst.p, inst.q});
    for (int i = 0; i < inst.m; ++i) {
      auto rep = gb.represent(inst.a[static_cast<std::size_t>(i)]);
      if (!rep) throw Error("derive_conversion: generator not in <p, q> (ideal equality violated)");
      M.at(0, i) = (*rep)[0];
      M.at(1, i) = (*rep)[1];
    }
  }
  if (inst.N) {
    if (!syz_detail::a_times_N_is_pq(inst.a, *inst.N, inst.p, inst.q))
      throw Error("derive_conversion: supplied N does not satisfy (a_1 ... a_m) N = (p q)");
    if (!is_unimodular(inst.N->transpose()))
      throw Error(
          "derive_conversion: supplied N is not unimodular; omit it to derive a valid one, or "
          "supply a unimodular N");
    N = *inst.N;
  } else {
    GroebnerBasis gb = buchberger_cofactors(inst.a);
    auto rp = gb.represent(inst.p);
    auto rq = gb.represent(inst.q);
    if (!rp || !rq) throw Error("derive_conversion: p or q not in <a_1, ..., a_m>");
    for (int i = 0; i < inst.m; ++i) {
      N.at(i, 0) = (*rp)[static_cast<std::size_t>(i)];
      N.at(i, 1) = (*rq)[static_cast<std::size_t>(i)];
    }
    auto fixed = syz_detail::repair_N(inst, M, N, opts);
    if (!fixed) throw Error("derive_conversion: could not construct a unimodular N");
    N = *fixed;
  }

  ConversionPair pair{M, N, M * N, Polynomial::zero(n), Polynomial::zero(n)};
  auto e = divide_exact(pair.K.at(1, 0), inst.p);
  auto f = divide_exact(pair.K.at(0, 1), inst.q);
  if (!e || !f)
    throw Error("derive_conversion: K entries not divisible by p, q (is gcd(p, q) = 1?)");
  pair.e = *e;
  pair.f = *f;
  Polynomial one = Polynomial::constant(n, 1);
  if (pair.K.at(0, 0) != one - pair.e * inst.q || pair.K.at(1, 1) != one - pair.f * inst.p)
    throw Error("derive_conversion: K does not have the forced shape (inconsistent input)");
  return pair;
}

/// [M | (-q, p)^t], unimodular whenever (p q) M = (a) holds on a validated
/// instance; the assertion failing signals invalid input.
inline PolyMatrix extend_tilde_M(const PolyMatrix& M, const Polynomial& p, const Polynomial& q) {
  PolyMatrix Mt(2, M.cols() + 1, M.vars());
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < M.cols(); ++j) Mt.at(i, j) = M.at(i, j);
  Mt.at(0, M.cols()) = -q;
  Mt.at(1, M.cols()) = p;
  if (!is_unimodular(Mt))
    throw Error("extend_tilde_M: extended matrix is not unimodular (invalid conversion data)");
  return Mt;
}

/// Unimodular replacement M' = M + [[x_i q], [-x_i p]] with M' N = I_2.
/// The correction vector comes from the completion of N^t; the sign of the
/// (e, f) target is settled by the binding check M' N = I_2.
inline PolyMatrix make_unimodular_M(const ConversionPair& pair, const Polynomial& p,
                                    const Polynomial& q, std::uint64_t seed,
                                    const QsOptions& opts = {}) {
  const int n = p.vars();
  const int m = pair.M.cols();
  if (pair.e.is_zero() && pair.f.is_zero()) return pair.M;

  auto un = qs_transform(pair.N.transpose(), seed, opts);
  PolyMatrix I2 = PolyMatrix::identity(2, n);
  for (int sign_try = 0; sign_try < 2; ++sign_try) {
    std::vector<Polynomial> x(static_cast<std::size_t>(m), Polynomial::zero(n));
    for (int i = 0; i < m; ++i) {
      Polynomial second = un.U.at(i, 1) * pair.f;
      x[static_cast<std::size_t>(i)] =
          sign_try == 0 ? un.U.at(i, 0) * pair.e - second : un.U.at(i, 0) * pair.e + second;
    }
    PolyMatrix Mp = pair.M;
    for (int j = 0; j < m; ++j) {
      Mp.at(0, j) += x[static_cast<std::size_t>(j)] * q;
      Mp.at(1, j) -= x[static_cast<std::size_t>(j)] * p;
    }
    if (Mp * pair.N == I2) return Mp;
  }
  throw Error("make_unimodular_M: correction failed on both sign conventions (internal)");
}

namespace syz_detail {

inline DegreeBudget base_budget(const Grade2Instance& inst) {
  DegreeBudget b;
  b.n = inst.n;
  b.m = inst.m;
  b.delta0 = std::max({inst.p.total_degree(), inst.q.total_degree(), 0});
  b.delta_a = std::max(degree_of(inst.a), 0);
  return b;
}

inline SyzygyBasis finish_basis(const Grade2Instance& inst, PolyMatrix B, Strategy strategy,
                                std::optional<CompletionCertificate> cert, DegreeBudget budget,
                                BoundFormula strategy_formula) {
  SyzygyBasis out;
  out.B = std::move(B);
  out.strategy = strategy;
  out.certificate = std::move(cert);
  out.verification = verify_basis(inst.a, out.B);
  int deg = std::max(out.B.matrix_degree(), 0);
  attach_bound(out.verification, strategy_formula, budget, deg);
  if (!out.verification.all_ok())
    throw Error("syzygy basis failed verification (internal bug trap)");
  return out;
}

}  // namespace syz_detail

/// Basis from the completion of the extended matrix: U with
/// tilde(M) U = [I_2 | 0]; dropping the first two columns and the last row
/// leaves an m x (m-1) basis of the syzygy module.
inline SyzygyBasis basis_via_tilde_M(const Grade2Instance& inst, const PolyMatrix& M,
                                     std::uint64_t seed, const QsOptions& opts = {}) {
  if (!syz_detail::pq_times_M_is_a(inst.p, inst.q, M, inst.a))
    throw Error("basis_via_tilde_M: (p q) M = (a) fails");
  PolyMatrix Mt = extend_tilde_M(M, inst.p, inst.q);
  auto cert = qs_transform(Mt, seed, opts);
  std::vector<int> rows, cols;
  for (int i = 0; i < inst.m; ++i) rows.push_back(i);
  for (int j = 2; j <= inst.m; ++j) cols.push_back(j);
  PolyMatrix B = cert.U.select(rows, cols);
  DegreeBudget budget = syz_detail::base_budget(inst);
  budget.delta_M = std::max(M.matrix_degree(), 0);
  return syz_detail::finish_basis(inst, std::move(B), Strategy::ViaTildeM, std::move(cert), budget,
                                  BoundFormula::TILDE_M);
}

/// Basis from a unimodular M: U* with M U* = [I_2 | 0]; the basis columns
/// are (q U*1 - p U*2, U*3, ..., U*m).
inline SyzygyBasis basis_via_M(const Grade2Instance& inst, const PolyMatrix& M_unimodular,
                               std::uint64_t seed, const QsOptions& opts = {}) {
  if (!syz_detail::pq_times_M_is_a(inst.p, inst.q, M_unimodular, inst.a))
    throw Error("basis_via_M: (p q) M = (a) fails");
  if (!is_unimodular(M_unimodular))
    throw Error("basis_via_M: M is not unimodular; use make_unimodular_M first");
  auto cert = qs_transform(M_unimodular, seed, opts);
  PolyMatrix B(inst.m, inst.m - 1, inst.n);
  for (int i = 0; i < inst.m; ++i) {
    B.at(i, 0) = inst.q * cert.U.at(i, 0) - inst.p * cert.U.at(i, 1);
    for (int j = 2; j < inst.m; ++j) B.at(i, j - 1) = cert.U.at(i, j);
  }
  DegreeBudget budget = syz_detail::base_budget(inst);
  budget.delta_M = std::max(M_unimodular.matrix_degree(), 0);
  return syz_detail::finish_basis(inst, std::move(B), Strategy::ViaM, std::move(cert), budget,
                                  BoundFormula::UNIMOD_M);
}

/// Basis from N: extend N to a unimodular N* (inverse-transpose of the
/// completion of N^t), cancel the trailing images with the exact
/// lambda/delta coefficients M N*^i, then combine the first two columns.
inline SyzygyBasis basis_via_N(const Grade2Instance& inst, const ConversionPair& pair,
                               std::uint64_t seed, const QsOptions& opts = {}) {
  const int m = inst.m, n = inst.n;
  auto cert = qs_transform(pair.N.transpose(), seed, opts);
  PolyMatrix Nstar = cert.U.inverse_unimodular().transpose();
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < 2; ++j)
      if (Nstar.at(i, j) != pair.N.at(i, j))
        throw Error("basis_via_N: N* does not extend N (internal)");

  PolyMatrix Nss = Nstar;
  for (int i = 2; i < m; ++i) {
    // (lambda_i, delta_i)^t = M N*^i, exact by construction
    Polynomial lambda(n), delta(n);
    for (int t = 0; t < m; ++t) {
      lambda += pair.M.at(0, t) * Nstar.at(t, i);
      delta += pair.M.at(1, t) * Nstar.at(t, i);
    }
    for (int t = 0; t < m; ++t)
      Nss.at(t, i) = Nstar.at(t, i) - lambda * Nstar.at(t, 0) - delta * Nstar.at(t, 1);
  }
  // postcondition of the column cancellation
  std::vector<Polynomial> image = syz_detail::row_times_matrix(inst.a, Nss);
  if (image[0] != inst.p || image[1] != inst.q)
    throw Error("basis_via_N: (a) N** != (p q 0 ... 0) (internal)");
  for (int i = 2; i < m; ++i)
    if (!image[static_cast<std::size_t>(i)].is_zero())
      throw Error("basis_via_N: (a) N** != (p q 0 ... 0) (internal)");

  PolyMatrix B(m, m - 1, n);
  for (int i = 0; i < m; ++i) {
    B.at(i, 0) = inst.q * Nss.at(i, 0) - inst.p * Nss.at(i, 1);
    for (int j = 2; j < m; ++j) B.at(i, j - 1) = Nss.at(i, j);
  }
  DegreeBudget budget = syz_detail::base_budget(inst);
  budget.delta_M = std::max(pair.M.matrix_degree(), 0);
  budget.delta_N = std::max(pair.N.matrix_degree(), 0);
  return syz_detail::finish_basis(inst, std::move(B), Strategy::ViaN, std::move(cert), budget,
                                  BoundFormula::VIA_N);
}

/// The (m+1) x 3 block [[N1, N2, q N1 - p N2], [-e, f, 1 - eq - fp]];
/// its product with tilde(M) must be [I_2 | 0] exactly.
inline PolyMatrix build_tilde_N_star(const ConversionPair& pair, const Polynomial& p,
                                     const Polynomial& q) {
  const int m = pair.N.rows(), n = p.vars();
  PolyMatrix Nt(m + 1, 3, n);
  for (int i = 0; i < m; ++i) {
    Nt.at(i, 0) = pair.N.at(i, 0);
    Nt.at(i, 1) = pair.N.at(i, 1);
    Nt.at(i, 2) = q * pair.N.at(i, 0) - p * pair.N.at(i, 1);
  }
  Nt.at(m, 0) = -pair.e;
  Nt.at(m, 1) = pair.f;
  Nt.at(m, 2) = Polynomial::constant(n, 1) - pair.e * q - pair.f * p;

  PolyMatrix Mt = extend_tilde_M(pair.M, p, q);
  PolyMatrix target(2, 3, n);
  target.at(0, 0) = Polynomial::constant(n, 1);
  target.at(1, 1) = Polynomial::constant(n, 1);
  if (Mt * Nt != target)
    throw Error("build_tilde_N_star: tilde(M) tilde(N*) != [I_2 | 0] (inconsistent M, N, e, f)");
  return Nt;
}

enum class AlignedStatus { Aligned, NotAligned, Skipped };

/// With M N = I_2, realign a completion of M so its first two columns are
/// exactly N; then the M-route and N-route bases must coincide entrywise.
inline AlignedStatus aligned_bases_check(const Grade2Instance& inst, const ConversionPair& pair,
                                         std::uint64_t seed, const QsOptions& opts = {}) {
  const int m = inst.m, n = inst.n;
  if (pair.K != PolyMatrix::identity(2, n)) return AlignedStatus::Skipped;

  auto cert = qs_transform(pair.M, seed, opts);
  PolyMatrix U0 = cert.U;
  PolyMatrix U0inv = U0.inverse_unimodular();
  PolyMatrix Ustar = U0;
  for (int col = 0; col < 2; ++col) {
    // coordinates of U0^col - N^col in the columns of U0
    std::vector<Polynomial> diff(static_cast<std::size_t>(m), Polynomial::zero(n));
    for (int i = 0; i < m; ++i) diff[static_cast<std::size_t>(i)] = U0.at(i, col) - pair.N.at(i, col);
    std::vector<Polynomial> z(static_cast<std::size_t>(m), Polynomial::zero(n));
    for (int i = 0; i < m; ++i)
      for (int t = 0; t < m; ++t) z[static_cast<std::size_t>(i)] += U0inv.at(i, t) * diff[static_cast<std::size_t>(t)];
    if (!z[0].is_zero() || !z[1].is_zero()) return AlignedStatus::NotAligned;
    for (int i = 0; i < m; ++i) Ustar.at(i, col) = pair.N.at(i, col);
  }
  // the realigned matrix still completes M
  PolyMatrix target(2, m, n);
  target.at(0, 0) = Polynomial::constant(n, 1);
  target.at(1, 1) = Polynomial::constant(n, 1);
  if (pair.M * Ustar != target) return AlignedStatus::NotAligned;
  Polynomial det = Ustar.determinant();
  if (!det.is_constant() || det.is_zero()) return AlignedStatus::NotAligned;

  // N-route on N* := U*: the correction coefficients must vanish ...
  for (int i = 2; i < m; ++i) {
    Polynomial lambda(n), delta(n);
    for (int t = 0; t < m; ++t) {
      lambda += pair.M.at(0, t) * Ustar.at(t, i);
      delta += pair.M.at(1, t) * Ustar.at(t, i);
    }
    if (!lambda.is_zero() || !delta.is_zero()) return AlignedStatus::NotAligned;
  }
  // ... so N** = U*, and both recipes produce the same matrix
  PolyMatrix via_m(m, m - 1, n), via_n(m, m - 1, n);
  for (int i = 0; i < m; ++i) {
    via_m.at(i, 0) = inst.q * Ustar.at(i, 0) - inst.p * Ustar.at(i, 1);
    via_n.at(i, 0) = inst.q * Ustar.at(i, 0) - inst.p * Ustar.at(i, 1);
    for (int j = 2; j < m; ++j) {
      via_m.at(i, j - 1) = Ustar.at(i, j);
      via_n.at(i, j - 1) = Ustar.at(i, j);
    }
  }
  if (via_m != via_n) return AlignedStatus::NotAligned;
  VerificationReport rep = verify_basis(inst.a, via_m);
  return rep.all_ok() ? AlignedStatus::Aligned : AlignedStatus::NotAligned;
}

/// Unit-ideal route: complete the row (a) itself; columns 2..m of the
/// completion form the basis, and the rank-one analogue (a) U = e_1 holds.
inline SyzygyBasis unit_ideal_basis(const std::vector<Polynomial>& a, std::uint64_t seed,
                                    const QsOptions& opts = {}) {
  const int m = static_cast<int>(a.size());
  const int n = a.front().vars();
  if (m < 2) throw Error("unit_ideal_basis: at least two generators required");
  PolyMatrix row = row_matrix(a);
  auto cert = qs_transform(row, seed, opts);  // errors when the row is not unimodular
  std::vector<int> rows, cols;
  for (int i = 0; i < m; ++i) rows.push_back(i);
  for (int j = 1; j < m; ++j) cols.push_back(j);
  PolyMatrix B = cert.U.select(rows, cols);

  SyzygyBasis out;
  out.B = std::move(B);
  out.strategy = Strategy::UnitIdealDirect;
  out.verification = verify_basis(a, out.B);
  // rank-one analogue of the minors check
  std::vector<Polynomial> image = syz_detail::row_times_matrix(a, cert.U);
  bool rank_one_ok = image[0] == Polynomial::constant(n, 1);
  for (int j = 1; j < m; ++j) rank_one_ok = rank_one_ok && image[static_cast<std::size_t>(j)].is_zero();
  out.verification.minors_ok = out.verification.minors_ok && rank_one_ok;
  DegreeBudget b;
  b.n = n;
  b.r = 1;
  b.d = std::max(syz_detail::degree_of(a), 0);
  attach_bound(out.verification, BoundFormula::QS_EXPLICIT, b, std::max(out.B.matrix_degree(), 0));
  out.certificate = std::move(cert);
  if (!out.verification.all_ok())
    throw Error("unit_ideal_basis: verification failed (internal bug trap)");
  return out;
}

/// Full pipeline: grade-two validation (with optional gcd stripping),
/// ideal equality, conversion derivation, strategy dispatch, verification
/// and the main-theorem bound rows.
inline SyzygyBasis compute_syzygy_basis(const Grade2Instance& input, Strategy strategy,
                                        std::uint64_t seed, bool strip_gcd = false,
                                        const QsOptions& opts = {}) {
  Grade2Instance inst = input;
  std::vector<std::string> warnings;

  auto gcheck = grade_two_check(inst.p, inst.q);
  if (gcheck.kind == GradeTwoCheck::Kind::CommonFactor) {
    if (!strip_gcd) {
      VarTable names = qs_detail::synthetic_vars(inst.n);
      throw Error("compute_syzygy_basis: p and q share the factor " +
                  to_string(gcheck.factor, names) + "; rerun with gcd stripping enabled");
    }
    const Polynomial& g = gcheck.factor;
    auto strip = [&g](const Polynomial& f) {
      auto q = divide_exact(f, g);
      if (!q) throw Error("compute_syzygy_basis: common factor does not divide a generator");
      return *q;
    };
    inst.p = strip(inst.p);
    inst.q = strip(inst.q);
    for (auto& ai : inst.a) ai = strip(ai);
    warnings.push_back("common factor removed from p, q and all generators");
    gcheck = grade_two_check(inst.p, inst.q);
  }

  if (gcheck.kind == GradeTwoCheck::Kind::UnitIdeal) {
    // <p, q> = R: the direct completion of (a) settles it
    SyzygyBasis out = unit_ideal_basis(inst.a, seed, opts);
    for (auto& w : warnings) out.verification.warnings.push_back(w);
    return out;
  }

  if (!ideal_equal(inst.a, {inst.p, inst.q}))
    throw Error("compute_syzygy_basis: <a_1, ..., a_m> != <p, q>");

  ConversionPair pair = derive_conversion(inst, opts);

  SyzygyBasis out;
  Strategy chosen = strategy;
  if (chosen == Strategy::Auto) {
    try {
      out = basis_via_N(inst, pair, seed, opts);
    } catch (const Error&) {
      out = basis_via_tilde_M(inst, pair.M, seed, opts);
    }
  } else if (chosen == Strategy::ViaTildeM) {
    out = basis_via_tilde_M(inst, pair.M, seed, opts);
  } else if (chosen == Strategy::ViaM) {
    PolyMatrix Mu = is_unimodular(pair.M)
                        ? pair.M
                        : make_unimodular_M(pair, inst.p, inst.q, seed ^ 0x51u, opts);
    out = basis_via_M(inst, Mu, seed, opts);
  } else if (chosen == Strategy::ViaN) {
    out = basis_via_N(inst, pair, seed, opts);
  } else {
    throw Error("compute_syzygy_basis: unit-ideal strategy is chosen by the pipeline, not the caller");
  }

  DegreeBudget budget = syz_detail::base_budget(inst);
  int deg = std::max(out.B.matrix_degree(), 0);
  attach_bound(out.verification, BoundFormula::MTT_1, budget, deg);
  if (inst.zero_dimensional) attach_bound(out.verification, BoundFormula::MTT_2, budget, deg);
  for (auto& w : warnings) out.verification.warnings.push_back(w);
  if (!out.verification.all_ok())
    throw Error("compute_syzygy_basis: final verification failed (internal bug trap)");
  return out;
}

/// Change-of-basis solve B2 X = B1 for two verified bases of the same
/// module; exact Cramer elimination against a row-deleted square block.
/// The result has constant nonzero determinant exactly when the bases
/// generate the same module.
inline PolyMatrix change_of_basis(const std::vector<Polynomial>& a, const PolyMatrix& B1,
                                  const PolyMatrix& B2) {
  const int m = static_cast<int>(a.size());
  B1.check_same_shape(B2);
  int drop = -1;
  for (int i = 0; i < m; ++i)
    if (!a[static_cast<std::size_t>(i)].is_zero()) { drop = i; break; }
  if (drop < 0) throw Error("change_of_basis: zero generator sequence");
  PolyMatrix sq = B2.without_row(drop);
  Polynomial det = sq.determinant();
  if (det.is_zero()) throw Error("change_of_basis: deleted-row block is singular");
  PolyMatrix rhs = B1.without_row(drop);
  PolyMatrix num = sq.adjugate() * rhs;
  PolyMatrix X(m - 1, m - 1, B1.vars());
  for (int i = 0; i < m - 1; ++i)
    for (int j = 0; j < m - 1; ++j) {
      auto q = divide_exact(num.at(i, j), det);
      if (!q) throw Error("change_of_basis: non-polynomial solution (bases not equivalent)");
      X.at(i, j) = *q;
    }
  if (B2 * X != B1) throw Error("change_of_basis: solution fails on the deleted row");
  return X;
}

}  // namespace syz
