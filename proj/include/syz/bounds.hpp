#pragma once

#include "syz/error.hpp"
#include "syz/rational.hpp"

#include <optional>
#include <string>

namespace syz {

/// Closed-form degree-bound formulas. Each id maps to exactly one
/// expression in evaluate_bound; the ids are stable strings in reports.
enum class BoundFormula {
  QS_EXPLICIT,
  TILDE_M,
  UNIMOD_M,
  VIA_N,
  MPRIME,
  DELTA_M,
  DELTA_N_GENERIC,
  DELTA_N_ZERODIM,
  MTT_1,
  MTT_2,
  CITAM,
  BEZOUT_25,
};

inline const char* formula_id(BoundFormula f) {
  switch (f) {
    case BoundFormula::QS_EXPLICIT: return "QS_EXPLICIT";
    case BoundFormula::TILDE_M: return "TILDE_M";
    case BoundFormula::UNIMOD_M: return "UNIMOD_M";
    case BoundFormula::VIA_N: return "VIA_N";
    case BoundFormula::MPRIME: return "MPRIME";
    case BoundFormula::DELTA_M: return "DELTA_M";
    case BoundFormula::DELTA_N_GENERIC: return "DELTA_N_GENERIC";
    case BoundFormula::DELTA_N_ZERODIM: return "DELTA_N_ZERODIM";
    case BoundFormula::MTT_1: return "MTT_1";
    case BoundFormula::MTT_2: return "MTT_2";
    case BoundFormula::CITAM: return "CITAM";
    case BoundFormula::BEZOUT_25: return "BEZOUT_25";
  }
  return "?";
}

inline std::optional<BoundFormula> parse_formula_id(const std::string& s) {
  for (BoundFormula f :
       {BoundFormula::QS_EXPLICIT, BoundFormula::TILDE_M, BoundFormula::UNIMOD_M, BoundFormula::VIA_N,
        BoundFormula::MPRIME, BoundFormula::DELTA_M, BoundFormula::DELTA_N_GENERIC,
        BoundFormula::DELTA_N_ZERODIM, BoundFormula::MTT_1, BoundFormula::MTT_2, BoundFormula::CITAM,
        BoundFormula::BEZOUT_25})
    if (s == formula_id(f)) return f;
  return std::nullopt;
}

/// Parameters a formula may consume. Only the fields a formula actually
/// uses need to be present; a missing one is reported by name.
struct DegreeBudget {
  std::optional<int> n, m, r;
  std::optional<int> d, delta0, delta_a, delta_M, delta_N;
};

namespace detail {

inline Int ipow(Int base, int e) {
  Int r(1);
  for (int k = 0; k < e; ++k) r *= base;
  return r;
}

inline Int need(const std::optional<int>& v, const char* name) {
  if (!v) throw Error(std::string("evaluate_bound: missing parameter ") + name);
  if (*v < 0) throw Error(std::string("evaluate_bound: negative parameter ") + name);
  return Int(*v);
}

}  // namespace detail

/// Exact integer value of the chosen bound. All arithmetic is unbounded;
/// several formulas overflow 64 bits already at small inputs.
inline Int evaluate_bound(BoundFormula formula, const DegreeBudget& b) {
  using detail::ipow;
  using detail::need;
  switch (formula) {
    case BoundFormula::QS_EXPLICIT: {
      Int n = need(b.n, "n"), r = need(b.r, "r"), d = need(b.d, "d");
      return 3 * n * n * ipow(r * (d + 1), 2 * b.n.value());
    }
    case BoundFormula::TILDE_M: {
      // delta >= max(delta_M, delta0) is realized by taking the max here.
      Int n = need(b.n, "n"), dM = need(b.delta_M, "delta_M"), d0 = need(b.delta0, "delta0");
      Int delta = dM > d0 ? dM : d0;
      return 3 * n * n * ipow(Int(4), b.n.value()) * ipow(delta + 1, 2 * b.n.value());
    }
    case BoundFormula::UNIMOD_M: {
      Int n = need(b.n, "n"), dM = need(b.delta_M, "delta_M"), d0 = need(b.delta0, "delta0");
      return 3 * n * n * ipow(Int(4), b.n.value()) * ipow(dM + 1, 2 * b.n.value()) + d0;
    }
    case BoundFormula::VIA_N: {
      Int n = need(b.n, "n"), m = need(b.m, "m");
      Int d0 = need(b.delta0, "delta0"), dM = need(b.delta_M, "delta_M"), dN = need(b.delta_N, "delta_N");
      return d0 + dN + dM + 3 * m * n * n * ipow(Int(4), b.n.value()) * ipow(dN + 1, 2 * b.n.value());
    }
    case BoundFormula::MPRIME: {
      Int n = need(b.n, "n");
      Int d0 = need(b.delta0, "delta0"), dM = need(b.delta_M, "delta_M"), dN = need(b.delta_N, "delta_N");
      return 3 * n * n * ipow(Int(4), b.n.value()) * ipow(dN + 1, 2 * b.n.value()) + dM + dN + d0;
    }
    case BoundFormula::DELTA_M: {
      Int d0 = need(b.delta0, "delta0"), da = need(b.delta_a, "delta_a");
      return d0 * d0 + da;
    }
    case BoundFormula::DELTA_N_GENERIC: {
      Int n = need(b.n, "n"), d0 = need(b.delta0, "delta0"), dM = need(b.delta_M, "delta_M");
      Int mx = d0 > dM ? d0 : dM;
      return 3 * n * n * ipow(Int(4), b.n.value()) * ipow(mx + 1, 2 * b.n.value());
    }
    case BoundFormula::DELTA_N_ZERODIM: {
      Int d0 = need(b.delta0, "delta0"), da = need(b.delta_a, "delta_a");
      return 2 * da * da + da + d0;
    }
    case BoundFormula::MTT_1: {
      Int n = need(b.n, "n"), d0 = need(b.delta0, "delta0"), da = need(b.delta_a, "delta_a");
      return 3 * n * n * ipow(Int(4), b.n.value()) * ipow(d0 * d0 + da + 1, 2 * b.n.value());
    }
    case BoundFormula::MTT_2: {
      Int n = need(b.n, "n"), m = need(b.m, "m");
      Int d0 = need(b.delta0, "delta0"), da = need(b.delta_a, "delta_a");
      return 2 * d0 + 2 * da + 2 * da * da + d0 * d0 +
             3 * m * n * n * ipow(Int(4), b.n.value()) *
                 ipow(2 * da * da + da + d0 + 1, 2 * b.n.value());
    }
    case BoundFormula::CITAM: {
      Int d0 = need(b.delta0, "delta0"), da = need(b.delta_a, "delta_a");
      return 192 * ipow(d0 * da + 1, 4);
    }
    case BoundFormula::BEZOUT_25: {
      Int r = need(b.r, "r"), d = need(b.d, "d");
      int n = static_cast<int>(need(b.n, "n"));
      return 2 * ipow(r * (d + 1), 2 * (n - 1));
    }
  }
  throw Error("evaluate_bound: unknown formula");
}

}  // namespace syz
