#pragma once

#include "syz/gcd.hpp"
#include "syz/poly_matrix.hpp"

#include <algorithm>
#include <optional>
#include <set>
#include <vector>

namespace syz {

/// f = sum_i quotients[i] * basis[i] + remainder, with no term of the
/// remainder divisible by a basis leading monomial.
struct ReductionResult {
  Polynomial remainder;
  std::vector<Polynomial> quotients;
};

inline ReductionResult reduce_full(const Polynomial& f, const std::vector<Polynomial>& basis,
                                   const MonomialOrder& order) {
  ReductionResult res{Polynomial::zero(f.vars()),
                      std::vector<Polynomial>(basis.size(), Polynomial::zero(f.vars()))};
  std::vector<std::pair<Monomial, Rat>> lead;
  lead.reserve(basis.size());
  for (const auto& b : basis) lead.push_back(b.leading_term(order));
  Polynomial work(f);
  while (!work.is_zero()) {
    auto [lm, lc] = work.leading_term(order);
    bool reduced = false;
    for (std::size_t i = 0; i < basis.size(); ++i) {
      if (!lead[i].first.divides(lm)) continue;
      Monomial mq = lead[i].first.divide_into(lm);
      Rat cq = lc / lead[i].second;
      work -= basis[i].times_term(mq, cq);
      res.quotients[i].add_term(mq, cq);
      reduced = true;
      break;
    }
    if (!reduced) {
      res.remainder.add_term(lm, lc);
      work.add_term(lm, -lc);
    }
  }
  return res;
}

/// Reduced Groebner basis together with a cofactor matrix expressing each
/// basis element in the original generators: basis_j = sum_i gens_i * T(i,j).
struct GroebnerBasis {
  std::vector<Polynomial> generators;
  std::vector<Polynomial> basis;
  PolyMatrix cofactors;  // generators.size() x max(1, basis.size())
  MonomialOrder order;

  ReductionResult reduce(const Polynomial& f) const { return reduce_full(f, basis, order); }

  bool contains_one() const {
    return basis.size() == 1 && basis.front().is_constant() && !basis.front().is_zero();
  }

  /// Coefficients over the ORIGINAL generators when f is a member.
  std::optional<std::vector<Polynomial>> represent(const Polynomial& f) const {
    auto red = reduce(f);
    if (!red.remainder.is_zero()) return std::nullopt;
    const int k = static_cast<int>(generators.size());
    std::vector<Polynomial> coeffs(static_cast<std::size_t>(k), Polynomial::zero(f.vars()));
    for (int i = 0; i < k; ++i)
      for (std::size_t j = 0; j < basis.size(); ++j)
        coeffs[static_cast<std::size_t>(i)] += cofactors.at(i, static_cast<int>(j)) * red.quotients[j];
    return coeffs;
  }
};

/// Extended Buchberger: every reduction step updates the representation in
/// the input generators, so membership queries come back with exact
/// combinations. Plain pair handling with the two standard skip criteria.
inline GroebnerBasis buchberger_cofactors(std::vector<Polynomial> gens, MonomialOrder order = {}) {
  if (gens.empty()) throw Error("buchberger_cofactors: no generators");
  const int n = gens.front().vars();
  for (const auto& g : gens) gens.front().check_same_ring(g);
  const std::size_t k = gens.size();

  struct Item {
    Polynomial f;
    std::vector<Polynomial> col;  // representation in the generators
    Monomial lm;
    Rat lc;
  };
  std::vector<Item> items;
  auto push_item = [&](Polynomial f, std::vector<Polynomial> col) {
    auto [lm, lc] = f.leading_term(order);
    // keep everything monic; divide the certificate along
    if (lc != 1) {
      Rat inv = Rat(1) / lc;
      f = f * inv;
      for (auto& c : col) c = c * inv;
      lc = 1;
    }
    items.push_back(Item{std::move(f), std::move(col), lm, lc});
  };

  for (std::size_t i = 0; i < k; ++i) {
    if (gens[i].is_zero()) continue;
    std::vector<Polynomial> col(k, Polynomial::zero(n));
    col[i] = Polynomial::constant(n, 1);
    push_item(gens[i], std::move(col));
  }

  GroebnerBasis out;
  out.generators = gens;
  out.order = order;
  if (items.empty()) {  // the zero ideal
    out.cofactors = PolyMatrix(static_cast<int>(k), 1, n);
    return out;
  }

  // pair queue ordered by lcm in the monomial order, then by index
  struct Pair {
    Monomial lcm;
    std::size_t i, j;
  };
  auto pair_less = [&order](const Pair& a, const Pair& b) {
    if (a.lcm != b.lcm) return order.less(a.lcm, b.lcm);
    if (a.i != b.i) return a.i < b.i;
    return a.j < b.j;
  };
  std::vector<Pair> queue;
  std::set<std::pair<std::size_t, std::size_t>> done;
  auto add_pairs_for = [&](std::size_t t) {
    for (std::size_t i = 0; i < t; ++i)
      queue.push_back(Pair{Monomial::lcm(items[i].lm, items[t].lm), i, t});
    std::sort(queue.begin(), queue.end(), pair_less);
  };
  for (std::size_t t = 1; t < items.size(); ++t) add_pairs_for(t);

  auto reduce_with_cert = [&](Polynomial f, std::vector<Polynomial> col)
      -> std::pair<Polynomial, std::vector<Polynomial>> {
    Polynomial rem(n);
    while (!f.is_zero()) {
      auto [lm, lc] = f.leading_term(order);
      bool hit = false;
      for (const auto& it : items) {
        if (!it.lm.divides(lm)) continue;
        Monomial mq = it.lm.divide_into(lm);
        Rat cq = lc / it.lc;
        f -= it.f.times_term(mq, cq);
        for (std::size_t c = 0; c < k; ++c) col[c] -= it.col[c].times_term(mq, cq);
        hit = true;
        break;
      }
      if (!hit) {
        rem.add_term(lm, lc);
        f.add_term(lm, -lc);
      }
    }
    return {rem, col};
  };

  while (!queue.empty()) {
    Pair pr = queue.front();
    queue.erase(queue.begin());
    done.insert({pr.i, pr.j});
    const Item& A = items[pr.i];
    const Item& B = items[pr.j];
    if (Monomial::coprime(A.lm, B.lm)) continue;  // product criterion
    // chain criterion: an already-handled third element dividing the lcm
    bool skip = false;
    for (std::size_t t = 0; t < items.size() && !skip; ++t) {
      if (t == pr.i || t == pr.j) continue;
      if (!items[t].lm.divides(pr.lcm)) continue;
      auto key1 = std::minmax(pr.i, t);
      auto key2 = std::minmax(t, pr.j);
      if (done.count({key1.first, key1.second}) && done.count({key2.first, key2.second})) skip = true;
    }
    if (skip) continue;

    Monomial ma = A.lm.divide_into(pr.lcm);
    Monomial mb = B.lm.divide_into(pr.lcm);
    Polynomial s = A.f.times_term(ma, Rat(1)) - B.f.times_term(mb, Rat(1));
    std::vector<Polynomial> col(k, Polynomial::zero(n));
    for (std::size_t c = 0; c < k; ++c)
      col[c] = A.col[c].times_term(ma, Rat(1)) - B.col[c].times_term(mb, Rat(1));
    auto [rem, rcol] = reduce_with_cert(std::move(s), std::move(col));
    if (rem.is_zero()) continue;
    push_item(std::move(rem), std::move(rcol));
    add_pairs_for(items.size() - 1);
  }

  // minimalize: drop items whose leading monomial another one divides
  std::vector<char> keep(items.size(), 1);
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (!keep[i]) continue;
    for (std::size_t j = 0; j < items.size(); ++j) {
      if (i == j || !keep[j]) continue;
      if (items[j].lm.divides(items[i].lm) && !(items[i].lm == items[j].lm && j > i)) {
        keep[i] = 0;
        break;
      }
    }
  }
  std::vector<Item> minimal;
  for (std::size_t i = 0; i < items.size(); ++i)
    if (keep[i]) minimal.push_back(std::move(items[i]));
  std::sort(minimal.begin(), minimal.end(),
            [&order](const Item& a, const Item& b) { return order.less(a.lm, b.lm); });

  // tail-reduce every element against the others
  for (std::size_t i = 0; i < minimal.size(); ++i) {
    std::vector<Polynomial> others;
    std::vector<std::size_t> map;
    for (std::size_t j = 0; j < minimal.size(); ++j)
      if (j != i) {
        others.push_back(minimal[j].f);
        map.push_back(j);
      }
    auto red = reduce_full(minimal[i].f, others, order);
    minimal[i].f = red.remainder;
    for (std::size_t t = 0; t < map.size(); ++t) {
      if (red.quotients[t].is_zero()) continue;
      for (std::size_t c = 0; c < k; ++c)
        minimal[i].col[c] -= red.quotients[t] * minimal[map[t]].col[c];
    }
  }

  out.basis.reserve(minimal.size());
  out.cofactors = PolyMatrix(static_cast<int>(k), std::max<int>(1, static_cast<int>(minimal.size())), n);
  for (std::size_t j = 0; j < minimal.size(); ++j) {
    out.basis.push_back(minimal[j].f);
    for (std::size_t i = 0; i < k; ++i)
      out.cofactors.at(static_cast<int>(i), static_cast<int>(j)) = minimal[j].col[i];
  }
  return out;
}

/// Coefficients c with f = sum c_i gens_i when f lies in the ideal.
inline std::optional<std::vector<Polynomial>> represent_in_ideal(const Polynomial& f,
                                                                 const std::vector<Polynomial>& gens,
                                                                 MonomialOrder order = {}) {
  return buchberger_cofactors(gens, order).represent(f);
}

/// Bezout coefficients b with 1 = sum b_i gens_i when the ideal is the
/// whole ring; empty otherwise.
inline std::optional<std::vector<Polynomial>> is_unit_ideal(const std::vector<Polynomial>& gens,
                                                            MonomialOrder order = {}) {
  if (gens.empty()) throw Error("is_unit_ideal: no generators");
  GroebnerBasis gb = buchberger_cofactors(gens, order);
  if (!gb.contains_one()) return std::nullopt;
  return gb.represent(Polynomial::constant(gens.front().vars(), 1));
}

/// Both inclusions, certified by reduction to zero.
inline bool ideal_equal(const std::vector<Polynomial>& gens_a, const std::vector<Polynomial>& gens_b,
                        MonomialOrder order = {}) {
  if (gens_a.empty() || gens_b.empty()) throw Error("ideal_equal: empty generator list");
  gens_a.front().check_same_ring(gens_b.front());
  GroebnerBasis ga = buchberger_cofactors(gens_a, order);
  GroebnerBasis gb = buchberger_cofactors(gens_b, order);
  for (const auto& b : gens_b)
    if (!ga.reduce(b).remainder.is_zero()) return false;
  for (const auto& a : gens_a)
    if (!gb.reduce(a).remainder.is_zero()) return false;
  return true;
}

/// Outcome of the grade-two precondition on (p, q).
struct GradeTwoCheck {
  enum class Kind { GradeTwo, UnitIdeal, CommonFactor };
  Kind kind;
  Polynomial factor;                                  // the gcd, when non-constant
  std::optional<std::vector<Polynomial>> bezout;      // certificate on the unit-ideal branch
};

inline GradeTwoCheck grade_two_check(const Polynomial& p, const Polynomial& q) {
  p.check_same_ring(q);
  if (p.is_zero() && q.is_zero()) throw Error("grade_two_check: p and q are both zero");
  const int n = p.vars();
  Polynomial g = multivariate_gcd(p, q);
  if (!g.is_constant())
    return GradeTwoCheck{GradeTwoCheck::Kind::CommonFactor, g, std::nullopt};
  if (auto cert = is_unit_ideal({p, q}))
    return GradeTwoCheck{GradeTwoCheck::Kind::UnitIdeal, Polynomial::constant(n, 1), cert};
  return GradeTwoCheck{GradeTwoCheck::Kind::GradeTwo, Polynomial::constant(n, 1), std::nullopt};
}

/// Unimodularity of an r x s matrix, r <= s: the maximal minors generate
/// the whole ring. Carries the certificate when they do.
struct UnimodularityCheck {
  bool unimodular;
  std::vector<Polynomial> minors;
  std::optional<std::vector<Polynomial>> certificate;
};

inline UnimodularityCheck unimodularity(const PolyMatrix& a, MonomialOrder order = {}) {
  if (a.rows() > a.cols()) throw Error("is_unimodular: need rows <= cols");
  UnimodularityCheck chk{false, a.maximal_minors(), std::nullopt};
  chk.certificate = is_unit_ideal(chk.minors, order);
  chk.unimodular = chk.certificate.has_value();
  return chk;
}

inline bool is_unimodular(const PolyMatrix& a) { return unimodularity(a).unimodular; }

}  // namespace syz
