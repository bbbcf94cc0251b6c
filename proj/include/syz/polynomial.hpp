#pragma once

#include "syz/error.hpp"
#include "syz/monomial.hpp"
#include "syz/rat_matrix.hpp"
#include "syz/rational.hpp"

#include <map>
#include <optional>
#include <utility>
#include <vector>

namespace syz {

/// total_degree() of the zero polynomial. Degrees of nonzero polynomials
/// are always >= 0, so -1 is a safe minus-infinity sentinel.
inline constexpr int kDegreeOfZero = -1;

/// Sparse multivariate polynomial over Q with a fixed ambient variable
/// count. Terms are kept in a canonical sorted map with no zero
/// coefficients, so equal polynomials compare equal structurally.
/// Values are immutable in spirit: every operation returns a new value.
class Polynomial {
public:
  using TermMap = std::map<Monomial, Rat, CanonicalLess>;

  Polynomial() : n_(0) {}
  explicit Polynomial(int n) : n_(n) {}

  static Polynomial zero(int n) { return Polynomial(n); }

  static Polynomial constant(int n, const Rat& c) {
    Polynomial p(n);
    if (c != 0) p.terms_.emplace(Monomial(n), c);
    return p;
  }

  static Polynomial variable(int n, int i) {
    if (i < 0 || i >= n) throw Error("Polynomial::variable: index out of range");
    Monomial m(n);
    m.e[static_cast<std::size_t>(i)] = 1;
    Polynomial p(n);
    p.terms_.emplace(std::move(m), Rat(1));
    return p;
  }

  static Polynomial term(Monomial m, const Rat& c) {
    Polynomial p(m.vars());
    if (c != 0) p.terms_.emplace(std::move(m), c);
    return p;
  }

  int vars() const { return n_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t term_count() const { return terms_.size(); }
  const TermMap& terms() const { return terms_; }

  bool is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_one());
  }

  /// Value of a constant polynomial (0 for the zero polynomial).
  Rat constant_value() const {
    if (terms_.empty()) return Rat(0);
    if (!is_constant()) throw Error("Polynomial: not a constant");
    return terms_.begin()->second;
  }

  int total_degree() const {
    if (terms_.empty()) return kDegreeOfZero;
    return terms_.rbegin()->first.degree();  // canonical order is graded
  }

  int degree_in(int var) const {
    int d = kDegreeOfZero;
    for (const auto& [m, c] : terms_) {
      int dv = static_cast<int>(m.e[static_cast<std::size_t>(var)]);
      if (dv > d) d = dv;
    }
    return terms_.empty() ? kDegreeOfZero : d;
  }

  Rat coeff(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Rat(0) : it->second;
  }

  /// Leading term under an arbitrary order (linear scan when the order is
  /// not the canonical storage order).
  std::pair<Monomial, Rat> leading_term(const MonomialOrder& order) const {
    if (terms_.empty()) throw Error("Polynomial: leading term of zero");
    if (order.kind == OrderKind::GrevLex && order.perm.empty()) {
      auto it = terms_.rbegin();
      return {it->first, it->second};
    }
    auto best = terms_.begin();
    for (auto it = std::next(terms_.begin()); it != terms_.end(); ++it)
      if (order.less(best->first, it->first)) best = it;
    return {best->first, best->second};
  }

  Rat leading_coefficient(const MonomialOrder& order = {}) const { return leading_term(order).second; }

  void add_term(const Monomial& m, const Rat& c) {
    if (c == 0) return;
    auto [it, fresh] = terms_.emplace(m, c);
    if (!fresh) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  Polynomial operator-() const {
    Polynomial r(*this);
    for (auto& [m, c] : r.terms_) c = -c;
    return r;
  }

  Polynomial& operator+=(const Polynomial& o) {
    check_same_ring(o);
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
  }
  Polynomial& operator-=(const Polynomial& o) {
    check_same_ring(o);
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
  }

  Polynomial operator+(const Polynomial& o) const {
    Polynomial r(*this);
    r += o;
    return r;
  }
  Polynomial operator-(const Polynomial& o) const {
    Polynomial r(*this);
    r -= o;
    return r;
  }

  Polynomial operator*(const Polynomial& o) const {
    check_same_ring(o);
    Polynomial r(n_);
    for (const auto& [ma, ca] : terms_)
      for (const auto& [mb, cb] : o.terms_) r.add_term(ma * mb, ca * cb);
    return r;
  }

  Polynomial operator*(const Rat& c) const {
    Polynomial r(n_);
    if (c == 0) return r;
    for (const auto& [m, v] : terms_) r.terms_.emplace(m, v * c);
    return r;
  }

  friend Polynomial operator*(const Rat& c, const Polynomial& p) { return p * c; }

  /// Multiply by a single term; used heavily by reduction loops.
  Polynomial times_term(const Monomial& m, const Rat& c) const {
    Polynomial r(n_);
    if (c == 0) return r;
    for (const auto& [mm, v] : terms_) r.terms_.emplace(mm * m, v * c);
    return r;
  }

  bool operator==(const Polynomial& o) const { return n_ == o.n_ && terms_ == o.terms_; }
  bool operator!=(const Polynomial& o) const { return !(*this == o); }

  bool operator==(const Rat& c) const { return *this == constant(n_, c); }

  Rat evaluate(const std::vector<Rat>& point) const {
    if (static_cast<int>(point.size()) != n_) throw Error("Polynomial::evaluate: point length mismatch");
    std::vector<std::map<std::uint32_t, Rat>> powers(static_cast<std::size_t>(n_));
    Rat acc(0);
    for (const auto& [m, c] : terms_) {
      Rat t(c);
      for (int i = 0; i < n_; ++i) {
        std::uint32_t e = m.e[static_cast<std::size_t>(i)];
        if (e == 0) continue;
        t *= cached_pow(powers[static_cast<std::size_t>(i)], point[static_cast<std::size_t>(i)], e);
      }
      acc += t;
    }
    return acc;
  }

  /// Substitute a polynomial value for one variable; other variables are
  /// left intact. The rational overload covers plain evaluation at a point
  /// in a single coordinate.
  Polynomial substitute(int var, const Polynomial& value) const {
    if (var < 0 || var >= n_) throw Error("Polynomial::substitute: variable out of range");
    check_same_ring(value);
    std::vector<Polynomial> pow_cache{Polynomial::constant(n_, 1)};
    Polynomial r(n_);
    for (const auto& [m, c] : terms_) {
      std::uint32_t e = m.e[static_cast<std::size_t>(var)];
      Monomial rest(m);
      rest.e[static_cast<std::size_t>(var)] = 0;
      while (pow_cache.size() <= e) pow_cache.push_back(pow_cache.back() * value);
      r += pow_cache[e].times_term(rest, c);
    }
    return r;
  }

  Polynomial substitute(int var, const Rat& value) const {
    return substitute(var, Polynomial::constant(n_, value));
  }

  /// f(C*x + shift) for an invertible rational C; invertibility makes the
  /// change reversible.
  Polynomial linear_change(const RatMatrix& C, const std::vector<Rat>& shift) const {
    if (C.rows() != n_ || C.cols() != n_) throw Error("linear_change: matrix shape mismatch");
    if (static_cast<int>(shift.size()) != n_) throw Error("linear_change: shift length mismatch");
    if (C.det() == 0) throw Error("linear_change: singular coordinate change");
    std::vector<Polynomial> image;
    image.reserve(static_cast<std::size_t>(n_));
    for (int i = 0; i < n_; ++i) {
      Polynomial li = Polynomial::constant(n_, shift[static_cast<std::size_t>(i)]);
      for (int j = 0; j < n_; ++j) {
        const Rat& cij = C.at(i, j);
        if (cij != 0) li += Polynomial::variable(n_, j) * cij;
      }
      image.push_back(std::move(li));
    }
    std::vector<std::vector<Polynomial>> pow(static_cast<std::size_t>(n_));
    for (int i = 0; i < n_; ++i) pow[static_cast<std::size_t>(i)].push_back(Polynomial::constant(n_, 1));
    Polynomial r(n_);
    for (const auto& [m, c] : terms_) {
      Polynomial t = Polynomial::constant(n_, c);
      for (int i = 0; i < n_; ++i) {
        std::uint32_t e = m.e[static_cast<std::size_t>(i)];
        if (e == 0) continue;
        auto& cache = pow[static_cast<std::size_t>(i)];
        while (cache.size() <= e) cache.push_back(cache.back() * image[static_cast<std::size_t>(i)]);
        t = t * cache[e];
      }
      r += t;
    }
    return r;
  }

  /// Does this polynomial mention the given variable at all?
  bool uses_variable(int var) const {
    for (const auto& [m, c] : terms_)
      if (m.e[static_cast<std::size_t>(var)] != 0) return true;
    return false;
  }

  void check_same_ring(const Polynomial& o) const {
    if (n_ != o.n_) throw Error("Polynomial: variable-count mismatch");
  }

private:
  static Rat cached_pow(std::map<std::uint32_t, Rat>& cache, const Rat& base, std::uint32_t e) {
    auto it = cache.find(e);
    if (it != cache.end()) return it->second;
    Rat v(1);
    for (std::uint32_t k = 0; k < e; ++k) v *= base;  // exponents stay small
    cache.emplace(e, v);
    return v;
  }

  int n_;
  TermMap terms_;
};

/// Exact quotient f/g when g divides f; empty otherwise. Division by the
/// zero polynomial is an error. Uses single-divisor division: any
/// irreducible leading term certifies a nonzero remainder.
inline std::optional<Polynomial> divide_exact(const Polynomial& f, const Polynomial& g) {
  f.check_same_ring(g);
  if (g.is_zero()) throw Error("divide_exact: division by zero polynomial");
  const MonomialOrder order{};
  auto [lmg, lcg] = g.leading_term(order);
  Polynomial q(f.vars());
  Polynomial r(f);
  while (!r.is_zero()) {
    auto [lmr, lcr] = r.leading_term(order);
    if (!lmg.divides(lmr)) return std::nullopt;
    Monomial mq = lmg.divide_into(lmr);
    Rat cq = lcr / lcg;
    q.add_term(mq, cq);
    r -= g.times_term(mq, cq);
  }
  return q;
}

}  // namespace syz
