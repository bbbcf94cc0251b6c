#pragma once

#include "syz/error.hpp"
#include "syz/polynomial.hpp"

#include <cctype>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

namespace syz {

/// Ordered variable names of the ambient ring; the index of a name is its
/// variable index everywhere in the library.
struct VarTable {
  std::vector<std::string> names;

  VarTable() = default;
  explicit VarTable(std::vector<std::string> ns) : names(std::move(ns)) {}

  int count() const { return static_cast<int>(names.size()); }

  int index_of(std::string_view name) const {
    for (std::size_t i = 0; i < names.size(); ++i)
      if (names[i] == name) return static_cast<int>(i);
    return -1;
  }
};

/// Canonical rendering: terms in descending canonical order, explicit '*'
/// between factors, '^' for powers, rationals as a/b. Round-trips through
/// parse_polynomial.
inline std::string to_string(const Polynomial& p, const VarTable& vars) {
  if (p.is_zero()) return "0";
  std::ostringstream out;
  bool first = true;
  const auto& terms = p.terms();
  for (auto it = terms.rbegin(); it != terms.rend(); ++it) {
    const Monomial& m = it->first;
    Rat c = it->second;
    bool neg = c < 0;
    if (first) {
      if (neg) out << "-";
    } else {
      out << (neg ? " - " : " + ");
    }
    first = false;
    if (neg) c = -c;
    bool printed_coeff = false;
    if (m.is_one() || c != 1) {
      out << to_string(c);
      printed_coeff = true;
    }
    for (int i = 0; i < m.vars(); ++i) {
      auto e = m.e[static_cast<std::size_t>(i)];
      if (e == 0) continue;
      if (printed_coeff) out << "*";
      printed_coeff = true;
      out << vars.names[static_cast<std::size_t>(i)];
      if (e > 1) out << "^" << e;
    }
  }
  return out.str();
}

namespace detail {

class PolyParser {
public:
  PolyParser(std::string_view text, const VarTable& vars) : text_(text), vars_(vars) {}

  Polynomial parse() {
    Polynomial p = expression();
    skip_ws();
    if (pos_ != text_.size()) fail("trailing input");
    return p;
  }

private:
  // expression := ['+'|'-'] term (('+'|'-') term)*
  Polynomial expression() {
    int n = vars_.count();
    Polynomial acc(n);
    bool negate = false;
    skip_ws();
    if (peek() == '+' || peek() == '-') negate = (take() == '-');
    acc += sign(term(), negate);
    for (skip_ws(); peek() == '+' || peek() == '-'; skip_ws()) {
      bool neg = (take() == '-');
      acc += sign(term(), neg);
    }
    return acc;
  }

  // term := factor (('*'|'/') factor)*; '/' only by a nonzero constant
  Polynomial term() {
    Polynomial acc = factor();
    for (skip_ws(); peek() == '*' || peek() == '/'; skip_ws()) {
      char op = take();
      Polynomial rhs = factor();
      if (op == '*') {
        acc = acc * rhs;
      } else {
        if (!rhs.is_constant() || rhs.is_zero()) fail("division is only allowed by a nonzero constant");
        acc = acc * (Rat(1) / rhs.constant_value());
      }
    }
    return acc;
  }

  // factor := base ['^' nat]
  Polynomial factor() {
    Polynomial base = atom();
    skip_ws();
    if (peek() == '^') {
      take();
      skip_ws();
      std::uint32_t e = natural();
      Polynomial r = Polynomial::constant(vars_.count(), 1);
      for (std::uint32_t k = 0; k < e; ++k) r = r * base;
      return r;
    }
    return base;
  }

  // atom := number | variable | '(' expression ')'
  Polynomial atom() {
    skip_ws();
    char c = peek();
    if (c == '(') {
      take();
      Polynomial inner = expression();
      skip_ws();
      if (peek() != ')') fail("expected ')'");
      take();
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      return Polynomial::constant(vars_.count(), Rat(Int(digits())));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
        ++pos_;
      std::string_view name = text_.substr(start, pos_ - start);
      int idx = vars_.index_of(name);
      if (idx < 0) fail("unknown variable '" + std::string(name) + "'");
      return Polynomial::variable(vars_.count(), idx);
    }
    fail("expected a number, variable, or '('");
  }

  std::string digits() {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (pos_ == start) fail("expected digits");
    return std::string(text_.substr(start, pos_ - start));
  }

  std::uint32_t natural() {
    std::string d = digits();
    if (d.size() > 6) fail("exponent too large");
    return static_cast<std::uint32_t>(std::stoul(d));
  }

  static Polynomial sign(Polynomial p, bool negate) { return negate ? -p : p; }

  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }
  char take() { return text_[pos_++]; }
  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, pos_); }

  std::string_view text_;
  const VarTable& vars_;
  std::size_t pos_ = 0;
};

}  // namespace detail

/// Parses the shared polynomial grammar: `+ - * / ^`, integer or a/b
/// rational coefficients, parentheses, declared variable names.
inline Polynomial parse_polynomial(std::string_view text, const VarTable& vars) {
  return detail::PolyParser(text, vars).parse();
}

}  // namespace syz
