#pragma once

#include "syz/poly_io.hpp"
#include "syz/polynomial.hpp"

#include <algorithm>
#include <sstream>
#include <string>
#include <vector>

namespace syz {

/// Rectangular matrix over the polynomial ring. All entries share the
/// ambient variable count. Immutable-style API except for the elementary
/// column operations, which the callers use to accumulate transforms.
class PolyMatrix {
public:
  PolyMatrix() : rows_(0), cols_(0), n_(0) {}

  PolyMatrix(int rows, int cols, int n)
      : rows_(rows), cols_(cols), n_(n),
        a_(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols), Polynomial::zero(n)) {
    if (rows <= 0 || cols <= 0) throw Error("PolyMatrix: dimensions must be positive");
  }

  static PolyMatrix identity(int k, int n) {
    PolyMatrix m(k, k, n);
    for (int i = 0; i < k; ++i) m.at(i, i) = Polynomial::constant(n, 1);
    return m;
  }

  static PolyMatrix from_rows(std::vector<std::vector<Polynomial>> rows) {
    if (rows.empty() || rows.front().empty()) throw Error("PolyMatrix: empty row list");
    PolyMatrix m(static_cast<int>(rows.size()), static_cast<int>(rows.front().size()),
                 rows.front().front().vars());
    for (int i = 0; i < m.rows_; ++i) {
      if (static_cast<int>(rows[static_cast<std::size_t>(i)].size()) != m.cols_)
        throw Error("PolyMatrix: ragged rows");
      for (int j = 0; j < m.cols_; ++j) m.at(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    }
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  int vars() const { return n_; }

  Polynomial& at(int i, int j) { return a_[static_cast<std::size_t>(i) * cols_ + j]; }
  const Polynomial& at(int i, int j) const { return a_[static_cast<std::size_t>(i) * cols_ + j]; }

  bool operator==(const PolyMatrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
  }
  bool operator!=(const PolyMatrix& o) const { return !(*this == o); }

  PolyMatrix operator*(const PolyMatrix& o) const {
    if (cols_ != o.rows_) throw Error("PolyMatrix: shape mismatch in product");
    PolyMatrix r(rows_, o.cols_, n_);
    for (int i = 0; i < rows_; ++i)
      for (int k = 0; k < cols_; ++k) {
        const Polynomial& v = at(i, k);
        if (v.is_zero()) continue;
        for (int j = 0; j < o.cols_; ++j) {
          if (o.at(k, j).is_zero()) continue;
          r.at(i, j) += v * o.at(k, j);
        }
      }
    return r;
  }

  PolyMatrix operator+(const PolyMatrix& o) const {
    check_same_shape(o);
    PolyMatrix r(*this);
    for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] += o.a_[i];
    return r;
  }

  PolyMatrix operator-(const PolyMatrix& o) const {
    check_same_shape(o);
    PolyMatrix r(*this);
    for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] -= o.a_[i];
    return r;
  }

  PolyMatrix operator*(const Polynomial& s) const {
    PolyMatrix r(*this);
    for (auto& v : r.a_) v = v * s;
    return r;
  }

  PolyMatrix operator*(const Rat& s) const {
    PolyMatrix r(*this);
    for (auto& v : r.a_) v = v * s;
    return r;
  }

  PolyMatrix transpose() const {
    PolyMatrix r(cols_, rows_, n_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
    return r;
  }

  bool is_zero() const {
    for (const auto& v : a_)
      if (!v.is_zero()) return false;
    return true;
  }

  /// Max total degree over entries; kDegreeOfZero for the zero matrix.
  int matrix_degree() const {
    int d = kDegreeOfZero;
    for (const auto& v : a_) d = std::max(d, v.total_degree());
    return d;
  }

  PolyMatrix select(const std::vector<int>& row_idx, const std::vector<int>& col_idx) const {
    PolyMatrix r(static_cast<int>(row_idx.size()), static_cast<int>(col_idx.size()), n_);
    for (std::size_t i = 0; i < row_idx.size(); ++i)
      for (std::size_t j = 0; j < col_idx.size(); ++j)
        r.at(static_cast<int>(i), static_cast<int>(j)) = at(row_idx[i], col_idx[j]);
    return r;
  }

  PolyMatrix without_row(int row) const {
    std::vector<int> ri, ci;
    for (int i = 0; i < rows_; ++i)
      if (i != row) ri.push_back(i);
    for (int j = 0; j < cols_; ++j) ci.push_back(j);
    return select(ri, ci);
  }

  std::vector<Polynomial> column(int j) const {
    std::vector<Polynomial> c;
    c.reserve(static_cast<std::size_t>(rows_));
    for (int i = 0; i < rows_; ++i) c.push_back(at(i, j));
    return c;
  }

  std::vector<Polynomial> row(int i) const {
    std::vector<Polynomial> r;
    r.reserve(static_cast<std::size_t>(cols_));
    for (int j = 0; j < cols_; ++j) r.push_back(at(i, j));
    return r;
  }

  void set_column(int j, const std::vector<Polynomial>& c) {
    for (int i = 0; i < rows_; ++i) at(i, j) = c[static_cast<std::size_t>(i)];
  }

  // Elementary column operations (all unimodular).
  void swap_cols(int i, int j) {
    for (int r = 0; r < rows_; ++r) std::swap(at(r, i), at(r, j));
  }
  void scale_col(int j, const Rat& c) {
    if (c == 0) throw Error("PolyMatrix: scaling a column by zero");
    for (int r = 0; r < rows_; ++r) at(r, j) = at(r, j) * c;
  }
  void axpy_col(int dst, int src, const Polynomial& c) {
    for (int r = 0; r < rows_; ++r) at(r, dst) += at(r, src) * c;
  }

  /// Exact determinant: direct expansion for tiny sizes, Bareiss
  /// fraction-free elimination otherwise (all divisions exact over R).
  Polynomial determinant() const {
    if (rows_ != cols_) throw Error("PolyMatrix: determinant of non-square matrix");
    const int k = rows_;
    if (k == 1) return at(0, 0);
    if (k == 2) return at(0, 0) * at(1, 1) - at(0, 1) * at(1, 0);
    if (k == 3) {
      return at(0, 0) * (at(1, 1) * at(2, 2) - at(1, 2) * at(2, 1)) -
             at(0, 1) * (at(1, 0) * at(2, 2) - at(1, 2) * at(2, 0)) +
             at(0, 2) * (at(1, 0) * at(2, 1) - at(1, 1) * at(2, 0));
    }
    PolyMatrix w(*this);
    Polynomial prev = Polynomial::constant(n_, 1);
    bool negate = false;
    for (int p = 0; p < k - 1; ++p) {
      int pivot = -1;
      for (int r = p; r < k; ++r)
        if (!w.at(r, p).is_zero()) { pivot = r; break; }
      if (pivot < 0) return Polynomial::zero(n_);
      if (pivot != p) {
        for (int j = 0; j < k; ++j) std::swap(w.at(pivot, j), w.at(p, j));
        negate = !negate;
      }
      for (int i = p + 1; i < k; ++i) {
        for (int j = p + 1; j < k; ++j) {
          Polynomial num = w.at(p, p) * w.at(i, j) - w.at(i, p) * w.at(p, j);
          auto q = divide_exact(num, prev);
          if (!q) throw Error("PolyMatrix: Bareiss division failed (internal)");
          w.at(i, j) = *q;
        }
        w.at(i, p) = Polynomial::zero(n_);
      }
      prev = w.at(p, p);
    }
    Polynomial d = w.at(k - 1, k - 1);
    return negate ? -d : d;
  }

  /// Signed maximal minors of an (l+1) x l matrix: entry i (0-based) is
  /// (-1)^i det(A with row i deleted), matching the fixed sign convention
  /// (-1)^{i+1} for 1-based indices.
  std::vector<Polynomial> signed_maximal_minors() const {
    if (cols_ != rows_ - 1) throw Error("signed_maximal_minors: need shape (l+1) x l");
    std::vector<Polynomial> out;
    out.reserve(static_cast<std::size_t>(rows_));
    for (int i = 0; i < rows_; ++i) {
      Polynomial d = without_row(i).determinant();
      out.push_back(i % 2 == 0 ? d : -d);
    }
    return out;
  }

  /// All r x r minors of an r x s matrix with r <= s, ordered by the
  /// lexicographic column selection.
  std::vector<Polynomial> maximal_minors() const {
    if (rows_ > cols_) throw Error("maximal_minors: need rows <= cols");
    std::vector<Polynomial> out;
    std::vector<int> sel(static_cast<std::size_t>(rows_));
    for (int i = 0; i < rows_; ++i) sel[static_cast<std::size_t>(i)] = i;
    std::vector<int> all_rows(static_cast<std::size_t>(rows_));
    for (int i = 0; i < rows_; ++i) all_rows[static_cast<std::size_t>(i)] = i;
    while (true) {
      out.push_back(select(all_rows, sel).determinant());
      int i = rows_ - 1;
      while (i >= 0 && sel[static_cast<std::size_t>(i)] == cols_ - rows_ + i) --i;
      if (i < 0) break;
      ++sel[static_cast<std::size_t>(i)];
      for (int j = i + 1; j < rows_; ++j) sel[static_cast<std::size_t>(j)] = sel[static_cast<std::size_t>(j - 1)] + 1;
    }
    return out;
  }

  /// Classical adjugate: adj(A) * A = det(A) * I.
  PolyMatrix adjugate() const {
    if (rows_ != cols_) throw Error("adjugate: non-square matrix");
    const int k = rows_;
    PolyMatrix adj(k, k, n_);
    if (k == 1) {
      adj.at(0, 0) = Polynomial::constant(n_, 1);
      return adj;
    }
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j) {
        std::vector<int> ri, ci;
        for (int t = 0; t < k; ++t) {
          if (t != i) ri.push_back(t);
          if (t != j) ci.push_back(t);
        }
        Polynomial cof = select(ri, ci).determinant();
        if ((i + j) % 2 == 1) cof = -cof;
        adj.at(j, i) = cof;
      }
    return adj;
  }

  /// Exact inverse of a matrix whose determinant is a nonzero constant:
  /// adjugate over that constant.
  PolyMatrix inverse_unimodular() const {
    if (rows_ != cols_) throw Error("inverse_unimodular: non-square matrix");
    Polynomial d = determinant();
    if (!d.is_constant() || d.is_zero())
      throw Error("inverse_unimodular: determinant is not a nonzero constant");
    Rat dc = d.constant_value();
    const int k = rows_;
    PolyMatrix inv(k, k, n_);
    if (k == 1) {
      inv.at(0, 0) = Polynomial::constant(n_, Rat(1) / dc);
      return inv;
    }
    std::vector<int> all(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) all[static_cast<std::size_t>(i)] = i;
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j) {
        std::vector<int> ri, ci;
        for (int t = 0; t < k; ++t) {
          if (t != i) ri.push_back(t);
          if (t != j) ci.push_back(t);
        }
        Polynomial cof = select(ri, ci).determinant();
        if ((i + j) % 2 == 1) cof = -cof;
        inv.at(j, i) = cof * (Rat(1) / dc);  // adjugate transposes indices
      }
    return inv;
  }

  /// One row per line, entries separated by ';', each entry in the shared
  /// polynomial grammar.
  std::string to_text(const VarTable& vars) const {
    std::ostringstream out;
    for (int i = 0; i < rows_; ++i) {
      for (int j = 0; j < cols_; ++j) {
        if (j) out << " ; ";
        out << to_string(at(i, j), vars);
      }
      out << "\n";
    }
    return out.str();
  }

  static PolyMatrix parse(const std::string& text, const VarTable& vars) {
    std::vector<std::vector<Polynomial>> rows;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      std::vector<Polynomial> row;
      std::size_t start = 0;
      while (true) {
        std::size_t semi = line.find(';', start);
        std::string cell = line.substr(start, semi == std::string::npos ? std::string::npos : semi - start);
        row.push_back(parse_polynomial(cell, vars));
        if (semi == std::string::npos) break;
        start = semi + 1;
      }
      rows.push_back(std::move(row));
    }
    if (rows.empty()) throw ParseError("matrix text has no rows");
    return from_rows(std::move(rows));
  }

  void check_same_shape(const PolyMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw Error("PolyMatrix: shape mismatch");
  }

private:
  int rows_, cols_, n_;
  std::vector<Polynomial> a_;
};

/// (p1 ... pk) as a 1 x k matrix.
inline PolyMatrix row_matrix(const std::vector<Polynomial>& entries) {
  return PolyMatrix::from_rows({entries});
}

inline int matrix_degree(const PolyMatrix& m) { return m.matrix_degree(); }

}  // namespace syz
