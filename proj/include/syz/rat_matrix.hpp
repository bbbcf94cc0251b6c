#pragma once

#include "syz/error.hpp"
#include "syz/rational.hpp"

#include <vector>

namespace syz {

/// Dense matrix over Q. Used for coordinate changes, constant completions
/// and the constant sampling matrices; polynomial matrices live elsewhere.
class RatMatrix {
public:
  RatMatrix() : rows_(0), cols_(0) {}
  RatMatrix(int rows, int cols) : rows_(rows), cols_(cols), a_(static_cast<std::size_t>(rows) * cols, Rat(0)) {}

  static RatMatrix identity(int k) {
    RatMatrix m(k, k);
    for (int i = 0; i < k; ++i) m.at(i, i) = 1;
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  Rat& at(int i, int j) { return a_[static_cast<std::size_t>(i) * cols_ + j]; }
  const Rat& at(int i, int j) const { return a_[static_cast<std::size_t>(i) * cols_ + j]; }

  RatMatrix operator*(const RatMatrix& o) const {
    if (cols_ != o.rows_) throw Error("RatMatrix: shape mismatch in product");
    RatMatrix r(rows_, o.cols_);
    for (int i = 0; i < rows_; ++i)
      for (int k = 0; k < cols_; ++k) {
        const Rat& v = at(i, k);
        if (v == 0) continue;
        for (int j = 0; j < o.cols_; ++j) r.at(i, j) += v * o.at(k, j);
      }
    return r;
  }

  bool operator==(const RatMatrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
  }

  /// Gaussian elimination over Q; exact.
  Rat det() const {
    if (rows_ != cols_) throw Error("RatMatrix: determinant of non-square matrix");
    RatMatrix w(*this);
    Rat d(1);
    for (int c = 0; c < cols_; ++c) {
      int piv = -1;
      for (int r = c; r < rows_; ++r)
        if (w.at(r, c) != 0) { piv = r; break; }
      if (piv < 0) return Rat(0);
      if (piv != c) {
        for (int j = 0; j < cols_; ++j) std::swap(w.at(piv, j), w.at(c, j));
        d = -d;
      }
      d *= w.at(c, c);
      for (int r = c + 1; r < rows_; ++r) {
        if (w.at(r, c) == 0) continue;
        Rat factor = w.at(r, c) / w.at(c, c);
        for (int j = c; j < cols_; ++j) w.at(r, j) -= factor * w.at(c, j);
      }
    }
    return d;
  }

  RatMatrix inverse() const {
    if (rows_ != cols_) throw Error("RatMatrix: inverse of non-square matrix");
    int k = rows_;
    RatMatrix w(*this);
    RatMatrix inv = identity(k);
    for (int c = 0; c < k; ++c) {
      int piv = -1;
      for (int r = c; r < k; ++r)
        if (w.at(r, c) != 0) { piv = r; break; }
      if (piv < 0) throw Error("RatMatrix: singular matrix has no inverse");
      if (piv != c)
        for (int j = 0; j < k; ++j) {
          std::swap(w.at(piv, j), w.at(c, j));
          std::swap(inv.at(piv, j), inv.at(c, j));
        }
      Rat lead = w.at(c, c);
      for (int j = 0; j < k; ++j) {
        w.at(c, j) /= lead;
        inv.at(c, j) /= lead;
      }
      for (int r = 0; r < k; ++r) {
        if (r == c || w.at(r, c) == 0) continue;
        Rat factor = w.at(r, c);
        for (int j = 0; j < k; ++j) {
          w.at(r, j) -= factor * w.at(c, j);
          inv.at(r, j) -= factor * inv.at(c, j);
        }
      }
    }
    return inv;
  }

private:
  int rows_, cols_;
  std::vector<Rat> a_;
};

}  // namespace syz
