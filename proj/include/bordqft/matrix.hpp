#pragma once

#include <cstddef>
#include <vector>

#include "bordqft/rational.hpp"

namespace bordqft {

using RatVec = std::vector<Rat>;

// Dense matrix over the rationals. Exact Gauss-Jordan elimination is the
// workhorse for quotient spaces, Poisson-form checks and inverses.
class RatMat {
 public:
  RatMat() = default;
  RatMat(int rows, int cols) : rows_(rows), cols_(cols), a_(size_t(rows) * cols) {}

  static RatMat identity(int n);
  static RatMat zero(int rows, int cols) { return RatMat(rows, cols); }

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  Rat& at(int r, int c) { return a_[size_t(r) * cols_ + c]; }
  const Rat& at(int r, int c) const { return a_[size_t(r) * cols_ + c]; }

  RatMat transpose() const;
  bool is_zero() const;
  bool is_antisymmetric() const;

  friend RatMat operator*(const RatMat& a, const RatMat& b);
  friend RatMat operator+(const RatMat& a, const RatMat& b);
  friend RatMat operator-(const RatMat& a, const RatMat& b);
  RatMat operator-() const;
  friend bool operator==(const RatMat& a, const RatMat& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_;
  }
  friend bool operator!=(const RatMat& a, const RatMat& b) { return !(a == b); }

  RatVec apply(const RatVec& v) const;

  // In-place reduced row echelon form; returns the pivot columns.
  std::vector<int> rref();
  int rank() const;

  // Exact inverse; throws ValidationError when singular.
  RatMat inverse() const;
  bool is_invertible() const;

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<Rat> a_;
};

}  // namespace bordqft
