#include "bordqft/matrix.hpp"

#include "bordqft/errors.hpp"

namespace bordqft {

RatMat RatMat::identity(int n) {
  RatMat m(n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

RatMat RatMat::transpose() const {
  RatMat t(cols_, rows_);
  for (int r = 0; r < rows_; ++r)
    for (int c = 0; c < cols_; ++c) t.at(c, r) = at(r, c);
  return t;
}

bool RatMat::is_zero() const {
  for (const auto& v : a_)
    if (v != 0) return false;
  return true;
}

bool RatMat::is_antisymmetric() const {
  if (rows_ != cols_) return false;
  for (int r = 0; r < rows_; ++r)
    for (int c = 0; c <= r; ++c)
      if (at(r, c) != -at(c, r)) return false;
  return true;
}

RatMat operator*(const RatMat& a, const RatMat& b) {
  if (a.cols_ != b.rows_) throw ValidationError("RatMat: dimension mismatch in product");
  RatMat out(a.rows_, b.cols_);
  for (int r = 0; r < a.rows_; ++r)
    for (int k = 0; k < a.cols_; ++k) {
      const Rat& v = a.at(r, k);
      if (v == 0) continue;
      for (int c = 0; c < b.cols_; ++c) out.at(r, c) += v * b.at(k, c);
    }
  return out;
}

RatMat operator+(const RatMat& a, const RatMat& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
    throw ValidationError("RatMat: dimension mismatch in sum");
  RatMat out = a;
  for (size_t i = 0; i < out.a_.size(); ++i) out.a_[i] += b.a_[i];
  return out;
}

RatMat operator-(const RatMat& a, const RatMat& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
    throw ValidationError("RatMat: dimension mismatch in difference");
  RatMat out = a;
  for (size_t i = 0; i < out.a_.size(); ++i) out.a_[i] -= b.a_[i];
  return out;
}

RatMat RatMat::operator-() const {
  RatMat out = *this;
  for (auto& v : out.a_) v = -v;
  return out;
}

RatVec RatMat::apply(const RatVec& v) const {
  if (int(v.size()) != cols_) throw ValidationError("RatMat: dimension mismatch in apply");
  RatVec out(rows_);
  for (int r = 0; r < rows_; ++r)
    for (int c = 0; c < cols_; ++c)
      if (at(r, c) != 0) out[r] += at(r, c) * v[c];
  return out;
}

std::vector<int> RatMat::rref() {
  std::vector<int> pivots;
  int row = 0;
  for (int col = 0; col < cols_ && row < rows_; ++col) {
    int p = -1;
    for (int r = row; r < rows_; ++r)
      if (at(r, col) != 0) {
        p = r;
        break;
      }
    if (p < 0) continue;
    if (p != row)
      for (int c = 0; c < cols_; ++c) std::swap(at(p, c), at(row, c));
    Rat inv = 1 / at(row, col);
    for (int c = col; c < cols_; ++c) at(row, c) *= inv;
    for (int r = 0; r < rows_; ++r) {
      if (r == row || at(r, col) == 0) continue;
      Rat f = at(r, col);
      for (int c = col; c < cols_; ++c) at(r, c) -= f * at(row, c);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

int RatMat::rank() const {
  RatMat m = *this;
  return int(m.rref().size());
}

RatMat RatMat::inverse() const {
  if (rows_ != cols_) throw ValidationError("RatMat: inverse of non-square matrix");
  int n = rows_;
  RatMat aug(n, 2 * n);
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) aug.at(r, c) = at(r, c);
    aug.at(r, n + r) = 1;
  }
  auto pivots = aug.rref();
  if (int(pivots.size()) != n || pivots.back() != n - 1) {
    // pivots strictly inside the left block iff invertible
    for (int i = 0; i < int(pivots.size()); ++i)
      if (pivots[i] >= n) throw ValidationError("RatMat: singular matrix");
    if (int(pivots.size()) != n) throw ValidationError("RatMat: singular matrix");
  }
  RatMat inv(n, n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) inv.at(r, c) = aug.at(r, n + c);
  return inv;
}

bool RatMat::is_invertible() const {
  return rows_ == cols_ && rank() == rows_;
}

}  // namespace bordqft
