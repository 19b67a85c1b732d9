#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "defcoh/scalar.hpp"

namespace defcoh::linalg {

// Which elimination kernel to run. Both produce bit-identical results; the
// serial one is the reference the parallel one is tested against.
enum class Kernel { Serial, Parallel };

// Process-wide default, settable from the CLI (--serial) or tests.
Kernel& default_kernel();

class Matrix {
 public:
  Matrix() : rows_(0), cols_(0) {}
  Matrix(std::size_t rows, std::size_t cols, const FieldDesc& fd)
      : rows_(rows), cols_(cols), fd_(fd), a_(rows * cols, Scalar::zero(fd)) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const FieldDesc& field() const { return fd_; }

  Scalar& at(std::size_t r, std::size_t c) { return a_[r * cols_ + c]; }
  const Scalar& at(std::size_t r, std::size_t c) const { return a_[r * cols_ + c]; }

  bool operator==(const Matrix& o) const;
  static Matrix identity(std::size_t n, const FieldDesc& fd);
  Matrix mul(const Matrix& o) const;
  bool is_zero() const;

 private:
  std::size_t rows_, cols_;
  FieldDesc fd_;
  std::vector<Scalar> a_;
};

// In-place reduced row echelon form; returns the pivot columns in order.
// Deterministic: first nonzero pivot in row-major scan, pivots normalized
// to 1, eliminated above and below.
std::vector<std::size_t> rref(Matrix& m, Kernel k);
inline std::vector<std::size_t> rref(Matrix& m) { return rref(m, default_kernel()); }

std::size_t rank(Matrix m, Kernel k);
inline std::size_t rank(Matrix m) { return rank(std::move(m), default_kernel()); }

// Fraction-free (Bareiss) rank for towers with a polynomial numerator
// structure (Q and rational-function coefficients): rows are cleared of
// denominators once, after which every division in the elimination is exact
// and entries never acquire denominators. Falls back to rref-based rank for
// other towers.
std::size_t rank_bareiss(Matrix m, Kernel k);
inline std::size_t rank_bareiss(Matrix m) { return rank_bareiss(std::move(m), default_kernel()); }

// Nullspace basis, RREF-canonical (one vector per free column, in column
// order). Deterministic.
std::vector<std::vector<Scalar>> nullspace(const Matrix& m, Kernel k);
inline std::vector<std::vector<Scalar>> nullspace(const Matrix& m) {
  return nullspace(m, default_kernel());
}

// One solution of M x = b (the RREF particular solution with free variables
// set to zero), or nullopt when inconsistent.
std::optional<std::vector<Scalar>> solve(const Matrix& m, const std::vector<Scalar>& b, Kernel k);
inline std::optional<std::vector<Scalar>> solve(const Matrix& m, const std::vector<Scalar>& b) {
  return solve(m, b, default_kernel());
}

}  // namespace defcoh::linalg
