#include "defcoh/linalg.hpp"

#include <omp.h>

#include "defcoh/errors.hpp"

namespace defcoh::linalg {

Kernel& default_kernel() {
  static Kernel k = Kernel::Parallel;
  return k;
}

bool Matrix::operator==(const Matrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) return false;
  for (std::size_t i = 0; i < a_.size(); ++i)
    if (!(a_[i] == o.a_[i])) return false;
  return true;
}

Matrix Matrix::identity(std::size_t n, const FieldDesc& fd) {
  Matrix m(n, n, fd);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = Scalar::one(fd);
  return m;
}

Matrix Matrix::mul(const Matrix& o) const {
  if (cols_ != o.rows_) throw InvalidParameters("matrix shape mismatch in mul");
  Matrix r(rows_, o.cols_, fd_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      if (at(i, k).is_zero()) continue;
      for (std::size_t j = 0; j < o.cols_; ++j) {
        if (o.at(k, j).is_zero()) continue;
        r.at(i, j) += at(i, k) * o.at(k, j);
      }
    }
  return r;
}

bool Matrix::is_zero() const {
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      if (!at(i, j).is_zero()) return false;
  return true;
}

std::vector<std::size_t> rref(Matrix& m, Kernel kern) {
  const std::size_t rows = m.rows(), cols = m.cols();
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t pr = rows;
    for (std::size_t i = r; i < rows; ++i)
      if (!m.at(i, c).is_zero()) {
        pr = i;
        break;
      }
    if (pr == rows) continue;
    if (pr != r)
      for (std::size_t j = 0; j < cols; ++j) std::swap(m.at(r, j), m.at(pr, j));
    const Scalar piv_inv = m.at(r, c).inv();
    for (std::size_t j = c; j < cols; ++j) m.at(r, j) = m.at(r, j) * piv_inv;

    if (kern == Kernel::Parallel) {
#pragma omp parallel for schedule(dynamic)
      for (long i = 0; i < static_cast<long>(rows); ++i) {
        const std::size_t ii = static_cast<std::size_t>(i);
        if (ii == r || m.at(ii, c).is_zero()) continue;
        const Scalar f = m.at(ii, c);
        for (std::size_t j = c; j < cols; ++j)
          m.at(ii, j) = m.at(ii, j) - f * m.at(r, j);
      }
    } else {
      for (std::size_t ii = 0; ii < rows; ++ii) {
        if (ii == r || m.at(ii, c).is_zero()) continue;
        const Scalar f = m.at(ii, c);
        for (std::size_t j = c; j < cols; ++j)
          m.at(ii, j) = m.at(ii, j) - f * m.at(r, j);
      }
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

std::size_t rank(Matrix m, Kernel k) { return rref(m, k).size(); }

std::size_t rank_bareiss(Matrix m, Kernel kern) {
  const std::size_t rows = m.rows(), cols = m.cols();
  if (rows == 0 || cols == 0) return 0;

  // Clear denominators rowwise; without that structure fall back to rref.
  for (std::size_t i = 0; i < rows; ++i) {
    std::vector<Scalar> row(cols, Scalar::zero(m.field()));
    for (std::size_t j = 0; j < cols; ++j) row[j] = m.at(i, j);
    if (!clear_denominators(row)) return rank(std::move(m), kern);
    for (std::size_t j = 0; j < cols; ++j) m.at(i, j) = row[j];
  }

  // One-step Bareiss: entries stay denominator-free, every division exact.
  Scalar prev = Scalar::one(m.field());
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t pr = rows;
    for (std::size_t i = r; i < rows; ++i)
      if (!m.at(i, c).is_zero()) {
        pr = i;
        break;
      }
    if (pr == rows) continue;
    if (pr != r)
      for (std::size_t j = 0; j < cols; ++j) std::swap(m.at(r, j), m.at(pr, j));
    const Scalar piv = m.at(r, c);

    if (kern == Kernel::Parallel) {
#pragma omp parallel for schedule(dynamic)
      for (long i = static_cast<long>(r) + 1; i < static_cast<long>(rows); ++i) {
        const std::size_t ii = static_cast<std::size_t>(i);
        const Scalar lead = m.at(ii, c);
        for (std::size_t j = c + 1; j < cols; ++j)
          m.at(ii, j) = (piv * m.at(ii, j) - lead * m.at(r, j)).exact_div(prev);
        m.at(ii, c) = Scalar::zero(m.field());
      }
    } else {
      for (std::size_t ii = r + 1; ii < rows; ++ii) {
        const Scalar lead = m.at(ii, c);
        for (std::size_t j = c + 1; j < cols; ++j)
          m.at(ii, j) = (piv * m.at(ii, j) - lead * m.at(r, j)).exact_div(prev);
        m.at(ii, c) = Scalar::zero(m.field());
      }
    }
    prev = piv;
    ++r;
  }
  return r;
}

std::vector<std::vector<Scalar>> nullspace(const Matrix& m, Kernel kern) {
  Matrix e = m;
  std::vector<std::size_t> pivots = rref(e, kern);
  std::vector<bool> is_pivot(m.cols(), false);
  for (std::size_t c : pivots) is_pivot[c] = true;
  std::vector<std::vector<Scalar>> basis;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    std::vector<Scalar> v(m.cols(), Scalar::zero(m.field()));
    v[f] = Scalar::one(m.field());
    for (std::size_t p = 0; p < pivots.size(); ++p) v[pivots[p]] = -e.at(p, f);
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<std::vector<Scalar>> solve(const Matrix& m, const std::vector<Scalar>& b,
                                         Kernel kern) {
  if (b.size() != m.rows()) throw InvalidParameters("rhs size mismatch in solve");
  Matrix aug(m.rows(), m.cols() + 1, m.field());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) aug.at(i, j) = m.at(i, j);
    aug.at(i, m.cols()) = b[i];
  }
  std::vector<std::size_t> pivots = rref(aug, kern);
  if (!pivots.empty() && pivots.back() == m.cols()) return std::nullopt;
  std::vector<Scalar> x(m.cols(), Scalar::zero(m.field()));
  for (std::size_t p = 0; p < pivots.size(); ++p) x[pivots[p]] = aug.at(p, m.cols());
  return x;
}

}  // namespace defcoh::linalg
