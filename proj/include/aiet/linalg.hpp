#pragma once

#include <cstdint>

#include <Eigen/Dense>

namespace aiet {

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using IntMatrix = Matrix<std::int64_t>;
using IntVector = Vector<std::int64_t>;

/// Sum of absolute coordinates.
template <typename Derived>
typename Derived::Scalar l1_norm(const Eigen::MatrixBase<Derived>& v) {
  return v.cwiseAbs().sum();
}

/// True if some power of the sign pattern of `a` is strictly positive.
///
/// Uses repeated boolean squaring up to the Wielandt bound (n-1)^2+1; a
/// primitive matrix stays positive for every exponent past that bound.
template <typename Derived>
bool is_primitive(const Eigen::MatrixBase<Derived>& a) {
  const Eigen::Index n = a.rows();
  if (n == 0 || a.cols() != n) return false;
  Matrix<std::uint8_t> pattern = (a.array() > 0).template cast<std::uint8_t>();
  const std::int64_t bound = (n - 1) * (n - 1) + 1;
  std::int64_t exponent = 1;
  while (exponent < bound) {
    Matrix<std::uint8_t> squared = Matrix<std::uint8_t>::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index k = 0; k < n; ++k)
        if (pattern(i, k))
          for (Eigen::Index j = 0; j < n; ++j)
            squared(i, j) |= pattern(k, j);
    pattern = std::move(squared);
    exponent *= 2;
  }
  return (pattern.array() != 0).all();
}

/// Exact determinant of an integer matrix (fraction-free Bareiss elimination).
std::int64_t determinant(const IntMatrix& m);

}  // namespace aiet
