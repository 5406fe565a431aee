#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "aiet/errors.hpp"
#include "aiet/linalg.hpp"

namespace aiet {

template <typename Scalar>
struct PerronFrobenius {
  Scalar log_eigenvalue{};
  /// Positive left eigenvector, scaled so that left^T right = 1.
  Vector<Scalar> left;
  /// Positive right eigenvector with unit l1 norm.
  Vector<Scalar> right;
  long iterations = 0;
};

struct PowerIterationOptions {
  double tolerance = 1e-13;
  long max_iterations = 1'000'000;
  /// Skip the primitivity test (for conditioned matrices whose far-off
  /// entries may have underflowed).
  bool check_primitive = true;
};

namespace detail {

/// Power iteration for a nonnegative matrix; stops once the Collatz-Wielandt
/// bounds min_i (Ax)_i/x_i <= r <= max_i (Ax)_i/x_i agree to `tol` relative.
/// Returns the l1-normalized vector and the midpoint estimate.
template <typename Derived>
auto power_iterate(const Eigen::MatrixBase<Derived>& a, const PowerIterationOptions& opt,
                   long& iterations) {
  using Scalar = typename Derived::Scalar;
  const Eigen::Index n = a.rows();
  Vector<Scalar> x = Vector<Scalar>::Constant(n, Scalar(1) / Scalar(n));
  Vector<Scalar> y(n);
  Scalar lo = 0, hi = 0;
  for (iterations = 1; iterations <= opt.max_iterations; ++iterations) {
    y.noalias() = a * x;
    lo = std::numeric_limits<Scalar>::infinity();
    hi = 0;
    for (Eigen::Index i = 0; i < n; ++i) {
      if (x(i) <= 0) continue;
      const Scalar ratio = y(i) / x(i);
      lo = std::min(lo, ratio);
      hi = std::max(hi, ratio);
    }
    const Scalar norm = l1_norm(y);
    if (!(norm > 0) || !std::isfinite(static_cast<double>(norm)))
      throw NumericError("power iteration produced a zero or non-finite vector");
    x = y / norm;
    if (hi - lo <= Scalar(opt.tolerance) * hi) return std::pair{x, (lo + hi) / 2};
  }
  std::ostringstream msg;
  msg << "power iteration did not converge after " << opt.max_iterations
      << " iterations (Collatz-Wielandt gap " << static_cast<double>(hi - lo) << ")";
  throw NumericError(msg.str());
}

}  // namespace detail

/// Perron-Frobenius eigendata of a primitive nonnegative matrix.
///
/// Throws InputError for non-primitive input and NumericError when power
/// iteration stalls.
template <typename Derived>
PerronFrobenius<typename Derived::Scalar> pf_left_right(const Eigen::MatrixBase<Derived>& a,
                                                        const PowerIterationOptions& opt = {}) {
  using Scalar = typename Derived::Scalar;
  if (a.rows() != a.cols() || a.rows() == 0) throw InputError("Perron-Frobenius of a non-square matrix");
  if ((a.array() < 0).any()) throw InputError("Perron-Frobenius of a matrix with negative entries");
  if (opt.check_primitive && !is_primitive(a)) throw InputError("matrix is not primitive");

  PerronFrobenius<Scalar> pf;
  long right_iters = 0, left_iters = 0;
  auto [right, right_estimate] = detail::power_iterate(a, opt, right_iters);
  auto [left, left_estimate] = detail::power_iterate(a.transpose(), opt, left_iters);
  (void)left_estimate;
  pf.iterations = right_iters + left_iters;
  pf.right = std::move(right);
  const Scalar pairing = left.dot(pf.right);
  if (!(pairing > 0)) throw NumericError("left and right Perron-Frobenius vectors are orthogonal");
  pf.left = left / pairing;
  // With left^T right = 1 the bilinear form is second-order accurate.
  const Scalar rayleigh = pf.left.dot(a * pf.right);
  pf.log_eigenvalue = std::log(rayleigh > 0 ? rayleigh : right_estimate);
  return pf;
}

}  // namespace aiet
