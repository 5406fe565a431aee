#pragma once

#include <complex>
#include <vector>

#include "aiet/linalg.hpp"
#include "aiet/rational.hpp"

namespace aiet {

enum class SpectralType { hyperbolic_periodic, other };

const char* to_string(SpectralType type);

struct SpectrumClassification {
  int genus = 0;   ///< g: number of expanding eigenvalues
  int kappa = 1;   ///< kappa - 1 unit-modulus eigenvalues
  SpectralType type = SpectralType::other;
  /// Integer coefficients of det(xI - M), lowest degree first.
  std::vector<BigInt> characteristic_polynomial;
  /// Roots not accounted for by cyclotomic factors.
  std::vector<std::complex<double>> non_unit_roots;
  int unit_roots = 0;       ///< roots of unity, with multiplicity
  int eigenvalue_one = 0;   ///< multiplicity of the root 1
};

/// Exact characteristic polynomial det(xI - M) (Faddeev-LeVerrier over the
/// integers), coefficients lowest degree first.
std::vector<BigInt> characteristic_polynomial(const IntMatrix& m);

/// Classifies the spectrum of an integer matrix: cyclotomic factors are split
/// off exactly, the remaining roots are located numerically and polished to
/// 1e-12.
///
/// hyperbolic_periodic requires g real simple expanding and g real simple
/// contracting roots with pairwise distinct moduli inside each group, all unit
/// roots equal to 1 with a full eigenspace, and d = 2g + kappa - 1.
///
/// Throws NumericError("indeterminate spectrum") when a non-cyclotomic root
/// has modulus within 1e-8 of 1, or two roots of one group have moduli
/// within 1e-8 of each other.
SpectrumClassification classify_spectrum(const IntMatrix& m);

/// Exact basis of { v rational : M v = v }, each vector scaled to a primitive
/// integer vector.
std::vector<RationalVector> invariant_space(const IntMatrix& m);

}  // namespace aiet
