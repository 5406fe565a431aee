#pragma once

#include <optional>
#include <string>

#include "aiet/linalg.hpp"
#include "aiet/permutation.hpp"
#include "aiet/rational.hpp"
#include "aiet/rauzy.hpp"
#include "aiet/spectrum.hpp"

namespace aiet {

/// A self-similar IET of periodic type: permutation, closed Rauzy path and
/// everything derived from the self-similarity matrix.
struct SelfSimilarSystem {
  Permutation permutation;
  RauzyPath path;
  IntMatrix matrix;        ///< M
  double theta0 = 0;       ///< Perron-Frobenius eigenvalue of M
  double rho0 = 0;         ///< log theta0
  Vector<double> lambda;   ///< left PF eigenvector, sum = 1
  int period = 0;          ///< number of Rauzy steps
  SpectrumClassification spectrum;

  int size() const { return permutation.size(); }

  /// lambda rescaled so that coordinate `a` equals 1.
  Vector<double> lambda_normalized_at(Letter a) const { return lambda / lambda(a); }

  /// Builds and validates the system. Throws InputError for open paths,
  /// non-primitive M or |det M| != 1.
  static SelfSimilarSystem build(Permutation permutation, RauzyPath path);
};

/// An exactly M-invariant rational log-slope vector.
class SlopeVector {
 public:
  /// Throws InputError unless M omega = omega exactly.
  SlopeVector(const SelfSimilarSystem& system, RationalVector omega);

  const RationalVector& values() const { return omega_; }
  const Rational& operator[](Letter a) const { return omega_[a]; }
  int size() const { return static_cast<int>(omega_.size()); }
  bool is_zero() const;
  Vector<double> to_double() const;

 private:
  RationalVector omega_;
};

struct StepMismatch {
  int step = 0;
  StepKind expected = StepKind::top;
  StepKind realized = StepKind::top;
  double top_length = 0;     ///< length of the last top interval
  double bottom_length = 0;  ///< length of the last bottom interval
};

struct RenormalizationReport {
  bool ok = false;
  std::string realized_types;
  double ratio = 0;  ///< |I| / |I^(n)|
  double max_length_deviation = 0;
  std::optional<StepMismatch> first_mismatch;
  std::string message;
};

/// Runs one period of Rauzy-Veech induction on (permutation, lengths) in
/// floating point and checks that the realized step types reproduce the
/// path, that the length ratio is theta0, and that the renormalized length
/// vector returns to the start (both within 1e-8).
RenormalizationReport numeric_rv_consistency(const SelfSimilarSystem& system,
                                             const Vector<double>& lengths);

inline RenormalizationReport numeric_rv_consistency(const SelfSimilarSystem& system) {
  return numeric_rv_consistency(system, system.lambda);
}

}  // namespace aiet
