#include "aiet/self_similar.hpp"

#include <cmath>
#include <cstdlib>
#include <sstream>

#include "aiet/errors.hpp"
#include "aiet/perron.hpp"

namespace aiet {

SelfSimilarSystem SelfSimilarSystem::build(Permutation permutation, RauzyPath path) {
  SelfSimilarSystem s;
  s.matrix = path_matrix(permutation, path);
  const std::int64_t det = determinant(s.matrix);
  if (std::abs(det) != 1)
    throw InputError("self-similarity matrix has determinant " + std::to_string(det));
  if (!is_primitive(s.matrix)) throw InputError("self-similarity matrix is not primitive");

  const auto pf = pf_left_right(s.matrix.cast<double>().eval());
  s.rho0 = pf.log_eigenvalue;
  s.theta0 = std::exp(pf.log_eigenvalue);
  s.lambda = pf.left / pf.left.sum();
  s.period = path.length();
  s.spectrum = classify_spectrum(s.matrix);
  s.permutation = std::move(permutation);
  s.path = std::move(path);
  return s;
}

SlopeVector::SlopeVector(const SelfSimilarSystem& system, RationalVector omega)
    : omega_(std::move(omega)) {
  const int d = system.size();
  if (static_cast<int>(omega_.size()) != d)
    throw InputError("omega has " + std::to_string(omega_.size()) + " entries, alphabet has " +
                     std::to_string(d));
  for (int i = 0; i < d; ++i) {
    Rational row = 0;
    for (int j = 0; j < d; ++j) row += Rational(system.matrix(i, j)) * omega_[j];
    if (row != omega_[i]) throw InputError("omega is not invariant under the self-similarity matrix");
  }
}

bool SlopeVector::is_zero() const {
  for (const auto& v : omega_)
    if (v != 0) return false;
  return true;
}

Vector<double> SlopeVector::to_double() const {
  Vector<double> out(size());
  for (int i = 0; i < size(); ++i) out(i) = aiet::to_double(omega_[i]);
  return out;
}

RenormalizationReport numeric_rv_consistency(const SelfSimilarSystem& system,
                                             const Vector<double>& lengths) {
  RenormalizationReport report;
  const Vector<double> start = lengths / lengths.sum();
  Vector<double> current = start;
  Permutation perm = system.permutation;
  const auto& steps = system.path.steps();
  for (std::size_t k = 0; k < steps.size(); ++k) {
    const Letter top = perm.top_last();
    const Letter bottom = perm.bottom_last();
    const StepKind realized = current(top) > current(bottom) ? StepKind::top : StepKind::bottom;
    report.realized_types += to_char(realized);
    if (realized != steps[k] && !report.first_mismatch) {
      report.first_mismatch = StepMismatch{static_cast<int>(k), steps[k], realized, current(top),
                                           current(bottom)};
    }
    // Follow the prescribed path so that the remaining letters stay meaningful.
    const RauzyStep step = rauzy_step(perm, steps[k]);
    current(step.winner) -= current(step.loser);
    perm = step.next;
  }
  report.ratio = 1.0 / current.sum();
  report.max_length_deviation = ((current / current.sum()) - start).cwiseAbs().maxCoeff();

  std::ostringstream msg;
  if (report.first_mismatch) {
    const auto& m = *report.first_mismatch;
    msg << "step " << m.step << ": expected '" << to_char(m.expected) << "' but lengths give '"
        << to_char(m.realized) << "' (last top " << m.top_length << ", last bottom "
        << m.bottom_length << ")";
  } else if (std::abs(report.ratio - system.theta0) > 1e-8) {
    msg << "length ratio " << report.ratio << " differs from theta0 " << system.theta0;
  } else if (report.max_length_deviation > 1e-8) {
    msg << "renormalized lengths deviate from the start by " << report.max_length_deviation;
  }
  report.message = msg.str();
  report.ok = report.message.empty() && (current.array() > 0).all();
  if (report.ok) report.message = "ok";
  return report;
}

}  // namespace aiet
