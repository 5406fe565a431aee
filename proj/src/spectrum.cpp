#include "aiet/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include <Eigen/Eigenvalues>

#include "aiet/errors.hpp"

namespace aiet {

namespace {

using Poly = std::vector<BigInt>;  // lowest degree first
using RPoly = std::vector<Rational>;

void trim(Poly& p) {
  while (p.size() > 1 && p.back() == 0) p.pop_back();
}

void trim(RPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

/// Divides by a monic polynomial; returns false if the remainder is nonzero.
bool divide_exact(const Poly& p, const Poly& monic, Poly& quotient) {
  if (p.size() < monic.size()) return false;
  Poly rem = p;
  const std::size_t dq = p.size() - monic.size();
  quotient.assign(dq + 1, 0);
  for (std::size_t k = dq + 1; k-- > 0;) {
    const BigInt c = rem[k + monic.size() - 1];
    quotient[k] = c;
    if (c == 0) continue;
    for (std::size_t j = 0; j < monic.size(); ++j) rem[k + j] -= c * monic[j];
  }
  for (const BigInt& r : rem)
    if (r != 0) return false;
  return true;
}

std::vector<Poly> cyclotomics_up_to_degree(int max_degree) {
  // phi(m) >= sqrt(m/2), so no m beyond 2 d^2 has degree <= d.
  const int bound = 2 * max_degree * max_degree + 2;
  std::map<int, Poly> all;
  std::vector<Poly> result;
  for (int m = 1; m <= bound; ++m) {
    Poly p(m + 1, 0);
    p[0] = -1;
    p[m] = 1;
    for (const auto& [k, phi] : all) {
      if (m % k != 0) continue;
      Poly q;
      divide_exact(p, phi, q);
      p = std::move(q);
    }
    all.emplace(m, p);
    if (static_cast<int>(p.size()) - 1 <= max_degree) result.push_back(p);
  }
  return result;
}

RPoly to_rational(const Poly& p) { return RPoly(p.begin(), p.end()); }

RPoly remainder(RPoly a, const RPoly& b) {
  while (a.size() >= b.size() && !a.empty()) {
    const Rational c = a.back() / b.back();
    const std::size_t shift = a.size() - b.size();
    for (std::size_t j = 0; j < b.size(); ++j) a[shift + j] -= c * b[j];
    trim(a);
  }
  return a;
}

bool is_squarefree(const Poly& p) {
  if (p.size() <= 2) return true;
  RPoly a = to_rational(p), b;
  for (std::size_t k = 1; k < p.size(); ++k) b.push_back(Rational(p[k]) * static_cast<int>(k));
  trim(b);
  while (!b.empty()) {
    RPoly r = remainder(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return a.size() <= 1;  // gcd is a constant
}

std::vector<std::complex<double>> polished_roots(const Poly& p) {
  const int n = static_cast<int>(p.size()) - 1;
  std::vector<std::complex<double>> roots;
  if (n <= 0) return roots;
  Matrix<double> companion = Matrix<double>::Zero(n, n);
  const double lead = p.back().convert_to<double>();
  for (int i = 1; i < n; ++i) companion(i, i - 1) = 1.0;
  for (int i = 0; i < n; ++i) companion(i, n - 1) = -p[i].convert_to<double>() / lead;
  Eigen::EigenSolver<Matrix<double>> solver(companion, false);
  using C = std::complex<long double>;
  for (Eigen::Index k = 0; k < n; ++k) {
    C z(solver.eigenvalues()(k).real(), solver.eigenvalues()(k).imag());
    for (int it = 0; it < 50; ++it) {
      C value = 0, slope = 0;
      for (int j = n; j >= 0; --j) {
        slope = slope * z + value;
        value = value * z + static_cast<long double>(p[j].convert_to<double>());
      }
      if (std::abs(slope) == 0.0L) break;
      const C delta = value / slope;
      z -= delta;
      if (std::abs(delta) <= 1e-16L * std::max(1.0L, std::abs(z))) break;
    }
    roots.emplace_back(static_cast<double>(z.real()), static_cast<double>(z.imag()));
  }
  return roots;
}

int eigenvalue_one_geometric_multiplicity(const IntMatrix& m) {
  return static_cast<int>(invariant_space(m).size());
}

}  // namespace

const char* to_string(SpectralType type) {
  return type == SpectralType::hyperbolic_periodic ? "hyperbolic_periodic" : "other";
}

std::vector<BigInt> characteristic_polynomial(const IntMatrix& m) {
  const Eigen::Index n = m.rows();
  if (m.cols() != n) throw InputError("characteristic polynomial of a non-square matrix");
  using BigMatrix = std::vector<std::vector<BigInt>>;
  BigMatrix a(n, std::vector<BigInt>(n)), mk(n, std::vector<BigInt>(n, 0));
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) a[i][j] = m(i, j);
  Poly c(n + 1, 0);
  c[n] = 1;
  for (Eigen::Index k = 1; k <= n; ++k) {
    BigMatrix next(n, std::vector<BigInt>(n, 0));
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index l = 0; l < n; ++l) {
        if (a[i][l] == 0) continue;
        for (Eigen::Index j = 0; j < n; ++j) next[i][j] += a[i][l] * mk[l][j];
      }
    for (Eigen::Index i = 0; i < n; ++i) next[i][i] += c[n - k + 1];
    mk = std::move(next);
    BigInt trace = 0;
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index l = 0; l < n; ++l) trace += a[i][l] * mk[l][i];
    c[n - k] = -trace / k;
  }
  return c;
}

SpectrumClassification classify_spectrum(const IntMatrix& m) {
  SpectrumClassification out;
  out.characteristic_polynomial = characteristic_polynomial(m);
  const int d = static_cast<int>(m.rows());

  Poly rest = out.characteristic_polynomial;
  const Poly x_minus_one{-1, 1};
  for (const Poly& phi : cyclotomics_up_to_degree(d)) {
    Poly q;
    while (rest.size() > 1 && divide_exact(rest, phi, q)) {
      const int degree = static_cast<int>(phi.size()) - 1;
      out.unit_roots += degree;
      if (phi == x_minus_one) out.eigenvalue_one += 1;
      rest = std::move(q);
      trim(rest);
    }
  }

  out.non_unit_roots = polished_roots(rest);
  std::vector<double> expanding, contracting;
  bool all_real = true;
  for (const auto& z : out.non_unit_roots) {
    const double modulus = std::abs(z);
    if (std::abs(modulus - 1.0) < 1e-8)
      throw NumericError("indeterminate spectrum: non-cyclotomic eigenvalue of modulus " +
                         std::to_string(modulus));
    if (std::abs(z.imag()) > 1e-9 * std::max(1.0, modulus)) all_real = false;
    (modulus > 1.0 ? expanding : contracting).push_back(modulus);
  }
  for (auto* group : {&expanding, &contracting}) {
    std::sort(group->begin(), group->end());
    for (std::size_t k = 1; k < group->size(); ++k) {
      const double gap = (*group)[k] - (*group)[k - 1];
      if (gap < 1e-8 * (*group)[k] && all_real)
        throw NumericError("indeterminate spectrum: two eigenvalues share modulus " +
                           std::to_string((*group)[k]));
    }
  }

  out.genus = static_cast<int>(expanding.size());
  out.kappa = out.unit_roots + 1;
  const bool hyperbolic = all_real && is_squarefree(rest) && expanding.size() == contracting.size() &&
                          !expanding.empty() && out.eigenvalue_one == out.unit_roots &&
                          eigenvalue_one_geometric_multiplicity(m) == out.unit_roots &&
                          d == 2 * out.genus + out.kappa - 1;
  out.type = hyperbolic ? SpectralType::hyperbolic_periodic : SpectralType::other;
  return out;
}

std::vector<RationalVector> invariant_space(const IntMatrix& m) {
  const int rows = static_cast<int>(m.rows());
  const int cols = static_cast<int>(m.cols());
  if (rows != cols) throw InputError("invariant space of a non-square matrix");
  std::vector<RationalVector> a(rows, RationalVector(cols));
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) a[i][j] = Rational(m(i, j) - (i == j ? 1 : 0));

  // Reduced row echelon form.
  std::vector<int> pivot_col;
  int r = 0;
  for (int c = 0; c < cols && r < rows; ++c) {
    int p = r;
    while (p < rows && a[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(a[p], a[r]);
    const Rational lead = a[r][c];
    for (auto& v : a[r]) v /= lead;
    for (int i = 0; i < rows; ++i) {
      if (i == r || a[i][c] == 0) continue;
      const Rational f = a[i][c];
      for (int j = 0; j < cols; ++j) a[i][j] -= f * a[r][j];
    }
    pivot_col.push_back(c);
    ++r;
  }

  std::vector<RationalVector> basis;
  for (int free = 0; free < cols; ++free) {
    if (std::find(pivot_col.begin(), pivot_col.end(), free) != pivot_col.end()) continue;
    RationalVector v(cols, Rational(0));
    v[free] = 1;
    for (std::size_t k = 0; k < pivot_col.size(); ++k) v[pivot_col[k]] = -a[k][free];
    const BigInt scale = common_denominator(v);
    BigInt content = 0;
    for (auto& x : v) {
      x *= scale;
      content = boost::multiprecision::gcd(content, boost::multiprecision::numerator(x));
    }
    if (content > 1)
      for (auto& x : v) x /= content;
    basis.push_back(std::move(v));
  }
  return basis;
}

}  // namespace aiet
