#pragma once

#include <cmath>
#include <complex>
#include <random>

#include <Eigen/Eigenvalues>

#include "gma/linalg.hpp"
#include "gma/wedge.hpp"

// Independent reference computations shared by the unit tests and the
// acceptance suite.
namespace gma::testing {

// Doubled model: v(i k + j) = M(i, j); the cone is exactly the PSD matrices.
inline bool psd_oracle(const ComplexVector& v, Eigen::Index k) {
  ComplexMatrix m(k, k);
  for (Eigen::Index i = 0; i < k; ++i)
    for (Eigen::Index j = 0; j < k; ++j) m(i, j) = v(i * k + j);
  const double scale = v.norm();
  if (max_norm(ComplexMatrix(m - m.adjoint())) > 1e-8 * scale) return false;
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(0.5 * (m + m.adjoint()));
  return es.eigenvalues().minCoeff() >= -1e-8 * scale;
}

inline ComplexVector vec_of(const ComplexMatrix& m) {
  const Eigen::Index k = m.rows();
  ComplexVector v(k * k);
  for (Eigen::Index i = 0; i < k; ++i)
    for (Eigen::Index j = 0; j < k; ++j) v(i * k + j) = m(i, j);
  return v;
}

inline double max_diff(const Poincare<double>& a, const Poincare<double>& b) {
  double d = 0.0;
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) d = std::max(d, std::abs(a.lorentz[i][j] - b.lorentz[i][j]));
    d = std::max(d, std::abs(a.translation[i] - b.translation[i]));
  }
  return d;
}

/// |det L - 1| relative to the size of the cofactor products.
inline double det_residual(const Mat4<double>& l) {
  double scale = 1.0;
  for (const auto& row : l)
    for (double x : row) scale = std::max(scale, std::abs(x));
  return std::abs(determinant(l) - 1.0) / std::pow(scale, 4);
}

/// Points of g W_R, dense near the edge and far out.
inline Vec4<double> sample_in(std::mt19937_64& rng, const Poincare<double>& g) {
  std::uniform_real_distribution<double> expo(-3.0, 3.0), u(-1.0, 1.0);
  const double scale = std::pow(10.0, expo(rng));
  const double y0 = scale * u(rng);
  const Vec4<double> y{y0, std::abs(y0) + scale * (u(rng) + 1.0) * 0.5 + 1e-12, scale * u(rng) * 3.0,
            scale * u(rng) * 3.0};
  return g.apply(y);
}

/// Sampling oracle for inner subset of outer: false when a sampled point of
/// inner lies clearly outside outer.
inline bool sampled_inclusion(std::mt19937_64& rng, const Wedge<double>& outer, const Poincare<double>& inner_element,
                       int samples) {
  for (int s = 0; s < samples; ++s) {
    const Vec4<double> x = sample_in(rng, inner_element);
    const double size = 1.0 + std::sqrt(dot(x, x));
    if (std::min(outer.plus(x), outer.minus(x)) < -1e-9 * size) return false;
  }
  return true;
}

/// X -> A X A^dagger on hermitian matrices, read off in the Pauli basis.
inline Poincare<double> conjugation_oracle(const SL2<double>& a) {
  using cd = std::complex<double>;
  const cd i(0, 1);
  Eigen::Matrix2cd s[4];
  s[0] << 1, 0, 0, 1;
  s[1] << 0, 1, 1, 0;
  s[2] << 0, -i, i, 0;
  s[3] << 1, 0, 0, -1;
  Eigen::Matrix2cd m;
  m << cd(a[0][0].re, a[0][0].im), cd(a[0][1].re, a[0][1].im), cd(a[1][0].re, a[1][0].im),
      cd(a[1][1].re, a[1][1].im);
  Poincare<double> g;
  for (int nu = 0; nu < 4; ++nu) {
    const Eigen::Matrix2cd x = m * s[nu] * m.adjoint();
    // x = x0 + x . sigma: x0 = (x00 + x11)/2, x3 = (x00 - x11)/2, x1 = Re x10, x2 = Im x10
    g.lorentz[0][nu] = 0.5 * (x(0, 0) + x(1, 1)).real();
    g.lorentz[3][nu] = 0.5 * (x(0, 0) - x(1, 1)).real();
    g.lorentz[1][nu] = x(1, 0).real();
    g.lorentz[2][nu] = x(1, 0).imag();
  }
  return g;
}

} // namespace gma::testing
