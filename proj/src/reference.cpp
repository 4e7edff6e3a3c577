#include "trisplit/reference.hpp"

#include "trisplit/errors.hpp"
#include "trisplit/filters.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <stdexcept>

namespace trisplit {

ModeCoefficients mode_coefficients_series(double lambda, double t) {
  const double t2 = t * t;
  const double lt2 = lambda * t2;
  return {1.0 - 0.5 * lt2 + lt2 * lt2 / 24.0, t * (1.0 - lt2 / 6.0 + lt2 * lt2 / 120.0),
          t2 * (0.5 - lt2 / 24.0 + lt2 * lt2 / 720.0)};
}

ModeCoefficients mode_coefficients(double lambda, double t) {
  if (std::fabs(lambda) < kModeSeriesThreshold) return mode_coefficients_series(lambda, t);
  // Tiny negative eigenvalues are roundoff of a semidefinite matrix.
  const double freq = std::sqrt(std::max(lambda, 0.0));
  const double z = freq * t;
  return {std::cos(z), t * sinc(z), t * t * cosc(z)};
}

SpectralOracle SpectralOracle::build(const SparseMatrix& g, const OmegaMatrix& omega) {
  const int n = static_cast<int>(g.rows());
  if (g.cols() != n || omega.size() != n) throw DimensionError("oracle: G and Omega sizes differ");
  if (n > kOracleMaxSize) {
    throw DimensionError("oracle: system size " + std::to_string(n) + " exceeds " +
                         std::to_string(kOracleMaxSize));
  }
  Eigen::MatrixXd a = -Eigen::MatrixXd(g);
  a.diagonal() += omega.squared();
  const double a_norm = a.norm();
  const double defect = (a - a.transpose()).norm();
  if (defect > 1e-8 * std::max(a_norm, 1.0)) {
    throw std::invalid_argument("oracle: Omega^2 - G is not symmetric (defect " +
                                std::to_string(defect) + ")");
  }

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(a);
  if (solver.info() != Eigen::Success) throw std::runtime_error("oracle: eigensolver failed");

  SpectralOracle o;
  o.eigenvalues_ = solver.eigenvalues();
  o.eigenvectors_ = solver.eigenvectors();
  o.a_norm_ = a_norm;
  const Eigen::MatrixXd r = a * o.eigenvectors_ - o.eigenvectors_ * o.eigenvalues_.asDiagonal();
  o.residual_ = r.colwise().norm().maxCoeff() / std::max(a_norm, 1.0);
  return o;
}

std::pair<Vector, Vector> SpectralOracle::exact_e(const Vector& e0, const Vector& edot0,
                                                  double t) const {
  if (e0.size() != size() || edot0.size() != size()) throw DimensionError("exact_e: size mismatch");
  const Vector c0 = eigenvectors_.transpose() * e0;
  const Vector c1 = eigenvectors_.transpose() * edot0;
  Vector ce(size()), cd(size());
  for (int k = 0; k < size(); ++k) {
    const double lam = eigenvalues_[k];
    const auto m = mode_coefficients(lam, t);
    ce[k] = m.cos_term * c0[k] + m.sinc_term * c1[k];
    // d/dt: -lambda t sinc(sqrt(l) t) e + cos(sqrt(l) t) edot
    cd[k] = -std::max(lam, 0.0) * m.sinc_term * c0[k] + m.cos_term * c1[k];
  }
  return {eigenvectors_ * ce, eigenvectors_ * cd};
}

Vector SpectralOracle::integral_e(const Vector& e0, const Vector& edot0, double t) const {
  if (e0.size() != size() || edot0.size() != size()) throw DimensionError("integral_e: size mismatch");
  const Vector c0 = eigenvectors_.transpose() * e0;
  const Vector c1 = eigenvectors_.transpose() * edot0;
  Vector ci(size());
  for (int k = 0; k < size(); ++k) {
    const auto m = mode_coefficients(eigenvalues_[k], t);
    // int_0^t cos = t sinc, int_0^t s sinc = t^2 cosc
    ci[k] = m.sinc_term * c0[k] + m.cosc_term * c1[k];
  }
  return eigenvectors_ * ci;
}

Vector initial_e_velocity(const DiscreteOperators& ops, const State& state0) {
  return ops.c_b * state0.b - ops.omega.squared().cwiseProduct(state0.p);
}

State SpectralOracle::exact_state(const DiscreteOperators& ops, const State& state0,
                                  double t) const {
  if (ops.size() != size() || state0.size() != size()) {
    throw DimensionError("exact_state: size mismatch");
  }
  const Vector edot0 = initial_e_velocity(ops, state0);
  const Vector integral = integral_e(state0.e, edot0, t);
  State s;
  s.e = exact_e(state0.e, edot0, t).first;
  s.p = state0.p + integral;
  s.b = state0.b - ops.c_e * integral;
  s.t = state0.t + t;
  return s;
}

}  // namespace trisplit
