#pragma once

// Exact propagation of e'' = -(Omega^2 - G) e through the eigendecomposition
// of the symmetric positive semidefinite matrix A = Omega^2 - G. The impulse
// and magnetic flux follow from integrating e in closed form per mode.

#include "trisplit/model_ops.hpp"

#include <utility>

namespace trisplit {

/// Largest system the dense oracle accepts.
inline constexpr int kOracleMaxSize = 2000;

/// Below this |lambda| the per-mode propagators use their polynomial limits.
inline constexpr double kModeSeriesThreshold = 1e-8;

/// Per-mode propagator coefficients at time t for eigenvalue lambda:
///   cos(sqrt(l) t), t sinc(sqrt(l) t), t^2 cosc(sqrt(l) t).
struct ModeCoefficients {
  double cos_term;
  double sinc_term;
  double cosc_term;
};

ModeCoefficients mode_coefficients(double lambda, double t);

/// The same coefficients through the small-lambda Taylor limits only.
ModeCoefficients mode_coefficients_series(double lambda, double t);

class SpectralOracle {
 public:
  /// Throws DimensionError for n > kOracleMaxSize and std::invalid_argument
  /// when Omega^2 - G is not symmetric to 1e-8 relative.
  static SpectralOracle build(const SparseMatrix& g, const OmegaMatrix& omega);
  static SpectralOracle build(const DiscreteOperators& ops) { return build(ops.g, ops.omega); }

  int size() const { return static_cast<int>(eigenvalues_.size()); }
  const Vector& eigenvalues() const { return eigenvalues_; }
  const Eigen::MatrixXd& eigenvectors() const { return eigenvectors_; }
  /// Max_k ||A v_k - lambda_k v_k|| relative to ||A||.
  double residual() const { return residual_; }
  double matrix_norm() const { return a_norm_; }

  /// e(t) and e'(t) from e(0) = e0, e'(0) = edot0.
  std::pair<Vector, Vector> exact_e(const Vector& e0, const Vector& edot0, double t) const;

  /// Integral of e over [0, t].
  Vector integral_e(const Vector& e0, const Vector& edot0, double t) const;

  /// Full (p, e, b) at time state0.t + t, with edot0 = C_B b0 - Omega^2 p0.
  State exact_state(const DiscreteOperators& ops, const State& state0, double t) const;

 private:
  Vector eigenvalues_;
  Eigen::MatrixXd eigenvectors_;
  double residual_ = 0.0;
  double a_norm_ = 0.0;
};

/// e'(0) = C_B b0 - Omega^2 p0.
Vector initial_e_velocity(const DiscreteOperators& ops, const State& state0);

}  // namespace trisplit
