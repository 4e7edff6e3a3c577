#pragma once

// Grids, discrete curl operators, density profiles and initial data for the
// 1D Maxwell-plasma model and the Klein-Gordon test problem.
//
// Units are dimensionless: space is scaled to the laser wave number, time to
// the laser period, so the pulse has wavelength 1 and travels at speed 1.

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include <string>
#include <vector>

namespace trisplit {

using Vector = Eigen::VectorXd;
using SparseMatrix = Eigen::SparseMatrix<double, Eigen::RowMajor>;

/// Uniform periodic grid. Node i (0-based) sits at x_min + (i + 1) * h, so the
/// last node coincides with x_max and is identified with x_min.
struct Grid1D {
  int n_points = 0;
  double x_min = 0.0;
  double x_max = 0.0;

  /// Throws ConfigError unless n_points > 0 and x_max > x_min.
  static Grid1D make(int n_points, double x_min, double x_max);

  double spacing() const { return (x_max - x_min) / n_points; }
  double node(int i) const { return x_min + (i + 1) * spacing(); }
  Vector nodes() const;
};

/// Open interval (lo, hi); membership is strict on both ends.
struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  bool contains(double x) const { return x > lo && x < hi; }
};

/// Step density: rho_F on foil nodes, zero elsewhere.
struct DensityProfile {
  Vector values;
  Interval foil;
  double plateau = 0.0;

  static DensityProfile step(const Grid1D& grid, Interval foil, double rho_f);
};

/// Diagonal frequency matrix Omega, stored by its diagonal.
struct OmegaMatrix {
  Vector diag;
  /// True when every entry is either 0 or one common value.
  bool single_frequency = true;

  static OmegaMatrix from_diagonal(Vector diag);
  static OmegaMatrix zero(int n) { return from_diagonal(Vector::Zero(n)); }

  int size() const { return static_cast<int>(diag.size()); }
  double max_frequency() const { return diag.size() ? diag.maxCoeff() : 0.0; }
  Vector squared() const { return diag.array().square(); }
};

/// Discrete curls and their product. The semi-discrete system reads
///   p' = e,  e' = C_B b - Omega^2 p,  b' = -C_E e,
/// and G = -C_B C_E.
struct DiscreteOperators {
  SparseMatrix c_e;
  SparseMatrix c_b;
  SparseMatrix g;
  OmegaMatrix omega;
  /// Bound C_c on ||C_E|| and ||C_B||.
  double curl_bound = 0.0;

  int size() const { return static_cast<int>(g.rows()); }
  DiscreteOperators with_omega(OmegaMatrix om) const;
};

struct State {
  Vector p;
  Vector e;
  Vector b;
  double t = 0.0;

  static State zero(int n);
  int size() const { return static_cast<int>(e.size()); }
  bool all_finite() const;
  /// Largest of ||p||, ||e||, ||b||.
  double max_norm() const;
};

/// Gaussian-modulated right-travelling pulse with wavelength 1.
struct PulseConfig {
  double a0 = 1.0;
  double xbar = 10.0;
  double sigma0 = 10.0;

  void validate() const;
};

double pulse_profile(double x, const PulseConfig& pulse);

/// Yee operators on a periodic grid: C_E is the backward difference and
/// C_B the negated forward difference, both scaled by 1/h. Omega is zero.
/// Throws ConfigError for fewer than 3 points.
DiscreteOperators build_yee_operators(const Grid1D& grid);

/// omega_j = f * sqrt(rho_j).
OmegaMatrix build_omega(const DensityProfile& density, double f = 1.0);

/// e = b = pulse, p = 0 at t = 0.
State laser_pulse_initial(const Grid1D& grid, const PulseConfig& pulse);

enum class KgFrequencyConvention { squared, linear };

/// Klein-Gordon test problem e'' = G e - Omega^2 e.
struct KgProblem {
  Grid1D grid;
  SparseMatrix g;
  OmegaMatrix omega;
  Vector e0;
  Vector edot0;
  double omega_value = 0.0;
};

/// Builds the periodic second-difference G, Omega = omega * 1_foil and
/// right-travelling pulse data e0 = pulse, edot0 = -d/dx pulse. With the
/// linear convention the stored Omega is diag(sqrt(omega) * 1_foil), so that
/// Omega^2 = diag(omega * 1_foil).
KgProblem build_kg_problem(const Grid1D& grid, double omega, Interval foil,
                           KgFrequencyConvention convention = KgFrequencyConvention::squared,
                           const PulseConfig& pulse = {1.0, 0.0, 10.0});

/// H(e, f) = 1/2 ||f||^2 + 1/2 ||Omega e||^2 + 1/2 ||C_E e||^2.
double hamiltonian(const Vector& e, const Vector& f, const OmegaMatrix& omega,
                   const SparseMatrix& c_e);

/// Same energy with the curl term written as -<e, G e>; used where only G is known.
double hamiltonian_g(const Vector& e, const Vector& f, const OmegaMatrix& omega,
                     const SparseMatrix& g);

struct CheckItem {
  std::string name;
  double value = 0.0;
  /// Threshold or derived quantity the value was compared against.
  double reference = 0.0;
  bool pass = false;
};

struct AssumptionReport {
  std::vector<CheckItem> structural;
  std::vector<CheckItem> initial_data;
  /// Smallest H0 for which every initial-data bound holds.
  double h0 = 0.0;
  /// Smallest H0 from the bounds that do not involve Omega.
  double h0_field_only = 0.0;

  bool all_pass() const;
};

struct ValidationOptions {
  /// Relative slack for symmetry and semidefiniteness checks.
  double tol = 1e-10;
  /// Constant C_4 of the (cos z + 1) psi_E(z/2) <= C_4 |sinc z| bound.
  double c4 = 2.0;
};

/// Checks the structural operator assumptions and the initial-data bounds.
/// Never throws on bad data; every outcome is a report entry.
AssumptionReport validate_assumptions(const DiscreteOperators& ops, const State& state0,
                                      const ValidationOptions& opts = {});

/// Largest singular value via power iteration on A^T A.
double operator_norm(const SparseMatrix& a, int iterations = 500);

}  // namespace trisplit
