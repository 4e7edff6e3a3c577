#include "trisplit/model_ops.hpp"

#include "trisplit/errors.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <string>

namespace trisplit {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Periodic bidiagonal difference: (D x)_i = a * x_i + c * x_{i + offset}.
SparseMatrix periodic_difference(int n, double diag, double off, int offset) {
  std::vector<Eigen::Triplet<double>> entries;
  entries.reserve(2 * static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    entries.emplace_back(i, i, diag);
    entries.emplace_back(i, (i + offset + n) % n, off);
  }
  SparseMatrix m(n, n);
  m.setFromTriplets(entries.begin(), entries.end());
  return m;
}

Eigen::MatrixXd to_dense(const SparseMatrix& a) { return Eigen::MatrixXd(a); }

double min_eigenvalue(const Eigen::MatrixXd& sym) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(sym, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

double max_abs(const Eigen::MatrixXd& a) { return a.size() ? a.cwiseAbs().maxCoeff() : 0.0; }

}  // namespace

Grid1D Grid1D::make(int n_points, double x_min, double x_max) {
  if (n_points <= 0) throw ConfigError("grid: n_points must be positive");
  if (!(x_max > x_min)) throw ConfigError("grid: x_max must exceed x_min");
  return Grid1D{n_points, x_min, x_max};
}

Vector Grid1D::nodes() const {
  Vector x(n_points);
  for (int i = 0; i < n_points; ++i) x[i] = node(i);
  return x;
}

DensityProfile DensityProfile::step(const Grid1D& grid, Interval foil, double rho_f) {
  if (rho_f < 0.0) throw ConfigError("density: foil density must be nonnegative");
  DensityProfile d;
  d.foil = foil;
  d.plateau = rho_f;
  d.values = Vector::Zero(grid.n_points);
  for (int i = 0; i < grid.n_points; ++i) {
    if (foil.contains(grid.node(i))) d.values[i] = rho_f;
  }
  return d;
}

OmegaMatrix OmegaMatrix::from_diagonal(Vector diag) {
  OmegaMatrix om;
  double common = 0.0;
  for (Eigen::Index i = 0; i < diag.size(); ++i) {
    const double w = diag[i];
    if (w == 0.0) continue;
    if (common == 0.0) {
      common = w;
    } else if (w != common) {
      om.single_frequency = false;
    }
  }
  om.diag = std::move(diag);
  return om;
}

DiscreteOperators DiscreteOperators::with_omega(OmegaMatrix om) const {
  if (om.size() != size()) throw DimensionError("operators: Omega size does not match grid");
  DiscreteOperators copy = *this;
  copy.omega = std::move(om);
  return copy;
}

State State::zero(int n) {
  return State{Vector::Zero(n), Vector::Zero(n), Vector::Zero(n), 0.0};
}

bool State::all_finite() const { return p.allFinite() && e.allFinite() && b.allFinite(); }

double State::max_norm() const { return std::max({p.norm(), e.norm(), b.norm()}); }

void PulseConfig::validate() const {
  if (!(sigma0 > 0.0)) throw ConfigError("pulse: sigma0 must be positive");
}

double pulse_profile(double x, const PulseConfig& pulse) {
  const double phase = kTwoPi * (x - pulse.xbar);
  return pulse.a0 * std::exp(-phase * phase / (2.0 * pulse.sigma0 * pulse.sigma0)) *
         std::cos(phase);
}

DiscreteOperators build_yee_operators(const Grid1D& grid) {
  const int n = grid.n_points;
  if (n < 3) throw ConfigError("yee operators need at least 3 grid points");
  const double inv_h = 1.0 / grid.spacing();

  DiscreteOperators ops;
  // (C_E e)_i = (e_i - e_{i-1}) / h
  ops.c_e = periodic_difference(n, inv_h, -inv_h, -1);
  // (C_B b)_i = -(b_{i+1} - b_i) / h
  ops.c_b = periodic_difference(n, inv_h, -inv_h, +1);
  ops.g = SparseMatrix(-(ops.c_b * ops.c_e));
  ops.g.prune(0.0);
  ops.omega = OmegaMatrix::zero(n);
  ops.curl_bound = 2.0 * inv_h;
  return ops;
}

OmegaMatrix build_omega(const DensityProfile& density, double f) {
  return OmegaMatrix::from_diagonal(f * density.values.array().sqrt().matrix());
}

State laser_pulse_initial(const Grid1D& grid, const PulseConfig& pulse) {
  pulse.validate();
  State s = State::zero(grid.n_points);
  for (int i = 0; i < grid.n_points; ++i) s.e[i] = pulse_profile(grid.node(i), pulse);
  s.b = s.e;
  return s;
}

KgProblem build_kg_problem(const Grid1D& grid, double omega, Interval foil,
                           KgFrequencyConvention convention, const PulseConfig& pulse) {
  pulse.validate();
  if (!(omega > 0.0)) throw ConfigError("klein-gordon: omega must be positive");
  if (grid.n_points < 3) throw ConfigError("klein-gordon: need at least 3 grid points");
  if (!(foil.lo >= grid.x_min && foil.hi <= grid.x_max && foil.lo < foil.hi)) {
    throw ConfigError("klein-gordon: foil interval lies outside the grid");
  }
  const int n = grid.n_points;
  const double h = grid.spacing();
  const double inv_h2 = 1.0 / (h * h);

  KgProblem kg;
  kg.grid = grid;
  kg.omega_value = omega;

  // spdiags([e, -2e, e], -1:1, N, N) / h^2 with the periodic corners.
  std::vector<Eigen::Triplet<double>> entries;
  for (int i = 0; i < n; ++i) {
    entries.emplace_back(i, i, -2.0 * inv_h2);
    entries.emplace_back(i, (i + 1) % n, inv_h2);
    entries.emplace_back(i, (i + n - 1) % n, inv_h2);
  }
  kg.g = SparseMatrix(n, n);
  kg.g.setFromTriplets(entries.begin(), entries.end());

  const double entry =
      convention == KgFrequencyConvention::squared ? omega : std::sqrt(omega);
  Vector diag = Vector::Zero(n);
  for (int i = 0; i < n; ++i) {
    if (foil.contains(grid.node(i))) diag[i] = entry;
  }
  kg.omega = OmegaMatrix::from_diagonal(std::move(diag));

  // Right-travelling data: edot0 = -d/dx of the pulse.
  const double k = kTwoPi / pulse.sigma0;
  kg.e0.resize(n);
  kg.edot0.resize(n);
  for (int i = 0; i < n; ++i) {
    const double x = grid.node(i) - pulse.xbar;
    kg.e0[i] = pulse_profile(grid.node(i), pulse);
    kg.edot0[i] = pulse.a0 * (k * k * x * std::cos(kTwoPi * x) + kTwoPi * std::sin(kTwoPi * x)) *
                  std::exp(-0.5 * k * k * x * x);
  }
  return kg;
}

double hamiltonian(const Vector& e, const Vector& f, const OmegaMatrix& omega,
                   const SparseMatrix& c_e) {
  if (e.size() != f.size() || e.size() != omega.size() || c_e.cols() != e.size()) {
    throw DimensionError("hamiltonian: dimension mismatch");
  }
  const Vector curl = c_e * e;
  return 0.5 * f.squaredNorm() + 0.5 * omega.diag.cwiseProduct(e).squaredNorm() +
         0.5 * curl.squaredNorm();
}

double hamiltonian_g(const Vector& e, const Vector& f, const OmegaMatrix& omega,
                     const SparseMatrix& g) {
  if (e.size() != f.size() || e.size() != omega.size() || g.cols() != e.size()) {
    throw DimensionError("hamiltonian: dimension mismatch");
  }
  return 0.5 * f.squaredNorm() + 0.5 * omega.diag.cwiseProduct(e).squaredNorm() -
         0.5 * e.dot(g * e);
}

double operator_norm(const SparseMatrix& a, int iterations) {
  if (a.rows() == 0 || a.cols() == 0) return 0.0;
  if (a.cols() <= 2000) {
    const Eigen::MatrixXd ata = to_dense(SparseMatrix(a.transpose() * a));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(ata, Eigen::EigenvaluesOnly);
    return std::sqrt(std::max(0.0, solver.eigenvalues().maxCoeff()));
  }
  std::mt19937_64 rng(12345);
  std::normal_distribution<double> normal;
  Vector v(a.cols());
  for (auto& x : v) x = normal(rng);
  v.normalize();
  double sigma2 = 0.0;
  for (int it = 0; it < iterations; ++it) {
    Vector w = a.transpose() * (a * v);
    sigma2 = w.norm();
    if (sigma2 == 0.0) return 0.0;
    v = w / sigma2;
  }
  return std::sqrt(sigma2);
}

bool AssumptionReport::all_pass() const {
  auto ok = [](const CheckItem& c) { return c.pass; };
  return std::all_of(structural.begin(), structural.end(), ok) &&
         std::all_of(initial_data.begin(), initial_data.end(), ok);
}

AssumptionReport validate_assumptions(const DiscreteOperators& ops, const State& state0,
                                      const ValidationOptions& opts) {
  AssumptionReport report;
  const int n = ops.size();
  const bool shapes_ok = ops.g.rows() == ops.g.cols() && ops.omega.size() == n &&
                         state0.p.size() == n && state0.e.size() == n &&
                         state0.b.size() == n && ops.c_e.rows() == n && ops.c_e.cols() == n &&
                         ops.c_b.rows() == n && ops.c_b.cols() == n;
  report.structural.push_back({"dimensions", shapes_ok ? 1.0 : 0.0, 1.0, shapes_ok});
  if (!shapes_ok) return report;

  const Eigen::MatrixXd g = to_dense(ops.g);
  const double g_scale = std::max(1.0, max_abs(g));
  const double sym_defect = max_abs(g - g.transpose());
  report.structural.push_back(
      {"G symmetric (max |G - G^T|)", sym_defect, opts.tol * g_scale, sym_defect <= opts.tol * g_scale});

  const Eigen::MatrixXd g_sym = 0.5 * (g + g.transpose());
  const double lam_neg_g = min_eigenvalue(-g_sym);
  const double neg_g_norm = std::max(1.0, (-g_sym).norm());
  report.structural.push_back({"-G positive semidefinite (min eigenvalue)", lam_neg_g,
                               -opts.tol * neg_g_norm, lam_neg_g >= -opts.tol * neg_g_norm});

  Eigen::MatrixXd a = -g_sym;
  a.diagonal() += ops.omega.squared();
  const double lam_a = min_eigenvalue(a);
  const double a_norm = std::max(1.0, a.norm());
  report.structural.push_back({"Omega^2 - G positive semidefinite (min eigenvalue)", lam_a,
                               -opts.tol * a_norm, lam_a >= -opts.tol * a_norm});

  const bool omega_nonneg = ops.omega.diag.size() == 0 || ops.omega.diag.minCoeff() >= 0.0;
  report.structural.push_back({"Omega diagonal nonnegative", ops.omega.diag.size() ? ops.omega.diag.minCoeff() : 0.0,
                               0.0, omega_nonneg});

  const double norm_ce = operator_norm(ops.c_e);
  const double norm_cb = operator_norm(ops.c_b);
  const double bound = ops.curl_bound * (1.0 + 1e-9);
  report.structural.push_back({"||C_E|| <= C_c", norm_ce, ops.curl_bound, norm_ce <= bound});
  report.structural.push_back({"||C_B|| <= C_c", norm_cb, ops.curl_bound, norm_cb <= bound});

  // Initial data: each entry is (name, value, required H0, involves Omega).
  const Vector om2 = ops.omega.squared();
  const Vector cb_b0 = ops.c_b * state0.b;
  const double c4_factor = std::min(1.0, 4.0 / (opts.c4 * opts.c4));
  struct Bound {
    const char* name;
    double value;
    double required;
    bool omega_weighted;
  };
  const double v_om_e = ops.omega.diag.cwiseProduct(state0.e).squaredNorm();
  const double v_cb_b = cb_b0.squaredNorm();
  const double v_om2_p = om2.cwiseProduct(state0.p).squaredNorm();
  const double v_ce_e = (ops.c_e * state0.e).squaredNorm();
  const double v_e = state0.e.squaredNorm();
  const double v_b = state0.b.squaredNorm();
  const double v_om2_cb_b = om2.cwiseProduct(cb_b0).squaredNorm();
  const Bound bounds[] = {
      {"||Omega e0||^2 <= 2/3 H0", v_om_e, 1.5 * v_om_e, true},
      {"||C_B b0||^2 <= 1/3 min(1, 4/C4^2) H0", v_cb_b, 3.0 * v_cb_b / c4_factor, false},
      {"||Omega^2 p0||^2 <= 1/3 H0", v_om2_p, 3.0 * v_om2_p, true},
      {"||C_E e0||^2 <= 2 H0", v_ce_e, 0.5 * v_ce_e, false},
      {"||e0||^2 <= H0", v_e, v_e, false},
      {"||b0||^2 <= H0", v_b, v_b, false},
      {"||Omega^2 C_B b0||^2 <= H0", v_om2_cb_b, v_om2_cb_b, true},
  };

  for (const auto& bd : bounds) {
    report.h0 = std::max(report.h0, bd.required);
    if (!bd.omega_weighted) report.h0_field_only = std::max(report.h0_field_only, bd.required);
  }
  // Data count as far from the plasma when the Omega-weighted bounds do not
  // raise H0 above what the field norms alone require.
  for (const auto& bd : bounds) {
    const bool finite = std::isfinite(bd.value);
    const bool pass = finite && (!bd.omega_weighted ||
                                 bd.required <= report.h0_field_only * (1.0 + 1e-12));
    report.initial_data.push_back({bd.name, bd.value, bd.required, pass});
  }
  return report;
}

}  // namespace trisplit
