#include "helpers.hpp"
#include "trisplit/errors.hpp"
#include "trisplit/reference.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace trisplit;

namespace {

DiscreteOperators desk_ops() {
  const Grid1D grid = Grid1D::make(480, 0.0, 24.0);
  return build_yee_operators(grid).with_omega(build_omega(DensityProfile::step(grid, {20.0, 21.0}, 9e6)));
}

Vector vec4(double a, double b, double c, double d) {
  Vector v(4);
  v << a, b, c, d;
  return v;
}

}  // namespace

TEST_SUITE("reference") {

TEST_CASE("mode coefficients: branches agree at the threshold") {
  for (const double t : {0.5, 1.0, 3.0}) {
    const double lam = kModeSeriesThreshold * 1.0000001;
    const auto a = mode_coefficients(lam, t);
    const auto b = mode_coefficients_series(lam, t);
    CHECK(a.cos_term == doctest::Approx(b.cos_term).epsilon(1e-10));
    CHECK(a.sinc_term == doctest::Approx(b.sinc_term).epsilon(1e-10));
    CHECK(a.cosc_term == doctest::Approx(b.cosc_term).epsilon(1e-10));
  }
  const auto z = mode_coefficients(0.0, 2.0);
  CHECK(z.cos_term == 1.0);
  CHECK(z.sinc_term == 2.0);
  CHECK(z.cosc_term == 2.0);
}

TEST_CASE("diagonal system: eigenvalues are omega^2") {
  const int n = 5;
  Vector w(n);
  w << 0, 1, 2, 3, 4;
  const SpectralOracle o = SpectralOracle::build(SparseMatrix(n, n), OmegaMatrix::from_diagonal(w));
  for (int i = 0; i < n; ++i) CHECK(o.eigenvalues()[i] == doctest::Approx(i * i));
  CHECK((o.eigenvectors().cwiseAbs() - Eigen::MatrixXd::Identity(n, n)).norm() <= 1e-14);
}

TEST_CASE("single mode half period") {
  Vector w(1);
  w << 7.0;
  const SpectralOracle o = SpectralOracle::build(SparseMatrix(1, 1), OmegaMatrix::from_diagonal(w));
  const auto [e, ed] = o.exact_e(Vector::Ones(1), Vector::Zero(1), std::numbers::pi / 7.0);
  CHECK(e[0] == doctest::Approx(-1.0).epsilon(1e-14));
  CHECK(std::fabs(ed[0]) < 1e-13);
}

TEST_CASE("t = 0 returns the data") {
  const DiscreteOperators ops = desk_ops();
  const SpectralOracle o = SpectralOracle::build(ops);
  std::mt19937 rng(2);
  const State s0 = testutil::random_state(480, rng);
  const State s = o.exact_state(ops, s0, 0.0);
  CHECK(testutil::rel_diff(s.p, s0.p) <= 1e-13);
  CHECK(testutil::rel_diff(s.e, s0.e) <= 1e-13);
  CHECK(testutil::rel_diff(s.b, s0.b) <= 1e-13);
  const Vector v = initial_e_velocity(ops, s0);
  const auto [e, ed] = o.exact_e(s0.e, v, 0.0);
  CHECK(testutil::rel_diff(ed, v) <= 1e-13);
}

TEST_CASE("free streaming") {
  const int n = 6;
  DiscreteOperators ops;
  ops.c_e = SparseMatrix(n, n);
  ops.g = SparseMatrix(n, n);
  ops.omega = OmegaMatrix::zero(n);
  // C_B arbitrary while G = 0: not a Yee pair, but exact_state only needs G and C_B b0.
  ops.c_b = SparseMatrix(n, n);
  for (int i = 0; i < n; ++i) ops.c_b.insert(i, i) = 1.0 + i;
  std::mt19937 rng(4);
  const State s0 = testutil::random_state(n, rng);
  const SpectralOracle o = SpectralOracle::build(ops);
  const double t = 1.7;
  const State s = o.exact_state(ops, s0, t);
  CHECK(testutil::rel_diff(s.p, s0.p + t * s0.e + 0.5 * t * t * (ops.c_b * s0.b)) <= 1e-14);
}

TEST_CASE("exact flow against the matrix exponential") {
  // Values from tests/oracles/expm_reference.py.
  DiscreteOperators ops = build_yee_operators(Grid1D::make(4, 0.0, 2.0));
  ops.omega = OmegaMatrix::from_diagonal(vec4(0, 3, 3, 0));
  State s0;
  s0.p = vec4(0.1, -0.2, 0.05, 0.3);
  s0.e = vec4(1.0, 0.5, -0.25, 0.125);
  s0.b = vec4(-0.3, 0.2, 0.4, -0.1);
  const State s = SpectralOracle::build(ops).exact_state(ops, s0, 0.7);
  CHECK(testutil::rel_diff(s.p, vec4(0.40110344180210794675, 0.098551428913738012169, 0.22052926325168912298,
                                     0.54314898676086883856)) <= 1e-13);
  CHECK(testutil::rel_diff(s.e, vec4(-0.15325446914189484787, -0.080116686830262077324, 0.65594439975056354312,
                                     0.56547505151122763229)) <= 1e-13);
  CHECK(testutil::rel_diff(s.b, vec4(-0.41590891008247821639, 0.20510402577673986916, 0.65604433132409777838,
                                     -0.24523944701835943115)) <= 1e-13);
}

TEST_CASE("residual on the desk operators") {
  const SpectralOracle o = SpectralOracle::build(desk_ops());
  CHECK(o.residual() <= 1e-8);
  CHECK(o.eigenvalues().minCoeff() >= -1e-10 * o.matrix_norm());
}

TEST_CASE("klein-gordon: one large eigenvalue per foil node") {
  const KgProblem kg = build_kg_problem(Grid1D::make(240, -10.0, 14.0), 9e3, {10.0, 11.0});
  const SpectralOracle o = SpectralOracle::build(kg.g, kg.omega);
  const double g_norm = Eigen::MatrixXd(kg.g).operatorNorm();
  int big = 0;
  for (int i = 0; i < o.size(); ++i) big += o.eigenvalues()[i] >= 81e6 - g_norm;
  int foil = 0;
  for (int i = 0; i < kg.omega.size(); ++i) foil += kg.omega.diag[i] != 0.0;
  CHECK(big == foil);
}

TEST_CASE("energy is conserved along the exact solution") {
  const DiscreteOperators ops = desk_ops();
  const SpectralOracle o = SpectralOracle::build(ops);
  const State s0 = laser_pulse_initial(Grid1D::make(480, 0.0, 24.0), {});
  const Vector v = initial_e_velocity(ops, s0);
  const double h0 = hamiltonian(s0.e, v, ops.omega, ops.c_e);
  double worst = 0.0;
  for (int k = 1; k <= 50; ++k) {
    const auto [e, ed] = o.exact_e(s0.e, v, 0.4 * k);
    worst = std::max(worst, std::fabs(hamiltonian(e, ed, ops.omega, ops.c_e) - h0) / h0);
  }
  CHECK(worst <= 1e-9);
}

TEST_CASE("exact state solves the ODE") {
  const DiscreteOperators ops = desk_ops();
  const SpectralOracle o = SpectralOracle::build(ops);
  const State s0 = laser_pulse_initial(Grid1D::make(480, 0.0, 24.0), {});
  const double d = 1e-5;
  const State s = o.exact_state(ops, s0, 1.0);
  const State sp = o.exact_state(ops, s0, 1.0 + d), sm = o.exact_state(ops, s0, 1.0 - d);
  const Vector dp = (sp.p - sm.p) / (2 * d), de = (sp.e - sm.e) / (2 * d), db = (sp.b - sm.b) / (2 * d);
  const Vector rhs_e = ops.c_b * s.b - ops.omega.squared().cwiseProduct(s.p);
  CHECK(testutil::rel_diff(dp, s.e) <= 1e-6);
  CHECK(testutil::rel_diff(db, -(ops.c_e * s.e)) <= 1e-6);
  // The e residual is scaled by the stiff Omega^2 p term; compare relative to its parts.
  CHECK((de - rhs_e).norm() <= 1e-6 * std::max(rhs_e.norm(), (ops.c_b * s.b).norm()));
}

TEST_CASE("semigroup property") {
  const DiscreteOperators ops = desk_ops();
  const SpectralOracle o = SpectralOracle::build(ops);
  const State s0 = laser_pulse_initial(Grid1D::make(480, 0.0, 24.0), {});
  const State direct = o.exact_state(ops, s0, 3.5);
  const State twice = o.exact_state(ops, o.exact_state(ops, s0, 1.2), 2.3);
  CHECK(testutil::rel_diff(direct.e, twice.e) <= 1e-9);
  CHECK(testutil::rel_diff(direct.b, twice.b) <= 1e-9);
  CHECK(testutil::rel_diff(direct.p, twice.p) <= 1e-9);
  CHECK(twice.t == doctest::Approx(3.5));
}

TEST_CASE("rejections") {
  const int n = 3;
  SparseMatrix g(n, n);
  g.insert(0, 1) = 1.0;
  CHECK_THROWS_AS(SpectralOracle::build(g, OmegaMatrix::zero(n)), std::invalid_argument);
  CHECK_THROWS_AS(SpectralOracle::build(SparseMatrix(n, n), OmegaMatrix::zero(n + 1)), DimensionError);
  const DiscreteOperators big = build_yee_operators(Grid1D::make(kOracleMaxSize + 1, 0.0, 1.0));
  CHECK_THROWS_AS(SpectralOracle::build(big), DimensionError);
}

}
