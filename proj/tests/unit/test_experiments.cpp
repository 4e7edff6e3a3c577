#include "trisplit/errors.hpp"
#include "trisplit/experiments.hpp"

#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <numbers>

using namespace trisplit;
using std::numbers::pi;

namespace {

// Small Maxwell setup so that sweeps run in well under a second.
Problem small_maxwell(double omega) {
  ProblemConfig cfg;
  cfg.kind = ProblemKind::maxwell1d;
  cfg.n = 120;
  cfg.x_min = 0.0;
  cfg.x_max = 12.0;
  cfg.foil = {9.0, 10.0, std::nullopt, omega};
  cfg.pulse = {1.0, 4.0, 6.0};
  return build_problem(cfg);
}

}  // namespace

TEST_SUITE("experiments") {

TEST_CASE("resonance grid") {
  const double c = 2 * pi / 3000.0;
  const auto taus = resonance_tau_grid(3000.0, {1}, 0.997, 1.003, 3);
  REQUIRE(taus.size() == 3);
  CHECK(taus[0] == doctest::Approx(0.997 * c).epsilon(1e-15));
  CHECK(taus[1] == c);
  CHECK(taus[2] == doctest::Approx(1.003 * c).epsilon(1e-15));
  const auto single = resonance_tau_grid(3000.0, {2}, 1.0, 1.0, 5);
  REQUIRE(single.size() == 1);
  CHECK(single[0] == 2 * c);
  // Even n misses the centre; it is appended.
  const auto even = resonance_tau_grid(3000.0, {1}, 0.99, 1.01, 4);
  CHECK(even.size() == 5);
  CHECK(std::find(even.begin(), even.end(), c) != even.end());
  CHECK(std::is_sorted(even.begin(), even.end()));
  CHECK_THROWS_AS(resonance_tau_grid(3000.0, {0}, 0.9, 1.1, 3), ConfigError);
  CHECK_THROWS_AS(resonance_tau_grid(-1.0, {1}, 0.9, 1.1, 3), ConfigError);
  CHECK_THROWS_AS(resonance_tau_grid(3000.0, {1}, 1.1, 0.9, 3), ConfigError);
}

TEST_CASE("log grid and snapping") {
  const auto taus = log_tau_grid({1e-4, 1e-2, 5});
  REQUIRE(taus.size() == 5);
  CHECK(taus.front() == 1e-4);
  CHECK(taus.back() == 1e-2);
  CHECK(taus[2] == doctest::Approx(1e-3).epsilon(1e-12));
  const SweepPoint snapped = plan_point(0.0021, 20.0, true);
  CHECK(snapped.n_steps == 9524);
  CHECK(snapped.tau * 9524 == doctest::Approx(20.0).epsilon(1e-15));
  CHECK(snapped.t_end == 20.0);
  const SweepPoint kept = plan_point(0.0021, 20.0, false);
  CHECK(kept.tau == 0.0021);
  CHECK(kept.t_end == doctest::Approx(9524 * 0.0021));
  CHECK_THROWS_AS(plan_point(-1.0, 20.0, true), ConfigError);
}

TEST_CASE("order estimate on synthetic data") {
  std::vector<double> taus, quad, lin;
  for (int i = 0; i < 8; ++i) {
    const double t = 1e-4 * std::pow(10.0, i / 4.0);
    taus.push_back(t);
    quad.push_back(t * t);
    lin.push_back(3 * t);
  }
  const OrderEstimate q = estimate_order(taus, quad);
  CHECK(q.slope == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(q.stderr_slope <= 1e-10);
  CHECK(q.trend(1e-3) == doctest::Approx(1e-6).epsilon(1e-10));
  CHECK(estimate_order(taus, lin).slope == doctest::Approx(1.0).epsilon(1e-12));
  CHECK_THROWS_AS(estimate_order({1e-3, 2e-3, 3e-3}, {1, 2, 3}), InsufficientDataError);

  SweepResult sweep;
  sweep.fields = {"err_x"};
  for (std::size_t i = 0; i < taus.size(); ++i) sweep.records.push_back({taus[i], 1, {quad[i]}, false});
  sweep.records.push_back({5e-3, 1, {std::numeric_limits<double>::infinity()}, true});
  CHECK(estimate_order(sweep, "err_x", 0.0, 1.0).n_points == 8);
  CHECK_THROWS_AS(estimate_order(sweep, "err_x", 2e-3, 1.0), InsufficientDataError);
  CHECK_THROWS_AS(estimate_order(sweep, "err_q", 0.0, 1.0), std::out_of_range);
}

TEST_CASE("sweep: second order off resonance with the new filter") {
  const Problem prob = small_maxwell(500.0);
  SweepConfig cfg;
  cfg.filter = "new";
  cfg.t_final = 2.0;
  cfg.extra_taus = {1.0e-3, 2.0e-3, 4.0e-3};
  const SweepResult r = run_sweep(prob, cfg, 1);
  REQUIRE(r.records.size() == 3);
  CHECK(r.fields == std::vector<std::string>{"err_p", "err_e", "err_b"});
  const std::size_t e = r.field_index("err_e");
  for (std::size_t i = 0; i + 1 < 3; ++i) {
    CHECK(r.records[i].tau < r.records[i + 1].tau);
    const double ratio = r.records[i + 1].errors[e] / r.records[i].errors[e];
    CHECK(ratio == doctest::Approx(4.0).epsilon(0.3));
  }
}

TEST_CASE("sweep output does not depend on the thread count") {
  const Problem prob = small_maxwell(300.0);
  SweepConfig cfg;
  cfg.filter = "orig";
  cfg.t_final = 1.0;
  cfg.tau_log = {1e-3, 1e-2, 6};
  cfg.zooms = {{1, 0.99, 1.01, 3}};
  const std::string one = sweep_to_csv(run_sweep(prob, cfg, 1));
  const std::string four = sweep_to_csv(run_sweep(prob, cfg, 4));
  CHECK(one == four);
}

TEST_CASE("vacuum: every filter gives the same errors") {
  const Problem prob = small_maxwell(0.0);
  SweepConfig cfg;
  cfg.t_final = 1.0;
  cfg.tau_log = {2e-3, 1e-2, 4};
  std::string first;
  for (const char* name : {"none", "orig", "new", "sinc2z"}) {
    cfg.filter = name;
    const std::string csv = sweep_to_csv(run_sweep(prob, cfg, 1));
    if (first.empty()) first = csv;
    CHECK(csv == first);
  }
}

TEST_CASE("sweep rejects mismatched methods") {
  SweepConfig cfg;
  cfg.method = Method::kg_two_step;
  cfg.extra_taus = {1e-3};
  CHECK_THROWS_AS(run_sweep(small_maxwell(10.0), cfg), ConfigError);
  cfg.method = Method::triple_split;
  CHECK_THROWS_AS(run_sweep(build_problem(klein_gordon_config()), cfg), ConfigError);
  CHECK(parse_method("kg_two_step") == Method::kg_two_step);
  CHECK_THROWS_AS(parse_method("rk4"), ConfigError);
}

TEST_CASE("klein-gordon sweep with family F is second order") {
  SweepConfig cfg;
  cfg.method = Method::kg_two_step;
  cfg.filter = "F";
  cfg.t_final = 3.0;
  cfg.tau_log = {1e-3, 1e-2, 5};
  const SweepResult r = run_sweep(build_problem(klein_gordon_config()), cfg, 0);
  CHECK(r.fields == std::vector<std::string>{"err_x"});
  const OrderEstimate est = estimate_order(r, "err_x", 0.0, 1.0);
  CHECK(est.slope == doctest::Approx(2.0).epsilon(0.05));
}

}
