#include "trisplit/experiments.hpp"

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <limits>
#include <random>
#include <sstream>

using namespace trisplit;

namespace {

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("trisplit_test_" + name);
}

}  // namespace

TEST_SUITE("csv") {

TEST_CASE("number formatting round-trips") {
  CHECK(format_double(0.1) == "0.1");
  CHECK(format_double(1e-4) == "1e-04");
  CHECK(format_double(std::numeric_limits<double>::infinity()) == "inf");
  CHECK(parse_double("inf") == std::numeric_limits<double>::infinity());
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> dist(-30, 30);
  for (int i = 0; i < 1000; ++i) {
    const double v = std::pow(10.0, dist(rng));
    CHECK(parse_double(format_double(v)) == v);
  }
  CHECK_THROWS_AS(parse_double("1.5x"), std::invalid_argument);
  CHECK_THROWS_AS(parse_double(""), std::invalid_argument);
}

TEST_CASE("empty and single-record sweeps") {
  SweepResult s;
  s.fields = {"err_p", "err_e", "err_b"};
  const auto path = temp_file("empty.csv");
  emit_csv(s, path);
  CHECK(slurp(path) == "tau,n_steps,err_p,err_e,err_b,blow_up\n");
  s.records.push_back({0.001, 20000, {1.5e-6, 2e-5, 3e-5}, false});
  emit_csv(s, path);
  CHECK(slurp(path) == "tau,n_steps,err_p,err_e,err_b,blow_up\n0.001,20000,1.5e-06,2e-05,3e-05,0\n");
  std::filesystem::remove(path);
}

TEST_CASE("sweep round trip") {
  SweepResult s;
  s.fields = {"err_x"};
  const double inf = std::numeric_limits<double>::infinity();
  s.records = {{0.1 / 3, 90, {1.0 / 7}, false}, {2.0943951023931952e-3, 9549, {inf}, true}};
  const auto path = temp_file("rt.csv");
  emit_csv(s, path);
  const SweepResult back = read_sweep_csv(path);
  CHECK(back.fields == s.fields);
  REQUIRE(back.records.size() == 2);
  for (std::size_t i = 0; i < 2; ++i) {
    CHECK(back.records[i].tau == s.records[i].tau);
    CHECK(back.records[i].n_steps == s.records[i].n_steps);
    CHECK(back.records[i].errors == s.records[i].errors);
    CHECK(back.records[i].blow_up == s.records[i].blow_up);
  }
  std::filesystem::remove(path);
}

TEST_CASE("malformed input and I/O errors carry context") {
  CHECK_THROWS_AS(parse_sweep_csv("tau,err\n"), std::invalid_argument);
  CHECK_THROWS_AS(parse_sweep_csv("tau,n_steps,err_x,blow_up\n0.1,2\n"), std::invalid_argument);
  const std::filesystem::path missing = "/nonexistent/dir/out.csv";
  try {
    emit_csv(SweepResult{}, missing);
    FAIL("expected an exception");
  } catch (const std::runtime_error& err) {
    CHECK(std::string(err.what()).find(missing.string()) != std::string::npos);
  }
  try {
    read_sweep_csv(missing);
    FAIL("expected an exception");
  } catch (const std::runtime_error& err) {
    CHECK(std::string(err.what()).find(missing.string()) != std::string::npos);
  }
}

TEST_CASE("condition report") {
  ConditionReport rep;
  rep.filter_name = "orig";
  rep.conditions = {{"13a", 1e7, 6.283185307179586, true}, {"13b", 1.0, 0.5, false}};
  CHECK(report_to_csv(rep) ==
        "condition,sup,argmax_z,verdict\n13a,1e+07,6.283185307179586,divergent\n13b,1,0.5,finite\n");
}

}
