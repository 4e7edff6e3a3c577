#pragma once

// Step-size sweeps against the spectral reference, resonance windows and
// convergence-order fits.

#include "trisplit/config.hpp"
#include "trisplit/filters.hpp"

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace trisplit {

enum class Method { triple_split, kg_two_step };

Method parse_method(const std::string& name);
std::string to_string(Method m);

/// Log-uniform step sizes lo..hi (inclusive), n points.
struct LogRange {
  double lo = 1e-4;
  double hi = 1e-2;
  int n = 0;
};

/// Window [lo * c, hi * c] around c = 2 pi k / omega with n uniform samples.
struct ZoomWindow {
  int k = 1;
  double lo = 1.0;
  double hi = 1.0;
  int n = 1;
};

struct SweepConfig {
  Method method = Method::triple_split;
  /// Filter set name (triple splitting) or family label A..I (two-step).
  std::string filter = "new";
  double t_final = 20.0;
  LogRange tau_log;
  std::vector<ZoomWindow> zooms;
  /// Extra step sizes taken as given (treated like zoom points).
  std::vector<double> extra_taus;
};

/// One step size of a sweep. Errors are euclidean norms of the absolute
/// error, ordered like SweepResult::fields; +inf marks a blow-up.
struct ErrorRecord {
  double tau = 0.0;
  std::int64_t n_steps = 0;
  std::vector<double> errors;
  bool blow_up = false;
};

struct SweepResult {
  /// "err_p", "err_e", "err_b" or "err_x".
  std::vector<std::string> fields;
  std::vector<ErrorRecord> records;

  /// Index of a field; throws std::out_of_range.
  std::size_t field_index(const std::string& name) const;
};

/// Uniform samples over each window plus the exact centre 2 pi k / omega.
/// Throws ConfigError for k <= 0, omega <= 0 or lo > hi.
std::vector<double> resonance_tau_grid(double omega, const std::vector<int>& k_list,
                                       double window_lo, double window_hi, int n);

std::vector<double> log_tau_grid(const LogRange& range);

/// Integration length for one requested step size.
struct SweepPoint {
  double tau = 0.0;
  std::int64_t n_steps = 0;
  /// n_steps * tau; equals T for snapped points.
  double t_end = 0.0;
};

/// Snapped: tau -> T / round(T / tau). Unsnapped: tau kept, T' = round(T / tau) tau.
SweepPoint plan_point(double tau, double t_final, bool snap);

/// Runs every step size of cfg against the exact solution. Points run on up to
/// `jobs` threads (0 = hardware concurrency); records come back sorted by tau.
SweepResult run_sweep(const Problem& problem, const SweepConfig& cfg, int jobs = 0);

struct OrderEstimate {
  double slope = 0.0;
  double stderr_slope = 0.0;
  double intercept = 0.0;
  int n_points = 0;

  /// exp(intercept) * tau^slope
  double trend(double tau) const;
};

/// Least-squares fit of log(err) against log(tau) for one field over records
/// with tau in [tau_lo, tau_hi]. Blow-ups and zero errors are skipped. Throws
/// InsufficientDataError with fewer than 4 usable records.
OrderEstimate estimate_order(const SweepResult& sweep, const std::string& field,
                             double tau_lo, double tau_hi);
OrderEstimate estimate_order(const std::vector<double>& taus, const std::vector<double>& errors);

// CSV ----------------------------------------------------------------------

/// Shortest round-trip decimal; "inf" for +infinity.
std::string format_double(double v);
double parse_double(const std::string& s);

void emit_csv(const SweepResult& sweep, const std::filesystem::path& path);
std::string sweep_to_csv(const SweepResult& sweep);
SweepResult parse_sweep_csv(const std::string& text);
SweepResult read_sweep_csv(const std::filesystem::path& path);

void emit_report(const ConditionReport& report, const std::filesystem::path& path);
std::string report_to_csv(const ConditionReport& report);

}  // namespace trisplit
