#pragma once

// Problem definitions loaded from a JSON config file (schema in docs/config.md).

#include "trisplit/model_ops.hpp"

#include <json.hpp>

#include <filesystem>
#include <optional>
#include <string>
#include <variant>

namespace trisplit {

enum class ProblemKind { maxwell1d, klein_gordon };

std::string to_string(ProblemKind kind);

struct FoilConfig {
  double lo = 0.0;
  double hi = 0.0;
  /// Electron density on the foil; the frequency is f * sqrt(rho).
  std::optional<double> rho;
  /// Explicit foil frequency; takes precedence over rho.
  std::optional<double> omega;
};

struct ProblemConfig {
  ProblemKind kind = ProblemKind::maxwell1d;
  int n = 0;
  double x_min = 0.0;
  double x_max = 0.0;
  FoilConfig foil;
  PulseConfig pulse;
  double f = 1.0;
  KgFrequencyConvention kg_convention = KgFrequencyConvention::squared;

  /// Foil frequency omega~ implied by the config.
  double frequency() const;

  static ProblemConfig from_json(const nlohmann::json& j);
  nlohmann::json to_json() const;
};

/// Throws ConfigError with the path in the message on any read or schema error.
ProblemConfig load_problem_config(const std::filesystem::path& path);

struct MaxwellProblem {
  Grid1D grid;
  DensityProfile density;
  DiscreteOperators ops;
  State initial;
  double omega_tilde = 0.0;
};

MaxwellProblem build_maxwell_problem(const ProblemConfig& cfg);
KgProblem build_kg_problem(const ProblemConfig& cfg);

using Problem = std::variant<MaxwellProblem, KgProblem>;

Problem build_problem(const ProblemConfig& cfg);

/// The desk-scale laser reflection setup: N = 480 on [0, 24], foil (20, 21).
ProblemConfig maxwell_desk_config(double omega_tilde = 3e3);

/// Klein-Gordon setup: N = 240 on [-10, 14], foil (10, 11).
ProblemConfig klein_gordon_config(double omega = 9e3);

}  // namespace trisplit
