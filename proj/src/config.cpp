#include "trisplit/config.hpp"

#include "trisplit/errors.hpp"

#include <cmath>
#include <fstream>

namespace trisplit {

using nlohmann::json;

std::string to_string(ProblemKind kind) {
  return kind == ProblemKind::maxwell1d ? "maxwell1d" : "klein_gordon";
}

double ProblemConfig::frequency() const {
  if (foil.omega) return *foil.omega;
  if (foil.rho) return f * std::sqrt(*foil.rho);
  return 0.0;
}

namespace {

template <typename T>
T require(const json& obj, const char* section, const char* key) {
  if (!obj.contains(key)) {
    throw ConfigError(std::string("config: missing key '") + section + "." + key + "'");
  }
  try {
    return obj.at(key).get<T>();
  } catch (const json::exception&) {
    throw ConfigError(std::string("config: key '") + section + "." + key + "' has the wrong type");
  }
}

const json& section(const json& j, const char* name) {
  if (!j.contains(name) || !j.at(name).is_object()) {
    throw ConfigError(std::string("config: missing section '") + name + "'");
  }
  return j.at(name);
}

}  // namespace

ProblemConfig ProblemConfig::from_json(const json& j) {
  if (!j.is_object()) throw ConfigError("config: top level must be an object");
  ProblemConfig cfg;

  const auto kind = require<std::string>(j, "", "kind");
  if (kind == "maxwell1d") {
    cfg.kind = ProblemKind::maxwell1d;
  } else if (kind == "klein_gordon") {
    cfg.kind = ProblemKind::klein_gordon;
  } else {
    throw ConfigError("config: kind must be maxwell1d or klein_gordon, got '" + kind + "'");
  }

  const json& grid = section(j, "grid");
  cfg.n = require<int>(grid, "grid", "n");
  cfg.x_min = require<double>(grid, "grid", "x_min");
  cfg.x_max = require<double>(grid, "grid", "x_max");

  const json& foil = section(j, "foil");
  cfg.foil.lo = require<double>(foil, "foil", "lo");
  cfg.foil.hi = require<double>(foil, "foil", "hi");
  if (foil.contains("rho")) cfg.foil.rho = require<double>(foil, "foil", "rho");
  if (foil.contains("omega")) cfg.foil.omega = require<double>(foil, "foil", "omega");
  if (!cfg.foil.rho && !cfg.foil.omega) throw ConfigError("config: foil needs 'rho' or 'omega'");
  if (cfg.foil.rho && *cfg.foil.rho < 0.0) throw ConfigError("config: foil.rho must be >= 0");
  if (cfg.foil.omega && *cfg.foil.omega < 0.0) throw ConfigError("config: foil.omega must be >= 0");

  // The Klein-Gordon pulse starts at the origin unless told otherwise.
  if (cfg.kind == ProblemKind::klein_gordon) cfg.pulse.xbar = 0.0;
  if (j.contains("pulse")) {
    const json& pulse = section(j, "pulse");
    cfg.pulse.a0 = pulse.value("a0", cfg.pulse.a0);
    cfg.pulse.xbar = pulse.value("xbar", cfg.pulse.xbar);
    cfg.pulse.sigma0 = pulse.value("sigma0", cfg.pulse.sigma0);
  }
  cfg.pulse.validate();

  cfg.f = j.value("f", 1.0);
  const auto conv = j.value("kg_frequency_convention", std::string("squared"));
  if (conv == "squared") {
    cfg.kg_convention = KgFrequencyConvention::squared;
  } else if (conv == "linear") {
    cfg.kg_convention = KgFrequencyConvention::linear;
  } else {
    throw ConfigError("config: kg_frequency_convention must be squared or linear");
  }

  // Validate the grid eagerly so errors surface at load time.
  (void)Grid1D::make(cfg.n, cfg.x_min, cfg.x_max);
  if (cfg.foil.lo >= cfg.foil.hi) throw ConfigError("config: foil.lo must be < foil.hi");
  return cfg;
}

json ProblemConfig::to_json() const {
  json j;
  j["kind"] = to_string(kind);
  j["grid"] = {{"n", n}, {"x_min", x_min}, {"x_max", x_max}};
  j["foil"] = {{"lo", foil.lo}, {"hi", foil.hi}};
  if (foil.rho) j["foil"]["rho"] = *foil.rho;
  if (foil.omega) j["foil"]["omega"] = *foil.omega;
  j["pulse"] = {{"a0", pulse.a0}, {"xbar", pulse.xbar}, {"sigma0", pulse.sigma0}};
  j["f"] = f;
  j["kg_frequency_convention"] =
      kg_convention == KgFrequencyConvention::squared ? "squared" : "linear";
  return j;
}

ProblemConfig load_problem_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path.string() + "'");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& err) {
    throw ConfigError("config '" + path.string() + "': " + err.what());
  }
  try {
    return ProblemConfig::from_json(j);
  } catch (const ConfigError& err) {
    throw ConfigError(path.string() + ": " + err.what());
  }
}

MaxwellProblem build_maxwell_problem(const ProblemConfig& cfg) {
  MaxwellProblem mp;
  mp.grid = Grid1D::make(cfg.n, cfg.x_min, cfg.x_max);
  mp.omega_tilde = cfg.frequency();
  // rho is recovered from omega when only the frequency is given.
  const double rho = cfg.foil.omega ? std::pow(*cfg.foil.omega / cfg.f, 2) : cfg.foil.rho.value_or(0.0);
  mp.density = DensityProfile::step(mp.grid, Interval{cfg.foil.lo, cfg.foil.hi}, rho);
  OmegaMatrix om = build_omega(mp.density, cfg.f);
  if (cfg.foil.omega) {
    // Avoid the sqrt round trip so that Omega entries equal omega~ exactly.
    for (auto& w : om.diag) {
      if (w != 0.0) w = *cfg.foil.omega;
    }
    om = OmegaMatrix::from_diagonal(std::move(om.diag));
  }
  mp.ops = build_yee_operators(mp.grid).with_omega(std::move(om));
  mp.initial = laser_pulse_initial(mp.grid, cfg.pulse);
  return mp;
}

KgProblem build_kg_problem(const ProblemConfig& cfg) {
  const Grid1D grid = Grid1D::make(cfg.n, cfg.x_min, cfg.x_max);
  return build_kg_problem(grid, cfg.frequency(), Interval{cfg.foil.lo, cfg.foil.hi},
                          cfg.kg_convention, cfg.pulse);
}

Problem build_problem(const ProblemConfig& cfg) {
  if (cfg.kind == ProblemKind::maxwell1d) return build_maxwell_problem(cfg);
  return build_kg_problem(cfg);
}

ProblemConfig maxwell_desk_config(double omega_tilde) {
  ProblemConfig cfg;
  cfg.kind = ProblemKind::maxwell1d;
  cfg.n = 480;
  cfg.x_min = 0.0;
  cfg.x_max = 24.0;
  cfg.foil.lo = 20.0;
  cfg.foil.hi = 21.0;
  cfg.foil.rho = omega_tilde * omega_tilde;
  cfg.pulse = PulseConfig{1.0, 10.0, 10.0};
  return cfg;
}

ProblemConfig klein_gordon_config(double omega) {
  ProblemConfig cfg;
  cfg.kind = ProblemKind::klein_gordon;
  cfg.n = 240;
  cfg.x_min = -10.0;
  cfg.x_max = 14.0;
  cfg.foil.lo = 10.0;
  cfg.foil.hi = 11.0;
  cfg.foil.omega = omega;
  cfg.pulse = PulseConfig{1.0, 0.0, 10.0};
  return cfg;
}

}  // namespace trisplit
