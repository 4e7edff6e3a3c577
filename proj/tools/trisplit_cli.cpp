// trisplit: command line front end.
//
//   trisplit simulate       --config c.json --tau 1e-3 --steps 100 [--filter new] [--snapshots k] --out traj.csv
//   trisplit sweep          --config c.json --method triple_split --filter new --T 20
//                           --tau-log 1e-4:1e-2:21 [--zoom k:lo:hi:n]... --out sweep.csv
//   trisplit reference      --config c.json --t 20 --out ref.csv
//   trisplit verify-filters --set new [--zmax 50.27] --out report.csv
//   trisplit validate       --config c.json
//
// Exit codes: 0 ok, 1 validation failed, 2 usage or config error,
// 3 blow-up in simulate. Every written file gets a <out>.manifest.json.

#include "trisplit/config.hpp"
#include "trisplit/errors.hpp"
#include "trisplit/experiments.hpp"
#include "trisplit/filters.hpp"
#include "trisplit/integrators.hpp"
#include "trisplit/reference.hpp"
#include "trisplit/version.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <Eigen/Eigenvalues>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>

namespace {

using namespace trisplit;
using nlohmann::json;

constexpr int kExitValidation = 1;
constexpr int kExitConfig = 2;
constexpr int kExitBlowUp = 3;

struct Options {
  std::string config;
  std::string out;
  std::string filter;
  std::string method = "triple_split";
  std::string set = "new";
  std::string tau_log;
  std::vector<std::string> zooms;
  std::vector<double> extra_taus;
  double tau = 0.0;
  long steps = 0;
  long snapshots = 0;
  double t_final = 20.0;
  double t = 0.0;
  double zmax = 16.0 * std::numbers::pi;
  int jobs = 0;
};

std::vector<std::string> split_colon(const std::string& s) {
  std::vector<std::string> parts;
  std::string cell;
  std::istringstream in(s);
  while (std::getline(in, cell, ':')) parts.push_back(cell);
  return parts;
}

double number(const std::string& flag, const std::string& text) {
  try {
    return parse_double(text);
  } catch (const std::invalid_argument&) {
    throw ConfigError(flag + ": '" + text + "' is not a number");
  }
}

int integer(const std::string& flag, const std::string& text) {
  const double v = number(flag, text);
  if (v != static_cast<int>(v)) throw ConfigError(flag + ": '" + text + "' is not an integer");
  return static_cast<int>(v);
}

LogRange parse_tau_log(const std::string& arg) {
  const auto parts = split_colon(arg);
  if (parts.size() != 3) throw ConfigError("--tau-log: expected lo:hi:n, got '" + arg + "'");
  LogRange r{number("--tau-log", parts[0]), number("--tau-log", parts[1]),
             integer("--tau-log", parts[2])};
  if (!(r.lo > 0.0)) throw ConfigError("--tau-log: lo must be positive");
  if (r.lo > r.hi) throw ConfigError("--tau-log: lo exceeds hi");
  if (r.n < 1) throw ConfigError("--tau-log: n must be at least 1");
  return r;
}

ZoomWindow parse_zoom(const std::string& arg) {
  const auto parts = split_colon(arg);
  if (parts.size() != 4) throw ConfigError("--zoom: expected k:lo:hi:n, got '" + arg + "'");
  ZoomWindow z{integer("--zoom", parts[0]), number("--zoom", parts[1]), number("--zoom", parts[2]),
               integer("--zoom", parts[3])};
  if (z.k <= 0) throw ConfigError("--zoom: k must be positive");
  if (z.lo > z.hi) throw ConfigError("--zoom: lo exceeds hi");
  if (z.n < 1) throw ConfigError("--zoom: n must be at least 1");
  return z;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out << text;
  if (!out) throw std::runtime_error("write to '" + path + "' failed");
}

void write_manifest(const std::string& out, const std::string& subcommand,
                    const std::string& config_path, const json& config, json params) {
  json m;
  m["subcommand"] = subcommand;
  m["version"] = kVersion;
  if (!config_path.empty()) {
    m["config_path"] = config_path;
    m["config"] = config;
  }
  m["parameters"] = std::move(params);
  m["outputs"] = json::array({out});
  write_text(out + ".manifest.json", m.dump(2) + "\n");
}

std::string fmt(double v) { return format_double(v); }

// --- simulate ---------------------------------------------------------------

int cmd_simulate(const Options& o) {
  const ProblemConfig cfg = load_problem_config(o.config);
  if (!(o.tau > 0.0)) throw ConfigError("--tau must be positive");
  if (o.steps < 0) throw ConfigError("--steps must be >= 0");
  const Problem problem = build_problem(cfg);
  std::ostringstream csv;
  bool blow_up = false;
  std::string diagnostic;
  std::string filter = o.filter;

  if (const auto* mp = std::get_if<MaxwellProblem>(&problem)) {
    if (filter.empty()) filter = "new";
    const StepContext ctx(mp->ops, filter_set(filter), o.tau);
    const RunResult run = triple_split_run(mp->initial, o.steps, ctx, o.snapshots);
    blow_up = run.blow_up;
    diagnostic = run.diagnostic;
    std::vector<State> frames = run.snapshots;
    if (frames.empty()) frames.push_back(run.final_state);
    csv << "t,node,x,p,e,b\n";
    for (const State& s : frames) {
      for (int i = 0; i < s.size(); ++i) {
        csv << fmt(s.t) << ',' << i << ',' << fmt(mp->grid.node(i)) << ',' << fmt(s.p[i]) << ','
            << fmt(s.e[i]) << ',' << fmt(s.b[i]) << '\n';
      }
    }
  } else {
    const auto& kg = std::get<KgProblem>(problem);
    if (filter.empty()) filter = "F";
    if (filter.size() != 1) throw ConfigError("--filter: klein_gordon needs a family label A..I");
    const KgContext ctx(kg.g, kg.omega, two_step_family(filter[0]), o.tau);
    const KgRunResult run = kg_run(kg.e0, kg.edot0, o.steps, ctx, o.snapshots);
    blow_up = run.blow_up;
    diagnostic = run.diagnostic;
    csv << "t,node,x,e\n";
    auto emit = [&](const Vector& x, long step) {
      for (int i = 0; i < x.size(); ++i) {
        csv << fmt(static_cast<double>(step) * o.tau) << ',' << i << ',' << fmt(kg.grid.node(i))
            << ',' << fmt(x[i]) << '\n';
      }
    };
    if (o.snapshots > 0) {
      for (std::size_t k = 0; k < run.snapshots.size(); ++k) {
        const long step = std::min<long>(static_cast<long>(k) * o.snapshots, run.steps_done);
        emit(run.snapshots[k], k + 1 == run.snapshots.size() ? run.steps_done : step);
      }
    } else {
      emit(run.x, run.steps_done);
    }
  }

  write_text(o.out, csv.str());
  write_manifest(o.out, "simulate", o.config, cfg.to_json(),
                 {{"tau", o.tau}, {"steps", o.steps}, {"filter", filter},
                  {"snapshots", o.snapshots}, {"blow_up", blow_up}});
  if (blow_up) {
    std::cerr << "simulate: " << diagnostic << "\n";
    return kExitBlowUp;
  }
  return 0;
}

// --- sweep ------------------------------------------------------------------

int cmd_sweep(const Options& o) {
  const ProblemConfig cfg = load_problem_config(o.config);
  SweepConfig sc;
  sc.method = parse_method(o.method);
  sc.filter = o.filter.empty() ? (sc.method == Method::triple_split ? "new" : "F") : o.filter;
  if (!(o.t_final > 0.0)) throw ConfigError("--T must be positive");
  sc.t_final = o.t_final;
  if (!o.tau_log.empty()) sc.tau_log = parse_tau_log(o.tau_log);
  for (const auto& z : o.zooms) sc.zooms.push_back(parse_zoom(z));
  for (const double tau : o.extra_taus) {
    if (!(tau > 0.0)) throw ConfigError("--tau-extra: step sizes must be positive");
    sc.extra_taus.push_back(tau);
  }
  if (sc.tau_log.n == 0 && sc.zooms.empty() && sc.extra_taus.empty()) {
    throw ConfigError("sweep: give --tau-log, --zoom or --tau-extra");
  }
  // Validate the filter name before any work is done.
  if (sc.method == Method::triple_split) {
    (void)filter_set(sc.filter);
  } else if (sc.filter.size() != 1) {
    throw ConfigError("--filter: kg_two_step needs a family label A..I");
  } else {
    (void)two_step_family(sc.filter[0]);
  }

  const SweepResult result = run_sweep(build_problem(cfg), sc, o.jobs);
  emit_csv(result, o.out);

  json zooms = json::array();
  for (const auto& z : sc.zooms) zooms.push_back({{"k", z.k}, {"lo", z.lo}, {"hi", z.hi}, {"n", z.n}});
  write_manifest(o.out, "sweep", o.config, cfg.to_json(),
                 {{"method", to_string(sc.method)},
                  {"filter", sc.filter},
                  {"T", sc.t_final},
                  {"tau_log", {{"lo", sc.tau_log.lo}, {"hi", sc.tau_log.hi}, {"n", sc.tau_log.n}}},
                  {"zooms", zooms},
                  {"tau_extra", sc.extra_taus}});
  std::size_t blow_ups = 0;
  for (const auto& r : result.records) blow_ups += r.blow_up ? 1 : 0;
  std::cout << "sweep: " << result.records.size() << " step sizes, " << blow_ups
            << " blow-ups -> " << o.out << "\n";
  return 0;
}

// --- reference --------------------------------------------------------------

int cmd_reference(const Options& o) {
  const ProblemConfig cfg = load_problem_config(o.config);
  if (!(o.t >= 0.0)) throw ConfigError("--t must be >= 0");
  const Problem problem = build_problem(cfg);
  std::ostringstream csv;
  if (const auto* mp = std::get_if<MaxwellProblem>(&problem)) {
    const SpectralOracle oracle = SpectralOracle::build(mp->ops);
    const State s = oracle.exact_state(mp->ops, mp->initial, o.t);
    csv << "node,x,p,e,b\n";
    for (int i = 0; i < s.size(); ++i) {
      csv << i << ',' << fmt(mp->grid.node(i)) << ',' << fmt(s.p[i]) << ',' << fmt(s.e[i]) << ','
          << fmt(s.b[i]) << '\n';
    }
  } else {
    const auto& kg = std::get<KgProblem>(problem);
    const SpectralOracle oracle = SpectralOracle::build(kg.g, kg.omega);
    const Vector e = oracle.exact_e(kg.e0, kg.edot0, o.t).first;
    csv << "node,x,e\n";
    for (int i = 0; i < e.size(); ++i) csv << i << ',' << fmt(kg.grid.node(i)) << ',' << fmt(e[i]) << '\n';
  }
  write_text(o.out, csv.str());
  write_manifest(o.out, "reference", o.config, cfg.to_json(), {{"t", o.t}});
  return 0;
}

// --- verify-filters ---------------------------------------------------------

int cmd_verify(const Options& o) {
  const FilterSet fs = filter_set(o.set);
  if (!(o.zmax > 0.0)) throw ConfigError("--zmax must be positive");
  ScanOptions scan;
  scan.z_max = o.zmax;
  const ConditionReport report = verify_conditions(fs, scan);
  emit_report(report, o.out);
  write_manifest(o.out, "verify-filters", "", json(), {{"set", o.set}, {"zmax", o.zmax}});
  for (const auto& c : report.conditions) {
    std::printf("%-9s %-12s sup=%-14.6g at z=%.6g\n", c.id.c_str(),
                c.divergent ? "divergent" : "finite", c.sup, c.argmax);
  }
  return 0;
}

// --- validate ---------------------------------------------------------------

void print_items(const char* title, const std::vector<CheckItem>& items) {
  std::printf("%s\n", title);
  for (const auto& it : items) {
    std::printf("  %-4s %-40s value=%-13.6g ref=%.6g\n", it.pass ? "ok" : "FAIL", it.name.c_str(),
                it.value, it.reference);
  }
}

int cmd_validate(const Options& o) {
  const ProblemConfig cfg = load_problem_config(o.config);
  const Problem problem = build_problem(cfg);
  if (const auto* mp = std::get_if<MaxwellProblem>(&problem)) {
    const AssumptionReport rep = validate_assumptions(mp->ops, mp->initial);
    print_items("structural", rep.structural);
    print_items("initial data", rep.initial_data);
    std::printf("H0 = %.6g (field-only %.6g)\n", rep.h0, rep.h0_field_only);
    std::printf("%s\n", rep.all_pass() ? "all checks pass" : "some checks FAIL");
    return rep.all_pass() ? 0 : kExitValidation;
  }
  // Klein-Gordon: G symmetric, -G and Omega^2 - G semidefinite, Omega >= 0.
  const auto& kg = std::get<KgProblem>(problem);
  const Eigen::MatrixXd g = Eigen::MatrixXd(kg.g);
  const double scale = std::max(1.0, g.cwiseAbs().maxCoeff());
  std::vector<CheckItem> items;
  const double asym = (g - g.transpose()).cwiseAbs().maxCoeff();
  items.push_back({"G symmetric", asym, 1e-10 * scale, asym <= 1e-10 * scale});
  Eigen::MatrixXd a = -g;
  const double min_neg_g = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(a, Eigen::EigenvaluesOnly)
                               .eigenvalues()
                               .minCoeff();
  items.push_back({"-G positive semidefinite", min_neg_g, -1e-10 * scale, min_neg_g >= -1e-10 * scale});
  a.diagonal() += kg.omega.squared();
  const double min_a = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(a, Eigen::EigenvaluesOnly)
                           .eigenvalues()
                           .minCoeff();
  items.push_back({"Omega^2 - G positive semidefinite", min_a, -1e-10 * a.norm(),
                   min_a >= -1e-10 * a.norm()});
  const double min_w = kg.omega.diag.minCoeff();
  items.push_back({"Omega >= 0", min_w, 0.0, min_w >= 0.0});
  print_items("structural", items);
  bool ok = true;
  for (const auto& it : items) ok = ok && it.pass;
  std::printf("%s\n", ok ? "all checks pass" : "some checks FAIL");
  return ok ? 0 : kExitValidation;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Filtered triple splitting for the 1D Maxwell-plasma model"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);
  Options o;

  auto* sim = app.add_subcommand("simulate", "Integrate one step size and write the trajectory");
  sim->add_option("--config", o.config, "Problem config (JSON)")->required()->check(CLI::ExistingFile);
  sim->add_option("--tau", o.tau, "Step size")->required();
  sim->add_option("--steps", o.steps, "Number of steps")->required();
  sim->add_option("--filter", o.filter, "Filter set (maxwell1d) or family A..I (klein_gordon)");
  sim->add_option("--snapshots", o.snapshots, "Store every k-th state (0: final state only)");
  sim->add_option("--out", o.out, "Output CSV")->required();

  auto* sweep = app.add_subcommand("sweep", "Error against the exact solution over step sizes");
  sweep->add_option("--config", o.config, "Problem config (JSON)")->required()->check(CLI::ExistingFile);
  sweep->add_option("--method", o.method, "triple_split | kg_two_step");
  sweep->add_option("--filter", o.filter, "Filter set or family label");
  sweep->add_option("--T", o.t_final, "Final time");
  sweep->add_option("--tau-log", o.tau_log, "Log-uniform step sizes lo:hi:n");
  sweep->add_option("--zoom", o.zooms, "Resonance window k:lo:hi:n around 2 pi k / omega (repeatable)");
  sweep->add_option("--tau-extra", o.extra_taus, "Additional step sizes, not snapped (repeatable)");
  sweep->add_option("--jobs", o.jobs, "Worker threads (0: all cores)");
  sweep->add_option("--out", o.out, "Output CSV")->required();

  auto* ref = app.add_subcommand("reference", "Exact semi-discrete solution at time t");
  ref->add_option("--config", o.config, "Problem config (JSON)")->required()->check(CLI::ExistingFile);
  ref->add_option("--t", o.t, "Time")->required();
  ref->add_option("--out", o.out, "Output CSV")->required();

  auto* verify = app.add_subcommand("verify-filters", "Scan the filter conditions of a filter set");
  verify->add_option("--set", o.set, "none | orig | new | sinc2z");
  verify->add_option("--zmax", o.zmax, "Upper end of the scanned z range");
  verify->add_option("--out", o.out, "Output CSV")->required();

  auto* validate = app.add_subcommand("validate", "Check the structural and initial-data assumptions");
  validate->add_option("--config", o.config, "Problem config (JSON)")->required()->check(CLI::ExistingFile);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    const int code = app.exit(err);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    if (*sim) return cmd_simulate(o);
    if (*sweep) return cmd_sweep(o);
    if (*ref) return cmd_reference(o);
    if (*verify) return cmd_verify(o);
    if (*validate) return cmd_validate(o);
  } catch (const ConfigError& err) {
    std::cerr << "error: " << err.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 1;
  }
  return kExitConfig;
}
