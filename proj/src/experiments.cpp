#include "trisplit/experiments.hpp"

#include "trisplit/errors.hpp"
#include "trisplit/integrators.hpp"
#include "trisplit/reference.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <thread>

namespace trisplit {

Method parse_method(const std::string& name) {
  if (name == "triple_split") return Method::triple_split;
  if (name == "kg_two_step") return Method::kg_two_step;
  throw ConfigError("unknown method '" + name + "' (expected triple_split or kg_two_step)");
}

std::string to_string(Method m) {
  return m == Method::triple_split ? "triple_split" : "kg_two_step";
}

std::size_t SweepResult::field_index(const std::string& name) const {
  const auto it = std::find(fields.begin(), fields.end(), name);
  if (it == fields.end()) throw std::out_of_range("sweep has no field '" + name + "'");
  return static_cast<std::size_t>(it - fields.begin());
}

std::vector<double> resonance_tau_grid(double omega, const std::vector<int>& k_list,
                                       double window_lo, double window_hi, int n) {
  if (!(omega > 0.0)) throw ConfigError("resonance grid: omega must be positive");
  if (window_lo > window_hi) throw ConfigError("resonance grid: window lo exceeds hi");
  if (!(window_lo > 0.0)) throw ConfigError("resonance grid: window factors must be positive");
  if (n < 1) throw ConfigError("resonance grid: need at least one point per window");
  std::vector<double> taus;
  for (const int k : k_list) {
    if (k <= 0) throw ConfigError("resonance grid: k must be positive (k = 0 gives tau = 0)");
    const double centre = 2.0 * std::numbers::pi * k / omega;
    std::vector<double> window;
    if (window_lo == window_hi || n == 1) {
      window.push_back(window_lo == 1.0 ? centre : window_lo * centre);
    } else {
      bool has_centre = false;
      for (int i = 0; i < n; ++i) {
        const double f = window_lo + (window_hi - window_lo) * i / (n - 1);
        double tau = f * centre;
        // A sample that misses the centre only by roundoff becomes the centre.
        if (std::fabs(tau - centre) <= 1e-12 * centre) {
          tau = centre;
          has_centre = true;
        }
        window.push_back(tau);
      }
      if (!has_centre && window_lo <= 1.0 && window_hi >= 1.0) window.push_back(centre);
    }
    taus.insert(taus.end(), window.begin(), window.end());
  }
  std::sort(taus.begin(), taus.end());
  return taus;
}

std::vector<double> log_tau_grid(const LogRange& range) {
  std::vector<double> taus;
  if (range.n <= 0) return taus;
  if (!(range.lo > 0.0) || range.lo > range.hi) {
    throw ConfigError("tau-log: need 0 < lo <= hi");
  }
  if (range.n == 1) return {range.lo};
  const double a = std::log(range.lo);
  const double b = std::log(range.hi);
  for (int i = 0; i < range.n; ++i) taus.push_back(std::exp(a + (b - a) * i / (range.n - 1)));
  taus.front() = range.lo;
  taus.back() = range.hi;
  return taus;
}

SweepPoint plan_point(double tau, double t_final, bool snap) {
  if (!(tau > 0.0)) throw ConfigError("sweep: step sizes must be positive");
  if (!(t_final > 0.0)) throw ConfigError("sweep: final time must be positive");
  const auto n = std::max<std::int64_t>(1, std::llround(t_final / tau));
  SweepPoint pt;
  pt.n_steps = n;
  if (snap) {
    pt.tau = t_final / static_cast<double>(n);
    pt.t_end = t_final;
  } else {
    pt.tau = tau;
    pt.t_end = static_cast<double>(n) * tau;
  }
  return pt;
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

int resolve_jobs(int jobs, std::size_t work) {
  int j = jobs > 0 ? jobs : static_cast<int>(std::thread::hardware_concurrency());
  j = std::max(1, j);
  return static_cast<int>(std::min<std::size_t>(static_cast<std::size_t>(j), std::max<std::size_t>(work, 1)));
}

template <typename F>
void parallel_for(std::size_t count, int jobs, F&& body) {
  const int workers = resolve_jobs(jobs, count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) {
        try {
          body(i);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

double problem_frequency(const Problem& problem) {
  if (const auto* mp = std::get_if<MaxwellProblem>(&problem)) return mp->ops.omega.max_frequency();
  return std::get<KgProblem>(problem).omega.max_frequency();
}

std::vector<SweepPoint> plan_points(const Problem& problem, const SweepConfig& cfg) {
  std::vector<SweepPoint> points;
  for (const double tau : log_tau_grid(cfg.tau_log)) points.push_back(plan_point(tau, cfg.t_final, true));
  if (!cfg.zooms.empty()) {
    const double omega = problem_frequency(problem);
    for (const auto& z : cfg.zooms) {
      for (const double tau : resonance_tau_grid(omega, {z.k}, z.lo, z.hi, z.n)) {
        points.push_back(plan_point(tau, cfg.t_final, false));
      }
    }
  }
  for (const double tau : cfg.extra_taus) points.push_back(plan_point(tau, cfg.t_final, false));
  return points;
}

}  // namespace

SweepResult run_sweep(const Problem& problem, const SweepConfig& cfg, int jobs) {
  const std::vector<SweepPoint> points = plan_points(problem, cfg);
  SweepResult result;
  result.records.resize(points.size());

  if (const auto* mp = std::get_if<MaxwellProblem>(&problem)) {
    if (cfg.method != Method::triple_split) {
      throw ConfigError("method kg_two_step needs a klein_gordon problem");
    }
    const FilterSet fs = filter_set(cfg.filter);
    result.fields = {"err_p", "err_e", "err_b"};
    const SpectralOracle oracle = SpectralOracle::build(mp->ops);

    std::map<double, State> reference;
    for (const auto& pt : points) {
      if (!reference.count(pt.t_end)) {
        reference.emplace(pt.t_end, oracle.exact_state(mp->ops, mp->initial, pt.t_end));
      }
    }
    parallel_for(points.size(), jobs, [&](std::size_t i) {
      const SweepPoint& pt = points[i];
      const StepContext ctx(mp->ops, fs, pt.tau);
      const RunResult run = triple_split_run(mp->initial, pt.n_steps, ctx);
      ErrorRecord rec{pt.tau, pt.n_steps, {kInf, kInf, kInf}, run.blow_up};
      if (!run.blow_up) {
        const State& ref = reference.at(pt.t_end);
        rec.errors = {(run.final_state.p - ref.p).norm(), (run.final_state.e - ref.e).norm(),
                      (run.final_state.b - ref.b).norm()};
      }
      result.records[i] = std::move(rec);
    });
  } else {
    const auto& kg = std::get<KgProblem>(problem);
    if (cfg.method != Method::kg_two_step) {
      throw ConfigError("method triple_split needs a maxwell1d problem");
    }
    if (cfg.filter.size() != 1) {
      throw ConfigError("two-step filter must be a family label A..I, got '" + cfg.filter + "'");
    }
    const TwoStepFilterPair pair = two_step_family(cfg.filter[0]);
    result.fields = {"err_x"};
    const SpectralOracle oracle = SpectralOracle::build(kg.g, kg.omega);

    std::map<double, Vector> reference;
    for (const auto& pt : points) {
      if (!reference.count(pt.t_end)) {
        reference.emplace(pt.t_end, oracle.exact_e(kg.e0, kg.edot0, pt.t_end).first);
      }
    }
    parallel_for(points.size(), jobs, [&](std::size_t i) {
      const SweepPoint& pt = points[i];
      const KgContext ctx(kg.g, kg.omega, pair, pt.tau);
      const KgRunResult run = kg_run(kg.e0, kg.edot0, pt.n_steps, ctx);
      ErrorRecord rec{pt.tau, pt.n_steps, {kInf}, run.blow_up};
      if (!run.blow_up) rec.errors = {(run.x - reference.at(pt.t_end)).norm()};
      result.records[i] = std::move(rec);
    });
  }

  std::stable_sort(result.records.begin(), result.records.end(),
                   [](const ErrorRecord& a, const ErrorRecord& b) { return a.tau < b.tau; });
  return result;
}

double OrderEstimate::trend(double tau) const { return std::exp(intercept) * std::pow(tau, slope); }

OrderEstimate estimate_order(const std::vector<double>& taus, const std::vector<double>& errors) {
  if (taus.size() != errors.size()) throw DimensionError("estimate_order: size mismatch");
  std::vector<double> xs, ys;
  for (std::size_t i = 0; i < taus.size(); ++i) {
    if (taus[i] > 0.0 && errors[i] > 0.0 && std::isfinite(errors[i])) {
      xs.push_back(std::log(taus[i]));
      ys.push_back(std::log(errors[i]));
    }
  }
  const auto n = static_cast<int>(xs.size());
  if (n < 4) {
    throw InsufficientDataError("estimate_order: need at least 4 finite records, got " +
                                std::to_string(n));
  }
  double mx = 0.0, my = 0.0;
  for (int i = 0; i < n; ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0;
  for (int i = 0; i < n; ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  if (sxx == 0.0) throw InsufficientDataError("estimate_order: all step sizes coincide");
  OrderEstimate est;
  est.n_points = n;
  est.slope = sxy / sxx;
  est.intercept = my - est.slope * mx;
  double ssr = 0.0;
  for (int i = 0; i < n; ++i) {
    const double r = ys[i] - (est.intercept + est.slope * xs[i]);
    ssr += r * r;
  }
  est.stderr_slope = std::sqrt(ssr / (n - 2) / sxx);
  return est;
}

OrderEstimate estimate_order(const SweepResult& sweep, const std::string& field, double tau_lo,
                             double tau_hi) {
  const std::size_t idx = sweep.field_index(field);
  std::vector<double> taus, errs;
  for (const auto& r : sweep.records) {
    if (r.blow_up || r.tau < tau_lo || r.tau > tau_hi) continue;
    taus.push_back(r.tau);
    errs.push_back(r.errors.at(idx));
  }
  return estimate_order(taus, errs);
}

}  // namespace trisplit
