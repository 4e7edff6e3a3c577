#include "trisplit/integrators.hpp"

#include "trisplit/errors.hpp"

#include <cmath>
#include <sstream>

namespace trisplit {

namespace {

void check_size(const Vector& v, int n, const char* what) {
  if (v.size() != n) {
    std::ostringstream msg;
    msg << what << ": expected length " << n << ", got " << v.size();
    throw DimensionError(msg.str());
  }
}

// Interval between blow-up checks in the run loops.
constexpr long kCheckEvery = 16;

}  // namespace

StepContext::StepContext(const DiscreteOperators& ops, const FilterSet& fs, double tau)
    : ops_(&ops), fs_(fs), tau_(tau) {
  if (!std::isfinite(tau) || tau == 0.0) throw ConfigError("step size must be finite and nonzero");
  const int n = ops.size();
  check_size(ops.omega.diag, n, "StepContext Omega");
  cos_.resize(n);
  omega_sin_.resize(n);
  tau_sinc_.resize(n);
  for (int i = 0; i < n; ++i) {
    const double w = ops.omega.diag[i];
    const double z = tau * w;
    cos_[i] = std::cos(z);
    omega_sin_[i] = w * std::sin(z);
    tau_sinc_[i] = tau * sinc(z);
  }
  const double half = 0.5 * tau;
  psi_e_ = eval_on_omega(fs.psi_e, half, ops.omega);
  phi_e_ = eval_on_omega(fs.phi_e, half, ops.omega);
  psi_b_ = eval_on_omega(fs.psi_b, half, ops.omega);
  phi_b_ = eval_on_omega(fs.phi_b, half, ops.omega);
}

std::pair<Vector, Vector> oscillation_block(const Vector& p, const Vector& e,
                                            const StepContext& ctx) {
  check_size(p, ctx.size(), "oscillation_block p");
  check_size(e, ctx.size(), "oscillation_block e");
  Vector p_new = ctx.cos_tau().cwiseProduct(p) + ctx.tau_sinc_tau().cwiseProduct(e);
  Vector e_new = ctx.cos_tau().cwiseProduct(e) - ctx.omega_sin_tau().cwiseProduct(p);
  return {std::move(p_new), std::move(e_new)};
}

void triple_split_step_inplace(State& s, const StepContext& ctx) {
  const int n = ctx.size();
  check_size(s.p, n, "triple_split_step p");
  check_size(s.e, n, "triple_split_step e");
  check_size(s.b, n, "triple_split_step b");
  const auto& ops = ctx.ops();
  const double half = 0.5 * ctx.tau();

  // b_{n+1/2} = b_n - tau/2 psi_B C_E phi_E e_n
  Vector curl_e = ops.c_e * ctx.phi_e().cwiseProduct(s.e);
  s.b -= half * ctx.psi_b().cwiseProduct(curl_e);

  // kick = tau/2 psi_E C_B phi_B b_{n+1/2}, applied before and after the rotation
  const Vector curl_b = ops.c_b * ctx.phi_b().cwiseProduct(s.b);
  const Vector kick = half * ctx.psi_e().cwiseProduct(curl_b);
  const Vector e_plus = s.e + kick;

  const Vector p_old = s.p;
  s.p = ctx.cos_tau().cwiseProduct(p_old) + ctx.tau_sinc_tau().cwiseProduct(e_plus);
  s.e = ctx.cos_tau().cwiseProduct(e_plus) - ctx.omega_sin_tau().cwiseProduct(p_old);
  s.e += kick;

  // b_{n+1} = b_{n+1/2} - tau/2 psi_B C_E phi_E e_{n+1}
  curl_e = ops.c_e * ctx.phi_e().cwiseProduct(s.e);
  s.b -= half * ctx.psi_b().cwiseProduct(curl_e);
  s.t += ctx.tau();
}

State triple_split_step(State state, const StepContext& ctx) {
  triple_split_step_inplace(state, ctx);
  return state;
}

RunResult triple_split_run(const State& state0, long n_steps, const StepContext& ctx,
                           long stride) {
  if (n_steps < 0) throw ConfigError("triple_split_run: n_steps must be >= 0");
  RunResult out;
  State s = state0;
  if (stride > 0) out.snapshots.push_back(s);
  for (long k = 1; k <= n_steps; ++k) {
    triple_split_step_inplace(s, ctx);
    out.steps_done = k;
    if (k % kCheckEvery == 0 || k == n_steps) {
      const double norm = s.max_norm();
      if (!std::isfinite(norm) || norm > kBlowUpThreshold) {
        std::ostringstream msg;
        msg << "state norm " << norm << " exceeded " << kBlowUpThreshold << " after " << k
            << " steps (t = " << s.t << ", tau = " << ctx.tau() << ")";
        out.blow_up = true;
        out.diagnostic = msg.str();
        break;
      }
    }
    if (stride > 0 && k % stride == 0 && k != n_steps) out.snapshots.push_back(s);
  }
  if (stride > 0 && !out.blow_up && n_steps > 0) out.snapshots.push_back(s);
  out.final_state = std::move(s);
  return out;
}

Vector perturbed_initial_velocity(const Vector& p0, const Vector& b0, const StepContext& ctx) {
  const int n = ctx.size();
  check_size(p0, n, "perturbed_initial_velocity p0");
  check_size(b0, n, "perturbed_initial_velocity b0");
  const auto& om = ctx.ops().omega.diag;
  Vector chi_diag(n);
  for (int i = 0; i < n; ++i) chi_diag[i] = chi(ctx.filters(), ctx.tau() * om[i]);
  const Vector curl_b = ctx.ops().c_b * b0;
  return chi_diag.cwiseProduct(curl_b) - om.cwiseAbs2().cwiseProduct(p0);
}

namespace {

// (cos(tau Omega) + I) psi_E(tau/2 Omega) G phi_E(tau/2 Omega) e
Vector filtered_force(const Vector& e, const StepContext& ctx) {
  const Vector ge = ctx.ops().g * ctx.phi_e().cwiseProduct(e);
  return (ctx.cos_tau().array() + 1.0).matrix().cwiseProduct(ctx.psi_e()).cwiseProduct(ge);
}

}  // namespace

Vector two_step_first(const Vector& e0, const Vector& edot0, const StepContext& ctx) {
  check_size(e0, ctx.size(), "two_step_first e0");
  check_size(edot0, ctx.size(), "two_step_first edot0");
  const double tau = ctx.tau();
  return ctx.cos_tau().cwiseProduct(e0) + ctx.tau_sinc_tau().cwiseProduct(edot0) +
         (0.25 * tau * tau) * filtered_force(e0, ctx);
}

Vector two_step_step(const TwoStepState& ts, const StepContext& ctx) {
  if (!ctx.filters().b_filters_trivial()) {
    throw ConfigError("two-step form requires psi_B = phi_B = 1");
  }
  check_size(ts.e_prev, ctx.size(), "two_step_step e_prev");
  check_size(ts.e_curr, ctx.size(), "two_step_step e_curr");
  const double tau = ctx.tau();
  return 2.0 * ctx.cos_tau().cwiseProduct(ts.e_curr) - ts.e_prev +
         (0.5 * tau * tau) * filtered_force(ts.e_curr, ctx);
}

// ---------------------------------------------------------------------------

KgContext::KgContext(const SparseMatrix& g, const OmegaMatrix& omega,
                     const TwoStepFilterPair& pair, double tau)
    : g_(&g), pair_(pair), tau_(tau) {
  if (!std::isfinite(tau) || tau == 0.0) throw ConfigError("step size must be finite and nonzero");
  const int n = omega.size();
  if (g.rows() != n || g.cols() != n) throw DimensionError("KgContext: G and Omega sizes differ");
  cos_.resize(n);
  tau_sinc_.resize(n);
  for (int i = 0; i < n; ++i) {
    const double z = tau * omega.diag[i];
    cos_[i] = std::cos(z);
    tau_sinc_[i] = tau * sinc(z);
  }
  psi_ = eval_on_omega(pair.psi, tau, omega);
  phi_ = eval_on_omega(pair.phi, tau, omega);
}

Vector kg_two_step(const Vector& x_prev, const Vector& x_curr, const KgContext& ctx) {
  const int n = static_cast<int>(ctx.cos_tau().size());
  check_size(x_prev, n, "kg_two_step x_prev");
  check_size(x_curr, n, "kg_two_step x_curr");
  const double tau = ctx.tau();
  const Vector force = ctx.psi().cwiseProduct(ctx.g() * ctx.phi().cwiseProduct(x_curr));
  return 2.0 * ctx.cos_tau().cwiseProduct(x_curr) - x_prev + (tau * tau) * force;
}

Vector kg_two_step_first(const Vector& x0, const Vector& xdot0, const KgContext& ctx) {
  const int n = static_cast<int>(ctx.cos_tau().size());
  check_size(x0, n, "kg_two_step_first x0");
  check_size(xdot0, n, "kg_two_step_first xdot0");
  const double tau = ctx.tau();
  const Vector force = ctx.psi().cwiseProduct(ctx.g() * ctx.phi().cwiseProduct(x0));
  return ctx.cos_tau().cwiseProduct(x0) + ctx.tau_sinc_tau().cwiseProduct(xdot0) +
         (0.5 * tau * tau) * force;
}

KgRunResult kg_run(const Vector& x0, const Vector& xdot0, long n_steps, const KgContext& ctx,
                   long stride) {
  if (n_steps < 0) throw ConfigError("kg_run: n_steps must be >= 0");
  KgRunResult out;
  if (stride > 0) out.snapshots.push_back(x0);
  if (n_steps == 0) {
    out.x = x0;
    return out;
  }
  Vector prev = x0;
  Vector curr = kg_two_step_first(x0, xdot0, ctx);
  out.steps_done = 1;
  for (long k = 1; k <= n_steps; ++k) {
    if (k > 1) {
      Vector next = kg_two_step(prev, curr, ctx);
      prev = std::move(curr);
      curr = std::move(next);
      out.steps_done = k;
    }
    if (k % kCheckEvery == 0 || k == n_steps) {
      const double norm = curr.norm();
      if (!std::isfinite(norm) || norm > kBlowUpThreshold) {
        std::ostringstream msg;
        msg << "solution norm " << norm << " exceeded " << kBlowUpThreshold << " after " << k
            << " steps (tau = " << ctx.tau() << ")";
        out.blow_up = true;
        out.diagnostic = msg.str();
        break;
      }
    }
    if (stride > 0 && k % stride == 0 && k != n_steps) out.snapshots.push_back(curr);
  }
  if (stride > 0 && !out.blow_up) out.snapshots.push_back(curr);
  out.x = std::move(curr);
  return out;
}

}  // namespace trisplit
