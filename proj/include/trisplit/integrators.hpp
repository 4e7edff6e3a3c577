#pragma once

// Filtered triple splitting for p' = e, e' = C_B b - Omega^2 p, b' = -C_E e,
// its two-step form for e alone, and the filtered two-step method for
// e'' = G e - Omega^2 e.

#include "trisplit/filters.hpp"
#include "trisplit/model_ops.hpp"

#include <string>
#include <utility>
#include <vector>

namespace trisplit {

/// Matrix functions of tau * Omega needed by one step size, evaluated once.
/// Holds a reference to the operators; they must outlive the context.
class StepContext {
 public:
  StepContext(const DiscreteOperators& ops, const FilterSet& fs, double tau);

  double tau() const { return tau_; }
  const DiscreteOperators& ops() const { return *ops_; }
  const FilterSet& filters() const { return fs_; }
  int size() const { return ops_->size(); }

  const Vector& cos_tau() const { return cos_; }         // cos(tau Omega)
  const Vector& omega_sin_tau() const { return omega_sin_; }  // Omega sin(tau Omega)
  const Vector& tau_sinc_tau() const { return tau_sinc_; }    // tau sinc(tau Omega)
  const Vector& psi_e() const { return psi_e_; }          // psi_E(tau/2 Omega)
  const Vector& phi_e() const { return phi_e_; }
  const Vector& psi_b() const { return psi_b_; }
  const Vector& phi_b() const { return phi_b_; }

 private:
  const DiscreteOperators* ops_;
  FilterSet fs_;
  double tau_;
  Vector cos_, omega_sin_, tau_sinc_;
  Vector psi_e_, phi_e_, psi_b_, phi_b_;
};

/// Exact flow of p' = e, e' = -Omega^2 p over one step.
std::pair<Vector, Vector> oscillation_block(const Vector& p, const Vector& e,
                                            const StepContext& ctx);

/// One step of the five-stage scheme: b half step, e kick, oscillation,
/// e kick, b half step. Advances state.t by tau.
void triple_split_step_inplace(State& state, const StepContext& ctx);
State triple_split_step(State state, const StepContext& ctx);

struct RunResult {
  State final_state;
  std::vector<State> snapshots;
  long steps_done = 0;
  bool blow_up = false;
  std::string diagnostic;
};

/// Norm above which a run is aborted as unstable.
inline constexpr double kBlowUpThreshold = 1e12;

/// Runs n_steps triple splitting steps. With stride > 0 the initial state and
/// every stride-th state are stored (the final state always is).
RunResult triple_split_run(const State& state0, long n_steps, const StepContext& ctx,
                           long stride = 0);

/// e0' = chi(tau Omega) C_B b0 - Omega^2 p0.
Vector perturbed_initial_velocity(const Vector& p0, const Vector& b0, const StepContext& ctx);

/// e1 = cos(tau Omega) e0 + tau sinc(tau Omega) edot0
///      + tau^2/4 (cos(tau Omega) + I) psi_E G phi_E e0.
Vector two_step_first(const Vector& e0, const Vector& edot0, const StepContext& ctx);

struct TwoStepState {
  Vector e_prev;
  Vector e_curr;
  long n = 1;
};

/// e_{n+1} = 2 cos(tau Omega) e_n - e_{n-1} + tau^2/2 (cos(tau Omega) + I) psi_E G phi_E e_n.
/// Requires psi_B = phi_B = 1 (throws ConfigError otherwise).
Vector two_step_step(const TwoStepState& ts, const StepContext& ctx);

// ---------------------------------------------------------------------------
// Klein-Gordon two-step method

class KgContext {
 public:
  KgContext(const SparseMatrix& g, const OmegaMatrix& omega, const TwoStepFilterPair& pair,
            double tau);

  double tau() const { return tau_; }
  const SparseMatrix& g() const { return *g_; }
  const TwoStepFilterPair& pair() const { return pair_; }
  const Vector& cos_tau() const { return cos_; }
  const Vector& tau_sinc_tau() const { return tau_sinc_; }
  const Vector& psi() const { return psi_; }
  const Vector& phi() const { return phi_; }

 private:
  const SparseMatrix* g_;
  TwoStepFilterPair pair_;
  double tau_;
  Vector cos_, tau_sinc_, psi_, phi_;
};

/// x_{n+1} = 2 cos(tau Omega) x_n - x_{n-1} + tau^2 psi(tau Omega) G phi(tau Omega) x_n.
Vector kg_two_step(const Vector& x_prev, const Vector& x_curr, const KgContext& ctx);

/// x1 = cos(tau Omega) x0 + tau sinc(tau Omega) xdot0 + tau^2/2 psi G phi x0.
Vector kg_two_step_first(const Vector& x0, const Vector& xdot0, const KgContext& ctx);

struct KgRunResult {
  Vector x;
  std::vector<Vector> snapshots;
  long steps_done = 0;
  bool blow_up = false;
  std::string diagnostic;
};

KgRunResult kg_run(const Vector& x0, const Vector& xdot0, long n_steps, const KgContext& ctx,
                   long stride = 0);

}  // namespace trisplit
