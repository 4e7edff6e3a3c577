#pragma once

// Scalar filter functions, the triple-splitting filter sets, the two-step
// filter families and the numerical checker for the filter conditions.

#include "trisplit/model_ops.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace trisplit {

/// sin(z)/z, Taylor branch for |z| < 1e-4.
double sinc(double z);
long double sinc(long double z);

/// (1 - cos z)/z^2, Taylor branch for |z| < 1e-4.
double cosc(double z);
long double cosc(long double z);

/// eta(z) = (1 + cos z)/2, evaluated as cos^2(z/2).
double eta(double z);
long double eta(long double z);

/// An even analytic scalar function with a display name. The catalog
/// functions are evaluated in extended precision; the double overload rounds.
struct NamedFunction {
  std::string_view name;
  long double (*eval)(long double) = nullptr;

  double operator()(double z) const { return static_cast<double>(eval(z)); }
  long double operator()(long double z) const { return eval(z); }
  bool is_one() const;
};

namespace fn {
extern const NamedFunction one;
extern const NamedFunction sinc;           // sinc(z)
extern const NamedFunction sinc_sq;        // sinc(z)^2
extern const NamedFunction sinc_double;    // sinc(2z)
extern const NamedFunction sinc_half;      // sinc(z/2)
extern const NamedFunction sinc_half_sq;   // sinc(z/2)^2
extern const NamedFunction sinc_half_sinc; // sinc(z/2) sinc(z)
extern const NamedFunction hochbruck_lubich_phi;  // sinc(z) (1 + sin^2(z/2)/3)
extern const NamedFunction eta_sinc_half_sq;      // eta(z) sinc(z/2)^2
extern const NamedFunction eta_sinc_half;         // eta(z) sinc(z/2)
}  // namespace fn

/// Filters (psi_E, phi_E, psi_B, phi_B) of the triple splitting.
struct FilterSet {
  std::string name = "custom";
  NamedFunction psi_e = fn::one;
  NamedFunction phi_e = fn::one;
  NamedFunction psi_b = fn::one;
  NamedFunction phi_b = fn::one;

  bool b_filters_trivial() const { return psi_b.is_one() && phi_b.is_one(); }
};

/// none | orig | new | sinc2z. Throws ConfigError for other names.
FilterSet filter_set(std::string_view name);
std::vector<std::string> filter_set_names();

/// Filter pair (psi, phi) of the two-step method
///   x_{n+1} - 2 cos(tau Omega) x_n + x_{n-1} = tau^2 psi(tau Omega) G phi(tau Omega) x_n.
struct TwoStepFilterPair {
  char label = 'A';
  NamedFunction psi = fn::one;
  NamedFunction phi = fn::one;
};

/// Families A..I. Throws ConfigError for an unknown label.
TwoStepFilterPair two_step_family(char label);

/// chi(z) = (cos z + 1) psi_E(z/2) / (2 sinc z). Throws PoleError when
/// |sinc z| < 1e-3 and the quotient exceeds 1e3 in magnitude.
double chi(const FilterSet& fs, double z);

/// Diagonal of f(tau * Omega).
Vector eval_on_omega(const NamedFunction& f, double tau, const OmegaMatrix& omega);

// ---------------------------------------------------------------------------
// Filter conditions

struct ConditionResult {
  std::string id;
  double sup = 0.0;
  double argmax = 0.0;
  bool divergent = false;
};

struct ConditionReport {
  std::string filter_name;
  std::vector<ConditionResult> conditions;

  /// Throws std::out_of_range for an unknown id.
  const ConditionResult& at(std::string_view id) const;
  bool all_finite() const;
};

struct ScanOptions {
  double z_max = 16.0 * 3.14159265358979323846;
  int base_points = 200000;
  /// Suprema above this after refinement are reported as divergent.
  double cap = 1e6;
  /// Refinement factor per round near denominator zeros.
  int refine_factor = 100;
  int refine_rounds = 2;
  /// Arguments below this are not sampled; quotients are continuous there.
  double z_floor = 1e-4;
};

/// Identifiers in report order: 13a..13h, 13a_weak, 33a..33e.
const std::vector<std::string>& condition_ids();

/// Scans |lhs|/|envelope| of every condition over (0, z_max] with local
/// refinement around the envelope zeros.
ConditionReport verify_conditions(const FilterSet& fs, const ScanOptions& opts = {});

/// Quotient of one condition at a single argument (spot checks at z = tau omega).
double condition_quotient(const FilterSet& fs, std::string_view id, double z);

}  // namespace trisplit
