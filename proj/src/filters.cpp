#include "trisplit/filters.hpp"

#include "trisplit/errors.hpp"

#include <cmath>

namespace trisplit {

namespace {

constexpr long double kSeriesThreshold = 1e-4L;

long double sinc_ld(long double z) {
  if (std::fabs(z) < kSeriesThreshold) {
    const long double z2 = z * z;
    return 1.0L - z2 / 6.0L + z2 * z2 / 120.0L;
  }
  return std::sin(z) / z;
}

long double cosc_ld(long double z) {
  if (std::fabs(z) < kSeriesThreshold) {
    const long double z2 = z * z;
    return 0.5L - z2 / 24.0L + z2 * z2 / 720.0L;
  }
  // 1 - cos z = 2 sin^2(z/2) avoids cancellation for small z.
  const long double s = std::sin(0.5L * z);
  return 2.0L * s * s / (z * z);
}

long double eta_ld(long double z) {
  const long double c = std::cos(0.5L * z);
  return c * c;
}

long double one_f(long double) { return 1.0L; }
long double sinc_f(long double z) { return sinc_ld(z); }
long double sinc_sq_f(long double z) {
  const long double s = sinc_ld(z);
  return s * s;
}
long double sinc_double_f(long double z) { return sinc_ld(2.0L * z); }
long double sinc_half_f(long double z) { return sinc_ld(0.5L * z); }
long double sinc_half_sq_f(long double z) {
  const long double s = sinc_ld(0.5L * z);
  return s * s;
}
long double sinc_half_sinc_f(long double z) { return sinc_ld(0.5L * z) * sinc_ld(z); }
long double hochbruck_lubich_phi_f(long double z) {
  const long double s = std::sin(0.5L * z);
  return sinc_ld(z) * (1.0L + s * s / 3.0L);
}
long double eta_sinc_half_sq_f(long double z) { return eta_ld(z) * sinc_half_sq_f(z); }
long double eta_sinc_half_f(long double z) { return eta_ld(z) * sinc_ld(0.5L * z); }

}  // namespace

double sinc(double z) { return static_cast<double>(sinc_ld(z)); }
long double sinc(long double z) { return sinc_ld(z); }
double cosc(double z) { return static_cast<double>(cosc_ld(z)); }
long double cosc(long double z) { return cosc_ld(z); }
double eta(double z) { return static_cast<double>(eta_ld(z)); }
long double eta(long double z) { return eta_ld(z); }

bool NamedFunction::is_one() const { return eval == &one_f; }

namespace fn {
const NamedFunction one{"1", &one_f};
const NamedFunction sinc{"sinc(z)", &sinc_f};
const NamedFunction sinc_sq{"sinc(z)^2", &sinc_sq_f};
const NamedFunction sinc_double{"sinc(2z)", &sinc_double_f};
const NamedFunction sinc_half{"sinc(z/2)", &sinc_half_f};
const NamedFunction sinc_half_sq{"sinc(z/2)^2", &sinc_half_sq_f};
const NamedFunction sinc_half_sinc{"sinc(z/2)sinc(z)", &sinc_half_sinc_f};
const NamedFunction hochbruck_lubich_phi{"sinc(z)(1+sin(z/2)^2/3)", &hochbruck_lubich_phi_f};
const NamedFunction eta_sinc_half_sq{"eta(z)sinc(z/2)^2", &eta_sinc_half_sq_f};
const NamedFunction eta_sinc_half{"eta(z)sinc(z/2)", &eta_sinc_half_f};
}  // namespace fn

FilterSet filter_set(std::string_view name) {
  FilterSet fs;
  fs.name = std::string(name);
  if (name == "none") return fs;
  if (name == "orig") {
    fs.psi_e = fn::sinc;
    fs.phi_e = fn::sinc;
    return fs;
  }
  if (name == "new") {
    fs.psi_e = fn::sinc_sq;
    fs.phi_e = fn::sinc;
    return fs;
  }
  if (name == "sinc2z") {
    fs.psi_e = fn::sinc_sq;
    fs.phi_e = fn::sinc_double;
    return fs;
  }
  throw ConfigError("unknown filter set '" + std::string(name) +
                    "' (expected none, orig, new or sinc2z)");
}

std::vector<std::string> filter_set_names() { return {"none", "orig", "new", "sinc2z"}; }

TwoStepFilterPair two_step_family(char label) {
  switch (label) {
    case 'A': return {'A', fn::sinc_half_sq, fn::one};              // Gautschi
    case 'B': return {'B', fn::sinc, fn::one};                      // Deuflhard
    case 'C': return {'C', fn::sinc_half_sinc, fn::sinc};           // Garcia-Archilla et al.
    case 'D': return {'D', fn::sinc_half_sq, fn::hochbruck_lubich_phi};  // Hochbruck-Lubich
    case 'E': return {'E', fn::sinc_sq, fn::one};                   // Hairer-Lubich
    case 'F': return {'F', fn::eta_sinc_half_sq, fn::sinc_half};    // triple splitting, new
    case 'G': return {'G', fn::eta_sinc_half, fn::sinc_half};       // triple splitting, orig
    case 'H': return {'H', fn::sinc_half, fn::sinc};
    case 'I': return {'I', fn::sinc, fn::sinc_half};
    default: break;
  }
  throw ConfigError(std::string("unknown two-step family '") + label + "' (expected A..I)");
}

double chi(const FilterSet& fs, double z) {
  const long double zl = z;
  const long double s = sinc_ld(zl);
  const long double num = eta_ld(zl) * fs.psi_e(0.5L * zl);
  if (s == 0.0L) {
    if (num == 0.0L) return 0.0;
    throw PoleError("chi: pole at z = " + std::to_string(z), z);
  }
  const long double q = num / s;
  if (std::fabs(s) < 1e-3L && std::fabs(q) > 1e3L) {
    throw PoleError("chi: pole near z = " + std::to_string(z) + " for filter " + fs.name, z);
  }
  return static_cast<double>(q);
}

Vector eval_on_omega(const NamedFunction& f, double tau, const OmegaMatrix& omega) {
  Vector out(omega.size());
  for (int i = 0; i < omega.size(); ++i) out[i] = f(tau * omega.diag[i]);
  return out;
}

}  // namespace trisplit
