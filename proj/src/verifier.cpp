#include "trisplit/filters.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace trisplit {

namespace {

using ld = long double;

// Every quantity the conditions need at one argument z.
struct Sample {
  ld z;
  ld s;         // sinc z
  ld sh;        // sinc(z/2)
  ld psi_half;  // psi_E(z/2)
  ld phi_half;  // phi_E(z/2)
  ld psi_full;  // psi_E(z)
  ld eta;       // (cos z + 1)/2
  ld cos_z;
  ld sin_z;
  ld sin_half;
};

Sample sample(const FilterSet& fs, ld z) {
  Sample x;
  x.z = z;
  x.s = sinc(z);
  x.sh = sinc(0.5L * z);
  x.psi_half = fs.psi_e(0.5L * z);
  x.phi_half = fs.phi_e(0.5L * z);
  x.psi_full = fs.psi_e(z);
  x.eta = eta(z);
  x.cos_z = std::cos(z);
  x.sin_z = std::sin(z);
  x.sin_half = std::sin(0.5L * z);
  return x;
}

ld quotient(ld num, ld den) {
  num = std::fabs(num);
  den = std::fabs(den);
  if (den == 0.0L) return num == 0.0L ? 0.0L : std::numeric_limits<ld>::infinity();
  return num / den;
}

struct Condition {
  const char* id;
  ld (*eval)(const Sample&);
};

// |lhs| / envelope for each condition; the envelope is the right-hand side
// without its constant.
const Condition kConditions[] = {
    {"13a", [](const Sample& x) { return quotient(2 * x.eta * x.psi_half, x.sh * x.sh); }},
    {"13b", [](const Sample& x) { return quotient(x.phi_half, x.sh); }},
    {"13c", [](const Sample& x) { return quotient(2 * x.eta * x.psi_half * x.phi_half, x.s); }},
    {"13d", [](const Sample& x) { return quotient(2 * x.eta * x.psi_half, x.s); }},
    {"13e", [](const Sample& x) { return quotient(x.s - x.eta * x.psi_half, x.z * x.z * x.s); }},
    {"13f", [](const Sample& x) { return quotient(x.s - x.phi_half, x.z * x.sin_half); }},
    {"13g", [](const Sample& x) { return std::fabs(x.psi_full); }},
    {"13h", [](const Sample& x) { return quotient(x.sh * x.sh - x.s * x.phi_half, x.sin_half * x.sin_half); }},
    {"13a_weak", [](const Sample& x) { return quotient(2 * x.eta * x.psi_half, x.sh); }},
    {"33a", [](const Sample& x) { return quotient(1 - x.phi_half, x.z); }},
    {"33b", [](const Sample& x) { return quotient(x.sh * x.sh - x.eta * x.psi_half, x.sin_half); }},
    {"33c", [](const Sample& x) { return quotient(x.s - x.phi_half, x.z * x.sin_half); }},
    {"33d", [](const Sample& x) { return quotient(x.s * x.s - x.eta * x.psi_half, x.sin_z * x.sin_half); }},
    {"33e", [](const Sample& x) {
       return quotient(x.s * x.s - x.eta * x.psi_half * x.cos_z, x.sin_z * x.sin_half);
     }},
};

constexpr std::size_t kConditionCount = std::size(kConditions);

struct Running {
  ld sup = 0.0L;
  ld argmax = 0.0L;
};

void accumulate(const FilterSet& fs, ld z, std::array<Running, kConditionCount>& acc) {
  const Sample x = sample(fs, z);
  for (std::size_t c = 0; c < kConditionCount; ++c) {
    const ld q = kConditions[c].eval(x);
    if (q > acc[c].sup || std::isnan(q)) {
      acc[c].sup = std::isnan(q) ? std::numeric_limits<ld>::infinity() : q;
      acc[c].argmax = z;
    }
  }
}

}  // namespace

const std::vector<std::string>& condition_ids() {
  static const std::vector<std::string> ids = [] {
    std::vector<std::string> v;
    for (const auto& c : kConditions) v.emplace_back(c.id);
    return v;
  }();
  return ids;
}

const ConditionResult& ConditionReport::at(std::string_view id) const {
  for (const auto& c : conditions) {
    if (c.id == id) return c;
  }
  throw std::out_of_range("no condition '" + std::string(id) + "' in report");
}

bool ConditionReport::all_finite() const {
  return std::none_of(conditions.begin(), conditions.end(),
                      [](const ConditionResult& c) { return c.divergent; });
}

double condition_quotient(const FilterSet& fs, std::string_view id, double z) {
  for (const auto& c : kConditions) {
    if (id == c.id) return static_cast<double>(c.eval(sample(fs, z)));
  }
  throw std::out_of_range("unknown condition '" + std::string(id) + "'");
}

ConditionReport verify_conditions(const FilterSet& fs, const ScanOptions& opts) {
  std::array<Running, kConditionCount> acc{};
  const ld z_max = opts.z_max;
  const ld spacing = z_max / opts.base_points;

  for (int i = 1; i <= opts.base_points; ++i) {
    const ld z = i * spacing;
    if (z < opts.z_floor) continue;
    accumulate(fs, z, acc);
  }

  // Every envelope vanishes only at z = 0 or at multiples of pi; refine there.
  const ld pi = std::numbers::pi_v<ld>;
  for (int k = 1; k * pi <= z_max; ++k) {
    const ld z0 = k * pi;
    ld half_width = spacing;
    for (int round = 0; round < opts.refine_rounds; ++round) {
      const ld step = half_width / opts.refine_factor;
      for (int m = -opts.refine_factor; m < opts.refine_factor; ++m) {
        const ld z = z0 + (m + 0.5L) * step;
        if (z >= opts.z_floor && z <= z_max) accumulate(fs, z, acc);
      }
      half_width = step;
    }
  }

  ConditionReport report;
  report.filter_name = fs.name;
  for (std::size_t c = 0; c < kConditionCount; ++c) {
    ConditionResult r;
    r.id = kConditions[c].id;
    r.sup = static_cast<double>(acc[c].sup);
    r.argmax = static_cast<double>(acc[c].argmax);
    r.divergent = !(acc[c].sup <= opts.cap);
    report.conditions.push_back(std::move(r));
  }
  return report;
}

}  // namespace trisplit
