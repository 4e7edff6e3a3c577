#pragma once

#include "trisplit/model_ops.hpp"

#include <random>

namespace testutil {

inline trisplit::Vector random_vector(int n, std::mt19937& rng, double scale = 1.0) {
  std::uniform_real_distribution<double> dist(-scale, scale);
  trisplit::Vector v(n);
  for (int i = 0; i < n; ++i) v[i] = dist(rng);
  return v;
}

inline double rel_diff(const trisplit::Vector& a, const trisplit::Vector& b) {
  return (a - b).norm() / std::max(1e-300, std::max(a.norm(), b.norm()));
}

inline trisplit::State random_state(int n, std::mt19937& rng) {
  trisplit::State s;
  s.p = random_vector(n, rng);
  s.e = random_vector(n, rng);
  s.b = random_vector(n, rng);
  return s;
}

}  // namespace testutil
