#ifndef JEP_TESTS_ORACLES_HPP
#define JEP_TESTS_ORACLES_HPP

// Test-only reference implementations, kept deliberately literal so they
// stay independent of the library's optimized code paths.

#include <cmath>
#include <cstdint>
#include <map>
#include <vector>

#include "jep/particle_config.hpp"

namespace jep::oracle {

// theta_A(x) straight from the definition: min{ n >= 0 : |[0,n] \ A| >= x+1 }.
inline Height avoiding_shift_literal(const ParticleConfig& a, Height x) {
  for (Height n = 0;; ++n) {
    Height free_count = 0;
    for (Height s = 0; s <= n; ++s) {
      if (!a.contains(s)) ++free_count;
    }
    if (free_count >= x + 1) return n;
  }
}

// h_A(x) by direct enumeration of [0, x-1] \ A.
inline Height count_below_literal(const ParticleConfig& a, Height x) {
  Height free_count = 0;
  for (Height s = 0; s < x; ++s) {
    if (!a.contains(s)) ++free_count;
  }
  return free_count;
}

// All outcome tuples (xi_1..xi_n) with xi_i <= cutoff pushed through the
// noncolliding union; weight of a tuple is prod (1-alpha) alpha^{xi_i}.
// Covered mass is (1 - alpha^{cutoff+1})^n, so any law comparison holds
// within n * alpha^{cutoff+1}.
inline std::map<ParticleConfig, double> enumerate_union_law(
    const ParticleConfig& base, int n, double alpha, Height cutoff) {
  std::map<ParticleConfig, double> law;
  std::vector<Height> tuple(static_cast<std::size_t>(n), 0);
  while (true) {
    double weight = 1.0;
    for (Height xi : tuple) weight *= (1.0 - alpha) * std::pow(alpha, static_cast<double>(xi));
    law[noncolliding_union(base, tuple)] += weight;

    // odometer increment
    std::size_t pos = 0;
    while (pos < tuple.size() && tuple[pos] == cutoff) {
      tuple[pos] = 0;
      ++pos;
    }
    if (pos == tuple.size()) break;
    ++tuple[pos];
  }
  return law;
}

// TV between two (possibly sub-probability) maps over the union of keys.
inline double tv_maps(const std::map<ParticleConfig, double>& a,
                      const std::map<ParticleConfig, double>& b) {
  double sum = 0.0;
  for (const auto& [key, value] : a) {
    auto it = b.find(key);
    sum += std::abs(value - (it == b.end() ? 0.0 : it->second));
  }
  for (const auto& [key, value] : b) {
    if (a.find(key) == a.end()) sum += value;
  }
  return 0.5 * sum;
}

}  // namespace jep::oracle

#endif
