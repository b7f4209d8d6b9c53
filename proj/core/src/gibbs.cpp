#include "jep/gibbs.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace jep {

namespace {

void require_beta(double beta) {
  if (!(beta > 0.0)) throw std::invalid_argument("beta must be positive");
}

}  // namespace

GibbsParams GibbsParams::from_alpha(int n, double alpha, ParticleConfig base) {
  require_alpha(alpha);
  if (n < 1) throw std::invalid_argument("GibbsParams: n must be >= 1");
  return {n, alpha, std::move(base)};
}

GibbsParams GibbsParams::from_beta(int n, double beta, ParticleConfig base) {
  require_beta(beta);
  return from_alpha(n, std::exp(-beta), std::move(base));
}

double GibbsParams::beta() const { return -std::log(alpha); }

double log_partition_function(int n, double beta) {
  if (n < 1) throw std::invalid_argument("partition_function: n must be >= 1");
  require_beta(beta);
  double log_z = 0.0;
  for (int k = 1; k <= n; ++k) {
    // log(e^{beta k} - 1) = beta k + log1p(-e^{-beta k}), overflow-free.
    log_z += beta - (beta * k + std::log1p(-std::exp(-beta * k)));
  }
  return log_z;
}

double partition_function(int n, double beta) {
  return std::exp(log_partition_function(n, beta));
}

double gibbs_pmf(int n, double beta, const ParticleConfig& b) {
  if (static_cast<int>(b.size()) != n) {
    throw std::invalid_argument("gibbs_pmf: configuration size differs from n");
  }
  require_beta(beta);
  double energy = 0.0;
  for (Height x : b) energy += static_cast<double>(x);
  return std::exp(-beta * energy - log_partition_function(n, beta));
}

double gibbs_super_pmf(const ParticleConfig& a, int n, double beta,
                       const ParticleConfig& b) {
  require_beta(beta);
  if (b.size() != a.size() + static_cast<std::size_t>(n)) {
    throw std::invalid_argument("gibbs_super_pmf: |B \\ A| must equal n");
  }
  double energy = 0.0;
  std::size_t found = 0;
  for (Height x : b) {
    if (a.contains(x)) {
      ++found;
      continue;
    }
    energy += static_cast<double>(count_below(a, x));
  }
  if (found != a.size()) {
    throw std::invalid_argument("gibbs_super_pmf: B is not a superset of A");
  }
  return std::exp(-beta * energy - log_partition_function(n, beta));
}

ParticleConfig sample_gibbs(const ParticleConfig& a, int n, double alpha,
                            RandomStream& stream) {
  require_alpha(alpha);
  if (n < 1) throw std::invalid_argument("sample_gibbs: n must be >= 1");
  std::vector<Height> draws(static_cast<std::size_t>(n));
  for (Height& xi : draws) xi = stream.next_geometric(alpha);
  return noncolliding_union(a, draws);
}

EquilibriumStats equilibrium_stats(int n, double alpha) {
  require_alpha(alpha);
  if (n < 1) throw std::invalid_argument("equilibrium_stats: n must be >= 1");

  double mean_sum = 0.0;
  double ground_product = 1.0;
  for (int k = 1; k <= n; ++k) {
    double alpha_k = std::pow(alpha, k);
    mean_sum += static_cast<double>(k) / (1.0 - alpha_k);
    ground_product *= (1.0 - alpha_k) / alpha_k;
  }

  EquilibriumStats stats;
  stats.n = n;
  stats.alpha = alpha;
  stats.mean_height = mean_sum / static_cast<double>(n) - 1.0;
  stats.ground_state_prob =
      std::pow(alpha, static_cast<double>(n) * (n + 1) / 2.0) * ground_product;
  stats.zero_occupied_prob = 1.0 - std::pow(alpha, n);
  return stats;
}

double EquilibriumStats::min_tail(Height m) const {
  if (m < 0) throw std::invalid_argument("min_tail: negative height");
  return std::pow(alpha, static_cast<double>(n) * static_cast<double>(m));
}

}  // namespace jep
