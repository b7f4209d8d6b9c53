#ifndef JEP_GIBBS_HPP
#define JEP_GIBBS_HPP

#include "jep/particle_config.hpp"
#include "jep/rng.hpp"

namespace jep {

/// The memoryless-JEP equilibrium parameters. alpha is canonical; beta is
/// the inverse temperature -log(alpha) and appears only in reporting.
struct GibbsParams {
  int n = 1;
  double alpha = 0.5;
  ParticleConfig base;  // A-neglecting measures; empty for the plain Gibbs law

  static GibbsParams from_alpha(int n, double alpha, ParticleConfig base = {});
  static GibbsParams from_beta(int n, double beta, ParticleConfig base = {});

  double beta() const;
};

// Z_{n,beta} = prod_{k=1..n} e^beta / (e^{beta k} - 1).
double partition_function(int n, double beta);
double log_partition_function(int n, double beta);

// mu_beta(B) = Z^{-1} e^{-beta H(B)}, H(B) = sum of heights. |B| must be n.
// Evaluated in log space to survive large n * height products.
double gibbs_pmf(int n, double beta, const ParticleConfig& b);

// A-neglecting Gibbs measure: Z^{-1} e^{-beta H_A(B)} with
// H_A(B) = sum_{x in B \ A} h_A(x). Requires B superset of A, |B \ A| = n.
double gibbs_super_pmf(const ParticleConfig& a, int n, double beta,
                       const ParticleConfig& b);

// Exact equilibrium sampler: U(A, xi_1..xi_n) with fresh geometric draws.
// Marginal law is gibbs_super_pmf (gibbs_pmf for empty A).
ParticleConfig sample_gibbs(const ParticleConfig& a, int n, double alpha,
                            RandomStream& stream);

/// Closed-form equilibrium statistics of the memoryless JEP.
struct EquilibriumStats {
  int n;
  double alpha;
  double mean_height;        // E H(G_n)/n
  double ground_state_prob;  // P(G_n = [0, n-1])
  double zero_occupied_prob; // P(0 in G_n) = long-run jump rate

  // P(min G_n >= m) = alpha^{n m}: the minimum is geometric(alpha^n).
  double min_tail(Height m) const;
};

EquilibriumStats equilibrium_stats(int n, double alpha);

}  // namespace jep

#endif
