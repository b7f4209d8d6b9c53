#ifndef JEP_EXACT_HPP
#define JEP_EXACT_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "jep/jump_family.hpp"
#include "jep/particle_config.hpp"

namespace jep {

/// Dense probability vector over an enumerated state space.
using DistVector = std::vector<double>;

/// All n-element subsets of [0, h_max-1], enumerated in colexicographic
/// order. Lookup uses the combinatorial number system:
/// rank(a_1 < ... < a_n) = sum_k C(a_k, k).
class TruncatedStateSpace {
 public:
  static TruncatedStateSpace enumerate(int particle_count, Height h_max);

  int particle_count() const { return n_; }
  Height height_bound() const { return h_max_; }
  std::size_t size() const { return states_.size(); }
  const ParticleConfig& state(std::size_t index) const { return states_[index]; }
  const std::vector<ParticleConfig>& states() const { return states_; }

  bool contains(const ParticleConfig& config) const;
  std::size_t index_of(const ParticleConfig& config) const;  // throws if absent

 private:
  TruncatedStateSpace() = default;

  std::uint64_t colex_rank(const ParticleConfig& config) const;

  int n_ = 0;
  Height h_max_ = 0;
  std::vector<ParticleConfig> states_;
  std::vector<std::vector<std::uint64_t>> binomial_;  // binomial_[a][k] = C(a, k)
};

struct MatrixEntry {
  std::uint32_t col;
  double value;
};

/// Sparse row-major kernel over a TruncatedStateSpace. For a transition
/// matrix, value is a probability and escaped(i) the mass leaking past the
/// truncation; every in-range row sums to 1 - escaped within 1e-12.
class StochasticMatrix {
 public:
  StochasticMatrix(std::size_t size);

  std::size_t size() const { return rows_.size(); }
  std::span<const MatrixEntry> row(std::size_t i) const { return rows_[i]; }
  double escaped(std::size_t i) const { return escaped_[i]; }
  double max_escaped() const;

  void set_row(std::size_t i, std::vector<MatrixEntry> entries, double escaped_mass);

 private:
  std::vector<std::vector<MatrixEntry>> rows_;
  std::vector<double> escaped_;
};

// Builds the JEP transition matrix restricted to the space. Drift rows carry
// a single unit entry; jump rows carry nu_{A*-1}(y) at (A*-1) u {y} for each
// in-range free y, with the remaining mass tallied as escaped. Throws
// TruncationError if any row escapes more than max_escaped.
StochasticMatrix build_matrix(const JumpFamily& family, const TruncatedStateSpace& space,
                              double max_escaped = 1.0);

// Stationary distribution of the truncated chain: dense linear solve of the
// balance equations with a normalization row up to dense_limit states,
// power iteration beyond. Requires every escaped mass <= tol; guarantees
// ||pi P - pi||_1 <= tol on return.
DistVector stationary_distribution(const StochasticMatrix& matrix, double tol,
                                   std::size_t dense_limit = 20000);

// ||pi P - pi||_1 including mass lost through escapes.
double balance_residual(std::span<const double> pi, const StochasticMatrix& matrix);

// Law of X_t started from the point mass at a, under the truncated kernel.
// Requires t * max_escaped <= escape_tol.
DistVector distribution_at_time(const ParticleConfig& a, const TruncatedStateSpace& space,
                                const StochasticMatrix& matrix, std::int64_t t,
                                double escape_tol = 1e-9);

// Total variation distance (1/2) sum |p - q|. Same length required.
double tv_distance(std::span<const double> p, std::span<const double> q);

// One-particle renewal equilibrium for an interevent pmf given on
// {0..L-1}: pi(x) = nu[x, inf) / (1 + mean(nu)). The interevent pmf must sum
// to 1 within 1e-9 (pass a long enough truncation of an infinite law).
std::vector<double> renewal_equilibrium(std::span<const double> interevent_pmf);

// Foster-Lyapunov drift PV(A) - V(A) with V = max. Exactly -1 when 0 is
// unoccupied; otherwise a summation over nu_{A*-1} (NumericalError if the
// first moment does not converge within the summation budget).
double drift_statistic(const JumpFamily& family, const ParticleConfig& a);

namespace detail {

// Solves x^T G = 0, sum x = 1 for a dense-representable generator G given by
// sparse rows (diagonal included). Shared by the DTMC and CTMC paths.
std::vector<double> solve_balance_dense(std::size_t size,
                                        const std::vector<std::vector<MatrixEntry>>& rows);

}  // namespace detail

}  // namespace jep

#endif
