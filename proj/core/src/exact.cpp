#include "jep/exact.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "jep/errors.hpp"

namespace jep {

namespace {

constexpr std::size_t kMaxStates = 50'000'000;

}  // namespace

// ---- TruncatedStateSpace -----------------------------------------------------

TruncatedStateSpace TruncatedStateSpace::enumerate(int particle_count, Height h_max) {
  if (particle_count < 1) {
    throw std::invalid_argument("enumerate_states: particle count must be >= 1");
  }
  if (h_max < particle_count) {
    throw std::invalid_argument("enumerate_states: h_max must be >= particle count");
  }

  TruncatedStateSpace space;
  space.n_ = particle_count;
  space.h_max_ = h_max;

  // Pascal table up to C(h_max, n); also the state count bound.
  space.binomial_.assign(static_cast<std::size_t>(h_max) + 1,
                         std::vector<std::uint64_t>(static_cast<std::size_t>(particle_count) + 1, 0));
  for (std::size_t a = 0; a <= static_cast<std::size_t>(h_max); ++a) {
    space.binomial_[a][0] = 1;
    for (std::size_t k = 1; k <= static_cast<std::size_t>(particle_count) && k <= a; ++k) {
      space.binomial_[a][k] =
          space.binomial_[a - 1][k - 1] + (a > k ? space.binomial_[a - 1][k] : 0);
    }
  }
  std::uint64_t count = space.binomial_[static_cast<std::size_t>(h_max)]
                                       [static_cast<std::size_t>(particle_count)];
  if (count > kMaxStates) {
    throw std::invalid_argument("enumerate_states: C(" + std::to_string(h_max) + ", " +
                                std::to_string(particle_count) + ") states exceed the limit");
  }

  space.states_.reserve(count);
  for (ParticleConfig& config : all_subsets(h_max - 1, static_cast<std::size_t>(particle_count))) {
    space.states_.push_back(std::move(config));
  }
  return space;
}

std::uint64_t TruncatedStateSpace::colex_rank(const ParticleConfig& config) const {
  std::uint64_t rank = 0;
  std::size_t k = 1;
  for (Height x : config) {
    if (x >= static_cast<Height>(binomial_.size())) break;  // caught by contains()
    if (x >= static_cast<Height>(k)) rank += binomial_[static_cast<std::size_t>(x)][k];
    ++k;
  }
  return rank;
}

bool TruncatedStateSpace::contains(const ParticleConfig& config) const {
  return static_cast<int>(config.size()) == n_ && (config.empty() || config.max() < h_max_);
}

std::size_t TruncatedStateSpace::index_of(const ParticleConfig& config) const {
  if (!contains(config)) {
    throw std::invalid_argument("index_of: {" + config.to_string() +
                                "} is not an in-range " + std::to_string(n_) + "-particle state");
  }
  return static_cast<std::size_t>(colex_rank(config));
}

// ---- StochasticMatrix ----------------------------------------------------------

StochasticMatrix::StochasticMatrix(std::size_t size) : rows_(size), escaped_(size, 0.0) {}

double StochasticMatrix::max_escaped() const {
  double worst = 0.0;
  for (double e : escaped_) worst = std::max(worst, e);
  return worst;
}

void StochasticMatrix::set_row(std::size_t i, std::vector<MatrixEntry> entries,
                               double escaped_mass) {
  rows_[i] = std::move(entries);
  escaped_[i] = escaped_mass;
}

// ---- matrix construction --------------------------------------------------------

StochasticMatrix build_matrix(const JumpFamily& family, const TruncatedStateSpace& space,
                              double max_escaped) {
  StochasticMatrix matrix(space.size());
  const Height h_max = space.height_bound();

  for (std::size_t i = 0; i < space.size(); ++i) {
    const ParticleConfig& a = space.state(i);
    if (!a.contains(0)) {
      // Drift row: unit mass at A - 1.
      std::size_t j = space.index_of(shift_down(a, 1));
      matrix.set_row(i, {{static_cast<std::uint32_t>(j), 1.0}}, 0.0);
      continue;
    }
    ParticleConfig rest = shift_down(delete_min(a), 1);
    std::vector<MatrixEntry> entries;
    double in_range = 0.0;
    for (Height y = 0; y < h_max; ++y) {
      if (rest.contains(y)) continue;
      double p = family.pmf(rest, y);
      if (p == 0.0) continue;
      std::size_t j = space.index_of(with_inserted(rest, y));
      entries.push_back({static_cast<std::uint32_t>(j), p});
      in_range += p;
    }
    double escaped = std::max(0.0, 1.0 - in_range);
    if (escaped > max_escaped) {
      throw TruncationError("build_matrix: row {" + a.to_string() + "} escapes mass " +
                            std::to_string(escaped) + " past h_max=" + std::to_string(h_max));
    }
    matrix.set_row(i, std::move(entries), escaped);
  }
  return matrix;
}

// ---- solvers ---------------------------------------------------------------------

namespace detail {

std::vector<double> solve_balance_dense(std::size_t size,
                                        const std::vector<std::vector<MatrixEntry>>& rows) {
  // x^T G = 0 <=> G^T x = 0; replace the first equation with sum x = 1.
  Eigen::MatrixXd gt = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(size),
                                             static_cast<Eigen::Index>(size));
  for (std::size_t i = 0; i < size; ++i) {
    for (const MatrixEntry& e : rows[i]) {
      gt(static_cast<Eigen::Index>(e.col), static_cast<Eigen::Index>(i)) += e.value;
    }
  }
  gt.row(0).setOnes();
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(size));
  rhs(0) = 1.0;

  Eigen::VectorXd solution = gt.partialPivLu().solve(rhs);

  std::vector<double> pi(size);
  double total = 0.0;
  for (std::size_t i = 0; i < size; ++i) {
    double v = solution(static_cast<Eigen::Index>(i));
    if (v < 0.0) {
      if (v < -1e-9) {
        throw NumericalError("stationary solve produced a negative probability " +
                             std::to_string(v));
      }
      v = 0.0;
    }
    pi[i] = v;
    total += v;
  }
  if (!(total > 0.0) || !std::isfinite(total)) {
    throw NumericalError("stationary solve produced a degenerate vector");
  }
  for (double& v : pi) v /= total;
  return pi;
}

}  // namespace detail

namespace {

// One application of the kernel: out = pi P (no renormalization).
void apply_kernel(const StochasticMatrix& matrix, std::span<const double> pi,
                  std::vector<double>& out) {
  std::fill(out.begin(), out.end(), 0.0);
  for (std::size_t i = 0; i < matrix.size(); ++i) {
    double mass = pi[i];
    if (mass == 0.0) continue;
    for (const MatrixEntry& e : matrix.row(i)) {
      out[e.col] += mass * e.value;
    }
  }
}

std::vector<double> stationary_by_power_iteration(const StochasticMatrix& matrix) {
  constexpr double kStepTol = 1e-12;
  constexpr std::int64_t kBudget = 1'000'000;

  std::size_t size = matrix.size();
  std::vector<double> pi(size, 1.0 / static_cast<double>(size));
  std::vector<double> next(size, 0.0);
  for (std::int64_t iter = 0; iter < kBudget; ++iter) {
    apply_kernel(matrix, pi, next);
    double total = 0.0;
    for (double v : next) total += v;
    double diff = 0.0;
    for (std::size_t i = 0; i < size; ++i) {
      next[i] /= total;
      diff += std::abs(next[i] - pi[i]);
    }
    pi.swap(next);
    if (diff <= kStepTol) return pi;
  }
  throw NumericalError("stationary_distribution: power iteration did not converge "
                       "within its iteration budget");
}

}  // namespace

DistVector stationary_distribution(const StochasticMatrix& matrix, double tol,
                                   std::size_t dense_limit) {
  if (matrix.max_escaped() > tol) {
    throw TruncationError("stationary_distribution: escaped mass " +
                          std::to_string(matrix.max_escaped()) + " exceeds tolerance");
  }

  std::vector<double> pi;
  if (matrix.size() <= dense_limit) {
    // Assemble P - I rows and delegate to the shared balance solver.
    std::vector<std::vector<MatrixEntry>> rows(matrix.size());
    for (std::size_t i = 0; i < matrix.size(); ++i) {
      auto row = matrix.row(i);
      rows[i].assign(row.begin(), row.end());
      rows[i].push_back({static_cast<std::uint32_t>(i), -1.0});
    }
    pi = detail::solve_balance_dense(matrix.size(), rows);
  } else {
    pi = stationary_by_power_iteration(matrix);
  }

  double residual = balance_residual(pi, matrix);
  if (residual > tol) {
    throw NumericalError("stationary_distribution: residual " + std::to_string(residual) +
                         " exceeds tolerance " + std::to_string(tol));
  }
  return pi;
}

double balance_residual(std::span<const double> pi, const StochasticMatrix& matrix) {
  if (pi.size() != matrix.size()) {
    throw std::invalid_argument("balance_residual: dimension mismatch");
  }
  std::vector<double> next(pi.size(), 0.0);
  apply_kernel(matrix, pi, next);
  double residual = 0.0;
  for (std::size_t i = 0; i < pi.size(); ++i) residual += std::abs(next[i] - pi[i]);
  return residual;
}

DistVector distribution_at_time(const ParticleConfig& a, const TruncatedStateSpace& space,
                                const StochasticMatrix& matrix, std::int64_t t,
                                double escape_tol) {
  if (space.size() != matrix.size()) {
    throw std::invalid_argument("distribution_at_time: space/matrix mismatch");
  }
  if (t < 0) throw std::invalid_argument("distribution_at_time: negative time");
  if (static_cast<double>(t) * matrix.max_escaped() > escape_tol) {
    throw TruncationError("distribution_at_time: accumulated escape over horizon exceeds " +
                          std::to_string(escape_tol));
  }

  std::vector<double> law(space.size(), 0.0);
  law[space.index_of(a)] = 1.0;
  std::vector<double> next(space.size(), 0.0);
  for (std::int64_t k = 0; k < t; ++k) {
    apply_kernel(matrix, law, next);
    law.swap(next);
  }
  return law;
}

double tv_distance(std::span<const double> p, std::span<const double> q) {
  if (p.size() != q.size()) throw std::invalid_argument("tv_distance: dimension mismatch");
  double sum = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) sum += std::abs(p[i] - q[i]);
  return 0.5 * sum;
}

std::vector<double> renewal_equilibrium(std::span<const double> interevent_pmf) {
  if (interevent_pmf.empty()) {
    throw std::invalid_argument("renewal_equilibrium: empty interevent pmf");
  }
  double total = 0.0;
  double mean = 0.0;
  for (std::size_t x = 0; x < interevent_pmf.size(); ++x) {
    double p = interevent_pmf[x];
    if (p < 0.0) throw std::invalid_argument("renewal_equilibrium: negative probability");
    total += p;
    mean += static_cast<double>(x) * p;
  }
  if (std::abs(total - 1.0) > 1e-9) {
    throw std::invalid_argument("renewal_equilibrium: interevent pmf sums to " +
                                std::to_string(total) + ", not 1");
  }

  // pi(x) = nu[x, inf) / (1 + m). The return cycle through state zero has
  // length y + 1 for an interevent value y, hence the +1 in the normalizer.
  std::vector<double> pi(interevent_pmf.size());
  double tail = total;
  for (std::size_t x = 0; x < interevent_pmf.size(); ++x) {
    pi[x] = tail / (1.0 + mean);
    tail -= interevent_pmf[x];
  }
  return pi;
}

double drift_statistic(const JumpFamily& family, const ParticleConfig& a) {
  if (a.empty()) throw std::invalid_argument("drift_statistic: empty configuration");
  if (!a.contains(0)) return -1.0;

  ParticleConfig rest = shift_down(delete_min(a), 1);
  // max((A*-1) u {y}) = max(V(A)-1, y); with n = 1 the rest is empty and the
  // next maximum is y itself.
  Height floor_height = a.size() > 1 ? a.max() - 1 : -1;

  std::optional<Height> bound = family.support_bound(rest);
  double expectation = 0.0;
  if (bound) {
    for (Height y = 0; y < *bound; ++y) {
      expectation += static_cast<double>(std::max(floor_height, y)) * family.pmf(rest, y);
    }
  } else {
    constexpr Height kCap = 1 << 22;
    double cdf = 0.0;
    bool converged = false;
    for (Height y = 0; y < kCap; ++y) {
      double p = family.pmf(rest, y);
      expectation += static_cast<double>(std::max(floor_height, y)) * p;
      cdf += p;
      double tail = 1.0 - cdf;
      if (y > floor_height && tail < 1e-16 && tail * static_cast<double>(y) < 1e-14) {
        converged = true;
        break;
      }
    }
    if (!converged) {
      throw NumericalError("drift_statistic: first moment of " + family.name() +
                           " did not converge at {" + rest.to_string() + "}");
    }
  }
  return expectation - static_cast<double>(a.max());
}

}  // namespace jep
