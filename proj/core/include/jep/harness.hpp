#ifndef JEP_HARNESS_HPP
#define JEP_HARNESS_HPP

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "jep/exact.hpp"
#include "jep/particle_config.hpp"
#include "jep/rng.hpp"

namespace jep {

/// Exact occurrence counts over sampled configurations.
class EmpiricalSetDistribution {
 public:
  void add(const ParticleConfig& config, std::uint64_t count = 1);
  void merge(const EmpiricalSetDistribution& other);

  std::uint64_t total() const { return total_; }
  const std::map<ParticleConfig, std::uint64_t>& counts() const { return counts_; }
  double frequency(const ParticleConfig& config) const;

 private:
  std::map<ParticleConfig, std::uint64_t> counts_;
  std::uint64_t total_ = 0;
};

EmpiricalSetDistribution empirical_distribution(std::span<const ParticleConfig> samples);

// TV against an exact law over the union of supports: states outside the
// empirical support contribute their full exact mass.
double tv_to_pmf(const EmpiricalSetDistribution& empirical,
                 const std::function<double(const ParticleConfig&)>& pmf);

// TV between two empirical distributions over the union of supports.
double tv_empirical(const EmpiricalSetDistribution& a, const EmpiricalSetDistribution& b);

// Gibbs law restricted to the space and renormalized.
DistVector gibbs_vector(const TruncatedStateSpace& space, double beta);

// Exact TV(law of X_t, Gibbs) for t = 0..horizon under the memoryless JEP.
// Requires horizon * max escaped mass <= escape_tol, like distribution_at_time.
std::vector<std::pair<std::int64_t, double>> convergence_profile(
    const ParticleConfig& a, double alpha, std::int64_t horizon,
    const TruncatedStateSpace& space, double escape_tol = 1e-9);

// Worker count for Monte-Carlo fan-out: JEP_THREADS, default 1.
unsigned worker_count();

// Draws `count` samples, sample i from the sub-stream split((i)), fanned out
// across worker_count() threads. Counting is associative, so the result is
// schedule-invariant and byte-reproducible.
EmpiricalSetDistribution sample_batch(
    std::uint64_t count, std::uint64_t seed,
    const std::function<ParticleConfig(RandomStream&)>& draw);

/// Resolved run configuration for the CLI; validated before any run.
struct RunConfig {
  std::string model;       // simulate | stationary | gibbs | ...
  std::string family;      // memoryless | bounded-uniform | table
  std::optional<double> alpha;
  std::optional<Height> m;
  std::optional<double> lambda;
  std::optional<double> eta;
  int n = 0;
  ParticleConfig init;
  std::int64_t horizon = 0;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
  Height h_max = 0;
  double tol = 1e-10;
  std::string out_path;
  std::string table_path;

  void validate() const;  // throws std::invalid_argument
};

}  // namespace jep

#endif
