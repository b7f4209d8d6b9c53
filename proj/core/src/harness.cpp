#include "jep/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <thread>

#include "jep/errors.hpp"
#include "jep/gibbs.hpp"
#include "jep/related_models.hpp"

namespace jep {

void EmpiricalSetDistribution::add(const ParticleConfig& config, std::uint64_t count) {
  counts_[config] += count;
  total_ += count;
}

void EmpiricalSetDistribution::merge(const EmpiricalSetDistribution& other) {
  for (const auto& [config, count] : other.counts_) {
    counts_[config] += count;
  }
  total_ += other.total_;
}

double EmpiricalSetDistribution::frequency(const ParticleConfig& config) const {
  if (total_ == 0) return 0.0;
  auto it = counts_.find(config);
  return it == counts_.end() ? 0.0
                             : static_cast<double>(it->second) / static_cast<double>(total_);
}

EmpiricalSetDistribution empirical_distribution(std::span<const ParticleConfig> samples) {
  if (samples.empty()) {
    throw std::invalid_argument("empirical_distribution: at least one sample required");
  }
  EmpiricalSetDistribution out;
  for (const ParticleConfig& s : samples) out.add(s);
  return out;
}

double tv_to_pmf(const EmpiricalSetDistribution& empirical,
                 const std::function<double(const ParticleConfig&)>& pmf) {
  double sum = 0.0;
  double covered = 0.0;
  for (const auto& [config, count] : empirical.counts()) {
    double exact = pmf(config);
    covered += exact;
    sum += std::abs(static_cast<double>(count) / static_cast<double>(empirical.total()) - exact);
  }
  return 0.5 * (sum + std::max(0.0, 1.0 - covered));
}

double tv_empirical(const EmpiricalSetDistribution& a, const EmpiricalSetDistribution& b) {
  if (a.total() == 0 || b.total() == 0) {
    throw std::invalid_argument("tv_empirical: empty distribution");
  }
  double sum = 0.0;
  auto ia = a.counts().begin();
  auto ib = b.counts().begin();
  while (ia != a.counts().end() || ib != b.counts().end()) {
    if (ib == b.counts().end() || (ia != a.counts().end() && ia->first < ib->first)) {
      sum += static_cast<double>(ia->second) / static_cast<double>(a.total());
      ++ia;
    } else if (ia == a.counts().end() || ib->first < ia->first) {
      sum += static_cast<double>(ib->second) / static_cast<double>(b.total());
      ++ib;
    } else {
      sum += std::abs(static_cast<double>(ia->second) / static_cast<double>(a.total()) -
                      static_cast<double>(ib->second) / static_cast<double>(b.total()));
      ++ia;
      ++ib;
    }
  }
  return 0.5 * sum;
}

DistVector gibbs_vector(const TruncatedStateSpace& space, double beta) {
  DistVector out(space.size());
  double total = 0.0;
  for (std::size_t i = 0; i < space.size(); ++i) {
    out[i] = gibbs_pmf(space.particle_count(), beta, space.state(i));
    total += out[i];
  }
  for (double& v : out) v /= total;
  return out;
}

std::vector<std::pair<std::int64_t, double>> convergence_profile(
    const ParticleConfig& a, double alpha, std::int64_t horizon,
    const TruncatedStateSpace& space, double escape_tol) {
  require_alpha(alpha);
  MemorylessFamily family(alpha);
  StochasticMatrix matrix = build_matrix(family, space);
  if (static_cast<double>(horizon) * matrix.max_escaped() > escape_tol) {
    throw TruncationError("convergence_profile: accumulated escape over the horizon exceeds " +
                          std::to_string(escape_tol) + "; raise h_max");
  }
  DistVector gibbs = gibbs_vector(space, -std::log(alpha));

  std::vector<std::pair<std::int64_t, double>> profile;
  profile.reserve(static_cast<std::size_t>(horizon) + 1);

  DistVector law(space.size(), 0.0);
  law[space.index_of(a)] = 1.0;
  DistVector next(space.size(), 0.0);
  for (std::int64_t t = 0; t <= horizon; ++t) {
    if (t > 0) {
      std::fill(next.begin(), next.end(), 0.0);
      for (std::size_t i = 0; i < space.size(); ++i) {
        if (law[i] == 0.0) continue;
        for (const MatrixEntry& e : matrix.row(i)) next[e.col] += law[i] * e.value;
      }
      law.swap(next);
    }
    profile.emplace_back(t, tv_distance(law, gibbs));
  }
  return profile;
}

unsigned worker_count() {
  const char* env = std::getenv("JEP_THREADS");
  if (!env) return 1;
  long value = std::strtol(env, nullptr, 10);
  if (value < 1) return 1;
  unsigned hw = std::thread::hardware_concurrency();
  return static_cast<unsigned>(std::min<long>(value, hw > 0 ? hw * 4 : value));
}

EmpiricalSetDistribution sample_batch(
    std::uint64_t count, std::uint64_t seed,
    const std::function<ParticleConfig(RandomStream&)>& draw) {
  unsigned workers = worker_count();
  RandomStream root(seed);

  if (workers <= 1 || count < 2 * workers) {
    EmpiricalSetDistribution out;
    for (std::uint64_t i = 0; i < count; ++i) {
      RandomStream sub = root.split(i);
      out.add(draw(sub));
    }
    return out;
  }

  std::vector<EmpiricalSetDistribution> partial(workers);
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&, w]() {
      // Contiguous index block; sample i depends only on (seed, i).
      std::uint64_t begin = count * w / workers;
      std::uint64_t end = count * (w + 1) / workers;
      for (std::uint64_t i = begin; i < end; ++i) {
        RandomStream sub = root.split(i);
        partial[w].add(draw(sub));
      }
    });
  }
  for (std::thread& t : pool) t.join();

  EmpiricalSetDistribution out;
  for (const EmpiricalSetDistribution& p : partial) out.merge(p);
  return out;
}

void RunConfig::validate() const {
  if (n < 1) throw std::invalid_argument("config: n must be >= 1");
  if (alpha) require_alpha(*alpha);
  if (m && *m < n) throw std::invalid_argument("config: M must be >= n");
  if (!init.empty() && static_cast<int>(init.size()) != n) {
    throw std::invalid_argument("config: initial state must contain exactly n heights");
  }
  if (h_max > 0 && h_max < n) throw std::invalid_argument("config: hmax must be >= n");
  if (!(tol > 0.0)) throw std::invalid_argument("config: tol must be positive");
  if (family == "memoryless" && !alpha) {
    throw std::invalid_argument("config: memoryless family requires --alpha");
  }
  if (family == "bounded-uniform" && !m) {
    throw std::invalid_argument("config: bounded-uniform family requires --m");
  }
  if (family == "table" && table_path.empty()) {
    throw std::invalid_argument("config: table family requires --table");
  }
  if (lambda || eta) {
    AsepParams{n, lambda.value_or(0.0), eta.value_or(0.0)}.validate();
  }
}

}  // namespace jep
