#include "jep/related_models.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "jep/errors.hpp"

namespace jep {

BigInt stirling2(int a, int b) {
  if (b < 1 || b > a) {
    throw std::invalid_argument("stirling2: requires 1 <= b <= a");
  }
  // Rolling row of the triangle S(i, *).
  std::vector<BigInt> row(static_cast<std::size_t>(b) + 1, 0);
  row[1] = 1;  // S(1, 1)
  for (int i = 2; i <= a; ++i) {
    for (int j = std::min(i, b); j >= 1; --j) {
      row[static_cast<std::size_t>(j)] =
          BigInt(j) * row[static_cast<std::size_t>(j)] + row[static_cast<std::size_t>(j) - 1];
    }
  }
  return row[static_cast<std::size_t>(b)];
}

double warrington_pmf(int n, Height m, const ParticleConfig& b) {
  if (n < 1 || m < n) throw std::invalid_argument("warrington_pmf: requires 1 <= n <= M");
  if (static_cast<int>(b.size()) != n) {
    throw std::invalid_argument("warrington_pmf: configuration size differs from n");
  }
  if (b.max() >= m) {
    throw std::invalid_argument("warrington_pmf: configuration not within [0, M-1]");
  }

  BigInt weight = 1;
  for (Height x : b) {
    // 1 + free sites strictly above x within the box.
    Height above = m - 1 - x;
    Height occupied_above = 0;
    for (Height y : b) {
      if (y > x) ++occupied_above;
    }
    weight *= BigInt(1 + above - occupied_above);
  }
  BigInt z = stirling2(static_cast<int>(m) + 1, static_cast<int>(m) + 1 - n);
  return static_cast<double>(weight) / static_cast<double>(z);
}

void AsepParams::validate() const {
  if (n < 1) throw std::invalid_argument("asep: n must be >= 1");
  if (!(lambda > 0.0) || !(eta > 0.0)) {
    throw std::invalid_argument("asep: rates must be strictly positive");
  }
  if (!(lambda < eta)) {
    throw std::invalid_argument("asep: stability requires lambda < eta");
  }
}

ParticleConfig asep_simulate(const AsepParams& params, const ParticleConfig& x0,
                             double t_end, RandomStream& stream, AsepSimStats* stats) {
  params.validate();
  if (static_cast<int>(x0.size()) != params.n) {
    throw std::invalid_argument("asep_simulate: initial state size differs from n");
  }
  if (t_end < 0.0) throw std::invalid_argument("asep_simulate: negative horizon");

  std::vector<Height> sites(x0.begin(), x0.end());
  const double aggregate = static_cast<double>(params.n) * (params.lambda + params.eta);
  const double up_share = params.lambda / (params.lambda + params.eta);

  double t = stream.next_exponential(aggregate);
  while (t <= t_end) {
    // Pick the attempting particle and direction with one uniform draw.
    double u = stream.next_unit() * static_cast<double>(params.n);
    auto idx = static_cast<std::size_t>(u);
    if (idx >= sites.size()) idx = sites.size() - 1;
    bool up = (u - static_cast<double>(idx)) < up_share;

    if (stats) ++stats->attempts;
    Height target = sites[idx] + (up ? 1 : -1);
    bool free_site = target >= 0;
    if (free_site) {
      for (Height occupied : sites) {
        if (occupied == target) {
          free_site = false;
          break;
        }
      }
    }
    if (free_site) {
      sites[idx] = target;
      if (stats) ++stats->executed;
    }
    t += stream.next_exponential(aggregate);
  }
  return ParticleConfig::from_unsorted(std::move(sites));
}

std::vector<std::vector<MatrixEntry>> asep_jump_rates(const AsepParams& params,
                                                      const TruncatedStateSpace& space) {
  params.validate();
  if (space.particle_count() != params.n) {
    throw std::invalid_argument("asep_jump_rates: space particle count differs from n");
  }
  const Height h_max = space.height_bound();

  std::vector<std::vector<MatrixEntry>> rates(space.size());
  for (std::size_t i = 0; i < space.size(); ++i) {
    const ParticleConfig& state = space.state(i);
    for (Height x : state) {
      if (x + 1 < h_max && !state.contains(x + 1)) {
        std::vector<Height> moved = state.elements();
        for (Height& s : moved) {
          if (s == x) s = x + 1;
        }
        std::size_t j = space.index_of(ParticleConfig::from_unsorted(std::move(moved)));
        rates[i].push_back({static_cast<std::uint32_t>(j), params.lambda});
      }
      if (x - 1 >= 0 && !state.contains(x - 1)) {
        std::vector<Height> moved = state.elements();
        for (Height& s : moved) {
          if (s == x) s = x - 1;
        }
        std::size_t j = space.index_of(ParticleConfig::from_unsorted(std::move(moved)));
        rates[i].push_back({static_cast<std::uint32_t>(j), params.eta});
      }
    }
  }
  return rates;
}

DistVector asep_stationary_exact(const AsepParams& params, const TruncatedStateSpace& space,
                                 double tail_tol) {
  params.validate();
  double tail = std::pow(params.ratio(),
                         static_cast<double>(space.height_bound() - params.n));
  if (tail > tail_tol) {
    throw TruncationError("asep_stationary_exact: truncation tail " + std::to_string(tail) +
                          " exceeds tolerance; raise h_max");
  }

  std::vector<std::vector<MatrixEntry>> rows = asep_jump_rates(params, space);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    double outflow = 0.0;
    for (const MatrixEntry& e : rows[i]) outflow += e.value;
    rows[i].push_back({static_cast<std::uint32_t>(i), -outflow});
  }
  return detail::solve_balance_dense(space.size(), rows);
}

}  // namespace jep
