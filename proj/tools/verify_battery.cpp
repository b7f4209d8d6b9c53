#include "verify_battery.hpp"

#include <cmath>
#include <functional>
#include <ostream>
#include <string>
#include <vector>

#include "jep/exact.hpp"
#include "jep/gibbs.hpp"
#include "jep/harness.hpp"
#include "jep/jump_family.hpp"
#include "jep/process.hpp"
#include "jep/related_models.hpp"

namespace jep::tools {

namespace {

struct Check {
  std::string name;
  std::function<bool()> run;
};

std::vector<ParticleConfig> states_up_to(Height max_height, std::size_t max_size) {
  std::vector<ParticleConfig> out;
  for (std::size_t k = 0; k <= max_size; ++k) {
    for (ParticleConfig& s : all_subsets(max_height, k)) out.push_back(std::move(s));
  }
  return out;
}

bool appendix_lemmas() {
  for (const ParticleConfig& a : states_up_to(9, 3)) {
    for (Height x = 0; x <= 10; ++x) {
      if (avoiding_shift(shift_up(a, 1), x + 1) != avoiding_shift(a, x) + 1) return false;
      if (!a.empty()) {
        Height expected = x < a.min() ? x : avoiding_shift(delete_min(a), x + 1);
        if (avoiding_shift(a, x) != expected) return false;
        std::vector<Height> xs{x};
        ParticleConfig deleted = delete_min(noncolliding_union(a, xs));
        if (x < a.min()) {
          if (deleted != a) return false;
        } else {
          std::vector<Height> shifted{x + 1};
          if (deleted != noncolliding_union(delete_min(a), shifted)) return false;
        }
      }
      if (!a.contains(x) && avoiding_shift(a, count_below(a, x)) != x) return false;
      std::vector<Height> pair{x, (x * 7 + 3) % 11};
      ParticleConfig u = noncolliding_union(a, pair);
      Height expected_min = std::min({a.empty() ? pair[0] : a.min(), pair[0], pair[1]});
      if (u.min() != expected_min) return false;
      std::vector<Height> pair_up{pair[0] + 1, pair[1] + 1};
      if (noncolliding_union(shift_up(a, 1), pair_up) != shift_up(u, 1)) return false;
    }
  }
  return true;
}

bool family_diagnostics() {
  std::vector<ParticleConfig> states = states_up_to(8, 3);
  MemorylessFamily memoryless(0.5);
  BoundedUniformFamily uniform(9);
  if (!check_noncolliding(memoryless, states).ok()) return false;
  if (!check_aperiodicity(memoryless, states).ok()) return false;
  if (!check_noncolliding(uniform, states).ok()) return false;
  if (!check_aperiodicity(uniform, states).ok()) return false;
  double at_10 = tail_first_moment(memoryless, 10, states);
  double at_20 = tail_first_moment(memoryless, 20, states);
  return at_20 <= at_10 && at_20 < 1e-3;
}

bool renewal_checks() {
  std::vector<double> geometric(60);
  for (std::size_t x = 0; x < geometric.size(); ++x) {
    geometric[x] = 0.5 * std::pow(0.5, static_cast<double>(x));
  }
  std::vector<double> pi = renewal_equilibrium(geometric);
  for (std::size_t x = 0; x < 40; ++x) {
    if (std::abs(pi[x] - geometric[x]) > 1e-12) return false;
  }
  std::vector<double> uniform{1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0};
  std::vector<double> pi_u = renewal_equilibrium(uniform);
  return std::abs(pi_u[0] - 0.5) <= 1e-12 && std::abs(pi_u[1] - 1.0 / 3.0) <= 1e-12 &&
         std::abs(pi_u[2] - 1.0 / 6.0) <= 1e-12;
}

bool stationary_matches_gibbs() {
  TruncatedStateSpace space = TruncatedStateSpace::enumerate(2, 40);
  StochasticMatrix matrix = build_matrix(MemorylessFamily(0.5), space);
  DistVector pi = stationary_distribution(matrix, 1e-9);
  for (std::size_t i = 0; i < space.size(); ++i) {
    if (std::abs(pi[i] - gibbs_pmf(2, std::log(2.0), space.state(i))) > 1e-9) return false;
  }
  return true;
}

bool warrington_matches_exact() {
  TruncatedStateSpace space = TruncatedStateSpace::enumerate(2, 4);
  StochasticMatrix matrix = build_matrix(BoundedUniformFamily(4), space);
  DistVector pi = stationary_distribution(matrix, 1e-10);
  for (std::size_t i = 0; i < space.size(); ++i) {
    if (std::abs(pi[i] - warrington_pmf(2, 4, space.state(i))) > 1e-10) return false;
  }
  return true;
}

bool drift_checks() {
  MemorylessFamily family(0.5);
  for (const ParticleConfig& a :
       {ParticleConfig({2, 5}), ParticleConfig({1, 9}), ParticleConfig({4, 7, 12})}) {
    if (drift_statistic(family, a) != -1.0) return false;
  }
  for (const ParticleConfig& a :
       {ParticleConfig({0, 10}), ParticleConfig({0, 30}), ParticleConfig({0, 5, 12})}) {
    if (drift_statistic(family, a) > -0.5) return false;
  }
  return true;
}

bool ultrafast_convergence() {
  TruncatedStateSpace space = TruncatedStateSpace::enumerate(2, 40);
  auto profile = convergence_profile(ParticleConfig({0, 5}), 0.5, 7, space);
  return profile[5].second > 1e-3 && profile[6].second <= 1e-9 && profile[7].second <= 1e-9;
}

bool asep_checks() {
  AsepParams params{2, 1.0, 2.0};
  TruncatedStateSpace space = TruncatedStateSpace::enumerate(2, 40);
  DistVector pi = asep_stationary_exact(params, space);
  for (std::size_t i = 0; i < space.size(); ++i) {
    if (std::abs(pi[i] - gibbs_pmf(2, std::log(2.0), space.state(i))) > 1e-8) return false;
  }
  std::vector<std::vector<MatrixEntry>> rates = asep_jump_rates(params, space);
  for (std::size_t i = 0; i < space.size(); ++i) {
    for (const MatrixEntry& e : rates[i]) {
      double backward = 0.0;
      for (const MatrixEntry& back : rates[e.col]) {
        if (back.col == i) backward = pi[e.col] * back.value;
      }
      if (std::abs(pi[i] * e.value - backward) > 1e-9) return false;
    }
  }
  return true;
}

bool closed_form_stats() {
  EquilibriumStats stats = equilibrium_stats(2, 0.5);
  if (std::abs(stats.zero_occupied_prob - 0.75) > 1e-12) return false;
  if (std::abs(stats.ground_state_prob - 0.375) > 1e-12) return false;
  TruncatedStateSpace space = TruncatedStateSpace::enumerate(2, 45);
  double zero_occupied = 0.0;
  for (std::size_t i = 0; i < space.size(); ++i) {
    if (space.state(i).contains(0)) zero_occupied += gibbs_pmf(2, std::log(2.0), space.state(i));
  }
  return std::abs(zero_occupied - stats.zero_occupied_prob) <= 1e-9;
}

bool reproducible_simulation() {
  MemorylessFamily family(0.5);
  Trajectory a = simulate(ParticleConfig({1, 4, 7}), family, 2000, 42);
  Trajectory b = simulate(ParticleConfig({1, 4, 7}), family, 2000, 42);
  return a.states == b.states;
}

}  // namespace

int run_verify_battery(std::ostream& out) {
  const std::vector<Check> checks{
      {"appendix set-shift lemmas (exhaustive, small scale)", appendix_lemmas},
      {"family diagnostics: exclusion, aperiodicity, tail moment", family_diagnostics},
      {"one-particle renewal equilibrium", renewal_checks},
      {"memoryless stationary law equals the Gibbs measure", stationary_matches_gibbs},
      {"bounded-uniform stationary law equals Warrington's formula", warrington_matches_exact},
      {"Foster-Lyapunov drift bounds", drift_checks},
      {"ultrafast convergence at tau_n", ultrafast_convergence},
      {"ASEP equilibrium equivalence and reversibility", asep_checks},
      {"closed-form equilibrium statistics", closed_form_stats},
      {"trajectory reproducibility", reproducible_simulation},
  };

  int failures = 0;
  for (const Check& check : checks) {
    bool ok = false;
    std::string error;
    try {
      ok = check.run();
    } catch (const std::exception& e) {
      error = e.what();
    }
    out << (ok ? "[PASS] " : "[FAIL] ") << check.name;
    if (!error.empty()) out << " (" << error << ")";
    out << '\n';
    if (!ok) ++failures;
  }
  return failures;
}

}  // namespace jep::tools
