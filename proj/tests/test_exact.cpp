#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "jep/errors.hpp"
#include "jep/exact.hpp"
#include "jep/gibbs.hpp"
#include "jep/harness.hpp"
#include "jep/process.hpp"
#include "jep/related_models.hpp"

using namespace jep;

namespace {

// Independent stationary solve of the one-particle renewal chain
// P(x, x-1) = 1, P(0, y) = nu(y), done directly in Eigen.
std::vector<double> one_particle_stationary(const std::vector<double>& nu) {
  const auto size = static_cast<Eigen::Index>(nu.size());
  Eigen::MatrixXd p = Eigen::MatrixXd::Zero(size, size);
  for (Eigen::Index x = 1; x < size; ++x) p(x, x - 1) = 1.0;
  for (Eigen::Index y = 0; y < size; ++y) p(0, y) = nu[static_cast<std::size_t>(y)];

  Eigen::MatrixXd system = p.transpose() - Eigen::MatrixXd::Identity(size, size);
  system.row(0).setOnes();
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(size);
  rhs(0) = 1.0;
  Eigen::VectorXd pi = system.partialPivLu().solve(rhs);

  std::vector<double> out(nu.size());
  for (Eigen::Index i = 0; i < size; ++i) out[static_cast<std::size_t>(i)] = pi(i);
  return out;
}

std::vector<double> truncated_geometric(double alpha, std::size_t length) {
  std::vector<double> nu(length);
  for (std::size_t x = 0; x < length; ++x) {
    nu[x] = (1.0 - alpha) * std::pow(alpha, static_cast<double>(x));
  }
  return nu;
}

}  // namespace

TEST_CASE("state enumeration: counts, order, and rank lookup") {
  TruncatedStateSpace space = TruncatedStateSpace::enumerate(2, 3);
  REQUIRE(space.size() == 3);
  CHECK(space.state(0) == ParticleConfig({0, 1}));
  CHECK(space.state(1) == ParticleConfig({0, 2}));
  CHECK(space.state(2) == ParticleConfig({1, 2}));

  CHECK(TruncatedStateSpace::enumerate(1, 4).size() == 4);
  CHECK_THROWS_AS(TruncatedStateSpace::enumerate(3, 2), std::invalid_argument);

  TruncatedStateSpace big = TruncatedStateSpace::enumerate(3, 12);
  REQUIRE(big.size() == 220);  // C(12, 3)
  for (std::size_t i = 0; i < big.size(); ++i) {
    CHECK(big.index_of(big.state(i)) == i);
  }
  CHECK_FALSE(big.contains(ParticleConfig({0, 1, 12})));
  CHECK_THROWS_AS(big.index_of(ParticleConfig({0, 1})), std::invalid_argument);
}

TEST_CASE("build_matrix rows") {
  MemorylessFamily family(0.5);
  TruncatedStateSpace space = TruncatedStateSpace::enumerate(2, 24);
  StochasticMatrix matrix = build_matrix(family, space);

  SUBCASE("drift row has a single unit entry") {
    std::size_t row_index = space.index_of(ParticleConfig({1, 2}));
    auto row = matrix.row(row_index);
    REQUIRE(row.size() == 1);
    CHECK(row[0].col == space.index_of(ParticleConfig({0, 1})));
    CHECK(row[0].value == 1.0);
    CHECK(matrix.escaped(row_index) == 0.0);
  }

  SUBCASE("jump row carries nu_{A*-1} over (A*-1) u {y}") {
    std::size_t row_index = space.index_of(ParticleConfig({0, 1}));
    auto row = matrix.row(row_index);
    // B = {0}; expected mass 0.5 at {0,1}, 0.25 at {0,2}, 0.125 at {0,3}, ...
    double expected = 0.5;
    for (Height y = 1; y <= 5; ++y) {
      bool found = false;
      for (const MatrixEntry& e : row) {
        if (e.col == space.index_of(ParticleConfig({0, y}))) {
          CHECK(e.value == doctest::Approx(expected).epsilon(1e-12));
          found = true;
        }
      }
      CHECK(found);
      expected *= 0.5;
    }
  }

  SUBCASE("row sums complement the escaped mass") {
    for (std::size_t i = 0; i < matrix.size(); ++i) {
      double sum = 0.0;
      for (const MatrixEntry& e : matrix.row(i)) {
        sum += e.value;
        CHECK_FALSE(space.state(e.col).elements().empty());
      }
      CHECK(sum + matrix.escaped(i) == doctest::Approx(1.0).epsilon(1e-12));
    }
  }

  SUBCASE("jump rows avoid occupied sites") {
    for (std::size_t i = 0; i < matrix.size(); ++i) {
      const ParticleConfig& a = space.state(i);
      if (!a.contains(0)) continue;
      ParticleConfig rest = shift_down(delete_min(a), 1);
      for (const MatrixEntry& e : matrix.row(i)) {
        const ParticleConfig& target = space.state(e.col);
        for (Height x : rest) CHECK(target.contains(x));
      }
    }
  }
}

TEST_CASE("build_matrix enforces the escape bound") {
  MemorylessFamily family(0.9);
  TruncatedStateSpace space = TruncatedStateSpace::enumerate(2, 6);
  CHECK_THROWS_AS(build_matrix(family, space, 1e-12), TruncationError);
}

TEST_CASE("stationary distribution: one-particle geometric fixpoint") {
  MemorylessFamily family(0.5);
  TruncatedStateSpace space = TruncatedStateSpace::enumerate(1, 60);
  StochasticMatrix matrix = build_matrix(family, space);
  DistVector pi = stationary_distribution(matrix, 1e-9);
  for (std::size_t x = 0; x < 40; ++x) {
    CHECK(std::abs(pi[x] - 0.5 * std::pow(0.5, static_cast<double>(x))) <= 1e-10);
  }
}

TEST_CASE("stationary distribution matches the Gibbs law (two particles)") {
  MemorylessFamily family(0.5);
  TruncatedStateSpace space = TruncatedStateSpace::enumerate(2, 40);
  StochasticMatrix matrix = build_matrix(family, space);
  DistVector pi = stationary_distribution(matrix, 1e-9);
  for (std::size_t i = 0; i < space.size(); ++i) {
    CHECK(std::abs(pi[i] - gibbs_pmf(2, std::log(2.0), space.state(i))) <= 1e-9);
  }
}

TEST_CASE("stationary distribution of the bounded-uniform family is Warrington's law") {
  BoundedUniformFamily family(4);
  TruncatedStateSpace space = TruncatedStateSpace::enumerate(2, 4);
  StochasticMatrix matrix = build_matrix(family, space);
  DistVector pi = stationary_distribution(matrix, 1e-10);
  for (std::size_t i = 0; i < space.size(); ++i) {
    CHECK(std::abs(pi[i] - warrington_pmf(2, 4, space.state(i))) <= 1e-10);
  }
}

TEST_CASE("power iteration fallback agrees with the dense solve") {
  MemorylessFamily family(0.5);
  TruncatedStateSpace space = TruncatedStateSpace::enumerate(2, 40);
  StochasticMatrix matrix = build_matrix(family, space);
  DistVector dense = stationary_distribution(matrix, 1e-9);
  DistVector power = stationary_distribution(matrix, 1e-9, /*dense_limit=*/1);
  CHECK(tv_distance(dense, power) <= 1e-10);
}

TEST_CASE("stationary result is stable under doubling h_max") {
  constexpr double kTol = 2e-6;
  for (double alpha : {0.5, 0.7}) {
    MemorylessFamily family(alpha);
    TruncatedStateSpace coarse = TruncatedStateSpace::enumerate(2, 40);
    TruncatedStateSpace fine = TruncatedStateSpace::enumerate(2, 80);
    DistVector pi_coarse = stationary_distribution(build_matrix(family, coarse), kTol);
    DistVector pi_fine = stationary_distribution(build_matrix(family, fine), kTol);
    double diff = 0.0;
    for (std::size_t i = 0; i < coarse.size(); ++i) {
      diff = std::max(diff, std::abs(pi_coarse[i] - pi_fine[fine.index_of(coarse.state(i))]));
    }
    CHECK(diff <= 2.0 * kTol);
  }
}

TEST_CASE("balance_residual") {
  MemorylessFamily family(0.5);
  TruncatedStateSpace space = TruncatedStateSpace::enumerate(2, 40);
  StochasticMatrix matrix = build_matrix(family, space);

  DistVector pi = stationary_distribution(matrix, 1e-9);
  CHECK(balance_residual(pi, matrix) <= 1e-10);

  DistVector uniform(space.size(), 1.0 / static_cast<double>(space.size()));
  CHECK(balance_residual(uniform, matrix) > 1e-3);

  // Point mass at the ground state: residual is 2 (1 - P(G, G)) up to escape.
  DistVector point(space.size(), 0.0);
  std::size_t g = space.index_of(ParticleConfig({0, 1}));
  point[g] = 1.0;
  double pgg = 0.0;
  for (const MatrixEntry& e : matrix.row(g)) {
    if (e.col == g) pgg = e.value;
  }
  CHECK(balance_residual(point, matrix) ==
        doctest::Approx(2.0 * (1.0 - pgg) - matrix.escaped(g)).epsilon(1e-9));

  DistVector wrong(space.size() + 1, 0.0);
  CHECK_THROWS_AS(balance_residual(wrong, matrix), std::invalid_argument);
}

TEST_CASE("distribution_at_time") {
  MemorylessFamily family(0.5);
  TruncatedStateSpace space = TruncatedStateSpace::enumerate(2, 40);
  StochasticMatrix matrix = build_matrix(family, space);

  SUBCASE("t = 0 is the point mass") {
    DistVector law = distribution_at_time(ParticleConfig({0, 3}), space, matrix, 0);
    CHECK(law[space.index_of(ParticleConfig({0, 3}))] == 1.0);
  }

  SUBCASE("t = 1 equals the matrix row") {
    DistVector law = distribution_at_time(ParticleConfig({0, 3}), space, matrix, 1);
    for (const MatrixEntry& e : matrix.row(space.index_of(ParticleConfig({0, 3})))) {
      CHECK(law[e.col] == doctest::Approx(e.value).epsilon(1e-14));
    }
  }

  SUBCASE("pre-jump times are deterministic drifts") {
    DistVector law = distribution_at_time(ParticleConfig({2, 5}), space, matrix, 2);
    CHECK(law[space.index_of(ParticleConfig({0, 3}))] == doctest::Approx(1.0));
  }

  SUBCASE("from tau_n on, the law is the Gibbs law (ultrafast convergence)") {
    // A = {1,3}: tau_2 = 4.
    DistVector gibbs = gibbs_vector(space, std::log(2.0));
    DistVector law = distribution_at_time(ParticleConfig({1, 3}), space, matrix, 4);
    CHECK(tv_distance(law, gibbs) <= 1e-9);
    DistVector before = distribution_at_time(ParticleConfig({1, 3}), space, matrix, 3);
    CHECK(tv_distance(before, gibbs) > 1e-3);
  }

  SUBCASE("horizons whose accumulated escape exceeds the tolerance are rejected") {
    CHECK_THROWS_AS(
        distribution_at_time(ParticleConfig({0, 3}), space, matrix, 1000000, 1e-9),
        TruncationError);
  }
}

TEST_CASE("tv_distance basics") {
  std::vector<double> p{0.5, 0.5};
  std::vector<double> q{1.0, 0.0};
  CHECK(tv_distance(p, p) == 0.0);
  CHECK(tv_distance(p, q) == doctest::Approx(0.5));
  std::vector<double> a{1.0, 0.0};
  std::vector<double> b{0.0, 1.0};
  CHECK(tv_distance(a, b) == doctest::Approx(1.0));
  std::vector<double> bad{1.0};
  CHECK_THROWS_AS(tv_distance(p, bad), std::invalid_argument);
}

TEST_CASE("renewal equilibrium") {
  SUBCASE("geometric interevent law is its own equilibrium") {
    std::vector<double> nu = truncated_geometric(0.5, 64);
    std::vector<double> pi = renewal_equilibrium(nu);
    for (std::size_t x = 0; x < 40; ++x) {
      CHECK(std::abs(pi[x] - nu[x]) <= 1e-12);
    }
  }

  SUBCASE("point mass at 2 gives the uniform cycle law") {
    std::vector<double> nu{0.0, 0.0, 1.0};
    std::vector<double> pi = renewal_equilibrium(nu);
    REQUIRE(pi.size() == 3);
    for (double v : pi) CHECK(v == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  }

  SUBCASE("uniform on {0,1,2} gives (1/2, 1/3, 1/6)") {
    std::vector<double> nu{1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0};
    std::vector<double> pi = renewal_equilibrium(nu);
    CHECK(pi[0] == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(pi[1] == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
    CHECK(pi[2] == doctest::Approx(1.0 / 6.0).epsilon(1e-12));
  }

  SUBCASE("agrees with an independent linear solve") {
    for (const std::vector<double>& nu :
         {std::vector<double>{0.0, 0.0, 1.0},
          std::vector<double>{1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0},
          std::vector<double>{0.1, 0.2, 0.3, 0.4},
          truncated_geometric(0.5, 50)}) {
      std::vector<double> pi = renewal_equilibrium(nu);
      std::vector<double> reference = one_particle_stationary(nu);
      REQUIRE(pi.size() == reference.size());
      for (std::size_t x = 0; x < pi.size(); ++x) {
        CHECK(std::abs(pi[x] - reference[x]) <= 1e-10);
      }
    }
  }

  SUBCASE("rejects non-distributions") {
    CHECK_THROWS_AS(renewal_equilibrium(std::vector<double>{}), std::invalid_argument);
    CHECK_THROWS_AS(renewal_equilibrium(std::vector<double>{0.4, 0.4}), std::invalid_argument);
    CHECK_THROWS_AS(renewal_equilibrium(std::vector<double>{1.2, -0.2}), std::invalid_argument);
  }
}

TEST_CASE("drift statistic") {
  MemorylessFamily family(0.5);
  CHECK(drift_statistic(family, ParticleConfig({2, 5})) == -1.0);
  CHECK(drift_statistic(BoundedUniformFamily(9), ParticleConfig({3, 8})) == -1.0);

  // One-particle boundary state: PV - V = E xi = alpha / (1 - alpha).
  CHECK(drift_statistic(family, ParticleConfig({0})) == doctest::Approx(1.0).epsilon(1e-9));

  CHECK(drift_statistic(family, ParticleConfig({0, 30})) <= -0.5);

  // Brute-force cross-check of a boundary state: E max(maxA - 1, y).
  ParticleConfig a({0, 4});
  double expected = 0.0;
  for (Height y = 0; y < 200; ++y) {
    expected += static_cast<double>(std::max<Height>(3, y)) *
                memoryless_pmf(ParticleConfig({3}), 0.5, y);
  }
  CHECK(drift_statistic(family, a) == doctest::Approx(expected - 4.0).epsilon(1e-10));
}
