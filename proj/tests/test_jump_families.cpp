#include <cmath>
#include <cstdio>
#include <map>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "jep/errors.hpp"
#include "jep/jump_family.hpp"
#include "oracles.hpp"

using namespace jep;

namespace {

std::vector<ParticleConfig> states_up_to(Height max_height, std::size_t max_size) {
  std::vector<ParticleConfig> out;
  for (std::size_t k = 0; k <= max_size; ++k) {
    for (ParticleConfig& s : all_subsets(max_height, k)) out.push_back(std::move(s));
  }
  return out;
}

// nu_B[t, inf) by direct pmf summation (tail below 1e-18 ignored).
double tail_by_summation(const MemorylessFamily& family, const ParticleConfig& b, Height t) {
  double mass = 0.0;
  for (Height y = t; y < 4096; ++y) mass += family.pmf(b, y);
  return mass;
}

}  // namespace

TEST_CASE("memoryless pmf values") {
  ParticleConfig b({0, 2, 3});
  CHECK(memoryless_pmf(ParticleConfig{}, 0.25, 3) ==
        doctest::Approx(0.75 * std::pow(0.25, 3)).epsilon(1e-12));
  CHECK(memoryless_pmf(b, 0.5, 1) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(memoryless_pmf(b, 0.5, 2) == 0.0);
  CHECK(memoryless_pmf(b, 0.5, 4) == doctest::Approx(0.25).epsilon(1e-12));
  CHECK_THROWS_AS(memoryless_pmf(b, 1.0, 1), std::invalid_argument);
  CHECK_THROWS_AS(MemorylessFamily(0.0), std::invalid_argument);
  CHECK_THROWS_AS(MemorylessFamily(1.0), std::invalid_argument);
  CHECK_THROWS_AS(BoundedUniformFamily(0), std::invalid_argument);
}

TEST_CASE("memoryless tail identity nu_B[t,inf) = alpha^{h_B(t)}") {
  MemorylessFamily family(0.5);
  for (const ParticleConfig& b : states_up_to(6, 3)) {
    for (Height t = 0; t <= 10; ++t) {
      CHECK(tail_by_summation(family, b, t) ==
            doctest::Approx(family.tail_mass(b, t)).epsilon(1e-12));
    }
  }
}

TEST_CASE("memoryless identity: nu_B[t,inf) = nu_B[s,inf) nu_{B-s}[t-s,inf)") {
  // Exhaustive over max(B) <= 10, s <= t <= 15, via the closed-form tails
  // cross-checked against summation above.
  for (double alpha : {0.3, 0.5, 0.7}) {
    MemorylessFamily family(alpha);
    for (const ParticleConfig& b : states_up_to(10, 3)) {
      for (Height s = 0; s <= 15; ++s) {
        // Elements shifted below zero never intersect [0, x-1], so dropping
        // them leaves every h_{B-s}(x) unchanged.
        std::vector<Height> kept;
        for (Height x : b) {
          if (x >= s) kept.push_back(x - s);
        }
        ParticleConfig b_minus_s(std::move(kept));
        for (Height t = s; t <= 15; ++t) {
          double lhs = family.tail_mass(b, t);
          double rhs = family.tail_mass(b, s) * family.tail_mass(b_minus_s, t - s);
          CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
        }
      }
    }
  }
}

TEST_CASE("sample_memoryless reduces to the raw geometric stream on the empty set") {
  RandomStream a(5);
  RandomStream b(5);
  for (int i = 0; i < 200; ++i) {
    CHECK(sample_memoryless(ParticleConfig{}, 0.4, a) == b.next_geometric(0.4));
  }
  GeometricStream bound(5, 0.4);
  RandomStream raw(5);
  for (int i = 0; i < 200; ++i) {
    CHECK(sample_memoryless(ParticleConfig({0, 2}), bound) ==
          avoiding_shift(ParticleConfig({0, 2}), raw.next_geometric(0.4)));
  }
}

TEST_CASE("sample_memoryless shifts deterministic draws through theta_B") {
  // With B = {0}, theta_B(k) = k + 1.
  RandomStream probe(17);
  RandomStream replay(17);
  ParticleConfig b({0});
  for (int i = 0; i < 100; ++i) {
    Height sample = sample_memoryless(b, 0.5, probe);
    CHECK(sample == replay.next_geometric(0.5) + 1);
  }
}

TEST_CASE("sampler histogram matches the memoryless pmf (Lemma-3 equivalence)") {
  constexpr int kDraws = 1000000;
  ParticleConfig b({0, 2, 3});
  MemorylessFamily family(0.5);
  RandomStream stream(31);
  std::map<Height, std::int64_t> histogram;
  for (int i = 0; i < kDraws; ++i) ++histogram[family.sample(b, stream)];

  for (const auto& [site, count] : histogram) {
    CHECK_FALSE(b.contains(site));
  }
  for (Height y = 0; y <= 12; ++y) {
    double expected = family.pmf(b, y);
    double observed = static_cast<double>(histogram[y]) / kDraws;
    double bound = 4.0 * std::sqrt(expected * (1.0 - expected) / kDraws) + 1e-12;
    CAPTURE(y);
    CHECK(std::abs(observed - expected) <= bound);
  }
}

TEST_CASE("bounded uniform pmf") {
  ParticleConfig b({0, 2});
  CHECK(bounded_uniform_pmf(b, 4, 1) == doctest::Approx(0.5));
  CHECK(bounded_uniform_pmf(b, 4, 3) == doctest::Approx(0.5));
  CHECK(bounded_uniform_pmf(b, 4, 2) == 0.0);
  CHECK(bounded_uniform_pmf(b, 4, 4) == 0.0);
  CHECK_THROWS_AS(bounded_uniform_pmf(ParticleConfig({0, 1}), 2, 0), std::invalid_argument);
  CHECK_THROWS_AS(bounded_uniform_pmf(ParticleConfig({5}), 4, 1), std::invalid_argument);
}

TEST_CASE("bounded uniform sampler hits every free site uniformly") {
  BoundedUniformFamily family(5);
  ParticleConfig b({1, 3});
  RandomStream stream(77);
  std::map<Height, int> counts;
  constexpr int kDraws = 300000;
  for (int i = 0; i < kDraws; ++i) ++counts[family.sample(b, stream)];
  CHECK(counts.size() == 3);  // free sites 0, 2, 4
  for (Height y : {0, 2, 4}) {
    CHECK(static_cast<double>(counts[y]) / kDraws ==
          doctest::Approx(1.0 / 3.0).epsilon(0.02));
  }
}

TEST_CASE("table family: JSON parsing, lookup, and hard error on missing state") {
  const std::string json = R"({
    "": [[0, 0.5], [1, 0.5]],
    "1": [[0, 0.25], [2, 0.75]]
  })";
  TableFamily family = TableFamily::from_json_text(json);
  CHECK(family.pmf(ParticleConfig{}, 0) == doctest::Approx(0.5));
  CHECK(family.pmf(ParticleConfig({1}), 2) == doctest::Approx(0.75));
  CHECK(family.pmf(ParticleConfig({1}), 1) == 0.0);
  CHECK(family.support_bound(ParticleConfig({1})) == Height{3});
  CHECK_THROWS_AS(family.pmf(ParticleConfig({4}), 0), std::invalid_argument);

  RandomStream stream(3);
  std::map<Height, int> counts;
  for (int i = 0; i < 200000; ++i) ++counts[family.sample(ParticleConfig({1}), stream)];
  CHECK(static_cast<double>(counts[0]) / 200000 == doctest::Approx(0.25).epsilon(0.03));
  CHECK(static_cast<double>(counts[2]) / 200000 == doctest::Approx(0.75).epsilon(0.01));
}

TEST_CASE("check_noncolliding flags exclusion violations") {
  std::vector<ParticleConfig> states = states_up_to(8, 3);

  MemorylessFamily memoryless(0.5);
  CHECK(check_noncolliding(memoryless, states).ok());

  std::vector<ParticleConfig> boxed;
  for (const ParticleConfig& s : all_subsets(5, 2)) boxed.push_back(s);
  BoundedUniformFamily uniform(6);
  CHECK(check_noncolliding(uniform, boxed).ok());

  // nu_{{1}}(1) = 0.1 puts mass on an occupied site.
  TableFamily bad = TableFamily::from_json_text(R"({"1": [[0, 0.5], [1, 0.1], [2, 0.4]]})");
  std::vector<ParticleConfig> one{ParticleConfig({1})};
  FamilyCheckReport report = check_noncolliding(bad, one);
  REQUIRE_FALSE(report.ok());
  CHECK(report.violations.front().state == ParticleConfig({1}));
}

TEST_CASE("check_aperiodicity requires mass on the lowest free site") {
  std::vector<ParticleConfig> states = states_up_to(8, 3);
  CHECK(check_aperiodicity(MemorylessFamily(0.9), states).ok());
  CHECK(check_aperiodicity(BoundedUniformFamily(9), states).ok());

  // All mass far above min B^c.
  TableFamily skewed = TableFamily::from_json_text(R"({"1": [[5, 1.0]]})");
  std::vector<ParticleConfig> one{ParticleConfig({1})};
  CHECK_FALSE(check_aperiodicity(skewed, one).ok());
}

TEST_CASE("tail_first_moment diagnostic") {
  std::vector<ParticleConfig> empty_only{ParticleConfig{}};

  // Geometric tail moment sum_{x>K} x (1-a) a^x = a^{K+1}((K+1) - K a)/(1-a):
  // at a = 1/2, K = 30 this is exactly 2^-26.
  double reported = tail_first_moment(MemorylessFamily(0.5), 30, empty_only);
  CHECK(reported == doctest::Approx(std::pow(2.0, -26.0)).epsilon(1e-9));
  CHECK(reported < 1e-7);

  TableFamily point = TableFamily::from_json_text(R"({"": [[0, 1.0]]})");
  CHECK(tail_first_moment(point, 10, empty_only) == 0.0);

  std::vector<ParticleConfig> states = states_up_to(6, 2);
  double at_10 = tail_first_moment(MemorylessFamily(0.9), 10, states);
  double at_20 = tail_first_moment(MemorylessFamily(0.9), 20, states);
  CHECK(at_10 >= at_20);
  CHECK(at_20 > 0.0);
}

namespace {

// Quadratic-tail family: total mass converges, first moment does not.
class HeavyTailFamily final : public JumpFamily {
 public:
  double pmf(const ParticleConfig& avoid, Height y) const override {
    if (y < 0 || avoid.contains(y)) return 0.0;
    double z = static_cast<double>(y) + 1.0;
    return (6.0 / (std::acos(-1.0) * std::acos(-1.0))) / (z * z);
  }
  Height sample(const ParticleConfig&, RandomStream&) const override { return 0; }
  std::optional<Height> support_bound(const ParticleConfig&) const override {
    return std::nullopt;
  }
  std::string name() const override { return "heavy-tail"; }
};

}  // namespace

TEST_CASE("tail_first_moment rejects families without a summable first moment") {
  std::vector<ParticleConfig> empty_only{ParticleConfig{}};
  CHECK_THROWS_AS(tail_first_moment(HeavyTailFamily{}, 5, empty_only), NumericalError);
}

TEST_CASE("sample consumes exactly one draw regardless of family") {
  ParticleConfig b({0, 2});
  auto position_after = [&b](const JumpFamily& family) {
    RandomStream stream(123);
    family.sample(b, stream);
    return stream.state();
  };
  RandomStream reference(123);
  reference.next_u64();
  std::uint64_t expected = reference.state();

  CHECK(position_after(MemorylessFamily(0.5)) == expected);
  CHECK(position_after(BoundedUniformFamily(6)) == expected);
  TableFamily table = TableFamily::from_json_text(R"({"0,2": [[1, 0.5], [3, 0.5]]})");
  CHECK(position_after(table) == expected);
}
