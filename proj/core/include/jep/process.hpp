#ifndef JEP_PROCESS_HPP
#define JEP_PROCESS_HPP

#include <cstdint>
#include <functional>
#include <vector>

#include "jep/jump_family.hpp"
#include "jep/particle_config.hpp"
#include "jep/rng.hpp"

namespace jep {

/// A recorded JEP path: states[t] is the configuration at time t,
/// t = 0 .. T. All states share the initial particle count.
struct Trajectory {
  ParticleConfig initial;
  std::vector<ParticleConfig> states;
  std::uint64_t seed = 0;
};

// One transition: X - 1 while 0 is unoccupied, otherwise delete the particle
// at zero, drift the rest, and jump it to a site drawn from nu_{X*-1}.
// Consumes exactly one stream draw per jump and none on drift steps.
ParticleConfig step(const ParticleConfig& state, const JumpFamily& family,
                    RandomStream& stream);

// Full record of T steps from x0. Bit-reproducible for a given seed.
Trajectory simulate(const ParticleConfig& x0, const JumpFamily& family,
                    std::int64_t horizon, std::uint64_t seed);

// Streaming variant: visit(t, state) is called for t = 0 .. horizon without
// retaining the path.
void simulate_visit(const ParticleConfig& x0, const JumpFamily& family,
                    std::int64_t horizon, RandomStream& stream,
                    const std::function<void(std::int64_t, const ParticleConfig&)>& visit);

// Jump times tau_1 < ... < tau_n: tau_k = min(A_{k-1}) + 1 where A_k drops
// the k smallest elements of A.
std::vector<std::int64_t> jump_times(const ParticleConfig& a);

// Draws from the exact law of X_t for the memoryless JEP started at a:
//   A - t                          t < tau_1
//   U(A_k - t, xi_1..xi_k)         tau_k <= t < tau_{k+1}
//   U(xi_1..xi_n)                  t >= tau_n.
ParticleConfig transient_law_sample(const ParticleConfig& a, double alpha,
                                    std::int64_t t, RandomStream& stream);

}  // namespace jep

#endif
