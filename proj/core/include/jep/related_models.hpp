#ifndef JEP_RELATED_MODELS_HPP
#define JEP_RELATED_MODELS_HPP

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <vector>

#include "jep/exact.hpp"
#include "jep/particle_config.hpp"
#include "jep/rng.hpp"

namespace jep {

using BigInt = boost::multiprecision::cpp_int;

// Stirling partition number S(a, b), exact integer arithmetic via the
// recurrence S(a, b) = b S(a-1, b) + S(a-1, b-1). Requires 1 <= b <= a.
BigInt stirling2(int a, int b);

// Equilibrium of the bounded JEP with uniform jumps into [0, M-1]:
// mu(B) = Z^{-1} prod_{x in B} (1 + |[x+1, M-1] \ B|), Z = S(M+1, M+1-n).
double warrington_pmf(int n, Height m, const ParticleConfig& b);

/// Finite continuous-time ASEP with a reflecting boundary at zero.
/// Up-jumps at rate lambda, down-jumps at rate eta, attempts onto occupied
/// sites or below zero suppressed. Stable when 0 < lambda < eta.
struct AsepParams {
  int n;
  double lambda;  // up rate
  double eta;     // down rate

  void validate() const;  // throws std::invalid_argument
  double ratio() const { return lambda / eta; }
};

struct AsepSimStats {
  std::uint64_t attempts = 0;
  std::uint64_t executed = 0;
};

// Event-driven simulation to time t_end: exponential clocks over the
// aggregate attempt rate n (lambda + eta), suppression applied after target
// selection. Returns the state at t_end.
ParticleConfig asep_simulate(const AsepParams& params, const ParticleConfig& x0,
                             double t_end, RandomStream& stream,
                             AsepSimStats* stats = nullptr);

// Off-diagonal jump rates of the truncated generator (up-jumps past
// h_max - 1 suppressed, which preserves reversibility on the box).
std::vector<std::vector<MatrixEntry>> asep_jump_rates(const AsepParams& params,
                                                      const TruncatedStateSpace& space);

// Exact stationary law of the truncated CTMC: solves pi Q = 0. Requires the
// truncation tail (lambda/eta)^{h_max - n} to be below tail_tol.
DistVector asep_stationary_exact(const AsepParams& params, const TruncatedStateSpace& space,
                                 double tail_tol = 1e-10);

}  // namespace jep

#endif
