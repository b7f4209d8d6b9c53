#include "jep/process.hpp"

#include <stdexcept>

namespace jep {

ParticleConfig step(const ParticleConfig& state, const JumpFamily& family,
                    RandomStream& stream) {
  if (state.empty()) throw std::invalid_argument("step: empty configuration");
  if (!state.contains(0)) {
    return shift_down(state, 1);
  }
  ParticleConfig rest = shift_down(delete_min(state), 1);
  Height y = family.sample(rest, stream);
  return with_inserted(rest, y);
}

Trajectory simulate(const ParticleConfig& x0, const JumpFamily& family,
                    std::int64_t horizon, std::uint64_t seed) {
  if (horizon < 1) throw std::invalid_argument("simulate: horizon must be >= 1");
  Trajectory out;
  out.initial = x0;
  out.seed = seed;
  out.states.reserve(static_cast<std::size_t>(horizon) + 1);
  RandomStream stream(seed);
  simulate_visit(x0, family, horizon, stream,
                 [&out](std::int64_t, const ParticleConfig& s) { out.states.push_back(s); });
  return out;
}

void simulate_visit(const ParticleConfig& x0, const JumpFamily& family,
                    std::int64_t horizon, RandomStream& stream,
                    const std::function<void(std::int64_t, const ParticleConfig&)>& visit) {
  ParticleConfig state = x0;
  visit(0, state);
  for (std::int64_t t = 1; t <= horizon; ++t) {
    state = step(state, family, stream);
    visit(t, state);
  }
}

std::vector<std::int64_t> jump_times(const ParticleConfig& a) {
  if (a.empty()) throw std::invalid_argument("jump_times: empty configuration");
  std::vector<std::int64_t> taus;
  taus.reserve(a.size());
  // The k-th smallest initial particle reaches zero and jumps one step later.
  for (Height x : a) taus.push_back(x + 1);
  return taus;
}

ParticleConfig transient_law_sample(const ParticleConfig& a, double alpha,
                                    std::int64_t t, RandomStream& stream) {
  require_alpha(alpha);
  if (a.empty()) throw std::invalid_argument("transient_law_sample: empty configuration");
  if (t < 0) throw std::invalid_argument("transient_law_sample: negative time");

  std::vector<std::int64_t> taus = jump_times(a);
  std::size_t jumped = 0;  // k with tau_k <= t < tau_{k+1}
  while (jumped < taus.size() && taus[jumped] <= t) ++jumped;

  std::vector<Height> draws(jumped);
  for (Height& xi : draws) xi = stream.next_geometric(alpha);

  if (jumped == a.size()) {
    return noncolliding_union(ParticleConfig{}, draws);
  }
  ParticleConfig remaining(std::vector<Height>(a.begin() + static_cast<std::ptrdiff_t>(jumped),
                                               a.end()));
  return noncolliding_union(shift_down(remaining, t), draws);
}

}  // namespace jep
