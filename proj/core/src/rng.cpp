#include "jep/rng.hpp"

#include <cmath>
#include <stdexcept>

namespace jep {

namespace {

// splitmix64 finalizer (Steele, Lea, Flood 2014 / Vigna).
std::uint64_t mix(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;

}  // namespace

RandomStream::RandomStream(std::uint64_t seed)
    : identity_(mix(seed + kGolden)), state_(identity_) {}

RandomStream RandomStream::split(std::uint64_t label) const {
  // Child identity mixes the parent's identity with the label; insensitive
  // to the parent's draw position.
  std::uint64_t child = mix(identity_ ^ mix(label + kGolden));
  return RandomStream(child, child);
}

std::uint64_t RandomStream::next_u64() {
  state_ += kGolden;
  return mix(state_);
}

double RandomStream::next_unit() {
  // 53-bit mantissa, shifted into (0, 1].
  return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
}

std::uint64_t RandomStream::next_index(std::uint64_t bound) {
  if (bound == 0) throw std::invalid_argument("next_index: bound must be >= 1");
  double u = next_unit();
  auto idx = static_cast<std::uint64_t>(u * static_cast<double>(bound));
  return idx >= bound ? bound - 1 : idx;  // u == 1 maps to the last cell
}

std::int64_t RandomStream::next_geometric(double alpha) {
  require_alpha(alpha);
  double u = next_unit();
  // P(xi >= k) = alpha^k  <=>  xi = floor(log u / log alpha).
  return static_cast<std::int64_t>(std::floor(std::log(u) / std::log(alpha)));
}

double RandomStream::next_exponential(double rate) {
  if (!(rate > 0.0)) throw std::invalid_argument("next_exponential: rate must be positive");
  return -std::log(next_unit()) / rate;
}

GeometricStream::GeometricStream(std::uint64_t seed, double alpha)
    : stream_(seed), alpha_(alpha) {
  require_alpha(alpha);
}

GeometricStream::GeometricStream(RandomStream stream, double alpha)
    : stream_(stream), alpha_(alpha) {
  require_alpha(alpha);
}

void require_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw std::invalid_argument("alpha must lie in the open interval (0, 1)");
  }
}

}  // namespace jep
