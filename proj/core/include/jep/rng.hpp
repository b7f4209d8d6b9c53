#ifndef JEP_RNG_HPP
#define JEP_RNG_HPP

#include <cstdint>

namespace jep {

/// Deterministic uniform source (splitmix64). Independent sub-streams are
/// derived by split() with distinct labels; a stream's output depends only
/// on its seed and label chain, never on how much a parent has consumed.
/// Single-owner: do not share one stream across threads.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed);

  // Independent sub-stream for (this stream's identity, label).
  RandomStream split(std::uint64_t label) const;

  std::uint64_t next_u64();

  // Uniform on (0, 1]; never returns 0, so log() is always finite.
  double next_unit();

  // Uniform index in [0, bound). Maps a single unit draw; bound >= 1.
  std::uint64_t next_index(std::uint64_t bound);

  // Geometric variate, P(k) = (1-alpha) * alpha^k for k >= 0, by inversion:
  // floor(log u / log alpha). Consumes exactly one unit draw.
  std::int64_t next_geometric(double alpha);

  // Exponential variate with the given rate. Consumes one unit draw.
  double next_exponential(double rate);

  std::uint64_t state() const { return state_; }

 private:
  RandomStream(std::uint64_t identity, std::uint64_t state)
      : identity_(identity), state_(state) {}

  std::uint64_t identity_;  // immutable stream id, used by split()
  std::uint64_t state_;     // advances with each draw
};

/// Reproducible source of geometric variates with a fixed parameter,
/// convention P(xi = k) = (1-alpha) * alpha^k, k >= 0.
class GeometricStream {
 public:
  GeometricStream(std::uint64_t seed, double alpha);
  GeometricStream(RandomStream stream, double alpha);

  std::int64_t next() { return stream_.next_geometric(alpha_); }
  GeometricStream split(std::uint64_t label) const {
    return GeometricStream(stream_.split(label), alpha_);
  }

  double alpha() const { return alpha_; }
  RandomStream& stream() { return stream_; }

 private:
  RandomStream stream_;
  double alpha_;
};

// Throws std::invalid_argument unless 0 < alpha < 1.
void require_alpha(double alpha);

}  // namespace jep

#endif
