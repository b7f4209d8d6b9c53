#ifndef JEP_PARTICLE_CONFIG_HPP
#define JEP_PARTICLE_CONFIG_HPP

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace jep {

using Height = std::int64_t;

/// A finite set of distinct particle heights, stored as a strictly
/// increasing vector of non-negative integers. Immutable value type;
/// every operation returns a new configuration.
class ParticleConfig {
 public:
  ParticleConfig() = default;

  // Throws std::invalid_argument unless elements are strictly increasing
  // and non-negative.
  explicit ParticleConfig(std::vector<Height> sorted_elements);

  // Accepts any order, rejects duplicates and negatives.
  static ParticleConfig from_unsorted(std::vector<Height> elements);

  // Parses "1,4,7" (CLI state literal). Empty string -> empty set.
  static ParticleConfig parse(std::string_view text);

  std::size_t size() const { return elements_.size(); }
  bool empty() const { return elements_.empty(); }
  Height min() const;  // throws on empty set
  Height max() const;  // throws on empty set
  bool contains(Height x) const;
  const std::vector<Height>& elements() const { return elements_; }

  auto begin() const { return elements_.begin(); }
  auto end() const { return elements_.end(); }

  std::string to_string() const;  // "1,4,7"; empty set -> ""

  friend auto operator<=>(const ParticleConfig&, const ParticleConfig&) = default;

 private:
  std::vector<Height> elements_;
};

// ---- core set operations -------------------------------------------------

// A - t, elementwise. Requires min(A) >= t.
ParticleConfig shift_down(const ParticleConfig& a, Height t);

// A + t, elementwise.
ParticleConfig shift_up(const ParticleConfig& a, Height t);

// A* = A \ {min A}. Requires A nonempty.
ParticleConfig delete_min(const ParticleConfig& a);

// h_A(x) = |[0, x-1] \ A|: free sites strictly below x.
Height count_below(const ParticleConfig& a, Height x);

// theta_A(x): the (x+1)-th smallest element of the complement of A.
// Order-preserving bijection from Z+ onto A^c.
Height avoiding_shift(const ParticleConfig& a, Height x);

// A with y inserted. Requires y not already present.
ParticleConfig with_inserted(const ParticleConfig& a, Height y);

// U(A, x_1, ..., x_n): inserts each x_i through the avoiding shift of the
// set built so far, consuming xs left to right.
ParticleConfig noncolliding_union(const ParticleConfig& a, std::span<const Height> xs);

}  // namespace jep

#endif
