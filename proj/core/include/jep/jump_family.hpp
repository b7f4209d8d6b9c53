#ifndef JEP_JUMP_FAMILY_HPP
#define JEP_JUMP_FAMILY_HPP

#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "jep/particle_config.hpp"
#include "jep/rng.hpp"

namespace jep {

/// Family of jump-height distributions nu_B indexed by the avoid-set B.
/// Contract: pmf(B, y) = 0 for every y in B (exclusion), total mass 1,
/// and sample() consumes exactly one unit draw from the stream so that
/// trajectories stay reproducible across family swaps.
class JumpFamily {
 public:
  virtual ~JumpFamily() = default;

  virtual double pmf(const ParticleConfig& avoid, Height y) const = 0;

  virtual Height sample(const ParticleConfig& avoid, RandomStream& stream) const = 0;

  // Exclusive upper bound of the support of nu_B, when finite.
  virtual std::optional<Height> support_bound(const ParticleConfig& avoid) const = 0;

  virtual std::string name() const = 0;
};

/// Memoryless distribution on B^c: nu_B(y) = (1-alpha) * alpha^{h_B(y)}.
/// Tail identity nu_B[t, inf) = alpha^{h_B(t)}.
class MemorylessFamily final : public JumpFamily {
 public:
  explicit MemorylessFamily(double alpha);

  double pmf(const ParticleConfig& avoid, Height y) const override;
  Height sample(const ParticleConfig& avoid, RandomStream& stream) const override;
  std::optional<Height> support_bound(const ParticleConfig&) const override {
    return std::nullopt;
  }
  std::string name() const override;

  double alpha() const { return alpha_; }

  // nu_B[t, inf) in closed form.
  double tail_mass(const ParticleConfig& avoid, Height t) const;

 private:
  double alpha_;
};

/// Uniform jumps into the unoccupied sites of [0, M-1].
class BoundedUniformFamily final : public JumpFamily {
 public:
  explicit BoundedUniformFamily(Height m);

  double pmf(const ParticleConfig& avoid, Height y) const override;
  Height sample(const ParticleConfig& avoid, RandomStream& stream) const override;
  std::optional<Height> support_bound(const ParticleConfig&) const override { return m_; }
  std::string name() const override;

  Height bound() const { return m_; }

 private:
  // Throws unless |B| < M and B within [0, M-1].
  void require_valid(const ParticleConfig& avoid) const;

  Height m_;
};

/// Explicit per-set jump tables. A set not present in the table is a hard
/// error at lookup time, never a silent fallback.
class TableFamily final : public JumpFamily {
 public:
  using Row = std::vector<std::pair<Height, double>>;  // sorted by height

  explicit TableFamily(std::map<ParticleConfig, Row> rows);

  // JSON schema: {"0,2,3": [[y, prob], ...], ...}; key "" is the empty set.
  static TableFamily from_json_text(const std::string& text);
  static TableFamily from_file(const std::string& path);

  double pmf(const ParticleConfig& avoid, Height y) const override;
  Height sample(const ParticleConfig& avoid, RandomStream& stream) const override;
  std::optional<Height> support_bound(const ParticleConfig& avoid) const override;
  std::string name() const override;

 private:
  const Row& row(const ParticleConfig& avoid) const;

  std::map<ParticleConfig, Row> rows_;
};

// ---- family-level free functions -------------------------------------------

// sample_memoryless(B, alpha, stream) = theta_B(xi) for one geometric draw.
Height sample_memoryless(const ParticleConfig& avoid, double alpha, RandomStream& stream);
Height sample_memoryless(const ParticleConfig& avoid, GeometricStream& stream);

double memoryless_pmf(const ParticleConfig& avoid, double alpha, Height y);

double bounded_uniform_pmf(const ParticleConfig& avoid, Height m, Height y);

// ---- structural checks ------------------------------------------------------

struct FamilyViolation {
  ParticleConfig state;
  std::string message;
};

struct FamilyCheckReport {
  std::vector<FamilyViolation> violations;
  bool ok() const { return violations.empty(); }
};

// Exclusion + total-mass check over the supplied states (tolerance absolute).
FamilyCheckReport check_noncolliding(const JumpFamily& family,
                                     std::span<const ParticleConfig> states,
                                     double mass_tol = 1e-12);

// Aperiodicity condition: nu_B(min B^c) > 0 for every supplied B.
FamilyCheckReport check_aperiodicity(const JumpFamily& family,
                                     std::span<const ParticleConfig> states);

// Uniform-integrability diagnostic: max over supplied B of sum_{x>K} x nu_B(x).
// Necessary-condition scan only: the paper's supremum runs over all of S_{n-1},
// a finite diagnostic can only cover the states it is given.
double tail_first_moment(const JumpFamily& family, Height k,
                         std::span<const ParticleConfig> states);

// All subsets of [0, max_height] with exactly the given size, in colex order.
// Handy for exhaustive family checks on small state lists.
std::vector<ParticleConfig> all_subsets(Height max_height, std::size_t size);

}  // namespace jep

#endif
