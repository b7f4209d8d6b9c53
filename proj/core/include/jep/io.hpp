#ifndef JEP_IO_HPP
#define JEP_IO_HPP

#include <iosfwd>
#include <span>
#include <string>

#include "jep/exact.hpp"
#include "jep/gibbs.hpp"
#include "jep/harness.hpp"
#include "jep/particle_config.hpp"
#include "jep/process.hpp"

namespace jep {

// Shortest round-trip decimal form; byte-deterministic for identical doubles.
std::string format_double(double value);

// One record per step: {"t": 3, "state": [0,2,5]}.
void write_trajectory_jsonl(std::ostream& out, const Trajectory& trajectory);
void write_trajectory_record(std::ostream& out, std::int64_t t, const ParticleConfig& state);

// One record per drawn sample: {"i": 12, "state": [0,2,5]}.
void write_sample_record(std::ostream& out, std::uint64_t index, const ParticleConfig& state);

// Header "state,probability"; states quoted ("0,2,3").
void write_distribution_csv(std::ostream& out, const TruncatedStateSpace& space,
                            std::span<const double> probabilities);
void write_distribution_csv(std::ostream& out, const EmpiricalSetDistribution& empirical);

// Full dump: states as sorted arrays, rows as [col, prob] pairs, escaped
// mass per row.
void write_matrix_json(std::ostream& out, const TruncatedStateSpace& space,
                       const StochasticMatrix& matrix);

// Stats record with a fixed field order.
void write_stats_json(std::ostream& out, const EquilibriumStats& stats);

}  // namespace jep

#endif
