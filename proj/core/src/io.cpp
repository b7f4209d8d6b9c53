#include "jep/io.hpp"

#include <charconv>
#include <cmath>
#include <ostream>

namespace jep {

std::string format_double(double value) {
  char buffer[32];
  auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
  return std::string(buffer, ptr);
}

namespace {

void write_state_array(std::ostream& out, const ParticleConfig& state) {
  out << '[';
  bool first = true;
  for (Height x : state) {
    if (!first) out << ',';
    out << x;
    first = false;
  }
  out << ']';
}

}  // namespace

void write_trajectory_record(std::ostream& out, std::int64_t t, const ParticleConfig& state) {
  out << "{\"t\":" << t << ",\"state\":";
  write_state_array(out, state);
  out << "}\n";
}

void write_sample_record(std::ostream& out, std::uint64_t index, const ParticleConfig& state) {
  out << "{\"i\":" << index << ",\"state\":";
  write_state_array(out, state);
  out << "}\n";
}

void write_trajectory_jsonl(std::ostream& out, const Trajectory& trajectory) {
  for (std::size_t t = 0; t < trajectory.states.size(); ++t) {
    write_trajectory_record(out, static_cast<std::int64_t>(t), trajectory.states[t]);
  }
}

void write_distribution_csv(std::ostream& out, const TruncatedStateSpace& space,
                            std::span<const double> probabilities) {
  out << "state,probability\n";
  for (std::size_t i = 0; i < space.size(); ++i) {
    out << '"' << space.state(i).to_string() << "\"," << format_double(probabilities[i]) << '\n';
  }
}

void write_distribution_csv(std::ostream& out, const EmpiricalSetDistribution& empirical) {
  out << "state,probability\n";
  for (const auto& [state, count] : empirical.counts()) {
    double p = static_cast<double>(count) / static_cast<double>(empirical.total());
    out << '"' << state.to_string() << "\"," << format_double(p) << '\n';
  }
}

void write_matrix_json(std::ostream& out, const TruncatedStateSpace& space,
                       const StochasticMatrix& matrix) {
  out << "{\"n\":" << space.particle_count() << ",\"h_max\":" << space.height_bound()
      << ",\"states\":[";
  for (std::size_t i = 0; i < space.size(); ++i) {
    if (i > 0) out << ',';
    write_state_array(out, space.state(i));
  }
  out << "],\"rows\":[";
  for (std::size_t i = 0; i < matrix.size(); ++i) {
    if (i > 0) out << ',';
    out << '[';
    bool first = true;
    for (const MatrixEntry& e : matrix.row(i)) {
      if (!first) out << ',';
      out << '[' << e.col << ',' << format_double(e.value) << ']';
      first = false;
    }
    out << ']';
  }
  out << "],\"escaped\":[";
  for (std::size_t i = 0; i < matrix.size(); ++i) {
    if (i > 0) out << ',';
    out << format_double(matrix.escaped(i));
  }
  out << "]}\n";
}

void write_stats_json(std::ostream& out, const EquilibriumStats& stats) {
  out << "{\"n\":" << stats.n << ",\"alpha\":" << format_double(stats.alpha)
      << ",\"beta\":" << format_double(-std::log(stats.alpha))
      << ",\"mean_height\":" << format_double(stats.mean_height)
      << ",\"ground_state_prob\":" << format_double(stats.ground_state_prob)
      << ",\"zero_occupied_prob\":" << format_double(stats.zero_occupied_prob) << "}\n";
}

}  // namespace jep
