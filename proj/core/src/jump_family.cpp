#include "jep/jump_family.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "jep/errors.hpp"
#include "json.hpp"

namespace jep {

namespace {

// Adaptive summation cap for families with unbounded support.
constexpr Height kSummationCap = 1 << 22;

}  // namespace

// ---- MemorylessFamily ------------------------------------------------------

MemorylessFamily::MemorylessFamily(double alpha) : alpha_(alpha) {
  require_alpha(alpha);
}

double MemorylessFamily::pmf(const ParticleConfig& avoid, Height y) const {
  return memoryless_pmf(avoid, alpha_, y);
}

Height MemorylessFamily::sample(const ParticleConfig& avoid, RandomStream& stream) const {
  return sample_memoryless(avoid, alpha_, stream);
}

std::string MemorylessFamily::name() const {
  return "memoryless(alpha=" + std::to_string(alpha_) + ")";
}

double MemorylessFamily::tail_mass(const ParticleConfig& avoid, Height t) const {
  return std::pow(alpha_, static_cast<double>(count_below(avoid, t)));
}

double memoryless_pmf(const ParticleConfig& avoid, double alpha, Height y) {
  require_alpha(alpha);
  if (y < 0 || avoid.contains(y)) return 0.0;
  return (1.0 - alpha) * std::pow(alpha, static_cast<double>(count_below(avoid, y)));
}

Height sample_memoryless(const ParticleConfig& avoid, double alpha, RandomStream& stream) {
  return avoiding_shift(avoid, stream.next_geometric(alpha));
}

Height sample_memoryless(const ParticleConfig& avoid, GeometricStream& stream) {
  return avoiding_shift(avoid, stream.next());
}

// ---- BoundedUniformFamily ----------------------------------------------------

BoundedUniformFamily::BoundedUniformFamily(Height m) : m_(m) {
  if (m < 1) throw std::invalid_argument("BoundedUniformFamily: M must be >= 1");
}

void BoundedUniformFamily::require_valid(const ParticleConfig& avoid) const {
  if (static_cast<Height>(avoid.size()) >= m_) {
    throw std::invalid_argument("bounded-uniform family: no free site in [0, M-1]");
  }
  if (!avoid.empty() && avoid.max() >= m_) {
    throw std::invalid_argument("bounded-uniform family: avoid-set not within [0, M-1]");
  }
}

double BoundedUniformFamily::pmf(const ParticleConfig& avoid, Height y) const {
  require_valid(avoid);
  if (y < 0 || y >= m_ || avoid.contains(y)) return 0.0;
  return 1.0 / static_cast<double>(m_ - static_cast<Height>(avoid.size()));
}

Height BoundedUniformFamily::sample(const ParticleConfig& avoid, RandomStream& stream) const {
  require_valid(avoid);
  auto free_sites = static_cast<std::uint64_t>(m_ - static_cast<Height>(avoid.size()));
  // One uniform variate picks the k-th free site.
  Height k = static_cast<Height>(stream.next_index(free_sites));
  return avoiding_shift(avoid, k);
}

std::string BoundedUniformFamily::name() const {
  return "bounded-uniform(M=" + std::to_string(m_) + ")";
}

double bounded_uniform_pmf(const ParticleConfig& avoid, Height m, Height y) {
  return BoundedUniformFamily(m).pmf(avoid, y);
}

// ---- TableFamily -------------------------------------------------------------

TableFamily::TableFamily(std::map<ParticleConfig, Row> rows) : rows_(std::move(rows)) {
  for (auto& [state, row] : rows_) {
    if (!std::is_sorted(row.begin(), row.end(),
                        [](const auto& a, const auto& b) { return a.first < b.first; })) {
      std::sort(row.begin(), row.end());
    }
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (row[i].first < 0) throw std::invalid_argument("table family: negative height");
      if (row[i].second < 0.0) throw std::invalid_argument("table family: negative probability");
      if (i > 0 && row[i].first == row[i - 1].first) {
        throw std::invalid_argument("table family: duplicate height in row " + state.to_string());
      }
    }
  }
}

TableFamily TableFamily::from_json_text(const std::string& text) {
  nlohmann::json doc = nlohmann::json::parse(text);
  if (!doc.is_object()) throw std::invalid_argument("table family: top-level JSON object expected");
  std::map<ParticleConfig, Row> rows;
  for (auto it = doc.begin(); it != doc.end(); ++it) {
    ParticleConfig state = ParticleConfig::parse(it.key());
    Row row;
    for (const auto& pair : it.value()) {
      if (!pair.is_array() || pair.size() != 2) {
        throw std::invalid_argument("table family: rows must be arrays of [y, probability]");
      }
      row.emplace_back(pair[0].get<Height>(), pair[1].get<double>());
    }
    rows.emplace(std::move(state), std::move(row));
  }
  return TableFamily(std::move(rows));
}

TableFamily TableFamily::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("table family: cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return from_json_text(buffer.str());
}

const TableFamily::Row& TableFamily::row(const ParticleConfig& avoid) const {
  auto it = rows_.find(avoid);
  if (it == rows_.end()) {
    throw std::invalid_argument("table family: no jump distribution for state {" +
                                avoid.to_string() + "}");
  }
  return it->second;
}

double TableFamily::pmf(const ParticleConfig& avoid, Height y) const {
  for (const auto& [height, prob] : row(avoid)) {
    if (height == y) return prob;
  }
  return 0.0;
}

Height TableFamily::sample(const ParticleConfig& avoid, RandomStream& stream) const {
  const Row& r = row(avoid);
  if (r.empty()) {
    throw std::invalid_argument("table family: empty row for state {" + avoid.to_string() + "}");
  }
  double total = 0.0;
  for (const auto& [height, prob] : r) total += prob;
  double u = stream.next_unit() * total;
  double cum = 0.0;
  for (const auto& [height, prob] : r) {
    cum += prob;
    if (u <= cum) return height;
  }
  return r.back().first;  // guard against roundoff at u ~ total
}

std::optional<Height> TableFamily::support_bound(const ParticleConfig& avoid) const {
  const Row& r = row(avoid);
  return r.empty() ? 0 : r.back().first + 1;
}

std::string TableFamily::name() const { return "table"; }

// ---- structural checks -------------------------------------------------------

FamilyCheckReport check_noncolliding(const JumpFamily& family,
                                     std::span<const ParticleConfig> states,
                                     double mass_tol) {
  FamilyCheckReport report;
  for (const ParticleConfig& state : states) {
    for (Height y : state) {
      double p = family.pmf(state, y);
      if (p != 0.0) {
        report.violations.push_back(
            {state, "mass " + std::to_string(p) + " on occupied site " + std::to_string(y)});
      }
    }
    std::optional<Height> bound = family.support_bound(state);
    double mass = 0.0;
    Height cutoff = bound.value_or(kSummationCap);
    bool converged = bound.has_value();
    for (Height y = 0; y < cutoff; ++y) {
      mass += family.pmf(state, y);
      if (!bound && 1.0 - mass < mass_tol * 1e-3) {
        converged = true;
        break;
      }
    }
    if (!converged) {
      report.violations.push_back({state, "mass did not accumulate to 1 within summation cap"});
    } else if (bound ? std::abs(mass - 1.0) > mass_tol : mass - 1.0 > mass_tol) {
      // For unbounded support the partial sum is a lower bound on the true
      // mass, so only an excess can be flagged here; a deficit would have
      // tripped the summation cap above.
      report.violations.push_back(
          {state, "total mass " + std::to_string(mass) + " deviates from 1"});
    }
  }
  return report;
}

FamilyCheckReport check_aperiodicity(const JumpFamily& family,
                                     std::span<const ParticleConfig> states) {
  FamilyCheckReport report;
  for (const ParticleConfig& state : states) {
    Height lowest_free = avoiding_shift(state, 0);
    if (!(family.pmf(state, lowest_free) > 0.0)) {
      report.violations.push_back(
          {state, "no mass on lowest free site " + std::to_string(lowest_free)});
    }
  }
  return report;
}

double tail_first_moment(const JumpFamily& family, Height k,
                         std::span<const ParticleConfig> states) {
  double worst = 0.0;
  for (const ParticleConfig& state : states) {
    std::optional<Height> bound = family.support_bound(state);
    double moment = 0.0;
    if (bound) {
      for (Height x = k + 1; x < *bound; ++x) {
        moment += static_cast<double>(x) * family.pmf(state, x);
      }
    } else {
      double cdf = 0.0;
      for (Height x = 0; x <= k; ++x) cdf += family.pmf(state, x);
      bool converged = false;
      for (Height x = k + 1; x < kSummationCap; ++x) {
        double p = family.pmf(state, x);
        moment += static_cast<double>(x) * p;
        cdf += p;
        double tail = 1.0 - cdf;
        if (tail < 1e-16 && tail * static_cast<double>(x) < 1e-14) {
          converged = true;
          break;
        }
      }
      if (!converged) {
        throw NumericalError("tail_first_moment: tail of " + family.name() +
                             " not summable within truncation tolerance at {" +
                             state.to_string() + "}");
      }
    }
    worst = std::max(worst, moment);
  }
  return worst;
}

std::vector<ParticleConfig> all_subsets(Height max_height, std::size_t size) {
  std::vector<ParticleConfig> out;
  if (size == 0) {
    out.emplace_back();
    return out;
  }
  if (static_cast<Height>(size) > max_height + 1) return out;
  std::vector<Height> current(size);
  for (std::size_t i = 0; i < size; ++i) current[i] = static_cast<Height>(i);
  while (true) {
    out.emplace_back(std::vector<Height>(current));
    // colex successor within [0, max_height]
    std::size_t i = 0;
    while (i + 1 < size && current[i] + 1 == current[i + 1]) ++i;
    if (current[i] + 1 > max_height) break;
    ++current[i];
    for (std::size_t j = 0; j < i; ++j) current[j] = static_cast<Height>(j);
  }
  return out;
}

}  // namespace jep
