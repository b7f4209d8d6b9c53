#include "jep/particle_config.hpp"

#include <algorithm>
#include <charconv>
#include <stdexcept>

namespace jep {

ParticleConfig::ParticleConfig(std::vector<Height> sorted_elements)
    : elements_(std::move(sorted_elements)) {
  for (std::size_t i = 0; i < elements_.size(); ++i) {
    if (elements_[i] < 0) {
      throw std::invalid_argument("ParticleConfig: negative height");
    }
    if (i > 0 && elements_[i] <= elements_[i - 1]) {
      throw std::invalid_argument("ParticleConfig: elements must be strictly increasing");
    }
  }
}

ParticleConfig ParticleConfig::from_unsorted(std::vector<Height> elements) {
  std::sort(elements.begin(), elements.end());
  return ParticleConfig(std::move(elements));
}

ParticleConfig ParticleConfig::parse(std::string_view text) {
  std::vector<Height> out;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t comma = text.find(',', pos);
    if (comma == std::string_view::npos) comma = text.size();
    std::string_view token = text.substr(pos, comma - pos);
    Height value = 0;
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc{} || ptr != token.data() + token.size()) {
      throw std::invalid_argument("ParticleConfig::parse: bad token '" + std::string(token) + "'");
    }
    out.push_back(value);
    pos = comma + 1;
  }
  return ParticleConfig(std::move(out));
}

Height ParticleConfig::min() const {
  if (elements_.empty()) throw std::invalid_argument("min of empty configuration");
  return elements_.front();
}

Height ParticleConfig::max() const {
  if (elements_.empty()) throw std::invalid_argument("max of empty configuration");
  return elements_.back();
}

bool ParticleConfig::contains(Height x) const {
  return std::binary_search(elements_.begin(), elements_.end(), x);
}

std::string ParticleConfig::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < elements_.size(); ++i) {
    if (i > 0) out.push_back(',');
    out += std::to_string(elements_[i]);
  }
  return out;
}

ParticleConfig shift_down(const ParticleConfig& a, Height t) {
  if (t < 0) throw std::invalid_argument("shift_down: negative shift");
  if (!a.empty() && a.min() < t) {
    throw std::invalid_argument("shift_down: would create a negative height");
  }
  std::vector<Height> out;
  out.reserve(a.size());
  for (Height x : a) out.push_back(x - t);
  return ParticleConfig(std::move(out));
}

ParticleConfig shift_up(const ParticleConfig& a, Height t) {
  if (t < 0) throw std::invalid_argument("shift_up: negative shift");
  std::vector<Height> out;
  out.reserve(a.size());
  for (Height x : a) out.push_back(x + t);
  return ParticleConfig(std::move(out));
}

ParticleConfig delete_min(const ParticleConfig& a) {
  if (a.empty()) throw std::invalid_argument("delete_min: empty configuration");
  return ParticleConfig(std::vector<Height>(a.begin() + 1, a.end()));
}

Height count_below(const ParticleConfig& a, Height x) {
  if (x <= 0) return 0;
  // |[0,x-1]| minus occupied sites below x.
  auto it = std::lower_bound(a.begin(), a.end(), x);
  return x - static_cast<Height>(it - a.begin());
}

Height avoiding_shift(const ParticleConfig& a, Height x) {
  if (x < 0) throw std::invalid_argument("avoiding_shift: negative index");
  // Walk the sorted avoid-set: every occupied site at or below the running
  // candidate pushes the candidate up by one. Equivalent to the literal
  // min-definition by the inverse identity theta_A^{-1} = h_A.
  Height candidate = x;
  for (Height occupied : a) {
    if (occupied > candidate) break;
    ++candidate;
  }
  return candidate;
}

ParticleConfig with_inserted(const ParticleConfig& a, Height y) {
  if (y < 0) throw std::invalid_argument("with_inserted: negative height");
  if (a.contains(y)) throw std::invalid_argument("with_inserted: site already occupied");
  std::vector<Height> out;
  out.reserve(a.size() + 1);
  auto it = std::lower_bound(a.begin(), a.end(), y);
  out.insert(out.end(), a.begin(), it);
  out.push_back(y);
  out.insert(out.end(), it, a.end());
  return ParticleConfig(std::move(out));
}

ParticleConfig noncolliding_union(const ParticleConfig& a, std::span<const Height> xs) {
  ParticleConfig acc = a;
  for (Height x : xs) {
    acc = with_inserted(acc, avoiding_shift(acc, x));
  }
  return acc;
}

}  // namespace jep
