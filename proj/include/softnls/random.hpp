#pragma once
//
// Seeded sampling with per-suite, per-index substreams. Every sample draws
// from its own engine, derived from (seed, suite name, sample index), so
// results do not depend on evaluation order.
//

#include <cstddef>
#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

#include "softnls/soft_vector.hpp"

namespace softnls {

namespace detail {

// FNV-1a; std::hash is not stable across standard libraries.
inline constexpr std::uint64_t fnv1a(std::string_view s) noexcept {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (char c : s) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  return h;
}

inline constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace detail

using Engine = std::mt19937_64;

inline Engine substream(std::uint64_t seed, std::string_view tag, std::uint64_t index) {
  const std::uint64_t s = detail::splitmix64(detail::splitmix64(seed ^ detail::fnv1a(tag)) + index);
  return Engine(s);
}

/// Draws soft vectors of a fixed dimension. Components and parameters are
/// i.i.d. N(0, radius^2); structured cases (zero, lifted axes) are available
/// through special().
class Sampler {
 public:
  Sampler(std::size_t dim, std::uint64_t seed, double radius = 1.0) : dim_(dim), seed_(seed), radius_(radius) {
    detail::require(dim >= 1, "sampler dimension must be >= 1");
    detail::require(radius > 0.0 && std::isfinite(radius), "sampler radius must be positive");
  }

  [[nodiscard]] std::size_t dim() const noexcept { return dim_; }
  [[nodiscard]] std::uint64_t seed() const noexcept { return seed_; }
  [[nodiscard]] double radius() const noexcept { return radius_; }

  [[nodiscard]] Engine stream(std::string_view suite, std::uint64_t index) const {
    return substream(seed_, suite, index);
  }

  [[nodiscard]] SoftVector gaussian(Engine& g) const {
    std::normal_distribution<double> nd(0.0, radius_);
    std::vector<double> x(dim_);
    for (auto& v : x) v = nd(g);
    const double e = nd(g);
    return SoftVector(std::move(x), e);
  }

  [[nodiscard]] double scalar(Engine& g) const {
    std::normal_distribution<double> nd(0.0, 2.0);
    return nd(g);
  }

  /// Number of structured vectors: zero plus both signs of every lifted axis.
  [[nodiscard]] std::size_t special_count() const noexcept { return 1 + 2 * (dim_ + 1); }

  /// i == 0 -> zero; then +axis_0, -axis_0, +axis_1, ... scaled by radius.
  [[nodiscard]] SoftVector special(std::size_t i) const {
    detail::require(i < special_count(), "special index out of range");
    if (i == 0) return SoftVector::zero(dim_);
    const std::size_t axis = (i - 1) / 2;
    const double sign = (i - 1) % 2 == 0 ? 1.0 : -1.0;
    std::vector<double> lifted(dim_ + 1, 0.0);
    lifted[axis] = sign * radius_;
    return SoftVector::from_lifted(lifted);
  }

  /// Special vectors for the first special_count() indices, Gaussian after.
  [[nodiscard]] SoftVector at(std::size_t index, Engine& g) const {
    if (index < special_count()) return special(index);
    return gaussian(g);
  }

  /// Like at(), but skips the zero vector.
  [[nodiscard]] SoftVector nonzero(std::size_t index, Engine& g) const {
    if (index > 0 && index < special_count()) return special(index);
    for (;;) {
      auto v = gaussian(g);
      if (!v.is_zero()) return v;
    }
  }

 private:
  std::size_t dim_;
  std::uint64_t seed_;
  double radius_;
};

}  // namespace softnls
