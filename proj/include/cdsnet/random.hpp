#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

namespace cdsnet::rng {

// splitmix64 finalizer
constexpr std::uint64_t mix(std::uint64_t z) noexcept {
  z += 0x9E3779B97F4A7C15ull;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

constexpr std::uint64_t key(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0,
                            std::uint64_t c = 0) noexcept {
  return mix(mix(mix(mix(seed) ^ a) ^ b) ^ c);
}

// uniform on (0,1]
inline double unit(std::uint64_t bits) noexcept {
  return (static_cast<double>(bits >> 11) + 1.0) * 0x1.0p-53;
}

// Standard normal draw addressed by a counter: the same (seed, stream, id,
// step) always yields the same value, independent of evaluation order.
inline double normal(std::uint64_t seed, std::uint64_t stream, std::uint64_t id,
                     std::uint64_t step) noexcept {
  const std::uint64_t k = key(seed, stream, id, step);
  const double u1 = unit(mix(k));
  const double u2 = unit(mix(k ^ 0xD1B54A32D192ED03ull));
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

}  // namespace cdsnet::rng
