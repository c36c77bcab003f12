#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <string_view>

namespace cdsnet {

// Firms, banks and insurers.
enum class Sector : std::uint8_t { F = 0, B = 1, I = 2 };

inline constexpr std::size_t kSectorCount = 3;
inline constexpr std::array<Sector, kSectorCount> kSectors{Sector::F, Sector::B, Sector::I};

template <class T>
using PerSector = std::array<T, kSectorCount>;

constexpr std::size_t index(Sector s) noexcept { return static_cast<std::size_t>(s); }

std::string_view to_string(Sector s) noexcept;

// Accepts "F", "B", "I" (case-insensitive). Throws ParseError otherwise.
Sector parse_sector(std::string_view text);

}  // namespace cdsnet
