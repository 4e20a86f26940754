#pragma once

#include <cstdint>

namespace cml::detail {

__extension__ typedef unsigned __int128 u128;

inline std::int64_t mod_floor(std::int64_t a, std::int64_t m) {
  const std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

// (a * b) mod m for m > 0, any signs of a, b.
inline std::int64_t mulmod(std::int64_t a, std::int64_t b, std::int64_t m) {
  const auto ua = static_cast<std::uint64_t>(mod_floor(a, m));
  const auto ub = static_cast<std::uint64_t>(mod_floor(b, m));
  return static_cast<std::int64_t>((static_cast<u128>(ua) * ub) % static_cast<std::uint64_t>(m));
}

// a * b clamped to UINT64_MAX.
inline std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b) {
  const u128 p = static_cast<u128>(a) * b;
  return p > UINT64_MAX ? UINT64_MAX : static_cast<std::uint64_t>(p);
}

}  // namespace cml::detail
