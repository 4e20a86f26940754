#include <algorithm>
#include <cmath>
#include <cstring>

#include "cml/arith.hpp"

namespace cml {
namespace detail {

namespace {

constexpr std::size_t kSegmentOdds = std::size_t{1} << 15;  // 32 KiB of flags

std::uint64_t isqrt(std::uint64_t n) {
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
  while (r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

}  // namespace

// Segmented sieve over odd numbers only. Segment k covers the odd numbers
// low, low+2, ..., with low = 3 + 2*k*kSegmentOdds.
void sieve_segments(std::uint64_t limit,
                    void (*sink)(void* ctx, std::uint64_t low, const std::uint8_t* flags,
                                 std::size_t count),
                    void* ctx) {
  if (limit < 3) return;
  const std::uint64_t root = isqrt(limit);

  // Odd sieving primes up to sqrt(limit), by a plain sieve.
  std::vector<std::uint8_t> small(root + 1, 1);
  std::vector<std::uint64_t> sieving;
  for (std::uint64_t i = 3; i <= root; i += 2) {
    if (!small[i]) continue;
    sieving.push_back(i);
    for (std::uint64_t j = i * i; j <= root; j += 2 * i) small[j] = 0;
  }
  // next[k]: first odd multiple of sieving[k] that is >= its square, as a
  // number; advanced segment by segment.
  std::vector<std::uint64_t> next(sieving.size());
  for (std::size_t k = 0; k < sieving.size(); ++k) next[k] = sieving[k] * sieving[k];

  std::vector<std::uint8_t> flags(kSegmentOdds);
  for (std::uint64_t low = 3; low <= limit; low += 2 * kSegmentOdds) {
    const std::uint64_t high = std::min(limit, low + 2 * (kSegmentOdds - 1));
    const std::size_t count = static_cast<std::size_t>((high - low) / 2 + 1);
    std::fill(flags.begin(), flags.begin() + static_cast<std::ptrdiff_t>(count), 1);
    for (std::size_t k = 0; k < sieving.size(); ++k) {
      const std::uint64_t p = sieving[k];
      if (p * p > high) break;
      std::uint64_t m = next[k];
      for (; m <= high; m += 2 * p) flags[(m - low) / 2] = 0;
      next[k] = m;
    }
    sink(ctx, low, flags.data(), count);
  }
}

}  // namespace detail

std::vector<std::uint64_t> sieve_primes(std::uint64_t limit) {
  std::vector<std::uint64_t> primes;
  if (limit >= 100) {
    // pi(x) < 1.26 x / log x
    const double x = static_cast<double>(limit);
    primes.reserve(static_cast<std::size_t>(1.26 * x / std::log(x)) + 16);
  }
  for_each_prime(limit, [&](std::uint64_t p) { primes.push_back(p); });
  return primes;
}

PrimeBitmap::PrimeBitmap(std::uint64_t limit) : limit_(limit) {
  const std::uint64_t odd_slots = limit / 2 + 1;
  bits_.assign(static_cast<std::size_t>((odd_slots + 63) / 64), 0);
  auto sink = [](void* ctx, std::uint64_t low, const std::uint8_t* flags, std::size_t count) {
    auto& bits = *static_cast<std::vector<std::uint64_t>*>(ctx);
    for (std::size_t i = 0; i < count; ++i) {
      if (!flags[i]) continue;
      const std::uint64_t slot = (low + 2 * i) / 2;
      bits[slot / 64] |= std::uint64_t{1} << (slot % 64);
    }
  };
  detail::sieve_segments(limit, sink, &bits_);
}

bool PrimeBitmap::is_prime(std::uint64_t n) const {
  if (n > limit_) return false;
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  const std::uint64_t slot = n / 2;
  return (bits_[slot / 64] >> (slot % 64)) & 1U;
}

PrimeTable::PrimeTable(std::uint64_t limit) : limit_(limit), primes_(sieve_primes(limit)) {}

bool PrimeTable::contains(std::uint64_t n) const {
  return std::binary_search(primes_.begin(), primes_.end(), n);
}

const PrimeTable& small_prime_table() {
  static const PrimeTable table(1'000'000);
  return table;
}

}  // namespace cml
