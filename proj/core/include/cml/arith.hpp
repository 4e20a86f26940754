#pragma once

// Exact integer number theory: prime enumeration, factorization,
// multiplicative functions, rough numbers and the weighted prime indicator.

#include <cstdint>
#include <span>
#include <type_traits>
#include <vector>

#include "cml/arithfn.hpp"

namespace cml {

struct PrimePower {
  std::uint64_t prime;
  int exponent;
};

/// n together with its prime factorization in increasing prime order.
struct FactoredInteger {
  std::uint64_t n = 1;
  std::vector<PrimePower> factors;

  /// Product of prime^exponent; equals n for any value built by factorize().
  std::uint64_t value() const;
  bool is_squarefree() const;
};

/// All primes <= limit in ascending order, from a segmented odd-only sieve
/// using O(sqrt(limit) + segment) memory. Returns {} for limit < 2.
std::vector<std::uint64_t> sieve_primes(std::uint64_t limit);

/// Invokes visit(p) for each prime p <= limit in ascending order.
template <class Visitor>
void for_each_prime(std::uint64_t limit, Visitor&& visit);

/// Packed primality flags for 0..limit (odd-only bitmap).
class PrimeBitmap {
 public:
  explicit PrimeBitmap(std::uint64_t limit);

  std::uint64_t limit() const { return limit_; }
  bool is_prime(std::uint64_t n) const;

 private:
  std::uint64_t limit_;
  std::vector<std::uint64_t> bits_;  // bit i <-> 2i+1
};

/// Immutable ascending prime list, shared read-only after construction.
class PrimeTable {
 public:
  explicit PrimeTable(std::uint64_t limit);

  std::uint64_t limit() const { return limit_; }
  std::span<const std::uint64_t> primes() const { return primes_; }
  bool contains(std::uint64_t n) const;

 private:
  std::uint64_t limit_;
  std::vector<std::uint64_t> primes_;
};

/// Process-wide table of primes up to 10^6, built on first use.
const PrimeTable& small_prime_table();

/// Trial division by the cached primes up to sqrt(n). n = 0 -> DomainError.
FactoredInteger factorize(std::uint64_t n);

int mobius(std::uint64_t n);
std::uint64_t euler_phi(std::uint64_t n);
std::uint64_t divisor_count(std::uint64_t n);

/// True iff every prime divisor of n exceeds z (vacuously true for n = 1).
bool is_rough(std::uint64_t n, double z);

/// Mobius, totient and smallest-prime-factor tables for 0..limit from a
/// linear sieve; entry 0 is unused.
struct MultiplicativeTables {
  std::vector<std::int8_t> mu;
  std::vector<std::uint64_t> phi;
  std::vector<std::uint32_t> smallest_prime;

  explicit MultiplicativeTables(std::uint32_t limit);
  std::uint32_t limit() const { return static_cast<std::uint32_t>(mu.size() - 1); }
};

/// Lambda'(n) = log n for primes n <= X, 0 otherwise; support [2, X].
ArithFn weighted_prime_fn(std::uint64_t X);

// --- implementation of the template ---------------------------------------

namespace detail {
void sieve_segments(std::uint64_t limit,
                    void (*sink)(void* ctx, std::uint64_t low, const std::uint8_t* flags,
                                 std::size_t count),
                    void* ctx);
}  // namespace detail

template <class Visitor>
void for_each_prime(std::uint64_t limit, Visitor&& visit) {
  if (limit < 2) return;
  visit(std::uint64_t{2});
  // flags[i] describes the odd number low + 2i.
  auto sink = [](void* ctx, std::uint64_t low, const std::uint8_t* flags, std::size_t count) {
    auto& v = *static_cast<std::remove_reference_t<Visitor>*>(ctx);
    for (std::size_t i = 0; i < count; ++i) {
      if (flags[i]) v(low + 2 * i);
    }
  };
  detail::sieve_segments(limit, sink, const_cast<void*>(static_cast<const void*>(&visit)));
}

}  // namespace cml
