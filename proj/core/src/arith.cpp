#include "cml/arith.hpp"

#include <cmath>

#include "cml/error.hpp"
#include "intmath.hpp"

namespace cml {

std::uint64_t FactoredInteger::value() const {
  std::uint64_t v = 1;
  for (const auto& [p, e] : factors) {
    for (int i = 0; i < e; ++i) v = detail::saturating_mul(v, p);
  }
  return v;
}

bool FactoredInteger::is_squarefree() const {
  for (const auto& f : factors) {
    if (f.exponent > 1) return false;
  }
  return true;
}

FactoredInteger factorize(std::uint64_t n) {
  if (n == 0) throw DomainError("factorize: n must be positive");
  FactoredInteger out;
  out.n = n;
  std::uint64_t m = n;
  const auto strip = [&](std::uint64_t p) {
    int e = 0;
    while (m % p == 0) {
      m /= p;
      ++e;
    }
    if (e > 0) out.factors.push_back({p, e});
  };
  const auto& table = small_prime_table();
  for (std::uint64_t p : table.primes()) {
    if (p * p > m) break;
    strip(p);
  }
  // Beyond the cached table (n > 10^12) continue with odd trial divisors.
  for (std::uint64_t d = table.limit() | 1; d <= m / d; d += 2) strip(d);
  if (m > 1) out.factors.push_back({m, 1});
  return out;
}

int mobius(std::uint64_t n) {
  const FactoredInteger f = factorize(n);
  if (!f.is_squarefree()) return 0;
  return f.factors.size() % 2 == 0 ? 1 : -1;
}

std::uint64_t euler_phi(std::uint64_t n) {
  const FactoredInteger f = factorize(n);
  std::uint64_t phi = n;
  for (const auto& pe : f.factors) phi = phi / pe.prime * (pe.prime - 1);
  return phi;
}

std::uint64_t divisor_count(std::uint64_t n) {
  std::uint64_t d = 1;
  for (const auto& pe : factorize(n).factors) d *= static_cast<std::uint64_t>(pe.exponent + 1);
  return d;
}

bool is_rough(std::uint64_t n, double z) {
  if (n == 0) throw DomainError("is_rough: n must be positive");
  if (n == 1) return true;
  return static_cast<double>(factorize(n).factors.front().prime) > z;
}

MultiplicativeTables::MultiplicativeTables(std::uint32_t limit)
    : mu(limit + 1, 0), phi(limit + 1, 0), smallest_prime(limit + 1, 0) {
  std::vector<std::uint32_t> primes;
  if (limit >= 1) {
    mu[1] = 1;
    phi[1] = 1;
  }
  for (std::uint32_t i = 2; i <= limit; ++i) {
    if (smallest_prime[i] == 0) {
      smallest_prime[i] = i;
      primes.push_back(i);
      mu[i] = -1;
      phi[i] = i - 1;
    }
    for (std::uint32_t p : primes) {
      const std::uint64_t m = std::uint64_t{p} * i;
      if (p > smallest_prime[i] || m > limit) break;
      smallest_prime[m] = p;
      if (i % p == 0) {
        mu[m] = 0;
        phi[m] = phi[i] * p;
      } else {
        mu[m] = static_cast<std::int8_t>(-mu[i]);
        phi[m] = phi[i] * (p - 1);
      }
    }
  }
}

ArithFn weighted_prime_fn(std::uint64_t X) {
  if (X < 2) throw DomainError("weighted_prime_fn: X must be at least 2");
  std::vector<double> values(static_cast<std::size_t>(X - 1), 0.0);
  for_each_prime(X, [&](std::uint64_t p) {
    values[static_cast<std::size_t>(p - 2)] = std::log(static_cast<double>(p));
  });
  return ArithFn(2, std::move(values));
}

}  // namespace cml
