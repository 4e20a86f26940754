#include <cmath>

#include "cml/arith.hpp"
#include "cml/error.hpp"
#include "cml/goldbach.hpp"
#include "cml/parallel.hpp"

namespace cml {
namespace {

constexpr std::uint64_t kMaxSeriesQ = 100'000'000;

// Per-prime factor of |mu(q)| c_q(n) / phi(q)^2 for squarefree q.
double local_term(std::uint64_t p, std::uint64_t n) {
  const double pm1 = static_cast<double>(p - 1);
  return n % p == 0 ? 1.0 / pm1 : -1.0 / (pm1 * pm1);
}

double partial_with_tables(const MultiplicativeTables& t, std::vector<double>& g, std::uint64_t n) {
  // g(q) = g(q/p) * local_term(p) with p the least prime factor of q; g = 0
  // when p^2 | q.
  const std::uint64_t q_max = t.limit();
  g.assign(q_max + 1, 0.0);
  g[1] = 1.0;
  double sum = 1.0;
  double compensation = 0.0;
  for (std::uint64_t q = 2; q <= q_max; ++q) {
    const std::uint64_t p = t.smallest_prime[q];
    const std::uint64_t m = q / p;
    if (m % p == 0) continue;
    const double term = g[m] * local_term(p, n);
    g[q] = term;
    const double s = sum + term;
    compensation += std::abs(sum) >= std::abs(term) ? (sum - s) + term : (term - s) + sum;
    sum = s;
  }
  return sum + compensation;
}

void check_q_max(std::uint64_t q_max) {
  if (q_max < 1) throw DomainError("singular_series_partial: q_max must be at least 1");
  if (q_max > kMaxSeriesQ) throw CapacityError("singular_series_partial: q_max above 10^8");
}

}  // namespace

double singular_series_partial(std::uint64_t n, std::uint64_t q_max) {
  check_q_max(q_max);
  const MultiplicativeTables t(static_cast<std::uint32_t>(q_max));
  std::vector<double> g;
  return partial_with_tables(t, g, n);
}

std::vector<double> singular_series_partial(std::span<const std::uint64_t> ns, std::uint64_t q_max) {
  check_q_max(q_max);
  const MultiplicativeTables t(static_cast<std::uint32_t>(q_max));
  std::vector<double> out(ns.size());
  parallel_for(ns.size(), [&](std::size_t i) {
    std::vector<double> g;
    out[i] = partial_with_tables(t, g, ns[i]);
  });
  return out;
}

double singular_series_product(std::uint64_t n, std::uint64_t prime_bound) {
  double product = 1.0;
  for_each_prime(prime_bound, [&](std::uint64_t p) { product *= 1.0 + local_term(p, n); });
  return product;
}

}  // namespace cml
