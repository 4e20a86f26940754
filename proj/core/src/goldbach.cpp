#include <algorithm>
#include <cmath>
#include <numeric>

#include "cml/arith.hpp"
#include "cml/error.hpp"
#include "cml/goldbach.hpp"
#include "cml/parallel.hpp"
#include "intmath.hpp"

namespace cml {

std::vector<std::uint64_t> exceptional_set(std::uint64_t X, std::uint64_t H) {
  if (H > X || X - H < 4) throw DomainError("exceptional_set: requires X - H >= 4");
  if (X > kMaxGoldbachX) throw CapacityError("exceptional_set: X above 10^9");

  const PrimeBitmap primes(X);
  const std::uint64_t first = (X - H) % 2 == 0 ? X - H : X - H + 1;
  const std::size_t count = first > X ? 0 : static_cast<std::size_t>((X - first) / 2 + 1);
  std::vector<std::uint8_t> missing(count, 0);
  parallel_for(count, [&](std::size_t i) {
    const std::uint64_t n = first + 2 * i;
    if (n == 4) return;  // 2 + 2
    for (std::uint64_t p = 3; p <= n / 2; p += 2) {
      if (primes.is_prime(p) && primes.is_prime(n - p)) return;
    }
    missing[i] = 1;
  });

  std::vector<std::uint64_t> out;
  for (std::size_t i = 0; i < count; ++i) {
    if (missing[i]) out.push_back(first + 2 * i);
  }
  return out;
}

namespace {

bool rough_supported(const ArithFn& omega, std::uint64_t Q, std::int64_t lo, std::int64_t hi) {
  const auto primes = sieve_primes(Q);
  for (std::int64_t m = lo; m <= hi; ++m) {
    if (omega(m) == 0.0) continue;
    for (const auto p : primes) {
      if (static_cast<std::uint64_t>(m) % p == 0) return false;
    }
  }
  return true;
}

}  // namespace

double convolve_with_lambda_q_model(const ArithFn& omega, const LambdaQParams& params, std::int64_t n,
                                    ModelConvolutionPath path) {
  if (params.Q < 1) throw DomainError("convolve_with_lambda_q_model: Q must be at least 1");
  // n - n1 in (lo, hi]  <=>  n - hi <= n1 < n - lo.
  const std::int64_t lo = std::max(omega.support_start(), n - params.window.hi);
  const std::int64_t hi = std::min(omega.support_end() - 1, n - params.window.lo - 1);
  if (lo > hi) return 0.0;

  bool ramanujan = path == ModelConvolutionPath::kRamanujan;
  if (path != ModelConvolutionPath::kDirect) {
    const bool rough = rough_supported(omega, params.Q, lo, hi);
    if (ramanujan && !rough) {
      throw ContractError("convolve_with_lambda_q_model: omega is not supported on Q-rough numbers");
    }
    ramanujan = rough;
  }

  if (!ramanujan) {
    const ArithFn model = lambda_q_window(Window{n - hi - 1, n - lo}, params.Q);
    double acc = 0.0;
    for (std::int64_t m = lo; m <= hi; ++m) acc += omega(m) * model(n - m);
    return params.c_nu * acc;
  }

  // With omega on Q-rough n1 only, each squarefree q <= Q sees omega through
  // W_q(b) = sum_{n1 = b mod q} omega(n1), and then
  // omega * Lambda_Q(n) = sum_q mu(q)/phi(q) sum_b W_q(b) c_q(n - b).
  const MultiplicativeTables t(static_cast<std::uint32_t>(params.Q));
  double total = 0.0;
  std::vector<double> W;
  for (std::uint64_t q = 1; q <= params.Q; ++q) {
    if (t.mu[q] == 0) continue;
    const auto qi = static_cast<std::int64_t>(q);
    W.assign(q, 0.0);
    for (std::int64_t m = lo; m <= hi; ++m) W[static_cast<std::size_t>(m % qi)] += omega(m);
    double inner = 0.0;
    for (std::uint64_t b = 0; b < q; ++b) {
      if (W[b] == 0.0) continue;
      const auto r = static_cast<std::uint64_t>(detail::mod_floor(n - static_cast<std::int64_t>(b), qi));
      const std::uint64_t g = std::gcd(r, q);
      // c_q(m) = mu(q/g) phi(g) for squarefree q.
      inner += W[b] * t.mu[q / g] * static_cast<double>(t.phi[g]);
    }
    total += t.mu[q] * inner / static_cast<double>(t.phi[q]);
  }
  return params.c_nu * total;
}

}  // namespace cml
