#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "cml/arith.hpp"
#include "cml/error.hpp"
#include "cml/models.hpp"
#include "cml/parallel.hpp"
#include "intmath.hpp"

namespace cml {
namespace {

constexpr std::uint64_t kMaxQ = 1'000'000;
constexpr std::int64_t kMaxWindow = std::int64_t{1} << 32;

void check_q(std::uint64_t Q) {
  if (Q < 1) throw DomainError("Lambda_Q: Q must be at least 1");
  if (Q > kMaxQ) throw CapacityError("Lambda_Q: Q above 10^6");
}

// For squarefree q, mu(q) c_q(n) / phi(q) = mu(g) phi(g) / phi(q) with
// g = gcd(q, n); the value depends only on n mod q.
void fill_residue_terms(const MultiplicativeTables& t, std::uint64_t q, std::vector<double>& out) {
  out.resize(q);
  const double inv_phi = 1.0 / static_cast<double>(t.phi[q]);
  for (std::uint64_t r = 0; r < q; ++r) {
    const std::uint64_t g = std::gcd(r, q);
    out[r] = t.mu[g] * static_cast<double>(t.phi[g]) * inv_phi;
  }
}

}  // namespace

double lambda_q(std::int64_t n, std::uint64_t Q) {
  check_q(Q);
  if (n < 0) throw DomainError("Lambda_Q: n must be nonnegative");
  const MultiplicativeTables t(static_cast<std::uint32_t>(Q));
  double sum = 0.0;
  for (std::uint64_t q = 1; q <= Q; ++q) {
    if (t.mu[q] == 0) continue;
    const std::uint64_t g = std::gcd(static_cast<std::uint64_t>(n) % q, q);
    sum += t.mu[g] * static_cast<double>(t.phi[g]) / static_cast<double>(t.phi[q]);
  }
  return sum;
}

ArithFn lambda_q_window(Window window, std::uint64_t Q) {
  check_q(Q);
  if (window.lo < -1) throw DomainError("Lambda_Q: window must start at n >= 0");
  if (window.length() > kMaxWindow) throw CapacityError("Lambda_Q: window too long");
  const std::int64_t start = window.lo + 1;
  const auto len = static_cast<std::size_t>(window.length());
  std::vector<double> values(len, 0.0);
  if (len == 0) return ArithFn(std::max<std::int64_t>(start, 0), {});

  const MultiplicativeTables t(static_cast<std::uint32_t>(Q));
  constexpr std::size_t kBlock = 1 << 16;
  const std::size_t blocks = (len + kBlock - 1) / kBlock;
  parallel_for(blocks, [&](std::size_t b) {
    const std::size_t lo = b * kBlock;
    const std::size_t hi = std::min(len, lo + kBlock);
    std::vector<double> terms;
    for (std::uint64_t q = 1; q <= Q; ++q) {
      if (t.mu[q] == 0) continue;
      fill_residue_terms(t, q, terms);
      auto r = static_cast<std::uint64_t>(detail::mod_floor(start + static_cast<std::int64_t>(lo),
                                                            static_cast<std::int64_t>(q)));
      for (std::size_t i = lo; i < hi; ++i) {
        values[i] += terms[r];
        if (++r == q) r = 0;
      }
    }
  });
  return ArithFn(start, std::move(values));
}

ShortSumResult lambda_q_short_sum(std::int64_t t, double h, std::uint64_t Q, Twist twist) {
  check_q(Q);
  if (twist.q < 1) throw DomainError("lambda_q_short_sum: modulus must be positive");
  if (std::gcd(detail::mod_floor(twist.r, twist.q), twist.q) != 1) {
    throw DomainError("lambda_q_short_sum: requires gcd(r, q') = 1");
  }
  if (!(h > 0.0) || !(static_cast<double>(t) > h)) {
    throw DomainError("lambda_q_short_sum: requires t > H' > 0");
  }
  const auto len = static_cast<std::int64_t>(std::floor(h));
  const ArithFn f = lambda_q_window(Window{t - len, t}, Q);

  ShortSumResult res;
  res.actual = fourier_eval(f, twist);
  const auto qp = static_cast<std::uint64_t>(twist.q);
  const double Qd = static_cast<double>(Q);
  res.major = qp <= Q;
  if (res.major) {
    res.predicted = mobius(qp) * static_cast<double>(len) / static_cast<double>(euler_phi(qp));
    res.bound = Qd * Qd * Qd;
  } else {
    res.predicted = 0.0;
    res.bound = static_cast<double>(qp) * Qd + Qd * Qd * Qd;
  }
  res.ratio = std::abs(res.actual - Complex(res.predicted, 0.0)) / res.bound;
  return res;
}

ArithFn model_t_nu(const LambdaQParams& params) {
  if (params.window.length() < 1) throw DomainError("model_t_nu: empty window");
  return lambda_q_window(params.window, params.Q).scaled(params.c_nu);
}

}  // namespace cml
