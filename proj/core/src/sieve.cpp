#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <string>

#include "cml/arith.hpp"
#include "cml/error.hpp"
#include "cml/models.hpp"
#include "intmath.hpp"

namespace cml {
namespace {

constexpr std::size_t kMaxWeights = 10'000'000;
constexpr std::int64_t kMaxWindow = std::int64_t{1} << 32;

std::uint64_t floor_level(double D) {
  if (D >= 1.8e19) return UINT64_MAX;
  return static_cast<std::uint64_t>(std::floor(D));
}

std::uint64_t saturating_pow(std::uint64_t p, int e) {
  std::uint64_t r = 1;
  for (int i = 0; i < e; ++i) r = detail::saturating_mul(r, p);
  return r;
}

std::vector<std::uint64_t> primes_up_to(double z) {
  return sieve_primes(static_cast<std::uint64_t>(std::floor(z)));
}

struct Enumerator {
  std::span<const std::uint64_t> primes;  // ascending
  std::uint64_t level;
  int beta;
  std::vector<SieveWeight> out;

  // Extends d (with r prime factors, all >= primes[limit]) by primes below
  // primes[limit]. The product p_1 ... p_m p_m^beta grows with p_m, so on odd
  // positions the scan stops at the first failing prime.
  void extend(std::uint64_t d, std::size_t r, std::size_t limit) {
    for (std::size_t i = 0; i < limit; ++i) {
      const std::uint64_t p = primes[i];
      const std::uint64_t next = detail::saturating_mul(d, p);
      if (next == UINT64_MAX) break;
      if ((r + 1) % 2 == 1) {
        const std::uint64_t test = detail::saturating_mul(next, saturating_pow(p, beta));
        if (test > level) break;
      }
      if (out.size() >= kMaxWeights) throw CapacityError("beta_sieve_weights: too many weights");
      out.push_back({next, (r + 1) % 2 == 0 ? 1 : -1});
      extend(next, r + 1, i);
    }
  }
};

}  // namespace

int SieveSystem::theta(std::uint64_t n) const {
  int acc = 0;
  for (const auto& w : weights) {
    if (n % w.d == 0) acc += w.lambda;
  }
  return acc;
}

SieveSystem beta_sieve_weights(double D, double z, int beta) {
  if (!(z >= 2.0)) throw DomainError("beta_sieve_weights: requires z >= 2");
  if (!(D >= z)) throw DomainError("beta_sieve_weights: requires D >= z");
  if (beta < 1) throw DomainError("beta_sieve_weights: requires beta >= 1");

  const auto primes = primes_up_to(z);
  Enumerator e{primes, floor_level(D), beta, {}};
  e.out.push_back({1, 1});
  e.extend(1, 0, primes.size());
  std::sort(e.out.begin(), e.out.end(),
            [](const SieveWeight& a, const SieveWeight& b) { return a.d < b.d; });
  return SieveSystem{beta, D, z, std::move(e.out)};
}

std::uint64_t untruncated_sieve_level(double z, int beta) {
  if (!(z >= 2.0)) throw DomainError("untruncated_sieve_level: requires z >= 2");
  const auto primes = primes_up_to(z);
  // For p_m = p the largest admissible prefix uses all primes above p when
  // their count is even, and all but the smallest of them when it is odd.
  std::uint64_t level = static_cast<std::uint64_t>(std::ceil(z));
  for (std::size_t i = 0; i < primes.size(); ++i) {
    std::uint64_t prefix = 1;
    const std::size_t larger = primes.size() - 1 - i;
    for (std::size_t j = i + 1 + (larger % 2); j < primes.size(); ++j) {
      prefix = detail::saturating_mul(prefix, primes[j]);
    }
    level = std::max(level, detail::saturating_mul(prefix, saturating_pow(primes[i], beta + 1)));
  }
  return level;
}

double desk_sieve_level(double H, double z, int beta) {
  return std::max(std::pow(H, 0.1), std::pow(z, beta + 1));
}

std::vector<int> sieve_theta_window(const SieveSystem& sieve, Window window) {
  if (window.lo < 0) throw DomainError("sieve_theta_window: window must lie in n >= 1");
  if (window.length() > kMaxWindow) throw CapacityError("sieve_theta_window: window too long");
  const auto len = static_cast<std::size_t>(window.length());
  std::vector<int> theta(len, 0);
  const auto lo = static_cast<std::uint64_t>(window.lo);
  const auto hi = static_cast<std::uint64_t>(window.hi);
  for (const auto& w : sieve.weights) {
    for (std::uint64_t m = (lo / w.d + 1) * w.d; m <= hi; m += w.d) {
      theta[m - lo - 1] += w.lambda;
    }
  }
  return theta;
}

VMertens mertens_product(double z) {
  double v = 1.0;
  if (z >= 2.0) {
    for (const auto p : primes_up_to(z)) v *= 1.0 - 1.0 / static_cast<double>(p);
  }
  return VMertens{z, v};
}

ArithFn model_t_nu_plus(const LambdaQParams& params, const SieveSystem& sieve) {
  if (params.window.length() < 1) throw DomainError("model_t_nu_plus: empty window");
  const auto theta = sieve_theta_window(sieve, params.window);
  const double scale = params.c_nu / mertens_product(sieve.z).value;
  std::vector<double> values(theta.size());
  for (std::size_t i = 0; i < theta.size(); ++i) {
    if (theta[i] < 0) throw ContractError("model_t_nu_plus: sieve produced theta_n < 0");
    values[i] = scale * theta[i];
  }
  return ArithFn(params.window.lo + 1, std::move(values));
}

ShortSumResult sieve_short_sum(std::int64_t t, double h, const SieveSystem& sieve, Twist twist) {
  if (twist.q < 1) throw DomainError("sieve_short_sum: modulus must be positive");
  if (std::gcd(detail::mod_floor(twist.r, twist.q), twist.q) != 1) {
    throw DomainError("sieve_short_sum: requires gcd(r, q) = 1");
  }
  if (!(h > 0.0) || !(static_cast<double>(t) > h)) {
    throw DomainError("sieve_short_sum: requires t > H' > 0");
  }
  const auto len = static_cast<std::int64_t>(std::floor(h));
  const Window window{t - len, t};
  const auto theta = sieve_theta_window(sieve, window);
  const ArithFn f(window.lo + 1, std::vector<double>(theta.begin(), theta.end()));

  ShortSumResult res;
  res.actual = fourier_eval(f, twist) / mertens_product(sieve.z).value;
  const auto q = static_cast<std::uint64_t>(twist.q);
  const double qd = static_cast<double>(q);
  const double L = static_cast<double>(len);
  const double level = std::floor(sieve.D);
  res.major = qd <= sieve.z;
  if (res.major) {
    res.predicted = mobius(q) * L / static_cast<double>(euler_phi(q));
    res.bound = L * std::exp(-std::log(sieve.D) / std::log(sieve.z)) + qd * level;
  } else {
    res.predicted = 0.0;
    res.bound = (L / qd + level + qd) * std::log(qd * L);
  }
  res.ratio = std::abs(res.actual - Complex(res.predicted, 0.0)) / res.bound;
  return res;
}

void write_text(std::ostream& out, const SieveSystem& sieve) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "%d %.17g %.17g\n", sieve.beta, sieve.D, sieve.z);
  out << buf;
  for (const auto& w : sieve.weights) out << w.d << ' ' << w.lambda << '\n';
}

SieveSystem read_sieve_system(std::istream& in) {
  SieveSystem s;
  std::string line;
  if (!std::getline(in, line)) throw DomainError("read_sieve_system: missing header");
  {
    std::istringstream hdr(line);
    if (!(hdr >> s.beta >> s.D >> s.z)) throw DomainError("read_sieve_system: bad header");
  }
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream row(line);
    SieveWeight w{};
    if (!(row >> w.d >> w.lambda)) throw DomainError("read_sieve_system: bad weight line");
    if (!s.weights.empty() && w.d <= s.weights.back().d) {
      throw DomainError("read_sieve_system: weights not sorted by d");
    }
    s.weights.push_back(w);
  }
  return s;
}

}  // namespace cml
