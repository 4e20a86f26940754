#pragma once

// Model functions for the primes: the major-arc model Lambda_Q and its
// windowed form T_nu, and the nonnegative sieve model T_nu^+ built from the
// upper-bound beta-sieve.

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "cml/arithfn.hpp"

namespace cml {

struct LambdaQParams {
  std::uint64_t Q = 1;
  Window window;  // (Y, 2Y] in the pipeline
  double c_nu = 1.0;
};

/// Lambda_Q(n) = sum_{q <= Q} mu(q) c_q(n) / phi(q).
double lambda_q(std::int64_t n, std::uint64_t Q);

/// Lambda_Q on every integer of the window; O(Q^2 + Q * window length).
ArithFn lambda_q_window(Window window, std::uint64_t Q);

/// Outcome of one short-sum check: the measured sum, the lemma's main term,
/// the lemma's error scale and |deviation| / bound.
struct ShortSumResult {
  Complex actual;
  double predicted = 0.0;
  double bound = 0.0;
  double ratio = 0.0;
  bool major = false;  // q <= Q (resp. q <= z): the main-term branch
};

/// Sum of Lambda_Q(n) e(rn/q') over t - floor(H') < n <= t. The prediction is
/// mu(q') floor(H') / phi(q') with bound Q^3 when q' <= Q, and 0 with bound
/// q'Q + Q^3 otherwise. Requires gcd(r, q') = 1 and t > H' > 0.
ShortSumResult lambda_q_short_sum(std::int64_t t, double h, std::uint64_t Q, Twist twist);

struct SieveWeight {
  std::uint64_t d;
  int lambda;
};

/// Upper-bound beta-sieve with level D and sifting range z.
struct SieveSystem {
  int beta = 10;
  double D = 0.0;
  double z = 0.0;
  std::vector<SieveWeight> weights;  // sorted by d, lambda != 0 only

  /// theta_n = sum_{d | n} lambda_d.
  int theta(std::uint64_t n) const;
};

/// lambda_d = mu(d) for squarefree z-smooth d = p_1 ... p_r (p_1 > ... > p_r)
/// with p_1 ... p_m p_m^beta <= floor(D) for every odd m <= r; 0 otherwise.
/// Requires z >= 2 and D >= z.
SieveSystem beta_sieve_weights(double D, double z, int beta = 10);

/// Smallest integer level at which every squarefree z-smooth d is admitted,
/// so that theta_n is exactly the z-rough indicator.
std::uint64_t untruncated_sieve_level(double z, int beta = 10);

/// Level used for T_nu^+ at desk scale: max(H^{1/10}, z^{beta+1}). The
/// level H^{1/10} alone falls below z for any testable H, which would
/// leave theta_n = 1 identically.
double desk_sieve_level(double H, double z, int beta = 10);

/// theta_n on every integer of the window.
std::vector<int> sieve_theta_window(const SieveSystem& sieve, Window window);

struct VMertens {
  double z = 0.0;
  double value = 1.0;
};

/// V(z) = prod_{p <= z} (1 - 1/p).
VMertens mertens_product(double z);

/// c_nu Lambda_Q(n) on params.window, zero elsewhere.
ArithFn model_t_nu(const LambdaQParams& params);
/// c_nu V(z)^{-1} theta_n on params.window, zero elsewhere.
ArithFn model_t_nu_plus(const LambdaQParams& params, const SieveSystem& sieve);

/// V(z)^{-1} sum of theta_n e(rn/q) over t - floor(H') < n <= t. Prediction
/// mu(q) floor(H') / phi(q) with bound H' e^{-log D / log z} + qD when q <= z;
/// 0 with bound (H'/q + D + q) log(qH') otherwise.
ShortSumResult sieve_short_sum(std::int64_t t, double h, const SieveSystem& sieve, Twist twist);

// Text form: "beta D z" on the first line, then "d lambda_d" lines sorted by d.
void write_text(std::ostream& out, const SieveSystem& sieve);
SieveSystem read_sieve_system(std::istream& in);

}  // namespace cml
