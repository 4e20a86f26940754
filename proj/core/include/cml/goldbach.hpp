#pragma once

// Goldbach-level objects: exceptional sets, omega * T_nu through Ramanujan
// sums, the singular series, and the minorant-transfer pipeline
//   L'*L'(n) >= L'*nu(n) ~ L'*T+(n) >= omega*T+(n) ~ omega*T_nu(n).

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cml/arithfn.hpp"
#include "cml/models.hpp"

namespace cml {

inline constexpr std::uint64_t kMaxGoldbachX = 1'000'000'000;

/// Even n in [X - H, X] that are not a sum of two primes. Requires
/// 4 <= X - H and X <= 10^9.
std::vector<std::uint64_t> exceptional_set(std::uint64_t X, std::uint64_t H);

enum class ModelConvolutionPath { kAuto, kDirect, kRamanujan };

/// omega * T_nu(n) with T_nu = c_nu Lambda_Q on params.window. The Ramanujan
/// path aggregates omega by residue class mod each squarefree q <= Q and
/// needs omega supported on Q-rough numbers (ContractError otherwise);
/// kAuto uses it whenever that holds.
double convolve_with_lambda_q_model(const ArithFn& omega, const LambdaQParams& params, std::int64_t n,
                                    ModelConvolutionPath path = ModelConvolutionPath::kAuto);

/// sum_{q <= q_max} |mu(q)| c_q(n) / phi(q)^2.
double singular_series_partial(std::uint64_t n, std::uint64_t q_max);
/// The same for many n, sharing one set of tables.
std::vector<double> singular_series_partial(std::span<const std::uint64_t> ns, std::uint64_t q_max);
/// prod_{p <= prime_bound} (1 + c_p(n) / (p - 1)^2).
double singular_series_product(std::uint64_t n, std::uint64_t prime_bound);

struct PipelineConfig {
  std::string preset;  // empty for hand-built configs
  std::int64_t X = 0;
  std::int64_t H = 0;
  std::int64_t Y = 0;
  std::uint64_t Q = 1;
  double A = 1.0;
  double c_nu = 1.0;
  double c_omega = 1.0;
  double kappa = 1.0;
  double theta = 0.1;
  double sieve_z = 0.0;  // <= 0: z = Q
  double sieve_D = 0.0;  // <= 0: desk_sieve_level(H, z)
  double failure_threshold = 0.01;
  // Unfloored values of the asymptotic parameter map, for the record.
  double ideal_Y = 0.0;
  double ideal_H = 0.0;
  double ideal_Q = 0.0;

  double resolved_z() const;
  double resolved_D() const;
};

/// Asymptotic parameter map rescaled to desk size: Y = max(10^3, X^{21/40}),
/// H = max(64, Y^{1/9 + 0.1}), Q = max(3, floor((log X)^A)), kappa = Y / log Y.
PipelineConfig desk_config(std::int64_t X, double A = 1.0);
/// "desk-small" (X = 2*10^5, Q = 10) or "desk-medium" (X = 2*10^6).
PipelineConfig preset_config(const std::string& name);
/// 2 < H < Y < X, X >= 3Y, Q >= 1, kappa > 0; DomainError otherwise.
void validate(const PipelineConfig& config);

struct PipelineInputs {
  ArithFn nu;     // on (Y, 2Y]
  ArithFn omega;  // on (X - 3Y, X - Y]
  ArithFn a;
  ArithFn b;
  ArithFn t_nu;       // on (Y, 2Y]
  ArithFn t_nu_plus;  // on (Y, 2Y], nonnegative
  /// Set when t_nu is c_nu Lambda_Q, enabling the Ramanujan cross-check.
  std::optional<LambdaQParams> t_nu_params;
};

/// nu = Lambda' on (Y, 2Y], omega = c_omega Lambda' on (X - 3Y, X - Y],
/// a = b = Lambda', T_nu = c_nu Lambda_Q and T_nu^+ from the beta-sieve.
PipelineInputs model_inputs(const PipelineConfig& config);
/// Same nu, omega, a, b with T_nu = T_nu^+ = nu, so both ~ steps are exact.
PipelineInputs collapsed_inputs(const PipelineConfig& config);

struct PipelineRow {
  std::int64_t n;
  double lambda_conv;       // a * b
  double omega_model_conv;  // omega * T_nu
  double a_nu;
  double a_tplus;
  double omega_tplus;
  bool even;
  bool fails;
};

struct PipelineReport {
  PipelineConfig config;
  std::vector<PipelineRow> rows;
  std::size_t exceptions_step2 = 0;  // |a*nu - a*T+| > kappa
  std::size_t exceptions_step4 = 0;  // |omega*T+ - omega*T_nu| > kappa
  std::size_t step7_violations = 0;  // a*T+ < omega*T+
  std::size_t final_failures = 0;    // even n with a*b < omega*T_nu - 2 kappa
  std::size_t odd_final_failures = 0;
  std::size_t even_count = 0;
  std::size_t minorization_violations = 0;  // nu > b or omega > a, whole support
  double failure_fraction = 0.0;
  double max_model_crosscheck = 0.0;  // relative gap, Ramanujan vs convolution
  std::optional<double> theta_nu_tplus;
  std::optional<double> theta_tnu_tplus;
  bool pass = false;
};

struct PipelineOptions {
  bool closeness = true;
};

/// Runs the chain for every n in [X - H, X]. Supports and sign conditions
/// are checked before any convolution (ContractError).
PipelineReport run_pipeline(const PipelineConfig& config, const PipelineInputs& inputs,
                            const PipelineOptions& options = {});

}  // namespace cml
