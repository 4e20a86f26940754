#include <algorithm>
#include <cmath>
#include <string>

#include "cml/arith.hpp"
#include "cml/closeness.hpp"
#include "cml/constants.hpp"
#include "cml/error.hpp"
#include "cml/goldbach.hpp"

namespace cml {
namespace {

constexpr std::int64_t kMaxPipelineX = 50'000'000;

void require_within(const ArithFn& f, Window w, const char* what) {
  if (f.empty()) return;
  if (f.support_start() <= w.lo || f.support_end() - 1 > w.hi) {
    throw ContractError(std::string("run_pipeline: ") + what + " must be supported on (" +
                        std::to_string(w.lo) + ", " + std::to_string(w.hi) + "]");
  }
}

void require_nonnegative(const ArithFn& f, const char* what) {
  for (double v : f.values()) {
    if (v < 0.0) throw ContractError(std::string("run_pipeline: ") + what + " must be nonnegative");
  }
}

bool exceeds(double lhs, double rhs) {
  return lhs > rhs + 1e-12 * std::max(1.0, std::abs(rhs));
}

}  // namespace

double PipelineConfig::resolved_z() const {
  return sieve_z > 0.0 ? sieve_z : std::max(2.0, static_cast<double>(Q));
}

double PipelineConfig::resolved_D() const {
  return sieve_D > 0.0 ? sieve_D : desk_sieve_level(static_cast<double>(H), resolved_z());
}

PipelineConfig desk_config(std::int64_t X, double A) {
  if (X < 2) throw DomainError("desk_config: X must be at least 2");
  PipelineConfig c;
  c.X = X;
  c.A = A;
  c.ideal_Y = std::pow(static_cast<double>(X), 21.0 / 40.0);
  c.Y = std::max<std::int64_t>(1000, std::llround(c.ideal_Y));
  c.ideal_H = std::pow(static_cast<double>(c.Y), 1.0 / 9.0 + 0.1);
  c.H = std::max<std::int64_t>(64, std::llround(c.ideal_H));
  c.ideal_Q = std::pow(std::log(static_cast<double>(X)), A);
  c.Q = std::max<std::uint64_t>(3, static_cast<std::uint64_t>(std::floor(c.ideal_Q)));
  c.kappa = static_cast<double>(c.Y) / std::log(static_cast<double>(c.Y));
  c.theta = pinned::kClosenessThetaCeiling;
  c.failure_threshold = pinned::kFinalFailureFraction;
  return c;
}

PipelineConfig preset_config(const std::string& name) {
  if (name == "desk-small") {
    PipelineConfig c = desk_config(200'000);
    c.Q = 10;
    c.preset = name;
    return c;
  }
  if (name == "desk-medium") {
    PipelineConfig c = desk_config(2'000'000);
    c.preset = name;
    return c;
  }
  throw DomainError("unknown preset '" + name + "'");
}

void validate(const PipelineConfig& c) {
  if (!(2 < c.H && c.H < c.Y && c.Y < c.X)) throw DomainError("pipeline: requires 2 < H < Y < X");
  if (c.X < 3 * c.Y) throw DomainError("pipeline: requires X >= 3Y so omega lives on n > 0");
  if (c.X > kMaxPipelineX) throw CapacityError("pipeline: X above 5*10^7");
  if (c.Q < 1) throw DomainError("pipeline: requires Q >= 1");
  if (!(c.kappa > 0.0)) throw DomainError("pipeline: requires kappa > 0");
  if (!(c.c_nu > 0.0) || !(c.c_omega > 0.0)) throw DomainError("pipeline: c_nu, c_omega must be positive");
  if (!(c.failure_threshold >= 0.0)) throw DomainError("pipeline: failure threshold must be >= 0");
}

PipelineInputs model_inputs(const PipelineConfig& c) {
  validate(c);
  PipelineInputs in = collapsed_inputs(c);
  const LambdaQParams params{c.Q, Window{c.Y, 2 * c.Y}, c.c_nu};
  in.t_nu = model_t_nu(params);
  in.t_nu_plus = model_t_nu_plus(params, beta_sieve_weights(c.resolved_D(), c.resolved_z()));
  in.t_nu_params = params;
  return in;
}

PipelineInputs collapsed_inputs(const PipelineConfig& c) {
  validate(c);
  const ArithFn lambda = weighted_prime_fn(static_cast<std::uint64_t>(c.X));
  PipelineInputs in;
  in.nu = lambda.restricted(Window{c.Y, 2 * c.Y});
  in.omega = lambda.restricted(Window{c.X - 3 * c.Y, c.X - c.Y}).scaled(c.c_omega);
  in.a = lambda;
  in.b = lambda;
  in.t_nu = in.nu;
  in.t_nu_plus = in.nu;
  return in;
}

PipelineReport run_pipeline(const PipelineConfig& config, const PipelineInputs& in,
                            const PipelineOptions& options) {
  validate(config);
  const Window nu_window{config.Y, 2 * config.Y};
  const Window omega_window{config.X - 3 * config.Y, config.X - config.Y};
  require_within(in.nu, nu_window, "nu");
  require_within(in.t_nu, nu_window, "T_nu");
  require_within(in.t_nu_plus, nu_window, "T_nu^+");
  require_within(in.omega, omega_window, "omega");
  require_nonnegative(in.a, "a");
  require_nonnegative(in.t_nu_plus, "T_nu^+");
  if (in.a.empty() || in.b.empty() || in.nu.empty() || in.omega.empty() || in.t_nu.empty() ||
      in.t_nu_plus.empty()) {
    throw ContractError("run_pipeline: every input function needs a nonempty support");
  }

  PipelineReport report;
  report.config = config;

  const ArithFn ab = convolve(in.a, in.b);
  const ArithFn a_nu = convolve(in.a, in.nu);
  const ArithFn a_tp = convolve(in.a, in.t_nu_plus);
  const ArithFn o_tp = convolve(in.omega, in.t_nu_plus);
  const ArithFn o_tn = convolve(in.omega, in.t_nu);

  for (std::int64_t n = config.X - config.H; n <= config.X; ++n) {
    PipelineRow row{n, ab(n), o_tn(n), a_nu(n), a_tp(n), o_tp(n), n % 2 == 0, false};
    if (std::abs(row.a_nu - row.a_tplus) > config.kappa) ++report.exceptions_step2;
    if (std::abs(row.omega_tplus - row.omega_model_conv) > config.kappa) ++report.exceptions_step4;
    const double scale = std::max({1.0, std::abs(row.a_tplus), std::abs(row.omega_tplus)});
    if (row.a_tplus < row.omega_tplus - 1e-9 * scale) ++report.step7_violations;
    row.fails = row.lambda_conv < row.omega_model_conv - 2.0 * config.kappa;
    if (row.even) {
      ++report.even_count;
      if (row.fails) ++report.final_failures;
    } else if (row.fails) {
      ++report.odd_final_failures;
    }
    report.rows.push_back(row);
  }
  report.failure_fraction = report.even_count == 0
                                ? 0.0
                                : static_cast<double>(report.final_failures) /
                                      static_cast<double>(report.even_count);

  const std::int64_t lo = std::min({in.nu.support_start(), in.omega.support_start(),
                                    in.a.support_start(), in.b.support_start()});
  const std::int64_t hi = std::max({in.nu.support_end(), in.omega.support_end(),
                                    in.a.support_end(), in.b.support_end()});
  for (std::int64_t n = lo; n < hi; ++n) {
    if (exceeds(in.nu(n), in.b(n)) || exceeds(in.omega(n), in.a(n))) ++report.minorization_violations;
  }

  if (in.t_nu_params) {
    for (const std::int64_t n : {config.X - config.H, config.X - config.H / 2, config.X}) {
      const double model = convolve_with_lambda_q_model(in.omega, *in.t_nu_params, n);
      const double direct = o_tn(n);
      report.max_model_crosscheck = std::max(
          report.max_model_crosscheck, std::abs(model - direct) / std::max(1.0, std::abs(direct)));
    }
  }

  if (options.closeness) {
    ClosenessOptions opts;
    opts.reference_norm = l2_norm_sq(in.nu);
    const double H = static_cast<double>(config.H);
    try {
      report.theta_nu_tplus = closeness_integral(in.nu, in.t_nu_plus, H, opts).theta_effective;
      report.theta_tnu_tplus = closeness_integral(in.t_nu, in.t_nu_plus, H, opts).theta_effective;
    } catch (const DomainError&) {
      // Support too short for the window integral at this H; left unset.
    }
  }

  report.pass = report.failure_fraction <= config.failure_threshold && report.step7_violations == 0 &&
                report.minorization_violations == 0;
  return report;
}

}  // namespace cml
