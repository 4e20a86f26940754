#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "cml/closeness.hpp"
#include "cml/constants.hpp"
#include "cml/error.hpp"
#include "spectral.hpp"

namespace cml {

namespace detail {

std::vector<double> autocorrelation(const ArithFn& f) {
  if (f.empty()) return {};
  const auto v = f.values();
  std::vector<double> reversed(v.rbegin(), v.rend());
  const ArithFn conv = convolve(ArithFn(0, std::vector<double>(v.begin(), v.end())),
                                ArithFn(0, std::move(reversed)));
  const std::size_t len = v.size();
  std::vector<double> R(len);
  for (std::size_t k = 0; k < len; ++k) R[k] = conv(static_cast<std::int64_t>(len - 1 - k));
  return R;
}

std::vector<double> window_kernel_coefficients(const std::vector<double>& R, double w) {
  std::vector<double> c(R.size());
  if (R.empty()) return c;
  c[0] = R[0] * 2.0 * w;
  for (std::size_t k = 1; k < R.size(); ++k) {
    const double kk = static_cast<double>(k);
    c[k] = 2.0 * R[k] * std::sin(2.0 * std::numbers::pi * kk * w) / (std::numbers::pi * kk);
  }
  return c;
}

}  // namespace detail

namespace {

void check_delta(const ArithFn& f, double delta) {
  const double span = static_cast<double>(f.size());
  if (!(delta > 2.0) || !(delta < span / 2.0)) {
    throw DomainError("Gallagher: need 2 < delta < support length / 2");
  }
}

}  // namespace

double gallagher_lhs(const ArithFn& f, double delta, double samples_per_unit) {
  check_delta(f, delta);
  if (!(samples_per_unit >= 1.0)) throw DomainError("gallagher_lhs: sample density below 1");
  const double width = 2.0 / delta;
  const double span = static_cast<double>(f.size());
  const auto intervals =
      std::max<std::size_t>(2, static_cast<std::size_t>(std::ceil(width * samples_per_unit * span)));
  const double step = width / static_cast<double>(intervals);
  const auto values = fourier_eval_grid(f, -1.0 / delta, step, intervals + 1);
  double acc = 0.5 * (std::norm(values.front()) + std::norm(values.back()));
  for (std::size_t j = 1; j < intervals; ++j) acc += std::norm(values[j]);
  return acc * step;
}

double gallagher_rhs(const ArithFn& f, double delta) {
  check_delta(f, delta);
  const auto width = static_cast<std::int64_t>(std::floor(delta / 2.0));
  double acc = 0.0;
  for (const auto& s : sliding_window_sums(f, width)) acc += std::norm(s.sum);
  return acc / (delta * delta);
}

double gallagher_lhs_exact(const ArithFn& f, double delta) {
  check_delta(f, delta);
  const auto c = detail::window_kernel_coefficients(detail::autocorrelation(f), 1.0 / delta);
  double acc = 0.0;
  for (double x : c) acc += x;
  return acc;
}

GallagherReport run_gallagher_trials(const GallagherTrials& spec) {
  if (spec.trials == 0) throw DomainError("run_gallagher_trials: need at least one trial");
  if (spec.span < 1 || spec.start < 0) throw DomainError("run_gallagher_trials: bad support");
  GallagherReport report;
  report.ceiling = pinned::kGallagherRatioCeiling;
  std::mt19937_64 rng(spec.seed);
  std::vector<double> values(static_cast<std::size_t>(spec.span));
  for (std::size_t trial = 0; trial < spec.trials; ++trial) {
    // Top bit of each draw, so the sequence does not depend on the
    // standard library's distribution implementation.
    for (auto& v : values) v = (rng() >> 63) != 0 ? 1.0 : -1.0;
    const ArithFn f(spec.start, values);
    const double lhs = gallagher_lhs(f, spec.delta, spec.samples_per_unit);
    const double rhs = gallagher_rhs(f, spec.delta);
    const double ratio = rhs > 0.0 ? lhs / rhs : 0.0;
    report.rows.push_back({trial, lhs, rhs, ratio});
    report.max_ratio = std::max(report.max_ratio, ratio);
  }
  report.pass = report.max_ratio <= report.ceiling;
  return report;
}

}  // namespace cml
