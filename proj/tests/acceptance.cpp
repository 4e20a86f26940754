// Acceptance suite: one PASS/FAIL line per criterion, with sub-check
// details underneath. Exit status is nonzero when any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "cml/arith.hpp"
#include "cml/characters.hpp"
#include "cml/closeness.hpp"
#include "cml/constants.hpp"
#include "cml/goldbach.hpp"
#include "cml/models.hpp"
#include "oracles.hpp"

using namespace cml;

namespace {

// Tolerances.
constexpr double kOracleRel = 1e-6;
constexpr double kOrthogonality = 1e-8;
constexpr double kGaussSlack = 1e-9;
constexpr double kFundamentalLemma = 0.05;
constexpr double kSeriesFloor = 1.3;
constexpr double kOddSeriesCeiling = 1e-2;
constexpr double kSeriesAgreement = 1e-6;

// Runtime budgets in seconds.
constexpr double kBudget[10] = {0, 60, 60, 120, 300, 120, 300, 600, 180, 120};

struct Check {
  std::string what;
  bool ok;
};

struct Criterion {
  std::vector<Check> checks;
  void add(std::string what, bool ok) { checks.push_back({std::move(what), ok}); }
};

std::string fmt(const char* f, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

std::string fmt(const char* f, double a, double b) {
  char buf[160];
  std::snprintf(buf, sizeof buf, f, a, b);
  return buf;
}

double rel_err(double a, double b) { return std::abs(a - b) / std::max(1e-12, std::abs(b)); }

// Regression check against a pinned baseline.
std::string baseline_note(double measured, double baseline) {
  return fmt("measured %.6g vs baseline %.6g", measured, baseline);
}

void oracle_equivalences(Criterion& c) {
  std::size_t bad = 0;
  for (std::int64_t q = 1; q <= 300; ++q) {
    for (std::int64_t n = 1; n <= 300; ++n) {
      if (ramanujan_sum(static_cast<std::uint64_t>(q), n) != std::llround(oracle::ramanujan(q, n))) ++bad;
    }
  }
  c.add(fmt("Ramanujan closed form vs direct sum, q, n <= 300: %.0f mismatches", bad), bad == 0);

  double worst = 0.0;
  for (std::int64_t Q = 1; Q <= 50; ++Q) {
    for (std::int64_t n = 0; n <= 1000; ++n) {
      const double expect = oracle::lambda_q(n, Q);
      worst = std::max(worst, std::abs(lambda_q(n, static_cast<std::uint64_t>(Q)) - expect) /
                                  std::max(1.0, std::abs(expect)));
    }
  }
  c.add(fmt("Lambda_Q fast vs double sum, n <= 1000, Q <= 50: max rel err %.3g", worst), worst <= kOracleRel);

  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<std::size_t> len(1, 512);
  std::uniform_int_distribution<std::int64_t> start(0, 10'000);
  std::uniform_real_distribution<double> val(-1.0, 1.0);
  worst = 0.0;
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> a(len(rng)), b(len(rng));
    for (auto& x : a) x = val(rng);
    for (auto& x : b) x = val(rng);
    const ArithFn f(start(rng), a), g(start(rng), b);
    const ArithFn fast = convolve(f, g, ConvolutionPath::kTransform);
    const auto expect = oracle::convolve(a, b);
    double scale = 1e-12, err = 0.0;
    for (double x : expect) scale = std::max(scale, std::abs(x));
    for (std::size_t i = 0; i < expect.size(); ++i) err = std::max(err, std::abs(fast.values()[i] - expect[i]));
    worst = std::max(worst, err / scale);
  }
  c.add(fmt("FFT vs direct convolution, 200 instances of span <= 512: max rel err %.3g", worst),
        worst <= kOracleRel);

  const ArithFn lambda = weighted_prime_fn(60'000);
  worst = 0.0;
  int configs = 0;
  for (std::uint64_t Q : {3ULL, 5ULL, 10ULL, 13ULL, 20ULL}) {
    const ArithFn omega = lambda.restricted(Window{40'000, 52'000});
    const LambdaQParams p{Q, Window{3000, 6000}, 0.75};
    for (std::int64_t n : {46'000LL, 49'999LL, 52'000LL, 55'002LL}) {
      const double fast = convolve_with_lambda_q_model(omega, p, n, ModelConvolutionPath::kRamanujan);
      const double slow = convolve_with_lambda_q_model(omega, p, n, ModelConvolutionPath::kDirect);
      worst = std::max(worst, std::abs(fast - slow) / std::max(1.0, std::abs(slow)));
      ++configs;
    }
  }
  c.add(fmt("omega*T_nu Ramanujan vs direct, %.0f configurations: max rel err %.3g", configs, worst),
        worst <= kOracleRel);
}

void character_suite(Criterion& c) {
  double orth = 0.0;
  for (std::uint64_t q = 1; q <= 200; ++q) {
    const auto chars = characters_mod(q);
    std::vector<std::vector<std::complex<double>>> table;
    for (const auto& chi : chars) {
      std::vector<std::complex<double>> row(q);
      for (std::uint64_t n = 0; n < q; ++n) row[n] = chi(static_cast<std::int64_t>(n));
      table.push_back(std::move(row));
    }
    const double phi = static_cast<double>(euler_phi(q));
    for (std::size_t i = 0; i < chars.size(); ++i) {
      for (std::size_t j = 0; j < chars.size(); ++j) {
        std::complex<double> s{};
        for (std::uint64_t n = 0; n < q; ++n) s += table[i][n] * std::conj(table[j][n]);
        orth = std::max(orth, std::abs(s - std::complex<double>(i == j ? phi : 0.0)));
      }
    }
  }
  c.add(fmt("orthogonality, q <= 200: max deviation %.3g", orth), orth <= kOrthogonality);

  std::size_t principal_bad = 0;
  double excess = -1e300, identity = 0.0;
  for (std::uint64_t q = 1; q <= 100; ++q) {
    const auto chars = characters_mod(q);
    const auto t0 = gauss_sum(chars[0]);
    if (std::llround(t0.real()) != oracle::mobius(q) || std::abs(t0.imag()) > 1e-9) ++principal_bad;
    std::vector<std::complex<double>> taus;
    for (const auto& chi : chars) {
      excess = std::max(excess, std::abs(gauss_sum(chi)) - std::sqrt(static_cast<double>(q)));
      taus.push_back(gauss_sum(chi.conj()));
    }
    const double phi = static_cast<double>(euler_phi(q));
    for (std::int64_t m = 1; m <= static_cast<std::int64_t>(q); ++m) {
      if (std::gcd<std::uint64_t>(m, q) != 1) continue;
      std::complex<double> s{};
      for (std::size_t i = 0; i < chars.size(); ++i) s += taus[i] * chars[i](m);
      identity = std::max(identity, std::abs(s / phi - oracle::e_frac(m, static_cast<std::int64_t>(q))));
    }
  }
  c.add(fmt("tau(chi_0) = mu(q), q <= 100: %.0f mismatches", principal_bad), principal_bad == 0);
  c.add(fmt("|tau(chi)| - sqrt(q), q <= 100: max %.3g", excess), excess <= kGaussSlack);
  c.add(fmt("character expansion of e(m/q), q <= 100: max deviation %.3g", identity), identity <= kOrthogonality);
}

void sieve_suite(Criterion& c) {
  const std::uint64_t N = 1'000'000;
  std::vector<std::pair<std::string, SieveSystem>> sieves;
  for (double z : {2.0, 3.0, 5.0, 7.0, 10.0, 13.0}) {
    sieves.push_back({fmt("z=%g D=1e4", z), beta_sieve_weights(std::max(z, 1e4), z)});
    sieves.push_back({fmt("z=%g untruncated", z), beta_sieve_weights(double(untruncated_sieve_level(z)), z)});
  }
  sieves.push_back({"z=13 D=2e12", beta_sieve_weights(2e12, 13.0)});
  sieves.push_back({"z=10 desk level", beta_sieve_weights(desk_sieve_level(64.0, 10.0), 10.0)});
  std::size_t negative = 0;
  for (const auto& [name, s] : sieves) {
    for (int th : sieve_theta_window(s, Window{0, static_cast<std::int64_t>(N)})) negative += th < 0;
  }
  c.add(fmt("theta_n >= 0 for n <= 10^6 over %.0f sieves: %.0f negatives", double(sieves.size()), double(negative)),
        negative == 0);

  std::size_t mismatches = 0;
  for (std::uint64_t z : {2, 3, 5, 7}) {
    const auto s = beta_sieve_weights(double(untruncated_sieve_level(double(z))), double(z));
    const auto theta = sieve_theta_window(s, Window{0, static_cast<std::int64_t>(N)});
    std::vector<bool> rough(N + 1, true);
    for (std::uint64_t p = 2; p <= z; ++p) {
      if (!oracle::is_prime(p)) continue;
      for (std::uint64_t m = p; m <= N; m += p) rough[m] = false;
    }
    for (std::uint64_t n = 1; n <= N; ++n) mismatches += theta[n - 1] != (rough[n] ? 1 : 0);
  }
  c.add(fmt("untruncated theta_n = [n z-rough], z in {2,3,5,7}, n <= 10^6: %.0f mismatches", mismatches),
        mismatches == 0);

  // Fundamental-Lemma agreement on (10^4, 2*10^4] with z = 10, D = 10^4.
  // Both sides are normalised by V(z), so a perfect sieve gives lhs = rhs.
  const auto s = beta_sieve_weights(1e4, 10.0);
  const double V = mertens_product(10.0).value;
  const Window w{10'000, 20'000};
  const auto theta = sieve_theta_window(s, w);
  double lhs = 0.0;
  std::size_t rough = 0;
  for (std::int64_t n = w.lo + 1; n <= w.hi; ++n) {
    lhs += theta[static_cast<std::size_t>(n - w.lo - 1)];
    rough += oracle::is_rough(static_cast<std::uint64_t>(n), 10);
  }
  const double len = static_cast<double>(w.length());
  lhs /= V * len;
  const double rhs = static_cast<double>(rough) / (V * len);
  c.add(fmt("Fundamental Lemma, z=10 D=10^4: mean V^-1 theta = %.4f vs normalised rough density %.4f", lhs, rhs) +
            fmt(" (%.0f weights admitted)", double(s.weights.size())),
        std::abs(lhs / rhs - 1.0) <= kFundamentalLemma);
}

void sweeps(Criterion& c) {
  const auto grid = short_sum_grid("small", 10);
  const auto lam = verify_lambda_q_short_sums(grid, 10);
  c.add(fmt("Lambda_Q short sums: %.0f points, max ratio %.4f", double(lam.rows.size()), lam.max_ratio()),
        lam.rows.size() >= 100 && lam.max_ratio() <= pinned::kShortSumRatioCeiling);
  c.add("Lambda_Q non-regression: " + baseline_note(lam.max_ratio(), pinned::kLambdaQShortSumBaseline),
        pinned::within_baseline(lam.max_ratio(), pinned::kLambdaQShortSumBaseline));

  const auto sieve = beta_sieve_weights(1e4, 10.0);
  const auto sv = verify_sieve_short_sums(grid, sieve);
  c.add(fmt("sieve short sums: %.0f points, max ratio %.4f", double(sv.rows.size()), sv.max_ratio()),
        sv.rows.size() >= 100 && sv.max_ratio() <= pinned::kShortSumRatioCeiling);
  c.add("sieve non-regression: " + baseline_note(sv.max_ratio(), pinned::kSieveShortSumBaseline),
        pinned::within_baseline(sv.max_ratio(), pinned::kSieveShortSumBaseline));
}

void gallagher(Criterion& c) {
  const auto r = run_gallagher_trials(GallagherTrials{});
  c.add(fmt("100 trials, delta 50, span 10^4: max lhs/rhs %.4f", r.max_ratio),
        r.rows.size() == 100 && r.max_ratio <= pinned::kGallagherRatioCeiling);
  c.add("non-regression: " + baseline_note(r.max_ratio, pinned::kGallagherBaseline),
        pinned::within_baseline(r.max_ratio, pinned::kGallagherBaseline));
}

void closeness(Criterion& c) {
  const std::int64_t Y = 100'000;
  const double H = std::pow(static_cast<double>(Y), 0.3);
  const std::uint64_t Q = 10;
  const LambdaQParams params{Q, Window{Y, 2 * Y}, 1.0};
  const ArithFn nu = weighted_prime_fn(2 * Y).restricted(params.window);
  const ArithFn t_nu = model_t_nu(params);
  const ArithFn t_plus = model_t_nu_plus(
      params, beta_sieve_weights(desk_sieve_level(H, double(Q)), double(Q)));
  ClosenessOptions opts;
  opts.reference_norm = l2_norm_sq(nu);
  const auto a = closeness_integral(nu, t_nu, H, opts);
  const auto b = closeness_integral(t_nu, t_plus, H, opts);
  c.add(fmt("theta(Lambda', T_nu) = %.5f, theta(T_nu, T_nu^+) = %.5f", a.theta_effective, b.theta_effective),
        b.theta_effective <= a.theta_effective);
  c.add(fmt("both below %.2f", pinned::kClosenessThetaCeiling),
        a.theta_effective <= pinned::kClosenessThetaCeiling && b.theta_effective <= pinned::kClosenessThetaCeiling);
  c.add("theta(Lambda', T_nu) non-regression: " + baseline_note(a.theta_effective, pinned::kClosenessLambdaBaseline),
        pinned::within_baseline(a.theta_effective, pinned::kClosenessLambdaBaseline));
  c.add("theta(T_nu, T_nu^+) non-regression: " + baseline_note(b.theta_effective, pinned::kClosenessSieveBaseline),
        pinned::within_baseline(b.theta_effective, pinned::kClosenessSieveBaseline));
}

void pipeline(Criterion& c) {
  const auto config = preset_config("desk-small");
  const auto collapsed = run_pipeline(config, collapsed_inputs(config), PipelineOptions{false});
  c.add(fmt("collapsed chain: step2 %.0f, step4 %.0f", double(collapsed.exceptions_step2),
            double(collapsed.exceptions_step4)) +
            fmt(", step7 %.0f, final %.0f", double(collapsed.step7_violations), double(collapsed.final_failures)) +
            fmt(", minorization %.0f", double(collapsed.minorization_violations)),
        collapsed.exceptions_step2 == 0 && collapsed.exceptions_step4 == 0 && collapsed.step7_violations == 0 &&
            collapsed.final_failures == 0 && collapsed.minorization_violations == 0);

  const auto r = run_pipeline(config, model_inputs(config));
  c.add(fmt("desk-small: failing fraction %.4f of %.0f even n", r.failure_fraction, double(r.even_count)),
        r.failure_fraction <= pinned::kFinalFailureFraction);
  c.add(fmt("desk-small: step7 violations %.0f, minorization violations %.0f", double(r.step7_violations),
            double(r.minorization_violations)),
        r.step7_violations == 0 && r.minorization_violations == 0);
  c.add("desk-small non-regression: " + baseline_note(r.failure_fraction, pinned::kPipelineFailureBaseline),
        pinned::within_baseline(r.failure_fraction, pinned::kPipelineFailureBaseline));
}

void goldbach_truth(Criterion& c) {
  const auto big = exceptional_set(1'000'000, 999'996);
  c.add(fmt("E(10^6, 10^6 - 4) has %.0f elements", double(big.size())), big.empty());

  std::mt19937_64 rng(31337);
  std::uniform_int_distribution<std::uint64_t> hx(10'004, 1'000'000), hh(1, 10'000);
  const auto flags = oracle::prime_flags(1'000'000);
  std::size_t found = 0, disagree = 0;
  for (int k = 0; k < 20; ++k) {
    const std::uint64_t X = hx(rng), H = hh(rng);
    const auto ex = exceptional_set(X, H);
    found += ex.size();
    for (std::uint64_t n = X - H; n <= X; ++n) {
      if (n % 2 != 0) continue;
      const bool listed = std::find(ex.begin(), ex.end(), n) != ex.end();
      disagree += listed == oracle::is_goldbach(n, flags);
    }
  }
  c.add(fmt("20 random windows: %.0f exceptions, %.0f disagreements with brute force", double(found),
            double(disagree)),
        found == 0 && disagree == 0);
}

void singular_series(Criterion& c) {
  std::vector<std::uint64_t> evens;
  for (std::uint64_t n = 2; n <= 10'000; n += 2) evens.push_back(n);
  const auto series = singular_series_partial(evens, 100'000);
  double lo_series = 1e9, lo_product = 1e9;
  for (std::size_t i = 0; i < evens.size(); ++i) {
    lo_series = std::min(lo_series, series[i]);
    lo_product = std::min(lo_product, singular_series_product(evens[i], 100'000));
  }
  c.add(fmt("even n <= 10^4: min series %.5f, min product %.5f", lo_series, lo_product),
        lo_series >= kSeriesFloor && lo_product >= kSeriesFloor);

  const std::vector<std::uint64_t> odds{3, 15, 105, 1001, 9999};
  const auto odd_series = singular_series_partial(odds, 1'000'000);
  double odd_max = 0.0;
  for (double v : odd_series) odd_max = std::max(odd_max, std::abs(v));
  c.add(fmt("odd n, q_max = 10^6: max |partial sum| %.3g", odd_max), odd_max <= kOddSeriesCeiling);

  const std::vector<std::uint64_t> sample{2, 6, 30, 128, 210, 2310, 9240, 10'000};
  double gap[3] = {0, 0, 0};
  const std::uint64_t bounds[3] = {10'000, 100'000, 1'000'000};
  for (int k = 0; k < 3; ++k) {
    const auto s = singular_series_partial(sample, bounds[k]);
    for (std::size_t i = 0; i < sample.size(); ++i) {
      gap[k] = std::max(gap[k], std::abs(s[i] - singular_series_product(sample[i], bounds[k])));
    }
  }
  c.add(fmt("series vs product: max gap %.3g at 10^4, ", gap[0]) + fmt("%.3g at 10^5, %.3g at 10^6", gap[1], gap[2]),
        gap[2] <= kSeriesAgreement && gap[2] <= gap[1] && gap[1] <= gap[0]);
}

}  // namespace

int main() {
  struct Entry {
    int id;
    const char* title;
    std::function<void(Criterion&)> run;
  };
  const std::vector<Entry> entries{
      {1, "oracle equivalences", oracle_equivalences},
      {2, "character suite", character_suite},
      {3, "sieve suite", sieve_suite},
      {4, "short-sum sweeps", sweeps},
      {5, "Gallagher inequality", gallagher},
      {6, "closeness ordering", closeness},
      {7, "pipeline", pipeline},
      {8, "Goldbach ground truth", goldbach_truth},
      {9, "singular series", singular_series},
  };

  int failed = 0;
  for (const auto& e : entries) {
    Criterion c;
    const auto start = std::chrono::steady_clock::now();
    bool threw = false;
    try {
      e.run(c);
    } catch (const std::exception& ex) {
      c.add(std::string("exception: ") + ex.what(), false);
      threw = true;
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = seconds <= kBudget[e.id];
    c.add(fmt("runtime %.1f s within %.0f s", seconds, kBudget[e.id]), in_time);
    bool ok = !threw;
    for (const auto& ch : c.checks) ok = ok && ch.ok;
    failed += !ok;
    std::printf("[%s] %d %s (%.1f s)\n", ok ? "PASS" : "FAIL", e.id, e.title, seconds);
    for (const auto& ch : c.checks) std::printf("    %s %s\n", ch.ok ? "ok  " : "FAIL", ch.what.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria failed\n", failed, entries.size());
  return failed == 0 ? 0 : 1;
}
