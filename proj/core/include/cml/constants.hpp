#pragma once

// Pinned empirical constants. The asymptotic O-constants are unspecified, so
// ceilings are fixed up front and baselines are measured values recorded
// after the first full run. A later run regresses when it exceeds a
// baseline by more than kRegressionSlack.

namespace cml::pinned {

/// Largest accepted |error| / bound over a short-sum sweep.
inline constexpr double kShortSumRatioCeiling = 4.0;
/// Largest accepted lhs / rhs over the Gallagher trials.
inline constexpr double kGallagherRatioCeiling = 20.0;
/// Relative slack before a measured value counts as a regression.
inline constexpr double kRegressionSlack = 0.10;

/// Closeness ceiling, relative to ||Lambda'||_2^2 on (Y, 2Y].
inline constexpr double kClosenessThetaCeiling = 0.1;
/// Desk-small pipeline: failing fraction of even n in [X - H, X].
inline constexpr double kFinalFailureFraction = 0.01;

// Baselines, measured on the "small" grids with Q = z = 10.
inline constexpr double kLambdaQShortSumBaseline = 0.0212385;  // 272 points, first run 2026-10-15
inline constexpr double kSieveShortSumBaseline = 0.588363;  // D = 10^4, 272 points, first run 2026-10-15
// Gallagher trials: delta 50, 100 trials, seed 7, span 10^4 from 10^4.
inline constexpr double kGallagherBaseline = 4.22802;  // first run 2026-10-15
// Closeness at Y = 10^5, H = Y^0.3, Q = 10.
inline constexpr double kClosenessLambdaBaseline = 0.0480915;  // (Lambda', T_nu), first run 2026-10-15
inline constexpr double kClosenessSieveBaseline = 0.00690494;  // (T_nu, T_nu^+), D = z^11, first run 2026-10-15
// Desk-small pipeline failing fraction.
inline constexpr double kPipelineFailureBaseline = 0.0;  // 0 of 33 even n, first run 2026-10-15

/// True when measured stays within the baseline plus slack.
inline constexpr bool within_baseline(double measured, double baseline) {
  return measured <= baseline * (1.0 + kRegressionSlack) + 1e-12;
}

}  // namespace cml::pinned
