#pragma once

// Short-interval Fourier closeness: Farey arcs, the Gallagher functional and
// estimates of sup_alpha int_{-1/H}^{1/H} |f^ - g^|^2(alpha + beta) d beta.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "cml/arithfn.hpp"
#include "cml/models.hpp"

namespace cml {

struct FareyArc {
  std::uint64_t q = 1;
  std::uint64_t r = 0;
  double center = 0.0;
  /// Mediant endpoints; the arc is [left, right) on the circle. left may be
  /// negative for the arc at 0/1.
  double left = 0.0;
  double right = 0.0;
  /// 1 / (q * order); the arc lies within center +- half_width.
  double half_width = 0.0;
};

/// Arcs around every r/q in [0, 1) with q <= order, in increasing order of
/// r/q. There are sum_{q <= order} phi(q) of them. order = 0 -> DomainError.
std::vector<FareyArc> farey_dissection(std::uint64_t order);

/// Index of the arc containing alpha (reduced mod 1).
std::size_t farey_locate(const std::vector<FareyArc>& arcs, double alpha);

/// Number of arcs meeting the closed interval [lo, hi] on the circle.
std::size_t farey_overlap_count(const std::vector<FareyArc>& arcs, double lo, double hi);

/// int_{-1/delta}^{1/delta} |f^(beta)|^2 d beta by the trapezoidal rule with
/// at least samples_per_unit samples per 1/span, span = support length.
double gallagher_lhs(const ArithFn& f, double delta, double samples_per_unit = 8.0);
/// delta^{-2} sum_t |sum_{t - floor(delta/2) < n <= t} f(n)|^2.
double gallagher_rhs(const ArithFn& f, double delta);
/// The same integral in closed form through the autocorrelation of f.
double gallagher_lhs_exact(const ArithFn& f, double delta);

struct GallagherTrials {
  double delta = 50.0;
  std::size_t trials = 100;
  std::uint64_t seed = 7;
  std::int64_t start = 10'000;
  std::int64_t span = 10'000;
  double samples_per_unit = 8.0;
};

struct GallagherTrialResult {
  std::size_t trial;
  double lhs;
  double rhs;
  double ratio;
};

struct GallagherReport {
  std::vector<GallagherTrialResult> rows;
  double max_ratio = 0.0;
  double ceiling = 0.0;
  bool pass = false;
};

/// Random +-1 functions on [start, start + span), one per trial, drawn from a
/// seeded mt19937_64; compares lhs / rhs with the pinned ceiling.
GallagherReport run_gallagher_trials(const GallagherTrials& spec);

struct ArcContribution {
  FareyArc arc;
  std::int64_t window = 0;  // floor(q H^{1/2} / 3), at least 1
  double gallagher = 0.0;   // (q^2 H)^{-1} sum_t |twisted window sum|^2
  double direct = -1.0;     // max of the exact window integral on the arc; -1 if not sampled
};

struct ClosenessOptions {
  /// Normalisation for theta_effective; <= 0 selects ||f||_2^2.
  double reference_norm = 0.0;
  /// Arcs (by largest Gallagher value) sampled densely by the direct route.
  std::size_t direct_arcs = 16;
  std::size_t samples_per_arc = 64;
  /// Also evaluate the exact integral on a uniform grid of the whole circle.
  bool global_grid = true;
};

struct ClosenessReport {
  double H = 0.0;
  std::uint64_t order = 0;
  double gallagher_sup = 0.0;
  double direct_sup = 0.0;
  double direct_argmax = 0.0;
  double sup_estimate = 0.0;
  double reference_norm = 0.0;
  double theta_effective = 0.0;
  std::size_t samples_per_arc = 0;
  std::size_t global_grid_points = 0;
  std::vector<ArcContribution> per_arc;
};

/// Estimates the sup over alpha of the window integral of |(f - g)^|^2 in two
/// ways: the arc functional over Farey arcs of order floor(H^{1/2}), and the
/// exact integral sampled near the largest arcs (and on a global grid). The
/// union support of f and g must be longer than 2H.
ClosenessReport closeness_integral(const ArithFn& f, const ArithFn& g, double H,
                                   const ClosenessOptions& options = {});

/// The exact window integral at one alpha, for cross-checks.
double window_integral(const ArithFn& d, double H, double alpha);

// --- lemma sweeps -------------------------------------------------------------

struct SweepPoint {
  std::int64_t t;
  double h;
  Twist twist;
};

struct SweepRow {
  SweepPoint point;
  ShortSumResult result;
};

struct SweepReport {
  std::vector<SweepRow> rows;
  double max_ratio_major = 0.0;
  double max_ratio_minor = 0.0;
  std::size_t major_points = 0;
  std::size_t minor_points = 0;
  double ceiling = 0.0;
  bool pass = false;

  double max_ratio() const { return max_ratio_major > max_ratio_minor ? max_ratio_major : max_ratio_minor; }
};

/// Named grids: "singleton", "small" and "full". Unknown name -> DomainError.
/// Moduli up to `Q` (resp. z) feed the main-term branch, larger ones the other.
std::vector<SweepPoint> short_sum_grid(const std::string& name, std::uint64_t Q);

SweepReport verify_lambda_q_short_sums(const std::vector<SweepPoint>& grid, std::uint64_t Q);
SweepReport verify_sieve_short_sums(const std::vector<SweepPoint>& grid, const SieveSystem& sieve);

// --- character diagnostics ----------------------------------------------------

struct CharacterDiagnostic {
  std::size_t character_index;  // position in characters_mod(q)
  bool principal;
  double max_window_sum;        // max_t |sum_{t-w < n <= t} d(n) chi(n)|
};

/// Per-character maxima of short windowed character sums of d mod q.
std::vector<CharacterDiagnostic> character_window_maxima(const ArithFn& d, std::uint64_t q,
                                                         std::int64_t width);

// CSV of the per-arc breakdown: q,r,center,window,gallagher,direct.
void write_arc_csv(std::ostream& out, const ClosenessReport& report);

}  // namespace cml
