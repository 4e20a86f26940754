#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>
#include <ostream>

#include "cml/characters.hpp"
#include "cml/closeness.hpp"
#include "cml/error.hpp"
#include "cml/parallel.hpp"
#include "spectral.hpp"
#include "transform.hpp"

namespace cml {
namespace {

double arc_functional(const ArithFn& d, const FareyArc& arc, double H, std::int64_t width) {
  const auto sums = sliding_window_sums(
      d, width, Twist{static_cast<std::int64_t>(arc.r), static_cast<std::int64_t>(arc.q)});
  double acc = 0.0;
  for (const auto& s : sums) acc += std::norm(s.sum);
  const double q = static_cast<double>(arc.q);
  return acc / (q * q * H);
}

}  // namespace

double window_integral(const ArithFn& d, double H, double alpha) {
  if (!(H > 0.0)) throw DomainError("window_integral: H must be positive");
  const auto c = detail::window_kernel_coefficients(detail::autocorrelation(d), 1.0 / H);
  return fourier_eval(ArithFn(0, c), alpha).real();
}

ClosenessReport closeness_integral(const ArithFn& f, const ArithFn& g, double H,
                                   const ClosenessOptions& options) {
  if (!(H >= 1.0)) throw DomainError("closeness_integral: H must be at least 1");
  const ArithFn d = f - g;
  if (!(static_cast<double>(d.size()) > 2.0 * H)) {
    throw DomainError("closeness_integral: support span must exceed 2H");
  }

  ClosenessReport report;
  report.H = H;
  report.order = static_cast<std::uint64_t>(std::floor(std::sqrt(H)));
  report.reference_norm = options.reference_norm > 0.0 ? options.reference_norm : l2_norm_sq(f);

  // Arc functional with window floor(q H^{1/2} / 3), floored at 1 so that
  // small q at small H still sees one term per t.
  const auto arcs = farey_dissection(report.order);
  report.per_arc.resize(arcs.size());
  const double root_h = std::sqrt(H);
  parallel_for(arcs.size(), [&](std::size_t i) {
    auto& slot = report.per_arc[i];
    slot.arc = arcs[i];
    slot.window = std::max<std::int64_t>(
        1, static_cast<std::int64_t>(std::floor(static_cast<double>(arcs[i].q) * root_h / 3.0)));
    slot.gallagher = arc_functional(d, arcs[i], H, slot.window);
  });
  for (const auto& a : report.per_arc) report.gallagher_sup = std::max(report.gallagher_sup, a.gallagher);

  // Exact integral: Re sum_k c_k e(alpha k).
  const auto coeffs = detail::window_kernel_coefficients(detail::autocorrelation(d), 1.0 / H);
  const ArithFn series(0, coeffs);
  double best = 0.0;
  double best_alpha = 0.0;
  const auto consider = [&](double value, double alpha) {
    if (value > best) {
      best = value;
      best_alpha = alpha - std::floor(alpha);
    }
  };

  std::vector<std::size_t> order(arcs.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return report.per_arc[a].gallagher > report.per_arc[b].gallagher;
  });
  const std::size_t sampled = std::min(options.direct_arcs, order.size());
  const std::size_t samples = std::max<std::size_t>(2, options.samples_per_arc);
  report.samples_per_arc = samples;
  for (std::size_t s = 0; s < sampled; ++s) {
    auto& slot = report.per_arc[order[s]];
    const double step = (slot.arc.right - slot.arc.left) / static_cast<double>(samples - 1);
    const auto values = fourier_eval_grid(series, slot.arc.left, step, samples);
    double arc_best = 0.0;
    for (std::size_t j = 0; j < samples; ++j) {
      const double v = values[j].real();
      arc_best = std::max(arc_best, v);
      consider(v, slot.arc.left + static_cast<double>(j) * step);
    }
    slot.direct = arc_best;
  }

  if (options.global_grid) {
    const std::size_t m = detail::next_power_of_two(std::max<std::size_t>(4096, 4 * coeffs.size()));
    report.global_grid_points = m;
    const auto values = detail::trig_series_on_grid(coeffs, m);
    for (std::size_t j = 0; j < m; ++j) {
      consider(values[j].real(), static_cast<double>(j) / static_cast<double>(m));
    }
  }

  report.direct_sup = best;
  report.direct_argmax = best_alpha;
  report.sup_estimate = std::max(report.gallagher_sup, report.direct_sup);
  if (report.reference_norm > 0.0) {
    report.theta_effective = report.sup_estimate / report.reference_norm;
  } else {
    report.theta_effective =
        report.sup_estimate == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
  }
  return report;
}

std::vector<CharacterDiagnostic> character_window_maxima(const ArithFn& d, std::uint64_t q,
                                                         std::int64_t width) {
  if (width < 1) throw DomainError("character_window_maxima: width must be at least 1");
  const auto chars = characters_mod(q);
  std::vector<CharacterDiagnostic> out(chars.size());
  const auto v = d.values();
  parallel_for(chars.size(), [&](std::size_t c) {
    const auto& chi = chars[c];
    std::vector<Complex> prefix(v.size() + 1);
    for (std::size_t i = 0; i < v.size(); ++i) {
      prefix[i + 1] = prefix[i] + v[i] * chi(d.support_start() + static_cast<std::int64_t>(i));
    }
    const auto len = static_cast<std::int64_t>(v.size());
    double best = 0.0;
    // Window ending at support index e covers indices (e - width, e].
    for (std::int64_t e = 0; e < len + width - 1; ++e) {
      const std::int64_t hi = std::min(e + 1, len);
      const std::int64_t lo = std::clamp<std::int64_t>(e - width + 1, 0, len);
      best = std::max(best, std::abs(prefix[static_cast<std::size_t>(hi)] -
                                     prefix[static_cast<std::size_t>(lo)]));
    }
    out[c] = {c, chi.is_principal(), best};
  });
  return out;
}

void write_arc_csv(std::ostream& out, const ClosenessReport& report) {
  out << "q,r,center,window,gallagher,direct\n";
  char buf[256];
  for (const auto& a : report.per_arc) {
    std::snprintf(buf, sizeof buf, "%llu,%llu,%.17g,%lld,%.17g,%.17g\n",
                  static_cast<unsigned long long>(a.arc.q), static_cast<unsigned long long>(a.arc.r),
                  a.arc.center, static_cast<long long>(a.window), a.gallagher, a.direct);
    out << buf;
  }
}

}  // namespace cml
