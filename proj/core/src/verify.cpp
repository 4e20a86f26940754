#include <algorithm>
#include <cmath>
#include <numeric>

#include "cml/arith.hpp"
#include "cml/closeness.hpp"
#include "cml/constants.hpp"
#include "cml/error.hpp"
#include "cml/parallel.hpp"

namespace cml {
namespace {

// r values for modulus q: every unit when `all`, else 1 and q - 1.
std::vector<std::int64_t> residues(std::int64_t q, bool all) {
  if (q == 1) return {0};
  std::vector<std::int64_t> out;
  if (all) {
    for (std::int64_t r = 1; r < q; ++r) {
      if (std::gcd(r, q) == 1) out.push_back(r);
    }
  } else {
    out.push_back(1);
    if (q - 1 != 1) out.push_back(q - 1);
  }
  return out;
}

SweepReport finish(std::vector<SweepRow> rows) {
  SweepReport report;
  report.ceiling = pinned::kShortSumRatioCeiling;
  for (const auto& row : rows) {
    if (row.result.major) {
      ++report.major_points;
      report.max_ratio_major = std::max(report.max_ratio_major, row.result.ratio);
    } else {
      ++report.minor_points;
      report.max_ratio_minor = std::max(report.max_ratio_minor, row.result.ratio);
    }
  }
  report.rows = std::move(rows);
  report.pass = report.max_ratio() <= report.ceiling;
  return report;
}

}  // namespace

std::vector<SweepPoint> short_sum_grid(const std::string& name, std::uint64_t Q) {
  if (Q < 1) throw DomainError("short_sum_grid: Q must be at least 1");
  const auto Qi = static_cast<std::int64_t>(Q);
  if (name == "singleton") {
    // A window of one full period of Lambda_Q (the primorial of Q) makes the
    // main term exact.
    std::int64_t period = 1;
    for (const auto p : sieve_primes(Q)) {
      if (period > 10'000'000 / static_cast<std::int64_t>(p)) return {{10'000, 100.0, Twist{0, 1}}};
      period *= static_cast<std::int64_t>(p);
    }
    return {{std::max<std::int64_t>(10'000, 2 * period), static_cast<double>(period), Twist{0, 1}}};
  }

  std::vector<std::int64_t> ts;
  std::vector<double> hs;
  std::vector<std::int64_t> minor;
  bool all_units = false;
  if (name == "small") {
    ts = {20'000, 100'000, 500'000, 1'000'000};
    hs = {500.0, 5000.0};
    minor = {Qi + 1, Qi + 3, 2 * Qi + 1, 3 * Qi + 7, 5 * Qi + 3, 10 * Qi - 3, 20 * Qi + 1, 50 * Qi + 7};
  } else if (name == "full") {
    ts = {20'000, 50'000, 100'000, 250'000, 500'000, 1'000'000};
    hs = {100.0, 1000.0, 10'000.0};
    for (std::int64_t q = Qi + 1; q <= 3 * Qi; ++q) minor.push_back(q);
    for (std::int64_t q : {5 * Qi + 3, 10 * Qi - 3, 20 * Qi + 1, 50 * Qi + 7, 100 * Qi + 1}) {
      minor.push_back(q);
    }
    all_units = true;
  } else {
    throw DomainError("short_sum_grid: unknown grid '" + name + "'");
  }

  std::vector<SweepPoint> grid;
  const auto add_modulus = [&](std::int64_t q) {
    for (std::int64_t r : residues(q, all_units)) {
      for (std::int64_t t : ts) {
        for (double h : hs) grid.push_back({t, h, Twist{r, q}});
      }
    }
  };
  for (std::int64_t q = 1; q <= Qi; ++q) add_modulus(q);
  for (std::int64_t q : minor) add_modulus(q);
  return grid;
}

SweepReport verify_lambda_q_short_sums(const std::vector<SweepPoint>& grid, std::uint64_t Q) {
  std::vector<SweepRow> rows(grid.size());
  parallel_for(grid.size(), [&](std::size_t i) {
    rows[i] = {grid[i], lambda_q_short_sum(grid[i].t, grid[i].h, Q, grid[i].twist)};
  });
  return finish(std::move(rows));
}

SweepReport verify_sieve_short_sums(const std::vector<SweepPoint>& grid, const SieveSystem& sieve) {
  std::vector<SweepRow> rows(grid.size());
  parallel_for(grid.size(), [&](std::size_t i) {
    rows[i] = {grid[i], sieve_short_sum(grid[i].t, grid[i].h, sieve, grid[i].twist)};
  });
  return finish(std::move(rows));
}

}  // namespace cml
