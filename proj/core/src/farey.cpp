#include <algorithm>
#include <cmath>

#include "cml/closeness.hpp"
#include "cml/error.hpp"

namespace cml {
namespace {

struct Fraction {
  std::int64_t a;
  std::int64_t b;
};

double mediant(Fraction x, Fraction y) {
  return static_cast<double>(x.a + y.a) / static_cast<double>(x.b + y.b);
}

}  // namespace

std::vector<FareyArc> farey_dissection(std::uint64_t order) {
  if (order == 0) throw DomainError("farey_dissection: order must be at least 1");
  if (order > 100'000) throw CapacityError("farey_dissection: order above 10^5");
  const auto n = static_cast<std::int64_t>(order);

  // Farey sequence in [0, 1) by the next-term recurrence.
  std::vector<Fraction> seq{{0, 1}};
  Fraction x{0, 1};
  Fraction y{1, n};
  while (y.a < y.b) {
    seq.push_back(y);
    const std::int64_t k = (n + x.b) / y.b;
    const Fraction z{k * y.a - x.a, k * y.b - x.b};
    x = y;
    y = z;
  }

  std::vector<FareyArc> arcs;
  arcs.reserve(seq.size());
  for (std::size_t i = 0; i < seq.size(); ++i) {
    const Fraction prev = i == 0 ? Fraction{seq.back().a - seq.back().b, seq.back().b} : seq[i - 1];
    const Fraction next = i + 1 == seq.size() ? Fraction{1, 1} : seq[i + 1];
    FareyArc arc;
    arc.q = static_cast<std::uint64_t>(seq[i].b);
    arc.r = static_cast<std::uint64_t>(seq[i].a);
    arc.center = static_cast<double>(seq[i].a) / static_cast<double>(seq[i].b);
    arc.left = mediant(prev, seq[i]);
    arc.right = mediant(seq[i], next);
    arc.half_width = 1.0 / (static_cast<double>(arc.q) * static_cast<double>(order));
    arcs.push_back(arc);
  }
  return arcs;
}

std::size_t farey_locate(const std::vector<FareyArc>& arcs, double alpha) {
  if (arcs.empty()) throw DomainError("farey_locate: empty dissection");
  const double a = alpha - std::floor(alpha);
  const auto it = std::upper_bound(arcs.begin(), arcs.end(), a,
                                   [](double v, const FareyArc& arc) { return v < arc.right; });
  return it == arcs.end() ? 0 : static_cast<std::size_t>(it - arcs.begin());
}

std::size_t farey_overlap_count(const std::vector<FareyArc>& arcs, double lo, double hi) {
  std::size_t count = 0;
  for (const auto& arc : arcs) {
    for (int shift = -2; shift <= 2; ++shift) {
      if (arc.left + shift <= hi && lo < arc.right + shift) {
        ++count;
        break;
      }
    }
  }
  return count;
}

}  // namespace cml
