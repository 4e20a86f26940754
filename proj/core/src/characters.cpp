#include "cml/characters.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <string>

#include "cml/arith.hpp"
#include "cml/arithfn.hpp"
#include "cml/error.hpp"
#include "intmath.hpp"

namespace cml {
namespace {

constexpr std::uint32_t kNoLog = std::numeric_limits<std::uint32_t>::max();

std::uint64_t powmod(std::uint64_t base, std::uint64_t exp, std::uint64_t mod) {
  std::uint64_t result = 1 % mod;
  base %= mod;
  while (exp > 0) {
    if (exp & 1U) result = result * base % mod;
    base = base * base % mod;
    exp >>= 1U;
  }
  return result;
}

std::uint64_t primitive_root_mod_prime(std::uint64_t p) {
  if (p == 2) return 1;
  const auto order_factors = factorize(p - 1).factors;
  for (std::uint64_t g = 2; g < p; ++g) {
    const bool generates = std::all_of(order_factors.begin(), order_factors.end(),
                                       [&](const PrimePower& f) {
                                         return powmod(g, (p - 1) / f.prime, p) != 1;
                                       });
    if (generates) return g;
  }
  throw DomainError("no primitive root found");  // unreachable for primes
}

}  // namespace

class CharacterGroup {
 public:
  struct Component {
    std::uint64_t prime_power;
    std::uint64_t generator;
    std::uint32_t order;
  };

  explicit CharacterGroup(std::uint64_t q) : modulus_(q), phi_(euler_phi(q)) {
    struct LocalTable {
      std::uint64_t prime_power;
      std::size_t first_component;
      std::size_t width;
      std::vector<std::uint32_t> logs;  // prime_power * width
    };
    std::vector<LocalTable> locals;

    for (const auto& [p, e] : factorize(q).factors) {
      std::uint64_t pe = 1;
      for (int i = 0; i < e; ++i) pe *= p;
      LocalTable t{pe, components_.size(), 0, {}};
      if (p == 2) {
        if (e == 1) continue;  // (Z/2Z)^* is trivial
        if (e == 2) {
          components_.push_back({pe, 3, 2});
          t.width = 1;
          t.logs.assign(pe, kNoLog);
          t.logs[1] = 0;
          t.logs[3] = 1;
        } else {
          const auto half = static_cast<std::uint32_t>(pe / 4);
          components_.push_back({pe, pe - 1, 2});
          components_.push_back({pe, 5, half});
          t.width = 2;
          t.logs.assign(pe * 2, kNoLog);
          std::uint64_t five_pow = 1;
          for (std::uint32_t b = 0; b < half; ++b) {
            for (std::uint32_t a = 0; a < 2; ++a) {
              const std::uint64_t x = a == 0 ? five_pow : pe - five_pow;
              t.logs[x * 2] = a;
              t.logs[x * 2 + 1] = b;
            }
            five_pow = five_pow * 5 % pe;
          }
        }
      } else {
        std::uint64_t g = primitive_root_mod_prime(p);
        if (e >= 2 && powmod(g, p - 1, p * p) == 1) g += p;
        const auto order = static_cast<std::uint32_t>(pe / p * (p - 1));
        components_.push_back({pe, g, order});
        t.width = 1;
        t.logs.assign(pe, kNoLog);
        std::uint64_t x = 1;
        for (std::uint32_t i = 0; i < order; ++i) {
          t.logs[x] = i;
          x = x * g % pe;
        }
      }
      locals.push_back(std::move(t));
    }

    const std::size_t k = components_.size();
    for (const auto& c : components_) weight_.push_back(phi_ / c.order);

    unit_.assign(q, 0);
    logs_.assign(q * k, 0);
    for (std::uint64_t n = 0; n < q; ++n) {
      if (std::gcd(n, q) != 1) continue;
      unit_[n] = 1;
      for (const auto& t : locals) {
        const std::uint64_t local = n % t.prime_power;
        for (std::size_t w = 0; w < t.width; ++w) {
          logs_[n * k + t.first_component + w] = t.logs[local * t.width + w];
        }
      }
    }

    roots_.resize(phi_);
    for (std::uint64_t j = 0; j < phi_; ++j) {
      roots_[j] = unit_exponential(static_cast<std::int64_t>(j), static_cast<std::int64_t>(phi_));
    }
  }

  std::uint64_t modulus() const { return modulus_; }
  std::uint64_t phi() const { return phi_; }
  std::span<const Component> components() const { return components_; }

  std::optional<std::uint64_t> exponent(std::span<const std::uint32_t> index,
                                        std::int64_t n) const {
    const auto r = static_cast<std::uint64_t>(detail::mod_floor(n, static_cast<std::int64_t>(modulus_)));
    if (!unit_[r]) return std::nullopt;
    const std::size_t k = components_.size();
    std::uint64_t acc = 0;
    for (std::size_t i = 0; i < k; ++i) {
      const std::uint64_t term =
          std::uint64_t{index[i]} * logs_[r * k + i] % components_[i].order * weight_[i];
      acc = (acc + term) % phi_;
    }
    return acc;
  }

  const std::complex<double>& root(std::uint64_t k) const { return roots_[k]; }

 private:
  std::uint64_t modulus_;
  std::uint64_t phi_;
  std::vector<Component> components_;
  std::vector<std::uint64_t> weight_;
  std::vector<std::uint8_t> unit_;
  std::vector<std::uint32_t> logs_;
  std::vector<std::complex<double>> roots_;
};

DirichletCharacter::DirichletCharacter(std::shared_ptr<const CharacterGroup> group,
                                       std::vector<std::uint32_t> index)
    : group_(std::move(group)), index_(std::move(index)) {}

std::uint64_t DirichletCharacter::modulus() const { return group_->modulus(); }
std::uint64_t DirichletCharacter::order_denominator() const { return group_->phi(); }

bool DirichletCharacter::is_principal() const {
  return std::all_of(index_.begin(), index_.end(), [](std::uint32_t j) { return j == 0; });
}

std::optional<std::uint64_t> DirichletCharacter::exponent(std::int64_t n) const {
  return group_->exponent(index_, n);
}

std::complex<double> DirichletCharacter::operator()(std::int64_t n) const {
  const auto k = exponent(n);
  return k ? group_->root(*k) : std::complex<double>{};
}

DirichletCharacter DirichletCharacter::conj() const {
  std::vector<std::uint32_t> idx(index_);
  const auto comps = group_->components();
  for (std::size_t i = 0; i < idx.size(); ++i) {
    idx[i] = idx[i] == 0 ? 0 : comps[i].order - idx[i];
  }
  return DirichletCharacter(group_, std::move(idx));
}

std::vector<std::uint64_t> DirichletCharacter::exponent_table() const {
  std::vector<std::uint64_t> table(modulus(), std::numeric_limits<std::uint64_t>::max());
  for (std::uint64_t n = 0; n < modulus(); ++n) {
    if (const auto k = exponent(static_cast<std::int64_t>(n))) table[n] = *k;
  }
  return table;
}

bool operator==(const DirichletCharacter& a, const DirichletCharacter& b) {
  return a.modulus() == b.modulus() && a.index_ == b.index_;
}

std::vector<DirichletCharacter> characters_mod(std::uint64_t q) {
  if (q < 1 || q > kMaxCharacterModulus) {
    throw CapacityError("characters_mod: modulus " + std::to_string(q) + " outside [1, 1e5]");
  }
  auto group = std::make_shared<const CharacterGroup>(q);
  const auto comps = group->components();

  std::vector<DirichletCharacter> out;
  out.reserve(group->phi());
  std::vector<std::uint32_t> idx(comps.size(), 0);
  // Odometer with the last component varying fastest.
  while (true) {
    out.push_back(DirichletCharacter(group, idx));
    std::size_t i = idx.size();
    while (i > 0) {
      --i;
      if (++idx[i] < comps[i].order) break;
      idx[i] = 0;
      if (i == 0) return out;
    }
    if (idx.empty()) return out;
  }
}

std::complex<double> gauss_sum(const DirichletCharacter& chi) {
  const auto q = static_cast<std::int64_t>(chi.modulus());
  std::complex<double> acc{};
  for (std::int64_t r = 0; r < q; ++r) {
    const auto k = chi.exponent(r);
    if (!k) continue;
    acc += chi(r) * unit_exponential(r, q);
  }
  return acc;
}

std::int64_t ramanujan_sum(std::uint64_t q, std::int64_t n) {
  if (q == 0) throw DomainError("ramanujan_sum: q must be positive");
  const auto abs_n = static_cast<std::uint64_t>(n < 0 ? -n : n);
  const std::uint64_t g = std::gcd(q, abs_n);  // gcd(q, 0) = q
  const std::uint64_t m = q / g;
  const int mu = mobius(m);
  if (mu == 0) return 0;
  return mu * static_cast<std::int64_t>(euler_phi(q) / euler_phi(m));
}

std::complex<double> exponential_from_characters(std::int64_t r, std::int64_t n,
                                                 std::uint64_t q) {
  if (q == 0) throw DomainError("exponential_from_characters: q must be positive");
  const std::int64_t m = detail::mulmod(r, n, static_cast<std::int64_t>(q));
  if (std::gcd(static_cast<std::uint64_t>(m), q) != 1) {
    throw DomainError("exponential_from_characters: requires gcd(rn, q) = 1");
  }
  std::complex<double> acc{};
  for (const auto& chi : characters_mod(q)) acc += gauss_sum(chi.conj()) * chi(m);
  return acc / static_cast<double>(euler_phi(q));
}

ExceptionalCharacters::ExceptionalCharacters(std::uint64_t modulus,
                                             std::vector<DirichletCharacter> members)
    : modulus_(modulus), members_(std::move(members)) {
  for (const auto& chi : members_) {
    if (chi.modulus() != modulus_) {
      throw ContractError("exceptional character has the wrong modulus");
    }
  }
}

bool ExceptionalCharacters::contains(const DirichletCharacter& chi) const {
  return std::find(members_.begin(), members_.end(), chi) != members_.end();
}

}  // namespace cml
