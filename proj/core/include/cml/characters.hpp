#pragma once

// Dirichlet characters, Gauss sums and Ramanujan sums.
//
// A character mod q is stored through exact exponents: chi(n) = e(k(n)/phi(q))
// for gcd(n, q) = 1. Equality and orthogonality are decided on exponents; the
// complex values come from a per-modulus table of phi(q)-th roots of unity.

#include <complex>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <vector>

namespace cml {

/// Structure of (Z/qZ)^* as a product of cyclic components, with discrete
/// logarithm tables. Shared by every character of the same modulus.
class CharacterGroup;

class DirichletCharacter {
 public:
  std::uint64_t modulus() const;
  /// phi(q); exponents live in [0, order_denominator()).
  std::uint64_t order_denominator() const;
  bool is_principal() const;

  /// k with chi(n) = e(k / phi(q)), or nullopt when gcd(n, q) > 1.
  std::optional<std::uint64_t> exponent(std::int64_t n) const;
  std::complex<double> operator()(std::int64_t n) const;

  DirichletCharacter conj() const;
  /// Exponents j_i of this character on each cyclic component.
  std::span<const std::uint32_t> index() const { return index_; }

  /// Exponent table indexed by residue (UINT64_MAX on non-units).
  std::vector<std::uint64_t> exponent_table() const;

  friend bool operator==(const DirichletCharacter& a, const DirichletCharacter& b);

 private:
  friend std::vector<DirichletCharacter> characters_mod(std::uint64_t q);
  DirichletCharacter(std::shared_ptr<const CharacterGroup> group, std::vector<std::uint32_t> index);

  std::shared_ptr<const CharacterGroup> group_;
  std::vector<std::uint32_t> index_;
};

inline constexpr std::uint64_t kMaxCharacterModulus = 100'000;

/// All phi(q) characters mod q, principal first, then lexicographic in the
/// component exponents. Components are ordered by prime; for 2^e (e >= 3)
/// the order-2 component generated by -1 precedes the one generated by 5.
/// q outside [1, 10^5] -> CapacityError.
std::vector<DirichletCharacter> characters_mod(std::uint64_t q);

/// tau(chi) = sum over units r mod q of chi(r) e(r/q).
std::complex<double> gauss_sum(const DirichletCharacter& chi);

/// c_q(n) = mu(q/g) phi(q) / phi(q/g), g = gcd(q, n).
std::int64_t ramanujan_sum(std::uint64_t q, std::int64_t n);

/// (1/phi(q)) sum_chi tau(conj chi) chi(rn); equals e(rn/q) when
/// gcd(rn, q) = 1, and throws DomainError otherwise.
std::complex<double> exponential_from_characters(std::int64_t r, std::int64_t n, std::uint64_t q);

/// Explicit, user-supplied set of excluded characters for one modulus.
/// Never discovered by the library.
class ExceptionalCharacters {
 public:
  ExceptionalCharacters() = default;
  ExceptionalCharacters(std::uint64_t modulus, std::vector<DirichletCharacter> members);

  std::uint64_t modulus() const { return modulus_; }
  std::span<const DirichletCharacter> members() const { return members_; }
  bool contains(const DirichletCharacter& chi) const;

 private:
  std::uint64_t modulus_ = 0;
  std::vector<DirichletCharacter> members_;
};

}  // namespace cml
