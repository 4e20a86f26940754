#include <doctest.h>

#include <cmath>

#include "cml/arith.hpp"
#include "cml/characters.hpp"
#include "cml/error.hpp"
#include "oracles.hpp"

using namespace cml;

TEST_CASE("trivial modulus") {
  const auto chars = characters_mod(1);
  REQUIRE(chars.size() == 1);
  CHECK(chars[0].is_principal());
  for (std::int64_t n = -5; n <= 5; ++n) CHECK(chars[0](n) == std::complex<double>(1.0));
}

TEST_CASE("modulus 4") {
  const auto chars = characters_mod(4);
  REQUIRE(chars.size() == 2);
  CHECK(chars[0].is_principal());
  CHECK_FALSE(chars[1].is_principal());
  CHECK(std::abs(chars[1](3) - std::complex<double>(-1.0)) < 1e-15);
  CHECK(chars[1](2) == std::complex<double>(0.0));
  for (std::int64_t a = 0; a < 8; ++a) {
    for (std::int64_t b = 0; b < 8; ++b) {
      REQUIRE(std::abs(chars[1](a * b) - chars[1](a) * chars[1](b)) < 1e-12);
    }
  }
}

TEST_CASE("modulus 5 is a cyclic character table") {
  const auto chars = characters_mod(5);
  REQUIRE(chars.size() == 4);
  // 2 generates (Z/5)^*; each character is fixed by its value at 2.
  std::vector<std::complex<double>> at2;
  for (const auto& chi : chars) {
    at2.push_back(chi(2));
    REQUIRE(std::abs(std::pow(chi(2), 4) - std::complex<double>(1.0)) < 1e-12);
    for (int k = 0; k < 4; ++k) {
      const std::int64_t n = static_cast<std::int64_t>(std::pow(2, k)) % 5;
      REQUIRE(std::abs(chi(n) - std::pow(chi(2), k)) < 1e-12);
    }
  }
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = i + 1; j < 4; ++j) CHECK(std::abs(at2[i] - at2[j]) > 0.5);
  }
}

TEST_CASE("character axioms for q <= 60") {
  for (std::uint64_t q = 1; q <= 60; ++q) {
    const auto chars = characters_mod(q);
    REQUIRE(chars.size() == euler_phi(q));
    std::size_t principal = 0;
    for (const auto& chi : chars) {
      principal += chi.is_principal();
      REQUIRE(std::abs(chi(1) - std::complex<double>(1.0)) < 1e-14);
      for (std::int64_t n = 0; n < static_cast<std::int64_t>(q); ++n) {
        const bool unit = std::gcd<std::uint64_t>(n, q) == 1;
        REQUIRE((std::abs(chi(n)) > 0.5) == unit);
        REQUIRE(chi.exponent(n).has_value() == unit);
        REQUIRE(std::abs(chi(n + static_cast<std::int64_t>(q)) - chi(n)) < 1e-14);
        for (std::int64_t m = 0; m < static_cast<std::int64_t>(q); ++m) {
          REQUIRE(std::abs(chi(n * m) - chi(n) * chi(m)) < 1e-12);
        }
      }
      REQUIRE(chi.conj().conj() == chi);
    }
    REQUIRE(principal == 1);
    REQUIRE(chars[0].is_principal());
  }
}

TEST_CASE("orthogonality for q <= 200") {
  for (std::uint64_t q = 1; q <= 200; ++q) {
    const auto chars = characters_mod(q);
    const double phi = static_cast<double>(euler_phi(q));
    std::vector<std::vector<std::complex<double>>> table;
    for (const auto& chi : chars) {
      std::vector<std::complex<double>> row(q);
      for (std::uint64_t n = 0; n < q; ++n) row[n] = chi(static_cast<std::int64_t>(n));
      table.push_back(std::move(row));
    }
    for (std::size_t i = 0; i < chars.size(); ++i) {
      for (std::size_t j = 0; j < chars.size(); ++j) {
        std::complex<double> s{};
        for (std::uint64_t n = 0; n < q; ++n) s += table[i][n] * std::conj(table[j][n]);
        REQUIRE(std::abs(s - std::complex<double>(i == j ? phi : 0.0)) < 1e-8);
        REQUIRE((chars[i] == chars[j]) == (i == j));
      }
    }
  }
}

TEST_CASE("characters_mod range") {
  CHECK_THROWS_AS(characters_mod(0), CapacityError);
  CHECK_THROWS_AS(characters_mod(kMaxCharacterModulus + 1), CapacityError);
}

TEST_CASE("Gauss sums") {
  CHECK(std::abs(gauss_sum(characters_mod(6)[0]) - std::complex<double>(1.0)) < 1e-12);
  CHECK(std::abs(gauss_sum(characters_mod(4)[0])) < 1e-12);
  for (const auto& chi : characters_mod(5)) {
    if (chi.is_principal()) continue;
    CHECK(std::abs(gauss_sum(chi)) == doctest::Approx(std::sqrt(5.0)).epsilon(1e-9));
  }
  for (std::uint64_t q = 1; q <= 100; ++q) {
    const auto chars = characters_mod(q);
    REQUIRE(std::llround(gauss_sum(chars[0]).real()) == oracle::mobius(q));
    for (const auto& chi : chars) REQUIRE(std::abs(gauss_sum(chi)) <= std::sqrt(static_cast<double>(q)) + 1e-9);
  }
}

TEST_CASE("Ramanujan sums") {
  for (std::int64_t n = -20; n <= 20; ++n) CHECK(ramanujan_sum(1, n) == 1);
  for (std::uint64_t q = 1; q <= 50; ++q) CHECK(ramanujan_sum(q, static_cast<std::int64_t>(3 * q)) == euler_phi(q));
  CHECK(ramanujan_sum(6, 3) == -2);
  for (std::int64_t q = 1; q <= 300; ++q) {
    for (std::int64_t n = 1; n <= 300; ++n) {
      REQUIRE(ramanujan_sum(static_cast<std::uint64_t>(q), n) == std::llround(oracle::ramanujan(q, n)));
    }
  }
}

TEST_CASE("exponentials from characters") {
  CHECK(std::abs(exponential_from_characters(0, 0, 1) - std::complex<double>(1.0)) < 1e-12);
  CHECK(std::abs(exponential_from_characters(2, 3, 5) - oracle::e_frac(1, 5)) < 1e-9);
  CHECK(std::abs(exponential_from_characters(5, 7, 12) - oracle::e_frac(35, 12)) < 1e-9);
  CHECK_THROWS_AS(exponential_from_characters(2, 3, 6), DomainError);
}

TEST_CASE("character expansion in aggregate for q <= 100") {
  for (std::uint64_t q = 1; q <= 100; ++q) {
    const auto chars = characters_mod(q);
    std::vector<std::complex<double>> taus;
    for (const auto& chi : chars) taus.push_back(gauss_sum(chi.conj()));
    for (std::int64_t m = 1; m <= static_cast<std::int64_t>(q); ++m) {
      if (std::gcd<std::uint64_t>(m, q) != 1) continue;
      std::complex<double> s{};
      for (std::size_t i = 0; i < chars.size(); ++i) s += taus[i] * chars[i](m);
      const double phi = static_cast<double>(euler_phi(q));
      REQUIRE(std::abs(s - phi * oracle::e_frac(m, static_cast<std::int64_t>(q))) < 1e-8 * phi);
    }
  }
}

TEST_CASE("exceptional characters are explicit") {
  const auto chars = characters_mod(7);
  const ExceptionalCharacters none;
  CHECK(none.members().empty());
  const ExceptionalCharacters some(7, {chars[1]});
  CHECK(some.contains(chars[1]));
  CHECK_FALSE(some.contains(chars[2]));
  CHECK_THROWS(ExceptionalCharacters(8, {chars[1]}));
}
