#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "cml/arith.hpp"
#include "cml/arithfn.hpp"
#include "cml/error.hpp"
#include "oracles.hpp"

using namespace cml;

namespace {

ArithFn random_fn(std::mt19937_64& rng, std::int64_t max_start, std::size_t max_len) {
  std::uniform_int_distribution<std::int64_t> start(0, max_start);
  std::uniform_int_distribution<std::size_t> len(1, max_len);
  std::uniform_real_distribution<double> value(-1.0, 1.0);
  std::vector<double> v(len(rng));
  for (auto& x : v) x = value(rng);
  return ArithFn(start(rng), std::move(v));
}

std::vector<double> dense(const ArithFn& f, std::int64_t lo, std::int64_t hi) {
  std::vector<double> out;
  for (std::int64_t n = lo; n < hi; ++n) out.push_back(f(n));
  return out;
}

double max_abs(std::span<const double> v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

}  // namespace

TEST_CASE("construction guards") {
  CHECK_THROWS_AS(ArithFn(-1, {1.0}), DomainError);
  CHECK_THROWS_AS(ArithFn(kSupportBound, {1.0}), CapacityError);
  const ArithFn f(3, {1.0, 2.0});
  CHECK(f(2) == 0.0);
  CHECK(f(3) == 1.0);
  CHECK(f(4) == 2.0);
  CHECK(f(5) == 0.0);
}

TEST_CASE("convolution of point masses and boxes") {
  const ArithFn one = ArithFn::point_mass(1);
  const ArithFn two = convolve(one, one);
  CHECK(two.support_start() == 2);
  CHECK(two.size() == 1);
  CHECK(two(2) == 1.0);

  const ArithFn box = ArithFn::constant(Window{-1, 2}, 1.0);
  const ArithFn tri = convolve(box, box);
  CHECK(tri.support_start() == 0);
  CHECK(dense(tri, 0, 5) == std::vector<double>{1, 2, 3, 2, 1});
}

TEST_CASE("prime-pair convolution at 100") {
  const ArithFn lambda = weighted_prime_fn(100);
  const ArithFn sq = convolve(lambda, lambda);
  CHECK(sq(100) == doctest::Approx(oracle::prime_pair_weight(100)).epsilon(1e-12));
  for (auto path : {ConvolutionPath::kDirect, ConvolutionPath::kTransform}) {
    const ArithFn s = convolve(lambda, lambda, path);
    CHECK(s(100) == doctest::Approx(oracle::prime_pair_weight(100)).epsilon(1e-10));
  }
  CHECK(convolve_at(lambda, lambda, 100) == doctest::Approx(oracle::prime_pair_weight(100)).epsilon(1e-12));
}

TEST_CASE("direct and transform convolution agree with the oracle") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const ArithFn f = random_fn(rng, 300, 512);
    const ArithFn g = random_fn(rng, 300, 512);
    const auto expect = oracle::convolve(std::vector<double>(f.values().begin(), f.values().end()),
                                         std::vector<double>(g.values().begin(), g.values().end()));
    const double scale = std::max(1e-12, max_abs(expect));
    for (auto path : {ConvolutionPath::kDirect, ConvolutionPath::kTransform}) {
      const ArithFn h = convolve(f, g, path);
      REQUIRE(h.support_start() == f.support_start() + g.support_start());
      REQUIRE(h.size() == f.size() + g.size() - 1);
      double err = 0.0;
      for (std::size_t i = 0; i < expect.size(); ++i) err = std::max(err, std::abs(h.values()[i] - expect[i]));
      REQUIRE(err / scale <= 1e-6);
    }
  }
}

TEST_CASE("integer inputs convolve exactly on the transform path") {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> digit(-1000, 1000);
  std::vector<double> a(3000), b(2500);
  for (auto& x : a) x = digit(rng);
  for (auto& x : b) x = digit(rng);
  const ArithFn f(7, a), g(0, b);
  const ArithFn fast = convolve(f, g, ConvolutionPath::kTransform);
  const ArithFn slow = convolve(f, g, ConvolutionPath::kDirect);
  for (std::int64_t n = fast.support_start(); n < fast.support_end(); ++n) REQUIRE(fast(n) == slow(n));
}

TEST_CASE("convolution is commutative and bilinear") {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 30; ++trial) {
    const ArithFn f = random_fn(rng, 40, 64);
    const ArithFn g = random_fn(rng, 40, 64);
    const ArithFn h = random_fn(rng, 40, 64);
    const ArithFn fg = convolve(f, g), gf = convolve(g, f);
    for (std::int64_t n = 0; n < 300; ++n) REQUIRE(fg(n) == doctest::Approx(gf(n)).epsilon(1e-12));
    const ArithFn lhs = convolve(f.scaled(2.5) + g, h);
    const ArithFn rhs = convolve(f, h).scaled(2.5) + convolve(g, h);
    for (std::int64_t n = 0; n < 300; ++n) REQUIRE(std::abs(lhs(n) - rhs(n)) <= 1e-10);
  }
}

TEST_CASE("fourier_eval basics") {
  const ArithFn delta0 = ArithFn::point_mass(0);
  for (double a : {0.0, 0.1, 0.37, 0.9}) CHECK(std::abs(fourier_eval(delta0, a) - Complex(1.0)) < 1e-15);

  std::mt19937_64 rng(3);
  const ArithFn f = random_fn(rng, 100, 200);
  double total = 0.0;
  for (double v : f.values()) total += v;
  CHECK(std::abs(fourier_eval(f, 0.0) - Complex(total)) < 1e-12);
  for (double a : {0.013, 0.25, 0.5, 0.77}) CHECK(std::abs(fourier_eval(f, a)) <= l1_norm(f) + 1e-12);
}

TEST_CASE("fourier_eval of a box matches the geometric sum") {
  const std::int64_t N = 1000;
  const ArithFn box = ArithFn::constant(Window{0, N}, 1.0);
  for (auto [r, q] : {std::pair{1, 3}, {2, 7}, {5, 11}, {13, 97}, {1, 2}}) {
    const double alpha = static_cast<double>(r) / q;
    const Complex expect = oracle::geometric(alpha, 1, N);
    CHECK(std::abs(fourier_eval(box, alpha) - expect) < 1e-9);
    CHECK(std::abs(fourier_eval(box, Twist{r, q}) - expect) < 1e-9);
  }
}

TEST_CASE("fourier_eval is multiplicative under convolution") {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 20; ++trial) {
    const ArithFn f = random_fn(rng, 50, 64);
    const ArithFn g = random_fn(rng, 50, 64);
    const ArithFn h = convolve(f, g);
    for (double a : {0.0, 0.031, 0.5, 0.618}) {
      const Complex lhs = fourier_eval(h, a);
      const Complex rhs = fourier_eval(f, a) * fourier_eval(g, a);
      REQUIRE(std::abs(lhs - rhs) <= 1e-8 * std::max(1.0, std::abs(rhs)));
    }
  }
}

TEST_CASE("fourier_eval_grid agrees with pointwise evaluation") {
  const ArithFn f = weighted_prime_fn(5000);
  const auto grid = fourier_eval_grid(f, 0.001, 0.0123, 700);
  for (std::size_t j = 0; j < grid.size(); j += 37) {
    const Complex direct = fourier_eval(f, 0.001 + 0.0123 * static_cast<double>(j));
    REQUIRE(std::abs(grid[j] - direct) <= 1e-9 * l1_norm(f));
  }
}

TEST_CASE("Parseval at sampled frequencies") {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 5; ++trial) {
    const ArithFn f = random_fn(rng, 1000, 300);
    const std::size_t M = 2 * static_cast<std::size_t>(f.size()) + 17;
    double sum = 0.0;
    for (std::size_t k = 0; k < M; ++k) sum += std::norm(fourier_eval(f, static_cast<double>(k) / M));
    CHECK(sum / M == doctest::Approx(l2_norm_sq(f)).epsilon(1e-6));
  }
}

TEST_CASE("norms") {
  CHECK(l2_norm_sq(ArithFn::point_mass(5, 3.0)) == 9.0);
  CHECK(l2_norm_sq(ArithFn{}) == 0.0);
  CHECK(l1_norm(ArithFn{}) == 0.0);
  const ArithFn lambda = weighted_prime_fn(1000);
  double l2 = 0.0, l1 = 0.0;
  for (std::uint64_t n = 2; n <= 1000; ++n) {
    if (!oracle::is_prime(n)) continue;
    const double v = std::log(static_cast<double>(n));
    l2 += v * v;
    l1 += v;
  }
  CHECK(l2_norm_sq(lambda) == doctest::Approx(l2).epsilon(1e-14));
  CHECK(l1_norm(lambda) == doctest::Approx(l1).epsilon(1e-14));
}

TEST_CASE("short interval sums") {
  const ArithFn ones = ArithFn::constant(Window{0, 100}, 1.0);
  const auto sums = short_interval_sums(ones, 10.0);
  for (const auto& w : sums) {
    if (w.t >= 10 && w.t <= 100) REQUIRE(w.sum.real() == 10.0);
  }

  const ArithFn spike = ArithFn::point_mass(50);
  const ArithFn padded = spike + ArithFn::constant(Window{0, 100}, 0.0);
  for (const auto& w : short_interval_sums(padded, 10.0)) {
    const bool holds = 40 < 50 && w.t - 10 < 50 && 50 <= w.t;
    REQUIRE(w.sum.real() == (holds ? 1.0 : 0.0));
  }

  CHECK_THROWS_AS(short_interval_sums(ones, 2.0), DomainError);
  CHECK_THROWS_AS(short_interval_sums(ones, 50.0), DomainError);
}

TEST_CASE("twisted short sums match the direct oracle") {
  std::mt19937_64 rng(17);
  std::vector<double> v(800);
  for (auto& x : v) x = (rng() >> 63) ? 1.0 : -1.0;
  const ArithFn f(1000, v);
  for (auto tw : {std::optional<Twist>{}, std::optional<Twist>{Twist{3, 7}}}) {
    const auto sums = short_interval_sums(f, 37.5, tw);
    for (const auto& w : sums) {
      Complex expect{};
      for (std::int64_t n = w.t - 36; n <= w.t; ++n) {
        expect += f(n) * (tw ? oracle::e_frac(tw->r * n, tw->q) : Complex(1.0));
      }
      REQUIRE(std::abs(w.sum - expect) < 1e-9);
    }
  }
}

TEST_CASE("text round trip") {
  const ArithFn ints(4, {1.0, -3.0, 0.0, 12345678901.0});
  CHECK(value_kind(ints) == ValueKind::kInteger);
  std::stringstream s1;
  write_text(s1, ints);
  const ArithFn back = read_arith_fn(s1);
  CHECK(back.support_start() == 4);
  CHECK(dense(back, 4, 8) == dense(ints, 4, 8));

  const ArithFn reals(0, {0.1, std::log(3.0), -1e-300});
  CHECK(value_kind(reals) == ValueKind::kReal);
  std::stringstream s2;
  write_text(s2, reals);
  const ArithFn r = read_arith_fn(s2);
  for (std::int64_t n = 0; n < 3; ++n) CHECK(r(n) == reals(n));

  const ComplexArithFn z(2, {Complex(1, 2), Complex(-0.5, 1e-7)});
  std::stringstream s3;
  write_text(s3, z);
  const ComplexArithFn zb = read_complex_arith_fn(s3);
  CHECK(zb(2) == z(2));
  CHECK(zb(3) == z(3));

  std::stringstream bad("0 2 integer\n1\n");
  CHECK_THROWS(read_arith_fn(bad));
}
