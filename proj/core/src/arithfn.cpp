#include "cml/arithfn.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <numbers>
#include <ostream>
#include <sstream>
#include <string>

#include "cml/error.hpp"
#include "cml/parallel.hpp"
#include "intmath.hpp"
#include "transform.hpp"

namespace cml {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kExactIntegerLimit = 4503599627370496.0;  // 2^52

// Neumaier's variant of Kahan summation.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      carry_ += (sum_ - t) + x;
    } else {
      carry_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + carry_; }

 private:
  double sum_ = 0.0;
  double carry_ = 0.0;
};

// Fractional part of alpha * n with the rounding error of the product
// recovered by fma.
double phase_of(double alpha, std::int64_t n) {
  const double x = static_cast<double>(n);
  const double p = alpha * x;
  const double err = std::fma(alpha, x, -p);
  const double frac = (p - std::floor(p)) + err;
  return frac - std::floor(frac);
}

using detail::mod_floor;
using detail::mulmod;

void check_support(std::int64_t start, std::size_t length) {
  if (start < 0) throw DomainError("arithmetic function support must start at n >= 0");
  if (static_cast<std::uint64_t>(start) + length > static_cast<std::uint64_t>(kSupportBound)) {
    throw CapacityError("arithmetic function support exceeds 2^40");
  }
}

bool integer_valued(std::span<const double> v) {
  return std::all_of(v.begin(), v.end(), [](double x) {
    return std::abs(x) < kExactIntegerLimit && std::nearbyint(x) == x;
  });
}

template <class T>
std::vector<T> direct_convolution(std::span<const T> a, std::span<const T> b) {
  const std::size_t out_len = a.size() + b.size() - 1;
  std::vector<T> out(out_len);
  constexpr std::size_t kBlock = 4096;
  const std::size_t blocks = (out_len + kBlock - 1) / kBlock;
  parallel_for(blocks, [&](std::size_t blk) {
    const std::size_t k0 = blk * kBlock;
    const std::size_t k1 = std::min(out_len, k0 + kBlock);
    for (std::size_t k = k0; k < k1; ++k) {
      const std::size_t i0 = k >= b.size() ? k - b.size() + 1 : 0;
      const std::size_t i1 = std::min(k, a.size() - 1);
      T acc{};
      for (std::size_t i = i0; i <= i1; ++i) acc += a[i] * b[k - i];
      out[k] = acc;
    }
  });
  return out;
}

bool prefer_direct(std::size_t na, std::size_t nb) {
  return std::min(na, nb) <= 64 || na * nb <= (std::size_t{1} << 16);
}

template <class T>
BasicArithFn<T> combine(const BasicArithFn<T>& a, const BasicArithFn<T>& b, double sign) {
  if (a.empty()) return b.scaled(T(sign));
  if (b.empty()) return a;
  const std::int64_t lo = std::min(a.support_start(), b.support_start());
  const std::int64_t hi = std::max(a.support_end(), b.support_end());
  std::vector<T> values(static_cast<std::size_t>(hi - lo));
  for (std::int64_t n = a.support_start(); n < a.support_end(); ++n) {
    values[static_cast<std::size_t>(n - lo)] += a(n);
  }
  for (std::int64_t n = b.support_start(); n < b.support_end(); ++n) {
    values[static_cast<std::size_t>(n - lo)] += T(sign) * b(n);
  }
  return BasicArithFn<T>(lo, std::move(values));
}

template <class T>
Complex fourier_eval_impl(const BasicArithFn<T>& f, double alpha) {
  CompensatedSum re;
  CompensatedSum im;
  const auto v = f.values();
  for (std::size_t i = 0; i < v.size(); ++i) {
    const Complex val(v[i]);
    if (val == Complex{}) continue;
    const double phase = kTwoPi * phase_of(alpha, f.support_start() + static_cast<std::int64_t>(i));
    const Complex term = val * Complex(std::cos(phase), std::sin(phase));
    re.add(term.real());
    im.add(term.imag());
  }
  return {re.value(), im.value()};
}

template <class T>
void write_values(std::ostream& out, const BasicArithFn<T>& f, const char* kind) {
  out << f.support_start() << ' ' << f.size() << ' ' << kind << '\n';
}

void write_double(std::ostream& out, double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  out << buf;
}

struct Header {
  std::int64_t start = 0;
  std::int64_t length = 0;
  std::string kind;
};

Header read_header(std::istream& in) {
  Header h;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ss(line);
    if (!(ss >> h.start >> h.length >> h.kind) || h.length < 0) {
      throw DomainError("malformed arithmetic function header: " + line);
    }
    return h;
  }
  throw DomainError("missing arithmetic function header");
}

}  // namespace

Complex unit_exponential(double x) {
  const double frac = x - std::floor(x);
  return {std::cos(kTwoPi * frac), std::sin(kTwoPi * frac)};
}

Complex unit_exponential(std::int64_t k, std::int64_t q) {
  if (q <= 0) throw DomainError("unit_exponential: modulus must be positive");
  const std::int64_t r = mod_floor(k, q);
  const double x = static_cast<double>(r) / static_cast<double>(q);
  return {std::cos(kTwoPi * x), std::sin(kTwoPi * x)};
}

template <class T>
BasicArithFn<T>::BasicArithFn(std::int64_t support_start, std::vector<T> values)
    : start_(support_start), values_(std::move(values)) {
  check_support(start_, values_.size());
}

template <class T>
BasicArithFn<T> BasicArithFn<T>::point_mass(std::int64_t n, T value) {
  return BasicArithFn(n, std::vector<T>{value});
}

template <class T>
BasicArithFn<T> BasicArithFn<T>::constant(Window window, T value) {
  if (window.length() == 0) return {};
  return BasicArithFn(window.lo + 1,
                      std::vector<T>(static_cast<std::size_t>(window.length()), value));
}

template <class T>
BasicArithFn<T> BasicArithFn<T>::restricted(Window window) const {
  const std::int64_t lo = std::max(start_, window.lo + 1);
  const std::int64_t hi = std::min(support_end(), window.hi + 1);
  if (lo >= hi) return {};
  return BasicArithFn(lo, std::vector<T>(values_.begin() + (lo - start_),
                                         values_.begin() + (hi - start_)));
}

template <class T>
BasicArithFn<T> BasicArithFn<T>::scaled(T factor) const {
  std::vector<T> v(values_);
  for (auto& x : v) x *= factor;
  return BasicArithFn(start_, std::move(v));
}

template <class T>
BasicArithFn<T> operator+(const BasicArithFn<T>& a, const BasicArithFn<T>& b) {
  return combine(a, b, 1.0);
}

template <class T>
BasicArithFn<T> operator-(const BasicArithFn<T>& a, const BasicArithFn<T>& b) {
  return combine(a, b, -1.0);
}

template class BasicArithFn<double>;
template class BasicArithFn<Complex>;
template ArithFn operator+(const ArithFn&, const ArithFn&);
template ArithFn operator-(const ArithFn&, const ArithFn&);
template ComplexArithFn operator+(const ComplexArithFn&, const ComplexArithFn&);
template ComplexArithFn operator-(const ComplexArithFn&, const ComplexArithFn&);

ArithFn convolve(const ArithFn& f, const ArithFn& g, ConvolutionPath path) {
  if (f.empty() || g.empty()) throw DomainError("convolve: both supports must be nonempty");
  const std::int64_t start = f.support_start() + g.support_start();
  check_support(start, static_cast<std::size_t>(f.size() + g.size() - 1));

  if (path == ConvolutionPath::kAuto) {
    path = prefer_direct(f.values().size(), g.values().size()) ? ConvolutionPath::kDirect
                                                               : ConvolutionPath::kTransform;
  }
  if (path == ConvolutionPath::kDirect) {
    return ArithFn(start, direct_convolution(f.values(), g.values()));
  }

  std::vector<double> out = detail::fft_convolve(f.values(), g.values());
  if (integer_valued(f.values()) && integer_valued(g.values())) {
    for (auto& x : out) {
      if (std::abs(x) < kExactIntegerLimit) x = std::nearbyint(x);
    }
  }
  return ArithFn(start, std::move(out));
}

ComplexArithFn convolve(const ComplexArithFn& f, const ComplexArithFn& g,
                        ConvolutionPath path) {
  if (f.empty() || g.empty()) throw DomainError("convolve: both supports must be nonempty");
  const std::int64_t start = f.support_start() + g.support_start();
  check_support(start, static_cast<std::size_t>(f.size() + g.size() - 1));

  if (path == ConvolutionPath::kAuto) {
    path = prefer_direct(f.values().size(), g.values().size()) ? ConvolutionPath::kDirect
                                                               : ConvolutionPath::kTransform;
  }
  if (path == ConvolutionPath::kDirect) {
    return ComplexArithFn(start, direct_convolution(f.values(), g.values()));
  }
  return ComplexArithFn(start, detail::fft_convolve(f.values(), g.values()));
}

double convolve_at(const ArithFn& f, const ArithFn& g, std::int64_t n) {
  // n1 ranges over supp f with n - n1 in supp g.
  const std::int64_t lo = std::max(f.support_start(), n - g.support_end() + 1);
  const std::int64_t hi = std::min(f.support_end() - 1, n - g.support_start());
  double acc = 0.0;
  for (std::int64_t n1 = lo; n1 <= hi; ++n1) acc += f(n1) * g(n - n1);
  return acc;
}

Complex fourier_eval(const ArithFn& f, double alpha) { return fourier_eval_impl(f, alpha); }
Complex fourier_eval(const ComplexArithFn& f, double alpha) {
  return fourier_eval_impl(f, alpha);
}

Complex fourier_eval(const ArithFn& f, Twist at) {
  if (at.q <= 0) throw DomainError("fourier_eval: twist modulus must be positive");
  std::vector<Complex> roots(static_cast<std::size_t>(at.q));
  for (std::int64_t k = 0; k < at.q; ++k) roots[static_cast<std::size_t>(k)] = unit_exponential(k, at.q);
  CompensatedSum re;
  CompensatedSum im;
  const auto v = f.values();
  // r*n mod q computed incrementally to stay exact for large n.
  const std::int64_t r = mod_floor(at.r, at.q);
  std::int64_t phase = mulmod(r, f.support_start(), at.q);
  for (std::size_t i = 0; i < v.size(); ++i) {
    const Complex term = v[i] * roots[static_cast<std::size_t>(phase)];
    re.add(term.real());
    im.add(term.imag());
    phase += r;
    if (phase >= at.q) phase -= at.q;
  }
  return {re.value(), im.value()};
}

std::vector<Complex> fourier_eval_grid(const ArithFn& f, double beta0, double step,
                                       std::size_t count) {
  std::vector<Complex> out(count);
  if (f.empty()) return out;
  constexpr std::size_t kAnchor = 256;
  const auto v = f.values();
  parallel_for(count, [&](std::size_t j) {
    const double beta = beta0 + static_cast<double>(j) * step;
    const Complex rot = unit_exponential(beta);
    Complex acc{};
    Complex z;
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (i % kAnchor == 0) {
        z = unit_exponential(phase_of(beta, f.support_start() + static_cast<std::int64_t>(i)));
      }
      acc += v[i] * z;
      z *= rot;
    }
    out[j] = acc;
  });
  return out;
}

double l2_norm_sq(const ArithFn& f) {
  CompensatedSum s;
  for (double x : f.values()) s.add(x * x);
  return s.value();
}

double l2_norm_sq(const ComplexArithFn& f) {
  CompensatedSum s;
  for (const Complex& x : f.values()) s.add(std::norm(x));
  return s.value();
}

double l1_norm(const ArithFn& f) {
  CompensatedSum s;
  for (double x : f.values()) s.add(std::abs(x));
  return s.value();
}

double l1_norm(const ComplexArithFn& f) {
  CompensatedSum s;
  for (const Complex& x : f.values()) s.add(std::abs(x));
  return s.value();
}

std::vector<WindowSum> sliding_window_sums(const ArithFn& f, std::int64_t width,
                                           std::optional<Twist> twist) {
  if (width < 1) throw DomainError("sliding_window_sums: width must be at least 1");
  if (twist && twist->q <= 0) throw DomainError("sliding_window_sums: twist modulus must be positive");
  if (f.empty()) return {};

  const std::int64_t n0 = f.support_start();
  const std::size_t len = static_cast<std::size_t>(f.size());
  const auto v = f.values();

  // prefix[i] = sum of the first i (twisted) values.
  std::vector<Complex> prefix(len + 1);
  if (twist) {
    const std::int64_t q = twist->q;
    const std::int64_t r = mod_floor(twist->r, q);
    std::vector<Complex> roots(static_cast<std::size_t>(q));
    for (std::int64_t k = 0; k < q; ++k) roots[static_cast<std::size_t>(k)] = unit_exponential(k, q);
    std::int64_t phase = mulmod(r, n0, q);
    for (std::size_t i = 0; i < len; ++i) {
      prefix[i + 1] = prefix[i] + v[i] * roots[static_cast<std::size_t>(phase)];
      phase += r;
      if (phase >= q) phase -= q;
    }
  } else {
    for (std::size_t i = 0; i < len; ++i) prefix[i + 1] = prefix[i] + v[i];
  }

  const auto prefix_at = [&](std::int64_t n) -> const Complex& {
    // sum over support indices < n
    const std::int64_t i = std::clamp<std::int64_t>(n - n0, 0, static_cast<std::int64_t>(len));
    return prefix[static_cast<std::size_t>(i)];
  };

  const std::int64_t t_first = n0;
  const std::int64_t t_last = f.support_end() - 1 + width - 1;
  std::vector<WindowSum> out;
  out.reserve(static_cast<std::size_t>(t_last - t_first + 1));
  for (std::int64_t t = t_first; t <= t_last; ++t) {
    out.push_back({t, prefix_at(t + 1) - prefix_at(t - width + 1)});
  }
  return out;
}

std::vector<WindowSum> short_interval_sums(const ArithFn& f, double delta,
                                           std::optional<Twist> twist) {
  const double span = static_cast<double>(f.size());
  if (!(delta > 2.0) || !(delta < span / 2.0)) {
    throw DomainError("short_interval_sums: need 2 < delta < support length / 2");
  }
  return sliding_window_sums(f, static_cast<std::int64_t>(std::floor(delta)), twist);
}

ValueKind value_kind(const ArithFn& f) {
  return integer_valued(f.values()) ? ValueKind::kInteger : ValueKind::kReal;
}

void write_text(std::ostream& out, const ArithFn& f) {
  const bool integral = value_kind(f) == ValueKind::kInteger;
  write_values(out, f, integral ? "integer" : "real");
  for (double x : f.values()) {
    if (integral) {
      out << static_cast<long long>(x);
    } else {
      write_double(out, x);
    }
    out << '\n';
  }
}

void write_text(std::ostream& out, const ComplexArithFn& f) {
  write_values(out, f, "complex");
  for (const Complex& x : f.values()) {
    write_double(out, x.real());
    out << ' ';
    write_double(out, x.imag());
    out << '\n';
  }
}

ArithFn read_arith_fn(std::istream& in) {
  const Header h = read_header(in);
  if (h.kind != "integer" && h.kind != "real") {
    throw DomainError("read_arith_fn: expected integer or real kind, got " + h.kind);
  }
  std::vector<double> values(static_cast<std::size_t>(h.length));
  for (auto& x : values) {
    std::string token;
    if (!(in >> token)) throw DomainError("read_arith_fn: truncated value list");
    if (h.kind == "integer") {
      x = static_cast<double>(std::stoll(token));
    } else {
      x = std::strtod(token.c_str(), nullptr);
    }
  }
  return ArithFn(h.start, std::move(values));
}

ComplexArithFn read_complex_arith_fn(std::istream& in) {
  const Header h = read_header(in);
  std::vector<Complex> values(static_cast<std::size_t>(h.length));
  for (auto& x : values) {
    std::string re;
    std::string im = "0";
    if (!(in >> re)) throw DomainError("read_complex_arith_fn: truncated value list");
    if (h.kind == "complex" && !(in >> im)) {
      throw DomainError("read_complex_arith_fn: truncated value list");
    }
    x = {std::strtod(re.c_str(), nullptr), std::strtod(im.c_str(), nullptr)};
  }
  return ComplexArithFn(h.start, std::move(values));
}

}  // namespace cml
