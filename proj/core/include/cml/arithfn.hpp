#pragma once

// Finitely supported arithmetic functions and the additive calculus on them:
// convolution, Fourier series, norms and short-interval sums.
//
// Interval convention used across the library: a window "[t - w, t]" of
// real width w is the half-open integer range t - floor(w) < n <= t, so it
// always holds exactly floor(w) integers.

#include <complex>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

namespace cml {

using Complex = std::complex<double>;

/// Supports must end below this bound so convolution indices stay exact.
inline constexpr std::int64_t kSupportBound = std::int64_t{1} << 40;

/// Integer window lo < n <= hi.
struct Window {
  std::int64_t lo = 0;
  std::int64_t hi = 0;

  std::int64_t length() const { return hi > lo ? hi - lo : 0; }
  bool contains(std::int64_t n) const { return lo < n && n <= hi; }
};

/// Frequency r/q; twisted sums carry the factor e(rn/q).
struct Twist {
  std::int64_t r = 0;
  std::int64_t q = 1;
};

/// e(x) = exp(2 pi i x).
Complex unit_exponential(double x);
/// e(k/q), with k reduced modulo q in integer arithmetic first.
Complex unit_exponential(std::int64_t k, std::int64_t q);

template <class T>
class BasicArithFn {
 public:
  using value_type = T;

  BasicArithFn() = default;
  /// values[i] is f(support_start + i). Throws DomainError for a negative
  /// start and CapacityError when the support would cross kSupportBound.
  BasicArithFn(std::int64_t support_start, std::vector<T> values);

  static BasicArithFn point_mass(std::int64_t n, T value = T{1});
  static BasicArithFn constant(Window window, T value);

  std::int64_t support_start() const { return start_; }
  /// One past the last stored index.
  std::int64_t support_end() const { return start_ + size(); }
  std::int64_t size() const { return static_cast<std::int64_t>(values_.size()); }
  bool empty() const { return values_.empty(); }

  T operator()(std::int64_t n) const {
    if (n < start_ || n >= support_end()) return T{};
    return values_[static_cast<std::size_t>(n - start_)];
  }
  std::span<const T> values() const { return values_; }

  /// Copy of f restricted to the window (zero elsewhere, support trimmed).
  BasicArithFn restricted(Window window) const;
  BasicArithFn scaled(T factor) const;

 private:
  std::int64_t start_ = 0;
  std::vector<T> values_;
};

using ArithFn = BasicArithFn<double>;
using ComplexArithFn = BasicArithFn<Complex>;

/// Pointwise sum / difference over the union of supports.
template <class T>
BasicArithFn<T> operator+(const BasicArithFn<T>& a, const BasicArithFn<T>& b);
template <class T>
BasicArithFn<T> operator-(const BasicArithFn<T>& a, const BasicArithFn<T>& b);

enum class ConvolutionPath { kAuto, kDirect, kTransform };

/// Additive convolution f*g(n) = sum_{n1+n2=n} f(n1) g(n2).
ArithFn convolve(const ArithFn& f, const ArithFn& g,
                 ConvolutionPath path = ConvolutionPath::kAuto);
ComplexArithFn convolve(const ComplexArithFn& f, const ComplexArithFn& g,
                        ConvolutionPath path = ConvolutionPath::kAuto);

/// Single output value f*g(n) by a direct dot product over the overlap.
double convolve_at(const ArithFn& f, const ArithFn& g, std::int64_t n);

/// Fourier series sum_n f(n) e(alpha n), Neumaier-compensated.
Complex fourier_eval(const ArithFn& f, double alpha);
Complex fourier_eval(const ComplexArithFn& f, double alpha);
/// Same at the rational point r/q with exact phase reduction.
Complex fourier_eval(const ArithFn& f, Twist at);

/// f^ on the progression beta0 + j*step, j < count. Uses a rotation
/// recurrence re-anchored every 256 terms, so it is much faster than
/// repeated fourier_eval at a relative cost of ~1e-13 in accuracy.
std::vector<Complex> fourier_eval_grid(const ArithFn& f, double beta0, double step,
                                       std::size_t count);

double l2_norm_sq(const ArithFn& f);
double l2_norm_sq(const ComplexArithFn& f);
double l1_norm(const ArithFn& f);
double l1_norm(const ComplexArithFn& f);

struct WindowSum {
  std::int64_t t;
  Complex sum;
};

/// Sums over t - floor(width) < n <= t for every t whose window meets the
/// support, each twisted by e(rn/q) when a twist is given. O(N) via prefix
/// differences. Requires width >= 1; no range policy.
std::vector<WindowSum> sliding_window_sums(const ArithFn& f, std::int64_t width,
                                           std::optional<Twist> twist = std::nullopt);

/// Public short-interval operation: sliding sums of width floor(delta) with
/// the range policy 2 < delta < size/2 (DomainError otherwise).
std::vector<WindowSum> short_interval_sums(const ArithFn& f, double delta,
                                           std::optional<Twist> twist = std::nullopt);

enum class ValueKind { kInteger, kReal, kComplex };

/// kInteger when every value is integral with magnitude below 2^53.
ValueKind value_kind(const ArithFn& f);

// Columnar text format:
//   <support_start> <length> <integer|real|complex>
//   one value per line ("re im" for complex)
void write_text(std::ostream& out, const ArithFn& f);
void write_text(std::ostream& out, const ComplexArithFn& f);
ArithFn read_arith_fn(std::istream& in);
ComplexArithFn read_complex_arith_fn(std::istream& in);

}  // namespace cml
