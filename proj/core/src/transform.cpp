#include "transform.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cstring>
#include <memory>
#include <mutex>

namespace cml::detail {
namespace {

// The FFTW planner is not re-entrant; execution of an existing plan is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

struct FftwFree {
  void operator()(void* p) const { fftw_free(p); }
};
template <class T>
using FftwBuffer = std::unique_ptr<T[], FftwFree>;

template <class T>
FftwBuffer<T> allocate(std::size_t n) {
  auto* p = static_cast<T*>(fftw_malloc(sizeof(T) * n));
  if (p == nullptr) throw std::bad_alloc();
  std::memset(static_cast<void*>(p), 0, sizeof(T) * n);
  return FftwBuffer<T>(p);
}

class Plan {
 public:
  explicit Plan(fftw_plan plan) : plan_(plan) {}
  Plan(const Plan&) = delete;
  Plan& operator=(const Plan&) = delete;
  ~Plan() {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(plan_);
  }
  void execute() const { fftw_execute(plan_); }

 private:
  fftw_plan plan_;
};

// FFTW_ESTIMATE picks the algorithm from sizes alone, so repeated runs
// produce bit-identical output.
constexpr unsigned kPlanFlags = FFTW_ESTIMATE;

}  // namespace

std::size_t next_power_of_two(std::size_t n) {
  std::size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

std::vector<double> fft_convolve(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) return {};
  const std::size_t out_len = a.size() + b.size() - 1;
  const std::size_t n = next_power_of_two(out_len);
  const std::size_t bins = n / 2 + 1;

  auto ra = allocate<double>(n);
  auto rb = allocate<double>(n);
  auto ca = allocate<fftw_complex>(bins);
  auto cb = allocate<fftw_complex>(bins);
  std::copy(a.begin(), a.end(), ra.get());
  std::copy(b.begin(), b.end(), rb.get());

  std::unique_ptr<Plan> fa, fb, inv;
  {
    std::lock_guard lock(planner_mutex());
    const int len = static_cast<int>(n);
    fa = std::make_unique<Plan>(fftw_plan_dft_r2c_1d(len, ra.get(), ca.get(), kPlanFlags));
    fb = std::make_unique<Plan>(fftw_plan_dft_r2c_1d(len, rb.get(), cb.get(), kPlanFlags));
    inv = std::make_unique<Plan>(fftw_plan_dft_c2r_1d(len, ca.get(), ra.get(), kPlanFlags));
  }
  fa->execute();
  fb->execute();
  for (std::size_t k = 0; k < bins; ++k) {
    const double re = ca[k][0] * cb[k][0] - ca[k][1] * cb[k][1];
    const double im = ca[k][0] * cb[k][1] + ca[k][1] * cb[k][0];
    ca[k][0] = re;
    ca[k][1] = im;
  }
  inv->execute();

  std::vector<double> out(out_len);
  const double scale = 1.0 / static_cast<double>(n);
  for (std::size_t i = 0; i < out_len; ++i) out[i] = ra[i] * scale;
  return out;
}

std::vector<Complex> fft_convolve(std::span<const Complex> a, std::span<const Complex> b) {
  if (a.empty() || b.empty()) return {};
  const std::size_t out_len = a.size() + b.size() - 1;
  const std::size_t n = next_power_of_two(out_len);

  auto xa = allocate<fftw_complex>(n);
  auto xb = allocate<fftw_complex>(n);
  for (std::size_t i = 0; i < a.size(); ++i) {
    xa[i][0] = a[i].real();
    xa[i][1] = a[i].imag();
  }
  for (std::size_t i = 0; i < b.size(); ++i) {
    xb[i][0] = b[i].real();
    xb[i][1] = b[i].imag();
  }

  std::unique_ptr<Plan> fa, fb, inv;
  {
    std::lock_guard lock(planner_mutex());
    const int len = static_cast<int>(n);
    fa = std::make_unique<Plan>(
        fftw_plan_dft_1d(len, xa.get(), xa.get(), FFTW_FORWARD, kPlanFlags));
    fb = std::make_unique<Plan>(
        fftw_plan_dft_1d(len, xb.get(), xb.get(), FFTW_FORWARD, kPlanFlags));
    inv = std::make_unique<Plan>(
        fftw_plan_dft_1d(len, xa.get(), xa.get(), FFTW_BACKWARD, kPlanFlags));
  }
  fa->execute();
  fb->execute();
  for (std::size_t k = 0; k < n; ++k) {
    const double re = xa[k][0] * xb[k][0] - xa[k][1] * xb[k][1];
    const double im = xa[k][0] * xb[k][1] + xa[k][1] * xb[k][0];
    xa[k][0] = re;
    xa[k][1] = im;
  }
  inv->execute();

  std::vector<Complex> out(out_len);
  const double scale = 1.0 / static_cast<double>(n);
  for (std::size_t i = 0; i < out_len; ++i) out[i] = {xa[i][0] * scale, xa[i][1] * scale};
  return out;
}

std::vector<Complex> trig_series_on_grid(std::span<const double> g, std::size_t m) {
  if (m == 0) return {};
  auto x = allocate<fftw_complex>(m);
  for (std::size_t k = 0; k < g.size(); ++k) x[k % m][0] += g[k];

  std::unique_ptr<Plan> plan;
  {
    std::lock_guard lock(planner_mutex());
    // FFTW_BACKWARD carries the e(+jk/m) sign convention.
    plan = std::make_unique<Plan>(fftw_plan_dft_1d(static_cast<int>(m), x.get(), x.get(),
                                                   FFTW_BACKWARD, kPlanFlags));
  }
  plan->execute();
  std::vector<Complex> out(m);
  for (std::size_t j = 0; j < m; ++j) out[j] = {x[j][0], x[j][1]};
  return out;
}

}  // namespace cml::detail
