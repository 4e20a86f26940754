#pragma once

#include <span>
#include <vector>

#include "cml/arithfn.hpp"

namespace cml::detail {

// Linear (acyclic) convolution through zero-padded power-of-two FFTs.
std::vector<double> fft_convolve(std::span<const double> a, std::span<const double> b);
std::vector<Complex> fft_convolve(std::span<const Complex> a, std::span<const Complex> b);

std::size_t next_power_of_two(std::size_t n);

// S_j = sum_k g_k e(jk/m) for j < m; coefficients are folded modulo m first.
std::vector<Complex> trig_series_on_grid(std::span<const double> g, std::size_t m);

}  // namespace cml::detail
