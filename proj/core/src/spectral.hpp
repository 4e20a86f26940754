#pragma once

#include <vector>

#include "cml/arithfn.hpp"

namespace cml::detail {

// R(k) = sum_m f(m + k) f(m) for 0 <= k < size.
std::vector<double> autocorrelation(const ArithFn& f);

// Coefficients c_k with int_{-w}^{w} |f^(alpha + beta)|^2 d beta equal to
// Re sum_k c_k e(alpha k), from R and the Fejer-type box kernel of half-width w.
std::vector<double> window_kernel_coefficients(const std::vector<double>& R, double w);

}  // namespace cml::detail
