// Extended-precision accumulation for alternating finite sums whose terms
// dwarf their result. Boost types stay behind this interface.

#pragma once

#include "fockeig/fock.hpp"

#include <functional>
#include <vector>

namespace fockeig::detail {

/// F(-n, a; c; z) summed with 100 significant digits.
Complex terminating_2f1(int n, Complex a, Complex c, Complex z);

/// Coefficients of exp(u y) M(a, b, w y) |base>, where y is a raising
/// operator with y^n |base> = norm_n |level_n>.
///
/// Returns c_n = norm_n * sum_{k+l=n} u^k / k! * (a)_l / (b)_l * w^l / l!
/// for n < count. `norm_step_sq(n)` gives (norm_n / norm_{n-1})^2, norm_0 = 1;
/// it is an integer for every basis used here, so it is exact in double.
std::vector<Complex> kummer_operator_coefficients(Complex u, Complex a, Complex b, Complex w, int count,
                                                  const std::function<double(int)>& norm_step_sq);

}  // namespace fockeig::detail
