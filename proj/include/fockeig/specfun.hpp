// specfun.hpp: the complex special functions behind the closed-form overlaps.

#pragma once

#include "fockeig/fock.hpp"

#include <optional>

namespace fockeig::special {

/// log Gamma(z) for complex z: Lanczos (g = 7) with reflection for Re z < 1/2.
/// Throws std::domain_error at the poles z = 0, -1, -2, ...
Complex log_gamma(Complex z);

/// Result of a summed series. `converged` is false when the term cap was hit;
/// `value` is then the partial sum.
struct SeriesValue {
  Complex value;
  int terms;
  bool converged;
};

/// Kummer's M(a, b, z) = sum_k (a)_k / (b)_k z^k / k!, summed until the terms
/// fall below 1e-15 of the running sum. There is no asymptotic branch: large
/// |z| simply runs into `max_terms`.
SeriesValue kummer_m(Complex a, Complex b, Complex z, int max_terms = 10000);

/// F(-n, a; c; z) = sum_{l=0}^{n} (-n)_l (a)_l / (c)_l z^l / l!.
///
/// The sum is accumulated with 100 significant digits. At z = 2 the terms
/// reach ~3^n times the result, so double accumulation loses every digit
/// by n ~ 35. Throws std::domain_error if c + j = 0 for some j < n.
Complex gauss_2f1_terminating(int n, Complex a, Complex c, Complex z);

/// Associated Laguerre L_m^alpha(x) from its Gamma-ratio expansion
/// sum_k Gamma(m+alpha+1) / (Gamma(k+alpha+1) Gamma(m-k+1) k!) (-x)^k.
/// Requires alpha > -1.
Complex laguerre_assoc(int m, double alpha, Complex x);

/// Principal tan^{-1} z = (1/2i) log((1 + iz) / (1 - iz)).
Complex arctan(Complex z);

/// Confluent M(a, b, z), or Gauss F(-n, a; b; z) when a terminating order n is set.
struct HypergeometricParams {
  Complex a;
  Complex b;
  Complex z;
  std::optional<int> terminating_order;
};

/// Dispatches on `terminating_order`. Throws std::runtime_error if the
/// confluent series fails to converge.
Complex evaluate(const HypergeometricParams& p);

}  // namespace fockeig::special
