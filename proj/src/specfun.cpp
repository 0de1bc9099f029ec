#include "fockeig/specfun.hpp"

#include "fockeig/detail/xprec.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace fockeig::special {

namespace {

constexpr double kLanczosG = 7.0;
constexpr std::array<double, 9> kLanczos = {
    0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
    771.32342877765313,   -176.61502916214059,   12.507343278686905,
    -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};

bool is_nonpositive_integer(Complex z) {
  return z.imag() == 0.0 && z.real() <= 0.0 && std::floor(z.real()) == z.real();
}

// The branch of log sin is irrelevant downstream: only exp(log_gamma) is used.
Complex log_sin_pi(Complex z) { return std::log(std::sin(std::numbers::pi * z)); }

}  // namespace

Complex log_gamma(Complex z) {
  if (is_nonpositive_integer(z)) {
    throw std::domain_error("log_gamma: pole at z = " + std::to_string(z.real()));
  }
  if (z.real() < 0.5) {
    // Gamma(z) Gamma(1 - z) = pi / sin(pi z)
    return std::log(std::numbers::pi) - log_sin_pi(z) - log_gamma(1.0 - z);
  }
  const Complex w = z - 1.0;
  Complex x = kLanczos[0];
  for (std::size_t k = 1; k < kLanczos.size(); ++k) x += kLanczos[k] / (w + static_cast<double>(k));
  const Complex t = w + kLanczosG + 0.5;
  return 0.5 * std::log(2.0 * std::numbers::pi) + (w + 0.5) * std::log(t) - t + std::log(x);
}

SeriesValue kummer_m(Complex a, Complex b, Complex z, int max_terms) {
  if (is_nonpositive_integer(b)) throw std::domain_error("kummer_m: b is a non-positive integer");
  Complex term = 1.0;
  Complex sum = 1.0;
  int small_in_a_row = 0;
  const double zabs = std::abs(z);
  for (int k = 0; k < max_terms; ++k) {
    term *= (a + static_cast<double>(k)) / (b + static_cast<double>(k)) * z / static_cast<double>(k + 1);
    sum += term;
    if (term == 0.0) return {sum, k + 2, true};
    if (k > zabs && std::abs(term) <= 1e-15 * std::abs(sum)) {
      if (++small_in_a_row == 2) return {sum, k + 2, true};
    } else {
      small_in_a_row = 0;
    }
  }
  return {sum, max_terms + 1, false};
}

Complex gauss_2f1_terminating(int n, Complex a, Complex c, Complex z) {
  if (n < 0) throw std::invalid_argument("gauss_2f1_terminating: n must be non-negative");
  for (int j = 0; j < n; ++j) {
    if (c + static_cast<double>(j) == 0.0) {
      throw std::domain_error("gauss_2f1_terminating: c + j vanishes");
    }
  }
  return detail::terminating_2f1(n, a, c, z);
}

Complex laguerre_assoc(int m, double alpha, Complex x) {
  if (m < 0) throw std::invalid_argument("laguerre_assoc: m must be non-negative");
  if (!(alpha > -1.0)) throw std::domain_error("laguerre_assoc: alpha must exceed -1");
  const Complex top = log_gamma(m + alpha + 1.0);
  Complex sum = 0.0;
  Complex xpow = 1.0;
  for (int k = 0; k <= m; ++k) {
    const Complex lg = top - log_gamma(k + alpha + 1.0) - std::lgamma(m - k + 1.0) - std::lgamma(k + 1.0);
    sum += std::exp(lg) * xpow;
    xpow *= -x;
  }
  return sum;
}

Complex arctan(Complex z) {
  if (z == kI || z == -kI) throw std::domain_error("arctan: branch point at +-i");
  return std::log((1.0 + kI * z) / (1.0 - kI * z)) / (2.0 * kI);
}

Complex evaluate(const HypergeometricParams& p) {
  if (p.terminating_order) return gauss_2f1_terminating(*p.terminating_order, p.a, p.b, p.z);
  const SeriesValue s = kummer_m(p.a, p.b, p.z);
  if (!s.converged) throw std::runtime_error("evaluate: confluent series did not converge");
  return s.value;
}

}  // namespace fockeig::special
