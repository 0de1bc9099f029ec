#include "fockeig/f1.hpp"

#include "fockeig/detail/xprec.hpp"
#include "fockeig/specfun.hpp"

#include <cmath>
#include <stdexcept>

namespace fockeig::f1 {

namespace {

int base_level(Parity p) { return p == Parity::even ? 0 : 1; }

void require_nonzero_beta(Complex beta, const char* what) {
  if (beta == Complex{}) {
    throw std::domain_error(std::string(what) + ": the closed form needs beta != 0; use the series construction");
  }
}

// First Kummer parameter and the lower one for each parity.
Complex kummer_a(const F1Problem& prob, Parity p) {
  const double shift = p == Parity::even ? 0.25 : 0.75;
  return shift - kI * prob.lambda / (4.0 * prob.sqrt_beta());
}

double kummer_b(Parity p) { return p == Parity::even ? 0.5 : 1.5; }

}  // namespace

Complex F1Problem::sqrt_beta() const {
  const Complex s = std::sqrt(beta);
  return root == RootBranch::principal ? s : -s;
}

ArctanSeries arctan_series(Complex beta, double scale, int terms) {
  ArctanSeries s{beta, scale, {}};
  Complex rate = 1.0;
  for (int m = 0; m < terms; ++m) {
    s.odd_coefficients.push_back(rate / (2.0 * m + 1.0));
    rate *= -scale * beta;
  }
  return s;
}

template <int Modes>
Operator<Modes> arctan_series_operator(const Operator<Modes>& g, Complex beta, double scale) {
  if (!g.strictly_raising()) throw std::invalid_argument("arctan_series_operator: g must be strictly raising");
  const Operator<Modes> g2 = g * g;
  Operator<Modes> odd_power = g;
  Operator<Modes> sum = Operator<Modes>::zero(g.trunc());
  Complex rate = 1.0;
  for (int m = 0; odd_power.entries().nonZeros() > 0; ++m) {
    sum = sum + (rate / (2.0 * m + 1.0)) * odd_power;
    odd_power = g2 * odd_power;
    odd_power = Operator<Modes>(g.trunc(), odd_power.entries().pruned(), odd_power.bandwidth());
    rate *= -scale * beta;
  }
  return sum;
}

template MatrixOperator arctan_series_operator<1>(const MatrixOperator&, Complex, double);
template TwoModeOperator arctan_series_operator<2>(const TwoModeOperator&, Complex, double);

MatrixOperator f1_operator(Complex beta, TruncationSpec trunc) {
  const MatrixOperator a = ladder(Ladder::lower, trunc);
  const MatrixOperator ad = ladder(Ladder::raise, trunc);
  return a * a + beta * (ad * ad);
}

conj::ConjugatePair<1> square_conjugate(Parity parity, TruncationSpec trunc) {
  return conj::conjugate_single(conj::square_annihilator(trunc), base_level(parity));
}

conj::ConjugatePair<1> quartic_conjugate(int i, TruncationSpec trunc) {
  return conj::conjugate_single(conj::quartic_reduced_annihilator(trunc), i);
}

std::pair<FockVector, FockVector> f1_kernel_states(Complex beta, TruncationSpec trunc) {
  auto kernel = [&](int i) {
    return apply_exponential(quartic_conjugate(i, trunc).G_dagger, -beta, FockVector::basis(trunc, {i}));
  };
  return {kernel(0), kernel(1)};
}

FockVector discarded_kernel_state(Complex beta, int i, TruncationSpec trunc) {
  if (i != 2 && i != 3) throw std::invalid_argument("discarded_kernel_state: i must be 2 or 3");
  return apply_exponential(quartic_conjugate(i, trunc).G_dagger, -beta, FockVector::basis(trunc, {i}));
}

MatrixOperator arctan_conjugate(Complex beta, Parity parity, TruncationSpec trunc) {
  return arctan_series_operator(square_conjugate(parity, trunc).G_dagger, beta, 4.0);
}

FockVector f1_eigenstate(const F1Problem& prob) {
  if (prob.c_even == Complex{} && prob.c_odd == Complex{}) {
    throw std::invalid_argument("f1_eigenstate: C0 and C1 are both zero");
  }
  const auto [even_kernel, odd_kernel] = f1_kernel_states(prob.beta, prob.trunc);
  FockVector out(prob.trunc);
  if (prob.c_even != Complex{}) {
    const MatrixOperator G = arctan_conjugate(prob.beta, Parity::even, prob.trunc);
    out = out + prob.c_even * apply_exponential(G, prob.lambda, even_kernel);
  }
  if (prob.c_odd != Complex{}) {
    const MatrixOperator G = arctan_conjugate(prob.beta, Parity::odd, prob.trunc);
    out = out + prob.c_odd * apply_exponential(G, prob.lambda, odd_kernel);
  }
  return out;
}

FockVector f1_state_via_kummer(const F1Problem& prob) {
  require_nonzero_beta(prob.beta, "f1_state_via_kummer");
  const int dim = prob.trunc.dim();
  const Complex s = prob.sqrt_beta();
  ComplexVector c = ComplexVector::Zero(dim);
  for (Parity p : {Parity::even, Parity::odd}) {
    const Complex weight = p == Parity::even ? prob.c_even : prob.c_odd;
    if (weight == Complex{}) continue;
    const int b0 = base_level(p);
    const int count = (dim - b0 + 1) / 2;
    // a†^{2n}|b0> = sqrt((2n+b0)!/b0!) |2n+b0>
    auto step = [b0](int n) { return static_cast<double>(2 * n + b0) * (2 * n + b0 - 1); };
    const auto coeffs =
        detail::kummer_operator_coefficients(-0.5 * kI * s, kummer_a(prob, p), kummer_b(p), kI * s, count, step);
    for (int n = 0; n < count; ++n) c[2 * n + b0] += weight * coeffs[static_cast<std::size_t>(n)];
  }
  return FockVector(prob.trunc, std::move(c));
}

FockVector f1_kernel_binomial_form(Complex beta, Parity parity, TruncationSpec trunc) {
  const MatrixOperator g = square_conjugate(parity, trunc).G_dagger;
  const double alpha = parity == Parity::even ? 0.25 : 0.75;
  // (1 + x)^{-alpha} = sum_q (alpha)_q / q! (-x)^q with x = 4 beta g†^2
  ComplexVector term = FockVector::basis(trunc, {base_level(parity)}).coeffs();
  ComplexVector sum = term;
  for (int q = 1;; ++q) {
    term = g.entries() * (g.entries() * term);
    if (term.isZero(0.0)) break;
    term *= (alpha + q - 1.0) / q * (-4.0 * beta);
    sum += term;
  }
  return FockVector(trunc, std::move(sum));
}

FockVector f1_state_binomial_form(const F1Problem& prob) {
  FockVector out(prob.trunc);
  for (Parity p : {Parity::even, Parity::odd}) {
    const Complex weight = p == Parity::even ? prob.c_even : prob.c_odd;
    if (weight == Complex{}) continue;
    const MatrixOperator G = arctan_conjugate(prob.beta, p, prob.trunc);
    out = out + weight * apply_exponential(G, prob.lambda, f1_kernel_binomial_form(prob.beta, p, prob.trunc));
  }
  return out;
}

OverlapValue f1_overlap_squeezed(const F1Problem& prob, Complex mu, Parity parity) {
  const Complex m = std::conj(mu);
  if (prob.beta == Complex{}) return {std::exp(prob.lambda * m), true};
  const Complex r = 2.0 * prob.sqrt_beta();  // sqrt(4 beta)
  const double power = parity == Parity::even ? -0.25 : -0.75;
  const Complex value = std::exp(prob.lambda / r * special::arctan(r * m)) * std::pow(1.0 + r * r * m * m, power);
  return {value, std::abs(mu * prob.sqrt_beta()) < 0.5};
}

OverlapValue f1_overlap_coherent(const F1Problem& prob, Complex alpha, Parity parity) {
  require_nonzero_beta(prob.beta, "f1_overlap_coherent");
  const Complex s = prob.sqrt_beta();
  const Complex a2 = std::conj(alpha) * std::conj(alpha);
  const special::SeriesValue M = special::kummer_m(kummer_a(prob, parity), kummer_b(parity), kI * s * a2);
  Complex value = std::exp(-0.5 * kI * s * a2) * M.value * std::exp(-0.5 * std::norm(alpha));
  if (parity == Parity::odd) value *= std::conj(alpha);
  return {value, M.converged};
}

Complex f1_overlap_number(const F1Problem& prob, int n) {
  require_nonzero_beta(prob.beta, "f1_overlap_number");
  if (n < 0 || n >= prob.trunc.dim()) throw std::out_of_range("f1_overlap_number: level outside the truncation");
  const Parity p = n % 2 == 0 ? Parity::even : Parity::odd;
  const Complex weight = p == Parity::even ? prob.c_even : prob.c_odd;
  if (weight == Complex{}) return 0.0;
  const int b0 = base_level(p);
  const int k = (n - b0) / 2;
  // (-i sqrt(beta)/2)^k sqrt((2k+b0)!) / k!, built one factor at a time
  const Complex half_root = -0.5 * kI * prob.sqrt_beta();
  Complex prefactor = 1.0;
  for (int j = 1; j <= k; ++j) {
    prefactor *= half_root * std::sqrt(static_cast<double>(2 * j + b0) * (2 * j + b0 - 1)) / static_cast<double>(j);
  }
  return weight * prefactor * special::gauss_2f1_terminating(k, kummer_a(prob, p), kummer_b(p), 2.0);
}

Complex f1_wavefunction(const F1Problem& prob, double x, Parity parity) {
  require_nonzero_beta(prob.beta, "f1_wavefunction");
  if (prob.beta == Complex(-1.0)) throw std::domain_error("f1_wavefunction: beta = -1 is a pole");
  const Complex s = prob.sqrt_beta();
  const Complex gauss = std::exp(-0.5 * (1.0 + kI * s) / (1.0 - kI * s) * (x * x));
  const special::SeriesValue M =
      special::kummer_m(kummer_a(prob, parity), kummer_b(parity), 2.0 * kI * s / (1.0 + prob.beta) * (x * x));
  if (!M.converged) throw std::runtime_error("f1_wavefunction: Kummer series did not converge");
  const Complex value = gauss * M.value;
  return parity == Parity::odd ? x * value : value;
}

}  // namespace fockeig::f1
