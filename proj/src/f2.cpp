#include "fockeig/f2.hpp"

#include "fockeig/detail/xprec.hpp"
#include "fockeig/specfun.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace fockeig::f2 {

namespace {

void require_nonzero_beta(Complex beta, const char* what) {
  if (beta == Complex{}) {
    throw std::domain_error(std::string(what) + ": the closed form needs beta != 0; use the series construction");
  }
}

void check_family(const FamilyLabel& f, const TruncationSpec& trunc) {
  if (f.side != FamilySide::zero_p && f.side != FamilySide::q_zero) {
    throw std::invalid_argument("family must be built on |0,p> or |q,0>");
  }
  const int min_index = f.side == FamilySide::zero_p ? 0 : 1;
  if (f.index < min_index || f.index >= trunc.dim()) {
    throw std::invalid_argument("family index " + std::to_string(f.index) + " outside the supported range");
  }
}

Complex kummer_a(Complex lambda, Complex root, int index) {
  return 0.5 * (index + 1.0) - kI * lambda / (2.0 * root);
}

}  // namespace

Levels<2> FamilyLabel::base() const { return level(0); }

Levels<2> FamilyLabel::level(int n) const {
  return side == FamilySide::zero_p ? Levels<2>{n, n + index} : Levels<2>{n + index, n};
}

FamilyLabel zero_p(int p) { return {FamilySide::zero_p, p}; }
FamilyLabel q_zero(int q) { return {FamilySide::q_zero, q}; }

Complex F2Problem::sqrt_beta() const {
  const Complex s = std::sqrt(beta);
  return root == RootBranch::principal ? s : -s;
}

TwoModeOperator f2_operator(Complex beta, TruncationSpec trunc) {
  const TwoModeOperator a = ladder(Mode::a, Ladder::lower, trunc);
  const TwoModeOperator b = ladder(Mode::b, Ladder::lower, trunc);
  return a * b + beta * (a.adjoint() * b.adjoint());
}

conj::ConjugatePair<2> pair_conjugate(FamilySide side, TruncationSpec trunc) {
  if (side != FamilySide::zero_p && side != FamilySide::q_zero) {
    throw std::invalid_argument("pair_conjugate: ab has conjugates only on the |0,p> and |q,0> families");
  }
  const auto F = conj::pair_annihilator(trunc);
  return conj::conjugate_product(F, side == FamilySide::zero_p ? conj::ProductSide::a_built : conj::ProductSide::b_built, 0);
}

conj::ConjugatePair<2> pair_square_conjugate(FamilySide side, TruncationSpec trunc) {
  const auto F = conj::pair_square_reduced_annihilator(trunc);
  switch (side) {
    case FamilySide::zero_p: return conj::conjugate_product(F, conj::ProductSide::a_built, 0);
    case FamilySide::q_zero: return conj::conjugate_product(F, conj::ProductSide::b_built, 0);
    case FamilySide::one_p: return conj::conjugate_product(F, conj::ProductSide::a_built, 1);
    case FamilySide::q_one: return conj::conjugate_product(F, conj::ProductSide::b_built, 1);
  }
  throw std::logic_error("pair_square_conjugate: unknown side");
}

TwoModeFockVector f2_kernel_state(Complex beta, FamilyLabel family, TruncationSpec trunc) {
  check_family(family, trunc);
  const auto G = pair_square_conjugate(family.side, trunc).G_dagger;
  return apply_exponential(G, -beta, TwoModeFockVector::basis(trunc, family.base()));
}

TwoModeFockVector discarded_kernel_state(Complex beta, FamilySide side, int index, TruncationSpec trunc) {
  Levels<2> base;
  if (side == FamilySide::one_p && index >= 1) {
    base = {1, index};
  } else if (side == FamilySide::q_one && index >= 2) {
    base = {index, 1};
  } else {
    throw std::invalid_argument("discarded_kernel_state: needs |1,p>, p >= 1, or |q,1>, q >= 2");
  }
  const auto G = pair_square_conjugate(side, trunc).G_dagger;
  return apply_exponential(G, -beta, TwoModeFockVector::basis(trunc, base));
}

TwoModeOperator arctan_conjugate(Complex beta, FamilySide side, TruncationSpec trunc) {
  return f1::arctan_series_operator(pair_conjugate(side, trunc).G_dagger, beta, 1.0);
}

TwoModeFockVector f2_family_eigenstate(Complex beta, Complex lambda, FamilyLabel family, TruncationSpec trunc) {
  const TwoModeFockVector kernel = f2_kernel_state(beta, family, trunc);
  return apply_exponential(arctan_conjugate(beta, family.side, trunc), lambda, kernel);
}

TwoModeFockVector f2_eigenstate(const F2Problem& prob) {
  bool any = false;
  TwoModeFockVector out(prob.trunc);
  for (const auto& [family, weight] : prob.weights) {
    check_family(family, prob.trunc);
    if (weight == Complex{}) continue;
    any = true;
    out = out + weight * f2_family_eigenstate(prob.beta, prob.lambda, family, prob.trunc);
  }
  if (!any) throw std::invalid_argument("f2_eigenstate: every family weight is zero");
  return out;
}

TwoModeFockVector f2_state_via_kummer(const F2Problem& prob) {
  require_nonzero_beta(prob.beta, "f2_state_via_kummer");
  const Complex s = prob.sqrt_beta();
  ComplexVector c = ComplexVector::Zero(TwoModeFockVector::space_size(prob.trunc));
  for (const auto& [family, weight] : prob.weights) {
    check_family(family, prob.trunc);
    if (weight == Complex{}) continue;
    const int p = family.index;
    const int count = prob.trunc.dim() - p;
    // (a†b†)^n |0,p> = sqrt(n! (n+p)! / p!) |n, n+p>
    auto step = [p](int n) { return static_cast<double>(n) * (n + p); };
    const auto coeffs = detail::kummer_operator_coefficients(-kI * s, kummer_a(prob.lambda, s, p), p + 1.0,
                                                             2.0 * kI * s, count, step);
    for (int n = 0; n < count; ++n) {
      c[TwoModeFockVector::flat_index(prob.trunc, family.level(n))] += weight * coeffs[static_cast<std::size_t>(n)];
    }
  }
  return TwoModeFockVector(prob.trunc, std::move(c));
}

TwoModeFockVector f2_kernel_binomial_form(Complex beta, FamilyLabel family, TruncationSpec trunc) {
  check_family(family, trunc);
  const SparseComplex g = pair_conjugate(family.side, trunc).G_dagger.entries();
  const double alpha = 0.5 * (family.index + 1.0);
  ComplexVector term = TwoModeFockVector::basis(trunc, family.base()).coeffs();
  ComplexVector sum = term;
  for (int q = 1;; ++q) {
    term = g * (g * term);
    if (term.isZero(0.0)) break;
    term *= (alpha + q - 1.0) / q * (-beta);
    sum += term;
  }
  return TwoModeFockVector(trunc, std::move(sum));
}

OverlapValue f2_overlap_caves_schumaker(const F2Problem& prob, Complex mu, FamilyLabel family) {
  const Complex m = std::conj(mu);
  if (prob.beta == Complex{}) return {std::exp(prob.lambda * m), true};
  const Complex s = prob.sqrt_beta();
  const Complex value =
      std::exp(prob.lambda / s * special::arctan(s * m)) * std::pow(1.0 + s * s * m * m, -0.5 * (family.index + 1.0));
  return {value, std::abs(mu * s) < 1.0};
}

OverlapValue f2_overlap_coherent(const F2Problem& prob, Complex gamma, Complex delta, FamilyLabel family) {
  require_nonzero_beta(prob.beta, "f2_overlap_coherent");
  const Complex s = prob.sqrt_beta();
  const Complex gd = std::conj(gamma) * std::conj(delta);
  const int p = family.index;
  const special::SeriesValue M = special::kummer_m(kummer_a(prob.lambda, s, p), p + 1.0, 2.0 * kI * s * gd);

  const Complex lone = family.side == FamilySide::zero_p ? std::conj(delta) : std::conj(gamma);
  Complex monomial = 1.0;
  for (int j = 1; j <= p; ++j) monomial *= lone / std::sqrt(static_cast<double>(j));

  const Complex value =
      std::exp(-kI * s * gd) * std::exp(-0.5 * (std::norm(gamma) + std::norm(delta))) * M.value * monomial;
  return {value, M.converged};
}

Complex f2_overlap_number(const F2Problem& prob, int n, FamilyLabel family) {
  require_nonzero_beta(prob.beta, "f2_overlap_number");
  check_family(family, prob.trunc);
  if (n < 0 || n + family.index >= prob.trunc.dim()) {
    throw std::out_of_range("f2_overlap_number: level outside the truncation");
  }
  const int p = family.index;
  const Complex s = prob.sqrt_beta();
  // (-i sqrt(beta))^n sqrt((n+p)! / (n! p!)), one factor at a time
  Complex prefactor = 1.0;
  for (int j = 1; j <= n; ++j) prefactor *= -kI * s * std::sqrt(static_cast<double>(j + p) / j);
  return prefactor * special::gauss_2f1_terminating(n, kummer_a(prob.lambda, s, p), p + 1.0, 2.0);
}

Complex f2_overlap_number(const F2Problem& prob, Levels<2> levels) {
  const auto [na, nb] = levels;
  Complex sum = 0.0;
  for (const auto& [family, weight] : prob.weights) {
    if (weight == Complex{}) continue;
    const bool on_family = family.side == FamilySide::zero_p ? nb - na == family.index : na - nb == family.index;
    if (on_family) sum += weight * f2_overlap_number(prob, std::min(na, nb), family);
  }
  return sum;
}

TransformReport f2_via_f1_transform(Complex beta, TruncationSpec trunc) {
  const TwoModeOperator a = ladder(Mode::a, Ladder::lower, trunc);
  const TwoModeOperator b = ladder(Mode::b, Ladder::lower, trunc);
  const Complex r = 1.0 / std::numbers::sqrt2;
  const TwoModeOperator c = r * (a + b);
  const TwoModeOperator d = (-kI * r) * (a - b);
  const TwoModeOperator cd = c.adjoint();
  const TwoModeOperator dd = d.adjoint();

  const TwoModeOperator rotated = 0.5 * (c * c + d * d) + (0.5 * beta) * (cd * cd + dd * dd);
  const TwoModeOperator one = TwoModeOperator::identity(trunc);
  const int limit2 = trunc.interior_end(2);
  const int limit1 = trunc.interior_end(1);

  TransformReport rep{};
  rep.f2_deviation = interior_max_entry(rotated - f2_operator(beta, trunc), limit2);
  rep.cc_deviation = interior_max_entry(commutator(c, cd) - one, limit1);
  rep.dd_deviation = interior_max_entry(commutator(d, dd) - one, limit1);
  rep.cd_deviation = std::max(interior_max_entry(commutator(c, d), limit1), interior_max_entry(commutator(c, dd), limit1));
  return rep;
}

}  // namespace fockeig::f2
