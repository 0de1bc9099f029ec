// f2.hpp: eigenstates of ab + beta a†b† on the families built on |0,p> and
// |q,0>, their closed-form overlaps, and the rotation to two F1-type modes.
//
// Each family state is gauged to coefficient 1 on its base level.

#pragma once

#include "fockeig/conjugates.hpp"
#include "fockeig/f1.hpp"
#include "fockeig/fock.hpp"

#include <utility>
#include <vector>

namespace fockeig::f2 {

using f1::RootBranch;

/// Family of states |n, n+p> (side zero_p, index p >= 0) or |n+q, n>
/// (side q_zero, index q >= 1).
struct FamilyLabel {
  FamilySide side;
  int index;

  Levels<2> base() const;
  /// Level of the n-th state along the family diagonal.
  Levels<2> level(int n) const;
  bool operator==(const FamilyLabel&) const = default;
};

FamilyLabel zero_p(int p);
FamilyLabel q_zero(int q);

struct F2Problem {
  Complex beta;
  Complex lambda;
  std::vector<std::pair<FamilyLabel, Complex>> weights;
  TruncationSpec trunc;
  RootBranch root = RootBranch::principal;

  Complex sqrt_beta() const;
};

/// ab + beta a†b†.
TwoModeOperator f2_operator(Complex beta, TruncationSpec trunc);

/// g†_0 = a†b† / (n_b+1) for zero_p families, g†_1 = a†b† / (n_a+1) for q_zero.
conj::ConjugatePair<2> pair_conjugate(FamilySide side, TruncationSpec trunc);

/// G†_0..G†_3 of a^2 b^2 / ((n_a+1)(n_b+1)) on the families built on |0,p>,
/// |q,0>, |1,p> and |q,1>.
conj::ConjugatePair<2> pair_square_conjugate(FamilySide side, TruncationSpec trunc);

/// exp(-beta G†) on the family base; annihilated by F2.
TwoModeFockVector f2_kernel_state(Complex beta, FamilyLabel family, TruncationSpec trunc);

/// exp(-beta G†_2)|1,p> (side one_p) or exp(-beta G†_3)|q,1> (side q_one):
/// eigenvectors of a^2 b^2 / ((n_a+1)(n_b+1)) with eigenvalue -beta that F2
/// does not annihilate.
TwoModeFockVector discarded_kernel_state(Complex beta, FamilySide side, int index, TruncationSpec trunc);

/// (1/sqrt(beta)) arctan(sqrt(beta) g†) for the family side.
TwoModeOperator arctan_conjugate(Complex beta, FamilySide side, TruncationSpec trunc);

/// exp(lambda G†) exp(-beta G†)|base> for one family.
TwoModeFockVector f2_family_eigenstate(Complex beta, Complex lambda, FamilyLabel family, TruncationSpec trunc);

/// Weighted sum of family eigenstates.
TwoModeFockVector f2_eigenstate(const F2Problem& prob);

/// The same state from exp(-i sqrt(beta) a†b†) M((p+1)/2 - i lambda/(2 sqrt(beta)), p+1,
/// 2i sqrt(beta) a†b†)|base>. Throws std::domain_error at beta = 0.
TwoModeFockVector f2_state_via_kummer(const F2Problem& prob);

/// (1 + beta g†^2)^{-(p+1)/2}|base>, as a terminating series.
TwoModeFockVector f2_kernel_binomial_form(Complex beta, FamilyLabel family, TruncationSpec trunc);

/// <mu;base|phi;base> with |mu;base> = exp(mu a†b†)|base>. `valid` iff
/// |mu sqrt(beta)| < 1. At beta = 0 this is exp(lambda mu*).
OverlapValue f2_overlap_caves_schumaker(const F2Problem& prob, Complex mu, FamilyLabel family);

/// <gamma,delta|phi;base> for normalized two-mode coherent states, including
/// the base monomial delta*^p / sqrt(p!) (or gamma*^q / sqrt(q!)).
/// Throws std::domain_error at beta = 0.
OverlapValue f2_overlap_coherent(const F2Problem& prob, Complex gamma, Complex delta, FamilyLabel family);

/// Gauged coefficient of the n-th diagonal level of a family state from the
/// terminating hypergeometric closed form. Throws std::domain_error at beta = 0.
Complex f2_overlap_number(const F2Problem& prob, int n, FamilyLabel family);

/// <n_a,n_b|phi>: the weighted family coefficient, zero off every weighted family.
Complex f2_overlap_number(const F2Problem& prob, Levels<2> levels);

/// Deviations found when rewriting F2 with c = (a+b)/sqrt 2, d = -i(a-b)/sqrt 2
/// as (c^2+d^2)/2 + beta (c†^2+d†^2)/2. All are interior max entries.
struct TransformReport {
  double f2_deviation;
  double cc_deviation;  // [c, c†] - 1
  double dd_deviation;  // [d, d†] - 1
  double cd_deviation;  // [c, d] and [c, d†]
};

TransformReport f2_via_f1_transform(Complex beta, TruncationSpec trunc);

}  // namespace fockeig::f2
