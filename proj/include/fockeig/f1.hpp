// f1.hpp: eigenstates of a^2 + beta a†^2 and their closed-form overlaps.
//
// States are unnormalized with <0|psi,e> = 1 and <1|psi,o> = 1. Closed forms
// need beta != 0; the series constructions also cover beta = 0.

#pragma once

#include "fockeig/conjugates.hpp"
#include "fockeig/fock.hpp"

#include <utility>
#include <vector>

namespace fockeig::f1 {

enum class Parity { even, odd };

/// Which square root of beta the closed forms use. Results do not depend on
/// it; the choice exists so that this can be checked.
enum class RootBranch { principal, negated };

struct F1Problem {
  Complex beta;
  Complex lambda;
  Complex c_even = 1.0;
  Complex c_odd = 0.0;
  TruncationSpec trunc;
  RootBranch root = RootBranch::principal;

  Complex sqrt_beta() const;
};

/// b_1, b_3, b_5, ... of sum_m (-scale beta)^m / (2m+1) g^{2m+1}, the odd
/// power series of (1/sqrt(scale beta)) arctan(sqrt(scale beta) g).
/// scale is 4 for a^2 + beta a†^2 and 1 for ab + beta a†b†.
struct ArctanSeries {
  Complex beta;
  double scale;
  std::vector<Complex> odd_coefficients;
};

ArctanSeries arctan_series(Complex beta, double scale, int terms);

/// Sums the series in powers of a strictly raising g until g^{2m+1} vanishes
/// on the truncated space, so no cutoff is involved.
template <int Modes>
Operator<Modes> arctan_series_operator(const Operator<Modes>& g, Complex beta, double scale);

/// a^2 + beta a†^2.
MatrixOperator f1_operator(Complex beta, TruncationSpec trunc);

/// g†_0 (even) or g†_1 (odd), the conjugates of a^2.
conj::ConjugatePair<1> square_conjugate(Parity parity, TruncationSpec trunc);

/// G†_i of a^4 / ((n+1)(n+2)) on the residue class i mod 4.
conj::ConjugatePair<1> quartic_conjugate(int i, TruncationSpec trunc);

/// exp(-beta G†_0)|0> and exp(-beta G†_1)|1>, both annihilated by F1.
std::pair<FockVector, FockVector> f1_kernel_states(Complex beta, TruncationSpec trunc);

/// exp(-beta G†_i)|i> for i = 2, 3: eigenvectors of a^4 / ((n+1)(n+2)) with
/// eigenvalue -beta that F1 does not annihilate.
FockVector discarded_kernel_state(Complex beta, int i, TruncationSpec trunc);

/// (1/sqrt(4 beta)) arctan(sqrt(4 beta) g†_i) (i = 0 even, 1 odd).
MatrixOperator arctan_conjugate(Complex beta, Parity parity, TruncationSpec trunc);

/// C0 exp(lambda G†_0) exp(-beta G†_0)|0> + C1 exp(lambda G†_1) exp(-beta G†_1)|1>.
FockVector f1_eigenstate(const F1Problem& prob);

/// The same state from exp(-(i/2) sqrt(beta) a†^2) M(a, b, i sqrt(beta) a†^2)|0 or 1>.
/// Throws std::domain_error at beta = 0.
FockVector f1_state_via_kummer(const F1Problem& prob);

/// (1 + 4 beta g†^2)^{-1/4}|0> (even) or ^{-3/4}|1> (odd), as a terminating series.
FockVector f1_kernel_binomial_form(Complex beta, Parity parity, TruncationSpec trunc);

/// exp(lambda G†) applied to the binomial kernel form, superposed with C0, C1.
FockVector f1_state_binomial_form(const F1Problem& prob);

/// <mu,e|psi,e> or <mu,o|psi,o> with |mu,e> = exp(mu a†^2)|0>, |mu,o> = exp(mu a†^2)|1>.
/// `valid` iff |mu sqrt(beta)| < 1/2. At beta = 0 this is exp(lambda mu*).
OverlapValue f1_overlap_squeezed(const F1Problem& prob, Complex mu, Parity parity);

/// <alpha|psi,e> or <alpha|psi,o> for the normalized coherent state |alpha>.
/// `valid` is false only if the Kummer series hit its term cap.
/// Throws std::domain_error at beta = 0.
OverlapValue f1_overlap_coherent(const F1Problem& prob, Complex alpha, Parity parity);

/// <n|psi> = C0 <n|psi,e> or C1 <n|psi,o> by the parity of n, from the
/// terminating hypergeometric closed form. Throws std::domain_error at beta = 0.
Complex f1_overlap_number(const F1Problem& prob, int n);

/// <x|psi,e> or <x|psi,o> up to an x-independent factor, which makes it 1 at
/// x = 0 (even) or have unit slope there (odd). Use ratios.
/// Throws std::domain_error at beta = 0 and beta = -1.
Complex f1_wavefunction(const F1Problem& prob, double x, Parity parity);

}  // namespace fockeig::f1
