// conjugates.hpp: canonical conjugates G† with [F, G†] = 1 on an invariant
// sector, for F = f(n) a^p and for products F1(a) F2(b).

#pragma once

#include "fockeig/fock.hpp"

namespace fockeig::conj {

/// F = f(n_a) a^p; f multiplies after lowering, i.e. it is evaluated at the
/// lowered level.
struct SingleModeAnnihilator {
  LevelFn f;
  int power;
  TruncationSpec trunc;

  MatrixOperator matrix() const;
};

/// F = f_a(n_a) a^power_a * f_b(n_b) b^power_b.
struct ProductAnnihilator {
  LevelFn f_a;
  int power_a;
  LevelFn f_b;
  int power_b;
  TruncationSpec trunc;

  TwoModeOperator matrix() const;
};

template <int Modes>
struct ConjugatePair {
  Operator<Modes> F;
  Operator<Modes> G_dagger;
  SectorSpec sector;
};

/// G†_i = (1/p) F† (F F†)^{-1} (n_a + p - i) on the residue class i mod p.
/// (F F†)^{-1} is the closed-form diagonal 1 / (|f(n)|^2 (n+1)...(n+p)), so no
/// matrix is ever inverted. Throws std::domain_error where f vanishes.
ConjugatePair<1> conjugate_single(const SingleModeAnnihilator& F, int i);

enum class ProductSide {
  a_built,  // sectors built on |i, p>
  b_built,  // sectors built on |q, i>
};

/// Conjugate on the family of sectors built on |i,p> (a_built) or |q,i>
/// (b_built), for i in {0, 1}. Needs power_a == power_b, which is what makes
/// the families invariant; the same power is the family's step.
ConjugatePair<2> conjugate_product(const ProductAnnihilator& F, ProductSide side, int i);

struct ConjugacyReport {
  double max_residual;
  bool pass;
};

/// Largest interior entry of P_S ([F, G†] - 1) P_S on the pair's own sector.
template <int Modes>
ConjugacyReport verify_conjugacy(const ConjugatePair<Modes>& pair, double tol);

/// Same check on an arbitrary sector, e.g. to show a conjugate fails off its own.
template <int Modes>
ConjugacyReport verify_conjugacy(const ConjugatePair<Modes>& pair, const SectorSpec& sector, double tol);

/// a^2.
SingleModeAnnihilator square_annihilator(TruncationSpec trunc);
/// a^4 / ((n+1)(n+2)), f evaluated at the lowered level.
SingleModeAnnihilator quartic_reduced_annihilator(TruncationSpec trunc);
/// ab.
ProductAnnihilator pair_annihilator(TruncationSpec trunc);
/// a^2 b^2 / ((n_a+1)(n_b+1)).
ProductAnnihilator pair_square_reduced_annihilator(TruncationSpec trunc);

}  // namespace fockeig::conj
