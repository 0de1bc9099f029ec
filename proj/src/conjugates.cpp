#include "fockeig/conjugates.hpp"

#include <string>

namespace fockeig::conj {

namespace {

// (1/scale) a†^p diag[num(n) / (f(n) (n+1)...(n+p))]
MatrixOperator raising_part(const LevelFn& f, int p, const LevelFn& num, double scale, TruncationSpec trunc) {
  auto weight = [&](int n) -> Complex {
    const Complex fn = f(n);
    if (fn == Complex{}) throw std::domain_error("conjugate: f vanishes at n = " + std::to_string(n));
    double rising = 1.0;
    for (int j = 1; j <= p; ++j) rising *= n + j;
    return num(n) / (fn * rising * scale);
  };
  return power(ladder(Ladder::raise, trunc), p) * diag_fn(weight, trunc);
}

void check_power(int p) {
  if (p < 1) throw std::invalid_argument("conjugate: power must be >= 1");
}

}  // namespace

MatrixOperator SingleModeAnnihilator::matrix() const {
  check_power(power);
  return diag_fn(f, trunc) * fockeig::power(ladder(Ladder::lower, trunc), power);
}

TwoModeOperator ProductAnnihilator::matrix() const {
  check_power(power_a);
  check_power(power_b);
  const MatrixOperator fa = diag_fn(f_a, trunc) * power(ladder(Ladder::lower, trunc), power_a);
  const MatrixOperator fb = diag_fn(f_b, trunc) * power(ladder(Ladder::lower, trunc), power_b);
  return lift(fa, Mode::a) * lift(fb, Mode::b);
}

ConjugatePair<1> conjugate_single(const SingleModeAnnihilator& F, int i) {
  const int p = F.power;
  check_power(p);
  if (i < 0 || i >= p) throw std::invalid_argument("conjugate_single: sector index must lie in [0, p)");
  const LevelFn num = [p, i](int n) { return Complex(n + p - i); };
  return {F.matrix(), raising_part(F.f, p, num, p, F.trunc), SectorSpec::residue(p, i)};
}

ConjugatePair<2> conjugate_product(const ProductAnnihilator& F, ProductSide side, int i) {
  check_power(F.power_a);
  check_power(F.power_b);
  if (F.power_a != F.power_b) {
    throw std::invalid_argument("conjugate_product: family sectors need equal powers on both modes");
  }
  const int k = F.power_a;
  if (i < 0 || i > 1 || i >= k) throw std::invalid_argument("conjugate_product: sector index must be 0 or 1 and below the power");

  const LevelFn unit = [](int) { return Complex(1.0); };
  const LevelFn shifted = [k, i](int n) { return Complex(n + k - i); };
  const bool a_side = side == ProductSide::a_built;
  const MatrixOperator ga = raising_part(F.f_a, k, a_side ? shifted : unit, a_side ? k : 1.0, F.trunc);
  const MatrixOperator gb = raising_part(F.f_b, k, a_side ? unit : shifted, a_side ? 1.0 : k, F.trunc);

  FamilySide family;
  if (a_side) {
    family = i == 0 ? FamilySide::zero_p : FamilySide::one_p;
  } else {
    family = i == 0 ? FamilySide::q_zero : FamilySide::q_one;
  }
  return {F.matrix(), lift(ga, Mode::a) * lift(gb, Mode::b), SectorSpec::family(k, family)};
}

template <int Modes>
ConjugacyReport verify_conjugacy(const ConjugatePair<Modes>& pair, const SectorSpec& sector, double tol) {
  const Operator<Modes> defect = commutator(pair.F, pair.G_dagger) - Operator<Modes>::identity(pair.F.trunc());
  const int limit = pair.F.trunc().interior_end(pair.F.bandwidth());
  const double r = interior_max_entry(defect, limit, sector);
  return {r, r < tol};
}

template <int Modes>
ConjugacyReport verify_conjugacy(const ConjugatePair<Modes>& pair, double tol) {
  return verify_conjugacy(pair, pair.sector, tol);
}

template ConjugacyReport verify_conjugacy<1>(const ConjugatePair<1>&, double);
template ConjugacyReport verify_conjugacy<2>(const ConjugatePair<2>&, double);
template ConjugacyReport verify_conjugacy<1>(const ConjugatePair<1>&, const SectorSpec&, double);
template ConjugacyReport verify_conjugacy<2>(const ConjugatePair<2>&, const SectorSpec&, double);

SingleModeAnnihilator square_annihilator(TruncationSpec trunc) {
  return {[](int) { return Complex(1.0); }, 2, trunc};
}

SingleModeAnnihilator quartic_reduced_annihilator(TruncationSpec trunc) {
  return {[](int n) { return Complex(1.0 / ((n + 1.0) * (n + 2.0))); }, 4, trunc};
}

ProductAnnihilator pair_annihilator(TruncationSpec trunc) {
  const LevelFn unit = [](int) { return Complex(1.0); };
  return {unit, 1, unit, 1, trunc};
}

ProductAnnihilator pair_square_reduced_annihilator(TruncationSpec trunc) {
  const LevelFn reduce = [](int n) { return Complex(1.0 / (n + 1.0)); };
  return {reduce, 2, reduce, 2, trunc};
}

}  // namespace fockeig::conj
