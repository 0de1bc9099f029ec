#include "doctest.h"

#include "fockeig/fock.hpp"
#include "fockeig/serialize.hpp"

#include <cmath>
#include <random>

using namespace fockeig;

namespace {

const TruncationSpec T(16, 2);

double max_abs(const ComplexVector& v) { return v.cwiseAbs().maxCoeff(); }

}  // namespace

TEST_CASE("truncation spec validates its invariants") {
  CHECK_NOTHROW(TruncationSpec(8, 2));
  CHECK_THROWS_AS(TruncationSpec(7, 0), std::invalid_argument);
  CHECK_THROWS_AS(TruncationSpec(16, 5), std::invalid_argument);
  CHECK_THROWS_AS(TruncationSpec(16, -1), std::invalid_argument);
  CHECK(TruncationSpec(64, 8).interior_end(2) == 48);
  CHECK(TruncationSpec(64, 8).interior_end(0) == 56);
}

TEST_CASE("ladder operators act as sqrt(n)") {
  const auto a = ladder(Ladder::lower, T);
  const auto ad = ladder(Ladder::raise, T);
  CHECK(max_abs((a * FockVector::basis(T, {1})).coeffs() - FockVector::basis(T, {0}).coeffs()) == 0.0);
  CHECK(max_abs((ad * FockVector::basis(T, {0})).coeffs() - FockVector::basis(T, {1}).coeffs()) == 0.0);
  CHECK(a.element(2, 3) == Complex(std::sqrt(3.0)));
  CHECK(ad.element(3, 2) == Complex(std::sqrt(3.0)));
  CHECK(a.bandwidth() == 1);
}

TEST_CASE("[a, a+] is the identity except at the truncation edge") {
  const auto a = ladder(Ladder::lower, T);
  const auto c = commutator(a, a.adjoint());
  for (int n = 0; n < T.dim() - 1; ++n) {
    const auto v = c * FockVector::basis(T, {n});
    CHECK(max_abs(v.coeffs() - FockVector::basis(T, {n}).coeffs()) < 1e-14);
  }
  // The edge level sees only -a+ a.
  CHECK(std::abs(c.element(T.dim() - 1, T.dim() - 1) + (T.dim() - 1.0)) < 1e-13);
}

TEST_CASE("[n, a+] = a+ on the interior") {
  const auto ad = ladder(Ladder::raise, T);
  const auto d = commutator(number(T), ad) - ad;
  CHECK(interior_max_entry(d, T.interior_end(1)) < 1e-14);
}

TEST_CASE("diag_fn evaluates its map on the diagonal") {
  CHECK(diag_fn([](int n) { return Complex(n); }, T).element(3, 3) == Complex(3.0));
  CHECK((diag_fn([](int n) { return Complex(1.0 / (n + 1)); }, T) * FockVector::basis(T, {0})).at({0}) == Complex(1.0));
  CHECK(std::abs(diag_fn([](int n) { return Complex(1.0 / ((n + 1.0) * (n + 2.0))); }, T).element(2, 2) - 1.0 / 12) < 1e-17);
  CHECK_THROWS_AS(diag_fn([](int n) { return Complex(1.0 / (n - 3)); }, T), std::invalid_argument);
}

TEST_CASE("diag_fn products multiply pointwise") {
  const LevelFn f = [](int n) { return Complex(std::sin(n), 1.0 / (n + 1)); };
  const LevelFn g = [](int n) { return Complex(n * 0.5, -2.0); };
  const auto prod = diag_fn(f, T) * diag_fn(g, T) - diag_fn([&](int n) { return f(n) * g(n); }, T);
  CHECK(interior_max_entry(prod, T.dim()) < 1e-15);
}

TEST_CASE("operators reject bandwidth hints below their pattern") {
  const auto a = ladder(Ladder::lower, T);
  const SparseComplex m = (a * a).entries();
  CHECK_THROWS_AS(MatrixOperator(T, m, 1), std::invalid_argument);
  CHECK_NOTHROW(MatrixOperator(T, m, 2));
  CHECK((a * a).bandwidth() == 2);
}

TEST_CASE("states validate size and finiteness") {
  CHECK_THROWS_AS(FockVector(T, ComplexVector::Zero(5)), std::invalid_argument);
  ComplexVector bad = ComplexVector::Zero(T.dim());
  bad[3] = Complex(NAN, 0.0);
  CHECK_THROWS_AS(FockVector(T, bad), std::invalid_argument);
  CHECK_THROWS_AS(FockVector::basis(T, {16}), std::out_of_range);
}

TEST_CASE("two-mode layout is row-major") {
  CHECK(TwoModeFockVector::flat_index(T, {2, 5}) == 2 * 16 + 5);
  CHECK(TwoModeFockVector::levels_of(T, 37) == Levels<2>{2, 5});
  const auto a = ladder(Mode::a, Ladder::lower, T);
  const auto b = ladder(Mode::b, Ladder::lower, T);
  const auto v = TwoModeFockVector::basis(T, {2, 3});
  CHECK(std::abs((a * v).at({1, 3}) - std::sqrt(2.0)) < 1e-15);
  CHECK(std::abs((b * v).at({2, 2}) - std::sqrt(3.0)) < 1e-15);
  CHECK(interior_max_entry(commutator(a, b), T.dim()) == 0.0);
}

TEST_CASE("residue sectors project and partition") {
  const auto s0 = SectorSpec::residue(4, 0);
  const auto v = FockVector::basis(T, {0}) + FockVector::basis(T, {1});
  CHECK(max_abs(sector_project(v, s0).coeffs() - FockVector::basis(T, {0}).coeffs()) == 0.0);

  ComplexVector ones = ComplexVector::Ones(T.dim());
  const auto s2 = sector_project(FockVector(T, ones), SectorSpec::residue(4, 2));
  for (int n = 0; n < T.dim(); ++n) CHECK(s2[n] == Complex(n % 4 == 2 ? 1.0 : 0.0));

  auto total = MatrixOperator::zero(T);
  for (int i = 0; i < 4; ++i) {
    const auto P = sector_projector<1>(SectorSpec::residue(4, i), T);
    CHECK(interior_max_entry(P * P - P, T.dim()) == 0.0);
    total = total + P;
  }
  CHECK(interior_max_entry(total - MatrixOperator::identity(T), T.dim()) == 0.0);
  CHECK_THROWS_AS(SectorSpec::residue(4, 4), std::invalid_argument);
}

TEST_CASE("family sectors follow the diagonal patterns") {
  const auto s02 = SectorSpec::family(2, FamilySide::zero_p, 2);
  const auto v = TwoModeFockVector::basis(T, {1, 3});
  CHECK(sector_project(v, s02).norm() == 0.0);
  CHECK(s02.contains(2, 4));
  CHECK(s02.contains(0, 2));
  CHECK_FALSE(s02.contains(1, 3));

  const auto s12 = SectorSpec::family(2, FamilySide::one_p, 2);  // |2n+1, 2n+2>
  CHECK(s12.contains(1, 2));
  CHECK(s12.contains(3, 4));
  CHECK_FALSE(s12.contains(2, 3));

  const auto s30 = SectorSpec::family(2, FamilySide::q_zero, 3);  // |2n+3, 2n>
  CHECK(s30.contains(3, 0));
  CHECK(s30.contains(5, 2));
  CHECK_FALSE(s30.contains(4, 1));

  const auto s31 = SectorSpec::family(2, FamilySide::q_one, 3);  // |2n+3, 2n+1>
  CHECK(s31.contains(3, 1));
  CHECK_FALSE(s31.contains(2, 0));

  CHECK_THROWS_AS(SectorSpec::family(1, FamilySide::one_p), std::invalid_argument);
  CHECK_THROWS_AS(SectorSpec::family(2, FamilySide::q_zero, 0), std::invalid_argument);
  CHECK_THROWS_AS(s02.contains(3), std::logic_error);
}

TEST_CASE("inner products conjugate the left argument") {
  CHECK(inner(FockVector::basis(T, {0}), FockVector::basis(T, {0})) == Complex(1.0));
  CHECK(inner(FockVector::basis(T, {0}), FockVector::basis(T, {1})) == Complex(0.0));
  ComplexVector c = ComplexVector::Zero(T.dim());
  c[0] = 1.0 / std::sqrt(2.0);
  c[1] = kI / std::sqrt(2.0);
  const FockVector v(T, c);
  CHECK(std::abs(inner(v, v) - 1.0) < 1e-15);
  CHECK_THROWS_AS(inner(v, FockVector(TruncationSpec(8, 0))), std::invalid_argument);
}

TEST_CASE("<u, A v> = <A+ u, v> for constructed operators") {
  std::mt19937 rng(7);
  std::normal_distribution<double> g;
  auto random_state = [&] {
    ComplexVector c(T.dim());
    for (auto& z : c) z = Complex(g(rng), g(rng));
    return FockVector(T, c);
  };
  const auto a = ladder(Ladder::lower, T);
  const auto ops = {a, a.adjoint(), a * a + Complex(0.3, 0.1) * (a.adjoint() * a.adjoint()),
                    diag_fn([](int n) { return Complex(n, 1.0 / (n + 2)); }, T)};
  for (const auto& A : ops) {
    const auto u = random_state(), v = random_state();
    CHECK(std::abs(inner(u, A * v) - inner(A.adjoint() * u, v)) < 1e-12);
  }
}

TEST_CASE("exponential series of a raising operator terminates") {
  const auto ad = ladder(Ladder::raise, T);
  const auto v = apply_exponential(ad * ad, Complex(0.5), FockVector::basis(T, {0}));
  // exp(mu a+^2)|0> has mu^k sqrt((2k)!) / k! on |2k>
  double w = 1.0;
  for (int k = 0; 2 * k < T.dim(); ++k) {
    if (k > 0) w *= 0.5 * std::sqrt((2.0 * k) * (2.0 * k - 1)) / k;
    CHECK(std::abs(v[2 * k] - w) < 1e-13 * w);
    if (2 * k + 1 < T.dim()) CHECK(v[2 * k + 1] == Complex(0.0));
  }
  CHECK_THROWS_AS(apply_exponential(ladder(Ladder::lower, T), Complex(1.0), FockVector::basis(T, {3})), std::invalid_argument);
}

TEST_CASE("state json round-trips") {
  ComplexVector c(T.dim());
  for (int n = 0; n < T.dim(); ++n) c[n] = Complex(1.0 / (n + 3), -std::sqrt(n + 0.1));
  const FockVector v(T, c);
  const auto j = state_to_json(v);
  CHECK(j.at("dim") == 16);
  CHECK(j.at("modes") == 1);
  const auto back = state_from_json<1>(nlohmann::json::parse(j.dump()));
  CHECK(back.coeffs() == v.coeffs());
  CHECK(state_to_json(back).dump() == j.dump());
  CHECK_THROWS_AS(state_from_json<2>(j), std::invalid_argument);

  const auto w = TwoModeFockVector::basis(T, {3, 1});
  const auto j2 = state_to_json(w);
  CHECK(json_modes(j2) == 2);
  CHECK(state_from_json<2>(j2).at({3, 1}) == Complex(1.0));
}
