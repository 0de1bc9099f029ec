#include "doctest.h"

#include "fockeig/f1.hpp"
#include "fockeig/oracle.hpp"

#include <cmath>

using namespace fockeig;
using namespace fockeig::f1;

namespace {

const TruncationSpec T256(256, 16);
const TruncationSpec T64(64, 8);

F1Problem problem(Complex beta, Complex lambda, TruncationSpec trunc, Complex c_even = 1.0, Complex c_odd = 0.0) {
  return {beta, lambda, c_even, c_odd, trunc};
}

bool close(Complex x, Complex y, double tol) { return std::abs(x - y) <= tol * std::max(1.0, std::abs(y)); }

double eigen_residual(const FockVector& v, Complex lambda, Complex beta) {
  const auto F = f1_operator(beta, v.trunc());
  const auto r = F * v - lambda * v;
  const int limit = v.trunc().interior_end(2);
  return interior_norm(r, limit) / interior_norm(v, limit);
}

// sum_n conj(w_n) c_n over the even or odd levels, w_n the coefficients of exp(mu a†^2)|0 or 1>
Complex squeezed_oracle(const FockVector& v, Complex mu, int offset) {
  Complex sum = 0.0, w = 1.0;
  for (int k = 0; 2 * k + offset < v.trunc().dim(); ++k) {
    const int n = 2 * k + offset;
    if (k > 0) w *= mu * std::sqrt(double(n) * (n - 1)) / double(k);
    sum += std::conj(w) * v[n];
  }
  return sum;
}

Complex coherent_oracle(const FockVector& v, Complex alpha) {
  Complex sum = 0.0, w = std::exp(-0.5 * std::norm(alpha));
  for (int n = 0; n < v.trunc().dim(); ++n) {
    if (n > 0) w *= alpha / std::sqrt(double(n));
    sum += std::conj(w) * v[n];
  }
  return sum;
}

}  // namespace

TEST_CASE("f1 operator matrix elements") {
  const auto F0 = f1_operator(0.0, T64);
  const auto v = F0 * FockVector::basis(T64, {2});
  CHECK(std::abs(v[0] - std::sqrt(2.0)) < 1e-13);
  CHECK(std::abs(f1_operator(0.3, T64).element(2, 0) - 0.3 * std::sqrt(2.0)) < 1e-13);
  const auto F = f1_operator(Complex(0.05, 0.05), T64);
  const auto P = sector_projector<1>(SectorSpec::residue(2, 0), T64);
  CHECK(interior_max_entry(commutator(F, P), T64.dim()) == 0.0);
}

TEST_CASE("arctan series coefficients") {
  const auto s1 = arctan_series(0.25, 4.0, 3);
  CHECK(s1.odd_coefficients[0] == Complex(1.0));
  CHECK(close(s1.odd_coefficients[1], -1.0 / 3.0, 1e-15));
  CHECK(close(s1.odd_coefficients[2], 1.0 / 5.0, 1e-15));
  // the two-mode series has no factor of four
  const auto s2 = arctan_series(0.25, 1.0, 3);
  CHECK(close(s2.odd_coefficients[1], -0.25 / 3.0, 1e-15));
  CHECK(close(s2.odd_coefficients[2], 0.0625 / 5.0, 1e-15));
}

TEST_CASE("arctan conjugate reduces to g† at beta = 0") {
  for (auto parity : {Parity::even, Parity::odd}) {
    const auto G = arctan_conjugate(0.0, parity, T64);
    CHECK(interior_max_entry(G - square_conjugate(parity, T64).G_dagger, T64.dim()) == 0.0);
  }
}

TEST_CASE("arctan conjugate is canonical to the full operator") {
  for (Complex beta : {Complex(0.04), Complex(0.0, 0.09), Complex(0.05, 0.05)}) {
    for (auto parity : {Parity::even, Parity::odd}) {
      const auto G = arctan_conjugate(beta, parity, T256);
      const auto F = f1_operator(beta, T256);
      const auto defect = commutator(F, G) - MatrixOperator::identity(T256);
      const auto sector = SectorSpec::residue(2, parity == Parity::even ? 0 : 1);
      CHECK(interior_max_entry(defect, T256.interior_end(2), sector) < 1e-10);
    }
  }
}

TEST_CASE("squared g† equals the quartic conjugates up to a level factor") {
  const auto n = number(T64);
  const auto one = MatrixOperator::identity(T64);
  const auto g0 = square_conjugate(Parity::even, T64).G_dagger;
  const auto g1 = square_conjugate(Parity::odd, T64).G_dagger;
  CHECK(interior_max_entry(g0 * g0 * (n + one) - quartic_conjugate(0, T64).G_dagger, T64.dim()) < 1e-13);
  CHECK(interior_max_entry(g1 * g1 * (n + 2.0 * one) - quartic_conjugate(1, T64).G_dagger, T64.dim()) < 1e-13);
}

TEST_CASE("kernel states") {
  const auto [e0, o0] = f1_kernel_states(0.0, T64);
  CHECK((e0.coeffs() - FockVector::basis(T64, {0}).coeffs()).norm() == 0.0);
  CHECK((o0.coeffs() - FockVector::basis(T64, {1}).coeffs()).norm() == 0.0);

  const auto [e, o] = f1_kernel_states(0.04, T256);
  CHECK(eigen_residual(e, 0.0, 0.04) < 1e-10);
  CHECK(eigen_residual(o, 0.0, 0.04) < 1e-10);
}

TEST_CASE("discarded kernel states solve the quartic problem only") {
  const Complex beta = 0.04;
  const auto Fq = quartic_conjugate(0, T256).F;
  for (int i : {2, 3}) {
    const auto v = discarded_kernel_state(beta, i, T256);
    const int limit = T256.interior_end(4);
    CHECK(interior_norm(Fq * v + beta * v, limit) < 1e-10 * interior_norm(v, limit));
    CHECK(interior_norm(f1_operator(beta, T256) * v, T256.interior_end(2)) > 1e-3);
  }
  CHECK_THROWS_AS(discarded_kernel_state(beta, 1, T64), std::invalid_argument);
}

TEST_CASE("eigenstate low coefficients follow the recursion") {
  const Complex lambda(1.0, 0.3), beta(0.05, 0.05);
  const auto v = f1_eigenstate(problem(beta, lambda, T256));
  CHECK(v[0] == Complex(1.0));
  CHECK(close(v[2], lambda / std::sqrt(2.0), 1e-13));
  CHECK(close(v[4], (lambda * lambda - 2.0 * beta) / (2.0 * std::sqrt(6.0)), 1e-13));
  const auto w = f1_eigenstate(problem(beta, lambda, T256, 0.0, 1.0));
  CHECK(w[1] == Complex(1.0));
  CHECK(close(w[3], lambda / std::sqrt(6.0), 1e-13));
}

TEST_CASE("eigenstate at lambda = 0 is the kernel state") {
  const auto v = f1_eigenstate(problem(0.04, 0.0, T256));
  CHECK((v.coeffs() - f1_kernel_states(0.04, T256).first.coeffs()).norm() < 1e-13);
}

TEST_CASE("eigenstates satisfy the eigenvalue equation") {
  for (Complex beta : {Complex(0.04), Complex(0.0, 0.09), Complex(0.05, 0.05)}) {
    for (Complex lambda : {Complex(0.0), Complex(0.7), Complex(1.0, 0.3)}) {
      CHECK(eigen_residual(f1_eigenstate(problem(beta, lambda, T256)), lambda, beta) < 1e-8);
      CHECK(eigen_residual(f1_eigenstate(problem(beta, lambda, T256, 0.3, Complex(0.0, 2.0))), lambda, beta) < 1e-8);
    }
  }
}

TEST_CASE("parity is exact") {
  const auto e = f1_eigenstate(problem(Complex(0.05, 0.05), 0.7, T256));
  const auto o = f1_eigenstate(problem(Complex(0.05, 0.05), 0.7, T256, 0.0, 1.0));
  for (int n = 1; n < T256.dim(); n += 2) CHECK(e[n] == Complex(0.0));
  for (int n = 0; n < T256.dim(); n += 2) CHECK(o[n] == Complex(0.0));
}

TEST_CASE("the three constructions agree") {
  const int top = T256.dim() / 2 - T256.guard();
  for (Complex lambda : {Complex(0.7), Complex(1.0, 0.3)}) {
    const auto prob = problem(Complex(0.0, 0.09), lambda, T256, 1.0, 1.0);
    const auto series = f1_eigenstate(prob);
    const auto kummer = f1_state_via_kummer(prob);
    const auto binomial = f1_state_binomial_form(prob);
    for (int n = 0; n < top; ++n) {
      CHECK(close(kummer[n], series[n], 1e-9));
      CHECK(close(binomial[n], series[n], 1e-9));
      CHECK(close(f1_overlap_number(prob, n), series[n], 1e-9));
    }
  }
  CHECK_THROWS_AS(f1_state_via_kummer(problem(0.0, 0.7, T64)), std::domain_error);
}

TEST_CASE("kernel binomial forms equal the exponential series") {
  for (Complex beta : {Complex(0.04), Complex(0.0, 0.09)}) {
    const auto [e, o] = f1_kernel_states(beta, T256);
    CHECK((f1_kernel_binomial_form(beta, Parity::even, T256).coeffs() - e.coeffs()).cwiseAbs().maxCoeff() < 1e-10);
    CHECK((f1_kernel_binomial_form(beta, Parity::odd, T256).coeffs() - o.coeffs()).cwiseAbs().maxCoeff() < 1e-10);
  }
}

TEST_CASE("number overlaps") {
  const Complex beta(0.04), lambda(0.7);
  const auto prob = problem(beta, lambda, T64, 1.0, 1.0);
  CHECK(close(f1_overlap_number(prob, 0), 1.0, 1e-15));
  CHECK(close(f1_overlap_number(prob, 1), 1.0, 1e-15));
  CHECK(close(f1_overlap_number(prob, 2), lambda / std::sqrt(2.0), 1e-13));
  CHECK(close(f1_overlap_number(prob, 3), lambda / std::sqrt(6.0), 1e-13));
  CHECK(f1_overlap_number(problem(beta, lambda, T64), 3) == Complex(0.0));
  CHECK_THROWS_AS(f1_overlap_number(problem(0.0, lambda, T64), 2), std::domain_error);
  CHECK_THROWS(f1_overlap_number(prob, 64));
}

TEST_CASE("squeezed vacuum overlaps") {
  const auto prob = problem(0.04, 0.0, TruncationSpec(512, 16), 1.0, 1.0);
  CHECK(close(f1_overlap_squeezed(prob, 0.0, Parity::even).value, 1.0, 1e-15));
  CHECK(close(f1_overlap_squeezed(prob, 0.0, Parity::odd).value, 1.0, 1e-15));
  const auto s = f1_overlap_squeezed(prob, 0.5, Parity::even);
  CHECK(s.valid);
  CHECK(close(s.value, std::pow(1.04, -0.25), 1e-14));
  CHECK(close(f1_overlap_squeezed(problem(0.0, 0.7, T64), Complex(0.3, 0.2), Parity::even).value,
              std::exp(0.7 * Complex(0.3, -0.2)), 1e-15));
  CHECK_FALSE(f1_overlap_squeezed(prob, 2.6, Parity::even).valid);
}

TEST_CASE("squeezed overlaps match the truncated inner product") {
  const TruncationSpec t(512, 16);
  for (Complex beta : {Complex(0.04), Complex(0.05, 0.05)}) {
    const auto prob = problem(beta, Complex(1.0, 0.3), t);
    const auto e = f1_eigenstate(prob);
    const auto o = f1_eigenstate(problem(beta, Complex(1.0, 0.3), t, 0.0, 1.0));
    for (Complex mu : {Complex(0.5), Complex(0.3, -0.8), Complex(-1.2, 0.4)}) {
      const auto ve = f1_overlap_squeezed(prob, mu, Parity::even);
      REQUIRE(ve.valid);
      CHECK(close(ve.value, squeezed_oracle(e, mu, 0), 1e-8));
      CHECK(close(f1_overlap_squeezed(prob, mu, Parity::odd).value, squeezed_oracle(o, mu, 1), 1e-8));
    }
  }
}

TEST_CASE("coherent overlaps") {
  const auto prob = problem(0.04, 0.7, T256);
  CHECK(close(f1_overlap_coherent(prob, 0.0, Parity::even).value, 1.0, 1e-15));
  CHECK(f1_overlap_coherent(prob, 0.0, Parity::odd).value == Complex(0.0));
  const Complex alpha(0.8, 0.3);
  const auto e = f1_eigenstate(prob);
  const auto o = f1_eigenstate(problem(0.04, 0.7, T256, 0.0, 1.0));
  CHECK(close(f1_overlap_coherent(prob, alpha, Parity::even).value, coherent_oracle(e, alpha), 1e-8));
  CHECK(close(f1_overlap_coherent(prob, alpha, Parity::odd).value, coherent_oracle(o, alpha), 1e-8));
  CHECK_THROWS_AS(f1_overlap_coherent(problem(0.0, 0.7, T64), alpha, Parity::even), std::domain_error);
}

TEST_CASE("closed forms do not depend on the branch of sqrt(beta)") {
  auto p = problem(Complex(0.05, 0.05), Complex(1.0, 0.3), T64, 1.0, 1.0);
  auto q = p;
  q.root = RootBranch::negated;
  CHECK(std::abs(p.sqrt_beta() + q.sqrt_beta()) < 1e-14);
  for (auto parity : {Parity::even, Parity::odd}) {
    CHECK(close(f1_overlap_squeezed(q, 0.4, parity).value, f1_overlap_squeezed(p, 0.4, parity).value, 1e-12));
    CHECK(close(f1_overlap_coherent(q, Complex(0.5, -1.0), parity).value,
                f1_overlap_coherent(p, Complex(0.5, -1.0), parity).value, 1e-12));
    CHECK(close(f1_wavefunction(q, 0.8, parity), f1_wavefunction(p, 0.8, parity), 1e-12));
  }
  for (int n = 0; n < 30; ++n) CHECK(close(f1_overlap_number(q, n), f1_overlap_number(p, n), 1e-12));
}

TEST_CASE("wavefunctions") {
  const auto prob = problem(0.04, 0.7, TruncationSpec(512, 16));
  CHECK(close(f1_wavefunction(prob, 0.0, Parity::even), 1.0, 1e-15));
  CHECK(f1_wavefunction(prob, 0.0, Parity::odd) == Complex(0.0));
  const auto values = oracle::hermite_position_sum(f1_eigenstate(prob), {0.5, 1.0});
  CHECK(close(f1_wavefunction(prob, 1.0, Parity::even) / f1_wavefunction(prob, 0.5, Parity::even), values[1] / values[0],
              1e-6));
  CHECK_THROWS_AS(f1_wavefunction(problem(-1.0, 0.7, T64), 1.0, Parity::even), std::domain_error);
  CHECK_THROWS_AS(f1_wavefunction(problem(0.0, 0.7, T64), 1.0, Parity::even), std::domain_error);
}
