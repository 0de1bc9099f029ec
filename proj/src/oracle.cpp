#include "fockeig/oracle.hpp"

#include <Eigen/QR>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace fockeig::oracle {

std::vector<Complex> recursion_coefficients(const RecursionOracle& o) {
  if (o.length < 1) throw std::invalid_argument("recursion_coefficients: length must be positive");
  if (o.kind == RecursionKind::f2_family && o.family_index < 0) {
    throw std::invalid_argument("recursion_coefficients: family index must be non-negative");
  }
  auto up = [&](int k) -> double {
    switch (o.kind) {
      case RecursionKind::f1_even: return std::sqrt((2.0 * k + 1) * (2.0 * k + 2));
      case RecursionKind::f1_odd: return std::sqrt((2.0 * k + 2) * (2.0 * k + 3));
      case RecursionKind::f2_family: return std::sqrt((k + 1.0) * (k + o.family_index + 1.0));
    }
    return 0.0;
  };
  auto down = [&](int k) -> double {
    switch (o.kind) {
      case RecursionKind::f1_even: return std::sqrt((2.0 * k - 1) * (2.0 * k));
      case RecursionKind::f1_odd: return std::sqrt((2.0 * k) * (2.0 * k + 1));
      case RecursionKind::f2_family: return std::sqrt(static_cast<double>(k) * (k + o.family_index));
    }
    return 0.0;
  };

  std::vector<Complex> c(static_cast<std::size_t>(o.length));
  c[0] = 1.0;
  for (int k = 0; k + 1 < o.length; ++k) {
    Complex rhs = o.lambda * c[k];
    if (k > 0) rhs -= o.beta * down(k) * c[k - 1];
    c[k + 1] = rhs / up(k);
  }
  return c;
}

FockVector embed_parity(const std::vector<Complex>& c, int offset, TruncationSpec trunc) {
  if (offset != 0 && offset != 1) throw std::invalid_argument("embed_parity: offset must be 0 or 1");
  ComplexVector v = ComplexVector::Zero(trunc.dim());
  for (std::size_t k = 0; k < c.size(); ++k) {
    const int n = 2 * static_cast<int>(k) + offset;
    if (n < trunc.dim()) v[n] = c[k];
  }
  return FockVector(trunc, std::move(v));
}

TwoModeFockVector embed_family(const std::vector<Complex>& c, FamilySide side, int index, TruncationSpec trunc) {
  if (side != FamilySide::zero_p && side != FamilySide::q_zero) {
    throw std::invalid_argument("embed_family: side must be zero_p or q_zero");
  }
  TwoModeFockVector out(trunc);
  ComplexVector v = ComplexVector::Zero(out.size());
  for (std::size_t k = 0; k < c.size(); ++k) {
    const int lo = static_cast<int>(k);
    const int hi = lo + index;
    if (hi >= trunc.dim()) break;
    const Levels<2> lv = side == FamilySide::zero_p ? Levels<2>{lo, hi} : Levels<2>{hi, lo};
    v[TwoModeFockVector::flat_index(trunc, lv)] = c[k];
  }
  return TwoModeFockVector(trunc, std::move(v));
}

template <int Modes>
PinnedSolution<Modes> nullspace_eigenstate(const Operator<Modes>& F, Complex lambda, const SectorSpec& sector) {
  if (sector.mode_count() != Modes) throw std::invalid_argument("nullspace_eigenstate: sector/operator mode mismatch");
  if constexpr (Modes == 2) {
    if (!sector.index()) throw std::invalid_argument("nullspace_eigenstate: two-mode sector needs a family index");
  }
  const TruncationSpec& trunc = F.trunc();
  const int limit = trunc.interior_end(F.bandwidth());

  std::vector<Eigen::Index> levels;  // sector members below the limit, ascending
  for (Eigen::Index i = 0; i < State<Modes>::space_size(trunc); ++i) {
    if (in_interior<Modes>(trunc, i, limit) && sector.contains<Modes>(State<Modes>::levels_of(trunc, i))) {
      levels.push_back(i);
    }
  }
  if (levels.size() < 2) throw std::runtime_error("nullspace_eigenstate: sector has fewer than two interior levels");

  const int unknowns = static_cast<int>(levels.size()) - 1;
  auto M = [&](Eigen::Index r, Eigen::Index c) { return F.element(r, c) - (r == c ? lambda : Complex{}); };

  // Rows: sector levels 0..K-1. Columns: levels 1..K; level 0 is pinned to 1.
  ComplexMatrix A(unknowns, unknowns);
  ComplexVector rhs(unknowns);
  for (int r = 0; r < unknowns; ++r) {
    rhs[r] = -M(levels[r], levels[0]);
    for (int c = 0; c < unknowns; ++c) A(r, c) = M(levels[r], levels[c + 1]);
  }
  Eigen::ColPivHouseholderQR<ComplexMatrix> qr(A);
  if (qr.rank() < unknowns) {
    throw std::runtime_error("nullspace_eigenstate: rank " + std::to_string(qr.rank()) + " < " +
                             std::to_string(unknowns) + "; the pinned system is not resolvable");
  }
  const ComplexVector x = qr.solve(rhs);

  ComplexVector v = ComplexVector::Zero(State<Modes>::space_size(trunc));
  v[levels[0]] = 1.0;
  for (int c = 0; c < unknowns; ++c) v[levels[c + 1]] = x[c];
  const double residual = (A * x - rhs).norm();
  return {State<Modes>(trunc, std::move(v)), residual, unknowns};
}

template PinnedSolution<1> nullspace_eigenstate<1>(const MatrixOperator&, Complex, const SectorSpec&);
template PinnedSolution<2> nullspace_eigenstate<2>(const TwoModeOperator&, Complex, const SectorSpec&);

std::vector<double> hermite_functions(double x, int count) {
  if (count < 0) throw std::invalid_argument("hermite_functions: negative count");
  std::vector<double> phi(static_cast<std::size_t>(count));
  if (count == 0) return phi;
  phi[0] = std::pow(std::numbers::pi, -0.25) * std::exp(-0.5 * x * x);
  if (count > 1) phi[1] = std::sqrt(2.0) * x * phi[0];
  for (int n = 1; n + 1 < count; ++n) {
    phi[n + 1] = std::sqrt(2.0 / (n + 1)) * x * phi[n] - std::sqrt(static_cast<double>(n) / (n + 1)) * phi[n - 1];
  }
  return phi;
}

std::vector<Complex> hermite_position_sum(const FockVector& coeffs, const std::vector<double>& xgrid) {
  const int dim = coeffs.trunc().dim();
  const int tail = std::max(coeffs.trunc().guard(), std::max(1, dim / 16));
  double largest = 0.0, tail_largest = 0.0;
  for (int n = 0; n < dim; ++n) {
    largest = std::max(largest, std::abs(coeffs[n]));
    if (n >= dim - tail) tail_largest = std::max(tail_largest, std::abs(coeffs[n]));
  }
  if (tail_largest > 1e-14 * largest) {
    throw std::runtime_error("hermite_position_sum: coefficients have not decayed by the truncation edge (tail/max = " +
                             std::to_string(tail_largest / largest) + ")");
  }
  std::vector<Complex> out;
  out.reserve(xgrid.size());
  for (double x : xgrid) {
    const auto phi = hermite_functions(x, dim);
    Complex sum = 0.0;
    for (int n = 0; n < dim; ++n) sum += coeffs[n] * phi[static_cast<std::size_t>(n)];
    out.push_back(sum);
  }
  return out;
}

}  // namespace fockeig::oracle
