#include "fockeig/fock.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace fockeig {

namespace {

bool finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

template <int Modes>
int max_shift(const TruncationSpec& trunc, Eigen::Index row, Eigen::Index col) {
  const auto r = State<Modes>::levels_of(trunc, row);
  const auto c = State<Modes>::levels_of(trunc, col);
  int shift = 0;
  for (int m = 0; m < Modes; ++m) shift = std::max(shift, std::abs(r[m] - c[m]));
  return shift;
}

template <int Modes>
int total_level(const TruncationSpec& trunc, Eigen::Index flat) {
  int sum = 0;
  for (int n : State<Modes>::levels_of(trunc, flat)) sum += n;
  return sum;
}

SparseComplex from_triplets(Eigen::Index size, const std::vector<Eigen::Triplet<Complex>>& t) {
  SparseComplex m(size, size);
  m.setFromTriplets(t.begin(), t.end());
  return m;
}

}  // namespace

TruncationSpec::TruncationSpec(int dim, int guard) : dim_(dim), guard_(guard) {
  if (dim < 8) throw std::invalid_argument("TruncationSpec: dim must be >= 8, got " + std::to_string(dim));
  if (guard < 0 || guard > dim / 4) {
    throw std::invalid_argument("TruncationSpec: guard must lie in [0, dim/4], got " + std::to_string(guard));
  }
}

int TruncationSpec::interior_end(int bandwidth) const noexcept {
  return std::max(0, dim_ - guard_ * std::max(bandwidth, 1));
}

// ---------------------------------------------------------------- State

template <int Modes>
State<Modes>::State(TruncationSpec trunc) : trunc_(trunc), coeffs_(ComplexVector::Zero(space_size(trunc))) {}

template <int Modes>
State<Modes>::State(TruncationSpec trunc, ComplexVector coeffs) : trunc_(trunc), coeffs_(std::move(coeffs)) {
  if (coeffs_.size() != space_size(trunc_)) {
    throw std::invalid_argument("State: coefficient count does not match the truncation");
  }
  for (Eigen::Index i = 0; i < coeffs_.size(); ++i) {
    if (!finite(coeffs_[i])) throw std::invalid_argument("State: non-finite coefficient");
  }
}

template <int Modes>
State<Modes> State<Modes>::basis(TruncationSpec trunc, Levels<Modes> levels) {
  ComplexVector c = ComplexVector::Zero(space_size(trunc));
  c[flat_index(trunc, levels)] = 1.0;
  return State(trunc, std::move(c));
}

template <int Modes>
Complex State<Modes>::at(Levels<Modes> levels) const {
  return coeffs_[flat_index(trunc_, levels)];
}

template <int Modes>
Eigen::Index State<Modes>::flat_index(const TruncationSpec& trunc, Levels<Modes> levels) {
  for (int n : levels) {
    if (n < 0 || n >= trunc.dim()) throw std::out_of_range("State: level outside the truncation");
  }
  if constexpr (Modes == 1) {
    return levels[0];
  } else {
    return static_cast<Eigen::Index>(levels[0]) * trunc.dim() + levels[1];
  }
}

template <int Modes>
Levels<Modes> State<Modes>::levels_of(const TruncationSpec& trunc, Eigen::Index flat) {
  if constexpr (Modes == 1) {
    return {static_cast<int>(flat)};
  } else {
    return {static_cast<int>(flat / trunc.dim()), static_cast<int>(flat % trunc.dim())};
  }
}

template <int Modes>
Eigen::Index State<Modes>::space_size(const TruncationSpec& trunc) {
  Eigen::Index n = 1;
  for (int m = 0; m < Modes; ++m) n *= trunc.dim();
  return n;
}

template <int Modes>
void State<Modes>::check_same(const State& u, const State& v) {
  if (!(u.trunc_ == v.trunc_)) throw std::invalid_argument("State: truncation mismatch");
}

// ------------------------------------------------------------- Operator

template <int Modes>
Operator<Modes>::Operator(TruncationSpec trunc, SparseComplex entries, int bandwidth)
    : trunc_(trunc), entries_(std::move(entries)), bandwidth_(bandwidth) {
  const Eigen::Index n = State<Modes>::space_size(trunc_);
  if (entries_.rows() != n || entries_.cols() != n) {
    throw std::invalid_argument("Operator: matrix size does not match the truncation");
  }
  entries_.makeCompressed();
  int actual = 0;
  for (Eigen::Index k = 0; k < entries_.outerSize(); ++k) {
    for (SparseComplex::InnerIterator it(entries_, k); it; ++it) {
      if (!finite(it.value())) throw std::invalid_argument("Operator: non-finite entry");
      if (it.value() != Complex{}) actual = std::max(actual, max_shift<Modes>(trunc_, it.row(), it.col()));
    }
  }
  if (actual > bandwidth_) {
    throw std::invalid_argument("Operator: bandwidth hint " + std::to_string(bandwidth_) +
                                " below the nonzero pattern's " + std::to_string(actual));
  }
}

template <int Modes>
Operator<Modes> Operator<Modes>::identity(TruncationSpec trunc) {
  SparseComplex m(State<Modes>::space_size(trunc), State<Modes>::space_size(trunc));
  m.setIdentity();
  return Operator(trunc, std::move(m), 0);
}

template <int Modes>
Operator<Modes> Operator<Modes>::zero(TruncationSpec trunc) {
  const Eigen::Index n = State<Modes>::space_size(trunc);
  return Operator(trunc, SparseComplex(n, n), 0);
}

template <int Modes>
Operator<Modes> Operator<Modes>::adjoint() const {
  return Operator(trunc_, SparseComplex(entries_.adjoint()), bandwidth_);
}

template <int Modes>
bool Operator<Modes>::strictly_raising() const {
  for (Eigen::Index k = 0; k < entries_.outerSize(); ++k) {
    for (SparseComplex::InnerIterator it(entries_, k); it; ++it) {
      if (it.value() == Complex{}) continue;
      if (total_level<Modes>(trunc_, it.row()) <= total_level<Modes>(trunc_, it.col())) return false;
    }
  }
  return true;
}

template <int Modes>
State<Modes> Operator<Modes>::apply(const State<Modes>& v) const {
  if (!(v.trunc() == trunc_)) throw std::invalid_argument("Operator::apply: truncation mismatch");
  return State<Modes>(trunc_, entries_ * v.coeffs());
}

template <int Modes>
void Operator<Modes>::check_same(const Operator& rhs) const {
  if (!(rhs.trunc_ == trunc_)) throw std::invalid_argument("Operator: truncation mismatch");
}

template <int Modes>
Operator<Modes> Operator<Modes>::operator*(const Operator& rhs) const {
  check_same(rhs);
  SparseComplex product = entries_ * rhs.entries_;
  return Operator(trunc_, std::move(product), std::min(bandwidth_ + rhs.bandwidth_, trunc_.dim() - 1));
}

template <int Modes>
Operator<Modes> Operator<Modes>::operator+(const Operator& rhs) const {
  check_same(rhs);
  return Operator(trunc_, SparseComplex(entries_ + rhs.entries_), std::max(bandwidth_, rhs.bandwidth_));
}

template <int Modes>
Operator<Modes> Operator<Modes>::operator-(const Operator& rhs) const {
  check_same(rhs);
  return Operator(trunc_, SparseComplex(entries_ - rhs.entries_), std::max(bandwidth_, rhs.bandwidth_));
}

// ------------------------------------------------------- constructors

MatrixOperator ladder(Ladder kind, TruncationSpec trunc) {
  std::vector<Eigen::Triplet<Complex>> t;
  for (int n = 1; n < trunc.dim(); ++n) {
    const double w = std::sqrt(static_cast<double>(n));
    if (kind == Ladder::lower) {
      t.emplace_back(n - 1, n, w);  // <n-1|a|n> = sqrt(n)
    } else {
      t.emplace_back(n, n - 1, w);  // <n|a^dagger|n-1> = sqrt(n)
    }
  }
  return MatrixOperator(trunc, from_triplets(trunc.dim(), t), 1);
}

TwoModeOperator ladder(Mode mode, Ladder kind, TruncationSpec trunc) {
  return lift(ladder(kind, trunc), mode);
}

MatrixOperator diag_fn(const LevelFn& f, TruncationSpec trunc) {
  std::vector<Eigen::Triplet<Complex>> t;
  for (int n = 0; n < trunc.dim(); ++n) {
    const Complex v = f(n);
    if (!finite(v)) throw std::invalid_argument("diag_fn: f is not finite at n = " + std::to_string(n));
    if (v != Complex{}) t.emplace_back(n, n, v);
  }
  return MatrixOperator(trunc, from_triplets(trunc.dim(), t), 0);
}

TwoModeOperator diag_fn(Mode mode, const LevelFn& f, TruncationSpec trunc) {
  return lift(diag_fn(f, trunc), mode);
}

MatrixOperator number(TruncationSpec trunc) {
  return diag_fn([](int n) { return Complex(n); }, trunc);
}

TwoModeOperator number(Mode mode, TruncationSpec trunc) { return lift(number(trunc), mode); }

TwoModeOperator lift(const MatrixOperator& op, Mode mode) {
  const TruncationSpec& trunc = op.trunc();
  const int d = trunc.dim();
  std::vector<Eigen::Triplet<Complex>> t;
  t.reserve(static_cast<std::size_t>(op.entries().nonZeros()) * d);
  for (Eigen::Index k = 0; k < op.entries().outerSize(); ++k) {
    for (SparseComplex::InnerIterator it(op.entries(), k); it; ++it) {
      for (int other = 0; other < d; ++other) {
        if (mode == Mode::a) {
          t.emplace_back(it.row() * d + other, it.col() * d + other, it.value());
        } else {
          t.emplace_back(other * d + it.row(), other * d + it.col(), it.value());
        }
      }
    }
  }
  return TwoModeOperator(trunc, from_triplets(static_cast<Eigen::Index>(d) * d, t), op.bandwidth());
}

template <int Modes>
Operator<Modes> commutator(const Operator<Modes>& A, const Operator<Modes>& B) {
  return A * B - B * A;
}

template <int Modes>
Operator<Modes> power(const Operator<Modes>& op, int exponent) {
  if (exponent < 0) throw std::invalid_argument("power: negative exponent");
  Operator<Modes> result = Operator<Modes>::identity(op.trunc());
  for (int k = 0; k < exponent; ++k) result = op * result;
  return result;
}

template <int Modes>
State<Modes> apply_exponential(const Operator<Modes>& X, Complex scale, const State<Modes>& v) {
  if (!X.strictly_raising()) throw std::invalid_argument("apply_exponential: operator is not strictly raising");
  ComplexVector sum = v.coeffs();
  ComplexVector term = v.coeffs();
  // Each application raises the lowest occupied total level by at least one.
  const int max_terms = Modes * X.trunc().dim() + 1;
  for (int k = 1; k <= max_terms; ++k) {
    term = X.entries() * term;
    term *= scale / static_cast<double>(k);
    if (term.isZero(0.0)) return State<Modes>(v.trunc(), std::move(sum));
    sum += term;
  }
  throw std::logic_error("apply_exponential: series did not terminate");
}

template <int Modes>
Complex inner(const State<Modes>& u, const State<Modes>& v) {
  if (!(u.trunc() == v.trunc())) throw std::invalid_argument("inner: truncation mismatch");
  return u.coeffs().dot(v.coeffs());  // Eigen conjugates the left argument
}

// -------------------------------------------------------------- sectors

SectorSpec::SectorSpec(Kind kind, int modulus, int offset, std::optional<FamilySide> side,
                       std::optional<int> index)
    : kind_(kind), modulus_(modulus), offset_(offset), side_(side), index_(index) {}

SectorSpec SectorSpec::residue(int modulus, int offset) {
  if (modulus < 1) throw std::invalid_argument("SectorSpec: modulus must be positive");
  if (offset < 0 || offset >= modulus) throw std::invalid_argument("SectorSpec: offset must lie in [0, modulus)");
  return SectorSpec(Kind::single_mode_residue, modulus, offset, std::nullopt, std::nullopt);
}

SectorSpec SectorSpec::family(int modulus, FamilySide side, std::optional<int> index) {
  if (modulus < 1) throw std::invalid_argument("SectorSpec: modulus must be positive");
  const bool odd_base = side == FamilySide::one_p || side == FamilySide::q_one;
  if (odd_base && modulus < 2) throw std::invalid_argument("SectorSpec: |1,p>/|q,1> families need modulus >= 2");
  if (index) {
    const int min_index = side == FamilySide::zero_p ? 0 : side == FamilySide::q_one ? 2 : 1;
    if (*index < min_index) throw std::invalid_argument("SectorSpec: family index below the side's minimum");
  }
  return SectorSpec(Kind::two_mode_family, modulus, odd_base ? 1 : 0, side, index);
}

bool SectorSpec::contains(int n) const {
  if (kind_ != Kind::single_mode_residue) throw std::logic_error("SectorSpec: two-mode sector queried with one level");
  return n >= 0 && n % modulus_ == offset_;
}

bool SectorSpec::contains(int na, int nb) const {
  if (kind_ != Kind::two_mode_family) throw std::logic_error("SectorSpec: single-mode sector queried with two levels");
  const bool a_based = *side_ == FamilySide::zero_p || *side_ == FamilySide::one_p;
  const int base_level = a_based ? na : nb;
  if (base_level % modulus_ != offset_) return false;
  const int diff = a_based ? nb - na : na - nb;
  switch (*side_) {
    case FamilySide::zero_p: return index_ ? diff == *index_ : diff >= 0;
    case FamilySide::one_p: return index_ ? diff == *index_ - 1 : diff >= 0;
    case FamilySide::q_zero: return index_ ? diff == *index_ : diff >= 1;
    case FamilySide::q_one: return index_ ? diff == *index_ - 1 : diff >= 1;
  }
  return false;
}

template <int Modes>
State<Modes> sector_project(const State<Modes>& v, const SectorSpec& sector) {
  if (sector.mode_count() != Modes) throw std::invalid_argument("sector_project: sector/state mode mismatch");
  ComplexVector c = v.coeffs();
  for (Eigen::Index i = 0; i < c.size(); ++i) {
    if (!sector.contains<Modes>(State<Modes>::levels_of(v.trunc(), i))) c[i] = 0.0;
  }
  return State<Modes>(v.trunc(), std::move(c));
}

template <int Modes>
Operator<Modes> sector_projector(const SectorSpec& sector, TruncationSpec trunc) {
  if (sector.mode_count() != Modes) throw std::invalid_argument("sector_projector: sector/space mode mismatch");
  const Eigen::Index n = State<Modes>::space_size(trunc);
  std::vector<Eigen::Triplet<Complex>> t;
  for (Eigen::Index i = 0; i < n; ++i) {
    if (sector.contains<Modes>(State<Modes>::levels_of(trunc, i))) t.emplace_back(i, i, 1.0);
  }
  return Operator<Modes>(trunc, from_triplets(n, t), 0);
}

template <int Modes>
bool in_interior(const TruncationSpec& trunc, Eigen::Index flat, int limit) {
  for (int n : State<Modes>::levels_of(trunc, flat)) {
    if (n >= limit) return false;
  }
  return true;
}

template <int Modes>
double interior_max_entry(const Operator<Modes>& A, int limit, const std::optional<SectorSpec>& sector) {
  const TruncationSpec& trunc = A.trunc();
  auto keep = [&](Eigen::Index flat) {
    if (!in_interior<Modes>(trunc, flat, limit)) return false;
    return !sector || sector->contains<Modes>(State<Modes>::levels_of(trunc, flat));
  };
  double worst = 0.0;
  for (Eigen::Index k = 0; k < A.entries().outerSize(); ++k) {
    for (SparseComplex::InnerIterator it(A.entries(), k); it; ++it) {
      if (keep(it.row()) && keep(it.col())) worst = std::max(worst, std::abs(it.value()));
    }
  }
  return worst;
}

template <int Modes>
double interior_norm(const State<Modes>& v, int limit) {
  double sum = 0.0;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (in_interior<Modes>(v.trunc(), i, limit)) sum += std::norm(v[i]);
  }
  return std::sqrt(sum);
}

#define FOCKEIG_INSTANTIATE(M)                                                                       \
  template class State<M>;                                                                         \
  template class Operator<M>;                                                                      \
  template Operator<M> commutator<M>(const Operator<M>&, const Operator<M>&);                      \
  template Operator<M> power<M>(const Operator<M>&, int);                                          \
  template State<M> apply_exponential<M>(const Operator<M>&, Complex, const State<M>&);            \
  template Complex inner<M>(const State<M>&, const State<M>&);                                     \
  template State<M> sector_project<M>(const State<M>&, const SectorSpec&);                         \
  template Operator<M> sector_projector<M>(const SectorSpec&, TruncationSpec);                     \
  template bool in_interior<M>(const TruncationSpec&, Eigen::Index, int);                          \
  template double interior_max_entry<M>(const Operator<M>&, int, const std::optional<SectorSpec>&); \
  template double interior_norm<M>(const State<M>&, int);

FOCKEIG_INSTANTIATE(1)
FOCKEIG_INSTANTIATE(2)

#undef FOCKEIG_INSTANTIATE

}  // namespace fockeig
