// fock.hpp: truncated single- and two-mode Fock spaces, states, ladder and
// diagonal operators, invariant-sector descriptors.

#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include <array>
#include <complex>
#include <functional>
#include <optional>
#include <stdexcept>
#include <vector>

namespace fockeig {

using Complex = std::complex<double>;
using ComplexVector = Eigen::VectorXcd;
using ComplexMatrix = Eigen::MatrixXcd;
using SparseComplex = Eigen::SparseMatrix<Complex>;

inline constexpr Complex kI{0.0, 1.0};

/// Retained levels 0..dim-1 on every mode, plus a boundary band of `guard`
/// levels (scaled by operator bandwidth) that residual checks skip.
class TruncationSpec {
 public:
  TruncationSpec(int dim, int guard);

  int dim() const noexcept { return dim_; }
  int guard() const noexcept { return guard_; }

  /// One past the last interior level for an operator moving at most
  /// `bandwidth` levels per mode: dim - guard * bandwidth.
  int interior_end(int bandwidth = 1) const noexcept;

  bool operator==(const TruncationSpec&) const = default;

 private:
  int dim_;
  int guard_;
};

enum class Mode { a, b };
enum class Ladder { lower, raise };

/// Closed-form value together with whether it lies inside the region where
/// the underlying series argument holds (or was evaluated to convergence).
struct OverlapValue {
  Complex value;
  bool valid;
};

template <int Modes>
using Levels = std::array<int, Modes>;

/// Coefficient array over the truncated number basis. Two-mode states are
/// stored row-major: flat index = n_a * dim + n_b.
template <int Modes>
class State {
  static_assert(Modes == 1 || Modes == 2);

 public:
  explicit State(TruncationSpec trunc);
  State(TruncationSpec trunc, ComplexVector coeffs);

  static State basis(TruncationSpec trunc, Levels<Modes> levels);

  const TruncationSpec& trunc() const noexcept { return trunc_; }
  const ComplexVector& coeffs() const noexcept { return coeffs_; }
  Eigen::Index size() const noexcept { return coeffs_.size(); }

  Complex operator[](Eigen::Index flat) const { return coeffs_[flat]; }
  Complex at(Levels<Modes> levels) const;

  double norm() const { return coeffs_.norm(); }

  static Eigen::Index flat_index(const TruncationSpec& trunc, Levels<Modes> levels);
  static Levels<Modes> levels_of(const TruncationSpec& trunc, Eigen::Index flat);
  static Eigen::Index space_size(const TruncationSpec& trunc);

  friend State operator+(const State& u, const State& v) {
    check_same(u, v);
    return State(u.trunc_, u.coeffs_ + v.coeffs_);
  }
  friend State operator-(const State& u, const State& v) {
    check_same(u, v);
    return State(u.trunc_, u.coeffs_ - v.coeffs_);
  }
  friend State operator*(Complex s, const State& v) { return State(v.trunc_, s * v.coeffs_); }

 private:
  static void check_same(const State& u, const State& v);

  TruncationSpec trunc_;
  ComplexVector coeffs_;
};

using FockVector = State<1>;
using TwoModeFockVector = State<2>;

/// Truncated operator matrix. The bandwidth is an upper bound on how many
/// levels any nonzero entry moves a single mode (a has 1, a^2 has 2).
template <int Modes>
class Operator {
 public:
  Operator(TruncationSpec trunc, SparseComplex entries, int bandwidth);

  static Operator identity(TruncationSpec trunc);
  static Operator zero(TruncationSpec trunc);

  const TruncationSpec& trunc() const noexcept { return trunc_; }
  const SparseComplex& entries() const noexcept { return entries_; }
  int bandwidth() const noexcept { return bandwidth_; }

  Complex element(Eigen::Index row, Eigen::Index col) const { return entries_.coeff(row, col); }
  ComplexMatrix dense() const { return ComplexMatrix(entries_); }

  /// Conjugate transpose.
  Operator adjoint() const;

  /// True when every nonzero entry strictly increases the total level.
  bool strictly_raising() const;

  State<Modes> apply(const State<Modes>& v) const;

  Operator operator*(const Operator& rhs) const;
  Operator operator+(const Operator& rhs) const;
  Operator operator-(const Operator& rhs) const;
  friend Operator operator*(Complex s, const Operator& op) {
    return Operator(op.trunc_, SparseComplex(s * op.entries_), op.bandwidth_);
  }
  friend State<Modes> operator*(const Operator& op, const State<Modes>& v) { return op.apply(v); }

 private:
  void check_same(const Operator& rhs) const;

  TruncationSpec trunc_;
  SparseComplex entries_;
  int bandwidth_;
};

using MatrixOperator = Operator<1>;
using TwoModeOperator = Operator<2>;

using LevelFn = std::function<Complex(int)>;

/// a (lower) or a^dagger (raise) on a single mode.
MatrixOperator ladder(Ladder kind, TruncationSpec trunc);
/// a, a^dagger, b or b^dagger on the two-mode space (Kronecker with identity).
TwoModeOperator ladder(Mode mode, Ladder kind, TruncationSpec trunc);

/// Diagonal f(n); rejects f non-finite at any retained level.
MatrixOperator diag_fn(const LevelFn& f, TruncationSpec trunc);
/// Diagonal f(n_mode) on the two-mode space.
TwoModeOperator diag_fn(Mode mode, const LevelFn& f, TruncationSpec trunc);

MatrixOperator number(TruncationSpec trunc);
TwoModeOperator number(Mode mode, TruncationSpec trunc);

/// Single-mode operator acting on `mode` of the two-mode space.
TwoModeOperator lift(const MatrixOperator& op, Mode mode);

template <int Modes>
Operator<Modes> commutator(const Operator<Modes>& A, const Operator<Modes>& B);

template <int Modes>
Operator<Modes> power(const Operator<Modes>& op, int exponent);

/// exp(scale * X) v, summed term by term. X must be strictly raising, so the
/// series terminates on the truncated space.
template <int Modes>
State<Modes> apply_exponential(const Operator<Modes>& X, Complex scale, const State<Modes>& v);

template <int Modes>
Complex inner(const State<Modes>& u, const State<Modes>& v);

enum class FamilySide {
  zero_p,  // built on |0,p>, p >= 0
  q_zero,  // built on |q,0>, q >= 1
  one_p,   // built on |1,p>, p >= 1
  q_one,   // built on |q,1>, q >= 2
};

/// Invariant subspace descriptor. Single-mode: {n : n = offset mod modulus}.
/// Two-mode: the states built on a family's base by raising both modes in
/// steps of `modulus`; without an index, the union over all indices of a side.
class SectorSpec {
 public:
  enum class Kind { single_mode_residue, two_mode_family };

  static SectorSpec residue(int modulus, int offset);
  static SectorSpec family(int modulus, FamilySide side, std::optional<int> index = std::nullopt);

  Kind kind() const noexcept { return kind_; }
  int modulus() const noexcept { return modulus_; }
  int offset() const noexcept { return offset_; }
  std::optional<FamilySide> side() const noexcept { return side_; }
  std::optional<int> index() const noexcept { return index_; }
  int mode_count() const noexcept { return kind_ == Kind::single_mode_residue ? 1 : 2; }

  bool contains(int n) const;
  bool contains(int na, int nb) const;

  template <int Modes>
  bool contains(Levels<Modes> levels) const {
    if constexpr (Modes == 1) {
      return contains(levels[0]);
    } else {
      return contains(levels[0], levels[1]);
    }
  }

 private:
  SectorSpec(Kind kind, int modulus, int offset, std::optional<FamilySide> side,
             std::optional<int> index);

  Kind kind_;
  int modulus_;
  int offset_;
  std::optional<FamilySide> side_;
  std::optional<int> index_;
};

template <int Modes>
State<Modes> sector_project(const State<Modes>& v, const SectorSpec& sector);

/// Diagonal 0/1 projector onto the sector.
template <int Modes>
Operator<Modes> sector_projector(const SectorSpec& sector, TruncationSpec trunc);

/// True when every mode level of the flat index is below `limit`.
template <int Modes>
bool in_interior(const TruncationSpec& trunc, Eigen::Index flat, int limit);

/// Largest |A_ij| over rows and columns that are interior (all levels below
/// `limit`) and, if given, inside the sector.
template <int Modes>
double interior_max_entry(const Operator<Modes>& A, int limit,
                          const std::optional<SectorSpec>& sector = std::nullopt);

/// Euclidean norm of the coefficients at interior levels.
template <int Modes>
double interior_norm(const State<Modes>& v, int limit);

}  // namespace fockeig
