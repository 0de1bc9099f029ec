// oracle.hpp: brute-force ground truth for the closed forms. Nothing here
// uses the conjugate construction; only the Fock primitives.

#pragma once

#include "fockeig/fock.hpp"

#include <vector>

namespace fockeig::oracle {

enum class RecursionKind {
  f1_even,    // levels 2k of a^2 + beta a†^2
  f1_odd,     // levels 2k+1
  f2_family,  // levels (k, k+p) or (k+q, k) of ab + beta a†b†
};

struct RecursionOracle {
  RecursionKind kind;
  Complex beta;
  Complex lambda;
  int length;
  int family_index = 0;  // p or q for f2_family
};

/// c_0 = 1 and the three-term recursion from projecting the eigenvalue
/// equation onto the k-th sector level:
///   up(k) c_{k+1} = lambda c_k - beta down(k) c_{k-1}.
std::vector<Complex> recursion_coefficients(const RecursionOracle& o);

/// Places c_k at level 2k + offset (offset 0 or 1).
FockVector embed_parity(const std::vector<Complex>& c, int offset, TruncationSpec trunc);

/// Places c_k at (k, k+index) for zero_p or (k+index, k) for q_zero; levels
/// beyond the truncation are dropped.
TwoModeFockVector embed_family(const std::vector<Complex>& c, FamilySide side, int index, TruncationSpec trunc);

template <int Modes>
struct PinnedSolution {
  State<Modes> state;
  double residual;  // || (F - lambda) v || over the rows used
  int unknowns;
};

/// Minimizes ||(F - lambda) v|| over vectors supported on the sector's levels
/// below trunc.interior_end(F.bandwidth()), with v = 1 on the sector's lowest
/// level. One equation per sector row except the topmost, so the system is
/// square; it is solved by column-pivoted QR. Throws std::runtime_error on
/// rank deficiency. Two-mode sectors must carry a family index.
template <int Modes>
PinnedSolution<Modes> nullspace_eigenstate(const Operator<Modes>& F, Complex lambda, const SectorSpec& sector);

/// phi_0 .. phi_{count-1} at x by the normalized three-term recurrence.
std::vector<double> hermite_functions(double x, int count);

/// sum_n c_n phi_n(x) at each grid point. The coefficients on the last
/// max(guard, dim/16) levels must lie below 1e-14 of the largest one;
/// otherwise std::runtime_error (the truncation is too small).
std::vector<Complex> hermite_position_sum(const FockVector& coeffs, const std::vector<double>& xgrid);

}  // namespace fockeig::oracle
