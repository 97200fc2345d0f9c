#pragma once
// Exact dense linear algebra at desk scale: rational Gaussian elimination
// (rank / solve / kernel / column space) and integer column-echelon reduction
// with a tracked unimodular transform (integer kernels, column-lattice bases,
// integer linear solving). No floating point, no pivoting heuristics.

#include <optional>
#include <vector>

#include "hyperint/base.hpp"

namespace hyperint {

using RatVec = std::vector<Rat>;
using RatMat = std::vector<std::vector<Rat>>;  // row-major
using IntVec = std::vector<Int>;
using IntMat = std::vector<std::vector<Int>>;  // row-major

Rat dot(const RatVec& a, const RatVec& b);
Rat dot(const RatVec& a, const IntVec& b);

long rat_rank(RatMat A);

// Solves A x = b over Q (any consistent solution); nullopt if inconsistent.
std::optional<RatVec> rat_solve(const RatMat& A, const RatVec& b);

// Basis of {x in Q^N : A x = 0}.
std::vector<RatVec> rat_kernel(const RatMat& A);

// Basis of the column space of A, as vectors in Q^rows.
std::vector<RatVec> rat_column_space(const RatMat& A);

// Scales a nonzero rational direction to the primitive integer vector with
// the same direction (content 1, orientation preserved).
IntVec primitive_direction(const RatVec& v);

// Column-echelon form over Z: H = A * U with U unimodular; the first `rank`
// columns of H are nonzero with strictly increasing pivot rows, and each
// pivot row is zero to the right of its pivot. Remaining columns of H are 0.
struct ColEchelon {
  IntMat H;
  IntMat U;
  std::vector<long> pivot_rows;  // size == rank
  long rank = 0;
};
ColEchelon column_echelon(const IntMat& A);

// Basis of {x in Z^N : A x = 0} (columns of U above the zero columns of H).
std::vector<IntVec> integer_kernel(const IntMat& A);

// Basis of the column lattice Z·cols(A) (the nonzero echelon columns).
std::vector<IntVec> column_lattice_basis(const IntMat& A);

// One solution of A x = b over Z, or nullopt if none exists.
std::optional<IntVec> integer_solve(const IntMat& A, const IntVec& b);

}  // namespace hyperint
