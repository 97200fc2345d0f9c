#pragma once
// Classical hypergeometric data: integer linear forms C_1..C_n in m variables
// with unit column sums, and offsets theta_1..theta_n in [0,1]. The
// generating-vector embedding [e_1 .. e_n | columns of C] turns such a datum
// into a generator configuration whose solution series has the same
// coefficients up to sign; the floor-sum step function
//   rho(Theta; x) = sum_j floor(1 - theta_j + C_j(x))
// decides weight maximality through an independent combinatorial route
// (nonnegative on [0,1)^m exactly when the lattice criterion holds).

#include "hyperint/series.hpp"

namespace hyperint {

struct ClassicalInstance {
  long n = 0;    // number of forms / offsets
  long m = 0;    // number of variables
  IntMat C;      // n x m; row j holds the coefficients of C_j
  RatVec theta;  // n offsets in [0,1]
};

// Structural validation: positive dimensions, matching sizes, no zero row,
// every column with >= 2 nonzero entries and column sum 1, theta_j in [0,1],
// rows with theta_j = 1 all nonnegative and rows with theta_j = 0 all
// nonpositive. Throws InvalidInstance naming the violated rule.
void validate_classical(const ClassicalInstance& inst);

// Pads every column with fewer than two nonzero entries by appending the row
// pair (theta = 1, form +x_k) and (theta = 0, form -x_k). The pair multiplies
// the series coefficients by s_k!/s_k! up to the sign (-1)^{s_k}, so
// coefficient magnitudes -- hence p-integrality -- are unchanged.
ClassicalInstance normalize_classical(const ClassicalInstance& inst);

// The embedding: generators [e_1 .. e_n | columns of C] with
// v = (-theta_1, .., -theta_n, 0, .., 0) and beta = (-theta_1, .., -theta_n).
// Validates the instance, builds the configuration, and checks that beta is
// interior to the negative cone (guaranteed by the invariants; a failure
// raises InternalError).
struct ClassicalEmbedding {
  GeneratorConfig cfg;
  RatVec v;
  RatVec beta;
};
ClassicalEmbedding classical_to_aset(const ClassicalInstance& inst);

// Applies the fractional-part dynamics x -> -(-x)' to every offset,
// i.e. theta_j -> (h * theta_j mod 1 scaled to [0,1]) with 0 and 1 fixed.
RatVec theta_step(const RatVec& theta, long D, long h);

// rho(Theta; x) for x in [0,1)^m, exact.
Int rho_eval(const IntMat& C, const RatVec& theta, const RatVec& x);

enum class RhoMode { ExactCell, Grid };

struct StepFunctionReport {
  Int min_value;
  RatVec witness;  // point of [0,1)^m attaining min_value (exact-cell mode);
                   // best grid point in grid mode
  RhoMode method = RhoMode::ExactCell;
  long candidates = 0;  // evaluations performed
};

// Minimum of rho over the half-open unit box.
//   ExactCell (m <= 2): the jump loci C_j(x) = z + theta_j - 1 (z integer)
//     cut the box into cells on which rho is constant; every cell value is
//     realized at a vertex of the arrangement perturbed into an adjacent
//     angular sector, with the perturbed floors evaluated symbolically
//     (floor(q + eps c) = floor(q) - [q integer and c < 0]). The reported
//     witness is an exact interior point of the minimizing cell.
//   Grid (any m): evaluation on the grid with denominator
//     D * (1 + max_j sum_k |c_jk|); a heuristic, flagged in the report.
// Throws UnsupportedDimension for ExactCell with m > 2.
StepFunctionReport rho_min(const IntMat& C, const RatVec& theta, RhoMode mode, long D);

// Closed-form criterion for the two-variable family with forms
// (x1+x2, x2-x1, x1-x2): nonnegativity of rho on the box holds exactly when
// theta_2 + theta_3 <= 1, or both theta_1 + theta_2 <= 1 and
// theta_1 + theta_3 <= 1. Requires 0 < theta_i < 1.
bool horn_criterion(const RatVec& theta);

// The two-variable family's shifted series for u = beta + utilde: terms are
// keyed by the full relation vector l in Z^5 (so they align with expand_F
// keys), but the stored coefficient is the classical one,
//   poch(theta_1, s1+s2-u~1) poch(theta_2, s2-s1-u~2) poch(theta_3, s1-s2-u~3)
//     / (s1! s2!)        with (s1, s2) = (l_4, l_5),
// which differs from the expansion coefficient [v]_l by the reflection sign
// (-1)^{l_1+l_2+l_3}. Window: all terms with |l|_inf <= B. Requires
// 0 < theta_i < 1 and u in the parameter stratum (throws NotMember).
SeriesTruncation shifted_horn_series(const RatVec& theta, const IntVec& utilde, long B);

// Horn coefficient matrix: rows (1,1), (-1,1), (1,-1).
IntMat horn_forms();

}  // namespace hyperint
