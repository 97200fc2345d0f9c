#pragma once
// Geometry of a generator configuration A = (a_1 .. a_N) in Z^n lying on a
// rational hyperplane w(u) = 1:
//   * the pointed cone C(A) = R_{>=0} A, its facet forms and face lattice,
//   * smallest-face queries for points of the negative cone -C(A),
//   * the shifted lattice beta + ZA and its membership witnesses,
//   * windowed enumeration of the sign-constrained relation sets E(u),
//   * the weight-maximality decision by exhaustive slice enumeration.

#include <optional>
#include <vector>

#include "hyperint/linalg.hpp"

namespace hyperint {

// Weight form w with w·a_j = 1 for every column; nullopt if none exists.
std::optional<RatVec> solve_weight_form(const IntMat& cols);

// Closed face of C(A), recorded by the set of generator indices it contains
// and a supporting form (sum of the active facet forms; the zero form for
// the whole cone). Points of -C(A) get the negated face.
struct FaceRef {
  std::vector<long> generators;  // sorted
  RatVec supporting_form;
};
bool same_face(const FaceRef& a, const FaceRef& b);

struct GeneratorConfig {
  long n = 0;  // ambient dimension
  long N = 0;  // number of generators
  IntMat cols;                        // n x N, generator a_j = column j
  RatVec w;                           // weight form
  long rank = 0;                      // dim span(A)
  std::vector<IntVec> facet_forms;    // primitive, >= 0 on C(A), integer entries
  std::vector<std::vector<long>> facet_zero_sets;  // generators on each facet
  std::vector<IntVec> lattice_basis;    // echelon basis of the column lattice ZA
  std::vector<long> lattice_pivot_rows;
  std::vector<IntVec> relation_basis;   // echelon basis of {l in Z^N : A l = 0}
  std::vector<long> relation_pivot_rows;
};

// Validates (distinct nonzero columns, a weight form exists) and precomputes
// the geometry. Throws InvalidInstance / NoWeightForm.
GeneratorConfig make_config(const IntMat& cols);

IntVec column(const IntMat& m, long j);
RatVec config_beta(const GeneratorConfig& cfg, const RatVec& v);  // A·v
Rat weight(const GeneratorConfig& cfg, const RatVec& u);          // w·u

bool in_negative_cone(const GeneratorConfig& cfg, const RatVec& u);

// Minimal closed face of -C(A) containing u (as the corresponding face of
// C(A)); throws NotInCone when u is outside -C(A).
FaceRef smallest_face(const GeneratorConfig& cfg, const RatVec& u);

// If u - beta is an integer vector in the column lattice ZA, returns m with
// A m = u - beta; otherwise nullopt.
std::optional<IntVec> shifted_lattice_witness(const GeneratorConfig& cfg, const RatVec& beta,
                                              const RatVec& u);

// Membership of u in (beta + ZA) ∩ relint(-sigma), where sigma is the
// smallest face of beta (so beta itself always passes).
struct MPointTest {
  bool member = false;
  std::optional<IntVec> lattice_witness;
  bool in_relative_interior = false;
};
MPointTest test_M_membership(const GeneratorConfig& cfg, const RatVec& v, const RatVec& u);

// All l in Z^N with beta + A l = u, |l|_inf <= B, and the sign constraints
// (l_j <= 0 where v_j = -1, l_j >= 0 where v_j = 0), sorted lexicographically.
// Throws NotMember when u is not in beta + ZA at all.
std::vector<IntVec> enumerate_E(const GeneratorConfig& cfg, const RatVec& v, const RatVec& u,
                                long B);

// ---------------------------------------------------------------------------
// Weight maximality: no point of (beta + ZA) ∩ relint(-sigma) has weight
// larger than w(beta). Decided exactly by enumerating, for each integer
// k = 1..floor(-w(beta)), the lattice points of the bounded slice
// {u in -C(A) : w(u) = w(beta) + k} and testing face membership.
struct SliceInfo {
  long k = 0;
  Rat target_weight;
  long lattice_points = 0;  // points of beta + ZA in the slice
  long interior_hits = 0;   // those also in relint(-sigma)
};
struct WeightCounterexample {
  RatVec u;
  Rat weight_val;
  IntVec witness;
};
struct WeightMaximalityReport {
  bool maximal = true;
  Rat beta_weight;
  FaceRef sigma;
  std::vector<SliceInfo> slices;
  std::optional<WeightCounterexample> counterexample;  // first one in scan order
};
WeightMaximalityReport check_weight_maximality(const GeneratorConfig& cfg, const RatVec& v);

}  // namespace hyperint
