#pragma once
// Formal solution series: windowed expansion of
//   F_u = sum_{l in E(u)} [v]_l Λ^{v+l},
// exact integrality verification at a prime, the contiguity identity under
// d/dΛ_k, annihilation by box and Euler operators, and the certification
// bundle (orbit + per-state weight maximality + empirical prime checks).

#include <map>

#include "hyperint/bracket.hpp"
#include "hyperint/orbit.hpp"

namespace hyperint {

struct SeriesTruncation {
  RatVec v;
  RatVec u;
  long B = 0;
  std::map<IntVec, Rat> terms;  // l -> [v]_l (never zero on E(u))
};

// Expands F_u over E(u) with |l|_inf <= B. Throws NotMember if u ∉ beta+ZA.
SeriesTruncation expand_F(const GeneratorConfig& cfg, const RatVec& v, const RatVec& u, long B);

struct IntegralityOffender {
  IntVec l;
  Rat coefficient;
  Rat ord;
};
struct IntegralityReport {
  unsigned long p = 2;
  long term_count = 0;
  Valuation min_ord = Valuation::inf();
  bool integral = true;
  std::vector<IntegralityOffender> offenders;
};
// Exact coefficient valuations; requires every v_j to be p-integral.
IntegralityReport verify_integrality(const SeriesTruncation& s, unsigned long p);

// d/dΛ_k F_u versus F_{u-a_k} on the window |l|_inf <= B-1. When -a_k lies
// outside the face of beta (and u is in M), the derivative must vanish
// identically; that case is recorded and enforced.
struct ContiguityReport {
  bool pass = false;
  bool face_member = false;  // is -a_k on the smallest face of beta?
  long compared = 0;
  long mismatches = 0;
  bool derivative_zero = false;  // derivative map empty
};
ContiguityReport contiguity_check(const GeneratorConfig& cfg, const RatVec& v, const RatVec& u,
                                  long k, long B);

// Box operator of a relation l_rel (A·l_rel = 0): the two iterated-derivative
// images of F_u agree on the window |l|_inf <= B - |l_rel|_inf.
struct BoxReport {
  bool pass = false;
  long compared = 0;
};
BoxReport box_annihilation_check(const GeneratorConfig& cfg, const RatVec& v, const RatVec& u,
                                 const IntVec& l_rel, long B);

// sum_j a_ij (v_j + l_j) = u_i for every stored term.
bool euler_check(const GeneratorConfig& cfg, const SeriesTruncation& s);

// ---------------------------------------------------------------------------
struct PrimeEmpirical {
  unsigned long p = 2;
  long state_index = 0;
  IntegralityReport report;
};
struct Certification {
  FrobeniusOrbit orbit;
  std::vector<WeightMaximalityReport> conditions;  // per orbit state
  bool certified = false;
  std::vector<PrimeEmpirical> empirical;  // F_{beta^(i)} at each requested prime
};
// The certificate: face-stable orbit and weight maximality at every state.
// Empirical integrality of each state's expansion is recorded for the
// requested primes; a certified instance contradicting the prediction at a
// prime ≡ h (mod D) raises InternalError.
Certification certify(const GeneratorConfig& cfg, const RatVec& v, long D, long h,
                      const std::vector<unsigned long>& primes, long B);

}  // namespace hyperint
