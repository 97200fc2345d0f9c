#pragma once
// Splitting-function tower in Q_p(pi) and numerical verification of the
// twisted Frobenius operator relations on one-variable kernel series.
//
// The tower holds truncations of:
//   theta(t)      = AH(pi0 t), AH the Artin-Hasse exponential,
//   theta_hat(t)  = prod_j theta(t^{p^j}),
//   theta_hat1(t) = theta_hat(t) / exp(pi0 t),
//   sigma(t)      = exp(pi0 t - pi0 t^p),
// where pi0 is the root of sum_i t^{p^i}/p^i with pi0 = pi + O(pi^2).
//
// The operator alpha = (mult by sigma) . (t -> t^p) maps the kernel series
// xi_v = sum_l [v]_l (pi0 t)^{v+l} to a scalar multiple of xi_{v'}, where v'
// is the Frobenius image of v; alpha_hat = (mult by theta) . (t -> t^p) does
// the same on the smoothed series xi_hat_v = xi_v * theta_hat1.  The scalar
// is H(-v)/[v']_{pv-v'} up to an exact power of pi0, with H built from the
// sigma coefficients.  check_operator_relation verifies these identities
// coefficient-by-coefficient with certified precision.

#include <string>
#include <vector>

#include "hyperint/bracket.hpp"
#include "hyperint/padic.hpp"

namespace hyperint {

// Dense power series over the ramified extension; index = exponent of t.
using PSeries = std::vector<PadicElement>;

PSeries ps_mul(const PSeries& a, const PSeries& b, long degree);
PSeries ps_substitute_tp(const PSeries& a, unsigned long p, long degree);

struct SplittingTower {
  const PadicContext* ctx = nullptr;
  long degree = 0;
  PadicElement pi0;
  long pi0_certified = 0;  // pi-precision of the root certificate
  std::vector<Rat> artin_hasse;  // exact rational AH coefficients, 0..degree
  PSeries theta;
  PSeries theta_hat;
  PSeries theta_hat1;
  PSeries sigma;
  PSeries hatU;  // theta_hat1 t-coefficient i, times pi0^{-i}
  std::vector<PadicElement> pi0_pow;      // pi0^i, 0..degree
  std::vector<PadicElement> inv_pi0_pow;  // pi0^{-i}, 0..degree

  const PadicElement& sigma_at(long i) const;  // 0 outside [0, degree] is an error
  const PadicElement& theta_at(long i) const;
};

// Root of the splitting series, certified a posteriori: the returned element
// satisfies ord(root - pi0) >= pi0_certified pi-units and root = pi + O(pi^2).
PadicElement compute_pi0(const PadicContext& ctx);

SplittingTower build_tower(const PadicContext& ctx, long degree);

// H(z) = sum_{l>=0} (-1)^l (z)_l sigma_{pl} pi0^{-l}, continuous on Z_p with
// unit values.  min_tail (pi-units) is the certified floor requested for the
// dropped tail; throws TailBoundTooWeak if the tower degree cannot reach it.
struct HValue {
  PadicElement value;
  long terms = 0;
  Rat tail_floor;  // certified ord of the dropped tail, p-units
};
HValue eval_H(const SplittingTower& tw, const Rat& z, long min_tail);

// Frobenius image: the unique v' in [-1,0] with p*v - v' in {0,...,-(p-1)}.
Rat frobenius_image_scalar(const Rat& v, unsigned long p);
long frobenius_delta(const Rat& v, unsigned long p);  // p*v - v'

// Smoothed kernel coefficient g(v,l) = sum_{i>=0} [v]_{l-i} * hatU_i.
// Its order equals ord [v]_l exactly.
struct GValue {
  PadicElement value;
  long terms = 0;
  Rat tail_floor;  // p-units
};
GValue eval_g(const SplittingTower& tw, const Rat& v, long l, long min_tail);

enum class OperatorVariant { Sigma, Theta };

struct SampleCheck {
  long m = 0;
  long agreement = 0;  // certified pi-units of agreement with the constant K
  bool exact_mismatch = false;
};

struct OperatorRelationCheck {
  OperatorVariant variant = OperatorVariant::Sigma;
  Rat v, v_prime;
  long delta = 0;
  long required_agreement = 0;  // pi-units
  long samples_passed = 0;
  std::vector<SampleCheck> samples;
  bool kernel_recurrence_ok = true;  // exact bracket recurrence (sigma variant)
  bool intertwining_ok = true;       // monomial intertwining (theta variant)
  bool pass = false;
};

OperatorRelationCheck check_operator_relation(const SplittingTower& tw, const Rat& v,
                                              OperatorVariant variant,
                                              long required_agreement,
                                              long min_samples);

struct SelftestCheck {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct SelftestOptions {
  unsigned long p = 2;
  long precision = 12;      // requested certified precision, p-adic digits
  std::vector<Rat> v_list;  // empty = default panel {0,-1} + {-c/D, D<=5}
  long min_samples = 10;
};

struct SelftestReport {
  unsigned long p = 2;
  long precision = 0;
  long working_precision = 0;
  long degree = 0;
  long target_agreement = 0;  // pi-units each relation is certified to
  Rat h_tail_slack;           // worst margin of H tail floors over target, p-units
  std::vector<SelftestCheck> checks;
  bool pass = false;
};

SelftestReport run_padic_selftest(const SelftestOptions& opt);

}  // namespace hyperint
