#pragma once
// Truncated arithmetic in the ramified extension Q_p(pi), pi^(p-1) = -p,
// with certified per-coefficient precision. An element is
//
//     pi^shift * sum_{k=0}^{p-2} (c_k + O(p^{prec_k})) * pi^k,
//
// i.e. residues c_k known modulo p^{prec_k} plus a global exact power of pi.
// The shift makes division by p exact (1/p = -pi^-(p-1)) and lets the same
// type carry the negative-valuation intermediates that scaled brackets and
// split coefficients produce. Error balls stay confined to their residue
// class mod (p-1), so distinct slots never alias and valuations of nonzero
// digits are exact.
//
// For p = 2 the extension is trivial (pi = -2) and there is a single slot.

#include <string>
#include <vector>

#include "hyperint/base.hpp"

namespace hyperint {

struct PadicContext {
  unsigned long p = 2;
  long prec = 0;  // working precision, in p-adic digits, of embedded rationals
  long ram() const { return static_cast<long>(p) - 1; }
  const Int& ppow(long e) const;  // p^e for e >= 0

 private:
  mutable std::vector<Int> pow_cache_;
};

PadicContext make_context(unsigned long p, long prec);

class PadicElement {
 public:
  PadicElement() = default;

  static PadicElement zero(const PadicContext& ctx);
  // Exact embedding of a rational: q = ±p^e·(unit) becomes a single-slot
  // element with shift e·(p-1), known to the full working precision.
  static PadicElement from_rational(const PadicContext& ctx, const Rat& q);
  static PadicElement pi_power(const PadicContext& ctx, long e);  // pi^e exactly

  bool valid() const { return ctx_ != nullptr; }
  const PadicContext& context() const;
  long shift() const { return shift_; }

  PadicElement operator-() const;
  PadicElement operator+(const PadicElement& o) const;
  PadicElement operator-(const PadicElement& o) const;
  PadicElement operator*(const PadicElement& o) const;
  PadicElement mul_rational(const Rat& q) const;
  PadicElement mul_pi_power(long e) const;  // exact: shift += e

  // Multiplicative inverse. Needs a certified leading digit (exact order);
  // throws PrecisionExhausted on an indeterminate ball.
  PadicElement inverse() const;

  struct Ord {
    long bound = 0;    // ord_pi(value) >= bound, in pi-units
    bool exact = false;  // bound is the exact order (a nonzero digit attains it)
  };
  Ord pi_ord() const;

  // Ball radius: the value is determined modulo pi^(this).
  long pi_precision() const;
  bool is_zero_ball() const;  // no certified nonzero digit

  // Forget everything at or above pi^new_precision (sound weakening).
  PadicElement clamped(long new_precision) const;

  // Re-express with a different global pi-shift. Requires
  // new_shift <= pi_ord().bound (digits below would be lost).
  PadicElement rebased(long new_shift) const;

  // Treat stored residues as exact to `pdigits` p-adic digits. This *forges*
  // precision and is only sound inside algorithms that re-certify their
  // result afterwards (Newton loops).
  PadicElement assume_precision(long pdigits) const;

  std::string to_string() const;

 private:
  const PadicContext* ctx_ = nullptr;
  long shift_ = 0;
  std::vector<Int> c_;       // size p-1, reduced: 0 <= c_k < p^prec_k
  std::vector<long> prec_;   // size p-1, all >= 0
  void reduce();
  friend PadicElement raw_element(const PadicContext&, long, std::vector<Int>,
                                  std::vector<long>);
};

// ord_pi(a - b) lower bound: how many pi-digits of agreement are certified.
long certified_agreement(const PadicElement& a, const PadicElement& b);

}  // namespace hyperint
