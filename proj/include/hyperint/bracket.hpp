#pragma once
// Bracket and Pochhammer symbols over exact rationals, their p-adic
// valuations (naive product form and the digit-run formula), and the
// pi-scaled logarithmic lower bound used to control scaled coefficients.
//
// Conventions:
//   [z]_0 = 1
//   [z]_l = 1/((z+1)(z+2)...(z+l))          for l > 0   (needs z not in {-1..-l})
//   [z]_l = z(z-1)...(z+l+1)                for l < 0
//   (z)_0 = 1
//   (z)_l = z(z+1)...(z+l-1)                for l > 0
//   (z)_l = 1/((z-1)(z-2)...(z+l))          for l < 0   (needs z not in {1..-l})
// and the reflection identity [z]_l = (-1)^l (-z)_{-l}.

#include <vector>

#include "hyperint/base.hpp"

namespace hyperint {

bool bracket_defined(const Rat& z, long l);
bool pochhammer_defined(const Rat& z, long l);

// Throws UndefinedSymbol outside the domain.
Rat bracket(const Rat& z, long l);
Rat pochhammer(const Rat& z, long l);

// prod_j [v_j]_{l_j}; throws UndefinedSymbol if any factor is undefined.
Rat bracket_vector(const std::vector<Rat>& v, const std::vector<long>& l);

// ---------------------------------------------------------------------------
// Base-p digit stream of a p-integral rational x in Z_p: x = sum d_i p^i.
class DigitStream {
 public:
  DigitStream(const Rat& x, unsigned long p);
  unsigned long digit(std::size_t i);

 private:
  void extend();
  unsigned long p_;
  Int num_;            // running numerator: x_i = num_/den_, x_{i+1} = (x_i - d_i)/p
  Int den_;
  unsigned long den_inv_;  // den_^{-1} mod p
  std::vector<unsigned long> digits_;
};

// ord_p([z]_l) computed exactly, for p-integral z:
//   l = 0: 0.
//   l < 0: sum of factor valuations of the finite product (via the
//          reflection identity; both sides have the same factors up to sign).
//          This may be +infinity (the product can vanish, e.g. [3]_{-5}).
//   l > 0: the digit formula -(l - s_p(l))/(p-1) - R, where R counts, over
//          base-p positions m with l_m > sigma_m, the runs 1 + #{r > m with
//          l_r = sigma_r continuing from m+1} against the digits sigma of
//          -(z+1), with l zero-padded above its top digit.
// Throws NotPIntegral / UndefinedSymbol on bad input.
Valuation bracket_ord_digits(const Rat& z, long l, unsigned long p);

// Lower bound apparatus for pi-scaled brackets: for every p-integral z and
// l != 0 (bracket defined), ord_p([z]_l) + l/(p-1) >= -log_p(p*|l|).
// The bound object keeps y = p*|l| and decides "x >= -log_p(y)" by the exact
// integer comparison p^(-x) <= y (so no floating point is involved).
struct PiLogBound {
  unsigned long p = 2;
  Int y;  // = p * |l|, and 1 for l = 0 (trivial bound)
  bool admits(const Valuation& x) const;
};

PiLogBound pi_scaled_bracket_bound(long l, unsigned long p);

// Convenience: checks ord + l/(p-1) against the bound above.
bool pi_scaled_bracket_floor_ok(const Valuation& ord_bracket, long l, unsigned long p);

}  // namespace hyperint
