#pragma once
// Shared exact-arithmetic foundation: arbitrary-precision integer/rational
// aliases, the library error hierarchy, p-adic valuations with +infinity,
// and small helpers (parsing, formatting, floors, exact powers).

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <vector>

namespace hyperint {

using Int = mpz_class;
using Rat = mpq_class;

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A bracket/Pochhammer symbol was evaluated where it has a zero factor in a
// denominator position (e.g. [z]_l with l>0 and z in {-1,...,-l}).
struct UndefinedSymbol : Error {
  using Error::Error;
};
// A rational that must lie in Z_p (for the requested p) does not.
struct NotPIntegral : Error {
  using Error::Error;
};
// A point is not in the expected shifted lattice beta + ZA.
struct NotMember : Error {
  using Error::Error;
};
// A point is not in the cone where a face was requested.
struct NotInCone : Error {
  using Error::Error;
};
// No weight form exists: the generators do not lie on an affine hyperplane
// w(u) = 1, so the input is not a valid generator configuration.
struct NoWeightForm : Error {
  using Error::Error;
};
// A p-adic computation cannot reach the requested certified precision.
struct PrecisionExhausted : Error {
  using Error::Error;
};
// A truncation-tail estimate is weaker than the precision the caller needs.
struct TailBoundTooWeak : Error {
  using Error::Error;
};
// A series window is too small for the requested comparison.
struct WindowUnderflow : Error {
  using Error::Error;
};
// Malformed instance data (parse errors, inconsistent dimensions, ...).
struct InvalidInstance : Error {
  using Error::Error;
};
// An exact minimization was requested in a dimension it does not support.
struct UnsupportedDimension : Error {
  using Error::Error;
};
// Internal invariant violation (a loop that provably terminates did not, ...).
struct InternalError : Error {
  using Error::Error;
};

// ---------------------------------------------------------------------------
// Rational helpers

// Parses "a/b" or "a" (base 10). Throws InvalidInstance on malformed input or
// zero denominator. Result is canonicalized.
Rat rat_from_string(const std::string& s);

// Canonical "num/den" form with den >= 1, e.g. "-1/2", "0/1", "3/1".
std::string rat_to_string(const Rat& q);

Int floor_rat(const Rat& q);
Int ceil_rat(const Rat& q);
bool is_integer(const Rat& q);

Int pow_int(const Int& base, unsigned long e);

// Sum of base-p digits of n (n >= 0).
Int digit_sum(const Int& n, unsigned long p);

// ---------------------------------------------------------------------------
// p-adic valuation of rationals, with +infinity for 0.

struct Valuation {
  bool infinite = false;
  Rat value;  // meaningful iff !infinite

  static Valuation inf() { return Valuation{true, Rat(0)}; }
  static Valuation fin(const Rat& v) { return Valuation{false, v}; }

  bool operator==(const Valuation& o) const {
    if (infinite != o.infinite) return false;
    return infinite || value == o.value;
  }
  bool operator<(const Valuation& o) const {
    if (infinite) return false;
    if (o.infinite) return true;
    return value < o.value;
  }
  bool operator>=(const Valuation& o) const { return !(*this < o); }
  bool operator>=(const Rat& r) const { return infinite || value >= r; }
  bool operator<(const Rat& r) const { return !infinite && value < r; }

  Valuation operator+(const Valuation& o) const {
    if (infinite || o.infinite) return inf();
    return fin(value + o.value);
  }

  std::string to_string() const { return infinite ? "inf" : rat_to_string(value); }
};

inline Valuation min(const Valuation& a, const Valuation& b) { return a < b ? a : b; }

// Exact p-adic valuation ord_p(q); ord_p(0) = +infinity.
Valuation ord_p(const Rat& q, unsigned long p);
Valuation ord_p(const Int& n, unsigned long p);

// true iff q has no p in its (reduced) denominator.
bool is_p_integral(const Rat& q, unsigned long p);

}  // namespace hyperint
