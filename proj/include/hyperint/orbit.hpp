#pragma once
// Dynamics of the parameter vector v under multiplication by h on the
// fractional classes: each non-integer v_j = -c/D maps to the unique
// v'_j in (-1,0) with v'_j ≡ h·v_j (mod Z); the integers 0 and -1 are fixed.
// The orbit closes up after a period dividing the multiplicative order of
// h modulo D.

#include "hyperint/lattice.hpp"

namespace hyperint {

struct ParameterState {
  long index = 0;
  RatVec v;
  RatVec beta;
  FaceRef sigma;  // smallest face of beta
};

struct FrobeniusOrbit {
  std::vector<ParameterState> states;  // indices 0 .. period-1
  bool face_stable = false;            // all smallest faces agree
  long period() const { return static_cast<long>(states.size()); }
};

// Validates D >= 1, gcd(h, D) = 1, v in [-1,0]^N with D·v integral.
void validate_parameters(const RatVec& v, long D, long h);

// One step of the parameter map.
RatVec frobenius_step(const RatVec& v, long D, long h);

// Multiplicative order of h modulo D (order of the trivial group for D = 1).
long order_mod(long h, long D);

// Full orbit with per-state geometry.
FrobeniusOrbit frobenius_orbit(const GeneratorConfig& cfg, const RatVec& v, long D, long h);

}  // namespace hyperint
