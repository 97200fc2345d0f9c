#include "hyperint/orbit.hpp"

#include <numeric>

namespace hyperint {

void validate_parameters(const RatVec& v, long D, long h) {
  if (D < 1) throw InvalidInstance("denominator D must be >= 1");
  if (h < 1) throw InvalidInstance("multiplier h must be >= 1");
  if (D > 1 && std::gcd(((h % D) + D) % D, D) != 1)
    throw InvalidInstance("h must be coprime to D");
  for (const Rat& vj : v) {
    if (vj < Rat(-1) || vj > Rat(0)) throw InvalidInstance("v must lie in [-1, 0]^N");
    Rat scaled = vj * Rat(D);
    scaled.canonicalize();
    if (scaled.get_den() != 1) throw InvalidInstance("D is not a common denominator of v");
  }
}

RatVec frobenius_step(const RatVec& v, long D, long h) {
  validate_parameters(v, D, h);
  RatVec out(v.size());
  for (std::size_t j = 0; j < v.size(); ++j) {
    Rat vj = v[j];
    vj.canonicalize();  // exact equality below requires reduced form
    if (vj == Rat(0) || vj == Rat(-1)) {
      out[j] = vj;  // integer classes are fixed
      continue;
    }
    Rat scaled = vj * Rat(-D);  // c_j in {1..D-1}
    scaled.canonicalize();
    Int c = scaled.get_num();
    Int r = (Int(h) * c) % Int(D);  // nonzero since gcd(h,D)=1 and D∤c
    if (r == 0) throw InternalError("fractional class mapped to an integer");
    out[j] = Rat(-r) / Rat(D);
    out[j].canonicalize();
  }
  return out;
}

long order_mod(long h, long D) {
  if (D < 1) throw InvalidInstance("denominator D must be >= 1");
  if (D == 1) return 1;
  long r = ((h % D) + D) % D;
  if (std::gcd(r, D) != 1) throw InvalidInstance("h must be coprime to D");
  long acc = 1;
  for (long a = 1; a <= D; ++a) {
    acc = (acc * r) % D;
    if (acc == 1) return a;
  }
  throw InternalError("order_mod: no order found below D");
}

FrobeniusOrbit frobenius_orbit(const GeneratorConfig& cfg, const RatVec& v, long D, long h) {
  validate_parameters(v, D, h);
  if (static_cast<long>(v.size()) != cfg.N)
    throw InvalidInstance("v length does not match the generator count");
  FrobeniusOrbit orbit;
  long cap = order_mod(h, D);
  RatVec start = v;
  for (Rat& c : start) c.canonicalize();  // closure test below uses exact equality
  RatVec cur = start;
  for (long i = 0; i < cap; ++i) {
    ParameterState st;
    st.index = i;
    st.v = cur;
    st.beta = config_beta(cfg, cur);
    st.sigma = smallest_face(cfg, st.beta);
    orbit.states.push_back(std::move(st));
    cur = frobenius_step(cur, D, h);
    if (cur == start) break;
  }
  if (cur != start) throw InternalError("orbit did not return within the order of h");
  orbit.face_stable = true;
  for (const auto& st : orbit.states)
    orbit.face_stable = orbit.face_stable && same_face(st.sigma, orbit.states[0].sigma);
  return orbit;
}

}  // namespace hyperint
