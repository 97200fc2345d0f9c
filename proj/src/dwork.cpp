#include "hyperint/dwork.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <sstream>

namespace hyperint {

namespace {

long fdiv_long(long a, long b) {
  long q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}
long cdiv_long(long a, long b) { return -fdiv_long(-a, b); }

// floor(x) for rational x, as long.
long floor_rat_long(const Rat& x) {
  Int f;
  mpz_fdiv_q(f.get_mpz_t(), x.get_num().get_mpz_t(), x.get_den().get_mpz_t());
  return static_cast<long>(mpz_get_si(f.get_mpz_t()));
}

// Conservative decision of  margin >= log_p(p*x)  for x >= 1.
// Uses log_p(p*x) <= bitlen(p*x)/floor(log2 p) and errs on the "false" side.
bool exceeds_log(const Rat& margin, unsigned long p, const Int& x) {
  if (margin < 0) return false;
  Int px = Int(static_cast<long>(p)) * x;
  unsigned long bits = mpz_sizeinbase(px.get_mpz_t(), 2);
  unsigned long flog = mpz_sizeinbase(Int(static_cast<long>(p)).get_mpz_t(), 2) - 1;
  Rat lhs = margin * static_cast<long>(flog);
  Rat rhs = Rat(static_cast<long>(bits));
  return lhs >= rhs;
}

Rat rat_digit_sum(long n, unsigned long p) {
  if (n < 0) throw InternalError("rat_digit_sum: negative argument");
  return Rat(digit_sum(Int(n), p));
}

Int factorial(long n) {
  Int f;
  mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(n));
  return f;
}

PadicElement el_pow(const PadicElement& x, unsigned long e) {
  PadicElement acc = PadicElement::from_rational(x.context(), Rat(1));
  PadicElement base = x;
  unsigned long n = e;
  while (n > 0) {
    if (n & 1) acc = acc * base;
    base = base * base;
    n >>= 1;
  }
  return acc;
}

// ord_p of a nonzero rational, as a long (always an integer).
long ord_p_long(const Rat& q, unsigned long p) {
  Valuation v = ord_p(q, p);
  if (v.infinite) throw InternalError("ord_p_long: zero argument");
  return static_cast<long>(mpz_get_si(v.value.get_num().get_mpz_t()));
}

}  // namespace

const PadicElement& SplittingTower::sigma_at(long i) const {
  if (i < 0 || i > degree) throw InternalError("sigma_at: index outside truncation");
  return sigma[static_cast<size_t>(i)];
}
const PadicElement& SplittingTower::theta_at(long i) const {
  if (i < 0 || i > degree) throw InternalError("theta_at: index outside truncation");
  return theta[static_cast<size_t>(i)];
}

PSeries ps_mul(const PSeries& a, const PSeries& b, long degree) {
  if (a.empty() || b.empty()) throw InternalError("ps_mul: empty series");
  const PadicContext& ctx = a[0].context();
  PSeries out(static_cast<size_t>(degree) + 1, PadicElement::zero(ctx));
  for (size_t i = 0; i < a.size() && static_cast<long>(i) <= degree; ++i) {
    for (size_t j = 0; j < b.size() && static_cast<long>(i + j) <= degree; ++j) {
      out[i + j] = out[i + j] + a[i] * b[j];
    }
  }
  return out;
}

PSeries ps_substitute_tp(const PSeries& a, unsigned long p, long degree) {
  if (a.empty()) throw InternalError("ps_substitute_tp: empty series");
  const PadicContext& ctx = a[0].context();
  PSeries out(static_cast<size_t>(degree) + 1, PadicElement::zero(ctx));
  for (size_t i = 0; i < a.size(); ++i) {
    unsigned long k = i * p;
    if (static_cast<long>(k) > degree) break;
    out[k] = a[i];
  }
  return out;
}

PadicElement compute_pi0(const PadicContext& ctx) {
  const unsigned long p = ctx.p;
  const long ram = ctx.ram();
  // Truncation K of the defining series: dropped terms t^{p^i}/p^i at the
  // root (ord 1/(p-1)) must sit above the working precision.
  long K = 0;
  {
    Rat need(ctx.prec + 1);
    Int pk(static_cast<long>(p));  // p^{K+1}
    pk *= static_cast<long>(p);
    // ord(pi0^{p^{K+1}}/p^{K+1}) = p^{K+1}/(p-1) - (K+1)  (p-units)
    while (Rat(pk, Int(ram)) - Rat(K + 2) < need) {
      ++K;
      pk *= static_cast<long>(p);
      if (K > 64) throw InternalError("compute_pi0: truncation runaway");
    }
    ++K;  // K now = last retained index
  }

  const long target = ram * ctx.prec;  // residual goal, pi-units
  PadicElement y = PadicElement::pi_power(ctx, 1).assume_precision(ctx.prec);
  PadicElement one = PadicElement::from_rational(ctx, Rat(1)).assume_precision(ctx.prec);
  PadicElement residual = y;  // placeholder
  bool converged = false;
  for (int iter = 0; iter < 64; ++iter) {
    // g(y) = sum_{i=0..K} y^{p^i}/p^i and g'(y) = sum_{i=0..K} y^{p^i - 1}.
    PadicElement yinv = y.inverse().assume_precision(ctx.prec);
    PadicElement g = PadicElement::zero(ctx);
    PadicElement gp = PadicElement::zero(ctx);
    PadicElement pw = y;  // y^{p^i}
    Rat inv_pi(1);
    for (long i = 0; i <= K; ++i) {
      g = g + pw.mul_rational(inv_pi);
      gp = gp + pw * yinv;
      inv_pi /= static_cast<long>(p);
      if (i < K) pw = el_pow(pw, p).assume_precision(ctx.prec);
    }
    residual = g.assume_precision(ctx.prec);
    if (residual.pi_ord().bound >= target) {
      converged = true;
      break;
    }
    // Re-anchor at the root's order so slot digits stay units and the
    // forged per-slot floors keep a stable absolute meaning.
    y = (y - g * gp.inverse()).rebased(1).assume_precision(ctx.prec);
  }
  if (!converged) throw PrecisionExhausted("compute_pi0: Newton did not certify the root");
  PadicElement::Ord o = y.pi_ord();
  if (!o.exact || o.bound != 1) throw InternalError("compute_pi0: root order is not 1");
  return y.clamped(target);
}

SplittingTower build_tower(const PadicContext& ctx, long degree) {
  if (degree < static_cast<long>(4 * ctx.p)) degree = static_cast<long>(4 * ctx.p);
  SplittingTower tw;
  tw.ctx = &ctx;
  tw.degree = degree;
  tw.pi0 = compute_pi0(ctx);
  tw.pi0_certified = tw.pi0.pi_precision();

  const size_t n = static_cast<size_t>(degree) + 1;
  tw.pi0_pow.resize(n);
  tw.inv_pi0_pow.resize(n);
  tw.pi0_pow[0] = PadicElement::from_rational(ctx, Rat(1));
  tw.inv_pi0_pow[0] = tw.pi0_pow[0];
  PadicElement inv = tw.pi0.inverse();
  for (size_t i = 1; i < n; ++i) {
    tw.pi0_pow[i] = tw.pi0_pow[i - 1] * tw.pi0;
    tw.inv_pi0_pow[i] = tw.inv_pi0_pow[i - 1] * inv;
  }

  // Artin-Hasse coefficients: n*AH_n = sum_{p^i <= n} AH_{n - p^i}.
  tw.artin_hasse.assign(n, Rat(0));
  tw.artin_hasse[0] = 1;
  for (long m = 1; m <= degree; ++m) {
    Rat s(0);
    for (unsigned long q = 1; q <= static_cast<unsigned long>(m); q *= ctx.p) {
      s += tw.artin_hasse[static_cast<size_t>(m) - q];
      if (q > static_cast<unsigned long>(m) / ctx.p) break;  // avoid overflow
    }
    tw.artin_hasse[static_cast<size_t>(m)] = s / m;
    if (!is_p_integral(tw.artin_hasse[static_cast<size_t>(m)], ctx.p)) {
      throw InternalError("build_tower: Artin-Hasse coefficient not p-integral");
    }
  }

  tw.theta.resize(n);
  for (size_t i = 0; i < n; ++i) {
    tw.theta[i] = tw.pi0_pow[i].mul_rational(tw.artin_hasse[i]);
  }

  tw.theta_hat = tw.theta;
  for (unsigned long q = ctx.p; q <= static_cast<unsigned long>(degree); q *= ctx.p) {
    tw.theta_hat = ps_mul(tw.theta_hat, ps_substitute_tp(tw.theta, q, degree), degree);
    if (q > static_cast<unsigned long>(degree) / ctx.p) break;
  }

  PSeries exp_neg(n), exp_pos(n);
  {
    Rat invfac(1);
    for (size_t i = 0; i < n; ++i) {
      if (i > 0) invfac /= static_cast<long>(i);
      Rat c = (i % 2 == 0) ? invfac : -invfac;
      exp_neg[i] = tw.pi0_pow[i].mul_rational(c);
      exp_pos[i] = tw.pi0_pow[i].mul_rational(invfac);
    }
  }
  tw.theta_hat1 = ps_mul(tw.theta_hat, exp_neg, degree);
  tw.sigma = ps_mul(exp_pos, ps_substitute_tp(exp_neg, ctx.p, degree), degree);

  tw.hatU.resize(n);
  for (size_t i = 0; i < n; ++i) tw.hatU[i] = tw.theta_hat1[i] * tw.inv_pi0_pow[i];
  return tw;
}

namespace {

// Floor for the H series term at index l >= 1 (p-units):
//   ord((z)_l sigma_{pl} pi0^{-l}) >= l(p-1)/p - s_l/(p-1).
Rat h_term_floor(unsigned long p, long l) {
  long ram = static_cast<long>(p) - 1;
  return Rat(l * ram, static_cast<long>(p)) - rat_digit_sum(l, p) / ram;
}

// Floor for the verifier's lower-tail term at l < 0 (p-units):
//   ord([v]_l pi0^l mult_{m-pl}) >= -s_{-l}/(p-1) + mult_floor(m-pl),
// with mult_floor(i) = i(p-1)/p^2 for sigma and i/(p-1) for theta.
Rat lower_term_floor(unsigned long p, OperatorVariant variant, long m, long l) {
  long ram = static_cast<long>(p) - 1;
  long i = m - static_cast<long>(p) * l;
  Rat mult = (variant == OperatorVariant::Sigma)
                 ? Rat(i * ram, static_cast<long>(p * p))
                 : Rat(i, ram);
  return mult - rat_digit_sum(-l, p) / ram;
}

// Linear (log-free) part of the same floor, used for envelope termination.
Rat lower_term_linear(unsigned long p, OperatorVariant variant, long m, long l) {
  long ram = static_cast<long>(p) - 1;
  long i = m - static_cast<long>(p) * l;
  return (variant == OperatorVariant::Sigma) ? Rat(i * ram, static_cast<long>(p * p))
                                             : Rat(i, ram);
}

// Certified floor (p-units) of the dropped sum over l < lmin, or nullopt-like
// throw if the scan runs away.
Rat lower_tail_floor(unsigned long p, OperatorVariant variant, long m, long lmin) {
  bool have = false;
  Rat acc(0);
  long scanned = 0;
  for (long l = lmin - 1;; --l) {
    Rat t = lower_term_floor(p, variant, m, l);
    if (!have || t < acc) {
      acc = t;
      have = true;
    }
    if (-l >= 3 && exceeds_log(lower_term_linear(p, variant, m, l) - acc, p, Int(-l))) {
      break;  // all deeper terms exceed the accumulated minimum
    }
    if (++scanned > 200000) throw InternalError("lower_tail_floor: scan runaway");
  }
  return acc;
}

}  // namespace

HValue eval_H(const SplittingTower& tw, const Rat& z, long min_tail) {
  const PadicContext& ctx = *tw.ctx;
  const unsigned long p = ctx.p;
  const long ram = ctx.ram();
  if (!is_p_integral(z, p)) throw InvalidInstance("eval_H: argument is not p-integral");

  Rat needed = Rat(min_tail, ram);  // p-units
  long L = 0;         // last index that must be summed
  Rat tail_min(0);
  bool tail_have = false;
  long scanned = 0;
  for (long l = 1;; ++l) {
    Rat t = h_term_floor(p, l);
    if (t < needed) {
      L = l;
      tail_have = false;  // restart the tail minimum beyond the new cutoff
    } else {
      if (!tail_have || t < tail_min) {
        tail_min = t;
        tail_have = true;
      }
      if (l >= 3 &&
          exceeds_log(Rat(l * ram, static_cast<long>(p)) - std::min(tail_min, needed), p,
                      Int(l))) {
        break;
      }
    }
    if (static_cast<long>(p) * (l + 1) > tw.degree && t < needed) {
      throw TailBoundTooWeak("eval_H: tower degree too small for the requested tail");
    }
    if (++scanned > 200000) throw InternalError("eval_H: scan runaway");
  }
  if (static_cast<long>(p) * L > tw.degree) {
    throw TailBoundTooWeak("eval_H: tower degree too small for the requested tail");
  }
  Rat tail_floor = tail_have ? std::min(tail_min, needed) : needed;

  PadicElement value = PadicElement::zero(ctx);
  Rat poch(1);  // (z)_l, updated incrementally
  for (long l = 0; l <= L; ++l) {
    if (l > 0) poch *= (z + (l - 1));
    if (poch == 0) break;  // series collapses for nonpositive integer z
    PadicElement term =
        tw.sigma_at(static_cast<long>(p) * l).mul_rational((l % 2 == 0) ? poch : -poch) *
        tw.inv_pi0_pow[static_cast<size_t>(l)];
    value = value + term;
  }
  HValue out;
  out.terms = L + 1;
  out.tail_floor = tail_floor;
  out.value = value.clamped(floor_rat_long(tail_floor * ram));
  return out;
}

Rat frobenius_image_scalar(const Rat& v, unsigned long p) {
  if (v < -1 || v > 0) throw InvalidInstance("frobenius image: v outside [-1,0]");
  if (v == 0 || v == -1) return v;
  Int D = v.get_den();
  if (mpz_divisible_ui_p(D.get_mpz_t(), p)) {
    throw InvalidInstance("frobenius image: denominator divisible by p");
  }
  Int c = -v.get_num();  // v = -c/D with gcd(c,D)=1, 0<c<D
  Int h = Int(static_cast<long>(p)) % D;
  Int r = (h * c) % D;
  if (r == 0) throw InternalError("frobenius image: residue collapsed");
  Rat out(-r, D);
  out.canonicalize();
  return out;
}

long frobenius_delta(const Rat& v, unsigned long p) {
  Rat vp = frobenius_image_scalar(v, p);
  Rat d = Rat(static_cast<long>(p)) * v - vp;
  if (!is_integer(d)) throw InternalError("frobenius delta: not an integer");
  long delta = static_cast<long>(mpz_get_si(d.get_num().get_mpz_t()));
  if (delta > 0 || delta <= -static_cast<long>(p)) {
    throw InternalError("frobenius delta: outside {0,...,-(p-1)}");
  }
  return delta;
}

GValue eval_g(const SplittingTower& tw, const Rat& v, long l, long min_tail) {
  const PadicContext& ctx = *tw.ctx;
  const unsigned long p = ctx.p;
  const long ram = ctx.ram();
  Rat needed = Rat(min_tail, ram);

  // Term floor for i > max(l,0):  ord([v]_{l-i} hatU_i) >=
  //   i(p-1)/p - l/(p-1) + (s_i - s_{i-l})/(p-1)   (p-units).
  auto term_floor = [&](long i) -> Rat {
    return Rat(i * ram, static_cast<long>(p)) - Rat(l, ram) +
           (rat_digit_sum(i, p) - rat_digit_sum(i - l, p)) / ram;
  };
  auto term_linear = [&](long i) -> Rat {
    return Rat(i * ram, static_cast<long>(p)) - Rat(l, ram);
  };

  long I = std::max(l, 0L);  // always include the head
  Rat tail_min(0);
  bool tail_have = false;
  long scanned = 0;
  for (long i = std::max(l, 0L) + 1;; ++i) {
    Rat t = term_floor(i);
    if (t < needed) {
      I = i;
      tail_have = false;
    } else {
      if (!tail_have || t < tail_min) {
        tail_min = t;
        tail_have = true;
      }
      if (i - l >= 3 && exceeds_log(term_linear(i) - std::min(tail_min, needed), p, Int(i - l))) {
        break;
      }
    }
    if (i > tw.degree && t < needed) {
      throw TailBoundTooWeak("eval_g: tower degree too small for the requested tail");
    }
    if (++scanned > 200000) throw InternalError("eval_g: scan runaway");
  }
  if (I > tw.degree) throw TailBoundTooWeak("eval_g: tower degree too small");
  Rat tail_floor = tail_have ? std::min(tail_min, needed) : needed;

  PadicElement value = PadicElement::zero(ctx);
  for (long i = 0; i <= I; ++i) {
    if (!bracket_defined(v, l - i)) {
      throw InvalidInstance("eval_g: bracket symbol undefined for this (v,l)");
    }
    Rat b = bracket(v, l - i);
    if (b == 0) continue;
    value = value + tw.hatU[static_cast<size_t>(i)].mul_rational(b);
  }
  GValue out;
  out.terms = I + 1;
  out.tail_floor = tail_floor;
  out.value = value.clamped(floor_rat_long(tail_floor * ram));
  return out;
}

namespace {

// Sparse Laurent series used by the monomial intertwining check.
using Laurent = std::map<long, PadicElement>;

Laurent laurent_mul(const Laurent& f, const PSeries& s) {
  Laurent out;
  for (const auto& [l, c] : f) {
    for (size_t i = 0; i < s.size(); ++i) {
      long k = l + static_cast<long>(i);
      PadicElement term = c * s[i];
      auto it = out.find(k);
      if (it == out.end()) {
        out.emplace(k, term);
      } else {
        it->second = it->second + term;
      }
    }
  }
  return out;
}

// alpha-type operator: input graded t^{v+l}, output graded t^{v'+m} with
// m = delta + p*l + (index into mult).
Laurent laurent_twist(const Laurent& f, const PSeries& mult, unsigned long p, long delta) {
  Laurent out;
  for (const auto& [l, c] : f) {
    for (size_t i = 0; i < mult.size(); ++i) {
      long m = delta + static_cast<long>(p) * l + static_cast<long>(i);
      PadicElement term = c * mult[i];
      auto it = out.find(m);
      if (it == out.end()) {
        out.emplace(m, term);
      } else {
        it->second = it->second + term;
      }
    }
  }
  return out;
}

// Restriction to exponents <= cap (the gamma projection in the l-grading).
Laurent laurent_clamp(const Laurent& f, long cap) {
  Laurent out;
  for (const auto& [l, c] : f) {
    if (l <= cap) out.emplace(l, c);
  }
  return out;
}

bool check_intertwining(const SplittingTower& tw, const Rat& v, long required) {
  const PadicContext& ctx = *tw.ctx;
  const unsigned long p = ctx.p;
  long delta = frobenius_delta(v, p);
  bool neg = (v == -1);
  // Working window: with series sliced to W+1 coefficients, both pipelines
  // are truncation-free for output exponents m <= delta + p*l0 + W (every
  // dropped product lands beyond the window or hits a negative index).
  long W = std::min<long>(tw.degree, static_cast<long>(4 * p) + 16);
  auto slice = [&](const PSeries& s) {
    return PSeries(s.begin(), s.begin() + static_cast<size_t>(W) + 1);
  };
  PSeries th1 = slice(tw.theta_hat1), th = slice(tw.theta), sg = slice(tw.sigma);

  std::vector<long> monomials = neg ? std::vector<long>{-1, 0}
                                    : std::vector<long>{-1, 0, 1};
  for (long l0 : monomials) {
    Laurent f;
    f.emplace(l0, PadicElement::from_rational(ctx, Rat(1)));
    // Left pipeline: alpha_hat ( [gamma] theta_hat1 * f ).
    Laurent a = laurent_mul(f, th1);
    if (neg) a = laurent_clamp(a, 0);
    Laurent lhs = laurent_twist(a, th, p, delta);
    if (neg) lhs = laurent_clamp(lhs, 0);
    // Right pipeline: [gamma] theta_hat1 * ( alpha f ).
    Laurent c = laurent_twist(f, sg, p, delta);
    if (neg) c = laurent_clamp(c, 0);
    Laurent rhs = laurent_mul(c, th1);
    if (neg) rhs = laurent_clamp(rhs, 0);

    long m_lo = delta + static_cast<long>(p) * l0;
    long m_hi = m_lo + W;
    if (neg) m_hi = std::min(m_hi, 0L);
    PadicElement zero = PadicElement::zero(ctx);
    for (long m = m_lo; m <= m_hi; ++m) {
      auto itl = lhs.find(m);
      auto itr = rhs.find(m);
      const PadicElement& a1 = (itl == lhs.end()) ? zero : itl->second;
      const PadicElement& a2 = (itr == rhs.end()) ? zero : itr->second;
      if (certified_agreement(a1, a2) < required) return false;
    }
  }
  return true;
}

bool check_kernel_recurrence(const Rat& v) {
  // [v]_{l-1} = (v+l)[v]_l wherever both symbols are defined.
  for (long l = -6; l <= 6; ++l) {
    if (!bracket_defined(v, l) || !bracket_defined(v, l - 1)) continue;
    if (bracket(v, l - 1) != (v + l) * bracket(v, l)) return false;
  }
  return true;
}

}  // namespace

OperatorRelationCheck check_operator_relation(const SplittingTower& tw, const Rat& v,
                                              OperatorVariant variant,
                                              long required_agreement,
                                              long min_samples) {
  const PadicContext& ctx = *tw.ctx;
  const unsigned long p = ctx.p;
  const long ram = ctx.ram();
  if (v < -1 || v > 0 || !is_p_integral(v, p)) {
    throw InvalidInstance("operator relation: v must be p-integral in [-1,0]");
  }

  OperatorRelationCheck out;
  out.variant = variant;
  out.v = v;
  out.v_prime = frobenius_image_scalar(v, p);
  out.delta = frobenius_delta(v, p);
  out.required_agreement = required_agreement;

  // Proportionality constant K = H(-v)/[v']_delta.
  long h_tail = required_agreement + 4 * ram + 24;
  HValue hv = eval_H(tw, -v, h_tail);
  if (!bracket_defined(out.v_prime, out.delta)) {
    throw InternalError("operator relation: [v']_delta undefined");
  }
  PadicElement K = hv.value *
                   PadicElement::from_rational(ctx, bracket(out.v_prime, out.delta)).inverse();

  std::vector<long> ms;
  if (v == -1) {
    for (long i = 0; i < min_samples; ++i) ms.push_back(static_cast<long>(p) - 1 - i);
  } else {
    for (long i = 0; i < min_samples; ++i) ms.push_back(i);
  }

  auto coeff = [&](const Rat& vv, long l) {
    if (variant == OperatorVariant::Sigma) {
      return PadicElement::from_rational(ctx, bracket(vv, l));
    }
    long tail = required_agreement + ram * std::max(0L, -l) + 4 * ram + 24;
    return eval_g(tw, vv, l, tail).value;
  };

  for (long m : ms) {
    SampleCheck sc;
    sc.m = m;
    long lmax = fdiv_long(m, static_cast<long>(p));
    long lmin;
    long clamp = -1;  // pi-precision clamp for the truncated lower tail
    if (v == 0) {
      lmin = 0;
    } else {
      lmin = cdiv_long(m - tw.degree, static_cast<long>(p));
      Rat floor_p = lower_tail_floor(p, variant, m, lmin);
      clamp = floor_rat_long(floor_p * ram);
    }
    if (v == -1) lmax = std::min(lmax, 0L);

    PadicElement lhs = PadicElement::zero(ctx);
    for (long l = lmin; l <= lmax; ++l) {
      long idx = m - static_cast<long>(p) * l;
      const PadicElement& mult =
          (variant == OperatorVariant::Sigma) ? tw.sigma_at(idx) : tw.theta_at(idx);
      PadicElement pw = (l >= 0) ? tw.pi0_pow[static_cast<size_t>(l)]
                                 : tw.inv_pi0_pow[static_cast<size_t>(-l)];
      lhs = lhs + coeff(v, l) * pw * mult;
    }
    if (clamp >= 0) lhs = lhs.clamped(clamp);

    // RHS coefficient [v']_{delta+m} (sigma variant) or g(v', delta+m) (theta
    // variant); its order equals the bracket order in both cases.
    long k = out.delta + m;
    if (!bracket_defined(out.v_prime, k)) {
      throw InternalError("operator relation: RHS bracket undefined at sampled index");
    }
    Rat br = bracket(out.v_prime, k);
    if (br == 0) throw InternalError("operator relation: RHS coefficient vanishes");
    PadicElement rhs_coeff =
        (variant == OperatorVariant::Sigma)
            ? PadicElement::from_rational(ctx, br)
            : eval_g(tw, out.v_prime, k,
                     required_agreement + ram * (std::max(0L, -k) + std::abs(ord_p_long(br, p))) +
                         4 * ram + 24)
                  .value;
    PadicElement inv_pw_m = (m >= 0) ? tw.inv_pi0_pow[static_cast<size_t>(m)]
                                     : tw.pi0_pow[static_cast<size_t>(-m)];
    PadicElement r = lhs * inv_pw_m * rhs_coeff.inverse();
    sc.agreement = certified_agreement(r, K);
    if (sc.agreement < required_agreement) {
      auto o = (r - K).pi_ord();
      sc.exact_mismatch = o.exact;
    } else {
      ++out.samples_passed;
    }
    out.samples.push_back(sc);
  }

  if (variant == OperatorVariant::Sigma) {
    out.kernel_recurrence_ok = check_kernel_recurrence(v);
  } else {
    out.intertwining_ok = check_intertwining(tw, v, required_agreement);
  }
  bool mismatch = false;
  for (const auto& s : out.samples) mismatch = mismatch || s.exact_mismatch;
  out.pass = (out.samples_passed >= min_samples) && !mismatch &&
             out.kernel_recurrence_ok && out.intertwining_ok;
  return out;
}

namespace {

bool is_prime_ul(unsigned long n) {
  if (n < 2) return false;
  for (unsigned long d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

std::vector<Rat> default_v_panel(unsigned long p) {
  std::vector<Rat> out{Rat(0), Rat(-1)};
  for (long D = 2; D <= 5; ++D) {
    if (D % static_cast<long>(p) == 0) continue;
    for (long c = 1; c < D; ++c) {
      Rat v(-c, D);
      v.canonicalize();
      if (!is_p_integral(v, p)) continue;
      if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(v);
    }
  }
  return out;
}

std::string rat_str(const Rat& q) { return rat_to_string(q); }

void run_selftest_checks(const SplittingTower& tw, const std::vector<Rat>& panel,
                         long required, long min_samples, SelftestReport& rep);

// Smallest tower degree making every planned computation determined.
long estimate_degree(unsigned long p, long required, long min_samples) {
  long ram = static_cast<long>(p) - 1;
  long degree = static_cast<long>(4 * p) + 2;
  // H evaluations: need sigma up to p*L where L covers the tail target.
  {
    long h_tail = required + 4 * ram + 24;
    Rat needed(h_tail, ram);
    long L = 0;
    for (long l = 1; l < 100000; ++l) {
      if (h_term_floor(p, l) < needed) L = l;
      else if (l >= 3 && exceeds_log(Rat(l * ram, static_cast<long>(p)) - needed, p, Int(l))) break;
    }
    degree = std::max(degree, static_cast<long>(p) * (L + 2));
  }
  // Verifier lower tails for the worst sampled m.
  long m_hi = std::max<long>(static_cast<long>(p) - 1, min_samples - 1);
  for (OperatorVariant variant : {OperatorVariant::Sigma, OperatorVariant::Theta}) {
    // clamp target: required + m + bracket-order slack + margins
    long target = required + m_hi + 8 * ram + 40;
    for (;; degree += static_cast<long>(p)) {
      long lmin = cdiv_long(m_hi - degree, static_cast<long>(p));
      if (lmin >= 0) continue;
      Rat fl = lower_tail_floor(p, variant, m_hi, lmin);
      if (fl * ram >= Rat(target)) break;
      if (degree > 1000000) throw TailBoundTooWeak("estimate_degree: runaway");
    }
  }
  return degree;
}

}  // namespace

SelftestReport run_padic_selftest(const SelftestOptions& opt) {
  if (!is_prime_ul(opt.p)) throw InvalidInstance("padic selftest: p must be prime");
  if (opt.precision < 1) throw InvalidInstance("padic selftest: precision must be >= 1");
  const unsigned long p = opt.p;
  const long ram = static_cast<long>(p) - 1;
  const long required = ram * opt.precision;
  if (required < 5) {
    throw PrecisionExhausted(
        "padic selftest: requested precision certifies fewer than 5 pi-digits");
  }

  SelftestReport rep;
  rep.p = p;
  rep.precision = opt.precision;
  rep.working_precision =
      std::max(opt.precision + 8 + cdiv_long(48, ram), static_cast<long>(p) + 4);
  rep.target_agreement = required;

  std::vector<Rat> panel = opt.v_list.empty() ? default_v_panel(p) : opt.v_list;
  for (const Rat& v : panel) {
    if (v < -1 || v > 0 || !is_p_integral(v, p)) {
      throw InvalidInstance("padic selftest: v-list entry outside p-integral [-1,0]");
    }
  }

  PadicContext ctx = make_context(p, rep.working_precision);
  long degree = estimate_degree(p, required, opt.min_samples);
  SplittingTower tw;
  // The degree estimate covers every planned tail; if an evaluation still
  // reports it too small (extreme bracket orders), grow and rebuild.
  for (int attempt = 0;; ++attempt) {
    tw = build_tower(ctx, degree);
    rep.degree = tw.degree;
    rep.checks.clear();
    try {
      run_selftest_checks(tw, panel, required, opt.min_samples, rep);
      break;
    } catch (const TailBoundTooWeak&) {
      if (attempt >= 2) throw;
      degree = degree + degree / 2 + static_cast<long>(p);
    }
  }

  rep.pass = true;
  for (const auto& c : rep.checks) rep.pass = rep.pass && c.pass;
  return rep;
}

namespace {

void run_selftest_checks(const SplittingTower& tw, const std::vector<Rat>& panel,
                         long required, long min_samples, SelftestReport& rep) {
  const PadicContext& ctx = *tw.ctx;
  const unsigned long p = ctx.p;
  const long ram = ctx.ram();

  std::vector<Rat> h_slacks;
  auto add = [&](const std::string& name, bool pass, const std::string& detail) {
    rep.checks.push_back(SelftestCheck{name, pass, detail});
  };
  // Ord floors are assertable only up to each coefficient's certified radius:
  // when the floor value*den exceeds what the ball can certify, the
  // coefficient passes exactly when no certified digit contradicts it.
  auto meets_floor = [](const PadicElement& e, long num, long den) -> bool {
    if (static_cast<long long>(e.pi_ord().bound) * den >=
        static_cast<long long>(num)) {
      return true;
    }
    return e.is_zero_ball();
  };

  {  // exact rational integrality of the exponential coefficients
    bool ok = true;
    for (const Rat& a : tw.artin_hasse) ok = ok && is_p_integral(a, p);
    add("artin-hasse-integrality", ok,
        "exponential coefficients have p-free denominators");
  }
  {  // root certificate
    PadicElement lhs = el_pow(tw.pi0, static_cast<unsigned long>(ram)) +
                       PadicElement::from_rational(ctx, Rat(static_cast<long>(p)));
    long bound = lhs.pi_ord().bound;
    bool ok = bound >= static_cast<long>(p) * ram && tw.pi0.pi_ord().exact &&
              tw.pi0.pi_ord().bound == 1 &&
              certified_agreement(tw.pi0, PadicElement::pi_power(ctx, 1)) >= 2;
    std::ostringstream os;
    os << "ord(pi0^(p-1)+p) >= " << bound << " pi-units (need " << p * ram << ")";
    add("splitting-root", ok, os.str());
  }
  {  // theta floors (all computed degrees)
    bool ok = true;
    for (long i = 0; i <= tw.degree && ok; ++i) {
      ok = meets_floor(tw.theta[static_cast<size_t>(i)], i, 1);
    }
    add("theta-floor", ok, "ord(theta_i) >= i/(p-1) for all computed i");
  }
  {  // normalized theta-hat floors, degree <= 4p
    bool ok = true;
    long cap = std::min<long>(tw.degree, static_cast<long>(4 * p));
    for (long i = 0; i <= cap && ok; ++i) {
      PadicElement norm = tw.theta_hat[static_cast<size_t>(i)]
                              .mul_rational(Rat(factorial(i))) *
                          tw.inv_pi0_pow[static_cast<size_t>(i)];
      ok = meets_floor(norm, 0, 1);
    }
    add("theta-hat-floor", ok, "normalized theta-hat coefficients are integral");
  }
  {  // normalized theta-hat1 floors: ord >= i(p-1)/p, degree <= 4p
    bool ok = true;
    long cap = std::min<long>(tw.degree, static_cast<long>(4 * p));
    for (long i = 0; i <= cap && ok; ++i) {
      PadicElement norm = tw.theta_hat1[static_cast<size_t>(i)]
                              .mul_rational(Rat(factorial(i))) *
                          tw.inv_pi0_pow[static_cast<size_t>(i)];
      ok = meets_floor(norm, i * ram * ram, static_cast<long>(p));
    }
    add("theta-hat1-floor", ok, "smoothed coefficients satisfy the i(p-1)/p floor");
  }
  {  // sigma floors: ord >= i(p-1)/p^2, degree <= 4p
    bool ok = true;
    long cap = std::min<long>(tw.degree, static_cast<long>(4 * p));
    for (long i = 0; i <= cap && ok; ++i) {
      ok = meets_floor(tw.sigma[static_cast<size_t>(i)], i * ram * ram,
                       static_cast<long>(p * p));
    }
    add("sigma-floor", ok, "twist coefficients satisfy the i(p-1)/p^2 floor");
  }
  {  // sigma * theta_hat1 == theta * theta_hat1(t^p)
    PSeries lhs = ps_mul(tw.sigma, tw.theta_hat1, tw.degree);
    PSeries rhs = ps_mul(tw.theta, ps_substitute_tp(tw.theta_hat1, p, tw.degree), tw.degree);
    long worst = certified_agreement(lhs[0], rhs[0]);
    for (long i = 1; i <= tw.degree; ++i) {
      worst = std::min(worst,
                       certified_agreement(lhs[static_cast<size_t>(i)],
                                           rhs[static_cast<size_t>(i)]));
    }
    std::ostringstream os;
    os << "coefficientwise agreement >= " << worst << " pi-units";
    add("sigma-product-identity", worst >= required, os.str());
  }
  {  // sigma_{pl} closed form
    bool ok = true;
    long lcap = std::min<long>(10, tw.degree / static_cast<long>(p));
    for (long l = 0; l <= lcap && ok; ++l) {
      PadicElement sum = PadicElement::zero(ctx);
      for (long i = 0; i <= l; ++i) {
        Rat c = Rat(1) / Rat(factorial(static_cast<long>(p) * i) * factorial(l - i));
        if (i % 2 != 0) c = -c;
        sum = sum + tw.pi0_pow[static_cast<size_t>(ram * i)].mul_rational(c);
      }
      PadicElement closed = tw.pi0_pow[static_cast<size_t>(l)] *
                            ((l % 2 == 0) ? sum : -sum);
      ok = certified_agreement(tw.sigma_at(static_cast<long>(p) * l), closed) >= required;
    }
    add("sigma-closed-form", ok, "sigma_{pl} matches its binomial closed form");
  }
  long h_tail = required + 4 * ram + 24;
  {  // H closed forms
    bool ok = true;
    HValue h0 = eval_H(tw, Rat(0), h_tail);
    h_slacks.push_back(h0.tail_floor - Rat(required, ram));
    ok = certified_agreement(h0.value, PadicElement::from_rational(ctx, Rat(1))) >= required;
    long rcap = std::min<long>(20, tw.degree / static_cast<long>(p) - 1);
    for (long r = 1; r <= rcap && ok; ++r) {
      HValue h = eval_H(tw, Rat(-r), h_tail);
      h_slacks.push_back(h.tail_floor - Rat(required, ram));
      Rat c = Rat(factorial(r)) / Rat(factorial(static_cast<long>(p) * r));
      PadicElement closed = tw.pi0_pow[static_cast<size_t>(ram * r)].mul_rational(c);
      ok = certified_agreement(h.value, closed) >= required;
    }
    std::ostringstream os;
    os << "H(-r) = r! pi0^{(p-1)r}/(pr)! for r <= " << rcap;
    add("h-closed-form", ok, os.str());
  }
  {  // H unit values on a p-integral panel
    bool ok = true;
    std::vector<Rat> zs{Rat(1), Rat(2), Rat(1, static_cast<long>(p) + 1),
                        Rat(static_cast<long>(p), static_cast<long>(p) + 1),
                        Rat(-static_cast<long>(p) + 1, static_cast<long>(p) + 1)};
    for (const Rat& z : zs) {
      HValue h = eval_H(tw, z, h_tail);
      h_slacks.push_back(h.tail_floor - Rat(required, ram));
      auto o = h.value.pi_ord();
      ok = ok && o.exact && o.bound == 0;
    }
    add("h-unit-values", ok, "H takes unit values on sampled p-adic integers");
  }

  for (const Rat& v : panel) {
    for (OperatorVariant variant : {OperatorVariant::Sigma, OperatorVariant::Theta}) {
      OperatorRelationCheck c =
          check_operator_relation(tw, v, variant, required, min_samples);
      long worst = c.samples.empty() ? 0 : c.samples[0].agreement;
      for (const auto& s : c.samples) worst = std::min(worst, s.agreement);
      std::ostringstream os;
      os << "v=" << rat_str(v) << " -> v'=" << rat_str(c.v_prime) << ", delta=" << c.delta
         << ", " << c.samples_passed << "/" << c.samples.size()
         << " samples certified to >= " << required << " pi-units (worst " << worst << ")";
      std::string name = (variant == OperatorVariant::Sigma)
                             ? "operator-relation-sigma(" + rat_str(v) + ")"
                             : "operator-relation-theta(" + rat_str(v) + ")";
      add(name, c.pass, os.str());
    }
    {  // smoothing preserves coefficient orders exactly
      bool ok = true;
      std::vector<long> ls;
      if (v == 0) ls = {0, 1, 2, 3, 4};
      else if (v == -1) ls = {-4, -3, -2, -1, 0};
      else ls = {-3, -2, -1, 0, 1, 2, 3};
      for (long l : ls) {
        GValue g = eval_g(tw, v, l, required + ram * (std::max(0L, -l) + 2) + 8);
        Rat b = bracket(v, l);
        if (b == 0) {
          ok = ok && g.value.is_zero_ball();
          continue;
        }
        auto o = g.value.pi_ord();
        ok = ok && o.exact && o.bound == ram * ord_p_long(b, p);
      }
      add("g-ord-match(" + rat_str(v) + ")", ok,
          "ord g(v,l) equals ord [v]_l on the sampled window");
    }
  }

  Rat slack = h_slacks.empty() ? Rat(0) : h_slacks[0];
  for (const Rat& s : h_slacks) slack = std::min(slack, s);
  rep.h_tail_slack = slack;
}

}  // namespace

}  // namespace hyperint
