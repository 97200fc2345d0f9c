#include "hyperint/padic.hpp"

#include <algorithm>
#include <sstream>
#include <utility>

namespace hyperint {

namespace {

// floor / ceil of integer division by a positive long.
long fdiv_long(long a, long b) {
  long q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}
long cdiv_long(long a, long b) { return -fdiv_long(-a, b); }

// p-adic valuation of a nonzero integer.
long int_vp(const Int& x, unsigned long p) {
  Int junk;
  Int pz(static_cast<long>(p));
  return static_cast<long>(mpz_remove(junk.get_mpz_t(), x.get_mpz_t(), pz.get_mpz_t()));
}

}  // namespace

const Int& PadicContext::ppow(long e) const {
  if (e < 0) throw InternalError("PadicContext::ppow: negative exponent");
  if (e > 1000000) throw InternalError("PadicContext::ppow: exponent runaway");
  if (pow_cache_.empty()) pow_cache_.push_back(Int(1));
  while (static_cast<long>(pow_cache_.size()) <= e) {
    pow_cache_.push_back(pow_cache_.back() * static_cast<long>(p));
  }
  return pow_cache_[static_cast<size_t>(e)];
}

PadicContext make_context(unsigned long p, long prec) {
  if (p < 2) throw InvalidInstance("p-adic context needs a prime p >= 2");
  if (prec < 1) throw InvalidInstance("p-adic context needs precision >= 1");
  PadicContext ctx;
  ctx.p = p;
  ctx.prec = prec;
  return ctx;
}

PadicElement raw_element(const PadicContext& ctx, long shift, std::vector<Int> c,
                         std::vector<long> prec) {
  PadicElement e;
  e.ctx_ = &ctx;
  e.shift_ = shift;
  e.c_ = std::move(c);
  e.prec_ = std::move(prec);
  e.reduce();
  return e;
}

void PadicElement::reduce() {
  const size_t n = static_cast<size_t>(ctx_->ram());
  if (c_.size() != n || prec_.size() != n) {
    throw InternalError("PadicElement: slot count mismatch");
  }
  for (size_t k = 0; k < n; ++k) {
    if (prec_[k] < 0) prec_[k] = 0;
    mpz_fdiv_r(c_[k].get_mpz_t(), c_[k].get_mpz_t(),
               ctx_->ppow(prec_[k]).get_mpz_t());
  }
}

const PadicContext& PadicElement::context() const {
  if (!ctx_) throw InternalError("PadicElement: used before initialization");
  return *ctx_;
}

PadicElement PadicElement::zero(const PadicContext& ctx) {
  size_t n = static_cast<size_t>(ctx.ram());
  return raw_element(ctx, 0, std::vector<Int>(n, Int(0)),
                     std::vector<long>(n, ctx.prec));
}

PadicElement PadicElement::pi_power(const PadicContext& ctx, long e) {
  size_t n = static_cast<size_t>(ctx.ram());
  std::vector<Int> c(n, Int(0));
  c[0] = 1;
  return raw_element(ctx, e, std::move(c), std::vector<long>(n, ctx.prec));
}

PadicElement PadicElement::from_rational(const PadicContext& ctx, const Rat& q) {
  if (q == 0) return zero(ctx);
  Int num = q.get_num(), den = q.get_den();
  Int nu, du;
  Int pz(static_cast<long>(ctx.p));
  long en = static_cast<long>(mpz_remove(nu.get_mpz_t(), num.get_mpz_t(), pz.get_mpz_t()));
  long ed = static_cast<long>(mpz_remove(du.get_mpz_t(), den.get_mpz_t(), pz.get_mpz_t()));
  long e = en - ed;
  const Int& mod = ctx.ppow(ctx.prec);
  Int dinv;
  if (mpz_invert(dinv.get_mpz_t(), du.get_mpz_t(), mod.get_mpz_t()) == 0) {
    throw InternalError("from_rational: denominator unit not invertible");
  }
  Int u = nu * dinv;           // unit part num/den mod p^prec
  if (e % 2 != 0) u = -u;      // p^e = (-1)^e * (-p)^e = (-1)^e * pi^(e(p-1))
  size_t n = static_cast<size_t>(ctx.ram());
  std::vector<Int> c(n, Int(0));
  c[0] = u;
  return raw_element(ctx, e * ctx.ram(), std::move(c),
                     std::vector<long>(n, ctx.prec));
}

PadicElement PadicElement::operator-() const {
  PadicElement r = *this;
  for (auto& x : r.c_) x = -x;
  r.reduce();
  return r;
}

PadicElement PadicElement::rebased(long new_shift) const {
  const PadicContext& ctx = context();
  if (new_shift == shift_) return *this;
  if (new_shift > pi_ord().bound) {
    throw InternalError("PadicElement::rebased: target shift above certified order");
  }
  const long ram = ctx.ram();
  const size_t n = static_cast<size_t>(ram);
  std::vector<Int> c(n, Int(0));
  std::vector<long> prec(n, -1);  // -1 = no contributor yet
  for (size_t k = 0; k < n; ++k) {
    long e = shift_ + static_cast<long>(k) - new_shift;
    long q = fdiv_long(e, ram);
    long r = e - q * ram;
    Int v = c_[k];
    long pr = prec_[k] + q;
    if (q >= 0) {
      v *= ctx.ppow(q);
    } else if (v != 0) {
      if (int_vp(v, ctx.p) < -q) {
        throw InternalError("PadicElement::rebased: inexact division by p");
      }
      Int quo;
      mpz_divexact(quo.get_mpz_t(), v.get_mpz_t(), ctx.ppow(-q).get_mpz_t());
      v = quo;
    }
    if (q % 2 != 0) v = -v;  // (-p)^q carries the sign
    size_t rr = static_cast<size_t>(r);
    c[rr] += v;
    prec[rr] = (prec[rr] < 0) ? pr : std::min(prec[rr], pr);
  }
  // Untouched slots hold an exact zero digit; keep the overall ball radius.
  long P = pi_precision();
  for (size_t r = 0; r < n; ++r) {
    if (prec[r] < 0) {
      prec[r] = std::max<long>(0, cdiv_long(P - new_shift - static_cast<long>(r), ram));
    }
  }
  return raw_element(ctx, new_shift, std::move(c), std::move(prec));
}

PadicElement PadicElement::operator+(const PadicElement& o) const {
  const PadicContext& ctx = context();
  if (&o.context() != &ctx) throw InternalError("PadicElement: context mismatch");
  long s = std::min(shift_, o.shift_);
  PadicElement a = rebased(s), b = o.rebased(s);
  const size_t n = static_cast<size_t>(ctx.ram());
  std::vector<Int> c(n);
  std::vector<long> prec(n);
  for (size_t k = 0; k < n; ++k) {
    c[k] = a.c_[k] + b.c_[k];
    prec[k] = std::min(a.prec_[k], b.prec_[k]);
  }
  return raw_element(ctx, s, std::move(c), std::move(prec));
}

PadicElement PadicElement::operator-(const PadicElement& o) const {
  return *this + (-o);
}

PadicElement PadicElement::operator*(const PadicElement& o) const {
  const PadicContext& ctx = context();
  if (&o.context() != &ctx) throw InternalError("PadicElement: context mismatch");
  const long ram = ctx.ram();
  const size_t n = static_cast<size_t>(ram);
  // Effective valuation of each stored digit: vp of the residue, or the floor
  // when the residue vanishes.
  auto vphat = [&](const PadicElement& x, size_t k) {
    return (x.c_[k] == 0) ? x.prec_[k] : std::min(int_vp(x.c_[k], ctx.p), x.prec_[k]);
  };
  std::vector<Int> c(n, Int(0));
  std::vector<long> prec(n, -1);
  for (size_t j = 0; j < n; ++j) {
    for (size_t k = 0; k < n; ++k) {
      long e = static_cast<long>(j + k);
      long q = e / ram;         // e >= 0
      long r = e - q * ram;
      long pr = std::min(prec_[j] + vphat(o, k), o.prec_[k] + vphat(*this, j)) + q;
      Int v = c_[j] * o.c_[k] * ctx.ppow(q);
      if (q % 2 != 0) v = -v;
      size_t rr = static_cast<size_t>(r);
      c[rr] += v;
      prec[rr] = (prec[rr] < 0) ? pr : std::min(prec[rr], pr);
    }
  }
  for (size_t r = 0; r < n; ++r) {
    if (prec[r] < 0) prec[r] = ctx.prec;  // p = 2 never reaches here
  }
  return raw_element(ctx, shift_ + o.shift_, std::move(c), std::move(prec));
}

PadicElement PadicElement::mul_pi_power(long e) const {
  PadicElement r = *this;
  r.shift_ += e;
  return r;
}

PadicElement PadicElement::mul_rational(const Rat& q) const {
  const PadicContext& ctx = context();
  if (q == 0) return zero(ctx);
  Int num = q.get_num(), den = q.get_den();
  Int nu, du;
  Int pz(static_cast<long>(ctx.p));
  long en = static_cast<long>(mpz_remove(nu.get_mpz_t(), num.get_mpz_t(), pz.get_mpz_t()));
  long ed = static_cast<long>(mpz_remove(du.get_mpz_t(), den.get_mpz_t(), pz.get_mpz_t()));
  long e = en - ed;
  long maxprec = 0;
  for (long pk : prec_) maxprec = std::max(maxprec, pk);
  const Int& mod = ctx.ppow(maxprec);
  Int dinv;
  if (mpz_invert(dinv.get_mpz_t(), du.get_mpz_t(), mod.get_mpz_t()) == 0) {
    throw InternalError("mul_rational: denominator unit not invertible");
  }
  Int u = nu * dinv;
  if (e % 2 != 0) u = -u;
  PadicElement r = *this;
  for (auto& x : r.c_) x *= u;  // unit factor: precision floors unchanged
  r.shift_ += e * ctx.ram();
  r.reduce();
  return r;
}

PadicElement::Ord PadicElement::pi_ord() const {
  const PadicContext& ctx = context();
  const long ram = ctx.ram();
  long best = 0;
  bool best_exact = false, have = false;
  for (size_t k = 0; k < c_.size(); ++k) {
    long slot_ord;
    bool exact;
    if (c_[k] == 0) {
      slot_ord = shift_ + static_cast<long>(k) + ram * prec_[k];
      exact = false;
    } else {
      slot_ord = shift_ + static_cast<long>(k) + ram * int_vp(c_[k], ctx.p);
      exact = true;  // residue nonzero below its floor: digit is certain
    }
    if (!have || slot_ord < best) {
      best = slot_ord;
      best_exact = exact;
      have = true;
    }
    // Distinct slots have distinct orders mod (p-1): no ties to break.
  }
  Ord o;
  o.bound = best;
  o.exact = best_exact;
  return o;
}

long PadicElement::pi_precision() const {
  const long ram = context().ram();
  long P = 0;
  bool have = false;
  for (size_t k = 0; k < prec_.size(); ++k) {
    long h = shift_ + static_cast<long>(k) + ram * prec_[k];
    if (!have || h < P) {
      P = h;
      have = true;
    }
  }
  return P;
}

bool PadicElement::is_zero_ball() const {
  for (const auto& x : c_) {
    if (x != 0) return false;
  }
  return true;
}

PadicElement PadicElement::clamped(long new_precision) const {
  const PadicContext& ctx = context();
  PadicElement r = *this;
  for (size_t k = 0; k < r.prec_.size(); ++k) {
    long cap = cdiv_long(new_precision - shift_ - static_cast<long>(k), ctx.ram());
    r.prec_[k] = std::min(r.prec_[k], std::max<long>(0, cap));
  }
  r.reduce();
  return r;
}

PadicElement PadicElement::assume_precision(long pdigits) const {
  PadicElement r = *this;
  for (auto& pk : r.prec_) pk = pdigits;
  r.reduce();
  return r;
}

PadicElement PadicElement::inverse() const {
  const PadicContext& ctx = context();
  Ord o = pi_ord();
  if (!o.exact) {
    throw PrecisionExhausted("inverse: leading digit of the operand is not certified");
  }
  PadicElement u = rebased(o.bound).mul_pi_power(-o.bound);  // unit, shift 0
  long target = std::min(u.pi_precision(), ctx.ram() * ctx.prec);
  if (target < 1) throw PrecisionExhausted("inverse: operand has no certified digits");

  // Newton with forged precision; the result is certified a posteriori.
  PadicElement uf = u.assume_precision(ctx.prec);
  Int seed;
  if (mpz_invert(seed.get_mpz_t(), u.c_[0].get_mpz_t(),
                 ctx.ppow(ctx.prec).get_mpz_t()) == 0) {
    throw InternalError("inverse: leading digit not a p-adic unit");
  }
  size_t n = static_cast<size_t>(ctx.ram());
  std::vector<Int> c(n, Int(0));
  c[0] = seed;
  PadicElement y = raw_element(ctx, 0, std::move(c), std::vector<long>(n, ctx.prec));
  PadicElement two = from_rational(ctx, Rat(2)).assume_precision(ctx.prec);
  long iters = 2;
  for (long reach = 1; reach < target; reach *= 2) ++iters;
  for (long i = 0; i < iters; ++i) {
    y = (y * (two - uf * y)).assume_precision(ctx.prec);
  }
  PadicElement residual = uf * y - PadicElement::from_rational(ctx, Rat(1));
  if (residual.pi_ord().bound < target) {
    throw PrecisionExhausted("inverse: Newton residual above certified target");
  }
  return y.clamped(target).mul_pi_power(-o.bound);
}

std::string PadicElement::to_string() const {
  const PadicContext& ctx = context();
  std::ostringstream os;
  os << "pi^" << shift_ << "*(";
  for (size_t k = 0; k < c_.size(); ++k) {
    if (k) os << " + ";
    os << "(" << c_[k].get_str() << " mod " << ctx.p << "^" << prec_[k] << ")";
    if (k) os << "*pi^" << k;
  }
  os << ")";
  return os.str();
}

long certified_agreement(const PadicElement& a, const PadicElement& b) {
  return (a - b).pi_ord().bound;
}

}  // namespace hyperint
