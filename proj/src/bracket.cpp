#include "hyperint/bracket.hpp"

namespace hyperint {

bool bracket_defined(const Rat& z, long l) {
  if (l <= 0) return true;
  // needs z + i != 0 for i = 1..l
  if (!is_integer(z)) return true;
  Int n = z.get_num();
  return !(n <= -1 && n >= -Int(l));
}

bool pochhammer_defined(const Rat& z, long l) {
  if (l >= 0) return true;
  if (!is_integer(z)) return true;
  Int n = z.get_num();
  return !(n >= 1 && n <= Int(-l));
}

Rat bracket(const Rat& z, long l) {
  if (!bracket_defined(z, l))
    throw UndefinedSymbol("bracket [" + rat_to_string(z) + "]_" + std::to_string(l));
  Rat r(1);
  if (l > 0) {
    for (long i = 1; i <= l; ++i) r *= z + Rat(i);
    r = Rat(1) / r;
  } else {
    for (long i = 0; i > l; --i) r *= z + Rat(i);
  }
  return r;
}

Rat pochhammer(const Rat& z, long l) {
  if (!pochhammer_defined(z, l))
    throw UndefinedSymbol("pochhammer (" + rat_to_string(z) + ")_" + std::to_string(l));
  Rat r(1);
  if (l > 0) {
    for (long i = 0; i < l; ++i) r *= z + Rat(i);
  } else {
    for (long i = -1; i >= l; --i) r *= z + Rat(i);
    r = Rat(1) / r;
  }
  return r;
}

Rat bracket_vector(const std::vector<Rat>& v, const std::vector<long>& l) {
  if (v.size() != l.size()) throw InvalidInstance("bracket_vector: length mismatch");
  Rat r(1);
  for (std::size_t j = 0; j < v.size(); ++j) r *= bracket(v[j], l[j]);
  return r;
}

DigitStream::DigitStream(const Rat& x, unsigned long p) : p_(p) {
  if (!is_p_integral(x, p)) throw NotPIntegral("digit stream needs a p-integral rational");
  Rat c(x);
  c.canonicalize();
  num_ = c.get_num();
  den_ = c.get_den();
  Int inv;
  Int pp(static_cast<unsigned long>(p));
  if (!mpz_invert(inv.get_mpz_t(), den_.get_mpz_t(), pp.get_mpz_t()))
    throw NotPIntegral("digit stream: denominator not invertible mod p");
  den_inv_ = mpz_get_ui(inv.get_mpz_t());
}

void DigitStream::extend() {
  // next digit d = num * den^{-1} mod p (nonnegative residue)
  Int r;
  mpz_fdiv_r_ui(r.get_mpz_t(), num_.get_mpz_t(), p_);
  unsigned long d = (mpz_get_ui(r.get_mpz_t()) * den_inv_) % p_;
  digits_.push_back(d);
  // x <- (x - d)/p on numerators: num <- (num - d*den)/p, exact by construction
  Int t = num_ - Int(d) * den_;
  Int q;
  mpz_divexact_ui(q.get_mpz_t(), t.get_mpz_t(), p_);
  num_ = q;
}

unsigned long DigitStream::digit(std::size_t i) {
  while (digits_.size() <= i) extend();
  return digits_[i];
}

Valuation bracket_ord_digits(const Rat& z, long l, unsigned long p) {
  if (!is_p_integral(z, p)) throw NotPIntegral("bracket_ord_digits: z must be p-integral");
  if (!bracket_defined(z, l))
    throw UndefinedSymbol("bracket [" + rat_to_string(z) + "]_" + std::to_string(l));
  if (l == 0) return Valuation::fin(Rat(0));
  if (l < 0) {
    // [z]_l = (-1)^l (-z)_{-l} and (-z)_{-l} = 1/[-z-1]_{-l}, so away from a
    // vanishing factor the positive-index digit formula applies to
    // [-z-1]_{-l}, whose carry digits are read from z itself. The product
    // vanishes exactly for integer z in {0, 1, ..., -l-1}.
    Rat c(z);
    c.canonicalize();
    if (c.get_den() == 1 && c.get_num() >= 0 && c.get_num() <= Int(-l - 1))
      return Valuation::inf();
    Rat w = -z - Rat(1);
    Valuation inner = bracket_ord_digits(w, -l, p);
    return Valuation::fin(-inner.value);
  }
  // l > 0: digit formula against the digits sigma of -(z+1).
  std::vector<unsigned long> ldig;
  {
    Int m(l);
    while (m > 0) {
      Int q, r;
      mpz_fdiv_qr_ui(q.get_mpz_t(), r.get_mpz_t(), m.get_mpz_t(), p);
      ldig.push_back(mpz_get_ui(r.get_mpz_t()));
      m = q;
    }
  }
  DigitStream sigma(Rat(-(z + 1)), p);
  auto l_digit = [&](std::size_t i) -> unsigned long { return i < ldig.size() ? ldig[i] : 0; };
  long runs = 0;
  const std::size_t cap = 100000;
  for (std::size_t m = 0; m < ldig.size(); ++m) {
    if (l_digit(m) > sigma.digit(m)) {
      std::size_t r = m + 1;
      while (l_digit(r) == sigma.digit(r)) {
        ++r;
        if (r > m + cap)
          throw InternalError("bracket_ord_digits: digit run did not terminate");
      }
      runs += static_cast<long>(r - m);
    }
  }
  Int s = digit_sum(Int(l), p);
  Rat ord = Rat(-(Int(l) - s)) / Rat(static_cast<long>(p) - 1);
  return Valuation::fin(ord - Rat(runs));
}

PiLogBound pi_scaled_bracket_bound(long l, unsigned long p) {
  PiLogBound b;
  b.p = p;
  b.y = (l == 0) ? Int(1) : Int(static_cast<unsigned long>(p)) * Int(l < 0 ? -l : l);
  return b;
}

bool PiLogBound::admits(const Valuation& x) const {
  if (x.infinite) return true;
  if (x.value >= 0) return true;  // -log_p(y) <= 0 <= x since y >= 1
  // x >= -log_p(y)  <=>  p^{-x} <= y  <=>  p^{-a} <= y^b for x = a/b, b > 0.
  Rat c(x.value);
  c.canonicalize();
  Int a = c.get_num(), bden = c.get_den();
  Int lhs = pow_int(Int(static_cast<unsigned long>(p)), mpz_get_ui(Int(-a).get_mpz_t()));
  Int rhs = pow_int(y, mpz_get_ui(bden.get_mpz_t()));
  return lhs <= rhs;
}

bool pi_scaled_bracket_floor_ok(const Valuation& ord_bracket, long l, unsigned long p) {
  Valuation x = ord_bracket + Valuation::fin(Rat(l) / Rat(static_cast<long>(p) - 1));
  // for p = 2 the denominator is 1; Rat(l)/Rat(1) is fine
  return pi_scaled_bracket_bound(l, p).admits(x);
}

}  // namespace hyperint
