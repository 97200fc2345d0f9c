#include "hyperint/base.hpp"

#include <cctype>

namespace hyperint {

Rat rat_from_string(const std::string& s) {
  if (s.empty()) throw InvalidInstance("empty rational literal");
  for (char c : s) {
    if (!(std::isdigit(static_cast<unsigned char>(c)) || c == '-' || c == '+' || c == '/'))
      throw InvalidInstance("malformed rational literal: " + s);
  }
  Rat q;
  if (q.set_str(s, 10) != 0) throw InvalidInstance("malformed rational literal: " + s);
  if (q.get_den() == 0) throw InvalidInstance("zero denominator in rational literal: " + s);
  q.canonicalize();
  return q;
}

std::string rat_to_string(const Rat& q) {
  Rat c(q);
  c.canonicalize();
  return c.get_num().get_str() + "/" + c.get_den().get_str();
}

Int floor_rat(const Rat& q) {
  Int r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num().get_mpz_t(), q.get_den().get_mpz_t());
  return r;
}

Int ceil_rat(const Rat& q) {
  Int r;
  mpz_cdiv_q(r.get_mpz_t(), q.get_num().get_mpz_t(), q.get_den().get_mpz_t());
  return r;
}

bool is_integer(const Rat& q) {
  // Divisibility test instead of den == 1 so the answer is right even for
  // values that were never canonicalized (e.g. built as Rat(4, 2)).
  return mpz_divisible_p(q.get_num().get_mpz_t(), q.get_den().get_mpz_t()) != 0;
}

Int pow_int(const Int& base, unsigned long e) {
  Int r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

Int digit_sum(const Int& n, unsigned long p) {
  if (n < 0) throw InternalError("digit_sum: negative argument");
  Int s = 0, m = n, q, r;
  while (m > 0) {
    mpz_fdiv_qr_ui(q.get_mpz_t(), r.get_mpz_t(), m.get_mpz_t(), p);
    s += r;
    m = q;
  }
  return s;
}

Valuation ord_p(const Int& n, unsigned long p) {
  if (n == 0) return Valuation::inf();
  Int f(static_cast<unsigned long>(p)), rem;
  unsigned long k = mpz_remove(rem.get_mpz_t(), n.get_mpz_t(), f.get_mpz_t());
  return Valuation::fin(Rat(static_cast<long>(k)));
}

Valuation ord_p(const Rat& q, unsigned long p) {
  if (q == 0) return Valuation::inf();
  Rat c(q);
  c.canonicalize();
  Int f(static_cast<unsigned long>(p)), rem;
  long vn = static_cast<long>(mpz_remove(rem.get_mpz_t(), c.get_num().get_mpz_t(), f.get_mpz_t()));
  long vd = static_cast<long>(mpz_remove(rem.get_mpz_t(), c.get_den().get_mpz_t(), f.get_mpz_t()));
  return Valuation::fin(Rat(vn - vd));
}

bool is_p_integral(const Rat& q, unsigned long p) {
  Rat c(q);
  c.canonicalize();
  return !mpz_divisible_ui_p(c.get_den().get_mpz_t(), p);
}

}  // namespace hyperint
