#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <random>
#include <vector>

#include "doctest.h"
#include "hyperint/padic.hpp"

using namespace hyperint;

namespace {

Rat random_rational(std::mt19937& rng, long p, bool allow_p_power) {
  std::uniform_int_distribution<long> num(-400, 400);
  std::uniform_int_distribution<long> den(1, 400);
  std::uniform_int_distribution<long> powd(-3, 3);
  Rat q;
  do {
    q = Rat(num(rng), den(rng));
  } while (q == 0);
  q.canonicalize();
  if (allow_p_power) {
    long e = powd(rng);
    Rat scale = (e >= 0) ? Rat(pow_int(Int(p), e)) : Rat(1, pow_int(Int(p), -e));
    q *= scale;
  }
  return q;
}

}  // namespace

TEST_CASE("embedding basics and exact orders") {
  for (unsigned long p : {2ul, 3ul, 5ul, 7ul}) {
    PadicContext ctx = make_context(p, 30);
    long ram = ctx.ram();

    auto one = PadicElement::from_rational(ctx, Rat(1));
    CHECK(one.pi_ord().bound == 0);
    CHECK(one.pi_ord().exact);
    CHECK(one.pi_precision() == ram * 30);

    auto ep = PadicElement::from_rational(ctx, Rat(static_cast<long>(p)));
    CHECK(ep.pi_ord().bound == ram);
    CHECK(ep.pi_ord().exact);

    auto einv = PadicElement::from_rational(ctx, Rat(1, static_cast<long>(p)));
    CHECK(einv.pi_ord().bound == -ram);
    CHECK(einv.pi_ord().exact);

    // pi^(p-1) = -p exactly.
    auto pi_pow = PadicElement::pi_power(ctx, ram);
    auto minus_p = PadicElement::from_rational(ctx, Rat(-static_cast<long>(p)));
    CHECK(certified_agreement(pi_pow, minus_p) >= ram * 30);

    // Zero ball: no certified digit, radius = full working precision.
    auto z = one - one;
    CHECK(z.is_zero_ball());
    CHECK_FALSE(z.pi_ord().exact);
    CHECK(z.pi_ord().bound == ram * 30);
  }
}

TEST_CASE("pi_ord matches ord_p on embedded rationals") {
  std::mt19937 rng(20260815);
  for (unsigned long p : {2ul, 3ul, 5ul, 13ul}) {
    PadicContext ctx = make_context(p, 25);
    for (int trial = 0; trial < 200; ++trial) {
      Rat q = random_rational(rng, static_cast<long>(p), true);
      Valuation v = ord_p(q, p);
      REQUIRE_FALSE(v.infinite);
      auto x = PadicElement::from_rational(ctx, q);
      auto o = x.pi_ord();
      CHECK(o.exact);
      CHECK(Rat(o.bound) == v.value * ctx.ram());
    }
  }
}

TEST_CASE("ring operations agree with rational arithmetic") {
  std::mt19937 rng(7);
  for (unsigned long p : {2ul, 3ul, 7ul}) {
    PadicContext ctx = make_context(p, 25);
    long ram = ctx.ram();
    for (int trial = 0; trial < 120; ++trial) {
      Rat a = random_rational(rng, static_cast<long>(p), true);
      Rat b = random_rational(rng, static_cast<long>(p), true);
      auto ea = PadicElement::from_rational(ctx, a);
      auto eb = PadicElement::from_rational(ctx, b);
      // Sums/products of embeddings match the embedded sum/product to within
      // the working ball, whose radius follows the operands' valuations.
      long oa = static_cast<long>(mpz_get_si(ord_p(a, p).value.get_num().get_mpz_t()));
      long ob = static_cast<long>(mpz_get_si(ord_p(b, p).value.get_num().get_mpz_t()));
      long add_ball = ram * (std::min(oa, ob) + 25);
      long mul_ball = ram * (oa + ob + 25);
      CHECK(certified_agreement(ea + eb, PadicElement::from_rational(ctx, a + b)) >= add_ball);
      CHECK(certified_agreement(ea - eb, PadicElement::from_rational(ctx, a - b)) >= add_ball);
      CHECK(certified_agreement(ea * eb, PadicElement::from_rational(ctx, a * b)) >= mul_ball);
      CHECK(certified_agreement(ea.mul_rational(b),
                                PadicElement::from_rational(ctx, a * b)) >= mul_ball);
      // mul_rational is exact: no precision is lost at all.
      long eb_ord = ob;
      CHECK(ea.mul_rational(b).pi_precision() == ea.pi_precision() + ram * eb_ord);
    }
  }
}

TEST_CASE("mixed-slot elements have exact orders") {
  PadicContext ctx = make_context(5, 20);
  auto pi1 = PadicElement::pi_power(ctx, 1);
  auto pi2 = PadicElement::pi_power(ctx, 2);
  auto x = pi1 + pi2;  // pi + pi^2
  CHECK(x.pi_ord().bound == 1);
  CHECK(x.pi_ord().exact);

  auto sq = x * x;  // pi^2 + 2 pi^3 + pi^4
  CHECK(sq.pi_ord().bound == 2);
  CHECK(sq.pi_ord().exact);

  auto y = x - pi1;  // pi^2 remains
  CHECK(y.pi_ord().bound == 2);
  CHECK(y.pi_ord().exact);

  // Multiplying by p moves the order by exactly p-1 slots' worth.
  auto xp = x.mul_rational(Rat(5));
  CHECK(xp.pi_ord().bound == 1 + ctx.ram());
  CHECK(xp.pi_ord().exact);
}

TEST_CASE("division by p is exact and reversible") {
  for (unsigned long p : {2ul, 3ul, 7ul}) {
    PadicContext ctx = make_context(p, 18);
    Rat invp(1, static_cast<long>(p));
    auto x = PadicElement::from_rational(ctx, Rat(22, 7));
    long P0 = x.pi_precision();
    auto y = x;
    for (int i = 0; i < 6; ++i) y = y.mul_rational(invp);
    CHECK(y.pi_precision() == P0 - 6 * ctx.ram());  // shifted, nothing forgotten
    for (int i = 0; i < 6; ++i) y = y.mul_rational(Rat(static_cast<long>(p)));
    CHECK(y.pi_precision() == P0);
    CHECK(certified_agreement(x, y) >= P0);
  }
}

TEST_CASE("rebase preserves the value and the ball radius") {
  std::mt19937 rng(99);
  for (unsigned long p : {2ul, 3ul, 5ul}) {
    PadicContext ctx = make_context(p, 20);
    for (int trial = 0; trial < 60; ++trial) {
      Rat q = random_rational(rng, static_cast<long>(p), true);
      auto x = PadicElement::from_rational(ctx, q);
      long bound = x.pi_ord().bound;
      long P = x.pi_precision();
      for (long drop : {1L, 3L, 2 * ctx.ram() + 1}) {
        auto y = x.rebased(bound - drop);
        CHECK(y.shift() == bound - drop);
        CHECK(y.pi_ord().bound == bound);
        CHECK(y.pi_ord().exact);
        CHECK(y.pi_precision() >= P);
        CHECK(certified_agreement(x, y) >= P);
      }
    }
  }
}

TEST_CASE("clamped forgets high digits only") {
  PadicContext ctx = make_context(3, 30);
  auto x = PadicElement::from_rational(ctx, Rat(7, 5));
  auto y = x.clamped(9);
  CHECK(y.pi_precision() <= 9);
  CHECK(y.pi_precision() >= 8);  // slot granularity
  CHECK(certified_agreement(x, y) >= 8);
  // Clamping below every digit yields an informationless ball.
  auto z = x.clamped(0);
  CHECK(z.is_zero_ball());
}

TEST_CASE("inverse is certified and matches rational inverses") {
  std::mt19937 rng(4242);
  for (unsigned long p : {2ul, 3ul, 5ul, 7ul}) {
    PadicContext ctx = make_context(p, 22);
    long ram = ctx.ram();
    for (int trial = 0; trial < 80; ++trial) {
      Rat q = random_rational(rng, static_cast<long>(p), true);
      auto x = PadicElement::from_rational(ctx, q);
      auto y = x.inverse();
      auto prod = x * y;
      auto one = PadicElement::from_rational(ctx, Rat(1));
      CHECK(certified_agreement(prod, one) >= ram * 16);
      CHECK(certified_agreement(y, PadicElement::from_rational(ctx, Rat(1) / q)) >=
            ram * 16 - 3 * ram);
      // Inverse flips the exact order.
      CHECK(y.pi_ord().exact);
      CHECK(y.pi_ord().bound == -x.pi_ord().bound);
    }
    // Mixed-slot inverse: (1 + pi) * inverse(1 + pi) = 1.
    if (p > 2) {
      auto u = PadicElement::from_rational(ctx, Rat(1)) + PadicElement::pi_power(ctx, 1);
      auto v = u.inverse();
      CHECK(certified_agreement(u * v, PadicElement::from_rational(ctx, Rat(1))) >=
            ram * 16);
    }
  }
}

TEST_CASE("inverse requires a certified leading digit") {
  PadicContext ctx = make_context(5, 12);
  auto zero_ball = PadicElement::from_rational(ctx, Rat(1)) -
                   PadicElement::from_rational(ctx, Rat(1));
  CHECK_THROWS_AS(zero_ball.inverse(), PrecisionExhausted);
  auto no_digits = PadicElement::from_rational(ctx, Rat(7)).clamped(0);
  CHECK_THROWS_AS(no_digits.inverse(), PrecisionExhausted);
}

TEST_CASE("partial precision propagates soundly through products") {
  PadicContext ctx = make_context(3, 30);
  long ram = ctx.ram();
  auto y = PadicElement::from_rational(ctx, Rat(1, 3)).clamped(5);
  auto nine = PadicElement::from_rational(ctx, Rat(9));
  auto prod = y * nine;
  // 9 has order 2(p-1); the unknown tail of y is scaled up accordingly.
  CHECK(certified_agreement(prod, PadicElement::from_rational(ctx, Rat(3))) >=
        5 + 2 * ram);
  CHECK(prod.pi_precision() >= 5 + 2 * ram);
}

TEST_CASE("p=2 degenerate extension behaves like Z_2 with pi = -2") {
  PadicContext ctx = make_context(2, 40);
  CHECK(ctx.ram() == 1);
  auto pi = PadicElement::pi_power(ctx, 1);
  CHECK(certified_agreement(pi, PadicElement::from_rational(ctx, Rat(-2))) >= 40);
  auto x = PadicElement::from_rational(ctx, Rat(-7, 3));
  CHECK(x.pi_ord().bound == 0);
  auto inv = x.inverse();
  CHECK(certified_agreement(inv, PadicElement::from_rational(ctx, Rat(-3, 7))) >= 30);
  auto big = PadicElement::from_rational(ctx, Rat(1 << 10));
  CHECK(big.pi_ord().bound == 10);
  CHECK(big.pi_ord().exact);
}
