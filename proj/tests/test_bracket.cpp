#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hyperint/bracket.hpp"

using namespace hyperint;

namespace {

// Independent oracle: valuation of the bracket by direct product expansion,
// written against the definition only (no digit machinery).
Valuation oracle_bracket_ord(const Rat& z, long l, unsigned long p) {
  Rat value(1);
  if (l > 0) {
    for (long i = 1; i <= l; ++i) value *= z + Rat(i);
    value = Rat(1) / value;
  } else {
    for (long i = 0; i > l; --i) value *= z + Rat(i);
  }
  return ord_p(value, p);
}

Rat R(const std::string& s) { return rat_from_string(s); }

}  // namespace

TEST_CASE("rational parsing and formatting round-trip") {
  CHECK(rat_to_string(R("-1/2")) == "-1/2");
  CHECK(rat_to_string(R("4")) == "4/1");
  CHECK(rat_to_string(R("6/4")) == "3/2");
  CHECK(rat_to_string(R("-6/-4")) == "3/2");
  CHECK_THROWS_AS(R("1/0"), InvalidInstance);
  CHECK_THROWS_AS(R("a"), InvalidInstance);
  CHECK_THROWS_AS(R(""), InvalidInstance);
  CHECK_THROWS_AS(R("1.5"), InvalidInstance);
}

TEST_CASE("ord_p on rationals, including the frozen example ord_5(8/15) = -1") {
  CHECK(ord_p(R("8/15"), 5) == Valuation::fin(Rat(-1)));
  CHECK(ord_p(R("8/15"), 2) == Valuation::fin(Rat(3)));
  CHECK(ord_p(R("8/15"), 3) == Valuation::fin(Rat(-1)));
  CHECK(ord_p(R("8/15"), 7) == Valuation::fin(Rat(0)));
  CHECK(ord_p(Rat(0), 5).infinite);
  CHECK(is_p_integral(R("8/15"), 2));
  CHECK(!is_p_integral(R("8/15"), 5));
}

TEST_CASE("valuation ordering with infinity") {
  Valuation inf = Valuation::inf();
  Valuation a = Valuation::fin(Rat(3));
  CHECK(a < inf);
  CHECK(!(inf < a));
  CHECK(inf >= a);
  CHECK((a + inf).infinite);
  CHECK(min(a, inf) == a);
}

TEST_CASE("frozen bracket and Pochhammer values") {
  CHECK(bracket(R("-1/2"), 0) == Rat(1));
  // [-1/2]_2 = 1/((1/2)(3/2)) = 4/3
  CHECK(bracket(R("-1/2"), 2) == R("4/3"));
  // (1/2)_2 = (1/2)(3/2) = 3/4
  CHECK(pochhammer(R("1/2"), 2) == R("3/4"));
  // [-1/2]_{-2} = (-1/2)(-3/2) = 3/4
  CHECK(bracket(R("-1/2"), -2) == R("3/4"));
  // undefined: zero factor (z = -1, l = 3 hits z+1 = 0)
  CHECK_THROWS_AS(bracket(Rat(-1), 3), UndefinedSymbol);
  CHECK_THROWS_AS(pochhammer(Rat(1), -1), UndefinedSymbol);
  // [0]_l = 1/l!, [-1]_{-l} = (-1)^l l!
  CHECK(bracket(Rat(0), 4) == R("1/24"));
  CHECK(bracket(Rat(-1), -4) == Rat(24));
  CHECK(bracket(Rat(-1), -3) == Rat(-6));
  // product form
  CHECK(bracket_vector({R("-1/2"), Rat(0)}, {2, 1}) == R("4/3"));
}

TEST_CASE("reflection identity [z]_l = (-1)^l (-z)_{-l} on a grid") {
  std::vector<Rat> zs = {R("-1/2"), R("2/3"), R("-7/3"), Rat(2), Rat(0), R("-5/4"), R("13/60")};
  for (const Rat& z : zs) {
    for (long l = -8; l <= 8; ++l) {
      if (!bracket_defined(z, l)) {
        CHECK(!pochhammer_defined(Rat(-z), -l));
        continue;
      }
      Rat lhs = bracket(z, l);
      Rat rhs = pochhammer(Rat(-z), -l);
      if (l % 2 != 0) rhs = -rhs;
      CHECK(lhs == rhs);
    }
  }
}

TEST_CASE("adjacent-index recurrence [z]_{l-1} = [z]_l * (z+l)") {
  std::vector<Rat> zs = {R("-1/2"), R("2/3"), R("-7/3"), R("5/6")};
  for (const Rat& z : zs)
    for (long l = -6; l <= 6; ++l)
      CHECK(bracket(z, l - 1) == bracket(z, l) * (z + Rat(l)));
}

TEST_CASE("digit stream of p-integral rationals") {
  // -1/2 in Z_3 is 1 + 1*3 + 1*9 + ... (all digits 1)
  DigitStream d(R("-1/2"), 3);
  for (std::size_t i = 0; i < 10; ++i) CHECK(d.digit(i) == 1);
  // 7 in Z_2: 1,1,1,0,0,...
  DigitStream e(Rat(7), 2);
  CHECK(e.digit(0) == 1);
  CHECK(e.digit(1) == 1);
  CHECK(e.digit(2) == 1);
  CHECK(e.digit(3) == 0);
  // 4/3 in Z_2: 4/3 -> 2/3 -> 1/3 -> -1/3 -> -2/3 -> -1/3 ... digits 0,0,1,1,0,1,0,1,...
  DigitStream f(R("4/3"), 2);
  CHECK(f.digit(0) == 0);
  CHECK(f.digit(1) == 0);
  CHECK(f.digit(2) == 1);
  CHECK(f.digit(3) == 1);
  CHECK(f.digit(4) == 0);
  CHECK(f.digit(5) == 1);
  CHECK(f.digit(6) == 0);
  CHECK(f.digit(7) == 1);
  CHECK_THROWS_AS(DigitStream(R("1/3"), 3), NotPIntegral);
}

TEST_CASE("frozen digit-formula values") {
  // [0]_6 = 1/720, ord_2 = -4
  CHECK(bracket_ord_digits(Rat(0), 6, 2) == Valuation::fin(Rat(-4)));
  // z = -7/3, l = 1, p = 2: [z]_1 = 1/(z+1) = -3/4, ord_2 = -2 (a digit run
  // of length 2: the run extends past the top digit of l by zero padding).
  CHECK(bracket_ord_digits(R("-7/3"), 1, 2) == Valuation::fin(Rat(-2)));
  CHECK(oracle_bracket_ord(R("-7/3"), 1, 2) == Valuation::fin(Rat(-2)));
  CHECK(bracket_ord_digits(Rat(0), 0, 7) == Valuation::fin(Rat(0)));
  // a vanishing product on the l < 0 side has valuation +infinity
  CHECK(bracket_ord_digits(Rat(3), -5, 7).infinite);
  CHECK_THROWS_AS(bracket_ord_digits(Rat(-1), 3, 5), UndefinedSymbol);
  CHECK_THROWS_AS(bracket_ord_digits(R("1/3"), 2, 3), NotPIntegral);
}

TEST_CASE("digit formula matches the naive product oracle on a dense grid") {
  std::vector<unsigned long> primes = {2, 3, 5, 7};
  std::vector<Rat> zs = {Rat(0),      Rat(-1),     Rat(3),      R("-1/2"),  R("2/3"),
                         R("-7/3"),   R("-2/3"),   R("13/60"),  R("-59/60"), R("1/7"),
                         R("-22/7"),  R("5/6"),    R("-5/6"),   R("-1/4")};
  for (unsigned long p : primes) {
    for (const Rat& z : zs) {
      if (!is_p_integral(z, p)) continue;
      for (long l = -40; l <= 40; ++l) {
        if (!bracket_defined(z, l)) continue;
        CHECK(bracket_ord_digits(z, l, p) == oracle_bracket_ord(z, l, p));
      }
    }
  }
}

TEST_CASE("pi-scaled logarithmic lower bound holds and is exactly decided") {
  // direct sanity of the decision procedure: x >= -log_p(y) iff p^{-x} <= y
  PiLogBound b = pi_scaled_bracket_bound(8, 2);  // y = 16
  CHECK(b.admits(Valuation::fin(Rat(-4))));    // 2^4 <= 16
  CHECK(!b.admits(Valuation::fin(Rat(-5))));   // 2^5 > 16
  CHECK(!b.admits(Valuation::fin(Rat(-9, 2))));  // 2^9 = 512 > 16^2 = 256
  CHECK(b.admits(Valuation::fin(Rat(-7, 2))));   // 2^7 = 128 <= 256
  CHECK(b.admits(Valuation::inf()));

  std::vector<unsigned long> primes = {2, 3, 5, 13};
  std::vector<Rat> zs = {Rat(0), Rat(-1), R("-1/2"), R("-7/3"), R("2/3"), R("13/60"), R("-5/6")};
  for (unsigned long p : primes)
    for (const Rat& z : zs) {
      if (!is_p_integral(z, p)) continue;
      for (long l = -60; l <= 60; ++l) {
        if (l == 0 || !bracket_defined(z, l)) continue;
        CHECK(pi_scaled_bracket_floor_ok(bracket_ord_digits(z, l, p), l, p));
      }
    }
}

TEST_CASE("digit sums and factorial valuation cross-check") {
  // ord_p(n!) = (n - s_p(n))/(p-1) checked against [0]_n = 1/n!
  for (unsigned long p : {2ul, 3ul, 5ul}) {
    for (long n = 0; n <= 60; ++n) {
      Rat expect = Rat(-(Int(n) - digit_sum(Int(n), p))) / Rat(static_cast<long>(p) - 1);
      CHECK(bracket_ord_digits(Rat(0), n, p) == Valuation::fin(expect));
    }
  }
}
