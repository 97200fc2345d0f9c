#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hyperint/series.hpp"

using namespace hyperint;

namespace {

GeneratorConfig horn() {
  return make_config({{1, 0, 0, 1, 1}, {0, 1, 0, -1, 1}, {0, 0, 1, 1, -1}});
}

RatVec rv(std::initializer_list<const char*> xs) {
  RatVec v;
  for (const char* s : xs) v.push_back(rat_from_string(s));
  return v;
}

}  // namespace

TEST_CASE("Horn expansion: frozen coefficient and term count") {
  GeneratorConfig cfg = horn();
  RatVec v = rv({"-1/2", "-1/2", "-1/2", "0", "0"});
  RatVec beta = config_beta(cfg, v);
  SeriesTruncation F = expand_F(cfg, v, beta, 3);
  CHECK(F.terms.size() == 10);
  // l = (-1,1,-1,1,0): [-1/2]_{-1} [-1/2]_1 [-1/2]_{-1} [0]_1 [0]_0 = 1/2
  IntVec key = {-1, 1, -1, 1, 0};
  REQUIRE(F.terms.count(key) == 1);
  CHECK(F.terms.at(key) == Rat(1, 2));
  // constant term is 1
  CHECK(F.terms.at(IntVec{0, 0, 0, 0, 0}) == Rat(1));
  // no stored coefficient is zero
  for (const auto& [l, c] : F.terms) CHECK(c != 0);
  CHECK(euler_check(cfg, F));
}

TEST_CASE("integrality verification at good and bad primes") {
  GeneratorConfig cfg = horn();
  RatVec v = rv({"-1/2", "-1/2", "-1/2", "0", "0"});
  SeriesTruncation F = expand_F(cfg, v, config_beta(cfg, v), 6);

  // p = 3 ≡ 1 (mod 2): certified instance, so integral
  IntegralityReport r3 = verify_integrality(F, 3);
  CHECK(r3.integral);
  CHECK(r3.offenders.empty());
  CHECK(r3.min_ord >= Rat(0));
  CHECK(r3.term_count == static_cast<long>(F.terms.size()));

  // p = 2 divides the denominator of v: not p-integral input
  CHECK_THROWS_AS(verify_integrality(F, 2), NotPIntegral);

  // coefficient valuations agree with the digit formula, factor by factor
  for (const auto& [l, c] : F.terms) {
    Valuation total = Valuation::fin(Rat(0));
    for (std::size_t j = 0; j < v.size(); ++j)
      total = total + bracket_ord_digits(v[j], l[j].get_si(), 3);
    CHECK(total == ord_p(c, 3));
  }
}

TEST_CASE("two-thirds Horn instance has a non-integral coefficient at p = 7") {
  GeneratorConfig cfg = horn();
  RatVec v = rv({"-2/3", "-2/3", "-2/3", "0", "0"});
  SeriesTruncation F = expand_F(cfg, v, config_beta(cfg, v), 5);
  IntegralityReport r = verify_integrality(F, 7);
  CHECK(!r.integral);
  REQUIRE(!r.offenders.empty());
  CHECK(r.min_ord < Rat(0));
  // the offender at l = (-3,3,-3,3,0) has ord exactly -1
  bool found = false;
  for (const auto& off : r.offenders)
    if (off.l == IntVec{-3, 3, -3, 3, 0}) {
      found = true;
      CHECK(off.ord == Rat(-1));
    }
  CHECK(found);
}

TEST_CASE("contiguity: interior face membership keeps the identity nontrivial") {
  GeneratorConfig cfg = horn();
  RatVec v = rv({"-1/2", "-1/2", "-1/2", "0", "0"});
  RatVec beta = config_beta(cfg, v);
  for (long k = 0; k < cfg.N; ++k) {
    ContiguityReport rep = contiguity_check(cfg, v, beta, k, 4);
    CHECK(rep.pass);
    CHECK(rep.face_member);  // beta is interior, every generator is on the face
    if (k < 3) CHECK(!rep.derivative_zero);
  }
}

TEST_CASE("contiguity: off-face direction forces a vanishing derivative") {
  GeneratorConfig cfg = make_config({{1, 0}, {0, 1}});
  RatVec v = rv({"0", "-1/2"});
  RatVec beta = config_beta(cfg, v);  // (0, -1/2): face is the e2 ray
  ContiguityReport rep = contiguity_check(cfg, v, beta, 0, 3);
  CHECK(rep.pass);
  CHECK(!rep.face_member);
  CHECK(rep.derivative_zero);
  // along the face the derivative is genuinely nonzero
  ContiguityReport rep2 = contiguity_check(cfg, v, beta, 1, 3);
  CHECK(rep2.pass);
  CHECK(rep2.face_member);
  CHECK(!rep2.derivative_zero);
  CHECK(rep2.compared > 0);
}

TEST_CASE("contiguity propagates NotMember") {
  GeneratorConfig cfg = horn();
  RatVec v = rv({"-1/2", "-1/2", "-1/2", "0", "0"});
  CHECK_THROWS_AS(contiguity_check(cfg, v, rv({"1/3", "0", "0"}), 0, 3), NotMember);
}

TEST_CASE("box operators annihilate the expansion") {
  GeneratorConfig cfg = horn();
  for (const char* vs : {"-1/2", "-2/3", "-1/5"}) {
    RatVec v = {rat_from_string(vs), rat_from_string(vs), rat_from_string(vs), Rat(0), Rat(0)};
    RatVec beta = config_beta(cfg, v);
    for (const IntVec& rel :
         {IntVec{-1, 1, -1, 1, 0}, IntVec{-1, -1, 1, 0, 1}, IntVec{-2, 0, 0, 1, 1}}) {
      BoxReport rep = box_annihilation_check(cfg, v, beta, rel, 6);
      CHECK(rep.pass);
      CHECK(rep.compared > 0);
    }
  }
  RatVec v = rv({"-1/2", "-1/2", "-1/2", "0", "0"});
  CHECK_THROWS_AS(box_annihilation_check(cfg, v, config_beta(cfg, v), {1, 0, 0, 0, 0}, 5),
                  InvalidInstance);
  CHECK_THROWS_AS(box_annihilation_check(cfg, v, config_beta(cfg, v), {-1, 1, -1, 1, 0}, 0),
                  WindowUnderflow);
}

TEST_CASE("euler check fails on a tampered series") {
  GeneratorConfig cfg = horn();
  RatVec v = rv({"-1/2", "-1/2", "-1/2", "0", "0"});
  SeriesTruncation F = expand_F(cfg, v, config_beta(cfg, v), 2);
  REQUIRE(euler_check(cfg, F));
  SeriesTruncation bad = F;
  bad.terms[IntVec{1, 0, 0, 0, 0}] = Rat(1);  // not a relation shift: breaks the identity
  CHECK(!euler_check(cfg, bad));
}

TEST_CASE("certify: the two frozen Horn instances") {
  GeneratorConfig cfg = horn();

  Certification good = certify(cfg, rv({"-1/2", "-1/2", "-1/2", "0", "0"}), 2, 1, {3, 5}, 4);
  CHECK(good.certified);
  CHECK(good.orbit.period() == 1);
  CHECK(good.orbit.face_stable);
  REQUIRE(good.conditions.size() == 1);
  CHECK(good.conditions[0].maximal);
  REQUIRE(good.empirical.size() == 2);
  for (const auto& pe : good.empirical) CHECK(pe.report.integral);

  Certification bad = certify(cfg, rv({"-2/3", "-2/3", "-2/3", "0", "0"}), 3, 1, {7, 13}, 5);
  CHECK(!bad.certified);
  CHECK(bad.orbit.face_stable);
  REQUIRE(bad.conditions.size() == 1);
  CHECK(!bad.conditions[0].maximal);
  // the failure is corroborated empirically at p = 7
  bool nonintegral_seen = false;
  for (const auto& pe : bad.empirical)
    if (pe.p == 7 && !pe.report.integral) nonintegral_seen = true;
  CHECK(nonintegral_seen);
}

TEST_CASE("certify with a period-2 orbit checks both states") {
  GeneratorConfig cfg = horn();
  Certification c = certify(cfg, rv({"-2/3", "-2/3", "-2/3", "0", "0"}), 3, 2, {2}, 4);
  CHECK(c.orbit.period() == 2);
  REQUIRE(c.conditions.size() == 2);
  // state 0 = (-2/3,...) fails, state 1 = (-1/3,...) is maximal
  CHECK(!c.conditions[0].maximal);
  CHECK(c.conditions[1].maximal);
  CHECK(!c.certified);
  REQUIRE(c.empirical.size() == 2);
}
