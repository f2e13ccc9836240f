#include "family.hpp"
#include "stz/errors.hpp"
#include "stz/fe_engine.hpp"

#include <doctest.h>

using namespace stz;

namespace {

LaurentPoly P(const char* s) { return LaurentPoly::parse(s); }

FormalProduct::ExpMap M(std::initializer_list<std::pair<const Exponent, BigInt>> l) { return l; }

}  // namespace

TEST_CASE("from_motive") {
  CHECK(from_motive_zeta(P("-1=1,0=-1")).zeta() == M({{-1, 1}, {0, -1}}));
  CHECK(from_motive_zeta(binom_power(2)).zeta() == M({{2, 1}, {1, -2}, {0, 1}}));
  CHECK(from_motive_Z(P("-1=1,0=-1")).bigz() == M({{-1, 1}, {0, -1}}));
  CHECK(from_motive_Z(mul(P("-1=1,0=-1"), P("-1=1,0=-1"))).bigz() ==
        M({{-2, 1}, {-1, -2}, {0, 1}}));
  CHECK(from_motive_zeta(LaurentPoly()).empty());
}

TEST_CASE("reflect_zeta") {
  // f = 1, D = 0: zeta_M(-s) = zeta_M(s)^{-1} (2 sin pi s)^{4-4g}
  auto p = reflect_zeta(LaurentPoly::constant(1), 0);
  CHECK(p.zeta() == M({{0, -1}}));
  CHECK(p.sine() == M({{0, 2}}));
  CHECK(p.s2().empty());
  // f = x - 1, D = 1: sine contributions cancel
  p = reflect_zeta(P("1=1,0=-1"), 1);
  CHECK(p.zeta() == M({{1, 1}, {0, -1}}));
  CHECK(p.sine().empty());
}

TEST_CASE("reflect_Z for x^-1 - 1") {
  const auto p = reflect_Z(P("-1=1,0=-1"), -1);
  CHECK(p.bigz() == M({{0, 1}, {-1, -1}}));
  CHECK(p.s2() == M({{0, 1}, {2, -1}}));
  CHECK(p.sine().empty());
  // f = 1, D = 0: Z_M(1-s) = Z_M(s) S_2(s)^{2-2g} S_2(s+1)^{2-2g}
  const auto q = reflect_Z(LaurentPoly::constant(1), 0);
  CHECK(q.bigz() == M({{0, 1}}));
  CHECK(q.s2() == M({{0, 1}, {1, 1}}));
}

TEST_CASE("canonicalize ladder") {
  FormalProduct p;
  p.mul_s2(1, 1);
  auto c = canonicalize(p);
  CHECK(c.s2() == M({{0, 1}}));
  CHECK(c.sine() == M({{0, -1}}));

  FormalProduct q;
  q.mul_s2(0, 1).mul_s2(2, -1);
  c = canonicalize(q);
  CHECK(c.s2().empty());
  CHECK(c.sine_exponent() == 2);

  FormalProduct r;
  r.mul_s2(-2, 1);
  c = canonicalize(r);
  CHECK(c.s2() == M({{0, 1}}));
  CHECK(c.sine_exponent() == 2);
}

TEST_CASE("canonicalize is idempotent and multiplicative") {
  std::vector<FormalProduct> samples;
  for (Exponent j = -3; j <= 3; ++j) {
    FormalProduct p;
    p.mul_s2(j, j + 7).mul_sine(j, 2 * j - 1).mul_zeta(j, 3).mul_Z(-j, 1);
    samples.push_back(p);
  }
  for (const auto& a : samples) {
    const auto ca = canonicalize(a);
    CHECK(ca.is_canonical());
    CHECK(canonicalize(ca) == ca);
    for (const auto& b : samples) {
      CHECK(canonicalize(a * b) == canonicalize(canonicalize(a) * canonicalize(b)));
      CHECK(quotient(a * b, b) == ca);
    }
  }
}

TEST_CASE("s_motive_factor") {
  // The factor for x^-1 - 1 is (2 sin pi s)^{(2-2g)(-2)}; it enters the
  // functional equation with C = -1.
  const auto s = s_motive_factor(P("-1=1,0=-1"));
  CHECK(s.s2().empty());
  CHECK(s.sine() == M({{0, -2}}));
  CHECK(s_motive_factor(mul(P("-1=1,0=-1"), P("-1=1,0=-1"))).empty());
  CHECK(s_motive_factor(LaurentPoly::constant(1)).s2() == M({{0, 2}}));
}

TEST_CASE("theorem 2 examples") {
  CHECK(verify_theorem2(binom_power(5), 5).holds);
  CHECK(verify_theorem2(binom_power(3), 3).residual.empty());
  CHECK_FALSE(verify_theorem2(binom_power(2), 2).holds);
  CHECK(verify_theorem3(binom_power(2), 2).holds);
  const auto v = verify_theorem2(P("1=1,0=-1"), 2);
  CHECK_FALSE(v.holds);
  CHECK_FALSE(*v.coefficient_condition);
  CHECK(*v.consistent);
  CHECK_FALSE(verify_theorem2(P("2=1"), 0).residual.empty());
}

TEST_CASE("theorem 3 examples") {
  auto v = verify_theorem3(LaurentPoly::constant(1), 0);
  CHECK(v.holds);
  CHECK(v.rhs_canonical.sine_exponent() == 2);
  v = verify_theorem3(binom_power(4), 4);
  CHECK(v.holds);
  CHECK(v.rhs_canonical.sine().empty());
}

TEST_CASE("Z functional equation") {
  CHECK(verify_Z_fe(P("-1=1,0=-1")).holds);
  CHECK(verify_Z_fe(mul(P("-1=1,0=-1"), P("-1=1,0=-1"))).holds);
  CHECK(verify_Z_fe(LaurentPoly::constant(1)).holds);
  CHECK_THROWS_AS(verify_Z_fe(P("2=1,1=2")), DomainError);
  CHECK_THROWS_AS(verify_Z_fe(LaurentPoly()), DomainError);
}

TEST_CASE("derive_base_zeta_fe") {
  const auto v = derive_base_zeta_fe();
  CHECK(v.holds);
  CHECK(v.lhs_canonical.sine() == M({{0, 2}}));
  RewriteRules no_collapse;
  no_collapse.collapse_sine_shifts = false;
  CHECK_FALSE(derive_base_zeta_fe(no_collapse).holds);
  RewriteRules no_ladder;
  no_ladder.s2_ladder = false;
  CHECK_FALSE(derive_base_zeta_fe(no_ladder).holds);
}

TEST_CASE("reflection is an involution and the sine exponent is 2 f(1)") {
  testing::for_each_small_poly([](const LaurentPoly& f) {
    if (f.coeffs().size() > 3) return;  // keeps the sweep short
    REQUIRE(reflect_zeta(f, 0).sine_exponent() == 2 * eval_at_one(f));
    for (Exponent d : {-2, 0, 1, 3}) {
      // zeta_{M(f)}(D - (D - s)): reflect the reflected product term-wise.
      const auto once = reflect_zeta(f, d);
      FormalProduct twice;
      for (const auto& [k, e] : once.zeta()) {
        FormalProduct t = reflect_zeta(LaurentPoly::monomial(k), d);
        twice *= t.pow(e);
      }
      FormalProduct sine_part;
      for (const auto& [j, q] : once.sine()) sine_part.mul_sine(j, q);
      // (2 sin pi(D - s)) collapses to (2 sin pi s) under an even exponent.
      twice *= sine_part;
      REQUIRE(canonicalize(twice) == canonicalize(from_motive_zeta(f)));
    }
  });
}

TEST_CASE("to_string") {
  CHECK(FormalProduct().to_string() == "1");
  FormalProduct p;
  p.mul_zeta(1, 1).mul_s2(0, 1).mul_sine(1, 2);
  CHECK(p.to_string() == "zeta_M(s-1)^1 * S_2(s)^[(2-2g)*1] * (2 sin pi(s+1))^[(2-2g)*2]");
}
