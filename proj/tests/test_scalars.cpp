#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "ellgen/cohomology.hpp"
#include "ellgen/zfrac.hpp"

using namespace ellgen;

TEST_CASE("rational text round trip") {
  CHECK(to_text(rat(-6, 4)) == "-3/2");
  CHECK(parse_rat("-3/2") == rat(-3, 2));
  CHECK(parse_rat("0.25") == rat(1, 4));
  CHECK(parse_rat("7") == Rat(7));
  CHECK_THROWS_AS(inverse(Rat(0)), NotInvertible);
}

TEST_CASE("laurent arithmetic and exact division") {
  using L = Laurent<Rat>;
  const L a = L::monomial(1, Rat(1)) - L::monomial(-1, Rat(1));  // z^{1/2} - z^{-1/2}
  const L b = L::monomial(2, Rat(1)) - L::monomial(-2, Rat(1));  // z - z^{-1}
  const L prod = a * a * (L::monomial(0, Rat(3)) + L::monomial(4, Rat(1)));
  auto q = prod.divide_exact(a);
  REQUIRE(q.has_value());
  CHECK(*q * a == prod);
  CHECK(b.divide_exact(a).has_value());  // z - 1/z = (z^{1/2}-z^{-1/2})(z^{1/2}+z^{-1/2})
  CHECK_FALSE(a.divide_exact(b).has_value());
  CHECK(std::abs(a.evaluate(Complex(2, 0)) - Complex(1.5, 0)) < 1e-15);
}

TEST_CASE("zfrac field operations") {
  const ZFrac a1(ZFrac::denominator_factor(1));
  const ZFrac x = ZFrac(1) / a1;
  CHECK(x * a1 == ZFrac(1));
  const ZFrac a2(ZFrac::denominator_factor(2));
  const ZFrac s = ZFrac(1) / a2 + ZFrac::z_power(1) / a1;
  // common denominator cancels nothing but evaluation agrees
  const Complex Z(1.3, 0.4);
  const Complex expect = 1.0 / (Z * Z - 1.0 / (Z * Z)) + Z / (Z - 1.0 / Z);
  CHECK(std::abs(s.evaluate(Z) - expect) < 1e-13);
  // (z - 1/z)/(z^{1/2}-z^{-1/2}) reduces to a Laurent polynomial
  auto red = (a2 / a1).to_laurent();
  REQUIRE(red.has_value());
  CHECK(*red == ZFrac::Poly::monomial(1, Rat(1)) + ZFrac::Poly::monomial(-1, Rat(1)));
  CHECK_FALSE((ZFrac(1) / a1).to_laurent().has_value());
  const ZFrac bad(ZFrac::Poly::monomial(0, Rat(1)) + ZFrac::Poly::monomial(2, Rat(1)));
  CHECK_THROWS_AS(bad.inverse(), NotInvertible);  // 1 + z is not a unit
}

TEST_CASE("nilpotent algebra") {
  auto alg = make_algebra({{"h", 2}, {"p", 4}}, 4);
  auto h = NilPoly<Rat>::variable(alg, "h");
  auto p = NilPoly<Rat>::variable(alg, "p");
  CHECK((h * h * h).is_zero());
  CHECK((h * p).is_zero());
  auto e = h.exp();
  CHECK(e.coeff({2, 0}) == rat(1, 2));
  auto one = NilPoly<Rat>(alg, Rat(1));
  auto u = one + h + p;
  CHECK(u * u.inverse() == one);
  CHECK(h.exp() * (-h).exp() == one);
  CHECK_THROWS_AS(one.exp(), DomainError);
  CHECK_THROWS_AS(NilPoly<Rat>(alg).inverse(), NotInvertible);
  CHECK_THROWS_AS(h.grade_part(3), DomainError);
  CHECK((h * h + p).psi_scale(Rat(3)) == (h * h + p).scaled(Rat(9)));
  auto other = make_algebra({{"x", 2}}, 2);
  CHECK_THROWS_AS(h * NilPoly<Rat>::variable(other, "x"), IncompatibleRing);
}

TEST_CASE("fibre integration") {
  auto base = make_algebra({{"h", 2}}, 2);
  auto comp = component_algebra(base, {{"a", 2}}, 2);
  PushForward pf;
  pf.fiber_dim = 2;
  pf.table[{1}] = NilPoly<Rat>(base, Rat(1));
  pf.table[{2}] = NilPoly<Rat>::variable(base, "h").scaled(Rat(-1));
  auto a = NilPoly<Rat>::variable(comp, "a");
  auto h = lift_to_component(NilPoly<Rat>::variable(base, "h"), comp);
  auto one = NilPoly<Rat>(comp, Rat(1));
  auto out = fiber_integrate(one + a + h * a + a * a, pf, base);
  CHECK(out == NilPoly<Rat>(base, Rat(1)));  // 1 -> 0, a -> 1, h*a -> h, a^2 -> -h
  PushForward partial;
  partial.fiber_dim = 2;
  partial.table[{1}] = NilPoly<Rat>(base, Rat(1));
  CHECK_THROWS_AS(fiber_integrate(a * a, partial, base), ModelError);
}
