#include <doctest.h>

#include "polywitt/burnside.hpp"
#include "polywitt/polymap.hpp"

using namespace polywitt;

namespace {

PolyMap z2_norm() { return integer_norm_map(BurnsideRing::create(FiniteGroup::by_name("Z/2"))); }

}  // namespace

TEST_CASE("cross-effects") {
  auto z = make_integers();
  PolyMap sq = power_map(z, 2);
  Sampler s(1);
  for (int n = 0; n < 50; ++n) {
    Element a = z->sample(s), b = z->sample(s);
    std::vector<Element> args{a, b};
    CHECK(cross_effect(sq, args) == (a * b).scaled(2));
    std::vector<Element> one{a};
    CHECK(cross_effect(sq, one) == sq(a) - sq(z->zero()));
  }
  PolyMap n = z2_norm();
  CHECK(degree_test(n, 2, 200, s));
  std::vector<Element> ones(3, z->one());
  CHECK(diagonal_cross_effect(power_map(z, 3), 3, z->one()) == z->from_integer(6));
  CHECK(cross_effect(power_map(z, 3), ones) == z->from_integer(6));
}

TEST_CASE("degree tests") {
  auto z = make_integers();
  Sampler s(2);
  CHECK(degree_test(power_map(z, 3), 3, 100, s));
  auto fail = degree_test(power_map(z, 3), 2, 100, s);
  CHECK_FALSE(fail);
  CHECK(fail.witness.size() == 4);
  auto a2 = make_quadratic_ring(2);
  CHECK(degree_test(homomorphism(a2, a2, {a2->one(), a2->from_integer(2) - a2->basis_element(1)}), 1, 100, s));
}

TEST_CASE("homogeneous decomposition of the Z/2 norm over Z_(3)") {
  PolyMap f = localize_codomain(z2_norm(), 3);
  auto target = std::static_pointer_cast<const FreeRankRing>(f.codomain());
  auto pieces = homogeneous_decompose(f);
  REQUIRE(pieces.size() == 3);
  auto z = make_integers();
  Element x = target->basis_element(1);
  Element half_x = target->from_coordinates({Rational(0), Rational(1, 2)});
  Sampler s(4);
  for (int n = 0; n < 200; ++n) {
    Element a = z->sample(s), b = z->sample(s);
    Element ta = target->from_integer(a.as<Integer>());
    CHECK(pieces[0](a).is_zero());
    CHECK(pieces[1](a) == ta * (target->one() - half_x));
    CHECK(pieces[2](a) == half_x * ta * ta);
    CHECK(pieces[0](a) + pieces[1](a) + pieces[2](a) == f(a));
    CHECK(pieces[1](a) * pieces[2](b) == target->zero());
    CHECK(pieces[1](a * b) == pieces[1](a) * pieces[1](b));
    CHECK(pieces[2](a * b) == pieces[2](a) * pieces[2](b));
  }
  (void)x;
  // idempotence: decomposing phi_2 gives phi_2 back in degree 2
  auto again = homogeneous_decompose(pieces[2]);
  for (long a = -3; a <= 3; ++a) {
    Element e = z->from_integer(a);
    CHECK(again[2](e) == pieces[2](e));
    CHECK(again[1](e).is_zero());
    CHECK(again[0](e).is_zero());
  }
}

TEST_CASE("decomposition needs invertible factorials") {
  CHECK_THROWS_AS(homogeneous_decompose(z2_norm()), AlgebraError);
  try {
    homogeneous_decompose(z2_norm());
  } catch (const AlgebraError& e) {
    CHECK(e.code() == ErrorCode::NonInvertibleFactorial);
  }
  auto z3 = make_localization(3);
  PolyMap wrong(z3, z3, [](const Element& a) { return a.pow(3); }, 2, true, "cube");
  try {
    homogeneous_decompose(wrong);
    FAIL("expected DegreeViolation");
  } catch (const AlgebraError& e) {
    CHECK(e.code() == ErrorCode::DegreeViolation);
  }
  // a ring homomorphism decomposes as f = 0 + f
  auto pieces = homogeneous_decompose(identity_map(z3));
  Sampler s(8);
  for (int n = 0; n < 20; ++n) {
    Element a = z3->sample(s);
    CHECK(pieces[0](a).is_zero());
    CHECK(pieces[1](a) == a);
  }
}

TEST_CASE("composition and products") {
  auto z = make_integers();
  PolyMap sixth = compose(power_map(z, 2), power_map(z, 3));
  CHECK(sixth.degree_bound() == 6);
  for (long a = -4; a <= 4; ++a) CHECK(sixth(z->from_integer(a)) == z->from_integer(a).pow(6));
  PolyMap n = z2_norm();
  PolyMap nsq = compose(n, power_map(z, 2));
  CHECK(nsq.degree_bound() == 4);
  Sampler s(5);
  CHECK(degree_test(nsq, 4, 100, s));
  PolyMap prod = product(n, compose(structure_map(n.codomain()), power_map(z, 3)));
  CHECK(prod.degree_bound() == 5);
  CHECK(degree_test(prod, 5, 100, s));
  CHECK_THROWS_AS(compose(n, n), AlgebraError);
}

TEST_CASE("p-power congruences") {
  Sampler s(6);
  PolyMap n = z2_norm();
  CHECK(congruence_check(n, 3, 1, 200, s));
  CHECK(congruence_check(n, 3, 2, 50, s));
  CHECK(congruence_check(n, 5, 2, 50, s));

  auto z = make_integers();
  // f = x^2 with p = 3, k = 2 at a = 1, c = 1: f(10) = 100
  PolyMap sq = power_map(z, 2);
  Element correction = congruence_correction(sq, 3, 2, z->one(), z->one());
  // by hand: i1,i2 in {1,2}: (+9)f(2) + (-9)f(3) + (-9)f(3) + (+9)f(5) = 36 - 162 + 225 = 99
  CHECK(correction == z->from_integer(99));
  CHECK(congruence_check_at(sq, 3, 2, z->one(), z->one()));

  auto a2 = make_quadratic_ring(2);
  PolyMap h = homomorphism(a2, a2, {a2->one(), a2->from_integer(2) - a2->basis_element(1)});
  CHECK(congruence_check(h, 7, 1, 50, s));
}
