#include <doctest.h>

#include "polywitt/tambara.hpp"

using namespace polywitt;

namespace {

void require_report(const TambaraReport& report) {
  for (const auto& c : report.checks) {
    CAPTURE(c.name);
    CAPTURE(c.result.detail);
    CHECK(c.result.passed);
  }
}

Z2Tambara uubar() {
  auto r = make_polynomial_ring({"u", "ubar"});
  return from_involution_ring(r, Involution::variable_swap(r, {1, 0}));
}

}  // namespace

TEST_CASE("fixed-point Tambara functors") {
  auto z = make_integers();
  Z2Tambara trivial = from_involution_ring(z, Involution::trivial(z));
  require_report(check_tambara(trivial, 200));
  CHECK(is_cohomological(trivial));
  Element three = z->from_integer(3);
  CHECK(trivial.res(trivial.tr(three)) == z->from_integer(6));
  CHECK(trivial.res(trivial.N(three)) == z->from_integer(9));

  auto zz = make_product(z, z);
  Z2Tambara swap = from_involution_ring(zz, Involution::factor_swap(zz));
  require_report(check_tambara(swap, 200));
  Element ab = zz->pair(z->from_integer(2), z->from_integer(5));
  CHECK(swap.res(swap.N(ab)) == zz->pair(z->from_integer(10), z->from_integer(10)));

  Z2Tambara t = uubar();
  require_report(check_tambara(t, 200));
  CHECK(is_cohomological(t));
  auto r = std::static_pointer_cast<const PolynomialRing>(t.A);
  Element u = r->variable(0), ub = r->variable(1);
  CHECK(t.res(t.N(u)) == u * ub);
  CHECK(t.res(t.tr(u)) == u + ub);
}

TEST_CASE("Burnside Tambara functors") {
  Z2Tambara b = burnside_tambara(3, 0);
  require_report(check_tambara(b, 300));
  CHECK_FALSE(is_cohomological(b));
  auto a2 = std::static_pointer_cast<const FreeRankRing>(b.B);
  Element x = a2->basis_element(1);
  CHECK(b.tr(b.A->one()) == x);
  for (long a = -5; a <= 5; ++a)
    CHECK(b.N(b.A->from_integer(a)) == a2->from_integer(a) + x.scaled(binomial(Integer(a), 2)));

  for (auto [p, j] : {std::pair{3U, 1U}, {5U, 1U}, {3U, 2U}}) {
    CAPTURE(p);
    CAPTURE(j);
    Z2Tambara d = burnside_tambara(p, j);
    require_report(check_tambara(d, 60));
    CHECK_FALSE(is_cohomological(d));
  }
  CHECK_THROWS_AS(burnside_tambara(3, 4), AlgebraError);
}

TEST_CASE("Witt Tambara functors") {
  Z2Tambara t = uubar();
  for (std::size_t m : {2UL, 3UL}) {
    Z2Tambara w = witt_tambara(t, 3, m);
    require_report(check_tambara(w, 40));
    require_report(witt_ghost_check(t, w, 3, m, 40));
  }

  auto z = make_integers();
  Z2Tambara trivial = from_involution_ring(z, Involution::trivial(z));
  Z2Tambara wt = witt_tambara(trivial, 5, 2);
  auto wa = std::static_pointer_cast<const WittRing>(wt.A);
  auto wb = std::static_pointer_cast<const WittRing>(wt.B);
  Sampler s(21);
  for (int n = 0; n < 30; ++n) {
    Element a = wa->sample(s);
    // N = squaring and tr = 2 in the cohomological constant case
    CHECK(wt.res(wt.N(a)) == a * a);
    CHECK(wt.res(wt.tr(a)) == a.scaled(2));
  }

  Z2Tambara b = burnside_tambara(3, 0);
  Z2Tambara wbur = witt_tambara(b, 3, 2);
  require_report(check_tambara(wbur, 40));
  auto trunc = TruncationSet::p_typical(3, 2);
  auto wbur_a = std::static_pointer_cast<const WittRing>(wbur.A);
  auto wbur_b = std::static_pointer_cast<const WittRing>(wbur.B);
  for (long a = -4; a <= 4; ++a) {
    Element n = wbur.N(wbur_a->wrap(teichmuller(b.A->from_integer(a), trunc)));
    CHECK(n == wbur_b->wrap(teichmuller(b.N(b.A->from_integer(a)), trunc)));
  }

  auto z9 = make_modular(9);
  CHECK_THROWS_AS(witt_tambara(from_involution_ring(z9, Involution::trivial(z9)), 3, 2), AlgebraError);
}

TEST_CASE("morphisms and ghost naturality") {
  // Z[u, ubar] -> Z with u, ubar -> 1 and 2 in turn, on the fixed-point functors
  Z2Tambara source = uubar();
  auto z = make_integers();
  Z2Tambara target = from_involution_ring(z, Involution::trivial(z));
  auto r = std::static_pointer_cast<const PolynomialRing>(source.A);
  auto fixed_source = std::static_pointer_cast<const FixedSubring>(source.B);
  auto fixed_target = std::static_pointer_cast<const FixedSubring>(target.B);
  std::vector<Element> point{z->from_integer(2), z->from_integer(2)};
  Z2Tambara::Map eval = [z, point](const Element& a) { return evaluate(a.as<PolyTerms>(), point, z); };
  TambaraMorphism f{eval, [=](const Element& b) { return fixed_target->lift(eval(fixed_source->include(b))); }};
  require_report(check_morphism(source, target, f, 100));

  const unsigned p = 3;
  const std::size_t m = 2;
  Z2Tambara ws = witt_tambara(source, p, m), wt = witt_tambara(target, p, m);
  auto levelwise = [](const RingHandle& from, const RingHandle& to, Z2Tambara::Map g) -> Z2Tambara::Map {
    auto wf = std::static_pointer_cast<const WittRing>(from);
    auto wt2 = std::static_pointer_cast<const WittRing>(to);
    return [wf, wt2, g](const Element& x) {
      std::vector<Element> c;
      for (const auto& e : wf->unwrap(x).coords) c.push_back(g(e));
      return wt2->wrap(WittVector(wt2->truncation(), wt2->base(), c));
    };
  };
  TambaraMorphism wf{levelwise(ws.A, wt.A, f.alpha), levelwise(ws.B, wt.B, f.beta)};
  require_report(check_morphism(ws, wt, wf, 30));
}

TEST_CASE("twisted ghost maps") {
  Z2Tambara b = burnside_tambara(3, 0);
  auto a2 = std::static_pointer_cast<const FreeRankRing>(b.B);
  Element x = a2->basis_element(1);
  Sampler s(22);
  for (int n = 0; n < 50; ++n) {
    Element x0 = a2->sample(s), x1 = a2->sample(s);
    std::vector<Element> v{x0, x1};
    CHECK(twisted_ghost(b, 3, 0, v) == x0);
    std::vector<Element> w{a2->zero(), x1};
    CHECK(twisted_ghost(b, 3, 1, w) == (a2->one() + x) * x1);
  }

  // cohomological: the twisted ghost is the ordinary one
  Z2Tambara t = uubar();
  auto trunc = TruncationSet::p_typical(5, 3);
  for (int n = 0; n < 50; ++n) {
    std::vector<Element> v{t.B->sample(s), t.B->sample(s), t.B->sample(s)};
    auto g = ghost(WittVector(trunc, t.B, v));
    for (std::size_t j = 0; j < 3; ++j) CHECK(twisted_ghost(t, 5, j, v) == g[j]);
  }
}

TEST_CASE("twisted Witt rings") {
  auto w = std::make_shared<TwistedWittRing>(burnside_tambara(3, 0), 3, 2);
  auto a2 = w->base().B;
  Element one = w->wrap({a2->one(), a2->zero()});
  CHECK(one + one == w->wrap({a2->from_integer(2), a2->from_integer(-2)}));
  CHECK(w->leading(1) == a2->one() + std::static_pointer_cast<const FreeRankRing>(a2)->basis_element(1));

  Sampler s(23);
  CHECK(twisted_ghost_homomorphism_check(*w, 100, s));
  for (int n = 0; n < 30; ++n) {
    Element u = w->sample(s), v = w->sample(s);
    CHECK(u + w->zero() == u);
    CHECK(u * w->one() == u);
    auto again = w->solve(TwistedOp::Mul, w->unwrap(u), w->unwrap(v), false);
    CHECK(std::get<std::vector<Element>>(again) == w->unwrap(u * v));
  }

  // cohomological base: the twisted ring agrees with Witt vectors
  Z2Tambara t = uubar();
  auto tw = std::make_shared<TwistedWittRing>(t, 3, 2);
  auto trunc = TruncationSet::p_typical(3, 2);
  for (int n = 0; n < 30; ++n) {
    std::vector<Element> u{t.B->sample(s), t.B->sample(s)}, v{t.B->sample(s), t.B->sample(s)};
    CHECK(tw->unwrap(tw->wrap(u) + tw->wrap(v)) == witt_add(WittVector(trunc, t.B, u), WittVector(trunc, t.B, v)).coords);
    CHECK(tw->unwrap(tw->wrap(u) * tw->wrap(v)) == witt_mul(WittVector(trunc, t.B, u), WittVector(trunc, t.B, v)).coords);
  }

  // replacing tr(1) by 4 makes c_1 = 5, and (1,0) + (1,0) needs 5 z = -6
  auto z = make_integers();
  Z2Tambara degenerate = from_involution_ring(z, Involution::trivial(z));
  degenerate.tr = [&](const Element&) { return degenerate.B->from_integer(4); };
  TwistedWittRing bad(degenerate, 3, 2);
  auto fail = bad.solve(TwistedOp::Add, std::vector<Element>{degenerate.B->one(), degenerate.B->zero()},
                        std::vector<Element>{degenerate.B->one(), degenerate.B->zero()});
  REQUIRE(std::holds_alternative<NotSolvable>(fail));
  CHECK(std::get<NotSolvable>(fail).j == 1);
}

TEST_CASE("psi identity over dihedral towers") {
  CHECK(psi_check(3, 1, 100));
  CHECK(psi_check(5, 1, 50));
  CHECK(psi_check(3, 2, 30));
}
