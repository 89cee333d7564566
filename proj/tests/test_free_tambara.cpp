#include <doctest.h>

#include "polywitt/free_tambara.hpp"

using namespace polywitt;

namespace {

Monomial mono(std::initializer_list<std::uint32_t> e) { return Monomial(e); }

void require_report(const TambaraReport& report) {
  for (const auto& c : report.checks) {
    CAPTURE(c.name);
    CAPTURE(c.result.detail);
    CHECK(c.result.passed);
  }
}

// u, ubar, w with w fixed and y restricting to w
FreeTambaraHandle uw_y() { return FreeTambara::create(PresheafPair::free_pairs({"u"}).with_fixed({"w"}).with_y("y", "w")); }

}  // namespace

TEST_CASE("presheaf pairs are validated") {
  PresheafPair bad = PresheafPair::free_pairs({"u"});
  bad.tau = {1, 1};
  CHECK_THROWS_AS(FreeTambara::create(bad), AlgebraError);
  PresheafPair p = PresheafPair::free_pairs({"u"});
  p.Y = {"y"};
  p.res = {0};  // u is not fixed
  try {
    FreeTambara::create(p);
    FAIL("expected NotCompatible");
  } catch (const AlgebraError& e) {
    CHECK(e.code() == ErrorCode::NotCompatible);
  }
}

TEST_CASE("multiplication table examples") {
  auto f = FreeTambara::create(PresheafPair::free_pairs({"u"}));
  auto x = f->underlying();
  Element u = x->variable("u"), ubar = x->variable("ubar");
  Element tu = f->transfer(u);
  CHECK(f->transfer(ubar) == tu);
  // (u + ubar)(u + ubar) = (u^2 + ubar^2) + u ubar
  Element square = tu * tu;
  FreeTopElement expected;
  expected.s2.emplace(mono({1, 1}), Integer(1));
  expected.s3.emplace(mono({2, 0}), Integer(1));
  CHECK(square == f->make(expected));
  CHECK(f->format(square) == "tr(u^2 + u*ubar)");

  // the unit
  for (const auto& b : f->basis_up_to(3)) CHECK(f->one() * b == b);

  // m k mbar . m' k' mbar' with trivial monomials and k = k' = w
  auto g = FreeTambara::create(PresheafPair{}.with_fixed({"w"}));
  Element tw = g->transfer(g->underlying()->variable("w"));
  FreeTopElement twice;
  twice.s2.emplace(mono({2}), Integer(2));
  CHECK(tw * tw == g->make(twice));

  // (h + hbar)(h' + hbar') with h h' non-fixed and h hbar' non-fixed
  auto two = FreeTambara::create(PresheafPair::free_pairs({"u", "v"}));
  auto x2 = two->underlying();
  Element product = two->transfer(x2->variable("u")) * two->transfer(x2->variable("v"));
  CHECK(product == two->transfer(x2->variable("u") * x2->variable("v") + x2->variable("u") * x2->variable("vbar")));
  CHECK(two->parts(product).s2.empty());
  CHECK(two->parts(product).s3.size() == 2);
}

TEST_CASE("structure maps of A[X;Y]") {
  auto f = uw_y();
  auto x = f->underlying();
  Element u = x->variable("u"), ubar = x->variable("ubar"), w = x->variable("w");
  // res N(m) = m mbar
  Element m = u * u * w;
  CHECK(f->restrict(f->norm(m)) == m * f->tau()(m));
  CHECK(f->restrict(f->y_generator(0)) == w);
  // tr(1) is the fixed monomial 1, and res tr(1) = 2
  Element t1 = f->transfer(x->one());
  CHECK(f->parts(t1).s2.size() == 1);
  CHECK(f->restrict(t1) == x->from_integer(2));
  // N(u + ubar) = N(u) + N(ubar) + tr(u u)
  auto p = FreeTambara::create(PresheafPair::free_pairs({"u"}));
  auto xp = p->underlying();
  Element n = p->norm(xp->variable("u") + xp->variable("ubar"));
  FreeTopElement expected;
  expected.s1.emplace(mono({1}), Integer(2));
  expected.s3.emplace(mono({2, 0}), Integer(1));
  CHECK(n == p->make(expected));
  CHECK(p->format(n) == "2*N(u) + tr(u^2)");
  // N on integers: N(k) = k + C(k, 2) tr(1)
  for (long k = -3; k <= 3; ++k) {
    Element nk = f->norm(x->from_integer(k));
    CHECK(nk == f->from_integer(k) + t1.scaled(binomial(Integer(k), 2)));
    CHECK(f->restrict(nk) == x->from_integer(k * k));
  }
}

TEST_CASE("A[X;Y] ring axioms and Tambara suite") {
  std::vector<PresheafPair> pairs{
      PresheafPair::free_pairs({"u"}),
      PresheafPair{}.with_fixed({"w", "z"}).with_y("y", "w"),
      PresheafPair::free_pairs({"u", "v"}),
      PresheafPair::free_pairs({"u"}).with_fixed({"w", "z"}).with_y("y", "z"),
  };
  for (const auto& p : pairs) {
    auto f = FreeTambara::create(p);
    CAPTURE(f->name());
    auto axioms = free_ring_axioms(*f, 2);
    CAPTURE(axioms.detail);
    CHECK(axioms.passed);
    require_report(check_tambara(f->tambara(), 100));
    CHECK_FALSE(is_cohomological(f->tambara()));
  }
}

TEST_CASE("adjunction: identity and norms into Burnside") {
  auto f = uw_y();
  auto x = f->underlying();
  Z2Tambara self = f->tambara();
  std::vector<Element> alpha{x->variable(0), x->variable(1), x->variable(2)};
  std::vector<Element> beta{f->y_generator(0)};
  TambaraMorphism id = adjunction_extend(f, self, alpha, beta);
  for (const auto& b : f->basis_up_to(3)) CHECK(id.beta(b) == b);
  Sampler sampler(5);
  for (int i = 0; i < 50; ++i) {
    Element a = x->sample(sampler);
    CHECK(id.alpha(a) == a);
  }

  // X = {a, abar}, Y empty, into the Burnside functor of e <= Z/2
  auto g = FreeTambara::create(PresheafPair::free_pairs({"a"}));
  Z2Tambara burnside = burnside_tambara(2, 0);
  for (long k = -2; k <= 3; ++k) {
    Element image = burnside.A->from_integer(k);
    TambaraMorphism ext = adjunction_extend(g, burnside, {image, image}, {});
    Element naabar = g->norm(g->underlying()->variable("a"));
    CHECK(ext.beta(naabar) == burnside.N(image));
    require_report(check_morphism(g->tambara(), burnside, ext, 100));
  }
}

TEST_CASE("adjunction is multiplicative on random pairs") {
  auto f = uw_y();
  Z2Tambara burnside = burnside_tambara(2, 0);
  auto a = burnside.A, b = burnside.B;
  // alpha(u) = alpha(ubar) = 2, alpha(w) = 3, beta(y) = 1 + [Z/2/e]
  TambaraMorphism ext = adjunction_extend(f, burnside, {a->from_integer(2), a->from_integer(2), a->from_integer(3)},
                                          {b->one() + std::static_pointer_cast<const FreeRankRing>(b)->basis_element(1)});
  Sampler sampler(17);
  for (int i = 0; i < 500; ++i) {
    Element u = f->sample(sampler), v = f->sample(sampler);
    CHECK(ext.beta(free_mul(u, v)) == ext.beta(u) * ext.beta(v));
  }
}

TEST_CASE("adjunction round trips on a coefficient box") {
  auto f = uw_y();
  Z2Tambara burnside = burnside_tambara(2, 0);
  auto a = burnside.A;
  auto b = std::static_pointer_cast<const FreeRankRing>(burnside.B);
  const auto basis = f->basis_up_to(2);
  std::size_t extensions = 0;
  for (long au = -1; au <= 1; ++au)
    for (long aw = -1; aw <= 1; ++aw)
      for (long c0 = -1; c0 <= 1; ++c0)
        for (long c1 = -1; c1 <= 1; ++c1) {
          std::vector<Element> alpha{a->from_integer(au), a->from_integer(au), a->from_integer(aw)};
          std::vector<Element> beta{b->from_integers({Integer(c0), Integer(c1)})};
          if (burnside.res(beta[0]) != alpha[2]) {
            CHECK_THROWS_AS(adjunction_extend(f, burnside, alpha, beta), AlgebraError);
            continue;
          }
          TambaraMorphism ext = adjunction_extend(f, burnside, alpha, beta);
          Generators back = restrict_to_generators(*f, ext);
          CHECK(back.alpha == alpha);
          CHECK(back.beta == beta);
          TambaraMorphism again = adjunction_extend(f, burnside, back.alpha, back.beta);
          for (const auto& e : basis) CHECK(again.beta(e) == ext.beta(e));
          ++extensions;
        }
  CHECK(extensions > 0);

  // a non-equivariant alpha
  auto z = make_integers();
  auto zz = make_product(z, z);
  Z2Tambara swap = from_involution_ring(zz, Involution::factor_swap(zz));
  auto g = FreeTambara::create(PresheafPair::free_pairs({"u"}));
  Element e1 = zz->pair(z->one(), z->zero());
  try {
    adjunction_extend(g, swap, {e1, e1}, {});
    FAIL("expected NotEquivariant");
  } catch (const AlgebraError& e) {
    CHECK(e.code() == ErrorCode::NotEquivariant);
  }
}

TEST_CASE("cohomological resolution") {
  auto z = make_integers();
  Z2Tambara trivial = from_involution_ring(z, Involution::trivial(z));
  auto fixed = std::static_pointer_cast<const FixedSubring>(trivial.B);
  Resolution r = cohomological_resolution(trivial, {z->one()}, {fixed->one()});
  CHECK(r.S->variables() == std::vector<std::string>{"u", "ubar", "b"});
  CHECK(r.onto.alpha(r.S->variable("u")) == z->one());
  CHECK(r.onto.alpha(r.S->variable("ubar")) == z->one());
  CHECK(is_cohomological(r.fixed));
  require_report(check_tambara(r.fixed, 100));
  require_report(check_morphism(r.fixed, trivial, r.onto, 500));

  auto zz = make_product(z, z);
  Z2Tambara swap = from_involution_ring(zz, Involution::factor_swap(zz));
  auto swap_fixed = std::static_pointer_cast<const FixedSubring>(swap.B);
  Resolution rs = cohomological_resolution(swap, {zz->pair(z->one(), z->zero())},
                                           {swap_fixed->lift(zz->pair(z->from_integer(2), z->from_integer(2)))});
  require_report(check_morphism(rs.fixed, swap, rs.onto, 200));

  try {
    cohomological_resolution(burnside_tambara(2, 0), {}, {});
    FAIL("expected NotCohomological");
  } catch (const AlgebraError& e) {
    CHECK(e.code() == ErrorCode::NotCohomological);
  }
}
