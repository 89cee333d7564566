#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>

#include "polywitt/divided_powers.hpp"

using namespace polywitt;

namespace {

using Tensor = std::vector<unsigned>;
using TensorSum = std::map<Tensor, Rational>;

std::shared_ptr<const FreeRankRing> diagonal_ring(std::size_t r) {
  // Z^r with idempotent basis
  std::vector<std::string> names;
  std::vector<Integer> constants(r * r * r, Integer(0)), unit(r, Integer(1));
  for (std::size_t i = 0; i < r; ++i) {
    names.push_back("e" + std::to_string(i + 1));
    constants[(i * r + i) * r + i] = 1;
  }
  return FreeRankRing::create(names, constants, unit, 0, "Z^" + std::to_string(r));
}

std::shared_ptr<const FreeRankRing> truncated_polynomials() {
  // Z[x]/(x^3) on 1, x, x^2
  std::vector<Integer> constants(27, Integer(0));
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      if (i + j < 3) constants[(i * 3 + j) * 3 + i + j] = 1;
  return FreeRankRing::create({"1", "x", "x^2"}, constants, {Integer(1), Integer(0), Integer(0)}, 0, "Z[x]/(x^3)");
}

std::vector<RingHandle> test_bases() {
  return {make_integers(), diagonal_ring(2), make_quadratic_ring(2, "A(Z/2)"), make_quadratic_ring(-1),
          diagonal_ring(3), truncated_polynomials()};
}

// Every tensor of a Sym element, with its coefficient.
TensorSum expand(const SymPower& p, const Element& x) {
  TensorSum out;
  const auto& coords = p.ring()->coordinates(x);
  for (std::size_t i = 0; i < coords.size(); ++i)
    if (coords[i] != 0)
      for (const auto& t : p.orbit(i)) out[t] += coords[i];
  return out;
}

bool matches(const SymPower& p, const TensorSum& full, const Element& x) {
  TensorSum expected = expand(p, x);
  TensorSum cleaned;
  for (const auto& [t, c] : full)
    if (c != 0) cleaned[t] = c;
  return cleaned == expected;
}

TensorSum tensor_power(const SymPower& p, const Element& a) {
  const auto coords = p.base_coordinates(a);
  TensorSum out;
  TensorSum partial{{Tensor{}, Rational(1)}};
  for (unsigned k = 0; k < p.degree(); ++k) {
    TensorSum next;
    for (const auto& [t, c] : partial)
      for (unsigned i = 0; i < coords.size(); ++i) {
        if (coords[i] == 0) continue;
        Tensor u = t;
        u.push_back(i);
        next[u] += c * coords[i];
      }
    partial = std::move(next);
  }
  return partial;
}

TensorSum tensor_product(const SymPower& p, const TensorSum& x, const TensorSum& y) {
  const std::size_t r = p.base_rank();
  TensorSum out;
  for (const auto& [t, c] : x)
    for (const auto& [u, d] : y) {
      TensorSum partial{{Tensor{}, c * d}};
      for (std::size_t k = 0; k < t.size(); ++k) {
        TensorSum next;
        for (const auto& [v, e] : partial)
          for (unsigned l = 0; l < r; ++l) {
            const Integer& s = p.base_constant(t[k], u[k], l);
            if (s == 0) continue;
            Tensor w = v;
            w.push_back(l);
            next[w] += e * Rational(s);
          }
        partial = std::move(next);
      }
      for (const auto& [v, e] : partial) out[v] += e;
    }
  return out;
}

// Sum over subsets S of positions of size |t|: t placed on S, u on the rest.
TensorSum shuffle_by_subsets(const TensorSum& x, const TensorSum& y, unsigned n, unsigned m) {
  TensorSum out;
  for (unsigned long mask = 0; mask < (1ul << (n + m)); ++mask) {
    if (static_cast<unsigned>(__builtin_popcountl(mask)) != n) continue;
    for (const auto& [t, c] : x)
      for (const auto& [u, d] : y) {
        Tensor w;
        std::size_t i = 0, j = 0;
        for (unsigned pos = 0; pos < n + m; ++pos) w.push_back(mask >> pos & 1 ? t[i++] : u[j++]);
        out[w] += c * d;
      }
  }
  return out;
}

}  // namespace

TEST_CASE("Sym^n rank and orbit-sum basis") {
  auto zz = diagonal_ring(2);
  auto p = SymPower::create(zz, 2);
  CHECK(p->ring()->rank() == 3);
  CHECK(p->multisets() == std::vector<Multiset>{{0, 0}, {0, 1}, {1, 1}});
  CHECK(p->ring()->basis() == std::vector<std::string>{"(e1,e1)", "(e1,e2)", "(e2,e2)"});
  for (std::size_t r = 1; r <= 3; ++r)
    for (unsigned n = 0; n <= 4; ++n)
      CHECK(SymPower::create(diagonal_ring(r), n)->ring()->rank() == static_cast<std::size_t>(
                                                                        binomial(Integer(r + n - 1), n).get_si()));
  CHECK(SymPower::create(make_integers(), 0)->ring()->rank() == 1);
}

TEST_CASE("Sym^n structure constants agree with explicit tensors") {
  for (const auto& base : test_bases())
    for (unsigned n = 0; n <= 3; ++n) {
      auto p = SymPower::create(base, n);
      const auto& ring = *p->ring();
      CAPTURE(ring.name());
      bool base_non_negative = true;
      for (std::size_t i = 0; i < p->base_rank(); ++i)
        for (std::size_t j = 0; j < p->base_rank(); ++j)
          for (std::size_t k = 0; k < p->base_rank(); ++k) base_non_negative &= p->base_constant(i, j, k) >= 0;
      if (base_non_negative)
        for (const Integer& c : ring.constants()) CHECK(c >= 0);
      for (std::size_t i = 0; i < ring.rank(); ++i)
        for (std::size_t j = 0; j < ring.rank(); ++j) {
          Element x = ring.basis_element(i), y = ring.basis_element(j);
          CHECK(matches(*p, tensor_product(*p, expand(*p, x), expand(*p, y)), x * y));
        }
      CHECK(matches(*p, tensor_power(*p, base->one()), ring.one()));
    }
}

TEST_CASE("gamma_n examples") {
  auto z = make_integers();
  Element g = gamma_n(z->from_integer(7), 2);
  CHECK(std::static_pointer_cast<const FreeRankRing>(g.ring())->coordinates(g) == std::vector<Rational>{49});

  auto q = make_quadratic_ring(2);
  Element gx = gamma_n(q->basis_element(1), 2);
  CHECK(std::static_pointer_cast<const FreeRankRing>(gx.ring())->coordinates(gx) == std::vector<Rational>{0, 0, 1});

  auto zz = diagonal_ring(2);
  Element g11 = gamma_n(zz->one(), 2);
  CHECK(std::static_pointer_cast<const FreeRankRing>(g11.ring())->coordinates(g11) ==
        std::vector<Rational>{1, 1, 1});
  CHECK(g11 == g11.ring()->one());
}

TEST_CASE("gamma_n is a^(x)n and multiplicative") {
  for (const auto& base : test_bases())
    for (unsigned n = 1; n <= 4; ++n) {
      auto p = SymPower::create(base, n);
      CAPTURE(p->ring()->name());
      Sampler sampler(n * 31 + 7);
      for (int s = 0; s < 20; ++s) {
        Element a = base->sample(sampler);
        CHECK(matches(*p, tensor_power(*p, a), p->gamma(a)));
      }
      auto result = gamma_multiplicativity_check(*p, 200);
      CAPTURE(result.detail);
      CHECK(result.passed);
    }
}

TEST_CASE("shuffle product agrees with enumerated shuffles") {
  for (const auto& base : test_bases()) {
    DividedPowers dp(base, 4);
    Sampler sampler(99);
    for (unsigned n = 0; n <= 4; ++n)
      for (unsigned m = 0; n + m <= 4; ++m) {
        auto& pn = *dp.level(n);
        auto& pm = *dp.level(m);
        Element x = pn.ring()->sample(sampler), y = pm.ring()->sample(sampler);
        CAPTURE(x.str());
        CAPTURE(y.str());
        CHECK(matches(*dp.level(n + m), shuffle_by_subsets(expand(pn, x), expand(pm, y), n, m), dp.shuffle(x, y)));
      }
  }
}

TEST_CASE("divided power relations") {
  auto z = make_integers();
  DividedPowers dp(z, 3);
  Element a = z->from_integer(5), b = z->from_integer(-2);
  CHECK(dp.shuffle(dp.gamma(a, 1), dp.gamma(a, 1)) == dp.level(2)->ring()->scale(2, dp.gamma(a, 2)));
  CHECK(dp.gamma(a + b, 2) ==
        dp.gamma(a, 2) + dp.shuffle(dp.gamma(a, 1), dp.gamma(b, 1)) + dp.gamma(b, 2));
  CHECK(dp.gamma(z->from_integer(15), 2) == dp.level(2)->ring()->scale(9, dp.gamma(a, 2)));

  for (const auto& base : test_bases())
    for (unsigned n = 0; n <= 4; ++n) {
      auto p = SymPower::create(base, n);
      auto result = divided_relations_check(*p, 40, n + 1);
      CAPTURE(p->ring()->name());
      CAPTURE(result.detail);
      CHECK(result.passed);
      CHECK(result.checked == 40);
    }
}

TEST_CASE("cross-effect expansion") {
  auto z = make_integers();
  DividedPowers dz(z, 4);
  Element a = z->from_integer(3);
  std::vector<Element> twice{a, a};
  CHECK(cross_effect_expansion(dz, twice) == dz.level(2)->ring()->scale(2, dz.gamma(a, 2)));
  std::vector<Element> once{a};
  CHECK(cross_effect_expansion(dz, once) == dz.gamma(a, 1));
  std::vector<Element> ones(3, z->one());
  CHECK(cross_effect_expansion(dz, ones) == dz.level(3)->ring()->scale(6, dz.gamma(z->one(), 3)));

  for (const auto& base : test_bases()) {
    DividedPowers dp(base, 4);
    for (unsigned n = 0; n <= 4; ++n) {
      auto result = cross_effect_expansion_exhaustive(dp, n);
      CAPTURE(base->name());
      CAPTURE(result.detail);
      CHECK(result.passed);
      CHECK(result.checked == static_cast<std::size_t>(std::pow(dp.level(1)->base_rank(), n)));
    }
  }
}

TEST_CASE("extending homogeneous maps") {
  auto z = make_integers();
  auto z3 = make_localization(3);
  PolyMap square(z, z3, [z3](const Element& a) { return z3->from_integer(a.as<Integer>() * a.as<Integer>()); }, 2,
                 true, "sq");
  auto sym = SymPower::create(z, 2);
  PolyMap bar = extend_homogeneous(square, sym);
  CHECK(bar(sym->gamma(z->from_integer(4))) == z3->from_integer(16));
  auto check = extension_check(square, bar, *sym, 200);
  CAPTURE(check.detail);
  CHECK(check.passed);

  // mixed generator gamma_1(e1) gamma_1(e2) over Z x Z goes to cr_2
  auto zz = diagonal_ring(2);
  auto q = make_quadratic_ring(0, "Z[t]/t^2");
  PolyMap sq2 = compose(power_map(q, 2), homomorphism(zz, q, {q->one(), q->basis_element(1)}));
  PolyMap sq2_local = localize_codomain(sq2, 3);
  DividedPowers dp(zz, 2);
  PolyMap mixed = extend_homogeneous(sq2_local, dp.level(2));
  Element e1 = zz->basis_element(0), e2 = zz->basis_element(1);
  Element generator = dp.shuffle(dp.gamma(e1, 1), dp.gamma(e2, 1));
  std::vector<Element> pair{e1, e2};
  CHECK(mixed(generator) == cross_effect(sq2_local, pair));
  CHECK(extension_check(sq2_local, mixed, *dp.level(2), 200).passed);

  // squaring into Z itself: 2 is not invertible
  PolyMap square_z(z, z, [z](const Element& a) { return a * a; }, 2, true, "sq");
  CHECK_THROWS_WITH_AS(extend_homogeneous(square_z, 2), doctest::Contains("not invertible"), AlgebraError);
  // x + x^2 is not homogeneous
  PolyMap mixed_degree(z, z3, [z3](const Element& a) {
    const Integer& x = a.as<Integer>();
    return z3->from_integer(x + x * x);
  }, 2, false, "g");
  try {
    extend_homogeneous(mixed_degree, 2);
    FAIL("expected NotHomogeneous");
  } catch (const AlgebraError& e) {
    CHECK(e.code() == ErrorCode::NotHomogeneous);
  }
}

TEST_CASE("extending the quadratic part of the Z/2 Burnside norm") {
  // N(a) = a + (x/2)(a^2 - a) on Z with values in Z_(3) (x) A(Z/2)
  auto z = make_integers();
  auto target = make_quadratic_ring(2)->localized(3);
  Element x = target->basis_element(1);
  PolyMap norm(z, target, [target, x](const Element& a) {
    const Integer& n = a.as<Integer>();
    return target->from_integer(n) + divide_or_throw(target->scale(n * n - n, x), target->from_integer(2));
  }, 2, true, "N");
  auto pieces = homogeneous_decompose(norm);
  auto sym = SymPower::create(z, 2);
  PolyMap bar = extend_homogeneous(pieces[2], sym);
  for (long n = -4; n <= 4; ++n) {
    Element a = z->from_integer(n);
    Element expected = divide_or_throw(target->scale(Integer(n * n), x), target->from_integer(2));
    CHECK(bar(sym->gamma(a)) == expected);
  }
  CHECK(extension_check(pieces[2], bar, *sym, 200).passed);
}
