#include <doctest.h>

#include <bit>

#include "polywitt/burnside.hpp"

using namespace polywitt;

namespace {

// Independent oracle: subgroups by testing every subset, classes by conjugation.
std::size_t subgroup_classes_by_subsets(const FiniteGroup& g) {
  std::vector<Mask> subgroups;
  for (Mask m = 1; m < (Mask(1) << g.order()); m += 2)
    if (g.is_subgroup(m)) subgroups.push_back(m);
  std::vector<bool> used(subgroups.size(), false);
  std::size_t classes = 0;
  for (std::size_t i = 0; i < subgroups.size(); ++i) {
    if (used[i]) continue;
    ++classes;
    for (std::size_t x = 0; x < g.order(); ++x) {
      Mask c = g.conjugate(subgroups[i], static_cast<GroupElement>(x));
      for (std::size_t j = 0; j < subgroups.size(); ++j)
        if (subgroups[j] == c) used[j] = true;
    }
  }
  return classes;
}

Integer c(long n, unsigned long k) { return binomial(Integer(n), k); }

std::vector<Integer> a4_formula(long m) {
  // coefficients of 1, [A4/A3], [A4/Z2], [A4/e]
  return {Integer(m), Integer(m * m - m), c(m, 2), Integer(m) * c(m - 1, 2) + 2 * c(m, 4)};
}

// coefficients of [A4/A4], [A4/A3], [A4/Z2], [A4/e]; the [A4/V4] term must vanish
std::vector<Integer> by_basis(const BurnsideRing& a, const Element& x) {
  REQUIRE(a.coefficient(x, 3) == 0);
  return {a.coefficient(x, 4), a.coefficient(x, 2), a.coefficient(x, 1), a.coefficient(x, 0)};
}

}  // namespace

TEST_CASE("groups and subgroup classes") {
  CHECK(FiniteGroup::by_name("A4")->order() == 12);
  CHECK(FiniteGroup::by_name("D27")->order() == 54);
  CHECK_THROWS_AS(FiniteGroup::by_name("D28"), AlgebraError);
  CHECK_THROWS_AS(FiniteGroup::by_name("S5"), AlgebraError);

  SubgroupLattice z2(FiniteGroup::by_name("Z/2"));
  CHECK(z2.size() == 2);
  SubgroupLattice a4(FiniteGroup::by_name("A4"));
  REQUIRE(a4.size() == 5);
  CHECK(a4.class_name(0) == "e");
  CHECK(a4.class_name(1) == "Z/2");
  CHECK(a4.class_name(2) == "A3");
  CHECK(a4.class_name(3) == "V4");
  CHECK(a4.class_name(4) == "A4");
  SubgroupLattice d3(FiniteGroup::by_name("D3"));
  CHECK(d3.size() == 4);

  for (const char* name : {"Z/2", "C9", "D3", "D5", "A4", "S3", "S4", "D2", "D6"}) {
    auto g = FiniteGroup::by_name(name);
    CAPTURE(name);
    CHECK(SubgroupLattice(g).size() == subgroup_classes_by_subsets(*g));
  }
  // D27 has tau(27) + sigma(27) = 44 subgroups
  CHECK(SubgroupLattice(FiniteGroup::by_name("D27")).subgroup_count() == 44);
}

TEST_CASE("table of marks is lower-triangular with positive diagonal") {
  for (const char* name : {"A4", "D9", "S4"}) {
    auto a = BurnsideRing::create(FiniteGroup::by_name(name));
    for (std::size_t h = 0; h < a->classes(); ++h) {
      CHECK(a->mark(h, h) > 0);
      for (std::size_t k = h + 1; k < a->classes(); ++k) CHECK(a->mark(h, k) == 0);
    }
    // mark of G/e at e is |G|
    CHECK(a->mark(0, 0) == static_cast<long>(a->group().order()));
  }
}

TEST_CASE("Burnside multiplication") {
  auto z2 = BurnsideRing::create(FiniteGroup::by_name("Z/2"));
  Element x = z2->ring()->basis_element(1);
  CHECK(x * x == x.scaled(2));
  CHECK(z2->ring()->basis()[1] == "x");

  auto d3 = BurnsideRing::create(FiniteGroup::by_name("D3"));
  const auto& l = d3->lattice();
  // classes: e, Z/2, C3, D3
  CHECK(d3->transitive(2) * d3->transitive(1) == d3->transitive(0));

  // marks are multiplicative on all basis pairs
  for (const char* name : {"A4", "D9"}) {
    auto a = BurnsideRing::create(FiniteGroup::by_name(name));
    for (std::size_t i = 0; i < a->classes(); ++i)
      for (std::size_t j = 0; j < a->classes(); ++j) {
        auto mi = a->marks_of(a->transitive(i)), mj = a->marks_of(a->transitive(j));
        auto mp = a->marks_of(a->transitive(i) * a->transitive(j));
        for (std::size_t k = 0; k < a->classes(); ++k) CHECK(mp[k] == mi[k] * mj[k]);
      }
  }
  (void)l;
}

TEST_CASE("restriction and transfer") {
  auto a4 = BurnsideRing::create(FiniteGroup::by_name("A4"));
  Inclusion a3 = Inclusion::of_subgroup(a4, a4->lattice().representative(2));
  Element r = a3.restrict(a4->transitive(2));
  CHECK(r == a3.small()->ring()->one() + a3.small()->transitive(0));

  auto z2 = BurnsideRing::create(FiniteGroup::by_name("Z/2"));
  Inclusion e = Inclusion::of_subgroup(z2, 1);
  CHECK(e.transfer(e.small()->ring()->one()) == z2->ring()->basis_element(1));

  for (unsigned p : {3U, 5U, 7U}) {
    auto dp = BurnsideRing::create(FiniteGroup::dihedral(p));
    Inclusion z = Inclusion::of_subgroup(dp, Mask(1) | (Mask(1) << p));  // <s>
    Element value = z.restrict(z.transfer(z.small()->ring()->one()));
    Element expected = z.small()->ring()->one() + z.small()->ring()->basis_element(1).scaled((p - 1) / 2);
    CHECK(value == expected);
  }

  // mark oracles: phi_L(res x) = phi_L(x); phi_K(tr y) = sum over (G/H)^K of phi_{g^-1 K g}(y)
  for (const char* name : {"A4", "D9", "S4"}) {
    auto a = BurnsideRing::create(FiniteGroup::by_name(name));
    const FiniteGroup& g = a->group();
    for (std::size_t hc = 1; hc + 1 < a->classes(); ++hc) {
      Inclusion inc = Inclusion::of_subgroup(a, a->lattice().representative(hc));
      Sampler s(hc);
      for (int n = 0; n < 10; ++n) {
        Element x = a->ring()->sample(s);
        Element rx = inc.restrict(x);
        for (std::size_t l = 0; l < inc.small()->classes(); ++l)
          CHECK(inc.small()->marks_of(rx)[l] == a->mark_at(x, inc.push(inc.small()->lattice().representative(l))));
        Element y = inc.small()->ring()->sample(s);
        Element ty = inc.transfer(y);
        for (std::size_t k = 0; k < a->classes(); ++k) {
          Mask km = a->lattice().representative(k);
          Integer total = 0;
          for (std::size_t x0 = 0; x0 < g.order(); ++x0) {
            Mask conj = g.conjugate(km, g.inv(static_cast<GroupElement>(x0)));
            if ((conj & ~inc.image()) == 0) total += inc.small()->mark_at(y, inc.pull(conj));
          }
          CHECK(a->marks_of(ty)[k] * static_cast<long>(inc.small()->group().order()) == total);
        }
        // Frobenius reciprocity
        CHECK(inc.transfer(inc.restrict(x) * y) == x * inc.transfer(y));
      }
    }
  }
}

TEST_CASE("norm from A3 to A4 matches the closed form") {
  auto a4 = BurnsideRing::create(FiniteGroup::by_name("A4"));
  Inclusion a3 = Inclusion::of_subgroup(a4, a4->lattice().representative(2));
  for (long m = 0; m <= 8; ++m) {
    Element y = a3.small()->ring()->from_integer(m);
    CAPTURE(m);
    CHECK(by_basis(*a4, a3.norm(y, NormRoute::BruteForce)) == a4_formula(m));
    CHECK(by_basis(*a4, a3.norm(y, NormRoute::Marks)) == a4_formula(m));
  }
  for (long m = -4; m <= 6; ++m) {
    Element y = a3.small()->ring()->from_integer(m);
    CHECK(by_basis(*a4, a3.norm(y, NormRoute::Interpolation)) == a4_formula(m));
  }
  CHECK(by_basis(*a4, a3.norm(a3.small()->ring()->from_integer(4))) ==
        std::vector<Integer>{4, 12, 6, 14});
}

TEST_CASE("norm routes agree on genuine and virtual sets") {
  struct Case {
    const char* group;
    std::size_t sub_class;
  };
  for (Case cs : {Case{"D3", 1}, Case{"A4", 2}, Case{"A4", 3}, Case{"S3", 2}, Case{"D5", 1}}) {
    auto a = BurnsideRing::create(FiniteGroup::by_name(cs.group));
    Inclusion inc = Inclusion::of_subgroup(a, a->lattice().representative(cs.sub_class));
    CAPTURE(cs.group);
    CAPTURE(cs.sub_class);
    Sampler s(3, 2);
    std::size_t rounds = inc.index() >= 5 ? 3 : 10;
    for (std::size_t n = 0; n < rounds; ++n) {
      std::vector<Integer> coeffs(inc.small()->classes());
      for (auto& c : coeffs) c = s.integer(0, inc.index() >= 5 ? 1 : 2);
      Element y = inc.small()->from_coefficients(coeffs);
      Element brute = inc.norm(y, NormRoute::BruteForce);
      CHECK(inc.norm(y, NormRoute::Marks) == brute);
      if (inc.index() <= 4) CHECK(inc.norm(y, NormRoute::Interpolation) == brute);
    }
    if (inc.index() <= 4) {
      Sampler v(5, 3);
      for (int n = 0; n < 20; ++n) {
        Element y = inc.small()->ring()->sample(v);
        CHECK(inc.norm(y, NormRoute::Marks) == inc.norm(y, NormRoute::Interpolation));
      }
    }
  }
}

TEST_CASE("norms are multiplicative and polynomial of degree the index") {
  auto d3 = BurnsideRing::create(FiniteGroup::by_name("D3"));
  Inclusion z2 = Inclusion::of_subgroup(d3, d3->lattice().representative(1));
  PolyMap n = norm_map(z2);
  Sampler s(17);
  CHECK(degree_test(n, 3, 100, s));
  CHECK_FALSE(degree_test(n, 2, 100, s));
  CHECK(multiplicativity_test(n, 100, s));
  CHECK(n(z2.small()->ring()->one()) == d3->ring()->one());
}

TEST_CASE("cyclic norms from the trivial group") {
  for (unsigned p : {2U, 3U, 5U}) {
    auto cp = BurnsideRing::create(FiniteGroup::cyclic(p));
    PolyMap n = integer_norm_map(cp);
    auto z = make_integers();
    for (long a = -6; a <= 6; ++a) {
      Integer ap = power(a, p);
      Element expected = cp->ring()->from_integers({Integer(a), (ap - a) / p});
      CHECK(n(z->from_integer(a)) == expected);
    }
  }
}

TEST_CASE("unit groups") {
  auto count = [](const char* name) { return burnside_units(*BurnsideRing::create(FiniteGroup::by_name(name))).size(); };
  CHECK(count("e") == 2);
  CHECK(count("Z/2") == 4);
  CHECK(count("D3") == 8);
  CHECK(count("D5") == 8);
  CHECK(count("D9") == 16);
  CHECK(count("D25") == 16);

  auto z2 = BurnsideRing::create(FiniteGroup::by_name("Z/2"));
  auto units = burnside_units(*z2);
  Element one = z2->ring()->one(), x = z2->ring()->basis_element(1);
  for (const Element& u : {one, -one, x - one, one - x}) CHECK(std::find(units.begin(), units.end(), u) != units.end());
  for (const auto& u : units) CHECK(u * u == one);

  auto d3 = BurnsideRing::create(FiniteGroup::by_name("D3"));
  auto d3_units = burnside_units(*d3);
  Element w = d3->ring()->one() - d3->transitive(2);
  CHECK(std::find(d3_units.begin(), d3_units.end(), w) != d3_units.end());
  CHECK(std::find(d3_units.begin(), d3_units.end(), -w) != d3_units.end());
}

TEST_CASE("the A4 norm violates the mod-3 congruence") {
  auto a4 = BurnsideRing::create(FiniteGroup::by_name("A4"));
  Inclusion a3 = Inclusion::of_subgroup(a4, a4->lattice().representative(2));
  PolyMap n = norm_map(a3);
  auto z = a3.small()->ring();
  CHECK(n.degree_bound() == 4);
  auto verdict = congruence_check_at(n, 3, 1, z->zero(), z->one());
  CHECK_FALSE(verdict);
  // N(4) - 1 = 3 + 12[A4/A3] + 6[A4/Z2] + 14[A4/e] is not divisible by 3
  Element n4 = n(z->from_integer(4)) - a4->ring()->one();
  CHECK_FALSE(divides(3, n4));
  // a norm of degree 2 < 3 satisfies it
  Sampler s(9);
  CHECK(congruence_check(norm_map(Inclusion::of_subgroup(BurnsideRing::create(FiniteGroup::by_name("Z/2")), 1)), 3, 1, 100, s));
}
