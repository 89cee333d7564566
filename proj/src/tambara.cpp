#include "polywitt/tambara.hpp"

#include <mutex>

namespace polywitt {

PolyMap Z2Tambara::norm_map() const { return PolyMap(A, B, norm, 2, true, name + ":N"); }

bool TambaraReport::passed() const { return failure() == nullptr; }

const NamedCheck* TambaraReport::failure() const {
  for (const auto& c : checks)
    if (!c.result) return &c;
  return nullptr;
}

namespace {

// Runs one named property over samples, stopping at the first counterexample.
class Suite {
 public:
  explicit Suite(std::size_t samples) : samples_(samples) {}

  template <class Property>
  void run(const std::string& name, Property&& property) {
    CheckResult result;
    for (std::size_t s = 0; s < samples_; ++s) {
      ++result.checked;
      if (auto failure = property(s)) {
        failure->checked = result.checked;
        result = std::move(*failure);
        break;
      }
    }
    report_.checks.push_back({name, std::move(result)});
  }

  TambaraReport take() { return std::move(report_); }

 private:
  std::size_t samples_;
  TambaraReport report_;
};

std::optional<CheckResult> expect_equal(const Element& lhs, const Element& rhs, std::vector<Element> witness,
                                        const std::string& what) {
  if (lhs == rhs) return std::nullopt;
  return CheckResult::fail(std::move(witness), what + ": " + lhs.str() + " != " + rhs.str());
}

}  // namespace

TambaraReport check_tambara(const Z2Tambara& t, std::size_t samples, std::uint64_t seed) {
  Sampler sampler(seed);
  struct Draw {
    Element a, a2, a3, b, b2;
  };
  std::vector<Draw> draws;
  draws.reserve(samples);
  for (std::size_t s = 0; s < samples; ++s)
    draws.push_back({t.A->sample(sampler), t.A->sample(sampler), t.A->sample(sampler), t.B->sample(sampler),
                     t.B->sample(sampler)});

  // The norm is evaluated at a, a', a+a', 1+a and others; memoize per call.
  std::map<std::string, Element> norm_cache;
  auto N = [&](const Element& a) {
    std::string key = a.str();
    auto it = norm_cache.find(key);
    if (it != norm_cache.end()) return it->second;
    Element value = t.N(a);
    norm_cache.emplace(std::move(key), value);
    return value;
  };

  Suite suite(samples);
  const Element oneA = t.A->one(), oneB = t.B->one();
  suite.run("tau is an involutive ring automorphism", [&](std::size_t s) -> std::optional<CheckResult> {
    const auto& d = draws[s];
    if (auto f = expect_equal(t.tau(t.tau(d.a)), d.a, {d.a}, "tau(tau(a)) = a")) return f;
    if (auto f = expect_equal(t.tau(d.a + d.a2), t.tau(d.a) + t.tau(d.a2), {d.a, d.a2}, "tau additive")) return f;
    if (auto f = expect_equal(t.tau(d.a * d.a2), t.tau(d.a) * t.tau(d.a2), {d.a, d.a2}, "tau multiplicative")) return f;
    return expect_equal(t.tau(oneA), oneA, {}, "tau(1) = 1");
  });
  suite.run("res is a unital ring map", [&](std::size_t s) -> std::optional<CheckResult> {
    const auto& d = draws[s];
    if (auto f = expect_equal(t.res(d.b + d.b2), t.res(d.b) + t.res(d.b2), {d.b, d.b2}, "res additive")) return f;
    if (auto f = expect_equal(t.res(d.b * d.b2), t.res(d.b) * t.res(d.b2), {d.b, d.b2}, "res multiplicative")) return f;
    if (auto f = expect_equal(t.tau(t.res(d.b)), t.res(d.b), {d.b}, "res lands in fixed points")) return f;
    return expect_equal(t.res(oneB), oneA, {}, "res(1) = 1");
  });
  suite.run("res tr = 1 + tau", [&](std::size_t s) -> std::optional<CheckResult> {
    const auto& d = draws[s];
    return expect_equal(t.res(t.tr(d.a)), d.a + t.tau(d.a), {d.a}, "res(tr(a)) = a + tau(a)");
  });
  suite.run("tr is additive and tau-invariant", [&](std::size_t s) -> std::optional<CheckResult> {
    const auto& d = draws[s];
    if (auto f = expect_equal(t.tr(d.a + d.a2), t.tr(d.a) + t.tr(d.a2), {d.a, d.a2}, "tr additive")) return f;
    return expect_equal(t.tr(t.tau(d.a)), t.tr(d.a), {d.a}, "tr(tau(a)) = tr(a)");
  });
  suite.run("projection formula", [&](std::size_t s) -> std::optional<CheckResult> {
    const auto& d = draws[s];
    return expect_equal(t.tr(t.res(d.b) * d.a), d.b * t.tr(d.a), {d.b, d.a}, "tr(res(b) a) = b tr(a)");
  });
  suite.run("N is multiplicative and unital", [&](std::size_t s) -> std::optional<CheckResult> {
    const auto& d = draws[s];
    if (auto f = expect_equal(N(d.a * d.a2), N(d.a) * N(d.a2), {d.a, d.a2}, "N(a a') = N(a) N(a')")) return f;
    return expect_equal(N(oneA), oneB, {}, "N(1) = 1");
  });
  suite.run("N tau = N", [&](std::size_t s) -> std::optional<CheckResult> {
    const auto& d = draws[s];
    return expect_equal(N(t.tau(d.a)), N(d.a), {d.a}, "N(tau(a)) = N(a)");
  });
  suite.run("res N = a tau(a)", [&](std::size_t s) -> std::optional<CheckResult> {
    const auto& d = draws[s];
    return expect_equal(t.res(N(d.a)), d.a * t.tau(d.a), {d.a}, "res(N(a)) = a tau(a)");
  });
  suite.run("Tambara reciprocity", [&](std::size_t s) -> std::optional<CheckResult> {
    const auto& d = draws[s];
    return expect_equal(t.tr(d.a), N(d.a + oneA) - N(d.a) - oneB, {d.a}, "tr(a) = N(a+1) - N(a) - 1");
  });
  suite.run("cr_3 N = 0", [&](std::size_t s) -> std::optional<CheckResult> {
    const auto& d = draws[s];
    Element cr = N(d.a + d.a2 + d.a3) - N(d.a + d.a2) - N(d.a + d.a3) - N(d.a2 + d.a3) + N(d.a) + N(d.a2) + N(d.a3) -
                 N(t.A->zero());
    return expect_equal(cr, t.B->zero(), {d.a, d.a2, d.a3}, "cr_3 N(a,b,c)");
  });
  return suite.take();
}

bool is_cohomological(const Z2Tambara& t, std::size_t samples, std::uint64_t seed) {
  if (t.tr(t.A->one()) != t.B->from_integer(2)) return false;
  Sampler sampler(seed);
  for (std::size_t s = 0; s < samples; ++s) {
    Element b = t.B->sample(sampler);
    if (t.N(t.res(b)) != b * b) return false;
  }
  return true;
}

Z2Tambara from_involution_ring(const RingHandle& a, const Involution& tau) {
  auto fixed = std::make_shared<FixedSubring>(tau);
  Z2Tambara t;
  t.name = "fixed(" + a->name() + ")";
  t.A = a;
  t.B = fixed;
  t.tau = tau;
  t.res = [fixed](const Element& b) { return fixed->include(b); };
  t.tr = [fixed, tau](const Element& x) { return fixed->lift(x + tau(x)); };
  t.norm = [fixed, tau](const Element& x) { return fixed->lift(x * tau(x)); };
  return t;
}

Z2Tambara burnside_pair(const Inclusion& inclusion, GroupElement g) {
  if (inclusion.index() != 2)
    throw AlgebraError(ErrorCode::MalformedInput, "a Z/2-Tambara functor needs an index-2 subgroup");
  if ((inclusion.image() >> g) & 1U) throw AlgebraError(ErrorCode::MalformedInput, "the Weyl generator must lie outside H");
  Z2Tambara t;
  t.name = "Burnside(" + inclusion.small()->group().name() + "<=" + inclusion.big()->group().name() + ")";
  t.A = inclusion.small()->ring();
  t.B = inclusion.big()->ring();
  t.tau = Involution(t.A, [inclusion, g](const Element& y) { return inclusion.conjugate(y, g); }, "conjugation");
  t.res = [inclusion](const Element& x) { return inclusion.restrict(x); };
  t.tr = [inclusion](const Element& y) { return inclusion.transfer(y); };
  t.norm = [inclusion](const Element& y) { return inclusion.norm(y); };
  return t;
}

Z2Tambara burnside_tambara(unsigned p, unsigned j) {
  if (j == 0) {
    auto z2 = BurnsideRing::create(FiniteGroup::by_name("Z/2"));
    return burnside_pair(Inclusion::of_subgroup(z2, 1, "e"), 1);
  }
  if (!is_prime(p) || p == 2) throw AlgebraError(ErrorCode::MalformedInput, "burnside tower needs an odd prime");
  Integer n = power(p, j);
  if (n > 27) throw AlgebraError(ErrorCode::GroupTooLarge, "D_" + n.get_str() + " is too large");
  unsigned order = static_cast<unsigned>(n.get_ui());
  auto big = BurnsideRing::create(FiniteGroup::dihedral(order));
  Mask rotations = big->group().closure(Mask(1) << 1);
  return burnside_pair(Inclusion::of_subgroup(big, rotations, "C" + std::to_string(order)), static_cast<GroupElement>(order));
}

namespace {

Element witt_norm(const Z2Tambara& t, const WittRing& wa, const WittRing& wb, const Element& x) {
  auto lifted = lift_polymap(t.norm_map(), wa.unwrap(x));
  if (auto* obstruction = std::get_if<GhostObstruction>(&lifted))
    throw AlgebraError(ErrorCode::NotInGhostImage, "norm does not lift at coordinate " + std::to_string(obstruction->j) +
                                                       ": " + obstruction->detail);
  return wb.wrap(std::get<WittVector>(lifted));
}

}  // namespace

Z2Tambara witt_tambara(const Z2Tambara& t, unsigned p, std::size_t m) {
  if (p == 2 || !is_prime(p)) throw AlgebraError(ErrorCode::MalformedInput, "witt_tambara needs an odd prime");
  if (!is_p_torsion_free(t.B, p)) throw AlgebraError(ErrorCode::TorsionBase, t.B->name() + " has p-torsion");
  auto trunc = TruncationSet::p_typical(p, m);
  auto wa = std::make_shared<const WittRing>(trunc, t.A);
  auto wb = std::make_shared<const WittRing>(trunc, t.B);
  auto levelwise = [](const WittRing& from, const WittRing& to, const Z2Tambara::Map& f) {
    return [&from, &to, f](const Element& x) {
      WittVector v = from.unwrap(x);
      std::vector<Element> coords;
      for (const auto& c : v.coords) coords.push_back(f(c));
      return to.wrap(WittVector(to.truncation(), to.base(), std::move(coords)));
    };
  };
  Z2Tambara w;
  w.name = "W_" + std::to_string(m) + "(" + t.name + ";" + std::to_string(p) + ")";
  w.A = wa;
  w.B = wb;
  Z2Tambara::Map tau = [t](const Element& a) { return t.tau(a); };
  auto tau_w = [wa, tau, levelwise](const Element& x) { return levelwise(*wa, *wa, tau)(x); };
  w.tau = Involution(wa, tau_w, "levelwise " + t.tau.description());
  w.res = [wa, wb, t, levelwise](const Element& x) { return levelwise(*wb, *wa, t.res)(x); };
  w.norm = [wa, wb, t](const Element& x) { return witt_norm(t, *wa, *wb, x); };
  w.tr = [wa, wb, t](const Element& x) {
    Element one = wa->one();
    return witt_norm(t, *wa, *wb, x + one) - witt_norm(t, *wa, *wb, x) - wb->one();
  };
  return w;
}

TambaraReport witt_ghost_check(const Z2Tambara& t, const Z2Tambara& w, unsigned p, std::size_t m, std::size_t samples,
                               std::uint64_t seed) {
  auto wa = std::dynamic_pointer_cast<const WittRing>(w.A);
  auto wb = std::dynamic_pointer_cast<const WittRing>(w.B);
  if (!wa || !wb || wa->truncation() != TruncationSet::p_typical(p, m))
    throw AlgebraError(ErrorCode::MalformedInput, w.name + " is not a Witt Tambara functor of length " + std::to_string(m));
  Sampler sampler(seed);
  auto ghost_a = [&](const Element& x) { return ghost(wa->unwrap(x)); };
  auto ghost_b = [&](const Element& x) { return ghost(wb->unwrap(x)); };
  auto compare = [](const std::vector<Element>& lhs, const std::vector<Element>& rhs, const Element& witness,
                    const std::string& what) -> std::optional<CheckResult> {
    for (std::size_t j = 0; j < lhs.size(); ++j)
      if (lhs[j] != rhs[j])
        return CheckResult::fail({witness}, what + " at ghost " + std::to_string(j) + ": " + lhs[j].str() + " != " + rhs[j].str());
    return std::nullopt;
  };
  auto apply = [](const Z2Tambara::Map& f, std::vector<Element> g) {
    for (auto& e : g) e = f(e);
    return g;
  };
  Suite suite(samples);
  std::vector<Element> as, bs;
  for (std::size_t s = 0; s < samples; ++s) {
    as.push_back(wa->sample(sampler));
    bs.push_back(wb->sample(sampler));
  }
  Z2Tambara::Map tau = [&t](const Element& a) { return t.tau(a); };
  suite.run("ghost tau", [&](std::size_t s) { return compare(ghost_a(w.tau(as[s])), apply(tau, ghost_a(as[s])), as[s], "tau"); });
  suite.run("ghost res", [&](std::size_t s) { return compare(ghost_a(w.res(bs[s])), apply(t.res, ghost_b(bs[s])), bs[s], "res"); });
  suite.run("ghost tr", [&](std::size_t s) { return compare(ghost_b(w.tr(as[s])), apply(t.tr, ghost_a(as[s])), as[s], "tr"); });
  suite.run("ghost N", [&](std::size_t s) { return compare(ghost_b(w.norm(as[s])), apply(t.norm, ghost_a(as[s])), as[s], "N"); });
  return suite.take();
}

TambaraReport check_morphism(const Z2Tambara& source, const Z2Tambara& target, const TambaraMorphism& f,
                             std::size_t samples, std::uint64_t seed) {
  Sampler sampler(seed);
  Suite suite(samples);
  std::vector<Element> as, as2, bs, bs2;
  for (std::size_t s = 0; s < samples; ++s) {
    as.push_back(source.A->sample(sampler));
    as2.push_back(source.A->sample(sampler));
    bs.push_back(source.B->sample(sampler));
    bs2.push_back(source.B->sample(sampler));
  }
  suite.run("alpha is a ring map", [&](std::size_t s) -> std::optional<CheckResult> {
    if (auto e = expect_equal(f.alpha(as[s] + as2[s]), f.alpha(as[s]) + f.alpha(as2[s]), {as[s], as2[s]}, "alpha additive")) return e;
    if (auto e = expect_equal(f.alpha(as[s] * as2[s]), f.alpha(as[s]) * f.alpha(as2[s]), {as[s], as2[s]}, "alpha multiplicative")) return e;
    return expect_equal(f.alpha(source.A->one()), target.A->one(), {}, "alpha(1) = 1");
  });
  suite.run("beta is a ring map", [&](std::size_t s) -> std::optional<CheckResult> {
    if (auto e = expect_equal(f.beta(bs[s] + bs2[s]), f.beta(bs[s]) + f.beta(bs2[s]), {bs[s], bs2[s]}, "beta additive")) return e;
    if (auto e = expect_equal(f.beta(bs[s] * bs2[s]), f.beta(bs[s]) * f.beta(bs2[s]), {bs[s], bs2[s]}, "beta multiplicative")) return e;
    return expect_equal(f.beta(source.B->one()), target.B->one(), {}, "beta(1) = 1");
  });
  suite.run("equivariance", [&](std::size_t s) {
    return expect_equal(f.alpha(source.tau(as[s])), target.tau(f.alpha(as[s])), {as[s]}, "alpha tau = tau alpha");
  });
  suite.run("res", [&](std::size_t s) {
    return expect_equal(target.res(f.beta(bs[s])), f.alpha(source.res(bs[s])), {bs[s]}, "res beta = alpha res");
  });
  suite.run("tr", [&](std::size_t s) {
    return expect_equal(target.tr(f.alpha(as[s])), f.beta(source.tr(as[s])), {as[s]}, "tr alpha = beta tr");
  });
  suite.run("N", [&](std::size_t s) {
    return expect_equal(target.N(f.alpha(as[s])), f.beta(source.N(as[s])), {as[s]}, "N alpha = beta N");
  });
  return suite.take();
}

namespace {

// The i-th summand of the j-th twisted ghost map.
Element twisted_term(const Z2Tambara& t, const Element& coefficient, const Element& x, unsigned p, std::size_t gap) {
  Integer exponent = (power(p, gap) - 1) / 2;
  if (exponent == 0) return coefficient * x;
  return coefficient * x * t.N(t.res(x)).pow(exponent.get_ui());
}

Element leading_coefficient(const Z2Tambara& t, unsigned p, std::size_t i) {
  return t.B->one() + t.tr(t.A->one()).scaled((power(p, i) - 1) / 2);
}

}  // namespace

Element twisted_ghost(const Z2Tambara& t, unsigned p, std::size_t j, std::span<const Element> x) {
  if (x.size() <= j) throw AlgebraError(ErrorCode::MalformedInput, "twisted ghost needs coordinates 0.." + std::to_string(j));
  Element total = t.B->zero();
  for (std::size_t i = 0; i <= j; ++i) total += twisted_term(t, leading_coefficient(t, p, i), x[i], p, j - i);
  return total;
}

TwistedWittRing::TwistedWittRing(Z2Tambara base, unsigned p, std::size_t length)
    : base_(std::move(base)), p_(p), length_(length) {
  if (p == 2 || !is_prime(p)) throw AlgebraError(ErrorCode::MalformedInput, "twisted Witt vectors need an odd prime");
  if (length == 0) throw AlgebraError(ErrorCode::BadTruncation, "length must be positive");
  for (std::size_t j = 0; j < length; ++j) leading_.push_back(leading_coefficient(base_, p, j));
}

std::string TwistedWittRing::name() const {
  return "W~_" + std::to_string(length_) + "(" + base_.name + ";" + std::to_string(p_) + ")";
}

std::vector<Element> TwistedWittRing::ghost(std::span<const Element> x) const {
  std::vector<Element> out;
  for (std::size_t j = 0; j < length_; ++j) out.push_back(twisted_ghost(base_, p_, j, x));
  return out;
}

std::variant<std::vector<Element>, NotSolvable> TwistedWittRing::solve(TwistedOp op, std::span<const Element> u,
                                                                       std::span<const Element> v, bool use_cache) const {
  std::string key;
  if (use_cache) {
    key = std::to_string(static_cast<int>(op));
    for (const auto& e : u) key += "|" + e.str();
    key += "#";
    for (const auto& e : v) key += "|" + e.str();
    std::shared_lock lock(cache_mutex_);
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
  }
  std::vector<Element> gu = ghost(u), gv;
  if (op != TwistedOp::Neg) gv = ghost(v);
  std::vector<Element> result;
  for (std::size_t j = 0; j < length_; ++j) {
    Element target = op == TwistedOp::Add ? gu[j] + gv[j] : op == TwistedOp::Mul ? gu[j] * gv[j] : -gu[j];
    for (std::size_t i = 0; i < j; ++i) target -= twisted_term(base_, leading_[i], result[i], p_, j - i);
    auto q = base_.B->divide_exact(target, leading_[j]);
    if (auto* failure = std::get_if<NotDivisible>(&q))
      return NotSolvable{j, failure->residue, "coordinate " + std::to_string(j) + ": " + failure->detail};
    result.push_back(std::get<Element>(q));
  }
  if (use_cache) {
    std::unique_lock lock(cache_mutex_);
    cache_.emplace(std::move(key), result);
  }
  return result;
}

std::vector<Element> TwistedWittRing::solved_or_throw(TwistedOp op, std::span<const Element> u,
                                                      std::span<const Element> v) const {
  auto r = solve(op, u, v);
  if (auto* failure = std::get_if<NotSolvable>(&r)) throw AlgebraError(ErrorCode::NotSolvable, failure->detail);
  return std::get<std::vector<Element>>(std::move(r));
}

Element TwistedWittRing::wrap(std::vector<Element> coords) const {
  if (coords.size() != length_) throw AlgebraError(ErrorCode::MalformedInput, "expected " + std::to_string(length_) + " coordinates");
  for (const auto& c : coords) require_owner(c, base_.B);
  return element(std::move(coords));
}

const std::vector<Element>& TwistedWittRing::unwrap(const Element& a) const {
  require_owner(a, self());
  return a.as<std::vector<Element>>();
}

Element TwistedWittRing::zero() const { return element(std::vector<Element>(length_, base_.B->zero())); }

Element TwistedWittRing::one() const {
  std::vector<Element> c(length_, base_.B->zero());
  c[0] = base_.B->one();
  return element(std::move(c));
}

Element TwistedWittRing::add(const Element& a, const Element& b) const {
  return element(solved_or_throw(TwistedOp::Add, unwrap(a), unwrap(b)));
}

Element TwistedWittRing::neg(const Element& a) const { return element(solved_or_throw(TwistedOp::Neg, unwrap(a), {})); }

Element TwistedWittRing::mul(const Element& a, const Element& b) const {
  return element(solved_or_throw(TwistedOp::Mul, unwrap(a), unwrap(b)));
}

Element TwistedWittRing::sample(Sampler& sampler) const {
  std::vector<Element> c;
  for (std::size_t j = 0; j < length_; ++j) c.push_back(base_.B->sample(sampler));
  return element(std::move(c));
}

std::string TwistedWittRing::format(const Element& a) const {
  std::string out = "(";
  const auto& c = unwrap(a);
  for (std::size_t j = 0; j < c.size(); ++j) out += (j ? ", " : "") + c[j].str();
  return out + ")";
}

CheckResult twisted_ghost_homomorphism_check(const TwistedWittRing& w, std::size_t samples, Sampler& sampler) {
  CheckResult result;
  auto g1 = w.ghost(w.unwrap(w.one()));
  for (std::size_t j = 0; j < g1.size(); ++j)
    if (g1[j] != w.base().B->one()) return CheckResult::fail({}, "twisted ghost of 1 is not 1");
  for (std::size_t s = 0; s < samples; ++s) {
    ++result.checked;
    Element u = w.sample(sampler), v = w.sample(sampler);
    auto gu = w.ghost(w.unwrap(u)), gv = w.ghost(w.unwrap(v));
    auto gs = w.ghost(w.unwrap(u + v)), gp = w.ghost(w.unwrap(u * v));
    for (std::size_t j = 0; j < gu.size(); ++j) {
      if (gs[j] != gu[j] + gv[j])
        return CheckResult::fail({u, v}, "w~_" + std::to_string(j) + " not additive", result.checked);
      if (gp[j] != gu[j] * gv[j])
        return CheckResult::fail({u, v}, "w~_" + std::to_string(j) + " not multiplicative", result.checked);
    }
  }
  return result;
}

CheckResult psi_check(unsigned p, unsigned n, std::size_t samples, std::uint64_t seed) {
  if (p == 2 || !is_prime(p)) throw AlgebraError(ErrorCode::MalformedInput, "psi_check needs an odd prime");
  if (power(p, n) > 27) throw AlgebraError(ErrorCode::GroupTooLarge, "D_{p^n} is too large");
  auto z2 = BurnsideRing::create(FiniteGroup::by_name("Z/2"));
  Z2Tambara bottom = burnside_pair(Inclusion::of_subgroup(z2, 1, "e"), 1);

  // For each level j: restriction to <s>, and for each i the chain Z/2 <= D_{p^(j-i)} <= D_{p^j}.
  struct Level {
    Inclusion to_z2;
    std::vector<Inclusion> dihedral;  // D_{p^(j-i)} <= D_{p^j}
    std::vector<Inclusion> z2_in;     // Z/2 <= D_{p^(j-i)}
  };
  std::vector<Level> levels;
  for (unsigned j = 0; j <= n; ++j) {
    unsigned order = static_cast<unsigned>(power(p, j).get_ui());
    auto big = BurnsideRing::create(FiniteGroup::dihedral(order));
    const FiniteGroup& g = big->group();
    const Mask s_mask = Mask(1) | (Mask(1) << order);
    Level level{Inclusion::of_subgroup(big, s_mask, "Z/2"), {}, {}};
    for (unsigned i = 0; i <= j; ++i) {
      unsigned step = static_cast<unsigned>(power(p, i).get_ui()) % order;
      Mask sub = g.closure((Mask(1) << step) | (Mask(1) << order));
      Inclusion d = Inclusion::of_subgroup(big, sub);
      level.z2_in.push_back(Inclusion::of_subgroup(d.small(), d.pull(s_mask), "Z/2"));
      level.dihedral.push_back(std::move(d));
    }
    levels.push_back(std::move(level));
  }

  Sampler sampler(seed, 3);
  CheckResult result;
  for (std::size_t s = 0; s < samples; ++s) {
    ++result.checked;
    std::vector<Element> x;
    for (unsigned i = 0; i <= n; ++i) x.push_back(bottom.B->sample(sampler));
    for (unsigned j = 0; j <= n; ++j) {
      const Level& level = levels[j];
      Element sum = level.to_z2.big()->ring()->zero();
      for (unsigned i = 0; i <= j; ++i) {
        const Inclusion& z = level.z2_in[i];
        sum += level.dihedral[i].transfer(z.norm(z.small()->transport(x[i])));
      }
      Element lhs = z2->transport(level.to_z2.restrict(sum));
      Element rhs = twisted_ghost(bottom, p, j, std::span<const Element>(x).first(j + 1));
      if (lhs != rhs)
        return CheckResult::fail(x, "level " + std::to_string(j) + ": " + lhs.str() + " != " + rhs.str(), result.checked);
    }
  }
  return result;
}

}  // namespace polywitt
