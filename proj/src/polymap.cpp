#include "polywitt/polymap.hpp"

namespace polywitt {

PolyMap::PolyMap(RingHandle domain, RingHandle codomain, Eval eval, unsigned degree_bound, bool multiplicative,
                 std::string name)
    : domain_(std::move(domain)),
      codomain_(std::move(codomain)),
      eval_(std::move(eval)),
      degree_(degree_bound),
      multiplicative_(multiplicative),
      name_(std::move(name)) {}

Element PolyMap::operator()(const Element& a) const {
  require_owner(a, domain_);
  Element value = eval_(a);
  require_owner(value, codomain_);
  return value;
}

Element cross_effect(const PolyMap& f, std::span<const Element> args) {
  const std::size_t k = args.size();
  if (k > 20) throw AlgebraError(ErrorCode::Unsupported, "cross-effect arity too large");
  const RingHandle& dom = f.domain();
  Element total = f.codomain()->zero();
  for (std::uint32_t mask = 0; mask < (1U << k); ++mask) {
    Element point = dom->zero();
    std::size_t size = 0;
    for (std::size_t l = 0; l < k; ++l)
      if (mask & (1U << l)) {
        point = point + args[l];
        ++size;
      }
    Element value = f(point);
    total = ((k - size) % 2 == 0) ? total + value : total - value;
  }
  return total;
}

Element diagonal_cross_effect(const PolyMap& f, unsigned k, const Element& a) {
  // subsets of equal size contribute equally
  Element total = f.codomain()->zero();
  for (unsigned s = 0; s <= k; ++s) {
    Element value = f(a.scaled(s)).scaled(binomial(k, s));
    total = ((k - s) % 2 == 0) ? total + value : total - value;
  }
  return total;
}

CheckResult degree_test(const PolyMap& f, unsigned n, std::size_t samples, Sampler& sampler) {
  CheckResult result;
  for (std::size_t s = 0; s < samples; ++s) {
    std::vector<Element> args;
    for (unsigned l = 0; l <= n; ++l) args.push_back(f.domain()->sample(sampler));
    Element value = cross_effect(f, args);
    ++result.checked;
    if (!value.is_zero()) {
      args.push_back(value);
      return CheckResult::fail(std::move(args),
                               "cr_" + std::to_string(n + 1) + " " + f.name() + " = " + value.str() + " != 0",
                               result.checked);
    }
  }
  return result;
}

CheckResult multiplicativity_test(const PolyMap& f, std::size_t samples, Sampler& sampler) {
  CheckResult result;
  if (f(f.domain()->one()) != f.codomain()->one())
    return CheckResult::fail({f.domain()->one()}, f.name() + " is not unital");
  for (std::size_t s = 0; s < samples; ++s) {
    Element a = f.domain()->sample(sampler), b = f.domain()->sample(sampler);
    ++result.checked;
    if (f(a * b) != f(a) * f(b))
      return CheckResult::fail({a, b}, f.name() + "(ab) != " + f.name() + "(a)" + f.name() + "(b)", result.checked);
  }
  return result;
}

namespace {

bool invertible_in(const RingHandle& ring, unsigned n) {
  try {
    return std::holds_alternative<Element>(ring->divide_exact(ring->one(), ring->from_integer(n)));
  } catch (const AlgebraError&) {
    return false;
  }
}

}  // namespace

std::vector<PolyMap> homogeneous_decompose(const PolyMap& f, std::size_t degree_samples, std::uint64_t seed) {
  const unsigned n = f.degree_bound();
  for (unsigned i = 2; i <= n; ++i)
    if (!invertible_in(f.codomain(), i))
      throw AlgebraError(ErrorCode::NonInvertibleFactorial,
                         std::to_string(i) + " is not invertible in " + f.codomain()->name());
  Sampler sampler(seed);
  if (auto check = degree_test(f, n, degree_samples, sampler); !check)
    throw AlgebraError(ErrorCode::DegreeViolation, check.detail);

  std::vector<PolyMap> pieces(n + 1);
  // remainder_k = f - phi_n - ... - phi_{k+1}
  PolyMap remainder = f;
  for (int k = static_cast<int>(n); k >= 0; --k) {
    Integer kfact = factorial(static_cast<unsigned long>(k));
    PolyMap r = remainder;
    auto eval = [r, k, kfact](const Element& a) {
      Element crr = diagonal_cross_effect(r, static_cast<unsigned>(k), a);
      return divide_or_throw(crr, r.codomain()->from_integer(kfact));
    };
    pieces[k] = PolyMap(f.domain(), f.codomain(), eval, static_cast<unsigned>(k), f.multiplicative(),
                        "phi_" + std::to_string(k));
    PolyMap piece = pieces[k];
    remainder = PolyMap(f.domain(), f.codomain(), [r, piece](const Element& a) { return r(a) - piece(a); },
                        static_cast<unsigned>(std::max(k - 1, 0)), false, f.name() + "-rest");
  }
  return pieces;
}

PolyMap compose(const PolyMap& g, const PolyMap& f) {
  if (f.codomain() != g.domain())
    throw AlgebraError(ErrorCode::OwnerMismatch, "cannot compose: " + f.codomain()->name() + " vs " + g.domain()->name());
  return PolyMap(f.domain(), g.codomain(), [g, f](const Element& a) { return g(f(a)); },
                 f.degree_bound() * g.degree_bound(), f.multiplicative() && g.multiplicative(),
                 g.name() + "∘" + f.name());
}

PolyMap product(const PolyMap& f, const PolyMap& g) {
  if (f.domain() != g.domain() || f.codomain() != g.codomain())
    throw AlgebraError(ErrorCode::OwnerMismatch, "pointwise product needs equal domains and codomains");
  return PolyMap(f.domain(), f.codomain(), [f, g](const Element& a) { return f(a) * g(a); },
                 f.degree_bound() + g.degree_bound(), f.multiplicative() && g.multiplicative(),
                 f.name() + "·" + g.name());
}

PolyMap sum(const PolyMap& f, const PolyMap& g) {
  if (f.domain() != g.domain() || f.codomain() != g.codomain())
    throw AlgebraError(ErrorCode::OwnerMismatch, "pointwise sum needs equal domains and codomains");
  return PolyMap(f.domain(), f.codomain(), [f, g](const Element& a) { return f(a) + g(a); },
                 std::max(f.degree_bound(), g.degree_bound()), false, f.name() + "+" + g.name());
}

Element congruence_correction(const PolyMap& f, unsigned p, unsigned k, const Element& a, const Element& c) {
  Element total = f.codomain()->zero();
  std::vector<unsigned> idx(k, 1);
  if (k == 0) return total;
  // odometer over (i_1, ..., i_k) in [1, p-1]^k
  while (true) {
    unsigned sign_sum = 0;
    Integer coefficient = 1, multiplier = 1;
    for (unsigned i : idx) {
      sign_sum += i;
      coefficient *= binomial(p, i);
      multiplier *= i;
    }
    Element value = f(a + c.scaled(multiplier)).scaled(coefficient);
    total = (sign_sum % 2 == 0) ? total + value : total - value;
    std::size_t pos = 0;
    while (pos < k && idx[pos] == p - 1) idx[pos++] = 1;
    if (pos == k) break;
    ++idx[pos];
  }
  return total;
}

CheckResult congruence_check_at(const PolyMap& f, unsigned p, unsigned k, const Element& a, const Element& c) {
  Element correction = congruence_correction(f, p, k, a, c);
  Element lhs = f(a + c.scaled(power(p, k)));
  Element rhs = f(a) + correction;
  if (lhs != rhs)
    return CheckResult::fail({a, c, lhs - rhs}, "f(a+p^k c) - f(a) - correction = " + (lhs - rhs).str(), 1);
  auto divided = divide_by_integer(correction, power(p, k));
  if (auto* failure = std::get_if<NotDivisible>(&divided))
    return CheckResult::fail({a, c, failure->residue}, "correction sum not divisible by p^k: " + failure->detail, 1);
  return CheckResult{true, 1, {}, {}};
}

CheckResult congruence_check(const PolyMap& f, unsigned p, unsigned k, std::size_t samples, Sampler& sampler) {
  if (!is_p_torsion_free(f.codomain(), p))
    throw AlgebraError(ErrorCode::TorsionBase, f.codomain()->name() + " has p-torsion");
  CheckResult result;
  for (std::size_t s = 0; s < samples; ++s) {
    Element a = f.domain()->sample(sampler), c = f.domain()->sample(sampler);
    CheckResult one = congruence_check_at(f, p, k, a, c);
    ++result.checked;
    if (!one) {
      one.checked = result.checked;
      return one;
    }
  }
  return result;
}

PolyMap identity_map(const RingHandle& ring) {
  return PolyMap(ring, ring, [](const Element& a) { return a; }, 1, true, "id");
}

PolyMap power_map(const RingHandle& ring, unsigned n) {
  return PolyMap(ring, ring, [n](const Element& a) { return a.pow(n); }, n, true, "(-)^" + std::to_string(n));
}

PolyMap structure_map(const RingHandle& codomain) {
  RingHandle z = make_integers();
  return PolyMap(z, codomain, [codomain](const Element& a) { return codomain->from_integer(a.as<Integer>()); }, 1,
                 true, "unit");
}

PolyMap homomorphism(const RingHandle& domain, const RingHandle& codomain, std::vector<Element> images,
                     std::string name) {
  for (const auto& image : images) require_owner(image, codomain);
  switch (domain->kind()) {
    case RingKind::Integers: return structure_map(codomain);
    case RingKind::FreeRank: {
      auto free = std::static_pointer_cast<const FreeRankRing>(domain);
      if (images.size() != free->rank()) throw AlgebraError(ErrorCode::MalformedInput, "need one image per basis element");
      auto eval = [free, images, codomain](const Element& a) {
        Element total = codomain->zero();
        const auto& coords = free->coordinates(a);
        for (std::size_t i = 0; i < coords.size(); ++i) {
          if (coords[i] == 0) continue;
          Element term = images[i].scaled(coords[i].get_num());
          if (coords[i].get_den() != 1) term = divide_or_throw(term, codomain->from_integer(coords[i].get_den()));
          total = total + term;
        }
        return total;
      };
      return PolyMap(domain, codomain, eval, 1, true, std::move(name));
    }
    case RingKind::Polynomial: {
      auto poly = std::static_pointer_cast<const PolynomialRing>(domain);
      if (images.size() != poly->arity()) throw AlgebraError(ErrorCode::MalformedInput, "need one image per variable");
      auto eval = [images, codomain](const Element& a) { return evaluate(a.as<PolyTerms>(), images, codomain); };
      return PolyMap(domain, codomain, eval, 1, true, std::move(name));
    }
    default: throw AlgebraError(ErrorCode::Unsupported, "homomorphisms out of " + domain->name() + " are not supported");
  }
}

PolyMap localize_codomain(const PolyMap& f, unsigned prime) {
  auto free = std::dynamic_pointer_cast<const FreeRankRing>(f.codomain());
  if (!free) throw AlgebraError(ErrorCode::Unsupported, "localize_codomain needs a free-rank codomain");
  auto local = free->localized(prime);
  return PolyMap(f.domain(), local, [f, free, local](const Element& a) { return free->embed_into(local, f(a)); },
                 f.degree_bound(), f.multiplicative(), f.name());
}

}  // namespace polywitt
