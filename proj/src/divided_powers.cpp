#include "polywitt/divided_powers.hpp"

#include <algorithm>
#include <functional>
#include <map>

namespace polywitt {

namespace {

struct BaseTable {
  std::vector<std::string> names;
  std::vector<Integer> constants;
  std::vector<Integer> unit;
  unsigned local_prime = 0;
};

BaseTable base_table(const RingHandle& base) {
  if (base->kind() == RingKind::Integers) return {{"1"}, {Integer(1)}, {Integer(1)}, 0};
  auto free = std::dynamic_pointer_cast<const FreeRankRing>(base);
  if (!free)
    throw AlgebraError(ErrorCode::Unsupported, "divided powers need Z or a free-rank ring, got " + base->name());
  return {free->basis(), free->constants(), free->unit_coordinates(), free->local_prime()};
}

// All multisets of size n over r symbols, lexicographic.
std::vector<Multiset> all_multisets(std::size_t r, unsigned n) {
  std::vector<Multiset> out;
  Multiset current;
  std::function<void(unsigned)> rec = [&](unsigned lo) {
    if (current.size() == n) {
      out.push_back(current);
      return;
    }
    for (unsigned i = lo; i < r; ++i) {
      current.push_back(i);
      rec(i);
      current.pop_back();
    }
  };
  rec(0);
  return out;
}

std::vector<std::vector<unsigned>> permutations_of(Multiset m) {
  std::vector<std::vector<unsigned>> out;
  std::sort(m.begin(), m.end());
  do out.push_back(m);
  while (std::next_permutation(m.begin(), m.end()));
  return out;
}

std::vector<unsigned> multiplicities(const Multiset& m, std::size_t r) {
  std::vector<unsigned> mu(r, 0);
  for (unsigned i : m) ++mu[i];
  return mu;
}

bool invertible_in(const RingHandle& ring, const Integer& n) {
  try {
    return std::holds_alternative<Element>(ring->divide_exact(ring->one(), ring->from_integer(n)));
  } catch (const AlgebraError&) {
    return false;
  }
}

Element scale_rational(const Rational& q, const Element& x) {
  Element scaled = x.ring()->scale(q.get_num(), x);
  if (q.get_den() == 1) return scaled;
  return divide_or_throw(scaled, x.ring()->from_integer(q.get_den()));
}

}  // namespace

SymHandle SymPower::create(RingHandle base, unsigned degree) {
  BaseTable table = base_table(base);
  std::shared_ptr<SymPower> p(new SymPower());
  p->base_ = std::move(base);
  p->degree_ = degree;
  p->names_ = table.names;
  p->base_constants_ = table.constants;
  p->multisets_ = all_multisets(table.names.size(), degree);

  const std::size_t r = table.names.size();
  const std::size_t s = p->multisets_.size();
  std::vector<std::vector<std::vector<unsigned>>> orbits(s);
  for (std::size_t i = 0; i < s; ++i) orbits[i] = permutations_of(p->multisets_[i]);

  // Coefficient of O(M) in O(a)O(b) is the coefficient of the sorted tensor M
  // in the sum over t in orbit(a), t' in orbit(b) of t.t'.
  std::vector<Integer> constants(s * s * s, Integer(0));
  std::map<Multiset, std::size_t> index;
  for (std::size_t i = 0; i < s; ++i) index[p->multisets_[i]] = i;
  Multiset target;
  for (std::size_t a = 0; a < s; ++a)
    for (std::size_t b = a; b < s; ++b) {
      Integer* row = &constants[(a * s + b) * s];
      for (const auto& t : orbits[a])
        for (const auto& u : orbits[b]) {
          std::function<void(std::size_t, const Integer&)> rec = [&](std::size_t k, const Integer& coeff) {
            if (k == degree) {
              row[index.at(target)] += coeff;
              return;
            }
            const unsigned lo = k == 0 ? 0 : target[k - 1];
            for (unsigned l = lo; l < r; ++l) {
              const Integer& c = table.constants[(t[k] * r + u[k]) * r + l];
              if (c == 0) continue;
              target.push_back(l);
              rec(k + 1, coeff * c);
              target.pop_back();
            }
          };
          rec(0, Integer(1));
        }
      if (b != a)
        for (std::size_t k = 0; k < s; ++k) constants[(b * s + a) * s + k] = row[k];
    }

  std::vector<std::string> names;
  std::vector<Integer> unit;
  for (const auto& m : p->multisets_) {
    std::string name = "(";
    Integer u = 1;
    for (std::size_t k = 0; k < m.size(); ++k) {
      if (k) name += ",";
      name += table.names[m[k]];
      u *= table.unit[m[k]];
    }
    names.push_back(name + ")");
    unit.push_back(u);
  }
  p->ring_ = FreeRankRing::create(std::move(names), std::move(constants), std::move(unit), table.local_prime,
                                  "Sym^" + std::to_string(degree) + "(" + p->base_->name() + ")");
  return p;
}

std::optional<std::size_t> SymPower::index_of(const Multiset& m) const {
  auto it = std::lower_bound(multisets_.begin(), multisets_.end(), m);
  if (it == multisets_.end() || *it != m) return std::nullopt;
  return static_cast<std::size_t>(it - multisets_.begin());
}

std::vector<std::vector<unsigned>> SymPower::orbit(std::size_t i) const { return permutations_of(multisets_.at(i)); }

std::vector<Rational> SymPower::base_coordinates(const Element& a) const {
  require_owner(a, base_);
  if (base_->kind() == RingKind::Integers) return {Rational(a.as<Integer>())};
  return std::static_pointer_cast<const FreeRankRing>(base_)->coordinates(a);
}

Element SymPower::base_element(const std::vector<Rational>& coords) const {
  if (base_->kind() == RingKind::Integers) {
    if (coords.at(0).get_den() != 1) throw AlgebraError(ErrorCode::MalformedInput, "non-integral coordinate");
    return base_->from_integer(coords[0].get_num());
  }
  return std::static_pointer_cast<const FreeRankRing>(base_)->from_coordinates(coords);
}

Element SymPower::gamma(const Element& a) const {
  // every tensor in the orbit of M carries the coefficient prod a_{M_k}
  const auto coords = base_coordinates(a);
  std::vector<Rational> out;
  out.reserve(multisets_.size());
  for (const auto& m : multisets_) {
    Rational c = 1;
    for (unsigned i : m) c *= coords[i];
    out.push_back(c);
  }
  return ring_->from_coordinates(std::move(out));
}

DividedPowers::DividedPowers(RingHandle base, unsigned max_degree) : base_(std::move(base)) {
  for (unsigned n = 0; n <= max_degree; ++n) levels_.push_back(SymPower::create(base_, n));
}

unsigned DividedPowers::degree_of(const Element& x) const {
  for (std::size_t n = 0; n < levels_.size(); ++n)
    if (x.ring() == levels_[n]->ring()) return static_cast<unsigned>(n);
  throw AlgebraError(ErrorCode::OwnerMismatch, x.str() + " is not in a divided power level of " + base_->name());
}

Element DividedPowers::shuffle(const Element& x, const Element& y) const {
  const unsigned n = degree_of(x), m = degree_of(y);
  if (n + m > max_degree())
    throw AlgebraError(ErrorCode::Unsupported, "shuffle lands in degree " + std::to_string(n + m) + " > " +
                                                   std::to_string(max_degree()));
  const SymPower& left = *levels_[n];
  const SymPower& right = *levels_[m];
  const SymPower& target = *levels_[n + m];
  const std::size_t r = left.base_rank();
  const auto& xc = left.ring()->coordinates(x);
  const auto& yc = right.ring()->coordinates(y);
  std::vector<Rational> out(target.multisets().size(), Rational(0));
  // O(M) * O(M') = prod_i C(mu_i + mu'_i, mu_i) O(M + M')
  for (std::size_t i = 0; i < xc.size(); ++i) {
    if (xc[i] == 0) continue;
    const auto mu = multiplicities(left.multisets()[i], r);
    for (std::size_t j = 0; j < yc.size(); ++j) {
      if (yc[j] == 0) continue;
      const auto nu = multiplicities(right.multisets()[j], r);
      Integer c = 1;
      for (std::size_t k = 0; k < r; ++k) c *= binomial(Integer(mu[k] + nu[k]), mu[k]);
      Multiset joined = left.multisets()[i];
      joined.insert(joined.end(), right.multisets()[j].begin(), right.multisets()[j].end());
      std::sort(joined.begin(), joined.end());
      out[*target.index_of(joined)] += xc[i] * yc[j] * Rational(c);
    }
  }
  return target.ring()->from_coordinates(std::move(out));
}

Element DividedPowers::shuffle_all(std::span<const Element> factors) const {
  Element acc = levels_[0]->ring()->one();
  for (const auto& f : factors) acc = shuffle(acc, f);
  return acc;
}

Element gamma_n(const Element& a, unsigned n) { return SymPower::create(a.ring(), n)->gamma(a); }

CheckResult divided_relations_check(const SymPower& p, std::size_t samples, std::uint64_t seed) {
  const unsigned n = p.degree();
  DividedPowers dp(p.base(), n);
  const RingHandle& base = p.base();
  Sampler sampler(seed);
  CheckResult result;
  auto mismatch = [&](std::vector<Element> witness, const std::string& what) {
    return CheckResult::fail(std::move(witness), what, result.checked);
  };
  for (std::size_t s = 0; s < samples; ++s) {
    Element a = base->sample(sampler), b = base->sample(sampler);
    Integer k = sampler.integer();
    ++result.checked;
    if (dp.gamma(a, 0) != dp.level(0)->ring()->one()) return mismatch({a}, "gamma_0(a) != 1");
    Integer kn = 1;
    for (unsigned i = 0; i < n; ++i) kn *= k;
    const Element ga = dp.gamma(a, n);
    if (dp.gamma(base->scale(k, a), n) != ga.ring()->scale(kn, ga))
      return mismatch({a, base->from_integer(k)}, "gamma_n(ka) != k^n gamma_n(a)");
    Element expansion = ga.ring()->zero();
    for (unsigned i = 0; i <= n; ++i) {
      if (dp.shuffle(dp.gamma(a, i), dp.gamma(a, n - i)) != ga.ring()->scale(binomial(Integer(n), i), ga))
        return mismatch({a}, "gamma_" + std::to_string(i) + "(a) gamma_" + std::to_string(n - i) +
                                 "(a) != C(" + std::to_string(n) + "," + std::to_string(i) + ") gamma_" +
                                 std::to_string(n) + "(a)");
      expansion += dp.shuffle(dp.gamma(a, i), dp.gamma(b, n - i));
    }
    if (dp.gamma(a + b, n) != expansion) return mismatch({a, b}, "gamma_n(a+b) != sum gamma_k(a) gamma_(n-k)(b)");
  }
  return result;
}

CheckResult gamma_multiplicativity_check(const SymPower& p, std::size_t samples, std::uint64_t seed) {
  Sampler sampler(seed);
  CheckResult result;
  for (std::size_t s = 0; s < samples; ++s) {
    Element a = p.base()->sample(sampler), b = p.base()->sample(sampler);
    ++result.checked;
    if (p.gamma(a * b) != p.gamma(a) * p.gamma(b))
      return CheckResult::fail({a, b}, "gamma_n(ab) != gamma_n(a) gamma_n(b)", result.checked);
  }
  return result;
}

Element cross_effect_expansion(const DividedPowers& dp, std::span<const Element> args) {
  const unsigned n = static_cast<unsigned>(args.size());
  const SymPower& level = *dp.level(n);
  Element total = level.ring()->zero();
  for (unsigned long mask = 0; mask < (1ul << n); ++mask) {
    Element partial = dp.base()->zero();
    unsigned size = 0;
    for (unsigned l = 0; l < n; ++l)
      if (mask >> l & 1) {
        partial += args[l];
        ++size;
      }
    Element g = level.gamma(partial);
    total += (n - size) % 2 ? -g : g;
  }
  std::vector<Element> linear;
  for (const auto& a : args) linear.push_back(dp.gamma(a, 1));
  Element product = dp.shuffle_all(linear);
  if (total != product) {
    std::string args_text;
    for (const auto& a : args) args_text += (args_text.empty() ? "" : ", ") + a.str();
    throw AlgebraError(ErrorCode::RelationViolation, "cross-effect expansion fails at (" + args_text + "): " +
                                                         total.str() + " != " + product.str());
  }
  return total;
}

CheckResult cross_effect_expansion_exhaustive(const DividedPowers& dp, unsigned n) {
  const SymPower& one = *dp.level(1);
  const std::size_t r = one.base_rank();
  std::vector<Element> basis;
  for (std::size_t i = 0; i < r; ++i) {
    std::vector<Rational> coords(r, Rational(0));
    coords[i] = 1;
    basis.push_back(one.base_element(coords));
  }
  CheckResult result;
  std::vector<std::size_t> choice(n, 0);
  while (true) {
    std::vector<Element> args;
    for (std::size_t i : choice) args.push_back(basis[i]);
    try {
      cross_effect_expansion(dp, args);
    } catch (const AlgebraError& e) {
      return CheckResult::fail(args, e.what(), result.checked);
    }
    ++result.checked;
    std::size_t pos = 0;
    while (pos < n && ++choice[pos] == r) choice[pos++] = 0;
    if (pos == n) break;
  }
  return result;
}

PolyMap extend_homogeneous(const PolyMap& phi, unsigned n, std::size_t homogeneity_samples, std::uint64_t seed) {
  return extend_homogeneous(phi, SymPower::create(phi.domain(), n), homogeneity_samples, seed);
}

PolyMap extend_homogeneous(const PolyMap& phi, const SymHandle& sym, std::size_t homogeneity_samples,
                           std::uint64_t seed) {
  if (sym->base() != phi.domain())
    throw AlgebraError(ErrorCode::OwnerMismatch, "Sym^n is not built on the domain of " + phi.name());
  const unsigned n = sym->degree();
  const RingHandle& codomain = phi.codomain();
  if (!invertible_in(codomain, factorial(n)))
    throw AlgebraError(ErrorCode::NonInvertibleFactorial,
                       std::to_string(n) + "! is not invertible in " + codomain->name());
  Sampler sampler(seed);
  for (std::size_t s = 0; s < homogeneity_samples; ++s) {
    Element a = phi.domain()->sample(sampler);
    Integer k = sampler.integer(-3, 3);
    Integer kn = 1;
    for (unsigned i = 0; i < n; ++i) kn *= k;
    if (phi(phi.domain()->scale(k, a)) != codomain->scale(kn, phi(a)))
      throw AlgebraError(ErrorCode::NotHomogeneous, phi.name() + " is not " + std::to_string(n) +
                                                        "-homogeneous at a = " + a.str() + ", k = " + k.get_str());
  }

  const std::size_t r = sym->base_rank();
  std::vector<Element> values;
  for (const auto& m : sym->multisets()) {
    // O(M) = e_1^(n_1) ... e_l^(n_l); its image is cr_n(phi) on the repeated
    // basis elements divided by n_1! ... n_l!.
    std::vector<Element> args;
    for (unsigned i : m) {
      std::vector<Rational> coords(r, Rational(0));
      coords[i] = 1;
      args.push_back(sym->base_element(coords));
    }
    Integer denominator = 1;
    for (unsigned mu : multiplicities(m, r)) denominator *= factorial(mu);
    Element value = n == 0 ? phi(phi.domain()->zero()) : cross_effect(phi, args);
    auto quotient = codomain->divide_exact(value, codomain->from_integer(denominator));
    if (!std::holds_alternative<Element>(quotient))
      throw AlgebraError(ErrorCode::NonInvertibleFactorial, "cannot divide " + value.str() + " by " +
                                                                denominator.get_str() + " in " + codomain->name());
    values.push_back(std::get<Element>(quotient));
  }
  auto eval = [sym, values, codomain](const Element& x) {
    const auto& coords = sym->ring()->coordinates(x);
    Element out = codomain->zero();
    for (std::size_t i = 0; i < coords.size(); ++i)
      if (coords[i] != 0) out += scale_rational(coords[i], values[i]);
    return out;
  };
  return PolyMap(sym->ring(), codomain, eval, 1, false, phi.name() + "-bar");
}

CheckResult extension_check(const PolyMap& phi, const PolyMap& extension, const SymPower& sym, std::size_t samples,
                            std::uint64_t seed) {
  Sampler sampler(seed);
  CheckResult result;
  for (std::size_t s = 0; s < samples; ++s) {
    Element a = phi.domain()->sample(sampler);
    ++result.checked;
    if (extension(sym.gamma(a)) != phi(a)) return CheckResult::fail({a}, "phi-bar(gamma_n(a)) != phi(a)", result.checked);
    Element x = sym.ring()->sample(sampler), y = sym.ring()->sample(sampler);
    if (extension(x + y) != extension(x) + extension(y))
      return CheckResult::fail({x, y}, "phi-bar is not additive", result.checked);
  }
  return result;
}

}  // namespace polywitt
