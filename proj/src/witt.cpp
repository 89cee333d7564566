#include "polywitt/witt.hpp"

#include <map>
#include <mutex>
#include <shared_mutex>
#include <sstream>

namespace polywitt {

// --- truncation sets --------------------------------------------------------

TruncationSet TruncationSet::p_typical(unsigned p, std::size_t length) {
  if (!is_prime(p)) throw AlgebraError(ErrorCode::BadTruncation, std::to_string(p) + " is not prime");
  if (length == 0) throw AlgebraError(ErrorCode::BadTruncation, "length must be at least 1");
  TruncationSet t;
  t.prime_ = p;
  std::uint64_t n = 1;
  for (std::size_t i = 0; i < length; ++i) {
    if (n > 0xffffffffULL) throw AlgebraError(ErrorCode::BadTruncation, "truncation too long");
    t.elements_.push_back(static_cast<unsigned>(n));
    n *= p;
  }
  t.build_divisors();
  return t;
}

TruncationSet TruncationSet::finite(std::vector<unsigned> elements) {
  std::sort(elements.begin(), elements.end());
  elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
  if (elements.empty() || elements.size() > 12)
    throw AlgebraError(ErrorCode::BadTruncation, "finite truncation sets need 1 to 12 elements");
  for (unsigned n : elements) {
    if (n == 0) throw AlgebraError(ErrorCode::BadTruncation, "truncation sets hold positive integers");
    for (unsigned d : divisors(n))
      if (!std::binary_search(elements.begin(), elements.end(), d))
        throw AlgebraError(ErrorCode::BadTruncation,
                           "not divisor-closed: " + std::to_string(d) + " divides " + std::to_string(n));
  }
  TruncationSet t;
  t.elements_ = std::move(elements);
  t.build_divisors();
  return t;
}

void TruncationSet::build_divisors() {
  divisors_.assign(elements_.size(), {});
  for (std::size_t j = 0; j < elements_.size(); ++j)
    for (std::size_t i = 0; i <= j; ++i)
      if (elements_[j] % elements_[i] == 0) divisors_[j].emplace_back(i, elements_[j] / elements_[i]);
}

TruncationSet TruncationSet::with_length(std::size_t length) const {
  if (!is_p_typical()) throw AlgebraError(ErrorCode::BadTruncation, "length change needs a p-typical set");
  return p_typical(prime_, length);
}

std::string TruncationSet::str() const {
  if (is_p_typical()) return std::to_string(size()) + ";" + std::to_string(prime_);
  std::string s = "{";
  for (std::size_t i = 0; i < elements_.size(); ++i) s += (i ? "," : "") + std::to_string(elements_[i]);
  return s + "}";
}

// --- vectors ------------------------------------------------------------------

WittVector::WittVector(TruncationSet t, RingHandle r, std::vector<Element> c)
    : trunc(std::move(t)), ring(std::move(r)), coords(std::move(c)) {
  if (coords.size() != trunc.size())
    throw AlgebraError(ErrorCode::MalformedInput, "Witt vector has " + std::to_string(coords.size()) +
                                                      " coordinates, truncation needs " + std::to_string(trunc.size()));
  for (const auto& x : coords) require_owner(x, ring);
}

WittVector WittVector::zero(const TruncationSet& t, const RingHandle& r) {
  return WittVector(t, r, std::vector<Element>(t.size(), r->zero()));
}

WittVector WittVector::one(const TruncationSet& t, const RingHandle& r) {
  std::vector<Element> c(t.size(), r->zero());
  c[0] = r->one();
  return WittVector(t, r, std::move(c));
}

std::string WittVector::str() const {
  std::string s = "(";
  for (std::size_t i = 0; i < coords.size(); ++i) s += (i ? ", " : "") + coords[i].str();
  return s + ")";
}

// --- ghost --------------------------------------------------------------------

namespace {

// Powers of one element, reusing the largest cached exponent dividing the request.
class PowerCache {
 public:
  explicit PowerCache(Element base) { cache_.emplace(1U, std::move(base)); }
  const Element& get(unsigned e) {
    if (auto it = cache_.find(e); it != cache_.end()) return it->second;
    for (auto it = cache_.rbegin(); it != cache_.rend(); ++it)
      if (e % it->first == 0) return cache_.emplace(e, it->second.pow(e / it->first)).first->second;
    return cache_.emplace(e, cache_.at(1U).pow(e)).first->second;
  }

 private:
  std::map<unsigned, Element> cache_;
};

}  // namespace

std::vector<Element> ghost(const WittVector& v) {
  std::vector<Element> w;
  const auto& n = v.trunc.elements();
  std::vector<PowerCache> powers;
  for (const auto& c : v.coords) powers.emplace_back(c);
  for (std::size_t j = 0; j < v.trunc.size(); ++j) {
    Element total = v.ring->zero();
    for (auto [i, e] : v.trunc.divisors_of(j)) total = total + powers[i].get(e).scaled(n[i]);
    w.push_back(total);
  }
  return w;
}

UnghostResult unghost(std::span<const Element> g, const TruncationSet& trunc, const RingHandle& ring) {
  if (g.size() != trunc.size()) throw AlgebraError(ErrorCode::MalformedInput, "ghost vector has wrong length");
  const auto& n = trunc.elements();
  std::vector<Element> a;
  std::vector<PowerCache> powers;
  for (std::size_t j = 0; j < trunc.size(); ++j) {
    require_owner(g[j], ring);
    Element rest = g[j];
    for (auto [i, e] : trunc.divisors_of(j))
      if (i != j) rest = rest - powers[i].get(e).scaled(n[i]);
    auto q = divide_by_integer(rest, n[j]);
    if (auto* failure = std::get_if<NotDivisible>(&q))
      return GhostObstruction{j, failure->residue,
                              "coordinate " + std::to_string(j) + ": " + rest.str() + " is not divisible by " +
                                  std::to_string(n[j])};
    a.push_back(std::get<Element>(q));
    powers.emplace_back(a.back());
  }
  return WittVector(trunc, ring, std::move(a));
}

WittVector unghost_or_throw(std::span<const Element> g, const TruncationSet& trunc, const RingHandle& ring) {
  auto r = unghost(g, trunc, ring);
  if (auto* o = std::get_if<GhostObstruction>(&r)) throw AlgebraError(ErrorCode::NotInGhostImage, o->detail);
  return std::get<WittVector>(std::move(r));
}

// --- universal polynomials -----------------------------------------------------

namespace {

std::shared_ptr<const PolynomialRing> symbol_ring(const std::string& a, const std::string& b, std::size_t k) {
  std::vector<std::string> vars;
  for (std::size_t i = 0; i < k; ++i) vars.push_back(a + std::to_string(i));
  if (!b.empty())
    for (std::size_t i = 0; i < k; ++i) vars.push_back(b + std::to_string(i));
  return make_polynomial_ring(std::move(vars));
}

std::vector<PolyTerms> terms_of(const WittVector& v) {
  std::vector<PolyTerms> out;
  for (const auto& c : v.coords) out.push_back(c.as<PolyTerms>());
  return out;
}

WittVector solve_symbolic(std::span<const Element> g, const TruncationSet& trunc, const RingHandle& ring) {
  auto r = unghost(g, trunc, ring);
  // integrality of the universal polynomials is a theorem; failure means a bug
  if (auto* o = std::get_if<GhostObstruction>(&r))
    throw AlgebraError(ErrorCode::Internal, "universal polynomial not integral: " + o->detail);
  return std::get<WittVector>(std::move(r));
}

template <class T>
class BuildOnceCache {
 public:
  template <class Build>
  std::shared_ptr<const T> get(const std::string& key, Build build) {
    {
      std::shared_lock lock(mutex_);
      if (auto it = entries_.find(key); it != entries_.end()) return it->second;
    }
    std::unique_lock lock(mutex_);
    if (auto it = entries_.find(key); it != entries_.end()) return it->second;
    auto value = std::make_shared<const T>(build());
    entries_.emplace(key, value);
    return value;
  }

 private:
  std::shared_mutex mutex_;
  std::map<std::string, std::shared_ptr<const T>> entries_;
};

}  // namespace

std::shared_ptr<const UniversalPolynomials> universal_polynomials(const TruncationSet& trunc) {
  static BuildOnceCache<UniversalPolynomials> cache;
  return cache.get(trunc.str(), [&trunc] {
    const std::size_t k = trunc.size();
    UniversalPolynomials u;
    u.ring = symbol_ring("a", "b", k);
    std::vector<Element> av, bv;
    for (std::size_t i = 0; i < k; ++i) {
      av.push_back(u.ring->variable(i));
      bv.push_back(u.ring->variable(k + i));
    }
    auto ga = ghost(WittVector(trunc, u.ring, av));
    auto gb = ghost(WittVector(trunc, u.ring, bv));
    std::vector<Element> gs, gp, gn;
    for (std::size_t j = 0; j < k; ++j) {
      gs.push_back(ga[j] + gb[j]);
      gp.push_back(ga[j] * gb[j]);
      gn.push_back(-ga[j]);
    }
    u.sum = terms_of(solve_symbolic(gs, trunc, u.ring));
    u.product = terms_of(solve_symbolic(gp, trunc, u.ring));
    u.negation = terms_of(solve_symbolic(gn, trunc, u.ring));
    return u;
  });
}

std::shared_ptr<const std::vector<PolyTerms>> universal_frobenius(unsigned p, std::size_t m) {
  static BuildOnceCache<std::vector<PolyTerms>> cache;
  return cache.get(std::to_string(m) + ";" + std::to_string(p), [p, m] {
    auto longer = TruncationSet::p_typical(p, m + 1);
    auto shorter = TruncationSet::p_typical(p, m);
    auto ring = symbol_ring("a", "", m + 1);
    std::vector<Element> av;
    for (std::size_t i = 0; i <= m; ++i) av.push_back(ring->variable(i));
    auto g = ghost(WittVector(longer, ring, av));
    std::vector<Element> shifted(g.begin() + 1, g.end());
    return terms_of(solve_symbolic(shifted, shorter, ring));
  });
}

CheckResult verify_universal_polynomials(const TruncationSet& trunc) {
  auto u = universal_polynomials(trunc);
  const std::size_t k = trunc.size();
  auto wrap = [&](const std::vector<PolyTerms>& t) {
    std::vector<Element> c;
    for (const auto& x : t) c.push_back(u->ring->element(x));
    return WittVector(trunc, u->ring, c);
  };
  std::vector<Element> av, bv;
  for (std::size_t i = 0; i < k; ++i) {
    av.push_back(u->ring->variable(i));
    bv.push_back(u->ring->variable(k + i));
  }
  auto ga = ghost(WittVector(trunc, u->ring, av));
  auto gb = ghost(WittVector(trunc, u->ring, bv));
  auto gs = ghost(wrap(u->sum));
  auto gp = ghost(wrap(u->product));
  auto gn = ghost(wrap(u->negation));
  CheckResult result;
  for (std::size_t j = 0; j < k; ++j) {
    ++result.checked;
    if (gs[j] != ga[j] + gb[j]) return CheckResult::fail({gs[j]}, "sum identity fails at " + std::to_string(j));
    if (gp[j] != ga[j] * gb[j]) return CheckResult::fail({gp[j]}, "product identity fails at " + std::to_string(j));
    if (gn[j] != -ga[j]) return CheckResult::fail({gn[j]}, "negation identity fails at " + std::to_string(j));
  }
  return result;
}

// --- arithmetic ------------------------------------------------------------------

namespace {

void require_compatible(const WittVector& u, const WittVector& v) {
  if (!(u.trunc == v.trunc)) throw AlgebraError(ErrorCode::OwnerMismatch, "Witt vectors have different truncations");
  if (u.ring != v.ring) throw AlgebraError(ErrorCode::OwnerMismatch, "Witt vectors over different rings");
}

bool ghost_route_available(const TruncationSet& trunc, const RingHandle& ring) {
  for (unsigned n : trunc.elements())
    for (unsigned q : divisors(n))
      if (q > 1 && is_prime(q) && ring->p_torsion_free(q) != Tristate::Yes) return false;
  return true;
}

bool use_ghost(WittRoute route, const TruncationSet& trunc, const RingHandle& ring) {
  switch (route) {
    case WittRoute::Ghost:
      if (!ghost_route_available(trunc, ring))
        throw AlgebraError(ErrorCode::TorsionBase, "ghost route needs a torsion-free base, got " + ring->name());
      return true;
    case WittRoute::Universal: return false;
    default: return ghost_route_available(trunc, ring);
  }
}

WittVector apply_universal(const std::vector<PolyTerms>& polys, const WittVector& u, const WittVector* v,
                           const TruncationSet& out_trunc) {
  std::vector<Element> values = u.coords;
  if (v) values.insert(values.end(), v->coords.begin(), v->coords.end());
  else values.resize(2 * u.coords.size(), u.ring->zero());
  std::vector<Element> coords;
  for (const auto& p : polys) coords.push_back(evaluate(p, values, u.ring));
  return WittVector(out_trunc, u.ring, std::move(coords));
}

template <class Op>
WittVector via_ghost(const WittVector& u, const WittVector& v, Op op) {
  auto gu = ghost(u), gv = ghost(v);
  for (std::size_t j = 0; j < gu.size(); ++j) gu[j] = op(gu[j], gv[j]);
  return unghost_or_throw(gu, u.trunc, u.ring);
}

}  // namespace

WittVector witt_add(const WittVector& u, const WittVector& v, WittRoute route) {
  require_compatible(u, v);
  if (use_ghost(route, u.trunc, u.ring)) return via_ghost(u, v, [](const Element& x, const Element& y) { return x + y; });
  return apply_universal(universal_polynomials(u.trunc)->sum, u, &v, u.trunc);
}

WittVector witt_mul(const WittVector& u, const WittVector& v, WittRoute route) {
  require_compatible(u, v);
  if (use_ghost(route, u.trunc, u.ring)) return via_ghost(u, v, [](const Element& x, const Element& y) { return x * y; });
  return apply_universal(universal_polynomials(u.trunc)->product, u, &v, u.trunc);
}

WittVector witt_neg(const WittVector& u, WittRoute route) {
  if (use_ghost(route, u.trunc, u.ring)) {
    auto g = ghost(u);
    for (auto& x : g) x = -x;
    return unghost_or_throw(g, u.trunc, u.ring);
  }
  return apply_universal(universal_polynomials(u.trunc)->negation, u, nullptr, u.trunc);
}

WittVector witt_sub(const WittVector& u, const WittVector& v, WittRoute route) {
  require_compatible(u, v);
  if (use_ghost(route, u.trunc, u.ring)) return via_ghost(u, v, [](const Element& x, const Element& y) { return x - y; });
  return witt_add(u, witt_neg(v, route), route);
}

WittVector teichmuller(const Element& a, const TruncationSet& trunc) {
  std::vector<Element> c(trunc.size(), a.ring()->zero());
  c[0] = a;
  return WittVector(trunc, a.ring(), std::move(c));
}

WittVector frobenius(const WittVector& v, WittRoute route) {
  if (!v.trunc.is_p_typical()) throw AlgebraError(ErrorCode::BadTruncation, "Frobenius needs a p-typical truncation");
  if (v.trunc.size() < 2) throw AlgebraError(ErrorCode::BadTruncation, "Frobenius needs length at least 2");
  const std::size_t m = v.trunc.size() - 1;
  auto shorter = v.trunc.with_length(m);
  if (use_ghost(route, v.trunc, v.ring)) {
    auto g = ghost(v);
    std::vector<Element> shifted(g.begin() + 1, g.end());
    return unghost_or_throw(shifted, shorter, v.ring);
  }
  auto polys = universal_frobenius(v.trunc.prime(), m);
  std::vector<Element> coords;
  for (const auto& p : *polys) coords.push_back(evaluate(p, v.coords, v.ring));
  return WittVector(shorter, v.ring, std::move(coords));
}

WittVector verschiebung(const WittVector& v) {
  if (!v.trunc.is_p_typical()) throw AlgebraError(ErrorCode::BadTruncation, "Verschiebung needs a p-typical truncation");
  std::vector<Element> c{v.ring->zero()};
  c.insert(c.end(), v.coords.begin(), v.coords.end());
  return WittVector(v.trunc.with_length(v.trunc.size() + 1), v.ring, std::move(c));
}

WittVector restrict_witt(const WittVector& v) {
  if (!v.trunc.is_p_typical()) throw AlgebraError(ErrorCode::BadTruncation, "restriction needs a p-typical truncation");
  if (v.trunc.size() < 2) throw AlgebraError(ErrorCode::BadTruncation, "cannot restrict below length 1");
  std::vector<Element> c(v.coords.begin(), v.coords.end() - 1);
  return WittVector(v.trunc.with_length(v.trunc.size() - 1), v.ring, std::move(c));
}

// --- Dwork ----------------------------------------------------------------------

bool dwork_membership(std::span<const Element> g, unsigned p, const PolyMap& phi, std::size_t lift_samples,
                      std::uint64_t seed) {
  if (g.empty()) return true;
  const RingHandle& ring = g[0].ring();
  if (phi.domain() != ring || phi.codomain() != ring)
    throw AlgebraError(ErrorCode::BadFrobeniusLift, "Frobenius lift must be an endomorphism of " + ring->name());
  if (!is_p_torsion_free(ring, p)) throw AlgebraError(ErrorCode::TorsionBase, ring->name() + " has p-torsion");
  Sampler sampler(seed);
  if (phi(ring->one()) != ring->one()) throw AlgebraError(ErrorCode::BadFrobeniusLift, "lift is not unital");
  for (std::size_t s = 0; s < lift_samples; ++s) {
    Element a = ring->sample(sampler), b = ring->sample(sampler);
    if (phi(a + b) != phi(a) + phi(b) || phi(a * b) != phi(a) * phi(b))
      throw AlgebraError(ErrorCode::BadFrobeniusLift, "lift is not a ring map at " + a.str() + ", " + b.str());
    if (!divides(p, phi(a) - a.pow(p)))
      throw AlgebraError(ErrorCode::BadFrobeniusLift, "phi(a) - a^p not divisible by p at a = " + a.str());
  }
  Integer pj = 1;
  for (std::size_t j = 1; j < g.size(); ++j) {
    pj *= p;
    if (!divides(pj, g[j] - phi(g[j - 1]))) return false;
  }
  return true;
}

// --- lifting polynomial maps -----------------------------------------------------------

UnghostResult lift_polymap(const PolyMap& f, const WittVector& a) {
  if (!a.trunc.is_p_typical()) throw AlgebraError(ErrorCode::BadTruncation, "lifting needs a p-typical truncation");
  require_owner(a.coords.at(0), f.domain());
  if (!f.multiplicative()) throw AlgebraError(ErrorCode::MalformedInput, f.name() + " is not declared multiplicative");
  if (!is_p_torsion_free(f.codomain(), a.trunc.prime()))
    throw AlgebraError(ErrorCode::TorsionBase, f.codomain()->name() + " has p-torsion");
  // Degree >= p is allowed here: the result then reports where the lift breaks down.
  auto g = ghost(a);
  for (auto& x : g) x = f(x);
  return unghost(g, a.trunc, f.codomain());
}

std::string LiftFormula::text() const {
  if (j == 0) return "b_0 = f(a_0)";
  std::ostringstream out;
  out << "b_1 =";
  bool first = true;
  for (const auto& t : terms) {
    Integer c = t.coefficient;
    bool negative = c < 0;
    if (negative) c = -c;
    out << (first ? (negative ? " -" : " ") : (negative ? " - " : " + "));
    if (c != 1) out << c.get_str();
    out << "f(a_0^" << p << "+";
    if (t.shift != 1) out << t.shift;
    out << "a_1)";
    first = false;
  }
  return out.str();
}

Element LiftFormula::evaluate(const PolyMap& f, const WittVector& a) const {
  if (j == 0) return f(a.coords.at(0));
  Element base = a.coords.at(0).pow(p);
  Element total = f.codomain()->zero();
  for (const auto& t : terms) total = total + f(base + a.coords.at(1).scaled(t.shift)).scaled(t.coefficient);
  return total;
}

LiftFormula universal_lift_formula(unsigned n, unsigned p, std::size_t j) {
  if (j > 1) throw AlgebraError(ErrorCode::UnsupportedIndex, "closed forms are only available for j = 0, 1");
  if (!is_prime(p) || n >= p)
    throw AlgebraError(ErrorCode::DegreeViolation, "the lift formula needs a prime p above the degree");
  LiftFormula formula;
  formula.p = p;
  formula.j = j;
  if (j == 0) {
    formula.terms.push_back({Integer(1), 0});
    return formula;
  }
  for (unsigned i = 1; i < p; ++i) {
    Integer c = binomial(p, i) / p;
    formula.terms.push_back({i % 2 == 0 ? c : Integer(-c), i});
  }
  return formula;
}

// --- WittRing ---------------------------------------------------------------------------

Element WittRing::wrap(const WittVector& v) const {
  if (!(v.trunc == trunc_) || v.ring != base_) throw AlgebraError(ErrorCode::OwnerMismatch, "vector does not belong to " + name());
  return element(v.coords);
}

WittVector WittRing::unwrap(const Element& a) const {
  require_owner(a, self());
  return WittVector(trunc_, base_, a.as<std::vector<Element>>());
}

std::string WittRing::name() const {
  if (trunc_.is_p_typical())
    return "W_" + std::to_string(trunc_.size()) + "(" + base_->name() + ";" + std::to_string(trunc_.prime()) + ")";
  return "W_" + trunc_.str() + "(" + base_->name() + ")";
}

Element WittRing::zero() const { return wrap(WittVector::zero(trunc_, base_)); }
Element WittRing::one() const { return wrap(WittVector::one(trunc_, base_)); }
Element WittRing::add(const Element& a, const Element& b) const { return wrap(witt_add(unwrap(a), unwrap(b), route_)); }
Element WittRing::neg(const Element& a) const { return wrap(witt_neg(unwrap(a), route_)); }
Element WittRing::sub(const Element& a, const Element& b) const { return wrap(witt_sub(unwrap(a), unwrap(b), route_)); }
Element WittRing::mul(const Element& a, const Element& b) const { return wrap(witt_mul(unwrap(a), unwrap(b), route_)); }

DivisionResult WittRing::divide_exact(const Element& e, const Element& d) const {
  auto ge = ghost(unwrap(e)), gd = ghost(unwrap(d));
  std::vector<Element> q;
  for (std::size_t j = 0; j < ge.size(); ++j) {
    auto r = base_->divide_exact(ge[j], gd[j]);
    if (auto* failure = std::get_if<NotDivisible>(&r))
      return NotDivisible{e, "ghost coordinate " + std::to_string(j) + ": " + failure->detail};
    q.push_back(std::get<Element>(r));
  }
  auto r = unghost(q, trunc_, base_);
  if (auto* o = std::get_if<GhostObstruction>(&r)) return NotDivisible{e, "quotient not in ghost image: " + o->detail};
  return wrap(std::get<WittVector>(r));
}

Element WittRing::sample(Sampler& sampler) const {
  std::vector<Element> c;
  for (std::size_t i = 0; i < trunc_.size(); ++i) c.push_back(base_->sample(sampler));
  return element(std::move(c));
}

std::string WittRing::format(const Element& a) const { return unwrap(a).str(); }

}  // namespace polywitt
