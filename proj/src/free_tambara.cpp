#include "polywitt/free_tambara.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace polywitt {

namespace {

void add_term(PolyTerms& terms, const Monomial& m, const Integer& c) {
  if (c == 0) return;
  auto [it, inserted] = terms.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms.erase(it);
  }
}

PolyTerms scaled(const PolyTerms& terms, const Integer& k) {
  PolyTerms out;
  if (k == 0) return out;
  for (const auto& [m, c] : terms) out.emplace(m, c * k);
  return out;
}

// All exponent vectors with sum of weight[i] * e[i] <= bound.
std::vector<Monomial> monomials_up_to(const std::vector<unsigned>& weight, unsigned bound) {
  std::vector<Monomial> out;
  Monomial current(weight.size(), 0);
  std::function<void(std::size_t, unsigned)> rec = [&](std::size_t i, unsigned used) {
    if (i == weight.size()) {
      out.push_back(current);
      return;
    }
    for (unsigned e = 0; used + e * weight[i] <= bound; ++e) {
      current[i] = e;
      rec(i + 1, used + e * weight[i]);
    }
    current[i] = 0;
  };
  rec(0, 0);
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------

void PresheafPair::validate() const {
  if (tau.size() != X.size()) throw AlgebraError(ErrorCode::BadInvolution, "involution must act on every element of X");
  for (std::size_t x = 0; x < X.size(); ++x)
    if (tau[x] >= X.size() || tau[tau[x]] != x)
      throw AlgebraError(ErrorCode::BadInvolution, "involution on X does not square to the identity at " + X[x]);
  if (res.size() != Y.size()) throw AlgebraError(ErrorCode::NotCompatible, "res must be defined on every element of Y");
  for (std::size_t y = 0; y < Y.size(); ++y)
    if (res[y] >= X.size() || tau[res[y]] != res[y])
      throw AlgebraError(ErrorCode::NotCompatible, "res(" + Y[y] + ") is not a fixed point of X");
  std::set<std::string> names(X.begin(), X.end());
  names.insert(Y.begin(), Y.end());
  if (names.size() != X.size() + Y.size()) throw AlgebraError(ErrorCode::MalformedInput, "names in X and Y must differ");
}

PresheafPair PresheafPair::free_pairs(const std::vector<std::string>& names) {
  PresheafPair p;
  for (const auto& n : names) {
    p.X.push_back(n);
    p.X.push_back(n + "bar");
    p.tau.push_back(p.X.size() - 1);
    p.tau.push_back(p.X.size() - 2);
  }
  return p;
}

PresheafPair PresheafPair::with_fixed(const std::vector<std::string>& fixed) const {
  PresheafPair p = *this;
  for (const auto& n : fixed) {
    p.X.push_back(n);
    p.tau.push_back(p.X.size() - 1);
  }
  return p;
}

PresheafPair PresheafPair::with_y(const std::string& name, const std::string& restricts_to) const {
  PresheafPair p = *this;
  auto it = std::find(X.begin(), X.end(), restricts_to);
  if (it == X.end()) throw AlgebraError(ErrorCode::MalformedInput, "unknown element '" + restricts_to + "' of X");
  p.Y.push_back(name);
  p.res.push_back(static_cast<std::size_t>(it - X.begin()));
  return p;
}

// ---------------------------------------------------------------------------

FreeTambara::FreeTambara(PresheafPair pair) : pair_(std::move(pair)) {
  pair_.validate();
  x_ring_ = make_polynomial_ring(pair_.X);
  tau_perm_ = pair_.tau;
  tau_ = Involution::variable_swap(x_ring_, tau_perm_);
  orbit_of_.assign(pair_.X.size(), 0);
  for (std::size_t x = 0; x < pair_.X.size(); ++x) {
    if (pair_.tau[x] < x) {
      orbit_of_[x] = orbit_of_[pair_.tau[x]];
      continue;
    }
    orbit_of_[x] = orbit_reps_.size();
    orbit_reps_.push_back(x);
  }
  std::vector<std::string> s1_names = pair_.Y;
  for (std::size_t rep : orbit_reps_) s1_names.push_back("N(" + pair_.X[rep] + ")");
  s1_ring_ = make_polynomial_ring(s1_names);
}

FreeTambaraHandle FreeTambara::create(PresheafPair pair) {
  return FreeTambaraHandle(new FreeTambara(std::move(pair)));
}

std::string FreeTambara::name() const {
  std::string x, y;
  for (const auto& n : pair_.X) x += (x.empty() ? "" : ",") + n;
  for (const auto& n : pair_.Y) y += (y.empty() ? "" : ",") + n;
  return "A[" + x + ";" + y + "]";
}

bool FreeTambara::is_fixed(const Monomial& m) const {
  for (std::size_t x = 0; x < m.size(); ++x)
    if (m[x] != m[tau_perm_[x]]) return false;
  return true;
}

Monomial FreeTambara::conjugate(const Monomial& m) const {
  Monomial out(m.size(), 0);
  for (std::size_t x = 0; x < m.size(); ++x) out[tau_perm_[x]] = m[x];
  return out;
}

Monomial FreeTambara::representative(const Monomial& m) const { return std::max(m, conjugate(m)); }

void FreeTambara::split_into(const PolyTerms& source, PolyTerms& fixed, PolyTerms& classes, const Integer& factor) const {
  for (const auto& [m, c] : source) {
    if (is_fixed(m)) add_term(fixed, m, c * factor);
    else add_term(classes, representative(m), c * factor);
  }
}

Element FreeTambara::make(FreeTopElement parts) const {
  for (const auto& [m, c] : parts.s2)
    if (!is_fixed(m)) throw AlgebraError(ErrorCode::MalformedInput, "second summand needs fixed monomials");
  PolyTerms classes;
  for (const auto& [m, c] : parts.s3) {
    if (is_fixed(m)) throw AlgebraError(ErrorCode::MalformedInput, "third summand needs non-fixed monomials");
    add_term(classes, representative(m), c);
  }
  for (auto it = parts.s1.begin(); it != parts.s1.end();) it = it->second == 0 ? parts.s1.erase(it) : std::next(it);
  for (auto it = parts.s2.begin(); it != parts.s2.end();) it = it->second == 0 ? parts.s2.erase(it) : std::next(it);
  return element(std::vector<Element>{s1_ring_->element(std::move(parts.s1)), x_ring_->element(std::move(parts.s2)),
                                      x_ring_->element(std::move(classes))});
}

FreeTopElement FreeTambara::parts(const Element& a) const {
  require_owner(a, self());
  const auto& v = a.as<std::vector<Element>>();
  return {v[0].as<PolyTerms>(), v[1].as<PolyTerms>(), v[2].as<PolyTerms>()};
}

Element FreeTambara::zero() const { return make({}); }

Element FreeTambara::one() const {
  FreeTopElement p;
  p.s1.emplace(Monomial(s1_ring_->arity(), 0), Integer(1));
  return make(std::move(p));
}

Element FreeTambara::add(const Element& a, const Element& b) const {
  FreeTopElement x = parts(a), y = parts(b);
  for (const auto& [m, c] : y.s1) add_term(x.s1, m, c);
  for (const auto& [m, c] : y.s2) add_term(x.s2, m, c);
  for (const auto& [m, c] : y.s3) add_term(x.s3, m, c);
  return make(std::move(x));
}

Element FreeTambara::neg(const Element& a) const {
  FreeTopElement x = parts(a);
  return make({scaled(x.s1, -1), scaled(x.s2, -1), scaled(x.s3, -1)});
}

PolyTerms FreeTambara::restrict_s1(const PolyTerms& s1) const {
  if (s1.empty()) return {};
  std::vector<Element> values;
  for (std::size_t y = 0; y < pair_.Y.size(); ++y) values.push_back(x_ring_->variable(pair_.res[y]));
  for (std::size_t rep : orbit_reps_) values.push_back(x_ring_->variable(rep) * x_ring_->variable(tau_perm_[rep]));
  return evaluate(s1, values, x_ring_).as<PolyTerms>();
}

Element FreeTambara::mul(const Element& a, const Element& b) const {
  const FreeTopElement x = parts(a), y = parts(b);
  FreeTopElement out;
  // m g mbar . m' g' mbar'
  out.s1 = poly::multiply(x.s1, y.s1);
  const PolyTerms rx = restrict_s1(x.s1), ry = restrict_s1(y.s1);
  // m g mbar . m' k mbar' = m m' res(g) k (m m')bar, in the second summand
  for (const auto& [m, c] : poly::multiply(rx, y.s2)) add_term(out.s2, m, c);
  for (const auto& [m, c] : poly::multiply(ry, x.s2)) add_term(out.s2, m, c);
  // m g mbar . (h + hbar) = m res(g) mbar h + conjugate
  split_into(poly::multiply(rx, y.s3), out.s2, out.s3, 1);
  split_into(poly::multiply(ry, x.s3), out.s2, out.s3, 1);
  // m k mbar . m' k' mbar' = 2 m m' k k' (m m')bar
  for (const auto& [m, c] : poly::multiply(x.s2, y.s2)) add_term(out.s2, m, 2 * c);
  // m k mbar . (h + hbar) = 2 (m k mbar h + conjugate)
  split_into(poly::multiply(x.s2, y.s3), out.s2, out.s3, 2);
  split_into(poly::multiply(x.s3, y.s2), out.s2, out.s3, 2);
  // (h + hbar)(h' + hbar') = [h h'] + [h hbar'], where [f] is f when f is
  // fixed and f + fbar otherwise
  for (const auto& [h, c] : x.s3)
    for (const auto& [h2, d] : y.s3) {
      Monomial same(h.size()), cross(h.size());
      const Monomial h2bar = conjugate(h2);
      for (std::size_t i = 0; i < h.size(); ++i) {
        same[i] = h[i] + h2[i];
        cross[i] = h[i] + h2bar[i];
      }
      const bool same_fixed = is_fixed(same), cross_fixed = is_fixed(cross);
      if (same_fixed && cross_fixed)
        throw AlgebraError(ErrorCode::Internal, "h h' and h hbar' both fixed for a non-fixed h");
      const Integer cd = c * d;
      if (same_fixed) add_term(out.s2, same, cd);
      else add_term(out.s3, representative(same), cd);
      if (cross_fixed) add_term(out.s2, cross, cd);
      else add_term(out.s3, representative(cross), cd);
    }
  return make(std::move(out));
}

Element FreeTambara::sample(Sampler& sampler) const {
  FreeTopElement p;
  const std::size_t nx = pair_.X.size(), n1 = s1_ring_->arity();
  auto random_monomial = [&](std::size_t arity, std::size_t max_degree) {
    Monomial m(arity, 0);
    if (arity == 0) return m;
    std::size_t degree = sampler.index(max_degree + 1);
    for (std::size_t d = 0; d < degree; ++d) m[sampler.index(arity)] += 1;
    return m;
  };
  for (std::size_t t = sampler.index(3); t > 0; --t) add_term(p.s1, random_monomial(n1, 2), sampler.integer(-3, 3));
  for (std::size_t t = sampler.index(3); t > 0; --t) {
    Monomial m = random_monomial(nx, 1), mbar = conjugate(m);
    for (std::size_t i = 0; i < nx; ++i) m[i] += mbar[i];
    add_term(p.s2, m, sampler.integer(-3, 3));
  }
  for (std::size_t t = sampler.index(3); t > 0; --t) {
    Monomial h = random_monomial(nx, 2);
    if (!is_fixed(h)) add_term(p.s3, representative(h), sampler.integer(-3, 3));
  }
  return make(std::move(p));
}

std::string FreeTambara::format(const Element& a) const {
  const FreeTopElement p = parts(a);
  PolyTerms under = p.s2;
  for (const auto& [m, c] : p.s3) add_term(under, m, c);
  std::string out;
  if (!p.s1.empty()) out = s1_ring_->format(s1_ring_->element(p.s1));
  if (!under.empty()) out += (out.empty() ? "" : " + ") + std::string("tr(") + x_ring_->format(x_ring_->element(under)) + ")";
  return out.empty() ? "0" : out;
}

Element FreeTambara::y_generator(std::size_t y) const {
  Monomial m(s1_ring_->arity(), 0);
  m.at(y) = 1;
  FreeTopElement p;
  p.s1.emplace(m, Integer(1));
  return make(std::move(p));
}

Element FreeTambara::restrict(const Element& top) const {
  const FreeTopElement p = parts(top);
  PolyTerms out = restrict_s1(p.s1);
  for (const auto& [m, c] : p.s2) add_term(out, m, 2 * c);
  for (const auto& [h, c] : p.s3) {
    add_term(out, h, c);
    add_term(out, conjugate(h), c);
  }
  return x_ring_->element(std::move(out));
}

Element FreeTambara::transfer(const Element& a) const {
  require_owner(a, x_ring_);
  FreeTopElement p;
  split_into(a.as<PolyTerms>(), p.s2, p.s3, 1);
  return make(std::move(p));
}

Element FreeTambara::norm_monomial(const Monomial& m) const {
  Monomial s1(s1_ring_->arity(), 0);
  for (std::size_t x = 0; x < m.size(); ++x) s1[pair_.Y.size() + orbit_of_[x]] += m[x];
  FreeTopElement p;
  p.s1.emplace(std::move(s1), Integer(1));
  return make(std::move(p));
}

Element FreeTambara::norm(const Element& a) const {
  require_owner(a, x_ring_);
  // Reciprocity over the terms t_i: N(sum t_i) = sum N(t_i) + tr(sum_{i<j} t_i tau(t_j)),
  // with N(c m) = N(c) N(m) and N(c) = c + C(c, 2) tr(1).
  const PolyTerms& terms = a.as<PolyTerms>();
  std::vector<std::pair<Monomial, Integer>> list(terms.begin(), terms.end());
  Element out = zero();
  const Monomial empty(pair_.X.size(), 0);
  for (const auto& [m, c] : list) {
    FreeTopElement nc;
    add_term(nc.s1, Monomial(s1_ring_->arity(), 0), c);
    add_term(nc.s2, empty, binomial(c, 2));
    out += make(std::move(nc)) * norm_monomial(m);
  }
  PolyTerms cross;
  for (std::size_t i = 0; i < list.size(); ++i)
    for (std::size_t j = i + 1; j < list.size(); ++j) {
      const Monomial bar = conjugate(list[j].first);
      Monomial m(empty.size());
      for (std::size_t x = 0; x < m.size(); ++x) m[x] = list[i].first[x] + bar[x];
      add_term(cross, m, list[i].second * list[j].second);
    }
  return out + transfer(x_ring_->element(std::move(cross)));
}

Z2Tambara FreeTambara::tambara() const {
  auto me = std::static_pointer_cast<const FreeTambara>(self());
  Z2Tambara t;
  t.name = name();
  t.A = x_ring_;
  t.B = me;
  t.tau = tau_;
  t.res = [me](const Element& b) { return me->restrict(b); };
  t.tr = [me](const Element& a) { return me->transfer(a); };
  t.norm = [me](const Element& a) { return me->norm(a); };
  return t;
}

std::vector<Element> FreeTambara::basis_up_to(unsigned degree) const {
  std::vector<Element> out;
  std::vector<unsigned> s1_weight(pair_.Y.size(), 1);
  s1_weight.resize(s1_ring_->arity(), 2);
  for (auto& m : monomials_up_to(s1_weight, degree)) {
    FreeTopElement p;
    p.s1.emplace(std::move(m), Integer(1));
    out.push_back(make(std::move(p)));
  }
  for (auto& m : monomials_up_to(std::vector<unsigned>(pair_.X.size(), 1), degree)) {
    FreeTopElement p;
    if (is_fixed(m)) p.s2.emplace(m, Integer(1));
    else if (representative(m) == m) p.s3.emplace(m, Integer(1));
    else continue;
    out.push_back(make(std::move(p)));
  }
  return out;
}

Element free_mul(const Element& a, const Element& b) {
  if (a.ring()->kind() != RingKind::FreeTambara) throw AlgebraError(ErrorCode::OwnerMismatch, "free_mul needs A[X;Y]");
  return a * b;
}

CheckResult free_ring_axioms(const FreeTambara& f, unsigned degree) {
  const auto basis = f.basis_up_to(degree);
  const Element one = f.one();
  CheckResult result;
  const std::size_t n = basis.size();
  std::vector<Element> products(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    if (one * basis[i] != basis[i]) return CheckResult::fail({basis[i]}, "1 is not a unit", result.checked);
    for (std::size_t j = 0; j < n; ++j) {
      products[i * n + j] = basis[i] * basis[j];
      ++result.checked;
    }
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (products[i * n + j] != products[j * n + i])
        return CheckResult::fail({basis[i], basis[j]}, "ab != ba", result.checked);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = j; k < n; ++k) {
        // commutativity lets (ab)c = a(bc) run over j <= k only
        ++result.checked;
        if (products[i * n + j] * basis[k] != basis[i] * products[j * n + k])
          return CheckResult::fail({basis[i], basis[j], basis[k]}, "(ab)c != a(bc)", result.checked);
      }
  return result;
}

TambaraMorphism adjunction_extend(const FreeTambaraHandle& f, const Z2Tambara& t, std::vector<Element> alpha,
                                  std::vector<Element> beta) {
  const PresheafPair& p = f->pair();
  if (alpha.size() != p.X.size() || beta.size() != p.Y.size())
    throw AlgebraError(ErrorCode::MalformedInput, "alpha and beta must be given on every generator");
  alpha = reown(alpha, t.A);
  beta = reown(beta, t.B);
  for (std::size_t x = 0; x < p.X.size(); ++x)
    if (t.tau(alpha[x]) != alpha[p.tau[x]])
      throw AlgebraError(ErrorCode::NotEquivariant, "alpha(tau " + p.X[x] + ") != tau alpha(" + p.X[x] + ")");
  for (std::size_t y = 0; y < p.Y.size(); ++y)
    if (t.res(beta[y]) != alpha[p.res[y]])
      throw AlgebraError(ErrorCode::NotCompatible, "res beta(" + p.Y[y] + ") != alpha(res " + p.Y[y] + ")");

  auto alpha_star = [alpha, t](const Element& a) { return evaluate(a.as<PolyTerms>(), alpha, t.A); };
  std::vector<Element> s1_values = beta;
  for (std::size_t rep : f->orbit_representatives()) s1_values.push_back(t.N(alpha[rep]));
  auto beta_star = [f, t, alpha, s1_values](const Element& b) {
    // beta(m g mbar) = N(alpha m) beta(g); beta(m k mbar) = tr(alpha(m k mbar)); beta(h + hbar) = tr(alpha h)
    FreeTopElement parts = f->parts(b);
    PolyTerms under = parts.s2;
    for (const auto& [m, c] : parts.s3) add_term(under, m, c);
    Element out = evaluate(parts.s1, s1_values, t.B);
    if (!under.empty()) out += t.tr(evaluate(under, alpha, t.A));
    return out;
  };
  return TambaraMorphism{alpha_star, beta_star};
}

Generators restrict_to_generators(const FreeTambara& f, const TambaraMorphism& m) {
  Generators g;
  for (std::size_t x = 0; x < f.pair().X.size(); ++x) g.alpha.push_back(m.alpha(f.underlying()->variable(x)));
  for (std::size_t y = 0; y < f.pair().Y.size(); ++y) g.beta.push_back(m.beta(f.y_generator(y)));
  return g;
}

Resolution cohomological_resolution(const Z2Tambara& t, const std::vector<Element>& a_generators,
                                    const std::vector<Element>& b_generators) {
  if (!is_cohomological(t))
    throw AlgebraError(ErrorCode::NotCohomological, t.name + " does not satisfy N res = squaring and tr(1) = 2");
  const std::size_t na = a_generators.size(), nb = b_generators.size();
  auto label = [](const std::string& stem, std::size_t i, std::size_t count) {
    return count == 1 ? stem : stem + std::to_string(i + 1);
  };
  std::vector<std::string> names;
  std::vector<std::size_t> perm;
  for (std::size_t i = 0; i < na; ++i) {
    names.push_back(label("u", i, na));
    names.push_back(label("ubar", i, na));
    perm.push_back(2 * i + 1);
    perm.push_back(2 * i);
  }
  for (std::size_t j = 0; j < nb; ++j) {
    names.push_back(label("b", j, nb));
    perm.push_back(2 * na + j);
  }
  Resolution out;
  out.S = make_polynomial_ring(names);
  out.tau = Involution::variable_swap(out.S, perm);
  out.fixed = from_involution_ring(out.S, out.tau);
  out.a_generators = na;

  std::vector<Element> alpha;
  for (const auto& a : a_generators) {
    alpha.push_back(a);
    alpha.push_back(t.tau(a));
  }
  for (const auto& b : b_generators) alpha.push_back(t.res(b));
  alpha = reown(alpha, t.A);
  std::vector<Element> b_values = reown(b_generators, t.B);

  auto alpha_star = [alpha, t](const Element& s) { return evaluate(s.as<PolyTerms>(), alpha, t.A); };
  auto fixed_ring = std::static_pointer_cast<const FixedSubring>(out.fixed.B);
  auto beta_star = [alpha, b_values, t, fixed_ring, perm, na](const Element& s) {
    // u^e ubar^e b^f -> N(alpha(u^e)) b^f; h + hbar -> tr(alpha h)
    const Element ambient = fixed_ring->include(s);
    const PolyTerms& terms = ambient.as<PolyTerms>();
    Element out = t.B->zero();
    for (const auto& [m, c] : terms) {
      Monomial bar(m.size(), 0);
      for (std::size_t i = 0; i < m.size(); ++i) bar[perm[i]] = m[i];
      if (bar == m) {
        Element half = t.A->one();
        for (std::size_t i = 0; i < na; ++i) half *= alpha[2 * i].pow(m[2 * i]);
        Element value = t.N(half);
        for (std::size_t j = 0; j < b_values.size(); ++j) value *= b_values[j].pow(m[2 * na + j]);
        out += value.scaled(c);
      } else if (m > bar) {
        PolyTerms single{{m, c}};
        out += t.tr(evaluate(single, alpha, t.A));
      }
    }
    return out;
  };
  out.onto = TambaraMorphism{alpha_star, beta_star};
  for (std::size_t i = 0; i < na; ++i)
    if (alpha_star(out.S->variable(2 * i)) != alpha[2 * i])
      throw AlgebraError(ErrorCode::Internal, "resolution misses the generator " + a_generators[i].str());
  for (std::size_t j = 0; j < nb; ++j)
    if (beta_star(fixed_ring->lift(out.S->variable(2 * na + j))) != b_values[j])
      throw AlgebraError(ErrorCode::Internal, "resolution misses the generator " + b_generators[j].str());
  return out;
}

}  // namespace polywitt
