#include "polywitt/burnside.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <set>

namespace polywitt {

// --- groups -------------------------------------------------------------------

std::vector<GroupElement> mask_elements(Mask m) {
  std::vector<GroupElement> out;
  while (m) {
    out.push_back(static_cast<GroupElement>(std::countr_zero(m)));
    m &= m - 1;
  }
  return out;
}

bool mask_less(Mask a, Mask b) {
  int ca = std::popcount(a), cb = std::popcount(b);
  if (ca != cb) return ca < cb;
  if (a == b) return false;
  // the first differing element of the sorted lists decides
  Mask diff = a ^ b;
  Mask lowest = diff & (~diff + 1);
  return (a & lowest) != 0;
}

std::shared_ptr<const FiniteGroup> FiniteGroup::from_table(std::string name,
                                                           std::vector<std::vector<GroupElement>> table,
                                                           std::map<unsigned, std::string> subgroup_names) {
  const std::size_t n = table.size();
  if (n == 0) throw AlgebraError(ErrorCode::MalformedInput, "empty group table");
  if (n > kMaxOrder)
    throw AlgebraError(ErrorCode::GroupTooLarge, name + " has order " + std::to_string(n) + " > 54");
  for (const auto& row : table)
    if (row.size() != n) throw AlgebraError(ErrorCode::MalformedInput, "group table is not square");
  for (std::size_t a = 0; a < n; ++a)
    if (table[0][a] != a || table[a][0] != a) throw AlgebraError(ErrorCode::MalformedInput, "index 0 is not the identity");
  auto group = std::shared_ptr<FiniteGroup>(new FiniteGroup());
  group->name_ = std::move(name);
  group->subgroup_names_ = std::move(subgroup_names);
  group->inverse_.assign(n, 0);
  for (std::size_t a = 0; a < n; ++a) {
    bool found = false;
    for (std::size_t b = 0; b < n; ++b)
      if (table[a][b] == 0) {
        if (table[b][a] != 0) throw AlgebraError(ErrorCode::MalformedInput, "left and right inverses differ");
        group->inverse_[a] = static_cast<GroupElement>(b);
        found = true;
      }
    if (!found) throw AlgebraError(ErrorCode::MalformedInput, "element without inverse");
  }
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = 0; c < n; ++c)
        if (table[table[a][b]][c] != table[a][table[b][c]])
          throw AlgebraError(ErrorCode::MalformedInput, "group table is not associative");
  group->table_ = std::move(table);
  // greedy generating set
  Mask generated = 1;
  for (std::size_t a = 0; a < n; ++a)
    if (!(generated & (Mask(1) << a))) {
      group->generators_.push_back(static_cast<GroupElement>(a));
      Mask gens = 0;
      for (auto g : group->generators_) gens |= Mask(1) << g;
      generated = group->closure(gens);
    }
  return group;
}

std::shared_ptr<const FiniteGroup> FiniteGroup::from_permutations(std::string name,
                                                                  const std::vector<std::vector<unsigned>>& generators,
                                                                  std::map<unsigned, std::string> subgroup_names) {
  if (generators.empty()) return cyclic(1);
  const std::size_t degree = generators[0].size();
  std::vector<unsigned> identity(degree);
  std::iota(identity.begin(), identity.end(), 0U);
  std::vector<std::vector<unsigned>> elements{identity};
  std::map<std::vector<unsigned>, std::size_t> index{{identity, 0}};
  for (std::size_t i = 0; i < elements.size(); ++i)
    for (const auto& g : generators) {
      std::vector<unsigned> product(degree);
      for (std::size_t x = 0; x < degree; ++x) product[x] = elements[i][g[x]];
      if (index.emplace(product, elements.size()).second) {
        elements.push_back(product);
        if (elements.size() > kMaxOrder)
          throw AlgebraError(ErrorCode::GroupTooLarge, name + " has more than 54 elements");
      }
    }
  const std::size_t n = elements.size();
  std::vector<std::vector<GroupElement>> table(n, std::vector<GroupElement>(n));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      std::vector<unsigned> product(degree);
      for (std::size_t x = 0; x < degree; ++x) product[x] = elements[a][elements[b][x]];
      table[a][b] = static_cast<GroupElement>(index.at(product));
    }
  return from_table(std::move(name), std::move(table), std::move(subgroup_names));
}

std::shared_ptr<const FiniteGroup> FiniteGroup::trivial() { return cyclic(1); }

std::shared_ptr<const FiniteGroup> FiniteGroup::cyclic(unsigned n) {
  if (n == 0) throw AlgebraError(ErrorCode::MalformedInput, "cyclic group of order 0");
  if (n > kMaxOrder) throw AlgebraError(ErrorCode::GroupTooLarge, "C" + std::to_string(n) + " is too large");
  std::vector<std::vector<GroupElement>> table(n, std::vector<GroupElement>(n));
  for (unsigned a = 0; a < n; ++a)
    for (unsigned b = 0; b < n; ++b) table[a][b] = static_cast<GroupElement>((a + b) % n);
  std::string name = n == 1 ? "e" : n == 2 ? "Z/2" : "C" + std::to_string(n);
  return from_table(name, std::move(table));
}

std::shared_ptr<const FiniteGroup> FiniteGroup::dihedral(unsigned n) {
  if (n == 0) throw AlgebraError(ErrorCode::MalformedInput, "dihedral group D0");
  if (2 * n > kMaxOrder) throw AlgebraError(ErrorCode::GroupTooLarge, "D" + std::to_string(n) + " is too large");
  const unsigned order = 2 * n;
  std::vector<std::vector<GroupElement>> table(order, std::vector<GroupElement>(order));
  for (unsigned a = 0; a < order; ++a)
    for (unsigned b = 0; b < order; ++b) {
      unsigned i = a % n, e = a / n, j = b % n, f = b / n;
      unsigned rot = e ? (i + n - j) % n : (i + j) % n;
      table[a][b] = static_cast<GroupElement>(rot + n * (e ^ f));
    }
  return from_table(n == 1 ? "Z/2" : "D" + std::to_string(n), std::move(table));
}

std::shared_ptr<const FiniteGroup> FiniteGroup::alternating(unsigned n) {
  if (n < 3) return trivial();
  if (n > 4) throw AlgebraError(ErrorCode::GroupTooLarge, "A" + std::to_string(n) + " is too large");
  std::vector<unsigned> cycle(n), pairs(n);
  std::iota(cycle.begin(), cycle.end(), 0U);
  std::iota(pairs.begin(), pairs.end(), 0U);
  // (0 1 2) and, for n = 4, (0 1)(2 3)
  cycle[0] = 1, cycle[1] = 2, cycle[2] = 0;
  std::vector<std::vector<unsigned>> gens{cycle};
  std::map<unsigned, std::string> names;
  if (n == 4) {
    std::swap(pairs[0], pairs[1]);
    std::swap(pairs[2], pairs[3]);
    gens.push_back(pairs);
    names[3] = "A3";
  }
  return from_permutations("A" + std::to_string(n), gens, names);
}

std::shared_ptr<const FiniteGroup> FiniteGroup::symmetric(unsigned n) {
  if (n < 2) return trivial();
  if (n > 4) throw AlgebraError(ErrorCode::GroupTooLarge, "S" + std::to_string(n) + " is too large");
  std::vector<unsigned> swap(n), cycle(n);
  std::iota(swap.begin(), swap.end(), 0U);
  std::swap(swap[0], swap[1]);
  for (unsigned i = 0; i < n; ++i) cycle[i] = (i + 1) % n;
  return from_permutations("S" + std::to_string(n), {swap, cycle});
}

std::shared_ptr<const FiniteGroup> FiniteGroup::by_name(const std::string& name) {
  auto number = [&](std::size_t from) -> unsigned {
    if (from >= name.size() || !std::all_of(name.begin() + static_cast<long>(from), name.end(), ::isdigit))
      throw AlgebraError(ErrorCode::MalformedInput, "unknown group '" + name + "'");
    return static_cast<unsigned>(std::stoul(name.substr(from)));
  };
  if (name == "e" || name == "1") return trivial();
  if (name.rfind("Z/", 0) == 0) return cyclic(number(2));
  if (name.empty()) throw AlgebraError(ErrorCode::MalformedInput, "empty group name");
  switch (name[0]) {
    case 'C': return cyclic(number(1));
    case 'D': return dihedral(number(1));
    case 'A': return alternating(number(1));
    case 'S': return symmetric(number(1));
    default: throw AlgebraError(ErrorCode::MalformedInput, "unknown group '" + name + "'");
  }
}

unsigned FiniteGroup::element_order(GroupElement a) const {
  unsigned k = 1;
  for (GroupElement x = a; x != 0; x = mul(x, a)) ++k;
  return k;
}

Mask FiniteGroup::closure(Mask generators) const {
  std::vector<GroupElement> gens = mask_elements(generators);
  Mask seen = 1;
  std::vector<GroupElement> queue{0};
  for (std::size_t i = 0; i < queue.size(); ++i)
    for (auto g : gens) {
      GroupElement x = mul(queue[i], g);
      if (!(seen & (Mask(1) << x))) {
        seen |= Mask(1) << x;
        queue.push_back(x);
      }
    }
  return seen;
}

bool FiniteGroup::is_subgroup(Mask m) const {
  if (!(m & 1) || (m & ~all())) return false;
  auto elems = mask_elements(m);
  for (auto a : elems)
    for (auto b : elems)
      if (!(m & (Mask(1) << mul(a, inv(b))))) return false;
  return true;
}

Mask FiniteGroup::conjugate(Mask m, GroupElement g) const {
  Mask out = 0;
  for (auto x : mask_elements(m)) out |= Mask(1) << conj(g, x);
  return out;
}

std::string FiniteGroup::subgroup_name(Mask m) const {
  if (m == all()) return name_;
  auto elems = mask_elements(m);
  const unsigned n = static_cast<unsigned>(elems.size());
  if (n == 1) return "e";
  if (auto it = subgroup_names_.find(n); it != subgroup_names_.end()) return it->second;
  unsigned max_order = 0;
  for (auto x : elems) max_order = std::max(max_order, element_order(x));
  if (max_order == n) return n == 2 ? "Z/2" : "C" + std::to_string(n);
  bool abelian = true;
  for (auto a : elems)
    for (auto b : elems) abelian = abelian && mul(a, b) == mul(b, a);
  if (n == 4 && abelian) return "V4";
  if (!abelian && n % 2 == 0 && max_order == n / 2) {
    // dihedral: every element outside the cyclic part has order 2
    unsigned order_two = 0;
    for (auto x : elems) order_two += element_order(x) == 2;
    if (order_two >= n / 2) return "D" + std::to_string(n / 2);
  }
  if (n == 12 && !abelian) return "A4";
  return "H" + std::to_string(n);
}

std::shared_ptr<const FiniteGroup> FiniteGroup::subgroup(Mask m, std::string name,
                                                         std::vector<GroupElement>& embedding) const {
  if (!is_subgroup(m)) throw AlgebraError(ErrorCode::NotASubgroup, "mask does not describe a subgroup of " + name_);
  embedding = mask_elements(m);
  std::vector<int> local(order(), -1);
  for (std::size_t i = 0; i < embedding.size(); ++i) local[embedding[i]] = static_cast<int>(i);
  const std::size_t n = embedding.size();
  std::vector<std::vector<GroupElement>> table(n, std::vector<GroupElement>(n));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) table[a][b] = static_cast<GroupElement>(local[mul(embedding[a], embedding[b])]);
  if (name.empty()) name = subgroup_name(m);
  return from_table(std::move(name), std::move(table), subgroup_names_);
}

// --- lattice --------------------------------------------------------------------

SubgroupLattice::SubgroupLattice(std::shared_ptr<const FiniteGroup> group) : group_(std::move(group)) {
  const FiniteGroup& g = *group_;
  std::set<Mask> found{Mask(1)};
  std::vector<Mask> queue{Mask(1)};
  for (std::size_t i = 0; i < queue.size(); ++i) {
    Mask h = queue[i];
    for (std::size_t x = 0; x < g.order(); ++x) {
      if (h & (Mask(1) << x)) continue;
      Mask k = g.closure(h | (Mask(1) << x));
      if (found.insert(k).second) queue.push_back(k);
    }
  }
  // canonical representative: least conjugate
  std::map<Mask, std::vector<Mask>> by_canonical;
  for (Mask h : found) {
    Mask best = h;
    for (std::size_t x = 0; x < g.order(); ++x) {
      Mask c = g.conjugate(h, static_cast<GroupElement>(x));
      if (mask_less(c, best)) best = c;
    }
    by_canonical[best].push_back(h);
  }
  for (const auto& [rep, members] : by_canonical) reps_.push_back(rep);
  std::sort(reps_.begin(), reps_.end(), mask_less);
  std::map<std::string, int> seen_names;
  for (std::size_t c = 0; c < reps_.size(); ++c) {
    const auto& members = by_canonical[reps_[c]];
    class_sizes_.push_back(members.size());
    for (Mask h : members) canonical_[h] = c;
    std::string name = g.subgroup_name(reps_[c]);
    int copies = seen_names[name]++;
    names_.push_back(name + std::string(static_cast<std::size_t>(copies), '\''));
  }
}

unsigned SubgroupLattice::subgroup_order(std::size_t c) const { return static_cast<unsigned>(std::popcount(reps_[c])); }

std::size_t SubgroupLattice::classify(Mask subgroup) const {
  auto it = canonical_.find(subgroup);
  if (it == canonical_.end()) throw AlgebraError(ErrorCode::NotASubgroup, "not a subgroup of " + group_->name());
  return it->second;
}

bool SubgroupLattice::subconjugate(std::size_t a, std::size_t b) const {
  for (std::size_t x = 0; x < group_->order(); ++x)
    if ((group_->conjugate(reps_[a], static_cast<GroupElement>(x)) & ~reps_[b]) == 0) return true;
  return false;
}

// --- Burnside rings ------------------------------------------------------------------

std::shared_ptr<const BurnsideRing> BurnsideRing::create(std::shared_ptr<const FiniteGroup> group) {
  auto a = std::shared_ptr<BurnsideRing>(new BurnsideRing(std::move(group)));
  const FiniteGroup& g = a->group();
  const std::size_t k = a->classes();
  a->marks_.assign(k, std::vector<Integer>(k, Integer(0)));
  for (std::size_t h = 0; h < k; ++h)
    for (std::size_t kk = 0; kk < k; ++kk) {
      // #{x : x^-1 K x <= H} / |H|
      unsigned count = 0;
      for (std::size_t x = 0; x < g.order(); ++x)
        if ((g.conjugate(a->lattice_.representative(kk), g.inv(static_cast<GroupElement>(x))) &
             ~a->lattice_.representative(h)) == 0)
          ++count;
      a->marks_[h][kk] = count / a->lattice_.subgroup_order(h);
    }
  // structure constants in the basis [G/G], ..., [G/e]
  std::vector<std::string> basis;
  for (std::size_t b = 0; b < k; ++b) {
    std::size_t c = k - 1 - b;
    if (b == 0) basis.push_back("1");
    else if (k == 2) basis.push_back("x");
    else basis.push_back(g.name() + "/" + a->lattice_.class_name(c));
  }
  std::vector<Integer> constants(k * k * k, Integer(0));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) {
      std::vector<Integer> product(k);
      for (std::size_t kk = 0; kk < k; ++kk) product[kk] = a->marks_[k - 1 - i][kk] * a->marks_[k - 1 - j][kk];
      // triangular solve by class, then store by basis index
      std::vector<Integer> coeffs(k, Integer(0));
      for (std::size_t kk = k; kk-- > 0;) {
        Integer rest = product[kk];
        for (std::size_t h = kk + 1; h < k; ++h) rest -= coeffs[h] * a->marks_[h][kk];
        if (!mpz_divisible_p(rest.get_mpz_t(), a->marks_[kk][kk].get_mpz_t()))
          throw AlgebraError(ErrorCode::Internal, "product of transitive sets is not integral");
        coeffs[kk] = rest / a->marks_[kk][kk];
      }
      for (std::size_t c = 0; c < k; ++c) constants[(i * k + j) * k + (k - 1 - c)] = coeffs[c];
    }
  std::vector<Integer> unit(k, Integer(0));
  unit[0] = 1;
  a->ring_ = FreeRankRing::create(std::move(basis), std::move(constants), std::move(unit), 0, "A(" + g.name() + ")");
  return a;
}

Integer BurnsideRing::coefficient(const Element& x, std::size_t c) const {
  return ring_->coordinates(x)[basis_index(c)].get_num();
}

std::vector<Integer> BurnsideRing::coefficients(const Element& x) const {
  std::vector<Integer> out(classes());
  for (std::size_t c = 0; c < classes(); ++c) out[c] = coefficient(x, c);
  return out;
}

Element BurnsideRing::from_coefficients(const std::vector<Integer>& by_class) const {
  if (by_class.size() != classes()) throw AlgebraError(ErrorCode::MalformedInput, "wrong number of coefficients");
  std::vector<Integer> coords(classes());
  for (std::size_t c = 0; c < classes(); ++c) coords[basis_index(c)] = by_class[c];
  return ring_->from_integers(coords);
}

std::vector<Integer> BurnsideRing::marks_of(const Element& x) const {
  auto c = coefficients(x);
  std::vector<Integer> phi(classes(), Integer(0));
  for (std::size_t h = 0; h < classes(); ++h) {
    if (c[h] == 0) continue;
    for (std::size_t k = 0; k <= h; ++k) phi[k] += c[h] * marks_[h][k];
  }
  return phi;
}

std::optional<Element> BurnsideRing::try_from_marks(const std::vector<Integer>& phi) const {
  const std::size_t k = classes();
  if (phi.size() != k) throw AlgebraError(ErrorCode::MalformedInput, "wrong number of marks");
  std::vector<Integer> c(k, Integer(0));
  for (std::size_t kk = k; kk-- > 0;) {
    Integer rest = phi[kk];
    for (std::size_t h = kk + 1; h < k; ++h) rest -= c[h] * marks_[h][kk];
    if (!mpz_divisible_p(rest.get_mpz_t(), marks_[kk][kk].get_mpz_t())) return std::nullopt;
    c[kk] = rest / marks_[kk][kk];
  }
  return from_coefficients(c);
}

Element BurnsideRing::from_marks(const std::vector<Integer>& phi) const {
  auto x = try_from_marks(phi);
  if (!x) throw AlgebraError(ErrorCode::Internal, "mark vector is not in the image of A(" + group().name() + ")");
  return *x;
}

bool BurnsideRing::is_genuine(const Element& x) const {
  for (const auto& c : coefficients(x))
    if (c < 0) return false;
  return true;
}

Element BurnsideRing::transport(const Element& x) const {
  auto free = std::dynamic_pointer_cast<const FreeRankRing>(x.ring());
  if (!free || free->basis() != ring_->basis() || free->constants() != ring_->constants())
    throw AlgebraError(ErrorCode::OwnerMismatch, "cannot transport " + x.str() + " into " + ring_->name());
  return ring_->from_coordinates(free->coordinates(x));
}

std::vector<std::vector<unsigned>> explicit_set(const BurnsideRing& a, const Element& x) {
  const FiniteGroup& g = a.group();
  std::vector<std::vector<unsigned>> action(g.order());
  for (std::size_t c = 0; c < a.classes(); ++c) {
    Integer copies = a.coefficient(x, c);
    if (copies < 0) throw AlgebraError(ErrorCode::MalformedInput, "virtual element has no explicit set");
    // left cosets of L
    Mask l = a.lattice().representative(c);
    std::vector<int> coset_of(g.order(), -1);
    std::vector<GroupElement> reps;
    for (std::size_t h = 0; h < g.order(); ++h) {
      if (coset_of[h] >= 0) continue;
      for (auto y : mask_elements(l)) coset_of[g.mul(static_cast<GroupElement>(h), y)] = static_cast<int>(reps.size());
      reps.push_back(static_cast<GroupElement>(h));
    }
    for (Integer n = 0; n < copies; ++n) {
      unsigned offset = static_cast<unsigned>(action[0].size());
      for (std::size_t h = 0; h < g.order(); ++h)
        for (auto r : reps)
          action[h].push_back(offset + static_cast<unsigned>(coset_of[g.mul(static_cast<GroupElement>(h), r)]));
    }
  }
  return action;
}

// --- inclusions -----------------------------------------------------------------------

Inclusion Inclusion::of_subgroup(const BurnsideHandle& big, Mask subgroup, std::string name) {
  std::vector<GroupElement> embedding;
  auto h = big->group().subgroup(subgroup, std::move(name), embedding);
  return Inclusion(BurnsideRing::create(h), big, std::move(embedding));
}

Inclusion::Inclusion(BurnsideHandle small, BurnsideHandle big, std::vector<GroupElement> embedding)
    : small_(std::move(small)), big_(std::move(big)), embedding_(std::move(embedding)) {
  const FiniteGroup& h = small_->group();
  const FiniteGroup& g = big_->group();
  if (embedding_.size() != h.order()) throw AlgebraError(ErrorCode::NotASubgroup, "embedding has wrong size");
  for (std::size_t a = 0; a < h.order(); ++a)
    for (std::size_t b = 0; b < h.order(); ++b)
      if (embedding_[h.mul(static_cast<GroupElement>(a), static_cast<GroupElement>(b))] !=
          g.mul(embedding_[a], embedding_[b]))
        throw AlgebraError(ErrorCode::NotASubgroup, "embedding is not a homomorphism");
  for (auto e : embedding_) image_ |= Mask(1) << e;
  if (static_cast<std::size_t>(std::popcount(image_)) != h.order())
    throw AlgebraError(ErrorCode::NotASubgroup, "embedding is not injective");
}

Mask Inclusion::push(Mask in_small) const {
  Mask out = 0;
  for (auto x : mask_elements(in_small)) out |= Mask(1) << embedding_[x];
  return out;
}

Mask Inclusion::pull(Mask in_big) const {
  Mask out = 0;
  for (std::size_t i = 0; i < embedding_.size(); ++i)
    if (in_big & (Mask(1) << embedding_[i])) out |= Mask(1) << i;
  return out;
}

std::vector<GroupElement> Inclusion::right_cosets() const {
  const FiniteGroup& g = big_->group();
  Mask seen = 0;
  std::vector<GroupElement> reps;
  for (std::size_t t = 0; t < g.order(); ++t) {
    if (seen & (Mask(1) << t)) continue;
    reps.push_back(static_cast<GroupElement>(t));
    for (auto h : embedding_) seen |= Mask(1) << g.mul(h, static_cast<GroupElement>(t));
  }
  return reps;
}

std::vector<GroupElement> Inclusion::double_cosets(Mask k) const {
  const FiniteGroup& g = big_->group();
  auto ks = mask_elements(k);
  Mask seen = 0;
  std::vector<GroupElement> reps;
  for (std::size_t x = 0; x < g.order(); ++x) {
    if (seen & (Mask(1) << x)) continue;
    reps.push_back(static_cast<GroupElement>(x));
    for (auto h : embedding_)
      for (auto kk : ks) seen |= Mask(1) << g.mul(g.mul(h, static_cast<GroupElement>(x)), kk);
  }
  return reps;
}

Element Inclusion::restrict(const Element& x) const {
  require_owner(x, big_->ring());
  const FiniteGroup& g = big_->group();
  std::vector<Integer> out(small_->classes(), Integer(0));
  for (std::size_t c = 0; c < big_->classes(); ++c) {
    Integer coeff = big_->coefficient(x, c);
    if (coeff == 0) continue;
    Mask k = big_->lattice().representative(c);
    for (auto d : double_cosets(k)) {
      Mask stabilizer = image_ & g.conjugate(k, d);
      out[small_->lattice().classify(pull(stabilizer))] += coeff;
    }
  }
  return small_->from_coefficients(out);
}

Element Inclusion::transfer(const Element& y) const {
  require_owner(y, small_->ring());
  std::vector<Integer> out(big_->classes(), Integer(0));
  for (std::size_t c = 0; c < small_->classes(); ++c) {
    Integer coeff = small_->coefficient(y, c);
    if (coeff != 0) out[big_->lattice().classify(push(small_->lattice().representative(c)))] += coeff;
  }
  return big_->from_coefficients(out);
}

Element Inclusion::conjugate(const Element& y, GroupElement g) const {
  require_owner(y, small_->ring());
  const FiniteGroup& big = big_->group();
  if (!big.normalizes(g, image_)) throw AlgebraError(ErrorCode::NotASubgroup, "conjugating element does not normalize H");
  std::vector<Integer> out(small_->classes(), Integer(0));
  for (std::size_t c = 0; c < small_->classes(); ++c) {
    Integer coeff = small_->coefficient(y, c);
    if (coeff == 0) continue;
    Mask image = big.conjugate(push(small_->lattice().representative(c)), g);
    out[small_->lattice().classify(pull(image))] += coeff;
  }
  return small_->from_coefficients(out);
}

Element Inclusion::norm(const Element& y, NormRoute route) const {
  require_owner(y, small_->ring());
  switch (route) {
    case NormRoute::BruteForce: return norm_brute_force(y);
    case NormRoute::Interpolation: return norm_interpolated(y);
    default: return norm_by_marks(y);
  }
}

Element Inclusion::norm_by_marks(const Element& y) const {
  // the K-fixed points of Map_H(G, X) split over the double cosets H g K
  const FiniteGroup& g = big_->group();
  auto phi = small_->marks_of(y);
  std::vector<Integer> out(big_->classes());
  for (std::size_t c = 0; c < big_->classes(); ++c) {
    Mask k = big_->lattice().representative(c);
    Integer value = 1;
    for (auto d : double_cosets(k)) value *= phi[small_->lattice().classify(pull(image_ & g.conjugate(k, d)))];
    out[c] = value;
  }
  return big_->from_marks(out);
}

Element Inclusion::norm_brute_force(const Element& y) const {
  const std::size_t n = index();
  if (n > kMaxEnumerationIndex)
    throw AlgebraError(ErrorCode::IndexTooLarge, "index " + std::to_string(n) + " exceeds the enumeration limit");
  if (!small_->is_genuine(y)) throw AlgebraError(ErrorCode::MalformedInput, "brute-force norm needs a genuine H-set");
  const FiniteGroup& g = big_->group();
  auto action = explicit_set(*small_, y);
  const std::size_t points = action[0].size();
  std::size_t states = 1;
  for (std::size_t i = 0; i < n; ++i) {
    states *= std::max<std::size_t>(points, 1);
    if (states > 20'000'000) throw AlgebraError(ErrorCode::IndexTooLarge, "Map_H(G, X) is too large to enumerate");
  }
  if (points == 0) return big_->ring()->zero();
  // f(t_i g) = h f(t_j) where t_i g = h t_j
  auto reps = right_cosets();
  std::vector<int> local(g.order(), -1);
  for (std::size_t i = 0; i < embedding_.size(); ++i) local[embedding_[i]] = static_cast<int>(i);
  std::vector<int> coset_of(g.order(), -1);
  for (std::size_t j = 0; j < reps.size(); ++j)
    for (auto h : embedding_) coset_of[g.mul(h, reps[j])] = static_cast<int>(j);
  struct Move {
    std::vector<unsigned> source;
    std::vector<unsigned> twist;  // element of H, as H index
  };
  std::vector<Move> moves(g.order());
  for (std::size_t x = 0; x < g.order(); ++x)
    for (std::size_t i = 0; i < n; ++i) {
      GroupElement tg = g.mul(reps[i], static_cast<GroupElement>(x));
      unsigned j = static_cast<unsigned>(coset_of[tg]);
      GroupElement h = g.mul(tg, g.inv(reps[j]));
      moves[x].source.push_back(j);
      moves[x].twist.push_back(static_cast<unsigned>(local[h]));
    }
  std::vector<std::size_t> weight(n, 1);
  for (std::size_t i = 1; i < n; ++i) weight[i] = weight[i - 1] * points;
  auto act = [&](std::size_t state, std::size_t x) {
    std::size_t out = 0;
    const Move& m = moves[x];
    for (std::size_t i = 0; i < n; ++i) {
      unsigned value = static_cast<unsigned>((state / weight[m.source[i]]) % points);
      out += action[m.twist[i]][value] * weight[i];
    }
    return out;
  };
  std::vector<std::uint32_t> parent(states);
  std::iota(parent.begin(), parent.end(), 0U);
  auto find = [&](std::uint32_t s) {
    while (parent[s] != s) s = parent[s] = parent[parent[s]];
    return s;
  };
  for (std::size_t s = 0; s < states; ++s)
    for (auto x : g.generators()) {
      std::uint32_t a = find(static_cast<std::uint32_t>(s)), b = find(static_cast<std::uint32_t>(act(s, x)));
      if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
  std::vector<Integer> out(big_->classes(), Integer(0));
  for (std::size_t s = 0; s < states; ++s) {
    if (find(static_cast<std::uint32_t>(s)) != s) continue;
    Mask stabilizer = 0;
    for (std::size_t x = 0; x < g.order(); ++x)
      if (act(s, x) == s) stabilizer |= Mask(1) << x;
    out[big_->lattice().classify(stabilizer)] += 1;
  }
  return big_->from_coefficients(out);
}

Element Inclusion::norm_interpolated(const Element& y) const {
  const std::size_t k = small_->classes();
  const std::size_t d = index();
  {
    std::lock_guard lock(interpolation_->mutex);
    if (!interpolation_->built) {
      // values on the grid {0..d}^k, then forward differences along each axis
      std::size_t grid = 1;
      for (std::size_t i = 0; i < k; ++i) grid *= d + 1;
      std::vector<std::vector<Integer>> values(grid);
      std::vector<unsigned> point(k, 0);
      for (std::size_t g = 0; g < grid; ++g) {
        std::size_t rest = g;
        std::vector<Integer> coeffs(k);
        for (std::size_t i = 0; i < k; ++i) {
          coeffs[i] = static_cast<unsigned long>(rest % (d + 1));
          rest /= d + 1;
        }
        values[g] = big_->coefficients(norm_brute_force(small_->from_coefficients(coeffs)));
      }
      std::size_t stride = 1;
      for (std::size_t axis = 0; axis < k; ++axis, stride *= d + 1)
        for (std::size_t g = 0; g < grid; ++g) {
          if ((g / stride) % (d + 1) != 0) continue;
          for (std::size_t s = 1; s <= d; ++s)
            for (std::size_t j = d; j >= s; --j) {
              auto& hi = values[g + j * stride];
              const auto& lo = values[g + (j - 1) * stride];
              for (std::size_t c = 0; c < hi.size(); ++c) hi[c] -= lo[c];
            }
        }
      for (std::size_t g = 0; g < grid; ++g) {
        bool zero = std::all_of(values[g].begin(), values[g].end(), [](const Integer& v) { return v == 0; });
        if (zero) continue;
        std::vector<unsigned> e(k);
        std::size_t rest = g, total = 0;
        for (std::size_t i = 0; i < k; ++i) {
          e[i] = static_cast<unsigned>(rest % (d + 1));
          total += e[i];
          rest /= d + 1;
        }
        if (total > d)
          throw AlgebraError(ErrorCode::InterpolationNonIntegral, "interpolated norm exceeds degree " + std::to_string(d));
        interpolation_->coefficients.emplace_back(std::move(e), std::move(values[g]));
      }
      interpolation_->built = true;
    }
  }
  auto c = small_->coefficients(y);
  std::vector<Integer> out(big_->classes(), Integer(0));
  for (const auto& [e, coeffs] : interpolation_->coefficients) {
    Integer weight = 1;
    for (std::size_t i = 0; i < k; ++i) weight *= binomial(c[i], e[i]);
    if (weight == 0) continue;
    for (std::size_t j = 0; j < out.size(); ++j) out[j] += weight * coeffs[j];
  }
  return big_->from_coefficients(out);
}

PolyMap norm_map(const Inclusion& inclusion, NormRoute route) {
  std::string name = "N_" + inclusion.small()->group().name() + "^" + inclusion.big()->group().name();
  return PolyMap(inclusion.small()->ring(), inclusion.big()->ring(),
                 [inclusion, route](const Element& y) { return inclusion.norm(y, route); },
                 static_cast<unsigned>(inclusion.index()), true, name);
}

PolyMap integer_norm_map(const BurnsideHandle& big, NormRoute route) {
  Inclusion inclusion = Inclusion::of_subgroup(big, Mask(1));
  RingHandle z = make_integers();
  std::string name = "N_e^" + big->group().name();
  return PolyMap(z, big->ring(),
                 [inclusion, route](const Element& a) {
                   return inclusion.norm(inclusion.small()->ring()->from_integer(a.as<Integer>()), route);
                 },
                 static_cast<unsigned>(inclusion.index()), true, name);
}

std::vector<Element> burnside_units(const BurnsideRing& a) {
  const std::size_t k = a.classes();
  if (k > 16) throw AlgebraError(ErrorCode::TooManyClasses, std::to_string(k) + " classes exceed the limit of 16");
  std::vector<Element> units;
  for (std::uint32_t pattern = 0; pattern < (1U << k); ++pattern) {
    std::vector<Integer> marks(k);
    for (std::size_t c = 0; c < k; ++c) marks[c] = (pattern >> c) & 1U ? -1 : 1;
    if (auto x = a.try_from_marks(marks)) units.push_back(*x);
  }
  return units;
}

}  // namespace polywitt
