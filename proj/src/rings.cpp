#include "polywitt/rings.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <unordered_map>

namespace polywitt {

bool MonomialOrder::operator()(const Monomial& a, const Monomial& b) const {
  unsigned long da = poly::total_degree(a), db = poly::total_degree(b);
  if (da != db) return da < db;
  return a < b;
}

// --- Element ----------------------------------------------------------------

void require_same_owner(const Element& a, const Element& b) {
  if (!a.valid() || !b.valid() || a.ring() != b.ring())
    throw AlgebraError(ErrorCode::OwnerMismatch,
                       "operands belong to different rings (" + (a.valid() ? a.ring()->name() : "null") + " vs " +
                           (b.valid() ? b.ring()->name() : "null") + ")");
}

void require_owner(const Element& a, const RingHandle& ring) {
  if (!a.valid() || a.ring() != ring)
    throw AlgebraError(ErrorCode::OwnerMismatch, "element of " + (a.valid() ? a.ring()->name() : "null") +
                                                     " used where " + ring->name() + " was expected");
}

std::vector<Element> reown(std::span<const Element> values, const RingHandle& ring) {
  std::vector<Element> result;
  result.reserve(values.size());
  for (const auto& v : values) result.emplace_back(ring, v.payload());
  return result;
}

Element Element::operator+(const Element& other) const {
  require_same_owner(*this, other);
  return owner_->add(*this, other);
}

Element Element::operator-(const Element& other) const {
  require_same_owner(*this, other);
  return owner_->sub(*this, other);
}

Element Element::operator*(const Element& other) const {
  require_same_owner(*this, other);
  return owner_->mul(*this, other);
}

Element Element::operator-() const { return owner_->neg(*this); }

Element Element::pow(unsigned long exponent) const {
  Element result = owner_->one();
  Element base = *this;
  while (exponent > 0) {
    if (exponent & 1UL) result = owner_->mul(result, base);
    exponent >>= 1;
    if (exponent > 0) base = owner_->mul(base, base);
  }
  return result;
}

Element Element::scaled(const Integer& k) const { return owner_->scale(k, *this); }

bool Element::is_zero() const { return owner_->is_zero(*this); }

std::string Element::str() const { return valid() ? owner_->format(*this) : "<null>"; }

bool Element::operator==(const Element& other) const {
  return owner_ == other.owner_ && payload_ == other.payload_;
}

// --- Ring defaults ------------------------------------------------------------

Element Ring::from_integer(const Integer& k) const {
  // double-and-add on the unit
  Integer n = abs(k);
  Element result = zero();
  Element addend = one();
  while (n > 0) {
    if (mpz_odd_p(n.get_mpz_t())) result = add(result, addend);
    n >>= 1;
    if (n > 0) addend = add(addend, addend);
  }
  return k < 0 ? neg(result) : result;
}

Element Ring::scale(const Integer& k, const Element& a) const { return mul(from_integer(k), a); }

DivisionResult Ring::divide_exact(const Element&, const Element&) const {
  throw AlgebraError(ErrorCode::Unsupported, "exact division is not available in " + name());
}

// --- Integers -------------------------------------------------------------------

Element IntegerRing::add(const Element& a, const Element& b) const {
  return element(Integer(a.as<Integer>() + b.as<Integer>()));
}
Element IntegerRing::neg(const Element& a) const { return element(Integer(-a.as<Integer>())); }
Element IntegerRing::mul(const Element& a, const Element& b) const {
  return element(Integer(a.as<Integer>() * b.as<Integer>()));
}

DivisionResult IntegerRing::divide_exact(const Element& e, const Element& d) const {
  require_owner(e, self());
  require_owner(d, self());
  const Integer& den = d.as<Integer>();
  if (den == 0) throw AlgebraError(ErrorCode::ZeroDivisorDenominator, "division by zero in Z");
  if (!mpz_divisible_p(e.as<Integer>().get_mpz_t(), den.get_mpz_t()))
    return NotDivisible{e, e.str() + " is not divisible by " + den.get_str()};
  Integer q;
  mpz_divexact(q.get_mpz_t(), e.as<Integer>().get_mpz_t(), den.get_mpz_t());
  return element(q);
}

// --- Z/n ----------------------------------------------------------------------

ModularRing::ModularRing(Integer modulus) : modulus_(std::move(modulus)) {
  if (modulus_ < 2) throw AlgebraError(ErrorCode::BadModulus, "modulus must be at least 2, got " + modulus_.get_str());
}

Integer ModularRing::reduce(const Integer& k) const {
  Integer r;
  mpz_fdiv_r(r.get_mpz_t(), k.get_mpz_t(), modulus_.get_mpz_t());
  return r;
}

Element ModularRing::add(const Element& a, const Element& b) const {
  return element(reduce(a.as<Integer>() + b.as<Integer>()));
}
Element ModularRing::neg(const Element& a) const { return element(reduce(-a.as<Integer>())); }
Element ModularRing::mul(const Element& a, const Element& b) const {
  return element(reduce(a.as<Integer>() * b.as<Integer>()));
}

DivisionResult ModularRing::divide_exact(const Element& e, const Element& d) const {
  require_owner(e, self());
  require_owner(d, self());
  Integer inverse;
  if (mpz_invert(inverse.get_mpz_t(), d.as<Integer>().get_mpz_t(), modulus_.get_mpz_t()) == 0)
    throw AlgebraError(ErrorCode::ZeroDivisorDenominator, d.str() + " is a zero divisor in " + name());
  return element(reduce(e.as<Integer>() * inverse));
}

Tristate ModularRing::p_torsion_free(unsigned p) const {
  Integer g;
  Integer pp(p);
  mpz_gcd(g.get_mpz_t(), pp.get_mpz_t(), modulus_.get_mpz_t());
  return g == 1 ? Tristate::Yes : Tristate::No;
}

Element ModularRing::sample(Sampler& sampler) const {
  Integer bound = modulus_ - 1;
  if (bound.fits_slong_p()) return element(sampler.integer(0, bound.get_si()));
  return element(reduce(sampler.integer()));
}

// --- Z_(p) --------------------------------------------------------------------------

LocalizationRing::LocalizationRing(unsigned prime) : prime_(prime) {
  if (!is_prime(prime)) throw AlgebraError(ErrorCode::MalformedInput, "localization needs a prime, got " + std::to_string(prime));
}

Element LocalizationRing::from_rational(const Rational& q) const {
  Rational c = q;
  c.canonicalize();
  if (mpz_divisible_ui_p(c.get_den_mpz_t(), prime_))
    throw AlgebraError(ErrorCode::MalformedInput, c.get_str() + " is not in " + name());
  return element(c);
}

Element LocalizationRing::add(const Element& a, const Element& b) const {
  return element(Rational(a.as<Rational>() + b.as<Rational>()));
}
Element LocalizationRing::neg(const Element& a) const { return element(Rational(-a.as<Rational>())); }
Element LocalizationRing::mul(const Element& a, const Element& b) const {
  return element(Rational(a.as<Rational>() * b.as<Rational>()));
}

DivisionResult LocalizationRing::divide_exact(const Element& e, const Element& d) const {
  require_owner(e, self());
  require_owner(d, self());
  if (d.as<Rational>() == 0) throw AlgebraError(ErrorCode::ZeroDivisorDenominator, "division by zero in " + name());
  Rational q = e.as<Rational>() / d.as<Rational>();
  q.canonicalize();
  if (mpz_divisible_ui_p(q.get_den_mpz_t(), prime_))
    return NotDivisible{e, e.str() + " is not divisible by " + d.str() + " in " + name()};
  return element(q);
}

Element LocalizationRing::sample(Sampler& sampler) const {
  Integer num = sampler.integer();
  long den = sampler.integer(1, 4).get_si();
  while (den % static_cast<long>(prime_) == 0) ++den;
  Rational q(num, den);
  q.canonicalize();
  return element(q);
}

// --- free rank rings -------------------------------------------------------------

namespace {

std::vector<Rational> to_rationals(const std::vector<Integer>& v) {
  return std::vector<Rational>(v.begin(), v.end());
}

// Solves m x = rhs over Q; returns nullopt when m is singular.
std::optional<std::vector<Rational>> solve_rational(std::vector<std::vector<Rational>> m, std::vector<Rational> rhs) {
  const std::size_t n = rhs.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && m[pivot][col] == 0) ++pivot;
    if (pivot == n) return std::nullopt;
    std::swap(m[pivot], m[col]);
    std::swap(rhs[pivot], rhs[col]);
    for (std::size_t row = 0; row < n; ++row) {
      if (row == col || m[row][col] == 0) continue;
      Rational factor = m[row][col] / m[col][col];
      for (std::size_t k = col; k < n; ++k) m[row][k] -= factor * m[col][k];
      rhs[row] -= factor * rhs[col];
    }
  }
  for (std::size_t i = 0; i < n; ++i) rhs[i] /= m[i][i];
  return rhs;
}

}  // namespace

std::shared_ptr<const FreeRankRing> FreeRankRing::create(std::vector<std::string> basis, std::vector<Integer> constants,
                                                         std::vector<Integer> unit, unsigned local_prime,
                                                         std::string label) {
  const std::size_t r = basis.size();
  if (r == 0) throw AlgebraError(ErrorCode::MalformedInput, "free-rank ring needs a non-empty basis");
  if (constants.size() != r * r * r)
    throw AlgebraError(ErrorCode::MalformedInput, "expected " + std::to_string(r * r * r) + " structure constants");
  if (unit.size() != r) throw AlgebraError(ErrorCode::MalformedInput, "unit has wrong length");
  if (local_prime != 0 && !is_prime(local_prime))
    throw AlgebraError(ErrorCode::MalformedInput, "localization needs a prime");
  auto ring = std::shared_ptr<FreeRankRing>(new FreeRankRing());
  ring->basis_ = std::move(basis);
  ring->constants_ = std::move(constants);
  ring->unit_ = std::move(unit);
  ring->local_prime_ = local_prime;
  ring->label_ = std::move(label);
  ring->verify_axioms();
  return ring;
}

void FreeRankRing::verify_axioms() const {
  const std::size_t r = rank();
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j)
      for (std::size_t k = 0; k < r; ++k)
        if (constant(i, j, k) != constant(j, i, k))
          throw AlgebraError(ErrorCode::NonCommutative, basis_[i] + "*" + basis_[j] + " != " + basis_[j] + "*" + basis_[i]);
  // (e_i e_j) e_l == e_i (e_j e_l)
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j)
      for (std::size_t l = 0; l < r; ++l)
        for (std::size_t m = 0; m < r; ++m) {
          Integer left = 0, right = 0;
          for (std::size_t k = 0; k < r; ++k) {
            left += constant(i, j, k) * constant(k, l, m);
            right += constant(j, l, k) * constant(i, k, m);
          }
          if (left != right)
            throw AlgebraError(ErrorCode::NonAssociative,
                               "(" + basis_[i] + "*" + basis_[j] + ")*" + basis_[l] + " differs from " + basis_[i] +
                                   "*(" + basis_[j] + "*" + basis_[l] + ")");
        }
  for (std::size_t j = 0; j < r; ++j)
    for (std::size_t k = 0; k < r; ++k) {
      Integer value = 0;
      for (std::size_t i = 0; i < r; ++i) value += unit_[i] * constant(i, j, k);
      if (value != (j == k ? 1 : 0))
        throw AlgebraError(ErrorCode::NoUnit, "declared unit does not fix basis element " + basis_[j]);
    }
}

std::string FreeRankRing::name() const {
  std::string base = label_;
  if (base.empty()) {
    base = "Z{";
    for (std::size_t i = 0; i < rank(); ++i) base += (i ? "," : "") + basis_[i];
    base += "}";
  }
  if (local_prime_ != 0) return "Z_(" + std::to_string(local_prime_) + ")⊗" + base;
  return base;
}

bool FreeRankRing::is_canonical_scalar(const Rational& q) const {
  if (local_prime_ == 0) return q.get_den() == 1;
  return !mpz_divisible_ui_p(q.get_den_mpz_t(), local_prime_);
}

Element FreeRankRing::zero() const { return element(std::vector<Rational>(rank(), Rational(0))); }
Element FreeRankRing::one() const { return element(to_rationals(unit_)); }

Element FreeRankRing::from_integer(const Integer& k) const {
  std::vector<Rational> coords(rank());
  for (std::size_t i = 0; i < rank(); ++i) coords[i] = unit_[i] * k;
  return element(std::move(coords));
}

Element FreeRankRing::basis_element(std::size_t i) const {
  std::vector<Rational> coords(rank(), Rational(0));
  coords.at(i) = 1;
  return element(std::move(coords));
}

std::optional<std::size_t> FreeRankRing::basis_index(const std::string& name) const {
  auto it = std::find(basis_.begin(), basis_.end(), name);
  if (it == basis_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - basis_.begin());
}

Element FreeRankRing::from_coordinates(std::vector<Rational> coords) const {
  if (coords.size() != rank()) throw AlgebraError(ErrorCode::MalformedInput, "coordinate vector has wrong length");
  for (auto& c : coords) {
    c.canonicalize();
    if (!is_canonical_scalar(c))
      throw AlgebraError(ErrorCode::MalformedInput, "coefficient " + c.get_str() + " not allowed in " + name());
  }
  return element(std::move(coords));
}

Element FreeRankRing::from_integers(const std::vector<Integer>& coords) const {
  return from_coordinates(to_rationals(coords));
}

const std::vector<Rational>& FreeRankRing::coordinates(const Element& a) const {
  require_owner(a, self());
  return a.as<std::vector<Rational>>();
}

Element FreeRankRing::add(const Element& a, const Element& b) const {
  const auto& x = a.as<std::vector<Rational>>();
  const auto& y = b.as<std::vector<Rational>>();
  std::vector<Rational> z(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) z[i] = x[i] + y[i];
  return element(std::move(z));
}

Element FreeRankRing::neg(const Element& a) const {
  auto z = a.as<std::vector<Rational>>();
  for (auto& c : z) c = -c;
  return element(std::move(z));
}

Element FreeRankRing::scale(const Integer& k, const Element& a) const {
  auto z = a.as<std::vector<Rational>>();
  for (auto& c : z) c *= k;
  return element(std::move(z));
}

Element FreeRankRing::mul(const Element& a, const Element& b) const {
  const auto& x = a.as<std::vector<Rational>>();
  const auto& y = b.as<std::vector<Rational>>();
  const std::size_t r = rank();
  std::vector<Rational> z(r, Rational(0));
  for (std::size_t i = 0; i < r; ++i) {
    if (x[i] == 0) continue;
    for (std::size_t j = 0; j < r; ++j) {
      if (y[j] == 0) continue;
      Rational xy = x[i] * y[j];
      for (std::size_t k = 0; k < r; ++k) {
        const Integer& c = constant(i, j, k);
        if (c != 0) z[k] += xy * c;
      }
    }
  }
  return element(std::move(z));
}

std::vector<std::vector<Rational>> FreeRankRing::multiplication_matrix(const Element& d) const {
  const auto& x = coordinates(d);
  const std::size_t r = rank();
  std::vector<std::vector<Rational>> m(r, std::vector<Rational>(r, Rational(0)));
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j)
      for (std::size_t k = 0; k < r; ++k) m[k][j] += x[i] * constant(i, j, k);
  return m;
}

bool FreeRankRing::is_non_zero_divisor(const Element& d) const {
  return solve_rational(multiplication_matrix(d), std::vector<Rational>(rank(), Rational(0))).has_value();
}

DivisionResult FreeRankRing::divide_exact(const Element& e, const Element& d) const {
  require_owner(e, self());
  require_owner(d, self());
  auto solution = solve_rational(multiplication_matrix(d), coordinates(e));
  if (!solution)
    throw AlgebraError(ErrorCode::ZeroDivisorDenominator, d.str() + " is a zero divisor in " + name());
  std::vector<Rational> residue(rank(), Rational(0));
  bool ok = true;
  for (std::size_t k = 0; k < rank(); ++k) {
    (*solution)[k].canonicalize();
    if (!is_canonical_scalar((*solution)[k])) {
      ok = false;
      residue[k] = coordinates(e)[k];
    }
  }
  if (!ok) {
    Element witness = element(std::move(residue));
    return NotDivisible{witness, e.str() + " is not divisible by " + d.str() + " in " + name() +
                                     " (offending part " + witness.str() + ")"};
  }
  Element q = element(std::move(*solution));
  if (mul(q, d) != e) throw AlgebraError(ErrorCode::Internal, "division verification failed");
  return q;
}

Tristate FreeRankRing::p_torsion_free(unsigned) const { return Tristate::Yes; }

Element FreeRankRing::sample(Sampler& sampler) const {
  std::vector<Rational> coords(rank());
  for (auto& c : coords) c = sampler.integer();
  if (local_prime_ != 0 && sampler.coin()) {
    long den = sampler.integer(2, 4).get_si();
    if (den % static_cast<long>(local_prime_) == 0) ++den;
    for (auto& c : coords) {
      c /= den;
      c.canonicalize();
    }
  }
  return element(std::move(coords));
}

std::string FreeRankRing::format(const Element& a) const {
  const auto& x = coordinates(a);
  std::ostringstream out;
  bool first = true;
  for (std::size_t i = 0; i < rank(); ++i) {
    if (x[i] == 0) continue;
    Rational c = x[i];
    bool negative = c < 0;
    if (negative) c = -c;
    if (first) out << (negative ? "-" : "");
    else out << (negative ? " - " : " + ");
    bool is_unit_basis = basis_[i] == "1";
    if (is_unit_basis) out << c.get_str();
    else if (c == 1) out << basis_[i];
    else out << c.get_str() << "*" << basis_[i];
    first = false;
  }
  return first ? "0" : out.str();
}

std::shared_ptr<const FreeRankRing> FreeRankRing::localized(unsigned prime) const {
  return create(basis_, constants_, unit_, prime, label_);
}

Element FreeRankRing::embed_into(const std::shared_ptr<const FreeRankRing>& target, const Element& a) const {
  if (target->basis_ != basis_) throw AlgebraError(ErrorCode::OwnerMismatch, "incompatible bases");
  return target->from_coordinates(coordinates(a));
}

// --- polynomial rings ------------------------------------------------------------

namespace poly {

unsigned long total_degree(const Monomial& m) {
  unsigned long d = 0;
  for (auto e : m) d += e;
  return d;
}

void add_into(PolyTerms& target, const PolyTerms& source, const Integer& factor) {
  for (const auto& [mono, coeff] : source) {
    auto [it, inserted] = target.try_emplace(mono, 0);
    it->second += coeff * factor;
    if (it->second == 0) target.erase(it);
  }
}

PolyTerms combine(const PolyTerms& a, const PolyTerms& b, const Integer& factor) {
  PolyTerms out;
  const auto less = a.key_comp();
  auto i = a.begin(), j = b.begin();
  while (i != a.end() || j != b.end()) {
    if (j == b.end() || (i != a.end() && less(i->first, j->first))) {
      out.emplace_hint(out.end(), *i++);
    } else if (i == a.end() || less(j->first, i->first)) {
      out.emplace_hint(out.end(), j->first, j->second * factor);
      ++j;
    } else {
      Integer c = i->second + j->second * factor;
      if (c != 0) out.emplace_hint(out.end(), i->first, std::move(c));
      ++i, ++j;
    }
  }
  return out;
}

namespace {

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const {
    std::size_t h = 1469598103934665603ULL;
    for (auto e : m) h = (h ^ e) * 1099511628211ULL;
    return h;
  }
};

}  // namespace

PolyTerms multiply(const PolyTerms& a, const PolyTerms& b) {
  PolyTerms result;
  if (a.empty() || b.empty()) return result;
  const PolyTerms& small = a.size() <= b.size() ? a : b;
  const PolyTerms& large = a.size() <= b.size() ? b : a;
  Monomial m;
  if (small.size() == 1) {
    // multiplying by one term preserves the order
    const auto& [ms, cs] = *small.begin();
    for (const auto& [ml, cl] : large) {
      m = ml;
      for (std::size_t i = 0; i < m.size(); ++i) m[i] += ms[i];
      result.emplace_hint(result.end(), m, cs * cl);
    }
    return result;
  }
  // Few variables and small exponents: pack each monomial into one word, first
  // variable most significant, so integer order is lexicographic order.
  const std::size_t arity = a.begin()->first.size();
  unsigned long max_degree = total_degree(a.rbegin()->first) + total_degree(b.rbegin()->first);
  if (arity > 0 && arity <= 4 && max_degree < 0xFFFF) {
    auto pack = [arity](const Monomial& x) {
      std::uint64_t key = 0;
      for (std::size_t i = 0; i < arity; ++i) key = (key << 16) | x[i];
      return key;
    };
    std::vector<std::uint64_t> pa, pb;
    for (const auto& [mono, c] : a) pa.push_back(pack(mono));
    for (const auto& [mono, c] : b) pb.push_back(pack(mono));
    std::unordered_map<std::uint64_t, Integer> packed;
    packed.reserve(a.size() * b.size());
    std::size_t i = 0;
    for (const auto& [ma, ca] : a) {
      std::size_t j = 0;
      for (const auto& [mb, cb] : b) {
        Integer& slot = packed[pa[i] + pb[j++]];
        mpz_addmul(slot.get_mpz_t(), ca.get_mpz_t(), cb.get_mpz_t());
      }
      ++i;
    }
    std::vector<std::tuple<unsigned long, std::uint64_t, Integer*>> order;
    order.reserve(packed.size());
    for (auto& [key, c] : packed) {
      if (c == 0) continue;
      unsigned long degree = 0;
      for (std::size_t v = 0; v < arity; ++v) degree += (key >> (16 * v)) & 0xFFFF;
      order.emplace_back(degree, key, &c);
    }
    std::sort(order.begin(), order.end(), [](const auto& x, const auto& y) {
      return std::get<0>(x) != std::get<0>(y) ? std::get<0>(x) < std::get<0>(y) : std::get<1>(x) < std::get<1>(y);
    });
    Monomial unpacked(arity);
    for (auto& [degree, key, c] : order) {
      for (std::size_t v = 0; v < arity; ++v) unpacked[arity - 1 - v] = static_cast<std::uint32_t>((key >> (16 * v)) & 0xFFFF);
      result.emplace_hint(result.end(), unpacked, std::move(*c));
    }
    return result;
  }
  std::unordered_map<Monomial, Integer, MonomialHash> acc;
  acc.reserve(a.size() * b.size());
  for (const auto& [ma, ca] : a)
    for (const auto& [mb, cb] : b) {
      m = ma;
      for (std::size_t i = 0; i < m.size(); ++i) m[i] += mb[i];
      Integer& slot = acc[m];
      mpz_addmul(slot.get_mpz_t(), ca.get_mpz_t(), cb.get_mpz_t());
    }
  std::vector<std::pair<unsigned long, decltype(acc)::iterator>> order;
  order.reserve(acc.size());
  for (auto it = acc.begin(); it != acc.end(); ++it)
    if (it->second != 0) order.emplace_back(total_degree(it->first), it);
  std::sort(order.begin(), order.end(), [](const auto& x, const auto& y) {
    return x.first != y.first ? x.first < y.first : x.second->first < y.second->first;
  });
  for (auto& [degree, it] : order) result.emplace_hint(result.end(), it->first, std::move(it->second));
  return result;
}

PolyTerms constant(const Integer& c, std::size_t arity) {
  PolyTerms t;
  if (c != 0) t.emplace(Monomial(arity, 0), c);
  return t;
}

PolyTerms power(const PolyTerms& a, unsigned long exponent, std::size_t arity) {
  PolyTerms result = constant(1, arity);
  PolyTerms base = a;
  while (exponent > 0) {
    if (exponent & 1UL) result = multiply(result, base);
    exponent >>= 1;
    if (exponent > 0) base = multiply(base, base);
  }
  return result;
}

}  // namespace poly

PolynomialRing::PolynomialRing(std::vector<std::string> variables) : variables_(std::move(variables)) {
  std::vector<std::string> sorted = variables_;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw AlgebraError(ErrorCode::MalformedInput, "duplicate polynomial variable");
}

std::string PolynomialRing::name() const {
  std::string s = "Z[";
  for (std::size_t i = 0; i < variables_.size(); ++i) s += (i ? "," : "") + variables_[i];
  return s + "]";
}

Element PolynomialRing::add(const Element& a, const Element& b) const {
  return element(poly::combine(a.as<PolyTerms>(), b.as<PolyTerms>(), 1));
}

Element PolynomialRing::sub(const Element& a, const Element& b) const {
  return element(poly::combine(a.as<PolyTerms>(), b.as<PolyTerms>(), -1));
}

Element PolynomialRing::neg(const Element& a) const {
  PolyTerms t = a.as<PolyTerms>();
  for (auto& [m, c] : t) c = -c;
  return element(std::move(t));
}

Element PolynomialRing::mul(const Element& a, const Element& b) const {
  return element(poly::multiply(a.as<PolyTerms>(), b.as<PolyTerms>()));
}

Element PolynomialRing::scale(const Integer& k, const Element& a) const {
  if (k == 0) return zero();
  PolyTerms t = a.as<PolyTerms>();
  for (auto& [m, c] : t) c *= k;
  return element(std::move(t));
}

Element PolynomialRing::from_integer(const Integer& k) const { return element(poly::constant(k, arity())); }

DivisionResult PolynomialRing::divide_exact(const Element& e, const Element& d) const {
  require_owner(e, self());
  require_owner(d, self());
  const auto& dt = d.as<PolyTerms>();
  if (dt.empty()) throw AlgebraError(ErrorCode::ZeroDivisorDenominator, "division by zero in " + name());
  if (dt.size() != 1 || poly::total_degree(dt.begin()->first) != 0)
    throw AlgebraError(ErrorCode::Unsupported, "polynomial division only by integer constants");
  const Integer& den = dt.begin()->second;
  PolyTerms quotient, residue;
  for (const auto& [m, c] : e.as<PolyTerms>()) {
    if (mpz_divisible_p(c.get_mpz_t(), den.get_mpz_t())) {
      Integer q;
      mpz_divexact(q.get_mpz_t(), c.get_mpz_t(), den.get_mpz_t());
      quotient.emplace(m, q);
    } else {
      residue.emplace(m, c);
    }
  }
  if (!residue.empty()) {
    Element witness = element(std::move(residue));
    return NotDivisible{witness, e.str() + " is not divisible by " + den.get_str() + " (offending part " +
                                     witness.str() + ")"};
  }
  return element(std::move(quotient));
}

Element PolynomialRing::sample(Sampler& sampler) const {
  PolyTerms t;
  std::size_t terms = 1 + sampler.index(3);
  for (std::size_t n = 0; n < terms; ++n) {
    Monomial m(arity(), 0);
    std::size_t degree = sampler.index(2);
    for (std::size_t d = 0; d < degree && arity() > 0; ++d) m[sampler.index(arity())] += 1;
    auto [it, inserted] = t.try_emplace(m, 0);
    it->second += sampler.integer();
    if (it->second == 0) t.erase(it);
  }
  return element(std::move(t));
}

std::string PolynomialRing::format(const Element& a) const {
  const auto& t = a.as<PolyTerms>();
  if (t.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (auto it = t.rbegin(); it != t.rend(); ++it) {
    const auto& [m, coeff] = *it;
    Integer c = coeff;
    bool negative = c < 0;
    if (negative) c = -c;
    if (first) out << (negative ? "-" : "");
    else out << (negative ? " - " : " + ");
    first = false;
    bool constant = poly::total_degree(m) == 0;
    bool wrote = false;
    if (constant || c != 1) {
      out << c.get_str();
      wrote = true;
    }
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (m[i] == 0) continue;
      out << (wrote ? "*" : "") << variables_[i];
      if (m[i] > 1) out << "^" << m[i];
      wrote = true;
    }
  }
  return out.str();
}

Element PolynomialRing::variable(std::size_t i) const {
  Monomial m(arity(), 0);
  m.at(i) = 1;
  return monomial(std::move(m));
}

Element PolynomialRing::variable(const std::string& name) const {
  auto idx = variable_index(name);
  if (!idx) throw AlgebraError(ErrorCode::MalformedInput, "unknown variable " + name + " in " + this->name());
  return variable(*idx);
}

std::optional<std::size_t> PolynomialRing::variable_index(const std::string& name) const {
  auto it = std::find(variables_.begin(), variables_.end(), name);
  if (it == variables_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - variables_.begin());
}

Element PolynomialRing::monomial(Monomial exponents, Integer coefficient) const {
  if (exponents.size() != arity()) throw AlgebraError(ErrorCode::MalformedInput, "monomial has wrong arity");
  PolyTerms t;
  if (coefficient != 0) t.emplace(std::move(exponents), std::move(coefficient));
  return element(std::move(t));
}

Element PolynomialRing::permute_variables(const Element& a, const std::vector<std::size_t>& perm) const {
  PolyTerms t;
  for (const auto& [m, c] : a.as<PolyTerms>()) {
    Monomial image(arity(), 0);
    for (std::size_t i = 0; i < arity(); ++i) image[perm[i]] += m[i];
    t.emplace(std::move(image), c);
  }
  return element(std::move(t));
}

// --- products --------------------------------------------------------------------------

std::string ProductRing::name() const { return "(" + factors_[0]->name() + ")x(" + factors_[1]->name() + ")"; }

Element ProductRing::pair(const Element& left, const Element& right) const {
  require_owner(left, factors_[0]);
  require_owner(right, factors_[1]);
  return element(std::vector<Element>{left, right});
}

Element ProductRing::zero() const { return element(std::vector<Element>{factors_[0]->zero(), factors_[1]->zero()}); }
Element ProductRing::one() const { return element(std::vector<Element>{factors_[0]->one(), factors_[1]->one()}); }

Element ProductRing::add(const Element& a, const Element& b) const {
  return element(std::vector<Element>{component(a, 0) + component(b, 0), component(a, 1) + component(b, 1)});
}
Element ProductRing::neg(const Element& a) const {
  return element(std::vector<Element>{-component(a, 0), -component(a, 1)});
}
Element ProductRing::mul(const Element& a, const Element& b) const {
  return element(std::vector<Element>{component(a, 0) * component(b, 0), component(a, 1) * component(b, 1)});
}

DivisionResult ProductRing::divide_exact(const Element& e, const Element& d) const {
  require_owner(e, self());
  require_owner(d, self());
  std::vector<Element> parts;
  for (std::size_t i = 0; i < 2; ++i) {
    auto r = factors_[i]->divide_exact(component(e, i), component(d, i));
    if (auto* failure = std::get_if<NotDivisible>(&r)) {
      std::vector<Element> residue{factors_[0]->zero(), factors_[1]->zero()};
      residue[i] = failure->residue;
      return NotDivisible{element(std::move(residue)), "component " + std::to_string(i) + ": " + failure->detail};
    }
    parts.push_back(std::get<Element>(r));
  }
  return element(std::move(parts));
}

Tristate ProductRing::p_torsion_free(unsigned p) const {
  Tristate a = factors_[0]->p_torsion_free(p), b = factors_[1]->p_torsion_free(p);
  if (a == Tristate::No || b == Tristate::No) return Tristate::No;
  if (a == Tristate::Unknown || b == Tristate::Unknown) return Tristate::Unknown;
  return Tristate::Yes;
}

Element ProductRing::sample(Sampler& sampler) const {
  return element(std::vector<Element>{factors_[0]->sample(sampler), factors_[1]->sample(sampler)});
}

std::string ProductRing::format(const Element& a) const {
  return "(" + component(a, 0).str() + ", " + component(a, 1).str() + ")";
}

// --- involutions and fixed subrings ------------------------------------------------

Involution Involution::trivial(const RingHandle& ring) {
  return Involution(ring, [](const Element& a) { return a; }, "trivial");
}

Involution Involution::signed_permutation(const std::shared_ptr<const FreeRankRing>& ring, std::vector<std::size_t> perm,
                                          std::vector<int> signs) {
  if (perm.size() != ring->rank() || signs.size() != ring->rank())
    throw AlgebraError(ErrorCode::BadInvolution, "permutation length differs from rank");
  std::weak_ptr<const FreeRankRing> weak = ring;
  auto action = [weak, perm, signs](const Element& a) {
    auto r = weak.lock();
    const auto& x = r->coordinates(a);
    std::vector<Rational> y(x.size(), Rational(0));
    for (std::size_t i = 0; i < x.size(); ++i) y[perm[i]] += x[i] * signs[i];
    return r->from_coordinates(std::move(y));
  };
  Involution inv(ring, action, "signed basis permutation");
  return inv;
}

Involution Involution::variable_swap(const std::shared_ptr<const PolynomialRing>& ring, std::vector<std::size_t> perm) {
  if (perm.size() != ring->arity()) throw AlgebraError(ErrorCode::BadInvolution, "permutation length differs from arity");
  for (std::size_t i = 0; i < perm.size(); ++i)
    if (perm.at(perm[i]) != i) throw AlgebraError(ErrorCode::BadInvolution, "variable permutation is not an involution");
  std::weak_ptr<const PolynomialRing> weak = ring;
  std::string desc = "variable swap";
  return Involution(ring, [weak, perm](const Element& a) { return weak.lock()->permute_variables(a, perm); }, desc);
}

Involution Involution::factor_swap(const std::shared_ptr<const ProductRing>& ring) {
  if (ring->factor(0) != ring->factor(1))
    throw AlgebraError(ErrorCode::BadInvolution, "factor swap needs identical factors");
  std::weak_ptr<const ProductRing> weak = ring;
  return Involution(ring, [weak](const Element& a) {
    auto r = weak.lock();
    return r->pair(r->component(a, 1), r->component(a, 0));
  }, "swap");
}

Element Involution::operator()(const Element& a) const {
  require_owner(a, ring_);
  return action_(a);
}

void Involution::validate(Sampler& sampler, std::size_t samples) const {
  if (action_(ring_->one()) != ring_->one())
    throw AlgebraError(ErrorCode::BadInvolution, "involution does not preserve the unit");
  for (std::size_t n = 0; n < samples; ++n) {
    Element a = ring_->sample(sampler), b = ring_->sample(sampler);
    Element ta = action_(a), tb = action_(b);
    if (action_(ta) != a) throw AlgebraError(ErrorCode::BadInvolution, "action is not of order 2 at " + a.str());
    if (action_(a + b) != ta + tb) throw AlgebraError(ErrorCode::BadInvolution, "action is not additive at " + a.str());
    if (action_(a * b) != ta * tb)
      throw AlgebraError(ErrorCode::BadInvolution, "action is not multiplicative at " + a.str());
  }
}

Element FixedSubring::include(const Element& b) const {
  require_owner(b, self());
  return Element(ambient(), b.payload());
}

Element FixedSubring::lift(const Element& a) const {
  require_owner(a, ambient());
  if (involution_(a) != a) throw AlgebraError(ErrorCode::BadInvolution, a.str() + " is not fixed by the involution");
  return element(a.payload());
}

Element FixedSubring::add(const Element& a, const Element& b) const {
  return element(ambient()->add(include(a), include(b)).payload());
}
Element FixedSubring::sub(const Element& a, const Element& b) const {
  return element(ambient()->sub(include(a), include(b)).payload());
}
Element FixedSubring::neg(const Element& a) const { return element(ambient()->neg(include(a)).payload()); }
Element FixedSubring::mul(const Element& a, const Element& b) const {
  return element(ambient()->mul(include(a), include(b)).payload());
}

DivisionResult FixedSubring::divide_exact(const Element& e, const Element& d) const {
  auto r = ambient()->divide_exact(include(e), include(d));
  if (auto* failure = std::get_if<NotDivisible>(&r)) return *failure;
  return lift(std::get<Element>(r));
}

Element FixedSubring::sample(Sampler& sampler) const {
  Element a = ambient()->sample(sampler);
  switch (sampler.index(3)) {
    case 0: return lift(a + involution_(a));
    case 1: return lift(a * involution_(a));
    default: return lift(a + involution_(a) + ambient()->from_integer(sampler.integer()));
  }
}

// --- constructors ----------------------------------------------------------------------

RingHandle make_integers() {
  static const RingHandle z = std::make_shared<const IntegerRing>();
  return z;
}

RingHandle make_modular(const Integer& modulus) { return std::make_shared<const ModularRing>(modulus); }
RingHandle make_localization(unsigned prime) { return std::make_shared<const LocalizationRing>(prime); }

std::shared_ptr<const PolynomialRing> make_polynomial_ring(std::vector<std::string> variables) {
  return std::make_shared<const PolynomialRing>(std::move(variables));
}

std::shared_ptr<const ProductRing> make_product(RingHandle left, RingHandle right) {
  return std::make_shared<const ProductRing>(std::move(left), std::move(right));
}

std::shared_ptr<const FreeRankRing> make_quadratic_ring(const Integer& c, std::string label) {
  // basis {1, x}; x*x = c x
  std::vector<Integer> constants(8, Integer(0));
  auto at = [](std::size_t i, std::size_t j, std::size_t k) { return (i * 2 + j) * 2 + k; };
  constants[at(0, 0, 0)] = 1;
  constants[at(0, 1, 1)] = 1;
  constants[at(1, 0, 1)] = 1;
  constants[at(1, 1, 1)] = c;
  if (label.empty()) label = "Z[x]/(x^2-" + c.get_str() + "x)";
  return FreeRankRing::create({"1", "x"}, std::move(constants), {Integer(1), Integer(0)}, 0, std::move(label));
}

bool is_p_torsion_free(const RingHandle& ring, unsigned p) {
  switch (ring->p_torsion_free(p)) {
    case Tristate::Yes: return true;
    case Tristate::No: return false;
    default: throw AlgebraError(ErrorCode::Unknown, "p-torsion-freeness of " + ring->name() + " is not decidable");
  }
}

Element divide_or_throw(const Element& e, const Element& d) {
  require_same_owner(e, d);
  auto r = e.ring()->divide_exact(e, d);
  if (auto* failure = std::get_if<NotDivisible>(&r)) throw AlgebraError(ErrorCode::NotDivisible, failure->detail);
  return std::get<Element>(r);
}

DivisionResult divide_by_integer(const Element& e, const Integer& d) {
  return e.ring()->divide_exact(e, e.ring()->from_integer(d));
}

bool divides(const Integer& d, const Element& e) { return std::holds_alternative<Element>(divide_by_integer(e, d)); }

std::vector<Integer> integer_coordinates(const Element& a) {
  if (a.ring()->kind() == RingKind::Integers) return {a.as<Integer>()};
  if (auto free = std::dynamic_pointer_cast<const FreeRankRing>(a.ring()); free && free->local_prime() == 0) {
    std::vector<Integer> coords;
    for (const auto& c : free->coordinates(a)) coords.push_back(c.get_num());
    return coords;
  }
  throw AlgebraError(ErrorCode::Unsupported, a.ring()->name() + " has no integer basis");
}

std::size_t integer_rank(const RingHandle& ring) {
  if (ring->kind() == RingKind::Integers) return 1;
  if (auto free = std::dynamic_pointer_cast<const FreeRankRing>(ring); free && free->local_prime() == 0)
    return free->rank();
  throw AlgebraError(ErrorCode::Unsupported, ring->name() + " has no integer basis");
}

Element from_integer_coordinates(const RingHandle& ring, const std::vector<Integer>& coords) {
  if (ring->kind() == RingKind::Integers) return ring->from_integer(coords.at(0));
  if (auto free = std::dynamic_pointer_cast<const FreeRankRing>(ring)) return free->from_integers(coords);
  throw AlgebraError(ErrorCode::Unsupported, ring->name() + " has no integer basis");
}

Element evaluate(const PolyTerms& polynomial, std::span<const Element> values, const RingHandle& target) {
  Element result = target->zero();
  if (polynomial.empty()) return result;
  const std::size_t arity = polynomial.begin()->first.size();
  if (values.size() != arity) throw AlgebraError(ErrorCode::MalformedInput, "wrong number of values for evaluation");
  std::vector<std::vector<Element>> powers(arity);
  auto power_of = [&](std::size_t var, std::uint32_t e) -> const Element& {
    auto& table = powers[var];
    if (table.empty()) {
      require_owner(values[var], target);
      table.push_back(target->one());
    }
    while (table.size() <= e) table.push_back(target->mul(table.back(), values[var]));
    return table[e];
  };
  for (const auto& [m, c] : polynomial) {
    Element term = target->from_integer(c);
    for (std::size_t v = 0; v < arity; ++v)
      if (m[v] != 0) term = target->mul(term, power_of(v, m[v]));
    result = target->add(result, term);
  }
  return result;
}

}  // namespace polywitt
