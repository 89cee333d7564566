#pragma once

// Exact commutative rings with dynamically dispatched arithmetic.
//
// A ring is an immutable object behind a shared handle; an Element pairs an
// owner handle with a payload in the owner's canonical form. Arithmetic
// between elements of different owners throws OwnerMismatch.

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "polywitt/errors.hpp"
#include "polywitt/integer.hpp"
#include "polywitt/random.hpp"

namespace polywitt {

class Ring;
class Element;
using RingHandle = std::shared_ptr<const Ring>;

/// Exponent vector over a fixed variable list.
using Monomial = std::vector<std::uint32_t>;

/// Degree-lexicographic order: total degree first, then lexicographic.
struct MonomialOrder {
  bool operator()(const Monomial& a, const Monomial& b) const;
};

/// Sparse integer polynomial; zero coefficients are never stored.
using PolyTerms = std::map<Monomial, Integer, MonomialOrder>;

using Payload = std::variant<Integer, Rational, std::vector<Rational>, PolyTerms, std::vector<Element>>;

class Element {
 public:
  Element() = default;
  Element(RingHandle owner, Payload payload) : owner_(std::move(owner)), payload_(std::move(payload)) {}

  const RingHandle& ring() const { return owner_; }
  const Payload& payload() const { return payload_; }
  template <class T>
  const T& as() const { return std::get<T>(payload_); }
  bool valid() const { return owner_ != nullptr; }

  Element operator+(const Element& other) const;
  Element operator-(const Element& other) const;
  Element operator*(const Element& other) const;
  Element operator-() const;
  Element& operator+=(const Element& other) { return *this = *this + other; }
  Element& operator-=(const Element& other) { return *this = *this - other; }
  Element& operator*=(const Element& other) { return *this = *this * other; }

  Element pow(unsigned long exponent) const;
  Element scaled(const Integer& k) const;
  bool is_zero() const;
  std::string str() const;

  /// Structural equality: same owner and identical canonical payload.
  bool operator==(const Element& other) const;
  bool operator!=(const Element& other) const { return !(*this == other); }

 private:
  RingHandle owner_;
  Payload payload_;
};

/// Witness for a failed exact division: the offending part of the dividend.
struct NotDivisible {
  Element residue;
  std::string detail;
};

using DivisionResult = std::variant<Element, NotDivisible>;

enum class RingKind { Integers, Modular, FreeRank, Localization, Polynomial, Product, FixedSubring, Witt, TwistedWitt, FreeTambara };

enum class Tristate { No, Yes, Unknown };

class Ring : public std::enable_shared_from_this<Ring> {
 public:
  virtual ~Ring() = default;

  virtual RingKind kind() const = 0;
  virtual std::string name() const = 0;

  virtual Element zero() const = 0;
  virtual Element one() const = 0;
  virtual Element add(const Element& a, const Element& b) const = 0;
  virtual Element neg(const Element& a) const = 0;
  virtual Element sub(const Element& a, const Element& b) const { return add(a, neg(b)); }
  virtual Element mul(const Element& a, const Element& b) const = 0;
  virtual Element from_integer(const Integer& k) const;
  virtual Element scale(const Integer& k, const Element& a) const;
  virtual bool is_zero(const Element& a) const { return a == zero(); }

  /// Exact quotient q with q*d = e. Throws ZeroDivisorDenominator when d is not
  /// a declared non-zero-divisor of this ring.
  virtual DivisionResult divide_exact(const Element& e, const Element& d) const;
  virtual Tristate p_torsion_free(unsigned p) const = 0;

  /// Small random element for sampled checks.
  virtual Element sample(Sampler& sampler) const = 0;
  virtual std::string format(const Element& a) const = 0;

  Element element(Payload payload) const { return Element(self(), std::move(payload)); }
  RingHandle self() const { return shared_from_this(); }
};

void require_same_owner(const Element& a, const Element& b);
void require_owner(const Element& a, const RingHandle& ring);
std::vector<Element> reown(std::span<const Element> values, const RingHandle& ring);

// ---------------------------------------------------------------------------

class IntegerRing final : public Ring {
 public:
  RingKind kind() const override { return RingKind::Integers; }
  std::string name() const override { return "Z"; }
  Element zero() const override { return element(Integer(0)); }
  Element one() const override { return element(Integer(1)); }
  Element add(const Element& a, const Element& b) const override;
  Element neg(const Element& a) const override;
  Element mul(const Element& a, const Element& b) const override;
  Element from_integer(const Integer& k) const override { return element(k); }
  DivisionResult divide_exact(const Element& e, const Element& d) const override;
  Tristate p_torsion_free(unsigned) const override { return Tristate::Yes; }
  Element sample(Sampler& sampler) const override { return element(sampler.integer()); }
  std::string format(const Element& a) const override { return a.as<Integer>().get_str(); }
};

class ModularRing final : public Ring {
 public:
  explicit ModularRing(Integer modulus);
  RingKind kind() const override { return RingKind::Modular; }
  std::string name() const override { return "Z/" + modulus_.get_str(); }
  const Integer& modulus() const { return modulus_; }
  Element zero() const override { return element(Integer(0)); }
  Element one() const override { return element(reduce(1)); }
  Element add(const Element& a, const Element& b) const override;
  Element neg(const Element& a) const override;
  Element mul(const Element& a, const Element& b) const override;
  Element from_integer(const Integer& k) const override { return element(reduce(k)); }
  DivisionResult divide_exact(const Element& e, const Element& d) const override;
  Tristate p_torsion_free(unsigned p) const override;
  Element sample(Sampler& sampler) const override;
  std::string format(const Element& a) const override { return a.as<Integer>().get_str(); }

 private:
  Integer reduce(const Integer& k) const;
  Integer modulus_;
};

/// Localization Z_(p): reduced fractions whose denominators are prime to p.
class LocalizationRing final : public Ring {
 public:
  explicit LocalizationRing(unsigned prime);
  RingKind kind() const override { return RingKind::Localization; }
  std::string name() const override { return "Z_(" + std::to_string(prime_) + ")"; }
  unsigned prime() const { return prime_; }
  Element zero() const override { return element(Rational(0)); }
  Element one() const override { return element(Rational(1)); }
  Element add(const Element& a, const Element& b) const override;
  Element neg(const Element& a) const override;
  Element mul(const Element& a, const Element& b) const override;
  Element from_integer(const Integer& k) const override { return element(Rational(k)); }
  Element from_rational(const Rational& q) const;
  DivisionResult divide_exact(const Element& e, const Element& d) const override;
  Tristate p_torsion_free(unsigned) const override { return Tristate::Yes; }
  Element sample(Sampler& sampler) const override;
  std::string format(const Element& a) const override { return a.as<Rational>().get_str(); }

 private:
  unsigned prime_;
};

/// Ring free of finite rank over Z (or over Z_(p) when localized), given by a
/// basis, integer structure constants and a unit. Coordinates are stored as
/// rationals that are integral (resp. p-local) by invariant.
class FreeRankRing final : public Ring {
 public:
  /// constants[(i*r + j)*r + k] is the coefficient of basis k in basis(i)*basis(j).
  static std::shared_ptr<const FreeRankRing> create(std::vector<std::string> basis, std::vector<Integer> constants,
                                                    std::vector<Integer> unit, unsigned local_prime = 0,
                                                    std::string label = {});

  RingKind kind() const override { return RingKind::FreeRank; }
  std::string name() const override;
  std::size_t rank() const { return basis_.size(); }
  const std::vector<std::string>& basis() const { return basis_; }
  const Integer& constant(std::size_t i, std::size_t j, std::size_t k) const {
    return constants_[(i * rank() + j) * rank() + k];
  }
  const std::vector<Integer>& constants() const { return constants_; }
  const std::vector<Integer>& unit_coordinates() const { return unit_; }
  unsigned local_prime() const { return local_prime_; }
  const std::string& label() const { return label_; }

  Element zero() const override;
  Element one() const override;
  Element add(const Element& a, const Element& b) const override;
  Element neg(const Element& a) const override;
  Element mul(const Element& a, const Element& b) const override;
  Element scale(const Integer& k, const Element& a) const override;
  Element from_integer(const Integer& k) const override;
  DivisionResult divide_exact(const Element& e, const Element& d) const override;
  Tristate p_torsion_free(unsigned p) const override;
  Element sample(Sampler& sampler) const override;
  std::string format(const Element& a) const override;

  Element basis_element(std::size_t i) const;
  std::optional<std::size_t> basis_index(const std::string& name) const;
  Element from_coordinates(std::vector<Rational> coords) const;
  Element from_integers(const std::vector<Integer>& coords) const;
  const std::vector<Rational>& coordinates(const Element& a) const;
  /// Matrix (row k, column j) of multiplication by d in the basis.
  std::vector<std::vector<Rational>> multiplication_matrix(const Element& d) const;
  bool is_non_zero_divisor(const Element& d) const;
  bool is_canonical_scalar(const Rational& q) const;

  /// Z_(p) tensored with this ring (same basis and constants).
  std::shared_ptr<const FreeRankRing> localized(unsigned prime) const;
  /// Image of an element of the unlocalized ring in localized(p).
  Element embed_into(const std::shared_ptr<const FreeRankRing>& target, const Element& a) const;

 private:
  FreeRankRing() = default;
  void verify_axioms() const;

  std::vector<std::string> basis_;
  std::vector<Integer> constants_;
  std::vector<Integer> unit_;
  unsigned local_prime_ = 0;
  std::string label_;
};

/// Polynomial ring over Z on a finite list of named variables.
class PolynomialRing final : public Ring {
 public:
  explicit PolynomialRing(std::vector<std::string> variables);
  RingKind kind() const override { return RingKind::Polynomial; }
  std::string name() const override;
  const std::vector<std::string>& variables() const { return variables_; }
  std::size_t arity() const { return variables_.size(); }

  Element zero() const override { return element(PolyTerms{}); }
  Element one() const override { return from_integer(1); }
  Element add(const Element& a, const Element& b) const override;
  Element neg(const Element& a) const override;
  Element sub(const Element& a, const Element& b) const override;
  Element mul(const Element& a, const Element& b) const override;
  Element scale(const Integer& k, const Element& a) const override;
  Element from_integer(const Integer& k) const override;
  /// Division by non-zero integer constants only.
  DivisionResult divide_exact(const Element& e, const Element& d) const override;
  Tristate p_torsion_free(unsigned) const override { return Tristate::Yes; }
  Element sample(Sampler& sampler) const override;
  std::string format(const Element& a) const override;

  Element variable(std::size_t i) const;
  Element variable(const std::string& name) const;
  std::optional<std::size_t> variable_index(const std::string& name) const;
  Element monomial(Monomial exponents, Integer coefficient = 1) const;
  /// Ring endomorphism permuting variables: variable i goes to variable perm[i].
  Element permute_variables(const Element& a, const std::vector<std::size_t>& perm) const;

 private:
  std::vector<std::string> variables_;
};

class ProductRing final : public Ring {
 public:
  ProductRing(RingHandle left, RingHandle right) : factors_{std::move(left), std::move(right)} {}
  RingKind kind() const override { return RingKind::Product; }
  std::string name() const override;
  const RingHandle& factor(std::size_t i) const { return factors_[i]; }

  Element zero() const override;
  Element one() const override;
  Element add(const Element& a, const Element& b) const override;
  Element neg(const Element& a) const override;
  Element mul(const Element& a, const Element& b) const override;
  DivisionResult divide_exact(const Element& e, const Element& d) const override;
  Tristate p_torsion_free(unsigned p) const override;
  Element sample(Sampler& sampler) const override;
  std::string format(const Element& a) const override;

  Element pair(const Element& left, const Element& right) const;
  const Element& component(const Element& a, std::size_t i) const { return a.as<std::vector<Element>>()[i]; }

 private:
  RingHandle factors_[2];
};

// ---------------------------------------------------------------------------

/// Ring automorphism of order at most two.
class Involution {
 public:
  using Action = std::function<Element(const Element&)>;
  Involution() = default;
  Involution(RingHandle ring, Action action, std::string description)
      : ring_(std::move(ring)), action_(std::move(action)), description_(std::move(description)) {}

  static Involution trivial(const RingHandle& ring);
  /// Signed permutation of a free-rank basis: basis i goes to sign[i] * basis perm[i].
  static Involution signed_permutation(const std::shared_ptr<const FreeRankRing>& ring,
                                       std::vector<std::size_t> perm, std::vector<int> signs);
  /// Variable substitution given as a permutation of order <= 2.
  static Involution variable_swap(const std::shared_ptr<const PolynomialRing>& ring, std::vector<std::size_t> perm);
  /// (a, b) -> (b, a) on a product of a ring with itself.
  static Involution factor_swap(const std::shared_ptr<const ProductRing>& ring);

  Element operator()(const Element& a) const;
  const RingHandle& ring() const { return ring_; }
  const std::string& description() const { return description_; }

  /// Sampled check that the action is an additive, multiplicative, unital map of order <= 2.
  void validate(Sampler& sampler, std::size_t samples = 200) const;

 private:
  RingHandle ring_;
  Action action_;
  std::string description_;
};

/// Subring of elements fixed by an involution. Elements carry the ambient payload.
class FixedSubring final : public Ring {
 public:
  explicit FixedSubring(Involution involution) : involution_(std::move(involution)) {}
  RingKind kind() const override { return RingKind::FixedSubring; }
  std::string name() const override { return ambient()->name() + "^Z/2"; }
  const RingHandle& ambient() const { return involution_.ring(); }
  const Involution& involution() const { return involution_; }

  Element zero() const override { return lift(ambient()->zero()); }
  Element one() const override { return lift(ambient()->one()); }
  Element add(const Element& a, const Element& b) const override;
  Element sub(const Element& a, const Element& b) const override;
  Element neg(const Element& a) const override;
  Element mul(const Element& a, const Element& b) const override;
  Element from_integer(const Integer& k) const override { return lift(ambient()->from_integer(k)); }
  DivisionResult divide_exact(const Element& e, const Element& d) const override;
  Tristate p_torsion_free(unsigned p) const override { return ambient()->p_torsion_free(p); }
  Element sample(Sampler& sampler) const override;
  std::string format(const Element& a) const override { return ambient()->format(include(a)); }

  /// Inclusion into the ambient ring.
  Element include(const Element& b) const;
  /// Ambient element viewed in the subring; throws BadInvolution unless fixed.
  Element lift(const Element& a) const;

 private:
  Involution involution_;
};

// ---------------------------------------------------------------------------

/// Descriptor-level constructors (errors per construction contract).
RingHandle make_integers();
RingHandle make_modular(const Integer& modulus);
RingHandle make_localization(unsigned prime);
std::shared_ptr<const PolynomialRing> make_polynomial_ring(std::vector<std::string> variables);
std::shared_ptr<const ProductRing> make_product(RingHandle left, RingHandle right);

/// Z[x]/(x^2 - c x) with basis {1, x}.
std::shared_ptr<const FreeRankRing> make_quadratic_ring(const Integer& c, std::string label = {});

bool is_p_torsion_free(const RingHandle& ring, unsigned p);

/// Division that throws AlgebraError(NotDivisible) on failure.
Element divide_or_throw(const Element& e, const Element& d);
DivisionResult divide_by_integer(const Element& e, const Integer& d);
bool divides(const Integer& d, const Element& e);

/// Integer coordinates of an element of Z or of a free-rank ring over Z.
std::vector<Integer> integer_coordinates(const Element& a);
std::size_t integer_rank(const RingHandle& ring);
Element from_integer_coordinates(const RingHandle& ring, const std::vector<Integer>& coords);

// PolyTerms arithmetic shared by the polynomial ring and symbolic Witt code.
namespace poly {
void add_into(PolyTerms& target, const PolyTerms& source, const Integer& factor = 1);
/// a + factor * b by a single ordered merge.
PolyTerms combine(const PolyTerms& a, const PolyTerms& b, const Integer& factor);
PolyTerms multiply(const PolyTerms& a, const PolyTerms& b);
PolyTerms power(const PolyTerms& a, unsigned long exponent, std::size_t arity);
PolyTerms constant(const Integer& c, std::size_t arity);
unsigned long total_degree(const Monomial& m);
}  // namespace poly

/// Evaluates an integer polynomial at values in an arbitrary target ring.
Element evaluate(const PolyTerms& polynomial, std::span<const Element> values, const RingHandle& target);

}  // namespace polywitt
