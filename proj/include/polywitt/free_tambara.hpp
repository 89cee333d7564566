#pragma once

// The free Z/2-Tambara functor A[X;Y] on a presheaf X <- Y of sets.
//
// The underlying level is Z[X] with the involution permuting variables. The
// fixed level is Z(M(Y + X/Z2)) + Z(M(X)^Z2) + Z(M(X)^free / Z2), stored as
// three polynomials: s1 over Y followed by one variable N(x) per orbit of X,
// s2 over X holding only fixed monomials, and s3 over X holding one
// representative per orbit {h, tau h} of non-fixed monomials. The
// representative is the one with the lexicographically larger exponent
// vector, so u rather than ubar stands for {u, ubar}.
//
// Every element reads as s1 + tr(s2 + s3), which is also how it is printed.

#include <memory>
#include <string>
#include <vector>

#include "polywitt/tambara.hpp"

namespace polywitt {

struct PresheafPair {
  std::vector<std::string> X;
  std::vector<std::size_t> tau;  // involution on X
  std::vector<std::string> Y;
  std::vector<std::size_t> res;  // Y -> X, landing in the fixed points

  /// Throws BadInvolution or NotCompatible when the invariants fail.
  void validate() const;

  /// {u, ubar} style: each name n contributes the swapped pair n, nbar.
  static PresheafPair free_pairs(const std::vector<std::string>& names);
  /// Adds fixed points to X and elements of Y restricting to them.
  PresheafPair with_fixed(const std::vector<std::string>& fixed) const;
  PresheafPair with_y(const std::string& name, const std::string& restricts_to) const;
};

struct FreeTopElement {
  PolyTerms s1;
  PolyTerms s2;
  PolyTerms s3;
};

class FreeTambara final : public Ring {
 public:
  static std::shared_ptr<const FreeTambara> create(PresheafPair pair);

  RingKind kind() const override { return RingKind::FreeTambara; }
  std::string name() const override;
  const PresheafPair& pair() const { return pair_; }

  /// Z[X] with its involution.
  const std::shared_ptr<const PolynomialRing>& underlying() const { return x_ring_; }
  const Involution& tau() const { return tau_; }
  /// Z[Y, N(orbits)].
  const std::shared_ptr<const PolynomialRing>& s1_ring() const { return s1_ring_; }
  /// Orbit representatives of X, by orbit index; orbit_of(x) is the orbit of x.
  const std::vector<std::size_t>& orbit_representatives() const { return orbit_reps_; }
  std::size_t orbit_of(std::size_t x) const { return orbit_of_[x]; }

  Element zero() const override;
  Element one() const override;
  Element add(const Element& a, const Element& b) const override;
  Element neg(const Element& a) const override;
  /// The multiplication table, extended bilinearly.
  Element mul(const Element& a, const Element& b) const override;
  Tristate p_torsion_free(unsigned) const override { return Tristate::Yes; }
  Element sample(Sampler& sampler) const override;
  std::string format(const Element& a) const override;

  /// Builds an element, bringing s2 and s3 to canonical form. Throws
  /// MalformedInput if s2 holds a non-fixed or s3 a fixed monomial.
  Element make(FreeTopElement parts) const;
  FreeTopElement parts(const Element& a) const;

  /// The generator y of Y, sitting in s1.
  Element y_generator(std::size_t y) const;

  Element restrict(const Element& top) const;
  Element transfer(const Element& a) const;
  Element norm(const Element& a) const;
  /// N of a single monomial: the s1 monomial m 1 mbar.
  Element norm_monomial(const Monomial& m) const;

  Z2Tambara tambara() const;

  /// Basis elements up to a degree. s1 monomials have degree deg g + 2 deg m,
  /// so that restriction preserves degree.
  std::vector<Element> basis_up_to(unsigned degree) const;

  bool is_fixed(const Monomial& m) const;
  Monomial conjugate(const Monomial& m) const;
  /// The stored representative of {m, tau m}.
  Monomial representative(const Monomial& m) const;

 private:
  explicit FreeTambara(PresheafPair pair);
  void split_into(const PolyTerms& source, PolyTerms& fixed, PolyTerms& classes, const Integer& factor) const;
  PolyTerms restrict_s1(const PolyTerms& s1) const;

  PresheafPair pair_;
  std::shared_ptr<const PolynomialRing> x_ring_;
  std::shared_ptr<const PolynomialRing> s1_ring_;
  Involution tau_;
  std::vector<std::size_t> orbit_reps_;
  std::vector<std::size_t> orbit_of_;
  std::vector<std::size_t> tau_perm_;
};

using FreeTambaraHandle = std::shared_ptr<const FreeTambara>;

Element free_mul(const Element& a, const Element& b);

/// Exact associativity, commutativity and unit laws on all basis elements up to a degree.
CheckResult free_ring_axioms(const FreeTambara& f, unsigned degree);

/// The Tambara morphism A[X;Y] -> T determined by alpha on X and beta on Y.
/// Throws NotEquivariant or NotCompatible when (alpha, beta) is not a map of presheaves.
TambaraMorphism adjunction_extend(const FreeTambaraHandle& f, const Z2Tambara& t, std::vector<Element> alpha,
                                  std::vector<Element> beta);

struct Generators {
  std::vector<Element> alpha;  // images of X
  std::vector<Element> beta;   // images of Y
};
/// Restriction of a morphism out of A[X;Y] to the generators.
Generators restrict_to_generators(const FreeTambara& f, const TambaraMorphism& m);

struct Resolution {
  std::shared_ptr<const PolynomialRing> S;
  Involution tau;
  Z2Tambara fixed;         // the fixed-points Tambara functor of S
  TambaraMorphism onto;    // fixed -> T
  std::size_t a_generators = 0;
};

/// S = Z[u_i, ubar_i, b_j] with u_i -> a_i, ubar_i -> tau(a_i), b_j -> b_j.
/// Throws NotCohomological when T is not; surjectivity is checked on the generators.
Resolution cohomological_resolution(const Z2Tambara& t, const std::vector<Element>& a_generators,
                                    const std::vector<Element>& b_generators);

}  // namespace polywitt
