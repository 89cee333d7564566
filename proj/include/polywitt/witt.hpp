#pragma once

// Witt vectors over p-typical and finite divisor-closed truncation sets.
//
// Ring operations evaluate universal integer polynomials obtained by solving
// the ghost equations symbolically over Z[a_*, b_*]. Over rings where every
// element of the truncation set is a non-zero-divisor the same results can be
// obtained by ghost, operate, unghost; both routes are available.

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "polywitt/polymap.hpp"
#include "polywitt/rings.hpp"

namespace polywitt {

class TruncationSet {
 public:
  static TruncationSet p_typical(unsigned p, std::size_t length);
  /// Divisor-closed finite set of positive integers; at most 12 elements.
  static TruncationSet finite(std::vector<unsigned> elements);

  bool is_p_typical() const { return prime_ != 0; }
  unsigned prime() const { return prime_; }
  std::size_t size() const { return elements_.size(); }
  const std::vector<unsigned>& elements() const { return elements_; }
  /// For index j, the pairs (i, n_j / n_i) over all n_i in the set dividing n_j.
  const std::vector<std::pair<std::size_t, unsigned>>& divisors_of(std::size_t j) const { return divisors_[j]; }
  /// p-typical set of a different length with the same prime.
  TruncationSet with_length(std::size_t length) const;
  std::string str() const;

  bool operator==(const TruncationSet& other) const { return elements_ == other.elements_ && prime_ == other.prime_; }

 private:
  TruncationSet() = default;
  void build_divisors();

  unsigned prime_ = 0;
  std::vector<unsigned> elements_;
  std::vector<std::vector<std::pair<std::size_t, unsigned>>> divisors_;
};

struct WittVector {
  TruncationSet trunc;
  RingHandle ring;
  std::vector<Element> coords;

  WittVector(TruncationSet t, RingHandle r, std::vector<Element> c);
  static WittVector zero(const TruncationSet& t, const RingHandle& r);
  static WittVector one(const TruncationSet& t, const RingHandle& r);

  bool operator==(const WittVector& other) const {
    return trunc == other.trunc && ring == other.ring && coords == other.coords;
  }
  std::string str() const;
};

/// Failure to solve the ghost equations: coordinate j has no solution and
/// residue is the offending part of the dividend.
struct GhostObstruction {
  std::size_t j = 0;
  Element residue;
  std::string detail;
};

using UnghostResult = std::variant<WittVector, GhostObstruction>;

std::vector<Element> ghost(const WittVector& v);
/// Solves the ghost equations coordinate by coordinate.
UnghostResult unghost(std::span<const Element> g, const TruncationSet& trunc, const RingHandle& ring);
WittVector unghost_or_throw(std::span<const Element> g, const TruncationSet& trunc, const RingHandle& ring);

/// Universal polynomials for one truncation set. Variables a_0.. then b_0..
struct UniversalPolynomials {
  std::shared_ptr<const PolynomialRing> ring;  // Z[a_*, b_*]
  std::vector<PolyTerms> sum;
  std::vector<PolyTerms> product;
  std::vector<PolyTerms> negation;  // in the a variables only (b exponents zero)
};

/// Built once per truncation set, then shared; safe for concurrent callers.
std::shared_ptr<const UniversalPolynomials> universal_polynomials(const TruncationSet& trunc);
/// Frobenius W_{m+1} -> W_m: polynomials in a_0..a_m.
std::shared_ptr<const std::vector<PolyTerms>> universal_frobenius(unsigned p, std::size_t m);
/// Exact identity ghost(s(a,b)) = ghost(a) + ghost(b), likewise for products, over Z[a_*, b_*].
CheckResult verify_universal_polynomials(const TruncationSet& trunc);

enum class WittRoute { Auto, Universal, Ghost };

WittVector witt_add(const WittVector& u, const WittVector& v, WittRoute route = WittRoute::Auto);
WittVector witt_mul(const WittVector& u, const WittVector& v, WittRoute route = WittRoute::Auto);
WittVector witt_neg(const WittVector& u, WittRoute route = WittRoute::Auto);
WittVector witt_sub(const WittVector& u, const WittVector& v, WittRoute route = WittRoute::Auto);

WittVector teichmuller(const Element& a, const TruncationSet& trunc);
/// F: W_{m+1} -> W_m (p-typical).
WittVector frobenius(const WittVector& v, WittRoute route = WittRoute::Auto);
/// V: W_m -> W_{m+1} (p-typical).
WittVector verschiebung(const WittVector& v);
/// Drops the last coordinate (p-typical).
WittVector restrict_witt(const WittVector& v);

/// Dwork criterion for g_0..g_{m-1} with Frobenius lift phi: phi(g_{j-1}) = g_j mod p^j.
bool dwork_membership(std::span<const Element> g, unsigned p, const PolyMap& phi, std::size_t lift_samples = 50,
                      std::uint64_t seed = kDefaultSeed);

/// W_m(f) for a multiplicative map of degree < p into a p-torsion-free ring.
UnghostResult lift_polymap(const PolyMap& f, const WittVector& a);

/// Closed form for the lift in coordinates j = 0, 1.
struct LiftFormula {
  unsigned p = 0;
  std::size_t j = 0;
  /// b_j = sum of coefficient * f(a_0^p + shift * a_1); for j = 0 a single term with shift 0.
  struct Term {
    Integer coefficient;
    unsigned shift;
  };
  std::vector<Term> terms;
  std::string text() const;
  Element evaluate(const PolyMap& f, const WittVector& a) const;
};
LiftFormula universal_lift_formula(unsigned n, unsigned p, std::size_t j);

/// W(A) as a ring object; payloads are coordinate vectors over the base ring.
class WittRing final : public Ring {
 public:
  WittRing(TruncationSet trunc, RingHandle base, WittRoute route = WittRoute::Auto)
      : trunc_(std::move(trunc)), base_(std::move(base)), route_(route) {}

  RingKind kind() const override { return RingKind::Witt; }
  std::string name() const override;
  const TruncationSet& truncation() const { return trunc_; }
  const RingHandle& base() const { return base_; }

  Element zero() const override;
  Element one() const override;
  Element add(const Element& a, const Element& b) const override;
  Element neg(const Element& a) const override;
  Element sub(const Element& a, const Element& b) const override;
  Element mul(const Element& a, const Element& b) const override;
  DivisionResult divide_exact(const Element& e, const Element& d) const override;
  Tristate p_torsion_free(unsigned p) const override { return base_->p_torsion_free(p); }
  Element sample(Sampler& sampler) const override;
  std::string format(const Element& a) const override;

  Element wrap(const WittVector& v) const;
  WittVector unwrap(const Element& a) const;

 private:
  TruncationSet trunc_;
  RingHandle base_;
  WittRoute route_;
};

}  // namespace polywitt
