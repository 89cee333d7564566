#pragma once

// Divided powers of torsion-free rings of finite rank, realized as the
// symmetric invariants of the n-fold tensor power.
//
// The basis of Sym^n is the set of orbit sums O(M), one for each multiset M
// of size n over the base basis, listed in lexicographic order of sorted
// index tuples. O(M) is the sum of the distinct tensors whose factors
// rearrange to M.

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "polywitt/polymap.hpp"
#include "polywitt/rings.hpp"

namespace polywitt {

/// Sorted tuple of base-basis indices.
using Multiset = std::vector<unsigned>;

class SymPower {
 public:
  /// base is Z or a free-rank ring over Z (optionally localized).
  static std::shared_ptr<const SymPower> create(RingHandle base, unsigned degree);

  const RingHandle& base() const { return base_; }
  unsigned degree() const { return degree_; }
  std::size_t base_rank() const { return names_.size(); }
  const std::vector<Multiset>& multisets() const { return multisets_; }
  std::optional<std::size_t> index_of(const Multiset& m) const;
  /// The invariant ring itself, as a free-rank ring on the orbit sums.
  const std::shared_ptr<const FreeRankRing>& ring() const { return ring_; }

  /// Every tensor in the orbit of basis element i.
  std::vector<std::vector<unsigned>> orbit(std::size_t i) const;
  /// Coordinates of a base element in the base basis.
  std::vector<Rational> base_coordinates(const Element& a) const;
  Element base_element(const std::vector<Rational>& coords) const;
  /// Coefficient of e_k in e_i e_j in the base.
  const Integer& base_constant(std::size_t i, std::size_t j, std::size_t k) const {
    return base_constants_[(i * base_rank() + j) * base_rank() + k];
  }

  /// a tensored with itself n times.
  Element gamma(const Element& a) const;

 private:
  SymPower() = default;

  RingHandle base_;
  unsigned degree_ = 0;
  std::vector<std::string> names_;
  std::vector<Integer> base_constants_;
  std::vector<Multiset> multisets_;
  std::shared_ptr<const FreeRankRing> ring_;
};

using SymHandle = std::shared_ptr<const SymPower>;

/// Sym^0 .. Sym^max over one base, with the shuffle product between degrees.
class DividedPowers {
 public:
  DividedPowers(RingHandle base, unsigned max_degree);

  const RingHandle& base() const { return base_; }
  unsigned max_degree() const { return static_cast<unsigned>(levels_.size() - 1); }
  const SymHandle& level(unsigned n) const { return levels_.at(n); }
  /// Degree of an element of one of the levels.
  unsigned degree_of(const Element& x) const;

  Element gamma(const Element& a, unsigned n) const { return level(n)->gamma(a); }
  /// Sum over (n, m)-shuffles of the shuffled tensor x (x) y.
  Element shuffle(const Element& x, const Element& y) const;
  Element shuffle_all(std::span<const Element> factors) const;

 private:
  RingHandle base_;
  std::vector<SymHandle> levels_;
};

/// gamma_n(a) for a in a free-rank ring (or Z).
Element gamma_n(const Element& a, unsigned n);

/// Relations of the divided power algebra in degree p.degree(), on sampled a, b, k.
CheckResult divided_relations_check(const SymPower& p, std::size_t samples, std::uint64_t seed = kDefaultSeed);
CheckResult gamma_multiplicativity_check(const SymPower& p, std::size_t samples, std::uint64_t seed = kDefaultSeed);

/// Alternating sum of gamma_n over subsets of the arguments; throws
/// AlgebraError(RelationViolation) if it differs from gamma_1(a_1)...gamma_1(a_n).
Element cross_effect_expansion(const DividedPowers& dp, std::span<const Element> args);
/// The expansion on every n-tuple of base-basis elements. Both sides are
/// multilinear, so this settles the identity in degree n.
CheckResult cross_effect_expansion_exhaustive(const DividedPowers& dp, unsigned n);

/// The linear map Sym^n(A) -> B through which an n-homogeneous map A -> B factors.
/// sym must be Sym^n of phi's domain; the result has domain sym->ring().
PolyMap extend_homogeneous(const PolyMap& phi, const SymHandle& sym, std::size_t homogeneity_samples = 50,
                           std::uint64_t seed = kDefaultSeed);
PolyMap extend_homogeneous(const PolyMap& phi, unsigned n, std::size_t homogeneity_samples = 50,
                           std::uint64_t seed = kDefaultSeed);
/// phi-bar(gamma_n(a)) = phi(a) and additivity of phi-bar, sampled.
CheckResult extension_check(const PolyMap& phi, const PolyMap& extension, const SymPower& sym, std::size_t samples,
                            std::uint64_t seed = kDefaultSeed);

}  // namespace polywitt
