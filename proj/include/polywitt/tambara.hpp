#pragma once

// Z/2-Tambara functors: a ring A with involution (the underlying level), a ring
// B (the fixed level), and restriction, transfer and norm between them.

#include <functional>
#include <map>
#include <shared_mutex>
#include <string>
#include <variant>

#include "polywitt/burnside.hpp"
#include "polywitt/polymap.hpp"
#include "polywitt/witt.hpp"

namespace polywitt {

struct Z2Tambara {
  using Map = std::function<Element(const Element&)>;

  std::string name;
  RingHandle A;
  RingHandle B;
  Involution tau;
  Map res;   // B -> A
  Map tr;    // A -> B
  Map norm;  // A -> B

  Element restrict(const Element& b) const { return res(b); }
  Element transfer(const Element& a) const { return tr(a); }
  Element N(const Element& a) const { return norm(a); }
  Element involution(const Element& a) const { return tau(a); }

  /// The norm as a multiplicative polynomial map of degree 2.
  PolyMap norm_map() const;
};

struct NamedCheck {
  std::string name;
  CheckResult result;
};

struct TambaraReport {
  std::vector<NamedCheck> checks;
  bool passed() const;
  /// First failing check, if any.
  const NamedCheck* failure() const;
};

/// Every Z2Tambara invariant on sampled elements.
TambaraReport check_tambara(const Z2Tambara& t, std::size_t samples = 500, std::uint64_t seed = kDefaultSeed);
/// N(res(b)) = b^2 on samples and tr(1) = 2.
bool is_cohomological(const Z2Tambara& t, std::size_t samples = 200, std::uint64_t seed = kDefaultSeed);

/// B is the fixed subring, res the inclusion, tr(a) = a + tau(a), N(a) = a tau(a).
Z2Tambara from_involution_ring(const RingHandle& a, const Involution& tau);

/// The Burnside Tambara functor of an index-2 inclusion H <= G; g is any element outside H.
Z2Tambara burnside_pair(const Inclusion& inclusion, GroupElement g);
/// Level 0 is e <= Z/2; level j >= 1 is C_{p^j} <= D_{p^j}.
Z2Tambara burnside_tambara(unsigned p, unsigned j);

/// W_m(T): Witt vectors levelwise, the norm lifted, the transfer by reciprocity.
Z2Tambara witt_tambara(const Z2Tambara& t, unsigned p, std::size_t m);
/// Ghost maps of W_m(T) commute with tau, res, tr and N, on samples.
TambaraReport witt_ghost_check(const Z2Tambara& t, const Z2Tambara& w, unsigned p, std::size_t m,
                               std::size_t samples = 500, std::uint64_t seed = kDefaultSeed);

/// A morphism of Z2Tambara functors: ring maps on each level.
struct TambaraMorphism {
  Z2Tambara::Map alpha;  // A -> A'
  Z2Tambara::Map beta;   // B -> B'
};
/// Compatibility with tau, res, tr and N, on samples.
TambaraReport check_morphism(const Z2Tambara& source, const Z2Tambara& target, const TambaraMorphism& f,
                             std::size_t samples = 500, std::uint64_t seed = kDefaultSeed);

/// sum_i (1 + ((p^i - 1)/2) tr(1)) x_i N(res(x_i))^((p^(j-i) - 1)/2), for x over B.
Element twisted_ghost(const Z2Tambara& t, unsigned p, std::size_t j, std::span<const Element> x);

/// Twisted ghost equations have no solution at coordinate j.
struct NotSolvable {
  std::size_t j = 0;
  Element residue;
  std::string detail;
};

enum class TwistedOp { Add, Mul, Neg };

/// Ring structure on B^length making every twisted ghost map a ring map.
/// Solved results are memoized; the cache is filled by one writer at a time.
class TwistedWittRing final : public Ring {
 public:
  TwistedWittRing(Z2Tambara base, unsigned p, std::size_t length);

  RingKind kind() const override { return RingKind::TwistedWitt; }
  std::string name() const override;
  const Z2Tambara& base() const { return base_; }
  unsigned prime() const { return p_; }
  std::size_t length() const { return length_; }
  /// 1 + ((p^j - 1)/2) tr(1), the coefficient of x_j in the j-th twisted ghost.
  const Element& leading(std::size_t j) const { return leading_[j]; }

  /// Solves w~_j(result) = w~_j(u) op w~_j(v) coordinate by coordinate.
  std::variant<std::vector<Element>, NotSolvable> solve(TwistedOp op, std::span<const Element> u,
                                                         std::span<const Element> v, bool use_cache = true) const;
  std::vector<Element> ghost(std::span<const Element> x) const;

  Element zero() const override;
  Element one() const override;
  Element add(const Element& a, const Element& b) const override;
  Element neg(const Element& a) const override;
  Element mul(const Element& a, const Element& b) const override;
  Tristate p_torsion_free(unsigned) const override { return Tristate::Unknown; }
  Element sample(Sampler& sampler) const override;
  std::string format(const Element& a) const override;

  Element wrap(std::vector<Element> coords) const;
  const std::vector<Element>& unwrap(const Element& a) const;

 private:
  std::vector<Element> solved_or_throw(TwistedOp op, std::span<const Element> u, std::span<const Element> v) const;

  Z2Tambara base_;
  unsigned p_;
  std::size_t length_;
  std::vector<Element> leading_;

  mutable std::shared_mutex cache_mutex_;
  mutable std::map<std::string, std::vector<Element>> cache_;
};

/// Checks that each twisted ghost map is additive, multiplicative and unital on samples.
CheckResult twisted_ghost_homomorphism_check(const TwistedWittRing& w, std::size_t samples, Sampler& sampler);

/// Over D_{p^n}: res to Z/2 of sum_i tr N(x_i) equals the twisted ghost of the Z/2 Burnside Tambara functor.
CheckResult psi_check(unsigned p, unsigned n, std::size_t samples = 200, std::uint64_t seed = kDefaultSeed);

}  // namespace polywitt
