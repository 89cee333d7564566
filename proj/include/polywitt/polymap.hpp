#pragma once

// Multiplicative polynomial maps between rings: cross-effects, sampled degree
// tests, homogeneous decomposition, composition and p-power congruences.

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "polywitt/rings.hpp"

namespace polywitt {

class PolyMap {
 public:
  using Eval = std::function<Element(const Element&)>;

  PolyMap() = default;
  PolyMap(RingHandle domain, RingHandle codomain, Eval eval, unsigned degree_bound, bool multiplicative,
          std::string name = "f");

  /// Evaluates f; the argument must belong to the domain and the value to the codomain.
  Element operator()(const Element& a) const;

  const RingHandle& domain() const { return domain_; }
  const RingHandle& codomain() const { return codomain_; }
  unsigned degree_bound() const { return degree_; }
  bool multiplicative() const { return multiplicative_; }
  const std::string& name() const { return name_; }
  bool valid() const { return static_cast<bool>(eval_); }

 private:
  RingHandle domain_;
  RingHandle codomain_;
  Eval eval_;
  unsigned degree_ = 0;
  bool multiplicative_ = false;
  std::string name_;
};

/// Outcome of a sampled or exhaustive check. A failing check always names a witness.
struct CheckResult {
  bool passed = true;
  std::size_t checked = 0;
  std::vector<Element> witness;
  std::string detail;

  explicit operator bool() const { return passed; }
  static CheckResult fail(std::vector<Element> witness, std::string detail, std::size_t checked = 0) {
    return CheckResult{false, checked, std::move(witness), std::move(detail)};
  }
};

/// Sum over subsets U of {1..k} of (-1)^(k-|U|) f(sum of a_l, l in U).
Element cross_effect(const PolyMap& f, std::span<const Element> args);
/// cr_k f evaluated on k copies of a.
Element diagonal_cross_effect(const PolyMap& f, unsigned k, const Element& a);

CheckResult degree_test(const PolyMap& f, unsigned n, std::size_t samples, Sampler& sampler);
CheckResult multiplicativity_test(const PolyMap& f, std::size_t samples, Sampler& sampler);

/// Pieces phi_0..phi_n with f = sum phi_k and phi_k k-homogeneous. Requires 1..n
/// invertible in the codomain.
std::vector<PolyMap> homogeneous_decompose(const PolyMap& f, std::size_t degree_samples = 50,
                                           std::uint64_t seed = kDefaultSeed);

PolyMap compose(const PolyMap& g, const PolyMap& f);
/// Pointwise product; degree bound is the sum of the bounds.
PolyMap product(const PolyMap& f, const PolyMap& g);
/// Pointwise sum; never multiplicative.
PolyMap sum(const PolyMap& f, const PolyMap& g);

/// Right-hand correction sum of the p^k congruence at (a, c).
Element congruence_correction(const PolyMap& f, unsigned p, unsigned k, const Element& a, const Element& c);
CheckResult congruence_check_at(const PolyMap& f, unsigned p, unsigned k, const Element& a, const Element& c);
CheckResult congruence_check(const PolyMap& f, unsigned p, unsigned k, std::size_t samples, Sampler& sampler);

// Built-in maps.
PolyMap identity_map(const RingHandle& ring);
PolyMap power_map(const RingHandle& ring, unsigned n);
/// Ring homomorphism out of Z: the structure map.
PolyMap structure_map(const RingHandle& codomain);
/// Ring homomorphism determined by images of the basis (free-rank domain) or
/// of the variables (polynomial domain). Images are trusted; tests verify them.
PolyMap homomorphism(const RingHandle& domain, const RingHandle& codomain, std::vector<Element> images,
                     std::string name = "h");
/// f followed by the coefficient change of a free-rank codomain into its localization.
PolyMap localize_codomain(const PolyMap& f, unsigned prime);

}  // namespace polywitt
