#pragma once

// Burnside rings of small finite groups through their tables of marks.
//
// Groups have at most 54 elements, so a subgroup is a 64-bit mask over
// element indices (index 0 is the identity). Conjugacy classes of subgroups
// are sorted by order, then by sorted element list; marks[H][K] = |(G/H)^K|
// is lower-triangular in that order. The Burnside ring itself is a
// FreeRankRing whose basis lists [G/G] = 1 first, i.e. the classes in
// reverse order.

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "polywitt/polymap.hpp"
#include "polywitt/rings.hpp"

namespace polywitt {

using Mask = std::uint64_t;
using GroupElement = std::uint8_t;

class FiniteGroup {
 public:
  static constexpr std::size_t kMaxOrder = 54;

  /// table[a][b] = a*b. Checked to be a group with identity 0.
  static std::shared_ptr<const FiniteGroup> from_table(std::string name, std::vector<std::vector<GroupElement>> table,
                                                       std::map<unsigned, std::string> subgroup_names = {});
  static std::shared_ptr<const FiniteGroup> from_permutations(std::string name,
                                                              const std::vector<std::vector<unsigned>>& generators,
                                                              std::map<unsigned, std::string> subgroup_names = {});
  static std::shared_ptr<const FiniteGroup> trivial();
  static std::shared_ptr<const FiniteGroup> cyclic(unsigned n);
  /// Order 2n; element r^i s^e has index i + n*e, so r = 1 and s = n.
  static std::shared_ptr<const FiniteGroup> dihedral(unsigned n);
  static std::shared_ptr<const FiniteGroup> alternating(unsigned n);
  static std::shared_ptr<const FiniteGroup> symmetric(unsigned n);
  /// "e", "Z/2", "C5", "D9", "A4", "S3", ...
  static std::shared_ptr<const FiniteGroup> by_name(const std::string& name);

  const std::string& name() const { return name_; }
  std::size_t order() const { return table_.size(); }
  GroupElement mul(GroupElement a, GroupElement b) const { return table_[a][b]; }
  GroupElement inv(GroupElement a) const { return inverse_[a]; }
  GroupElement conj(GroupElement g, GroupElement x) const { return mul(mul(g, x), inv(g)); }
  unsigned element_order(GroupElement a) const;
  Mask all() const { return order() == 64 ? ~Mask(0) : ((Mask(1) << order()) - 1); }
  const std::vector<GroupElement>& generators() const { return generators_; }

  Mask closure(Mask generators) const;
  bool is_subgroup(Mask m) const;
  Mask conjugate(Mask m, GroupElement g) const;
  /// g m g^-1 == m
  bool normalizes(GroupElement g, Mask m) const { return conjugate(m, g) == m; }
  std::string subgroup_name(Mask m) const;

  /// The subgroup as a group in its own right; embedding[i] is the index in this group.
  std::shared_ptr<const FiniteGroup> subgroup(Mask m, std::string name, std::vector<GroupElement>& embedding) const;

 private:
  FiniteGroup() = default;

  std::string name_;
  std::vector<std::vector<GroupElement>> table_;
  std::vector<GroupElement> inverse_;
  std::vector<GroupElement> generators_;
  std::map<unsigned, std::string> subgroup_names_;
};

std::vector<GroupElement> mask_elements(Mask m);
/// Order by size, then by sorted element list.
bool mask_less(Mask a, Mask b);

class SubgroupLattice {
 public:
  explicit SubgroupLattice(std::shared_ptr<const FiniteGroup> group);

  const FiniteGroup& group() const { return *group_; }
  const std::shared_ptr<const FiniteGroup>& group_handle() const { return group_; }
  std::size_t size() const { return reps_.size(); }
  Mask representative(std::size_t c) const { return reps_[c]; }
  std::size_t class_size(std::size_t c) const { return class_sizes_[c]; }
  unsigned subgroup_order(std::size_t c) const;
  const std::string& class_name(std::size_t c) const { return names_[c]; }
  std::size_t classify(Mask subgroup) const;
  /// Some conjugate of class a lies in class b.
  bool subconjugate(std::size_t a, std::size_t b) const;
  std::size_t subgroup_count() const { return canonical_.size(); }

 private:
  std::shared_ptr<const FiniteGroup> group_;
  std::vector<Mask> reps_;
  std::vector<std::size_t> class_sizes_;
  std::vector<std::string> names_;
  std::map<Mask, std::size_t> canonical_;  // every subgroup -> class
};

class BurnsideRing {
 public:
  static std::shared_ptr<const BurnsideRing> create(std::shared_ptr<const FiniteGroup> group);

  const FiniteGroup& group() const { return lattice_.group(); }
  const std::shared_ptr<const FiniteGroup>& group_handle() const { return lattice_.group_handle(); }
  const SubgroupLattice& lattice() const { return lattice_; }
  const std::shared_ptr<const FreeRankRing>& ring() const { return ring_; }
  std::size_t classes() const { return lattice_.size(); }

  /// |(G/H_h)^{H_k}| for class indices h, k.
  const Integer& mark(std::size_t h, std::size_t k) const { return marks_[h][k]; }
  const std::vector<std::vector<Integer>>& marks() const { return marks_; }

  std::size_t basis_index(std::size_t c) const { return classes() - 1 - c; }
  /// The transitive G-set [G/H] for class c, or for an arbitrary subgroup.
  Element transitive(std::size_t c) const { return ring_->basis_element(basis_index(c)); }
  Element coset_space(Mask subgroup) const { return transitive(lattice_.classify(subgroup)); }
  /// Coefficient of [G/H_c].
  Integer coefficient(const Element& x, std::size_t c) const;
  std::vector<Integer> coefficients(const Element& x) const;  // by class
  Element from_coefficients(const std::vector<Integer>& by_class) const;

  /// Mark vector indexed by class.
  std::vector<Integer> marks_of(const Element& x) const;
  Integer mark_at(const Element& x, Mask subgroup) const { return marks_of(x)[lattice_.classify(subgroup)]; }
  std::optional<Element> try_from_marks(const std::vector<Integer>& marks) const;
  Element from_marks(const std::vector<Integer>& marks) const;

  /// Elements with every coefficient non-negative are genuine G-sets.
  bool is_genuine(const Element& x) const;
  /// Same group structure, possibly a different ring object: move by coefficients.
  Element transport(const Element& x) const;

 private:
  explicit BurnsideRing(std::shared_ptr<const FiniteGroup> group) : lattice_(std::move(group)) {}

  SubgroupLattice lattice_;
  std::vector<std::vector<Integer>> marks_;
  std::shared_ptr<const FreeRankRing> ring_;
};

using BurnsideHandle = std::shared_ptr<const BurnsideRing>;

enum class NormRoute { Auto, Marks, BruteForce, Interpolation };

/// H <= G with both Burnside rings; embedding maps H's elements into G.
class Inclusion {
 public:
  /// Builds H from a subgroup mask of the big group.
  static Inclusion of_subgroup(const BurnsideHandle& big, Mask subgroup, std::string name = {});
  Inclusion(BurnsideHandle small, BurnsideHandle big, std::vector<GroupElement> embedding);

  const BurnsideHandle& small() const { return small_; }
  const BurnsideHandle& big() const { return big_; }
  const std::vector<GroupElement>& embedding() const { return embedding_; }
  Mask image() const { return image_; }
  std::size_t index() const { return big_->group().order() / small_->group().order(); }
  /// Mask in G of a subgroup of H given as a mask in H.
  Mask push(Mask in_small) const;
  /// Mask in H of the part of a G-subgroup lying in H.
  Mask pull(Mask in_big) const;
  /// Right coset representatives of H in G: G is the disjoint union of H t.
  std::vector<GroupElement> right_cosets() const;
  /// Double coset representatives H g K.
  std::vector<GroupElement> double_cosets(Mask k) const;

  Element restrict(const Element& x) const;
  Element transfer(const Element& y) const;
  Element norm(const Element& y, NormRoute route = NormRoute::Auto) const;
  /// Conjugation by g, which must normalize H: automorphism of A(H).
  Element conjugate(const Element& y, GroupElement g) const;

 private:
  Element norm_by_marks(const Element& y) const;
  Element norm_brute_force(const Element& y) const;
  Element norm_interpolated(const Element& y) const;

  BurnsideHandle small_;
  BurnsideHandle big_;
  std::vector<GroupElement> embedding_;
  Mask image_ = 0;

  struct InterpolationCache {
    std::mutex mutex;
    bool built = false;
    std::vector<std::pair<std::vector<unsigned>, std::vector<Integer>>> coefficients;  // multi-index, A(G) coeffs
  };
  std::shared_ptr<InterpolationCache> interpolation_ = std::make_shared<InterpolationCache>();
};

/// Brute-force norm on explicit genuine sets, or interpolation: index at most this.
inline constexpr std::size_t kMaxEnumerationIndex = 6;

/// The norm as a polynomial map A(H) -> A(G) of degree [G:H].
PolyMap norm_map(const Inclusion& inclusion, NormRoute route = NormRoute::Auto);
/// Z -> A(G): the norm from the trivial subgroup, evaluated on integers.
PolyMap integer_norm_map(const BurnsideHandle& big, NormRoute route = NormRoute::Auto);

/// All units of A(G); requires at most 16 classes.
std::vector<Element> burnside_units(const BurnsideRing& a);

/// Explicit finite H-set for a genuine element: action[h][point].
std::vector<std::vector<unsigned>> explicit_set(const BurnsideRing& a, const Element& x);

}  // namespace polywitt
