#pragma once

#include <boost/dynamic_bitset.hpp>

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "fixpoint/error.hpp"

namespace fixpoint {

/// Membership mask over the elements of a poset or finite space.
using SubSet = boost::dynamic_bitset<>;

using Cover = std::pair<Element, Element>;

/// Largest poset for which the 64-bit mask views are available.
inline constexpr std::size_t kMaskWidth = 64;

/// A finite partial order on the indices 0..n-1.
///
/// The relation is stored as both up-sets and down-sets; for posets with at
/// most 64 elements the same rows are also kept as 64-bit masks, which the
/// search routines use in their inner loops. Instances are immutable.
class Poset {
 public:
  Poset() = default;

  /// Builds a poset from its full relation. `up[i]` holds every j with i <= j.
  /// Throws InvalidPoset unless the relation is reflexive, antisymmetric and
  /// transitive.
  static Poset from_relation(std::vector<SubSet> up, std::vector<std::string> labels = {});

  /// Reflexive-transitive closure of a cover list (low, high).
  static Poset from_covers(std::size_t n, std::span<const Cover> covers,
                           std::vector<std::string> labels = {});

  static Poset chain(std::size_t n);
  static Poset antichain(std::size_t n);

  std::size_t size() const noexcept { return up_.size(); }
  bool empty() const noexcept { return up_.empty(); }

  bool leq(Element i, Element j) const { return up_[i].test(j); }
  bool less(Element i, Element j) const { return i != j && up_[i].test(j); }
  bool comparable(Element i, Element j) const { return leq(i, j) || leq(j, i); }

  const SubSet& up_set(Element i) const { return up_[i]; }
  const SubSet& down_set(Element i) const { return down_[i]; }

  bool has_masks() const noexcept { return size() <= kMaskWidth; }
  std::uint64_t up_mask(Element i) const { return up_masks_[i]; }
  std::uint64_t down_mask(Element i) const { return down_masks_[i]; }
  std::uint64_t full_mask() const noexcept {
    return size() == kMaskWidth ? ~std::uint64_t{0} : (std::uint64_t{1} << size()) - 1;
  }

  const std::vector<Element>& lower_covers(Element i) const { return lower_covers_[i]; }
  const std::vector<Element>& upper_covers(Element i) const { return upper_covers_[i]; }
  std::vector<Cover> covers() const;

  /// Deterministic linear extension: repeatedly take the smallest-index
  /// element whose predecessors are all placed.
  const std::vector<Element>& linear_extension() const noexcept { return linear_extension_; }

  /// Number of elements comparable to i, excluding i.
  std::size_t comparability_degree(Element i) const {
    return up_[i].count() + down_[i].count() - 2;
  }

  const std::vector<std::string>& labels() const noexcept { return labels_; }
  std::string label(Element i) const;

  /// Greatest / least element if one exists.
  std::optional<Element> top() const;
  std::optional<Element> bottom() const;

  /// Same ground set and relation; labels are not compared.
  friend bool operator==(const Poset& a, const Poset& b) { return a.up_ == b.up_; }

 private:
  void finish();

  std::vector<SubSet> up_;
  std::vector<SubSet> down_;
  std::vector<std::uint64_t> up_masks_;
  std::vector<std::uint64_t> down_masks_;
  std::vector<std::vector<Element>> lower_covers_;
  std::vector<std::vector<Element>> upper_covers_;
  std::vector<Element> linear_extension_;
  std::vector<std::string> labels_;
};

/// A finite topological space given by its complete list of open sets.
struct FiniteSpace {
  std::size_t n = 0;
  std::vector<SubSet> opens;

  /// Throws InvalidSpace unless the opens contain the empty and full sets and
  /// are closed under pairwise union and intersection.
  void validate() const;
};

/// Down-set of x, the smallest open set containing x.
SubSet min_open_nbhd(const Poset& p, Element x);

bool is_open(const Poset& p, const SubSet& u);

struct SpaceOptions {
  std::size_t max_n = 20;
};

/// The Kolmogorov topology of p: every down-closed subset, listed in a
/// deterministic order.
FiniteSpace to_space(const Poset& p, SpaceOptions options = {});

/// Specialization order i <= j iff U(i) is contained in U(j).
/// Throws NotKolmogorov with the first pair of distinct points whose minimal
/// neighbourhoods coincide.
Poset specialization_poset(const FiniteSpace& s);

/// For two topologically indistinguishable points x, x' returns the
/// fixed-point-free continuous self-map sending x to x' and everything else to x.
std::vector<Element> t0_witness_map(const FiniteSpace& s, Element x, Element x_prime);

struct ProductOptions {
  std::size_t max_size = 4096;
};

/// Product order; pair (p, q) is element p * q_size + q.
Poset product(const Poset& p, const Poset& q, ProductOptions options = {});

Poset dual(const Poset& p);

/// Subposet on the elements of `keep`, re-indexed in increasing order.
Poset induced(const Poset& p, const SubSet& keep);

/// Components of the comparability graph; component ids are assigned in
/// order of smallest member.
std::vector<std::size_t> components(const Poset& p);
bool is_connected(const Poset& p);

struct CanonicalOptions {
  std::size_t max_n = 10;
};

/// Byte string identifying the isomorphism class of p. Exact: the minimum
/// relation encoding over every relabeling that respects the colour classes
/// of an iterated (down-degree, up-degree) refinement.
std::string canonical_form(const Poset& p, CanonicalOptions options = {});

/// Relabeling perm with perm[i] = position of element i in the canonical
/// ordering, as found by canonical_form.
std::vector<Element> canonical_labeling(const Poset& p, CanonicalOptions options = {});

std::string to_hex(const std::string& bytes);

}  // namespace fixpoint
