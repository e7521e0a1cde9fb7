#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "fixpoint/map_space.hpp"

namespace fixpoint {

struct SearchStats {
  std::uint64_t nodes = 0;
  double elapsed_ms = 0.0;
};

/// Outcome of the fixed point property decision. When `holds` is false the
/// witness is a monotone self-map without fixed points.
struct FppReport {
  bool holds = true;
  std::optional<MonotoneMap> witness;
  SearchStats stats;
};

FppReport has_fpp(const PosetPtr& p);
inline FppReport has_fpp(const Poset& p) { return has_fpp(share(p)); }

/// Same decision by filtering the complete mapping space; used as an oracle.
bool has_fpp_by_enumeration(const MapPoset& self_maps);

/// A continuous family T x X -> X, tabulated at t * |X| + x.
class FamilyOfSelfMaps {
 public:
  /// Throws NotMonotone unless the table is monotone on the product order.
  FamilyOfSelfMaps(PosetPtr t, PosetPtr x, std::vector<Element> table);

  const Poset& params() const noexcept { return *t_; }
  const Poset& space() const noexcept { return *x_; }
  const PosetPtr& params_ptr() const noexcept { return t_; }
  const PosetPtr& space_ptr() const noexcept { return x_; }
  const std::vector<Element>& table() const noexcept { return table_; }

  Element operator()(Element t, Element x) const { return table_[t * x_->size() + x]; }

  /// Image table of the self-map x -> f(t, x).
  std::vector<Element> slice(Element t) const;

 private:
  PosetPtr t_;
  PosetPtr x_;
  std::vector<Element> table_;
};

/// Image table p: T -> X.
using FixedPointFamily = std::vector<Element>;

bool is_fixed_point_family(const FamilyOfSelfMaps& f, const FixedPointFamily& p);

/// First continuous family of fixed points in enumeration order, if any.
std::optional<FixedPointFamily> find_fixed_point_family(const FamilyOfSelfMaps& f);

/// All continuous families of fixed points, in map-space order.
std::vector<FixedPointFamily> all_fixed_point_families(const FamilyOfSelfMaps& f);

struct FppWrtReport {
  bool holds = true;
  /// A family admitting no continuous family of fixed points.
  std::optional<FamilyOfSelfMaps> witness;
  std::uint64_t families_checked = 0;
};

/// Fixed point property of X with respect to T, by testing each monotone
/// family T x X -> X as it is generated.
FppWrtReport fpp_with_respect_to(const PosetPtr& x, const PosetPtr& t);

/// The self-map p -> (t -> f(t, p(t))) of C(T, X).
struct MapSpaceSelfMap {
  MapPoset space;
  std::vector<std::size_t> image;

  /// The same map as a MonotoneMap on the pointwise-order poset of `space`.
  MonotoneMap as_monotone_map() const;
  std::vector<std::size_t> fixed_points() const;
};

/// Builds the induced self-map of C(T, X) and checks that its fixed points
/// are exactly the continuous families of fixed points of f.
MapSpaceSelfMap family_to_selfmap_on_mapspace(const FamilyOfSelfMaps& f,
                                              MapSpaceOptions options = {});

/// How many self-maps of C(T, X) arise from some family, out of all of them.
struct MapSpaceFormCount {
  std::size_t induced = 0;
  std::size_t total = 0;
};

MapSpaceFormCount mapspace_form_fraction(const PosetPtr& t, const PosetPtr& x);

/// The evaluation family C(X,X) x X -> X over the pointwise-order poset.
FamilyOfSelfMaps evaluation_family(const MapPoset& self_maps);

}  // namespace fixpoint
