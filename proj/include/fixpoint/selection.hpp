#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <vector>

#include "fixpoint/fpp.hpp"

namespace fixpoint {

using MapPosetPtr = std::shared_ptr<const MapPoset>;

/// A monotone choice of a fixed point for every self-map of X, indexed by
/// the map numbering of `space`.
struct SelectionMap {
  MapPosetPtr space;
  std::vector<Element> choice;

  Element operator()(std::size_t map_index) const { return choice[map_index]; }
  const Poset& poset() const { return space->dom(); }
};

enum class SelectionStatus { Sat, Unsat, EmptyDomain };

struct SelectionResult {
  SelectionStatus status = SelectionStatus::Unsat;
  MapPosetPtr space;
  std::optional<SelectionMap> selection;
  /// EmptyDomain: the first map without a fixed point.
  std::optional<std::size_t> fixed_point_free_map;
  /// Unsat: search depth of the deepest wipe-out and the map indices whose
  /// domains were emptied there.
  std::size_t deepest_failure = 0;
  std::vector<std::size_t> wiped;
  SearchStats stats;

  bool sat() const noexcept { return status == SelectionStatus::Sat; }
};

const char* to_string(SelectionStatus s);

/// Backtracking search with forward checking. Variables are the self-maps in
/// a linear extension of the pointwise order (maps with fewer fixed points
/// first within a level); a variable's domain is its fixed-point set, and
/// every assignment narrows the domains of all larger maps to the up-set of
/// the chosen point.
SelectionResult find_selection_map(const MapPosetPtr& self_maps);
SelectionResult find_selection_map(const PosetPtr& p, MapSpaceOptions options = {});
inline SelectionResult find_selection_map(const Poset& p, MapSpaceOptions options = {}) {
  return find_selection_map(share(p), options);
}

struct SelectionViolation {
  enum class Kind { FixedPoint, Monotonicity, Shape };
  Kind kind = Kind::Shape;
  std::size_t map = 0;
  std::size_t other_map = 0;
};

/// Checks the fixed-point condition for every map, then monotonicity over
/// every comparable pair, and reports the first violation.
std::optional<SelectionViolation> verify_selection(const Poset& p, const SelectionMap& phi);

/// f -> f^n(top), or f -> f^n(bottom) with `from_top` false. Throws
/// InvalidPoset when the required extremum does not exist.
SelectionMap iterate_selection(const MapPosetPtr& self_maps, bool from_top = true);

/// p(t) = phi(f_t), checked to be a continuous family of fixed points.
FixedPointFamily criterion_family_selection(const SelectionMap& phi, const FamilyOfSelfMaps& f);

/// Supplies a fixed point of a self-map of Y, or nothing.
using FixedPointOracle = std::function<std::optional<Element>(const MonotoneMap&)>;

/// Oracle returning the smallest-index fixed point.
FixedPointOracle first_fixed_point_oracle();

/// Fixed point (x, y) of a self-map f of X x Y built from a selection map on
/// X and a fixed point oracle on Y. Throws OracleFailure if the oracle finds
/// no fixed point of the auxiliary map on Y.
std::pair<Element, Element> product_fixed_point(const SelectionMap& phi, const PosetPtr& y,
                                                const MonotoneMap& f,
                                                const FixedPointOracle& oracle);

/// Image table of the auxiliary self-map y -> pr_Y f(phi(f_{X,y}), y).
std::vector<Element> product_auxiliary_map(const SelectionMap& phi, const Poset& y,
                                           std::span<const Element> f);

/// Selection map on X x Y assembled from selection maps on both factors.
/// Throws VerificationFailure if the assembled map fails verify_selection.
SelectionMap product_selection(const SelectionMap& phi, const SelectionMap& psi,
                               MapSpaceOptions options = {});

/// phi_X(f) = r(phi_Y(s f r)) for a retraction r s = id_X.
SelectionMap transfer_selection_along_retract(const SelectionMap& phi_y, const MonotoneMap& s,
                                              const MonotoneMap& r);

/// Universal fixed point property through the selection-map criterion.
struct UniversalReport {
  bool holds = false;
  SelectionResult search;
  /// When the property fails and C(X,X) is small enough: the evaluation
  /// family, which admits no continuous family of fixed points.
  std::optional<FamilyOfSelfMaps> witness;
};

UniversalReport has_universal_fpp(const PosetPtr& p, MapSpaceOptions options = {},
                                  std::size_t witness_bound = 4096);

}  // namespace fixpoint
