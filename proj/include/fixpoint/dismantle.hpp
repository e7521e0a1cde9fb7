#pragma once

#include <optional>
#include <vector>

#include "fixpoint/map_space.hpp"

namespace fixpoint {

enum class BeatKind { Down, Up };

const char* to_string(BeatKind k);

struct BeatPoint {
  Element element = 0;
  BeatKind kind = BeatKind::Down;

  friend bool operator==(const BeatPoint&, const BeatPoint&) = default;
};

/// All beat points of p in index order. A down-beat point's strict down-set
/// has a greatest element; an up-beat point's strict up-set has a least one.
/// An element carrying both kinds is listed twice, down-beat first.
std::vector<BeatPoint> beat_points(const Poset& p);

struct CoreReport {
  /// Removed elements in original indices, in removal order.
  std::vector<BeatPoint> removal_sequence;
  Poset core;
  /// Original indices of the surviving elements.
  std::vector<Element> core_elements;
  bool dismantlable = false;
};

/// Removes the smallest-index beat point until none remain.
CoreReport core(const Poset& p);

/// Replays a removal sequence, checking that each step removes a beat point
/// of the right kind. Throws VerificationFailure otherwise.
Poset replay_removals(const Poset& p, const std::vector<BeatPoint>& sequence);

struct Retraction {
  MonotoneMap section;     // s: X -> Y
  MonotoneMap retraction;  // r: Y -> X
};

/// First pair (s, r) with r s = id_X, searching embeddings s in map order and
/// completing each to a retraction by backtracking. Both posets are limited
/// to 64 elements.
std::optional<Retraction> find_retraction(const PosetPtr& y, const PosetPtr& x,
                                          std::size_t max_sections = 1'000'000);

}  // namespace fixpoint
