#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "fixpoint/poset.hpp"

namespace fixpoint {

using PosetPtr = std::shared_ptr<const Poset>;

inline PosetPtr share(Poset p) { return std::make_shared<const Poset>(std::move(p)); }

bool is_monotone(const Poset& dom, const Poset& cod, std::span<const Element> image);

/// An order-preserving map, stored as its image table.
class MonotoneMap {
 public:
  /// Throws NotMonotone or IndexOutOfRange when the table is not a monotone
  /// map dom -> cod.
  MonotoneMap(PosetPtr dom, PosetPtr cod, std::vector<Element> image);

  static MonotoneMap identity(const PosetPtr& p);
  static MonotoneMap constant(PosetPtr dom, PosetPtr cod, Element value);

  Element operator()(Element x) const { return image_[x]; }
  const std::vector<Element>& image() const noexcept { return image_; }
  const Poset& dom() const noexcept { return *dom_; }
  const Poset& cod() const noexcept { return *cod_; }
  const PosetPtr& dom_ptr() const noexcept { return dom_; }
  const PosetPtr& cod_ptr() const noexcept { return cod_; }

  friend bool operator==(const MonotoneMap& a, const MonotoneMap& b) {
    return a.image_ == b.image_ && *a.dom_ == *b.dom_ && *a.cod_ == *b.cod_;
  }

 private:
  PosetPtr dom_;
  PosetPtr cod_;
  std::vector<Element> image_;
};

/// x -> f(g(x)). Throws DomainMismatch unless g's codomain is f's domain.
MonotoneMap compose(const MonotoneMap& f, const MonotoneMap& g);

/// Fixed points of an endomap. Throws DomainMismatch for non-endomaps.
SubSet fixed_points(const MonotoneMap& f);

struct MapSpaceOptions {
  /// Enumeration aborts with SizeLimit as soon as this many maps are exceeded.
  std::size_t max_maps = 250000;
  /// Up to this many maps the pointwise order is materialised as bit rows.
  std::size_t eager_order_bound = 20000;
};

/// The finite mapping space C(dom, cod) ordered pointwise.
///
/// Maps are numbered in lexicographic order of their image tables read along
/// dom's linear extension, so indices are stable across runs.
class MapPoset {
 public:
  const Poset& dom() const noexcept { return *dom_; }
  const Poset& cod() const noexcept { return *cod_; }
  const PosetPtr& dom_ptr() const noexcept { return dom_; }
  const PosetPtr& cod_ptr() const noexcept { return cod_; }

  std::size_t size() const noexcept { return count_; }

  std::span<const Element> image(std::size_t k) const {
    return {tables_.data() + k * width_, width_};
  }
  MonotoneMap map(std::size_t k) const;

  /// Pointwise order: maps[a][x] <= maps[b][x] for every x.
  bool leq(std::size_t a, std::size_t b) const;

  /// Every b with a <= b (including a).
  SubSet successors(std::size_t a) const;

  bool order_materialised() const noexcept { return !rows_.empty() || count_ == 0; }

  std::optional<std::size_t> index_of(std::span<const Element> image) const;

  /// The pointwise order as a Poset on the map indices.
  Poset as_poset() const;

 private:
  friend MapPoset enumerate_maps(PosetPtr dom, PosetPtr cod, MapSpaceOptions options);

  PosetPtr dom_;
  PosetPtr cod_;
  std::size_t width_ = 0;
  std::size_t count_ = 0;
  std::vector<Element> tables_;
  std::vector<SubSet> rows_;
  std::unordered_map<std::string, std::size_t> index_;
};

/// Visits every monotone image table dom -> cod in enumeration order. Stops
/// early, returning false, as soon as `visit` returns false.
bool for_each_monotone_map(const Poset& dom, const Poset& cod,
                           const std::function<bool(std::span<const Element>)>& visit);

/// Every monotone map dom -> cod by backtracking along dom's linear extension;
/// candidate images for an element must dominate the images of its lower
/// covers. Codomains are limited to 64 elements.
MapPoset enumerate_maps(PosetPtr dom, PosetPtr cod, MapSpaceOptions options = {});

inline MapPoset enumerate_maps(const Poset& dom, const Poset& cod, MapSpaceOptions options = {}) {
  return enumerate_maps(share(dom), share(cod), options);
}

struct EvaluationCheck {
  bool monotone = true;
  /// On failure: map a, point x, map b, point y with (a,x) <= (b,y) but
  /// a(x) not <= b(y).
  std::optional<std::array<std::size_t, 4>> violation;
};

/// Checks that (f, x) -> f(x) is monotone on C(P,P) x P.
EvaluationCheck evaluation_is_monotone(const MapPoset& space);

}  // namespace fixpoint
