#include "fixpoint/map_space.hpp"

#include <bit>

namespace fixpoint {

namespace {

std::string table_key(std::span<const Element> image) {
  std::string key(image.size(), '\0');
  for (std::size_t i = 0; i < image.size(); ++i) key[i] = static_cast<char>(image[i]);
  return key;
}

}  // namespace

bool is_monotone(const Poset& dom, const Poset& cod, std::span<const Element> image) {
  if (image.size() != dom.size()) return false;
  for (Element v : image) {
    if (v >= cod.size()) return false;
  }
  for (std::size_t x = 0; x < dom.size(); ++x) {
    for (Element y : dom.upper_covers(static_cast<Element>(x))) {
      if (!cod.leq(image[x], image[y])) return false;
    }
  }
  return true;
}

MonotoneMap::MonotoneMap(PosetPtr dom, PosetPtr cod, std::vector<Element> image)
    : dom_(std::move(dom)), cod_(std::move(cod)), image_(std::move(image)) {
  if (image_.size() != dom_->size()) {
    throw Error(ErrorCode::IndexOutOfRange, "image table length differs from domain size");
  }
  for (Element v : image_) {
    if (v >= cod_->size()) {
      throw Error(ErrorCode::IndexOutOfRange, "image value " + std::to_string(v) + " out of range");
    }
  }
  if (!is_monotone(*dom_, *cod_, image_)) throw Error(ErrorCode::NotMonotone, "map is not monotone");
}

MonotoneMap MonotoneMap::identity(const PosetPtr& p) {
  std::vector<Element> image(p->size());
  for (std::size_t i = 0; i < image.size(); ++i) image[i] = static_cast<Element>(i);
  return MonotoneMap(p, p, std::move(image));
}

MonotoneMap MonotoneMap::constant(PosetPtr dom, PosetPtr cod, Element value) {
  std::vector<Element> image(dom->size(), value);
  return MonotoneMap(std::move(dom), std::move(cod), std::move(image));
}

MonotoneMap compose(const MonotoneMap& f, const MonotoneMap& g) {
  if (!(g.cod() == f.dom())) {
    throw Error(ErrorCode::DomainMismatch, "codomain of inner map is not the domain of outer map");
  }
  std::vector<Element> image(g.dom().size());
  for (std::size_t x = 0; x < image.size(); ++x) image[x] = f(g(static_cast<Element>(x)));
  return MonotoneMap(g.dom_ptr(), f.cod_ptr(), std::move(image));
}

SubSet fixed_points(const MonotoneMap& f) {
  if (!(f.dom() == f.cod())) throw Error(ErrorCode::DomainMismatch, "fixed points need an endomap");
  SubSet fix(f.dom().size());
  for (std::size_t x = 0; x < fix.size(); ++x) {
    if (f(static_cast<Element>(x)) == x) fix.set(x);
  }
  return fix;
}

MonotoneMap MapPoset::map(std::size_t k) const {
  auto img = image(k);
  return MonotoneMap(dom_, cod_, std::vector<Element>(img.begin(), img.end()));
}

bool MapPoset::leq(std::size_t a, std::size_t b) const {
  if (!rows_.empty()) return rows_[a].test(b);
  auto fa = image(a);
  auto fb = image(b);
  for (std::size_t x = 0; x < width_; ++x) {
    if (!cod_->leq(fa[x], fb[x])) return false;
  }
  return true;
}

SubSet MapPoset::successors(std::size_t a) const {
  if (!rows_.empty()) return rows_[a];
  SubSet row(count_);
  for (std::size_t b = 0; b < count_; ++b) {
    if (leq(a, b)) row.set(b);
  }
  return row;
}

std::optional<std::size_t> MapPoset::index_of(std::span<const Element> image) const {
  auto it = index_.find(table_key(image));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

Poset MapPoset::as_poset() const {
  std::vector<SubSet> up;
  up.reserve(count_);
  for (std::size_t a = 0; a < count_; ++a) up.push_back(successors(a));
  return Poset::from_relation(std::move(up));
}

bool for_each_monotone_map(const Poset& dom, const Poset& cod,
                           const std::function<bool(std::span<const Element>)>& visit) {
  if (!cod.has_masks()) throw_size_limit("codomain size", cod.size(), kMaskWidth);
  const std::size_t n = dom.size();
  const auto& order = dom.linear_extension();
  std::vector<Element> image(n, 0);
  auto recurse = [&](auto&& self, std::size_t k) -> bool {
    if (k == n) return visit(std::span<const Element>(image));
    const Element x = order[k];
    std::uint64_t candidates = cod.full_mask();
    for (Element y : dom.lower_covers(x)) candidates &= cod.up_mask(image[y]);
    while (candidates) {
      image[x] = static_cast<Element>(std::countr_zero(candidates));
      candidates &= candidates - 1;
      if (!self(self, k + 1)) return false;
    }
    return true;
  };
  return recurse(recurse, 0);
}

MapPoset enumerate_maps(PosetPtr dom, PosetPtr cod, MapSpaceOptions options) {
  if (!cod->has_masks()) throw_size_limit("codomain size", cod->size(), kMaskWidth);
  MapPoset space;
  space.dom_ = std::move(dom);
  space.cod_ = std::move(cod);
  const Poset& d = *space.dom_;
  const Poset& c = *space.cod_;
  const std::size_t n = d.size();
  space.width_ = n;

  std::vector<Element> tables;
  for_each_monotone_map(d, c, [&](std::span<const Element> image) {
    if (space.count_ >= options.max_maps) {
      throw_size_limit("monotone map count", space.count_ + 1, options.max_maps);
    }
    tables.insert(tables.end(), image.begin(), image.end());
    ++space.count_;
    return true;
  });
  space.tables_ = std::move(tables);

  for (std::size_t k = 0; k < space.count_; ++k) space.index_.emplace(table_key(space.image(k)), k);

  if (space.count_ <= options.eager_order_bound && space.count_ > 0) {
    // at_least[x][v] = maps whose value at x lies above v; a row is the
    // intersection of these sets over all coordinates.
    const std::size_t m = space.count_;
    std::vector<std::vector<SubSet>> at_value(n, std::vector<SubSet>(c.size(), SubSet(m)));
    for (std::size_t k = 0; k < m; ++k) {
      auto img = space.image(k);
      for (std::size_t x = 0; x < n; ++x) at_value[x][img[x]].set(k);
    }
    std::vector<std::vector<SubSet>> at_least(n, std::vector<SubSet>(c.size(), SubSet(m)));
    for (std::size_t x = 0; x < n; ++x) {
      for (std::size_t v = 0; v < c.size(); ++v) {
        const SubSet& above = c.up_set(static_cast<Element>(v));
        for (auto w = above.find_first(); w != SubSet::npos; w = above.find_next(w)) {
          at_least[x][v] |= at_value[x][w];
        }
      }
    }
    space.rows_.reserve(m);
    for (std::size_t k = 0; k < m; ++k) {
      SubSet row(m);
      row.set();
      auto img = space.image(k);
      for (std::size_t x = 0; x < n; ++x) row &= at_least[x][img[x]];
      space.rows_.push_back(std::move(row));
    }
  }
  return space;
}

EvaluationCheck evaluation_is_monotone(const MapPoset& space) {
  const Poset& p = space.cod();
  EvaluationCheck result;
  if (!(space.dom() == p)) throw Error(ErrorCode::DomainMismatch, "evaluation needs self-maps");
  for (std::size_t a = 0; a < space.size(); ++a) {
    const SubSet succ = space.successors(a);
    auto fa = space.image(a);
    for (auto b = succ.find_first(); b != SubSet::npos; b = succ.find_next(b)) {
      auto fb = space.image(b);
      for (std::size_t x = 0; x < p.size(); ++x) {
        const SubSet& ups = p.up_set(static_cast<Element>(x));
        for (auto y = ups.find_first(); y != SubSet::npos; y = ups.find_next(y)) {
          if (!p.leq(fa[x], fb[y])) {
            result.monotone = false;
            result.violation = std::array<std::size_t, 4>{a, x, b, y};
            return result;
          }
        }
      }
    }
  }
  return result;
}

}  // namespace fixpoint
