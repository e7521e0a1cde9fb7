#include "fixpoint/fpp.hpp"

#include <bit>
#include <chrono>
#include <set>

namespace fixpoint {

namespace {

// Linear extension that prefers high comparability degree among the ready
// elements; ties go to the smaller index.
std::vector<Element> degree_first_extension(const Poset& p) {
  const std::size_t n = p.size();
  std::vector<std::size_t> pending(n);
  std::set<std::pair<long, Element>> ready;
  for (std::size_t i = 0; i < n; ++i) {
    pending[i] = p.lower_covers(static_cast<Element>(i)).size();
    if (pending[i] == 0) {
      ready.emplace(-static_cast<long>(p.comparability_degree(static_cast<Element>(i))),
                    static_cast<Element>(i));
    }
  }
  std::vector<Element> order;
  order.reserve(n);
  while (!ready.empty()) {
    const Element v = ready.begin()->second;
    ready.erase(ready.begin());
    order.push_back(v);
    for (Element w : p.upper_covers(v)) {
      if (--pending[w] == 0) {
        ready.emplace(-static_cast<long>(p.comparability_degree(w)), w);
      }
    }
  }
  return order;
}

std::optional<std::vector<Element>> disconnected_witness(const Poset& p) {
  const auto comp = components(p);
  std::optional<Element> first_other;
  for (std::size_t i = 0; i < comp.size(); ++i) {
    if (comp[i] != 0) {
      first_other = static_cast<Element>(i);
      break;
    }
  }
  if (!first_other) return std::nullopt;
  // Component 0 collapses onto a point of another component and every other
  // point collapses onto element 0.
  std::vector<Element> image(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) image[i] = comp[i] == 0 ? *first_other : 0;
  if (!is_monotone(p, p, image)) return std::nullopt;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (image[i] == i) return std::nullopt;
  }
  return image;
}

}  // namespace

FppReport has_fpp(const PosetPtr& pp) {
  const Poset& p = *pp;
  if (!p.has_masks()) throw_size_limit("fixed point search", p.size(), kMaskWidth);
  const auto start = std::chrono::steady_clock::now();
  FppReport report;
  auto finish = [&]() {
    report.stats.elapsed_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return report;
  };

  const std::size_t n = p.size();
  if (n == 0) {
    // The empty map is a self-map without fixed points.
    report.holds = false;
    report.witness = MonotoneMap(pp, pp, {});
    return finish();
  }
  if (!is_connected(p)) {
    if (auto image = disconnected_witness(p)) {
      report.holds = false;
      report.witness = MonotoneMap(pp, pp, std::move(*image));
      report.stats.nodes = 1;
      return finish();
    }
  }

  const auto order = degree_first_extension(p);
  std::vector<std::size_t> position(n);
  for (std::size_t k = 0; k < n; ++k) position[order[k]] = k;

  std::vector<std::uint64_t> domain(n);
  for (std::size_t i = 0; i < n; ++i) domain[i] = p.full_mask() & ~(std::uint64_t{1} << i);
  std::vector<Element> image(n, 0);
  std::vector<std::pair<Element, std::uint64_t>> trail;
  std::uint64_t nodes = 0;

  auto search = [&](auto&& self, std::size_t k) -> bool {
    if (k == n) return true;
    const Element x = order[k];
    std::uint64_t candidates = domain[x];
    while (candidates) {
      const auto v = static_cast<Element>(std::countr_zero(candidates));
      candidates &= candidates - 1;
      ++nodes;
      image[x] = v;
      const std::size_t mark = trail.size();
      bool wiped = false;
      const SubSet& above = p.up_set(x);
      for (auto z = above.find_first(); z != SubSet::npos; z = above.find_next(z)) {
        if (position[z] <= k) continue;
        const std::uint64_t narrowed = domain[z] & p.up_mask(v);
        if (narrowed != domain[z]) {
          trail.emplace_back(static_cast<Element>(z), domain[z]);
          domain[z] = narrowed;
        }
        if (!narrowed) {
          wiped = true;
          break;
        }
      }
      if (!wiped && self(self, k + 1)) return true;
      while (trail.size() > mark) {
        domain[trail.back().first] = trail.back().second;
        trail.pop_back();
      }
    }
    return false;
  };

  if (search(search, 0)) {
    report.holds = false;
    report.witness = MonotoneMap(pp, pp, image);
  }
  report.stats.nodes = nodes;
  return finish();
}

bool has_fpp_by_enumeration(const MapPoset& self_maps) {
  const std::size_t n = self_maps.dom().size();
  for (std::size_t k = 0; k < self_maps.size(); ++k) {
    auto img = self_maps.image(k);
    bool fixed = false;
    for (std::size_t x = 0; x < n && !fixed; ++x) fixed = img[x] == x;
    if (!fixed) return false;
  }
  return true;
}

FamilyOfSelfMaps::FamilyOfSelfMaps(PosetPtr t, PosetPtr x, std::vector<Element> table)
    : t_(std::move(t)), x_(std::move(x)), table_(std::move(table)) {
  if (table_.size() != t_->size() * x_->size()) {
    throw Error(ErrorCode::IndexOutOfRange, "family table has wrong length");
  }
  for (Element v : table_) {
    if (v >= x_->size()) throw Error(ErrorCode::IndexOutOfRange, "family value out of range");
  }
  // Monotone on the product order iff monotone in each coordinate separately.
  const std::size_t nx = x_->size();
  for (std::size_t a = 0; a < t_->size(); ++a) {
    for (std::size_t i = 0; i < nx; ++i) {
      const Element v = table_[a * nx + i];
      for (Element b : t_->upper_covers(static_cast<Element>(a))) {
        if (!x_->leq(v, table_[b * nx + i])) throw Error(ErrorCode::NotMonotone, "family in t");
      }
      for (Element j : x_->upper_covers(static_cast<Element>(i))) {
        if (!x_->leq(v, table_[a * nx + j])) throw Error(ErrorCode::NotMonotone, "family in x");
      }
    }
  }
}

std::vector<Element> FamilyOfSelfMaps::slice(Element t) const {
  const std::size_t nx = x_->size();
  return {table_.begin() + static_cast<std::ptrdiff_t>(t * nx),
          table_.begin() + static_cast<std::ptrdiff_t>((t + 1) * nx)};
}

bool is_fixed_point_family(const FamilyOfSelfMaps& f, const FixedPointFamily& p) {
  if (p.size() != f.params().size()) return false;
  if (!is_monotone(f.params(), f.space(), p)) return false;
  for (std::size_t t = 0; t < p.size(); ++t) {
    if (f(static_cast<Element>(t), p[t]) != p[t]) return false;
  }
  return true;
}

namespace {

// Backtracks over monotone p: T -> X restricted to fixed points of each slice.
template <typename Visit>
bool visit_fixed_point_families(const FamilyOfSelfMaps& f, Visit&& visit) {
  const Poset& t = f.params();
  const Poset& x = f.space();
  if (!x.has_masks()) throw_size_limit("family codomain", x.size(), kMaskWidth);
  std::vector<std::uint64_t> fix(t.size(), 0);
  for (std::size_t a = 0; a < t.size(); ++a) {
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (f(static_cast<Element>(a), static_cast<Element>(i)) == i) fix[a] |= std::uint64_t{1} << i;
    }
  }
  const auto& order = t.linear_extension();
  FixedPointFamily p(t.size(), 0);
  auto recurse = [&](auto&& self, std::size_t k) -> bool {
    if (k == order.size()) return visit(p);
    const Element a = order[k];
    std::uint64_t candidates = fix[a];
    for (Element b : t.lower_covers(a)) candidates &= x.up_mask(p[b]);
    while (candidates) {
      p[a] = static_cast<Element>(std::countr_zero(candidates));
      candidates &= candidates - 1;
      if (!self(self, k + 1)) return false;
    }
    return true;
  };
  return recurse(recurse, 0);
}

}  // namespace

std::optional<FixedPointFamily> find_fixed_point_family(const FamilyOfSelfMaps& f) {
  std::optional<FixedPointFamily> found;
  visit_fixed_point_families(f, [&](const FixedPointFamily& p) {
    found = p;
    return false;
  });
  return found;
}

std::vector<FixedPointFamily> all_fixed_point_families(const FamilyOfSelfMaps& f) {
  std::vector<FixedPointFamily> out;
  visit_fixed_point_families(f, [&](const FixedPointFamily& p) {
    out.push_back(p);
    return true;
  });
  return out;
}

FppWrtReport fpp_with_respect_to(const PosetPtr& x, const PosetPtr& t) {
  const auto tx = share(product(*t, *x));
  FppWrtReport report;
  for_each_monotone_map(*tx, *x, [&](std::span<const Element> table) {
    ++report.families_checked;
    FamilyOfSelfMaps f(t, x, std::vector<Element>(table.begin(), table.end()));
    if (find_fixed_point_family(f)) return true;
    report.holds = false;
    report.witness = std::move(f);
    return false;
  });
  return report;
}

MonotoneMap MapSpaceSelfMap::as_monotone_map() const {
  auto order = share(space.as_poset());
  std::vector<Element> table(image.begin(), image.end());
  return MonotoneMap(order, order, std::move(table));
}

std::vector<std::size_t> MapSpaceSelfMap::fixed_points() const {
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < image.size(); ++k) {
    if (image[k] == k) out.push_back(k);
  }
  return out;
}

MapSpaceSelfMap family_to_selfmap_on_mapspace(const FamilyOfSelfMaps& f, MapSpaceOptions options) {
  MapSpaceSelfMap result{enumerate_maps(f.params_ptr(), f.space_ptr(), options), {}};
  const auto& space = result.space;
  result.image.resize(space.size());
  std::vector<Element> q(f.params().size());
  for (std::size_t k = 0; k < space.size(); ++k) {
    auto p = space.image(k);
    for (std::size_t t = 0; t < q.size(); ++t) q[t] = f(static_cast<Element>(t), p[t]);
    const auto idx = space.index_of(q);
    if (!idx) throw Error(ErrorCode::VerificationFailure, "induced map leaves C(T,X)");
    result.image[k] = *idx;
  }
  for (std::size_t a = 0; a < space.size(); ++a) {
    const SubSet succ = space.successors(a);
    for (auto b = succ.find_first(); b != SubSet::npos; b = succ.find_next(b)) {
      if (!space.leq(result.image[a], result.image[b])) {
        throw Error(ErrorCode::VerificationFailure, "induced self-map of C(T,X) is not monotone");
      }
    }
  }
  std::vector<std::size_t> expected;
  for (const auto& p : all_fixed_point_families(f)) expected.push_back(*space.index_of(p));
  if (expected != result.fixed_points()) {
    throw Error(ErrorCode::VerificationFailure,
                "fixed points of induced map differ from families of fixed points");
  }
  return result;
}

MapSpaceFormCount mapspace_form_fraction(const PosetPtr& t, const PosetPtr& x) {
  const auto space = enumerate_maps(t, x);
  const auto order = space.as_poset();
  MapSpaceFormCount count;
  count.total = enumerate_maps(order, order).size();
  std::set<std::vector<std::size_t>> induced;
  const auto tx = product(*t, *x);
  for_each_monotone_map(tx, *x, [&](std::span<const Element> table) {
    FamilyOfSelfMaps f(t, x, std::vector<Element>(table.begin(), table.end()));
    induced.insert(family_to_selfmap_on_mapspace(f).image);
    return true;
  });
  count.induced = induced.size();
  return count;
}

FamilyOfSelfMaps evaluation_family(const MapPoset& self_maps) {
  if (!(self_maps.dom() == self_maps.cod())) {
    throw Error(ErrorCode::DomainMismatch, "evaluation family needs self-maps");
  }
  const std::size_t n = self_maps.dom().size();
  std::vector<Element> table;
  table.reserve(self_maps.size() * n);
  for (std::size_t k = 0; k < self_maps.size(); ++k) {
    auto img = self_maps.image(k);
    table.insert(table.end(), img.begin(), img.end());
  }
  return FamilyOfSelfMaps(share(self_maps.as_poset()), self_maps.cod_ptr(), std::move(table));
}

}  // namespace fixpoint
