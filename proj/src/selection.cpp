#include "fixpoint/selection.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <numeric>

namespace fixpoint {

const char* to_string(SelectionStatus s) {
  switch (s) {
    case SelectionStatus::Sat: return "sat";
    case SelectionStatus::Unsat: return "unsat";
    case SelectionStatus::EmptyDomain: return "empty-domain";
  }
  return "unknown";
}

namespace {

std::uint64_t fixed_mask(std::span<const Element> image) {
  std::uint64_t m = 0;
  for (std::size_t x = 0; x < image.size(); ++x) {
    if (image[x] == x) m |= std::uint64_t{1} << x;
  }
  return m;
}

}  // namespace

SelectionResult find_selection_map(const MapPosetPtr& space_ptr) {
  const MapPoset& space = *space_ptr;
  const Poset& p = space.dom();
  if (!(p == space.cod())) throw Error(ErrorCode::DomainMismatch, "selection needs self-maps");
  if (!p.has_masks()) throw_size_limit("selection target", p.size(), kMaskWidth);
  const auto start = std::chrono::steady_clock::now();

  SelectionResult result;
  result.space = space_ptr;
  auto finish = [&]() {
    result.stats.elapsed_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return result;
  };

  const std::size_t m = space.size();
  std::vector<std::uint64_t> domain(m);
  for (std::size_t k = 0; k < m; ++k) {
    domain[k] = fixed_mask(space.image(k));
    if (!domain[k]) {
      result.status = SelectionStatus::EmptyDomain;
      result.fixed_point_free_map = k;
      return finish();
    }
  }

  // Sum of down-set sizes of the images strictly increases along the
  // pointwise order, so sorting by it yields a linear extension.
  std::vector<std::size_t> level(m, 0);
  for (std::size_t k = 0; k < m; ++k) {
    for (Element v : space.image(k)) level[k] += p.down_set(v).count();
  }
  std::vector<std::size_t> order(m);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (level[a] != level[b]) return level[a] < level[b];
    return std::popcount(domain[a]) < std::popcount(domain[b]);
  });
  std::vector<std::size_t> position(m);
  for (std::size_t i = 0; i < m; ++i) position[order[i]] = i;

  // Values are tried lowest first so that later maps keep the most room.
  std::vector<Element> value_order(p.size());
  std::iota(value_order.begin(), value_order.end(), 0);
  std::stable_sort(value_order.begin(), value_order.end(), [&](Element a, Element b) {
    return p.down_set(a).count() < p.down_set(b).count();
  });

  std::vector<Element> choice(m, 0);
  std::vector<std::uint64_t> remaining(m + 1, 0);
  std::vector<std::size_t> trail_mark(m + 1, 0);
  std::vector<std::pair<std::size_t, std::uint64_t>> trail;
  std::uint64_t nodes = 0;

  auto undo_to = [&](std::size_t mark) {
    while (trail.size() > mark) {
      domain[trail.back().first] = trail.back().second;
      trail.pop_back();
    }
  };

  std::size_t depth = 0;
  if (m > 0) remaining[0] = domain[order[0]];
  bool solved = m == 0;
  while (!solved) {
    const std::size_t var = order[depth];
    if (!remaining[depth]) {
      if (depth == 0) break;
      --depth;
      undo_to(trail_mark[depth]);
      continue;
    }
    Element v = 0;
    for (Element cand : value_order) {
      if (remaining[depth] >> cand & 1) {
        v = cand;
        break;
      }
    }
    remaining[depth] &= ~(std::uint64_t{1} << v);
    ++nodes;
    choice[var] = v;
    trail_mark[depth] = trail.size();

    bool wiped = false;
    const SubSet succ = space.successors(var);
    const std::uint64_t allowed = p.up_mask(v);
    for (auto b = succ.find_first(); b != SubSet::npos; b = succ.find_next(b)) {
      if (position[b] <= depth) continue;
      const std::uint64_t narrowed = domain[b] & allowed;
      if (narrowed == domain[b]) continue;
      trail.emplace_back(b, domain[b]);
      domain[b] = narrowed;
      if (!narrowed) {
        wiped = true;
        if (depth > result.deepest_failure || result.wiped.empty()) {
          result.deepest_failure = depth;
          result.wiped.clear();
        }
        if (depth == result.deepest_failure &&
            std::find(result.wiped.begin(), result.wiped.end(), b) == result.wiped.end()) {
          result.wiped.push_back(b);
        }
        break;
      }
    }
    if (wiped) {
      undo_to(trail_mark[depth]);
      continue;
    }
    if (depth + 1 == m) {
      solved = true;
      break;
    }
    ++depth;
    remaining[depth] = domain[order[depth]];
  }

  result.stats.nodes = nodes;
  if (solved) {
    result.status = SelectionStatus::Sat;
    result.selection = SelectionMap{space_ptr, std::move(choice)};
    result.wiped.clear();
    if (verify_selection(p, *result.selection)) {
      throw Error(ErrorCode::VerificationFailure, "selection search produced an invalid map");
    }
  } else {
    result.status = SelectionStatus::Unsat;
    std::sort(result.wiped.begin(), result.wiped.end());
  }
  return finish();
}

SelectionResult find_selection_map(const PosetPtr& p, MapSpaceOptions options) {
  return find_selection_map(std::make_shared<const MapPoset>(enumerate_maps(p, p, options)));
}

std::optional<SelectionViolation> verify_selection(const Poset& p, const SelectionMap& phi) {
  using Kind = SelectionViolation::Kind;
  const MapPoset& space = *phi.space;
  if (!(space.dom() == p) || !(space.cod() == p) || phi.choice.size() != space.size()) {
    return SelectionViolation{Kind::Shape, 0, 0};
  }
  for (std::size_t k = 0; k < space.size(); ++k) {
    if (phi.choice[k] >= p.size() || space.image(k)[phi.choice[k]] != phi.choice[k]) {
      return SelectionViolation{Kind::FixedPoint, k, k};
    }
  }
  for (std::size_t a = 0; a < space.size(); ++a) {
    const SubSet succ = space.successors(a);
    for (auto b = succ.find_first(); b != SubSet::npos; b = succ.find_next(b)) {
      if (!p.leq(phi.choice[a], phi.choice[b])) return SelectionViolation{Kind::Monotonicity, a, b};
    }
  }
  return std::nullopt;
}

SelectionMap iterate_selection(const MapPosetPtr& self_maps, bool from_top) {
  const Poset& p = self_maps->dom();
  const auto start = from_top ? p.top() : p.bottom();
  if (!start) {
    throw Error(ErrorCode::InvalidPoset,
                from_top ? "poset has no greatest element" : "poset has no least element");
  }
  SelectionMap phi{self_maps, std::vector<Element>(self_maps->size())};
  for (std::size_t k = 0; k < self_maps->size(); ++k) {
    auto img = self_maps->image(k);
    Element x = *start;
    for (std::size_t step = 0; step < p.size(); ++step) x = img[x];
    phi.choice[k] = x;
  }
  return phi;
}

FixedPointFamily criterion_family_selection(const SelectionMap& phi, const FamilyOfSelfMaps& f) {
  if (!(f.space() == phi.poset())) {
    throw Error(ErrorCode::DomainMismatch, "family acts on a different space");
  }
  FixedPointFamily p(f.params().size());
  for (std::size_t t = 0; t < p.size(); ++t) {
    const auto idx = phi.space->index_of(f.slice(static_cast<Element>(t)));
    if (!idx) throw Error(ErrorCode::VerificationFailure, "slice missing from mapping space");
    p[t] = phi(*idx);
  }
  if (!is_fixed_point_family(f, p)) {
    throw Error(ErrorCode::VerificationFailure, "selected family is not a family of fixed points");
  }
  return p;
}

FixedPointOracle first_fixed_point_oracle() {
  return [](const MonotoneMap& g) -> std::optional<Element> {
    const SubSet fix = fixed_points(g);
    const auto first = fix.find_first();
    if (first == SubSet::npos) return std::nullopt;
    return static_cast<Element>(first);
  };
}

namespace {

// x -> pr_X f(x, y) for a product table over X x Y.
std::vector<Element> x_slice(std::span<const Element> f, std::size_t nx, std::size_t ny,
                             Element y) {
  std::vector<Element> out(nx);
  for (std::size_t x = 0; x < nx; ++x) out[x] = f[x * ny + y] / static_cast<Element>(ny);
  return out;
}

Element select_x(const SelectionMap& phi, std::span<const Element> f, std::size_t ny, Element y) {
  const auto idx = phi.space->index_of(x_slice(f, phi.poset().size(), ny, y));
  if (!idx) throw Error(ErrorCode::VerificationFailure, "slice f_{X,y} missing from C(X,X)");
  return phi(*idx);
}

}  // namespace

std::vector<Element> product_auxiliary_map(const SelectionMap& phi, const Poset& y,
                                           std::span<const Element> f) {
  const std::size_t ny = y.size();
  std::vector<Element> g(ny);
  for (std::size_t b = 0; b < ny; ++b) {
    const Element x = select_x(phi, f, ny, static_cast<Element>(b));
    g[b] = f[x * ny + b] % static_cast<Element>(ny);
  }
  return g;
}

std::pair<Element, Element> product_fixed_point(const SelectionMap& phi, const PosetPtr& y,
                                                const MonotoneMap& f,
                                                const FixedPointOracle& oracle) {
  const Poset& xp = phi.poset();
  const std::size_t ny = y->size();
  if (!(f.dom() == f.cod()) || !(f.dom() == product(xp, *y))) {
    throw Error(ErrorCode::DomainMismatch, "map is not a self-map of X x Y");
  }
  const MonotoneMap g(y, y, product_auxiliary_map(phi, *y, f.image()));
  const auto fixed_y = oracle(g);
  if (!fixed_y || *fixed_y >= ny || g(*fixed_y) != *fixed_y) {
    throw Error(ErrorCode::OracleFailure, "no fixed point for the auxiliary self-map of Y");
  }
  const Element x = select_x(phi, f.image(), ny, *fixed_y);
  const Element point = x * static_cast<Element>(ny) + *fixed_y;
  if (f(point) != point) {
    throw Error(ErrorCode::VerificationFailure, "product construction missed a fixed point");
  }
  return {x, *fixed_y};
}

SelectionMap product_selection(const SelectionMap& phi, const SelectionMap& psi,
                               MapSpaceOptions options) {
  const Poset& xp = phi.poset();
  const Poset& yp = psi.poset();
  const std::size_t ny = yp.size();
  auto xy = share(product(xp, yp));
  auto space = std::make_shared<const MapPoset>(enumerate_maps(xy, xy, options));
  SelectionMap out{space, std::vector<Element>(space->size())};
  for (std::size_t k = 0; k < space->size(); ++k) {
    auto f = space->image(k);
    const auto g = product_auxiliary_map(phi, yp, f);
    const auto gi = psi.space->index_of(g);
    if (!gi) throw Error(ErrorCode::VerificationFailure, "auxiliary map missing from C(Y,Y)");
    const Element y = psi(*gi);
    const Element x = select_x(phi, f, ny, y);
    out.choice[k] = x * static_cast<Element>(ny) + y;
  }
  if (verify_selection(*xy, out)) {
    throw Error(ErrorCode::VerificationFailure, "product selection map failed verification");
  }
  return out;
}

SelectionMap transfer_selection_along_retract(const SelectionMap& phi_y, const MonotoneMap& s,
                                              const MonotoneMap& r) {
  if (!(s.cod() == phi_y.poset()) || !(r.dom() == phi_y.poset())) {
    throw Error(ErrorCode::DomainMismatch, "retraction does not match the selection's space");
  }
  if (!(compose(r, s) == MonotoneMap::identity(s.dom_ptr()))) {
    throw Error(ErrorCode::NotARetract, "r after s is not the identity");
  }
  const auto& xptr = s.dom_ptr();
  auto space = std::make_shared<const MapPoset>(enumerate_maps(xptr, xptr));
  SelectionMap out{space, std::vector<Element>(space->size())};
  std::vector<Element> conj(phi_y.poset().size());
  for (std::size_t k = 0; k < space->size(); ++k) {
    auto f = space->image(k);
    for (std::size_t y = 0; y < conj.size(); ++y) conj[y] = s(f[r(static_cast<Element>(y))]);
    const auto idx = phi_y.space->index_of(conj);
    if (!idx) throw Error(ErrorCode::VerificationFailure, "s f r missing from C(Y,Y)");
    out.choice[k] = r(phi_y(*idx));
  }
  if (verify_selection(*xptr, out)) {
    throw Error(ErrorCode::VerificationFailure, "transferred selection map failed verification");
  }
  return out;
}

UniversalReport has_universal_fpp(const PosetPtr& p, MapSpaceOptions options,
                                  std::size_t witness_bound) {
  UniversalReport report;
  report.search = find_selection_map(p, options);
  report.holds = report.search.sat();
  if (!report.holds && report.search.space->size() <= witness_bound) {
    report.witness = evaluation_family(*report.search.space);
  }
  return report;
}

}  // namespace fixpoint
