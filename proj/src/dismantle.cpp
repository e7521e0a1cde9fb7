#include "fixpoint/dismantle.hpp"

#include <bit>

namespace fixpoint {

const char* to_string(BeatKind k) { return k == BeatKind::Down ? "down-beat" : "up-beat"; }

namespace {

// The strict down-set of x has a greatest element exactly when x has a
// single lower cover; dually for the up-set.
bool is_down_beat(const Poset& p, Element x) { return p.lower_covers(x).size() == 1; }
bool is_up_beat(const Poset& p, Element x) { return p.upper_covers(x).size() == 1; }

}  // namespace

std::vector<BeatPoint> beat_points(const Poset& p) {
  std::vector<BeatPoint> out;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const auto x = static_cast<Element>(i);
    if (is_down_beat(p, x)) out.push_back({x, BeatKind::Down});
    if (is_up_beat(p, x)) out.push_back({x, BeatKind::Up});
  }
  return out;
}

CoreReport core(const Poset& p) {
  CoreReport report;
  SubSet keep(p.size());
  keep.set();
  Poset current = p;
  std::vector<Element> original(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) original[i] = static_cast<Element>(i);

  for (;;) {
    const auto beats = beat_points(current);
    if (beats.empty()) break;
    const BeatPoint first = beats.front();
    report.removal_sequence.push_back({original[first.element], first.kind});
    keep.reset(original[first.element]);
    original.erase(original.begin() + first.element);
    current = induced(p, keep);
  }
  report.core = std::move(current);
  report.core_elements = std::move(original);
  report.dismantlable = report.core.size() == 1;
  return report;
}

Poset replay_removals(const Poset& p, const std::vector<BeatPoint>& sequence) {
  SubSet keep(p.size());
  keep.set();
  Poset current = p;
  for (const auto& step : sequence) {
    if (step.element >= p.size() || !keep.test(step.element)) {
      throw Error(ErrorCode::VerificationFailure, "removal of a missing element");
    }
    Element idx = 0;
    for (Element i = 0; i < step.element; ++i) idx += keep.test(i) ? 1 : 0;
    const bool ok = step.kind == BeatKind::Down ? is_down_beat(current, idx)
                                                : is_up_beat(current, idx);
    if (!ok) throw Error(ErrorCode::VerificationFailure, "removed element is not a beat point");
    keep.reset(step.element);
    current = induced(p, keep);
  }
  return current;
}

std::optional<Retraction> find_retraction(const PosetPtr& yp, const PosetPtr& xp,
                                          std::size_t max_sections) {
  const Poset& y = *yp;
  const Poset& x = *xp;
  if (!x.has_masks()) throw_size_limit("retract size", x.size(), kMaskWidth);
  if (!y.has_masks()) throw_size_limit("retraction source size", y.size(), kMaskWidth);
  if (x.size() > y.size()) return std::nullopt;

  std::optional<Retraction> found;
  std::size_t sections = 0;
  std::vector<Element> r(y.size(), 0);
  std::vector<int> forced(y.size(), -1);

  for_each_monotone_map(x, y, [&](std::span<const Element> s) {
    if (++sections > max_sections) throw_size_limit("section candidates", sections, max_sections);
    // r s = id forces s to reflect the order.
    for (std::size_t a = 0; a < x.size(); ++a) {
      for (std::size_t b = 0; b < x.size(); ++b) {
        if (y.leq(s[a], s[b]) && !x.leq(static_cast<Element>(a), static_cast<Element>(b))) {
          return true;
        }
      }
    }
    std::fill(forced.begin(), forced.end(), -1);
    for (std::size_t a = 0; a < x.size(); ++a) forced[s[a]] = static_cast<int>(a);

    const auto& order = y.linear_extension();
    auto extend = [&](auto&& self, std::size_t k) -> bool {
      if (k == order.size()) return true;
      const Element v = order[k];
      std::uint64_t candidates = x.full_mask();
      if (forced[v] >= 0) candidates &= std::uint64_t{1} << forced[v];
      for (Element w : y.lower_covers(v)) candidates &= x.up_mask(r[w]);
      // Forced points above v bound r(v) from above.
      while (candidates) {
        r[v] = static_cast<Element>(std::countr_zero(candidates));
        candidates &= candidates - 1;
        bool consistent = true;
        const SubSet& above = y.up_set(v);
        for (auto u = above.find_first(); u != SubSet::npos && consistent; u = above.find_next(u)) {
          if (forced[u] >= 0 && !x.leq(r[v], static_cast<Element>(forced[u]))) consistent = false;
        }
        if (consistent && self(self, k + 1)) return true;
      }
      return false;
    };
    if (!extend(extend, 0)) return true;
    found = Retraction{MonotoneMap(xp, yp, std::vector<Element>(s.begin(), s.end())),
                       MonotoneMap(yp, xp, r)};
    return false;
  });
  return found;
}

}  // namespace fixpoint
