#include <doctest.h>

#include "support.hpp"

using namespace fixpoint;
using fixtest::crown4;
using fixtest::nine_point;

namespace {

void check_witness(const FppReport& r) {
  REQUIRE(r.witness.has_value());
  CHECK(fixtest::brute_monotone(r.witness->dom(), r.witness->cod(), r.witness->image()));
  CHECK(fixed_points(*r.witness).none());
}

// Every monotone T -> X table satisfying the fixed-point equation.
std::set<std::vector<Element>> brute_families(const FamilyOfSelfMaps& f) {
  std::set<std::vector<Element>> out;
  for (const auto& p : fixtest::brute_monotone_maps(f.params(), f.space())) {
    bool ok = true;
    for (Element t = 0; t < f.params().size(); ++t) ok = ok && f(t, p[t]) == p[t];
    if (ok) out.insert(p);
  }
  return out;
}

}  // namespace

TEST_CASE("has_fpp examples") {
  CHECK(has_fpp(Poset::chain(1)).holds);
  const auto anti = has_fpp(Poset::antichain(2));
  CHECK_FALSE(anti.holds);
  check_witness(anti);
  CHECK(anti.witness->image() == std::vector<Element>{1, 0});
  const auto crown = has_fpp(crown4());
  CHECK_FALSE(crown.holds);
  check_witness(crown);
  CHECK_FALSE(fixtest::brute_fpp(crown4()));
  CHECK(has_fpp(nine_point()).holds);
  CHECK_FALSE(has_fpp(Poset()).holds);
}

TEST_CASE("has_fpp agrees with brute force on the n <= 5 catalog") {
  for (std::size_t n = 1; n <= 5; ++n) {
    for (const auto& p : iso_classes(n)) {
      const auto report = has_fpp(p);
      const bool brute = fixtest::brute_fpp(p);
      CHECK(report.holds == brute);
      CHECK(report.holds == has_fpp_by_enumeration(enumerate_maps(p, p)));
      if (!report.holds) check_witness(report);
      if (report.holds) CHECK(is_connected(p));
      if (n > 1) CHECK(report.stats.nodes > 0);
    }
  }
}

TEST_CASE("disconnected posets get a fixed-point-free witness") {
  // 2-chain plus an isolated point
  const std::vector<Cover> covers{{0, 1}};
  const auto p = Poset::from_covers(3, covers);
  const auto r = has_fpp(p);
  CHECK_FALSE(r.holds);
  check_witness(r);
}

TEST_CASE("fpp of products implies fpp of factors") {
  const auto small = catalog_up_to(3);
  for (std::size_t a = 1; a <= 3; ++a) {
    for (std::size_t b = 1; b <= 3; ++b) {
      for (const auto& x : small[a]) {
        for (const auto& y : small[b]) {
          if (has_fpp(product(x, y)).holds) {
            CHECK(has_fpp(x).holds);
            CHECK(has_fpp(y).holds);
          }
        }
      }
    }
  }
}

TEST_CASE("FamilyOfSelfMaps validates monotonicity on the product") {
  const auto t = share(Poset::chain(2));
  const auto x = share(Poset::chain(2));
  CHECK_NOTHROW(FamilyOfSelfMaps(t, x, {0, 1, 0, 1}));
  CHECK_THROWS_AS(FamilyOfSelfMaps(t, x, {1, 1, 0, 0}), Error);
  CHECK_THROWS_AS(FamilyOfSelfMaps(t, x, {0, 1, 0}), Error);
}

TEST_CASE("fpp_with_respect_to examples") {
  for (std::size_t n = 1; n <= 4; ++n) {
    for (const auto& x : iso_classes(n)) {
      const auto xp = share(x);
      CHECK(fpp_with_respect_to(xp, share(Poset())).holds);
      CHECK(fpp_with_respect_to(xp, share(Poset::chain(1))).holds == has_fpp(x).holds);
    }
  }
  CHECK(fpp_with_respect_to(share(Poset::chain(2)), share(Poset::chain(2))).holds);
  const auto fails = fpp_with_respect_to(share(Poset::antichain(2)), share(Poset::chain(2)));
  CHECK_FALSE(fails.holds);
  REQUIRE(fails.witness.has_value());
  CHECK_FALSE(find_fixed_point_family(*fails.witness).has_value());
}

TEST_CASE("fixed-point families agree with brute force") {
  const auto x = share(Poset::chain(2));
  for (const auto& tpos : {Poset::chain(2), Poset::chain(3), Poset::antichain(2)}) {
    const auto t = share(tpos);
    const auto tx = product(*t, *x);
    for (const auto& table : fixtest::brute_monotone_maps(tx, *x)) {
      const FamilyOfSelfMaps f(t, x, table);
      const auto all = all_fixed_point_families(f);
      const auto oracle = brute_families(f);
      CHECK(std::set<std::vector<Element>>(all.begin(), all.end()) == oracle);
      CHECK(find_fixed_point_family(f).has_value() == !oracle.empty());
      for (const auto& p : all) CHECK(is_fixed_point_family(f, p));
    }
  }
}

TEST_CASE("family_to_selfmap_on_mapspace examples") {
  const auto t = share(Poset::chain(2));
  const auto x = share(Poset::chain(3));
  // f(t, x) = x
  std::vector<Element> ident(t->size() * x->size());
  for (Element a = 0; a < t->size(); ++a) {
    for (Element b = 0; b < x->size(); ++b) ident[a * x->size() + b] = b;
  }
  const auto id_map = family_to_selfmap_on_mapspace(FamilyOfSelfMaps(t, x, ident));
  for (std::size_t k = 0; k < id_map.image.size(); ++k) CHECK(id_map.image[k] == k);

  // f(t, x) = p0(t)
  const std::vector<Element> p0{0, 2};
  std::vector<Element> constant(t->size() * x->size());
  for (Element a = 0; a < t->size(); ++a) {
    for (Element b = 0; b < x->size(); ++b) constant[a * x->size() + b] = p0[a];
  }
  const auto c_map = family_to_selfmap_on_mapspace(FamilyOfSelfMaps(t, x, constant));
  const auto p0_index = c_map.space.index_of(p0);
  REQUIRE(p0_index.has_value());
  for (auto v : c_map.image) CHECK(v == *p0_index);
  CHECK(c_map.fixed_points() == std::vector<std::size_t>{*p0_index});
}

TEST_CASE("mapspace fixed points are exactly the families of fixed points") {
  const auto x = share(Poset::chain(2));
  const auto t = share(Poset::chain(2));
  const auto tx = product(*t, *x);
  for (const auto& table : fixtest::brute_monotone_maps(tx, *x)) {
    const FamilyOfSelfMaps f(t, x, table);
    const auto self = family_to_selfmap_on_mapspace(f);
    std::set<std::vector<Element>> from_mapspace;
    for (auto k : self.fixed_points()) {
      auto img = self.space.image(k);
      from_mapspace.emplace(img.begin(), img.end());
    }
    CHECK(from_mapspace == brute_families(f));
    CHECK(fixtest::brute_monotone(self.space.as_poset(), self.space.as_poset(),
                                  std::vector<Element>(self.image.begin(), self.image.end())));
  }
}

TEST_CASE("fpp with respect to T passes to retracts of T") {
  const auto x = share(Poset::chain(2));
  const auto cat = catalog_up_to(3);
  for (std::size_t a = 1; a <= 3; ++a) {
    for (std::size_t b = 1; b <= a; ++b) {
      for (const auto& tpos : cat[a]) {
        for (const auto& spos : cat[b]) {
          const auto t = share(tpos);
          const auto s = share(spos);
          if (!find_retraction(t, s)) continue;
          if (fpp_with_respect_to(x, t).holds) CHECK(fpp_with_respect_to(x, s).holds);
        }
      }
    }
  }
}

TEST_CASE("universal fpp examples") {
  CHECK(has_universal_fpp(share(Poset::chain(1))).holds);
  const auto anti = has_universal_fpp(share(Poset::antichain(2)));
  CHECK_FALSE(anti.holds);
  REQUIRE(anti.witness.has_value());
  CHECK_FALSE(find_fixed_point_family(*anti.witness).has_value());
  CHECK(has_universal_fpp(share(nine_point())).holds);
}

TEST_CASE("universal fpp agrees with fpp relative to the map space for n <= 2") {
  for (std::size_t n = 1; n <= 2; ++n) {
    for (const auto& pos : iso_classes(n)) {
      const auto p = share(pos);
      const auto space = enumerate_maps(p, p);
      const auto c = share(space.as_poset());
      CHECK(has_universal_fpp(p).holds == fpp_with_respect_to(p, c).holds);
    }
  }
}

TEST_CASE("sampled families over C(P,P) always have a family of fixed points when Sat") {
  std::mt19937 rng(11);
  for (const auto& pos : iso_classes(3)) {
    const auto p = share(pos);
    const auto result = find_selection_map(p);
    if (!result.sat()) continue;
    const auto c = share(result.space->as_poset());
    const auto cp = product(*c, *p);
    for (int trial = 0; trial < 50; ++trial) {
      const FamilyOfSelfMaps f(c, p, fixtest::random_monotone(cp, *p, rng));
      CHECK(find_fixed_point_family(f).has_value());
    }
  }
}

TEST_CASE("evaluation family has no family of fixed points exactly when Unsat") {
  for (std::size_t n = 1; n <= 3; ++n) {
    for (const auto& pos : iso_classes(n)) {
      const auto space = std::make_shared<const MapPoset>(enumerate_maps(pos, pos));
      const auto ev = evaluation_family(*space);
      CHECK(find_fixed_point_family(ev).has_value() == find_selection_map(space).sat());
    }
  }
}

TEST_CASE("fraction of mapspace self-maps induced by families") {
  const auto count = mapspace_form_fraction(share(Poset::chain(1)), share(Poset::chain(2)));
  // with T a point, C(T,X) = X and every self-map is induced
  CHECK(count.total == 3);
  CHECK(count.induced == count.total);
  const auto c2 = mapspace_form_fraction(share(Poset::chain(2)), share(Poset::chain(2)));
  CHECK(c2.induced <= c2.total);
  CHECK(c2.induced > 0);
}
