#include <doctest.h>

#include "support.hpp"

using namespace fixpoint;
using fixtest::crown4;
using fixtest::nine_point;

namespace {

SubSet bits(std::size_t n, std::initializer_list<std::size_t> members) {
  SubSet s(n);
  for (auto m : members) s.set(m);
  return s;
}

}  // namespace

TEST_CASE("from_covers builds the transitive closure") {
  const auto c3 = Poset::chain(3);
  CHECK(c3.leq(0, 2));
  CHECK_FALSE(c3.leq(2, 0));
  CHECK(c3.top() == Element{2});
  CHECK(c3.bottom() == Element{0});
  CHECK(c3.covers() == std::vector<Cover>{{0, 1}, {1, 2}});
  CHECK(Poset::antichain(2).covers().empty());
}

TEST_CASE("from_covers reports cycles with the cycle itself") {
  const std::vector<Cover> covers{{0, 1}, {1, 2}, {2, 0}};
  try {
    Poset::from_covers(3, covers);
    FAIL("expected a cycle");
  } catch (const CycleDetected& e) {
    CHECK(e.code() == ErrorCode::CycleDetected);
    CHECK(e.cycle().size() >= 3);
  }
  const std::vector<Cover> loop{{1, 1}};
  CHECK_THROWS_AS(Poset::from_covers(2, loop), CycleDetected);
  const std::vector<Cover> out_of_range{{0, 5}};
  CHECK_THROWS_AS(Poset::from_covers(2, out_of_range), Error);
}

TEST_CASE("from_relation validates the order axioms") {
  std::vector<SubSet> not_reflexive{bits(2, {1}), bits(2, {1})};
  CHECK_THROWS_AS(Poset::from_relation(not_reflexive), Error);
  std::vector<SubSet> not_antisymmetric{bits(2, {0, 1}), bits(2, {0, 1})};
  CHECK_THROWS_AS(Poset::from_relation(not_antisymmetric), Error);
  std::vector<SubSet> not_transitive{bits(3, {0, 1}), bits(3, {1, 2}), bits(3, {2})};
  CHECK_THROWS_AS(Poset::from_relation(not_transitive), Error);
}

TEST_CASE("to_space on a 2-chain") {
  const auto s = to_space(Poset::chain(2));
  std::set<std::string> opens;
  for (const auto& u : s.opens) {
    std::string text;
    boost::to_string(u, text);
    opens.insert(text);
  }
  // bit strings are printed most significant first: {0} is "01"
  CHECK(opens == std::set<std::string>{"00", "01", "11"});
  CHECK(s.opens.size() == 3);
}

TEST_CASE("to_space on an antichain is discrete") {
  CHECK(to_space(Poset::antichain(3)).opens.size() == 8);
}

TEST_CASE("opens are exactly the down-sets; minimal neighbourhoods are principal down-sets") {
  for (const auto& p : iso_classes(5)) {
    const auto space = to_space(p);
    std::set<SubSet> listed(space.opens.begin(), space.opens.end());
    for (std::uint32_t mask = 0; mask < (1u << p.size()); ++mask) {
      SubSet u(p.size(), mask);
      CHECK(is_open(p, u) == listed.contains(u));
    }
    for (Element x = 0; x < p.size(); ++x) {
      const SubSet nbhd = min_open_nbhd(p, x);
      CHECK(nbhd == p.down_set(x));
      CHECK(listed.contains(nbhd));
      for (const auto& u : space.opens) {
        if (u.test(x)) CHECK(nbhd.is_subset_of(u));
      }
    }
  }
}

TEST_CASE("specialization_poset inverts to_space for n <= 6") {
  for (std::size_t n = 0; n <= 6; ++n) {
    for (const auto& p : iso_classes(n)) CHECK(specialization_poset(to_space(p)) == p);
  }
  CHECK(specialization_poset(to_space(nine_point())) == nine_point());
}

TEST_CASE("specialization_poset rejects non-Kolmogorov spaces") {
  FiniteSpace indiscrete{2, {SubSet(2), bits(2, {0, 1})}};
  try {
    specialization_poset(indiscrete);
    FAIL("expected NotKolmogorov");
  } catch (const NotKolmogorov& e) {
    CHECK(e.witness() == std::pair<Element, Element>{0, 1});
  }
  FiniteSpace not_a_topology{2, {SubSet(2), bits(2, {0})}};
  CHECK_THROWS_AS(not_a_topology.validate(), Error);
}

TEST_CASE("t0_witness_map is continuous and fixed-point free") {
  // {0, 1} indistinguishable, 2 separated: opens {}, {0,1}, {0,1,2}
  FiniteSpace s{3, {SubSet(3), bits(3, {0, 1}), bits(3, {0, 1, 2})}};
  const auto f = t0_witness_map(s, 0, 1);
  CHECK(f == std::vector<Element>{1, 0, 0});
  for (std::size_t x = 0; x < 3; ++x) CHECK(f[x] != x);
  for (const auto& u : s.opens) {
    SubSet pre(3);
    for (std::size_t x = 0; x < 3; ++x) pre[x] = u.test(f[x]);
    CHECK(std::find(s.opens.begin(), s.opens.end(), pre) != s.opens.end());
  }
  FiniteSpace discrete = to_space(Poset::antichain(2));
  CHECK_THROWS_AS(t0_witness_map(discrete, 0, 1), Error);
}

TEST_CASE("product order") {
  const auto sq = product(Poset::chain(2), Poset::chain(2));
  CHECK(sq.size() == 4);
  CHECK(sq.bottom() == Element{0});
  CHECK(sq.top() == Element{3});
  CHECK_FALSE(sq.comparable(1, 2));
  CHECK(fixtest::brute_isomorphic(product(nine_point(), Poset::chain(1)), nine_point()));
  CHECK(product(Poset::antichain(2), Poset::antichain(2)) == Poset::antichain(4));
  ProductOptions tight;
  tight.max_size = 3;
  CHECK_THROWS_AS(product(Poset::chain(2), Poset::chain(2), tight), Error);
}

TEST_CASE("product and dual satisfy the order axioms for catalog pairs") {
  const auto cat = catalog_up_to(3);
  for (std::size_t a = 1; a <= 3; ++a) {
    for (std::size_t b = 1; b <= 3; ++b) {
      for (const auto& p : cat[a]) {
        for (const auto& q : cat[b]) {
          const auto pq = product(p, q);
          for (Element i = 0; i < pq.size(); ++i) {
            for (Element j = 0; j < pq.size(); ++j) {
              const bool expected = p.leq(i / q.size(), j / q.size()) && q.leq(i % q.size(), j % q.size());
              CHECK(pq.leq(i, j) == expected);
            }
          }
        }
      }
    }
  }
  for (const auto& p : iso_classes(5)) {
    const auto d = dual(p);
    CHECK(dual(d) == p);
    for (Element i = 0; i < p.size(); ++i) {
      for (Element j = 0; j < p.size(); ++j) CHECK(d.leq(i, j) == p.leq(j, i));
    }
  }
}

TEST_CASE("dual examples") {
  const auto d = dual(Poset::chain(2));
  CHECK(d.leq(1, 0));
  CHECK_FALSE(d.leq(0, 1));
  CHECK(dual(Poset::antichain(3)) == Poset::antichain(3));
}

TEST_CASE("connectivity") {
  CHECK(is_connected(Poset::chain(1)));
  CHECK_FALSE(is_connected(Poset::antichain(2)));
  CHECK(is_connected(nine_point()));
  CHECK(is_connected(crown4()));
  const std::vector<Cover> two_chains{{0, 1}, {2, 3}};
  const auto comp = components(Poset::from_covers(4, two_chains));
  CHECK(comp == std::vector<std::size_t>{0, 0, 1, 1});
}

TEST_CASE("the nine-point poset connectivity by breadth-first search over covers") {
  const auto p = nine_point();
  std::vector<bool> seen(p.size(), false);
  std::vector<Element> queue{0};
  seen[0] = true;
  for (std::size_t h = 0; h < queue.size(); ++h) {
    for (auto [lo, hi] : p.covers()) {
      for (auto [a, b] : {std::pair{lo, hi}, std::pair{hi, lo}}) {
        if (a == queue[h] && !seen[b]) {
          seen[b] = true;
          queue.push_back(b);
        }
      }
    }
  }
  CHECK(queue.size() == 9);
}

TEST_CASE("canonical_form examples") {
  const std::vector<Cover> up{{0, 1}};
  const std::vector<Cover> down{{1, 0}};
  CHECK(canonical_form(Poset::from_covers(2, up)) == canonical_form(Poset::from_covers(2, down)));
  CHECK(canonical_form(Poset::chain(2)) != canonical_form(Poset::antichain(2)));
  CanonicalOptions small;
  small.max_n = 3;
  CHECK_THROWS_AS(canonical_form(Poset::chain(4), small), Error);
}

TEST_CASE("canonical_form is isomorphism-complete on n <= 6") {
  for (std::size_t n = 1; n <= 4; ++n) {
    const auto classes = iso_classes(n);
    std::set<std::string> forms;
    for (const auto& p : classes) forms.insert(canonical_form(p));
    CHECK(forms.size() == classes.size());
    for (std::size_t i = 0; i < classes.size(); ++i) {
      for (std::size_t j = i + 1; j < classes.size(); ++j) {
        CHECK_FALSE(fixtest::brute_isomorphic(classes[i], classes[j]));
      }
    }
  }
  // Random relabellings of 5- and 6-element posets keep their form, and the
  // form agrees with the brute-force permutation canonicaliser.
  std::mt19937 rng(7);
  for (std::size_t n : {5u, 6u}) {
    const auto classes = iso_classes(n);
    std::map<std::vector<bool>, std::string> brute_to_form;
    for (const auto& p : classes) {
      const auto form = canonical_form(p);
      auto [it, inserted] = brute_to_form.emplace(fixtest::brute_canonical(p), form);
      CHECK(inserted);
      std::vector<Element> perm(n);
      std::iota(perm.begin(), perm.end(), 0);
      std::shuffle(perm.begin(), perm.end(), rng);
      std::vector<SubSet> up(n, SubSet(n));
      for (Element i = 0; i < n; ++i) {
        for (Element j = 0; j < n; ++j) {
          if (p.leq(i, j)) up[perm[i]].set(perm[j]);
        }
      }
      CHECK(canonical_form(Poset::from_relation(std::move(up))) == form);
    }
  }
}

TEST_CASE("canonical_labeling relabels onto the canonical relation") {
  for (const auto& p : iso_classes(5)) {
    const auto perm = canonical_labeling(p);
    std::vector<SubSet> up(p.size(), SubSet(p.size()));
    for (Element i = 0; i < p.size(); ++i) {
      for (Element j = 0; j < p.size(); ++j) {
        if (p.leq(i, j)) up[perm[i]].set(perm[j]);
      }
    }
    const auto relabelled = Poset::from_relation(std::move(up));
    CHECK(canonical_form(relabelled) == canonical_form(p));
  }
}

TEST_CASE("iso class counts match brute-force relation enumeration") {
  const std::vector<std::size_t> expected{1, 1, 2, 5, 16, 63};
  const auto cat = catalog_up_to(5);
  for (std::size_t n = 0; n <= 5; ++n) {
    CHECK(cat[n].size() == expected[n]);
    if (n <= 4) CHECK(fixtest::brute_class_count(n) == expected[n]);
  }
}

TEST_CASE("linear extension respects the order") {
  for (const auto& p : iso_classes(5)) {
    const auto& ext = p.linear_extension();
    REQUIRE(ext.size() == p.size());
    std::vector<std::size_t> pos(p.size());
    for (std::size_t k = 0; k < ext.size(); ++k) pos[ext[k]] = k;
    for (Element i = 0; i < p.size(); ++i) {
      for (Element j = 0; j < p.size(); ++j) {
        if (p.less(i, j)) CHECK(pos[i] < pos[j]);
      }
    }
  }
}
