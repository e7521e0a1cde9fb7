#pragma once

// Fixtures and brute-force oracles shared by the test binaries. The oracles
// deliberately avoid the library's search code: they enumerate raw tables and
// permutations and only use Poset::leq.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "fixpoint/catalog.hpp"
#include "fixpoint/dismantle.hpp"
#include "fixpoint/fpp.hpp"
#include "fixpoint/interval_lab.hpp"
#include "fixpoint/io.hpp"
#include "fixpoint/selection.hpp"

namespace fixtest {

using fixpoint::Cover;
using fixpoint::Element;
using fixpoint::Poset;

// a1 a2 a3 | b1 b2 b3 | c1 c2 c3 -> 0..8
inline Poset nine_point() {
  const std::vector<Cover> covers{{0, 1}, {1, 2}, {6, 7}, {7, 8}, {0, 4}, {4, 8}, {6, 4},
                                  {4, 2}, {3, 1}, {1, 5}, {3, 7}, {7, 5}, {3, 4}};
  return Poset::from_covers(9, covers, {"a1", "a2", "a3", "b1", "b2", "b3", "c1", "c2", "c3"});
}

// a, b < c, d with all four cross relations.
inline Poset crown4() {
  const std::vector<Cover> covers{{0, 2}, {0, 3}, {1, 2}, {1, 3}};
  return Poset::from_covers(4, covers);
}

inline bool brute_monotone(const Poset& dom, const Poset& cod, const std::vector<Element>& t) {
  for (Element i = 0; i < dom.size(); ++i) {
    for (Element j = 0; j < dom.size(); ++j) {
      if (dom.leq(i, j) && !cod.leq(t[i], t[j])) return false;
    }
  }
  return true;
}

// Visits every table dom -> cod (all |cod|^|dom| of them).
inline void for_each_table(std::size_t n_dom, std::size_t n_cod,
                           const std::function<void(const std::vector<Element>&)>& visit) {
  std::vector<Element> t(n_dom, 0);
  if (n_cod == 0) {
    if (n_dom == 0) visit(t);
    return;
  }
  for (;;) {
    visit(t);
    std::size_t k = 0;
    while (k < n_dom && ++t[k] == n_cod) t[k++] = 0;
    if (k == n_dom) return;
  }
}

inline std::set<std::vector<Element>> brute_monotone_maps(const Poset& dom, const Poset& cod) {
  std::set<std::vector<Element>> out;
  for_each_table(dom.size(), cod.size(), [&](const std::vector<Element>& t) {
    if (brute_monotone(dom, cod, t)) out.insert(t);
  });
  return out;
}

inline bool brute_fpp(const Poset& p) {
  bool holds = true;
  for_each_table(p.size(), p.size(), [&](const std::vector<Element>& t) {
    if (!holds || !brute_monotone(p, p, t)) return;
    bool fixed = false;
    for (Element x = 0; x < p.size(); ++x) fixed = fixed || t[x] == x;
    if (!fixed) holds = false;
  });
  return holds;
}

// Relation matrix of p relabelled by perm (perm[i] = new name of i), as a bit string.
inline std::vector<bool> relabelled_relation(const Poset& p, const std::vector<Element>& perm) {
  const std::size_t n = p.size();
  std::vector<bool> bits(n * n, false);
  for (Element i = 0; i < n; ++i) {
    for (Element j = 0; j < n; ++j) bits[perm[i] * n + perm[j]] = p.leq(i, j);
  }
  return bits;
}

inline bool brute_isomorphic(const Poset& p, const Poset& q) {
  if (p.size() != q.size()) return false;
  std::vector<Element> perm(p.size());
  std::iota(perm.begin(), perm.end(), 0);
  const auto target = relabelled_relation(q, perm);
  do {
    if (relabelled_relation(p, perm) == target) return true;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

// Lexicographically largest relabelled relation over all permutations.
inline std::vector<bool> brute_canonical(const Poset& p) {
  std::vector<Element> perm(p.size());
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<bool> best;
  do {
    auto bits = relabelled_relation(p, perm);
    if (bits > best) best = std::move(bits);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

// Number of isomorphism classes of n-element posets, from all labelled
// reflexive, antisymmetric, transitive relations.
inline std::size_t brute_class_count(std::size_t n) {
  std::vector<std::pair<std::size_t, std::size_t>> slots;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j) slots.emplace_back(i, j);
    }
  }
  std::set<std::vector<bool>> classes;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << slots.size()); ++mask) {
    std::vector<std::vector<bool>> r(n, std::vector<bool>(n, false));
    for (std::size_t i = 0; i < n; ++i) r[i][i] = true;
    for (std::size_t s = 0; s < slots.size(); ++s) {
      if (mask >> s & 1) r[slots[s].first][slots[s].second] = true;
    }
    bool ok = true;
    for (std::size_t i = 0; ok && i < n; ++i) {
      for (std::size_t j = 0; ok && j < n; ++j) {
        if (i != j && r[i][j] && r[j][i]) ok = false;
        for (std::size_t k = 0; ok && k < n; ++k) {
          if (r[i][j] && r[j][k] && !r[i][k]) ok = false;
        }
      }
    }
    if (!ok) continue;
    std::vector<fixpoint::SubSet> up(n, fixpoint::SubSet(n));
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (r[i][j]) up[i].set(j);
      }
    }
    classes.insert(brute_canonical(Poset::from_relation(std::move(up))));
  }
  return classes.size();
}

// Exhaustive search for a selection map on the self-maps of p, given as raw
// tables: every combination of one fixed point per map, checked against the
// pointwise order.
inline bool brute_selection_exists(const Poset& p, const std::vector<std::vector<Element>>& maps) {
  const std::size_t m = maps.size();
  std::vector<std::vector<Element>> fix(m);
  for (std::size_t k = 0; k < m; ++k) {
    for (Element x = 0; x < p.size(); ++x) {
      if (maps[k][x] == x) fix[k].push_back(x);
    }
    if (fix[k].empty()) return false;
  }
  std::vector<std::vector<bool>> below(m, std::vector<bool>(m, true));
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = 0; b < m; ++b) {
      for (Element x = 0; x < p.size(); ++x) {
        if (!p.leq(maps[a][x], maps[b][x])) below[a][b] = false;
      }
    }
  }
  std::vector<std::size_t> pick(m, 0);
  for (;;) {
    bool ok = true;
    for (std::size_t a = 0; ok && a < m; ++a) {
      for (std::size_t b = 0; ok && b < m; ++b) {
        if (below[a][b] && !p.leq(fix[a][pick[a]], fix[b][pick[b]])) ok = false;
      }
    }
    if (ok) return true;
    std::size_t k = 0;
    while (k < m && ++pick[k] == fix[k].size()) pick[k++] = 0;
    if (k == m) return false;
  }
}

inline std::vector<std::vector<Element>> tables_of(const fixpoint::MapPoset& space) {
  std::vector<std::vector<Element>> out;
  for (std::size_t k = 0; k < space.size(); ++k) {
    auto img = space.image(k);
    out.emplace_back(img.begin(), img.end());
  }
  return out;
}

// Random monotone map dom -> cod: assign in a linear extension, choosing
// uniformly among values above every already-assigned predecessor. Restarts
// when the predecessors' images have no common upper bound.
inline std::vector<Element> random_monotone(const Poset& dom, const Poset& cod, std::mt19937& rng) {
  for (;;) {
    std::vector<Element> t(dom.size(), 0);
    bool stuck = false;
    for (Element x : dom.linear_extension()) {
      std::vector<Element> options;
      for (Element v = 0; v < cod.size(); ++v) {
        bool ok = true;
        for (Element w : dom.lower_covers(x)) ok = ok && cod.leq(t[w], v);
        if (ok) options.push_back(v);
      }
      if (options.empty()) {
        stuck = true;
        break;
      }
      t[x] = options[std::uniform_int_distribution<std::size_t>(0, options.size() - 1)(rng)];
    }
    if (!stuck) return t;
  }
}

}  // namespace fixtest
