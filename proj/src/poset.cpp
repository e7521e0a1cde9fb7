#include "fixpoint/poset.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <tuple>

namespace fixpoint {

namespace {

void check_index(std::size_t n, std::size_t i) {
  if (i >= n) {
    throw Error(ErrorCode::IndexOutOfRange,
                "element " + std::to_string(i) + " not in poset of size " + std::to_string(n));
  }
}

std::uint64_t to_mask(const SubSet& s) {
  std::uint64_t m = 0;
  for (auto i = s.find_first(); i != SubSet::npos; i = s.find_next(i)) m |= std::uint64_t{1} << i;
  return m;
}

}  // namespace

Poset Poset::from_relation(std::vector<SubSet> up, std::vector<std::string> labels) {
  const std::size_t n = up.size();
  if (!labels.empty() && labels.size() != n) {
    throw Error(ErrorCode::InvalidPoset, "label count does not match element count");
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (up[i].size() != n) throw Error(ErrorCode::InvalidPoset, "relation row has wrong length");
    if (!up[i].test(i)) {
      throw Error(ErrorCode::InvalidPoset, "not reflexive at " + std::to_string(i));
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (auto j = up[i].find_next(i); j != SubSet::npos; j = up[i].find_next(j)) {
      if (up[j].test(i)) {
        throw Error(ErrorCode::InvalidPoset,
                    "not antisymmetric: " + std::to_string(i) + ", " + std::to_string(j));
      }
    }
    for (auto j = up[i].find_first(); j != SubSet::npos; j = up[i].find_next(j)) {
      if (!up[j].is_subset_of(up[i])) {
        throw Error(ErrorCode::InvalidPoset, "not transitive through " + std::to_string(j));
      }
    }
  }
  Poset p;
  p.up_ = std::move(up);
  p.labels_ = std::move(labels);
  p.finish();
  return p;
}

Poset Poset::from_covers(std::size_t n, std::span<const Cover> covers,
                         std::vector<std::string> labels) {
  std::vector<std::vector<Element>> succ(n);
  for (auto [lo, hi] : covers) {
    check_index(n, lo);
    check_index(n, hi);
    if (lo == hi) throw CycleDetected({lo, hi});
    succ[lo].push_back(hi);
  }

  // Depth-first topological sort; a back edge yields the witness cycle.
  enum class Mark { White, Grey, Black };
  std::vector<Mark> mark(n, Mark::White);
  std::vector<Element> order;
  std::vector<Element> stack;
  std::vector<std::size_t> next_child(n, 0);
  for (std::size_t root = 0; root < n; ++root) {
    if (mark[root] != Mark::White) continue;
    stack.push_back(static_cast<Element>(root));
    mark[root] = Mark::Grey;
    while (!stack.empty()) {
      const Element v = stack.back();
      if (next_child[v] < succ[v].size()) {
        const Element w = succ[v][next_child[v]++];
        if (mark[w] == Mark::Grey) {
          auto it = std::find(stack.begin(), stack.end(), w);
          std::vector<Element> cycle(it, stack.end());
          cycle.push_back(w);
          throw CycleDetected(std::move(cycle));
        }
        if (mark[w] == Mark::White) {
          mark[w] = Mark::Grey;
          stack.push_back(w);
        }
      } else {
        mark[v] = Mark::Black;
        order.push_back(v);
        stack.pop_back();
      }
    }
  }

  // `order` lists every element after all of its successors.
  std::vector<SubSet> up(n, SubSet(n));
  for (Element v : order) {
    up[v].set(v);
    for (Element w : succ[v]) up[v] |= up[w];
  }
  return from_relation(std::move(up), std::move(labels));
}

Poset Poset::chain(std::size_t n) {
  std::vector<Cover> covers;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    covers.emplace_back(static_cast<Element>(i), static_cast<Element>(i + 1));
  }
  return from_covers(n, covers);
}

Poset Poset::antichain(std::size_t n) { return from_covers(n, {}); }

void Poset::finish() {
  const std::size_t n = up_.size();
  down_.assign(n, SubSet(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (auto j = up_[i].find_first(); j != SubSet::npos; j = up_[i].find_next(j)) down_[j].set(i);
  }
  if (n <= kMaskWidth) {
    up_masks_.resize(n);
    down_masks_.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      up_masks_[i] = to_mask(up_[i]);
      down_masks_[i] = to_mask(down_[i]);
    }
  }
  lower_covers_.assign(n, {});
  upper_covers_.assign(n, {});
  for (std::size_t i = 0; i < n; ++i) {
    for (auto j = down_[i].find_first(); j != SubSet::npos; j = down_[i].find_next(j)) {
      if (j == i) continue;
      // j is covered by i iff nothing lies strictly between.
      SubSet between = up_[j] & down_[i];
      if (between.count() == 2) {
        lower_covers_[i].push_back(static_cast<Element>(j));
        upper_covers_[j].push_back(static_cast<Element>(i));
      }
    }
  }
  for (auto& v : upper_covers_) std::sort(v.begin(), v.end());

  linear_extension_.clear();
  linear_extension_.reserve(n);
  std::vector<std::size_t> pending(n);
  for (std::size_t i = 0; i < n; ++i) pending[i] = lower_covers_[i].size();
  std::set<Element> ready;
  for (std::size_t i = 0; i < n; ++i) {
    if (pending[i] == 0) ready.insert(static_cast<Element>(i));
  }
  while (!ready.empty()) {
    const Element v = *ready.begin();
    ready.erase(ready.begin());
    linear_extension_.push_back(v);
    for (Element w : upper_covers_[v]) {
      if (--pending[w] == 0) ready.insert(w);
    }
  }
}

std::vector<Cover> Poset::covers() const {
  std::vector<Cover> out;
  for (std::size_t i = 0; i < size(); ++i) {
    for (Element j : upper_covers_[i]) out.emplace_back(static_cast<Element>(i), j);
  }
  return out;
}

std::string Poset::label(Element i) const {
  if (i < labels_.size()) return labels_[i];
  return std::to_string(i);
}

std::optional<Element> Poset::top() const {
  for (std::size_t i = 0; i < size(); ++i) {
    if (down_[i].all()) return static_cast<Element>(i);
  }
  return std::nullopt;
}

std::optional<Element> Poset::bottom() const {
  for (std::size_t i = 0; i < size(); ++i) {
    if (up_[i].all()) return static_cast<Element>(i);
  }
  return std::nullopt;
}

void FiniteSpace::validate() const {
  std::set<SubSet> lookup;
  for (const auto& o : opens) {
    if (o.size() != n) throw Error(ErrorCode::InvalidSpace, "open set mask has wrong length");
    lookup.insert(o);
  }
  SubSet full(n);
  full.set();
  if (!lookup.count(SubSet(n))) throw Error(ErrorCode::InvalidSpace, "empty set is not open");
  if (!lookup.count(full)) throw Error(ErrorCode::InvalidSpace, "whole space is not open");
  for (const auto& a : lookup) {
    for (const auto& b : lookup) {
      if (!lookup.count(a | b)) throw Error(ErrorCode::InvalidSpace, "not closed under union");
      if (!lookup.count(a & b)) {
        throw Error(ErrorCode::InvalidSpace, "not closed under intersection");
      }
    }
  }
}

SubSet min_open_nbhd(const Poset& p, Element x) {
  check_index(p.size(), x);
  return p.down_set(x);
}

bool is_open(const Poset& p, const SubSet& u) {
  if (u.size() != p.size()) throw Error(ErrorCode::IndexOutOfRange, "mask length mismatch");
  for (auto x = u.find_first(); x != SubSet::npos; x = u.find_next(x)) {
    if (!p.down_set(static_cast<Element>(x)).is_subset_of(u)) return false;
  }
  return true;
}

FiniteSpace to_space(const Poset& p, SpaceOptions options) {
  const std::size_t n = p.size();
  if (n > options.max_n) throw_size_limit("open-set enumeration", n, options.max_n);
  FiniteSpace s;
  s.n = n;
  const auto& order = p.linear_extension();
  SubSet current(n);
  // Walk a linear extension; an element may join only if its lower covers did.
  auto recurse = [&](auto&& self, std::size_t k) -> void {
    if (k == n) {
      s.opens.push_back(current);
      return;
    }
    const Element x = order[k];
    self(self, k + 1);
    const auto& lc = p.lower_covers(x);
    if (std::all_of(lc.begin(), lc.end(), [&](Element y) { return current.test(y); })) {
      current.set(x);
      self(self, k + 1);
      current.reset(x);
    }
  };
  recurse(recurse, 0);
  return s;
}

Poset specialization_poset(const FiniteSpace& s) {
  s.validate();
  const std::size_t n = s.n;
  std::vector<SubSet> nbhd(n, SubSet(n));
  for (auto& u : nbhd) u.set();
  for (const auto& o : s.opens) {
    for (auto x = o.find_first(); x != SubSet::npos; x = o.find_next(x)) nbhd[x] &= o;
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (nbhd[i] == nbhd[j]) throw NotKolmogorov(static_cast<Element>(i), static_cast<Element>(j));
    }
  }
  std::vector<SubSet> up(n, SubSet(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (nbhd[i].is_subset_of(nbhd[j])) up[i].set(j);
    }
  }
  return Poset::from_relation(std::move(up));
}

std::vector<Element> t0_witness_map(const FiniteSpace& s, Element x, Element x_prime) {
  s.validate();
  check_index(s.n, x);
  check_index(s.n, x_prime);
  if (x == x_prime) throw Error(ErrorCode::NotAWitness, "witness points must be distinct");
  for (const auto& o : s.opens) {
    if (o.test(x) != o.test(x_prime)) {
      throw Error(ErrorCode::NotAWitness, "an open set separates " + std::to_string(x) + " and " +
                                              std::to_string(x_prime));
    }
  }
  std::vector<Element> f(s.n, x);
  f[x] = x_prime;

  std::set<SubSet> lookup(s.opens.begin(), s.opens.end());
  for (const auto& o : s.opens) {
    SubSet pre(s.n);
    for (std::size_t y = 0; y < s.n; ++y) {
      if (o.test(f[y])) pre.set(y);
    }
    if (!lookup.count(pre)) throw Error(ErrorCode::VerificationFailure, "witness map not continuous");
  }
  for (std::size_t y = 0; y < s.n; ++y) {
    if (f[y] == y) throw Error(ErrorCode::VerificationFailure, "witness map has a fixed point");
  }
  return f;
}

Poset product(const Poset& p, const Poset& q, ProductOptions options) {
  const std::size_t n = p.size() * q.size();
  if (n > options.max_size) throw_size_limit("product size", n, options.max_size);
  std::vector<SubSet> up(n, SubSet(n));
  for (std::size_t a = 0; a < p.size(); ++a) {
    for (std::size_t b = 0; b < q.size(); ++b) {
      auto& row = up[a * q.size() + b];
      for (auto c = p.up_set(a).find_first(); c != SubSet::npos; c = p.up_set(a).find_next(c)) {
        for (auto d = q.up_set(b).find_first(); d != SubSet::npos; d = q.up_set(b).find_next(d)) {
          row.set(c * q.size() + d);
        }
      }
    }
  }
  std::vector<std::string> labels;
  if (!p.labels().empty() || !q.labels().empty()) {
    for (std::size_t a = 0; a < p.size(); ++a) {
      for (std::size_t b = 0; b < q.size(); ++b) {
        labels.push_back("(" + p.label(a) + "," + q.label(b) + ")");
      }
    }
  }
  return Poset::from_relation(std::move(up), std::move(labels));
}

Poset dual(const Poset& p) {
  std::vector<SubSet> up;
  up.reserve(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) up.push_back(p.down_set(i));
  return Poset::from_relation(std::move(up), p.labels());
}

Poset induced(const Poset& p, const SubSet& keep) {
  std::vector<Element> kept;
  for (auto i = keep.find_first(); i != SubSet::npos; i = keep.find_next(i)) {
    kept.push_back(static_cast<Element>(i));
  }
  const std::size_t m = kept.size();
  std::vector<SubSet> up(m, SubSet(m));
  std::vector<std::string> labels;
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = 0; b < m; ++b) {
      if (p.leq(kept[a], kept[b])) up[a].set(b);
    }
    if (!p.labels().empty()) labels.push_back(p.label(kept[a]));
  }
  return Poset::from_relation(std::move(up), std::move(labels));
}

std::vector<std::size_t> components(const Poset& p) {
  const std::size_t n = p.size();
  constexpr auto unset = static_cast<std::size_t>(-1);
  std::vector<std::size_t> comp(n, unset);
  std::size_t next = 0;
  std::vector<Element> stack;
  for (std::size_t s = 0; s < n; ++s) {
    if (comp[s] != unset) continue;
    comp[s] = next;
    stack.push_back(static_cast<Element>(s));
    while (!stack.empty()) {
      const Element v = stack.back();
      stack.pop_back();
      const SubSet nbrs = p.up_set(v) | p.down_set(v);
      for (auto w = nbrs.find_first(); w != SubSet::npos; w = nbrs.find_next(w)) {
        if (comp[w] == unset) {
          comp[w] = next;
          stack.push_back(static_cast<Element>(w));
        }
      }
    }
    ++next;
  }
  return comp;
}

bool is_connected(const Poset& p) {
  const auto comp = components(p);
  return std::all_of(comp.begin(), comp.end(), [](std::size_t c) { return c == 0; });
}

namespace {

// Iterated refinement of the (down-degree, up-degree) colouring. Colours are
// ranks of sorted signatures, so they depend only on the isomorphism class.
std::vector<std::size_t> refined_colours(const Poset& p) {
  const std::size_t n = p.size();
  std::vector<std::size_t> colour(n, 0);
  std::size_t classes = 1;
  for (bool first = true;; first = false) {
    using Signature = std::tuple<std::size_t, std::size_t, std::size_t, std::vector<std::size_t>,
                                 std::vector<std::size_t>>;
    std::vector<Signature> sig(n);
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<std::size_t> below;
      std::vector<std::size_t> above;
      if (!first) {
        for (Element j : p.lower_covers(i)) below.push_back(colour[j]);
        for (Element j : p.upper_covers(i)) above.push_back(colour[j]);
        std::sort(below.begin(), below.end());
        std::sort(above.begin(), above.end());
      }
      sig[i] = {colour[i], p.down_set(i).count(), p.up_set(i).count(), std::move(below),
                std::move(above)};
    }
    std::map<Signature, std::size_t> rank;
    for (const auto& s : sig) rank.emplace(s, 0);
    std::size_t r = 0;
    for (auto& [s, v] : rank) v = r++;
    for (std::size_t i = 0; i < n; ++i) colour[i] = rank[sig[i]];
    if (!first && rank.size() == classes) break;
    classes = rank.size();
  }
  return colour;
}

struct CanonicalSearch {
  const Poset& p;
  std::vector<std::size_t> slot_colour;  // colour required at each position
  std::vector<std::size_t> colour;
  std::vector<Element> placed;
  std::vector<bool> used;
  std::vector<char> bits;
  std::vector<char> best_bits;
  std::vector<Element> best_order;
  bool have_best = false;

  void run(std::size_t k, bool strictly_better) {
    const std::size_t n = p.size();
    if (k == n) {
      if (!have_best || strictly_better) {
        best_bits = bits;
        best_order = placed;
        have_best = true;
      }
      return;
    }
    for (std::size_t v = 0; v < n; ++v) {
      if (used[v] || colour[v] != slot_colour[k]) continue;
      const std::size_t mark = bits.size();
      for (std::size_t j = 0; j < k; ++j) {
        bits.push_back(p.leq(static_cast<Element>(v), placed[j]) ? 1 : 0);
        bits.push_back(p.leq(placed[j], static_cast<Element>(v)) ? 1 : 0);
      }
      bool better = strictly_better;
      bool prune = false;
      if (have_best && !strictly_better) {
        for (std::size_t b = mark; b < bits.size(); ++b) {
          if (bits[b] != best_bits[b]) {
            if (bits[b] < best_bits[b]) {
              better = true;
            } else {
              prune = true;
            }
            break;
          }
        }
      }
      if (!prune) {
        used[v] = true;
        placed.push_back(static_cast<Element>(v));
        run(k + 1, better);
        placed.pop_back();
        used[v] = false;
      }
      bits.resize(mark);
    }
  }
};

CanonicalSearch canonical_search(const Poset& p, CanonicalOptions options) {
  if (p.size() > options.max_n) throw_size_limit("canonical form", p.size(), options.max_n);
  CanonicalSearch search{p, {}, refined_colours(p), {}, std::vector<bool>(p.size(), false), {}, {},
                         {}, false};
  search.slot_colour = search.colour;
  std::sort(search.slot_colour.begin(), search.slot_colour.end());
  search.run(0, false);
  return search;
}

}  // namespace

std::string canonical_form(const Poset& p, CanonicalOptions options) {
  const auto search = canonical_search(p, options);
  std::string out;
  out.push_back(static_cast<char>(p.size()));
  unsigned char byte = 0;
  int filled = 0;
  for (char b : search.best_bits) {
    byte = static_cast<unsigned char>((byte << 1) | static_cast<unsigned char>(b));
    if (++filled == 8) {
      out.push_back(static_cast<char>(byte));
      byte = 0;
      filled = 0;
    }
  }
  if (filled) out.push_back(static_cast<char>(byte << (8 - filled)));
  return out;
}

std::vector<Element> canonical_labeling(const Poset& p, CanonicalOptions options) {
  const auto search = canonical_search(p, options);
  std::vector<Element> perm(p.size());
  for (std::size_t pos = 0; pos < search.best_order.size(); ++pos) {
    perm[search.best_order[pos]] = static_cast<Element>(pos);
  }
  return perm;
}

std::string to_hex(const std::string& bytes) {
  static constexpr char digits[] = "0123456789abcdef";
  std::string out;
  out.reserve(bytes.size() * 2);
  for (unsigned char c : bytes) {
    out.push_back(digits[c >> 4]);
    out.push_back(digits[c & 0xf]);
  }
  return out;
}

}  // namespace fixpoint
