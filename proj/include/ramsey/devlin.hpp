#pragma once

// Embedding types of finite subsets of the colored binary tree.
//
// The meet closure A^ of a finite set A is the minimal rooted subtree
// containing it.  Two sets are Em-equivalent when a bijection of their meet
// closures preserves the tree order, the relative order of lengths,
// membership, the passing digits t(|s|) for |s| < |t|, and level colors.
// em_code computes a canonical invariant deciding Em-equivalence without
// searching for the bijection: the closure is listed in the dense node order,
// which every Em-bijection preserves, so positionwise equality of the
// recorded data is both necessary and sufficient.
//
// A set realizes a Devlin type when its closure has pairwise distinct
// lengths, the set is exactly the closure's terminal nodes, and every
// off-path passing digit is 0.  Counting Devlin types of a fixed partitioned
// order yields the odd tangent derivatives; the count here treats interior
// (meet) colors as non-distinguishing, which is what makes the count depend
// on the size only.  build_antichain produces the explicit antichain whose
// finite subsets realize Devlin types.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "ramsey/pstruct.hpp"
#include "ramsey/trees.hpp"

namespace ramsey {

struct FiniteSubset {
  ColoredTree tree;
  std::vector<Node> nodes;  // sorted by lex_less, duplicate-free
};

inline FiniteSubset make_subset(const ColoredTree& tree, std::vector<Node> nodes) {
  for (const Node& n : nodes) {
    if (static_cast<int>(n.size()) >= tree.height)
      throw std::invalid_argument("make_subset: node '" + n + "' too deep for the host");
    for (char c : n)
      if (c != '0' && c != '1') throw std::invalid_argument("make_subset: node bits must be 0/1");
  }
  std::sort(nodes.begin(), nodes.end(), lex_less);
  nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
  return FiniteSubset{tree, std::move(nodes)};
}

inline FiniteSubset meet_closure(const FiniteSubset& a) {
  if (a.nodes.empty()) throw std::invalid_argument("meet_closure: empty subset");
  std::set<Node> acc(a.nodes.begin(), a.nodes.end());
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<Node> cur(acc.begin(), acc.end());
    for (std::size_t i = 0; i < cur.size(); ++i)
      for (std::size_t j = i + 1; j < cur.size(); ++j)
        if (acc.insert(meet(cur[i], cur[j])).second) grew = true;
  }
  std::vector<Node> out(acc.begin(), acc.end());
  std::sort(out.begin(), out.end(), lex_less);
  return FiniteSubset{a.tree, std::move(out)};
}

// Colors of the closure's occupied levels, in increasing length order.
inline std::vector<int> sigma_of(const FiniteSubset& a) {
  const FiniteSubset cl = meet_closure(a);
  std::vector<int> lengths;
  for (const Node& n : cl.nodes) lengths.push_back(static_cast<int>(n.size()));
  std::sort(lengths.begin(), lengths.end());
  lengths.erase(std::unique(lengths.begin(), lengths.end()), lengths.end());
  std::vector<int> out;
  out.reserve(lengths.size());
  for (int l : lengths) out.push_back(a.tree.color_at(l));
  return out;
}

struct EmCode {
  int size = 0;
  std::vector<int> parent;                 // index of the immediate predecessor, -1 at the root
  std::vector<int> length_class;           // rank of |v_i| among the distinct lengths
  std::vector<int> colors;                 // level colors; -1 where masked
  std::vector<std::uint8_t> member;        // v_i in A
  std::vector<std::vector<int>> digits;    // v_i's bits at the shorter occupied lengths

  friend bool operator==(const EmCode& a, const EmCode& b) = default;

  // Canonical serialization with a stable field order.
  std::string to_json() const {
    std::string s = "{\"size\":" + std::to_string(size);
    auto arr = [&s](const char* name, const std::vector<int>& v) {
      s += ",\"";
      s += name;
      s += "\":[";
      for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ',';
        s += std::to_string(v[i]);
      }
      s += ']';
    };
    arr("parent", parent);
    arr("lengthClass", length_class);
    arr("colors", colors);
    s += ",\"member\":[";
    for (std::size_t i = 0; i < member.size(); ++i) {
      if (i) s += ',';
      s += member[i] ? '1' : '0';
    }
    s += "],\"digits\":[";
    for (std::size_t i = 0; i < digits.size(); ++i) {
      if (i) s += ',';
      s += '[';
      for (std::size_t j = 0; j < digits[i].size(); ++j) {
        if (j) s += ',';
        s += std::to_string(digits[i][j]);
      }
      s += ']';
    }
    s += "]}";
    return s;
  }
};

// Canonical code of the embedding type.  With interior_colors = false the
// colors of non-members (the meet nodes) are masked; Devlin-type counting
// uses that variant so the count depends only on the member structure.
inline EmCode em_code(const FiniteSubset& a, bool interior_colors = true) {
  const FiniteSubset cl = meet_closure(a);
  const std::vector<Node>& vs = cl.nodes;
  const int r = static_cast<int>(vs.size());
  EmCode code;
  code.size = r;

  std::vector<int> lengths;
  for (const Node& n : vs) lengths.push_back(static_cast<int>(n.size()));
  std::vector<int> distinct = lengths;
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());

  for (int i = 0; i < r; ++i) {
    const Node& v = vs[i];
    code.length_class.push_back(static_cast<int>(
        std::lower_bound(distinct.begin(), distinct.end(), lengths[i]) - distinct.begin()));
    const bool mem =
        std::binary_search(a.nodes.begin(), a.nodes.end(), v, lex_less);
    code.member.push_back(mem ? 1 : 0);
    code.colors.push_back(interior_colors || mem ? a.tree.color_at(lengths[i]) : -1);
    int par = -1, par_len = -1;
    for (int j = 0; j < r; ++j)
      if (j != i && is_prefix(vs[j], v) && lengths[j] > par_len) {
        par = j;
        par_len = lengths[j];
      }
    code.parent.push_back(par);
  }
  for (int i = 0; i < r; ++i) {
    std::vector<int> row;
    for (int j = 0; j < r; ++j)
      if (code.length_class[j] < code.length_class[i]) row.push_back(vs[i][lengths[j]] - '0');
    code.digits.push_back(std::move(row));
  }
  return code;
}

inline EmCode devlin_type_code(const FiniteSubset& a) { return em_code(a, false); }

// Oracle for the code: does a bijection of the closures satisfying all five
// clauses exist?  Quadratic-factorial search, test sizes only.
inline bool em_equivalent_by_search(const FiniteSubset& a, const FiniteSubset& b) {
  const FiniteSubset ca = meet_closure(a), cb = meet_closure(b);
  if (ca.nodes.size() != cb.nodes.size()) return false;
  const int r = static_cast<int>(ca.nodes.size());
  std::vector<int> perm(r);
  for (int i = 0; i < r; ++i) perm[i] = i;
  auto len = [](const Node& n) { return static_cast<int>(n.size()); };
  do {
    bool ok = true;
    for (int i = 0; i < r && ok; ++i) {
      const Node& s = ca.nodes[i];
      const Node& fs = cb.nodes[perm[i]];
      if ((a.tree.color_at(len(s))) != b.tree.color_at(len(fs))) ok = false;
      if (ok && std::binary_search(a.nodes.begin(), a.nodes.end(), s, lex_less) !=
                    std::binary_search(b.nodes.begin(), b.nodes.end(), fs, lex_less))
        ok = false;
      for (int j = 0; j < r && ok; ++j) {
        const Node& t = ca.nodes[j];
        const Node& ft = cb.nodes[perm[j]];
        if (is_prefix(s, t) != is_prefix(fs, ft)) ok = false;
        if (ok && (len(s) < len(t)) != (len(fs) < len(ft))) ok = false;
        if (ok && len(s) < len(t) && t[len(s)] != ft[len(fs)]) ok = false;
      }
    }
    if (ok) return true;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

// Devlin type: the set is exactly the closure's terminal nodes, closure
// lengths are pairwise distinct, and all off-path passing digits are 0.
inline bool is_devlin_type(const FiniteSubset& a) {
  if (a.nodes.empty()) return false;
  const FiniteSubset cl = meet_closure(a);
  const std::vector<Node>& vs = cl.nodes;
  std::set<int> seen_lengths;
  for (const Node& n : vs)
    if (!seen_lengths.insert(static_cast<int>(n.size())).second) return false;
  for (const Node& n : vs) {
    bool terminal = true;
    for (const Node& other : vs)
      if (other != n && is_prefix(n, other)) {
        terminal = false;
        break;
      }
    if (terminal != std::binary_search(a.nodes.begin(), a.nodes.end(), n, lex_less)) return false;
  }
  for (const Node& s : vs)
    for (const Node& t : vs)
      if (s.size() < t.size() && !is_prefix(s, t) && t[s.size()] != '0') return false;
  return true;
}

// The unique Em-equivalent copy of a inside the strong subtree v.  The image
// of each member walks down v pinned by the passing digits: leaving level j
// it takes the branch given by the member's bit at the j-th occupied length.
inline FiniteSubset envelope(const StrongSubtree& v, const FiniteSubset& a) {
  if (!(v.host->tree == a.tree))
    throw std::invalid_argument("envelope: subtree and subset live in different hosts");
  for (int i = 0; i < v.host->height(); ++i)
    if (v.host->levels[i] != i || !v.host->complete_levels)
      throw std::invalid_argument("envelope: v must be a strong subtree of the full host");
  const std::vector<int> sa = sigma_of(a);
  if (sa != induced_sequence(v))
    throw std::invalid_argument("envelope: coloring sequence of v differs from sigma_A");

  const FiniteSubset cl = meet_closure(a);
  std::vector<int> occupied;
  for (const Node& n : cl.nodes) occupied.push_back(static_cast<int>(n.size()));
  std::sort(occupied.begin(), occupied.end());
  occupied.erase(std::unique(occupied.begin(), occupied.end()), occupied.end());

  std::vector<Node> images;
  for (const Node& t : a.nodes) {
    const int rank = static_cast<int>(
        std::lower_bound(occupied.begin(), occupied.end(), static_cast<int>(t.size())) -
        occupied.begin());
    Node cur = v.root();
    for (int j = 0; j < rank; ++j) {
      const Node probe = cur + t[occupied[j]];
      cur = detail::unique_extension(v.levels[j + 1], probe, v.ambient_level(j + 1), "envelope");
    }
    images.push_back(std::move(cur));
  }
  return make_subset(a.tree, std::move(images));
}

inline bool realizes(const FiniteSubset& a, const PnStructure& x) {
  if (a.tree.convention != ColorConvention::OneBased || a.tree.n_colors != x.n_parts)
    return false;
  if (static_cast<int>(a.nodes.size()) != x.size()) return false;
  for (int i = 0; i < x.size(); ++i)
    if (a.tree.color_at(static_cast<int>(a.nodes[i].size())) != x.parts[i]) return false;
  return true;
}

namespace detail {

// Binary leaf-trees with ordered leaves; node 0 is the root, leaves carry
// left = right = -1.
struct ShapeNode {
  int left = -1;
  int right = -1;
};
using Shape = std::vector<ShapeNode>;

inline std::vector<Shape> enumerate_shapes(int leaves) {
  if (leaves == 1) return {Shape{ShapeNode{}}};
  std::vector<Shape> out;
  for (int lm = 1; lm < leaves; ++lm) {
    for (const Shape& ls : enumerate_shapes(lm)) {
      for (const Shape& rs : enumerate_shapes(leaves - lm)) {
        Shape s;
        s.push_back(ShapeNode{1, 1 + static_cast<int>(ls.size())});
        for (const ShapeNode& n : ls)
          s.push_back(ShapeNode{n.left < 0 ? -1 : n.left + 1, n.right < 0 ? -1 : n.right + 1});
        const int off = 1 + static_cast<int>(ls.size());
        for (const ShapeNode& n : rs)
          s.push_back(
              ShapeNode{n.left < 0 ? -1 : n.left + off, n.right < 0 ? -1 : n.right + off});
        out.push_back(std::move(s));
      }
    }
  }
  return out;
}

inline void leaf_order(const Shape& s, int at, std::vector<int>& out) {
  if (s[at].left < 0) {
    out.push_back(at);
    return;
  }
  leaf_order(s, s[at].left, out);
  leaf_order(s, s[at].right, out);
}

inline void linear_extensions(const Shape& s, std::vector<std::vector<int>>& out) {
  const int r = static_cast<int>(s.size());
  std::vector<int> parent(r, -1);
  for (int i = 0; i < r; ++i) {
    if (s[i].left >= 0) parent[s[i].left] = i;
    if (s[i].right >= 0) parent[s[i].right] = i;
  }
  std::vector<int> order;
  std::vector<bool> placed(r, false);
  std::function<void()> rec = [&]() {
    if (static_cast<int>(order.size()) == r) {
      out.push_back(order);
      return;
    }
    for (int i = 0; i < r; ++i) {
      if (placed[i]) continue;
      if (parent[i] >= 0 && !placed[parent[i]]) continue;
      placed[i] = true;
      order.push_back(i);
      rec();
      order.pop_back();
      placed[i] = false;
    }
  };
  rec();
}

// Least strictly increasing lengths along the extension order; leaves are
// pinned to the residues realizing x's parts, meets are free.  Returns the
// largest length used, or -1 when a constraint cannot be met (never happens
// for the cyclic host).
inline int greedy_lengths(const Shape& shape, const std::vector<int>& order,
                          const std::vector<int>& leaf_rank, const PnStructure& x,
                          std::vector<int>& len_out) {
  const int n = x.n_parts;
  len_out.assign(shape.size(), -1);
  int prev = -1;
  for (int node : order) {
    int l = prev + 1;
    if (shape[node].left < 0) {
      const int want = x.parts[leaf_rank[node]] - 1;  // color c at lengths == c-1 mod n
      while (l % n != want) ++l;
    }
    len_out[node] = l;
    prev = l;
  }
  return prev;
}

inline FiniteSubset materialize_profile(const Shape& shape, const std::vector<int>& len,
                                        const ColoredTree& host) {
  std::vector<Node> bits(shape.size());
  std::function<void(int)> build = [&](int at) {
    if (shape[at].left < 0) return;
    const int l = shape[at].left, r = shape[at].right;
    bits[l] = bits[at] + '0' + Node(len[l] - len[at] - 1, '0');
    bits[r] = bits[at] + '1' + Node(len[r] - len[at] - 1, '0');
    build(l);
    build(r);
  };
  bits[0] = Node(len[0], '0');
  build(0);
  std::vector<Node> leaves;
  for (std::size_t i = 0; i < shape.size(); ++i)
    if (shape[i].left < 0) leaves.push_back(bits[i]);
  return make_subset(host, std::move(leaves));
}

}  // namespace detail

class devlin_cap_error : public std::runtime_error {
 public:
  devlin_cap_error(long partial, int cap)
      : std::runtime_error("count_devlin_types: cap height " + std::to_string(cap) +
                           " reached before stabilization; partial count " +
                           std::to_string(partial)),
        partial_(partial),
        cap_(cap) {}
  long partial() const { return partial_; }
  int cap() const { return cap_; }

 private:
  long partial_;
  int cap_;
};

// All Devlin types of x realizable within the given host height, one code
// per type, produced from materialized witness subsets.
inline std::vector<EmCode> devlin_type_inventory(const PnStructure& x, int height) {
  validate(x);
  if (x.size() < 1) throw std::invalid_argument("devlin_type_inventory: empty structure");
  const ColoredTree host = ColoredTree::qn(height, x.n_parts);
  std::map<std::string, EmCode> found;
  for (const detail::Shape& shape : detail::enumerate_shapes(x.size())) {
    std::vector<int> leaves;
    detail::leaf_order(shape, 0, leaves);
    std::vector<int> leaf_rank(shape.size(), -1);
    for (std::size_t q = 0; q < leaves.size(); ++q) leaf_rank[leaves[q]] = static_cast<int>(q);
    std::vector<std::vector<int>> orders;
    detail::linear_extensions(shape, orders);
    for (const std::vector<int>& order : orders) {
      std::vector<int> len;
      const int max_len = detail::greedy_lengths(shape, order, leaf_rank, x, len);
      if (max_len < 0 || max_len >= height) continue;
      const FiniteSubset witness = detail::materialize_profile(shape, len, host);
      if (!is_devlin_type(witness) || !realizes(witness, x))
        throw std::logic_error("devlin_type_inventory: materialized witness is not a Devlin type");
      EmCode code = devlin_type_code(witness);
      found.emplace(code.to_json(), std::move(code));
    }
  }
  std::vector<EmCode> out;
  out.reserve(found.size());
  for (auto& [k, v] : found) out.push_back(std::move(v));
  return out;
}

// Number of Devlin types realizing x, stabilized in the host height: the
// bound grows until two consecutive heights agree, capped at 4*size*n + 4.
inline long count_devlin_types(const PnStructure& x, int height_bound) {
  validate(x);
  if (x.size() < 1) throw std::invalid_argument("count_devlin_types: empty structure");
  if (height_bound < 1) throw std::invalid_argument("count_devlin_types: height bound must be >= 1");
  const int cap = 4 * x.size() * x.n_parts + 4;
  long prev = static_cast<long>(devlin_type_inventory(x, height_bound).size());
  for (int h = height_bound; h + 1 <= cap; ++h) {
    const long next = static_cast<long>(devlin_type_inventory(x, h + 1).size());
    if (next == prev) return next;
    prev = next;
  }
  throw devlin_cap_error(prev, cap);
}

struct AntichainEntry {
  Node address;  // f
  Node w;        // w_f
  Node x;        // x_f = w_f ^ 01 ^ 0^(|f| mod n)
};

struct AntichainModel {
  int n_colors = 1;
  std::vector<AntichainEntry> entries;  // breadth-lex order of addresses
};

namespace detail {

inline void check_antichain_clauses(int n, const std::vector<AntichainEntry>& es) {
  auto fail = [](const std::string& what) {
    throw std::logic_error("build_antichain: clause violation: " + what);
  };
  std::map<Node, const AntichainEntry*> by_address;
  std::set<Node> w_set;
  for (const AntichainEntry& e : es) {
    by_address[e.address] = &e;
    w_set.insert(e.w);
  }
  if (es.empty() || !es[0].address.empty() || !es[0].w.empty()) fail("root(W) is not the empty node");
  for (std::size_t i = 0; i < es.size(); ++i) {
    if (static_cast<int>(es[i].w.size()) != n * static_cast<int>(i))
      fail("W does not occupy exactly the multiples-of-n levels in order");
    const int im = static_cast<int>(es[i].address.size()) % n;
    if (es[i].x != es[i].w + "01" + Node(im, '0')) fail("x_f formula");
  }
  for (std::size_t i = 0; i < es.size(); ++i)
    for (std::size_t j = 0; j < es.size(); ++j) {
      if (i == j) continue;
      const AntichainEntry& a = es[i];
      const AntichainEntry& b = es[j];
      // same W-level: shorter address first in lex implies shorter w
      if (a.address.size() == b.address.size() && a.address < b.address &&
          a.w.size() >= b.w.size())
        fail("length order within a W-level");
      if (a.address.size() < b.address.size() && a.w.size() >= b.w.size())
        fail("length order across W-levels");
      if (lex_less(a.address, b.address) != lex_less(a.w, b.w)) fail("order isomorphism with W");
      const Node m = meet(a.w, b.w);
      const Node fm = meet(a.address, b.address);
      const auto it = by_address.find(fm);
      if (it == by_address.end() || it->second->w != m) fail("meet closure of W");
    }
  for (const AntichainEntry& e : es) {
    for (std::size_t cut = 0; cut < e.w.size(); ++cut) {
      const Node t = e.w.substr(0, cut);
      if (w_set.count(t)) continue;
      if (e.w[cut] != '0') fail("paths leave W through 1-branches");
    }
  }
}

}  // namespace detail

// First `count` pairs (w_f, x_f) over addresses in breadth-lex order.  The
// W clauses are re-verified on the generated prefix and any violation is a
// bug surfaced loudly.
inline AntichainModel build_antichain(int n, int count) {
  if (n < 1 || count < 1) throw std::invalid_argument("build_antichain: n, count must be >= 1");
  AntichainModel model;
  model.n_colors = n;
  std::vector<Node> addresses{Node{}};
  for (int len = 1; static_cast<int>(addresses.size()) < count; ++len) {
    std::vector<Node> level = detail::all_nodes_at(len);
    addresses.insert(addresses.end(), level.begin(), level.end());
  }
  addresses.resize(count);

  std::map<Node, Node> w;  // address -> w_f
  int index = 0;
  for (const Node& f : addresses) {
    const int target_len = n * index++;
    if (f.empty()) {
      w[f] = Node{};
    } else {
      const Node parent = f.substr(0, f.size() - 1);
      const Node& wp = w.at(parent);
      w[f] = wp + f.back() + Node(target_len - static_cast<int>(wp.size()) - 1, '0');
    }
  }
  for (const Node& f : addresses) {
    const int im = static_cast<int>(f.size()) % n;
    model.entries.push_back(AntichainEntry{f, w.at(f), w.at(f) + "01" + Node(im, '0')});
  }
  detail::check_antichain_clauses(n, model.entries);
  return model;
}

// Comparable pairs among the generated x_f (indices into entries).
inline std::vector<std::pair<int, int>> antichain_violations(const AntichainModel& m) {
  std::vector<std::pair<int, int>> out;
  for (std::size_t i = 0; i < m.entries.size(); ++i)
    for (std::size_t j = i + 1; j < m.entries.size(); ++j) {
      const Node& a = m.entries[i].x;
      const Node& b = m.entries[j].x;
      if (is_prefix(a, b) || is_prefix(b, a)) out.emplace_back(static_cast<int>(i),
                                                               static_cast<int>(j));
    }
  return out;
}

}  // namespace ramsey
