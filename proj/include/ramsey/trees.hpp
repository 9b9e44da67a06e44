#pragma once

// Truncated colored binary trees and Milliken-style strong subtrees.
//
// Nodes are 0/1 strings ("" is the root); a tree of height h has levels
// 0..h-1 and every level carries a color.  Two palette conventions coexist
// and are carried as data: OneBased colors 1..n (the partitioned-rationals
// host, sigma(i) = (i mod n) + 1) and ZeroBased colors 0..p-1 (the induction
// host, sigma(k) = k mod p).
//
// Hosts for subtree enumeration are explicit leveled trees (LevelTree), which
// uniformly covers the full binary tree, the q-image obtained by deleting the
// last-color levels, and strong subtrees re-used as hosts.  A strong subtree
// selects some host levels, has a single root, and picks exactly one
// successor through every immediate host successor of each non-maximal node.
//
// sigma_star realizes the level-by-level lifting construction: given a strong
// subtree s of the q-host with sequence q(sigma), it builds the unique strong
// subtree of the full tree with induced sequence sigma that satisfies the
// star property and q-projects into s level by level.

#include <algorithm>
#include <functional>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ramsey/errors.hpp"

namespace ramsey {

using Node = std::string;

inline bool is_prefix(const Node& a, const Node& b) {
  return a.size() <= b.size() && b.compare(0, a.size(), a) == 0;
}

inline Node meet(const Node& s, const Node& t) {
  std::size_t i = 0;
  const std::size_t lim = std::min(s.size(), t.size());
  while (i < lim && s[i] == t[i]) ++i;
  return s.substr(0, i);
}

// Dense order on nodes: a node sits above its 0-extensions and below its
// 1-extensions; incomparable nodes compare by the bit after their meet.
inline bool lex_less(const Node& a, const Node& b) {
  if (a == b) return false;
  if (is_prefix(a, b)) return b[a.size()] == '1';
  if (is_prefix(b, a)) return a[b.size()] == '0';
  const Node m = meet(a, b);
  return a[m.size()] < b[m.size()];
}

enum class ColorConvention { OneBased, ZeroBased };

struct ColoredTree {
  int height = 0;
  int n_colors = 1;
  ColorConvention convention = ColorConvention::OneBased;
  std::vector<int> sigma;  // sigma[i] = color of level i

  int color_at(int level) const { return sigma[level]; }

  // Host of the n-partitioned rationals: colors cycle 1..n.
  static ColoredTree qn(int height, int n) {
    ColoredTree t{height, n, ColorConvention::OneBased, {}};
    for (int i = 0; i < height; ++i) t.sigma.push_back((i % n) + 1);
    return t;
  }

  // Induction host: palette 0..palette-1, colors cycle k mod palette.
  static ColoredTree milliken(int height, int palette) {
    ColoredTree t{height, palette, ColorConvention::ZeroBased, {}};
    for (int k = 0; k < height; ++k) t.sigma.push_back(k % palette);
    return t;
  }

  friend bool operator==(const ColoredTree& a, const ColoredTree& b) = default;
};

inline void validate(const ColoredTree& t) {
  if (t.height < 0 || t.n_colors < 1) throw std::invalid_argument("ColoredTree: bad parameters");
  if (static_cast<int>(t.sigma.size()) != t.height)
    throw std::invalid_argument("ColoredTree: sigma must assign a color to every level");
  const int lo = t.convention == ColorConvention::ZeroBased ? 0 : 1;
  const int hi = t.convention == ColorConvention::ZeroBased ? t.n_colors - 1 : t.n_colors;
  for (int c : t.sigma)
    if (c < lo || c > hi) throw std::invalid_argument("ColoredTree: color outside palette");
}

inline bool is_mod_coloring(const ColoredTree& t) {
  if (t.convention != ColorConvention::ZeroBased) return false;
  for (int k = 0; k < t.height; ++k)
    if (t.sigma[k] != k % t.n_colors) return false;
  return true;
}

// Explicit leveled host: level i holds nodes of one ambient length, each node
// at level i+1 extends exactly one node at level i.
struct LevelTree {
  ColoredTree tree;                     // ambient color source
  std::vector<int> levels;              // ambient level per host level
  std::vector<std::vector<Node>> nodes; // sorted within each level
  bool complete_levels = false;         // every ambient node at each kept level

  int height() const { return static_cast<int>(levels.size()); }
};

using HostPtr = std::shared_ptr<const LevelTree>;

namespace detail {

inline std::vector<Node> all_nodes_at(int level) {
  std::vector<Node> out;
  out.reserve(std::size_t{1} << level);
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << level); ++mask) {
    Node n(level, '0');
    for (int b = 0; b < level; ++b)
      if ((mask >> (level - 1 - b)) & 1u) n[b] = '1';
    out.push_back(std::move(n));
  }
  return out;
}

}  // namespace detail

inline HostPtr full_host(const ColoredTree& t) {
  auto h = std::make_shared<LevelTree>();
  h->tree = t;
  h->complete_levels = true;
  for (int l = 0; l < t.height; ++l) {
    h->levels.push_back(l);
    h->nodes.push_back(detail::all_nodes_at(l));
  }
  return h;
}

// Image of the map sending last-color nodes to their parents: exactly the
// levels whose color is not the last palette color.
inline HostPtr q_host(const ColoredTree& t) {
  if (t.convention != ColorConvention::ZeroBased)
    throw std::invalid_argument("q_host: requires the zero-based palette");
  const int last = t.n_colors - 1;
  auto h = std::make_shared<LevelTree>();
  h->tree = t;
  h->complete_levels = true;
  for (int l = 0; l < t.height; ++l) {
    if (t.sigma[l] == last) continue;
    h->levels.push_back(l);
    h->nodes.push_back(detail::all_nodes_at(l));
  }
  return h;
}

struct StrongSubtree {
  HostPtr host;
  std::vector<int> level_indices;           // indices into host->levels
  std::vector<std::vector<Node>> levels;    // sorted node sets

  int height() const { return static_cast<int>(level_indices.size()); }
  int ambient_level(int j) const { return host->levels[level_indices[j]]; }
  const Node& root() const { return levels[0][0]; }

  // Ambient levels of this subtree's own levels, in order.
  std::vector<int> ambient_levels() const {
    std::vector<int> out;
    out.reserve(level_indices.size());
    for (int j = 0; j < height(); ++j) out.push_back(ambient_level(j));
    return out;
  }

  // Reinterprets the subtree as a host in its own right.
  HostPtr as_host() const {
    auto h = std::make_shared<LevelTree>();
    h->tree = host->tree;
    h->levels = ambient_levels();
    h->nodes = levels;
    h->complete_levels = false;
    return h;
  }
};

inline std::string subtree_key(const StrongSubtree& s) {
  std::string key;
  for (int j = 0; j < s.height(); ++j) {
    key += std::to_string(s.ambient_level(j));
    key += ':';
    for (const Node& n : s.levels[j]) {
      key += n;
      key += ',';
    }
    key += ';';
  }
  return key;
}

inline std::vector<int> induced_sequence(const StrongSubtree& s) {
  std::vector<int> out;
  out.reserve(s.height());
  for (int j = 0; j < s.height(); ++j) out.push_back(s.host->tree.color_at(s.ambient_level(j)));
  return out;
}

namespace detail {

inline std::vector<Node> nodes_extending(const std::vector<Node>& level, const Node& prefix) {
  std::vector<Node> out;
  for (const Node& n : level)
    if (is_prefix(prefix, n)) out.push_back(n);
  return out;
}

// Immediate successors of u in the host, given u's host level index.
inline std::vector<Node> host_children(const LevelTree& host, int level_index, const Node& u) {
  if (level_index + 1 >= host.height()) return {};
  return nodes_extending(host.nodes[level_index + 1], u);
}

using NodeFilter = std::function<bool(int, const Node&)>;  // (subtree level, node)

// Enumerates strong subtrees of the host on a fixed tuple of host levels,
// optionally discarding nodes rejected by the filter (used to prune searches
// whose target condition is falsified by any rejected node).
inline void enumerate_on_levels(const HostPtr& host, const std::vector<int>& idx,
                                const NodeFilter& filter, std::uint64_t limit,
                                std::vector<StrongSubtree>& out) {
  const int m = static_cast<int>(idx.size());
  std::vector<std::vector<Node>> acc(m);

  std::function<void(int)> descend = [&](int j) {
    if (j == m) {
      if (limit > 0 && out.size() >= limit)
        throw budget_error("strong subtree enumeration exceeded its limit",
                           ">" + std::to_string(out.size()), std::to_string(limit));
      out.push_back(StrongSubtree{host, idx, acc});
      return;
    }
    // slots: one subtree successor through every immediate host successor of
    // every node on the previous level
    std::vector<std::vector<Node>> slots;
    for (const Node& u : acc[j - 1]) {
      for (const Node& w : host_children(*host, idx[j - 1], u)) {
        std::vector<Node> cands = nodes_extending(host->nodes[idx[j]], w);
        if (!filter) {
          slots.push_back(std::move(cands));
        } else {
          std::vector<Node> kept;
          for (Node& c : cands)
            if (filter(j, c)) kept.push_back(std::move(c));
          slots.push_back(std::move(kept));
        }
        if (slots.back().empty()) return;  // dead branch
      }
    }
    std::vector<Node> chosen(slots.size());
    std::function<void(std::size_t)> fill = [&](std::size_t si) {
      if (si == slots.size()) {
        acc[j] = chosen;
        std::sort(acc[j].begin(), acc[j].end());
        descend(j + 1);
        return;
      }
      for (const Node& c : slots[si]) {
        chosen[si] = c;
        fill(si + 1);
      }
    };
    fill(0);
  };

  for (const Node& r : host->nodes[idx[0]]) {
    if (filter && !filter(0, r)) continue;
    acc[0] = {r};
    descend(1);
  }
}

inline void level_tuples(int host_height, int m, std::vector<std::vector<int>>& out) {
  std::vector<int> cur;
  std::function<void(int)> rec = [&](int start) {
    if (static_cast<int>(cur.size()) == m) {
      out.push_back(cur);
      return;
    }
    for (int i = start; i < host_height; ++i) {
      cur.push_back(i);
      rec(i + 1);
      cur.pop_back();
    }
  };
  rec(0);
}

}  // namespace detail

// Exact number of strong subtrees on a given host level tuple; complete-level
// hosts only.  Every factor is a power of two.  Saturates at UINT64_MAX.
inline std::uint64_t count_strong_subtrees_on_levels(const LevelTree& host,
                                                     const std::vector<int>& idx) {
  if (!host.complete_levels)
    throw std::invalid_argument("count_strong_subtrees_on_levels: complete-level hosts only");
  std::uint64_t exponent = host.levels[idx[0]];  // roots: 2^L0
  std::uint64_t nodes = 1;
  for (std::size_t j = 0; j + 1 < idx.size(); ++j) {
    const std::uint64_t branch_bits = host.levels[idx[j] + 1] - host.levels[idx[j]];
    const std::uint64_t choice_bits = host.levels[idx[j + 1]] - host.levels[idx[j] + 1];
    if (branch_bits > 20 || nodes > (std::uint64_t{1} << 40)) return UINT64_MAX;
    const std::uint64_t branches = std::uint64_t{1} << branch_bits;
    exponent += choice_bits * branches * nodes;
    if (exponent >= 63) return UINT64_MAX;
    nodes *= branches;
  }
  return std::uint64_t{1} << exponent;
}

inline std::vector<StrongSubtree> enumerate_strong_subtrees(const HostPtr& host, int m,
                                                            std::uint64_t limit = 0) {
  std::vector<StrongSubtree> out;
  if (m <= 0 || m > host->height()) return out;
  std::vector<std::vector<int>> tuples;
  detail::level_tuples(host->height(), m, tuples);
  for (const std::vector<int>& idx : tuples)
    detail::enumerate_on_levels(host, idx, nullptr, limit, out);
  return out;
}

inline std::vector<StrongSubtree> enumerate_strong_subtrees(const ColoredTree& t, int m,
                                                            std::uint64_t limit = 0) {
  return enumerate_strong_subtrees(full_host(t), m, limit);
}

// Validity: levels inside host levels, single root, and exactly one successor
// through every immediate host successor of every non-maximal node.
inline bool is_strong_subtree(const LevelTree& host, const StrongSubtree& st) {
  const int m = st.height();
  if (m == 0 || st.levels.size() != static_cast<std::size_t>(m)) return false;
  for (int j = 0; j < m; ++j) {
    const int idx = st.level_indices[j];
    if (idx < 0 || idx >= host.height()) return false;
    if (j > 0 && st.level_indices[j - 1] >= idx) return false;
    if (st.levels[j].empty()) return false;
    if (!std::is_sorted(st.levels[j].begin(), st.levels[j].end())) return false;
    if (std::adjacent_find(st.levels[j].begin(), st.levels[j].end()) != st.levels[j].end())
      return false;
    for (const Node& n : st.levels[j]) {
      const std::vector<Node>& lvl = host.nodes[idx];
      if (!std::binary_search(lvl.begin(), lvl.end(), n)) return false;
    }
  }
  if (st.levels[0].size() != 1) return false;
  for (int j = 0; j + 1 < m; ++j) {
    std::size_t covered = 0;
    for (const Node& u : st.levels[j]) {
      for (const Node& w : detail::host_children(host, st.level_indices[j], u)) {
        int hits = 0;
        for (const Node& c : st.levels[j + 1])
          if (is_prefix(w, c)) ++hits;
        if (hits != 1) return false;
        ++covered;
      }
    }
    if (covered != st.levels[j + 1].size()) return false;
  }
  return true;
}

inline std::vector<StrongSubtree> filter_by_sequence(const HostPtr& host,
                                                     const std::vector<int>& sigma,
                                                     std::uint64_t limit = 0) {
  std::vector<StrongSubtree> out;
  const int m = static_cast<int>(sigma.size());
  if (m == 0 || m > host->height()) return out;  // empty sequence: no subtrees
  std::vector<std::vector<int>> tuples;
  detail::level_tuples(host->height(), m, tuples);
  for (const std::vector<int>& idx : tuples) {
    bool match = true;
    for (int j = 0; j < m && match; ++j)
      match = host->tree.color_at(host->levels[idx[j]]) == sigma[j];
    if (match) detail::enumerate_on_levels(host, idx, nullptr, limit, out);
  }
  return out;
}

inline std::vector<StrongSubtree> filter_by_sequence(const ColoredTree& t,
                                                     const std::vector<int>& sigma,
                                                     std::uint64_t limit = 0) {
  return filter_by_sequence(full_host(t), sigma, limit);
}

// q: last-color nodes drop to their parents, everything else is fixed.
inline Node q_map(const ColoredTree& t, const Node& v) {
  if (!is_mod_coloring(t))
    throw std::invalid_argument("q_map: tree must carry the cyclic zero-based coloring");
  if (static_cast<int>(v.size()) >= t.height) throw std::invalid_argument("q_map: node too deep");
  if (t.color_at(static_cast<int>(v.size())) != t.n_colors - 1) return v;
  if (v.empty()) throw std::invalid_argument("q_map: root carries the last color");
  return v.substr(0, v.size() - 1);
}

// Coloring sequences transfer along q by renaming the last color to its
// predecessor.
inline std::vector<int> q_sequence(const ColoredTree& t, const std::vector<int>& sigma) {
  if (t.n_colors < 2) throw std::invalid_argument("q_sequence: need at least two colors");
  std::vector<int> out = sigma;
  for (int& c : out)
    if (c == t.n_colors - 1) c = t.n_colors - 2;
  return out;
}

// The star property.  With n the last palette color: every node of color n is
// its parent's 0-extension, and below every color-(n-1) node the subtree
// routes through the 0-extension of the branch it takes.
inline bool satisfies_star(const StrongSubtree& st) {
  const ColoredTree& t = st.host->tree;
  if (t.convention != ColorConvention::ZeroBased)
    throw std::invalid_argument("satisfies_star: zero-based palette required");
  const int n = t.n_colors - 1;
  for (int j = 0; j < st.height(); ++j) {
    const int color = t.color_at(st.ambient_level(j));
    for (const Node& u : st.levels[j]) {
      if (color == n && (u.empty() || u.back() != '0')) return false;
      if (color == n - 1 && j + 1 < st.height()) {
        for (const Node& child : st.levels[j + 1]) {
          if (!is_prefix(u, child)) continue;
          // child extends u through t = child[0..|u|]; require t^0 <= child
          if (child.size() < u.size() + 2 || child[u.size() + 1] != '0') return false;
        }
      }
    }
  }
  return true;
}

namespace detail {

inline const Node& unique_extension(const std::vector<Node>& level, const Node& prefix,
                                    int at_level, const char* who) {
  const Node* found = nullptr;
  for (const Node& n : level) {
    if (!is_prefix(prefix, n)) continue;
    if (found)
      throw std::invalid_argument(std::string(who) + ": ambiguous lift above '" + prefix +
                                  "' at level " + std::to_string(at_level));
    found = &n;
  }
  if (!found)
    throw std::invalid_argument(std::string(who) + ": lifting failed above '" + prefix +
                                "' at level " + std::to_string(at_level));
  return *found;
}

}  // namespace detail

// Preconditions of the sigma_star construction; throws when violated.
inline void check_sigma_star_preconditions(const ColoredTree& t, const StrongSubtree& s,
                                           const std::vector<int>& sigma) {
  if (!is_mod_coloring(t) || t.n_colors < 2)
    throw std::invalid_argument("sigma_star: host must carry the cyclic zero-based coloring");
  const int n = t.n_colors - 1;
  const int m = static_cast<int>(sigma.size());
  if (m == 0) throw std::invalid_argument("sigma_star: empty sequence");
  for (int c : sigma)
    if (c < 0 || c > n) throw std::invalid_argument("sigma_star: sequence color outside palette");
  if (s.height() != m)
    throw std::invalid_argument("sigma_star: s must have the height of sigma");
  const HostPtr qh = q_host(t);
  if (!(s.host->tree == t) || s.host->levels != qh->levels)
    throw std::invalid_argument("sigma_star: s must live in the q-image of the host");
  if (induced_sequence(s) != q_sequence(t, sigma))
    throw std::invalid_argument("sigma_star: s must have coloring sequence q(sigma)");
  for (int k = 0; k < m; ++k) {
    // lifting needs headroom whenever the step leaves a color-(n-1) level of s
    if ((sigma[k] == n || sigma[k] == n - 1) && k + 1 < m &&
        s.ambient_level(k + 1) < s.ambient_level(k) + 2)
      throw std::invalid_argument(
          "sigma_star: consecutive levels of s are consecutive in the host at step " +
          std::to_string(k));
  }
  if (sigma[m - 1] == n && s.ambient_level(m - 1) + 1 >= t.height)
    throw std::invalid_argument("sigma_star: host not tall enough for the final level");
  if (sigma[0] == n && s.ambient_level(0) + 1 >= t.height)
    throw std::invalid_argument("sigma_star: host not tall enough at the root");
}

// The unique strong subtree of the full host with induced sequence sigma,
// star property, and level-by-level q-projection into s.
inline StrongSubtree sigma_star(const StrongSubtree& s, const std::vector<int>& sigma) {
  const ColoredTree& t = s.host->tree;
  check_sigma_star_preconditions(t, s, sigma);
  const int n = t.n_colors - 1;
  const int m = static_cast<int>(sigma.size());

  StrongSubtree u;
  u.host = full_host(t);
  u.levels.resize(m);
  u.level_indices.resize(m);

  u.levels[0] = {sigma[0] == n ? s.root() + '0' : s.root()};
  u.level_indices[0] = sigma[0] == n ? s.ambient_level(0) + 1 : s.ambient_level(0);

  for (int k = 0; k + 1 < m; ++k) {
    std::vector<Node> next;
    for (const Node& node : u.levels[k]) {
      for (char b : {'0', '1'}) {
        Node probe = node + b;
        if (sigma[k] == n - 1) probe += '0';  // route through the 0-extension
        const Node& lift = detail::unique_extension(s.levels[k + 1], probe,
                                                    s.ambient_level(k + 1), "sigma_star");
        next.push_back(sigma[k + 1] == n ? lift + '0' : lift);
      }
    }
    std::sort(next.begin(), next.end());
    u.levels[k + 1] = std::move(next);
    u.level_indices[k + 1] =
        sigma[k + 1] == n ? s.ambient_level(k + 1) + 1 : s.ambient_level(k + 1);
  }
  return u;
}

// Exhaustive oracle for the uniqueness claim: all strong subtrees of the full
// host with induced sequence sigma whose q-projection lies in s level by
// level and which satisfy the star property.  Candidate generation prunes by
// the projection condition only, which any qualifying subtree must meet.
inline std::vector<StrongSubtree> sigma_star_candidates(const ColoredTree& t,
                                                        const StrongSubtree& s,
                                                        const std::vector<int>& sigma) {
  const int m = static_cast<int>(sigma.size());
  std::vector<StrongSubtree> out;
  if (m == 0) return out;
  const HostPtr full = full_host(t);
  std::vector<std::vector<int>> tuples;
  detail::level_tuples(t.height, m, tuples);
  detail::NodeFilter filter = [&](int j, const Node& v) {
    const Node qv = q_map(t, v);
    const std::vector<Node>& sl = s.levels[j];
    return std::binary_search(sl.begin(), sl.end(), qv);
  };
  std::vector<StrongSubtree> candidates;
  for (const std::vector<int>& idx : tuples) {
    bool match = true;
    for (int j = 0; j < m && match; ++j) match = t.color_at(idx[j]) == sigma[j];
    if (!match) continue;
    detail::enumerate_on_levels(full, idx, filter, 0, candidates);
  }
  for (StrongSubtree& cand : candidates)
    if (satisfies_star(cand)) out.push_back(std::move(cand));
  return out;
}

// Finite search for a strong subtree with the target sequence all of whose
// sigma-subtrees are monochromatic.  The truncated setting cannot promise
// success, so failure is a value.
inline std::optional<StrongSubtree> find_monochromatic(
    const ColoredTree& t, const std::vector<int>& sigma,
    const std::function<int(const StrongSubtree&)>& chi, const std::vector<int>& target) {
  const HostPtr full = full_host(t);
  for (StrongSubtree& cand : filter_by_sequence(full, target)) {
    const HostPtr inner_host = cand.as_host();
    bool ok = true;
    bool first = true;
    int color = 0;
    for (const StrongSubtree& v : filter_by_sequence(inner_host, sigma)) {
      // rehost onto the full tree: chi is defined on subtrees of the host
      StrongSubtree rv;
      rv.host = full;
      rv.level_indices = v.ambient_levels();
      rv.levels = v.levels;
      const int c = chi(rv);
      if (first) {
        color = c;
        first = false;
      } else if (c != color) {
        ok = false;
        break;
      }
    }
    if (ok) return cand;
  }
  return std::nullopt;
}

}  // namespace ramsey
