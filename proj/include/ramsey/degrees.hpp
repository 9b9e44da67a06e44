#pragma once

// Ramsey-degree formulas, copy enumeration, the extension-class lower-bound
// coloring, and an exhaustive arrow-relation checker.
//
// Z -> (Y)^X_{k,l} means: every k-coloring of the copies of X in Z admits a
// copy of Y whose X-copies carry at most l colors.  arrow_check sweeps all
// k^#copies colorings in lexicographic order and returns the least
// counterexample when the relation fails.

#include <atomic>
#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <stdexcept>
#include <thread>
#include <vector>

#include "ramsey/errors.hpp"
#include "ramsey/pstruct.hpp"
#include "ramsey/tangent.hpp"
#include "ramsey/tournament.hpp"

namespace ramsey {

struct CopySet {
  Tournament ambient;
  Tournament pattern;
  std::vector<std::vector<int>> copies;  // sorted vertex subsets, lex order

  int count() const { return static_cast<int>(copies.size()); }
};

// All vertex subsets of z inducing a subtournament isomorphic to x.
inline CopySet copies(const Tournament& z, const Tournament& x) {
  const int n = z.size(), m = x.size();
  if (m > n) throw std::invalid_argument("copies: pattern larger than ambient");
  CopySet out{z, x, {}};
  std::vector<int> pick(m);
  std::function<void(int, int)> rec = [&](int start, int depth) {
    if (depth == m) {
      if (is_isomorphic(induced_subtournament(z, pick), x)) out.copies.push_back(pick);
      return;
    }
    for (int v = start; v < n; ++v) {
      pick[depth] = v;
      rec(v + 1, depth + 1);
    }
  };
  rec(0, 0);
  return out;
}

// t(X) = 2|X|/|Aut(X)|, defined on local orders; the formula is cross-checked
// against the extension count on every call.
inline long small_ramsey_degree(const Tournament& x) {
  if (x.size() < 1) throw std::invalid_argument("small_ramsey_degree: empty tournament");
  const ExtensionSet ext = enumerate_extensions(x);
  if (ext.representatives.empty())
    throw std::invalid_argument("small_ramsey_degree: not a local order");
  const long aut = automorphism_count(x);
  const long formula = 2L * x.size() / aut;
  if (2L * x.size() % aut != 0 || formula != ext.count())
    throw std::logic_error("small_ramsey_degree: formula and extension enumeration disagree");
  return formula;
}

// T(X) = t(X) * tan^(2|X|-1)(0).
inline BigInt big_ramsey_degree(const Tournament& x) {
  const long t = small_ramsey_degree(x);
  return BigInt(t) * tangent_derivative(2 * static_cast<unsigned>(x.size()) - 1);
}

// In the n-partitioned orders the degree depends only on the size: it is the
// odd tangent derivative tan^(2|X|-1)(0), whatever the parts pattern.
inline BigInt big_ramsey_degree_pn(const PnStructure& x) {
  validate(x);
  if (x.size() < 1) throw std::invalid_argument("big_ramsey_degree_pn: empty structure");
  return tangent_derivative(2 * static_cast<unsigned>(x.size()) - 1);
}

struct ArrowQuery {
  Tournament Z, Y, X;
  int k = 1;  // colors
  int l = 1;  // target value count
};

struct Coloring {
  CopySet domain;           // copies of X in Z
  std::vector<int> values;  // color per copy, same indexing
};

struct ArrowOptions {
  std::uint64_t budget = std::uint64_t{1} << 24;  // max colorings examined
  int threads = 1;
  bool symmetry_pruning = false;  // off by default: the naive sweep is the oracle
};

struct ArrowResult {
  bool holds = true;
  std::optional<Coloring> counterexample;
  std::uint64_t colorings_examined = 0;
};

namespace detail {

inline std::vector<std::vector<int>> x_copies_per_y_copy(const CopySet& cx, const CopySet& cy) {
  std::vector<std::vector<int>> out(cy.copies.size());
  for (std::size_t yi = 0; yi < cy.copies.size(); ++yi) {
    const std::vector<int>& ys = cy.copies[yi];
    for (std::size_t xi = 0; xi < cx.copies.size(); ++xi) {
      if (std::includes(ys.begin(), ys.end(), cx.copies[xi].begin(), cx.copies[xi].end()))
        out[yi].push_back(static_cast<int>(xi));
    }
  }
  return out;
}

inline void decode_coloring(std::uint64_t index, int k, std::vector<int>& digits) {
  for (std::size_t i = digits.size(); i-- > 0;) {
    digits[i] = static_cast<int>(index % k);
    index /= k;
  }
}

// true when some Y-copy sees at most l colors
inline bool coloring_is_good(const std::vector<int>& colors,
                             const std::vector<std::vector<int>>& per_y, int k, int l) {
  std::vector<char> seen(static_cast<std::size_t>(k));
  for (const std::vector<int>& xs : per_y) {
    std::fill(seen.begin(), seen.end(), 0);
    int distinct = 0;
    for (int xi : xs) {
      if (!seen[colors[xi]]) {
        seen[colors[xi]] = 1;
        ++distinct;
        if (distinct > l) break;
      }
    }
    if (distinct <= l) return true;
  }
  return false;
}

// Action of Aut(Z) on the copy index set, identity omitted.
inline std::vector<std::vector<int>> copy_actions(const CopySet& cx) {
  std::vector<std::vector<int>> actions;
  const std::vector<VertexMap> auts = automorphisms(cx.ambient);
  std::set<std::vector<int>> dedup;
  for (const VertexMap& g : auts) {
    std::vector<int> act(cx.copies.size());
    bool identity = true;
    for (std::size_t i = 0; i < cx.copies.size(); ++i) {
      std::vector<int> img;
      img.reserve(cx.copies[i].size());
      for (int v : cx.copies[i]) img.push_back(g.image[v]);
      std::sort(img.begin(), img.end());
      const auto it = std::lower_bound(cx.copies.begin(), cx.copies.end(), img);
      act[i] = static_cast<int>(it - cx.copies.begin());
      if (act[i] != static_cast<int>(i)) identity = false;
    }
    if (!identity) dedup.insert(std::move(act));
  }
  actions.assign(dedup.begin(), dedup.end());
  return actions;
}

inline bool orbit_minimal(const std::vector<int>& colors,
                          const std::vector<std::vector<int>>& actions) {
  for (const std::vector<int>& g : actions) {
    for (std::size_t i = 0; i < colors.size(); ++i) {
      const int moved = colors[g[i]];
      if (moved < colors[i]) return false;  // a smaller orbit member exists
      if (moved > colors[i]) break;
    }
  }
  return true;
}

}  // namespace detail

// Exhaustive check of Z -> (Y)^X_{k,l}.  Counterexamples are reported for the
// lexicographically least failing coloring; with symmetry pruning enabled the
// least Aut(Z)-canonical failing coloring is reported instead.  The verdict
// and the reported coloring do not depend on the thread count.
inline ArrowResult arrow_check(const ArrowQuery& q, const ArrowOptions& opt = {}) {
  if (q.k < 1 || q.l < 1) throw std::invalid_argument("arrow_check: k and l must be >= 1");
  const CopySet cx = copies(q.Z, q.X);
  const CopySet cy = copies(q.Z, q.Y);
  const std::size_t m = cx.copies.size();

  ArrowResult res;
  if (q.l >= q.k || q.k == 1 || m == 0) {
    res.holds = true;  // no coloring can exceed l values
    return res;
  }

  // total = k^m, guarded against the budget
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < m; ++i) {
    if (total > opt.budget / static_cast<std::uint64_t>(q.k)) {
      BigInt required = big_pow(BigInt(q.k), static_cast<unsigned>(m));
      throw budget_error("arrow_check: coloring space exceeds the search budget",
                         required.str(), std::to_string(opt.budget));
    }
    total *= static_cast<std::uint64_t>(q.k);
  }

  const std::vector<std::vector<int>> per_y = detail::x_copies_per_y_copy(cx, cy);
  const std::vector<std::vector<int>> actions =
      opt.symmetry_pruning ? detail::copy_actions(cx) : std::vector<std::vector<int>>{};

  const std::uint64_t kNotFound = UINT64_MAX;
  std::atomic<std::uint64_t> least_bad{kNotFound};

  auto scan = [&](std::uint64_t begin, std::uint64_t end) {
    std::vector<int> colors(m);
    detail::decode_coloring(begin, q.k, colors);
    for (std::uint64_t idx = begin; idx < end; ++idx) {
      if (idx != begin) {
        // odometer increment, least significant digit last
        for (std::size_t d = m; d-- > 0;) {
          if (++colors[d] < q.k) break;
          colors[d] = 0;
        }
      }
      if (idx >= least_bad.load(std::memory_order_relaxed)) return;
      if (opt.symmetry_pruning && !detail::orbit_minimal(colors, actions)) continue;
      if (!detail::coloring_is_good(colors, per_y, q.k, q.l)) {
        std::uint64_t prev = least_bad.load();
        while (idx < prev && !least_bad.compare_exchange_weak(prev, idx)) {
        }
        return;
      }
    }
  };

  const int threads = std::max(1, opt.threads);
  if (threads == 1 || total < 4096) {
    scan(0, total);
  } else {
    const std::uint64_t chunk = (total + threads - 1) / threads;
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) {
      const std::uint64_t b = std::min<std::uint64_t>(t * chunk, total);
      const std::uint64_t e = std::min<std::uint64_t>(b + chunk, total);
      if (b < e) pool.emplace_back(scan, b, e);
    }
    for (std::thread& th : pool) th.join();
  }

  const std::uint64_t bad = least_bad.load();
  if (bad == kNotFound) {
    res.holds = true;
    res.colorings_examined = total;
    return res;
  }
  res.holds = false;
  res.colorings_examined = bad + 1;
  Coloring c{cx, std::vector<int>(m)};
  detail::decode_coloring(bad, q.k, c.values);
  res.counterexample = std::move(c);
  return res;
}

// Checks a claimed counterexample without the full sweep: every Y-copy must
// see more than l colors.
inline bool verify_coloring_is_witness(const ArrowQuery& q, const Coloring& c) {
  const CopySet cx = copies(q.Z, q.X);
  if (c.domain.copies != cx.copies || c.values.size() != cx.copies.size())
    throw std::invalid_argument("verify_coloring_is_witness: coloring not total on copies(Z, X)");
  for (int v : c.values)
    if (v < 0 || v >= q.k)
      throw std::invalid_argument("verify_coloring_is_witness: color out of range");
  const CopySet cy = copies(q.Z, q.Y);
  const std::vector<std::vector<int>> per_y = detail::x_copies_per_y_copy(cx, cy);
  return !detail::coloring_is_good(c.values, per_y, q.k, q.l);
}

// Colors each copy of x in z by the extension class it induces inside a fixed
// extension of z.  The alignment between z's vertices and ext's order
// positions is the least isomorphism witness, computed once.
inline Coloring lower_bound_coloring(const Tournament& z, const PnStructure& ext,
                                     const Tournament& x) {
  const std::optional<VertexMap> witness = find_isomorphism(project(ext), z);
  if (!witness) throw std::invalid_argument("lower_bound_coloring: ext does not project onto z");
  const ExtensionSet classes = enumerate_extensions(x);
  if (classes.representatives.empty())
    throw std::invalid_argument("lower_bound_coloring: x is not a local order");

  std::vector<int> position_of(z.size());  // z-vertex -> order position in ext
  for (int p = 0; p < z.size(); ++p) position_of[witness->image[p]] = p;

  Coloring out{copies(z, x), {}};
  out.values.reserve(out.domain.copies.size());
  for (const std::vector<int>& copy : out.domain.copies) {
    std::vector<int> pos;
    pos.reserve(copy.size());
    for (int v : copy) pos.push_back(position_of[v]);
    std::sort(pos.begin(), pos.end());
    PnStructure induced{2, {}};
    induced.parts.reserve(pos.size());
    for (int p : pos) induced.parts.push_back(ext.parts[p]);
    int color = -1;
    for (std::size_t j = 0; j < classes.representatives.size(); ++j)
      if (classes.representatives[j].parts == induced.parts) {
        color = static_cast<int>(j);
        break;
      }
    if (color < 0) throw std::logic_error("lower_bound_coloring: induced word not an extension");
    out.values.push_back(color);
  }
  return out;
}

}  // namespace ramsey
