#pragma once

// Finite tournaments on vertex set 0..n-1, stored as a full n x n arc matrix.
// Brute-force isomorphism, automorphism counting and canonical labeling; all
// sizes here are desk scale (n <= 8 or so), so exhaustive search over vertex
// relabelings is the intended algorithm.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "ramsey/errors.hpp"

namespace ramsey {

class Tournament {
 public:
  Tournament() = default;

  // Row-major matrix, no validation; see validate().
  Tournament(int n, std::vector<std::uint8_t> arcs) : n_(n), arcs_(std::move(arcs)) {
    if (n_ < 0 || arcs_.size() != static_cast<std::size_t>(n_) * n_)
      throw std::invalid_argument("Tournament: matrix size does not match vertex count");
  }

  int size() const { return n_; }
  bool arc(int i, int j) const { return arcs_[static_cast<std::size_t>(i) * n_ + j] != 0; }

  friend bool operator==(const Tournament& a, const Tournament& b) {
    return a.n_ == b.n_ && a.arcs_ == b.arcs_;
  }

 private:
  int n_ = 0;
  std::vector<std::uint8_t> arcs_;
};

// VertexMap carries isomorphism/embedding witnesses: image[i] is the image of
// vertex i of the source.
struct VertexMap {
  int source_size = 0;
  std::vector<int> image;
};

inline Tournament tournament_from_out_lists(int n, const std::vector<std::vector<int>>& out) {
  std::vector<std::uint8_t> arcs(static_cast<std::size_t>(n) * n, 0);
  for (int i = 0; i < n; ++i)
    for (int j : out[i]) arcs[static_cast<std::size_t>(i) * n + j] = 1;
  return Tournament(n, std::move(arcs));
}

// Transitive chain: i -> j iff i < j.
inline Tournament transitive_chain(int n) {
  std::vector<std::uint8_t> arcs(static_cast<std::size_t>(n) * n, 0);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) arcs[static_cast<std::size_t>(i) * n + j] = 1;
  return Tournament(n, std::move(arcs));
}

// i -> j iff (j - i) mod (2n+1) lies in 1..n; vertices are the odd roots of
// unity read counterclockwise.  n = 1 gives the 3-cycle.
inline Tournament circular_tournament(int n) {
  if (n < 1) throw std::invalid_argument("circular_tournament: n must be >= 1");
  const int sz = 2 * n + 1;
  std::vector<std::uint8_t> arcs(static_cast<std::size_t>(sz) * sz, 0);
  for (int i = 0; i < sz; ++i)
    for (int d = 1; d <= n; ++d) arcs[static_cast<std::size_t>(i) * sz + (i + d) % sz] = 1;
  return Tournament(sz, std::move(arcs));
}

// Checks irreflexivity and totality/antisymmetry; reports the offending pair.
inline void validate(const Tournament& t) {
  const int n = t.size();
  for (int i = 0; i < n; ++i) {
    if (t.arc(i, i))
      throw std::invalid_argument("invalid tournament: arcs[" + std::to_string(i) + "][" +
                                  std::to_string(i) + "] set on the diagonal");
    for (int j = i + 1; j < n; ++j) {
      if (t.arc(i, j) == t.arc(j, i))
        throw std::invalid_argument(
            "invalid tournament: exactly one of arcs[" + std::to_string(i) + "][" +
            std::to_string(j) + "], arcs[" + std::to_string(j) + "][" + std::to_string(i) +
            "] must be set");
    }
  }
}

namespace detail {

inline bool perm_carries(const Tournament& a, const Tournament& b, const std::vector<int>& p) {
  const int n = a.size();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j && a.arc(i, j) != b.arc(p[i], p[j])) return false;
  return true;
}

}  // namespace detail

// Lexicographically least witness (as an image vector) when one exists.
inline std::optional<VertexMap> find_isomorphism(const Tournament& a, const Tournament& b) {
  if (a.size() != b.size()) return std::nullopt;
  const int n = a.size();
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  do {
    if (detail::perm_carries(a, b, p)) return VertexMap{n, p};
  } while (std::next_permutation(p.begin(), p.end()));
  return std::nullopt;
}

inline bool is_isomorphic(const Tournament& a, const Tournament& b) {
  return find_isomorphism(a, b).has_value();
}

inline long automorphism_count(const Tournament& t) {
  const int n = t.size();
  if (n == 0) return 1;
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  long count = 0;
  do {
    if (detail::perm_carries(t, t, p)) ++count;
  } while (std::next_permutation(p.begin(), p.end()));
  return count;
}

inline std::vector<VertexMap> automorphisms(const Tournament& t) {
  const int n = t.size();
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  std::vector<VertexMap> out;
  do {
    if (detail::perm_carries(t, t, p)) out.push_back(VertexMap{n, p});
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

namespace detail {

// Canonical key: for k = 1..n-1 the bits arc(perm[0],perm[k]), ...,
// arc(perm[k-1],perm[k]) in that order, minimized over all relabelings.
// This vertex-by-vertex entry order lets the greedy search fix one vertex at
// a time: the lexicographic minimum is reached by minimizing each segment and
// recursing only into the tying choices.
struct CanonSearch {
  const Tournament& t;
  int n;
  std::vector<std::uint8_t> best;
  std::vector<std::uint8_t> cur;
  std::vector<int> perm;
  std::vector<bool> used;
  bool have_best = false;

  explicit CanonSearch(const Tournament& tt) : t(tt), n(tt.size()) {
    perm.reserve(n);
    used.assign(n, false);
  }

  void run() {
    if (n == 0) {
      have_best = true;
      return;
    }
    for (int v = 0; v < n; ++v) step(v);
  }

  void step(int v) {
    const int k = static_cast<int>(perm.size());
    std::vector<std::uint8_t> seg(k);
    for (int i = 0; i < k; ++i) seg[i] = t.arc(perm[i], v) ? 1 : 0;
    const std::size_t off = cur.size();
    if (have_best) {
      for (int i = 0; i < k; ++i) {
        if (seg[i] > best[off + i]) return;  // worse: prune
        if (seg[i] < best[off + i]) break;   // strictly better prefix: explore
      }
    }
    perm.push_back(v);
    used[v] = true;
    cur.insert(cur.end(), seg.begin(), seg.end());
    if (static_cast<int>(perm.size()) == n) {
      if (!have_best || cur < best) {
        best = cur;
        have_best = true;
      }
    } else {
      for (int w = 0; w < n; ++w)
        if (!used[w]) step(w);
    }
    cur.resize(off);
    used[v] = false;
    perm.pop_back();
  }
};

inline Tournament tournament_from_upper_bits(int n, const std::vector<std::uint8_t>& bits) {
  // bits in the same vertex-by-vertex order used by CanonSearch
  std::vector<std::uint8_t> arcs(static_cast<std::size_t>(n) * n, 0);
  std::size_t idx = 0;
  for (int k = 1; k < n; ++k)
    for (int i = 0; i < k; ++i) {
      if (bits[idx++])
        arcs[static_cast<std::size_t>(i) * n + k] = 1;
      else
        arcs[static_cast<std::size_t>(k) * n + i] = 1;
    }
  return Tournament(n, std::move(arcs));
}

}  // namespace detail

// Least arc matrix over all vertex relabelings (entries compared vertex by
// vertex as in detail::CanonSearch).  Equal canonical forms iff isomorphic.
inline Tournament canonical_form(const Tournament& t) {
  detail::CanonSearch s(t);
  s.run();
  return detail::tournament_from_upper_bits(t.size(), s.best);
}

inline std::vector<std::uint8_t> canonical_key(const Tournament& t) {
  detail::CanonSearch s(t);
  s.run();
  return s.best;
}

// One representative per isomorphism class, generated by sweeping all
// 2^(n(n-1)/2) arc assignments and bucketing by canonical form.  Results are
// sorted by canonical key.
inline std::vector<Tournament> enumerate_tournaments(int n, int bound = 7) {
  if (n < 1) throw std::invalid_argument("enumerate_tournaments: n must be >= 1");
  if (n > bound)
    throw budget_error("enumerate_tournaments: n exceeds the configured bound",
                       std::to_string(n), std::to_string(bound));
  const int m = n * (n - 1) / 2;
  std::vector<std::vector<std::uint8_t>> keys;
  std::unordered_map<std::string, bool> seen;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
    std::vector<std::uint8_t> bits(m);
    for (int b = 0; b < m; ++b) bits[b] = (mask >> b) & 1u;
    Tournament t = detail::tournament_from_upper_bits(n, bits);
    std::vector<std::uint8_t> key = canonical_key(t);
    std::string skey(key.begin(), key.end());
    if (!seen.emplace(std::move(skey), true).second) continue;
    keys.push_back(std::move(key));
  }
  std::sort(keys.begin(), keys.end());
  std::vector<Tournament> out;
  out.reserve(keys.size());
  for (const auto& k : keys) out.push_back(detail::tournament_from_upper_bits(n, k));
  return out;
}

inline Tournament induced_subtournament(const Tournament& t, const std::vector<int>& vertices) {
  const int m = static_cast<int>(vertices.size());
  std::vector<std::uint8_t> arcs(static_cast<std::size_t>(m) * m, 0);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      if (i != j && t.arc(vertices[i], vertices[j]))
        arcs[static_cast<std::size_t>(i) * m + j] = 1;
  return Tournament(m, std::move(arcs));
}

inline bool is_transitive(const Tournament& t) {
  const int n = t.size();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        if (i != j && j != k && i != k && t.arc(i, j) && t.arc(j, k) && !t.arc(i, k)) return false;
  return true;
}

// Oracle criterion for membership in the age of the dense local order: every
// vertex's in-set and out-set must induce transitive subtournaments.  The
// authoritative test lives in pstruct.hpp (extension existence); the two are
// compared in tests.
inline bool has_transitive_neighborhoods(const Tournament& t) {
  const int n = t.size();
  for (int v = 0; v < n; ++v) {
    std::vector<int> in, out;
    for (int u = 0; u < n; ++u) {
      if (u == v) continue;
      (t.arc(v, u) ? out : in).push_back(u);
    }
    if (!is_transitive(induced_subtournament(t, out))) return false;
    if (!is_transitive(induced_subtournament(t, in))) return false;
  }
  return true;
}

// Text format: line 1 is n, lines 2..n+1 are rows of '0'/'1'.
inline Tournament parse_tournament(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw std::invalid_argument("line 1: missing vertex count");
  int n = 0;
  try {
    std::size_t pos = 0;
    n = std::stoi(line, &pos);
    while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\r')) ++pos;
    if (pos != line.size()) throw std::invalid_argument("");
  } catch (const std::exception&) {
    throw std::invalid_argument("line 1: expected a vertex count, got \"" + line + "\"");
  }
  if (n < 0 || n > 64) throw std::invalid_argument("line 1: vertex count out of range 0..64");
  std::vector<std::uint8_t> arcs(static_cast<std::size_t>(n) * n, 0);
  for (int i = 0; i < n; ++i) {
    if (!std::getline(in, line))
      throw std::invalid_argument("line " + std::to_string(i + 2) + ": missing matrix row");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (static_cast<int>(line.size()) != n)
      throw std::invalid_argument("line " + std::to_string(i + 2) + ": expected " +
                                  std::to_string(n) + " columns, got " +
                                  std::to_string(line.size()));
    for (int j = 0; j < n; ++j) {
      if (line[j] != '0' && line[j] != '1')
        throw std::invalid_argument("line " + std::to_string(i + 2) + ", column " +
                                    std::to_string(j + 1) + ": expected '0' or '1'");
      arcs[static_cast<std::size_t>(i) * n + j] = line[j] == '1' ? 1 : 0;
    }
  }
  Tournament t(n, std::move(arcs));
  validate(t);
  return t;
}

inline std::string format_tournament(const Tournament& t) {
  std::string out = std::to_string(t.size()) + "\n";
  for (int i = 0; i < t.size(); ++i) {
    for (int j = 0; j < t.size(); ++j) out += t.arc(i, j) ? '1' : '0';
    out += '\n';
  }
  return out;
}

// Compact one-line rendering (rows joined by '/') for tables and reports.
inline std::string tournament_signature(const Tournament& t) {
  std::string out;
  for (int i = 0; i < t.size(); ++i) {
    if (i) out += '/';
    for (int j = 0; j < t.size(); ++j) out += t.arc(i, j) ? '1' : '0';
  }
  return out;
}

}  // namespace ramsey
