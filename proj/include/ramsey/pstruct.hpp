#pragma once

// Finite linear orders with an n-part partition, written as words over
// {1..n_parts}: position in the word is the rank in the order, the digit is
// the part.  Because the order component rigidifies these structures, the
// only candidate isomorphism between two of them is the rank map, so
// isomorphism reduces to word equality and "nonisomorphic extensions" below
// means "distinct words".
//
// The projection p sends a 2-partitioned order to a tournament: arcs run
// upward inside a part and downward across parts.  Tournaments admitting an
// extension (a 2-partitioned word projecting onto them) are exactly the
// finite subtournaments of the dense local order; rotate_extension realizes
// the half-plane sweep that generates all extensions of a fixed base, one
// vertex step at a time, without any circle geometry.

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "ramsey/tournament.hpp"

namespace ramsey {

struct PnStructure {
  int n_parts = 1;
  std::vector<int> parts;  // values in 1..n_parts; index = rank in the order

  int size() const { return static_cast<int>(parts.size()); }

  friend bool operator==(const PnStructure& a, const PnStructure& b) {
    return a.n_parts == b.n_parts && a.parts == b.parts;
  }
};

inline void validate(const PnStructure& p) {
  if (p.n_parts < 1) throw std::invalid_argument("PnStructure: n_parts must be >= 1");
  for (std::size_t i = 0; i < p.parts.size(); ++i)
    if (p.parts[i] < 1 || p.parts[i] > p.n_parts)
      throw std::invalid_argument("PnStructure: part value at position " + std::to_string(i) +
                                  " outside 1.." + std::to_string(p.n_parts));
}

inline std::string to_word(const PnStructure& p) {
  std::string w;
  w.reserve(p.parts.size());
  for (int v : p.parts) w += static_cast<char>('0' + v);
  return w;
}

// Word format, e.g. "121"; n_parts inferred as the maximal digit when 0.
inline PnStructure parse_pnstructure(const std::string& word, int n_parts = 0) {
  PnStructure p;
  p.parts.reserve(word.size());
  int max_digit = 1;
  for (std::size_t i = 0; i < word.size(); ++i) {
    if (word[i] < '1' || word[i] > '9')
      throw std::invalid_argument("pnstructure word, column " + std::to_string(i + 1) +
                                  ": expected a digit 1..9");
    const int d = word[i] - '0';
    max_digit = std::max(max_digit, d);
    p.parts.push_back(d);
  }
  p.n_parts = n_parts > 0 ? n_parts : max_digit;
  validate(p);
  return p;
}

// p(A): for ranks i < j, same part gives i -> j, different parts give j -> i.
inline Tournament project(const PnStructure& a) {
  if (a.n_parts != 2) throw std::invalid_argument("project: requires n_parts = 2");
  const int n = a.size();
  std::vector<std::uint8_t> arcs(static_cast<std::size_t>(n) * n, 0);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      if (a.parts[i] == a.parts[j])
        arcs[static_cast<std::size_t>(i) * n + j] = 1;
      else
        arcs[static_cast<std::size_t>(j) * n + i] = 1;
    }
  return Tournament(n, std::move(arcs));
}

// The only order-preserving bijection is the rank map, so this is word
// equality on same-arity structures.
inline bool pn_isomorphic(const PnStructure& a, const PnStructure& b) {
  if (a.n_parts != b.n_parts)
    throw std::invalid_argument("pn_isomorphic: arities differ");
  return a.parts == b.parts;
}

struct ExtensionSet {
  Tournament base;
  std::vector<PnStructure> representatives;  // words in lex order

  int count() const { return static_cast<int>(representatives.size()); }
};

// All words w in {1,2}^|x| with project(w) isomorphic to x.  For a local
// order the count is 2|x|/|Aut(x)|; for anything else it is zero.
inline ExtensionSet enumerate_extensions(const Tournament& x) {
  const int n = x.size();
  if (n < 0 || n > 20) throw std::invalid_argument("enumerate_extensions: size out of range");
  ExtensionSet out{x, {}};
  for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << n); ++mask) {
    PnStructure w{2, std::vector<int>(n)};
    for (int i = 0; i < n; ++i) w.parts[i] = 1 + ((mask >> (n - 1 - i)) & 1u);  // lex order
    if (is_isomorphic(project(w), x)) out.representatives.push_back(std::move(w));
  }
  return out;
}

// Extension existence is the authoritative membership test for the age of
// the dense local order.
inline bool is_local_order(const Tournament& t) {
  return !enumerate_extensions(t).representatives.empty();
}

// Sweep the separating line past the least vertex: drop it, flip its part,
// reappend it as greatest.  Orbits of this map enumerate all extensions of a
// fixed projection; 2|a| applications give back a.
inline PnStructure rotate_extension(const PnStructure& a) {
  if (a.n_parts != 2) throw std::invalid_argument("rotate_extension: requires n_parts = 2");
  if (a.parts.empty()) throw std::invalid_argument("rotate_extension: empty structure");
  PnStructure r{2, std::vector<int>(a.parts.begin() + 1, a.parts.end())};
  r.parts.push_back(a.parts[0] == 1 ? 2 : 1);
  return r;
}

// Finite stand-in for the dense n-partitioned order: the pattern 1..n
// repeated depth times interleaves every part everywhere, so any word of
// size <= depth embeds part- and order-preservingly.
inline PnStructure qn_dense_model(int n, int depth) {
  if (n < 1 || depth < 1) throw std::invalid_argument("qn_dense_model: n, depth must be >= 1");
  PnStructure p{n, {}};
  p.parts.reserve(static_cast<std::size_t>(n) * depth);
  for (int d = 0; d < depth; ++d)
    for (int i = 1; i <= n; ++i) p.parts.push_back(i);
  return p;
}

// Order- and part-preserving embedding test (subsequence match).
inline bool pn_embeds(const PnStructure& a, const PnStructure& b) {
  if (a.n_parts != b.n_parts) return false;
  std::size_t i = 0;
  for (std::size_t j = 0; j < b.parts.size() && i < a.parts.size(); ++j)
    if (b.parts[j] == a.parts[i]) ++i;
  return i == a.parts.size();
}

}  // namespace ramsey
