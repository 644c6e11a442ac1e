#pragma once

// Structure tests on multisegments: regular, ladder (quasi-lamina), split,
// and balanced (absence of type-4231 and type-3412 submultisegments),
// plus the permutation-to-multisegment construction and 1324/2143 avoidance.

#include <algorithm>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "compstar/segment.hpp"

namespace compstar {

// Regular: all begins pairwise distinct and all ends pairwise distinct.
inline bool is_regular(const Multisegment& m) {
  std::set<int> bs, es;
  for (const Segment& s : m.segs) {
    if (!bs.insert(s.b).second) return false;
    if (!es.insert(s.e).second) return false;
  }
  return true;
}

// Ladder: the segments can be ordered with strictly increasing begins and
// strictly increasing ends.
inline bool is_ladder(const Multisegment& m) {
  std::vector<Segment> s = m.segs;
  std::sort(s.begin(), s.end(), [](const Segment& x, const Segment& y) {
    if (x.b != y.b) return x.b < y.b;
    return x.e < y.e;
  });
  for (std::size_t i = 1; i < s.size(); ++i)
    if (s[i].b <= s[i - 1].b || s[i].e <= s[i - 1].e) return false;
  return true;
}

// Split: >= 2 segments and the comparability graph (edge {D,G} iff D prec G
// or G prec D) is disconnected.
inline bool is_split(const Multisegment& m) {
  const std::size_t k = m.segs.size();
  if (k < 2) return false;
  std::vector<int> comp(k, -1);
  std::vector<std::size_t> stack{0};
  comp[0] = 0;
  while (!stack.empty()) {
    std::size_t u = stack.back();
    stack.pop_back();
    for (std::size_t v = 0; v < k; ++v) {
      if (comp[v] >= 0) continue;
      if (precedes(m.segs[u], m.segs[v]) || precedes(m.segs[v], m.segs[u])) {
        comp[v] = 0;
        stack.push_back(v);
      }
    }
  }
  for (std::size_t v = 0; v < k; ++v)
    if (comp[v] < 0) return true;
  return false;
}

// A witness submultisegment for a pattern. `chain` lists the indices of the
// descending precedence chain D_2 > D_3 > ... (or D_3 > D_4 > ... for 3412);
// `anchors` are the out-of-chain indices (one for 4231, two for 3412).
struct PatternWitness {
  enum class Type { T4231, T3412 };
  Type type = Type::T4231;
  std::vector<int> anchors;
  std::vector<int> chain;

  // The witness as segments, ordered D_1, D_2, ..., D_k of the definition.
  std::vector<Segment> as_segments(const Multisegment& m) const {
    std::vector<Segment> out;
    for (int a : anchors) out.push_back(m.segs[a]);
    for (int c : chain) out.push_back(m.segs[c]);
    return out;
  }
};

namespace detail {

// Precedence digraph on segment indices: edge u -> v iff D_v prec D_u
// (v can follow u in a descending chain). Begins strictly increase along
// reversed edges, so the digraph is acyclic.
inline std::vector<std::vector<int>> descent_adjacency(const Multisegment& m) {
  const int k = static_cast<int>(m.segs.size());
  std::vector<std::vector<int>> adj(k);
  for (int u = 0; u < k; ++u)
    for (int v = 0; v < k; ++v)
      if (u != v && precedes(m.segs[v], m.segs[u])) adj[u].push_back(v);
  return adj;
}

// Simple path from `from` to `to` along descent edges, avoiding `banned`
// vertices. Returns the path (including both endpoints) if one exists.
inline std::optional<std::vector<int>> descent_path(
    const std::vector<std::vector<int>>& adj, int from, int to,
    const std::vector<bool>& banned) {
  const int k = static_cast<int>(adj.size());
  std::vector<int> parent(k, -2);
  std::vector<int> stack{from};
  parent[from] = -1;
  while (!stack.empty()) {
    int u = stack.back();
    stack.pop_back();
    if (u == to) break;
    for (int v : adj[u]) {
      if (banned[v] || parent[v] != -2) continue;
      parent[v] = u;
      stack.push_back(v);
    }
  }
  if (parent[to] == -2) return std::nullopt;
  std::vector<int> path;
  for (int u = to; u != -1; u = parent[u]) path.push_back(u);
  std::reverse(path.begin(), path.end());
  return path;
}

inline bool chain_descends(const Multisegment& m, const std::vector<int>& chain) {
  for (std::size_t i = 1; i < chain.size(); ++i)
    if (!precedes(m.segs[chain[i]], m.segs[chain[i - 1]])) return false;
  return true;
}

// Validate a candidate witness directly against the definitions.
inline bool witness_valid(const Multisegment& m, const PatternWitness& w) {
  std::set<int> used(w.anchors.begin(), w.anchors.end());
  for (int c : w.chain)
    if (!used.insert(c).second) return false;
  if (!chain_descends(m, w.chain)) return false;
  auto B = [&](int i) { return m.segs[i].b; };
  auto E = [&](int i) { return m.segs[i].e; };
  if (w.type == PatternWitness::Type::T4231) {
    if (w.anchors.size() != 1 || w.chain.size() < 3) return false;
    int a = w.anchors[0];
    const auto& c = w.chain;
    int L = static_cast<int>(c.size());
    return E(c[1]) < E(a) && E(a) < E(c[0]) && B(c[L - 1]) < B(a) &&
           B(a) < B(c[L - 2]);
  }
  if (w.anchors.size() != 2 || w.chain.size() < 2) return false;
  int a1 = w.anchors[0], a2 = w.anchors[1];
  if (!precedes(m.segs[a2], m.segs[a1])) return false;
  const auto& c = w.chain;
  int L = static_cast<int>(c.size());
  return E(c[1]) < E(a2) && E(a2) < E(c[0]) && E(c[0]) < E(a1) &&
         B(a2) < B(c[L - 1]) && B(c[L - 1]) < B(a1) && B(a1) < B(c[L - 2]);
}

}  // namespace detail

// Search for a type-4231 witness: an anchor D_1 and a descending chain
// c_1 > c_2 > ... > c_L (L >= 3) with e(c_2) < e(D_1) < e(c_1) and
// b(c_L) < b(D_1) < b(c_{L-1}). The chain is found by enumerating its two
// first and two last elements and connecting them through the (acyclic)
// precedence digraph.
inline std::optional<PatternWitness> find_4231(const Multisegment& m) {
  const int k = static_cast<int>(m.segs.size());
  if (k < 4) return std::nullopt;
  auto adj = detail::descent_adjacency(m);
  auto B = [&](int i) { return m.segs[i].b; };
  auto E = [&](int i) { return m.segs[i].e; };
  for (int a = 0; a < k; ++a)
    for (int c1 = 0; c1 < k; ++c1) {
      if (c1 == a || E(c1) <= E(a)) continue;
      for (int c2 : adj[c1]) {
        if (c2 == a || E(c2) >= E(a)) continue;
        for (int p = 0; p < k; ++p) {
          if (p == a || p == c1 || B(p) <= B(a)) continue;
          for (int q : adj[p]) {
            if (q == a || q == c1 || q == c2 || B(q) >= B(a)) continue;
            PatternWitness w{PatternWitness::Type::T4231, {a}, {}};
            if (p == c2) {
              w.chain = {c1, c2, q};
            } else {
              std::vector<bool> banned(k, false);
              banned[a] = banned[c1] = banned[q] = true;
              auto path = detail::descent_path(adj, c2, p, banned);
              if (!path) continue;
              w.chain = {c1};
              w.chain.insert(w.chain.end(), path->begin(), path->end());
              w.chain.push_back(q);
            }
            if (detail::witness_valid(m, w)) return w;
          }
        }
      }
    }
  return std::nullopt;
}

// Search for a type-3412 witness: anchors D_1, D_2 with D_2 prec D_1 and a
// descending chain c_1 > ... > c_L (L >= 2) with
// e(c_2) < e(D_2) < e(c_1) < e(D_1) and b(D_2) < b(c_L) < b(D_1) < b(c_{L-1}).
inline std::optional<PatternWitness> find_3412(const Multisegment& m) {
  const int k = static_cast<int>(m.segs.size());
  if (k < 4) return std::nullopt;
  auto adj = detail::descent_adjacency(m);
  auto B = [&](int i) { return m.segs[i].b; };
  auto E = [&](int i) { return m.segs[i].e; };
  for (int a1 = 0; a1 < k; ++a1)
    for (int a2 : adj[a1])
      for (int c1 = 0; c1 < k; ++c1) {
        if (c1 == a1 || c1 == a2) continue;
        if (!(E(a2) < E(c1) && E(c1) < E(a1))) continue;
        for (int c2 : adj[c1]) {
          if (c2 == a1 || c2 == a2 || E(c2) >= E(a2)) continue;
          // L = 2: the chain is (c1, c2).
          {
            PatternWitness w{PatternWitness::Type::T3412, {a1, a2}, {c1, c2}};
            if (detail::witness_valid(m, w)) return w;
          }
          for (int p = 0; p < k; ++p) {
            if (p == a1 || p == a2 || p == c1) continue;
            if (!(B(a1) < B(p))) continue;
            for (int q : adj[p]) {
              if (q == a1 || q == a2 || q == c1 || q == c2) continue;
              if (!(B(a2) < B(q) && B(q) < B(a1))) continue;
              PatternWitness w{PatternWitness::Type::T3412, {a1, a2}, {}};
              if (p == c2) {
                w.chain = {c1, c2, q};
              } else {
                std::vector<bool> banned(k, false);
                banned[a1] = banned[a2] = banned[c1] = banned[q] = true;
                auto path = detail::descent_path(adj, c2, p, banned);
                if (!path) continue;
                w.chain = {c1};
                w.chain.insert(w.chain.end(), path->begin(), path->end());
                w.chain.push_back(q);
              }
              if (detail::witness_valid(m, w)) return w;
            }
          }
        }
      }
  return std::nullopt;
}

struct BalancedResult {
  bool balanced = true;
  std::optional<PatternWitness> witness;
};

// Balanced is defined only for regular multisegments.
inline BalancedResult balanced_test(const Multisegment& m) {
  if (!is_regular(m))
    throw precondition_error("balanced is only defined for regular multisegments");
  if (auto w = find_4231(m)) return {false, w};
  if (auto w = find_3412(m)) return {false, w};
  return {true, std::nullopt};
}

inline bool is_balanced(const Multisegment& m) { return balanced_test(m).balanced; }

// Exhaustive oracle: enumerate all descending chains by depth-first search
// and test every anchor assignment directly. Exponential; for small inputs.
inline bool has_pattern_brute(const Multisegment& m) {
  const int k = static_cast<int>(m.segs.size());
  if (k < 4) return false;
  auto adj = detail::descent_adjacency(m);
  bool found = false;
  std::vector<int> chain;
  auto check_anchors = [&] {
    if (found) return;
    std::vector<bool> in_chain(k, false);
    for (int c : chain) in_chain[c] = true;
    if (chain.size() >= 3) {
      for (int a = 0; a < k && !found; ++a) {
        if (in_chain[a]) continue;
        PatternWitness w{PatternWitness::Type::T4231, {a}, chain};
        if (detail::witness_valid(m, w)) found = true;
      }
    }
    if (chain.size() >= 2) {
      for (int a1 = 0; a1 < k && !found; ++a1) {
        if (in_chain[a1]) continue;
        for (int a2 : adj[a1]) {
          if (in_chain[a2]) continue;
          PatternWitness w{PatternWitness::Type::T3412, {a1, a2}, chain};
          if (detail::witness_valid(m, w)) {
            found = true;
            break;
          }
        }
      }
    }
  };
  auto dfs = [&](auto&& self, int u) -> void {
    if (found) return;
    chain.push_back(u);
    check_anchors();
    for (int v : adj[u])
      if (std::find(chain.begin(), chain.end(), v) == chain.end())
        self(self, v);
    chain.pop_back();
  };
  for (int u = 0; u < k && !found; ++u) dfs(dfs, u);
  return found;
}

struct StructureFlags {
  bool regular = false;
  bool ladder = false;
  bool balanced = false;  // meaningful only when regular
  bool split = false;
  std::optional<PatternWitness> witness;
};

inline StructureFlags structure_tests(const Multisegment& m) {
  StructureFlags f;
  f.regular = is_regular(m);
  f.ladder = is_ladder(m);
  f.split = is_split(m);
  if (f.regular) {
    BalancedResult b = balanced_test(m);
    f.balanced = b.balanced;
    f.witness = b.witness;
  }
  return f;
}

// ---- Permutations ----------------------------------------------------------

// C_w parameter: for w a permutation of {1..k}, the multisegment
// [1, w(1)+k-1] + ... + [k, w(k)+k-1] on the ambient line of size 2k-1.
inline Multisegment cw_multisegment(const std::vector<int>& w) {
  const int k = static_cast<int>(w.size());
  if (k < 1) throw precondition_error("permutation must be nonempty");
  std::vector<bool> seen(k + 1, false);
  for (int v : w) {
    if (v < 1 || v > k || seen[v])
      throw precondition_error("not a permutation of {1..k}");
    seen[v] = true;
  }
  std::vector<Segment> segs;
  for (int i = 1; i <= k; ++i) segs.push_back(Segment{i, w[i - 1] + k - 1});
  return Multisegment(2 * k - 1, std::move(segs));
}

// True iff w avoids both patterns 1324 and 2143 (exhaustive 4-subsequence
// scan; guarded to k <= 12).
inline bool avoids_1324_2143(const std::vector<int>& w) {
  const int k = static_cast<int>(w.size());
  if (k > 12) throw precondition_error("pattern scan guarded to k <= 12");
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j)
      for (int l = j + 1; l < k; ++l)
        for (int r = l + 1; r < k; ++r) {
          // 1324: w(i) < w(l) < w(j) < w(r)
          if (w[i] < w[l] && w[l] < w[j] && w[j] < w[r]) return false;
          // 2143: w(j) < w(i) < w(r) < w(l)
          if (w[j] < w[i] && w[i] < w[r] && w[r] < w[l]) return false;
        }
  return true;
}

}  // namespace compstar
