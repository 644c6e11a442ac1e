#pragma once

// Deterministic combinatorial procedures: the bipartite matching criterion
// for sums and commutation, the matching formula for hom over the
// preprojective algebra (one quasi-lamina argument), the peeling step for
// balanced multisegments, sigma-decomposition, and the recursive recipes for
// the star operation with a segment or balanced argument.

#include <algorithm>
#include <functional>
#include <optional>
#include <queue>
#include <utility>
#include <vector>

#include "compstar/common.hpp"
#include "compstar/patterns.hpp"
#include "compstar/pp.hpp"
#include "compstar/segment.hpp"

namespace compstar {

// Maximum matching in a bipartite graph (Hopcroft–Karp). adj[u] lists the
// right-side neighbours of left vertex u.
inline int hopcroft_karp(const std::vector<std::vector<int>>& adj, int nleft,
                         int nright) {
  const int kInf = 1 << 30;
  std::vector<int> match_l(nleft, -1), match_r(nright, -1), dist(nleft, 0);
  auto bfs = [&]() -> bool {
    std::queue<int> q;
    bool found = false;
    for (int u = 0; u < nleft; ++u) {
      if (match_l[u] == -1) {
        dist[u] = 0;
        q.push(u);
      } else {
        dist[u] = kInf;
      }
    }
    while (!q.empty()) {
      int u = q.front();
      q.pop();
      for (int v : adj[u]) {
        int w = match_r[v];
        if (w == -1) {
          found = true;
        } else if (dist[w] == kInf) {
          dist[w] = dist[u] + 1;
          q.push(w);
        }
      }
    }
    return found;
  };
  std::function<bool(int)> dfs = [&](int u) -> bool {
    for (int v : adj[u]) {
      int w = match_r[v];
      if (w == -1 || (dist[w] == dist[u] + 1 && dfs(w))) {
        match_l[u] = v;
        match_r[v] = u;
        return true;
      }
    }
    dist[u] = kInf;
    return false;
  };
  int matching = 0;
  while (bfs())
    for (int u = 0; u < nleft; ++u)
      if (match_l[u] == -1 && dfs(u)) ++matching;
  return matching;
}

// The bipartite graph G_{m;n} on U_{m;n} (left) and V_{m;n} (right):
//   (i,k) -- (i,j) iff (j,k) in U_n,   (i,k) -- (j,k) iff (i,j) in U_m.
struct MatchingGraph {
  std::vector<std::pair<int, int>> U, V;
  std::vector<std::vector<int>> adj;  // indexed by position in U
};

inline MatchingGraph matching_graph(const Multisegment& m, const Multisegment& nn) {
  MatchingGraph G;
  IndexSets mn = index_sets(m, nn);
  G.U = mn.U;
  G.V = mn.V;
  IndexSets um = index_sets(m, m);
  IndexSets un = index_sets(nn, nn);
  auto in = [](const std::vector<std::pair<int, int>>& set, int a, int b) {
    for (auto [x, y] : set)
      if (x == a && y == b) return true;
    return false;
  };
  G.adj.assign(G.U.size(), {});
  for (std::size_t u = 0; u < G.U.size(); ++u) {
    auto [i, k] = G.U[u];
    for (std::size_t v = 0; v < G.V.size(); ++v) {
      auto [a, b] = G.V[v];
      if (a == i && in(un.U, b, k)) G.adj[u].push_back(static_cast<int>(v));
      else if (b == k && in(um.U, i, a)) G.adj[u].push_back(static_cast<int>(v));
    }
  }
  return G;
}

// The condition M(m, n): G_{m;n} admits a matching covering all of U_{m;n}.
struct MatchingResult {
  bool holds = false;
  int max_matching = 0;
  int required = 0;  // #U_{m;n}
};

inline MatchingResult matching_condition(const Multisegment& m,
                                         const Multisegment& nn) {
  MatchingGraph G = matching_graph(m, nn);
  MatchingResult out;
  out.required = static_cast<int>(G.U.size());
  out.max_matching = hopcroft_karp(G.adj, static_cast<int>(G.U.size()),
                                   static_cast<int>(G.V.size()));
  out.holds = out.max_matching == out.required;
  return out;
}

// Matching criterion for star(m, n) = m + n (equivalence requires one
// argument to be a quasi-lamina; always necessary).
inline bool star_sum_criterion(const Multisegment& m, const Multisegment& nn) {
  return matching_condition(nn, m).holds;
}

// Both components commute (under the quasi-lamina hypothesis) iff both
// matching conditions hold.
inline bool matching_commute(const Multisegment& m, const Multisegment& nn) {
  return matching_condition(m, nn).holds && matching_condition(nn, m).holds;
}

// Matching formula for hom over the preprojective algebra when one argument
// is a quasi-lamina: #V_{m;n} minus a maximum matching of G_{m;n}.
inline long hom_pi_lamina(const Multisegment& m, const Multisegment& nn) {
  MatchingGraph G = matching_graph(m, nn);
  int mm = hopcroft_karp(G.adj, static_cast<int>(G.U.size()),
                         static_cast<int>(G.V.size()));
  return static_cast<long>(G.V.size()) - mm;
}

// ---- Peeling a balanced multisegment ---------------------------------------

// One peeling step for a nonzero balanced m: a basic representation sigma and
// the remainder m' with C = C_sigma * C', m' balanced and C' sigma-reduced.
struct PeelResult {
  BasicRep sigma;
  Multisegment rest;
  int peel_case = 1;  // 1: remove one segment; 2: left-truncate a run
};

inline PeelResult balanced_peel(const Multisegment& m) {
  if (m.empty()) throw precondition_error("balanced_peel: empty multisegment");
  if (!is_regular(m)) throw precondition_error("balanced_peel: not regular");
  const auto& D = m.segs;  // canonical order: begins strictly descending
  const int k = static_cast<int>(D.size());
  // Longest prefix with strictly descending ends (1-based index m_idx).
  int m_idx = 1;
  while (m_idx < k && D[m_idx].e < D[m_idx - 1].e) ++m_idx;
  // Smallest l with D_{i+1} prec D_i for all l <= i < m_idx.
  int l = m_idx;
  while (l > 1 && precedes(D[l - 1], D[l - 2])) --l;
  // Case split: do there exist l <= i < m_idx < j <= k with
  // e(D_{i+1}) < e(D_j) < e(D_i)?
  bool case2 = false;
  for (int i = l; i < m_idx && !case2; ++i)
    for (int j = m_idx + 1; j <= k; ++j)
      if (D[i].e < D[j - 1].e && D[j - 1].e < D[i - 1].e) {
        case2 = true;
        break;
      }
  PeelResult out;
  if (!case2) {
    out.peel_case = 1;
    out.sigma = BasicRep{BasicRep::Kind::Z, D[l - 1]};
    std::vector<Segment> rest;
    for (int i = 0; i < k; ++i)
      if (i != l - 1) rest.push_back(D[i]);
    out.rest = Multisegment(m.n, std::move(rest));
  } else {
    // Smallest l' with b(D_i) = b(D_{i+1}) + 1 for all l' <= i < m_idx.
    int lp = m_idx;
    while (lp > 1 && D[lp - 2].b == D[lp - 1].b + 1) --lp;
    out.peel_case = 2;
    out.sigma = BasicRep{BasicRep::Kind::L, Segment{D[m_idx - 1].b, D[lp - 1].b}};
    std::vector<Segment> rest;
    for (int i = 0; i < k; ++i) {
      if (i >= lp - 1 && i <= m_idx - 1) {
        if (auto t = truncate_left(D[i])) rest.push_back(*t);
      } else {
        rest.push_back(D[i]);
      }
    }
    out.rest = Multisegment(m.n, std::move(rest));
  }
  return out;
}

// ---- sigma-decomposition ---------------------------------------------------

// Decompose C = C_1 * C_2 with C_1 sigma-saturated (a star of subcomponents
// of C_sigma, recorded largest-first in peel order) and C_2 sigma-reduced.
struct SigmaDecomposition {
  std::vector<Segment> subs;  // Delta' of each peeled subcomponent, in order
  Multisegment reduced;
};

inline SigmaDecomposition sigma_decompose(const Multisegment& nn,
                                          const BasicRep& sigma,
                                          const Engine& eng) {
  // Subcomponents of C_sigma correspond to Delta' contained in Delta with the
  // same end (Z) or the same begin (L); try them largest-first.
  std::vector<Segment> candidates;
  if (sigma.kind == BasicRep::Kind::Z) {
    for (int c = sigma.seg.b; c <= sigma.seg.e; ++c)
      candidates.push_back(Segment{c, sigma.seg.e});
  } else {
    for (int c = sigma.seg.e; c >= sigma.seg.b; --c)
      candidates.push_back(Segment{sigma.seg.b, c});
  }
  SigmaDecomposition out;
  out.reduced = nn;
  std::vector<int> dims = grdim(out.reduced);
  bool progress = true;
  while (progress) {
    progress = false;
    for (const Segment& cand : candidates) {
      Multisegment param = basic_q_param(BasicRep{sigma.kind, cand}, nn.n);
      std::vector<int> pd = grdim(param);
      bool feasible = true;
      for (int r = 0; r < nn.n; ++r)
        if (pd[r] > dims[r]) {
          feasible = false;
          break;
        }
      if (!feasible) continue;
      auto verdict = eng.factor(out.reduced, param);
      if (!verdict.value) continue;
      out.subs.push_back(cand);
      out.reduced = *verdict.value;
      dims = grdim(out.reduced);
      progress = true;
      break;
    }
  }
  // The reduced part admits no nonzero map to the rigid point of C_sigma.
  Multisegment sparam = basic_q_param(sigma, nn.n);
  if (!out.reduced.empty() && eng.hom_pi(out.reduced, sparam).value != 0)
    throw no_majority_error(
        "sigma_decompose: remainder is not reduced; factorization missed");
  return out;
}

// Full sigma-decomposition report: the candidate subcomponent segments, the
// saturated part (sum of the parameters of the peeled factors), the reduced
// remainder, and whether the input was already reduced.
struct SigmaMachinery {
  std::vector<Segment> subcomponents;  // all candidates, largest first
  std::vector<Segment> peeled;         // factors actually peeled, in order
  Multisegment saturated_part;
  Multisegment reduced_part;
  bool is_reduced = false;
};

inline SigmaMachinery sigma_machinery(const Multisegment& m, const BasicRep& sigma,
                                      const Engine& eng) {
  SigmaMachinery out;
  if (sigma.kind == BasicRep::Kind::Z) {
    for (int c = sigma.seg.b; c <= sigma.seg.e; ++c)
      out.subcomponents.push_back(Segment{c, sigma.seg.e});
  } else {
    for (int c = sigma.seg.e; c >= sigma.seg.b; --c)
      out.subcomponents.push_back(Segment{sigma.seg.b, c});
  }
  Multisegment sparam = basic_q_param(sigma, m.n);
  out.is_reduced = m.empty() || eng.hom_pi(m, sparam).value == 0;
  SigmaDecomposition dec = sigma_decompose(m, sigma, eng);
  out.peeled = dec.subs;
  out.reduced_part = dec.reduced;
  out.saturated_part = Multisegment(m.n, {});
  for (const Segment& s : dec.subs)
    out.saturated_part =
        out.saturated_part + basic_q_param(BasicRep{sigma.kind, s}, m.n);
  return out;
}

// ---- Recursive recipes for the star operation ------------------------------

// star of a single segment with an arbitrary multisegment, by descending
// induction on the maximal occupied site of n (switching orientations via
// the involution):
//   - if no Gamma in n is preceded by Delta, the extension splits: Delta + n;
//   - otherwise split the opposite-orientation parameter n° = mw(n) at its
//     top end t, recurse on the lower part, and reattach the top part in the
//     opposite orientation.
inline Multisegment star_segment(const Segment& d, const Multisegment& nn,
                                 const Engine& eng) {
  if (nn.empty()) return Multisegment(nn.n, {d});
  bool prec = false;
  for (const Segment& g : nn.segs)
    if (precedes(d, g)) {
      prec = true;
      break;
    }
  if (!prec) return Multisegment(nn.n, {d}) + nn;
  Multisegment no = eng.mw(nn).value;
  int t = 0;
  for (const Segment& s : no.segs) t = std::max(t, s.e);
  std::vector<Segment> top, low;
  for (const Segment& s : no.segs)
    (s.e == t ? top : low).push_back(s);
  Multisegment n2(nn.n, std::move(top));
  Multisegment n1(nn.n, std::move(low));
  Multisegment m1 = star_segment(d, eng.mw(n1).value, eng);
  return eng.mw(eng.mw(m1).value + n2).value;
}

inline Multisegment star_balanced(const Multisegment& m, const Multisegment& nn,
                                  const Engine& eng);

// star of a basic component with an arbitrary multisegment.
inline Multisegment star_basic(const BasicRep& sigma, const Multisegment& nn,
                               const Engine& eng) {
  if (sigma.kind == BasicRep::Kind::Z) return star_segment(sigma.seg, nn, eng);
  return star_balanced(singletons(sigma.seg, nn.n), nn, eng);
}

// star of a balanced multisegment with an arbitrary one: peel m = sigma * m',
// sigma-decompose n, recurse, and reattach (sigma innermost, then the peeled
// subcomponents of C_sigma, first-peeled outermost).
inline Multisegment star_balanced(const Multisegment& m, const Multisegment& nn,
                                  const Engine& eng) {
  if (m.empty()) return nn;
  if (m.size() == 1) return star_segment(m.segs[0], nn, eng);
  PeelResult peel = balanced_peel(m);
  SigmaDecomposition dec = sigma_decompose(nn, peel.sigma, eng);
  Multisegment y = star_balanced(peel.rest, dec.reduced, eng);
  y = star_basic(peel.sigma, y, eng);
  for (auto it = dec.subs.rbegin(); it != dec.subs.rend(); ++it)
    y = star_basic(BasicRep{peel.sigma.kind, *it}, y, eng);
  return y;
}

// Dispatch: handles a single-segment or balanced argument on either side
// (the right side via duality, star(m,n) = star(n^, m^)^).
inline Multisegment star_recipe(const Multisegment& m, const Multisegment& nn,
                                const Engine& eng) {
  if (m.n != nn.n) throw precondition_error("ambient size mismatch in star_recipe");
  if (m.empty()) return nn;
  if (nn.empty()) return m;
  if (m.size() == 1) return star_segment(m.segs[0], nn, eng);
  if (nn.size() == 1)
    return dual(star_segment(dual_segment(nn.segs[0], nn.n), dual(m), eng));
  if (is_regular(m) && is_balanced(m)) return star_balanced(m, nn, eng);
  if (is_regular(nn) && is_balanced(nn))
    return dual(star_balanced(dual(nn), dual(m), eng));
  throw precondition_error(
      "star_recipe requires a single-segment or balanced argument");
}

}  // namespace compstar
