#pragma once

// Graded maps (degree +1 / -1), the normal form attached to a multisegment,
// rank profiles, and recovery of the multisegment from the ranks.

#include <vector>

#include "compstar/field.hpp"
#include "compstar/segment.hpp"

namespace compstar {

// A graded linear map T of degree +1 or -1 on a graded space with dimensions
// dims[1..n]. Blocks are indexed by source site: for degree +1, blocks[r]
// maps V_r -> V_{r+1} (r = 1..n-1); for degree -1, blocks[r] maps
// V_r -> V_{r-1} (r = 2..n).
struct GradedMap {
  int n = 1;
  int degree = +1;
  std::vector<int> dims;    // size n+1, 1-based; dims[0] unused
  std::vector<Mat> blocks;  // size n+1, indexed by source site

  static GradedMap zero(int n, int degree, const std::vector<int>& d) {
    GradedMap t;
    t.n = n;
    t.degree = degree;
    t.dims.assign(n + 1, 0);
    for (int r = 1; r <= n; ++r) t.dims[r] = d[r - 1];
    t.blocks.assign(n + 1, Mat());
    if (degree == +1) {
      for (int r = 1; r < n; ++r) t.blocks[r] = Mat(t.dims[r + 1], t.dims[r]);
    } else {
      for (int r = 2; r <= n; ++r) t.blocks[r] = Mat(t.dims[r - 1], t.dims[r]);
    }
    return t;
  }
};

// Indices (into the canonical segment order) of the segments of m containing
// site r; this fixes the basis ordering of each graded piece.
inline std::vector<int> site_basis(const Multisegment& m, int r) {
  std::vector<int> idx;
  for (int i = 0; i < static_cast<int>(m.segs.size()); ++i)
    if (m.segs[i].contains(r)) idx.push_back(i);
  return idx;
}

inline int basis_position(const Multisegment& m, int r, int seg_index) {
  int pos = 0;
  for (int i = 0; i < seg_index; ++i)
    if (m.segs[i].contains(r)) ++pos;
  return pos;
}

// The normal form of m: one Jordan chain per segment, i.e. the degree +1 map
// with f_{i,r} -> f_{i,r+1} inside each segment and 0 at segment ends.
inline GradedMap normal_form(const Multisegment& m) {
  GradedMap t = GradedMap::zero(m.n, +1, grdim(m));
  for (int r = 1; r < m.n; ++r) {
    auto src = site_basis(m, r);
    auto dst = site_basis(m, r + 1);
    for (std::size_t p = 0; p < src.size(); ++p) {
      int i = src[p];
      if (!m.segs[i].contains(r + 1)) continue;
      int q = 0;
      while (dst[q] != i) ++q;
      t.blocks[r].at(q, p) = 1;
    }
  }
  return t;
}

// N(a,b) = rank of the composite V_a -> V_b along a degree +1 map, with the
// boundary convention N(0,.) = N(.,n+1) = 0 and N(a,a) = dim V_a.
struct RankProfile {
  int n = 1;
  std::vector<int> dims;            // 1-based
  std::vector<std::vector<int>> N;  // N[a][b], 1 <= a <= b <= n

  int at(int a, int b) const {
    if (a < 1 || b > n || a > b) return 0;
    return N[a][b];
  }
};

inline RankProfile rank_profile(const Fp& F, const GradedMap& t) {
  if (t.degree != +1)
    throw precondition_error("rank_profile expects a degree +1 map");
  RankProfile P;
  P.n = t.n;
  P.dims.assign(t.n + 1, 0);
  for (int r = 1; r <= t.n; ++r) P.dims[r] = t.dims[r];
  P.N.assign(t.n + 1, std::vector<int>(t.n + 1, 0));
  for (int a = 1; a <= t.n; ++a) {
    P.N[a][a] = t.dims[a];
    Mat comp = Mat::identity(t.dims[a]);
    for (int b = a + 1; b <= t.n; ++b) {
      comp = mat_mul(F, t.blocks[b - 1], comp);
      P.N[a][b] = static_cast<int>(rank(F, comp));
    }
  }
  return P;
}

// Inclusion-exclusion over "the Jordan block covers [a,b]":
// mult([a,b]) = N(a,b) - N(a-1,b) - N(a,b+1) + N(a-1,b+1).
inline Multisegment multisegment_from_ranks(const RankProfile& P) {
  std::vector<Segment> segs;
  for (int a = 1; a <= P.n; ++a)
    for (int b = a; b <= P.n; ++b) {
      int mult = P.at(a, b) - P.at(a - 1, b) - P.at(a, b + 1) + P.at(a - 1, b + 1);
      if (mult < 0)
        throw precondition_error("inconsistent rank profile: negative multiplicity");
      for (int c = 0; c < mult; ++c) segs.push_back(Segment{a, b});
    }
  return Multisegment(P.n, std::move(segs));
}

// Reverse the grading i -> n+1-i, turning a degree -1 map into a degree +1
// map on the reversed graded space.
inline GradedMap reverse_grading(const GradedMap& t) {
  if (t.degree != -1)
    throw precondition_error("reverse_grading expects a degree -1 map");
  GradedMap out;
  out.n = t.n;
  out.degree = +1;
  out.dims.assign(t.n + 1, 0);
  for (int s = 1; s <= t.n; ++s) out.dims[s] = t.dims[t.n + 1 - s];
  out.blocks.assign(t.n + 1, Mat());
  for (int s = 1; s < t.n; ++s) out.blocks[s] = t.blocks[t.n + 1 - s];
  return out;
}

// Orbit parameter of a degree +1 map.
inline Multisegment recover_multisegment(const Fp& F, const GradedMap& t) {
  return multisegment_from_ranks(rank_profile(F, t));
}

}  // namespace compstar
