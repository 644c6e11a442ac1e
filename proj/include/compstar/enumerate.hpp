#pragma once

// Enumeration and random sampling of multisegments, used by the verification
// suites and the tests.

#include <algorithm>
#include <functional>
#include <numeric>
#include <random>
#include <vector>

#include "compstar/common.hpp"
#include "compstar/patterns.hpp"
#include "compstar/segment.hpp"

namespace compstar {

inline std::vector<Segment> all_segments(int n) {
  std::vector<Segment> out;
  for (int a = 1; a <= n; ++a)
    for (int b = a; b <= n; ++b) out.push_back(Segment{a, b});
  return out;
}

// All multisegments with ambient size n and at most max_segs segments
// (multisets of segments, including the empty one). Guarded against blowup.
inline std::vector<Multisegment> enumerate_multisegments(int n, int max_segs,
                                                         std::size_t limit = 1000000) {
  std::vector<Segment> segs = all_segments(n);
  std::vector<Multisegment> out;
  std::vector<Segment> cur;
  std::function<void(std::size_t)> rec = [&](std::size_t from) {
    if (out.size() >= limit)
      throw precondition_error("enumerate_multisegments: too many multisegments");
    out.push_back(Multisegment(n, cur));
    if (static_cast<int>(cur.size()) == max_segs) return;
    for (std::size_t i = from; i < segs.size(); ++i) {
      cur.push_back(segs[i]);
      rec(i);  // multisets: allow repeats
      cur.pop_back();
    }
  };
  rec(0);
  return out;
}

inline Multisegment random_multisegment(int n, int max_segs, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> count(0, max_segs);
  std::uniform_int_distribution<int> site(1, n);
  std::vector<Segment> segs;
  int k = count(rng);
  for (int i = 0; i < k; ++i) {
    int a = site(rng), b = site(rng);
    if (a > b) std::swap(a, b);
    segs.push_back(Segment{a, b});
  }
  return Multisegment(n, std::move(segs));
}

// A random regular multisegment: distinct begins and distinct ends, paired so
// that the pairing is order-preserving per the canonical construction
// (random distinct begins and ends, each sorted, then matched by a random
// permutation that keeps segments valid; falls back to the identity pairing).
inline Multisegment random_regular(int n, int max_segs, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> count(1, max_segs);
  int k = std::min(count(rng), n);
  std::vector<int> sites(n);
  std::iota(sites.begin(), sites.end(), 1);
  std::shuffle(sites.begin(), sites.end(), rng);
  std::vector<int> begins(sites.begin(), sites.begin() + k);
  std::shuffle(sites.begin(), sites.end(), rng);
  std::vector<int> ends(sites.begin(), sites.begin() + k);
  std::sort(begins.begin(), begins.end());
  std::sort(ends.begin(), ends.end());
  // Random bijection begins -> ends with b <= e; retry a few times, then use
  // the sorted pairing, which is always valid when possible.
  for (int attempt = 0; attempt < 20; ++attempt) {
    std::vector<int> perm(k);
    std::iota(perm.begin(), perm.end(), 0);
    if (attempt < 19) std::shuffle(perm.begin(), perm.end(), rng);
    bool ok = true;
    std::vector<Segment> segs;
    for (int i = 0; i < k && ok; ++i) {
      if (begins[i] > ends[perm[i]]) ok = false;
      else segs.push_back(Segment{begins[i], ends[perm[i]]});
    }
    if (ok) return Multisegment(n, std::move(segs));
  }
  // Sorted pairing failed too: shrink to the singletons of the begins.
  std::vector<Segment> segs;
  for (int i = 0; i < k; ++i) segs.push_back(Segment{begins[i], begins[i]});
  return Multisegment(n, std::move(segs));
}

// A random ladder: strictly increasing begins and ends.
inline Multisegment random_ladder(int n, int max_segs, std::mt19937_64& rng) {
  for (;;) {
    Multisegment m = random_regular(n, max_segs, rng);
    std::vector<Segment> segs = m.segs;
    std::sort(segs.begin(), segs.end(),
              [](const Segment& a, const Segment& b) { return a.b < b.b; });
    bool ok = true;
    for (std::size_t i = 0; i + 1 < segs.size(); ++i)
      if (segs[i + 1].e <= segs[i].e) ok = false;
    if (ok && is_ladder(m)) return m;
  }
}

inline std::vector<std::vector<int>> all_permutations(int k) {
  std::vector<int> w(k);
  std::iota(w.begin(), w.end(), 1);
  std::vector<std::vector<int>> out;
  do {
    out.push_back(w);
  } while (std::next_permutation(w.begin(), w.end()));
  return out;
}

}  // namespace compstar
