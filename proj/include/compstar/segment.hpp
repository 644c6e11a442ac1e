#pragma once

// Segments [a,b], multisegments, the precedence order, gradings, duality,
// index sets, Hom/Ext dimension formulas for the linearly oriented quiver,
// and basic representations Z(Delta) / L(Delta).

#include <algorithm>
#include <cctype>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "compstar/common.hpp"

namespace compstar {

// A segment [b, e] with 1 <= b <= e <= n (n carried by the ambient context).
struct Segment {
  int b = 1;  // begin
  int e = 1;  // end

  int length() const { return e - b + 1; }
  bool contains(int site) const { return b <= site && site <= e; }
  friend bool operator==(const Segment&, const Segment&) = default;
  friend auto operator<=>(const Segment&, const Segment&) = default;
};

// Precedence: [a,b] precedes [c,d] iff a+1 <= c <= b+1 <= d.
inline bool precedes(const Segment& d, const Segment& g) {
  return d.b + 1 <= g.b && g.b <= d.e + 1 && d.e + 1 <= g.e;
}

// g precedes the right shift [a+1, b+1] of d. Expanding the definition,
// this is b(g) <= b(d) <= e(g) <= e(d), independent of the ambient size.
inline bool precedes_shift(const Segment& g, const Segment& d) {
  return g.b <= d.b && d.b <= g.e && g.e <= d.e;
}

// Right shift [a,b] -> [a+1,b+1]; absent when it leaves the ambient window.
inline std::optional<Segment> shift_right(const Segment& s, int n) {
  if (s.e + 1 > n) return std::nullopt;
  return Segment{s.b + 1, s.e + 1};
}

// Left truncation [a,b] -> [a+1,b]; absent (empty segment) when a == b.
inline std::optional<Segment> truncate_left(const Segment& s) {
  if (s.b == s.e) return std::nullopt;
  return Segment{s.b + 1, s.e};
}

inline Segment dual_segment(const Segment& s, int n) {
  return Segment{n + 1 - s.e, n + 1 - s.b};
}

// A multiset of segments with explicit ambient size n, stored in canonical
// order: begin descending, then end descending. In this order no earlier
// segment precedes a later one, which makes it a valid standard order.
struct Multisegment {
  int n = 1;
  std::vector<Segment> segs;

  Multisegment() = default;
  Multisegment(int n_, std::vector<Segment> s) : n(n_), segs(std::move(s)) {
    canonicalize();
  }

  void canonicalize() {
    for (const Segment& s : segs) {
      if (s.b < 1 || s.b > s.e || s.e > n)
        throw parse_error("segment [" + std::to_string(s.b) + "," +
                          std::to_string(s.e) + "] out of range for n=" +
                          std::to_string(n));
    }
    std::sort(segs.begin(), segs.end(), [](const Segment& x, const Segment& y) {
      if (x.b != y.b) return x.b > y.b;
      return x.e > y.e;
    });
  }

  bool empty() const { return segs.empty(); }
  std::size_t size() const { return segs.size(); }

  friend bool operator==(const Multisegment&, const Multisegment&) = default;
};

inline Multisegment operator+(const Multisegment& a, const Multisegment& b) {
  if (a.n != b.n) throw precondition_error("ambient size mismatch in +");
  std::vector<Segment> s = a.segs;
  s.insert(s.end(), b.segs.begin(), b.segs.end());
  return Multisegment(a.n, std::move(s));
}

inline std::string format_multisegment(const Multisegment& m) {
  if (m.segs.empty()) return "0";
  std::string out;
  for (std::size_t i = 0; i < m.segs.size(); ++i) {
    if (i) out += "+";
    out += "[" + std::to_string(m.segs[i].b) + "," +
           std::to_string(m.segs[i].e) + "]";
  }
  return out;
}

// Grammar: mseg := "0" | seg ("+" seg)* ; seg := "[" int "," int "]".
// The ambient size defaults to the maximal end; n_override may enlarge it.
inline Multisegment parse_multisegment(const std::string& text,
                                       int n_override = 0) {
  std::vector<Segment> segs;
  std::size_t i = 0;
  auto skip_ws = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  auto parse_int = [&]() -> int {
    skip_ws();
    std::size_t start = i;
    if (i < text.size() && (text[i] == '-' || text[i] == '+')) ++i;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
    if (i == start) throw parse_error("expected integer in multisegment at offset " +
                                      std::to_string(start));
    return std::stoi(text.substr(start, i - start));
  };
  skip_ws();
  if (i < text.size() && text[i] == '0' &&
      (i + 1 == text.size() ||
       text.find_first_not_of(" \t", i + 1) == std::string::npos)) {
    // the empty multisegment
    int n = n_override > 0 ? n_override : 1;
    return Multisegment(n, {});
  }
  for (;;) {
    skip_ws();
    if (i >= text.size() || text[i] != '[')
      throw parse_error("expected '[' in multisegment");
    ++i;
    int b = parse_int();
    skip_ws();
    if (i >= text.size() || text[i] != ',')
      throw parse_error("expected ',' in segment");
    ++i;
    int e = parse_int();
    skip_ws();
    if (i >= text.size() || text[i] != ']')
      throw parse_error("expected ']' in segment");
    ++i;
    if (b < 1 || b > e) throw parse_error("invalid segment bounds [" +
                                          std::to_string(b) + "," +
                                          std::to_string(e) + "]");
    segs.push_back(Segment{b, e});
    skip_ws();
    if (i >= text.size()) break;
    if (text[i] != '+') throw parse_error("expected '+' between segments");
    ++i;
  }
  int max_end = 1;
  for (const Segment& s : segs) max_end = std::max(max_end, s.e);
  int n = n_override > 0 ? n_override : max_end;
  if (n < max_end)
    throw parse_error("ambient size n=" + std::to_string(n) +
                      " smaller than maximal end " + std::to_string(max_end));
  return Multisegment(n, std::move(segs));
}

inline Multisegment dual(const Multisegment& m) {
  std::vector<Segment> segs;
  segs.reserve(m.segs.size());
  for (const Segment& s : m.segs) segs.push_back(dual_segment(s, m.n));
  return Multisegment(m.n, std::move(segs));
}

// Graded dimension: counts[i-1] = number of segments containing site i.
inline std::vector<int> grdim(const Multisegment& m) {
  std::vector<int> d(m.n, 0);
  for (const Segment& s : m.segs)
    for (int r = s.b; r <= s.e; ++r) ++d[r - 1];
  return d;
}

// U_{m;n} = {(i,j) : G_j prec D_i}, V_{m;n} = {(i,j) : G_j prec +D_i},
// with D from m and G from n, 0-based canonical indices.
struct IndexSets {
  std::vector<std::pair<int, int>> U, V;
};

inline IndexSets index_sets(const Multisegment& m, const Multisegment& nn) {
  if (m.n != nn.n) throw precondition_error("ambient size mismatch in index_sets");
  IndexSets out;
  for (int i = 0; i < static_cast<int>(m.segs.size()); ++i)
    for (int j = 0; j < static_cast<int>(nn.segs.size()); ++j) {
      if (precedes(nn.segs[j], m.segs[i])) out.U.emplace_back(i, j);
      if (precedes_shift(nn.segs[j], m.segs[i])) out.V.emplace_back(i, j);
    }
  return out;
}

// homQ = dim Hom_Q(M_Q(m), M_Q(n)) = #V_{m;n};
// extQ = dim Ext^1_Q(M_Q(m), M_Q(n)) = #{(D in m, G in n) : D prec G}.
struct QuiverDims {
  long homQ = 0;
  long extQ = 0;
};

inline QuiverDims quiver_dims(const Multisegment& m, const Multisegment& nn) {
  if (m.n != nn.n) throw precondition_error("ambient size mismatch in quiver_dims");
  QuiverDims out;
  for (const Segment& d : m.segs)
    for (const Segment& g : nn.segs) {
      if (precedes_shift(g, d)) ++out.homQ;
      if (precedes(d, g)) ++out.extQ;
    }
  return out;
}

// Basic representations: Z(Delta) or L(Delta).
struct BasicRep {
  enum class Kind { Z, L };
  Kind kind = Kind::Z;
  Segment seg;

  friend bool operator==(const BasicRep&, const BasicRep&) = default;
};

inline std::string format_basic(const BasicRep& s) {
  return std::string(s.kind == BasicRep::Kind::Z ? "Z" : "L") + "[" +
         std::to_string(s.seg.b) + "," + std::to_string(s.seg.e) + "]";
}

inline BasicRep parse_basic(const std::string& text) {
  if (text.empty() || (text[0] != 'Z' && text[0] != 'L'))
    throw parse_error("basic representation must start with Z or L");
  Multisegment m = parse_multisegment(text.substr(1));
  if (m.size() != 1) throw parse_error("basic representation takes one segment");
  return BasicRep{text[0] == 'Z' ? BasicRep::Kind::Z : BasicRep::Kind::L,
                  m.segs[0]};
}

// All sites of Delta as singleton segments.
inline Multisegment singletons(const Segment& s, int n) {
  std::vector<Segment> segs;
  for (int r = s.b; r <= s.e; ++r) segs.push_back(Segment{r, r});
  return Multisegment(n, std::move(segs));
}

// Parameter (in the Q orientation) of the component attached to a basic
// representation: a single segment for Z(Delta), all singletons for L(Delta).
inline Multisegment basic_q_param(const BasicRep& s, int n) {
  if (s.kind == BasicRep::Kind::Z) return Multisegment(n, {s.seg});
  return singletons(s.seg, n);
}

// sigma-index: nullopt (= -infinity) when some site of m lies outside Delta;
// otherwise the multiplicity of e(Delta) (for Z) or b(Delta) (for L) in the
// multiset of all sites of m.
inline std::optional<int> sigma_index(const Multisegment& m, const BasicRep& s) {
  for (const Segment& d : m.segs)
    if (d.b < s.seg.b || d.e > s.seg.e) return std::nullopt;
  int target = s.kind == BasicRep::Kind::Z ? s.seg.e : s.seg.b;
  int count = 0;
  for (const Segment& d : m.segs)
    if (d.contains(target)) ++count;
  return count;
}

}  // namespace compstar
