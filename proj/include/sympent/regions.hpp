// Copyright 2026 The sympent Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

/*
 * Exact membership predicates for the parameter-plane regions of the
 * symplectic-covariant map family L_{p,q} and the invariant state family
 * rho_{a,b}:
 *
 *   P_k  order-k positivity region of L_{p,q} (P_1 positive, P_d completely
 *        positive; P_d also characterizes when rho_{a,b} is a state),
 *   D    decomposability region,
 *   T    PPT region of rho_{a,b},
 *   S_k  Schmidt-number-at-most-k region of rho_{a,b} (S_1 separable).
 *
 * All predicates evaluate closed inequality systems in exact rational
 * arithmetic, so boundary points are classified deterministically. The
 * curved boundary pieces are arcs of the f_poly hyperbolas (map side) and
 * g_poly ellipses (state side) from the geometry module.
 */

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "sympent/errors.hpp"
#include "sympent/geometry.hpp"
#include "sympent/rational.hpp"

namespace sympent::regions {

using geometry::ConicCoeffs;
using geometry::f_poly;
using geometry::g_poly;
using geometry::line_l;

/// Validated even dimension >= 4 of the single-particle space.
struct Dimension {
  explicit Dimension(int d) : value(d) {
    if (d < 4 || d % 2 != 0) {
      throw BadDimension("dimension must be an even integer >= 4, got " +
                         std::to_string(d));
    }
  }
  int value;

  friend bool operator==(Dimension a, Dimension b) {
    return a.value == b.value;
  }
};

/// Identifies one of the parameter-plane regions.
struct RegionId {
  enum class Tag { Pk, D, T, Sk };
  Tag tag;
  int k = 0;  // meaningful for Pk and Sk only

  static RegionId P(int k) { return {Tag::Pk, k}; }
  static RegionId Dec() { return {Tag::D, 0}; }
  static RegionId Ppt() { return {Tag::T, 0}; }
  static RegionId S(int k) { return {Tag::Sk, k}; }
};

/// A curved piece of a region boundary: an exact conic together with the two
/// rational endpoints of the arc.
struct CurveSegment {
  ConicCoeffs conic;
  RationalPoint2 from;
  RationalPoint2 to;
};

/// Extreme points of a region: isolated vertices plus (for the curved cases)
/// whole arcs of extreme points.
struct ExtremeSet {
  std::vector<RationalPoint2> vertices;
  std::vector<CurveSegment> curve_segments;
};

/// Aggregate classification of a parameter point, read on the map side
/// (positivity, decomposability) and the state side (state, PPT, Schmidt
/// number of rho and of its partial transpose).
struct RegionReport {
  bool is_state = false;
  int max_kpos = 0;
  bool decomposable = false;
  bool ppt = false;
  std::optional<int> schmidt_number;
  std::optional<int> schmidt_number_gamma;
};

namespace detail {

inline void require_k(Dimension d, int k) {
  if (k < 1 || k > d.value) {
    throw UnsupportedRegion("index k must satisfy 1 <= k <= " +
                            std::to_string(d.value) + ", got " +
                            std::to_string(k));
  }
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Map-side predicates
// ---------------------------------------------------------------------------

/// Order-k positivity of L_{p,q}. k = 1 is positivity, k = d complete
/// positivity; intermediate orders split into four cases by the size and
/// parity of k, with hyperbolic pieces f_{k-1} >= 0 and f_{2k-d} >= 0.
inline bool in_P_k(Dimension d, int k, const RationalPoint2& pt) {
  detail::require_k(d, k);
  const Rational dd(d.value), kk(k);
  const Rational &p = pt.x, &q = pt.y;
  if (k == 1) {
    return p + q <= 1 && p + (1 - dd) * q <= 1 && (1 - dd) * p + q <= 1;
  }
  if (k == d.value) {
    return p + (1 - dd) * q <= 1 && p + (1 + dd) * q <= 1 &&
           (1 - dd) * p + q <= Rational(1) / (dd + 1);
  }
  if (p + (1 + dd) * q > 1 || p + (1 - dd) * q > 1) return false;
  const bool small_k = 2 * k <= d.value;
  const bool even_k = k % 2 == 0;
  if (even_k) {
    if ((1 - kk * dd) * p + (1 + dd) * q > 1) return false;
  } else {
    if (f_poly(d.value, k, Rational(k - 1)).eval(pt) < 0) return false;
  }
  if (small_k) {
    return (1 - kk * dd) * p + q <= 1;
  }
  return f_poly(d.value, k, Rational(2 * k - d.value)).eval(pt) >= 0;
}

/// Decomposability of L_{p,q}: the convex hull of the completely positive
/// region and its transpose mirror image.
inline bool in_D(Dimension d, const RationalPoint2& pt) {
  const Rational dd(d.value);
  const Rational &p = pt.x, &q = pt.y;
  return p + q >= -(2 + dd) / (dd * dd - dd - 2) && p + q <= 1 &&
         p + (1 - dd) * q <= 1 && (1 - dd) * p + q <= 1;
}

/// Largest k with L_{p,q} order-k positive; 0 when the map is not positive.
inline int max_kpos(Dimension d, const RationalPoint2& pt) {
  for (int k = d.value; k >= 1; --k) {
    if (in_P_k(d, k, pt)) return k;
  }
  return 0;
}

// ---------------------------------------------------------------------------
// State-side predicates
// ---------------------------------------------------------------------------

/// PPT region of rho_{a,b}: positivity of rho and of its partial transpose.
inline bool in_T(Dimension d, const RationalPoint2& pt) {
  const Rational dd(d.value);
  const Rational &a = pt.x, &b = pt.y;
  const Rational bound = Rational(1) / (dd + 1);
  return (1 - dd) * a + b <= bound && a + (1 - dd) * b <= bound &&
         a + (1 + dd) * b <= 1 && (1 + dd) * a + b <= 1;
}

namespace detail {

/// The disjunctive curved-corner condition of the Schmidt regions:
/// l <= 0, or l >= 0 together with g <= 0.
inline bool corner_condition(const geometry::LinearForm& l,
                             const ConicCoeffs& g, const RationalPoint2& pt) {
  const Rational lv = l.value(pt);
  return lv <= 0 || (lv >= 0 && g.eval(pt) <= 0);
}

}  // namespace detail

/// Schmidt number at most k for rho_{a,b}. Non-states are never members;
/// beyond the state condition the membership systems split into the same
/// four size/parity cases as order-k positivity, with elliptic corner
/// pieces governed by (l_1, g_1) and (l_2, g_2).
inline bool in_S_k(Dimension d, int k, const RationalPoint2& pt) {
  detail::require_k(d, k);
  // Being a state means (a,b) lies in the complete-positivity triangle.
  if (!in_P_k(d, d.value, pt)) return false;
  if (k == d.value) return true;
  const Rational dd(d.value), kk(k);
  const Rational &a = pt.x, &b = pt.y;
  const Rational bound = Rational(1) / (dd + 1);
  if (k == 1) {
    return (1 - dd) * a + b <= bound && a + (1 - dd) * b <= bound &&
           a + b <= bound;
  }
  const Rational lhs = (1 - dd) * a + b;
  if (lhs > bound || lhs < -(kk * dd - 1) / (dd + 1)) return false;
  if (a + (1 - dd) * b > 1) return false;
  const bool small_k = 2 * k <= d.value;
  if (small_k) {
    if ((dd - kk - 1) / (kk * dd - kk - 1) * a + b > bound) return false;
  } else {
    if (a + (1 + dd) * b > 1) return false;
    if (!detail::corner_condition(line_l(d.value, k, 2),
                                  g_poly(d.value, k, 2), pt)) {
      return false;
    }
  }
  if (k % 2 != 0) {
    if (!detail::corner_condition(line_l(d.value, k, 1),
                                  g_poly(d.value, k, 1), pt)) {
      return false;
    }
  }
  return true;
}

/// Smallest k with rho_{a,b} of Schmidt number at most k.
inline int schmidt_number(Dimension d, const RationalPoint2& pt) {
  if (!in_P_k(d, d.value, pt)) {
    throw NotAState("schmidt_number: rho_{a,b} is not positive semidefinite");
  }
  for (int k = 1; k < d.value; ++k) {
    if (in_S_k(d, k, pt)) return k;
  }
  return d.value;
}

/// Full classification of a parameter point on both the map side and the
/// state side. Schmidt numbers are present only where defined: for the
/// state itself when rho_{a,b} is positive semidefinite, and for its partial
/// transpose when rho_{b,a} is (the two spectra agree up to relabeling).
inline RegionReport classify(Dimension d, const RationalPoint2& pt) {
  RegionReport report;
  report.max_kpos = max_kpos(d, pt);
  report.decomposable = in_D(d, pt);
  report.ppt = in_T(d, pt);
  report.is_state = in_P_k(d, d.value, pt);
  if (report.is_state) {
    report.schmidt_number = schmidt_number(d, pt);
  }
  const RationalPoint2 swapped = pt.swapped();
  if (in_P_k(d, d.value, swapped)) {
    report.schmidt_number_gamma = schmidt_number(d, swapped);
  }
  return report;
}

// ---------------------------------------------------------------------------
// Extreme points and boundary polylines
// ---------------------------------------------------------------------------

/// Extreme points of the order-k positivity region: three vertices for
/// k = 1 and k = d, otherwise four vertices plus the applicable hyperbola
/// arcs (f_{k-1} for odd k, f_{2k-d} for k > d/2).
inline ExtremeSet extreme_points(Dimension d, int k) {
  detail::require_k(d, k);
  const Rational dd(d.value), kk(k);
  const Rational d2 = dd * dd - dd - 2;
  ExtremeSet out;
  if (k == 1) {
    out.vertices = {RationalPoint2{1, 0}, RationalPoint2{0, 1},
                    RationalPoint2{Rational(-1) / (dd - 2),
                                   Rational(-1) / (dd - 2)}};
    return out;
  }
  const RationalPoint2 v1{1, 0};
  const RationalPoint2 v2{0, Rational(1) / (dd + 1)};
  const RationalPoint2 v3{Rational(-1) / (kk * dd - 1), 0};
  const RationalPoint2 corner{-2 / d2, -dd / d2};
  if (k == d.value) {
    out.vertices = {v1, v2, corner};
    return out;
  }
  const bool small_k = 2 * k <= d.value;
  if (small_k) {
    out.vertices = {v1, v2, v3,
                    RationalPoint2{Rational(-1) / (kk * dd - kk - 1),
                                   -kk / (kk * dd - kk - 1)}};
  } else {
    out.vertices = {v1, v2, v3, corner};
  }
  if (k % 2 != 0) {
    out.curve_segments.push_back(
        {f_poly(d.value, k, Rational(k - 1)), v2, v3});
  }
  if (!small_k) {
    out.curve_segments.push_back(
        {f_poly(d.value, k, Rational(2 * k - d.value)), v3, corner});
  }
  return out;
}

namespace detail {

struct ArcSpec {
  ConicCoeffs conic;
  std::vector<RationalPoint2> anchors;
};

/// One corner of a boundary polyline, optionally followed by a conic arc
/// running to the next corner.
struct PathSeg {
  RationalPoint2 start;
  std::optional<ArcSpec> arc;
};

inline bool lex_less(const RationalPoint2& a, const RationalPoint2& b) {
  return a.x != b.x ? a.x < b.x : a.y < b.y;
}

/// Samples n interior points of the boundary arc from `from` to `to`,
/// selecting a chord-sweep anchor among the known rational points of the
/// conic. Correct-branch selection is exact: the regions are convex and
/// contain the origin strictly inside, so every genuine boundary-arc point
/// lies strictly on the far side of the chord from the origin.
inline std::vector<RationalPoint2> sample_branch(const ConicCoeffs& conic,
                                                 const RationalPoint2& from,
                                                 const RationalPoint2& to,
                                                 const ArcSpec& spec, int n) {
  const Rational dx = to.x - from.x;
  const Rational dy = to.y - from.y;
  const geometry::LinearForm chord{dy, -dx, dy * from.x - dx * from.y};
  const Rational origin_side = chord.value(RationalPoint2{0, 0});
  if (origin_side == 0) {
    throw DegenerateConic("boundary arc chord passes through the origin");
  }
  const bool origin_positive = origin_side > 0;
  for (const auto& anchor : spec.anchors) {
    if (anchor == from || anchor == to) continue;
    if (conic.eval(anchor) != 0) continue;
    if (chord.value(anchor) == 0) continue;
    std::vector<RationalPoint2> pts;
    try {
      pts = geometry::sample_conic_arc(conic, from, to, anchor, n);
    } catch (const DegenerateConic&) {
      continue;
    }
    bool ok = true;
    for (const auto& p : pts) {
      const Rational side = chord.value(p);
      if (side == 0 || (side > 0) == origin_positive) {
        ok = false;
        break;
      }
    }
    if (ok) return pts;
  }
  throw DegenerateConic("no admissible chord-sweep anchor for boundary arc");
}

/// Emits the closed polyline for a counterclockwise cycle of path segments:
/// rotates the cycle to start at the lexicographically largest corner,
/// samples each arc, and repeats the first point at the end.
inline std::vector<RationalPoint2> emit_path(std::vector<PathSeg> segs,
                                             int n) {
  // Drop zero-length straight segments (adjacent corners may coincide for
  // special k, e.g. the two ellipse arcs meeting at a common point).
  for (std::size_t i = 0; i < segs.size();) {
    const std::size_t next = (i + 1) % segs.size();
    if (!segs[i].arc.has_value() && segs[i].start == segs[next].start) {
      segs.erase(segs.begin() + static_cast<std::ptrdiff_t>(i));
    } else {
      ++i;
    }
  }
  std::size_t best = 0;
  for (std::size_t i = 1; i < segs.size(); ++i) {
    if (lex_less(segs[best].start, segs[i].start)) best = i;
  }
  std::rotate(segs.begin(), segs.begin() + static_cast<std::ptrdiff_t>(best),
              segs.end());
  std::vector<RationalPoint2> out;
  for (std::size_t i = 0; i < segs.size(); ++i) {
    const auto& seg = segs[i];
    out.push_back(seg.start);
    if (seg.arc.has_value()) {
      const auto& next = segs[(i + 1) % segs.size()].start;
      const auto pts = sample_branch(seg.arc->conic, seg.start, next,
                                     *seg.arc, n);
      out.insert(out.end(), pts.begin(), pts.end());
    }
  }
  out.push_back(out.front());
  return out;
}

inline std::vector<RationalPoint2> f_anchors(Dimension d, int k) {
  const Rational dd(d.value), kk(k);
  return {RationalPoint2{1, 0}, RationalPoint2{0, 1},
          RationalPoint2{0, Rational(1) / (dd + 1)},
          RationalPoint2{Rational(-1) / (kk * dd - 1), 0}};
}

inline std::vector<RationalPoint2> g_anchors(Dimension d, int k, int which) {
  std::vector<RationalPoint2> anchors;
  for (const auto& row : geometry::table_rows(d.value, k, which == 1 ? 2 : 3)) {
    anchors.push_back(row.image);
  }
  return anchors;
}

inline std::vector<PathSeg> map_region_path(Dimension d, int k) {
  const Rational dd(d.value), kk(k);
  const Rational d2 = dd * dd - dd - 2;
  if (k == 1) {
    const Rational m = Rational(-1) / (dd - 2);
    return {{RationalPoint2{1, 0}, {}},
            {RationalPoint2{0, 1}, {}},
            {RationalPoint2{m, m}, {}}};
  }
  const RationalPoint2 v1{1, 0};
  const RationalPoint2 v2{0, Rational(1) / (dd + 1)};
  const RationalPoint2 corner{-2 / d2, -dd / d2};
  if (k == d.value) {
    return {{v1, {}}, {v2, {}}, {corner, {}}};
  }
  const RationalPoint2 v3{Rational(-1) / (kk * dd - 1), 0};
  const bool small_k = 2 * k <= d.value;
  const bool odd_k = k % 2 != 0;
  std::vector<PathSeg> segs;
  segs.push_back({v1, {}});
  if (odd_k) {
    segs.push_back(
        {v2, ArcSpec{f_poly(d.value, k, Rational(k - 1)), f_anchors(d, k)}});
  } else {
    segs.push_back({v2, {}});
  }
  if (small_k) {
    segs.push_back({v3, {}});
    segs.push_back({RationalPoint2{Rational(-1) / (kk * dd - kk - 1),
                                   -kk / (kk * dd - kk - 1)},
                    {}});
  } else {
    segs.push_back({v3, ArcSpec{f_poly(d.value, k, Rational(2 * k - d.value)),
                                f_anchors(d, k)}});
    segs.push_back({corner, {}});
  }
  return segs;
}

inline std::vector<PathSeg> state_region_path(Dimension d, int k) {
  const Rational dd(d.value), kk(k);
  const Rational d2 = dd * dd - dd - 2;
  const Rational bound = Rational(1) / (dd + 1);
  if (k == 1) {
    const Rational m = Rational(-1) / ((dd - 2) * (dd + 1));
    return {{RationalPoint2{bound, 0}, {}},
            {RationalPoint2{0, bound}, {}},
            {RationalPoint2{m, m}, {}}};
  }
  const RationalPoint2 va{0, bound};
  const RationalPoint2 vb{-2 / d2, -dd / d2};
  if (k == d.value) {
    // S_d is the state triangle itself.
    return {{RationalPoint2{1, 0}, {}}, {va, {}}, {vb, {}}};
  }
  const bool small_k = 2 * k <= d.value;
  const bool odd_k = k % 2 != 0;
  std::vector<PathSeg> segs;
  if (small_k) {
    const RationalPoint2 vd{(kk * dd - kk - 1) / d2, (kk - 1) / d2};
    segs.push_back({vd, {}});
    segs.push_back({va, {}});
    segs.push_back({vb, {}});
    if (odd_k) {
      const RationalPoint2 a1{(kk * dd - dd - kk - 1) / d2,
                              (-dd + kk - 1) / d2};
      const RationalPoint2 a2{
          (kk * kk * dd - 2 * kk - kk * kk + 1) / (kk * d2),
          (kk - 1) * (kk - dd + 1) / (kk * d2)};
      segs.push_back(
          {a1, ArcSpec{g_poly(d.value, k, 1), g_anchors(d, k, 1)}});
      segs.push_back({a2, {}});
    } else {
      segs.push_back({RationalPoint2{(kk * dd - kk - 2) / d2,
                                     (kk - dd) / d2},
                      {}});
    }
    return segs;
  }
  segs.push_back({va, {}});
  segs.push_back({vb, {}});
  if (odd_k) {
    const RationalPoint2 a1{(kk * dd - dd - kk - 1) / d2, (-dd + kk - 1) / d2};
    const RationalPoint2 a2{(kk * kk * dd - 2 * kk - kk * kk + 1) / (kk * d2),
                            (kk - 1) * (kk - dd + 1) / (kk * d2)};
    segs.push_back({a1, ArcSpec{g_poly(d.value, k, 1), g_anchors(d, k, 1)}});
    segs.push_back({a2, {}});
  } else {
    segs.push_back(
        {RationalPoint2{(kk * dd - kk - 2) / d2, (kk - dd) / d2}, {}});
  }
  const RationalPoint2 b1{(kk * kk * dd - 3 * kk - kk * kk + dd) / (kk * d2),
                          (kk - dd) * (kk - dd + 1) / (kk * d2)};
  const RationalPoint2 b2{dd / (3 * dd - 2 * kk),
                          (2 * dd - 2 * kk) / ((dd + 1) * (3 * dd - 2 * kk))};
  segs.push_back({b1, ArcSpec{g_poly(d.value, k, 2), g_anchors(d, k, 2)}});
  segs.push_back({b2, {}});
  return segs;
}

}  // namespace detail

/// Closed counterclockwise boundary polyline of a region. Corner points are
/// exact region vertices; each curved boundary piece contributes n exact
/// rational points of its conic. The polyline starts at the lexicographically
/// largest corner and repeats it at the end.
inline std::vector<RationalPoint2> boundary_sample(Dimension d,
                                                   RegionId region, int n) {
  if (n < 8) {
    throw Error("boundary_sample: n must be at least 8");
  }
  switch (region.tag) {
    case RegionId::Tag::Pk: {
      detail::require_k(d, region.k);
      return detail::emit_path(detail::map_region_path(d, region.k), n);
    }
    case RegionId::Tag::Sk: {
      detail::require_k(d, region.k);
      return detail::emit_path(detail::state_region_path(d, region.k), n);
    }
    case RegionId::Tag::D: {
      const Rational dd(d.value);
      const Rational d2 = dd * dd - dd - 2;
      return detail::emit_path({{RationalPoint2{1, 0}, {}},
                                {RationalPoint2{0, 1}, {}},
                                {RationalPoint2{-dd / d2, -2 / d2}, {}},
                                {RationalPoint2{-2 / d2, -dd / d2}, {}}},
                               n);
    }
    case RegionId::Tag::T: {
      const Rational dd(d.value);
      const Rational bound = Rational(1) / (dd + 1);
      const Rational m = Rational(-1) / ((dd - 2) * (dd + 1));
      const Rational mid = Rational(1) / (dd + 2);
      return detail::emit_path({{RationalPoint2{bound, 0}, {}},
                                {RationalPoint2{mid, mid}, {}},
                                {RationalPoint2{0, bound}, {}},
                                {RationalPoint2{m, m}, {}}},
                               n);
    }
  }
  throw UnsupportedRegion("boundary_sample: unknown region tag");
}

}  // namespace sympent::regions
