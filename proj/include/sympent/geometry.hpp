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
 * Exact plane conic geometry for the two-parameter map/state families.
 *
 * Everything here is rational arithmetic: conics are sextuples
 * (A, B, C, D, E, F) representing
 *
 *     A x^2 + B xy + C y^2 + D x + E y + F,
 *
 * and lines are triples (n1, n2, c) representing n1 x + n2 y = c.
 *
 * The central objects are:
 *
 *  - f_poly(d, k, u): the family of conics whose nonnegativity carves the
 *    curved pieces of the order-k positivity regions out of the parameter
 *    plane. For 0 < u < k it is a hyperbola through the four rational
 *    points (1,0), (0,1), (0,1/(d+1)), (-1/(kd-1),0); at u = 0 and u = k
 *    it degenerates into a pair of lines.
 *
 *  - pole/polar duality with respect to the unit circle, which exchanges
 *    extreme points of the map regions with boundary half-planes of the
 *    Schmidt-number regions, composed with the linear change of variables
 *    alpha below.
 *
 *  - g_poly(d, k, which): the dual conics of f at u = k-1 and u = 2k-d,
 *    pulled back through alpha. These are ellipses inscribed in a fixed
 *    parallelogram; their interiors bound the curved pieces of the
 *    Schmidt-number regions.
 */

#include <array>
#include <optional>
#include <vector>

#include "sympent/errors.hpp"
#include "sympent/rational.hpp"

namespace sympent::geometry {

// ---------------------------------------------------------------------------
// Basic types
// ---------------------------------------------------------------------------

/// Conic A x^2 + B xy + C y^2 + D x + E y + F (exact coefficients).
struct ConicCoeffs {
  Rational A, B, C, D, E, F;

  Rational eval(const Rational& x, const Rational& y) const {
    return A * x * x + B * x * y + C * y * y + D * x + E * y + F;
  }
  Rational eval(const RationalPoint2& p) const { return eval(p.x, p.y); }

  ConicCoeffs scaled(const Rational& s) const {
    return {A * s, B * s, C * s, D * s, E * s, F * s};
  }

  friend bool operator==(const ConicCoeffs& a, const ConicCoeffs& b) {
    return a.A == b.A && a.B == b.B && a.C == b.C && a.D == b.D &&
           a.E == b.E && a.F == b.F;
  }
};

/// Line n1 x + n2 y = c. value() is the signed affine form n1 x + n2 y - c,
/// so predicates of the form "l <= 0" read directly off value()'s sign.
struct LinearForm {
  Rational n1, n2, c;

  Rational value(const Rational& x, const Rational& y) const {
    return n1 * x + n2 * y - c;
  }
  Rational value(const RationalPoint2& p) const { return value(p.x, p.y); }
  bool contains(const RationalPoint2& p) const { return value(p) == 0; }

  friend bool operator==(const LinearForm& a, const LinearForm& b) {
    return a.n1 == b.n1 && a.n2 == b.n2 && a.c == b.c;
  }
};

enum class ConicKind { Ellipse, Parabola, Hyperbola, Degenerate };

inline const char* to_string(ConicKind k) {
  switch (k) {
    case ConicKind::Ellipse: return "ellipse";
    case ConicKind::Parabola: return "parabola";
    case ConicKind::Hyperbola: return "hyperbola";
    case ConicKind::Degenerate: return "degenerate";
  }
  return "unknown";
}

namespace detail {

inline void require_even_dimension(int d) {
  if (d < 4 || d % 2 != 0) {
    throw BadDimension("dimension must be an even integer >= 4, got " +
                       std::to_string(d));
  }
}

/// Symmetric 3x3 matrix of the homogeneous quadratic form, row-major.
inline std::array<Rational, 9> homogeneous_matrix(const ConicCoeffs& c) {
  const Rational h = Rational(1, 2);
  return {c.A,     c.B * h, c.D * h,  //
          c.B * h, c.C,     c.E * h,  //
          c.D * h, c.E * h, c.F};
}

inline Rational det3(const std::array<Rational, 9>& m) {
  return m[0] * (m[4] * m[8] - m[5] * m[7]) -
         m[1] * (m[3] * m[8] - m[5] * m[6]) +
         m[2] * (m[3] * m[7] - m[4] * m[6]);
}

inline std::array<Rational, 9> adjugate3(const std::array<Rational, 9>& m) {
  return {
      m[4] * m[8] - m[5] * m[7], m[2] * m[7] - m[1] * m[8],
      m[1] * m[5] - m[2] * m[4],
      m[5] * m[6] - m[3] * m[8], m[0] * m[8] - m[2] * m[6],
      m[2] * m[3] - m[0] * m[5],
      m[3] * m[7] - m[4] * m[6], m[1] * m[6] - m[0] * m[7],
      m[0] * m[4] - m[1] * m[3],
  };
}

}  // namespace detail

/// Determinant of the homogeneous 3x3 matrix; zero exactly when the conic
/// degenerates into lines or a point.
inline Rational conic_det3(const ConicCoeffs& c) {
  return detail::det3(detail::homogeneous_matrix(c));
}

inline Rational conic_discriminant(const ConicCoeffs& c) {
  return c.B * c.B - 4 * c.A * c.C;
}

inline ConicKind conic_classify(const ConicCoeffs& c) {
  if (conic_det3(c) == 0) return ConicKind::Degenerate;
  const Rational disc = conic_discriminant(c);
  if (disc < 0) return ConicKind::Ellipse;
  if (disc == 0) return ConicKind::Parabola;
  return ConicKind::Hyperbola;
}

/// True when c1 = s * c2 for some nonzero rational s.
inline bool conics_proportional(const ConicCoeffs& c1, const ConicCoeffs& c2) {
  const std::array<Rational, 6> a = {c1.A, c1.B, c1.C, c1.D, c1.E, c1.F};
  const std::array<Rational, 6> b = {c2.A, c2.B, c2.C, c2.D, c2.E, c2.F};
  Rational scale = 0;
  for (std::size_t i = 0; i < 6; ++i) {
    if (b[i] != 0) {
      scale = a[i] / b[i];
      break;
    }
    if (a[i] != 0) return false;
  }
  if (scale == 0) return false;
  for (std::size_t i = 0; i < 6; ++i) {
    if (a[i] != scale * b[i]) return false;
  }
  return true;
}

/// Same as conics_proportional but demands a positive scale, which matters
/// when the sign of the conic's value encodes a side of the curve.
inline bool conics_positively_proportional(const ConicCoeffs& c1,
                                           const ConicCoeffs& c2) {
  if (!conics_proportional(c1, c2)) return false;
  const std::array<Rational, 6> a = {c1.A, c1.B, c1.C, c1.D, c1.E, c1.F};
  const std::array<Rational, 6> b = {c2.A, c2.B, c2.C, c2.D, c2.E, c2.F};
  for (std::size_t i = 0; i < 6; ++i) {
    if (b[i] != 0) return a[i] / b[i] > 0;
  }
  return false;
}

inline bool lines_proportional(const LinearForm& l1, const LinearForm& l2) {
  const std::array<Rational, 3> a = {l1.n1, l1.n2, l1.c};
  const std::array<Rational, 3> b = {l2.n1, l2.n2, l2.c};
  Rational scale = 0;
  for (std::size_t i = 0; i < 3; ++i) {
    if (b[i] != 0) {
      scale = a[i] / b[i];
      break;
    }
    if (a[i] != 0) return false;
  }
  if (scale == 0) return false;
  for (std::size_t i = 0; i < 3; ++i) {
    if (a[i] != scale * b[i]) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// The positivity boundary conic
// ---------------------------------------------------------------------------

/// Expansion of (1 - x - (1+d) y)(1 - (1-kd) x - y) + d^2 u xy.
///
/// Coefficients: A = 1-kd, B = -kd^2 - kd + d + 2 + d^2 u, C = d+1,
/// D = kd-2, E = -d-2, F = 1. Vanishes at (1,0), (0,1), (0,1/(d+1)) and
/// (-1/(kd-1),0) for every u; degenerates exactly at u = 0 and u = k.
inline ConicCoeffs f_poly(int d, int k, const Rational& u) {
  detail::require_even_dimension(d);
  if (k < 1 || k > d) {
    throw UnsupportedRegion("positivity order k must satisfy 1 <= k <= d");
  }
  if (u < 0) {
    throw Error("conic parameter u must be nonnegative");
  }
  const Rational dd(d), kk(k);
  return ConicCoeffs{
      1 - kk * dd,
      -kk * dd * dd - kk * dd + dd + 2 + dd * dd * u,
      dd + 1,
      kk * dd - 2,
      -dd - 2,
      1,
  };
}

// ---------------------------------------------------------------------------
// Tangents, poles and polars
// ---------------------------------------------------------------------------

/// Tangent line to c at a point of the conic:
/// (2Ap + Bq + D) x + (2Cq + Bp + E) y + (Dp + Eq + 2F) = 0.
inline LinearForm tangent_line(const ConicCoeffs& c, const RationalPoint2& pt) {
  if (c.eval(pt) != 0) {
    throw PointNotOnConic("tangent_line: point does not lie on the conic");
  }
  const Rational n1 = 2 * c.A * pt.x + c.B * pt.y + c.D;
  const Rational n2 = 2 * c.C * pt.y + c.B * pt.x + c.E;
  const Rational n0 = c.D * pt.x + c.E * pt.y + 2 * c.F;
  if (n1 == 0 && n2 == 0 && n0 == 0) {
    throw SingularTangent("tangent_line: singular point of a degenerate conic");
  }
  return LinearForm{n1, n2, -n0};
}

/// Pole of the line n1 x + n2 y = c with respect to the unit circle.
inline RationalPoint2 pole(const LinearForm& l) {
  if (l.c == 0) {
    throw LineThroughOrigin("pole: line passes through the origin");
  }
  return RationalPoint2{l.n1 / l.c, l.n2 / l.c};
}

/// Polar line of a point with respect to the unit circle: p x + q y = 1.
inline LinearForm polar(const RationalPoint2& pt) {
  if (pt.x == 0 && pt.y == 0) {
    throw OriginHasNoPolar("polar: the origin has no polar line");
  }
  return LinearForm{pt.x, pt.y, 1};
}

// ---------------------------------------------------------------------------
// The pairing change of variables
// ---------------------------------------------------------------------------

/// alpha(x, y) = -(d+1) * [[d-1, -1], [-1, d-1]] (x, y)^T. A state-family
/// point lies in the order-k Schmidt region exactly when alpha of it lies in
/// every half-plane {p x + q y <= 1} indexed by extreme points (p, q) of the
/// order-k positivity region.
inline RationalPoint2 alpha(int d, const RationalPoint2& pt) {
  detail::require_even_dimension(d);
  const Rational s(d + 1);
  const Rational dm1(d - 1);
  return RationalPoint2{-s * (dm1 * pt.x - pt.y), -s * (-pt.x + dm1 * pt.y)};
}

inline RationalPoint2 alpha_inv(int d, const RationalPoint2& pt) {
  detail::require_even_dimension(d);
  // Inverse of -(d+1) [[d-1, -1], [-1, d-1]]; determinant (d+1)^2 d (d-2).
  const Rational det = Rational(d + 1) * (d + 1) * d * (d - 2);
  const Rational dm1(d - 1);
  const Rational s(d + 1);
  return RationalPoint2{(-s * dm1 * pt.x - s * pt.y) / det,
                        (-s * pt.x - s * dm1 * pt.y) / det};
}

// ---------------------------------------------------------------------------
// Dual conics
// ---------------------------------------------------------------------------

/// Dual of a nondegenerate conic under unit-circle pole/polar duality:
/// (x, y) lies on the dual exactly when the line x X + y Y = 1 is tangent to
/// the original, i.e. (x, y, -1) adj(Q) (x, y, -1)^T = 0.
inline ConicCoeffs dual_conic(const ConicCoeffs& c) {
  const auto q = detail::homogeneous_matrix(c);
  if (detail::det3(q) == 0) {
    throw DegenerateConic("dual_conic: conic is degenerate");
  }
  const auto a = detail::adjugate3(q);
  return ConicCoeffs{a[0], 2 * a[1], a[4], -2 * a[2], -2 * a[5], a[8]};
}

/// Substitutes (x, y) -> (m11 x + m12 y, m21 x + m22 y) into the conic.
inline ConicCoeffs conic_pullback_linear(const ConicCoeffs& c,
                                         const Rational& m11,
                                         const Rational& m12,
                                         const Rational& m21,
                                         const Rational& m22) {
  return ConicCoeffs{
      c.A * m11 * m11 + c.B * m11 * m21 + c.C * m21 * m21,
      2 * c.A * m11 * m12 + c.B * (m11 * m22 + m12 * m21) +
          2 * c.C * m21 * m22,
      c.A * m12 * m12 + c.B * m12 * m22 + c.C * m22 * m22,
      c.D * m11 + c.E * m21,
      c.D * m12 + c.E * m22,
      c.F,
  };
}

/// Center of a central conic (unique point with vanishing gradient).
inline RationalPoint2 conic_center(const ConicCoeffs& c) {
  const Rational det = 4 * c.A * c.C - c.B * c.B;
  if (det == 0) {
    throw DegenerateConic("conic_center: conic has no unique center");
  }
  // Solve [2A B; B 2C] (x, y)^T = (-D, -E)^T.
  return RationalPoint2{(-2 * c.C * c.D + c.B * c.E) / det,
                        (c.B * c.D - 2 * c.A * c.E) / det};
}

/// Ellipse bounding a curved piece of the order-k Schmidt region: the dual
/// conic of f at u = k-1 (which = 1) or u = 2k-d (which = 2), pulled back
/// through alpha and normalized to be negative at its center, so that
/// "inside the ellipse" reads as g <= 0.
inline ConicCoeffs g_poly(int d, int k, int which) {
  detail::require_even_dimension(d);
  if (which != 1 && which != 2) {
    throw Error("g_poly: which must be 1 or 2");
  }
  if (k < 1 || k > d) {
    throw UnsupportedRegion("g_poly: k must satisfy 1 <= k <= d");
  }
  const int u = which == 1 ? k - 1 : 2 * k - d;
  if (u <= 0 || u >= k) {
    throw DegenerateConic("g_poly: parameter u = " + std::to_string(u) +
                          " gives a degenerate conic");
  }
  const ConicCoeffs dual = dual_conic(f_poly(d, k, Rational(u)));
  const Rational s(d + 1);
  const Rational dm1(d - 1);
  ConicCoeffs g =
      conic_pullback_linear(dual, -s * dm1, s, s, -s * dm1);
  const RationalPoint2 center = conic_center(g);
  const Rational at_center = g.eval(center);
  if (at_center > 0) {
    g = g.scaled(-1);
  } else if (at_center == 0) {
    throw DegenerateConic("g_poly: pulled-back dual vanishes at its center");
  }
  return g;
}

/// The two chord lines cutting the Schmidt regions where curved boundary
/// pieces attach. which = 1 gives
///   (k+d-1) x - (kd-k+1) y = (2kd+k-d-1)/(d+1),
/// which = 2 gives
///   (3d-k-3) x + (kd-k-3) y = (d^2+kd-k-3)/(d+1).
inline LinearForm line_l(int d, int k, int which) {
  detail::require_even_dimension(d);
  if (k <= 1 || k >= d) {
    throw UnsupportedRegion("line_l: k must satisfy 1 < k < d");
  }
  const Rational dd(d), kk(k);
  if (which == 1) {
    return LinearForm{kk + dd - 1, -(kk * dd - kk + 1),
                      (2 * kk * dd + kk - dd - 1) / (dd + 1)};
  }
  if (which == 2) {
    return LinearForm{3 * dd - kk - 3, kk * dd - kk - 3,
                      (dd * dd + kk * dd - kk - 3) / (dd + 1)};
  }
  throw Error("line_l: which must be 1 or 2");
}

// ---------------------------------------------------------------------------
// Canonical dual points (tables) and the inscribed parallelogram
// ---------------------------------------------------------------------------

/// One row of the canonical dual-point tables: a rational point on f, its
/// image under tangent -> pole -> alpha_inv, and the tangent line of the
/// pulled-back dual ellipse at that image.
struct TableRow {
  RationalPoint2 source;
  RationalPoint2 image;
  LinearForm tangent;
};

/// Pipeline route for a table row's image point: tangent to the conic at the
/// source, pole of that tangent, then alpha_inv. Used to cross-check the
/// closed forms in table_rows.
inline RationalPoint2 dual_image(int d, const ConicCoeffs& c,
                                 const RationalPoint2& source) {
  return alpha_inv(d, pole(tangent_line(c, source)));
}

/// Closed-form table of canonical dual points. Table 1 is the general
/// parameter table and requires 0 < u < k; tables 2 and 3 are its
/// specializations u = k-1 (needs k >= 2) and u = 2k-d (needs d/2 < k < d),
/// the latter with a fifth row. Simplified forms are reproduced verbatim.
inline std::vector<TableRow> table_rows(
    int d, int k, int table, std::optional<Rational> u = std::nullopt) {
  detail::require_even_dimension(d);
  if (k < 1 || k > d) {
    throw UnsupportedRegion("table_rows: k must satisfy 1 <= k <= d");
  }
  const Rational dd(d), kk(k);
  const Rational d2 = dd * dd - dd - 2;
  const LinearForm tan1{1 - dd, 1, Rational(1) / (dd + 1)};
  const LinearForm tan2{1, 1 - dd, Rational(1) / (dd + 1)};
  const LinearForm tan3{1, 1 - dd, 1};
  const LinearForm tan4{1 - dd, 1, -(kk * dd - 1) / (dd + 1)};
  const RationalPoint2 src1{1, 0};
  const RationalPoint2 src2{0, 1};
  const RationalPoint2 src3{0, Rational(1) / (dd + 1)};
  const RationalPoint2 src4{Rational(-1) / (kk * dd - 1), 0};

  if (table == 1) {
    if (!u.has_value()) {
      throw Error("table_rows: table 1 needs an explicit parameter u");
    }
    const Rational& uu = *u;
    if (uu <= 0 || uu >= kk) {
      throw DegenerateConic("table_rows: table 1 requires 0 < u < k");
    }
    return {
        {src1,
         {(-2 * kk + uu) / (kk * d2), (-kk * dd + dd * uu - uu) / (kk * d2)},
         tan1},
        {src2,
         {(kk * dd - 1 - dd * uu - kk + uu) / d2, (kk - uu - 1) / d2},
         tan2},
        {src3, {(-2 + dd * uu - uu) / d2, (-dd + uu) / d2}, tan3},
        {src4,
         {(kk * kk * dd - kk - kk * kk - uu) / (kk * d2),
          (kk * kk - kk - dd * uu + uu) / (kk * d2)},
         tan4},
    };
  }
  if (table == 2) {
    if (k < 2) {
      throw DegenerateConic("table_rows: table 2 requires k >= 2");
    }
    return {
        {src1, {(-kk - 1) / (kk * d2), (-dd - kk + 1) / (kk * d2)}, tan1},
        {src2, {Rational(1) / (dd + 1), 0}, tan2},
        {src3, {(kk * dd - dd - kk - 1) / d2, (-dd + kk - 1) / d2}, tan3},
        {src4,
         {(kk * kk * dd - 2 * kk - kk * kk + 1) / (kk * d2),
          (kk - 1) * (kk - dd + 1) / (kk * d2)},
         tan4},
    };
  }
  if (table == 3) {
    if (2 * k <= d || k >= d) {
      throw DegenerateConic("table_rows: table 3 requires d/2 < k < d");
    }
    const RationalPoint2 src5{-2 / d2, -dd / d2};
    const LinearForm tan5{1, 1 + dd, 1};
    return {
        {src1,
         {-dd / (kk * d2), (kk * dd - dd * dd - 2 * kk + dd) / (kk * d2)},
         tan1},
        {src2,
         {(-kk * dd + dd * dd + kk - dd - 1) / d2, (dd - kk - 1) / d2},
         tan2},
        {src3,
         {(-2 + 2 * kk * dd - dd * dd - 2 * kk + dd) / d2,
          (2 * kk - 2 * dd) / d2},
         tan3},
        {src4,
         {(kk * kk * dd - 3 * kk - kk * kk + dd) / (kk * d2),
          (kk - dd) * (kk - dd + 1) / (kk * d2)},
         tan4},
        {src5,
         {dd / (3 * dd - 2 * kk),
          (2 * dd - 2 * kk) / ((dd + 1) * (3 * dd - 2 * kk))},
         tan5},
    };
  }
  throw Error("table_rows: table must be 1, 2 or 3");
}

/// Tangency of an ellipse with one parallelogram side.
struct SideTangency {
  LinearForm side;
  RationalPoint2 point;
};

/// The fixed parallelogram circumscribing every dual ellipse of the f family,
/// with the tangency points of the applicable g_poly ellipses.
struct ParallelogramReport {
  std::array<RationalPoint2, 4> vertices;  // cyclic order
  std::array<LinearForm, 4> sides;
  struct EllipseTangencies {
    int which = 0;  // g_poly branch
    std::array<SideTangency, 4> tangencies;
  };
  std::vector<EllipseTangencies> ellipses;
};

namespace detail {

/// Intersects a conic with a line; when the restricted quadratic has a double
/// root, returns the tangency point.
inline std::optional<RationalPoint2> tangency_on_line(const ConicCoeffs& g,
                                                      const LinearForm& l) {
  Rational q2, q1, q0;
  bool solve_for_x;
  if (l.n2 != 0) {
    // y = (c - n1 x) / n2
    const Rational a = -l.n1 / l.n2;
    const Rational b = l.c / l.n2;
    q2 = g.A + g.B * a + g.C * a * a;
    q1 = g.B * b + 2 * g.C * a * b + g.D + g.E * a;
    q0 = g.C * b * b + g.E * b + g.F;
    solve_for_x = true;
  } else {
    // x = c / n1
    const Rational x0 = l.c / l.n1;
    q2 = g.C;
    q1 = g.B * x0 + g.E;
    q0 = g.A * x0 * x0 + g.D * x0 + g.F;
    solve_for_x = false;
  }
  if (q2 == 0) return std::nullopt;
  if (q1 * q1 - 4 * q2 * q0 != 0) return std::nullopt;
  const Rational root = -q1 / (2 * q2);
  if (solve_for_x) {
    return RationalPoint2{root, (l.c - l.n1 * root) / l.n2};
  }
  return RationalPoint2{l.c / l.n1, root};
}

}  // namespace detail

inline ParallelogramReport parallelogram(int d, int k) {
  detail::require_even_dimension(d);
  if (k < 1 || k > d) {
    throw UnsupportedRegion("parallelogram: k must satisfy 1 <= k <= d");
  }
  const Rational dd(d), kk(k);
  const Rational d2 = dd * dd - dd - 2;
  ParallelogramReport report;
  report.vertices = {
      RationalPoint2{-2 / d2, -dd / d2},
      RationalPoint2{-1 / d2, -1 / d2},
      RationalPoint2{(kk * dd - kk - 1) / d2, (kk - 1) / d2},
      RationalPoint2{(kk * dd - kk - 2) / d2, (-dd + kk) / d2},
  };
  report.sides = {
      LinearForm{1, 1 - dd, Rational(1) / (dd + 1)},
      LinearForm{1, 1 - dd, 1},
      LinearForm{1 - dd, 1, Rational(1) / (dd + 1)},
      LinearForm{1 - dd, 1, -(kk * dd - 1) / (dd + 1)},
  };
  for (int which : {1, 2}) {
    const int u = which == 1 ? k - 1 : 2 * k - d;
    if (u <= 0 || u >= k) continue;
    const ConicCoeffs g = g_poly(d, k, which);
    ParallelogramReport::EllipseTangencies entry;
    entry.which = which;
    for (std::size_t i = 0; i < 4; ++i) {
      const auto pt = detail::tangency_on_line(g, report.sides[i]);
      if (!pt.has_value()) {
        throw DegenerateConic(
            "parallelogram: ellipse fails to touch a side exactly once");
      }
      entry.tangencies[i] = SideTangency{report.sides[i], *pt};
    }
    report.ellipses.push_back(std::move(entry));
  }
  return report;
}

// ---------------------------------------------------------------------------
// Exact rational points on conic arcs
// ---------------------------------------------------------------------------

/// Second intersection of the conic with the line through `anchor` (a point
/// of the conic) and `toward`. Returns nullopt when the line meets the conic
/// only at the anchor (asymptotic direction) or is tangent there.
inline std::optional<RationalPoint2> conic_second_intersection(
    const ConicCoeffs& c, const RationalPoint2& anchor,
    const RationalPoint2& toward) {
  const Rational wx = toward.x - anchor.x;
  const Rational wy = toward.y - anchor.y;
  if (wx == 0 && wy == 0) return std::nullopt;
  const Rational a = c.A * wx * wx + c.B * wx * wy + c.C * wy * wy;
  if (a == 0) return std::nullopt;
  const Rational b = 2 * c.A * anchor.x * wx +
                     c.B * (anchor.x * wy + anchor.y * wx) +
                     2 * c.C * anchor.y * wy + c.D * wx + c.E * wy;
  const Rational s = -b / a;
  if (s == 0) return std::nullopt;
  return RationalPoint2{anchor.x + s * wx, anchor.y + s * wy};
}

/// n exact rational points strictly between `from` and `to` along the conic
/// arc, generated by sweeping chords from an anchor point of the conic that
/// lies away from the arc. Points come out ordered from `from` to `to`.
inline std::vector<RationalPoint2> sample_conic_arc(const ConicCoeffs& c,
                                                    const RationalPoint2& from,
                                                    const RationalPoint2& to,
                                                    const RationalPoint2& anchor,
                                                    int n) {
  if (c.eval(from) != 0 || c.eval(to) != 0 || c.eval(anchor) != 0) {
    throw PointNotOnConic("sample_conic_arc: endpoints/anchor must lie on c");
  }
  std::vector<RationalPoint2> points;
  points.reserve(static_cast<std::size_t>(n));
  for (int i = 1; i <= n; ++i) {
    const Rational t(i, n + 1);
    const RationalPoint2 chord{from.x + t * (to.x - from.x),
                               from.y + t * (to.y - from.y)};
    const auto pt = conic_second_intersection(c, anchor, chord);
    if (!pt.has_value()) {
      throw DegenerateConic("sample_conic_arc: chord sweep hit an asymptote");
    }
    points.push_back(*pt);
  }
  return points;
}

}  // namespace sympent::geometry
