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

#include <catch2/catch_amalgamated.hpp>

#include <map>
#include <utility>
#include <vector>

#include "sympent/geometry.hpp"

namespace geo = sympent::geometry;
using sympent::Rational;
using sympent::RationalPoint2;

namespace {

// Independent bivariate polynomial arithmetic used as an oracle for the
// closed-form conic coefficients: exponent pair -> coefficient.
using Poly = std::map<std::pair<int, int>, Rational>;

Poly poly_mul(const Poly& a, const Poly& b) {
  Poly out;
  for (const auto& [ea, ca] : a) {
    for (const auto& [eb, cb] : b) {
      out[{ea.first + eb.first, ea.second + eb.second}] += ca * cb;
    }
  }
  return out;
}

Poly poly_add(Poly a, const Poly& b) {
  for (const auto& [e, c] : b) a[e] += c;
  return a;
}

Rational coeff(const Poly& p, int i, int j) {
  const auto it = p.find({i, j});
  return it == p.end() ? Rational(0) : it->second;
}

Poly expanded_f(int d, int k, const Rational& u) {
  const Rational dd(d), kk(k);
  const Poly left = {{{0, 0}, 1}, {{1, 0}, -1}, {{0, 1}, -(1 + dd)}};
  const Poly right = {{{0, 0}, 1}, {{1, 0}, -(1 - kk * dd)}, {{0, 1}, -1}};
  return poly_add(poly_mul(left, right), Poly{{{1, 1}, dd * dd * u}});
}

geo::ConicCoeffs pulled_back_dual(int d, const geo::ConicCoeffs& f) {
  const Rational s(d + 1);
  const Rational m(Rational(d - 1) * (d + 1));
  return geo::conic_pullback_linear(geo::dual_conic(f), -m, s, s, -m);
}

}  // namespace

TEST_CASE("f_poly matches an independent polynomial expansion") {
  for (int d : {4, 6, 8, 10}) {
    for (int k = 1; k <= d; ++k) {
      for (Rational u : {Rational(1, 2), Rational(1), Rational(3, 2),
                         Rational(k) - Rational(1, 3)}) {
        if (u < 0) continue;
        const auto f = geo::f_poly(d, k, u);
        const auto oracle = expanded_f(d, k, u);
        CAPTURE(d, k);
        CHECK(f.A == coeff(oracle, 2, 0));
        CHECK(f.B == coeff(oracle, 1, 1));
        CHECK(f.C == coeff(oracle, 0, 2));
        CHECK(f.D == coeff(oracle, 1, 0));
        CHECK(f.E == coeff(oracle, 0, 1));
        CHECK(f.F == coeff(oracle, 0, 0));
      }
    }
  }
}

TEST_CASE("f_poly worked coefficient set at d=4, k=3, u=2") {
  const auto f = geo::f_poly(4, 3, 2);
  // Frozen against the expansion oracle above:
  // (1 - x - 5y)(1 + 11x - y) + 32xy.
  CHECK(f.A == -11);
  CHECK(f.B == -22);
  CHECK(f.C == 5);
  CHECK(f.D == 10);
  CHECK(f.E == -6);
  CHECK(f.F == 1);
}

TEST_CASE("f_poly vanishes at its four base points for every u") {
  for (int d : {4, 6, 10}) {
    for (int k = 1; k <= d; ++k) {
      for (Rational u : {Rational(0), Rational(1, 7), Rational(k)}) {
        const auto f = geo::f_poly(d, k, u);
        const Rational dd(d), kk(k);
        CHECK(f.eval(1, 0) == 0);
        CHECK(f.eval(0, 1) == 0);
        CHECK(f.eval(0, Rational(1) / (dd + 1)) == 0);
        CHECK(f.eval(Rational(-1) / (kk * dd - 1), 0) == 0);
      }
    }
  }
}

TEST_CASE("f_poly degenerates exactly at u = 0 and u = k") {
  for (int d : {4, 6}) {
    for (int k = 1; k <= d; ++k) {
      CHECK(geo::conic_classify(geo::f_poly(d, k, 0)) ==
            geo::ConicKind::Degenerate);
      CHECK(geo::conic_classify(geo::f_poly(d, k, Rational(k))) ==
            geo::ConicKind::Degenerate);
      for (Rational u : {Rational(1, 2), Rational(2 * k, 3)}) {
        CHECK(geo::conic_det3(geo::f_poly(d, k, u)) != 0);
      }
    }
  }
  CHECK(geo::conic_classify(geo::f_poly(4, 3, 2)) == geo::ConicKind::Hyperbola);
}

TEST_CASE("f_poly argument validation") {
  CHECK_THROWS_AS(geo::f_poly(3, 1, 1), sympent::BadDimension);
  CHECK_THROWS_AS(geo::f_poly(2, 1, 1), sympent::BadDimension);
  CHECK_THROWS_AS(geo::f_poly(4, 0, 1), sympent::UnsupportedRegion);
  CHECK_THROWS_AS(geo::f_poly(4, 5, 1), sympent::UnsupportedRegion);
  CHECK_THROWS_AS(geo::f_poly(4, 2, Rational(-1)), sympent::Error);
}

TEST_CASE("conic classification on textbook instances") {
  const geo::ConicCoeffs circle{1, 0, 1, 0, 0, -1};
  const geo::ConicCoeffs parabola{1, -2, 1, 1, 0, 0};
  const geo::ConicCoeffs hyperbola{0, 1, 0, 0, 0, -1};
  const geo::ConicCoeffs crossing_lines{1, 0, -1, 0, 0, 0};
  CHECK(geo::conic_classify(circle) == geo::ConicKind::Ellipse);
  CHECK(geo::conic_classify(parabola) == geo::ConicKind::Parabola);
  CHECK(geo::conic_classify(hyperbola) == geo::ConicKind::Hyperbola);
  CHECK(geo::conic_classify(crossing_lines) == geo::ConicKind::Degenerate);
}

TEST_CASE("tangent lines") {
  const geo::ConicCoeffs circle{1, 0, 1, 0, 0, -1};
  const RationalPoint2 p{Rational(3, 5), Rational(4, 5)};
  const auto t = geo::tangent_line(circle, p);
  CHECK(geo::lines_proportional(t, geo::LinearForm{3, 4, 5}));
  CHECK(t.contains(p));
  CHECK_THROWS_AS(geo::tangent_line(circle, RationalPoint2{1, 1}),
                  sympent::PointNotOnConic);
  // x^2 = 0 is a double line; every point of it is singular.
  const geo::ConicCoeffs double_line{1, 0, 0, 0, 0, 0};
  CHECK_THROWS_AS(geo::tangent_line(double_line, RationalPoint2{0, 5}),
                  sympent::SingularTangent);
}

TEST_CASE("pole and polar with respect to the unit circle") {
  const RationalPoint2 p{2, 3};
  const auto l = geo::polar(p);
  CHECK(l == geo::LinearForm{2, 3, 1});
  CHECK(geo::pole(l) == p);
  CHECK_THROWS_AS(geo::polar(RationalPoint2{0, 0}), sympent::OriginHasNoPolar);
  CHECK_THROWS_AS(geo::pole(geo::LinearForm{1, 2, 0}),
                  sympent::LineThroughOrigin);
  // Pole-polar roundtrip on assorted rational points.
  for (const auto& q : {RationalPoint2{Rational(1, 3), Rational(-2, 7)},
                        RationalPoint2{-5, 0}, RationalPoint2{0, Rational(9, 4)}}) {
    CHECK(geo::pole(geo::polar(q)) == q);
  }
}

TEST_CASE("alpha is the documented linear map and inverts exactly") {
  CHECK(geo::alpha(4, RationalPoint2{1, 0}) == (RationalPoint2{-15, 5}));
  for (int d : {4, 6, 10}) {
    for (const auto& p : {RationalPoint2{Rational(1, 3), Rational(-2, 7)},
                          RationalPoint2{0, 1}, RationalPoint2{5, 5}}) {
      CHECK(geo::alpha_inv(d, geo::alpha(d, p)) == p);
      CHECK(geo::alpha(d, geo::alpha_inv(d, p)) == p);
    }
  }
  CHECK_THROWS_AS(geo::alpha(5, RationalPoint2{1, 0}), sympent::BadDimension);
}

TEST_CASE("dual conics of known curves") {
  const geo::ConicCoeffs circle{1, 0, 1, 0, 0, -1};
  CHECK(geo::conics_proportional(geo::dual_conic(circle), circle));
  // Dual of x^2/4 + y^2 = 1 is 4x^2 + y^2 = 1.
  const geo::ConicCoeffs ellipse{Rational(1, 4), 0, 1, 0, 0, -1};
  CHECK(geo::conics_proportional(geo::dual_conic(ellipse),
                                 geo::ConicCoeffs{4, 0, 1, 0, 0, -1}));
  CHECK_THROWS_AS(geo::dual_conic(geo::ConicCoeffs{1, 0, -1, 0, 0, 0}),
                  sympent::DegenerateConic);
  // Double duality returns to the original curve.
  for (int d : {4, 6}) {
    for (int k = 2; k < d; ++k) {
      const auto f = geo::f_poly(d, k, Rational(1, 2));
      CHECK(geo::conics_proportional(geo::dual_conic(geo::dual_conic(f)), f));
    }
  }
}

TEST_CASE("closed-form dual point tables agree with the pipeline route") {
  for (int d : {4, 6, 10}) {
    for (int k = 1; k <= d; ++k) {
      struct Probe {
        int table;
        std::optional<Rational> u;
      };
      std::vector<Probe> probes;
      if (k >= 2) {
        probes.push_back({1, Rational(k) - Rational(1, 2)});
        probes.push_back({2, std::nullopt});
      }
      if (2 * k > d && k < d) probes.push_back({3, std::nullopt});
      for (const auto& probe : probes) {
        const Rational u_eff = probe.table == 1 ? *probe.u
                               : probe.table == 2
                                   ? Rational(k - 1)
                                   : Rational(2 * k - d);
        const auto f = geo::f_poly(d, k, u_eff);
        const auto dual = pulled_back_dual(d, f);
        const auto rows = geo::table_rows(d, k, probe.table, probe.u);
        CHECK(rows.size() == (probe.table == 3 ? 5u : 4u));
        for (const auto& row : rows) {
          CAPTURE(d, k, probe.table);
          CHECK(f.eval(row.source) == 0);
          CHECK(row.image == geo::dual_image(d, f, row.source));
          CHECK(dual.eval(row.image) == 0);
          CHECK(geo::lines_proportional(
              geo::tangent_line(dual, row.image), row.tangent));
        }
      }
    }
  }
}

TEST_CASE("table admissibility errors") {
  CHECK_THROWS_AS(geo::table_rows(4, 2, 1), sympent::Error);
  CHECK_THROWS_AS(geo::table_rows(4, 2, 1, Rational(2)),
                  sympent::DegenerateConic);
  CHECK_THROWS_AS(geo::table_rows(4, 1, 2), sympent::DegenerateConic);
  CHECK_THROWS_AS(geo::table_rows(6, 3, 3), sympent::DegenerateConic);
  CHECK_THROWS_AS(geo::table_rows(6, 6, 3), sympent::DegenerateConic);
  CHECK_THROWS_AS(geo::table_rows(6, 4, 7), sympent::Error);
}

TEST_CASE("g_poly gives inward-negative ellipses") {
  // Worked instance d=4, k=3, branch 1: zeros at three known points.
  const auto g1 = geo::g_poly(4, 3, 1);
  CHECK(geo::conic_classify(g1) == geo::ConicKind::Ellipse);
  CHECK(g1.eval(Rational(1, 5), 0) == 0);
  CHECK(g1.eval(Rational(2, 5), Rational(-1, 5)) == 0);
  CHECK(g1.eval(Rational(-2, 15), Rational(-1, 5)) == 0);
  CHECK(g1.eval(geo::conic_center(g1)) < 0);

  for (int d : {4, 6, 10}) {
    for (int k = 2; k <= d; ++k) {
      const auto g = geo::g_poly(d, k, 1);
      CHECK(geo::conic_classify(g) == geo::ConicKind::Ellipse);
      CHECK(g.eval(geo::conic_center(g)) < 0);
    }
    for (int k = d / 2 + 1; k < d; ++k) {
      const auto g = geo::g_poly(d, k, 2);
      CHECK(geo::conic_classify(g) == geo::ConicKind::Ellipse);
      CHECK(g.eval(geo::conic_center(g)) < 0);
    }
  }
}

TEST_CASE("the two g branches coincide exactly when k = d-1") {
  for (int d : {4, 6, 10}) {
    CHECK(geo::conics_positively_proportional(geo::g_poly(d, d - 1, 1),
                                              geo::g_poly(d, d - 1, 2)));
  }
  CHECK_FALSE(geo::conics_proportional(geo::g_poly(6, 4, 1),
                                       geo::g_poly(6, 4, 2)));
  CHECK_FALSE(geo::conics_proportional(geo::g_poly(10, 7, 1),
                                       geo::g_poly(10, 7, 2)));
}

TEST_CASE("g_poly degeneracy guards") {
  CHECK_THROWS_AS(geo::g_poly(4, 1, 1), sympent::DegenerateConic);
  CHECK_THROWS_AS(geo::g_poly(6, 2, 2), sympent::DegenerateConic);
  CHECK_THROWS_AS(geo::g_poly(6, 6, 2), sympent::DegenerateConic);
  CHECK_THROWS_AS(geo::g_poly(4, 2, 3), sympent::Error);
}

TEST_CASE("attachment chords pass through the curved-piece endpoints") {
  for (int d : {4, 6, 10}) {
    const Rational dd(d);
    const Rational d2 = dd * dd - dd - 2;
    for (int k = 2; k < d; ++k) {
      const Rational kk(k);
      // Branch-1 arc endpoints.
      const RationalPoint2 a1{(kk * dd - dd - kk - 1) / d2,
                              (-dd + kk - 1) / d2};
      const RationalPoint2 a2{
          (kk * kk * dd - 2 * kk - kk * kk + 1) / (kk * d2),
          (kk - 1) * (kk - dd + 1) / (kk * d2)};
      const auto l1 = geo::line_l(d, k, 1);
      const auto g1 = geo::g_poly(d, k, 1);
      CHECK(l1.contains(a1));
      CHECK(l1.contains(a2));
      CHECK(g1.eval(a1) == 0);
      CHECK(g1.eval(a2) == 0);
      if (2 * k > d) {
        // Branch-2 arc endpoints.
        const RationalPoint2 b1{
            (kk * kk * dd - 3 * kk - kk * kk + dd) / (kk * d2),
            (kk - dd) * (kk - dd + 1) / (kk * d2)};
        const RationalPoint2 b2{
            dd / (3 * dd - 2 * kk),
            (2 * dd - 2 * kk) / ((dd + 1) * (3 * dd - 2 * kk))};
        const auto l2 = geo::line_l(d, k, 2);
        const auto g2 = geo::g_poly(d, k, 2);
        CHECK(l2.contains(b1));
        CHECK(l2.contains(b2));
        CHECK(g2.eval(b1) == 0);
        CHECK(g2.eval(b2) == 0);
        if (k == d - 1) {
          CHECK(a2 == b1);
        }
      }
    }
  }
  CHECK(geo::line_l(6, 4, 2) ==
        (geo::LinearForm{11, 17, Rational(53, 7)}));
  CHECK_THROWS_AS(geo::line_l(6, 1, 1), sympent::UnsupportedRegion);
  CHECK_THROWS_AS(geo::line_l(6, 6, 1), sympent::UnsupportedRegion);
}

TEST_CASE("parallelogram vertices, sides and ellipse tangencies") {
  for (int d : {4, 6, 10}) {
    for (int k = 2; k < d; ++k) {
      const auto rep = geo::parallelogram(d, k);
      // Cyclic vertex order: consecutive vertices share one side.
      const std::array<std::pair<int, int>, 4> incidence = {
          std::pair{1, 2}, {0, 2}, {0, 3}, {1, 3}};
      for (int i = 0; i < 4; ++i) {
        CHECK(rep.sides[incidence[i].first].contains(rep.vertices[i]));
        CHECK(rep.sides[incidence[i].second].contains(rep.vertices[i]));
      }
      // Every applicable ellipse touches each side at a single point that
      // lies on both the side and the ellipse; for branch 1 these are
      // exactly the closed-form dual points.
      for (const auto& entry : rep.ellipses) {
        const auto g = geo::g_poly(d, k, entry.which);
        for (const auto& tng : entry.tangencies) {
          CHECK(tng.side.contains(tng.point));
          CHECK(g.eval(tng.point) == 0);
        }
        if (entry.which == 1) {
          const auto rows = geo::table_rows(d, k, 2);
          // Row tangents are sides s3, s1, s2, s4 in row order.
          CHECK(entry.tangencies[0].point == rows[1].image);
          CHECK(entry.tangencies[1].point == rows[2].image);
          CHECK(entry.tangencies[2].point == rows[0].image);
          CHECK(entry.tangencies[3].point == rows[3].image);
        }
      }
      const std::size_t expected =
          (k >= 2 ? 1u : 0u) + (2 * k > d && k < d ? 1u : 0u);
      CHECK(rep.ellipses.size() == expected);
    }
  }
  CHECK(geo::parallelogram(6, 1).ellipses.empty());
}

TEST_CASE("exact rational sampling along conic arcs") {
  const geo::ConicCoeffs circle{1, 0, 1, 0, 0, -1};
  const auto pts = geo::sample_conic_arc(circle, RationalPoint2{1, 0},
                                         RationalPoint2{0, 1},
                                         RationalPoint2{-1, 0}, 7);
  REQUIRE(pts.size() == 7);
  Rational prev_x(1);
  for (const auto& p : pts) {
    CHECK(circle.eval(p) == 0);
    CHECK(p.x > 0);
    CHECK(p.y > 0);
    CHECK(p.x < prev_x);
    prev_x = p.x;
  }

  // Arc of the positivity conic between two of its rational base points,
  // anchored at a third.
  const auto f = geo::f_poly(4, 3, 2);
  const auto arc = geo::sample_conic_arc(
      f, RationalPoint2{0, Rational(1, 5)},
      RationalPoint2{Rational(-1, 11), 0}, RationalPoint2{1, 0}, 9);
  REQUIRE(arc.size() == 9);
  for (const auto& p : arc) {
    CHECK(f.eval(p) == 0);
    CHECK(p.x > Rational(-1, 11));
    CHECK(p.x < 0);
  }

  CHECK_THROWS_AS(
      geo::sample_conic_arc(circle, RationalPoint2{1, 0}, RationalPoint2{1, 1},
                            RationalPoint2{-1, 0}, 3),
      sympent::PointNotOnConic);
}
