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

#include <algorithm>
#include <array>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "sympent/errors.hpp"
#include "sympent/geometry.hpp"
#include "sympent/matrix_io.hpp"
#include "sympent/operators.hpp"
#include "sympent/rational.hpp"
#include "sympent/regions.hpp"
#include "sympent/sampling.hpp"
#include "sympent/verify.hpp"

/// Command-line front end. Four subcommands: `classify` prints the full
/// region report for one parameter point, `boundary` exports region
/// boundaries as CSV or SVG, `verify` runs one of the named verification
/// suites, and `witness` writes canonical detector matrices.
///
/// Output contract: rationals print as reduced "num/den" strings, reals as
/// 17-significant-digit decimals, and JSON field order is fixed, so a given
/// flag set (plus seed) always produces byte-identical output. Exit codes:
/// 0 success, 1 suite failure, 2 usage error, 3 domain error, 4 unsupported
/// region or table.
namespace sympent::cli {

using operators::Matrix;
using operators::Vector;
using json = nlohmann::ordered_json;

/// Shared command configuration filled from flags. Tolerances are capped at
/// 1e-3: anything looser would blur the exact boundaries the library is
/// built around.
struct CliConfig {
  int d = 4;
  int k = 0;  // 0 selects every admissible k
  double tolerance = 1e-9;
  std::uint64_t seed = 1;
  int frames = 0;  // 0 selects the per-suite default
  int grid = 0;    // 0 selects the per-suite default
  int jobs = 1;
};

namespace detail {

/// Usage-level failure (bad flag values, malformed scalars, unknown suite).
struct UsageError {
  std::string message;
};

inline std::string format_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return std::string(buf);
}

inline Rational parse_scalar(const std::string& text, const char* name,
                             std::vector<std::string>* warnings) {
  const auto parsed = parse_rational(text);
  if (!parsed.has_value()) {
    throw UsageError{std::string(name) + ": cannot parse '" + text +
                     "' as a rational or decimal"};
  }
  if (parsed->from_decimal && warnings != nullptr) {
    warnings->push_back(std::string(name) +
                        ": decimal literal converted exactly to " +
                        to_string(parsed->value));
  }
  return parsed->value;
}

inline regions::RegionId parse_region(const std::string& text) {
  if (text == "D") return regions::RegionId::Dec();
  if (text == "T") return regions::RegionId::Ppt();
  if (text.size() >= 2 && (text[0] == 'P' || text[0] == 'S')) {
    int k = 0;
    for (std::size_t i = 1; i < text.size(); ++i) {
      if (text[i] < '0' || text[i] > '9') {
        throw UnsupportedRegion("unknown region id: " + text);
      }
      k = k * 10 + (text[i] - '0');
    }
    return text[0] == 'P' ? regions::RegionId::P(k) : regions::RegionId::S(k);
  }
  throw UnsupportedRegion("unknown region id: " + text);
}

inline std::string region_to_string(const regions::RegionId& id) {
  switch (id.tag) {
    case regions::RegionId::Tag::Pk:
      return "P" + std::to_string(id.k);
    case regions::RegionId::Tag::D:
      return "D";
    case regions::RegionId::Tag::T:
      return "T";
    case regions::RegionId::Tag::Sk:
      return "S" + std::to_string(id.k);
  }
  throw UnsupportedRegion("unknown region tag");
}

inline json matrix_to_json(const Matrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      row.push_back(json::array(
          {format_double(m(i, j).real()), format_double(m(i, j).imag())}));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

inline json point_to_json(const RationalPoint2& pt) {
  return json::array({to_string(pt.x), to_string(pt.y)});
}

inline json counterexample_to_json(const verify::Counterexample& ce) {
  json out;
  if (const auto* frame = std::get_if<sampling::Frame>(&ce)) {
    out["kind"] = "frame";
    out["d"] = frame->d;
    out["k"] = frame->k;
    out["columns"] = matrix_to_json(frame->columns);
  } else if (const auto* pt = std::get_if<RationalPoint2>(&ce)) {
    out["kind"] = "point";
    out["point"] = point_to_json(*pt);
  } else {
    out["kind"] = "matrix";
    out["matrix"] = matrix_to_json(std::get<Matrix>(ce));
  }
  return out;
}

/// Accumulates several library verdicts into one suite verdict.
struct SuiteTally {
  bool passed = true;
  std::int64_t n_evaluations = 0;
  double min_margin = std::numeric_limits<double>::infinity();
  std::optional<verify::Counterexample> counterexample;

  void fold(const verify::Verdict& v) {
    passed = passed && v.passed;
    n_evaluations += v.statistics.n_evaluations;
    min_margin = std::min(min_margin, v.statistics.min_margin);
    if (!counterexample.has_value() && v.counterexample.has_value()) {
      counterexample = v.counterexample;
    }
  }

  void finish(json* j) const {
    (*j)["passed"] = passed;
    (*j)["n_evaluations"] = n_evaluations;
    (*j)["min_margin"] = format_double(min_margin);
    (*j)["counterexample"] = counterexample.has_value()
                                 ? counterexample_to_json(*counterexample)
                                 : json(nullptr);
  }
};

inline std::vector<int> select_ks(int k_flag, int lo, int hi,
                                  const char* what) {
  if (k_flag != 0) {
    if (k_flag < lo || k_flag > hi) {
      throw BadDimension(std::string(what) + ": need " + std::to_string(lo) +
                         " <= k <= " + std::to_string(hi));
    }
    return {k_flag};
  }
  std::vector<int> ks;
  for (int k = lo; k <= hi; ++k) {
    ks.push_back(k);
  }
  return ks;
}

// -------------------------------------------------------------------------
// classify
// -------------------------------------------------------------------------

inline int cmd_classify(int d, const std::string& p_text,
                        const std::string& q_text, std::ostream& out) {
  std::vector<std::string> warnings;
  const Rational p = parse_scalar(p_text, "p", &warnings);
  const Rational q = parse_scalar(q_text, "q", &warnings);
  const regions::Dimension dim(d);
  const RationalPoint2 pt{p, q};
  const auto report = regions::classify(dim, pt);

  json j;
  j["command"] = "classify";
  j["d"] = d;
  j["p"] = to_string(p);
  j["q"] = to_string(q);
  j["warnings"] = warnings;
  j["is_state"] = report.is_state;
  j["max_kpos"] = report.max_kpos;
  j["decomposable"] = report.decomposable;
  j["ppt"] = report.ppt;
  j["schmidt_number"] = report.schmidt_number.has_value()
                            ? json(*report.schmidt_number)
                            : json(nullptr);
  j["schmidt_number_gamma"] = report.schmidt_number_gamma.has_value()
                                  ? json(*report.schmidt_number_gamma)
                                  : json(nullptr);
  out << j.dump() << '\n';
  return 0;
}

// -------------------------------------------------------------------------
// boundary
// -------------------------------------------------------------------------

inline void write_boundary_csv(const regions::RegionId& region, int d,
                               const std::vector<RationalPoint2>& pts,
                               std::ostream& os) {
  os << "# region=" << region_to_string(region) << " d=" << d << '\n';
  for (const auto& pt : pts) {
    os << format_double(to_double(pt.x)) << ','
       << format_double(to_double(pt.y)) << '\n';
  }
}

/// Emits the machine-readable description of the region's boundary pieces,
/// where the exact pieces are available, as SVG comments.
inline void write_region_metadata(const regions::RegionId& region, int d,
                                  std::ostream& os) {
  const regions::Dimension dim(d);
  if (region.tag == regions::RegionId::Tag::Pk) {
    const auto ext = regions::extreme_points(dim, region.k);
    for (const auto& v : ext.vertices) {
      os << "<!-- vertex (" << to_string(v.x) << ", " << to_string(v.y)
         << ") -->\n";
    }
    for (const auto& seg : ext.curve_segments) {
      os << "<!-- conic piece A=" << to_string(seg.conic.A)
         << " B=" << to_string(seg.conic.B) << " C=" << to_string(seg.conic.C)
         << " D=" << to_string(seg.conic.D) << " E=" << to_string(seg.conic.E)
         << " F=" << to_string(seg.conic.F)
         << " with A x^2 + B x y + C y^2 + D x + E y + F >= 0 inside, from ("
         << to_string(seg.from.x) << ", " << to_string(seg.from.y) << ") to ("
         << to_string(seg.to.x) << ", " << to_string(seg.to.y) << ") -->\n";
    }
    return;
  }
  if (region.tag == regions::RegionId::Tag::T) {
    const Rational dd(d);
    const Rational bound = Rational(1) / (dd + 1);
    const Rational mid = Rational(1) / (dd + 2);
    const Rational mu = Rational(-1) / ((dd - 2) * (dd + 1));
    const std::array<RationalPoint2, 4> corners = {
        RationalPoint2{bound, 0}, RationalPoint2{mid, mid},
        RationalPoint2{0, bound}, RationalPoint2{mu, mu}};
    const RationalPoint2 center{
        (corners[0].x + corners[1].x + corners[2].x + corners[3].x) / 4,
        (corners[0].y + corners[1].y + corners[2].y + corners[3].y) / 4};
    for (int e = 0; e < 4; ++e) {
      const auto& u = corners[e];
      const auto& v = corners[(e + 1) % 4];
      Rational n1 = v.y - u.y;
      Rational n2 = u.x - v.x;
      Rational c = n1 * u.x + n2 * u.y;
      if (n1 * center.x + n2 * center.y - c > 0) {
        n1 = -n1;
        n2 = -n2;
        c = -c;
      }
      os << "<!-- edge " << to_string(n1) << " x + " << to_string(n2)
         << " y <= " << to_string(c) << " -->\n";
    }
    return;
  }
  os << "<!-- boundary sampled exactly from the closed-form region "
        "predicate -->\n";
}

inline void write_boundary_svg(const regions::RegionId& region, int d,
                               int samples,
                               const std::vector<RationalPoint2>& pts,
                               std::ostream& os) {
  Rational xmin = pts.front().x, xmax = pts.front().x;
  Rational ymin = pts.front().y, ymax = pts.front().y;
  for (const auto& pt : pts) {
    xmin = std::min(xmin, pt.x);
    xmax = std::max(xmax, pt.x);
    ymin = std::min(ymin, pt.y);
    ymax = std::max(ymax, pt.y);
  }
  const Rational span = std::max(xmax - xmin, ymax - ymin);
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 1 1\">\n";
  os << "<!-- region=" << region_to_string(region) << " d=" << d
     << " samples=" << samples << " -->\n";
  os << "<!-- affine map from the parameter plane: u = (x - (" //
     << to_string(xmin) << "))/(" << to_string(span) << "), v = (("
     << to_string(ymax) << ") - y)/(" << to_string(span) << ") -->\n";
  write_region_metadata(region, d, os);
  os << "<path d=\"";
  const std::size_t closed =
      (pts.size() > 1 && pts.front() == pts.back()) ? pts.size() - 1
                                                    : pts.size();
  for (std::size_t i = 0; i < closed; ++i) {
    const double u = to_double((pts[i].x - xmin) / span);
    const double v = to_double((ymax - pts[i].y) / span);
    os << (i == 0 ? "M " : " L ") << format_double(u) << ' '
       << format_double(v);
  }
  os << " Z\" fill=\"none\" stroke=\"black\" stroke-width=\"0.003\"/>\n";
  os << "</svg>\n";
}

inline int cmd_boundary(int d, const std::string& region_text, int samples,
                        const std::string& format, const std::string& out_path,
                        std::ostream& out) {
  const auto region = parse_region(region_text);
  const regions::Dimension dim(d);
  const auto pts = regions::boundary_sample(dim, region, samples);
  if (format == "csv") {
    if (out_path.empty()) {
      write_boundary_csv(region, d, pts, out);
    } else {
      std::ofstream os(out_path);
      if (!os) {
        throw Error("boundary: cannot open " + out_path);
      }
      write_boundary_csv(region, d, pts, os);
    }
    return 0;
  }
  // SVG is a file format here: stdout stays reserved for JSON and CSV.
  if (out_path.empty()) {
    throw UsageError{"boundary: --format svg requires --out"};
  }
  std::ofstream os(out_path);
  if (!os) {
    throw Error("boundary: cannot open " + out_path);
  }
  write_boundary_svg(region, d, samples, pts, os);
  return 0;
}

// -------------------------------------------------------------------------
// verify suites
// -------------------------------------------------------------------------

inline RationalPoint2 grid_point(int i, int j, int grid) {
  const Rational lo(-3, 5);
  const Rational span(17, 10);
  const int steps = grid - 1;
  return {lo + span * i / steps, lo + span * j / steps};
}

/// Numeric frame verdicts against the closed-form membership test on a grid,
/// skipping cells whose membership is not locally constant (the verdict at
/// the numeric tolerance is not meaningful on the boundary itself).
inline json suite_kpos(const CliConfig& cfg) {
  const regions::Dimension dim(cfg.d);
  const int grid = cfg.grid > 0 ? cfg.grid : 9;
  const int frames = cfg.frames > 0 ? cfg.frames : 200;
  if (grid < 2) {
    throw UsageError{"verify: --grid must be >= 2"};
  }
  const auto ks = select_ks(cfg.k, 2, cfg.d, "kpos suite");
  const Rational delta(3, 2000);
  std::int64_t checked = 0;
  std::int64_t skipped = 0;
  std::int64_t disagreements = 0;
  SuiteTally tally;
  json first_disagreement = nullptr;
  for (int k : ks) {
    for (int i = 0; i < grid; ++i) {
      for (int j = 0; j < grid; ++j) {
        const RationalPoint2 pt = grid_point(i, j, grid);
        const bool expected = regions::in_P_k(dim, k, pt);
        bool near_boundary = false;
        for (int dx = -1; dx <= 1 && !near_boundary; ++dx) {
          for (int dy = -1; dy <= 1 && !near_boundary; ++dy) {
            const RationalPoint2 nb{pt.x + delta * dx, pt.y + delta * dy};
            near_boundary = regions::in_P_k(dim, k, nb) != expected;
          }
        }
        if (near_boundary) {
          ++skipped;
          continue;
        }
        const std::uint64_t cell_seed = sampling::mix_seed(
            cfg.seed, static_cast<std::uint64_t>((k * grid + i) * grid + j));
        auto verdict = verify::kpos_numeric(cfg.d, k, pt, frames, cell_seed,
                                            cfg.tolerance);
        ++checked;
        tally.n_evaluations += verdict.statistics.n_evaluations;
        // Inside cells the margin is the smallest eigenvalue seen; outside
        // cells it is the size of the certified violation.
        tally.min_margin = std::min(
            tally.min_margin, expected ? verdict.statistics.min_margin
                                       : -verdict.statistics.min_margin);
        if (verdict.passed != expected) {
          ++disagreements;
          tally.passed = false;
          if (first_disagreement.is_null()) {
            first_disagreement = point_to_json(pt);
          }
        }
      }
    }
  }
  json j;
  j["command"] = "verify";
  j["suite"] = "kpos";
  j["d"] = cfg.d;
  j["k"] = cfg.k;
  j["grid"] = grid;
  j["frames"] = frames;
  j["tol"] = format_double(cfg.tolerance);
  j["checked"] = checked;
  j["skipped"] = skipped;
  j["disagreements"] = disagreements;
  j["first_disagreement"] = first_disagreement;
  tally.finish(&j);
  return j;
}

/// Exact equivalence of the reduced six-inequality system with the
/// closed-form membership test on a rational grid.
inline json suite_sixcond(const CliConfig& cfg) {
  const regions::Dimension dim(cfg.d);
  const int grid = cfg.grid > 0 ? cfg.grid : 21;
  if (grid < 2) {
    throw UsageError{"verify: --grid must be >= 2"};
  }
  const auto ks = select_ks(cfg.k, 2, cfg.d, "sixcond suite");
  SuiteTally tally;
  json first_disagreement = nullptr;
  for (int k : ks) {
    for (int i = 0; i < grid; ++i) {
      for (int j = 0; j < grid; ++j) {
        const RationalPoint2 pt = grid_point(i, j, grid);
        ++tally.n_evaluations;
        if (verify::six_condition_kpos(cfg.d, k, pt) !=
            regions::in_P_k(dim, k, pt)) {
          tally.passed = false;
          if (first_disagreement.is_null()) {
            first_disagreement = point_to_json(pt);
          }
        }
      }
    }
  }
  tally.min_margin = 0.0;
  json j;
  j["command"] = "verify";
  j["suite"] = "sixcond";
  j["d"] = cfg.d;
  j["k"] = cfg.k;
  j["grid"] = grid;
  j["first_disagreement"] = first_disagreement;
  tally.finish(&j);
  return j;
}

/// Exact trace pairing against dense matrix traces and against the affine
/// duality form, on random rational parameter pairs.
inline json suite_pairing(const CliConfig& cfg) {
  const int n = cfg.frames > 0 ? cfg.frames : 200;
  sampling::SplitMix64 rng(cfg.seed);
  const auto draw = [&rng]() {
    return Rational(static_cast<std::int64_t>(rng.next() % 81) - 40, 40);
  };
  SuiteTally tally;
  double max_deviation = 0.0;
  for (int trial = 0; trial < n; ++trial) {
    const RationalPoint2 ab{draw(), draw()};
    const RationalPoint2 pq{draw(), draw()};
    const Rational exact = verify::witness_pairing(cfg.d, ab, pq);
    const Matrix lhs = operators::rho_state(cfg.d, to_double(ab.x),
                                            to_double(ab.y));
    const Matrix rhs = operators::rho_state(cfg.d, to_double(pq.x),
                                            to_double(pq.y));
    const double dense = std::real((lhs * rhs).trace());
    max_deviation =
        std::max(max_deviation, std::abs(to_double(exact) - dense));
    const auto dual = geometry::alpha(cfg.d, ab);
    const bool sign_ok =
        (exact >= 0) == (pq.x * dual.x + pq.y * dual.y <= 1);
    ++tally.n_evaluations;
    if (!sign_ok) {
      tally.passed = false;
      if (!tally.counterexample.has_value()) {
        tally.counterexample.emplace(std::in_place_type<RationalPoint2>, ab);
      }
    }
  }
  if (max_deviation > cfg.tolerance) {
    tally.passed = false;
  }
  tally.min_margin = cfg.tolerance - max_deviation;
  json j;
  j["command"] = "verify";
  j["suite"] = "pairing";
  j["d"] = cfg.d;
  j["pairs"] = n;
  j["tol"] = format_double(cfg.tolerance);
  j["max_deviation"] = format_double(max_deviation);
  tally.finish(&j);
  return j;
}

/// Monte-Carlo conjugation averages against the analytic twirl, on the
/// invariant state and on rotated pure states.
inline json suite_twirl(const CliConfig& cfg) {
  const int n = cfg.frames > 0 ? cfg.frames : 2000;
  std::vector<Matrix> states;
  states.push_back(operators::rho_state(cfg.d, 0.1, 0.05));
  const Matrix u =
      sampling::haar_unitary(cfg.d * cfg.d, sampling::mix_seed(cfg.seed, 101));
  for (int t = 0; t < 3; ++t) {
    states.push_back(u.col(t) * u.col(t).adjoint());
  }
  SuiteTally tally;
  json margins = json::array();
  for (std::size_t t = 0; t < states.size(); ++t) {
    const auto verdict = verify::twirl_mc_check(
        cfg.d, states[t], n, sampling::mix_seed(cfg.seed, t));
    margins.push_back(format_double(verdict.statistics.min_margin));
    tally.fold(verdict);
  }
  json j;
  j["command"] = "verify";
  j["suite"] = "twirl";
  j["d"] = cfg.d;
  j["samples"] = n;
  j["states"] = states.size();
  j["margins"] = margins;
  tally.finish(&j);
  return j;
}

inline json suite_pptsq(const CliConfig& cfg) {
  const int n = cfg.frames > 0 ? cfg.frames : 500;
  const auto verdict = verify::pptsq_scan(cfg.d, n, cfg.seed);
  SuiteTally tally;
  tally.fold(verdict);
  json j;
  j["command"] = "verify";
  j["suite"] = "pptsq";
  j["d"] = cfg.d;
  j["pairs"] = n;
  tally.finish(&j);
  return j;
}

inline json suite_sdp(const CliConfig& cfg) {
  const auto result = verify::sindici_piani(cfg.d);
  const bool passed = result.ppt_min_eigenvalue >= -cfg.tolerance &&
                      result.projection_residual <= cfg.tolerance &&
                      result.constraint_residual <= cfg.tolerance;
  json j;
  j["command"] = "verify";
  j["suite"] = "sdp";
  j["d"] = cfg.d;
  j["p_min"] = to_string(result.p_min);
  j["sigma_star"] = point_to_json(result.sigma_star_params);
  j["ppt_min_eigenvalue"] = format_double(result.ppt_min_eigenvalue);
  j["projection_residual"] = format_double(result.projection_residual);
  j["constraint_residual"] = format_double(result.constraint_residual);
  j["passed"] = passed;
  return j;
}

inline json suite_lemma_a2(const CliConfig& cfg) {
  const int n = cfg.frames > 0 ? cfg.frames : 1000;
  const auto ks = select_ks(cfg.k, 1, cfg.d, "lemma-a2 suite");
  SuiteTally tally;
  for (int k : ks) {
    tally.fold(verify::optimization_bounds(
        cfg.d, k, n, sampling::mix_seed(cfg.seed, static_cast<std::uint64_t>(k))));
  }
  json j;
  j["command"] = "verify";
  j["suite"] = "lemma-a2";
  j["d"] = cfg.d;
  j["k"] = cfg.k;
  j["draws"] = n;
  tally.finish(&j);
  return j;
}

/// Closed-form dual-point tables re-derived through the tangent, pole, and
/// inverse-affine pipeline, plus the branch-coincidence criterion for the
/// two dual ellipses.
inline json suite_tables(const CliConfig& cfg) {
  const auto ks = select_ks(cfg.k, 1, cfg.d, "tables suite");
  const Rational s(cfg.d + 1);
  const Rational m(Rational(cfg.d - 1) * (cfg.d + 1));
  SuiteTally tally;
  std::int64_t proportionality_pairs = 0;
  for (int k : ks) {
    struct Probe {
      int table;
      std::optional<Rational> u;
    };
    std::vector<Probe> probes;
    if (k >= 2) {
      probes.push_back({1, Rational(2 * k - 1) / 2});
      probes.push_back({2, std::nullopt});
    }
    if (2 * k > cfg.d && k < cfg.d) {
      probes.push_back({3, std::nullopt});
    }
    for (const auto& probe : probes) {
      const Rational u_eff = probe.table == 1   ? *probe.u
                             : probe.table == 2 ? Rational(k - 1)
                                                : Rational(2 * k - cfg.d);
      const auto f = geometry::f_poly(cfg.d, k, u_eff);
      const auto dual = geometry::conic_pullback_linear(
          geometry::dual_conic(f), -m, s, s, -m);
      const auto rows = geometry::table_rows(cfg.d, k, probe.table, probe.u);
      for (const auto& row : rows) {
        ++tally.n_evaluations;
        const bool ok =
            f.eval(row.source) == 0 &&
            row.image == geometry::dual_image(cfg.d, f, row.source) &&
            dual.eval(row.image) == 0 &&
            geometry::lines_proportional(
                geometry::tangent_line(dual, row.image), row.tangent);
        if (!ok) {
          tally.passed = false;
          if (!tally.counterexample.has_value()) {
            tally.counterexample.emplace(std::in_place_type<RationalPoint2>,
                                         row.source);
          }
        }
      }
    }
    // The two dual ellipses coincide (up to positive scale) exactly at
    // k = d - 1.
    if (k >= 2 && 2 * k > cfg.d && k < cfg.d) {
      ++proportionality_pairs;
      ++tally.n_evaluations;
      const bool proportional = geometry::conics_positively_proportional(
          geometry::g_poly(cfg.d, k, 1), geometry::g_poly(cfg.d, k, 2));
      if (proportional != (k == cfg.d - 1)) {
        tally.passed = false;
      }
    }
  }
  tally.min_margin = 0.0;
  json j;
  j["command"] = "verify";
  j["suite"] = "tables";
  j["d"] = cfg.d;
  j["k"] = cfg.k;
  j["proportionality_pairs"] = proportionality_pairs;
  tally.finish(&j);
  return j;
}

/// Constructed states that keep the maximal PPT-compatible Schmidt number:
/// a product-state admixture at the extreme PPT corner and a spiked state
/// strictly inside the PPT region.
inline json suite_high_sn(const CliConfig& cfg) {
  const Rational corner = Rational(1) / (cfg.d + 2);
  verify::MixtureSpec mixture;
  mixture.ab = RationalPoint2{corner, corner};
  const Matrix u =
      sampling::haar_unitary(cfg.d, sampling::mix_seed(cfg.seed, 7));
  mixture.vectors = {u.col(0), u.col(1)};
  mixture.weights = {0.5, 0.25, 0.25};
  const auto mixed = verify::high_sn_state(cfg.d, mixture, cfg.tolerance);

  verify::PerturbedSpec perturbed;
  perturbed.ab =
      RationalPoint2{corner * Rational(24, 25), corner * Rational(24, 25)};
  perturbed.eps = 1e-3;
  const auto spiked = verify::high_sn_state(cfg.d, perturbed, cfg.tolerance);

  const bool passed = mixed.ppt && spiked.ppt &&
                      mixed.sn_lower == cfg.d / 2 &&
                      spiked.sn_lower == cfg.d / 2 &&
                      mixed.witness_trace < 0 && spiked.witness_trace < 0;
  json j;
  j["command"] = "verify";
  j["suite"] = "high-sn";
  j["d"] = cfg.d;
  j["mixture_sn_lower"] = mixed.sn_lower;
  j["mixture_witness_trace"] = format_double(mixed.witness_trace);
  j["perturbed_sn_lower"] = spiked.sn_lower;
  j["perturbed_witness_trace"] = format_double(spiked.witness_trace);
  j["passed"] = passed;
  return j;
}

inline int cmd_verify(const std::string& suite, const CliConfig& cfg,
                      std::ostream& out) {
  json j;
  if (suite == "kpos") {
    j = suite_kpos(cfg);
  } else if (suite == "sixcond") {
    j = suite_sixcond(cfg);
  } else if (suite == "pairing") {
    j = suite_pairing(cfg);
  } else if (suite == "twirl") {
    j = suite_twirl(cfg);
  } else if (suite == "pptsq") {
    j = suite_pptsq(cfg);
  } else if (suite == "sdp") {
    j = suite_sdp(cfg);
  } else if (suite == "lemma-a2") {
    j = suite_lemma_a2(cfg);
  } else if (suite == "tables") {
    j = suite_tables(cfg);
  } else if (suite == "high-sn") {
    j = suite_high_sn(cfg);
  } else {
    throw UsageError{"verify: unknown suite '" + suite + "'"};
  }
  out << j.dump() << '\n';
  return j["passed"].get<bool>() ? 0 : 1;
}

// -------------------------------------------------------------------------
// witness
// -------------------------------------------------------------------------

inline int cmd_witness(int d, int k, const std::string& kind,
                       const std::string& p_text, const std::string& q_text,
                       const std::string& out_path, std::ostream& out) {
  std::vector<std::string> warnings;
  RationalPoint2 params;
  if (kind == "kbh") {
    params = verify::kbh_params(d, k);
  } else if (kind == "kred") {
    params = verify::kred_params(d, k);
  } else if (kind == "custom") {
    if (p_text.empty() || q_text.empty()) {
      throw UsageError{"witness: --kind custom requires --p and --q"};
    }
    params.x = parse_scalar(p_text, "p", &warnings);
    params.y = parse_scalar(q_text, "q", &warnings);
  } else {
    throw UsageError{"witness: unknown kind '" + kind + "'"};
  }
  const Matrix choi =
      operators::rho_state(d, to_double(params.x), to_double(params.y));
  if (out_path.empty()) {
    operators::write_matrix(out, choi);
    return 0;
  }
  operators::save_matrix(out_path, choi);
  json j;
  j["command"] = "witness";
  j["d"] = d;
  j["k"] = k;
  j["kind"] = kind;
  j["p"] = to_string(params.x);
  j["q"] = to_string(params.y);
  j["warnings"] = warnings;
  j["out"] = out_path;
  out << j.dump() << '\n';
  return 0;
}

}  // namespace detail

/// Runs the full command-line interface against the given streams; returns
/// the process exit code. Splitting this from main() keeps every code path
/// testable in-process.
inline int run(int argc, const char* const* argv, std::ostream& out,
               std::ostream& err) {
  CLI::App app{"Exact classification of covariant maps and invariant states"};
  app.require_subcommand(1);

  int d = 4;
  std::string p_text;
  std::string q_text;
  std::string region_text;
  int samples = 256;
  std::string format = "csv";
  std::string out_path;
  std::string suite;
  std::string kind;
  CliConfig cfg;

  auto* classify = app.add_subcommand(
      "classify", "Report every region membership for one parameter point");
  classify->add_option("--d", d, "even dimension >= 4")->required();
  classify->add_option("--p", p_text, "first parameter, rational or decimal")
      ->required();
  classify->add_option("--q", q_text, "second parameter, rational or decimal")
      ->required();

  auto* boundary = app.add_subcommand(
      "boundary", "Export a region boundary polyline as CSV or SVG");
  boundary->add_option("--d", d, "even dimension >= 4")->required();
  boundary
      ->add_option("--region", region_text,
                   "region id: P<k>, S<k>, D, or T")
      ->required();
  boundary->add_option("--samples", samples, "number of boundary points")
      ->check(CLI::Range(8, 1 << 20));
  boundary->add_option("--format", format, "csv or svg")
      ->check(CLI::IsMember({"csv", "svg"}));
  boundary->add_option("--out", out_path,
                       "output file (required for svg; csv defaults to "
                       "stdout)");

  auto* verify_cmd = app.add_subcommand(
      "verify", "Run one verification suite; exit 0 iff it passed");
  verify_cmd
      ->add_option("--suite", suite,
                   "kpos, sixcond, pairing, twirl, pptsq, sdp, lemma-a2, "
                   "tables, or high-sn")
      ->required();
  verify_cmd->add_option("--d", cfg.d, "even dimension >= 4");
  verify_cmd->add_option("--k", cfg.k, "positivity order (0 = all)");
  verify_cmd->add_option("--frames", cfg.frames,
                         "sample count (0 = suite default)");
  verify_cmd->add_option("--grid", cfg.grid,
                         "grid points per axis (0 = suite default)");
  verify_cmd->add_option("--seed", cfg.seed, "base seed for all sampling");
  verify_cmd->add_option("--tol", cfg.tolerance,
                         "numeric tolerance, in (0, 1e-3]");
  verify_cmd->add_option("--jobs", cfg.jobs,
                         "worker pool size (execution is sequential and "
                         "deterministic)")
      ->check(CLI::Range(1, 1024));

  auto* witness = app.add_subcommand(
      "witness", "Write the Choi matrix of a canonical detector map");
  witness->add_option("--d", d, "even dimension >= 4")->required();
  witness->add_option("--k", cfg.k, "detector order");
  witness->add_option("--kind", kind, "kbh, kred, or custom")->required();
  witness->add_option("--p", p_text, "custom first parameter");
  witness->add_option("--q", q_text, "custom second parameter");
  witness->add_option("--out", out_path,
                      "output file (defaults to stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    return 2;
  }

  try {
    if (const char* env_seed = std::getenv("SYMPENT_SEED")) {
      char* end = nullptr;
      const unsigned long long parsed = std::strtoull(env_seed, &end, 10);
      if (end == env_seed || *end != '\0') {
        throw detail::UsageError{
            "SYMPENT_SEED must be an unsigned 64-bit integer"};
      }
      cfg.seed = static_cast<std::uint64_t>(parsed);
    }
    if (cfg.tolerance <= 0.0 || cfg.tolerance > 1e-3) {
      throw detail::UsageError{"--tol must lie in (0, 1e-3]"};
    }
    if (classify->parsed()) {
      return detail::cmd_classify(d, p_text, q_text, out);
    }
    if (boundary->parsed()) {
      return detail::cmd_boundary(d, region_text, samples, format, out_path,
                                  out);
    }
    if (verify_cmd->parsed()) {
      return detail::cmd_verify(suite, cfg, out);
    }
    return detail::cmd_witness(d, cfg.k, kind, p_text, q_text, out_path, out);
  } catch (const detail::UsageError& e) {
    err << "usage error: " << e.message << '\n';
    return 2;
  } catch (const UnsupportedRegion& e) {
    err << "unsupported: " << e.what() << '\n';
    return 4;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return 3;
  }
}

}  // namespace sympent::cli
