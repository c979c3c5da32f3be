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
#include <chrono>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <utility>
#include <variant>
#include <vector>

#include "sympent/errors.hpp"
#include "sympent/operators.hpp"
#include "sympent/regions.hpp"
#include "sympent/sampling.hpp"

/// Cross-validation layer. Everything the closed-form region predicates
/// assert is re-checked here by an independent route: frame-wise positivity
/// matrices and dense eigensolves on the numeric side, and the reduced
/// six-inequality system and trace pairings on the exact-rational side.
namespace sympent::verify {

using operators::Complex;
using operators::Matrix;
using operators::Vector;
using sympent::RationalPoint2;

struct VerdictStatistics {
  std::int64_t n_evaluations = 0;
  double min_margin = 0.0;
  double runtime_ms = 0.0;
};

using Counterexample = std::variant<sampling::Frame, RationalPoint2, Matrix>;

/// Outcome of one verification suite. A counterexample is attached exactly
/// when the suite failed.
struct Verdict {
  bool passed = false;
  std::optional<Counterexample> counterexample;
  VerdictStatistics statistics;
};

namespace detail {

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  double ms() const {
    return std::chrono::duration<double, std::milli>(
               std::chrono::steady_clock::now() - start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

inline double min_eigenvalue(const Matrix& x, const char* what) {
  return operators::detail::hermitian_eigenvalues(x, what).minCoeff();
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Frame-wise positivity matrix and the reduced inequality system
// ---------------------------------------------------------------------------

/// The compression of the ampliated map onto an orthonormal k-frame
/// v_1, ..., v_k: the kd x kd matrix with (i, j) block L(|v_i><v_j|).
/// The map is k-positive exactly when this matrix is positive semidefinite
/// for every frame.
inline Matrix tomiyama_matrix(const operators::MapParams& params,
                              const sampling::Frame& frame) {
  const int d = frame.d;
  const int k = frame.k;
  if (d < 1 || k < 1 || k > d || frame.columns.rows() != d ||
      frame.columns.cols() != k) {
    throw ShapeMismatch("tomiyama_matrix: malformed frame");
  }
  if (params.V.has_value() &&
      (params.V->rows() != d || params.V->cols() != d)) {
    throw ShapeMismatch("tomiyama_matrix: V does not match the frame size");
  }
  Matrix out(k * d, k * d);
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < k; ++j) {
      const Matrix unit =
          frame.columns.col(i) * frame.columns.col(j).adjoint();
      out.block(i * d, j * d, d, d) = operators::apply_map(params, unit);
    }
  }
  return out;
}

/// Input of the reduced positivity system: map parameters, dimensions, and
/// the squared overlap s of the frame vector with the antisymmetric-like
/// block, which is the only frame dependence that survives.
template <typename Scalar>
struct SixConditionInput {
  Scalar p, q;
  int d = 0;
  int k = 0;
  Scalar s{};  // in [0, 1]
};

/// Evaluates the six scalar inequalities equivalent to positivity of the
/// frame compression at overlap s, with A = (1 - p - q)/d:
///   A + q >= 0,
///   A - q >= 0                      (only binding for k > 2),
///   A >= 0                          (only binding for k < d),
///   A - q + kps >= 0,
///   A + kp - kps >= 0,
///   (A - q)(A + kp) + kpqs >= 0.
/// Works verbatim over exact rationals or doubles.
template <typename Scalar>
inline bool six_conditions(const SixConditionInput<Scalar>& in) {
  if (in.d < 4 || in.d % 2 != 0) {
    throw BadDimension("six_conditions: d must be an even integer >= 4");
  }
  if (in.k < 1 || in.k > in.d) {
    throw BadDimension("six_conditions: need 1 <= k <= d");
  }
  const Scalar zero(0);
  if (in.s < zero || in.s > Scalar(1)) {
    throw Error("six_conditions: s must lie in [0, 1]");
  }
  const Scalar a = (Scalar(1) - in.p - in.q) / Scalar(in.d);
  const Scalar kp = Scalar(in.k) * in.p;
  if (a + in.q < zero) return false;
  if (in.k > 2 && a - in.q < zero) return false;
  if (in.k < in.d && a < zero) return false;
  if (a - in.q + kp * in.s < zero) return false;
  if (a + kp - kp * in.s < zero) return false;
  return (a - in.q) * (a + kp) + kp * in.q * in.s >= zero;
}

/// Exact k-positivity (k >= 2) through the reduced system: the inequalities
/// are linear in s, so it suffices to test the two extreme attainable
/// overlaps 2 floor(k/2) / k and max(2k - d, 0) / k.
inline bool six_condition_kpos(int d, int k, const RationalPoint2& pt) {
  if (k < 2) {
    throw BadDimension("six_condition_kpos: reduction requires k >= 2");
  }
  const Rational s_hi = Rational(2 * (k / 2)) / k;
  const Rational s_lo = Rational(std::max(2 * k - d, 0)) / k;
  const SixConditionInput<Rational> hi{pt.x, pt.y, d, k, s_hi};
  const SixConditionInput<Rational> lo{pt.x, pt.y, d, k, s_lo};
  return six_conditions(hi) && six_conditions(lo);
}

/// Numerical k-positivity verdict for the map at a rational parameter point.
/// The two extremal frames are complete certifiers of any violation, so they
/// run first and provide early exit; the random frames then stress the
/// claimed positivity. min_margin reports the smallest eigenvalue seen.
inline Verdict kpos_numeric(int d, int k, const RationalPoint2& pt,
                            int n_frames, std::uint64_t seed,
                            double tol = 1e-9) {
  if (n_frames < 1) {
    throw Error("kpos_numeric: n_frames must be >= 1");
  }
  detail::Stopwatch watch;
  const operators::MapParams params{to_double(pt.x), to_double(pt.y),
                                    std::nullopt};
  Verdict out;
  out.passed = true;
  out.statistics.min_margin = std::numeric_limits<double>::infinity();
  const auto check = [&](const sampling::Frame& frame) {
    const double lowest = detail::min_eigenvalue(
        tomiyama_matrix(params, frame), "kpos_numeric");
    ++out.statistics.n_evaluations;
    out.statistics.min_margin = std::min(out.statistics.min_margin, lowest);
    if (lowest < -tol) {
      out.passed = false;
      out.counterexample.emplace(std::in_place_type<sampling::Frame>, frame);
    }
    return out.passed;
  };
  const auto extremes = sampling::extremal_frames(d, k);
  if (check(extremes.max_frame) && check(extremes.min_frame)) {
    for (int i = 0; i < n_frames && out.passed; ++i) {
      check(sampling::random_frame(d, k, sampling::mix_seed(seed, i)));
    }
  }
  out.statistics.runtime_ms = watch.ms();
  return out;
}

// ---------------------------------------------------------------------------
// Exact witness pairing and Schmidt-number certificates
// ---------------------------------------------------------------------------

/// Exact overlap Tr(rho_{a,b} rho_{p,q}), expanded from the cross traces of
/// the three basis operators (Tr I = d^2, the maximally entangled overlap
/// with the twisted flip is -1, and the twisted flip squares to I):
///   [1 - (a+b)(p+q)]/d^2 + ap + bq - (aq + bp)/d.
/// Nonnegative for all of ext(P_k) exactly when the state has Schmidt
/// number at most k.
inline Rational witness_pairing(int d, const RationalPoint2& ab,
                                const RationalPoint2& pq) {
  regions::Dimension dim(d);
  const Rational dd(d);
  return (1 - (ab.x + ab.y) * (pq.x + pq.y)) / (dd * dd) + ab.x * pq.x +
         ab.y * pq.y - (ab.x * pq.y + ab.y * pq.x) / dd;
}

/// Parameters of the k-fold block-transpose witness map, whose Choi matrix
/// is the canonical Schmidt-number-(k+1) detector in this family.
inline RationalPoint2 kbh_params(int d, int k) {
  regions::Dimension dim(d);
  if (k < 1 || k > d / 2 - 1) {
    throw BadDimension("kbh_params: need 1 <= k <= d/2 - 1");
  }
  const Rational denom = Rational(k) * d - k - 1;
  return {Rational(-1) / denom, Rational(-k) / denom};
}

/// Parameters of the k-reduction witness map Z -> (k Tr(Z) I - Z)/(kd - 1).
inline RationalPoint2 kred_params(int d, int k) {
  regions::Dimension dim(d);
  if (k < 1 || k > d) {
    throw BadDimension("kred_params: need 1 <= k <= d");
  }
  return {Rational(-1) / (Rational(k) * d - 1), Rational(0)};
}

struct SnCertificate {
  int sn = 1;
  std::optional<RationalPoint2> violating_witness;
};

/// Schmidt number of the state at (a, b) together with an explicit dual
/// certificate: a boundary point of the (sn - 1)-positivity region whose
/// pairing with the state is exactly negative. Extreme vertices are tried
/// first, then 256 exact points per boundary piece.
inline SnCertificate sn_certificate(int d, const RationalPoint2& ab) {
  regions::Dimension dim(d);
  SnCertificate out;
  out.sn = regions::schmidt_number(dim, ab);
  if (out.sn <= 1) {
    return out;
  }
  const int m = out.sn - 1;
  std::vector<RationalPoint2> candidates =
      regions::extreme_points(dim, m).vertices;
  const auto boundary =
      regions::boundary_sample(dim, regions::RegionId::P(m), 256);
  candidates.insert(candidates.end(), boundary.begin(), boundary.end());
  for (const auto& witness : candidates) {
    if (witness_pairing(d, ab, witness) < 0) {
      out.violating_witness = witness;
      break;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Monte-Carlo twirling
// ---------------------------------------------------------------------------

/// Checks that the empirical conjugation average over sampled group elements
/// converges to the analytic three-projection twirl, within the standard
/// 5/sqrt(n) Frobenius budget.
inline Verdict twirl_mc_check(int d, const Matrix& rho, int n,
                              std::uint64_t seed) {
  regions::Dimension dim(d);
  if (n < 100) {
    throw Error("twirl_mc_check: n must be >= 100");
  }
  if (rho.rows() != d * d || rho.cols() != d * d) {
    throw ShapeMismatch("twirl_mc_check: rho must be d^2 x d^2");
  }
  detail::Stopwatch watch;
  const Matrix expected =
      operators::twirl_analytic(rho, operators::Family::SSbar);
  Matrix acc = Matrix::Zero(d * d, d * d);
  for (int i = 0; i < n; ++i) {
    const Matrix s = sampling::haar_symplectic(d, sampling::mix_seed(seed, i));
    const Matrix big = operators::detail::kron(s, s.conjugate());
    acc += big * rho * big.adjoint();
  }
  acc /= static_cast<double>(n);
  const double error = (acc - expected).norm();
  const double budget = 5.0 / std::sqrt(static_cast<double>(n));
  Verdict out;
  out.passed = error <= budget;
  out.statistics.n_evaluations = n;
  out.statistics.min_margin = budget - error;
  if (!out.passed) {
    out.counterexample.emplace(std::in_place_type<Matrix>, acc);
  }
  out.statistics.runtime_ms = watch.ms();
  return out;
}

// ---------------------------------------------------------------------------
// Composition scans (PPT squared and positive x PPT)
// ---------------------------------------------------------------------------

namespace detail {

/// Uniform exact-rational point on a 4097 x 4097 lattice over the box,
/// rejected against the region predicate.
template <typename Pred>
inline RationalPoint2 sample_region_point(sampling::SplitMix64& rng,
                                          const Rational& lo,
                                          const Rational& hi, Pred&& inside) {
  const Rational span = hi - lo;
  for (int attempt = 0; attempt < 100000; ++attempt) {
    const Rational x = lo + span * Rational(rng.next() % 4097) / 4096;
    const Rational y = lo + span * Rational(rng.next() % 4097) / 4096;
    RationalPoint2 pt{x, y};
    if (inside(pt)) {
      return pt;
    }
  }
  throw Error("sample_region_point: rejection sampling stalled");
}

}  // namespace detail

/// Samples pairs of PPT parameter points, composes the associated maps
/// exactly, and checks the composite is entanglement breaking; then samples
/// positive x PPT pairs and checks the composite is decomposable. Also
/// asserts the closed-form product bound 4/(d+2)^2 < 1/(d+1) that drives
/// the first statement.
inline Verdict pptsq_scan(int d, int n_pairs, std::uint64_t seed) {
  regions::Dimension dim(d);
  if (n_pairs < 1) {
    throw Error("pptsq_scan: n_pairs must be >= 1");
  }
  detail::Stopwatch watch;
  sampling::SplitMix64 rng(seed);
  const Rational dd(d);
  const Rational ppt_lo = Rational(-1) / ((dd - 2) * (dd + 1));
  const Rational ppt_hi = Rational(1) / (dd + 1);
  const Rational pos_lo = Rational(-1) / (dd - 2);
  const Rational pos_hi = 1;
  const Rational dec_bound = -(dd + 2) / (dd * dd - dd - 2);
  const auto in_ppt = [&](const RationalPoint2& pt) {
    return regions::in_T(dim, pt);
  };
  const auto in_pos = [&](const RationalPoint2& pt) {
    return regions::in_P_k(dim, 1, pt);
  };

  Verdict out;
  out.passed = Rational(4) / ((dd + 2) * (dd + 2)) < Rational(1) / (dd + 1);
  out.statistics.min_margin = std::numeric_limits<double>::infinity();
  for (int i = 0; i < n_pairs && out.passed; ++i) {
    const RationalPoint2 ab =
        detail::sample_region_point(rng, ppt_lo, ppt_hi, in_ppt);
    const RationalPoint2 pq =
        detail::sample_region_point(rng, ppt_lo, ppt_hi, in_ppt);
    const RationalPoint2 composite = operators::compose_params(ab, pq);
    ++out.statistics.n_evaluations;
    const Rational margin =
        Rational(1) / (dd + 1) - (ab.x + ab.y) * (pq.x + pq.y);
    out.statistics.min_margin =
        std::min(out.statistics.min_margin, to_double(margin));
    if (!regions::in_S_k(dim, 1, composite)) {
      out.passed = false;
      out.counterexample.emplace(std::in_place_type<RationalPoint2>, composite);
    }
  }
  for (int i = 0; i < n_pairs && out.passed; ++i) {
    const RationalPoint2 ab =
        detail::sample_region_point(rng, pos_lo, pos_hi, in_pos);
    const RationalPoint2 pq =
        detail::sample_region_point(rng, ppt_lo, ppt_hi, in_ppt);
    const RationalPoint2 composite = operators::compose_params(ab, pq);
    ++out.statistics.n_evaluations;
    const Rational margin = (ab.x + ab.y) * (pq.x + pq.y) - dec_bound;
    out.statistics.min_margin =
        std::min(out.statistics.min_margin, to_double(margin));
    if (!regions::in_D(dim, composite)) {
      out.passed = false;
      out.counterexample.emplace(std::in_place_type<RationalPoint2>, composite);
    }
  }
  out.statistics.runtime_ms = watch.ms();
  return out;
}

// ---------------------------------------------------------------------------
// The antisymmetric-projection semidefinite program
// ---------------------------------------------------------------------------

struct SindiciPianiResult {
  Rational p_min;
  RationalPoint2 sigma_star_params;  // sigma* = partial transpose of this state
  double ppt_min_eigenvalue = 0.0;
  double projection_residual = 0.0;
  double constraint_residual = 0.0;
};

/// Exact optimum of the antisymmetric-projection program at the canonical
/// antisymmetric pure state. The optimizer family runs along one edge of the
/// PPT quadrilateral, so the maximal weight p is found exactly by
/// intersecting the family line with each edge; the dense checks then
/// confirm PPT and the projection constraint at the optimum.
inline SindiciPianiResult sindici_piani(int d) {
  regions::Dimension dim(d);
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

  // Family a(p) = (1 - p)/(d + 1), b(p) = p; the largest p keeping the
  // point inside the quadrilateral binds on the edges with positive slope.
  std::optional<Rational> best;
  for (int e = 0; e < 4; ++e) {
    const RationalPoint2& u = corners[e];
    const RationalPoint2& v = corners[(e + 1) % 4];
    Rational n1 = v.y - u.y;
    Rational n2 = u.x - v.x;
    Rational c = n1 * u.x + n2 * u.y;
    if (n1 * center.x + n2 * center.y - c > 0) {
      n1 = -n1;
      n2 = -n2;
      c = -c;
    }
    const Rational slope = n2 - n1 / (dd + 1);
    const Rational intercept = n1 / (dd + 1) - c;
    if (slope > 0) {
      const Rational limit = -intercept / slope;
      if (!best.has_value() || limit < *best) {
        best = limit;
      }
    }
  }
  if (!best.has_value()) {
    throw Error("sindici_piani: optimizer family is unbounded");
  }
  const Rational p = *best;
  const RationalPoint2 star{(1 - p) / (dd + 1), p};
  if (!regions::in_T(dim, star)) {
    throw Error("sindici_piani: optimum fell outside the PPT region");
  }
  const Rational p_above = p + Rational(1, 1000000);
  if (regions::in_T(dim, {(1 - p_above) / (dd + 1), p_above})) {
    throw Error("sindici_piani: optimum is not maximal");
  }

  SindiciPianiResult out;
  out.p_min = p;
  out.sigma_star_params = star;

  const Matrix rho = operators::rho_state(d, to_double(star.x),
                                          to_double(star.y));
  const Matrix sigma = operators::partial_transpose(rho);
  out.ppt_min_eigenvalue =
      std::min(detail::min_eigenvalue(sigma, "sindici_piani"),
               detail::min_eigenvalue(rho, "sindici_piani"));

  const auto canon = operators::canonical_matrices(d);
  const Matrix anti =
      (Matrix::Identity(d * d, d * d) - canon.flip) / 2.0;
  const Matrix target =
      canon.max_ent_omega * canon.max_ent_omega.adjoint();
  const Matrix compressed = anti * sigma * anti;
  out.projection_residual = (compressed - to_double(p) * target).norm();
  const double measured = std::real((anti * sigma).trace());
  out.constraint_residual = (compressed - measured * target).norm();
  return out;
}

// ---------------------------------------------------------------------------
// Constructed states with maximal Schmidt number under the PPT constraint
// ---------------------------------------------------------------------------

struct MixtureSpec {
  RationalPoint2 ab;
  std::vector<Vector> vectors;   // unit vectors in C^d
  std::vector<double> weights;   // probability mass; weights[0] pairs with ab
};

struct PerturbedSpec {
  RationalPoint2 ab;
  double eps = 0.0;
};

struct HighSnResult {
  Matrix rho;
  bool ppt = false;
  int sn_lower = 0;
  double witness_trace = 0.0;
};

namespace detail {

/// Shared certification tail: the detector pairing must vanish on every
/// admixed component, so the dense witness trace equals the family weight
/// times the exact pairing; negativity then pins the Schmidt number at d/2.
inline HighSnResult certify_high_sn(int d, const RationalPoint2& ab,
                                    Matrix rho, double family_weight,
                                    double ppt_tol) {
  const int k = d / 2 - 1;
  const RationalPoint2 w = kbh_params(d, k);
  const Rational exact = witness_pairing(d, ab, w);
  if (!(exact < 0)) {
    throw Error("certify_high_sn: witness pairing is not negative");
  }
  const Matrix detector =
      operators::rho_state(d, to_double(w.x), to_double(w.y));
  const double trace = std::real((detector * rho).trace());
  if (std::abs(trace - family_weight * to_double(exact)) > 1e-9) {
    throw Error("certify_high_sn: admixture failed to cancel in the trace");
  }
  const double lowest = min_eigenvalue(operators::partial_transpose(rho),
                                       "certify_high_sn");
  if (lowest < -ppt_tol) {
    throw EpsTooLarge("high_sn_state: partial transpose eigenvalue " +
                      std::to_string(lowest));
  }
  HighSnResult out;
  out.rho = std::move(rho);
  out.ppt = true;
  out.sn_lower = d / 2;
  out.witness_trace = trace;
  return out;
}

inline void require_high_sn_params(const regions::Dimension& dim,
                                   const RationalPoint2& ab) {
  if (!regions::in_T(dim, ab) ||
      regions::in_S_k(dim, dim.value / 2 - 1, ab)) {
    throw ParamsOutsideRegion(
        "high_sn_state: (a, b) must be PPT with full Schmidt number d/2");
  }
}

}  // namespace detail

/// Mixture construction: the base state plus product states of the form
/// |v><v| (x) |Mv><Mv| with M the standard skew unitary. Products keep the
/// state PPT and are invisible to the detector, so the Schmidt number stays
/// at d/2 for any admixture.
inline HighSnResult high_sn_state(int d, const MixtureSpec& spec,
                                  double ppt_tol = 1e-9) {
  regions::Dimension dim(d);
  detail::require_high_sn_params(dim, spec.ab);
  if (spec.weights.size() != spec.vectors.size() + 1) {
    throw Error("high_sn_state: need one weight per vector plus the base");
  }
  double total = 0.0;
  for (double w : spec.weights) {
    if (w < 0) {
      throw Error("high_sn_state: weights must be nonnegative");
    }
    total += w;
  }
  if (std::abs(total - 1.0) > 1e-12 || spec.weights[0] <= 0.0) {
    throw Error("high_sn_state: weights must be a probability mass with a "
                "positive base weight");
  }
  const Matrix omega = operators::omega_matrix(d);
  Matrix rho = spec.weights[0] * operators::rho_state(d, to_double(spec.ab.x),
                                                      to_double(spec.ab.y));
  for (std::size_t j = 0; j < spec.vectors.size(); ++j) {
    const Vector& v = spec.vectors[j];
    if (v.size() != d) {
      throw ShapeMismatch("high_sn_state: vectors must live in C^d");
    }
    if (std::abs(v.norm() - 1.0) > 1e-9) {
      throw Error("high_sn_state: vectors must be unit vectors");
    }
    const Vector partner = omega * v;
    Vector product(d * d);
    for (int r = 0; r < d; ++r) {
      product.segment(r * d, d) = v(r) * partner;
    }
    rho += spec.weights[j + 1] * (product * product.adjoint());
  }
  return detail::certify_high_sn(d, spec.ab, std::move(rho), spec.weights[0],
                                 ppt_tol);
}

/// Perturbation construction: the base state nudged toward the canonical
/// antisymmetric pure state, which is also invisible to the detector. The
/// base point must be strictly inside the PPT region so that a small
/// perturbation survives the partial-transpose eigencheck.
inline HighSnResult high_sn_state(int d, const PerturbedSpec& spec,
                                  double ppt_tol = 1e-9) {
  regions::Dimension dim(d);
  detail::require_high_sn_params(dim, spec.ab);
  if (spec.eps <= 0.0 || spec.eps >= 1.0) {
    throw Error("high_sn_state: eps must lie in (0, 1)");
  }
  const Matrix base = operators::rho_state(d, to_double(spec.ab.x),
                                           to_double(spec.ab.y));
  if (detail::min_eigenvalue(operators::partial_transpose(base),
                             "high_sn_state") < 1e-12) {
    throw ParamsOutsideRegion(
        "high_sn_state: (a, b) must be strictly inside the PPT region");
  }
  const auto canon = operators::canonical_matrices(d);
  const Matrix spike =
      canon.max_ent_omega * canon.max_ent_omega.adjoint();
  Matrix rho = (1.0 - spec.eps) * base + spec.eps * spike;
  return detail::certify_high_sn(d, spec.ab, std::move(rho), 1.0 - spec.eps,
                                 ppt_tol);
}

// ---------------------------------------------------------------------------
// Pairing-sum bounds over random frames
// ---------------------------------------------------------------------------

/// Empirical confirmation of the frame-pairing bounds: every sampled frame's
/// pairing sum lies in [max(2k - d, 0), 2 floor(k/2)] and the two extremal
/// frames attain the endpoints. Skew symmetry of the pairing matrix is
/// verified on every draw.
inline Verdict optimization_bounds(int d, int k, int n, std::uint64_t seed) {
  if (n < 1) {
    throw Error("optimization_bounds: n must be >= 1");
  }
  detail::Stopwatch watch;
  const double hi = 2.0 * (k / 2);
  const double lo = std::max(2.0 * k - d, 0.0);
  Verdict out;
  out.passed = true;
  out.statistics.min_margin = std::numeric_limits<double>::infinity();
  const auto record = [&](const sampling::Frame& frame, double attain_tol,
                          const double* endpoint) {
    const Matrix b = sampling::frame_pairing_matrix(frame);
    const double sum = b.squaredNorm();
    ++out.statistics.n_evaluations;
    double margin = std::min(sum - lo, hi - sum);
    if (endpoint != nullptr) {
      margin = attain_tol - std::abs(sum - *endpoint);
    }
    out.statistics.min_margin = std::min(out.statistics.min_margin, margin);
    const bool ok = (b.transpose() + b).norm() <= 1e-10 &&
                    (endpoint != nullptr
                         ? std::abs(sum - *endpoint) <= attain_tol
                         : sum >= lo - 1e-10 && sum <= hi + 1e-10);
    if (!ok) {
      out.passed = false;
      out.counterexample.emplace(std::in_place_type<sampling::Frame>, frame);
    }
    return ok;
  };
  const auto extremes = sampling::extremal_frames(d, k);
  if (record(extremes.max_frame, 1e-12, &hi) &&
      record(extremes.min_frame, 1e-12, &lo)) {
    for (int i = 0; i < n && out.passed; ++i) {
      record(sampling::random_frame(d, k, sampling::mix_seed(seed, i)), 0.0,
             nullptr);
    }
  }
  out.statistics.runtime_ms = watch.ms();
  return out;
}

}  // namespace sympent::verify
