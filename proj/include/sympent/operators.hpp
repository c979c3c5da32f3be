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

#include <Eigen/Dense>
#include <array>
#include <cmath>
#include <complex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sympent/errors.hpp"
#include "sympent/rational.hpp"

namespace sympent::operators {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/// Parameters of the covariant map Z -> (1-p-q) Tr(Z)/d I + p Z + q V Z^T V*.
/// V defaults to the standard skew-symmetric unitary of the dimension in use.
struct MapParams {
  double p = 0.0;
  double q = 0.0;
  std::optional<Matrix> V;
};

/// The three distinct eigenvalues of an invariant two-parameter state,
/// together with their multiplicities 1, (d^2+d)/2 and (d^2-d-2)/2.
struct SpectrumTriple {
  double lambda1 = 0.0;
  double lambda2 = 0.0;
  double lambda3 = 0.0;
  Eigen::Index m1 = 0;
  Eigen::Index m2 = 0;
  Eigen::Index m3 = 0;
};

/// Which commutant the three minimal projections (and the twirl) belong to.
/// SSbar conjugates by S (x) conj(S); SS conjugates by S (x) S.
enum class Family { SSbar, SS };

struct CanonicalMatrices {
  Matrix omega;          ///< block form [[0, I], [-I, 0]]
  Vector max_ent;        ///< (1/sqrt(d)) sum_j |jj>
  Vector max_ent_omega;  ///< (I (x) omega) applied to max_ent
  Matrix flip;           ///< sum_{ij} |ij><ji|
  Matrix flip_omega;     ///< (I (x) omega) flip (I (x) omega)*
};

namespace detail {

inline void require_even_dimension(int d) {
  if (d < 4 || d % 2 != 0) {
    throw BadDimension("dimension must be an even integer >= 4, got " +
                       std::to_string(d));
  }
}

inline void require_square(const Matrix& X, const char* what) {
  if (X.rows() != X.cols()) {
    throw ShapeMismatch(std::string(what) + ": matrix must be square, got " +
                        std::to_string(X.rows()) + "x" +
                        std::to_string(X.cols()));
  }
}

/// Side length d of a bipartite d*d x d*d matrix, with d even >= 4.
inline int bipartite_side(const Matrix& X, const char* what) {
  require_square(X, what);
  const auto n = X.rows();
  const auto d = static_cast<Eigen::Index>(std::llround(std::sqrt(
      static_cast<double>(n))));
  if (d * d != n) {
    throw ShapeMismatch(std::string(what) +
                        ": matrix side is not a perfect square: " +
                        std::to_string(n));
  }
  require_even_dimension(static_cast<int>(d));
  return static_cast<int>(d);
}

inline Matrix kron(const Matrix& A, const Matrix& B) {
  Matrix out(A.rows() * B.rows(), A.cols() * B.cols());
  for (Eigen::Index i = 0; i < A.rows(); ++i) {
    for (Eigen::Index j = 0; j < A.cols(); ++j) {
      out.block(i * B.rows(), j * B.cols(), B.rows(), B.cols()) = A(i, j) * B;
    }
  }
  return out;
}

inline void check_skew_unitary(const Matrix& V, double tol = 1e-10) {
  require_square(V, "skew-symmetric unitary");
  if (V.rows() % 2 != 0) {
    throw NotSkewUnitary("skew-symmetric unitaries exist only in even "
                         "dimension, got " + std::to_string(V.rows()));
  }
  const auto d = V.rows();
  const double unitary_residual =
      (V.adjoint() * V - Matrix::Identity(d, d)).norm();
  const double skew_residual = (V.transpose() + V).norm();
  if (unitary_residual > tol || skew_residual > tol) {
    throw NotSkewUnitary("matrix is not skew-symmetric unitary (unitarity "
                         "residual " + std::to_string(unitary_residual) +
                         ", skew residual " + std::to_string(skew_residual) +
                         ")");
  }
}

inline void require_hermitian(const Matrix& X, const char* what,
                              double tol = 1e-10) {
  if ((X - X.adjoint()).norm() > tol) {
    throw Error(std::string(what) + ": matrix is not Hermitian to tolerance");
  }
}

/// Eigenvalues of (X + X*)/2, ascending.
inline Eigen::VectorXd hermitian_eigenvalues(const Matrix& X,
                                             const char* what) {
  require_hermitian(X, what);
  const Matrix sym = (X + X.adjoint()) / 2.0;
  Eigen::SelfAdjointEigenSolver<Matrix> solver(sym,
                                               Eigen::EigenvaluesOnly);
  return solver.eigenvalues();
}

}  // namespace detail

/// The standard skew-symmetric unitary in block form [[0, I], [-I, 0]].
inline Matrix omega_matrix(int d) {
  detail::require_even_dimension(d);
  const int h = d / 2;
  Matrix omega = Matrix::Zero(d, d);
  for (int j = 0; j < h; ++j) {
    omega(j, h + j) = Complex(1, 0);
    omega(h + j, j) = Complex(-1, 0);
  }
  return omega;
}

inline CanonicalMatrices canonical_matrices(int d) {
  detail::require_even_dimension(d);
  CanonicalMatrices out;
  out.omega = omega_matrix(d);
  out.max_ent = Vector::Zero(d * d);
  const double amp = 1.0 / std::sqrt(static_cast<double>(d));
  for (int j = 0; j < d; ++j) {
    out.max_ent(j * d + j) = Complex(amp, 0);
  }
  const Matrix id_omega = detail::kron(Matrix::Identity(d, d), out.omega);
  out.max_ent_omega = id_omega * out.max_ent;
  out.flip = Matrix::Zero(d * d, d * d);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      out.flip(i * d + j, j * d + i) = Complex(1, 0);
    }
  }
  out.flip_omega = id_omega * out.flip * id_omega.adjoint();
  return out;
}

/// The three minimal projections spanning the requested commutant, ordered
/// as (rank-1, symmetric-type, antisymmetric-type).
inline std::array<Matrix, 3> projections(int d, Family family) {
  const auto canon = canonical_matrices(d);
  const Matrix identity = Matrix::Identity(d * d, d * d);
  const Vector& vec =
      family == Family::SSbar ? canon.max_ent : canon.max_ent_omega;
  const Matrix& swap_op =
      family == Family::SSbar ? canon.flip_omega : canon.flip;
  const Matrix rank_one = vec * vec.adjoint();
  std::array<Matrix, 3> out;
  out[0] = rank_one;
  out[1] = (identity + swap_op) / 2.0;
  out[2] = (identity - swap_op) / 2.0 - rank_one;
  return out;
}

inline Matrix apply_map(const MapParams& params, const Matrix& Z) {
  detail::require_square(Z, "apply_map");
  const int d = static_cast<int>(Z.rows());
  detail::require_even_dimension(d);
  Matrix V;
  if (params.V.has_value()) {
    detail::check_skew_unitary(*params.V, 1e-12);
    if (params.V->rows() != Z.rows()) {
      throw ShapeMismatch("apply_map: V and Z dimensions differ");
    }
    V = *params.V;
  } else {
    V = omega_matrix(d);
  }
  const Complex trace_coeff =
      (1.0 - params.p - params.q) * Z.trace() / static_cast<double>(d);
  return trace_coeff * Matrix::Identity(d, d) + params.p * Z +
         params.q * (V * Z.transpose() * V.adjoint());
}

/// The invariant two-parameter state: (1-a-b)/d^2 I + a |w><w| + (b/d) F^V,
/// where F^V conjugates the flip by I (x) V.
inline Matrix rho_state(int d, double a, double b,
                        const std::optional<Matrix>& V = std::nullopt) {
  const auto canon = canonical_matrices(d);
  Matrix flip_v;
  if (V.has_value()) {
    detail::check_skew_unitary(*V, 1e-12);
    if (V->rows() != d) {
      throw ShapeMismatch("rho_state: V must be d x d");
    }
    const Matrix id_v = detail::kron(Matrix::Identity(d, d), *V);
    flip_v = id_v * canon.flip * id_v.adjoint();
  } else {
    flip_v = canon.flip_omega;
  }
  const double dd = static_cast<double>(d);
  return ((1.0 - a - b) / (dd * dd)) * Matrix::Identity(d * d, d * d) +
         a * (canon.max_ent * canon.max_ent.adjoint()) + (b / dd) * flip_v;
}

/// Choi matrix of the covariant map, computed column by column as
/// (id (x) L)(|w><w|). Agrees entrywise with rho_state by construction.
inline Matrix choi_of_map(int d, const MapParams& params) {
  detail::require_even_dimension(d);
  Matrix out(d * d, d * d);
  Matrix unit = Matrix::Zero(d, d);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      unit(i, j) = Complex(1, 0);
      out.block(i * d, j * d, d, d) =
          apply_map(params, unit) / static_cast<double>(d);
      unit(i, j) = Complex(0, 0);
    }
  }
  return out;
}

inline SpectrumTriple spectrum_rho(int d, double a, double b) {
  detail::require_even_dimension(d);
  const double dd = static_cast<double>(d);
  const double base = (1.0 - a - b) / (dd * dd);
  SpectrumTriple out;
  out.lambda1 = base + a - b / dd;
  out.lambda2 = base + b / dd;
  out.lambda3 = base - b / dd;
  out.m1 = 1;
  out.m2 = static_cast<Eigen::Index>(d) * (d + 1) / 2;
  out.m3 = (static_cast<Eigen::Index>(d) * d - d - 2) / 2;
  return out;
}

/// Transpose of the second tensor factor (block-wise transpose).
inline Matrix partial_transpose(const Matrix& X) {
  detail::require_square(X, "partial_transpose");
  const auto n = X.rows();
  const auto d = static_cast<Eigen::Index>(std::llround(std::sqrt(
      static_cast<double>(n))));
  if (d * d != n) {
    throw ShapeMismatch("partial_transpose: matrix side is not a perfect "
                        "square: " + std::to_string(n));
  }
  Matrix out(n, n);
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = 0; j < d; ++j) {
      out.block(i * d, j * d, d, d) =
          X.block(i * d, j * d, d, d).transpose();
    }
  }
  return out;
}

/// Trace over the second tensor factor.
inline Matrix partial_trace_second(const Matrix& X) {
  detail::require_square(X, "partial_trace_second");
  const auto n = X.rows();
  const auto d = static_cast<Eigen::Index>(std::llround(std::sqrt(
      static_cast<double>(n))));
  if (d * d != n) {
    throw ShapeMismatch("partial_trace_second: matrix side is not a perfect "
                        "square: " + std::to_string(n));
  }
  Matrix out = Matrix::Zero(d, d);
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = 0; j < d; ++j) {
      Complex sum(0, 0);
      for (Eigen::Index k = 0; k < d; ++k) {
        sum += X(i * d + k, j * d + k);
      }
      out(i, j) = sum;
    }
  }
  return out;
}

/// Exact composition rule of the two-parameter maps:
/// (a,b) after (p,q) has parameters (ap+bq, aq+bp).
inline RationalPoint2 compose_params(const RationalPoint2& ab,
                                     const RationalPoint2& pq) {
  return RationalPoint2{ab.x * pq.x + ab.y * pq.y,
                        ab.x * pq.y + ab.y * pq.x};
}

/// Invariant parameters (a, b) of an arbitrary unit-trace bipartite matrix,
/// recovered from the two scalar statistics Tr(F^V rho) and <w|rho|w>.
inline std::pair<double, double> state_params_of(
    const Matrix& rho, const std::optional<Matrix>& V = std::nullopt) {
  const int d = detail::bipartite_side(rho, "state_params_of");
  if (std::abs(rho.trace() - Complex(1, 0)) > 1e-10) {
    throw NotUnitTrace("state_params_of: trace must be 1");
  }
  const auto canon = canonical_matrices(d);
  Matrix flip_v;
  if (V.has_value()) {
    detail::check_skew_unitary(*V, 1e-12);
    if (V->rows() != d) {
      throw ShapeMismatch("state_params_of: V must be d x d");
    }
    const Matrix id_v = detail::kron(Matrix::Identity(d, d), *V);
    flip_v = id_v * canon.flip * id_v.adjoint();
  } else {
    flip_v = canon.flip_omega;
  }
  const double t = (flip_v * rho).trace().real();
  const double w =
      (canon.max_ent.adjoint() * rho * canon.max_ent)(0, 0).real();
  const double dd = static_cast<double>(d);
  const double denom = dd * dd - dd - 2.0;
  return {(-1.0 + t + (dd * dd - dd) * w) / denom,
          (-1.0 + (dd - 1.0) * t + dd * w) / denom};
}

/// Conditional expectation onto the span of the family's three projections:
/// sum_i Tr(Pi_i rho)/rank(Pi_i) Pi_i.
inline Matrix twirl_analytic(const Matrix& rho, Family family) {
  const int d = detail::bipartite_side(rho, "twirl_analytic");
  const auto projs = projections(d, family);
  const auto spectrum = spectrum_rho(d, 0, 0);
  const std::array<double, 3> ranks = {
      static_cast<double>(spectrum.m1), static_cast<double>(spectrum.m2),
      static_cast<double>(spectrum.m3)};
  Matrix out = Matrix::Zero(rho.rows(), rho.cols());
  for (std::size_t i = 0; i < projs.size(); ++i) {
    out += ((projs[i] * rho).trace() / ranks[i]) * projs[i];
  }
  return out;
}

struct SchmidtCriterion {
  Matrix matrix;
  double min_eigenvalue = 0.0;
};

/// The Hermitian matrix k (rho_A (x) I) - rho - k (I (x) V) rho^G (I (x) V)*
/// whose positive semidefiniteness is necessary for Schmidt number <= k.
inline SchmidtCriterion kbre_matrix(const Matrix& rho, int k,
                                    const std::optional<Matrix>& V =
                                        std::nullopt) {
  const int d = detail::bipartite_side(rho, "kbre_matrix");
  if (k < 1 || k > d) {
    throw BadDimension("kbre_matrix: k must satisfy 1 <= k <= d, got " +
                       std::to_string(k));
  }
  detail::require_hermitian(rho, "kbre_matrix");
  Matrix V_eff = V.has_value() ? *V : omega_matrix(d);
  detail::check_skew_unitary(V_eff, 1e-10);
  if (V_eff.rows() != d) {
    throw ShapeMismatch("kbre_matrix: V must be d x d");
  }
  const Matrix rho_a = partial_trace_second(rho);
  const Matrix id_v = detail::kron(Matrix::Identity(d, d), V_eff);
  const double kk = static_cast<double>(k);
  SchmidtCriterion out;
  out.matrix = kk * detail::kron(rho_a, Matrix::Identity(d, d)) - rho -
               kk * (id_v * partial_transpose(rho) * id_v.adjoint());
  const auto eigenvalues =
      detail::hermitian_eigenvalues(out.matrix, "kbre_matrix");
  out.min_eigenvalue = eigenvalues(0);
  return out;
}

/// A unitary U with U^T V U equal to the standard block form, built by
/// greedy antiunitary pairing: each chosen unit vector u gets the partner
/// -conj(V u), which is the Riesz vector of y -> u^T V y; the pair spans an
/// invariant plane, so deflation preserves both orthonormality and the
/// symplectic Gram structure exactly.
inline Matrix congruence_to_omega(const Matrix& V) {
  detail::check_skew_unitary(V, 1e-10);
  const auto d = V.rows();
  const auto h = d / 2;
  Matrix U(d, d);
  std::vector<Vector> chosen;
  chosen.reserve(static_cast<std::size_t>(d));
  for (Eigen::Index step = 0; step < h; ++step) {
    // Seed with the standard basis vector farthest from the chosen span.
    Vector u;
    double best_norm = -1.0;
    for (Eigen::Index j = 0; j < d; ++j) {
      Vector candidate = Vector::Zero(d);
      candidate(j) = Complex(1, 0);
      for (const auto& c : chosen) {
        candidate -= (c.adjoint() * candidate)(0, 0) * c;
      }
      const double norm = candidate.norm();
      if (norm > best_norm) {
        best_norm = norm;
        u = candidate;
      }
    }
    u /= u.norm();
    Vector w = -(V * u).conjugate();
    // Re-orthogonalize for float hygiene; exact arithmetic needs neither.
    for (const auto& c : chosen) {
      w -= (c.adjoint() * w)(0, 0) * c;
    }
    w -= (u.adjoint() * w)(0, 0) * u;
    w /= w.norm();
    U.col(step) = u;
    U.col(h + step) = w;
    chosen.push_back(u);
    chosen.push_back(w);
  }
  const double residual = (U.transpose() * V * U -
                           omega_matrix(static_cast<int>(d))).norm();
  if (residual > 1e-10) {
    throw NotSkewUnitary("congruence_to_omega: residual " +
                         std::to_string(residual) + " exceeds tolerance");
  }
  return U;
}

}  // namespace sympent::operators
