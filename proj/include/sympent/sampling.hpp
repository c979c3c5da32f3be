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

#include <cmath>
#include <cstdint>

#include "sympent/errors.hpp"
#include "sympent/operators.hpp"

namespace sympent::sampling {

using operators::Complex;
using operators::Matrix;
using operators::Vector;

/// Reproducibility contract. All samplers derive their randomness from the
/// SplitMix64 counter generator below, consume uniforms through the fixed
/// recipes in this header, and are pure functions of (parameters, seed):
///   - uniform in (0, 1]: ((next() >> 11) + 1) * 2^-53
///   - uniform in [0, 1): (next() >> 11) * 2^-53
///   - one complex standard normal entry consumes exactly two uniforms
///     u1 in (0,1], u2 in [0,1) via Box-Muller: with r = sqrt(-2 ln u1) and
///     t = 2 pi u2, the entry is (r cos t) + i (r sin t)
///   - matrices fill row-major
/// Independent streams come from mix_seed(seed, task_index).
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    state_ += 0x9E3779B97F4A7C15ull;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  double uniform_half_open() {  // [0, 1)
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
  }

  double uniform_positive() {  // (0, 1]
    return static_cast<double>((next() >> 11) + 1) * 0x1.0p-53;
  }

  Complex standard_normal_complex() {
    const double u1 = uniform_positive();
    const double u2 = uniform_half_open();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double t = 2.0 * M_PI * u2;
    return Complex(r * std::cos(t), r * std::sin(t));
  }

 private:
  std::uint64_t state_;
};

/// Derived seed for task number `task` of a run seeded with `seed`.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t task) {
  return SplitMix64(seed + (task + 1) * 0x9E3779B97F4A7C15ull).next();
}

/// An orthonormal k-frame in dimension d, stored as the d x k column matrix.
struct Frame {
  int d = 0;
  int k = 0;
  Matrix columns;
};

namespace detail {

inline Matrix ginibre(Eigen::Index rows, Eigen::Index cols,
                      SplitMix64& rng) {
  Matrix out(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index j = 0; j < cols; ++j) {
      out(i, j) = rng.standard_normal_complex();
    }
  }
  return out;
}

/// Two-pass modified Gram-Schmidt step: orthogonalize `v` against the first
/// `count` columns of `basis`.
inline void orthogonalize(Vector& v, const Matrix& basis,
                          Eigen::Index count) {
  for (int pass = 0; pass < 2; ++pass) {
    for (Eigen::Index c = 0; c < count; ++c) {
      v -= (basis.col(c).adjoint() * v)(0, 0) * basis.col(c);
    }
  }
}

}  // namespace detail

/// Haar-distributed unitary: Gram-Schmidt of a complex Ginibre matrix. The
/// positive normalization constants make the implicit R factor positive
/// diagonal, which is exactly the Haar-correcting phase convention.
inline Matrix haar_unitary(int d, std::uint64_t seed) {
  if (d < 1) {
    throw BadDimension("haar_unitary: d must be positive");
  }
  SplitMix64 rng(seed);
  const Matrix g = detail::ginibre(d, d, rng);
  Matrix q(d, d);
  for (Eigen::Index j = 0; j < d; ++j) {
    Vector v = g.col(j);
    detail::orthogonalize(v, q, j);
    q.col(j) = v / v.norm();
  }
  return q;
}

/// Haar-distributed unitary symplectic matrix via quaternionic Ginibre.
/// Columns are produced in pairs (u, -omega conj(u)); the antiunitary
/// partner rule keeps the symplectic Gram matrix exactly in block form, so
/// group membership holds to rounding error by construction.
inline Matrix haar_symplectic(int d, std::uint64_t seed) {
  if (d < 2 || d % 2 != 0) {
    throw BadDimension("haar_symplectic: d must be even and >= 2");
  }
  const Eigen::Index h = d / 2;
  SplitMix64 rng(seed);
  const Matrix a = detail::ginibre(h, h, rng);
  const Matrix b = detail::ginibre(h, h, rng);
  Matrix seed_cols(d, h);
  seed_cols.topRows(h) = a;
  seed_cols.bottomRows(h) = -b.conjugate();

  const Matrix omega = operators::omega_matrix(d);
  Matrix s(d, d);
  Matrix chosen(d, d);
  for (Eigen::Index j = 0; j < h; ++j) {
    Vector u = seed_cols.col(j);
    detail::orthogonalize(u, chosen, 2 * j);
    u /= u.norm();
    const Vector w = -(omega * u.conjugate());
    s.col(j) = u;
    s.col(h + j) = w;
    chosen.col(2 * j) = u;
    chosen.col(2 * j + 1) = w;
  }
  return s;
}

/// A random skew-symmetric unitary, congruent to the standard block form by
/// construction: U omega U^T for a Haar unitary U.
inline Matrix random_skew_unitary(int d, std::uint64_t seed) {
  if (d < 2 || d % 2 != 0) {
    throw BadDimension("random_skew_unitary: d must be even and >= 2");
  }
  const Matrix u = haar_unitary(d, seed);
  const Matrix omega = operators::omega_matrix(d);
  return u * omega * u.transpose();
}

/// Haar-distributed orthonormal k-frame: the first k columns of a Haar
/// unitary.
inline Frame random_frame(int d, int k, std::uint64_t seed) {
  if (d < 1 || k < 1 || k > d) {
    throw BadDimension("random_frame: need 1 <= k <= d");
  }
  Frame out;
  out.d = d;
  out.k = k;
  out.columns = haar_unitary(d, seed).leftCols(k);
  return out;
}

/// The pairing matrix B with entries <v_i| omega conj(v_j)>. It is always
/// skew-symmetric for orthonormal frames.
inline Matrix frame_pairing_matrix(const Frame& frame) {
  const Matrix omega = operators::omega_matrix(frame.d);
  return frame.columns.adjoint() * omega * frame.columns.conjugate();
}

/// Squared Frobenius norm of the pairing matrix.
inline double pairing_sum(const Frame& frame) {
  return frame_pairing_matrix(frame).squaredNorm();
}

struct ExtremalFrames {
  Frame max_frame;  ///< attains pairing sum 2 floor(k/2)
  Frame min_frame;  ///< attains pairing sum max(2k - d, 0)
};

/// Standard-basis frames attaining the extreme values of the pairing sum:
/// the maximizer interleaves |j> with its block partner |j + d/2>, the
/// minimizer is the basis prefix.
inline ExtremalFrames extremal_frames(int d, int k) {
  operators::detail::require_even_dimension(d);
  if (k < 1 || k > d) {
    throw BadDimension("extremal_frames: need 1 <= k <= d");
  }
  const int h = d / 2;
  ExtremalFrames out;
  out.max_frame.d = d;
  out.max_frame.k = k;
  out.max_frame.columns = Matrix::Zero(d, k);
  for (int c = 0; c < k; ++c) {
    const int basis_index = (c % 2 == 0) ? c / 2 : (c - 1) / 2 + h;
    out.max_frame.columns(basis_index, c) = Complex(1, 0);
  }
  out.min_frame.d = d;
  out.min_frame.k = k;
  out.min_frame.columns = Matrix::Zero(d, k);
  for (int c = 0; c < k; ++c) {
    out.min_frame.columns(c, c) = Complex(1, 0);
  }
  return out;
}

}  // namespace sympent::sampling
