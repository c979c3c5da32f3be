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

#include <algorithm>
#include <random>
#include <sstream>
#include <vector>

#include "sympent/matrix_io.hpp"
#include "sympent/operators.hpp"
#include "sympent/regions.hpp"

namespace ops = sympent::operators;
namespace reg = sympent::regions;
using ops::Complex;
using ops::Matrix;
using ops::Vector;
using sympent::Rational;
using sympent::RationalPoint2;

namespace {

Matrix random_complex(Eigen::Index rows, Eigen::Index cols,
                      std::mt19937& gen) {
  std::normal_distribution<double> dist(0.0, 1.0);
  Matrix out(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index j = 0; j < cols; ++j) {
      out(i, j) = Complex(dist(gen), dist(gen));
    }
  }
  return out;
}

Matrix random_density(Eigen::Index n, std::mt19937& gen) {
  const Matrix a = random_complex(n, n, gen);
  const Matrix g = a * a.adjoint();
  return g / g.trace();
}

Matrix random_unitary(Eigen::Index n, std::mt19937& gen) {
  const Matrix a = random_complex(n, n, gen);
  Eigen::HouseholderQR<Matrix> qr(a);
  return qr.householderQ();
}

/// Apply the map to the second tensor factor, block by block.
Matrix apply_to_second(const ops::MapParams& params, const Matrix& X,
                       int d) {
  Matrix out(X.rows(), X.cols());
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      out.block(i * d, j * d, d, d) =
          ops::apply_map(params, X.block(i * d, j * d, d, d));
    }
  }
  return out;
}

double min_hermitian_eigenvalue(const Matrix& X) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver((X + X.adjoint()) / 2.0,
                                               Eigen::EigenvaluesOnly);
  return solver.eigenvalues()(0);
}

}  // namespace

TEST_CASE("canonical matrices") {
  for (int d : {4, 6}) {
    const auto canon = ops::canonical_matrices(d);
    const Matrix identity_d = Matrix::Identity(d, d);
    CHECK((canon.omega * canon.omega + identity_d).norm() < 1e-14);
    CHECK((canon.omega.transpose() + canon.omega).norm() < 1e-14);
    CHECK((canon.omega.adjoint() * canon.omega - identity_d).norm() < 1e-14);

    CHECK(std::abs(canon.max_ent.norm() - 1.0) < 1e-14);
    CHECK(std::abs((canon.max_ent.adjoint() * canon.max_ent_omega)(0, 0)) <
          1e-14);

    const Matrix identity_dd = Matrix::Identity(d * d, d * d);
    CHECK((canon.flip * canon.flip - identity_dd).norm() < 1e-13);
    CHECK((canon.flip_omega * canon.flip_omega - identity_dd).norm() <
          1e-13);
    CHECK((canon.flip_omega - canon.flip_omega.adjoint()).norm() < 1e-13);

    std::mt19937 gen(7u);
    const Matrix x = random_complex(d, 1, gen);
    const Matrix y = random_complex(d, 1, gen);
    Vector xy(d * d), yx(d * d);
    for (int i = 0; i < d; ++i) {
      for (int j = 0; j < d; ++j) {
        xy(i * d + j) = x(i, 0) * y(j, 0);
        yx(i * d + j) = y(i, 0) * x(j, 0);
      }
    }
    CHECK((canon.flip * xy - yx).norm() < 1e-13);
  }

  // Column action of the block form in dimension four.
  const auto canon4 = ops::canonical_matrices(4);
  Vector e0 = Vector::Zero(4);
  e0(0) = Complex(1, 0);
  Vector expected = Vector::Zero(4);
  expected(2) = Complex(-1, 0);
  CHECK((canon4.omega * e0 - expected).norm() == 0.0);

  CHECK_THROWS_AS(ops::canonical_matrices(5), sympent::BadDimension);
  CHECK_THROWS_AS(ops::canonical_matrices(2), sympent::BadDimension);
}

TEST_CASE("minimal projections") {
  for (int d : {4, 6}) {
    for (auto family : {ops::Family::SSbar, ops::Family::SS}) {
      const auto projs = ops::projections(d, family);
      const double dd = d;
      const std::vector<double> expected_ranks = {
          1.0, (dd * dd + dd) / 2.0, (dd * dd - dd - 2.0) / 2.0};
      Matrix sum = Matrix::Zero(d * d, d * d);
      for (std::size_t i = 0; i < projs.size(); ++i) {
        CHECK((projs[i] - projs[i].adjoint()).norm() < 1e-12);
        CHECK((projs[i] * projs[i] - projs[i]).norm() < 1e-12);
        CHECK(std::abs(projs[i].trace().real() - expected_ranks[i]) < 1e-10);
        for (std::size_t j = i + 1; j < projs.size(); ++j) {
          CHECK((projs[i] * projs[j]).norm() < 1e-12);
        }
        sum += projs[i];
      }
      CHECK((sum - Matrix::Identity(d * d, d * d)).norm() < 1e-12);
    }
  }
}

TEST_CASE("covariant map application") {
  std::mt19937 gen(11u);
  for (int d : {4, 6}) {
    const Matrix Z = random_complex(d, d, gen);
    const Matrix identity = Matrix::Identity(d, d);

    CHECK((ops::apply_map({1.0, 0.0, {}}, Z) - Z).norm() < 1e-13);
    CHECK((ops::apply_map({0.0, 0.0, {}}, Z) -
           Z.trace() / static_cast<double>(d) * identity).norm() < 1e-13);

    // The reflection-symmetric positive map in closed form.
    const double bh = -1.0 / (d - 2.0);
    const Matrix omega = ops::omega_matrix(d);
    const Matrix expected =
        (Z.trace() * identity - Z - omega * Z.transpose() * omega.adjoint())
        / (d - 2.0);
    CHECK((ops::apply_map({bh, bh, {}}, Z) - expected).norm() < 1e-13);

    // Linearity and trace preservation.
    const Matrix W = random_complex(d, d, gen);
    const ops::MapParams params{0.37, -0.21, {}};
    CHECK((ops::apply_map(params, Z + 2.0 * W) -
           ops::apply_map(params, Z) - 2.0 * ops::apply_map(params, W))
              .norm() < 1e-12);
    CHECK(std::abs(ops::apply_map(params, Z).trace() - Z.trace()) < 1e-12);

    // Transposing the output swaps the parameter roles up to conjugation
    // by omega.
    const ops::MapParams swapped{-0.21, 0.37, {}};
    CHECK((ops::apply_map(params, Z).transpose() -
           omega * ops::apply_map(swapped, Z) * omega.adjoint()).norm() <
          1e-12);
  }

  CHECK_THROWS_AS(ops::apply_map({1.0, 0.0, {}}, Matrix::Zero(4, 5)),
                  sympent::ShapeMismatch);
  CHECK_THROWS_AS(
      ops::apply_map({1.0, 0.0, ops::omega_matrix(6)}, Matrix::Zero(4, 4)),
      sympent::ShapeMismatch);
}

TEST_CASE("state construction agrees with the Choi matrix") {
  for (int d : {4, 6}) {
    for (auto [a, b] : std::vector<std::pair<double, double>>{
             {0.0, 0.0},
             {1.0 / 6.0, 1.0 / 6.0},
             {-1.0 / (d - 2.0), -1.0 / (d - 2.0)},
             {0.3, -0.1}}) {
      const Matrix rho = ops::rho_state(d, a, b);
      const Matrix choi = ops::choi_of_map(d, {a, b, {}});
      CHECK((rho - choi).norm() < 1e-14);
      CHECK((rho - rho.adjoint()).norm() < 1e-14);
      CHECK(std::abs(rho.trace() - Complex(1, 0)) < 1e-13);
    }
    const Matrix mixed = ops::rho_state(d, 0.0, 0.0);
    CHECK((mixed - Matrix::Identity(d * d, d * d) /
                       static_cast<double>(d * d)).norm() < 1e-15);
  }

  // Positivity of the constructed matrix matches the exact region test on
  // a 21 x 21 parameter grid.
  const reg::Dimension dim4(4);
  for (int i = -10; i <= 10; ++i) {
    for (int j = -10; j <= 10; ++j) {
      const RationalPoint2 pt{Rational(i, 10), Rational(j, 10)};
      const Matrix rho = ops::rho_state(4, static_cast<double>(i) / 10.0,
                                        static_cast<double>(j) / 10.0);
      const bool psd = min_hermitian_eigenvalue(rho) >= -1e-12;
      CHECK(psd == reg::in_P_k(dim4, 4, pt));
    }
  }
}

TEST_CASE("closed-form spectrum") {
  const auto triple = ops::spectrum_rho(4, 1.0 / 6.0, 1.0 / 6.0);
  CHECK(triple.lambda1 == Catch::Approx(1.0 / 6.0).margin(1e-15));
  CHECK(triple.lambda2 == Catch::Approx(1.0 / 12.0).margin(1e-15));
  CHECK(triple.lambda3 == Catch::Approx(0.0).margin(1e-15));
  CHECK(triple.m1 == 1);
  CHECK(triple.m2 == 10);
  CHECK(triple.m3 == 5);

  const auto mixed = ops::spectrum_rho(6, 0.0, 0.0);
  CHECK(mixed.lambda1 == Catch::Approx(1.0 / 36.0));
  CHECK(mixed.lambda2 == Catch::Approx(1.0 / 36.0));
  CHECK(mixed.lambda3 == Catch::Approx(1.0 / 36.0));

  std::mt19937 gen(13u);
  std::uniform_real_distribution<double> dist(-0.8, 0.8);
  for (int trial = 0; trial < 50; ++trial) {
    const double a = dist(gen), b = dist(gen);
    const auto t = ops::spectrum_rho(4, a, b);
    CHECK(std::abs(t.lambda1 + 10 * t.lambda2 + 5 * t.lambda3 - 1.0) <
          1e-12);
  }

  // Dense eigensolver oracle on a parameter grid, compared with
  // multiplicity.
  for (int d : {4, 6}) {
    for (int i = 0; i < 9; ++i) {
      for (int j = 0; j < 9; ++j) {
        const double a = -0.4 + 0.1 * i;
        const double b = -0.4 + 0.1 * j;
        const auto t = ops::spectrum_rho(d, a, b);
        std::vector<double> expected;
        expected.insert(expected.end(), static_cast<std::size_t>(t.m1),
                        t.lambda1);
        expected.insert(expected.end(), static_cast<std::size_t>(t.m2),
                        t.lambda2);
        expected.insert(expected.end(), static_cast<std::size_t>(t.m3),
                        t.lambda3);
        std::sort(expected.begin(), expected.end());
        Eigen::SelfAdjointEigenSolver<Matrix> solver(
            ops::rho_state(d, a, b), Eigen::EigenvaluesOnly);
        for (std::size_t l = 0; l < expected.size(); ++l) {
          CHECK(std::abs(solver.eigenvalues()(
                    static_cast<Eigen::Index>(l)) - expected[l]) < 1e-10);
        }
      }
    }
  }
}

TEST_CASE("partial transpose") {
  std::mt19937 gen(17u);
  for (int d : {4, 6}) {
    const auto canon = ops::canonical_matrices(d);
    const Matrix pure = canon.max_ent * canon.max_ent.adjoint();
    CHECK((ops::partial_transpose(pure) -
           canon.flip / static_cast<double>(d)).norm() < 1e-14);

    const Matrix X = random_complex(d * d, d * d, gen);
    CHECK((ops::partial_transpose(ops::partial_transpose(X)) - X).norm() ==
          0.0);

    const Matrix id_omega =
        ops::detail::kron(Matrix::Identity(d, d), canon.omega);
    for (auto [a, b] : std::vector<std::pair<double, double>>{
             {0.2, 0.05}, {-0.3, 0.1}}) {
      const Matrix lhs = ops::partial_transpose(ops::rho_state(d, a, b));
      const Matrix rhs =
          id_omega * ops::rho_state(d, b, a) * id_omega.adjoint();
      CHECK((lhs - rhs).norm() < 1e-14);
    }
  }
  CHECK_THROWS_AS(ops::partial_transpose(Matrix::Zero(4, 5)),
                  sympent::ShapeMismatch);
  CHECK_THROWS_AS(ops::partial_transpose(Matrix::Zero(5, 5)),
                  sympent::ShapeMismatch);
}

TEST_CASE("partial trace over the second factor") {
  std::mt19937 gen(19u);
  const int d = 4;
  const Matrix X = random_complex(d, d, gen);
  const Matrix Y = random_complex(d, d, gen);
  const Matrix XY = ops::detail::kron(X, Y);
  CHECK((ops::partial_trace_second(XY) - X * Y.trace()).norm() < 1e-12);
  const Matrix Z = random_complex(d * d, d * d, gen);
  CHECK(std::abs(ops::partial_trace_second(Z).trace() - Z.trace()) < 1e-12);
}

TEST_CASE("parameter composition") {
  const RationalPoint2 depol{0, 0};
  const RationalPoint2 ident{1, 0};
  const RationalPoint2 sym{Rational(1, 6), Rational(1, 6)};
  CHECK(ops::compose_params(ident, sym) == sym);
  CHECK(ops::compose_params(sym, depol) == depol);
  const auto square = ops::compose_params(sym, sym);
  CHECK(square == (RationalPoint2{Rational(1, 18), Rational(1, 18)}));
  CHECK(reg::in_S_k(reg::Dimension(4), 1, square));

  std::mt19937 gen(23u);
  const Matrix Z = random_complex(4, 4, gen);
  const ops::MapParams outer{0.4, -0.15, {}};
  const ops::MapParams inner{-0.2, 0.3, {}};
  const auto composed = ops::compose_params(
      {sympent::rational_from_double(outer.p),
       sympent::rational_from_double(outer.q)},
      {sympent::rational_from_double(inner.p),
       sympent::rational_from_double(inner.q)});
  const ops::MapParams total{sympent::to_double(composed.x),
                             sympent::to_double(composed.y),
                             {}};
  CHECK((ops::apply_map(outer, ops::apply_map(inner, Z)) -
         ops::apply_map(total, Z)).norm() < 1e-12);
}

TEST_CASE("parameter extraction") {
  for (int d : {4, 6}) {
    const double dd = d;
    // Closed-form statistics of the constructed states as an oracle.
    const double a = 0.21, b = -0.07;
    const Matrix rho = ops::rho_state(d, a, b);
    const auto canon = ops::canonical_matrices(d);
    const double t = (canon.flip_omega * rho).trace().real();
    const double w =
        (canon.max_ent.adjoint() * rho * canon.max_ent)(0, 0).real();
    CHECK(t == Catch::Approx((1 - a - b) / dd - a + b * dd).margin(1e-12));
    CHECK(w == Catch::Approx((1 - a - b) / (dd * dd) + a - b / dd)
                   .margin(1e-14));

    std::mt19937 gen(29u + static_cast<unsigned>(d));
    std::uniform_int_distribution<int> weight(0, 100);
    const double d2 = dd * dd - dd - 2.0;
    for (int trial = 0; trial < 100; ++trial) {
      const int u = weight(gen), v = weight(gen), s = weight(gen);
      if (u + v + s == 0) continue;
      const double total = u + v + s;
      const double ax = (u * 1.0 + v * 0.0 + s * (-2.0 / d2)) / total;
      const double bx =
          (u * 0.0 + v / (dd + 1.0) + s * (-dd / d2)) / total;
      const auto [ar, br] = ops::state_params_of(ops::rho_state(d, ax, bx));
      CHECK(ar == Catch::Approx(ax).margin(1e-12));
      CHECK(br == Catch::Approx(bx).margin(1e-12));
    }

    const auto [a0, b0] = ops::state_params_of(
        Matrix::Identity(d * d, d * d) / (dd * dd));
    CHECK(a0 == Catch::Approx(0.0).margin(1e-13));
    CHECK(b0 == Catch::Approx(0.0).margin(1e-13));

    const auto [a1, b1] = ops::state_params_of(
        canon.max_ent * canon.max_ent.adjoint());
    CHECK(a1 == Catch::Approx(1.0).margin(1e-12));
    CHECK(b1 == Catch::Approx(0.0).margin(1e-12));
  }

  CHECK_THROWS_AS(
      ops::state_params_of(Matrix::Identity(16, 16)),
      sympent::NotUnitTrace);
}

TEST_CASE("analytic twirl") {
  std::mt19937 gen(31u);
  for (int d : {4, 6}) {
    const Matrix rho = ops::rho_state(d, 0.18, -0.05);
    CHECK((ops::twirl_analytic(rho, ops::Family::SSbar) - rho).norm() <
          1e-12);

    // The partial transpose of an invariant state is fixed by the other
    // family's twirl.
    const Matrix gamma = ops::partial_transpose(rho);
    CHECK((ops::twirl_analytic(gamma, ops::Family::SS) - gamma).norm() <
          1e-12);

    const Matrix mixed =
        Matrix::Identity(d * d, d * d) / static_cast<double>(d * d);
    CHECK((ops::twirl_analytic(mixed, ops::Family::SSbar) - mixed).norm() <
          1e-13);

    const Matrix arbitrary = random_density(d * d, gen);
    const Matrix twirled = ops::twirl_analytic(arbitrary, ops::Family::SSbar);
    CHECK(std::abs(twirled.trace() - arbitrary.trace()) < 1e-12);
    CHECK((ops::twirl_analytic(twirled, ops::Family::SSbar) - twirled)
              .norm() < 1e-12);

    // The twirl of any unit-trace input is the two-parameter state with the
    // extracted parameters.
    const auto [a, b] = ops::state_params_of(arbitrary);
    CHECK((twirled - ops::rho_state(d, a, b)).norm() < 1e-12);
  }
}

TEST_CASE("Schmidt number criterion matrix") {
  // The PPT state whose partial transpose parameters sit at the symmetric
  // vertex violates the criterion one step below half dimension.
  const int d6 = 6;
  const Matrix pv = ops::rho_state(d6, 1.0 / (d6 + 2.0), 1.0 / (d6 + 2.0));
  const auto crit2 = ops::kbre_matrix(pv, d6 / 2 - 1);
  CHECK(crit2.min_eigenvalue < -1e-6);

  // At k = d the criterion is trivially satisfied.
  std::mt19937 gen(37u);
  const Matrix arbitrary = random_density(16, gen);
  CHECK(ops::kbre_matrix(arbitrary, 4).min_eigenvalue > -1e-12);
  CHECK(ops::kbre_matrix(pv, 6).min_eigenvalue > -1e-12);

  // A product state passes at k = 1.
  Vector prod = Vector::Zero(16);
  prod(0) = Complex(1, 0);
  const Matrix prod_rho = prod * prod.adjoint();
  CHECK(ops::kbre_matrix(prod_rho, 1).min_eigenvalue > -1e-12);

  // Cross-oracle: the criterion matrix is a positive multiple of the
  // one-sided application of the k-parameter witness map.
  for (int k : {1, 2}) {
    const Matrix rho = random_density(16, gen);
    const double denom = k * 4 - k - 1;
    const ops::MapParams witness{-1.0 / denom, -k / denom, {}};
    const Matrix expected = denom * apply_to_second(witness, rho, 4);
    CHECK((ops::kbre_matrix(rho, k).matrix - expected).norm() < 1e-12);
  }

  CHECK_THROWS_AS(ops::kbre_matrix(arbitrary, 0), sympent::BadDimension);
  CHECK_THROWS_AS(ops::kbre_matrix(Matrix::Identity(16, 16) * Complex(0, 1),
                                   1),
                  sympent::Error);
}

TEST_CASE("congruence to the standard block form") {
  const Matrix omega4 = ops::omega_matrix(4);
  const Matrix u_omega = ops::congruence_to_omega(omega4);
  CHECK((u_omega.transpose() * omega4 * u_omega - omega4).norm() < 1e-12);

  // An adversarial block matrix with complex entries: the symplectic
  // pairing of naive candidate partners vanishes here.
  Matrix adversarial = Matrix::Zero(4, 4);
  adversarial(0, 2) = Complex(1, 0);
  adversarial(1, 3) = Complex(0, 1);
  adversarial(2, 0) = Complex(-1, 0);
  adversarial(3, 1) = Complex(0, -1);
  const Matrix u_adv = ops::congruence_to_omega(adversarial);
  CHECK((u_adv.transpose() * adversarial * u_adv - omega4).norm() < 1e-10);
  CHECK((u_adv.adjoint() * u_adv - Matrix::Identity(4, 4)).norm() < 1e-12);

  std::mt19937 gen(41u);
  for (int d : {4, 6}) {
    const Matrix omega = ops::omega_matrix(d);
    const Matrix q = random_unitary(d, gen);
    const Matrix v = q * omega * q.transpose();
    const Matrix u = ops::congruence_to_omega(v);
    CHECK((u.transpose() * v * u - omega).norm() < 1e-10);
    CHECK((u.adjoint() * u - Matrix::Identity(d, d)).norm() < 1e-12);

    // Transporting the general-V map by the conjugate congruence recovers
    // the standard-form map.
    const Matrix w = u.conjugate();
    const Matrix Z = random_complex(d, d, gen);
    const ops::MapParams with_v{0.35, -0.4, v};
    const ops::MapParams standard{0.35, -0.4, {}};
    const Matrix transported =
        w.adjoint() * ops::apply_map(with_v, w * Z * w.adjoint()) * w;
    CHECK((transported - ops::apply_map(standard, Z)).norm() < 1e-10);

    // Parameter extraction with a general V round-trips as well.
    const auto [av, bv] =
        ops::state_params_of(ops::rho_state(d, 0.15, 0.04, v), v);
    CHECK(av == Catch::Approx(0.15).margin(1e-11));
    CHECK(bv == Catch::Approx(0.04).margin(1e-11));
  }

  CHECK_THROWS_AS(ops::congruence_to_omega(Matrix::Identity(4, 4)),
                  sympent::NotSkewUnitary);
  CHECK_THROWS_AS(ops::congruence_to_omega(Matrix::Zero(5, 5)),
                  sympent::NotSkewUnitary);
}

TEST_CASE("matrix text round-trip") {
  std::mt19937 gen(43u);
  const Matrix m = random_complex(5, 3, gen);
  std::stringstream ss;
  ops::write_matrix(ss, m);
  const Matrix back = ops::read_matrix(ss);
  REQUIRE(back.rows() == 5);
  REQUIRE(back.cols() == 3);
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      const double scale = std::max(1.0, std::abs(m(i, j)));
      CHECK(std::abs(back(i, j) - m(i, j)) <= 1e-15 * scale);
    }
  }

  std::stringstream bad_tag("real-matrix 2 2\n0 0 0 0\n0 0 0 0\n");
  CHECK_THROWS_AS(ops::read_matrix(bad_tag), sympent::Error);
  std::stringstream truncated("complex-matrix 2 2\n1.0 0.0 2.0\n");
  CHECK_THROWS_AS(ops::read_matrix(truncated), sympent::Error);
}
