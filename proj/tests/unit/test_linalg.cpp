#include <doctest.h>

#include <cmath>
#include <limits>

#include "rigidlab/errors.hpp"
#include "rigidlab/graph.hpp"
#include "rigidlab/linalg.hpp"
#include "support/oracles.hpp"

using namespace rigidlab;
using rigidlab::testing::Rng;

namespace {

SymMatrix random_symmetric(Rng& rng, Index n) {
  const Vector raw = testing::gaussian_vector(rng, n * n);
  return SymMatrix(Eigen::Map<const Matrix>(raw.data(), n, n));
}

}  // namespace

TEST_CASE("SymMatrix symmetrizes exactly") {
  Matrix a(2, 2);
  a << 1.0, 0.1, 0.3, 2.0;
  const SymMatrix s(a);
  CHECK(s(0, 1) == s(1, 0));
  CHECK(s(0, 1) == doctest::Approx(0.2));
  CHECK_THROWS_AS(SymMatrix(Matrix(2, 3)), InvalidInput);
  CHECK_THROWS_AS(SymMatrix(Matrix(0, 0)), InvalidInput);
}

TEST_CASE("eigh on small known matrices") {
  Matrix a(2, 2);
  a << 1, -1, -1, 1;
  const Spectrum s = eigh(SymMatrix(a));
  CHECK(std::abs(s.values(0)) < 1e-15);
  CHECK(std::abs(s.values(1) - 2.0) < 1e-15);

  const Spectrum id = eigh(SymMatrix(Matrix::Identity(3, 3)));
  for (Index k = 0; k < 3; ++k) CHECK(id.values(k) == 1.0);

  const Spectrum k4 = eigh(laplacian(generate::complete(4)));
  CHECK(std::abs(k4.values(0)) < 1e-12);
  for (Index k = 1; k < 4; ++k) CHECK(std::abs(k4.values(k) - 4.0) < 1e-12);
}

TEST_CASE("eigh rejects non-finite entries") {
  Matrix a = Matrix::Identity(2, 2);
  a(0, 0) = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(eigh(SymMatrix(a)), InvalidInput);
}

TEST_CASE("eigh reconstruction and orthonormality on random matrices") {
  Rng rng(11);
  for (Index n : {1, 2, 3, 5, 8, 13, 21, 34, 60}) {
    CAPTURE(n);
    const SymMatrix a = random_symmetric(rng, n);
    const Spectrum s = eigh(a);
    const Matrix& v = s.vectors;
    CHECK(max_abs(v.transpose() * v - Matrix::Identity(n, n)) <= 1e-10);
    const Matrix back = v * s.values.asDiagonal() * v.transpose();
    CHECK(max_abs(a.dense() - back) <= 1e-9 * (1.0 + max_abs(a.dense())));
    for (Index k = 1; k < n; ++k) CHECK(s.values(k - 1) <= s.values(k));
    // Independent solver.
    CHECK(max_abs(s.values - testing::eigen_reference_values(a.dense())) <= 1e-9);
  }
}

TEST_CASE("eigh is deterministic and sign-normalized") {
  Rng rng(3);
  const SymMatrix a = random_symmetric(rng, 9);
  const Spectrum s1 = eigh(a);
  const Spectrum s2 = eigh(a);
  CHECK(s1.values == s2.values);
  CHECK(s1.vectors == s2.vectors);
  for (Index k = 0; k < 9; ++k) {
    Index best = 0;
    for (Index i = 1; i < 9; ++i)
      if (std::abs(s1.vectors(i, k)) > std::abs(s1.vectors(best, k))) best = i;
    CHECK(s1.vectors(best, k) > 0.0);
  }
}

TEST_CASE("kron examples") {
  Matrix two(1, 1);
  two << 2.0;
  CHECK(kron(two, Matrix::Identity(2, 2)) == 2.0 * Matrix::Identity(2, 2));

  Matrix b(2, 2);
  b << 1, 2, 3, 4;
  Matrix block_diag = Matrix::Zero(4, 4);
  block_diag.topLeftCorner(2, 2) = b;
  block_diag.bottomRightCorner(2, 2) = b;
  CHECK(kron(Matrix::Identity(2, 2), b) == block_diag);

  // L(K_2) (x) e_1 e_1^T, expanded by hand from the 2x2 factors.
  Matrix lk2(2, 2);
  lk2 << 1, -1, -1, 1;
  Matrix e11 = Matrix::Zero(2, 2);
  e11(0, 0) = 1.0;
  Matrix expected = Matrix::Zero(4, 4);
  expected(0, 0) = 1.0;
  expected(0, 2) = -1.0;
  expected(2, 0) = -1.0;
  expected(2, 2) = 1.0;
  CHECK(kron(lk2, e11) == expected);
}

TEST_CASE("kron eigenvalues are pairwise products") {
  Rng rng(5);
  for (int trial = 0; trial < 10; ++trial) {
    const SymMatrix a = random_symmetric(rng, 3);
    const SymMatrix b = random_symmetric(rng, 4);
    const Vector ea = testing::eigen_reference_values(a.dense());
    const Vector eb = testing::eigen_reference_values(b.dense());
    std::vector<double> products;
    for (Index i = 0; i < ea.size(); ++i)
      for (Index j = 0; j < eb.size(); ++j) products.push_back(ea(i) * eb(j));
    std::sort(products.begin(), products.end());
    const Spectrum s = eigh(SymMatrix(kron(a.dense(), b.dense())));
    for (std::size_t k = 0; k < products.size(); ++k)
      CHECK(std::abs(s.values(static_cast<Index>(k)) - products[k]) < 1e-9);
  }
}

TEST_CASE("orthonormalize drops dependent vectors") {
  const std::vector<Vector> dependent{Vector::Unit(2, 0), 2.0 * Vector::Unit(2, 0)};
  CHECK(orthonormalize(dependent).size() == 1);

  const std::vector<Vector> scaled{Vector::Unit(2, 0), 3.0 * Vector::Unit(2, 1)};
  const auto basis = orthonormalize(scaled);
  REQUIRE(basis.size() == 2);
  CHECK(basis[0] == Vector::Unit(2, 0));
  CHECK(basis[1] == Vector::Unit(2, 1));

  const Vector diag = Vector::Ones(2) / std::sqrt(2.0);
  const auto single = orthonormalize(std::vector<Vector>{diag});
  REQUIRE(single.size() == 1);
  CHECK((single[0] - diag).norm() < 1e-15);

  const auto tracked = orthonormalize_tracked(
      std::vector<Vector>{Vector::Zero(3), Vector::Unit(3, 1), Vector::Unit(3, 1)});
  CHECK(tracked.kept == std::vector<std::size_t>{1});
}

TEST_CASE("orthonormalize output is orthonormal and spans the input") {
  Rng rng(8);
  std::vector<Vector> vs;
  for (int k = 0; k < 4; ++k) vs.push_back(testing::gaussian_vector(rng, 7));
  vs.push_back(vs[0] - 2.0 * vs[2]);
  const auto basis = orthonormalize(vs);
  REQUIRE(basis.size() == 4);
  const Matrix q = as_columns(basis, 7);
  CHECK(max_abs(q.transpose() * q - Matrix::Identity(4, 4)) < 1e-12);
  for (const Vector& v : vs) CHECK(project_out(v, basis).norm() < 1e-12 * (1.0 + v.norm()));
}

TEST_CASE("project_out examples") {
  const std::vector<Vector> e1{Vector::Unit(2, 0)};
  CHECK(project_out(Vector::Ones(2), e1) == Vector::Unit(2, 1));
  CHECK(project_out(Vector::Unit(2, 0), e1).norm() == 0.0);
  const Vector v = Vector::Constant(3, 1.5);
  CHECK(project_out(v, std::vector<Vector>{}) == v);
}

TEST_CASE("min_rayleigh examples") {
  const SymMatrix diag(Vector(Eigen::Vector3d(1, 2, 3)).asDiagonal().toDenseMatrix());
  CHECK(min_rayleigh(diag, std::vector<Vector>{Vector::Unit(3, 0)}) == doctest::Approx(2.0));
  CHECK(min_rayleigh(diag, std::vector<Vector>{}) == doctest::Approx(1.0));

  std::vector<Vector> all{Vector::Unit(3, 0), Vector::Unit(3, 1), Vector::Unit(3, 2)};
  CHECK_THROWS_AS(min_rayleigh(diag, all), InvalidInput);

  // L(K_3) (x) e_1 e_1^T restricted away from X^perp (+) span{t_1}.
  const Index n = 3;
  const Index d = 2;
  Matrix e11 = Matrix::Zero(d, d);
  e11(0, 0) = 1.0;
  const SymMatrix lifted(kron(laplacian(generate::complete(n)).dense(), e11));
  std::vector<Vector> constraints;
  for (Index i = 0; i < n; ++i) constraints.push_back(kron(Vector::Unit(n, i), Vector::Unit(d, 1)));
  constraints.push_back(kron(Vector::Ones(n), Vector::Unit(d, 0)) / std::sqrt(3.0));
  CHECK(std::abs(min_rayleigh(lifted, constraints) - 3.0) < 1e-12);
}

TEST_CASE("min_rayleigh agrees with sampling and with a QR-compressed reference") {
  Rng rng(21);
  for (int trial = 0; trial < 25; ++trial) {
    std::uniform_int_distribution<Index> order(2, 8);
    const Index n = order(rng);
    std::uniform_int_distribution<Index> count(0, n - 1);
    const Index c = count(rng);
    const SymMatrix a = random_symmetric(rng, n);
    std::vector<Vector> raw;
    for (Index k = 0; k < c; ++k) raw.push_back(testing::gaussian_vector(rng, n));
    const std::vector<Vector> basis = orthonormalize(raw);

    const double value = min_rayleigh(a, basis);
    const Matrix cols = as_columns(basis, n);
    const double sampled = testing::sampled_min_rayleigh(rng, a.dense(), cols, 10000);
    CHECK(value <= sampled + 1e-9);

    const Matrix b = testing::qr_complement(cols);
    const double reference =
        testing::eigen_reference_values(b.transpose() * a.dense() * b).minCoeff();
    CHECK(std::abs(value - reference) < 1e-9);
    CHECK(sampled - value < 0.5 * (1.0 + max_abs(a.dense())));
  }
}
