#include <doctest.h>

#include <array>
#include <cmath>
#include <random>
#include <vector>

#include "unmix/errors.hpp"
#include "unmix/kernels.hpp"
#include "unmix/linalg.hpp"

using namespace unmix;

namespace {

Matrix random_matrix(std::size_t rows, std::size_t cols, std::uint32_t seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  Matrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = dist(rng);
  return m;
}

Matrix random_symmetric(std::size_t n, std::uint32_t seed) {
  const Matrix b = random_matrix(n, n, seed);
  Matrix s(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) s(i, j) = 0.5 * (b(i, j) + b(j, i));
  return s;
}

double orthonormality_error(const Matrix& m) {
  double err = 0.0;
  for (std::size_t a = 0; a < m.cols(); ++a)
    for (std::size_t b = 0; b < m.cols(); ++b) {
      double dot = 0.0;
      for (std::size_t i = 0; i < m.rows(); ++i) dot += m(i, a) * m(i, b);
      err = std::max(err, std::abs(dot - (a == b ? 1.0 : 0.0)));
    }
  return err;
}

}  // namespace

TEST_CASE("symmetric_evd on a diagonal matrix") {
  const linalg::Evd evd = linalg::symmetric_evd(Matrix{{4.0, 0.0}, {0.0, 1.0}});
  CHECK(evd.eigenvalues == std::vector<double>{4.0, 1.0});
  CHECK(evd.eigenvectors == Matrix::identity(2));
}

TEST_CASE("symmetric_evd reconstructs random symmetric matrices") {
  for (std::uint32_t seed : {7u, 8u, 9u}) {
    const Matrix a = random_symmetric(6, seed);
    const linalg::Evd evd = linalg::symmetric_evd(a);

    CHECK(orthonormality_error(evd.eigenvectors) <= 1e-12);
    for (std::size_t i = 0; i + 1 < 6; ++i)
      CHECK(evd.eigenvalues[i] >= evd.eigenvalues[i + 1]);

    double err = 0.0;
    for (std::size_t i = 0; i < 6; ++i)
      for (std::size_t j = 0; j < 6; ++j) {
        double s = 0.0;
        for (std::size_t k = 0; k < 6; ++k)
          s += evd.eigenvectors(i, k) * evd.eigenvalues[k] * evd.eigenvectors(j, k);
        err = std::max(err, std::abs(s - a(i, j)));
      }
    CHECK(err <= 1e-10 * a.frobenius_norm());
  }
}

TEST_CASE("symmetric_evd is deterministic") {
  const Matrix a = random_symmetric(5, 77);
  const linalg::Evd e1 = linalg::symmetric_evd(a);
  const linalg::Evd e2 = linalg::symmetric_evd(a);
  CHECK(e1.eigenvectors == e2.eigenvectors);
  CHECK(e1.eigenvalues == e2.eigenvalues);
}

TEST_CASE("svd of a diagonal matrix") {
  const linalg::Svd dec = linalg::svd(Matrix{{3.0, 0.0}, {0.0, 1.0}});
  CHECK(dec.singular_values == std::vector<double>{3.0, 1.0});
  CHECK(dec.u == Matrix::identity(2));
}

TEST_CASE("svd reconstructs random matrices") {
  const std::vector<std::array<std::size_t, 3>> shapes = {{5, 3, 17}, {4, 4, 18}, {6, 2, 19}};
  for (const auto& [rows, cols, seed] : shapes) {
    const Matrix a = random_matrix(rows, cols, seed);
    const linalg::Svd dec = linalg::svd(a);

    CHECK(orthonormality_error(dec.u) <= 1e-12);
    CHECK(orthonormality_error(dec.v) <= 1e-12);
    for (std::size_t i = 0; i + 1 < dec.singular_values.size(); ++i) {
      CHECK(dec.singular_values[i] >= dec.singular_values[i + 1]);
      CHECK(dec.singular_values[i + 1] >= 0.0);
    }

    double err = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i)
      for (std::size_t j = 0; j < a.cols(); ++j) {
        double s = 0.0;
        for (std::size_t k = 0; k < a.cols(); ++k)
          s += dec.u(i, k) * dec.singular_values[k] * dec.v(j, k);
        err = std::max(err, std::abs(s - a(i, j)));
      }
    CHECK(err <= 1e-10 * std::max(1.0, a.frobenius_norm()));
  }
}

TEST_CASE("svd handles rank-deficient input") {
  // Second column is a multiple of the first.
  Matrix a{{1.0, 2.0}, {2.0, 4.0}, {-1.0, -2.0}};
  const linalg::Svd dec = linalg::svd(a);
  CHECK(dec.singular_values[1] <= 1e-12 * dec.singular_values[0]);
  CHECK(orthonormality_error(dec.u) <= 1e-12);
}

TEST_CASE("pseudo_inverse inverts full-column-rank matrices") {
  const Matrix a = random_matrix(6, 3, 23);
  const Matrix pinv = linalg::pseudo_inverse(a);
  const Matrix prod = kernels::matmul(pinv, a);
  double err = 0.0;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      err = std::max(err, std::abs(prod(i, j) - (i == j ? 1.0 : 0.0)));
  CHECK(err <= 1e-10);

  const Matrix wide = random_matrix(3, 6, 24);
  const Matrix prod2 = kernels::matmul(wide, linalg::pseudo_inverse(wide));
  double err2 = 0.0;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      err2 = std::max(err2, std::abs(prod2(i, j) - (i == j ? 1.0 : 0.0)));
  CHECK(err2 <= 1e-10);
}

TEST_CASE("pseudo_inverse rejects rank-deficient input") {
  Matrix a{{1.0, 2.0}, {2.0, 4.0}, {-1.0, -2.0}};
  CHECK_THROWS_AS(linalg::pseudo_inverse(a), SingularityError);
}
