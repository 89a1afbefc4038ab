#include <doctest.h>

#include <random>

#include "unmix/errors.hpp"
#include "unmix/kernels.hpp"
#include "unmix/matrix.hpp"
#include "unmix/reference.hpp"

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

double max_abs_diff(const Matrix& a, const Matrix& b) {
  REQUIRE(a.rows() == b.rows());
  REQUIRE(a.cols() == b.cols());
  double d = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) d = std::max(d, std::abs(a(i, j) - b(i, j)));
  return d;
}

}  // namespace

TEST_CASE("Matrix basics") {
  Matrix m{{1.0, 2.0}, {3.0, 4.0}, {5.0, 6.0}};
  CHECK(m.rows() == 3);
  CHECK(m.cols() == 2);
  CHECK(m(2, 1) == 6.0);
  CHECK(m.transposed()(1, 2) == 6.0);
  CHECK(Matrix::identity(3)(1, 1) == 1.0);
  CHECK(Matrix::identity(3)(0, 1) == 0.0);
  CHECK(m.col_copy(0) == std::vector<double>{1.0, 3.0, 5.0});
  CHECK_THROWS_AS(Matrix({{1.0}, {1.0, 2.0}}), std::invalid_argument);
}

TEST_CASE("matmul matches the serial reference") {
  const Matrix a = random_matrix(5, 3, 11);
  const Matrix b = random_matrix(3, 7, 12);
  CHECK(max_abs_diff(kernels::matmul(a, b), refimpl::matmul(a, b)) <= 1e-12);
  CHECK_THROWS_AS(kernels::matmul(a, random_matrix(4, 2, 13)), DimensionError);
}

TEST_CASE("matmul with identity is the identity") {
  const Matrix x = random_matrix(4, 9, 21);
  CHECK(kernels::matmul(Matrix::identity(4), x) == x);
}

TEST_CASE("gram matches the brute-force covariance oracle") {
  const Matrix d = random_matrix(3, 40, 31);
  const Matrix fast = kernels::gram(d, 1.0 / 40.0);
  const Matrix slow = refimpl::gram(d, 1.0 / 40.0);
  CHECK(max_abs_diff(fast, slow) <= 1e-12);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) CHECK(fast(i, j) == fast(j, i));
}

TEST_CASE("gram of a single alternating row") {
  Matrix d{{1.0, -1.0, 1.0, -1.0}};
  const Matrix r = kernels::gram(d, 1.0 / 4.0);
  CHECK(r.rows() == 1);
  CHECK(r(0, 0) == 1.0);
}

TEST_CASE("lagged_gram matches the brute-force lagged-sum oracle") {
  const Matrix d = random_matrix(2, 60, 41);
  CHECK(max_abs_diff(kernels::lagged_gram(d, 2, 1.0 / 58.0),
                     refimpl::lagged_gram(d, 2, 1.0 / 58.0)) <= 1e-12);
  CHECK_THROWS_AS(kernels::lagged_gram(d, 60, 1.0), DimensionError);
}

TEST_CASE("lagged_gram of constant rows") {
  Matrix ones{{1.0, 1.0, 1.0, 1.0}};
  CHECK(kernels::lagged_gram(ones, 1, 1.0 / 3.0)(0, 0) == 1.0);
  Matrix zeros(1, 8, 0.0);
  CHECK(kernels::lagged_gram(zeros, 1, 1.0 / 7.0)(0, 0) == 0.0);
}

TEST_CASE("center_rows removes per-row means") {
  Matrix d{{1.0, 3.0}};
  std::vector<double> means;
  kernels::center_rows(d, means);
  CHECK(d(0, 0) == -1.0);
  CHECK(d(0, 1) == 1.0);
  CHECK(means == std::vector<double>{2.0});

  Matrix r = random_matrix(4, 50, 51);
  Matrix r_ref = r;
  std::vector<double> means_ref;
  kernels::center_rows(r, means);
  refimpl::center_rows(r_ref, means_ref);
  CHECK(max_abs_diff(r, r_ref) <= 1e-12);
  for (std::size_t i = 0; i < 4; ++i) {
    double s = 0.0;
    for (std::size_t k = 0; k < 50; ++k) s += r(i, k);
    CHECK(std::abs(s / 50.0) < 1e-12);
  }
}

TEST_CASE("seeded noise is reproducible and seed-sensitive") {
  Matrix a(3, 100, 0.0), b(3, 100, 0.0), c(3, 100, 0.0);
  kernels::add_gaussian_noise(a, 0.5, 42);
  kernels::add_gaussian_noise(b, 0.5, 42);
  kernels::add_gaussian_noise(c, 0.5, 43);
  CHECK(a == b);
  CHECK(a != c);
  CHECK(kernels::derive_stream_seed(1, 0) != kernels::derive_stream_seed(1, 1));
  CHECK(kernels::derive_stream_seed(1, 0) != kernels::derive_stream_seed(2, 0));
}
