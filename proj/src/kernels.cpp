#include "unmix/kernels.hpp"

#include <random>

#include "unmix/errors.hpp"

namespace unmix::kernels {

Matrix matmul(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) throw DimensionError("matmul: inner dimensions differ");
  const std::size_t m = a.rows(), k = a.cols(), n = b.cols();
  Matrix c(m, n, 0.0);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(m); ++i) {
    const double* arow = a.row(i);
    double* crow = c.row(i);
    for (std::size_t p = 0; p < k; ++p) {
      const double aip = arow[p];
      const double* brow = b.row(p);
      for (std::size_t j = 0; j < n; ++j) crow[j] += aip * brow[j];
    }
  }
  return c;
}

Matrix gram(const Matrix& data, double scale) {
  const std::size_t m = data.rows(), t = data.cols();
  Matrix r(m, m, 0.0);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(m); ++i) {
    for (std::size_t j = i; j < m; ++j) {
      const double* xi = data.row(i);
      const double* xj = data.row(j);
      double s = 0.0;
      for (std::size_t k = 0; k < t; ++k) s += xi[k] * xj[k];
      s *= scale;
      r(i, j) = s;
      r(j, i) = s;
    }
  }
  return r;
}

Matrix lagged_gram(const Matrix& data, std::size_t delay, double scale) {
  const std::size_t m = data.rows(), t = data.cols();
  if (delay >= t) throw DimensionError("lagged_gram: delay must be smaller than sample count");
  Matrix r(m, m, 0.0);
#pragma omp parallel for schedule(static) collapse(2)
  for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(m); ++i) {
    for (std::ptrdiff_t j = 0; j < static_cast<std::ptrdiff_t>(m); ++j) {
      const double* xi = data.row(i);
      const double* xj = data.row(j);
      double s = 0.0;
      for (std::size_t k = delay; k < t; ++k) s += xi[k] * xj[k - delay];
      r(i, j) = s * scale;
    }
  }
  return r;
}

void center_rows(Matrix& data, std::vector<double>& means) {
  const std::size_t m = data.rows(), t = data.cols();
  means.assign(m, 0.0);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(m); ++i) {
    double* row = data.row(i);
    double s = 0.0;
    for (std::size_t k = 0; k < t; ++k) s += row[k];
    const double mean = s / static_cast<double>(t);
    for (std::size_t k = 0; k < t; ++k) row[k] -= mean;
    means[i] = mean;
  }
}

std::uint64_t derive_stream_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + (stream + 1) * 0x9E3779B97F4A7C15ull;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

void add_gaussian_noise(Matrix& data, double sigma, std::uint64_t seed) {
  const std::size_t m = data.rows(), t = data.cols();
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(m); ++i) {
    std::mt19937_64 rng(derive_stream_seed(seed, static_cast<std::uint64_t>(i)));
    std::normal_distribution<double> dist(0.0, sigma);
    double* row = data.row(i);
    for (std::size_t k = 0; k < t; ++k) row[k] += dist(rng);
  }
}

}  // namespace unmix::kernels
