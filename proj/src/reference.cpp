#include "unmix/reference.hpp"

#include "unmix/errors.hpp"

namespace unmix::refimpl {

Matrix matmul(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) throw DimensionError("refimpl::matmul: inner dimensions differ");
  Matrix c(a.rows(), b.cols(), 0.0);
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) {
      double s = 0.0;
      for (std::size_t p = 0; p < a.cols(); ++p) s += a(i, p) * b(p, j);
      c(i, j) = s;
    }
  return c;
}

Matrix gram(const Matrix& data, double scale) {
  Matrix r(data.rows(), data.rows(), 0.0);
  for (std::size_t i = 0; i < data.rows(); ++i)
    for (std::size_t j = 0; j < data.rows(); ++j) {
      double s = 0.0;
      for (std::size_t k = 0; k < data.cols(); ++k) s += data(i, k) * data(j, k);
      r(i, j) = s * scale;
    }
  return r;
}

Matrix lagged_gram(const Matrix& data, std::size_t delay, double scale) {
  if (delay >= data.cols())
    throw DimensionError("refimpl::lagged_gram: delay must be smaller than sample count");
  Matrix r(data.rows(), data.rows(), 0.0);
  for (std::size_t i = 0; i < data.rows(); ++i)
    for (std::size_t j = 0; j < data.rows(); ++j) {
      double s = 0.0;
      for (std::size_t k = delay; k < data.cols(); ++k) s += data(i, k) * data(j, k - delay);
      r(i, j) = s * scale;
    }
  return r;
}

void center_rows(Matrix& data, std::vector<double>& means) {
  means.assign(data.rows(), 0.0);
  for (std::size_t i = 0; i < data.rows(); ++i) {
    double s = 0.0;
    for (std::size_t k = 0; k < data.cols(); ++k) s += data(i, k);
    const double mean = s / static_cast<double>(data.cols());
    for (std::size_t k = 0; k < data.cols(); ++k) data(i, k) -= mean;
    means[i] = mean;
  }
}

}  // namespace unmix::refimpl
