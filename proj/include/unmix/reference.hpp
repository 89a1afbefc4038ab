#pragma once

#include <vector>

#include "unmix/matrix.hpp"

namespace unmix::refimpl {

// Plain serial loops, written independently of unmix::kernels. The test
// suite uses these as brute-force oracles and the benchmark uses them as
// the single-thread baseline. Keep them boring.

Matrix matmul(const Matrix& a, const Matrix& b);
Matrix gram(const Matrix& data, double scale);
Matrix lagged_gram(const Matrix& data, std::size_t delay, double scale);
void center_rows(Matrix& data, std::vector<double>& means);

}  // namespace unmix::refimpl
