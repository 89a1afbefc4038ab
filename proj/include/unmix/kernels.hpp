#pragma once

#include <cstdint>
#include <vector>

#include "unmix/matrix.hpp"

namespace unmix::kernels {

// OpenMP-parallel dense kernels. Every output element is produced by a
// serial fixed-order inner loop, so results are bit-identical regardless
// of thread count. Serial counterparts live in unmix::refimpl and back
// the oracle tests and the kernel benchmark.

// C = A · B
Matrix matmul(const Matrix& a, const Matrix& b);

// scale * (data · dataᵀ), symmetric by construction.
Matrix gram(const Matrix& data, double scale);

// scale * Σ_{k=delay}^{T-1} data[:,k] · data[:,k-delay]ᵀ
Matrix lagged_gram(const Matrix& data, std::size_t delay, double scale);

// Subtracts each row's mean in place; the means come back in `means`.
void center_rows(Matrix& data, std::vector<double>& means);

// Adds i.i.d. N(0, sigma²) noise. Each row draws from its own stream
// derived from `seed`, so output is reproducible for any thread count.
void add_gaussian_noise(Matrix& data, double sigma, std::uint64_t seed);

// Deterministic per-row stream seed derivation (splitmix64 step).
std::uint64_t derive_stream_seed(std::uint64_t seed, std::uint64_t stream);

}  // namespace unmix::kernels
