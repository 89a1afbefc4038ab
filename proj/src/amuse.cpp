#include "unmix/amuse.hpp"

#include <cmath>
#include <stdexcept>

#include "unmix/errors.hpp"
#include "unmix/kernels.hpp"
#include "unmix/linalg.hpp"

namespace unmix {

std::string to_string(RotationMode mode) {
  return mode == RotationMode::SymmetrizedEvd ? "sym-evd" : "plain-svd";
}

CenteredCube center(const HyperspectralCube& cube) {
  if (cube.data.rows() < 1 || cube.data.cols() < 2)
    throw DimensionError("center: cube needs at least one pixel and two samples");
  CenteredCube out{cube.data, {}};
  kernels::center_rows(out.data, out.means);
  return out;
}

Matrix covariance_zero_lag(const CenteredCube& c) {
  if (c.data.cols() < 1) throw DimensionError("covariance_zero_lag: empty data");
  return kernels::gram(c.data, 1.0 / static_cast<double>(c.data.cols()));
}

SubspaceSplit signal_subspace(const Matrix& r, std::optional<std::size_t> n,
                              double rank_rel_tol) {
  if (r.rows() != r.cols() || r.rows() == 0)
    throw std::invalid_argument("signal_subspace: covariance must be square and nonempty");
  const std::size_t m = r.rows();
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j)
      if (std::abs(r(i, j) - r(j, i)) > 1e-8 * std::max(1.0, r.max_abs()))
        throw std::invalid_argument("signal_subspace: covariance is not symmetric");

  const linalg::Evd evd = linalg::symmetric_evd(r);

  std::size_t n_signal;
  if (n.has_value()) {
    n_signal = *n;
    if (n_signal < 1 || n_signal > m)
      throw std::invalid_argument("signal_subspace: source count out of range");
  } else {
    const double top = evd.eigenvalues.front();
    if (top <= 0.0)
      throw std::invalid_argument("signal_subspace: no dominant eigenvalue (zero covariance)");
    n_signal = 0;
    for (double v : evd.eigenvalues)
      if (v > rank_rel_tol * top) ++n_signal;
    if (n_signal == 0)
      throw std::invalid_argument("signal_subspace: automatic rank detection found no signal");
  }

  SubspaceSplit split;
  split.signal_values.assign(evd.eigenvalues.begin(), evd.eigenvalues.begin() + n_signal);
  split.noise_values.assign(evd.eigenvalues.begin() + n_signal, evd.eigenvalues.end());
  split.signal_vectors = Matrix(m, n_signal);
  split.noise_vectors = Matrix(m, m - n_signal);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n_signal; ++j) split.signal_vectors(i, j) = evd.eigenvectors(i, j);
    for (std::size_t j = n_signal; j < m; ++j)
      split.noise_vectors(i, j - n_signal) = evd.eigenvectors(i, j);
  }
  if (n_signal < m &&
      std::abs(evd.eigenvalues[n_signal - 1] - evd.eigenvalues[n_signal]) <= 1e-12) {
    split.warnings.push_back(
        "ill-separated-subspace: smallest signal eigenvalue coincides with the largest noise "
        "eigenvalue; the subspace split is not reliable");
  }
  return split;
}

WhitenResult whiten(const CenteredCube& c, const SubspaceSplit& split) {
  const std::size_t m = c.data.rows();
  const std::size_t n = split.signal_vectors.cols();
  if (split.signal_vectors.rows() != m)
    throw DimensionError("whiten: subspace split does not match the cube");
  for (double v : split.signal_values)
    if (v <= 1e-14)
      throw SingularSubspaceError("whiten: signal eigenvalue is zero within tolerance");

  Whitener w;
  w.q = Matrix(n, m);
  w.q_pinv = Matrix(m, n);
  for (std::size_t j = 0; j < n; ++j) {
    const double root = std::sqrt(split.signal_values[j]);
    for (std::size_t i = 0; i < m; ++i) {
      w.q(j, i) = split.signal_vectors(i, j) / root;
      w.q_pinv(i, j) = split.signal_vectors(i, j) * root;
    }
  }
  Matrix whitened = kernels::matmul(w.q, c.data);
  return WhitenResult{std::move(whitened), std::move(w)};
}

Matrix delayed_covariance(const Matrix& whitened, std::size_t delay) {
  if (delay < 1) throw std::invalid_argument("delayed_covariance: delay must be at least 1");
  if (delay >= whitened.cols())
    throw std::invalid_argument("delayed_covariance: delay must be smaller than sample count");
  return kernels::lagged_gram(whitened, delay,
                              1.0 / static_cast<double>(whitened.cols() - delay));
}

namespace {

void warn_on_degenerate_spectrum(RotationResult& out) {
  double top = 0.0;
  for (double v : out.spectrum) top = std::max(top, std::abs(v));
  const double tol = 1e-10 * top;
  for (std::size_t i = 0; i < out.spectrum.size(); ++i)
    for (std::size_t j = i + 1; j < out.spectrum.size(); ++j)
      if (std::abs(out.spectrum[i] - out.spectrum[j]) <= tol) {
        out.warnings.push_back(
            "non-identifiable-delay: delayed-covariance spectrum has coinciding entries; "
            "sources cannot be separated at this delay, retry with a different one");
        return;
      }
}

}  // namespace

RotationResult rotation_from_delayed(const Matrix& r_tau, RotationMode mode) {
  if (r_tau.rows() != r_tau.cols() || r_tau.rows() == 0)
    throw std::invalid_argument("rotation_from_delayed: matrix must be square and nonempty");
  if (!r_tau.all_finite())
    throw std::invalid_argument("rotation_from_delayed: non-finite entry");
  const std::size_t n = r_tau.rows();

  RotationResult out;
  if (mode == RotationMode::SymmetrizedEvd) {
    Matrix sym(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) sym(i, j) = 0.5 * (r_tau(i, j) + r_tau(j, i));
    linalg::Evd evd = linalg::symmetric_evd(sym);
    // Reorder by descending magnitude; the EVD comes sorted by value.
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return std::abs(evd.eigenvalues[a]) > std::abs(evd.eigenvalues[b]);
    });
    out.rotation = Matrix(n, n);
    out.spectrum.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
      out.spectrum[j] = evd.eigenvalues[order[j]];
      for (std::size_t i = 0; i < n; ++i) out.rotation(i, j) = evd.eigenvectors(i, order[j]);
    }
  } else {
    linalg::Svd dec = linalg::svd(r_tau);
    out.rotation = std::move(dec.u);
    out.spectrum = std::move(dec.singular_values);
  }
  warn_on_degenerate_spectrum(out);
  return out;
}

Matrix estimate_mixing(const Whitener& w, const Matrix& rotation) {
  return kernels::matmul(w.q_pinv, rotation);
}

Matrix estimate_sources(const Matrix& rotation, const Matrix& whitened) {
  return kernels::matmul(rotation.transposed(), whitened);
}

UnmixingModel amuse(const HyperspectralCube& cube, const AmuseOptions& options) {
  cube.validate();
  if (options.delay < 1 || options.delay >= cube.grid.count)
    throw std::invalid_argument("amuse: delay must satisfy 1 <= delay < sample count");

  const CenteredCube centered = center(cube);
  const Matrix r0 = covariance_zero_lag(centered);
  const SubspaceSplit split = signal_subspace(r0, options.n_sources, options.rank_rel_tol);
  const WhitenResult white = whiten(centered, split);
  const Matrix r_tau = delayed_covariance(white.whitened, options.delay);
  const RotationResult rot = rotation_from_delayed(r_tau, options.mode);

  UnmixingModel model;
  model.mixing_estimate = estimate_mixing(white.whitener, rot.rotation);
  model.sources = estimate_sources(rot.rotation, white.whitened);
  model.rotation = rot.rotation;
  model.delayed_spectrum = rot.spectrum;
  model.delay = options.delay;
  model.n_sources = split.signal_values.size();
  model.grid = cube.grid;
  model.mode = options.mode;
  model.warnings = split.warnings;
  model.warnings.insert(model.warnings.end(), rot.warnings.begin(), rot.warnings.end());
  return model;
}

}  // namespace unmix
