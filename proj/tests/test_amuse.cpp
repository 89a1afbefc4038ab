#include <doctest.h>

#include <cmath>
#include <random>

#include "unmix/amuse.hpp"
#include "unmix/errors.hpp"
#include "unmix/evaluation.hpp"
#include "unmix/fixtures.hpp"
#include "unmix/kernels.hpp"
#include "unmix/reference.hpp"
#include "unmix/spectra_model.hpp"

using namespace unmix;

namespace {

double max_abs_diff(const Matrix& a, const Matrix& b) {
  REQUIRE(a.rows() == b.rows());
  REQUIRE(a.cols() == b.cols());
  double d = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) d = std::max(d, std::abs(a(i, j) - b(i, j)));
  return d;
}

double identity_error(const Matrix& m) {
  double err = 0.0;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      err = std::max(err, std::abs(m(i, j) - (i == j ? 1.0 : 0.0)));
  return err;
}

HyperspectralCube paper2_cube() {
  const Scenario s = paper_two_component_scenario();
  return mix(paper_two_component_matrix(), scenario_sources(s), NoiseSpec::none());
}

bool has_warning(const std::vector<std::string>& warnings, const std::string& prefix) {
  for (const std::string& w : warnings)
    if (w.rfind(prefix, 0) == 0) return true;
  return false;
}

}  // namespace

TEST_CASE("center removes per-pixel means and records them") {
  const WavelengthGrid grid{400.0, 2.0, 2};
  HyperspectralCube cube{grid, Matrix{{1.0, 3.0}, {5.0, 5.0}}};
  const CenteredCube c = center(cube);
  CHECK(c.data(0, 0) == -1.0);
  CHECK(c.data(0, 1) == 1.0);
  CHECK(c.data(1, 0) == 0.0);
  CHECK(c.data(1, 1) == 0.0);
  CHECK(c.means == std::vector<double>{2.0, 5.0});
}

TEST_CASE("center of random data leaves near-zero row means") {
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> dist(-2.0, 2.0);
  HyperspectralCube cube{WavelengthGrid{400.0, 2.0, 50}, Matrix(4, 50)};
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t t = 0; t < 50; ++t) cube.data(i, t) = dist(rng);
  const CenteredCube c = center(cube);
  for (std::size_t i = 0; i < 4; ++i) {
    double s = 0.0;
    for (std::size_t t = 0; t < 50; ++t) s += c.data(i, t);
    CHECK(std::abs(s / 50.0) < 1e-12);
  }
}

TEST_CASE("center rejects an empty cube") {
  HyperspectralCube cube{WavelengthGrid{400.0, 2.0, 2}, Matrix()};
  CHECK_THROWS_AS(center(cube), DimensionError);
}

TEST_CASE("covariance_zero_lag basics") {
  CenteredCube zero{Matrix(2, 6, 0.0), {0.0, 0.0}};
  const Matrix rz = covariance_zero_lag(zero);
  CHECK(rz.max_abs() == 0.0);

  CenteredCube one_row{Matrix{{1.0, -1.0, 1.0, -1.0}}, {0.0}};
  CHECK(covariance_zero_lag(one_row)(0, 0) == 1.0);
}

TEST_CASE("covariance_zero_lag matches the brute-force oracle") {
  std::mt19937 rng(6);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  Matrix data(3, 40);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t t = 0; t < 40; ++t) data(i, t) = dist(rng);
  std::vector<double> means;
  kernels::center_rows(data, means);
  const CenteredCube c{data, means};
  CHECK(max_abs_diff(covariance_zero_lag(c), refimpl::gram(data, 1.0 / 40.0)) <= 1e-12);
}

TEST_CASE("signal_subspace splits a diagonal covariance") {
  const SubspaceSplit split = signal_subspace(Matrix{{4.0, 0.0}, {0.0, 1.0}}, 1);
  CHECK(split.signal_values == std::vector<double>{4.0});
  CHECK(split.noise_values == std::vector<double>{1.0});
  CHECK(split.signal_vectors(0, 0) == 1.0);
  CHECK(split.signal_vectors(1, 0) == 0.0);
  CHECK(split.warnings.empty());
}

TEST_CASE("signal_subspace warns on a degenerate split") {
  const SubspaceSplit split = signal_subspace(Matrix::identity(2), 1);
  CHECK(split.signal_values == std::vector<double>{1.0});
  CHECK(split.noise_values == std::vector<double>{1.0});
  CHECK(has_warning(split.warnings, "ill-separated-subspace"));
}

TEST_CASE("signal_subspace auto-detects the rank of a noiseless mixture") {
  const CenteredCube c = center(paper2_cube());
  const SubspaceSplit split = signal_subspace(covariance_zero_lag(c), std::nullopt);
  CHECK(split.signal_values.size() == 2);
}

TEST_CASE("signal_subspace validates its arguments") {
  CHECK_THROWS_AS(signal_subspace(Matrix::identity(2), 3), std::invalid_argument);
  CHECK_THROWS_AS(signal_subspace(Matrix::identity(2), 0), std::invalid_argument);
  CHECK_THROWS_AS(signal_subspace(Matrix{{1.0, 2.0}, {0.0, 1.0}}, 1), std::invalid_argument);
  CHECK_THROWS_AS(signal_subspace(Matrix(2, 2, 0.0), std::nullopt), std::invalid_argument);
}

TEST_CASE("whiten keeps already-white data white") {
  // Orthogonal rows scaled so the zero-lag covariance is the identity.
  CenteredCube c{Matrix{{1.0, -1.0, 1.0, -1.0}, {1.0, 1.0, -1.0, -1.0}}, {0.0, 0.0}};
  const SubspaceSplit split = signal_subspace(covariance_zero_lag(c), 2);
  const WhitenResult white = whiten(c, split);
  const Matrix cov = kernels::gram(white.whitened, 1.0 / 4.0);
  CHECK(identity_error(cov) <= 1e-10);
  CHECK(identity_error(kernels::matmul(white.whitener.q, white.whitener.q_pinv)) <= 1e-10);
}

TEST_CASE("whiten normalizes a rank-one cube to unit variance") {
  const WavelengthGrid grid{400.0, 2.0, 80};
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  Matrix source_row(1, grid.count);
  for (std::size_t t = 0; t < grid.count; ++t) source_row(0, t) = dist(rng);
  Matrix a{{0.3}, {0.8}, {0.5}};
  const HyperspectralCube cube{grid, kernels::matmul(a, source_row)};

  const CenteredCube c = center(cube);
  const SubspaceSplit split = signal_subspace(covariance_zero_lag(c), 1);
  const WhitenResult white = whiten(c, split);
  REQUIRE(white.whitened.rows() == 1);
  double var = 0.0;
  for (std::size_t t = 0; t < grid.count; ++t) var += white.whitened(0, t) * white.whitened(0, t);
  var /= static_cast<double>(grid.count);
  CHECK(var == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("whiten produces identity covariance on the two-component fixture") {
  const CenteredCube c = center(paper2_cube());
  const SubspaceSplit split = signal_subspace(covariance_zero_lag(c), std::nullopt);
  const WhitenResult white = whiten(c, split);
  const Matrix cov = kernels::gram(white.whitened, 1.0 / static_cast<double>(c.data.cols()));
  CHECK(identity_error(cov) <= 1e-8);
}

TEST_CASE("whiten rejects a singular subspace") {
  CenteredCube c{Matrix(2, 4, 0.0), {0.0, 0.0}};
  SubspaceSplit split;
  split.signal_vectors = Matrix{{1.0}, {0.0}};
  split.signal_values = {0.0};
  CHECK_THROWS_AS(whiten(c, split), SingularSubspaceError);
}

TEST_CASE("delayed_covariance basics and oracle") {
  Matrix zeros(1, 6, 0.0);
  CHECK(delayed_covariance(zeros, 1)(0, 0) == 0.0);

  Matrix ones{{1.0, 1.0, 1.0, 1.0}};
  CHECK(delayed_covariance(ones, 1)(0, 0) == 1.0);

  std::mt19937 rng(8);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  Matrix w(2, 60);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t t = 0; t < 60; ++t) w(i, t) = dist(rng);
  CHECK(max_abs_diff(delayed_covariance(w, 2), refimpl::lagged_gram(w, 2, 1.0 / 58.0)) <= 1e-12);

  CHECK_THROWS_AS(delayed_covariance(ones, 4), std::invalid_argument);
  CHECK_THROWS_AS(delayed_covariance(ones, 0), std::invalid_argument);
}

TEST_CASE("rotation_from_delayed on a diagonal matrix is a signed permutation") {
  for (RotationMode mode : {RotationMode::SymmetrizedEvd, RotationMode::PlainSvd}) {
    const RotationResult rot = rotation_from_delayed(Matrix{{3.0, 0.0}, {0.0, 1.0}}, mode);
    CHECK(rot.rotation == Matrix::identity(2));
    CHECK(rot.spectrum == std::vector<double>{3.0, 1.0});
    CHECK(rot.warnings.empty());
  }
}

TEST_CASE("rotation_from_delayed warns on a degenerate spectrum") {
  const RotationResult rot = rotation_from_delayed(Matrix::identity(2));
  CHECK(has_warning(rot.warnings, "non-identifiable-delay"));
}

TEST_CASE("rotation_from_delayed reconstructs a symmetric input") {
  std::mt19937 rng(9);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  Matrix sym(3, 3);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = i; j < 3; ++j) {
      sym(i, j) = dist(rng);
      sym(j, i) = sym(i, j);
    }
  const RotationResult rot = rotation_from_delayed(sym, RotationMode::SymmetrizedEvd);
  double err = 0.0;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) {
      double s = 0.0;
      for (std::size_t k = 0; k < 3; ++k)
        s += rot.rotation(i, k) * rot.spectrum[k] * rot.rotation(j, k);
      err = std::max(err, std::abs(s - sym(i, j)));
    }
  CHECK(err <= 1e-10);
}

TEST_CASE("estimate_mixing with the identity rotation returns q_pinv") {
  const CenteredCube c = center(paper2_cube());
  const SubspaceSplit split = signal_subspace(covariance_zero_lag(c), 2);
  const WhitenResult white = whiten(c, split);
  CHECK(estimate_mixing(white.whitener, Matrix::identity(2)) == white.whitener.q_pinv);

  // Q·Â equals the rotation because Q·Q⁺ is the identity.
  const RotationResult rot = rotation_from_delayed(delayed_covariance(white.whitened, 1));
  const Matrix a_hat = estimate_mixing(white.whitener, rot.rotation);
  CHECK(max_abs_diff(kernels::matmul(white.whitener.q, a_hat), rot.rotation) <= 1e-10);
}

TEST_CASE("estimate_sources applies the transposed rotation") {
  Matrix w{{1.0, 2.0, 3.0}, {4.0, 5.0, 6.0}};
  CHECK(estimate_sources(Matrix::identity(2), w) == w);

  // An orthogonal transform of white data stays white.
  CenteredCube c{Matrix{{1.0, -1.0, 1.0, -1.0}, {1.0, 1.0, -1.0, -1.0}}, {0.0, 0.0}};
  const WhitenResult white = whiten(c, signal_subspace(covariance_zero_lag(c), 2));
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  Matrix rotation{{inv_sqrt2, -inv_sqrt2}, {inv_sqrt2, inv_sqrt2}};
  const Matrix sources = estimate_sources(rotation, white.whitened);
  const Matrix cov = kernels::gram(sources, 1.0 / 4.0);
  CHECK(identity_error(cov) <= 1e-8);
}

TEST_CASE("amuse separates an identity mixture of distinct spectra") {
  const WavelengthGrid grid = WavelengthGrid::default_visible();
  const std::vector<Spectrum> sources = {
      synth_spectrum({PeakModel{500.0, 10.0, 1.0}}, 0.05, grid),
      synth_spectrum({PeakModel{750.0, 22.0, 0.8}}, 0.02, grid)};
  const HyperspectralCube cube =
      mix(MixingMatrix(Matrix::identity(2)), sources, NoiseSpec::none());
  const UnmixingModel model = amuse(cube);

  Matrix truth(2, grid.count);
  truth.set_row(0, sources[0].values);
  truth.set_row(1, sources[1].values);
  const MatchResult match = match_sources(truth, model.sources);
  for (double r : match.correlations) CHECK(std::abs(r) >= 0.999);
}

TEST_CASE("amuse reproduces both bundled experiments") {
  SUBCASE("two components") {
    const Scenario s = paper_two_component_scenario();
    const HyperspectralCube cube = paper2_cube();
    const UnmixingModel model = amuse(cube, scenario_options(s));
    CHECK(model.n_sources == 2);

    Matrix truth(2, s.grid.count);
    const std::vector<Spectrum> sources = scenario_sources(s);
    truth.set_row(0, sources[0].values);
    truth.set_row(1, sources[1].values);
    const MatchResult match = match_sources(truth, model.sources);
    for (double r : match.correlations) CHECK(std::abs(r) >= 0.999);
  }
  SUBCASE("three components") {
    const Scenario s = paper_three_component_scenario();
    const HyperspectralCube cube =
        mix(paper_three_component_matrix(), scenario_sources(s), NoiseSpec::none());
    const UnmixingModel model = amuse(cube, scenario_options(s));
    CHECK(model.n_sources == 3);

    Matrix truth(3, s.grid.count);
    const std::vector<Spectrum> sources = scenario_sources(s);
    for (std::size_t i = 0; i < 3; ++i) truth.set_row(i, sources[i].values);
    const MatchResult match = match_sources(truth, model.sources);
    for (double r : match.correlations) CHECK(std::abs(r) >= 0.99);
  }
}

TEST_CASE("amuse validates the delay") {
  const HyperspectralCube cube = paper2_cube();
  AmuseOptions options;
  options.delay = cube.grid.count;
  CHECK_THROWS_AS(amuse(cube, options), std::invalid_argument);
  options.delay = 0;
  CHECK_THROWS_AS(amuse(cube, options), std::invalid_argument);
}

TEST_CASE("the two algebraic routes to the mixing estimate agree") {
  const CenteredCube c = center(paper2_cube());
  const SubspaceSplit split = signal_subspace(covariance_zero_lag(c), std::nullopt);
  const WhitenResult white = whiten(c, split);
  const RotationResult rot = rotation_from_delayed(delayed_covariance(white.whitened, 1));

  const Matrix via_whitener = estimate_mixing(white.whitener, rot.rotation);

  // Independent route: scale the subspace columns directly.
  const std::size_t m = split.signal_vectors.rows();
  const std::size_t n = split.signal_values.size();
  Matrix scaled(m, n);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j)
      scaled(i, j) = split.signal_vectors(i, j) * std::sqrt(split.signal_values[j]);
  const Matrix direct = refimpl::matmul(scaled, rot.rotation);

  CHECK(max_abs_diff(via_whitener, direct) <= 1e-10);
}

TEST_CASE("amuse reconstruction and equivariance invariants") {
  const HyperspectralCube cube = paper2_cube();
  const UnmixingModel model = amuse(cube);

  SUBCASE("reconstruction of the centered cube") {
    const CenteredCube c = center(cube);
    const Matrix recon = kernels::matmul(model.mixing_estimate, model.sources);
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < c.data.rows(); ++i)
      for (std::size_t t = 0; t < c.data.cols(); ++t) {
        const double d = recon(i, t) - c.data(i, t);
        num += d * d;
        den += c.data(i, t) * c.data(i, t);
      }
    CHECK(std::sqrt(num / den) <= 1e-8);
  }

  SUBCASE("permuting pixels permutes the mixing estimate rows") {
    const std::vector<std::size_t> perm = {3, 0, 6, 2, 5, 1, 4};
    HyperspectralCube permuted{cube.grid, Matrix(cube.pixels(), cube.grid.count)};
    for (std::size_t i = 0; i < perm.size(); ++i)
      permuted.data.set_row(i, cube.data.row_copy(perm[i]));
    const UnmixingModel permuted_model = amuse(permuted);

    const MatchResult match = match_sources(model.sources, permuted_model.sources);
    for (double r : match.correlations) CHECK(std::abs(r) >= 1.0 - 1e-9);

    for (std::size_t j = 0; j < permuted_model.mixing_estimate.cols(); ++j) {
      const std::size_t src_col = match.permutation[j];
      const double flip = match.signs[j];
      const double scale = match.scales[j];
      for (std::size_t i = 0; i < perm.size(); ++i) {
        const double expected = model.mixing_estimate(perm[i], src_col);
        const double got = permuted_model.mixing_estimate(i, j) * flip * scale;
        CHECK(got == doctest::Approx(expected).epsilon(1e-6));
      }
    }
  }

  SUBCASE("scaling the cube scales the mixing estimate and not the sources") {
    HyperspectralCube scaled{cube.grid, cube.data};
    for (std::size_t i = 0; i < scaled.data.rows(); ++i)
      for (std::size_t t = 0; t < scaled.data.cols(); ++t) scaled.data(i, t) *= 4.0;
    const UnmixingModel scaled_model = amuse(scaled);

    // Power-of-two scaling keeps the eigenproblem bit-identical.
    CHECK(scaled_model.sources == model.sources);
    double err = 0.0;
    for (std::size_t i = 0; i < model.mixing_estimate.rows(); ++i)
      for (std::size_t j = 0; j < model.mixing_estimate.cols(); ++j)
        err = std::max(err, std::abs(scaled_model.mixing_estimate(i, j) -
                                     4.0 * model.mixing_estimate(i, j)));
    CHECK(err <= 1e-12);

    for (std::size_t i = 0; i < scaled_model.sources.rows(); ++i) {
      double var = 0.0;
      for (std::size_t t = 0; t < scaled_model.sources.cols(); ++t)
        var += scaled_model.sources(i, t) * scaled_model.sources(i, t);
      var /= static_cast<double>(scaled_model.sources.cols());
      CHECK(var == doctest::Approx(1.0).epsilon(1e-8));
    }
  }
}
