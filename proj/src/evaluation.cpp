#include "unmix/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "unmix/errors.hpp"
#include "unmix/kernels.hpp"
#include "unmix/linalg.hpp"

namespace unmix {

namespace {

std::vector<double> centered(const std::vector<double>& x) {
  const double mean = std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(x.size());
  std::vector<double> out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = x[i] - mean;
  return out;
}

double dot(const std::vector<double>& x, const std::vector<double>& y) {
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
  return s;
}

// |r| matrix between all truth/estimate row pairs, on mean-removed rows.
Matrix signed_correlation_matrix(const Matrix& truth, const Matrix& estimate) {
  const std::size_t n = truth.rows();
  std::vector<std::vector<double>> tc(n), ec(n);
  std::vector<double> tn(n), en(n);
  for (std::size_t i = 0; i < n; ++i) {
    tc[i] = centered(truth.row_copy(i));
    ec[i] = centered(estimate.row_copy(i));
    tn[i] = std::sqrt(dot(tc[i], tc[i]));
    en[i] = std::sqrt(dot(ec[i], ec[i]));
    if (tn[i] == 0.0)
      throw UndefinedCorrelationError("match_sources: truth row " + std::to_string(i) +
                                      " has zero variance");
    if (en[i] == 0.0)
      throw UndefinedCorrelationError("match_sources: estimate row " + std::to_string(i) +
                                      " has zero variance");
  }
  Matrix r(n, n);
  for (std::size_t e = 0; e < n; ++e)
    for (std::size_t t = 0; t < n; ++t) r(e, t) = dot(ec[e], tc[t]) / (en[e] * tn[t]);
  return r;
}

// Exhaustive optimal assignment on the |r| matrix (rows = estimates).
std::vector<std::size_t> assign_exhaustive(const Matrix& r) {
  const std::size_t n = r.rows();
  std::vector<std::size_t> perm(n), best(n);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  best = perm;
  double best_score = -1.0;
  do {
    double score = 0.0;
    for (std::size_t i = 0; i < n; ++i) score += std::abs(r(i, perm[i]));
    if (score > best_score) {
      best_score = score;
      best = perm;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

// Greedy fallback for large n: repeatedly take the strongest unused pair.
std::vector<std::size_t> assign_greedy(const Matrix& r) {
  const std::size_t n = r.rows();
  std::vector<std::size_t> perm(n, n);
  std::vector<bool> row_used(n, false), col_used(n, false);
  for (std::size_t step = 0; step < n; ++step) {
    double best = -1.0;
    std::size_t bi = 0, bj = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (row_used[i]) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (col_used[j]) continue;
        if (std::abs(r(i, j)) > best) {
          best = std::abs(r(i, j));
          bi = i;
          bj = j;
        }
      }
    }
    perm[bi] = bj;
    row_used[bi] = true;
    col_used[bj] = true;
  }
  return perm;
}

}  // namespace

double pearson(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.empty())
    throw DimensionError("pearson: rows must have equal nonzero length");
  const std::vector<double> xc = centered(x), yc = centered(y);
  const double nx = std::sqrt(dot(xc, xc)), ny = std::sqrt(dot(yc, yc));
  if (nx == 0.0 || ny == 0.0)
    throw UndefinedCorrelationError("pearson: zero-variance input");
  return dot(xc, yc) / (nx * ny);
}

MatchResult match_sources(const Matrix& truth, const Matrix& estimate) {
  if (truth.rows() != estimate.rows() || truth.cols() != estimate.cols())
    throw DimensionError("match_sources: shapes differ");
  if (truth.rows() == 0 || truth.cols() < 2)
    throw DimensionError("match_sources: need at least one row of length 2");
  const std::size_t n = truth.rows();
  const Matrix r = signed_correlation_matrix(truth, estimate);
  const std::vector<std::size_t> perm = n <= 6 ? assign_exhaustive(r) : assign_greedy(r);

  MatchResult out;
  out.permutation = perm;
  out.signs.resize(n);
  out.scales.resize(n);
  out.correlations.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double ri = r(i, perm[i]);
    out.correlations[i] = ri;
    out.signs[i] = ri < 0.0 ? -1 : 1;
    const std::vector<double> ec = centered(estimate.row_copy(i));
    const std::vector<double> tc = centered(truth.row_copy(perm[i]));
    const double denom = dot(ec, ec);
    double scale = std::abs(dot(tc, ec)) / denom;
    if (scale == 0.0) scale = 1.0;  // r == 0 exactly; any positive scale is as good
    out.scales[i] = scale;
  }
  return out;
}

double amari_index(const Matrix& a_true, const Matrix& a_est) {
  if (a_true.rows() != a_est.rows() || a_true.cols() != a_est.cols())
    throw DimensionError("amari_index: shapes differ");
  const std::size_t n = a_true.cols();
  if (n == 0) throw DimensionError("amari_index: empty matrices");
  if (n == 1) return 0.0;  // a single component has no permutation error

  const Matrix g = kernels::matmul(linalg::pseudo_inverse(a_est), a_true);
  double row_term = 0.0, col_term = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double sum = 0.0, mx = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      sum += std::abs(g(i, j));
      mx = std::max(mx, std::abs(g(i, j)));
    }
    if (mx == 0.0) throw SingularityError("amari_index: zero row in gain matrix");
    row_term += sum / mx - 1.0;
  }
  for (std::size_t j = 0; j < n; ++j) {
    double sum = 0.0, mx = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      sum += std::abs(g(i, j));
      mx = std::max(mx, std::abs(g(i, j)));
    }
    if (mx == 0.0) throw SingularityError("amari_index: zero column in gain matrix");
    col_term += sum / mx - 1.0;
  }
  return (row_term + col_term) / (2.0 * static_cast<double>(n) * static_cast<double>(n - 1));
}

std::vector<ConcentrationProfile> concentration_profiles(const Matrix& a) {
  std::vector<ConcentrationProfile> out;
  out.reserve(a.cols());
  for (std::size_t j = 0; j < a.cols(); ++j)
    out.push_back(ConcentrationProfile{j, a.col_copy(j)});
  return out;
}

std::vector<ConcentrationProfile> concentration_profiles(const MixingMatrix& a) {
  return concentration_profiles(a.entries());
}

double sign_accuracy(const Matrix& truth, const Matrix& corrected) {
  const MatchResult match = match_sources(truth, corrected);
  std::size_t positive = 0;
  for (double r : match.correlations)
    if (r > 0.0) ++positive;
  return static_cast<double>(positive) / static_cast<double>(match.correlations.size());
}

}  // namespace unmix
