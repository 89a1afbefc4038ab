#include "unmix/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "unmix/errors.hpp"

namespace unmix::linalg {

namespace {

double off_diagonal_norm(const Matrix& a) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (i != j) s += a(i, j) * a(i, j);
  return std::sqrt(s);
}

// Flips each column so its largest-magnitude entry (first on ties) is
// positive. `follower` gets the same flips applied, if provided.
void canonicalize_column_signs(Matrix& m, Matrix* follower) {
  for (std::size_t j = 0; j < m.cols(); ++j) {
    std::size_t arg = 0;
    double best = -1.0;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      const double v = std::abs(m(i, j));
      if (v > best) {
        best = v;
        arg = i;
      }
    }
    if (m(arg, j) < 0.0) {
      for (std::size_t i = 0; i < m.rows(); ++i) m(i, j) = -m(i, j);
      if (follower)
        for (std::size_t i = 0; i < follower->rows(); ++i) (*follower)(i, j) = -(*follower)(i, j);
    }
  }
}

double jacobi_tangent(double theta) {
  if (std::abs(theta) > 1e150) return 1.0 / (2.0 * theta);
  const double sign = theta >= 0.0 ? 1.0 : -1.0;
  return sign / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
}

}  // namespace

Evd symmetric_evd(const Matrix& a_in) {
  if (a_in.rows() != a_in.cols()) throw std::invalid_argument("symmetric_evd: matrix not square");
  const std::size_t n = a_in.rows();
  Matrix a = a_in;
  Matrix v = Matrix::identity(n);
  const double scale = a.frobenius_norm();
  const double tol = 1e-14 * scale;

  constexpr int kMaxSweeps = 64;
  for (int sweep = 0; sweep < kMaxSweeps && off_diagonal_norm(a) > tol; ++sweep) {
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = jacobi_tangent(theta);
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;

        const double app = a(p, p), aqq = a(q, q);
        a(p, p) = app - t * apq;
        a(q, q) = aqq + t * apq;
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
          if (i == p || i == q) continue;
          const double aip = a(i, p), aiq = a(i, q);
          a(i, p) = c * aip - s * aiq;
          a(p, i) = a(i, p);
          a(i, q) = s * aip + c * aiq;
          a(q, i) = a(i, q);
        }
        for (std::size_t i = 0; i < n; ++i) {
          const double vip = v(i, p), viq = v(i, q);
          v(i, p) = c * vip - s * viq;
          v(i, q) = s * vip + c * viq;
        }
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return a(x, x) > a(y, y); });

  Evd out;
  out.eigenvalues.resize(n);
  out.eigenvectors = Matrix(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    out.eigenvalues[j] = a(order[j], order[j]);
    for (std::size_t i = 0; i < n; ++i) out.eigenvectors(i, j) = v(i, order[j]);
  }
  canonicalize_column_signs(out.eigenvectors, nullptr);
  return out;
}

Svd svd(const Matrix& a_in) {
  if (a_in.rows() < a_in.cols())
    throw std::invalid_argument("svd: expected rows >= cols (transpose the input)");
  const std::size_t m = a_in.rows(), n = a_in.cols();
  Matrix b = a_in;
  Matrix v = Matrix::identity(n);
  constexpr double kEps = 1e-15;

  constexpr int kMaxSweeps = 64;
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    bool converged = true;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        double alpha = 0.0, beta = 0.0, gamma = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
          alpha += b(i, p) * b(i, p);
          beta += b(i, q) * b(i, q);
          gamma += b(i, p) * b(i, q);
        }
        if (gamma == 0.0 || std::abs(gamma) <= kEps * std::sqrt(alpha * beta)) continue;
        converged = false;
        const double zeta = (beta - alpha) / (2.0 * gamma);
        const double t = jacobi_tangent(zeta);
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = c * t;
        for (std::size_t i = 0; i < m; ++i) {
          const double bip = b(i, p), biq = b(i, q);
          b(i, p) = c * bip - s * biq;
          b(i, q) = s * bip + c * biq;
        }
        for (std::size_t i = 0; i < n; ++i) {
          const double vip = v(i, p), viq = v(i, q);
          v(i, p) = c * vip - s * viq;
          v(i, q) = s * vip + c * viq;
        }
      }
    }
    if (converged) break;
  }

  std::vector<double> norms(n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    double s = 0.0;
    for (std::size_t i = 0; i < m; ++i) s += b(i, j) * b(i, j);
    norms[j] = std::sqrt(s);
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return norms[x] > norms[y]; });

  Svd out;
  out.singular_values.resize(n);
  out.u = Matrix(m, n);
  out.v = Matrix(n, n);
  const double sigma_max = norms.empty() ? 0.0 : norms[order[0]];
  for (std::size_t j = 0; j < n; ++j) {
    const std::size_t src = order[j];
    out.singular_values[j] = norms[src];
    for (std::size_t i = 0; i < n; ++i) out.v(i, j) = v(i, src);
    if (norms[src] > sigma_max * std::numeric_limits<double>::epsilon() && norms[src] > 0.0) {
      for (std::size_t i = 0; i < m; ++i) out.u(i, j) = b(i, src) / norms[src];
    }
  }
  // Columns whose singular value collapsed to zero get an arbitrary basis
  // direction orthogonal to the ones already present.
  for (std::size_t j = 0; j < n; ++j) {
    if (out.singular_values[j] > sigma_max * std::numeric_limits<double>::epsilon() &&
        out.singular_values[j] > 0.0)
      continue;
    for (std::size_t cand = 0; cand < m; ++cand) {
      std::vector<double> e(m, 0.0);
      e[cand] = 1.0;
      for (std::size_t k = 0; k < n; ++k) {
        if (k == j) continue;
        double dot = 0.0;
        for (std::size_t i = 0; i < m; ++i) dot += out.u(i, k) * e[i];
        for (std::size_t i = 0; i < m; ++i) e[i] -= dot * out.u(i, k);
      }
      double nrm = 0.0;
      for (double x : e) nrm += x * x;
      nrm = std::sqrt(nrm);
      if (nrm > 0.5) {
        for (std::size_t i = 0; i < m; ++i) out.u(i, j) = e[i] / nrm;
        break;
      }
    }
  }
  canonicalize_column_signs(out.u, &out.v);
  return out;
}

Matrix pseudo_inverse(const Matrix& a, double rank_rel_tol) {
  if (a.rows() < a.cols()) return pseudo_inverse(a.transposed(), rank_rel_tol).transposed();
  const Svd dec = svd(a);
  const double sigma_max = dec.singular_values.empty() ? 0.0 : dec.singular_values.front();
  const double sigma_min = dec.singular_values.empty() ? 0.0 : dec.singular_values.back();
  if (sigma_max <= 0.0 || sigma_min <= rank_rel_tol * sigma_max)
    throw SingularityError("pseudo_inverse: matrix is rank deficient");
  // V · diag(1/σ) · Uᵀ
  Matrix out(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.cols(); ++i)
    for (std::size_t j = 0; j < a.rows(); ++j) {
      double s = 0.0;
      for (std::size_t k = 0; k < dec.singular_values.size(); ++k)
        s += dec.v(i, k) * dec.u(j, k) / dec.singular_values[k];
      out(i, j) = s;
    }
  return out;
}

}  // namespace unmix::linalg
