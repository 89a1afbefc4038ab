#pragma once

#include <vector>

#include "unmix/matrix.hpp"

namespace unmix::linalg {

// Eigendecomposition of a symmetric matrix. Eigenvalues are sorted
// descending; column j of `eigenvectors` pairs with eigenvalues[j].
// Each eigenvector is sign-normalized so its largest-magnitude entry is
// positive, which makes the decomposition a deterministic function of
// the input bits.
struct Evd {
  std::vector<double> eigenvalues;
  Matrix eigenvectors;
};

Evd symmetric_evd(const Matrix& a);

// Thin SVD a = u · diag(s) · vᵀ for rows >= cols, singular values sorted
// descending. One-sided Jacobi; u columns are sign-normalized like the
// EVD above (v flips along to keep the product).
struct Svd {
  Matrix u;
  std::vector<double> singular_values;
  Matrix v;
};

Svd svd(const Matrix& a);

// Moore-Penrose pseudo-inverse of a full-column-rank matrix.
// Throws SingularityError when the column rank collapses
// (smallest singular value <= rank_rel_tol * largest).
Matrix pseudo_inverse(const Matrix& a, double rank_rel_tol = 1e-12);

}  // namespace unmix::linalg
