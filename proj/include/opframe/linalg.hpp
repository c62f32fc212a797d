#pragma once

#include "opframe/types.hpp"

namespace opframe {

// Largest alpha with X^H X >= alpha Y^H Y (both sides as quadratic forms on
// the common column space), together with beta = ||X||^2.
//
// If ker X is not contained in ker Y the optimal alpha is 0. Otherwise, with
// the thin SVD X = U S V^H, alpha = 1 / ||Y V S^-1||^2. inclusion_residual
// measures how far the rows of Y are from the row space of X, relative to the
// largest row of Y; it is the range-inclusion test R(Y^H) in R(X^H).
struct PencilBound {
  double alpha = 0.0;
  double beta = 0.0;
  double inclusion_residual = 0.0;
  double y_norm = 0.0;  // Frobenius norm of Y; zero signals a degenerate right-hand side
  Index rank = 0;
};

PencilBound pencil_bound(const Matrix& x, const Matrix& y, double rcond = kRcond,
                         double inclusion_tol = kInclusionTol);

double spectral_norm(const Matrix& m);

// Thin SVD m = U diag(s) V^H. Strongly rectangular inputs are reduced by a
// Householder QR of the long side first, which is much faster than a direct
// bidiagonalization when one side is several times the other.
struct ThinSvd {
  RealVector s;
  Matrix u;  // empty unless requested
  Matrix v;  // empty unless requested
};
ThinSvd thin_svd(const Matrix& m, bool want_u, bool want_v);

// Moore-Penrose inverse of a plain (unweighted) matrix with relative cutoff.
Matrix pinv(const Matrix& m, double rcond = kRcond);

// Eigenvalues of the Hermitian part of m, ascending.
RealVector hermitian_eigenvalues(const Matrix& m);

}  // namespace opframe
