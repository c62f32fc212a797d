#include "opframe/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace opframe {

namespace {

// Largest singular value squared via the smaller Gram matrix.
double largest_sq_singular(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  const Matrix g = m.rows() >= m.cols() ? Matrix(m.adjoint() * m) : Matrix(m * m.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> es(g, Eigen::EigenvaluesOnly);
  return std::max(0.0, es.eigenvalues().maxCoeff());
}

}  // namespace

ThinSvd thin_svd(const Matrix& m, bool want_u, bool want_v) {
  ThinSvd out;
  const Index rows = m.rows(), cols = m.cols();
  if (m.size() == 0) return out;
  if (rows < cols) {
    ThinSvd t = thin_svd(m.adjoint(), want_v, want_u);
    return ThinSvd{std::move(t.s), std::move(t.v), std::move(t.u)};
  }
  const unsigned opts = (want_u ? Eigen::ComputeThinU : 0u) | (want_v ? Eigen::ComputeThinV : 0u);
  if (rows < 2 * cols) {
    Eigen::BDCSVD<Matrix> svd(m, opts);
    out.s = svd.singularValues();
    if (want_u) out.u = svd.matrixU();
    if (want_v) out.v = svd.matrixV();
    return out;
  }
  Eigen::HouseholderQR<Matrix> qr(m);
  const Matrix r = qr.matrixQR().topRows(cols).triangularView<Eigen::Upper>();
  Eigen::BDCSVD<Matrix> svd(r, opts);
  out.s = svd.singularValues();
  if (want_u) out.u = qr.householderQ() * (Matrix(rows, cols) << svd.matrixU(), Matrix::Zero(rows - cols, cols)).finished();
  if (want_v) out.v = svd.matrixV();
  return out;
}

double spectral_norm(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  const RealVector s = thin_svd(m, false, false).s;
  return s.size() ? s[0] : 0.0;
}

Matrix pinv(const Matrix& m, double rcond) {
  Matrix out = Matrix::Zero(m.cols(), m.rows());
  if (m.size() == 0) return out;
  const ThinSvd svd = thin_svd(m, true, true);
  const RealVector& s = svd.s;
  if (s.size() == 0 || s[0] == 0.0) return out;
  const double cut = rcond * s[0];
  Index r = 0;
  while (r < s.size() && s[r] > cut) ++r;
  out = svd.v.leftCols(r) * s.head(r).cwiseInverse().asDiagonal() * svd.u.leftCols(r).adjoint();
  return out;
}

RealVector hermitian_eigenvalues(const Matrix& m) {
  const Matrix h = (m + m.adjoint()) / 2.0;
  Eigen::SelfAdjointEigenSolver<Matrix> es(h, Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

PencilBound pencil_bound(const Matrix& x, const Matrix& y, double rcond, double inclusion_tol) {
  PencilBound out;
  const Index n = x.cols();
  if (y.cols() != n) throw std::invalid_argument("pencil_bound: column counts differ");
  out.y_norm = y.norm();
  if (n == 0) return out;

  const ThinSvd svd = thin_svd(x, false, true);
  const RealVector& s = svd.s;
  const double smax = s.size() ? s[0] : 0.0;
  out.beta = smax * smax;
  Index r = 0;
  if (smax > 0.0)
    while (r < s.size() && s[r] > rcond * smax) ++r;
  out.rank = r;

  const Matrix v = svd.v.leftCols(r);
  const Matrix yv = y * v;
  // Rows of Y must lie in the row space of X, i.e. Y (I - V V^H) = 0.
  const Matrix resid = y - yv * v.adjoint();
  const double ymax = y.rowwise().norm().maxCoeff();
  out.inclusion_residual = ymax > 0.0 ? resid.rowwise().norm().maxCoeff() / ymax : 0.0;
  if (out.y_norm == 0.0) {
    out.alpha = std::numeric_limits<double>::infinity();
    return out;
  }
  if (out.inclusion_residual > inclusion_tol || r == 0) {
    out.alpha = 0.0;
    return out;
  }
  const Matrix z = yv * s.head(r).cwiseInverse().asDiagonal();
  const double zn2 = largest_sq_singular(z);
  out.alpha = zn2 > 0.0 ? 1.0 / zn2 : std::numeric_limits<double>::infinity();
  return out;
}

}  // namespace opframe
