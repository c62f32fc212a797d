#include "opframe/random.hpp"

#include <algorithm>
#include <cmath>

namespace opframe {

RealMatrix Rng::real_normal(Index rows, Index cols) {
  RealMatrix m(rows, cols);
  for (Index j = 0; j < cols; ++j)
    for (Index i = 0; i < rows; ++i) m(i, j) = normal();
  return m;
}

Matrix Rng::complex_normal(Index rows, Index cols) {
  Matrix m(rows, cols);
  for (Index j = 0; j < cols; ++j)
    for (Index i = 0; i < rows; ++i) m(i, j) = complex_normal();
  return m;
}

Matrix Rng::unitary(Index d) {
  const Matrix z = complex_normal(d, d);
  Eigen::HouseholderQR<Matrix> qr(z);
  Matrix q = qr.householderQ() * Matrix::Identity(d, d);
  // Fix the phases so the distribution does not depend on the QR sign convention.
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Index j = 0; j < d; ++j) {
    const Complex rjj = r(j, j);
    if (std::abs(rjj) > 0.0) q.col(j) *= rjj / std::abs(rjj);
  }
  return q;
}

Matrix Rng::rank_deficient(Index rows, Index cols, Index rank) {
  return complex_normal(rows, rank) * complex_normal(rank, cols);
}

Matrix Rng::conditioned(Index d, double cond) {
  RealVector s(d);
  for (Index i = 0; i < d; ++i) s[i] = d == 1 ? 1.0 : std::pow(cond, double(i) / double(d - 1));
  return unitary(d) * s.cast<Complex>().asDiagonal() * unitary(d).adjoint();
}

Matrix certificate_vectors(const Subspace& s, int trials, unsigned long long seed) {
  Rng rng(seed);
  const Index r = s.dim();
  Matrix coords(r, r + std::max(trials, 0));
  coords.leftCols(r).setIdentity();
  if (trials > 0) coords.rightCols(trials) = rng.complex_normal(r, trials);
  return s.embed(coords);
}

RieszPair random_riesz_pair(const HilbertModel& model, double cond, Rng& rng) {
  const Index d = model.dim();
  // Build in Euclidean coordinates, then map back through the weights.
  const Matrix phi_hat = rng.conditioned(d, cond);
  const Matrix psi_hat = phi_hat.inverse().adjoint();
  const RealVector isw = model.sqrt_weights().cwiseInverse();
  return RieszPair{FrameSequence(model, isw.asDiagonal() * phi_hat), FrameSequence(model, isw.asDiagonal() * psi_hat)};
}

}  // namespace opframe
