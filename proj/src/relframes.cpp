#include "opframe/relframes.hpp"

#include <algorithm>
#include <cmath>

#include "opframe/error.hpp"
#include "opframe/linalg.hpp"
#include "opframe/random.hpp"

namespace opframe {

namespace {

FrameKind kind_for(double alpha, double tol, FrameKind yes) { return alpha > tol ? yes : FrameKind::BesselOnly; }

Matrix require_nonzero_operator(const OperatorModel& op) {
  Matrix e = euclidean_matrix(op);
  if (e.size() == 0 || e.cwiseAbs().maxCoeff() == 0.0)
    fail(ErrorCode::DegenerateOperator, op.name + " vanishes on its domain");
  return e;
}

// Euclidean form of A viewed on the graph space: E L^{-H} with L L^H = I + E^H E.
struct GraphForm {
  Matrix k;  // d_out x r
  Eigen::LLT<Matrix> llt;
};

GraphForm graph_form(const OperatorModel& a) {
  const Matrix e = require_nonzero_operator(a);
  GraphForm g;
  g.llt.compute(Matrix::Identity(e.cols(), e.cols()) + e.adjoint() * e);
  if (g.llt.info() != Eigen::Success) fail(ErrorCode::DegenerateOperator, "graph metric is not positive definite");
  // k^H = L^{-1} E^H
  g.k = g.llt.matrixL().solve(e.adjoint()).adjoint();
  return g;
}

double relative(double err, double scale) { return scale > 0.0 ? err / scale : err; }

}  // namespace

FrameBounds kframe_bounds(const FrameSequence& seq, const OperatorModel& k, double frame_tol) {
  require_same_space(k.codomain, seq.model(), "kframe_bounds");
  const Matrix kh = require_nonzero_operator(k);
  const PencilBound pb = pencil_bound(seq.euclidean().adjoint(), kh.adjoint());
  return FrameBounds{pb.alpha, pb.beta, kind_for(pb.alpha, frame_tol, FrameKind::KFrame), pb.inclusion_residual};
}

RangeInclusion range_inclusion(const OperatorModel& k, const FrameSequence& seq, double tol) {
  require_same_space(k.codomain, seq.model(), "range_inclusion");
  const Matrix g = seq.euclidean();
  const Matrix kh = euclidean_matrix(k);
  const ThinSvd svd = thin_svd(g, true, false);
  const RealVector& s = svd.s;
  Index r = 0;
  while (r < s.size() && s[0] > 0.0 && s[r] > kRcond * s[0]) ++r;
  const Matrix u = svd.u.leftCols(r);
  const double scale = kh.colwise().norm().maxCoeff();
  RangeInclusion out;
  out.residual = relative((kh - u * (u.adjoint() * kh)).colwise().norm().maxCoeff(), scale);
  out.included = out.residual <= tol;
  return out;
}

SynthesisFactor factor_through_synthesis(const FrameSequence& seq, const OperatorModel& k) {
  require_same_space(k.codomain, seq.model(), "factor_through_synthesis");
  const Matrix g = seq.euclidean();
  const Matrix kh = require_nonzero_operator(k);
  SynthesisFactor out;
  out.m = pinv(g) * kh;
  out.residual = relative(spectral_norm(kh - g * out.m), spectral_norm(kh));
  return out;
}

double k_dual_residual(const FrameSequence& seq, const FrameSequence& kdual, const OperatorModel& k, int trials,
                       unsigned long long seed) {
  require_same_space(kdual.model(), k.input_model, "k_dual_residual");
  if (kdual.size() != seq.size()) fail(ErrorCode::InvalidDimension, "k_dual_residual: N differs");
  const Matrix f = certificate_vectors(k.domain, trials, seed);
  const Matrix kf = k.matrix * f;
  const Matrix coeff = kdual.vectors().adjoint() * (k.input_model.weights().asDiagonal() * f);
  const Matrix diff = kf - seq.vectors() * coeff;
  const RealVector num = column_norms(k.codomain, diff);
  const RealVector den = column_norms(k.codomain, kf);
  const RealVector fn = column_norms(k.input_model, f);
  const double knorm = spectral_norm(euclidean_matrix(k));
  double worst = 0.0;
  for (Index j = 0; j < f.cols(); ++j) worst = std::max(worst, num[j] / std::max(den[j], 1e-12 * knorm * fn[j]));
  return worst;
}

DualSequence k_dual(const FrameSequence& seq, const OperatorModel& k, unsigned long long seed) {
  const SynthesisFactor fac = factor_through_synthesis(seq, k);
  if (fac.residual > kInclusionTol)
    fail(ErrorCode::RangeNotIncluded, "R(K) is not contained in R(D) (residual " + std::to_string(fac.residual) + ")");
  FrameSequence kn(k.input_model, k.domain.embed(fac.m.adjoint()), seq.labels());
  const double cert = k_dual_residual(seq, kn, k, 100, seed);
  return DualSequence{std::move(kn), Producer::KDual, cert, false};
}

FrameBounds aframe_bounds_graph(const FrameSequence& seq, const OperatorModel& a, double frame_tol) {
  require_same_space(a.codomain, seq.model(), "aframe_bounds_graph");
  const GraphForm gf = graph_form(a);
  const PencilBound pb = pencil_bound(seq.euclidean().adjoint(), gf.k.adjoint());
  return FrameBounds{pb.alpha, pb.beta, kind_for(pb.alpha, frame_tol, FrameKind::GraphAFrame), pb.inclusion_residual};
}

double a_dual_residual(const FrameSequence& seq, const FrameSequence& kdual, const OperatorModel& a, int trials,
                       unsigned long long seed) {
  require_same_space(kdual.model(), a.input_model, "a_dual_residual");
  if (kdual.size() != seq.size()) fail(ErrorCode::InvalidDimension, "a_dual_residual: N differs");
  const Matrix f = certificate_vectors(a.domain, trials, seed);
  const Matrix af = a.matrix * f;
  const Matrix ak = a.matrix * kdual.vectors();
  // <f, k_n>_A = <f, k_n> + <A f, A k_n>
  const Matrix coeff = kdual.vectors().adjoint() * (a.input_model.weights().asDiagonal() * f) +
                       ak.adjoint() * (a.codomain.weights().asDiagonal() * af);
  const RealVector num = column_norms(a.codomain, af - seq.vectors() * coeff);
  const RealVector den = column_norms(a.codomain, af);
  const RealVector fn = column_norms(a.input_model, f);
  const double anorm = spectral_norm(euclidean_matrix(a));
  double worst = 0.0;
  for (Index j = 0; j < f.cols(); ++j) worst = std::max(worst, num[j] / std::max(den[j], 1e-12 * anorm * fn[j]));
  return worst;
}

DualSequence a_dual_graph(const FrameSequence& seq, const OperatorModel& a, unsigned long long seed) {
  require_same_space(a.codomain, seq.model(), "a_dual_graph");
  const GraphForm gf = graph_form(a);
  const Matrix g = seq.euclidean();
  const Matrix m = pinv(g) * gf.k;
  const double res = relative(spectral_norm(gf.k - g * m), spectral_norm(gf.k));
  if (res > kInclusionTol)
    fail(ErrorCode::RangeNotIncluded, "R(A) is not contained in R(D) (residual " + std::to_string(res) + ")");
  // Graph coordinates z = M^H e_n, domain coordinates y = L^{-H} z.
  const Matrix y = gf.llt.matrixU().solve(Matrix(m.adjoint()));
  FrameSequence kn(a.input_model, a.domain.embed(y), seq.labels());
  const double cert = a_dual_residual(seq, kn, a, 100, seed);
  return DualSequence{std::move(kn), Producer::KDual, cert, true};
}

}  // namespace opframe
