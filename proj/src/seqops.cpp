#include "opframe/seqops.hpp"

#include <algorithm>
#include <cmath>

#include "opframe/error.hpp"
#include "opframe/linalg.hpp"
#include "opframe/opmodel.hpp"

namespace opframe {

FrameSequence::FrameSequence(HilbertModel model, Matrix vectors, std::vector<long> labels)
    : model_(std::move(model)), vectors_(std::move(vectors)), labels_(std::move(labels)) {
  require_length(model_, vectors_.rows(), "FrameSequence");
  if (vectors_.cols() < 1) fail(ErrorCode::InvalidDimension, "FrameSequence needs N >= 1");
  if (!vectors_.allFinite()) fail(ErrorCode::InvalidArgument, "FrameSequence has non-finite entries");
  if (labels_.empty()) {
    labels_.resize(std::size_t(vectors_.cols()));
    for (Index n = 0; n < vectors_.cols(); ++n) labels_[std::size_t(n)] = long(n);
  }
  if (Index(labels_.size()) != vectors_.cols()) fail(ErrorCode::InvalidDimension, "label count differs from N");
}

bool FrameSequence::all_zero() const { return vectors_.cwiseAbs().maxCoeff() == 0.0; }

void require_nonzero(const FrameSequence& seq, const char* what) {
  if (seq.all_zero()) fail(ErrorCode::DegenerateSequence, std::string(what) + ": every column is zero");
}

FrameSequence& FrameSequence::with_label_pairs(std::vector<std::array<long, 2>> pairs) {
  if (Index(pairs.size()) != size()) fail(ErrorCode::InvalidDimension, "label pair count differs from N");
  pairs_ = std::move(pairs);
  return *this;
}

std::string to_string(FrameKind kind) {
  switch (kind) {
    case FrameKind::Frame: return "frame";
    case FrameKind::BesselOnly: return "bessel_only";
    case FrameKind::KFrame: return "k_frame";
    case FrameKind::WeakAFrame: return "weak_a_frame";
    case FrameKind::GraphAFrame: return "graph_a_frame";
  }
  return "unknown";
}

Matrix analysis_matrix(const FrameSequence& seq) {
  return seq.vectors().adjoint() * seq.model().weights().asDiagonal();
}

Vector analysis(const FrameSequence& seq, const Vector& f) {
  require_length(seq.model(), f.size(), "analysis");
  return seq.vectors().adjoint() * (seq.model().weights().asDiagonal() * f);
}

Vector synthesis(const FrameSequence& seq, const Vector& c) {
  if (c.size() != seq.size()) fail(ErrorCode::InvalidDimension, "synthesis: coefficient length differs from N");
  return seq.vectors() * c;
}

OperatorModel analysis_operator(const FrameSequence& seq) {
  return make_operator(seq.model(), HilbertModel::sequence(seq.size()), analysis_matrix(seq), "C");
}

OperatorModel synthesis_operator(const FrameSequence& seq) {
  return make_operator(HilbertModel::sequence(seq.size()), seq.model(), seq.vectors(), "D");
}

OperatorModel frame_operator(const FrameSequence& seq) {
  return make_operator(seq.model(), seq.vectors() * analysis_matrix(seq), "S");
}

Matrix gram(const FrameSequence& seq) { return analysis_matrix(seq) * seq.vectors(); }

FrameBounds frame_bounds(const FrameSequence& seq, double frame_tol) {
  const Matrix g = seq.euclidean();
  const bool wide = seq.size() > seq.dim();
  const Matrix small = wide ? Matrix(g * g.adjoint()) : Matrix(g.adjoint() * g);
  const RealVector ev = hermitian_eigenvalues(small);
  FrameBounds out;
  out.beta = std::max(0.0, ev.maxCoeff());
  // With fewer vectors than dimensions S has a nontrivial kernel.
  out.alpha = seq.size() < seq.dim() ? 0.0 : std::max(0.0, ev.minCoeff());
  out.kind = out.alpha > frame_tol * out.beta ? FrameKind::Frame : FrameKind::BesselOnly;
  return out;
}

FrameSequence canonical_dual(const FrameSequence& seq, double frame_tol) {
  const FrameBounds fb = frame_bounds(seq, frame_tol);
  if (fb.kind != FrameKind::Frame)
    fail(ErrorCode::NotAFrame, "lower frame bound " + std::to_string(fb.alpha) + " is not positive");
  const Matrix g = seq.euclidean();
  const Matrix s = g * g.adjoint();
  Eigen::LLT<Matrix> llt(s);
  if (llt.info() != Eigen::Success) fail(ErrorCode::NotAFrame, "frame operator is not positive definite");
  const Matrix h = seq.model().sqrt_weights().cwiseInverse().asDiagonal() * llt.solve(g);
  return FrameSequence(seq.model(), h, seq.labels());
}

FrameSequence span_dual(const FrameSequence& seq, double rcond) {
  const Matrix g = seq.euclidean();
  const ThinSvd svd = thin_svd(g, true, true);
  const RealVector& s = svd.s;
  Index r = 0;
  while (r < s.size() && s[r] > rcond * s[0]) ++r;
  if (r == 0) fail(ErrorCode::DegenerateSequence, "span_dual of a zero family");
  const Matrix h = svd.u.leftCols(r) * s.head(r).cwiseInverse().asDiagonal() * svd.v.leftCols(r).adjoint();
  return FrameSequence(seq.model(), seq.model().sqrt_weights().cwiseInverse().asDiagonal() * h, seq.labels());
}

Reconstruction reconstruct(const FrameSequence& seq, const FrameSequence& dual, const Vector& f) {
  if (dual.size() != seq.size()) fail(ErrorCode::InvalidDimension, "reconstruct: sequence and dual differ in N");
  require_same_space(seq.model(), dual.model(), "reconstruct");
  Reconstruction out;
  out.value = synthesis(seq, analysis(dual, f));
  const double fn = norm(seq.model(), f);
  const double err = norm(seq.model(), out.value - f);
  out.residual = fn > 0.0 ? err / fn : err;
  return out;
}

Vector partial_synthesis(const FrameSequence& seq, const Vector& c, Index upto) {
  if (c.size() != seq.size()) fail(ErrorCode::InvalidDimension, "partial_synthesis: coefficient length differs from N");
  if (upto < 1 || upto > seq.size())
    fail(ErrorCode::InvalidIndex, "partial_synthesis: upto=" + std::to_string(upto) + " outside [1, N]");
  return seq.vectors().leftCols(upto) * c.head(upto);
}

FrameSequence permute(const FrameSequence& seq, const std::vector<Index>& order) {
  if (Index(order.size()) != seq.size()) fail(ErrorCode::InvalidDimension, "permutation length differs from N");
  Matrix v(seq.dim(), seq.size());
  std::vector<long> labels(order.size());
  for (std::size_t k = 0; k < order.size(); ++k) {
    const Index j = order[k];
    if (j < 0 || j >= seq.size()) fail(ErrorCode::InvalidIndex, "permutation entry out of range");
    v.col(Index(k)) = seq.vectors().col(j);
    labels[k] = seq.labels()[std::size_t(j)];
  }
  return FrameSequence(seq.model(), std::move(v), std::move(labels));
}

}  // namespace opframe
