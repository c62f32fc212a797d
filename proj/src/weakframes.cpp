#include "opframe/weakframes.hpp"

#include <algorithm>
#include <cmath>

#include "opframe/error.hpp"
#include "opframe/linalg.hpp"
#include "opframe/random.hpp"

namespace opframe {

std::string to_string(Producer producer) {
  switch (producer) {
    case Producer::WeakADual: return "weak_a_dual_thm";
    case Producer::KDual: return "k_dual_thm";
    case Producer::Interchange: return "interchange_thm";
    case Producer::Canonical: return "canonical";
    case Producer::User: return "user";
  }
  return "user";
}

Producer parse_producer(const std::string& name) {
  if (name == "weak_a_dual_thm") return Producer::WeakADual;
  if (name == "k_dual_thm") return Producer::KDual;
  if (name == "interchange_thm") return Producer::Interchange;
  if (name == "canonical") return Producer::Canonical;
  if (name == "user") return Producer::User;
  fail(ErrorCode::InvalidArgument, "unknown producer '" + name + "'");
}

namespace {

// The operator and the sequence in orthonormal coordinates of D(A) and D(A*).
struct WeakForm {
  Subspace u;  // D(A*), inside the codomain
  Subspace v;  // D(A)
  Matrix b;    // N x r_u: analysis restricted to D(A*)
  Matrix a;    // r_u x r_v: <A h, u>
};

WeakForm weak_form(const FrameSequence& seq, const OperatorModel& op) {
  require_same_space(op.codomain, seq.model(), "weak frame: sequence must live in the codomain");
  WeakForm w{op.effective_adjoint_domain(), op.domain, Matrix(), Matrix()};
  w.b = w.u.coordinates(seq.vectors()).adjoint();
  w.a = w.u.coordinates(op.domain.right_embed(op.matrix));
  if (w.a.size() == 0 || w.a.cwiseAbs().maxCoeff() == 0.0)
    fail(ErrorCode::DegenerateOperator, op.name + ": A* vanishes on D(A*)");
  return w;
}

}  // namespace

FrameBounds weak_aframe_bound(const FrameSequence& seq, const OperatorModel& a, double frame_tol) {
  const WeakForm w = weak_form(seq, a);
  const PencilBound pb = pencil_bound(w.b, w.a.adjoint());
  return FrameBounds{pb.alpha, pb.beta, pb.alpha > frame_tol ? FrameKind::WeakAFrame : FrameKind::BesselOnly,
                     pb.inclusion_residual};
}

WeakFactor factor_weak(const FrameSequence& seq, const OperatorModel& a) {
  const WeakForm w = weak_form(seq, a);
  const Matrix bh = w.b.adjoint();
  WeakFactor out;
  out.m = pinv(bh) * w.a;
  out.residual = spectral_norm(bh * out.m - w.a) / spectral_norm(w.a);
  return out;
}

DualSequence weak_a_dual(const FrameSequence& seq, const OperatorModel& a, unsigned long long seed, double tol) {
  const WeakFactor f = factor_weak(seq, a);
  if (f.residual > tol)
    fail(ErrorCode::FactorizationFailed, "no bounded M with B* M = A (residual " + std::to_string(f.residual) + ")");
  FrameSequence t(a.input_model, a.domain.embed(f.m.adjoint()), seq.labels());
  const double cert = verify_weak_duality(seq, t, a, 100, seed).residual;
  return DualSequence{std::move(t), Producer::WeakADual, cert, false};
}

WeakDualityReport verify_weak_duality(const FrameSequence& seq, const FrameSequence& dual, const OperatorModel& a,
                                      int trials, unsigned long long seed) {
  require_same_space(a.codomain, seq.model(), "verify_weak_duality: sequence");
  require_same_space(a.input_model, dual.model(), "verify_weak_duality: dual");
  if (dual.size() != seq.size()) fail(ErrorCode::InvalidDimension, "verify_weak_duality: N differs");
  const Subspace u_space = a.effective_adjoint_domain();
  const Matrix hs = certificate_vectors(a.domain, trials, seed);
  const Matrix us = certificate_vectors(u_space, trials, seed + 1);
  const RealVector& w_in = a.input_model.weights();
  const RealVector& w_out = a.codomain.weights();

  const Matrix ah = a.matrix * hs;
  const Matrix lhs = us.adjoint() * (w_out.asDiagonal() * ah);
  const Matrix rhs = (us.adjoint() * (w_out.asDiagonal() * seq.vectors())) *
                     (dual.vectors().adjoint() * (w_in.asDiagonal() * hs));

  const RealVector ah_n = column_norms(a.codomain, ah);
  const RealVector u_n = column_norms(a.codomain, us);
  const RealVector h_n = column_norms(a.input_model, hs);
  // ||A* u|| as the sup over unit h in D(A) of |<A h, u>|.
  const Matrix astar_u = a.domain.coordinates(w_in.cwiseInverse().asDiagonal() * a.matrix.adjoint() *
                                              (w_out.asDiagonal() * us));
  const RealVector au_n = astar_u.colwise().norm();
  const double anorm = spectral_norm(euclidean_matrix(a));

  WeakDualityReport out;
  out.pairs = lhs.size();
  for (Index j = 0; j < lhs.cols(); ++j)
    for (Index i = 0; i < lhs.rows(); ++i) {
      const double scale = std::max({ah_n[j] * u_n[i], h_n[j] * au_n[i], 1e-14 * anorm * h_n[j] * u_n[i]});
      const double err = std::abs(lhs(i, j) - rhs(i, j));
      out.residual = std::max(out.residual, scale > 0.0 ? err / scale : err);
    }
  return out;
}

Decomposition adjoint_decomposition(const FrameSequence& seq, const FrameSequence& dual, const OperatorModel& a,
                                    const Vector& u) {
  require_same_space(a.codomain, seq.model(), "adjoint_decomposition: sequence");
  require_same_space(a.input_model, dual.model(), "adjoint_decomposition: dual");
  if (dual.size() != seq.size()) fail(ErrorCode::InvalidDimension, "adjoint_decomposition: N differs");
  const Subspace u_space = a.effective_adjoint_domain();
  if (!u_space.contains(u))
    fail(ErrorCode::DomainViolation, "u is outside D(A*) (distance " + std::to_string(u_space.violation(u)) + ")");
  const OperatorModel as = adjoint(a);
  const Vector exact = as.matrix * u;
  Decomposition out;
  out.value = synthesis(dual, analysis(seq, u));
  const double en = norm(a.input_model, exact);
  const double err = norm(a.input_model, out.value - exact);
  out.residual = en > 0.0 ? err / en : err;
  return out;
}

DualSequence interchange_dual(const FrameSequence& seq, const FrameSequence& dual, const OperatorModel& a,
                              double surjectivity_tol) {
  require_same_space(a.codomain, seq.model(), "interchange_dual: sequence");
  require_same_space(a.input_model, dual.model(), "interchange_dual: dual");
  const Matrix e = euclidean_matrix(a);
  double smin = 0.0;
  if (e.cols() >= e.rows()) {
    Eigen::BDCSVD<Matrix> svd(e);
    smin = svd.singularValues()[e.rows() - 1];
  }
  if (smin <= surjectivity_tol)
    fail(ErrorCode::NotSurjective, "smallest singular value " + std::to_string(smin) + " on the codomain");
  const OperatorModel pi = pseudo_inverse(a);
  const OperatorModel pis = adjoint(pi);
  FrameSequence h(a.codomain, pis.matrix * dual.vectors(), seq.labels());

  const Matrix us = certificate_vectors(a.effective_adjoint_domain(), 0, 0);
  const Matrix recon = h.vectors() * (analysis_matrix(seq) * us);
  const RealVector num = column_norms(a.codomain, recon - us);
  const RealVector den = column_norms(a.codomain, us);
  double cert = 0.0;
  for (Index j = 0; j < us.cols(); ++j) cert = std::max(cert, num[j] / den[j]);
  return DualSequence{std::move(h), Producer::Interchange, cert, false};
}

SynthesisFactorization factorize_synthesis(const FrameSequence& seq, const OperatorModel& a, double tol) {
  const WeakFactor f = factor_weak(seq, a);
  if (f.residual > tol)
    fail(ErrorCode::FactorizationFailed, "no bounded M with B* M = A (residual " + std::to_string(f.residual) + ")");
  OperatorModel r = synthesis_operator(seq);
  r.name = "R";
  const Matrix coord = a.domain.coordinates(Matrix::Identity(a.input_model.dim(), a.input_model.dim()));
  OperatorModel q = make_operator(a.input_model, HilbertModel::sequence(seq.size()), f.m * coord, "Q");
  q.domain = a.domain;
  const RealVector sw = a.codomain.sqrt_weights();
  const Matrix target = sw.asDiagonal() * a.domain.right_embed(a.matrix);
  const Matrix prod = sw.asDiagonal() * (seq.vectors() * f.m);
  return SynthesisFactorization{std::move(r), std::move(q), f.residual,
                                spectral_norm(prod - target) / spectral_norm(target)};
}

}  // namespace opframe
