#pragma once

#include "opframe/dual.hpp"
#include "opframe/opmodel.hpp"

namespace opframe {

// Lower bound alpha ||A* f||^2 <= sum |<f, g_n>|^2 over f in D(A*), where
// ||A* f|| is read as the sup of |<f, A h>| over unit h in D(A) (this is the
// usual norm whenever D(A) is the whole input model). beta is the largest
// value of sum |<f, g_n>|^2 over unit f in D(A*), for diagnostics only.
FrameBounds weak_aframe_bound(const FrameSequence& seq, const OperatorModel& a, double frame_tol = kFrameTol);

// Solves B^* M = A on D(A) x D(A*) for the minimum-norm M, where B is the
// analysis operator restricted to D(A*).
struct WeakFactor {
  Matrix m;  // N x dim(D(A)), orthonormal domain coordinates
  double residual = 0.0;  // ||B^* M - A|| / ||A|| tested against D(A*)
};
WeakFactor factor_weak(const FrameSequence& seq, const OperatorModel& a);

// t_n = M^* e_n. Throws FactorizationFailed if the factorization residual exceeds tol.
DualSequence weak_a_dual(const FrameSequence& seq, const OperatorModel& a, unsigned long long seed = 0,
                         double tol = kFactorTol);

// max over sampled h in D(A), u in D(A*) of
//   |<A h, u> - sum <h, t_n><g_n, u>| / max(||A h|| ||u||, ||h|| ||A* u||).
struct WeakDualityReport {
  double residual = 0.0;
  Index pairs = 0;
};
WeakDualityReport verify_weak_duality(const FrameSequence& seq, const FrameSequence& dual, const OperatorModel& a,
                                      int trials = 100, unsigned long long seed = 0);

struct Decomposition {
  Vector value;
  double residual = 0.0;
};
// sum <u, g_n> t_n compared with A* u.
Decomposition adjoint_decomposition(const FrameSequence& seq, const FrameSequence& dual, const OperatorModel& a,
                                    const Vector& u);

// h_n = (A^+)^* t_n; certificate over a basis of D(A*).
DualSequence interchange_dual(const FrameSequence& seq, const FrameSequence& dual, const OperatorModel& a,
                              double surjectivity_tol = 1e-8);

struct SynthesisFactorization {
  OperatorModel r;  // synthesis of {g_n}, l2(N) -> codomain
  OperatorModel q;  // M, input model -> l2(N)
  double residual = 0.0;         // ||R Q - A|| / ||A|| tested against D(A*)
  double strong_residual = 0.0;  // same without the test space
};
SynthesisFactorization factorize_synthesis(const FrameSequence& seq, const OperatorModel& a,
                                           double tol = kFactorTol);

}  // namespace opframe
