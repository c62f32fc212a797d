#pragma once

#include "opframe/dual.hpp"
#include "opframe/opmodel.hpp"

namespace opframe {

// Optimal constants in  alpha ||K* f||^2 <= sum |<f, g_n>|^2 <= beta ||f||^2.
// K maps some model J into seq.model(). Throws DegenerateOperator for K = 0.
FrameBounds kframe_bounds(const FrameSequence& seq, const OperatorModel& k, double frame_tol = kFrameTol);

struct RangeInclusion {
  bool included = false;
  double residual = 0.0;
};
// Projects each column of K onto R(D) with D D^+.
RangeInclusion range_inclusion(const OperatorModel& k, const FrameSequence& seq, double tol = kInclusionTol);

// M = D^+ K in orthonormal coordinates of the domain of K, with the relative
// residual ||K - D M|| / ||K|| (operator norms on the domain).
struct SynthesisFactor {
  Matrix m;  // N x dim(domain of K)
  double residual = 0.0;
};
SynthesisFactor factor_through_synthesis(const FrameSequence& seq, const OperatorModel& k);

// k_n = M^* e_n in J, satisfying K f = sum <f, k_n>_J g_n.
DualSequence k_dual(const FrameSequence& seq, const OperatorModel& k, unsigned long long seed = 0);

// Certificate: max over test f of ||K f - sum <f, k_n>_J g_n|| / ||K f||.
double k_dual_residual(const FrameSequence& seq, const FrameSequence& kdual, const OperatorModel& k,
                       int trials = 100, unsigned long long seed = 0);

// alpha ||A# f||_A^2 <= sum |<f, g_n>|^2 <= beta ||f||^2 with A viewed as a
// bounded map from its graph space.
FrameBounds aframe_bounds_graph(const FrameSequence& seq, const OperatorModel& a, double frame_tol = kFrameTol);

// k_n in D(A) with A f = sum <f, k_n>_A g_n (graph inner product).
DualSequence a_dual_graph(const FrameSequence& seq, const OperatorModel& a, unsigned long long seed = 0);
double a_dual_residual(const FrameSequence& seq, const FrameSequence& kdual, const OperatorModel& a, int trials = 100,
                       unsigned long long seed = 0);

}  // namespace opframe
