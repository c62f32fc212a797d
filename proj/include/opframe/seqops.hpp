#pragma once

#include <array>
#include <string>
#include <vector>

#include "opframe/hilbert.hpp"

namespace opframe {

struct OperatorModel;

// A finite family {g_n} stored as the columns of a dim x N matrix.
class FrameSequence {
 public:
  FrameSequence(HilbertModel model, Matrix vectors, std::vector<long> labels = {});

  const HilbertModel& model() const { return model_; }
  const Matrix& vectors() const { return vectors_; }
  const std::vector<long>& labels() const { return labels_; }
  Index size() const { return vectors_.cols(); }
  Index dim() const { return vectors_.rows(); }
  Vector operator[](Index n) const { return vectors_.col(n); }
  bool all_zero() const;

  // Pairs (first, second) for Z^2-indexed systems; empty otherwise.
  const std::vector<std::array<long, 2>>& label_pairs() const { return pairs_; }
  FrameSequence& with_label_pairs(std::vector<std::array<long, 2>> pairs);

  // Euclidean form diag(sqrt(w)) G, in which S and the Gram matrix are plain products.
  Matrix euclidean() const { return model_.sqrt_weights().asDiagonal() * vectors_; }

 private:
  HilbertModel model_;
  Matrix vectors_;
  std::vector<long> labels_;
  std::vector<std::array<long, 2>> pairs_;
};

// Generators call this; an all-zero family is allowed as a value (a broken
// dual, say) but never produced by a construction.
void require_nonzero(const FrameSequence& seq, const char* what);

enum class FrameKind { Frame, BesselOnly, KFrame, WeakAFrame, GraphAFrame };
std::string to_string(FrameKind kind);

struct FrameBounds {
  double alpha = 0.0;
  double beta = 0.0;
  FrameKind kind = FrameKind::BesselOnly;
  // Set by the pencil-based bounds: relative distance of the right-hand side
  // from the range of the synthesis side.
  double inclusion_residual = 0.0;
};

Vector analysis(const FrameSequence& seq, const Vector& f);
Vector synthesis(const FrameSequence& seq, const Vector& c);
Matrix analysis_matrix(const FrameSequence& seq);  // N x dim, rows g_n^H W
OperatorModel analysis_operator(const FrameSequence& seq);
OperatorModel synthesis_operator(const FrameSequence& seq);
OperatorModel frame_operator(const FrameSequence& seq);
Matrix gram(const FrameSequence& seq);

// Optimal bounds of the frame inequality. `kind` is Frame when
// alpha > frame_tol * beta.
FrameBounds frame_bounds(const FrameSequence& seq, double frame_tol = kFrameTol);

FrameSequence canonical_dual(const FrameSequence& seq, double frame_tol = kFrameTol);
// {S^+ g_n}: the canonical dual of the family as a frame for its own span.
FrameSequence span_dual(const FrameSequence& seq, double rcond = kRcond);

struct Reconstruction {
  Vector value;
  double residual = 0.0;  // ||value - f|| / ||f||
};
// sum_n <f, h_n> g_n with h_n taken from `dual`.
Reconstruction reconstruct(const FrameSequence& seq, const FrameSequence& dual, const Vector& f);

Vector partial_synthesis(const FrameSequence& seq, const Vector& c, Index upto);

FrameSequence permute(const FrameSequence& seq, const std::vector<Index>& order);

}  // namespace opframe
