#pragma once

#include <optional>
#include <string>

#include "opframe/types.hpp"

namespace opframe {

// How the grid nodes relate to a continuous space. Sequence models are plain
// truncated l2; Closed grids include both endpoints and use trapezoid weights;
// Periodic grids omit the right endpoint and use uniform weights.
enum class Geometry { Sequence, Closed, Periodic };

class HilbertModel {
 public:
  HilbertModel(RealVector weights, std::string label, RealVector nodes = {},
               Geometry geometry = Geometry::Sequence, double lower = 0.0, double upper = 0.0);

  static HilbertModel sequence(Index dim);
  static HilbertModel closed_interval(double lower, double upper, Index points);
  static HilbertModel periodic_interval(double lower, double upper, Index points);

  Index dim() const { return weights_.size(); }
  const RealVector& weights() const { return weights_; }
  const RealVector& nodes() const { return nodes_; }
  RealVector sqrt_weights() const { return weights_.cwiseSqrt(); }
  Geometry geometry() const { return geometry_; }
  double lower() const { return lower_; }
  double upper() const { return upper_; }
  double length() const { return upper_ - lower_; }
  // Node spacing for grid models; 1 for sequence models.
  double spacing() const;
  const std::string& label() const { return label_; }

  // Same dimension and the same weights (to rounding).
  bool same_space(const HilbertModel& other) const;

 private:
  RealVector weights_;
  RealVector nodes_;
  std::string label_;
  Geometry geometry_;
  double lower_;
  double upper_;
};

void require_same_space(const HilbertModel& a, const HilbertModel& b, const char* what);
void require_length(const HilbertModel& model, Index n, const char* what);

Complex inner(const HilbertModel& model, const Vector& f, const Vector& g);
double norm(const HilbertModel& model, const Vector& f);
// Column norms of a matrix of vectors.
RealVector column_norms(const HilbertModel& model, const Matrix& vectors);

// A subspace with a basis that is orthonormal for the ambient weighted inner
// product. The whole space is stored without a basis so that large grids
// never materialize an identity.
class Subspace {
 public:
  static Subspace full(const HilbertModel& ambient);
  Subspace(HilbertModel ambient, Matrix basis);

  const HilbertModel& ambient() const { return ambient_; }
  bool is_full() const { return !basis_.has_value(); }
  Index dim() const { return basis_ ? basis_->cols() : ambient_.dim(); }
  Matrix basis() const;

  // E * coords, where E maps orthonormal coordinates to ambient vectors.
  Matrix embed(const Matrix& coords) const;
  // E^H W f: orthonormal coordinates of the projection of f.
  Matrix coordinates(const Matrix& f) const;
  // M * E for a matrix whose columns are indexed by the ambient space.
  Matrix right_embed(const Matrix& m) const;

  Vector project(const Vector& f) const;
  double violation(const Vector& f) const;
  bool contains(const Vector& f, double rel_tol = kDomainTol) const;

 private:
  Subspace(HilbertModel ambient, std::optional<Matrix> basis, bool) : ambient_(std::move(ambient)), basis_(std::move(basis)) {}

  HilbertModel ambient_;
  std::optional<Matrix> basis_;
};

// Modified Gram-Schmidt with one reorthogonalization pass. Columns whose
// remaining norm falls below drop_tol (relative to their original norm) are dropped.
Subspace orthonormalize(const Matrix& vectors, const HilbertModel& model, double drop_tol = 1e-10);

}  // namespace opframe
