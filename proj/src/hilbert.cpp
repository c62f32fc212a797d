#include "opframe/hilbert.hpp"

#include <cmath>

#include "opframe/error.hpp"

namespace opframe {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidDimension: return "InvalidDimension";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::DomainViolation: return "DomainViolation";
    case ErrorCode::EmptySpan: return "EmptySpan";
    case ErrorCode::DegenerateSequence: return "DegenerateSequence";
    case ErrorCode::NotAFrame: return "NotAFrame";
    case ErrorCode::InvalidIndex: return "InvalidIndex";
    case ErrorCode::GridTooCoarse: return "GridTooCoarse";
    case ErrorCode::GridMismatch: return "GridMismatch";
    case ErrorCode::WindowOverflow: return "WindowOverflow";
    case ErrorCode::InvalidProbe: return "InvalidProbe";
    case ErrorCode::DegenerateOperator: return "DegenerateOperator";
    case ErrorCode::RangeNotIncluded: return "RangeNotIncluded";
    case ErrorCode::FactorizationFailed: return "FactorizationFailed";
    case ErrorCode::NotSurjective: return "NotSurjective";
    case ErrorCode::NotBiorthogonal: return "NotBiorthogonal";
  }
  return "Unknown";
}

HilbertModel::HilbertModel(RealVector weights, std::string label, RealVector nodes, Geometry geometry,
                           double lower, double upper)
    : weights_(std::move(weights)),
      nodes_(std::move(nodes)),
      label_(std::move(label)),
      geometry_(geometry),
      lower_(lower),
      upper_(upper) {
  if (weights_.size() == 0) fail(ErrorCode::InvalidDimension, "model needs at least one coordinate");
  for (Index i = 0; i < weights_.size(); ++i)
    if (!(weights_[i] > 0.0) || !std::isfinite(weights_[i]))
      fail(ErrorCode::InvalidArgument, "weights must be positive and finite");
  if (nodes_.size() == 0) nodes_ = RealVector::LinSpaced(weights_.size(), 0.0, double(weights_.size() - 1));
  if (nodes_.size() != weights_.size()) fail(ErrorCode::InvalidDimension, "nodes and weights differ in length");
}

HilbertModel HilbertModel::sequence(Index dim) {
  if (dim < 1) fail(ErrorCode::InvalidDimension, "sequence model needs dim >= 1");
  return HilbertModel(RealVector::Ones(dim), "l2 truncation N=" + std::to_string(dim));
}

HilbertModel HilbertModel::closed_interval(double lower, double upper, Index points) {
  if (points < 2) fail(ErrorCode::InvalidDimension, "closed grid needs at least two points");
  if (!(upper > lower)) fail(ErrorCode::InvalidArgument, "empty interval");
  const double h = (upper - lower) / double(points - 1);
  RealVector w = RealVector::Constant(points, h);
  w[0] = w[points - 1] = h / 2;
  RealVector x(points);
  for (Index i = 0; i < points; ++i) x[i] = lower + h * double(i);
  x[points - 1] = upper;
  return HilbertModel(std::move(w), "L2 closed grid d=" + std::to_string(points), std::move(x), Geometry::Closed,
                      lower, upper);
}

HilbertModel HilbertModel::periodic_interval(double lower, double upper, Index points) {
  if (points < 1) fail(ErrorCode::InvalidDimension, "periodic grid needs at least one point");
  if (!(upper > lower)) fail(ErrorCode::InvalidArgument, "empty interval");
  const double h = (upper - lower) / double(points);
  RealVector x(points);
  for (Index i = 0; i < points; ++i) x[i] = lower + h * double(i);
  return HilbertModel(RealVector::Constant(points, h), "L2 periodic grid d=" + std::to_string(points), std::move(x),
                      Geometry::Periodic, lower, upper);
}

double HilbertModel::spacing() const {
  switch (geometry_) {
    case Geometry::Closed: return length() / double(dim() - 1);
    case Geometry::Periodic: return length() / double(dim());
    case Geometry::Sequence: break;
  }
  return 1.0;
}

bool HilbertModel::same_space(const HilbertModel& other) const {
  if (dim() != other.dim()) return false;
  return (weights_ - other.weights_).cwiseAbs().maxCoeff() <= 1e-12 * weights_.cwiseAbs().maxCoeff();
}

void require_same_space(const HilbertModel& a, const HilbertModel& b, const char* what) {
  if (!a.same_space(b)) fail(ErrorCode::InvalidDimension, std::string(what) + ": models do not match");
}

void require_length(const HilbertModel& model, Index n, const char* what) {
  if (n != model.dim())
    fail(ErrorCode::InvalidDimension, std::string(what) + ": expected length " + std::to_string(model.dim()) +
                                          ", got " + std::to_string(n));
}

Complex inner(const HilbertModel& model, const Vector& f, const Vector& g) {
  require_length(model, f.size(), "inner");
  require_length(model, g.size(), "inner");
  Complex s = 0.0;
  const RealVector& w = model.weights();
  for (Index i = 0; i < f.size(); ++i) s += w[i] * f[i] * std::conj(g[i]);
  return s;
}

double norm(const HilbertModel& model, const Vector& f) {
  require_length(model, f.size(), "norm");
  return std::sqrt((model.weights().array() * f.array().abs2()).sum());
}

RealVector column_norms(const HilbertModel& model, const Matrix& vectors) {
  require_length(model, vectors.rows(), "column_norms");
  return (vectors.cwiseAbs2().transpose() * model.weights()).cwiseSqrt();
}

Subspace Subspace::full(const HilbertModel& ambient) { return Subspace(ambient, std::nullopt, true); }

Subspace::Subspace(HilbertModel ambient, Matrix basis) : ambient_(std::move(ambient)), basis_(std::move(basis)) {
  require_length(ambient_, basis_->rows(), "Subspace basis");
  if (basis_->cols() == 0) fail(ErrorCode::EmptySpan, "subspace basis has no columns");
  const Matrix gram = basis_->adjoint() * ambient_.weights().asDiagonal() * *basis_;
  const double defect = (gram - Matrix::Identity(gram.rows(), gram.cols())).cwiseAbs().maxCoeff();
  if (defect > 1e-10) fail(ErrorCode::InvalidArgument, "subspace basis is not orthonormal (defect " + std::to_string(defect) + ")");
}

Matrix Subspace::basis() const {
  if (basis_) return *basis_;
  return Matrix(ambient_.sqrt_weights().cwiseInverse().cast<Complex>().asDiagonal());
}

Matrix Subspace::embed(const Matrix& coords) const {
  if (basis_) return *basis_ * coords;
  return ambient_.sqrt_weights().cwiseInverse().asDiagonal() * coords;
}

Matrix Subspace::coordinates(const Matrix& f) const {
  require_length(ambient_, f.rows(), "Subspace::coordinates");
  if (basis_) return basis_->adjoint() * (ambient_.weights().asDiagonal() * f);
  return ambient_.sqrt_weights().asDiagonal() * f;
}

Matrix Subspace::right_embed(const Matrix& m) const {
  require_length(ambient_, m.cols(), "Subspace::right_embed");
  if (basis_) return m * *basis_;
  return m * ambient_.sqrt_weights().cwiseInverse().asDiagonal();
}

Vector Subspace::project(const Vector& f) const {
  if (!basis_) {
    require_length(ambient_, f.size(), "Subspace::project");
    return f;
  }
  return embed(coordinates(f));
}

double Subspace::violation(const Vector& f) const { return norm(ambient_, f - project(f)); }

bool Subspace::contains(const Vector& f, double rel_tol) const {
  return violation(f) <= rel_tol * norm(ambient_, f);
}

Subspace orthonormalize(const Matrix& vectors, const HilbertModel& model, double drop_tol) {
  require_length(model, vectors.rows(), "orthonormalize");
  const RealVector& w = model.weights();
  auto ip = [&](const Vector& a, const Vector& b) { return (b.adjoint() * w.asDiagonal() * a).value(); };
  std::vector<Vector> kept;
  for (Index j = 0; j < vectors.cols(); ++j) {
    Vector v = vectors.col(j);
    const double original = std::sqrt(std::abs(ip(v, v)));
    if (original == 0.0 || !std::isfinite(original)) continue;
    for (int pass = 0; pass < 2; ++pass)
      for (const Vector& q : kept) v -= ip(v, q) * q;
    const double rest = std::sqrt(std::abs(ip(v, v)));
    if (rest <= drop_tol * original) continue;
    kept.push_back(v / rest);
  }
  if (kept.empty()) fail(ErrorCode::EmptySpan, "all columns are numerically zero");
  Matrix q(vectors.rows(), Index(kept.size()));
  for (Index j = 0; j < q.cols(); ++j) q.col(j) = kept[std::size_t(j)];
  return Subspace(model, std::move(q));
}

}  // namespace opframe
