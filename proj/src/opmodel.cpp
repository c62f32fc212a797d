#include "opframe/opmodel.hpp"

#include <cmath>
#include <numbers>

#include "opframe/error.hpp"
#include "opframe/linalg.hpp"
#include "opframe/weakframes.hpp"

namespace opframe {

OperatorModel make_operator(HilbertModel input, HilbertModel output, Matrix matrix, std::string name) {
  if (matrix.rows() != output.dim() || matrix.cols() != input.dim())
    fail(ErrorCode::InvalidDimension, "operator " + name + ": matrix is " + std::to_string(matrix.rows()) + "x" +
                                          std::to_string(matrix.cols()) + ", models are " +
                                          std::to_string(output.dim()) + "x" + std::to_string(input.dim()));
  Subspace dom = Subspace::full(input);
  return OperatorModel{std::move(input), std::move(output), std::move(matrix), std::move(dom), std::nullopt,
                       std::move(name)};
}

OperatorModel make_operator(const HilbertModel& space, Matrix matrix, std::string name) {
  return make_operator(space, space, std::move(matrix), std::move(name));
}

OperatorModel with_domain(OperatorModel op, Subspace domain) {
  require_same_space(domain.ambient(), op.input_model, "with_domain");
  op.domain = std::move(domain);
  return op;
}

OperatorModel with_adjoint_domain(OperatorModel op, Subspace adjoint_domain) {
  require_same_space(adjoint_domain.ambient(), op.codomain, "with_adjoint_domain");
  op.adjoint_domain = std::move(adjoint_domain);
  return op;
}

Applied apply(const OperatorModel& op, const Vector& f) {
  require_length(op.input_model, f.size(), "apply");
  const Vector p = op.domain.project(f);
  return Applied{op.matrix * p, norm(op.input_model, f - p)};
}

Vector apply_checked(const OperatorModel& op, const Vector& f, double rel_tol) {
  Applied a = apply(op, f);
  if (a.domain_violation > rel_tol * norm(op.input_model, f))
    fail(ErrorCode::DomainViolation, op.name + ": argument is outside the domain (distance " +
                                         std::to_string(a.domain_violation) + ")");
  return std::move(a.value);
}

Matrix euclidean_matrix(const OperatorModel& op) {
  return op.codomain.sqrt_weights().asDiagonal() * op.domain.right_embed(op.matrix);
}

OperatorModel adjoint(const OperatorModel& op) {
  Matrix m = op.input_model.weights().cwiseInverse().asDiagonal() * op.matrix.adjoint() *
             op.codomain.weights().asDiagonal();
  // <A f, u> only sees f in D(A), so A* u is fixed up to D(A)^perp; take the part in D(A).
  if (!op.domain.is_full()) m = op.domain.embed(op.domain.coordinates(m));
  OperatorModel out{op.codomain, op.input_model, std::move(m), op.effective_adjoint_domain(), op.domain,
                    op.name + "*"};
  return out;
}

OperatorModel pseudo_inverse(const OperatorModel& op, double rcond) {
  const Matrix p = pinv(euclidean_matrix(op), rcond);
  Matrix m = op.domain.embed(p) * op.codomain.sqrt_weights().asDiagonal();
  return make_operator(op.codomain, op.input_model, std::move(m), "pinv(" + op.name + ")");
}

OperatorModel graph_adjoint(const OperatorModel& op) {
  const Matrix e = euclidean_matrix(op);
  const Matrix g = Matrix::Identity(e.cols(), e.cols()) + e.adjoint() * e;
  Eigen::LLT<Matrix> llt(g);
  if (llt.info() != Eigen::Success) fail(ErrorCode::DegenerateOperator, "graph metric is not positive definite");
  const Matrix y = llt.solve(e.adjoint());
  Matrix m = op.domain.embed(y) * op.codomain.sqrt_weights().asDiagonal();
  return make_operator(op.codomain, op.input_model, std::move(m), op.name + "#");
}

Complex graph_inner(const OperatorModel& op, const Vector& f, const Vector& g) {
  const Vector af = apply_checked(op, f);
  const Vector ag = apply_checked(op, g);
  return inner(op.input_model, f, g) + inner(op.codomain, af, ag);
}

double graph_norm(const OperatorModel& op, const Vector& f) { return std::sqrt(std::real(graph_inner(op, f, f))); }

OperatorModel corestrict(const OperatorModel& op, const Subspace& target) {
  require_same_space(target.ambient(), op.codomain, "corestrict");
  const Matrix range = op.domain.right_embed(op.matrix);
  const Matrix back = target.embed(target.coordinates(range));
  const double scale = column_norms(op.codomain, range).maxCoeff();
  const double miss = column_norms(op.codomain, range - back).maxCoeff();
  if (miss > kInclusionTol * scale)
    fail(ErrorCode::RangeNotIncluded, "corestrict: range leaves the target subspace (" + std::to_string(miss) + ")");
  OperatorModel out = make_operator(op.input_model, HilbertModel::sequence(target.dim()), target.coordinates(op.matrix),
                                    op.name + "|" + std::to_string(target.dim()));
  out.domain = op.domain;
  return out;
}

DiffVariant parse_diff_variant(const std::string& name) {
  if (name == "minus_i_ddx_H1") return DiffVariant::MinusIDdxH1;
  if (name == "minus_i_ddx_H10") return DiffVariant::MinusIDdxH10;
  if (name == "ddx_H1") return DiffVariant::DdxH1;
  fail(ErrorCode::InvalidArgument, "unknown differentiation variant '" + name + "'");
}

namespace {

// Second-order summation-by-parts first derivative: H D + (H D)^T = diag(-1, 0, ..., 0, 1)
// for the trapezoid weights H.
RealMatrix sbp_derivative(Index d, double h) {
  RealMatrix D = RealMatrix::Zero(d, d);
  D(0, 0) = -1.0 / h;
  D(0, 1) = 1.0 / h;
  for (Index i = 1; i + 1 < d; ++i) {
    D(i, i - 1) = -0.5 / h;
    D(i, i + 1) = 0.5 / h;
  }
  D(d - 1, d - 2) = -1.0 / h;
  D(d - 1, d - 1) = 1.0 / h;
  return D;
}

RealMatrix fourier_derivative(Index d, double period) {
  RealMatrix D = RealMatrix::Zero(d, d);
  const double c = std::numbers::pi / period;
  for (Index j = 0; j < d; ++j)
    for (Index k = 0; k < d; ++k) {
      if (j == k) continue;
      const double t = std::numbers::pi * double(j - k) / double(d);
      const double sign = ((j - k) % 2 == 0) ? 1.0 : -1.0;
      D(j, k) = d % 2 == 0 ? c * sign / std::tan(t) : c * sign / std::sin(t);
    }
  return D;
}

Subspace zero_boundary_subspace(const HilbertModel& grid) {
  const Index d = grid.dim();
  Matrix q = Matrix::Zero(d, d - 2);
  for (Index i = 1; i + 1 < d; ++i) q(i, i - 1) = 1.0 / std::sqrt(grid.weights()[i]);
  return Subspace(grid, std::move(q));
}

}  // namespace

OperatorModel diff_operator(const HilbertModel& grid, DiffVariant variant) {
  if (grid.dim() < 16) fail(ErrorCode::GridTooCoarse, "differentiation needs at least 16 grid points");
  if (grid.geometry() == Geometry::Sequence) fail(ErrorCode::GridMismatch, "differentiation needs an interval grid");
  const bool minus_i = variant != DiffVariant::DdxH1;
  const Complex factor = minus_i ? Complex(0.0, -1.0) : Complex(1.0, 0.0);
  const std::string name = minus_i ? "-i d/dx" : "d/dx";

  if (grid.geometry() == Geometry::Periodic) {
    if (variant == DiffVariant::MinusIDdxH10)
      fail(ErrorCode::GridMismatch, "Dirichlet variant has no meaning on a periodic grid");
    return make_operator(grid, factor * fourier_derivative(grid.dim(), grid.length()).cast<Complex>(),
                         name + " (periodic)");
  }

  OperatorModel op =
      make_operator(grid, factor * sbp_derivative(grid.dim(), grid.spacing()).cast<Complex>(), name);
  const Subspace z = zero_boundary_subspace(grid);
  if (variant == DiffVariant::MinusIDdxH10) {
    op.domain = z;
    op.name += " on H10";
  } else {
    op.adjoint_domain = z;
    op.name += " on H1";
  }
  return op;
}

HilbertModel block_grid(Index cells, Index pts_per_cell) {
  if (cells < 1 || pts_per_cell < 1) fail(ErrorCode::InvalidDimension, "block grid needs cells, pts_per_cell >= 1");
  return HilbertModel::periodic_interval(0.0, 2.0 * double(cells), 2 * cells * pts_per_cell);
}

OperatorModel block_multiplier(const std::vector<Complex>& alphas, Index cells, Index pts_per_cell) {
  if (Index(alphas.size()) != cells) fail(ErrorCode::InvalidDimension, "one multiplier per cell is required");
  const HilbertModel grid = block_grid(cells, pts_per_cell);
  const Index p = pts_per_cell;
  Matrix m = Matrix::Zero(grid.dim(), grid.dim());
  for (Index k = 0; k < cells; ++k)
    for (Index j = 0; j < p; ++j) {
      const Index src = 2 * k * p + j;
      m(src, src) = alphas[std::size_t(k)];
      m(src + p, src) = alphas[std::size_t(k)];
    }
  return make_operator(grid, std::move(m), "block multiplier");
}

Probe parse_probe(const std::string& name) {
  if (name == "bessel_bound") return Probe::BesselBound;
  if (name == "weak_alpha") return Probe::WeakAlpha;
  if (name == "frame_alpha") return Probe::FrameAlpha;
  fail(ErrorCode::InvalidProbe, "unknown probe '" + name + "'");
}

std::string to_string(Probe probe) {
  switch (probe) {
    case Probe::BesselBound: return "bessel_bound";
    case Probe::WeakAlpha: return "weak_alpha";
    case Probe::FrameAlpha: return "frame_alpha";
  }
  return "unknown";
}

std::vector<std::pair<Index, double>> truncation_trajectory(const TruncationFamily& family, Probe probe) {
  std::vector<std::pair<Index, double>> out;
  out.reserve(family.sizes.size());
  for (Index n : family.sizes) {
    const auto [op, seq] = family.generator(n);
    double v = 0.0;
    switch (probe) {
      case Probe::BesselBound: v = frame_bounds(seq).beta; break;
      case Probe::FrameAlpha: v = frame_bounds(seq).alpha; break;
      case Probe::WeakAlpha: v = weak_aframe_bound(seq, op).alpha; break;
    }
    out.emplace_back(n, v);
  }
  return out;
}

std::vector<std::pair<Index, double>> truncation_trajectory(const TruncationFamily& family, const std::string& probe) {
  return truncation_trajectory(family, parse_probe(probe));
}

TruncationFamily diagonal_parseval_family(std::vector<Index> sizes) {
  TruncationFamily fam;
  fam.sizes = std::move(sizes);
  fam.generator = [](Index n) {
    const HilbertModel space = HilbertModel::sequence(n);
    Vector diag(n);
    for (Index i = 0; i < n; ++i) diag[i] = double(i + 1);
    Matrix a = diag.asDiagonal();
    std::vector<long> labels(static_cast<std::size_t>(n));
    for (Index i = 0; i < n; ++i) labels[std::size_t(i)] = long(i + 1);
    FrameSequence seq(space, a, labels);
    return std::pair{make_operator(space, a, "diag(1.." + std::to_string(n) + ")"), std::move(seq)};
  };
  return fam;
}

}  // namespace opframe
