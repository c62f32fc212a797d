#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "opframe/hilbert.hpp"
#include "opframe/seqops.hpp"

namespace opframe {

// A linear map between two models. The action is only trusted on `domain`;
// `adjoint_domain` is the declared domain of the adjoint (whole codomain when unset).
struct OperatorModel {
  HilbertModel input_model;
  HilbertModel codomain;
  Matrix matrix;  // codomain.dim() x input_model.dim()
  Subspace domain;
  std::optional<Subspace> adjoint_domain;
  std::string name;

  Subspace effective_adjoint_domain() const {
    return adjoint_domain ? *adjoint_domain : Subspace::full(codomain);
  }
};

OperatorModel make_operator(HilbertModel input, HilbertModel output, Matrix matrix, std::string name);
OperatorModel make_operator(const HilbertModel& space, Matrix matrix, std::string name);
OperatorModel with_domain(OperatorModel op, Subspace domain);
OperatorModel with_adjoint_domain(OperatorModel op, Subspace adjoint_domain);

struct Applied {
  Vector value;
  double domain_violation = 0.0;
};
// matrix * (projection onto domain) f, with the norm of the discarded part.
Applied apply(const OperatorModel& op, const Vector& f);
// Throws DomainViolation if f is outside the domain.
Vector apply_checked(const OperatorModel& op, const Vector& f, double rel_tol = kDomainTol);

// diag(sqrt(w_out)) M E, the operator in orthonormal domain coordinates.
Matrix euclidean_matrix(const OperatorModel& op);

OperatorModel adjoint(const OperatorModel& op);
OperatorModel pseudo_inverse(const OperatorModel& op, double rcond = kRcond);
// Adjoint of A viewed as a bounded map from the graph space H_A to the codomain.
OperatorModel graph_adjoint(const OperatorModel& op);
Complex graph_inner(const OperatorModel& op, const Vector& f, const Vector& g);
double graph_norm(const OperatorModel& op, const Vector& f);

// Re-expresses op with codomain equal to the orthonormal coordinates of a
// subspace that contains its range.
OperatorModel corestrict(const OperatorModel& op, const Subspace& target);

enum class DiffVariant { MinusIDdxH1, MinusIDdxH10, DdxH1 };
DiffVariant parse_diff_variant(const std::string& name);

// Differentiation on a grid. Closed grids use second-order summation-by-parts
// differences, whose weighted adjoint differs from the negated matrix only in
// the two boundary rows; periodic grids use Fourier differentiation.
OperatorModel diff_operator(const HilbertModel& grid, DiffVariant variant);

// Grid on [0, 2 cells) with 2 * pts_per_cell points per cell, spacing 1/pts_per_cell.
HilbertModel block_grid(Index cells, Index pts_per_cell);
OperatorModel block_multiplier(const std::vector<Complex>& alphas, Index cells, Index pts_per_cell);

struct TruncationFamily {
  std::function<std::pair<OperatorModel, FrameSequence>(Index)> generator;
  std::vector<Index> sizes;
};

enum class Probe { BesselBound, WeakAlpha, FrameAlpha };
Probe parse_probe(const std::string& name);
std::string to_string(Probe probe);

std::vector<std::pair<Index, double>> truncation_trajectory(const TruncationFamily& family, Probe probe);
std::vector<std::pair<Index, double>> truncation_trajectory(const TruncationFamily& family, const std::string& probe);

// A_N = diag(1..N) with g_n = n e_n.
TruncationFamily diagonal_parseval_family(std::vector<Index> sizes);

}  // namespace opframe
