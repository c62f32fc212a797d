#pragma once

#include <nlohmann/json.hpp>

#include "opframe/dual.hpp"
#include "opframe/opmodel.hpp"

namespace opframe {

// FrameSequence: {dim, N, weights, labels, re, im} with re/im the row-major
// dim x N matrix, plus the model description needed to rebuild grids.
nlohmann::json to_json(const FrameSequence& seq);
FrameSequence frame_sequence_from_json(const nlohmann::json& j);

// OperatorModel: {dim (rows), N (cols), weights (input), codomain_weights,
// labels, re, im, codomain_dim, domain_basis, adjoint_domain_basis, name}.
nlohmann::json to_json(const OperatorModel& op);
OperatorModel operator_from_json(const nlohmann::json& j);

// DualSequence: the FrameSequence fields plus {producer, certificate_residual, graph_space}.
nlohmann::json to_json(const DualSequence& dual);
DualSequence dual_from_json(const nlohmann::json& j);

}  // namespace opframe
