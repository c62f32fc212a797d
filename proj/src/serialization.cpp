#include "opframe/serialization.hpp"

#include "opframe/error.hpp"

namespace opframe {

using nlohmann::json;

namespace {

std::string geometry_name(Geometry g) {
  switch (g) {
    case Geometry::Sequence: return "sequence";
    case Geometry::Closed: return "closed";
    case Geometry::Periodic: return "periodic";
  }
  return "sequence";
}

Geometry parse_geometry(const std::string& s) {
  if (s == "sequence") return Geometry::Sequence;
  if (s == "closed") return Geometry::Closed;
  if (s == "periodic") return Geometry::Periodic;
  fail(ErrorCode::InvalidArgument, "unknown geometry '" + s + "'");
}

std::vector<double> to_list(const RealVector& v) { return std::vector<double>(v.data(), v.data() + v.size()); }

RealVector from_list(const json& j) {
  const auto v = j.get<std::vector<double>>();
  return Eigen::Map<const RealVector>(v.data(), Index(v.size()));
}

void put_matrix(json& j, const Matrix& m) {
  std::vector<double> re, im;
  re.reserve(std::size_t(m.size()));
  im.reserve(std::size_t(m.size()));
  for (Index r = 0; r < m.rows(); ++r)
    for (Index c = 0; c < m.cols(); ++c) {
      re.push_back(m(r, c).real());
      im.push_back(m(r, c).imag());
    }
  j["re"] = re;
  j["im"] = im;
}

Matrix get_matrix(const json& j, Index rows, Index cols) {
  const auto re = j.at("re").get<std::vector<double>>();
  const auto im = j.at("im").get<std::vector<double>>();
  if (Index(re.size()) != rows * cols || Index(im.size()) != rows * cols)
    fail(ErrorCode::InvalidDimension, "serialized matrix has the wrong number of entries");
  Matrix m(rows, cols);
  for (Index r = 0; r < rows; ++r)
    for (Index c = 0; c < cols; ++c) m(r, c) = Complex(re[std::size_t(r * cols + c)], im[std::size_t(r * cols + c)]);
  return m;
}

json model_json(const HilbertModel& m) {
  return json{{"label", m.label()},   {"geometry", geometry_name(m.geometry())},
              {"lower", m.lower()},   {"upper", m.upper()},
              {"nodes", to_list(m.nodes())}};
}

HilbertModel model_from(const json& weights, const json* desc) {
  RealVector w = from_list(weights);
  if (!desc) return HilbertModel(std::move(w), "l2 truncation N=" + std::to_string(w.size()));
  return HilbertModel(std::move(w), desc->value("label", std::string()), from_list(desc->at("nodes")),
                      parse_geometry(desc->value("geometry", std::string("sequence"))), desc->value("lower", 0.0),
                      desc->value("upper", 0.0));
}

json subspace_json(const Subspace& s) {
  if (s.is_full()) return nullptr;
  const Matrix b = s.basis();
  json j{{"rows", b.rows()}, {"cols", b.cols()}};
  put_matrix(j, b);
  return j;
}

Subspace subspace_from(const json& j, const HilbertModel& ambient) {
  if (j.is_null()) return Subspace::full(ambient);
  return Subspace(ambient, get_matrix(j, j.at("rows").get<Index>(), j.at("cols").get<Index>()));
}

template <class F>
auto guarded(const char* what, F&& f) {
  try {
    return f();
  } catch (const json::exception& e) {
    fail(ErrorCode::InvalidArgument, std::string(what) + ": " + e.what());
  }
}

}  // namespace

json to_json(const FrameSequence& seq) {
  json j{{"dim", seq.dim()}, {"N", seq.size()}, {"weights", to_list(seq.model().weights())}, {"labels", seq.labels()}};
  put_matrix(j, seq.vectors());
  j["model"] = model_json(seq.model());
  if (!seq.label_pairs().empty()) j["label_pairs"] = seq.label_pairs();
  return j;
}

FrameSequence frame_sequence_from_json(const json& j) {
  return guarded("FrameSequence", [&] {
    const Index dim = j.at("dim").get<Index>();
    const Index n = j.at("N").get<Index>();
    const json* desc = j.contains("model") ? &j.at("model") : nullptr;
    HilbertModel model = model_from(j.at("weights"), desc);
    require_length(model, dim, "FrameSequence weights");
    FrameSequence seq(std::move(model), get_matrix(j, dim, n), j.at("labels").get<std::vector<long>>());
    if (j.contains("label_pairs")) seq.with_label_pairs(j.at("label_pairs").get<std::vector<std::array<long, 2>>>());
    return seq;
  });
}

json to_json(const OperatorModel& op) {
  std::vector<long> labels(static_cast<std::size_t>(op.input_model.dim()));
  for (std::size_t i = 0; i < labels.size(); ++i) labels[i] = long(i);
  json j{{"dim", op.matrix.rows()},
         {"N", op.matrix.cols()},
         {"weights", to_list(op.input_model.weights())},
         {"codomain_weights", to_list(op.codomain.weights())},
         {"labels", labels},
         {"codomain_dim", op.codomain.dim()},
         {"name", op.name}};
  put_matrix(j, op.matrix);
  j["input_model"] = model_json(op.input_model);
  j["codomain_model"] = model_json(op.codomain);
  j["domain_basis"] = subspace_json(op.domain);
  j["adjoint_domain_basis"] = op.adjoint_domain ? subspace_json(*op.adjoint_domain) : json(nullptr);
  j["has_adjoint_domain"] = op.adjoint_domain.has_value();
  return j;
}

OperatorModel operator_from_json(const json& j) {
  return guarded("OperatorModel", [&] {
    const Index rows = j.at("dim").get<Index>();
    const Index cols = j.at("N").get<Index>();
    const json* in_desc = j.contains("input_model") ? &j.at("input_model") : nullptr;
    const json* out_desc = j.contains("codomain_model") ? &j.at("codomain_model") : nullptr;
    HilbertModel in = model_from(j.at("weights"), in_desc);
    HilbertModel out = model_from(j.at("codomain_weights"), out_desc);
    if (j.at("codomain_dim").get<Index>() != out.dim()) fail(ErrorCode::InvalidDimension, "codomain_dim mismatch");
    OperatorModel op = make_operator(in, out, get_matrix(j, rows, cols), j.value("name", std::string()));
    op.domain = subspace_from(j.at("domain_basis"), in);
    if (j.value("has_adjoint_domain", false)) op.adjoint_domain = subspace_from(j.at("adjoint_domain_basis"), out);
    return op;
  });
}

json to_json(const DualSequence& dual) {
  json j = to_json(dual.sequence);
  j["producer"] = to_string(dual.producer);
  j["certificate_residual"] = dual.certificate_residual;
  j["graph_space"] = dual.graph_space;
  return j;
}

DualSequence dual_from_json(const json& j) {
  return guarded("DualSequence", [&] {
    return DualSequence{frame_sequence_from_json(j), parse_producer(j.at("producer").get<std::string>()),
                        j.at("certificate_residual").get<double>(), j.value("graph_space", false)};
  });
}

}  // namespace opframe
