#include <doctest.h>

#include "opframe/constructions.hpp"
#include "opframe/error.hpp"
#include "opframe/opmodel.hpp"
#include "opframe/random.hpp"
#include "opframe/relframes.hpp"
#include "opframe/serialization.hpp"
#include "opframe/weakframes.hpp"

using namespace opframe;

namespace {

double max_abs(const Matrix& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

}  // namespace

TEST_CASE("FrameSequence round trip") {
  Rng rng(71);
  const HilbertModel grid = HilbertModel::closed_interval(-1, 3, 9);
  const FrameSequence seq(grid, rng.complex_normal(9, 4), {-2, 0, 5, 7});
  const nlohmann::json j = to_json(seq);
  CHECK(j.at("dim") == 9);
  CHECK(j.at("N") == 4);
  CHECK(j.at("re").size() == 36);
  // Row-major layout.
  CHECK(j.at("re")[1].get<double>() == seq.vectors()(0, 1).real());
  CHECK(j.at("im")[4].get<double>() == seq.vectors()(1, 0).imag());

  const FrameSequence back = frame_sequence_from_json(nlohmann::json::parse(j.dump()));
  CHECK(max_abs(back.vectors() - seq.vectors()) == 0.0);
  CHECK(back.labels() == seq.labels());
  CHECK(back.model().same_space(grid));
  CHECK(back.model().geometry() == Geometry::Closed);
  CHECK((back.model().nodes() - grid.nodes()).cwiseAbs().maxCoeff() == 0.0);
  CHECK(to_json(back).dump() == j.dump());
}

TEST_CASE("FrameSequence round trip keeps label pairs") {
  const HilbertModel grid = HilbertModel::periodic_interval(-4, 4, 64);
  const FrameSequence g = gabor_system(gaussian_window(), 1.0, 1.0, 1, 2, grid);
  const FrameSequence back = frame_sequence_from_json(to_json(g));
  CHECK(back.label_pairs() == g.label_pairs());
}

TEST_CASE("OperatorModel round trip with both domains") {
  const HilbertModel grid = HilbertModel::closed_interval(0, 1, 20);
  const OperatorModel a = diff_operator(grid, DiffVariant::MinusIDdxH1);
  const OperatorModel back = operator_from_json(nlohmann::json::parse(to_json(a).dump()));
  CHECK(max_abs(back.matrix - a.matrix) == 0.0);
  CHECK(back.name == a.name);
  CHECK(back.domain.is_full());
  REQUIRE(back.adjoint_domain.has_value());
  CHECK(max_abs(back.adjoint_domain->basis() - a.adjoint_domain->basis()) == 0.0);

  const OperatorModel h10 = diff_operator(grid, DiffVariant::MinusIDdxH10);
  const OperatorModel b10 = operator_from_json(to_json(h10));
  CHECK_FALSE(b10.domain.is_full());
  CHECK_FALSE(b10.adjoint_domain.has_value());
  CHECK(max_abs(b10.domain.basis() - h10.domain.basis()) == 0.0);

  // Different input and codomain models.
  Rng rng(72);
  const OperatorModel k = make_operator(HilbertModel::sequence(3), grid, rng.complex_normal(20, 3), "K");
  const nlohmann::json kj = to_json(k);
  CHECK(kj.at("codomain_dim") == 20);
  const OperatorModel kb = operator_from_json(kj);
  CHECK(kb.input_model.dim() == 3);
  CHECK(kb.codomain.same_space(grid));
  CHECK(max_abs(kb.matrix - k.matrix) == 0.0);
}

TEST_CASE("DualSequence round trip") {
  const Index d = 30;
  const DualSequence t = weak_a_dual(difference_sequence(d), difference_operator(d));
  const nlohmann::json j = to_json(t);
  CHECK(j.at("producer") == to_string(Producer::WeakADual));
  const DualSequence back = dual_from_json(nlohmann::json::parse(j.dump()));
  CHECK(back.producer == Producer::WeakADual);
  CHECK(back.certificate_residual == t.certificate_residual);
  CHECK_FALSE(back.graph_space);
  CHECK(max_abs(back.sequence.vectors() - t.sequence.vectors()) == 0.0);

  const HilbertModel m = HilbertModel::sequence(3);
  Matrix a = Matrix::Zero(3, 3);
  a.diagonal() << 1, 2, 3;
  const DualSequence kd = a_dual_graph(FrameSequence(m, Matrix::Identity(3, 3)), make_operator(m, a, "A"));
  CHECK(dual_from_json(to_json(kd)).graph_space);
}

TEST_CASE("malformed input") {
  auto expect_invalid = [](const nlohmann::json& j) {
    try {
      (void)frame_sequence_from_json(j);
      FAIL("expected an error");
    } catch (const FrameError& e) {
      CHECK((e.code() == ErrorCode::InvalidArgument || e.code() == ErrorCode::InvalidDimension));
    }
  };
  nlohmann::json j = to_json(difference_sequence(3));
  nlohmann::json short_re = j;
  short_re["re"].erase(0);
  expect_invalid(short_re);
  nlohmann::json no_im = j;
  no_im.erase("im");
  expect_invalid(no_im);
  nlohmann::json bad_type = j;
  bad_type["dim"] = "three";
  expect_invalid(bad_type);
  nlohmann::json bad_geometry = j;
  bad_geometry["model"]["geometry"] = "torus";
  expect_invalid(bad_geometry);
}
