#include <doctest.h>

#include "opframe/error.hpp"
#include "opframe/hilbert.hpp"
#include "opframe/opmodel.hpp"
#include "opframe/random.hpp"
#include "oracles.hpp"

using namespace opframe;

namespace {

Vector vec(std::initializer_list<Complex> xs) {
  Vector v(Index(xs.size()));
  Index i = 0;
  for (Complex x : xs) v[i++] = x;
  return v;
}

Matrix weighted_gram(const Subspace& s) {
  const Matrix b = s.basis();
  return b.adjoint() * s.ambient().weights().asDiagonal() * b;
}

}  // namespace

TEST_CASE("inner: orthogonal and self products in l2") {
  const HilbertModel m = HilbertModel::sequence(2);
  CHECK(std::abs(inner(m, vec({1, 0}), vec({0, 1}))) == 0.0);
  const Complex v = inner(m, vec({1, Complex(0, 1)}), vec({1, Complex(0, 1)}));
  CHECK(v.real() == doctest::Approx(2.0));
  CHECK(v.imag() == 0.0);
}

TEST_CASE("inner: constant on a unit interval grid integrates to 1") {
  const Vector one = Vector::Ones(100);
  CHECK(std::abs(inner(HilbertModel::periodic_interval(0, 1, 100), one, one) - 1.0) <= 1e-12);
  CHECK(std::abs(inner(HilbertModel::closed_interval(0, 1, 100), one, one) - 1.0) <= 1e-12);
}

TEST_CASE("inner: conjugate linear in the second slot, matches loop oracle") {
  Rng rng(3);
  const HilbertModel m = HilbertModel::closed_interval(-1, 2, 37);
  const Vector f = rng.complex_normal(37, 1), g = rng.complex_normal(37, 1);
  const Complex s(0.3, -1.7);
  CHECK(std::abs(inner(m, f, s * g) - std::conj(s) * inner(m, f, g)) <= 1e-12);
  CHECK(std::abs(inner(m, f, g) - oracle::inner(m.weights(), f, g)) <= 1e-12);
}

TEST_CASE("inner: dimension mismatch") {
  const HilbertModel m = HilbertModel::sequence(3);
  try {
    (void)inner(m, Vector::Ones(3), Vector::Ones(2));
    FAIL("expected InvalidDimension");
  } catch (const FrameError& e) {
    CHECK(e.code() == ErrorCode::InvalidDimension);
  }
}

TEST_CASE("weights must be positive") {
  CHECK_THROWS_AS(HilbertModel(RealVector::Constant(3, 1.0).cwiseProduct(RealVector::LinSpaced(3, -1, 1)), "bad"),
                  FrameError);
}

TEST_CASE("norm: positive definite and Cauchy-Schwarz on random vectors") {
  Rng rng(11);
  for (int t = 0; t < 1000; ++t) {
    const Index d = rng.integer(1, 12);
    RealVector w(d);
    for (Index i = 0; i < d; ++i) w[i] = rng.uniform(0.01, 3.0);
    const HilbertModel m(w, "random weights");
    const Vector f = rng.complex_normal(d, 1), g = rng.complex_normal(d, 1);
    const double ff = inner(m, f, f).real();
    REQUIRE(ff > 0.0);
    CHECK(std::abs(inner(m, f, f).imag()) <= 1e-12 * ff);
    CHECK(std::abs(inner(m, f, g)) <= norm(m, f) * norm(m, g) * (1 + 1e-12));
  }
  CHECK(norm(HilbertModel::sequence(4), Vector::Zero(4)) == 0.0);
}

TEST_CASE("graph_inner examples") {
  Rng rng(5);
  const HilbertModel m2 = HilbertModel::sequence(2);
  const Vector f = rng.complex_normal(2, 1), g = rng.complex_normal(2, 1);
  const OperatorModel zero = make_operator(m2, Matrix::Zero(2, 2), "0");
  CHECK(std::abs(graph_inner(zero, f, g) - inner(m2, f, g)) <= 1e-14);

  const OperatorModel id = make_operator(m2, Matrix::Identity(2, 2), "I");
  CHECK(std::abs(graph_inner(id, vec({1, 0}), vec({1, 0})) - 2.0) <= 1e-14);

  const HilbertModel m3 = HilbertModel::sequence(3);
  Matrix d = Matrix::Zero(3, 3);
  d.diagonal() << 1, 2, 3;
  const OperatorModel a = make_operator(m3, d, "diag");
  CHECK(std::abs(graph_inner(a, vec({0, 0, 1}), vec({0, 0, 1})) - 10.0) <= 1e-14);
}

TEST_CASE("graph_inner: argument outside the domain") {
  const HilbertModel m = HilbertModel::sequence(2);
  Matrix e1 = Matrix::Zero(2, 1);
  e1(0, 0) = 1;
  const OperatorModel a = with_domain(make_operator(m, Matrix::Identity(2, 2), "I"), Subspace(m, e1));
  CHECK_NOTHROW((void)graph_inner(a, vec({1, 0}), vec({2, 0})));
  try {
    (void)graph_inner(a, vec({1, 1}), vec({1, 0}));
    FAIL("expected DomainViolation");
  } catch (const FrameError& e) {
    CHECK(e.code() == ErrorCode::DomainViolation);
  }
}

TEST_CASE("graph norm is positive on random operators") {
  Rng rng(17);
  for (int t = 0; t < 200; ++t) {
    const HilbertModel m = HilbertModel::sequence(6);
    const OperatorModel a = make_operator(m, rng.rank_deficient(6, 6, 3), "A");
    const Vector f = rng.complex_normal(6, 1);
    CHECK(graph_norm(a, f) >= norm(m, f));
  }
}

TEST_CASE("orthonormalize examples") {
  const HilbertModel m3 = HilbertModel::sequence(3);
  const Subspace s3 = orthonormalize(Matrix::Identity(3, 3), m3);
  CHECK((s3.basis() - Matrix::Identity(3, 3)).norm() <= 1e-14);

  const HilbertModel m2 = HilbertModel::sequence(2);
  Matrix v(2, 2);
  v << 1, 1, 0, 1;
  const Subspace s2 = orthonormalize(v, m2);
  CHECK((s2.basis() - Matrix::Identity(2, 2)).norm() <= 1e-14);

  v << 1, 2, 0, 0;
  const Subspace s1 = orthonormalize(v, m2);
  REQUIRE(s1.dim() == 1);
  CHECK(std::abs(s1.basis()(0, 0) - 1.0) <= 1e-14);
  CHECK(std::abs(s1.basis()(1, 0)) <= 1e-14);
}

TEST_CASE("orthonormalize: all-zero input") {
  try {
    (void)orthonormalize(Matrix::Zero(3, 2), HilbertModel::sequence(3));
    FAIL("expected EmptySpan");
  } catch (const FrameError& e) {
    CHECK(e.code() == ErrorCode::EmptySpan);
  }
}

TEST_CASE("orthonormalize: weighted orthonormality, same span, idempotent") {
  Rng rng(23);
  const HilbertModel m = HilbertModel::closed_interval(0, 1, 40);
  const Matrix v = rng.rank_deficient(40, 9, 6);
  const Subspace s = orthonormalize(v, m);
  REQUIRE(s.dim() == 6);
  CHECK((weighted_gram(s) - Matrix::Identity(6, 6)).norm() <= 1e-10);
  // Every input column lies in the span, and projection is idempotent.
  for (Index j = 0; j < v.cols(); ++j) {
    CHECK(s.violation(v.col(j)) <= 1e-10 * norm(m, v.col(j)));
    const Vector p = s.project(v.col(j));
    CHECK(norm(m, s.project(p) - p) <= 1e-12 * norm(m, p));
  }
  const Subspace again = orthonormalize(s.basis(), m);
  CHECK((again.basis() * again.coordinates(s.basis()) - s.basis()).norm() <= 1e-10);
  CHECK(again.dim() == s.dim());
}

TEST_CASE("full subspace behaves as the identity") {
  const HilbertModel m = HilbertModel::sequence(5);
  const Subspace s = Subspace::full(m);
  CHECK(s.is_full());
  CHECK(s.dim() == 5);
  Rng rng(1);
  const Vector f = rng.complex_normal(5, 1);
  CHECK((s.project(f) - f).norm() == 0.0);
  CHECK(s.contains(f));
}
