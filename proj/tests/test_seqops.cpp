#include <doctest.h>

#include <algorithm>
#include <numeric>

#include "opframe/constructions.hpp"
#include "opframe/error.hpp"
#include "opframe/opmodel.hpp"
#include "opframe/random.hpp"
#include "opframe/seqops.hpp"
#include "oracles.hpp"

using namespace opframe;

namespace {

FrameSequence standard_basis(Index d) { return FrameSequence(HilbertModel::sequence(d), Matrix::Identity(d, d)); }

// {e1, e1, e2} in C^2.
FrameSequence repeated() {
  Matrix g = Matrix::Zero(2, 3);
  g(0, 0) = g(0, 1) = g(1, 2) = 1.0;
  return FrameSequence(HilbertModel::sequence(2), g);
}

FrameSequence mercedes() {
  Matrix g(2, 3);
  const double deg = kPi / 180.0;
  const double angles[] = {90 * deg, 210 * deg, 330 * deg};
  for (int k = 0; k < 3; ++k) {
    g(0, k) = std::cos(angles[k]);
    g(1, k) = std::sin(angles[k]);
  }
  return FrameSequence(HilbertModel::sequence(2), g);
}

FrameSequence random_seq(Rng& rng, Index d, Index n) {
  RealVector w(d);
  for (Index i = 0; i < d; ++i) w[i] = rng.uniform(0.2, 2.0);
  return FrameSequence(HilbertModel(w, "random weights"), rng.complex_normal(d, n));
}

double max_abs(const Matrix& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace

TEST_CASE("analysis examples") {
  Vector f(3);
  f << 1, 2, 3;
  CHECK(max_abs(analysis(standard_basis(3), f) - f) == 0.0);

  Vector ab(2);
  ab << Complex(1, 2), Complex(-3, 0.5);
  Vector expect(3);
  expect << ab[0], ab[0], ab[1];
  CHECK(max_abs(analysis(repeated(), ab) - expect) <= 1e-15);

  // Sampled exponentials on a matched periodic grid are orthonormal.
  const HilbertModel grid = HilbertModel::periodic_interval(0, 1, 256);
  const FrameSequence e = exponential_system(1.0, 40, grid);
  Vector f3(256);
  for (Index j = 0; j < 256; ++j) f3[j] = std::exp(2.0 * kPi * Complex(0, 1) * 3.0 * grid.nodes()[j]);
  const Vector c = analysis(e, f3);
  for (Index n = 0; n < c.size(); ++n) {
    if (e.labels()[std::size_t(n)] == 3)
      CHECK(std::abs(c[n] - 1.0) <= 1e-10);
    else
      CHECK(std::abs(c[n]) <= 1e-10);
  }
}

TEST_CASE("analysis: dimension mismatch") {
  try {
    (void)analysis(standard_basis(3), Vector::Ones(2));
    FAIL("expected InvalidDimension");
  } catch (const FrameError& e) {
    CHECK(e.code() == ErrorCode::InvalidDimension);
  }
}

TEST_CASE("synthesis examples and loop oracle") {
  Vector c(3);
  c << 1, 2, 3;
  CHECK(max_abs(synthesis(standard_basis(3), c) - c) == 0.0);
  CHECK(synthesis(repeated(), Vector::Zero(3)).norm() == 0.0);
  CHECK_THROWS_AS((void)synthesis(repeated(), Vector::Zero(2)), FrameError);

  Rng rng(2);
  const FrameSequence seq = random_seq(rng, 8, 16);
  const Vector cc = rng.complex_normal(16, 1);
  CHECK(max_abs(synthesis(seq, cc) - oracle::naive_synthesis(seq.vectors(), cc)) <= 1e-12);
  const Vector f = rng.complex_normal(8, 1);
  CHECK(max_abs(analysis(seq, f) - oracle::naive_analysis(seq.model().weights(), seq.vectors(), f)) <= 1e-12);
}

TEST_CASE("frame_operator examples") {
  CHECK(max_abs(frame_operator(standard_basis(3)).matrix - Matrix::Identity(3, 3)) == 0.0);
  Matrix d = Matrix::Zero(2, 2);
  d.diagonal() << 2, 1;
  CHECK(max_abs(frame_operator(repeated()).matrix - d) == 0.0);

  Rng rng(4);
  const FrameSequence seq = random_seq(rng, 6, 11);
  const Matrix s = frame_operator(seq).matrix;
  for (Index j = 0; j < 6; ++j) {
    const Vector e = Matrix::Identity(6, 6).col(j);
    const Vector composed =
        oracle::naive_synthesis(seq.vectors(), oracle::naive_analysis(seq.model().weights(), seq.vectors(), e));
    CHECK(max_abs(s.col(j) - composed) <= 1e-12);
  }
}

TEST_CASE("frame_bounds examples") {
  FrameBounds fb = frame_bounds(standard_basis(3));
  CHECK(fb.alpha == doctest::Approx(1.0));
  CHECK(fb.beta == doctest::Approx(1.0));
  CHECK(fb.kind == FrameKind::Frame);

  fb = frame_bounds(repeated());
  CHECK(std::abs(fb.alpha - 1.0) <= 1e-14);
  CHECK(std::abs(fb.beta - 2.0) <= 1e-14);

  fb = frame_bounds(mercedes());
  CHECK(std::abs(fb.alpha - 1.5) <= 1e-10);
  CHECK(std::abs(fb.beta - 1.5) <= 1e-10);
  const RealVector ev = oracle::pencil_eigenvalues(frame_operator(mercedes()).matrix, Matrix::Identity(2, 2));
  CHECK(std::abs(ev[0] - fb.alpha) <= 1e-10);
  CHECK(std::abs(ev[1] - fb.beta) <= 1e-10);
}

TEST_CASE("frame_bounds: too few vectors and the zero family") {
  Matrix g = Matrix::Zero(3, 2);
  g(0, 0) = g(1, 1) = 1;
  const FrameBounds fb = frame_bounds(FrameSequence(HilbertModel::sequence(3), g));
  CHECK(fb.alpha == 0.0);
  CHECK(fb.kind == FrameKind::BesselOnly);
  CHECK(frame_bounds(FrameSequence(HilbertModel::sequence(2), Matrix::Zero(2, 3))).beta == 0.0);
}

TEST_CASE("frame_bounds: optimal, realized by eigenvectors, against oracle") {
  Rng rng(8);
  for (int t = 0; t < 20; ++t) {
    const FrameSequence seq = random_seq(rng, 5, 9);
    const FrameBounds fb = frame_bounds(seq);
    CHECK(fb.alpha <= fb.beta + 1e-12);
    const Matrix ge = seq.euclidean();
    const RealVector sv = oracle::jacobi_singular_values(ge);
    CHECK(std::abs(fb.beta - sv[0] * sv[0]) <= 1e-10 * fb.beta);
    CHECK(std::abs(fb.alpha - sv[4] * sv[4]) <= 1e-10 * fb.beta);

    // Eigenvectors of S in weighted coordinates realize both bounds.
    Eigen::SelfAdjointEigenSolver<Matrix> es(ge * ge.adjoint());
    const RealVector isw = seq.model().sqrt_weights().cwiseInverse();
    for (Index k : {Index(0), Index(4)}) {
      const Vector f = isw.asDiagonal() * es.eigenvectors().col(k);
      const double sum = analysis(seq, f).squaredNorm();
      CHECK(std::abs(norm(seq.model(), f) - 1.0) <= 1e-12);
      CHECK(std::abs(sum - (k == 0 ? fb.alpha : fb.beta)) <= 1e-10 * fb.beta);
    }
  }
}

TEST_CASE("frame_bounds: column order does not matter") {
  Rng rng(9);
  const FrameSequence seq = random_seq(rng, 4, 10);
  std::vector<Index> order(10);
  std::iota(order.begin(), order.end(), Index(0));
  std::mt19937 shuffle(1);
  for (int t = 0; t < 10; ++t) {
    std::shuffle(order.begin(), order.end(), shuffle);
    const FrameBounds a = frame_bounds(seq), b = frame_bounds(permute(seq, order));
    CHECK(std::abs(a.alpha - b.alpha) <= 1e-12 * a.beta);
    CHECK(std::abs(a.beta - b.beta) <= 1e-12 * a.beta);
  }
}

TEST_CASE("analysis and synthesis are adjoint") {
  Rng rng(12);
  for (int t = 0; t < 50; ++t) {
    const FrameSequence seq = random_seq(rng, 7, 12);
    const Vector f = rng.complex_normal(7, 1), c = rng.complex_normal(12, 1);
    const Complex lhs = analysis(seq, f).dot(c);  // conj(c)^T C f
    const Complex lhs_l2 = oracle::inner(RealVector::Ones(12), analysis(seq, f), c);
    const Complex rhs = inner(seq.model(), f, synthesis(seq, c));
    CHECK(std::abs(lhs_l2 - rhs) <= 1e-12 * (1 + std::abs(rhs)));
    CHECK(std::abs(std::conj(lhs) - lhs_l2) <= 1e-12 * (1 + std::abs(rhs)));
  }
}

TEST_CASE("Gram and frame operator share nonzero spectrum") {
  Rng rng(13);
  const FrameSequence seq = random_seq(rng, 6, 10);
  RealVector eg = Eigen::SelfAdjointEigenSolver<Matrix>((gram(seq) + gram(seq).adjoint()) / 2).eigenvalues();
  const Matrix ge = seq.euclidean();
  RealVector es = Eigen::SelfAdjointEigenSolver<Matrix>(ge * ge.adjoint()).eigenvalues();
  // Gram has 4 extra zeros; compare the top 6.
  for (Index k = 0; k < 6; ++k) CHECK(std::abs(eg[4 + k] - es[k]) <= 1e-10 * es[5]);
  for (Index k = 0; k < 4; ++k) CHECK(std::abs(eg[k]) <= 1e-10 * es[5]);
}

TEST_CASE("canonical_dual examples") {
  const FrameSequence e3 = standard_basis(3);
  CHECK(max_abs(canonical_dual(e3).vectors() - e3.vectors()) <= 1e-15);

  Matrix expect = Matrix::Zero(2, 3);
  expect(0, 0) = expect(0, 1) = 0.5;
  expect(1, 2) = 1.0;
  CHECK(max_abs(canonical_dual(repeated()).vectors() - expect) <= 1e-15);

  Matrix g = Matrix::Zero(2, 1);
  g(0, 0) = 1;
  try {
    (void)canonical_dual(FrameSequence(HilbertModel::sequence(2), g));
    FAIL("expected NotAFrame");
  } catch (const FrameError& e) {
    CHECK(e.code() == ErrorCode::NotAFrame);
  }
}

TEST_CASE("canonical_dual: half-step exponentials are tight with bound 1/b") {
  // 2d consecutive half-integer frequencies on a d-point grid of [0, 1).
  const Index d = 32;
  const HilbertModel grid = HilbertModel::periodic_interval(0, 1, d);
  const double b = 0.5;
  const FrameSequence e = exponential_system(b, -d, d - 1, grid);
  const FrameBounds fb = frame_bounds(e);
  CHECK(std::abs(fb.alpha - 1.0 / b) <= 1e-10);
  CHECK(std::abs(fb.beta - 1.0 / b) <= 1e-10);
  // S = (1/b) I, so the canonical dual is b e_{nb}.
  CHECK(max_abs(canonical_dual(e).vectors() - b * e.vectors()) <= 1e-10);
  Rng rng(1);
  const Vector f = rng.complex_normal(d, 1);
  CHECK(reconstruct(e, canonical_dual(e), f).residual <= 1e-12);
}

TEST_CASE("canonical dual of the canonical dual is the original family") {
  Rng rng(14);
  const FrameSequence seq = random_seq(rng, 5, 8);
  const FrameSequence back = canonical_dual(canonical_dual(seq));
  CHECK(max_abs(back.vectors() - seq.vectors()) <= 1e-8 * max_abs(seq.vectors()));
}

TEST_CASE("span_dual reconstructs inside the span") {
  Rng rng(15);
  const HilbertModel m = HilbertModel::closed_interval(0, 1, 12);
  const FrameSequence seq(m, rng.rank_deficient(12, 7, 4));
  const FrameSequence h = span_dual(seq);
  const Vector f = seq.vectors() * Vector(rng.complex_normal(7, 1));
  CHECK(reconstruct(seq, h, f).residual <= 1e-10);
}

TEST_CASE("reconstruct") {
  Rng rng(16);
  for (int t = 0; t < 10; ++t) {
    const FrameSequence seq = random_seq(rng, 6, 10);
    const Vector f = rng.complex_normal(6, 1);
    CHECK(reconstruct(seq, canonical_dual(seq), f).residual <= 1e-8);
  }
  const FrameSequence e = standard_basis(4);
  CHECK(reconstruct(e, e, Vector(rng.complex_normal(4, 1))).residual <= 1e-14);
  CHECK_THROWS_AS((void)reconstruct(e, repeated(), Vector::Ones(4)), FrameError);
}

TEST_CASE("partial_synthesis") {
  const FrameSequence g = difference_sequence(50);
  Vector c(50);
  for (Index k = 0; k < 50; ++k) c[k] = 1.0 / double(k + 1);
  for (Index n : {Index(1), Index(2), Index(17), Index(50)}) {
    Vector en = Vector::Zero(50);
    en[n - 1] = 1.0;
    CHECK(max_abs(partial_synthesis(g, c, n) - en) <= 1e-12);
  }

  Rng rng(18);
  const FrameSequence seq = random_seq(rng, 4, 7);
  const FrameSequence dual = canonical_dual(seq);
  const Vector f = rng.complex_normal(4, 1);
  const Vector coef = analysis(dual, f);
  CHECK(max_abs(partial_synthesis(seq, coef, 7) - reconstruct(seq, dual, f).value) <= 1e-13);
  CHECK(max_abs(partial_synthesis(seq, coef, 1) - coef[0] * seq[0]) <= 1e-15);

  for (Index bad : {Index(0), Index(8)}) {
    try {
      (void)partial_synthesis(seq, coef, bad);
      FAIL("expected InvalidIndex");
    } catch (const FrameError& e) {
      CHECK(e.code() == ErrorCode::InvalidIndex);
    }
  }
}

TEST_CASE("FrameSequence: frame operator is positive semidefinite") {
  Rng rng(19);
  for (int t = 0; t < 20; ++t) {
    const FrameSequence seq = random_seq(rng, 5, Index(rng.integer(1, 9)));
    const Matrix ge = seq.euclidean();
    CHECK(Eigen::SelfAdjointEigenSolver<Matrix>(ge * ge.adjoint()).eigenvalues().minCoeff() >= -1e-10);
  }
  CHECK_THROWS_AS(FrameSequence(HilbertModel::sequence(2), Matrix::Zero(2, 0)), FrameError);
}
