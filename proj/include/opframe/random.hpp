#pragma once

#include <random>

#include "opframe/seqops.hpp"

namespace opframe {

// Seeded source for test vectors and random instances. Draws are
// deterministic for a given seed on a given standard library.
class Rng {
 public:
  explicit Rng(unsigned long long seed = 0) : engine_(seed) {}

  double uniform(double lo = 0.0, double hi = 1.0) { return std::uniform_real_distribution<double>(lo, hi)(engine_); }
  double normal() { return std::normal_distribution<double>(0.0, 1.0)(engine_); }
  Complex complex_normal() {
    const double re = normal();
    return {re, normal()};
  }
  Index integer(Index lo, Index hi) { return std::uniform_int_distribution<Index>(lo, hi)(engine_); }

  RealMatrix real_normal(Index rows, Index cols);
  Matrix complex_normal(Index rows, Index cols);
  // Haar-like unitary from the QR factor of a complex Gaussian matrix.
  Matrix unitary(Index d);
  // rows x cols matrix of exact rank `rank` (generic otherwise).
  Matrix rank_deficient(Index rows, Index cols, Index rank);
  // Square matrix with singular values spread log-uniformly over [1, cond].
  Matrix conditioned(Index d, double cond);

 private:
  std::mt19937_64 engine_;
};

// Test set for certificates: every basis vector of s followed by `trials`
// random combinations of them.
Matrix certificate_vectors(const Subspace& s, int trials, unsigned long long seed);

struct RieszPair {
  FrameSequence phis;
  FrameSequence psis;
};
// Biorthogonal Riesz bases of `model`: <phi_i, psi_j> = delta_ij, with the
// synthesis of phi having condition number at most cond.
RieszPair random_riesz_pair(const HilbertModel& model, double cond, Rng& rng);

}  // namespace opframe
