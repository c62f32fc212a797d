#pragma once

#include <complex>

#include <Eigen/Dense>

namespace opframe {

using Complex = std::complex<double>;
using Vector = Eigen::VectorXcd;
using Matrix = Eigen::MatrixXcd;
using RealVector = Eigen::VectorXd;
using RealMatrix = Eigen::MatrixXd;
using Index = Eigen::Index;

// Default tolerances. Callers can override most of them per call.
inline constexpr double kDomainTol = 1e-8;     // relative distance for subspace membership
inline constexpr double kFrameTol = 1e-8;      // lower bound below which a family is not a (K-, weak A-) frame
inline constexpr double kRcond = 1e-10;        // singular-value cutoff for pseudo-inverses and ranks
inline constexpr double kInclusionTol = 1e-8;  // range inclusion residual
inline constexpr double kFactorTol = 1e-8;     // factorization residual

}  // namespace opframe
