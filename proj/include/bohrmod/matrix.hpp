#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>

#include "bohrmod/rng.hpp"

namespace bohrmod {

using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;
using RVec = Eigen::VectorXd;

/// Hard cap on dense dimensions; everything here is desk scale.
inline constexpr int kMaxDim = 64;

/// Comparison tolerance. The effective bound at scale s is max(abs, rel*s);
/// scales are Frobenius norms of the larger operand unless stated otherwise.
struct Tolerance {
  double rel = 1e-9;
  double abs = 1e-12;

  double bound(double scale) const { return std::max(abs, rel * scale); }
};

struct HermitianEig {
  RVec eigenvalues;   // ascending
  CMat eigenvectors;  // unitary, columns match eigenvalues
};

bool finite_entries(const CMat& m);

/// ‖M − M*‖_F.
double hermitian_defect(const CMat& m);

/// (M + M*)/2. Throws std::invalid_argument on non-square input.
CMat hermitize(const CMat& m);

/// Eigendecomposition of a Hermitian matrix, eigenvalues ascending.
/// Throws NumericError if m is not Hermitian within tolerance.
HermitianEig eig_hermitian(const CMat& m, const Tolerance& tol = {});

/// Unique PSD square root. Eigenvalues in [-tol*‖m‖_F, 0) are clamped to 0;
/// anything below that throws NumericError (genuinely not PSD).
CMat sqrt_psd(const CMat& m, const Tolerance& tol = {});

/// Inverse square root of a positive definite matrix. Requires
/// lambda_min(m) >= min_eig_floor * max|lambda|; below the floor throws
/// NumericError so generators can re-draw.
CMat inv_sqrt_pd(const CMat& m, double min_eig_floor = 0.05,
                 const Tolerance& tol = {});

/// lambda_min(b - a); a <= b in the Loewner order iff the result is
/// >= -tol.bound(max scale). Inputs must be Hermitian of equal size.
double loewner_slack(const CMat& a, const CMat& b, const Tolerance& tol = {});

/// Largest singular value.
double operator_norm(const CMat& m);

/// Smallest singular value (invertibility margin).
double min_singular_value(const CMat& m);

/// Haar-distributed unitary: QR of a complex Gaussian matrix with the phases
/// of the R diagonal folded into Q.
CMat random_unitary(int n, Rng& rng);
CMat random_unitary(int n, std::uint64_t seed);

/// iid standard complex Gaussian entries.
CMat random_gaussian(int rows, int cols, Rng& rng);

/// Random Hermitian matrix (hermitized Gaussian).
CMat random_hermitian(int n, Rng& rng);

/// ‖L − R‖_F / max(‖L‖_F, ‖R‖_F, 1).
double rel_residual(const CMat& lhs, const CMat& rhs);

}  // namespace bohrmod
