#include "bohrmod/matrix.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <cmath>
#include <stdexcept>
#include <string>

#include "bohrmod/errors.hpp"

namespace bohrmod {

namespace {

void require_square(const CMat& m, const char* op) {
  if (m.rows() != m.cols()) {
    throw std::invalid_argument(std::string(op) + ": matrix must be square, got " +
                                std::to_string(m.rows()) + "x" +
                                std::to_string(m.cols()));
  }
  if (m.rows() < 1 || m.rows() > kMaxDim) {
    throw std::invalid_argument(std::string(op) + ": dimension " +
                                std::to_string(m.rows()) + " out of range [1, " +
                                std::to_string(kMaxDim) + "]");
  }
}

void require_hermitian(const CMat& m, const Tolerance& tol, const char* op) {
  const double defect = hermitian_defect(m);
  if (defect > tol.bound(m.norm())) {
    throw NumericError(std::string(op) + ": matrix not Hermitian, defect " +
                       std::to_string(defect));
  }
}

}  // namespace

bool finite_entries(const CMat& m) {
  return m.allFinite();
}

double hermitian_defect(const CMat& m) {
  if (m.rows() != m.cols()) return std::numeric_limits<double>::infinity();
  return (m - m.adjoint()).norm();
}

CMat hermitize(const CMat& m) {
  require_square(m, "hermitize");
  return 0.5 * (m + m.adjoint().eval());
}

HermitianEig eig_hermitian(const CMat& m, const Tolerance& tol) {
  require_square(m, "eig_hermitian");
  require_hermitian(m, tol, "eig_hermitian");
  Eigen::SelfAdjointEigenSolver<CMat> solver(hermitize(m));
  if (solver.info() != Eigen::Success) {
    throw NumericError("eig_hermitian: eigensolver did not converge");
  }
  return {solver.eigenvalues(), solver.eigenvectors()};
}

CMat sqrt_psd(const CMat& m, const Tolerance& tol) {
  const auto eig = eig_hermitian(m, tol);
  const double scale = m.norm();
  const double clamp_floor = -tol.bound(scale);
  RVec roots(eig.eigenvalues.size());
  for (Eigen::Index i = 0; i < eig.eigenvalues.size(); ++i) {
    const double lambda = eig.eigenvalues[i];
    if (lambda < clamp_floor) {
      throw NumericError("sqrt_psd: eigenvalue " + std::to_string(lambda) +
                         " below PSD tolerance");
    }
    roots[i] = std::sqrt(std::max(lambda, 0.0));
  }
  const CMat& u = eig.eigenvectors;
  return hermitize(u * roots.asDiagonal() * u.adjoint());
}

CMat inv_sqrt_pd(const CMat& m, double min_eig_floor, const Tolerance& tol) {
  const auto eig = eig_hermitian(m, tol);
  const double scale = eig.eigenvalues.cwiseAbs().maxCoeff();
  const double floor = min_eig_floor * scale;
  RVec roots(eig.eigenvalues.size());
  for (Eigen::Index i = 0; i < eig.eigenvalues.size(); ++i) {
    const double lambda = eig.eigenvalues[i];
    if (lambda < floor) {
      throw NumericError("inv_sqrt_pd: eigenvalue " + std::to_string(lambda) +
                         " below conditioning floor " + std::to_string(floor));
    }
    roots[i] = 1.0 / std::sqrt(lambda);
  }
  const CMat& u = eig.eigenvectors;
  return hermitize(u * roots.asDiagonal() * u.adjoint());
}

double loewner_slack(const CMat& a, const CMat& b, const Tolerance& tol) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw std::invalid_argument("loewner_slack: size mismatch");
  }
  require_square(a, "loewner_slack");
  require_hermitian(a, tol, "loewner_slack");
  require_hermitian(b, tol, "loewner_slack");
  const auto eig = eig_hermitian(hermitize(b - a), tol);
  return eig.eigenvalues[0];
}

double operator_norm(const CMat& m) {
  if (m.size() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<CMat> solver(CMat(m.adjoint() * m));
  const double top = solver.eigenvalues().maxCoeff();
  return std::sqrt(std::max(top, 0.0));
}

double min_singular_value(const CMat& m) {
  if (m.size() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<CMat> solver(CMat(m.adjoint() * m));
  const double bottom = solver.eigenvalues().minCoeff();
  return std::sqrt(std::max(bottom, 0.0));
}

CMat random_gaussian(int rows, int cols, Rng& rng) {
  CMat m(rows, cols);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) {
      m(i, j) = rng.gaussian_complex();
    }
  }
  return m;
}

CMat random_hermitian(int n, Rng& rng) {
  return hermitize(random_gaussian(n, n, rng));
}

CMat random_unitary(int n, Rng& rng) {
  if (n < 1 || n > kMaxDim) {
    throw std::invalid_argument("random_unitary: invalid dimension " +
                                std::to_string(n));
  }
  const CMat g = random_gaussian(n, n, rng);
  Eigen::HouseholderQR<CMat> qr(g);
  CMat q = qr.householderQ();
  const CMat r = qr.matrixQR().triangularView<Eigen::Upper>();
  // Fix column phases so the distribution is Haar, not QR-convention-skewed.
  for (int j = 0; j < n; ++j) {
    const std::complex<double> d = r(j, j);
    const double mag = std::abs(d);
    q.col(j) *= (mag > 0) ? (d / mag) : 1.0;
  }
  return q;
}

CMat random_unitary(int n, std::uint64_t seed) {
  Rng rng(seed);
  return random_unitary(n, rng);
}

double rel_residual(const CMat& lhs, const CMat& rhs) {
  return (lhs - rhs).norm() / std::max({lhs.norm(), rhs.norm(), 1.0});
}

}  // namespace bohrmod
