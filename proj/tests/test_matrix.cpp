#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <complex>

#include "bohrmod/errors.hpp"
#include "bohrmod/matrix.hpp"
#include "bohrmod/rng.hpp"
#include "doctest.h"

using namespace bohrmod;
using cpx = std::complex<double>;

namespace {

CMat mat2(cpx a, cpx b, cpx c, cpx d) {
  CMat m(2, 2);
  m << a, b, c, d;
  return m;
}

CMat diag2(double a, double b) {
  CMat m = CMat::Zero(2, 2);
  m(0, 0) = a;
  m(1, 1) = b;
  return m;
}

}  // namespace

TEST_CASE("hermitize averages a matrix with its adjoint") {
  Rng rng(1);
  const CMat m = random_gaussian(4, 4, rng);
  const CMat h = hermitize(m);
  CHECK(hermitian_defect(h) <= 1e-14 * std::max(1.0, h.norm()));
  CHECK((h - 0.5 * (m + m.adjoint().eval())).norm() <= 1e-15);
  CHECK_THROWS_AS(hermitize(random_gaussian(2, 3, rng)),
                  std::invalid_argument);
}

TEST_CASE("eigendecomposition of a known 2x2") {
  const auto e = eig_hermitian(mat2(2, 1, 1, 2));
  CHECK(e.eigenvalues(0) == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(e.eigenvalues(1) == doctest::Approx(3.0).epsilon(1e-13));
  const CMat rebuilt = e.eigenvectors *
                       e.eigenvalues.cast<cpx>().asDiagonal() *
                       e.eigenvectors.adjoint();
  CHECK((rebuilt - mat2(2, 1, 1, 2)).norm() <= 1e-13);
  const CMat gram = e.eigenvectors.adjoint() * e.eigenvectors;
  CHECK((gram - CMat::Identity(2, 2)).norm() <= 1e-13);
}

TEST_CASE("eigendecomposition rejects bad input") {
  CHECK_THROWS_AS(eig_hermitian(mat2(0, 1, 0, 0)), NumericError);
  CHECK_THROWS_AS(eig_hermitian(CMat::Identity(65, 65)),
                  std::invalid_argument);
}

TEST_CASE("square roots of known matrices") {
  CHECK((sqrt_psd(diag2(4, 9)) - diag2(2, 3)).norm() <= 1e-14);
  const double r3 = std::sqrt(3.0);
  const CMat expect =
      mat2((r3 + 1) / 2, (r3 - 1) / 2, (r3 - 1) / 2, (r3 + 1) / 2);
  CHECK((sqrt_psd(mat2(2, 1, 1, 2)) - expect).norm() <= 1e-12);
  CHECK_THROWS_AS(sqrt_psd(diag2(-1, 1)), NumericError);
}

TEST_CASE("sqrt_psd round trip over random PSD matrices") {
  for (int t = 0; t < 200; ++t) {
    Rng rng(trial_seed(99, "sqrt", static_cast<std::uint64_t>(t)));
    const int n = 1 + rng.uniform_int(0, 7);
    const CMat g = random_gaussian(n, n, rng);
    const CMat a = hermitize(g.adjoint() * g);
    const CMat s = sqrt_psd(a);
    CHECK(hermitian_defect(s) <= 1e-12 * std::max(1.0, s.norm()));
    CHECK((s * s - a).norm() <= 1e-11 * std::max(1.0, a.norm()));
    CHECK(eig_hermitian(s).eigenvalues(0) >= -1e-11 * std::max(1.0, s.norm()));
  }
}

TEST_CASE("inverse square root on well-conditioned input") {
  for (int t = 0; t < 100; ++t) {
    Rng rng(trial_seed(7, "invsqrt", static_cast<std::uint64_t>(t)));
    const int n = 1 + rng.uniform_int(0, 5);
    const CMat g = random_gaussian(n, n, rng);
    const CMat p = hermitize(g.adjoint() * g) +
                   0.5 * g.norm() * g.norm() * CMat::Identity(n, n);
    const CMat r = inv_sqrt_pd(p, 1e-6);
    CHECK((r * p * r - CMat::Identity(n, n)).norm() <= 1e-11);
  }
  CHECK_THROWS_AS(inv_sqrt_pd(diag2(1.0, 1e-9), 0.05), NumericError);
}

TEST_CASE("inverse square root floor is relative to the top eigenvalue") {
  // Eigenvalues (0.07, 1): fine for a 5% floor even though the Frobenius
  // norm is about 1, and still fine after a large uniform rescale.
  const CMat p = diag2(0.07, 1.0);
  CHECK_NOTHROW(inv_sqrt_pd(p, 0.05));
  CHECK_NOTHROW(inv_sqrt_pd(CMat(200.0 * p), 0.05));
  CHECK_THROWS_AS(inv_sqrt_pd(diag2(0.03, 1.0), 0.05), NumericError);
}

TEST_CASE("loewner slack on known pairs and antisymmetry") {
  CHECK(loewner_slack(diag2(1, 2), diag2(2, 4)) == doctest::Approx(1.0));
  CHECK(loewner_slack(diag2(2, 4), diag2(1, 2)) == doctest::Approx(-2.0));
  for (int t = 0; t < 100; ++t) {
    Rng rng(trial_seed(11, "slack", static_cast<std::uint64_t>(t)));
    const int n = 1 + rng.uniform_int(0, 5);
    const CMat a = random_hermitian(n, rng);
    const CMat b = random_hermitian(n, rng);
    const double fwd = loewner_slack(a, b);
    const double rev = loewner_slack(CMat(-b), CMat(-a));
    CHECK(std::abs(fwd - rev) <=
          1e-12 * std::max(1.0, std::max(a.norm(), b.norm())));
  }
}

TEST_CASE("operator norm and minimum singular value") {
  CHECK(operator_norm(diag2(3, -4)) == doctest::Approx(4.0));
  CHECK(min_singular_value(diag2(3, -4)) == doctest::Approx(3.0));
  CHECK(operator_norm(mat2(0, 2, 0, 0)) == doctest::Approx(2.0));
  CHECK(min_singular_value(mat2(0, 2, 0, 0)) == doctest::Approx(0.0));
}

TEST_CASE("random unitary matrices are unitary and seed-stable") {
  for (int n : {1, 2, 5, 8}) {
    const CMat u = random_unitary(n, 123);
    CHECK((u.adjoint() * u - CMat::Identity(n, n)).norm() <= 1e-12);
    CHECK((u - random_unitary(n, 123)).norm() == 0.0);
    CHECK((u - random_unitary(n, 124)).norm() > 1e-3);
  }
}

TEST_CASE("random hermitian reconstruction property") {
  for (int t = 0; t < 200; ++t) {
    Rng rng(trial_seed(5, "recon", static_cast<std::uint64_t>(t)));
    const int n = 1 + rng.uniform_int(0, 7);
    const CMat m = random_hermitian(n, rng);
    const auto e = eig_hermitian(m);
    for (Eigen::Index i = 0; i + 1 < e.eigenvalues.size(); ++i)
      CHECK(e.eigenvalues(i) <= e.eigenvalues(i + 1));
    const CMat rebuilt = e.eigenvectors *
                         e.eigenvalues.cast<cpx>().asDiagonal() *
                         e.eigenvectors.adjoint();
    CHECK((rebuilt - m).norm() <= 1e-12 * std::max(1.0, m.norm()));
  }
}

TEST_CASE("relative residual floors its denominator at one") {
  const CMat a = diag2(1e-12, 0);
  CHECK(rel_residual(a, CMat(diag2(0, 0))) <= 1e-12);
  CHECK(rel_residual(a, a) == 0.0);
}

TEST_CASE("tolerance bound scales with the operand") {
  const Tolerance tol;
  CHECK(tol.bound(0.0) == doctest::Approx(1e-12));
  CHECK(tol.bound(10.0) == doctest::Approx(1e-8));
}
