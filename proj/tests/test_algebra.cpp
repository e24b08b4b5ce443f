#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <complex>

#include "bohrmod/algebra.hpp"
#include "bohrmod/errors.hpp"
#include "doctest.h"

using namespace bohrmod;
using cpx = std::complex<double>;

TEST_CASE("shape parsing round trips") {
  const auto s = AlgebraShape::parse("2+3");
  CHECK(s.block_dims == std::vector<int>{2, 3});
  CHECK(s.linear_dim() == 13);
  CHECK(s.to_string() == "2+3");
  CHECK(AlgebraShape::parse("1").single_block());
  CHECK_THROWS_AS(AlgebraShape::parse(""), std::invalid_argument);
  CHECK_THROWS_AS(AlgebraShape::parse("2+"), std::invalid_argument);
  CHECK_THROWS_AS(AlgebraShape::parse("0+3"), std::invalid_argument);
  CHECK_THROWS_AS(AlgebraShape::parse("9+9"), std::invalid_argument);
}

TEST_CASE("unit is a two-sided identity") {
  const auto shape = AlgebraShape::parse("2+3");
  Rng rng(3);
  const auto a = AlgebraElement::random(shape, rng);
  const auto e = AlgebraElement::unit(shape);
  CHECK(rel_residual(e * a, a) <= 1e-15);
  CHECK(rel_residual(a * e, a) <= 1e-15);
  CHECK(AlgebraElement::zero(shape).norm() == 0.0);
}

TEST_CASE("products and adjoints act blockwise") {
  const auto shape = AlgebraShape::parse("2+1");
  CMat b0(2, 2);
  b0 << cpx(0, 0), cpx(2, 0), cpx(0, 0), cpx(0, 0);
  CMat b1(1, 1);
  b1 << cpx(0, 3);
  const AlgebraElement a(shape, {b0, b1});
  const auto prod = a * a.adjoint();
  CHECK(prod.block(0)(0, 0) == cpx(4, 0));
  CHECK(prod.block(0)(1, 1) == cpx(0, 0));
  CHECK(prod.block(1)(0, 0) == cpx(9, 0));
  CHECK(a.adjoint().block(1)(0, 0) == cpx(0, -3));
  CHECK((a + (-a)).frobenius_norm() == 0.0);
  CHECK(rel_residual(2.0 * a, a + a) <= 1e-15);
}

TEST_CASE("absolute value of a known nilpotent") {
  const auto shape = AlgebraShape::parse("2");
  CMat b(2, 2);
  b << 0, 2, 0, 0;
  const AlgebraElement a(shape, {b});
  const auto av = a.abs();
  CHECK(std::abs(av.block(0)(0, 0)) <= 1e-14);
  CHECK(av.block(0)(1, 1).real() == doctest::Approx(2.0));
  CHECK(std::abs(av.block(0)(0, 1)) <= 1e-14);
  CHECK(a.norm() == doctest::Approx(2.0));
}

TEST_CASE("C*-identity over random elements") {
  for (int t = 0; t < 200; ++t) {
    Rng rng(trial_seed(21, "cstar", static_cast<std::uint64_t>(t)));
    const AlgebraShape shape{{1 + t % 3, 1 + (t / 3) % 2}};
    const auto a = AlgebraElement::random(shape, rng);
    const double n = a.norm();
    CHECK((a.adjoint() * a).norm() ==
          doctest::Approx(n * n).epsilon(1e-10));
    CHECK((a.adjoint() * a).min_eigenvalue() >= -1e-12 * std::max(1.0, n * n));
    CHECK(a.adjoint().adjoint().frobenius_norm() ==
          doctest::Approx(a.frobenius_norm()));
  }
}

TEST_CASE("central elements are exactly the blockwise scalars") {
  const auto shape = AlgebraShape::parse("2+3");
  const auto c =
      AlgebraElement::from_block_scalars(shape, {cpx(2, 1), cpx(-0.5, 0)});
  CHECK(c.central_defect() <= 1e-15);
  CHECK(c.is_central());
  CHECK(c.block(0)(0, 1) == cpx(0, 0));
  CHECK(c.block(1)(2, 2) == cpx(-0.5, 0));
  Rng rng(17);
  const auto a = AlgebraElement::random(shape, rng);
  CHECK(rel_residual(c * a, a * c) <= 1e-14);
  CHECK_FALSE(a.is_central());
  CHECK_THROWS_AS(AlgebraElement::from_block_scalars(shape, {cpx(1, 0)}),
                  std::invalid_argument);
}

TEST_CASE("self adjointness predicates") {
  const auto shape = AlgebraShape::parse("3");
  Rng rng(9);
  const auto h = AlgebraElement::random_hermitian(shape, rng);
  CHECK(h.self_adjoint_defect() <= 1e-14 * std::max(1.0, h.frobenius_norm()));
  CHECK(h.is_self_adjoint());
  const auto g = AlgebraElement::random(shape, rng);
  CHECK_FALSE(g.is_self_adjoint());
}

TEST_CASE("spectral summaries across blocks") {
  const auto shape = AlgebraShape::parse("2+1");
  CMat b0 = CMat::Zero(2, 2);
  b0(0, 0) = 5;
  b0(1, 1) = -1;
  CMat b1(1, 1);
  b1 << 2;
  const AlgebraElement a(shape, {b0, b1});
  CHECK(a.min_eigenvalue() == doctest::Approx(-1.0));
  CHECK(a.min_singular_value() == doctest::Approx(1.0));
  CHECK(a.norm() == doctest::Approx(5.0));
  CHECK(loewner_slack(a, a) == doctest::Approx(0.0));
  CHECK(loewner_slack(AlgebraElement::zero(shape), a) == doctest::Approx(-1.0));
}

TEST_CASE("element construction validates block dimensions") {
  const auto shape = AlgebraShape::parse("2+3");
  CHECK_THROWS_AS(AlgebraElement(shape, {CMat::Zero(2, 2)}),
                  std::invalid_argument);
  CHECK_THROWS_AS(AlgebraElement(shape, {CMat::Zero(2, 2), CMat::Zero(2, 2)}),
                  std::invalid_argument);
}
