#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <complex>
#include <vector>

#include "bohrmod/driver.hpp"
#include "bohrmod/verifier.hpp"
#include "doctest.h"

using namespace bohrmod;
using cpx = std::complex<double>;

namespace {

const AlgebraShape kScalar{{1}};

AlgebraElement scl(double v) {
  return AlgebraElement::from_block_scalars(kScalar, {cpx(v, 0)});
}

ModuleElement self_elt(double v) {
  return ModuleElement(ModuleSpace::self_module(kScalar),
                       ModuleElement::Payload{std::vector<AlgebraElement>{
                           scl(v)}});
}

AdjointableOp self_op(const ModuleSpace& space, double v) {
  return AdjointableOp::matrix_over_a(space, {scl(v)});
}

TheoremInstance scalar_op_pair(double t, double s, const RealTriple& tr,
                               double x, double y) {
  TheoremInstance inst;
  inst.id = TheoremId::OpPair;
  inst.space = ModuleSpace::self_module(kScalar);
  inst.triple = tr;
  inst.ops = {self_op(inst.space, t), self_op(inst.space, s)};
  inst.vecs = {self_elt(x), self_elt(y)};
  return inst;
}

TheoremInstance scalar_pq(double p, double x, double y) {
  TheoremInstance inst;
  inst.id = TheoremId::BohrPQ;
  inst.space = ModuleSpace::self_module(kScalar);
  inst.pq = ConjugatePair::from_p(p, inst.guards.eps_p);
  inst.vecs = {self_elt(x), self_elt(y)};
  return inst;
}

}  // namespace

TEST_CASE("operator pair identity on a 3-4-5 scalar witness") {
  const auto inst = scalar_op_pair(3, 4, {1, 1, 25}, 1, 0);
  CHECK(check_hypotheses(inst).admissible);
  const auto r = verify_op_pair(inst);
  CHECK(r.hypothesis_ok);
  CHECK(r.has_identity);
  CHECK(r.identity_residual <= 1e-15);
  CHECK(r.passed());
}

TEST_CASE("vector pair identity with scalar data and probe cross-check") {
  TheoremInstance inst;
  inst.id = TheoremId::VecPair;
  inst.space = ModuleSpace::self_module(kScalar);
  inst.triple = {1, 1, 25};
  inst.vecs = {self_elt(3), self_elt(4)};
  inst.algs = {scl(1), scl(0)};
  const auto r = verify_gram_pair(inst);
  CHECK(r.hypothesis_ok);
  CHECK(r.identity_residual <= 1e-14);
  CHECK(r.has_cross);
  CHECK(r.cross_residual <= kCrossTol);
  CHECK(r.passed());
}

TEST_CASE("sequence pair identity on a normalized 3-4-5 split") {
  TheoremInstance inst;
  inst.id = TheoremId::L2;
  inst.space = ModuleSpace::seq_module(kScalar, 2);
  inst.triple = {1, 1, 1};
  inst.vecs = {
      ModuleElement(inst.space, ModuleElement::Payload{
                                    std::vector<AlgebraElement>{scl(0.6),
                                                                scl(0)}}),
      ModuleElement(inst.space, ModuleElement::Payload{
                                    std::vector<AlgebraElement>{scl(0.8),
                                                                scl(0)}})};
  inst.algs = {scl(1), scl(0)};
  const auto r = verify_gram_pair(inst);
  CHECK(r.hypothesis_ok);
  CHECK(r.identity_residual <= 1e-14);
  CHECK(r.passed());
}

TEST_CASE("central pair identity on a 3-4-5 scalar witness") {
  TheoremInstance inst;
  inst.id = TheoremId::EulerLagrange;
  inst.space = ModuleSpace::self_module(kScalar);
  inst.triple = {1, 1, 25};
  inst.algs = {scl(3), scl(4)};
  inst.vecs = {self_elt(1), self_elt(0)};
  const auto r = verify_euler_lagrange(inst);
  CHECK(r.hypothesis_ok);
  CHECK(r.identity_residual <= 1e-14);
  CHECK(r.has_cross);
  CHECK(r.cross_residual <= kCrossTol);
  CHECK(r.passed());
}

TEST_CASE("bundle identity holds pointwise and in the sup norm") {
  TheoremInstance inst;
  inst.id = TheoremId::Bundle;
  inst.space = ModuleSpace::bundle({1, 1});
  inst.triple = {1, 1, 25};
  inst.algs = {AlgebraElement::from_block_scalars(inst.space.algebra,
                                                  {cpx(3, 0), cpx(3, 0)}),
               AlgebraElement::from_block_scalars(inst.space.algebra,
                                                  {cpx(4, 0), cpx(4, 0)})};
  CVec phi0(1), phi1(1), psi0(1), psi1(1);
  phi0 << cpx(1, 0);
  phi1 << cpx(0, 0);
  psi0 << cpx(0, 0);
  psi1 << cpx(1, 0);
  inst.vecs = {
      ModuleElement(inst.space,
                    ModuleElement::Payload{std::vector<CVec>{phi0, phi1}}),
      ModuleElement(inst.space,
                    ModuleElement::Payload{std::vector<CVec>{psi0, psi1}})};
  const auto r = verify_bundle(inst);
  CHECK(r.hypothesis_ok);
  CHECK(r.identity_residual <= 1e-14);
  CHECK(r.passed());
}

TEST_CASE("singleton bundles note the classical case") {
  const auto inst = gen_bundle(ModuleSpace::bundle({3}), {1, 1, 2}, 4);
  const auto r = verify_bundle(inst);
  CHECK(r.passed());
  CHECK(r.note.find("classical") != std::string::npos);
}

TEST_CASE("conjugate exponent identity at p = 3 on scalars") {
  const auto inst = scalar_pq(3.0, 1.0, 0.0);
  const auto r = verify_bohr_pq(inst);
  CHECK(r.hypothesis_ok);
  CHECK(r.identity_residual <= 1e-15);
  CHECK(r.has_slack);
  CHECK_FALSE(r.slack_gated);
  CHECK(r.loewner_slack == doctest::Approx(-2.0).epsilon(1e-13));
  CHECK(r.logic_ok);
  CHECK(r.passed());
}

TEST_CASE("conjugate exponent equality cases") {
  // p = 2 on any pair is the parallelogram law.
  const auto rp2 = verify_bohr_pq(scalar_pq(2.0, 3.0, 4.0));
  CHECK(rp2.identity_residual <= 1e-15);
  CHECK(std::abs(rp2.loewner_slack) <= 1e-14);
  CHECK(rp2.logic_ok);
  CHECK(rp2.note.find("equality yes") != std::string::npos);
  // p != 2 with y = (1-p)x also collapses to equality.
  const auto rp3 = verify_bohr_pq(scalar_pq(3.0, 1.0, -2.0));
  CHECK(rp3.identity_residual <= 1e-15);
  CHECK(std::abs(rp3.loewner_slack) <= 1e-14);
  CHECK(rp3.logic_ok);
  // Strict inequality for p < 2.
  const auto rp15 = verify_bohr_pq(scalar_pq(1.5, 1.0, 1.0));
  CHECK(rp15.loewner_slack > 1e-3);
  CHECK(rp15.logic_ok);
}

TEST_CASE("two operator bound on an exact scalar budget") {
  const double u = std::sqrt(1.5), v = std::sqrt(0.5);
  TheoremInstance inst = scalar_op_pair(u, v, {0.5, 0.5, 1.0}, 1.0, -1.0);
  inst.id = TheoremId::Bohr2;
  const auto r = verify_bohr2(inst);
  CHECK(r.hypothesis_ok);
  CHECK(r.has_identity);
  CHECK(r.identity_residual <= 1e-14);
  CHECK(r.has_slack);
  // Both gap readings hold; the folded slack is the tighter one.
  CHECK(r.loewner_slack ==
        doctest::Approx((2.0 - std::sqrt(3.0)) / 4.0).epsilon(1e-12));
  CHECK(r.passed());
}

TEST_CASE("n operator bound with an exact scalar family") {
  TheoremInstance inst;
  inst.id = TheoremId::BohrN;
  inst.space = ModuleSpace::self_module(kScalar);
  inst.weights = WeightVector{{0.25, 0.25, 0.5}};
  const double r2 = std::sqrt(2.0);
  inst.ops = {self_op(inst.space, r2), self_op(inst.space, r2),
              self_op(inst.space, 0.0)};
  inst.vecs = {self_elt(1), self_elt(1), self_elt(1)};
  CHECK(check_hypotheses(inst).admissible);

  const auto rep = replay_reduction_step(inst);
  CHECK(rep.weight_sum_residual <= 1e-15);
  CHECK(rep.gram_residual <= 1e-14);
  CHECK(rep.commutation_residual <= 1e-14);
  CHECK(rep.uv_residual <= 1e-14);
  CHECK(rep.pom_residual <= 1e-14);
  CHECK(std::abs(rep.y_slack) <= 1e-13);
  CHECK(rep.within());

  const auto r = verify_bohr_n(inst);
  CHECK(r.has_identity);
  CHECK(r.identity_residual <= 1e-13);
  CHECK(r.loewner_slack == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(r.slack_scale == doctest::Approx(1.0));
  CHECK(r.passed());
}

TEST_CASE("reduction replay needs at least three operators") {
  const auto inst =
      gen_bohrn(ModuleSpace::direct_sum(AlgebraShape::parse("2"), 2), 2, 5);
  CHECK_THROWS_AS(replay_reduction_step(inst), std::invalid_argument);
  const auto r = verify_bohr_n(inst);
  CHECK(r.has_slack);
  CHECK_FALSE(r.has_identity);
  CHECK(r.passed());
}

TEST_CASE("mean bound is tight for a single element") {
  const auto inst = gen_amqm(3, 1, 12);
  const auto r = verify_am_qm(inst);
  CHECK(r.has_slack);
  CHECK(std::abs(r.loewner_slack) <= 1e-12 * std::max(1.0, r.slack_scale));
  CHECK(r.passed());
}

TEST_CASE("trial pass gates combine hypothesis, identity, slack, and cross") {
  TrialResult r;
  r.hypothesis_ok = true;
  r.logic_ok = true;
  r.has_identity = true;
  r.identity_residual = 1e-6;
  CHECK_FALSE(r.passed(1e-8, 1e-8));
  CHECK(r.passed(1e-4, 1e-8));
  r.identity_residual = 0.0;
  r.has_slack = true;
  r.slack_gated = true;
  r.slack_scale = 10.0;
  r.loewner_slack = -5e-8;
  CHECK(r.passed(1e-8, 1e-8));  // within -tol * max(1, scale)
  r.loewner_slack = -1e-3;
  CHECK_FALSE(r.passed(1e-8, 1e-8));
  r.slack_gated = false;
  r.loewner_slack = -1e-3;
  CHECK(r.passed(1e-8, 1e-8));
  r.logic_ok = false;
  CHECK_FALSE(r.passed(1e-8, 1e-8));
}

TEST_CASE("falsified hypotheses are refused, not reported as failures") {
  const auto space = ModuleSpace::direct_sum(AlgebraShape::parse("2"), 2);
  auto inst = gen_op_pair(space, {1.0, 0.8, 1.7}, 33);
  auto flats = flatten_op(inst.ops[1]);
  flats[0] += 0.1 * CMat::Identity(flats[0].rows(), flats[0].cols());
  inst.ops[1] = op_from_flats(space, flats);
  const auto r = verify_trial(inst);
  CHECK_FALSE(r.hypothesis_ok);
  CHECK_FALSE(r.has_identity);
  CHECK_FALSE(r.has_slack);
  CHECK_FALSE(r.passed());
  CHECK(r.note.find("refused") != std::string::npos);

  auto binst = gen_bohrn(space, 4, 9);
  binst.weights.t[0] *= 1.01;
  const auto br = verify_trial(binst);
  CHECK_FALSE(br.hypothesis_ok);
  CHECK(br.note.find("refused") != std::string::npos);

  auto pinst = scalar_pq(3.0, 1.0, 2.0);
  pinst.pq.q += 0.01;
  const auto pr = verify_trial(pinst);
  CHECK_FALSE(pr.hypothesis_ok);
}

TEST_CASE("witness search finds order violations exactly where predicted") {
  const auto space = ModuleSpace::direct_sum(AlgebraShape::parse("2"), 2);
  for (const double p : {2.5, 3.0, 10.0}) {
    const auto w = witness_search(space, p, 50, 7);
    REQUIRE(w.has_value());
    CHECK(w->clause == "upper");
    CHECK(w->violation > 0.0);
    CHECK(std::abs(w->violation - w->predicted) <=
          1e-10 * std::max(1.0, w->predicted));
    CHECK(w->attempts >= 1);
  }
  const auto wl = witness_search(space, 1.5, 50, 7);
  REQUIRE(wl.has_value());
  CHECK(wl->clause == "lower");
  CHECK(wl->violation > 0.0);
  CHECK(std::abs(wl->violation - wl->predicted) <=
        1e-10 * std::max(1.0, wl->predicted));
  CHECK_FALSE(witness_search(space, 2.0, 50, 7).has_value());
}

TEST_CASE("randomized sweeps pass for every statement") {
  RunConfig cfg;
  for (const TheoremId id : all_theorems()) {
    for (int t = 0; t < 40; ++t) {
      const auto inst = make_instance(id, t, cfg);
      const auto r = verify_trial(inst);
      INFO("theorem " << to_string(id) << ", trial " << t << ": " << r.note);
      CHECK(r.hypothesis_ok);
      CHECK(r.passed(cfg.id_tol, cfg.slack_tol));
      if (r.has_identity) CHECK(r.identity_residual <= 1e-10);
      if (r.has_cross) CHECK(r.cross_residual <= kCrossTol);
    }
  }
}

TEST_CASE("verification is deterministic per seed") {
  RunConfig cfg;
  for (const TheoremId id :
       {TheoremId::OpPair, TheoremId::BohrN, TheoremId::BohrPQ}) {
    const auto a = verify_trial(make_instance(id, 3, cfg));
    const auto b = verify_trial(make_instance(id, 3, cfg));
    CHECK(a.identity_residual == b.identity_residual);
    CHECK(a.loewner_slack == b.loewner_slack);
    CHECK(a.cross_residual == b.cross_residual);
    CHECK(a.note == b.note);
  }
}
