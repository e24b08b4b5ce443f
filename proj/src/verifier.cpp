#include "bohrmod/verifier.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "bohrmod/errors.hpp"

namespace bohrmod {

namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

TrialResult start_trial(const TheoremInstance& inst) {
  TrialResult r;
  r.id = inst.id;
  r.seed = inst.seed;
  const HypothesisReport hyp = check_hypotheses(inst);
  r.hypothesis_ok = hyp.admissible;
  if (!hyp.admissible) {
    r.note = "refused: hypothesis clause '" + hyp.worst_name + "' off by " +
             fmt(hyp.worst_value);
  }
  return r;
}

AlgebraElement sq_abs(const ModuleElement& v) { return inner(v, v); }

}  // namespace

bool TrialResult::passed(double id_tol, double slack_tol) const {
  if (!hypothesis_ok || !logic_ok) return false;
  if (has_identity && !(identity_residual <= id_tol)) return false;
  if (has_slack && slack_gated &&
      !(loewner_slack >= -slack_tol * std::max(1.0, slack_scale)))
    return false;
  if (has_cross && !(cross_residual <= kCrossTol)) return false;
  return true;
}

double ReductionReplay::max_identity_residual() const {
  return std::max({weight_sum_residual, gram_residual, commutation_residual,
                   cross_sa_residual, uv_residual, pom_residual});
}

bool ReductionReplay::within(double id_tol, double slack_tol) const {
  return max_identity_residual() <= id_tol &&
         y_slack >= -slack_tol * std::max(1.0, y_scale);
}

TrialResult verify_op_pair(const TheoremInstance& inst) {
  TrialResult r = start_trial(inst);
  if (!r.hypothesis_ok) return r;
  const AdjointableOp& t = inst.ops.at(0);
  const AdjointableOp& s = inst.ops.at(1);
  const ModuleElement& x = inst.vecs.at(0);
  const ModuleElement& y = inst.vecs.at(1);
  const double a = inst.triple.alpha, b = inst.triple.beta,
               g = inst.triple.gamma;
  const ModuleElement tx = t.apply(x), sy = s.apply(y);
  const ModuleElement sx = s.apply(x), ty = t.apply(y);
  const AlgebraElement lhs =
      (a * b) * sq_abs(tx + sy) + sq_abs(b * sx - a * ty);
  const AlgebraElement rhs = (b * g) * inner(x, x) + (a * g) * inner(y, y);
  r.has_identity = true;
  r.identity_residual = rel_residual(lhs, rhs);
  return r;
}

TrialResult verify_gram_pair(const TheoremInstance& inst) {
  TrialResult r = start_trial(inst);
  if (!r.hypothesis_ok) return r;
  const ModuleElement& x = inst.vecs.at(0);
  const ModuleElement& y = inst.vecs.at(1);
  const AlgebraElement& a = inst.algs.at(0);
  const AlgebraElement& b = inst.algs.at(1);
  const double al = inst.triple.alpha, be = inst.triple.beta,
               ga = inst.triple.gamma;
  const ModuleElement xa = x.act(a), yb = y.act(b);
  const ModuleElement ya = y.act(a), xb = x.act(b);
  const AlgebraElement lhs =
      (al * be) * sq_abs(xa + yb) + sq_abs(be * ya - al * xb);
  const AlgebraElement rhs =
      (be * ga) * (a.adjoint() * a) + (al * ga) * (b.adjoint() * b);
  r.has_identity = true;
  r.identity_residual = rel_residual(lhs, rhs);
  if (inst.id != TheoremId::VecPair) return r;

  // Proof-path replay: x and y become kets from the algebra-as-module, the
  // constraints become operator equations checked by probes, and the same
  // identity is re-evaluated through the operator machinery.
  const ModuleSpace self_mod = ModuleSpace::self_module(inst.space.algebra);
  const AdjointableOp kx = AdjointableOp::ket(x);
  const AdjointableOp ky = AdjointableOp::ket(y);
  const std::uint64_t pseed = trial_seed(inst.seed, "ketbra-probes", 0);
  bool sa_ok = true;
  const AdjointableOp cross_op =
      AdjointableOp::compose(kx.adjoint(), ky);
  sa_ok = op_is_self_adjoint(cross_op, 8, pseed);
  const AdjointableOp gram_combo = AdjointableOp::sum(
      {AdjointableOp::scale(al, AdjointableOp::compose(kx.adjoint(), kx)),
       AdjointableOp::scale(be, AdjointableOp::compose(ky.adjoint(), ky))});
  const double con_res = op_probe_residual(
      gram_combo,
      AdjointableOp::scale(ga, AdjointableOp::identity(self_mod)), 8,
      pseed + 1);
  const ModuleElement ea(self_mod, std::vector<AlgebraElement>{a});
  const ModuleElement eb(self_mod, std::vector<AlgebraElement>{b});
  const ModuleElement kxa = kx.apply(ea), kyb = ky.apply(eb);
  const ModuleElement kya = ky.apply(ea), kxb = kx.apply(eb);
  const AlgebraElement lhs2 =
      (al * be) * sq_abs(kxa + kyb) + sq_abs(be * kya - al * kxb);
  const AlgebraElement rhs2 =
      (be * ga) * inner(ea, ea) + (al * ga) * inner(eb, eb);
  const double replay_res = rel_residual(lhs2, rhs2);
  r.has_cross = true;
  r.cross_residual =
      std::max({rel_residual(lhs, lhs2), rel_residual(rhs, rhs2),
                std::abs(r.identity_residual - replay_res), con_res});
  r.logic_ok = sa_ok;
  r.note = "direct " + fmt(r.identity_residual) + ", ket path " +
           fmt(replay_res);
  return r;
}

TrialResult verify_euler_lagrange(const TheoremInstance& inst) {
  TrialResult r = start_trial(inst);
  if (!r.hypothesis_ok) return r;
  const AlgebraElement& a = inst.algs.at(0);
  const AlgebraElement& b = inst.algs.at(1);
  const ModuleElement& x = inst.vecs.at(0);
  const ModuleElement& y = inst.vecs.at(1);
  const double al = inst.triple.alpha, be = inst.triple.beta,
               ga = inst.triple.gamma;
  const AlgebraElement lhs =
      (al * be) * sq_abs(x.act(a) + y.act(b)) +
      sq_abs(be * x.act(b) - al * y.act(a));
  const AlgebraElement rhs =
      (be * ga) * inner(x, x) + (al * ga) * inner(y, y);
  r.has_identity = true;
  r.identity_residual = rel_residual(lhs, rhs);

  // Replay through right multiplications: T_a*T_b = T_{a*b}, the constraint
  // becomes an operator equation, and the identity is re-evaluated with ops.
  const AdjointableOp ta = AdjointableOp::right_mult(inst.space, a);
  const AdjointableOp tb = AdjointableOp::right_mult(inst.space, b);
  const std::uint64_t pseed = trial_seed(inst.seed, "rightmult-probes", 0);
  const double comp_res = op_probe_residual(
      AdjointableOp::compose(ta.adjoint(), tb),
      AdjointableOp::right_mult(inst.space, a.adjoint() * b), 8, pseed);
  const double con_res = op_probe_residual(
      AdjointableOp::sum(
          {AdjointableOp::scale(al, AdjointableOp::compose(ta.adjoint(), ta)),
           AdjointableOp::scale(be,
                                AdjointableOp::compose(tb.adjoint(), tb))}),
      AdjointableOp::scale(ga, AdjointableOp::identity(inst.space)), 8,
      pseed + 1);
  const bool sa_ok =
      op_is_self_adjoint(AdjointableOp::compose(ta.adjoint(), tb), 8,
                         pseed + 2);
  const AlgebraElement lhs2 =
      (al * be) * sq_abs(ta.apply(x) + tb.apply(y)) +
      sq_abs(be * tb.apply(x) - al * ta.apply(y));
  r.has_cross = true;
  r.cross_residual =
      std::max({rel_residual(lhs, lhs2), comp_res, con_res});
  r.logic_ok = sa_ok;
  r.note = "right-mult replay " + fmt(rel_residual(lhs2, rhs));
  return r;
}

TrialResult verify_bundle(const TheoremInstance& inst) {
  TrialResult r = start_trial(inst);
  if (!r.hypothesis_ok) return r;
  const AlgebraElement& f = inst.algs.at(0);
  const AlgebraElement& g = inst.algs.at(1);
  const ModuleElement& phi = inst.vecs.at(0);
  const ModuleElement& psi = inst.vecs.at(1);
  const double al = inst.triple.alpha, be = inst.triple.beta,
               ga = inst.triple.gamma;
  const ModuleElement u = phi.act(f) + psi.act(g);
  const ModuleElement m = be * phi.act(g) - al * psi.act(f);
  const AlgebraElement gu = sq_abs(u), gm = sq_abs(m);
  const AlgebraElement gp = sq_abs(phi), gq = sq_abs(psi);
  double worst_abs = 0.0, scale = 1.0;
  double sup_lhs = 0.0, sup_rhs = 0.0;
  for (int t = 0; t < f.block_count(); ++t) {
    const double lt = al * be * gu.block(t)(0, 0).real() +
                      gm.block(t)(0, 0).real();
    const double rt = be * ga * gp.block(t)(0, 0).real() +
                      al * ga * gq.block(t)(0, 0).real();
    worst_abs = std::max(worst_abs, std::abs(lt - rt));
    scale = std::max({scale, std::abs(lt), std::abs(rt)});
    sup_lhs = std::max(sup_lhs, lt);
    sup_rhs = std::max(sup_rhs, rt);
  }
  const double pointwise = worst_abs / scale;
  const double sup_res =
      std::abs(sup_lhs - sup_rhs) / std::max(1.0, sup_rhs);
  r.has_identity = true;
  r.identity_residual = std::max(pointwise, sup_res);
  r.note = "pointwise " + fmt(pointwise) + ", sup " + fmt(sup_res);
  if (f.block_count() == 1) r.note += " (singleton base: classical case)";
  return r;
}

TrialResult verify_bohr_pq(const TheoremInstance& inst) {
  TrialResult r = start_trial(inst);
  if (!r.hypothesis_ok) return r;
  const double p = inst.pq.p, q = inst.pq.q;
  const ModuleElement& x = inst.vecs.at(0);
  const ModuleElement& y = inst.vecs.at(1);
  const ModuleElement d = x - y;
  const ModuleElement w = (1.0 - p) * x - y;
  const ModuleElement wq = (1.0 - q) * y - x;
  const AlgebraElement ad = sq_abs(d), aw = sq_abs(w), awq = sq_abs(wq);
  const AlgebraElement rhs = p * sq_abs(x) + q * sq_abs(y);
  const double res_xyp =
      rel_residual(ad + (1.0 / (p - 1.0)) * aw, rhs);
  const double res_q =
      rel_residual(ad + (1.0 / (q - 1.0)) * awq, rhs);
  const AlgebraElement lhs_i = ad + aw;
  const AlgebraElement diff = rhs - lhs_i;
  const AlgebraElement dec = (1.0 / (p - 1.0) - 1.0) * aw;
  const double res_dec = (diff - dec).frobenius_norm() /
                         std::max(1.0, rhs.frobenius_norm());
  r.has_identity = true;
  r.identity_residual = std::max({res_xyp, res_q, res_dec});
  r.has_slack = true;
  r.slack_gated = false;
  r.loewner_slack = diff.min_eigenvalue();
  r.slack_scale = rhs.norm();
  const double slack_tol = 1e-8 * std::max(1.0, r.slack_scale);
  const bool eq_detected = rel_residual(lhs_i, rhs) <= 1e-10;
  const double eq_scale =
      std::max(1.0, mod_norm(x) + mod_norm(y));
  const bool eq_predicted =
      std::abs(p - 2.0) <= 1e-12 || mod_norm(w) <= 1e-10 * eq_scale;
  bool order_ok = true;
  if (p <= 2.0) order_ok = r.loewner_slack >= -slack_tol;
  if (p >= 2.0) order_ok = order_ok && r.loewner_slack <= slack_tol;
  r.logic_ok = (eq_detected == eq_predicted) && order_ok;
  r.note = "xyp " + fmt(res_xyp) + ", q-form " + fmt(res_q) + ", decomp " +
           fmt(res_dec) + ", slack " + fmt(r.loewner_slack) + ", equality " +
           (eq_detected ? "yes" : "no");
  return r;
}

TrialResult verify_bohr2(const TheoremInstance& inst) {
  TrialResult r = start_trial(inst);
  if (!r.hypothesis_ok) return r;
  const AdjointableOp& t = inst.ops.at(0);
  const AdjointableOp& s = inst.ops.at(1);
  const ModuleElement& x = inst.vecs.at(0);
  const ModuleElement& y = inst.vecs.at(1);
  const double a = inst.triple.alpha, b = inst.triple.beta;
  const ModuleElement tx = t.apply(x), sy = s.apply(y);
  const ModuleElement sx = s.apply(x), ty = t.apply(y);
  const AlgebraElement rhs = b * sq_abs(x) + a * sq_abs(y);
  const AlgebraElement id_lhs =
      (a * b) * sq_abs(tx + sy) + sq_abs(b * sx - a * ty);
  const double res_identity = rel_residual(id_lhs, rhs);
  // Convex bound |b Sx + a Ty|^2 <= RHS, with gap a*b*|Tx - Sy|^2 (the
  // identity evaluated at (x, -y)); the sign-flipped bound has gap
  // a*b*|Tx + Sy|^2. Both gaps are checked, both slacks reported.
  const AlgebraElement bound_plus = sq_abs(b * sx + a * ty);
  const AlgebraElement bound_minus = sq_abs(b * sx - a * ty);
  const double res_gap_plus =
      rel_residual(rhs - bound_plus, (a * b) * sq_abs(tx - sy));
  const double res_gap_minus =
      rel_residual(rhs - bound_minus, (a * b) * sq_abs(tx + sy));
  r.has_identity = true;
  r.identity_residual = std::max({res_identity, res_gap_plus, res_gap_minus});
  r.has_slack = true;
  r.loewner_slack = std::min(loewner_slack(bound_plus, rhs),
                             loewner_slack(bound_minus, rhs));
  r.slack_scale = rhs.norm();
  r.note = "identity " + fmt(res_identity) + ", gaps " + fmt(res_gap_plus) +
           "/" + fmt(res_gap_minus);
  return r;
}

ReductionReplay replay_reduction_step(const TheoremInstance& inst) {
  const int n = inst.weights.size();
  if (n < 3)
    throw std::invalid_argument("reduction replay needs at least 3 operators");
  ReductionReplay rep;
  const double tn = inst.weights.t[static_cast<size_t>(n - 1)];
  std::vector<double> s(static_cast<size_t>(n - 1));
  double ssum = 0.0;
  for (int i = 0; i + 1 < n; ++i) {
    s[static_cast<size_t>(i)] =
        inst.weights.t[static_cast<size_t>(i)] / (1.0 - tn);
    ssum += s[static_cast<size_t>(i)];
  }
  rep.weight_sum_residual = std::abs(ssum - 1.0);

  std::vector<std::vector<CMat>> flats;
  flats.reserve(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) flats.push_back(flatten_op(inst.ops.at(i)));
  const int blocks = inst.space.algebra.block_count();
  std::vector<std::vector<CMat>> shrunk(
      static_cast<size_t>(n - 1), std::vector<CMat>(static_cast<size_t>(blocks)));
  std::vector<CMat> mixer(static_cast<size_t>(blocks));
  double gram = 0.0, gram_scale = 1.0;
  double comm = 0.0, comm_scale = 1.0;
  double sa = 0.0, sa_scale = 1.0;
  double uv = 0.0, uv_scale = 1.0;
  for (int b = 0; b < blocks; ++b) {
    const CMat& fn = flats[static_cast<size_t>(n - 1)][static_cast<size_t>(b)];
    const CMat fn_sq = fn.adjoint() * fn;
    const CMat base = hermitize(
        CMat::Identity(fn.rows(), fn.cols()) - tn * fn_sq);
    const CMat root_inv = inv_sqrt_pd(base, inst.guards.delta);
    for (int i = 0; i + 1 < n; ++i)
      shrunk[static_cast<size_t>(i)][static_cast<size_t>(b)] =
          std::sqrt(1.0 - tn) *
          flats[static_cast<size_t>(i)][static_cast<size_t>(b)] * root_inv;
    mixer[static_cast<size_t>(b)] =
        (1.0 / std::sqrt(1.0 - tn)) * sqrt_psd(base);

    const CMat id = CMat::Identity(fn.rows(), fn.cols());
    CMat acc = CMat::Zero(fn.rows(), fn.cols());
    double block_scale = 1.0;
    std::vector<CMat> abs_val;
    for (int i = 0; i + 1 < n; ++i) {
      const CMat& si = shrunk[static_cast<size_t>(i)][static_cast<size_t>(b)];
      const CMat g = si.adjoint() * si;
      abs_val.push_back(sqrt_psd(g));
      acc += s[static_cast<size_t>(i)] * g;
      block_scale += s[static_cast<size_t>(i)] * g.norm();
    }
    gram = std::max(gram, (acc - id).norm());
    gram_scale = std::max(gram_scale, block_scale);
    for (int i = 0; i + 1 < n; ++i) {
      for (int j = i + 1; j + 1 < n; ++j) {
        const CMat& si = shrunk[static_cast<size_t>(i)][static_cast<size_t>(b)];
        const CMat d = si * abs_val[static_cast<size_t>(j)] -
                       abs_val[static_cast<size_t>(j)] * si;
        comm = std::max(comm, d.norm());
        comm_scale = std::max(
            comm_scale, si.norm() * abs_val[static_cast<size_t>(j)].norm());
      }
    }
    const CMat cross =
        shrunk[0][static_cast<size_t>(b)].adjoint() *
        shrunk[1][static_cast<size_t>(b)];
    sa = std::max(sa, (cross - CMat(cross.adjoint())).norm());
    sa_scale = std::max(sa_scale, cross.norm());
    const CMat& w = mixer[static_cast<size_t>(b)];
    const CMat uv_lhs = (1.0 - tn) * (w.adjoint() * w) + tn * fn_sq;
    uv = std::max(uv, (uv_lhs - id).norm());
    uv_scale = std::max(uv_scale, uv_lhs.norm());
  }
  rep.gram_residual = gram / gram_scale;
  rep.commutation_residual = comm / comm_scale;
  rep.cross_sa_residual = sa / sa_scale;
  rep.uv_residual = uv / uv_scale;

  std::vector<AdjointableOp> shrunk_ops;
  for (int i = 0; i + 1 < n; ++i)
    shrunk_ops.push_back(
        op_from_flats(inst.space, shrunk[static_cast<size_t>(i)]));
  const AdjointableOp mixer_op = op_from_flats(inst.space, mixer);
  ModuleElement y = ModuleElement::zero(inst.space);
  ModuleElement pom_rhs = ModuleElement::zero(inst.space);
  AlgebraElement y_bound = AlgebraElement::zero(inst.space.algebra);
  for (int i = 0; i + 1 < n; ++i) {
    const ModuleElement& xi = inst.vecs.at(i);
    y = y + s[static_cast<size_t>(i)] * shrunk_ops[static_cast<size_t>(i)].apply(xi);
    pom_rhs = pom_rhs +
              inst.weights.t[static_cast<size_t>(i)] * inst.ops.at(i).apply(xi);
    y_bound = y_bound + s[static_cast<size_t>(i)] * inner(xi, xi);
  }
  rep.pom_residual =
      rel_residual((1.0 - tn) * mixer_op.apply(y), pom_rhs);
  const AlgebraElement y_sq = inner(y, y);
  rep.y_slack = loewner_slack(y_sq, y_bound);
  rep.y_scale = y_bound.norm();
  return rep;
}

TrialResult verify_bohr_n(const TheoremInstance& inst) {
  TrialResult r = start_trial(inst);
  if (!r.hypothesis_ok) return r;
  const int n = inst.weights.size();
  ModuleElement acc = ModuleElement::zero(inst.space);
  AlgebraElement rhs = AlgebraElement::zero(inst.space.algebra);
  for (int i = 0; i < n; ++i) {
    acc = acc + inst.weights.t[static_cast<size_t>(i)] *
                    inst.ops.at(i).apply(inst.vecs.at(i));
    rhs = rhs + inst.weights.t[static_cast<size_t>(i)] *
                    inner(inst.vecs.at(i), inst.vecs.at(i));
  }
  r.has_slack = true;
  r.loewner_slack = loewner_slack(sq_abs(acc), rhs);
  r.slack_scale = rhs.norm();
  if (n >= 3) {
    const ReductionReplay rep = replay_reduction_step(inst);
    r.has_identity = true;
    r.identity_residual = rep.max_identity_residual();
    r.logic_ok = rep.y_slack >= -1e-8 * std::max(1.0, rep.y_scale);
    r.note = "replay: gram " + fmt(rep.gram_residual) + ", comm " +
             fmt(rep.commutation_residual) + ", uv " + fmt(rep.uv_residual) +
             ", pom " + fmt(rep.pom_residual) + ", y-slack " +
             fmt(rep.y_slack);
  }
  return r;
}

TrialResult verify_bohr_n_central(const TheoremInstance& inst) {
  TrialResult r = start_trial(inst);
  if (!r.hypothesis_ok) return r;
  const int n = inst.weights.size();
  ModuleElement acc = ModuleElement::zero(inst.space);
  AlgebraElement rhs = AlgebraElement::zero(inst.space.algebra);
  for (int i = 0; i < n; ++i) {
    acc = acc + inst.weights.t[static_cast<size_t>(i)] *
                    inst.vecs.at(i).act(inst.algs.at(i));
    rhs = rhs + inst.weights.t[static_cast<size_t>(i)] *
                    inner(inst.vecs.at(i), inst.vecs.at(i));
  }
  const AlgebraElement lhs = sq_abs(acc);
  r.has_slack = true;
  r.loewner_slack = loewner_slack(lhs, rhs);
  r.slack_scale = rhs.norm();

  // Lift a_i to right multiplications and run the operator-family check on
  // the lifted instance; |T_{a_i}| must match T_{|a_i|} through the
  // eigendecomposition path.
  std::vector<AdjointableOp> lifted;
  for (int i = 0; i < n; ++i)
    lifted.push_back(AdjointableOp::right_mult(inst.space, inst.algs.at(i)));
  ModuleElement acc2 = ModuleElement::zero(inst.space);
  for (int i = 0; i < n; ++i)
    acc2 = acc2 + inst.weights.t[static_cast<size_t>(i)] *
                      lifted[static_cast<size_t>(i)].apply(inst.vecs.at(i));
  double cross = rel_residual(sq_abs(acc2), lhs);
  if (inst.space.algebra_valued()) {
    TheoremInstance lifted_inst;
    lifted_inst.id = TheoremId::BohrN;
    lifted_inst.seed = inst.seed;
    lifted_inst.space = inst.space;
    lifted_inst.weights = inst.weights;
    lifted_inst.ops = lifted;
    lifted_inst.vecs = inst.vecs;
    lifted_inst.guards = inst.guards;
    const TrialResult lifted_res = verify_bohr_n(lifted_inst);
    cross = std::max(
        cross, std::abs(lifted_res.loewner_slack - r.loewner_slack) /
                   std::max(1.0, r.slack_scale));
    r.logic_ok = lifted_res.passed();
    const std::uint64_t pseed = trial_seed(inst.seed, "lift-abs", 0);
    for (int i = 0; i < n; ++i) {
      const AdjointableOp as_grid = AdjointableOp::matrix_over_a(
          inst.space, lifted[static_cast<size_t>(i)].to_grid());
      cross = std::max(
          cross, op_probe_residual(
                     op_abs(as_grid),
                     AdjointableOp::right_mult(inst.space,
                                               inst.algs.at(i).abs()),
                     4, pseed + static_cast<std::uint64_t>(i)));
    }
    r.note = "lifted slack " + fmt(lifted_res.loewner_slack);
  }
  r.has_cross = true;
  r.cross_residual = cross;
  return r;
}

TrialResult verify_am_qm(const TheoremInstance& inst) {
  TrialResult r = start_trial(inst);
  if (!r.hypothesis_ok) return r;
  const int n = inst.weights.size();
  AlgebraElement mean = AlgebraElement::zero(inst.space.algebra);
  AlgebraElement rhs = AlgebraElement::zero(inst.space.algebra);
  for (int i = 0; i < n; ++i) {
    const AlgebraElement& ai = inst.algs.at(i);
    mean = mean + inst.weights.t[static_cast<size_t>(i)] * ai;
    rhs = rhs + inst.weights.t[static_cast<size_t>(i)] * (ai.adjoint() * ai);
  }
  r.has_slack = true;
  r.loewner_slack = loewner_slack(mean.adjoint() * mean, rhs);
  r.slack_scale = rhs.norm();
  return r;
}

TrialResult verify_trial(const TheoremInstance& inst) {
  switch (inst.id) {
    case TheoremId::OpPair:
      return verify_op_pair(inst);
    case TheoremId::VecPair:
    case TheoremId::L2:
    case TheoremId::OpTuple:
      return verify_gram_pair(inst);
    case TheoremId::EulerLagrange:
      return verify_euler_lagrange(inst);
    case TheoremId::Bundle:
      return verify_bundle(inst);
    case TheoremId::BohrPQ:
      return verify_bohr_pq(inst);
    case TheoremId::Bohr2:
      return verify_bohr2(inst);
    case TheoremId::BohrN:
      return verify_bohr_n(inst);
    case TheoremId::BohrNCentral:
      return verify_bohr_n_central(inst);
    case TheoremId::AmQm:
      return verify_am_qm(inst);
  }
  throw std::logic_error("unhandled theorem id");
}

std::optional<Witness> witness_search(const ModuleSpace& space, double p,
                                      int budget, std::uint64_t seed,
                                      const GeneratorGuards& g) {
  if (budget < 1) throw std::invalid_argument("witness budget must be >= 1");
  if (std::abs(p - 2.0) <= 1e-12) return std::nullopt;
  const ConjugatePair pq = ConjugatePair::from_p(p, g.eps_p);
  Rng rng(trial_seed(seed, "witness", 0));
  const double coeff = 1.0 / (pq.p - 1.0) - 1.0;  // sign decides the clause
  for (int attempt = 1; attempt <= budget; ++attempt) {
    const ModuleElement x = ModuleElement::random(space, rng);
    const ModuleElement y = ModuleElement::random(space, rng);
    const ModuleElement w = (1.0 - p) * x - y;
    const double eq_scale = std::max(1.0, mod_norm(x) + mod_norm(y));
    if (mod_norm(w) <= 1e-8 * eq_scale) continue;
    const AlgebraElement aw = inner(w, w);
    const AlgebraElement lhs_i = inner(x - y, x - y) + aw;
    const AlgebraElement rhs = p * inner(x, x) + pq.q * inner(y, y);
    const double lam_max_w = aw.norm();
    if (p > 2.0) {
      const double violation = -(rhs - lhs_i).min_eigenvalue();
      if (violation <= 0.0) continue;
      return Witness{x, y, violation, -coeff * lam_max_w, attempt, "upper"};
    }
    const double violation = -(lhs_i - rhs).min_eigenvalue();
    if (violation <= 0.0) continue;
    return Witness{x, y, violation, coeff * lam_max_w, attempt, "lower"};
  }
  return std::nullopt;
}

}  // namespace bohrmod
