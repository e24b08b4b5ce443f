#pragma once

#include <optional>
#include <string>

#include "bohrmod/generators.hpp"

namespace bohrmod {

/// Agreement tolerance between two independent computations of the same
/// quantity (direct evaluation vs proof-path replay).
inline constexpr double kCrossTol = 1e-10;

/// Outcome of verifying one theorem on one seeded instance. Residuals are
/// relative Frobenius; slacks are raw lambda_min(RHS - LHS) paired with the
/// C* norm of RHS so callers can scale them.
struct TrialResult {
  TheoremId id = TheoremId::OpPair;
  std::uint64_t seed = 0;
  bool hypothesis_ok = false;
  bool has_identity = false;
  double identity_residual = 0.0;
  bool has_slack = false;
  /// False for the conjugate-exponent clauses, whose slack is legitimately
  /// negative when p > 2; its sign consistency is folded into logic_ok.
  bool slack_gated = true;
  double loewner_slack = 0.0;
  double slack_scale = 0.0;
  bool has_cross = false;
  double cross_residual = 0.0;
  bool logic_ok = true;
  std::string note;

  bool passed(double id_tol = 1e-8, double slack_tol = 1e-8) const;
};

/// Internals of one reduction step of the n-operator bound: weights
/// s_i = t_i/(1-t_n), the shrunken family S_i = sqrt(1-t_n) T_i R with
/// R = (I - t_n|T_n|^2)^{-1/2}, the mediating element y = sum s_i S_i x_i,
/// and the mixing operator W = (1-t_n)^{-1/2} (I - t_n|T_n|^2)^{1/2}.
struct ReductionReplay {
  double weight_sum_residual = 0.0;   // |sum s_i - 1|
  double gram_residual = 0.0;         // sum s_i |S_i|^2 = I
  double commutation_residual = 0.0;  // S_i|S_j| = |S_j|S_i, i < j
  double cross_sa_residual = 0.0;     // S_1*S_2 self-adjoint
  double uv_residual = 0.0;           // (1-t_n)|W|^2 + t_n|T_n|^2 = I
  double pom_residual = 0.0;          // (1-t_n) W y = sum_{i<n} t_i T_i x_i
  double y_slack = 0.0;               // lambda_min(sum s_i |x_i|^2 - |y|^2)
  double y_scale = 0.0;

  double max_identity_residual() const;
  bool within(double id_tol = 1e-8, double slack_tol = 1e-8) const;
};

/// Per-theorem checkers. Each validates hypotheses first and refuses
/// (hypothesis_ok = false, nothing computed) on inadmissible input.
TrialResult verify_op_pair(const TheoremInstance& inst);
TrialResult verify_gram_pair(const TheoremInstance& inst);
TrialResult verify_euler_lagrange(const TheoremInstance& inst);
TrialResult verify_bundle(const TheoremInstance& inst);
TrialResult verify_bohr_pq(const TheoremInstance& inst);
TrialResult verify_bohr2(const TheoremInstance& inst);
TrialResult verify_bohr_n(const TheoremInstance& inst);
TrialResult verify_bohr_n_central(const TheoremInstance& inst);
TrialResult verify_am_qm(const TheoremInstance& inst);

ReductionReplay replay_reduction_step(const TheoremInstance& inst);

TrialResult verify_trial(const TheoremInstance& inst);

/// A pair violating one of the conjugate-exponent order clauses, together
/// with the measured violation -lambda_min and the value the decomposition
/// identity predicts for it.
struct Witness {
  ModuleElement x;
  ModuleElement y;
  double violation = 0.0;
  double predicted = 0.0;
  int attempts = 0;
  std::string clause;
};

/// Random search for a clause violation: p > 2 violates the upper clause,
/// p < 2 the lower one, p = 2 admits none (returns nullopt). Any pair with
/// y != (1-p)x works, so the first attempt succeeds almost surely.
std::optional<Witness> witness_search(const ModuleSpace& space, double p,
                                      int budget, std::uint64_t seed,
                                      const GeneratorGuards& g = {});

}  // namespace bohrmod
