#pragma once

#include <string>
#include <vector>

#include "bohrmod/verifier.hpp"

namespace bohrmod {

std::vector<AlgebraShape> default_block_shapes();

struct RunConfig {
  std::vector<TheoremId> theorems = all_theorems();
  int trials = 50;
  std::vector<AlgebraShape> block_shapes = default_block_shapes();
  std::uint64_t seed = 42;
  double id_tol = 1e-8;
  double slack_tol = 1e-8;
  GeneratorGuards guards;
  std::vector<double> p_values = {1.1, 1.5, 2.0, 3.0, 10.0};
  int jobs = 1;

  void validate() const;  // throws std::invalid_argument
};

struct TheoremAggregate {
  TheoremId id = TheoremId::OpPair;
  int trials = 0;
  bool any_identity = false;
  double max_identity_residual = 0.0;
  /// Minimum over trials of lambda_min(RHS - LHS) / max(1, ‖RHS‖), folded
  /// only from trials whose slack asserts an order.
  bool any_slack = false;
  double min_loewner_slack = 0.0;
  bool any_cross = false;
  double max_cross_residual = 0.0;
  std::vector<std::uint64_t> failures;
};

struct VerificationReport {
  RunConfig config;
  std::vector<TheoremAggregate> per_theorem;
  bool pass = true;
};

/// The deterministic instance for (theorem, trial index): module family,
/// block shape, scalars, and constrained data all derive from
/// trial_seed(master, theorem name, index). Families and sizes rotate with
/// the index so a suite sweeps every module kind.
TheoremInstance make_instance(TheoremId id, int index, const RunConfig& cfg);

/// Runs every configured theorem for cfg.trials seeded trials each, possibly
/// on several threads; the fold is by trial index, so the report does not
/// depend on scheduling.
VerificationReport run_suites(const RunConfig& cfg);

/// Byte-stable JSON document {config, per_theorem, pass}.
std::string report_to_json(const VerificationReport& report);
std::string render_summary(const VerificationReport& report);

}  // namespace bohrmod
