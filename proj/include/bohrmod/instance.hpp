#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "bohrmod/operators.hpp"

namespace bohrmod {

enum class TheoremId {
  OpPair,         // operator-pair identity on a module
  VecPair,        // vector-pair identity, probed with algebra elements
  L2,             // finite two-summable sequence version
  OpTuple,        // rectangular-matrix tuple version
  EulerLagrange,  // central-element identity
  Bundle,         // pointwise + sup identity for bundle sections
  BohrPQ,         // conjugate-exponent identity with order clauses
  Bohr2,          // two-operator convex bound
  BohrN,          // n-operator convex bound with reduction replay
  BohrNCentral,   // n central elements, right-multiplication lift
  AmQm,           // arithmetic-quadratic mean bound for matrices
};

std::string to_string(TheoremId id);
TheoremId parse_theorem_id(const std::string& name);
const std::vector<TheoremId>& all_theorems();

struct RealTriple {
  double alpha = 1.0;
  double beta = 1.0;
  double gamma = 2.0;
};

struct ConjugatePair {
  double p = 2.0;
  double q = 2.0;

  /// q = p/(p-1); requires p >= 1 + eps_p and checks 1/p + 1/q = 1 to 1e-14.
  static ConjugatePair from_p(double p, double eps_p);
};

struct WeightVector {
  std::vector<double> t;

  int size() const { return static_cast<int>(t.size()); }
  double sum() const;
  /// Positive weights >= w_min summing to 1 within 1e-14.
  static WeightVector random(int n, Rng& rng, double w_min);
  void validate(double w_min) const;  // throws std::invalid_argument
};

/// Numerical trust guards; all configurable, defaults documented inline.
struct GeneratorGuards {
  double eps_p = 0.05;    // p >= 1.05 keeps 1/(p-1) bounded
  double w_min = 0.02;    // weight floor
  double delta = 0.05;    // conditioning floor for inverse square roots
  double phi_min = 0.1;   // spectral floor making the first element invertible
  int retry_budget = 32;  // constrained draws before giving up on a seed
};

/// Everything one trial needs: scalars, hypothesis-constrained data, and the
/// free probe vectors, all derived from one seed.
struct TheoremInstance {
  TheoremId id = TheoremId::OpPair;
  std::uint64_t seed = 0;
  ModuleSpace space;
  RealTriple triple;
  ConjugatePair pq;
  WeightVector weights;
  std::vector<AdjointableOp> ops;
  std::vector<AlgebraElement> algs;
  std::vector<ModuleElement> vecs;
  GeneratorGuards guards;
};

/// Hypothesis residuals re-derived from the instance data alone, one named
/// value per clause. Every value is relative to its own scale; the instance is
/// admissible iff all of them are at most kAdmissibleTol.
inline constexpr double kAdmissibleTol = 1e-10;

struct HypothesisReport {
  std::vector<std::pair<std::string, double>> residuals;
  bool admissible = true;
  std::string worst_name;
  double worst_value = 0.0;

  void add(const std::string& name, double value);
};

HypothesisReport check_hypotheses(const TheoremInstance& inst);

}  // namespace bohrmod
