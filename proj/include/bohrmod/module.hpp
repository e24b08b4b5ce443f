#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "bohrmod/algebra.hpp"

namespace bohrmod {

enum class ModuleKind {
  SelfModule,  // the algebra over itself, <a,b> = a*b
  DirectSum,   // A^k, <x,y> = sum_i x_i* y_i
  SeqModule,   // truncated two-summable sequences over A, same form as A^L
  RectTuple,   // n-tuples of m-by-d matrices over M_d, <T,S> = sum_i T_i* S_i
  Bundle,      // sections of a finite bundle over kappa points, algebra C^kappa
};

std::string to_string(ModuleKind kind);

/// Description of one concrete inner-product module. Small value type; elements
/// carry a copy.
struct ModuleSpace {
  ModuleKind kind = ModuleKind::SelfModule;
  AlgebraShape algebra;
  int components = 1;           // payload length
  int rect_rows = 0;            // RectTuple: m
  int rect_cols = 0;            // RectTuple: d
  std::vector<int> fiber_dims;  // Bundle: fiber dimension per point

  static ModuleSpace self_module(AlgebraShape shape);
  static ModuleSpace direct_sum(AlgebraShape shape, int k);
  static ModuleSpace seq_module(AlgebraShape shape, int length);
  static ModuleSpace rect_tuple(int n, int m, int d);
  static ModuleSpace bundle(std::vector<int> fiber_dims);

  /// True when components are algebra elements (SelfModule/DirectSum/SeqModule).
  bool algebra_valued() const;

  std::string to_string() const;
  bool operator==(const ModuleSpace&) const = default;
};

/// Element of a ModuleSpace. Payload layout depends on the kind:
/// algebra-valued kinds hold one AlgebraElement per component, RectTuple holds
/// n rectangular matrices, Bundle holds one fiber vector per point.
class ModuleElement {
 public:
  using Payload = std::variant<std::vector<AlgebraElement>, std::vector<CMat>,
                               std::vector<CVec>>;

  ModuleElement(ModuleSpace space, Payload payload);

  static ModuleElement zero(const ModuleSpace& space);
  static ModuleElement random(const ModuleSpace& space, Rng& rng);

  const ModuleSpace& space() const { return space_; }

  ModuleElement operator+(const ModuleElement& rhs) const;
  ModuleElement operator-(const ModuleElement& rhs) const;
  ModuleElement operator-() const;

  /// Right action x.a by an algebra element.
  ModuleElement act(const AlgebraElement& a) const;

  const std::vector<AlgebraElement>& alg_components() const;
  const std::vector<CMat>& mat_components() const;
  const std::vector<CVec>& vec_components() const;

  /// Euclidean norm of the raw payload, used for relative residuals.
  double payload_norm() const;

 private:
  ModuleSpace space_;
  Payload payload_;
};

ModuleElement operator*(std::complex<double> lambda, const ModuleElement& x);
ModuleElement operator*(double lambda, const ModuleElement& x);

/// The A-valued inner product of the space, conjugate-linear in x.
AlgebraElement inner(const ModuleElement& x, const ModuleElement& y);

/// |x| = <x,x>^{1/2} as an algebra element.
AlgebraElement mod_abs(const ModuleElement& x);

/// Module norm ‖<x,x>‖^{1/2}.
double mod_norm(const ModuleElement& x);

/// ‖x − y‖ of payloads over max(‖x‖, ‖y‖, 1).
double rel_residual(const ModuleElement& x, const ModuleElement& y);

/// Worst-case axiom residuals over randomized trials, each relative to the
/// scale of the quantities involved.
struct AxiomReport {
  int trials = 0;
  double psd_defect = 0.0;        // negative part of lambda_min<x,x>
  double zero_norm = 0.0;         // ‖<0,0>‖
  double linearity_residual = 0.0;
  double action_residual = 0.0;
  double symmetry_residual = 0.0;

  double max_defect() const;
};

AxiomReport check_module_axioms(const ModuleSpace& space, int trials,
                                uint64_t seed);

}  // namespace bohrmod
