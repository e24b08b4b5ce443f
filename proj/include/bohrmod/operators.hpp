#pragma once

#include <complex>
#include <memory>
#include <optional>
#include <vector>

#include "bohrmod/module.hpp"

namespace bohrmod {

enum class OpForm { Matrix, RightMult, Ket, Bra, Scale, Compose, Sum };

/// An adjointable module map built from the concrete forms that appear in the
/// verified proofs: k-by-k grids of algebra elements acting on algebra-valued
/// modules, right multiplications x -> xc by central elements, and the ket/bra
/// pair a -> za, v -> <z,v>. Scale/Compose/Sum combine them. Values are
/// immutable and cheap to copy (shared nodes).
class AdjointableOp {
 public:
  static AdjointableOp matrix_over_a(const ModuleSpace& space,
                                     std::vector<AlgebraElement> grid);
  static AdjointableOp identity(const ModuleSpace& space);
  /// Requires c central (otherwise x -> xc is not adjointable in general).
  static AdjointableOp right_mult(const ModuleSpace& space, AlgebraElement c);
  /// a -> za, from the algebra-as-module into z's space.
  static AdjointableOp ket(ModuleElement z);
  /// v -> <z, v>, from z's space into the algebra-as-module.
  static AdjointableOp bra(ModuleElement z);
  static AdjointableOp scale(std::complex<double> lambda, AdjointableOp op);
  /// lhs after rhs (apply rhs first).
  static AdjointableOp compose(AdjointableOp lhs, AdjointableOp rhs);
  static AdjointableOp sum(std::vector<AdjointableOp> terms);

  OpForm form() const;
  const ModuleSpace& domain() const;
  const ModuleSpace& codomain() const;

  /// RightMult only: the central factor c.
  const AlgebraElement& right_factor() const;
  /// Ket/Bra only: the anchoring module element z.
  const ModuleElement& anchor() const;
  /// Scale only.
  std::complex<double> scale_factor() const;
  /// Scale/Compose/Sum only.
  const std::vector<AdjointableOp>& children() const;

  ModuleElement apply(const ModuleElement& x) const;
  AdjointableOp adjoint() const;

  /// Grid of the map as an element of the k-by-k matrices over A (row-major).
  /// Available when domain = codomain is algebra-valued and the op contains no
  /// ket/bra factor; otherwise std::nullopt.
  std::optional<std::vector<AlgebraElement>> try_to_grid() const;
  /// Like try_to_grid but throws std::invalid_argument when unavailable.
  std::vector<AlgebraElement> to_grid() const;

 private:
  struct Node;
  explicit AdjointableOp(std::shared_ptr<const Node> node);
  std::shared_ptr<const Node> node_;
};

/// One dense complex matrix per algebra block: block b of a grid op on a
/// k-component module flattens to a (k*n_b)-square matrix. The map
/// grid -> flats is a *-homomorphism (faithful at finite dimension).
std::vector<CMat> flatten_grid(const ModuleSpace& space,
                               const std::vector<AlgebraElement>& grid);
std::vector<AlgebraElement> unflatten_grid(const ModuleSpace& space,
                                           const std::vector<CMat>& flats);
std::vector<CMat> flatten_op(const AdjointableOp& op);
AdjointableOp op_from_flats(const ModuleSpace& space,
                            const std::vector<CMat>& flats);

/// Self-adjointness via random probes <Tx,y> vs <x,Ty>, plus the structural
/// grid test when a grid is available. Disagreement between the two is a
/// representation bug and throws std::logic_error.
bool op_is_self_adjoint(const AdjointableOp& op, int probes, std::uint64_t seed,
                        const Tolerance& tol = {});

/// |T|^2 = T*T, simplified structurally where possible.
AdjointableOp op_abs_squared(const AdjointableOp& op);

/// |T| = (T*T)^{1/2}. RightMult(c) maps to RightMult(|c|); grid forms go
/// through flatten -> sqrt_psd -> unflatten. Ket/bra forms are unsupported.
AdjointableOp op_abs(const AdjointableOp& op);

/// max over probes of the relative payload residual between a(x) and b(x).
double op_probe_residual(const AdjointableOp& a, const AdjointableOp& b,
                         int probes, std::uint64_t seed);

/// max over probe pairs of rel residual between <Tx,y> and <x,T*y>.
double adjoint_probe_defect(const AdjointableOp& op, int probes,
                            std::uint64_t seed);

}  // namespace bohrmod
