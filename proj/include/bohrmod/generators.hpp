#pragma once

#include "bohrmod/instance.hpp"

namespace bohrmod {

/// Whether the real conic alpha*u^2 + beta*v^2 = gamma has solutions.
bool conic_feasible(double alpha, double beta, double gamma);

/// A random point on that conic; exact up to rounding. Throws GenerationError
/// when infeasible.
std::pair<double, double> conic_sample(double alpha, double beta, double gamma,
                                       Rng& rng);

/// Constrained draws. Each builds its data as commuting functions of a random
/// spectral frame (optionally twisted by a shared unitary phase), so every
/// hypothesis holds exactly in exact arithmetic. All are deterministic per rng
/// state and validated by check_hypotheses before use.
std::pair<AdjointableOp, AdjointableOp> gen_constrained_pair(
    const ModuleSpace& space, const RealTriple& triple, Rng& rng);

std::pair<AlgebraElement, AlgebraElement> gen_central_pair(
    const AlgebraShape& shape, const RealTriple& triple, Rng& rng);

/// Module pair with <x,y> self-adjoint and alpha<x,x> + beta<y,y> = gamma e,
/// via a shared random isometry column times spectral samples. Works for every
/// module family.
std::pair<ModuleElement, ModuleElement> gen_module_pair(
    const ModuleSpace& space, const RealTriple& triple, Rng& rng);

/// Sequence-module pair whose components are commuting functions of one
/// Hermitian frame, with the conic budget spread across components.
std::pair<ModuleElement, ModuleElement> gen_l2_pair(const ModuleSpace& space,
                                                    const RealTriple& triple,
                                                    Rng& rng);

/// Real function pair on the bundle base with the conic holding pointwise.
std::pair<AlgebraElement, AlgebraElement> gen_bundle_pair(
    const ModuleSpace& space, const RealTriple& triple, Rng& rng);

std::vector<AdjointableOp> gen_bohrn_family(const ModuleSpace& space,
                                            const WeightVector& weights,
                                            Rng& rng,
                                            const GeneratorGuards& guards);

std::vector<AlgebraElement> gen_central_family(const AlgebraShape& shape,
                                               const WeightVector& weights,
                                               Rng& rng,
                                               const GeneratorGuards& guards);

/// Full per-theorem instance builders (hypothesis data plus probe vectors).
TheoremInstance gen_op_pair(const ModuleSpace& space, const RealTriple& triple,
                            std::uint64_t seed, const GeneratorGuards& g = {});
TheoremInstance gen_vec_pair(TheoremId id, const ModuleSpace& space,
                             const RealTriple& triple, std::uint64_t seed,
                             const GeneratorGuards& g = {});
TheoremInstance gen_euler_lagrange(const ModuleSpace& space,
                                   const RealTriple& triple,
                                   std::uint64_t seed,
                                   const GeneratorGuards& g = {});
TheoremInstance gen_bundle(const ModuleSpace& space, const RealTriple& triple,
                           std::uint64_t seed, const GeneratorGuards& g = {});
TheoremInstance gen_bohr_pq(const ModuleSpace& space, double p,
                            std::uint64_t seed, const GeneratorGuards& g = {});
TheoremInstance gen_bohr2(const ModuleSpace& space, double alpha,
                          std::uint64_t seed, const GeneratorGuards& g = {});
TheoremInstance gen_bohrn(const ModuleSpace& space, int n, std::uint64_t seed,
                          const GeneratorGuards& g = {});
TheoremInstance gen_bohrn_central(const ModuleSpace& space, int n,
                                  std::uint64_t seed,
                                  const GeneratorGuards& g = {});
TheoremInstance gen_amqm(int dim, int n, std::uint64_t seed,
                         const GeneratorGuards& g = {});

}  // namespace bohrmod
