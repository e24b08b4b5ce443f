#include "bohrmod/generators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "bohrmod/errors.hpp"

namespace bohrmod {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;
}

std::string to_string(TheoremId id) {
  switch (id) {
    case TheoremId::OpPair: return "op-pair";
    case TheoremId::VecPair: return "vec-pair";
    case TheoremId::L2: return "l2";
    case TheoremId::OpTuple: return "op-tuple";
    case TheoremId::EulerLagrange: return "euler-lagrange";
    case TheoremId::Bundle: return "bundle";
    case TheoremId::BohrPQ: return "bohr-pq";
    case TheoremId::Bohr2: return "bohr2";
    case TheoremId::BohrN: return "bohrn";
    case TheoremId::BohrNCentral: return "bohrn-central";
    case TheoremId::AmQm: return "amqm";
  }
  return "?";
}

TheoremId parse_theorem_id(const std::string& name) {
  for (TheoremId id : all_theorems()) {
    if (to_string(id) == name) return id;
  }
  throw std::invalid_argument("unknown theorem id: '" + name + "'");
}

const std::vector<TheoremId>& all_theorems() {
  static const std::vector<TheoremId> ids = {
      TheoremId::OpPair,  TheoremId::VecPair,      TheoremId::L2,
      TheoremId::OpTuple, TheoremId::EulerLagrange, TheoremId::Bundle,
      TheoremId::BohrPQ,  TheoremId::Bohr2,        TheoremId::BohrN,
      TheoremId::BohrNCentral, TheoremId::AmQm};
  return ids;
}

ConjugatePair ConjugatePair::from_p(double p, double eps_p) {
  if (!(p >= 1.0 + eps_p))
    throw std::invalid_argument("conjugate exponent p must be >= 1 + eps_p");
  ConjugatePair c;
  c.p = p;
  c.q = p / (p - 1.0);
  if (std::abs(1.0 / c.p + 1.0 / c.q - 1.0) > 1e-14)
    throw NumericError("conjugate exponent arithmetic drifted");
  return c;
}

double WeightVector::sum() const {
  double s = 0.0;
  for (double w : t) s += w;
  return s;
}

WeightVector WeightVector::random(int n, Rng& rng, double w_min) {
  if (n < 1) throw std::invalid_argument("weights need n >= 1");
  if (n * w_min >= 1.0)
    throw std::invalid_argument("weight floor infeasible for this n");
  WeightVector w;
  w.t.assign(static_cast<size_t>(n), 0.0);
  if (n == 1) {
    w.t[0] = 1.0;
    return w;
  }
  std::vector<double> e(static_cast<size_t>(n));
  double s = 0.0;
  for (double& v : e) {
    v = -std::log(1.0 - rng.uniform());
    s += v;
  }
  double acc = 0.0;
  for (int i = 0; i + 1 < n; ++i) {
    w.t[static_cast<size_t>(i)] =
        w_min + (1.0 - n * w_min) * e[static_cast<size_t>(i)] / s;
    acc += w.t[static_cast<size_t>(i)];
  }
  w.t[static_cast<size_t>(n - 1)] = 1.0 - acc;
  return w;
}

void WeightVector::validate(double w_min) const {
  if (t.empty()) throw std::invalid_argument("empty weight vector");
  for (double v : t) {
    if (v < w_min - 1e-12)
      throw std::invalid_argument("weight below configured floor");
  }
  if (std::abs(sum() - 1.0) > 1e-14)
    throw std::invalid_argument("weights do not sum to one");
}

bool conic_feasible(double alpha, double beta, double gamma) {
  if (alpha == 0.0 && beta == 0.0) return gamma == 0.0;
  if (alpha == 0.0) return gamma / beta >= 0.0;
  if (beta == 0.0) return gamma / alpha >= 0.0;
  if (alpha > 0.0 && beta > 0.0) return gamma >= 0.0;
  if (alpha < 0.0 && beta < 0.0) return gamma <= 0.0;
  return true;  // mixed signs: hyperbola covers every gamma
}

std::pair<double, double> conic_sample(double alpha, double beta, double gamma,
                                       Rng& rng) {
  if (!conic_feasible(alpha, beta, gamma))
    throw GenerationError("conic alpha*u^2 + beta*v^2 = gamma has no real points");
  const auto coin = [&rng]() { return rng.uniform() < 0.5 ? -1.0 : 1.0; };
  if (alpha == 0.0 && beta == 0.0) return {rng.uniform(-1.5, 1.5), rng.uniform(-1.5, 1.5)};
  if (alpha == 0.0) {
    const double v = coin() * std::sqrt(gamma / beta);
    return {rng.uniform(-1.5, 1.5), v};
  }
  if (beta == 0.0) {
    const double u = coin() * std::sqrt(gamma / alpha);
    return {u, rng.uniform(-1.5, 1.5)};
  }
  if (alpha > 0.0 && beta > 0.0) {
    const double th = rng.uniform(0.0, kTwoPi);
    return {std::sqrt(gamma / alpha) * std::cos(th),
            std::sqrt(gamma / beta) * std::sin(th)};
  }
  if (alpha < 0.0 && beta < 0.0) {
    auto [u, v] = conic_sample(-alpha, -beta, -gamma, rng);
    return {u, v};
  }
  if (alpha < 0.0) {  // mirror to the alpha > 0 > beta branch
    auto [v, u] = conic_sample(beta, alpha, gamma, rng);
    return {u, v};
  }
  // alpha > 0 > beta
  const double t = rng.uniform(-1.5, 1.5);
  if (gamma > 0.0)
    return {coin() * std::sqrt(gamma / alpha) * std::cosh(t),
            std::sqrt(gamma / -beta) * std::sinh(t)};
  if (gamma < 0.0)
    return {std::sqrt(-gamma / alpha) * std::sinh(t),
            coin() * std::sqrt(gamma / beta) * std::cosh(t)};
  return {coin() * std::sqrt(-beta / alpha) * t, t};
}

namespace {

std::complex<double> random_phase(Rng& rng) {
  return std::polar(1.0, rng.uniform(0.0, kTwoPi));
}

CMat framed_diagonal(const CMat& q, const CVec& d) {
  return q * d.asDiagonal() * q.adjoint();
}

}  // namespace

std::pair<AdjointableOp, AdjointableOp> gen_constrained_pair(
    const ModuleSpace& space, const RealTriple& triple, Rng& rng) {
  if (!space.algebra_valued())
    throw std::invalid_argument("constrained op pairs need grid operators");
  const int k = space.components;
  std::vector<CMat> flats_t, flats_s;
  for (int n : space.algebra.block_dims) {
    const int dim = k * n;
    const CMat frame = random_unitary(dim, rng);
    const CMat left = random_unitary(dim, rng);
    CVec dt(dim), ds(dim);
    for (int j = 0; j < dim; ++j) {
      auto [u, v] = conic_sample(triple.alpha, triple.beta, triple.gamma, rng);
      const std::complex<double> phase = random_phase(rng);
      dt(j) = u * phase;
      ds(j) = v * phase;
    }
    flats_t.push_back(left * framed_diagonal(frame, dt));
    flats_s.push_back(left * framed_diagonal(frame, ds));
  }
  return {op_from_flats(space, flats_t), op_from_flats(space, flats_s)};
}

std::pair<AlgebraElement, AlgebraElement> gen_central_pair(
    const AlgebraShape& shape, const RealTriple& triple, Rng& rng) {
  std::vector<std::complex<double>> sa, sb;
  for (size_t b = 0; b < shape.block_dims.size(); ++b) {
    auto [u, v] = conic_sample(triple.alpha, triple.beta, triple.gamma, rng);
    std::complex<double> phase{1.0, 0.0};
    if (rng.uniform() < 0.5) phase = random_phase(rng);
    sa.push_back(u * phase);
    sb.push_back(v * phase);
  }
  return {AlgebraElement::from_block_scalars(shape, sa),
          AlgebraElement::from_block_scalars(shape, sb)};
}

std::pair<ModuleElement, ModuleElement> gen_module_pair(
    const ModuleSpace& space, const RealTriple& triple, Rng& rng) {
  if (space.algebra_valued()) {
    const int k = space.components;
    std::vector<CMat> stacked_x, stacked_y;  // per block, (k n) x n
    for (int n : space.algebra.block_dims) {
      const CMat column = random_unitary(k * n, rng).leftCols(n);
      const CMat frame = random_unitary(n, rng);
      CVec df(n), dg(n);
      for (int j = 0; j < n; ++j) {
        auto [u, v] = conic_sample(triple.alpha, triple.beta, triple.gamma, rng);
        const std::complex<double> phase = random_phase(rng);
        df(j) = u * phase;
        dg(j) = v * phase;
      }
      stacked_x.push_back(column * framed_diagonal(frame, df));
      stacked_y.push_back(column * framed_diagonal(frame, dg));
    }
    std::vector<AlgebraElement> xs, ys;
    for (int i = 0; i < k; ++i) {
      std::vector<CMat> bx, by;
      for (size_t b = 0; b < space.algebra.block_dims.size(); ++b) {
        const int n = space.algebra.block_dims[b];
        bx.push_back(stacked_x[b].middleRows(i * n, n));
        by.push_back(stacked_y[b].middleRows(i * n, n));
      }
      xs.emplace_back(space.algebra, std::move(bx));
      ys.emplace_back(space.algebra, std::move(by));
    }
    return {ModuleElement(space, std::move(xs)),
            ModuleElement(space, std::move(ys))};
  }
  if (space.kind == ModuleKind::RectTuple) {
    const int n = space.components, m = space.rect_rows, d = space.rect_cols;
    if (n * m < d)
      throw GenerationError("tuple too thin to carry an isometric frame");
    const CMat column = random_unitary(n * m, rng).leftCols(d);
    const CMat frame = random_unitary(d, rng);
    CVec df(d), dg(d);
    for (int j = 0; j < d; ++j) {
      auto [u, v] = conic_sample(triple.alpha, triple.beta, triple.gamma, rng);
      const std::complex<double> phase = random_phase(rng);
      df(j) = u * phase;
      dg(j) = v * phase;
    }
    const CMat sx = column * framed_diagonal(frame, df);
    const CMat sy = column * framed_diagonal(frame, dg);
    std::vector<CMat> xs, ys;
    for (int i = 0; i < n; ++i) {
      xs.push_back(sx.middleRows(i * m, m));
      ys.push_back(sy.middleRows(i * m, m));
    }
    return {ModuleElement(space, std::move(xs)),
            ModuleElement(space, std::move(ys))};
  }
  std::vector<CVec> xs, ys;
  for (int f : space.fiber_dims) {
    CVec w(f);
    for (int j = 0; j < f; ++j) w(j) = rng.gaussian_complex();
    if (w.norm() < 1e-9) w = CVec::Unit(f, 0);
    w.normalize();
    auto [u, v] = conic_sample(triple.alpha, triple.beta, triple.gamma, rng);
    xs.push_back(u * w);
    ys.push_back(v * w);
  }
  return {ModuleElement(space, std::move(xs)),
          ModuleElement(space, std::move(ys))};
}

std::pair<ModuleElement, ModuleElement> gen_l2_pair(const ModuleSpace& space,
                                                    const RealTriple& triple,
                                                    Rng& rng) {
  if (space.kind != ModuleKind::SeqModule)
    throw std::invalid_argument("sequence pairs need a sequence module");
  const int len = space.components;
  // per block: len diagonal vectors, entries indexed by eigenvalue slot
  std::vector<std::vector<CVec>> fd, gd;
  std::vector<CMat> frames;
  for (int n : space.algebra.block_dims) {
    frames.push_back(random_unitary(n, rng));
    std::vector<CVec> fb(static_cast<size_t>(len), CVec::Zero(n));
    std::vector<CVec> gb(static_cast<size_t>(len), CVec::Zero(n));
    for (int j = 0; j < n; ++j) {
      auto [big_f, big_g] =
          conic_sample(triple.alpha, triple.beta, triple.gamma, rng);
      CVec omega(len), eta(len);
      for (int i = 0; i < len; ++i) omega(i) = rng.gaussian();
      for (int i = 0; i < len; ++i) eta(i) = rng.gaussian();
      if (omega.norm() < 1e-9) omega = CVec::Unit(len, 0);
      if (eta.norm() < 1e-9) eta = CVec::Unit(len, 0);
      omega.normalize();
      eta.normalize();
      for (int i = 0; i < len; ++i) {
        const std::complex<double> phase = random_phase(rng);
        fb[static_cast<size_t>(i)](j) = big_f * omega(i).real() * phase;
        gb[static_cast<size_t>(i)](j) = big_g * eta(i).real() * phase;
      }
    }
    fd.push_back(std::move(fb));
    gd.push_back(std::move(gb));
  }
  std::vector<AlgebraElement> xs, ys;
  for (int i = 0; i < len; ++i) {
    std::vector<CMat> bx, by;
    for (size_t b = 0; b < space.algebra.block_dims.size(); ++b) {
      bx.push_back(framed_diagonal(frames[b], fd[b][static_cast<size_t>(i)]));
      by.push_back(framed_diagonal(frames[b], gd[b][static_cast<size_t>(i)]));
    }
    xs.emplace_back(space.algebra, std::move(bx));
    ys.emplace_back(space.algebra, std::move(by));
  }
  return {ModuleElement(space, std::move(xs)),
          ModuleElement(space, std::move(ys))};
}

std::pair<AlgebraElement, AlgebraElement> gen_bundle_pair(
    const ModuleSpace& space, const RealTriple& triple, Rng& rng) {
  if (space.kind != ModuleKind::Bundle)
    throw std::invalid_argument("bundle pairs need a bundle module");
  std::vector<std::complex<double>> fs, gs;
  for (int t = 0; t < space.components; ++t) {
    auto [u, v] = conic_sample(triple.alpha, triple.beta, triple.gamma, rng);
    fs.emplace_back(u, 0.0);
    gs.emplace_back(v, 0.0);
  }
  return {AlgebraElement::from_block_scalars(space.algebra, fs),
          AlgebraElement::from_block_scalars(space.algebra, gs)};
}

namespace {

/// Point on the ellipsoid sum_i t_i c_i^2 = 1 with |c_1| >= phi_min and
/// 1 - t_n c_n^2 comfortably above the conditioning floor.
std::vector<double> ellipsoid_sample(const WeightVector& weights, Rng& rng,
                                     const GeneratorGuards& guards) {
  const int n = weights.size();
  for (int attempt = 0; attempt < guards.retry_budget; ++attempt) {
    std::vector<double> z(static_cast<size_t>(n));
    double s = 0.0;
    for (int i = 0; i < n; ++i) {
      z[static_cast<size_t>(i)] = rng.gaussian();
      s += weights.t[static_cast<size_t>(i)] * z[static_cast<size_t>(i)] *
           z[static_cast<size_t>(i)];
    }
    if (s < 1e-12) continue;
    const double inv = 1.0 / std::sqrt(s);
    for (double& v : z) v *= inv;
    if (std::abs(z[0]) < guards.phi_min) continue;
    const double tail = weights.t[static_cast<size_t>(n - 1)] *
                        z[static_cast<size_t>(n - 1)] *
                        z[static_cast<size_t>(n - 1)];
    if (1.0 - tail < 1.05 * guards.delta) continue;
    return z;
  }
  throw GenerationError("ellipsoid draw exhausted its retry budget");
}

}  // namespace

std::vector<AdjointableOp> gen_bohrn_family(const ModuleSpace& space,
                                            const WeightVector& weights,
                                            Rng& rng,
                                            const GeneratorGuards& guards) {
  if (!space.algebra_valued())
    throw std::invalid_argument("operator families need grid operators");
  const int n = weights.size();
  const int k = space.components;
  std::vector<std::vector<CMat>> flats(static_cast<size_t>(n));
  for (int nb : space.algebra.block_dims) {
    const int dim = k * nb;
    const CMat frame = random_unitary(dim, rng);
    std::vector<CVec> diags(static_cast<size_t>(n), CVec::Zero(dim));
    for (int j = 0; j < dim; ++j) {
      const std::vector<double> c = ellipsoid_sample(weights, rng, guards);
      const std::complex<double> phase = random_phase(rng);
      for (int i = 0; i < n; ++i) {
        // The first two members share a phase twist (their cross product stays
        // self-adjoint); the rest must remain self-adjoint outright.
        diags[static_cast<size_t>(i)](j) =
            (i < 2) ? c[static_cast<size_t>(i)] * phase
                    : std::complex<double>(c[static_cast<size_t>(i)], 0.0);
      }
    }
    for (int i = 0; i < n; ++i)
      flats[static_cast<size_t>(i)].push_back(
          framed_diagonal(frame, diags[static_cast<size_t>(i)]));
  }
  std::vector<AdjointableOp> ops;
  ops.reserve(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i)
    ops.push_back(op_from_flats(space, flats[static_cast<size_t>(i)]));
  return ops;
}

std::vector<AlgebraElement> gen_central_family(const AlgebraShape& shape,
                                               const WeightVector& weights,
                                               Rng& rng,
                                               const GeneratorGuards& guards) {
  const int n = weights.size();
  std::vector<std::vector<std::complex<double>>> scalars(
      static_cast<size_t>(n));
  for (size_t b = 0; b < shape.block_dims.size(); ++b) {
    const std::vector<double> c = ellipsoid_sample(weights, rng, guards);
    std::complex<double> phase{1.0, 0.0};
    if (rng.uniform() < 0.5) phase = random_phase(rng);
    for (int i = 0; i < n; ++i)
      scalars[static_cast<size_t>(i)].push_back(
          (i < 2) ? c[static_cast<size_t>(i)] * phase
                  : std::complex<double>(c[static_cast<size_t>(i)], 0.0));
  }
  std::vector<AlgebraElement> out;
  out.reserve(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i)
    out.push_back(AlgebraElement::from_block_scalars(
        shape, scalars[static_cast<size_t>(i)]));
  return out;
}

TheoremInstance gen_op_pair(const ModuleSpace& space, const RealTriple& triple,
                            std::uint64_t seed, const GeneratorGuards& g) {
  Rng rng(seed);
  TheoremInstance inst;
  inst.id = TheoremId::OpPair;
  inst.seed = seed;
  inst.space = space;
  inst.triple = triple;
  inst.guards = g;
  auto [t, s] = gen_constrained_pair(space, triple, rng);
  inst.ops = {t, s};
  inst.vecs = {ModuleElement::random(space, rng),
               ModuleElement::random(space, rng)};
  return inst;
}

TheoremInstance gen_vec_pair(TheoremId id, const ModuleSpace& space,
                             const RealTriple& triple, std::uint64_t seed,
                             const GeneratorGuards& g) {
  if (id != TheoremId::VecPair && id != TheoremId::L2 &&
      id != TheoremId::OpTuple)
    throw std::invalid_argument("gen_vec_pair covers the vector-pair results");
  Rng rng(seed);
  TheoremInstance inst;
  inst.id = id;
  inst.seed = seed;
  inst.space = space;
  inst.triple = triple;
  inst.guards = g;
  auto [x, y] = (id == TheoremId::L2) ? gen_l2_pair(space, triple, rng)
                                      : gen_module_pair(space, triple, rng);
  inst.vecs = {std::move(x), std::move(y)};
  inst.algs = {AlgebraElement::random(space.algebra, rng),
               AlgebraElement::random(space.algebra, rng)};
  return inst;
}

TheoremInstance gen_euler_lagrange(const ModuleSpace& space,
                                   const RealTriple& triple,
                                   std::uint64_t seed,
                                   const GeneratorGuards& g) {
  Rng rng(seed);
  TheoremInstance inst;
  inst.id = TheoremId::EulerLagrange;
  inst.seed = seed;
  inst.space = space;
  inst.triple = triple;
  inst.guards = g;
  auto [a, b] = gen_central_pair(space.algebra, triple, rng);
  inst.algs = {std::move(a), std::move(b)};
  inst.vecs = {ModuleElement::random(space, rng),
               ModuleElement::random(space, rng)};
  return inst;
}

TheoremInstance gen_bundle(const ModuleSpace& space, const RealTriple& triple,
                           std::uint64_t seed, const GeneratorGuards& g) {
  Rng rng(seed);
  TheoremInstance inst;
  inst.id = TheoremId::Bundle;
  inst.seed = seed;
  inst.space = space;
  inst.triple = triple;
  inst.guards = g;
  auto [f, gg] = gen_bundle_pair(space, triple, rng);
  inst.algs = {std::move(f), std::move(gg)};
  inst.vecs = {ModuleElement::random(space, rng),
               ModuleElement::random(space, rng)};
  return inst;
}

TheoremInstance gen_bohr_pq(const ModuleSpace& space, double p,
                            std::uint64_t seed, const GeneratorGuards& g) {
  Rng rng(seed);
  TheoremInstance inst;
  inst.id = TheoremId::BohrPQ;
  inst.seed = seed;
  inst.space = space;
  inst.pq = ConjugatePair::from_p(p, g.eps_p);
  inst.guards = g;
  ModuleElement x = ModuleElement::random(space, rng);
  // A quarter of the draws land exactly on the equality locus y = (1-p)x.
  ModuleElement y = (rng.uniform() < 0.25)
                        ? (1.0 - p) * x
                        : ModuleElement::random(space, rng);
  inst.vecs = {std::move(x), std::move(y)};
  return inst;
}

TheoremInstance gen_bohr2(const ModuleSpace& space, double alpha,
                          std::uint64_t seed, const GeneratorGuards& g) {
  if (!(alpha > 0.0 && alpha < 1.0))
    throw std::invalid_argument("convex coefficient must lie in (0,1)");
  TheoremInstance inst =
      gen_op_pair(space, RealTriple{alpha, 1.0 - alpha, 1.0}, seed, g);
  inst.id = TheoremId::Bohr2;
  return inst;
}

TheoremInstance gen_bohrn(const ModuleSpace& space, int n, std::uint64_t seed,
                          const GeneratorGuards& g) {
  if (n < 2) throw std::invalid_argument("the n-operator bound needs n >= 2");
  Rng rng(seed);
  TheoremInstance inst;
  inst.id = TheoremId::BohrN;
  inst.seed = seed;
  inst.space = space;
  inst.guards = g;
  inst.weights = WeightVector::random(n, rng, g.w_min);
  inst.ops = gen_bohrn_family(space, inst.weights, rng, g);
  for (int i = 0; i < n; ++i)
    inst.vecs.push_back(ModuleElement::random(space, rng));
  return inst;
}

TheoremInstance gen_bohrn_central(const ModuleSpace& space, int n,
                                  std::uint64_t seed,
                                  const GeneratorGuards& g) {
  if (n < 2) throw std::invalid_argument("the n-element bound needs n >= 2");
  Rng rng(seed);
  TheoremInstance inst;
  inst.id = TheoremId::BohrNCentral;
  inst.seed = seed;
  inst.space = space;
  inst.guards = g;
  inst.weights = WeightVector::random(n, rng, g.w_min);
  inst.algs = gen_central_family(space.algebra, inst.weights, rng, g);
  for (int i = 0; i < n; ++i)
    inst.vecs.push_back(ModuleElement::random(space, rng));
  return inst;
}

TheoremInstance gen_amqm(int dim, int n, std::uint64_t seed,
                         const GeneratorGuards& g) {
  if (n < 1) throw std::invalid_argument("the mean bound needs n >= 1");
  Rng rng(seed);
  TheoremInstance inst;
  inst.id = TheoremId::AmQm;
  inst.seed = seed;
  inst.space = ModuleSpace::self_module(AlgebraShape{{dim}});
  inst.guards = g;
  inst.weights = WeightVector::random(n, rng, g.w_min);
  if (n >= 2 && rng.uniform() < 0.3) {
    // The mean bound allows zero weights; exercise that edge.
    const int j = rng.uniform_int(0, n - 2);
    const double rest = 1.0 - inst.weights.t[static_cast<size_t>(j)];
    inst.weights.t[static_cast<size_t>(j)] = 0.0;
    for (int i = 0; i < n; ++i) {
      if (i != j) inst.weights.t[static_cast<size_t>(i)] /= rest;
    }
    double acc = 0.0;
    for (int i = 0; i + 1 < n; ++i) acc += inst.weights.t[static_cast<size_t>(i)];
    inst.weights.t[static_cast<size_t>(n - 1)] = 1.0 - acc;
  }
  for (int i = 0; i < n; ++i)
    inst.algs.push_back(AlgebraElement::random(inst.space.algebra, rng));
  return inst;
}

namespace {

double rel_to(double defect, double scale) {
  return defect / std::max(1.0, scale);
}

void add_pair_constraints(HypothesisReport& report, const RealTriple& triple,
                          const std::vector<CMat>& ft,
                          const std::vector<CMat>& fs) {
  double sa = 0.0, sa_scale = 1.0, con = 0.0, con_scale = 1.0;
  for (size_t b = 0; b < ft.size(); ++b) {
    const CMat cross = ft[b].adjoint() * fs[b];
    sa = std::max(sa, (cross - CMat(cross.adjoint())).norm());
    sa_scale = std::max(sa_scale, cross.norm());
    const CMat tt = ft[b].adjoint() * ft[b];
    const CMat ss = fs[b].adjoint() * fs[b];
    const CMat id = CMat::Identity(ft[b].rows(), ft[b].cols());
    con = std::max(
        con, (triple.alpha * tt + triple.beta * ss - triple.gamma * id).norm());
    con_scale = std::max(con_scale, std::abs(triple.alpha) * tt.norm() +
                                        std::abs(triple.beta) * ss.norm() +
                                        std::abs(triple.gamma) * id.norm());
  }
  report.add("cross-self-adjoint", sa / sa_scale);
  report.add("conic-constraint", con / con_scale);
}

void add_gram_constraints(HypothesisReport& report, const RealTriple& triple,
                          const ModuleElement& x, const ModuleElement& y) {
  const AlgebraElement gxy = inner(x, y);
  report.add("inner-self-adjoint",
             rel_to(gxy.self_adjoint_defect(), gxy.frobenius_norm()));
  const AlgebraElement gxx = inner(x, x);
  const AlgebraElement gyy = inner(y, y);
  const AlgebraElement unit = AlgebraElement::unit(x.space().algebra);
  const AlgebraElement lhs =
      triple.alpha * gxx + triple.beta * gyy;
  const AlgebraElement rhs = triple.gamma * unit;
  const double scale = std::abs(triple.alpha) * gxx.frobenius_norm() +
                       std::abs(triple.beta) * gyy.frobenius_norm() +
                       std::abs(triple.gamma) * unit.frobenius_norm();
  report.add("conic-constraint", rel_to((lhs - rhs).frobenius_norm(), scale));
}

void add_central_pair_constraints(HypothesisReport& report,
                                  const RealTriple& triple,
                                  const AlgebraElement& a,
                                  const AlgebraElement& b) {
  report.add("a-central", rel_to(a.central_defect(), a.frobenius_norm()));
  report.add("b-central", rel_to(b.central_defect(), b.frobenius_norm()));
  const AlgebraElement cross = a.adjoint() * b;
  report.add("cross-self-adjoint",
             rel_to(cross.self_adjoint_defect(), cross.frobenius_norm()));
  const AlgebraElement unit = AlgebraElement::unit(a.shape());
  const AlgebraElement aa = a.adjoint() * a;
  const AlgebraElement bb = b.adjoint() * b;
  const AlgebraElement lhs = triple.alpha * aa + triple.beta * bb;
  const double scale = std::abs(triple.alpha) * aa.frobenius_norm() +
                       std::abs(triple.beta) * bb.frobenius_norm() +
                       std::abs(triple.gamma) * unit.frobenius_norm();
  report.add("conic-constraint",
             rel_to((lhs - triple.gamma * unit).frobenius_norm(), scale));
}

void add_family_constraints(HypothesisReport& report,
                            const WeightVector& weights,
                            const std::vector<CMat> flats[],
                            int n, int block_count,
                            const GeneratorGuards& guards) {
  double sa = 0.0, sa_scale = 1.0;
  double con = 0.0, con_scale = 1.0;
  double herm = 0.0, herm_scale = 1.0;
  double comm = 0.0, comm_scale = 1.0;
  double minsv1 = std::numeric_limits<double>::infinity();
  double minsv2 = minsv1;
  double cond = minsv1;
  for (int b = 0; b < block_count; ++b) {
    const CMat cross = flats[0][static_cast<size_t>(b)].adjoint() *
                       flats[1][static_cast<size_t>(b)];
    sa = std::max(sa, (cross - CMat(cross.adjoint())).norm());
    sa_scale = std::max(sa_scale, cross.norm());
    const auto& f0 = flats[0][static_cast<size_t>(b)];
    CMat acc = CMat::Zero(f0.rows(), f0.cols());
    double block_scale = 1.0;
    std::vector<CMat> abs_sq, abs_val;
    for (int i = 0; i < n; ++i) {
      const CMat g = flats[i][static_cast<size_t>(b)].adjoint() *
                     flats[i][static_cast<size_t>(b)];
      abs_sq.push_back(g);
      abs_val.push_back(sqrt_psd(g));
      acc += weights.t[static_cast<size_t>(i)] * g;
      block_scale += weights.t[static_cast<size_t>(i)] * g.norm();
    }
    const CMat id = CMat::Identity(f0.rows(), f0.cols());
    con = std::max(con, (acc - id).norm());
    con_scale = std::max(con_scale, block_scale);
    if (n >= 3) {
      for (int i = 2; i < n; ++i) {
        const CMat& fi = flats[i][static_cast<size_t>(b)];
        herm = std::max(herm, (fi - CMat(fi.adjoint())).norm());
        herm_scale = std::max(herm_scale, fi.norm());
      }
      for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
          const CMat& fi = flats[i][static_cast<size_t>(b)];
          const CMat d = fi * abs_val[static_cast<size_t>(j)] -
                         abs_val[static_cast<size_t>(j)] * fi;
          comm = std::max(comm, d.norm());
          comm_scale = std::max(
              comm_scale, fi.norm() * abs_val[static_cast<size_t>(j)].norm());
        }
      }
      minsv1 = std::min(minsv1,
                        min_singular_value(flats[0][static_cast<size_t>(b)]));
      minsv2 = std::min(minsv2,
                        min_singular_value(flats[1][static_cast<size_t>(b)]));
      const CMat gap =
          id - weights.t[static_cast<size_t>(n - 1)] *
                   abs_sq[static_cast<size_t>(n - 1)];
      cond = std::min(cond, eig_hermitian(hermitize(gap)).eigenvalues(0));
    }
  }
  report.add("cross-self-adjoint", sa / sa_scale);
  report.add("weighted-sum", con / con_scale);
  if (n >= 3) {
    report.add("tail-self-adjoint", herm / herm_scale);
    report.add("abs-commutation", comm / comm_scale);
    report.add("invertibility-margin",
               std::max(0.0, guards.phi_min - std::max(minsv1, minsv2)));
    report.add("conditioning-floor", std::max(0.0, guards.delta - cond));
  }
}

}  // namespace

void HypothesisReport::add(const std::string& name, double value) {
  residuals.emplace_back(name, value);
  if (value > worst_value) {
    worst_value = value;
    worst_name = name;
  }
  if (value > kAdmissibleTol) admissible = false;
}

HypothesisReport check_hypotheses(const TheoremInstance& inst) {
  HypothesisReport report;
  switch (inst.id) {
    case TheoremId::OpPair:
    case TheoremId::Bohr2: {
      const std::vector<CMat> ft = flatten_op(inst.ops.at(0));
      const std::vector<CMat> fs = flatten_op(inst.ops.at(1));
      add_pair_constraints(report, inst.triple, ft, fs);
      if (inst.id == TheoremId::Bohr2) {
        report.add("alpha-positive", std::max(0.0, -inst.triple.alpha));
        report.add("beta-positive", std::max(0.0, -inst.triple.beta));
        report.add("convexity",
                   std::abs(inst.triple.alpha + inst.triple.beta - 1.0));
        report.add("unit-level", std::abs(inst.triple.gamma - 1.0));
      }
      break;
    }
    case TheoremId::VecPair:
    case TheoremId::L2:
    case TheoremId::OpTuple:
      add_gram_constraints(report, inst.triple, inst.vecs.at(0),
                           inst.vecs.at(1));
      break;
    case TheoremId::EulerLagrange:
      add_central_pair_constraints(report, inst.triple, inst.algs.at(0),
                                   inst.algs.at(1));
      break;
    case TheoremId::Bundle: {
      const AlgebraElement& f = inst.algs.at(0);
      const AlgebraElement& g = inst.algs.at(1);
      double imag = 0.0, conic = 0.0;
      for (int t = 0; t < f.block_count(); ++t) {
        const std::complex<double> fv = f.block(t)(0, 0);
        const std::complex<double> gv = g.block(t)(0, 0);
        imag = std::max({imag, std::abs(fv.imag()), std::abs(gv.imag())});
        conic = std::max(
            conic, std::abs(inst.triple.alpha * fv.real() * fv.real() +
                            inst.triple.beta * gv.real() * gv.real() -
                            inst.triple.gamma));
      }
      report.add("real-valued", imag);
      report.add("conic-constraint",
                 conic / std::max(1.0, std::abs(inst.triple.gamma)));
      break;
    }
    case TheoremId::BohrPQ:
      report.add("conjugate-exponents",
                 std::abs(1.0 / inst.pq.p + 1.0 / inst.pq.q - 1.0));
      report.add("exponent-guard",
                 std::max(0.0, (1.0 + inst.guards.eps_p) - inst.pq.p));
      break;
    case TheoremId::BohrN: {
      report.add("weight-sum", std::abs(inst.weights.sum() - 1.0));
      double wmin = std::numeric_limits<double>::infinity();
      for (double w : inst.weights.t) wmin = std::min(wmin, w);
      report.add("weight-floor", std::max(0.0, inst.guards.w_min - wmin));
      const int n = inst.weights.size();
      std::vector<std::vector<CMat>> flats;
      flats.reserve(static_cast<size_t>(n));
      for (int i = 0; i < n; ++i) flats.push_back(flatten_op(inst.ops.at(i)));
      add_family_constraints(report, inst.weights, flats.data(), n,
                             inst.space.algebra.block_count(), inst.guards);
      break;
    }
    case TheoremId::BohrNCentral: {
      report.add("weight-sum", std::abs(inst.weights.sum() - 1.0));
      double wmin = std::numeric_limits<double>::infinity();
      for (double w : inst.weights.t) wmin = std::min(wmin, w);
      report.add("weight-floor", std::max(0.0, inst.guards.w_min - wmin));
      const int n = inst.weights.size();
      for (int i = 0; i < n; ++i) {
        const AlgebraElement& a = inst.algs.at(i);
        report.add("central-" + std::to_string(i + 1),
                   rel_to(a.central_defect(), a.frobenius_norm()));
      }
      const AlgebraElement cross =
          inst.algs.at(0).adjoint() * inst.algs.at(1);
      report.add("cross-self-adjoint",
                 rel_to(cross.self_adjoint_defect(), cross.frobenius_norm()));
      AlgebraElement acc = AlgebraElement::zero(inst.space.algebra);
      double scale = 1.0;
      for (int i = 0; i < n; ++i) {
        const AlgebraElement sq =
            inst.algs.at(i).adjoint() * inst.algs.at(i);
        acc = acc + inst.weights.t[static_cast<size_t>(i)] * sq;
        scale += inst.weights.t[static_cast<size_t>(i)] * sq.frobenius_norm();
      }
      const AlgebraElement unit = AlgebraElement::unit(inst.space.algebra);
      report.add("weighted-sum",
                 rel_to((acc - unit).frobenius_norm(), scale));
      if (n >= 3) {
        for (int i = 2; i < n; ++i) {
          const AlgebraElement& a = inst.algs.at(i);
          report.add("tail-self-adjoint-" + std::to_string(i + 1),
                     rel_to(a.self_adjoint_defect(), a.frobenius_norm()));
        }
        const double inv = std::max(inst.algs.at(0).min_singular_value(),
                                    inst.algs.at(1).min_singular_value());
        report.add("invertibility-margin",
                   std::max(0.0, inst.guards.phi_min - inv));
      }
      break;
    }
    case TheoremId::AmQm: {
      report.add("weight-sum", std::abs(inst.weights.sum() - 1.0));
      double wmin = std::numeric_limits<double>::infinity();
      for (double w : inst.weights.t) wmin = std::min(wmin, w);
      report.add("weight-nonnegative", std::max(0.0, -wmin));
      break;
    }
  }
  return report;
}

}  // namespace bohrmod
