#include "bohrmod/module.hpp"

#include <algorithm>
#include <stdexcept>

#include "bohrmod/errors.hpp"

namespace bohrmod {

std::string to_string(ModuleKind kind) {
  switch (kind) {
    case ModuleKind::SelfModule: return "self";
    case ModuleKind::DirectSum: return "direct-sum";
    case ModuleKind::SeqModule: return "seq";
    case ModuleKind::RectTuple: return "rect-tuple";
    case ModuleKind::Bundle: return "bundle";
  }
  return "?";
}

ModuleSpace ModuleSpace::self_module(AlgebraShape shape) {
  shape.validate();
  ModuleSpace s;
  s.kind = ModuleKind::SelfModule;
  s.algebra = std::move(shape);
  s.components = 1;
  return s;
}

namespace {

void check_grid_cap(const AlgebraShape& shape, int k) {
  int widest = *std::max_element(shape.block_dims.begin(),
                                 shape.block_dims.end());
  if (k * widest > kMaxDim)
    throw std::invalid_argument(
        "component count times block dimension exceeds the dimension cap");
}

}  // namespace

ModuleSpace ModuleSpace::direct_sum(AlgebraShape shape, int k) {
  shape.validate();
  if (k < 1) throw std::invalid_argument("direct sum needs k >= 1");
  check_grid_cap(shape, k);
  ModuleSpace s;
  s.kind = ModuleKind::DirectSum;
  s.algebra = std::move(shape);
  s.components = k;
  return s;
}

ModuleSpace ModuleSpace::seq_module(AlgebraShape shape, int length) {
  shape.validate();
  if (length < 1) throw std::invalid_argument("sequence module needs length >= 1");
  check_grid_cap(shape, length);
  ModuleSpace s;
  s.kind = ModuleKind::SeqModule;
  s.algebra = std::move(shape);
  s.components = length;
  return s;
}

ModuleSpace ModuleSpace::rect_tuple(int n, int m, int d) {
  if (n < 1) throw std::invalid_argument("rect tuple needs n >= 1");
  if (m < 1 || m > kMaxDim || d < 1 || d > kMaxDim)
    throw std::invalid_argument("rect tuple dimensions out of range");
  ModuleSpace s;
  s.kind = ModuleKind::RectTuple;
  s.algebra = AlgebraShape{{d}};
  s.components = n;
  s.rect_rows = m;
  s.rect_cols = d;
  return s;
}

ModuleSpace ModuleSpace::bundle(std::vector<int> fiber_dims) {
  if (fiber_dims.empty())
    throw std::invalid_argument("bundle needs at least one point");
  if (fiber_dims.size() > static_cast<size_t>(kMaxDim))
    throw std::invalid_argument("bundle base exceeds the dimension cap");
  for (int f : fiber_dims) {
    if (f < 1 || f > kMaxDim)
      throw std::invalid_argument("bundle fiber dimension out of range");
  }
  ModuleSpace s;
  s.kind = ModuleKind::Bundle;
  s.algebra.block_dims.assign(fiber_dims.size(), 1);
  s.components = static_cast<int>(fiber_dims.size());
  s.fiber_dims = std::move(fiber_dims);
  return s;
}

bool ModuleSpace::algebra_valued() const {
  return kind == ModuleKind::SelfModule || kind == ModuleKind::DirectSum ||
         kind == ModuleKind::SeqModule;
}

std::string ModuleSpace::to_string() const {
  std::string out = bohrmod::to_string(kind) + "(" + algebra.to_string();
  switch (kind) {
    case ModuleKind::SelfModule:
      break;
    case ModuleKind::DirectSum:
    case ModuleKind::SeqModule:
      out += "; k=" + std::to_string(components);
      break;
    case ModuleKind::RectTuple:
      out += "; n=" + std::to_string(components) +
             ", " + std::to_string(rect_rows) + "x" + std::to_string(rect_cols);
      break;
    case ModuleKind::Bundle: {
      out += "; fibers=";
      for (size_t i = 0; i < fiber_dims.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(fiber_dims[i]);
      }
      break;
    }
  }
  return out + ")";
}

ModuleElement::ModuleElement(ModuleSpace space, Payload payload)
    : space_(std::move(space)), payload_(std::move(payload)) {
  if (space_.algebra_valued()) {
    const auto* parts = std::get_if<std::vector<AlgebraElement>>(&payload_);
    if (!parts || static_cast<int>(parts->size()) != space_.components)
      throw std::invalid_argument("payload does not match module space");
    for (const AlgebraElement& p : *parts) {
      if (!(p.shape() == space_.algebra))
        throw std::invalid_argument("component algebra shape mismatch");
    }
  } else if (space_.kind == ModuleKind::RectTuple) {
    const auto* parts = std::get_if<std::vector<CMat>>(&payload_);
    if (!parts || static_cast<int>(parts->size()) != space_.components)
      throw std::invalid_argument("payload does not match module space");
    for (const CMat& p : *parts) {
      if (p.rows() != space_.rect_rows || p.cols() != space_.rect_cols)
        throw std::invalid_argument("rect component has wrong dimensions");
      if (!finite_entries(p))
        throw NumericError("module element has non-finite entries");
    }
  } else {
    const auto* parts = std::get_if<std::vector<CVec>>(&payload_);
    if (!parts || static_cast<int>(parts->size()) != space_.components)
      throw std::invalid_argument("payload does not match module space");
    for (int t = 0; t < space_.components; ++t) {
      const CVec& v = (*parts)[static_cast<size_t>(t)];
      if (v.size() != space_.fiber_dims[static_cast<size_t>(t)])
        throw std::invalid_argument("fiber vector has wrong dimension");
      if (!finite_entries(v))
        throw NumericError("module element has non-finite entries");
    }
  }
}

ModuleElement ModuleElement::zero(const ModuleSpace& space) {
  if (space.algebra_valued()) {
    std::vector<AlgebraElement> parts(
        static_cast<size_t>(space.components),
        AlgebraElement::zero(space.algebra));
    return {space, std::move(parts)};
  }
  if (space.kind == ModuleKind::RectTuple) {
    std::vector<CMat> parts(
        static_cast<size_t>(space.components),
        CMat::Zero(space.rect_rows, space.rect_cols));
    return {space, std::move(parts)};
  }
  std::vector<CVec> parts;
  for (int f : space.fiber_dims) parts.push_back(CVec::Zero(f));
  return {space, std::move(parts)};
}

ModuleElement ModuleElement::random(const ModuleSpace& space, Rng& rng) {
  if (space.algebra_valued()) {
    std::vector<AlgebraElement> parts;
    for (int i = 0; i < space.components; ++i)
      parts.push_back(AlgebraElement::random(space.algebra, rng));
    return {space, std::move(parts)};
  }
  if (space.kind == ModuleKind::RectTuple) {
    std::vector<CMat> parts;
    for (int i = 0; i < space.components; ++i)
      parts.push_back(random_gaussian(space.rect_rows, space.rect_cols, rng));
    return {space, std::move(parts)};
  }
  std::vector<CVec> parts;
  for (int f : space.fiber_dims) {
    CVec v(f);
    for (int j = 0; j < f; ++j) v(j) = rng.gaussian_complex();
    parts.push_back(std::move(v));
  }
  return {space, std::move(parts)};
}

namespace {

void require_same_space(const ModuleElement& x, const ModuleElement& y) {
  if (!(x.space() == y.space()))
    throw std::invalid_argument("module spaces do not match");
}

template <typename T, typename F>
std::vector<T> zip_parts(const std::vector<T>& a, const std::vector<T>& b,
                         F&& f) {
  std::vector<T> out;
  out.reserve(a.size());
  for (size_t i = 0; i < a.size(); ++i) out.push_back(f(a[i], b[i]));
  return out;
}

template <typename T, typename F>
std::vector<T> map_parts(const std::vector<T>& a, F&& f) {
  std::vector<T> out;
  out.reserve(a.size());
  for (const T& p : a) out.push_back(f(p));
  return out;
}

}  // namespace

ModuleElement ModuleElement::operator+(const ModuleElement& rhs) const {
  require_same_space(*this, rhs);
  if (space_.algebra_valued())
    return {space_, zip_parts(alg_components(), rhs.alg_components(),
                              [](const auto& a, const auto& b) { return a + b; })};
  if (space_.kind == ModuleKind::RectTuple)
    return {space_, zip_parts(mat_components(), rhs.mat_components(),
                              [](const CMat& a, const CMat& b) -> CMat { return a + b; })};
  return {space_, zip_parts(vec_components(), rhs.vec_components(),
                            [](const CVec& a, const CVec& b) -> CVec { return a + b; })};
}

ModuleElement ModuleElement::operator-(const ModuleElement& rhs) const {
  return *this + (-rhs);
}

ModuleElement ModuleElement::operator-() const {
  return std::complex<double>(-1.0, 0.0) * *this;
}

ModuleElement ModuleElement::act(const AlgebraElement& a) const {
  if (!(a.shape() == space_.algebra))
    throw std::invalid_argument("acting element lives in the wrong algebra");
  if (space_.algebra_valued())
    return {space_, map_parts(alg_components(),
                              [&](const AlgebraElement& p) { return p * a; })};
  if (space_.kind == ModuleKind::RectTuple)
    return {space_, map_parts(mat_components(), [&](const CMat& p) -> CMat {
              return p * a.block(0);
            })};
  std::vector<CVec> parts;
  for (int t = 0; t < space_.components; ++t)
    parts.push_back(vec_components()[static_cast<size_t>(t)] * a.block(t)(0, 0));
  return {space_, std::move(parts)};
}

const std::vector<AlgebraElement>& ModuleElement::alg_components() const {
  return std::get<std::vector<AlgebraElement>>(payload_);
}

const std::vector<CMat>& ModuleElement::mat_components() const {
  return std::get<std::vector<CMat>>(payload_);
}

const std::vector<CVec>& ModuleElement::vec_components() const {
  return std::get<std::vector<CVec>>(payload_);
}

double ModuleElement::payload_norm() const {
  double sq = 0.0;
  if (space_.algebra_valued()) {
    for (const AlgebraElement& p : alg_components()) {
      double f = p.frobenius_norm();
      sq += f * f;
    }
  } else if (space_.kind == ModuleKind::RectTuple) {
    for (const CMat& p : mat_components()) sq += p.squaredNorm();
  } else {
    for (const CVec& p : vec_components()) sq += p.squaredNorm();
  }
  return std::sqrt(sq);
}

ModuleElement operator*(std::complex<double> lambda, const ModuleElement& x) {
  const ModuleSpace& space = x.space();
  if (space.algebra_valued()) {
    std::vector<AlgebraElement> parts;
    for (const AlgebraElement& p : x.alg_components()) parts.push_back(lambda * p);
    return {space, std::move(parts)};
  }
  if (space.kind == ModuleKind::RectTuple) {
    std::vector<CMat> parts;
    for (const CMat& p : x.mat_components()) parts.push_back(lambda * p);
    return {space, std::move(parts)};
  }
  std::vector<CVec> parts;
  for (const CVec& p : x.vec_components()) parts.push_back(lambda * p);
  return {space, std::move(parts)};
}

ModuleElement operator*(double lambda, const ModuleElement& x) {
  return std::complex<double>(lambda, 0.0) * x;
}

AlgebraElement inner(const ModuleElement& x, const ModuleElement& y) {
  require_same_space(x, y);
  const ModuleSpace& space = x.space();
  if (space.algebra_valued()) {
    AlgebraElement acc = AlgebraElement::zero(space.algebra);
    for (int i = 0; i < space.components; ++i)
      acc = acc + x.alg_components()[static_cast<size_t>(i)].adjoint() *
                      y.alg_components()[static_cast<size_t>(i)];
    return acc;
  }
  if (space.kind == ModuleKind::RectTuple) {
    CMat acc = CMat::Zero(space.rect_cols, space.rect_cols);
    for (int i = 0; i < space.components; ++i)
      acc += x.mat_components()[static_cast<size_t>(i)].adjoint() *
             y.mat_components()[static_cast<size_t>(i)];
    return {space.algebra, {acc}};
  }
  // Pointwise fiber inner products give a function on the base, i.e. an
  // element of C^kappa; conjugate-linear in x, matching axiom (ii).
  std::vector<CMat> blocks;
  for (int t = 0; t < space.components; ++t) {
    CMat b(1, 1);
    b(0, 0) = x.vec_components()[static_cast<size_t>(t)].dot(
        y.vec_components()[static_cast<size_t>(t)]);
    blocks.push_back(std::move(b));
  }
  return {space.algebra, std::move(blocks)};
}

AlgebraElement mod_abs(const ModuleElement& x) {
  AlgebraElement gram = inner(x, x);
  std::vector<CMat> blocks;
  for (int i = 0; i < gram.block_count(); ++i)
    blocks.push_back(sqrt_psd(gram.block(i)));
  return {gram.shape(), std::move(blocks)};
}

double mod_norm(const ModuleElement& x) {
  return std::sqrt(std::max(0.0, inner(x, x).norm()));
}

double rel_residual(const ModuleElement& x, const ModuleElement& y) {
  double diff = (x - y).payload_norm();
  return diff / std::max({x.payload_norm(), y.payload_norm(), 1.0});
}

double AxiomReport::max_defect() const {
  return std::max({psd_defect, zero_norm, linearity_residual, action_residual,
                   symmetry_residual});
}

AxiomReport check_module_axioms(const ModuleSpace& space, int trials,
                                uint64_t seed) {
  AxiomReport report;
  report.trials = trials;
  ModuleElement z0 = ModuleElement::zero(space);
  report.zero_norm = inner(z0, z0).norm();
  for (int t = 0; t < trials; ++t) {
    Rng rng(trial_seed(seed, "axioms", static_cast<uint64_t>(t)));
    ModuleElement x = ModuleElement::random(space, rng);
    ModuleElement y = ModuleElement::random(space, rng);
    ModuleElement z = ModuleElement::random(space, rng);
    AlgebraElement a = AlgebraElement::random(space.algebra, rng);
    std::complex<double> lam = rng.gaussian_complex();
    std::complex<double> mu = rng.gaussian_complex();

    AlgebraElement gram = inner(x, x);
    double psd = std::max(0.0, -gram.min_eigenvalue()) /
                 std::max(1.0, gram.norm());
    report.psd_defect = std::max(report.psd_defect, psd);

    double lin = rel_residual(inner(x, lam * y + mu * z),
                              lam * inner(x, y) + mu * inner(x, z));
    report.linearity_residual = std::max(report.linearity_residual, lin);

    double act = rel_residual(inner(x, y.act(a)), inner(x, y) * a);
    report.action_residual = std::max(report.action_residual, act);

    double sym = rel_residual(inner(x, y).adjoint(), inner(y, x));
    report.symmetry_residual = std::max(report.symmetry_residual, sym);
  }
  return report;
}

}  // namespace bohrmod
