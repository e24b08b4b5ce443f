#include "bohrmod/operators.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

#include "bohrmod/errors.hpp"

namespace bohrmod {

struct AdjointableOp::Node {
  OpForm form;
  ModuleSpace domain;
  ModuleSpace codomain;
  std::vector<AlgebraElement> grid;       // Matrix
  std::optional<AlgebraElement> factor;   // RightMult
  std::optional<ModuleElement> anchor;    // Ket / Bra
  std::complex<double> lambda{1.0, 0.0};  // Scale
  std::vector<AdjointableOp> children;    // Scale / Compose / Sum
};

AdjointableOp::AdjointableOp(std::shared_ptr<const Node> node)
    : node_(std::move(node)) {}

OpForm AdjointableOp::form() const { return node_->form; }
const ModuleSpace& AdjointableOp::domain() const { return node_->domain; }
const ModuleSpace& AdjointableOp::codomain() const { return node_->codomain; }

const AlgebraElement& AdjointableOp::right_factor() const {
  if (node_->form != OpForm::RightMult)
    throw std::invalid_argument("right_factor: not a right-mult op");
  return *node_->factor;
}

const ModuleElement& AdjointableOp::anchor() const {
  if (node_->form != OpForm::Ket && node_->form != OpForm::Bra)
    throw std::invalid_argument("anchor: not a ket/bra op");
  return *node_->anchor;
}

std::complex<double> AdjointableOp::scale_factor() const {
  if (node_->form != OpForm::Scale)
    throw std::invalid_argument("scale_factor: not a scale op");
  return node_->lambda;
}

const std::vector<AdjointableOp>& AdjointableOp::children() const {
  return node_->children;
}

AdjointableOp AdjointableOp::matrix_over_a(const ModuleSpace& space,
                                           std::vector<AlgebraElement> grid) {
  if (!space.algebra_valued())
    throw std::invalid_argument("grid ops need an algebra-valued module");
  const size_t k = static_cast<size_t>(space.components);
  if (grid.size() != k * k)
    throw std::invalid_argument("grid must have k*k entries");
  for (const AlgebraElement& g : grid) {
    if (!(g.shape() == space.algebra))
      throw std::invalid_argument("grid entry algebra shape mismatch");
  }
  auto node = std::make_shared<Node>();
  node->form = OpForm::Matrix;
  node->domain = space;
  node->codomain = space;
  node->grid = std::move(grid);
  return AdjointableOp(std::move(node));
}

AdjointableOp AdjointableOp::identity(const ModuleSpace& space) {
  return right_mult(space, AlgebraElement::unit(space.algebra));
}

AdjointableOp AdjointableOp::right_mult(const ModuleSpace& space,
                                        AlgebraElement c) {
  if (!(c.shape() == space.algebra))
    throw std::invalid_argument("right-mult factor algebra shape mismatch");
  if (!c.is_central())
    throw std::invalid_argument(
        "right-mult factor must be central to be adjointable");
  auto node = std::make_shared<Node>();
  node->form = OpForm::RightMult;
  node->domain = space;
  node->codomain = space;
  node->factor = std::move(c);
  return AdjointableOp(std::move(node));
}

AdjointableOp AdjointableOp::ket(ModuleElement z) {
  auto node = std::make_shared<Node>();
  node->form = OpForm::Ket;
  node->domain = ModuleSpace::self_module(z.space().algebra);
  node->codomain = z.space();
  node->anchor = std::move(z);
  return AdjointableOp(std::move(node));
}

AdjointableOp AdjointableOp::bra(ModuleElement z) {
  auto node = std::make_shared<Node>();
  node->form = OpForm::Bra;
  node->domain = z.space();
  node->codomain = ModuleSpace::self_module(z.space().algebra);
  node->anchor = std::move(z);
  return AdjointableOp(std::move(node));
}

AdjointableOp AdjointableOp::scale(std::complex<double> lambda,
                                   AdjointableOp op) {
  auto node = std::make_shared<Node>();
  node->form = OpForm::Scale;
  node->domain = op.domain();
  node->codomain = op.codomain();
  node->lambda = lambda;
  node->children.push_back(std::move(op));
  return AdjointableOp(std::move(node));
}

AdjointableOp AdjointableOp::compose(AdjointableOp lhs, AdjointableOp rhs) {
  if (!(lhs.domain() == rhs.codomain()))
    throw std::invalid_argument("compose: domain/codomain chain mismatch");
  auto node = std::make_shared<Node>();
  node->form = OpForm::Compose;
  node->domain = rhs.domain();
  node->codomain = lhs.codomain();
  node->children.push_back(std::move(lhs));
  node->children.push_back(std::move(rhs));
  return AdjointableOp(std::move(node));
}

AdjointableOp AdjointableOp::sum(std::vector<AdjointableOp> terms) {
  if (terms.empty()) throw std::invalid_argument("sum needs at least one term");
  for (const AdjointableOp& t : terms) {
    if (!(t.domain() == terms.front().domain()) ||
        !(t.codomain() == terms.front().codomain()))
      throw std::invalid_argument("sum terms must share domain and codomain");
  }
  auto node = std::make_shared<Node>();
  node->form = OpForm::Sum;
  node->domain = terms.front().domain();
  node->codomain = terms.front().codomain();
  node->children = std::move(terms);
  return AdjointableOp(std::move(node));
}

ModuleElement AdjointableOp::apply(const ModuleElement& x) const {
  if (!(x.space() == node_->domain))
    throw std::invalid_argument("operator applied outside its domain");
  switch (node_->form) {
    case OpForm::Matrix: {
      const int k = node_->domain.components;
      const auto& parts = x.alg_components();
      std::vector<AlgebraElement> out;
      out.reserve(static_cast<size_t>(k));
      for (int i = 0; i < k; ++i) {
        AlgebraElement acc = AlgebraElement::zero(node_->domain.algebra);
        for (int j = 0; j < k; ++j)
          acc = acc + node_->grid[static_cast<size_t>(i * k + j)] *
                          parts[static_cast<size_t>(j)];
        out.push_back(std::move(acc));
      }
      return {node_->codomain, std::move(out)};
    }
    case OpForm::RightMult:
      return x.act(*node_->factor);
    case OpForm::Ket:
      return node_->anchor->act(x.alg_components()[0]);
    case OpForm::Bra:
      return {node_->codomain,
              std::vector<AlgebraElement>{inner(*node_->anchor, x)}};
    case OpForm::Scale:
      return node_->lambda * node_->children[0].apply(x);
    case OpForm::Compose:
      return node_->children[0].apply(node_->children[1].apply(x));
    case OpForm::Sum: {
      ModuleElement acc = node_->children[0].apply(x);
      for (size_t i = 1; i < node_->children.size(); ++i)
        acc = acc + node_->children[i].apply(x);
      return acc;
    }
  }
  throw std::logic_error("unreachable op form");
}

AdjointableOp AdjointableOp::adjoint() const {
  switch (node_->form) {
    case OpForm::Matrix: {
      const int k = node_->domain.components;
      std::vector<AlgebraElement> grid;
      grid.reserve(node_->grid.size());
      for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j)
          grid.push_back(node_->grid[static_cast<size_t>(j * k + i)].adjoint());
      return matrix_over_a(node_->domain, std::move(grid));
    }
    case OpForm::RightMult:
      return right_mult(node_->domain, node_->factor->adjoint());
    case OpForm::Ket:
      return bra(*node_->anchor);
    case OpForm::Bra:
      return ket(*node_->anchor);
    case OpForm::Scale:
      return scale(std::conj(node_->lambda), node_->children[0].adjoint());
    case OpForm::Compose:
      return compose(node_->children[1].adjoint(),
                     node_->children[0].adjoint());
    case OpForm::Sum: {
      std::vector<AdjointableOp> terms;
      terms.reserve(node_->children.size());
      for (const AdjointableOp& t : node_->children)
        terms.push_back(t.adjoint());
      return sum(std::move(terms));
    }
  }
  throw std::logic_error("unreachable op form");
}

namespace {

std::vector<AlgebraElement> grid_mul(const ModuleSpace& space,
                                     const std::vector<AlgebraElement>& a,
                                     const std::vector<AlgebraElement>& b) {
  const int k = space.components;
  std::vector<AlgebraElement> out;
  out.reserve(a.size());
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < k; ++j) {
      AlgebraElement acc = AlgebraElement::zero(space.algebra);
      for (int l = 0; l < k; ++l)
        acc = acc + a[static_cast<size_t>(i * k + l)] *
                        b[static_cast<size_t>(l * k + j)];
      out.push_back(std::move(acc));
    }
  }
  return out;
}

}  // namespace

std::optional<std::vector<AlgebraElement>> AdjointableOp::try_to_grid() const {
  if (!(node_->domain == node_->codomain) || !node_->domain.algebra_valued())
    return std::nullopt;
  const ModuleSpace& space = node_->domain;
  const int k = space.components;
  switch (node_->form) {
    case OpForm::Matrix:
      return node_->grid;
    case OpForm::RightMult: {
      // Central factors act the same from either side, so x -> xc is the
      // diagonal grid with c in every slot.
      std::vector<AlgebraElement> grid(
          static_cast<size_t>(k * k), AlgebraElement::zero(space.algebra));
      for (int i = 0; i < k; ++i)
        grid[static_cast<size_t>(i * k + i)] = *node_->factor;
      return grid;
    }
    case OpForm::Ket:
    case OpForm::Bra:
      return std::nullopt;
    case OpForm::Scale: {
      auto inner_grid = node_->children[0].try_to_grid();
      if (!inner_grid) return std::nullopt;
      for (AlgebraElement& g : *inner_grid) g = node_->lambda * g;
      return inner_grid;
    }
    case OpForm::Compose: {
      auto lhs = node_->children[0].try_to_grid();
      auto rhs = node_->children[1].try_to_grid();
      if (!lhs || !rhs) return std::nullopt;
      return grid_mul(space, *lhs, *rhs);
    }
    case OpForm::Sum: {
      auto acc = node_->children[0].try_to_grid();
      if (!acc) return std::nullopt;
      for (size_t t = 1; t < node_->children.size(); ++t) {
        auto g = node_->children[t].try_to_grid();
        if (!g) return std::nullopt;
        for (size_t i = 0; i < acc->size(); ++i) (*acc)[i] = (*acc)[i] + (*g)[i];
      }
      return acc;
    }
  }
  return std::nullopt;
}

std::vector<AlgebraElement> AdjointableOp::to_grid() const {
  auto grid = try_to_grid();
  if (!grid)
    throw std::invalid_argument(
        "grid form unavailable (ket/bra factor or non-algebra-valued module)");
  return *grid;
}

std::vector<CMat> flatten_grid(const ModuleSpace& space,
                               const std::vector<AlgebraElement>& grid) {
  const int k = space.components;
  std::vector<CMat> flats;
  for (int b = 0; b < space.algebra.block_count(); ++b) {
    const int n = space.algebra.block_dims[static_cast<size_t>(b)];
    CMat flat = CMat::Zero(k * n, k * n);
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j)
        flat.block(i * n, j * n, n, n) =
            grid[static_cast<size_t>(i * k + j)].block(b);
    flats.push_back(std::move(flat));
  }
  return flats;
}

std::vector<AlgebraElement> unflatten_grid(const ModuleSpace& space,
                                           const std::vector<CMat>& flats) {
  const int k = space.components;
  if (flats.size() != static_cast<size_t>(space.algebra.block_count()))
    throw std::invalid_argument("one flat matrix per algebra block expected");
  std::vector<std::vector<CMat>> blocks(static_cast<size_t>(k * k));
  for (int b = 0; b < space.algebra.block_count(); ++b) {
    const int n = space.algebra.block_dims[static_cast<size_t>(b)];
    const CMat& flat = flats[static_cast<size_t>(b)];
    if (flat.rows() != k * n || flat.cols() != k * n)
      throw std::invalid_argument("flat matrix has wrong dimensions");
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j)
        blocks[static_cast<size_t>(i * k + j)].push_back(
            flat.block(i * n, j * n, n, n));
  }
  std::vector<AlgebraElement> grid;
  grid.reserve(blocks.size());
  for (auto& bs : blocks) grid.emplace_back(space.algebra, std::move(bs));
  return grid;
}

std::vector<CMat> flatten_op(const AdjointableOp& op) {
  return flatten_grid(op.domain(), op.to_grid());
}

AdjointableOp op_from_flats(const ModuleSpace& space,
                            const std::vector<CMat>& flats) {
  return AdjointableOp::matrix_over_a(space, unflatten_grid(space, flats));
}

bool op_is_self_adjoint(const AdjointableOp& op, int probes, std::uint64_t seed,
                        const Tolerance& tol) {
  if (!(op.domain() == op.codomain()))
    throw std::invalid_argument("self-adjointness needs domain = codomain");
  double worst = 0.0;
  double scale = 1.0;
  for (int t = 0; t < probes; ++t) {
    Rng rng(trial_seed(seed, "sa-probe", static_cast<std::uint64_t>(t)));
    ModuleElement x = ModuleElement::random(op.domain(), rng);
    ModuleElement y = ModuleElement::random(op.domain(), rng);
    AlgebraElement lhs = inner(op.apply(x), y);
    AlgebraElement rhs = inner(x, op.apply(y));
    worst = std::max(worst, (lhs - rhs).frobenius_norm());
    scale = std::max({scale, lhs.frobenius_norm(), rhs.frobenius_norm()});
  }
  const bool probe_sa = worst <= tol.bound(scale);
  if (auto grid = op.try_to_grid()) {
    const int k = op.domain().components;
    double defect = 0.0;
    double gscale = 1.0;
    for (int i = 0; i < k; ++i) {
      for (int j = 0; j < k; ++j) {
        const AlgebraElement& g = (*grid)[static_cast<size_t>(i * k + j)];
        const AlgebraElement h =
            (*grid)[static_cast<size_t>(j * k + i)].adjoint();
        defect = std::max(defect, (g - h).frobenius_norm());
        gscale = std::max(gscale, g.frobenius_norm());
      }
    }
    const bool structural_sa = defect <= tol.bound(gscale);
    if (structural_sa != probe_sa)
      throw std::logic_error(
          "structural and probe self-adjointness tests disagree");
  }
  return probe_sa;
}

AdjointableOp op_abs_squared(const AdjointableOp& op) {
  if (!(op.domain() == op.codomain()))
    throw std::invalid_argument("|T|^2 needs domain = codomain");
  if (op.form() == OpForm::RightMult) {
    const AlgebraElement& c = op.right_factor();
    return AdjointableOp::right_mult(op.domain(), c.adjoint() * c);
  }
  if (auto grid = op.try_to_grid()) {
    auto adj = op.adjoint().to_grid();
    return AdjointableOp::matrix_over_a(op.domain(),
                                        grid_mul(op.domain(), adj, *grid));
  }
  return AdjointableOp::compose(op.adjoint(), op);
}

AdjointableOp op_abs(const AdjointableOp& op) {
  if (!(op.domain() == op.codomain()))
    throw std::invalid_argument("|T| needs domain = codomain");
  if (op.form() == OpForm::RightMult)
    return AdjointableOp::right_mult(op.domain(), op.right_factor().abs());
  if (op.form() == OpForm::Scale)
    return AdjointableOp::scale(std::abs(op.scale_factor()),
                                op_abs(op.children()[0]));
  const std::vector<CMat> flats = flatten_op(op);
  std::vector<CMat> roots;
  roots.reserve(flats.size());
  for (const CMat& f : flats) roots.push_back(sqrt_psd(f.adjoint() * f));
  return op_from_flats(op.domain(), roots);
}

double op_probe_residual(const AdjointableOp& a, const AdjointableOp& b,
                         int probes, std::uint64_t seed) {
  if (!(a.domain() == b.domain()) || !(a.codomain() == b.codomain()))
    throw std::invalid_argument("probe residual needs matching spaces");
  double worst = 0.0;
  for (int t = 0; t < probes; ++t) {
    Rng rng(trial_seed(seed, "op-probe", static_cast<std::uint64_t>(t)));
    ModuleElement x = ModuleElement::random(a.domain(), rng);
    worst = std::max(worst, rel_residual(a.apply(x), b.apply(x)));
  }
  return worst;
}

double adjoint_probe_defect(const AdjointableOp& op, int probes,
                            std::uint64_t seed) {
  const AdjointableOp adj = op.adjoint();
  double worst = 0.0;
  for (int t = 0; t < probes; ++t) {
    Rng rng(trial_seed(seed, "adj-probe", static_cast<std::uint64_t>(t)));
    ModuleElement x = ModuleElement::random(op.domain(), rng);
    ModuleElement y = ModuleElement::random(op.codomain(), rng);
    AlgebraElement lhs = inner(op.apply(x), y);
    AlgebraElement rhs = inner(x, adj.apply(y));
    worst = std::max(worst, rel_residual(lhs, rhs));
  }
  return worst;
}

}  // namespace bohrmod
