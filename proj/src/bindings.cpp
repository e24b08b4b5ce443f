#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "bohrmod/driver.hpp"

namespace py = pybind11;

namespace {

using namespace bohrmod;

ModuleSpace space_from(const std::string& kind, const std::string& blocks,
                       int components) {
  const AlgebraShape shape = AlgebraShape::parse(blocks);
  if (kind == "self") return ModuleSpace::self_module(shape);
  if (kind == "direct-sum") return ModuleSpace::direct_sum(shape, components);
  if (kind == "seq") return ModuleSpace::seq_module(shape, components);
  if (kind == "rect") return ModuleSpace::rect_tuple(components, 2, 2);
  if (kind == "bundle") {
    std::vector<int> fibers(static_cast<size_t>(std::max(1, components)), 2);
    return ModuleSpace::bundle(fibers);
  }
  throw std::invalid_argument("unknown module kind: " + kind);
}

RunConfig config_from(const std::vector<std::string>& theorems, int trials,
                      std::uint64_t seed,
                      const std::vector<std::string>& blocks, int jobs) {
  RunConfig cfg;
  if (!(theorems.size() == 1 && theorems[0] == "all")) {
    cfg.theorems.clear();
    for (const std::string& name : theorems)
      cfg.theorems.push_back(parse_theorem_id(name));
  }
  cfg.trials = trials;
  cfg.seed = seed;
  if (!blocks.empty()) {
    cfg.block_shapes.clear();
    for (const std::string& b : blocks)
      cfg.block_shapes.push_back(AlgebraShape::parse(b));
  }
  cfg.jobs = jobs;
  return cfg;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() =
      "Numerical workbench for operator identities and Bohr-type bounds in "
      "Hilbert C*-modules over block matrix algebras";
  m.attr("__version__") = "0.1.0";

  m.def(
      "sqrt_psd", [](const CMat& a) { return sqrt_psd(a); },
      "Positive semidefinite square root of a Hermitian PSD matrix",
      py::arg("m"));
  m.def(
      "inv_sqrt_pd",
      [](const CMat& a, double floor) { return inv_sqrt_pd(a, floor); },
      py::arg("m"), py::arg("min_eig_floor") = 0.05);
  m.def(
      "eig_hermitian",
      [](const CMat& a) {
        const HermitianEig e = eig_hermitian(a);
        return py::make_tuple(e.eigenvalues, e.eigenvectors);
      },
      "Ascending eigenvalues and matching unitary eigenvectors",
      py::arg("m"));
  m.def(
      "loewner_slack",
      [](const CMat& a, const CMat& b) { return loewner_slack(a, b); },
      "lambda_min(b - a): nonnegative iff a <= b in the Loewner order",
      py::arg("a"), py::arg("b"));
  m.def(
      "random_unitary",
      [](int n, std::uint64_t seed) { return random_unitary(n, seed); },
      py::arg("n"), py::arg("seed"));

  m.def(
      "run",
      [](const std::vector<std::string>& theorems, int trials,
         std::uint64_t seed, const std::vector<std::string>& blocks,
         int jobs) {
        const VerificationReport report =
            run_suites(config_from(theorems, trials, seed, blocks, jobs));
        const std::string doc = report_to_json(report);
        return py::module_::import("json").attr("loads")(doc);
      },
      "Run seeded verification suites and return the report as a dict",
      py::arg("theorems") = std::vector<std::string>{"all"},
      py::arg("trials") = 25, py::arg("seed") = std::uint64_t{42},
      py::arg("blocks") = std::vector<std::string>{}, py::arg("jobs") = 1);
  m.def(
      "run_report_json",
      [](const std::vector<std::string>& theorems, int trials,
         std::uint64_t seed, const std::vector<std::string>& blocks,
         int jobs) {
        return report_to_json(
            run_suites(config_from(theorems, trials, seed, blocks, jobs)));
      },
      "Same as run() but returns the raw JSON text (byte-stable)",
      py::arg("theorems") = std::vector<std::string>{"all"},
      py::arg("trials") = 25, py::arg("seed") = std::uint64_t{42},
      py::arg("blocks") = std::vector<std::string>{}, py::arg("jobs") = 1);

  m.def(
      "witness",
      [](double p, std::uint64_t seed, const std::string& kind,
         const std::string& blocks, int components,
         int budget) -> py::object {
        const auto w =
            witness_search(space_from(kind, blocks, components), p, budget,
                           seed);
        if (!w) return py::none();
        py::dict d;
        d["violation"] = w->violation;
        d["predicted"] = w->predicted;
        d["attempts"] = w->attempts;
        d["clause"] = w->clause;
        return d;
      },
      "Search for a pair violating an order clause of the conjugate-exponent "
      "identity; None when p = 2",
      py::arg("p"), py::arg("seed") = std::uint64_t{7},
      py::arg("kind") = std::string("direct-sum"),
      py::arg("blocks") = std::string("2"), py::arg("components") = 2,
      py::arg("budget") = 16);

  m.def(
      "module_axioms",
      [](const std::string& kind, const std::string& blocks, int components,
         int trials, std::uint64_t seed) {
        const AxiomReport rep = check_module_axioms(
            space_from(kind, blocks, components), trials, seed);
        py::dict d;
        d["trials"] = rep.trials;
        d["psd_defect"] = rep.psd_defect;
        d["zero_norm"] = rep.zero_norm;
        d["linearity_residual"] = rep.linearity_residual;
        d["action_residual"] = rep.action_residual;
        d["symmetry_residual"] = rep.symmetry_residual;
        d["max_defect"] = rep.max_defect();
        return d;
      },
      py::arg("kind") = std::string("direct-sum"),
      py::arg("blocks") = std::string("2"), py::arg("components") = 2,
      py::arg("trials") = 50, py::arg("seed") = std::uint64_t{42});
}
