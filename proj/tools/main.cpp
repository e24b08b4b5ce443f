#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "bohrmod/driver.hpp"

namespace {

using namespace bohrmod;

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitConfig = 2;
constexpr int kExitInternal = 3;

std::vector<AlgebraShape> shapes_from_flags(const std::string& blocks,
                                            const std::string& dims) {
  if (!blocks.empty()) return {AlgebraShape::parse(blocks)};
  if (dims.empty()) return default_block_shapes();
  const auto sep = dims.find("..");
  int lo = 0, hi = 0;
  if (sep == std::string::npos) {
    lo = hi = std::stoi(dims);
  } else {
    lo = std::stoi(dims.substr(0, sep));
    hi = std::stoi(dims.substr(sep + 2));
  }
  if (lo < 1 || hi < lo || hi > 64)
    throw std::invalid_argument("dims range must satisfy 1 <= A <= B <= 64");
  std::vector<AlgebraShape> shapes;
  for (int d = lo; d <= hi; ++d) shapes.push_back(AlgebraShape{{d}});
  if (lo <= 2 && hi >= 3) shapes.push_back(AlgebraShape{{2, 3}});
  return shapes;
}

int run_verify(const std::string& theorem, int trials,
               const std::string& blocks, const std::string& dims,
               std::uint64_t seed, double tol, const std::string& report_path,
               int jobs) {
  RunConfig cfg;
  if (theorem != "all") cfg.theorems = {parse_theorem_id(theorem)};
  cfg.trials = trials;
  cfg.block_shapes = shapes_from_flags(blocks, dims);
  cfg.seed = seed;
  if (tol > 0.0) {
    cfg.id_tol = tol;
    cfg.slack_tol = tol;
  }
  cfg.jobs = jobs;
  cfg.validate();

  const VerificationReport report = run_suites(cfg);
  std::cout << render_summary(report);
  if (!report_path.empty()) {
    std::ofstream out(report_path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open report path " + report_path);
    out << report_to_json(report);
  }
  return report.pass ? kExitPass : kExitFail;
}

int run_witness(double p, std::uint64_t seed, const std::string& blocks,
                int budget) {
  const ModuleSpace space =
      ModuleSpace::direct_sum(AlgebraShape::parse(blocks), 2);
  const auto w = witness_search(space, p, budget, seed);
  if (!w) {
    if (std::abs(p - 2.0) <= 1e-12) {
      std::cout << "p = 2: both order clauses hold with equality for every "
                   "pair; no violating pair exists\n";
      return kExitPass;
    }
    std::cout << "no violating pair found within budget " << budget << "\n";
    return kExitFail;
  }
  std::printf(
      "violating pair for the %s clause (p = %g) after %d attempt(s)\n"
      "  measured violation  -lambda_min = %.12e\n"
      "  decomposition value |1 - 1/(p-1)| * lambda_max(|(1-p)x - y|^2) = "
      "%.12e\n",
      w->clause.c_str(), p, w->attempts, w->violation, w->predicted);
  const double agree = std::abs(w->violation - w->predicted) /
                       std::max(1.0, w->predicted);
  std::printf("  agreement %.3e\n", agree);
  return agree <= 1e-8 ? kExitPass : kExitFail;
}

int run_axioms(int trials, std::uint64_t seed) {
  const std::vector<ModuleSpace> spaces = {
      ModuleSpace::self_module(AlgebraShape{{2}}),
      ModuleSpace::direct_sum(AlgebraShape{{2, 3}}, 2),
      ModuleSpace::seq_module(AlgebraShape{{2}}, 3),
      ModuleSpace::rect_tuple(2, 3, 2),
      ModuleSpace::bundle({2, 1, 3}),
  };
  bool ok = true;
  for (const ModuleSpace& space : spaces) {
    const AxiomReport rep = check_module_axioms(space, trials, seed);
    std::printf(
        "%-28s psd %.2e  zero %.2e  linear %.2e  action %.2e  symm %.2e\n",
        space.to_string().c_str(), rep.psd_defect, rep.zero_norm,
        rep.linearity_residual, rep.action_residual, rep.symmetry_residual);
    ok = ok && rep.max_defect() <= 1e-10;
  }
  std::printf("module axioms: %s\n", ok ? "PASS" : "FAIL");
  return ok ? kExitPass : kExitFail;
}

int run_demo() {
  const AlgebraShape s1{{1}};
  const ModuleSpace m1 = ModuleSpace::self_module(s1);
  const auto scalar = [&](double v) {
    return AlgebraElement::from_block_scalars(s1, {{v, 0.0}});
  };
  const auto vec = [&](double v) {
    return ModuleElement(m1, std::vector<AlgebraElement>{scalar(v)});
  };
  const auto value = [](const AlgebraElement& a) {
    return a.block(0)(0, 0).real();
  };
  bool ok = true;

  {
    // Classical bound at r = s = 2, sharp at x = 1, y = -1.
    const ModuleElement x = vec(1.0), y = vec(-1.0);
    const double lhs = value(inner(x - y, x - y));
    const double rhs = value(2.0 * inner(x, x) + 2.0 * inner(y, y));
    std::printf("r = s = 2, x = 1, y = -1:  |x - y|^2 = %g,  2|x|^2 + 2|y|^2 = %g\n",
                lhs, rhs);
    ok = ok && std::abs(lhs - 4.0) <= 1e-14 && std::abs(rhs - 4.0) <= 1e-14;
  }
  {
    // 3-4-5 right-triangle instance of the central-element identity.
    TheoremInstance inst;
    inst.id = TheoremId::EulerLagrange;
    inst.seed = 0;
    inst.space = m1;
    inst.triple = RealTriple{1.0, 1.0, 25.0};
    inst.algs = {scalar(3.0), scalar(4.0)};
    inst.vecs = {vec(1.0), vec(0.0)};
    const TrialResult t = verify_euler_lagrange(inst);
    std::printf(
        "a = 3, b = 4, x = 1, y = 0:  |xa + yb|^2 + |xb - ya|^2 = 9 + 16 = 25"
        "  (residual %.1e)\n",
        t.identity_residual);
    ok = ok && t.hypothesis_ok && t.identity_residual <= 1e-14;
  }
  {
    // Parallelogram law: the p = 2 conjugate-exponent identity.
    const ModuleElement x = vec(3.0), y = vec(4.0);
    const double lhs =
        value(inner(x - y, x - y) + inner(x + y, x + y));
    const double rhs = value(2.0 * inner(x, x) + 2.0 * inner(y, y));
    std::printf("p = 2, x = 3, y = 4:  |x - y|^2 + |x + y|^2 = %g = %g = "
                "2|x|^2 + 2|y|^2\n",
                lhs, rhs);
    ok = ok && std::abs(lhs - 50.0) <= 1e-14 && std::abs(rhs - 50.0) <= 1e-14;
  }
  std::printf("demo: %s\n", ok ? "PASS" : "FAIL");
  return ok ? kExitPass : kExitFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Verification workbench for operator identities and Bohr-type bounds "
      "in Hilbert C*-modules over block matrix algebras"};
  app.require_subcommand(1);

  auto* verify = app.add_subcommand("verify", "run seeded verification suites");
  std::string theorem = "all";
  int trials = 50;
  std::string blocks, dims, report_path;
  std::uint64_t seed = 42;
  double tol = 0.0;
  int jobs = 1;
  verify->add_option("--theorem", theorem, "theorem id or 'all'");
  verify->add_option("--trials", trials, "trials per theorem");
  verify->add_option("--dims", dims, "block dimension range A..B");
  verify->add_option("--blocks", blocks, "explicit block shape, e.g. 2 or 2+3");
  verify->add_option("--seed", seed, "master seed");
  verify->add_option("--tol", tol, "identity/slack tolerance override");
  verify->add_option("--report", report_path, "write the JSON report here");
  verify->add_option("--jobs", jobs, "worker threads");

  auto* witness = app.add_subcommand(
      "witness", "search for an order-clause violation at a given exponent");
  double p = 3.0;
  std::uint64_t wseed = 7;
  std::string wblocks = "2";
  int budget = 16;
  std::string wtheorem = "bohr-pq";
  witness->add_option("--p", p, "exponent (p != 2 admits violations)");
  witness->add_option("--seed", wseed, "search seed");
  witness->add_option("--blocks", wblocks, "block shape of the algebra");
  witness->add_option("--budget", budget, "max attempts");
  witness->add_option("--theorem", wtheorem,
                      "clause family (accepts bohr-pq, bohr-i, bohr-ii)");

  auto* axioms = app.add_subcommand(
      "axioms", "inner-product axiom property run over all module families");
  int atrials = 200;
  std::uint64_t aseed = 42;
  axioms->add_option("--trials", atrials, "trials per family");
  axioms->add_option("--seed", aseed, "master seed");

  app.add_subcommand("demo", "print the classical scalar cases");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    if (verify->parsed())
      return run_verify(theorem, trials, blocks, dims, seed, tol, report_path,
                        jobs);
    if (witness->parsed()) {
      if (wtheorem != "bohr-pq" && wtheorem != "bohr-i" && wtheorem != "bohr-ii")
        throw std::invalid_argument("witness mode covers the conjugate-exponent clauses only");
      return run_witness(p, wseed, wblocks, budget);
    }
    if (axioms->parsed()) return run_axioms(atrials, aseed);
    return run_demo();
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
}
