#include "bohrmod/driver.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <stdexcept>
#include <thread>

#include "json.hpp"

namespace bohrmod {

std::vector<AlgebraShape> default_block_shapes() {
  return {AlgebraShape{{1}}, AlgebraShape{{2}}, AlgebraShape{{3}},
          AlgebraShape{{2, 3}}};
}

void RunConfig::validate() const {
  if (theorems.empty()) throw std::invalid_argument("no theorems selected");
  if (trials < 1) throw std::invalid_argument("trials must be >= 1");
  if (block_shapes.empty()) throw std::invalid_argument("no block shapes");
  for (const AlgebraShape& s : block_shapes) s.validate();
  if (!(id_tol > 0.0) || !(slack_tol > 0.0))
    throw std::invalid_argument("tolerances must be positive");
  if (jobs < 1) throw std::invalid_argument("jobs must be >= 1");
  if (!(guards.eps_p > 0.0 && guards.w_min > 0.0 && guards.delta > 0.0 &&
        guards.delta < 1.0 && guards.phi_min > 0.0 &&
        guards.retry_budget >= 1))
    throw std::invalid_argument("guards out of range");
  for (double p : p_values) {
    if (!(p >= 1.0 + guards.eps_p))
      throw std::invalid_argument("p value below the exponent guard");
  }
}

namespace {

RealTriple draw_triple(Rng& rng) {
  RealTriple tr;
  tr.alpha = rng.uniform(0.3, 1.5);
  tr.beta = rng.uniform(0.3, 1.5);
  if (rng.uniform() < 0.25) tr.beta = -tr.beta;
  tr.gamma = tr.beta > 0.0 ? rng.uniform(0.5, 2.5) : rng.uniform(-1.5, 1.5);
  return tr;
}

ModuleSpace grid_family(int index, const AlgebraShape& shape) {
  switch (index % 4) {
    case 0: return ModuleSpace::self_module(shape);
    case 1: return ModuleSpace::direct_sum(shape, 2);
    case 2: return ModuleSpace::direct_sum(shape, 3);
    default: return ModuleSpace::seq_module(shape, 2);
  }
}

ModuleSpace rect_family(int index) {
  switch (index % 4) {
    case 0: return ModuleSpace::rect_tuple(2, 2, 2);
    case 1: return ModuleSpace::rect_tuple(2, 3, 2);
    case 2: return ModuleSpace::rect_tuple(3, 4, 3);
    default: return ModuleSpace::rect_tuple(1, 2, 2);
  }
}

ModuleSpace bundle_family(int index) {
  switch (index % 5) {
    case 0: return ModuleSpace::bundle({1});
    case 1: return ModuleSpace::bundle({2, 1});
    case 2: return ModuleSpace::bundle({3, 2, 1});
    case 3: return ModuleSpace::bundle({2, 2});
    default: return ModuleSpace::bundle({3, 1, 2, 1, 3});
  }
}

ModuleSpace any_family(int index, const AlgebraShape& shape) {
  switch (index % 5) {
    case 0: return ModuleSpace::self_module(shape);
    case 1: return ModuleSpace::direct_sum(shape, 2);
    case 2: return ModuleSpace::seq_module(shape, 3);
    case 3: return rect_family(index / 5);
    default: return bundle_family(index / 5);
  }
}

constexpr int kFamilySizes[4] = {2, 3, 4, 5};

}  // namespace

TheoremInstance make_instance(TheoremId id, int index, const RunConfig& cfg) {
  const std::uint64_t tseed =
      trial_seed(cfg.seed, to_string(id), static_cast<std::uint64_t>(index));
  const AlgebraShape& shape =
      cfg.block_shapes[static_cast<size_t>(index) % cfg.block_shapes.size()];
  Rng meta(trial_seed(tseed, "meta", 1));
  switch (id) {
    case TheoremId::OpPair:
      return gen_op_pair(grid_family(index, shape), draw_triple(meta), tseed,
                         cfg.guards);
    case TheoremId::VecPair:
      return gen_vec_pair(id, any_family(index, shape), draw_triple(meta),
                          tseed, cfg.guards);
    case TheoremId::L2: {
      const int lengths[4] = {1, 2, 4, 8};
      return gen_vec_pair(
          id, ModuleSpace::seq_module(shape, lengths[index % 4]),
          draw_triple(meta), tseed, cfg.guards);
    }
    case TheoremId::OpTuple:
      return gen_vec_pair(id, rect_family(index), draw_triple(meta), tseed,
                          cfg.guards);
    case TheoremId::EulerLagrange:
      return gen_euler_lagrange(any_family(index, shape), draw_triple(meta),
                                tseed, cfg.guards);
    case TheoremId::Bundle:
      return gen_bundle(bundle_family(index), draw_triple(meta), tseed,
                        cfg.guards);
    case TheoremId::BohrPQ: {
      const double p =
          cfg.p_values[static_cast<size_t>(index) % cfg.p_values.size()];
      return gen_bohr_pq(any_family(index, shape), p, tseed, cfg.guards);
    }
    case TheoremId::Bohr2:
      return gen_bohr2(grid_family(index, shape), meta.uniform(0.15, 0.85),
                       tseed, cfg.guards);
    case TheoremId::BohrN:
      return gen_bohrn(grid_family(index, shape), kFamilySizes[index % 4],
                       tseed, cfg.guards);
    case TheoremId::BohrNCentral:
      return gen_bohrn_central(any_family(index, shape),
                               kFamilySizes[index % 4], tseed, cfg.guards);
    case TheoremId::AmQm: {
      const int dims[4] = {1, 2, 3, 4};
      const int counts[4] = {2, 1, 3, 5};
      return gen_amqm(dims[index % 4], counts[(index / 4) % 4], tseed,
                      cfg.guards);
    }
  }
  throw std::logic_error("unhandled theorem id");
}

namespace {

TrialResult run_one(TheoremId id, int index, const RunConfig& cfg) {
  const std::uint64_t tseed =
      trial_seed(cfg.seed, to_string(id), static_cast<std::uint64_t>(index));
  try {
    return verify_trial(make_instance(id, index, cfg));
  } catch (const std::exception& e) {
    TrialResult r;
    r.id = id;
    r.seed = tseed;
    r.hypothesis_ok = false;
    r.logic_ok = false;
    r.note = std::string("exception: ") + e.what();
    return r;
  }
}

}  // namespace

VerificationReport run_suites(const RunConfig& cfg) {
  cfg.validate();
  VerificationReport report;
  report.config = cfg;
  const size_t theorem_count = cfg.theorems.size();
  std::vector<std::vector<TrialResult>> results(theorem_count);
  for (auto& v : results) v.resize(static_cast<size_t>(cfg.trials));

  const size_t total = theorem_count * static_cast<size_t>(cfg.trials);
  std::atomic<size_t> next{0};
  const auto worker = [&] {
    for (size_t k = next.fetch_add(1); k < total; k = next.fetch_add(1)) {
      const size_t ti = k / static_cast<size_t>(cfg.trials);
      const int trial = static_cast<int>(k % static_cast<size_t>(cfg.trials));
      results[ti][static_cast<size_t>(trial)] =
          run_one(cfg.theorems[ti], trial, cfg);
    }
  };
  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  const int threads =
      std::min(cfg.jobs, static_cast<int>(std::min<size_t>(hw, total)));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int i = 0; i + 1 < threads; ++i) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();
  }

  for (size_t ti = 0; ti < theorem_count; ++ti) {
    TheoremAggregate agg;
    agg.id = cfg.theorems[ti];
    agg.trials = cfg.trials;
    for (const TrialResult& r : results[ti]) {
      if (r.has_identity) {
        agg.max_identity_residual = agg.any_identity
                                        ? std::max(agg.max_identity_residual,
                                                   r.identity_residual)
                                        : r.identity_residual;
        agg.any_identity = true;
      }
      if (r.has_slack && r.slack_gated) {
        const double normalized =
            r.loewner_slack / std::max(1.0, r.slack_scale);
        agg.min_loewner_slack =
            agg.any_slack ? std::min(agg.min_loewner_slack, normalized)
                          : normalized;
        agg.any_slack = true;
      }
      if (r.has_cross) {
        agg.max_cross_residual =
            agg.any_cross ? std::max(agg.max_cross_residual, r.cross_residual)
                          : r.cross_residual;
        agg.any_cross = true;
      }
      if (!r.passed(cfg.id_tol, cfg.slack_tol)) agg.failures.push_back(r.seed);
    }
    if (!agg.failures.empty()) report.pass = false;
    report.per_theorem.push_back(std::move(agg));
  }
  return report;
}

std::string report_to_json(const VerificationReport& report) {
  nlohmann::ordered_json j;
  nlohmann::ordered_json cfg;
  std::vector<std::string> names;
  for (TheoremId id : report.config.theorems) names.push_back(to_string(id));
  cfg["theorems"] = names;
  cfg["trials"] = report.config.trials;
  std::vector<std::string> shapes;
  for (const AlgebraShape& s : report.config.block_shapes)
    shapes.push_back(s.to_string());
  cfg["block_shapes"] = shapes;
  cfg["seed"] = report.config.seed;
  cfg["id_tol"] = report.config.id_tol;
  cfg["slack_tol"] = report.config.slack_tol;
  cfg["p_values"] = report.config.p_values;
  cfg["guards"] = {{"eps_p", report.config.guards.eps_p},
                   {"w_min", report.config.guards.w_min},
                   {"delta", report.config.guards.delta},
                   {"phi_min", report.config.guards.phi_min},
                   {"retry_budget", report.config.guards.retry_budget}};
  cfg["jobs"] = report.config.jobs;
  j["config"] = cfg;
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const TheoremAggregate& agg : report.per_theorem) {
    nlohmann::ordered_json t;
    t["id"] = to_string(agg.id);
    t["trials"] = agg.trials;
    t["max_identity_residual"] =
        agg.any_identity ? nlohmann::ordered_json(agg.max_identity_residual)
                         : nlohmann::ordered_json(nullptr);
    t["min_loewner_slack"] =
        agg.any_slack ? nlohmann::ordered_json(agg.min_loewner_slack)
                      : nlohmann::ordered_json(nullptr);
    t["max_cross_residual"] =
        agg.any_cross ? nlohmann::ordered_json(agg.max_cross_residual)
                      : nlohmann::ordered_json(nullptr);
    t["failures"] = agg.failures;
    arr.push_back(std::move(t));
  }
  j["per_theorem"] = arr;
  j["pass"] = report.pass;
  return j.dump(2) + "\n";
}

std::string render_summary(const VerificationReport& report) {
  std::string out;
  for (const TheoremAggregate& agg : report.per_theorem) {
    char res[24], slack[24], line[160];
    if (agg.any_identity)
      std::snprintf(res, sizeof res, "%.3e", agg.max_identity_residual);
    else
      std::snprintf(res, sizeof res, "n/a");
    if (agg.any_slack)
      std::snprintf(slack, sizeof slack, "%+.3e", agg.min_loewner_slack);
    else
      std::snprintf(slack, sizeof slack, "n/a");
    std::snprintf(line, sizeof line,
                  "%-14s trials=%-4d max_residual=%-11s min_slack=%-12s "
                  "failures=%zu\n",
                  to_string(agg.id).c_str(), agg.trials, res, slack,
                  agg.failures.size());
    out += line;
  }
  out += report.pass ? "PASS\n" : "FAIL\n";
  return out;
}

}  // namespace bohrmod
