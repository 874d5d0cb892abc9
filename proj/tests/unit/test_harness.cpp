#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <numeric>

#include "fixtures.hpp"
#include "frontier/harness.hpp"
#include "frontier/report.hpp"
#include "tempdata.hpp"

using namespace frontier;
using frontier::testing::write_standin;

namespace {

ExperimentPlan small_plan() {
  ExperimentPlan plan;
  plan.datasets = {write_standin(0), write_standin(1)};
  plan.budgets = {1.0, 5.0};
  plan.repetitions = {2};
  plan.sweep_cap = 15;
  plan.lambda_count = 10;
  plan.overrides.pool_size = 100;
  return plan;
}

double sample_std(const std::vector<double>& xs) {
  if (xs.size() < 2) return 0.0;
  const double m = std::accumulate(xs.begin(), xs.end(), 0.0) / xs.size();
  double ss = 0.0;
  for (const double x : xs) ss += (x - m) * (x - m);
  return std::sqrt(ss / (xs.size() - 1));
}

}  // namespace

TEST_CASE("derive_seed") {
  CHECK(derive_seed(1, "port1", Algorithm::SimulatedAnnealing, 5.0, 0) == 8905080620467158817ull);
  CHECK(derive_seed(1, "port1", Algorithm::SimulatedAnnealing, 5.0, 3) == 8905080620467158820ull);
  CHECK(derive_seed(42, "port3", Algorithm::GeneticAlgorithm, 0.1, 0) == 2384848825651691722ull);
  CHECK(derive_seed(1, "port1", Algorithm::TabuSearch, 5.0, 0) != derive_seed(1, "port1", Algorithm::SimulatedAnnealing, 5.0, 0));
  CHECK(derive_seed(1, "port2", Algorithm::SimulatedAnnealing, 5.0, 0) != derive_seed(1, "port1", Algorithm::SimulatedAnnealing, 5.0, 0));
}

TEST_CASE("plan validation") {
  auto plan = small_plan();
  CHECK_NOTHROW(validate(plan));
  CHECK(repetitions_for(plan, 1) == 2);
  plan.repetitions = {3, 4};
  CHECK(repetitions_for(plan, 0) == 3);
  CHECK(repetitions_for(plan, 1) == 4);
  plan.repetitions = {1, 2, 3};
  CHECK_THROWS(validate(plan));
  plan.repetitions = {0};
  CHECK_THROWS(validate(plan));
  plan = small_plan();
  plan.budgets = {1.0, 0.0};
  CHECK_THROWS(validate(plan));
  plan = small_plan();
  plan.datasets.clear();
  CHECK_THROWS(validate(plan));
}

TEST_CASE("profiles and overrides") {
  RunRequest req;
  req.algorithm = Algorithm::SimulatedAnnealing;
  req.budget_seconds = 25;
  CHECK(std::get<SaProfile>(resolve_profile(req)).alpha == 0.995);
  req.sweep_cap = 100;
  CHECK(std::get<SaProfile>(resolve_profile(req)).alpha == 0.95);
  req.profile_budget = 1.0;
  CHECK(std::get<SaProfile>(resolve_profile(req)).alpha == 0.7);
  req.overrides.alpha = 0.5;
  req.overrides.cooling = Cooling::PerStep;
  const auto sa = std::get<SaProfile>(resolve_profile(req));
  CHECK(sa.alpha == 0.5);
  CHECK(sa.cooling == Cooling::PerStep);
  req.overrides.alpha = 1.5;
  CHECK_THROWS(resolve_profile(req));

  AlgorithmProfile ts = TsProfile{};
  ProfileOverrides o;
  o.tenure = 7;
  o.tabu_lists = kAssetInList | kWeightUpList;
  o.alpha = 0.1;  // ignored for tabu search
  apply_overrides(ts, o);
  CHECK(std::get<TsProfile>(ts).tenure == 7);
  CHECK(std::get<TsProfile>(ts).active_lists == (kAssetInList | kWeightUpList));
}

TEST_CASE("execute_run") {
  const auto spec = testing::standin_spec(0, 10, 0.01, 10);
  const auto ref = write_standin(0);
  const Uef uef = load_uef_file(ref.frontier);
  RunRequest req;
  req.algorithm = Algorithm::TabuSearch;
  req.sweep_cap = 20;
  req.pool_size = 100;
  const auto out = execute_run(spec, req, &uef);
  CHECK_FALSE(out.timed);
  CHECK(out.result.solutions.entries.size() == 10);
  REQUIRE(out.errors);
  CHECK(out.errors->errors.size() == 10);
  CHECK(out.errors->mpe == doctest::Approx(mpe(out.errors->errors)));
  CHECK_FALSE(execute_run(spec, req).errors);
}

TEST_CASE("run_experiment aggregates") {
  auto plan = small_plan();
  plan.datasets.push_back({"port9", "/nonexistent/port9.txt", "/nonexistent/portef9.txt"});
  const auto report = run_experiment(plan);
  REQUIRE(report.failures.size() == 1);
  CHECK(report.failures[0].dataset == "port9");
  CHECK_FALSE(report.timed);
  REQUIRE(report.cells.size() == 2 * 3 * 2);

  // Dataset-major, then algorithm, then budget.
  CHECK(report.cells[0].dataset == "port1");
  CHECK(report.cells[0].algorithm == Algorithm::SimulatedAnnealing);
  CHECK(report.cells[0].budget_seconds == 1.0);
  CHECK(report.cells[1].budget_seconds == 5.0);
  CHECK(report.cells[2].algorithm == Algorithm::TabuSearch);
  CHECK(report.cells[6].dataset == "port2");

  for (const auto& c : report.cells) {
    REQUIRE(c.mpes.size() == 2);
    CHECK(c.mpe_mean == doctest::Approx((c.mpes[0] + c.mpes[1]) / 2).epsilon(1e-15));
    CHECK(c.mpe_std == doctest::Approx(sample_std(c.mpes)).epsilon(1e-12));
    CHECK(c.seeds[0] == derive_seed(plan.base_seed, c.dataset, c.algorithm, c.budget_seconds, 0));
    CHECK(c.seeds[1] == c.seeds[0] + 1);
  }

  REQUIRE(report.averages.size() == 3 * 2);
  for (const auto& a : report.averages) {
    std::vector<double> means;
    for (const auto& c : report.cells) {
      if (c.algorithm == a.algorithm && c.budget_seconds == a.budget_seconds) means.push_back(c.mpe_mean);
    }
    CHECK(a.datasets == 2);
    CHECK(a.mpe_mean == doctest::Approx((means[0] + means[1]) / 2).epsilon(1e-15));
  }

  REQUIRE(report.improvements.size() == 2 * 3);
  for (const auto& i : report.improvements) {
    CHECK(i.from_budget == 1.0);
    CHECK(i.to_budget == 5.0);
    CHECK(std::abs(i.improvement - 100 * (i.earlier_mpe - i.later_mpe) / i.earlier_mpe) <= 1e-9);
  }
}

TEST_CASE("a single repetition reports that run's MPE") {
  auto plan = small_plan();
  plan.datasets.resize(1);
  plan.algorithms = {Algorithm::GeneticAlgorithm};
  plan.budgets = {1.0};
  plan.repetitions = {1};
  const auto report = run_experiment(plan);
  REQUIRE(report.cells.size() == 1);
  CHECK(report.cells[0].mpe_mean == report.cells[0].mpes[0]);
  CHECK(report.cells[0].mpe_std == 0.0);
  CHECK(report.improvements.empty());
}

TEST_CASE("iteration-capped experiments are reproducible, also across worker counts") {
  auto plan = small_plan();
  const std::string a = bench_json(run_experiment(plan)).dump();
  const std::string b = bench_json(run_experiment(plan)).dump();
  CHECK(a == b);
  plan.workers = 3;
  CHECK(bench_json(run_experiment(plan)).dump() == a);
  CHECK(a.find("host") == std::string::npos);
  CHECK(a.find("wall_seconds") == std::string::npos);
}

TEST_CASE("tabu list combinations") {
  const auto combos = tabu_list_combinations();
  REQUIRE(combos.size() == 16);
  CHECK(combos.front() == 0u);
  CHECK(combos.back() == (kAssetInList | kAssetOutList | kWeightUpList | kWeightDownList));
  CHECK(combos[1] == kWeightDownList);
  std::vector<unsigned> sorted = combos;
  std::sort(sorted.begin(), sorted.end());
  for (unsigned i = 0; i < 16; ++i) CHECK(sorted[i] == i);
}

TEST_CASE("tabu tuning grid") {
  auto plan = small_plan();
  plan.datasets.resize(1);
  plan.sweep_cap = 3;
  plan.repetitions = {1};
  const std::vector<std::size_t> tenures{3, 5, 7};
  const auto combos = tabu_list_combinations();
  const auto grid = tabu_tuning_grid(plan, tenures, combos);
  REQUIRE(grid.rows.size() == 48);
  CHECK(grid.budgets == plan.budgets);
  CHECK(grid.rows[0].lists == 0u);
  for (const auto& row : grid.rows) {
    REQUIRE(row.mpe_per_budget.size() == 2);
    CHECK(row.average == doctest::Approx((row.mpe_per_budget[0] + row.mpe_per_budget[1]) / 2).epsilon(1e-15));
  }
  plan.datasets.push_back({"port9", "/nonexistent/port9.txt", "/nonexistent/portef9.txt"});
  CHECK_THROWS_AS(tabu_tuning_grid(plan, tenures, combos), DatasetError);
}

TEST_CASE("frontier_trace") {
  const auto ref = write_standin(2);
  const auto spec = ProblemSpec(std::make_shared<const AssetUniverse>(load_universe_file(ref.assets)), 10, 0.01, 20);
  const Uef uef = load_uef_file(ref.frontier);
  RunRequest req;
  req.algorithm = Algorithm::SimulatedAnnealing;
  req.sweep_cap = 10;
  req.pool_size = 100;
  const auto trace = frontier_trace(ref, spec, uef, req);
  CHECK(trace.dataset == "port3");
  CHECK(trace.solutions.size() == 20);
  CHECK(trace.frontier.size() == uef.size());
  for (std::size_t e = 0; e < trace.solutions.size(); ++e) {
    const auto& entry = trace.outcome.result.solutions.entries[e];
    CHECK(trace.solutions[e].lambda == entry.lambda);
    CHECK(trace.solutions[e].std_dev == entry.stats.std_dev);
    CHECK(trace.solutions[e].mean_return == entry.stats.mean_return);
  }
}

TEST_CASE("environment and names") {
  ::setenv("FRONTIER_RACE_THREADS", "4", 1);
  CHECK(workers_from_env() == 4);
  ::setenv("FRONTIER_RACE_THREADS", "lots", 1);
  CHECK(workers_from_env() == 1);
  ::unsetenv("FRONTIER_RACE_THREADS");
  CHECK(workers_from_env() == 1);
  CHECK(dataset_name("data/port1.txt") == "port1");
  CHECK(dataset_name("/x/y/port5") == "port5");
  const auto host = host_info();
  CHECK_FALSE(host.cpu_model.empty());
  CHECK(host.logical_cores >= 1);
}
