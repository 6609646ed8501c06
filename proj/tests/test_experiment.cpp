#include <doctest.h>

#include <sstream>
#include <string>
#include <vector>

#include "cliquecast/experiment.hpp"
#include "support/oracles.hpp"

using namespace cliquecast;

namespace {

ExperimentPlan tiny_plan() {
  ExperimentPlan plan;
  plan.base.num_users = 3;
  plan.base.samples = 12;
  plan.base.seed = 7;
  plan.taus = {4, 8, 12};
  return plan;
}

}  // namespace

TEST_CASE("rows are complete and ordered by (tau, sample)") {
  const std::vector<ExperimentRow> rows = run_experiment(tiny_plan());
  REQUIRE(rows.size() == 36);
  std::size_t i = 0;
  for (std::uint64_t tau : {4, 8, 12}) {
    for (std::uint64_t sample = 0; sample < 12; ++sample, ++i) {
      CHECK(rows[i].tau == tau);
      CHECK(rows[i].sample == sample);
      CHECK(rows[i].bits[static_cast<std::size_t>(Algo::uncoded)].has_value());
      CHECK(rows[i].bits[static_cast<std::size_t>(Algo::sacm)].has_value());
      CHECK(!rows[i].bits[static_cast<std::size_t>(Algo::exact)].has_value());
    }
  }
}

TEST_CASE("per-row invariants: sacm <= uncoded, exact <= everything") {
  ExperimentPlan plan = tiny_plan();
  plan.algos = {Algo::uncoded, Algo::gcm, Algo::gccm, Algo::sacm, Algo::exact};
  const std::vector<ExperimentRow> rows = run_experiment(plan);
  for (const ExperimentRow& row : rows) {
    const auto bits = [&](Algo a) {
      return *row.bits[static_cast<std::size_t>(a)];
    };
    CHECK(bits(Algo::sacm) <= bits(Algo::uncoded));
    REQUIRE(row.bits[static_cast<std::size_t>(Algo::exact)].has_value());
    for (Algo a : {Algo::uncoded, Algo::gcm, Algo::gccm, Algo::sacm})
      CHECK(bits(Algo::exact) <= bits(a));
  }
}

TEST_CASE("parallel execution matches single threaded byte for byte") {
  ExperimentPlan serial = tiny_plan();
  ExperimentPlan parallel = tiny_plan();
  parallel.threads = 4;
  const std::vector<ExperimentRow> a = run_experiment(serial);
  const std::vector<ExperimentRow> b = run_experiment(parallel);
  std::ostringstream csv_a;
  std::ostringstream csv_b;
  write_csv(csv_a, a);
  write_csv(csv_b, b);
  CHECK(csv_a.str() == csv_b.str());
}

TEST_CASE("CSV is schema stable and deterministic") {
  const std::vector<ExperimentRow> rows = run_experiment(tiny_plan());
  std::ostringstream csv;
  write_csv(csv, rows);
  const std::string text = csv.str();
  CHECK(text.rfind("kind,K,tau,sample,seed,uncoded_bits,gcm_bits,gccm_bits,"
                   "sacm_bits,exact_bits,reduction_pct\n",
                   0) == 0);

  // every line has the same number of commas as the header
  std::istringstream lines(text);
  std::string line;
  std::getline(lines, line);
  const auto commas = [](const std::string& s) {
    return std::count(s.begin(), s.end(), ',');
  };
  const auto expected = commas(line);
  std::size_t reduction_rows = 0;
  while (std::getline(lines, line)) {
    CHECK(commas(line) == expected);
    if (line.rfind("reduction,", 0) == 0) ++reduction_rows;
  }
  CHECK(reduction_rows == 3);  // one per tau

  std::ostringstream again;
  write_csv(again, run_experiment(tiny_plan()));
  CHECK(text == again.str());
}

TEST_CASE("bandwidth reduction") {
  const std::vector<ExperimentRow> rows = run_experiment(tiny_plan());
  const auto reductions = bandwidth_reduction(rows);
  REQUIRE(reductions.size() == 3);
  for (const auto& [tau, pct] : reductions) {
    CHECK(pct >= 0.0);
    CHECK(pct <= 100.0);
  }

  // sacm == uncoded means zero reduction
  ExperimentRow flat;
  flat.tau = 5;
  flat.bits[static_cast<std::size_t>(Algo::uncoded)] = 100;
  flat.bits[static_cast<std::size_t>(Algo::sacm)] = 100;
  const auto zero = bandwidth_reduction({flat});
  REQUIRE(zero.size() == 1);
  CHECK(zero.front().second == doctest::Approx(0.0));

  CHECK_THROWS_AS(bandwidth_reduction({}), std::invalid_argument);
}

TEST_CASE("confidence intervals cover exact on small sweeps") {
  // with K=3 every coded scheme sits within a CI width of the optimum
  ExperimentPlan plan = tiny_plan();
  plan.base.samples = 40;
  plan.taus = {6, 10};
  plan.algos = {Algo::uncoded, Algo::gcm, Algo::gccm, Algo::sacm, Algo::exact};
  const std::vector<ExperimentRow> rows = run_experiment(plan);
  for (std::uint64_t tau : plan.taus) {
    std::array<std::vector<double>, kAlgoCount> columns;
    for (const ExperimentRow& row : rows) {
      if (row.tau != tau) continue;
      for (std::size_t a = 0; a < kAlgoCount; ++a)
        if (row.bits[a].has_value())
          columns[a].push_back(static_cast<double>(*row.bits[a]));
    }
    const Aggregate exact =
        aggregate(columns[static_cast<std::size_t>(Algo::exact)]);
    for (Algo algo : {Algo::gcm, Algo::gccm, Algo::sacm}) {
      const Aggregate approx =
          aggregate(columns[static_cast<std::size_t>(algo)]);
      CHECK(approx.mean - approx.ci95_half - exact.ci95_half <= exact.mean);
      CHECK(approx.mean >= exact.mean);  // never below the optimum
    }
  }
}

TEST_CASE("single fixed instance: one row, no aggregation") {
  const Instance instance = testsupport::k3_reference_instance();
  const ExperimentRow row = run_single(
      instance, {Algo::uncoded, Algo::gcm, Algo::gccm, Algo::sacm, Algo::exact});
  CHECK(row.tau == 12);
  CHECK(*row.bits[static_cast<std::size_t>(Algo::uncoded)] == 700);
  CHECK(*row.bits[static_cast<std::size_t>(Algo::gcm)] == 650);
  CHECK(*row.bits[static_cast<std::size_t>(Algo::sacm)] == 370);
  CHECK(*row.bits[static_cast<std::size_t>(Algo::exact)] == 370);

  std::ostringstream csv;
  write_csv(csv, {row}, false, false);
  std::istringstream lines(csv.str());
  std::string line;
  std::size_t count = 0;
  while (std::getline(lines, line)) ++count;
  CHECK(count == 2);  // header + the single sample row
}

TEST_CASE("invalid plans are rejected") {
  ExperimentPlan plan = tiny_plan();
  plan.taus = {};
  CHECK_THROWS_AS(run_experiment(plan), std::invalid_argument);
  plan = tiny_plan();
  plan.taus = {13};
  CHECK_THROWS_AS(run_experiment(plan), std::invalid_argument);
}
