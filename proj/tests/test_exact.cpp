#include <doctest.h>

#include <cmath>
#include <vector>

#include "cliquecast/exact.hpp"
#include "cliquecast/generators.hpp"
#include "cliquecast/rng.hpp"
#include "cliquecast/sacm.hpp"
#include "support/oracles.hpp"

using namespace cliquecast;
using testsupport::sf;

TEST_CASE("cover problem shape on the reference instance") {
  const Instance instance = testsupport::k3_reference_instance();
  const CoverProblem pruned = build_cover_problem(instance);
  CHECK(pruned.elements.size() == 12);
  CHECK(pruned.enumerated_columns == 25);
  CHECK(pruned.sets.size() <= 25);

  const CoverProblem raw =
      build_cover_problem(instance, kDefaultCliqueCap, false);
  CHECK(raw.sets.size() == 25);
}

TEST_CASE("cover problem of a single subfile is one by one") {
  const Instance one = make_instance(2, {sf(1, {2}, 3)});
  const CoverProblem problem = build_cover_problem(one);
  CHECK(problem.elements.size() == 1);
  CHECK(problem.sets.size() == 1);
  CHECK(problem.costs.front() == 3);
}

TEST_CASE("column count matches the group products") {
  SplitMix64 rng(64);
  for (int round = 0; round < 20; ++round) {
    const Instance instance =
        testsupport::random_test_instance(3, 4 + rng.below(9), 1, 50, rng);
    const CoverProblem raw =
        build_cover_problem(instance, kDefaultCliqueCap, false);
    CHECK(raw.elements.size() == instance.subfiles.size());
    CHECK(raw.sets.size() ==
          testsupport::brute_force_cliques(instance.subfiles).size());
  }
}

TEST_CASE("oracle reproduces the 370-bit optimum") {
  const Instance instance = testsupport::k3_reference_instance();
  const ExactResult result = exact_cover(instance);
  CHECK(result.optimal);
  CHECK(result.schedule.total_bits == 370);
  CHECK(validate_schedule(instance, result.schedule));
}

TEST_CASE("oracle on the adversarial families") {
  const ExactResult one_clique = exact_cover(adversarial_uncoded(6, 500));
  CHECK(one_clique.optimal);
  CHECK(one_clique.schedule.total_bits == 500);

  const GccmAdversary adv = adversarial_gccm(6, 1000, 1);
  const ExactResult ring = exact_cover(adv.instance);
  CHECK(ring.optimal);
  CHECK(ring.schedule.total_bits == 1000 + 6 * 1);
}

TEST_CASE("oracle equals exhaustive search on small instances") {
  SplitMix64 rng(2718);
  for (int round = 0; round < 40; ++round) {
    const std::size_t tau = 3 + rng.below(10);
    const Instance instance =
        testsupport::random_test_instance(3, tau, 1, 100, rng);
    const ExactResult result = exact_cover(instance);
    REQUIRE(result.optimal);
    CHECK(result.schedule.total_bits ==
          testsupport::exhaustive_optimal_bits(instance));
    CHECK(validate_schedule(instance, result.schedule));
  }
  for (int round = 0; round < 8; ++round) {
    const Instance instance =
        testsupport::random_test_instance(4, 6 + rng.below(5), 1, 100, rng);
    const ExactResult result = exact_cover(instance);
    REQUIRE(result.optimal);
    CHECK(result.schedule.total_bits ==
          testsupport::exhaustive_optimal_bits(instance));
  }
}

TEST_CASE("the root lower bound never exceeds the optimum") {
  SplitMix64 rng(161803);
  for (int round = 0; round < 30; ++round) {
    const Instance instance =
        testsupport::random_test_instance(3, 3 + rng.below(9), 1, 80, rng);
    const CoverProblem problem = build_cover_problem(instance);
    // recompute the root bound the way the search does: sum over elements of
    // the floored minimum cost-per-member among covering columns
    std::uint64_t sum = 0;
    for (std::size_t e = 0; e < problem.elements.size(); ++e) {
      std::uint64_t best = ~std::uint64_t{0};
      for (std::size_t c = 0; c < problem.sets.size(); ++c)
        if (problem.incidence[c].test(e))
          best = std::min(
              best, (problem.costs[c] << 16) /
                        static_cast<std::uint64_t>(problem.incidence[c].count()));
      sum += best;
    }
    const std::uint64_t bound = sum >> 16;
    CHECK(bound <= testsupport::exhaustive_optimal_bits(instance));
  }
}

TEST_CASE("sandwich: exact <= sacm <= (1+ln K) exact") {
  SplitMix64 rng(5);
  for (int round = 0; round < 30; ++round) {
    const Instance instance =
        testsupport::random_test_instance(3, 4 + rng.below(9), 1, 500, rng);
    const std::uint64_t approx = sacm(instance).total_bits;
    const ExactResult exact = exact_cover(instance);
    REQUIRE(exact.optimal);
    CHECK(exact.schedule.total_bits <= approx);
    CHECK(static_cast<double>(approx) <=
          (1.0 + std::log(3.0)) *
                  static_cast<double>(exact.schedule.total_bits) +
              1e-9);
  }
}

TEST_CASE("node budget exhaustion keeps the incumbent, unflagged optimal") {
  const Instance instance = testsupport::k3_reference_instance();
  ExactOptions options;
  options.node_budget = 1;
  const ExactResult result = exact_cover(instance, options);
  CHECK(!result.optimal);
  CHECK(result.schedule.total_bits == sacm(instance).total_bits);
  CHECK(validate_schedule(instance, result.schedule));
}

TEST_CASE("node counts are reproducible") {
  const Instance instance = testsupport::k3_reference_instance();
  const ExactResult a = exact_cover(instance);
  const ExactResult b = exact_cover(instance);
  CHECK(a.nodes == b.nodes);
  CHECK(a.columns == b.columns);
}

TEST_CASE("solve_exact rejects an empty problem") {
  CHECK_THROWS_AS(solve_exact(CoverProblem{}), std::invalid_argument);
}
