#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <vector>

#include "cliquecast/clique_space.hpp"
#include "cliquecast/exact.hpp"
#include "cliquecast/rng.hpp"
#include "support/oracles.hpp"

using namespace cliquecast;
using testsupport::sf;

TEST_CASE("group candidate lists") {
  const Instance instance = testsupport::k3_reference_instance();
  const UserSet t12 = set_of({1, 2});

  CHECK(build_group_candidates(instance.subfiles, t12, 1) ==
        std::vector<Subfile>{sf(1, {2}, 10), sf(1, {2, 3}, 300)});
  CHECK(build_group_candidates(instance.subfiles, t12, 2) ==
        std::vector<Subfile>{sf(2, {1}, 300), sf(2, {1, 3}, 10)});

  // singleton group: every subfile of that owner qualifies
  CHECK(build_group_candidates(instance.subfiles, set_of({3}), 3).size() == 4);
  CHECK_THROWS_AS(build_group_candidates(instance.subfiles, t12, 3),
                  std::invalid_argument);
}

TEST_CASE("per-group enumeration is the candidate product") {
  const Instance instance = testsupport::k3_reference_instance();

  const auto pairs = enumerate_group(instance.subfiles, set_of({1, 2}));
  CHECK(pairs.size() == 4);
  for (const Packet& p : pairs) {
    CHECK(p.size() == 2);
    CHECK(is_feasible(p));
  }

  const auto triple = enumerate_group(instance.subfiles, set_of({1, 2, 3}));
  REQUIRE(triple.size() == 1);
  CHECK(triple.front().members ==
        std::vector<Subfile>{sf(1, {2, 3}, 300), sf(2, {1, 3}, 10),
                             sf(3, {1, 2}, 10)});

  // an owner with no qualifying subfile kills the group
  const Instance small = make_instance(3, {sf(1, {2}, 5), sf(2, {3}, 5)});
  CHECK(enumerate_group(small.subfiles, set_of({1, 2})).empty());
}

TEST_CASE("the reference instance has 25 cliques in 7 groups") {
  const Instance instance = testsupport::k3_reference_instance();
  const CliqueFamily family = enumerate_all_cliques(instance.subfiles);
  CHECK(family.total_count == 25);
  REQUIRE(family.groups.size() == 7);

  std::map<UserSet, std::size_t> sizes;
  for (const CliqueGroup& g : family.groups)
    sizes[g.users] = g.cliques.size();
  CHECK(sizes[set_of({1})] == 4);
  CHECK(sizes[set_of({2})] == 4);
  CHECK(sizes[set_of({3})] == 4);
  CHECK(sizes[set_of({1, 2})] == 4);
  CHECK(sizes[set_of({1, 3})] == 4);
  CHECK(sizes[set_of({2, 3})] == 4);
  CHECK(sizes[set_of({1, 2, 3})] == 1);
}

TEST_CASE("single subfile enumerates one clique") {
  const Instance one = make_instance(2, {sf(1, {2}, 9)});
  const CliqueFamily family = enumerate_all_cliques(one.subfiles);
  CHECK(family.total_count == 1);
  REQUIRE(family.groups.size() == 1);
  CHECK(family.groups.front().cliques.front().members ==
        std::vector<Subfile>{sf(1, {2}, 9)});
}

TEST_CASE("enumeration matches brute-force subset filtering") {
  SplitMix64 rng(2024);
  for (int round = 0; round < 60; ++round) {
    const int k = static_cast<int>(3 + rng.below(2));
    const std::size_t tau = 4 + rng.below(7);
    const Instance instance =
        testsupport::random_test_instance(k, tau, 1, 40, rng);

    const std::vector<Packet> expected =
        testsupport::brute_force_cliques(instance.subfiles);
    const CliqueFamily family = enumerate_all_cliques(instance.subfiles);

    std::vector<Packet> got;
    for (const CliqueGroup& g : family.groups) {
      // per-group product cardinality
      std::uint64_t product = 1;
      for (int j : users_of(g.users))
        product *=
            build_group_candidates(instance.subfiles, g.users, j).size();
      CHECK(g.cliques.size() == product);
      for (const Packet& p : g.cliques) {
        CHECK(p.owners() == g.users);  // groups really partition by owners
        got.push_back(p);
      }
    }
    CHECK(got.size() == family.total_count);
    std::sort(got.begin(), got.end(), packet_less);
    // disjoint union over groups: no duplicates and the exact brute set
    CHECK(std::adjacent_find(got.begin(), got.end()) == got.end());
    CHECK(got == expected);
  }
}

TEST_CASE("enumeration refuses past the clique cap") {
  const Instance instance = testsupport::k3_reference_instance();
  CHECK_THROWS_AS(enumerate_all_cliques(instance.subfiles, 10),
                  ResourceCapExceeded);
  CHECK_NOTHROW(enumerate_all_cliques(instance.subfiles, 25));
}

TEST_CASE("best_ratio_clique picks the exhaustive argmax") {
  const Instance instance = testsupport::k3_reference_instance();
  const CliqueFamily family = enumerate_all_cliques(instance.subfiles);
  const Packet& best = best_ratio_clique(family);
  CHECK(best.size() == 2);
  CHECK(packet_size(best) == 10);  // ratio 2/10 beats everything else

  // independent exhaustive ratio scan
  double best_ratio = 0;
  for (const Packet& p : testsupport::brute_force_cliques(instance.subfiles))
    best_ratio = std::max(
        best_ratio, static_cast<double>(p.size()) /
                        static_cast<double>(packet_size(p)));
  CHECK(static_cast<double>(best.size()) /
            static_cast<double>(packet_size(best)) ==
        doctest::Approx(best_ratio));

  const Instance one = make_instance(2, {sf(2, {1}, 7)});
  const CliqueFamily single = enumerate_all_cliques(one.subfiles);
  CHECK(best_ratio_clique(single).members ==
        std::vector<Subfile>{sf(2, {1}, 7)});

  CHECK_THROWS_AS(best_ratio_clique(CliqueFamily{}), std::domain_error);
}

TEST_CASE("greedy cover of the reference instance costs 370") {
  const Instance instance = testsupport::k3_reference_instance();
  const Schedule schedule = greedy_cover(instance);
  CHECK(schedule.total_bits == 370);
  CHECK(validate_schedule(instance, schedule));
}

TEST_CASE("greedy cover of a single subfile is one singleton") {
  const Instance one = make_instance(3, {sf(2, {1, 3}, 11)});
  const Schedule schedule = greedy_cover(one);
  REQUIRE(schedule.packets.size() == 1);
  CHECK(schedule.total_bits == 11);
}

TEST_CASE("chvatal cover equals greedy cover packet-size sequences") {
  const Instance reference = testsupport::k3_reference_instance();
  CHECK(chvatal_cover(reference).total_bits == 370);

  SplitMix64 rng(555);
  for (int round = 0; round < 40; ++round) {
    const std::size_t tau = 4 + rng.below(9);
    const Instance instance =
        testsupport::random_test_instance(3, tau, 1, 30, rng);
    const Schedule a = greedy_cover(instance);
    const Schedule b = chvatal_cover(instance);
    REQUIRE(a.packets.size() == b.packets.size());
    for (std::size_t i = 0; i < a.packets.size(); ++i)
      CHECK(packet_size(a.packets[i]) == packet_size(b.packets[i]));
    CHECK(a.total_bits == b.total_bits);
    CHECK(validate_schedule(instance, a));
    CHECK(validate_schedule(instance, b));
  }
}

TEST_CASE("an instance with only singleton cliques degenerates to uncoded") {
  // no user caches anything, so no pair is ever feasible
  const Instance instance = make_instance(
      3, {sf(1, {}, 4), sf(2, {}, 6), sf(3, {}, 8)});
  const Schedule schedule = chvatal_cover(instance);
  CHECK(schedule.packets.size() == 3);
  CHECK(schedule.total_bits == 18);
}

TEST_CASE("greedy stays within the harmonic bound of the optimum") {
  SplitMix64 rng(99);
  for (int round = 0; round < 25; ++round) {
    const Instance instance =
        testsupport::random_test_instance(4, 6 + rng.below(5), 1, 60, rng);
    const std::uint64_t greedy = chvatal_cover(instance).total_bits;
    const std::uint64_t optimal = testsupport::exhaustive_optimal_bits(instance);
    // 1 + ln 4 = 2.386...
    CHECK(static_cast<double>(greedy) <=
          (1.0 + std::log(4.0)) * static_cast<double>(optimal) + 1e-9);
  }
}
