#include <doctest.h>

#include <cmath>
#include <vector>

#include "cliquecast/baselines.hpp"
#include "cliquecast/clique_space.hpp"
#include "cliquecast/exact.hpp"
#include "cliquecast/rng.hpp"
#include "cliquecast/sacm.hpp"
#include "support/oracles.hpp"

using namespace cliquecast;
using testsupport::sf;

TEST_CASE("best group packet on the reference instance") {
  const Instance instance = testsupport::k3_reference_instance();
  const Packet best = best_ratio_packet(instance.subfiles);
  // ratio 2/10; group {1,2} wins the tie against {1,3} and {2,3}
  CHECK(best.members ==
        std::vector<Subfile>{sf(1, {2}, 10), sf(2, {1, 3}, 10)});
}

TEST_CASE("best group packet of a single subfile is that singleton") {
  const std::vector<Subfile> one = {sf(2, {1}, 123)};
  CHECK(best_ratio_packet(one).members == one);
  CHECK_THROWS_AS(best_ratio_packet(std::span<const Subfile>{}),
                  std::invalid_argument);
}

TEST_CASE("group scan equals enumeration optimum size everywhere") {
  SplitMix64 rng(31337);
  for (int round = 0; round < 120; ++round) {
    const int k = static_cast<int>(3 + rng.below(2));
    const std::size_t tau = 3 + rng.below(10);
    const Instance instance =
        testsupport::random_test_instance(k, tau, 1, 1000, rng);

    std::vector<std::vector<Subfile>> inputs = {instance.subfiles};
    for (int s = 0; s < 3; ++s) {
      std::vector<Subfile> subset;
      for (const Subfile& x : instance.subfiles)
        if (rng.next() & 1) subset.push_back(x);
      if (!subset.empty()) inputs.push_back(std::move(subset));
    }
    for (const std::vector<Subfile>& input : inputs) {
      const Packet via_groups = best_ratio_packet(input);
      const CliqueFamily family = enumerate_all_cliques(input);
      const Packet& via_cliques = best_ratio_clique(family);
      CHECK(packet_size(via_groups) == packet_size(via_cliques));
      CHECK(via_groups.size() == via_cliques.size());
    }
  }
}

TEST_CASE("dense and direct scans select identical packets") {
  SplitMix64 rng(777);
  for (int round = 0; round < 80; ++round) {
    const int k = static_cast<int>(3 + rng.below(6));
    const std::size_t tau = k + rng.below(24);
    const Instance instance =
        testsupport::random_test_instance(k, tau, 1, 100, rng);
    const Packet dense = best_ratio_packet(instance.subfiles, GroupScan::dense);
    const Packet direct =
        best_ratio_packet(instance.subfiles, GroupScan::direct);
    CHECK(dense.members == direct.members);
  }
}

TEST_CASE("sacm covers the reference instance with 370 bits") {
  const Instance instance = testsupport::k3_reference_instance();
  const Schedule schedule = sacm(instance);
  CHECK(schedule.total_bits == 370);
  CHECK(validate_schedule(instance, schedule));
}

TEST_CASE("sacm sends one packet when everything is mutually cached") {
  std::vector<Subfile> subfiles;
  const int k = 5;
  for (int u = 1; u <= k; ++u)
    subfiles.push_back(Subfile{u, all_users(k) ^ user_bit(u), 1000});
  const Instance instance = make_instance(k, std::move(subfiles));
  const Schedule schedule = sacm(instance);
  REQUIRE(schedule.packets.size() == 1);
  CHECK(schedule.total_bits == 1000);
}

TEST_CASE("sacm never exceeds uncoded delivery") {
  SplitMix64 rng(1234);
  for (int round = 0; round < 150; ++round) {
    const int k = static_cast<int>(3 + rng.below(6));
    const std::size_t tau = k + rng.below(40);
    const Instance instance =
        testsupport::random_test_instance(k, tau, 1, 1000, rng);
    const Schedule schedule = sacm(instance);
    CHECK(schedule.total_bits <= uncoded(instance).total_bits);
    CHECK(validate_schedule(instance, schedule));
  }
}

TEST_CASE("sacm stays within the harmonic bound of the optimum") {
  SplitMix64 rng(4321);
  for (int round = 0; round < 30; ++round) {
    const int k = 3;
    const std::size_t tau = 4 + rng.below(8);
    const Instance instance =
        testsupport::random_test_instance(k, tau, 1, 200, rng);
    const std::uint64_t mine = sacm(instance).total_bits;
    const std::uint64_t optimal =
        testsupport::exhaustive_optimal_bits(instance);
    CHECK(static_cast<double>(mine) <=
          (1.0 + std::log(3.0)) * static_cast<double>(optimal) + 1e-9);
  }
}

TEST_CASE("sacm is deterministic") {
  SplitMix64 rng(8);
  const Instance instance = testsupport::random_test_instance(6, 30, 1, 500, rng);
  const Schedule a = sacm(instance);
  const Schedule b = sacm(instance);
  CHECK(a.packets == b.packets);
  const Schedule c = sacm(instance, GroupScan::direct);
  CHECK(a.packets == c.packets);
}
