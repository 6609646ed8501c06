#pragma once

// Instance construction: uniform Monte Carlo placements for the experiment
// harness, the three adversarial families that realize the worst-case
// approximation ratios of the baselines, and the reduction that turns any
// graph into a unit-size instance whose optimal cover is a minimum clique
// cover.

#include <cstdint>
#include <set>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "cliquecast/core.hpp"
#include "cliquecast/rng.hpp"

namespace cliquecast {

struct ExperimentConfig {
  int num_users = 3;
  std::uint64_t tau = 3;  // number of nonzero subfiles to place
  std::uint64_t size_min = 1;
  std::uint64_t size_max = 1000;
  std::uint64_t samples = 100;
  std::uint64_t seed = 0;
};

inline void validate_config(const ExperimentConfig& config) {
  if (config.num_users < 1 || config.num_users > kMaxUsers)
    throw std::invalid_argument("num_users must be in [1, 63]");
  const unsigned __int128 max_tau =
      static_cast<unsigned __int128>(config.num_users)
      << (config.num_users - 1);
  if (config.tau < static_cast<std::uint64_t>(config.num_users) ||
      static_cast<unsigned __int128>(config.tau) > max_tau)
    throw std::invalid_argument("tau must be in [K, K*2^(K-1)]");
  if (config.size_min < 1 || config.size_min > config.size_max)
    throw std::invalid_argument("need 1 <= size_min <= size_max");
}

namespace detail {

// Candidate cache sets of one owner in canonical (lex) order: {} first, then
// {u1}, {u1,u2}, ... over the other users ascending.
inline void append_cache_sets_lex(int num_users, int owner,
                                  std::vector<UserSet>& out) {
  std::vector<int> others;
  for (int u = 1; u <= num_users; ++u)
    if (u != owner) others.push_back(u);
  out.push_back(0);
  std::vector<std::pair<UserSet, std::size_t>> stack;
  for (std::size_t i = 0; i < others.size(); ++i) {
    const UserSet first = user_bit(others[i]);
    out.push_back(first);
    stack.clear();
    stack.emplace_back(first, i + 1);
    while (!stack.empty()) {
      auto& [cur, next] = stack.back();
      if (next >= others.size()) {
        stack.pop_back();
        continue;
      }
      const UserSet extended = cur | user_bit(others[next]);
      ++next;
      out.push_back(extended);
      stack.emplace_back(extended, stack.back().second);
    }
  }
}

}  // namespace detail

// One placement drawn uniformly over all tau-subsets of the K*2^(K-1)
// candidate subfiles, sizes independent uniform integers in
// [size_min, size_max]. Deterministic in (seed, sample_index): the draw uses
// substream(seed, sample_index), and sizes are assigned in canonical order
// of the selected pairs.
inline Instance random_instance(const ExperimentConfig& config,
                                std::uint64_t sample_index = 0) {
  validate_config(config);
  const int k = config.num_users;
  SplitMix64 rng = substream(config.seed, sample_index);

  std::vector<Subfile> chosen;
  chosen.reserve(static_cast<std::size_t>(config.tau));
  const unsigned __int128 total =
      static_cast<unsigned __int128>(k) << (k - 1);
  if (total <= (1u << 22)) {
    // Small candidate space: materialize and partially Fisher-Yates shuffle.
    std::vector<Subfile> candidates;
    candidates.reserve(static_cast<std::size_t>(total));
    std::vector<UserSet> sets;
    for (int owner = 1; owner <= k; ++owner) {
      sets.clear();
      detail::append_cache_sets_lex(k, owner, sets);
      for (UserSet cs : sets) candidates.push_back(Subfile{owner, cs, 1});
    }
    for (std::uint64_t i = 0; i < config.tau; ++i) {
      const std::uint64_t j = i + rng.below(candidates.size() - i);
      std::swap(candidates[i], candidates[j]);
      chosen.push_back(candidates[i]);
    }
  } else {
    // Huge candidate space: rejection sampling of distinct pairs. tau is
    // tiny relative to the space here, so collisions are rare.
    std::set<std::pair<int, UserSet>> seen;
    while (chosen.size() < config.tau) {
      const int owner = static_cast<int>(1 + rng.below(k));
      UserSet cache = 0;
      std::uint64_t pattern =
          rng.next() & ((std::uint64_t{1} << (k - 1)) - 1);
      for (int u = 1; u <= k; ++u) {
        if (u == owner) continue;
        if (pattern & 1) cache |= user_bit(u);
        pattern >>= 1;
      }
      if (seen.emplace(owner, cache).second)
        chosen.push_back(Subfile{owner, cache, 1});
    }
  }

  std::sort(chosen.begin(), chosen.end(), canonical_less);
  for (Subfile& s : chosen)
    s.size = rng.in_range(config.size_min, config.size_max);
  return make_instance(k, std::move(chosen));
}

// K subfiles W_{k, everyone-else}, all of size B: one big clique. Uncoded
// delivery pays K*B against the optimal single packet of B bits.
inline Instance adversarial_uncoded(int num_users, std::uint64_t size) {
  if (num_users < 2) throw std::invalid_argument("need at least 2 users");
  if (size < 1) throw std::invalid_argument("size must be >= 1");
  std::vector<Subfile> subfiles;
  for (int u = 1; u <= num_users; ++u)
    subfiles.push_back(
        Subfile{u, all_users(num_users) ^ user_bit(u), size});
  return make_instance(num_users, std::move(subfiles));
}

// The nested-cache family the subset-sweep greedy mishandles: l* = (K+1)/2
// big subfiles W_{i, [K-i+1]\{i}} that form one feasible clique, plus cheap
// W_{k, everyone-else} for the remaining users. gcm pays B*l* where B + eps
// suffices.
inline Instance adversarial_gcm(int num_users, std::uint64_t big,
                                std::uint64_t eps) {
  if (num_users < 3) throw std::invalid_argument("need at least 3 users");
  if (eps < 1 || eps >= big)
    throw std::invalid_argument("need 1 <= eps < big");
  const int lstar = (num_users + 1) / 2;
  std::vector<Subfile> subfiles;
  for (int i = 1; i <= lstar; ++i)
    subfiles.push_back(
        Subfile{i, all_users(num_users - i + 1) ^ user_bit(i), big});
  for (int k = lstar + 1; k <= num_users; ++k)
    subfiles.push_back(
        Subfile{k, all_users(num_users) ^ user_bit(k), eps});
  return make_instance(num_users, std::move(subfiles));
}

struct GccmAdversary {
  Instance instance;
  std::vector<Subfile> vertex_order;  // the order that traps the partition
};

// The ring family that traps the order-driven clique partition: expensive
// W_{k, everyone-else} plus an eps-ring W_k cached only at k+1. Visiting the
// ring first glues every cheap subfile to an expensive one (K packets of B
// bits); the optimum sends the ring as singletons plus one B-bit clique.
inline GccmAdversary adversarial_gccm(int num_users, std::uint64_t big,
                                      std::uint64_t eps) {
  if (num_users < 3) throw std::invalid_argument("need at least 3 users");
  if (eps < 1 || eps >= big)
    throw std::invalid_argument("need 1 <= eps < big");
  std::vector<Subfile> ring;
  std::vector<Subfile> full;
  for (int k = 1; k <= num_users; ++k) {
    const int next = k == num_users ? 1 : k + 1;
    ring.push_back(Subfile{k, user_bit(next), eps});
    full.push_back(Subfile{k, all_users(num_users) ^ user_bit(k), big});
  }
  std::vector<Subfile> order = ring;
  order.insert(order.end(), full.begin(), full.end());
  std::vector<Subfile> subfiles = std::move(ring);
  subfiles.insert(subfiles.end(), full.begin(), full.end());
  return GccmAdversary{make_instance(num_users, std::move(subfiles)),
                       std::move(order)};
}

// Any simple undirected graph as a unit-size instance: vertex k becomes
// W_{k, neighbors(k)}, so feasible packets are exactly the graph's cliques
// and the optimal total counts a minimum clique cover.
inline Instance from_graph(int num_vertices,
                           std::span<const std::pair<int, int>> edges) {
  if (num_vertices < 1 || num_vertices > kMaxUsers)
    throw std::invalid_argument("vertex count must be in [1, 63]");
  std::vector<UserSet> adjacent(static_cast<std::size_t>(num_vertices) + 1, 0);
  for (const auto& [a, b] : edges) {
    if (a < 1 || a > num_vertices || b < 1 || b > num_vertices || a == b)
      throw std::invalid_argument("edge endpoints must be distinct vertices");
    adjacent[static_cast<std::size_t>(a)] |= user_bit(b);
    adjacent[static_cast<std::size_t>(b)] |= user_bit(a);
  }
  std::vector<Subfile> subfiles;
  for (int v = 1; v <= num_vertices; ++v)
    subfiles.push_back(Subfile{v, adjacent[static_cast<std::size_t>(v)], 1});
  return make_instance(num_vertices, std::move(subfiles));
}

}  // namespace cliquecast
