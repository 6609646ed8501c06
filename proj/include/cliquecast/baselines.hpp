#pragma once

// The three published delivery schemes the size-aware greedy is benchmarked
// against: plain uncoded delivery, the subset-sweep greedy coded multicast
// (the GCC/GCLC/HgLC family collapses onto it when every user requests a
// distinct file), and the order-driven graph-coloring clique partition.

#include <algorithm>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "cliquecast/core.hpp"

namespace cliquecast {

// One singleton packet per subfile; the baseline every coded scheme must
// beat.
inline Schedule uncoded(const Instance& instance) {
  Schedule schedule;
  schedule.packets.reserve(instance.subfiles.size());
  for (const Subfile& s : instance.subfiles)
    append_packet(schedule, Packet{{s}});
  return schedule;
}

// Greedy coded multicast: sweep the user groups S in decreasing size (ties:
// lex order) and send {W_{k, S\{k}} : k in S} whenever any of those subfiles
// exist. Every subfile is sent exactly at S = cache_set + owner, so the
// output partitions the demand; each packet is feasible by construction.
// Only groups that some subfile actually induces can be nonempty, so the
// sweep touches at most |W| distinct groups.
inline Schedule gcm(const Instance& instance) {
  std::vector<UserSet> groups;
  groups.reserve(instance.subfiles.size());
  for (const Subfile& s : instance.subfiles)
    groups.push_back(s.cache_set | user_bit(s.owner));
  std::sort(groups.begin(), groups.end(), [](UserSet a, UserSet b) {
    if (set_size(a) != set_size(b)) return set_size(a) > set_size(b);
    return lex_less(a, b);
  });
  groups.erase(std::unique(groups.begin(), groups.end()), groups.end());

  Schedule schedule;
  for (UserSet group : groups) {
    Packet p;
    for (int k : users_of(group)) {
      const Subfile key{k, group ^ user_bit(k), 0};
      const std::ptrdiff_t idx = find_subfile(instance.subfiles, key);
      if (idx >= 0)
        p.members.push_back(instance.subfiles[static_cast<std::size_t>(idx)]);
    }
    if (!p.empty()) append_packet(schedule, std::move(p));
  }
  return schedule;
}

// Graph-coloring coded multicast: greedy clique partition of the
// side-information graph in the given vertex order. Each uncovered vertex
// opens a clique, later uncovered vertices join when they stay feasible with
// every current member. The heuristic is order dependent by nature, so the
// order is an explicit argument; callers without an opinion pass the
// canonical subfile order.
inline Schedule gccm(const Instance& instance,
                     std::span<const Subfile> vertex_order) {
  std::vector<Subfile> check(vertex_order.begin(), vertex_order.end());
  std::sort(check.begin(), check.end(), canonical_less);
  if (check != instance.subfiles)
    throw std::invalid_argument(
        "vertex order is not a permutation of the instance subfiles");

  std::vector<char> done(vertex_order.size(), 0);
  Schedule schedule;
  for (std::size_t i = 0; i < vertex_order.size(); ++i) {
    if (done[i]) continue;
    Packet clique{{vertex_order[i]}};
    UserSet owners = user_bit(vertex_order[i].owner);
    UserSet common_cache = vertex_order[i].cache_set;
    done[i] = 1;
    for (std::size_t l = i + 1; l < vertex_order.size(); ++l) {
      if (done[l]) continue;
      const Subfile& v = vertex_order[l];
      if (contains(owners, v.owner)) continue;
      if (!contains(common_cache, v.owner)) continue;
      if (!is_subset(owners, v.cache_set)) continue;
      clique.members.push_back(v);
      owners |= user_bit(v.owner);
      common_cache &= v.cache_set;
      done[l] = 1;
    }
    std::sort(clique.members.begin(), clique.members.end(), canonical_less);
    assert(is_feasible(clique));
    append_packet(schedule, std::move(clique));
  }
  return schedule;
}

inline Schedule gccm(const Instance& instance) {
  return gccm(instance, instance.subfiles);
}

}  // namespace cliquecast
