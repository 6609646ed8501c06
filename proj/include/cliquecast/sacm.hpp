#pragma once

// Size-aware coded multicast: the greedy cover that never enumerates
// cliques. Within a user group T every clique has |T| members, so the best
// members-per-bit clique for T is built from the per-owner minimum-size
// candidates; scanning the groups replaces scanning the clique space and the
// selected packet has exactly the best enumerated ratio.
//
// Two interchangeable scans compute the per-owner minima:
//   dense  - per-owner tables over compressed group masks, filled by a
//            superset-min transform; O((K + |E|) * 2^|M|)-ish per call and
//            the default whenever |M| <= 16.
//   direct - per-group rescans of the owner lists; no tables, works for any
//            K, the fallback above the dense limit.
// Both produce identical packets (shared tie-breaking); minima are rebuilt
// from scratch every iteration, only scratch buffers are reused.

#include <array>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "cliquecast/core.hpp"

namespace cliquecast {

enum class GroupScan { automatic, dense, direct };

inline constexpr int kDenseScanLimit = 16;

namespace detail {

struct MinEntry {
  std::uint64_t size = ~std::uint64_t{0};  // sentinel: no candidate
  UserSet cache_set = 0;

  bool valid() const { return size != ~std::uint64_t{0}; }
};

// Minimum by size, then by numeric cache mask; the fixed representative
// tie-break.
inline void min_assign(MinEntry& into, std::uint64_t size, UserSet cache) {
  if (size < into.size || (size == into.size && cache < into.cache_set)) {
    into.size = size;
    into.cache_set = cache;
  }
}

// Preference across groups: higher |T|/cost first, then larger |T|, then
// lex-smaller T. Exact cross-multiplied comparison, never floating point.
inline bool better_group(int card_a, std::uint64_t cost_a, UserSet group_a,
                         int card_b, std::uint64_t cost_b, UserSet group_b) {
  const unsigned __int128 lhs =
      static_cast<unsigned __int128>(static_cast<std::uint64_t>(card_a)) *
      cost_b;
  const unsigned __int128 rhs =
      static_cast<unsigned __int128>(static_cast<std::uint64_t>(card_b)) *
      cost_a;
  if (lhs != rhs) return lhs > rhs;
  if (card_a != card_b) return card_a > card_b;
  return lex_less(group_a, group_b);
}

}  // namespace detail

// Scratch reused across best_ratio_packet calls; cheap to default-construct.
class GroupScanWorkspace {
 public:
  std::vector<detail::MinEntry> tables;
  std::array<int, kMaxUsers + 1> slot_of{};
};

// The best members-per-bit packet over every user group of `remaining`.
// Groups with an ownerless slot are skipped (no clique can serve them).
inline Packet best_ratio_packet(std::span<const Subfile> remaining,
                                GroupScanWorkspace& ws,
                                GroupScan scan = GroupScan::automatic) {
  if (remaining.empty())
    throw std::invalid_argument("best_ratio_packet on empty subfile set");

  UserSet owners_mask = 0;
  for (const Subfile& s : remaining) owners_mask |= user_bit(s.owner);
  const std::vector<int> owners = users_of(owners_mask);
  const int m = static_cast<int>(owners.size());

  if (scan == GroupScan::automatic)
    scan = m <= kDenseScanLimit ? GroupScan::dense : GroupScan::direct;

  bool found = false;
  int best_card = 0;
  std::uint64_t best_cost = 0;
  UserSet best_group = 0;
  Packet best;

  if (scan == GroupScan::dense) {
    if (m > kDenseScanLimit)
      throw std::invalid_argument("dense scan beyond its owner limit");
    const std::size_t width = std::size_t{1} << m;
    ws.tables.assign(static_cast<std::size_t>(m) * width,
                     detail::MinEntry{});
    for (int i = 0; i < m; ++i) ws.slot_of[owners[i]] = i;

    for (const Subfile& s : remaining) {
      const int slot = ws.slot_of[s.owner];
      std::size_t key = 0;
      UserSet in_m = s.cache_set & owners_mask;
      while (in_m != 0) {
        const int u = std::countr_zero(in_m) + 1;
        key |= std::size_t{1} << ws.slot_of[u];
        in_m &= in_m - 1;
      }
      detail::min_assign(ws.tables[static_cast<std::size_t>(slot) * width + key],
                         s.size, s.cache_set);
    }
    // Superset-min: after the transform, entry[S] is the best candidate whose
    // cached group covers S.
    for (int slot = 0; slot < m; ++slot) {
      detail::MinEntry* table = ws.tables.data() +
                                static_cast<std::size_t>(slot) * width;
      for (int b = 0; b < m; ++b) {
        const std::size_t bit = std::size_t{1} << b;
        for (std::size_t s = 0; s < width; ++s) {
          if (s & bit) continue;
          const detail::MinEntry& up = table[s | bit];
          if (up.valid()) detail::min_assign(table[s], up.size, up.cache_set);
        }
      }
    }

    for (std::size_t t = 1; t < width; ++t) {
      std::uint64_t cost = 0;
      bool complete = true;
      for (std::size_t rest = t; rest != 0; rest &= rest - 1) {
        const int slot = std::countr_zero(rest);
        const detail::MinEntry& e =
            ws.tables[static_cast<std::size_t>(slot) * width +
                      (t ^ (std::size_t{1} << slot))];
        if (!e.valid()) {
          complete = false;
          break;
        }
        if (e.size > cost) cost = e.size;
      }
      if (!complete) continue;
      const int card = std::popcount(t);
      UserSet group = 0;
      for (std::size_t rest = t; rest != 0; rest &= rest - 1)
        group |= user_bit(owners[std::countr_zero(rest)]);
      if (!found || detail::better_group(card, cost, group, best_card,
                                         best_cost, best_group)) {
        found = true;
        best_card = card;
        best_cost = cost;
        best_group = group;
      }
    }
    if (found) {
      best.members.reserve(static_cast<std::size_t>(best_card));
      for (int slot = 0; slot < m; ++slot) {
        if (!contains(best_group, owners[slot])) continue;
        std::size_t key = 0;
        UserSet in_m = best_group & owners_mask & ~user_bit(owners[slot]);
        while (in_m != 0) {
          const int u = std::countr_zero(in_m) + 1;
          key |= std::size_t{1} << ws.slot_of[u];
          in_m &= in_m - 1;
        }
        const detail::MinEntry& e =
            ws.tables[static_cast<std::size_t>(slot) * width + key];
        best.members.push_back(Subfile{owners[slot], e.cache_set, e.size});
      }
    }
  } else {
    // remaining is canonically sorted, so each owner's subfiles form one run
    std::vector<std::pair<std::size_t, std::size_t>> runs(
        static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) ws.slot_of[owners[i]] = i;
    std::size_t pos = 0;
    while (pos < remaining.size()) {
      std::size_t end = pos;
      while (end < remaining.size() &&
             remaining[end].owner == remaining[pos].owner)
        ++end;
      runs[static_cast<std::size_t>(ws.slot_of[remaining[pos].owner])] = {pos,
                                                                          end};
      pos = end;
    }
    std::vector<detail::MinEntry> picks(static_cast<std::size_t>(m));
    std::vector<detail::MinEntry> best_picks;
    for (std::uint64_t t = 1; t < (std::uint64_t{1} << m); ++t) {
      UserSet group = 0;
      for (std::uint64_t rest = t; rest != 0; rest &= rest - 1)
        group |= user_bit(owners[std::countr_zero(rest)]);
      std::uint64_t cost = 0;
      bool complete = true;
      for (std::uint64_t rest = t; rest != 0; rest &= rest - 1) {
        const int slot = std::countr_zero(rest);
        const UserSet need = group ^ user_bit(owners[slot]);
        detail::MinEntry e;
        const auto [lo, hi] = runs[static_cast<std::size_t>(slot)];
        for (std::size_t i = lo; i < hi; ++i) {
          if (is_subset(need, remaining[i].cache_set))
            detail::min_assign(e, remaining[i].size, remaining[i].cache_set);
        }
        if (!e.valid()) {
          complete = false;
          break;
        }
        picks[static_cast<std::size_t>(slot)] = e;
        if (e.size > cost) cost = e.size;
      }
      if (!complete) continue;
      const int card = set_size(group);
      if (!found || detail::better_group(card, cost, group, best_card,
                                         best_cost, best_group)) {
        found = true;
        best_card = card;
        best_cost = cost;
        best_group = group;
        best_picks.assign(static_cast<std::size_t>(m), detail::MinEntry{});
        for (std::uint64_t rest = t; rest != 0; rest &= rest - 1)
          best_picks[static_cast<std::size_t>(std::countr_zero(rest))] =
              picks[static_cast<std::size_t>(std::countr_zero(rest))];
      }
    }
    if (found) {
      best.members.reserve(static_cast<std::size_t>(best_card));
      for (int slot = 0; slot < m; ++slot) {
        if (!contains(best_group, owners[slot])) continue;
        const detail::MinEntry& e = best_picks[static_cast<std::size_t>(slot)];
        best.members.push_back(Subfile{owners[slot], e.cache_set, e.size});
      }
    }
  }

  // Singleton groups always qualify, so a nonempty input always yields one.
  assert(found);
  return best;
}

inline Packet best_ratio_packet(std::span<const Subfile> remaining,
                                GroupScan scan = GroupScan::automatic) {
  GroupScanWorkspace ws;
  return best_ratio_packet(remaining, ws, scan);
}

// The full cover: pick the best group packet, remove what it delivers,
// repeat. Terminates in at most |subfiles| rounds and never beats itself
// with padding: each round costs the max of the subfiles it retires, which
// is at most their sum.
inline Schedule sacm(const Instance& instance,
                     GroupScan scan = GroupScan::automatic) {
  std::vector<Subfile> remaining = instance.subfiles;
  GroupScanWorkspace ws;
  Schedule schedule;
  while (!remaining.empty()) {
    Packet pick = best_ratio_packet(remaining, ws, scan);
    remaining = subtract_covered(remaining, pick);
    append_packet(schedule, std::move(pick));
  }
  return schedule;
}

}  // namespace cliquecast
