#pragma once

// Explicit enumeration of the clique space and the two greedy covers that
// work over it.
//
// Every clique serves exactly one nonempty user group T: one member per
// owner in T, none for anyone else. The cliques serving T are exactly the
// cartesian product of the per-owner candidate lists
//   L(j, T) = { W_{j,A} : T \ {j} subset of A },
// so the groups partition the clique space and can be enumerated without a
// generic clique search. Enumeration deliberately covers non-maximal cliques
// too; optimal covers routinely use them.

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "cliquecast/core.hpp"

namespace cliquecast {

inline constexpr std::uint64_t kDefaultCliqueCap = 10'000'000;

// Thrown when the projected clique count exceeds the configured cap. The
// enumeration path is the desk-scale oracle route; callers that outgrow it
// should switch to sacm().
class ResourceCapExceeded : public std::runtime_error {
 public:
  ResourceCapExceeded(std::string what, std::uint64_t cap)
      : std::runtime_error(std::move(what)), cap_(cap) {}
  std::uint64_t cap() const { return cap_; }

 private:
  std::uint64_t cap_;
};

struct CliqueGroup {
  UserSet users = 0;            // the group T
  std::vector<Packet> cliques;  // all cliques serving exactly T
};

struct CliqueFamily {
  std::vector<CliqueGroup> groups;  // nonempty groups, T ascending in lex order
  std::uint64_t total_count = 0;
};

// Candidates for owner j inside group T: j's subfiles cached at everyone
// else in T. Empty means no clique serves T.
inline std::vector<Subfile> build_group_candidates(
    std::span<const Subfile> subfiles, UserSet group, int j) {
  if (!contains(group, j))
    throw std::invalid_argument("candidate owner not in group");
  const UserSet need = group ^ user_bit(j);
  std::vector<Subfile> out;
  for (const Subfile& s : subfiles) {
    if (s.owner == j && is_subset(need, s.cache_set)) out.push_back(s);
  }
  return out;
}

// All cliques serving exactly `group`: the cartesian product of the
// per-owner candidate lists, empty if any list is empty. Emitted packets are
// feasible by construction.
inline std::vector<Packet> enumerate_group(std::span<const Subfile> subfiles,
                                           UserSet group) {
  if (group == 0) throw std::invalid_argument("group must be nonempty");
  const std::vector<int> members = users_of(group);
  std::vector<std::vector<Subfile>> lists;
  lists.reserve(members.size());
  for (int j : members) {
    lists.push_back(build_group_candidates(subfiles, group, j));
    if (lists.back().empty()) return {};
  }
  std::vector<Packet> out;
  std::vector<std::size_t> pick(lists.size(), 0);
  for (;;) {
    Packet p;
    p.members.reserve(lists.size());
    for (std::size_t i = 0; i < lists.size(); ++i)
      p.members.push_back(lists[i][pick[i]]);  // owner-ascending == canonical
    assert(is_feasible(p));
    out.push_back(std::move(p));
    std::size_t i = lists.size();
    while (i > 0) {
      --i;
      if (++pick[i] < lists[i].size()) break;
      pick[i] = 0;
      if (i == 0) return out;
    }
  }
}

namespace detail {

// Visit every nonempty T over `owners` in lex order (e.g. {1},{1,2},{1,2,3},
// {1,3},{2},...), pruning a branch when no clique can serve T or any of its
// supersets. Visitor returns false to prune below the visited group.
template <typename Visitor>
inline void for_each_group(const std::vector<int>& owners, Visitor&& visit) {
  std::vector<std::pair<UserSet, std::size_t>> stack;  // (group, next index)
  for (std::size_t i = 0; i < owners.size(); ++i) {
    UserSet group = user_bit(owners[i]);
    if (!visit(group)) continue;
    stack.clear();
    stack.emplace_back(group, i + 1);
    while (!stack.empty()) {
      auto& [cur, next] = stack.back();
      if (next >= owners.size()) {
        stack.pop_back();
        continue;
      }
      const UserSet extended = cur | user_bit(owners[next]);
      ++next;
      if (visit(extended)) stack.emplace_back(extended, stack.back().second);
    }
  }
}

}  // namespace detail

// The whole clique space, grouped by served user set. Counts first, then
// materializes; refuses with ResourceCapExceeded once the projected count
// passes `cap` so a hopeless enumeration never eats the machine.
inline CliqueFamily enumerate_all_cliques(
    std::span<const Subfile> subfiles,
    std::uint64_t cap = kDefaultCliqueCap) {
  UserSet owners_mask = 0;
  for (const Subfile& s : subfiles) owners_mask |= user_bit(s.owner);
  const std::vector<int> owners = users_of(owners_mask);

  std::uint64_t projected = 0;
  auto count_group = [&](UserSet group) {
    std::uint64_t product = 1;
    for (int j : users_of(group)) {
      const UserSet need = group ^ user_bit(j);
      std::uint64_t n = 0;
      for (const Subfile& s : subfiles)
        if (s.owner == j && is_subset(need, s.cache_set)) ++n;
      if (n == 0) return false;  // supersets of this group are empty too
      if (product > cap / n)
        throw ResourceCapExceeded("clique space exceeds cap", cap);
      product *= n;
    }
    projected += product;
    if (projected > cap)
      throw ResourceCapExceeded("clique space exceeds cap", cap);
    return true;
  };
  detail::for_each_group(owners, count_group);

  CliqueFamily family;
  family.total_count = projected;
  auto materialize = [&](UserSet group) {
    std::vector<Packet> cliques = enumerate_group(subfiles, group);
    if (cliques.empty()) return false;
    family.groups.push_back(CliqueGroup{group, std::move(cliques)});
    return true;
  };
  detail::for_each_group(owners, materialize);
  return family;
}

namespace detail {

// Preference used by the enumeration-side optimizer and both greedy covers:
// higher |P|/size first, then more members, then canonically smaller member
// list. Ratios compare exactly by cross multiplication.
inline bool better_clique(std::size_t card_a, std::uint64_t size_a,
                          const Packet& a, std::size_t card_b,
                          std::uint64_t size_b, const Packet& b) {
  const unsigned __int128 lhs =
      static_cast<unsigned __int128>(card_a) * size_b;
  const unsigned __int128 rhs =
      static_cast<unsigned __int128>(card_b) * size_a;
  if (lhs != rhs) return lhs > rhs;
  if (card_a != card_b) return card_a > card_b;
  return packet_less(a, b);
}

}  // namespace detail

// The clique maximizing members-per-bit over the whole family.
inline const Packet& best_ratio_clique(const CliqueFamily& family) {
  const Packet* best = nullptr;
  std::uint64_t best_size = 0;
  for (const CliqueGroup& group : family.groups) {
    for (const Packet& p : group.cliques) {
      const std::uint64_t size = packet_size(p);
      if (best == nullptr ||
          detail::better_clique(p.size(), size, p, best->size(), best_size,
                                *best)) {
        best = &p;
        best_size = size;
      }
    }
  }
  if (best == nullptr) throw std::domain_error("empty clique family");
  return *best;
}

namespace detail {

inline bool packets_intersect(const Packet& a, const Packet& b) {
  auto ia = a.members.begin();
  auto ib = b.members.begin();
  while (ia != a.members.end() && ib != b.members.end()) {
    if (canonical_less(*ia, *ib))
      ++ia;
    else if (canonical_less(*ib, *ia))
      ++ib;
    else
      return true;
  }
  return false;
}

}  // namespace detail

// Greedy cover over the enumerated clique space: repeatedly take the best
// members-per-bit clique, drop everything it intersects. Because packet
// difference stays feasible, the surviving pool is exactly the clique space
// of the uncovered remainder, so no re-enumeration is needed.
inline Schedule greedy_cover(const Instance& instance,
                             std::uint64_t cap = kDefaultCliqueCap) {
  const CliqueFamily family = enumerate_all_cliques(instance.subfiles, cap);
  std::vector<Packet> pool;
  pool.reserve(static_cast<std::size_t>(family.total_count));
  for (const CliqueGroup& g : family.groups)
    for (const Packet& p : g.cliques) pool.push_back(p);

  std::vector<Subfile> remaining = instance.subfiles;
  Schedule schedule;
  while (!remaining.empty()) {
    std::size_t best = pool.size();
    std::uint64_t best_size = 0;
    for (std::size_t i = 0; i < pool.size(); ++i) {
      const std::uint64_t size = packet_size(pool[i]);
      if (best == pool.size() ||
          detail::better_clique(pool[i].size(), size, pool[i],
                                pool[best].size(), best_size, pool[best])) {
        best = i;
        best_size = size;
      }
    }
    Packet pick = pool[best];
    remaining = subtract_covered(remaining, pick);
    std::erase_if(pool, [&](const Packet& p) {
      return detail::packets_intersect(p, pick);
    });
    append_packet(schedule, std::move(pick));
  }
  return schedule;
}

// Classic greedy weighted set cover over the same clique space: residuals
// shrink as elements get covered, but each candidate keeps its original
// weight and is emitted at its original identity. With the shared
// tie-breaking this selects the same packet sizes as greedy_cover; it exists
// as the reference the faster covers are validated against.
inline Schedule chvatal_cover(const Instance& instance,
                              std::uint64_t cap = kDefaultCliqueCap) {
  const CliqueFamily family = enumerate_all_cliques(instance.subfiles, cap);
  std::vector<Packet> originals;
  originals.reserve(static_cast<std::size_t>(family.total_count));
  for (const CliqueGroup& g : family.groups)
    for (const Packet& p : g.cliques) originals.push_back(p);

  std::vector<Packet> residuals = originals;
  std::vector<std::uint64_t> costs;
  costs.reserve(originals.size());
  for (const Packet& p : originals) costs.push_back(packet_size(p));

  std::vector<Subfile> remaining = instance.subfiles;
  Schedule schedule;
  while (!remaining.empty()) {
    std::size_t best = originals.size();
    for (std::size_t k = 0; k < originals.size(); ++k) {
      if (residuals[k].empty()) continue;
      if (best == originals.size()) {
        best = k;
        continue;
      }
      const std::size_t ca = residuals[k].size();
      const std::size_t cb = residuals[best].size();
      const unsigned __int128 lhs =
          static_cast<unsigned __int128>(ca) * costs[best];
      const unsigned __int128 rhs =
          static_cast<unsigned __int128>(cb) * costs[k];
      bool take = false;
      if (lhs != rhs) {
        take = lhs > rhs;
      } else if (ca != cb) {
        take = ca > cb;
      } else if (residuals[k] != residuals[best]) {
        take = packet_less(residuals[k], residuals[best]);
      } else {
        take = packet_less(originals[k], originals[best]);
      }
      if (take) best = k;
    }
    const Packet pick = originals[best];
    remaining = subtract_covered(remaining, pick);
    for (Packet& r : residuals) r = packet_subtract(r, pick);
    append_packet(schedule, pick);
  }
  return schedule;
}

}  // namespace cliquecast
