#pragma once

// Core domain types for clique cover delivery: subfiles, demand instances,
// XOR packets and delivery schedules, plus the feasibility and size
// primitives every algorithm builds on.
//
// A subfile W_{k,A} is the part of user k's requested file that is cached at
// exactly the user set A. A packet (a clique of the side-information graph)
// is a set of subfiles, at most one per owner; it can be sent as a single
// zero-padded XOR iff every member's owner caches every other member. A
// schedule is a sequence of such packets covering the whole demand, each
// packet costing the size of its largest member.

#include <algorithm>
#include <cassert>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "cliquecast/masks.hpp"

namespace cliquecast {

struct Subfile {
  int owner = 0;           // 1-based user index
  UserSet cache_set = 0;   // users that hold this subfile; never the owner
  std::uint64_t size = 0;  // bits, >= 1

  friend bool operator==(const Subfile&, const Subfile&) = default;
};

// (owner, cache_set) identifies a subfile within an instance.
inline bool same_key(const Subfile& a, const Subfile& b) {
  return a.owner == b.owner && a.cache_set == b.cache_set;
}

// Canonical order: owner ascending, then cache set as an ascending user list
// compared lexicographically. Every deterministic tie-break downstream leans
// on this order.
inline bool canonical_less(const Subfile& a, const Subfile& b) {
  if (a.owner != b.owner) return a.owner < b.owner;
  return lex_less(a.cache_set, b.cache_set);
}

// A candidate XOR packet. Members are kept in canonical order; feasibility
// (Property 1 of the delivery scheme) is checked by is_feasible, not by the
// container.
struct Packet {
  std::vector<Subfile> members;

  bool empty() const { return members.empty(); }
  std::size_t size() const { return members.size(); }

  UserSet owners() const {
    UserSet m = 0;
    for (const Subfile& s : members) m |= user_bit(s.owner);
    return m;
  }

  friend bool operator==(const Packet&, const Packet&) = default;
};

inline Packet make_packet(std::vector<Subfile> members) {
  std::sort(members.begin(), members.end(), canonical_less);
  for (std::size_t i = 1; i < members.size(); ++i) {
    if (same_key(members[i - 1], members[i]))
      throw std::invalid_argument("packet repeats a subfile");
  }
  return Packet{std::move(members)};
}

// Compare member lists lexicographically under the canonical subfile order.
inline bool packet_less(const Packet& a, const Packet& b) {
  return std::lexicographical_compare(a.members.begin(), a.members.end(),
                                      b.members.begin(), b.members.end(),
                                      canonical_less);
}

// The demand the server has to satisfy: K users plus the set of nonzero
// subfiles, all distinct in (owner, cache_set), canonically sorted.
struct Instance {
  int num_users = 0;
  std::vector<Subfile> subfiles;
};

inline Instance make_instance(int num_users, std::vector<Subfile> subfiles) {
  if (num_users < 1 || num_users > kMaxUsers)
    throw std::invalid_argument("num_users must be in [1, 63]");
  const UserSet everyone = all_users(num_users);
  for (const Subfile& s : subfiles) {
    if (s.owner < 1 || s.owner > num_users)
      throw std::invalid_argument("subfile owner out of range");
    if (!is_subset(s.cache_set, everyone))
      throw std::invalid_argument("cache set mentions an unknown user");
    if (contains(s.cache_set, s.owner))
      throw std::invalid_argument("subfile cached at its own requester");
    if (s.size < 1) throw std::invalid_argument("subfile size must be >= 1");
  }
  std::sort(subfiles.begin(), subfiles.end(), canonical_less);
  for (std::size_t i = 1; i < subfiles.size(); ++i) {
    if (same_key(subfiles[i - 1], subfiles[i]))
      throw std::invalid_argument("duplicate (owner, cache_set) subfile");
  }
  return Instance{num_users, std::move(subfiles)};
}

// Index of the subfile with this (owner, cache_set) in a canonically sorted
// span, or -1.
inline std::ptrdiff_t find_subfile(std::span<const Subfile> sorted,
                                   const Subfile& key) {
  auto it = std::lower_bound(sorted.begin(), sorted.end(), key, canonical_less);
  if (it != sorted.end() && same_key(*it, key)) return it - sorted.begin();
  return -1;
}

// Property 1: the packet decodes iff each member's owner finds every other
// member in its cache, i.e. pairwise each owner lies in the other member's
// cache set. A packet with two members of one owner can never decode.
inline bool is_feasible(const Packet& packet) {
  UserSet owners = 0;
  for (const Subfile& s : packet.members) {
    const UserSet bit = user_bit(s.owner);
    if (owners & bit) return false;
    owners |= bit;
  }
  for (const Subfile& s : packet.members) {
    if (((owners ^ user_bit(s.owner)) & ~s.cache_set) != 0) return false;
  }
  return true;
}

// Bits on the wire for one packet: the largest member, everything shorter is
// zero padded before the XOR.
inline std::uint64_t packet_size(const Packet& packet) {
  if (packet.empty()) throw std::domain_error("packet_size of empty packet");
  std::uint64_t bits = 0;
  for (const Subfile& s : packet.members) bits = std::max(bits, s.size);
  return bits;
}

// Members of p1 that are not in p2. A nonempty difference of feasible packets
// is itself feasible (subsets of cliques are cliques).
inline Packet packet_subtract(const Packet& p1, const Packet& p2) {
  Packet out;
  out.members.reserve(p1.members.size());
  std::set_difference(p1.members.begin(), p1.members.end(), p2.members.begin(),
                      p2.members.end(), std::back_inserter(out.members),
                      canonical_less);
  assert(out.empty() || !is_feasible(p1) || is_feasible(out));
  return out;
}

// Remove a packet's members from a canonically sorted subfile set.
inline std::vector<Subfile> subtract_covered(std::span<const Subfile> set,
                                             const Packet& packet) {
  std::vector<Subfile> out;
  out.reserve(set.size());
  std::set_difference(set.begin(), set.end(), packet.members.begin(),
                      packet.members.end(), std::back_inserter(out),
                      canonical_less);
  return out;
}

struct Schedule {
  std::vector<Packet> packets;
  std::uint64_t total_bits = 0;
};

inline Schedule make_schedule(std::vector<Packet> packets) {
  Schedule s;
  s.packets = std::move(packets);
  for (const Packet& p : s.packets) s.total_bits += packet_size(p);
  return s;
}

inline void append_packet(Schedule& schedule, Packet packet) {
  schedule.total_bits += packet_size(packet);
  schedule.packets.push_back(std::move(packet));
}

struct ScheduleCheck {
  bool ok = true;
  std::string reason;
};

inline std::string describe(const Subfile& s) {
  std::string out = "W(" + std::to_string(s.owner) + ",{";
  bool first = true;
  for (int u : users_of(s.cache_set)) {
    if (!first) out += ",";
    out += std::to_string(u);
    first = false;
  }
  out += "})";
  return out;
}

// A schedule is valid for an instance iff every packet is a feasible clique
// of known instance subfiles, their union covers the whole demand, and the
// recorded total matches the recomputed one. Reports the first violation.
inline ScheduleCheck check_schedule(const Instance& instance,
                                    const Schedule& schedule) {
  std::vector<char> covered(instance.subfiles.size(), 0);
  std::uint64_t total = 0;
  for (std::size_t i = 0; i < schedule.packets.size(); ++i) {
    const Packet& p = schedule.packets[i];
    if (p.empty())
      return {false, "packet " + std::to_string(i) + " is empty"};
    if (!is_feasible(p))
      return {false, "packet " + std::to_string(i) + " is not feasible"};
    for (const Subfile& s : p.members) {
      const std::ptrdiff_t idx = find_subfile(instance.subfiles, s);
      if (idx < 0 || instance.subfiles[static_cast<std::size_t>(idx)].size !=
                         s.size)
        return {false, "packet " + std::to_string(i) + " member " +
                           describe(s) + " is not an instance subfile"};
      covered[static_cast<std::size_t>(idx)] = 1;
    }
    total += packet_size(p);
  }
  for (std::size_t e = 0; e < covered.size(); ++e) {
    if (!covered[e])
      return {false, describe(instance.subfiles[e]) + " is never covered"};
  }
  if (total != schedule.total_bits)
    return {false, "total_bits " + std::to_string(schedule.total_bits) +
                       " != recomputed " + std::to_string(total)};
  return {};
}

inline bool validate_schedule(const Instance& instance,
                              const Schedule& schedule) {
  return check_schedule(instance, schedule).ok;
}

}  // namespace cliquecast
