#pragma once

// Bit-exact end-to-end check of a delivery schedule: materialize random
// subfile contents, form each packet as the zero-padded XOR of its members,
// and replay every user's decode from cache plus transmissions. This grounds
// the feasibility predicate in actual bits instead of trusting it.
//
// Padding convention: members align at bit 0, shorter members are padded at
// the tail. Bit i of the packet is the XOR of bit i of every member longer
// than i.

#include <cstdint>
#include <string>
#include <vector>

#include "cliquecast/core.hpp"
#include "cliquecast/rng.hpp"

namespace cliquecast {

struct BitString {
  std::uint64_t bits = 0;
  std::vector<std::uint64_t> words;  // ceil(bits/64), unused high bits zero

  friend bool operator==(const BitString&, const BitString&) = default;
};

inline BitString zero_bits(std::uint64_t nbits) {
  BitString out;
  out.bits = nbits;
  out.words.assign(static_cast<std::size_t>((nbits + 63) / 64), 0);
  return out;
}

inline BitString random_bits(std::uint64_t nbits, SplitMix64& rng) {
  BitString out = zero_bits(nbits);
  for (std::uint64_t& w : out.words) w = rng.next();
  if (nbits % 64 != 0 && !out.words.empty())
    out.words.back() &= (~std::uint64_t{0}) >> (64 - nbits % 64);
  return out;
}

// acc ^= src, src zero padded up to acc's length. src must not be longer.
inline void xor_into(BitString& acc, const BitString& src) {
  assert(src.bits <= acc.bits);
  for (std::size_t w = 0; w < src.words.size(); ++w) acc.words[w] ^= src.words[w];
}

inline bool prefix_equal(const BitString& a, const BitString& b,
                         std::uint64_t nbits) {
  assert(nbits <= a.bits && nbits <= b.bits);
  const std::size_t full = static_cast<std::size_t>(nbits / 64);
  for (std::size_t w = 0; w < full; ++w)
    if (a.words[w] != b.words[w]) return false;
  if (nbits % 64 != 0) {
    const std::uint64_t mask = (~std::uint64_t{0}) >> (64 - nbits % 64);
    if ((a.words[full] & mask) != (b.words[full] & mask)) return false;
  }
  return true;
}

// Subfile contents, parallel to instance.subfiles.
struct BitStore {
  std::vector<BitString> contents;
};

// Pseudorandom contents per subfile, deterministic in the seed. Subfile i
// draws from substream(seed, i) over the canonical order.
inline BitStore materialize(const Instance& instance, std::uint64_t seed) {
  BitStore store;
  store.contents.reserve(instance.subfiles.size());
  for (std::size_t i = 0; i < instance.subfiles.size(); ++i) {
    SplitMix64 rng = substream(seed, i);
    store.contents.push_back(random_bits(instance.subfiles[i].size, rng));
  }
  return store;
}

// The wire image of one packet: zero-padded XOR of its members' contents,
// exactly packet_size bits. Members must be instance subfiles.
inline BitString transmit(const Packet& packet, const Instance& instance,
                          const BitStore& store) {
  BitString out = zero_bits(packet_size(packet));
  for (const Subfile& s : packet.members) {
    const std::ptrdiff_t idx = find_subfile(instance.subfiles, s);
    if (idx < 0)
      throw std::invalid_argument("transmit: unknown subfile " + describe(s));
    xor_into(out, store.contents[static_cast<std::size_t>(idx)]);
  }
  return out;
}

struct DecodeReport {
  bool ok = true;
  std::string detail;  // first failure when !ok
};

// Replay every user's decode: user k holds exactly the subfiles cached at k;
// to extract W_{k,A} from a packet it must cancel every other member out of
// its cache and match the first |W| bits against the materialized contents.
// Returns the first subfile nobody delivers. Infeasible packets simply fail
// to decode, so a sabotaged schedule reports false rather than crashing.
inline DecodeReport check_decode(const Instance& instance,
                                 const Schedule& schedule,
                                 std::uint64_t seed) {
  const BitStore store = materialize(instance, seed);

  std::vector<BitString> wire;
  std::vector<char> sendable;
  wire.reserve(schedule.packets.size());
  for (const Packet& p : schedule.packets) {
    bool known = !p.empty();
    for (const Subfile& s : p.members)
      if (find_subfile(instance.subfiles, s) < 0) known = false;
    sendable.push_back(known ? 1 : 0);
    wire.push_back(known ? transmit(p, instance, store) : BitString{});
  }

  for (std::size_t i = 0; i < instance.subfiles.size(); ++i) {
    const Subfile& want = instance.subfiles[i];
    const int user = want.owner;
    bool decoded = false;
    for (std::size_t pi = 0; pi < schedule.packets.size() && !decoded; ++pi) {
      if (!sendable[pi]) continue;
      const Packet& p = schedule.packets[pi];
      bool in_packet = false;
      bool cancellable = true;
      BitString acc = wire[pi];
      for (const Subfile& member : p.members) {
        if (same_key(member, want) && member.size == want.size) {
          in_packet = true;
          continue;
        }
        if (!contains(member.cache_set, user)) {
          cancellable = false;  // user lacks this member, packet is opaque
          break;
        }
        const std::ptrdiff_t idx = find_subfile(instance.subfiles, member);
        xor_into(acc, store.contents[static_cast<std::size_t>(idx)]);
      }
      if (!in_packet || !cancellable) continue;
      decoded = prefix_equal(acc, store.contents[i], want.size);
    }
    if (!decoded)
      return {false,
              "user " + std::to_string(user) + " cannot decode " +
                  describe(want)};
  }
  return {};
}

inline bool verify_decode(const Instance& instance, const Schedule& schedule,
                          std::uint64_t seed) {
  return check_decode(instance, schedule, seed).ok;
}

}  // namespace cliquecast
