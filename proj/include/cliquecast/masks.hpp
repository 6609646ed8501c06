#pragma once

// User sets as 64-bit masks. User k (1-based) lives at bit k-1, so K <= 63
// keeps every set in one word and makes subset/membership tests O(1).

#include <bit>
#include <cstdint>
#include <vector>

namespace cliquecast {

using UserSet = std::uint64_t;

inline constexpr int kMaxUsers = 63;

inline constexpr UserSet user_bit(int user) { return UserSet{1} << (user - 1); }

inline constexpr bool contains(UserSet set, int user) {
  return (set >> (user - 1)) & UserSet{1};
}

inline constexpr bool is_subset(UserSet a, UserSet b) { return (a & ~b) == 0; }

inline constexpr UserSet all_users(int num_users) {
  return num_users == 0 ? 0 : ~UserSet{0} >> (64 - num_users);
}

inline constexpr int set_size(UserSet s) { return std::popcount(s); }

// Order as ascending user lists compared lexicographically. Not the numeric
// mask order: {1,2} sorts before {2} although 0b011 > 0b010.
inline constexpr bool lex_less(UserSet a, UserSet b) {
  while (a != 0 && b != 0) {
    const UserSet la = a & (~a + 1);
    const UserSet lb = b & (~b + 1);
    if (la != lb) return la < lb;
    a ^= la;
    b ^= lb;
  }
  return a == 0 && b != 0;
}

inline std::vector<int> users_of(UserSet s) {
  std::vector<int> out;
  out.reserve(static_cast<std::size_t>(set_size(s)));
  while (s != 0) {
    out.push_back(std::countr_zero(s) + 1);
    s &= s - 1;
  }
  return out;
}

inline UserSet set_of(const std::vector<int>& users) {
  UserSet s = 0;
  for (int u : users) s |= user_bit(u);
  return s;
}

}  // namespace cliquecast
