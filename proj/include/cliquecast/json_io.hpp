#pragma once

// Canonical JSON formats.
//
// Instance:
//   {"num_users": K,
//    "subfiles": [{"owner": k, "cache_set": [sorted 1-based users],
//                  "size": bits}, ...]}
// Schedule:
//   {"packets": [[{"owner": k, "cache_set": [...]}, ...], ...],
//    "total_bits": n}
//
// Serialization is canonical (keys alphabetical, subfiles in canonical
// order, cache sets ascending), so parse -> dump round-trips byte
// identically. Sizes must be positive integers; fractional or duplicate
// subfiles are parse errors, not silent fixes.

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "cliquecast/core.hpp"

namespace cliquecast {

using nlohmann::json;

namespace detail {

inline json cache_set_to_json(UserSet set) {
  json arr = json::array();
  for (int u : users_of(set)) arr.push_back(u);
  return arr;
}

inline UserSet cache_set_from_json(const json& arr) {
  if (!arr.is_array()) throw std::runtime_error("cache_set must be an array");
  UserSet set = 0;
  for (const json& v : arr) {
    if (!v.is_number_integer())
      throw std::runtime_error("cache_set entries must be integers");
    const std::int64_t u = v.get<std::int64_t>();
    if (u < 1 || u > kMaxUsers)
      throw std::runtime_error("cache_set user out of range");
    if (contains(set, static_cast<int>(u)))
      throw std::runtime_error("cache_set repeats a user");
    set |= user_bit(static_cast<int>(u));
  }
  return set;
}

inline int owner_from_json(const json& object) {
  if (!object.contains("owner") || !object["owner"].is_number_integer())
    throw std::runtime_error("subfile needs an integer owner");
  const std::int64_t owner = object["owner"].get<std::int64_t>();
  if (owner < 1 || owner > kMaxUsers)
    throw std::runtime_error("owner out of range");
  return static_cast<int>(owner);
}

}  // namespace detail

inline json instance_to_json(const Instance& instance) {
  json subfiles = json::array();
  for (const Subfile& s : instance.subfiles) {
    subfiles.push_back(json{{"owner", s.owner},
                            {"cache_set", detail::cache_set_to_json(s.cache_set)},
                            {"size", s.size}});
  }
  return json{{"num_users", instance.num_users}, {"subfiles", subfiles}};
}

inline Instance instance_from_json(const json& j) {
  if (!j.is_object() || !j.contains("num_users") || !j.contains("subfiles"))
    throw std::runtime_error("instance needs num_users and subfiles");
  if (!j["num_users"].is_number_integer())
    throw std::runtime_error("num_users must be an integer");
  const std::int64_t num_users = j["num_users"].get<std::int64_t>();
  if (num_users < 1 || num_users > kMaxUsers)
    throw std::runtime_error("num_users must be in [1, 63]");
  if (!j["subfiles"].is_array() || j["subfiles"].empty())
    throw std::runtime_error("subfiles must be a nonempty array");
  std::vector<Subfile> subfiles;
  for (const json& s : j["subfiles"]) {
    if (!s.is_object()) throw std::runtime_error("subfile must be an object");
    if (!s.contains("size") || !s["size"].is_number_integer() ||
        s["size"].get<std::int64_t>() < 1)
      throw std::runtime_error("subfile size must be a positive integer");
    if (!s.contains("cache_set"))
      throw std::runtime_error("subfile needs a cache_set");
    subfiles.push_back(Subfile{detail::owner_from_json(s),
                               detail::cache_set_from_json(s["cache_set"]),
                               s["size"].get<std::uint64_t>()});
  }
  try {
    return make_instance(static_cast<int>(num_users), std::move(subfiles));
  } catch (const std::invalid_argument& e) {
    throw std::runtime_error(std::string("invalid instance: ") + e.what());
  }
}

inline json schedule_to_json(const Schedule& schedule) {
  json packets = json::array();
  for (const Packet& p : schedule.packets) {
    json members = json::array();
    for (const Subfile& s : p.members)
      members.push_back(json{
          {"owner", s.owner},
          {"cache_set", detail::cache_set_to_json(s.cache_set)}});
    packets.push_back(members);
  }
  return json{{"packets", packets}, {"total_bits", schedule.total_bits}};
}

// Members are (owner, cache_set) references resolved against the instance;
// unknown references are errors. The recorded total is kept as is and left
// for validate_schedule to cross-check.
inline Schedule schedule_from_json(const json& j, const Instance& instance) {
  if (!j.is_object() || !j.contains("packets") || !j.contains("total_bits"))
    throw std::runtime_error("schedule needs packets and total_bits");
  if (!j["packets"].is_array())
    throw std::runtime_error("packets must be an array");
  if (!j["total_bits"].is_number_integer() ||
      j["total_bits"].get<std::int64_t>() < 0)
    throw std::runtime_error("total_bits must be a nonnegative integer");
  Schedule schedule;
  schedule.total_bits = j["total_bits"].get<std::uint64_t>();
  for (const json& pj : j["packets"]) {
    if (!pj.is_array()) throw std::runtime_error("packet must be an array");
    std::vector<Subfile> members;
    for (const json& mj : pj) {
      if (!mj.is_object() || !mj.contains("cache_set"))
        throw std::runtime_error("packet member needs owner and cache_set");
      const Subfile key{detail::owner_from_json(mj),
                        detail::cache_set_from_json(mj["cache_set"]), 0};
      const std::ptrdiff_t idx = find_subfile(instance.subfiles, key);
      if (idx < 0)
        throw std::runtime_error("packet references unknown subfile " +
                                 describe(key));
      members.push_back(instance.subfiles[static_cast<std::size_t>(idx)]);
    }
    try {
      schedule.packets.push_back(make_packet(std::move(members)));
    } catch (const std::invalid_argument& e) {
      throw std::runtime_error(std::string("invalid packet: ") + e.what());
    }
  }
  return schedule;
}

// Order files for the clique-partition baseline: a JSON array of
// (owner, cache_set) references covering the instance exactly once.
inline json order_to_json(std::span<const Subfile> order) {
  json arr = json::array();
  for (const Subfile& s : order)
    arr.push_back(json{{"owner", s.owner},
                       {"cache_set", detail::cache_set_to_json(s.cache_set)}});
  return arr;
}

inline std::vector<Subfile> order_from_json(const json& j,
                                            const Instance& instance) {
  if (!j.is_array()) throw std::runtime_error("order must be an array");
  std::vector<Subfile> order;
  for (const json& mj : j) {
    if (!mj.is_object() || !mj.contains("cache_set"))
      throw std::runtime_error("order entry needs owner and cache_set");
    const Subfile key{detail::owner_from_json(mj),
                      detail::cache_set_from_json(mj["cache_set"]), 0};
    const std::ptrdiff_t idx = find_subfile(instance.subfiles, key);
    if (idx < 0)
      throw std::runtime_error("order references unknown subfile " +
                               describe(key));
    order.push_back(instance.subfiles[static_cast<std::size_t>(idx)]);
  }
  return order;
}

inline std::string dump_canonical(const json& j) { return j.dump(2) + "\n"; }

inline json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw std::runtime_error("cannot parse " + path + ": " + e.what());
  }
  return j;
}

inline void write_text_file(const std::string& path,
                            const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

}  // namespace cliquecast
