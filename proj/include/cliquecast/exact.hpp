#pragma once

// Exact minimum-bit clique cover at desk scale: branch and bound over the
// enumerated clique space, phrased as weighted set cover. One row per
// subfile, one column per clique, cost = packet size; a cover is a column
// selection whose union hits every row.

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "cliquecast/clique_space.hpp"
#include "cliquecast/core.hpp"
#include "cliquecast/sacm.hpp"

namespace cliquecast {

// Row sets sized at construction; tail bits stay zero.
class RowSet {
 public:
  RowSet() = default;
  explicit RowSet(std::size_t rows) : rows_(rows), words_((rows + 63) / 64, 0) {}

  std::size_t rows() const { return rows_; }

  void set(std::size_t i) { words_[i >> 6] |= std::uint64_t{1} << (i & 63); }

  bool test(std::size_t i) const {
    return (words_[i >> 6] >> (i & 63)) & std::uint64_t{1};
  }

  bool subset_of(const RowSet& other) const {
    for (std::size_t w = 0; w < words_.size(); ++w)
      if (words_[w] & ~other.words_[w]) return false;
    return true;
  }

  void merge(const RowSet& other) {
    for (std::size_t w = 0; w < words_.size(); ++w)
      words_[w] |= other.words_[w];
  }

  int count() const {
    int n = 0;
    for (std::uint64_t w : words_) n += std::popcount(w);
    return n;
  }

  std::uint64_t word0() const { return words_.empty() ? 0 : words_[0]; }

  // Lowest clear index, or rows() when everything is set.
  std::size_t first_clear() const {
    for (std::size_t w = 0; w < words_.size(); ++w) {
      const std::uint64_t inv = ~words_[w];
      if (inv != 0) {
        const std::size_t i = (w << 6) + std::countr_zero(inv);
        return i < rows_ ? i : rows_;
      }
    }
    return rows_;
  }

  friend bool operator==(const RowSet&, const RowSet&) = default;

 private:
  std::size_t rows_ = 0;
  std::vector<std::uint64_t> words_;
};

struct CoverProblem {
  std::vector<Subfile> elements;   // rows, canonical order
  std::vector<Packet> sets;        // columns
  std::vector<std::uint64_t> costs;
  std::vector<RowSet> incidence;   // per column
  std::uint64_t enumerated_columns = 0;  // before dominance pruning
};

// Above this many columns the quadratic dominance pass is skipped; pruning
// is an optimization, never a correctness requirement.
inline constexpr std::size_t kDominancePruneLimit = 50'000;

// One column per enumerated clique, dominated columns dropped. A column is
// dominated when another covers at least as much for at most the cost;
// exact ties keep the canonically smaller packet, so at least one optimal
// cover always survives.
inline CoverProblem build_cover_problem(const Instance& instance,
                                        std::uint64_t cap = kDefaultCliqueCap,
                                        bool prune_dominated = true) {
  const CliqueFamily family = enumerate_all_cliques(instance.subfiles, cap);
  CoverProblem problem;
  problem.elements = instance.subfiles;
  problem.enumerated_columns = family.total_count;

  std::vector<Packet> sets;
  sets.reserve(static_cast<std::size_t>(family.total_count));
  for (const CliqueGroup& g : family.groups)
    for (const Packet& p : g.cliques) sets.push_back(p);

  std::vector<RowSet> incidence;
  incidence.reserve(sets.size());
  std::vector<std::uint64_t> costs;
  costs.reserve(sets.size());
  for (const Packet& p : sets) {
    RowSet rows(problem.elements.size());
    for (const Subfile& s : p.members) {
      const std::ptrdiff_t idx = find_subfile(problem.elements, s);
      rows.set(static_cast<std::size_t>(idx));
    }
    incidence.push_back(std::move(rows));
    costs.push_back(packet_size(p));
  }

  std::vector<char> keep(sets.size(), 1);
  if (prune_dominated && sets.size() <= kDominancePruneLimit) {
    for (std::size_t i = 0; i < sets.size(); ++i) {
      for (std::size_t j = 0; j < sets.size(); ++j) {
        if (i == j || !incidence[i].subset_of(incidence[j]) ||
            costs[j] > costs[i])
          continue;
        if (incidence[i] == incidence[j] && costs[i] == costs[j] &&
            packet_less(sets[i], sets[j]))
          continue;  // exact tie, i is the canonical survivor
        keep[i] = 0;
        break;
      }
    }
  }
  for (std::size_t i = 0; i < sets.size(); ++i) {
    if (!keep[i]) continue;
    problem.sets.push_back(std::move(sets[i]));
    problem.costs.push_back(costs[i]);
    problem.incidence.push_back(std::move(incidence[i]));
  }
  return problem;
}

struct ExactOptions {
  std::uint64_t clique_cap = kDefaultCliqueCap;
  std::uint64_t node_budget = 10'000'000;
  bool prune_dominated = true;
  bool seed_with_sacm = true;
};

struct ExactResult {
  Schedule schedule;
  bool optimal = false;       // false once the node budget ran out
  std::uint64_t nodes = 0;    // branch nodes expanded
  std::size_t columns = 0;    // columns searched (after pruning)
};

namespace detail {

class CoverSearch {
 public:
  // Fixed-point scale for the admissible bound; terms are floored, so the
  // bound can only err downward.
  static constexpr int kRatioShift = 16;

  CoverSearch(const CoverProblem& problem, std::uint64_t node_budget)
      : problem_(problem), budget_(node_budget) {
    const std::size_t rows = problem.elements.size();
    min_ratio_fixed_.assign(rows, ~std::uint64_t{0});
    covering_.assign(rows, {});
    for (std::size_t c = 0; c < problem.sets.size(); ++c) {
      const std::uint64_t card =
          static_cast<std::uint64_t>(problem.incidence[c].count());
      for (std::size_t e = 0; e < rows; ++e) {
        if (!problem.incidence[c].test(e)) continue;
        covering_[e].push_back(c);
        min_ratio_fixed_[e] = std::min(
            min_ratio_fixed_[e], (problem.costs[c] << kRatioShift) / card);
      }
    }
    for (std::size_t e = 0; e < rows; ++e) {
      if (covering_[e].empty())
        throw std::invalid_argument("uncoverable element in cover problem");
      std::sort(covering_[e].begin(), covering_[e].end(),
                [&](std::size_t a, std::size_t b) {
                  if (problem_.costs[a] != problem_.costs[b])
                    return problem_.costs[a] < problem_.costs[b];
                  return a < b;
                });
    }
  }

  void run(std::uint64_t upper_bound) {
    best_cost_ = upper_bound;
    RowSet covered(problem_.elements.size());
    std::vector<std::size_t> chosen;
    dfs(covered, 0, chosen);
  }

  const std::optional<std::vector<std::size_t>>& best() const {
    return best_pick_;
  }
  std::uint64_t best_cost() const { return best_cost_; }
  std::uint64_t nodes() const { return nodes_; }
  bool exhausted_budget() const { return out_of_budget_; }

 private:
  // Any cover pays at least the sum over uncovered elements of the cheapest
  // cost-per-member among columns covering them: a chosen column c spreads
  // cost_c over its |c| members and every member is charged at least its own
  // minimum. Floored fixed point keeps the bound admissible.
  std::uint64_t lower_bound(const RowSet& covered) const {
    std::uint64_t sum = 0;
    for (std::size_t e = 0; e < problem_.elements.size(); ++e)
      if (!covered.test(e)) sum += min_ratio_fixed_[e];
    return sum >> kRatioShift;
  }

  void dfs(const RowSet& covered, std::uint64_t cost,
           std::vector<std::size_t>& chosen) {
    if (out_of_budget_) return;
    if (++nodes_ > budget_) {
      out_of_budget_ = true;
      return;
    }
    const std::size_t e = covered.first_clear();
    if (e == problem_.elements.size()) {
      if (cost < best_cost_) {
        best_cost_ = cost;
        best_pick_ = chosen;
      }
      return;
    }
    if (cost + lower_bound(covered) >= best_cost_) return;
    // The same covered set is reachable through many column orders; revisit
    // only when strictly cheaper. Keyed on the single-word mask, which spans
    // every desk-scale problem.
    if (covered.rows() <= 64 && memo_.size() < kMemoLimit) {
      const auto [it, fresh] = memo_.try_emplace(covered.word0(), cost);
      if (!fresh) {
        if (it->second <= cost) return;
        it->second = cost;
      }
    }
    for (std::size_t c : covering_[e]) {
      const std::uint64_t next_cost = cost + problem_.costs[c];
      if (next_cost >= best_cost_) continue;
      RowSet next = covered;
      next.merge(problem_.incidence[c]);
      chosen.push_back(c);
      dfs(next, next_cost, chosen);
      chosen.pop_back();
      if (out_of_budget_) return;
    }
  }

  static constexpr std::size_t kMemoLimit = 1 << 22;

  const CoverProblem& problem_;
  std::uint64_t budget_;
  std::vector<std::uint64_t> min_ratio_fixed_;
  std::vector<std::vector<std::size_t>> covering_;
  std::uint64_t best_cost_ = ~std::uint64_t{0};
  std::optional<std::vector<std::size_t>> best_pick_;
  std::uint64_t nodes_ = 0;
  bool out_of_budget_ = false;
  std::unordered_map<std::uint64_t, std::uint64_t> memo_;
};

}  // namespace detail

// Branch and bound on the lowest-index uncovered element, columns tried in
// ascending cost. `incumbent` supplies the initial upper bound and the
// fallback schedule; pass the sacm() output to tighten pruning from the
// start.
inline ExactResult solve_exact(const CoverProblem& problem,
                               const std::optional<Schedule>& incumbent = {},
                               std::uint64_t node_budget = 10'000'000) {
  if (problem.elements.empty())
    throw std::invalid_argument("cover problem has no elements");
  detail::CoverSearch search(problem, node_budget);
  // A strict improvement on the incumbent requires beating it by one bit.
  std::uint64_t upper = ~std::uint64_t{0};
  if (incumbent.has_value()) upper = incumbent->total_bits;
  search.run(upper);

  ExactResult result;
  result.nodes = search.nodes();
  result.columns = problem.sets.size();
  result.optimal = !search.exhausted_budget();
  if (search.best().has_value()) {
    Schedule schedule;
    for (std::size_t c : *search.best())
      append_packet(schedule, problem.sets[c]);
    result.schedule = std::move(schedule);
  } else if (incumbent.has_value()) {
    result.schedule = *incumbent;
  } else {
    throw std::domain_error("search found no cover and no incumbent given");
  }
  return result;
}

// Convenience wrapper for the whole oracle path: enumerate, prune, seed the
// incumbent from sacm, solve.
inline ExactResult exact_cover(const Instance& instance,
                               const ExactOptions& options = {}) {
  const CoverProblem problem = build_cover_problem(
      instance, options.clique_cap, options.prune_dominated);
  std::optional<Schedule> incumbent;
  if (options.seed_with_sacm) incumbent = sacm(instance);
  return solve_exact(problem, incumbent, options.node_budget);
}

}  // namespace cliquecast
