#pragma once

// Monte Carlo experiment harness: sweep tau, draw placements, run the
// requested algorithms, emit CSV with per-tau aggregates.
//
// Determinism contract: the per-row placement depends only on
// (base seed, tau index, sample index) - never on thread scheduling - and
// the CSV is byte identical across runs unless wall-time columns are
// requested explicitly.

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "cliquecast/baselines.hpp"
#include "cliquecast/core.hpp"
#include "cliquecast/exact.hpp"
#include "cliquecast/generators.hpp"
#include "cliquecast/sacm.hpp"

namespace cliquecast {

enum class Algo { uncoded = 0, gcm, gccm, sacm, exact };

inline constexpr std::size_t kAlgoCount = 5;

inline const char* algo_name(Algo a) {
  switch (a) {
    case Algo::uncoded: return "uncoded";
    case Algo::gcm: return "gcm";
    case Algo::gccm: return "gccm";
    case Algo::sacm: return "sacm";
    case Algo::exact: return "exact";
  }
  return "?";
}

inline std::optional<Algo> algo_from_name(const std::string& name) {
  for (std::size_t i = 0; i < kAlgoCount; ++i) {
    const Algo a = static_cast<Algo>(i);
    if (name == algo_name(a)) return a;
  }
  return std::nullopt;
}

struct ExperimentRow {
  int num_users = 0;
  std::uint64_t tau = 0;
  std::uint64_t sample = 0;
  std::uint64_t seed = 0;  // substream state actually used for the placement
  std::array<std::optional<std::uint64_t>, kAlgoCount> bits;
  std::array<double, kAlgoCount> wall_ms{};
};

struct ExperimentPlan {
  ExperimentConfig base;            // tau field ignored, taus below rule
  std::vector<std::uint64_t> taus;
  std::vector<Algo> algos = {Algo::uncoded, Algo::gcm, Algo::gccm, Algo::sacm};
  int threads = 1;
  std::uint64_t exact_clique_cap = kDefaultCliqueCap;
  std::uint64_t exact_node_budget = 10'000'000;
};

namespace detail {

inline double elapsed_ms(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::milli>(
             std::chrono::steady_clock::now() - start)
      .count();
}

inline void measure_algorithms(const Instance& instance,
                               const std::vector<Algo>& algos,
                               std::uint64_t clique_cap,
                               std::uint64_t node_budget, ExperimentRow& row) {
  for (Algo algo : algos) {
    const auto start = std::chrono::steady_clock::now();
    std::optional<std::uint64_t> bits;
    switch (algo) {
      case Algo::uncoded: bits = uncoded(instance).total_bits; break;
      case Algo::gcm: bits = gcm(instance).total_bits; break;
      case Algo::gccm: bits = gccm(instance).total_bits; break;
      case Algo::sacm: bits = sacm(instance).total_bits; break;
      case Algo::exact: {
        try {
          ExactOptions options;
          options.clique_cap = clique_cap;
          options.node_budget = node_budget;
          const ExactResult result = exact_cover(instance, options);
          if (result.optimal) bits = result.schedule.total_bits;
        } catch (const ResourceCapExceeded&) {
          // column absent, the sweep goes on
        }
        break;
      }
    }
    row.bits[static_cast<std::size_t>(algo)] = bits;
    row.wall_ms[static_cast<std::size_t>(algo)] = elapsed_ms(start);
  }
}

inline ExperimentRow run_row(const ExperimentPlan& plan, std::size_t tau_index,
                             std::uint64_t sample) {
  ExperimentConfig config = plan.base;
  config.tau = plan.taus[tau_index];
  // Substream index = tau_index * samples + sample; see rng.hpp for the
  // derivation from the base seed.
  const std::uint64_t stream =
      static_cast<std::uint64_t>(tau_index) * plan.base.samples + sample;
  const Instance instance = random_instance(config, stream);

  ExperimentRow row;
  row.num_users = config.num_users;
  row.tau = config.tau;
  row.sample = sample;
  row.seed = mix64(config.seed) ^ mix64(stream + 0x9e3779b97f4a7c15ull);
  measure_algorithms(instance, plan.algos, plan.exact_clique_cap,
                     plan.exact_node_budget, row);
  return row;
}

}  // namespace detail

// One row for a fixed instance: no placement drawing, no aggregation.
inline ExperimentRow run_single(const Instance& instance,
                                const std::vector<Algo>& algos,
                                std::uint64_t exact_clique_cap =
                                    kDefaultCliqueCap,
                                std::uint64_t exact_node_budget = 10'000'000) {
  ExperimentRow row;
  row.num_users = instance.num_users;
  row.tau = instance.subfiles.size();
  detail::measure_algorithms(instance, algos, exact_clique_cap,
                             exact_node_budget, row);
  return row;
}

// All rows of the sweep, ordered by (tau index, sample) regardless of the
// worker pool's scheduling.
inline std::vector<ExperimentRow> run_experiment(const ExperimentPlan& plan) {
  validate_config([&] {
    ExperimentConfig probe = plan.base;
    if (plan.taus.empty()) throw std::invalid_argument("no tau values");
    probe.tau = plan.taus.front();
    return probe;
  }());
  for (std::uint64_t tau : plan.taus) {
    ExperimentConfig probe = plan.base;
    probe.tau = tau;
    validate_config(probe);
  }

  const std::size_t total = plan.taus.size() *
                            static_cast<std::size_t>(plan.base.samples);
  std::vector<ExperimentRow> rows(total);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= total) return;
      const std::size_t tau_index = i / plan.base.samples;
      const std::uint64_t sample = i % plan.base.samples;
      rows[i] = detail::run_row(plan, tau_index, sample);
    }
  };
  const int threads = std::max(1, plan.threads);
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(threads));
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
  }
  return rows;
}

struct Aggregate {
  double mean = 0;
  double ci95_half = 0;  // normal approximation over the samples
  std::size_t count = 0;
};

inline Aggregate aggregate(const std::vector<double>& values) {
  Aggregate out;
  out.count = values.size();
  if (values.empty()) return out;
  double sum = 0;
  for (double v : values) sum += v;
  out.mean = sum / static_cast<double>(values.size());
  if (values.size() > 1) {
    double ss = 0;
    for (double v : values) ss += (v - out.mean) * (v - out.mean);
    const double sd = std::sqrt(ss / static_cast<double>(values.size() - 1));
    out.ci95_half = 1.96 * sd / std::sqrt(static_cast<double>(values.size()));
  }
  return out;
}

// 100 * (1 - mean(sacm) / mean(uncoded)) per tau, over rows that carry both
// columns.
inline std::vector<std::pair<std::uint64_t, double>> bandwidth_reduction(
    const std::vector<ExperimentRow>& rows) {
  if (rows.empty()) throw std::invalid_argument("no experiment rows");
  std::vector<std::pair<std::uint64_t, double>> out;
  std::vector<std::uint64_t> taus;
  for (const ExperimentRow& r : rows)
    if (taus.empty() || taus.back() != r.tau) taus.push_back(r.tau);
  for (std::uint64_t tau : taus) {
    double sum_uncoded = 0;
    double sum_sacm = 0;
    std::size_t n = 0;
    for (const ExperimentRow& r : rows) {
      if (r.tau != tau) continue;
      const auto& u = r.bits[static_cast<std::size_t>(Algo::uncoded)];
      const auto& s = r.bits[static_cast<std::size_t>(Algo::sacm)];
      if (!u.has_value() || !s.has_value()) continue;
      sum_uncoded += static_cast<double>(*u);
      sum_sacm += static_cast<double>(*s);
      ++n;
    }
    if (n == 0 || sum_uncoded == 0)
      throw std::invalid_argument("reduction needs uncoded and sacm columns");
    out.emplace_back(tau, 100.0 * (1.0 - sum_sacm / sum_uncoded));
  }
  return out;
}

namespace detail {

inline std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.4f", v);
  return buf;
}

}  // namespace detail

// Pinned schema (see README): sample rows per (tau, sample) followed, per
// tau, by mean / ci95 rows per algorithm column and one reduction row when
// uncoded and sacm are both present. Wall-time columns only with `timings`;
// aggregates can be suppressed for single-instance runs.
inline void write_csv(std::ostream& out, const std::vector<ExperimentRow>& rows,
                      bool timings = false, bool with_aggregates = true) {
  out << "kind,K,tau,sample,seed,uncoded_bits,gcm_bits,gccm_bits,sacm_bits,"
         "exact_bits,reduction_pct";
  if (timings)
    out << ",uncoded_ms,gcm_ms,gccm_ms,sacm_ms,exact_ms";
  out << "\n";

  std::vector<std::uint64_t> taus;
  for (const ExperimentRow& r : rows)
    if (taus.empty() || taus.back() != r.tau) taus.push_back(r.tau);

  for (std::uint64_t tau : taus) {
    std::array<std::vector<double>, kAlgoCount> columns;
    for (const ExperimentRow& r : rows) {
      if (r.tau != tau) continue;
      out << "sample," << r.num_users << ',' << r.tau << ',' << r.sample << ','
          << r.seed;
      for (std::size_t a = 0; a < kAlgoCount; ++a) {
        out << ',';
        if (r.bits[a].has_value()) {
          out << *r.bits[a];
          columns[a].push_back(static_cast<double>(*r.bits[a]));
        }
      }
      out << ',';  // reduction_pct empty on sample rows
      if (timings) {
        for (std::size_t a = 0; a < kAlgoCount; ++a) {
          out << ',';
          if (r.bits[a].has_value())
            out << detail::format_double(r.wall_ms[a]);
        }
      }
      out << "\n";
    }
    if (!with_aggregates) continue;

    const int num_users = rows.empty() ? 0 : rows.front().num_users;
    std::array<Aggregate, kAlgoCount> agg;
    for (std::size_t a = 0; a < kAlgoCount; ++a) agg[a] = aggregate(columns[a]);
    for (const char* kind : {"mean", "ci95"}) {
      out << kind << ',' << num_users << ',' << tau << ",,";
      for (std::size_t a = 0; a < kAlgoCount; ++a) {
        out << ',';
        if (!columns[a].empty())
          out << detail::format_double(std::string{kind} == "mean"
                                           ? agg[a].mean
                                           : agg[a].ci95_half);
      }
      out << ',';
      if (timings) out << ",,,,,";
      out << "\n";
    }

    const auto& u = columns[static_cast<std::size_t>(Algo::uncoded)];
    const auto& s = columns[static_cast<std::size_t>(Algo::sacm)];
    if (!u.empty() && u.size() == s.size()) {
      double sum_u = 0;
      double sum_s = 0;
      for (double v : u) sum_u += v;
      for (double v : s) sum_s += v;
      out << "reduction," << num_users << ',' << tau << ",,,,,,,,"
          << detail::format_double(100.0 * (1.0 - sum_s / sum_u));
      if (timings) out << ",,,,,";
      out << "\n";
    }
  }
}

}  // namespace cliquecast
