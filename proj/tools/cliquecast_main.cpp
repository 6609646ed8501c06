// cliquecast: clique cover delivery schedules for coded caching.
//
// Subcommands: gen, solve, oracle, enumerate, verify, compare, experiment.
// Exit codes: 0 success, 2 validation failure, 3 resource cap exceeded.

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "cliquecast/baselines.hpp"
#include "cliquecast/clique_space.hpp"
#include "cliquecast/core.hpp"
#include "cliquecast/decode.hpp"
#include "cliquecast/exact.hpp"
#include "cliquecast/experiment.hpp"
#include "cliquecast/generators.hpp"
#include "cliquecast/json_io.hpp"
#include "cliquecast/sacm.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 2;
constexpr int kExitResourceCap = 3;

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty() || out_path == "-") {
    std::cout << text;
  } else {
    cliquecast::write_text_file(out_path, text);
  }
}

cliquecast::Instance load_instance(const std::string& path) {
  return cliquecast::instance_from_json(cliquecast::load_json_file(path));
}

std::vector<std::pair<int, int>> load_edge_list(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::vector<std::pair<int, int>> edges;
  int a = 0;
  int b = 0;
  while (in >> a >> b) edges.emplace_back(a, b);
  if (!in.eof()) throw std::runtime_error("bad edge list in " + path);
  return edges;
}

struct GenArgs {
  std::string family = "random";
  int num_users = 3;
  std::uint64_t tau = 12;
  std::uint64_t size_min = 1;
  std::uint64_t size_max = 1000;
  std::uint64_t seed = 0;
  std::uint64_t sample = 0;
  std::uint64_t big = 1'000'000;
  std::uint64_t eps = 1;
  std::string graph_file;
  std::string out;
  std::string order_out;
};

int run_gen(const GenArgs& args) {
  cliquecast::Instance instance;
  if (args.family == "random") {
    cliquecast::ExperimentConfig config;
    config.num_users = args.num_users;
    config.tau = args.tau;
    config.size_min = args.size_min;
    config.size_max = args.size_max;
    config.seed = args.seed;
    instance = cliquecast::random_instance(config, args.sample);
  } else if (args.family == "adv-uncoded") {
    instance = cliquecast::adversarial_uncoded(args.num_users, args.big);
  } else if (args.family == "adv-gcm") {
    instance = cliquecast::adversarial_gcm(args.num_users, args.big, args.eps);
  } else if (args.family == "adv-gccm") {
    cliquecast::GccmAdversary adv =
        cliquecast::adversarial_gccm(args.num_users, args.big, args.eps);
    if (!args.order_out.empty())
      cliquecast::write_text_file(
          args.order_out,
          cliquecast::dump_canonical(cliquecast::order_to_json(adv.vertex_order)));
    instance = std::move(adv.instance);
  } else if (args.family == "graph") {
    if (args.graph_file.empty())
      throw std::runtime_error("--graph-file is required for family graph");
    const auto edges = load_edge_list(args.graph_file);
    instance = cliquecast::from_graph(args.num_users, edges);
  } else {
    throw std::runtime_error("unknown family " + args.family);
  }
  emit(cliquecast::dump_canonical(cliquecast::instance_to_json(instance)),
       args.out);
  return kExitOk;
}

struct SolveArgs {
  std::string instance_path;
  std::string algo = "sacm";
  std::string order_file;
  std::string out;
  std::uint64_t clique_cap = cliquecast::kDefaultCliqueCap;
};

int run_solve(const SolveArgs& args) {
  const cliquecast::Instance instance = load_instance(args.instance_path);
  cliquecast::Schedule schedule;
  if (args.algo == "uncoded") {
    schedule = cliquecast::uncoded(instance);
  } else if (args.algo == "gcm") {
    schedule = cliquecast::gcm(instance);
  } else if (args.algo == "gccm") {
    if (args.order_file.empty()) {
      schedule = cliquecast::gccm(instance);
    } else {
      const auto order = cliquecast::order_from_json(
          cliquecast::load_json_file(args.order_file), instance);
      schedule = cliquecast::gccm(instance, order);
    }
  } else if (args.algo == "sacm") {
    schedule = cliquecast::sacm(instance);
  } else if (args.algo == "greedy") {
    schedule = cliquecast::greedy_cover(instance, args.clique_cap);
  } else if (args.algo == "chvatal") {
    schedule = cliquecast::chvatal_cover(instance, args.clique_cap);
  } else {
    throw std::runtime_error("unknown algorithm " + args.algo);
  }
  std::cerr << args.algo << ": " << schedule.packets.size() << " packets, "
            << schedule.total_bits << " bits\n";
  emit(cliquecast::dump_canonical(cliquecast::schedule_to_json(schedule)),
       args.out);
  return kExitOk;
}

struct OracleArgs {
  std::string instance_path;
  std::string out;
  std::uint64_t clique_cap = cliquecast::kDefaultCliqueCap;
  std::uint64_t node_budget = 10'000'000;
};

int run_oracle(const OracleArgs& args) {
  const cliquecast::Instance instance = load_instance(args.instance_path);
  cliquecast::ExactOptions options;
  options.clique_cap = args.clique_cap;
  options.node_budget = args.node_budget;
  const cliquecast::ExactResult result =
      cliquecast::exact_cover(instance, options);
  std::cout << "optimal=" << (result.optimal ? "yes" : "no")
            << " total_bits=" << result.schedule.total_bits
            << " packets=" << result.schedule.packets.size()
            << " nodes=" << result.nodes << " columns=" << result.columns
            << "\n";
  if (!args.out.empty())
    cliquecast::write_text_file(
        args.out,
        cliquecast::dump_canonical(
            cliquecast::schedule_to_json(result.schedule)));
  return result.optimal ? kExitOk : kExitResourceCap;
}

struct EnumerateArgs {
  std::string instance_path;
  std::uint64_t clique_cap = cliquecast::kDefaultCliqueCap;
  bool list = false;
};

std::string group_name(cliquecast::UserSet users) {
  std::string out = "{";
  bool first = true;
  for (int u : cliquecast::users_of(users)) {
    if (!first) out += ",";
    out += std::to_string(u);
    first = false;
  }
  return out + "}";
}

int run_enumerate(const EnumerateArgs& args) {
  const cliquecast::Instance instance = load_instance(args.instance_path);
  const cliquecast::CliqueFamily family =
      cliquecast::enumerate_all_cliques(instance.subfiles, args.clique_cap);
  for (const cliquecast::CliqueGroup& group : family.groups) {
    std::cout << "group " << group_name(group.users) << ": "
              << group.cliques.size() << " cliques\n";
    if (args.list) {
      for (const cliquecast::Packet& p : group.cliques) {
        std::cout << "  ";
        for (const cliquecast::Subfile& s : p.members)
          std::cout << cliquecast::describe(s) << " ";
        std::cout << "(" << cliquecast::packet_size(p) << " bits)\n";
      }
    }
  }
  std::cout << "total " << family.total_count << " cliques\n";
  return kExitOk;
}

struct VerifyArgs {
  std::string instance_path;
  std::string schedule_path;
  std::uint64_t seed = 0;
};

int run_verify(const VerifyArgs& args) {
  const cliquecast::Instance instance = load_instance(args.instance_path);
  const cliquecast::Schedule schedule = cliquecast::schedule_from_json(
      cliquecast::load_json_file(args.schedule_path), instance);
  const cliquecast::ScheduleCheck structure =
      cliquecast::check_schedule(instance, schedule);
  if (!structure.ok) {
    std::cout << "FAIL structure: " << structure.reason << "\n";
    return kExitValidation;
  }
  const cliquecast::DecodeReport decode =
      cliquecast::check_decode(instance, schedule, args.seed);
  if (!decode.ok) {
    std::cout << "FAIL decode: " << decode.detail << "\n";
    return kExitValidation;
  }
  std::cout << "PASS: " << schedule.packets.size() << " packets, "
            << schedule.total_bits
            << " bits, every user decodes (seed=" << args.seed << ")\n";
  return kExitOk;
}

struct CompareArgs {
  std::string instance_path;
  std::vector<std::string> algos = {"uncoded", "gcm", "gccm", "sacm"};
  std::uint64_t seed = 0;
  std::uint64_t clique_cap = cliquecast::kDefaultCliqueCap;
  std::uint64_t node_budget = 10'000'000;
};

int run_compare(const CompareArgs& args) {
  const cliquecast::Instance instance = load_instance(args.instance_path);
  std::printf("%-10s %14s %8s %6s %7s\n", "algo", "total_bits", "packets",
              "valid", "decodes");
  for (const std::string& name : args.algos) {
    std::optional<cliquecast::Schedule> schedule;
    std::string note;
    if (name == "uncoded") {
      schedule = cliquecast::uncoded(instance);
    } else if (name == "gcm") {
      schedule = cliquecast::gcm(instance);
    } else if (name == "gccm") {
      schedule = cliquecast::gccm(instance);
    } else if (name == "sacm") {
      schedule = cliquecast::sacm(instance);
    } else if (name == "greedy") {
      schedule = cliquecast::greedy_cover(instance, args.clique_cap);
    } else if (name == "chvatal") {
      schedule = cliquecast::chvatal_cover(instance, args.clique_cap);
    } else if (name == "exact") {
      cliquecast::ExactOptions options;
      options.clique_cap = args.clique_cap;
      options.node_budget = args.node_budget;
      const cliquecast::ExactResult result =
          cliquecast::exact_cover(instance, options);
      schedule = result.schedule;
      if (!result.optimal) note = " (budget hit, not proven optimal)";
    } else {
      throw std::runtime_error("unknown algorithm " + name);
    }
    const bool valid = cliquecast::validate_schedule(instance, *schedule);
    const bool decodes =
        cliquecast::verify_decode(instance, *schedule, args.seed);
    std::printf("%-10s %14llu %8zu %6s %7s%s\n", name.c_str(),
                static_cast<unsigned long long>(schedule->total_bits),
                schedule->packets.size(), valid ? "yes" : "NO",
                decodes ? "yes" : "NO", note.c_str());
  }
  return kExitOk;
}

struct ExperimentArgs {
  int num_users = 3;
  std::vector<std::uint64_t> taus;
  std::uint64_t samples = 100;
  std::uint64_t seed = 0;
  std::uint64_t size_min = 1;
  std::uint64_t size_max = 1000;
  std::vector<std::string> algos = {"uncoded", "gcm", "gccm", "sacm"};
  int threads = 1;
  bool timings = false;
  std::uint64_t clique_cap = cliquecast::kDefaultCliqueCap;
  std::uint64_t node_budget = 10'000'000;
  std::string instance_path;
  std::string out;
};

std::vector<cliquecast::Algo> parse_algos(
    const std::vector<std::string>& names) {
  std::vector<cliquecast::Algo> algos;
  for (const std::string& name : names) {
    const auto algo = cliquecast::algo_from_name(name);
    if (!algo.has_value())
      throw std::runtime_error("unknown algorithm " + name);
    algos.push_back(*algo);
  }
  return algos;
}

int run_experiment_cmd(const ExperimentArgs& args) {
  if (!args.instance_path.empty()) {
    // fixed instance: one sample row, no aggregation
    const cliquecast::Instance instance = load_instance(args.instance_path);
    const cliquecast::ExperimentRow row = cliquecast::run_single(
        instance, parse_algos(args.algos), args.clique_cap, args.node_budget);
    std::ostringstream csv;
    cliquecast::write_csv(csv, {row}, args.timings, false);
    emit(csv.str(), args.out);
    return kExitOk;
  }
  cliquecast::ExperimentPlan plan;
  plan.base.num_users = args.num_users;
  plan.base.size_min = args.size_min;
  plan.base.size_max = args.size_max;
  plan.base.samples = args.samples;
  plan.base.seed = args.seed;
  plan.taus = args.taus;
  plan.threads = args.threads;
  plan.exact_clique_cap = args.clique_cap;
  plan.exact_node_budget = args.node_budget;
  plan.algos = parse_algos(args.algos);
  const std::vector<cliquecast::ExperimentRow> rows =
      cliquecast::run_experiment(plan);
  std::ostringstream csv;
  cliquecast::write_csv(csv, rows, args.timings);
  emit(csv.str(), args.out);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"clique cover delivery schedules for coded caching"};
  app.require_subcommand(1);

  GenArgs gen;
  CLI::App* gen_cmd = app.add_subcommand("gen", "generate an instance");
  gen_cmd->add_option("--family", gen.family,
                      "random|adv-uncoded|adv-gcm|adv-gccm|graph");
  gen_cmd->add_option("-K,--users", gen.num_users, "number of users");
  gen_cmd->add_option("--tau", gen.tau, "number of subfiles (random family)");
  gen_cmd->add_option("--size-min", gen.size_min, "minimum subfile bits");
  gen_cmd->add_option("--size-max", gen.size_max, "maximum subfile bits");
  gen_cmd->add_option("--seed", gen.seed, "master seed");
  gen_cmd->add_option("--sample", gen.sample, "substream index");
  gen_cmd->add_option("-B,--big", gen.big, "large subfile bits (adversarial)");
  gen_cmd->add_option("--eps", gen.eps, "small subfile bits (adversarial)");
  gen_cmd->add_option("--graph-file", gen.graph_file,
                      "edge list file, one '<a> <b>' pair per line");
  gen_cmd->add_option("--order-out", gen.order_out,
                      "write the adversarial vertex order here (adv-gccm)");
  gen_cmd->add_option("-o,--out", gen.out, "output file (default stdout)");

  SolveArgs solve;
  CLI::App* solve_cmd = app.add_subcommand("solve", "run one delivery scheme");
  solve_cmd->add_option("instance", solve.instance_path, "instance JSON")
      ->required();
  solve_cmd->add_option("--algo", solve.algo,
                        "uncoded|gcm|gccm|sacm|greedy|chvatal");
  solve_cmd->add_option("--order-file", solve.order_file,
                        "vertex order JSON for gccm");
  solve_cmd->add_option("--clique-cap", solve.clique_cap,
                        "enumeration cap for greedy/chvatal");
  solve_cmd->add_option("-o,--out", solve.out, "schedule file (default stdout)");

  OracleArgs oracle;
  CLI::App* oracle_cmd =
      app.add_subcommand("oracle", "prove the optimal schedule");
  oracle_cmd->add_option("instance", oracle.instance_path, "instance JSON")
      ->required();
  oracle_cmd->add_option("--clique-cap", oracle.clique_cap, "enumeration cap");
  oracle_cmd->add_option("--node-budget", oracle.node_budget,
                         "branch-and-bound node budget");
  oracle_cmd->add_option("-o,--out", oracle.out, "witness schedule file");

  EnumerateArgs enumerate;
  CLI::App* enum_cmd =
      app.add_subcommand("enumerate", "count the clique space per group");
  enum_cmd->add_option("instance", enumerate.instance_path, "instance JSON")
      ->required();
  enum_cmd->add_option("--clique-cap", enumerate.clique_cap, "enumeration cap");
  enum_cmd->add_flag("--list", enumerate.list, "print every clique");

  VerifyArgs verify;
  CLI::App* verify_cmd = app.add_subcommand(
      "verify", "validate a schedule and replay every user's decode");
  verify_cmd->add_option("instance", verify.instance_path, "instance JSON")
      ->required();
  verify_cmd->add_option("schedule", verify.schedule_path, "schedule JSON")
      ->required();
  verify_cmd->add_option("--seed", verify.seed, "content seed");

  CompareArgs compare;
  CLI::App* compare_cmd =
      app.add_subcommand("compare", "run several schemes on one instance");
  compare_cmd->add_option("instance", compare.instance_path, "instance JSON")
      ->required();
  compare_cmd->add_option("--algos", compare.algos, "algorithms to run")
      ->delimiter(',');
  compare_cmd->add_option("--seed", compare.seed, "decode content seed");
  compare_cmd->add_option("--clique-cap", compare.clique_cap,
                          "enumeration cap");
  compare_cmd->add_option("--node-budget", compare.node_budget,
                          "oracle node budget");

  ExperimentArgs experiment;
  CLI::App* exp_cmd = app.add_subcommand(
      "experiment", "Monte Carlo sweep over tau, CSV output");
  exp_cmd->add_option("-K,--users", experiment.num_users, "number of users");
  CLI::Option* exp_taus =
      exp_cmd->add_option("--tau,--taus", experiment.taus, "tau values to sweep")
          ->delimiter(',');
  exp_cmd->add_option("--instance", experiment.instance_path,
                      "run on one fixed instance instead of random draws")
      ->excludes(exp_taus);
  exp_cmd->add_option("--samples", experiment.samples, "samples per tau");
  exp_cmd->add_option("--seed", experiment.seed, "master seed");
  exp_cmd->add_option("--size-min", experiment.size_min, "minimum subfile bits");
  exp_cmd->add_option("--size-max", experiment.size_max, "maximum subfile bits");
  exp_cmd->add_option("--algos", experiment.algos, "algorithms to run")
      ->delimiter(',');
  exp_cmd->add_option("--threads", experiment.threads, "worker threads");
  exp_cmd->add_flag("--timings", experiment.timings,
                    "include wall-time columns (breaks byte determinism)");
  exp_cmd->add_option("--clique-cap", experiment.clique_cap,
                      "oracle enumeration cap");
  exp_cmd->add_option("--node-budget", experiment.node_budget,
                      "oracle node budget");
  exp_cmd->add_option("-o,--out", experiment.out, "CSV file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitValidation;
  }

  try {
    if (gen_cmd->parsed()) return run_gen(gen);
    if (solve_cmd->parsed()) return run_solve(solve);
    if (oracle_cmd->parsed()) return run_oracle(oracle);
    if (enum_cmd->parsed()) return run_enumerate(enumerate);
    if (verify_cmd->parsed()) return run_verify(verify);
    if (compare_cmd->parsed()) return run_compare(compare);
    if (exp_cmd->parsed()) return run_experiment_cmd(experiment);
  } catch (const cliquecast::ResourceCapExceeded& e) {
    std::cerr << "resource cap: " << e.what() << "\n";
    return kExitResourceCap;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  }
  return kExitOk;
}
