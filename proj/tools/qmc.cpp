// qmc: generate, verify, tabulate and sweep distributed quantum adders.
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <fmt/ostream.h>

#include "qmc/adders.hpp"
#include "qmc/experiments.hpp"
#include "qmc/oracle.hpp"
#include "qmc/placement.hpp"
#include "qmc/scheduler.hpp"

#ifndef QMC_DATA_DIR
#define QMC_DATA_DIR "data"
#endif

namespace {

using namespace qmc;

constexpr int kExitVerify = 1;
constexpr int kExitGolden = 2;
constexpr int kExitUsage = 64;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

const std::vector<AdderKind> kAdders = {AdderKind::VBE, AdderKind::CDKM, AdderKind::LOOKAHEAD};
const std::vector<Strategy> kStrategies = {Strategy::BASELINE, Strategy::TELEGATE, Strategy::TELEDATA};
const std::vector<TopologyKind> kTopologies = {TopologyKind::BUS, TopologyKind::BUS2, TopologyKind::LINE,
                                               TopologyKind::FULLY, TopologyKind::FULLY2};

struct Options {
  std::vector<std::string> adder, strategy, topology;
  std::vector<int> n;
  std::string model;
  std::vector<Time> t_epr;
  std::optional<Time> t_ccnot, t_cnot, t_classical;
  std::string out, golden, circuit;
  std::uint64_t seed = 1;
};

template <class T, class P>
std::vector<T> parse_all(const std::vector<std::string>& names, P parse, const std::vector<T>& all) {
  if (names.empty()) return all;
  std::vector<T> out;
  for (const auto& s : names) {
    try {
      out.push_back(parse(s));
    } catch (const std::exception& e) {
      throw UsageError(e.what());
    }
  }
  return out;
}

template <class T, class P>
T parse_one(const std::vector<std::string>& names, P parse, const char* flag) {
  if (names.size() != 1) throw UsageError(fmt::format("{} takes exactly one value", flag));
  return parse_all<T>(names, parse, {}).front();
}

int single_n(const Options& o) {
  if (o.n.size() != 1) throw UsageError("--n takes exactly one value");
  if (o.n.front() < 1) throw UsageError("--n must be positive");
  return o.n.front();
}

TimingModel timing(const Options& o, bool allow_list = false) {
  TimingModel tm;
  if (!o.t_epr.empty()) {
    if (o.t_epr.size() > 1 && !allow_list) throw UsageError("--t-epr takes one value here");
    tm.t_epr = o.t_epr.front();
  }
  if (o.t_ccnot) tm.t_ccnot = *o.t_ccnot;
  if (o.t_cnot) tm.t_cnot = *o.t_cnot;
  if (o.t_classical) tm.t_classical = *o.t_classical;
  for (Time t : o.t_epr) {
    if (t < 0) throw UsageError("timings must be non-negative");
  }
  try {
    tm.validate();
  } catch (const std::exception& e) {
    throw UsageError(e.what());
  }
  return tm;
}

void check_size(AdderKind a, int n) {
  if (n < 1) throw UsageError("--n must be positive");
  if (a == AdderKind::LOOKAHEAD && !is_power_of_two(n)) {
    throw UsageError(fmt::format("lookahead adder needs a power-of-two width, got {}", n));
  }
}

// Writes to --out when given, stdout otherwise.
template <class F>
void emit(const Options& o, F write) {
  if (o.out.empty()) {
    write(std::cout);
    return;
  }
  std::ofstream os(o.out);
  if (!os) throw UsageError(fmt::format("cannot write {}", o.out));
  write(os);
}

int cmd_gen(const Options& o) {
  const auto adder = parse_one<AdderKind>(o.adder, parse_adder, "--adder");
  const int n = single_n(o);
  check_size(adder, n);
  const auto a = generate(adder, n);
  if (o.strategy.empty() && o.topology.empty()) {
    emit(o, [&](std::ostream& os) { write_text(a.circuit, os); });
    return 0;
  }
  const auto s = parse_one<Strategy>(o.strategy, parse_strategy, "--strategy");
  const auto t = parse_one<TopologyKind>(o.topology, parse_topology, "--topology");
  if (!applicable(adder, t)) {
    throw UsageError(fmt::format("{} is not mapped to topology {}", to_string(adder), to_string(t)));
  }
  const auto d = rewrite(a.circuit, place(a, s), t);
  emit(o, [&](std::ostream& os) { write_text(d.circuit, os); });
  return 0;
}

std::string bits(const std::vector<int>& v) {
  std::string s;
  for (auto it = v.rbegin(); it != v.rend(); ++it) s += static_cast<char>('0' + *it);
  return s;
}

std::string describe(const EquivalenceResult& r) {
  if (r.equivalent) return fmt::format("ok ({} cases)", r.cases);
  const auto& c = *r.counterexample;
  return fmt::format("FAIL a={} b={} qubit {}: {}", bits(c.a), bits(c.b), c.qubit, c.detail);
}

int cmd_verify(const Options& o) {
  CheckOptions opt;
  opt.seed = o.seed;
  bool failed = false;
  std::ostringstream report;

  if (!o.circuit.empty()) {
    const auto adder = parse_one<AdderKind>(o.adder, parse_adder, "--adder");
    const int n = single_n(o);
    check_size(adder, n);
    std::ifstream is(o.circuit);
    if (!is) throw UsageError(fmt::format("cannot read {}", o.circuit));
    const auto c = read_text(is);
    const auto r = check_adder(c, generate(adder, n).layout, opt);
    fmt::print(report, "{} {} n={}: {}\n", o.circuit, to_string(adder), n, describe(r));
    failed = !r.equivalent;
  } else {
    const auto adders = parse_all(o.adder, parse_adder, kAdders);
    const bool all_strategies = o.strategy.empty();
    const auto strategies = parse_all(o.strategy, parse_strategy, kStrategies);
    const auto topologies = parse_all(o.topology, parse_topology, kTopologies);
    for (auto adder : adders) {
      std::vector<int> sizes = o.n;
      if (sizes.empty()) sizes = adder == AdderKind::LOOKAHEAD ? std::vector{2, 4} : std::vector{1, 2, 3, 4, 5, 6};
      for (int n : sizes) {
        // With every adder selected, skip widths the lookahead adder cannot take.
        if (o.adder.empty() && adder == AdderKind::LOOKAHEAD && !is_power_of_two(n)) continue;
        check_size(adder, n);
        const auto a = generate(adder, n);
        if (all_strategies) {
          const auto r = check_adder(a.circuit, a.layout, opt);
          fmt::print(report, "{} n={} monolithic: {}\n", to_string(adder), n, describe(r));
          failed |= !r.equivalent;
        }
        for (auto s : strategies) {
          const auto p = place(a, s);
          for (auto t : topologies) {
            if (!applicable(adder, t)) continue;
            const auto d = rewrite(a.circuit, p, t);
            const auto r = equivalence_check(a.circuit, d.circuit, a.layout, n, opt);
            fmt::print(report, "{} n={} {} {}: {}\n", to_string(adder), n, to_string(s), to_string(t), describe(r));
            failed |= !r.equivalent;
          }
        }
      }
    }
  }
  emit(o, [&](std::ostream& os) { os << report.str(); });
  return failed ? kExitVerify : 0;
}

int cmd_tables(const Options& o) {
  const std::string model = o.model.empty() ? "A" : o.model;
  CostModelKind kind;
  try {
    kind = parse_cost_model(model);
  } catch (const std::exception& e) {
    throw UsageError(e.what());
  }
  if (kind == CostModelKind::TIMED) throw UsageError("tables covers models A and B; use sweep for model C");
  const std::string golden_path =
      !o.golden.empty() ? o.golden
                        : (std::filesystem::path(QMC_DATA_DIR) /
                           (kind == CostModelKind::UNITS_TELEPORT ? "table1.csv" : "table2.csv"))
                              .string();
  std::vector<Cell> golden;
  try {
    golden = load_cells(golden_path);
  } catch (const std::exception& e) {
    throw UsageError(e.what());
  }
  std::erase_if(golden, [&](const Cell& c) { return c.model != kind; });
  const auto reports = reproduce(golden);
  std::vector<Cell> grid;
  for (const auto& r : reports) grid.push_back(to_cell(r));
  emit(o, [&](std::ostream& os) { write_cells(os, grid); });
  const auto d = diff(golden, reports);
  write_diff(o.out.empty() ? std::cerr : std::cout, d);
  return d.ok() ? 0 : kExitGolden;
}

int cmd_sweep(const Options& o) {
  const auto tm = timing(o, true);
  const auto t_eprs = o.t_epr.empty() ? sweep_t_epr() : o.t_epr;
  std::vector<int> sizes = o.n;
  if (sizes.empty()) sizes = {16, 32, 64, 128, 256, 512, 1024};
  for (int n : sizes) {
    if (n < 1) throw UsageError("--n must be positive");
  }
  const auto s = o.strategy.empty() ? Strategy::TELEDATA : parse_one<Strategy>(o.strategy, parse_strategy, "--strategy");
  std::vector<SweepConfig> configs;
  if (o.adder.empty() && o.topology.empty()) {
    configs = {{AdderKind::CDKM, TopologyKind::LINE}, {AdderKind::LOOKAHEAD, TopologyKind::FULLY2}};
  } else {
    for (auto a : parse_all(o.adder, parse_adder, kAdders)) {
      for (auto t : parse_all(o.topology, parse_topology, kTopologies)) configs.push_back({a, t});
    }
  }
  const auto rows = sweep(t_eprs, sizes, s, configs, tm);
  emit(o, [&](std::ostream& os) { write_sweep(os, rows); });
  return 0;
}

int cmd_report(const Options& o) {
  const auto adder = parse_one<AdderKind>(o.adder, parse_adder, "--adder");
  const int n = single_n(o);
  check_size(adder, n);
  const auto s = parse_one<Strategy>(o.strategy, parse_strategy, "--strategy");
  const auto t = parse_one<TopologyKind>(o.topology, parse_topology, "--topology");
  const auto tm = timing(o);
  emit(o, [&](std::ostream& os) { write_report(os, adder, n, s, t, tm); });
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Distributed quantum adder generator and scheduler"};
  app.require_subcommand(1);
  app.set_config("--config", "", "Key-value config file; command-line flags take precedence");
  Options o;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--adder", o.adder, "vbe, cdkm or lookahead")->delimiter(',');
    sub->add_option("--n", o.n, "Operand width(s)")->delimiter(',');
    sub->add_option("--strategy", o.strategy, "baseline, telegate or teledata")->delimiter(',');
    sub->add_option("--topology", o.topology, "bus, 2bus, line, fully or 2fully")->delimiter(',');
    sub->add_option("--out", o.out, "Output file (default stdout)");
    sub->add_option("--seed", o.seed, "Seed for sampled equivalence checks");
    sub->add_option("--model", o.model, "Cost model: A, B or C");
    sub->add_option("--t-epr", o.t_epr, "EPR pair creation time in ns")->delimiter(',');
    sub->add_option("--t-ccnot", o.t_ccnot, "Toffoli time in ns");
    sub->add_option("--t-cnot", o.t_cnot, "CNOT time in ns");
    sub->add_option("--t-classical", o.t_classical, "Classical message time in ns");
  };

  auto* gen = app.add_subcommand("gen", "Emit a monolithic or distributed circuit");
  add_common(gen);
  auto* verify = app.add_subcommand("verify", "Check adder semantics with the reversible oracle");
  add_common(verify);
  verify->add_option("--circuit", o.circuit, "Circuit file to check against --adder/--n")->check(CLI::ExistingFile);
  auto* tables = app.add_subcommand("tables", "Reproduce the latency tables and diff against golden data");
  add_common(tables);
  tables->add_option("--golden", o.golden, "Golden CSV (default: shipped table for --model)");
  auto* sweep_cmd = app.add_subcommand("sweep", "Timed latency over t_epr and n");
  add_common(sweep_cmd);
  auto* report = app.add_subcommand("report", "Summarize one configuration under all cost models");
  add_common(report);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*gen) return cmd_gen(o);
    if (*verify) return cmd_verify(o);
    if (*tables) return cmd_tables(o);
    if (*sweep_cmd) return cmd_sweep(o);
    if (*report) return cmd_report(o);
  } catch (const UsageError& e) {
    fmt::print(stderr, "qmc: {}\n", e.what());
    return kExitUsage;
  } catch (const CircuitError& e) {
    fmt::print(stderr, "qmc: {}\n", e.what());
    return kExitUsage;
  } catch (const std::exception& e) {
    fmt::print(stderr, "qmc: {}\n", e.what());
    return kExitVerify;
  }
  return kExitUsage;
}
