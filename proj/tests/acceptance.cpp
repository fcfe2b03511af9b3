// Acceptance suite: one PASS/FAIL line per criterion, with the evidence
// behind each verdict on the indented lines that follow.
#include <chrono>
#include <cmath>
#include <filesystem>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include <fmt/format.h>

#include "qmc/adders.hpp"
#include "qmc/experiments.hpp"
#include "qmc/oracle.hpp"
#include "qmc/placement.hpp"
#include "qmc/scheduler.hpp"

#ifndef QMC_DATA_DIR
#define QMC_DATA_DIR "data"
#endif

using namespace qmc;

namespace {

// Tolerances and pinned parameters.
constexpr double kTableRuntimeLimitS = 60.0;
constexpr double kSemanticsRuntimeLimitS = 300.0;
constexpr double kOpenQuestionTolerance = 0.05;
constexpr double kPenaltyTolerance = 0.15;
constexpr double kPenaltyAtFastEpr = 2.0;   // t_epr = 10 ns
constexpr double kPenaltyAtSlowEpr = 25.0;  // t_epr = 1280 ns
constexpr int kPenaltySize = 1024;
constexpr Time kFastEpr = 10;
constexpr Time kSlowEpr = 1280;
const std::vector<int> kFormulaSizes = {4, 8, 16, 32, 64, 128, 1024};
const std::vector<int> kSweepSizes = {16, 32, 64, 128, 256, 512, 1024};
const std::vector<TopologyKind> kTopologies = {TopologyKind::BUS, TopologyKind::BUS2, TopologyKind::LINE,
                                               TopologyKind::FULLY, TopologyKind::FULLY2};

struct Verdict {
  bool pass = true;
  std::vector<std::string> lines;

  void check(bool ok, std::string what) {
    pass = pass && ok;
    lines.push_back(fmt::format("{} {}", ok ? "ok  " : "MISS", what));
  }
  void info(std::string what) { lines.push_back("     " + std::move(what)); }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string key(const Cell& c) {
  return fmt::format("{}/{}/{}/{}", to_string(c.adder), to_string(c.strategy), to_string(c.topology), c.n);
}

std::string show(std::optional<Time> t) { return t ? fmt::format("{}", *t) : "N/A"; }

struct TableRun {
  std::vector<Cell> golden;
  std::vector<LatencyReport> reports;
  TableDiff diff;
  double seconds = 0;
};

TableRun run_table(const std::string& file, bool validate) {
  TableRun r;
  r.golden = load_cells((std::filesystem::path(QMC_DATA_DIR) / file).string());
  const auto t0 = std::chrono::steady_clock::now();
  r.reports = reproduce(r.golden, validate);
  r.seconds = seconds_since(t0);
  r.diff = diff(r.golden, r.reports);
  return r;
}

std::optional<Time> actual(const TableRun& t, AdderKind a, int n, Strategy s, TopologyKind topo) {
  for (const auto& r : t.reports) {
    if (r.adder == a && r.n == n && r.strategy == s && r.topology == topo) return r.makespan;
  }
  return std::nullopt;
}

// Exact match required for every ripple-adder cell; lookahead cells may only
// differ where an open question is recorded, and then by at most 5%.
void judge_table(Verdict& v, const TableRun& t) {
  std::size_t ripple_ok = 0, ripple_total = 0, la_ok = 0, la_total = 0;
  for (const auto& c : t.diff.cells) {
    const bool ripple = c.golden.adder != AdderKind::LOOKAHEAD;
    const bool ok = c.status == CellStatus::MATCH || c.status == CellStatus::NOT_APPLICABLE ||
                    (c.status == CellStatus::DOCUMENTED && std::abs(c.relative_error) <= kOpenQuestionTolerance);
    (ripple ? ripple_total : la_total)++;
    if (ok) (ripple ? ripple_ok : la_ok)++;
    if (!ok || !c.note.empty()) {
      v.check(ok, fmt::format("{} golden {} got {}{}", key(c.golden), show(c.golden.latency), show(c.actual),
                              c.note.empty() ? "" : " (open question: " + c.note + ")"));
    }
  }
  v.info(fmt::format("VBE/CDKM cells matching: {}/{}; lookahead cells accepted: {}/{}", ripple_ok, ripple_total,
                     la_ok, la_total));
}

Verdict criterion1(const TableRun& t1) {
  Verdict v;
  judge_table(v, t1);
  std::size_t listed = 0;
  for (const auto& c : t1.diff.cells) listed += !c.note.empty();
  v.check(listed == 2, fmt::format("diff report lists {} open-question cells", listed));
  v.check(t1.seconds < kTableRuntimeLimitS, fmt::format("runtime {:.1f} s (limit {:.0f} s)", t1.seconds,
                                                        kTableRuntimeLimitS));
  return v;
}

Verdict criterion2(const TableRun& t1, const TableRun& t2) {
  Verdict v;
  judge_table(v, t2);
  // Lookahead baseline and fully-connected cells that the golden data leaves
  // unchanged between the two models must also be unchanged here.
  std::map<std::string, std::optional<Time>> golden_a;
  for (const auto& c : t1.golden) golden_a[key(c)] = c.latency;
  for (const auto& c : t2.golden) {
    if (c.adder != AdderKind::LOOKAHEAD) continue;
    if (c.strategy != Strategy::BASELINE && c.topology != TopologyKind::FULLY) continue;
    if (golden_a[key(c)] != c.latency) continue;
    const auto a = actual(t1, c.adder, c.n, c.strategy, c.topology);
    const auto b = actual(t2, c.adder, c.n, c.strategy, c.topology);
    v.check(a == b, fmt::format("{} unchanged between models: A {} B {}", key(c), show(a), show(b)));
  }
  return v;
}

Verdict criterion3() {
  Verdict v;
  const auto A = CostModel::teleport_units();
  struct Formula {
    const char* name;
    AdderKind adder;
    Strategy strategy;
    std::vector<TopologyKind> topologies;
    std::function<Time(Time)> expected;
  };
  const std::vector<Formula> formulas = {
      {"VBE teledata 2m-2", AdderKind::VBE, Strategy::TELEDATA, kTopologies, [](Time m) { return 2 * m - 2; }},
      {"VBE telegate 7m-7", AdderKind::VBE, Strategy::TELEGATE, kTopologies, [](Time m) { return 7 * m - 7; }},
      {"CDKM teledata line 2m+2", AdderKind::CDKM, Strategy::TELEDATA, {TopologyKind::LINE},
       [](Time m) { return 2 * m + 2; }},
      {"CDKM telegate 6m", AdderKind::CDKM, Strategy::TELEGATE, {TopologyKind::LINE, TopologyKind::FULLY},
       [](Time m) { return 6 * m; }},
  };
  for (const auto& f : formulas) {
    std::vector<std::string> misses;
    for (auto topo : f.topologies) {
      for (int n : kFormulaSizes) {
        const auto d = distribute(f.adder, n, f.strategy, topo);
        const Time m = d.placement.nodes;
        const Time got = schedule(d, A).makespan;
        if (got != f.expected(m)) {
          misses.push_back(fmt::format("{} n={} m={}: {} vs {}", to_string(topo), n, m, got, f.expected(m)));
        }
      }
    }
    v.check(misses.empty(), fmt::format("{}: {} of {} points exact", f.name,
                                        f.topologies.size() * kFormulaSizes.size() - misses.size(),
                                        f.topologies.size() * kFormulaSizes.size()));
    for (std::size_t i = 0; i < misses.size() && i < 4; ++i) v.info(misses[i]);
    if (misses.size() > 4) v.info(fmt::format("... {} more", misses.size() - 4));
  }
  return v;
}

// CCNOT-weighted depth: Toffolis cost one step, everything else is free.
Verdict criterion4() {
  Verdict v;
  TimingModel tm;
  tm.t_ccnot = 1;
  tm.t_cnot = tm.t_not = tm.t_classical = tm.t_epr = tm.t_local_1q = 0;
  for (int n : {16, 128, 1024}) {
    const Time expected = 4 * static_cast<Time>(std::log2(n)) + 3;
    const Time got = schedule_monolithic(generate_lookahead(n).circuit, tm).makespan;
    v.check(got == expected, fmt::format("n={}: depth {} (expected {})", n, got, expected));
  }
  return v;
}

Verdict criterion5() {
  Verdict v;
  const auto t0 = std::chrono::steady_clock::now();
  std::size_t configs = 0, cases = 0, failures = 0;
  auto run = [&](AdderKind kind, int n) {
    const auto a = generate(kind, n);
    CheckOptions opt;
    opt.exhaustive_limit = n;
    const auto mono = check_adder(a.circuit, a.layout, opt);
    ++configs;
    cases += mono.cases;
    if (!mono.equivalent) {
      ++failures;
      v.info(fmt::format("{} n={} monolithic: {}", to_string(kind), n, mono.counterexample->detail));
    }
    for (auto s : {Strategy::TELEDATA, Strategy::TELEGATE}) {
      for (auto topo : kTopologies) {
        if (!applicable(kind, topo)) continue;
        const auto d = rewrite(a.circuit, place(a, s), topo);
        const auto r = equivalence_check(a.circuit, d.circuit, a.layout, n, opt);
        ++configs;
        cases += r.cases;
        if (!r.equivalent) {
          ++failures;
          v.info(fmt::format("{} n={} {} {}: {}", to_string(kind), n, to_string(s), to_string(topo),
                             r.counterexample->detail));
        }
      }
    }
  };
  for (auto kind : {AdderKind::VBE, AdderKind::CDKM}) {
    for (int n = 1; n <= 6; ++n) run(kind, n);
  }
  for (int n : {2, 4}) run(AdderKind::LOOKAHEAD, n);
  const double secs = seconds_since(t0);
  v.check(failures == 0, fmt::format("{} configurations, {} input pairs, {} counterexamples", configs, cases,
                                     failures));
  v.check(secs < kSemanticsRuntimeLimitS, fmt::format("runtime {:.1f} s (limit {:.0f} s)", secs,
                                                      kSemanticsRuntimeLimitS));
  return v;
}

Verdict criterion6() {
  Verdict v;
  TimingModel tm;
  for (int n : kSweepSizes) {
    const auto d = distribute(AdderKind::CDKM, n, Strategy::TELEDATA, TopologyKind::LINE);
    const int m = d.placement.nodes;
    const Time got = schedule(d, CostModel::timed(tm)).makespan;
    const Time closed = cdkm_line_closed_form(n, m, tm);
    const Time slack = (m - 1) * tm.t_local_1q;
    v.check(std::llabs(got - closed) <= slack,
            fmt::format("CDKM line teledata n={} m={}: {} ns vs closed form {} ns (allowed +/-{})", n, m, got,
                        closed, slack));
  }
  for (auto [t_epr, target] : {std::pair{kFastEpr, kPenaltyAtFastEpr}, std::pair{kSlowEpr, kPenaltyAtSlowEpr}}) {
    TimingModel t = tm;
    t.t_epr = t_epr;
    const double ratio = penalty_ratio(AdderKind::LOOKAHEAD, kPenaltySize, TopologyKind::FULLY2, t);
    v.check(std::abs(ratio - target) <= kPenaltyTolerance * target,
            fmt::format("lookahead 2fully penalty at t_epr={} n={}: {:.2f} (target {} +/-{:.0f}%)", t_epr,
                        kPenaltySize, ratio, target, 100 * kPenaltyTolerance));
    for (int n : {16, 128}) {
      v.info(fmt::format("  n={}: {:.2f}", n, penalty_ratio(AdderKind::LOOKAHEAD, n, TopologyKind::FULLY2, t)));
    }
  }
  return v;
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::ostringstream os;
  write_sweep(os, rows);
  return os.str();
}

Verdict criterion7(std::string* csv) {
  Verdict v;
  const std::vector<SweepConfig> configs = {{AdderKind::CDKM, TopologyKind::LINE},
                                            {AdderKind::LOOKAHEAD, TopologyKind::FULLY2}};
  const auto rows = sweep({kFastEpr, kSlowEpr}, kSweepSizes, Strategy::TELEDATA, configs, TimingModel{});
  *csv = sweep_csv(rows);
  std::map<std::tuple<Time, AdderKind, int>, Time> at;
  for (const auto& r : rows) at[{r.t_epr, r.adder, r.n}] = r.latency;
  for (const auto& r : fastest(rows)) {
    const AdderKind expected = r.t_epr == kFastEpr || r.n >= 512 ? AdderKind::LOOKAHEAD : AdderKind::CDKM;
    v.check(r.adder == expected,
            fmt::format("t_epr={} n={}: fastest {} (expected {}); cdkm/line {} ns, lookahead/2fully {} ns", r.t_epr,
                        r.n, to_string(r.adder), to_string(expected), at[{r.t_epr, AdderKind::CDKM, r.n}],
                        at[{r.t_epr, AdderKind::LOOKAHEAD, r.n}]));
  }
  return v;
}

std::string cells_csv(const std::vector<LatencyReport>& reports) {
  std::vector<Cell> cells;
  for (const auto& r : reports) cells.push_back(to_cell(r));
  std::ostringstream os;
  write_cells(os, cells);
  return os.str();
}

// Table runs were made with validation on, so reaching this point means every
// table schedule passed the validator; timed schedules are validated here.
Verdict criterion8(const TableRun& t1, const TableRun& t2, const std::string& sweep_first) {
  Verdict v;
  v.check(true, fmt::format("{} model A and {} model B schedules validated", t1.reports.size(), t2.reports.size()));
  std::size_t timed = 0;
  std::string timed_error;
  for (auto a : {AdderKind::VBE, AdderKind::CDKM, AdderKind::LOOKAHEAD}) {
    for (auto s : {Strategy::BASELINE, Strategy::TELEGATE, Strategy::TELEDATA}) {
      for (auto topo : kTopologies) {
        for (int n : {16, 128}) {
          if (!applicable(a, topo)) continue;
          try {
            latency(a, n, s, topo, CostModel::timed(TimingModel{}), true);
            ++timed;
          } catch (const std::exception& e) {
            timed_error = fmt::format("{}/{}/{}/{}: {}", to_string(a), to_string(s), to_string(topo), n, e.what());
          }
        }
      }
    }
  }
  v.check(timed_error.empty(), fmt::format("{} timed schedules validated{}", timed,
                                           timed_error.empty() ? "" : "; " + timed_error));

  std::size_t compared = 0;
  std::vector<std::string> violations;
  for (const auto& r : t1.reports) {
    if (r.strategy != Strategy::TELEDATA || !r.makespan) continue;
    const auto gate = actual(t1, r.adder, r.n, Strategy::TELEGATE, r.topology);
    ++compared;
    if (!gate || *r.makespan > *gate) {
      violations.push_back(fmt::format("{}/{}/{}: teledata {} telegate {}", to_string(r.adder),
                                       to_string(r.topology), r.n, *r.makespan, show(gate)));
    }
  }
  v.check(violations.empty(), fmt::format("teledata <= telegate in {}/{} configurations", compared - violations.size(),
                                          compared));
  for (const auto& s : violations) v.info(s);

  // Determinism: rerun the model A grid up to n = 128, a circuit and the sweep.
  std::vector<Cell> small;
  std::vector<LatencyReport> first;
  for (std::size_t i = 0; i < t1.golden.size(); ++i) {
    if (t1.golden[i].n <= 128) {
      small.push_back(t1.golden[i]);
      first.push_back(t1.reports[i]);
    }
  }
  v.check(cells_csv(reproduce(small)) == cells_csv(first),
          fmt::format("model A grid ({} cells) byte-identical on rerun", small.size()));
  const auto circuit = [] {
    const auto a = generate(AdderKind::CDKM, 8);
    return to_text(rewrite(a.circuit, place(a, Strategy::TELEDATA), TopologyKind::LINE).circuit);
  };
  v.check(circuit() == circuit(), "rewritten circuit text byte-identical on rerun");
  const auto again = sweep({kFastEpr, kSlowEpr}, kSweepSizes, Strategy::TELEDATA,
                           {{AdderKind::CDKM, TopologyKind::LINE}, {AdderKind::LOOKAHEAD, TopologyKind::FULLY2}},
                           TimingModel{});
  v.check(sweep_csv(again) == sweep_first, "sweep CSV byte-identical on rerun");
  return v;
}

}  // namespace

int main() {
  const char* titles[] = {
      "",
      "golden latency table, model A",
      "golden latency table, model B",
      "closed-form makespans under model A",
      "lookahead CCNOT depth",
      "exhaustive semantic equivalence",
      "timed model: CDKM line closed form and lookahead penalty",
      "crossover between CDKM/line and lookahead/2fully",
      "schedule validity, teledata dominance, determinism",
  };
  bool all = true;
  auto report = [&](int k, Verdict v) {
    fmt::print("{} criterion {}: {}\n", v.pass ? "PASS" : "FAIL", k, titles[k]);
    for (const auto& l : v.lines) fmt::print("    {}\n", l);
    std::fflush(stdout);
    all = all && v.pass;
  };

  auto guarded = [&](int k, const std::function<Verdict()>& f) {
    try {
      report(k, f());
    } catch (const std::exception& e) {
      Verdict v;
      v.check(false, fmt::format("aborted: {}", e.what()));
      report(k, v);
    }
  };

  TableRun t1, t2;
  std::string sweep_first;
  guarded(1, [&] {
    t1 = run_table("table1.csv", true);
    return criterion1(t1);
  });
  guarded(2, [&] {
    t2 = run_table("table2.csv", true);
    return criterion2(t1, t2);
  });
  guarded(3, criterion3);
  guarded(4, criterion4);
  guarded(5, criterion5);
  guarded(6, criterion6);
  guarded(7, [&] { return criterion7(&sweep_first); });
  guarded(8, [&] { return criterion8(t1, t2, sweep_first); });
  return all ? 0 : 1;
}
