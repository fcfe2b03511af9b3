#include "qmc/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <future>
#include <map>
#include <sstream>
#include <thread>

#include <fmt/format.h>
#include <fmt/ostream.h>

namespace qmc {

namespace {

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream ss(line);
  while (std::getline(ss, field, sep)) out.push_back(field);
  if (!line.empty() && line.back() == sep) out.emplace_back();
  return out;
}

std::string trim(std::string s) {
  const auto first = s.find_first_not_of(" \t\r");
  const auto last = s.find_last_not_of(" \t\r");
  return first == std::string::npos ? std::string{} : s.substr(first, last - first + 1);
}

// Runs f(i) for i in [0, n) on a small thread pool; results keep index order.
template <class F>
auto parallel_map(std::size_t n, F f) -> std::vector<decltype(f(std::size_t{}))> {
  using R = decltype(f(std::size_t{}));
  std::vector<std::optional<R>> slots(n);
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  const unsigned workers = std::max(1u, std::min<unsigned>(std::thread::hardware_concurrency(), 8u));
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) {
        try {
          slots[i] = f(i);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!error) error = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
  std::vector<R> out;
  out.reserve(n);
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

}  // namespace

std::vector<Cell> read_cells(std::istream& is) {
  std::vector<Cell> out;
  std::string line;
  int lineno = 0;
  bool header = false;
  while (std::getline(is, line)) {
    ++lineno;
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    if (!header) {
      if (line != kCsvHeader) {
        throw std::runtime_error(fmt::format("line {}: expected header '{}'", lineno, kCsvHeader));
      }
      header = true;
      continue;
    }
    const auto f = split(line, ',');
    if (f.size() != 7) {
      throw std::runtime_error(fmt::format("line {}: expected 7 fields, got {}", lineno, f.size()));
    }
    try {
      Cell c;
      c.adder = parse_adder(trim(f[0]));
      c.n = std::stoi(f[1]);
      c.strategy = parse_strategy(trim(f[2]));
      c.topology = parse_topology(trim(f[3]));
      c.model = parse_cost_model(trim(f[4]));
      if (trim(f[5]) != "N/A") c.latency = std::stoll(f[5]);
      c.units = trim(f[6]);
      out.push_back(c);
    } catch (const std::exception& e) {
      throw std::runtime_error(fmt::format("line {}: {}", lineno, e.what()));
    }
  }
  if (!header) throw std::runtime_error("missing CSV header");
  return out;
}

std::vector<Cell> load_cells(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error(fmt::format("cannot open {}", path));
  return read_cells(is);
}

void write_cells(std::ostream& os, const std::vector<Cell>& cells) {
  os << kCsvHeader << '\n';
  for (const auto& c : cells) {
    fmt::print(os, "{},{},{},{},{},{},{}\n", to_string(c.adder), c.n, to_string(c.strategy), to_string(c.topology),
               to_string(c.model), c.latency ? fmt::format("{}", *c.latency) : "N/A", c.units);
  }
}

Cell to_cell(const LatencyReport& r) {
  Cell c;
  c.adder = r.adder;
  c.n = r.n;
  c.strategy = r.strategy;
  c.topology = r.topology;
  c.model = r.model;
  c.latency = r.makespan;
  switch (r.model) {
  case CostModelKind::UNITS_TELEPORT: c.units = "teleports"; break;
  case CostModelKind::UNITS_EPR_PIPELINED: c.units = "eprs"; break;
  case CostModelKind::TIMED: c.units = "ns"; break;
  }
  return c;
}

std::string_view to_string(CellStatus s) {
  switch (s) {
  case CellStatus::MATCH: return "match";
  case CellStatus::DOCUMENTED: return "documented";
  case CellStatus::DEVIATION: return "deviation";
  case CellStatus::NOT_APPLICABLE: return "n/a";
  }
  return "?";
}

std::size_t TableDiff::count(CellStatus s) const {
  return static_cast<std::size_t>(
      std::count_if(cells.begin(), cells.end(), [&](const CellDiff& d) { return d.status == s; }));
}

bool TableDiff::ok() const { return count(CellStatus::DEVIATION) == 0; }

std::string open_question(const Cell& g) {
  if (g.model != CostModelKind::UNITS_TELEPORT || g.adder != AdderKind::LOOKAHEAD || g.n != 16) return {};
  if (g.strategy == Strategy::TELEGATE && g.topology == TopologyKind::BUS) {
    return "84 three-node Toffolis and 14 CNOTs at 5 and 1 units give 434, not 444";
  }
  if (g.strategy == Strategy::TELEDATA && g.topology == TopologyKind::FULLY2) {
    return "halving the fully-connected cost gives 52, not 56";
  }
  return {};
}

std::vector<LatencyReport> reproduce(const std::vector<Cell>& golden, bool validate) {
  return parallel_map(golden.size(), [&](std::size_t i) {
    const auto& g = golden[i];
    CostModel cm{g.model, {}};
    return latency(g.adder, g.n, g.strategy, g.topology, cm, validate);
  });
}

TableDiff diff(const std::vector<Cell>& golden, const std::vector<LatencyReport>& actual) {
  TableDiff out;
  for (const auto& g : golden) {
    CellDiff d;
    d.golden = g;
    auto it = std::find_if(actual.begin(), actual.end(), [&](const LatencyReport& r) {
      return r.adder == g.adder && r.n == g.n && r.strategy == g.strategy && r.topology == g.topology &&
             r.model == g.model;
    });
    if (it != actual.end()) d.actual = it->makespan;
    d.note = open_question(g);
    if (!g.latency && !d.actual) {
      d.status = CellStatus::NOT_APPLICABLE;
    } else if (g.latency && d.actual && *g.latency == *d.actual) {
      d.status = CellStatus::MATCH;
    } else {
      if (g.latency && d.actual && *g.latency != 0) {
        d.relative_error = static_cast<double>(*d.actual - *g.latency) / static_cast<double>(*g.latency);
      }
      const bool documented = !d.note.empty() && d.actual && std::abs(d.relative_error) <= 0.05;
      d.status = documented ? CellStatus::DOCUMENTED : CellStatus::DEVIATION;
    }
    out.cells.push_back(std::move(d));
  }
  return out;
}

void write_diff(std::ostream& os, const TableDiff& d) {
  os << "adder,n,strategy,topology,model,golden,actual,status,relative_error,note\n";
  for (const auto& c : d.cells) {
    const auto& g = c.golden;
    fmt::print(os, "{},{},{},{},{},{},{},{},{:.4f},{}\n", to_string(g.adder), g.n, to_string(g.strategy),
               to_string(g.topology), to_string(g.model), g.latency ? fmt::format("{}", *g.latency) : "N/A",
               c.actual ? fmt::format("{}", *c.actual) : "N/A", to_string(c.status), c.relative_error, c.note);
  }
  fmt::print(os, "# {} cells: {} match, {} documented, {} deviation, {} n/a\n", d.cells.size(),
             d.count(CellStatus::MATCH), d.count(CellStatus::DOCUMENTED), d.count(CellStatus::DEVIATION),
             d.count(CellStatus::NOT_APPLICABLE));
}

std::vector<SweepRow> sweep(const std::vector<Time>& t_eprs, const std::vector<int>& sizes, Strategy s,
                            const std::vector<SweepConfig>& configs, const TimingModel& base) {
  std::vector<SweepRow> points;
  for (Time t : t_eprs) {
    for (int n : sizes) {
      for (const auto& c : configs) {
        if (!applicable(c.adder, c.topology)) continue;
        if (c.adder == AdderKind::LOOKAHEAD && !is_power_of_two(n)) continue;
        points.push_back({t, n, c.adder, s, c.topology, 0, false});
      }
    }
  }
  auto latencies = parallel_map(points.size(), [&](std::size_t i) {
    TimingModel tm = base;
    tm.t_epr = points[i].t_epr;
    return timed_latency(points[i].adder, points[i].n, s, points[i].topology, tm);
  });
  for (std::size_t i = 0; i < points.size(); ++i) points[i].latency = latencies[i];
  std::sort(points.begin(), points.end(), [](const SweepRow& a, const SweepRow& b) {
    return std::tie(a.t_epr, a.n, a.adder, a.topology) < std::tie(b.t_epr, b.n, b.adder, b.topology);
  });
  std::map<std::pair<Time, int>, std::size_t> best;
  for (std::size_t i = 0; i < points.size(); ++i) {
    const auto key = std::pair{points[i].t_epr, points[i].n};
    auto it = best.find(key);
    if (it == best.end() || points[i].latency < points[it->second].latency) best[key] = i;
  }
  for (const auto& [key, i] : best) points[i].fastest = true;
  return points;
}

std::vector<SweepRow> fastest(const std::vector<SweepRow>& rows) {
  std::vector<SweepRow> out;
  std::copy_if(rows.begin(), rows.end(), std::back_inserter(out), [](const SweepRow& r) { return r.fastest; });
  return out;
}

void write_sweep(std::ostream& os, const std::vector<SweepRow>& rows) {
  os << "t_epr,n,adder,strategy,topology,latency,units,fastest\n";
  for (const auto& r : rows) {
    fmt::print(os, "{},{},{},{},{},{},ns,{}\n", r.t_epr, r.n, to_string(r.adder), to_string(r.strategy),
               to_string(r.topology), r.latency, r.fastest ? 1 : 0);
  }
}

void write_report(std::ostream& os, AdderKind adder, int n, Strategy s, TopologyKind t, const TimingModel& tm) {
  fmt::print(os, "adder {} n={} strategy {} topology {}\n", to_string(adder), n, to_string(s), to_string(t));
  if (!applicable(adder, t)) {
    fmt::print(os, "not mapped to this topology (N/A)\n");
    return;
  }
  const auto d = distribute(adder, n, s, t);
  const auto census = remote_op_census(d);
  fmt::print(os, "nodes {}  gates {}  moves {}  remote gates {}  EPR pairs {}\n", d.placement.nodes,
             d.circuit.size(), census.moves, census.rgates, census.epr_pairs);
  fmt::print(os, "monolithic CCNOTs needing communication: {} two-node, {} three-node\n", census.two_node_ccnots,
             census.three_node_ccnots);
  for (const auto& cm : {CostModel::teleport_units(), CostModel::epr_units(), CostModel::timed(tm)}) {
    const auto sched = schedule(d, cm);
    Time busiest = 0;
    for (const auto& [r, b] : sched.busy) busiest = std::max(busiest, b);
    fmt::print(os, "model {}: latency {} {}  busiest resource {:.0f}% busy\n", to_string(cm.kind), sched.makespan,
               cm.units(), sched.makespan ? 100.0 * static_cast<double>(busiest) / sched.makespan : 0.0);
  }
  const Time timed = schedule(d, CostModel::timed(tm)).makespan;
  const Time mono = monolithic_latency(adder, n, tm);
  fmt::print(os, "monolithic {} ns  ratio {:.2f}\n", mono, mono ? static_cast<double>(timed) / mono : 0.0);
  fmt::print(os, "2.8e6 additions: {} distributed, {} monolithic\n", format_duration(shor_adder_budget(timed)),
             format_duration(shor_adder_budget(mono)));
}

}  // namespace qmc
