// Table reproduction against golden data, timing sweeps and reports.
#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "qmc/scheduler.hpp"

namespace qmc {

/// One row of a latency CSV (`adder,n,strategy,topology,model,latency,units`).
/// An empty latency stands for N/A.
struct Cell {
  AdderKind adder = AdderKind::VBE;
  int n = 0;
  Strategy strategy = Strategy::TELEGATE;
  TopologyKind topology = TopologyKind::BUS;
  CostModelKind model = CostModelKind::UNITS_TELEPORT;
  std::optional<Time> latency;
  std::string units;
};

inline constexpr const char* kCsvHeader = "adder,n,strategy,topology,model,latency,units";

std::vector<Cell> read_cells(std::istream& is);
std::vector<Cell> load_cells(const std::string& path);
void write_cells(std::ostream& os, const std::vector<Cell>& cells);
Cell to_cell(const LatencyReport& r);

enum class CellStatus {
  MATCH,           // exact
  DOCUMENTED,      // known open question, within 5%
  DEVIATION,       // anything else
  NOT_APPLICABLE,  // N/A in both
};
std::string_view to_string(CellStatus s);

struct CellDiff {
  Cell golden;
  std::optional<Time> actual;
  CellStatus status = CellStatus::DEVIATION;
  double relative_error = 0.0;  // (actual - golden) / golden
  std::string note;
};

struct TableDiff {
  std::vector<CellDiff> cells;
  std::size_t count(CellStatus s) const;
  /// True when every cell is a match, N/A or a documented open question.
  bool ok() const;
};

/// Note for golden cells whose published value is not reproducible from the
/// stated construction; empty for every other cell.
std::string open_question(const Cell& golden);

/// Schedules every cell listed in `golden` (cells run concurrently) under the
/// golden cells' cost model.
std::vector<LatencyReport> reproduce(const std::vector<Cell>& golden, bool validate = false);

TableDiff diff(const std::vector<Cell>& golden, const std::vector<LatencyReport>& actual);
void write_diff(std::ostream& os, const TableDiff& d);

struct SweepConfig {
  AdderKind adder;
  TopologyKind topology;
};

struct SweepRow {
  Time t_epr = 0;
  int n = 0;
  AdderKind adder = AdderKind::VBE;
  Strategy strategy = Strategy::TELEDATA;
  TopologyKind topology = TopologyKind::BUS;
  Time latency = 0;
  bool fastest = false;  // lowest latency among the configurations at (t_epr, n)
};

/// Timed latency for every (t_epr, n, config) point, sorted by t_epr, n,
/// adder, topology.  Points run concurrently.  Configurations not mapped to a
/// topology (lookahead on LINE) are skipped, as are lookahead sizes that are
/// not powers of two.
std::vector<SweepRow> sweep(const std::vector<Time>& t_eprs, const std::vector<int>& sizes, Strategy s,
                            const std::vector<SweepConfig>& configs, const TimingModel& base);

/// The fastest row at each (t_epr, n).
std::vector<SweepRow> fastest(const std::vector<SweepRow>& rows);

void write_sweep(std::ostream& os, const std::vector<SweepRow>& rows);

/// Human-readable summary of one configuration.
void write_report(std::ostream& os, AdderKind adder, int n, Strategy s, TopologyKind t, const TimingModel& tm);

}  // namespace qmc
