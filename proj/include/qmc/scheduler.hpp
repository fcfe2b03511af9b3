// Resource-constrained list scheduling under three cost models.
#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "qmc/adders.hpp"
#include "qmc/placement.hpp"
#include "qmc/topology.hpp"

namespace qmc {

using Time = std::int64_t;

enum class CostModelKind {
  UNITS_TELEPORT,       // A: one unit per remote operation, local gates free
  UNITS_EPR_PIPELINED,  // B: one unit per EPR pair, created ahead of use
  TIMED,                // C: nanoseconds per duration class
};

std::string_view to_string(CostModelKind k);  // "A", "B", "C"
CostModelKind parse_cost_model(std::string_view s);

struct TimingModel {
  Time t_ccnot = 50;
  Time t_cnot = 10;
  Time t_not = 1;
  Time t_classical = 10;
  Time t_epr = 10;
  Time t_local_1q = 1;

  Time duration(DurationClass d) const;
  Time duration(const Gate& g) const;
  void validate() const;  // throws std::invalid_argument on negative values
};

/// t_epr values of the timing sweep: 10, 20, 40, ..., 1280 ns.
std::vector<Time> sweep_t_epr();

struct CostModel {
  CostModelKind kind = CostModelKind::UNITS_TELEPORT;
  TimingModel timings;

  static CostModel teleport_units() { return {CostModelKind::UNITS_TELEPORT, {}}; }
  static CostModel epr_units() { return {CostModelKind::UNITS_EPR_PIPELINED, {}}; }
  static CostModel timed(const TimingModel& tm) { return {CostModelKind::TIMED, tm}; }
  std::string units() const;  // "teleports", "eprs" or "ns"
};

struct Hold {
  int resource = 0;
  Time start = 0;
  Time end = 0;
};

struct Event {
  std::vector<int> gates;  // one gate, or a whole idiom under model A
  Time start = 0;
  Time end = 0;
  std::vector<Hold> holds;
};

struct Schedule {
  std::vector<Event> events;  // in start order
  Time makespan = 0;
  std::map<int, Time> busy;   // resource id -> total time held
};

class SchedulerError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Scheduling dependencies of a rewritten circuit.  Consecutive uses of a
/// qubit as a control (or as an X-type target) commute and are left
/// unordered; transceiver qubits carry no ordering between different idioms,
/// since the resource claims already serialize them.
std::vector<std::vector<int>> scheduling_deps(const Circuit& c);

/// Greedy list schedule.  Priority is the longest remaining weighted path,
/// ties broken by lowest gate id.
Schedule schedule(const Distributed& d, const CostModel& cm);

/// Every qubit on one node, no communication, in the circuit's own gate order.
Schedule schedule_monolithic(const Circuit& c, const TimingModel& tm);

/// Replays a schedule: dependency order, durations, resource exclusivity and
/// admissibility of every EPR claim.  Returns an empty string when valid.
std::string validate_schedule(const Schedule& s, const Distributed& d, const CostModel& cm);

struct LatencyReport {
  AdderKind adder = AdderKind::VBE;
  int n = 0;
  Strategy strategy = Strategy::TELEGATE;
  TopologyKind topology = TopologyKind::BUS;
  CostModelKind model = CostModelKind::UNITS_TELEPORT;
  std::optional<Time> makespan;  // empty for N/A cells
  RemoteCensus census;
  std::map<int, double> utilization;  // resource id -> busy fraction
};

/// N/A cells: lookahead on LINE.
bool applicable(AdderKind adder, TopologyKind t);

Distributed distribute(AdderKind adder, int n, Strategy s, TopologyKind t);

LatencyReport latency(AdderKind adder, int n, Strategy s, TopologyKind t, const CostModel& cm,
                      bool validate = false);

std::vector<LatencyReport> latency_table(const std::vector<AdderKind>& adders, const std::vector<int>& sizes,
                                         const std::vector<Strategy>& strategies,
                                         const std::vector<TopologyKind>& topologies, const CostModel& cm);

Time timed_latency(AdderKind adder, int n, Strategy s, TopologyKind t, const TimingModel& tm);
Time monolithic_latency(AdderKind adder, int n, const TimingModel& tm);

/// Closed-form CDKM teledata latency on a line of m nodes:
/// 2 t_epr + (m - 1) t_tele + (2n - 1) t_ccnot, with t_tele one measurement,
/// one classical message and three single-qubit gates.
Time cdkm_line_closed_form(int n, int m, const TimingModel& tm);
Time teleport_time(const TimingModel& tm);

/// Distributed over monolithic latency for the teledata rewrite.
double penalty_ratio(AdderKind adder, int n, TopologyKind t, const TimingModel& tm);
/// Large-n limit for CDKM on a line: (t_tele + 2 t_ccnot) / (2 t_ccnot).
double cdkm_line_penalty_limit(const TimingModel& tm);

/// Wall-clock time of the 2.8 million additions of a 1024-bit modular
/// exponentiation, in seconds, for an adder latency in nanoseconds.
double shor_adder_budget(double adder_latency_ns);
std::string format_duration(double seconds);

}  // namespace qmc
