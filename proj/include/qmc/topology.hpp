// Interconnect topologies as schedulable communication resources.
#pragma once

#include <string_view>
#include <vector>

namespace qmc {

enum class TopologyKind { BUS, BUS2, LINE, FULLY, FULLY2 };

std::string_view to_string(TopologyKind t);
TopologyKind parse_topology(std::string_view s);

struct Topology {
  TopologyKind kind = TopologyKind::BUS;
  int m = 2;  // node count
};

/// Flat resource ids: channels first, then transceivers (node * 2 + k).
struct ResourceSet {
  TopologyKind kind = TopologyKind::BUS;
  int m = 0;
  int channels = 0;              // shared channels / links; 0 when unconstrained
  int networks = 1;              // independent full networks (FULLY / FULLY2)
  int transceivers_per_node = 1;

  int channel_id(int ch) const { return ch; }
  int transceiver_id(int node, int k) const { return channels + node * 2 + k; }
  int total() const { return channels + m * 2; }
};

ResourceSet build_resources(const Topology& t);

/// True iff `channel` connects u and v.  For FULLY / FULLY2 the channel names
/// the network (0, or 0/1).
bool admissible(const Topology& t, int u, int v, int channel);

/// Maximum number of simultaneous transactions the resources allow.
int concurrency_bound(const Topology& t);

/// Every resource combination a single u-v transaction may claim, in
/// preference order.  Empty when u and v cannot transact directly.
std::vector<std::vector<int>> claim_options(const ResourceSet& rs, int u, int v);

/// Transceiver index a node uses toward a neighbour on LINE (0 left, 1 right);
/// 0 for every other topology.
int line_side(int from, int to);

}  // namespace qmc
