#include "qmc/topology.hpp"

#include <cstdlib>
#include <stdexcept>

#include <fmt/format.h>

namespace qmc {

std::string_view to_string(TopologyKind t) {
  switch (t) {
  case TopologyKind::BUS: return "bus";
  case TopologyKind::BUS2: return "2bus";
  case TopologyKind::LINE: return "line";
  case TopologyKind::FULLY: return "fully";
  case TopologyKind::FULLY2: return "2fully";
  }
  return "?";
}

TopologyKind parse_topology(std::string_view s) {
  if (s == "bus") return TopologyKind::BUS;
  if (s == "2bus") return TopologyKind::BUS2;
  if (s == "line") return TopologyKind::LINE;
  if (s == "fully") return TopologyKind::FULLY;
  if (s == "2fully") return TopologyKind::FULLY2;
  throw std::invalid_argument(fmt::format("unknown topology '{}'", s));
}

ResourceSet build_resources(const Topology& t) {
  if (t.m < 2) {
    throw std::invalid_argument(fmt::format("topology needs at least 2 nodes, got {}", t.m));
  }
  ResourceSet rs;
  rs.kind = t.kind;
  rs.m = t.m;
  switch (t.kind) {
  case TopologyKind::BUS:
    rs.channels = 1;
    rs.transceivers_per_node = 1;
    break;
  case TopologyKind::BUS2:
    rs.channels = 2;
    rs.transceivers_per_node = 2;
    break;
  case TopologyKind::LINE:
    rs.channels = t.m - 1;
    rs.transceivers_per_node = 2;
    break;
  case TopologyKind::FULLY:
    rs.channels = 0;
    rs.transceivers_per_node = 1;
    break;
  case TopologyKind::FULLY2:
    rs.channels = 0;
    rs.networks = 2;
    rs.transceivers_per_node = 2;
    break;
  }
  return rs;
}

bool admissible(const Topology& t, int u, int v, int channel) {
  if (u == v || u < 0 || v < 0 || u >= t.m || v >= t.m) {
    return false;
  }
  switch (t.kind) {
  case TopologyKind::BUS:
  case TopologyKind::FULLY: return channel == 0;
  case TopologyKind::BUS2:
  case TopologyKind::FULLY2: return channel == 0 || channel == 1;
  case TopologyKind::LINE: return std::abs(u - v) == 1 && channel == std::min(u, v);
  }
  return false;
}

int concurrency_bound(const Topology& t) {
  switch (t.kind) {
  case TopologyKind::BUS: return 1;
  case TopologyKind::BUS2: return 2;
  case TopologyKind::LINE: return t.m - 1;
  case TopologyKind::FULLY: return t.m / 2;
  case TopologyKind::FULLY2: return t.m;
  }
  return 0;
}

int line_side(int from, int to) { return to > from ? 1 : 0; }

std::vector<std::vector<int>> claim_options(const ResourceSet& rs, int u, int v) {
  std::vector<std::vector<int>> out;
  if (u == v || u < 0 || v < 0 || u >= rs.m || v >= rs.m) {
    return out;
  }
  switch (rs.kind) {
  case TopologyKind::BUS:
    out.push_back({rs.channel_id(0), rs.transceiver_id(u, 0), rs.transceiver_id(v, 0)});
    break;
  case TopologyKind::BUS2:
    for (int k = 0; k < 2; ++k) {
      out.push_back({rs.channel_id(k), rs.transceiver_id(u, k), rs.transceiver_id(v, k)});
    }
    break;
  case TopologyKind::LINE:
    if (std::abs(u - v) == 1) {
      out.push_back({rs.channel_id(std::min(u, v)), rs.transceiver_id(u, line_side(u, v)),
                     rs.transceiver_id(v, line_side(v, u))});
    }
    break;
  case TopologyKind::FULLY:
    out.push_back({rs.transceiver_id(u, 0), rs.transceiver_id(v, 0)});
    break;
  case TopologyKind::FULLY2:
    for (int k = 0; k < 2; ++k) {
      out.push_back({rs.transceiver_id(u, k), rs.transceiver_id(v, k)});
    }
    break;
  }
  return out;
}

}  // namespace qmc
