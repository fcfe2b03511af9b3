// Qubit-to-node placement and the teledata / telegate rewrites.
#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "qmc/adders.hpp"
#include "qmc/circuit.hpp"
#include "qmc/topology.hpp"

namespace qmc {

enum class Strategy { BASELINE, TELEGATE, TELEDATA };

std::string_view to_string(Strategy s);
Strategy parse_strategy(std::string_view s);

class PlacementError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

struct Placement {
  Strategy strategy = Strategy::TELEGATE;
  std::map<std::string, int> node_of;  // logical qubit -> home node
  int nodes = 0;
  int transceivers_per_node = 1;
  int qubits_per_node = 1;  // capacity, including the teledata landing slot

  int node(const std::string& q) const;
  std::vector<int> occupancy() const;
};

/// Logical qubits per node for an adder under a strategy.
int node_capacity(AdderKind adder, Strategy s);

/// Bit-sliced placement.  VBE: node i = {a_i, b_i, c_{i+1}}.  CDKM: node i =
/// {a_i, b_i}, with the carry-in ancilla on node 0 and the carry-out on node
/// n-1 (not counted against the node size).  Lookahead:
/// node i = {a_i, b_i, c_{i+1}} plus the propagate temporary p_i when present.
/// BASELINE puts each qubit of the circuit on its own node in declaration
/// order.
Placement place(const Adder& adder, Strategy s);
Placement place(AdderKind adder, int n, Strategy s);

/// A rewritten circuit with provenance: origin[g] is the id of the monolithic
/// gate that produced rewritten gate g.
struct Distributed {
  Circuit circuit;
  Placement placement;
  TopologyKind topology = TopologyKind::BUS;
  std::vector<int> origin;
  // Per monolithic gate: its kind and the number of distinct home nodes of
  // its operands.
  std::vector<GateKind> source_kind;
  std::vector<int> source_spread;
};

/// Moves data so every multi-node gate runs on one node.  Each move is the
/// teleportation idiom EPR_CREATE, CNOT, H, MEASURE x2, CLASSICAL_MSG,
/// conditioned X and Z; moves between non-adjacent LINE nodes hop link by
/// link.  Qubits stay where they were last used until another gate needs them
/// elsewhere; operands brought in for a gate spanning three nodes are sent
/// back right after it.
Distributed rewrite_teledata(const Circuit& c, const Placement& p, TopologyKind topology);

/// Keeps data in place and teleports gates.  A node-spanning CNOT becomes one
/// remote-gate idiom (one EPR pair); a node-spanning CCNOT becomes the
/// five-gate controlled-sqrt(X) construction, with the control that shares
/// the target's node in the middle role.  On LINE, when the outer control and
/// the target are not adjacent, the last controlled-V is replaced by
/// SWAP, controlled-V, SWAP so that only neighbouring nodes interact; any
/// remaining non-adjacent interaction is relayed by entanglement swapping.
Distributed rewrite_telegate(const Circuit& c, const Placement& p, TopologyKind topology);

Distributed rewrite(const Circuit& c, const Placement& p, TopologyKind topology);

/// Contiguous communication idiom inside a rewritten circuit.
struct Idiom {
  enum class Kind { MOVE, RGATE };
  Kind kind = Kind::RGATE;
  int first = 0;              // gate id of the first EPR_CREATE
  int last = 0;               // last gate id of the idiom
  std::vector<int> eprs;      // EPR_CREATE gate ids, one per hop
  int from = 0;               // endpoint nodes
  int to = 0;
};

/// Groups the gates of a rewritten circuit into idioms.  idiom_of[g] is the
/// index into the returned list, or -1 for ordinary gates.
std::vector<Idiom> find_idioms(const Circuit& c, std::vector<int>* idiom_of = nullptr);

struct RemoteCensus {
  std::size_t moves = 0;
  std::size_t rgates = 0;
  std::size_t epr_pairs = 0;
  std::map<int, std::size_t> by_node_distance;  // |from - to| -> idioms
  std::size_t two_node_ccnots = 0;    // monolithic CCNOTs needing remote work
  std::size_t three_node_ccnots = 0;
  std::size_t two_node_cnots = 0;
};

RemoteCensus remote_op_census(const Distributed& d);
RemoteCensus remote_op_census(const Circuit& c);

}  // namespace qmc
