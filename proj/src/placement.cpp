#include "qmc/placement.hpp"

#include <algorithm>
#include <cstdlib>
#include <limits>
#include <optional>
#include <tuple>
#include <set>

#include <fmt/format.h>

namespace qmc {

std::string_view to_string(Strategy s) {
  switch (s) {
  case Strategy::BASELINE: return "baseline";
  case Strategy::TELEGATE: return "telegate";
  case Strategy::TELEDATA: return "teledata";
  }
  return "?";
}

Strategy parse_strategy(std::string_view s) {
  if (s == "baseline") return Strategy::BASELINE;
  if (s == "telegate") return Strategy::TELEGATE;
  if (s == "teledata") return Strategy::TELEDATA;
  throw std::invalid_argument(fmt::format("unknown strategy '{}'", s));
}

int Placement::node(const std::string& q) const {
  auto it = node_of.find(q);
  if (it == node_of.end()) {
    throw PlacementError(fmt::format("qubit '{}' is not placed", q));
  }
  return it->second;
}

std::vector<int> Placement::occupancy() const {
  std::vector<int> occ(nodes, 0);
  for (const auto& [q, n] : node_of) {
    ++occ.at(n);
  }
  return occ;
}

int node_capacity(AdderKind adder, Strategy s) {
  if (s == Strategy::BASELINE) {
    return 1;
  }
  const int base = adder == AdderKind::CDKM ? 2 : adder == AdderKind::VBE ? 3 : 4;
  return s == Strategy::TELEDATA ? base + 1 : base;
}

Placement place(const Adder& adder, Strategy s) {
  const auto& c = adder.circuit;
  const int n = adder.layout.n;
  Placement p;
  p.strategy = s;
  p.qubits_per_node = node_capacity(adder.kind, s);
  if (s == Strategy::BASELINE) {
    for (std::size_t q = 0; q < c.num_qubits(); ++q) {
      p.node_of[c.qubit_name(q)] = static_cast<int>(q);
    }
    p.nodes = static_cast<int>(c.num_qubits());
    return p;
  }
  for (const auto& name : c.qubit_names()) {
    const auto q = parse_qubit_name(name);
    int node = -1;
    switch (adder.kind) {
    case AdderKind::VBE:
    case AdderKind::LOOKAHEAD:
      node = q.role == "c" ? q.index - 1 : q.index;
      break;
    case AdderKind::CDKM:
      if (q.role == "x") node = 0;
      else if (q.role == "a" || q.role == "b") node = q.index;
      else if (q.role == "c") node = n - 1;
      break;
    }
    if (node < 0) {
      throw PlacementError(fmt::format("no placement rule for qubit '{}'", name));
    }
    p.node_of[name] = node;
    p.nodes = std::max(p.nodes, node + 1);
  }
  // The CDKM carry-in and carry-out ancillae ride along on the end nodes and
  // are not counted against the node size.
  const int resident_limit = p.qubits_per_node - (s == Strategy::TELEDATA ? 1 : 0);
  std::vector<int> occ(p.nodes, 0);
  for (const auto& [name, v] : p.node_of) {
    const auto role = parse_qubit_name(name).role;
    if (adder.kind == AdderKind::CDKM && (role == "x" || role == "c")) continue;
    ++occ[v];
  }
  for (int v = 0; v < p.nodes; ++v) {
    if (occ[v] > resident_limit) {
      throw PlacementError(fmt::format("node {} holds {} qubits, capacity allows {}", v, occ[v], resident_limit));
    }
  }
  if (p.nodes < 2) {
    // Topologies need two nodes; a one-bit adder leaves the second empty.
    p.nodes = 2;
  }
  return p;
}

Placement place(AdderKind adder, int n, Strategy s) { return place(generate(adder, n), s); }

namespace {

class Emitter {
public:
  Emitter(const Circuit& src, const Placement& p, TopologyKind topo) : p_(p), topo_(topo) {
    d_.circuit = Circuit(src.width());
    d_.placement = p;
    d_.topology = topo;
    for (const auto& name : src.qubit_names()) {
      const int q = d_.circuit.add_qubit(name);
      d_.circuit.set_node(q, p.node(name));
    }
    for (const auto& g : src.gates()) {
      std::set<int> homes;
      for (int q : g.operands) {
        homes.insert(p.node(src.qubit_name(q)));
      }
      d_.source_kind.push_back(g.kind);
      d_.source_spread.push_back(static_cast<int>(homes.size()));
    }
  }

  Distributed finish() {
    d_.circuit.validate();
    return std::move(d_);
  }

  void set_origin(int g) { origin_ = g; }

  int home(const std::string& logical) const { return p_.node(logical); }

  int phys(const std::string& logical, int node) {
    if (node == home(logical)) {
      return d_.circuit.qubit(logical);
    }
    const std::string name = fmt::format("{}@{}", logical, node);
    if (auto q = d_.circuit.find_qubit(name)) {
      return *q;
    }
    const int q = d_.circuit.add_qubit(name);
    d_.circuit.set_node(q, node);
    return q;
  }

  int node_of(int q) const { return d_.circuit.node(q); }

  int tx(int node, int toward) {
    const int k = topo_ == TopologyKind::LINE ? line_side(node, toward) : 0;
    const std::string name = fmt::format("tx{}.{}", node, k);
    if (auto q = d_.circuit.find_qubit(name)) {
      return *q;
    }
    const int q = d_.circuit.add_qubit(name);
    d_.circuit.set_node(q, node);
    return q;
  }

  void emit(GateKind k, std::vector<int> ops) {
    d_.circuit.add(k, std::move(ops));
    d_.origin.push_back(origin_);
  }

  std::vector<int> path(int u, int v) const {
    std::vector<int> out{u};
    if (topo_ == TopologyKind::LINE) {
      const int step = v > u ? 1 : -1;
      for (int w = u + step; w != v; w += step) {
        out.push_back(w);
      }
    }
    out.push_back(v);
    return out;
  }

  // Teleports `logical` one hop from node u to node v.
  void move_hop(const std::string& logical, int u, int v) {
    const int s = phys(logical, u);
    const int dst = phys(logical, v);
    const int t = tx(u, v);
    emit(GateKind::EPR_CREATE, {t, dst});
    emit(GateKind::CNOT, {s, t});
    emit(GateKind::HADAMARD, {s});
    emit(GateKind::MEASURE, {s});
    emit(GateKind::MEASURE, {t});
    emit(GateKind::CLASSICAL_MSG, {t, dst});
    emit(GateKind::PAULI_X_COND, {t, dst});
    emit(GateKind::PAULI_Z_COND, {s, dst});
  }

  void move(const std::string& logical, int u, int v) {
    auto hops = path(u, v);
    for (std::size_t i = 0; i + 1 < hops.size(); ++i) {
      move_hop(logical, hops[i], hops[i + 1]);
    }
  }

  // Remote controlled operation `op` from ctrl to tgt (physical qubits on
  // different nodes), relayed by entanglement swapping when the nodes are not
  // neighbours on a line.
  void rgate(GateKind op, int ctrl, int tgt) {
    const auto hops = path(node_of(ctrl), node_of(tgt));
    const std::size_t d = hops.size() - 1;
    std::vector<int> outs(d + 1, -1);
    std::vector<int> ins(d + 1, -1);
    for (std::size_t j = 0; j < d; ++j) {
      outs[j] = tx(hops[j], hops[j + 1]);
      ins[j + 1] = tx(hops[j + 1], hops[j]);
      emit(GateKind::EPR_CREATE, {outs[j], ins[j + 1]});
    }
    for (std::size_t j = 1; j < d; ++j) {
      emit(GateKind::CNOT, {ins[j], outs[j]});
      emit(GateKind::HADAMARD, {ins[j]});
      emit(GateKind::MEASURE, {outs[j]});
      emit(GateKind::MEASURE, {ins[j]});
      emit(GateKind::CLASSICAL_MSG, {outs[j], ins[j + 1]});
      emit(GateKind::PAULI_X_COND, {outs[j], ins[j + 1]});
      emit(GateKind::PAULI_Z_COND, {ins[j], ins[j + 1]});
    }
    const int tu = outs[0];
    const int tv = ins[d];
    emit(GateKind::CNOT, {ctrl, tu});
    emit(GateKind::MEASURE, {tu});
    emit(GateKind::CLASSICAL_MSG, {tu, tv});
    emit(GateKind::PAULI_X_COND, {tu, tv});
    emit(op, {tv, tgt});
    emit(GateKind::HADAMARD, {tv});
    emit(GateKind::MEASURE, {tv});
    emit(GateKind::CLASSICAL_MSG, {tv, tu});
    emit(GateKind::PAULI_Z_COND, {tv, ctrl});
  }

  void two_qubit(GateKind op, int ctrl, int tgt) {
    if (node_of(ctrl) == node_of(tgt)) {
      emit(op, {ctrl, tgt});
    } else {
      rgate(op, ctrl, tgt);
    }
  }

  void swap(int a, int b) {
    if (node_of(a) == node_of(b)) {
      emit(GateKind::SWAP, {a, b});
    } else {
      rgate(GateKind::CNOT, a, b);
      rgate(GateKind::CNOT, b, a);
      rgate(GateKind::CNOT, a, b);
    }
  }

  static bool between(int x, int lo, int hi) { return std::min(lo, hi) < x && x < std::max(lo, hi); }

  void ccnot(int c1, int c2, int t) {
    const int n1 = node_of(c1);
    const int n2 = node_of(c2);
    const int nt = node_of(t);
    if (n1 == n2 && n2 == nt) {
      emit(GateKind::CCNOT, {c1, c2, t});
      return;
    }
    int a = c1;
    int b = c2;
    if (n1 == n2) {
      a = c1;
      b = c2;
    } else if (n1 == nt) {
      a = c2;
      b = c1;
    } else if (n2 == nt) {
      a = c1;
      b = c2;
    } else if (topo_ == TopologyKind::LINE && between(n1, n2, nt)) {
      a = c2;
      b = c1;
    }
    two_qubit(GateKind::SQRT_X, b, t);
    two_qubit(GateKind::CNOT, a, b);
    two_qubit(GateKind::SQRT_X_DAG, b, t);
    two_qubit(GateKind::CNOT, a, b);
    const int na = node_of(a);
    if (topo_ == TopologyKind::LINE && std::abs(na - nt) > 1 && between(node_of(b), na, nt)) {
      swap(a, b);
      two_qubit(GateKind::SQRT_X, b, t);
      swap(a, b);
    } else {
      two_qubit(GateKind::SQRT_X, a, t);
    }
  }

  Circuit& circuit() { return d_.circuit; }

private:
  const Placement& p_;
  TopologyKind topo_;
  Distributed d_;
  int origin_ = -1;
};

std::vector<std::string> operand_names(const Circuit& c, const Gate& g) {
  std::vector<std::string> out;
  for (int q : g.operands) {
    out.push_back(c.qubit_name(q));
  }
  return out;
}

}  // namespace

Distributed rewrite_telegate(const Circuit& c, const Placement& p, TopologyKind topology) {
  Emitter em(c, p, topology);
  for (const auto& g : c.gates()) {
    em.set_origin(g.id);
    std::vector<int> ops;
    for (const auto& name : operand_names(c, g)) {
      ops.push_back(em.phys(name, em.home(name)));
    }
    std::set<int> nodes;
    for (int q : ops) {
      nodes.insert(em.node_of(q));
    }
    if (nodes.size() == 1) {
      em.emit(g.kind, ops);
      continue;
    }
    switch (g.kind) {
    case GateKind::CNOT:
    case GateKind::SQRT_X:
    case GateKind::SQRT_X_DAG:
      em.rgate(g.kind, ops[0], ops[1]);
      break;
    case GateKind::SWAP:
      em.swap(ops[0], ops[1]);
      break;
    case GateKind::CCNOT:
      em.ccnot(ops[0], ops[1], ops[2]);
      break;
    default:
      throw PlacementError(fmt::format("gate {} ({}) cannot be teleported", g.id, to_string(g.kind)));
    }
  }
  return em.finish();
}

Distributed rewrite_teledata(const Circuit& c, const Placement& p, TopologyKind topology) {
  Emitter em(c, p, topology);
  std::map<std::string, int> loc;
  std::vector<int> occ(p.nodes, 0);
  for (const auto& name : c.qubit_names()) {
    loc[name] = p.node(name);
    ++occ.at(loc[name]);
  }
  // Every node keeps at least one landing slot beyond its residents.
  std::vector<int> cap(p.nodes);
  for (int v = 0; v < p.nodes; ++v) {
    cap[v] = std::max(p.qubits_per_node, occ[v] + 1);
  }
  // Gate ids touching each logical qubit, for next-use lookups.
  std::map<std::string, std::vector<int>> uses;
  for (const auto& g : c.gates()) {
    for (int q : g.operands) {
      uses[c.qubit_name(q)].push_back(g.id);
    }
  }
  auto next_use = [&](const std::string& q, int after) -> int {
    const auto& u = uses[q];
    auto it = std::upper_bound(u.begin(), u.end(), after);
    return it == u.end() ? -1 : *it;
  };
  auto distance = [&](int u, int v) {
    return topology == TopologyKind::LINE ? std::abs(u - v) : (u == v ? 0 : 1);
  };
  // Moves handled by each node so far; spreads gates that fit nowhere local.
  std::vector<int> traffic(p.nodes, 0);
  auto relocate = [&](const std::string& q, int to) {
    const int from = loc[q];
    ++traffic[from];
    ++traffic[to];
    em.move(q, from, to);
    --occ[from];
    ++occ[to];
    loc[q] = to;
  };

  // Sends the idle resident of `h` with the most distant next use to the
  // closest node with a free slot, preferring its home.
  auto evict = [&](int h, const std::vector<std::string>& keep, int now) {
    std::string victim;
    long far = -1;
    for (const auto& [q, where] : loc) {
      if (where != h || std::find(keep.begin(), keep.end(), q) != keep.end()) continue;
      const int nu = next_use(q, now);
      const long key = nu < 0 ? std::numeric_limits<long>::max() : nu;
      if (key > far) {
        far = key;
        victim = q;
      }
    }
    if (victim.empty()) {
      throw PlacementError(fmt::format("gate {}: node {} has nothing to evict", now, h));
    }
    int target = -1;
    const int home_node = p.node(victim);
    if (home_node != h && occ[home_node] < cap[home_node]) {
      target = home_node;
    } else {
      for (int v = 0; v < p.nodes; ++v) {
        if (v == h || occ[v] >= cap[v]) continue;
        if (target < 0 || std::pair(distance(h, v), traffic[v]) < std::pair(distance(h, target), traffic[target])) {
          target = v;
        }
      }
    }
    if (target < 0) {
      throw PlacementError(fmt::format("gate {}: no free slot for an evicted qubit", now));
    }
    relocate(victim, target);
  };

  for (const auto& g : c.gates()) {
    em.set_origin(g.id);
    const auto names = operand_names(c, g);
    std::set<int> nodes;
    for (const auto& q : names) {
      nodes.insert(loc[q]);
    }
    if (nodes.size() > 1) {
      struct Choice {
        int cost, score, lowest_mover, load, host;
        bool operator<(const Choice& o) const {
          return std::tie(cost, score, lowest_mover, load, host) <
                 std::tie(o.cost, o.score, o.lowest_mover, o.load, o.host);
        }
      };
      auto evaluate = [&](int h) -> std::optional<Choice> {
        Choice ch{0, 0, std::numeric_limits<int>::max(), traffic[h], h};
        int movers = 0;
        for (std::size_t i = 0; i < names.size(); ++i) {
          const auto& q = names[i];
          if (loc[q] == h) continue;
          ++movers;
          ch.cost += distance(loc[q], h);
          ch.lowest_mover = std::min(ch.lowest_mover, static_cast<int>(i));
          // Prefer moving a qubit whose next gate also runs on the host.
          const int nu = next_use(q, g.id);
          if (nu < 0) continue;
          bool all_there = true;
          bool any_other = false;
          for (int oq : c.gate(nu).operands) {
            const auto& on = c.qubit_name(oq);
            if (on == q) continue;
            const bool in_gate = std::find(names.begin(), names.end(), on) != names.end();
            any_other = true;
            all_there = all_there && (in_gate ? h : loc[on]) == h;
          }
          if (any_other && all_there) --ch.score;
        }
        const int over = occ[h] + movers - cap[h];
        if (over > 0) {
          // Room is made by evicting residents that the gate does not use.
          int idle = 0;
          for (const auto& [q, where] : loc) {
            if (where == h && std::find(names.begin(), names.end(), q) == names.end()) ++idle;
          }
          if (idle < over) return std::nullopt;
          ch.cost += over;
        }
        return ch;
      };
      std::optional<Choice> best;
      auto consider = [&](int h) {
        auto ch = evaluate(h);
        if (ch && (!best || *ch < *best)) best = ch;
      };
      for (int h : nodes) consider(h);
      // Fall back to a node outside the gate when no operand node has room.
      if (!best) {
        for (int h = 0; h < p.nodes; ++h) {
          if (!nodes.count(h)) consider(h);
        }
      }
      if (!best) {
        throw PlacementError(fmt::format("gate {}: no node has room for the operands", g.id));
      }
      int movers = 0;
      for (const auto& q : names) movers += loc[q] != best->host;
      while (occ[best->host] + movers > cap[best->host]) {
        evict(best->host, names, g.id);
      }
      std::vector<std::pair<std::string, int>> moved;
      for (const auto& q : names) {
        if (loc[q] != best->host) {
          moved.emplace_back(q, loc[q]);
          relocate(q, best->host);
        }
      }
      std::vector<int> ops;
      for (const auto& q : names) {
        ops.push_back(em.phys(q, loc[q]));
      }
      em.emit(g.kind, ops);
      if (nodes.size() >= 3 || !nodes.count(best->host)) {
        for (const auto& [q, from] : moved) {
          relocate(q, from);
        }
      }
      continue;
    }
    std::vector<int> ops;
    for (const auto& q : names) {
      ops.push_back(em.phys(q, loc[q]));
    }
    em.emit(g.kind, ops);
  }
  return em.finish();
}

Distributed rewrite(const Circuit& c, const Placement& p, TopologyKind topology) {
  if (p.strategy == Strategy::TELEDATA) {
    return rewrite_teledata(c, p, topology);
  }
  return rewrite_telegate(c, p, topology);
}

std::vector<Idiom> find_idioms(const Circuit& c, std::vector<int>* idiom_of) {
  std::vector<Idiom> out;
  if (idiom_of) {
    idiom_of->assign(c.size(), -1);
  }
  const auto& gates = c.gates();
  std::size_t i = 0;
  while (i < gates.size()) {
    if (gates[i].kind != GateKind::EPR_CREATE) {
      if (is_idiom_only(gates[i].kind)) {
        throw CircuitError(fmt::format("gate {} ({}) outside a communication idiom", i, to_string(gates[i].kind)));
      }
      ++i;
      continue;
    }
    Idiom id;
    id.first = static_cast<int>(i);
    bool past_eprs = false;
    bool data_hadamard = false;
    std::size_t j = i;
    for (; j < gates.size(); ++j) {
      const auto& g = gates[j];
      if (g.kind == GateKind::EPR_CREATE) {
        if (past_eprs) break;
        id.eprs.push_back(static_cast<int>(j));
        continue;
      }
      bool touches_tx = false;
      for (int q : g.operands) {
        touches_tx = touches_tx || is_transceiver_name(c.qubit_name(q));
      }
      if (!touches_tx && !is_idiom_only(g.kind)) break;
      past_eprs = true;
      if (g.kind == GateKind::HADAMARD && !is_transceiver_name(c.qubit_name(g.operands[0]))) {
        data_hadamard = true;
      }
    }
    id.last = static_cast<int>(j) - 1;
    id.kind = data_hadamard ? Idiom::Kind::MOVE : Idiom::Kind::RGATE;
    if (c.has_nodes()) {
      id.from = c.node(gates[id.eprs.front()].operands[0]);
      id.to = c.node(gates[id.eprs.back()].operands[1]);
    }
    if (idiom_of) {
      for (int k = id.first; k <= id.last; ++k) {
        (*idiom_of)[k] = static_cast<int>(out.size());
      }
    }
    out.push_back(id);
    i = j;
  }
  return out;
}

RemoteCensus remote_op_census(const Circuit& c) {
  RemoteCensus rc;
  for (const auto& id : find_idioms(c)) {
    if (id.kind == Idiom::Kind::MOVE) ++rc.moves;
    else ++rc.rgates;
    rc.epr_pairs += id.eprs.size();
    ++rc.by_node_distance[std::abs(id.from - id.to)];
  }
  return rc;
}

RemoteCensus remote_op_census(const Distributed& d) {
  RemoteCensus rc = remote_op_census(d.circuit);
  // Count monolithic gates that needed communication, by home-node spread.
  std::vector<int> idiom_of;
  find_idioms(d.circuit, &idiom_of);
  std::set<int> remote_origins;
  for (std::size_t g = 0; g < idiom_of.size(); ++g) {
    if (idiom_of[g] >= 0 && d.origin[g] >= 0) {
      remote_origins.insert(d.origin[g]);
    }
  }
  for (int g : remote_origins) {
    const GateKind k = d.source_kind.at(g);
    const int spread = d.source_spread.at(g);
    if (k == GateKind::CCNOT && spread == 2) ++rc.two_node_ccnots;
    if (k == GateKind::CCNOT && spread >= 3) ++rc.three_node_ccnots;
    if (k == GateKind::CNOT && spread == 2) ++rc.two_node_cnots;
  }
  return rc;
}

}  // namespace qmc
