#include "qmc/circuit.hpp"

#include <algorithm>
#include <charconv>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>

#include <fmt/format.h>

namespace qmc {

namespace {

constexpr std::array<std::string_view, 12> kKindNames = {
    "NOT",      "CNOT",         "CCNOT",        "SWAP",
    "SQRT_X",   "SQRT_X_DAG",   "HADAMARD",     "PAULI_X_COND",
    "PAULI_Z_COND", "MEASURE",  "EPR_CREATE",   "CLASSICAL_MSG",
};

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) {
    s.remove_prefix(1);
  }
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    auto pos = s.find(sep, start);
    out.push_back(trim(s.substr(start, pos - start)));
    if (pos == std::string_view::npos) {
      break;
    }
    start = pos + 1;
  }
  return out;
}

int parse_int(std::string_view s, int line) {
  int v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || p != s.data() + s.size()) {
    throw CircuitError(fmt::format("line {}: bad integer '{}'", line, s));
  }
  return v;
}

}  // namespace

std::string_view to_string(GateKind k) { return kKindNames[static_cast<std::size_t>(k)]; }

std::optional<GateKind> parse_gate_kind(std::string_view s) {
  for (std::size_t i = 0; i < kKindNames.size(); ++i) {
    if (kKindNames[i] == s) {
      return static_cast<GateKind>(i);
    }
  }
  return std::nullopt;
}

std::string_view to_string(DurationClass d) {
  switch (d) {
  case DurationClass::T_CCNOT: return "T_CCNOT";
  case DurationClass::T_CNOT: return "T_CNOT";
  case DurationClass::T_NOT: return "T_NOT";
  case DurationClass::T_EPR: return "T_EPR";
  case DurationClass::T_CLASSICAL: return "T_CLASSICAL";
  case DurationClass::T_LOCAL_1Q: return "T_LOCAL_1Q";
  case DurationClass::ZERO: return "ZERO";
  }
  return "?";
}

bool arity_ok(GateKind k, std::size_t n) {
  switch (k) {
  case GateKind::NOT:
  case GateKind::HADAMARD:
  case GateKind::MEASURE: return n == 1;
  case GateKind::SQRT_X:
  case GateKind::SQRT_X_DAG: return n == 1 || n == 2;
  case GateKind::CCNOT: return n == 3;
  default: return n == 2;
  }
}

DurationClass duration_class(GateKind k, std::size_t operands) {
  switch (k) {
  case GateKind::CCNOT: return DurationClass::T_CCNOT;
  case GateKind::CNOT:
  case GateKind::SWAP: return DurationClass::T_CNOT;
  case GateKind::NOT: return DurationClass::T_NOT;
  case GateKind::SQRT_X:
  case GateKind::SQRT_X_DAG:
    return operands == 2 ? DurationClass::T_CNOT : DurationClass::T_LOCAL_1Q;
  case GateKind::EPR_CREATE: return DurationClass::T_EPR;
  case GateKind::CLASSICAL_MSG: return DurationClass::T_CLASSICAL;
  case GateKind::HADAMARD:
  case GateKind::PAULI_X_COND:
  case GateKind::PAULI_Z_COND:
  case GateKind::MEASURE: return DurationClass::T_LOCAL_1Q;
  }
  return DurationClass::ZERO;
}

int duration_multiplicity(GateKind k) { return k == GateKind::SWAP ? 3 : 1; }

bool is_idiom_only(GateKind k) {
  switch (k) {
  case GateKind::HADAMARD:
  case GateKind::PAULI_X_COND:
  case GateKind::PAULI_Z_COND:
  case GateKind::MEASURE:
  case GateKind::EPR_CREATE:
  case GateKind::CLASSICAL_MSG: return true;
  default: return false;
  }
}

char operand_role(GateKind k, std::size_t pos, std::size_t operands) {
  switch (k) {
  case GateKind::NOT: return 'x';
  case GateKind::CNOT: return pos == 0 ? 'z' : 'x';
  case GateKind::SQRT_X:
  case GateKind::SQRT_X_DAG: return (operands == 2 && pos == 0) ? 'z' : 'x';
  case GateKind::CCNOT: return pos < 2 ? 'z' : 'x';
  default: return 'o';
  }
}

QubitName parse_qubit_name(std::string_view name) {
  QubitName out;
  std::string_view base = name;
  if (auto at = name.find('@'); at != std::string_view::npos) {
    base = name.substr(0, at);
    int node = -1;
    auto rest = name.substr(at + 1);
    std::from_chars(rest.data(), rest.data() + rest.size(), node);
    out.copy_node = node;
  }
  out.base = std::string(base);
  std::size_t i = 0;
  while (i < base.size() && !(base[i] >= '0' && base[i] <= '9')) {
    ++i;
  }
  out.role = std::string(base.substr(0, i));
  if (i < base.size()) {
    int idx = -1;
    std::from_chars(base.data() + i, base.data() + base.size(), idx);
    out.index = idx;
  }
  return out;
}

bool is_transceiver_name(std::string_view name) {
  return name.size() > 2 && name.substr(0, 2) == "tx" && name[2] >= '0' && name[2] <= '9';
}

int Circuit::add_qubit(std::string name) {
  if (name.empty() || name.find_first_of(" ,;\t") != std::string::npos) {
    throw CircuitError(fmt::format("invalid qubit name '{}'", name));
  }
  if (index_.count(name) != 0U) {
    throw CircuitError(fmt::format("duplicate qubit '{}'", name));
  }
  const int q = static_cast<int>(names_.size());
  index_.emplace(name, q);
  names_.push_back(std::move(name));
  last_use_.push_back(-1);
  return q;
}

int Circuit::ensure_qubit(const std::string& name) {
  if (auto it = index_.find(name); it != index_.end()) {
    return it->second;
  }
  return add_qubit(name);
}

int Circuit::qubit(std::string_view name) const {
  auto q = find_qubit(name);
  if (!q) {
    throw CircuitError(fmt::format("undeclared qubit '{}'", name));
  }
  return *q;
}

std::optional<int> Circuit::find_qubit(std::string_view name) const {
  auto it = index_.find(std::string(name));
  if (it == index_.end()) {
    return std::nullopt;
  }
  return it->second;
}

void Circuit::check_gate(GateKind k, const std::vector<int>& ops) const {
  if (!arity_ok(k, ops.size())) {
    throw CircuitError(fmt::format("{} with {} operands", to_string(k), ops.size()));
  }
  for (std::size_t i = 0; i < ops.size(); ++i) {
    if (ops[i] < 0 || static_cast<std::size_t>(ops[i]) >= names_.size()) {
      throw CircuitError(fmt::format("{}: operand index {} out of range", to_string(k), ops[i]));
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (ops[i] == ops[j]) {
        throw CircuitError(fmt::format("{}: repeated operand {}", to_string(k), names_[ops[i]]));
      }
    }
  }
}

int Circuit::add(GateKind k, std::vector<int> operands) {
  check_gate(k, operands);
  std::vector<int> deps;
  for (int q : operands) {
    if (last_use_[q] >= 0) {
      deps.push_back(last_use_[q]);
    }
  }
  std::sort(deps.begin(), deps.end());
  deps.erase(std::unique(deps.begin(), deps.end()), deps.end());
  return add_with_deps(k, std::move(operands), std::move(deps));
}

int Circuit::add(GateKind k, std::initializer_list<std::string_view> operands) {
  std::vector<int> ops;
  ops.reserve(operands.size());
  for (auto n : operands) {
    ops.push_back(qubit(n));
  }
  return add(k, std::move(ops));
}

int Circuit::add_with_deps(GateKind k, std::vector<int> operands, std::vector<int> deps) {
  check_gate(k, operands);
  const int id = static_cast<int>(gates_.size());
  std::sort(deps.begin(), deps.end());
  deps.erase(std::unique(deps.begin(), deps.end()), deps.end());
  for (int d : deps) {
    if (d < 0 || d >= id) {
      throw CircuitError(fmt::format("gate {}: dependency {} does not precede it", id, d));
    }
  }
  for (int q : operands) {
    last_use_[q] = id;
  }
  gates_.push_back(Gate{id, k, std::move(operands), std::move(deps)});
  return id;
}

void Circuit::set_node(int q, int node) {
  if (q < 0 || static_cast<std::size_t>(q) >= names_.size() || node < 0) {
    throw CircuitError("bad node annotation");
  }
  node_of_[q] = node;
}

int Circuit::node(int q) const {
  auto it = node_of_.find(q);
  if (it == node_of_.end()) {
    throw CircuitError(fmt::format("qubit '{}' has no node", names_.at(q)));
  }
  return it->second;
}

void Circuit::validate() const {
  // Dependencies always point backwards, so the gate order is a topological
  // order and the relation is acyclic; what remains is overlap consistency.
  std::vector<int> last(names_.size(), -1);
  for (const auto& g : gates_) {
    check_gate(g.kind, g.operands);
    for (int d : g.deps) {
      if (d < 0 || d >= g.id) {
        throw CircuitError(fmt::format("gate {}: dependency {} does not precede it", g.id, d));
      }
    }
  }
  // Every pair of gates sharing a qubit must be ordered.  Checking that each
  // gate reaches the previous user of each of its operands suffices.
  const std::size_t n = gates_.size();
  std::vector<int> mark(n, -1);
  std::vector<int> stack;
  for (const auto& g : gates_) {
    std::vector<int> needed;
    for (int q : g.operands) {
      if (last[q] >= 0) {
        needed.push_back(last[q]);
      }
    }
    std::sort(needed.begin(), needed.end());
    needed.erase(std::unique(needed.begin(), needed.end()), needed.end());
    std::size_t found = 0;
    for (int need : needed) {
      if (std::binary_search(g.deps.begin(), g.deps.end(), need)) {
        ++found;
      }
    }
    if (found != needed.size()) {
      const int lo = needed.empty() ? 0 : needed.front();
      stack.assign(g.deps.begin(), g.deps.end());
      std::set<int> hit;
      while (!stack.empty()) {
        int cur = stack.back();
        stack.pop_back();
        if (cur < lo || mark[cur] == g.id) {
          continue;
        }
        mark[cur] = g.id;
        if (std::binary_search(needed.begin(), needed.end(), cur)) {
          hit.insert(cur);
        }
        for (int d : gates_[cur].deps) {
          stack.push_back(d);
        }
      }
      if (hit.size() != needed.size()) {
        throw CircuitError(fmt::format("gate {} is unordered with an earlier gate on a shared qubit", g.id));
      }
    }
    for (int q : g.operands) {
      last[q] = g.id;
    }
  }
  for (const auto& [q, node] : node_of_) {
    if (q < 0 || static_cast<std::size_t>(q) >= names_.size() || node < 0) {
      throw CircuitError("bad node annotation");
    }
  }
}

bool Circuit::operator==(const Circuit& o) const {
  if (width_ != o.width_ || names_ != o.names_ || node_of_ != o.node_of_ ||
      gates_.size() != o.gates_.size()) {
    return false;
  }
  for (std::size_t i = 0; i < gates_.size(); ++i) {
    const auto& a = gates_[i];
    const auto& b = o.gates_[i];
    if (a.kind != b.kind || a.operands != b.operands || a.deps != b.deps) {
      return false;
    }
  }
  return true;
}

Circuit make_circuit(const std::vector<std::string>& qubits,
                     const std::vector<std::pair<GateKind, std::vector<std::string>>>& gates,
                     int width) {
  Circuit c(width);
  for (const auto& q : qubits) {
    c.add_qubit(q);
  }
  for (const auto& [kind, names] : gates) {
    std::vector<int> ops;
    for (const auto& n : names) {
      ops.push_back(c.qubit(n));
    }
    c.add(kind, std::move(ops));
  }
  c.validate();
  return c;
}

double circuit_depth(const Circuit& c, const WeightFn& weight) {
  std::vector<double> finish(c.size(), 0.0);
  double best = 0.0;
  for (const auto& g : c.gates()) {
    double start = 0.0;
    for (int d : g.deps) {
      start = std::max(start, finish[d]);
    }
    const double w = weight(duration_class(g.kind, g.operands.size())) *
                     duration_multiplicity(g.kind);
    finish[g.id] = start + w;
    best = std::max(best, finish[g.id]);
  }
  return best;
}

std::map<GateKind, std::size_t> gate_census(const Circuit& c) {
  std::map<GateKind, std::size_t> out;
  for (auto k : kAllGateKinds) {
    out[k] = 0;
  }
  for (const auto& g : c.gates()) {
    ++out[g.kind];
  }
  return out;
}

void write_text(const Circuit& c, std::ostream& os) {
  os << "width " << c.width() << '\n';
  for (const auto& n : c.qubit_names()) {
    os << "qubit " << n << '\n';
  }
  for (const auto& [q, node] : c.node_map()) {
    os << "node " << c.qubit_name(q) << ' ' << node << '\n';
  }
  for (const auto& g : c.gates()) {
    os << to_string(g.kind) << ' ';
    for (std::size_t i = 0; i < g.operands.size(); ++i) {
      os << (i ? "," : "") << c.qubit_name(g.operands[i]);
    }
    os << " ; deps=";
    for (std::size_t i = 0; i < g.deps.size(); ++i) {
      os << (i ? "," : "") << g.deps[i];
    }
    os << '\n';
  }
}

std::string to_text(const Circuit& c) {
  std::ostringstream os;
  write_text(c, os);
  return os.str();
}

Circuit read_text(std::istream& is) {
  Circuit c;
  std::string raw;
  int lineno = 0;
  std::vector<std::pair<std::string, int>> nodes;
  while (std::getline(is, raw)) {
    ++lineno;
    std::string_view line = trim(raw);
    if (auto hash = line.find('#'); hash != std::string_view::npos) {
      line = trim(line.substr(0, hash));
    }
    if (line.empty()) {
      continue;
    }
    auto sp = line.find(' ');
    auto head = line.substr(0, sp);
    auto rest = sp == std::string_view::npos ? std::string_view{} : trim(line.substr(sp + 1));
    if (head == "width") {
      c.set_width(parse_int(rest, lineno));
    } else if (head == "qubit") {
      c.add_qubit(std::string(rest));
    } else if (head == "node") {
      auto parts = split(rest, ' ');
      if (parts.size() != 2) {
        throw CircuitError(fmt::format("line {}: expected 'node <qubit> <index>'", lineno));
      }
      nodes.emplace_back(std::string(parts[0]), parse_int(parts[1], lineno));
    } else if (auto kind = parse_gate_kind(head)) {
      auto semi = rest.find(';');
      if (semi == std::string_view::npos) {
        throw CircuitError(fmt::format("line {}: missing '; deps='", lineno));
      }
      std::vector<int> ops;
      for (auto name : split(trim(rest.substr(0, semi)), ',')) {
        auto q = c.find_qubit(name);
        if (!q) {
          throw CircuitError(fmt::format("line {}: undeclared qubit '{}'", lineno, name));
        }
        ops.push_back(*q);
      }
      auto tail = trim(rest.substr(semi + 1));
      if (tail.substr(0, 5) != "deps=") {
        throw CircuitError(fmt::format("line {}: missing 'deps='", lineno));
      }
      std::vector<int> deps;
      auto list = trim(tail.substr(5));
      if (!list.empty()) {
        for (auto d : split(list, ',')) {
          deps.push_back(parse_int(d, lineno));
        }
      }
      try {
        c.add_with_deps(*kind, std::move(ops), std::move(deps));
      } catch (const CircuitError& e) {
        throw CircuitError(fmt::format("line {}: {}", lineno, e.what()));
      }
    } else {
      throw CircuitError(fmt::format("line {}: unknown directive '{}'", lineno, head));
    }
  }
  for (const auto& [name, node] : nodes) {
    c.set_node(c.qubit(name), node);
  }
  c.validate();
  return c;
}

Circuit from_text(std::string_view text) {
  std::istringstream is{std::string(text)};
  return read_text(is);
}

}  // namespace qmc
