// Gate-level circuit representation shared by every other module.
#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace qmc {

enum class GateKind : std::uint8_t {
  NOT,
  CNOT,
  CCNOT,
  SWAP,
  SQRT_X,
  SQRT_X_DAG,
  HADAMARD,
  PAULI_X_COND,
  PAULI_Z_COND,
  MEASURE,
  EPR_CREATE,
  CLASSICAL_MSG,
};

inline constexpr std::array<GateKind, 12> kAllGateKinds = {
    GateKind::NOT,          GateKind::CNOT,         GateKind::CCNOT,
    GateKind::SWAP,         GateKind::SQRT_X,       GateKind::SQRT_X_DAG,
    GateKind::HADAMARD,     GateKind::PAULI_X_COND, GateKind::PAULI_Z_COND,
    GateKind::MEASURE,      GateKind::EPR_CREATE,   GateKind::CLASSICAL_MSG,
};

enum class DurationClass : std::uint8_t {
  T_CCNOT,
  T_CNOT,
  T_NOT,
  T_EPR,
  T_CLASSICAL,
  T_LOCAL_1Q,
  ZERO,
};

std::string_view to_string(GateKind k);
std::optional<GateKind> parse_gate_kind(std::string_view s);
std::string_view to_string(DurationClass d);

/// Allowed operand counts. SQRT_X / SQRT_X_DAG take one qubit, or two when
/// controlled (control first).
bool arity_ok(GateKind k, std::size_t n);

/// Duration class of a gate with the given kind and operand count.  SWAP maps
/// to T_CNOT with multiplicity 3 (see duration_multiplicity).
DurationClass duration_class(GateKind k, std::size_t operands);
int duration_multiplicity(GateKind k);

/// Gates that only appear inside communication idioms.
bool is_idiom_only(GateKind k);

/// Role of the operand at position `pos`: 'z' for a control (diagonal in the
/// computational basis), 'x' for an X-type target, 'o' for anything else.
/// Consecutive uses of a qubit with the same 'z' or 'x' role commute.
char operand_role(GateKind k, std::size_t pos, std::size_t operands);

/// Symbolic qubit name split into role and index, e.g. "b12" -> {"b", 12},
/// "tx3.1" -> {"tx", 3}, "a4@7" -> {"a", 4} with copy node 7.
struct QubitName {
  std::string role;
  int index = -1;
  int copy_node = -1;      // node suffix after '@', -1 for the home copy
  std::string base;        // name without the '@' suffix
};
QubitName parse_qubit_name(std::string_view name);
bool is_transceiver_name(std::string_view name);

struct Gate {
  int id = 0;
  GateKind kind = GateKind::NOT;
  std::vector<int> operands;  // qubit indices
  std::vector<int> deps;      // predecessor gate ids, ascending
};

class CircuitError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class Circuit {
public:
  Circuit() = default;
  explicit Circuit(int width) : width_(width) {}

  int width() const { return width_; }
  void set_width(int w) { width_ = w; }

  int add_qubit(std::string name);
  /// Index of a qubit, adding it when absent.
  int ensure_qubit(const std::string& name);
  int qubit(std::string_view name) const;
  std::optional<int> find_qubit(std::string_view name) const;
  const std::string& qubit_name(int q) const { return names_.at(q); }
  std::size_t num_qubits() const { return names_.size(); }
  const std::vector<std::string>& qubit_names() const { return names_; }

  /// Appends a gate; dependencies are derived from operand overlap.
  int add(GateKind k, std::vector<int> operands);
  int add(GateKind k, std::initializer_list<std::string_view> operands);
  /// Appends a gate with an explicit predecessor list (may be empty).
  int add_with_deps(GateKind k, std::vector<int> operands, std::vector<int> deps);

  const std::vector<Gate>& gates() const { return gates_; }
  const Gate& gate(int id) const { return gates_.at(id); }
  std::size_t size() const { return gates_.size(); }
  bool empty() const { return gates_.empty(); }

  /// Optional node annotation (rewritten circuits).
  bool has_nodes() const { return !node_of_.empty(); }
  void set_node(int q, int node);
  int node(int q) const;
  const std::map<int, int>& node_map() const { return node_of_; }

  /// Checks arity, distinct operands, dependency ids, acyclicity and that
  /// every pair of gates sharing a qubit is ordered.
  void validate() const;

  bool operator==(const Circuit& o) const;

private:
  void check_gate(GateKind k, const std::vector<int>& ops) const;

  int width_ = 0;
  std::vector<std::string> names_;
  std::unordered_map<std::string, int> index_;
  std::vector<Gate> gates_;
  std::vector<int> last_use_;  // per qubit, last gate id or -1
  std::map<int, int> node_of_;
};

/// Convenience constructor: declares qubits, appends gates given as
/// (kind, operand names) with derived dependencies, then validates.
Circuit make_circuit(const std::vector<std::string>& qubits,
                     const std::vector<std::pair<GateKind, std::vector<std::string>>>& gates,
                     int width = 0);

using WeightFn = std::function<double(DurationClass)>;

/// Longest weighted path through the dependency DAG.
double circuit_depth(const Circuit& c, const WeightFn& weight);

std::map<GateKind, std::size_t> gate_census(const Circuit& c);

/// Line-oriented text format; see docs/circuit-format.md.
void write_text(const Circuit& c, std::ostream& os);
std::string to_text(const Circuit& c);
Circuit read_text(std::istream& is);
Circuit from_text(std::string_view text);

}  // namespace qmc
