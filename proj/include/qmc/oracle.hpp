// Classical reversible-logic oracle for monolithic and distributed circuits.
#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qmc/adders.hpp"
#include "qmc/circuit.hpp"

namespace qmc {

class OracleError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

struct BitState {
  /// Bit value per qubit name.  On input, names not listed start at 0.
  std::map<std::string, int> assignment;
  /// Measurement outcomes keyed by MEASURE gate id, reported for the branch in
  /// which every EPR pair was created as |00>.  Outcomes that carry no
  /// information (after a Hadamard) are reported as 0.
  std::map<int, int> classical_bits;
  /// Qubit currently holding each logical qubit that was teleported.
  std::map<std::string, std::string> location;

  /// Value of a logical qubit, following teleportations.
  int value(const std::string& logical) const;
};

/// Applies the circuit gate by gate.  Each EPR pair introduces a fresh unknown
/// bit r shared by both halves; every qubit is tracked as a constant XOR a
/// set of such unknowns, so the run covers every EPR / measurement outcome
/// branch at once.  Hadamards are accepted only on qubits that are measured
/// next, controlled square roots of X only on targets left otherwise
/// untouched until a full X is reached; anything that would leave the
/// computational basis throws OracleError.
BitState run_reversible(const Circuit& c, const BitState& input);

struct Counterexample {
  std::vector<int> a;  // little-endian bits
  std::vector<int> b;
  std::string qubit;   // first divergent role qubit
  std::string detail;
};

struct EquivalenceResult {
  bool equivalent = true;
  std::size_t cases = 0;
  std::optional<Counterexample> counterexample;
};

struct CheckOptions {
  int exhaustive_limit = 6;     // n at or below: all 2^(2n) input pairs
  std::size_t samples = 10000;  // otherwise: uniformly sampled pairs
  std::uint64_t seed = 1;
};

/// Compares the a, b and carry_out roles (and that ancillae return to zero)
/// of two circuits over the same input pairs.
EquivalenceResult equivalence_check(const Circuit& c1, const AdderLayout& l1, const Circuit& c2,
                                    const AdderLayout& l2, const CheckOptions& opt = {});
EquivalenceResult equivalence_check(const Circuit& c1, const Circuit& c2, const AdderLayout& layout,
                                    int n, const CheckOptions& opt = {});

/// Checks the adder property directly against integer addition.
EquivalenceResult check_adder(const Circuit& c, const AdderLayout& layout, const CheckOptions& opt = {});

}  // namespace qmc
