// Monolithic adder circuit generators.
#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qmc/circuit.hpp"

namespace qmc {

enum class AdderKind { VBE, CDKM, LOOKAHEAD };

std::string_view to_string(AdderKind k);
AdderKind parse_adder(std::string_view s);

/// Register roles of a generated adder.  After execution the sum register
/// holds (a+b) mod 2^n, carry_out holds the overflow bit, a is unchanged and
/// every ancilla is back to zero.  For all three generators the sum register
/// is the b register.
struct AdderLayout {
  int n = 0;
  std::vector<std::string> a;
  std::vector<std::string> b;
  std::vector<std::string> ancillae;
  std::string carry_out;
};

struct Adder {
  AdderKind kind;
  Circuit circuit;
  AdderLayout layout;
};

/// Vedral-Barenco-Ekert ripple adder.  Carry qubit c_{i+1} receives the carry
/// out of bit i; c_n is the carry out.
Adder generate_vbe(int n);

/// Cuccaro-Draper-Kutin-Moulton ripple adder with the MAJ / 3-CNOT UMA
/// blocks, one ancilla x0 and carry out c_n.
Adder generate_cdkm(int n);

/// In-place logarithmic-depth carry-lookahead adder (Draper-Kutin-Rains-Svore
/// propagate/generate rounds).  n must be a power of two.
Adder generate_lookahead(int n);

Adder generate(AdderKind k, int n);

bool is_power_of_two(int n);

}  // namespace qmc
