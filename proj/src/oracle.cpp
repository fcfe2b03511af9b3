#include "qmc/oracle.hpp"

#include <algorithm>
#include <random>

#include <boost/dynamic_bitset.hpp>
#include <fmt/format.h>

namespace qmc {

int BitState::value(const std::string& logical) const {
  auto it = location.find(logical);
  const std::string& where = it == location.end() ? logical : it->second;
  auto v = assignment.find(where);
  return v == assignment.end() ? 0 : v->second;
}

namespace {

struct Bit {
  bool value = false;
  boost::dynamic_bitset<> vars;  // XOR of EPR unknowns
  bool unknown = false;          // phase-only information after a Hadamard
  bool half = false;             // pending square root of X
};

class Machine {
public:
  Machine(const Circuit& c, std::size_t epr_count) : c_(c), bits_(c.num_qubits()) {
    for (auto& b : bits_) {
      b.vars.resize(epr_count);
    }
    records_.resize(c.num_qubits());
    has_record_.assign(c.num_qubits(), false);
  }

  void set(int q, bool v) { bits_[q].value = v; }
  const Bit& bit(int q) const { return bits_[q]; }
  const Bit& record(int q) const { return records_[q]; }
  bool has_record(int q) const { return has_record_[q]; }

  [[noreturn]] void fail(const Gate& g, const std::string& why) const {
    throw OracleError(fmt::format("gate {} ({}): {}", g.id, to_string(g.kind), why));
  }

  const Bit& classical(const Gate& g, int q, bool allow_vars) const {
    const Bit& b = bits_[q];
    if (b.unknown) {
      fail(g, fmt::format("qubit {} holds phase-only information", c_.qubit_name(q)));
    }
    if (b.half) {
      fail(g, fmt::format("qubit {} is in a square-root-of-X superposition", c_.qubit_name(q)));
    }
    if (!allow_vars && b.vars.any()) {
      fail(g, fmt::format("control {} depends on an EPR outcome", c_.qubit_name(q)));
    }
    return b;
  }

  static void xor_into(Bit& t, const Bit& s) {
    t.value ^= s.value;
    t.vars ^= s.vars;
  }

  void apply(const Gate& g) {
    const auto& o = g.operands;
    switch (g.kind) {
    case GateKind::NOT:
      if (bits_[o[0]].unknown) fail(g, "target holds phase-only information");
      bits_[o[0]].value ^= true;
      break;
    case GateKind::CNOT: {
      Bit ctrl = classical(g, o[0], true);
      if (bits_[o[1]].unknown) fail(g, "target holds phase-only information");
      xor_into(bits_[o[1]], ctrl);
      break;
    }
    case GateKind::CCNOT: {
      const bool on = classical(g, o[0], false).value && classical(g, o[1], false).value;
      if (bits_[o[2]].unknown) fail(g, "target holds phase-only information");
      bits_[o[2]].value ^= on;
      break;
    }
    case GateKind::SWAP:
      std::swap(bits_[o[0]], bits_[o[1]]);
      break;
    case GateKind::SQRT_X:
    case GateKind::SQRT_X_DAG: {
      bool on = true;
      int t = o[0];
      if (o.size() == 2) {
        on = classical(g, o[0], false).value;
        t = o[1];
      }
      Bit& b = bits_[t];
      if (b.unknown) fail(g, "target holds phase-only information");
      if (!on) break;
      if (g.kind == GateKind::SQRT_X) {
        if (b.half) b.value ^= true;
        b.half = !b.half;
      } else {
        if (!b.half) b.value ^= true;
        b.half = !b.half;
      }
      break;
    }
    case GateKind::HADAMARD: {
      Bit& b = bits_[o[0]];
      if (b.half || b.unknown) fail(g, "Hadamard on a non-basis qubit");
      b.unknown = true;
      b.value = false;
      b.vars.reset();
      pending_h_.push_back(o[0]);
      break;
    }
    case GateKind::MEASURE: {
      Bit& b = bits_[o[0]];
      if (b.half) fail(g, "measurement of a square-root-of-X superposition");
      records_[o[0]] = b;
      has_record_[o[0]] = true;
      measured_[g.id] = b;
      b = Bit{};
      b.vars.resize(records_[o[0]].vars.size());
      pending_h_.erase(std::remove(pending_h_.begin(), pending_h_.end(), o[0]), pending_h_.end());
      break;
    }
    case GateKind::EPR_CREATE: {
      for (int q : o) {
        const Bit& b = bits_[q];
        if (b.unknown || b.half || b.value || b.vars.any()) {
          fail(g, fmt::format("EPR half {} is not a fresh |0>", c_.qubit_name(q)));
        }
      }
      for (int q : o) {
        bits_[q].vars.set(next_var_);
      }
      ++next_var_;
      break;
    }
    case GateKind::CLASSICAL_MSG:
      break;
    case GateKind::PAULI_X_COND: {
      if (!has_record_[o[0]]) fail(g, "condition qubit was never measured");
      const Bit& r = records_[o[0]];
      if (r.unknown) fail(g, "X correction conditioned on a phase-only outcome");
      if (bits_[o[1]].unknown) fail(g, "target holds phase-only information");
      xor_into(bits_[o[1]], r);
      if (!is_transceiver_name(c_.qubit_name(o[1]))) {
        const auto name = parse_qubit_name(c_.qubit_name(o[1]));
        location_[name.base] = c_.qubit_name(o[1]);
      }
      break;
    }
    case GateKind::PAULI_Z_COND:
      if (!has_record_[o[0]]) fail(g, "condition qubit was never measured");
      break;
    }
    // A Hadamard-ed qubit may only be measured.
    for (int q : pending_h_) {
      if (std::find(o.begin(), o.end(), q) != o.end() && g.kind != GateKind::MEASURE &&
          g.kind != GateKind::HADAMARD) {
        fail(g, fmt::format("qubit {} used between Hadamard and measurement", c_.qubit_name(q)));
      }
    }
  }

  std::map<int, Bit> measured_;
  std::map<std::string, std::string> location_;

private:
  const Circuit& c_;
  std::vector<Bit> bits_;
  std::vector<Bit> records_;
  std::vector<bool> has_record_;
  std::vector<int> pending_h_;
  std::size_t next_var_ = 0;
};

std::size_t count_epr(const Circuit& c) {
  return static_cast<std::size_t>(
      std::count_if(c.gates().begin(), c.gates().end(), [](const Gate& g) { return g.kind == GateKind::EPR_CREATE; }));
}

}  // namespace

BitState run_reversible(const Circuit& c, const BitState& input) {
  Machine m(c, count_epr(c));
  for (const auto& [name, v] : input.assignment) {
    auto q = c.find_qubit(name);
    if (!q) {
      throw OracleError(fmt::format("input names unknown qubit '{}'", name));
    }
    m.set(*q, v != 0);
  }
  for (const auto& g : c.gates()) {
    m.apply(g);
  }
  BitState out;
  for (std::size_t q = 0; q < c.num_qubits(); ++q) {
    const Bit& b = m.bit(static_cast<int>(q));
    if (b.unknown || b.half || b.vars.any()) {
      throw OracleError(fmt::format("qubit {} does not end in a computational basis state", c.qubit_name(q)));
    }
    out.assignment[c.qubit_name(q)] = b.value ? 1 : 0;
  }
  for (const auto& [id, b] : m.measured_) {
    out.classical_bits[id] = (!b.unknown && b.value) ? 1 : 0;
  }
  out.location = m.location_;
  return out;
}

namespace {

struct Roles {
  std::vector<int> a, b, carry;
  bool clean = true;
};

BitState input_for(const AdderLayout& l, const std::vector<int>& a, const std::vector<int>& b) {
  BitState in;
  for (int i = 0; i < l.n; ++i) {
    in.assignment[l.a[i]] = a[i];
    in.assignment[l.b[i]] = b[i];
  }
  return in;
}

Roles read_roles(const BitState& s, const AdderLayout& l) {
  Roles r;
  for (int i = 0; i < l.n; ++i) {
    r.a.push_back(s.value(l.a[i]));
    r.b.push_back(s.value(l.b[i]));
  }
  r.carry.push_back(s.value(l.carry_out));
  for (const auto& anc : l.ancillae) {
    if (s.value(anc) != 0) {
      r.clean = false;
    }
  }
  return r;
}

template <typename Fn>
EquivalenceResult for_each_input(int n, const CheckOptions& opt, Fn&& fn) {
  EquivalenceResult res;
  auto bits_of = [n](std::uint64_t v) {
    std::vector<int> out(n);
    for (int i = 0; i < n; ++i) {
      out[i] = static_cast<int>((v >> i) & 1U);
    }
    return out;
  };
  auto visit = [&](const std::vector<int>& a, const std::vector<int>& b) {
    ++res.cases;
    if (auto ce = fn(a, b)) {
      res.equivalent = false;
      res.counterexample = std::move(ce);
      return false;
    }
    return true;
  };
  if (n <= opt.exhaustive_limit) {
    const std::uint64_t lim = std::uint64_t{1} << n;
    for (std::uint64_t a = 0; a < lim; ++a) {
      for (std::uint64_t b = 0; b < lim; ++b) {
        if (!visit(bits_of(a), bits_of(b))) {
          return res;
        }
      }
    }
    return res;
  }
  std::mt19937_64 rng(opt.seed);
  std::bernoulli_distribution coin(0.5);
  for (std::size_t s = 0; s < opt.samples; ++s) {
    std::vector<int> a(n), b(n);
    for (int i = 0; i < n; ++i) {
      a[i] = coin(rng) ? 1 : 0;
    }
    for (int i = 0; i < n; ++i) {
      b[i] = coin(rng) ? 1 : 0;
    }
    if (!visit(a, b)) {
      return res;
    }
  }
  return res;
}

std::optional<Counterexample> run_guarded(const Circuit& c, const AdderLayout& l, const std::vector<int>& a,
                                          const std::vector<int>& b, BitState& out) {
  try {
    out = run_reversible(c, input_for(l, a, b));
  } catch (const OracleError& e) {
    return Counterexample{a, b, "", e.what()};
  }
  return std::nullopt;
}

}  // namespace

EquivalenceResult equivalence_check(const Circuit& c1, const AdderLayout& l1, const Circuit& c2,
                                    const AdderLayout& l2, const CheckOptions& opt) {
  if (l1.n != l2.n || l1.a.size() != l2.a.size() || l1.b.size() != l2.b.size()) {
    throw OracleError("layouts expose different register widths");
  }
  return for_each_input(l1.n, opt, [&](const std::vector<int>& a, const std::vector<int>& b) -> std::optional<Counterexample> {
    BitState s1, s2;
    if (auto ce = run_guarded(c1, l1, a, b, s1)) return ce;
    if (auto ce = run_guarded(c2, l2, a, b, s2)) return ce;
    const Roles r1 = read_roles(s1, l1);
    const Roles r2 = read_roles(s2, l2);
    for (int i = 0; i < l1.n; ++i) {
      if (r1.a[i] != r2.a[i]) return Counterexample{a, b, l1.a[i], "a register differs"};
    }
    for (int i = 0; i < l1.n; ++i) {
      if (r1.b[i] != r2.b[i]) return Counterexample{a, b, l1.b[i], "b register differs"};
    }
    if (r1.carry != r2.carry) return Counterexample{a, b, l1.carry_out, "carry out differs"};
    if (r1.clean != r2.clean) return Counterexample{a, b, "", "ancilla cleanliness differs"};
    return std::nullopt;
  });
}

EquivalenceResult equivalence_check(const Circuit& c1, const Circuit& c2, const AdderLayout& layout, int n,
                                    const CheckOptions& opt) {
  if (layout.n != n) {
    throw OracleError("layout width does not match n");
  }
  return equivalence_check(c1, layout, c2, layout, opt);
}

EquivalenceResult check_adder(const Circuit& c, const AdderLayout& l, const CheckOptions& opt) {
  return for_each_input(l.n, opt, [&](const std::vector<int>& a, const std::vector<int>& b) -> std::optional<Counterexample> {
    BitState s;
    if (auto ce = run_guarded(c, l, a, b, s)) return ce;
    const Roles r = read_roles(s, l);
    int carry = 0;
    for (int i = 0; i < l.n; ++i) {
      const int t = a[i] + b[i] + carry;
      if (r.b[i] != (t & 1)) return Counterexample{a, b, l.b[i], "sum bit wrong"};
      if (r.a[i] != a[i]) return Counterexample{a, b, l.a[i], "a register modified"};
      carry = t >> 1;
    }
    if (r.carry[0] != carry) return Counterexample{a, b, l.carry_out, "carry out wrong"};
    if (!r.clean) {
      for (const auto& anc : l.ancillae) {
        if (s.value(anc) != 0) return Counterexample{a, b, anc, "ancilla not restored"};
      }
    }
    return std::nullopt;
  });
}

}  // namespace qmc
