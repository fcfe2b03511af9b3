#include "qmc/adders.hpp"

#include <map>
#include <stdexcept>

#include <fmt/format.h>

namespace qmc {

namespace {

std::string nm(char role, int i) { return fmt::format("{}{}", role, i); }

void check_width(int n) {
  if (n < 1) {
    throw std::invalid_argument(fmt::format("adder width must be positive, got {}", n));
  }
}

}  // namespace

std::string_view to_string(AdderKind k) {
  switch (k) {
  case AdderKind::VBE: return "vbe";
  case AdderKind::CDKM: return "cdkm";
  case AdderKind::LOOKAHEAD: return "lookahead";
  }
  return "?";
}

AdderKind parse_adder(std::string_view s) {
  if (s == "vbe") return AdderKind::VBE;
  if (s == "cdkm") return AdderKind::CDKM;
  if (s == "lookahead" || s == "cla") return AdderKind::LOOKAHEAD;
  throw std::invalid_argument(fmt::format("unknown adder '{}'", s));
}

bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

Adder generate_vbe(int n) {
  check_width(n);
  Adder out{AdderKind::VBE, Circuit(n), {}};
  auto& c = out.circuit;
  auto& lay = out.layout;
  lay.n = n;
  for (int i = 0; i < n; ++i) {
    lay.a.push_back(nm('a', i));
    lay.b.push_back(nm('b', i));
    c.add_qubit(nm('a', i));
    c.add_qubit(nm('b', i));
    c.add_qubit(nm('c', i + 1));
    if (i + 1 < n) {
      lay.ancillae.push_back(nm('c', i + 1));
    }
  }
  lay.carry_out = nm('c', n);

  auto A = [&](int i) { return c.qubit(nm('a', i)); };
  auto B = [&](int i) { return c.qubit(nm('b', i)); };
  auto C = [&](int i) { return c.qubit(nm('c', i)); };

  // CARRY block for bit i: carry in c_i (absent for bit 0), carry out c_{i+1}.
  auto carry = [&](int i, bool reverse) {
    std::vector<std::pair<GateKind, std::vector<int>>> blk;
    blk.push_back({GateKind::CCNOT, {A(i), B(i), C(i + 1)}});
    blk.push_back({GateKind::CNOT, {A(i), B(i)}});
    if (i > 0) {
      blk.push_back({GateKind::CCNOT, {C(i), B(i), C(i + 1)}});
    }
    if (reverse) {
      for (auto it = blk.rbegin(); it != blk.rend(); ++it) {
        c.add(it->first, it->second);
      }
    } else {
      for (auto& [k, ops] : blk) {
        c.add(k, ops);
      }
    }
  };
  auto sum = [&](int i) {
    c.add(GateKind::CNOT, {A(i), B(i)});
    if (i > 0) {
      c.add(GateKind::CNOT, {C(i), B(i)});
    }
  };

  for (int i = 0; i < n; ++i) {
    carry(i, false);
  }
  c.add(GateKind::CNOT, {A(n - 1), B(n - 1)});
  sum(n - 1);
  for (int i = n - 2; i >= 0; --i) {
    carry(i, true);
    sum(i);
  }
  c.validate();
  return out;
}

Adder generate_cdkm(int n) {
  check_width(n);
  Adder out{AdderKind::CDKM, Circuit(n), {}};
  auto& c = out.circuit;
  auto& lay = out.layout;
  lay.n = n;
  c.add_qubit("x0");
  for (int i = 0; i < n; ++i) {
    c.add_qubit(nm('b', i));
    c.add_qubit(nm('a', i));
    lay.a.push_back(nm('a', i));
    lay.b.push_back(nm('b', i));
  }
  c.add_qubit(nm('c', n));
  lay.ancillae.push_back("x0");
  lay.carry_out = nm('c', n);

  // Carry into bit i lives in the ancilla for i = 0 and in a_{i-1} afterwards.
  auto cin = [&](int i) { return i == 0 ? c.qubit("x0") : c.qubit(nm('a', i - 1)); };
  auto A = [&](int i) { return c.qubit(nm('a', i)); };
  auto B = [&](int i) { return c.qubit(nm('b', i)); };

  for (int i = 0; i < n; ++i) {
    // MAJ(c, b, a)
    c.add(GateKind::CNOT, {A(i), B(i)});
    c.add(GateKind::CNOT, {A(i), cin(i)});
    c.add(GateKind::CCNOT, {cin(i), B(i), A(i)});
  }
  c.add(GateKind::CNOT, {A(n - 1), c.qubit(nm('c', n))});
  for (int i = n - 1; i >= 0; --i) {
    // UMA(c, b, a), 3-CNOT form
    c.add(GateKind::NOT, {B(i)});
    c.add(GateKind::CNOT, {cin(i), B(i)});
    c.add(GateKind::CCNOT, {cin(i), B(i), A(i)});
    c.add(GateKind::NOT, {B(i)});
    c.add(GateKind::CNOT, {A(i), cin(i)});
    c.add(GateKind::CNOT, {A(i), B(i)});
  }
  c.validate();
  return out;
}

namespace {

// Carry network over the first m bits.  P_0[i] is b_i (holding a_i ^ b_i),
// G[i] is the carry qubit c_i, P_t[j] for t >= 1 is a temporary.
struct Network {
  Circuit& c;
  std::map<std::pair<int, int>, int> temps;

  int P(int t, int j) {
    if (t == 0) {
      return c.qubit(nm('b', j));
    }
    auto it = temps.find({t, j});
    if (it == temps.end()) {
      throw std::logic_error("propagate temporary not declared");
    }
    return it->second;
  }
  int G(int i) { return c.qubit(nm('c', i)); }

  static int floor_log2(int v) {
    int r = -1;
    while (v > 0) {
      v >>= 1;
      ++r;
    }
    return r;
  }

  std::vector<std::vector<int>> gates(int m) {
    std::vector<std::vector<int>> out;
    const int lg = floor_log2(m);
    std::vector<std::vector<int>> pr;
    for (int t = 1; t < lg; ++t) {
      for (int j = 1; j < (m >> t); ++j) {
        pr.push_back({P(t - 1, 2 * j), P(t - 1, 2 * j + 1), P(t, j)});
      }
    }
    out.insert(out.end(), pr.begin(), pr.end());
    for (int t = 1; t <= lg; ++t) {
      for (int j = 0; j < (m >> t); ++j) {
        out.push_back({G((1 << t) * j + (1 << (t - 1))), P(t - 1, 2 * j + 1), G((1 << t) * j + (1 << t))});
      }
    }
    if (m >= 2) {
      const int tc = floor_log2(2 * m / 3);
      for (int t = tc; t >= 1; --t) {
        for (int j = 1; j <= (m - (1 << (t - 1))) / (1 << t); ++j) {
          out.push_back({G((1 << t) * j), P(t - 1, 2 * j), G((1 << t) * j + (1 << (t - 1)))});
        }
      }
    }
    out.insert(out.end(), pr.rbegin(), pr.rend());
    return out;
  }
};

}  // namespace

Adder generate_lookahead(int n) {
  check_width(n);
  if (!is_power_of_two(n)) {
    throw std::invalid_argument(fmt::format("lookahead adder needs a power-of-two width, got {}", n));
  }
  Adder out{AdderKind::LOOKAHEAD, Circuit(n), {}};
  auto& c = out.circuit;
  auto& lay = out.layout;
  lay.n = n;
  Network net{c, {}};

  // Propagate temporary P_t[j] is named p<k> with k = 2^t j + 2^(t-1) - 1,
  // which is distinct for every (t, j) and doubles as its home bit.
  std::map<int, std::pair<int, int>> temp_at;
  for (int t = 1; (1 << t) < n; ++t) {
    for (int j = 1; j < (n >> t); ++j) {
      temp_at[(1 << t) * j + (1 << (t - 1)) - 1] = {t, j};
    }
  }
  for (int i = 0; i < n; ++i) {
    c.add_qubit(nm('a', i));
    c.add_qubit(nm('b', i));
    c.add_qubit(nm('c', i + 1));
    lay.a.push_back(nm('a', i));
    lay.b.push_back(nm('b', i));
    if (i + 1 < n) {
      lay.ancillae.push_back(nm('c', i + 1));
    }
    if (auto it = temp_at.find(i); it != temp_at.end()) {
      net.temps[it->second] = c.add_qubit(nm('p', i));
      lay.ancillae.push_back(nm('p', i));
    }
  }
  lay.carry_out = nm('c', n);

  auto A = [&](int i) { return c.qubit(nm('a', i)); };
  auto B = [&](int i) { return c.qubit(nm('b', i)); };
  auto Z = [&](int i) { return c.qubit(nm('c', i)); };

  for (int i = 0; i < n; ++i) {
    c.add(GateKind::CCNOT, {A(i), B(i), Z(i + 1)});
  }
  for (int i = 0; i < n; ++i) {
    c.add(GateKind::CNOT, {A(i), B(i)});
  }
  for (auto& ops : net.gates(n)) {
    c.add(GateKind::CCNOT, ops);
  }
  for (int i = 1; i < n; ++i) {
    c.add(GateKind::CNOT, {Z(i), B(i)});
  }
  // Uncompute c_1..c_{n-1} from the carries of a + ~s over the low n-1 bits.
  for (int i = 0; i + 1 < n; ++i) {
    c.add(GateKind::NOT, {B(i)});
  }
  for (int i = 1; i + 1 < n; ++i) {
    c.add(GateKind::CNOT, {A(i), B(i)});
  }
  auto inner = net.gates(n - 1);
  for (auto it = inner.rbegin(); it != inner.rend(); ++it) {
    c.add(GateKind::CCNOT, *it);
  }
  for (int i = 1; i + 1 < n; ++i) {
    c.add(GateKind::CNOT, {A(i), B(i)});
  }
  for (int i = 0; i + 1 < n; ++i) {
    c.add(GateKind::CCNOT, {A(i), B(i), Z(i + 1)});
  }
  for (int i = 0; i + 1 < n; ++i) {
    c.add(GateKind::NOT, {B(i)});
  }
  c.validate();
  return out;
}

Adder generate(AdderKind k, int n) {
  switch (k) {
  case AdderKind::VBE: return generate_vbe(n);
  case AdderKind::CDKM: return generate_cdkm(n);
  case AdderKind::LOOKAHEAD: return generate_lookahead(n);
  }
  throw std::invalid_argument("unknown adder");
}

}  // namespace qmc
