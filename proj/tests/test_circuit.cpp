#include "qmc/adders.hpp"
#include "qmc/circuit.hpp"

#include <gtest/gtest.h>

#include <functional>
#include <random>

using namespace qmc;

namespace {

double unit(DurationClass) { return 1.0; }

double ccnot_only(DurationClass d) { return d == DurationClass::T_CCNOT ? 1.0 : 0.0; }

// Longest path by exhaustive path enumeration from every source.
int brute_longest(const Circuit& c) {
  std::vector<std::vector<int>> succ(c.size());
  for (const auto& g : c.gates()) {
    for (int d : g.deps) {
      succ[d].push_back(g.id);
    }
  }
  std::function<int(int)> walk = [&](int v) {
    int best = 0;
    for (int s : succ[v]) {
      best = std::max(best, walk(s));
    }
    return best + 1;
  };
  int best = 0;
  for (const auto& g : c.gates()) {
    best = std::max(best, walk(g.id));
  }
  return best;
}

}  // namespace

TEST(Circuit, SingleGateDepthOne) {
  auto c = make_circuit({"a0", "b0"}, {{GateKind::CNOT, {"a0", "b0"}}});
  EXPECT_EQ(c.size(), 1U);
  EXPECT_EQ(circuit_depth(c, unit), 1.0);
}

TEST(Circuit, OverlapForcesOrder) {
  auto c = make_circuit({"a0", "b0"}, {{GateKind::CNOT, {"a0", "b0"}}, {GateKind::CNOT, {"a0", "b0"}}});
  EXPECT_EQ(c.gate(1).deps, std::vector<int>{0});
  EXPECT_EQ(circuit_depth(c, unit), 2.0);
}

TEST(Circuit, UndeclaredQubitRejected) {
  EXPECT_THROW(make_circuit({"a0", "b0"}, {{GateKind::CNOT, {"a0", "c9"}}}), CircuitError);
}

TEST(Circuit, DuplicateQubitRejected) {
  Circuit c;
  c.add_qubit("a0");
  EXPECT_THROW(c.add_qubit("a0"), CircuitError);
}

TEST(Circuit, ArityChecked) {
  Circuit c;
  int a = c.add_qubit("a0");
  int b = c.add_qubit("b0");
  EXPECT_THROW(c.add(GateKind::CCNOT, {a, b}), CircuitError);
  EXPECT_THROW(c.add(GateKind::CNOT, {a, a}), CircuitError);
  EXPECT_THROW(c.add(GateKind::NOT, {a, b}), CircuitError);
  EXPECT_NO_THROW(c.add(GateKind::SQRT_X, {a, b}));
  EXPECT_NO_THROW(c.add(GateKind::SQRT_X_DAG, {b}));
}

TEST(Circuit, ForwardDependencyRejected) {
  Circuit c;
  int a = c.add_qubit("a0");
  EXPECT_THROW(c.add_with_deps(GateKind::NOT, {a}, {0}), CircuitError);
}

TEST(Circuit, UnorderedSharedQubitRejected) {
  Circuit c;
  int a = c.add_qubit("a0");
  c.add(GateKind::NOT, {a});
  c.add_with_deps(GateKind::NOT, {a}, {});
  EXPECT_THROW(c.validate(), CircuitError);
}

TEST(Circuit, EmptyDepthZero) {
  Circuit c;
  EXPECT_EQ(circuit_depth(c, unit), 0.0);
  for (const auto& [k, n] : gate_census(c)) {
    EXPECT_EQ(n, 0U) << to_string(k);
  }
}

TEST(Circuit, IndependentGatesShareALayer) {
  auto c = make_circuit({"a0", "b0", "a1", "b1"},
                        {{GateKind::CNOT, {"a0", "b0"}}, {GateKind::CNOT, {"a1", "b1"}}});
  EXPECT_EQ(circuit_depth(c, unit), 1.0);
}

TEST(Circuit, SwapWeighsThreeCnots) {
  auto c = make_circuit({"a0", "b0"}, {{GateKind::SWAP, {"a0", "b0"}}});
  EXPECT_EQ(circuit_depth(c, [](DurationClass d) { return d == DurationClass::T_CNOT ? 10.0 : 0.0; }), 30.0);
}

TEST(Circuit, UnitDepthMatchesBruteForce) {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 40; ++trial) {
    Circuit c;
    const int nq = 5;
    for (int q = 0; q < nq; ++q) {
      c.add_qubit("q" + std::to_string(q));
    }
    std::uniform_int_distribution<int> pick(0, nq - 1);
    for (int g = 0; g < 12; ++g) {
      int x = pick(rng);
      int y = pick(rng);
      if (x == y) {
        c.add(GateKind::NOT, {x});
      } else {
        c.add(GateKind::CNOT, {x, y});
      }
    }
    EXPECT_EQ(static_cast<int>(circuit_depth(c, unit)), brute_longest(c));
  }
  for (auto k : {AdderKind::VBE, AdderKind::CDKM}) {
    auto ad = generate(k, 3);
    EXPECT_EQ(static_cast<int>(circuit_depth(ad.circuit, unit)), brute_longest(ad.circuit));
  }
}

TEST(Circuit, QubitNamesCarryRoleAndIndex) {
  auto q = parse_qubit_name("b12");
  EXPECT_EQ(q.role, "b");
  EXPECT_EQ(q.index, 12);
  EXPECT_EQ(q.copy_node, -1);
  auto t = parse_qubit_name("tx3.1");
  EXPECT_EQ(t.role, "tx");
  EXPECT_EQ(t.index, 3);
  EXPECT_TRUE(is_transceiver_name("tx3.1"));
  EXPECT_FALSE(is_transceiver_name("x0"));
  auto m = parse_qubit_name("a4@7");
  EXPECT_EQ(m.base, "a4");
  EXPECT_EQ(m.copy_node, 7);
}

TEST(Circuit, TextRoundTrip) {
  for (auto k : {AdderKind::VBE, AdderKind::CDKM, AdderKind::LOOKAHEAD}) {
    auto ad = generate(k, 4);
    ad.circuit.set_node(0, 2);
    const std::string text = to_text(ad.circuit);
    Circuit back = from_text(text);
    EXPECT_TRUE(back == ad.circuit) << to_string(k);
    EXPECT_EQ(to_text(back), text);
  }
}

TEST(Circuit, TextFormatShape) {
  auto c = make_circuit({"a0", "b0"}, {{GateKind::CNOT, {"a0", "b0"}}, {GateKind::NOT, {"b0"}}}, 1);
  EXPECT_EQ(to_text(c), "width 1\nqubit a0\nqubit b0\nCNOT a0,b0 ; deps=\nNOT b0 ; deps=0\n");
}

TEST(Circuit, TextErrorsReportLine) {
  EXPECT_THROW(from_text("qubit a\nFOO a ; deps=\n"), CircuitError);
  EXPECT_THROW(from_text("qubit a\nNOT b ; deps=\n"), CircuitError);
  EXPECT_THROW(from_text("qubit a\nNOT a\n"), CircuitError);
  EXPECT_THROW(from_text("qubit a\nNOT a ; deps=3\n"), CircuitError);
}

TEST(Circuit, CensusCountsKinds) {
  auto ad = generate_cdkm(1);
  auto census = gate_census(ad.circuit);
  EXPECT_EQ(census[GateKind::CCNOT], 2U);
  EXPECT_EQ(census[GateKind::CNOT], 6U);
  EXPECT_EQ(census[GateKind::NOT], 2U);
}
