#include <gtest/gtest.h>

#include <tuple>

#include "qmc/adders.hpp"
#include "qmc/oracle.hpp"
#include "qmc/placement.hpp"

using namespace qmc;

namespace {

const TopologyKind kTopologies[] = {TopologyKind::BUS, TopologyKind::BUS2, TopologyKind::LINE,
                                    TopologyKind::FULLY, TopologyKind::FULLY2};

std::size_t count_kind(const Circuit& c, GateKind k) {
  std::size_t n = 0;
  for (const auto& g : c.gates()) n += g.kind == k;
  return n;
}

}  // namespace

TEST(Placement, VbeBitSlices) {
  const auto p = place(AdderKind::VBE, 4, Strategy::TELEGATE);
  EXPECT_EQ(p.nodes, 4);
  EXPECT_EQ(p.node("a2"), 2);
  EXPECT_EQ(p.node("b2"), 2);
  EXPECT_EQ(p.node("c3"), 2);
  EXPECT_EQ(p.node("c4"), 3);
  for (int occ : p.occupancy()) EXPECT_LE(occ, 3);
}

TEST(Placement, CdkmBitSlices) {
  const auto p = place(AdderKind::CDKM, 4, Strategy::TELEGATE);
  EXPECT_EQ(p.nodes, 4);
  EXPECT_EQ(p.node("x0"), 0);
  EXPECT_EQ(p.node("a0"), 0);
  EXPECT_EQ(p.node("b0"), 0);
  EXPECT_EQ(p.node("a1"), 1);
  EXPECT_EQ(p.node("b1"), 1);
  EXPECT_EQ(p.node("a3"), 3);
  EXPECT_EQ(p.node("c4"), 3);
  EXPECT_EQ(p.occupancy(), (std::vector<int>{3, 2, 2, 3}));
}

TEST(Placement, BaselineOneQubitPerNode) {
  const auto a = generate(AdderKind::VBE, 3);
  const auto p = place(a, Strategy::BASELINE);
  EXPECT_EQ(p.nodes, static_cast<int>(a.circuit.num_qubits()));
  for (int occ : p.occupancy()) EXPECT_EQ(occ, 1);
}

TEST(Placement, TeledataLeavesLandingSlot) {
  for (auto k : {AdderKind::VBE, AdderKind::CDKM, AdderKind::LOOKAHEAD}) {
    const auto p = place(k, 8, Strategy::TELEDATA);
    const auto occ = p.occupancy();
    // Interior nodes; the CDKM end nodes also carry an ancilla.
    for (int v = 1; v + 1 < p.nodes; ++v) EXPECT_LT(occ[v], p.qubits_per_node);
  }
}

TEST(Rewrite, TwoNodeCnotIsOneRemoteGate) {
  const auto c = make_circuit({"a0", "b0"}, {{GateKind::CNOT, {"a0", "b0"}}});
  Placement p;
  p.node_of = {{"a0", 0}, {"b0", 1}};
  p.nodes = 2;
  p.qubits_per_node = 1;
  const auto d = rewrite_telegate(c, p, TopologyKind::BUS);
  const auto rc = remote_op_census(d);
  EXPECT_EQ(rc.rgates, 1u);
  EXPECT_EQ(rc.epr_pairs, 1u);
  EXPECT_EQ(rc.two_node_cnots, 1u);
  EXPECT_EQ(d.circuit.size(), 10u);
}

TEST(Rewrite, ThreeNodeToffoliIsFiveRemoteOps) {
  const auto c = make_circuit({"x", "y", "z"}, {{GateKind::CCNOT, {"x", "y", "z"}}});
  Placement p;
  p.node_of = {{"x", 0}, {"y", 1}, {"z", 2}};
  p.nodes = 3;
  p.qubits_per_node = 1;
  const auto d = rewrite_telegate(c, p, TopologyKind::FULLY);
  const auto rc = remote_op_census(d);
  EXPECT_EQ(rc.rgates, 5u);
  EXPECT_EQ(rc.three_node_ccnots, 1u);
}

TEST(Rewrite, TwoNodeToffoliIsThreeRemoteOps) {
  const auto c = make_circuit({"x", "y", "z"}, {{GateKind::CCNOT, {"x", "y", "z"}}});
  Placement p;
  p.node_of = {{"x", 0}, {"y", 1}, {"z", 1}};
  p.nodes = 2;
  p.qubits_per_node = 2;
  const auto rc = remote_op_census(rewrite_telegate(c, p, TopologyKind::BUS));
  EXPECT_EQ(rc.rgates, 3u);
  EXPECT_EQ(rc.two_node_ccnots, 1u);
}

TEST(Rewrite, LineRelayUsesOnePairPerHop) {
  const auto c = make_circuit({"a0", "b0"}, {{GateKind::CNOT, {"a0", "b0"}}});
  Placement p;
  p.node_of = {{"a0", 0}, {"b0", 3}};
  p.nodes = 4;
  const auto d = rewrite_telegate(c, p, TopologyKind::LINE);
  const auto ids = find_idioms(d.circuit);
  ASSERT_EQ(ids.size(), 1u);
  EXPECT_EQ(ids[0].eprs.size(), 3u);
  EXPECT_EQ(ids[0].from, 0);
  EXPECT_EQ(ids[0].to, 3);
}

TEST(Rewrite, LineTelegateOnlyTouchesNeighbours) {
  for (auto k : {AdderKind::VBE, AdderKind::CDKM}) {
    const auto a = generate(k, 5);
    for (auto s : {Strategy::TELEGATE, Strategy::BASELINE}) {
      const auto d = rewrite(a.circuit, place(a, s), TopologyKind::LINE);
      for (const auto& g : d.circuit.gates()) {
        if (g.kind != GateKind::EPR_CREATE) continue;
        EXPECT_EQ(std::abs(d.circuit.node(g.operands[0]) - d.circuit.node(g.operands[1])), 1);
      }
    }
  }
}

TEST(Rewrite, TwoBitVbeTeledataMovesTwice) {
  const auto a = generate(AdderKind::VBE, 2);
  const auto d = rewrite_teledata(a.circuit, place(a, Strategy::TELEDATA), TopologyKind::BUS);
  EXPECT_EQ(remote_op_census(d).moves, 2u);
  EXPECT_EQ(remote_op_census(d).rgates, 0u);
}

TEST(Rewrite, LocalGatesAreUntouched) {
  const auto a = generate(AdderKind::VBE, 4);
  const auto d = rewrite_telegate(a.circuit, place(a, Strategy::TELEGATE), TopologyKind::BUS);
  EXPECT_EQ(count_kind(d.circuit, GateKind::NOT), count_kind(a.circuit, GateKind::NOT));
  ASSERT_EQ(d.origin.size(), d.circuit.size());
  for (std::size_t g = 0; g < d.circuit.size(); ++g) {
    EXPECT_GE(d.origin[g], 0);
  }
}

TEST(Rewrite, EveryIdiomOnlyGateBelongsToAnIdiom) {
  const auto a = generate(AdderKind::LOOKAHEAD, 8);
  for (auto s : {Strategy::TELEGATE, Strategy::TELEDATA}) {
    const auto d = rewrite(a.circuit, place(a, s), TopologyKind::FULLY);
    std::vector<int> idiom_of;
    find_idioms(d.circuit, &idiom_of);
    for (const auto& g : d.circuit.gates()) {
      if (is_idiom_only(g.kind)) EXPECT_GE(idiom_of[g.id], 0) << g.id;
    }
  }
}

class SemanticsPreserved
    : public ::testing::TestWithParam<std::tuple<AdderKind, int, Strategy, TopologyKind>> {};

TEST_P(SemanticsPreserved, MatchesMonolithic) {
  const auto [kind, n, strategy, topology] = GetParam();
  const auto a = generate(kind, n);
  const auto d = rewrite(a.circuit, place(a, strategy), topology);
  const auto r = equivalence_check(a.circuit, d.circuit, a.layout, n);
  EXPECT_TRUE(r.equivalent) << (r.counterexample ? r.counterexample->detail : "");
  EXPECT_TRUE(check_adder(d.circuit, a.layout).equivalent);
}

INSTANTIATE_TEST_SUITE_P(
    Ripple, SemanticsPreserved,
    ::testing::Combine(::testing::Values(AdderKind::VBE, AdderKind::CDKM), ::testing::Values(1, 2, 3, 5),
                       ::testing::Values(Strategy::BASELINE, Strategy::TELEGATE, Strategy::TELEDATA),
                       ::testing::ValuesIn(kTopologies)));

INSTANTIATE_TEST_SUITE_P(
    Lookahead, SemanticsPreserved,
    ::testing::Combine(::testing::Values(AdderKind::LOOKAHEAD), ::testing::Values(2, 4),
                       ::testing::Values(Strategy::BASELINE, Strategy::TELEGATE, Strategy::TELEDATA),
                       ::testing::ValuesIn(kTopologies)));
