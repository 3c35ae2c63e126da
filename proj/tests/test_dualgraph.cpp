#include "doctest.h"
#include "doublesix/dualgraph.hpp"

using namespace doublesix;

namespace {

DualGraph cycle(int n) {
  DualGraph g;
  for (int i = 0; i < n; ++i) g.add_node("c" + std::to_string(i), -2);
  if (n == 2) {
    g.add_edge(0, 1, 2);
    return g;
  }
  for (int i = 0; i < n; ++i) g.add_edge(i, (i + 1) % n, 1);
  return g;
}

// D-tilde shape: chain of (n-3) nodes with two forks at each end
DualGraph dtilde(int nodes) {
  DualGraph g;
  for (int i = 0; i < nodes; ++i) g.add_node("d" + std::to_string(i), -2);
  if (nodes == 5) {
    for (int i = 1; i < 5; ++i) g.add_edge(0, i, 1);
    return g;
  }
  // chain 0..m-1 where m = nodes-4, forks 4 extra
  int m = nodes - 4;
  for (int i = 0; i + 1 < m; ++i) g.add_edge(i, i + 1, 1);
  g.add_edge(0, m, 1);
  g.add_edge(0, m + 1, 1);
  g.add_edge(m - 1, m + 2, 1);
  g.add_edge(m - 1, m + 3, 1);
  return g;
}

DualGraph etilde(int which) {  // 6, 7 or 8
  DualGraph g;
  int n = which + 1;
  for (int i = 0; i < n; ++i) g.add_node("e" + std::to_string(i), -2);
  // center 0 with three arms
  auto arm = [&](int len, int start_id) {
    int prev = 0;
    for (int k = 0; k < len; ++k) {
      g.add_edge(prev, start_id + k, 1);
      prev = start_id + k;
    }
  };
  if (which == 6) {
    arm(2, 1);
    arm(2, 3);
    arm(2, 5);
  } else if (which == 7) {
    arm(1, 1);
    arm(3, 2);
    arm(3, 5);
  } else {
    arm(1, 1);
    arm(2, 2);
    arm(5, 4);
  }
  return g;
}

}  // namespace

TEST_CASE("cycles classify as I_n") {
  CHECK(classify_fiber(cycle(2)) == KodairaType{KodairaType::In, 2});
  CHECK(classify_fiber(cycle(3)) == KodairaType{KodairaType::In, 3});
  CHECK(classify_fiber(cycle(8)) == KodairaType{KodairaType::In, 8});
}

TEST_CASE("D and E shapes classify as starred fibers") {
  CHECK(classify_fiber(dtilde(5)) == KodairaType{KodairaType::Instar, 0});
  CHECK(classify_fiber(dtilde(6)) == KodairaType{KodairaType::Instar, 1});
  CHECK(classify_fiber(dtilde(9)) == KodairaType{KodairaType::Instar, 4});
  CHECK(classify_fiber(dtilde(10)) == KodairaType{KodairaType::Instar, 5});
  CHECK(classify_fiber(dtilde(13)) == KodairaType{KodairaType::Instar, 8});
  CHECK(classify_fiber(etilde(6)) == KodairaType{KodairaType::IVstar, 0});
  CHECK(classify_fiber(etilde(7)) == KodairaType{KodairaType::IIIstar, 0});
  CHECK(classify_fiber(etilde(8)) == KodairaType{KodairaType::IIstar, 0});
}

TEST_CASE("the two big-fiber configurations") {
  // forks G34, Gamma on Delta3; chain Delta3-G23-Delta2-G12-Delta1; forks
  // G15, G16 on Delta1
  DualGraph g;
  for (auto l : {"G34", "Gamma", "Delta3", "G23", "Delta2", "G12", "Delta1", "G15", "G16"})
    g.add_node(l, -2);
  g.add_edge("G34", "Delta3");
  g.add_edge("Gamma", "Delta3");
  g.add_edge("Delta3", "G23");
  g.add_edge("G23", "Delta2");
  g.add_edge("Delta2", "G12");
  g.add_edge("G12", "Delta1");
  g.add_edge("Delta1", "G15");
  g.add_edge("Delta1", "G16");
  CHECK(classify_fiber(g) == KodairaType{KodairaType::Instar, 4});

  auto cyc = fiber_cycle(g);
  // G34 + Gamma + 2(Delta3 + G23 + Delta2 + G12 + Delta1) + G15 + G16
  std::map<std::string, long> expect{{"G34", 1},    {"Gamma", 1}, {"Delta3", 2},
                                     {"G23", 2},    {"Delta2", 2}, {"G12", 2},
                                     {"Delta1", 2}, {"G15", 1},   {"G16", 1}};
  for (int i = 0; i < g.size(); ++i) CHECK(cyc[i] == expect[g.nodes[i].label]);

  // Kummer variant: 10 nodes
  DualGraph k;
  for (auto l :
       {"Gamma1", "Gamma2", "G34", "Delta3", "G23", "Delta2", "G12", "Delta1", "G15", "G16"})
    k.add_node(l, -2);
  k.add_edge("Gamma1", "G34");
  k.add_edge("Gamma2", "G34");
  k.add_edge("G34", "Delta3");
  k.add_edge("Delta3", "G23");
  k.add_edge("G23", "Delta2");
  k.add_edge("Delta2", "G12");
  k.add_edge("G12", "Delta1");
  k.add_edge("Delta1", "G15");
  k.add_edge("Delta1", "G16");
  CHECK(classify_fiber(k) == KodairaType{KodairaType::Instar, 5});
}

TEST_CASE("III* cycle multiplicities match the standard fiber") {
  auto g = etilde(7);
  CHECK(fiber_cycle(g) ==
        IVec{Int(4), Int(2), Int(3), Int(2), Int(1), Int(3), Int(2), Int(1)});
  // kernel property: cycle annihilates the gram
  auto cyc = fiber_cycle(g);
  IVec prod = vec_mul(cyc, g.gram());
  CHECK(is_zero(prod));
}

TEST_CASE("fiber cycles are primitive positive kernel vectors") {
  for (auto* g : {new DualGraph(cycle(5)), new DualGraph(dtilde(9)), new DualGraph(etilde(6))}) {
    auto cyc = fiber_cycle(*g);
    Int content = 0;
    for (const auto& c : cyc) {
      CHECK(c > 0);
      content = gcd(content, c);
    }
    CHECK(content == 1);
    IVec prod = vec_mul(cyc, g->gram());
    CHECK(is_zero(prod));
    delete g;
  }
}

TEST_CASE("euler numbers") {
  CHECK(euler_number({KodairaType::In, 1}) == 1);
  CHECK(euler_number({KodairaType::In, 2}) == 2);
  CHECK(euler_number({KodairaType::Instar, 8}) == 14);
  CHECK(euler_number({KodairaType::Instar, 10}) == 16);
  CHECK(euler_number({KodairaType::IIstar, 0}) == 10);
  CHECK(euler_number({KodairaType::IIIstar, 0}) == 9);
  CHECK(euler_number({KodairaType::IVstar, 0}) == 8);
  // the standard inventories balance to the K3 Euler number
  CHECK(euler_number({KodairaType::Instar, 8}) + 2 * 2 + 6 * 1 == 24);
  CHECK(euler_number({KodairaType::Instar, 10}) + 2 + 6 * 1 == 24);
  CHECK(euler_number({KodairaType::Instar, 4}) + 6 * 2 + 2 * 1 == 24);
  CHECK(euler_number({KodairaType::Instar, 5}) + 6 * 2 + 1 * 1 == 24);
}

TEST_CASE("component counts cross-check the euler table") {
  // I_n has n components; I_n* has n+5
  for (int n = 2; n <= 8; ++n) CHECK(cycle(n).size() == n);
  for (int n = 0; n <= 8; ++n) CHECK(dtilde(n + 5).size() == n + 5);
}

TEST_CASE("isomorphism finds relabelings and refuses distinct shapes") {
  auto g = dtilde(9);
  // shuffled copy
  DualGraph h;
  std::vector<int> perm{3, 1, 4, 0, 8, 2, 7, 5, 6};
  std::vector<int> inv(9);
  for (int i = 0; i < 9; ++i) inv[perm[i]] = i;
  for (int i = 0; i < 9; ++i) h.add_node("x" + std::to_string(i), -2);
  for (const auto& [e, m] : g.edges) h.add_edge(inv[e.first], inv[e.second], m);
  auto iso = is_isomorphic(g, h);
  REQUIRE(iso.has_value());
  for (int i = 0; i < 9; ++i)
    for (int j = 0; j < 9; ++j) CHECK(g.edge(i, j) == h.edge((*iso)[i], (*iso)[j]));

  CHECK(!is_isomorphic(dtilde(9), dtilde(10)).has_value());
  CHECK(!is_isomorphic(cycle(4), cycle(5)).has_value());
  // same size, different shape
  CHECK(!is_isomorphic(cycle(7), etilde(6)).has_value());
  // self-intersections matter
  DualGraph a, b;
  a.add_node("p", -2);
  a.add_node("q", -2);
  a.add_edge(0, 1, 1);
  b.add_node("p", -2);
  b.add_node("q", -4);
  b.add_edge(0, 1, 1);
  CHECK(!is_isomorphic(a, b).has_value());
}

TEST_CASE("classification is invariant under relabeling") {
  Rng rng(31);
  auto g = dtilde(12);
  for (int t = 0; t < 5; ++t) {
    // random permutation
    int n = g.size();
    std::vector<int> perm(n);
    for (int i = 0; i < n; ++i) perm[i] = i;
    for (int i = n - 1; i > 0; --i) std::swap(perm[i], perm[rng.range(0, i)]);
    DualGraph h;
    for (int i = 0; i < n; ++i) h.add_node("y" + std::to_string(i), -2);
    for (const auto& [e, m] : g.edges) h.add_edge(perm[e.first], perm[e.second], m);
    CHECK(classify_fiber(h) == classify_fiber(g));
    CHECK(is_isomorphic(g, h).has_value());
  }
}

TEST_CASE("non-fibers are rejected") {
  // definite chain (A_n): corank 0
  DualGraph a;
  a.add_node("a", -2);
  a.add_node("b", -2);
  a.add_edge(0, 1, 1);
  CHECK_THROWS_AS(classify_fiber(a), Error);
  // wrong self-intersection
  DualGraph b;
  b.add_node("a", -1);
  CHECK_THROWS_AS(classify_fiber(b), Error);
  // disconnected
  DualGraph c = cycle(3);
  c.add_node("iso", -2);
  CHECK_THROWS_AS(classify_fiber(c), Error);
}

TEST_CASE("dot and json output") {
  auto g = cycle(2);
  auto dot = to_dot(g);
  CHECK(dot.find("graph dual {") != std::string::npos);
  CHECK(dot.find("c0 (-2)") != std::string::npos);
  CHECK(dot.find("[label=\"2\"]") != std::string::npos);
  auto j = graph_to_json(g);
  CHECK(j["nodes"].size() == 2);
  CHECK(j["edges"][0][2] == 2);
  // deterministic
  CHECK(to_dot(g) == to_dot(g));
}
