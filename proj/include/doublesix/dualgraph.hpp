#pragma once

// Configuration graphs of rational curves: nodes carry self-intersections,
// edges carry intersection multiplicities. Recognizes Kodaira fiber types
// through affine Dynkin shapes, extracts fiber cycles as primitive kernel
// vectors, tests graph isomorphism and renders DOT.

#include "doublesix/surface.hpp"

#include "json.hpp"

#include <optional>
#include <sstream>

namespace doublesix {

struct GraphNode {
  std::string label;
  int self_int;
};

struct DualGraph {
  std::vector<GraphNode> nodes;
  std::map<std::pair<int, int>, int> edges;  // (i < j) -> multiplicity >= 1

  int size() const { return static_cast<int>(nodes.size()); }

  int add_node(const std::string& label, int self_int) {
    nodes.push_back({label, self_int});
    return size() - 1;
  }

  int index_of(const std::string& label) const {
    for (int i = 0; i < size(); ++i)
      if (nodes[i].label == label) return i;
    throw Error(Errc::DimensionMismatch, "no node named " + label);
  }

  void add_edge(int i, int j, int mult = 1) {
    assert(i != j && mult >= 1);
    if (i > j) std::swap(i, j);
    edges[{i, j}] += mult;
  }

  void add_edge(const std::string& a, const std::string& b, int mult = 1) {
    add_edge(index_of(a), index_of(b), mult);
  }

  int edge(int i, int j) const {
    if (i == j) return 0;
    if (i > j) std::swap(i, j);
    auto it = edges.find({i, j});
    return it == edges.end() ? 0 : it->second;
  }

  // degree counting multiplicity
  int degree(int i) const {
    int d = 0;
    for (int j = 0; j < size(); ++j) d += edge(i, j);
    return d;
  }

  IMat gram() const {
    IMat g(size(), size());
    for (int i = 0; i < size(); ++i) {
      g(i, i) = nodes[i].self_int;
      for (int j = 0; j < size(); ++j)
        if (i != j) g(i, j) = edge(i, j);
    }
    return g;
  }

  bool connected() const {
    if (size() == 0) return true;
    std::vector<bool> seen(size(), false);
    std::vector<int> stack{0};
    seen[0] = true;
    int cnt = 1;
    while (!stack.empty()) {
      int x = stack.back();
      stack.pop_back();
      for (int j = 0; j < size(); ++j)
        if (!seen[j] && edge(x, j) > 0) {
          seen[j] = true;
          ++cnt;
          stack.push_back(j);
        }
    }
    return cnt == size();
  }

  DualGraph induced(const std::vector<int>& subset) const {
    DualGraph g;
    for (int i : subset) g.nodes.push_back(nodes[i]);
    for (size_t a = 0; a < subset.size(); ++a)
      for (size_t b = a + 1; b < subset.size(); ++b) {
        int m = edge(subset[a], subset[b]);
        if (m > 0) g.add_edge(static_cast<int>(a), static_cast<int>(b), m);
      }
    return g;
  }

  DualGraph induced_labels(const std::vector<std::string>& labels) const {
    std::vector<int> idx;
    for (const auto& l : labels) idx.push_back(index_of(l));
    return induced(idx);
  }
};

// dual graph of a list of named curve classes on a model
inline DualGraph graph_from_classes(const SurfaceModel& s,
                                    const std::vector<std::pair<std::string, DivisorClass>>& cs) {
  DualGraph g;
  for (const auto& [label, c] : cs) {
    Rat sq = self_intersection(s, c);
    if (!is_integer(sq)) throw Error(Errc::DimensionMismatch, "non-integral self-intersection");
    g.add_node(label, static_cast<int>(num(sq).get_si()));
  }
  for (size_t i = 0; i < cs.size(); ++i)
    for (size_t j = i + 1; j < cs.size(); ++j) {
      Rat m = intersect(s, cs[i].second, cs[j].second);
      if (m != 0) g.add_edge(static_cast<int>(i), static_cast<int>(j),
                             static_cast<int>(num(m).get_si()));
    }
  return g;
}

// ---------------------------------------------------------------------------
// Kodaira types

struct KodairaType {
  enum Tag { In, Instar, II, III, IV, IIstar, IIIstar, IVstar } tag;
  int n = 0;  // for In (n >= 1) and In* (n >= 0)

  std::string str() const {
    switch (tag) {
      case In: return "I" + std::to_string(n);
      case Instar: return "I" + std::to_string(n) + "*";
      case II: return "II";
      case III: return "III";
      case IV: return "IV";
      case IIstar: return "II*";
      case IIIstar: return "III*";
      case IVstar: return "IV*";
    }
    return "?";
  }
  bool operator==(const KodairaType& o) const { return tag == o.tag && n == o.n; }
};

inline int euler_number(const KodairaType& t) {
  switch (t.tag) {
    case KodairaType::In: return t.n;
    case KodairaType::Instar: return t.n + 6;
    case KodairaType::II: return 2;
    case KodairaType::III: return 3;
    case KodairaType::IV: return 4;
    case KodairaType::IVstar: return 8;
    case KodairaType::IIIstar: return 9;
    case KodairaType::IIstar: return 10;
  }
  return 0;
}

// Affine Dynkin recognition on a connected graph of (-2)-curves.
inline KodairaType classify_fiber(const DualGraph& g) {
  int n = g.size();
  if (n == 0) throw Error(Errc::NotAFiber, "empty graph");
  for (const auto& node : g.nodes)
    if (node.self_int != -2)
      throw Error(Errc::NotAFiber, "fiber components must be (-2)-curves");
  if (!g.connected()) throw Error(Errc::NotAFiber, "fiber graph is not connected");
  auto sig = signature_q(g.gram());
  if (sig.positive != 0 || sig.zero != 1)
    throw Error(Errc::NotAFiber, "component gram is not negative semidefinite of corank 1");

  std::vector<int> deg(n);
  for (int i = 0; i < n; ++i) deg[i] = g.degree(i);
  std::vector<int> branch;
  for (int i = 0; i < n; ++i)
    if (deg[i] >= 3) branch.push_back(i);

  if (branch.empty()) {
    // every node has degree 2: a cycle (the 2-node cycle is the double edge)
    for (int i = 0; i < n; ++i)
      if (deg[i] != 2) throw Error(Errc::NotAFiber, "unrecognized fiber shape");
    if (n < 2) throw Error(Errc::NotAFiber, "unrecognized fiber shape");
    return {KodairaType::In, n};
  }
  if (branch.size() == 1 && deg[branch[0]] == 4 && n == 5) return {KodairaType::Instar, 0};
  if (branch.size() == 2 && deg[branch[0]] == 3 && deg[branch[1]] == 3 && n >= 6)
    return {KodairaType::Instar, n - 5};
  if (branch.size() == 1 && deg[branch[0]] == 3) {
    // walk the three simple-edge branches
    int b = branch[0];
    std::vector<int> lens;
    for (int y = 0; y < n; ++y) {
      if (y == b || g.edge(b, y) != 1) continue;
      int len = 1, prev = b, cur = y;
      while (true) {
        int next = -1;
        for (int z = 0; z < n; ++z)
          if (z != prev && z != cur && g.edge(cur, z) > 0) {
            if (next >= 0) throw Error(Errc::NotAFiber, "unrecognized fiber shape");
            next = z;
          }
        if (next < 0) break;
        prev = cur;
        cur = next;
        ++len;
      }
      lens.push_back(len);
    }
    std::sort(lens.begin(), lens.end());
    if (lens == std::vector<int>{2, 2, 2}) return {KodairaType::IVstar, 0};
    if (lens == std::vector<int>{1, 3, 3}) return {KodairaType::IIIstar, 0};
    if (lens == std::vector<int>{1, 2, 5}) return {KodairaType::IIstar, 0};
  }
  throw Error(Errc::NotAFiber, "unrecognized fiber shape");
}

// primitive positive kernel vector: the component multiplicities
inline IVec fiber_cycle(const DualGraph& g) {
  classify_fiber(g);  // validates
  auto ker = right_kernel(to_q(g.gram()));
  if (ker.size() != 1) throw Error(Errc::NotAFiber, "kernel is not one-dimensional");
  QVec v = ker[0];
  Int l = 1;
  for (const auto& c : v) l = lcm(l, den(c));
  IVec out(v.size());
  Int content = 0;
  for (size_t i = 0; i < v.size(); ++i) {
    out[i] = num(v[i] * Rat(l));
    content = gcd(content, out[i]);
  }
  if (content > 1)
    for (auto& c : out) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), content.get_mpz_t());
  bool neg = false, pos = false;
  for (const auto& c : out) {
    if (c < 0) neg = true;
    if (c > 0) pos = true;
  }
  if (neg && pos) throw Error(Errc::NotAFiber, "kernel vector is not signed");
  if (neg)
    for (auto& c : out) c = -c;
  return out;
}

// ---------------------------------------------------------------------------
// isomorphism

namespace detail {

inline std::vector<long> wl_colors(const DualGraph& g) {
  int n = g.size();
  std::vector<long> color(n);
  for (int i = 0; i < n; ++i) color[i] = g.nodes[i].self_int * 1000 + g.degree(i);
  for (int round = 0; round < 3; ++round) {
    std::vector<std::pair<long, std::vector<std::pair<int, long>>>> sigs(n);
    for (int i = 0; i < n; ++i) {
      sigs[i].first = color[i];
      for (int j = 0; j < n; ++j)
        if (g.edge(i, j) > 0) sigs[i].second.emplace_back(g.edge(i, j), color[j]);
      std::sort(sigs[i].second.begin(), sigs[i].second.end());
    }
    // canonical renumbering of signatures
    auto sorted = sigs;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    for (int i = 0; i < n; ++i) {
      auto it = std::lower_bound(sorted.begin(), sorted.end(), sigs[i]);
      color[i] = static_cast<long>(it - sorted.begin());
    }
  }
  return color;
}

}  // namespace detail

// Node bijection preserving self-intersections and edge multiplicities,
// deterministic (lexicographically first in the search order); nullopt when
// none exists.
inline std::optional<std::vector<int>> is_isomorphic(const DualGraph& a, const DualGraph& b) {
  int n = a.size();
  if (n != b.size() || a.edges.size() != b.edges.size()) return std::nullopt;
  auto ca = detail::wl_colors(a);
  auto cb = detail::wl_colors(b);
  {
    auto sa = ca, sb = cb;
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());
    if (sa != sb) return std::nullopt;
  }
  // order a-nodes by rarity of color, then index (most constrained first)
  std::map<long, int> freq;
  for (long c : ca) ++freq[c];
  std::vector<int> order(n);
  for (int i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](int x, int y) {
    if (freq[ca[x]] != freq[ca[y]]) return freq[ca[x]] < freq[ca[y]];
    return x < y;
  });
  std::vector<int> map_ab(n, -1), used(n, 0);
  std::function<bool(int)> rec = [&](int k) {
    if (k == n) return true;
    int i = order[k];
    for (int j = 0; j < n; ++j) {
      if (used[j] || cb[j] != ca[i]) continue;
      if (a.nodes[i].self_int != b.nodes[j].self_int) continue;
      bool ok = true;
      for (int k2 = 0; k2 < k && ok; ++k2) {
        int i2 = order[k2];
        if (a.edge(i, i2) != b.edge(j, map_ab[i2])) ok = false;
      }
      if (!ok) continue;
      map_ab[i] = j;
      used[j] = 1;
      if (rec(k + 1)) return true;
      used[j] = 0;
      map_ab[i] = -1;
    }
    return false;
  };
  if (!rec(0)) return std::nullopt;
  return map_ab;
}

// ---------------------------------------------------------------------------
// rendering

inline std::string to_dot(const DualGraph& g) {
  std::ostringstream os;
  os << "graph dual {\n";
  for (int i = 0; i < g.size(); ++i)
    os << "  n" << i << " [label=\"" << g.nodes[i].label << " (" << g.nodes[i].self_int
       << ")\"];\n";
  for (const auto& [e, m] : g.edges) {
    os << "  n" << e.first << " -- n" << e.second;
    if (m > 1) os << " [label=\"" << m << "\"]";
    os << ";\n";
  }
  os << "}\n";
  return os.str();
}

inline nlohmann::ordered_json graph_to_json(const DualGraph& g) {
  nlohmann::ordered_json j;
  j["nodes"] = nlohmann::ordered_json::array();
  for (const auto& node : g.nodes) j["nodes"].push_back({{"label", node.label}, {"sq", node.self_int}});
  j["edges"] = nlohmann::ordered_json::array();
  for (const auto& [e, m] : g.edges) j["edges"].push_back({e.first, e.second, m});
  return j;
}

}  // namespace doublesix
