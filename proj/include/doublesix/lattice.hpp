#pragma once

// Integer lattices with symmetric bilinear forms: the standard lattices
// (H, A_n, D_n, E6/E7/E8, Nikulin), root enumeration on negative definite
// forms, ADE classification of root sublattices, span membership with
// witnesses, and finite quotients via Smith normal form.
//
// Sign convention: ADE lattices are negative definite (Gram = -Cartan);
// roots have norm -2. H is [[0,1],[1,0]].

#include "doublesix/matrix.hpp"

#include <map>
#include <sstream>
#include <string>

namespace doublesix {

struct IntegerLattice {
  int rank = 0;
  IMat gram;  // rank x rank, symmetric

  bool is_even() const {
    for (int i = 0; i < rank; ++i)
      if (gram(i, i) % 2 != 0) return false;
    return true;
  }
};

inline IntegerLattice make_lattice(IMat gram) {
  IntegerLattice l;
  l.rank = gram.rows();
  assert(gram.rows() == gram.cols());
  for (int i = 0; i < l.rank; ++i)
    for (int j = 0; j < i; ++j) assert(gram(i, j) == gram(j, i));
  l.gram = std::move(gram);
  return l;
}

enum class LatticeName { H, A, D, E6, E7, E8, Nikulin };

namespace detail {

// -Cartan from an adjacency list on n nodes.
inline IMat neg_cartan(int n, const std::vector<std::pair<int, int>>& edges) {
  IMat g(n, n);
  for (int i = 0; i < n; ++i) g(i, i) = -2;
  for (auto [a, b] : edges) {
    g(a, b) = 1;
    g(b, a) = 1;
  }
  return g;
}

inline std::vector<std::pair<int, int>> chain_edges(int n) {
  std::vector<std::pair<int, int>> e;
  for (int i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
  return e;
}

}  // namespace detail

// Span of rational generator rows inside Z^n scaled by 1/denom: returns the
// HNF basis of the exact integer span (no saturation).
inline QMat span_basis_hnf(const QMat& generators) {
  Int d = 1;
  for (int i = 0; i < generators.rows(); ++i)
    for (int j = 0; j < generators.cols(); ++j) d = lcm(d, den(generators(i, j)));
  IMat scaled(generators.rows(), generators.cols());
  for (int i = 0; i < generators.rows(); ++i)
    for (int j = 0; j < generators.cols(); ++j) scaled(i, j) = num(generators(i, j) * Rat(d));
  IMat h = hnf_rows(scaled);
  QMat out(h.rows(), h.cols());
  for (int i = 0; i < h.rows(); ++i)
    for (int j = 0; j < h.cols(); ++j) out(i, j) = Rat(h(i, j)) / Rat(d);
  return out;
}

inline IntegerLattice standard_lattice(LatticeName name, int n = 0) {
  switch (name) {
    case LatticeName::H: {
      IMat g(2, 2);
      g(0, 1) = 1;
      g(1, 0) = 1;
      return make_lattice(g);
    }
    case LatticeName::A: {
      if (n < 1) throw Error(Errc::UnknownLattice, "A_n needs n >= 1");
      return make_lattice(detail::neg_cartan(n, detail::chain_edges(n)));
    }
    case LatticeName::D: {
      if (n < 3) throw Error(Errc::UnknownLattice, "D_n needs n >= 3");
      auto e = detail::chain_edges(n - 1);
      e.emplace_back(n - 3, n - 1);
      return make_lattice(detail::neg_cartan(n, e));
    }
    case LatticeName::E6:
    case LatticeName::E7:
    case LatticeName::E8: {
      int m = name == LatticeName::E6 ? 6 : name == LatticeName::E7 ? 7 : 8;
      // chain 0-1-2-3-..-(m-2), extra node (m-1) attached to node 2
      auto e = detail::chain_edges(m - 1);
      e.emplace_back(2, m - 1);
      return make_lattice(detail::neg_cartan(m, e));
    }
    case LatticeName::Nikulin: {
      // overlattice of A1^8 by the all-ones half vector
      QMat gens(9, 8);
      for (int i = 0; i < 8; ++i) gens(i, i) = 1;
      for (int j = 0; j < 8; ++j) gens(8, j) = Rat(1, 2);
      QMat basis = span_basis_hnf(gens);
      assert(basis.rows() == 8);
      IMat a1_8(8, 8);
      for (int i = 0; i < 8; ++i) a1_8(i, i) = -2;
      IMat g(8, 8);
      for (int i = 0; i < 8; ++i)
        for (int j = 0; j < 8; ++j) {
          Rat v = bilinear(to_q(a1_8), basis.row(i), basis.row(j));
          assert(is_integer(v));
          g(i, j) = num(v);
        }
      return make_lattice(g);
    }
  }
  throw Error(Errc::UnknownLattice, "unknown lattice name");
}

inline IntegerLattice direct_sum(const IntegerLattice& a, const IntegerLattice& b) {
  IMat g(a.rank + b.rank, a.rank + b.rank);
  for (int i = 0; i < a.rank; ++i)
    for (int j = 0; j < a.rank; ++j) g(i, j) = a.gram(i, j);
  for (int i = 0; i < b.rank; ++i)
    for (int j = 0; j < b.rank; ++j) g(a.rank + i, a.rank + j) = b.gram(i, j);
  return make_lattice(g);
}

inline IntegerLattice twist(const IntegerLattice& l, const Int& n) {
  assert(n > 0);
  IMat g = l.gram;
  for (int i = 0; i < l.rank; ++i)
    for (int j = 0; j < l.rank; ++j) g(i, j) *= n;
  return make_lattice(g);
}

inline FormSignature signature(const IntegerLattice& l) { return signature_q(l.gram); }

inline Int discriminant(const IntegerLattice& l) { return bareiss_det(l.gram); }

// Rank-2 even indefinite determinant -1 certifies the hyperbolic plane;
// used by the polarization and F0 certificates.
inline bool is_hyperbolic_plane(const IMat& gram2) {
  if (gram2.rows() != 2 || gram2.cols() != 2) return false;
  if (gram2(0, 1) != gram2(1, 0)) return false;
  if (gram2(0, 0) % 2 != 0 || gram2(1, 1) % 2 != 0) return false;
  return bareiss_det(gram2) == -1;
}

// ---------------------------------------------------------------------------
// root enumeration (Fincke-Pohst on -gram)

namespace detail {

// A = U^T D U with U unit upper triangular, D positive diagonal.
// Throws NotDefinite when A is not positive definite.
inline void cholesky_udu(const QMat& a, QMat& u, QVec& d) {
  int n = a.rows();
  QMat m = a;
  u = QMat::identity(n);
  d.assign(n, Rat(0));
  for (int k = 0; k < n; ++k) {
    if (m(k, k) <= 0) throw Error(Errc::NotDefinite, "form is not definite");
    d[k] = m(k, k);
    for (int j = k + 1; j < n; ++j) u(k, j) = m(k, j) / m(k, k);
    for (int i = k + 1; i < n; ++i)
      for (int j = k + 1; j < n; ++j) m(i, j) -= m(i, k) * m(k, j) / m(k, k);
  }
}

}  // namespace detail

// All integer vectors v with v G v^T = -norm (norm > 0) for negative definite
// G, in lexicographic order. Exhaustive by construction.
inline std::vector<IVec> vectors_of_norm(const IMat& gram, const Int& norm) {
  int n = gram.rows();
  QMat a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = Rat(-gram(i, j));
  QMat u;
  QVec d;
  detail::cholesky_udu(a, u, d);
  // q(v) = sum_i d_i (v_i + sum_{j>i} u_ij v_j)^2 ; enumerate from the last
  // coordinate backwards.
  std::vector<IVec> out;
  IVec v(n, Int(0));
  Rat target(norm);
  std::function<void(int, Rat)> rec = [&](int i, Rat remaining) {
    if (i < 0) {
      if (remaining == 0 && !is_zero(v)) out.push_back(v);
      return;
    }
    Rat center = 0;
    for (int j = i + 1; j < n; ++j) center += u(i, j) * Rat(v[j]);
    // d_i (v_i + center)^2 <= remaining
    Rat bound2 = remaining / d[i];
    Int lo = rat_ceil(-center - Rat(rat_sqrt_ceil(bound2)));
    Int hi = rat_floor(-center + Rat(rat_sqrt_ceil(bound2)));
    for (Int x = lo; x <= hi; ++x) {
      Rat term = d[i] * (Rat(x) + center) * (Rat(x) + center);
      if (term > remaining) continue;
      v[i] = x;
      rec(i - 1, remaining - term);
    }
    v[i] = 0;
  };
  rec(n - 1, target);
  std::sort(out.begin(), out.end());
  return out;
}

inline std::vector<IVec> roots(const IntegerLattice& l) {
  FormSignature s = signature(l);
  if (s.positive > 0 || s.zero > 0)
    throw Error(Errc::NotDefinite, "roots need a negative definite lattice");
  if (l.rank == 0) return {};
  return vectors_of_norm(l.gram, 2);
}

// ---------------------------------------------------------------------------
// sublattice spans

struct SublatticeSpan {
  IntegerLattice ambient;
  IMat basis;  // HNF rows in ambient coordinates

  int rank() const { return basis.rows(); }
};

inline SublatticeSpan make_span(const IntegerLattice& ambient, const IMat& generators) {
  if (generators.cols() != ambient.rank)
    throw Error(Errc::DimensionMismatch, "span generators do not match ambient rank");
  SublatticeSpan s;
  s.ambient = ambient;
  s.basis = hnf_rows(generators);
  return s;
}

inline SublatticeSpan root_span(const IntegerLattice& l) {
  auto rs = roots(l);
  IMat gen(static_cast<int>(rs.size()), l.rank);
  for (size_t i = 0; i < rs.size(); ++i) gen.set_row(static_cast<int>(i), rs[i]);
  return make_span(l, gen);
}

// Gram matrix of the span in its own basis.
inline IntegerLattice span_lattice(const SublatticeSpan& s) {
  int r = s.basis.rows();
  IMat g(r, r);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) g(i, j) = bilinear(s.ambient.gram, s.basis.row(i), s.basis.row(j));
  return make_lattice(g);
}

inline std::optional<IVec> span_coordinates(const SublatticeSpan& s, const IVec& v) {
  if (static_cast<int>(v.size()) != s.ambient.rank)
    throw Error(Errc::DimensionMismatch, "vector does not live in ambient coordinates");
  return solve_left_int_hnf(s.basis, v);
}

inline bool member_of_span(const IVec& v, const SublatticeSpan& s) {
  return span_coordinates(s, v).has_value();
}

// ---------------------------------------------------------------------------
// ADE classification

struct AdeSymbol {
  char family;  // 'A', 'D' or 'E'
  int n;
  bool operator==(const AdeSymbol& o) const { return family == o.family && n == o.n; }
  bool operator<(const AdeSymbol& o) const {
    return family != o.family ? family < o.family : n < o.n;
  }
  std::string str() const { return family + std::to_string(n); }
};

inline std::string ade_to_string(const std::vector<AdeSymbol>& v) {
  std::ostringstream os;
  for (size_t i = 0; i < v.size(); ++i) os << (i ? "+" : "") << v[i].str();
  return os.str();
}

// Decompose a root-generated span into its ADE components: enumerate the
// roots of the span lattice, pick the simple roots with respect to a
// deterministic positivity functional, read the Dynkin graph off the
// pairings, and match each connected component.
inline std::vector<AdeSymbol> classify_ade(const SublatticeSpan& s) {
  IntegerLattice ls = span_lattice(s);
  auto all = roots(ls);
  if (all.empty()) {
    if (ls.rank == 0) return {};
    throw Error(Errc::NotRootGenerated, "span has no roots");
  }
  // positivity functional: base-N weights with N beyond any coordinate,
  // injective (hence nonzero) on the root coordinates
  Int maxc = 0;
  for (const auto& r : all)
    for (const auto& x : r)
      if (abs(x) > maxc) maxc = abs(x);
  Int big = 2 * maxc + 1;
  auto fval = [&](const IVec& r) {
    Int acc = 0;
    for (const auto& x : r) acc = acc * big + x;
    return acc;
  };
  std::vector<IVec> pos;
  for (const auto& r : all)
    if (fval(r) > 0) pos.push_back(r);
  std::sort(pos.begin(), pos.end());
  // simple = positive root that is not a sum of two positive roots
  auto is_pos = [&](const IVec& r) { return std::binary_search(pos.begin(), pos.end(), r); };
  std::vector<IVec> simple;
  for (const auto& r : pos) {
    bool sum = false;
    for (const auto& u : pos) {
      if (u == r) continue;
      IVec w = vec_sub(r, u);
      if (is_pos(w)) {
        sum = true;
        break;
      }
    }
    if (!sum) simple.push_back(r);
  }
  int k = static_cast<int>(simple.size());
  // pairings must look like a simply-laced Dynkin diagram
  IMat g(k, k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) g(i, j) = bilinear(ls.gram, simple[i], simple[j]);
  for (int i = 0; i < k; ++i) {
    if (g(i, i) != -2) throw Error(Errc::NotRootGenerated, "simple root of norm != -2");
    for (int j = 0; j < k; ++j)
      if (i != j && g(i, j) != 0 && g(i, j) != 1)
        throw Error(Errc::NotRootGenerated, "simple-root pairing outside {0,1}");
  }
  if (k != ls.rank) throw Error(Errc::NotRootGenerated, "simple roots do not span");
  // connected components of the Dynkin graph
  std::vector<int> comp(k, -1);
  int ncomp = 0;
  for (int i = 0; i < k; ++i) {
    if (comp[i] >= 0) continue;
    std::vector<int> stack{i};
    comp[i] = ncomp;
    while (!stack.empty()) {
      int x = stack.back();
      stack.pop_back();
      for (int j = 0; j < k; ++j)
        if (g(x, j) == 1 && comp[j] < 0) {
          comp[j] = ncomp;
          stack.push_back(j);
        }
    }
    ++ncomp;
  }
  std::vector<AdeSymbol> out;
  for (int c = 0; c < ncomp; ++c) {
    std::vector<int> nodes;
    for (int i = 0; i < k; ++i)
      if (comp[i] == c) nodes.push_back(i);
    int m = static_cast<int>(nodes.size());
    auto deg = [&](int x) {
      int d = 0;
      for (int y : nodes)
        if (y != x && g(x, y) == 1) ++d;
      return d;
    };
    std::vector<int> branch;
    for (int x : nodes)
      if (deg(x) >= 3) branch.push_back(x);
    if (branch.empty()) {
      out.push_back({'A', m});
      continue;
    }
    if (branch.size() != 1) throw Error(Errc::NotRootGenerated, "not an ADE diagram");
    int b = branch[0];
    if (deg(b) != 3) throw Error(Errc::NotRootGenerated, "not an ADE diagram");
    // walk the three branches
    std::vector<int> lens;
    for (int y : nodes) {
      if (y == b || g(b, y) != 1) continue;
      int len = 1, prev = b, cur = y;
      while (true) {
        int next = -1;
        for (int z : nodes)
          if (z != prev && z != cur && g(cur, z) == 1) {
            if (next >= 0) throw Error(Errc::NotRootGenerated, "not an ADE diagram");
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
    if (lens.size() != 3 || lens[0] != 1) throw Error(Errc::NotRootGenerated, "not an ADE diagram");
    if (lens[1] == 1)
      out.push_back({'D', m});
    else if (lens[1] == 2 && lens[2] >= 2 && lens[2] <= 4)
      out.push_back({'E', m});
    else
      throw Error(Errc::NotRootGenerated, "not an ADE diagram");
  }
  std::sort(out.begin(), out.end());
  return out;
}

// ---------------------------------------------------------------------------
// finite quotients

struct FiniteAbelianGroup {
  std::vector<Int> invariant_factors;  // d1 | d2 | ... , each > 1
  Int order() const {
    Int o = 1;
    for (const auto& d : invariant_factors) o *= d;
    return o;
  }
  bool trivial() const { return invariant_factors.empty(); }
};

struct QuotientGroup {
  FiniteAbelianGroup torsion;
  int free_rank = 0;
  IMat inclusion;  // sub basis rows expressed in big-span coordinates
};

// W / Wroot for nested spans of a common ambient lattice.
inline QuotientGroup quotient_group(const SublatticeSpan& w, const SublatticeSpan& wroot) {
  QuotientGroup q;
  IMat incl(wroot.basis.rows(), w.basis.rows());
  for (int i = 0; i < wroot.basis.rows(); ++i) {
    auto c = span_coordinates(w, wroot.basis.row(i));
    if (!c) throw Error(Errc::NotASublattice, "root span is not contained in the span");
    incl.set_row(i, *c);
  }
  q.inclusion = incl;
  auto d = snf_diag(incl);
  for (const auto& x : d)
    if (x > 1) q.torsion.invariant_factors.push_back(x);
  q.free_rank = w.basis.rows() - static_cast<int>(d.size());
  return q;
}

// Least k >= 1 with k*v in the sub-span, for v in the big span; nullopt when
// no multiple lands (infinite order in the quotient).
inline std::optional<Int> order_in_quotient(const IVec& v, const SublatticeSpan& w,
                                            const SublatticeSpan& wroot) {
  auto vw = span_coordinates(w, v);
  if (!vw) throw Error(Errc::NotASublattice, "vector is not in the span");
  QMat m = to_q(wroot.basis);
  // solve y * (wroot basis) = v in ambient coordinates
  auto y = solve_left_q(m, to_q(v));
  if (!y) return std::nullopt;
  Int k = 1;
  for (const auto& c : *y) k = lcm(k, den(c));
  return k;
}

}  // namespace doublesix
