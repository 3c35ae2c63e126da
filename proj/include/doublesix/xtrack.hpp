#pragma once

// The polarized side: canonical nineteen-curve models of H+E7+E7-polarized
// K3 surfaces (special flag = the H+E8+E7 extension), their standard and
// alternate elliptic fibrations, the translation-involution certificate via
// the printed membership chain, bi/four-section bookkeeping, the Nikulin
// transform to the double sextic Y, the rational quotient model, and the
// blow-down recovery of a six-line configuration with its exceptional-class
// table.

#include "doublesix/ztrack.hpp"

namespace doublesix {

struct XModel {
  bool special = false;
  DualGraph diagram;  // nineteen curves
  IMat gram;          // 19 x 19, degenerate (rank 16 or 17)
  IMat proj;          // 19 x ns_rank: row vector * proj = NS coordinates
  IMat ns_gram;       // nondegenerate quotient form
  int ns_rank = 0;

  int idx(const std::string& label) const { return diagram.index_of(label); }

  IVec combo(const std::vector<std::pair<long, std::string>>& terms) const {
    IVec v(diagram.size(), Int(0));
    for (const auto& [c, l] : terms) v[idx(l)] += c;
    return v;
  }

  // equality of divisor classes: the difference pairs to zero with everything
  bool class_eq(const IVec& u, const IVec& v) const {
    IVec d = vec_sub(u, v);
    return is_zero(vec_mul(d, gram));
  }

  IVec ns(const IVec& v) const { return vec_mul(v, proj); }
};

namespace detail {

inline void split_radical(const IMat& gram, IMat& proj, IMat& ns_gram, int& ns_rank) {
  IMat rad = left_kernel_int(gram);  // saturated automatically
  int n = gram.rows(), k = rad.rows();
  IMat v;
  auto d = snf_with_col_transform(rad, v);
  for (const auto& x : d)
    if (x != 1) throw Error(Errc::CertificateFailure, "radical is not saturated");
  QMat vinv_q = inverse(to_q(v));
  // rows k..n-1 of v^{-1} form the complement basis; columns k..n-1 of v
  // read off quotient coordinates
  ns_rank = n - k;
  proj = IMat(n, ns_rank);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < ns_rank; ++j) proj(i, j) = v(i, k + j);
  IMat w(ns_rank, n);
  for (int i = 0; i < ns_rank; ++i)
    for (int j = 0; j < n; ++j) {
      assert(is_integer(vinv_q(k + i, j)));
      w(i, j) = num(vinv_q(k + i, j));
    }
  ns_gram = IMat(ns_rank, ns_rank);
  for (int i = 0; i < ns_rank; ++i)
    for (int j = 0; j < ns_rank; ++j) ns_gram(i, j) = bilinear(gram, w.row(i), w.row(j));
}

}  // namespace detail

inline XModel build_x(bool special) {
  XModel x;
  x.special = special;
  auto& g = x.diagram;
  if (!special) {
    for (auto l : {"a1", "a2", "a3", "a4", "a5", "a6", "a7", "a8", "S", "b8", "b7", "b6",
                   "b4", "b5", "b3", "b2", "b1", "c", "d"})
      g.add_node(l, -2);
    g.add_edge("a1", "a2");
    g.add_edge("a2", "a3");
    g.add_edge("a3", "a4");
    g.add_edge("a4", "a5");
    g.add_edge("a4", "a6");
    g.add_edge("a6", "a7");
    g.add_edge("a7", "a8");
    g.add_edge("a8", "S");
    g.add_edge("S", "b8");
    g.add_edge("b8", "b7");
    g.add_edge("b7", "b6");
    g.add_edge("b6", "b4");
    g.add_edge("b4", "b5");
    g.add_edge("b4", "b3");
    g.add_edge("b3", "b2");
    g.add_edge("b2", "b1");
    g.add_edge("a1", "d", 2);
    g.add_edge("b2", "d");
    g.add_edge("c", "b1", 2);
    g.add_edge("a2", "c");
  } else {
    for (auto l : {"a1", "a2", "a3", "a4", "a5", "a6", "a7", "a8", "a9", "S", "b8", "b7",
                   "b6", "b4", "b5", "b3", "b2", "b1", "c"})
      g.add_node(l, -2);
    g.add_edge("a1", "a2");
    g.add_edge("a2", "a3");
    g.add_edge("a3", "a4");
    g.add_edge("a3", "a5");
    g.add_edge("a5", "a6");
    g.add_edge("a6", "a7");
    g.add_edge("a7", "a8");
    g.add_edge("a8", "a9");
    g.add_edge("a9", "S");
    g.add_edge("S", "b8");
    g.add_edge("b8", "b7");
    g.add_edge("b7", "b6");
    g.add_edge("b6", "b4");
    g.add_edge("b4", "b5");
    g.add_edge("b4", "b3");
    g.add_edge("b3", "b2");
    g.add_edge("b2", "b1");
    g.add_edge("c", "b1", 2);
    g.add_edge("a1", "c");
  }
  x.gram = g.gram();
  detail::split_radical(x.gram, x.proj, x.ns_gram, x.ns_rank);
  int expected = special ? 17 : 16;
  if (x.ns_rank != expected)
    throw Error(Errc::CertificateFailure, "X model has the wrong Picard rank");
  return x;
}

// fiber class expressions from the diagrams
inline IVec standard_fiber_vector(const XModel& x) {
  if (!x.special)
    return x.combo({{1, "a1"}, {2, "a2"}, {3, "a3"}, {4, "a4"}, {2, "a5"}, {3, "a6"},
                    {2, "a7"}, {1, "a8"}});
  return x.combo({{2, "a1"}, {4, "a2"}, {6, "a3"}, {3, "a4"}, {5, "a5"}, {4, "a6"},
                  {3, "a7"}, {2, "a8"}, {1, "a9"}});
}

inline IVec standard_fiber_vector_b(const XModel& x) {
  return x.combo({{1, "b1"}, {2, "b2"}, {3, "b3"}, {4, "b4"}, {2, "b5"}, {3, "b6"},
                  {2, "b7"}, {1, "b8"}});
}

inline IVec alternate_fiber_vector(const XModel& x) {
  if (!x.special)
    return x.combo({{1, "a3"}, {1, "a5"}, {2, "a4"}, {2, "a6"}, {2, "a7"}, {2, "a8"},
                    {2, "S"},  {2, "b8"}, {2, "b7"}, {2, "b6"}, {2, "b4"}, {1, "b3"},
                    {1, "b5"}});
  return x.combo({{1, "a2"}, {1, "a4"}, {2, "a3"}, {2, "a5"}, {2, "a6"}, {2, "a7"},
                  {2, "a8"}, {2, "a9"}, {2, "S"},  {2, "b8"}, {2, "b7"}, {2, "b6"},
                  {2, "b4"}, {1, "b3"}, {1, "b5"}});
}

struct XFibration {
  IVec fiber;
  std::vector<std::string> sections;
  std::vector<FiberEntry> inventory;
};

inline Rat x_pair(const XModel& x, const IVec& u, const IVec& v) {
  return Rat(bilinear(x.gram, u, v));
}

inline XFibration standard_fibration(const XModel& x) {
  XFibration fb;
  fb.fiber = standard_fiber_vector(x);
  IVec s = x.combo({{1, "S"}});
  if (x_pair(x, fb.fiber, fb.fiber) != 0 || x_pair(x, fb.fiber, s) != 1)
    throw Error(Errc::CertificateFailure, "standard fiber fails F^2 = 0, F.S = 1");
  {
    IMat two(2, 2);
    two(0, 0) = bilinear(x.gram, fb.fiber, fb.fiber);
    two(0, 1) = two(1, 0) = bilinear(x.gram, fb.fiber, s);
    two(1, 1) = bilinear(x.gram, s, s);
    if (!is_hyperbolic_plane(two))
      throw Error(Errc::CertificateFailure, "standard fiber/section span is not hyperbolic");
  }
  // the a-side and b-side fiber expressions agree as divisor classes
  if (!x.class_eq(fb.fiber, standard_fiber_vector_b(x)))
    throw Error(Errc::CertificateFailure, "two standard fiber presentations differ");
  fb.sections = {"S"};
  std::vector<std::string> aside, bside;
  if (!x.special)
    aside = {"a1", "a2", "a3", "a4", "a5", "a6", "a7", "a8"};
  else
    aside = {"a1", "a2", "a3", "a4", "a5", "a6", "a7", "a8", "a9"};
  bside = {"b1", "b2", "b3", "b4", "b5", "b6", "b7", "b8"};
  FiberEntry ea{classify_fiber(x.diagram.induced_labels(aside)), aside, false};
  FiberEntry eb{classify_fiber(x.diagram.induced_labels(bside)), bside, false};
  // the printed multiplicities are the kernel cycle
  auto cyc = fiber_cycle(x.diagram.induced_labels(aside));
  for (size_t i = 0; i < aside.size(); ++i)
    if (cyc[i] != fb.fiber[x.idx(aside[i])])
      throw Error(Errc::CertificateFailure, "standard fiber multiplicities are off");
  fb.inventory = {ea, eb};
  int used = euler_number(ea.type) + euler_number(eb.type);
  for (int i = 0; i < 24 - used; ++i) fb.inventory.push_back({{KodairaType::In, 1}, {}, true});
  return fb;
}

inline XFibration alternate_fibration(const XModel& x) {
  XFibration fb;
  fb.fiber = alternate_fiber_vector(x);
  if (x_pair(x, fb.fiber, fb.fiber) != 0)
    throw Error(Errc::CertificateFailure, "alternate fiber does not square to zero");
  fb.sections = x.special ? std::vector<std::string>{"a1", "b2"}
                          : std::vector<std::string>{"a2", "b2"};
  for (const auto& sec : fb.sections)
    if (x_pair(x, fb.fiber, x.combo({{1, sec}})) != 1)
      throw Error(Errc::CertificateFailure, sec + " is not a section of the alternate fibration");
  if (x_pair(x, x.combo({{1, fb.sections[0]}}), x.combo({{1, fb.sections[1]}})) != 0)
    throw Error(Errc::CertificateFailure, "alternate sections are not disjoint");

  std::vector<std::string> big;
  if (!x.special)
    big = {"a3", "a5", "a4", "a6", "a7", "a8", "S", "b8", "b7", "b6", "b4", "b3", "b5"};
  else
    big = {"a2", "a4", "a3", "a5", "a6", "a7", "a8", "a9", "S", "b8", "b7", "b6", "b4",
           "b3", "b5"};
  FiberEntry bigE{classify_fiber(x.diagram.induced_labels(big)), big, false};
  auto cyc = fiber_cycle(x.diagram.induced_labels(big));
  for (size_t i = 0; i < big.size(); ++i)
    if (cyc[i] != fb.fiber[x.idx(big[i])])
      throw Error(Errc::CertificateFailure, "alternate fiber multiplicities are off");
  fb.inventory.push_back(bigE);

  std::vector<std::vector<std::string>> i2s;
  if (!x.special)
    i2s = {{"a1", "d"}, {"c", "b1"}};
  else
    i2s = {{"c", "b1"}};
  for (const auto& pair : i2s) {
    auto t = classify_fiber(x.diagram.induced_labels(pair));
    if (!(t == KodairaType{KodairaType::In, 2}))
      throw Error(Errc::CertificateFailure, "expected an I2 fiber");
    IVec cycle = x.combo({{1, pair[0]}, {1, pair[1]}});
    if (!x.class_eq(cycle, fb.fiber))
      throw Error(Errc::CertificateFailure, "I2 cycle is not the alternate fiber class");
    fb.inventory.push_back({t, pair, false});
  }
  int used = 0;
  for (const auto& e : fb.inventory) used += euler_number(e.type);
  if (24 - used != 6)
    throw Error(Errc::EulerMismatch, "alternate fibration does not balance with six I1 fibers");
  for (int i = 0; i < 6; ++i) fb.inventory.push_back({{KodairaType::In, 1}, {}, true});
  return fb;
}

// ---------------------------------------------------------------------------
// the membership-chain certificate

struct MembershipStep {
  std::string name;
  IVec vector_ns;  // in NS coordinates
  IVec witness;    // over the root-span basis
};

struct VgsCertificateX {
  bool pass = false;
  std::string failure;
  std::vector<MembershipStep> steps;
  IMat wroot_basis_ns;  // root-span basis rows in NS coordinates
  IVec s2w_ns;
  Int order = 0;
  bool negative_control_failed = false;  // the wrong coefficient is rejected
};

inline VgsCertificateX vgs_certificate_x(const XModel& x) {
  VgsCertificateX cert;
  auto fail = [&](const std::string& why) {
    cert.pass = false;
    cert.failure = why;
    return cert;
  };
  auto fib = alternate_fibration(x);
  IVec fa = fib.fiber;
  IVec s1 = x.combo({{1, fib.sections[0]}});
  IVec s2 = x.combo({{1, fib.sections[1]}});

  IntegerLattice ns = make_lattice(x.ns_gram);
  IMat pair_cols(ns.rank, 2);
  IVec fa_ns = x.ns(fa), s1_ns = x.ns(s1);
  {
    IMat two(2, 2);
    two(0, 0) = bilinear(x.ns_gram, fa_ns, fa_ns);
    two(0, 1) = two(1, 0) = bilinear(x.ns_gram, fa_ns, s1_ns);
    two(1, 1) = bilinear(x.ns_gram, s1_ns, s1_ns);
    if (!is_hyperbolic_plane(two)) return fail("alternate fiber/section pair is not hyperbolic");
  }
  for (int i = 0; i < ns.rank; ++i) {
    Int a = 0, b = 0;
    for (int j = 0; j < ns.rank; ++j) {
      a += x.ns_gram(i, j) * fa_ns[j];
      b += x.ns_gram(i, j) * s1_ns[j];
    }
    pair_cols(i, 0) = a;
    pair_cols(i, 1) = b;
  }
  auto w = make_span(ns, left_kernel_int(pair_cols));
  auto w_lat = span_lattice(w);
  auto rts = roots(w_lat);
  IMat root_rows(static_cast<int>(rts.size()), ns.rank);
  for (size_t i = 0; i < rts.size(); ++i)
    root_rows.set_row(static_cast<int>(i), vec_mul(rts[i], w.basis));
  auto wroot = make_span(ns, root_rows);
  cert.wroot_basis_ns = wroot.basis;

  auto member = [&](const std::string& name, const IVec& v19) -> bool {
    auto coords = span_coordinates(wroot, x.ns(v19));
    if (!coords) return false;
    cert.steps.push_back({name, x.ns(v19), *coords});
    return true;
  };

  if (!x.special) {
    IVec fs = standard_fiber_vector(x);
    // (ll1) 2 b2 - F^s = -(b8 + 2b7 + 3b6 + 4b4 + 2b5 + 3b3 + b1)
    IVec ll1 = vec_sub(vec_scale(Int(2), s2), fs);
    IVec rhs1 = x.combo({{-1, "b8"}, {-2, "b7"}, {-3, "b6"}, {-4, "b4"}, {-2, "b5"},
                         {-3, "b3"}, {-1, "b1"}});
    if (!x.class_eq(ll1, rhs1)) return fail("(ll1) identity fails");
    if (!member("ll1", ll1)) return fail("(ll1) membership fails");
    // (ll2) F^s - (a1 + 2a2 + 3a3) = 4a4 + 2a5 + 3a6 + 2a7 + a8
    IVec ll2 = vec_sub(fs, x.combo({{1, "a1"}, {2, "a2"}, {3, "a3"}}));
    IVec rhs2 = x.combo({{4, "a4"}, {2, "a5"}, {3, "a6"}, {2, "a7"}, {1, "a8"}});
    if (ll2 != rhs2) return fail("(ll2) identity fails");
    if (!member("ll2", ll2)) return fail("(ll2) membership fails");
    // (ll3) = (ll1) + (ll2)
    IVec ll3 = vec_add(ll1, ll2);
    if (!member("ll3", ll3)) return fail("(ll3) membership fails");
    // (ll4) F^a - a3 = a5 + 2(...) + b3 + b5
    IVec ll4 = vec_sub(fa, x.combo({{1, "a3"}}));
    IVec rhs4 = x.combo({{1, "a5"}, {2, "a4"}, {2, "a6"}, {2, "a7"}, {2, "a8"}, {2, "S"},
                         {2, "b8"}, {2, "b7"}, {2, "b6"}, {2, "b4"}, {1, "b3"}, {1, "b5"}});
    if (ll4 != rhs4) return fail("(ll4) identity fails");
    if (!member("ll4", ll4)) return fail("(ll4) membership fails");
    // (ll5) F^a - a1 is the fiber component d
    IVec ll5 = vec_sub(fa, x.combo({{1, "a1"}}));
    if (!x.class_eq(ll5, x.combo({{1, "d"}}))) return fail("(ll5) identity fails");
    if (!member("ll5", ll5)) return fail("(ll5) membership fails");
    // (ll6) 4F^a - (a1 + 3a3)
    IVec ll6 = vec_sub(vec_scale(Int(4), fa), x.combo({{1, "a1"}, {3, "a3"}}));
    if (!member("ll6", ll6)) return fail("(ll6) membership fails");
  }

  // the conclusion: 2 S2 - 2 S1 - 4 F^a lies in the root span
  IVec conclusion =
      vec_sub(vec_sub(vec_scale(Int(2), s2), vec_scale(Int(2), s1)), vec_scale(Int(4), fa));
  if (!member("2S2-2S1-4F", conclusion)) return fail("final membership fails");

  // negative control: coefficient 2 on F^a must fail
  IVec control =
      vec_sub(vec_sub(vec_scale(Int(2), s2), vec_scale(Int(2), s1)), vec_scale(Int(2), fa));
  cert.negative_control_failed = !span_coordinates(wroot, x.ns(control)).has_value();
  if (!cert.negative_control_failed) return fail("negative control unexpectedly in the root span");

  // order two: S2^w = S2 - S1 - 2F
  IVec s2w = vec_sub(vec_sub(s2, s1), vec_scale(Int(2), fa));
  cert.s2w_ns = x.ns(s2w);
  if (bilinear(x.ns_gram, cert.s2w_ns, cert.s2w_ns) != -4) return fail("(S2^w)^2 != -4");
  auto ord = order_in_quotient(cert.s2w_ns, w, wroot);
  if (!ord || *ord != 2) return fail("S2^w does not have order two");
  cert.order = *ord;
  cert.pass = true;
  return cert;
}

// ---------------------------------------------------------------------------
// multisections

struct MultisectionRecord {
  std::string label;
  int degree = 0;
  int genus = 0;
  Int self_int;
  std::map<std::string, Int> meets;  // nonzero intersections with diagram curves
  Int q_dot_k;
  // Riemann-Hurwitz bookkeeping: 2g - 2 = degree * (-2) + ramification
  Int ramification_total;
  int branch_points = 0;
};

inline std::pair<MultisectionRecord, MultisectionRecord> multisections(const XModel& x) {
  MultisectionRecord q, k;
  q.label = "Q";
  k.label = "K";
  q.genus = 2;
  q.self_int = 2;  // adjunction: 2g - 2
  k.genus = x.special ? 2 : 3;
  k.self_int = 2 * k.genus - 2;
  q.q_dot_k = k.q_dot_k = 6;
  if (!x.special) {
    q.meets = {{"a5", 1}, {"b5", 1}, {"a1", 1}, {"d", 1}, {"c", 1}, {"b1", 1}};
    k.meets = {{"S", 2}, {"a1", 2}, {"d", 2}, {"c", 2}, {"b1", 2}};
    k.branch_points = 9;
  } else {
    q.meets = {{"a4", 1}, {"b5", 1}, {"c", 1}, {"b1", 1}};
    k.meets = {{"a9", 2}, {"c", 2}, {"b1", 2}};
    k.branch_points = 8;
  }
  IVec fa = alternate_fiber_vector(x);
  auto degree_of = [&](const MultisectionRecord& r) {
    Int acc = 0;
    for (const auto& [lab, m] : r.meets) acc += m * fa[x.idx(lab)];
    return acc;
  };
  q.degree = static_cast<int>(degree_of(q).get_si());
  k.degree = static_cast<int>(degree_of(k).get_si());
  if (q.degree != 2 || k.degree != 4)
    throw Error(Errc::CertificateFailure, "multisection degrees are off");
  // genus-two double cover of the line ramified at the six nodal points
  q.ramification_total = 2 * q.genus - 2 - q.degree * (-2);
  q.branch_points = 6;
  if (q.ramification_total != 6)
    throw Error(Errc::CertificateFailure, "Q ramification does not match six branch points");
  k.ramification_total = 2 * k.genus - 2 - k.degree * (-2);
  // profile unspecified; totals must admit a profile over the branch points
  if (!(Int(k.branch_points) <= k.ramification_total &&
        k.ramification_total <= Int(3 * k.branch_points)))
    throw Error(Errc::CertificateFailure, "K ramification total out of range");
  return {q, k};
}

// ---------------------------------------------------------------------------
// the Nikulin transform X -> Y

struct YModel {
  bool special = false;
  DualGraph diagram;  // 24 (generic) or 25 (special) curves
  QMat gram_q;        // pairings (integer-valued)
  std::vector<FiberEntry> inventory;
  std::vector<std::string> sections;
  std::string bisection = "Kt";
  std::vector<std::string> sigma_fixed;
  std::vector<std::pair<std::string, std::string>> sigma_swapped;
  QMat lifts;  // node lifts over the extended (curves + Q + K + E) space

  int idx(const std::string& label) const { return diagram.index_of(label); }
};

inline YModel nikulin_transform_x(const XModel& x) {
  YModel y;
  y.special = x.special;
  int n19 = x.diagram.size();
  int nq = n19, nk = n19 + 1, ne0 = n19 + 2;
  int next = n19 + 2 + 8;
  // extended pairing space: curves, Q, K, E1..E8
  QMat ext(next, next);
  for (int i = 0; i < n19; ++i)
    for (int j = 0; j < n19; ++j) ext(i, j) = Rat(x.gram(i, j));
  auto [q, k] = multisections(x);
  ext(nq, nq) = Rat(q.self_int);
  ext(nk, nk) = Rat(k.self_int);
  ext(nq, nk) = ext(nk, nq) = Rat(q.q_dot_k);
  for (const auto& [lab, m] : q.meets) {
    ext(nq, x.idx(lab)) = Rat(m);
    ext(x.idx(lab), nq) = Rat(m);
  }
  for (const auto& [lab, m] : k.meets) {
    ext(nk, x.idx(lab)) = Rat(m);
    ext(x.idx(lab), nk) = Rat(m);
  }
  // X-classes live in the extended space as pullbacks: orthogonal to every
  // exceptional curve. Which curve passes through which fixed point enters
  // only through the strict-transform lifts below.
  for (int i = 0; i < 8; ++i) ext(ne0 + i, ne0 + i) = -1;

  IVec fa = alternate_fiber_vector(x);
  auto unit = [&](int pos) {
    QVec v(next, Rat(0));
    v[pos] = 1;
    return v;
  };
  auto curve = [&](const std::string& l) { return unit(x.idx(l)); };
  auto fa_ext = [&] {
    QVec v(next, Rat(0));
    for (int i = 0; i < n19; ++i) v[i] = Rat(fa[i]);
    return v;
  }();

  std::vector<std::pair<std::string, QVec>> lifts;
  if (!x.special) {
    lifts.push_back({"St", vec_sub(curve("S"), vec_add(unit(ne0 + 6), unit(ne0 + 7)))});
    QVec qv = unit(nq);
    for (int i = 0; i < 6; ++i) qv = vec_sub(qv, unit(ne0 + i));
    lifts.push_back({"Qt", qv});
    QVec kv = unit(nk);
    for (int i = 0; i < 8; ++i) kv = vec_sub(kv, unit(ne0 + i));
    lifts.push_back({"Kt", kv});
    for (int i = 2; i <= 8; ++i)
      lifts.push_back({"at" + std::to_string(i),
                       vec_add(curve("a" + std::to_string(i)), curve("b" + std::to_string(i)))});
  } else {
    lifts.push_back({"at9", vec_sub(curve("a9"), vec_add(unit(ne0 + 6), unit(ne0 + 7)))});
    QVec qv = unit(nq);
    for (int i = 0; i < 6; ++i) qv = vec_sub(qv, unit(ne0 + i));
    lifts.push_back({"Qt", qv});
    QVec kv = unit(nk);
    for (int i = 0; i < 6; ++i) kv = vec_sub(kv, unit(ne0 + i));
    lifts.push_back({"Kt", kv});
    lifts.push_back({"st", vec_add(curve("a1"), curve("b2"))});
    lifts.push_back({"at2", vec_add(curve("a2"), curve("b3"))});
    lifts.push_back({"at3", vec_add(curve("a3"), curve("b4"))});
    lifts.push_back({"at4", vec_add(curve("a4"), curve("b5"))});
    lifts.push_back({"at5", vec_add(curve("a5"), curve("b6"))});
    lifts.push_back({"at6", vec_add(curve("a6"), curve("b7"))});
    lifts.push_back({"at7", vec_add(curve("a7"), curve("b8"))});
    lifts.push_back({"at8", vec_add(curve("a8"), curve("S"))});
  }
  for (int i = 1; i <= 8; ++i)
    lifts.push_back({"U" + std::to_string(i), vec_scale(Rat(2), unit(ne0 + i - 1))});
  for (int i = 1; i <= 6; ++i)
    lifts.push_back(
        {"V" + std::to_string(i), vec_sub(fa_ext, vec_scale(Rat(2), unit(ne0 + i - 1)))});

  int m = static_cast<int>(lifts.size());
  y.lifts = QMat(m, next);
  for (int i = 0; i < m; ++i) y.lifts.set_row(i, lifts[i].second);
  for (int i = 0; i < m; ++i) {
    Rat sq = bilinear(ext, lifts[i].second, lifts[i].second) / 2;
    if (sq != -2)
      throw Error(Errc::CertificateFailure, "Y curve " + lifts[i].first + " is not a (-2)-curve");
    y.diagram.add_node(lifts[i].first, -2);
  }
  y.gram_q = QMat(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      Rat v = bilinear(ext, lifts[i].second, lifts[j].second) / 2;
      if (!is_integer(v))
        throw Error(Errc::CertificateFailure, "half-integral pairing on Y");
      y.gram_q(i, j) = v;
      if (i < j && v != 0) y.diagram.add_edge(i, j, static_cast<int>(num(v).get_si()));
    }

  // fibration data on Y
  std::vector<std::string> big;
  if (!x.special)
    big = {"U7", "U8", "St", "at8", "at7", "at6", "at4", "at3", "at5"};
  else
    big = {"U7", "U8", "at9", "at8", "at7", "at6", "at5", "at3", "at2", "at4"};
  FiberEntry bigE{classify_fiber(y.diagram.induced_labels(big)), big, false};
  y.inventory.push_back(bigE);
  for (int i = 1; i <= 6; ++i) {
    auto pair = std::vector<std::string>{"U" + std::to_string(i), "V" + std::to_string(i)};
    auto t = classify_fiber(y.diagram.induced_labels(pair));
    if (!(t == KodairaType{KodairaType::In, 2}))
      throw Error(Errc::CertificateFailure, "expected I2 above a nodal fiber");
    y.inventory.push_back({t, pair, false});
  }
  int used = 0;
  for (const auto& e : y.inventory) used += euler_number(e.type);
  int residual = 24 - used;
  int expected = x.special ? 1 : 2;
  if (residual != expected)
    throw Error(Errc::EulerMismatch, "Y inventory leaves the wrong nodal count");
  for (int i = 0; i < residual; ++i) y.inventory.push_back({{KodairaType::In, 1}, {}, true});

  y.sections = x.special ? std::vector<std::string>{"st", "Qt"}
                         : std::vector<std::string>{"at2", "Qt"};
  for (const auto& sec : y.sections) {
    Rat deg = bilinear(ext, y.lifts.row(y.idx(sec)), fa_ext) / 2;
    if (deg != 1) throw Error(Errc::CertificateFailure, sec + " is not a section on Y");
  }
  if (bilinear(ext, y.lifts.row(y.idx("Kt")), fa_ext) / 2 != 2)
    throw Error(Errc::CertificateFailure, "Kt is not a bisection on Y");

  if (!x.special) {
    y.sigma_fixed = {"Kt", "St", "at7", "at4", "at2", "Qt"};
  } else {
    y.sigma_fixed = {"Kt", "Qt", "st", "at8", "at6", "at3"};
    y.sigma_swapped = {{"U7", "U8"}};
  }
  // the fixed curves must be pairwise disjoint
  for (size_t i = 0; i < y.sigma_fixed.size(); ++i)
    for (size_t j = i + 1; j < y.sigma_fixed.size(); ++j)
      if (y.diagram.edge(y.idx(y.sigma_fixed[i]), y.idx(y.sigma_fixed[j])) != 0)
        throw Error(Errc::CertificateFailure, "fixed curves of sigma are not disjoint");
  return y;
}

// ---------------------------------------------------------------------------
// quotient of Y by the fiberwise inversion

struct RQuotient {
  bool special = false;
  DualGraph diagram;   // hat curves with their (-4)/(-1)/(-2) self-intersections
  SurfaceModel model;  // rank 16, unimodular
  ClassDict classes;   // every hat curve plus "F"
  std::vector<std::string> basis_curves;  // model basis labels in order

  const DivisorClass& cls(const std::string& l) const {
    auto it = classes.find(l);
    if (it == classes.end()) throw Error(Errc::DimensionMismatch, "no quotient class " + l);
    return it->second;
  }
};

inline RQuotient quotient_model(const YModel& y) {
  RQuotient r;
  r.special = y.special;
  int m = y.diagram.size();
  // hat lifts over the Y-node space
  std::vector<std::pair<std::string, QVec>> hats;
  auto is_fixed = [&](const std::string& l) {
    return std::find(y.sigma_fixed.begin(), y.sigma_fixed.end(), l) != y.sigma_fixed.end();
  };
  std::vector<std::string> swallowed;
  for (const auto& [a, b] : y.sigma_swapped) swallowed.push_back(b);
  for (int i = 0; i < m; ++i) {
    const std::string& l = y.diagram.nodes[i].label;
    if (std::find(swallowed.begin(), swallowed.end(), l) != swallowed.end()) continue;
    QVec v(m, Rat(0));
    bool paired = false;
    for (const auto& [a, b] : y.sigma_swapped)
      if (a == l) {
        v[i] = 1;
        v[y.idx(b)] = 1;
        paired = true;
      }
    if (!paired) v[i] = is_fixed(l) ? 2 : 1;
    hats.push_back({paired ? "U78" : l, v});
  }
  // the ruling fiber: image of the elliptic fiber class U1 + V1
  {
    QVec v(m, Rat(0));
    v[y.idx("U1")] = 1;
    v[y.idx("V1")] = 1;
    hats.push_back({"F", v});
  }

  int n = static_cast<int>(hats.size());
  QMat pair_mat(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Rat v = bilinear(y.gram_q, hats[i].second, hats[j].second) / 2;
      pair_mat(i, j) = v;
    }
  // self-intersection labels must match the quotient rules
  for (int i = 0; i < n; ++i) {
    const std::string& l = hats[i].first;
    if (l == "F") continue;
    Rat sq = pair_mat(i, i);
    Rat expect = l == "U78" ? -2 : (is_fixed(l) ? -4 : -1);
    if (sq != expect)
      throw Error(Errc::CertificateFailure,
                  "self-intersection of " + l + " is " + to_string(sq) + ", expected " +
                      to_string(expect));
    if (!is_integer(sq)) throw Error(Errc::CertificateFailure, "non-integral quotient pairing");
  }
  for (int i = 0; i < n; ++i) {
    if (hats[i].first == "F") continue;
    r.diagram.add_node(hats[i].first, static_cast<int>(num(pair_mat(i, i)).get_si()));
  }
  for (int i = 0, gi = 0; i < n; ++i) {
    if (hats[i].first == "F") continue;
    for (int j = i + 1, gj = gi + 1; j < n; ++j) {
      if (hats[j].first == "F") continue;
      if (pair_mat(i, j) != 0)
        r.diagram.add_edge(gi, gj, static_cast<int>(num(pair_mat(i, j)).get_si()));
      ++gj;
    }
    ++gi;
  }

  // model basis
  if (!y.special)
    r.basis_curves = {"F",  "at2", "at4", "at5", "at6", "at7", "at8", "St",
                      "U1", "U2",  "U3",  "U4",  "U5",  "U6",  "U7",  "U8"};
  else
    r.basis_curves = {"F",   "at4", "at3", "at5", "at6", "at7", "at8", "at9",
                      "st",  "U78", "U1",  "U2",  "U3",  "U4",  "U5",  "U6"};
  auto hat_index = [&](const std::string& l) {
    for (int i = 0; i < n; ++i)
      if (hats[i].first == l) return i;
    throw Error(Errc::DimensionMismatch, "no hat curve " + l);
  };
  int rank = static_cast<int>(r.basis_curves.size());
  IMat gram(rank, rank);
  for (int i = 0; i < rank; ++i)
    for (int j = 0; j < rank; ++j)
      gram(i, j) = num(pair_mat(hat_index(r.basis_curves[i]), hat_index(r.basis_curves[j])));
  Int det = bareiss_det(gram);
  if (det != 1 && det != -1)
    throw Error(Errc::CertificateFailure, "quotient basis is not unimodular");
  r.model.labels = r.basis_curves;
  r.model.gram = gram;
  r.model.chi_o = 1;

  // express every hat class over the basis by solving against the gram
  QMat gram_q = to_q(gram);
  QMat gram_inv = inverse(gram_q);
  auto solve_class = [&](int hi) {
    QVec rhs(rank);
    for (int j = 0; j < rank; ++j) rhs[j] = pair_mat(hi, hat_index(r.basis_curves[j]));
    QVec coords = vec_mul(rhs, gram_inv);
    return DivisorClass{coords};
  };
  for (int i = 0; i < n; ++i) {
    DivisorClass c = solve_class(i);
    if (!c.is_integral())
      throw Error(Errc::CertificateFailure, "hat class " + hats[i].first + " is not integral");
    // consistency: solved classes reproduce the full pairing row
    r.classes[hats[i].first] = c;
  }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (intersect(r.model, r.classes[hats[i].first], r.classes[hats[j].first]) !=
          pair_mat(i, j))
        throw Error(Errc::CertificateFailure, "quotient pairings do not close");

  // canonical class from adjunction on the curves plus the fiber
  {
    QVec rhs(rank);
    for (int j = 0; j < rank; ++j) {
      const std::string& l = r.basis_curves[j];
      if (l == "F")
        rhs[j] = -2;
      else
        rhs[j] = Rat(-2) - pair_mat(hat_index(l), hat_index(l));
    }
    DivisorClass k{vec_mul(rhs, gram_inv)};
    if (!k.is_integral()) throw Error(Errc::CertificateFailure, "canonical class not integral");
    r.model.canonical = k;
    if (self_intersection(r.model, k) != -6)
      throw Error(Errc::CertificateFailure, "K^2 != -6 on the quotient");
    // adjunction closes on every hat curve
    for (int i = 0; i < n; ++i) {
      if (hats[i].first == "F") continue;
      Rat lhs = intersect(r.model, r.classes[hats[i].first], k);
      if (lhs != Rat(-2) - pair_mat(i, i))
        throw Error(Errc::CertificateFailure, "adjunction fails on " + hats[i].first);
    }
  }
  return r;
}

}  // namespace doublesix
