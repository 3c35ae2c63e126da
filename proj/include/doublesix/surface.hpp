#pragma once

// Symbolic Neron-Severi models: a surface is a named basis of divisor
// classes with an integer intersection matrix, a canonical class and chi(O).
// Supplies blow-ups of P^2, intersection arithmetic, Riemann-Roch and genus
// bookkeeping, branched double-cover models (with the denominator-2
// saturation made explicit) and exceptional-curve contractions with exact
// push-forward of named classes.

#include "doublesix/lattice.hpp"

#include <map>
#include <string>

namespace doublesix {

struct DivisorClass {
  QVec coords;

  bool is_integral() const {
    for (const auto& c : coords)
      if (!is_integer(c)) return false;
    return true;
  }
};

inline DivisorClass operator+(const DivisorClass& a, const DivisorClass& b) {
  return {vec_add(a.coords, b.coords)};
}
inline DivisorClass operator-(const DivisorClass& a, const DivisorClass& b) {
  return {vec_sub(a.coords, b.coords)};
}
inline DivisorClass operator*(const Rat& c, const DivisorClass& a) {
  return {vec_scale(c, a.coords)};
}
inline bool operator==(const DivisorClass& a, const DivisorClass& b) {
  return a.coords == b.coords;
}

struct SurfaceModel {
  std::vector<std::string> labels;
  IMat gram;
  DivisorClass canonical;
  int chi_o = 1;

  int rank() const { return gram.rows(); }

  int index_of(const std::string& label) const {
    for (size_t i = 0; i < labels.size(); ++i)
      if (labels[i] == label) return static_cast<int>(i);
    throw Error(Errc::DimensionMismatch, "no basis class named " + label);
  }

  DivisorClass basis_class(const std::string& label) const {
    QVec v(rank(), Rat(0));
    v[index_of(label)] = 1;
    return {v};
  }

  DivisorClass zero_class() const { return {QVec(rank(), Rat(0))}; }
};

using ClassDict = std::map<std::string, DivisorClass>;

inline Rat intersect(const SurfaceModel& s, const DivisorClass& a, const DivisorClass& b) {
  if (static_cast<int>(a.coords.size()) != s.rank() ||
      static_cast<int>(b.coords.size()) != s.rank())
    throw Error(Errc::DimensionMismatch, "divisor class does not match the model rank");
  return bilinear(to_q(s.gram), a.coords, b.coords);
}

inline Rat self_intersection(const SurfaceModel& s, const DivisorClass& a) {
  return intersect(s, a, a);
}

// chi(O) + (A.A - A.K)/2
inline Rat riemann_roch_chi(const SurfaceModel& s, const DivisorClass& a) {
  return Rat(s.chi_o) + (intersect(s, a, a) - intersect(s, a, s.canonical)) / 2;
}

// 1 + (C.C + C.K)/2
inline Rat arithmetic_genus(const SurfaceModel& s, const DivisorClass& c) {
  return Rat(1) + (intersect(s, c, c) + intersect(s, c, s.canonical)) / 2;
}

// ---------------------------------------------------------------------------
// blow-ups of the plane

// Basis {H, E_p1, ..., E_pn}; gram diag(1, -1, ..., -1); K = -3H + sum E.
inline SurfaceModel blowup_p2(const std::vector<std::string>& point_labels) {
  SurfaceModel s;
  int n = static_cast<int>(point_labels.size());
  s.labels.push_back("H");
  for (const auto& p : point_labels) s.labels.push_back("E" + p);
  s.gram = IMat(n + 1, n + 1);
  s.gram(0, 0) = 1;
  for (int i = 1; i <= n; ++i) s.gram(i, i) = -1;
  QVec k(n + 1, Rat(1));
  k[0] = -3;
  s.canonical = {k};
  s.chi_o = 1;
  return s;
}

inline SurfaceModel blowup_p2(int n) {
  std::vector<std::string> pts;
  for (int i = 1; i <= n; ++i) pts.push_back(std::to_string(i));
  return blowup_p2(pts);
}

// ---------------------------------------------------------------------------
// branched double covers

struct DoubleCover {
  SurfaceModel z;     // saturated model, K = 0, chi = 2
  QMat basis;         // z-basis rows in extended pullback coordinates
  QMat ext_gram;      // pairing on the extended coordinates
  int base_rank = 0;  // R-coordinates come first; a Kummer model has one more
  bool kummer = false;
  ClassDict classes;  // T, Gij..., Delta_i, Gamma or Gamma1/Gamma2 supplied by callers

  // class on Z from a vector in extended coordinates
  DivisorClass from_extended(const QVec& v) const {
    auto x = solve_left_q(basis, v);
    if (!x) throw Error(Errc::DimensionMismatch, "vector outside the double-cover span");
    return {*x};
  }

  // pullback of a class on the base
  DivisorClass pullback(const DivisorClass& on_base) const {
    QVec ext(basis.cols(), Rat(0));
    for (int i = 0; i < base_rank; ++i) ext[i] = on_base.coords[i];
    return from_extended(ext);
  }
};

// Double cover of `base` branched over six pairwise disjoint classes whose
// sum is 2-divisible. Generators: pullbacks of the base lattice, the
// half-branch classes Delta_i = (1/2) pi^* L'_i, and, for a Kummer cover,
// one component Gamma_1 of the split pullback of the conic class.
inline DoubleCover double_cover_model(const SurfaceModel& base,
                                      const std::vector<DivisorClass>& branch,
                                      const DivisorClass* kummer_conic = nullptr) {
  for (size_t i = 0; i < branch.size(); ++i)
    for (size_t j = i + 1; j < branch.size(); ++j)
      if (intersect(base, branch[i], branch[j]) != 0)
        throw Error(Errc::BranchNotDisjoint, "branch classes intersect");
  QVec sum(base.rank(), Rat(0));
  for (const auto& b : branch) sum = vec_add(sum, b.coords);
  for (const auto& c : sum)
    if (!is_integer(c / 2)) throw Error(Errc::BranchNotEven, "branch sum is not 2-divisible");

  DoubleCover dc;
  dc.base_rank = base.rank();
  dc.kummer = kummer_conic != nullptr;
  int n = base.rank() + (dc.kummer ? 1 : 0);

  // extended pairing: <pi^*a, pi^*b> = 2<a,b>; <Gamma1, pi^*b> = <C', b>;
  // Gamma1^2 = -2
  QMat gx(n, n);
  for (int i = 0; i < base.rank(); ++i)
    for (int j = 0; j < base.rank(); ++j) gx(i, j) = Rat(2 * base.gram(i, j));
  if (dc.kummer) {
    const QVec& c = kummer_conic->coords;
    if (intersect(base, *kummer_conic, *kummer_conic) != -2)
      throw Error(Errc::NotKummer, "conic class must have square -2 on the base");
    for (int i = 0; i < base.rank(); ++i) {
      Rat v = 0;
      for (int j = 0; j < base.rank(); ++j) v += Rat(base.gram(i, j)) * c[j];
      gx(i, n - 1) = v;
      gx(n - 1, i) = v;
    }
    gx(n - 1, n - 1) = -2;
  }
  dc.ext_gram = gx;

  // generators: full pullback lattice, the Delta_i, and Gamma1 if present
  int g = base.rank() + static_cast<int>(branch.size()) + (dc.kummer ? 1 : 0);
  QMat gens(g, n);
  for (int i = 0; i < base.rank(); ++i) gens(i, i) = 1;
  for (size_t b = 0; b < branch.size(); ++b)
    for (int j = 0; j < base.rank(); ++j)
      gens(base.rank() + static_cast<int>(b), j) = branch[b].coords[j] / 2;
  if (dc.kummer) gens(g - 1, n - 1) = 1;
  dc.basis = span_basis_hnf(gens);

  SurfaceModel z;
  int r = dc.basis.rows();
  z.gram = IMat(r, r);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) {
      Rat v = bilinear(gx, dc.basis.row(i), dc.basis.row(j));
      if (!is_integer(v))
        throw Error(Errc::CertificateFailure, "double cover lattice is not integral");
      z.gram(i, j) = num(v);
    }
  if (!make_lattice(z.gram).is_even())
    throw Error(Errc::CertificateFailure, "double cover lattice is not even");
  for (int i = 0; i < r; ++i) z.labels.push_back("m" + std::to_string(i + 1));
  z.canonical = {QVec(r, Rat(0))};
  z.chi_o = 2;
  dc.z = std::move(z);
  return dc;
}

// ---------------------------------------------------------------------------
// contractions

struct Contraction {
  SurfaceModel model;  // rank r-1
  QVec e;              // contracted class, old coordinates
  IMat embed;          // new basis rows in old coordinates (e-orthogonal)
  QMat solver;         // old-coords row vector * solver = new coords
};

// Push-forward of a class through the contraction: C + (C.e) e in the
// e-orthogonal basis.
inline DivisorClass push_class(const Contraction& c, const SurfaceModel& old_model,
                               const DivisorClass& a) {
  Rat ae = intersect(old_model, a, {c.e});
  QVec v = vec_add(a.coords, vec_scale(ae, c.e));
  return {vec_mul(v, c.solver)};
}

inline Contraction contract(const SurfaceModel& s, const DivisorClass& e) {
  if (!e.is_integral()) throw Error(Errc::NotExceptional, "contracted class must be integral");
  if (self_intersection(s, e) != -1 || intersect(s, e, s.canonical) != -1)
    throw Error(Errc::NotExceptional, "class is not exceptional (needs e^2 = e.K = -1)");
  Contraction c;
  c.e = e.coords;
  // complement of e: saturated kernel of pairing with e
  IMat col(s.rank(), 1);
  for (int i = 0; i < s.rank(); ++i) {
    Rat v = 0;
    for (int j = 0; j < s.rank(); ++j) v += Rat(s.gram(i, j)) * e.coords[j];
    assert(is_integer(v));
    col(i, 0) = num(v);
  }
  c.embed = left_kernel_int(col);
  assert(c.embed.rows() == s.rank() - 1);
  // solver: x = v * B^T (B B^T)^{-1} recovers coordinates over the new basis
  QMat b = to_q(c.embed);
  QMat bt = transpose(b);
  c.solver = mul(bt, inverse(mul(b, bt)));

  SurfaceModel m;
  int r = s.rank() - 1;
  m.gram = IMat(r, r);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j)
      m.gram(i, j) = bilinear(s.gram, c.embed.row(i), c.embed.row(j));
  for (int i = 0; i < r; ++i) m.labels.push_back("b" + std::to_string(i + 1));
  m.chi_o = s.chi_o;
  c.model = std::move(m);
  c.model.canonical = push_class(c, s, s.canonical);
  return c;
}

}  // namespace doublesix
