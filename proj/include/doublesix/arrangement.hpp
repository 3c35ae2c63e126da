#pragma once

// Six-line configurations in P^2 over exact rationals: validation, the
// fifteen intersection points, the two Kummer detectors (dual-conic
// determinant and the Pascal five-point conic), interpolation-based h^0 of
// linear systems with assigned base multiplicities, the genericity
// certificate, and the tangent conic of a Kummer configuration.

#include "doublesix/poly.hpp"
#include "doublesix/surface.hpp"

#include "json.hpp"

#include <array>
#include <set>

namespace doublesix {

using ProjTriple = std::array<Rat, 3>;

inline ProjTriple normalize_proj(ProjTriple v) {
  for (int i = 0; i < 3; ++i) {
    if (v[i] != 0) {
      Rat inv = 1 / v[i];
      for (int j = 0; j < 3; ++j) v[j] *= inv;
      return v;
    }
  }
  throw Error(Errc::ParseError, "zero projective triple");
}

struct ProjLine {
  ProjTriple c;  // a x + b y + c z = 0, normalized
};

struct ProjPoint {
  ProjTriple c;  // normalized
};

inline ProjPoint cross(const ProjLine& a, const ProjLine& b) {
  ProjTriple v{a.c[1] * b.c[2] - a.c[2] * b.c[1], a.c[2] * b.c[0] - a.c[0] * b.c[2],
               a.c[0] * b.c[1] - a.c[1] * b.c[0]};
  return {normalize_proj(v)};
}

inline Rat incidence(const ProjLine& l, const ProjPoint& p) {
  return l.c[0] * p.c[0] + l.c[1] * p.c[1] + l.c[2] * p.c[2];
}

struct LineArrangement {
  std::array<ProjLine, 6> lines;
  // q(i, j) with 1 <= i < j <= 6
  std::map<std::pair<int, int>, ProjPoint> points;

  const ProjPoint& q(int i, int j) const {
    if (i > j) std::swap(i, j);
    return points.at({i, j});
  }
};

// index pairs in lexicographic order: 12, 13, ..., 56
inline std::vector<std::pair<int, int>> q_index_pairs() {
  std::vector<std::pair<int, int>> out;
  for (int i = 1; i <= 6; ++i)
    for (int j = i + 1; j <= 6; ++j) out.emplace_back(i, j);
  return out;
}

inline std::vector<std::string> q_point_labels() {
  std::vector<std::string> out;
  for (auto [i, j] : q_index_pairs()) out.push_back(std::to_string(i) + std::to_string(j));
  return out;
}

inline LineArrangement validate(const std::array<ProjTriple, 6>& coeffs) {
  LineArrangement arr;
  for (int i = 0; i < 6; ++i) arr.lines[i] = {normalize_proj(coeffs[i])};
  for (int i = 0; i < 6; ++i)
    for (int j = i + 1; j < 6; ++j)
      if (arr.lines[i].c == arr.lines[j].c)
        throw Error(Errc::DuplicateLine,
                    "lines " + std::to_string(i + 1) + " and " + std::to_string(j + 1) +
                        " coincide");
  for (int i = 0; i < 6; ++i)
    for (int j = i + 1; j < 6; ++j)
      for (int k = j + 1; k < 6; ++k) {
        QMat m(3, 3);
        for (int c = 0; c < 3; ++c) {
          m(0, c) = arr.lines[i].c[c];
          m(1, c) = arr.lines[j].c[c];
          m(2, c) = arr.lines[k].c[c];
        }
        if (det_q(m) == 0)
          throw Error(Errc::ConcurrentTriple, "lines " + std::to_string(i + 1) + "," +
                                                  std::to_string(j + 1) + "," +
                                                  std::to_string(k + 1) +
                                                  " pass through one point");
      }
  for (auto [i, j] : q_index_pairs())
    arr.points[{i, j}] = cross(arr.lines[i - 1], arr.lines[j - 1]);
  return arr;
}

// ---------------------------------------------------------------------------
// Kummer detection

struct KummerWitness {
  bool kummer = false;
  Rat det;                 // the 6x6 dual-point determinant
  bool dual_smooth = false;
  std::array<Rat, 6> dual_conic{};  // A a^2 + B b^2 + C c^2 + D ab + E ac + F bc
};

inline QMat dual_conic_matrix(const std::array<Rat, 6>& q) {
  QMat m(3, 3);
  m(0, 0) = q[0];
  m(1, 1) = q[1];
  m(2, 2) = q[2];
  m(0, 1) = m(1, 0) = q[3] / 2;
  m(0, 2) = m(2, 0) = q[4] / 2;
  m(1, 2) = m(2, 1) = q[5] / 2;
  return m;
}

// The six lines are tangent to a common smooth conic iff their dual points
// lie on a smooth conic in the dual plane.
inline KummerWitness is_kummer_dual_conic(const LineArrangement& arr) {
  KummerWitness w;
  QMat m(6, 6);
  for (int i = 0; i < 6; ++i) {
    const auto& l = arr.lines[i].c;
    m(i, 0) = l[0] * l[0];
    m(i, 1) = l[1] * l[1];
    m(i, 2) = l[2] * l[2];
    m(i, 3) = l[0] * l[1];
    m(i, 4) = l[0] * l[2];
    m(i, 5) = l[1] * l[2];
  }
  w.det = det_q(m);
  if (w.det != 0) return w;
  auto ker = right_kernel(m);
  if (ker.size() != 1) return w;  // dual points on two conics: no smooth witness
  for (int i = 0; i < 6; ++i) w.dual_conic[i] = ker[0][i];
  w.dual_smooth = det_q(dual_conic_matrix(w.dual_conic)) != 0;
  w.kummer = w.dual_smooth;
  return w;
}

namespace detail {

inline bool collinear(const ProjPoint& a, const ProjPoint& b, const ProjPoint& c) {
  QMat m(3, 3);
  for (int j = 0; j < 3; ++j) {
    m(0, j) = a.c[j];
    m(1, j) = b.c[j];
    m(2, j) = c.c[j];
  }
  return det_q(m) == 0;
}

inline QVec conic_row(const ProjPoint& p) {
  const auto& c = p.c;
  return {c[0] * c[0], c[1] * c[1], c[2] * c[2], c[0] * c[1], c[0] * c[2], c[1] * c[2]};
}

}  // namespace detail

// Pascal-side detector: the conic through q13, q14, q25, q26, q56 passes
// through q34 iff the configuration is Kummer.
inline bool is_kummer_pascal(const LineArrangement& arr) {
  std::array<ProjPoint, 5> five{arr.q(1, 3), arr.q(1, 4), arr.q(2, 5), arr.q(2, 6), arr.q(5, 6)};
  for (int i = 0; i < 5; ++i)
    for (int j = i + 1; j < 5; ++j)
      for (int k = j + 1; k < 5; ++k)
        if (detail::collinear(five[i], five[j], five[k]))
          throw Error(Errc::DegenerateFive, "three of the five Pascal points are collinear");
  QMat m(5, 6);
  for (int i = 0; i < 5; ++i) {
    QVec row = detail::conic_row(five[i]);
    for (int j = 0; j < 6; ++j) m(i, j) = row[j];
  }
  auto ker = right_kernel(m);
  if (ker.size() != 1) throw Error(Errc::DegenerateFive, "five-point conic is not unique");
  QVec conic = ker[0];
  QVec row34 = detail::conic_row(arr.q(3, 4));
  Rat val = 0;
  for (int j = 0; j < 6; ++j) val += conic[j] * row34[j];
  return val == 0;
}

// ---------------------------------------------------------------------------
// interpolation

struct InterpolationProblem {
  int degree = 0;
  std::vector<std::pair<ProjPoint, int>> assignments;  // (point, multiplicity >= 1)
};

namespace detail {

// chart = coordinate of largest absolute value (ties to the lowest index)
inline int chart_of(const ProjPoint& p) {
  int best = 0;
  for (int i = 1; i < 3; ++i)
    if (abs(p.c[i]) > abs(p.c[best])) best = i;
  return best;
}

// rows of derivative conditions of all orders < m at p, over the monomial
// coefficients of degree-d forms
inline void append_condition_rows(std::vector<QVec>& rows, int d, const ProjPoint& p, int m) {
  int chart = chart_of(p);
  int u = chart == 0 ? 1 : 0;
  int v = chart == 2 ? 1 : 2;
  Rat u0 = p.c[u] / p.c[chart];
  Rat v0 = p.c[v] / p.c[chart];
  int n = PlaneForm::mono_count(d);
  for (int i = 0; i < m; ++i)
    for (int j = 0; i + j < m; ++j) {
      QVec row(n, Rat(0));
      for (int a = d; a >= 0; --a)
        for (int b = d - a; b >= 0; --b) {
          int cexp = d - a - b;
          int e[3] = {a, b, cexp};
          int alpha = e[u], beta = e[v];
          if (alpha < i || beta < j) continue;
          Rat coef = 1;
          for (int t = 0; t < i; ++t) coef *= Rat(alpha - t);
          for (int t = 0; t < j; ++t) coef *= Rat(beta - t);
          for (int t = 0; t < alpha - i; ++t) coef *= u0;
          for (int t = 0; t < beta - j; ++t) coef *= v0;
          row[PlaneForm::mono_index(d, a, b)] = coef;
        }
      rows.push_back(std::move(row));
    }
}

}  // namespace detail

inline int h0_interpolation(const InterpolationProblem& prob) {
  int n = PlaneForm::mono_count(prob.degree);
  std::vector<QVec> rows;
  for (const auto& [p, m] : prob.assignments) detail::append_condition_rows(rows, prob.degree, p, m);
  if (rows.empty()) return n;
  QMat m(static_cast<int>(rows.size()), n);
  for (size_t i = 0; i < rows.size(); ++i) m.set_row(static_cast<int>(i), rows[i]);
  return n - rank_q(m);
}

// the single curve of a rigid system, content-normalized, deterministic sign
inline PlaneForm unique_member(const InterpolationProblem& prob) {
  int n = PlaneForm::mono_count(prob.degree);
  std::vector<QVec> rows;
  for (const auto& [p, m] : prob.assignments) detail::append_condition_rows(rows, prob.degree, p, m);
  QMat m(static_cast<int>(rows.size()), n);
  for (size_t i = 0; i < rows.size(); ++i) m.set_row(static_cast<int>(i), rows[i]);
  auto ker = right_kernel(m);
  if (ker.size() != 1)
    throw Error(Errc::NotPencilFree,
                "system has h0 = " + std::to_string(ker.size()) + ", not 1");
  PlaneForm f = make_form(prob.degree);
  f.coef = ker[0];
  form_normalize(f);
  return f;
}

// ---------------------------------------------------------------------------
// model classes on the 15-point blow-up

inline SurfaceModel fifteen_point_blowup() { return blowup_p2(q_point_labels()); }

namespace detail {

inline DivisorClass r_combo(const SurfaceModel& r,
                            const std::vector<std::pair<long, std::string>>& terms) {
  DivisorClass acc = r.zero_class();
  for (const auto& [c, l] : terms) acc = acc + Rat(c) * r.basis_class(l);
  return acc;
}

}  // namespace detail

// D = 5H - 3E13 - 2(E14 + E25 + E26) - (E24 + E35 + E36 + E56)
inline DivisorClass pencil_class(const SurfaceModel& r) {
  return detail::r_combo(r, {{5, "H"},
                             {-3, "E13"},
                             {-2, "E14"},
                             {-2, "E25"},
                             {-2, "E26"},
                             {-1, "E24"},
                             {-1, "E35"},
                             {-1, "E36"},
                             {-1, "E56"}});
}

inline DivisorClass phi_class(const SurfaceModel& r, int i) {
  using detail::r_combo;
  switch (i) {
    case 1:
      return r_combo(r, {{5, "H"},
                         {-3, "E13"},
                         {-2, "E14"},
                         {-2, "E25"},
                         {-2, "E26"},
                         {-1, "E24"},
                         {-1, "E35"},
                         {-1, "E36"},
                         {-1, "E45"},
                         {-1, "E56"}});
    case 2:
      return r_combo(r, {{4, "H"},
                         {-2, "E13"},
                         {-2, "E14"},
                         {-2, "E25"},
                         {-1, "E24"},
                         {-1, "E26"},
                         {-1, "E35"},
                         {-1, "E36"},
                         {-1, "E56"}});
    case 3:
      return r_combo(r, {{3, "H"},
                         {-2, "E13"},
                         {-1, "E14"},
                         {-1, "E24"},
                         {-1, "E25"},
                         {-1, "E26"},
                         {-1, "E35"},
                         {-1, "E56"}});
    case 4:
      return r_combo(
          r, {{2, "H"}, {-1, "E13"}, {-1, "E14"}, {-1, "E25"}, {-1, "E26"}, {-1, "E35"}});
    case 5:
      return r_combo(r, {{1, "H"}, {-1, "E13"}, {-1, "E25"}});
    case 6:
      return r_combo(r, {{1, "E46"}});
  }
  throw Error(Errc::DimensionMismatch, "phi index out of range");
}

// proper transform of line i: H - sum_{j != i} E_ij
inline DivisorClass line_transform_class(const SurfaceModel& r, int i) {
  DivisorClass l = r.basis_class("H");
  for (int j = 1; j <= 6; ++j) {
    if (j == i) continue;
    std::string lab = i < j ? std::to_string(i) + std::to_string(j)
                            : std::to_string(j) + std::to_string(i);
    l = l - r.basis_class("E" + lab);
  }
  return l;
}

// proper transform of the Pascal conic: 2H minus the five (or, in the Kummer
// case, six) q-points it passes through
inline DivisorClass conic_transform_class(const SurfaceModel& r, bool kummer) {
  auto c = detail::r_combo(
      r, {{2, "H"}, {-1, "E13"}, {-1, "E14"}, {-1, "E25"}, {-1, "E26"}, {-1, "E56"}});
  if (kummer) c = c - r.basis_class("E34");
  return c;
}

// interpolation system of a class dH - sum m_ij E_ij; pure exceptional
// classes are flagged symbolic
struct ClassSystem {
  DivisorClass cls;
  bool symbolic = false;      // the member is an exceptional curve
  std::string symbolic_label;
  InterpolationProblem problem;
  // assigned multiplicity per q-label (zero included), for exactness checks
  std::map<std::string, int> mults;
};

inline ClassSystem system_from_class(const LineArrangement& arr, const SurfaceModel& r,
                                     const DivisorClass& cls) {
  ClassSystem s;
  s.cls = cls;
  Rat d = cls.coords[0];
  if (!is_integer(d) || d < 0)
    throw Error(Errc::DimensionMismatch, "class degree must be a nonnegative integer");
  if (d == 0) {
    // must be a single exceptional class with coefficient one
    int found = -1;
    auto labels = q_point_labels();
    for (size_t k = 0; k < labels.size(); ++k) {
      Rat c = cls.coords[k + 1];
      if (c == 0) continue;
      if (c != 1 || found >= 0)
        throw Error(Errc::DimensionMismatch, "degree-zero class is not a single exceptional");
      found = static_cast<int>(k);
    }
    if (found < 0) throw Error(Errc::DimensionMismatch, "zero class has no member");
    s.symbolic = true;
    s.symbolic_label = "E" + labels[found];
    return s;
  }
  s.problem.degree = static_cast<int>(num(d).get_si());
  auto pairs = q_index_pairs();
  auto labels = q_point_labels();
  for (size_t k = 0; k < pairs.size(); ++k) {
    Rat c = cls.coords[k + 1];
    if (!is_integer(c) || c > 0)
      throw Error(Errc::DimensionMismatch, "class has a positive exceptional coefficient");
    int m = static_cast<int>(num(-c).get_si());
    s.mults[labels[k]] = m;
    if (m >= 1) s.problem.assignments.push_back({arr.q(pairs[k].first, pairs[k].second), m});
  }
  return s;
}

// ---------------------------------------------------------------------------
// genericity certificate

struct MemberCheck {
  std::string system;
  int h0 = -1;
  bool symbolic = false;
  PlaneForm member;
  std::string failure;  // empty = all checks passed
  bool pass() const { return failure.empty(); }
};

struct GenericityCertificate {
  bool generic = false;
  int first_failing = 0;  // index i in 1..6 of the first failing pair, 0 = none
  std::vector<MemberCheck> checks;
};

namespace detail {

// multiplicity of F at p is exactly m: all partials of order < m vanish and
// some order-m partial does not
inline bool multiplicity_exact(const PlaneForm& f, const ProjPoint& p, int m) {
  std::vector<PlaneForm> layer{f};
  for (int order = 0; order <= m; ++order) {
    bool all_zero = true;
    for (const auto& g : layer)
      if (form_eval(g, p.c) != 0) all_zero = false;
    if (order < m && !all_zero) return false;
    if (order == m) return !all_zero;
    if (static_cast<int>(layer.front().deg) == 0) return m > 0 ? false : true;
    std::vector<PlaneForm> next;
    for (const auto& g : layer)
      for (int v = 0; v < 3; ++v) next.push_back(form_partial(g, v));
    layer = std::move(next);
  }
  return false;
}

// the degree-m jet at p is squarefree (distinct tangent directions)
inline bool jet_squarefree(const PlaneForm& f, const ProjPoint& p, int m) {
  int chart = chart_of(p);
  int u = chart == 0 ? 1 : 0;
  int v = chart == 2 ? 1 : 2;
  Rat u0 = p.c[u] / p.c[chart];
  Rat v0 = p.c[v] / p.c[chart];
  // jet coefficients T_ij = d^i_u d^j_v f / (i! j!) for i + j = m
  std::vector<Rat> t(m + 1);
  for (int j = 0; j <= m; ++j) {
    int i = m - j;
    // differentiate the dehomogenized polynomial: build from the form
    BiPoly g = form_dehomogenize(f, chart);
    // g is indexed [v-power][u-power]
    Rat acc = 0;
    for (int bv = 0; bv < static_cast<int>(g.size()); ++bv)
      for (int au = 0; au < static_cast<int>(g[bv].size()); ++au) {
        if (au < i || bv < j || g[bv][au] == 0) continue;
        Rat coef = g[bv][au];
        for (int tt = 0; tt < i; ++tt) coef *= Rat(au - tt);
        for (int tt = 0; tt < j; ++tt) coef *= Rat(bv - tt);
        for (int tt = 0; tt < au - i; ++tt) coef *= u0;
        for (int tt = 0; tt < bv - j; ++tt) coef *= v0;
        acc += coef;
      }
    Rat fact = 1;
    for (int tt = 2; tt <= i; ++tt) fact *= tt;
    for (int tt = 2; tt <= j; ++tt) fact *= tt;
    t[j] = acc / fact;
  }
  // binary form sum t_j s^(m-j) y^j: squarefree iff b(y) = sum t_j y^j is
  // squarefree and the s-multiplicity is at most one
  QPoly b(t.begin(), t.end());
  qp_trim(b);
  if (b.empty()) return false;
  int drop = m - qp_deg(b);
  if (drop > 1) return false;
  return qp_is_squarefree(b);
}

// dehomogenize keeping variable `keep` as the parameter, eliminating `elim`,
// setting the third variable to 1
inline BiPoly dehomog_elim(const PlaneForm& f, int keep, int elim) {
  BiPoly out;
  for (int a = f.deg; a >= 0; --a)
    for (int b = f.deg - a; b >= 0; --b) {
      int cexp = f.deg - a - b;
      const Rat& co = f.coef[PlaneForm::mono_index(f.deg, a, b)];
      if (co == 0) continue;
      int e[3] = {a, b, cexp};
      int du = e[keep], dv = e[elim];
      if (static_cast<int>(out.size()) <= dv) out.resize(dv + 1);
      if (qp_deg(out[dv]) < du) out[dv].resize(du + 1, Rat(0));
      out[dv][du] += co;
    }
  bp_trim(out);
  return out;
}

// PGL3 shear used to move every marked point off the chart boundaries
inline PlaneForm form_substitute(const PlaneForm& f, const QMat& m) {
  // F'(x) = F(m x): expand by iterating over monomials
  PlaneForm out = make_form(f.deg);
  // linear forms m * (x, y, z)
  std::array<std::array<Rat, 3>, 3> lin;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) lin[i][j] = m(i, j);
  for (int a = f.deg; a >= 0; --a)
    for (int b = f.deg - a; b >= 0; --b) {
      const Rat& co = f.coef[PlaneForm::mono_index(f.deg, a, b)];
      if (co == 0) continue;
      int cexp = f.deg - a - b;
      // multiply out (lin0)^a (lin1)^b (lin2)^c
      PlaneForm acc = make_form(0);
      acc.coef[0] = co;
      auto mul_by_linear = [&](const std::array<Rat, 3>& l) {
        PlaneForm next = make_form(acc.deg + 1);
        for (int aa = acc.deg; aa >= 0; --aa)
          for (int bb = acc.deg - aa; bb >= 0; --bb) {
            const Rat& cc = acc.coef[PlaneForm::mono_index(acc.deg, aa, bb)];
            if (cc == 0) continue;
            next.coef[PlaneForm::mono_index(acc.deg + 1, aa + 1, bb)] += cc * l[0];
            next.coef[PlaneForm::mono_index(acc.deg + 1, aa, bb + 1)] += cc * l[1];
            next.coef[PlaneForm::mono_index(acc.deg + 1, aa, bb)] += cc * l[2];
          }
        acc = std::move(next);
      };
      for (int t = 0; t < a; ++t) mul_by_linear(lin[0]);
      for (int t = 0; t < b; ++t) mul_by_linear(lin[1]);
      for (int t = 0; t < cexp; ++t) mul_by_linear(lin[2]);
      for (size_t k = 0; k < out.coef.size(); ++k) out.coef[k] += acc.coef[k];
    }
  return out;
}

// One projection run of the singular-locus certificate: after the change of
// coordinates m, eliminate the variable `elim` working in the chart `chart`.
// Certifies that every singular point of f with nonzero chart coordinate is
// one of the marked multiple points: the gcd of the elimination resultants
// bounds the singular parameter values, stripping the marked parameters must
// leave a constant (so no unmarked parameter hosts a singularity, rational
// or not), and above each marked parameter the fiber gcd of (f, f_u, f_v)
// must be a pure power of (v - v0).
inline bool smooth_projection_run(const PlaneForm& f_in,
                                  const std::vector<std::pair<ProjPoint, int>>& marked,
                                  const QMat& m, const QMat& minv, int elim) {
  int keep = (elim + 1) % 3;
  int chart = (elim + 2) % 3;
  std::vector<std::pair<Rat, Rat>> uv;
  for (const auto& [p, mult] : marked) {
    QVec v = vec_mul(QVec{p.c[0], p.c[1], p.c[2]}, transpose(minv));
    if (v[chart] == 0) return false;  // marked point out of this chart
    uv.emplace_back(v[keep] / v[chart], v[elim] / v[chart]);
  }
  for (size_t i = 0; i < uv.size(); ++i)
    for (size_t j = i + 1; j < uv.size(); ++j)
      if (uv[i].first == uv[j].first) return false;  // parameters collide

  PlaneForm f = form_substitute(f_in, m);
  // reorder variables so that (keep, elim, chart) -> (x, y, z = 1)
  QMat perm(3, 3);
  perm(keep, 0) = 1;
  perm(elim, 1) = 1;
  perm(chart, 2) = 1;
  PlaneForm fp = form_substitute(f, perm);
  BiPoly fb = form_dehomogenize(fp, 2);  // poly in (u = x, v = y); eliminate v
  BiPoly fu = bp_derivative_x(fb);
  BiPoly fv = bp_derivative_y(fb);
  if (fb.size() <= 1) {
    // no dependence on the eliminated variable: singular points would be
    // repeated factors
    QPoly uni = fb.empty() ? QPoly{} : fb[0];
    return qp_deg(uni) <= 0 || qp_is_squarefree(uni);
  }
  QPoly ra = resultant_y(fb, fv);
  QPoly rb = resultant_y(fb, fu);
  QPoly gpoly = qp_gcd(ra, rb);
  if (gpoly.empty()) return false;
  for (const auto& [u0, v0] : uv) {
    QPoly lin{-u0, Rat(1)};
    while (qp_deg(gpoly) > 0) {
      QPoly q, r;
      qp_divmod(gpoly, lin, q, r);
      if (!r.empty()) break;
      gpoly = q;
    }
  }
  if (qp_deg(gpoly) > 0) return false;
  for (const auto& [u0, v0] : uv) {
    auto fiber = [&](const BiPoly& g) {
      QPoly out(g.size());
      for (size_t j = 0; j < g.size(); ++j) out[j] = qp_eval(g[j], u0);
      qp_trim(out);
      return out;
    };
    QPoly h = qp_gcd(qp_gcd(fiber(fb), fiber(fu)), fiber(fv));
    QPoly lin{-v0, Rat(1)};
    while (qp_deg(h) > 0) {
      QPoly q, r;
      qp_divmod(h, lin, q, r);
      if (!r.empty()) break;
      h = q;
    }
    if (qp_deg(h) > 0) return false;
  }
  return true;
}

// Certificate that the singular locus of f lies inside the marked multiple
// points. Each of the three projection directions certifies its own chart
// with its own deterministic shear; the three uncovered chart lines must not
// be concurrent, so together the runs cover the plane. A genuine extra
// singular point survives every shear and fails the run that sees it.
inline bool smooth_away_from(const PlaneForm& f_in,
                             const std::vector<std::pair<ProjPoint, int>>& marked_in) {
  std::vector<std::pair<ProjPoint, int>> marked;
  for (const auto& pm : marked_in)
    if (pm.second >= 2) marked.push_back(pm);  // only multiple points may be singular

  // general position changes: the later entries mix every coordinate pair
  static const long frames[][9] = {
      {1, 0, 0, 0, 1, 0, 0, 0, 1},    {1, 1, 0, 0, 1, 1, 1, 0, 1},
      {1, 0, 1, 1, 1, 0, 0, 1, 1},    {1, 2, 0, 0, 1, 3, 1, 0, 1},
      {1, 0, 2, 3, 1, 0, 0, 1, 1},    {2, 1, 1, 1, 2, 1, 1, 1, 2},
      {1, 1, 1, 0, 1, 2, 0, 0, 1},    {1, 0, 0, 1, 1, 0, 2, 1, 1},
      {1, 3, 2, 2, 1, 3, 3, 2, 1},    {0, 1, 0, 0, 0, 1, 1, 0, 0},
      {1, 1, -1, 1, -1, 1, -1, 1, 1}, {1, 2, 3, 0, 1, 4, 5, 6, 1},
      {1, -1, 2, 2, 1, -1, -1, 2, 1}, {3, 1, 0, 1, 0, 1, 0, 2, 1}};
  // every certified run excludes unmarked singularities away from one line;
  // once the collected lines have no common point the whole plane is covered
  std::vector<QVec> uncovered;
  auto covered = [&]() {
    if (uncovered.size() < 3) return false;
    QMat m(static_cast<int>(uncovered.size()), 3);
    for (size_t i = 0; i < uncovered.size(); ++i) m.set_row(static_cast<int>(i), uncovered[i]);
    return rank_q(m) == 3;
  };
  for (int sweep = 0; sweep < 2; ++sweep) {
    for (int elim = 0; elim < 3; ++elim) {
      for (const auto& s : frames) {
        QMat m(3, 3);
        for (int i = 0; i < 9; ++i) m(i / 3, i % 3) = Rat(s[i]);
        if (det_q(m) == 0) continue;
        QMat minv = inverse(m);
        if (!smooth_projection_run(f_in, marked, m, minv, elim)) continue;
        int chart = (elim + 2) % 3;
        QVec line = minv.row(chart);
        bool fresh = true;
        for (const auto& seen : uncovered)
          if (seen == line) fresh = false;
        if (fresh) uncovered.push_back(line);
        if (covered()) return true;
        if (sweep == 0) break;  // one run per direction first, then widen
      }
    }
  }
  return false;
}

}  // namespace detail

// checks one member curve of a rigid system against its class data
inline MemberCheck check_member(const LineArrangement& arr, const SurfaceModel& r,
                                const std::string& name, const DivisorClass& cls) {
  MemberCheck mc;
  mc.system = name;
  ClassSystem sys = system_from_class(arr, r, cls);
  if (sys.symbolic) {
    mc.symbolic = true;
    mc.h0 = 1;
    return mc;  // an exceptional curve: a single smooth rational curve by construction
  }
  mc.h0 = h0_interpolation(sys.problem);
  if (mc.h0 != 1) {
    mc.failure = "h0 = " + std::to_string(mc.h0) + ", expected 1";
    return mc;
  }
  mc.member = unique_member(sys.problem);
  // exact multiplicity at every q-point, including zero at unassigned ones
  auto pairs = q_index_pairs();
  auto labels = q_point_labels();
  for (size_t k = 0; k < pairs.size(); ++k) {
    int m = sys.mults[labels[k]];
    const ProjPoint& p = arr.q(pairs[k].first, pairs[k].second);
    if (!detail::multiplicity_exact(mc.member, p, m)) {
      mc.failure = "multiplicity at q" + labels[k] + " differs from the class coefficient " +
                   std::to_string(m);
      return mc;
    }
    if (m >= 2 && !detail::jet_squarefree(mc.member, p, m)) {
      mc.failure = "non-ordinary singular point at q" + labels[k];
      return mc;
    }
  }
  // irreducible over Q
  BiPoly affine = form_dehomogenize(mc.member, 2);
  int total = mc.member.deg;
  if (total >= 1) {
    bool line_at_infinity = true;
    for (int a = total; a >= 0; --a)
      for (int b = total - a; b >= 0; --b)
        if (total - a - b == 0 && mc.member.coef[PlaneForm::mono_index(total, a, b)] != 0)
          line_at_infinity = false;
    // z divides the form: reducible unless the form is exactly z
    if (line_at_infinity && total > 1) {
      mc.failure = "member contains the line z = 0";
      return mc;
    }
    auto irr = total == 1 ? IrreducibilityResult{true, ""} : bivariate_irreducible_q(affine);
    if (!irr.irreducible) {
      mc.failure = "member is reducible over Q (" + irr.note + ")";
      return mc;
    }
  }
  // no singular points beyond the assigned ones
  std::vector<std::pair<ProjPoint, int>> marked;
  for (size_t k = 0; k < pairs.size(); ++k)
    marked.push_back({arr.q(pairs[k].first, pairs[k].second), sys.mults[labels[k]]});
  if (!detail::smooth_away_from(mc.member, marked)) {
    mc.failure = "singular locus not certified inside the assigned points";
    return mc;
  }
  return mc;
}

inline GenericityCertificate is_generic(const LineArrangement& arr) {
  GenericityCertificate cert;
  auto r = fifteen_point_blowup();
  auto d = pencil_class(r);
  for (int i = 1; i <= 6; ++i) {
    auto phi = phi_class(r, i);
    auto mc1 = check_member(arr, r, "Phi" + std::to_string(i), phi);
    cert.checks.push_back(mc1);
    if (!mc1.pass() && cert.first_failing == 0) cert.first_failing = i;
    auto mc2 = check_member(arr, r, "D-Phi" + std::to_string(i), d - phi);
    cert.checks.push_back(mc2);
    if (!mc2.pass() && cert.first_failing == 0) cert.first_failing = i;
  }
  cert.generic = cert.first_failing == 0;
  return cert;
}

// ---------------------------------------------------------------------------
// tangent conic (Kummer case)

// The common tangent conic: adjugate of the dual conic, verified tangent to
// all six lines via vanishing discriminants of the restrictions.
inline PlaneForm tangent_conic(const LineArrangement& arr) {
  auto w = is_kummer_dual_conic(arr);
  if (!w.kummer) throw Error(Errc::NotKummer, "arrangement has no common tangent conic");
  QMat q = dual_conic_matrix(w.dual_conic);
  // adjugate via inverse * det
  QMat n = inverse(q);
  Rat dq = det_q(q);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) n(i, j) *= dq;
  PlaneForm conic = make_form(2);
  conic.coef[PlaneForm::mono_index(2, 2, 0)] = n(0, 0);
  conic.coef[PlaneForm::mono_index(2, 0, 2)] = n(1, 1);
  conic.coef[PlaneForm::mono_index(2, 0, 0)] = n(2, 2);
  conic.coef[PlaneForm::mono_index(2, 1, 1)] = 2 * n(0, 1);
  conic.coef[PlaneForm::mono_index(2, 1, 0)] = 2 * n(0, 2);
  conic.coef[PlaneForm::mono_index(2, 0, 1)] = 2 * n(1, 2);
  form_normalize(conic);
  // verify tangency: restriction to each line has vanishing discriminant
  for (int i = 0; i < 6; ++i) {
    const auto& l = arr.lines[i].c;
    // two points spanning the line
    ProjTriple p1, p2;
    if (l[0] != 0) {
      p1 = {-l[1] / l[0], Rat(1), Rat(0)};
      p2 = {-l[2] / l[0], Rat(0), Rat(1)};
    } else if (l[1] != 0) {
      p1 = {Rat(1), Rat(0), Rat(0)};
      p2 = {Rat(0), -l[2] / l[1], Rat(1)};
    } else {
      p1 = {Rat(1), Rat(0), Rat(0)};
      p2 = {Rat(0), Rat(1), Rat(0)};
    }
    auto eval_bilinear = [&](const ProjTriple& a, const ProjTriple& b) {
      Rat acc = 0;
      for (int ii = 0; ii < 3; ++ii)
        for (int jj = 0; jj < 3; ++jj) acc += a[ii] * n(ii, jj) * b[jj];
      return acc;
    };
    Rat aa = eval_bilinear(p1, p1), bb = eval_bilinear(p1, p2), cc = eval_bilinear(p2, p2);
    if (bb * bb - aa * cc != 0)
      throw Error(Errc::CertificateFailure, "tangency failed on line " + std::to_string(i + 1));
  }
  return conic;
}

// ---------------------------------------------------------------------------
// input/output and sampling

inline std::array<ProjTriple, 6> arrangement_from_json(const nlohmann::json& j) {
  if (!j.contains("lines") || !j["lines"].is_array() || j["lines"].size() != 6)
    throw Error(Errc::ParseError, "arrangement file needs a six-element \"lines\" array");
  std::array<ProjTriple, 6> out;
  for (int i = 0; i < 6; ++i) {
    const auto& row = j["lines"][i];
    if (!row.is_array() || row.size() != 3)
      throw Error(Errc::ParseError, "line " + std::to_string(i + 1) + " needs three entries");
    for (int k = 0; k < 3; ++k) {
      const auto& v = row[k];
      if (v.is_number_integer())
        out[i][k] = Rat(static_cast<long>(v.get<long long>()));
      else if (v.is_string())
        out[i][k] = parse_rat(v.get<std::string>());
      else
        throw Error(Errc::ParseError, "line coefficients must be integers or \"p/q\" strings");
    }
  }
  return out;
}

inline nlohmann::ordered_json arrangement_to_json(const LineArrangement& arr) {
  nlohmann::ordered_json j;
  j["lines"] = nlohmann::ordered_json::array();
  for (const auto& l : arr.lines) {
    nlohmann::ordered_json row = nlohmann::ordered_json::array();
    for (const auto& c : l.c) row.push_back(to_string(c));
    j["lines"].push_back(row);
  }
  return j;
}

// rejection-sampled random arrangement with integer coefficients in [-9, 9]
inline LineArrangement random_arrangement(Rng& rng) {
  for (int tries = 0; tries < 10000; ++tries) {
    std::array<ProjTriple, 6> lines;
    for (auto& l : lines) {
      bool nonzero = false;
      for (auto& c : l) {
        c = Rat(rng.range(-9, 9));
        if (c != 0) nonzero = true;
      }
      if (!nonzero) l[0] = 1;
    }
    try {
      return validate(lines);
    } catch (const Error&) {
      continue;
    }
  }
  throw Error(Errc::ParseError, "sampling failed");
}

// six tangent lines of the conic x^2 + y^2 = z^2 at rational parameters
inline LineArrangement tangent_circle_arrangement(const std::vector<Rat>& ts) {
  assert(ts.size() == 6);
  std::array<ProjTriple, 6> lines;
  for (int i = 0; i < 6; ++i) {
    const Rat& t = ts[i];
    lines[i] = {1 - t * t, 2 * t, -(1 + t * t)};
  }
  return validate(lines);
}

}  // namespace doublesix
