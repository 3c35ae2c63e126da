#pragma once

// Exact polynomial arithmetic for the plane-geometry module: homogeneous
// ternary forms, univariate gcd/resultants, univariate factorization over Q
// (Zassenhaus: mod-p trial division, linear Hensel lifting, subset
// recombination), and a bivariate irreducibility test via (x-a)-adic lifting.
// Degrees in this project never exceed five for factored forms.

#include "doublesix/matrix.hpp"

#include <array>
#include <functional>
#include <map>

namespace doublesix {

using QPoly = std::vector<Rat>;  // coefficient of x^i at index i
using IPoly = std::vector<Int>;

// ---------------------------------------------------------------------------
// univariate over Q

inline void qp_trim(QPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

inline int qp_deg(const QPoly& p) { return static_cast<int>(p.size()) - 1; }

inline bool qp_is_zero(const QPoly& p) { return p.empty(); }

inline QPoly qp_add(const QPoly& a, const QPoly& b) {
  QPoly out(std::max(a.size(), b.size()), Rat(0));
  for (size_t i = 0; i < a.size(); ++i) out[i] += a[i];
  for (size_t i = 0; i < b.size(); ++i) out[i] += b[i];
  qp_trim(out);
  return out;
}

inline QPoly qp_sub(const QPoly& a, const QPoly& b) {
  QPoly out(std::max(a.size(), b.size()), Rat(0));
  for (size_t i = 0; i < a.size(); ++i) out[i] += a[i];
  for (size_t i = 0; i < b.size(); ++i) out[i] -= b[i];
  qp_trim(out);
  return out;
}

inline QPoly qp_mul(const QPoly& a, const QPoly& b) {
  if (a.empty() || b.empty()) return {};
  QPoly out(a.size() + b.size() - 1, Rat(0));
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  }
  qp_trim(out);
  return out;
}

inline QPoly qp_scale(const Rat& c, const QPoly& a) {
  if (c == 0) return {};
  QPoly out(a.size());
  for (size_t i = 0; i < a.size(); ++i) out[i] = c * a[i];
  return out;
}

// division with remainder over the field Q
inline void qp_divmod(const QPoly& a, const QPoly& b, QPoly& q, QPoly& r) {
  assert(!b.empty());
  r = a;
  q.assign(a.size() > b.size() ? a.size() - b.size() + 1 : 1, Rat(0));
  while (!r.empty() && r.size() >= b.size()) {
    Rat c = r.back() / b.back();
    size_t shift = r.size() - b.size();
    q[shift] = c;
    for (size_t i = 0; i < b.size(); ++i) r[shift + i] -= c * b[i];
    qp_trim(r);
  }
  qp_trim(q);
}

inline bool qp_divides(const QPoly& b, const QPoly& a) {
  if (b.empty()) return a.empty();
  QPoly q, r;
  qp_divmod(a, b, q, r);
  return r.empty();
}

inline QPoly qp_derivative(const QPoly& p) {
  if (p.size() <= 1) return {};
  QPoly out(p.size() - 1);
  for (size_t i = 1; i < p.size(); ++i) out[i - 1] = p[i] * Rat(static_cast<long>(i));
  return out;
}

inline Rat qp_eval(const QPoly& p, const Rat& x) {
  Rat acc = 0;
  for (size_t i = p.size(); i-- > 0;) acc = acc * x + p[i];
  return acc;
}

// monic gcd
inline QPoly qp_gcd(QPoly a, QPoly b) {
  qp_trim(a);
  qp_trim(b);
  while (!b.empty()) {
    QPoly q, r;
    qp_divmod(a, b, q, r);
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty()) {
    Rat lead = a.back();
    for (auto& c : a) c /= lead;
  }
  return a;
}

inline bool qp_is_squarefree(const QPoly& p) {
  return qp_deg(qp_gcd(p, qp_derivative(p))) <= 0;
}

// clear denominators and the integer content; positive leading coefficient
inline IPoly qp_primitive(const QPoly& p) {
  if (p.empty()) return {};
  Int l = 1;
  for (const auto& c : p) l = lcm(l, den(c));
  IPoly out(p.size());
  Int content = 0;
  for (size_t i = 0; i < p.size(); ++i) {
    out[i] = num(p[i] * Rat(l));
    content = gcd(content, out[i]);
  }
  if (content > 1)
    for (auto& c : out) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), content.get_mpz_t());
  if (out.back() < 0)
    for (auto& c : out) c = -c;
  return out;
}

inline QPoly ip_to_q(const IPoly& p) {
  QPoly out(p.size());
  for (size_t i = 0; i < p.size(); ++i) out[i] = Rat(p[i]);
  return out;
}

// ---------------------------------------------------------------------------
// univariate over F_p (p a small odd prime)

namespace fp {

using Poly = std::vector<long>;  // values in [0, p)

inline void trim(Poly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

inline long inv_mod(long a, long p) {
  long t = 0, nt = 1, r = p, nr = a % p;
  if (nr < 0) nr += p;
  while (nr != 0) {
    long q = r / nr;
    std::swap(t -= q * nt, nt);
    std::swap(r -= q * nr, nr);
  }
  return t < 0 ? t + p : t;
}

inline Poly mul(const Poly& a, const Poly& b, long p) {
  if (a.empty() || b.empty()) return {};
  Poly out(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (size_t j = 0; j < b.size(); ++j) out[i + j] = (out[i + j] + a[i] * b[j]) % p;
  }
  trim(out);
  return out;
}

inline void divmod(const Poly& a, const Poly& b, long p, Poly& q, Poly& r) {
  r = a;
  trim(r);
  q.assign(r.size() >= b.size() && !b.empty() ? r.size() - b.size() + 1 : 1, 0);
  long binv = inv_mod(b.back(), p);
  while (!r.empty() && r.size() >= b.size()) {
    long c = (r.back() * binv) % p;
    size_t shift = r.size() - b.size();
    q[shift] = c;
    for (size_t i = 0; i < b.size(); ++i) {
      r[shift + i] = (r[shift + i] - c * b[i]) % p;
      if (r[shift + i] < 0) r[shift + i] += p;
    }
    trim(r);
  }
  trim(q);
}

inline Poly mod(const Poly& a, const Poly& b, long p) {
  Poly q, r;
  divmod(a, b, p, q, r);
  return r;
}

inline Poly gcd(Poly a, Poly b, long p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly r = mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty()) {
    long inv = inv_mod(a.back(), p);
    for (auto& c : a) c = (c * inv) % p;
  }
  return a;
}

inline Poly derivative(const Poly& f, long p) {
  if (f.size() <= 1) return {};
  Poly out(f.size() - 1);
  for (size_t i = 1; i < f.size(); ++i) out[i - 1] = (f[i] * static_cast<long>(i % p)) % p;
  trim(out);
  return out;
}

// extended euclid: returns (g, s) with s*a = g mod m, g monic gcd(a, m)
inline void ext_gcd(const Poly& a, const Poly& m, long p, Poly& g, Poly& s) {
  Poly r0 = m, r1 = mod(a, m, p);
  Poly s0 = {}, s1 = {1};
  while (!r1.empty()) {
    Poly q, r2;
    divmod(r0, r1, p, q, r2);
    Poly s2 = s0;
    Poly qs = mul(q, s1, p);
    // s2 = s0 - q s1
    s2.resize(std::max(s2.size(), qs.size()), 0);
    for (size_t i = 0; i < qs.size(); ++i) {
      s2[i] = (s2[i] - qs[i]) % p;
      if (s2[i] < 0) s2[i] += p;
    }
    trim(s2);
    r0 = std::move(r1);
    r1 = std::move(r2);
    s0 = std::move(s1);
    s1 = std::move(s2);
  }
  long inv = inv_mod(r0.back(), p);
  g = r0;
  for (auto& c : g) c = (c * inv) % p;
  s = s0;
  for (auto& c : s) c = (c * inv) % p;
  trim(s);
}

// all monic irreducible factors, by trial division with monic polynomials of
// increasing degree; exhaustive for the degrees this project meets
inline std::vector<Poly> factor_monic(Poly f, long p) {
  std::vector<Poly> out;
  trim(f);
  long inv = inv_mod(f.back(), p);
  for (auto& c : f) c = (c * inv) % p;
  int half = static_cast<int>(f.size() - 1) / 2;
  for (int d = 1; d <= half && static_cast<int>(f.size()) - 1 > d - 1;) {
    if (static_cast<int>(f.size()) - 1 < 2 * d) break;
    // enumerate monic polys of degree d
    std::vector<long> digits(d, 0);
    bool found = false;
    while (true) {
      Poly cand(digits.begin(), digits.end());
      cand.push_back(1);
      Poly q, r;
      divmod(f, cand, p, q, r);
      if (r.empty()) {
        // skip reducible candidates of degree 2: harmless (their linear
        // factors were peeled first)
        out.push_back(cand);
        f = q;
        found = true;
        break;
      }
      int i = 0;
      while (i < d && ++digits[i] == p) digits[i++] = 0;
      if (i == d) break;
    }
    if (!found) ++d;
  }
  if (f.size() > 1) out.push_back(f);
  return out;
}

}  // namespace fp

// ---------------------------------------------------------------------------
// Zassenhaus factorization over Z

namespace detail {

inline IPoly ip_mod(const IPoly& f, const Int& m) {
  IPoly out(f.size());
  for (size_t i = 0; i < f.size(); ++i) {
    mpz_fdiv_r(out[i].get_mpz_t(), f[i].get_mpz_t(), m.get_mpz_t());
  }
  while (!out.empty() && out.back() == 0) out.pop_back();
  return out;
}

inline IPoly ip_mods(const IPoly& f, const Int& m) {
  // symmetric remainder in (-m/2, m/2]
  IPoly out = ip_mod(f, m);
  for (auto& c : out)
    if (2 * c > m) c -= m;
  while (!out.empty() && out.back() == 0) out.pop_back();
  return out;
}

inline IPoly ip_mul(const IPoly& a, const IPoly& b) {
  if (a.empty() || b.empty()) return {};
  IPoly out(a.size() + b.size() - 1, Int(0));
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

inline IPoly ip_sub(const IPoly& a, const IPoly& b) {
  IPoly out(std::max(a.size(), b.size()), Int(0));
  for (size_t i = 0; i < a.size(); ++i) out[i] += a[i];
  for (size_t i = 0; i < b.size(); ++i) out[i] -= b[i];
  while (!out.empty() && out.back() == 0) out.pop_back();
  return out;
}

inline fp::Poly ip_to_fp(const IPoly& f, long p) {
  fp::Poly out(f.size());
  for (size_t i = 0; i < f.size(); ++i) {
    Int r = f[i] % p;
    long v = r.get_si();
    if (v < 0) v += p;
    out[i] = v;
  }
  fp::trim(out);
  return out;
}

}  // namespace detail

// Factor a primitive squarefree polynomial over Z into irreducible primitive
// factors (Zassenhaus). Input must be squarefree with positive degree.
inline std::vector<IPoly> factor_univariate_z(IPoly f) {
  using namespace detail;
  std::vector<IPoly> result;
  if (f.size() <= 2) return {f};
  // choose a prime: lc survives and f stays squarefree mod p
  static const long primes[] = {3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43,
                                47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97, 101};
  long p = 0;
  fp::Poly fp_f;
  for (long cand : primes) {
    if (f.back() % cand == 0) continue;
    fp::Poly g = ip_to_fp(f, cand);
    if (static_cast<int>(g.size()) != static_cast<int>(f.size())) continue;
    fp::Poly d = fp::derivative(g, cand);
    if (d.empty()) continue;
    if (fp::gcd(g, d, cand).size() == 1) {
      p = cand;
      fp_f = g;
      break;
    }
  }
  if (p == 0) throw Error(Errc::ParseError, "no good prime for factorization");
  auto modular = fp::factor_monic(fp_f, p);
  if (modular.size() == 1) return {f};

  // Mignotte-style bound on factor coefficients
  Int norm2 = 0;
  for (const auto& c : f) norm2 += c * c;
  Int bound = (Int(1) << static_cast<unsigned>(f.size())) * (isqrt(norm2) + 1) * abs(f.back());
  Int pk = p;
  int k = 1;
  while (pk <= 2 * bound) {
    pk *= p;
    ++k;
  }

  // linear multi-factor Hensel lift to p^k
  std::vector<IPoly> lifted;
  for (const auto& g : modular) {
    IPoly gi(g.size());
    for (size_t i = 0; i < g.size(); ++i) gi[i] = g[i];
    lifted.push_back(gi);
  }
  // Bezout data mod p: s_i = inverse of (lc * prod_{j != i} g_j) mod g_i
  std::vector<fp::Poly> bezout(modular.size());
  for (size_t i = 0; i < modular.size(); ++i) {
    Int lc_mod = ((f.back() % p) + p) % p;
    fp::Poly prod = {lc_mod.get_si()};
    for (size_t j = 0; j < modular.size(); ++j)
      if (j != i) prod = fp::mul(prod, modular[j], p);
    fp::Poly g, s;
    fp::ext_gcd(prod, modular[i], p, g, s);
    assert(g.size() == 1);
    bezout[i] = s;
  }
  Int pm = p;
  while (pm < pk) {
    // error term e = (f - lc * prod g_i) / p^m mod p
    IPoly prod = {f.back()};
    for (const auto& g : lifted) prod = ip_mul(prod, g);
    IPoly err = ip_sub(f, prod);
    IPoly e(err.size());
    for (size_t i = 0; i < err.size(); ++i) {
      Int q;
      mpz_fdiv_q(q.get_mpz_t(), err[i].get_mpz_t(), pm.get_mpz_t());
      e[i] = q;
    }
    fp::Poly ebar = ip_to_fp(e, p);
    for (size_t i = 0; i < lifted.size(); ++i) {
      fp::Poly gi_bar = ip_to_fp(lifted[i], p);
      fp::Poly delta = fp::mod(fp::mul(ebar, bezout[i], p), gi_bar, p);
      // g_i += p^m * delta, keeping g_i monic of fixed degree
      for (size_t t = 0; t < delta.size(); ++t) lifted[i][t] += pm * delta[t];
    }
    pm *= p;
    // renormalize coefficients mod p^m
    for (auto& g : lifted) {
      Int back = g.back();
      g = ip_mod(g, pm);
      g.resize(back == 1 ? g.size() : g.size(), Int(0));
      // monic degree must not collapse
      if (g.empty() || g.back() != 1) {
        // re-append monic leading term lost to reduction
        // (cannot happen: monic 1 < p^m)
        throw Error(Errc::ParseError, "hensel lift lost leading term");
      }
    }
  }

  // recombination
  std::vector<IPoly> pool = lifted;
  IPoly rest = f;
  bool progress = true;
  while (progress && !pool.empty()) {
    progress = false;
    int n = static_cast<int>(pool.size());
    for (int size = 1; size <= n / 2 && !progress; ++size) {
      // iterate subsets of given cardinality
      std::vector<int> idx(size);
      for (int i = 0; i < size; ++i) idx[i] = i;
      while (true) {
        IPoly cand = {rest.back()};
        for (int i : idx) cand = ip_mul(cand, pool[i]);
        cand = ip_mods(cand, pm);
        // primitive part
        QPoly cq = ip_to_q(cand);
        IPoly cp = qp_primitive(cq);
        QPoly q, r;
        qp_divmod(ip_to_q(rest), ip_to_q(cp), q, r);
        if (r.empty() && !cp.empty()) {
          result.push_back(cp);
          rest = qp_primitive(q);
          std::vector<IPoly> np;
          for (int i = 0, j = 0; i < n; ++i) {
            if (j < size && idx[j] == i) {
              ++j;
              continue;
            }
            np.push_back(pool[i]);
          }
          pool = std::move(np);
          progress = true;
          break;
        }
        // next subset
        int i = size - 1;
        while (i >= 0 && idx[i] == n - size + i) --i;
        if (i < 0) break;
        ++idx[i];
        for (int j = i + 1; j < size; ++j) idx[j] = idx[j - 1] + 1;
      }
    }
  }
  if (static_cast<int>(rest.size()) - 1 > 0) result.push_back(rest);
  return result;
}

// irreducibility over Q of a rational univariate
inline bool is_irreducible_univariate(const QPoly& f) {
  IPoly p = qp_primitive(f);
  int d = static_cast<int>(p.size()) - 1;
  if (d <= 1) return d == 1;
  if (!qp_is_squarefree(f)) return false;
  return factor_univariate_z(p).size() == 1;
}

// ---------------------------------------------------------------------------
// bivariate polynomials: index = power of y, coefficient = poly in x

using BiPoly = std::vector<QPoly>;

inline void bp_trim(BiPoly& f) {
  for (auto& c : f) qp_trim(c);
  while (!f.empty() && f.back().empty()) f.pop_back();
}

inline int bp_deg_y(const BiPoly& f) { return static_cast<int>(f.size()) - 1; }

inline int bp_deg_x(const BiPoly& f) {
  int d = -1;
  for (const auto& c : f) d = std::max(d, qp_deg(c));
  return d;
}

inline BiPoly bp_mul(const BiPoly& a, const BiPoly& b) {
  if (a.empty() || b.empty()) return {};
  BiPoly out(a.size() + b.size() - 1);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) out[i + j] = qp_add(out[i + j], qp_mul(a[i], b[j]));
  bp_trim(out);
  return out;
}

inline BiPoly bp_sub(const BiPoly& a, const BiPoly& b) {
  BiPoly out(std::max(a.size(), b.size()));
  for (size_t i = 0; i < a.size(); ++i) out[i] = qp_add(out[i], a[i]);
  for (size_t i = 0; i < b.size(); ++i) out[i] = qp_sub(out[i], b[i]);
  bp_trim(out);
  return out;
}

inline QPoly bp_eval_x(const BiPoly& f, const Rat& a) {
  QPoly out(f.size());
  for (size_t i = 0; i < f.size(); ++i) out[i] = qp_eval(f[i], a);
  qp_trim(out);
  return out;
}

inline BiPoly bp_derivative_y(const BiPoly& f) {
  if (f.size() <= 1) return {};
  BiPoly out(f.size() - 1);
  for (size_t i = 1; i < f.size(); ++i) out[i - 1] = qp_scale(Rat(static_cast<long>(i)), f[i]);
  bp_trim(out);
  return out;
}

inline BiPoly bp_derivative_x(const BiPoly& f) {
  BiPoly out(f.size());
  for (size_t i = 0; i < f.size(); ++i) out[i] = qp_derivative(f[i]);
  bp_trim(out);
  return out;
}

// gcd of all x-coefficients: the pure-x content
inline QPoly bp_content_x(const BiPoly& f) {
  QPoly g;
  for (const auto& c : f) g = qp_gcd(g, c);
  return g;
}

// division by a y-monic divisor; true when the remainder vanishes
inline bool bp_divide_monic(const BiPoly& f, const BiPoly& g, BiPoly& quotient) {
  assert(!g.empty() && qp_deg(g.back()) == 0 && g.back()[0] == 1);
  BiPoly r = f;
  bp_trim(r);
  quotient.assign(f.size() > g.size() ? f.size() - g.size() + 1 : 1, QPoly{});
  while (!r.empty() && r.size() >= g.size()) {
    QPoly c = r.back();
    size_t shift = r.size() - g.size();
    quotient[shift] = qp_add(quotient[shift], c);
    for (size_t i = 0; i < g.size(); ++i) r[shift + i] = qp_sub(r[shift + i], qp_mul(c, g[i]));
    bp_trim(r);
  }
  bp_trim(quotient);
  return r.empty();
}

// Resultant with respect to y of two bivariate polynomials, computed by
// interpolation of Sylvester determinants; exact over Q.
inline QPoly resultant_y(const BiPoly& f, const BiPoly& g) {
  int df = bp_deg_y(f), dg = bp_deg_y(g);
  if (df < 0 || dg < 0) return {};
  if (df == 0) {
    // Res(f0(x), g) = f0^deg_y(g)
    QPoly out = {Rat(1)};
    for (int i = 0; i < dg; ++i) out = qp_mul(out, f[0]);
    return out;
  }
  if (dg == 0) {
    QPoly out = {Rat(1)};
    for (int i = 0; i < df; ++i) out = qp_mul(out, g[0]);
    return out;
  }
  int bound = bp_deg_x(f) * dg + bp_deg_x(g) * df + 1;
  std::vector<Rat> xs, ys;
  for (int t = 0; static_cast<int>(xs.size()) < bound; ++t) {
    Rat a(t);
    int n = df + dg;
    QMat syl(n, n);
    QPoly fa(df + 1, Rat(0)), ga(dg + 1, Rat(0));
    for (int i = 0; i <= df; ++i) fa[i] = i < static_cast<int>(f.size()) ? qp_eval(f[i], a) : Rat(0);
    for (int i = 0; i <= dg; ++i) ga[i] = i < static_cast<int>(g.size()) ? qp_eval(g[i], a) : Rat(0);
    for (int i = 0; i < dg; ++i)
      for (int j = 0; j <= df; ++j) syl(i, i + j) = fa[df - j];
    for (int i = 0; i < df; ++i)
      for (int j = 0; j <= dg; ++j) syl(dg + i, i + j) = ga[dg - j];
    xs.push_back(a);
    ys.push_back(det_q(syl));
  }
  // Lagrange interpolation
  QPoly acc;
  for (size_t i = 0; i < xs.size(); ++i) {
    QPoly term = {ys[i]};
    for (size_t j = 0; j < xs.size(); ++j) {
      if (i == j) continue;
      // term *= (x - xj) / (xi - xj)
      QPoly lin = {-xs[j], Rat(1)};
      term = qp_scale(1 / (xs[i] - xs[j]), qp_mul(term, lin));
    }
    acc = qp_add(acc, term);
  }
  return acc;
}

// ---------------------------------------------------------------------------
// bivariate irreducibility over Q

namespace detail {

// linear Hensel lift of a y-monic factorization along T = x - a, to T^prec
inline std::vector<BiPoly> hensel_bivariate(const BiPoly& f_shifted,
                                            const std::vector<QPoly>& base, int prec) {
  // f_shifted is y-monic with x meaning T; base = monic univariate factors of
  // f_shifted at T = 0, pairwise coprime
  size_t n = base.size();
  // Bezout inverses: s_i * prod_{j != i} base_j = 1 mod base_i
  std::vector<QPoly> bezout(n);
  for (size_t i = 0; i < n; ++i) {
    QPoly prod = {Rat(1)};
    for (size_t j = 0; j < n; ++j)
      if (j != i) prod = qp_mul(prod, base[j]);
    // extended euclid over Q[y]
    QPoly r0 = base[i], r1 = prod, s0 = {}, s1 = {Rat(1)};
    QPoly q, r;
    while (!r1.empty()) {
      qp_divmod(r0, r1, q, r);
      QPoly s2 = qp_sub(s0, qp_mul(q, s1));
      r0 = std::move(r1);
      r1 = std::move(r);
      s0 = std::move(s1);
      s1 = std::move(s2);
    }
    assert(qp_deg(r0) == 0);
    bezout[i] = qp_scale(1 / r0[0], s0);
  }
  // factors as BiPoly in (T, y), truncated at T^prec
  std::vector<BiPoly> lift(n);
  for (size_t i = 0; i < n; ++i) {
    lift[i].assign(base[i].size(), QPoly{});
    for (size_t j = 0; j < base[i].size(); ++j)
      if (base[i][j] != 0) lift[i][j] = {base[i][j]};
  }
  auto truncate = [&](BiPoly& p, int tprec) {
    for (auto& c : p)
      if (static_cast<int>(c.size()) > tprec) {
        c.resize(tprec);
        qp_trim(c);
      }
    bp_trim(p);
  };
  for (int m = 1; m < prec; ++m) {
    BiPoly prod = lift[0];
    for (size_t i = 1; i < n; ++i) prod = bp_mul(prod, lift[i]);
    truncate(prod, m + 1);
    BiPoly err = bp_sub(f_shifted, prod);
    truncate(err, m + 1);
    // e(y) = coefficient of T^m in err
    QPoly e;
    for (size_t yi = 0; yi < err.size(); ++yi) {
      Rat c = static_cast<int>(err[yi].size()) > m ? err[yi][m] : Rat(0);
      e.push_back(c);
    }
    qp_trim(e);
    if (e.empty()) continue;
    for (size_t i = 0; i < n; ++i) {
      QPoly q, delta;
      qp_divmod(qp_mul(e, bezout[i]), base[i], q, delta);
      if (delta.empty()) continue;
      for (size_t j = 0; j < delta.size(); ++j) {
        if (delta[j] == 0) continue;
        if (lift[i].size() <= j) lift[i].resize(j + 1);
        if (static_cast<int>(lift[i][j].size()) <= m) lift[i][j].resize(m + 1, Rat(0));
        lift[i][j][m] += delta[j];
      }
    }
  }
  return lift;
}

// substitute x -> x + a
inline BiPoly bp_shift_x(const BiPoly& f, const Rat& a) {
  BiPoly out(f.size());
  for (size_t i = 0; i < f.size(); ++i) {
    // expand c(x + a) by Horner in (x + a)
    QPoly acc;
    for (size_t k = f[i].size(); k-- > 0;) {
      acc = qp_mul(acc, QPoly{a, Rat(1)});
      acc = qp_add(acc, QPoly{f[i][k]});
    }
    out[i] = acc;
  }
  bp_trim(out);
  return out;
}

}  // namespace detail

struct IrreducibilityResult {
  bool irreducible = false;
  std::string note;  // for reducible inputs, a short reason
};

// Irreducibility over Q of a bivariate polynomial of small degree.
// Constants and pure monomial scalings count as reducible unless the total
// degree is one.
inline IrreducibilityResult bivariate_irreducible_q(BiPoly f) {
  using namespace detail;
  IrreducibilityResult res;
  bp_trim(f);
  int dy = bp_deg_y(f);
  int dx = bp_deg_x(f);
  if (dy < 0) {
    res.note = "zero polynomial";
    return res;
  }
  if (dx <= 0 && dy == 0) {
    res.note = "constant";
    return res;
  }
  // pure-x content
  QPoly content = bp_content_x(f);
  if (qp_deg(content) > 0) {
    if (dy == 0 && f[0] == content) {
      res.irreducible = is_irreducible_univariate(f[0]);
      if (!res.irreducible) res.note = "univariate in x factors";
      return res;
    }
    res.note = "nontrivial content in x";
    return res;
  }
  if (dy == 0) {
    res.irreducible = is_irreducible_univariate(f[0]);
    if (!res.irreducible) res.note = "univariate in x factors";
    return res;
  }
  if (dx < 0) {
    res.irreducible = is_irreducible_univariate(bp_eval_x(f, 0));
    if (!res.irreducible) res.note = "univariate in y factors";
    return res;
  }
  // squarefree in y
  BiPoly fy = bp_derivative_y(f);
  QPoly r = resultant_y(f, fy);
  qp_trim(r);
  if (r.empty()) {
    res.note = "not squarefree";
    return res;
  }
  // monicize in y: g(x,y) = lc(x)^(dy-1) f(x, y / lc(x))
  QPoly lead = f[dy];
  BiPoly monic(f.size());
  for (int i = 0; i <= dy; ++i) {
    QPoly c = f[i];
    for (int k = 0; k < dy - 1 - i; ++k) c = qp_mul(c, lead);
    monic[i] = c;
  }
  // after scaling, coefficient of y^dy is lead^(dy-1) * lead^{-(dy-1)}... the
  // substitution gives coefficient 1 exactly when built this way:
  // coefficient of y^i becomes f_i * lead^(dy-1-i)
  monic[dy] = {Rat(1)};
  // choose a with lead(a) != 0 and monic(a, y) squarefree
  Rat a;
  QPoly base_poly;
  for (int t = 0;; ++t) {
    a = Rat(t % 2 == 0 ? t / 2 : -(t / 2 + 1));
    if (qp_eval(lead, a) == 0) continue;
    QPoly fa = bp_eval_x(monic, a);
    if (qp_deg(fa) != dy) continue;
    if (qp_is_squarefree(fa)) {
      base_poly = fa;
      break;
    }
    if (t > 1000) throw Error(Errc::ParseError, "no squarefree specialization found");
  }
  // factor the specialization over Q
  IPoly prim = qp_primitive(base_poly);
  auto uni = factor_univariate_z(prim);
  if (uni.size() == 1) {
    res.irreducible = true;
    return res;
  }
  // lift the monic specialized factors along T = x - a
  std::vector<QPoly> base;
  for (const auto& g : uni) {
    QPoly q = ip_to_q(g);
    Rat inv = 1 / q.back();
    base.push_back(qp_scale(inv, q));
  }
  BiPoly shifted = bp_shift_x(monic, a);
  int prec = bp_deg_x(monic) * dy + 1;
  auto lifted = hensel_bivariate(shifted, base, prec);
  // try subsets of the lifted factors as true factors of the monicized form
  int n = static_cast<int>(lifted.size());
  for (int mask = 1; mask < (1 << n) - 1; ++mask) {
    BiPoly cand = {{Rat(1)}};
    for (int i = 0; i < n; ++i)
      if (mask & (1 << i)) cand = bp_mul(cand, lifted[i]);
    // truncate to the precision
    for (auto& c : cand)
      if (static_cast<int>(c.size()) > prec) {
        c.resize(prec);
        qp_trim(c);
      }
    bp_trim(cand);
    // shift back x -> x - a and test division
    BiPoly cand_x = bp_shift_x(cand, -a);
    BiPoly quo;
    if (!cand_x.empty() && qp_deg(cand_x.back()) == 0 && cand_x.back()[0] == 1 &&
        bp_divide_monic(monic, cand_x, quo)) {
      res.note = "proper factor of y-degree " + std::to_string(bp_deg_y(cand_x));
      return res;
    }
  }
  res.irreducible = true;
  return res;
}

// ---------------------------------------------------------------------------
// homogeneous ternary forms

struct PlaneForm {
  int deg = 0;
  QVec coef;  // over monomials of total degree deg, lexicographic in (a, b)
              // with a + b + c = deg: index built by mono_index

  static int mono_count(int d) { return (d + 1) * (d + 2) / 2; }
  // ordering: a descending, then b descending
  static int mono_index(int d, int a, int b) {
    // monomials with first exponent > a: sum_{t=a+1..d} (d - t + 1)
    int skipped = (d - a) * (d - a + 1) / 2;
    return skipped + (d - a - b);
  }
};

inline PlaneForm make_form(int deg) {
  PlaneForm f;
  f.deg = deg;
  f.coef.assign(PlaneForm::mono_count(deg), Rat(0));
  return f;
}

inline Rat form_eval(const PlaneForm& f, const std::array<Rat, 3>& p) {
  Rat acc = 0;
  for (int a = f.deg; a >= 0; --a)
    for (int b = f.deg - a; b >= 0; --b) {
      int c = f.deg - a - b;
      const Rat& co = f.coef[PlaneForm::mono_index(f.deg, a, b)];
      if (co == 0) continue;
      Rat term = co;
      for (int i = 0; i < a; ++i) term *= p[0];
      for (int i = 0; i < b; ++i) term *= p[1];
      for (int i = 0; i < c; ++i) term *= p[2];
      acc += term;
    }
  return acc;
}

// partial derivative with respect to variable v (0, 1 or 2)
inline PlaneForm form_partial(const PlaneForm& f, int v) {
  if (f.deg == 0) return make_form(0);
  PlaneForm out = make_form(f.deg - 1);
  for (int a = f.deg; a >= 0; --a)
    for (int b = f.deg - a; b >= 0; --b) {
      int c = f.deg - a - b;
      const Rat& co = f.coef[PlaneForm::mono_index(f.deg, a, b)];
      if (co == 0) continue;
      int e[3] = {a, b, c};
      if (e[v] == 0) continue;
      Rat nc = co * Rat(e[v]);
      e[v] -= 1;
      out.coef[PlaneForm::mono_index(f.deg - 1, e[0], e[1])] += nc;
    }
  return out;
}

// dehomogenize: set variable `chart` to 1; remaining variables ordered as
// (x-like, y-like) = the two others in increasing index order
inline BiPoly form_dehomogenize(const PlaneForm& f, int chart) {
  int u = chart == 0 ? 1 : 0;
  int v = chart == 2 ? 1 : 2;
  BiPoly out;
  for (int a = f.deg; a >= 0; --a)
    for (int b = f.deg - a; b >= 0; --b) {
      int c = f.deg - a - b;
      const Rat& co = f.coef[PlaneForm::mono_index(f.deg, a, b)];
      if (co == 0) continue;
      int e[3] = {a, b, c};
      int du = e[u], dv = e[v];
      if (static_cast<int>(out.size()) <= dv) out.resize(dv + 1);
      if (qp_deg(out[dv]) < du) out[dv].resize(du + 1, Rat(0));
      out[dv][du] += co;
    }
  bp_trim(out);
  return out;
}

// normalized integer coefficients, deterministic sign (first nonzero > 0)
inline void form_normalize(PlaneForm& f) {
  Int l = 1;
  for (const auto& c : f.coef) l = lcm(l, den(c));
  Int content = 0;
  for (auto& c : f.coef) {
    c *= Rat(l);
    content = gcd(content, num(c));
  }
  if (content > 1)
    for (auto& c : f.coef) c /= Rat(content);
  for (const auto& c : f.coef) {
    if (c == 0) continue;
    if (c < 0)
      for (auto& x : f.coef) x = -x;
    break;
  }
}

}  // namespace doublesix
