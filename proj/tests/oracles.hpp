#pragma once

// Test-only oracles, kept independent of the library code paths they check:
// cofactor/adjugate determinants, brute-force short-vector enumeration over
// an inverse-form coefficient box, and naive rational rank.

#include "doublesix/matrix.hpp"

#include <vector>

namespace oracle {

using doublesix::IMat;
using doublesix::Int;
using doublesix::IVec;
using doublesix::QMat;
using doublesix::Rat;

// plain cofactor expansion; fine for n <= 9
inline Int cofactor_det(const IMat& m) {
  int n = m.rows();
  if (n == 0) return 1;
  if (n == 1) return m(0, 0);
  Int acc = 0;
  for (int k = 0; k < n; ++k) {
    if (m(0, k) == 0) continue;
    IMat sub(n - 1, n - 1);
    for (int i = 1; i < n; ++i) {
      int jj = 0;
      for (int j = 0; j < n; ++j) {
        if (j == k) continue;
        sub(i - 1, jj++) = m(i, j);
      }
    }
    Int term = m(0, k) * cofactor_det(sub);
    acc += (k % 2 == 0) ? term : -term;
  }
  return acc;
}

// adjugate via cofactors: adj(A)_ij = (-1)^{i+j} det(A minus row j col i)
inline IMat adjugate(const IMat& m) {
  int n = m.rows();
  IMat out(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      IMat sub(n - 1, n - 1);
      int ii = 0;
      for (int r = 0; r < n; ++r) {
        if (r == j) continue;
        int jj = 0;
        for (int c = 0; c < n; ++c) {
          if (c == i) continue;
          sub(ii, jj++) = m(r, c);
        }
        ++ii;
      }
      Int d = cofactor_det(sub);
      out(i, j) = ((i + j) % 2 == 0) ? d : -d;
    }
  return out;
}

// Exhaustive enumeration of v with v(-G)v^T = norm for negative definite G,
// over the coordinate box |v_i| <= sqrt(norm * (A^{-1})_ii) with A = -G,
// where A^{-1} comes from the adjugate. Independent of Fincke-Pohst.
inline std::vector<IVec> brute_force_norm_vectors(const IMat& gram, long norm) {
  int n = gram.rows();
  IMat a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = -gram(i, j);
  Int det = cofactor_det(a);
  IMat adj = adjugate(a);
  std::vector<long> box(n);
  for (int i = 0; i < n; ++i) {
    // v_i^2 <= norm * adj_ii / det
    Rat b = Rat(norm) * Rat(adj(i, i)) / Rat(det);
    box[i] = doublesix::rat_sqrt_ceil(b).get_si();
  }
  std::vector<IVec> out;
  IVec v(n, Int(0));
  std::vector<long> cur(n, 0);
  auto eval = [&]() {
    Int q = 0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) q += a(i, j) * Int(cur[i]) * Int(cur[j]);
    return q;
  };
  std::function<void(int)> rec = [&](int i) {
    if (i == n) {
      if (eval() == norm) {
        for (int k = 0; k < n; ++k) v[k] = cur[k];
        bool zero = true;
        for (int k = 0; k < n; ++k)
          if (cur[k] != 0) zero = false;
        if (!zero) out.push_back(v);
      }
      return;
    }
    for (long x = -box[i]; x <= box[i]; ++x) {
      cur[i] = x;
      rec(i + 1);
    }
    cur[i] = 0;
  };
  rec(0);
  std::sort(out.begin(), out.end());
  return out;
}

// row-echelon rank over Q, straightforward
inline int naive_rank(QMat m) {
  int rank = 0;
  for (int c = 0; c < m.cols() && rank < m.rows(); ++c) {
    int piv = -1;
    for (int i = rank; i < m.rows(); ++i)
      if (m(i, c) != 0) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    m.swap_rows(rank, piv);
    for (int i = rank + 1; i < m.rows(); ++i) {
      if (m(i, c) == 0) continue;
      Rat f = m(i, c) / m(rank, c);
      for (int j = c; j < m.cols(); ++j) m(i, j) -= f * m(rank, j);
    }
    ++rank;
  }
  return rank;
}

}  // namespace oracle
