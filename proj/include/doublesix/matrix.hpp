#pragma once

// Dense exact matrices over Int/Rat and the normal-form algorithms the
// lattice modules are built on: row HNF, Smith normal form, fraction-free
// determinants, rational kernels, and congruence diagonalization.
// Vectors are rows throughout; a lattice is the Z-span of basis rows.

#include "doublesix/numeric.hpp"

#include <algorithm>
#include <cassert>
#include <functional>
#include <optional>
#include <utility>

namespace doublesix {

template <class T>
class Mat {
 public:
  Mat() : rows_(0), cols_(0) {}
  Mat(int rows, int cols) : rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * cols) {}
  Mat(int rows, int cols, std::vector<T> data) : rows_(rows), cols_(cols), a_(std::move(data)) {
    assert(static_cast<int>(a_.size()) == rows_ * cols_);
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  T& operator()(int i, int j) { return a_[static_cast<size_t>(i) * cols_ + j]; }
  const T& operator()(int i, int j) const { return a_[static_cast<size_t>(i) * cols_ + j]; }

  std::vector<T> row(int i) const {
    return std::vector<T>(a_.begin() + static_cast<size_t>(i) * cols_,
                          a_.begin() + static_cast<size_t>(i + 1) * cols_);
  }
  void set_row(int i, const std::vector<T>& r) {
    assert(static_cast<int>(r.size()) == cols_);
    std::copy(r.begin(), r.end(), a_.begin() + static_cast<size_t>(i) * cols_);
  }
  void swap_rows(int i, int j) {
    for (int k = 0; k < cols_; ++k) std::swap((*this)(i, k), (*this)(j, k));
  }
  void swap_cols(int i, int j) {
    for (int k = 0; k < rows_; ++k) std::swap((*this)(k, i), (*this)(k, j));
  }

  bool operator==(const Mat& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
  }

  static Mat identity(int n) {
    Mat m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

 private:
  int rows_, cols_;
  std::vector<T> a_;
};

using IMat = Mat<Int>;
using QMat = Mat<Rat>;
using IVec = std::vector<Int>;
using QVec = std::vector<Rat>;

template <class T>
Mat<T> transpose(const Mat<T>& m) {
  Mat<T> t(m.cols(), m.rows());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) t(j, i) = m(i, j);
  return t;
}

template <class T>
Mat<T> mul(const Mat<T>& a, const Mat<T>& b) {
  assert(a.cols() == b.rows());
  Mat<T> c(a.rows(), b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int k = 0; k < a.cols(); ++k) {
      if (a(i, k) == 0) continue;
      for (int j = 0; j < b.cols(); ++j) c(i, j) += a(i, k) * b(k, j);
    }
  return c;
}

// row vector * matrix
template <class T>
std::vector<T> vec_mul(const std::vector<T>& v, const Mat<T>& m) {
  assert(static_cast<int>(v.size()) == m.rows());
  std::vector<T> out(m.cols());
  for (int i = 0; i < m.rows(); ++i) {
    if (v[i] == 0) continue;
    for (int j = 0; j < m.cols(); ++j) out[j] += v[i] * m(i, j);
  }
  return out;
}

template <class T>
std::vector<T> vec_add(const std::vector<T>& a, const std::vector<T>& b) {
  assert(a.size() == b.size());
  std::vector<T> out(a.size());
  for (size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return out;
}

template <class T>
std::vector<T> vec_sub(const std::vector<T>& a, const std::vector<T>& b) {
  assert(a.size() == b.size());
  std::vector<T> out(a.size());
  for (size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

template <class T, class S>
std::vector<T> vec_scale(const S& c, const std::vector<T>& a) {
  std::vector<T> out(a.size());
  for (size_t i = 0; i < a.size(); ++i) out[i] = a[i] * c;
  return out;
}

template <class T>
bool is_zero(const std::vector<T>& v) {
  for (const auto& x : v)
    if (x != 0) return false;
  return true;
}

// x * G * y^T for row vectors: the bilinear form value.
template <class T>
T bilinear(const Mat<T>& g, const std::vector<T>& x, const std::vector<T>& y) {
  assert(static_cast<int>(x.size()) == g.rows() && static_cast<int>(y.size()) == g.cols());
  T acc = 0;
  for (int i = 0; i < g.rows(); ++i) {
    if (x[i] == 0) continue;
    T row = 0;
    for (int j = 0; j < g.cols(); ++j)
      if (y[j] != 0) row += g(i, j) * y[j];
    acc += x[i] * row;
  }
  return acc;
}

inline QMat to_q(const IMat& m) {
  QMat q(m.rows(), m.cols());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) q(i, j) = Rat(m(i, j));
  return q;
}

inline QVec to_q(const IVec& v) {
  QVec q(v.size());
  for (size_t i = 0; i < v.size(); ++i) q[i] = Rat(v[i]);
  return q;
}

// Clears denominators row by row; returns the scaled integer matrix.
inline IMat scale_rows_to_int(const QMat& m) {
  IMat out(m.rows(), m.cols());
  for (int i = 0; i < m.rows(); ++i) {
    Int l = 1;
    for (int j = 0; j < m.cols(); ++j) l = lcm(l, den(m(i, j)));
    for (int j = 0; j < m.cols(); ++j) {
      Rat v = m(i, j) * Rat(l);
      assert(is_integer(v));
      out(i, j) = num(v);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// rational elimination

// Reduced row echelon form in place; returns rank. Deterministic pivoting
// (first nonzero in column order).
inline int rref(QMat& m) {
  int r = 0;
  for (int c = 0; c < m.cols() && r < m.rows(); ++c) {
    int piv = -1;
    for (int i = r; i < m.rows(); ++i)
      if (m(i, c) != 0) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    m.swap_rows(r, piv);
    Rat inv = 1 / m(r, c);
    for (int j = c; j < m.cols(); ++j) m(r, j) *= inv;
    for (int i = 0; i < m.rows(); ++i) {
      if (i == r || m(i, c) == 0) continue;
      Rat f = m(i, c);
      for (int j = c; j < m.cols(); ++j) m(i, j) -= f * m(r, j);
    }
    ++r;
  }
  return r;
}

inline int rank_q(QMat m) { return rref(m); }
inline int rank_q(const IMat& m) { return rank_q(to_q(m)); }

// Basis (rows) of {c : m * c^T = 0}, i.e. the solution space of the linear
// conditions given by the rows of m. Deterministic.
inline std::vector<QVec> right_kernel(QMat m) {
  int n = m.cols();
  int rank = rref(m);
  std::vector<int> pivot_col;
  std::vector<bool> is_pivot(n, false);
  for (int i = 0, c = 0; i < rank; ++i) {
    while (c < n && m(i, c) == 0) ++c;
    if (c == n) break;
    pivot_col.push_back(c);
    is_pivot[c] = true;
  }
  std::vector<QVec> basis;
  for (int f = 0; f < n; ++f) {
    if (is_pivot[f]) continue;
    QVec v(n);
    v[f] = 1;
    for (size_t i = 0; i < pivot_col.size(); ++i) v[pivot_col[i]] = -m(static_cast<int>(i), f);
    basis.push_back(std::move(v));
  }
  return basis;
}

// Basis (rows) of {x : x * m = 0}.
inline std::vector<QVec> left_kernel_q(const QMat& m) { return right_kernel(transpose(m)); }

// Solve x * a = v over Q (x a row vector). Returns one solution if any.
inline std::optional<QVec> solve_left_q(const QMat& a, const QVec& v) {
  assert(static_cast<int>(v.size()) == a.cols());
  // x * a = v  <=>  a^T x^T = v^T : solve by elimination on [a^T | v^T]
  QMat at = transpose(a);
  QMat aug(at.rows(), at.cols() + 1);
  for (int i = 0; i < at.rows(); ++i) {
    for (int j = 0; j < at.cols(); ++j) aug(i, j) = at(i, j);
    aug(i, at.cols()) = v[i];
  }
  int rank = rref(aug);
  QVec x(a.rows(), Rat(0));
  for (int i = 0; i < rank; ++i) {
    int c = 0;
    while (c < aug.cols() && aug(i, c) == 0) ++c;
    if (c == at.cols()) return std::nullopt;  // inconsistent row 0 .. 0 | nonzero
    if (c > at.cols()) break;
    x[c] = aug(i, at.cols());
  }
  // verify (free variables were pinned to zero)
  QVec check = vec_mul(x, a);
  for (int j = 0; j < a.cols(); ++j)
    if (check[j] != v[j]) return std::nullopt;
  return x;
}

inline QMat inverse(const QMat& m) {
  assert(m.rows() == m.cols());
  int n = m.rows();
  QMat aug(n, 2 * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = 1;
  }
  int r = rref(aug);
  if (r != n) throw Error(Errc::DimensionMismatch, "inverse of singular matrix");
  QMat inv(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) inv(i, j) = aug(i, n + j);
  return inv;
}

// ---------------------------------------------------------------------------
// fraction-free determinant (Bareiss)

inline Int bareiss_det(IMat m) {
  assert(m.rows() == m.cols());
  int n = m.rows();
  if (n == 0) return 1;
  Int sign = 1, prev = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (m(k, k) == 0) {
      int piv = -1;
      for (int i = k + 1; i < n; ++i)
        if (m(i, k) != 0) {
          piv = i;
          break;
        }
      if (piv < 0) return 0;
      m.swap_rows(k, piv);
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i)
      for (int j = k + 1; j < n; ++j) {
        Int t = m(i, j) * m(k, k) - m(i, k) * m(k, j);
        mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
        m(i, j) = t;
      }
    prev = m(k, k);
  }
  return sign * m(n - 1, n - 1);
}

inline Rat det_q(const QMat& m) {
  assert(m.rows() == m.cols());
  // scale each row to integers, track the factor
  Rat factor = 1;
  IMat im(m.rows(), m.cols());
  for (int i = 0; i < m.rows(); ++i) {
    Int l = 1;
    for (int j = 0; j < m.cols(); ++j) l = lcm(l, den(m(i, j)));
    factor /= Rat(l);
    for (int j = 0; j < m.cols(); ++j) im(i, j) = num(m(i, j) * Rat(l));
  }
  return factor * Rat(bareiss_det(im));
}

// ---------------------------------------------------------------------------
// Hermite normal form (rows)
//
// Returns the matrix whose nonzero rows are the canonical basis of the row
// span: pivots positive, strictly to the right as rows descend, entries above
// a pivot reduced into [0, pivot). Zero rows dropped.

inline IMat hnf_rows_with_transform(const IMat& input, IMat* transform_out) {
  IMat m = input;
  int rows = m.rows(), cols = m.cols();
  IMat u = IMat::identity(rows);
  int r = 0;
  for (int c = 0; c < cols && r < rows; ++c) {
    // gcd-reduce column c below row r
    while (true) {
      int piv = -1;
      for (int i = r; i < rows; ++i)
        if (m(i, c) != 0 && (piv < 0 || abs(m(i, c)) < abs(m(piv, c)))) piv = i;
      if (piv < 0) break;
      m.swap_rows(r, piv);
      u.swap_rows(r, piv);
      bool clean = true;
      for (int i = r + 1; i < rows; ++i) {
        if (m(i, c) == 0) continue;
        Int q;
        // round-to-nearest quotient keeps entries small
        mpz_fdiv_q(q.get_mpz_t(), m(i, c).get_mpz_t(), m(r, c).get_mpz_t());
        Int rem = m(i, c) - q * m(r, c);
        if (rem * 2 > abs(m(r, c))) q += (m(r, c) > 0 ? 1 : -1);
        if (q != 0) {
          for (int j = 0; j < cols; ++j) m(i, j) -= q * m(r, j);
          for (int j = 0; j < rows; ++j) u(i, j) -= q * u(r, j);
        }
        if (m(i, c) != 0) clean = false;
      }
      if (clean) break;
    }
    if (m(r, c) == 0) continue;
    if (m(r, c) < 0) {
      for (int j = 0; j < cols; ++j) m(r, j) = -m(r, j);
      for (int j = 0; j < rows; ++j) u(r, j) = -u(r, j);
    }
    // reduce entries above the pivot
    for (int i = 0; i < r; ++i) {
      Int q;
      mpz_fdiv_q(q.get_mpz_t(), m(i, c).get_mpz_t(), m(r, c).get_mpz_t());
      if (q != 0) {
        for (int j = 0; j < cols; ++j) m(i, j) -= q * m(r, j);
        for (int j = 0; j < rows; ++j) u(i, j) -= q * u(r, j);
      }
    }
    ++r;
  }
  if (transform_out) *transform_out = u;
  // drop zero rows (the transform keeps full height on request)
  IMat out(r, cols);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < cols; ++j) out(i, j) = m(i, j);
  return out;
}

inline IMat hnf_rows(const IMat& m) { return hnf_rows_with_transform(m, nullptr); }

// Saturated basis of {x in Z^rows : x * m = 0}. Rows of the unimodular HNF
// transform matching zero rows of the HNF are exactly that kernel.
inline IMat left_kernel_int(const IMat& m) {
  IMat u;
  IMat h = hnf_rows_with_transform(m, &u);
  int rank = h.rows();
  int k = m.rows() - rank;
  IMat out(k, m.rows());
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < m.rows(); ++j) out(i, j) = u(rank + i, j);
  return hnf_rows(out);
}

// Solve x * h = v over Z for h in row-HNF with independent rows.
inline std::optional<IVec> solve_left_int_hnf(const IMat& h, const IVec& v) {
  assert(static_cast<int>(v.size()) == h.cols());
  IVec rem = v;
  IVec x(h.rows(), Int(0));
  for (int i = 0; i < h.rows(); ++i) {
    int c = 0;
    while (c < h.cols() && h(i, c) == 0) ++c;
    assert(c < h.cols());
    // rows below have zeros left of their pivots, so rem[c] must be cleared now
    Int q, r;
    mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), rem[c].get_mpz_t(), h(i, c).get_mpz_t());
    if (r != 0) return std::nullopt;
    if (q != 0) {
      x[i] = q;
      for (int j = 0; j < h.cols(); ++j) rem[j] -= q * h(i, j);
    }
  }
  if (!is_zero(rem)) return std::nullopt;
  return x;
}

// ---------------------------------------------------------------------------
// Smith normal form

// Invariant factors d1 | d2 | ... (nonnegative, zeros dropped).
inline std::vector<Int> snf_diag(IMat m) {
  int rows = m.rows(), cols = m.cols();
  int t = 0;
  int n = std::min(rows, cols);
  while (t < n) {
    // find a nonzero pivot in the remaining block
    int pi = -1, pj = -1;
    for (int i = t; i < rows && pi < 0; ++i)
      for (int j = t; j < cols; ++j)
        if (m(i, j) != 0) {
          pi = i;
          pj = j;
          break;
        }
    if (pi < 0) break;
    m.swap_rows(t, pi);
    m.swap_cols(t, pj);
    bool again = true;
    while (again) {
      again = false;
      for (int i = t + 1; i < rows; ++i) {
        if (m(i, t) == 0) continue;
        Int q;
        mpz_fdiv_q(q.get_mpz_t(), m(i, t).get_mpz_t(), m(t, t).get_mpz_t());
        for (int j = t; j < cols; ++j) m(i, j) -= q * m(t, j);
        if (m(i, t) != 0) {
          m.swap_rows(t, i);
          again = true;
        }
      }
      for (int j = t + 1; j < cols; ++j) {
        if (m(t, j) == 0) continue;
        Int q;
        mpz_fdiv_q(q.get_mpz_t(), m(t, j).get_mpz_t(), m(t, t).get_mpz_t());
        for (int i = t; i < rows; ++i) m(i, j) -= q * m(i, t);
        if (m(t, j) != 0) {
          m.swap_cols(t, j);
          again = true;
        }
      }
    }
    // divisibility: pivot must divide the rest of the block
    bool fixed = true;
    for (int i = t + 1; i < rows && fixed; ++i)
      for (int j = t + 1; j < cols; ++j) {
        if (m(i, j) % m(t, t) != 0) {
          for (int jj = t; jj < cols; ++jj) m(t, jj) += m(i, jj);
          fixed = false;
          break;
        }
      }
    if (fixed) ++t;
  }
  std::vector<Int> d;
  for (int i = 0; i < n; ++i) {
    if (i < rows && i < cols && m(i, i) != 0) d.push_back(abs(m(i, i)));
  }
  return d;
}

// Smith form with the column transform tracked: m * colops = staircase.
// Returns diag length r plus V (cols x cols unimodular) such that the row
// span of m equals the span of the first r rows of V^{-1} scaled by d_i.
// Used to split a lattice along the radical of a degenerate Gram.
inline std::vector<Int> snf_with_col_transform(IMat m, IMat& v_out) {
  int rows = m.rows(), cols = m.cols();
  IMat v = IMat::identity(cols);
  int t = 0;
  int n = std::min(rows, cols);
  while (t < n) {
    int pi = -1, pj = -1;
    for (int i = t; i < rows && pi < 0; ++i)
      for (int j = t; j < cols; ++j)
        if (m(i, j) != 0) {
          pi = i;
          pj = j;
          break;
        }
    if (pi < 0) break;
    m.swap_rows(t, pi);
    m.swap_cols(t, pj);
    v.swap_cols(t, pj);
    bool again = true;
    while (again) {
      again = false;
      for (int i = t + 1; i < rows; ++i) {
        if (m(i, t) == 0) continue;
        Int q;
        mpz_fdiv_q(q.get_mpz_t(), m(i, t).get_mpz_t(), m(t, t).get_mpz_t());
        for (int j = t; j < cols; ++j) m(i, j) -= q * m(t, j);
        if (m(i, t) != 0) {
          m.swap_rows(t, i);
          again = true;
        }
      }
      for (int j = t + 1; j < cols; ++j) {
        if (m(t, j) == 0) continue;
        Int q;
        mpz_fdiv_q(q.get_mpz_t(), m(t, j).get_mpz_t(), m(t, t).get_mpz_t());
        for (int i = 0; i < rows; ++i) m(i, j) -= q * m(i, t);
        for (int i = 0; i < cols; ++i) v(i, j) -= q * v(i, t);
        if (m(t, j) != 0) {
          m.swap_cols(t, j);
          v.swap_cols(t, j);
          again = true;
        }
      }
    }
    bool fixed = true;
    for (int i = t + 1; i < rows && fixed; ++i)
      for (int j = t + 1; j < cols; ++j)
        if (m(i, j) % m(t, t) != 0) {
          for (int jj = t; jj < cols; ++jj) m(t, jj) += m(i, jj);
          fixed = false;
          break;
        }
    if (fixed) ++t;
  }
  std::vector<Int> d;
  for (int i = 0; i < n; ++i)
    if (m(i, i) != 0) d.push_back(abs(m(i, i)));
  v_out = v;
  return d;
}

// ---------------------------------------------------------------------------
// signature of a symmetric rational form by congruence diagonalization

struct FormSignature {
  int positive = 0;
  int negative = 0;
  int zero = 0;
};

inline FormSignature signature_q(QMat g) {
  assert(g.rows() == g.cols());
  int n = g.rows();
  FormSignature s;
  std::vector<bool> done(n, false);
  for (int step = 0; step < n; ++step) {
    // pick a live index with nonzero diagonal
    int p = -1;
    for (int i = 0; i < n; ++i)
      if (!done[i] && g(i, i) != 0) {
        p = i;
        break;
      }
    if (p < 0) {
      // all live diagonal entries are zero; look for an off-diagonal entry
      int a = -1, b = -1;
      for (int i = 0; i < n && a < 0; ++i) {
        if (done[i]) continue;
        for (int j = i + 1; j < n; ++j)
          if (!done[j] && g(i, j) != 0) {
            a = i;
            b = j;
            break;
          }
      }
      if (a < 0) {
        for (int i = 0; i < n; ++i)
          if (!done[i]) ++s.zero;
        return s;
      }
      // congruence: row/col a += row/col b makes g(a,a) = 2 g(a,b) != 0
      for (int j = 0; j < n; ++j) g(a, j) += g(b, j);
      for (int i = 0; i < n; ++i) g(i, a) += g(i, b);
      p = a;
    }
    Rat piv = g(p, p);
    if (piv > 0)
      ++s.positive;
    else
      ++s.negative;
    done[p] = true;
    // two-sided congruence E g E^T with E = I - sum f_i e_i e_p^T
    QVec f(n, Rat(0));
    for (int i = 0; i < n; ++i)
      if (!done[i]) f[i] = g(i, p) / piv;
    for (int i = 0; i < n; ++i) {
      if (f[i] == 0) continue;
      for (int j = 0; j < n; ++j) g(i, j) -= f[i] * g(p, j);
    }
    for (int j = 0; j < n; ++j) {
      if (f[j] == 0) continue;
      for (int i = 0; i < n; ++i) g(i, j) -= f[j] * g(i, p);
    }
  }
  return s;
}

inline FormSignature signature_q(const IMat& g) { return signature_q(to_q(g)); }

}  // namespace doublesix
