#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <optional>
#include <vector>

#include "qcech/error.hpp"

namespace qcech {

using Int = boost::multiprecision::cpp_int;

/// Dense integer matrix, row-major, exact arithmetic.
struct Mat {
  int rows = 0;
  int cols = 0;
  std::vector<Int> a;

  Mat() = default;
  Mat(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c) {}

  Int& operator()(int r, int c) { return a[static_cast<size_t>(r) * cols + c]; }
  const Int& operator()(int r, int c) const {
    return a[static_cast<size_t>(r) * cols + c];
  }

  static Mat identity(int n) {
    Mat m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  bool is_zero() const {
    for (const auto& x : a)
      if (x != 0) return false;
    return true;
  }

  bool operator==(const Mat& o) const {
    return rows == o.rows && cols == o.cols && a == o.a;
  }

  Mat transpose() const {
    Mat t(cols, rows);
    for (int r = 0; r < rows; ++r)
      for (int c = 0; c < cols; ++c) t(c, r) = (*this)(r, c);
    return t;
  }
};

inline Mat mat_mul(const Mat& x, const Mat& y) {
  if (x.cols != y.rows) fail(errc::incompatible_shapes, "mat_mul shape mismatch");
  Mat z(x.rows, y.cols);
  for (int r = 0; r < x.rows; ++r)
    for (int k = 0; k < x.cols; ++k) {
      const Int& xv = x(r, k);
      if (xv == 0) continue;
      for (int c = 0; c < y.cols; ++c) z(r, c) += xv * y(k, c);
    }
  return z;
}

inline std::vector<Int> mat_apply(const Mat& m, const std::vector<Int>& v) {
  if (m.cols != static_cast<int>(v.size()))
    fail(errc::incompatible_shapes, "mat_apply shape mismatch");
  std::vector<Int> out(m.rows);
  for (int r = 0; r < m.rows; ++r)
    for (int c = 0; c < m.cols; ++c) out[r] += m(r, c) * v[c];
  return out;
}

/// U * M * V = D with U, V unimodular; D diagonal, nonnegative,
/// d1 | d2 | ... Inverses of U and V are tracked alongside.
struct SnfResult {
  Mat u, v, d, uinv, vinv;

  Int diag(int i) const {
    return (i < d.rows && i < d.cols) ? d(i, i) : Int(0);
  }
  int rank() const {
    int r = 0;
    while (r < d.rows && r < d.cols && d(r, r) != 0) ++r;
    return r;
  }
};

namespace detail {

inline void row_swap(Mat& m, int i, int j) {
  for (int c = 0; c < m.cols; ++c) std::swap(m(i, c), m(j, c));
}
inline void col_swap(Mat& m, int i, int j) {
  for (int r = 0; r < m.rows; ++r) std::swap(m(r, i), m(r, j));
}
// row i += t * row j
inline void row_add(Mat& m, int i, int j, const Int& t) {
  for (int c = 0; c < m.cols; ++c) m(i, c) += t * m(j, c);
}
// col i += t * col j
inline void col_add(Mat& m, int i, int j, const Int& t) {
  for (int r = 0; r < m.rows; ++r) m(r, i) += t * m(r, j);
}
inline void row_neg(Mat& m, int i) {
  for (int c = 0; c < m.cols; ++c) m(i, c) = -m(i, c);
}
inline void col_neg(Mat& m, int i) {
  for (int r = 0; r < m.rows; ++r) m(r, i) = -m(r, i);
}

}  // namespace detail

inline SnfResult smith_normal_form(const Mat& m) {
  using namespace detail;
  SnfResult s;
  s.d = m;
  s.u = Mat::identity(m.rows);
  s.uinv = Mat::identity(m.rows);
  s.v = Mat::identity(m.cols);
  s.vinv = Mat::identity(m.cols);
  Mat& d = s.d;

  auto do_row_swap = [&](int i, int j) {
    if (i == j) return;
    row_swap(d, i, j);
    row_swap(s.u, i, j);
    col_swap(s.uinv, i, j);
  };
  auto do_col_swap = [&](int i, int j) {
    if (i == j) return;
    col_swap(d, i, j);
    col_swap(s.v, i, j);
    row_swap(s.vinv, i, j);
  };
  auto do_row_add = [&](int i, int j, const Int& t) {
    row_add(d, i, j, t);
    row_add(s.u, i, j, t);
    col_add(s.uinv, j, i, -t);
  };
  auto do_col_add = [&](int i, int j, const Int& t) {
    col_add(d, i, j, t);
    col_add(s.v, i, j, t);
    row_add(s.vinv, j, i, -t);
  };
  auto do_row_neg = [&](int i) {
    row_neg(d, i);
    row_neg(s.u, i);
    col_neg(s.uinv, i);
  };

  const int n = std::min(m.rows, m.cols);
  for (int k = 0; k < n; ++k) {
    // smallest absolute nonzero pivot, lowest row-major index tie-break;
    // re-selected every pass so swapped-in entries never serve as pivots
    auto select_pivot = [&]() {
      int pr = -1, pc = -1;
      for (int r = k; r < d.rows; ++r)
        for (int c = k; c < d.cols; ++c) {
          if (d(r, c) == 0) continue;
          if (pr < 0 || abs(d(r, c)) < abs(d(pr, pc))) {
            pr = r;
            pc = c;
          }
        }
      if (pr < 0) return false;
      do_row_swap(k, pr);
      do_col_swap(k, pc);
      return true;
    };
    if (!select_pivot()) break;

    // balanced quotient: |a - q*p| <= |p| / 2
    auto balanced = [](const Int& a, const Int& p) {
      Int q = a / p;
      Int r = a - q * p;
      if (2 * abs(r) > abs(p)) q += (r < 0) == (p < 0) ? 1 : -1;
      return q;
    };

    // one improving operation per pass, always against a fresh global
    // minimal pivot; balanced remainders keep the entries from exploding
    for (bool dirty = true; dirty;) {
      dirty = false;
      select_pivot();
      const Int p = d(k, k);
      for (int r = k + 1; r < d.rows && !dirty; ++r)
        if (d(r, k) != 0) {
          do_row_add(r, k, -balanced(d(r, k), p));
          dirty = true;
        }
      for (int c = k + 1; c < d.cols && !dirty; ++c)
        if (d(k, c) != 0) {
          do_col_add(c, k, -balanced(d(k, c), p));
          dirty = true;
        }
      if (dirty) continue;
      // pivot must divide the remaining submatrix
      for (int r = k + 1; r < d.rows && !dirty; ++r)
        for (int c = k + 1; c < d.cols && !dirty; ++c)
          if (d(r, c) % p != 0) {
            do_row_add(k, r, 1);
            dirty = true;
          }
    }
    if (d(k, k) < 0) do_row_neg(k);
  }
  return s;
}

/// Columns of the returned matrix span ker(m) over the integers.
inline Mat kernel_basis(const Mat& m) {
  SnfResult s = smith_normal_form(m);
  std::vector<int> zero_cols;
  for (int j = 0; j < m.cols; ++j)
    if (s.diag(j) == 0) zero_cols.push_back(j);
  Mat k(m.cols, static_cast<int>(zero_cols.size()));
  for (int idx = 0; idx < k.cols; ++idx)
    for (int r = 0; r < m.cols; ++r) k(r, idx) = s.v(r, zero_cols[idx]);
  return k;
}

/// Integer solution y of m*y = b, if one exists.
inline std::optional<std::vector<Int>> solve_integer(const Mat& m,
                                                     const std::vector<Int>& b) {
  if (static_cast<int>(b.size()) != m.rows)
    fail(errc::incompatible_shapes, "solve_integer shape mismatch");
  SnfResult s = smith_normal_form(m);
  std::vector<Int> ub = mat_apply(s.u, b);
  std::vector<Int> z(m.cols);
  for (int i = 0; i < m.rows; ++i) {
    Int di = s.diag(i);
    if (di == 0) {
      if (ub[i] != 0) return std::nullopt;
    } else if (i < m.cols) {
      if (ub[i] % di != 0) return std::nullopt;
      z[i] = ub[i] / di;
    }
  }
  return mat_apply(s.v, z);
}

/// Integer solution Y of m*Y = b (columnwise), if one exists.
inline std::optional<Mat> solve_integer_mat(const Mat& m, const Mat& b) {
  Mat y(m.cols, b.cols);
  for (int c = 0; c < b.cols; ++c) {
    std::vector<Int> col(b.rows);
    for (int r = 0; r < b.rows; ++r) col[r] = b(r, c);
    auto sol = solve_integer(m, col);
    if (!sol) return std::nullopt;
    for (int r = 0; r < m.cols; ++r) y(r, c) = (*sol)[r];
  }
  return y;
}

/// Horizontal concatenation [x | y].
inline Mat hcat(const Mat& x, const Mat& y) {
  if (x.rows != y.rows) fail(errc::incompatible_shapes, "hcat row mismatch");
  Mat z(x.rows, x.cols + y.cols);
  for (int r = 0; r < x.rows; ++r) {
    for (int c = 0; c < x.cols; ++c) z(r, c) = x(r, c);
    for (int c = 0; c < y.cols; ++c) z(r, x.cols + c) = y(r, c);
  }
  return z;
}

}  // namespace qcech
