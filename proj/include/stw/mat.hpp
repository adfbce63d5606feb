#pragma once

#include <algorithm>
#include <cassert>
#include <cstdint>
#include <optional>
#include <vector>

#include "stw/field.hpp"

namespace stw {

using Vec = std::vector<uint32_t>;

// Dense row-major matrix over GF(p).  Row-vector convention throughout:
// vectors act on the left, v -> v*M.
struct Mat {
  uint32_t p = 2;
  std::size_t rows = 0, cols = 0;
  std::vector<uint32_t> a;

  Mat() = default;
  Mat(uint32_t p_, std::size_t r, std::size_t c) : p(p_), rows(r), cols(c), a(r * c, 0) {}

  uint32_t& at(std::size_t i, std::size_t j) { return a[i * cols + j]; }
  uint32_t at(std::size_t i, std::size_t j) const { return a[i * cols + j]; }
  const uint32_t* row_ptr(std::size_t i) const { return a.data() + i * cols; }
  uint32_t* row_ptr(std::size_t i) { return a.data() + i * cols; }

  Vec row(std::size_t i) const { return Vec(row_ptr(i), row_ptr(i) + cols); }
  void set_row(std::size_t i, const Vec& v) {
    assert(v.size() == cols);
    std::copy(v.begin(), v.end(), row_ptr(i));
  }

  bool is_zero() const {
    for (uint32_t x : a)
      if (x) return false;
    return true;
  }
  bool operator==(const Mat& o) const {
    return p == o.p && rows == o.rows && cols == o.cols && a == o.a;
  }
};

inline Mat mat_identity(uint32_t p, std::size_t n) {
  Mat m(p, n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

inline Mat mat_from_rows(uint32_t p, const std::vector<Vec>& rows, std::size_t cols) {
  Mat m(p, rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) m.set_row(i, rows[i]);
  return m;
}

inline Mat transpose(const Mat& m) {
  Mat t(m.p, m.cols, m.rows);
  for (std::size_t i = 0; i < m.rows; ++i)
    for (std::size_t j = 0; j < m.cols; ++j) t.at(j, i) = m.at(i, j);
  return t;
}

inline Mat mat_add(const Mat& x, const Mat& y) {
  assert(x.p == y.p && x.rows == y.rows && x.cols == y.cols);
  Field f(x.p);
  Mat r = x;
  for (std::size_t i = 0; i < r.a.size(); ++i) r.a[i] = f.add(r.a[i], y.a[i]);
  return r;
}

inline Mat mat_sub(const Mat& x, const Mat& y) {
  assert(x.p == y.p && x.rows == y.rows && x.cols == y.cols);
  Field f(x.p);
  Mat r = x;
  for (std::size_t i = 0; i < r.a.size(); ++i) r.a[i] = f.sub(r.a[i], y.a[i]);
  return r;
}

inline Mat mat_scale(const Mat& x, uint32_t c) {
  Field f(x.p);
  Mat r = x;
  for (auto& v : r.a) v = f.mul(v, c);
  return r;
}

// x*y with delayed reduction when (p-1)^2 * inner fits in uint64.
inline Mat mat_mul(const Mat& x, const Mat& y) {
  assert(x.p == y.p && x.cols == y.rows);
  const uint64_t p = x.p;
  Mat r(x.p, x.rows, y.cols);
  const uint64_t per = (p - 1) * (p - 1);
  const bool lazy = per == 0 || x.cols == 0 || per <= (~0ull - per) / (x.cols ? x.cols : 1);
  for (std::size_t i = 0; i < x.rows; ++i) {
    const uint32_t* xi = x.row_ptr(i);
    uint32_t* ri = r.row_ptr(i);
    if (lazy) {
      std::vector<uint64_t> acc(y.cols, 0);
      for (std::size_t k = 0; k < x.cols; ++k) {
        uint64_t xv = xi[k];
        if (!xv) continue;
        const uint32_t* yk = y.row_ptr(k);
        for (std::size_t j = 0; j < y.cols; ++j) acc[j] += xv * yk[j];
      }
      for (std::size_t j = 0; j < y.cols; ++j) ri[j] = (uint32_t)(acc[j] % p);
    } else {
      for (std::size_t k = 0; k < x.cols; ++k) {
        uint64_t xv = xi[k];
        if (!xv) continue;
        const uint32_t* yk = y.row_ptr(k);
        for (std::size_t j = 0; j < y.cols; ++j) ri[j] = (uint32_t)((ri[j] + xv * yk[j] % p) % p);
      }
    }
  }
  return r;
}

inline Vec vec_mat(const Vec& v, const Mat& m) {
  assert(v.size() == m.rows);
  Mat x(m.p, 1, v.size());
  x.set_row(0, v);
  return mat_mul(x, m).row(0);
}

inline Mat mat_pow(Mat m, uint64_t e) {
  assert(m.rows == m.cols);
  Mat r = mat_identity(m.p, m.rows);
  while (e) {
    if (e & 1) r = mat_mul(r, m);
    m = mat_mul(m, m);
    e >>= 1;
  }
  return r;
}

inline Mat hstack(const Mat& x, const Mat& y) {
  assert(x.p == y.p && x.rows == y.rows);
  Mat r(x.p, x.rows, x.cols + y.cols);
  for (std::size_t i = 0; i < x.rows; ++i) {
    std::copy(x.row_ptr(i), x.row_ptr(i) + x.cols, r.row_ptr(i));
    std::copy(y.row_ptr(i), y.row_ptr(i) + y.cols, r.row_ptr(i) + x.cols);
  }
  return r;
}

inline Mat vstack(const Mat& x, const Mat& y) {
  assert(x.p == y.p && x.cols == y.cols);
  Mat r(x.p, x.rows + y.rows, x.cols);
  std::copy(x.a.begin(), x.a.end(), r.a.begin());
  std::copy(y.a.begin(), y.a.end(), r.a.begin() + x.a.size());
  return r;
}

inline Mat block_diag(const Mat& x, const Mat& y) {
  assert(x.p == y.p);
  Mat r(x.p, x.rows + y.rows, x.cols + y.cols);
  for (std::size_t i = 0; i < x.rows; ++i)
    std::copy(x.row_ptr(i), x.row_ptr(i) + x.cols, r.row_ptr(i));
  for (std::size_t i = 0; i < y.rows; ++i)
    std::copy(y.row_ptr(i), y.row_ptr(i) + y.cols, r.row_ptr(x.rows + i) + x.cols);
  return r;
}

inline Mat select_cols(const Mat& m, const std::vector<std::size_t>& cols) {
  Mat r(m.p, m.rows, cols.size());
  for (std::size_t i = 0; i < m.rows; ++i)
    for (std::size_t j = 0; j < cols.size(); ++j) r.at(i, j) = m.at(i, cols[j]);
  return r;
}

// Reduced row echelon form.  Pivot selection is first nonzero row per column,
// scanning top-down, so the result is canonical for a given row order.
struct Ech {
  Mat r;
  std::vector<std::size_t> pivots;
  std::size_t rank() const { return pivots.size(); }
};

inline Ech rref(Mat m) {
  Field f(m.p);
  Ech e;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols && r < m.rows; ++c) {
    std::size_t sel = r;
    while (sel < m.rows && m.at(sel, c) == 0) ++sel;
    if (sel == m.rows) continue;
    if (sel != r)
      for (std::size_t j = 0; j < m.cols; ++j) std::swap(m.at(sel, j), m.at(r, j));
    uint32_t iv = f.inv(m.at(r, c));
    if (iv != 1)
      for (std::size_t j = c; j < m.cols; ++j) m.at(r, j) = f.mul(m.at(r, j), iv);
    for (std::size_t i = 0; i < m.rows; ++i) {
      if (i == r) continue;
      uint32_t fac = m.at(i, c);
      if (!fac) continue;
      const uint32_t* pr = m.row_ptr(r);
      uint32_t* pi = m.row_ptr(i);
      uint64_t fp = fac, p = m.p;
      for (std::size_t j = c; j < m.cols; ++j)
        pi[j] = (uint32_t)((pi[j] + (p - 1) * fp % p * pr[j]) % p);
    }
    e.pivots.push_back(c);
    ++r;
  }
  m.a.resize(r * m.cols);
  m.rows = r;
  e.r = std::move(m);
  return e;
}

inline std::size_t rank(const Mat& m) { return rref(m).rank(); }

// Reduce v against an echelon basis; returns the residual.
inline Vec ech_reduce(const Ech& e, Vec v) {
  Field f(e.r.p);
  for (std::size_t i = 0; i < e.pivots.size(); ++i) {
    uint32_t c = v[e.pivots[i]];
    if (!c) continue;
    const uint32_t* ri = e.r.row_ptr(i);
    for (std::size_t j = e.pivots[i]; j < v.size(); ++j) v[j] = f.sub(v[j], f.mul(c, ri[j]));
  }
  return v;
}

inline bool ech_contains(const Ech& e, const Vec& v) {
  Vec r = ech_reduce(e, v);
  return std::all_of(r.begin(), r.end(), [](uint32_t x) { return x == 0; });
}

// Incrementally grown echelon span; add() returns true when v enlarged it.
struct Span {
  uint32_t p;
  std::size_t cols;
  std::vector<Vec> rows;             // echelon rows (pivot normalized to 1)
  std::vector<std::size_t> pivots;

  Span(uint32_t p_, std::size_t cols_) : p(p_), cols(cols_) {}
  std::size_t dim() const { return rows.size(); }

  Vec reduce(Vec v) const {
    Field f(p);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      uint32_t c = v[pivots[i]];
      if (!c) continue;
      for (std::size_t j = pivots[i]; j < cols; ++j) v[j] = f.sub(v[j], f.mul(c, rows[i][j]));
    }
    return v;
  }

  bool contains(const Vec& v) const {
    Vec r = reduce(v);
    return std::all_of(r.begin(), r.end(), [](uint32_t x) { return x == 0; });
  }

  bool add(Vec v) {
    Field f(p);
    v = reduce(std::move(v));
    std::size_t piv = cols;
    for (std::size_t j = 0; j < cols; ++j)
      if (v[j]) { piv = j; break; }
    if (piv == cols) return false;
    uint32_t iv = f.inv(v[piv]);
    if (iv != 1)
      for (std::size_t j = piv; j < cols; ++j) v[j] = f.mul(v[j], iv);
    // keep rows sorted by pivot and back-eliminate
    for (auto& r : rows) {
      uint32_t c = r[piv];
      if (!c) continue;
      for (std::size_t j = piv; j < cols; ++j) r[j] = f.sub(r[j], f.mul(c, v[j]));
    }
    std::size_t pos = 0;
    while (pos < pivots.size() && pivots[pos] < piv) ++pos;
    rows.insert(rows.begin() + pos, std::move(v));
    pivots.insert(pivots.begin() + pos, piv);
    return true;
  }

  Mat to_mat() const { return mat_from_rows(p, rows, cols); }
};

// Canonical basis (RREF rows) of the left kernel {v : v*m = 0}.
inline Mat left_kernel(const Mat& m) {
  Mat aug = hstack(m, mat_identity(m.p, m.rows));
  Field f(m.p);
  // eliminate using pivots in the first m.cols columns only
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols && r < aug.rows; ++c) {
    std::size_t sel = r;
    while (sel < aug.rows && aug.at(sel, c) == 0) ++sel;
    if (sel == aug.rows) continue;
    if (sel != r)
      for (std::size_t j = 0; j < aug.cols; ++j) std::swap(aug.at(sel, j), aug.at(r, j));
    uint32_t iv = f.inv(aug.at(r, c));
    if (iv != 1)
      for (std::size_t j = 0; j < aug.cols; ++j) aug.at(r, j) = f.mul(aug.at(r, j), iv);
    for (std::size_t i = 0; i < aug.rows; ++i) {
      if (i == r) continue;
      uint32_t fac = aug.at(i, c);
      if (!fac) continue;
      const uint32_t* pr = aug.row_ptr(r);
      uint32_t* pi = aug.row_ptr(i);
      uint64_t fp = fac, p = m.p;
      for (std::size_t j = 0; j < aug.cols; ++j)
        pi[j] = (uint32_t)((pi[j] + (p - 1) * fp % p * pr[j]) % p);
    }
    ++r;
  }
  Mat ker(m.p, aug.rows - r, m.rows);
  for (std::size_t i = r; i < aug.rows; ++i)
    for (std::size_t j = 0; j < m.rows; ++j) ker.at(i - r, j) = aug.at(i, m.cols + j);
  return rref(std::move(ker)).r;
}

// Row-solver for X*A = B: the elimination record of A lets each row of B be
// expressed as a combination of rows of A.
struct Solver {
  Mat red;   // eliminated rows of A
  Mat expr;  // red = expr * A
  std::vector<std::size_t> pivots;

  explicit Solver(const Mat& a) {
    Mat aug = hstack(a, mat_identity(a.p, a.rows));
    Ech e = rref(std::move(aug));
    std::size_t rk = 0;
    while (rk < e.pivots.size() && e.pivots[rk] < a.cols) ++rk;
    red = Mat(a.p, rk, a.cols);
    expr = Mat(a.p, rk, a.rows);
    pivots.assign(e.pivots.begin(), e.pivots.begin() + rk);
    for (std::size_t i = 0; i < rk; ++i) {
      for (std::size_t j = 0; j < a.cols; ++j) red.at(i, j) = e.r.at(i, j);
      for (std::size_t j = 0; j < a.rows; ++j) expr.at(i, j) = e.r.at(i, a.cols + j);
    }
  }

  // one row: x with x*A = b, if consistent
  std::optional<Vec> solve(const Vec& b) const {
    Field f(red.p);
    Vec v = b, x(expr.cols, 0);
    for (std::size_t i = 0; i < pivots.size(); ++i) {
      uint32_t c = v[pivots[i]];
      if (!c) continue;
      for (std::size_t j = 0; j < red.cols; ++j) v[j] = f.sub(v[j], f.mul(c, red.at(i, j)));
      for (std::size_t j = 0; j < expr.cols; ++j) x[j] = f.add(x[j], f.mul(c, expr.at(i, j)));
    }
    for (uint32_t t : v)
      if (t) return std::nullopt;
    return x;
  }
};

// X with X*A = B.
inline std::optional<Mat> solve_left(const Mat& a, const Mat& b) {
  assert(a.p == b.p && a.cols == b.cols);
  Solver s(a);
  Mat x(a.p, b.rows, a.rows);
  for (std::size_t i = 0; i < b.rows; ++i) {
    auto r = s.solve(b.row(i));
    if (!r) return std::nullopt;
    x.set_row(i, *r);
  }
  return x;
}

inline std::optional<Mat> inverse(const Mat& m) {
  if (m.rows != m.cols) return std::nullopt;
  return solve_left(m, mat_identity(m.p, m.rows));
}

inline bool is_invertible(const Mat& m) {
  return m.rows == m.cols && rank(m) == m.rows;
}

inline Vec flatten(const Mat& m) { return m.a; }

inline Mat unflatten(uint32_t p, std::size_t rows, std::size_t cols, const Vec& v) {
  Mat m(p, rows, cols);
  assert(v.size() == m.a.size());
  m.a = v;
  return m;
}

}  // namespace stw
