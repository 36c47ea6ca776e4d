#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <numeric>
#include <utility>
#include <vector>

#include "iwalink/bigint.hpp"
#include "iwalink/error.hpp"
#include "iwalink/laurent.hpp"

namespace iwalink {

using BigMatrix = std::vector<std::vector<Integer>>;

/// Determinant by fraction-free (Bareiss) elimination.
inline Integer bareiss_determinant(BigMatrix a) {
  const std::size_t n = a.size();
  if (n == 0) return 1;
  for (const auto& row : a) {
    if (row.size() != n) throw Error(ErrorKind::DimensionMismatch, "determinant of non-square matrix");
  }
  Integer sign = 1, prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k] == 0) {
      std::size_t piv = k + 1;
      while (piv < n && a[piv][k] == 0) ++piv;
      if (piv == n) return 0;
      std::swap(a[k], a[piv]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
      }
      a[i][k] = 0;
    }
    prev = a[k][k];
  }
  return sign * a[n - 1][n - 1];
}

/// Diagonal form D = P * A * Q with Q unimodular (P is not tracked).
struct Diagonalization {
  std::vector<Integer> diagonal;  // length min(rows, cols); zeros allowed
  BigMatrix q;                    // cols x cols
};

inline Diagonalization diagonalize(const IntMatrix& rows, std::size_t cols) {
  const std::size_t m = rows.size();
  BigMatrix a(m, std::vector<Integer>(cols));
  for (std::size_t i = 0; i < m; ++i) {
    if (rows[i].size() != cols) throw Error(ErrorKind::DimensionMismatch, "row length differs from dimension");
    for (std::size_t j = 0; j < cols; ++j) a[i][j] = Integer(static_cast<long>(rows[i][j]));
  }
  BigMatrix q(cols, std::vector<Integer>(cols));
  for (std::size_t j = 0; j < cols; ++j) q[j][j] = 1;

  auto col_op = [&](std::size_t dst, std::size_t src, const Integer& f) {  // col dst -= f * col src
    for (std::size_t i = 0; i < m; ++i) a[i][dst] -= f * a[i][src];
    for (std::size_t i = 0; i < cols; ++i) q[i][dst] -= f * q[i][src];
  };
  auto col_swap = [&](std::size_t x, std::size_t y) {
    for (std::size_t i = 0; i < m; ++i) std::swap(a[i][x], a[i][y]);
    for (std::size_t i = 0; i < cols; ++i) std::swap(q[i][x], q[i][y]);
  };

  const std::size_t steps = std::min(m, cols);
  for (std::size_t t = 0; t < steps; ++t) {
    // pick the smallest nonzero entry in the remaining block as pivot
    while (true) {
      std::size_t pi = m, pj = cols;
      for (std::size_t i = t; i < m; ++i) {
        for (std::size_t j = t; j < cols; ++j) {
          if (a[i][j] != 0 && (pi == m || abs(a[i][j]) < abs(a[pi][pj]))) {
            pi = i;
            pj = j;
          }
        }
      }
      if (pi == m) break;
      std::swap(a[t], a[pi]);
      col_swap(t, pj);
      bool clean = true;
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (a[t][j] == 0) continue;
        Integer f;
        mpz_fdiv_q(f.get_mpz_t(), a[t][j].get_mpz_t(), a[t][t].get_mpz_t());
        col_op(j, t, f);
        if (a[t][j] != 0) clean = false;
      }
      for (std::size_t i = t + 1; i < m; ++i) {
        if (a[i][t] == 0) continue;
        Integer f;
        mpz_fdiv_q(f.get_mpz_t(), a[i][t].get_mpz_t(), a[t][t].get_mpz_t());
        for (std::size_t j = t; j < cols; ++j) a[i][j] -= f * a[t][j];
        if (a[i][t] != 0) clean = false;
      }
      if (clean) break;
    }
  }
  Diagonalization out;
  out.q = std::move(q);
  for (std::size_t t = 0; t < steps; ++t) out.diagonal.push_back(a[t][t]);
  return out;
}

/// Rank of the integer lattice spanned by the rows.
inline std::size_t lattice_rank(const IntMatrix& rows, std::size_t cols) {
  if (rows.empty()) return 0;
  const auto dg = diagonalize(rows, cols);
  return static_cast<std::size_t>(std::count_if(dg.diagonal.begin(), dg.diagonal.end(), [](const Integer& x) { return x != 0; }));
}

/// Rank over F_p.
inline std::size_t rank_mod_p(const IntMatrix& rows, std::int64_t p) {
  if (rows.empty()) return 0;
  IntMatrix a = rows;
  const std::size_t m = a.size(), n = a.front().size();
  for (auto& r : a) {
    for (auto& x : r) x = mod_floor(x, p);
  }
  std::size_t rank = 0;
  for (std::size_t col = 0; col < n && rank < m; ++col) {
    std::size_t piv = rank;
    while (piv < m && a[piv][col] == 0) ++piv;
    if (piv == m) continue;
    std::swap(a[rank], a[piv]);
    const std::int64_t inv = detail::mod_inverse(a[rank][col], p);
    for (auto& x : a[rank]) x = mod_floor(x * inv, p);
    for (std::size_t i = 0; i < m; ++i) {
      if (i == rank || a[i][col] == 0) continue;
      const std::int64_t f = a[i][col];
      for (std::size_t j = 0; j < n; ++j) a[i][j] = mod_floor(a[i][j] - f * a[rank][j], p);
    }
    ++rank;
  }
  return rank;
}

/// Unimodular U with U * e = e_1, for a primitive vector e.
inline IntMatrix unimodular_to_first_basis(const std::vector<std::int64_t>& e) {
  const std::size_t d = e.size();
  IntMatrix u(d, std::vector<std::int64_t>(d, 0));
  for (std::size_t i = 0; i < d; ++i) u[i][i] = 1;
  std::vector<std::int64_t> v = e;
  auto row_op = [&](std::size_t dst, std::size_t src, std::int64_t f) {
    v[dst] -= f * v[src];
    for (std::size_t j = 0; j < d; ++j) u[dst][j] -= f * u[src][j];
  };
  auto row_swap = [&](std::size_t x, std::size_t y) {
    std::swap(v[x], v[y]);
    std::swap(u[x], u[y]);
  };
  // Euclid on entries until only v[0] is nonzero
  while (true) {
    std::size_t best = d;
    for (std::size_t i = 0; i < d; ++i) {
      if (v[i] != 0 && (best == d || std::llabs(v[i]) < std::llabs(v[best]))) best = i;
    }
    if (best == d) throw Error(ErrorKind::InvalidArgument, "zero direction vector");
    row_swap(0, best);
    bool done = true;
    for (std::size_t i = 1; i < d; ++i) {
      if (v[i] == 0) continue;
      row_op(i, 0, v[i] / v[0]);
      if (v[i] != 0) done = false;
    }
    if (done) break;
  }
  if (v[0] == -1) {
    v[0] = 1;
    for (auto& x : u[0]) x = -x;
  }
  if (v[0] != 1) throw Error(ErrorKind::InvalidArgument, "direction vector is not primitive");
  return u;
}

inline IntMatrix transpose(const IntMatrix& a) {
  if (a.empty()) return {};
  IntMatrix t(a.front().size(), std::vector<std::int64_t>(a.size()));
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < a[i].size(); ++j) t[j][i] = a[i][j];
  }
  return t;
}

/// Inverse of a unimodular integer matrix (Gauss-Jordan over the rationals).
inline IntMatrix unimodular_inverse(const IntMatrix& a) {
  const std::size_t n = a.size();
  std::vector<std::vector<Rational>> m(n, std::vector<Rational>(2 * n));
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i].size() != n) throw Error(ErrorKind::DimensionMismatch, "inverse of non-square matrix");
    for (std::size_t j = 0; j < n; ++j) m[i][j] = Rational(static_cast<long>(a[i][j]));
    m[i][n + i] = 1;
  }
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && m[piv][c] == 0) ++piv;
    if (piv == n) throw Error(ErrorKind::InvalidArgument, "singular matrix");
    std::swap(m[c], m[piv]);
    const Rational inv = 1 / m[c][c];
    for (auto& x : m[c]) x *= inv;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c || m[i][c] == 0) continue;
      const Rational f = m[i][c];
      for (std::size_t j = 0; j < 2 * n; ++j) m[i][j] -= f * m[c][j];
    }
  }
  IntMatrix out(n, std::vector<std::int64_t>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const Rational& x = m[i][n + j];
      if (x.get_den() != 1) throw Error(ErrorKind::InvalidArgument, "matrix is not unimodular");
      out[i][j] = x.get_num().get_si();
    }
  }
  return out;
}

}  // namespace iwalink
