// Exact linear algebra over Q: row reduction and phase-1 simplex.
#include <algorithm>

#include "bbs/polyring.hpp"

namespace bbs {

Rref rref(std::vector<std::vector<Rational>> m) {
  Rref out;
  if (m.empty()) return out;
  std::size_t cols = m[0].size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < m.size(); ++c) {
    std::size_t p = r;
    while (p < m.size() && m[p][c] == 0) ++p;
    if (p == m.size()) continue;
    std::swap(m[p], m[r]);
    Rational inv = 1 / m[r][c];
    for (std::size_t k = c; k < cols; ++k) m[r][k] *= inv;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i == r || m[i][c] == 0) continue;
      Rational f = m[i][c];
      for (std::size_t k = c; k < cols; ++k)
        if (m[r][k] != 0) m[i][k] -= f * m[r][k];
    }
    out.pivots.push_back(c);
    ++r;
  }
  m.resize(r);
  out.rows = std::move(m);
  return out;
}

std::optional<std::vector<Rational>> lp_feasible(const std::vector<std::vector<Rational>>& A,
                                                 const std::vector<Rational>& b, const std::vector<bool>& eq) {
  const std::size_t m = A.size();
  const std::size_t n = m ? A[0].size() : 0;
  if (m == 0) return std::vector<Rational>(n, 0);
  // Columns: x (n), one slack per inequality row, one artificial per row that needs it.
  std::vector<int> kind(m);  // 0: >= , 1: <= , 2: =
  std::vector<std::vector<Rational>> rows(m);
  std::vector<Rational> rhs(m);
  for (std::size_t i = 0; i < m; ++i) {
    rows[i] = A[i];
    rhs[i] = b[i];
    kind[i] = eq[i] ? 2 : 0;
    if (rhs[i] < 0) {
      for (auto& v : rows[i]) v = -v;
      rhs[i] = -rhs[i];
      if (kind[i] == 0) kind[i] = 1;
    }
  }
  std::size_t nslack = 0, nart = 0;
  for (auto k : kind) {
    if (k != 2) ++nslack;
    if (k != 1) ++nart;
  }
  const std::size_t cols = n + nslack + nart;
  std::vector<std::vector<Rational>> T(m, std::vector<Rational>(cols + 1, 0));
  std::vector<std::size_t> basis(m);
  std::size_t s = n, a = n + nslack;
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) T[i][j] = rows[i][j];
    T[i][cols] = rhs[i];
    if (kind[i] == 0) {
      T[i][s++] = -1;
      T[i][a] = 1;
      basis[i] = a++;
    } else if (kind[i] == 1) {
      T[i][s] = 1;
      basis[i] = s++;
    } else {
      T[i][a] = 1;
      basis[i] = a++;
    }
  }
  // Reduced costs for minimizing the sum of artificials.
  std::vector<Rational> z(cols + 1, 0);
  for (std::size_t j = n + nslack; j < cols; ++j) z[j] = 1;
  for (std::size_t i = 0; i < m; ++i)
    if (basis[i] >= n + nslack)
      for (std::size_t j = 0; j <= cols; ++j) z[j] -= T[i][j];
  while (true) {
    std::size_t enter = cols;
    for (std::size_t j = 0; j < cols; ++j)
      if (z[j] < 0) {
        enter = j;
        break;
      }
    if (enter == cols) break;
    std::size_t leave = m;
    Rational best;
    for (std::size_t i = 0; i < m; ++i) {
      if (T[i][enter] <= 0) continue;
      Rational r = T[i][cols] / T[i][enter];
      if (leave == m || r < best || (r == best && basis[i] < basis[leave])) {
        leave = i;
        best = r;
      }
    }
    if (leave == m) break;  // unbounded cannot happen in phase 1
    Rational inv = 1 / T[leave][enter];
    for (auto& v : T[leave])
      if (v != 0) v *= inv;
    for (std::size_t i = 0; i < m; ++i) {
      if (i == leave || T[i][enter] == 0) continue;
      Rational f = T[i][enter];
      for (std::size_t j = 0; j <= cols; ++j)
        if (T[leave][j] != 0) T[i][j] -= f * T[leave][j];
    }
    if (z[enter] != 0) {
      Rational f = z[enter];
      for (std::size_t j = 0; j <= cols; ++j)
        if (T[leave][j] != 0) z[j] -= f * T[leave][j];
    }
    basis[leave] = enter;
  }
  if (z[cols] != 0) return std::nullopt;  // -z[cols] is the residual artificial sum
  std::vector<Rational> x(n, 0);
  for (std::size_t i = 0; i < m; ++i)
    if (basis[i] < n) x[basis[i]] = T[i][cols];
  return x;
}

std::optional<std::vector<Rational>> lp_realizable(const std::vector<WeightConstraint>& constraints,
                                                   std::size_t arity) {
  std::vector<std::vector<Rational>> A;
  std::vector<Rational> b;
  for (auto& c : constraints) {
    for (auto& l : c.losers) {
      std::vector<Rational> row(arity);
      bool nonzero = false;
      for (std::size_t i = 0; i < arity; ++i) {
        row[i] = static_cast<long>(c.winner[i]) - static_cast<long>(l[i]);
        if (row[i] != 0) nonzero = true;
      }
      if (!nonzero) return std::nullopt;
      A.push_back(std::move(row));
      b.push_back(1);
    }
  }
  std::vector<bool> eq(A.size(), false);
  if (A.empty()) return std::vector<Rational>(arity, 0);
  return lp_feasible(A, b, eq);
}

}  // namespace bbs
