#include "tauforge/linalg.hpp"

#include <cstdint>
#include <unordered_map>

#include "tauforge/errors.hpp"

namespace tauforge {

namespace {

int checked_dims(const PolyMatrix& m) {
  int n = static_cast<int>(m.size());
  for (const auto& row : m)
    if (static_cast<int>(row.size()) != n) throw StructuralError("matrix must be square");
  if (n == 0) return 0;
  int s = m[0][0].comps();
  for (const auto& row : m)
    for (const auto& e : row)
      if (e.comps() != s) throw StructuralError("matrix entries have mismatched component counts");
  return n;
}

// det over the rows in `mask`, using the last popcount(mask) columns;
// expansion runs along the first of those columns.
Poly det_minor(const PolyMatrix& m, std::uint32_t mask, int n, int s,
               std::unordered_map<std::uint32_t, Poly>& memo) {
  if (mask == 0) return Poly::constant(s, Rational(1));
  auto it = memo.find(mask);
  if (it != memo.end()) return it->second;
  int r = __builtin_popcount(mask);
  int col = n - r;
  Poly acc(s);
  int pos = 0;
  for (int row = 0; row < n; ++row) {
    if (!(mask & (1u << row))) continue;
    if (!m[row][col].is_zero()) {
      Poly sub = det_minor(m, mask & ~(1u << row), n, s, memo);
      Poly term = m[row][col] * sub;
      acc = (pos % 2 == 0) ? acc + term : acc - term;
    }
    ++pos;
  }
  memo.emplace(mask, acc);
  return acc;
}

Poly det_bareiss(PolyMatrix m, int n, int s) {
  int sign = 1;
  Poly prev = Poly::constant(s, Rational(1));
  for (int k = 0; k + 1 < n; ++k) {
    if (m[k][k].is_zero()) {
      int swap_row = -1;
      for (int r = k + 1; r < n; ++r)
        if (!m[r][k].is_zero()) {
          swap_row = r;
          break;
        }
      if (swap_row < 0) return Poly(s);
      std::swap(m[k], m[swap_row]);
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i) {
      for (int j = k + 1; j < n; ++j) {
        Poly num = m[i][j] * m[k][k] - m[i][k] * m[k][j];
        m[i][j] = poly_divexact(num, prev);
      }
      m[i][k] = Poly(s);
    }
    prev = m[k][k];
  }
  Poly d = m[n - 1][n - 1];
  return sign < 0 ? -d : d;
}

}  // namespace

Poly det_poly(const PolyMatrix& m) {
  int n = checked_dims(m);
  if (n == 0) return Poly::constant(1, Rational(1));
  int s = m[0][0].comps();
  if (n <= 6) {
    std::unordered_map<std::uint32_t, Poly> memo;
    return det_minor(m, (1u << n) - 1, n, s, memo);
  }
  return det_bareiss(m, n, s);
}

Poly det_poly_cofactor(const PolyMatrix& m) {
  int n = checked_dims(m);
  if (n == 0) return Poly::constant(1, Rational(1));
  int s = m[0][0].comps();
  if (n == 1) return m[0][0];
  Poly acc(s);
  for (int j = 0; j < n; ++j) {
    if (m[0][j].is_zero()) continue;
    PolyMatrix sub(n - 1, std::vector<Poly>());
    for (int i = 1; i < n; ++i)
      for (int jj = 0; jj < n; ++jj)
        if (jj != j) sub[i - 1].push_back(m[i][jj]);
    Poly term = m[0][j] * det_poly_cofactor(sub);
    acc = (j % 2 == 0) ? acc + term : acc - term;
  }
  return acc;
}

namespace {

// Pf over the index set `mask`: expand along the lowest surviving index,
// alternating signs over the remaining partners in increasing order.
Poly pf_minor(const PolyMatrix& m, std::uint32_t mask, int s,
              std::unordered_map<std::uint32_t, Poly>& memo) {
  if (mask == 0) return Poly::constant(s, Rational(1));
  auto it = memo.find(mask);
  if (it != memo.end()) return it->second;
  int i0 = __builtin_ctz(mask);
  std::uint32_t rest = mask & ~(1u << i0);
  Poly acc(s);
  int pos = 0;
  for (int j = i0 + 1; j < 32; ++j) {
    if (!(rest & (1u << j))) continue;
    if (!m[i0][j].is_zero()) {
      Poly sub = pf_minor(m, rest & ~(1u << j), s, memo);
      Poly term = m[i0][j] * sub;
      acc = (pos % 2 == 0) ? acc + term : acc - term;
    }
    ++pos;
  }
  memo.emplace(mask, acc);
  return acc;
}

}  // namespace

Poly pfaffian_poly(const PolyMatrix& m) {
  int n = checked_dims(m);
  if (n == 0) return Poly::constant(1, Rational(1));
  if (n % 2 != 0) throw StructuralError("pfaffian: matrix dimension must be even");
  if (n > 30) throw StructuralError("pfaffian: dimension too large");
  int s = m[0][0].comps();
  for (int i = 0; i < n; ++i) {
    if (!m[i][i].is_zero()) throw StructuralError("pfaffian: matrix has nonzero diagonal");
    for (int j = i + 1; j < n; ++j)
      if (m[i][j] != -m[j][i]) throw StructuralError("pfaffian: matrix is not skew-symmetric");
  }
  std::unordered_map<std::uint32_t, Poly> memo;
  return pf_minor(m, (1u << n) - 1, s, memo);
}

}  // namespace tauforge
