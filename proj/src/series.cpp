#include "tauforge/series.hpp"

#include "tauforge/errors.hpp"
#include "tauforge/linalg.hpp"

namespace tauforge {

const Poly& SeriesTable::at(int k) const {
  if (k < 0) return zero;
  if (k > cutoff()) throw StructuralError("SeriesTable: index beyond cutoff");
  return c[static_cast<std::size_t>(k)];
}

SeriesTable series_table(SeriesKind kind, int cutoff, int comps, int comp) {
  if (cutoff < 0) throw StructuralError("series_table: negative cutoff");
  if (comp < 1 || comp > comps) throw StructuralError("series_table: component out of range");
  SeriesTable t;
  t.kind = kind;
  t.comps = comps;
  t.comp = comp;
  t.zero = Poly::zero(comps);
  t.c.assign(static_cast<std::size_t>(cutoff) + 1, Poly::zero(comps));
  t.c[0] = Poly::constant(comps, Rational(1));

  if (kind == SeriesKind::Q) {
    // defining product E(u) H(u)
    SeriesTable h = series_table(SeriesKind::H, cutoff, comps, comp);
    SeriesTable e = series_table(SeriesKind::E, cutoff, comps, comp);
    for (int k = 1; k <= cutoff; ++k) {
      Poly acc(comps);
      for (int i = 0; i <= k; ++i) acc += e.c[i] * h.c[k - i];
      t.c[static_cast<std::size_t>(k)] = acc;
    }
    return t;
  }

  // Newton-style recurrences: k c_k = sum_n w_n p_n c_{k-n} with
  //   H: w_n = 1,  E: w_n = (-1)^{n-1},  Sexp: w_n = 1 for odd n else 0.
  for (int k = 1; k <= cutoff; ++k) {
    Poly acc(comps);
    for (int n = 1; n <= k; ++n) {
      Rational w(1);
      if (kind == SeriesKind::E && n % 2 == 0) w = Rational(-1);
      if (kind == SeriesKind::Sexp && n % 2 == 0) continue;
      acc += Poly::variable(comps, comp, n) * t.c[static_cast<std::size_t>(k - n)].scaled(w);
    }
    t.c[static_cast<std::size_t>(k)] = acc.scaled(Rational(1, k));
  }
  return t;
}

Poly elementary_schur(int k, int comps, int comp) {
  if (k < 0) return Poly::zero(comps);
  return series_table(SeriesKind::H, k, comps, comp).c[static_cast<std::size_t>(k)];
}

Poly jacobi_trudi(const Partition& lambda) {
  int l = lambda.size();
  if (l == 0) return Poly::constant(1, Rational(1));
  SeriesTable h = series_table(SeriesKind::H, lambda.parts[0] + l - 1);
  PolyMatrix m(static_cast<std::size_t>(l), std::vector<Poly>(static_cast<std::size_t>(l)));
  for (int i = 0; i < l; ++i)
    for (int j = 0; j < l; ++j) m[i][j] = h.at(lambda.parts[i] + (j + 1) - (i + 1));
  return det_poly(m);
}

std::vector<Rational> schur_scalars(const ShiftVector& c, int upto) {
  std::vector<Rational> s(static_cast<std::size_t>(upto) + 1, Rational(0));
  s[0] = Rational(1);
  for (int k = 1; k <= upto; ++k) {
    Rational acc(0);
    for (auto& [n, cn] : c.c)
      if (n <= k) acc += Rational(n) * cn * s[static_cast<std::size_t>(k - n)];
    s[static_cast<std::size_t>(k)] = acc / Rational(k);
  }
  return s;
}

Poly shifted_series_coeff(const SeriesTable& tbl, const ShiftVector& c, int k) {
  if (k < 0) return Poly::zero(tbl.comps);
  std::vector<Rational> s = schur_scalars(c, k);
  Poly acc(tbl.comps);
  for (int i = 0; i <= k; ++i) acc += tbl.at(k - i).scaled(s[static_cast<std::size_t>(i)]);
  return acc;
}

Poly shifted_elementary_schur(int k, const ShiftVector& c, int comps, int comp) {
  if (k < 0) return Poly::zero(comps);
  SeriesTable h = series_table(SeriesKind::H, k, comps, comp);
  return shifted_series_coeff(h, c, k);
}

Poly q_pair(int a, int b) {
  if (a < 0 || b < 0) throw InputError("q_pair: arguments must be non-negative");
  if (a == b) return Poly::zero(1);
  if (a < b) return -q_pair(b, a);
  SeriesTable q = series_table(SeriesKind::Q, a + b);
  Poly acc = q.at(a) * q.at(b);
  for (int i = 1; i <= b; ++i) {
    Poly term = (q.at(a + i) * q.at(b - i)).scaled(Rational(2));
    acc = (i % 2 == 0) ? acc + term : acc - term;
  }
  return acc;
}

Poly q_schur(const StrictPartition& lambda) {
  int l = lambda.size();
  if (l == 0) return Poly::constant(1, Rational(1));
  if (l % 2 == 0) {
    PolyMatrix m(static_cast<std::size_t>(l), std::vector<Poly>(static_cast<std::size_t>(l)));
    for (int i = 0; i < l; ++i)
      for (int j = 0; j < l; ++j)
        m[i][j] = (i == j) ? Poly::zero(1) : q_pair(lambda.parts[i], lambda.parts[j]);
    return pfaffian_poly(m);
  }
  SeriesTable q = series_table(SeriesKind::Q, lambda.parts.empty() ? 0 : lambda.parts[0]);
  Poly acc(1);
  for (int k = 0; k < l; ++k) {
    std::vector<int> rest;
    for (int i = 0; i < l; ++i)
      if (i != k) rest.push_back(lambda.parts[i]);
    Poly term = q.at(lambda.parts[k]) * q_schur(StrictPartition(rest));
    acc = (k % 2 == 0) ? acc + term : acc - term;
  }
  return acc;
}

Poly adjoint_apply(const Poly& g, const Poly& f) {
  if (g.comps() != f.comps()) throw StructuralError("adjoint_apply: mismatched component counts");
  Poly acc(f.comps());
  for (auto& [m, c] : g.terms()) {
    Poly h = f;
    Rational factor = c;
    for (auto& [key, e] : m.entries()) {
      int comp = key_comp(key), idx = key_idx(key);
      for (int t = 0; t < e; ++t) {
        if (h.is_zero()) break;
        h = poly_partial(h, comp, idx);
        factor *= Rational(idx);
      }
      if (h.is_zero()) break;
    }
    if (!h.is_zero()) acc += h.scaled(factor);
  }
  return acc;
}

}  // namespace tauforge
