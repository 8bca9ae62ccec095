#include "tauforge/taugen.hpp"

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <utility>

#include "tauforge/errors.hpp"
#include "tauforge/linalg.hpp"

namespace tauforge {

namespace {

void check_row_count(int l, std::size_t a, std::size_t alpha, const char* what) {
  if (l < 1) throw InputError(std::string(what) + ": need at least one row");
  if (a != static_cast<std::size_t>(l) || alpha != static_cast<std::size_t>(l))
    throw InputError(std::string(what) + ": row data lengths disagree");
}

bool sector_sign_odd(const ChargeVector& m) {
  long long acc = 0;
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = i + 1; j < m.size(); ++j)
      acc += static_cast<long long>(m[i]) * m[j];
  return acc % 2 != 0;
}

void sectors_rec(int s, int pos, int remaining, ChargeVector& cur,
                 std::vector<ChargeVector>& out) {
  if (pos == s - 1) {
    cur[static_cast<std::size_t>(pos)] = remaining;
    out.push_back(cur);
    return;
  }
  for (int v = 0; v <= remaining; ++v) {
    cur[static_cast<std::size_t>(pos)] = v;
    sectors_rec(s, pos + 1, remaining - v, cur, out);
  }
}

// Largest table index any convolution against A can touch for targets <= kmax.
int table_cutoff(const std::vector<const LaurentPoly*>& rows, const std::vector<int>& kmax) {
  int cut = 0;
  for (std::size_t i = 0; i < rows.size(); ++i)
    if (!rows[i]->is_zero())
      cut = std::max(cut, kmax[i] - rows[i]->min_exp());
  return cut;
}

}  // namespace

void validate(const KpSpec& spec) {
  check_row_count(spec.l, spec.A.size(), spec.alpha.size(), "kp spec");
  for (const LaurentPoly& a : spec.A)
    if (a.is_zero()) throw InputError("kp spec: zero row series");
}

void validate(const BkpSpec& spec) {
  check_row_count(spec.l, spec.A.size(), spec.alpha.size(), "bkp spec");
  for (const LaurentPoly& a : spec.A)
    if (a.is_zero()) throw InputError("bkp spec: zero row series");
}

void validate(const SkpSpec& spec) {
  if (spec.s < 1) throw InputError("skp spec: need at least one component");
  if (spec.l < 1) throw InputError("skp spec: need at least one row");
  if (spec.A.size() != static_cast<std::size_t>(spec.s))
    throw InputError("skp spec: one row list per component required");
  for (const auto& rows : spec.A)
    if (rows.size() != static_cast<std::size_t>(spec.l))
      throw InputError("skp spec: row data lengths disagree");
  if (spec.alpha.size() != static_cast<std::size_t>(spec.l))
    throw InputError("skp spec: row data lengths disagree");
  for (int i = 0; i < spec.l; ++i) {
    bool nonzero = false;
    for (int r = 0; r < spec.s; ++r)
      nonzero = nonzero || !spec.A[static_cast<std::size_t>(r)][static_cast<std::size_t>(i)].is_zero();
    if (!nonzero) throw InputError("skp spec: zero row series");
  }
}

void validate(const SkpClosedSpec& spec) {
  if (spec.s < 1) throw InputError("skp closed spec: need at least one component");
  if (spec.l < 1) throw InputError("skp closed spec: need at least one row");
  auto shape = [&](std::size_t rows, std::size_t cols) {
    if (rows != static_cast<std::size_t>(spec.l)) return false;
    return cols == static_cast<std::size_t>(spec.s);
  };
  if (spec.b.size() != static_cast<std::size_t>(spec.l) ||
      spec.M.size() != static_cast<std::size_t>(spec.l) ||
      spec.c.size() != static_cast<std::size_t>(spec.l) ||
      spec.alpha.size() != static_cast<std::size_t>(spec.l))
    throw InputError("skp closed spec: row data lengths disagree");
  for (int i = 0; i < spec.l; ++i) {
    std::size_t ui = static_cast<std::size_t>(i);
    if (!shape(spec.b.size(), spec.b[ui].size()) || !shape(spec.M.size(), spec.M[ui].size()) ||
        !shape(spec.c.size(), spec.c[ui].size()))
      throw InputError("skp closed spec: per-component data lengths disagree");
    for (const Rational& v : spec.b[ui])
      if (v.is_zero()) throw InputError("skp closed spec: zero scale");
  }
}

// Rows actually wedged per block: the smallest k with k*lambda_a > N^(a)
// for every component, so that one further lambda-shift of the bottom row
// annihilates the vacuum.  On exact division this is one more than the
// lkdv_k_lengths ceiling; with the ceiling alone the shifted bilinear
// identities fail (the next shift of the ladder survives).
std::vector<int> lkdv_ladder_lengths(const Partition& lambda,
                                     const std::vector<std::vector<int>>& N) {
  std::vector<int> out;
  out.reserve(N.size());
  for (const auto& row : N) {
    int k = 1;
    for (std::size_t a = 0; a < row.size(); ++a)
      if (row[a] >= 0)
        k = std::max(k, row[a] / lambda.parts[a] + 1);
    out.push_back(k);
  }
  return out;
}

void validate(const LkdvSpec& spec) {
  int s = spec.lambda.size();
  if (s < 1) throw InputError("lkdv spec: need at least one part");
  if (spec.r < 1) throw InputError("lkdv spec: need at least one row block");
  if (spec.N.size() != static_cast<std::size_t>(spec.r) ||
      spec.b.size() != static_cast<std::size_t>(spec.r) ||
      spec.c.size() != static_cast<std::size_t>(spec.r))
    throw InputError("lkdv spec: block data lengths disagree");
  for (int j = 0; j < spec.r; ++j) {
    std::size_t uj = static_cast<std::size_t>(j);
    if (spec.N[uj].size() != static_cast<std::size_t>(s) ||
        spec.b[uj].size() != static_cast<std::size_t>(s) ||
        spec.c[uj].size() != static_cast<std::size_t>(s))
      throw InputError("lkdv spec: per-component data lengths disagree");
    for (const Rational& v : spec.b[uj])
      if (v.is_zero()) throw InputError("lkdv spec: zero scale");
  }
  lkdv_k_lengths(spec.lambda, spec.N);
  std::vector<int> rows = lkdv_ladder_lengths(spec.lambda, spec.N);
  int l = std::accumulate(rows.begin(), rows.end(), 0);
  if (!spec.alpha.empty() && spec.alpha.size() != static_cast<std::size_t>(l))
    throw InputError("lkdv spec: alpha length disagrees with the row count");
}

Poly series_coeff_from(const SeriesTable& t, const LaurentPoly& A, int k) {
  Poly acc(t.comps);
  for (const auto& [j, coeff] : A.coeffs()) {
    int idx = k - j;
    if (idx < 0) continue;
    acc += t.at(idx).scaled(coeff);
  }
  return acc;
}

Poly series_coeff_T(const LaurentPoly& A, int a, int k, int comps) {
  if (A.is_zero()) return Poly::zero(comps);
  SeriesTable t = series_table(SeriesKind::H, std::max(0, k - A.min_exp()), comps, a);
  return series_coeff_from(t, A, k);
}

Poly series_coeff_Q(const LaurentPoly& A, int k) {
  if (A.is_zero()) return Poly::zero(1);
  SeriesTable t = series_table(SeriesKind::Q, std::max(0, k - A.min_exp()), 1, 1);
  return series_coeff_from(t, A, k);
}

Poly kp_coeff_det(const KpSpec& spec) {
  validate(spec);
  std::vector<const LaurentPoly*> rows;
  for (const LaurentPoly& a : spec.A) rows.push_back(&a);
  SeriesTable h = series_table(SeriesKind::H, table_cutoff(rows, spec.alpha));
  std::size_t n = static_cast<std::size_t>(spec.l);
  PolyMatrix m(n, std::vector<Poly>(n, Poly::zero(1)));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      m[i][j] = series_coeff_from(h, spec.A[i], spec.alpha[i] - static_cast<int>(j));
  return det_poly(m);
}

Poly kp_coeff_oracle(const KpSpec& spec) {
  validate(spec);
  FockVector cur = FockVector::vacuum(1);
  for (int j = 0; j < spec.l; ++j) {
    std::size_t uj = static_cast<std::size_t>(j);
    FockVector next(1);
    for (const auto& [k, coeff] : spec.A[uj].coeffs())
      next = next + psi_mode(+1, 1, k - spec.alpha[uj], cur).scaled(coeff);
    cur = next;
    if (cur.is_zero()) return Poly::zero(1);
  }
  return cur.sector(ChargeVector{spec.l});
}

Poly kp_closed_form(const std::vector<Rational>& b, const std::vector<int>& M,
                    const std::vector<ShiftVector>& c, const std::vector<int>& alpha) {
  std::size_t n = b.size();
  if (n < 1) throw InputError("kp closed form: need at least one row");
  if (M.size() != n || c.size() != n || alpha.size() != n)
    throw InputError("kp closed form: row data lengths disagree");
  Rational scale(1);
  for (const Rational& v : b) {
    if (v.is_zero()) throw InputError("kp closed form: zero scale");
    scale = scale * v;
  }
  PolyMatrix m(n, std::vector<Poly>(n, Poly::zero(1)));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      m[i][j] = shifted_elementary_schur(alpha[i] - M[i] - static_cast<int>(j), c[i]);
  return det_poly(m).scaled(scale);
}

Poly bkp_pair_coeff(const LaurentPoly& Ai, const LaurentPoly& Aj, int a, int b) {
  if (Ai.is_zero() || Aj.is_zero()) throw InputError("bkp pair coefficient: zero row series");
  int kmax = b - Aj.min_exp();
  if (kmax < 0) return Poly::zero(1);
  int cut = std::max(std::max(0, a + kmax - Ai.min_exp()), kmax);
  SeriesTable q = series_table(SeriesKind::Q, cut);
  Poly acc(1);
  for (int k = 0; k <= kmax; ++k) {
    Poly ti = series_coeff_from(q, Ai, a + k);
    if (ti.is_zero()) continue;
    Poly term = ti * series_coeff_from(q, Aj, b - k);
    if (k > 0) term = term.scaled(Rational(2));
    acc = (k % 2 == 0) ? acc + term : acc - term;
  }
  return acc;
}

Poly bkp_coeff_pf(const BkpSpec& spec) {
  validate(spec);
  std::vector<LaurentPoly> A = spec.A;
  std::vector<int> alpha = spec.alpha;
  if (spec.l % 2 != 0) {
    A.push_back(LaurentPoly(Rational(1)));
    alpha.push_back(0);
  }
  std::size_t n = A.size();
  PolyMatrix m(n, std::vector<Poly>(n, Poly::zero(1)));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      Poly e = bkp_pair_coeff(A[i], A[j], alpha[i], alpha[j]);
      m[i][j] = e;
      m[j][i] = -e;
    }
  return pfaffian_poly(m);
}

Poly bkp_coeff_oracle(const BkpSpec& spec) {
  validate(spec);
  Poly cur = Poly::constant(1, Rational(1));
  for (int i = spec.l; i >= 1; --i) {
    std::size_t ui = static_cast<std::size_t>(i - 1);
    Poly next(1);
    for (const auto& [k, coeff] : spec.A[ui].coeffs())
      next += phi_mode(k - spec.alpha[ui], cur).scaled(coeff);
    cur = next;
    if (cur.is_zero()) return cur;
  }
  return cur;
}

Poly chi_pair(int a, int b, const ShiftVector& cx, const ShiftVector& cy) {
  SeriesTable q = series_table(SeriesKind::Q, std::max(0, std::max(a, a + b)));
  Poly acc = (shifted_series_coeff(q, cx, a) * shifted_series_coeff(q, cy, b))
                 .scaled(Rational(1, 2));
  for (int k = 1; k <= b; ++k) {
    Poly term = shifted_series_coeff(q, cx, a + k) * shifted_series_coeff(q, cy, b - k);
    acc = (k % 2 == 0) ? acc + term : acc - term;
  }
  return acc;
}

Poly bkp_closed_form_chi(const std::vector<Rational>& b, const std::vector<ShiftVector>& c,
                         const std::vector<int>& alpha) {
  std::size_t n = b.size();
  if (n < 2 || n % 2 != 0) throw InputError("bkp closed form: need an even number of rows");
  if (c.size() != n || alpha.size() != n)
    throw InputError("bkp closed form: row data lengths disagree");
  Rational scale(1);
  for (const Rational& v : b) {
    if (v.is_zero()) throw InputError("bkp closed form: zero scale");
    scale = scale * v;
  }
  for (std::size_t k = 0; k < n / 2; ++k) scale = scale * Rational(2);
  PolyMatrix m(n, std::vector<Poly>(n, Poly::zero(1)));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      Poly e = chi_pair(alpha[i], alpha[j], c[i], c[j]);
      m[i][j] = e;
      m[j][i] = -e;
    }
  return pfaffian_poly(m).scaled(scale);
}

int epsilon_sign(const std::vector<int>& displayed) {
  long long inv = 0;
  for (std::size_t i = 0; i < displayed.size(); ++i)
    for (std::size_t j = i + 1; j < displayed.size(); ++j)
      if (displayed[i] > displayed[j]) ++inv;
  return inv % 2 == 0 ? 1 : -1;
}

int sigma_step(const std::vector<int>& blocks, int x) {
  int total = 0;
  for (int v : blocks) {
    if (v < 0) throw StructuralError("sigma_step: negative block size");
    total += v;
  }
  if (x < 0 || x > total) throw StructuralError("sigma_step: position out of range");
  if (x == 0) return 0;
  int cum = 0;
  for (int v : blocks) {
    if (x <= cum + v) return x - cum;
    cum += v;
  }
  throw StructuralError("sigma_step: position out of range");
}

int gamma_step(const std::vector<int>& blocks, int x) {
  int total = 0;
  for (int v : blocks) {
    if (v < 0) throw StructuralError("gamma_step: negative block size");
    total += v;
  }
  if (x < 1 || x > total) throw StructuralError("gamma_step: position out of range");
  int cum = 0;
  for (std::size_t r = 0; r < blocks.size(); ++r) {
    cum += blocks[r];
    if (x <= cum) return static_cast<int>(r) + 1;
  }
  throw StructuralError("gamma_step: position out of range");
}

std::vector<ChargeVector> charge_sectors(int s, int total) {
  if (s < 1) throw StructuralError("charge_sectors: need at least one component");
  if (total < 0) throw StructuralError("charge_sectors: negative total");
  std::vector<ChargeVector> out;
  ChargeVector cur(static_cast<std::size_t>(s), 0);
  sectors_rec(s, 0, total, cur, out);
  return out;
}

Poly skp_coeff_assignment(const SkpSpec& spec, const std::vector<int>& assignment) {
  validate(spec);
  if (assignment.size() != static_cast<std::size_t>(spec.l))
    throw InputError("skp assignment: length disagrees with the row count");
  for (int a : assignment)
    if (a < 1 || a > spec.s) throw InputError("skp assignment: component out of range");
  Poly prod = Poly::constant(spec.s, Rational(1));
  for (int r = 1; r <= spec.s; ++r) {
    std::vector<int> rows;
    for (int i = 0; i < spec.l; ++i)
      if (assignment[static_cast<std::size_t>(i)] == r) rows.push_back(i);
    if (rows.empty()) continue;
    std::size_t n = rows.size();
    PolyMatrix m(n, std::vector<Poly>(n, Poly::zero(spec.s)));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        m[i][j] = series_coeff_T(spec.A[static_cast<std::size_t>(r - 1)]
                                       [static_cast<std::size_t>(rows[i])],
                                 r, spec.alpha[static_cast<std::size_t>(rows[i])] -
                                        static_cast<int>(j),
                                 spec.s);
    prod = prod * det_poly(m);
    if (prod.is_zero()) return prod;
  }
  return prod;
}

namespace {

std::vector<SeriesTable> warm_h_tables(const SkpSpec& spec) {
  std::vector<SeriesTable> out;
  out.reserve(static_cast<std::size_t>(spec.s));
  for (int r = 0; r < spec.s; ++r) {
    std::vector<const LaurentPoly*> rows;
    for (int i = 0; i < spec.l; ++i)
      rows.push_back(&spec.A[static_cast<std::size_t>(r)][static_cast<std::size_t>(i)]);
    out.push_back(series_table(SeriesKind::H, table_cutoff(rows, spec.alpha), spec.s, r + 1));
  }
  return out;
}

}  // namespace

FockVector skp_coeff_full(const SkpSpec& spec, par::Exec exec) {
  validate(spec);
  std::vector<SeriesTable> tables = warm_h_tables(spec);
  std::vector<ChargeVector> sectors = charge_sectors(spec.s, spec.l);
  std::size_t n = static_cast<std::size_t>(spec.l);
  std::vector<Poly> vals(sectors.size(), Poly::zero(spec.s));
  par::for_n(exec, sectors.size(), [&](std::size_t t) {
    const ChargeVector& sector = sectors[t];
    PolyMatrix m(n, std::vector<Poly>(n, Poly::zero(spec.s)));
    for (std::size_t j = 0; j < n; ++j) {
      int aj = gamma_step(sector, static_cast<int>(j) + 1);
      int sj = sigma_step(sector, static_cast<int>(j) + 1);
      const SeriesTable& tbl = tables[static_cast<std::size_t>(aj - 1)];
      for (std::size_t i = 0; i < n; ++i)
        m[i][j] = series_coeff_from(tbl, spec.A[static_cast<std::size_t>(aj - 1)][i],
                                    spec.alpha[i] + 1 - sj);
    }
    Poly d = det_poly(m);
    vals[t] = sector_sign_odd(sector) ? -d : d;
  });
  FockVector out(spec.s);
  for (std::size_t t = 0; t < sectors.size(); ++t)
    if (!vals[t].is_zero()) out.add(sectors[t], vals[t]);
  return out;
}

FockVector skp_assignment_sum(const SkpSpec& spec) {
  validate(spec);
  FockVector out(spec.s);
  std::vector<int> assignment(static_cast<std::size_t>(spec.l), 1);
  for (;;) {
    Poly prod = skp_coeff_assignment(spec, assignment);
    if (!prod.is_zero()) {
      std::vector<int> displayed(assignment.rbegin(), assignment.rend());
      ChargeVector m(static_cast<std::size_t>(spec.s), 0);
      for (int a : assignment) ++m[static_cast<std::size_t>(a - 1)];
      out.add(m, epsilon_sign(displayed) > 0 ? prod : -prod);
    }
    std::size_t pos = 0;
    while (pos < assignment.size() && assignment[pos] == spec.s) assignment[pos++] = 1;
    if (pos == assignment.size()) break;
    ++assignment[pos];
  }
  return out;
}

FockVector skp_closed_form(const SkpClosedSpec& spec, par::Exec exec) {
  validate(spec);
  std::vector<ChargeVector> sectors = charge_sectors(spec.s, spec.l);
  std::size_t n = static_cast<std::size_t>(spec.l);
  std::vector<Poly> vals(sectors.size(), Poly::zero(spec.s));
  par::for_n(exec, sectors.size(), [&](std::size_t t) {
    const ChargeVector& sector = sectors[t];
    PolyMatrix m(n, std::vector<Poly>(n, Poly::zero(spec.s)));
    for (std::size_t j = 0; j < n; ++j) {
      std::size_t aj = static_cast<std::size_t>(gamma_step(sector, static_cast<int>(j) + 1));
      int sj = sigma_step(sector, static_cast<int>(j) + 1);
      for (std::size_t i = 0; i < n; ++i) {
        int idx = spec.alpha[i] - spec.M[i][aj - 1] + 1 - sj;
        Poly e = shifted_elementary_schur(idx, spec.c[i][aj - 1], spec.s,
                                          static_cast<int>(aj));
        m[i][j] = e.scaled(spec.b[i][aj - 1]);
      }
    }
    Poly d = det_poly(m);
    vals[t] = sector_sign_odd(sector) ? -d : d;
  });
  FockVector out(spec.s);
  for (std::size_t t = 0; t < sectors.size(); ++t)
    if (!vals[t].is_zero()) out.add(sectors[t], vals[t]);
  return out;
}

std::vector<int> lkdv_k_lengths(const Partition& lambda,
                                const std::vector<std::vector<int>>& N) {
  int s = lambda.size();
  if (s < 1) throw InputError("lkdv row lengths: need at least one part");
  std::vector<int> out;
  out.reserve(N.size());
  for (std::size_t j = 0; j < N.size(); ++j) {
    if (N[j].size() != static_cast<std::size_t>(s))
      throw InputError("lkdv row lengths: per-component data lengths disagree");
    int k = 0;
    bool any = false;
    for (int a = 0; a < s; ++a) {
      int num = N[j][static_cast<std::size_t>(a)];
      int den = lambda.parts[static_cast<std::size_t>(a)];
      int ceil_div = num / den + (num % den != 0 && num > 0 ? 1 : 0);
      if (!any || ceil_div > k) k = ceil_div;
      any = true;
    }
    if (k < 1) throw InputError("lkdv row lengths: a row block has non-positive length");
    out.push_back(k);
  }
  return out;
}

FockVector lkdv_tau(const LkdvSpec& spec, par::Exec exec) {
  validate(spec);
  int s = spec.lambda.size();
  std::vector<int> k = lkdv_ladder_lengths(spec.lambda, spec.N);
  int l = std::accumulate(k.begin(), k.end(), 0);
  std::vector<ChargeVector> sectors = charge_sectors(s, l);
  std::size_t n = static_cast<std::size_t>(l);
  std::vector<Poly> vals(sectors.size(), Poly::zero(s));
  par::for_n(exec, sectors.size(), [&](std::size_t t) {
    const ChargeVector& sector = sectors[t];
    PolyMatrix m(n, std::vector<Poly>(n, Poly::zero(s)));
    for (std::size_t j = 0; j < n; ++j) {
      std::size_t aj = static_cast<std::size_t>(gamma_step(sector, static_cast<int>(j) + 1));
      int sj = sigma_step(sector, static_cast<int>(j) + 1);
      for (std::size_t i = 0; i < n; ++i) {
        std::size_t bi = static_cast<std::size_t>(gamma_step(k, static_cast<int>(i) + 1));
        int ti = sigma_step(k, static_cast<int>(i) + 1);
        int idx = spec.N[bi - 1][aj - 1] - (ti - 1) * spec.lambda.parts[aj - 1] + 1 - sj;
        Poly e = shifted_elementary_schur(idx, spec.c[bi - 1][aj - 1], s,
                                          static_cast<int>(aj));
        m[i][j] = e.scaled(spec.b[bi - 1][aj - 1]);
      }
    }
    Poly d = det_poly(m);
    vals[t] = sector_sign_odd(sector) ? -d : d;
  });
  FockVector out(s);
  for (std::size_t t = 0; t < sectors.size(); ++t)
    if (!vals[t].is_zero()) out.add(sectors[t], vals[t]);
  return out;
}

}  // namespace tauforge
