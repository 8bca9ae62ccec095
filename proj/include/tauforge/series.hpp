#pragma once

#include <vector>

#include "tauforge/poly.hpp"

namespace tauforge {

// Generating series whose coefficients the library tabulates:
//   H(u)    = exp(sum_{n>=1} p_n u^n / n)                 -> h_k = S_k
//   E(u)    = exp(-sum_{n>=1} (-1)^n p_n u^n / n)         -> e_k
//   Q(u)    = E(u) H(u)                                   -> q_k
//   Sexp(u) = exp(sum_{n odd} p_n u^n / n)                -> Q(u) = Sexp(u)^2
enum class SeriesKind { H, E, Q, Sexp };

struct SeriesTable {
  SeriesKind kind = SeriesKind::H;
  int comps = 1;
  int comp = 1;
  std::vector<Poly> c;  // c[k] homogeneous of weighted degree k, c[0] = 1
  Poly zero;            // comps-correct zero, returned by at() for k < 0

  int cutoff() const { return static_cast<int>(c.size()) - 1; }
  // coefficient k, with k < 0 yielding zero; k beyond the cutoff is an error
  const Poly& at(int k) const;
};

SeriesTable series_table(SeriesKind kind, int cutoff, int comps = 1, int comp = 1);

// S_k as a polynomial in p^(comp)_* (S_k = h_k under t_n = p_n / n); zero for k < 0.
Poly elementary_schur(int k, int comps = 1, int comp = 1);

// S_lambda = det[S_{lambda_i + j - i}].
Poly jacobi_trudi(const Partition& lambda);

// Scalars S_0(c), ..., S_upto(c) for a constant shift vector c.
std::vector<Rational> schur_scalars(const ShiftVector& c, int upto);

// Coefficient k of the c-shifted series: sum_i S_i(c) * tbl[k - i].
// With an H table this is S_k(t + c); with a Q table, S_k(t~ + c).
Poly shifted_series_coeff(const SeriesTable& tbl, const ShiftVector& c, int k);

// S_k(t + c) in p-variables.
Poly shifted_elementary_schur(int k, const ShiftVector& c, int comps = 1, int comp = 1);

// q_{a,b} = q_a q_b + 2 sum_{i=1}^{b} (-1)^i q_{a+i} q_{b-i} for a > b >= 0,
// extended by q_{a,b} = -q_{b,a} and q_{a,a} = 0.
Poly q_pair(int a, int b);

// Schur Q-polynomial: Pf[q_{lambda_i, lambda_j}] for even length, the signed
// single-row expansion Q_lambda = sum_k (-1)^{k-1} q_{lambda_k} Q_{lambda \ lambda_k}
// for odd length.
Poly q_schur(const StrictPartition& lambda);

// f^perp action: substitute p^(a)_n -> n d/dp^(a)_n in g and apply to f.
Poly adjoint_apply(const Poly& g, const Poly& f);

}  // namespace tauforge
