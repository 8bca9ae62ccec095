#pragma once

#include <vector>

#include "tauforge/fock.hpp"
#include "tauforge/par.hpp"
#include "tauforge/poly.hpp"
#include "tauforge/series.hpp"

namespace tauforge {

// Charged constructor data: l rows, each a nonzero Laurent polynomial A_i(u)
// and an exponent alpha_i. The row series is T_i(u) = A_i(u) H(u).
struct KpSpec {
  int l = 0;
  std::vector<LaurentPoly> A;
  std::vector<int> alpha;
};

// Neutral constructor data; the row series is T_i(u) = A_i(u) Q(u). An odd
// number of rows is reduced to even by appending A = 1, alpha = 0.
struct BkpSpec {
  int l = 0;
  std::vector<LaurentPoly> A;
  std::vector<int> alpha;
};

// s-component constructor data: one Laurent polynomial per (component r, row i).
struct SkpSpec {
  int s = 0;
  int l = 0;
  std::vector<std::vector<LaurentPoly>> A;  // A[r-1][i-1]
  std::vector<int> alpha;
};

// Shifted-coefficient form of the s-component constructor, row data per
// (row i, component r).
struct SkpClosedSpec {
  int s = 0;
  int l = 0;
  std::vector<std::vector<Rational>> b;       // b[i-1][r-1], nonzero
  std::vector<std::vector<int>> M;            // M[i-1][r-1]
  std::vector<std::vector<ShiftVector>> c;    // c[i-1][r-1]
  std::vector<int> alpha;
};

// Reduction data: lambda with s parts, r row blocks, and per (block j,
// component a) a degree N, a nonzero scale b, and a shift c. alpha is
// accepted for interface compatibility; the output does not depend on it.
struct LkdvSpec {
  Partition lambda;
  int r = 0;
  std::vector<std::vector<int>> N;            // N[j-1][a-1]
  std::vector<std::vector<Rational>> b;       // b[j-1][a-1]
  std::vector<std::vector<ShiftVector>> c;    // c[j-1][a-1]
  std::vector<int> alpha;                     // empty or one per ladder row
};

void validate(const KpSpec& spec);
void validate(const BkpSpec& spec);
void validate(const SkpSpec& spec);
void validate(const SkpClosedSpec& spec);
void validate(const LkdvSpec& spec);

// Coefficient of u^k in A(u) H^{(a)}(u): sum_j A[j] h^{(a)}_{k-j}.
Poly series_coeff_T(const LaurentPoly& A, int a, int k, int comps = 1);

// Coefficient of u^k in A(u) Q(u) (neutral, one component).
Poly series_coeff_Q(const LaurentPoly& A, int k);

// Convolution against a prebuilt coefficient table (table kind chooses H or Q).
Poly series_coeff_from(const SeriesTable& t, const LaurentPoly& A, int k);

// det[T_{i; alpha_i+1-j}], a polynomial tau-function of the charged
// hierarchy or zero.
Poly kp_coeff_det(const KpSpec& spec);

// The same coefficient by operator application: the mode sums
// X_j = sum_k A_j[k] psi^+[k - alpha_j] applied to the vacuum, X_1 first,
// with the z^l charge stripped. Equals kp_coeff_det exactly.
Poly kp_coeff_oracle(const KpSpec& spec);

// (prod b_k) det[S_{alpha_i - M_i + 1 - j}(t + c_i)].
Poly kp_closed_form(const std::vector<Rational>& b, const std::vector<int>& M,
                    const std::vector<ShiftVector>& c, const std::vector<int>& alpha);

// Coefficient of u_i^a u_j^b in f(u_i, u_j) T^{(i)}(u_i) T^{(j)}(u_j) for the
// pinned expansion region |u_i| > |u_j| (callers orient i < j):
// sum_{k>=0} (2 - delta_{k0}) (-1)^k T^{(i)}_{a+k} T^{(j)}_{b-k}.
Poly bkp_pair_coeff(const LaurentPoly& Ai, const LaurentPoly& Aj, int a, int b);

// Pfaffian of the pair-coefficient matrix (skew by construction); odd row
// counts are first extended by A = 1, alpha = 0.
Poly bkp_coeff_pf(const BkpSpec& spec);

// The same coefficient via neutral modes: X_i = sum_k A_i[k] phi_{k - alpha_i}
// applied to 1 with X_l first. Equals bkp_coeff_pf exactly.
Poly bkp_coeff_oracle(const BkpSpec& spec);

// chi_{a,b}(x, y) = 1/2 S_a(x) S_b(y) + sum_{k>=1} (-1)^k S_{a+k}(x) S_{b-k}(y)
// with x = t~ + cx, y = t~ + cy (shifted neutral series coefficients).
Poly chi_pair(int a, int b, const ShiftVector& cx, const ShiftVector& cy);

// 2^{L/2} (prod b_k) Pf[chi_{alpha_i, alpha_j}(t~ + c_i, t~ + c_j)], L even.
Poly bkp_closed_form_chi(const std::vector<Rational>& b, const std::vector<ShiftVector>& c,
                         const std::vector<int>& alpha);

// Sign of a displayed component sequence (a_l, ..., a_1): (-1)^{#inversions}.
int epsilon_sign(const std::vector<int>& displayed);

// Piecewise step data for block sizes (m_1, ..., m_s):
//   sigma_step: position of x within its block (slope 1, resets per block);
//     defined for 0 <= x <= sum m_r, with sigma(0) = 0.
//   gamma_step: index of the block containing x, 1 <= x <= sum m_r.
int sigma_step(const std::vector<int>& blocks, int x);
int gamma_step(const std::vector<int>& blocks, int x);

// All m in Z_{>=0}^s with |m| = total, ascending lexicographic.
std::vector<ChargeVector> charge_sectors(int s, int total);

// prod over classes I_r of the assignment: det[T^{(r)}_{i; alpha_i+1-j}],
// rows i in I_r ascending, columns j = 1..|I_r|.
Poly skp_coeff_assignment(const SkpSpec& spec, const std::vector<int>& assignment);

// Full coefficient of charge l: per charge sector m the single determinant
// det[T^{(a_j)}_{i; alpha_i+1-sigma_m(j)}] with a_j = gamma_m(j), signed by
// (-1)^{sum_{i<j} m_i m_j}.
FockVector skp_coeff_full(const SkpSpec& spec, par::Exec exec = par::Exec::Auto);

// Independent route: sum over assignments of eps * z_{a_1}...z_{a_l} times
// the assignment product. Equals skp_coeff_full exactly.
FockVector skp_assignment_sum(const SkpSpec& spec);

// Shifted-coefficient sector determinants
// det[b_i^{(a_j)} S_{alpha_i - M_i^{(a_j)} + 1 - sigma_m(j)}(t^{(a_j)} + c_i^{(a_j)})].
FockVector skp_closed_form(const SkpClosedSpec& spec, par::Exec exec = par::Exec::Auto);

// k_j = max_a ceil(N_j^{(a)} / lambda_a); every k_j must be >= 1.
std::vector<int> lkdv_k_lengths(const Partition& lambda,
                                const std::vector<std::vector<int>>& N);

// Sector determinants of the reduced hierarchy, rows grouped into ladder
// blocks with entry b_{g(i)}^{(a_j)} S_{N_{g(i)}^{(a_j)} - (sigma_k(i)-1)
// lambda_{a_j} + 1 - sigma_m(j)}(t^{(a_j)} + c_{g(i)}^{(a_j)}), g = gamma_k.
// Block j wedges the smallest number of rows k with k lambda_a > N_j^{(a)}
// for every a (one more than lkdv_k_lengths on exact division); fewer rows
// leave a surviving shift and break the reduction.  alpha re-parametrizes
// the same rows (shift and extraction point cancel), so it is shape-checked
// but does not change the output.
FockVector lkdv_tau(const LkdvSpec& spec, par::Exec exec = par::Exec::Auto);

}  // namespace tauforge
