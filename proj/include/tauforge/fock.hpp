#pragma once

#include <climits>
#include <map>
#include <utility>
#include <vector>

#include "tauforge/poly.hpp"

namespace tauforge {

// Charge key z_1^{m_1}...z_s^{m_s} of a Fock-space sector.
using ChargeVector = std::vector<int>;

int total_charge(const ChargeVector& m);

// Finite sum of sectors z^m * f with f a polynomial in s components.
// No zero polynomial is ever stored.
class FockVector {
 public:
  explicit FockVector(int s);

  static FockVector vacuum(int s);  // the single sector z^0 * 1

  int comps() const { return s_; }
  bool is_zero() const { return sec_.empty(); }
  const std::map<ChargeVector, Poly>& sectors() const { return sec_; }
  Poly sector(const ChargeVector& m) const;  // zero when absent

  // Accumulates f into sector m; drops the sector if it cancels to zero.
  void add(const ChargeVector& m, const Poly& f);

  bool is_charge_homogeneous() const;  // all sectors share the total charge
  int charge() const;                  // total charge; requires homogeneous nonzero

  FockVector scaled(const Rational& c) const;
  friend FockVector operator+(const FockVector& a, const FockVector& b);
  friend FockVector operator-(const FockVector& a, const FockVector& b);
  friend bool operator==(const FockVector& a, const FockVector& b) {
    return a.s_ == b.s_ && a.sec_ == b.sec_;
  }
  friend bool operator!=(const FockVector& a, const FockVector& b) { return !(a == b); }

 private:
  int s_;
  std::map<ChargeVector, Poly> sec_;
};

// Finite sum of sectors z^mL (x) z^mR * f where f uses 2s components:
// the left factor's variables are components 1..s, the right factor's s+1..2s.
class TensorFockVector {
 public:
  explicit TensorFockVector(int s);

  int comps() const { return s_; }  // per factor
  bool is_zero() const { return sec_.empty(); }
  const std::map<std::pair<ChargeVector, ChargeVector>, Poly>& sectors() const { return sec_; }
  Poly sector(const ChargeVector& l, const ChargeVector& r) const;

  void add(const ChargeVector& l, const ChargeVector& r, const Poly& f);

  TensorFockVector scaled(const Rational& c) const;
  friend TensorFockVector operator+(const TensorFockVector& a, const TensorFockVector& b);
  friend TensorFockVector operator-(const TensorFockVector& a, const TensorFockVector& b);
  friend bool operator==(const TensorFockVector& a, const TensorFockVector& b) {
    return a.s_ == b.s_ && a.sec_ == b.sec_;
  }
  friend bool operator!=(const TensorFockVector& a, const TensorFockVector& b) {
    return !(a == b);
  }

 private:
  int s_;
  std::map<std::pair<ChargeVector, ChargeVector>, Poly> sec_;
};

TensorFockVector tensor_product(const FockVector& a, const FockVector& b);

// Half-integer fermion indices i are stored as the integer n with i = n - 1/2,
// so psi^{+-}[n] := psi^{+-}_{n-1/2} and the fields read psi(u) = sum_n psi[n] u^{-n}.
//
// Sector action on z^m * f (component a targeted, prefix sign from the charge):
//   psi^{+(a)}[n]: charge m + e_a, polynomial sum_{r-t=-n-m_a} h^{(a)}_r eps_t(f)
//   psi^{-(a)}[n]: charge m - e_a, polynomial sum_{r-t=m_a-n} (-1)^r e^{(a)}_r eta_t(f)
// where eps/eta are the coefficient operators of E^{(a)perp}(-u) / H^{(a)perp}(u).
FockVector psi_mode(int sign, int a, int n, const FockVector& v);

// psi_mode for every n in [lo, hi] at once, returned indexed by n - lo. Each
// sector's shifted-variable expansion is computed once and reused across the
// whole index range, so this is much cheaper than hi - lo + 1 single calls.
std::vector<FockVector> psi_mode_range(int sign, int a, int lo, int hi, const FockVector& v);

// Neutral mode phi_n on the odd subring C[p_1, p_3, ...]: the coefficient of
// u^{-n} in Q(u) S^perp(-u) f, as the finite sum sum_{t>=max(0,n)} q_{t-n} sigma_t(f).
Poly phi_mode(int n, const Poly& f);

// One mode operator acting on a single tensor factor.
struct ModeOp {
  enum class Kind { Identity, PsiPlus, PsiMinus, Phi };
  Kind kind = Kind::Identity;
  int a = 1;
  int n = 0;

  static ModeOp identity() { return {}; }
  static ModeOp psi_plus(int a, int n) { return {Kind::PsiPlus, a, n}; }
  static ModeOp psi_minus(int a, int n) { return {Kind::PsiMinus, a, n}; }
  static ModeOp phi(int n) { return {Kind::Phi, 1, n}; }
};

FockVector apply_mode(const ModeOp& op, const FockVector& v);

// Factor-wise application: opL acts on the left component block and charge,
// opR on the right. No cross-factor sign is introduced.
TensorFockVector tensor_apply(const ModeOp& opL, const ModeOp& opR, const TensorFockVector& w);

// Vanishing thresholds enveloped over sectors, in the integer encoding:
//   psi^{+(a)}[n] v = 0 for n > psi_plus_max   (n > D_a - m_a per sector)
//   psi^{-(a)}[n] v = 0 for n > psi_minus_max  (n > D_a + m_a per sector)
//   phi_n v = 0 for n > phi_max                (n > D_a per sector)
// kNoModes marks the empty vector: every mode annihilates it.
inline constexpr int kNoModes = INT_MIN / 2;

struct ModeBounds {
  int psi_plus_max = kNoModes;
  int psi_minus_max = kNoModes;
  int phi_max = kNoModes;
};

ModeBounds mode_support_bounds(const FockVector& v, int a = 1);

// Plain multiplication by z^a (charge shift, no sign).
FockVector charge_shift(const FockVector& v, const ChargeVector& a);

// Signed translation: sector m picks up (-1)^{sum_{i>=2} a_i (m_1+...+m_{i-1})}
// and moves to m + a. Commutes with every bilinear identity operator.
FockVector translate(const FockVector& v, const ChargeVector& a);

}  // namespace tauforge
