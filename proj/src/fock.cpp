#include "tauforge/fock.hpp"

#include <algorithm>
#include <tuple>

#include "tauforge/errors.hpp"
#include "tauforge/series.hpp"

namespace tauforge {

int total_charge(const ChargeVector& m) {
  int c = 0;
  for (int x : m) c += x;
  return c;
}

FockVector::FockVector(int s) : s_(s) {
  if (s < 1) throw StructuralError("FockVector: component count must be >= 1");
}

FockVector FockVector::vacuum(int s) {
  FockVector v(s);
  v.sec_[ChargeVector(static_cast<std::size_t>(s), 0)] = Poly::constant(s, Rational(1));
  return v;
}

Poly FockVector::sector(const ChargeVector& m) const {
  auto it = sec_.find(m);
  return it == sec_.end() ? Poly::zero(s_) : it->second;
}

void FockVector::add(const ChargeVector& m, const Poly& f) {
  if (static_cast<int>(m.size()) != s_)
    throw StructuralError("FockVector: charge length mismatch");
  if (f.comps() != s_) throw StructuralError("FockVector: polynomial component mismatch");
  if (f.is_zero()) return;
  auto [it, fresh] = sec_.try_emplace(m, f);
  if (!fresh) {
    it->second += f;
    if (it->second.is_zero()) sec_.erase(it);
  }
}

bool FockVector::is_charge_homogeneous() const {
  if (sec_.empty()) return true;
  int c = total_charge(sec_.begin()->first);
  for (auto& [m, f] : sec_)
    if (total_charge(m) != c) return false;
  return true;
}

int FockVector::charge() const {
  if (sec_.empty()) throw StructuralError("FockVector: zero vector has no charge");
  if (!is_charge_homogeneous())
    throw StructuralError("FockVector: charge of an inhomogeneous vector");
  return total_charge(sec_.begin()->first);
}

FockVector FockVector::scaled(const Rational& c) const {
  FockVector out(s_);
  if (c.is_zero()) return out;
  for (auto& [m, f] : sec_) out.sec_[m] = f.scaled(c);
  return out;
}

FockVector operator+(const FockVector& a, const FockVector& b) {
  if (a.s_ != b.s_) throw StructuralError("FockVector: mismatched component counts");
  FockVector out = a;
  for (auto& [m, f] : b.sec_) out.add(m, f);
  return out;
}

FockVector operator-(const FockVector& a, const FockVector& b) {
  return a + b.scaled(Rational(-1));
}

TensorFockVector::TensorFockVector(int s) : s_(s) {
  if (s < 1) throw StructuralError("TensorFockVector: component count must be >= 1");
}

Poly TensorFockVector::sector(const ChargeVector& l, const ChargeVector& r) const {
  auto it = sec_.find({l, r});
  return it == sec_.end() ? Poly::zero(2 * s_) : it->second;
}

void TensorFockVector::add(const ChargeVector& l, const ChargeVector& r, const Poly& f) {
  if (static_cast<int>(l.size()) != s_ || static_cast<int>(r.size()) != s_)
    throw StructuralError("TensorFockVector: charge length mismatch");
  if (f.comps() != 2 * s_)
    throw StructuralError("TensorFockVector: polynomial component mismatch");
  if (f.is_zero()) return;
  auto [it, fresh] = sec_.try_emplace(std::make_pair(l, r), f);
  if (!fresh) {
    it->second += f;
    if (it->second.is_zero()) sec_.erase(it);
  }
}

TensorFockVector TensorFockVector::scaled(const Rational& c) const {
  TensorFockVector out(s_);
  if (c.is_zero()) return out;
  for (auto& [k, f] : sec_) out.sec_[k] = f.scaled(c);
  return out;
}

TensorFockVector operator+(const TensorFockVector& a, const TensorFockVector& b) {
  if (a.s_ != b.s_) throw StructuralError("TensorFockVector: mismatched component counts");
  TensorFockVector out = a;
  for (auto& [k, f] : b.sec_) out.add(k.first, k.second, f);
  return out;
}

TensorFockVector operator-(const TensorFockVector& a, const TensorFockVector& b) {
  return a + b.scaled(Rational(-1));
}

TensorFockVector tensor_product(const FockVector& a, const FockVector& b) {
  if (a.comps() != b.comps())
    throw StructuralError("tensor_product: mismatched component counts");
  int s = a.comps();
  TensorFockVector out(s);
  for (auto& [ma, fa] : a.sectors()) {
    Poly left = with_comps(fa, 2 * s);
    for (auto& [mb, fb] : b.sectors()) out.add(ma, mb, left * shift_components(fb, s, 2 * s));
  }
  return out;
}

namespace {

// Mode actions convolve against the same coefficient families over and over;
// each thread keeps its tables and regrows them with headroom when a call
// needs a higher cutoff.
const SeriesTable& cached_series(SeriesKind kind, int comps, int comp, int cutoff) {
  thread_local std::map<std::tuple<int, int, int>, SeriesTable> cache;
  std::tuple<int, int, int> key{static_cast<int>(kind), comps, comp};
  auto it = cache.find(key);
  if (it == cache.end()) {
    it = cache.emplace(key, series_table(kind, cutoff, comps, comp)).first;
  } else if (it->second.cutoff() < cutoff) {
    int grown = std::max(cutoff, it->second.cutoff() + it->second.cutoff() / 2);
    it->second = series_table(kind, grown, comps, comp);
  }
  return it->second;
}

enum class AdjKind { EpsMinus, EtaPlus, SigmaOdd };

// Coefficients of u^{-t} in exp(sum_k w_k d/dp^(comp)_k u^{-k}) f, where
// w_k = -1 (EpsMinus), +1 (EtaPlus), or -1 on odd k only (SigmaOdd). The
// exponential is the substitution p^(comp)_k -> p^(comp)_k + w_k u^{-k}, so
// each term expands by binomials in the shifted variables; this beats the
// differential recurrence, whose cost grows quadratically in the cutoff.
std::vector<Poly> adjoint_exp_series(const Poly& f, int comp, int upto, AdjKind kind) {
  std::vector<std::vector<Poly::Term>> bucket(static_cast<std::size_t>(upto) + 1);
  std::vector<std::pair<VarKey, int>> shifted, kept;
  for (const auto& [mono, coeff] : f.terms()) {
    shifted.clear();
    kept.clear();
    for (const auto& [key, exp] : mono.entries()) {
      if (key_comp(key) == comp && !(kind == AdjKind::SigmaOdd && key_idx(key) % 2 == 0))
        shifted.emplace_back(key, exp);
      else
        kept.emplace_back(key, exp);
    }
    auto rec = [&](auto&& self, std::size_t i, int t, const Rational& c) -> void {
      if (i == shifted.size()) {
        bucket[static_cast<std::size_t>(t)].emplace_back(PMonomial::from_entries(kept), c);
        return;
      }
      auto [key, e] = shifted[i];
      int k = key_idx(key);
      Rational binom(1);
      for (int j = 0; j <= e; ++j) {
        if (j > 0) {
          if (t + j * k > upto) break;
          binom *= Rational(e - j + 1);
          binom /= Rational(j);
        }
        Rational cc = c * binom;
        if (kind != AdjKind::EtaPlus && j % 2 == 1) cc = -cc;
        if (e - j > 0) kept.emplace_back(key, e - j);
        self(self, i + 1, t + j * k, cc);
        if (e - j > 0) kept.pop_back();
      }
    };
    rec(rec, 0, 0, coeff);
  }
  std::vector<Poly> out;
  out.reserve(static_cast<std::size_t>(upto) + 1);
  for (auto& terms : bucket) out.push_back(Poly::from_terms(f.comps(), std::move(terms)));
  return out;
}

// Results for psi^{+(comp)}[n], n in [lo, hi], indexed by n - lo. The
// expansion series depends only on (f, comp), so one pass serves the whole
// range; N = -n - m_comp shrinks as n grows, so the tail is zero after the
// first annihilated index.
std::vector<Poly> psi_plus_poly_range(const Poly& f, int comp, int m_comp, int lo, int hi) {
  if (hi < lo) return {};
  int comps = f.comps();
  std::vector<Poly> out(static_cast<std::size_t>(hi - lo + 1), Poly::zero(comps));
  if (f.is_zero()) return out;
  int D = weighted_degree(f, comp);
  if (-lo - m_comp + D < 0) return out;
  std::vector<Poly> eps = adjoint_exp_series(f, comp, D, AdjKind::EpsMinus);
  const SeriesTable& h = cached_series(SeriesKind::H, comps, comp, -lo - m_comp + D);
  for (int n = lo; n <= hi; ++n) {
    int N = -n - m_comp;
    if (N + D < 0) break;
    std::vector<Poly::Term> acc;
    for (int t = std::max(0, -N); t <= D; ++t)
      for (auto& [mh, ch] : h.at(N + t).terms())
        for (auto& [me, ce] : eps[static_cast<std::size_t>(t)].terms())
          acc.push_back({mh.times(me), ch * ce});
    out[static_cast<std::size_t>(n - lo)] = Poly::from_terms(comps, std::move(acc));
  }
  return out;
}

// Same sharing for psi^{-(comp)}[n] with N = m_comp - n, also decreasing in n.
std::vector<Poly> psi_minus_poly_range(const Poly& f, int comp, int m_comp, int lo, int hi) {
  if (hi < lo) return {};
  int comps = f.comps();
  std::vector<Poly> out(static_cast<std::size_t>(hi - lo + 1), Poly::zero(comps));
  if (f.is_zero()) return out;
  int D = weighted_degree(f, comp);
  if (m_comp - lo + D < 0) return out;
  std::vector<Poly> eta = adjoint_exp_series(f, comp, D, AdjKind::EtaPlus);
  const SeriesTable& e = cached_series(SeriesKind::E, comps, comp, m_comp - lo + D);
  for (int n = lo; n <= hi; ++n) {
    int N = m_comp - n;
    if (N + D < 0) break;
    std::vector<Poly::Term> acc;
    for (int t = std::max(0, -N); t <= D; ++t) {
      bool neg = (N + t) % 2 != 0;
      for (auto& [me, ce] : e.at(N + t).terms())
        for (auto& [mn, cn] : eta[static_cast<std::size_t>(t)].terms())
          acc.push_back({me.times(mn), neg ? -(ce * cn) : ce * cn});
    }
    out[static_cast<std::size_t>(n - lo)] = Poly::from_terms(comps, std::move(acc));
  }
  return out;
}

Poly psi_plus_poly(const Poly& f, int comp, int m_comp, int n) {
  return std::move(psi_plus_poly_range(f, comp, m_comp, n, n).front());
}

Poly psi_minus_poly(const Poly& f, int comp, int m_comp, int n) {
  return std::move(psi_minus_poly_range(f, comp, m_comp, n, n).front());
}

Poly phi_poly(int n, const Poly& f, int comp) {
  int comps = f.comps();
  if (f.is_zero()) return Poly::zero(comps);
  if (!odd_indices_only(f))
    throw StructuralError("phi_mode: vector leaves the odd subring");
  int D = weighted_degree(f, comp);
  if (n > D) return Poly::zero(comps);
  std::vector<Poly> sig = adjoint_exp_series(f, comp, D, AdjKind::SigmaOdd);
  const SeriesTable& q = cached_series(SeriesKind::Q, comps, comp, D - n);
  std::vector<Poly::Term> acc;
  for (int t = std::max(0, n); t <= D; ++t)
    for (auto& [mq, cq] : q.at(t - n).terms())
      for (auto& [ms, cs] : sig[static_cast<std::size_t>(t)].terms())
        acc.push_back({mq.times(ms), cq * cs});
  return Poly::from_terms(comps, std::move(acc));
}

int charge_prefix_parity(const ChargeVector& m, int a) {
  int pre = 0;
  for (int i = 0; i + 1 < a; ++i) pre += m[static_cast<std::size_t>(i)];
  return pre % 2 == 0 ? 1 : -1;
}

// Applies op to one tensor factor: charge vector m (length s), target
// variables offset by comp_offset. Returns the new charge and polynomial.
std::pair<ChargeVector, Poly> apply_factor(const ModeOp& op, int comp_offset,
                                           const ChargeVector& m, const Poly& f) {
  switch (op.kind) {
    case ModeOp::Kind::Identity:
      return {m, f};
    case ModeOp::Kind::PsiPlus: {
      Poly p = psi_plus_poly(f, comp_offset + op.a, m[static_cast<std::size_t>(op.a - 1)], op.n);
      ChargeVector mm = m;
      mm[static_cast<std::size_t>(op.a - 1)] += 1;
      return {mm, charge_prefix_parity(m, op.a) > 0 ? p : -p};
    }
    case ModeOp::Kind::PsiMinus: {
      Poly p = psi_minus_poly(f, comp_offset + op.a, m[static_cast<std::size_t>(op.a - 1)], op.n);
      ChargeVector mm = m;
      mm[static_cast<std::size_t>(op.a - 1)] -= 1;
      return {mm, charge_prefix_parity(m, op.a) > 0 ? p : -p};
    }
    case ModeOp::Kind::Phi:
      return {m, phi_poly(op.n, f, comp_offset + op.a)};
  }
  throw StructuralError("apply_factor: unreachable");
}

void check_op(const ModeOp& op, int s) {
  if (op.kind == ModeOp::Kind::Identity) return;
  if (op.a < 1 || op.a > s) throw StructuralError("mode operator: component out of range");
}

}  // namespace

FockVector psi_mode(int sign, int a, int n, const FockVector& v) {
  if (sign != 1 && sign != -1) throw StructuralError("psi_mode: sign must be +1 or -1");
  ModeOp op = sign > 0 ? ModeOp::psi_plus(a, n) : ModeOp::psi_minus(a, n);
  return apply_mode(op, v);
}

std::vector<FockVector> psi_mode_range(int sign, int a, int lo, int hi, const FockVector& v) {
  if (sign != 1 && sign != -1) throw StructuralError("psi_mode: sign must be +1 or -1");
  if (a < 1 || a > v.comps()) throw StructuralError("mode operator: component out of range");
  if (hi < lo) return {};
  std::size_t width = static_cast<std::size_t>(hi - lo + 1);
  std::vector<FockVector> out(width, FockVector(v.comps()));
  for (auto& [m, f] : v.sectors()) {
    int m_comp = m[static_cast<std::size_t>(a - 1)];
    std::vector<Poly> polys = sign > 0 ? psi_plus_poly_range(f, a, m_comp, lo, hi)
                                       : psi_minus_poly_range(f, a, m_comp, lo, hi);
    ChargeVector mm = m;
    mm[static_cast<std::size_t>(a - 1)] += sign;
    bool flip = charge_prefix_parity(m, a) < 0;
    for (std::size_t i = 0; i < width; ++i) {
      if (polys[i].is_zero()) continue;
      out[i].add(mm, flip ? -polys[i] : polys[i]);
    }
  }
  return out;
}

Poly phi_mode(int n, const Poly& f) { return phi_poly(n, f, 1); }

FockVector apply_mode(const ModeOp& op, const FockVector& v) {
  check_op(op, v.comps());
  FockVector out(v.comps());
  for (auto& [m, f] : v.sectors()) {
    auto [mm, p] = apply_factor(op, 0, m, f);
    out.add(mm, p);
  }
  return out;
}

TensorFockVector tensor_apply(const ModeOp& opL, const ModeOp& opR, const TensorFockVector& w) {
  int s = w.comps();
  check_op(opL, s);
  check_op(opR, s);
  TensorFockVector out(s);
  for (auto& [key, f] : w.sectors()) {
    auto [mL, f1] = apply_factor(opL, 0, key.first, f);
    if (f1.is_zero()) continue;
    auto [mR, f2] = apply_factor(opR, s, key.second, f1);
    out.add(mL, mR, f2);
  }
  return out;
}

ModeBounds mode_support_bounds(const FockVector& v, int a) {
  if (a < 1 || a > v.comps())
    throw StructuralError("mode_support_bounds: component out of range");
  ModeBounds b;
  for (auto& [m, f] : v.sectors()) {
    int d = weighted_degree(f, a);
    int ma = m[static_cast<std::size_t>(a - 1)];
    b.psi_plus_max = std::max(b.psi_plus_max, d - ma);
    b.psi_minus_max = std::max(b.psi_minus_max, d + ma);
    b.phi_max = std::max(b.phi_max, d);
  }
  return b;
}

FockVector charge_shift(const FockVector& v, const ChargeVector& a) {
  if (static_cast<int>(a.size()) != v.comps())
    throw StructuralError("charge_shift: charge length mismatch");
  FockVector out(v.comps());
  for (auto& [m, f] : v.sectors()) {
    ChargeVector mm = m;
    for (std::size_t i = 0; i < mm.size(); ++i) mm[i] += a[i];
    out.add(mm, f);
  }
  return out;
}

FockVector translate(const FockVector& v, const ChargeVector& a) {
  if (static_cast<int>(a.size()) != v.comps())
    throw StructuralError("translate: charge length mismatch");
  FockVector out(v.comps());
  for (auto& [m, f] : v.sectors()) {
    int sgn = 0;
    int prefix = 0;
    for (std::size_t i = 1; i < m.size(); ++i) {
      prefix += m[i - 1];
      sgn += a[i] * prefix;
    }
    ChargeVector mm = m;
    for (std::size_t i = 0; i < mm.size(); ++i) mm[i] += a[i];
    out.add(mm, sgn % 2 == 0 ? f : -f);
  }
  return out;
}

}  // namespace tauforge
