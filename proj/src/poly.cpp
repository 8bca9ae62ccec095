#include "tauforge/poly.hpp"

#include <algorithm>

#include "tauforge/alloc.hpp"
#include "tauforge/errors.hpp"

namespace tauforge {
namespace {
// Every binary links this translation unit, so coefficient arithmetic runs on
// the block pool from the first allocation onward.
[[maybe_unused]] const bool kPoolInstalled = use_gmp_block_pool();
}  // namespace

PMonomial PMonomial::var(int comp, int idx, int exp) {
  if (comp < 1 || idx < 1) throw StructuralError("PMonomial: component and index must be >= 1");
  if (exp < 0) throw StructuralError("PMonomial: negative exponent");
  PMonomial m;
  if (exp > 0) {
    m.e_.push_back({var_key(comp, idx), exp});
    m.deg_ = idx * exp;
  }
  return m;
}

PMonomial PMonomial::from_entries(std::vector<std::pair<VarKey, int>> entries) {
  std::sort(entries.begin(), entries.end());
  PMonomial m;
  for (auto& [k, e] : entries) {
    if (e == 0) continue;
    if (e < 0) throw StructuralError("PMonomial: negative exponent");
    if (key_comp(k) < 1 || key_idx(k) < 1)
      throw StructuralError("PMonomial: component and index must be >= 1");
    m.deg_ += key_idx(k) * e;
    if (!m.e_.empty() && m.e_.back().first == k)
      m.e_.back().second += e;
    else
      m.e_.push_back({k, e});
  }
  return m;
}

int PMonomial::weighted_degree(int comp) const {
  int d = 0;
  for (auto& [k, e] : e_)
    if (key_comp(k) == comp) d += key_idx(k) * e;
  return d;
}

PMonomial PMonomial::times(const PMonomial& o) const {
  PMonomial r;
  r.e_.reserve(e_.size() + o.e_.size());
  std::size_t i = 0, j = 0;
  while (i < e_.size() && j < o.e_.size()) {
    if (e_[i].first < o.e_[j].first)
      r.e_.push_back(e_[i++]);
    else if (o.e_[j].first < e_[i].first)
      r.e_.push_back(o.e_[j++]);
    else {
      r.e_.push_back({e_[i].first, e_[i].second + o.e_[j].second});
      ++i, ++j;
    }
  }
  for (; i < e_.size(); ++i) r.e_.push_back(e_[i]);
  for (; j < o.e_.size(); ++j) r.e_.push_back(o.e_[j]);
  r.deg_ = deg_ + o.deg_;
  return r;
}

bool PMonomial::divisible_by(const PMonomial& o) const {
  std::size_t i = 0;
  for (auto& [k, e] : o.e_) {
    while (i < e_.size() && e_[i].first < k) ++i;
    if (i == e_.size() || e_[i].first != k || e_[i].second < e) return false;
  }
  return true;
}

PMonomial PMonomial::divided_by(const PMonomial& o) const {
  if (!divisible_by(o)) throw StructuralError("PMonomial: not divisible");
  PMonomial r;
  std::size_t j = 0;
  for (auto& [k, e] : e_) {
    int sub = 0;
    if (j < o.e_.size() && o.e_[j].first == k) sub = o.e_[j++].second;
    if (e - sub > 0) r.e_.push_back({k, e - sub});
  }
  r.deg_ = deg_ - o.deg_;
  return r;
}

int PMonomial::exponent(int comp, int idx) const {
  VarKey k = var_key(comp, idx);
  auto it = std::lower_bound(e_.begin(), e_.end(), k,
                             [](const std::pair<VarKey, int>& p, VarKey key) { return p.first < key; });
  return (it != e_.end() && it->first == k) ? it->second : 0;
}

int canonical_cmp(const PMonomial& a, const PMonomial& b) {
  int da = a.total_weighted_degree(), db = b.total_weighted_degree();
  if (da != db) return da > db ? -1 : 1;
  const auto& ea = a.entries();
  const auto& eb = b.entries();
  std::size_t i = 0, j = 0;
  while (i < ea.size() && j < eb.size()) {
    if (ea[i].first == eb[j].first) {
      if (ea[i].second != eb[j].second) return ea[i].second > eb[j].second ? -1 : 1;
      ++i, ++j;
    } else if (ea[i].first < eb[j].first) {
      return -1;  // a has a positive exponent where b has zero
    } else {
      return 1;
    }
  }
  if (i < ea.size()) return -1;
  if (j < eb.size()) return 1;
  return 0;
}

Poly::Poly(int s) : s_(s) {
  if (s < 1) throw StructuralError("Poly: component count must be >= 1");
}

Poly Poly::constant(int s, const Rational& c) {
  Poly f(s);
  if (!c.is_zero()) f.t_.push_back({PMonomial::one(), c});
  return f;
}

Poly Poly::variable(int s, int comp, int idx) {
  Poly f(s);
  if (comp < 1 || comp > s) throw StructuralError("Poly: component out of range");
  f.t_.push_back({PMonomial::var(comp, idx), Rational(1)});
  return f;
}

Poly Poly::from_terms(int s, std::vector<Term> terms) {
  Poly f(s);
  std::sort(terms.begin(), terms.end(),
            [](const Term& a, const Term& b) { return canonical_cmp(a.first, b.first) < 0; });
  for (auto& [m, c] : terms) {
    if (m.max_comp() > s) throw StructuralError("Poly: term component exceeds component count");
    if (!f.t_.empty() && f.t_.back().first == m)
      f.t_.back().second += c;
    else
      f.t_.push_back({std::move(m), std::move(c)});
  }
  std::erase_if(f.t_, [](const Term& t) { return t.second.is_zero(); });
  return f;
}

void Poly::check_same(const Poly& a, const Poly& b) {
  if (a.s_ != b.s_) throw StructuralError("Poly: mismatched component counts");
}

Poly Poly::operator-() const {
  Poly r(s_);
  r.t_.reserve(t_.size());
  for (auto& [m, c] : t_) r.t_.push_back({m, -c});
  return r;
}

Poly Poly::scaled(const Rational& c) const {
  if (c.is_zero()) return Poly(s_);
  Poly r(s_);
  r.t_.reserve(t_.size());
  for (auto& [m, k] : t_) r.t_.push_back({m, k * c});
  return r;
}

Poly operator+(const Poly& a, const Poly& b) {
  Poly::check_same(a, b);
  Poly r(a.s_);
  r.t_.reserve(a.t_.size() + b.t_.size());
  std::size_t i = 0, j = 0;
  while (i < a.t_.size() && j < b.t_.size()) {
    int c = canonical_cmp(a.t_[i].first, b.t_[j].first);
    if (c < 0)
      r.t_.push_back(a.t_[i++]);
    else if (c > 0)
      r.t_.push_back(b.t_[j++]);
    else {
      Rational sum = a.t_[i].second + b.t_[j].second;
      if (!sum.is_zero()) r.t_.push_back({a.t_[i].first, sum});
      ++i, ++j;
    }
  }
  for (; i < a.t_.size(); ++i) r.t_.push_back(a.t_[i]);
  for (; j < b.t_.size(); ++j) r.t_.push_back(b.t_[j]);
  return r;
}

Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }

Poly operator*(const Poly& a, const Poly& b) {
  Poly::check_same(a, b);
  if (a.is_zero() || b.is_zero()) return Poly(a.s_);
  std::vector<Poly::Term> acc;
  acc.reserve(a.t_.size() * b.t_.size());
  for (auto& [ma, ca] : a.t_)
    for (auto& [mb, cb] : b.t_) acc.push_back({ma.times(mb), ca * cb});
  return Poly::from_terms(a.s_, std::move(acc));
}

Rational Poly::coeff(const PMonomial& m) const {
  auto it = std::lower_bound(
      t_.begin(), t_.end(), m,
      [](const Term& t, const PMonomial& key) { return canonical_cmp(t.first, key) < 0; });
  return (it != t_.end() && it->first == m) ? it->second : Rational(0);
}

Poly poly_partial(const Poly& f, int comp, int idx) {
  if (comp < 1 || comp > f.comps()) throw StructuralError("poly_partial: component out of range");
  if (idx < 1) throw StructuralError("poly_partial: index out of range");
  std::vector<Poly::Term> out;
  for (auto& [m, c] : f.terms()) {
    int e = m.exponent(comp, idx);
    if (e == 0) continue;
    out.push_back({m.divided_by(PMonomial::var(comp, idx)), c * Rational(e)});
  }
  return Poly::from_terms(f.comps(), std::move(out));
}

int weighted_degree(const Poly& f) {
  if (f.is_zero()) return kDegNegInf;
  // terms are graded descending, so the leading term carries the degree
  return f.terms().front().first.total_weighted_degree();
}

int weighted_degree(const Poly& f, int comp) {
  if (f.is_zero()) return kDegNegInf;
  int d = 0;
  for (auto& [m, c] : f.terms()) d = std::max(d, m.weighted_degree(comp));
  return d;
}

bool is_homogeneous(const Poly& f) {
  if (f.is_zero()) return true;
  int d = f.terms().front().first.total_weighted_degree();
  for (auto& [m, c] : f.terms())
    if (m.total_weighted_degree() != d) return false;
  return true;
}

bool odd_indices_only(const Poly& f) {
  for (auto& [m, c] : f.terms())
    for (auto& [k, e] : m.entries())
      if (key_idx(k) % 2 == 0) return false;
  return true;
}

Poly shift_components(const Poly& f, int offset, int new_s) {
  std::vector<Poly::Term> out;
  out.reserve(f.size());
  for (auto& [m, c] : f.terms()) {
    std::vector<std::pair<VarKey, int>> es;
    es.reserve(m.entries().size());
    for (auto& [k, e] : m.entries()) es.push_back({var_key(key_comp(k) + offset, key_idx(k)), e});
    out.push_back({PMonomial::from_entries(std::move(es)), c});
  }
  return Poly::from_terms(new_s, std::move(out));
}

Poly with_comps(const Poly& f, int new_s) { return shift_components(f, 0, new_s); }

Poly poly_divexact(const Poly& f, const Poly& g) {
  if (g.is_zero()) throw StructuralError("poly_divexact: division by zero polynomial");
  if (f.comps() != g.comps()) throw StructuralError("Poly: mismatched component counts");
  Poly rem = f;
  std::vector<Poly::Term> q;
  const auto& glead = g.terms().front();
  while (!rem.is_zero()) {
    const auto& rlead = rem.terms().front();
    if (!rlead.first.divisible_by(glead.first))
      throw StructuralError("poly_divexact: not divisible");
    PMonomial qm = rlead.first.divided_by(glead.first);
    Rational qc = rlead.second / glead.second;
    q.push_back({qm, qc});
    Poly sub = g * Poly::from_terms(g.comps(), {{qm, qc}});
    rem = rem - sub;
  }
  return Poly::from_terms(f.comps(), std::move(q));
}

LaurentPoly::LaurentPoly(const Rational& c) {
  if (!c.is_zero()) c_[0] = c;
}

LaurentPoly LaurentPoly::monomial(int k, const Rational& c) {
  LaurentPoly p;
  if (!c.is_zero()) p.c_[k] = c;
  return p;
}

Rational LaurentPoly::coeff(int k) const {
  auto it = c_.find(k);
  return it == c_.end() ? Rational(0) : it->second;
}

int LaurentPoly::min_exp() const {
  if (c_.empty()) throw StructuralError("LaurentPoly: zero has no support");
  return c_.begin()->first;
}

int LaurentPoly::max_exp() const {
  if (c_.empty()) throw StructuralError("LaurentPoly: zero has no support");
  return c_.rbegin()->first;
}

void LaurentPoly::set(int k, const Rational& c) {
  if (c.is_zero())
    c_.erase(k);
  else
    c_[k] = c;
}

LaurentPoly operator+(const LaurentPoly& a, const LaurentPoly& b) {
  LaurentPoly r = a;
  for (auto& [k, c] : b.c_) r.set(k, r.coeff(k) + c);
  return r;
}

LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
  LaurentPoly r;
  for (auto& [ka, ca] : a.c_)
    for (auto& [kb, cb] : b.c_) r.set(ka + kb, r.coeff(ka + kb) + ca * cb);
  return r;
}

LaurentPoly LaurentPoly::scaled(const Rational& c) const {
  LaurentPoly r;
  if (c.is_zero()) return r;
  for (auto& [k, v] : c_) r.c_[k] = v * c;
  return r;
}

Partition::Partition(std::vector<int> p) : parts(std::move(p)) {
  while (!parts.empty() && parts.back() == 0) parts.pop_back();
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (parts[i] <= 0) throw InputError("Partition: parts must be positive");
    if (i > 0 && parts[i] > parts[i - 1])
      throw InputError("Partition: parts must be weakly decreasing");
  }
}

int Partition::weight() const {
  int w = 0;
  for (int p : parts) w += p;
  return w;
}

StrictPartition::StrictPartition(std::vector<int> p) : parts(std::move(p)) {
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (parts[i] < 0) throw InputError("StrictPartition: parts must be non-negative");
    if (i > 0 && parts[i] >= parts[i - 1])
      throw InputError("StrictPartition: parts must be strictly decreasing");
  }
}

int StrictPartition::weight() const {
  int w = 0;
  for (int p : parts) w += p;
  return w;
}

ShiftVector::ShiftVector(std::map<int, Rational> m) : c(std::move(m)) {
  std::erase_if(c, [](const auto& kv) { return kv.second.is_zero(); });
  for (auto& [n, v] : c)
    if (n < 1) throw InputError("ShiftVector: indices must be >= 1");
}

Rational ShiftVector::at(int n) const {
  auto it = c.find(n);
  return it == c.end() ? Rational(0) : it->second;
}

}  // namespace tauforge
