#pragma once

#include <climits>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "tauforge/rational.hpp"

namespace tauforge {

// Variables are p^(a)_n with component a >= 1 and index n >= 1.
// Weighted degree: deg p^(a)_n = n, in every component and in total.
using VarKey = std::uint64_t;

inline VarKey var_key(int comp, int idx) {
  return (static_cast<VarKey>(static_cast<std::uint32_t>(comp)) << 32) |
         static_cast<std::uint32_t>(idx);
}
inline int key_comp(VarKey k) { return static_cast<int>(k >> 32); }
inline int key_idx(VarKey k) { return static_cast<int>(k & 0xffffffffu); }

// Product of variables with positive exponents, stored sorted by (comp, idx).
// The empty product is 1.
class PMonomial {
 public:
  PMonomial() = default;

  static PMonomial one() { return PMonomial(); }
  static PMonomial var(int comp, int idx, int exp = 1);

  const std::vector<std::pair<VarKey, int>>& entries() const { return e_; }
  bool is_one() const { return e_.empty(); }
  int total_weighted_degree() const { return deg_; }
  int weighted_degree(int comp) const;
  int max_comp() const { return e_.empty() ? 0 : key_comp(e_.back().first); }

  PMonomial times(const PMonomial& o) const;
  bool divisible_by(const PMonomial& o) const;
  PMonomial divided_by(const PMonomial& o) const;

  // Exponent of p^(comp)_idx, 0 when absent.
  int exponent(int comp, int idx) const;

  friend bool operator==(const PMonomial& a, const PMonomial& b) {
    return a.deg_ == b.deg_ && a.e_ == b.e_;
  }
  friend bool operator!=(const PMonomial& a, const PMonomial& b) { return !(a == b); }

  // Builds from possibly-unsorted entries; merges duplicates, drops zeros.
  static PMonomial from_entries(std::vector<std::pair<VarKey, int>> entries);

 private:
  std::vector<std::pair<VarKey, int>> e_;
  int deg_ = 0;  // total weighted degree, kept in sync with e_
};

// Canonical term order: graded by total weighted degree (higher first), ties
// broken lexicographically on (component, index, exponent) scanning variables
// in ascending (component, index); the larger exponent at the first
// difference comes first. Returns <0 if a precedes b, 0 if equal, >0 after.
int canonical_cmp(const PMonomial& a, const PMonomial& b);

struct MonoBefore {
  bool operator()(const PMonomial& a, const PMonomial& b) const {
    return canonical_cmp(a, b) < 0;
  }
};

// Distinguished "degree of the zero polynomial".
inline constexpr int kDegNegInf = INT_MIN;

// Sparse multivariate polynomial over Rational in a fixed number of
// components. Terms are kept in canonical order (leading term first) with no
// zero coefficients. All binary operations require equal component counts.
class Poly {
 public:
  using Term = std::pair<PMonomial, Rational>;

  Poly() : s_(1) {}
  explicit Poly(int s);

  static Poly zero(int s) { return Poly(s); }
  static Poly constant(int s, const Rational& c);
  static Poly variable(int s, int comp, int idx);  // p^(comp)_idx
  static Poly from_terms(int s, std::vector<Term> terms);

  int comps() const { return s_; }
  bool is_zero() const { return t_.empty(); }
  const std::vector<Term>& terms() const { return t_; }
  std::size_t size() const { return t_.size(); }

  Poly operator-() const;
  Poly scaled(const Rational& c) const;

  friend Poly operator+(const Poly& a, const Poly& b);
  friend Poly operator-(const Poly& a, const Poly& b);
  friend Poly operator*(const Poly& a, const Poly& b);
  Poly& operator+=(const Poly& o) { *this = *this + o; return *this; }
  Poly& operator-=(const Poly& o) { *this = *this - o; return *this; }
  Poly& operator*=(const Poly& o) { *this = *this * o; return *this; }

  friend bool operator==(const Poly& a, const Poly& b) {
    return a.s_ == b.s_ && a.t_ == b.t_;
  }
  friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

  Rational coeff(const PMonomial& m) const;
  Rational constant_term() const { return coeff(PMonomial::one()); }

 private:
  int s_;
  std::vector<Term> t_;
  static void check_same(const Poly& a, const Poly& b);
};

Poly poly_partial(const Poly& f, int comp, int idx);  // d/dp^(comp)_idx

int weighted_degree(const Poly& f);            // total; kDegNegInf for zero
int weighted_degree(const Poly& f, int comp);  // per component

bool is_homogeneous(const Poly& f);            // total weighted degree
bool odd_indices_only(const Poly& f);          // every variable index is odd

// Relabels components a -> a + offset and embeds into new_s components.
Poly shift_components(const Poly& f, int offset, int new_s);

// Reinterprets f with a different component count (terms must fit).
Poly with_comps(const Poly& f, int new_s);

// Exact division: g must divide f; StructuralError otherwise.
Poly poly_divexact(const Poly& f, const Poly& g);

// Laurent polynomial in one variable u: finite map exponent -> coefficient,
// no zero coefficients.
class LaurentPoly {
 public:
  LaurentPoly() = default;
  explicit LaurentPoly(const Rational& c);  // constant
  static LaurentPoly monomial(int k, const Rational& c);

  bool is_zero() const { return c_.empty(); }
  Rational coeff(int k) const;
  const std::map<int, Rational>& coeffs() const { return c_; }
  int min_exp() const;  // StructuralError when zero
  int max_exp() const;

  void set(int k, const Rational& c);

  friend LaurentPoly operator+(const LaurentPoly& a, const LaurentPoly& b);
  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b);
  LaurentPoly scaled(const Rational& c) const;
  friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) { return a.c_ == b.c_; }
  friend bool operator!=(const LaurentPoly& a, const LaurentPoly& b) { return a.c_ != b.c_; }

 private:
  std::map<int, Rational> c_;
};

// Weakly decreasing positive parts; trailing zeros in the input are dropped.
struct Partition {
  std::vector<int> parts;

  Partition() = default;
  explicit Partition(std::vector<int> p);
  int size() const { return static_cast<int>(parts.size()); }
  int weight() const;
};

// Strictly decreasing non-negative parts (so at most one trailing zero).
struct StrictPartition {
  std::vector<int> parts;

  StrictPartition() = default;
  explicit StrictPartition(std::vector<int> p);
  int size() const { return static_cast<int>(parts.size()); }
  int weight() const;
};

// Finite collection of rational shifts c = (c_1, c_2, ...), indices >= 1.
struct ShiftVector {
  std::map<int, Rational> c;

  ShiftVector() = default;
  explicit ShiftVector(std::map<int, Rational> m);
  Rational at(int n) const;
  bool is_zero() const { return c.empty(); }
};

}  // namespace tauforge
