#pragma once

#include <gmpxx.h>

#include <iosfwd>
#include <string>

#include "tauforge/errors.hpp"

namespace tauforge {

// Arbitrary-precision rational. Invariants: gcd(num, den) = 1, den > 0,
// zero is 0/1. GMP's mpq arithmetic preserves canonical form, so only the
// constructors need to canonicalize.
class Rational {
 public:
  Rational() : v_(0) {}
  Rational(long n) : v_(static_cast<signed long>(n)) {}  // NOLINT: implicit by design
  Rational(int n) : v_(static_cast<signed long>(n)) {}   // NOLINT

  Rational(long num, long den) {
    if (den == 0) throw StructuralError("Rational: zero denominator");
    v_ = mpq_class(mpz_class(num), mpz_class(den));
    v_.canonicalize();
  }

  // Accepts "num" or "num/den" with den a positive integer literal.
  static Rational parse(const std::string& s) {
    auto digits = [](const std::string& t, std::size_t from, std::size_t to) {
      if (from >= to) return false;
      for (std::size_t i = from; i < to; ++i)
        if (t[i] < '0' || t[i] > '9') return false;
      return true;
    };
    std::size_t slash = s.find('/');
    std::string num = slash == std::string::npos ? s : s.substr(0, slash);
    std::size_t num_start = (!num.empty() && num[0] == '-') ? 1 : 0;
    if (!digits(num, num_start, num.size()))
      throw InputError("Rational: bad numerator in '" + s + "'");
    Rational r;
    if (slash == std::string::npos) {
      r.v_ = mpq_class(num);
    } else {
      if (!digits(s, slash + 1, s.size()) || s[slash + 1] == '0')
        throw InputError("Rational: bad denominator in '" + s + "'");
      r.v_ = mpq_class(s);
    }
    r.v_.canonicalize();
    return r;
  }

  bool is_zero() const { return sgn(v_) == 0; }
  int sign() const { return sgn(v_); }

  Rational operator-() const { return Rational(mpq_class(-v_)); }
  Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
  Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
  Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
  Rational& operator/=(const Rational& o) {
    if (o.is_zero()) throw StructuralError("Rational: division by zero");
    v_ /= o.v_;
    return *this;
  }

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
  friend bool operator!=(const Rational& a, const Rational& b) { return a.v_ != b.v_; }
  friend bool operator<(const Rational& a, const Rational& b) { return a.v_ < b.v_; }
  friend bool operator<=(const Rational& a, const Rational& b) { return a.v_ <= b.v_; }
  friend bool operator>(const Rational& a, const Rational& b) { return a.v_ > b.v_; }
  friend bool operator>=(const Rational& a, const Rational& b) { return a.v_ >= b.v_; }

  Rational abs() const { return sign() < 0 ? -*this : *this; }

  // "num" when den == 1, else "num/den".
  std::string str() const {
    if (v_.get_den() == 1) return v_.get_num().get_str();
    return v_.get_num().get_str() + "/" + v_.get_den().get_str();
  }

  std::string num_str() const { return v_.get_num().get_str(); }
  std::string den_str() const { return v_.get_den().get_str(); }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r);

 private:
  explicit Rational(mpq_class v) : v_(std::move(v)) {}
  mpq_class v_;
};

inline std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

}  // namespace tauforge
