#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <random>
#include <vector>

#include "tauforge/errors.hpp"
#include "tauforge/linalg.hpp"
#include "tauforge/par.hpp"
#include "tauforge/poly.hpp"
#include "test_util.hpp"

using namespace tauforge;
using testutil::random_poly;
using testutil::random_rational;

TEST_CASE("rational canonical form") {
  CHECK(Rational(2, 4) == Rational(1, 2));
  CHECK(Rational(3, -6) == Rational(-1, 2));
  CHECK(Rational(-4, -2) == Rational(2));
  CHECK(Rational(0, 7).str() == "0");
  CHECK(Rational(0, 7).den_str() == "1");
  CHECK_THROWS_AS(Rational(1, 0), StructuralError);
}

TEST_CASE("rational arithmetic and comparisons") {
  CHECK(Rational(1, 2) + Rational(1, 3) == Rational(5, 6));
  CHECK(Rational(1, 2) - Rational(1, 3) == Rational(1, 6));
  CHECK(Rational(2, 3) * Rational(3, 4) == Rational(1, 2));
  CHECK(Rational(2, 3) / Rational(4, 9) == Rational(3, 2));
  CHECK_THROWS_AS(Rational(1) / Rational(0), StructuralError);
  CHECK(Rational(-1, 2) < Rational(1, 3));
  CHECK(Rational(-5).abs() == Rational(5));
  CHECK(Rational(3, 2).sign() == 1);
  CHECK(Rational(-3, 2).sign() == -1);
  CHECK(Rational(0).sign() == 0);
}

TEST_CASE("rational parse round trip") {
  CHECK(Rational::parse("3/4") == Rational(3, 4));
  CHECK(Rational::parse("-7") == Rational(-7));
  CHECK(Rational::parse("0") == Rational(0));
  CHECK(Rational::parse("6/4") == Rational(3, 2));
  CHECK(Rational::parse("-6/4").str() == "-3/2");
  CHECK_THROWS_AS(Rational::parse(""), InputError);
  CHECK_THROWS_AS(Rational::parse("a"), InputError);
  CHECK_THROWS_AS(Rational::parse("1/"), InputError);
  CHECK_THROWS_AS(Rational::parse("1/0"), InputError);
  CHECK_THROWS_AS(Rational::parse("1/02"), InputError);
  CHECK_THROWS_AS(Rational::parse("1/-2"), InputError);
  CHECK_THROWS_AS(Rational::parse("1.5"), InputError);
  CHECK_THROWS_AS(Rational::parse("+3"), InputError);
}

TEST_CASE("rational string forms") {
  CHECK(Rational(5, 3).str() == "5/3");
  CHECK(Rational(-5, 3).str() == "-5/3");
  CHECK(Rational(7).str() == "7");
  CHECK(Rational(5, 3).num_str() == "5");
  CHECK(Rational(5, 3).den_str() == "3");
}

TEST_CASE("monomial basics") {
  PMonomial one = PMonomial::one();
  CHECK(one.is_one());
  CHECK(one.total_weighted_degree() == 0);

  PMonomial m = PMonomial::var(1, 3, 2).times(PMonomial::var(2, 1));
  CHECK(m.total_weighted_degree() == 7);
  CHECK(m.weighted_degree(1) == 6);
  CHECK(m.weighted_degree(2) == 1);
  CHECK(m.exponent(1, 3) == 2);
  CHECK(m.exponent(2, 1) == 1);
  CHECK(m.exponent(1, 1) == 0);
  CHECK(m.max_comp() == 2);

  CHECK(m.divisible_by(PMonomial::var(1, 3)));
  CHECK_FALSE(m.divisible_by(PMonomial::var(1, 3, 3)));
  CHECK(m.divided_by(PMonomial::var(2, 1)) == PMonomial::var(1, 3, 2));

  PMonomial merged = PMonomial::from_entries(
      {{var_key(1, 2), 1}, {var_key(1, 1), 2}, {var_key(1, 2), 1}, {var_key(2, 1), 0}});
  CHECK(merged == PMonomial::var(1, 1, 2).times(PMonomial::var(1, 2, 2)));
}

TEST_CASE("canonical term order") {
  // higher total weighted degree first
  CHECK(canonical_cmp(PMonomial::var(1, 3), PMonomial::var(1, 1)) < 0);
  // within a degree: larger exponent at the first variable in ascending (comp, idx)
  PMonomial p1sq = PMonomial::var(1, 1, 2);
  PMonomial p2 = PMonomial::var(1, 2);
  CHECK(canonical_cmp(p1sq, p2) < 0);

  PMonomial p1cb = PMonomial::var(1, 1, 3);
  PMonomial p1p2 = PMonomial::var(1, 1).times(PMonomial::var(1, 2));
  PMonomial p3 = PMonomial::var(1, 3);
  CHECK(canonical_cmp(p1cb, p1p2) < 0);
  CHECK(canonical_cmp(p1p2, p3) < 0);

  // components enter the variable scan before indices
  CHECK(canonical_cmp(PMonomial::var(1, 1), PMonomial::var(2, 1)) < 0);
  CHECK(canonical_cmp(p3, p3) == 0);
}

TEST_CASE("poly construction and term layout") {
  Poly f = Poly::from_terms(
      1, {{PMonomial::var(1, 2), Rational(1)},
          {PMonomial::var(1, 1, 2), Rational(1, 2)},
          {PMonomial::var(1, 2), Rational(-1)},
          {PMonomial::one(), Rational(3)}});
  REQUIRE(f.size() == 2);
  CHECK(f.terms()[0].first == PMonomial::var(1, 1, 2));
  CHECK(f.terms()[1].first == PMonomial::one());
  CHECK(f.coeff(PMonomial::var(1, 2)).is_zero());
  CHECK(f.constant_term() == Rational(3));

  CHECK(Poly::constant(2, Rational(0)).is_zero());
  CHECK_THROWS_AS(Poly(0), StructuralError);
  CHECK_THROWS_AS(Poly::variable(1, 2, 1), StructuralError);
  CHECK_THROWS_AS(Poly::from_terms(1, {{PMonomial::var(2, 1), Rational(1)}}), StructuralError);
}

TEST_CASE("poly ring laws on random inputs") {
  std::mt19937_64 rng(20260401);
  for (int trial = 0; trial < 30; ++trial) {
    int comps = 1 + static_cast<int>(rng() % 3);
    Poly a = random_poly(rng, comps), b = random_poly(rng, comps), c = random_poly(rng, comps);
    CHECK(a + b == b + a);
    CHECK((a + b) + c == a + (b + c));
    CHECK(a * b == b * a);
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK(a - a == Poly::zero(comps));
    CHECK(a * Poly::constant(comps, Rational(1)) == a);
    CHECK((a * Poly::zero(comps)).is_zero());
    CHECK(a.scaled(Rational(-2, 3)) == a * Poly::constant(comps, Rational(-2, 3)));
  }
  CHECK_THROWS_AS(Poly::zero(1) + Poly::zero(2), StructuralError);
  CHECK_THROWS_AS(Poly::zero(1) * Poly::zero(2), StructuralError);
}

TEST_CASE("partial derivative") {
  Poly p1 = Poly::variable(1, 1, 1), p2 = Poly::variable(1, 1, 2);
  Poly f = p1 * p1 * p2;
  CHECK(poly_partial(f, 1, 1) == p1 * p2 * Poly::constant(1, Rational(2)));
  CHECK(poly_partial(f, 1, 2) == p1 * p1);
  CHECK(poly_partial(f, 1, 3).is_zero());
  CHECK_THROWS_AS(poly_partial(f, 2, 1), StructuralError);

  std::mt19937_64 rng(20260402);
  for (int trial = 0; trial < 20; ++trial) {
    Poly a = random_poly(rng, 2), b = random_poly(rng, 2);
    Poly lhs = poly_partial(a * b, 2, 1);
    Poly rhs = poly_partial(a, 2, 1) * b + a * poly_partial(b, 2, 1);
    CHECK(lhs == rhs);
  }
}

TEST_CASE("degrees and predicates") {
  Poly f = Poly::variable(2, 1, 3) * Poly::variable(2, 2, 1) + Poly::variable(2, 1, 1);
  CHECK(weighted_degree(f) == 4);
  CHECK(weighted_degree(f, 1) == 3);
  CHECK(weighted_degree(f, 2) == 1);
  CHECK(weighted_degree(Poly::zero(1)) == kDegNegInf);
  CHECK_FALSE(is_homogeneous(f));
  CHECK(is_homogeneous(Poly::variable(1, 1, 2) + Poly::variable(1, 1, 1) * Poly::variable(1, 1, 1)));
  CHECK(is_homogeneous(Poly::zero(3)));
  CHECK(odd_indices_only(Poly::variable(1, 1, 3) * Poly::variable(1, 1, 1)));
  CHECK_FALSE(odd_indices_only(Poly::variable(1, 1, 2)));
}

TEST_CASE("component relabeling") {
  Poly f = Poly::variable(1, 1, 2) + Poly::constant(1, Rational(5));
  Poly g = shift_components(f, 1, 3);
  CHECK(g.comps() == 3);
  CHECK(g == Poly::variable(3, 2, 2) + Poly::constant(3, Rational(5)));
  CHECK(shift_components(g, -1, 1) == f);
  CHECK(with_comps(f, 4).comps() == 4);
  CHECK(with_comps(with_comps(f, 4), 1) == f);
  CHECK_THROWS_AS(with_comps(g, 1), StructuralError);
}

TEST_CASE("exact division") {
  std::mt19937_64 rng(20260403);
  for (int trial = 0; trial < 25; ++trial) {
    Poly f = random_poly(rng, 2), g = random_poly(rng, 2);
    if (g.is_zero()) continue;
    CHECK(poly_divexact(f * g, g) == f);
  }
  Poly p1 = Poly::variable(1, 1, 1);
  CHECK_THROWS_AS(poly_divexact(p1 * p1 + Poly::constant(1, Rational(1)), p1), StructuralError);
  CHECK_THROWS_AS(poly_divexact(p1, Poly::zero(1)), StructuralError);
}

TEST_CASE("laurent polynomials") {
  LaurentPoly a = LaurentPoly::monomial(-2, Rational(1, 2));
  LaurentPoly b = LaurentPoly::monomial(3, Rational(4));
  LaurentPoly s = a + b;
  CHECK(s.coeff(-2) == Rational(1, 2));
  CHECK(s.coeff(3) == Rational(4));
  CHECK(s.coeff(0).is_zero());
  CHECK(s.min_exp() == -2);
  CHECK(s.max_exp() == 3);
  CHECK((a * b).coeff(1) == Rational(2));
  CHECK((a + a.scaled(Rational(-1))).is_zero());
  CHECK_THROWS_AS(LaurentPoly().min_exp(), StructuralError);
  LaurentPoly c;
  c.set(5, Rational(1));
  c.set(5, Rational(0));
  CHECK(c.is_zero());
}

TEST_CASE("partitions") {
  Partition lam({4, 2, 2, 0, 0});
  CHECK(lam.size() == 3);
  CHECK(lam.weight() == 8);
  CHECK_THROWS_AS(Partition({2, 3}), InputError);
  CHECK_THROWS_AS(Partition({2, -1}), InputError);

  StrictPartition mu({5, 3, 0});
  CHECK(mu.size() == 3);
  CHECK(mu.weight() == 8);
  CHECK_THROWS_AS(StrictPartition({3, 3}), InputError);
  CHECK_THROWS_AS(StrictPartition({3, -1}), InputError);

  ShiftVector c({{1, Rational(1)}, {2, Rational(0)}, {3, Rational(-1, 2)}});
  CHECK(c.at(1) == Rational(1));
  CHECK(c.at(2).is_zero());
  CHECK(c.c.size() == 2);
  CHECK_THROWS_AS(ShiftVector({{0, Rational(1)}}), InputError);
}

namespace {

PolyMatrix random_matrix(std::mt19937_64& rng, int n, int comps = 1) {
  PolyMatrix m(n, std::vector<Poly>(n, Poly::zero(comps)));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m[i][j] = random_poly(rng, comps, 3, 2, 1);
  return m;
}

PolyMatrix random_skew(std::mt19937_64& rng, int n) {
  PolyMatrix m(n, std::vector<Poly>(n, Poly::zero(1)));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      Poly e = random_poly(rng, 1, 3, 2, 1);
      m[i][j] = e;
      m[j][i] = -e;
    }
  return m;
}

}  // namespace

TEST_CASE("determinant matches cofactor oracle") {
  std::mt19937_64 rng(20260404);
  for (int n = 0; n <= 5; ++n)
    for (int trial = 0; trial < 4; ++trial) {
      PolyMatrix m = random_matrix(rng, n);
      CHECK(det_poly(m) == det_poly_cofactor(m));
    }
  // n = 7 exercises the fraction-free elimination path
  PolyMatrix big = random_matrix(rng, 7);
  CHECK(det_poly(big) == det_poly_cofactor(big));
}

TEST_CASE("determinant structure") {
  CHECK(det_poly({}) == Poly::constant(1, Rational(1)));
  Poly p2 = Poly::variable(1, 1, 2);
  CHECK(det_poly({{p2}}) == p2);

  std::mt19937_64 rng(20260405);
  PolyMatrix m = random_matrix(rng, 4);
  Poly d = det_poly(m);
  std::swap(m[1], m[3]);
  CHECK(det_poly(m) == -d);

  // duplicate rows kill the determinant, also on the elimination path
  for (int n : {4, 7}) {
    PolyMatrix s = random_matrix(rng, n);
    s[n - 1] = s[0];
    CHECK(det_poly(s).is_zero());
  }

  CHECK_THROWS_AS(det_poly({{Poly::zero(1), Poly::zero(1)}}), StructuralError);
  PolyMatrix ragged = {{Poly::zero(1), Poly::zero(1)}, {Poly::zero(1)}};
  CHECK_THROWS_AS(det_poly(ragged), StructuralError);
}

TEST_CASE("pfaffian") {
  CHECK(pfaffian_poly({}) == Poly::constant(1, Rational(1)));

  std::mt19937_64 rng(20260406);
  for (int n : {2, 4, 6})
    for (int trial = 0; trial < 3; ++trial) {
      PolyMatrix m = random_skew(rng, n);
      Poly pf = pfaffian_poly(m);
      CHECK(pf * pf == det_poly(m));
    }

  Poly a = Poly::variable(1, 1, 1);
  PolyMatrix two = {{Poly::zero(1), a}, {-a, Poly::zero(1)}};
  CHECK(pfaffian_poly(two) == a);

  PolyMatrix notskew = {{Poly::zero(1), a}, {a, Poly::zero(1)}};
  CHECK_THROWS_AS(pfaffian_poly(notskew), StructuralError);
  PolyMatrix baddiag = {{a, a}, {-a, Poly::zero(1)}};
  CHECK_THROWS_AS(pfaffian_poly(baddiag), StructuralError);
  PolyMatrix odd = {{Poly::zero(1)}};
  CHECK_THROWS_AS(pfaffian_poly(odd), StructuralError);
}

TEST_CASE("parallel runner") {
  CHECK(par::max_threads() >= 1);
  CHECK(par::use_parallel(par::Exec::Serial) == false);

  std::vector<long> serial(257, 0), parallel(257, 0);
  par::for_n(par::Exec::Serial, serial.size(), [&](std::size_t i) { serial[i] = 3 * (long)i + 1; });
  par::for_n(par::Exec::Parallel, parallel.size(),
             [&](std::size_t i) { parallel[i] = 3 * (long)i + 1; });
  CHECK(serial == parallel);

  setenv("TAUFORGE_THREADS", "1", 1);
  CHECK(par::max_threads() == 1);
  unsetenv("TAUFORGE_THREADS");
}
