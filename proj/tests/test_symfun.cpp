#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <vector>

#include "tauforge/errors.hpp"
#include "tauforge/linalg.hpp"
#include "tauforge/poly.hpp"
#include "tauforge/series.hpp"
#include "test_util.hpp"

using namespace tauforge;
using testutil::random_poly;

namespace {

Poly P(int idx) { return Poly::variable(1, 1, idx); }
Poly C(const Rational& c) { return Poly::constant(1, c); }

// Coefficients of exp(sum_n a[n] u^n) up to u^cutoff, by multiplying the
// truncated factor expansions exp(a_n u^n) = sum_m a_n^m u^{nm} / m!.
// Independent of the recurrences inside series_table.
std::vector<Poly> exp_series_oracle(const std::vector<Poly>& a, int cutoff, int comps) {
  std::vector<Poly> out(static_cast<std::size_t>(cutoff) + 1, Poly::zero(comps));
  out[0] = Poly::constant(comps, Rational(1));
  for (int n = 1; n <= cutoff; ++n) {
    if (n >= static_cast<int>(a.size()) || a[static_cast<std::size_t>(n)].is_zero()) continue;
    std::vector<Poly> factor(static_cast<std::size_t>(cutoff) + 1, Poly::zero(comps));
    Poly pow = Poly::constant(comps, Rational(1));
    Rational mfact(1);
    for (int m = 0; n * m <= cutoff; ++m) {
      if (m > 0) {
        pow = pow * a[static_cast<std::size_t>(n)];
        mfact *= Rational(m);
      }
      factor[static_cast<std::size_t>(n * m)] = pow.scaled(Rational(1) / mfact);
    }
    std::vector<Poly> next(static_cast<std::size_t>(cutoff) + 1, Poly::zero(comps));
    for (int i = 0; i <= cutoff; ++i)
      for (int j = 0; i + j <= cutoff; ++j)
        next[static_cast<std::size_t>(i + j)] +=
            out[static_cast<std::size_t>(i)] * factor[static_cast<std::size_t>(j)];
    out = next;
  }
  return out;
}

std::vector<Poly> exponent_coeffs(SeriesKind kind, int cutoff) {
  std::vector<Poly> a(static_cast<std::size_t>(cutoff) + 1, Poly::zero(1));
  for (int n = 1; n <= cutoff; ++n) {
    switch (kind) {
      case SeriesKind::H:
        a[static_cast<std::size_t>(n)] = P(n).scaled(Rational(1, n));
        break;
      case SeriesKind::E:
        a[static_cast<std::size_t>(n)] = P(n).scaled(Rational(n % 2 == 1 ? 1 : -1, n));
        break;
      case SeriesKind::Sexp:
        if (n % 2 == 1) a[static_cast<std::size_t>(n)] = P(n).scaled(Rational(1, n));
        break;
      case SeriesKind::Q:
        if (n % 2 == 1) a[static_cast<std::size_t>(n)] = P(n).scaled(Rational(2, n));
        break;
    }
  }
  return a;
}

}  // namespace

TEST_CASE("series tables match the exponential oracle") {
  const int K = 7;
  for (SeriesKind kind : {SeriesKind::H, SeriesKind::E, SeriesKind::Q, SeriesKind::Sexp}) {
    SeriesTable t = series_table(kind, K);
    std::vector<Poly> want = exp_series_oracle(exponent_coeffs(kind, K), K, 1);
    for (int k = 0; k <= K; ++k) {
      CHECK(t.at(k) == want[static_cast<std::size_t>(k)]);
      CHECK(is_homogeneous(t.at(k)));
      CHECK(weighted_degree(t.at(k)) == (k == 0 ? 0 : k));
    }
  }
}

TEST_CASE("pinned low coefficients") {
  SeriesTable h = series_table(SeriesKind::H, 3);
  SeriesTable e = series_table(SeriesKind::E, 3);
  SeriesTable q = series_table(SeriesKind::Q, 3);

  CHECK(h.at(0) == C(Rational(1)));
  CHECK(h.at(1) == P(1));
  CHECK(h.at(2) == (P(1) * P(1) + P(2)).scaled(Rational(1, 2)));
  CHECK(h.at(3) == (P(1) * P(1) * P(1)).scaled(Rational(1, 6)) +
                       (P(1) * P(2)).scaled(Rational(1, 2)) + P(3).scaled(Rational(1, 3)));
  CHECK(e.at(2) == (P(1) * P(1) - P(2)).scaled(Rational(1, 2)));
  CHECK(q.at(1) == P(1).scaled(Rational(2)));
  CHECK(q.at(2) == (P(1) * P(1)).scaled(Rational(2)));
  CHECK(q.at(3) == (P(1) * P(1) * P(1)).scaled(Rational(4, 3)) + P(3).scaled(Rational(2, 3)));
}

TEST_CASE("series table access") {
  SeriesTable h = series_table(SeriesKind::H, 2);
  CHECK(h.cutoff() == 2);
  CHECK(h.at(-1).is_zero());
  CHECK(h.at(-5).is_zero());
  CHECK_THROWS_AS(h.at(3), StructuralError);
  CHECK_THROWS_AS(series_table(SeriesKind::H, -1), StructuralError);
  CHECK_THROWS_AS(series_table(SeriesKind::H, 2, 2, 3), StructuralError);

  // Q and Sexp tables stay inside the odd-index subring
  for (SeriesKind kind : {SeriesKind::Q, SeriesKind::Sexp}) {
    SeriesTable t = series_table(kind, 6);
    for (int k = 0; k <= 6; ++k) CHECK(odd_indices_only(t.at(k)));
  }
}

TEST_CASE("inverse and square relations between the series") {
  const int K = 7;
  SeriesTable h = series_table(SeriesKind::H, K);
  SeriesTable e = series_table(SeriesKind::E, K);
  SeriesTable q = series_table(SeriesKind::Q, K);
  SeriesTable s = series_table(SeriesKind::Sexp, K);

  // H(u) E(-u) = 1
  for (int k = 0; k <= K; ++k) {
    Poly acc = Poly::zero(1);
    for (int i = 0; i <= k; ++i) {
      Poly term = e.at(k - i) * h.at(i);
      acc += ((k - i) % 2 == 0) ? term : -term;
    }
    CHECK(acc == (k == 0 ? C(Rational(1)) : Poly::zero(1)));
  }

  // Q(u) = Sexp(u)^2
  for (int k = 0; k <= K; ++k) {
    Poly acc = Poly::zero(1);
    for (int i = 0; i <= k; ++i) acc += s.at(i) * s.at(k - i);
    CHECK(acc == q.at(k));
  }
}

TEST_CASE("derivative structure of the tables") {
  const int K = 6;
  SeriesTable h = series_table(SeriesKind::H, K);
  SeriesTable e = series_table(SeriesKind::E, K);
  SeriesTable q = series_table(SeriesKind::Q, K);
  SeriesTable s = series_table(SeriesKind::Sexp, K);
  for (int k = 0; k <= K; ++k)
    for (int n = 1; n <= k; ++n) {
      CHECK(poly_partial(h.at(k), 1, n) == h.at(k - n).scaled(Rational(1, n)));
      CHECK(poly_partial(e.at(k), 1, n) ==
            e.at(k - n).scaled(Rational(n % 2 == 1 ? 1 : -1, n)));
      CHECK(poly_partial(s.at(k), 1, n) ==
            (n % 2 == 1 ? s.at(k - n).scaled(Rational(1, n)) : Poly::zero(1)));
      CHECK(poly_partial(q.at(k), 1, n) ==
            (n % 2 == 1 ? q.at(k - n).scaled(Rational(2, n)) : Poly::zero(1)));
    }
}

TEST_CASE("multi-component tables relabel the one-component table") {
  SeriesTable ref = series_table(SeriesKind::H, 5);
  SeriesTable t = series_table(SeriesKind::H, 5, 3, 2);
  for (int k = 0; k <= 5; ++k) {
    CHECK(t.at(k).comps() == 3);
    CHECK(t.at(k) == shift_components(ref.at(k), 1, 3));
  }
  CHECK(elementary_schur(4, 3, 2) == shift_components(elementary_schur(4), 1, 3));
}

TEST_CASE("schur coefficients") {
  CHECK(elementary_schur(-2).is_zero());
  CHECK(elementary_schur(0) == C(Rational(1)));
  CHECK(elementary_schur(3) ==
        (P(1) * P(1) * P(1)).scaled(Rational(1, 6)) + (P(1) * P(2)).scaled(Rational(1, 2)) +
            P(3).scaled(Rational(1, 3)));
  SeriesTable h = series_table(SeriesKind::H, 6);
  for (int k = 0; k <= 6; ++k) CHECK(elementary_schur(k) == h.at(k));
}

TEST_CASE("determinant form on partitions") {
  CHECK(jacobi_trudi(Partition()) == C(Rational(1)));
  CHECK(jacobi_trudi(Partition({4})) == elementary_schur(4));
  // column partitions give the alternating series coefficients
  SeriesTable e = series_table(SeriesKind::E, 4);
  CHECK(jacobi_trudi(Partition({1, 1})) == e.at(2));
  CHECK(jacobi_trudi(Partition({1, 1, 1})) == e.at(3));
  // pinned low cases, written with t_n = p_n / n cleared out
  CHECK(jacobi_trudi(Partition({1, 1})) == (P(1) * P(1) - P(2)).scaled(Rational(1, 2)));
  CHECK(jacobi_trudi(Partition({2, 1})) ==
        (P(1) * P(1) * P(1)).scaled(Rational(1, 3)) - P(3).scaled(Rational(1, 3)));

  // hook-length check: coefficient of p_1^|lambda| is (number of standard
  // tableaux) / |lambda|!, pinned here for (2, 1) as 2/6 = 1/3
  PMonomial p1cubed = PMonomial::var(1, 1, 3);
  CHECK(jacobi_trudi(Partition({2, 1})).coeff(p1cubed) == Rational(1, 3));
}

TEST_CASE("scalar shifts") {
  ShiftVector e1({{1, Rational(1)}});
  std::vector<Rational> s = schur_scalars(e1, 4);
  CHECK(s[0] == Rational(1));
  CHECK(s[1] == Rational(1));
  CHECK(s[2] == Rational(1, 2));
  CHECK(s[3] == Rational(1, 6));
  CHECK(s[4] == Rational(1, 24));

  ShiftVector e2({{2, Rational(1)}});
  std::vector<Rational> s2 = schur_scalars(e2, 5);
  CHECK(s2[1].is_zero());
  CHECK(s2[2] == Rational(1));
  CHECK(s2[3].is_zero());
  CHECK(s2[4] == Rational(1, 2));
  CHECK(s2[5].is_zero());
}

TEST_CASE("shifted coefficients") {
  ShiftVector e1({{1, Rational(1)}});
  CHECK(shifted_elementary_schur(2, e1) ==
        elementary_schur(2) + elementary_schur(1) + C(Rational(1, 2)));
  CHECK(shifted_elementary_schur(-1, e1).is_zero());

  ShiftVector zero;
  SeriesTable q = series_table(SeriesKind::Q, 5);
  for (int k = 0; k <= 5; ++k) {
    CHECK(shifted_series_coeff(q, zero, k) == q.at(k));
    CHECK(shifted_elementary_schur(k, zero) == elementary_schur(k));
  }

  // shifting only moves the constant directions: p-derivatives are unchanged
  ShiftVector c({{1, Rational(2)}, {3, Rational(-1, 3)}});
  SeriesTable h = series_table(SeriesKind::H, 5);
  for (int k = 1; k <= 5; ++k)
    CHECK(poly_partial(shifted_series_coeff(h, c, k), 1, 1) ==
          shifted_series_coeff(h, c, k - 1));
}

TEST_CASE("neutral pair coefficients") {
  SeriesTable q = series_table(SeriesKind::Q, 4);
  CHECK(q_pair(3, 0) == q.at(3));
  CHECK(q_pair(4, 4).is_zero());
  CHECK(q_pair(0, 0).is_zero());
  CHECK_THROWS_AS(q_pair(-1, 0), InputError);
  CHECK_THROWS_AS(q_pair(2, -3), InputError);

  CHECK(q_pair(2, 1) == q.at(2) * q.at(1) - q.at(3).scaled(Rational(2)));
  CHECK(q_pair(2, 1) ==
        (P(1) * P(1) * P(1)).scaled(Rational(4, 3)) - P(3).scaled(Rational(4, 3)));
  for (int a = 0; a <= 4; ++a)
    for (int b = 0; b <= 4; ++b) CHECK(q_pair(a, b) == -q_pair(b, a));
}

TEST_CASE("pfaffian form on strict partitions") {
  CHECK(q_schur(StrictPartition()) == C(Rational(1)));
  SeriesTable q = series_table(SeriesKind::Q, 5);
  for (int k = 1; k <= 5; ++k) CHECK(q_schur(StrictPartition({k})) == q.at(k));
  CHECK(q_schur(StrictPartition({2, 1})) == q_pair(2, 1));

  // appending a zero part leaves the polynomial unchanged (and swaps the
  // pfaffian route for the expansion route or back)
  CHECK(q_schur(StrictPartition({2, 1, 0})) == q_schur(StrictPartition({2, 1})));
  CHECK(q_schur(StrictPartition({3, 2, 1, 0})) == q_schur(StrictPartition({3, 2, 1})));
  CHECK(q_schur(StrictPartition({4, 1, 0})) == q_schur(StrictPartition({4, 1})));

  for (auto& parts : {std::vector<int>{3, 1}, {4, 2}, {3, 2, 1}, {5, 3, 2, 1}}) {
    StrictPartition lam(parts);
    Poly f = q_schur(lam);
    CHECK(is_homogeneous(f));
    CHECK(weighted_degree(f) == lam.weight());
    CHECK(odd_indices_only(f));
  }
}

TEST_CASE("adjoint action") {
  SeriesTable h = series_table(SeriesKind::H, 4);
  CHECK(adjoint_apply(h.at(2), h.at(2)) == C(Rational(1)));
  CHECK(adjoint_apply(P(1), P(1) * P(1)) == P(1).scaled(Rational(2)));
  CHECK(adjoint_apply(P(2), P(2)) == C(Rational(2)));
  CHECK(adjoint_apply(C(Rational(3)), P(1)) == P(1).scaled(Rational(3)));
  CHECK(adjoint_apply(P(3), P(1)).is_zero());
  CHECK_THROWS_AS(adjoint_apply(Poly::zero(1), Poly::zero(2)), StructuralError);

  std::mt19937_64 rng(20260407);
  for (int trial = 0; trial < 15; ++trial) {
    Poly f = random_poly(rng, 1), g = random_poly(rng, 1), x = random_poly(rng, 1);
    // substitution is a ring map into commuting operators
    CHECK(adjoint_apply(f * g, x) == adjoint_apply(f, adjoint_apply(g, x)));
    CHECK(adjoint_apply(f + g, x) == adjoint_apply(f, x) + adjoint_apply(g, x));
  }
}

TEST_CASE("adjoint exchange identities") {
  const int K = 4;
  SeriesTable h = series_table(SeriesKind::H, K);
  SeriesTable e = series_table(SeriesKind::E, K);
  std::mt19937_64 rng(20260408);
  for (int trial = 0; trial < 6; ++trial) {
    Poly f = random_poly(rng, 1, 4, 4, 2);
    for (int s = 1; s <= K; ++s)
      for (int r = 1; r <= K; ++r) {
        Poly hh = adjoint_apply(h.at(s), h.at(r) * f) -
                  adjoint_apply(h.at(s - 1), h.at(r - 1) * f) -
                  h.at(r) * adjoint_apply(h.at(s), f);
        CHECK(hh.is_zero());
        Poly ee = adjoint_apply(e.at(s), e.at(r) * f) -
                  adjoint_apply(e.at(s - 1), e.at(r - 1) * f) -
                  e.at(r) * adjoint_apply(e.at(s), f);
        CHECK(ee.is_zero());
        Poly he = adjoint_apply(h.at(s), e.at(r) * f) - e.at(r) * adjoint_apply(h.at(s), f) -
                  e.at(r - 1) * adjoint_apply(h.at(s - 1), f);
        CHECK(he.is_zero());
        Poly eh = adjoint_apply(e.at(s), h.at(r) * f) - h.at(r) * adjoint_apply(e.at(s), f) -
                  h.at(r - 1) * adjoint_apply(e.at(s - 1), f);
        CHECK(eh.is_zero());
      }
  }
}
