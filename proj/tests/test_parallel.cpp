#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <vector>

#include "tauforge/fock.hpp"
#include "tauforge/par.hpp"
#include "tauforge/poly.hpp"
#include "tauforge/series.hpp"
#include "tauforge/taugen.hpp"
#include "tauforge/verify.hpp"

using namespace tauforge;

namespace {

FockVector charge0(const Poly& f) {
  FockVector v(f.comps());
  v.add(ChargeVector(static_cast<std::size_t>(f.comps()), 0), f);
  return v;
}

bool same_report(const VerificationReport& a, const VerificationReport& b) {
  if (a.identity != b.identity || a.passed != b.passed || a.residual != b.residual) return false;
  if (a.extras.size() != b.extras.size() || a.mode_ranges.size() != b.mode_ranges.size())
    return false;
  for (std::size_t i = 0; i < a.extras.size(); ++i)
    if (a.extras[i].name != b.extras[i].name || a.extras[i].passed != b.extras[i].passed)
      return false;
  for (std::size_t i = 0; i < a.mode_ranges.size(); ++i)
    if (a.mode_ranges[i].name != b.mode_ranges[i].name ||
        a.mode_ranges[i].lo != b.mode_ranges[i].lo || a.mode_ranges[i].hi != b.mode_ranges[i].hi)
      return false;
  return true;
}

SkpSpec worked_example() {
  SkpSpec spec;
  spec.s = 2;
  spec.l = 2;
  spec.A = {{LaurentPoly(Rational(1)), LaurentPoly(Rational(1))},
            {LaurentPoly(Rational(1)), LaurentPoly(Rational(1))}};
  spec.alpha = {0, 1};
  return spec;
}

}  // namespace

TEST_CASE("verifier reports agree across execution policies") {
  FockVector good = charge0(jacobi_trudi(Partition({3, 2, 1})));
  CHECK(same_report(verify_kp(good, par::Exec::Serial), verify_kp(good, par::Exec::Parallel)));

  Poly p1 = Poly::variable(1, 1, 1);
  FockVector bad = charge0(p1 * p1);
  CHECK(same_report(verify_kp(bad, par::Exec::Serial), verify_kp(bad, par::Exec::Parallel)));

  Poly q = q_schur(StrictPartition({4, 3, 1}));
  CHECK(same_report(verify_bkp(q, par::Exec::Serial), verify_bkp(q, par::Exec::Parallel)));
  Poly qbad = Poly::constant(1, Rational(1)) + q_schur(StrictPartition({3, 2, 1}));
  CHECK(same_report(verify_bkp(qbad, par::Exec::Serial), verify_bkp(qbad, par::Exec::Parallel)));

  FockVector skp = skp_coeff_full(worked_example());
  CHECK(same_report(verify_skp(skp, par::Exec::Serial), verify_skp(skp, par::Exec::Parallel)));

  Poly p3 = Poly::variable(1, 1, 3);
  Poly tau = p3.scaled(Rational(1, 3)) - (p1 * p1 * p1).scaled(Rational(1, 3));
  CHECK(same_report(verify_lkdv(charge0(tau), Partition({2}), 2, par::Exec::Serial),
                    verify_lkdv(charge0(tau), Partition({2}), 2, par::Exec::Parallel)));
  CHECK(same_report(verify_lkdv(charge0(elementary_schur(2)), Partition({2}), 1, par::Exec::Serial),
                    verify_lkdv(charge0(elementary_schur(2)), Partition({2}), 1,
                                par::Exec::Parallel)));
}

TEST_CASE("constructors agree across execution policies") {
  CHECK(skp_coeff_full(worked_example(), par::Exec::Serial) ==
        skp_coeff_full(worked_example(), par::Exec::Parallel));

  SkpClosedSpec closed;
  closed.s = 2;
  closed.l = 2;
  closed.b = {{Rational(1), Rational(2)}, {Rational(1), Rational(1)}};
  closed.M = {{0, -1}, {1, 0}};
  closed.c = {{ShiftVector{}, ShiftVector(std::map<int, Rational>{{1, Rational(1, 2)}})},
              {ShiftVector{}, ShiftVector{}}};
  closed.alpha = {1, 2};
  CHECK(skp_closed_form(closed, par::Exec::Serial) ==
        skp_closed_form(closed, par::Exec::Parallel));

  LkdvSpec spec;
  spec.lambda = Partition({2, 1});
  spec.r = 2;
  spec.N = {{2, 1}, {1, 2}};
  spec.b = {{Rational(1), Rational(1)}, {Rational(2), Rational(1)}};
  spec.c = {{ShiftVector{}, ShiftVector{}},
            {ShiftVector(std::map<int, Rational>{{1, Rational(1)}}), ShiftVector{}}};
  CHECK(lkdv_tau(spec, par::Exec::Serial) == lkdv_tau(spec, par::Exec::Parallel));
}

TEST_CASE("selfchecks agree across execution policies") {
  CHECK(same_report(selfcheck_relations(4, 3, 2, par::Exec::Serial),
                    selfcheck_relations(4, 3, 2, par::Exec::Parallel)));
  CHECK(same_report(selfcheck_suite("oracles", 0, 0, 1, 20260426, par::Exec::Serial),
                    selfcheck_suite("oracles", 0, 0, 1, 20260426, par::Exec::Parallel)));
}
