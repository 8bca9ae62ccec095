#pragma once

#include <string>
#include <vector>

#include "tauforge/fock.hpp"
#include "tauforge/par.hpp"
#include "tauforge/poly.hpp"

namespace tauforge {

enum class Identity { KP, BKP, SKP, LKDV, RELATIONS };

std::string identity_name(Identity id);

// Inclusive mode interval actually summed for one operator family.
struct ModeRange {
  std::string name;
  int lo = 0;
  int hi = 0;
};

struct NamedCheck {
  std::string name;
  bool passed = true;
};

// passed holds exactly when residual has no sectors. extras carry named
// sub-checks (derivative constraints, self-test families); a failing
// relation embeds its difference into residual so the equivalence survives.
struct VerificationReport {
  Identity identity = Identity::KP;
  bool passed = false;
  TensorFockVector residual{1};
  std::vector<ModeRange> mode_ranges;
  std::vector<NamedCheck> extras;
};

// Residual of sum_n psi^+[n] tau (x) psi^-[1-n] tau over the finite mode
// range; one-component, charge-homogeneous, nonzero input required.
// range_margin widens every summation range on both sides (the residual
// must not change: vanishing modes contribute nothing).
VerificationReport verify_kp(const FockVector& tau, par::Exec exec = par::Exec::Auto,
                             int range_margin = 0);

// Residual of sum_n phi_n tau (x) (-1)^n phi_{-n} tau - tau (x) tau; the
// input must be nonzero and use odd indices only.
VerificationReport verify_bkp(const Poly& tau, par::Exec exec = par::Exec::Auto,
                              int range_margin = 0);

// Residual of sum_a sum_n psi^{+(a)}[n] tau (x) psi^{-(a)}[1-n] tau.
VerificationReport verify_skp(const FockVector& tau, par::Exec exec = par::Exec::Auto,
                              int range_margin = 0);

// The base residual plus, for j = 1..j_max, the shifted residuals
// sum_a sum_n psi^{+(a)}[n] tau (x) psi^{-(a)}[j lambda_a + 1 - n] tau.
// residual holds the first failing one. The time-derivative constraints
// sum_a j lambda_a d tau / d p^(a)_{j lambda_a} = 0 are reported as named
// extras with a per-sector breakdown; they do not affect passed.
VerificationReport verify_lkdv(const FockVector& tau, const Partition& lambda, int j_max,
                               par::Exec exec = par::Exec::Auto, int range_margin = 0);

// Operator-relation self-test: series convolutions plus every
// anticommutation and charge-multiplication relation on the full monomial
// basis of weighted degree <= max_degree, charges |m_a| <= 2, and mode
// indices bounded by max_mode.
VerificationReport selfcheck_relations(int max_degree, int max_mode, int s,
                                       par::Exec exec = par::Exec::Auto);

// Named sub-suite driver: "series", "clifford", "oracles" (randomized
// dual-route equalities, seeded), or "all".
VerificationReport selfcheck_suite(const std::string& suite, int max_degree, int max_mode,
                                   int s, unsigned long seed,
                                   par::Exec exec = par::Exec::Auto);

}  // namespace tauforge
