#include "tauforge/verify.hpp"

#include <algorithm>
#include <cstddef>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "tauforge/errors.hpp"
#include "tauforge/series.hpp"
#include "tauforge/taugen.hpp"

namespace tauforge {

std::string identity_name(Identity id) {
  switch (id) {
    case Identity::KP: return "kp";
    case Identity::BKP: return "bkp";
    case Identity::SKP: return "skp";
    case Identity::LKDV: return "lkdv";
    case Identity::RELATIONS: return "relations";
  }
  return "unknown";
}

namespace {

std::string charge_label(const ChargeVector& m) {
  std::string out = "[";
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(m[i]);
  }
  out += "]";
  return out;
}

void require_tau(const FockVector& tau, const std::string& who) {
  if (tau.is_zero()) throw InputError(who + ": zero input");
  if (!tau.is_charge_homogeneous()) throw InputError(who + ": charge-inhomogeneous input");
}

// Residual of sum_a sum_n psi^{+(a)}[n] tau (x) psi^{-(a)}[shift_a + 1 - n] tau.
// The sum is finite: the left factor dies above psi_plus_max and the right
// factor below shift_a + 1 - psi_minus_max; margin widens both ends, which
// may only add vanishing terms.
TensorFockVector charged_residual(const FockVector& tau, const std::vector<int>& shift,
                                  par::Exec exec, int margin, const std::string& suffix,
                                  std::vector<ModeRange>& ranges) {
  int s = tau.comps();
  TensorFockVector w = tensor_product(tau, tau);
  std::vector<std::pair<int, int>> jobs;
  for (int a = 1; a <= s; ++a) {
    ModeBounds b = mode_support_bounds(tau, a);
    int lo = shift[static_cast<std::size_t>(a - 1)] + 1 - b.psi_minus_max - margin;
    int hi = b.psi_plus_max + margin;
    ranges.push_back({"psi(" + std::to_string(a) + ")" + suffix, lo, hi});
    for (int n = lo; n <= hi; ++n) jobs.emplace_back(a, n);
  }
  std::vector<TensorFockVector> slots(jobs.size(), TensorFockVector(s));
  par::for_n(exec, jobs.size(), [&](std::size_t i) {
    auto [a, n] = jobs[i];
    int partner = shift[static_cast<std::size_t>(a - 1)] + 1 - n;
    slots[i] = tensor_apply(ModeOp::psi_plus(a, n), ModeOp::psi_minus(a, partner), w);
  });
  TensorFockVector acc(s);
  for (const TensorFockVector& t : slots) acc = acc + t;
  return acc;
}

void finalize(VerificationReport& rep) {
  bool ok = rep.residual.is_zero();
  for (const NamedCheck& c : rep.extras) ok = ok && c.passed;
  rep.passed = ok;
}

// A failing relation stores its difference so that passed <=> empty residual
// also holds for self-test reports. Only the first failure is kept.
void embed_failure(VerificationReport& rep, const FockVector& diff) {
  if (!rep.residual.is_zero() || diff.is_zero()) return;
  int d = diff.comps();
  TensorFockVector r(d);
  ChargeVector right(static_cast<std::size_t>(d), 0);
  for (const auto& [m, f] : diff.sectors()) r.add(m, right, with_comps(f, 2 * d));
  rep.residual = r;
}

void embed_failure(VerificationReport& rep, const Poly& diff) {
  if (diff.is_zero()) return;
  FockVector v(diff.comps());
  v.add(ChargeVector(static_cast<std::size_t>(diff.comps()), 0), diff);
  embed_failure(rep, v);
}

void monos_rec(int s, const std::vector<std::pair<int, int>>& vars, std::size_t i, int budget,
               const PMonomial& cur, std::vector<Poly>& out) {
  if (i == vars.size()) {
    out.push_back(Poly::from_terms(s, {{cur, Rational(1)}}));
    return;
  }
  auto [a, n] = vars[i];
  for (int e = 0; e * n <= budget; ++e) {
    PMonomial next = e == 0 ? cur : cur.times(PMonomial::var(a, n, e));
    monos_rec(s, vars, i + 1, budget - e * n, next, out);
  }
}

std::vector<Poly> monomial_basis(int s, int max_degree, bool odd_only) {
  std::vector<std::pair<int, int>> vars;
  for (int a = 1; a <= s; ++a)
    for (int n = 1; n <= max_degree; ++n)
      if (!odd_only || n % 2 == 1) vars.emplace_back(a, n);
  std::vector<Poly> out;
  monos_rec(s, vars, 0, max_degree, PMonomial::one(), out);
  return out;
}

void charges_rec(int s, int bound, ChargeVector& cur, std::vector<ChargeVector>& out) {
  if (static_cast<int>(cur.size()) == s) {
    out.push_back(cur);
    return;
  }
  for (int m = -bound; m <= bound; ++m) {
    cur.push_back(m);
    charges_rec(s, bound, cur, out);
    cur.pop_back();
  }
}

std::vector<ChargeVector> all_charges(int s, int bound) {
  std::vector<ChargeVector> out;
  ChargeVector cur;
  charges_rec(s, bound, cur, out);
  return out;
}

void run_series_suite(int max_degree, VerificationReport& rep) {
  int D = max_degree;
  SeriesTable h = series_table(SeriesKind::H, D);
  SeriesTable e = series_table(SeriesKind::E, D);
  SeriesTable q = series_table(SeriesKind::Q, D);
  bool he_ok = true, qq_ok = true, sub_ok = true;
  for (int n = 1; n <= D; ++n) {
    Poly acc(1);
    for (int j = 0; j <= n; ++j) {
      Poly t = h.at(n - j) * e.at(j);
      acc += j % 2 == 0 ? t : -t;
    }
    if (!acc.is_zero()) {
      he_ok = false;
      embed_failure(rep, acc);
    }
  }
  for (int n = 1; n <= D; ++n) {
    Poly acc(1);
    for (int j = 0; j <= n; ++j) {
      Poly t = q.at(n - j) * q.at(j);
      acc += j % 2 == 0 ? t : -t;
    }
    if (!acc.is_zero()) {
      qq_ok = false;
      embed_failure(rep, acc);
    }
  }
  // p_n -> 2 p_n for odd n and 0 for even n sends the complete coefficients
  // h_k to the neutral coefficients q_k.
  for (int k = 0; k <= D; ++k) {
    Poly sub(1);
    for (const auto& [mono, c] : h.at(k).terms()) {
      bool even_var = false;
      int doublings = 0;
      for (const auto& [key, exp] : mono.entries()) {
        if (key_idx(key) % 2 == 0) {
          even_var = true;
          break;
        }
        doublings += exp;
      }
      if (even_var) continue;
      Rational scale(1);
      for (int i = 0; i < doublings; ++i) scale = scale * Rational(2);
      sub += Poly::from_terms(1, {{mono, c * scale}});
    }
    if (sub != q.at(k)) {
      sub_ok = false;
      embed_failure(rep, sub - q.at(k));
    }
  }
  rep.extras.push_back({"h-e convolution", he_ok});
  rep.extras.push_back({"q-q convolution", qq_ok});
  rep.extras.push_back({"q substitution", sub_ok});
}

struct RelJob {
  ChargeVector m;
  const Poly* f = nullptr;
};

struct RelOut {
  FockVector anti{1};   // first failing anticommutator difference
  FockVector inter{1};  // first failing charge-multiplication difference
};

void charged_relations_job(const RelJob& job, int s, int K, RelOut& out) {
  FockVector v(s);
  v.add(job.m, *job.f);
  const int lo = -K + 1, hi = K;
  const int width = hi >= lo ? hi - lo + 1 : 0;
  auto idx = [&](int n) { return static_cast<std::size_t>(n - lo); };
  std::vector<std::vector<FockVector>> P(static_cast<std::size_t>(s)),
      M(static_cast<std::size_t>(s));
  for (int a = 1; a <= s; ++a) {
    P[static_cast<std::size_t>(a - 1)] = psi_mode_range(+1, a, lo, hi, v);
    M[static_cast<std::size_t>(a - 1)] = psi_mode_range(-1, a, lo, hi, v);
  }
  // All second-layer products up front, the outer index ranging over a whole
  // mode window per call: T[b][a][k][l] = psi^{sign(b)}[l] cache[a][k].
  auto table = [&](int sign, const std::vector<std::vector<FockVector>>& cache) {
    std::vector<std::vector<std::vector<std::vector<FockVector>>>> t(
        static_cast<std::size_t>(s),
        std::vector<std::vector<std::vector<FockVector>>>(static_cast<std::size_t>(s)));
    for (int b = 1; b <= s; ++b)
      for (int a = 1; a <= s; ++a) {
        auto& col = t[static_cast<std::size_t>(b - 1)][static_cast<std::size_t>(a - 1)];
        col.resize(static_cast<std::size_t>(width));
        for (int k = lo; k <= hi; ++k)
          col[idx(k)] =
              psi_mode_range(sign, b, lo, hi, cache[static_cast<std::size_t>(a - 1)][idx(k)]);
      }
    return t;
  };
  auto MP = table(-1, P);  // psi^-(b)[l] psi^+(a)[k] v
  auto PM = table(+1, M);  // psi^+(b)[l] psi^-(a)[k] v
  auto PP = table(+1, P);
  auto MM = table(-1, M);
  auto record_anti = [&](const FockVector& got, const FockVector& expect) {
    if (out.anti.is_zero() && got != expect) out.anti = got - expect;
  };
  // {psi^{+(a)}[k], psi^{-(b)}[l]} = delta_{ab} delta_{k+l,1}
  for (int a = 1; a <= s; ++a)
    for (int k = lo; k <= hi; ++k)
      for (int b = 1; b <= s; ++b)
        for (int l = lo; l <= hi; ++l) {
          FockVector got =
              MP[static_cast<std::size_t>(b - 1)][static_cast<std::size_t>(a - 1)][idx(k)]
                [idx(l)] +
              PM[static_cast<std::size_t>(a - 1)][static_cast<std::size_t>(b - 1)][idx(l)]
                [idx(k)];
          record_anti(got, a == b && k + l == 1 ? v : FockVector(s));
        }
  // same-sign pairs anticommute to zero
  const int grid = s * width;
  for (int q1 = 0; q1 < grid; ++q1)
    for (int q2 = q1; q2 < grid; ++q2) {
      int a1 = q1 / width + 1, k1 = lo + q1 % width;
      int a2 = q2 / width + 1, k2 = lo + q2 % width;
      record_anti(
          PP[static_cast<std::size_t>(a2 - 1)][static_cast<std::size_t>(a1 - 1)][idx(k1)]
            [idx(k2)] +
              PP[static_cast<std::size_t>(a1 - 1)][static_cast<std::size_t>(a2 - 1)][idx(k2)]
                [idx(k1)],
          FockVector(s));
      record_anti(
          MM[static_cast<std::size_t>(a2 - 1)][static_cast<std::size_t>(a1 - 1)][idx(k1)]
            [idx(k2)] +
              MM[static_cast<std::size_t>(a1 - 1)][static_cast<std::size_t>(a2 - 1)][idx(k2)]
                [idx(k1)],
          FockVector(s));
    }
  // z_a psi^{+-(b)}[n] = eps_{ab} psi^{+-(b)}[n -+ delta_{ab}] z_a,
  // eps_{ab} = +1 for b <= a and -1 otherwise.
  for (int za = 1; za <= s; ++za) {
    ChargeVector e(static_cast<std::size_t>(s), 0);
    e[static_cast<std::size_t>(za - 1)] = 1;
    FockVector zv = charge_shift(v, e);
    for (int b = 1; b <= s; ++b) {
      Rational eps(b <= za ? 1 : -1);
      int delta = b == za ? 1 : 0;
      for (int sign : {+1, -1}) {
        const auto& cache = sign > 0 ? P : M;
        // window shifted so entry idx(n) holds psi^{sign(b)}[n - sign*delta] zv
        std::vector<FockVector> shifted =
            psi_mode_range(sign, b, lo - sign * delta, hi - sign * delta, zv);
        for (int n = lo; n <= hi; ++n) {
          FockVector lhs = charge_shift(cache[static_cast<std::size_t>(b - 1)][idx(n)], e);
          FockVector rhs = shifted[idx(n)].scaled(eps);
          if (out.inter.is_zero() && lhs != rhs) out.inter = lhs - rhs;
        }
      }
    }
  }
}

void run_clifford_suite(int max_degree, int K, int s, par::Exec exec, VerificationReport& rep) {
  std::vector<Poly> basis = monomial_basis(s, max_degree, false);
  std::vector<ChargeVector> charges = all_charges(s, 2);
  std::vector<RelJob> jobs;
  jobs.reserve(charges.size() * basis.size());
  for (const ChargeVector& m : charges)
    for (const Poly& f : basis) jobs.push_back({m, &f});
  std::vector<RelOut> outs(jobs.size());
  par::for_n(exec, jobs.size(),
             [&](std::size_t i) { charged_relations_job(jobs[i], s, K, outs[i]); });
  bool anti_ok = true, inter_ok = true;
  for (const RelOut& o : outs) {
    anti_ok = anti_ok && o.anti.is_zero();
    inter_ok = inter_ok && o.inter.is_zero();
  }
  rep.extras.push_back({"charged anticommutators", anti_ok});
  rep.extras.push_back({"charge multiplication intertwining", inter_ok});
  for (const RelOut& o : outs)
    if (!o.anti.is_zero()) {
      embed_failure(rep, o.anti);
      break;
    }
  for (const RelOut& o : outs)
    if (!o.inter.is_zero()) {
      embed_failure(rep, o.inter);
      break;
    }
  // phi_m phi_n + phi_n phi_m = 2 (-1)^m delta_{m+n,0} on the odd subring
  bool neutral_ok = true;
  for (const Poly& f : monomial_basis(1, max_degree, true)) {
    std::vector<Poly> ph;
    ph.reserve(static_cast<std::size_t>(2 * K + 1));
    for (int n = -K; n <= K; ++n) ph.push_back(phi_mode(n, f));
    for (int m = -K; m <= K; ++m)
      for (int n = m; n <= K; ++n) {
        Poly got = phi_mode(m, ph[static_cast<std::size_t>(n + K)]) +
                   phi_mode(n, ph[static_cast<std::size_t>(m + K)]);
        Poly expect = m + n == 0 ? f.scaled(Rational(m % 2 == 0 ? 2 : -2)) : Poly(1);
        if (got != expect) {
          neutral_ok = false;
          embed_failure(rep, got - expect);
        }
      }
  }
  rep.extras.push_back({"neutral anticommutators", neutral_ok});
}

LaurentPoly random_laurent(std::mt19937_64& rng, int lo, int hi) {
  std::uniform_int_distribution<int> nterms(1, 3);
  std::uniform_int_distribution<int> expd(lo, hi);
  std::uniform_int_distribution<int> coeffd(-3, 3);
  for (;;) {
    LaurentPoly A;
    int k = nterms(rng);
    for (int i = 0; i < k; ++i)
      A = A + LaurentPoly::monomial(expd(rng), Rational(coeffd(rng)));
    if (!A.is_zero()) return A;
  }
}

void run_oracles_suite(unsigned long seed, par::Exec exec, VerificationReport& rep) {
  std::mt19937_64 rng(seed);
  bool kp_ok = true;
  {
    std::uniform_int_distribution<int> ld(1, 3);
    std::uniform_int_distribution<int> ad(-2, 4);
    for (int trial = 0; trial < 40; ++trial) {
      KpSpec spec;
      spec.l = ld(rng);
      for (int i = 0; i < spec.l; ++i) {
        spec.A.push_back(random_laurent(rng, -3, 3));
        spec.alpha.push_back(ad(rng));
      }
      Poly diff = kp_coeff_det(spec) - kp_coeff_oracle(spec);
      if (!diff.is_zero()) {
        kp_ok = false;
        embed_failure(rep, diff);
        break;
      }
    }
  }
  rep.extras.push_back({"charged determinant vs operator route", kp_ok});
  bool bkp_ok = true;
  {
    std::uniform_int_distribution<int> ld(1, 3);
    std::uniform_int_distribution<int> ad(0, 4);
    for (int trial = 0; trial < 30; ++trial) {
      BkpSpec spec;
      spec.l = ld(rng);
      for (int i = 0; i < spec.l; ++i) {
        spec.A.push_back(random_laurent(rng, 0, 3));
        spec.alpha.push_back(ad(rng));
      }
      Poly diff = bkp_coeff_pf(spec) - bkp_coeff_oracle(spec);
      if (!diff.is_zero()) {
        bkp_ok = false;
        embed_failure(rep, diff);
        break;
      }
    }
  }
  rep.extras.push_back({"neutral pfaffian vs operator route", bkp_ok});
  bool skp_ok = true;
  {
    std::uniform_int_distribution<int> ld(1, 3);
    std::uniform_int_distribution<int> ad(-1, 3);
    for (int trial = 0; trial < 20; ++trial) {
      SkpSpec spec;
      spec.s = 2;
      spec.l = ld(rng);
      spec.A.assign(2, {});
      for (int i = 0; i < spec.l; ++i) {
        for (int r = 0; r < 2; ++r)
          spec.A[static_cast<std::size_t>(r)].push_back(random_laurent(rng, -2, 2));
        spec.alpha.push_back(ad(rng));
      }
      FockVector diff = skp_coeff_full(spec, exec) - skp_assignment_sum(spec);
      if (!diff.is_zero()) {
        skp_ok = false;
        embed_failure(rep, diff);
        break;
      }
    }
  }
  rep.extras.push_back({"component determinant vs signed assignment sum", skp_ok});
}

VerificationReport run_selfcheck(bool series, bool clifford, bool oracles, int max_degree,
                                 int max_mode, int s, unsigned long seed, par::Exec exec) {
  if (max_degree < 0) throw InputError("selfcheck: max_degree must be nonnegative");
  if (max_mode < 0) throw InputError("selfcheck: max_mode must be nonnegative");
  if (s < 1) throw InputError("selfcheck: component count must be positive");
  VerificationReport rep;
  rep.identity = Identity::RELATIONS;
  if (series || clifford) rep.mode_ranges.push_back({"degree", 0, max_degree});
  if (clifford) {
    rep.mode_ranges.push_back({"psi", -max_mode + 1, max_mode});
    rep.mode_ranges.push_back({"phi", -max_mode, max_mode});
    rep.mode_ranges.push_back({"charge", -2, 2});
  }
  if (series) run_series_suite(max_degree, rep);
  if (clifford) run_clifford_suite(max_degree, max_mode, s, exec, rep);
  if (oracles) run_oracles_suite(seed, exec, rep);
  finalize(rep);
  return rep;
}

}  // namespace

VerificationReport verify_kp(const FockVector& tau, par::Exec exec, int range_margin) {
  if (tau.comps() != 1) throw InputError("kp verify: input must have one component");
  require_tau(tau, "kp verify");
  VerificationReport rep;
  rep.identity = Identity::KP;
  rep.residual = charged_residual(tau, {0}, exec, range_margin, "", rep.mode_ranges);
  rep.passed = rep.residual.is_zero();
  return rep;
}

VerificationReport verify_bkp(const Poly& tau, par::Exec exec, int range_margin) {
  if (tau.comps() != 1) throw InputError("bkp verify: input must have one component");
  if (tau.is_zero()) throw InputError("bkp verify: zero input");
  if (!odd_indices_only(tau)) throw InputError("bkp verify: input must use odd indices only");
  FockVector v(1);
  v.add(ChargeVector{0}, tau);
  TensorFockVector w = tensor_product(v, v);
  int D = mode_support_bounds(v, 1).phi_max;
  int lo = -D - range_margin, hi = D + range_margin;
  VerificationReport rep;
  rep.identity = Identity::BKP;
  rep.mode_ranges.push_back({"phi", lo, hi});
  std::vector<TensorFockVector> slots(static_cast<std::size_t>(hi - lo + 1),
                                      TensorFockVector(1));
  par::for_n(exec, slots.size(), [&](std::size_t i) {
    int n = lo + static_cast<int>(i);
    TensorFockVector t = tensor_apply(ModeOp::phi(n), ModeOp::phi(-n), w);
    slots[i] = n % 2 == 0 ? t : t.scaled(Rational(-1));
  });
  TensorFockVector acc(1);
  for (const TensorFockVector& t : slots) acc = acc + t;
  rep.residual = acc - w;
  rep.passed = rep.residual.is_zero();
  return rep;
}

VerificationReport verify_skp(const FockVector& tau, par::Exec exec, int range_margin) {
  require_tau(tau, "skp verify");
  VerificationReport rep;
  rep.identity = Identity::SKP;
  std::vector<int> shift(static_cast<std::size_t>(tau.comps()), 0);
  rep.residual = charged_residual(tau, shift, exec, range_margin, "", rep.mode_ranges);
  rep.passed = rep.residual.is_zero();
  return rep;
}

VerificationReport verify_lkdv(const FockVector& tau, const Partition& lambda, int j_max,
                               par::Exec exec, int range_margin) {
  int s = tau.comps();
  if (lambda.size() != s)
    throw InputError("lkdv verify: lambda length must match the component count");
  if (j_max < 0) throw InputError("lkdv verify: j_max must be nonnegative");
  require_tau(tau, "lkdv verify");
  VerificationReport rep;
  rep.identity = Identity::LKDV;
  std::vector<int> zero_shift(static_cast<std::size_t>(s), 0);
  TensorFockVector first =
      charged_residual(tau, zero_shift, exec, range_margin, "", rep.mode_ranges);
  rep.extras.push_back({"bilinear base", first.is_zero()});
  bool bilinear_ok = first.is_zero();
  for (int j = 1; j <= j_max; ++j) {
    std::vector<int> shift;
    shift.reserve(static_cast<std::size_t>(s));
    for (int a = 0; a < s; ++a) shift.push_back(j * lambda.parts[static_cast<std::size_t>(a)]);
    TensorFockVector r =
        charged_residual(tau, shift, exec, range_margin, " j=" + std::to_string(j),
                         rep.mode_ranges);
    rep.extras.push_back({"bilinear j=" + std::to_string(j), r.is_zero()});
    if (bilinear_ok && !r.is_zero()) first = r;
    bilinear_ok = bilinear_ok && r.is_zero();
  }
  // The reduction also kills the times t^(a)_{j lambda_a}; reported per
  // sector as a diagnostic, independent of the bilinear verdict.
  for (int j = 1; j <= j_max; ++j) {
    bool ok = true;
    std::vector<std::string> failing;
    for (const auto& [m, f] : tau.sectors()) {
      Poly d(s);
      for (int a = 1; a <= s; ++a) {
        int idx = j * lambda.parts[static_cast<std::size_t>(a - 1)];
        d += poly_partial(f, a, idx).scaled(Rational(idx));
      }
      if (!d.is_zero()) {
        ok = false;
        failing.push_back(charge_label(m));
      }
    }
    rep.extras.push_back({"t-derivative j=" + std::to_string(j), ok});
    for (const std::string& lbl : failing)
      rep.extras.push_back({"t-derivative j=" + std::to_string(j) + " sector " + lbl, false});
  }
  rep.residual = first;
  rep.passed = rep.residual.is_zero();
  return rep;
}

VerificationReport selfcheck_relations(int max_degree, int max_mode, int s, par::Exec exec) {
  return run_selfcheck(true, true, false, max_degree, max_mode, s, 0, exec);
}

VerificationReport selfcheck_suite(const std::string& suite, int max_degree, int max_mode,
                                   int s, unsigned long seed, par::Exec exec) {
  if (suite == "series") return run_selfcheck(true, false, false, max_degree, max_mode, s, seed, exec);
  if (suite == "clifford") return run_selfcheck(false, true, false, max_degree, max_mode, s, seed, exec);
  if (suite == "oracles") return run_selfcheck(false, false, true, max_degree, max_mode, s, seed, exec);
  if (suite == "all") return run_selfcheck(true, true, true, max_degree, max_mode, s, seed, exec);
  throw InputError("selfcheck: unknown suite '" + suite + "'");
}

}  // namespace tauforge
