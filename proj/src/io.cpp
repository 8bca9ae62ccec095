#include "tauforge/io.hpp"

#include <climits>
#include <cstdlib>
#include <map>
#include <utility>
#include <vector>

#include "tauforge/errors.hpp"

namespace tauforge::io {

namespace {

void check_basis(const std::string& basis) {
  if (basis != "p" && basis != "t")
    throw InputError("basis must be \"p\" or \"t\", got \"" + basis + "\"");
}

const json& need(const json& j, const char* key, const char* what) {
  auto it = j.find(key);
  if (it == j.end())
    throw InputError(std::string(what) + ": missing key \"" + key + "\"");
  return *it;
}

void expect_object(const json& j, const char* what) {
  if (!j.is_object()) throw InputError(std::string(what) + ": expected an object");
}

void expect_keys(const json& j, const char* what,
                 std::initializer_list<const char*> required,
                 std::initializer_list<const char*> optional = {}) {
  expect_object(j, what);
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool known = false;
    for (const char* k : required)
      if (it.key() == k) known = true;
    for (const char* k : optional)
      if (it.key() == k) known = true;
    if (!known)
      throw InputError(std::string(what) + ": unknown key \"" + it.key() + "\"");
  }
  for (const char* k : required) need(j, k, what);
}

int as_int(const json& j, const char* what) {
  if (!j.is_number_integer())
    throw InputError(std::string(what) + ": expected an integer");
  long long v = j.get<long long>();
  if (v < INT_MIN || v > INT_MAX)
    throw InputError(std::string(what) + ": integer out of range");
  return static_cast<int>(v);
}

std::string as_string(const json& j, const char* what) {
  if (!j.is_string()) throw InputError(std::string(what) + ": expected a string");
  return j.get<std::string>();
}

const json& as_array(const json& j, const char* what) {
  if (!j.is_array()) throw InputError(std::string(what) + ": expected an array");
  return j;
}

std::vector<int> int_list(const json& j, const char* what) {
  as_array(j, what);
  std::vector<int> out;
  out.reserve(j.size());
  for (const json& e : j) out.push_back(as_int(e, what));
  return out;
}

// Strict decimal integer, optional leading minus, no blanks.
int parse_int_key(const std::string& s, const char* what) {
  std::size_t from = (!s.empty() && s[0] == '-') ? 1 : 0;
  if (from >= s.size())
    throw InputError(std::string(what) + ": bad integer key \"" + s + "\"");
  for (std::size_t i = from; i < s.size(); ++i)
    if (s[i] < '0' || s[i] > '9')
      throw InputError(std::string(what) + ": bad integer key \"" + s + "\"");
  errno = 0;
  long v = std::strtol(s.c_str(), nullptr, 10);
  if (errno != 0 || v < INT_MIN || v > INT_MAX)
    throw InputError(std::string(what) + ": integer key out of range \"" + s + "\"");
  return static_cast<int>(v);
}

// prod n^e over the monomial: the exact ratio between a p-coefficient and
// its t-coefficient.
Rational t_factor(const PMonomial& m) {
  Rational f(1);
  for (const auto& [key, exp] : m.entries())
    for (int e = 0; e < exp; ++e) f *= Rational(key_idx(key));
  return f;
}

std::string mono_key(VarKey key) {
  return std::to_string(key_comp(key)) + ":" + std::to_string(key_idx(key));
}

std::pair<int, int> parse_mono_key(const std::string& s, int comps) {
  std::size_t colon = s.find(':');
  if (colon == std::string::npos)
    throw InputError("poly json: monomial key \"" + s + "\" lacks \":\"");
  int a = parse_int_key(s.substr(0, colon), "poly json");
  int n = parse_int_key(s.substr(colon + 1), "poly json");
  if (a < 1 || a > comps)
    throw InputError("poly json: component " + std::to_string(a) + " out of range");
  if (n < 1) throw InputError("poly json: variable index must be positive");
  return {a, n};
}

std::map<int, Rational> coeff_map(const json& j, const char* what, int min_key) {
  expect_keys(j, what, {"coeffs"});
  const json& c = need(j, "coeffs", what);
  expect_object(c, what);
  std::map<int, Rational> out;
  for (auto it = c.begin(); it != c.end(); ++it) {
    int k = parse_int_key(it.key(), what);
    if (k < min_key)
      throw InputError(std::string(what) + ": key " + std::to_string(k) + " below " +
                       std::to_string(min_key));
    Rational v = Rational::parse(as_string(it.value(), what));
    if (v.is_zero())
      throw InputError(std::string(what) + ": zero coefficient at key " + it.key());
    if (!out.emplace(k, v).second)
      throw InputError(std::string(what) + ": duplicate key " + it.key());
  }
  return out;
}

json coeff_map_to_json(const std::map<int, Rational>& m) {
  json c = json::object();
  for (const auto& [k, v] : m) c[std::to_string(k)] = v.str();
  json out;
  out["coeffs"] = std::move(c);
  return out;
}

std::vector<Rational> rational_list(const json& j, const char* what) {
  as_array(j, what);
  std::vector<Rational> out;
  out.reserve(j.size());
  for (const json& e : j) out.push_back(Rational::parse(as_string(e, what)));
  return out;
}

std::vector<ShiftVector> shift_list(const json& j, const char* what) {
  as_array(j, what);
  std::vector<ShiftVector> out;
  out.reserve(j.size());
  for (const json& e : j) out.push_back(shift_from_json(e));
  return out;
}

std::vector<LaurentPoly> laurent_list(const json& j, const char* what) {
  as_array(j, what);
  std::vector<LaurentPoly> out;
  out.reserve(j.size());
  for (const json& e : j) out.push_back(laurent_from_json(e));
  return out;
}

ChargeVector charge_list(const json& j, int s, const char* what) {
  std::vector<int> m = int_list(j, what);
  if (m.size() != static_cast<std::size_t>(s))
    throw InputError(std::string(what) + ": charge length disagrees with s");
  return m;
}

std::string charge_text(const ChargeVector& m) {
  if (m.size() == 1) return std::to_string(m[0]);
  std::string out = "[";
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(m[i]);
  }
  return out + "]";
}

}  // namespace

json poly_to_json(const Poly& f, const std::string& basis) {
  check_basis(basis);
  bool tb = basis == "t";
  json terms = json::array();
  for (const auto& [mono, coeff] : f.terms()) {
    json mj = json::object();
    for (const auto& [key, exp] : mono.entries()) mj[mono_key(key)] = exp;
    json term;
    term["coeff"] = (tb ? coeff * t_factor(mono) : coeff).str();
    term["mono"] = std::move(mj);
    terms.push_back(std::move(term));
  }
  json out;
  out["s"] = f.comps();
  out["basis"] = basis;
  out["terms"] = std::move(terms);
  return out;
}

Poly poly_from_json(const json& j) {
  expect_keys(j, "poly json", {"s", "basis", "terms"});
  int s = as_int(need(j, "s", "poly json"), "poly json s");
  if (s < 1) throw InputError("poly json: s must be positive");
  std::string basis = as_string(need(j, "basis", "poly json"), "poly json basis");
  check_basis(basis);
  bool tb = basis == "t";
  const json& terms = as_array(need(j, "terms", "poly json"), "poly json terms");
  std::vector<Poly::Term> built;
  built.reserve(terms.size());
  for (const json& term : terms) {
    expect_keys(term, "poly json term", {"coeff", "mono"});
    Rational c = Rational::parse(as_string(need(term, "coeff", "poly json"), "poly json coeff"));
    const json& mj = need(term, "mono", "poly json");
    expect_object(mj, "poly json mono");
    std::vector<std::pair<VarKey, int>> entries;
    for (auto it = mj.begin(); it != mj.end(); ++it) {
      auto [a, n] = parse_mono_key(it.key(), s);
      int e = as_int(it.value(), "poly json exponent");
      if (e < 1) throw InputError("poly json: exponent must be positive");
      entries.emplace_back(var_key(a, n), e);
    }
    PMonomial mono = PMonomial::from_entries(std::move(entries));
    if (tb) c /= t_factor(mono);
    built.emplace_back(std::move(mono), std::move(c));
  }
  return Poly::from_terms(s, std::move(built));
}

json laurent_to_json(const LaurentPoly& A) { return coeff_map_to_json(A.coeffs()); }

LaurentPoly laurent_from_json(const json& j) {
  LaurentPoly A;
  for (const auto& [k, v] : coeff_map(j, "laurent json", INT_MIN)) A.set(k, v);
  return A;
}

json shift_to_json(const ShiftVector& c) { return coeff_map_to_json(c.c); }

ShiftVector shift_from_json(const json& j) {
  return ShiftVector(coeff_map(j, "shift json", 1));
}

json fock_to_json(const FockVector& v, const std::string& basis) {
  json sectors = json::array();
  for (const auto& [m, f] : v.sectors()) {
    json sec;
    sec["charge"] = m;
    sec["poly"] = poly_to_json(f, basis);
    sectors.push_back(std::move(sec));
  }
  json out;
  out["s"] = v.comps();
  out["sectors"] = std::move(sectors);
  return out;
}

FockVector fock_from_json(const json& j) {
  expect_keys(j, "fock json", {"s", "sectors"});
  int s = as_int(need(j, "s", "fock json"), "fock json s");
  if (s < 1) throw InputError("fock json: s must be positive");
  const json& sectors = as_array(need(j, "sectors", "fock json"), "fock json sectors");
  FockVector out(s);
  for (const json& sec : sectors) {
    expect_keys(sec, "fock json sector", {"charge", "poly"});
    ChargeVector m = charge_list(need(sec, "charge", "fock json"), s, "fock json charge");
    if (!out.sector(m).is_zero())
      throw InputError("fock json: duplicate charge " + charge_text(m));
    Poly f = poly_from_json(need(sec, "poly", "fock json"));
    if (f.comps() != s)
      throw InputError("fock json: sector component count disagrees with s");
    out.add(m, f);
  }
  return out;
}

json tensor_to_json(const TensorFockVector& w, const std::string& basis) {
  json sectors = json::array();
  for (const auto& [lr, f] : w.sectors()) {
    json sec;
    sec["left"] = lr.first;
    sec["right"] = lr.second;
    sec["poly"] = poly_to_json(f, basis);
    sectors.push_back(std::move(sec));
  }
  json out;
  out["s"] = w.comps();
  out["sectors"] = std::move(sectors);
  return out;
}

TensorFockVector tensor_from_json(const json& j) {
  expect_keys(j, "tensor json", {"s", "sectors"});
  int s = as_int(need(j, "s", "tensor json"), "tensor json s");
  if (s < 1) throw InputError("tensor json: s must be positive");
  const json& sectors = as_array(need(j, "sectors", "tensor json"), "tensor json sectors");
  TensorFockVector out(s);
  for (const json& sec : sectors) {
    expect_keys(sec, "tensor json sector", {"left", "right", "poly"});
    ChargeVector l = charge_list(need(sec, "left", "tensor json"), s, "tensor json left");
    ChargeVector r = charge_list(need(sec, "right", "tensor json"), s, "tensor json right");
    if (!out.sector(l, r).is_zero())
      throw InputError("tensor json: duplicate sector " + charge_text(l) + " x " +
                       charge_text(r));
    Poly f = poly_from_json(need(sec, "poly", "tensor json"));
    if (f.comps() != 2 * s)
      throw InputError("tensor json: sector polynomials need 2s components");
    out.add(l, r, f);
  }
  return out;
}

json report_to_json(const VerificationReport& rep) {
  json out;
  out["identity"] = identity_name(rep.identity);
  out["passed"] = rep.passed;
  out["residual"] = tensor_to_json(rep.residual);
  json ranges = json::array();
  for (const ModeRange& r : rep.mode_ranges) {
    json e;
    e["name"] = r.name;
    e["lo"] = r.lo;
    e["hi"] = r.hi;
    ranges.push_back(std::move(e));
  }
  out["mode_ranges"] = std::move(ranges);
  json extras = json::array();
  for (const NamedCheck& c : rep.extras) {
    json e;
    e["name"] = c.name;
    e["passed"] = c.passed;
    extras.push_back(std::move(e));
  }
  out["extras"] = std::move(extras);
  return out;
}

std::string render_poly(const Poly& f, const std::string& basis) {
  check_basis(basis);
  if (f.is_zero()) return "0";
  bool tb = basis == "t";
  std::string out;
  bool first = true;
  for (const auto& [mono, coeff] : f.terms()) {
    Rational c = tb ? coeff * t_factor(mono) : coeff;
    bool neg = c.sign() < 0;
    out += first ? (neg ? "-" : "") : (neg ? " - " : " + ");
    first = false;
    std::string vars;
    for (const auto& [key, exp] : mono.entries()) {
      if (!vars.empty()) vars += "*";
      vars += tb ? "t" : "p";
      if (f.comps() == 1)
        vars += std::to_string(key_idx(key));
      else
        vars += std::to_string(key_comp(key)) + ":" + std::to_string(key_idx(key));
      if (exp > 1) vars += "^" + std::to_string(exp);
    }
    std::string mag = (neg ? -c : c).str();
    if (vars.empty())
      out += mag;
    else if (mag == "1")
      out += vars;
    else
      out += mag + "*" + vars;
  }
  return out;
}

std::string render_fock(const FockVector& v, const std::string& basis) {
  check_basis(basis);
  if (v.is_zero()) return "0";
  std::string out;
  for (const auto& [m, f] : v.sectors()) {
    if (!out.empty()) out += "\n";
    out += "z^" + charge_text(m) + ": " + render_poly(f, basis);
  }
  return out;
}

KpSpec kp_spec_from_json(const json& j) {
  expect_keys(j, "kp spec json", {"l", "A", "alpha"});
  KpSpec spec;
  spec.l = as_int(need(j, "l", "kp spec json"), "kp spec json l");
  spec.A = laurent_list(need(j, "A", "kp spec json"), "kp spec json A");
  spec.alpha = int_list(need(j, "alpha", "kp spec json"), "kp spec json alpha");
  return spec;
}

BkpSpec bkp_spec_from_json(const json& j) {
  expect_keys(j, "bkp spec json", {"l", "A", "alpha"});
  BkpSpec spec;
  spec.l = as_int(need(j, "l", "bkp spec json"), "bkp spec json l");
  spec.A = laurent_list(need(j, "A", "bkp spec json"), "bkp spec json A");
  spec.alpha = int_list(need(j, "alpha", "bkp spec json"), "bkp spec json alpha");
  return spec;
}

SkpSpec skp_spec_from_json(const json& j) {
  expect_keys(j, "skp spec json", {"s", "l", "A", "alpha"});
  SkpSpec spec;
  spec.s = as_int(need(j, "s", "skp spec json"), "skp spec json s");
  spec.l = as_int(need(j, "l", "skp spec json"), "skp spec json l");
  const json& A = as_array(need(j, "A", "skp spec json"), "skp spec json A");
  for (const json& row : A) spec.A.push_back(laurent_list(row, "skp spec json A"));
  spec.alpha = int_list(need(j, "alpha", "skp spec json"), "skp spec json alpha");
  return spec;
}

SkpClosedSpec skp_closed_spec_from_json(const json& j) {
  expect_keys(j, "skp closed spec json", {"s", "l", "b", "M", "c", "alpha"});
  SkpClosedSpec spec;
  spec.s = as_int(need(j, "s", "skp closed spec json"), "skp closed spec json s");
  spec.l = as_int(need(j, "l", "skp closed spec json"), "skp closed spec json l");
  const json& b = as_array(need(j, "b", "skp closed spec json"), "skp closed spec json b");
  for (const json& row : b) spec.b.push_back(rational_list(row, "skp closed spec json b"));
  const json& M = as_array(need(j, "M", "skp closed spec json"), "skp closed spec json M");
  for (const json& row : M) spec.M.push_back(int_list(row, "skp closed spec json M"));
  const json& c = as_array(need(j, "c", "skp closed spec json"), "skp closed spec json c");
  for (const json& row : c) spec.c.push_back(shift_list(row, "skp closed spec json c"));
  spec.alpha = int_list(need(j, "alpha", "skp closed spec json"), "skp closed spec json alpha");
  return spec;
}

LkdvSpec lkdv_spec_from_json(const json& j) {
  expect_keys(j, "lkdv spec json", {"lambda", "r", "N", "b", "c"}, {"alpha"});
  LkdvSpec spec;
  spec.lambda = Partition(int_list(need(j, "lambda", "lkdv spec json"), "lkdv spec json lambda"));
  spec.r = as_int(need(j, "r", "lkdv spec json"), "lkdv spec json r");
  const json& N = as_array(need(j, "N", "lkdv spec json"), "lkdv spec json N");
  for (const json& row : N) spec.N.push_back(int_list(row, "lkdv spec json N"));
  const json& b = as_array(need(j, "b", "lkdv spec json"), "lkdv spec json b");
  for (const json& row : b) spec.b.push_back(rational_list(row, "lkdv spec json b"));
  const json& c = as_array(need(j, "c", "lkdv spec json"), "lkdv spec json c");
  for (const json& row : c) spec.c.push_back(shift_list(row, "lkdv spec json c"));
  if (j.contains("alpha"))
    spec.alpha = int_list(j["alpha"], "lkdv spec json alpha");
  return spec;
}

KpClosedData kp_closed_data_from_json(const json& j) {
  expect_keys(j, "kp closed json", {"b", "M", "c", "alpha"});
  KpClosedData d;
  d.b = rational_list(need(j, "b", "kp closed json"), "kp closed json b");
  d.M = int_list(need(j, "M", "kp closed json"), "kp closed json M");
  d.c = shift_list(need(j, "c", "kp closed json"), "kp closed json c");
  d.alpha = int_list(need(j, "alpha", "kp closed json"), "kp closed json alpha");
  return d;
}

BkpClosedData bkp_closed_data_from_json(const json& j) {
  expect_keys(j, "bkp closed json", {"b", "c", "alpha"});
  BkpClosedData d;
  d.b = rational_list(need(j, "b", "bkp closed json"), "bkp closed json b");
  d.c = shift_list(need(j, "c", "bkp closed json"), "bkp closed json c");
  d.alpha = int_list(need(j, "alpha", "bkp closed json"), "bkp closed json alpha");
  return d;
}

Partition partition_from_json(const json& j) {
  expect_keys(j, "partition json", {"lambda"});
  return Partition(int_list(need(j, "lambda", "partition json"), "partition json lambda"));
}

StrictPartition strict_partition_from_json(const json& j) {
  expect_keys(j, "partition json", {"lambda"});
  return StrictPartition(int_list(need(j, "lambda", "partition json"), "partition json lambda"));
}

}  // namespace tauforge::io
