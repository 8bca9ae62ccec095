#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "tauforge/errors.hpp"
#include "tauforge/io.hpp"
#include "tauforge/series.hpp"
#include "tauforge/taugen.hpp"
#include "tauforge/verify.hpp"

namespace {

using tauforge::FockVector;
using tauforge::InputError;
using tauforge::Partition;
using tauforge::Poly;
using tauforge::VerificationReport;
using json = tauforge::io::json;

constexpr int kExitOk = 0;
constexpr int kExitInput = 1;
constexpr int kExitVerify = 2;

struct Flags {
  std::string hierarchy;
  std::string spec_path;
  std::string alpha;
  std::string basis;
  std::string out;
  std::string selfcheck;
  bool verify = false;
  int j_max = -1;
  int max_degree = 6;
  int max_mode = 3;
  int comps = 2;
  unsigned long seed = 0;
};

std::vector<int> parse_int_csv(const std::string& s, const char* what) {
  std::vector<int> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      int v = std::stoi(item, &used);
      if (used != item.size()) throw std::invalid_argument(item);
      out.push_back(v);
    } catch (const std::exception&) {
      throw InputError(std::string(what) + ": bad integer \"" + item + "\"");
    }
  }
  if (out.empty()) throw InputError(std::string(what) + ": empty list");
  return out;
}

json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open \"" + path + "\"");
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw InputError("malformed JSON in \"" + path + "\": " + e.what());
  }
  return j;
}

void emit(const json& doc, const std::string& out_path) {
  std::string text = doc.dump(2) + "\n";
  if (out_path.empty() || out_path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw InputError("cannot write \"" + out_path + "\"");
  out << text;
}

// One constructed value; exactly one of poly/fock is set.
struct Built {
  std::string name;
  std::string hierarchy;
  int s = 1;
  std::optional<Poly> poly;
  std::optional<FockVector> fock;
  std::optional<Partition> lambda;  // reduction data when known
};

Built build(const std::string& name, const json& spec,
            const std::vector<int>& alpha_override, bool has_alpha) {
  using namespace tauforge;
  Built out;
  out.name = name;
  auto alpha = [&](std::vector<int> own) {
    return has_alpha ? alpha_override : std::move(own);
  };
  if (name == "kp_coeff_det" || name == "kp_coeff_oracle") {
    KpSpec s = io::kp_spec_from_json(spec);
    s.alpha = alpha(std::move(s.alpha));
    out.poly = name == "kp_coeff_det" ? kp_coeff_det(s) : kp_coeff_oracle(s);
    out.hierarchy = "kp";
  } else if (name == "kp_closed_form") {
    io::KpClosedData d = io::kp_closed_data_from_json(spec);
    out.poly = kp_closed_form(d.b, d.M, d.c, alpha(std::move(d.alpha)));
    out.hierarchy = "kp";
  } else if (name == "bkp_coeff_pf" || name == "bkp_coeff_oracle") {
    BkpSpec s = io::bkp_spec_from_json(spec);
    s.alpha = alpha(std::move(s.alpha));
    out.poly = name == "bkp_coeff_pf" ? bkp_coeff_pf(s) : bkp_coeff_oracle(s);
    out.hierarchy = "bkp";
  } else if (name == "bkp_closed_form_chi") {
    io::BkpClosedData d = io::bkp_closed_data_from_json(spec);
    out.poly = bkp_closed_form_chi(d.b, d.c, alpha(std::move(d.alpha)));
    out.hierarchy = "bkp";
  } else if (name == "jacobi_trudi") {
    if (has_alpha) throw InputError("jacobi_trudi takes no alpha");
    out.poly = jacobi_trudi(io::partition_from_json(spec));
    out.hierarchy = "kp";
  } else if (name == "q_schur") {
    if (has_alpha) throw InputError("q_schur takes no alpha");
    out.poly = q_schur(io::strict_partition_from_json(spec));
    out.hierarchy = "bkp";
  } else if (name == "skp_coeff_full" || name == "skp_assignment_sum") {
    SkpSpec s = io::skp_spec_from_json(spec);
    s.alpha = alpha(std::move(s.alpha));
    out.fock = name == "skp_coeff_full" ? skp_coeff_full(s) : skp_assignment_sum(s);
    out.hierarchy = "skp";
    out.s = s.s;
  } else if (name == "skp_closed_form") {
    SkpClosedSpec s = io::skp_closed_spec_from_json(spec);
    s.alpha = alpha(std::move(s.alpha));
    out.fock = skp_closed_form(s);
    out.hierarchy = "skp";
    out.s = s.s;
  } else if (name == "lkdv_tau") {
    LkdvSpec s = io::lkdv_spec_from_json(spec);
    s.alpha = alpha(std::move(s.alpha));
    out.fock = lkdv_tau(s);
    out.hierarchy = "lkdv";
    out.s = s.lambda.size();
    out.lambda = s.lambda;
  } else if (name == "input") {
    if (has_alpha) throw InputError("input values take no alpha");
    if (spec.is_object() && spec.contains("sectors")) {
      out.fock = io::fock_from_json(spec);
      out.s = out.fock->comps();
    } else {
      out.poly = io::poly_from_json(spec);
      out.s = out.poly->comps();
    }
  } else {
    throw InputError("unknown constructor \"" + name + "\"");
  }
  return out;
}

VerificationReport run_verifier(const Built& built, const std::string& hierarchy,
                                const std::optional<Partition>& lambda, int j_max) {
  using namespace tauforge;
  auto as_fock = [&]() {
    if (built.fock) return *built.fock;
    FockVector v(built.poly->comps());
    v.add(tauforge::ChargeVector(built.poly->comps(), 0), *built.poly);
    return v;
  };
  if (hierarchy == "kp") return verify_kp(as_fock());
  if (hierarchy == "bkp") {
    if (!built.poly)
      throw InputError("neutral verification takes a polynomial value");
    return verify_bkp(*built.poly);
  }
  if (hierarchy == "skp") return verify_skp(as_fock());
  if (hierarchy == "lkdv") {
    if (!lambda) throw InputError("reduction verification needs \"lambda\"");
    return verify_lkdv(as_fock(), *lambda, j_max < 0 ? 1 : j_max);
  }
  throw InputError("unknown hierarchy \"" + hierarchy + "\"");
}

int run_job(const Flags& flags) {
  json job = load_json(flags.spec_path);
  if (!job.is_object()) throw InputError("job json: expected an object");
  static const std::vector<std::string> known = {
      "hierarchy", "s", "constructor", "alpha", "basis",
      "verify",    "j_max", "lambda", "output"};
  for (auto it = job.begin(); it != job.end(); ++it) {
    bool ok = false;
    for (const std::string& k : known) ok = ok || it.key() == k;
    if (!ok) throw InputError("job json: unknown key \"" + it.key() + "\"");
  }
  if (!job.contains("constructor"))
    throw InputError("job json: missing key \"constructor\"");
  const json& ctor = job["constructor"];
  if (!ctor.is_object() || !ctor.contains("name") || !ctor.contains("spec") ||
      ctor.size() != 2 || !ctor["name"].is_string())
    throw InputError("job json: constructor needs exactly {\"name\", \"spec\"}");

  bool has_alpha = !flags.alpha.empty() || job.contains("alpha");
  std::vector<int> alpha;
  if (!flags.alpha.empty())
    alpha = parse_int_csv(flags.alpha, "--alpha");
  else if (job.contains("alpha")) {
    if (!job["alpha"].is_array()) throw InputError("job json: alpha must be an array");
    for (const json& e : job["alpha"]) {
      if (!e.is_number_integer()) throw InputError("job json: alpha must hold integers");
      alpha.push_back(e.get<int>());
    }
  }

  Built built = build(ctor["name"].get<std::string>(), ctor["spec"], alpha, has_alpha);

  std::string hierarchy = built.hierarchy;
  if (job.contains("hierarchy")) {
    if (!job["hierarchy"].is_string()) throw InputError("job json: hierarchy must be a string");
    hierarchy = job["hierarchy"].get<std::string>();
  }
  if (!flags.hierarchy.empty()) hierarchy = flags.hierarchy;
  if (hierarchy.empty())
    throw InputError("job json: input values need a hierarchy for verification");

  if (job.contains("s")) {
    int s = job["s"].is_number_integer() ? job["s"].get<int>() : -1;
    if (s != built.s)
      throw InputError("job json: declared s disagrees with the constructed value");
  }

  std::string basis = "p";
  if (job.contains("basis")) {
    if (!job["basis"].is_string()) throw InputError("job json: basis must be a string");
    basis = job["basis"].get<std::string>();
  }
  if (!flags.basis.empty()) basis = flags.basis;

  bool verify = flags.verify;
  if (!verify && job.contains("verify")) {
    if (!job["verify"].is_boolean()) throw InputError("job json: verify must be a boolean");
    verify = job["verify"].get<bool>();
  }
  int j_max = flags.j_max;
  if (j_max < 0 && job.contains("j_max")) {
    if (!job["j_max"].is_number_integer())
      throw InputError("job json: j_max must be an integer");
    j_max = job["j_max"].get<int>();
  }
  std::optional<Partition> lambda = built.lambda;
  if (job.contains("lambda")) {
    std::vector<int> parts;
    if (!job["lambda"].is_array()) throw InputError("job json: lambda must be an array");
    for (const json& e : job["lambda"]) {
      if (!e.is_number_integer()) throw InputError("job json: lambda must hold integers");
      parts.push_back(e.get<int>());
    }
    lambda = Partition(parts);
  }
  std::string out_path = flags.out;
  if (out_path.empty() && job.contains("output")) {
    if (!job["output"].is_string()) throw InputError("job json: output must be a string");
    out_path = job["output"].get<std::string>();
  }

  bool zero = built.poly ? built.poly->is_zero() : built.fock->is_zero();
  if (verify && zero)
    throw InputError("constructed tau-function is zero; verification needs a nonzero tau");

  json doc;
  doc["hierarchy"] = hierarchy;
  doc["constructor"] = built.name;
  doc["s"] = built.s;
  doc["zero"] = zero;
  if (built.poly) {
    doc["poly"] = tauforge::io::poly_to_json(*built.poly, basis);
    doc["rendering"] = tauforge::io::render_poly(*built.poly, basis);
  } else {
    doc["tau"] = tauforge::io::fock_to_json(*built.fock, basis);
    doc["rendering"] = tauforge::io::render_fock(*built.fock, basis);
  }
  int code = kExitOk;
  if (verify) {
    VerificationReport rep = run_verifier(built, hierarchy, lambda, j_max);
    doc["verification"] = tauforge::io::report_to_json(rep);
    if (!rep.passed) code = kExitVerify;
  }
  emit(doc, out_path);
  return code;
}

int run_selfcheck(const Flags& flags) {
  using namespace tauforge;
  VerificationReport rep = selfcheck_suite(flags.selfcheck, flags.max_degree,
                                           flags.max_mode, flags.comps, flags.seed);
  std::cout << "selfcheck " << flags.selfcheck << ": max degree " << flags.max_degree
            << ", max mode " << flags.max_mode << ", s=" << flags.comps << ", seed "
            << flags.seed << "\n";
  for (const NamedCheck& c : rep.extras)
    std::cout << "  " << c.name << ": " << (c.passed ? "ok" : "FAIL") << "\n";
  std::cout << "result: " << (rep.passed ? "pass" : "fail") << "\n";
  if (!flags.out.empty()) emit(io::report_to_json(rep), flags.out);
  return rep.passed ? kExitOk : kExitVerify;
}

}  // namespace

int main(int argc, char** argv) {
  Flags flags;
  CLI::App app{
      "tauforge: exact polynomial tau-functions of the KP family and their "
      "bilinear-identity verifiers (TAUFORGE_THREADS caps workers)"};
  app.add_option("--hierarchy", flags.hierarchy, "kp|bkp|skp|lkdv (verifier family)")
      ->check(CLI::IsMember({"kp", "bkp", "skp", "lkdv"}));
  app.add_option("--spec", flags.spec_path, "job JSON file");
  app.add_option("--alpha", flags.alpha, "comma-separated row exponents, overrides the spec");
  app.add_option("--basis", flags.basis, "rendering basis: p|t")
      ->check(CLI::IsMember({"p", "t"}));
  app.add_flag("--verify", flags.verify, "verify the constructed value");
  app.add_option("--jmax", flags.j_max, "highest reduction shift to verify");
  app.add_option("--out", flags.out, "output file (default stdout)");
  app.add_option("--selfcheck", flags.selfcheck,
                 "run a relation suite: series|clifford|oracles|all")
      ->check(CLI::IsMember({"series", "clifford", "oracles", "all"}));
  app.add_option("--max-degree", flags.max_degree, "selfcheck degree bound");
  app.add_option("--max-mode", flags.max_mode, "selfcheck mode bound");
  app.add_option("--comps", flags.comps, "selfcheck component count");
  app.add_option("--seed", flags.seed, "selfcheck random seed");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int r = app.exit(e);
    return r == 0 ? kExitOk : kExitInput;
  }

  try {
    if (!flags.selfcheck.empty() && !flags.spec_path.empty())
      throw tauforge::InputError("--selfcheck and --spec are mutually exclusive");
    if (!flags.selfcheck.empty()) return run_selfcheck(flags);
    if (flags.spec_path.empty())
      throw tauforge::InputError("nothing to do: pass --spec or --selfcheck");
    return run_job(flags);
  } catch (const tauforge::InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInput;
  }
}
