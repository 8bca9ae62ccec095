#pragma once

#include <json.hpp>

#include <string>

#include "tauforge/fock.hpp"
#include "tauforge/poly.hpp"
#include "tauforge/taugen.hpp"
#include "tauforge/verify.hpp"

namespace tauforge::io {

// Key order is fixed at insertion so emissions are byte-stable.
using json = nlohmann::ordered_json;

// Polynomial document {"s", "basis", "terms"}; terms follow the canonical
// order, monomial keys "<a>:<n>" ascend by (component, index). Basis "t"
// scales each coefficient by prod n^e so that p_n = n t_n exactly; parsing
// undoes the scaling, so either basis round-trips to the same value.
json poly_to_json(const Poly& f, const std::string& basis = "p");
Poly poly_from_json(const json& j);

// {"coeffs": {"<k>": "<num>/<den>", ...}}, keys ascending.
json laurent_to_json(const LaurentPoly& A);
LaurentPoly laurent_from_json(const json& j);

// Same shape as a Laurent polynomial; keys must be >= 1.
json shift_to_json(const ShiftVector& c);
ShiftVector shift_from_json(const json& j);

// {"s", "sectors": [{"charge": [...], "poly": ...}, ...]}, charges
// lexicographic.
json fock_to_json(const FockVector& v, const std::string& basis = "p");
FockVector fock_from_json(const json& j);

// {"s", "sectors": [{"left": [...], "right": [...], "poly": ...}, ...]};
// sector polynomials carry 2s components (left factor then right).
json tensor_to_json(const TensorFockVector& w, const std::string& basis = "p");
TensorFockVector tensor_from_json(const json& j);

// {"identity", "passed", "residual", "mode_ranges", "extras"}.
json report_to_json(const VerificationReport& rep);

// Human-readable forms: "1/2*t1^2 + t2" (one component drops the component
// prefix; several use "t<a>:<n>"), sector lines "z^2: ..." or
// "z^[1,0]: ..." in charge order. Zero renders as "0".
std::string render_poly(const Poly& f, const std::string& basis = "p");
std::string render_fock(const FockVector& v, const std::string& basis = "p");

// Constructor documents mirror the spec structs field by field. Unknown or
// missing keys, wrong shapes, and malformed numbers raise InputError.
KpSpec kp_spec_from_json(const json& j);
BkpSpec bkp_spec_from_json(const json& j);
SkpSpec skp_spec_from_json(const json& j);
SkpClosedSpec skp_closed_spec_from_json(const json& j);
LkdvSpec lkdv_spec_from_json(const json& j);

// {"b", "M", "c", "alpha"} for the charged closed form; {"b", "c", "alpha"}
// for the neutral one.
struct KpClosedData {
  std::vector<Rational> b;
  std::vector<int> M;
  std::vector<ShiftVector> c;
  std::vector<int> alpha;
};
struct BkpClosedData {
  std::vector<Rational> b;
  std::vector<ShiftVector> c;
  std::vector<int> alpha;
};
KpClosedData kp_closed_data_from_json(const json& j);
BkpClosedData bkp_closed_data_from_json(const json& j);

// {"lambda": [...]} with plain (weakly decreasing) or strict parts.
Partition partition_from_json(const json& j);
StrictPartition strict_partition_from_json(const json& j);

}  // namespace tauforge::io
