#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "k3lat/fibration.hpp"
#include "k3lat/lattice.hpp"
#include "k3lat/roots.hpp"
#include "k3lat/scenarios.hpp"

namespace k3lat {

using Json = nlohmann::ordered_json;

// Integers are JSON numbers when they fit in a signed 64-bit value and
// decimal strings otherwise.
Json integer_json(const mpz_class& x);
mpz_class integer_from_json(const Json& j);
Json vector_json(const IntVector& v);
Json matrix_json(const IntMatrix& m);

struct LatticeInfo {
  std::size_t rank = 0;
  Signature signature;
  bool even = false;
  mpz_class det;
  IntVector invariant_factors;
  std::optional<TwoElemInvariants> invariants;  // empty: not 2-elementary
};

/// Throws Degenerate for a singular form.
LatticeInfo lattice_info(const Lattice& l);

Json to_json(const LatticeInfo& info);
Json to_json(const RootList& roots);
Json to_json(const FibrationReport& report);
Json to_json(const TwoElemInvariants& t);
Json triples_json(const std::vector<TwoElemInvariants>& triples);

void to_json(Json& j, const CheckResult& c);
void from_json(const Json& j, CheckResult& c);
void to_json(Json& j, const CaseReport& r);
void from_json(const Json& j, CaseReport& r);

Json reports_json(const std::vector<CaseReport>& reports);
std::vector<CaseReport> reports_from_json(const Json& j);

}  // namespace k3lat
