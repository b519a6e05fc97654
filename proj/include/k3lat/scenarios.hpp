#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "k3lat/fibration.hpp"
#include "k3lat/lattice.hpp"
#include "k3lat/roots.hpp"

namespace k3lat {

/// An expected value together with where it comes from.
template <class T>
struct Sourced {
  T value;
  std::string source;
};

using Divisor = std::vector<std::pair<std::string, long>>;  // class name -> multiplicity

struct ExpectedFiber {
  DynkinKind kind;
  Divisor divisor;  // empty: marks are not checked
};

/// One elliptic pencil of a case: its fiber class, the named fiber
/// components and section candidates, and what the analysis must find.
struct PencilSpec {
  std::string fiber;
  std::vector<std::string> components;
  std::vector<std::string> sections;
  Sourced<std::vector<ExpectedFiber>> fibers;
  Sourced<long> mw_rank;
  std::string rootless_source;
  // Generators printed for the MW lattice; their complement must have rank mw_rank.
  std::optional<Sourced<std::vector<std::string>>> printed_mw_set;
};

struct DualFormula {
  std::string label;                               // e.g. "3e* + f1* + ..."
  std::vector<std::pair<std::string, long>> terms;  // basis label -> coefficient
};

struct SectionClaim {
  std::string fiber;
  std::string curve;
  long intersection = 1;  // expected curve . fiber
  Sourced<bool> is_section;
};

struct ThetaSpec {
  std::vector<std::string> plus;
  std::vector<std::string> minus;
  long fixed_fiber_count = 1;
  std::string source;
};

struct AlphaSpec {
  std::string alpha;
  std::string fiber;
  std::vector<std::string> known_curves;
  std::string source;
};

struct RootlessClaim {
  enum class Kind { Span, Complement };
  std::string name;
  Kind kind = Kind::Span;
  std::vector<std::string> classes;
  std::string source;
};

struct CaseScenario {
  std::string id;
  Lattice lattice;
  std::vector<NamedClass> classes;  // basis elements first, then derived classes

  Sourced<TwoElemInvariants> invariants;
  // Candidate dual-basis definitions of c, tried in order. Empty when c is a basis element.
  std::vector<DualFormula> c_candidates;
  std::string c_variant;  // label of the candidate that defined c, if any
  std::optional<Sourced<IntVector>> c_expansion;
  std::string c_source;

  std::optional<PencilSpec> e_pencil;
  PencilSpec c_pencil;
  std::vector<SectionClaim> sections;
  std::optional<ThetaSpec> theta;
  std::optional<AlphaSpec> alpha;
  std::vector<RootlessClaim> rootless;

  const LatticeClass& cls(std::string_view name) const;  // throws InvalidArgument
  std::vector<LatticeClass> classes_named(const std::vector<std::string>& names) const;

  // (expectation, source) for every expected value carried by the scenario.
  std::vector<std::pair<std::string, std::string>> expectation_sources() const;
};

/// Known case ids: s3_10_10_1, s4_10_8_0, s5_11_9_1, s6_t=0 .. s6_t=6,
/// s7_18_2_1, s8_14_6_0.
std::vector<std::string> case_ids();
CaseScenario make_case(std::string_view id);  // throws UnknownCase

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string expected;
  std::string actual;
  std::string source;

  friend bool operator==(const CheckResult&, const CheckResult&) = default;
};

struct CaseReport {
  std::string case_id;
  std::vector<CheckResult> checks;
  bool pass = false;

  const CheckResult* find(std::string_view name) const;
  friend bool operator==(const CaseReport&, const CaseReport&) = default;
};

struct VerifyOptions {
  NormVectorEnumerator enumerate = enumerate_norm_vectors;
};

CaseReport verify(const CaseScenario& scn, const VerifyOptions& options = {});

/// Runs the selected cases ("all" or empty selects every case) and returns
/// reports in case_ids() order. Throws UnknownCase.
std::vector<CaseReport> verify_all(const std::vector<std::string>& filter = {}, const VerifyOptions& options = {});

}  // namespace k3lat
