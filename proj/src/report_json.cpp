#include "k3lat/report_json.hpp"

#include <climits>

#include "k3lat/error.hpp"

namespace k3lat {

Json integer_json(const mpz_class& x) {
  if (x.fits_slong_p()) return static_cast<std::int64_t>(x.get_si());
  return x.get_str();
}

mpz_class integer_from_json(const Json& j) {
  if (j.is_number_integer()) return mpz_class(std::to_string(j.get<std::int64_t>()));
  if (j.is_string()) return mpz_class(j.get<std::string>());
  throw Error(ErrorCode::ParseError, "expected an integer, got " + j.dump());
}

Json vector_json(const IntVector& v) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(integer_json(x));
  return out;
}

Json matrix_json(const IntMatrix& m) {
  Json out = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) out.push_back(vector_json(m.row(i)));
  return out;
}

LatticeInfo lattice_info(const Lattice& l) {
  LatticeInfo info;
  info.rank = l.rank();
  info.signature = signature(l);
  info.even = is_even(l);
  info.det = determinant(l);
  info.invariant_factors = discriminant_group(l).invariant_factors;
  try {
    info.invariants = two_elementary_invariants(l);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::NotTwoElementary) throw;
  }
  return info;
}

Json to_json(const TwoElemInvariants& t) { return Json{{"r", t.r}, {"a", t.a}, {"delta", t.delta}}; }

Json to_json(const LatticeInfo& info) {
  Json j;
  j["rank"] = info.rank;
  j["signature"] = Json{{"plus", info.signature.plus}, {"zero", info.signature.zero}, {"minus", info.signature.minus}};
  j["even"] = info.even;
  j["det"] = integer_json(info.det);
  j["invariant_factors"] = vector_json(info.invariant_factors);
  j["two_elementary"] = info.invariants ? to_json(*info.invariants) : Json(nullptr);
  return j;
}

Json to_json(const RootList& roots) {
  Json j;
  j["norm"] = integer_json(roots.norm);
  j["count"] = roots.vectors.size();
  j["radical_rank"] = roots.radical_rank;
  Json vs = Json::array();
  for (const auto& v : roots.vectors) vs.push_back(vector_json(v.coords()));
  j["vectors"] = std::move(vs);
  return j;
}

Json to_json(const FibrationReport& report) {
  Json j;
  j["fiber_class"] = vector_json(report.fiber_class.coords());
  Json fibers = Json::array();
  for (const auto& f : report.fibers) {
    Json fj;
    fj["kind"] = f.kind.to_string();
    Json members = Json::array();
    for (const auto& m : f.members) members.push_back(vector_json(m.coords()));
    fj["members"] = std::move(members);
    Json marks = Json::array();
    for (const auto& m : f.marks) marks.push_back(integer_json(m));
    fj["marks"] = std::move(marks);
    fibers.push_back(std::move(fj));
  }
  j["fibers"] = std::move(fibers);
  Json sections = Json::array();
  for (const auto& s : report.sections) sections.push_back(vector_json(s.coords()));
  j["sections"] = std::move(sections);
  j["shioda_tate_rank"] = report.shioda_tate_rank;
  j["mw_rank"] = report.mw_rank;
  j["mw_gram"] = matrix_json(report.mw_lattice.gram());
  j["mw_rootless"] = report.mw_rootless;
  return j;
}

Json triples_json(const std::vector<TwoElemInvariants>& triples) {
  Json list = Json::array();
  for (const auto& t : triples) list.push_back(to_json(t));
  return Json{{"count", triples.size()}, {"triples", std::move(list)}};
}

void to_json(Json& j, const CheckResult& c) {
  j = Json{{"name", c.name}, {"pass", c.pass}, {"expected", c.expected}, {"actual", c.actual}, {"source", c.source}};
}

void from_json(const Json& j, CheckResult& c) {
  j.at("name").get_to(c.name);
  j.at("pass").get_to(c.pass);
  j.at("expected").get_to(c.expected);
  j.at("actual").get_to(c.actual);
  j.at("source").get_to(c.source);
}

void to_json(Json& j, const CaseReport& r) {
  j = Json{{"case", r.case_id}, {"checks", r.checks}, {"pass", r.pass}};
}

void from_json(const Json& j, CaseReport& r) {
  j.at("case").get_to(r.case_id);
  j.at("checks").get_to(r.checks);
  j.at("pass").get_to(r.pass);
}

Json reports_json(const std::vector<CaseReport>& reports) {
  std::size_t passed = 0;
  for (const auto& r : reports) passed += r.pass ? 1 : 0;
  return Json{{"cases", reports}, {"passed", passed}, {"total", reports.size()}, {"pass", passed == reports.size()}};
}

std::vector<CaseReport> reports_from_json(const Json& j) { return j.at("cases").get<std::vector<CaseReport>>(); }

}  // namespace k3lat
