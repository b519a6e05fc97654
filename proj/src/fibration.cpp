#include "k3lat/fibration.hpp"

#include <algorithm>

#include "k3lat/error.hpp"

namespace k3lat {

mpz_class arithmetic_genus(const LatticeClass& x) {
  const mpz_class sq = x.square();
  if (mpz_odd_p(sq.get_mpz_t())) throw Error(ErrorCode::OddSquare, x.to_string() + " has odd square");
  return sq / 2 + 1;
}

std::string FixedLocus::to_string() const {
  switch (shape) {
    case Shape::GenusCurvePlusRationals:
      return "C(g=" + std::to_string(g) + ") + " + std::to_string(k) + " rational";
    case Shape::TwoGenusOneCurves: return "C1(g=1) + C2(g=1)";
    case Shape::Empty: return "empty";
  }
  return "?";
}

bool is_admissible(const TwoElemInvariants& inv) {
  const long r = static_cast<long>(inv.r);
  const long a = static_cast<long>(inv.a);
  if (inv.delta != 0 && inv.delta != 1) return false;
  if (r < 1 || r > 20 || a < 0 || a > r) return false;
  if ((r + a) % 2 != 0 || r + a > 22) return false;
  if (inv.delta == 0 && (a % 2 != 0 || r % 4 != 2)) return false;
  if (a == 0 && r % 8 != 2) return false;
  if (a == 1 && r % 8 != 1 && r % 8 != 3) return false;
  if (inv.delta == 0 && ((r == 6 && a == 6) || (r == 14 && a == 8))) return false;
  return true;
}

std::vector<TwoElemInvariants> admissible_triples() {
  std::vector<TwoElemInvariants> out;
  for (std::size_t r = 1; r <= 20; ++r)
    for (std::size_t a = r % 2; a <= std::min<std::size_t>(r, 22 - r); a += 2)
      for (int delta : {0, 1}) {
        TwoElemInvariants t{r, a, delta};
        if (is_admissible(t)) out.push_back(t);
      }
  return out;
}

FixedLocus fixed_locus(const TwoElemInvariants& inv) {
  if (!is_admissible(inv)) throw Error(ErrorCode::InadmissibleTriple, inv.to_string());
  if (inv == TwoElemInvariants{10, 8, 0}) return {FixedLocus::Shape::TwoGenusOneCurves, 1, 0};
  if (inv == TwoElemInvariants{10, 10, 0}) return {FixedLocus::Shape::Empty, 0, 0};
  const long r = static_cast<long>(inv.r);
  const long a = static_cast<long>(inv.a);
  return {FixedLocus::Shape::GenusCurvePlusRationals, 11 - (r + a) / 2, (r - a) / 2};
}

DynkinKind predicted_fiber_type(const TwoElemInvariants& inv) {
  const FixedLocus locus = fixed_locus(inv);
  if (locus.shape != FixedLocus::Shape::GenusCurvePlusRationals || inv.r + inv.a != 20)
    throw Error(ErrorCode::NotApplicable, inv.to_string() + " has no invariant elliptic pencil of this kind");
  if (locus.k == 0) throw Error(ErrorCode::NotApplicable, "k = 0: the invariant pencil has no reducible fibers");
  if (locus.k == 4 && inv.delta == 0) return DynkinKind::extended(DynkinKind::Family::E, 6);
  return DynkinKind::extended(DynkinKind::Family::A, static_cast<int>(2 * locus.k - 1));
}

FibrationReport analyze_fibration(const Lattice& s, const LatticeClass& e, const std::vector<LatticeClass>& components,
                                  const std::vector<LatticeClass>& section_candidates,
                                  const NormVectorEnumerator& enumerate) {
  if (!e.lattice().same_as(s)) throw Error(ErrorCode::LatticeMismatch, "fiber class is not in the base lattice");
  if (e.is_zero() || e.square() != 0) throw Error(ErrorCode::NotIsotropic, e.to_string() + " is not isotropic");
  for (const auto& c : components)
    if (inner(c, e) != 0) throw Error(ErrorCode::ComponentNotPerp, c.to_string() + " meets the fiber class");

  FibrationReport report{s, e, classify_components(components), {}, 0, 0, Lattice(), IntMatrix(), false};

  long fiber_rank = 0;
  for (const auto& f : report.fibers) {
    if (!f.kind.affine || !f.isotropic_sum || *f.isotropic_sum != e)
      throw Error(ErrorCode::FiberSumMismatch,
                  "fiber of type " + f.kind.to_string() + " does not sum to " + e.to_string());
    fiber_rank += static_cast<long>(f.members.size()) - 1;
  }
  for (const auto& c : section_candidates)
    if (inner(c, e) == 1 && c.square() == -2) report.sections.push_back(c);

  report.shioda_tate_rank = static_cast<long>(s.rank()) - 2 - fiber_rank;

  std::vector<LatticeClass> span{e};
  span.insert(span.end(), components.begin(), components.end());
  if (!report.sections.empty()) span.push_back(report.sections.front());
  Sublattice complement = orthogonal_complement(s, span);
  if (report.sections.empty()) {
    // The complement contains e; the Mordell-Weil lattice is its quotient by the radical.
    RadicalQuotient rq = radical_quotient(complement.lattice);
    report.mw_lattice = rq.quotient.lattice;
    report.mw_embedding = rq.quotient.embedding * complement.embedding;
  } else {
    report.mw_lattice = complement.lattice;
    report.mw_embedding = complement.embedding;
  }
  report.mw_rank = static_cast<long>(report.mw_lattice.rank());
  report.mw_rootless = report.mw_lattice.rank() == 0 || enumerate(report.mw_lattice, -2).vectors.empty();
  return report;
}

bool effective_root_check(const Lattice& s, const LatticeClass& alpha, const LatticeClass& e,
                          const std::vector<LatticeClass>& known_curves) {
  if (!alpha.lattice().same_as(s) || !e.lattice().same_as(s)) return false;
  if (alpha.square() != -2 || inner(alpha, e) != 2) return false;
  return std::all_of(known_curves.begin(), known_curves.end(),
                     [&](const LatticeClass& m) { return m == alpha || inner(alpha, m) >= 0; });
}

ThetaVerdict verify_theta_types(const ThetaAssignment& t) {
  ThetaVerdict v;
  auto violate = [&](std::string msg) {
    v.ok = false;
    v.violations.push_back(std::move(msg));
  };
  for (std::size_t i = 0; i < t.plus.size(); ++i) {
    for (std::size_t j = i + 1; j < t.plus.size(); ++j) {
      const mpz_class p = inner(t.plus[i].value, t.plus[j].value);
      if (p != 0) violate("plus " + t.plus[i].name + " . " + t.plus[j].name + " = " + p.get_str());
    }
    const mpz_class pc = inner(t.plus[i].value, t.invariant_fiber);
    if (pc != 0) violate("plus " + t.plus[i].name + " . c = " + pc.get_str());
  }
  for (const auto& m : t.minus) {
    mpz_class total = t.fixed_fiber_count * inner(m.value, t.invariant_fiber);
    for (const auto& p : t.plus) total += inner(m.value, p.value);
    if (total != 2) violate("minus " + m.name + " meets the fixed locus " + total.get_str() + " times");
  }
  return v;
}

}  // namespace k3lat
