#include "k3lat/scenarios.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "k3lat/error.hpp"
#include "k3lat/parallel.hpp"

namespace k3lat {

namespace {

using Terms = std::vector<std::pair<std::string, long>>;

std::string name_list(const std::vector<std::string>& names) {
  std::string out;
  for (const auto& n : names) out += (out.empty() ? "" : ",") + n;
  return out;
}

std::string indexed(std::string_view prefix, long i) { return std::string(prefix) + std::to_string(i); }

std::vector<std::string> indexed_range(std::string_view prefix, long first, long last) {
  std::vector<std::string> out;
  for (long i = first; i <= last; ++i) out.push_back(indexed(prefix, i));
  return out;
}

template <class... Vs>
std::vector<std::string> concat(Vs&&... parts) {
  std::vector<std::string> out;
  (out.insert(out.end(), parts.begin(), parts.end()), ...);
  return out;
}

Lattice labeled(const Lattice& l, std::vector<std::string> labels) { return l.relabeled(std::move(labels)); }

Lattice e8_doubled() { return rescale(root_lattice(RootKind::E, 8), 2); }

// Scenario under construction: keeps named classes and builds derived ones.
class Builder {
 public:
  Builder(std::string id, Lattice lattice) {
    scn_.id = std::move(id);
    scn_.lattice = std::move(lattice);
    for (std::size_t i = 0; i < scn_.lattice.rank(); ++i)
      scn_.classes.push_back({scn_.lattice.labels()[i], scn_.lattice.basis(i)});
  }

  LatticeClass combo(const Terms& terms) const {
    LatticeClass x = scn_.lattice.zero();
    for (const auto& [name, k] : terms) x += mpz_class(k) * scn_.cls(name);
    return x;
  }

  void add(std::string name, LatticeClass value) { scn_.classes.push_back({std::move(name), std::move(value)}); }
  void add(std::string name, const Terms& terms) { add(std::move(name), combo(terms)); }

  // Defines c by the first candidate that is integral with c^2 = 0. When none
  // qualifies, c falls back to the printed expansion so that the verifier
  // reports the failure instead of construction aborting.
  void define_c(std::vector<DualFormula> candidates) {
    scn_.c_candidates = std::move(candidates);
    for (const auto& cand : scn_.c_candidates) {
      try {
        LatticeClass c = dual_expression_to_class(scn_.lattice, cand.terms);
        if (c.square() != 0) continue;
        scn_.c_variant = cand.label;
        add("c", std::move(c));
        return;
      } catch (const Error& e) {
        if (e.code() != ErrorCode::NotIntegral) throw;
      }
    }
    scn_.c_variant = "none";
    add("c", scn_.lattice.element(scn_.c_expansion ? scn_.c_expansion->value : IntVector(scn_.lattice.rank())));
  }

  // Every named (-2)-class that is not of type +.
  std::vector<std::string> minus_complement(const std::vector<std::string>& plus) const {
    std::vector<std::string> out;
    for (const auto& nc : scn_.classes)
      if (nc.value.square() == -2 && std::find(plus.begin(), plus.end(), nc.name) == plus.end())
        out.push_back(nc.name);
    return out;
  }

  CaseScenario& scenario() { return scn_; }
  CaseScenario take() { return std::move(scn_); }

 private:
  CaseScenario scn_;
};

ExpectedFiber affine_a1(const std::string& x, const std::string& y) {
  return {DynkinKind::extended(DynkinKind::Family::A, 1), {{x, 1}, {y, 1}}};
}

ExpectedFiber all_ones(DynkinKind kind, const std::vector<std::string>& names) {
  ExpectedFiber f{kind, {}};
  for (const auto& n : names) f.divisor.emplace_back(n, 1);
  return f;
}

// c, d, e1..e8 with {c, d} spanning `head` and e1..e8 spanning E8(2).
Lattice head_plus_e8_doubled(IntMatrix head, std::vector<Lattice> tail = {}) {
  std::vector<Lattice> parts{Lattice::from_gram(std::move(head), {"c", "d"}),
                             labeled(e8_doubled(), indexed_range("e", 1, 8))};
  parts.insert(parts.end(), tail.begin(), tail.end());
  return direct_sum(parts);
}

PencilSpec no_reducible_fibers(std::vector<std::string> sections, std::string fiber_source) {
  PencilSpec p;
  p.fiber = "c";
  p.sections = std::move(sections);
  p.fibers = {{}, std::move(fiber_source)};
  p.mw_rank = {8, "MW of |c| contains Z^8 with 8 = rk E8(2)"};
  p.rootless_source = "E8(2) has no elements with square -2";
  return p;
}

RootlessClaim e8_block_rootless() {
  return {"E8(2)", RootlessClaim::Kind::Span, indexed_range("e", 1, 8), "E8(2) has no elements with square -2"};
}

CaseScenario case_10_10_1() {
  Builder b("s3_10_10_1", head_plus_e8_doubled(IntMatrix{{0, 2}, {2, -2}}));
  auto& s = b.scenario();
  s.invariants = {{10, 10, 1}, "stated invariants of <(0 2 / 2 -2)> + E8(2)"};
  s.c_source = "c is the basis element with c.c = 0 in the (0 2 / 2 -2) block";
  s.c_pencil = no_reducible_fibers({"d"}, "k = 0: the pencil |c| has no reducible fibers");
  s.sections = {{"c", "d", 2, {false, "c.d = 2; the pencil |c| has no section among the named curves"}}};
  s.theta = ThetaSpec{{}, b.minus_complement({}), 1, "C meets D in the two fixed points of the involution on D"};
  s.rootless = {e8_block_rootless(),
                {"(c)^perp", RootlessClaim::Kind::Complement, {"c"}, "(c)^perp = Zc + E8(2) has no elements with square -2"}};
  return b.take();
}

CaseScenario case_10_8_0() {
  Builder b("s4_10_8_0", head_plus_e8_doubled(IntMatrix{{0, 1}, {1, -2}}));
  auto& s = b.scenario();
  s.invariants = {{10, 8, 0}, "stated invariants of U + E8(2) with U = (0 1 / 1 -2)"};
  s.c_source = "c is the basis element with c.c = 0 in the U block";
  s.c_pencil = no_reducible_fibers({"d"}, "fixed locus is two genus-1 fibers of |c|; no reducible fibers");
  s.sections = {{"c", "d", 1, {true, "D is a section of |c|: c.d = 1"}}};
  s.theta = ThetaSpec{{}, b.minus_complement({}), 2, "C1 and C2 each meet D once: two fixed points on D"};
  s.rootless = {e8_block_rootless(),
                {"(c)^perp", RootlessClaim::Kind::Complement, {"c"}, "(c)^perp = Zc + E8(2) has no elements with square -2"}};
  return b.take();
}

CaseScenario case_11_9_1() {
  Builder b("s5_11_9_1",
            head_plus_e8_doubled(IntMatrix{{0, 1}, {1, -2}}, {labeled(root_lattice(RootKind::A, 1), {"f1"})}));
  b.add("f2", Terms{{"c", 1}, {"f1", -1}});
  auto& s = b.scenario();
  s.invariants = {{11, 9, 1}, "stated invariants of U + E8(2) + A1"};
  s.c_source = "c is the basis element with c.c = 0 in the U block";

  PencilSpec p;
  p.fiber = "c";
  p.components = {"f1", "f2"};
  p.sections = {"d"};
  p.fibers = {{affine_a1("f1", "f2")}, "f1 and f2 = c - f1 form a reducible fiber of type At1"};
  p.mw_rank = {8, "MW of |c| contains Z^8 with 8 = rk E8(2)"};
  p.rootless_source = "(c, f1, f2)^perp = Zc + E8(2) has no elements with square -2";
  s.e_pencil = p;
  s.c_pencil = p;
  s.sections = {{"c", "d", 1, {true, "D gives the section of |c|"}}};
  s.theta = ThetaSpec{{"f2"}, b.minus_complement({"f2"}), 1, "E1 = F2 with class c - f1; k = 1"};
  s.rootless = {e8_block_rootless(),
                {"(c,f1,f2)^perp", RootlessClaim::Kind::Complement, {"c", "f1", "f2"},
                 "(c, f1, f2)^perp = Zc + E8(2) has no elements with square -2"}};
  return b.take();
}

CaseScenario case_general(long t) {
  const long m = 16 - 2 * t;  // D_m block
  std::vector<Lattice> parts{labeled(hyperbolic_plane_with_root(), {"e", "d"}),
                             labeled(root_lattice(RootKind::D, static_cast<int>(m)), indexed_range("f", 1, m))};
  for (long j = 1; j <= t; ++j) parts.push_back(labeled(root_lattice(RootKind::A, 1), {indexed("g", j)}));
  Builder b("s6_t=" + std::to_string(t), direct_sum(parts));
  auto& s = b.scenario();

  s.invariants = {{static_cast<std::size_t>(18 - t), static_cast<std::size_t>(2 + t), t > 0 ? 1 : 0},
                  "stated invariants r = 18 - t, a = 2 + t, delta = 1 iff t > 0 of U + D_{16-2t} + tA1"};

  // Extended D_m node and the second components of the A1 fibers.
  Terms f0{{"e", 1}, {"f1", -1}, {indexed("f", m - 1), -1}, {indexed("f", m), -1}};
  for (long k = 2; k <= m - 2; ++k) f0.emplace_back(indexed("f", k), -2);
  b.add("f0", f0);
  for (long j = 1; j <= t; ++j) b.add(indexed("g", j) + "'", Terms{{"e", 1}, {indexed("g", j), -1}});

  IntVector expansion{6, 3};
  for (long k = 1; k <= m - 2; ++k) expansion.emplace_back(-(k + 1));
  expansion.emplace_back(-(8 - t));
  expansion.emplace_back(-(8 - t));
  for (long j = 1; j <= t; ++j) expansion.emplace_back(-1);
  s.c_expansion = Sourced<IntVector>{expansion, "printed expansion 6e + 3d - 2f1 - 3f2 - ... - (8-t)f_{16-2t} - g1 - ... - gt"};
  s.c_source = "c = 3e* + f1* + f_{15-2t}* + f_{16-2t}* + 2g1* + ... + 2gt*, with c^2 = 0";
  Terms dual{{"e", 3}, {"f1", 1}, {indexed("f", m - 1), 1}, {indexed("f", m), 1}};
  for (long j = 1; j <= t; ++j) dual.emplace_back(indexed("g", j), 2);
  b.define_c({{"3e* + f1* + f_{15-2t}* + f_{16-2t}* + 2g*", dual}});

  // alpha from the component list: c - d - f0 - f2 - f3 - ... - f_{14-2t}.
  Terms alpha{{"c", 1}, {"d", -1}, {"f0", -1}};
  for (long k = 2; k <= m - 2; ++k) alpha.emplace_back(indexed("f", k), -1);
  b.add("alpha", alpha);

  const auto f_inner = indexed_range("f", 2, m - 2);  // f2 .. f_{14-2t}
  const auto g_names = indexed_range("g", 1, t);
  std::vector<std::string> g_primes;
  for (const auto& g : g_names) g_primes.push_back(g + "'");

  PencilSpec ep;
  ep.fiber = "e";
  ep.components = concat(std::vector<std::string>{"f0"}, indexed_range("f", 1, m), g_names, g_primes);
  ep.sections = {"d"};
  ExpectedFiber dt{DynkinKind::extended(DynkinKind::Family::D, static_cast<int>(m)),
                   {{"f0", 1}, {"f1", 1}, {indexed("f", m - 1), 1}, {indexed("f", m), 1}}};
  for (const auto& f : f_inner) dt.divisor.emplace_back(f, 2);
  std::vector<ExpectedFiber> efibers{dt};
  for (long j = 0; j < t; ++j) efibers.push_back(affine_a1(g_names[j], g_primes[j]));
  ep.fibers = {efibers, "fiber F0 + F1 + 2F2 + ... + 2F_{14-2t} + F_{15-2t} + F_{16-2t} and t fibers Gj + Gj'"};
  ep.mw_rank = {0, "Shioda-Tate count with the listed fibers of |e|"};
  ep.rootless_source = "MW of |e| is trivial";
  s.e_pencil = ep;

  PencilSpec cp;
  cp.fiber = "c";
  cp.components = concat(std::vector<std::string>{"d", "f0"}, f_inner, std::vector<std::string>{"alpha"});
  cp.sections = {"f1"};
  cp.fibers = {{all_ones(DynkinKind::extended(DynkinKind::Family::A, static_cast<int>(15 - 2 * t)), cp.components)},
               "components d, f0, f2, f3, ..., f_{14-2t}, alpha of a fiber of type At_{15-2t}"};
  cp.mw_rank = {t + 1, "MW has rank t + 1 = a - 1"};
  cp.rootless_source = "the lattice MW has no elements with square -2";
  cp.printed_mw_set = Sourced<std::vector<std::string>>{
      concat(std::vector<std::string>{"c", "f1"}, indexed_range("f", 3, m - 2),
             std::vector<std::string>{"f0", "d", "alpha"}),
      "MW = (c, f1, f3, f4, ..., f_{14-2t}, f0, d, alpha)^perp"};
  s.c_pencil = cp;

  s.sections = {{"e", "d", 1, {true, "D is a section of |e|"}},
                {"c", "f1", 1, {true, "F1 is a section of |c|: f1.c = 1"}}};

  std::vector<std::string> plus{"d"};
  for (long k = 2; k <= m - 2; k += 2) plus.push_back(indexed("f", k));
  s.theta = ThetaSpec{plus, b.minus_complement(plus), 1, "type + curves d, f2, f4, ..., f_{14-2t}; k = 8 - t"};
  s.alpha = AlphaSpec{"alpha", "e",
                      concat(std::vector<std::string>{"d", "f0"}, indexed_range("f", 1, m), g_names, g_primes),
                      "alpha^2 = -2, e.alpha = 2, alpha meets the curves with e.M in {0,1} non-negatively"};
  return b.take();
}

CaseScenario case_18_2_1() {
  Builder b("s7_18_2_1", direct_sum({labeled(hyperbolic_plane_with_root(), {"e", "d"}),
                                     labeled(root_lattice(RootKind::E, 8), indexed_range("f", 1, 8)),
                                     labeled(root_lattice(RootKind::E, 7), indexed_range("g", 1, 7)),
                                     labeled(root_lattice(RootKind::A, 1), {"h1"})}));
  auto& s = b.scenario();
  s.invariants = {{18, 2, 1}, "stated invariants of U + E8 + E7 + A1"};

  b.add("f0", Terms{{"e", 1}, {"f1", -2}, {"f2", -3}, {"f3", -4}, {"f4", -6}, {"f5", -5}, {"f6", -4}, {"f7", -3}, {"f8", -2}});
  b.add("g0", Terms{{"e", 1}, {"g1", -2}, {"g2", -2}, {"g3", -3}, {"g4", -4}, {"g5", -3}, {"g6", -2}, {"g7", -1}});
  b.add("h1'", Terms{{"e", 1}, {"h1", -1}});

  s.c_expansion = Sourced<IntVector>{
      {6, 3, -5, -8, -10, -15, -12, -9, -6, -3, -3, -5, -6, -9, -7, -5, -3, -1},
      "printed expansion 6e+3d-5f1-8f2-10f3-15f4-12f5-9f6-6f7-3f8-3g1-5g2-6g3-9g4-7g5-5g6-3g7-h1"};
  s.c_source = "c = 3e* + f2* + g2* + g7* + 2h1*, with c^2 = 0";
  b.define_c({{"3e* + f2* + g2* + g7* + 2h1*", {{"e", 3}, {"f2", 1}, {"g2", 1}, {"g7", 1}, {"h1", 2}}}});

  const std::vector<std::string> cycle{"d", "f1", "f3", "f4", "f5", "f6", "f7", "f8", "f0",
                                       "g0", "g1", "g3", "g4", "g5", "g6"};
  Terms alpha{{"c", 1}};
  for (const auto& n : cycle) alpha.emplace_back(n, -1);
  b.add("alpha", alpha);

  PencilSpec ep;
  ep.fiber = "e";
  ep.components = concat(std::vector<std::string>{"f0"}, indexed_range("f", 1, 8), std::vector<std::string>{"g0"},
                         indexed_range("g", 1, 7), std::vector<std::string>{"h1", "h1'"});
  ep.sections = {"d"};
  ep.fibers = {{{DynkinKind::extended(DynkinKind::Family::E, 8),
                 {{"f1", 2}, {"f2", 3}, {"f3", 4}, {"f4", 6}, {"f5", 5}, {"f6", 4}, {"f7", 3}, {"f8", 2}, {"f0", 1}}},
                {DynkinKind::extended(DynkinKind::Family::E, 7),
                 {{"g0", 1}, {"g1", 2}, {"g2", 2}, {"g3", 3}, {"g4", 4}, {"g5", 3}, {"g6", 2}, {"g7", 1}}},
                affine_a1("h1", "h1'")},
               "fibers 2F1+3F2+4F3+6F4+5F5+4F6+3F7+2F8+F0, G0+2G1+2G2+3G3+4G4+3G5+2G6+G7 and H1+H1'"};
  ep.mw_rank = {0, "Shioda-Tate count with the listed fibers of |e|"};
  ep.rootless_source = "MW of |e| is trivial";
  s.e_pencil = ep;

  PencilSpec cp;
  cp.fiber = "c";
  cp.components = concat(cycle, std::vector<std::string>{"alpha"});
  cp.sections = {"g7"};
  cp.fibers = {{all_ones(DynkinKind::extended(DynkinKind::Family::A, 15), cp.components)},
               "components d, f1, f3, ..., f8, f0, g0, g1, g3, ..., g6, alpha of a fiber of type At15"};
  cp.mw_rank = {1, "MW has rank 1; Aut X is Z up to finite index"};
  cp.rootless_source = "the lattice MW has no elements with square -2";
  cp.printed_mw_set = Sourced<std::vector<std::string>>{
      {"c", "g7", "d", "f1", "f3", "f4", "f5", "f6", "f7", "f8", "f0", "g0", "g1", "g3", "g4", "g5", "alpha"},
      "MW = (c, g7, d, f1, f3, ..., f8, f0, g0, g1, g3, g4, g5, alpha)^perp"};
  s.c_pencil = cp;

  s.sections = {{"e", "d", 1, {true, "D is a section of |e|"}},
                {"c", "g7", 1, {true, "G7 is a section of |c|: g7.c = 1"}}};
  const std::vector<std::string> plus{"f1", "f4", "f6", "f8", "d", "g1", "g4", "g6"};
  s.theta = ThetaSpec{plus, b.minus_complement(plus), 1, "type + curves f1, f4, f6, f8, d, g1, g4, g6; k = 8"};
  s.alpha = AlphaSpec{"alpha", "e",
                      concat(std::vector<std::string>{"d", "f0"}, indexed_range("f", 1, 8), std::vector<std::string>{"g0"},
                             indexed_range("g", 1, 7), std::vector<std::string>{"h1", "h1'"}),
                      "alpha^2 = -2, e.alpha = 2, alpha meets the curves with e.M in {0,1} non-negatively"};
  return b.take();
}

CaseScenario case_14_6_0() {
  Builder b("s8_14_6_0", direct_sum({labeled(hyperbolic_plane_with_root(), {"e", "d"}),
                                     labeled(root_lattice(RootKind::D, 4), indexed_range("f", 1, 4)),
                                     labeled(root_lattice(RootKind::D, 4), indexed_range("g", 1, 4)),
                                     labeled(root_lattice(RootKind::D, 4), indexed_range("h", 1, 4))}));
  auto& s = b.scenario();
  s.invariants = {{14, 6, 0}, "stated invariants of U + 3D4"};
  for (std::string x : {"f", "g", "h"})
    b.add(x + "0", Terms{{"e", 1}, {x + "1", -1}, {x + "2", -2}, {x + "3", -1}, {x + "4", -1}});

  s.c_expansion = Sourced<IntVector>{{6, 3, -2, -3, -2, -2, -2, -3, -2, -2, -2, -3, -2, -2},
                                     "printed expansion 6e+3d-2f1-3f2-2f3-2f4-2g1-3g2-2g3-2g4-2h1-3h2-2h3-2h4"};
  s.c_source = "c = 3e* + f1* + f3* + f4* + g1* + g3* + g4* + h-part, with c^2 = 0 (printed h-part h1*+h2*+h4*)";
  const Terms fg{{"e", 3}, {"f1", 1}, {"f3", 1}, {"f4", 1}, {"g1", 1}, {"g3", 1}, {"g4", 1}};
  Terms printed = fg, symmetric = fg;
  printed.insert(printed.end(), {{"h1", 1}, {"h2", 1}, {"h4", 1}});
  symmetric.insert(symmetric.end(), {{"h1", 1}, {"h3", 1}, {"h4", 1}});
  b.define_c({{"printed h1*+h2*+h4*", printed}, {"symmetric h1*+h3*+h4*", symmetric}});

  PencilSpec ep;
  ep.fiber = "e";
  ep.sections = {"d"};
  std::vector<ExpectedFiber> efibers;
  for (std::string x : {"f", "g", "h"}) {
    for (int i = 0; i <= 4; ++i) ep.components.push_back(x + std::to_string(i));
    efibers.push_back({DynkinKind::extended(DynkinKind::Family::D, 4),
                       {{x + "0", 1}, {x + "1", 1}, {x + "2", 2}, {x + "3", 1}, {x + "4", 1}}});
  }
  ep.fibers = {efibers, "three fibers X0 + X1 + 2X2 + X3 + X4 of type Dt4"};
  ep.mw_rank = {0, "Shioda-Tate count with the listed fibers of |e|"};
  ep.rootless_source = "MW of |e| is trivial";
  s.e_pencil = ep;

  PencilSpec cp;
  cp.fiber = "c";
  cp.components = {"d", "f0", "f2", "g0", "g2", "h0", "h2"};
  cp.sections = {"f1"};
  cp.fibers = {{{DynkinKind::extended(DynkinKind::Family::E, 6),
                 {{"d", 3}, {"f0", 2}, {"f2", 1}, {"g0", 2}, {"g2", 1}, {"h0", 2}, {"h2", 1}}}},
               "fiber 3D + 2F0 + F2 + 2G0 + G2 + 2H0 + H2 = c of type Et6"};
  cp.mw_rank = {6, "MW has rank 14 - 2 - 6 = 6"};
  cp.rootless_source = "the lattice MW has no elements with square -2";
  cp.printed_mw_set = Sourced<std::vector<std::string>>{{"c", "f1", "f0", "g2", "g0", "h2", "h0", "d"},
                                                        "MW = (c, f1, f0, g2, g0, h2, h0, d)^perp"};
  s.c_pencil = cp;

  s.sections = {{"e", "d", 1, {true, "D is a section of |e|"}},
                {"c", "f1", 1, {true, "F1 is a section of |c|: f1.c = 1"}}};
  const std::vector<std::string> plus{"f2", "g2", "h2", "d"};
  s.theta = ThetaSpec{plus, b.minus_complement(plus), 1, "type + curves f2, g2, h2, d; k = 4"};
  return b.take();
}

// --- verification ----------------------------------------------------------

std::string kinds_string(const std::vector<DynkinKind>& kinds) {
  if (kinds.empty()) return "none";
  std::string out;
  for (const auto& k : kinds) out += (out.empty() ? "" : "+") + k.to_string();
  return out;
}

std::string vector_string(const IntVector& v) {
  std::string out = "(";
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + v[i].get_str();
  return out + ")";
}

std::string divisor_string(const Divisor& d) {
  std::string out;
  for (const auto& [name, k] : d) out += (out.empty() ? "" : " + ") + (k == 1 ? "" : std::to_string(k)) + name;
  return out.empty() ? "0" : out;
}

class Verifier {
 public:
  Verifier(const CaseScenario& scn, const VerifyOptions& options) : scn_(scn), opt_(options) {
    report_.case_id = scn.id;
  }

  CaseReport run() {
    check_lattice();
    check_fiber_class();
    if (scn_.e_pencil) check_pencil("3.e_pencil", *scn_.e_pencil, false);
    check_sections();
    check_theta();
    check_alpha();
    check_pencil("8.c_pencil", scn_.c_pencil, true);
    check_rootless();
    report_.pass = std::all_of(report_.checks.begin(), report_.checks.end(), [](const CheckResult& c) { return c.pass; });
    return std::move(report_);
  }

 private:
  void record(std::string name, bool pass, std::string expected, std::string actual, std::string source) {
    report_.checks.push_back({std::move(name), pass, std::move(expected), std::move(actual), std::move(source)});
  }

  // Runs body; any library error becomes a failed check with the error text.
  void guarded(const std::string& name, const std::string& expected, const std::string& source,
               const std::function<void()>& body) {
    try {
      body();
    } catch (const std::exception& e) {
      record(name, false, expected, std::string("error: ") + e.what(), source);
    }
  }

  void check_lattice() {
    const auto& l = scn_.lattice;
    const std::string src = scn_.invariants.source;
    guarded("1.even", "true", src, [&] { record("1.even", is_even(l), "true", is_even(l) ? "true" : "false", src); });
    guarded("1.hyperbolic", "(1,0," + std::to_string(l.rank() - 1) + ")", src, [&] {
      const Signature s = signature(l);
      const std::string actual =
          "(" + std::to_string(s.plus) + "," + std::to_string(s.zero) + "," + std::to_string(s.minus) + ")";
      record("1.hyperbolic", s.plus == 1 && s.zero == 0, "(1,0," + std::to_string(l.rank() - 1) + ")", actual, src);
    });
    const std::string expected = scn_.invariants.value.to_string();
    guarded("1.invariants", expected, src, [&] {
      const TwoElemInvariants inv = two_elementary_invariants(l);
      record("1.invariants", inv == scn_.invariants.value, expected, inv.to_string(), src);
    });
  }

  void check_fiber_class() {
    const std::string src = scn_.c_source;
    guarded("2.c", "c^2 = 0", src, [&] {
      const LatticeClass& c = scn_.cls("c");
      if (!scn_.c_candidates.empty()) {
        // Re-derive c from the candidates on the scenario's lattice.
        std::string validated = "none";
        std::optional<LatticeClass> derived;
        std::vector<std::string> notes;
        for (const auto& cand : scn_.c_candidates) {
          try {
            LatticeClass x = dual_expression_to_class(scn_.lattice, cand.terms);
            const mpz_class sq = x.square();
            notes.push_back(cand.label + ": integral, c^2=" + sq.get_str());
            if (sq == 0 && !derived) {
              derived = x;
              validated = cand.label;
            }
          } catch (const Error& e) {
            notes.push_back(cand.label + ": " + std::string(to_string(e.code())));
          }
        }
        std::string detail = validated;
        for (const auto& n : notes) detail += "; " + n;
        record("2.c.dual_integral", derived.has_value() && *derived == c, "integral dual expression with c^2 = 0",
               detail, src);
      }
      const mpz_class sq = c.square();
      record("2.c.square_zero", sq == 0, "0", sq.get_str(), src);
      const mpz_class genus = arithmetic_genus(c);
      record("2.c.genus", genus == 1, "1", genus.get_str(), "p_a(C) = C^2/2 + 1 for the genus-1 fixed curve");
      if (scn_.c_expansion) {
        const IntVector& want = scn_.c_expansion->value;
        std::string mismatch;
        for (std::size_t i = 0; i < want.size() && i < c.coords().size(); ++i)
          if (want[i] != c[i])
            mismatch += (mismatch.empty() ? "" : ", ") + scn_.lattice.labels()[i] + ": " + c[i].get_str() +
                        " vs " + want[i].get_str();
        const bool ok = want.size() == c.coords().size() && mismatch.empty();
        record("2.c.expansion", ok, vector_string(want), ok ? vector_string(c.coords()) : mismatch,
               scn_.c_expansion->source);
      }
    });
  }

  void check_pencil(const std::string& prefix, const PencilSpec& p, bool invariant_pencil) {
    const std::string expected_kinds = [&] {
      std::vector<DynkinKind> ks;
      for (const auto& f : p.fibers.value) ks.push_back(f.kind);
      std::sort(ks.begin(), ks.end());
      return kinds_string(ks);
    }();
    guarded(prefix, expected_kinds, p.fibers.source, [&] {
      const LatticeClass& e = scn_.cls(p.fiber);
      const FibrationReport rep =
          analyze_fibration(scn_.lattice, e, scn_.classes_named(p.components), scn_.classes_named(p.sections), opt_.enumerate);

      std::vector<DynkinKind> actual;
      for (const auto& f : rep.fibers) actual.push_back(f.kind);
      record(prefix + ".fibers", kinds_string(actual) == expected_kinds, expected_kinds, kinds_string(actual),
             p.fibers.source);

      // Each expected divisor must be carried by one fiber with exactly these marks.
      for (const auto& want : p.fibers.value) {
        if (want.divisor.empty()) continue;
        const std::string name = prefix + ".divisor." + want.kind.to_string() + "." + want.divisor.front().first;
        const LatticeClass& first = scn_.cls(want.divisor.front().first);
        const DynkinComponent* fiber = nullptr;
        for (const auto& f : rep.fibers)
          if (std::find(f.members.begin(), f.members.end(), first) != f.members.end()) fiber = &f;
        bool ok = fiber && fiber->kind == want.kind && fiber->members.size() == want.divisor.size();
        Divisor got;
        for (const auto& [n, k] : want.divisor) {
          const long mark = fiber ? fiber->mark_of(scn_.cls(n)).get_si() : 0;
          got.emplace_back(n, mark);
          ok = ok && mark == k;
        }
        record(name, ok, divisor_string(want.divisor) + " = " + p.fiber, divisor_string(got), p.fibers.source);
      }

      const bool has_section = !rep.sections.empty();
      if (invariant_pencil) check_prediction(prefix, actual);

      record(prefix + ".mw_rank", rep.mw_rank == p.mw_rank.value, std::to_string(p.mw_rank.value),
             std::to_string(rep.mw_rank) + (has_section ? "" : " (modulo the fiber class)"), p.mw_rank.source);
      record(prefix + ".shioda_tate", rep.shioda_tate_rank == rep.mw_rank && rep.shioda_tate_rank == p.mw_rank.value,
             std::to_string(p.mw_rank.value), std::to_string(rep.shioda_tate_rank),
             "Shioda-Tate: rank S - 2 - sum(members - 1) agrees with the complement rank");
      const Signature sig = signature(rep.mw_lattice);
      record(prefix + ".mw_negative_definite", sig.plus == 0 && sig.zero == 0, "negative definite",
             "(" + std::to_string(sig.plus) + "," + std::to_string(sig.zero) + "," + std::to_string(sig.minus) + ")",
             p.rootless_source);
      record(prefix + ".mw_rootless", rep.mw_rootless, "no vectors of square -2",
             rep.mw_rootless ? "none found" : "found a vector of square -2", p.rootless_source);

      if (p.printed_mw_set) {
        const Sublattice mw = orthogonal_complement(scn_.lattice, scn_.classes_named(p.printed_mw_set->value));
        const long rank = static_cast<long>(mw.lattice.rank());
        record(prefix + ".printed_mw_set", rank == p.mw_rank.value, std::to_string(p.mw_rank.value),
               std::to_string(rank) + " for (" + name_list(p.printed_mw_set->value) + ")^perp",
               p.printed_mw_set->source);
      }
    });
  }

  void check_prediction(const std::string& prefix, const std::vector<DynkinKind>& actual) {
    const std::string src = "reducible fiber type: Et6 if k = 4 and delta = 0, At_{2k-1} otherwise";
    std::string expected;
    try {
      expected = predicted_fiber_type(scn_.invariants.value).to_string();
    } catch (const Error& e) {
      if (e.code() != ErrorCode::NotApplicable) throw;
      expected = "none";
    }
    record(prefix + ".predicted_type", kinds_string(actual) == expected, expected, kinds_string(actual), src);
  }

  void check_sections() {
    for (const auto& claim : scn_.sections) {
      const std::string name = "4.section." + claim.curve + "." + claim.fiber;
      const std::string expected = claim.curve + "." + claim.fiber + " = " + std::to_string(claim.intersection) +
                                   (claim.is_section.value ? ", section" : ", not a section");
      guarded(name, expected, claim.is_section.source, [&] {
        const LatticeClass& x = scn_.cls(claim.curve);
        const LatticeClass& f = scn_.cls(claim.fiber);
        const mpz_class meet = inner(x, f);
        const bool section = meet == 1 && x.square() == -2;
        bool ok = meet == claim.intersection && section == claim.is_section.value;
        std::string actual = claim.curve + "." + claim.fiber + " = " + meet.get_str() + (section ? ", section" : ", not a section");
        if (!claim.is_section.value) {
          // No named class may be a section either.
          for (const auto& nc : scn_.classes)
            if (nc.value.square() == -2 && inner(nc.value, f) == 1) {
              ok = false;
              actual += "; but " + nc.name + " is a section";
            }
        }
        record(name, ok, expected, actual, claim.is_section.source);
      });
    }
  }

  void check_theta() {
    if (!scn_.theta) return;
    const ThetaSpec& spec = *scn_.theta;
    guarded("5.theta_types", "consistent", spec.source, [&] {
      ThetaAssignment a{{}, {}, scn_.cls("c"), spec.fixed_fiber_count};
      for (const auto& n : spec.plus) a.plus.push_back({n, scn_.cls(n)});
      for (const auto& n : spec.minus) a.minus.push_back({n, scn_.cls(n)});
      const ThetaVerdict v = verify_theta_types(a);
      std::string actual = v.ok ? "consistent" : "";
      for (const auto& s : v.violations) actual += (actual.empty() ? "" : "; ") + s;
      record("5.theta_types", v.ok, "consistent", actual, spec.source);

      const FixedLocus locus = fixed_locus(scn_.invariants.value);
      const long plus = static_cast<long>(spec.plus.size());
      if (locus.shape == FixedLocus::Shape::GenusCurvePlusRationals) {
        record("6.plus_count", plus == locus.k, "k = " + std::to_string(locus.k), std::to_string(plus), spec.source);
        if (scn_.invariants.value.r + scn_.invariants.value.a == 20)
          record("6.fixed_genus", locus.g == 1, "g = 1", "g = " + std::to_string(locus.g),
                 "the invariant pencil is |C| for the genus-1 fixed curve when r + a = 20");
      } else {
        const bool ok = locus.shape == FixedLocus::Shape::TwoGenusOneCurves && plus == 0 && spec.fixed_fiber_count == 2;
        record("6.fixed_locus", ok, "C1(g=1) + C2(g=1), no rational fixed curves",
               locus.to_string() + ", " + std::to_string(plus) + " rational", spec.source);
      }
    });
  }

  void check_alpha() {
    if (!scn_.alpha) return;
    const AlphaSpec& spec = *scn_.alpha;
    guarded("7.alpha", "alpha^2 = -2, e.alpha = 2, non-negative", spec.source, [&] {
      const LatticeClass& alpha = scn_.cls(spec.alpha);
      const LatticeClass& e = scn_.cls(spec.fiber);
      const bool ok = effective_root_check(scn_.lattice, alpha, e, scn_.classes_named(spec.known_curves));
      std::string actual = "alpha^2 = " + alpha.square().get_str() + ", e.alpha = " + inner(alpha, e).get_str();
      for (const auto& n : spec.known_curves) {
        const mpz_class m = inner(alpha, scn_.cls(n));
        if (m < 0) actual += ", alpha." + n + " = " + m.get_str();
      }
      record("7.alpha", ok, "alpha^2 = -2, e.alpha = 2, non-negative", actual, spec.source);
    });
  }

  void check_rootless() {
    for (const auto& claim : scn_.rootless) {
      const std::string name = "9.rootless." + claim.name;
      guarded(name, "no vectors of square -2", claim.source, [&] {
        const auto classes = scn_.classes_named(claim.classes);
        const Lattice l = claim.kind == RootlessClaim::Kind::Span ? span_gram(scn_.lattice, classes)
                                                                  : orthogonal_complement(scn_.lattice, classes).lattice;
        const RootList roots = opt_.enumerate(l, -2);
        std::string actual = std::to_string(roots.vectors.size()) + " found in rank " + std::to_string(l.rank());
        if (roots.radical_rank) actual += " (radical rank " + std::to_string(roots.radical_rank) + ")";
        record(name, roots.vectors.empty(), "no vectors of square -2", actual, claim.source);
      });
    }
  }

  const CaseScenario& scn_;
  const VerifyOptions& opt_;
  CaseReport report_;
};

}  // namespace

// --- CaseScenario ----------------------------------------------------------

const LatticeClass& CaseScenario::cls(std::string_view name) const {
  for (const auto& nc : classes)
    if (nc.name == name) return nc.value;
  throw Error(ErrorCode::InvalidArgument, id + " has no class named '" + std::string(name) + "'");
}

std::vector<LatticeClass> CaseScenario::classes_named(const std::vector<std::string>& names) const {
  std::vector<LatticeClass> out;
  out.reserve(names.size());
  for (const auto& n : names) out.push_back(cls(n));
  return out;
}

std::vector<std::pair<std::string, std::string>> CaseScenario::expectation_sources() const {
  std::vector<std::pair<std::string, std::string>> out;
  out.emplace_back("invariants", invariants.source);
  out.emplace_back("c", c_source);
  if (c_expansion) out.emplace_back("c_expansion", c_expansion->source);
  auto pencil = [&](const std::string& tag, const PencilSpec& p) {
    out.emplace_back(tag + ".fibers", p.fibers.source);
    out.emplace_back(tag + ".mw_rank", p.mw_rank.source);
    out.emplace_back(tag + ".rootless", p.rootless_source);
    if (p.printed_mw_set) out.emplace_back(tag + ".printed_mw_set", p.printed_mw_set->source);
  };
  if (e_pencil) pencil("e_pencil", *e_pencil);
  pencil("c_pencil", c_pencil);
  for (const auto& s : sections) out.emplace_back("section." + s.curve, s.is_section.source);
  if (theta) out.emplace_back("theta", theta->source);
  if (alpha) out.emplace_back("alpha", alpha->source);
  for (const auto& r : rootless) out.emplace_back("rootless." + r.name, r.source);
  return out;
}

std::vector<std::string> case_ids() {
  std::vector<std::string> ids{"s3_10_10_1", "s4_10_8_0", "s5_11_9_1"};
  for (int t = 0; t <= 6; ++t) ids.push_back("s6_t=" + std::to_string(t));
  ids.push_back("s7_18_2_1");
  ids.push_back("s8_14_6_0");
  return ids;
}

CaseScenario make_case(std::string_view id) {
  if (id == "s3_10_10_1") return case_10_10_1();
  if (id == "s4_10_8_0") return case_10_8_0();
  if (id == "s5_11_9_1") return case_11_9_1();
  if (id == "s7_18_2_1") return case_18_2_1();
  if (id == "s8_14_6_0") return case_14_6_0();
  if (id.size() == 6 && id.substr(0, 5) == "s6_t=" && id[5] >= '0' && id[5] <= '6') return case_general(id[5] - '0');
  throw Error(ErrorCode::UnknownCase, "unknown case '" + std::string(id) + "'");
}

const CheckResult* CaseReport::find(std::string_view name) const {
  for (const auto& c : checks)
    if (c.name == name) return &c;
  return nullptr;
}

CaseReport verify(const CaseScenario& scn, const VerifyOptions& options) { return Verifier(scn, options).run(); }

std::vector<CaseReport> verify_all(const std::vector<std::string>& filter, const VerifyOptions& options) {
  std::vector<std::string> ids;
  const auto all = case_ids();
  const bool everything = filter.empty() || std::find(filter.begin(), filter.end(), "all") != filter.end();
  if (everything) {
    ids = all;
  } else {
    for (const auto& f : filter) {
      if (std::find(all.begin(), all.end(), f) == all.end())
        throw Error(ErrorCode::UnknownCase, "unknown case '" + f + "'");
      if (std::find(ids.begin(), ids.end(), f) == ids.end()) ids.push_back(f);
    }
    std::sort(ids.begin(), ids.end(), [&](const std::string& a, const std::string& b) {
      return std::find(all.begin(), all.end(), a) < std::find(all.begin(), all.end(), b);
    });
  }
  std::vector<std::optional<CaseReport>> slots(ids.size());
  parallel_for(ids.size(), [&](std::size_t i) { slots[i] = verify(make_case(ids[i]), options); });
  std::vector<CaseReport> out;
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

}  // namespace k3lat
