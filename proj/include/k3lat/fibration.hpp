#pragma once

#include <string>
#include <vector>

#include "k3lat/lattice.hpp"
#include "k3lat/roots.hpp"

namespace k3lat {

/// p_a(D) = D^2/2 + 1. Throws OddSquare.
mpz_class arithmetic_genus(const LatticeClass& x);

/// Fixed locus of the canonical involution determined by (r, a, delta).
struct FixedLocus {
  enum class Shape { GenusCurvePlusRationals, TwoGenusOneCurves, Empty };
  Shape shape = Shape::Empty;
  long g = 0;  // genus of the non-rational component
  long k = 0;  // number of fixed rational curves

  std::string to_string() const;
};

/// All (r, a, delta) with 1 <= r <= 20 satisfying the admissibility
/// conditions for 2-elementary K3 Picard lattices, sorted lexicographically.
std::vector<TwoElemInvariants> admissible_triples();
bool is_admissible(const TwoElemInvariants& inv);

FixedLocus fixed_locus(const TwoElemInvariants& inv);  // throws InadmissibleTriple

/// Dynkin type of the reducible fiber over the second fixed point of the
/// involution on the base, for r + a = 20 and k >= 1. Throws NotApplicable.
DynkinKind predicted_fiber_type(const TwoElemInvariants& inv);

struct FibrationReport {
  Lattice base;
  LatticeClass fiber_class;
  std::vector<DynkinComponent> fibers;
  std::vector<LatticeClass> sections;
  long shioda_tate_rank = 0;
  // Second route to the Mordell-Weil rank: rank of the orthogonal
  // complement of fiber class, fiber components and first section (modulo
  // the fiber class when there is no section).
  long mw_rank = 0;
  Lattice mw_lattice;
  IntMatrix mw_embedding;  // rows: mw_lattice basis in base coordinates
  bool mw_rootless = false;
};

/// Fibration bookkeeping for the pencil |e|.
/// Throws NotIsotropic, ComponentNotPerp, FiberSumMismatch (plus NotARoot /
/// NegativePairing from the classifier).
FibrationReport analyze_fibration(const Lattice& s, const LatticeClass& e, const std::vector<LatticeClass>& components,
                                  const std::vector<LatticeClass>& section_candidates,
                                  const NormVectorEnumerator& enumerate = enumerate_norm_vectors);

/// The arithmetic evidence for alpha being a smooth rational curve:
/// alpha^2 = -2, alpha.e = 2 and alpha.m >= 0 for each known curve m != alpha.
bool effective_root_check(const Lattice& s, const LatticeClass& alpha, const LatticeClass& e,
                          const std::vector<LatticeClass>& known_curves);

/// Curves fixed pointwise by the involution (+) and the remaining named
/// (-2)-curves (-), together with the genus-1 fixed fiber. When the fixed
/// locus has several genus-1 curves in the same class, `fixed_fiber_count`
/// says how many.
struct ThetaAssignment {
  std::vector<NamedClass> plus;
  std::vector<NamedClass> minus;
  LatticeClass invariant_fiber;
  long fixed_fiber_count = 1;
};

struct ThetaVerdict {
  bool ok = true;
  std::vector<std::string> violations;
};

/// (a) plus classes are pairwise orthogonal, (b) plus classes are orthogonal
/// to the fixed fiber, (c) each minus class meets the fixed locus with total
/// intersection 2. Intersection multiplicities count in full.
ThetaVerdict verify_theta_types(const ThetaAssignment& t);

}  // namespace k3lat
