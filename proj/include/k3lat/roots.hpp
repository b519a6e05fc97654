#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "k3lat/lattice.hpp"

namespace k3lat {

/// Vectors of a fixed square, one representative per +/- pair.
struct RootList {
  mpz_class norm;
  std::vector<LatticeClass> vectors;  // sorted; first nonzero coordinate positive
  std::size_t radical_rank = 0;       // > 0 when enumerated modulo the radical
};

/// All x with x.x == norm in a negative (semi)definite lattice, exactly.
///
/// With a nontrivial radical the search runs in the quotient by the radical
/// and reports one lift per class. Throws IndefiniteLattice when the form
/// has a positive direction and InvalidArgument unless norm < 0.
RootList enumerate_norm_vectors(const Lattice& l, const mpz_class& norm);

/// Signature of enumerate_norm_vectors, for callers that accept a substitute.
using NormVectorEnumerator = std::function<RootList(const Lattice&, const mpz_class&)>;

struct DynkinKind {
  enum class Family { A, D, E, Unrecognized };
  Family family = Family::Unrecognized;
  int n = 0;
  bool affine = false;

  static DynkinKind finite(Family f, int n) { return {f, n, false}; }
  static DynkinKind extended(Family f, int n) { return {f, n, true}; }
  static DynkinKind unrecognized() { return {}; }

  bool recognized() const { return family != Family::Unrecognized; }
  // ASCII: "A3", "D4", "E8", affine "At15", "Dt12", "Et6"; "?" if unrecognized.
  std::string to_string() const;
  static std::optional<DynkinKind> parse(std::string_view text);

  friend bool operator==(const DynkinKind&, const DynkinKind&) = default;
  friend auto operator<=>(const DynkinKind&, const DynkinKind&) = default;
};

struct DynkinComponent {
  std::vector<LatticeClass> members;  // sorted by coordinates
  DynkinKind kind;
  std::vector<mpz_class> marks;              // affine only, aligned with members
  std::optional<LatticeClass> isotropic_sum;  // affine only

  // Mark of a member, or 0 if it is not a member / not affine.
  mpz_class mark_of(const LatticeClass& x) const;
};

/// Splits (-2)-classes into connected components and recognizes each as a
/// finite or affine Dynkin diagram. Affine marks come from the primitive
/// positive kernel vector of the component Gram matrix.
/// Throws NotARoot and NegativePairing.
std::vector<DynkinComponent> classify_components(const std::vector<LatticeClass>& classes);

}  // namespace k3lat
