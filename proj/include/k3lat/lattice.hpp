#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "k3lat/exact.hpp"
#include "k3lat/matrix.hpp"

namespace k3lat {

class LatticeClass;

/// An integer lattice given by a symmetric Gram matrix and one label per
/// basis element. Immutable; copies share storage.
class Lattice {
 public:
  Lattice();  // rank 0

  /// Wraps `gram` verbatim. Throws NotSymmetric. Missing labels become x1, x2, ...
  static Lattice from_gram(IntMatrix gram, std::vector<std::string> labels = {});

  const IntMatrix& gram() const { return impl_->gram; }
  const std::vector<std::string>& labels() const { return impl_->labels; }
  std::size_t rank() const { return impl_->gram.rows(); }

  std::optional<std::size_t> index_of(std::string_view label) const;

  LatticeClass basis(std::size_t i) const;
  LatticeClass basis(std::string_view label) const;  // throws InvalidArgument
  LatticeClass element(IntVector coords) const;      // throws InvalidArgument on length
  LatticeClass zero() const;

  Lattice relabeled(std::vector<std::string> labels) const;

  // Same storage, or the same Gram matrix and labels.
  bool same_as(const Lattice& other) const;
  friend bool operator==(const Lattice& a, const Lattice& b) { return a.same_as(b); }

 private:
  struct Impl {
    IntMatrix gram;
    std::vector<std::string> labels;
  };
  explicit Lattice(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
  std::shared_ptr<const Impl> impl_;
};

/// An element of a lattice, as integer coordinates in its basis.
class LatticeClass {
 public:
  LatticeClass(Lattice lattice, IntVector coords);

  const Lattice& lattice() const { return lattice_; }
  const IntVector& coords() const { return coords_; }
  const mpz_class& operator[](std::size_t i) const { return coords_[i]; }
  bool is_zero() const;
  mpz_class square() const;

  LatticeClass operator-() const;
  LatticeClass& operator+=(const LatticeClass& o);
  LatticeClass& operator-=(const LatticeClass& o);
  friend LatticeClass operator+(LatticeClass a, const LatticeClass& b) { return a += b; }
  friend LatticeClass operator-(LatticeClass a, const LatticeClass& b) { return a -= b; }
  friend LatticeClass operator*(const mpz_class& k, const LatticeClass& x);
  friend LatticeClass operator*(long k, const LatticeClass& x) { return mpz_class(k) * x; }

  friend bool operator==(const LatticeClass& a, const LatticeClass& b) {
    return a.coords_ == b.coords_ && a.lattice_.same_as(b.lattice_);
  }
  friend bool operator<(const LatticeClass& a, const LatticeClass& b) { return a.coords_ < b.coords_; }

  // "6e + 3d - 2f1 - ..." using the lattice labels.
  std::string to_string() const;

 private:
  Lattice lattice_;
  IntVector coords_;
};

struct NamedClass {
  std::string name;
  LatticeClass value;
};

/// Element of S* = Hom(S, Z), in coordinates of S (x) Q.
struct DualVector {
  Lattice lattice;
  RatVector coords;
};

struct DiscriminantGroup {
  IntVector invariant_factors;       // each > 1, each dividing the next
  std::vector<DualVector> generators;  // one per factor, modulo S

  mpz_class order() const;
};

struct TwoElemInvariants {
  std::size_t r = 0;
  std::size_t a = 0;
  int delta = 0;

  friend bool operator==(const TwoElemInvariants&, const TwoElemInvariants&) = default;
  friend auto operator<=>(const TwoElemInvariants&, const TwoElemInvariants&) = default;
  std::string to_string() const;
};

enum class RootKind { A, D, E };

/// Negative-definite root lattice with Gram -(Cartan matrix), Bourbaki
/// node numbering. Labels a1.., d1.., e1... Throws InvalidIndex.
Lattice root_lattice(RootKind kind, int n);

/// The hyperbolic plane (0 1 / 1 0), labels u1, u2.
Lattice hyperbolic_plane();
/// The even unimodular form (0 1 / 1 -2), isometric to the hyperbolic
/// plane but with a (-2)-vector in the basis. Labels u1, u2.
Lattice hyperbolic_plane_with_root();

/// Multiplies the form by `n`. Throws ZeroScale.
Lattice rescale(const Lattice& l, const mpz_class& n);

/// Orthogonal sum. Repeated labels get a "_<block>" suffix (1-based).
Lattice direct_sum(const std::vector<Lattice>& parts);

mpz_class inner(const LatticeClass& x, const LatticeClass& y);  // throws LatticeMismatch
bool is_even(const Lattice& l);
mpz_class determinant(const Lattice& l);
Signature signature(const Lattice& l);
bool is_hyperbolic(const Lattice& l);

DiscriminantGroup discriminant_group(const Lattice& l);  // throws Degenerate

/// Throws NotTwoElementary or Degenerate.
TwoElemInvariants two_elementary_invariants(const Lattice& l);

/// Row i is the i-th dual basis vector in lattice coordinates; gram * dual^T = 1.
RatMatrix dual_basis(const Lattice& l);

/// sum_i coeffs[i] * (basis_i)^*. Throws NotIntegral unless the result lies in S.
LatticeClass dual_expression_to_class(const Lattice& l, const IntVector& coeffs);
LatticeClass dual_expression_to_class(const Lattice& l,
                                      const std::vector<std::pair<std::string, long>>& terms);

/// The sublattice generated by `classes`, with its induced Gram matrix.
/// Rows of `embedding` are the generators in ambient coordinates.
struct Sublattice {
  Lattice lattice;
  Lattice ambient;
  IntMatrix embedding;

  LatticeClass lift(const LatticeClass& x) const;  // sublattice coords -> ambient class
  std::vector<LatticeClass> generators() const;
};

/// Saturated sublattice orthogonal to all `classes`, in a primitive (Hermite) basis.
Sublattice orthogonal_complement(const Lattice& l, const std::vector<LatticeClass>& classes);

/// Gram matrix of the given classes (they need not be independent).
Lattice span_gram(const Lattice& l, const std::vector<LatticeClass>& classes);

/// Quotient by the radical {x : x.y = 0 for all y}. `embedding` rows lift the
/// quotient basis to representatives in `l`; `radical` rows span the radical.
struct RadicalQuotient {
  Sublattice quotient;
  IntMatrix radical;
};
RadicalQuotient radical_quotient(const Lattice& l);

}  // namespace k3lat
