#pragma once

#include <cstddef>

#include "k3lat/matrix.hpp"

namespace k3lat {

/// Smith normal form of an integer matrix.
///
/// `u * m * v == diag(d)` where `u`, `v` are unimodular and `d` has
/// min(rows, cols) non-negative entries, each dividing the next. Zero
/// invariant factors (rank deficiency) trail the nonzero ones.
struct SnfResult {
  IntVector d;
  IntMatrix u;
  IntMatrix v;

  std::size_t rank() const;
};

SnfResult smith_normal_form(const IntMatrix& m);

/// Exact inverse over Q. Throws SingularMatrix when det(m) == 0.
RatMatrix rational_inverse(const IntMatrix& m);

/// Fraction-free (Bareiss) determinant.
mpz_class determinant(const IntMatrix& m);

struct Signature {
  std::size_t plus = 0;
  std::size_t zero = 0;
  std::size_t minus = 0;

  std::size_t dimension() const { return plus + zero + minus; }
  friend bool operator==(const Signature&, const Signature&) = default;
};

/// Inertia of a symmetric integer matrix by exact symmetric reduction over Q.
/// Throws NotSymmetric.
Signature signature(const IntMatrix& m);

/// Basis (as rows) of the saturated integer kernel {x in Z^cols : m x = 0},
/// returned in Hermite row form with positive pivots.
IntMatrix integer_kernel(const IntMatrix& m);

/// Row-style Hermite normal form of the row lattice of `m`; zero rows are dropped.
IntMatrix hermite_rows(const IntMatrix& m);

/// Given rows spanning a primitive sublattice of Z^n, returns a unimodular
/// n x n matrix whose first rows span the same sublattice and whose
/// remaining rows complete it to a basis of Z^n.
IntMatrix complete_to_basis(const IntMatrix& primitive_rows);

}  // namespace k3lat
