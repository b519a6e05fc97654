#include "k3lat/exact.hpp"

#include <algorithm>
#include <utility>

#include "k3lat/error.hpp"

namespace k3lat {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::UnknownCase: return "UnknownCase";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::SingularMatrix: return "SingularMatrix";
    case ErrorCode::NotSymmetric: return "NotSymmetric";
    case ErrorCode::InvalidIndex: return "InvalidIndex";
    case ErrorCode::ZeroScale: return "ZeroScale";
    case ErrorCode::LatticeMismatch: return "LatticeMismatch";
    case ErrorCode::Degenerate: return "Degenerate";
    case ErrorCode::NotTwoElementary: return "NotTwoElementary";
    case ErrorCode::NotIntegral: return "NotIntegral";
    case ErrorCode::IndefiniteLattice: return "IndefiniteLattice";
    case ErrorCode::NotARoot: return "NotARoot";
    case ErrorCode::NegativePairing: return "NegativePairing";
    case ErrorCode::OddSquare: return "OddSquare";
    case ErrorCode::InadmissibleTriple: return "InadmissibleTriple";
    case ErrorCode::NotApplicable: return "NotApplicable";
    case ErrorCode::NotIsotropic: return "NotIsotropic";
    case ErrorCode::ComponentNotPerp: return "ComponentNotPerp";
    case ErrorCode::FiberSumMismatch: return "FiberSumMismatch";
  }
  return "Unknown";
}

RatMatrix to_rational(const IntMatrix& m) {
  RatMatrix r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = m(i, j);
  return r;
}

mpz_class bilinear(const IntMatrix& m, const IntVector& x, const IntVector& y) {
  assert(x.size() == m.rows() && y.size() == m.cols());
  mpz_class total = 0;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (x[i] == 0) continue;
    mpz_class acc = 0;
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (y[j] != 0) acc += m(i, j) * y[j];
    total += x[i] * acc;
  }
  return total;
}

IntVector row_times(const IntVector& x, const IntMatrix& m) {
  assert(x.size() == m.rows());
  IntVector out(m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (x[i] == 0) continue;
    for (std::size_t j = 0; j < m.cols(); ++j) out[j] += x[i] * m(i, j);
  }
  return out;
}

RatVector row_times(const RatVector& x, const IntMatrix& m) {
  assert(x.size() == m.rows());
  RatVector out(m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (x[i] == 0) continue;
    for (std::size_t j = 0; j < m.cols(); ++j) out[j] += x[i] * m(i, j);
  }
  return out;
}

std::size_t SnfResult::rank() const {
  return static_cast<std::size_t>(
      std::count_if(d.begin(), d.end(), [](const mpz_class& x) { return x != 0; }));
}

SnfResult smith_normal_form(const IntMatrix& m) {
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  IntMatrix a = m;
  IntMatrix u = IntMatrix::identity(rows);
  IntMatrix v = IntMatrix::identity(cols);
  const std::size_t diag = std::min(rows, cols);

  for (std::size_t t = 0; t < diag; ++t) {
    for (;;) {
      // Bring the smallest nonzero entry of the trailing block to (t, t).
      std::size_t pi = rows, pj = cols;
      for (std::size_t i = t; i < rows; ++i)
        for (std::size_t j = t; j < cols; ++j)
          if (a(i, j) != 0 && (pi == rows || abs(a(i, j)) < abs(a(pi, pj)))) {
            pi = i;
            pj = j;
          }
      if (pi == rows) break;  // trailing block is zero
      a.swap_rows(t, pi);
      u.swap_rows(t, pi);
      a.swap_cols(t, pj);
      v.swap_cols(t, pj);

      bool clean = true;
      const mpz_class pivot = a(t, t);
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (a(i, t) == 0) continue;
        mpz_class q = a(i, t) / pivot;
        a.add_row(i, t, -q);
        u.add_row(i, t, -q);
        if (a(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (a(t, j) == 0) continue;
        mpz_class q = a(t, j) / pivot;
        a.add_col(j, t, -q);
        v.add_col(j, t, -q);
        if (a(t, j) != 0) clean = false;
      }
      if (!clean) continue;

      // Enforce divisibility of the trailing block by the pivot.
      bool divides = true;
      for (std::size_t i = t + 1; i < rows && divides; ++i)
        for (std::size_t j = t + 1; j < cols; ++j)
          if (a(i, j) % pivot != 0) {
            a.add_row(t, i, 1);
            u.add_row(t, i, 1);
            divides = false;
            break;
          }
      if (divides) break;
    }
    if (a(t, t) < 0) {
      a.negate_row(t);
      u.negate_row(t);
    }
  }

  SnfResult result;
  result.d.resize(diag);
  for (std::size_t t = 0; t < diag; ++t) result.d[t] = a(t, t);
  result.u = std::move(u);
  result.v = std::move(v);
  return result;
}

RatMatrix rational_inverse(const IntMatrix& m) {
  if (!m.square()) throw Error(ErrorCode::SingularMatrix, "matrix is not square");
  const std::size_t n = m.rows();
  RatMatrix a = to_rational(m);
  RatMatrix inv = RatMatrix::identity(n);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t p = col;
    while (p < n && a(p, col) == 0) ++p;
    if (p == n) throw Error(ErrorCode::SingularMatrix, "determinant is zero");
    a.swap_rows(col, p);
    inv.swap_rows(col, p);
    const mpq_class scale = 1 / a(col, col);
    for (std::size_t j = 0; j < n; ++j) {
      a(col, j) *= scale;
      inv(col, j) *= scale;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == col || a(i, col) == 0) continue;
      const mpq_class f = a(i, col);
      a.add_row(i, col, -f);
      inv.add_row(i, col, -f);
    }
  }
  return inv;
}

mpz_class determinant(const IntMatrix& m) {
  if (!m.square()) throw Error(ErrorCode::InvalidArgument, "determinant of a non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  IntMatrix a = m;
  mpz_class prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && a(p, k) == 0) ++p;
      if (p == n) return 0;
      a.swap_rows(k, p);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) {
        mpz_class num = a(k, k) * a(i, j) - a(i, k) * a(k, j);
        mpz_divexact(a(i, j).get_mpz_t(), num.get_mpz_t(), prev.get_mpz_t());
      }
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

Signature signature(const IntMatrix& m) {
  if (!m.is_symmetric()) throw Error(ErrorCode::NotSymmetric, "signature needs a symmetric matrix");
  const std::size_t n = m.rows();
  RatMatrix a = to_rational(m);
  Signature sig;
  std::size_t k = 0;
  while (k < n) {
    std::size_t p = k;
    while (p < n && a(p, p) == 0) ++p;
    if (p == n) {
      // Zero diagonal: a nonzero off-diagonal entry (i, j) yields the
      // nonzero diagonal 2 a(i,j) after replacing e_i by e_i + e_j.
      std::size_t fi = n, fj = n;
      for (std::size_t i = k; i < n && fi == n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
          if (a(i, j) != 0) {
            fi = i;
            fj = j;
            break;
          }
      if (fi == n) {
        sig.zero += n - k;
        break;
      }
      a.add_row(fi, fj, 1);
      a.add_col(fi, fj, 1);
      continue;
    }
    a.swap_rows(k, p);
    a.swap_cols(k, p);
    const mpq_class pivot = a(k, k);
    for (std::size_t i = k + 1; i < n; ++i) {
      if (a(i, k) == 0) continue;
      const mpq_class f = a(i, k) / pivot;
      for (std::size_t j = k + 1; j < n; ++j) a(i, j) -= f * a(k, j);
    }
    for (std::size_t i = k + 1; i < n; ++i) a(i, k) = a(k, i) = 0;
    (pivot > 0 ? sig.plus : sig.minus) += 1;
    ++k;
  }
  return sig;
}

IntMatrix hermite_rows(const IntMatrix& m) {
  IntMatrix a = m;
  const std::size_t rows = a.rows();
  const std::size_t cols = a.cols();
  std::size_t p = 0;
  for (std::size_t j = 0; j < cols && p < rows; ++j) {
    for (;;) {
      std::size_t best = rows;
      for (std::size_t i = p; i < rows; ++i)
        if (a(i, j) != 0 && (best == rows || abs(a(i, j)) < abs(a(best, j)))) best = i;
      if (best == rows) break;
      a.swap_rows(p, best);
      bool done = true;
      for (std::size_t i = p + 1; i < rows; ++i) {
        if (a(i, j) == 0) continue;
        mpz_class q;
        mpz_fdiv_q(q.get_mpz_t(), a(i, j).get_mpz_t(), a(p, j).get_mpz_t());
        a.add_row(i, p, -q);
        if (a(i, j) != 0) done = false;
      }
      if (done) break;
    }
    if (p >= rows || a(p, j) == 0) continue;
    if (a(p, j) < 0) a.negate_row(p);
    for (std::size_t i = 0; i < p; ++i) {
      mpz_class q;
      mpz_fdiv_q(q.get_mpz_t(), a(i, j).get_mpz_t(), a(p, j).get_mpz_t());
      if (q != 0) a.add_row(i, p, -q);
    }
    ++p;
  }
  IntMatrix out(p, cols);
  for (std::size_t i = 0; i < p; ++i)
    for (std::size_t j = 0; j < cols; ++j) out(i, j) = a(i, j);
  return out;
}

IntMatrix integer_kernel(const IntMatrix& m) {
  const SnfResult snf = smith_normal_form(m);
  const std::size_t rank = snf.rank();
  const std::size_t cols = m.cols();
  IntMatrix basis(cols - rank, cols);
  for (std::size_t k = rank; k < cols; ++k)
    for (std::size_t i = 0; i < cols; ++i) basis(k - rank, i) = snf.v(i, k);
  return hermite_rows(basis);
}

IntMatrix complete_to_basis(const IntMatrix& primitive_rows) {
  const std::size_t k = primitive_rows.rows();
  const std::size_t n = primitive_rows.cols();
  if (k == 0) return IntMatrix::identity(n);
  const SnfResult snf = smith_normal_form(primitive_rows);
  for (const auto& x : snf.d)
    if (x != 1) throw Error(ErrorCode::InvalidArgument, "rows do not span a primitive sublattice");
  const RatMatrix w = rational_inverse(snf.v);
  IntMatrix out(n, n);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < n; ++j) out(i, j) = primitive_rows(i, j);
  for (std::size_t i = k; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out(i, j) = w(i, j).get_num();
  return out;
}

}  // namespace k3lat
