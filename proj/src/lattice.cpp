#include "k3lat/lattice.hpp"

#include <set>
#include <sstream>

#include "k3lat/error.hpp"

namespace k3lat {

namespace {

std::vector<std::string> numbered_labels(std::string_view prefix, std::size_t n) {
  std::vector<std::string> out;
  out.reserve(n);
  for (std::size_t i = 1; i <= n; ++i) out.push_back(std::string(prefix) + std::to_string(i));
  return out;
}

void require_nondegenerate(const Lattice& l) {
  if (determinant(l.gram()) == 0) throw Error(ErrorCode::Degenerate, "Gram determinant is zero");
}

}  // namespace

// --- Lattice ---------------------------------------------------------------

Lattice::Lattice() : impl_(std::make_shared<const Impl>()) {}

Lattice Lattice::from_gram(IntMatrix gram, std::vector<std::string> labels) {
  if (!gram.is_symmetric()) throw Error(ErrorCode::NotSymmetric, "Gram matrix must be symmetric");
  if (labels.empty()) labels = numbered_labels("x", gram.rows());
  if (labels.size() != gram.rows())
    throw Error(ErrorCode::InvalidArgument, "label count does not match rank");
  return Lattice(std::make_shared<const Impl>(Impl{std::move(gram), std::move(labels)}));
}

std::optional<std::size_t> Lattice::index_of(std::string_view label) const {
  const auto& ls = labels();
  for (std::size_t i = 0; i < ls.size(); ++i)
    if (ls[i] == label) return i;
  return std::nullopt;
}

LatticeClass Lattice::basis(std::size_t i) const {
  IntVector v(rank());
  v.at(i) = 1;
  return LatticeClass(*this, std::move(v));
}

LatticeClass Lattice::basis(std::string_view label) const {
  auto i = index_of(label);
  if (!i) throw Error(ErrorCode::InvalidArgument, "no basis element named '" + std::string(label) + "'");
  return basis(*i);
}

LatticeClass Lattice::element(IntVector coords) const { return LatticeClass(*this, std::move(coords)); }

LatticeClass Lattice::zero() const { return LatticeClass(*this, IntVector(rank())); }

Lattice Lattice::relabeled(std::vector<std::string> labels) const { return from_gram(gram(), std::move(labels)); }

bool Lattice::same_as(const Lattice& other) const {
  return impl_ == other.impl_ || (impl_->gram == other.impl_->gram && impl_->labels == other.impl_->labels);
}

// --- LatticeClass ----------------------------------------------------------

LatticeClass::LatticeClass(Lattice lattice, IntVector coords) : lattice_(std::move(lattice)), coords_(std::move(coords)) {
  if (coords_.size() != lattice_.rank())
    throw Error(ErrorCode::InvalidArgument, "coordinate vector length " + std::to_string(coords_.size()) +
                                                " does not match rank " + std::to_string(lattice_.rank()));
}

bool LatticeClass::is_zero() const {
  for (const auto& x : coords_)
    if (x != 0) return false;
  return true;
}

mpz_class LatticeClass::square() const { return bilinear(lattice_.gram(), coords_, coords_); }

LatticeClass LatticeClass::operator-() const {
  LatticeClass r = *this;
  for (auto& x : r.coords_) x = -x;
  return r;
}

LatticeClass& LatticeClass::operator+=(const LatticeClass& o) {
  if (!lattice_.same_as(o.lattice_)) throw Error(ErrorCode::LatticeMismatch, "adding classes of different lattices");
  for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] += o.coords_[i];
  return *this;
}

LatticeClass& LatticeClass::operator-=(const LatticeClass& o) {
  if (!lattice_.same_as(o.lattice_))
    throw Error(ErrorCode::LatticeMismatch, "subtracting classes of different lattices");
  for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] -= o.coords_[i];
  return *this;
}

LatticeClass operator*(const mpz_class& k, const LatticeClass& x) {
  LatticeClass r = x;
  for (auto& c : r.coords_) c *= k;
  return r;
}

std::string LatticeClass::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < coords_.size(); ++i) {
    const mpz_class& c = coords_[i];
    if (c == 0) continue;
    mpz_class mag = abs(c);
    if (first) {
      if (c < 0) os << '-';
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    if (mag != 1) os << mag;
    os << lattice_.labels()[i];
    first = false;
  }
  return first ? "0" : os.str();
}

// --- constructions ---------------------------------------------------------

Lattice root_lattice(RootKind kind, int n) {
  std::vector<std::pair<int, int>> edges;  // 1-based Bourbaki numbering
  std::string prefix;
  switch (kind) {
    case RootKind::A:
      if (n < 1) throw Error(ErrorCode::InvalidIndex, "A_n needs n >= 1");
      for (int i = 1; i < n; ++i) edges.emplace_back(i, i + 1);
      prefix = "a";
      break;
    case RootKind::D:
      if (n < 4) throw Error(ErrorCode::InvalidIndex, "D_n needs n >= 4");
      for (int i = 1; i < n - 1; ++i) edges.emplace_back(i, i + 1);
      edges.emplace_back(n - 2, n);
      prefix = "d";
      break;
    case RootKind::E:
      if (n < 6 || n > 8) throw Error(ErrorCode::InvalidIndex, "E_n needs n in {6,7,8}");
      edges = {{1, 3}, {3, 4}, {2, 4}};
      for (int i = 4; i < n; ++i) edges.emplace_back(i, i + 1);
      prefix = "e";
      break;
  }
  IntMatrix g(n, n);
  for (int i = 0; i < n; ++i) g(i, i) = -2;
  for (auto [a, b] : edges) g(a - 1, b - 1) = g(b - 1, a - 1) = 1;
  return Lattice::from_gram(std::move(g), numbered_labels(prefix, n));
}

Lattice hyperbolic_plane() { return Lattice::from_gram(IntMatrix{{0, 1}, {1, 0}}, {"u1", "u2"}); }

Lattice hyperbolic_plane_with_root() { return Lattice::from_gram(IntMatrix{{0, 1}, {1, -2}}, {"u1", "u2"}); }

Lattice rescale(const Lattice& l, const mpz_class& n) {
  if (n == 0) throw Error(ErrorCode::ZeroScale, "rescaling by zero");
  IntMatrix g = l.gram();
  for (std::size_t i = 0; i < g.rows(); ++i)
    for (std::size_t j = 0; j < g.cols(); ++j) g(i, j) *= n;
  return Lattice::from_gram(std::move(g), l.labels());
}

Lattice direct_sum(const std::vector<Lattice>& parts) {
  std::size_t n = 0;
  for (const auto& p : parts) n += p.rank();
  IntMatrix g(n, n);
  std::vector<std::string> labels;
  std::set<std::string> used;
  std::size_t offset = 0;
  for (std::size_t b = 0; b < parts.size(); ++b) {
    const auto& p = parts[b];
    for (std::size_t i = 0; i < p.rank(); ++i)
      for (std::size_t j = 0; j < p.rank(); ++j) g(offset + i, offset + j) = p.gram()(i, j);
    for (const auto& label : p.labels()) {
      std::string name = label;
      for (int k = 0; used.count(name); ++k)
        name = label + "_" + std::to_string(b + 1) + (k ? "_" + std::to_string(k) : "");
      used.insert(name);
      labels.push_back(std::move(name));
    }
    offset += p.rank();
  }
  return Lattice::from_gram(std::move(g), std::move(labels));
}

// --- invariants ------------------------------------------------------------

mpz_class inner(const LatticeClass& x, const LatticeClass& y) {
  if (!x.lattice().same_as(y.lattice()))
    throw Error(ErrorCode::LatticeMismatch, "inner product of classes in different lattices");
  return bilinear(x.lattice().gram(), x.coords(), y.coords());
}

bool is_even(const Lattice& l) {
  for (std::size_t i = 0; i < l.rank(); ++i)
    if (mpz_odd_p(l.gram()(i, i).get_mpz_t())) return false;
  return true;
}

mpz_class determinant(const Lattice& l) { return determinant(l.gram()); }

Signature signature(const Lattice& l) { return signature(l.gram()); }

bool is_hyperbolic(const Lattice& l) {
  const Signature s = signature(l);
  return s.plus == 1 && s.zero == 0;
}

mpz_class DiscriminantGroup::order() const {
  mpz_class n = 1;
  for (const auto& f : invariant_factors) n *= f;
  return n;
}

DiscriminantGroup discriminant_group(const Lattice& l) {
  require_nondegenerate(l);
  const SnfResult snf = smith_normal_form(l.gram());
  DiscriminantGroup group;
  const std::size_t n = l.rank();
  for (std::size_t i = 0; i < n; ++i) {
    if (snf.d[i] == 1) continue;
    // G (v e_i / d_i) = u^{-1} e_i is integral, so v e_i / d_i lies in S*.
    RatVector y(n);
    for (std::size_t k = 0; k < n; ++k) y[k] = mpq_class(snf.v(k, i), snf.d[i]);
    for (auto& q : y) q.canonicalize();
    group.invariant_factors.push_back(snf.d[i]);
    group.generators.push_back(DualVector{l, std::move(y)});
  }
  return group;
}

TwoElemInvariants two_elementary_invariants(const Lattice& l) {
  const DiscriminantGroup group = discriminant_group(l);
  for (const auto& f : group.invariant_factors)
    if (f != 2) throw Error(ErrorCode::NotTwoElementary, "discriminant group has a factor " + f.get_str());
  const std::size_t a = group.invariant_factors.size();
  const std::size_t n = l.rank();

  // delta = 0 iff every class of A_S has integral square; exhaust all 2^a classes.
  int delta = 0;
  for (std::size_t mask = 1; mask < (std::size_t{1} << a) && delta == 0; ++mask) {
    RatVector x(n);
    for (std::size_t g = 0; g < a; ++g)
      if (mask & (std::size_t{1} << g))
        for (std::size_t k = 0; k < n; ++k) x[k] += group.generators[g].coords[k];
    const RatVector gx = row_times(x, l.gram());
    mpq_class sq = 0;
    for (std::size_t k = 0; k < n; ++k) sq += gx[k] * x[k];
    if (sq.get_den() != 1) delta = 1;
  }
  return TwoElemInvariants{n, a, delta};
}

std::string TwoElemInvariants::to_string() const {
  return "(" + std::to_string(r) + "," + std::to_string(a) + "," + std::to_string(delta) + ")";
}

RatMatrix dual_basis(const Lattice& l) {
  try {
    return rational_inverse(l.gram());
  } catch (const Error& e) {
    if (e.code() == ErrorCode::SingularMatrix) throw Error(ErrorCode::Degenerate, "Gram determinant is zero");
    throw;
  }
}

LatticeClass dual_expression_to_class(const Lattice& l, const IntVector& coeffs) {
  if (coeffs.size() != l.rank()) throw Error(ErrorCode::InvalidArgument, "coefficient count does not match rank");
  const RatMatrix dual = dual_basis(l);
  const std::size_t n = l.rank();
  IntVector coords(n);
  for (std::size_t j = 0; j < n; ++j) {
    mpq_class acc = 0;
    for (std::size_t i = 0; i < n; ++i)
      if (coeffs[i] != 0) acc += coeffs[i] * dual(i, j);
    if (acc.get_den() != 1)
      throw Error(ErrorCode::NotIntegral, "coordinate " + l.labels()[j] + " = " + acc.get_str());
    coords[j] = acc.get_num();
  }
  return l.element(std::move(coords));
}

LatticeClass dual_expression_to_class(const Lattice& l, const std::vector<std::pair<std::string, long>>& terms) {
  IntVector coeffs(l.rank());
  for (const auto& [label, k] : terms) {
    auto i = l.index_of(label);
    if (!i) throw Error(ErrorCode::InvalidArgument, "no basis element named '" + label + "'");
    coeffs[*i] += k;
  }
  return dual_expression_to_class(l, coeffs);
}

// --- sublattices -----------------------------------------------------------

LatticeClass Sublattice::lift(const LatticeClass& x) const {
  if (!x.lattice().same_as(lattice)) throw Error(ErrorCode::LatticeMismatch, "class is not in this sublattice");
  return ambient.element(row_times(x.coords(), embedding));
}

std::vector<LatticeClass> Sublattice::generators() const {
  std::vector<LatticeClass> out;
  for (std::size_t i = 0; i < embedding.rows(); ++i) out.push_back(ambient.element(embedding.row(i)));
  return out;
}

Lattice span_gram(const Lattice& l, const std::vector<LatticeClass>& classes) {
  const std::size_t k = classes.size();
  IntMatrix g(k, k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i; j < k; ++j) g(i, j) = g(j, i) = inner(classes[i], classes[j]);
  for (const auto& c : classes)
    if (!c.lattice().same_as(l)) throw Error(ErrorCode::LatticeMismatch, "class is not in this lattice");
  return Lattice::from_gram(std::move(g), numbered_labels("w", k));
}

Sublattice orthogonal_complement(const Lattice& l, const std::vector<LatticeClass>& classes) {
  const std::size_t n = l.rank();
  IntMatrix constraints(classes.size(), n);
  for (std::size_t i = 0; i < classes.size(); ++i) {
    if (!classes[i].lattice().same_as(l)) throw Error(ErrorCode::LatticeMismatch, "class is not in this lattice");
    const IntVector row = row_times(classes[i].coords(), l.gram());
    constraints.set_row(i, row);
  }
  IntMatrix basis = classes.empty() ? IntMatrix::identity(n) : integer_kernel(constraints);
  if (basis.rows() == 0) basis = IntMatrix(0, n);
  const IntMatrix gram = basis * l.gram() * basis.transpose();
  return Sublattice{Lattice::from_gram(gram, numbered_labels("w", basis.rows())), l, std::move(basis)};
}

RadicalQuotient radical_quotient(const Lattice& l) {
  const std::size_t n = l.rank();
  IntMatrix radical = integer_kernel(l.gram());
  const IntMatrix full = complete_to_basis(radical);
  const std::size_t k = radical.rows();
  IntMatrix reps(n - k, n);
  for (std::size_t i = k; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) reps(i - k, j) = full(i, j);
  const IntMatrix gram = reps * l.gram() * reps.transpose();
  return RadicalQuotient{Sublattice{Lattice::from_gram(gram, numbered_labels("q", n - k)), l, std::move(reps)},
                         std::move(radical)};
}

}  // namespace k3lat
