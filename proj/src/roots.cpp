#include "k3lat/roots.hpp"

#include <algorithm>
#include <numeric>

#include "k3lat/error.hpp"

namespace k3lat {

namespace {

// Exact Fincke-Pohst search for x with q(x) == target in a positive definite
// form, where q(x) = sum_i diag_i (x_i + sum_{j>i} mu_ij x_j)^2.
class ShortVectorSearch {
 public:
  explicit ShortVectorSearch(const IntMatrix& positive_gram) : n_(positive_gram.rows()), q_(to_rational(positive_gram)) {
    for (std::size_t i = 0; i < n_; ++i) {
      for (std::size_t j = i + 1; j < n_; ++j) {
        q_(j, i) = q_(i, j);
        q_(i, j) /= q_(i, i);
      }
      for (std::size_t k = i + 1; k < n_; ++k)
        for (std::size_t l = k; l < n_; ++l) q_(k, l) -= q_(k, i) * q_(i, l);
    }
  }

  std::vector<IntVector> run(const mpz_class& target) {
    found_.clear();
    if (n_ == 0) return found_;
    x_.assign(n_, 0);
    descend(n_ - 1, mpq_class(target));
    return std::move(found_);
  }

 private:
  void descend(std::size_t i, const mpq_class& remaining) {
    mpq_class center = 0;
    for (std::size_t j = i + 1; j < n_; ++j)
      if (x_[j] != 0) center -= q_(i, j) * x_[j];
    // Nearest integer to the center; the feasible integers form an interval
    // around it, so scan outward in both directions until infeasible.
    mpz_class start;
    mpq_class shifted = center + mpq_class(1, 2);
    mpz_fdiv_q(start.get_mpz_t(), shifted.get_num_mpz_t(), shifted.get_den_mpz_t());
    for (int dir : {+1, -1}) {
      for (mpz_class xi = dir > 0 ? start : start - 1;; xi += dir) {
        const mpq_class offset = xi - center;
        const mpq_class used = q_(i, i) * offset * offset;
        if (used > remaining) break;
        x_[i] = xi;
        const mpq_class left = remaining - used;
        if (i == 0) {
          if (left == 0) found_.push_back(x_);
        } else {
          descend(i - 1, left);
        }
      }
    }
    x_[i] = 0;
  }

  std::size_t n_;
  RatMatrix q_;
  IntVector x_;
  std::vector<IntVector> found_;
};

bool first_nonzero_positive(const IntVector& v) {
  for (const auto& c : v)
    if (c != 0) return c > 0;
  return false;
}

}  // namespace

RootList enumerate_norm_vectors(const Lattice& l, const mpz_class& norm) {
  if (norm >= 0) throw Error(ErrorCode::InvalidArgument, "norm must be negative");
  if (signature(l).plus > 0) throw Error(ErrorCode::IndefiniteLattice, "form has a positive direction");

  const RadicalQuotient rq = radical_quotient(l);
  const Lattice& q = rq.quotient.lattice;
  IntMatrix positive = q.gram();
  for (std::size_t i = 0; i < positive.rows(); ++i)
    for (std::size_t j = 0; j < positive.cols(); ++j) positive(i, j) = -positive(i, j);

  RootList out;
  out.norm = norm;
  out.radical_rank = rq.radical.rows();
  for (const IntVector& y : ShortVectorSearch(positive).run(-norm)) {
    if (!first_nonzero_positive(y)) continue;
    IntVector x = row_times(y, rq.quotient.embedding);
    if (!first_nonzero_positive(x))
      for (auto& c : x) c = -c;
    out.vectors.push_back(l.element(std::move(x)));
  }
  std::sort(out.vectors.begin(), out.vectors.end());
  return out;
}

// --- Dynkin kinds ----------------------------------------------------------

std::string DynkinKind::to_string() const {
  char letter = '?';
  switch (family) {
    case Family::A: letter = 'A'; break;
    case Family::D: letter = 'D'; break;
    case Family::E: letter = 'E'; break;
    case Family::Unrecognized: return "?";
  }
  return std::string(1, letter) + (affine ? "t" : "") + std::to_string(n);
}

std::optional<DynkinKind> DynkinKind::parse(std::string_view text) {
  if (text == "?") return unrecognized();
  if (text.size() < 2) return std::nullopt;
  DynkinKind k;
  switch (text[0]) {
    case 'A': k.family = Family::A; break;
    case 'D': k.family = Family::D; break;
    case 'E': k.family = Family::E; break;
    default: return std::nullopt;
  }
  std::size_t pos = 1;
  if (text[pos] == 't') {
    k.affine = true;
    ++pos;
  }
  if (pos >= text.size()) return std::nullopt;
  int n = 0;
  for (; pos < text.size(); ++pos) {
    if (text[pos] < '0' || text[pos] > '9') return std::nullopt;
    n = n * 10 + (text[pos] - '0');
  }
  k.n = n;
  return k;
}

mpz_class DynkinComponent::mark_of(const LatticeClass& x) const {
  for (std::size_t i = 0; i < members.size() && i < marks.size(); ++i)
    if (members[i] == x) return marks[i];
  return 0;
}

namespace {

using Family = DynkinKind::Family;

// Shape of a connected graph with edge weights in {1} (or the single
// weight-2 edge of the affine A1 diagram).
DynkinKind recognize_shape(const IntMatrix& gram) {
  const std::size_t m = gram.rows();
  if (m == 1) return DynkinKind::finite(Family::A, 1);

  std::vector<std::vector<std::size_t>> adj(m);
  std::size_t edges = 0;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j) {
      const mpz_class& w = gram(i, j);
      if (w == 0) continue;
      if (w == 2 && m == 2) return DynkinKind::extended(Family::A, 1);
      if (w != 1) return DynkinKind::unrecognized();
      adj[i].push_back(j);
      adj[j].push_back(i);
      ++edges;
    }

  const int nodes = static_cast<int>(m);
  if (edges == m) {
    for (const auto& a : adj)
      if (a.size() != 2) return DynkinKind::unrecognized();
    return DynkinKind::extended(Family::A, nodes - 1);
  }
  if (edges != m - 1) return DynkinKind::unrecognized();

  std::vector<std::size_t> branch;
  for (std::size_t i = 0; i < m; ++i) {
    if (adj[i].size() > 4) return DynkinKind::unrecognized();
    if (adj[i].size() >= 3) branch.push_back(i);
  }
  if (branch.empty()) return DynkinKind::finite(Family::A, nodes);

  auto leaf_neighbours = [&](std::size_t v) {
    return std::count_if(adj[v].begin(), adj[v].end(), [&](std::size_t w) { return adj[w].size() == 1; });
  };

  if (branch.size() == 1) {
    const std::size_t b = branch.front();
    if (adj[b].size() == 4) {
      return m == 5 ? DynkinKind::extended(Family::D, 4) : DynkinKind::unrecognized();
    }
    // Arm lengths (nodes excluding the branch vertex).
    std::vector<int> arms;
    for (std::size_t start : adj[b]) {
      int len = 1;
      std::size_t prev = b, cur = start;
      while (adj[cur].size() == 2) {
        std::size_t next = adj[cur][0] == prev ? adj[cur][1] : adj[cur][0];
        prev = cur;
        cur = next;
        ++len;
      }
      arms.push_back(len);
    }
    std::sort(arms.begin(), arms.end());
    const int p = arms[0], q = arms[1], r = arms[2];
    if (p == 1 && q == 1) return DynkinKind::finite(Family::D, nodes);
    if (p == 1 && q == 2 && r >= 2 && r <= 4) return DynkinKind::finite(Family::E, nodes);
    if (p == 2 && q == 2 && r == 2) return DynkinKind::extended(Family::E, 6);
    if (p == 1 && q == 3 && r == 3) return DynkinKind::extended(Family::E, 7);
    if (p == 1 && q == 2 && r == 5) return DynkinKind::extended(Family::E, 8);
    return DynkinKind::unrecognized();
  }
  if (branch.size() == 2) {
    for (std::size_t b : branch)
      if (adj[b].size() != 3 || leaf_neighbours(b) != 2) return DynkinKind::unrecognized();
    return DynkinKind::extended(Family::D, nodes - 1);
  }
  return DynkinKind::unrecognized();
}

std::vector<std::vector<std::size_t>> connected_groups(const std::vector<LatticeClass>& classes) {
  const std::size_t n = classes.size();
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (inner(classes[i], classes[j]) != 0) parent[find(i)] = find(j);
  std::vector<std::vector<std::size_t>> groups;
  std::vector<std::size_t> slot(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t root = find(i);
    if (slot[root] == n) {
      slot[root] = groups.size();
      groups.emplace_back();
    }
    groups[slot[root]].push_back(i);
  }
  return groups;
}

}  // namespace

std::vector<DynkinComponent> classify_components(const std::vector<LatticeClass>& input) {
  std::vector<LatticeClass> classes = input;
  std::sort(classes.begin(), classes.end());
  for (std::size_t i = 0; i < classes.size(); ++i) {
    if (classes[i].square() != -2)
      throw Error(ErrorCode::NotARoot, classes[i].to_string() + " has square " + classes[i].square().get_str());
    for (std::size_t j = i + 1; j < classes.size(); ++j)
      if (inner(classes[i], classes[j]) < 0)
        throw Error(ErrorCode::NegativePairing, classes[i].to_string() + " . " + classes[j].to_string() + " < 0");
  }

  std::vector<DynkinComponent> out;
  for (const auto& group : connected_groups(classes)) {
    DynkinComponent comp;
    for (std::size_t idx : group) comp.members.push_back(classes[idx]);
    const std::size_t m = comp.members.size();
    IntMatrix gram(m, m);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = i; j < m; ++j) gram(i, j) = gram(j, i) = inner(comp.members[i], comp.members[j]);

    comp.kind = recognize_shape(gram);
    if (comp.kind.affine) {
      const IntMatrix kernel = integer_kernel(gram);
      IntVector marks = kernel.rows() == 1 ? kernel.row(0) : IntVector{};
      if (!marks.empty() && marks.front() < 0)
        for (auto& x : marks) x = -x;
      const bool positive = !marks.empty() && std::all_of(marks.begin(), marks.end(), [](const mpz_class& x) { return x > 0; });
      if (!positive) {
        comp.kind = DynkinKind::unrecognized();
      } else {
        LatticeClass sum = comp.members.front().lattice().zero();
        for (std::size_t i = 0; i < m; ++i) sum += marks[i] * comp.members[i];
        comp.marks = std::move(marks);
        comp.isotropic_sum = std::move(sum);
      }
    }
    out.push_back(std::move(comp));
  }
  std::sort(out.begin(), out.end(), [](const DynkinComponent& a, const DynkinComponent& b) {
    if (a.kind != b.kind) return a.kind < b.kind;
    return a.members < b.members;
  });
  return out;
}

}  // namespace k3lat
