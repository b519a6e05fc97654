#include <doctest.h>

#include <random>

#include "k3lat/error.hpp"
#include "k3lat/exact.hpp"
#include "k3lat/lattice.hpp"
#include "oracles.hpp"

using namespace k3lat;

namespace {

IntMatrix diag_of(const SnfResult& s, std::size_t rows, std::size_t cols) {
  IntMatrix d(rows, cols);
  for (std::size_t i = 0; i < s.d.size(); ++i) d(i, i) = s.d[i];
  return d;
}

IntMatrix random_matrix(std::mt19937& rng, std::size_t rows, std::size_t cols, long range) {
  std::uniform_int_distribution<long> val(-range, range);
  IntMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = val(rng);
  return m;
}

}  // namespace

TEST_SUITE("exact") {
  TEST_CASE("smith normal form of small matrices") {
    CHECK(smith_normal_form(IntMatrix::identity(2)).d == IntVector{1, 1});
    CHECK(smith_normal_form(IntMatrix{{-2}}).d == IntVector{2});
    const IntMatrix e8 = root_lattice(RootKind::E, 8).gram();
    REQUIRE(oracle::det(e8) == 1);
    CHECK(smith_normal_form(e8).d == IntVector(8, 1));
  }

  TEST_CASE("smith normal form identity and divisibility") {
    std::mt19937 rng(7);
    for (int trial = 0; trial < 60; ++trial) {
      const std::size_t rows = 1 + trial % 4, cols = 1 + (trial / 4) % 5;
      const IntMatrix m = random_matrix(rng, rows, cols, 12);
      const SnfResult s = smith_normal_form(m);
      CHECK(s.u * m * s.v == diag_of(s, rows, cols));
      CHECK(abs(oracle::det(s.u)) == 1);
      CHECK(abs(oracle::det(s.v)) == 1);
      for (std::size_t i = 0; i + 1 < s.rank(); ++i) CHECK(s.d[i + 1] % s.d[i] == 0);
    }
  }

  TEST_CASE("smith normal form of the zero matrix and of large entries") {
    const SnfResult z = smith_normal_form(IntMatrix(2, 3));
    CHECK(z.rank() == 0);
    IntMatrix big(2, 2);
    big(0, 0) = mpz_class("123456789012345678901234567890");
    big(1, 1) = mpz_class("987654321098765432109876543210");
    const SnfResult s = smith_normal_form(big);
    CHECK(s.u * big * s.v == diag_of(s, 2, 2));
    CHECK(s.d[0] * s.d[1] == big(0, 0) * big(1, 1));
  }

  TEST_CASE("rational inverse") {
    CHECK(rational_inverse(IntMatrix{{-2}})(0, 0) == mpq_class(-1, 2));
    const RatMatrix u = rational_inverse(IntMatrix{{0, 1}, {1, 0}});
    CHECK(u == to_rational(IntMatrix{{0, 1}, {1, 0}}));
    const IntMatrix m{{0, 2}, {2, -2}};
    const RatMatrix inv = rational_inverse(m);
    CHECK(inv(0, 0) == mpq_class(1, 2));
    CHECK(inv(0, 1) == mpq_class(1, 2));
    CHECK(inv(1, 0) == mpq_class(1, 2));
    CHECK(inv(1, 1) == 0);
    CHECK(to_rational(m) * inv == RatMatrix::identity(2));
    CHECK_THROWS_AS(rational_inverse(IntMatrix{{1, 2}, {2, 4}}), Error);
  }

  TEST_CASE("determinant against the Laplace oracle") {
    std::mt19937 rng(11);
    for (int trial = 0; trial < 40; ++trial) {
      const IntMatrix m = random_matrix(rng, 1 + trial % 6, 1 + trial % 6, 9);
      CHECK(determinant(m) == oracle::det(m));
    }
  }

  TEST_CASE("signature") {
    CHECK(signature(IntMatrix{{0, 1}, {1, 0}}) == Signature{1, 0, 1});
    CHECK(signature(root_lattice(RootKind::E, 8).gram()) == Signature{0, 0, 8});
    CHECK(signature(IntMatrix{{0}}) == Signature{0, 1, 0});
    CHECK(signature(IntMatrix{{0, 0}, {0, -2}}) == Signature{0, 1, 1});
    CHECK_THROWS_AS(signature(IntMatrix{{0, 1}, {2, 0}}), Error);
  }

  TEST_CASE("signature is invariant under unimodular change of basis") {
    std::mt19937 rng(3);
    const IntMatrix g = direct_sum({hyperbolic_plane(), root_lattice(RootKind::D, 4)}).gram();
    for (int trial = 0; trial < 20; ++trial) {
      const IntMatrix t = oracle::from_mat(oracle::random_unimodular(g.rows(), rng));
      CHECK(signature(t.transpose() * g * t) == Signature{1, 0, 5});
    }
  }

  TEST_CASE("integer kernel is saturated") {
    CHECK(integer_kernel(IntMatrix::identity(3)).rows() == 0);
    const IntMatrix k = integer_kernel(IntMatrix{{2, -2}});
    REQUIRE(k.rows() == 1);
    CHECK(((k(0, 0) == 1 && k(0, 1) == 1) || (k(0, 0) == -1 && k(0, 1) == -1)));

    std::mt19937 rng(5);
    for (int trial = 0; trial < 30; ++trial) {
      const IntMatrix m = random_matrix(rng, 2, 5, 6);
      const IntMatrix ker = integer_kernel(m);
      CHECK(ker.rows() == 5 - smith_normal_form(m).rank());
      CHECK(m * ker.transpose() == IntMatrix(2, ker.rows()));
      const SnfResult s = smith_normal_form(ker);
      for (const auto& d : s.d) CHECK(d == 1);
    }
  }

  TEST_CASE("complete to basis keeps the given rows") {
    const IntMatrix rows{{1, 1, 0}, {0, 2, 1}};
    const IntMatrix b = complete_to_basis(rows);
    REQUIRE(b.rows() == 3);
    CHECK(b.row(0) == rows.row(0));
    CHECK(b.row(1) == rows.row(1));
    CHECK(abs(oracle::det(b)) == 1);
  }
}
