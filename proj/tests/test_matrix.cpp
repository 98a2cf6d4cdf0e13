#include <random>

#include "doctest.h"
#include "serrec/matrix.hpp"

using namespace serrec;

namespace {

const FieldTag Q = FieldTag::rationals();

Matrix random_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c,
                     FieldTag tag) {
  std::uniform_int_distribution<int> d(-4, 4);
  Matrix m(r, c, tag);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j)
      m.at(i, j) = Scalar::from_int(d(rng), tag);
  return m;
}

}  // namespace

TEST_CASE("rref: identity and zero") {
  auto id = Matrix::identity(2, Q);
  auto rr = rref(id);
  CHECK(rr.reduced == id);
  CHECK(rr.pivot_columns == std::vector<std::size_t>{0, 1});
  CHECK(rr.rank == 2);

  auto z = Matrix::zero(2, 2, Q);
  auto rz = rref(z);
  CHECK(rz.reduced == z);
  CHECK(rz.pivot_columns.empty());
  CHECK(rz.rank == 0);
}

TEST_CASE("rref: rank-1 matrix") {
  auto m = Matrix::from_ints({{1, 2}, {2, 4}}, Q);
  auto rr = rref(m);
  CHECK(rr.rank == 1);
  CHECK(rr.pivot_columns == std::vector<std::size_t>{0});
  // hand row-reduction: [[1,2],[0,0]]
  CHECK(rr.reduced == Matrix::from_ints({{1, 2}, {0, 0}}, Q));
}

TEST_CASE("kernel_basis") {
  CHECK(kernel_basis(Matrix::identity(3, Q)).cols() == 0);
  CHECK(kernel_basis(Matrix::zero(2, 3, Q)).cols() == 3);
  CHECK(rank(kernel_basis(Matrix::zero(2, 3, Q))) == 3);

  auto m = Matrix::from_ints({{1, 2}, {2, 4}}, Q);
  auto k = kernel_basis(m);
  REQUIRE(k.cols() == 1);
  CHECK((m * k).is_zero());
  // proportional to (-2, 1)^T
  CHECK(k.at(0, 0) * Scalar::one(Q) == -(k.at(1, 0) + k.at(1, 0)));
}

TEST_CASE("solve") {
  auto b = Matrix::from_ints({{3}, {5}}, Q);
  auto x = solve(Matrix::identity(2, Q), b);
  REQUIRE(x.has_value());
  CHECK(*x == b);

  CHECK(!solve(Matrix::zero(2, 2, Q), Matrix::from_ints({{1}, {0}}, Q)));

  auto s = solve(Matrix::from_ints({{2}}, Q), Matrix::from_ints({{3}}, Q));
  REQUIRE(s.has_value());
  CHECK(s->at(0, 0) == Scalar::parse("3/2", Q));
}

TEST_CASE("matmul / kron / image") {
  auto m = Matrix::from_ints({{1, 2}, {3, 4}}, Q);
  CHECK(Matrix::identity(2, Q) * m == m);
  auto a = Matrix::from_ints({{5}}, Q);
  CHECK(kron(a, m) == m.scaled(Scalar::from_int(5, Q)));
  CHECK(image_basis(Matrix::from_ints({{1, 2}, {2, 4}}, Q)).cols() == 1);
}

TEST_CASE("field mismatch and dimension errors") {
  auto q = Matrix::identity(2, Q);
  auto f = Matrix::identity(2, FieldTag::prime(5));
  CHECK_THROWS_AS(q * f, Error);
  CHECK_THROWS_AS(q * Matrix::zero(3, 3, Q), Error);
}

TEST_CASE("prime field arithmetic") {
  auto F5 = FieldTag::prime(5);
  auto m = Matrix::from_ints({{2, 1}, {3, 1}}, F5);
  auto inv = inverse(m);
  REQUIRE(inv.has_value());
  CHECK(*inv * m == Matrix::identity(2, F5));
  CHECK_THROWS_AS(FieldTag::prime(6), Error);
}

TEST_CASE("properties: rref idempotence, rank symmetry, exact solve") {
  std::mt19937_64 rng(12345);
  for (int trial = 0; trial < 40; ++trial) {
    FieldTag tag = trial % 2 ? FieldTag::prime(7) : Q;
    auto m = random_matrix(rng, 1 + trial % 5, 1 + (trial * 3) % 6, tag);
    auto rr = rref(m);
    CHECK(rref(rr.reduced).reduced == rr.reduced);
    CHECK(rank(m) == rank(m.transpose()));
    CHECK(rank(m) + kernel_basis(m).cols() == m.cols());

    // every solvable system solves exactly, no tolerance
    auto x = random_matrix(rng, m.cols(), 2, tag);
    Matrix b = m * x;
    auto sol = solve(m, b);
    REQUIRE(sol.has_value());
    CHECK(m * *sol == b);
  }
}

TEST_CASE("row space helper") {
  auto rows = Matrix::from_ints({{1, 2, 0}, {0, 0, 1}, {1, 2, 1}}, Q);
  RowSpace sp(rows);
  CHECK(sp.dim() == 2);
  CHECK(sp.contains(Matrix::from_ints({{2, 4, 3}}, Q)));
  CHECK(!sp.contains(Matrix::from_ints({{0, 1, 0}}, Q)));
  auto c = sp.coordinates(Matrix::from_ints({{2, 4, 3}}, Q));
  REQUIRE(c.has_value());
  CHECK(c->at(0, 0) == Scalar::from_int(2, Q));
  CHECK(c->at(0, 1) == Scalar::from_int(3, Q));
  CHECK(sp.complement_columns() == std::vector<std::size_t>{1});
}
