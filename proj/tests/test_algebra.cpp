#include "doctest.h"
#include "helpers.hpp"

using namespace serrec;
using namespace serrec::testing;

namespace {
const FieldTag Q = FieldTag::rationals();
}

TEST_CASE("path algebra: A2, single vertex, truncated loop") {
  auto a2 = kA2(Q);
  CHECK(a2->dim() == 3);
  CHECK(a2->num_idempotents() == 2);
  CHECK(a2->radical().rows() == 1);
  CHECK(a2->label_index("e_1").has_value());
  CHECK(a2->label_index("a1").has_value());

  CHECK(ground_field(Q)->dim() == 1);

  auto lx = loop_x2(Q);
  CHECK(lx->dim() == 2);
  // x * x = 0 in the quotient
  std::size_t xi = *lx->label_index("x");
  Matrix x(1, 2, Q);
  x.at(0, xi) = Scalar::one(Q);
  CHECK(lx->mul(x, x).is_zero());
}

TEST_CASE("path algebra: longer quivers and error paths") {
  CHECK(kA3(Q)->dim() == 6);
  CHECK(kA4(Q)->dim() == 10);

  // free loop is infinite-dimensional
  Quiver q;
  q.vertex_names = {"1"};
  q.arrows.push_back({"x", 0, 0});
  CHECK_THROWS_AS(path_algebra(q, {}, Q, 100), Error);

  // non-parallel combination rejected
  Quiver q2;
  q2.vertex_names = {"1", "2"};
  q2.arrows.push_back({"a", 0, 1});
  q2.arrows.push_back({"b", 1, 1});
  Relation bad{PathTerm{Scalar::one(Q), {0}}, PathTerm{Scalar::one(Q), {1}}};
  CHECK_THROWS_AS(path_algebra(q2, {bad}, Q), Error);
}

TEST_CASE("path algebra: non-homogeneous parallel relation a*b - c") {
  // 1 -> 2 -> 3 with a shortcut c: 1 -> 3, relation a*b - c
  Quiver q;
  q.vertex_names = {"1", "2", "3"};
  q.arrows.push_back({"a", 0, 1});
  q.arrows.push_back({"b", 1, 2});
  q.arrows.push_back({"c", 0, 2});
  Relation r{PathTerm{Scalar::one(Q), {0, 1}}, PathTerm{-Scalar::one(Q), {2}}};
  auto alg = path_algebra(q, {r}, Q);
  CHECK(alg->dim() == 6);  // e1,e2,e3,a,b,c with a*b = c
  std::size_t ai = *alg->label_index("a"), bi = *alg->label_index("b"),
              ci = *alg->label_index("c");
  Matrix a(1, 6, Q), b(1, 6, Q);
  a.at(0, ai) = Scalar::one(Q);
  b.at(0, bi) = Scalar::one(Q);
  Matrix ab = alg->mul(a, b);
  CHECK(ab.at(0, ci) == Scalar::one(Q));
}

TEST_CASE("triangular algebra") {
  auto t2 = t2k(Q);
  CHECK(t2->dim() == 3);
  CHECK(t2->num_idempotents() == 2);
  CHECK(t2->radical().rows() == 1);

  // e2 corner (the S side, index 1) is the ground field
  auto c = corner(t2, std::vector<std::size_t>{1});
  CHECK(c.algebra->dim() == 1);

  auto prod = product_algebra(ground_field(Q), ground_field(Q));
  CHECK(prod->dim() == 2);
  CHECK(prod->num_idempotents() == 2);
}

TEST_CASE("product algebra") {
  CHECK(kxk(Q)->dim() == 2);
  auto p = product_algebra(kA2(Q), ground_field(Q));
  CHECK(p->dim() == 4);
  CHECK(p->num_idempotents() == 3);
  CHECK_THROWS_AS(product_algebra(kA2(Q), kA2(FieldTag::prime(5))), Error);
}

TEST_CASE("corner") {
  auto a2 = kA2(Q);
  auto full = corner(a2, std::vector<std::size_t>{0, 1});
  CHECK(full.algebra->dim() == a2->dim());

  auto c2 = corner(a2, std::vector<std::size_t>{1});
  CHECK(c2.algebra->dim() == 1);  // e2 (kA2) e2 = span{e2}

  CHECK_THROWS_AS(corner(a2, a2->radical().row(0)), Error);  // not idempotent
  Matrix half = a2->idempotent(0).scaled(Scalar::parse("1/2", Q));
  CHECK_THROWS_AS(corner(a2, half), Error);
}

TEST_CASE("idempotent ideal and quotient") {
  auto a2 = kA2(Q);
  // e = e2: Ae2A = span{e2, a}
  Matrix ideal2 = idempotent_ideal(a2, a2->idempotent(1));
  CHECK(ideal2.rows() == 2);
  auto q2 = quotient_algebra(a2, ideal2);
  CHECK(q2.algebra->dim() == 1);

  Matrix ideal1 = idempotent_ideal(a2, a2->idempotent(0));
  CHECK(ideal1.rows() == 2);
  CHECK(quotient_algebra(a2, ideal1).algebra->dim() == 1);

  // dim(AeA) + dim(A/AeA) = dim(A)
  CHECK(ideal2.rows() + q2.algebra->dim() == a2->dim());

  // e = unit: quotient is the zero ring
  CHECK_THROWS_AS(quotient_algebra(a2, idempotent_ideal(a2, a2->unit())),
                  Error);

  // a non-ideal span is rejected
  Matrix notideal(1, 3, Q);
  notideal.at(0, *a2->label_index("e_1")) = Scalar::one(Q);
  CHECK_THROWS_AS(quotient_algebra(a2, notideal), Error);
}

TEST_CASE("regular bimodules at an idempotent") {
  auto a2 = kA2(Q);
  auto rb = regular_bimodules(a2, {1});  // e = e2
  CHECK(rb.eA->dim() == 1);
  CHECK(rb.Ae->dim() == 2);
  REQUIRE(rb.quotient.has_value());
  CHECK(rb.abar_left->dim() == 1);

  auto full = regular_bimodules(a2, {0, 1});
  CHECK(full.eA->dim() == a2->dim());
  CHECK(!full.quotient.has_value());  // AeA = A
}

TEST_CASE("opposite algebra") {
  auto a2 = kA2(Q);
  auto op = a2->opposite();
  std::size_t e1 = *a2->label_index("e_1"), ai = *a2->label_index("a1");
  Matrix e1r(1, 3, Q), ar(1, 3, Q);
  e1r.at(0, e1) = Scalar::one(Q);
  ar.at(0, ai) = Scalar::one(Q);
  // e1 * a = a in A, so a *op e1 = a in A^op
  CHECK(op->mul(ar, e1r) == a2->mul(e1r, ar));
}

TEST_CASE("algebra_iso") {
  auto a2 = kA2(Q);
  CHECK(algebra_iso(a2, a2).has_value());

  auto t2 = t2k(Q);
  auto iso = algebra_iso(t2, a2);
  REQUIRE(iso.has_value());
  CHECK(t2->unit() * *iso == a2->unit());

  // k x k vs k[x]/x^2: radical dimensions differ, fast reject
  CHECK(!algebra_iso(kxk(Q), loop_x2(Q)).has_value());
}
