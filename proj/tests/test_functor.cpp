#include "doctest.h"
#include "helpers.hpp"
#include "serrec/functor.hpp"

using namespace serrec;
using namespace serrec::testing;

namespace {

const FieldTag Q = FieldTag::rationals();

ModulePtr proj_at(const AlgebraPtr& a, std::size_t i) {
  return submodule(Module::regular(a), a->lmat_elem(a->idempotent(i))).module;
}

}  // namespace

TEST_CASE("evaluation of tensor and hom functors") {
  auto a2 = kA2(Q);
  auto idf = FunctorExpr::identity(a2);
  auto p1 = proj_at(a2, 0);

  CHECK(is_isomorphic(eval_obj(idf, p1), p1).has_value());
  auto homreg = FunctorExpr::hom(regular_bimodule(a2));
  CHECK(is_isomorphic(eval_obj(homreg, p1), p1).has_value());

  // j^* = - (x) Ae : mod A -> mod eAe at e = e2; P1 e has dim 1
  auto rb = regular_bimodules(a2, {1});
  auto jstar = FunctorExpr::tensor(rb.Ae);
  CHECK(eval_obj(jstar, p1)->dim() == 1);

  // functoriality on morphisms: identity maps to identity
  Morphism idp = Morphism::identity(p1);
  CHECK(eval_mor(jstar, idp).mat() ==
        Matrix::identity(eval_obj(jstar, p1)->dim(), Q));
}

TEST_CASE("composition in normal form") {
  auto a2 = kA2(Q);
  auto rb = regular_bimodules(a2, {1});
  auto jbang = FunctorExpr::tensor(rb.eA);   // mod eAe -> mod A
  auto jstar = FunctorExpr::tensor(rb.Ae);   // mod A -> mod eAe

  // j^* j_! = - (x) (eA (x)_A Ae) with eA (x)_A Ae = eAe of dimension 1
  auto comp = compose(jstar, jbang);
  REQUIRE(comp.kind() == FunctorExpr::Kind::TensorForm);
  CHECK(comp.bimod()->dim() == 1);
  auto cs = simples(rb.corner.algebra);
  CHECK(is_isomorphic(eval_obj(comp, cs[0]), cs[0]).has_value());

  // i_* then j^* kills everything: the composed bimodule is zero on probes
  auto istar = FunctorExpr::tensor(rb.abar_left);  // mod Abar -> mod A
  auto zerof = compose(jstar, istar);
  auto qs = simples(rb.quotient->algebra);
  CHECK(eval_obj(zerof, qs[0])->dim() == 0);
}

TEST_CASE("canonical adjunction certifies") {
  auto a2 = kA2(Q);
  auto rb = regular_bimodules(a2, {1});
  auto famA = make_probe_family(a2, Q);
  auto famC = make_probe_family(rb.corner.algebra, Q);

  // (j_!, j^*) = (Tensor(eA), Hom(eA))
  auto adj = right_adjoint(FunctorExpr::tensor(rb.eA));
  REQUIRE(adj.has_value());
  auto rep = certify_adjunction(*adj, *famC, *famA);
  CHECK(rep.triangles_checked ==
        famC->objects().size() + famA->objects().size());
  CHECK(rep.hom_pairs_checked > 0);

  // (j^*, j_*) = (Tensor(Ae), Hom(Ae))
  auto adj2 = right_adjoint(FunctorExpr::tensor(rb.Ae));
  REQUIRE(adj2.has_value());
  certify_adjunction(*adj2, *famA, *famC);

  // units/counits of the regular bimodule are isos
  auto reg = regular_bimodule(a2);
  auto adjr = right_adjoint(FunctorExpr::tensor(reg));
  for (const auto& x : famA->objects()) {
    CHECK(adjunction_unit(*adjr, x).is_iso());
    CHECK(adjunction_counit(*adjr, x).is_iso());
  }
  // eta at the zero module is the zero map
  auto z = Module::zero(a2, Q);
  CHECK(adjunction_unit(*adjr, z).mat().rows() == 0);
}

TEST_CASE("exactness criteria with witnesses") {
  auto a2 = kA2(Q);
  CHECK(is_exact(FunctorExpr::identity(a2)).exact);

  // T2(k) at the S corner (index 1): i^* = - (x)_Lambda Abar is not exact
  auto t2 = t2k(Q);
  auto rb = regular_bimodules(t2, {1});
  auto i_upper = FunctorExpr::tensor(rb.abar_right);  // mod Lambda -> mod Abar
  auto rep = is_exact(i_upper);
  CHECK(!rep.exact);
  REQUIRE(rep.witness.has_value());
  // the witness sequence genuinely breaks under the functor
  Morphism img = eval_mor(i_upper, rep.witness->mono);
  CHECK(!img.is_injective());

  // j_-2 = Hom_Lambda(Sbar, -) is not exact (Sbar = Lambda/Lambda e_r Lambda)
  auto rb0 = regular_bimodules(t2, {0});
  auto jm2 = FunctorExpr::hom(rb0.abar_left);
  auto rep2 = is_exact(jm2);
  CHECK(!rep2.exact);
  REQUIRE(rep2.witness.has_value());
  Morphism img2 = eval_mor(jm2, rep2.witness->epi);
  CHECK(!img2.is_surjective());
}

TEST_CASE("adjoint existence matches exactness") {
  auto t2 = t2k(Q);
  auto rb = regular_bimodules(t2, {1});

  // i_1 = Tensor(Abar as (Lambda, Abar)) has no left adjoint (M != 0)
  CHECK(!left_adjoint(FunctorExpr::tensor(rb.abar_right)).has_value());

  // j_-2 = Hom(Sbar as (Sbar, Lambda)) has no right adjoint
  auto rb0 = regular_bimodules(t2, {0});
  CHECK(!right_adjoint(FunctorExpr::hom(rb0.abar_left)).has_value());

  // canonical directions always exist
  CHECK(right_adjoint(FunctorExpr::tensor(rb.eA)).has_value());
  CHECK(left_adjoint(FunctorExpr::hom(rb.eA)).has_value());
}

TEST_CASE("converted adjoints certify") {
  auto a2 = kA2(Q);
  auto rb = regular_bimodules(a2, {1});
  auto famA = make_probe_family(a2, Q);
  auto famC = make_probe_family(rb.corner.algebra, Q);

  // right adjoint of Hom(eA) exists since eA is right projective (= e2 A)
  auto adj = right_adjoint(FunctorExpr::hom(rb.eA));
  REQUIRE(adj.has_value());
  certify_adjunction(*adj, *famA, *famC);

  // left adjoint of Tensor(Ae): Ae is left projective (a summand of A)
  auto adj2 = left_adjoint(FunctorExpr::tensor(rb.Ae));
  REQUIRE(adj2.has_value());
  certify_adjunction(*adj2, *famC, *famA);

  // double adjoint returns to the start: L(R(Tensor(eA))) = Tensor(eA)
  auto r = right_adjoint(FunctorExpr::tensor(rb.eA));
  auto back = left_adjoint(r->G);
  REQUIRE(back.has_value());
  auto nat = natural_iso(back->F, FunctorExpr::tensor(rb.eA), *famC);
  CHECK(nat.has_value());
}

TEST_CASE("natural isomorphism search") {
  auto a2 = kA2(Q);
  auto rb = regular_bimodules(a2, {1});
  auto famA = make_probe_family(a2, Q);

  auto jstar = FunctorExpr::tensor(rb.Ae);
  CHECK(natural_iso(jstar, jstar, *famA).has_value());

  // Tensor(b) vs Tensor(b + 0)
  auto zero_b = [&] {
    auto c = rb.corner.algebra;
    std::vector<Matrix> la(a2->dim(), Matrix(0, 0, Q));
    std::vector<Matrix> ra(c->dim(), Matrix(0, 0, Q));
    return Bimodule::make(a2, c, la, ra, "0");
  }();
  auto padded = FunctorExpr::tensor(bimodule_direct_sum(rb.Ae, zero_b));
  CHECK(natural_iso(jstar, padded, *famA).has_value());

  // mixed form: Tensor(Ae) = Hom(eA) (the two descriptions of j^*)
  auto mixed = natural_iso(jstar, FunctorExpr::hom(rb.eA), *famA);
  REQUIRE(mixed.has_value());
  CHECK(!mixed->probed_only);
  for (const auto& x : famA->objects())
    CHECK(mixed->component(x).is_iso());

  // distinct functors are rejected: j^* vs the quotient-side projection
  auto istar = FunctorExpr::tensor(rb.abar_right);  // mod A -> mod Abar
  (void)istar;  // different target category; compare within mod eAe instead
  auto jj = compose(jstar, compose(FunctorExpr::tensor(rb.eA), jstar));
  CHECK(jj.kind() == FunctorExpr::Kind::TensorForm);
}

TEST_CASE("full faithfulness probes") {
  auto a2 = kA2(Q);
  auto famA = make_probe_family(a2, Q);
  auto idf = FunctorExpr::identity(a2);
  CHECK(is_fully_faithful(idf, *famA, *famA).verdict == Verdict::ProbedTrue);

  Cat zc{nullptr, Q};
  auto zf = FunctorExpr::zero_functor(Cat{a2, Q}, zc);
  CHECK(is_fully_faithful(zf, *famA, *famA).verdict == Verdict::False);

  // restriction along A ->> Abar is fully faithful on probes
  auto rb = regular_bimodules(a2, {1});
  auto famB = make_probe_family(rb.quotient->algebra, Q);
  auto incl = FunctorExpr::tensor(rb.abar_left);
  CHECK(is_fully_faithful(incl, *famB, *famA).verdict == Verdict::ProbedTrue);
}
