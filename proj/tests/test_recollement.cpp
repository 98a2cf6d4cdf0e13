#include "doctest.h"
#include "helpers.hpp"
#include "serrec/recollement.hpp"

using namespace serrec;
using namespace serrec::testing;

namespace {
const FieldTag Q = FieldTag::rationals();
}

TEST_CASE("canonical recollement of kA2 at both idempotents") {
  auto a2 = kA2(Q);
  for (std::size_t e = 0; e < 2; ++e) {
    auto r = canonical_recollement(a2, {e});
    CHECK(!r.b_side_zero());
    CHECK(!r.c_side_zero());
    auto certs = verify_recollement(r);
    CHECK(bundle_certified(certs));
  }
}

TEST_CASE("degenerate recollements verify trivially") {
  auto a2 = kA2(Q);
  auto r0 = canonical_recollement(a2, {});
  CHECK(r0.c_side_zero());
  CHECK(bundle_certified(verify_recollement(r0)));

  auto rall = canonical_recollement(a2, {0, 1});
  CHECK(rall.b_side_zero());
  CHECK(bundle_certified(verify_recollement(rall)));
}

TEST_CASE("the T2(k) recollement reproduces the triangular ladder") {
  auto t2 = t2k(Q);
  // e = the S corner (idempotent index 1)
  auto r = canonical_recollement(t2, {1});
  CHECK(bundle_certified(verify_recollement(r)));
  CHECK(r.catB.alg->dim() == 1);  // mod R
  CHECK(r.catC.alg->dim() == 1);  // mod S
  // i^! and j_* are exact here; i^* is not (Abar is not left projective)
  CHECK(is_exact(r.i_shriek).exact);
  CHECK(is_exact(r.j_lower).exact);
  CHECK(!is_exact(r.i_upper).exact);
}

TEST_CASE("adjoint by kernel and cokernel") {
  auto a2 = kA2(Q);
  auto r = canonical_recollement(a2, {1});
  auto p1 = r.famA->projectives()[0];

  // i^!(m) = Ker(m -> j_* j^* m), compared with Hom(Abar, m)
  for (const auto& m : r.famA->objects()) {
    auto pk = adjoint_by_kernel(r.j_lower, m);
    auto nf = eval_obj(r.i_shriek, m);
    CHECK(pk.module->dim() == nf->dim());
    CHECK(r.in_ker_j_upper(pk.module));
  }
  // m in Im j_*  =>  i^!(m) = 0; m in Ker j^*  =>  i^!(m) = m
  auto jy = eval_obj(r.j_lower, r.famC->objects()[0]);
  CHECK(adjoint_by_kernel(r.j_lower, jy).module->dim() == 0);
  auto sims = simples(a2);
  CHECK(adjoint_by_kernel(r.j_lower, sims[0]).module->dim() == sims[0]->dim());

  // dual side
  for (const auto& m : r.famA->objects()) {
    auto pc = adjoint_by_cokernel(r.j_bang, m);
    auto nf = eval_obj(r.i_upper, m);
    CHECK(pc.module->dim() == nf->dim());
  }
  (void)p1;

  // a functor without an exact left adjoint is rejected
  auto t2 = t2k(Q);
  auto rt = canonical_recollement(t2, {1});
  CHECK_THROWS_AS(adjoint_by_kernel(rt.i_shriek, Module::regular(t2)), Error);
}

TEST_CASE("recollements from torsion pairs") {
  auto a2 = kA2(Q);
  auto sims = simples(a2);
  auto fam = make_probe_family(a2, Q);

  // T = killed(e1) = modules with only S2 factors; strongly hereditary
  TorsionPair tp{a2, killed_spec(a2, a2->idempotent(0)),
                 HomVanishFrom{{sims[1]}}};
  auto r = right_recollement_from_torsion(tp);
  CHECK(r.catC.alg->dim() == 1);
  CHECK(bundle_certified(verify_right_recollement(r)));

  // degenerate: T = {0} via e = unit
  TorsionPair t0{a2, killed_spec(a2, a2->unit()), HomVanishFrom{{}}};
  auto r0 = right_recollement_from_torsion(t0);
  CHECK(r0.b_side_zero());

  // T = everything via e = 0
  TorsionPair tall{a2, killed_spec(a2, Matrix(1, a2->dim(), Q)),
                   HomVanishFrom{{sims[0], sims[1]}}};
  auto rall = right_recollement_from_torsion(tall);
  CHECK(rall.c_side_zero());

  // cohereditary side
  TorsionPair cp{a2, full_spec(a2, a2->idempotent(0)),
                 killed_spec(a2, a2->idempotent(0))};
  auto rl = left_recollement_from_torsion(cp);
  CHECK(bundle_certified(verify_left_recollement(rl)));
}

TEST_CASE("batteries: all eight verdicts coincide") {
  // split case: k x k, everything true
  auto kk = kxk(Q);
  auto rk = canonical_recollement(kk, {0});
  auto b1 = right_recollement_battery(rk);
  CHECK(b1.all_equal);
  CHECK(b1.conditions.front().second == true);
  CHECK(b1.ker_perp_match);
  auto b2 = left_recollement_battery(rk);
  CHECK(b2.all_equal);
  CHECK(b2.conditions.front().second == true);

  // T2(k) at the S corner: the right battery is all-true (i^!, j_* exact),
  // the left battery is all-false (i^* not exact)
  auto t2 = t2k(Q);
  auto rt = canonical_recollement(t2, {1});
  auto b3 = right_recollement_battery(rt);
  CHECK(b3.all_equal);
  CHECK(b3.conditions.front().second == true);
  auto b4 = left_recollement_battery(rt);
  CHECK(b4.all_equal);
  CHECK(b4.conditions.front().second == false);

  // degenerate bundle: everything true
  auto rd = canonical_recollement(kk, {0, 1});
  auto b5 = right_recollement_battery(rd);
  CHECK(b5.all_equal);
  CHECK(b5.conditions.front().second == true);
}

TEST_CASE("extension of left recollements") {
  for (auto& alg : {kA2(Q), kA3(Q), t2k(Q)}) {
    for (std::size_t e = 0; e < alg->num_idempotents(); ++e) {
      auto l = canonical_recollement(alg, {e});
      auto ext = extend_left_recollement(l);
      CHECK(bundle_certified(ext.certificates));
      CHECK(ext.t_decompositions_checked == l.famA->objects().size());
    }
  }
  // degenerate edge
  auto r0 = canonical_recollement(kA2(Q), {});
  auto e0 = extend_left_recollement(r0);
  CHECK(bundle_certified(e0.certificates));
}

TEST_CASE("split check") {
  // k x k at either idempotent: split, with explicit isos and decompositions
  auto kk = kxk(Q);
  for (std::size_t e = 0; e < 2; ++e) {
    auto r = canonical_recollement(kk, {e});
    auto rep = split_check(r);
    CHECK(rep.split);
    CHECK(rep.isos_found == 2);
    CHECK(rep.probe_decompositions.size() == r.famA->objects().size());
  }

  // T2(k) at e2: not split, witness = non-exactness of i^*
  auto t2 = t2k(Q);
  auto rt = canonical_recollement(t2, {1});
  auto rep = split_check(rt);
  CHECK(!rep.split);
  CHECK(rep.witness.find("i^*") != std::string::npos);
  REQUIRE(rep.witness_ses.has_value());

  // degenerate edge splits trivially
  auto rd = canonical_recollement(t2, {0, 1});
  CHECK(split_check(rd).split);
}
