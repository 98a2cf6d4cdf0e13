#include "doctest.h"
#include "helpers.hpp"
#include "serrec/serre.hpp"
#include "serrec/torsion.hpp"

using namespace serrec;
using namespace serrec::testing;

namespace {
const FieldTag Q = FieldTag::rationals();
}

TEST_CASE("serre subcategories of kA2") {
  auto a2 = kA2(Q);
  auto fam = make_probe_family(a2, Q);
  auto sims = simples(a2);

  // I = {} : the trivial subcategory
  auto s0 = SerreSubcat::from_simples(a2, {});
  CHECK(s0.is_trivial());
  CHECK(s0.subcategory().is_zero());
  CHECK(s0.contains(Module::zero(a2, Q)));
  CHECK(!s0.contains(sims[0]));
  s0.verify(*fam);

  // I = everything: the whole category, quotient collapses
  auto sall = SerreSubcat::from_simples(a2, {0, 1});
  CHECK(sall.is_whole_category());
  CHECK(sall.quotient_category().is_zero());
  CHECK(sall.contains(Module::regular(a2)));
  sall.verify(*fam);

  // I = {S2}: complement e = e1, quotient = mod k
  auto s2 = SerreSubcat::from_simples(a2, {1});
  CHECK(s2.quotient_category().alg->dim() == 1);
  CHECK(s2.contains(sims[1]));
  auto p1 = fam->projectives()[0];
  CHECK(!s2.contains(p1));
  s2.verify(*fam);

  // inclusion matches restriction: fully faithful on probes with image Ker Q
  auto famS = make_probe_family(s2.subcategory().alg, Q);
  auto ff = is_fully_faithful(s2.inclusion_functor(), *famS, *fam);
  CHECK(ff.verdict != Verdict::False);
  for (const auto& x : famS->objects()) {
    auto ix = eval_obj(s2.inclusion_functor(), x);
    CHECK(s2.contains(ix));
    CHECK(eval_obj(s2.quotient_functor(), ix)->dim() == 0);
  }
  // every probe killed by Q lies in S (image = kernel, checked both ways)
  for (const auto& m : fam->objects())
    if (eval_obj(s2.quotient_functor(), m)->dim() == 0) CHECK(s2.contains(m));
}

TEST_CASE("t-decomposition for the annihilator pair on kA2") {
  auto a2 = kA2(Q);
  auto fam = make_probe_family(a2, Q);
  auto sims = simples(a2);
  auto p1 = fam->projectives()[0];

  // T = modules killed by Ae1A = those with only S2 factors
  TorsionPair tp{a2, killed_spec(a2, a2->idempotent(0)),
                 HomVanishFrom{{sims[1]}}};
  // F = T-perp: Hom(S2, -) = 0

  auto ses = t_decompose(tp, p1);
  CHECK(ses.mono.source()->dim() == 1);  // t(P1) = span{a} = S2
  CHECK(is_isomorphic(ses.mono.source(), sims[1]).has_value());
  CHECK(is_isomorphic(ses.epi.target(), sims[0]).has_value());

  // members decompose trivially
  CHECK(t_decompose(tp, sims[1]).mono.source()->dim() == 1);
  CHECK(t_decompose(tp, sims[0]).mono.source()->dim() == 0);

  CHECK(is_hereditary(tp, *fam).verdict == Verdict::CertifiedTrue);
  verify_torsion_pair(tp, *fam);
}

TEST_CASE("strongly hereditary witness sequence") {
  auto a2 = kA2(Q);
  auto fam = make_probe_family(a2, Q);
  auto sims = simples(a2);
  auto p1 = fam->projectives()[0];

  TorsionPair tp{a2, killed_spec(a2, a2->idempotent(0)),
                 HomVanishFrom{{sims[1]}}};

  // m in T: 0 -> M -> M -> 0 -> 0
  auto w1 = strongly_hereditary_witness(tp, sims[1], *fam);
  CHECK(w1.b1_to_m.source()->dim() == sims[1]->dim());
  CHECK(w1.m_to_c.target()->dim() == 0);

  // m = P1: 0 -> S2 -> P1 -> C -> B2 -> 0 with all perp checks passing
  auto w2 = strongly_hereditary_witness(tp, p1, *fam);
  CHECK(w2.b1_to_m.source()->dim() == 1);
  CHECK(w2.hom_checks > 0);
  CHECK(w2.ext_checks > 0);
  // exactness of the 4-term sequence at M and C
  CHECK((w2.b1_to_m.mat() * w2.m_to_c.mat()).is_zero());
  CHECK((w2.m_to_c.mat() * w2.c_to_b2.mat()).is_zero());
  CHECK(kernel(w2.m_to_c).module->dim() == w2.b1_to_m.source()->dim());
  CHECK(image(w2.m_to_c).module->dim() + cokernel(w2.m_to_c).module->dim() ==
        w2.m_to_c.target()->dim());
}

TEST_CASE("ttf triples") {
  auto a2 = kA2(Q);
  auto fam = make_probe_family(a2, Q);

  // e = unit: T = everything, G = {0}, F = everything
  auto t1 = ttf_triple(a2, a2->unit(), *fam);
  CHECK(spec_contains(a2, t1.tg.torsion, Module::regular(a2)));
  CHECK(!spec_contains(a2, t1.tg.torsionfree, simples(a2)[0]));

  // e = 0: G = everything
  auto t0 = ttf_triple(a2, Matrix(1, a2->dim(), Q), *fam);
  CHECK(spec_contains(a2, t0.tg.torsionfree, Module::regular(a2)));

  // kA2 at e2: T = e2-supported modules, G = e1-supported with a acting 0
  auto t2 = ttf_triple(a2, a2->idempotent(1), *fam);
  auto sims = simples(a2);
  CHECK(spec_contains(a2, t2.tg.torsion, sims[1]));
  CHECK(!spec_contains(a2, t2.tg.torsion, sims[0]));
  CHECK(spec_contains(a2, t2.tg.torsionfree, sims[0]));
}

TEST_CASE("two-torsion-pair splitting on k x k") {
  auto kk = kxk(Q);
  auto fam = make_probe_family(kk, Q);
  auto t = ttf_triple(kk, kk->idempotent(0), *fam);

  // every probe splits into its two isotypic parts
  for (const auto& m : fam->objects()) {
    auto sp = two_torsion_split(t.tg, t.gf, m, *fam);
    CHECK(sp.classes_equal_on_probes);
    CHECK(sp.iso.is_iso());
    CHECK(sp.uv.mono.source()->dim() + sp.uv.epi.target()->dim() == m->dim());
  }

  // members land entirely in one summand
  auto sims = simples(kk);
  auto sp0 = two_torsion_split(t.tg, t.gf, sims[0], *fam);
  auto sp1 = two_torsion_split(t.tg, t.gf, sims[1], *fam);
  CHECK(sp0.uv.mono.source()->dim() + sp1.uv.mono.source()->dim() == 1);
}

TEST_CASE("two-torsion-pair splitting rejects bad hypotheses") {
  // on kA2 at e2 the companion classes differ (U != W) and the torsion class
  // of (T, G) is not closed under subobjects; the split must refuse
  auto a2 = kA2(Q);
  auto fam = make_probe_family(a2, Q);
  auto t = ttf_triple(a2, a2->idempotent(1), *fam);
  auto p1 = fam->projectives()[0];
  bool refused = false;
  try {
    auto sp = two_torsion_split(t.tg, t.gf, p1, *fam);
    // if the closure checks pass on probes, the classes must still differ
    refused = !sp.classes_equal_on_probes;
  } catch (const Error&) {
    refused = true;
  }
  CHECK(refused);
}

TEST_CASE("generator-closure torsion class") {
  auto a2 = kA2(Q);
  auto sims = simples(a2);
  auto fam = make_probe_family(a2, Q);
  auto p1 = fam->projectives()[0];

  // class generated by S2 = the e2-supported modules
  TorsionPair tp{a2, GeneratorClosure{{sims[1]}}, HomVanishFrom{{sims[1]}}};
  auto t = torsion_submodule(tp, p1);
  CHECK(t.module->dim() == 1);
  CHECK(spec_contains(a2, tp.torsion, sims[1]));
  CHECK(!spec_contains(a2, tp.torsion, sims[0]));
  CHECK(!spec_contains(a2, tp.torsion, p1));
}
