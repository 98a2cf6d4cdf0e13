#include "doctest.h"
#include "helpers.hpp"
#include "serrec/probes.hpp"

using namespace serrec;
using namespace serrec::testing;

namespace {

const FieldTag Q = FieldTag::rationals();

// eps_i A as a module
ModulePtr proj_at(const AlgebraPtr& a, std::size_t i) {
  return submodule(Module::regular(a), a->lmat_elem(a->idempotent(i))).module;
}

}  // namespace

TEST_CASE("kernels and cokernels") {
  auto a2 = kA2(Q);
  auto p1 = proj_at(a2, 0);
  CHECK(p1->dim() == 2);

  auto idm = Morphism::identity(p1);
  CHECK(kernel(idm).module->dim() == 0);
  CHECK(cokernel(idm).module->dim() == 0);

  auto s = simples(a2);
  auto z = Morphism::zero(p1, s[0]);
  CHECK(kernel(z).module->dim() == p1->dim());

  // P1 ->> S1 has kernel of dimension 1 isomorphic to S2
  auto cov = projective_cover(s[0]);
  CHECK(cov.cover->dim() == 2);
  auto om = kernel(cov.epi);
  CHECK(om.module->dim() == 1);
  CHECK(is_isomorphic(om.module, s[1]).has_value());

  // rank bookkeeping on an arbitrary morphism
  auto homs = hom_space(p1, p1);
  for (const auto& h : homs) {
    Morphism f(p1, p1, h);
    auto im = image(f);
    CHECK(kernel(f).module->dim() + im.module->dim() == p1->dim());
    CHECK(im.module->dim() + cokernel(f).module->dim() == p1->dim());
  }
}

TEST_CASE("hom spaces over kA2") {
  auto a2 = kA2(Q);
  auto s = simples(a2);
  auto p1 = proj_at(a2, 0);

  CHECK(hom_dim(s[0], s[1]) == 0);
  CHECK(hom_dim(s[1], s[1]) == 1);
  CHECK(hom_dim(p1, p1) == 1);

  // identity is in End
  auto ends = hom_space(p1, p1);
  bool has_id = false;
  for (const auto& h : ends)
    if (h == Matrix::identity(2, Q) ||
        (h.at(0, 0) == h.at(1, 1) && !h.at(0, 0).is_zero() &&
         h.at(0, 1).is_zero() && h.at(1, 0).is_zero()))
      has_id = true;
  CHECK(has_id);

  // additivity over direct sums
  auto sum = direct_sum(s[0], p1);
  CHECK(hom_dim(sum.module, p1) == hom_dim(s[0], p1) + hom_dim(p1, p1));
}

TEST_CASE("simples") {
  auto s2 = simples(kxk(Q));
  CHECK(s2.size() == 2);
  CHECK(s2[0]->dim() == 1);

  auto a2 = kA2(Q);
  auto s = simples(a2);
  std::size_t e1 = *a2->label_index("e_1"), ai = *a2->label_index("a1");
  CHECK(s[0]->act(e1) == Matrix::identity(1, Q));
  CHECK(s[0]->act(ai).is_zero());

  // T2(k) simples transport to kA2 simples along the algebra isomorphism
  auto t2 = t2k(Q);
  auto iso = algebra_iso(t2, a2);
  REQUIRE(iso.has_value());
  auto st = simples(t2);
  int matched = 0;
  for (const auto& sm : s) {
    auto pulled = transport_module(sm, t2, *iso);
    for (const auto& tm : st)
      if (is_isomorphic(pulled, tm)) ++matched;
  }
  CHECK(matched == 2);
}

TEST_CASE("composition factors") {
  auto a2 = kA2(Q);
  auto s = simples(a2);
  CHECK(composition_factors(s[0]) == std::vector<std::size_t>{1, 0});
  CHECK(composition_factors(Module::zero(a2, Q)) ==
        std::vector<std::size_t>{0, 0});
  auto p1 = proj_at(a2, 0);
  CHECK(composition_factors(p1) == std::vector<std::size_t>{1, 1});

  // additivity over the probe short exact sequences
  auto fam = make_probe_family(a2, Q);
  for (const auto& ses : fam->sequences()) {
    auto sub = composition_factors(ses.mono.source());
    auto mid = composition_factors(ses.mono.target());
    auto quo = composition_factors(ses.epi.target());
    for (std::size_t i = 0; i < mid.size(); ++i)
      CHECK(mid[i] == sub[i] + quo[i]);
  }
}

TEST_CASE("tensor over a bimodule") {
  auto a2 = kA2(Q);
  auto reg = regular_bimodule(a2);
  auto p1 = proj_at(a2, 0);

  auto t = tensor_over(p1, reg);
  CHECK(t.module->dim() == p1->dim());
  CHECK(is_isomorphic(t.module, p1).has_value());

  CHECK(tensor_over(Module::zero(a2, Q), reg).module->dim() == 0);

  // e = e2: S2 over the corner tensored with eA gives S2 (dim 1)
  auto rb = regular_bimodules(a2, {1});
  auto corner_simples = simples(rb.corner.algebra);
  auto t2 = tensor_over(corner_simples[0], rb.eA);
  CHECK(t2.module->dim() == 1);
  CHECK(is_isomorphic(t2.module, simples(a2)[1]).has_value());
}

TEST_CASE("hom module") {
  auto a2 = kA2(Q);
  auto reg = regular_bimodule(a2);
  auto p1 = proj_at(a2, 0);

  auto h = hom_module(reg, p1);
  CHECK(h.module->dim() == p1->dim());
  CHECK(is_isomorphic(h.module, p1).has_value());

  CHECK(hom_module(reg, Module::zero(a2, Q)).module->dim() == 0);

  auto rb = regular_bimodules(a2, {1});
  auto hp = hom_module(rb.eA, p1);  // Hom_A(eA, P1) = P1 e, dim 1
  CHECK(hp.module->dim() == 1);
}

TEST_CASE("tensor-hom adjunction dimension bijection") {
  auto a2 = kA2(Q);
  auto rb = regular_bimodules(a2, {1});
  auto famC = make_probe_family(rb.corner.algebra, Q);
  auto famA = make_probe_family(a2, Q);
  for (const auto& x : famC->objects())
    for (const auto& y : famA->objects()) {
      auto fx = tensor_over(x, rb.eA);
      auto gy = hom_module(rb.eA, y);
      CHECK(hom_dim(fx.module, y) == hom_dim(x, gy.module));
    }
}

TEST_CASE("ext1") {
  auto a2 = kA2(Q);
  auto s = simples(a2);
  auto p1 = proj_at(a2, 0);

  CHECK(ext1_dim(p1, s[0]) == 0);
  CHECK(ext1_dim(s[0], Module::zero(a2, Q)) == 0);

  std::size_t e12 = ext1_dim(s[0], s[1]);
  std::size_t e21 = ext1_dim(s[1], s[0]);
  CHECK(e12 + e21 == 1);  // exactly one nontrivial extension direction

  // the witness extension is a genuine non-split SES with middle P1
  if (e12 == 1) {
    auto e = ext1(s[0], s[1]);
    auto ses = extension_from_cocycle(e, s[1], e.cocycles[0]);
    CHECK(ses.mono.target()->dim() == 2);
    CHECK(is_isomorphic(ses.mono.target(), p1).has_value());
  }

  // presentation independence: pad the cover with an extra projective
  auto cov = projective_cover(s[0]);
  auto padded = direct_sum(cov.cover, proj_at(a2, 1));
  Morphism epi2 = padded.proj1.then(cov.epi);
  CHECK(epi2.is_surjective());
  auto om2 = kernel(epi2);
  // Ext computed from the padded presentation: Hom(Omega', n) modulo
  // restrictions from Hom(P0', n)
  auto full = hom_space(om2.module, s[1]);
  Matrix restricted(0, om2.module->dim() * s[1]->dim(), Q);
  for (const auto& g : hom_space(padded.module, s[1])) {
    Matrix res = om2.inclusion.mat() * g;
    Matrix row(1, om2.module->dim() * s[1]->dim(), Q);
    for (std::size_t i = 0; i < om2.module->dim(); ++i)
      row.at(0, i) = res.at(i, 0);
    restricted = restricted.vstack(row);
  }
  std::size_t dim2 = full.size() - RowSpace(restricted).dim();
  CHECK(dim2 == e12);
}

TEST_CASE("projectivity and covers") {
  auto a2 = kA2(Q);
  CHECK(is_projective(proj_at(a2, 0)));
  CHECK(is_projective(proj_at(a2, 1)));
  CHECK(is_projective(Module::zero(a2, Q)));
  CHECK(!is_projective(simples(a2)[0]));

  // the S-corner simple of T2(k) is not projective
  auto t2 = t2k(Q);
  auto st = simples(t2);
  // S corner = idempotent index 1; its projective cover has dim 2
  CHECK(!is_projective(st[1]));
  CHECK(is_projective(st[0]));  // the R-corner simple is projective

  auto cov = projective_cover(st[1]);
  CHECK(cov.cover->dim() == 2);
}

TEST_CASE("injectives") {
  auto a2 = kA2(Q);
  auto inj = injectives(a2);
  REQUIRE(inj.size() == 2);
  // I1 = S1 (dim 1), I2 = P1 (dim 2) for the orientation 1 -> 2
  std::vector<std::size_t> dims{inj[0]->dim(), inj[1]->dim()};
  std::sort(dims.begin(), dims.end());
  CHECK(dims == std::vector<std::size_t>{1, 2});
  // Ext^1(S, I) = 0 for all simples S and injectives I
  for (const auto& s : simples(a2))
    for (const auto& i : inj) CHECK(ext1_dim(s, i) == 0);
}

TEST_CASE("direct sum and isomorphism search") {
  auto a2 = kA2(Q);
  auto s = simples(a2);
  auto p1 = proj_at(a2, 0);

  CHECK(is_isomorphic(p1, p1).has_value());
  auto sum0 = direct_sum(p1, Module::zero(a2, Q));
  CHECK(is_isomorphic(sum0.module, p1).has_value());

  auto ss = direct_sum(s[0], s[1]);
  CHECK(!is_isomorphic(p1, ss.module).has_value());
}

TEST_CASE("probe family shape") {
  auto a2 = kA2(Q);
  auto fam = make_probe_family(a2, Q);
  CHECK(fam->objects().size() >= 6);
  CHECK(!fam->sequences().empty());
  CHECK(fam->hom_dim_cached(0, 0) >= 1);
}
