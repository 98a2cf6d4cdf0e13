#include "serrec/torsion.hpp"

namespace serrec {

namespace {

Matrix ideal_of(const AlgebraPtr& a, const Matrix& e) {
  if (e.is_zero()) return Matrix(0, a->dim(), a->field());
  return idempotent_ideal(a, e);
}

/// rows spanning M * I for an ideal given by basis rows.
Matrix module_times_ideal(const ModulePtr& m, const Matrix& ideal_rows) {
  RowBuilder rows(m->dim(), m->tag());
  for (std::size_t t = 0; t < ideal_rows.rows(); ++t)
    rows.add_rows(m->act_elem(ideal_rows.row(t)));
  return rows.take();
}

/// rows spanning { x : x * I = 0 }.
Matrix annihilator_rows(const ModulePtr& m, const Matrix& ideal_rows) {
  if (ideal_rows.rows() == 0) return Matrix::identity(m->dim(), m->tag());
  Matrix stacked(m->dim(), 0, m->tag());
  for (std::size_t t = 0; t < ideal_rows.rows(); ++t)
    stacked = stacked.hstack(m->act_elem(ideal_rows.row(t)));
  return left_kernel(stacked);
}

}  // namespace

ClassSpec killed_spec(const AlgebraPtr& a, const Matrix& e) {
  return IdempotentKilled{e, ideal_of(a, e)};
}

ClassSpec full_spec(const AlgebraPtr& a, const Matrix& e) {
  return IdempotentFull{e, ideal_of(a, e)};
}

bool spec_contains(const AlgebraPtr& a, const ClassSpec& spec,
                   const ModulePtr& m) {
  (void)a;
  if (m->dim() == 0) return true;
  if (auto k = std::get_if<IdempotentKilled>(&spec))
    return m->act_elem(k->e).is_zero();
  if (auto fu = std::get_if<IdempotentFull>(&spec))
    return RowSpace(module_times_ideal(m, fu->ideal_rows)).dim() == m->dim();
  if (auto hv = std::get_if<HomVanishFrom>(&spec)) {
    for (const auto& t : hv->tests)
      if (hom_dim(t, m) != 0) return false;
    return true;
  }
  // generator closure: member iff the iterated trace exhausts M
  TorsionPair tmp{m->algebra(), spec, HomVanishFrom{{}}};
  return torsion_submodule(tmp, m).module->dim() == m->dim();
}

std::string spec_name(const ClassSpec& spec) {
  if (std::holds_alternative<IdempotentKilled>(spec)) return "killed(e)";
  if (std::holds_alternative<IdempotentFull>(spec)) return "full(e)";
  if (std::holds_alternative<HomVanishFrom>(spec)) return "hom-perp";
  return "generated";
}

SubmoduleResult torsion_submodule(const TorsionPair& tp, const ModulePtr& m) {
  if (auto k = std::get_if<IdempotentKilled>(&tp.torsion))
    return submodule(m, annihilator_rows(m, k->ideal_rows));
  if (auto fu = std::get_if<IdempotentFull>(&tp.torsion)) {
    // M >= MI >= MI^2 >= ... stabilizes within dim M steps
    RowSpace cur(Matrix::identity(m->dim(), m->tag()));
    for (;;) {
      RowBuilder next(m->dim(), m->tag());
      for (std::size_t t = 0; t < fu->ideal_rows.rows(); ++t)
        next.add_rows(cur.basis() * m->act_elem(fu->ideal_rows.row(t)));
      RowSpace nsp(next.take());
      if (nsp.dim() == cur.dim()) break;
      cur = nsp;
    }
    return submodule(m, cur.basis());
  }
  if (std::holds_alternative<HomVanishFrom>(tp.torsion))
    throw Error(Errc::InvalidArgument,
                "hom-perp spec cannot serve as a torsion class");
  const auto& gc = std::get<GeneratorClosure>(tp.torsion);
  // iterated trace: t_{k+1}/t_k = trace of the generators in M/t_k
  Matrix sub(0, m->dim(), m->tag());
  for (;;) {
    auto quot = quotient_module(m, sub);
    Matrix tr(0, quot.module->dim(), m->tag());
    for (const auto& g : gc.generators)
      for (const auto& phi : hom_space(g, quot.module)) tr = tr.vstack(phi);
    RowSpace trsp(tr);
    if (trsp.dim() == 0) break;
    // pull back: { x : proj(x) in trace }
    Matrix red(quot.module->dim(), quot.module->dim() - trsp.dim(), m->tag());
    auto comp = trsp.complement_columns();
    for (std::size_t r = 0; r < quot.module->dim(); ++r) {
      Matrix e(1, quot.module->dim(), m->tag());
      e.at(0, r) = Scalar::one(m->tag());
      Matrix rr = trsp.reduce(e);
      for (std::size_t t = 0; t < comp.size(); ++t)
        red.at(r, t) = rr.at(0, comp[t]);
    }
    Matrix pre = left_kernel(quot.projection.mat() * red);
    if (RowSpace(pre).dim() == RowSpace(sub).dim()) break;
    sub = pre;
  }
  return submodule(m, sub);
}

ShortExactSeq t_decompose(const TorsionPair& tp, const ModulePtr& m) {
  auto t = torsion_submodule(tp, m);
  auto q = quotient_module(m, t.inclusion.mat());
  if (!spec_contains(tp.algebra, tp.torsion, t.module))
    throw Error(Errc::NotATorsionPair,
                "torsion part fails its own membership at " + m->name());
  if (!spec_contains(tp.algebra, tp.torsionfree, q.module))
    throw Error(Errc::NotATorsionPair,
                "torsionfree quotient fails membership at " + m->name());
  return ShortExactSeq::make(t.inclusion, q.projection);
}

GradedVerdict is_hereditary(const TorsionPair& tp, const ProbeFamily& fam) {
  if (std::holds_alternative<IdempotentKilled>(tp.torsion))
    return {Verdict::CertifiedTrue,
            "annihilator conditions pass to submodules"};
  // probed: kernels of probe morphisms out of torsion members
  const auto& objs = fam.objects();
  for (std::size_t i = 0; i < objs.size(); ++i) {
    if (!spec_contains(tp.algebra, tp.torsion, objs[i])) continue;
    for (std::size_t j = 0; j < objs.size(); ++j)
      for (const auto& phi : fam.morphisms(i, j)) {
        auto k = kernel(Morphism(objs[i], objs[j], phi));
        if (!spec_contains(tp.algebra, tp.torsion, k.module))
          return {Verdict::False,
                  "kernel of a probe morphism leaves the torsion class"};
      }
  }
  return {Verdict::ProbedTrue, "closed under probe submodules"};
}

GradedVerdict is_cohereditary(const TorsionPair& tp, const ProbeFamily& fam) {
  if (std::holds_alternative<IdempotentKilled>(tp.torsionfree))
    return {Verdict::CertifiedTrue,
            "annihilator conditions pass to quotients"};
  if (std::holds_alternative<IdempotentFull>(tp.torsionfree))
    return {Verdict::CertifiedTrue, "MI = M passes to quotients"};
  const auto& objs = fam.objects();
  for (std::size_t i = 0; i < objs.size(); ++i) {
    if (!spec_contains(tp.algebra, tp.torsionfree, objs[i])) continue;
    for (std::size_t j = 0; j < objs.size(); ++j)
      for (const auto& phi : fam.morphisms(j, i)) {
        // quotient by the image of a probe morphism into the member
        auto qq = quotient_module(objs[i], phi);
        if (!spec_contains(tp.algebra, tp.torsionfree, qq.module))
          return {Verdict::False,
                  "quotient of a probe member leaves the torsionfree class"};
      }
  }
  return {Verdict::ProbedTrue, "closed under probe quotients"};
}

void verify_torsion_pair(const TorsionPair& tp, const ProbeFamily& fam) {
  for (const auto& m : fam.objects()) t_decompose(tp, m);
  const auto& objs = fam.objects();
  for (std::size_t i = 0; i < objs.size(); ++i) {
    if (!spec_contains(tp.algebra, tp.torsion, objs[i])) continue;
    for (std::size_t j = 0; j < objs.size(); ++j) {
      if (!spec_contains(tp.algebra, tp.torsionfree, objs[j])) continue;
      if (fam.hom_dim_cached(i, j) != 0)
        throw Error(Errc::NotATorsionPair,
                    "Hom(T, F) != 0 at probes (" + objs[i]->name() + ", " +
                        objs[j]->name() + ")");
    }
  }
}

WeaklyLocalizingWitness strongly_hereditary_witness(const TorsionPair& tp,
                                                    const ModulePtr& m,
                                                    const ProbeFamily& fam) {
  auto k = std::get_if<IdempotentKilled>(&tp.torsion);
  if (!k)
    throw Error(Errc::HypothesisViolated,
                "witness construction needs an idempotent-annihilator class");
  const auto& a = tp.algebra;
  // quotient-side adjunction at e: j^* = Tensor(Ae), j_* = Hom(Ae)
  auto subset = a->distinguished_subset(k->e);
  if (!subset)
    throw Error(Errc::NotDistinguishedSum, "torsion idempotent not aligned");
  WeaklyLocalizingWitness out{
      Morphism::identity(m), Morphism::identity(m), Morphism::identity(m), 0,
      0};
  if (subset->empty()) {
    // T is the whole category: 0 -> M -> M -> 0 -> 0
    auto z = Module::zero(a, m->tag());
    out.b1_to_m = Morphism::identity(m);
    out.m_to_c = Morphism::zero(m, z);
    out.c_to_b2 = Morphism::zero(z, z);
    return out;
  }
  auto rb = regular_bimodules(a, *subset);
  Adjunction adj{FunctorExpr::tensor(rb.Ae), FunctorExpr::hom(rb.Ae), rb.Ae,
                 nullptr, nullptr};
  Morphism zeta = adjunction_unit(adj, m);  // M -> j_* j^* M
  auto b1 = kernel(zeta);
  auto b2 = cokernel(zeta);
  // B1 is exactly the torsion submodule
  auto t = torsion_submodule(tp, m);
  if (b1.module->dim() != t.module->dim())
    throw Error(Errc::InternalInconsistency,
                "kernel of the unit differs from the torsion submodule");
  if (!spec_contains(a, tp.torsion, b1.module) ||
      !spec_contains(a, tp.torsion, b2.module))
    throw Error(Errc::HypothesisViolated,
                "outer terms of the witness sequence not torsion");
  // C lies in the Hom/Ext perp: exact criterion against the torsion simples,
  // plus the torsion probes
  ModulePtr c = zeta.target();
  auto sims = simples(a);
  for (std::size_t i = 0; i < sims.size(); ++i) {
    if (!spec_contains(a, tp.torsion, sims[i])) continue;
    if (hom_dim(sims[i], c) != 0)
      throw Error(Errc::HypothesisViolated, "Hom(S, C) != 0");
    ++out.hom_checks;
    if (ext1_dim(sims[i], c) != 0)
      throw Error(Errc::HypothesisViolated, "Ext1(S, C) != 0");
    ++out.ext_checks;
  }
  for (const auto& p : fam.objects()) {
    if (!spec_contains(a, tp.torsion, p)) continue;
    if (hom_dim(p, c) != 0)
      throw Error(Errc::HypothesisViolated, "Hom(T', C) != 0 at a probe");
    ++out.hom_checks;
    if (ext1_dim(p, c) != 0)
      throw Error(Errc::HypothesisViolated, "Ext1(T', C) != 0 at a probe");
    ++out.ext_checks;
  }
  out.b1_to_m = b1.inclusion;
  out.m_to_c = zeta;
  out.c_to_b2 = b2.projection;
  return out;
}

TtfTriple ttf_triple(const AlgebraPtr& a, const Matrix& e,
                     const ProbeFamily& fam) {
  if (!a->is_idempotent(e))
    throw Error(Errc::NotIdempotent, "ttf_triple: e^2 != e");
  Matrix ideal = ideal_of(a, e);
  ClassSpec g = IdempotentKilled{e, ideal};
  ClassSpec t = IdempotentFull{e, ideal};
  // F = G-perp: Hom vanishing against the embedded projectives of A/AeA,
  // which generate G
  std::vector<ModulePtr> tests;
  if (RowSpace(ideal).dim() < a->dim() && !e.is_zero()) {
    auto subset = a->distinguished_subset(e);
    if (!subset)
      throw Error(Errc::NotDistinguishedSum, "ttf idempotent not aligned");
    auto rb = regular_bimodules(a, *subset);
    if (rb.quotient) {
      auto incl = FunctorExpr::tensor(rb.abar_left);
      auto fam_bar = make_probe_family(rb.quotient->algebra, a->field());
      for (const auto& p : fam_bar->projectives())
        tests.push_back(eval_obj(incl, p));
    }
  } else if (e.is_zero()) {
    // G is everything; its perp is generated by all projectives
    for (const auto& p : fam.projectives()) tests.push_back(p);
  }
  TtfTriple out{TorsionPair{a, t, g}, TorsionPair{a, g, HomVanishFrom{tests}}};
  verify_torsion_pair(out.tg, fam);
  verify_torsion_pair(out.gf, fam);
  return out;
}

namespace {

bool spec_equal(const ClassSpec& x, const ClassSpec& y) {
  if (auto a = std::get_if<IdempotentKilled>(&x))
    if (auto b = std::get_if<IdempotentKilled>(&y)) return a->e == b->e;
  if (auto a = std::get_if<IdempotentFull>(&x))
    if (auto b = std::get_if<IdempotentFull>(&y)) return a->e == b->e;
  if (auto a = std::get_if<HomVanishFrom>(&x))
    if (auto b = std::get_if<HomVanishFrom>(&y))
      return a->tests.size() == b->tests.size();
  return false;
}

}  // namespace

TwoTorsionSplit two_torsion_split(const TorsionPair& up, const TorsionPair& vp,
                                  const ModulePtr& m, const ProbeFamily& fam) {
  // shared middle class; U closed under subobjects, W under quotients
  if (!spec_equal(up.torsionfree, vp.torsion))
    throw Error(Errc::HypothesisViolated,
                "the torsionfree class of (U,V) must be the torsion class of "
                "(V,W)");
  auto hu = is_hereditary(up, fam);
  if (hu.verdict == Verdict::False)
    throw Error(Errc::HypothesisViolated, "U not closed under subobjects");
  auto cw = is_cohereditary(vp, fam);
  if (cw.verdict == Verdict::False)
    throw Error(Errc::HypothesisViolated, "W not closed under quotients");

  auto uv = t_decompose(up, m);
  auto vw = t_decompose(vp, m);
  // M_V -> M ->> M^V must be an isomorphism (the push-out argument)
  Morphism sigma = vw.mono.then(uv.epi);
  auto sigma_inv = sigma.inverse();
  if (!sigma_inv)
    throw Error(Errc::SplitLiftFailed,
                "t-parts do not lift: M_V -> M^V not invertible");
  Morphism section = sigma_inv->then(vw.mono);  // M^V -> M
  Matrix iso_mat = uv.mono.mat().vstack(section.mat());
  auto sum = direct_sum(uv.mono.source(), uv.epi.target());
  Morphism iso(sum.module, m, iso_mat);
  if (!iso.is_iso())
    throw Error(Errc::SplitLiftFailed, "assembled map not an isomorphism");
  // the iso reproduces the two t-decomposition maps
  if (sum.inj1.then(iso).mat() != uv.mono.mat())
    throw Error(Errc::InternalInconsistency, "iso does not extend t(M) -> M");
  if (iso.inverse()->then(sum.proj2).mat() != uv.epi.mat())
    throw Error(Errc::InternalInconsistency, "iso incompatible with M -> M^V");

  TwoTorsionSplit out{uv, vw, iso, true};
  for (const auto& p : fam.objects()) {
    bool in_u = spec_contains(up.algebra, up.torsion, p);
    bool in_w = spec_contains(vp.algebra, vp.torsionfree, p);
    if (in_u != in_w) out.classes_equal_on_probes = false;
  }
  return out;
}

}  // namespace serrec
