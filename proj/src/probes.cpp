#include "serrec/probes.hpp"

namespace serrec {

ProbeFamily::ProbeFamily(AlgebraPtr a) : alg_(std::move(a)) {
  if (!alg_) return;
  auto reg = Module::regular(alg_);
  simples_ = simples(alg_);

  for (std::size_t i = 0; i < alg_->num_idempotents(); ++i) {
    Matrix rows = alg_->lmat_elem(alg_->idempotent(i));  // eps_i A
    auto p = submodule(reg, rows);
    projectives_.push_back(p.module);
    objects_.push_back(p.module);
  }
  for (const auto& s : simples_) objects_.push_back(s);

  // radical powers P J^k and layers P J^k / P J^(k+1)
  for (const auto& p : projectives_) {
    ModulePtr cur = p;
    while (true) {
      auto rad = radical_submodule(cur);
      if (rad.module->dim() == 0) break;
      auto layer = quotient_module(cur, rad.inclusion.mat());
      if (rad.module->dim() < cur->dim()) {
        objects_.push_back(rad.module);
        if (layer.module->dim() > 0 && layer.module->dim() < p->dim())
          objects_.push_back(layer.module);
      }
      cur = rad.module;
    }
  }

  objects_.push_back(reg);
  for (const auto& i : injectives(alg_)) objects_.push_back(i);

  // probe short exact sequences
  for (const auto& m : objects_) {
    if (m->dim() == 0) continue;
    auto rad = radical_submodule(m);
    if (rad.module->dim() > 0 && rad.module->dim() < m->dim()) {
      auto layer = quotient_module(m, rad.inclusion.mat());
      sequences_.push_back(
          ShortExactSeq::make(rad.inclusion, layer.projection));
    }
    if (!is_projective(m)) {
      auto cov = projective_cover(m);
      auto om = kernel(cov.epi);
      sequences_.push_back(ShortExactSeq::make(om.inclusion, cov.epi));
    }
  }
}

const std::vector<Matrix>& ProbeFamily::morphisms(std::size_t i,
                                                  std::size_t j) const {
  auto key = std::make_pair(i, j);
  auto it = hom_cache_.find(key);
  if (it != hom_cache_.end()) return it->second;
  auto basis = hom_space(objects_.at(i), objects_.at(j));
  return hom_cache_.emplace(key, std::move(basis)).first->second;
}

std::size_t ProbeFamily::hom_dim_cached(std::size_t i, std::size_t j) const {
  return morphisms(i, j).size();
}

void ProbeFamily::add_object(const ModulePtr& m) { objects_.push_back(m); }
void ProbeFamily::add_sequence(const ShortExactSeq& s) {
  sequences_.push_back(s);
}

ProbeFamilyPtr make_probe_family(const AlgebraPtr& a, FieldTag tag) {
  if (!a) {
    auto fam = std::make_shared<ProbeFamily>(a);
    fam->add_object(Module::zero(nullptr, tag));
    return fam;
  }
  // families are expensive to build and pure in the algebra: share them
  static std::map<const Algebra*,
                  std::pair<std::weak_ptr<const Algebra>, ProbeFamilyPtr>>
      cache;
  auto it = cache.find(a.get());
  if (it != cache.end() && !it->second.first.expired())
    return it->second.second;
  auto fam = std::make_shared<ProbeFamily>(a);
  cache[a.get()] = {a, fam};
  return fam;
}

}  // namespace serrec
