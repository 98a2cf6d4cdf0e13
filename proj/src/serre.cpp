#include "serrec/serre.hpp"

#include <algorithm>

namespace serrec {

SerreSubcat SerreSubcat::from_simples(const AlgebraPtr& a,
                                      const std::vector<std::size_t>& iset) {
  SerreSubcat s;
  s.ambient_ = a;
  s.simple_set_ = iset;
  std::sort(s.simple_set_.begin(), s.simple_set_.end());
  s.simple_set_.erase(
      std::unique(s.simple_set_.begin(), s.simple_set_.end()),
      s.simple_set_.end());
  for (auto i : s.simple_set_)
    if (i >= a->num_idempotents())
      throw Error(Errc::InvalidArgument, "simple index out of range");
  for (std::size_t i = 0; i < a->num_idempotents(); ++i)
    if (!std::binary_search(s.simple_set_.begin(), s.simple_set_.end(), i))
      s.complement_.push_back(i);
  s.e_ = a->idempotent_sum(s.complement_);
  if (!s.complement_.empty()) {
    s.rb_ = regular_bimodules(a, s.complement_);
    if (!s.simple_set_.empty() && !s.rb_->quotient)
      throw Error(Errc::InternalInconsistency,
                  "proper simple set with AeA = A (ambient not basic split)");
  }
  return s;
}

Cat SerreSubcat::subcategory() const {
  if (is_trivial()) return Cat{nullptr, ambient_->field()};
  if (is_whole_category()) return Cat{ambient_, ambient_->field()};
  return Cat{rb_->quotient->algebra, ambient_->field()};
}

Cat SerreSubcat::quotient_category() const {
  if (is_whole_category()) return Cat{nullptr, ambient_->field()};
  return Cat{rb_->corner.algebra, ambient_->field()};
}

FunctorExpr SerreSubcat::inclusion_functor() const {
  if (is_trivial())
    return FunctorExpr::zero_functor(subcategory(),
                                     Cat{ambient_, ambient_->field()});
  if (is_whole_category()) return FunctorExpr::identity(ambient_);
  return FunctorExpr::tensor(rb_->abar_left);
}

FunctorExpr SerreSubcat::quotient_functor() const {
  if (is_whole_category())
    return FunctorExpr::zero_functor(Cat{ambient_, ambient_->field()},
                                     quotient_category());
  return FunctorExpr::tensor(rb_->Ae);
}

bool SerreSubcat::contains(const ModulePtr& m) const {
  if (m->algebra() != ambient_)
    throw Error(Errc::AlgebraMismatch, "membership in a foreign category");
  return m->act_elem(e_).is_zero();
}

void SerreSubcat::verify(const ProbeFamily& fam) const {
  // the idempotent test and the composition-factor test agree
  for (const auto& m : fam.objects()) {
    bool by_e = contains(m);
    auto factors = composition_factors(m);
    bool by_factors = true;
    for (std::size_t i = 0; i < factors.size(); ++i)
      if (factors[i] > 0 &&
          !std::binary_search(simple_set_.begin(), simple_set_.end(), i))
        by_factors = false;
    if (by_e != by_factors)
      throw Error(Errc::InternalInconsistency,
                  "membership tests disagree at probe " + m->name());
  }
  // closure along probe sequences
  for (const auto& ses : fam.sequences()) {
    bool sub = contains(ses.mono.source());
    bool mid = contains(ses.mono.target());
    bool quo = contains(ses.epi.target());
    if (mid && (!sub || !quo))
      throw Error(Errc::InternalInconsistency,
                  "not closed under sub/quotient on a probe sequence");
    if (sub && quo && !mid)
      throw Error(Errc::InternalInconsistency,
                  "not closed under extensions on a probe sequence");
  }
  // Q is exact (criterion: Ae is left projective, a summand of A) and
  // kills the subcategory on probes
  FunctorExpr q = quotient_functor();
  auto rep = is_exact(q);
  if (!rep.exact)
    throw Error(Errc::InternalInconsistency, "quotient functor not exact");
  for (const auto& ses : fam.sequences()) {
    Morphism qm = eval_mor(q, ses.mono);
    Morphism qe = eval_mor(q, ses.epi);
    if (!qm.is_injective() || !qe.is_surjective() ||
        !(qm.mat() * qe.mat()).is_zero())
      throw Error(Errc::InternalInconsistency,
                  "quotient functor breaks a probe sequence");
  }
  for (const auto& m : fam.objects())
    if (contains(m) && eval_obj(q, m)->dim() != 0)
      throw Error(Errc::InternalInconsistency,
                  "quotient functor does not kill the subcategory");
}

}  // namespace serrec
