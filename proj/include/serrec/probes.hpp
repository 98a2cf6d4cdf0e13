#pragma once

#include <map>
#include <memory>

#include "serrec/module.hpp"

namespace serrec {

/// The finite generating family of test modules on which universally
/// quantified statements are verified when no exact criterion applies:
/// all projectives eps_i A, all simples, the radical powers and layers of the
/// projectives, the regular module, and all injectives.  Probe short exact
/// sequences: the radical sequence of each probe and the cover sequence of
/// each non-projective probe.
class ProbeFamily {
 public:
  explicit ProbeFamily(AlgebraPtr a);

  const AlgebraPtr& algebra() const { return alg_; }
  const std::vector<ModulePtr>& objects() const { return objects_; }
  const std::vector<ModulePtr>& simple_modules() const { return simples_; }
  const std::vector<ModulePtr>& projectives() const { return projectives_; }
  const std::vector<ShortExactSeq>& sequences() const { return sequences_; }

  /// Hom basis between probe objects, cached.
  const std::vector<Matrix>& morphisms(std::size_t i, std::size_t j) const;
  std::size_t hom_dim_cached(std::size_t i, std::size_t j) const;

  /// Appends extra probes (e.g. non-exactness witness terms).
  void add_object(const ModulePtr& m);
  void add_sequence(const ShortExactSeq& s);

 private:
  AlgebraPtr alg_;
  std::vector<ModulePtr> objects_;
  std::vector<ModulePtr> simples_;
  std::vector<ModulePtr> projectives_;
  std::vector<ShortExactSeq> sequences_;
  mutable std::map<std::pair<std::size_t, std::size_t>, std::vector<Matrix>>
      hom_cache_;
};

using ProbeFamilyPtr = std::shared_ptr<ProbeFamily>;

/// Builds the family for an algebra; a null pointer (zero category) yields a
/// family with a single zero object.
ProbeFamilyPtr make_probe_family(const AlgebraPtr& a, FieldTag tag);

}  // namespace serrec
