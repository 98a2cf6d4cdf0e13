#pragma once

#include "serrec/functor.hpp"

namespace serrec {

/// Serre subcategory of mod A presented by its set of simples.
/// S = { M : composition factors of M lie in simple_set }
///   = { M : M annihilates the complementary idempotent ideal }.
/// The quotient category A/S is mod eAe for e the complementary idempotent;
/// the subcategory itself is mod(A/AeA).  The degenerate cases are carried as
/// the zero category.
class SerreSubcat {
 public:
  /// I as 0-based simple indices (the CLI uses 1-based).
  static SerreSubcat from_simples(const AlgebraPtr& a,
                                  const std::vector<std::size_t>& simple_set);

  const AlgebraPtr& ambient() const { return ambient_; }
  const std::vector<std::size_t>& simple_set() const { return simple_set_; }
  const std::vector<std::size_t>& complement() const { return complement_; }
  bool is_whole_category() const { return complement_.empty(); }
  bool is_trivial() const { return simple_set_.empty(); }

  /// e = sum of the complementary idempotents (zero row when S = mod A).
  const Matrix& complement_idempotent() const { return e_; }
  /// The bimodule package at e; absent when S = mod A (e = 0).
  const std::optional<RegularBimodules>& bimodules() const { return rb_; }

  /// Category S itself: mod(A/AeA), or zero when S is trivial.
  Cat subcategory() const;
  /// Category A/S: mod eAe, or zero when S = mod A.
  Cat quotient_category() const;

  /// i : S -> mod A (restriction along A ->> A/AeA, in tensor normal form).
  FunctorExpr inclusion_functor() const;
  /// Q : mod A -> A/S (tensor with Ae).
  FunctorExpr quotient_functor() const;

  bool contains(const ModulePtr& m) const;

  /// Re-verifies the definitional properties on the probe family: the two
  /// membership tests agree, membership is closed under sub/quotient/extension
  /// along probe sequences, Q is exact on probe sequences and kills S.
  /// Throws on violation.
  void verify(const ProbeFamily& fam) const;

 private:
  AlgebraPtr ambient_;
  std::vector<std::size_t> simple_set_, complement_;
  Matrix e_;
  std::optional<RegularBimodules> rb_;
};

}  // namespace serrec
