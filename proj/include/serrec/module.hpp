#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "serrec/algebra.hpp"

namespace serrec {

/// Seed for all randomized searches (module/functor isomorphism hunting).
/// Fixed default 0; every search derives its own engine from this value, so
/// results are reproducible regardless of call order.
void set_global_seed(std::uint64_t seed);
std::uint64_t global_seed();

class Module;
using ModulePtr = std::shared_ptr<const Module>;

/// Finite-dimensional right module: row vectors of length dim, with
///   v . a  =  v * act(a).
/// act is a unital algebra homomorphism into matrices; construction
/// re-verifies this on all basis pairs.  A null algebra pointer models the
/// zero category, whose only module is 0.
class Module {
 public:
  static ModulePtr make(AlgebraPtr alg, std::vector<Matrix> actions,
                        std::string name = "M");
  static ModulePtr zero(AlgebraPtr alg, FieldTag tag);
  /// The regular right module A_A.
  static ModulePtr regular(const AlgebraPtr& alg);

  const AlgebraPtr& algebra() const { return alg_; }
  bool zero_category() const { return alg_ == nullptr; }
  std::size_t dim() const { return dim_; }
  const FieldTag& tag() const { return tag_; }
  const std::string& name() const { return name_; }
  const Matrix& act(std::size_t i) const { return act_[i]; }
  Matrix act_elem(const Matrix& x) const;

  /// Idempotent-adapted basis: M = (+)_v M eps_v.  Morphism solving works
  /// blockwise in these coordinates.  Lazy; callers are single-threaded.
  struct Blocks {
    Matrix to_adapted;        // V: old coords row * V = adapted coords? no:
                              // adapted = old * V with U * V = id, old = adapted * U
    Matrix from_adapted;      // U: rows are the adapted basis vectors
    std::vector<std::size_t> offset, size;      // per idempotent block
    std::vector<Matrix> rad_gen_adapted;        // adapted action per radical gen
  };
  const Blocks& blocks() const;

 private:
  Module() = default;
  AlgebraPtr alg_;
  std::size_t dim_ = 0;
  FieldTag tag_;
  std::string name_;
  std::vector<Matrix> act_;
  mutable std::shared_ptr<const Blocks> blocks_;
};

/// Module map source -> target: v |-> v * mat.  Construction verifies the
/// intertwining relation act_src(g) * mat = mat * act_tgt(g) on generators.
class Morphism {
 public:
  Morphism(ModulePtr src, ModulePtr tgt, Matrix mat);
  static Morphism identity(const ModulePtr& m);
  static Morphism zero(const ModulePtr& src, const ModulePtr& tgt);

  const ModulePtr& source() const { return src_; }
  const ModulePtr& target() const { return tgt_; }
  const Matrix& mat() const { return mat_; }

  /// Composition in diagram order: (f.then(g))(v) = g(f(v)).
  Morphism then(const Morphism& g) const;
  bool is_injective() const;
  bool is_surjective() const;
  bool is_iso() const;
  std::optional<Morphism> inverse() const;

 private:
  ModulePtr src_, tgt_;
  Matrix mat_;
};

/// Short exact sequence 0 -> sub -> mid -> quot -> 0; verified on build.
struct ShortExactSeq {
  Morphism mono;
  Morphism epi;
  static ShortExactSeq make(Morphism mono, Morphism epi);
};

struct SubmoduleResult {
  ModulePtr module;
  Morphism inclusion;
};
struct QuotientModuleResult {
  ModulePtr module;
  Morphism projection;
};

/// Submodule spanned by the given rows (must be closed under the action).
SubmoduleResult submodule(const ModulePtr& m, const Matrix& spanning_rows);
QuotientModuleResult quotient_module(const ModulePtr& m,
                                     const Matrix& spanning_rows);

SubmoduleResult kernel(const Morphism& f);
QuotientModuleResult cokernel(const Morphism& f);
struct ImageResult {
  ModulePtr module;
  Morphism inclusion;   // image -> target
  Morphism projection;  // source -> image
};
ImageResult image(const Morphism& f);

/// Basis of the space of module maps m -> n.
std::vector<Matrix> hom_space(const ModulePtr& m, const ModulePtr& n);
std::size_t hom_dim(const ModulePtr& m, const ModulePtr& n);

/// M * rad(A) as a submodule.
SubmoduleResult radical_submodule(const ModulePtr& m);

/// One simple module per distinguished idempotent: S_i = top of eps_i A.
/// Verified: nonzero, killed by the radical, End = k, supported exactly on
/// eps_i.  Fails with NotSimple outside the split basic setting.
std::vector<ModulePtr> simples(const AlgebraPtr& a);

/// Multiset of composition factors as multiplicity counts per simple index;
/// computed from the radical filtration, with dimension bookkeeping checked.
std::vector<std::size_t> composition_factors(const ModulePtr& m);

struct TensorResult {
  ModulePtr module;        // m (x)_C b as a right module over b's right algebra
  Matrix surjection;       // (dim m * dim b) x dim result, basis (i,k) major
};
/// m (x)_C b for m a right C-module and b a (C, A)-bimodule.
TensorResult tensor_over(const ModulePtr& m, const BimodulePtr& b);

struct HomResult {
  ModulePtr module;            // Hom_A(b, m) as a right module over b's left algebra
  std::vector<Matrix> basis;   // intertwiner matrices dim(b) x dim(m)
};
/// Hom_A(b, m) for b a (C, A)-bimodule and m a right A-module; right C-action
/// (f . c)(x) = f(c x).
HomResult hom_module(const BimodulePtr& b, const ModulePtr& m);

struct CoverResult {
  ModulePtr cover;
  Morphism epi;
};
CoverResult projective_cover(const ModulePtr& m);
bool is_projective(const ModulePtr& m);

/// Injectives as duals of the left projectives A eps_i (via the opposite
/// algebra), one per distinguished idempotent.
std::vector<ModulePtr> injectives(const AlgebraPtr& a);

struct DirectSumResult {
  ModulePtr module;
  Morphism inj1, inj2;   // summand -> sum
  Morphism proj1, proj2; // sum -> summand
};
DirectSumResult direct_sum(const ModulePtr& m, const ModulePtr& n);

/// Invertible element of the span of the given square matrices: single basis
/// elements first, then seeded random combinations over Q (20 tries) or a
/// small exhaustive grid over F_p.  nullopt = none found (inconclusive).
std::optional<Matrix> invertible_in_span(const std::vector<Matrix>& basis);

/// Invertible intertwiner search built on invertible_in_span.
std::optional<Morphism> is_isomorphic(const ModulePtr& m, const ModulePtr& n);

/// Ext^1(m, n) via a projective presentation: dimension plus representative
/// cocycles (maps Omega -> n spanning a complement of the restrictions).
struct Ext1Result {
  std::size_t dim = 0;
  ModulePtr omega;
  Morphism omega_inclusion;  // Omega -> P0
  Morphism cover_epi;        // P0 -> m
  std::vector<Matrix> cocycles;  // dim(Omega) x dim(n) matrices
};
Ext1Result ext1(const ModulePtr& m, const ModulePtr& n);
std::size_t ext1_dim(const ModulePtr& m, const ModulePtr& n);
/// Realizes a cocycle as an extension 0 -> n -> E -> m -> 0.
ShortExactSeq extension_from_cocycle(const Ext1Result& e, const ModulePtr& n,
                                     const Matrix& cocycle);

/// Pulls a module over b back along an algebra isomorphism T: a -> b.
ModulePtr transport_module(const ModulePtr& m, const AlgebraPtr& a,
                           const Matrix& iso);

/// b as a plain right module over its right algebra.
ModulePtr bimodule_right_module(const BimodulePtr& b);
/// Same, memoized per bimodule so the module's block cache is reused.
ModulePtr bimodule_right_module_cached(const BimodulePtr& b);
/// b as a right module over op(left algebra) (i.e. b as a left module).
ModulePtr bimodule_left_module(const BimodulePtr& b);

}  // namespace serrec
