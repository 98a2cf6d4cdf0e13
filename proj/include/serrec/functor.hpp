#pragma once

#include <functional>

#include "serrec/probes.hpp"

namespace serrec {

/// A category in the system: mod A for an algebra, or the zero category.
struct Cat {
  AlgebraPtr alg;  // null = zero category
  FieldTag tag;
  bool is_zero() const { return alg == nullptr; }
  bool operator==(const Cat& o) const {
    return alg == o.alg && tag == o.tag;
  }
};

/// Functor in bimodule normal form.
///   TensorForm(b : (C,A))  =  - (x)_C b   : mod C -> mod A
///   HomForm(b : (C,A))     =  Hom_A(b, -) : mod A -> mod C
/// ZeroFunctor covers the degenerate categories; Composite is an opaque
/// pointwise composite used only inside verification batteries.
class FunctorExpr {
 public:
  enum class Kind { TensorForm, HomForm, ZeroFunctor, Composite };

  /// Default: the zero endofunctor of the zero category.
  FunctorExpr() = default;

  static FunctorExpr tensor(BimodulePtr b);
  static FunctorExpr hom(BimodulePtr b);
  static FunctorExpr zero_functor(Cat src, Cat tgt);
  /// Identity of mod A: tensor with the regular bimodule.
  static FunctorExpr identity(const AlgebraPtr& a);

  Kind kind() const { return kind_; }
  const BimodulePtr& bimod() const { return bimod_; }
  const Cat& src() const { return src_; }
  const Cat& tgt() const { return tgt_; }
  const std::vector<FunctorExpr>& factors() const { return factors_; }

  /// Compact description (kind + bimodule dimension signature) for reports.
  std::string signature() const;

 private:
  Kind kind_ = Kind::ZeroFunctor;
  BimodulePtr bimod_;
  Cat src_, tgt_;
  std::vector<FunctorExpr> factors_;
  friend FunctorExpr compose(const FunctorExpr&, const FunctorExpr&);
};

ModulePtr eval_obj(const FunctorExpr& f, const ModulePtr& m);
Morphism eval_mor(const FunctorExpr& f, const Morphism& g);

/// Composite g o f (f applied first).  Tensor/Tensor and Hom/Hom pairs are
/// normalized through the balanced tensor of bimodules; mixed pairs yield an
/// opaque Composite.
FunctorExpr compose(const FunctorExpr& g, const FunctorExpr& f);

struct NatTransf {
  FunctorExpr from, to;
  std::function<Morphism(const ModulePtr&)> component;
  bool probed_only = false;  // objectwise comparison, no closed form
};

// ---------------------------------------------------------------------------
// Bimodule calculus

/// bf (x)_Y bg for bf : (X,Y) and bg : (Y,Z); result (X,Z).
BimodulePtr balanced_tensor(const BimodulePtr& bf, const BimodulePtr& bg);

/// Right dual Hom_A(b, A) of b : (C,A), an (A,C)-bimodule.  For b projective
/// as a right A-module, HomForm(b) = TensorForm(right_dual(b)).
BimodulePtr right_dual(const BimodulePtr& b);

/// Left dual Hom_{C-left}(b, C) of b : (C,A), an (A,C)-bimodule.  For b
/// projective as a left C-module, TensorForm(b) = HomForm(left_dual(b)).
BimodulePtr left_dual(const BimodulePtr& b);

// ---------------------------------------------------------------------------
// Adjunctions

/// Adjoint pair F -| G presented through a canonical carrier bimodule:
/// F = TensorForm(carrier) and G = HomForm(carrier) up to the stored natural
/// isomorphisms (null component = literal identity of normal forms).
struct Adjunction {
  FunctorExpr F, G;
  BimodulePtr carrier;  // null only for zero-category adjunctions
  std::function<Morphism(const ModulePtr&)> f_conv;  // F(X) -> X (x) carrier
  std::function<Morphism(const ModulePtr&)> g_conv;  // G(Y) -> Hom(carrier, Y)
};

Morphism adjunction_unit(const Adjunction& adj, const ModulePtr& x);
Morphism adjunction_counit(const Adjunction& adj, const ModulePtr& y);

struct CertificationReport {
  std::size_t triangles_checked = 0;
  std::size_t hom_pairs_checked = 0;
  std::size_t naturality_checked = 0;
};

/// Hard verification of an adjunction: both triangle identities on every
/// probe, Hom-dimension bijections on all probe pairs, and naturality of the
/// conversion isomorphisms on the probe sequences.  Throws
/// CertificationFailed on any violation.
CertificationReport certify_adjunction(const Adjunction& adj,
                                       const ProbeFamily& src_probes,
                                       const ProbeFamily& tgt_probes);

// ---------------------------------------------------------------------------
// Exactness and adjoint existence

struct ExactnessReport {
  bool exact = false;
  std::string criterion;  // the projectivity statement that decided it
  std::optional<ShortExactSeq> witness;  // a probe sequence the image breaks
  std::string failure;                   // which end fails
};

/// TensorForm(b) is exact iff b is projective as a left module over its left
/// algebra; HomForm(b) iff b is projective as a right module (flat =
/// projective at finite dimension).  When not exact, a witness sequence whose
/// image fails exactness is attached.
ExactnessReport is_exact(const FunctorExpr& f);

/// right_adjoint(Tensor(b)) = Hom(b) always; right_adjoint(Hom(b)) exists iff
/// b is right-projective and is Hom(right_dual(b)).  Dually for left
/// adjoints.  nullopt = the adjoint does not exist (the functor is not
/// exact); the caller can obtain the witness from is_exact.
std::optional<Adjunction> right_adjoint(const FunctorExpr& f);
std::optional<Adjunction> left_adjoint(const FunctorExpr& f);

// ---------------------------------------------------------------------------
// Full faithfulness and natural isomorphism

enum class Verdict { CertifiedTrue, ProbedTrue, False };

struct FFReport {
  Verdict verdict = Verdict::False;
  std::string detail;
};

/// Probe-based full-faithfulness: Hom(X, Y) vs Hom(FX, FY) dimensions plus
/// unit/counit isomorphism when an adjoint exists.  Structural certificates
/// (restriction functors, corner embeddings) are granted by the construction
/// sites in the recollement layer.
FFReport is_fully_faithful(const FunctorExpr& f, const ProbeFamily& src_probes,
                           const ProbeFamily& tgt_probes);

/// Natural isomorphism between two functor expressions with the same source
/// and target.  Tensor/Tensor and Hom/Hom: solved as an invertible bimodule
/// map; mixed forms are converted through duals when projectivity permits,
/// otherwise compared objectwise on probes (probed_only result).
std::optional<NatTransf> natural_iso(const FunctorExpr& f,
                                     const FunctorExpr& g,
                                     const ProbeFamily& src_probes);

/// Verifies naturality of a transformation on all probe morphisms.
bool naturality_check(const NatTransf& t, const ProbeFamily& src_probes);

}  // namespace serrec
