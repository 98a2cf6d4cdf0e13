#pragma once

#include <variant>

#include "serrec/functor.hpp"

namespace serrec {

/// Membership specification of a torsion or torsionfree class.
struct IdempotentKilled {
  Matrix e;           // { M : M * AeA = 0 }
  Matrix ideal_rows;  // basis of AeA
};
struct IdempotentFull {
  Matrix e;           // { M : M * AeA = M }
  Matrix ideal_rows;
};
struct HomVanishFrom {
  std::vector<ModulePtr> tests;  // { M : Hom(t, M) = 0 for all tests }
};
struct GeneratorClosure {
  std::vector<ModulePtr> generators;  // smallest torsion class containing them
};

using ClassSpec =
    std::variant<IdempotentKilled, IdempotentFull, HomVanishFrom,
                 GeneratorClosure>;

ClassSpec killed_spec(const AlgebraPtr& a, const Matrix& e);
ClassSpec full_spec(const AlgebraPtr& a, const Matrix& e);

bool spec_contains(const AlgebraPtr& a, const ClassSpec& spec,
                   const ModulePtr& m);
std::string spec_name(const ClassSpec& spec);

struct TorsionPair {
  AlgebraPtr algebra;
  ClassSpec torsion;
  ClassSpec torsionfree;
};

/// The torsion submodule t(M) for the pair's torsion class.
SubmoduleResult torsion_submodule(const TorsionPair& tp, const ModulePtr& m);

/// 0 -> t(M) -> M -> M/t(M) -> 0, with both memberships verified
/// (NotATorsionPair when the specification fails to be a torsion pair at M).
ShortExactSeq t_decompose(const TorsionPair& tp, const ModulePtr& m);

struct GradedVerdict {
  Verdict verdict = Verdict::False;
  std::string detail;
};

/// Torsion class closed under subobjects.  Exact for idempotent-annihilator
/// specs; probed (kernels of probe morphisms) otherwise.
GradedVerdict is_hereditary(const TorsionPair& tp, const ProbeFamily& fam);
/// Torsionfree class closed under quotients.  Exact for idempotent specs.
GradedVerdict is_cohereditary(const TorsionPair& tp, const ProbeFamily& fam);

/// Hom(T, F) = 0 on probes and every probe decomposes; throws otherwise.
void verify_torsion_pair(const TorsionPair& tp, const ProbeFamily& fam);

/// The four-term sequence 0 -> B1 -> M -> C -> B2 -> 0 with C in the
/// Hom/Ext-perp of the torsion class, built through the quotient-side
/// adjunction (kernel and cokernel of the unit).
struct WeaklyLocalizingWitness {
  Morphism b1_to_m;   // B1 = t(M) -> M
  Morphism m_to_c;    // the unit component M -> j_* j^* M
  Morphism c_to_b2;   // cokernel projection
  std::size_t hom_checks = 0, ext_checks = 0;
};
WeaklyLocalizingWitness strongly_hereditary_witness(const TorsionPair& tp,
                                                    const ModulePtr& m,
                                                    const ProbeFamily& fam);

/// TTF triple at an idempotent ideal I = AeA:
/// T = { M : MI = M }, G = { M : MI = 0 }, F = G-perp.
struct TtfTriple {
  TorsionPair tg;  // (T, G)
  TorsionPair gf;  // (G, F)
};
TtfTriple ttf_triple(const AlgebraPtr& a, const Matrix& e,
                     const ProbeFamily& fam);

/// Splitting along two torsion pairs (U,V), (V,W) sharing the middle class,
/// with U closed under subobjects and W under quotients: every module is
/// M_U (+) M^V, and U = W.
struct TwoTorsionSplit {
  ShortExactSeq uv;        // 0 -> M_U -> M -> M^V -> 0
  ShortExactSeq vw;        // 0 -> M_V -> M -> M^W -> 0
  Morphism iso;            // M_U (+) M^V -> M
  bool classes_equal_on_probes = false;
};
TwoTorsionSplit two_torsion_split(const TorsionPair& up, const TorsionPair& vp,
                                  const ModulePtr& m, const ProbeFamily& fam);

}  // namespace serrec
