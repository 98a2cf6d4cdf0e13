#pragma once

#include "serrec/recollement.hpp"

namespace serrec {

/// Where and why an adjoint chain stops: the end functor, the projectivity
/// criterion that failed, and a concrete sequence its image breaks.
struct StopReason {
  std::string side;  // "inclusion" or "quotient"
  std::string end;   // "left" or "right"
  FunctorExpr at;
  std::string criterion;
  std::optional<ShortExactSeq> witness;
};

/// The type (m, -n) of a Serre subcategory of mod A, computed by extending
/// the adjoint sequences around the inclusion and the quotient functor.
/// An (m, -n) with m + n >= 4 collapses to (+infinity, -infinity); the split
/// certificate then witnesses mod A = S (+) (mod A / S).
struct TypeResult {
  bool infinite = false;
  std::size_t m = 0, n = 0;
  std::vector<FunctorExpr> f_chain;  // F_m ... F_0 = i ... F_{-n}
  std::vector<FunctorExpr> g_chain;  // G_m ... G_0 = Q ... G_{-n}
  std::vector<StopReason> stops;
  std::optional<SplitReport> split_certificate;
  std::size_t adjunctions_certified = 0;

  std::string type_string() const;
};

TypeResult classify(const SerreSubcat& s);

struct ClassifyAllRow {
  std::vector<std::size_t> simple_set;  // 0-based
  TypeResult result;
};
/// All 2^r simple sets; every row's type must lie in the seven-element list
/// and, in mod A, always has m >= 1 and n >= 1.
std::vector<ClassifyAllRow> classify_all(const AlgebraPtr& a,
                                         std::size_t cap = 12);

/// The self-dual ladder coincidence for T2-type algebras (equal corners,
/// regular connecting bimodule): i_{-2} is naturally isomorphic to j_1, and
/// the two adjoint chains around the corner Serre subcategory merge into
/// seven-term sequences, every adjacency certified.
struct SelfDualLadderReport {
  bool iso_found = false;
  std::size_t f_chain_len = 0, g_chain_len = 0;
  std::size_t adjacencies_certified = 0;
  TypeResult base;
};
SelfDualLadderReport self_dual_ladder_check(const AlgebraPtr& a);

}  // namespace serrec
