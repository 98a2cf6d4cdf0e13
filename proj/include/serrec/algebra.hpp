#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "serrec/matrix.hpp"

namespace serrec {

class Algebra;
using AlgebraPtr = std::shared_ptr<const Algebra>;

/// Finite-dimensional associative unital algebra given by structure constants,
/// together with a distinguished complete list of orthogonal idempotents and
/// (optionally) a basis of the Jacobson radical.
///
/// Elements are coefficient ROW vectors (1 x dim) against the stored basis.
/// For a basis element b_i, lmat(i) has row j = coeffs(b_i * b_j) and
/// rmat(i) has row j = coeffs(b_j * b_i), so that
///   coeffs(x * y) = coeffs(y) * lmat(x)   and   coeffs(y * x) = coeffs(y) * rmat(x).
///
/// Construction re-verifies associativity, the unit laws, orthogonality of the
/// idempotents and, when a radical is supplied, that it spans a nilpotent
/// two-sided ideal with semisimple quotient (trace-form check in char 0).
class Algebra : public std::enable_shared_from_this<Algebra> {
 public:
  /// mult_table[i] is lmat(i): row j = coeffs(b_i * b_j).
  static AlgebraPtr make(FieldTag field, std::vector<std::string> labels,
                         std::vector<Matrix> mult_table, Matrix unit_row,
                         Matrix idempotent_rows,
                         std::optional<Matrix> radical_rows,
                         std::string name = "A");

  std::size_t dim() const { return dim_; }
  const FieldTag& field() const { return field_; }
  const std::string& name() const { return name_; }
  const std::vector<std::string>& labels() const { return labels_; }
  std::optional<std::size_t> label_index(const std::string& label) const;

  const Matrix& unit() const { return unit_; }
  std::size_t num_idempotents() const { return idempotents_.rows(); }
  Matrix idempotent(std::size_t i) const { return idempotents_.row(i); }
  const Matrix& idempotents() const { return idempotents_; }
  Matrix idempotent_sum(const std::vector<std::size_t>& subset) const;

  bool has_radical() const { return radical_.has_value(); }
  /// Rows span the radical; throws RadicalUnavailable when absent.
  const Matrix& radical() const;

  const Matrix& lmat(std::size_t i) const { return lmat_[i]; }
  const Matrix& rmat(std::size_t i) const { return rmat_[i]; }
  /// Left/right multiplication operators of an arbitrary element.
  Matrix lmat_elem(const Matrix& x) const;
  Matrix rmat_elem(const Matrix& x) const;
  Matrix mul(const Matrix& x, const Matrix& y) const;
  bool is_idempotent(const Matrix& e) const;
  /// Writes e as a sum of distinguished idempotents, if it is one.
  std::optional<std::vector<std::size_t>> distinguished_subset(
      const Matrix& e) const;

  /// Rows that generate the algebra: the idempotents plus degree-one radical
  /// generators (all basis vectors when no radical is known).  Module
  /// intertwining needs to be checked against these only.
  const Matrix& generators() const { return generators_; }
  /// Rows spanning a complement of J^2 inside J (degree-one generators).
  const Matrix& radical_generators() const;

  /// Opposite algebra (cached).  Same labels, idempotents and radical span.
  AlgebraPtr opposite() const;

 private:
  Algebra() = default;

  std::size_t dim_ = 0;
  FieldTag field_;
  std::string name_;
  std::vector<std::string> labels_;
  std::vector<Matrix> lmat_, rmat_;
  Matrix unit_;
  Matrix idempotents_;
  std::optional<Matrix> radical_;
  Matrix rad_gens_;
  Matrix generators_;
  mutable std::shared_ptr<const Algebra> op_cache_;
};

/// A C-A-bimodule: left action of C (as an anti-homomorphism on row vectors),
/// right action of A (as a homomorphism), actions commuting elementwise:
///   c . v = v * left_act(c),   v . a = v * right_act(a).
class Bimodule {
 public:
  static std::shared_ptr<const Bimodule> make(AlgebraPtr left, AlgebraPtr right,
                                              std::vector<Matrix> left_act,
                                              std::vector<Matrix> right_act,
                                              std::string name = "B");

  const AlgebraPtr& left_algebra() const { return left_; }
  const AlgebraPtr& right_algebra() const { return right_; }
  std::size_t dim() const { return dim_; }
  const std::string& name() const { return name_; }
  const Matrix& left_act(std::size_t i) const { return left_act_[i]; }
  const Matrix& right_act(std::size_t i) const { return right_act_[i]; }
  Matrix left_act_elem(const Matrix& c) const;
  Matrix right_act_elem(const Matrix& a) const;

 private:
  Bimodule() = default;
  AlgebraPtr left_, right_;
  std::size_t dim_ = 0;
  std::string name_;
  std::vector<Matrix> left_act_, right_act_;
};

using BimodulePtr = std::shared_ptr<const Bimodule>;

/// A as an A-A-bimodule.
BimodulePtr regular_bimodule(const AlgebraPtr& a);

/// Direct sum of bimodules over the same pair of algebras.
BimodulePtr bimodule_direct_sum(const BimodulePtr& x, const BimodulePtr& y);

// ---------------------------------------------------------------------------
// Quivers and path algebras

struct Quiver {
  struct Arrow {
    std::string name;
    std::size_t src, tgt;  // 0-based vertex indices
  };
  std::vector<std::string> vertex_names;
  std::vector<Arrow> arrows;
};

/// One term of a relation: coef * (composable arrow word, left-to-right).
struct PathTerm {
  Scalar coef;
  std::vector<std::size_t> arrows;  // nonempty
};
using Relation = std::vector<PathTerm>;

/// Path algebra of the quiver modulo the two-sided ideal generated by the
/// relations.  Terms of a relation must be parallel paths of length >= 1.
/// Basis: residue paths; idempotents: trivial paths; radical: residues of
/// length >= 1.  Throws InfiniteDimensional when the residue path count
/// exceeds `cap`.
AlgebraPtr path_algebra(const Quiver& q, const std::vector<Relation>& rels,
                        FieldTag field, std::size_t cap = 10000);

/// Triangular algebra of R, S and an S-R-bimodule M: block structure with
/// products (r,s,m)(r',s',m') = (rr', ss', mr' + sm').  M = 0 degenerates to
/// the product algebra.
AlgebraPtr triangular_algebra(const AlgebraPtr& r, const AlgebraPtr& s,
                              const BimodulePtr& m);

AlgebraPtr product_algebra(const AlgebraPtr& a, const AlgebraPtr& b);

// ---------------------------------------------------------------------------
// Corner and quotient constructions

struct CornerResult {
  AlgebraPtr algebra;       // eAe
  Matrix embed;             // dim(eAe) x dim(A): basis of eAe inside A
  Matrix e_row;             // the idempotent e
  std::vector<std::size_t> subset;  // e = sum of these distinguished idempotents
};

/// eAe for e a sum of a subset of the distinguished idempotents.
CornerResult corner(const AlgebraPtr& a, const std::vector<std::size_t>& subset);
CornerResult corner(const AlgebraPtr& a, const Matrix& e);

/// Row basis of the two-sided ideal AeA (verified idempotent: AeA*AeA = AeA).
Matrix idempotent_ideal(const AlgebraPtr& a, const Matrix& e);

struct QuotientResult {
  AlgebraPtr algebra;             // A / I
  RowSpace ideal;                 // the ideal I
  std::vector<std::size_t> rep_cols;  // representative basis indices in A
  /// Surviving distinguished idempotents of A, by original index.
  std::vector<std::size_t> idempotent_origin;

  /// Class of an element of A in quotient coordinates.
  Matrix reduce(const Matrix& row) const;
  /// The chosen representative in A of a quotient basis vector.
  Matrix representative(std::size_t qi, const AlgebraPtr& a) const;
};

/// A / ideal.  Throws NotTwoSidedIdeal if the span is not an ideal and
/// DegenerateQuotient when the ideal is all of A (the zero ring is not an
/// Algebra; callers model that case as the zero category).
QuotientResult quotient_algebra(const AlgebraPtr& a, const Matrix& ideal_rows);

/// The bimodules attached to an idempotent: eA, Ae, and A/AeA on both sides.
struct RegularBimodules {
  CornerResult corner;                    // eAe
  std::optional<QuotientResult> quotient; // nullopt: AeA = A (zero category)
  BimodulePtr eA;          // (eAe, A)
  BimodulePtr Ae;          // (A, eAe)
  BimodulePtr abar_left;   // (Abar, A), null when quotient degenerate
  BimodulePtr abar_right;  // (A, Abar)
};

RegularBimodules regular_bimodules(const AlgebraPtr& a,
                                   const std::vector<std::size_t>& subset);

// ---------------------------------------------------------------------------
// Isomorphism search

/// Searches for a unital multiplicative invertible linear map a -> b
/// (coefficient rows: x |-> x * T).  `nullopt` means no isomorphism found
/// within the search budget - inconclusive, not a proof of non-isomorphism.
/// Fast rejections: field, dimension, idempotent count, radical dimensions.
std::optional<Matrix> algebra_iso(const AlgebraPtr& a, const AlgebraPtr& b);

}  // namespace serrec
