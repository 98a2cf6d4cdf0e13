#pragma once

// Shared builders for the standard example algebras used across tests.

#include "serrec/algebra.hpp"

namespace serrec::testing {

inline AlgebraPtr ground_field(FieldTag f) {
  Quiver q;
  q.vertex_names = {"1"};
  return path_algebra(q, {}, f);
}

/// Linear quiver 1 -> 2 -> ... -> n, arrows a1, a2, ...
inline AlgebraPtr linear_quiver(std::size_t n, FieldTag f) {
  Quiver q;
  for (std::size_t v = 1; v <= n; ++v)
    q.vertex_names.push_back(std::to_string(v));
  for (std::size_t v = 0; v + 1 < n; ++v)
    q.arrows.push_back({"a" + std::to_string(v + 1), v, v + 1});
  return path_algebra(q, {}, f);
}

inline AlgebraPtr kA2(FieldTag f) { return linear_quiver(2, f); }
inline AlgebraPtr kA3(FieldTag f) { return linear_quiver(3, f); }
inline AlgebraPtr kA4(FieldTag f) { return linear_quiver(4, f); }

/// k[x]/(x^2): one-vertex loop with relation x*x.
inline AlgebraPtr loop_x2(FieldTag f) {
  Quiver q;
  q.vertex_names = {"1"};
  q.arrows.push_back({"x", 0, 0});
  Relation r{PathTerm{Scalar::one(f), {0, 0}}};
  return path_algebra(q, {r}, f);
}

inline AlgebraPtr kxk(FieldTag f) {
  Quiver q;
  q.vertex_names = {"1", "2"};
  return path_algebra(q, {}, f);
}

inline AlgebraPtr kxkxk(FieldTag f) {
  Quiver q;
  q.vertex_names = {"1", "2", "3"};
  return path_algebra(q, {}, f);
}

/// T_2(k): lower triangular 2x2 matrices, built as triangular(k, k, k).
/// Distinguished idempotents: index 0 = the R corner, index 1 = the S corner.
inline AlgebraPtr t2k(FieldTag f) {
  AlgebraPtr r = ground_field(f);
  AlgebraPtr s = ground_field(f);
  std::vector<Matrix> one{Matrix::identity(1, f)};
  BimodulePtr m = Bimodule::make(s, r, one, one, "k");
  return triangular_algebra(r, s, m);
}

}  // namespace serrec::testing
