#pragma once

// Small algebras shared by the unit tests.

#include <vector>

#include "eqrec/algebra.hpp"
#include "eqrec/group_action.hpp"
#include "eqrec/quiver.hpp"

namespace fixtures {

using namespace eqrec;

inline PathAlgebra a2_quiver(const Field& f) { return path_algebra({2, {{0, 1, "a"}}, {}, 2}, f); }

inline PathAlgebra a3_quiver(const Field& f) { return path_algebra({3, {{0, 1, "a"}, {1, 2, "b"}}, {}, 3}, f); }

/// Two-cycle a: 0 -> 1, b: 1 -> 0 modulo aba and paths of length 4.
inline PathAlgebra nakayama(const Field& f) {
  return path_algebra({2, {{0, 1, "a"}, {1, 0, "b"}}, {{{1, {0, 1, 0}}}}, 4}, f);
}

/// Two-cycle a: 0 -> 1, b: 1 -> 0 modulo ab.
inline PathAlgebra two_cycle(const Field& f) {
  return path_algebra({2, {{0, 1, "a"}, {1, 0, "b"}}, {{{1, {0, 1}}}}, 4}, f);
}

/// Upper triangular 2x2 matrices on E11, E22, E12.
inline Algebra upper_triangular(const Field& f) {
  return Algebra(f, 3, {{0, 0, 0, 1}, {1, 1, 1, 1}, {0, 2, 2, 1}, {2, 1, 2, 1}}, Vector{1, 1, 0});
}

inline std::vector<Algebra> base_algebras(const Field& f) {
  return {ground_field_algebra(f),
          truncated_polynomial_algebra(f, 2),
          truncated_polynomial_algebra(f, 3),
          a2_quiver(f).algebra,
          a3_quiver(f).algebra,
          upper_triangular(f),
          product_algebra(truncated_polynomial_algebra(f, 2), ground_field_algebra(f)),
          nakayama(f).algebra};
}

/// Diagonal automorphism scaling basis element i by s_i.
inline Matrix diagonal(const Field& f, const std::vector<long long>& s) {
  Matrix m(s.size(), s.size());
  for (std::size_t i = 0; i < s.size(); ++i) m(i, i) = f.from_int(s[i]);
  return m;
}

/// Permutation automorphism sending b_i to b_{p[i]}.
inline Matrix permutation(const Field& f, const std::vector<std::size_t>& p) {
  Matrix m(p.size(), p.size());
  for (std::size_t i = 0; i < p.size(); ++i) m(p[i], i) = f.one();
  return m;
}

/// k^n as a product of fields.
inline Algebra split_semisimple(const Field& f, std::size_t n) {
  std::vector<StructureConstant> sc;
  for (std::size_t i = 0; i < n; ++i) sc.push_back({i, i, i, 1});
  return Algebra(f, n, sc, Vector(n, f.one()));
}

/// C_2 acting on k[x]/(x^n) by x -> -x.
inline GroupAction sign_action(const Field& f, std::size_t n) {
  std::vector<long long> s;
  for (std::size_t i = 0; i < n; ++i) s.push_back(i % 2 ? -1 : 1);
  return GroupAction(truncated_polynomial_algebra(f, n), {diagonal(f, s)}, {"s"});
}

/// C_2 on a path algebra negating one arrow: a path picks up (-1)^(uses).
inline GroupAction arrow_sign_action(const PathAlgebra& pa, std::size_t arrow) {
  std::vector<long long> s;
  for (const auto& path : pa.paths) {
    long long sign = 1;
    for (std::size_t x : path)
      if (x == arrow) sign = -sign;
    s.push_back(sign);
  }
  return GroupAction(pa.algebra, {diagonal(pa.algebra.field(), s)}, {"s"});
}

/// S_3 permuting the factors of k^3.
inline GroupAction symmetric_action(const Field& f) {
  return GroupAction(split_semisimple(f, 3), {permutation(f, {1, 0, 2}), permutation(f, {0, 2, 1})}, {"t", "u"});
}

}  // namespace fixtures
