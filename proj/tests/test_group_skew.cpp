#include <gtest/gtest.h>

#include "eqrec/group_action.hpp"
#include "eqrec/homology.hpp"
#include "eqrec/skew_group.hpp"
#include "fixtures.hpp"
#include "test_util.hpp"

using namespace eqrec;

namespace {

const Field Q = Field::rationals();

// Dimension of the centre, from the commutator equations z b_j = b_j z.
std::size_t center_dim(const Algebra& a) {
  const std::size_t n = a.dim();
  Matrix eqs(n * n, n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i) {
      Vector c = a.basis_product(i, j) - a.basis_product(j, i);
      for (std::size_t k = 0; k < n; ++k) eqs(j * n + k, i) = c[k];
    }
  return n - rank(eqs);
}

std::vector<GroupAction> actions(const Field& f) {
  return {GroupAction(ground_field_algebra(f), {Matrix::identity(1, f)}),
          fixtures::sign_action(f, 2),
          fixtures::sign_action(f, 3),
          fixtures::arrow_sign_action(fixtures::a2_quiver(f), 0),
          fixtures::arrow_sign_action(fixtures::a3_quiver(f), 1),
          fixtures::arrow_sign_action(fixtures::nakayama(f), 0),
          GroupAction(fixtures::split_semisimple(f, 3), {fixtures::permutation(f, {1, 2, 0})}),
          fixtures::symmetric_action(f)};
}

}  // namespace

TEST(GroupAction, TrivialGroup) {
  Algebra a = truncated_polynomial_algebra(Q, 2);
  GroupAction act(a, {Matrix::identity(2, Q)});
  EXPECT_EQ(act.order(), 1u);
  EXPECT_EQ(act.table(), (std::vector<std::vector<std::size_t>>{{0}}));
  EXPECT_EQ(act.label(0), "id");
}

TEST(GroupAction, SignOnDualNumbers) {
  GroupAction act = fixtures::sign_action(Q, 2);
  EXPECT_EQ(act.order(), 2u);
  EXPECT_EQ(act.apply(0, Vector{3, 5}), (Vector{3, -5}));
  EXPECT_EQ(act.inverse(0), 0u);
  EXPECT_EQ(act.compose(0, 0), act.identity());
}

TEST(GroupAction, ShiftIsNotAnAutomorphism) {
  // x -> x + 1 does not square to zero.
  Algebra a = truncated_polynomial_algebra(Q, 2);
  EXPECT_THROW(GroupAction(a, {testutil::mat({{1, 1}, {0, 1}})}), NotAutomorphism);
  EXPECT_THROW(GroupAction(a, {testutil::mat({{1, 0}, {0, 0}})}), NotAutomorphism);
}

TEST(GroupAction, ClosureAndCap) {
  GroupAction s3 = fixtures::symmetric_action(Q);
  EXPECT_EQ(s3.order(), 6u);
  EXPECT_THROW(GroupAction(fixtures::split_semisimple(Q, 3), {fixtures::permutation(Q, {1, 0, 2}),
                                                              fixtures::permutation(Q, {0, 2, 1})},
                           {}, 4),
               ClosureCapExceeded);
}

TEST(GroupAction, WithTableRejectsWrongTable) {
  GroupAction act = fixtures::sign_action(Q, 2);
  std::vector<Matrix> ms = {act.matrix(0), act.matrix(1)};
  EXPECT_THROW(GroupAction::with_table(act.algebra(), ms, {{0, 1}, {1, 0}}), NotClosed);
  EXPECT_THROW(GroupAction::with_table(act.algebra(), ms, {{1, 0}}), InvalidGroupTable);
  EXPECT_NO_THROW(GroupAction::with_table(act.algebra(), ms, act.table()));
  std::vector<Matrix> ids(2, Matrix::identity(2, Q));
  EXPECT_THROW(GroupAction::with_table(act.algebra(), ids, {{1, 1}, {1, 1}}), InvalidGroupTable);
}

TEST(GroupAction, OrderInvertible) {
  Field f2 = Field::prime(2);
  GroupAction c2(fixtures::split_semisimple(f2, 2), {fixtures::permutation(f2, {1, 0})});
  EXPECT_FALSE(order_invertible(c2));
  EXPECT_THROW(require_order_invertible(c2), OrderNotInvertible);
  GroupAction c3(fixtures::split_semisimple(f2, 3), {fixtures::permutation(f2, {1, 2, 0})});
  EXPECT_EQ(c3.order(), 3u);
  EXPECT_TRUE(order_invertible(c3));
}

TEST(GroupAction, SwapMovesCornerIdempotent) {
  GroupAction swap(fixtures::split_semisimple(Q, 2), {fixtures::permutation(Q, {1, 0})});
  EXPECT_FALSE(is_invariant_idempotent(swap, Vector{1, 0}));
  EXPECT_THROW(require_invariant_idempotent(swap, Vector{1, 0}), NotInvariant);
  EXPECT_TRUE(is_invariant_idempotent(swap, Vector{1, 1}));
  EXPECT_THROW(is_invariant_idempotent(swap, Vector{2, 0}), NotIdempotent);
}

TEST(GroupAction, RightActionLaw) {
  for (const Field& f : {Q, Field::prime(101)})
    for (const auto& act : actions(f)) {
      std::mt19937_64 rng(7);
      Vector a = detail::random_combination(act.algebra().dim(), rng, f);
      for (std::size_t g = 0; g < act.order(); ++g)
        for (std::size_t h = 0; h < act.order(); ++h)
          EXPECT_EQ(act.apply(g, act.apply(h, a)), act.apply(act.table()[h][g], a));
    }
}

TEST(GroupAction, TwistLaw) {
  for (const auto& act : actions(Q)) {
    RightModule m = regular_module(act.algebra());
    for (std::size_t g = 0; g < act.order(); ++g) {
      EXPECT_NO_THROW(twist_module(m, g, act).check_axioms());
      for (std::size_t h = 0; h < act.order(); ++h) {
        RightModule lhs = twist_module(twist_module(m, h, act), g, act);
        RightModule rhs = twist_module(m, act.table()[h][g], act);
        EXPECT_EQ(lhs.actions(), rhs.actions());
      }
    }
    EXPECT_EQ(twist_module(m, act.identity(), act).actions(), m.actions());
  }
}

TEST(GroupAction, FixedSubalgebraIsClosed) {
  for (const auto& act : actions(Q)) {
    Subspace fixed = fixed_subalgebra(act);
    EXPECT_TRUE(fixed.contains(act.algebra().unit()));
    for (const auto& x : fixed.basis())
      for (const auto& y : fixed.basis()) EXPECT_TRUE(fixed.contains(act.algebra().multiply(x, y)));
  }
  EXPECT_EQ(fixed_subalgebra(fixtures::sign_action(Q, 3)).dim(), 2u);
  EXPECT_EQ(fixed_subalgebra(fixtures::symmetric_action(Q)).dim(), 1u);
}

TEST(SkewGroup, TrivialGroupGivesBase) {
  for (const auto& a : fixtures::base_algebras(Q)) {
    GroupAction act(a, {Matrix::identity(a.dim(), Q)});
    SkewAlgebra s = skew_group_algebra(a, act);
    EXPECT_TRUE(is_algebra_isomorphism(a, s.total, s.embed_base()));
  }
}

TEST(SkewGroup, GroupAlgebraOfC2) {
  // Closure would collapse two identity matrices, so the table is given.
  GroupAction c2 = GroupAction::with_table(ground_field_algebra(Q), {Matrix::identity(1, Q), Matrix::identity(1, Q)},
                                           {{0, 1}, {1, 0}}, {"id", "g"});
  SkewAlgebra s = skew_group_algebra(ground_field_algebra(Q), c2);
  EXPECT_EQ(s.total.dim(), 2u);
  Scalar half = Q.parse("1/2");
  Vector plus{half, half}, minus{half, -half};
  EXPECT_TRUE(s.total.is_idempotent(plus));
  EXPECT_TRUE(s.total.is_idempotent(minus));
  EXPECT_TRUE(is_zero(s.total.multiply(plus, minus)));
  EXPECT_EQ(plus + minus, s.total.unit());
  EXPECT_EQ(jacobson_radical(s.total).dim(), 0u);
}

TEST(SkewGroup, TrivialActionCommutes) {
  // With sigma trivial, r (x) 1 and 1 (x) g commute.
  Algebra a = fixtures::a2_quiver(Q).algebra;
  std::vector<Matrix> ms = {Matrix::identity(3, Q), Matrix::identity(3, Q)};
  GroupAction c2 = GroupAction::with_table(a, ms, {{0, 1}, {1, 0}});
  SkewAlgebra s = skew_group_algebra(a, c2);
  for (std::size_t i = 0; i < a.dim(); ++i) {
    Vector r = s.lift(a.basis_vector(i), 0), g = s.lift(a.unit(), 1);
    EXPECT_EQ(s.total.multiply(r, g), s.total.multiply(g, r));
  }
}

TEST(SkewGroup, DualNumbersWithSign) {
  SkewAlgebra s = skew_group_algebra(truncated_polynomial_algebra(Q, 2), fixtures::sign_action(Q, 2));
  EXPECT_EQ(s.total.dim(), 4u);
  EXPECT_EQ(jacobson_radical(s.total).dim(), 2u);
  // g x = -x g
  Vector x = s.lift(Vector{0, 1}, s.action.identity()), g = s.lift(Vector{1, 0}, 0);
  EXPECT_EQ(s.total.multiply(g, x), Scalar(-1) * s.total.multiply(x, g));
  EXPECT_EQ(center_dim(s.total), 1u);
}

TEST(SkewGroup, NonAbelianPermutationAction) {
  // k^3 with S_3 permuting points is M_3(k) x M_3(k).
  SkewAlgebra s = skew_group_algebra(fixtures::split_semisimple(Q, 3), fixtures::symmetric_action(Q));
  EXPECT_EQ(s.total.dim(), 18u);
  EXPECT_EQ(jacobson_radical(s.total).dim(), 0u);
  EXPECT_EQ(center_dim(s.total), 2u);
}

TEST(SkewGroup, DimensionsAndRadical) {
  for (const Field& f : {Q, Field::prime(101)})
    for (const auto& act : actions(f)) {
      SkewAlgebra s = skew_group_algebra(act.algebra(), act);
      EXPECT_EQ(s.total.dim(), act.order() * act.algebra().dim());
      EXPECT_EQ(jacobson_radical(s.total).dim(), act.order() * jacobson_radical(act.algebra()).dim());
      EXPECT_TRUE(is_algebra_homomorphism(act.algebra(), s.total, s.embed_base()));
    }
}

TEST(SkewGroup, LiftIdempotent) {
  SkewAlgebra s = skew_group_algebra(fixtures::a2_quiver(Q).algebra, fixtures::arrow_sign_action(fixtures::a2_quiver(Q), 0));
  Vector e = fixtures::a2_quiver(Q).vertex_idempotents[1];
  Vector lifted = lift_idempotent(s, e);
  EXPECT_EQ(s.component(lifted, s.action.identity()), e);
  GroupAction swap(fixtures::split_semisimple(Q, 2), {fixtures::permutation(Q, {1, 0})});
  SkewAlgebra t = skew_group_algebra(swap.algebra(), swap);
  EXPECT_THROW(lift_idempotent(t, Vector{1, 0}), NotInvariant);
}

TEST(Linearization, RegularAndRestrict) {
  for (const auto& act : actions(Q)) {
    SkewAlgebra s = skew_group_algebra(act.algebra(), act);
    Linearization l = regular_linearization(s);
    RightModule m = equivariant_module(s, l);
    EXPECT_EQ(m.dim(), act.algebra().dim());
    EXPECT_EQ(restrict(s, m).actions(), l.module.actions());
  }
}

TEST(Linearization, Violations) {
  SkewAlgebra s = skew_group_algebra(truncated_polynomial_algebra(Q, 2), fixtures::sign_action(Q, 2));
  RightModule reg = regular_module(s.base);
  Linearization doubled{reg, {Scalar(2) * Matrix::identity(2, Q), Matrix::identity(2, Q)}};
  if (s.action.identity() == 0) std::swap(doubled.maps[0], doubled.maps[1]);
  EXPECT_THROW(validate_linearization(s, doubled), CocycleViolation);
  Linearization naive{reg, {Matrix::identity(2, Q), Matrix::identity(2, Q)}};
  EXPECT_THROW(validate_linearization(s, naive), CompatibilityViolation);
  Linearization short_list{reg, {Matrix::identity(2, Q)}};
  EXPECT_THROW(validate_linearization(s, short_list), UsageError);
}

TEST(Linearization, SignCharacterOnSimple) {
  SkewAlgebra s = skew_group_algebra(truncated_polynomial_algebra(Q, 2), fixtures::sign_action(Q, 2));
  RightModule simple = top_of_algebra(s.base);
  std::vector<Scalar> chi(2, Q.one());
  chi[0] = -1;
  RightModule m = equivariant_module(s, character_linearization(s, simple, chi));
  EXPECT_EQ(m.action_of(s.lift(Vector{1, 0}, 0)), testutil::mat({{-1}}));
  // The two characters give non-isomorphic simples.
  RightModule triv = equivariant_module(s, character_linearization(s, simple, {Q.one(), Q.one()}));
  EXPECT_FALSE(find_isomorphism(m, triv).has_value());
}

TEST(Induce, DimensionAndRestriction) {
  for (const auto& act : actions(Q)) {
    SkewAlgebra s = skew_group_algebra(act.algebra(), act);
    for (const auto& m : {regular_module(s.base), top_of_algebra(s.base)}) {
      RightModule ind = induce(s, m);
      EXPECT_NO_THROW(ind.check_axioms());
      EXPECT_EQ(ind.dim(), act.order() * m.dim());
      RightModule res = restrict(s, ind);
      const std::size_t d = m.dim();
      for (std::size_t g = 0; g < act.order(); ++g) {
        RightModule tw = twist_module(m, act.inverse(g), act);
        for (std::size_t i = 0; i < s.base.dim(); ++i) {
          EXPECT_EQ(res.action(i).block(g * d, g * d, d, d), tw.action(i));
          for (std::size_t h = 0; h < act.order(); ++h)
            if (h != g) {
              EXPECT_TRUE(res.action(i).block(g * d, h * d, d, d).is_zero());
            }
        }
      }
    }
  }
}

TEST(Induce, RegularInducesRegular) {
  for (const auto& act : actions(Q)) {
    SkewAlgebra s = skew_group_algebra(act.algebra(), act);
    EXPECT_TRUE(find_isomorphism(induce(s, regular_module(s.base)), regular_module(s.total)).has_value());
  }
}

TEST(Induce, PreservesProjectiveDimension) {
  for (const auto& act : actions(Q)) {
    SkewAlgebra s = skew_group_algebra(act.algebra(), act);
    RightModule t = top_of_algebra(s.base);
    EXPECT_EQ(projective_dimension(induce(s, t), 4), projective_dimension(t, 4));
  }
}

TEST(Linearization, ProjectivityTransfers) {
  for (const auto& act : actions(Q)) {
    SkewAlgebra s = skew_group_algebra(act.algebra(), act);
    Linearization reg = regular_linearization(s);
    EXPECT_TRUE(is_projective(equivariant_module(s, reg)));
    RightModule t = top_of_algebra(s.base);
    Linearization tl{t, {}};
    for (std::size_t g = 0; g < act.order(); ++g) tl.maps.push_back(Matrix::identity(t.dim(), Q));
    bool linearizable = true;
    try {
      validate_linearization(s, tl);
    } catch (const CompatibilityViolation&) {
      linearizable = false;
    }
    if (linearizable) {
      EXPECT_EQ(is_projective(equivariant_module(s, tl)), is_projective(t));
    }
  }
}

TEST(CornerCompat, Examples) {
  for (const auto& act : actions(Q)) {
    SkewAlgebra s = skew_group_algebra(act.algebra(), act);
    CheckReport rep = corner_compat_check(s, act.algebra().unit());
    EXPECT_TRUE(rep.passed()) << rep.to_json().dump();
    EXPECT_EQ(rep.measurements["dim_e1_RG_e1"], s.total.dim());
  }
  auto a3 = fixtures::a3_quiver(Q);
  SkewAlgebra s = skew_group_algebra(a3.algebra, fixtures::arrow_sign_action(a3, 1));
  for (std::size_t v = 0; v < 3; ++v) {
    Vector e = a3.vertex_idempotents[v];
    if (v != 1) e = e + a3.vertex_idempotents[1];
    CheckReport rep = corner_compat_check(s, e, "a3");
    EXPECT_TRUE(rep.passed()) << rep.to_json().dump();
    EXPECT_EQ(rep.measurements["expected_dim"], rep.measurements["dim_e1_RG_e1"]);
  }
}
