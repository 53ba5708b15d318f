#include <gtest/gtest.h>

#include "eqrec/recollement.hpp"
#include "fixtures.hpp"

using namespace eqrec;

namespace {

const Field Q = Field::rationals();

Algebra dual_times_k(const Field& f) { return product_algebra(truncated_polynomial_algebra(f, 2), ground_field_algebra(f)); }

// C_2 acting by x -> -x on the first factor of k[x]/(x^2) x k.
GroupAction dual_times_k_sign(const Field& f) {
  return GroupAction(dual_times_k(f), {fixtures::diagonal(f, {1, -1, 1})}, {"s"});
}

struct Case {
  std::string name;
  Algebra algebra;
  Vector e;
  std::optional<GroupAction> action;
};

// Every recollement of the small corpus with a vertex-sum idempotent.
std::vector<Case> cases(const Field& f) {
  std::vector<Case> out;
  auto add_vertices = [&](const std::string& name, const PathAlgebra& pa, std::optional<GroupAction> act) {
    const std::size_t n = pa.vertex_idempotents.size();
    for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
      Vector e(pa.algebra.dim(), f.zero());
      for (std::size_t v = 0; v < n; ++v)
        if (mask >> v & 1) e = e + pa.vertex_idempotents[v];
      out.push_back({name + "/" + std::to_string(mask), pa.algebra, e, act});
    }
  };
  add_vertices("a2", fixtures::a2_quiver(f), fixtures::arrow_sign_action(fixtures::a2_quiver(f), 0));
  add_vertices("a3", fixtures::a3_quiver(f), fixtures::arrow_sign_action(fixtures::a3_quiver(f), 1));
  add_vertices("nakayama", fixtures::nakayama(f), fixtures::arrow_sign_action(fixtures::nakayama(f), 0));
  add_vertices("two_cycle", fixtures::two_cycle(f), fixtures::arrow_sign_action(fixtures::two_cycle(f), 0));
  out.push_back({"dual_k/second", dual_times_k(f), Vector{0, 0, 1}, dual_times_k_sign(f)});
  out.push_back({"dual_k/first", dual_times_k(f), Vector{1, 0, 0}, dual_times_k_sign(f)});
  out.push_back({"dual/one", truncated_polynomial_algebra(f, 2), Vector{1, 0}, fixtures::sign_action(f, 2)});
  return out;
}

}  // namespace

TEST(RecollementData, Examples) {
  Algebra dual = truncated_polynomial_algebra(Q, 2);
  auto one = recollement_data(dual, dual.unit());
  EXPECT_EQ(one.quotient.algebra.dim(), 0u);
  EXPECT_EQ(one.corner.algebra.dim(), 2u);
  auto zero = recollement_data(dual, Vector{0, 0});
  EXPECT_EQ(zero.corner.algebra.dim(), 0u);
  EXPECT_EQ(zero.quotient.algebra.dim(), 2u);
  Algebra ut = fixtures::upper_triangular(Q);
  auto d = recollement_data(ut, Vector{0, 1, 0});
  EXPECT_EQ(d.corner.algebra.dim(), 1u);
  EXPECT_EQ(d.quotient.algebra.dim(), 1u);
  EXPECT_THROW(recollement_data(dual, Vector{0, 1}), NotIdempotent);
}

TEST(SingularEquivalence, Examples) {
  Algebra dual = truncated_polynomial_algebra(Q, 2);
  CheckReport trivial = singular_equivalence_criterion(recollement_data(dual, dual.unit()));
  EXPECT_EQ(trivial.verdict, Verdict::Pass);
  EXPECT_EQ(trivial.measurements["pd_top_quotient"]["value"], 0);

  Algebra ut = fixtures::upper_triangular(Q);
  CheckReport rep = singular_equivalence_criterion(recollement_data(ut, Vector{0, 1, 0}));
  EXPECT_EQ(rep.verdict, Verdict::Pass);
  EXPECT_EQ(rep.measurements["pd_top_quotient"]["outcome"], "Finite");
  EXPECT_EQ(rep.measurements["pd_top_quotient"]["value"], 1);
  EXPECT_EQ(rep.measurements["pd_Le_over_corner"]["value"], 0);

  CheckReport periodic = singular_equivalence_criterion(recollement_data(dual_times_k(Q), Vector{0, 0, 1}));
  EXPECT_EQ(periodic.verdict, Verdict::Fail);
  EXPECT_EQ(periodic.measurements["pd_top_quotient"]["outcome"], "ExceedsBound");
  EXPECT_TRUE(periodic.measurements["pd_top_quotient"].contains("periodic"));
  EXPECT_EQ(periodic.witnesses.size(), 1u);
}

TEST(SingularEquivalence, NakayamaPeriodicity) {
  auto pa = fixtures::nakayama(Q);
  CheckReport rep = singular_equivalence_criterion(recollement_data(pa.algebra, pa.vertex_idempotents[1]));
  EXPECT_EQ(rep.verdict, Verdict::Fail);
}

TEST(SingularEquivalence, InconclusiveWithoutCertificate) {
  // A cap of zero disables the periodicity search.
  CriterionOptions opt;
  opt.bound = 3;
  opt.periodicity_cap = 0;
  CheckReport rep = singular_equivalence_criterion(recollement_data(dual_times_k(Q), Vector{0, 0, 1}), opt);
  EXPECT_EQ(rep.verdict, Verdict::Inconclusive);
  EXPECT_EQ(rep.to_json()["verdict"], "Inconclusive(3)");
}

TEST(SingularEquivalence, BoundNeverFlipsDecidedVerdicts) {
  for (const auto& c : cases(Q)) {
    std::optional<Verdict> decided;
    for (std::size_t b : {1, 2, 4, 6}) {
      CriterionOptions opt;
      opt.bound = b;
      Verdict v = singular_equivalence_criterion(recollement_data(c.algebra, c.e), opt).verdict;
      if (v == Verdict::Inconclusive) continue;
      if (decided) {
        EXPECT_EQ(*decided, v) << c.name;
      }
      decided = v;
    }
  }
}

TEST(SingularEquivalence, DegenerateIdempotentsPass) {
  for (const auto& a : {fixtures::a2_quiver(Q).algebra, fixtures::a3_quiver(Q).algebra, fixtures::upper_triangular(Q)}) {
    EXPECT_EQ(singular_equivalence_criterion(recollement_data(a, a.unit())).verdict, Verdict::Pass);
    EXPECT_EQ(singular_equivalence_criterion(recollement_data(a, Vector(a.dim(), Q.zero()))).verdict, Verdict::Pass);
  }
}

TEST(EquivariantCrossCheck, Examples) {
  Algebra ut = fixtures::upper_triangular(Q);
  GroupAction trivial(ut, {Matrix::identity(3, Q)});
  CheckReport t = equivariant_cross_check(ut, Vector{0, 1, 0}, trivial);
  EXPECT_TRUE(t.passed());
  EXPECT_EQ(t.measurements["base_verdict"], "Pass");

  CheckReport f = equivariant_cross_check(dual_times_k(Q), Vector{0, 0, 1}, dual_times_k_sign(Q));
  EXPECT_TRUE(f.passed()) << f.to_json().dump();
  EXPECT_EQ(f.measurements["base_verdict"], "Fail");
  EXPECT_EQ(f.measurements["skew_verdict"], "Fail");

  GroupAction swap(fixtures::split_semisimple(Q, 2), {fixtures::permutation(Q, {1, 0})});
  EXPECT_THROW(equivariant_cross_check(swap.algebra(), Vector{1, 0}, swap), NotInvariant);
  Field f2 = Field::prime(2);
  GroupAction swap2(fixtures::split_semisimple(f2, 2), {fixtures::permutation(f2, {1, 0})});
  EXPECT_THROW(equivariant_cross_check(swap2.algebra(), Vector{1, 1}, swap2), OrderNotInvertible);
}

TEST(EquivariantCrossCheck, AgreesOnCorpus) {
  for (const Field& f : {Q, Field::prime(101)})
    for (const auto& c : cases(f)) {
      CheckReport rep = equivariant_cross_check(c.algebra, c.e, *c.action);
      EXPECT_TRUE(rep.passed()) << c.name << " " << rep.to_json().dump();
    }
}

TEST(GldimCrossCheck, Examples) {
  Algebra k = ground_field_algebra(Q);
  CheckReport a = gldim_cross_check(k, GroupAction(k, {Matrix::identity(1, Q)}));
  EXPECT_TRUE(a.passed());
  EXPECT_EQ(a.measurements["gldim_skew"]["value"], 0);
  Algebra a2 = fixtures::a2_quiver(Q).algebra;
  CheckReport b = gldim_cross_check(a2, GroupAction::with_table(a2, {Matrix::identity(3, Q), Matrix::identity(3, Q)},
                                                                {{0, 1}, {1, 0}}));
  EXPECT_TRUE(b.passed());
  EXPECT_EQ(b.measurements["gldim_base"]["value"], 1);
  CheckReport c = gldim_cross_check(truncated_polynomial_algebra(Q, 2), fixtures::sign_action(Q, 2));
  EXPECT_TRUE(c.passed());
  EXPECT_EQ(c.measurements["gldim_skew"]["outcome"], "ExceedsBound");
}

TEST(HomologicalEmbedding, UpperTriangular) {
  Algebra ut = fixtures::upper_triangular(Q);
  CheckReport rep = homological_embedding_check(ut, Vector{0, 1, 0}, std::nullopt);
  EXPECT_TRUE(rep.passed());
  for (const auto& p : rep.measurements["base"]["pairs"]) {
    EXPECT_EQ(p["quotient"][1], 0);
    EXPECT_EQ(p["middle"][1], 0);
  }
}

TEST(HomologicalEmbedding, DegreesZeroAndOneAlwaysAgree) {
  // LeL is idempotent, so Mod L/LeL is closed under extensions in Mod L.
  for (const auto& c : cases(Q)) {
    CheckReport rep = homological_embedding_check(c.algebra, c.e, c.action);
    for (const char* side : {"base", "skew"}) {
      const auto& m = rep.measurements[side]["first_mismatch"];
      if (!m.is_null()) {
        EXPECT_GE(m.get<int>(), 2) << c.name << " " << side;
      }
    }
    EXPECT_TRUE(rep.passed()) << c.name << " " << rep.to_json().dump();
  }
}

TEST(HomologicalEmbedding, RelationThroughTheCornerFailsInDegreeTwo) {
  // The relation ab runs from vertex 0 through vertex 1 and back, so
  // Ext^2(S_0, S_0) is one-dimensional over L and zero over L/L e_1 L = k.
  auto pa = fixtures::two_cycle(Q);
  CheckReport rep = homological_embedding_check(pa.algebra, pa.vertex_idempotents[1],
                                                fixtures::arrow_sign_action(pa, 0));
  EXPECT_TRUE(rep.passed()) << rep.to_json().dump();
  EXPECT_EQ(rep.measurements["base"]["first_mismatch"], 2);
  EXPECT_EQ(rep.measurements["skew"]["first_mismatch"], 2);
  EXPECT_EQ(rep.measurements["skew_quotient"]["kernel_is_LGe1LG"], true);
}

TEST(HomologicalEmbedding, RejectsModulesNotKilledByTheIdeal) {
  Algebra ut = fixtures::upper_triangular(Q);
  EmbeddingOptions opt;
  opt.modules.push_back(regular_module(ut));
  EXPECT_THROW(homological_embedding_check(ut, Vector{0, 1, 0}, std::nullopt, opt), NotAnnihilated);
}

TEST(TorTransfer, ProjectiveAndTrivialGroup) {
  auto pa = fixtures::nakayama(Q);
  SkewAlgebra s = skew_group_algebra(pa.algebra, fixtures::arrow_sign_action(pa, 0));
  Vector e = pa.vertex_idempotents[0];
  SubAlgebra corner = corner_algebra(pa.algebra, e);
  CheckReport proj = tor_vanishing_transfer(s, e, regular_module(corner.algebra));
  EXPECT_TRUE(proj.passed());
  for (std::size_t i = 1; i <= 4; ++i) {
    EXPECT_EQ(proj.measurements["base"][i], 0);
    EXPECT_EQ(proj.measurements["skew_induced"][i], 0);
  }
  GroupAction trivial(pa.algebra, {Matrix::identity(pa.algebra.dim(), Q)});
  SkewAlgebra t = skew_group_algebra(pa.algebra, trivial);
  CheckReport same = tor_vanishing_transfer(t, e, top_of_algebra(corner.algebra));
  EXPECT_TRUE(same.passed());
  EXPECT_EQ(same.measurements["base"], same.measurements["skew_induced"]);
}

TEST(TorTransfer, NonvanishingOnBothSides) {
  // e_0 L e_0 = k[x]/(x^2) and e_0 L has a summand killed by x.
  auto pa = fixtures::nakayama(Q);
  SkewAlgebra s = skew_group_algebra(pa.algebra, fixtures::arrow_sign_action(pa, 0));
  Vector e = pa.vertex_idempotents[0];
  RightModule x = top_of_algebra(corner_algebra(pa.algebra, e).algebra);
  std::vector<Matrix> sign(2, Matrix::identity(1, Q));
  sign[0] = Scalar(-1) * sign[0];
  CheckReport rep = tor_vanishing_transfer(s, e, x, sign);
  EXPECT_TRUE(rep.passed()) << rep.to_json().dump();
  EXPECT_GT(rep.measurements["base"][1].get<int>(), 0);
  EXPECT_GT(rep.measurements["skew_induced"][1].get<int>(), 0);
  EXPECT_GT(rep.measurements["skew_linearized"][1].get<int>(), 0);
}

TEST(TorTransfer, Tor0MatchesDirectTensor) {
  auto pa = fixtures::nakayama(Q);
  Vector e = pa.vertex_idempotents[0];
  SubAlgebra corner = corner_algebra(pa.algebra, e);
  Bimodule p = corner_row_bimodule(pa.algebra, corner, e);
  for (const auto& x : {top_of_algebra(corner.algebra), regular_module(corner.algebra)})
    EXPECT_EQ(tor_dim(x, p, 0), tensor_dim_direct(x, p));
}
