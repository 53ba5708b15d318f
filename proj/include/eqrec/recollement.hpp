#pragma once

// Recollements induced by an idempotent, and the checks run on them.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "eqrec/algebra.hpp"
#include "eqrec/errors.hpp"
#include "eqrec/group_action.hpp"
#include "eqrec/homology.hpp"
#include "eqrec/module.hpp"
#include "eqrec/report.hpp"
#include "eqrec/skew_group.hpp"

namespace eqrec {

/// Mod L/LeL -> Mod L -> Mod eLe at the level of algebras.
struct RecollementData {
  Algebra middle;
  Vector e;
  SubAlgebra corner;
  Subspace ideal;
  QuotientAlgebra quotient;
};

inline RecollementData recollement_data(const Algebra& a, const Vector& e) {
  a.require_idempotent(e);
  Subspace ideal = two_sided_ideal(a, e);
  SubAlgebra corner = corner_algebra(a, e);
  QuotientAlgebra quotient = quotient_algebra(a, ideal);
  return RecollementData{a, e, std::move(corner), std::move(ideal), std::move(quotient)};
}

struct CriterionOptions {
  std::size_t bound = 10;
  std::uint64_t seed = 0x5eed;
  std::size_t periodicity_cap = 12;  // largest syzygy dimension compared
};

/// Omega^i = Omega^j with i < j, both non-projective.
struct SyzygyCycle {
  std::size_t from = 0;
  std::size_t to = 0;
};

/// Looks for an isomorphism between two of Omega^0 M .. Omega^steps M. Only
/// meaningful when none of them is projective, in which case a hit proves
/// that the syzygies never become projective.
inline std::optional<SyzygyCycle> find_syzygy_cycle(const RightModule& m, std::size_t steps, std::uint64_t seed,
                                                    std::size_t cap = 12) {
  std::vector<RightModule> syz{m};
  for (std::size_t j = 0; j <= steps; ++j) {
    if (j > 0) syz.push_back(syzygy(syz.back()));
    const RightModule& cur = syz[j];
    if (cur.dim() == 0 || cur.dim() > cap) continue;
    for (std::size_t i = 0; i < j; ++i)
      if (syz[i].dim() == cur.dim() && find_isomorphism(syz[i], cur, seed)) return SyzygyCycle{i, j};
  }
  return std::nullopt;
}

namespace detail {

struct PdVerdict {
  PdResult pd;
  std::optional<SyzygyCycle> cycle;

  bool infinite() const { return cycle.has_value(); }

  nlohmann::json to_json() const {
    nlohmann::json j = eqrec::to_json(pd);
    if (cycle) j["periodic"] = {cycle->from, cycle->to};
    return j;
  }
};

inline PdVerdict bounded_pd(const RightModule& m, const CriterionOptions& opt) {
  PdVerdict v{projective_dimension(m, opt.bound), std::nullopt};
  if (!v.pd.is_finite()) v.cycle = find_syzygy_cycle(m, opt.bound, opt.seed, opt.periodicity_cap);
  return v;
}

inline Verdict combine(const PdVerdict& a, const PdVerdict& b) {
  if (a.pd.is_finite() && b.pd.is_finite()) return Verdict::Pass;
  if (a.infinite() || b.infinite()) return Verdict::Fail;
  return Verdict::Inconclusive;
}

}  // namespace detail

/// pd of the top of L/LeL over L, and pd of Le over eLe. Pass when both are
/// finite; Fail only with a periodic syzygy as witness.
inline CheckReport singular_equivalence_criterion(const RecollementData& d, const CriterionOptions& opt = {},
                                                  const std::string& instance = "") {
  CheckReport rep;
  rep.name = "singular_equivalence_criterion";
  rep.instance = instance;
  rep.bound = opt.bound;
  rep.hypotheses["e_idempotent"] = true;
  RightModule top_q = inflate(top_of_algebra(d.quotient.algebra), d.middle, d.quotient);
  RightModule column = corner_column_module(d.middle, d.corner, d.e);
  detail::PdVerdict pd_top = detail::bounded_pd(top_q, opt);
  detail::PdVerdict pd_col = detail::bounded_pd(column, opt);
  rep.measurements["dim_middle"] = d.middle.dim();
  rep.measurements["dim_corner"] = d.corner.algebra.dim();
  rep.measurements["dim_quotient"] = d.quotient.algebra.dim();
  rep.measurements["dim_top_quotient"] = top_q.dim();
  rep.measurements["dim_Le"] = column.dim();
  rep.measurements["pd_top_quotient"] = pd_top.to_json();
  rep.measurements["pd_Le_over_corner"] = pd_col.to_json();
  rep.verdict = detail::combine(pd_top, pd_col);
  if (pd_top.cycle)
    rep.witnesses.push_back("top of quotient: Omega^" + std::to_string(pd_top.cycle->from) + " = Omega^" +
                            std::to_string(pd_top.cycle->to));
  if (pd_col.cycle)
    rep.witnesses.push_back("Le over eLe: Omega^" + std::to_string(pd_col.cycle->from) + " = Omega^" +
                            std::to_string(pd_col.cycle->to));
  return rep;
}

inline void require_equivariant_setting(const GroupAction& act, const Vector& e) {
  require_order_invertible(act);
  require_invariant_idempotent(act, e);
}

inline bool same_verdict(const CheckReport& a, const CheckReport& b) {
  return a.verdict == b.verdict && (a.verdict != Verdict::Inconclusive || a.bound == b.bound);
}

/// Runs the criterion for (L, e) and for (LG, e(x)1); Pass when they agree.
inline CheckReport equivariant_cross_check(const Algebra& a, const Vector& e, const GroupAction& act,
                                           const CriterionOptions& opt = {}, const std::string& instance = "") {
  require_equivariant_setting(act, e);
  SkewAlgebra s = skew_group_algebra(a, act);
  CheckReport base = singular_equivalence_criterion(recollement_data(a, e), opt, instance);
  CheckReport skew = singular_equivalence_criterion(recollement_data(s.total, lift_idempotent(s, e)), opt, instance);
  CheckReport rep;
  rep.name = "equivariant_cross_check";
  rep.instance = instance;
  rep.bound = opt.bound;
  rep.hypotheses["e_invariant"] = true;
  rep.hypotheses["order_invertible"] = true;
  rep.measurements["group_order"] = act.order();
  rep.measurements["base_verdict"] = base.to_json()["verdict"];
  rep.measurements["skew_verdict"] = skew.to_json()["verdict"];
  rep.measurements["base_pd_top_quotient"] = base.measurements["pd_top_quotient"];
  rep.measurements["base_pd_Le_over_corner"] = base.measurements["pd_Le_over_corner"];
  rep.measurements["skew_pd_top_quotient"] = skew.measurements["pd_top_quotient"];
  rep.measurements["skew_pd_Le_over_corner"] = skew.measurements["pd_Le_over_corner"];
  for (const auto& w : base.witnesses) rep.witnesses.push_back("base " + w.get<std::string>());
  for (const auto& w : skew.witnesses) rep.witnesses.push_back("skew " + w.get<std::string>());
  if (!same_verdict(base, skew)) rep.fail("base and skew criteria disagree");
  return rep;
}

/// Global dimension of L and of LG at the same bound.
inline CheckReport gldim_cross_check(const Algebra& a, const GroupAction& act, std::size_t bound = 10,
                                     const std::string& instance = "") {
  require_order_invertible(act);
  SkewAlgebra s = skew_group_algebra(a, act);
  PdResult base = global_dimension_upper(a, bound);
  PdResult skew = global_dimension_upper(s.total, bound);
  CheckReport rep;
  rep.name = "gldim_cross_check";
  rep.instance = instance;
  rep.bound = bound;
  rep.hypotheses["order_invertible"] = true;
  rep.measurements["gldim_base"] = to_json(base);
  rep.measurements["gldim_skew"] = to_json(skew);
  if (!(base == skew)) rep.fail("global dimensions differ: " + base.to_string() + " vs " + skew.to_string());
  return rep;
}

struct EmbeddingOptions {
  std::size_t kmax = 4;
  /// Modules over L annihilated by LeL; empty means the defaults.
  std::vector<RightModule> modules;
  /// Linearized modules over L annihilated by LeL, used on the skew side.
  std::vector<Linearization> linearizations;
};

/// The L/LeL-module underlying an L-module killed by LeL.
inline RightModule descend(const RightModule& m, const QuotientAlgebra& q) {
  for (std::size_t v = 0; v < q.ideal.dim(); ++v)
    if (!m.action_of(q.ideal.basis_vector(v)).is_zero())
      throw NotAnnihilated("module is not annihilated by the ideal", {static_cast<long long>(v)});
  std::vector<Matrix> act;
  for (std::size_t i = 0; i < q.algebra.dim(); ++i) act.push_back(m.action_of(q.section.row(i)));
  return RightModule(q.algebra, m.dim(), std::move(act), true);
}

namespace detail {

struct EmbeddingSide {
  nlohmann::json pairs = nlohmann::json::array();
  std::optional<std::size_t> first_mismatch;

  bool holds() const { return !first_mismatch.has_value(); }

  nlohmann::json summary(std::size_t kmax) const {
    nlohmann::json j;
    j["embedding"] = holds() ? "Pass" : "Fail";
    j["first_mismatch"] = first_mismatch ? nlohmann::json(*first_mismatch) : nlohmann::json(nullptr);
    j["holds_up_to"] = first_mismatch ? static_cast<long long>(*first_mismatch) - 1 : static_cast<long long>(kmax);
    j["pairs"] = pairs;
    return j;
  }
};

/// Ext over the small algebra against Ext over the big one after pulling back.
template <typename Pull>
EmbeddingSide compare_ext(const std::vector<RightModule>& mods, Pull pull, std::size_t kmax) {
  EmbeddingSide side;
  std::vector<RightModule> pulled;
  for (const auto& m : mods) pulled.push_back(pull(m));
  for (std::size_t x = 0; x < mods.size(); ++x)
    for (std::size_t y = 0; y < mods.size(); ++y) {
      auto small = ext_dims(mods[x], mods[y], kmax);
      auto big = ext_dims(pulled[x], pulled[y], kmax);
      for (std::size_t n = 0; n <= kmax; ++n)
        if (small[n] != big[n] && (!side.first_mismatch || n < *side.first_mismatch)) side.first_mismatch = n;
      side.pairs.push_back({{"x", x}, {"y", y}, {"quotient", small}, {"middle", big}});
    }
  return side;
}

}  // namespace detail

/// Matrix of LG -> (L/I)G, r (x) g -> q(r) (x) g, row convention.
inline Matrix skew_quotient_map(const SkewAlgebra& big, const SkewAlgebra& small, const QuotientAlgebra& q) {
  Matrix pi(big.total.dim(), small.total.dim());
  for (std::size_t i = 0; i < big.base.dim(); ++i)
    for (std::size_t g = 0; g < big.group_order(); ++g) pi.set_row(big.flat(i, g), small.lift(q.project.row(i), g));
  return pi;
}

/// Compares Ext^n over L/LeL with Ext^n over L for n <= kmax on test modules.
/// With an action the same comparison runs for (L/LeL)G inside LG, and the
/// verdict records whether both levels agree; without one it is the base
/// comparison itself.
inline CheckReport homological_embedding_check(const Algebra& a, const Vector& e,
                                               const std::optional<GroupAction>& act, const EmbeddingOptions& opt = {},
                                               const std::string& instance = "") {
  CheckReport rep;
  rep.name = "homological_embedding_check";
  rep.instance = instance;
  rep.measurements["k_max"] = opt.kmax;
  RecollementData d = recollement_data(a, e);
  const QuotientAlgebra& q = d.quotient;
  std::vector<RightModule> tests;
  if (opt.modules.empty()) {
    if (q.algebra.dim() > 0) {
      tests.push_back(top_of_algebra(q.algebra));
      tests.push_back(regular_module(q.algebra));
    }
  } else {
    for (const auto& m : opt.modules) tests.push_back(descend(m, q));
  }
  rep.hypotheses["modules_annihilated"] = true;
  rep.measurements["test_modules"] = tests.size();
  detail::EmbeddingSide base =
      detail::compare_ext(tests, [&](const RightModule& m) { return inflate(m, a, q); }, opt.kmax);
  rep.measurements["base"] = base.summary(opt.kmax);
  if (!act) {
    if (!base.holds()) rep.fail("Ext differs in degree " + std::to_string(*base.first_mismatch));
    return rep;
  }
  require_equivariant_setting(*act, e);
  rep.hypotheses["e_invariant"] = true;
  rep.hypotheses["order_invertible"] = true;
  SkewAlgebra s = skew_group_algebra(a, *act);
  std::vector<RightModule> skew_tests;
  nlohmann::json skew_info;
  if (q.algebra.dim() > 0) {
    SkewAlgebra qs = skew_group_algebra(q.algebra, quotient_action(*act, q));
    Matrix pi = skew_quotient_map(s, qs, q);
    Subspace kernel = Subspace::span(pi.rows(), left_nullspace_basis(pi));
    bool hom = is_algebra_homomorphism(s.total, qs.total, pi);
    bool onto = rank(pi) == qs.total.dim();
    bool kernel_ok = kernel == two_sided_ideal(s.total, lift_idempotent(s, e));
    skew_info["quotient_map_is_homomorphism"] = hom;
    skew_info["quotient_map_onto"] = onto;
    skew_info["kernel_is_LGe1LG"] = kernel_ok;
    if (!hom || !onto || !kernel_ok) {
      rep.fail("(L/LeL)G is not LG/LGe'LG through the expected map");
      rep.measurements["skew_quotient"] = skew_info;
      return rep;
    }
    for (const auto& m : tests) skew_tests.push_back(induce(qs, m));
    for (const auto& l : opt.linearizations) {
      Linearization down{descend(l.module, q), l.maps};
      skew_tests.push_back(equivariant_module(qs, down));
    }
    detail::EmbeddingSide skew =
        detail::compare_ext(skew_tests, [&](const RightModule& m) { return restrict_scalars(m, s.total, pi); }, opt.kmax);
    rep.measurements["skew"] = skew.summary(opt.kmax);
    rep.measurements["skew_quotient"] = skew_info;
    if (base.holds() != skew.holds()) rep.fail("base and skew embedding verdicts disagree");
  } else {
    detail::EmbeddingSide skew;
    rep.measurements["skew"] = skew.summary(opt.kmax);
  }
  return rep;
}

/// Equal dimension, products and unit on the given bases.
inline bool same_structure(const Algebra& a, const Algebra& b) {
  if (a.dim() != b.dim() || a.unit() != b.unit()) return false;
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j)
      if (a.basis_product(i, j) != b.basis_product(i, j)) return false;
  return true;
}

/// Tor^{eLe}_i(X, eL) against Tor^{e'LGe'}_i(X', e'LG) for 1 <= i <= imax,
/// where X' is Ind X and, when maps are given, the linearized X moved across
/// (eLe)G = e'LGe'. Pass when the vanishing patterns agree.
inline CheckReport tor_vanishing_transfer(const SkewAlgebra& s, const Vector& e, const RightModule& x,
                                          const std::optional<std::vector<Matrix>>& linearization = std::nullopt,
                                          std::size_t imax = 4, const std::string& instance = "") {
  CheckReport rep;
  rep.name = "tor_vanishing_transfer";
  rep.instance = instance;
  require_equivariant_setting(s.action, e);
  rep.hypotheses["e_invariant"] = true;
  rep.hypotheses["order_invertible"] = true;
  CornerComparison c = compare_corners(s, e);
  if (!c.lands_in_corner || rank(c.phi) != c.phi.rows() || !is_algebra_homomorphism(c.small.total, c.big.algebra, c.phi))
    throw InternalInconsistency("(eLe)G and e'LGe' are not identified by the corner map");
  if (!same_structure(x.algebra(), c.corner.algebra))
    throw UsageError("Tor transfer: X is not a module over the corner eLe");
  RightModule xb(c.corner.algebra, x.dim(), x.actions(), true);
  Matrix phi_inv = *inverse(c.phi, s.total.field());
  Bimodule base_bimodule = corner_row_bimodule(s.base, c.corner, e);
  Bimodule skew_bimodule = corner_row_bimodule(s.total, c.big, c.lifted);
  auto base = tor_dims(xb, base_bimodule, imax);
  rep.measurements["dim_X"] = x.dim();
  rep.measurements["i_max"] = imax;
  rep.measurements["base"] = base;
  auto compare = [&](const std::string& label, const RightModule& over_small) {
    RightModule moved = restrict_scalars(over_small, c.big.algebra, phi_inv, true);
    auto skew = tor_dims(moved, skew_bimodule, imax);
    rep.measurements[label] = skew;
    for (std::size_t i = 1; i <= imax; ++i)
      if ((base[i] == 0) != (skew[i] == 0))
        rep.fail(label + ": Tor_" + std::to_string(i) + " vanishes on one side only");
  };
  compare("skew_induced", induce(c.small, xb));
  if (linearization) compare("skew_linearized", equivariant_module(c.small, Linearization{xb, *linearization}));
  return rep;
}

}  // namespace eqrec
