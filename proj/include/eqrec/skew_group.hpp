#pragma once

// Skew group algebras R G, linearized modules, induction and restriction.
//
// Basis element b_i (x) g has flat index i * |G| + g. Writing g.h for the
// element with sigma_{g.h} = sigma_g sigma_h (table entry [h][g]), the product
// is (r (x) g)(r' (x) h) = r sigma_g(r') (x) g.h.

#include <cstddef>
#include <string>
#include <vector>

#include "eqrec/algebra.hpp"
#include "eqrec/errors.hpp"
#include "eqrec/group_action.hpp"
#include "eqrec/homology.hpp"
#include "eqrec/module.hpp"
#include "eqrec/report.hpp"

namespace eqrec {

struct SkewAlgebra {
  Algebra base;
  GroupAction action;
  Algebra total;

  std::size_t group_order() const { return action.order(); }
  std::size_t flat(std::size_t i, std::size_t g) const { return i * action.order() + g; }

  /// g.h, the element acting as sigma_g sigma_h.
  std::size_t mul(std::size_t g, std::size_t h) const { return action.compose(h, g); }

  /// r (x) g for r in the base.
  Vector lift(const Vector& r, std::size_t g) const {
    Vector v(total.dim(), total.field().zero());
    for (std::size_t i = 0; i < base.dim(); ++i) v[flat(i, g)] = r[i];
    return v;
  }

  /// Matrix of r -> r (x) 1, row convention.
  Matrix embed_base() const {
    Matrix m(base.dim(), total.dim());
    for (std::size_t i = 0; i < base.dim(); ++i) m.set_row(i, lift(base.basis_vector(i), action.identity()));
    return m;
  }

  /// The coefficient of (x) g in x, as an element of R.
  Vector component(const Vector& x, std::size_t g) const {
    Vector v(base.dim(), base.field().zero());
    for (std::size_t i = 0; i < base.dim(); ++i) v[i] = x[flat(i, g)];
    return v;
  }
};

inline SkewAlgebra skew_group_algebra(const Algebra& base, const GroupAction& act, bool verify = true) {
  const std::size_t n = base.dim(), o = act.order();
  std::vector<StructureConstant> sc;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t g = 0; g < o; ++g)
      for (std::size_t j = 0; j < n; ++j) {
        Vector r = base.multiply(base.basis_vector(i), act.apply_basis(g, j));
        for (std::size_t h = 0; h < o; ++h) {
          std::size_t gh = act.compose(h, g);
          for (std::size_t k = 0; k < n; ++k)
            if (!r[k].is_zero()) sc.push_back({i * o + g, j * o + h, k * o + gh, r[k]});
        }
      }
  Vector unit(n * o, base.field().zero());
  for (std::size_t i = 0; i < n; ++i) unit[i * o + act.identity()] = base.unit()[i];
  Algebra total(base.field(), n * o, sc, unit, verify);
  return SkewAlgebra{base, act, std::move(total)};
}

/// e' = e (x) 1 for an invariant idempotent e.
inline Vector lift_idempotent(const SkewAlgebra& s, const Vector& e) {
  require_invariant_idempotent(s.action, e);
  Vector lifted = s.lift(e, s.action.identity());
  if (!s.total.is_idempotent(lifted)) throw InternalInconsistency("lifted idempotent is not idempotent");
  return lifted;
}

/// Isomorphisms mu_g : M -> M^g, as row-convention matrices.
struct Linearization {
  RightModule module;
  std::vector<Matrix> maps;
};

inline void validate_linearization(const SkewAlgebra& s, const Linearization& l) {
  const GroupAction& act = s.action;
  const RightModule& m = l.module;
  if (l.maps.size() != act.order()) throw UsageError("linearization needs one map per group element");
  for (const auto& mu : l.maps)
    if (mu.rows() != m.dim() || mu.cols() != m.dim()) throw UsageError("linearization map has the wrong shape");
  if (l.maps[act.identity()] != Matrix::identity(m.dim(), m.field()))
    throw CocycleViolation("mu at the identity is not the identity",
                           {static_cast<long long>(act.identity()), static_cast<long long>(act.identity())});
  for (std::size_t g = 0; g < act.order(); ++g)
    for (std::size_t h = 0; h < act.order(); ++h)
      if (l.maps[g] * l.maps[h] != l.maps[s.mul(g, h)])
        throw CocycleViolation("mu_" + act.label(g) + " mu_" + act.label(h) + " != mu of the product",
                               {static_cast<long long>(g), static_cast<long long>(h)});
  for (std::size_t g = 0; g < act.order(); ++g)
    for (std::size_t i = 0; i < s.base.dim(); ++i)
      if (l.maps[g] * m.action(i) != m.action_of(act.apply_basis(g, i)) * l.maps[g])
        throw CompatibilityViolation("mu_" + act.label(g) + " is not a module map M -> M^g on b" + std::to_string(i),
                                     {static_cast<long long>(g), static_cast<long long>(i)});
}

/// The R G-module on the same space: r (x) g acts as rho(r) followed by mu_g.
inline RightModule equivariant_module(const SkewAlgebra& s, const Linearization& l) {
  validate_linearization(s, l);
  std::vector<Matrix> act(s.total.dim());
  for (std::size_t i = 0; i < s.base.dim(); ++i)
    for (std::size_t g = 0; g < s.group_order(); ++g) act[s.flat(i, g)] = l.module.action(i) * l.maps[g];
  return RightModule(s.total, l.module.dim(), std::move(act), true);
}

/// mu_g = sigma_g^{-1} on the regular module.
inline Linearization regular_linearization(const SkewAlgebra& s) {
  Linearization l{regular_module(s.base), {}};
  for (std::size_t g = 0; g < s.group_order(); ++g) l.maps.push_back(s.action.inverse_matrix(g).transpose());
  return l;
}

/// mu_g = chi(g) * identity for a character chi of G.
inline Linearization character_linearization(const SkewAlgebra& s, const RightModule& m, const std::vector<Scalar>& chi) {
  Linearization l{m, {}};
  for (std::size_t g = 0; g < s.group_order(); ++g)
    l.maps.push_back(chi.at(g) * Matrix::identity(m.dim(), m.field()));
  return l;
}

/// M (x)_R R G on the blocks M (x) g, in block order g.
inline RightModule induce(const SkewAlgebra& s, const RightModule& m) {
  const std::size_t o = s.group_order(), d = m.dim();
  std::vector<Matrix> act;
  act.resize(s.total.dim());
  for (std::size_t i = 0; i < s.base.dim(); ++i)
    for (std::size_t h = 0; h < o; ++h) {
      Matrix a = zero_matrix(o * d, o * d, m.field());
      for (std::size_t g = 0; g < o; ++g)
        a.set_block(g * d, s.mul(g, h) * d, m.action_of(s.action.apply_basis(g, i)));
      act[s.flat(i, h)] = std::move(a);
    }
  return RightModule(s.total, o * d, std::move(act), false);
}

/// Restriction along r -> r (x) 1.
inline RightModule restrict(const SkewAlgebra& s, const RightModule& m) {
  std::vector<Matrix> act;
  for (std::size_t i = 0; i < s.base.dim(); ++i) act.push_back(m.action(s.flat(i, s.action.identity())));
  return RightModule(s.base, m.dim(), std::move(act), false);
}

/// (eRe)G next to e'(RG)e', with the map (x) g -> e'(x (x) g)e' on bases.
struct CornerComparison {
  SubAlgebra corner;  // eRe inside R
  SkewAlgebra small;  // (eRe)G
  Vector lifted;      // e'
  SubAlgebra big;     // e'(RG)e' inside RG
  Matrix phi;         // dim small.total x dim big.algebra, row convention
  bool lands_in_corner = true;
};

inline CornerComparison compare_corners(const SkewAlgebra& s, const Vector& e) {
  require_invariant_idempotent(s.action, e);
  CornerComparison c{corner_algebra(s.base, e), {}, lift_idempotent(s, e), {}, {}, true};
  c.small = skew_group_algebra(c.corner.algebra, restrict_action(s.action, c.corner));
  c.big = corner_algebra(s.total, c.lifted);
  c.phi = Matrix(c.small.total.dim(), c.big.algebra.dim());
  for (std::size_t a = 0; a < c.corner.algebra.dim(); ++a)
    for (std::size_t g = 0; g < s.group_order(); ++g) {
      Vector x = s.lift(c.corner.embed.row(a), g);
      Vector y = s.total.multiply(s.total.multiply(c.lifted, x), c.lifted);
      if (!c.big.space.contains(y)) {
        c.lands_in_corner = false;
        continue;
      }
      c.phi.set_row(c.small.flat(a, g), c.big.space.coordinates(y));
    }
  return c;
}

/// Checks that (eRe)G -> e'(RG)e' is a bijective unital homomorphism.
inline CheckReport corner_compat_check(const SkewAlgebra& s, const Vector& e, const std::string& instance = "") {
  CheckReport rep;
  rep.name = "corner_compat";
  rep.instance = instance;
  CornerComparison c = compare_corners(s, e);
  rep.hypotheses["e_invariant"] = true;
  rep.measurements["dim_eRe"] = c.corner.algebra.dim();
  rep.measurements["dim_eRe_G"] = c.small.total.dim();
  rep.measurements["dim_e1_RG_e1"] = c.big.algebra.dim();
  rep.measurements["expected_dim"] = s.group_order() * c.corner.algebra.dim();
  if (!c.lands_in_corner) {
    rep.fail("image leaves the corner");
    return rep;
  }
  if (c.small.total.dim() != c.big.algebra.dim()) {
    rep.fail("dimensions differ");
    return rep;
  }
  bool bijective = rank(c.phi) == c.phi.rows();
  bool hom = is_algebra_homomorphism(c.small.total, c.big.algebra, c.phi);
  rep.measurements["bijective"] = bijective;
  rep.measurements["multiplicative"] = hom;
  if (!bijective) rep.fail("map is not bijective");
  if (!hom) rep.fail("map is not multiplicative");
  return rep;
}

/// Dimension, associativity and radical of R G; with a trivial action also
/// checks that R and kG commute elementwise.
inline CheckReport skew_structure_check(const SkewAlgebra& s, const std::string& instance = "") {
  CheckReport rep;
  rep.name = "skew_structure";
  rep.instance = instance;
  const std::size_t order = s.group_order();
  rep.measurements["group_order"] = order;
  rep.measurements["dim_R"] = s.base.dim();
  rep.measurements["dim_RG"] = s.total.dim();
  if (s.total.dim() != order * s.base.dim()) rep.fail("dim RG differs from |G| dim R");
  try {
    Algebra(s.total.field(), s.total.dim(), s.total.structure_constants(), s.total.unit(), true);
    rep.measurements["associative"] = true;
  } catch (const AssociativityViolation& e) {
    rep.measurements["associative"] = false;
    rep.witnesses.push_back(e.what());
    rep.fail("RG is not associative");
  }
  const Field& f = s.base.field();
  rep.hypotheses["order_invertible"] = order_invertible(s.action);
  if (order_invertible(s.action) && (f.is_rational() || f.characteristic() > s.total.dim())) {
    std::size_t rad = s.base.radical().dim(), rad_g = s.total.radical().dim();
    rep.measurements["dim_rad_R"] = rad;
    rep.measurements["dim_rad_RG"] = rad_g;
    if (rad_g != order * rad) rep.fail("dim rad RG differs from |G| dim rad R");
  }
  bool trivial = true;
  for (std::size_t g = 0; g < order; ++g)
    trivial = trivial && s.action.matrix(g) == Matrix::identity(s.base.dim(), f);
  rep.hypotheses["trivial_action"] = trivial;
  if (trivial) {
    bool commute = true;
    for (std::size_t i = 0; i < s.base.dim() && commute; ++i)
      for (std::size_t g = 0; g < order && commute; ++g) {
        Vector r = s.lift(s.base.basis_vector(i), s.action.identity());
        Vector u = s.lift(s.base.unit(), g);
        commute = s.total.multiply(r, u) == s.total.multiply(u, r);
      }
    rep.measurements["base_commutes_with_group"] = commute;
    if (!commute) rep.fail("R and kG do not commute under the trivial action");
  }
  return rep;
}

}  // namespace eqrec
