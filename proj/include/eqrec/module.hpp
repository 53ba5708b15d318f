#pragma once

// Right modules and bimodules over structure-constant algebras. Module
// elements are row vectors and an algebra element acts by right
// multiplication with its action matrix.

#include <cstddef>
#include <string>
#include <vector>

#include "eqrec/algebra.hpp"
#include "eqrec/errors.hpp"
#include "eqrec/linalg.hpp"

namespace eqrec {

inline Matrix zero_matrix(std::size_t r, std::size_t c, const Field& f) {
  Matrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = f.zero();
  return m;
}

/// Sum over basis coefficients: a_0 M_0 + a_1 M_1 + ...
inline Matrix combine_matrices(const std::vector<Matrix>& ms, const Vector& a, std::size_t n, const Field& f) {
  Matrix out = zero_matrix(n, n, f);
  for (std::size_t i = 0; i < ms.size(); ++i)
    if (!a[i].is_zero()) out = out + a[i] * ms[i];
  return out;
}

class RightModule {
 public:
  RightModule() = default;

  RightModule(Algebra algebra, std::size_t dim, std::vector<Matrix> action, bool verify = true)
      : algebra_(std::move(algebra)), dim_(dim), action_(std::move(action)) {
    if (action_.size() != algebra_.dim())
      throw UsageError("expected " + std::to_string(algebra_.dim()) + " action matrices, got " +
                       std::to_string(action_.size()));
    for (auto& m : action_) {
      if (m.rows() != dim_ || m.cols() != dim_) throw UsageError("action matrix has the wrong shape");
      for (std::size_t r = 0; r < dim_; ++r)
        for (std::size_t c = 0; c < dim_; ++c) m(r, c) = algebra_.field().coerce(m(r, c));
    }
    if (verify) check_axioms();
  }

  const Algebra& algebra() const { return algebra_; }
  const Field& field() const { return algebra_.field(); }
  std::size_t dim() const { return dim_; }
  const Matrix& action(std::size_t i) const { return action_[i]; }
  const std::vector<Matrix>& actions() const { return action_; }

  Matrix action_of(const Vector& a) const { return combine_matrices(action_, a, dim_, field()); }

  /// x * a
  Vector act(const Vector& x, const Vector& a) const {
    Vector out(dim_, field().zero());
    for (std::size_t i = 0; i < action_.size(); ++i)
      if (!a[i].is_zero()) axpy(out, a[i], x * action_[i]);
    return out;
  }

  void check_axioms() const {
    const Algebra& a = algebra_;
    if (action_of(a.unit()) != Matrix::identity(dim_, field()))
      throw ModuleAxiomViolation("the unit does not act as the identity");
    for (std::size_t i = 0; i < a.dim(); ++i)
      for (std::size_t j = 0; j < a.dim(); ++j) {
        Matrix lhs = action_[i] * action_[j];
        Matrix rhs = zero_matrix(dim_, dim_, field());
        for (const auto& t : a.product_terms(i, j)) rhs = rhs + t.coeff * action_[t.index];
        if (lhs != rhs)
          throw ModuleAxiomViolation("rho(b" + std::to_string(i) + ") rho(b" + std::to_string(j) +
                                         ") != rho(b" + std::to_string(i) + " b" + std::to_string(j) + ")",
                                     {static_cast<long long>(i), static_cast<long long>(j)});
      }
  }

 private:
  Algebra algebra_;
  std::size_t dim_ = 0;
  std::vector<Matrix> action_;
};

inline RightModule regular_module(const Algebra& a) {
  std::vector<Matrix> act;
  for (std::size_t j = 0; j < a.dim(); ++j) act.push_back(a.right_mult_matrix(j));
  return RightModule(a, a.dim(), std::move(act), false);
}

inline RightModule zero_module(const Algebra& a) {
  return RightModule(a, 0, std::vector<Matrix>(a.dim(), Matrix(0, 0)), false);
}

/// Free module A^n, block k holding the k-th copy.
inline RightModule free_module(const Algebra& a, std::size_t n) {
  std::vector<Matrix> act;
  for (std::size_t j = 0; j < a.dim(); ++j) {
    Matrix r = a.right_mult_matrix(j);
    Matrix m = zero_matrix(n * a.dim(), n * a.dim(), a.field());
    for (std::size_t k = 0; k < n; ++k) m.set_block(k * a.dim(), k * a.dim(), r);
    act.push_back(std::move(m));
  }
  return RightModule(a, n * a.dim(), std::move(act), false);
}

inline RightModule direct_sum(const RightModule& m, const RightModule& n) {
  if (!m.algebra().same_as(n.algebra()) && m.algebra().dim() != n.algebra().dim())
    throw UsageError("direct sum of modules over different algebras");
  std::vector<Matrix> act;
  for (std::size_t i = 0; i < m.algebra().dim(); ++i) act.push_back(direct_sum(m.action(i), n.action(i)));
  return RightModule(m.algebra(), m.dim() + n.dim(), std::move(act), false);
}

/// M * S for a subspace S of the algebra.
inline Subspace module_times(const RightModule& m, const Subspace& s) {
  Subspace out(m.dim());
  std::vector<Matrix> ms;
  for (const auto& v : s.basis()) ms.push_back(m.action_of(v));
  for (std::size_t x = 0; x < m.dim(); ++x)
    for (const auto& a : ms) out.add(a.row(x));
  return out;
}

/// M * rad A.
inline Subspace module_radical(const RightModule& m) { return module_times(m, m.algebra().radical()); }

/// Smallest submodule containing the given vectors.
inline Subspace submodule_closure(const RightModule& m, const std::vector<Vector>& gens) {
  Subspace s(m.dim());
  std::vector<Vector> frontier;
  for (const auto& g : gens)
    if (s.add(g)) frontier.push_back(g);
  const auto& algebra_gens = m.algebra().generators();
  std::vector<Matrix> acts;
  for (const auto& g : algebra_gens) acts.push_back(m.action_of(g));
  while (!frontier.empty()) {
    std::vector<Vector> next;
    for (const auto& v : frontier)
      for (const auto& a : acts) {
        Vector w = v * a;
        if (s.add(w)) next.push_back(std::move(w));
      }
    frontier = std::move(next);
  }
  return s;
}

inline void require_submodule(const RightModule& m, const Subspace& s) {
  for (std::size_t v = 0; v < s.dim(); ++v)
    for (std::size_t i = 0; i < m.algebra().dim(); ++i)
      if (!s.contains(s.basis_vector(v) * m.action(i)))
        throw NotASubmodule("u" + std::to_string(v) + " * b" + std::to_string(i) + " leaves the subspace",
                            {static_cast<long long>(v), static_cast<long long>(i)});
}

/// The submodule carried by s, in the echelon basis of s.
inline RightModule submodule(const RightModule& m, const Subspace& s) {
  require_submodule(m, s);
  std::vector<Matrix> act;
  for (std::size_t i = 0; i < m.algebra().dim(); ++i) {
    Matrix a(s.dim(), s.dim());
    for (std::size_t v = 0; v < s.dim(); ++v) a.set_row(v, s.coordinates(s.basis_vector(v) * m.action(i)));
    act.push_back(std::move(a));
  }
  return RightModule(m.algebra(), s.dim(), std::move(act), false);
}

struct QuotientModule {
  RightModule module;
  Subspace kernel;
  std::vector<std::size_t> columns;
  Matrix project;  // dim M x dim Q
};

/// M / s on the complement spanned by the free columns of s.
inline QuotientModule quotient_module(const RightModule& m, const Subspace& s) {
  require_submodule(m, s);
  auto cols = s.free_columns();
  const std::size_t q = cols.size();
  auto proj = [&](const Vector& v) {
    Vector r = s.reduce(v);
    Vector out(q, m.field().zero());
    for (std::size_t c = 0; c < q; ++c) out[c] = r[cols[c]];
    return out;
  };
  Matrix project(m.dim(), q);
  for (std::size_t x = 0; x < m.dim(); ++x) project.set_row(x, proj(unit_vector(m.dim(), x, m.field())));
  std::vector<Matrix> act;
  for (std::size_t i = 0; i < m.algebra().dim(); ++i) {
    Matrix a(q, q);
    for (std::size_t c = 0; c < q; ++c) a.set_row(c, proj(m.action(i).row(cols[c])));
    act.push_back(std::move(a));
  }
  RightModule quot(m.algebra(), q, std::move(act), false);
  return QuotientModule{std::move(quot), s, std::move(cols), std::move(project)};
}

/// M / M rad A.
inline RightModule top(const RightModule& m) { return quotient_module(m, module_radical(m)).module; }

/// A / rad A as a right A-module.
inline RightModule top_of_algebra(const Algebra& a) { return top(regular_module(a)); }

/// Pulls a B-module back along an algebra map A -> B given in the row
/// convention (row i = image of b_i in B).
inline RightModule restrict_scalars(const RightModule& m, const Algebra& a, const Matrix& phi, bool verify = false) {
  if (phi.rows() != a.dim() || phi.cols() != m.algebra().dim()) throw UsageError("algebra map has the wrong shape");
  std::vector<Matrix> act;
  for (std::size_t i = 0; i < a.dim(); ++i) act.push_back(m.action_of(phi.row(i)));
  return RightModule(a, m.dim(), std::move(act), verify);
}

/// Inflation of an A/I-module to A.
inline RightModule inflate(const RightModule& m, const Algebra& a, const QuotientAlgebra& q) {
  return restrict_scalars(m, a, q.project);
}

inline bool is_module_map(const RightModule& m, const RightModule& n, const Matrix& phi) {
  if (phi.rows() != m.dim() || phi.cols() != n.dim()) return false;
  for (std::size_t i = 0; i < m.algebra().dim(); ++i)
    if (m.action(i) * phi != phi * n.action(i)) return false;
  return true;
}

/// Basis of Hom_A(M, N) solved directly from phi rho_N(g) = rho_M(g) phi over a
/// generating set of A. Matrices are dim M x dim N.
inline std::vector<Matrix> hom_space_direct(const RightModule& m, const RightModule& n) {
  const std::size_t dm = m.dim(), dn = n.dim();
  const Field& f = m.field();
  if (dm == 0 || dn == 0) return {};
  const auto& gens = m.algebra().generators();
  Matrix eq = zero_matrix(gens.size() * dm * dn, dm * dn, f);
  std::size_t row = 0;
  for (const auto& g : gens) {
    Matrix am = m.action_of(g);
    Matrix an = n.action_of(g);
    for (std::size_t a = 0; a < dm; ++a)
      for (std::size_t c = 0; c < dn; ++c, ++row) {
        for (std::size_t b = 0; b < dm; ++b)
          if (!am(a, b).is_zero()) eq(row, b * dn + c) += am(a, b);
        for (std::size_t b = 0; b < dn; ++b)
          if (!an(b, c).is_zero()) eq(row, a * dn + b) -= an(b, c);
      }
  }
  std::vector<Matrix> out;
  for (const auto& v : nullspace_basis(eq)) {
    Matrix phi(dm, dn);
    for (std::size_t a = 0; a < dm; ++a)
      for (std::size_t c = 0; c < dn; ++c) phi(a, c) = f.coerce(v[a * dn + c]);
    out.push_back(std::move(phi));
  }
  return out;
}

/// An S-R-bimodule: left S-action and right R-action on one space.
///
/// Both are stored as row-convention matrices: `right(i)` is x -> x r_i and
/// `left(i)` is x -> s_i x, so left(s s') = left(s') left(s).
class Bimodule {
 public:
  Bimodule() = default;

  Bimodule(Algebra left_algebra, Algebra right_algebra, std::size_t dim, std::vector<Matrix> left,
           std::vector<Matrix> right, bool verify = true)
      : left_algebra_(std::move(left_algebra)),
        right_algebra_(std::move(right_algebra)),
        dim_(dim),
        left_(std::move(left)),
        right_(std::move(right)) {
    if (left_.size() != left_algebra_.dim() || right_.size() != right_algebra_.dim())
      throw BimoduleViolation("wrong number of action matrices");
    for (const auto* ms : {&left_, &right_})
      for (const auto& m : *ms)
        if (m.rows() != dim_ || m.cols() != dim_) throw BimoduleViolation("action matrix has the wrong shape");
    if (verify) check_axioms();
  }

  const Algebra& left_algebra() const { return left_algebra_; }
  const Algebra& right_algebra() const { return right_algebra_; }
  const Field& field() const { return right_algebra_.field(); }
  std::size_t dim() const { return dim_; }
  const Matrix& left(std::size_t i) const { return left_[i]; }
  const Matrix& right(std::size_t i) const { return right_[i]; }
  const std::vector<Matrix>& lefts() const { return left_; }
  const std::vector<Matrix>& rights() const { return right_; }

  Matrix left_of(const Vector& s) const { return combine_matrices(left_, s, dim_, field()); }
  Matrix right_of(const Vector& r) const { return combine_matrices(right_, r, dim_, field()); }

  RightModule as_right_module() const { return RightModule(right_algebra_, dim_, right_, false); }

  void check_axioms() const {
    const Field& f = field();
    if (left_of(left_algebra_.unit()) != Matrix::identity(dim_, f))
      throw BimoduleViolation("left unit does not act as the identity");
    if (right_of(right_algebra_.unit()) != Matrix::identity(dim_, f))
      throw BimoduleViolation("right unit does not act as the identity");
    const Algebra& s = left_algebra_;
    for (std::size_t i = 0; i < s.dim(); ++i)
      for (std::size_t j = 0; j < s.dim(); ++j) {
        Matrix rhs = zero_matrix(dim_, dim_, f);
        for (const auto& t : s.product_terms(i, j)) rhs = rhs + t.coeff * left_[t.index];
        if (left_[j] * left_[i] != rhs)
          throw BimoduleViolation("left action is not multiplicative",
                                  {static_cast<long long>(i), static_cast<long long>(j), 0});
      }
    const Algebra& r = right_algebra_;
    for (std::size_t i = 0; i < r.dim(); ++i)
      for (std::size_t j = 0; j < r.dim(); ++j) {
        Matrix rhs = zero_matrix(dim_, dim_, f);
        for (const auto& t : r.product_terms(i, j)) rhs = rhs + t.coeff * right_[t.index];
        if (right_[i] * right_[j] != rhs)
          throw BimoduleViolation("right action is not multiplicative",
                                  {static_cast<long long>(i), static_cast<long long>(j), 1});
      }
    for (std::size_t i = 0; i < s.dim(); ++i)
      for (std::size_t j = 0; j < r.dim(); ++j)
        if (left_[i] * right_[j] != right_[j] * left_[i])
          throw BimoduleViolation("left and right actions do not commute",
                                  {static_cast<long long>(i), static_cast<long long>(j), 2});
  }

 private:
  Algebra left_algebra_;
  Algebra right_algebra_;
  std::size_t dim_ = 0;
  std::vector<Matrix> left_;
  std::vector<Matrix> right_;
};

/// e A as an (eAe)-A-bimodule, on the echelon basis of the subspace eA.
inline Bimodule corner_row_bimodule(const Algebra& a, const SubAlgebra& corner, const Vector& e) {
  Subspace ea(a.dim());
  for (std::size_t i = 0; i < a.dim(); ++i) ea.add(a.multiply_basis_right(e, i));
  const std::size_t d = ea.dim();
  std::vector<Matrix> right, left;
  for (std::size_t i = 0; i < a.dim(); ++i) {
    Matrix m(d, d);
    for (std::size_t v = 0; v < d; ++v) m.set_row(v, ea.coordinates(a.multiply_basis_right(ea.basis_vector(v), i)));
    right.push_back(std::move(m));
  }
  for (std::size_t c = 0; c < corner.algebra.dim(); ++c) {
    Vector s = corner.embed.row(c);
    Matrix m(d, d);
    for (std::size_t v = 0; v < d; ++v) m.set_row(v, ea.coordinates(a.multiply(s, ea.basis_vector(v))));
    left.push_back(std::move(m));
  }
  return Bimodule(corner.algebra, a, d, std::move(left), std::move(right), false);
}

/// A e as a right eAe-module, on the echelon basis of the subspace Ae.
inline RightModule corner_column_module(const Algebra& a, const SubAlgebra& corner, const Vector& e) {
  Subspace ae(a.dim());
  for (std::size_t i = 0; i < a.dim(); ++i) ae.add(a.multiply_basis_left(i, e));
  const std::size_t d = ae.dim();
  std::vector<Matrix> act;
  for (std::size_t c = 0; c < corner.algebra.dim(); ++c) {
    Vector s = corner.embed.row(c);
    Matrix m(d, d);
    for (std::size_t v = 0; v < d; ++v) m.set_row(v, ae.coordinates(a.multiply(ae.basis_vector(v), s)));
    act.push_back(std::move(m));
  }
  return RightModule(corner.algebra, d, std::move(act), false);
}

}  // namespace eqrec
