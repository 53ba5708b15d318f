#pragma once

// Finite groups acting on an algebra by automorphisms.
//
// sigma_g is stored as a column-convention matrix: entry (i, j) is the
// coefficient of b_i in sigma_g(b_j). The action is a right action, so the
// table entry m[g][h] is the element k with sigma_k = sigma_h o sigma_g.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "eqrec/algebra.hpp"
#include "eqrec/errors.hpp"
#include "eqrec/linalg.hpp"
#include "eqrec/module.hpp"

namespace eqrec {

class GroupAction {
 public:
  GroupAction() = default;

  /// Validates each matrix as an automorphism, then closes the set under
  /// composition. Elements keep the order given; new ones are appended.
  GroupAction(Algebra algebra, std::vector<Matrix> matrices, std::vector<std::string> labels = {},
              std::size_t cap = 1024)
      : algebra_(std::move(algebra)) {
    if (matrices.empty()) throw UsageError("a group action needs at least one matrix");
    for (std::size_t g = 0; g < matrices.size(); ++g) {
      coerce(matrices[g]);
      check_automorphism(matrices[g], g);
      if (find(matrices[g])) continue;
      add(std::move(matrices[g]), g < labels.size() ? labels[g] : "", cap);
    }
    close(cap);
    finish();
  }

  /// Uses the listed elements and table as given, checking every invariant.
  static GroupAction with_table(Algebra algebra, std::vector<Matrix> matrices,
                                const std::vector<std::vector<std::size_t>>& table,
                                std::vector<std::string> labels = {}) {
    GroupAction act;
    act.algebra_ = std::move(algebra);
    if (matrices.empty()) throw UsageError("a group action needs at least one matrix");
    for (std::size_t g = 0; g < matrices.size(); ++g) {
      act.coerce(matrices[g]);
      act.check_automorphism(matrices[g], g);
    }
    act.matrices_ = std::move(matrices);
    act.labels_ = std::move(labels);
    const std::size_t n = act.matrices_.size();
    if (table.size() != n) throw InvalidGroupTable("table has the wrong number of rows");
    for (std::size_t g = 0; g < n; ++g) {
      if (table[g].size() != n) throw InvalidGroupTable("table row " + std::to_string(g) + " has the wrong length");
      for (std::size_t h = 0; h < n; ++h) {
        if (table[g][h] >= n) throw InvalidGroupTable("table entry out of range");
        if (act.matrices_[h] * act.matrices_[g] != act.matrices_[table[g][h]])
          throw NotClosed("table entry (" + std::to_string(g) + ", " + std::to_string(h) + ") is wrong",
                          {static_cast<long long>(g), static_cast<long long>(h)});
      }
    }
    for (std::size_t g = 0; g < n; ++g)
      for (std::size_t h = 0; h < n; ++h)
        for (std::size_t k = 0; k < n; ++k)
          if (table[table[g][h]][k] != table[g][table[h][k]]) throw InvalidGroupTable("table is not associative");
    act.table_ = table;
    act.finish();
    return act;
  }

  const Algebra& algebra() const { return algebra_; }
  std::size_t order() const { return matrices_.size(); }
  const Matrix& matrix(std::size_t g) const { return matrices_[g]; }
  const Matrix& inverse_matrix(std::size_t g) const { return matrices_[inverse_[g]]; }
  std::size_t compose(std::size_t g, std::size_t h) const { return table_[g][h]; }
  const std::vector<std::vector<std::size_t>>& table() const { return table_; }
  std::size_t identity() const { return identity_; }
  std::size_t inverse(std::size_t g) const { return inverse_[g]; }
  const std::string& label(std::size_t g) const { return labels_[g]; }
  const std::vector<std::string>& labels() const { return labels_; }

  /// sigma_g(a)
  Vector apply(std::size_t g, const Vector& a) const { return matrices_[g] * a; }

  /// sigma_g(b_i)
  Vector apply_basis(std::size_t g, std::size_t i) const { return matrices_[g].column(i); }

 private:
  Algebra algebra_;
  std::vector<Matrix> matrices_;
  std::vector<std::string> labels_;
  std::vector<std::vector<std::size_t>> table_;
  std::vector<std::size_t> inverse_;
  std::size_t identity_ = 0;

  void coerce(Matrix& m) const {
    if (m.rows() != algebra_.dim() || m.cols() != algebra_.dim()) throw UsageError("group matrix has the wrong shape");
    for (std::size_t i = 0; i < m.rows(); ++i)
      for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = algebra_.field().coerce(m(i, j));
  }

  void check_automorphism(const Matrix& m, std::size_t g) const {
    const Algebra& a = algebra_;
    auto w = [&](long long i, long long j) { return std::vector<long long>{static_cast<long long>(g), i, j}; };
    if (rank(m) != a.dim()) throw NotAutomorphism("matrix " + std::to_string(g) + " is singular", w(-1, -1));
    if (m * a.unit() != a.unit()) throw NotAutomorphism("matrix " + std::to_string(g) + " moves the unit", w(-1, -1));
    for (std::size_t i = 0; i < a.dim(); ++i)
      for (std::size_t j = 0; j < a.dim(); ++j)
        if (m * a.basis_product(i, j) != a.multiply(m.column(i), m.column(j)))
          throw NotAutomorphism("matrix " + std::to_string(g) + " is not multiplicative on (b" + std::to_string(i) +
                                    ", b" + std::to_string(j) + ")",
                                w(static_cast<long long>(i), static_cast<long long>(j)));
  }

  std::optional<std::size_t> find(const Matrix& m) const {
    for (std::size_t g = 0; g < matrices_.size(); ++g)
      if (matrices_[g] == m) return g;
    return std::nullopt;
  }

  void add(Matrix m, std::string label, std::size_t cap) {
    if (matrices_.size() >= cap)
      throw ClosureCapExceeded("group generated by the matrices exceeds " + std::to_string(cap) + " elements");
    matrices_.push_back(std::move(m));
    labels_.push_back(std::move(label));
  }

  void close(std::size_t cap) {
    // The identity is always present once the set is closed; add it first so
    // it gets a predictable index when missing.
    Matrix id = Matrix::identity(algebra_.dim(), algebra_.field());
    if (!find(id)) add(id, "", cap);
    for (std::size_t g = 0; g < matrices_.size(); ++g)
      for (std::size_t h = 0; h <= g; ++h)
        for (auto [x, y] : {std::pair{g, h}, std::pair{h, g}}) {
          Matrix p = matrices_[y] * matrices_[x];
          if (!find(p)) add(std::move(p), "", cap);
        }
    table_.assign(matrices_.size(), std::vector<std::size_t>(matrices_.size()));
    for (std::size_t g = 0; g < matrices_.size(); ++g)
      for (std::size_t h = 0; h < matrices_.size(); ++h) table_[g][h] = *find(matrices_[h] * matrices_[g]);
  }

  void finish() {
    const std::size_t n = matrices_.size();
    labels_.resize(n);
    // Read the identity off the table: the matrices need not be distinct.
    identity_ = n;
    for (std::size_t e = 0; e < n && identity_ == n; ++e) {
      bool neutral = true;
      for (std::size_t h = 0; h < n && neutral; ++h) neutral = table_[e][h] == h && table_[h][e] == h;
      if (neutral) identity_ = e;
    }
    if (identity_ == n) throw InvalidGroupTable("the table has no identity element");
    if (matrices_[identity_] != Matrix::identity(algebra_.dim(), algebra_.field()))
      throw InvalidGroupTable("the identity element does not act trivially");
    inverse_.assign(n, n);
    for (std::size_t g = 0; g < n; ++g)
      for (std::size_t h = 0; h < n; ++h)
        if (table_[g][h] == identity_) inverse_[g] = h;
    for (std::size_t g = 0; g < n; ++g) {
      if (inverse_[g] == n) throw InvalidGroupTable("element " + std::to_string(g) + " has no inverse");
      if (labels_[g].empty()) labels_[g] = g == identity_ ? "id" : "g" + std::to_string(g);
    }
  }
};

/// |G| is nonzero in the ground field.
inline bool order_invertible(const GroupAction& act) {
  std::uint64_t p = act.algebra().field().characteristic();
  return p == 0 || act.order() % p != 0;
}

inline void require_order_invertible(const GroupAction& act) {
  if (!order_invertible(act))
    throw OrderNotInvertible("|G| = " + std::to_string(act.order()) + " vanishes in " + act.algebra().field().name());
}

inline bool is_invariant_idempotent(const GroupAction& act, const Vector& e) {
  act.algebra().require_idempotent(e);
  for (std::size_t g = 0; g < act.order(); ++g)
    if (act.apply(g, e) != e) return false;
  return true;
}

inline void require_invariant_idempotent(const GroupAction& act, const Vector& e) {
  act.algebra().require_idempotent(e);
  for (std::size_t g = 0; g < act.order(); ++g)
    if (act.apply(g, e) != e)
      throw NotInvariant("idempotent is moved by element " + act.label(g), {static_cast<long long>(g)});
}

/// Subalgebra of invariants {a : sigma_g(a) = a for all g}.
inline Subspace fixed_subalgebra(const GroupAction& act) {
  const std::size_t n = act.algebra().dim();
  const Field& f = act.algebra().field();
  Matrix stacked = zero_matrix(n * act.order(), n, f);
  for (std::size_t g = 0; g < act.order(); ++g)
    stacked.set_block(g * n, 0, act.matrix(g) - Matrix::identity(n, f));
  return Subspace::span(n, nullspace_basis(stacked));
}

/// M^g: same space, r acts as sigma_g^{-1}(r) did on M.
inline RightModule twist_module(const RightModule& m, std::size_t g, const GroupAction& act) {
  const Matrix& inv = act.inverse_matrix(g);
  std::vector<Matrix> out;
  for (std::size_t i = 0; i < m.algebra().dim(); ++i) out.push_back(m.action_of(inv.column(i)));
  return RightModule(m.algebra(), m.dim(), std::move(out), false);
}

/// The action restricted to an invariant subalgebra (a corner eAe with e
/// fixed), with the same element order and table.
inline GroupAction restrict_action(const GroupAction& act, const SubAlgebra& sub) {
  const std::size_t d = sub.algebra.dim();
  std::vector<Matrix> ms;
  for (std::size_t g = 0; g < act.order(); ++g) {
    Matrix m(d, d);
    for (std::size_t j = 0; j < d; ++j) {
      Vector img = act.apply(g, sub.embed.row(j));
      if (!sub.space.contains(img)) throw NotInvariant("subalgebra is not preserved by " + act.label(g));
      Vector c = sub.space.coordinates(img);
      for (std::size_t i = 0; i < d; ++i) m(i, j) = c[i];
    }
    ms.push_back(std::move(m));
  }
  return GroupAction::with_table(sub.algebra, std::move(ms), act.table(), act.labels());
}

/// The induced action on A/I for an invariant ideal I.
inline GroupAction quotient_action(const GroupAction& act, const QuotientAlgebra& q) {
  const std::size_t d = q.algebra.dim();
  std::vector<Matrix> ms;
  for (std::size_t g = 0; g < act.order(); ++g) {
    for (const auto& v : q.ideal.basis())
      if (!q.ideal.contains(act.apply(g, v))) throw NotInvariant("ideal is not preserved by " + act.label(g));
    Matrix m(d, d);
    for (std::size_t j = 0; j < d; ++j) {
      Vector c = q.to_quotient(act.apply(g, q.section.row(j)));
      for (std::size_t i = 0; i < d; ++i) m(i, j) = c[i];
    }
    ms.push_back(std::move(m));
  }
  return GroupAction::with_table(q.algebra, std::move(ms), act.table(), act.labels());
}

}  // namespace eqrec
