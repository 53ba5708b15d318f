#pragma once

// Finite-dimensional unital associative algebras given by structure constants.

#include <cstddef>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "eqrec/errors.hpp"
#include "eqrec/linalg.hpp"
#include "eqrec/scalar.hpp"

namespace eqrec {

struct Term {
  std::size_t index;
  Scalar coeff;
};

using SparseVector = std::vector<Term>;

/// One entry of a structure-constant table: b_i * b_j has coefficient c at b_k.
struct StructureConstant {
  std::size_t i, j, k;
  Scalar c;
};

class Algebra {
 public:
  Algebra() : Algebra(Field::rationals(), 0, {}, {}, false) {}

  /// Builds the algebra and, unless `verify` is false, checks associativity and
  /// the unit on every basis triple.
  Algebra(Field field, std::size_t dim, const std::vector<StructureConstant>& constants, Vector unit,
          bool verify = true)
      : data_(std::make_shared<Data>()) {
    data_->field = field;
    data_->dim = dim;
    if (unit.size() != dim) throw UsageError("unit has length " + std::to_string(unit.size()) + ", expected " +
                                             std::to_string(dim));
    for (auto& u : unit) u = field.coerce(u);
    data_->unit = std::move(unit);
    std::vector<Vector> dense(dim * dim);
    for (const auto& sc : constants) {
      if (sc.i >= dim || sc.j >= dim || sc.k >= dim) throw UsageError("structure constant index out of range");
      auto& v = dense[sc.i * dim + sc.j];
      if (v.empty()) v.assign(dim, field.zero());
      v[sc.k] += field.coerce(sc.c);
    }
    data_->table.resize(dim * dim);
    for (std::size_t p = 0; p < dim * dim; ++p) {
      if (dense[p].empty()) continue;
      for (std::size_t k = 0; k < dim; ++k)
        if (!dense[p][k].is_zero()) data_->table[p].push_back({k, dense[p][k]});
    }
    if (verify) {
      check_unit();
      check_associativity();
    }
  }

  const Field& field() const { return data_->field; }
  std::size_t dim() const { return data_->dim; }
  const Vector& unit() const { return data_->unit; }

  const SparseVector& product_terms(std::size_t i, std::size_t j) const { return data_->table[i * dim() + j]; }

  Vector basis_vector(std::size_t i) const { return unit_vector(dim(), i, field()); }

  Vector basis_product(std::size_t i, std::size_t j) const {
    Vector v(dim(), field().zero());
    for (const auto& t : product_terms(i, j)) v[t.index] = t.coeff;
    return v;
  }

  Vector multiply(const Vector& a, const Vector& b) const {
    check_len(a);
    check_len(b);
    Vector out(dim(), field().zero());
    for (std::size_t i = 0; i < dim(); ++i) {
      if (a[i].is_zero()) continue;
      for (std::size_t j = 0; j < dim(); ++j) {
        if (b[j].is_zero()) continue;
        Scalar c = a[i] * b[j];
        for (const auto& t : product_terms(i, j)) out[t.index] += c * t.coeff;
      }
    }
    return out;
  }

  /// a * b_j
  Vector multiply_basis_right(const Vector& a, std::size_t j) const {
    Vector out(dim(), field().zero());
    for (std::size_t i = 0; i < dim(); ++i) {
      if (a[i].is_zero()) continue;
      for (const auto& t : product_terms(i, j)) out[t.index] += a[i] * t.coeff;
    }
    return out;
  }

  /// b_i * a
  Vector multiply_basis_left(std::size_t i, const Vector& a) const {
    Vector out(dim(), field().zero());
    for (std::size_t j = 0; j < dim(); ++j) {
      if (a[j].is_zero()) continue;
      for (const auto& t : product_terms(i, j)) out[t.index] += a[j] * t.coeff;
    }
    return out;
  }

  /// Matrix of x -> x*b_j in the row convention; this is the regular action.
  Matrix right_mult_matrix(std::size_t j) const {
    Matrix m(dim(), dim());
    fill_zero(m);
    for (std::size_t i = 0; i < dim(); ++i)
      for (const auto& t : product_terms(i, j)) m(i, t.index) = t.coeff;
    return m;
  }

  /// Matrix of x -> a*x in the row convention.
  Matrix left_mult_matrix(const Vector& a) const {
    Matrix m(dim(), dim());
    fill_zero(m);
    for (std::size_t j = 0; j < dim(); ++j) m.set_row(j, multiply(a, basis_vector(j)));
    return m;
  }

  Matrix right_mult_matrix(const Vector& a) const {
    Matrix m(dim(), dim());
    fill_zero(m);
    for (std::size_t i = 0; i < dim(); ++i) m.set_row(i, multiply(basis_vector(i), a));
    return m;
  }

  bool is_idempotent(const Vector& e) const { return multiply(e, e) == e; }

  void require_idempotent(const Vector& e) const {
    check_len(e);
    if (!is_idempotent(e)) throw NotIdempotent("e*e != e");
  }

  /// The full sparse table, ordered by (i, j, k).
  std::vector<StructureConstant> structure_constants() const {
    std::vector<StructureConstant> out;
    for (std::size_t i = 0; i < dim(); ++i)
      for (std::size_t j = 0; j < dim(); ++j)
        for (const auto& t : product_terms(i, j)) out.push_back({i, j, t.index, t.coeff});
    return out;
  }

  /// Identity of the underlying shared data; copies compare equal.
  bool same_as(const Algebra& o) const { return data_ == o.data_; }

  void check_len(const Vector& v) const {
    if (v.size() != dim()) throw UsageError("vector of length " + std::to_string(v.size()) +
                                            " used in an algebra of dimension " + std::to_string(dim()));
  }

  // Lazily computed invariants, shared between copies.
  const Subspace& radical() const;
  const std::vector<Vector>& generators() const;

 private:
  struct Data {
    Field field;
    std::size_t dim = 0;
    Vector unit;
    std::vector<SparseVector> table;

    std::once_flag radical_once;
    std::optional<Subspace> radical;
    std::once_flag generators_once;
    std::vector<Vector> generators;
  };
  std::shared_ptr<Data> data_;

  void fill_zero(Matrix& m) const {
    for (std::size_t i = 0; i < m.rows(); ++i)
      for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = field().zero();
  }

  void check_unit() const {
    for (std::size_t i = 0; i < dim(); ++i) {
      Vector b = basis_vector(i);
      if (multiply(unit(), b) != b || multiply(b, unit()) != b)
        throw UnitViolation("unit does not act as identity on basis element " + std::to_string(i),
                            {static_cast<long long>(i)});
    }
  }

  void check_associativity() const {
    const std::size_t n = dim();
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        const auto& ij = product_terms(i, j);
        for (std::size_t k = 0; k < n; ++k) {
          Vector lhs(n, field().zero());
          for (const auto& t : ij)
            for (const auto& u : product_terms(t.index, k)) lhs[u.index] += t.coeff * u.coeff;
          Vector rhs(n, field().zero());
          for (const auto& t : product_terms(j, k))
            for (const auto& u : product_terms(i, t.index)) rhs[u.index] += t.coeff * u.coeff;
          if (lhs != rhs)
            throw AssociativityViolation("(b" + std::to_string(i) + " b" + std::to_string(j) + ") b" +
                                             std::to_string(k) + " != b" + std::to_string(i) + " (b" +
                                             std::to_string(j) + " b" + std::to_string(k) + ")",
                                         {static_cast<long long>(i), static_cast<long long>(j),
                                          static_cast<long long>(k)});
        }
      }
    }
  }
};

/// Span of all products u*v with u in U and v in V.
inline Subspace subspace_product(const Algebra& a, const Subspace& u, const Subspace& v) {
  Subspace out(a.dim());
  for (const auto& x : u.basis())
    for (const auto& y : v.basis()) out.add(a.multiply(x, y));
  return out;
}

/// Smallest two-sided ideal containing the given vectors.
inline Subspace ideal_closure(const Algebra& a, const std::vector<Vector>& gens) {
  Subspace s(a.dim());
  std::vector<Vector> frontier;
  for (const auto& g : gens)
    if (s.add(g)) frontier.push_back(g);
  while (!frontier.empty()) {
    std::vector<Vector> next;
    for (const auto& v : frontier) {
      for (std::size_t i = 0; i < a.dim(); ++i) {
        Vector l = a.multiply_basis_left(i, v);
        if (s.add(l)) next.push_back(std::move(l));
        Vector r = a.multiply_basis_right(v, i);
        if (s.add(r)) next.push_back(std::move(r));
      }
    }
    frontier = std::move(next);
  }
  return s;
}

/// The ideal A e A.
inline Subspace two_sided_ideal(const Algebra& a, const Vector& e) {
  a.require_idempotent(e);
  std::vector<Vector> gens;
  for (std::size_t i = 0; i < a.dim(); ++i) {
    Vector be = a.multiply_basis_left(i, e);
    for (std::size_t j = 0; j < a.dim(); ++j) gens.push_back(a.multiply_basis_right(be, j));
  }
  return ideal_closure(a, gens);
}

/// Throws NotAnIdeal unless A*I and I*A lie in I.
inline void require_ideal(const Algebra& a, const Subspace& ideal) {
  for (std::size_t v = 0; v < ideal.dim(); ++v) {
    for (std::size_t i = 0; i < a.dim(); ++i) {
      if (!ideal.contains(a.multiply_basis_left(i, ideal.basis_vector(v))))
        throw NotAnIdeal("b" + std::to_string(i) + " * u" + std::to_string(v) + " leaves the subspace",
                         {static_cast<long long>(i), static_cast<long long>(v), 0});
      if (!ideal.contains(a.multiply_basis_right(ideal.basis_vector(v), i)))
        throw NotAnIdeal("u" + std::to_string(v) + " * b" + std::to_string(i) + " leaves the subspace",
                         {static_cast<long long>(v), static_cast<long long>(i), 1});
    }
  }
}

/// Subalgebra (or corner) carried by a subspace, together with its embedding.
struct SubAlgebra {
  Algebra algebra;
  Subspace space;  // basis of the subspace inside the ambient algebra
  Matrix embed;    // row a = image of the a-th basis vector in ambient coordinates

  Vector to_ambient(const Vector& x) const { return x * embed; }
  Vector from_ambient(const Vector& v) const { return space.coordinates(v); }
};

/// Algebra structure on a subspace closed under multiplication, with the given unit.
inline SubAlgebra restrict_to_subspace(const Algebra& a, const Subspace& s, const Vector& unit, bool verify = true) {
  std::vector<StructureConstant> sc;
  const std::size_t d = s.dim();
  for (std::size_t x = 0; x < d; ++x) {
    for (std::size_t y = 0; y < d; ++y) {
      Vector p = a.multiply(s.basis_vector(x), s.basis_vector(y));
      if (!s.contains(p)) throw NotClosed("subspace is not closed under multiplication");
      Vector c = s.coordinates(p);
      for (std::size_t z = 0; z < d; ++z)
        if (!c[z].is_zero()) sc.push_back({x, y, z, c[z]});
    }
  }
  if (!s.contains(unit)) throw NotClosed("unit does not lie in the subspace");
  Algebra sub(a.field(), d, sc, s.coordinates(unit), verify);
  Matrix embed(d, a.dim());
  for (std::size_t x = 0; x < d; ++x) embed.set_row(x, s.basis_vector(x));
  return SubAlgebra{std::move(sub), s, std::move(embed)};
}

/// The subspace e A f.
inline Subspace peirce_block(const Algebra& a, const Vector& e, const Vector& f) {
  Subspace s(a.dim());
  for (std::size_t i = 0; i < a.dim(); ++i) {
    Vector eb = a.multiply_basis_right(e, i);
    s.add(a.multiply(eb, f));
  }
  return s;
}

/// The corner e A e with unit e.
inline SubAlgebra corner_algebra(const Algebra& a, const Vector& e) {
  a.require_idempotent(e);
  return restrict_to_subspace(a, peirce_block(a, e, e), e);
}

struct QuotientAlgebra {
  Algebra algebra;
  Subspace ideal;
  std::vector<std::size_t> columns;  // ambient basis indices forming the quotient basis
  Matrix project;                    // dim A x dim Q, row i = image of b_i
  Matrix section;                    // dim Q x dim A, a linear lift

  Vector to_quotient(const Vector& v) const { return v * project; }
};

inline QuotientAlgebra quotient_algebra(const Algebra& a, const Subspace& ideal) {
  if (ideal.ambient_dim() != a.dim()) throw UsageError("ideal ambient dimension mismatch");
  require_ideal(a, ideal);
  auto cols = ideal.free_columns();
  const std::size_t q = cols.size();
  auto proj = [&](const Vector& v) {
    Vector r = ideal.reduce(v);
    Vector out(q, a.field().zero());
    for (std::size_t c = 0; c < q; ++c) out[c] = r[cols[c]];
    return out;
  };
  Matrix project(a.dim(), q);
  for (std::size_t i = 0; i < a.dim(); ++i) project.set_row(i, proj(a.basis_vector(i)));
  Matrix section(q, a.dim());
  for (std::size_t c = 0; c < q; ++c) section.set_row(c, a.basis_vector(cols[c]));
  std::vector<StructureConstant> sc;
  for (std::size_t x = 0; x < q; ++x)
    for (std::size_t y = 0; y < q; ++y) {
      Vector c = proj(a.basis_product(cols[x], cols[y]));
      for (std::size_t z = 0; z < q; ++z)
        if (!c[z].is_zero()) sc.push_back({x, y, z, c[z]});
    }
  Algebra quot(a.field(), q, sc, proj(a.unit()), false);
  return QuotientAlgebra{std::move(quot), ideal, std::move(cols), std::move(project), std::move(section)};
}

/// rad A as the kernel of the trace form (x, y) -> tr(R_{xy}); valid in
/// characteristic 0 or p > dim A. The result is checked to be a nilpotent ideal.
inline Subspace jacobson_radical(const Algebra& a) {
  const std::size_t n = a.dim();
  const Field& f = a.field();
  if (!f.is_rational() && f.characteristic() <= n)
    throw UnsupportedCharacteristic("radical needs p > dim: p = " + std::to_string(f.characteristic()) +
                                        ", dim = " + std::to_string(n),
                                    {static_cast<long long>(f.characteristic()), static_cast<long long>(n)});
  Vector tr(n, f.zero());
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (const auto& t : a.product_terms(i, k))
        if (t.index == i) tr[k] += t.coeff;
  Matrix gram(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Scalar s = f.zero();
      for (const auto& t : a.product_terms(i, j)) s += t.coeff * tr[t.index];
      gram(i, j) = s;
    }
  Subspace rad = Subspace::span(n, nullspace_basis(gram));
  require_ideal(a, rad);
  Subspace power = rad;
  for (std::size_t step = 0; power.dim() > 0; ++step) {
    if (step > n) throw InternalInconsistency("trace-form kernel is not nilpotent");
    power = subspace_product(a, power, rad);
  }
  return rad;
}

inline const Subspace& Algebra::radical() const {
  std::call_once(data_->radical_once, [this] { data_->radical = jacobson_radical(*this); });
  return *data_->radical;
}

/// Greedy generating set: basis vectors not already in the subalgebra
/// generated by the unit and earlier picks.
inline const std::vector<Vector>& Algebra::generators() const {
  std::call_once(data_->generators_once, [this] {
    Subspace sub(dim());
    std::vector<Vector> gens;
    auto close = [&] {
      std::vector<Vector> frontier = sub.basis();
      while (!frontier.empty()) {
        std::vector<Vector> next;
        for (const auto& v : frontier)
          for (const auto& g : gens) {
            Vector p = multiply(v, g);
            if (sub.add(p)) next.push_back(std::move(p));
          }
        frontier = std::move(next);
      }
    };
    if (dim() > 0) sub.add(unit());
    for (std::size_t i = 0; i < dim() && sub.dim() < dim(); ++i) {
      Vector b = basis_vector(i);
      if (sub.contains(b)) continue;
      gens.push_back(b);
      sub.add(b);
      close();
    }
    data_->generators = std::move(gens);
  });
  return data_->generators;
}

/// Checks that the row-convention matrix `m` (row i = image of b_i) is a unital
/// algebra homomorphism A -> B.
inline bool is_algebra_homomorphism(const Algebra& a, const Algebra& b, const Matrix& m) {
  if (m.rows() != a.dim() || m.cols() != b.dim()) return false;
  if (a.unit() * m != b.unit()) return false;
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j)
      if (a.basis_product(i, j) * m != b.multiply(m.row(i), m.row(j))) return false;
  return true;
}

inline bool is_algebra_isomorphism(const Algebra& a, const Algebra& b, const Matrix& m) {
  return a.dim() == b.dim() && rank(m) == a.dim() && is_algebra_homomorphism(a, b, m);
}

/// A x B with the basis of A first.
inline Algebra product_algebra(const Algebra& a, const Algebra& b) {
  if (a.field() != b.field()) throw FieldMismatch("product of algebras over different fields");
  std::vector<StructureConstant> sc = a.structure_constants();
  const std::size_t off = a.dim();
  for (const auto& c : b.structure_constants()) sc.push_back({c.i + off, c.j + off, c.k + off, c.c});
  Vector unit = a.unit();
  unit.insert(unit.end(), b.unit().begin(), b.unit().end());
  return Algebra(a.field(), a.dim() + b.dim(), sc, unit);
}

/// The field itself as a one-dimensional algebra.
inline Algebra ground_field_algebra(const Field& f) { return Algebra(f, 1, {{0, 0, 0, f.one()}}, {f.one()}); }

/// k[x]/(x^n) on the basis 1, x, ..., x^{n-1}.
inline Algebra truncated_polynomial_algebra(const Field& f, std::size_t n) {
  std::vector<StructureConstant> sc;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; i + j < n; ++j) sc.push_back({i, j, i + j, f.one()});
  Vector unit(n, f.zero());
  if (n > 0) unit[0] = f.one();
  return Algebra(f, n, sc, unit);
}

/// Full matrix algebra M_n(k) on matrix units E_ab, index a*n + b.
inline Algebra matrix_algebra(const Field& f, std::size_t n) {
  std::vector<StructureConstant> sc;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = 0; c < n; ++c) sc.push_back({a * n + b, b * n + c, a * n + c, f.one()});
  Vector unit(n * n, f.zero());
  for (std::size_t a = 0; a < n; ++a) unit[a * n + a] = f.one();
  return Algebra(f, n * n, sc, unit);
}

}  // namespace eqrec
