#pragma once

// Bound quiver algebras kQ/I and their representations.
//
// Paths compose left to right: p*q is "p then q" and is nonzero only when
// p ends where q starts. Right modules are then representations with one
// matrix V_s -> V_t per arrow s -> t.

#include <algorithm>
#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "eqrec/algebra.hpp"
#include "eqrec/errors.hpp"
#include "eqrec/module.hpp"

namespace eqrec {

struct Arrow {
  std::size_t source;
  std::size_t target;
  std::string name;
};

struct RelationTerm {
  Scalar coeff;
  std::vector<std::size_t> arrows;
};

using Relation = std::vector<RelationTerm>;

struct QuiverPresentation {
  std::size_t vertices = 0;
  std::vector<Arrow> arrows;
  std::vector<Relation> relations;
  std::size_t bound = 2;  // paths of length >= bound vanish
};

struct PathAlgebra {
  Algebra algebra;
  QuiverPresentation quiver;
  std::vector<std::string> labels;               // one per basis element
  std::vector<std::vector<std::size_t>> paths;   // arrow sequence per basis element
  std::vector<std::size_t> path_vertex;          // source vertex (used for trivial paths)
  std::vector<Vector> vertex_idempotents;
  std::vector<std::size_t> arrow_basis;          // basis index of each arrow

  /// Coordinates of e_v1 + e_v2 + ...
  Vector vertex_sum(const std::vector<std::size_t>& vs) const {
    Vector v(algebra.dim(), algebra.field().zero());
    for (auto x : vs) v = v + vertex_idempotents.at(x);
    return v;
  }
};

namespace detail {

struct PathKey {
  std::size_t source;
  std::vector<std::size_t> arrows;
  friend bool operator<(const PathKey& a, const PathKey& b) {
    if (a.arrows.size() != b.arrows.size()) return a.arrows.size() < b.arrows.size();
    if (a.arrows.empty()) return a.source < b.source;
    return a.arrows < b.arrows;
  }
};

}  // namespace detail

inline PathAlgebra path_algebra(const QuiverPresentation& q, const Field& field) {
  if (q.bound < 2) throw BoundTooSmall("nilpotency bound must be at least 2", {static_cast<long long>(q.bound)});
  for (const auto& a : q.arrows)
    if (a.source >= q.vertices || a.target >= q.vertices) throw UsageError("arrow endpoint out of range");

  // Enumerate paths of length < bound, grouped by length.
  std::vector<detail::PathKey> paths;
  for (std::size_t v = 0; v < q.vertices; ++v) paths.push_back({v, {}});
  std::vector<detail::PathKey> layer;
  for (std::size_t a = 0; a < q.arrows.size(); ++a) layer.push_back({q.arrows[a].source, {a}});
  for (std::size_t len = 1; len < q.bound && !layer.empty(); ++len) {
    std::sort(layer.begin(), layer.end());
    paths.insert(paths.end(), layer.begin(), layer.end());
    std::vector<detail::PathKey> next;
    for (const auto& p : layer)
      for (std::size_t a = 0; a < q.arrows.size(); ++a)
        if (q.arrows[p.arrows.back()].target == q.arrows[a].source) {
          auto ext = p.arrows;
          ext.push_back(a);
          next.push_back({p.source, std::move(ext)});
        }
    layer = std::move(next);
  }
  std::map<detail::PathKey, std::size_t> index;
  for (std::size_t i = 0; i < paths.size(); ++i) index[paths[i]] = i;
  const std::size_t np = paths.size();
  auto target_of = [&](const detail::PathKey& p) {
    return p.arrows.empty() ? p.source : q.arrows[p.arrows.back()].target;
  };

  // Ideal generated by the relations, truncated at the bound. Coordinates are
  // reversed so that elimination pivots on the longest paths and short paths
  // survive as basis elements.
  auto rev = [&](std::size_t i) { return np - 1 - i; };
  std::vector<Vector> gens;
  for (std::size_t r = 0; r < q.relations.size(); ++r) {
    const auto& rel = q.relations[r];
    std::size_t s = 0, t = 0;
    Vector v(np, field.zero());
    for (std::size_t k = 0; k < rel.size(); ++k) {
      const auto& term = rel[k];
      if (term.arrows.size() < 2)
        throw RelationNotParallel("relation " + std::to_string(r) + " has a term of length < 2",
                                  {static_cast<long long>(r), static_cast<long long>(k)});
      for (std::size_t x = 0; x < term.arrows.size(); ++x) {
        if (term.arrows[x] >= q.arrows.size()) throw UsageError("relation uses an unknown arrow");
        if (x > 0 && q.arrows[term.arrows[x - 1]].target != q.arrows[term.arrows[x]].source)
          throw RelationNotParallel("relation " + std::to_string(r) + " has a non-composable term",
                                    {static_cast<long long>(r), static_cast<long long>(k)});
      }
      std::size_t ts = q.arrows[term.arrows.front()].source, tt = q.arrows[term.arrows.back()].target;
      if (k == 0) {
        s = ts;
        t = tt;
      } else if (ts != s || tt != t) {
        throw RelationNotParallel("relation " + std::to_string(r) + " mixes non-parallel paths",
                                  {static_cast<long long>(r), static_cast<long long>(k)});
      }
      if (term.arrows.size() < q.bound) {
        auto it = index.find({ts, term.arrows});
        v[rev(it->second)] += field.coerce(term.coeff);
      }
    }
    gens.push_back(std::move(v));
  }
  Subspace ideal(np);
  std::vector<Vector> frontier;
  for (const auto& g : gens)
    if (ideal.add(g)) frontier.push_back(g);
  while (!frontier.empty()) {
    std::vector<Vector> next;
    for (const auto& v : frontier)
      for (std::size_t a = 0; a < q.arrows.size(); ++a) {
        Vector left(np, field.zero()), right(np, field.zero());
        for (std::size_t i = 0; i < np; ++i) {
          const Scalar& c = v[rev(i)];
          if (c.is_zero()) continue;
          const auto& p = paths[i];
          if (p.arrows.size() + 1 >= q.bound) continue;
          if (target_of(p) == q.arrows[a].source) {
            auto ext = p.arrows;
            ext.push_back(a);
            right[rev(index.at({p.source, ext}))] += c;
          }
          if (q.arrows[a].target == p.source) {
            std::vector<std::size_t> ext{a};
            ext.insert(ext.end(), p.arrows.begin(), p.arrows.end());
            left[rev(index.at({q.arrows[a].source, ext}))] += c;
          }
        }
        if (ideal.add(right)) next.push_back(std::move(right));
        if (ideal.add(left)) next.push_back(std::move(left));
      }
    frontier = std::move(next);
  }

  std::vector<std::size_t> basis;  // path indices surviving in the quotient, ascending
  for (auto c : ideal.free_columns()) basis.push_back(rev(c));
  std::sort(basis.begin(), basis.end());
  std::vector<std::size_t> position(np, np);
  for (std::size_t b = 0; b < basis.size(); ++b) position[basis[b]] = b;
  const std::size_t d = basis.size();

  auto reduce_path = [&](std::size_t path) {
    Vector v(np, field.zero());
    v[rev(path)] = field.one();
    Vector r = ideal.reduce(v);
    Vector out(d, field.zero());
    for (std::size_t i = 0; i < np; ++i)
      if (!r[rev(i)].is_zero()) out[position[i]] = r[rev(i)];
    return out;
  };

  std::vector<StructureConstant> sc;
  for (std::size_t x = 0; x < d; ++x)
    for (std::size_t y = 0; y < d; ++y) {
      const auto& p = paths[basis[x]];
      const auto& r = paths[basis[y]];
      if (target_of(p) != r.source) continue;
      if (p.arrows.size() + r.arrows.size() >= q.bound) continue;
      std::vector<std::size_t> cat = p.arrows;
      cat.insert(cat.end(), r.arrows.begin(), r.arrows.end());
      Vector c = reduce_path(index.at({p.source, cat}));
      for (std::size_t z = 0; z < d; ++z)
        if (!c[z].is_zero()) sc.push_back({x, y, z, c[z]});
    }
  Vector unit(d, field.zero());
  for (std::size_t v = 0; v < q.vertices; ++v) unit[position[v]] = field.one();

  PathAlgebra out{Algebra(field, d, sc, unit), q, {}, {}, {}, {}, {}};
  for (std::size_t b : basis) {
    const auto& p = paths[b];
    out.paths.push_back(p.arrows);
    out.path_vertex.push_back(p.source);
    if (p.arrows.empty()) {
      out.labels.push_back("e" + std::to_string(p.source));
    } else {
      std::string s;
      for (std::size_t x = 0; x < p.arrows.size(); ++x) {
        if (x) s += "*";
        s += q.arrows[p.arrows[x]].name.empty() ? "a" + std::to_string(p.arrows[x]) : q.arrows[p.arrows[x]].name;
      }
      out.labels.push_back(s);
    }
  }
  for (std::size_t v = 0; v < q.vertices; ++v) out.vertex_idempotents.push_back(out.algebra.basis_vector(position[v]));
  for (std::size_t a = 0; a < q.arrows.size(); ++a) {
    std::size_t idx = index.at({q.arrows[a].source, {a}});
    if (position[idx] == np) throw InternalInconsistency("an arrow fell into the relation ideal");
    out.arrow_basis.push_back(position[idx]);
  }
  return out;
}

/// Quiver representation: a space per vertex and a row-convention matrix
/// (dim V_s x dim V_t) per arrow s -> t.
struct Representation {
  std::vector<std::size_t> dims;
  std::vector<Matrix> maps;
};

/// The right module of a representation, on V_0 + V_1 + ... in vertex order.
inline RightModule representation_module(const PathAlgebra& pa, const Representation& rep, bool verify = true) {
  const auto& q = pa.quiver;
  const Field& f = pa.algebra.field();
  if (rep.dims.size() != q.vertices || rep.maps.size() != q.arrows.size())
    throw UsageError("representation does not match the quiver");
  std::vector<std::size_t> offset(q.vertices + 1, 0);
  for (std::size_t v = 0; v < q.vertices; ++v) offset[v + 1] = offset[v] + rep.dims[v];
  const std::size_t n = offset[q.vertices];
  for (std::size_t a = 0; a < q.arrows.size(); ++a)
    if (rep.maps[a].rows() != rep.dims[q.arrows[a].source] || rep.maps[a].cols() != rep.dims[q.arrows[a].target])
      throw UsageError("arrow map " + std::to_string(a) + " has the wrong shape");
  std::vector<Matrix> act;
  for (std::size_t b = 0; b < pa.algebra.dim(); ++b) {
    Matrix m = zero_matrix(n, n, f);
    const auto& p = pa.paths[b];
    if (p.empty()) {
      std::size_t v = pa.path_vertex[b];
      for (std::size_t i = offset[v]; i < offset[v + 1]; ++i) m(i, i) = f.one();
    } else {
      Matrix prod = rep.maps[p.front()];
      for (std::size_t x = 1; x < p.size(); ++x) prod = prod * rep.maps[p[x]];
      m.set_block(offset[q.arrows[p.front()].source], offset[q.arrows[p.back()].target], prod);
    }
    act.push_back(std::move(m));
  }
  return RightModule(pa.algebra, n, std::move(act), verify);
}

/// Simple module at vertex v.
inline RightModule simple_module(const PathAlgebra& pa, std::size_t v) {
  Representation rep;
  rep.dims.assign(pa.quiver.vertices, 0);
  rep.dims[v] = 1;
  for (const auto& a : pa.quiver.arrows) rep.maps.emplace_back(rep.dims[a.source], rep.dims[a.target]);
  return representation_module(pa, rep);
}

/// Indecomposable projective e_v A as a submodule of the regular module.
inline RightModule vertex_projective(const PathAlgebra& pa, std::size_t v) {
  const Algebra& a = pa.algebra;
  Subspace s(a.dim());
  for (std::size_t i = 0; i < a.dim(); ++i) s.add(a.multiply_basis_right(pa.vertex_idempotents[v], i));
  return submodule(regular_module(a), s);
}

/// Dimension vector of a module: dim M e_v per vertex.
inline std::vector<std::size_t> dimension_vector(const PathAlgebra& pa, const RightModule& m) {
  std::vector<std::size_t> out;
  for (const auto& e : pa.vertex_idempotents) out.push_back(rank(m.action_of(e)));
  return out;
}

}  // namespace eqrec
