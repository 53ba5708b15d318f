#pragma once

// Free covers, syzygies, projective dimension, and Ext/Tor dimensions from
// free resolutions.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "eqrec/algebra.hpp"
#include "eqrec/linalg.hpp"
#include "eqrec/module.hpp"

namespace eqrec {

/// Projective dimension measured against an explicit cutoff.
struct PdResult {
  enum class Kind { Finite, ExceedsBound };
  Kind kind = Kind::Finite;
  std::size_t value = 0;  // n for Finite(n), the bound for ExceedsBound

  static PdResult finite(std::size_t n) { return {Kind::Finite, n}; }
  static PdResult exceeds(std::size_t bound) { return {Kind::ExceedsBound, bound}; }

  bool is_finite() const { return kind == Kind::Finite; }
  std::string to_string() const {
    return (is_finite() ? "Finite(" : "ExceedsBound(") + std::to_string(value) + ")";
  }
  friend bool operator==(const PdResult& a, const PdResult& b) { return a.kind == b.kind && a.value == b.value; }
  friend bool operator!=(const PdResult& a, const PdResult& b) { return !(a == b); }
};

struct CoverOptions {
  bool redundant_generator = false;  // append a copy of the first generator
  std::uint64_t seed = 0x5eed;
};

/// A surjection A^g -> M. The generator images x_k are vectors of M; the
/// element sum_k eps_k * f_k of A^g maps to sum_k x_k f_k.
struct FreeCover {
  std::size_t generators = 0;
  std::vector<Vector> images;
  Matrix map;       // (g dim A) x dim M, row (k, i) = x_k rho(b_i)
  Subspace kernel;  // inside A^g
};

namespace detail {

inline Vector random_combination(std::size_t n, std::mt19937_64& rng, const Field& f) {
  Vector v(n, f.zero());
  for (auto& x : v) x = f.from_int(static_cast<long long>(rng() % 7) - 3);
  return v;
}

/// Span of x A inside M.
inline std::vector<Vector> cyclic_span(const RightModule& m, const Vector& x) {
  std::vector<Vector> out;
  for (const auto& a : m.actions()) out.push_back(x * a);
  return out;
}

}  // namespace detail

/// Free cover with a small generator set. Generators are picked greedily from
/// standard vectors and seeded random vectors, each time taking the candidate
/// that enlarges M rad A + (generated part) the most.
inline FreeCover free_cover(const RightModule& m, const CoverOptions& opt = {}) {
  const Algebra& a = m.algebra();
  const Field& f = m.field();
  const std::size_t dm = m.dim(), da = a.dim();
  Subspace covered = module_radical(m);
  std::vector<Vector> gens;
  std::mt19937_64 rng(opt.seed);
  while (covered.dim() < dm) {
    std::vector<Vector> candidates;
    for (std::size_t c : covered.free_columns()) candidates.push_back(unit_vector(dm, c, f));
    for (int r = 0; r < 4; ++r) candidates.push_back(detail::random_combination(dm, rng, f));
    std::size_t best = 0, best_dim = covered.dim();
    Subspace best_space;
    for (std::size_t c = 0; c < candidates.size(); ++c) {
      Subspace s = covered;
      for (const auto& v : detail::cyclic_span(m, candidates[c])) s.add(v);
      if (s.dim() > best_dim) {
        best = c;
        best_dim = s.dim();
        best_space = std::move(s);
        if (best_dim == dm) break;
      }
    }
    if (best_dim == covered.dim()) throw InternalInconsistency("free cover made no progress");
    gens.push_back(candidates[best]);
    covered = std::move(best_space);
  }
  if (opt.redundant_generator) gens.push_back(gens.empty() ? zero_vector(dm) : gens.front());
  for (auto& v : gens)
    for (auto& x : v) x = f.coerce(x);

  FreeCover cover;
  cover.generators = gens.size();
  cover.map = Matrix(gens.size() * da, dm);
  for (std::size_t k = 0; k < gens.size(); ++k)
    for (std::size_t i = 0; i < da; ++i) cover.map.set_row(k * da + i, gens[k] * m.action(i));
  if (rank(cover.map) != dm) throw InternalInconsistency("free cover is not surjective");
  cover.kernel = Subspace::span(gens.size() * da, left_nullspace_basis(cover.map));
  cover.images = std::move(gens);
  return cover;
}

/// f * b_j for f in A^g, computed blockwise.
inline Vector free_times_basis(const Algebra& a, const Vector& f, std::size_t j) {
  const std::size_t da = a.dim();
  Vector out(f.size(), a.field().zero());
  for (std::size_t k = 0; k * da < f.size(); ++k)
    for (std::size_t i = 0; i < da; ++i) {
      const Scalar& c = f[k * da + i];
      if (c.is_zero()) continue;
      for (const auto& t : a.product_terms(i, j)) out[k * da + t.index] += c * t.coeff;
    }
  return out;
}

/// f * a for f in A^g and a in A.
inline Vector free_times(const Algebra& a, const Vector& f, const Vector& x) {
  Vector out(f.size(), a.field().zero());
  for (std::size_t j = 0; j < a.dim(); ++j)
    if (!x[j].is_zero()) axpy(out, x[j], free_times_basis(a, f, j));
  return out;
}

/// The submodule of A^g carried by `s`, on the echelon basis of `s`.
inline RightModule free_submodule(const Algebra& a, const Subspace& s) {
  const std::size_t d = s.dim();
  std::vector<Matrix> act;
  for (std::size_t j = 0; j < a.dim(); ++j) {
    Matrix m(d, d);
    for (std::size_t v = 0; v < d; ++v) m.set_row(v, s.coordinates(free_times_basis(a, s.basis_vector(v), j)));
    act.push_back(std::move(m));
  }
  return RightModule(a, d, std::move(act), false);
}

/// Kernel of a free cover of M.
inline RightModule syzygy(const RightModule& m, const CoverOptions& opt = {}) {
  return free_submodule(m.algebra(), free_cover(m, opt).kernel);
}

namespace detail {

/// M is projective iff the inclusion K -> A^g has a module retraction. A
/// retraction is fixed by the images y_k in K of the free generators and must
/// send each module generator of K to itself.
inline bool projective_by_retraction(const Algebra& a, const FreeCover& cover) {
  const Subspace& k = cover.kernel;
  if (k.dim() == 0) return true;
  const std::size_t g = cover.generators, da = a.dim(), dk = k.dim();
  RightModule km = free_submodule(a, k);
  FreeCover kc = free_cover(km);
  // Unknowns: y_k in K coordinates, index k * dk + c.
  // Equation for generator z of K (z = sum_k eps_k a_k): sum_k y_k rho_K(a_k) = z.
  Matrix lhs(kc.generators * dk, g * dk);
  Vector rhs(kc.generators * dk, a.field().zero());
  for (std::size_t j = 0; j < kc.generators; ++j) {
    Vector z = k.combine(kc.images[j]);
    for (std::size_t b = 0; b < g; ++b) {
      Vector coeff(z.begin() + static_cast<std::ptrdiff_t>(b * da),
                   z.begin() + static_cast<std::ptrdiff_t>((b + 1) * da));
      Matrix act = km.action_of(coeff);
      for (std::size_t r = 0; r < dk; ++r)
        for (std::size_t c = 0; c < dk; ++c) lhs(j * dk + c, b * dk + r) = act(r, c);
    }
    for (std::size_t c = 0; c < dk; ++c) rhs[j * dk + c] = kc.images[j][c];
  }
  return solve_linear(lhs, rhs).has_value();
}

/// Tor_1(M, A/rad A) = (K meet F rad A) / (K rad A).
inline bool projective_by_tor(const Algebra& a, const FreeCover& cover) {
  const Subspace& k = cover.kernel;
  if (k.dim() == 0) return true;
  const Subspace& rad = a.radical();
  const std::size_t g = cover.generators, da = a.dim();
  Subspace frad(g * da);
  for (std::size_t b = 0; b < g; ++b)
    for (const auto& r : rad.basis()) {
      Vector v(g * da, a.field().zero());
      for (std::size_t i = 0; i < da; ++i) v[b * da + i] = r[i];
      frad.add(v);
    }
  Subspace krad(g * da);
  for (const auto& v : k.basis())
    for (const auto& r : rad.basis()) krad.add(free_times(a, v, r));
  return k.intersect(frad).dim() == krad.dim();
}

}  // namespace detail

/// Decides projectivity by two independent routes and insists they agree.
inline bool is_projective(const RightModule& m, const CoverOptions& opt = {}) {
  FreeCover cover = free_cover(m, opt);
  bool by_retraction = detail::projective_by_retraction(m.algebra(), cover);
  bool by_tor = detail::projective_by_tor(m.algebra(), cover);
  if (by_retraction != by_tor) throw InternalInconsistency("projectivity routes disagree");
  if (cover.kernel.dim() == 0 && !by_retraction) throw InternalInconsistency("zero syzygy but not projective");
  return by_retraction;
}

/// First n with Omega^n M projective, searched up to `bound`.
inline PdResult projective_dimension(const RightModule& m, std::size_t bound, const CoverOptions& opt = {}) {
  RightModule x = m;
  for (std::size_t n = 0;; ++n) {
    FreeCover cover = free_cover(x, opt);
    bool proj = detail::projective_by_retraction(x.algebra(), cover);
    if (proj != detail::projective_by_tor(x.algebra(), cover))
      throw InternalInconsistency("projectivity routes disagree");
    if (proj) return PdResult::finite(n);
    if (n == bound) return PdResult::exceeds(bound);
    x = free_submodule(x.algebra(), cover.kernel);
  }
}

/// pd of A / rad A, which is the global dimension of A.
inline PdResult global_dimension_upper(const Algebra& a, std::size_t bound) {
  return projective_dimension(top_of_algebra(a), bound);
}

/// F_len -> ... -> F_1 -> F_0 -> M with F_i = A^{g_i}.
struct FreeResolution {
  Algebra algebra;
  std::vector<std::size_t> ranks;        // g_0 .. g_len
  std::vector<Vector> augmentation;      // images of the generators of F_0 in M
  std::vector<std::vector<Vector>> differentials;  // [i-1][j] = d_i(eps_j) in F_{i-1}, for i >= 1

  std::size_t length() const { return ranks.empty() ? 0 : ranks.size() - 1; }

  /// Coefficient a_kj in A of d_i(eps_j) along eps_k.
  Vector coefficient(std::size_t i, std::size_t k, std::size_t j) const {
    const Vector& v = differentials[i - 1][j];
    const std::size_t da = algebra.dim();
    return Vector(v.begin() + static_cast<std::ptrdiff_t>(k * da), v.begin() + static_cast<std::ptrdiff_t>((k + 1) * da));
  }

  /// Linear matrix of d_i: row (j, b) = d_i(eps_j) * b_b.
  Matrix linear_differential(std::size_t i) const {
    const std::size_t da = algebra.dim();
    Matrix d(ranks[i] * da, ranks[i - 1] * da);
    for (std::size_t j = 0; j < ranks[i]; ++j)
      for (std::size_t b = 0; b < da; ++b) d.set_row(j * da + b, free_times_basis(algebra, differentials[i - 1][j], b));
    return d;
  }
};

inline FreeResolution free_resolution(const RightModule& m, std::size_t length, const CoverOptions& opt = {}) {
  FreeResolution res;
  res.algebra = m.algebra();
  FreeCover cover = free_cover(m, opt);
  res.ranks.push_back(cover.generators);
  res.augmentation = cover.images;
  for (std::size_t i = 1; i <= length; ++i) {
    Subspace k = cover.kernel;
    RightModule km = free_submodule(m.algebra(), k);
    cover = free_cover(km, opt);
    std::vector<Vector> d;
    for (const auto& z : cover.images) d.push_back(k.combine(z));
    res.ranks.push_back(cover.generators);
    res.differentials.push_back(std::move(d));
  }
  return res;
}

/// Checks d_{i} d_{i+1} = 0 and exactness at every interior term, plus
/// surjectivity of the augmentation.
inline bool verify_resolution(const FreeResolution& res, const RightModule& m) {
  const Algebra& a = res.algebra;
  const std::size_t da = a.dim();
  Matrix aug(res.ranks[0] * da, m.dim());
  for (std::size_t k = 0; k < res.ranks[0]; ++k)
    for (std::size_t i = 0; i < da; ++i) aug.set_row(k * da + i, res.augmentation[k] * m.action(i));
  if (rank(aug) != m.dim()) return false;
  Matrix prev = aug;
  for (std::size_t i = 1; i <= res.length(); ++i) {
    Matrix d = res.linear_differential(i);
    if (!(d * prev).is_zero()) return false;
    if (prev.rows() - rank(prev) != rank(d)) return false;
    prev = std::move(d);
  }
  return true;
}

/// Coboundary Hom(F_{i-1}, N) -> Hom(F_i, N) on N^{g_{i-1}} -> N^{g_i}.
inline Matrix hom_coboundary(const FreeResolution& res, const RightModule& n, std::size_t i) {
  const std::size_t dn = n.dim();
  Matrix d = zero_matrix(res.ranks[i - 1] * dn, res.ranks[i] * dn, n.field());
  for (std::size_t k = 0; k < res.ranks[i - 1]; ++k)
    for (std::size_t j = 0; j < res.ranks[i]; ++j) d.set_block(k * dn, j * dn, n.action_of(res.coefficient(i, k, j)));
  return d;
}

inline std::size_t ext_dim_from(const FreeResolution& res, const RightModule& n, std::size_t deg) {
  if (res.length() < deg + 1) throw UsageError("resolution too short for Ext^" + std::to_string(deg));
  std::size_t cochains = res.ranks[deg] * n.dim();
  std::size_t rank_out = rank(hom_coboundary(res, n, deg + 1));
  std::size_t rank_in = deg == 0 ? 0 : rank(hom_coboundary(res, n, deg));
  return cochains - rank_out - rank_in;
}

inline std::size_t ext_dim(const RightModule& m, const RightModule& n, std::size_t deg) {
  return ext_dim_from(free_resolution(m, deg + 1), n, deg);
}

/// All of Ext^0 .. Ext^kmax from one resolution.
inline std::vector<std::size_t> ext_dims(const RightModule& m, const RightModule& n, std::size_t kmax) {
  FreeResolution res = free_resolution(m, kmax + 1);
  std::vector<std::size_t> ranks(kmax + 2, 0);
  for (std::size_t i = 1; i <= kmax + 1; ++i) ranks[i] = rank(hom_coboundary(res, n, i));
  std::vector<std::size_t> out;
  for (std::size_t deg = 0; deg <= kmax; ++deg) out.push_back(res.ranks[deg] * n.dim() - ranks[deg + 1] - ranks[deg]);
  return out;
}

/// Hom_A(M, N) read off a presentation F_1 -> F_0 -> M: kernel of the first
/// coboundary, turned into matrices through a linear section of the cover.
inline std::vector<Matrix> hom_space(const RightModule& m, const RightModule& n) {
  const Field& f = m.field();
  if (m.dim() == 0 || n.dim() == 0) return {};
  FreeResolution res = free_resolution(m, 1);
  const Algebra& a = m.algebra();
  const std::size_t da = a.dim(), dn = n.dim(), g0 = res.ranks[0];
  Matrix cover(g0 * da, m.dim());
  for (std::size_t k = 0; k < g0; ++k)
    for (std::size_t i = 0; i < da; ++i) cover.set_row(k * da + i, res.augmentation[k] * m.action(i));
  // section: dim M x (g0 dim A) with section * cover = I
  auto sec = solve_linear_multi(cover.transpose(), Matrix::identity(m.dim(), f));
  if (!sec) throw InternalInconsistency("cover has no linear section");
  Matrix section = sec->transpose();
  Matrix d1 = hom_coboundary(res, n, 1);
  std::vector<Matrix> out;
  for (const auto& v : left_nullspace_basis(d1)) {
    // phi(eps_k b_i) = n_k rho_N(b_i)
    Matrix images(g0 * da, dn);
    for (std::size_t k = 0; k < g0; ++k) {
      Vector nk(v.begin() + static_cast<std::ptrdiff_t>(k * dn), v.begin() + static_cast<std::ptrdiff_t>((k + 1) * dn));
      for (std::size_t i = 0; i < da; ++i) images.set_row(k * da + i, nk * n.action(i));
    }
    out.push_back(section * images);
  }
  return out;
}

/// Searches Hom(M, N) for an invertible element using seeded random
/// combinations; the result is certified to be a module isomorphism.
inline std::optional<Matrix> find_isomorphism(const RightModule& m, const RightModule& n, std::uint64_t seed = 0x5eed,
                                              int tries = 20) {
  if (m.dim() != n.dim()) return std::nullopt;
  if (m.dim() == 0) return Matrix(0, 0);
  auto hom = hom_space(m, n);
  if (hom.empty()) return std::nullopt;
  std::mt19937_64 rng(seed);
  const Field& f = m.field();
  for (int t = 0; t < tries; ++t) {
    Matrix phi = zero_matrix(m.dim(), n.dim(), f);
    for (const auto& h : hom) phi = phi + f.from_int(static_cast<long long>(rng() % 201) - 100) * h;
    if (rank(phi) == m.dim() && is_module_map(m, n, phi)) return phi;
  }
  return std::nullopt;
}

/// Tor_deg^B(X, P) for a right B-module X and a B-A-bimodule P, from a free
/// resolution of X tensored with P.
inline std::vector<std::size_t> tor_dims(const RightModule& x, const Bimodule& p, std::size_t imax) {
  if (x.algebra().dim() != p.left_algebra().dim()) throw UsageError("Tor: bimodule is over a different algebra");
  FreeResolution res = free_resolution(x, imax + 1);
  const std::size_t dp = p.dim();
  auto boundary = [&](std::size_t i) {
    Matrix t = zero_matrix(res.ranks[i] * dp, res.ranks[i - 1] * dp, x.field());
    for (std::size_t j = 0; j < res.ranks[i]; ++j)
      for (std::size_t k = 0; k < res.ranks[i - 1]; ++k) t.set_block(j * dp, k * dp, p.left_of(res.coefficient(i, k, j)));
    return t;
  };
  std::vector<std::size_t> ranks(imax + 2, 0);
  for (std::size_t i = 1; i <= imax + 1; ++i) ranks[i] = rank(boundary(i));
  std::vector<std::size_t> out;
  for (std::size_t n = 0; n <= imax; ++n) out.push_back(res.ranks[n] * dp - ranks[n] - ranks[n + 1]);
  return out;
}

inline std::size_t tor_dim(const RightModule& x, const Bimodule& p, std::size_t n) { return tor_dims(x, p, n)[n]; }

/// dim X tensor_B P as the quotient of X tensor_k P by the balancing relations.
inline std::size_t tensor_dim_direct(const RightModule& x, const Bimodule& p) {
  const std::size_t dx = x.dim(), dp = p.dim();
  if (dx == 0 || dp == 0) return 0;
  const auto& gens = x.algebra().generators();
  Matrix rel = zero_matrix(gens.size() * dx * dp, dx * dp, x.field());
  std::size_t row = 0;
  for (const auto& b : gens) {
    Matrix rb = x.action_of(b);
    Matrix lb = p.left_of(b);
    for (std::size_t u = 0; u < dx; ++u)
      for (std::size_t v = 0; v < dp; ++v, ++row) {
        for (std::size_t w = 0; w < dx; ++w)
          if (!rb(u, w).is_zero()) rel(row, w * dp + v) += rb(u, w);
        for (std::size_t w = 0; w < dp; ++w)
          if (!lb(v, w).is_zero()) rel(row, u * dp + w) -= lb(v, w);
      }
  }
  return dx * dp - rank(rel);
}

}  // namespace eqrec
