#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "sraniso/artinian.hpp"
#include "sraniso/bracket.hpp"
#include "sraniso/complex.hpp"
#include "sraniso/diffop.hpp"
#include "sraniso/error.hpp"
#include "sraniso/graded.hpp"
#include "sraniso/polynomial.hpp"
#include "sraniso/psi.hpp"
#include "sraniso/rational.hpp"
#include "sraniso/sampling.hpp"

namespace sraniso {

namespace detail {

inline std::vector<Face> sorted_faces(const SimplicialComplex& d, int size) {
  if (size == 0) return {Face{}};
  std::vector<Face> out = d.faces_of_size(size);
  std::sort(out.begin(), out.end());
  return out;
}

inline std::vector<int> concat(std::initializer_list<const Face*> parts) {
  std::vector<int> v;
  for (const Face* f : parts) v.insert(v.end(), f->begin(), f->end());
  std::sort(v.begin(), v.end());
  return v;
}

/// Psi pi(x_extra * u) for u a combination of square-free monomials, with extra a multiset of vertices.
inline RationalFunction psi_times(const ReductionContext& ctx, const ElementRep& u, const std::vector<int>& extra) {
  RationalFunction sum = RationalFunction::zero(ctx.p());
  for (const auto& [f, c] : u.terms) {
    std::vector<int> mono = extra;
    mono.insert(mono.end(), f.begin(), f.end());
    std::sort(mono.begin(), mono.end());
    if (!ctx.complex().is_face(support_of(mono))) continue;
    sum += c * psi_monomial(ctx, mono);
  }
  return sum;
}

}  // namespace detail

/// Image of u in one random specialisation of A, as a coordinate vector of the graded piece.
inline bool is_nonzero_at(const ReductionContext& ctx, const ElementRep& u, const FiniteField& f, std::uint64_t seed) {
  RandomPoint pt(f, seed);
  GradedQuotient q(f, ctx.complex(), specialized_forms(ctx, pt));
  FieldVector v(q.monomials(u.degree).size(), 0);
  for (const auto& [face, c] : u.terms) {
    const auto k = q.index_of(u.degree, face);
    v[k] = f.add(v[k], c.evaluate(f, pt));
  }
  return !q.is_zero(u.degree, v);
}

/// Whether u is nonzero in A, decided by the randomized rank backend (two agreeing seeds).
inline bool is_nonzero_in_algebra(const ReductionContext& ctx, const ElementRep& u, const std::vector<std::uint64_t>& seeds = {1, 2}) {
  if (u.is_zero()) return false;
  FiniteField f(ctx.field().p, ctx.field().w);
  std::function<bool(std::uint64_t)> run = [&](std::uint64_t s) { return is_nonzero_at(ctx, u, f, s); };
  return agree_over_seeds(seeds, run);
}

/// Square-free monomials of degree d forming a basis of A_d (greedy in lexicographic order, two agreeing seeds).
inline std::vector<Face> squarefree_basis(const ReductionContext& ctx, int degree, const std::vector<std::uint64_t>& seeds = {1, 2}) {
  if (degree < 0 || degree > ctx.n() + 1) return {};
  FiniteField f(ctx.field().p, ctx.field().w);
  const auto candidates = detail::sorted_faces(ctx.complex(), degree);
  std::function<std::vector<Face>(std::uint64_t)> run = [&](std::uint64_t s) {
    RandomPoint pt(f, s);
    GradedQuotient q(f, ctx.complex(), specialized_forms(ctx, pt));
    EchelonBasis span = q.relations(degree);
    std::vector<Face> out;
    for (const auto& c : candidates)
      if (span.insert(q.monomial_vector(degree, c))) out.push_back(c);
    return out;
  };
  return agree_over_seeds(seeds, run);
}

/// A witness that (pi(u))^2 != 0 in characteristic 2.
struct SquareCertificate {
  Face sigma;
  std::optional<int> p;  ///< the linear vertex when n is even
  Face h;
  RationalFunction value{2};  ///< Psi pi(x_sigma u h) or Psi pi(x_sigma u h x_p), nonzero
};

/**
 * \brief Searches h (square-free, complementary degree) and sigma (and p for even n) with a nonzero Psi value.
 *
 * The value equals the square root of the derivative of Psi pi((uh)^2) (or of
 * Psi pi((uh)^2 x_p)), so it certifies that the square of u is nonzero.
 * Search order: h ascending, then sigma ascending, then p ascending.
 */
inline SquareCertificate nonzero_square_certificate(const ReductionContext& ctx, const ElementRep& u,
                                                    const std::vector<std::uint64_t>& seeds = {1, 2}) {
  if (ctx.p() != 2) fail(ErrorKind::CharNot2, "square certificates are built in characteristic 2");
  const int n = ctx.n();
  const int l = n % 2 ? (n + 1) / 2 : n / 2;
  if (u.degree < 0 || u.degree > l) fail(ErrorKind::WrongDegree, "u must have degree at most l");
  if (!is_nonzero_in_algebra(ctx, u, seeds)) fail(ErrorKind::ZeroInput, "u is zero in A");
  const auto& d = ctx.complex();
  const int sigma_size = n % 2 ? l : l + 1;
  const auto sigmas = detail::sorted_faces(d, sigma_size);
  for (const auto& h : detail::sorted_faces(d, l - u.degree)) {
    for (const auto& s : sigmas) {
      RationalFunction v = detail::psi_times(ctx, u, detail::concat({&s, &h}));
      if (v.is_zero()) continue;
      SquareCertificate cert;
      cert.h = h;
      cert.value = std::move(v);
      if (n % 2) {
        cert.sigma = s;
      } else {
        cert.p = s.front();
        cert.sigma = face_difference(s, {s.front()});
      }
      return cert;
    }
  }
  fail(ErrorKind::NoCertificateFound, "no face gives a nonzero value for " + u.to_string());
}

/// Recomputes the derivative side for a certificate: d(Psi pi((uh)^2 [x_p])) against value^2.
inline bool certificate_derivative_matches(const ReductionContext& ctx, const ElementRep& u, const SquareCertificate& cert) {
  const DiffOperator op = cert.p ? build_op_p_sigma(ctx.complex(), *cert.p, cert.sigma) : build_op_sigma(ctx, cert.sigma);
  RationalFunction sq = RationalFunction::zero(2);
  for (const auto& [f, c] : u.terms) {
    std::vector<int> mono = detail::concat({&f, &f, &cert.h, &cert.h});
    if (cert.p) mono.push_back(*cert.p);
    std::sort(mono.begin(), mono.end());
    if (!ctx.complex().is_face(support_of(mono))) continue;
    sq += c.square() * psi_monomial(ctx, mono);
  }
  return rf_equals(apply(op, sq), cert.value.square());
}

/// Certificates for random k-combinations of a square-free basis of A_d; a sampled, probabilistic check.
struct SampledCertificates {
  int samples = 0;
  int certified = 0;
  std::vector<ElementRep> elements;
};

inline SampledCertificates sample_combination_certificates(const ReductionContext& ctx, int degree, int samples,
                                                           std::uint64_t seed, const std::vector<std::uint64_t>& seeds = {1, 2}) {
  const auto basis = squarefree_basis(ctx, degree, seeds);
  SampledCertificates out;
  std::uint64_t state = seed;
  std::vector<int> cols(static_cast<std::size_t>(ctx.m()));
  for (int c = 1; c <= ctx.m(); ++c) cols[static_cast<std::size_t>(c - 1)] = c;
  for (int k = 0; k < samples; ++k) {
    ElementRep u{degree, {}};
    for (const auto& b : basis) {
      state = splitmix64(state);
      if (state % 3 == 0) continue;
      RationalFunction lambda = RationalFunction::one(ctx.p());
      if (state % 3 == 1) {
        std::vector<int> pick = cols;
        for (std::size_t i = pick.size(); i > 1; --i) {
          state = splitmix64(state);
          std::swap(pick[i - 1], pick[state % i]);
        }
        pick.resize(static_cast<std::size_t>(ctx.rows()));
        lambda = RationalFunction::bracket(ctx.p(), ctx.rows(), pick);
      }
      u.add_term(b, lambda);
    }
    if (u.is_zero()) u.add_term(basis.front(), RationalFunction::one(ctx.p()));
    ++out.samples;
    try {
      nonzero_square_certificate(ctx, u, seeds);
      ++out.certified;
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::NoCertificateFound) throw;
    }
    out.elements.push_back(std::move(u));
  }
  return out;
}

using RFMatrix = std::vector<std::vector<RationalFunction>>;

/// Matrix of the middle pairing in some basis.
struct GramMatrix {
  RFMatrix entries;

  std::size_t size() const { return entries.size(); }

  bool is_symmetric() const {
    for (std::size_t i = 0; i < size(); ++i)
      for (std::size_t j = i + 1; j < size(); ++j)
        if (!rf_equals(entries[i][j], entries[j][i])) return false;
    return true;
  }
};

inline void require_polygon(const ReductionContext& ctx) {
  if (ctx.n() != 1 || !(ctx.complex() == polygon(ctx.m())))
    fail(ErrorKind::NotPolygon, "expected the m-gon with edges {i,i+1} and {1,m}");
  if (ctx.reference_facet() != std::vector<int>{1, 2}) fail(ErrorKind::NotPolygon, "expected reference facet (1,2)");
}

/// Determinant by cofactor expansion along the first row, skipping zero entries (suited to sparse matrices).
inline RationalFunction rf_det(const RFMatrix& a, std::uint32_t p) {
  const std::size_t n = a.size();
  if (n == 0) return RationalFunction::one(p);
  if (n == 1) return a[0][0];
  RationalFunction sum = RationalFunction::zero(p);
  for (std::size_t j = 0; j < n; ++j) {
    if (a[0][j].is_trivially_zero()) continue;
    RFMatrix sub;
    for (std::size_t i = 1; i < n; ++i) {
      std::vector<RationalFunction> row;
      for (std::size_t k = 0; k < n; ++k)
        if (k != j) row.push_back(a[i][k]);
      sub.push_back(std::move(row));
    }
    RationalFunction term = a[0][j] * rf_det(sub, p);
    sum += (j % 2) ? -term : term;
  }
  return sum;
}

/// Determinant of a dense matrix: rows are cleared to polynomials, then fraction-free elimination.
inline RationalFunction rf_det_cleared(const RFMatrix& a, std::uint32_t p) {
  const std::size_t n = a.size();
  std::vector<std::vector<Polynomial>> polys(n);
  RationalFunction scale = RationalFunction::one(p);
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<std::pair<BracketMonomial, Polynomial>> parts;
    BracketMonomial g;
    bool first = true;
    Polynomial den_all = Polynomial::constant(p, 1);
    for (const auto& x : a[i]) {
      parts.push_back(x.factored());
      den_all = den_all * x.residual_denominator();
      if (x.is_trivially_zero()) continue;
      const auto& gi = parts.back().first;
      if (first) {
        g = gi;
        first = false;
        continue;
      }
      BracketMonomial next;
      for (const auto& [k, e] : g) {
        const int m = std::min(e, detail::exponent_of(gi, k));
        if (m) next[k] = m;
      }
      for (const auto& [k, e] : gi)
        if (!g.count(k) && e < 0) next[k] = e;
      g = std::move(next);
    }
    for (std::size_t j = 0; j < n; ++j) {
      if (a[i][j].is_trivially_zero()) {
        polys[i].push_back(Polynomial(p));
        continue;
      }
      std::vector<Polynomial> factors{parts[j].second};
      BracketMonomial rest = parts[j].first;
      for (const auto& [k, e] : g) detail::bump(rest, k, -e);
      for (const auto& [k, e] : rest)
        for (int r = 0; r < e; ++r) factors.push_back(minor_poly(p, k));
      for (std::size_t k = 0; k < n; ++k)
        if (k != j) factors.push_back(a[i][k].residual_denominator());
      polys[i].push_back(Polynomial::product(p, std::move(factors)));
    }
    for (const auto& [k, e] : g) scale *= RationalFunction::from_bracket_key(p, k, e);
    scale /= RationalFunction::from_poly(den_all);
  }
  return RationalFunction::from_poly(det_poly_matrix(polys, p)) * scale;
}

/// Gram matrix of the middle pairing of the m-gon in the basis e_i = pi(x_{i+1}), 1 <= i <= m-2.
inline GramMatrix polygon_gram(const ReductionContext& ctx) {
  require_polygon(ctx);
  const int k = ctx.m() - 2;
  GramMatrix g;
  g.entries.assign(static_cast<std::size_t>(k), std::vector<RationalFunction>(static_cast<std::size_t>(k), RationalFunction::zero(ctx.p())));
  for (int i = 1; i <= k; ++i)
    for (int j = i; j <= k; ++j) {
      const std::vector<int> mono{i + 1, j + 1};
      if (!ctx.complex().is_face(support_of(mono))) continue;
      g.entries[i - 1][j - 1] = g.entries[j - 1][i - 1] = psi_monomial(ctx, mono);
    }
  return g;
}

inline RationalFunction polygon_gram_det(const ReductionContext& ctx) { return rf_det(polygon_gram(ctx).entries, ctx.p()); }

/// (-1)^m [1,m] / prod_{i<m} [i,i+1].
inline RationalFunction polygon_det_closed_form(const ReductionContext& ctx) {
  const int m = ctx.m();
  const std::uint32_t p = ctx.p();
  RationalFunction r = br(p, 2, {1, m});
  for (int i = 1; i < m; ++i) r /= br(p, 2, {i, i + 1});
  return m % 2 ? -r : r;
}

struct OrthogonalBasis {
  std::vector<ElementRep> vectors;
  std::vector<RationalFunction> diagonal;  ///< rho(e~_i, e~_i) as computed
  RFMatrix pairing;                        ///< rho(e~_i, e~_j) for all i, j
};

/// -[1,i+2] / ([1,i+1][i+1,i+2]).
inline RationalFunction polygon_orthogonal_diagonal(std::uint32_t p, int i) {
  return -(br(p, 2, {1, i + 2}) / (br(p, 2, {1, i + 1}) * br(p, 2, {i + 1, i + 2})));
}

/// e~_i = sum_{t=2}^{i+1} ([1,t]/[1,i+1]) pi(x_t), with all pairings computed through Psi.
inline OrthogonalBasis polygon_orthogonal_basis(const ReductionContext& ctx) {
  require_polygon(ctx);
  const std::uint32_t p = ctx.p();
  const int k = ctx.m() - 2;
  OrthogonalBasis out;
  for (int i = 1; i <= k; ++i) {
    ElementRep e{1, {}};
    for (int t = 2; t <= i + 1; ++t) e.add_term({t}, br(p, 2, {1, t}) / br(p, 2, {1, i + 1}));
    out.vectors.push_back(std::move(e));
  }
  out.pairing.assign(static_cast<std::size_t>(k), std::vector<RationalFunction>(static_cast<std::size_t>(k), RationalFunction::zero(p)));
  for (int i = 0; i < k; ++i)
    for (int j = i; j < k; ++j)
      out.pairing[i][j] = out.pairing[j][i] = rho_form(ctx, out.vectors[i], out.vectors[j]);
  for (int i = 0; i < k; ++i) out.diagonal.push_back(out.pairing[i][i]);
  return out;
}

/// One row of the initial-term table: in([1,t+2] L_t) under lex a_{1,1} > ... > a_{1,m} > a_{2,1} > ...
struct InitialTermRow {
  int t = 0;
  Monomial initial;
  std::vector<int> row1_exponents;  ///< exponent of a_{1,j}, j = 1..m
};

struct AnisotropyProof {
  int m = 0;
  bool holds = false;
  std::vector<InitialTermRow> rows;
};

/// The bracket factors of [1,t+2] L_t with L = prod_{s=2}^{m-1} [1,s][s,s+1].
inline std::vector<BracketKey> polygon_weight_factors(int m, int t) {
  std::vector<BracketKey> out{BracketKey{1, 2, {1, t + 2}}};
  for (int s = 2; s <= m - 1; ++s) {
    if (s != t + 1) out.push_back(BracketKey{1, 2, {1, s}});
    if (s != t + 1) out.push_back(BracketKey{1, 2, {s, s + 1}});
  }
  return out;
}

/**
 * \brief Initial monomials of the terms of sum d_t^2 [1,t+2] L_t and the parity check showing they differ.
 *
 * For i < j the exponent of a_{1,j+1} must be odd in term i and even in term j;
 * squares d_t^2 only add even exponents, so no two terms can cancel.
 */
inline AnisotropyProof polygon_anisotropy_proof(int m) {
  if (m < 3) fail(ErrorKind::TooSmall, "polygon needs m >= 3");
  AnisotropyProof out;
  out.m = m;
  for (int t = 1; t <= m - 2; ++t) {
    InitialTermRow row;
    row.t = t;
    for (const auto& k : polygon_weight_factors(m, t)) row.initial = row.initial * initial_monomial(minor_poly(2, k));
    for (int j = 1; j <= m; ++j) row.row1_exponents.push_back(row.initial.exponent({1, j}));
    out.rows.push_back(std::move(row));
  }
  out.holds = true;
  for (int i = 1; i <= m - 2; ++i)
    for (int j = i + 1; j <= m - 2; ++j) {
      const int odd = out.rows[i - 1].row1_exponents[j];
      const int even = out.rows[j - 1].row1_exponents[j];
      if (odd % 2 != 1 || even % 2 != 0) out.holds = false;
    }
  return out;
}

/// Multiplicity of the bracket `key` in f: counted on the bracket factor, trial division on the rest.
inline int bracket_valuation(const RationalFunction& f, const BracketKey& key) {
  if (f.is_zero()) fail(ErrorKind::ZeroInput, "valuation of zero");
  auto [g, s] = f.factored();
  const Polynomial& b = minor_poly(f.characteristic(), key);
  auto count = [&](Polynomial x) {
    int v = 0;
    while (!x.is_constant()) {
      auto q = exact_divide(x, b);
      if (!q) break;
      x = std::move(*q);
      ++v;
    }
    return v;
  };
  return detail::exponent_of(g, key) + count(s) - count(f.residual_denominator());
}

inline int bracket_valuation(const RationalFunction& f, int c, int d) {
  if (c == d) fail(ErrorKind::BadShape, "bracket with a repeated column");
  return bracket_valuation(f, BracketKey{1, 2, {std::min(c, d), std::max(c, d)}});
}

/// Pairs {c,d} at which the determinant of the form has odd bracket valuation.
inline std::vector<Face> recover_polygon_from_form(const RFMatrix& h, int m, std::uint32_t p) {
  const RationalFunction det = rf_det_cleared(h, p);
  if (det.is_zero()) fail(ErrorKind::SingularForm, "the form is degenerate");
  std::vector<Face> edges;
  for (int c = 1; c <= m; ++c)
    for (int d = c + 1; d <= m; ++d)
      if (bracket_valuation(det, c, d) % 2 != 0) edges.push_back({c, d});
  return edges;
}

/// P^t H P.
inline RFMatrix conjugate(const RFMatrix& h, const RFMatrix& pm, std::uint32_t p) {
  const std::size_t n = h.size();
  RFMatrix hp(n, std::vector<RationalFunction>(n, RationalFunction::zero(p)));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        if (!h[i][k].is_trivially_zero() && !pm[k][j].is_trivially_zero()) hp[i][j] += h[i][k] * pm[k][j];
  RFMatrix out(n, std::vector<RationalFunction>(n, RationalFunction::zero(p)));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        if (!pm[k][i].is_trivially_zero() && !hp[k][j].is_trivially_zero()) out[i][j] += pm[k][i] * hp[k][j];
  return out;
}

/**
 * \brief A random invertible change of basis: a unit lower triangular constant matrix times a diagonal of brackets.
 *
 * The bracket diagonal makes det P a nontrivial bracket monomial, so the
 * determinant valuations really shift (by even amounts).
 */
inline RFMatrix random_basis_change(int size, int m, std::uint32_t p, std::uint64_t seed) {
  RFMatrix pm(static_cast<std::size_t>(size), std::vector<RationalFunction>(static_cast<std::size_t>(size), RationalFunction::zero(p)));
  std::uint64_t s = seed;
  std::vector<RationalFunction> diag;
  for (int j = 0; j < size; ++j) {
    s = splitmix64(s);
    const int c = 1 + static_cast<int>(s % static_cast<std::uint64_t>(m));
    const int d = 1 + static_cast<int>((s >> 20) % static_cast<std::uint64_t>(m));
    diag.push_back(c != d && (s >> 40) % 2 ? br(p, 2, {std::min(c, d), std::max(c, d)}) : RationalFunction::one(p));
  }
  for (int i = 0; i < size; ++i)
    for (int j = 0; j <= i; ++j) {
      s = splitmix64(s);
      const long long c = i == j ? 1 : static_cast<long long>(s % p);
      if (c) pm[i][j] = RationalFunction::constant(p, c) * diag[j];
    }
  return pm;
}

}  // namespace sraniso
