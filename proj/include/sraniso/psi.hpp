#pragma once

#include <algorithm>
#include <optional>
#include <vector>

#include "sraniso/artinian.hpp"
#include "sraniso/complex.hpp"
#include "sraniso/error.hpp"
#include "sraniso/rational.hpp"

namespace sraniso {

/// Sign picked up when [sigma]pi(x_sigma) is carried across the facets of `path` (first to last).
inline int facet_sign_along(const std::vector<Face>& path) {
  int eps = 1;
  for (std::size_t i = 0; i + 1 < path.size(); ++i) {
    const Face ridge = face_intersection(path[i], path[i + 1]);
    if (ridge.size() + 1 != path[i].size()) fail(ErrorKind::NoPath, "consecutive facets do not share a ridge");
    auto with = [&](const Face& f) {
      auto seq = ridge;
      seq.push_back(face_difference(f, ridge).front());
      return permutation_sign(seq);
    };
    eps *= -with(path[i]) * with(path[i + 1]);
  }
  return eps;
}

/// epsilon with [sigma]pi(x_sigma) = epsilon [e]pi(x_e), both facets taken in increasing order.
inline int facet_sign(const ReductionContext& ctx, const Face& sigma) {
  {
    std::lock_guard<std::mutex> lock(ctx.cache().mu);
    auto it = ctx.cache().facet_signs.find(sigma);
    if (it != ctx.cache().facet_signs.end()) return it->second;
  }
  Face e = ctx.reference_facet();
  std::sort(e.begin(), e.end());
  const int eps = facet_sign_along(facet_path(ctx.complex(), sigma, e));
  std::lock_guard<std::mutex> lock(ctx.cache().mu);
  ctx.cache().facet_signs.emplace(sigma, eps);
  return eps;
}

/// Psi_e(pi(x_sigma)) for a facet sigma; 1/[sigma] in characteristic 2.
inline RationalFunction psi_facet(const ReductionContext& ctx, const Face& sigma) {
  Face s = sigma;
  std::sort(s.begin(), s.end());
  if (!ctx.complex().is_facet(s)) fail(ErrorKind::NotAFace, face_to_string(sigma) + " is not a facet");
  const RationalFunction inv = ctx.bracket(s).inverse();
  if (ctx.p() == 2) return inv;
  const int sign = facet_sign(ctx, s) * permutation_sign(ctx.reference_facet());
  return sign > 0 ? inv : -inv;
}

/// Psi_e with an explicitly given ordered reference facet.
inline RationalFunction psi_facet(const ReductionContext& ctx, const Face& sigma, const std::vector<int>& e) {
  ReductionContext other(ctx.complex(), ctx.field(), e);
  return psi_facet(other, sigma);
}

inline RationalFunction psi_element(const ReductionContext& ctx, const ElementRep& u) {
  if (u.degree != ctx.n() + 1) fail(ErrorKind::WrongDegree, "Psi is defined on degree n+1");
  RationalFunction out = RationalFunction::zero(ctx.p());
  for (const auto& [f, c] : u.terms) out += c * psi_facet(ctx, f);
  return out;
}

/// Psi(pi(g)) for a monomial of degree n+1, through the square-free reduction.
inline RationalFunction psi_monomial(const ReductionContext& ctx, const XMonomial& g) {
  if (g.degree() != ctx.n() + 1) fail(ErrorKind::WrongDegree, "monomial must have degree n+1");
  return psi_element(ctx, reduce_to_squarefree(ctx, g));
}

inline RationalFunction psi_monomial(const ReductionContext& ctx, const std::vector<int>& vertices) {
  return psi_monomial(ctx, XMonomial::from_vertices(ctx.m(), vertices));
}

/**
 * \brief Psi(pi(x_c^2 prod_{b in sigma-c} x_b)) for a codimension-1 face sigma containing c.
 *
 * With d_1 < d_2 the two vertices completing sigma to a facet, the value is
 * -[b,d_1,d_2][b,c,d_1] Psi(pi(x_{b,c,d_1})) / ([b,c,d_1][b,c,d_2]); in
 * characteristic 2 this is [b,d_1,d_2]/([b,c,d_1][b,c,d_2]).
 */
inline RationalFunction psi_codim1_square(const ReductionContext& ctx, const Face& sigma, int c) {
  Face s = sigma;
  std::sort(s.begin(), s.end());
  if (static_cast<int>(s.size()) != ctx.n() || !ctx.complex().is_face(s))
    fail(ErrorKind::NotCodim1, face_to_string(sigma) + " is not a codimension 1 face");
  if (!std::binary_search(s.begin(), s.end(), c)) fail(ErrorKind::NotCodim1, "distinguished vertex is not in the face");
  const auto facets = ctx.complex().facets_containing(s);
  if (facets.size() != 2) fail(ErrorKind::NotCodim1, "ridge does not lie in exactly two facets");
  const int d1 = face_difference(facets[0], s).front();
  const int d2 = face_difference(facets[1], s).front();
  const Face b = face_difference(s, {c});
  auto cols = [&](std::initializer_list<int> tail) {
    auto out = b;
    out.insert(out.end(), tail);
    return out;
  };
  const RationalFunction bd = ctx.bracket(cols({d1, d2}));
  const RationalFunction bc1 = ctx.bracket(cols({c, d1}));
  const RationalFunction bc2 = ctx.bracket(cols({c, d2}));
  if (ctx.p() == 2) return bd / (bc1 * bc2);
  return -(bd * bc1 * psi_facet(ctx, face_union(s, {d1}))) / (bc1 * bc2);
}

/// M(cols) for an unordered column set, i.e. the bracket of the sorted columns.
inline RationalFunction set_bracket(std::uint32_t p, int nrows, Face cols) {
  std::sort(cols.begin(), cols.end());
  return br(p, nrows, cols);
}

/**
 * \brief The bracket ratio attached to a facet sigma and a fresh column r.
 *
 * prod_{c in tau1} M(sigma+r-c) / (M(sigma) prod_{g in sigma-tau} M(sigma+r-g)),
 * and 0 when tau = tau1+tau2 is not contained in sigma.
 */
inline RationalFunction h_term(const ReductionContext& ctx, const Face& tau1, const Face& tau2, const Face& sigma, int r) {
  if (!face_intersection(tau1, tau2).empty()) fail(ErrorKind::BadShape, "squared and linear parts overlap");
  if (2 * static_cast<int>(tau1.size()) + static_cast<int>(tau2.size()) != ctx.n() + 1)
    fail(ErrorKind::BadShape, "need 2|tau1| + |tau2| = n+1");
  if (r <= ctx.m() || r > ctx.Z()) fail(ErrorKind::BadShape, "fresh column must lie in m+1..Z");
  if (!ctx.complex().is_facet(sigma)) fail(ErrorKind::NotAFace, face_to_string(sigma) + " is not a facet");
  const Face tau = face_union(tau1, tau2);
  const std::uint32_t p = ctx.p();
  if (!is_subset(tau, sigma)) return RationalFunction::zero(p);
  const Face sr = face_union(sigma, {r});
  RationalFunction out = set_bracket(p, ctx.rows(), sigma).inverse();
  for (int c : tau1) out *= set_bracket(p, ctx.rows(), face_difference(sr, {c}));
  for (int g : face_difference(sigma, tau)) out /= set_bracket(p, ctx.rows(), face_difference(sr, {g}));
  return out;
}

/// Sum of h_term over all facets; equals Psi(pi(x_{tau1}^2 x_{tau2})) in characteristic 2.
inline RationalFunction psi_sum_formula(const ReductionContext& ctx, const Face& tau1, const Face& tau2,
                                        std::optional<int> r = std::nullopt) {
  if (ctx.p() != 2) fail(ErrorKind::CharNot2, "the facet-sum formula needs characteristic 2");
  const Face tau = face_union(tau1, tau2);
  if (!ctx.complex().is_face(tau)) fail(ErrorKind::NotAFace, face_to_string(tau) + " is not a face");
  const int col = r.value_or(ctx.m() + 1);
  RationalFunction out = RationalFunction::zero(ctx.p());
  for (const auto& sigma : ctx.complex().facets_containing(tau)) out += h_term(ctx, tau1, tau2, sigma, col);
  return out;
}

/**
 * \brief Substitutes a_{1,r} = 1 and a_{j,r} = 0 (j >= 2) into a rational function.
 *
 * A bracket containing column r becomes, up to sign, the minor on rows 2..n+1
 * of its remaining columns; r must exceed every other column index.
 */
inline RationalFunction specialize_unit_column(const ReductionContext& ctx, const RationalFunction& f, int r) {
  const int rows = ctx.rows();
  std::map<VarIndex, long long> values;
  for (int i = 1; i <= rows; ++i) values[{i, r}] = i == 1 ? 1 : 0;
  return f.map_brackets(
      [&](const BracketKey& k) -> std::pair<int, BracketKey> {
        if (k.row_lo != 1 || k.nrows != rows || !std::binary_search(k.cols.begin(), k.cols.end(), r)) return {1, k};
        if (k.cols.back() != r) fail(ErrorKind::BadShape, "unit column must be the last column");
        const int sign = rows % 2 == 1 ? 1 : -1;
        if (rows == 1) return {sign, BracketKey{1, 0, {}}};
        return {sign, BracketKey{2, rows - 1, face_difference(k.cols, {r})}};
      },
      [&](const Polynomial& g) { return specialize(g, values); });
}

/// psi_sum_formula with the unit-column substitution applied to each term before summing.
inline RationalFunction psi_sum_formula_specialized(const ReductionContext& ctx, const Face& tau1, const Face& tau2,
                                                    std::optional<int> r = std::nullopt) {
  if (ctx.p() != 2) fail(ErrorKind::CharNot2, "the facet-sum formula needs characteristic 2");
  const Face tau = face_union(tau1, tau2);
  if (!ctx.complex().is_face(tau)) fail(ErrorKind::NotAFace, face_to_string(tau) + " is not a face");
  const int col = r.value_or(ctx.m() + 1);
  RationalFunction out = RationalFunction::zero(ctx.p());
  for (const auto& sigma : ctx.complex().facets_containing(tau))
    out += specialize_unit_column(ctx, h_term(ctx, tau1, tau2, sigma, col), col);
  return out;
}

/**
 * \brief Closed form of Psi on the boundary of a simplex.
 *
 * n odd: Psi(pi(prod x_{c_i}^2)) with b empty. n even: Psi(pi(x_b prod x_{c_i}^2)).
 * In both cases the value is prod M(V - c_i) / prod M(V - g_i), where V is the
 * vertex set and g runs over the remaining vertices.
 */
inline RationalFunction psi_simplex_closed_form(const ReductionContext& ctx, const Face& c, std::optional<int> b = std::nullopt) {
  const int n = ctx.n();
  if (!(ctx.complex() == boundary_simplex(n))) fail(ErrorKind::NotSimplexBoundary, "complex is not the boundary of a simplex");
  if (ctx.p() != 2) fail(ErrorKind::CharNot2, "closed form holds in characteristic 2");
  const bool odd = n % 2 == 1;
  const int l = odd ? (n + 1) / 2 : n / 2;
  if (odd == b.has_value() || static_cast<int>(c.size()) != l)
    fail(ErrorKind::NotSimplexBoundary, "argument shape does not match the parity of n");
  Face all;
  for (int v = 1; v <= ctx.m(); ++v) all.push_back(v);
  Face cs = c;
  std::sort(cs.begin(), cs.end());
  if (std::adjacent_find(cs.begin(), cs.end()) != cs.end() || !is_subset(cs, all))
    fail(ErrorKind::NotSimplexBoundary, "squared vertices must be distinct vertices");
  Face used = cs;
  if (b) {
    if (std::binary_search(cs.begin(), cs.end(), *b) || *b < 1 || *b > ctx.m())
      fail(ErrorKind::NotSimplexBoundary, "linear vertex must be a vertex outside the squared part");
    used = face_union(used, {*b});
  }
  RationalFunction out = RationalFunction::one(ctx.p());
  for (int ci : cs) out *= set_bracket(ctx.p(), ctx.rows(), face_difference(all, {ci}));
  for (int g : face_difference(all, used)) out /= set_bracket(ctx.p(), ctx.rows(), face_difference(all, {g}));
  return out;
}

/// rho_e(u, w) = Psi_e(u w) on the middle degree (n odd).
inline RationalFunction rho_form(const ReductionContext& ctx, const ElementRep& u, const ElementRep& w) {
  if (ctx.n() % 2 == 0) fail(ErrorKind::EvenDimension, "the middle pairing needs n odd");
  const int half = (ctx.n() + 1) / 2;
  if (u.degree != half || w.degree != half) fail(ErrorKind::WrongDegree, "arguments must have degree (n+1)/2");
  return psi_element(ctx, multiply(ctx, u, w));
}

}  // namespace sraniso
