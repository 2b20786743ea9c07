#pragma once

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sraniso/artinian.hpp"
#include "sraniso/bracket.hpp"
#include "sraniso/complex.hpp"
#include "sraniso/error.hpp"
#include "sraniso/finite_field.hpp"
#include "sraniso/linalg.hpp"
#include "sraniso/polynomial.hpp"
#include "sraniso/psi.hpp"
#include "sraniso/rational.hpp"
#include "sraniso/sampling.hpp"

namespace sraniso {

/// Iterated partial derivative with respect to a set of distinct a-variables.
struct DiffOperator {
  std::vector<VarIndex> vars;

  int order() const { return static_cast<int>(vars.size()); }

  bool involves(VarIndex v) const { return std::find(vars.begin(), vars.end(), v) != vars.end(); }

  /// Whether some variable of the operator is an entry of the given minor.
  bool touches(const BracketKey& k) const {
    for (const auto& v : vars)
      if (v.row >= k.row_lo && v.row < k.row_lo + k.nrows && std::binary_search(k.cols.begin(), k.cols.end(), v.col))
        return true;
    return false;
  }

  std::string to_string() const {
    std::string s = "d^" + std::to_string(order()) + "/";
    for (const auto& v : vars) s += "d" + var_name(v);
    return s;
  }
};

inline DiffOperator make_operator(std::vector<VarIndex> vars) {
  for (std::size_t i = 0; i < vars.size(); ++i)
    for (std::size_t j = i + 1; j < vars.size(); ++j)
      if (vars[i] == vars[j]) fail(ErrorKind::BadShape, "operator variables must be distinct");
  return DiffOperator{std::move(vars)};
}

/// d_sigma for n odd: the variables a_{i, sigma(floor((i+1)/2))}, 1 <= i <= n+1.
inline DiffOperator build_op_sigma(int n, const Face& sigma) {
  if (n < 1 || n % 2 == 0) fail(ErrorKind::WrongParity, "d_sigma needs n odd");
  Face s = sigma;
  std::sort(s.begin(), s.end());
  if (static_cast<int>(s.size()) != (n + 1) / 2 || std::adjacent_find(s.begin(), s.end()) != s.end())
    fail(ErrorKind::WrongFaceSize, "sigma must have (n+1)/2 distinct vertices");
  std::vector<VarIndex> vars;
  for (int i = 1; i <= n + 1; ++i) vars.push_back({i, s[static_cast<std::size_t>((i + 1) / 2 - 1)]});
  return make_operator(std::move(vars));
}

inline DiffOperator build_op_sigma(const ReductionContext& ctx, const Face& sigma) {
  DiffOperator op = build_op_sigma(ctx.n(), sigma);
  Face s = sigma;
  std::sort(s.begin(), s.end());
  if (!ctx.complex().is_face(s)) fail(ErrorKind::NotAFace, face_to_string(sigma) + " is not a face");
  return op;
}

/// d_{p,sigma} for n even: a_{1,p} together with a_{i, sigma(floor(i/2))}, 2 <= i <= n+1.
inline DiffOperator build_op_p_sigma(const SimplicialComplex& d, int p, const Face& sigma) {
  const int n = d.dim();
  if (n < 2 || n % 2 == 1) fail(ErrorKind::WrongParity, "d_{p,sigma} needs n even");
  Face s = sigma;
  std::sort(s.begin(), s.end());
  if (static_cast<int>(s.size()) != n / 2) fail(ErrorKind::WrongFaceSize, "sigma must have n/2 vertices");
  if (std::binary_search(s.begin(), s.end(), p) || !d.is_face(face_union(s, {p})))
    fail(ErrorKind::NotAFace, "sigma + p must be a face with p outside sigma");
  std::vector<VarIndex> vars{{1, p}};
  for (int i = 2; i <= n + 1; ++i) vars.push_back({i, s[static_cast<std::size_t>(i / 2 - 1)]});
  return make_operator(std::move(vars));
}

/// The operator with variables a_{i, seq_i}; repeated vertices are allowed since rows differ.
inline DiffOperator build_op_mod(const std::vector<int>& seq) {
  std::vector<VarIndex> vars;
  for (std::size_t i = 0; i < seq.size(); ++i) vars.push_back({static_cast<int>(i) + 1, seq[i]});
  return make_operator(std::move(vars));
}

inline Polynomial apply(const DiffOperator& op, const Polynomial& f) { return differentiate(f, op.vars); }

/**
 * \brief The operator applied to a product, by the Leibniz rule over subsets of its variables.
 *
 * State U holds the sum over ways of distributing the variables of U among the
 * factors seen so far; only the full set is formed at the last factor.
 */
inline Polynomial apply_to_product(const DiffOperator& op, const std::vector<Polynomial>& factors,
                                   const std::function<bool()>& out_of_time = {}) {
  const std::uint32_t p = factors.empty() ? 2 : factors.front().characteristic();
  const int k = op.order();
  if (k > 20) fail(ErrorKind::BadShape, "operator order too large");
  const std::size_t full = (std::size_t{1} << k) - 1;
  auto subset_vars = [&](std::size_t mask) {
    std::vector<VarIndex> v;
    for (int i = 0; i < k; ++i)
      if (mask >> i & 1) v.push_back(op.vars[static_cast<std::size_t>(i)]);
    return v;
  };
  std::vector<std::optional<Polynomial>> state(full + 1);
  state[0] = Polynomial::constant(p, 1);
  for (std::size_t f = 0; f < factors.size(); ++f) {
    const bool last = f + 1 == factors.size();
    std::vector<std::optional<Polynomial>> deriv(full + 1);
    for (std::size_t v = 0; v <= full; ++v) {
      Polynomial d = differentiate(factors[f], subset_vars(v));
      if (!d.is_zero()) deriv[v] = std::move(d);
    }
    std::vector<std::optional<Polynomial>> next(full + 1);
    for (std::size_t u = last ? full : 0; u <= full; ++u) {
      Polynomial acc(p);
      for (std::size_t v = u;; v = (v - 1) & u) {
        if (deriv[v] && state[u & ~v]) acc += *state[u & ~v] * *deriv[v];
        if (out_of_time && out_of_time()) fail(ErrorKind::BudgetExceeded, "time budget exhausted");
        if (v == 0) break;
      }
      if (!acc.is_zero()) next[u] = std::move(acc);
    }
    state = std::move(next);
  }
  if (factors.empty()) return differentiate(Polynomial::constant(p, 1), op.vars);
  return state[full] ? *state[full] : Polynomial(p);
}

namespace detail {

struct MinorPower {
  BracketKey key;
  int exponent = 1;
  int sign = 1;
};

/// Recognizes +-(minor)^e for e in {1, 2} from the shape of one monomial.
inline std::optional<MinorPower> as_minor_power(const Polynomial& f) {
  if (f.is_zero() || f.is_constant()) return std::nullopt;
  const auto& words = f.terms().front().mono.words();
  const int e = Monomial::exp_of(words.front());
  if (e > 2) return std::nullopt;
  std::vector<int> rows, cols;
  for (auto w : words) {
    if (Monomial::exp_of(w) != e) return std::nullopt;
    const VarIndex v = var_from_id(Monomial::id_of(w));
    rows.push_back(v.row);
    cols.push_back(v.col);
  }
  std::sort(rows.begin(), rows.end());
  std::sort(cols.begin(), cols.end());
  if (std::adjacent_find(cols.begin(), cols.end()) != cols.end()) return std::nullopt;
  for (std::size_t i = 1; i < rows.size(); ++i)
    if (rows[i] != rows[i - 1] + 1) return std::nullopt;
  const BracketKey key{rows.front(), static_cast<int>(rows.size()), cols};
  const Polynomial m = minor_poly(f.characteristic(), key).pow(e);
  if (m.size() != f.size()) return std::nullopt;
  if (f == m) return MinorPower{key, e, 1};
  if (f == -m) return MinorPower{key, e, -1};
  return std::nullopt;
}

}  // namespace detail

/**
 * \brief The operator applied to a rational function (characteristic 2).
 *
 * Uses T(f^2 g) = f^2 T(g) and T(f/g) = T(fg)/g^2: bracket powers are split
 * into squares and a square-free part, and brackets free of the operator
 * variables are kept outside the derivative.
 */
inline RationalFunction apply(const DiffOperator& op, const RationalFunction& f) {
  const std::uint32_t p = f.characteristic();
  if (p != 2) fail(ErrorKind::CharNot2, "operators on fractions need characteristic 2");
  const Polynomial& den = f.residual_denominator();
  RationalFunction out = RationalFunction::zero(p);
  for (const auto& [b, c] : f.terms()) {
    BracketMonomial outside;
    std::vector<Polynomial> factors{c};
    if (!den.is_one()) factors.push_back(den);
    for (const auto& [k, e] : b) {
      const int half = e >= 0 ? e / 2 : -((-e + 1) / 2);
      const bool odd = (e - 2 * half) == 1;
      if (half) outside[k] = 2 * half;
      if (!odd) continue;
      if (op.touches(k)) factors.push_back(minor_poly(p, k));
      else detail::bump(outside, k, 1);
    }
    Polynomial body = apply_to_product(op, factors);
    if (body.is_zero()) continue;
    for (auto& [k, e] : outside)
      while (e < 0 && !body.is_constant()) {
        auto q = exact_divide(body, minor_poly(p, k));
        if (!q) break;
        body = std::move(*q);
        ++e;
      }
    if (auto rec = detail::as_minor_power(body)) {
      detail::bump(outside, rec->key, rec->exponent);
      body = Polynomial::constant(p, rec->sign);
    }
    RationalFunction term = RationalFunction::from_poly(std::move(body));
    for (const auto& [k, e] : outside) term *= RationalFunction::from_bracket_key(p, k, e);
    out += term;
  }
  if (!den.is_one()) out /= RationalFunction::from_poly(den.square());
  return out;
}

enum class MinorFamily { N, P, Q };

inline const char* to_string(MinorFamily f) {
  switch (f) {
    case MinorFamily::N: return "N";
    case MinorFamily::P: return "P";
    case MinorFamily::Q: return "Q";
  }
  return "?";
}

/// Shape of one minor-product identity: T(prod_{i in lhs} S_i) = prod_{i in rhs} S_i^2.
struct MinorIdentityShape {
  int row_lo = 1;
  int h = 2;
  std::vector<int> lhs, rhs;
  DiffOperator op;

  /// S_i: the h x h minor on the shape's rows with column i of 1..h+1 deleted.
  BracketKey minor(int i) const {
    std::vector<int> cols;
    for (int j = 1; j <= h + 1; ++j)
      if (j != i) cols.push_back(j);
    return BracketKey{row_lo, h, cols};
  }
};

inline MinorIdentityShape minor_identity_shape(int h, MinorFamily family) {
  MinorIdentityShape s;
  s.h = h;
  std::vector<VarIndex> vars;
  switch (family) {
    case MinorFamily::N:
      if (h < 2 || h % 2) fail(ErrorKind::BadParity, "N needs h even, h >= 2");
      s.row_lo = 1;
      for (int i = 1; i <= h; ++i) vars.push_back({i, (i + 1) / 2});
      for (int i = 1; i <= h + 1; ++i) s.lhs.push_back(i);
      for (int i = 1; i <= h / 2; ++i) s.rhs.push_back(i);
      break;
    case MinorFamily::P:
      if (h < 2 || h % 2) fail(ErrorKind::BadParity, "P needs h even, h >= 2");
      s.row_lo = 3;
      for (int i = 3; i <= h + 2; ++i) vars.push_back({i, (i + 1) / 2});
      for (int i = 1; i <= h + 1; ++i) s.lhs.push_back(i);
      for (int i = 2; i <= (h + 2) / 2; ++i) s.rhs.push_back(i);
      break;
    case MinorFamily::Q:
      if (h < 3 || h % 2 == 0) fail(ErrorKind::BadParity, "Q needs h odd, h >= 3");
      s.row_lo = 2;
      vars.push_back({2, 1});
      for (int i = 3; i <= h + 1; ++i) vars.push_back({i, (i + 1) / 2});
      for (int i = 2; i <= h + 1; ++i) s.lhs.push_back(i);
      for (int i = 2; i <= (h + 1) / 2; ++i) s.rhs.push_back(i);
      break;
  }
  s.op = make_operator(std::move(vars));
  return s;
}

struct IdentityOptions {
  int exact_max_order = 5;
  std::vector<std::uint64_t> seeds{1, 2, 3};
  double budget_seconds = 0;  ///< 0 means unlimited
  int ext_degree = 32;
};

struct MinorIdentityReport {
  MinorFamily family = MinorFamily::N;
  int h = 0;
  bool holds = false;
  std::string method;  ///< "exact", "probabilistic" or "budget-exceeded"
  std::size_t lhs_terms = 0, rhs_terms = 0;
  std::vector<std::uint64_t> seeds;
  std::string lhs, rhs;  ///< both sides, filled on failure when small enough to print
};

namespace detail {

/// Value at a point of the derivative of a minor by a set of its entries (characteristic 2, so no signs).
inline FiniteField::Elem minor_derivative_value(const FiniteField& f, const RandomPoint& pt, const BracketKey& k,
                                                const std::vector<VarIndex>& vars) {
  std::vector<int> rows, cols = k.cols;
  for (int i = 0; i < k.nrows; ++i) rows.push_back(k.row_lo + i);
  for (const auto& v : vars) {
    auto r = std::find(rows.begin(), rows.end(), v.row);
    auto c = std::find(cols.begin(), cols.end(), v.col);
    if (r == rows.end() || c == cols.end()) return f.zero();
    rows.erase(r);
    cols.erase(c);
  }
  FieldMatrix m(rows.size(), FieldVector(rows.size()));
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols.size(); ++j) m[i][j] = pt({rows[i], cols[j]});
  return field_det(f, m);
}

}  // namespace detail

/**
 * \brief Checks T(prod S_i) = prod S_i^2 for the N, P or Q family of order h (characteristic 2).
 *
 * Symbolic up to `exact_max_order`; beyond that, the two sides are compared at
 * random points of GF(2^w), which is reported as probabilistic.
 */
inline MinorIdentityReport verify_minor_identity(int h, MinorFamily family, const IdentityOptions& opt = {}) {
  const MinorIdentityShape shape = minor_identity_shape(h, family);
  MinorIdentityReport rep;
  rep.family = family;
  rep.h = h;
  const auto start = std::chrono::steady_clock::now();
  auto out_of_time = [&] {
    return opt.budget_seconds > 0 &&
           std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count() > opt.budget_seconds;
  };
  if (h <= opt.exact_max_order) {
    rep.method = "exact";
    std::vector<Polynomial> factors;
    for (int i : shape.lhs) factors.push_back(minor_poly(2, shape.minor(i)));
    std::vector<Polynomial> root;
    for (int i : shape.rhs) root.push_back(minor_poly(2, shape.minor(i)));
    try {
      const Polynomial lhs = apply_to_product(shape.op, factors, out_of_time);
      const Polynomial rhs = Polynomial::product(2, root).square();
      rep.lhs_terms = lhs.size();
      rep.rhs_terms = rhs.size();
      rep.holds = lhs == rhs;
      if (!rep.holds && lhs.size() + rhs.size() < 200) {
        rep.lhs = lhs.to_string();
        rep.rhs = rhs.to_string();
      }
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::BudgetExceeded) throw;
      rep.method = "budget-exceeded";
      rep.holds = false;
    }
    return rep;
  }
  rep.method = "probabilistic";
  if (opt.seeds.size() < 3) fail(ErrorKind::ConfigError, "randomized identity checks need at least three seeds");
  FiniteField f(2, opt.ext_degree);
  const int k = shape.op.order();
  const std::size_t full = (std::size_t{1} << k) - 1;
  rep.holds = true;
  for (std::uint64_t seed : opt.seeds) {
    RandomPoint pt(f, seed);
    std::vector<FiniteField::Elem> state(full + 1, f.zero());
    state[0] = f.one();
    for (int i : shape.lhs) {
      std::vector<FiniteField::Elem> deriv(full + 1);
      for (std::size_t v = 0; v <= full; ++v) {
        std::vector<VarIndex> vars;
        for (int b = 0; b < k; ++b)
          if (v >> b & 1) vars.push_back(shape.op.vars[static_cast<std::size_t>(b)]);
        deriv[v] = detail::minor_derivative_value(f, pt, shape.minor(i), vars);
      }
      std::vector<FiniteField::Elem> next(full + 1, f.zero());
      for (std::size_t u = 0; u <= full; ++u)
        for (std::size_t v = u;; v = (v - 1) & u) {
          if (deriv[v] && state[u & ~v]) next[u] = f.add(next[u], f.mul(state[u & ~v], deriv[v]));
          if (v == 0) break;
        }
      state = std::move(next);
    }
    FiniteField::Elem rhs = f.one();
    for (int i : shape.rhs) {
      const auto m = detail::minor_derivative_value(f, pt, shape.minor(i), {});
      rhs = f.mul(rhs, f.mul(m, m));
    }
    rep.seeds.push_back(seed);
    if (state[full] != rhs) {
      rep.holds = false;
      break;
    }
    if (out_of_time()) {
      rep.method = "budget-exceeded";
      rep.holds = false;
      break;
    }
  }
  return rep;
}

/// Result of a relabelled minor-product identity on columns of the (n+1)-row generic matrix.
struct ProductIdentityReport {
  bool holds = false;
  std::string lhs, rhs;
};

/**
 * \brief T(prod_{i in tau} M_i) = prod_{i in tau1} M_i^2 with M_i = M(tau - i).
 *
 * n odd: tau = tau1 + tau2, |tau1| = (n+1)/2, |tau2| = |tau1|+1, T = d_{tau1}.
 * n even: tau = tau1 + {b} + tau3, |tau1| = n/2, |tau3| = |tau1|+1, T = d_{b,tau1},
 * and the product runs over tau1 + tau3.
 */
inline ProductIdentityReport verify_product_identity(int n, const Face& tau1, std::optional<int> b, const Face& rest) {
  const bool odd = n % 2 == 1;
  if (odd == b.has_value()) fail(ErrorKind::WrongParity, "the linear vertex is used exactly when n is even");
  const int l = odd ? (n + 1) / 2 : n / 2;
  if (static_cast<int>(tau1.size()) != l || static_cast<int>(rest.size()) != l + 1)
    fail(ErrorKind::BadShape, "wrong part sizes");
  Face tau = face_union(tau1, rest);
  if (b) tau = face_union(tau, {*b});
  if (static_cast<int>(tau.size()) != n + 2) fail(ErrorKind::BadShape, "parts must be disjoint");
  std::vector<VarIndex> vars;
  if (b) vars.push_back({1, *b});
  for (int i = b ? 2 : 1; i <= n + 1; ++i) vars.push_back({i, tau1[static_cast<std::size_t>((b ? i / 2 : (i + 1) / 2) - 1)]});
  const DiffOperator op = make_operator(vars);
  auto m = [&](int i) { return minor_poly(2, BracketKey{1, n + 1, face_difference(tau, {i})}); };
  std::vector<Polynomial> factors, root;
  for (int i : face_union(tau1, rest)) factors.push_back(m(i));
  for (int i : tau1) root.push_back(m(i));
  const Polynomial lhs = apply_to_product(op, factors);
  const Polynomial rhs = Polynomial::product(2, root).square();
  ProductIdentityReport rep;
  rep.holds = lhs == rhs;
  if (!rep.holds) {
    rep.lhs = lhs.to_string();
    rep.rhs = rhs.to_string();
  }
  return rep;
}

/**
 * \brief The quotient form: T(prod_{S} M_i / prod_{W - S} M_i) = prod_{S cap tau1} M_i^2 / prod_{rest - S} M_i^2,
 * where W = tau1 + rest is the index set of the product identity.
 */
inline ProductIdentityReport verify_quotient_identity(int n, const Face& tau1, std::optional<int> b, const Face& rest,
                                                      const Face& s) {
  const bool odd = n % 2 == 1;
  if (odd == b.has_value()) fail(ErrorKind::WrongParity, "the linear vertex is used exactly when n is even");
  Face tau = face_union(tau1, rest);
  const Face w = tau;
  if (b) tau = face_union(tau, {*b});
  if (!is_subset(s, w)) fail(ErrorKind::BadShape, "S must lie in the product index set");
  std::vector<VarIndex> vars;
  if (b) vars.push_back({1, *b});
  for (int i = b ? 2 : 1; i <= n + 1; ++i) vars.push_back({i, tau1[static_cast<std::size_t>((b ? i / 2 : (i + 1) / 2) - 1)]});
  const DiffOperator op = make_operator(vars);
  auto m = [&](int i) { return RationalFunction::from_bracket_key(2, BracketKey{1, n + 1, face_difference(tau, {i})}); };
  RationalFunction arg = RationalFunction::one(2), expected = RationalFunction::one(2);
  for (int i : w) arg *= std::binary_search(s.begin(), s.end(), i) ? m(i) : m(i).inverse();
  for (int i : face_intersection(s, tau1)) expected *= m(i).square();
  for (int i : face_difference(rest, s)) expected /= m(i).square();
  const RationalFunction lhs = apply(op, arg);
  ProductIdentityReport rep;
  rep.holds = rf_equals(lhs, expected);
  rep.lhs = lhs.to_string();
  rep.rhs = expected.to_string();
  return rep;
}

/// Outcome of one instance of the square identities.
struct SquareIdentityReport {
  bool holds = false;
  bool termwise = false;  ///< decided facet by facet rather than by one global comparison
  RationalFunction lhs{2}, rhs{2};
};

namespace detail {

inline SquareIdentityReport compare_square_identity(const ReductionContext& ctx, const DiffOperator& op, const Face& tau1,
                                                    const Face& tau2, const Face& whole, const Face& sigma,
                                                    const std::vector<int>& product_vertices) {
  const std::uint32_t p = ctx.p();
  SquareIdentityReport rep;
  const Face gamma1 = face_intersection(tau1, sigma);
  const Face joint = face_union(whole, sigma);
  const Face gamma2 = face_difference(joint, gamma1);
  const bool joint_face = ctx.complex().is_face(joint);
  const int r = ctx.m() + 1;
  RationalFunction lhs = RationalFunction::zero(p), middle = RationalFunction::zero(p);
  bool termwise = true;
  for (const auto& eta : ctx.complex().facets_containing(whole)) {
    const RationalFunction t = apply(op, h_term(ctx, tau1, tau2, eta, r));
    lhs += t;
    if (joint_face && is_subset(joint, eta)) {
      const RationalFunction sq = h_term(ctx, gamma1, gamma2, eta, r).square();
      middle += sq;
      termwise = termwise && rf_equals(t, sq);
    } else {
      termwise = termwise && t.is_zero();
    }
  }
  RationalFunction psi = RationalFunction::zero(p);
  if (ctx.complex().is_face(support_of(product_vertices))) psi = psi_monomial(ctx, product_vertices);
  rep.lhs = lhs;
  rep.rhs = psi.square();
  if (termwise) {
    rep.termwise = true;
    rep.holds = rf_equals(middle, rep.rhs);
  } else {
    rep.holds = rf_equals(rep.lhs, rep.rhs);
  }
  return rep;
}

}  // namespace detail

/// (d_sigma Psi pi)(x_tau^2) against (Psi pi(x_sigma x_tau))^2, n odd, characteristic 2.
inline SquareIdentityReport verify_square_identity_odd(const ReductionContext& ctx, const Face& sigma, const Face& tau) {
  if (ctx.p() != 2) fail(ErrorKind::CharNot2, "the square identities hold in characteristic 2");
  const DiffOperator op = build_op_sigma(ctx, sigma);
  Face t = tau;
  std::sort(t.begin(), t.end());
  if (static_cast<int>(t.size()) != (ctx.n() + 1) / 2) fail(ErrorKind::WrongFaceSize, "tau must have (n+1)/2 vertices");
  if (!ctx.complex().is_face(t)) fail(ErrorKind::NotAFace, face_to_string(tau) + " is not a face");
  std::vector<int> prod = sigma;
  prod.insert(prod.end(), t.begin(), t.end());
  std::sort(prod.begin(), prod.end());
  return detail::compare_square_identity(ctx, op, t, {}, t, sigma, prod);
}

/// (d_{p,sigma} Psi pi)(x_tau^2 x_p) against (Psi pi(x_sigma x_tau x_p))^2, n even, characteristic 2.
inline SquareIdentityReport verify_square_identity_even(const ReductionContext& ctx, int p, const Face& sigma, const Face& tau) {
  if (ctx.p() != 2) fail(ErrorKind::CharNot2, "the square identities hold in characteristic 2");
  const DiffOperator op = build_op_p_sigma(ctx.complex(), p, sigma);
  Face t = tau;
  std::sort(t.begin(), t.end());
  if (static_cast<int>(t.size()) != ctx.n() / 2) fail(ErrorKind::WrongFaceSize, "tau must have n/2 vertices");
  if (std::binary_search(t.begin(), t.end(), p)) fail(ErrorKind::BadShape, "tau must not contain p");
  if (!ctx.complex().is_face(t)) fail(ErrorKind::NotAFace, face_to_string(tau) + " is not a face");
  Face s = sigma;
  std::sort(s.begin(), s.end());
  const Face whole = face_union(t, {p});
  if (!ctx.complex().is_face(whole)) {
    SquareIdentityReport rep;
    rep.lhs = apply(op, psi_monomial(ctx, [&] {
                      std::vector<int> v = t;
                      v.insert(v.end(), t.begin(), t.end());
                      v.push_back(p);
                      return v;
                    }()));
    rep.rhs = RationalFunction::zero(2);
    rep.holds = rep.lhs.is_zero();
    return rep;
  }
  std::vector<int> prod = s;
  prod.insert(prod.end(), t.begin(), t.end());
  prod.push_back(p);
  std::sort(prod.begin(), prod.end());
  return detail::compare_square_identity(ctx, op, t, {p}, whole, s, prod);
}

struct ConjectureProbe {
  RationalFunction lhs{2}, rhs{2};
  bool square_case = false;
  bool equal = false;
};

struct ProbeLimits {
  int max_m = 8;
  int max_n = 3;
  bool override_limits = false;
};

/// Compares (d^mod_sigma Psi pi)(x_tau) with its conjectured value; never asserts.
inline ConjectureProbe probe_conjecture(const ReductionContext& ctx, const std::vector<int>& sigma,
                                        const std::vector<int>& tau, const ProbeLimits& lim = {}) {
  if (ctx.p() != 2) fail(ErrorKind::CharNot2, "the probe runs in characteristic 2");
  if (!lim.override_limits && (ctx.m() > lim.max_m || ctx.n() > lim.max_n))
    fail(ErrorKind::ConfigError, "complex exceeds the probe limits; pass an explicit override");
  const int len = ctx.n() + 1;
  if (static_cast<int>(sigma.size()) != len || static_cast<int>(tau.size()) != len)
    fail(ErrorKind::WrongLength, "sigma and tau need n+1 entries");
  for (int v : sigma)
    if (v < 1 || v > ctx.m()) fail(ErrorKind::BadVertex, "vertex out of range");
  ConjectureProbe out;
  out.lhs = apply(build_op_mod(sigma), psi_monomial(ctx, tau));
  std::map<int, int> count;
  for (int v : sigma) ++count[v];
  for (int v : tau) ++count[v];
  out.square_case = std::all_of(count.begin(), count.end(), [](const auto& kv) { return kv.second % 2 == 0; });
  out.rhs = RationalFunction::zero(2);
  if (out.square_case) {
    std::vector<int> delta;
    for (const auto& [v, c] : count)
      for (int i = 0; i < c / 2; ++i) delta.push_back(v);
    out.rhs = psi_monomial(ctx, delta).square();
  }
  out.equal = rf_equals(out.lhs, out.rhs);
  return out;
}

/// lhs(sigma, tau) against lhs(tau, sigma) for the probe above.
inline ConjectureProbe probe_conjecture_symmetry(const ReductionContext& ctx, const std::vector<int>& sigma,
                                                 const std::vector<int>& tau, const ProbeLimits& lim = {}) {
  const ConjectureProbe a = probe_conjecture(ctx, sigma, tau, lim);
  const ConjectureProbe b = probe_conjecture(ctx, tau, sigma, lim);
  ConjectureProbe out;
  out.lhs = a.lhs;
  out.rhs = b.lhs;
  out.square_case = a.square_case;
  out.equal = rf_equals(a.lhs, b.lhs);
  return out;
}

}  // namespace sraniso
