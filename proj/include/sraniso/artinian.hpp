#pragma once

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "sraniso/bracket.hpp"
#include "sraniso/complex.hpp"
#include "sraniso/error.hpp"
#include "sraniso/graded.hpp"
#include "sraniso/rational.hpp"
#include "sraniso/sampling.hpp"

namespace sraniso {

/// Characteristic of the coefficient field and extension degree of the sampling field.
struct FieldConfig {
  std::uint32_t p = 2;
  int w = 32;

  /// Default extension degree: 32 for p = 2, otherwise the largest w <= 32 with p^w < 4e18.
  static FieldConfig with_default_degree(std::uint32_t p) {
    FieldConfig c{p, 32};
    long double size = 1;
    int w = 0;
    while (w < 32 && size * p < 4.0e18L) {
      size *= p;
      ++w;
    }
    if (p != 2) c.w = w;
    return c;
  }
};

/**
 * \brief A monomial in x_1..x_m, stored as an exponent vector indexed 1..m.
 */
class XMonomial {
 public:
  explicit XMonomial(int m = 0) : e_(m + 1, 0) {}

  static XMonomial from_vertices(int m, const std::vector<int>& vertices) {
    XMonomial g(m);
    for (int v : vertices) {
      if (v < 1 || v > m) fail(ErrorKind::BadVertex, "vertex out of range in monomial");
      ++g.e_[v];
    }
    return g;
  }

  int m() const { return static_cast<int>(e_.size()) - 1; }
  int exponent(int v) const { return e_[v]; }
  void set(int v, int e) { e_[v] = e; }
  const std::vector<int>& exponents() const { return e_; }

  int degree() const {
    int d = 0;
    for (int e : e_) d += e;
    return d;
  }
  Face support() const {
    Face s;
    for (int v = 1; v <= m(); ++v)
      if (e_[v]) s.push_back(v);
    return s;
  }
  /// Sum of exponents minus the size of the support; zero exactly for square-free monomials.
  int complexity() const { return degree() - static_cast<int>(support().size()); }
  bool is_squarefree() const { return complexity() == 0; }

  std::vector<int> vertices() const {
    std::vector<int> out;
    for (int v = 1; v <= m(); ++v)
      for (int k = 0; k < e_[v]; ++k) out.push_back(v);
    return out;
  }

  XMonomial operator*(const XMonomial& o) const {
    XMonomial r = *this;
    for (int v = 1; v <= m(); ++v) r.e_[v] += o.e_[v];
    return r;
  }

  bool operator<(const XMonomial& o) const { return e_ < o.e_; }
  bool operator==(const XMonomial& o) const { return e_ == o.e_; }

  std::string to_string() const {
    std::string s;
    for (int v = 1; v <= m(); ++v) {
      if (!e_[v]) continue;
      if (!s.empty()) s += "*";
      s += "x" + std::to_string(v);
      if (e_[v] > 1) s += "^" + std::to_string(e_[v]);
    }
    return s.empty() ? "1" : s;
  }

 private:
  std::vector<int> e_;
};

/**
 * \brief An element of A_d as a combination of square-free face monomials.
 *
 * The representation is not unique: square-free monomials span A_d but are
 * in general linearly dependent.
 */
struct ElementRep {
  int degree = 0;
  std::map<Face, RationalFunction> terms;

  bool is_zero() const { return terms.empty(); }

  void add_term(const Face& f, const RationalFunction& c) {
    if (c.is_trivially_zero()) return;
    auto it = terms.find(f);
    if (it == terms.end()) {
      terms.emplace(f, c);
      return;
    }
    it->second += c;
    if (it->second.is_trivially_zero()) terms.erase(it);
  }

  ElementRep operator+(const ElementRep& o) const {
    if (!terms.empty() && !o.terms.empty() && degree != o.degree) fail(ErrorKind::WrongDegree, "adding elements of different degrees");
    ElementRep r = terms.empty() ? ElementRep{o.degree, {}} : *this;
    if (terms.empty()) r.terms = o.terms;
    else
      for (const auto& [f, c] : o.terms) r.add_term(f, c);
    return r;
  }

  ElementRep scaled(const RationalFunction& c) const {
    ElementRep r{degree, {}};
    if (c.is_trivially_zero()) return r;
    for (const auto& [f, x] : terms) r.add_term(f, x * c);
    return r;
  }

  std::string to_string() const {
    if (terms.empty()) return "0";
    std::string s;
    for (const auto& [f, c] : terms) {
      if (!s.empty()) s += " + ";
      s += "(" + c.to_string() + ")*x" + face_to_string(f);
    }
    return s;
  }
};

/// Records the depth of the rewriting recursion of a square-free reduction.
struct ReductionTrace {
  int rewrites = 0;
  int max_depth = 0;
  bool complexity_always_dropped = true;
};

/**
 * \brief The generic Artinian reduction A = k[D]/(f_1,...,f_{n+1}).
 *
 * f_i = sum_j a_{i,j} x_j. The generic matrix has n+1 rows and Z = m+2n
 * columns; columns beyond m are fresh generic columns. The reference facet
 * normalises the socle functional (lexicographically smallest facet unless
 * given).
 */
class ReductionContext {
 public:
  ReductionContext(SimplicialComplex d, FieldConfig field = {}, std::optional<std::vector<int>> reference = std::nullopt)
      : d_(std::move(d)), field_(field), cache_(std::make_shared<Cache>()) {
    if (!is_prime(field_.p)) fail(ErrorKind::ConfigError, "characteristic must be prime");
    reference_ = reference ? *reference : d_.facets().front();
    Face sorted = reference_;
    std::sort(sorted.begin(), sorted.end());
    if (!d_.is_facet(sorted)) fail(ErrorKind::NotAFace, "reference is not a facet");
  }

  const SimplicialComplex& complex() const { return d_; }
  int n() const { return d_.dim(); }
  int m() const { return d_.m(); }
  int rows() const { return d_.dim() + 1; }
  int Z() const { return d_.m() + 2 * d_.dim(); }
  std::uint32_t p() const { return field_.p; }
  const FieldConfig& field() const { return field_; }
  GenericMatrixSpec spec() const { return {rows(), Z()}; }
  const std::vector<int>& reference_facet() const { return reference_; }

  /// The bracket of the given ordered columns.
  RationalFunction bracket(const std::vector<int>& cols) const { return br(field_.p, rows(), cols); }

  struct Cache {
    std::mutex mu;
    std::map<std::vector<int>, ElementRep> reductions;
    std::map<Face, int> facet_signs;
  };
  Cache& cache() const { return *cache_; }

 private:
  SimplicialComplex d_;
  FieldConfig field_;
  std::vector<int> reference_;
  std::shared_ptr<Cache> cache_;
};

/// Coefficients of the linear relation sum_{t=1}^m [c_1,...,c_n,t] x_t, which vanishes in A.
inline std::vector<RationalFunction> linear_relation(const ReductionContext& ctx, const std::vector<int>& cols) {
  if (static_cast<int>(cols.size()) != ctx.n()) fail(ErrorKind::WrongLength, "relation needs n fixed columns");
  for (int c : cols)
    if (c < 1 || c > ctx.Z()) fail(ErrorKind::BadShape, "relation column out of range");
  std::vector<RationalFunction> coeffs;
  for (int t = 1; t <= ctx.m(); ++t) {
    auto c = cols;
    c.push_back(t);
    coeffs.push_back(ctx.bracket(c));
  }
  return coeffs;
}

inline ElementRep element_of_face(const ReductionContext& ctx, const Face& f) {
  ElementRep u{static_cast<int>(f.size()), {}};
  if (ctx.complex().is_face(f)) u.terms.emplace(f, RationalFunction::one(ctx.p()));
  return u;
}

namespace detail {

inline ElementRep reduce_rec(const ReductionContext& ctx, const XMonomial& g, int depth, ReductionTrace* trace) {
  const int deg = g.degree();
  const Face supp = g.support();
  if (trace) trace->max_depth = std::max(trace->max_depth, depth);
  if (!ctx.complex().is_face(supp)) return ElementRep{deg, {}};
  if (g.is_squarefree()) return element_of_face(ctx, supp);
  {
    std::lock_guard<std::mutex> lock(ctx.cache().mu);
    auto it = ctx.cache().reductions.find(g.exponents());
    if (it != ctx.cache().reductions.end() && !trace) return it->second;
  }
  int v = 0;
  for (int u = 1; u <= g.m(); ++u)
    if (g.exponent(u) >= 2) {
      v = u;
      break;
    }
  const Face facet = ctx.complex().facets_containing(supp).front();
  const Face c = face_difference(facet, {v});
  auto with = [&](int t) {
    auto cols = c;
    cols.push_back(t);
    return cols;
  };
  const RationalFunction pivot = ctx.bracket(with(v));
  ElementRep out{deg, {}};
  for (int t = 1; t <= ctx.m(); ++t) {
    if (std::binary_search(facet.begin(), facet.end(), t)) continue;
    XMonomial h = g;
    h.set(v, h.exponent(v) - 1);
    h.set(t, h.exponent(t) + 1);
    if (!ctx.complex().is_face(h.support())) continue;
    if (trace) {
      ++trace->rewrites;
      if (h.complexity() != g.complexity() - 1) trace->complexity_always_dropped = false;
    }
    const RationalFunction coeff = -(ctx.bracket(with(t)) / pivot);
    out = out + reduce_rec(ctx, h, depth + 1, trace).scaled(coeff);
  }
  std::lock_guard<std::mutex> lock(ctx.cache().mu);
  ctx.cache().reductions.emplace(g.exponents(), out);
  return out;
}

}  // namespace detail

/**
 * \brief Rewrites pi(g) as a combination of square-free face monomials.
 *
 * Each step picks the smallest vertex v with exponent >= 2 and the
 * lexicographically smallest facet F containing the support, and substitutes
 * x_v = -sum_{t not in F} [F-v, t] x_t / [F-v, v]. Every step lowers the
 * complexity by one.
 */
inline ElementRep reduce_to_squarefree(const ReductionContext& ctx, const XMonomial& g, ReductionTrace* trace = nullptr) {
  if (g.m() != ctx.m()) fail(ErrorKind::BadShape, "monomial lives on the wrong vertex set");
  if (g.degree() > ctx.n() + 1) fail(ErrorKind::DegreeTooHigh, "degree exceeds n+1");
  return detail::reduce_rec(ctx, g, 0, trace);
}

inline ElementRep reduce_to_squarefree(const ReductionContext& ctx, const std::vector<int>& vertices) {
  return reduce_to_squarefree(ctx, XMonomial::from_vertices(ctx.m(), vertices));
}

/// Re-expresses u so that no face in its support contains the vertex p.
inline ElementRep reduce_avoiding_vertex(const ReductionContext& ctx, const ElementRep& u, int p) {
  if (u.degree < 1 || u.degree > ctx.n() + 1) fail(ErrorKind::WrongDegree, "degree must lie in 1..n+1");
  ElementRep out{u.degree, {}};
  for (const auto& [eta, coeff] : u.terms) {
    if (!std::binary_search(eta.begin(), eta.end(), p)) {
      out.add_term(eta, coeff);
      continue;
    }
    const Face facet = ctx.complex().facets_containing(eta).front();
    const Face c = face_difference(facet, {p});
    auto cols_with = [&](int t) {
      auto cols = c;
      cols.push_back(t);
      return cols;
    };
    const Face rest = face_difference(eta, {p});
    const RationalFunction pivot = ctx.bracket(cols_with(p));
    bool any = false;
    for (int t = 1; t <= ctx.m(); ++t) {
      if (std::binary_search(facet.begin(), facet.end(), t)) continue;
      any = true;
      const Face target = face_union(rest, {t});
      if (!ctx.complex().is_face(target)) continue;
      out.add_term(target, -(ctx.bracket(cols_with(t)) / pivot) * coeff);
    }
    if (!any) fail(ErrorKind::CannotAvoid, "every vertex lies in the chosen facet");
  }
  return out;
}

/// Product in A, reduced to square-free form.
inline ElementRep multiply(const ReductionContext& ctx, const ElementRep& u, const ElementRep& w) {
  if (u.degree + w.degree > ctx.n() + 1) fail(ErrorKind::DegreeTooHigh, "product degree exceeds n+1");
  ElementRep out{u.degree + w.degree, {}};
  for (const auto& [s, a] : u.terms)
    for (const auto& [t, b] : w.terms) {
      auto verts = s;
      verts.insert(verts.end(), t.begin(), t.end());
      out = out + reduce_to_squarefree(ctx, verts).scaled(a * b);
    }
  out.degree = u.degree + w.degree;
  return out;
}

/// The forms f_i = sum_j a_{i,j} x_j specialised at a random point.
inline std::vector<FieldVector> specialized_forms(const ReductionContext& ctx, const RandomPoint& pt) {
  std::vector<FieldVector> forms(ctx.rows(), FieldVector(ctx.m()));
  for (int i = 1; i <= ctx.rows(); ++i)
    for (int j = 1; j <= ctx.m(); ++j) forms[i - 1][j - 1] = pt({i, j});
  return forms;
}

/// dim A_0 .. dim A_{max_degree} at one random specialisation.
inline std::vector<long long> hilbert_function_at(const ReductionContext& ctx, const FiniteField& f, std::uint64_t seed,
                                                  int max_degree) {
  RandomPoint pt(f, seed);
  GradedQuotient q(f, ctx.complex(), specialized_forms(ctx, pt));
  std::vector<long long> dims;
  for (int d = 0; d <= max_degree; ++d) dims.push_back(static_cast<long long>(q.dim(d)));
  return dims;
}

/// Hilbert function of A in degrees 0..n+1, accepted once two seeded runs agree.
inline std::vector<long long> hilbert_function(const ReductionContext& ctx, const std::vector<std::uint64_t>& seeds = {1, 2},
                                               std::vector<std::uint64_t>* used = nullptr) {
  FiniteField f(ctx.field().p, ctx.field().w);
  std::function<std::vector<long long>(std::uint64_t)> run = [&](std::uint64_t s) {
    return hilbert_function_at(ctx, f, s, ctx.n() + 1);
  };
  return agree_over_seeds(seeds, run, 6, used);
}

}  // namespace sraniso
