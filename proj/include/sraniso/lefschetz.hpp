#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "sraniso/artinian.hpp"
#include "sraniso/complex.hpp"
#include "sraniso/error.hpp"
#include "sraniso/finite_field.hpp"
#include "sraniso/graded.hpp"
#include "sraniso/linalg.hpp"
#include "sraniso/polynomial.hpp"
#include "sraniso/sampling.hpp"

namespace sraniso {

/**
 * \brief Data of the suspension construction for a closed pseudomanifold D on m vertices.
 *
 * A = k[S(D)]/(f_1..f_{n+2}), B = k[cone D]/(f_i restricted to x_1..x_{m+1}),
 * C = k[D]/(g_2..g_{n+2}) with g_i = sum_j c_{i,j} x_j and
 * c_{i,j} = a_{1,j} a_{i,m+1} - a_{i,j} a_{1,m+1}.
 */
struct SuspensionContext {
  SimplicialComplex d, suspended, coned;
  int n = 0;
  int m = 0;
  FieldConfig field;
  bool ideal_identity = false;  ///< g_i = a_{i,m+1} f_1 - a_{1,m+1} f_i + x_{m+2}(...) verified symbolically

  int forms() const { return n + 2; }
};

namespace detail {

/// Linear form in x_1..x_len with polynomial coefficients in the a-variables.
using SymbolicForm = std::vector<Polynomial>;

inline SymbolicForm generic_form(std::uint32_t p, int row, int len) {
  SymbolicForm f;
  for (int j = 1; j <= len; ++j) f.push_back(Polynomial::variable(p, {row, j}));
  return f;
}

inline Polynomial a_var(std::uint32_t p, int i, int j) { return Polynomial::variable(p, {i, j}); }

/// c_{i,j} = det [[a_{1,j}, a_{1,m+1}], [a_{i,j}, a_{i,m+1}]].
inline Polynomial c_coeff(std::uint32_t p, int i, int j, int m) {
  return a_var(p, 1, j) * a_var(p, i, m + 1) - a_var(p, i, j) * a_var(p, 1, m + 1);
}

inline bool check_ideal_identity(std::uint32_t p, int n, int m) {
  const int len = m + 2;
  const SymbolicForm f1 = generic_form(p, 1, len);
  for (int i = 2; i <= n + 2; ++i) {
    const SymbolicForm fi = generic_form(p, i, len);
    SymbolicForm g(static_cast<std::size_t>(len), Polynomial(p));
    for (int j = 1; j <= m; ++j) g[static_cast<std::size_t>(j - 1)] = c_coeff(p, i, j, m);
    const Polynomial ai = a_var(p, i, m + 1), a1 = a_var(p, 1, m + 1);
    SymbolicForm rhs(static_cast<std::size_t>(len), Polynomial(p));
    for (std::size_t j = 0; j < static_cast<std::size_t>(len); ++j) rhs[j] = ai * f1[j] - a1 * fi[j];
    rhs[static_cast<std::size_t>(m + 1)] += a1 * a_var(p, i, m + 2) - ai * a_var(p, 1, m + 2);
    if (g != rhs) return false;
  }
  return true;
}

}  // namespace detail

inline SuspensionContext build_suspension_context(const SimplicialComplex& d, FieldConfig field = {}) {
  if (!is_closed_pseudomanifold(d).ok) fail(ErrorKind::BadShape, "the suspension construction needs a closed pseudomanifold");
  if (!is_prime(field.p)) fail(ErrorKind::ConfigError, "characteristic must be prime");
  SuspensionContext s;
  s.d = d;
  s.suspended = suspension(d);
  s.coned = cone(d);
  s.n = d.dim();
  s.m = d.m();
  s.field = field;
  s.ideal_identity = detail::check_ideal_identity(field.p, s.n, s.m);
  return s;
}

/// One random specialisation of A, B and C, sharing the point a_{i,j} -> GF(p^w).
class SuspensionSample {
 public:
  SuspensionSample(const SuspensionContext& s, std::uint64_t seed) : field_(s.field.p, s.field.w) {
    std::uint64_t sd = seed;
    for (;;) {
      RandomPoint pt(field_, sd);
      if (pt({1, s.m + 1}) != field_.zero()) break;
      sd = splitmix64(sd);
    }
    seed_ = sd;
    RandomPoint pt(field_, sd);
    const auto& f = field_;
    std::vector<FieldVector> fa, fb, gc;
    for (int i = 1; i <= s.forms(); ++i) {
      FieldVector row(static_cast<std::size_t>(s.m + 2)), rowb(static_cast<std::size_t>(s.m + 1));
      for (int j = 1; j <= s.m + 2; ++j) row[j - 1] = pt({i, j});
      std::copy(row.begin(), row.begin() + s.m + 1, rowb.begin());
      fa.push_back(row);
      fb.push_back(rowb);
    }
    const auto a1 = pt({1, s.m + 1});
    for (int i = 2; i <= s.forms(); ++i) {
      FieldVector g(static_cast<std::size_t>(s.m));
      for (int j = 1; j <= s.m; ++j) g[j - 1] = f.sub(f.mul(pt({1, j}), pt({i, s.m + 1})), f.mul(pt({i, j}), a1));
      gc.push_back(g);
    }
    omega_.assign(static_cast<std::size_t>(s.m), 0);
    const auto inv = f.inv(a1);
    for (int j = 1; j <= s.m; ++j) omega_[j - 1] = f.neg(f.mul(pt({1, j}), inv));
    for (int i = 1; i <= s.forms(); ++i) {
      FieldVector phi(static_cast<std::size_t>(s.m));
      for (int j = 1; j <= s.m; ++j) phi[j - 1] = f.add(pt({i, j}), f.mul(pt({i, s.m + 1}), omega_[j - 1]));
      phi_forms_.push_back(phi);
    }
    a_ = std::make_unique<GradedQuotient>(field_, s.suspended, fa);
    b_ = std::make_unique<GradedQuotient>(field_, s.coned, fb);
    c_ = std::make_unique<GradedQuotient>(field_, s.d, gc);
  }

  const FiniteField& field() const { return field_; }
  std::uint64_t seed() const { return seed_; }
  const GradedQuotient& a() const { return *a_; }
  const GradedQuotient& b() const { return *b_; }
  const GradedQuotient& c() const { return *c_; }
  /// Coefficients of omega = -sum (a_{1,i}/a_{1,m+1}) x_i.
  const FieldVector& omega() const { return omega_; }
  /// phi(f_i) = f_i with x_{m+1} replaced by omega and x_{m+2} by 0.
  const std::vector<FieldVector>& phi_forms() const { return phi_forms_; }

 private:
  FiniteField field_;
  std::uint64_t seed_ = 0;
  FieldVector omega_;
  std::vector<FieldVector> phi_forms_;
  std::unique_ptr<GradedQuotient> a_, b_, c_;
};

struct InjectivityReport {
  bool holds = false;
  std::size_t dim_source = 0;
  std::size_t rank = 0;
  std::vector<std::uint64_t> seeds;
};

/// The map B_j -> A_{j+1}, u -> x_{m+1} u, has rank dim B_j.
inline InjectivityReport check_m_injectivity(const SuspensionContext& s, int j, const std::vector<std::uint64_t>& seeds = {1, 2}) {
  if (j < 0) fail(ErrorKind::BadShape, "negative degree");
  InjectivityReport rep;
  if (j > s.n + 1) {
    rep.holds = true;
    return rep;
  }
  std::function<std::pair<std::size_t, std::size_t>(std::uint64_t)> run = [&](std::uint64_t seed) {
    SuspensionSample smp(s, seed);
    const auto& b = smp.b();
    const auto& a = smp.a();
    EchelonBasis img(smp.field(), a.monomials(j + 1).size());
    for (std::size_t k : b.basis(j)) {
      VertexMultiset mu = b.monomials(j)[k];
      mu.push_back(s.m + 1);
      std::sort(mu.begin(), mu.end());
      img.insert(a.normal_form(j + 1, a.monomial_vector(j + 1, mu)));
    }
    return std::make_pair(b.dim(j), img.rank());
  };
  const auto [dim, rank] = agree_over_seeds(seeds, run, 6, &rep.seeds);
  rep.dim_source = dim;
  rep.rank = rank;
  rep.holds = rank == dim;
  return rep;
}

/// One multiplication map omega^power: C_from -> C_to.
struct RankRow {
  int from = 0;
  int to = 0;
  std::size_t dim_from = 0, dim_to = 0, rank = 0;
  bool ok = false;

  bool operator==(const RankRow&) const = default;
};

struct LefschetzReport {
  bool holds = false;
  std::vector<std::size_t> dims;  ///< dim C_0 .. dim C_{n+1}
  std::vector<RankRow> table;
  std::vector<std::uint64_t> seeds;
};

namespace detail {

using RankTable = std::pair<std::vector<std::size_t>, std::vector<RankRow>>;

inline LefschetzReport lefschetz_from_table(RankTable t, std::vector<std::uint64_t> seeds) {
  LefschetzReport rep;
  rep.dims = std::move(t.first);
  rep.table = std::move(t.second);
  rep.seeds = std::move(seeds);
  rep.holds = std::all_of(rep.table.begin(), rep.table.end(), [](const RankRow& r) { return r.ok; });
  return rep;
}

inline std::vector<std::size_t> c_dims(const SuspensionContext& s, const SuspensionSample& smp) {
  std::vector<std::size_t> dims;
  for (int j = 0; j <= s.n + 1; ++j) dims.push_back(smp.c().dim(j));
  return dims;
}

}  // namespace detail

/// Maximal rank of multiplication by omega on C in every degree 0..n (the middle degree alone already suffices).
inline LefschetzReport check_wlp(const SuspensionContext& s, const std::vector<std::uint64_t>& seeds = {1, 2}) {
  std::function<detail::RankTable(std::uint64_t)> run = [&](std::uint64_t seed) {
    SuspensionSample smp(s, seed);
    detail::RankTable t{detail::c_dims(s, smp), {}};
    for (int j = 0; j <= s.n; ++j) {
      RankRow r{j, j + 1, t.first[j], t.first[j + 1], smp.c().map_rank(j, smp.omega(), 1), false};
      r.ok = r.rank == std::min(r.dim_from, r.dim_to);
      t.second.push_back(r);
    }
    return t;
  };
  std::vector<std::uint64_t> used;
  auto t = agree_over_seeds(seeds, run, 6, &used);
  return detail::lefschetz_from_table(std::move(t), std::move(used));
}

/// omega^{n+1-2i}: C_i -> C_{n+1-i} bijective for every i with 2i <= n+1.
inline LefschetzReport check_slp(const SuspensionContext& s, const std::vector<std::uint64_t>& seeds = {1, 2}) {
  std::function<detail::RankTable(std::uint64_t)> run = [&](std::uint64_t seed) {
    SuspensionSample smp(s, seed);
    detail::RankTable t{detail::c_dims(s, smp), {}};
    for (int i = 0; 2 * i <= s.n + 1; ++i) {
      const int to = s.n + 1 - i;
      RankRow r{i, to, t.first[i], t.first[to], smp.c().map_rank(i, smp.omega(), to - i), false};
      r.ok = r.rank == r.dim_from && r.dim_from == r.dim_to;
      t.second.push_back(r);
    }
    return t;
  };
  std::vector<std::uint64_t> used;
  auto t = agree_over_seeds(seeds, run, 6, &used);
  return detail::lefschetz_from_table(std::move(t), std::move(used));
}

struct PhiReport {
  bool holds = false;
  bool well_defined = false;   ///< every phi(f_i) vanishes in C_1
  bool omega_matches = false;  ///< pi_B(omega) = pi_B(x_{m+1})
  bool surjective = false;     ///< phi maps B_j onto C_j in every degree
  std::vector<std::size_t> dims_b, dims_c;
  std::vector<std::uint64_t> seeds;

  bool operator==(const PhiReport&) const = default;
};

/// B -> C, x_i -> x_i, x_{m+1} -> omega, x_{m+2} -> 0, is a well-defined graded isomorphism.
inline PhiReport phi_isomorphism_check(const SuspensionContext& s, const std::vector<std::uint64_t>& seeds = {1, 2}) {
  std::function<PhiReport(std::uint64_t)> run = [&](std::uint64_t seed) {
    SuspensionSample smp(s, seed);
    const auto& b = smp.b();
    const auto& c = smp.c();
    const auto& f = smp.field();
    PhiReport r;
    for (int j = 0; j <= s.n + 2; ++j) {
      r.dims_b.push_back(b.dim(j));
      r.dims_c.push_back(c.dim(j));
    }
    r.well_defined = true;
    for (const auto& phi : smp.phi_forms()) r.well_defined = r.well_defined && c.is_zero(1, phi);
    FieldVector diff(b.monomials(1).size(), 0);
    diff[b.index_of(1, {s.m + 1})] = f.one();
    for (int i = 1; i <= s.m; ++i) diff[b.index_of(1, {i})] = f.neg(smp.omega()[i - 1]);
    r.omega_matches = b.is_zero(1, diff);
    r.surjective = true;
    for (int j = 0; j <= s.n + 1; ++j) {
      EchelonBasis img(f, c.monomials(j).size());
      for (std::size_t k : b.basis(j)) {
        VertexMultiset mu = b.monomials(j)[k];
        const auto apex = std::count(mu.begin(), mu.end(), s.m + 1);
        mu.erase(std::remove(mu.begin(), mu.end(), s.m + 1), mu.end());
        const int base = j - static_cast<int>(apex);
        FieldVector v = c.monomial_vector(base, mu);
        for (int t = 0; t < apex; ++t) v = c.multiply_by_form(base + t, v, smp.omega());
        img.insert(c.normal_form(j, v));
      }
      r.surjective = r.surjective && img.rank() == c.dim(j);
    }
    r.holds = r.well_defined && r.omega_matches && r.surjective && r.dims_b == r.dims_c;
    return r;
  };
  std::vector<std::uint64_t> used;
  PhiReport rep = agree_over_seeds(seeds, run, 6, &used);
  rep.seeds = used;
  return rep;
}

}  // namespace sraniso
