#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>

#include "oracles.hpp"

using namespace sraniso;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

/// Collects failures of one criterion; `check` records a witness when `ok` is false.
struct Outcome {
  bool ok = true;
  std::string witness;

  void check(bool cond, const std::string& what) {
    if (!cond && ok) witness = what;
    ok = ok && cond;
  }
  void within(double elapsed, double limit, const std::string& what) {
    std::ostringstream s;
    s << what << " took " << elapsed << " s (limit " << limit << " s)";
    check(elapsed < limit, s.str());
  }
};

RationalFunction b(std::uint32_t p, std::vector<int> cols) { return br(p, static_cast<int>(cols.size()), std::move(cols)); }

std::string str(const RationalFunction& f) { return f.to_string(); }

Outcome polygon_square_value() {
  Outcome o;
  for (int m = 3; m <= 8; ++m) {
    const auto t0 = Clock::now();
    const ReductionContext ctx(polygon(m));
    const auto expected = b(2, {1, 3}) / (b(2, {1, 2}) * b(2, {2, 3}));
    const auto codim1 = psi_codim1_square(ctx, {2}, 2);
    const auto sum = psi_sum_formula(ctx, {2}, {});
    o.check(rf_equals(codim1, expected), "m=" + std::to_string(m) + " codim-1 value " + str(codim1));
    o.check(rf_equals(sum, expected), "m=" + std::to_string(m) + " sum formula " + str(sum));
    o.within(seconds_since(t0), 1.0, "m=" + std::to_string(m));
  }
  return o;
}

Outcome join_sphere_four_terms() {
  Outcome o;
  const auto t0 = Clock::now();
  const ReductionContext ctx(oracle::corpus_entry("join_s0_triangle_s0").complex);
  const int r = 8;
  RationalFunction quoted = RationalFunction::zero(2);
  for (auto [a, c] : {std::pair{4, 6}, {6, 5}, {5, 7}, {7, 4}})
    quoted += b(2, {1, a, c, r}) * b(2, {3, a, c, r}) / (b(2, {1, 3, a, c}) * b(2, {1, 3, a, r}) * b(2, {1, 3, c, r}));
  const auto reduced = psi_monomial(ctx, {1, 1, 3, 3});
  o.check(rf_equals(reduced, quoted), "reduction value " + str(reduced));
  o.check(rf_equals(psi_sum_formula(ctx, {1, 3}, {}, r), quoted), "sum formula differs from the four quoted terms");
  o.within(seconds_since(t0), 10.0, "total");
  return o;
}

Outcome minor_identities() {
  Outcome o;
  IdentityOptions opt;
  opt.budget_seconds = 120;
  for (auto [h, family, limit] : {std::tuple{2, MinorFamily::N, 1.0}, {2, MinorFamily::P, 1.0}, {3, MinorFamily::Q, 1.0},
                                  {4, MinorFamily::N, 60.0}, {5, MinorFamily::Q, 1e9}}) {
    const std::string tag = std::string(to_string(family)) + std::to_string(h);
    const auto t0 = Clock::now();
    const auto rep = verify_minor_identity(h, family, opt);
    o.check(rep.method == "exact", tag + " method " + rep.method);
    o.check(rep.holds, tag + " lhs " + rep.lhs + " rhs " + rep.rhs);
    o.within(seconds_since(t0), limit, tag);
  }
  return o;
}

Outcome derivative_examples() {
  Outcome o;
  auto t0 = Clock::now();
  for (int m : {3, 4, 5}) {
    const ReductionContext pg(polygon(m));
    const auto x22 = b(2, {1, 3}) / (b(2, {1, 2}) * b(2, {2, 3}));
    const auto psi = psi_monomial(pg, {2, 2});
    o.check(rf_equals(psi, x22), "x_2^2 on m=" + std::to_string(m));
    const auto d1 = apply(build_op_sigma(pg, {1}), psi);
    o.check(rf_equals(d1, b(2, {1, 2}).square().inverse()), "d_1 value " + str(d1));
    o.check(rf_equals(d1, psi_monomial(pg, {1, 2}).square()), "d_1 vs (x_1 x_2)^2");
    const auto d2 = apply(build_op_sigma(pg, {2}), psi);
    o.check(rf_equals(d2, x22.square()), "d_2 value " + str(d2));
    if (m >= 4) {
      const auto d4 = apply(build_op_sigma(pg, {4}), psi);
      o.check(d4.is_zero(), "d_4 value " + str(d4));
      o.check(psi_monomial(pg, {2, 4}).is_zero(), "x_2 x_4 nonzero");
    }
  }
  o.within(seconds_since(t0), 1.0, "odd example");

  t0 = Clock::now();
  const ReductionContext tet(boundary_simplex(2));
  const auto value = psi_monomial(tet, {1, 2, 2});
  o.check(rf_equals(value, b(2, {1, 3, 4}) / (b(2, {1, 2, 3}) * b(2, {1, 2, 4}))), "x_2^2 x_1 value " + str(value));
  const std::vector<std::pair<int, RationalFunction>> expected{
      {2, value.square()}, {3, b(2, {1, 2, 3}).square().inverse()}, {4, b(2, {1, 2, 4}).square().inverse()}};
  for (const auto& [s, want] : expected) {
    const auto d = apply(build_op_p_sigma(tet.complex(), 1, {s}), value);
    o.check(rf_equals(d, want), "d_{1," + std::to_string(s) + "} value " + str(d));
    std::vector<int> g{1, 2, s};
    std::sort(g.begin(), g.end());
    o.check(rf_equals(d, psi_monomial(tet, g).square()), "d_{1," + std::to_string(s) + "} vs square");
  }
  o.within(seconds_since(t0), 1.0, "even example");
  return o;
}

Outcome square_identity_instances() {
  Outcome o;
  std::vector<SimplicialComplex> odd{polygon(4), polygon(5), polygon(6), boundary_simplex(3)};
  for (const auto& d : odd) {
    const ReductionContext ctx(d);
    const int l = (ctx.n() + 1) / 2;
    const auto faces = d.faces_of_size(l);
    for (const auto& sigma : faces)
      for (const auto& tau : faces) {
        const auto rep = verify_square_identity_odd(ctx, sigma, tau);
        o.check(rep.holds, "odd m=" + std::to_string(d.m()) + " sigma=" + face_to_string(sigma) + " tau=" + face_to_string(tau) +
                               ": " + str(rep.lhs) + " vs " + str(rep.rhs));
      }
  }
  for (const auto& d : {boundary_simplex(2), suspension(polygon(4))}) {
    const ReductionContext ctx(d);
    const int l = ctx.n() / 2;
    for (const auto& top : d.faces_of_size(l + 1))
      for (int p : top) {
        Face sigma;
        for (int v : top)
          if (v != p) sigma.push_back(v);
        for (const auto& tau : d.faces_of_size(l)) {
          if (std::find(tau.begin(), tau.end(), p) != tau.end()) continue;
          const auto rep = verify_square_identity_even(ctx, p, sigma, tau);
          o.check(rep.holds, "even m=" + std::to_string(d.m()) + " p=" + std::to_string(p) + " sigma=" + face_to_string(sigma) +
                                 " tau=" + face_to_string(tau) + ": " + str(rep.lhs) + " vs " + str(rep.rhs));
        }
      }
  }
  return o;
}

Outcome polygon_suite() {
  Outcome o;
  const auto t0 = Clock::now();
  for (std::uint32_t p : {2u, 3u, 5u})
    for (int m = 3; m <= 8; ++m) {
      const ReductionContext ctx(polygon(m), FieldConfig::with_default_degree(p));
      const auto det = polygon_gram_det(ctx);
      o.check(rf_equals(det, polygon_det_closed_form(ctx)), "det p=" + std::to_string(p) + " m=" + std::to_string(m) + " " + str(det));
    }
  for (int m = 3; m <= 8; ++m) {
    const ReductionContext ctx(polygon(m));
    const auto ob = polygon_orthogonal_basis(ctx);
    for (std::size_t i = 0; i < ob.pairing.size(); ++i)
      for (std::size_t j = 0; j < ob.pairing.size(); ++j)
        if (i != j)
          o.check(ob.pairing[i][j].is_zero(), "orthogonality m=" + std::to_string(m) + " (" + std::to_string(i + 1) + "," +
                                                  std::to_string(j + 1) + ") " + str(ob.pairing[i][j]));
        else
          o.check(rf_equals(ob.pairing[i][i], polygon_orthogonal_diagonal(2, static_cast<int>(i) + 1)),
                  "diagonal m=" + std::to_string(m) + " i=" + std::to_string(i + 1));
  }
  for (int m = 3; m <= 12; ++m) o.check(polygon_anisotropy_proof(m).holds, "initial terms collide at m=" + std::to_string(m));
  o.within(seconds_since(t0), 120.0, "total");
  return o;
}

Outcome hilbert_agreement() {
  Outcome o;
  const auto t0 = Clock::now();
  for (const auto& entry : oracle::corpus()) {
    const ReductionContext ctx(entry.complex, FieldConfig{2, 32});
    o.check(hilbert_function(ctx, {1, 2}) == h_vector(entry.complex), entry.name);
  }
  o.within(seconds_since(t0), 30.0, "total");
  return o;
}

Outcome psi_crosscheck() {
  Outcome o;
  for (const auto& entry : oracle::corpus()) {
    const ReductionContext ctx(entry.complex);
    const int r1 = ctx.m() + 1, r2 = ctx.m() + 2;
    for (const auto& sigma : entry.complex.facets()) {
      const auto path = psi_facet(ctx, sigma);
      o.check(rf_equals(path, psi_sum_formula(ctx, {}, sigma, r1)), entry.name + " facet " + face_to_string(sigma));
      o.check(rf_equals(path, psi_sum_formula(ctx, {}, sigma, r2)), entry.name + " facet " + face_to_string(sigma) + " r=m+2");
    }
    for (const auto& ridge : entry.complex.faces_of_size(ctx.n()))
      for (int c : ridge) {
        Face rest;
        for (int v : ridge)
          if (v != c) rest.push_back(v);
        const auto path = psi_codim1_square(ctx, ridge, c);
        const auto s1 = psi_sum_formula(ctx, {c}, rest, r1);
        const auto s2 = psi_sum_formula(ctx, {c}, rest, r2);
        const std::string tag = entry.name + " ridge " + face_to_string(ridge) + " squared " + std::to_string(c);
        o.check(rf_equals(path, s1), tag + ": " + str(path) + " vs " + str(s1));
        o.check(rf_equals(s1, s2), tag + " depends on the fresh column");
      }
  }
  return o;
}

Outcome lefschetz_suite() {
  Outcome o;
  const auto t0 = Clock::now();
  std::vector<std::pair<std::string, SimplicialComplex>> cases;
  for (int m = 4; m <= 8; ++m) cases.emplace_back("polygon" + std::to_string(m), polygon(m));
  cases.emplace_back("boundary_simplex2", boundary_simplex(2));
  cases.emplace_back("boundary_simplex3", boundary_simplex(3));
  cases.emplace_back("octahedron", suspension(polygon(4)));
  for (const auto& [name, d] : cases) {
    const auto s = build_suspension_context(d);
    o.check(check_wlp(s, {1, 2}).holds, name + " weak");
    o.check(check_slp(s, {1, 2}).holds, name + " strong");
  }
  o.within(seconds_since(t0), 120.0, "total");
  return o;
}

Outcome certificate_suite() {
  Outcome o;
  for (const auto& entry : oracle::corpus()) {
    const ReductionContext ctx(entry.complex);
    const int l = (ctx.n() + 1) / 2;
    for (int j = 0; j <= l; ++j)
      for (const auto& face : squarefree_basis(ctx, j)) {
        const std::string tag = entry.name + " " + face_to_string(face);
        try {
          const auto u = element_of_face(ctx, face);
          const auto cert = nonzero_square_certificate(ctx, u);
          o.check(certificate_derivative_matches(ctx, u, cert), tag + " derivative mismatch");
        } catch (const Error& e) {
          o.check(false, tag + ": " + e.what());
        }
      }
  }
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"polygon x_2^2 socle value (m = 3..8)", polygon_square_value},
      {"join sphere x_1^2 x_3^2 as four link terms", join_sphere_four_terms},
      {"minor derivative identities N2 P2 Q3 N4 Q5", minor_identities},
      {"worked derivative values (odd and even dimension)", derivative_examples},
      {"square identities on the instance suite", square_identity_instances},
      {"polygon Gram determinant, orthogonal basis, initial terms", polygon_suite},
      {"Hilbert function equals h-vector on the corpus", hilbert_agreement},
      {"facet-path and sum-formula values agree on the corpus", psi_crosscheck},
      {"weak and strong Lefschetz instances", lefschetz_suite},
      {"nonzero-square certificates on the corpus", certificate_suite},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto t0 = Clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.check(false, std::string("exception: ") + e.what());
    }
    std::printf("%s %zu %s (%.1f s)%s%s\n", o.ok ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(), seconds_since(t0),
                o.ok ? "" : " -- ", o.witness.c_str());
    std::fflush(stdout);
    if (!o.ok) ++failures;
  }
  return failures == 0 ? 0 : 1;
}
