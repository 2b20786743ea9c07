#include <gtest/gtest.h>

#include "oracles.hpp"

namespace sraniso {
namespace {

ErrorKind kind_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "expected an error";
  return ErrorKind::ConfigError;
}

RationalFunction b2(std::uint32_t p, int i, int j) { return br(p, 2, {i, j}); }

ReductionContext context(const SimplicialComplex& d, std::uint32_t p) { return ReductionContext(d, FieldConfig::with_default_degree(p)); }

std::vector<Face> polygon_edges(int m) {
  std::vector<Face> out;
  for (int i = 1; i < m; ++i) out.push_back({i, i + 1});
  out.push_back({1, m});
  std::sort(out.begin(), out.end());
  return out;
}

TEST(Certificate, PolygonVertex) {
  const ReductionContext ctx(polygon(5));
  const auto u = element_of_face(ctx, {1});
  const auto cert = nonzero_square_certificate(ctx, u);
  EXPECT_FALSE(cert.p.has_value());
  EXPECT_EQ(cert.h, Face{});
  EXPECT_EQ(cert.sigma, Face{1});
  EXPECT_FALSE(cert.value.is_zero());
  EXPECT_TRUE(certificate_derivative_matches(ctx, u, cert));
}

TEST(Certificate, Errors) {
  const ReductionContext ctx(polygon(5));
  EXPECT_EQ(kind_of([&] { nonzero_square_certificate(ctx, ElementRep{1, {}}); }), ErrorKind::ZeroInput);
  ElementRep relation{1, {}};
  const auto coeffs = linear_relation(ctx, {1});
  for (int t = 1; t <= 5; ++t) relation.add_term({t}, coeffs[static_cast<std::size_t>(t - 1)]);
  EXPECT_FALSE(relation.is_zero());
  EXPECT_EQ(kind_of([&] { nonzero_square_certificate(ctx, relation); }), ErrorKind::ZeroInput);
  EXPECT_EQ(kind_of([&] { nonzero_square_certificate(ctx, element_of_face(ctx, {1, 2})); }), ErrorKind::WrongDegree);
  EXPECT_EQ(kind_of([] {
              const auto c3 = context(polygon(5), 3);
              nonzero_square_certificate(c3, element_of_face(c3, {1}));
            }),
            ErrorKind::CharNot2);
}

TEST(Certificate, OctahedronUsesLinearVertex) {
  const ReductionContext ctx(suspension(polygon(4)));
  const auto basis = squarefree_basis(ctx, 1);
  EXPECT_EQ(basis.size(), 3u);
  for (const auto& b : basis) {
    const auto u = element_of_face(ctx, b);
    const auto cert = nonzero_square_certificate(ctx, u);
    ASSERT_TRUE(cert.p.has_value());
    EXPECT_EQ(cert.sigma.size(), 1u);
    EXPECT_TRUE(certificate_derivative_matches(ctx, u, cert)) << face_to_string(b);
  }
}

TEST(Certificate, EveryBasisElementOnCorpus) {
  for (const auto& entry : oracle::corpus()) {
    const ReductionContext ctx(entry.complex);
    const int n = ctx.n();
    const int l = n % 2 ? (n + 1) / 2 : n / 2;
    for (int j = 0; j <= l; ++j) {
      const auto basis = squarefree_basis(ctx, j);
      EXPECT_EQ(static_cast<long long>(basis.size()), h_vector(entry.complex)[static_cast<std::size_t>(j)]) << entry.name;
      for (const auto& b : basis) {
        const auto u = element_of_face(ctx, b);
        SquareCertificate cert;
        ASSERT_NO_THROW(cert = nonzero_square_certificate(ctx, u)) << entry.name << " " << face_to_string(b);
        EXPECT_TRUE(certificate_derivative_matches(ctx, u, cert)) << entry.name << " " << face_to_string(b);
      }
    }
  }
}

TEST(Certificate, SampledCombinations) {
  for (const auto& name : {"polygon5", "octahedron", "simplex_boundary3"}) {
    const ReductionContext ctx(oracle::corpus_entry(name).complex);
    const auto s = sample_combination_certificates(ctx, 1, 4, 77);
    EXPECT_EQ(s.samples, 4);
    EXPECT_EQ(s.certified, 4) << name;
  }
}

TEST(Gram, FourGon) {
  for (std::uint32_t p : {2u, 3u, 5u}) {
    const auto g = polygon_gram(context(polygon(4), p));
    ASSERT_EQ(g.size(), 2u);
    EXPECT_TRUE(rf_equals(g.entries[0][0], -(b2(p, 1, 3) / (b2(p, 1, 2) * b2(p, 2, 3)))));
    EXPECT_TRUE(rf_equals(g.entries[0][1], b2(p, 2, 3).inverse()));
    EXPECT_TRUE(rf_equals(g.entries[1][0], b2(p, 2, 3).inverse()));
    EXPECT_TRUE(rf_equals(g.entries[1][1], -(b2(p, 2, 4) / (b2(p, 2, 3) * b2(p, 3, 4)))));
  }
}

TEST(Gram, TriangleAndTridiagonal) {
  const auto g3 = polygon_gram(context(polygon(3), 3));
  ASSERT_EQ(g3.size(), 1u);
  EXPECT_TRUE(rf_equals(g3.entries[0][0], -(b2(3, 1, 3) / (b2(3, 1, 2) * b2(3, 2, 3)))));
  for (int m = 4; m <= 8; ++m) {
    const auto g = polygon_gram(ReductionContext(polygon(m)));
    for (std::size_t i = 0; i < g.size(); ++i)
      for (std::size_t j = 0; j < g.size(); ++j) {
        EXPECT_TRUE(rf_equals(g.entries[i][j], g.entries[j][i]));
        const bool band = (i > j ? i - j : j - i) <= 1;
        EXPECT_EQ(g.entries[i][j].is_zero(), !band) << "m=" << m << " (" << i << "," << j << ")";
      }
  }
  EXPECT_EQ(kind_of([] { polygon_gram(ReductionContext(suspension(polygon(4)))); }), ErrorKind::NotPolygon);
}

TEST(Gram, DeterminantClosedForm) {
  for (std::uint32_t p : {2u, 3u, 5u})
    for (int m = 3; m <= 8; ++m) {
      const auto ctx = context(polygon(m), p);
      RationalFunction expected = b2(p, 1, m);
      for (int i = 1; i < m; ++i) expected /= b2(p, i, i + 1);
      if (m % 2) expected = -expected;
      EXPECT_TRUE(rf_equals(polygon_det_closed_form(ctx), expected));
      EXPECT_TRUE(rf_equals(polygon_gram_det(ctx), expected)) << "p=" << p << " m=" << m;
    }
  const auto c4 = context(polygon(4), 3);
  const auto plucker = (b2(3, 1, 3) * b2(3, 2, 4) - b2(3, 1, 2) * b2(3, 3, 4)) / (b2(3, 1, 2) * b2(3, 2, 3).square() * b2(3, 3, 4));
  EXPECT_TRUE(rf_equals(polygon_gram_det(c4), plucker));
  EXPECT_EQ(kind_of([] { polygon_gram_det(ReductionContext(boundary_simplex(2))); }), ErrorKind::NotPolygon);
}

TEST(OrthogonalBasis, PairingIsDiagonal) {
  for (std::uint32_t p : {2u, 3u})
    for (int m = 3; m <= 8; ++m) {
      const auto ctx = context(polygon(m), p);
      const auto ob = polygon_orthogonal_basis(ctx);
      ASSERT_EQ(ob.vectors.size(), static_cast<std::size_t>(m - 2));
      for (int i = 0; i < m - 2; ++i) {
        EXPECT_TRUE(rf_equals(ob.diagonal[i], polygon_orthogonal_diagonal(p, i + 1))) << "p=" << p << " m=" << m << " i=" << i + 1;
        for (int j = 0; j < m - 2; ++j)
          if (i != j) {
            EXPECT_TRUE(ob.pairing[i][j].is_zero()) << "m=" << m << " (" << i + 1 << "," << j + 1 << ")";
          }
      }
    }
  const ReductionContext ctx(polygon(5));
  const auto ob = polygon_orthogonal_basis(ctx);
  ASSERT_EQ(ob.vectors[0].terms.size(), 1u);
  EXPECT_TRUE(rf_equals(ob.vectors[0].terms.at({2}), RationalFunction::one(2)));
  EXPECT_TRUE(rf_equals(ob.diagonal[1], -(b2(2, 1, 4) / (b2(2, 1, 3) * b2(2, 3, 4)))));
}

TEST(AnisotropyProof, SixGonFactors) {
  const std::vector<BracketKey> l{{1, 2, {1, 2}}, {1, 2, {1, 3}}, {1, 2, {1, 4}}, {1, 2, {1, 5}},
                                  {1, 2, {2, 3}}, {1, 2, {3, 4}}, {1, 2, {4, 5}}, {1, 2, {5, 6}}};
  for (int t = 1; t <= 4; ++t) {
    std::multiset<BracketKey> expected(l.begin(), l.end());
    expected.erase(expected.find(BracketKey{1, 2, {1, t + 1}}));
    expected.erase(expected.find(BracketKey{1, 2, {t + 1, t + 2}}));
    expected.insert(BracketKey{1, 2, {1, t + 2}});
    const auto got = polygon_weight_factors(6, t);
    EXPECT_EQ(std::multiset<BracketKey>(got.begin(), got.end()), expected) << "t=" << t;
  }
}

TEST(AnisotropyProof, HoldsForSmallPolygons) {
  for (int m = 3; m <= 12; ++m) {
    const auto proof = polygon_anisotropy_proof(m);
    EXPECT_TRUE(proof.holds) << "m=" << m;
    ASSERT_EQ(proof.rows.size(), static_cast<std::size_t>(m - 2));
    std::set<std::string> seen;
    for (const auto& row : proof.rows) {
      EXPECT_EQ(row.row1_exponents[0], m - 2) << "m=" << m << " t=" << row.t;
      EXPECT_TRUE(seen.insert(row.initial.to_string()).second) << "m=" << m;
    }
  }
  EXPECT_EQ(kind_of([] { polygon_anisotropy_proof(2); }), ErrorKind::TooSmall);
}

TEST(AnisotropyProof, InitialTermsMatchExpandedProducts) {
  for (int m = 3; m <= 6; ++m) {
    const auto proof = polygon_anisotropy_proof(m);
    for (const auto& row : proof.rows) {
      std::vector<Polynomial> factors;
      for (const auto& k : polygon_weight_factors(m, row.t)) factors.push_back(minor_poly(2, k));
      EXPECT_EQ(initial_monomial(Polynomial::product(2, factors)), row.initial) << "m=" << m << " t=" << row.t;
    }
  }
}

TEST(Valuation, Examples) {
  EXPECT_EQ(bracket_valuation(b2(2, 1, 2).pow(3) * b2(2, 1, 3), 1, 2), 3);
  EXPECT_EQ(bracket_valuation(b2(3, 1, 3) / b2(3, 1, 2).square(), 1, 2), -2);
  EXPECT_EQ(bracket_valuation(b2(3, 1, 3) * b2(3, 2, 4) - b2(3, 1, 2) * b2(3, 3, 4), 1, 4), 1);
  EXPECT_EQ(kind_of([] { bracket_valuation(RationalFunction::zero(2), 1, 2); }), ErrorKind::ZeroInput);
  for (int m = 4; m <= 7; ++m) {
    const auto det = polygon_gram_det(context(polygon(m), 3));
    EXPECT_EQ(bracket_valuation(det, 1, m), 1);
    EXPECT_EQ(bracket_valuation(det, 1, 3), 0);
    EXPECT_EQ(bracket_valuation(det, 2, 3), -1);
  }
}

TEST(Recovery, PolygonEdges) {
  for (std::uint32_t p : {2u, 3u})
    for (int m = 4; m <= 7; ++m) {
      const auto ctx = context(polygon(m), p);
      EXPECT_EQ(recover_polygon_from_form(polygon_gram(ctx).entries, m, p), polygon_edges(m)) << "p=" << p << " m=" << m;
    }
  RFMatrix zero(2, std::vector<RationalFunction>(2, RationalFunction::zero(2)));
  EXPECT_EQ(kind_of([&] { recover_polygon_from_form(zero, 4, 2); }), ErrorKind::SingularForm);
}

TEST(Recovery, ConjugatedForms) {
  for (int m = 4; m <= 6; ++m) {
    const auto ctx = context(polygon(m), 3);
    const auto h = polygon_gram(ctx).entries;
    const auto det = rf_det_cleared(h, 3);
    for (std::uint64_t seed : {1, 2}) {
      const auto pm = random_basis_change(m - 2, m, 3, seed);
      const auto conj = conjugate(h, pm, 3);
      EXPECT_EQ(recover_polygon_from_form(conj, m, 3), polygon_edges(m)) << "m=" << m << " seed=" << seed;
      const auto det_conj = rf_det_cleared(conj, 3);
      for (int c = 1; c <= m; ++c)
        for (int d = c + 1; d <= m; ++d)
          EXPECT_EQ((bracket_valuation(det_conj, c, d) - bracket_valuation(det, c, d)) % 2, 0) << m << " " << c << "," << d;
    }
  }
}

}  // namespace
}  // namespace sraniso
