#include <gtest/gtest.h>

#include <random>

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

RationalFunction b2(int i, int j) { return br(2, 2, {i, j}); }
RationalFunction b3(int i, int j, int k) { return br(2, 3, {i, j, k}); }

Polynomial random_poly(std::mt19937_64& rng, int rows, int cols, int terms = 3) {
  Polynomial f(2);
  for (int t = 0; t < terms; ++t) {
    Polynomial mono = Polynomial::constant(2, 1);
    for (int i = 1; i <= rows; ++i)
      for (int j = 1; j <= cols; ++j) {
        const int e = static_cast<int>(rng() % 6);
        if (e < 3) mono = mono * Polynomial::variable(2, {i, j}).pow(e);
      }
    f += mono;
  }
  return f;
}

TEST(Builders, Sigma) {
  EXPECT_EQ(build_op_sigma(3, {2, 5}).vars, (std::vector<VarIndex>{{1, 2}, {2, 2}, {3, 5}, {4, 5}}));
  EXPECT_EQ(build_op_sigma(1, {4}).vars, (std::vector<VarIndex>{{1, 4}, {2, 4}}));
  EXPECT_EQ(build_op_sigma(1, {4}).order(), 2);
  EXPECT_EQ(build_op_sigma(3, {2, 5}).to_string(), "d^4/da[1,2]da[2,2]da[3,5]da[4,5]");
  EXPECT_EQ(kind_of([] { build_op_sigma(2, {1}); }), ErrorKind::WrongParity);
  EXPECT_EQ(kind_of([] { build_op_sigma(3, {1}); }), ErrorKind::WrongFaceSize);
  EXPECT_EQ(kind_of([] { build_op_sigma(3, {1, 1}); }), ErrorKind::WrongFaceSize);
  const ReductionContext join(oracle::corpus_entry("join_s0_triangle_s0").complex);
  EXPECT_EQ(kind_of([&] { build_op_sigma(join, {1, 2}); }), ErrorKind::NotAFace);
  EXPECT_EQ(build_op_sigma(join, {1, 3}).order(), 4);
}

TEST(Builders, PSigma) {
  const auto tet = boundary_simplex(2);
  EXPECT_EQ(build_op_p_sigma(tet, 2, {1}).vars, (std::vector<VarIndex>{{1, 2}, {2, 1}, {3, 1}}));
  EXPECT_EQ(kind_of([&] { build_op_p_sigma(tet, 1, {1}); }), ErrorKind::NotAFace);
  EXPECT_EQ(kind_of([&] { build_op_p_sigma(tet, 1, {2, 3}); }), ErrorKind::WrongFaceSize);
  EXPECT_EQ(kind_of([] { build_op_p_sigma(polygon(5), 1, {}); }), ErrorKind::WrongParity);
  const auto oct = suspension(polygon(4));
  EXPECT_EQ(kind_of([&] { build_op_p_sigma(oct, 1, {3}); }), ErrorKind::NotAFace);
  const auto s4 = boundary_simplex(4);
  EXPECT_EQ(build_op_p_sigma(s4, 1, {2, 3}).vars, (std::vector<VarIndex>{{1, 1}, {2, 2}, {3, 2}, {4, 3}, {5, 3}}));
}

TEST(Builders, ModAndDistinctness) {
  EXPECT_EQ(build_op_mod({1, 1, 2}).vars, (std::vector<VarIndex>{{1, 1}, {2, 1}, {3, 2}}));
  EXPECT_EQ(kind_of([] { make_operator({{1, 1}, {1, 1}}); }), ErrorKind::BadShape);
  EXPECT_TRUE(build_op_mod({3, 1}).involves({2, 1}));
  EXPECT_TRUE(build_op_mod({3, 1}).touches(BracketKey{1, 2, {1, 2}}));
  EXPECT_FALSE(build_op_mod({3, 1}).touches(BracketKey{1, 2, {2, 4}}));
}

TEST(Apply, Examples) {
  const auto op = build_op_sigma(1, {3});
  EXPECT_TRUE(apply(op, bracket(2, {2, 4}, {1, 2})).is_zero());
  EXPECT_EQ(apply(op, Polynomial::variable(2, {1, 3}) * Polynomial::variable(2, {2, 3})), Polynomial::constant(2, 1));
  const auto e55 = apply(build_op_sigma(1, {1}), b2(1, 3) / (b2(1, 2) * b2(2, 3)));
  EXPECT_TRUE(rf_equals(e55, b2(1, 2).square().inverse()));
  EXPECT_EQ(kind_of([] { apply(build_op_sigma(1, {1}), br(3, 2, {1, 2}).inverse()); }), ErrorKind::CharNot2);
}

TEST(Apply, SquaresPassThrough) {
  std::mt19937_64 rng(59);
  for (int k = 0; k < 20; ++k) {
    const auto op = build_op_sigma(3, {1 + static_cast<int>(rng() % 2), 3});
    const Polynomial f = random_poly(rng, 4, 3), g = random_poly(rng, 4, 3, 5);
    EXPECT_EQ(apply(op, f.square() * g), f.square() * apply(op, g));
    const auto rf = RationalFunction::from_poly(f), rg = RationalFunction::from_poly(g);
    if (!g.is_zero()) {
      EXPECT_TRUE(rf_equals(apply(op, rf / rg), RationalFunction::from_poly(apply(op, f * g)) / RationalFunction::from_poly(g.square())));
    }
  }
}

TEST(Apply, OrderIndependentAndLeibniz) {
  std::mt19937_64 rng(61);
  for (int k = 0; k < 10; ++k) {
    auto vars = build_op_p_sigma(boundary_simplex(2), 1, {2}).vars;
    const Polynomial f = random_poly(rng, 3, 4, 6);
    const Polynomial once = differentiate(f, vars);
    std::shuffle(vars.begin(), vars.end(), rng);
    Polynomial step = f;
    for (const auto& v : vars) step = partial_derivative(step, v);
    EXPECT_EQ(step, once);
    const std::vector<Polynomial> factors{random_poly(rng, 3, 4), random_poly(rng, 3, 4), random_poly(rng, 3, 4)};
    const DiffOperator op = make_operator(vars);
    EXPECT_EQ(apply_to_product(op, factors), apply(op, Polynomial::product(2, factors)));
  }
}

TEST(MinorIdentity, ExactSmallOrders) {
  for (auto [h, family] : {std::pair{2, MinorFamily::N}, {2, MinorFamily::P}, {3, MinorFamily::Q}, {4, MinorFamily::N},
                           {4, MinorFamily::P}}) {
    const auto rep = verify_minor_identity(h, family);
    EXPECT_TRUE(rep.holds) << to_string(family) << h << " " << rep.lhs << " vs " << rep.rhs;
    EXPECT_EQ(rep.method, "exact");
    EXPECT_EQ(rep.lhs_terms, rep.rhs_terms);
    EXPECT_GT(rep.lhs_terms, 0u);
  }
}

TEST(MinorIdentity, ExpandedProductAgrees) {
  for (auto [h, family] : {std::pair{2, MinorFamily::N}, {2, MinorFamily::P}, {3, MinorFamily::Q}}) {
    const auto shape = minor_identity_shape(h, family);
    std::vector<Polynomial> factors, root;
    for (int i : shape.lhs) factors.push_back(minor_poly(2, shape.minor(i)));
    for (int i : shape.rhs) root.push_back(minor_poly(2, shape.minor(i)));
    const Polynomial direct = differentiate(Polynomial::product(2, factors), shape.op.vars);
    EXPECT_EQ(direct, Polynomial::product(2, root).square()) << to_string(family) << h;
    EXPECT_EQ(direct, apply_to_product(shape.op, factors));
  }
  const auto n2 = minor_identity_shape(2, MinorFamily::N);
  EXPECT_EQ(n2.op.vars, (std::vector<VarIndex>{{1, 1}, {2, 1}}));
  EXPECT_EQ(n2.rhs, (std::vector<int>{1}));
  const auto q3 = minor_identity_shape(3, MinorFamily::Q);
  EXPECT_EQ(q3.lhs, (std::vector<int>{2, 3, 4}));
  EXPECT_EQ(q3.rhs, (std::vector<int>{2}));
}

TEST(MinorIdentity, WrongOperatorIsDetected) {
  const auto shape = minor_identity_shape(2, MinorFamily::N);
  std::vector<Polynomial> factors, root;
  for (int i : shape.lhs) factors.push_back(minor_poly(2, shape.minor(i)));
  for (int i : shape.rhs) root.push_back(minor_poly(2, shape.minor(i)));
  EXPECT_NE(apply_to_product(make_operator({{1, 1}, {2, 2}}), factors), Polynomial::product(2, root).square());
}

TEST(MinorIdentity, Probabilistic) {
  IdentityOptions opt;
  opt.exact_max_order = 1;
  const auto n2 = verify_minor_identity(2, MinorFamily::N, opt);
  EXPECT_TRUE(n2.holds);
  EXPECT_EQ(n2.method, "probabilistic");
  EXPECT_EQ(n2.seeds, (std::vector<std::uint64_t>{1, 2, 3}));
  for (auto [h, family] : {std::pair{6, MinorFamily::N}, {6, MinorFamily::P}, {7, MinorFamily::Q}}) {
    const auto rep = verify_minor_identity(h, family);
    EXPECT_TRUE(rep.holds) << to_string(family) << h;
    EXPECT_EQ(rep.method, "probabilistic");
  }
  opt.seeds = {1, 2};
  EXPECT_EQ(kind_of([&] { verify_minor_identity(2, MinorFamily::N, opt); }), ErrorKind::ConfigError);
}

TEST(MinorIdentity, ErrorsAndBudget) {
  EXPECT_EQ(kind_of([] { verify_minor_identity(3, MinorFamily::N); }), ErrorKind::BadParity);
  EXPECT_EQ(kind_of([] { verify_minor_identity(3, MinorFamily::P); }), ErrorKind::BadParity);
  EXPECT_EQ(kind_of([] { verify_minor_identity(4, MinorFamily::Q); }), ErrorKind::BadParity);
  EXPECT_EQ(kind_of([] { verify_minor_identity(1, MinorFamily::Q); }), ErrorKind::BadParity);
  IdentityOptions opt;
  opt.budget_seconds = 1e-9;
  const auto rep = verify_minor_identity(4, MinorFamily::N, opt);
  EXPECT_EQ(rep.method, "budget-exceeded");
  EXPECT_FALSE(rep.holds);
}

TEST(ProductIdentity, SmallDimensions) {
  EXPECT_TRUE(verify_product_identity(1, {1}, std::nullopt, {2, 3}).holds);
  EXPECT_TRUE(verify_product_identity(1, {2}, std::nullopt, {1, 3}).holds);
  EXPECT_TRUE(verify_product_identity(2, {1}, 2, {3, 4}).holds);
  EXPECT_TRUE(verify_product_identity(2, {3}, 1, {2, 4}).holds);
  EXPECT_TRUE(verify_product_identity(3, {1, 2}, std::nullopt, {3, 4, 5}).holds);
  EXPECT_TRUE(verify_product_identity(3, {2, 4}, std::nullopt, {1, 3, 5}).holds);
  EXPECT_EQ(kind_of([] { verify_product_identity(2, {1}, std::nullopt, {2, 3}); }), ErrorKind::WrongParity);
  EXPECT_EQ(kind_of([] { verify_product_identity(1, {1}, std::nullopt, {1, 3}); }), ErrorKind::BadShape);
}

TEST(ProductIdentity, QuotientFormsOnAllSubsets) {
  auto all_subsets = [](const Face& w) {
    std::vector<Face> out;
    for (std::size_t mask = 0; mask < (std::size_t{1} << w.size()); ++mask) {
      Face s;
      for (std::size_t i = 0; i < w.size(); ++i)
        if (mask >> i & 1) s.push_back(w[i]);
      out.push_back(s);
    }
    return out;
  };
  for (const auto& s : all_subsets({1, 2, 3})) {
    const auto rep = verify_quotient_identity(1, {1}, std::nullopt, {2, 3}, s);
    EXPECT_TRUE(rep.holds) << face_to_string(s) << ": " << rep.lhs << " vs " << rep.rhs;
  }
  for (const auto& s : all_subsets({1, 3, 4})) EXPECT_TRUE(verify_quotient_identity(2, {1}, 2, {3, 4}, s).holds) << face_to_string(s);
  for (const auto& s : all_subsets({1, 2, 3, 4, 5})) EXPECT_TRUE(verify_quotient_identity(3, {1, 2}, std::nullopt, {3, 4, 5}, s).holds);
  EXPECT_EQ(kind_of([] { verify_quotient_identity(1, {1}, std::nullopt, {2, 3}, {4}); }), ErrorKind::BadShape);
}

TEST(SquareIdentity, OddExamples) {
  const ReductionContext ctx(polygon(5));
  auto rep = verify_square_identity_odd(ctx, {1}, {2});
  EXPECT_TRUE(rep.holds);
  EXPECT_TRUE(rf_equals(rep.lhs, b2(1, 2).square().inverse()));
  EXPECT_TRUE(rf_equals(rep.rhs, b2(1, 2).square().inverse()));
  rep = verify_square_identity_odd(ctx, {2}, {2});
  EXPECT_TRUE(rep.holds);
  EXPECT_TRUE(rf_equals(rep.lhs, b2(1, 3).square() / (b2(1, 2).square() * b2(2, 3).square())));
  rep = verify_square_identity_odd(ctx, {4}, {2});
  EXPECT_TRUE(rep.holds);
  EXPECT_TRUE(rep.lhs.is_zero());
  EXPECT_TRUE(rep.rhs.is_zero());
  EXPECT_EQ(kind_of([] { verify_square_identity_odd(ReductionContext(polygon(5), FieldConfig{3, 20}), {1}, {2}); }),
            ErrorKind::CharNot2);
  EXPECT_EQ(kind_of([&] { verify_square_identity_odd(ctx, {1}, {2, 3}); }), ErrorKind::WrongFaceSize);
}

TEST(SquareIdentity, OddOnCorpus) {
  for (const auto& name : {"triangle", "polygon4", "polygon6", "simplex_boundary1"}) {
    const ReductionContext ctx(oracle::corpus_entry(name).complex);
    for (int s = 1; s <= ctx.m(); ++s)
      for (int t = 1; t <= ctx.m(); ++t) {
        const auto rep = verify_square_identity_odd(ctx, {s}, {t});
        EXPECT_TRUE(rep.holds) << name << " sigma=" << s << " tau=" << t;
        EXPECT_TRUE(rf_equals(rep.lhs, rep.rhs));
      }
  }
  const ReductionContext s3(boundary_simplex(3));
  for (const auto& sigma : std::vector<Face>{{1, 2}, {2, 4}})
    for (const auto& tau : std::vector<Face>{{1, 2}, {1, 3}, {4, 5}})
      EXPECT_TRUE(verify_square_identity_odd(s3, sigma, tau).holds) << face_to_string(sigma) << face_to_string(tau);
}

TEST(SquareIdentity, EvenExamples) {
  const ReductionContext tet(boundary_simplex(2));
  auto rep = verify_square_identity_even(tet, 1, {3}, {2});
  EXPECT_TRUE(rep.holds);
  EXPECT_TRUE(rf_equals(rep.lhs, b3(1, 2, 3).square().inverse()));
  rep = verify_square_identity_even(tet, 1, {2}, {2});
  EXPECT_TRUE(rep.holds);
  EXPECT_TRUE(rf_equals(rep.lhs, b3(1, 3, 4).square() / (b3(1, 2, 3).square() * b3(1, 2, 4).square())));
  const ReductionContext oct(suspension(polygon(4)));
  rep = verify_square_identity_even(oct, 1, {2}, {3});
  EXPECT_TRUE(rep.holds);
  EXPECT_TRUE(rep.lhs.is_zero());
  EXPECT_TRUE(rep.rhs.is_zero());
  EXPECT_EQ(kind_of([&] { verify_square_identity_even(tet, 1, {3}, {1}); }), ErrorKind::BadShape);
}

TEST(SquareIdentity, EvenOnCorpus) {
  for (const auto& name : {"simplex_boundary2", "octahedron"}) {
    const ReductionContext ctx(oracle::corpus_entry(name).complex);
    for (int p = 1; p <= ctx.m(); ++p)
      for (int s = 1; s <= ctx.m(); ++s) {
        if (s == p || !ctx.complex().is_face({std::min(p, s), std::max(p, s)})) continue;
        for (int t = 1; t <= ctx.m(); ++t) {
          if (t == p) continue;
          EXPECT_TRUE(verify_square_identity_even(ctx, p, {s}, {t}).holds) << name << " p=" << p << " s=" << s << " t=" << t;
        }
      }
  }
}

TEST(SquareIdentity, LinearOverSquares) {
  const ReductionContext ctx(polygon(5));
  const auto op = build_op_sigma(ctx, {1});
  const std::vector<RationalFunction> lambda{b2(1, 3) + b2(2, 4), b2(3, 5), RationalFunction::one(2) + b2(1, 4).inverse()};
  const std::vector<int> taus{2, 3, 1};
  RationalFunction inside = RationalFunction::zero(2), outside = RationalFunction::zero(2);
  for (std::size_t i = 0; i < taus.size(); ++i) {
    const auto psi = psi_sum_formula(ctx, {taus[i]}, {});
    inside += lambda[i].square() * psi;
    outside += lambda[i].square() * apply(op, psi);
  }
  EXPECT_TRUE(rf_equals(apply(op, inside), outside));
}

TEST(Conjecture, SquareShapeMatches) {
  const ReductionContext ctx(polygon(5));
  const auto rep = probe_conjecture(ctx, {1, 1}, {2, 2});
  EXPECT_TRUE(rep.square_case);
  EXPECT_TRUE(rep.equal);
  EXPECT_TRUE(rf_equals(rep.rhs, b2(1, 2).square().inverse()));
  const ReductionContext s3(boundary_simplex(3));
  EXPECT_TRUE(probe_conjecture(s3, {1, 1, 2, 2}, {3, 3, 4, 4}).equal);
}

TEST(Conjecture, ReportsWithoutAsserting) {
  const ReductionContext ctx(polygon(5));
  const auto rep = probe_conjecture(ctx, {1, 3}, {2, 4});
  EXPECT_FALSE(rep.square_case);
  EXPECT_TRUE(rep.rhs.is_zero());
  EXPECT_EQ(rep.equal, rep.lhs.is_zero());
  const auto sym = probe_conjecture_symmetry(ctx, {1, 3}, {2, 4});
  EXPECT_EQ(sym.equal, rf_equals(sym.lhs, sym.rhs));
  EXPECT_EQ(kind_of([] { probe_conjecture(ReductionContext(polygon(9)), {1, 2}, {2, 3}); }), ErrorKind::ConfigError);
  ProbeLimits lim;
  lim.override_limits = true;
  EXPECT_NO_THROW(probe_conjecture(ReductionContext(polygon(9)), {1, 2}, {2, 3}, lim));
  EXPECT_EQ(kind_of([&] { probe_conjecture(ctx, {1}, {2, 3}); }), ErrorKind::WrongLength);
  EXPECT_EQ(kind_of([&] { probe_conjecture(ctx, {1, 7}, {2, 3}); }), ErrorKind::BadVertex);
}

}  // namespace
}  // namespace sraniso
