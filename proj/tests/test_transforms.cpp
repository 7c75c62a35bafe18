#include <gtest/gtest.h>

#include "helpers.hpp"
#include "tc/predicates.hpp"
#include "tc/transforms.hpp"

namespace tc {
namespace {

using test::P;

Vars xy() {
    static Vars v = make_vars({"x", "y"});
    return v;
}
Vars uv() {
    static Vars v = make_vars({"u", "v"});
    return v;
}

TEST(Substitute, Examples) {
    SubstitutionMap m3 = make_substitution(xy(), 3, {"u", "v"});
    EXPECT_EQ(substitute_kth_roots(P("x", xy()), m3), P("u^3", uv()));
    EXPECT_EQ(substitute_kth_roots(P("x*y^4 + 9", xy()), m3), P("u^3*v^12 + 9", uv()));
    SubstitutionMap m1 = make_substitution(xy(), 1);
    EXPECT_EQ(substitute_kth_roots(P("x*y^4 + 9", xy()), m1), P("x*y^4 + 9", xy()));
    EXPECT_EQ(make_substitution(xy(), 2).target->names, (std::vector<std::string>{"x_2", "y_2"}));
}

TEST(Substitute, MultiplicativeAndMonotone) {
    std::mt19937_64 rng(41);
    SubstitutionMap m = make_substitution(xy(), 3, {"u", "v"});
    for (int i = 0; i < 15; ++i) {
        Poly a = test::random_poly(rng, xy(), 3, 5, 3);
        Poly b = test::random_poly(rng, xy(), 3, 5, 3);
        EXPECT_EQ(substitute_kth_roots(a * b, m), substitute_kth_roots(a, m) * substitute_kth_roots(b, m));
        Poly f = a.pow(3) + b * Integer(9);
        EXPECT_TRUE(is_pth_power_mod_p2(substitute_kth_roots(f, m), 3).has_value());
    }
}

TEST(WMembership, Examples) {
    auto a = w_membership(P("x*y^4 + 9", xy()), 3, {}, {"u", "v"});
    ASSERT_TRUE(a);
    EXPECT_EQ(a->k, 3u);
    EXPECT_EQ(a->cert.h, P("u*v^4", uv()));
    EXPECT_EQ(a->cert.g, P("1", uv()));

    auto c = w_membership(P("x^3 + 9", xy()), 3, {}, {"u", "v"});
    ASSERT_TRUE(c);
    EXPECT_EQ(c->k, 3u);
    EXPECT_EQ(c->cert.h, P("u^3", uv()));
    auto c1 = w_membership(P("x^3 + 9", xy()), 3, {1, 3});
    ASSERT_TRUE(c1);
    EXPECT_EQ(c1->k, 1u);

    EXPECT_FALSE(w_membership(P("x + 3", xy()), 3, {}));
    EXPECT_FALSE(w_membership(P("x + 3", xy()), 3, {1, 3, 9}));
    EXPECT_NE(pth_power_obstruction(P("x + 3", xy()), 3).find("exponent not divisible by p"), std::string::npos);
    EXPECT_NE(pth_power_obstruction(P("x^3 + 3", xy()), 3).find("not divisible by p^2"), std::string::npos);
    EXPECT_EQ(pth_power_obstruction(P("x^3 + 9", xy()), 3), "");
}

TEST(Strip, Examples) {
    auto a = strip_monomial_factors(P("x*(y^3 + 9)", xy()));
    EXPECT_EQ(Poly::monomial(xy(), a.monomial), P("x", xy()));
    EXPECT_EQ(a.core, P("y^3 + 9", xy()));
    auto b = strip_monomial_factors(P("y^3 + 9", xy()));
    EXPECT_TRUE(b.monomial.is_one());
    auto c = strip_monomial_factors(P("x^2*y", xy()));
    EXPECT_EQ(Poly::monomial(xy(), c.monomial), P("x^2*y", xy()));
    EXPECT_EQ(c.core, P("1", xy()));
    EXPECT_THROW(strip_monomial_factors(P("0", xy())), std::domain_error);
}

TEST(Strip, MultiplyBack) {
    std::mt19937_64 rng(42);
    for (int i = 0; i < 20; ++i) {
        Poly f = test::random_poly(rng, xy(), 4, 5, 3);
        if (f.is_zero()) continue;
        auto s = strip_monomial_factors(f);
        EXPECT_EQ(Poly::monomial(xy(), s.monomial) * s.core, f);
    }
}

TEST(ReduceExponents, Examples) {
    Poly q1 = P("x + 1", xy()), q2 = P("y + 2", xy());
    auto r = reduce_exponents({{q1, 5}, {q2, 7}}, 6, q1.pow(5) * q2.pow(7));
    EXPECT_EQ(r.radicands, (std::vector<Poly>{q1, q2}));
    EXPECT_EQ(r.splits[0].quotient, 0u);
    EXPECT_EQ(r.splits[0].remainder, 5u);
    EXPECT_EQ(r.splits[1].quotient, 1u);
    EXPECT_EQ(r.splits[1].remainder, 1u);

    auto six = reduce_exponents({{q1, 6}}, 6);
    EXPECT_TRUE(six.radicands.empty());
    EXPECT_EQ(six.splits.size(), 1u);

    try {
        reduce_exponents({{q1, 1}, {q1 * q2, 1}}, 3);
        FAIL();
    } catch (const HypothesisError& e) {
        EXPECT_EQ(e.which(), Hypothesis::NotCoprime);
    }
    EXPECT_THROW(reduce_exponents({{q1, 1}}, 3, q2), HypothesisError);
}

TEST(Disjointness, Examples) {
    for (unsigned p : {2u, 3u, 5u}) EXPECT_TRUE(check_linear_disjointness({P("x", xy()), P("y", xy())}, p).disjoint);
    auto r = check_linear_disjointness({P("x", xy()), P("x^2*y^3", xy())}, 3);
    EXPECT_FALSE(r.disjoint);
    EXPECT_EQ(r.witness, (std::vector<unsigned>{1, 1}));
    auto s = check_linear_disjointness({P("x^3", xy())}, 3);
    EXPECT_FALSE(s.disjoint);
    EXPECT_EQ(s.witness, (std::vector<unsigned>{1}));
    EXPECT_THROW(check_linear_disjointness({P("3*x", xy())}, 3), HypothesisError);
}

TEST(MixedTower, Examples) {
    TowerSpec spec;
    spec.p = 3;
    spec.vars = test::vars_xy();
    spec.radicands = {{P("X^3+9"), std::nullopt, 1}};
    spec.disjoint_block = {P("Y")};
    MixedTower m = mixed_tower(spec);
    EXPECT_EQ(m.basis.size(), 9u);
    EXPECT_TRUE(m.closure.ok());

    TowerSpec plain = spec;
    plain.disjoint_block.clear();
    MixedTower q = mixed_tower(plain);
    EXPECT_EQ(q.basis.serialize(), build_v_basis(test::single_tower(3, "X^3+9")).serialize());

    TowerSpec cube = spec;
    cube.disjoint_block = {P("Y^3")};
    EXPECT_THROW(mixed_tower(cube), HypothesisError);
}

std::vector<PipelineInput> ab2_input() {
    Poly a = P("x*y^4 + 9", xy()), b = P("x^4*y + 9", xy());
    return {{a * b.pow(2), 3, std::vector<FactorPower>{{a, 1}, {b, 2}}}};
}

TEST(Pipeline, FactoredExample) {
    PipelineReport rep = small_cm_pipeline(3, xy(), ab2_input(), {{}, {"u", "v"}});
    ASSERT_EQ(rep.reductions.size(), 1u);
    EXPECT_EQ(rep.reductions[0].radicands.size(), 2u);
    ASSERT_EQ(rep.radicands.size(), 2u);
    EXPECT_EQ(rep.radicands[0].k, 3u);
    EXPECT_EQ(rep.radicands[1].k, 3u);
    EXPECT_EQ(rep.k, 3u);
    EXPECT_EQ(rep.radicands[0].cert.h, P("u*v^4", uv()));
    EXPECT_EQ(rep.radicands[1].cert.h, P("u^4*v", uv()));
    EXPECT_EQ(rep.radicands[0].cert.g, P("1", uv()));
    EXPECT_EQ(rep.basis->size(), 9u);
    EXPECT_TRUE(rep.ok());
    for (const auto& pr : rep.radicands) EXPECT_TRUE(certifies(pr.cert, pr.image, 3));
}

TEST(Pipeline, PlainClassOne) {
    Vars v = test::vars_xy();
    PipelineReport rep = small_cm_pipeline(3, v, {{P("X^3+9"), 3, std::nullopt}, {P("Y^3+9"), 3, std::nullopt}},
                                           {{1}, {}});
    EXPECT_EQ(rep.k, 1u);
    EXPECT_EQ(rep.basis->serialize(), build_v_basis(test::example_tower()).serialize());
    EXPECT_TRUE(rep.ok());
}

TEST(Pipeline, Failures) {
    try {
        small_cm_pipeline(3, xy(), {{P("x + 3", xy()), 3, std::nullopt}});
        FAIL();
    } catch (const PipelineError& e) {
        EXPECT_EQ(e.stage(), "w_membership");
        EXPECT_EQ(e.hypothesis(), Hypothesis::NotPthPowerModP2);
    }
    try {
        small_cm_pipeline(3, xy(), {{P("x*(y^3+9)", xy()), 3, std::nullopt}, {P("x*(y^3+18)", xy()), 3, std::nullopt}});
        FAIL();
    } catch (const PipelineError& e) {
        EXPECT_EQ(e.stage(), "strip");
        EXPECT_EQ(e.hypothesis(), Hypothesis::SharedVariableFactor);
    }
    try {
        small_cm_pipeline(3, xy(), {{P("x^3 + 9", xy()), 9, std::nullopt}});
        FAIL();
    } catch (const PipelineError& e) {
        EXPECT_EQ(e.stage(), "degrees");
    }
}

TEST(Pipeline, MonomialFactorAndUnitDegree) {
    // x (y^3 + 9) with n = 6: x^{1/6} needs k divisible by 6.
    PipelineReport rep = small_cm_pipeline(3, xy(), {{P("x*(y^3 + 9)", xy()), 6, std::nullopt}});
    EXPECT_EQ(rep.k, 6u);
    ASSERT_EQ(rep.radicands.size(), 1u);
    ASSERT_TRUE(rep.extended);
    EXPECT_EQ(rep.extended->size(), 6u);
    EXPECT_TRUE(rep.ok());
}

}  // namespace
}  // namespace tc
