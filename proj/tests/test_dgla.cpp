#include "defo/builtin.hpp"
#include "defo/dgla.hpp"
#include "defo/element.hpp"
#include "defo/mc.hpp"
#include "defo/random.hpp"

#include <gtest/gtest.h>

using namespace defo;

TEST(Dgla, BuiltinsValidate) {
    for (const auto& name : builtin_dgla_names()) {
        auto rep = validate_dgla(*builtin_dgla(name));
        EXPECT_TRUE(rep.ok()) << name << ": " << (rep.ok() ? "" : rep.violations[0]);
    }
}

TEST(Dgla, AbelianCohomologyIsDimensionWhenDZero) {
    DglaBuilder b;
    b.add("a", 0);
    b.add("b", 1);
    b.add("c", 1);
    auto l = b.build();
    EXPECT_EQ(cohomology_dgla(*l, 0), 1);
    EXPECT_EQ(cohomology_dgla(*l, 1), 2);
}

TEST(Dgla, TwoTermAcyclic) {
    DglaBuilder b;
    b.add("a", 0);
    b.add("b", 1);
    b.set_d("a", "b", 1);
    auto l = b.build();
    EXPECT_TRUE(validate_dgla(*l).ok());
    EXPECT_EQ(cohomology_dgla(*l, 0), 0);
    EXPECT_EQ(cohomology_dgla(*l, 1), 0);
}

TEST(Dgla, BrokenSignReported) {
    DglaBuilder b;
    b.add("e", 0);
    b.add("f", 0);
    b.add("h", 0);
    b.set_bracket("e", "f", "h", 1);
    b.set_bracket("f", "e", "h", 1);  // should be −1
    auto rep = validate_dgla(*b.build());
    ASSERT_FALSE(rep.ok());
    bool named = false;
    for (const auto& v : rep.violations) named |= v.find("e") != std::string::npos && v.find("f") != std::string::npos;
    EXPECT_TRUE(named);
}

TEST(Dgla, EndPairCohomologyMatchesOracle) {
    // Q --(1,0)--> Q² has cohomology Q in degree 0 only, so H(End) = End(H) = Q in degree 0.
    auto e = end_pair_dgla();
    EXPECT_EQ(cohomology_dgla(*e.dgla, -1), 0);
    EXPECT_EQ(cohomology_dgla(*e.dgla, 0), 1);
    EXPECT_EQ(cohomology_dgla(*e.dgla, 1), 0);
}

TEST(Dgla, EndOfAcyclicIsAcyclic) {
    auto e = end_dgla(ChainComplexQ(0, {1, 1}, {Mat::Identity(1, 1)}));
    EXPECT_TRUE(validate_dgla(*e.dgla).ok());
    for (int i = -1; i <= 1; ++i) EXPECT_EQ(cohomology_dgla(*e.dgla, i), 0);
}

TEST(Dgla, DirectSum) {
    auto a = sl2_dg_dgla(), b = abelian_dgla();
    auto s = direct_sum(a, b);
    EXPECT_TRUE(validate_dgla(*s).ok());
    for (int i = -1; i <= 2; ++i) {
        EXPECT_EQ(s->dim(i), a->dim(i) + b->dim(i));
        EXPECT_EQ(cohomology_dgla(*s, i), cohomology_dgla(*a, i) + cohomology_dgla(*b, i));
    }
    auto z = direct_sum(a, zero_dgla());
    EXPECT_EQ(z->size(), a->size());
    for (int w = 0; w < 2; ++w) {
        EXPECT_TRUE(validate_map(sum_inclusion(s, a, b, w)).ok());
        EXPECT_TRUE(validate_map(sum_projection(s, a, b, w)).ok());
    }
}

TEST(Tensor, ScalarCoefficientsOnlyZero) {
    // A = Q: m_A = 0, the element space is zero-dimensional.
    auto a = make_artin(1, {{1}});
    EXPECT_EQ(a->dim(), 0);
    auto ctx = tensor_artin(sl2_dgla(), a);
    EXPECT_TRUE(degree_basis(ctx, 0).empty());
}

TEST(Tensor, Sl2TruncatedCubic) {
    auto l = sl2_dgla();
    auto a = artin_from_name("t3");
    auto ctx = tensor_artin(l, a);
    const int t = a->index_of({1}), t2 = a->index_of({2});
    auto el = [&](const char* n, int c) { return Elem::term(ctx, 0, l->index_of(n), c, FormKey{}, Rat(1)); };
    EXPECT_EQ(bracket(el("e", t), el("f", t)), el("h", t2));
    EXPECT_TRUE(bracket(el("e", t2), el("f", t)).is_zero());
}

TEST(Tensor, AbelianBracketVanishes) {
    auto ctx = tensor_artin(abelian_dgla(), artin_from_name("eps2"));
    Rng rng(4);
    EXPECT_TRUE(bracket(random_elem(ctx, 0, rng), random_elem(ctx, 1, rng)).is_zero());
}

TEST(Tensor, JacobiLeibnizOnRandomElements) {
    Rng rng(17);
    for (const auto& name : builtin_dgla_names()) {
        auto ctx = tensor_artin(builtin_dgla(name), artin_from_name("m2^3"));
        const Dgla& L = ctx->dgla();
        for (int trial = 0; trial < 8; ++trial) {
            int da = rng.uniform(L.lo(), L.hi()), db = rng.uniform(L.lo(), L.hi()), dc = rng.uniform(L.lo(), L.hi());
            Elem a = random_elem(ctx, da, rng), b = random_elem(ctx, db, rng), c = random_elem(ctx, dc, rng);
            auto sg = [](int e) { return Rat((e % 2 == 0) ? 1 : -1); };
            // [a,[b,c]] = [[a,b],c] + (−1)^{|a||b|}[b,[a,c]]
            EXPECT_EQ(bracket(a, bracket(b, c)), bracket(bracket(a, b), c) + sg(da * db) * bracket(b, bracket(a, c)))
                << name;
            EXPECT_EQ(differential(bracket(a, b)), bracket(differential(a), b) + sg(da) * bracket(a, differential(b)))
                << name;
            EXPECT_EQ(bracket(a, b), -(sg(da * db) * bracket(b, a))) << name;
        }
    }
}

TEST(Tensor, AdNilpotent) {
    Rng rng(8);
    for (const char* an : {"eps2", "t3", "xy2", "t4"}) {
        auto ctx = tensor_artin(sl2_dg_dgla(), artin_from_name(an));
        const int nu = ctx->nilpotency();
        for (int k = 0; k < 5; ++k) {
            Elem a = random_elem(ctx, 0, rng), y = random_elem(ctx, rng.uniform(-1, 1), rng);
            for (int i = 0; i < nu; ++i) y = bracket(a, y);
            EXPECT_TRUE(y.is_zero());
        }
    }
}

TEST(SubDgla, RejectsNonClosedSpan) {
    auto l = sl2_dgla();
    std::vector<Mat> spans{Mat::Zero(3, 2)};
    spans[0](l->index_of("e"), 0) = 1;
    spans[0](l->index_of("f"), 1) = 1;
    EXPECT_THROW(sub_dgla(l, spans), std::invalid_argument);
}
