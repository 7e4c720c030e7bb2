#include "defo/artin.hpp"
#include "defo/random.hpp"

#include <functional>
#include <gtest/gtest.h>

using namespace defo;

namespace {
Vec unit(const ArtinAlgebra& a, const Monomial& m) {
    Vec v = Vec::Zero(a.dim());
    v(a.index_of(m)) = 1;
    return v;
}
Vec random_m(const ArtinAlgebra& a, Rng& rng) {
    Vec v = Vec::Zero(a.dim());
    for (Index i = 0; i < v.size(); ++i)
        if (rng.coin()) v(i) = rng.small_rat();
    return v;
}
}  // namespace

TEST(Artin, DualNumbers) {
    auto a = make_artin(1, {{2}});
    EXPECT_EQ(a->dim(), 1);
    EXPECT_EQ(a->nilpotency(), 2);
    EXPECT_TRUE(a->square_zero());
}

TEST(Artin, TruncatedCubic) {
    auto a = make_artin(1, {{3}});
    EXPECT_EQ(a->dim(), 2);
    EXPECT_EQ(a->nilpotency(), 3);
}

TEST(Artin, FatPoint) {
    auto a = make_artin(2, {{2, 0}, {1, 1}, {0, 2}});
    EXPECT_EQ(a->dim(), 2);
    EXPECT_EQ(a->nilpotency(), 2);
    EXPECT_GE(a->index_of({1, 0}), 0);
    EXPECT_GE(a->index_of({0, 1}), 0);
}

TEST(Artin, RejectsNonCofinite) {
    EXPECT_THROW(make_artin(2, {{2, 0}}), std::invalid_argument);
    EXPECT_THROW(make_artin(1, {{0}}), std::invalid_argument);
}

TEST(Artin, Multiply) {
    auto eps = artin_from_name("eps2");
    Vec e = unit(*eps, {1});
    EXPECT_TRUE(is_zero(multiply(*eps, e, e)));
    auto t3 = artin_from_name("t3");
    EXPECT_EQ(multiply(*t3, unit(*t3, {1}), unit(*t3, {1})), unit(*t3, {2}));
    auto xy = artin_from_name("xy2");
    Vec x = unit(*xy, {1, 0}), y = unit(*xy, {0, 1});
    EXPECT_TRUE(is_zero(multiply(*xy, Vec(x + y), Vec(x - y))));
}

TEST(Artin, ParseMonomial) {
    EXPECT_EQ(parse_monomial("x1^2*x2", 2), (Monomial{2, 1}));
    EXPECT_EQ(parse_monomial("y", 2), (Monomial{0, 1}));
    EXPECT_THROW(parse_monomial("x3", 2), std::invalid_argument);
}

TEST(Artin, NilpotencyByExhaustiveProducts) {
    for (const char* name : {"eps2", "t3", "t4", "xy2", "m2^3"}) {
        auto a = artin_from_name(name);
        const int nu = a->nilpotency();
        // Every product of nu basis monomials vanishes; some product of nu-1 does not.
        std::vector<int> cur;
        std::function<bool(int, int)> any_nonzero = [&](int depth, int acc) -> bool {
            if (depth == 0) return acc >= 0;
            for (int i = 0; i < a->dim(); ++i) {
                int nxt = acc < 0 ? i : a->product(acc, i);
                if (nxt < 0) continue;
                if (any_nonzero(depth - 1, nxt)) return true;
            }
            return false;
        };
        // acc = -1 means "empty product".
        EXPECT_FALSE(any_nonzero(nu, -1)) << name;
        if (nu > 1) EXPECT_TRUE(any_nonzero(nu - 1, -1)) << name;
    }
}

TEST(Artin, AssociativeCommutative) {
    auto a = artin_from_name("m2^3");
    Rng rng(3);
    for (int k = 0; k < 20; ++k) {
        Vec u = random_m(*a, rng), v = random_m(*a, rng), w = random_m(*a, rng);
        EXPECT_EQ(multiply(*a, u, v), multiply(*a, v, u));
        EXPECT_EQ(multiply(*a, multiply(*a, u, v), w), multiply(*a, u, multiply(*a, v, w)));
    }
}

TEST(ArtinMorphism, TruncationToDualNumbers) {
    auto t3 = artin_from_name("t3");
    auto eps = artin_from_name("eps2");
    ArtinMorphism f(t3, eps, {unit(*eps, {1})});
    EXPECT_TRUE(is_zero(f.apply(unit(*t3, {2}))));
    EXPECT_EQ(f.apply(unit(*t3, {1})), unit(*eps, {1}));
}

TEST(ArtinMorphism, IdentityFixes) {
    auto a = artin_from_name("xy2");
    auto id = identity_morphism(a);
    Rng rng(1);
    Vec u = random_m(*a, rng);
    EXPECT_EQ(id.apply(u), u);
}

TEST(ArtinMorphism, FatPointCollapse) {
    auto xy = artin_from_name("xy2");
    auto eps = artin_from_name("eps2");
    Vec e = unit(*eps, {1});
    ArtinMorphism f(xy, eps, {e, e});
    EXPECT_TRUE(is_zero(f.apply(Vec(unit(*xy, {1, 0}) - unit(*xy, {0, 1})))));
}

TEST(ArtinMorphism, RejectsRelationViolation) {
    auto eps = artin_from_name("eps2");
    auto t3 = artin_from_name("t3");
    // ε ↦ t does not respect ε² = 0.
    EXPECT_THROW(ArtinMorphism(eps, t3, {unit(*t3, {1})}), std::invalid_argument);
}

TEST(ArtinMorphism, CompositeBaseChange) {
    auto t4 = artin_from_name("t4");
    auto t3 = artin_from_name("t3");
    auto eps = artin_from_name("eps2");
    ArtinMorphism g(t4, t3, {Vec(unit(*t3, {1}) + unit(*t3, {2}))});
    ArtinMorphism f(t3, eps, {Vec(Rat(2) * unit(*eps, {1}))});
    ArtinMorphism fg = compose(f, g);
    Rng rng(9);
    for (int k = 0; k < 10; ++k) {
        Vec u = random_m(*t4, rng);
        EXPECT_EQ(fg.apply(u), f.apply(g.apply(u)));
    }
}
