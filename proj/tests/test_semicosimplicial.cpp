#include "defo/builtin.hpp"
#include "defo/semicosimplicial.hpp"
#include "sc_fixtures.hpp"

#include <gtest/gtest.h>

using namespace defo;
using namespace defo::testing;

namespace {

Vec random_vec(Index n, Rng& rng) {
    Vec v = Vec::Zero(n);
    for (Index i = 0; i < n; ++i)
        if (rng.coin(50)) v(i) = rng.small_rat();
    return v;
}

Index h(const ScDgla& g, int i) { return cohomology(total_complex(g).complex, i).dim; }

}  // namespace

TEST(ScDgla, FixturesValidate) {
    for (const auto& f : fixtures()) {
        auto rep = validate_sc(f.g);
        EXPECT_TRUE(rep.ok()) << f.name << ": " << (rep.ok() ? "" : rep.violations[0]);
    }
    EXPECT_TRUE(validate_sc(circle(1)).ok());
    EXPECT_TRUE(validate_sc(circle(-1)).ok());
}

TEST(ScDgla, FaceCountsAndPerturbation) {
    ScDgla g = constant_sc(sl2_dgla(), 2);
    g.faces[2].pop_back();
    EXPECT_FALSE(validate_sc(g).ok());

    ScDgla p = cech_from_cover(scaled_cover(3, 2, sl2_dgla()));
    p.faces[2][1].m *= Rat(3);  // no longer a Lie map, identities break too
    auto rep = validate_sc(p);
    ASSERT_FALSE(rep.ok());
    bool localized = false;
    for (const auto& v : rep.violations) localized |= v.find("∂_{1,2}") != std::string::npos;
    EXPECT_TRUE(localized);
}

TEST(ScDgla, CofaceComposites) {
    ScDgla g = cech_from_cover(scaled_cover(4, 3, sl2_dgla()));
    // {0,2} ⊂ [3]: complement {1,3}, so ∂_{3,3} ∘ ∂_{1,2}.
    EXPECT_EQ(g.coface({0, 2}, 3).m, compose(g.face(3, 3), g.face(1, 2)).m);
    EXPECT_EQ(g.coface({1}, 2).m, compose(g.face(2, 2), g.face(0, 1)).m);
    EXPECT_EQ(g.coface({0, 1, 2}, 2).m, Mat::Identity(g.levels[2]->size(), g.levels[2]->size()));
    EXPECT_THROW(g.coface({2, 1}, 3), std::invalid_argument);
}

TEST(TotalComplex, DifferentialSquaresToZero) {
    for (const auto& f : fixtures()) {
        auto t = total_complex(f.g);
        for (int n = t.complex.lo(); n < t.complex.hi(); ++n) {
            Mat dd = t.complex.d(n + 1) * t.complex.d(n);
            EXPECT_TRUE(dd.isZero()) << f.name << " degree " << n;
        }
    }
}

TEST(TotalComplex, SingleLevel) {
    auto l = sl2_dg_dgla();
    ScDgla g = constant_sc(l, 0);
    auto t = total_complex(g);
    for (int i = -1; i <= 1; ++i) {
        EXPECT_EQ(t.complex.dim(i), l->dim(i));
        EXPECT_EQ(cohomology(t.complex, i).dim, cohomology_dgla(*l, i));
    }
}

TEST(TotalComplex, Equalizer) {
    auto l = line_dgla(0);
    ScDgla g = constant_sc(l, 1);
    EXPECT_EQ(h(g, 0), 1);
    EXPECT_EQ(h(g, 1), 1);
    g.faces[1][0] = zero_map(l, l);
    EXPECT_EQ(h(g, 0), 0);  // equalizer of id and 0 on ℚ
    EXPECT_EQ(h(g, 1), 0);
}

TEST(TotalComplex, CechExamples) {
    // One open: the sections themselves.
    auto l = sl2_dg_dgla();
    ScDgla one = cech_from_cover(uniform_cover(1, 0, l));
    EXPECT_EQ(one.top(), 0);
    for (int i = -1; i <= 1; ++i) EXPECT_EQ(h(one, i), cohomology_dgla(*l, i));
    // Equal sections and identity restrictions, any number of opens: H = sections.
    for (int opens = 2; opens <= 3; ++opens) {
        ScDgla g = cech_from_cover(uniform_cover(opens, opens - 1, l));
        for (int i = -1; i <= 2; ++i) EXPECT_EQ(h(g, i), cohomology_dgla(*l, i)) << opens << " opens, degree " << i;
    }
    // Circle with two-component overlap: H⁰ = H¹ = ℚ; the twisted gluing kills both.
    EXPECT_EQ(h(circle(1), 0), 1);
    EXPECT_EQ(h(circle(1), 1), 1);
    EXPECT_EQ(h(circle(-1), 0), 0);
    EXPECT_EQ(h(circle(-1), 1), 0);
    // Hand dims: 2 opens of sl2 give total dims 6 in degree 0 and 3 in degree 1.
    auto t = total_complex(cech_from_cover(uniform_cover(2, 1, sl2_dgla())));
    EXPECT_EQ(t.complex.dim(0), 6);
    EXPECT_EQ(t.complex.dim(1), 3);
}

TEST(TotalComplex, MissingRestrictionRejected) {
    CoverModel c = uniform_cover(2, 1, sl2_dgla());
    c.restrictions.erase(c.restrictions.begin());
    EXPECT_THROW(cech_from_cover(c), std::invalid_argument);
}

TEST(TotalComplex, TruncationKeepsLowCohomology) {
    for (const auto& f : fixtures()) {
        if (f.g.top() < 2) continue;
        ScDgla tr = truncate(f.g, 2);
        EXPECT_TRUE(validate_sc(tr).ok());
        for (int j = -1; j <= 1; ++j) EXPECT_EQ(h(tr, j), h(f.g, j)) << f.name << " degree " << j;
    }
    ScDgla g = constant_sc(sl2_dgla(), 2);
    ScDgla top = truncate(g, 2);
    for (int n = 0; n <= 2; ++n) EXPECT_EQ(top.levels[static_cast<size_t>(n)], g.levels[static_cast<size_t>(n)]);
    ScDgla bottom = truncate(g, 0);
    EXPECT_EQ(bottom.levels[1]->size(), 0);
    EXPECT_EQ(bottom.levels[2]->size(), 0);
}

TEST(Comparison, WhitneyOfLevelZeroIsConstant) {
    auto l = sl2_dg_dgla();
    auto ctx = make_tot_context(constant_sc(l, 3), nullptr);
    auto t = total_complex(ctx->g);
    Rng rng(3);
    Vec z = Vec::Zero(t.complex.dim(0));
    z.head(l->dim(0)) = random_vec(l->dim(0), rng);
    TwElem w = whitney_map(ctx, t, z, 0);
    Vec full = Vec::Zero(l->size());
    full.segment(l->offset(0), l->dim(0)) = z.head(l->dim(0));
    for (int n = 0; n <= 3; ++n) EXPECT_EQ(w.at(n), extend_vars(Elem::from_vec(ctx->ctx[static_cast<size_t>(n)], full), n, {}));
    EXPECT_EQ(integration_map(w, t, 0), z);
}

TEST(Comparison, IntegrationPlacesSimplexIntegral) {
    auto l = sl2_dgla();
    auto ctx = make_tot_context(constant_sc(l, 2), nullptr);
    auto t = total_complex(ctx->g);
    TwElem x(ctx, 0);
    // t dt ⊗ h at level 1, total degree 1.
    x.at(1) = Elem::term(ctx->ctx[1], 1, l->index_of("h"), 0, FormKey::from({1}, 1u), Rat(1));
    Vec v = integration_map(x, t, 1);
    Vec expect = Vec::Zero(t.complex.dim(1));
    expect(t.block_offset(1, 1) + l->index_of("h") - l->offset(0)) = Rat(1, 2);
    EXPECT_EQ(v, expect);
}

TEST(Comparison, IntegrationAfterWhitneyIsIdentity) {
    for (const auto& f : fixtures()) {
        auto ctx = make_tot_context(f.g, nullptr);
        auto t = total_complex(f.g);
        Rng rng(5);
        for (int deg = -1; deg <= 2; ++deg) {
            if (t.complex.dim(deg) == 0) continue;
            Vec z = random_vec(t.complex.dim(deg), rng);
            TwElem w = whitney_map(ctx, t, z, deg);
            EXPECT_TRUE(tw_compatible(w).ok()) << f.name;
            EXPECT_EQ(integration_map(w, t, deg), z) << f.name << " degree " << deg;
        }
    }
}

TEST(Comparison, ChainMaps) {
    for (const auto& f : fixtures()) {
        auto ctx = make_tot_context(f.g, nullptr);
        auto t = total_complex(f.g);
        Rng rng(6);
        for (int deg = -1; deg <= 1; ++deg) {
            Vec z = random_vec(t.complex.dim(deg), rng);
            Vec dz = t.complex.d(deg) * z;
            EXPECT_EQ(differential(whitney_map(ctx, t, z, deg)), whitney_map(ctx, t, dz, deg + 1)) << f.name << " W, degree " << deg;

            TwElem x = random_tw_elem(ctx, t, deg, rng, 4);
            ASSERT_TRUE(tw_compatible(x).ok()) << f.name;
            Vec ix = integration_map(x, t, deg);
            Vec lhs = integration_map(differential(x), t, deg + 1);
            Vec rhs = t.complex.d(deg) * ix;
            EXPECT_EQ(lhs, rhs) << f.name << " I, degree " << deg;
        }
    }
}

TEST(Comparison, PowerSumsAreCompatible) {
    for (int k = 1; k <= 4; ++k) {
        auto fam = power_sum_family(k, 3);
        for (int n = 1; n <= 3; ++n)
            for (int j = 0; j <= n; ++j) EXPECT_EQ(pullback(fam[static_cast<size_t>(n)], AffineSub::face(j, n)), fam[static_cast<size_t>(n - 1)]);
    }
}

TEST(TwMc, RandomElementsAreMcAndCompatible) {
    for (const auto& f : fixtures())
        for (const char* an : {"eps2", "t3"}) {
            auto ctx = make_tot_context(f.g, artin_from_name(an));
            auto t = total_complex(f.g);
            Rng rng(7);
            TwElem x = random_tw_mc(ctx, t, rng);
            EXPECT_TRUE(is_mc(x)) << f.name << "/" << an;
            EXPECT_TRUE(tw_compatible(x).ok()) << f.name << "/" << an;
        }
}

TEST(TwMc, TrivialTriple) {
    auto ctx = make_tot_context(constant_sc(sl2_dg_dgla(), 2), artin_from_name("t3"));
    Rng rng(8);
    Elem x = random_mc(ctx->ctx[0], rng);
    auto e = tw_mc_assemble(*ctx, x, Elem(ctx->ctx[1], 1), Elem(ctx->ctx[2], 2));
    EXPECT_TRUE(tw_mc_verify(*ctx, e).ok());
    EXPECT_TRUE(tw_compatible(tw_mc_element(ctx, e)).ok());
    EXPECT_THROW(tw_mc_assemble(*ctx, x, Elem(ctx->ctx[1], 0), Elem(ctx->ctx[2], 2)), std::invalid_argument);
}

TEST(TwMc, DecomposedRandomElementsVerify) {
    for (const auto& f : fixtures())
        for (const char* an : {"eps2", "t3", "xy2"}) {
            auto ctx = make_tot_context(f.g, artin_from_name(an));
            auto t = total_complex(f.g);
            Rng rng(9);
            for (int trial = 0; trial < 2; ++trial) {
                TwElem x = random_tw_mc(ctx, t, rng);
                Homotopy p = decompose_1var(x.at(1));
                TwoHomotopy r = decompose_2var(x.at(2));
                ASSERT_EQ(p.x, ctx->face(0, 1, x.at(0)));
                auto e = tw_mc_assemble(*ctx, x.at(0), p.p, r.r);
                auto rep = tw_mc_verify(*ctx, e);
                EXPECT_TRUE(rep.ok()) << f.name << "/" << an << ": " << (rep.ok() ? "" : rep.violations[0]);
                TwElem back = tw_mc_element(ctx, e);
                for (int n = 0; n <= 2; ++n) EXPECT_EQ(back.at(n), x.at(n)) << f.name << "/" << an << " level " << n;
            }
        }
}

TEST(TwMc, PerturbedSurfaceFailsConditionFour) {
    auto g = cech_from_cover(scaled_cover(3, 2, sl2_dg_dgla()));
    auto ctx = make_tot_context(g, artin_from_name("t3"));
    auto t = total_complex(g);
    Rng rng(10);
    TwElem x = random_tw_mc(ctx, t, rng);
    auto e = tw_mc_assemble(*ctx, x.at(0), decompose_1var(x.at(1)).p, decompose_2var(x.at(2)).r);
    ASSERT_TRUE(tw_mc_verify(*ctx, e).ok());
    const Elem b = add_path_vars(ctx->coface({2}, 2, x.at(0)), 1);
    Elem a;
    for (int tries = 0; tries < 50; ++tries) {
        a = random_elem(ctx->ctx[2], 0, rng);
        if (gauge(add_path_vars(a, 1), b) != b) break;
    }
    // t·s·a vanishes on the edges t = 0 and s = 0 but not on the diagonal.
    e.r = e.r + mul_var(mul_var(add_path_vars(a, 2), 0), 1);
    auto rep = tw_mc_verify(*ctx, e);
    ASSERT_FALSE(rep.ok());
    for (const auto& v : rep.violations) EXPECT_NE(v.find("condition 4"), std::string::npos) << v;

    auto bad = e;
    bad.r = decompose_2var(x.at(2)).r + mul_var(add_path_vars(a, 2), 1);  // s·a breaks r(0,s)
    rep = tw_mc_verify(*ctx, bad);
    ASSERT_FALSE(rep.ok());
    EXPECT_NE(rep.violations[0].find("condition 2"), std::string::npos);
}

namespace {

// Two-open σ-scaled cover of sl2_dg: g₀ = L ⊕ L, g₁ = L, ∂₀ = σ on the second open, ∂₁ the first open.
struct TwoOpen {
    ScDgla g;
    TotPtr ctx;
    DirectSum sum;
    TwoOpen(const char* artin, bool scaled) {
        auto l = scaled ? sl2_dg_dgla() : abelian_dgla();
        g = cech_from_cover(scaled ? scaled_cover(2, 2, l) : uniform_cover(2, 2, l));
        ctx = make_tot_context(g, artin_from_name(artin));
        sum = direct_sum_of({l, l});
    }
    Elem pair(const Elem& a0, const Elem& a1) const {
        auto inc = [&](size_t i, const Elem& a) { return DglaMap{a.ctx()->dgla_ptr(), g.levels[0], sum.inclusion(i).m}; };
        return apply_map(inc(0, a0), a0, ctx->ctx[0]) + apply_map(inc(1, a1), a1, ctx->ctx[0]);
    }
    TotDelObject random_object(Rng& rng) const {
        Elem l1 = random_mc(ctx->ctx[1], rng);
        Elem m = random_elem(ctx->ctx[1], 0, rng);
        Elem l0 = gauge(m, ctx->face(0, 1, pair(Elem(ctx->ctx[1], 0), l1)));
        Elem l = pair(l0, l1);
        return TotDelObject{l, m, Elem(ctx->ctx[2], 0)};
    }
    TotDelMorphism random_morphism(const TotDelObject& o, Rng& rng) const {
        Elem a = random_elem(ctx->ctx[0], 0, rng);
        Elem m1 = bch(bch(ctx->face(1, 1, a), o.m), -ctx->face(0, 1, a));
        TotDelObject t{gauge(a, o.l), m1, Elem(ctx->ctx[2], 0)};
        return TotDelMorphism{a, Elem(ctx->ctx[1], 0), o, t};
    }
};

}  // namespace

TEST(TotDel, ObjectsAndMorphismsVerify) {
    for (const char* an : {"eps2", "t3", "m2^3"})
    for (bool scaled : {true, false}) {
        TwoOpen w(an, scaled);
        Rng rng(21);
        for (int k = 0; k < 3; ++k) {
            auto o = w.random_object(rng);
            auto rep = totdel_verify(*w.ctx, o);
            EXPECT_TRUE(rep.ok()) << an << ": " << (rep.ok() ? "" : rep.violations[0]);
            auto f = w.random_morphism(o, rng);
            rep = totdel_verify(*w.ctx, f);
            EXPECT_TRUE(rep.ok()) << an << ": " << (rep.ok() ? "" : rep.violations[0]);
            if (scaled) continue;
            // a1 is not closed, so shifting m by a1 ⊗ (top monomial) moves e^m*∂_{0,1}l.
            const ArtinAlgebra& A = *w.ctx->artin;
            int top = 0;
            for (int c = 0; c < A.dim(); ++c)
                if (A.degree(c) > A.degree(top)) top = c;
            auto broken = o;
            broken.m = o.m + Elem::term(w.ctx->ctx[1], 0, w.ctx->ctx[1]->dgla().index_of("a1"), top, FormKey{}, Rat(1));
            EXPECT_FALSE(totdel_verify(*w.ctx, broken).ok()) << an;
        }
    }
}

TEST(TotDel, GroupoidLaws) {
    for (const char* an : {"eps2", "t3", "xy2"})
    for (bool scaled : {true, false}) {
        TwoOpen w(an, scaled);
        Rng rng(22);
        auto o0 = w.random_object(rng);
        auto f = w.random_morphism(o0, rng);
        auto g = w.random_morphism(f.target, rng);
        auto hh = w.random_morphism(g.target, rng);
        auto id0 = totdel_identity(*w.ctx, o0);
        auto id1 = totdel_identity(*w.ctx, f.target);
        EXPECT_TRUE(totdel_verify(*w.ctx, id0).ok());
        EXPECT_TRUE(totdel_morphism_equal(totdel_compose(*w.ctx, f, id0), f)) << an;
        EXPECT_TRUE(totdel_morphism_equal(totdel_compose(*w.ctx, id1, f), f)) << an;
        auto inv = totdel_inverse(*w.ctx, f);
        EXPECT_TRUE(totdel_verify(*w.ctx, inv).ok());
        EXPECT_TRUE(totdel_morphism_equal(totdel_compose(*w.ctx, inv, f), id0)) << an;
        EXPECT_TRUE(totdel_morphism_equal(totdel_compose(*w.ctx, f, inv), id1)) << an;
        auto left = totdel_compose(*w.ctx, hh, totdel_compose(*w.ctx, g, f));
        auto right = totdel_compose(*w.ctx, totdel_compose(*w.ctx, hh, g), f);
        EXPECT_TRUE(totdel_verify(*w.ctx, left).ok());
        EXPECT_TRUE(totdel_morphism_equal(left, right)) << an;
        EXPECT_THROW(totdel_compose(*w.ctx, f, f), std::invalid_argument);
    }
}
