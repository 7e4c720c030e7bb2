#include "defo/descent.hpp"
#include "sc_fixtures.hpp"

#include <gtest/gtest.h>

using namespace defo;
using namespace defo::testing;

namespace {

std::vector<Fixture> descent_fixtures() {
    auto f = fixtures();
    f.push_back({"scaled sl2_dg x3", cech_from_cover(scaled_cover(3, 2, sl2_dg_dgla()))});
    return f;
}

// e^{ξG} * X as a homotopy with one path variable.
TwElem gauge_path(const TwElem& g, const TwElem& x) {
    return gauge(mul_path_var(add_path_vars(g, 1), 0), add_path_vars(x, 1));
}

const std::vector<const char*> kArtins = {"eps2", "t3", "xy2"};

}  // namespace

TEST(Hypothesis, Patterns) {
    for (const auto& f : descent_fixtures()) {
        auto h = check_hypothesis(f.g);
        EXPECT_TRUE(h.strong) << f.name;
        EXPECT_TRUE(h.weak) << f.name;
    }
    // End-dgLa of a complex with cohomology only in degree 0 has no negative cohomology.
    EXPECT_TRUE(check_hypothesis(constant_sc(end_pair_dgla().dgla, 2)).strong);

    auto bad = check_hypothesis(negative_counterexample());
    EXPECT_TRUE(validate_sc(negative_counterexample()).ok());
    EXPECT_FALSE(bad.strong);
    EXPECT_FALSE(bad.weak);
    EXPECT_EQ(bad.dim(2, -1), 1);
    ASSERT_EQ(bad.failures.size(), 1u);

    // H^{-2}(g_1) ≠ 0 is allowed by the weak pattern only.
    ScDgla w;
    auto z = zero_dgla();
    w.levels = {z, line_dgla(-2), z};
    w.faces = {{}, {zero_map(z, w.levels[1]), zero_map(z, w.levels[1])}, {}};
    for (int k = 0; k < 3; ++k) w.faces[2].push_back(zero_map(w.levels[1], z));
    ASSERT_TRUE(validate_sc(w).ok());
    auto h = check_hypothesis(w);
    EXPECT_FALSE(h.strong);
    EXPECT_TRUE(h.weak);
}

TEST(PhiOne, ObjectsAndEssentialLift) {
    for (const auto& f : descent_fixtures())
        for (const char* an : kArtins) {
            ScDgla g1 = truncate(f.g, 1);
            auto ctx = make_tot_context(g1, artin_from_name(an));
            auto t = total_complex(g1);
            Rng rng(31);
            for (int trial = 0; trial < 2; ++trial) {
                TwElem x = random_tw_mc(ctx, t, rng);
                TwPairMC e{x.at(0), decompose_1var(x.at(1)).p};
                ASSERT_TRUE(tw_pair_verify(*ctx, e).ok()) << f.name << "/" << an;
                TotDelObject o = phi1_obj(*ctx, e);
                auto rep = totdel_verify(*ctx, o);
                EXPECT_TRUE(rep.ok()) << f.name << "/" << an << ": " << (rep.ok() ? "" : rep.violations[0]);
                TwPairMC lift = phi1_essential_lift(*ctx, o);
                EXPECT_TRUE(tw_pair_verify(*ctx, lift).ok());
                TotDelObject back = phi1_obj(*ctx, lift);
                EXPECT_EQ(back.l, o.l);
                EXPECT_EQ(back.m, o.m);
            }
        }
}

TEST(PhiOne, MatchingFacesGiveIdentityGluing) {
    auto ctx = make_tot_context(truncate(constant_sc(abelian_dgla(), 2), 1), artin_from_name("t3"));
    Rng rng(32);
    Elem x = random_mc(ctx->ctx[0], rng);
    TotDelObject o = phi1_obj(*ctx, TwPairMC{x, Elem(ctx->ctx[1], 1)});
    EXPECT_TRUE(o.m.is_zero());
    EXPECT_EQ(o.l, x);
    // a1 is not closed, so p = t·a1 moves the endpoint.
    Elem p = mul_var(Elem::term(ctx->ctx[1], 1, ctx->ctx[1]->dgla().index_of("a1"), 0, FormKey{}, Rat(1)), 0);
    EXPECT_THROW(phi1_obj(*ctx, TwPairMC{x, p}), std::invalid_argument);
}

TEST(PhiOne, FullLift) {
    for (const auto& f : descent_fixtures())
        for (const char* an : kArtins) {
            ScDgla g1 = truncate(f.g, 1);
            auto ctx = make_tot_context(g1, artin_from_name(an));
            auto t = total_complex(g1);
            Rng rng(33);
            TwElem x = random_tw_mc(ctx, t, rng);
            TwElem gg = random_tw_elem(ctx, t, 0, rng, 2);
            TwElem y = gauge(gg, x);
            TotDelObject ox = phi1_obj(*ctx, TwPairMC{x.at(0), decompose_1var(x.at(1)).p});
            TotDelObject oy = phi1_obj(*ctx, TwPairMC{y.at(0), decompose_1var(y.at(1)).p});
            const Elem a = gg.at(0);
            auto b = stabilizer_membership(totdel_morphism_loop(*ctx, a, ox.m, oy.m), ctx->face(0, 1, ox.l));
            ASSERT_TRUE(b.has_value()) << f.name << "/" << an;
            TotDelMorphism mor{a, *b, ox, oy};
            ASSERT_TRUE(totdel_verify(*ctx, mor).ok());

            TwElem z = phi1_full_lift(ctx, mor);
            EXPECT_TRUE(is_mc(z)) << f.name << "/" << an;
            EXPECT_TRUE(tw_compatible(z).ok()) << f.name << "/" << an;
            auto lift_elem = [&](const TotDelObject& o) {
                TwPairMC p = phi1_essential_lift(*ctx, o);
                return std::make_pair(p.x, gauge(p.p, add_path_vars(ctx->face(0, 1, p.x), 1)));
            };
            auto [s0, s1] = lift_elem(ox);
            auto [t0, t1] = lift_elem(oy);
            TwElem z0 = subst_path_var(z, 0, 0), z1 = subst_path_var(z, 0, 1);
            EXPECT_EQ(z0.at(0), s0);
            EXPECT_EQ(z0.at(1), s1);
            EXPECT_EQ(z1.at(0), t0);
            EXPECT_EQ(z1.at(1), t1) << f.name << "/" << an;
            EXPECT_TRUE(morphism_equal(phi_mor_gauge(z), a, ox.l));
        }
}

TEST(PhiOne, TrivialFullLiftIsConstant) {
    auto ctx = make_tot_context(truncate(cech_from_cover(scaled_cover(2, 1, sl2_dg_dgla())), 1), artin_from_name("t3"));
    auto t = total_complex(ctx->g);
    Rng rng(34);
    TwElem x = random_tw_mc(ctx, t, rng);
    TotDelObject o = phi1_obj(*ctx, TwPairMC{x.at(0), decompose_1var(x.at(1)).p});
    TwElem z = phi1_full_lift(ctx, totdel_identity(*ctx, o));
    TwPairMC p = phi1_essential_lift(*ctx, o);
    EXPECT_EQ(z.at(0), add_path_vars(p.x, 1));
    EXPECT_EQ(z.at(1), extend_vars(gauge(p.p, add_path_vars(ctx->face(0, 1, p.x), 1)), 2, {0}));
}

TEST(PhiOne, NaturalUnderBaseChange) {
    auto src = artin_from_name("eps2"), tgt = artin_from_name("m2^2");
    Vec img(2);
    img << 1, -2;
    ArtinMorphism bc(src, tgt, {img});
    ScDgla g1 = truncate(cech_from_cover(scaled_cover(3, 2, sl2_dg_dgla())), 1);
    auto cs = make_tot_context(g1, src), ct = make_tot_context(g1, tgt);
    auto t = total_complex(g1);
    Rng rng(35);
    for (int trial = 0; trial < 3; ++trial) {
        TwElem x = random_tw_mc(cs, t, rng);
        TwPairMC e{x.at(0), decompose_1var(x.at(1)).p};
        TotDelObject o = phi1_obj(*cs, e);
        TwPairMC eb{base_change(bc, e.x, ct->ctx[0]), base_change(bc, e.p, ct->ctx[1])};
        TotDelObject ob = phi1_obj(*ct, eb);
        EXPECT_EQ(ob.l, base_change(bc, o.l, ct->ctx[0]));
        EXPECT_EQ(ob.m, base_change(bc, o.m, ct->ctx[1]));
    }
}

TEST(PhiTwo, ObjectsAndLifts) {
    for (const auto& f : descent_fixtures()) {
        if (f.g.top() < 2) continue;
        for (const char* an : kArtins) {
            auto ctx = make_tot_context(f.g, artin_from_name(an));
            auto t = total_complex(f.g);
            Rng rng(41);
            for (int trial = 0; trial < 2; ++trial) {
                TwElem x = random_tw_mc(ctx, t, rng);
                TwTruncMC e = tw_mc_decompose(*ctx, x);
                TotDelObject o = phi2_obj(*ctx, e);
                auto rep = totdel_verify(*ctx, o);
                EXPECT_TRUE(rep.ok()) << f.name << "/" << an << ": " << (rep.ok() ? "" : rep.violations[0]);
                Phi2Lift lift = phi2_essential_lift(*ctx, o);
                EXPECT_TRUE(tw_mc_verify(*ctx, lift.e).ok());
                EXPECT_TRUE(is_mc(tw_mc_element(ctx, lift.e))) << f.name << "/" << an;
                TotDelObject back = phi2_obj(*ctx, lift.e);
                EXPECT_EQ(back.l, o.l);
                EXPECT_EQ(back.m, o.m);
                EXPECT_TRUE(totdel_verify(*ctx, back).ok());
            }
        }
    }
}

TEST(PhiTwo, IdentityGluing) {
    auto ctx = make_tot_context(constant_sc(sl2_dg_dgla(), 2), artin_from_name("t3"));
    Rng rng(42);
    Elem x = random_mc(ctx->ctx[0], rng);
    TotDelObject o = phi2_obj(*ctx, tw_mc_assemble(*ctx, x, Elem(ctx->ctx[1], 1), Elem(ctx->ctx[2], 2)));
    EXPECT_EQ(o.l, x);
    EXPECT_TRUE(o.m.is_zero());
    EXPECT_TRUE(o.u.is_zero());
}

TEST(PhiTwo, Morphisms) {
    for (const auto& f : descent_fixtures()) {
        if (f.g.top() < 2) continue;
        for (const char* an : {"eps2", "t3"}) {
            auto ctx = make_tot_context(f.g, artin_from_name(an));
            auto t = total_complex(f.g);
            Rng rng(43);
            TwElem x = random_tw_mc(ctx, t, rng);
            TwElem g = random_tw_elem(ctx, t, 0, rng, 1);
            TwElem h = random_tw_elem(ctx, t, 0, rng, 1);
            TwElem z = gauge_path(g, x);
            TotDelMorphism m = phi2_mor(ctx, z);
            auto rep = totdel_verify(*ctx, m);
            EXPECT_TRUE(rep.ok()) << f.name << "/" << an << ": " << (rep.ok() ? "" : rep.violations[0]);
            EXPECT_EQ(m.a, g.at(0));

            // Homotopies differing by an irrelevant stabiliser element give equal morphisms.
            TwElem u = random_tw_elem(ctx, t, -1, rng, 1);
            TwElem w = differential(u) + bracket(x, u);
            TotDelMorphism m2 = phi2_mor(ctx, gauge_path(bch(g, w), x));
            EXPECT_TRUE(totdel_morphism_equal(m, m2)) << f.name << "/" << an;

            // Functoriality on BCH composites.
            TwElem y = gauge(g, x);
            TotDelMorphism mh = phi2_mor(ctx, gauge_path(h, y));
            TotDelMorphism comp = phi2_mor(ctx, gauge_path(bch(h, g), x));
            EXPECT_TRUE(totdel_morphism_equal(comp, totdel_compose(*ctx, mh, m))) << f.name << "/" << an;
        }
    }
}

TEST(Descend, RandomElements) {
    for (const auto& f : descent_fixtures()) {
        if (f.g.top() < 2) continue;
        auto ctx = make_tot_context(f.g, artin_from_name("t3"));
        auto t = total_complex(f.g);
        Rng rng(51);
        TwElem x = random_tw_mc(ctx, t, rng);
        DescentResult r = phi_descend(ctx, x);
        ASSERT_FALSE(r.refused);
        EXPECT_TRUE(r.check.ok()) << f.name;
        TotDelObject direct = phi2_obj(*ctx, tw_mc_decompose(*ctx, x));
        EXPECT_EQ(r.object.l, direct.l);
        EXPECT_EQ(r.object.m, direct.m);
    }
}

TEST(Descend, ConstantFamily) {
    auto ctx = make_tot_context(constant_sc(sl2_dg_dgla(), 3), artin_from_name("t3"));
    Rng rng(52);
    Elem x = random_mc(ctx->ctx[0], rng);
    TwElem c(ctx, 0);
    for (int n = 0; n <= 3; ++n) c.at(n) = extend_vars(rebase(x, ctx->ctx[static_cast<size_t>(n)]), n, {});
    ASSERT_TRUE(tw_compatible(c).ok());
    DescentResult r = phi_descend(ctx, c);
    ASSERT_FALSE(r.refused);
    EXPECT_EQ(r.object.l, x);
    EXPECT_TRUE(r.object.m.is_zero());
}

TEST(Descend, RefusesOutsideHypothesis) {
    ScDgla g = negative_counterexample();
    auto ctx = make_tot_context(g, artin_from_name("eps2"));
    DescentResult r = phi_descend(ctx, TwElem(ctx, 0));
    EXPECT_TRUE(r.refused);
    EXPECT_FALSE(r.check.ok());
}

TEST(Pi0, SquareZeroComparison) {
    for (const auto& f : descent_fixtures())
        for (const char* an : {"eps2", "m2^2"}) {
            auto c = pi0_compare_square_zero(f.g, artin_from_name(an));
            EXPECT_TRUE(c.iso) << f.name;
            EXPECT_EQ(c.tot_side(), c.totdel_side()) << f.name;
        }
    auto circ = pi0_compare_square_zero(circle(1), artin_from_name("eps2"));
    EXPECT_TRUE(circ.iso);
    EXPECT_EQ(circ.tot_side(), 1);

    auto bad = pi0_compare_square_zero(negative_counterexample(), artin_from_name("eps2"));
    EXPECT_FALSE(bad.iso);
    EXPECT_EQ(bad.tot_side(), 1);
    EXPECT_EQ(bad.totdel_side(), 0);

    auto zero = pi0_compare_square_zero(constant_sc(zero_dgla(), 2), artin_from_name("eps2"));
    EXPECT_TRUE(zero.iso);
    EXPECT_EQ(zero.tot_side(), 0);
    EXPECT_EQ(zero.totdel_side(), 0);

    EXPECT_THROW(pi0_compare_square_zero(circle(1), artin_from_name("t3")), std::invalid_argument);
}
