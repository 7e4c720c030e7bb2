#include "defo/forms.hpp"
#include "defo/random.hpp"

#include <gtest/gtest.h>

using namespace defo;

namespace {

Form random_form(Rng& rng, int n, int maxdeg) {
    Form f(n);
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
        std::vector<int> ex(static_cast<size_t>(n), 0);
        while (true) {
            int tot = 0;
            for (int v : ex) tot += v;
            if (tot <= maxdeg && rng.coin(35)) f.add(FormKey::from(ex, mask), rng.small_rat());
            int i = 0;
            while (i < n && ex[static_cast<size_t>(i)] == maxdeg) ex[static_cast<size_t>(i++)] = 0;
            if (i == n) break;
            ++ex[static_cast<size_t>(i)];
        }
    }
    return f;
}

// ∫_0^1 ∫_0^{1-x} x^a y^b dy dx by expanding (1-x)^{b+1} with the binomial theorem.
Rat iterated_integral(int a, int b) {
    Rat acc = 0, binom = 1;
    for (int k = 0; k <= b + 1; ++k) {
        if (k > 0) binom = binom * (b + 2 - k) / k;
        acc += ((k % 2) ? -1 : 1) * binom / (a + k + 1);
    }
    return acc / (b + 1);
}

Form evaluate_1d(const Form& f, const Rat& c) { return pullback(f, AffineSub::evaluate(1, 0, c)); }

}  // namespace

TEST(Forms, DifferentialBasics) {
    Form t = Form::var(1, 0);
    EXPECT_EQ(d_form(wedge(t, t)), Rat(2) * wedge(t, Form::dvar(1, 0)));
    EXPECT_TRUE(wedge(Form::dvar(1, 0), Form::dvar(1, 0)).is_zero());
    Form t2 = Form::var(2, 0), s2 = Form::var(2, 1);
    Form lhs = d_form(wedge(wedge(t2, s2), Form::dvar(2, 1)));
    EXPECT_EQ(lhs, wedge(s2, wedge(Form::dvar(2, 0), Form::dvar(2, 1))));
}

TEST(Forms, DSquaredZeroAndLeibniz) {
    Rng rng(1);
    for (int k = 0; k < 20; ++k) {
        Form a = random_form(rng, 3, 3), b = random_form(rng, 3, 2);
        EXPECT_TRUE(d_form(d_form(a)).is_zero());
        // d is a graded derivation; check on homogeneous pieces.
        for (const auto& [ka, ca] : a.terms()) {
            Form ma = Form::monomial(3, ka, ca);
            Rat sg = (ka.form_degree() % 2) ? -1 : 1;
            EXPECT_EQ(d_form(wedge(ma, b)), wedge(d_form(ma), b) + sg * wedge(ma, d_form(b)));
        }
    }
}

TEST(Forms, FaceConvention) {
    // δ^0 on Δ¹ is the vertex t = 0 and δ^1 is t = 1.
    Form t = Form::var(1, 0);
    EXPECT_EQ(face_map(0, 1, t), Form::constant(0, 0));
    EXPECT_EQ(face_map(1, 1, t), Form::constant(0, 1));
    EXPECT_EQ(face_map(1, 2, Form::constant(2, 1)), Form::constant(1, 1));
}

TEST(Forms, FaceOutOfRange) { EXPECT_THROW(face_map(3, 2, Form(2)), std::invalid_argument); }

TEST(Forms, FaceMapsAreDgaMorphisms) {
    Rng rng(2);
    for (int n = 1; n <= 3; ++n)
        for (int k = 0; k <= n; ++k)
            for (int trial = 0; trial < 4; ++trial) {
                Form a = random_form(rng, n, 2), b = random_form(rng, n, 2);
                EXPECT_EQ(face_map(k, n, d_form(a)), d_form(face_map(k, n, a)));
                EXPECT_EQ(face_map(k, n, wedge(a, b)), wedge(face_map(k, n, a), face_map(k, n, b)));
            }
}

TEST(Forms, CosimplicialIdentities) {
    Rng rng(3);
    for (int n = 2; n <= 3; ++n)
        for (int k = 0; k <= n; ++k)
            for (int j = 0; j < k; ++j) {
                Form w = random_form(rng, n, 3);
                // Pullbacks compose contravariantly: (δ^k δ^j)^* = δ^{j*} δ^{k*}.
                EXPECT_EQ(face_map(j, n - 1, face_map(k, n, w)), face_map(k - 1, n - 1, face_map(j, n, w)));
            }
}

TEST(Forms, Integrals) {
    EXPECT_EQ(integrate_simplex(Form::dvar(1, 0)), Rat(1));
    EXPECT_EQ(integrate_simplex(wedge(Form::var(1, 0), Form::dvar(1, 0))), Rat(1, 2));
    EXPECT_THROW(integrate_simplex(Form::var(1, 0)), std::invalid_argument);
    for (int a = 0; a <= 4; ++a)
        for (int b = 0; b <= 4; ++b)
            EXPECT_EQ(simplex_monomial_integral(FormKey::from({a, b}, 3u), 2), iterated_integral(a, b)) << a << "," << b;
}

TEST(Forms, StokesOnInterval) {
    Rng rng(4);
    for (int k = 0; k < 20; ++k) {
        Form f(1);
        for (int e = 0; e <= 5; ++e)
            if (rng.coin()) f.add(FormKey::from({e}, 0), rng.small_rat());
        Rat lhs = f.is_zero() ? Rat(0) : integrate_simplex(d_form(f));
        Rat f1 = 0, f0 = 0;
        Form at1 = evaluate_1d(f, 1), at0 = evaluate_1d(f, 0);
        for (const auto& [key, c] : at1.terms()) f1 += c;
        for (const auto& [key, c] : at0.terms()) f0 += c;
        EXPECT_EQ(lhs, f1 - f0);
    }
}

TEST(Forms, WhitneyForms) {
    // Barycentric t_0 is the chart coordinate t on Δ¹, t_1 = 1 − t.
    EXPECT_EQ(whitney_form({0}, 1), Form::var(1, 0));
    EXPECT_EQ(whitney_form({1}, 1), Form::constant(1, 1) - Form::var(1, 0));
    EXPECT_EQ(whitney_form({0, 1}, 1), -Form::dvar(1, 0));
    EXPECT_EQ(integrate_simplex(whitney_form({0, 1, 2}, 2)), Rat(1));
    EXPECT_THROW(whitney_form({}, 1), std::invalid_argument);
}

TEST(Forms, WhitneyFacesCombinatorial) {
    for (int n = 1; n <= 3; ++n)
        for (unsigned mask = 1; mask < (1u << (n + 1)); ++mask) {
            std::vector<int> sub;
            for (int i = 0; i <= n; ++i)
                if (mask >> i & 1u) sub.push_back(i);
            Form w = whitney_form(sub, n);
            for (int k = 0; k <= n; ++k) {
                bool hit = false;
                std::vector<int> pulled;
                for (int v : sub) {
                    if (v == k) hit = true;
                    else pulled.push_back(v < k ? v : v - 1);
                }
                Form expect = hit ? Form(n - 1) : whitney_form(pulled, n - 1);
                EXPECT_EQ(face_map(k, n, w), expect) << "n=" << n << " k=" << k << " mask=" << mask;
            }
        }
}
