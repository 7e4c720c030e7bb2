#include "defo/descent.hpp"

#include <stdexcept>

namespace defo {

namespace {

Elem times_var(const Elem& x, int var) { return mul_var(x, var); }

// Constant element viewed in `n` variables.
Elem lift_const(const Elem& x, int n) { return extend_vars(x, n, {}); }

// f(t) = t(1−t)·h(t); throws if f(0) or f(1) is nonzero. One variable, no differentials.
Elem divide_by_t_one_minus_t(const Elem& f) {
    std::map<std::pair<int, int>, std::vector<Rat>> coeffs;
    for (const auto& [k, c] : f.terms()) {
        if (k.form.dmask() != 0u) throw std::logic_error("divide_by_t_one_minus_t: differential present");
        auto& v = coeffs[{k.basis, k.coeff}];
        const size_t e = static_cast<size_t>(k.form.exp(0));
        if (v.size() <= e) v.resize(e + 1, Rat(0));
        v[e] += c;
    }
    Elem h(f.ctx(), 1);
    for (const auto& [key, c] : coeffs) {
        if (c[0] != 0) throw std::logic_error("divide_by_t_one_minus_t: nonzero at t = 0");
        Rat run = 0;
        for (size_t k = 1; k < c.size(); ++k) {
            run += c[k];  // h_{k−1} = Σ_{j≤k} c_j
            if (k + 1 < c.size() && run != 0) h.add({key.first, key.second, FormKey::from({static_cast<int>(k - 1)}, 0u)}, run);
        }
        if (run != 0) throw std::logic_error("divide_by_t_one_minus_t: nonzero at t = 1");
    }
    return h;
}

std::string hdeg(int j, int n) { return "H^" + std::to_string(j) + "(g_" + std::to_string(n) + ") ≠ 0"; }

}  // namespace

Index HypothesisReport::dim(int level, int degree) const {
    if (degree < lo || degree >= 0 || level < 0 || level >= static_cast<int>(neg.size())) return 0;
    return neg[static_cast<size_t>(level)][static_cast<size_t>(degree - lo)];
}

HypothesisReport check_hypothesis(const ScDgla& g) {
    HypothesisReport r;
    r.lo = -1;
    for (const auto& l : g.levels)
        if (l->size() > 0) r.lo = std::min(r.lo, l->lo());
    for (int i = 0; i <= g.top(); ++i) {
        std::vector<Index> row;
        for (int j = r.lo; j < 0; ++j) {
            row.push_back(cohomology_dgla(*g.levels[static_cast<size_t>(i)], j));
            if (row.back() != 0) r.strong = false;
        }
        r.neg.push_back(row);
    }
    for (int n = 1; n <= g.top(); ++n) {
        std::vector<int> degs = {-n};
        if (n >= 2) degs.push_back(1 - n);
        if (n >= 3) degs.push_back(2 - n);
        for (int j : degs)
            if (r.dim(n, j) != 0) {
                r.weak = false;
                r.failures.push_back(hdeg(j, n));
            }
    }
    return r;
}

ValidationReport tw_pair_verify(const TotContext& c, const TwPairMC& e) {
    ValidationReport rep;
    if (e.x.nvars() != 0 || e.p.nvars() != 1) {
        rep.add("x must be constant and p must have one variable");
        return rep;
    }
    if (!is_mc(e.x)) rep.add("x is not Maurer–Cartan");
    if (!e.p.homogeneous_of(0) || !substitute(e.p, 0, 0).is_zero() || !dpart(e.p, 1u).is_zero())
        rep.add("p(t) must lie in g_1^0[t]·t ⊗ m_A");
    if (!rep.ok()) return rep;
    if (c.face(1, 1, e.x) != gauge(substitute(e.p, 0, 1), c.face(0, 1, e.x))) rep.add("∂_{1,1}x = e^{p(1)}*∂_{0,1}x fails");
    return rep;
}

TotDelObject phi1_obj(const TotContext& c, const TwPairMC& e) {
    auto rep = tw_pair_verify(c, e);
    if (!rep.ok()) throw std::invalid_argument("phi1_obj: " + rep.violations[0]);
    return TotDelObject{e.x, substitute(e.p, 0, 1), c.top() >= 2 ? Elem(c.ctx[2], 0) : Elem()};
}

TwPairMC phi1_essential_lift(const TotContext& c, const TotDelObject& o) {
    auto rep = totdel_verify(c, o);
    if (!rep.ok()) throw std::invalid_argument("phi1_essential_lift: " + rep.violations[0]);
    return TwPairMC{o.l, times_var(lift_const(o.m, 1), 0)};
}

TwElem phi1_full_lift(const TotPtr& ctx, const TotDelMorphism& f) {
    const TotContext& c = *ctx;
    auto rep = totdel_verify(c, f);
    if (!rep.ok()) throw std::invalid_argument("phi1_full_lift: " + rep.violations[0]);
    // Level 0 in the path variable ξ; level 1 in (t, ξ).
    const Elem xa = times_var(lift_const(f.a, 1), 0);
    const Elem base = c.face(0, 1, f.source.l);
    const Elem xb = times_var(lift_const(f.b.is_zero() ? Elem(c.ctx[1], 0) : f.b, 1), 0);
    const Elem stab = differential(xb) + bracket(lift_const(base, 1), xb);
    auto in_tx = [](const Elem& e) { return extend_vars(e, 2, {1}); };
    const Elem d11 = in_tx(c.face(1, 1, xa));
    const Elem d01 = in_tx(c.face(0, 1, xa));
    const Elem loop = bch(bch(bch(d11, lift_const(f.source.m, 2)), in_tx(stab)), -d01);
    TwElem z(ctx, 1);
    z.at(0) = gauge(xa, lift_const(f.source.l, 1));
    z.at(1) = gauge(bch(times_var(loop, 0), d01), lift_const(base, 2));
    return z;
}

Elem phi_mor_gauge(const TwElem& z) {
    if (z.extra() != 1) throw std::invalid_argument("phi_mor_gauge: expected one path variable");
    return substitute(decompose_1var(z.at(0)).p, 0, 1);
}

TwTruncMC tw_mc_decompose(const TotContext& c, const TwElem& x) {
    if (x.extra() != 0 || x.levels() < 3) throw std::invalid_argument("tw_mc_decompose: expected levels 0..2 and no path variables");
    Homotopy h = decompose_1var(x.at(1));
    if (h.x != c.face(0, 1, x.at(0))) throw std::invalid_argument("tw_mc_decompose: level 1 does not start at ∂_{0,1}x");
    TwoHomotopy r = decompose_2var(x.at(2));
    return TwTruncMC{x.at(0), h.p, r.r};
}

TotDelObject phi2_obj(const TotContext& c, const TwTruncMC& e) {
    auto rep = tw_mc_verify(c, e);
    if (!rep.ok()) throw std::invalid_argument("phi2_obj: " + rep.violations[0]);
    const Elem m = substitute(e.p, 0, 1);
    const Elem b = c.face(2, 2, c.face(0, 1, e.x));
    auto u = stabilizer_membership(totdel_cocycle(c, m), b);
    if (!u) throw std::logic_error("phi2_obj: no level-2 coherence witness (internal inconsistency)");
    return TotDelObject{e.x, m, *u};
}

TotDelMorphism phi2_mor(const TotPtr& ctx, const TwElem& z) {
    const TotContext& c = *ctx;
    if (!is_mc(z)) throw std::invalid_argument("phi2_mor: not Maurer–Cartan");
    auto comp = tw_compatible(z);
    if (!comp.ok()) throw std::invalid_argument("phi2_mor: " + comp.violations[0]);
    TotDelObject s = phi2_obj(c, tw_mc_decompose(c, subst_path_var(z, 0, 0)));
    TotDelObject t = phi2_obj(c, tw_mc_decompose(c, subst_path_var(z, 0, 1)));
    Elem a = phi_mor_gauge(z);
    auto b = stabilizer_membership(totdel_morphism_loop(c, a, s.m, t.m), c.face(0, 1, s.l));
    if (!b) throw std::logic_error("phi2_mor: no level-1 witness (internal inconsistency)");
    return TotDelMorphism{a, *b, s, t};
}

Phi2Lift phi2_essential_lift(const TotContext& c, const TotDelObject& o) {
    auto rep = totdel_verify(c, o);
    if (!rep.ok()) throw std::invalid_argument("phi2_essential_lift: " + rep.violations[0]);
    if (c.top() < 2) throw std::invalid_argument("phi2_essential_lift: needs levels 0..2");
    const Elem a_vert = c.coface({2}, 2, o.l);
    const Elem b_vert = c.face(2, 2, c.face(0, 1, o.l));
    const Elem alpha = c.face(0, 2, o.m), beta = c.face(1, 2, o.m), gamma = c.face(2, 2, o.m);
    const Elem u = o.u.is_zero() ? Elem(c.ctx[2], 0) : o.u;
    const Elem omega = differential(u) + bracket(b_vert, u);
    auto ut = stabilizer_membership(bch(bch(-alpha, omega), alpha), a_vert);
    if (!ut) throw std::logic_error("phi2_essential_lift: conjugated witness missing (internal inconsistency)");

    // Edge t + s = 1, parametrized by t.
    const Elem v = -times_var(lift_const(*ut, 1), 0);
    const Elem psi = differential(v) + bracket(lift_const(a_vert, 1), v);
    const Elem edge = bch(bch(times_var(lift_const(gamma, 1), 0), lift_const(alpha, 1)), psi);
    const Elem e0 = dpart(edge, 0u), e1 = dpart(edge, 1u);
    const Elem t_beta = times_var(lift_const(beta, 1), 0);
    const Elem one_minus_t_alpha = lift_const(alpha, 1) - times_var(lift_const(alpha, 1), 0);
    const Elem core = divide_by_t_one_minus_t(e0 - t_beta - one_minus_t_alpha);

    auto in_ts = [](const Elem& e) { return extend_vars(e, 2, {0}); };
    Elem rho = times_var(lift_const(beta, 2), 0) + times_var(lift_const(alpha, 2), 1) + times_var(times_var(in_ts(core), 0), 1);
    rho += attach_d(times_var(in_ts(e1), 1), 1u);
    rho += -attach_d(times_var(in_ts(e1), 0), 2u);

    const Elem surface = gauge(rho, lift_const(a_vert, 2));
    TwTruncMC e{o.l, times_var(lift_const(o.m, 1), 0), decompose_2var(surface).r};
    auto chk = tw_mc_verify(c, e);
    if (!chk.ok()) throw std::logic_error("phi2_essential_lift: lift fails verification: " + chk.violations[0]);
    return Phi2Lift{e, *ut, edge, rho};
}

DescentResult phi_descend(const TotPtr& ctx, const TwElem& x) {
    DescentResult r;
    r.hypothesis = check_hypothesis(ctx->g);
    if (!r.hypothesis.applies()) {
        r.refused = true;
        for (const auto& f : r.hypothesis.failures) r.check.add("hypothesis: " + f);
        return r;
    }
    if (!is_mc(x)) throw std::invalid_argument("phi_descend: not Maurer–Cartan");
    auto comp = tw_compatible(x);
    if (!comp.ok()) throw std::invalid_argument("phi_descend: " + comp.violations[0]);
    r.decomposed = tw_mc_decompose(*ctx, x);
    r.object = phi2_obj(*ctx, r.decomposed);
    r.check = totdel_verify(*ctx, r.object);
    return r;
}

Pi0Comparison pi0_compare_square_zero(const ScDgla& g, const ArtinPtr& a) {
    if (!a || !a->square_zero()) throw std::invalid_argument("pi0_compare_square_zero: coefficients must satisfy m_A² = 0");
    Pi0Comparison out;
    out.coeff_dim = a->dim();
    auto lvl = [&](int p) -> const Dgla& {
        static const DglaPtr z = zero_dgla();
        return p <= g.top() ? *g.levels[static_cast<size_t>(p)] : *z;
    };
    auto dm = [&](int p, int q) { return lvl(p).dim(q + 1) && lvl(p).dim(q) ? lvl(p).d_matrix(q) : Mat(Mat::Zero(lvl(p).dim(q + 1), lvl(p).dim(q))); };
    // Σ_k sign_k ∂_{k,p} restricted to degree q.
    auto alt = [&](int p, int q, const std::vector<int>& signs) {
        Mat m = Mat::Zero(lvl(p).dim(q), lvl(p - 1).dim(q));
        if (p > g.top() || m.size() == 0) return m;
        for (int k = 0; k <= p && k < static_cast<int>(signs.size()); ++k)
            m += Rat(signs[static_cast<size_t>(k)]) * g.face(k, p).m.block(lvl(p).offset(q), lvl(p - 1).offset(q), m.rows(), m.cols());
        return m;
    };
    const Index n0 = lvl(0).dim(1), n1 = lvl(1).dim(0);
    // Rows: dl = 0; dm − (∂_0 − ∂_1)l = 0; (∂_0 − ∂_1 + ∂_2)m ∈ im d.
    const Mat d01 = dm(0, 1), d10 = dm(1, 0);
    const Mat f01 = alt(1, 1, {1, -1});
    Mat coker;
    {
        const Mat d2 = dm(2, -1);
        Subspace left = kernel(Mat(d2.transpose()));
        coker = left.basis.transpose();
    }
    const Mat cob = coker * alt(2, 0, {1, -1, 1});
    Mat z = vstack(vstack(hstack(d01, Mat::Zero(d01.rows(), n1)), hstack(Mat(-f01), d10)), hstack(Mat::Zero(cob.rows(), n0), cob));
    Subspace zs = kernel(z);
    out.cocycles = zs.dim();
    const Mat b = vstack(hstack(Mat(-dm(0, 0)), Mat::Zero(n0, lvl(1).dim(-1))), hstack(alt(1, 0, {-1, 1}), dm(1, -1)));
    Subspace bs = image(b);
    out.boundaries = bs.dim();

    TotalComplex t = total_complex(g);
    out.h1_total = cohomology(t.complex, 1).dim;
    Subspace zt = kernel(t.complex.d(1));
    Mat phi = Mat::Zero(n0 + n1, t.complex.dim(1));
    for (Index i = 0; i < n0; ++i) phi(i, t.block_offset(1, 0) + i) = 1;
    for (Index i = 0; i < n1; ++i) phi(n0 + i, t.block_offset(1, 1) + i) = -1;
    Subspace img = sum(span(Mat(phi * zt.basis)), bs);
    out.iso = img.dim() - bs.dim() == out.h1_total && out.cocycles - out.boundaries == out.h1_total;
    return out;
}

ScDgla negative_counterexample() {
    DglaBuilder b;
    b.add("y", -1);
    ScDgla g;
    auto z = zero_dgla();
    g.levels = {z, z, b.build()};
    g.faces.resize(3);
    for (int i = 1; i <= 2; ++i)
        for (int k = 0; k <= i; ++k) g.faces[static_cast<size_t>(i)].push_back(zero_map(g.levels[static_cast<size_t>(i - 1)], g.levels[static_cast<size_t>(i)]));
    return g;
}

}  // namespace defo
