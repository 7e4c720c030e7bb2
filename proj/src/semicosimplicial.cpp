#include "defo/semicosimplicial.hpp"

#include <algorithm>
#include <stdexcept>

namespace defo {

namespace {

std::string idx_str(const std::vector<int>& v) {
    std::string s = "{";
    for (size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
    return s + "}";
}

int sgn(int e) { return (e % 2 == 0) ? 1 : -1; }

}  // namespace

DglaMap ScDgla::coface(const std::vector<int>& subset, int n) const {
    const int p = static_cast<int>(subset.size()) - 1;
    if (p < 0 || p > n || n > top()) throw std::invalid_argument("coface: bad subset");
    std::vector<int> missing;
    for (int v = 0, i = 0; v <= n; ++v) {
        if (i <= p && subset[static_cast<size_t>(i)] == v) ++i;
        else missing.push_back(v);
    }
    if (static_cast<int>(missing.size()) != n - p) throw std::invalid_argument("coface: subset must be increasing in [0,n]");
    DglaMap m = identity_map(levels[static_cast<size_t>(p)]);
    int cur = p;
    for (int j : missing) {
        m = compose(face(j, cur + 1), m);
        ++cur;
    }
    return m;
}

ValidationReport validate_sc(const ScDgla& g) {
    ValidationReport rep;
    if (g.levels.empty()) {
        rep.add("no levels");
        return rep;
    }
    if (g.faces.size() != g.levels.size()) {
        rep.add("faces: expected one face list per level");
        return rep;
    }
    for (int i = 0; i <= g.top(); ++i) {
        rep.merge(validate_dgla(*g.levels[static_cast<size_t>(i)]), "g_" + std::to_string(i) + ": ");
        if (i == 0) continue;
        if (static_cast<int>(g.faces[static_cast<size_t>(i)].size()) != i + 1) {
            rep.add("level " + std::to_string(i) + ": expected " + std::to_string(i + 1) + " face maps");
            continue;
        }
        for (int k = 0; k <= i; ++k) {
            const DglaMap& f = g.face(k, i);
            const std::string nm = "∂_{" + std::to_string(k) + "," + std::to_string(i) + "}";
            if (f.source.get() != g.levels[static_cast<size_t>(i - 1)].get() || f.target.get() != g.levels[static_cast<size_t>(i)].get()) {
                rep.add(nm + ": source/target mismatch");
                continue;
            }
            rep.merge(validate_map(f), nm + ": ");
        }
    }
    if (!rep.ok()) return rep;
    for (int i = 1; i < g.top(); ++i)
        for (int k = 0; k <= i; ++k)
            for (int j = 0; j <= k; ++j) {
                Mat lhs = g.face(k + 1, i + 1).m * g.face(j, i).m;
                Mat rhs = g.face(j, i + 1).m * g.face(k, i).m;
                if (lhs != rhs)
                    rep.add("∂_{" + std::to_string(k + 1) + "," + std::to_string(i + 1) + "}∂_{" + std::to_string(j) + "," +
                            std::to_string(i) + "} = ∂_{" + std::to_string(j) + "," + std::to_string(i + 1) + "}∂_{" +
                            std::to_string(k) + "," + std::to_string(i) + "} fails");
            }
    return rep;
}

ScDgla truncate(const ScDgla& g, int i) {
    if (i < 0 || i > g.top()) throw std::invalid_argument("truncate: level out of range");
    ScDgla out = g;
    auto z = zero_dgla();
    for (int n = i + 1; n <= g.top(); ++n) out.levels[static_cast<size_t>(n)] = z;
    for (int n = i + 1; n <= g.top(); ++n)
        for (int k = 0; k <= n; ++k)
            out.faces[static_cast<size_t>(n)][static_cast<size_t>(k)] = zero_map(out.levels[static_cast<size_t>(n - 1)], z);
    return out;
}

ScDgla constant_sc(const DglaPtr& l, int top) {
    ScDgla g;
    g.levels.assign(static_cast<size_t>(top + 1), l);
    g.faces.resize(static_cast<size_t>(top + 1));
    for (int i = 1; i <= top; ++i) g.faces[static_cast<size_t>(i)].assign(static_cast<size_t>(i + 1), identity_map(l));
    return g;
}

Index TotalComplex::block_offset(int n, int p) const {
    Index off = 0;
    for (int q = 0; q < p; ++q) off += levels[static_cast<size_t>(q)]->dim(n - q);
    return off;
}

TotalComplex total_complex(const ScDgla& g) {
    TotalComplex t;
    t.levels = g.levels;
    int lo = 0, hi = -1;
    bool any = false;
    for (int p = 0; p <= g.top(); ++p) {
        const Dgla& l = *g.levels[static_cast<size_t>(p)];
        if (l.size() == 0) continue;
        lo = any ? std::min(lo, p + l.lo()) : p + l.lo();
        hi = any ? std::max(hi, p + l.hi()) : p + l.hi();
        any = true;
    }
    if (!any) {
        t.complex = ChainComplexQ(0, {0}, {});
        return t;
    }
    std::vector<Index> dims;
    for (int n = lo; n <= hi; ++n) {
        Index d = 0;
        for (int p = 0; p <= g.top(); ++p) d += g.levels[static_cast<size_t>(p)]->dim(n - p);
        dims.push_back(d);
    }
    std::vector<Mat> diffs;
    for (int n = lo; n < hi; ++n) {
        Mat m = Mat::Zero(dims[static_cast<size_t>(n + 1 - lo)], dims[static_cast<size_t>(n - lo)]);
        for (int p = 0; p <= g.top(); ++p) {
            const Dgla& l = *g.levels[static_cast<size_t>(p)];
            const int q = n - p;
            const Index dq = l.dim(q);
            if (dq == 0) continue;
            const Index col = t.block_offset(n, p);
            if (l.dim(q + 1) > 0) m.block(t.block_offset(n + 1, p), col, l.dim(q + 1), dq) = l.d_matrix(q);
            if (p < g.top()) {
                const Dgla& l1 = *g.levels[static_cast<size_t>(p + 1)];
                if (l1.dim(q) == 0) continue;
                Mat acc = Mat::Zero(l1.dim(q), dq);
                for (int k = 0; k <= p + 1; ++k)
                    acc += Rat(sgn(k)) * g.face(k, p + 1).m.block(l1.offset(q), l.offset(q), l1.dim(q), dq);
                m.block(t.block_offset(n + 1, p + 1), col, l1.dim(q), dq) = Rat(sgn(q + 1)) * acc;
            }
        }
        diffs.push_back(m);
    }
    t.complex = ChainComplexQ(lo, dims, diffs);
    return t;
}

std::vector<std::vector<int>> multi_indices(int opens, int p) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    std::function<void(int)> rec = [&](int start) {
        if (static_cast<int>(cur.size()) == p + 1) {
            out.push_back(cur);
            return;
        }
        for (int v = start; v < opens; ++v) {
            cur.push_back(v);
            rec(v + 1);
            cur.pop_back();
        }
    };
    rec(0);
    return out;
}

CoverModel uniform_cover(int opens, int top, const DglaPtr& l) {
    CoverModel c;
    c.opens = opens;
    c.top = top;
    for (int p = 0; p <= top; ++p)
        for (const auto& j : multi_indices(opens, p)) {
            c.sections[j] = l;
            if (p == 0) continue;
            for (size_t k = 0; k < j.size(); ++k) {
                auto i = j;
                i.erase(i.begin() + static_cast<long>(k));
                c.restrictions.emplace(std::make_pair(i, j), identity_map(l));
            }
        }
    return c;
}

ScDgla cech_from_cover(const CoverModel& c) {
    if (c.opens < 1 || c.top < 0) throw std::invalid_argument("cech_from_cover: empty cover");
    std::vector<DirectSum> sums;
    ScDgla g;
    for (int p = 0; p <= c.top; ++p) {
        std::vector<DglaPtr> parts;
        std::vector<std::string> names;
        for (const auto& j : multi_indices(c.opens, p)) {
            auto it = c.sections.find(j);
            if (it == c.sections.end()) throw std::invalid_argument("cech_from_cover: missing sections on " + idx_str(j));
            parts.push_back(it->second);
            names.push_back("V" + idx_str(j));
        }
        sums.push_back(parts.empty() ? DirectSum{zero_dgla(), {}, {}} : direct_sum_of(parts, names));
        g.levels.push_back(sums.back().sum);
    }
    g.faces.resize(static_cast<size_t>(c.top + 1));
    for (int p = 1; p <= c.top; ++p) {
        const auto js = multi_indices(c.opens, p);
        const auto is = multi_indices(c.opens, p - 1);
        for (int k = 0; k <= p; ++k) {
            Mat m = Mat::Zero(g.levels[static_cast<size_t>(p)]->size(), g.levels[static_cast<size_t>(p - 1)]->size());
            for (size_t jj = 0; jj < js.size(); ++jj) {
                auto i = js[jj];
                i.erase(i.begin() + k);
                auto it = c.restrictions.find({i, js[jj]});
                if (it == c.restrictions.end())
                    throw std::invalid_argument("cech_from_cover: missing restriction " + idx_str(i) + " ⊂ " + idx_str(js[jj]));
                const size_t ii = static_cast<size_t>(std::find(is.begin(), is.end(), i) - is.begin());
                m += sums[static_cast<size_t>(p)].inclusion(jj).m * it->second.m * sums[static_cast<size_t>(p - 1)].projection(ii).m;
            }
            g.faces[static_cast<size_t>(p)].push_back(DglaMap{g.levels[static_cast<size_t>(p - 1)], g.levels[static_cast<size_t>(p)], m});
        }
    }
    return g;
}

Elem TotContext::coface(const std::vector<int>& subset, int n, const Elem& x) const {
    return apply_map(g.coface(subset, n), x, ctx[static_cast<size_t>(n)]);
}

TotPtr make_tot_context(const ScDgla& g, const ArtinPtr& a) {
    auto c = std::make_shared<TotContext>();
    c->g = g;
    c->artin = a;
    for (const auto& l : g.levels) c->ctx.push_back(a ? tensor_artin(l, a) : tensor_scalar(l));
    return c;
}

TwElem::TwElem(TotPtr ctx, int extra) : ctx_(std::move(ctx)), extra_(extra) {
    for (int n = 0; n <= ctx_->top(); ++n) levels_.emplace_back(ctx_->ctx[static_cast<size_t>(n)], n + extra);
}

bool TwElem::is_zero() const {
    return std::all_of(levels_.begin(), levels_.end(), [](const Elem& e) { return e.is_zero(); });
}

TwElem TwElem::operator+(const TwElem& o) const {
    TwElem r = *this;
    for (size_t n = 0; n < levels_.size(); ++n) r.levels_[n] += o.levels_[n];
    return r;
}

TwElem TwElem::operator-() const {
    TwElem r = *this;
    for (auto& e : r.levels_) e = -e;
    return r;
}

TwElem TwElem::operator-(const TwElem& o) const { return *this + (-o); }

TwElem operator*(const Rat& c, const TwElem& x) {
    TwElem r = x;
    for (auto& e : r.levels_) e = c * e;
    return r;
}

namespace {
template <typename F>
TwElem levelwise(const TwElem& x, int extra, F f) {
    TwElem r(x.ctx(), extra);
    for (int n = 0; n < x.levels(); ++n) r.at(n) = f(n, x.at(n));
    return r;
}
}  // namespace

TwElem bracket(const TwElem& x, const TwElem& y) {
    if (x.extra() != y.extra()) throw std::invalid_argument("bracket: path variable mismatch");
    return levelwise(x, x.extra(), [&](int n, const Elem& e) { return bracket(e, y.at(n)); });
}

TwElem differential(const TwElem& x) {
    return levelwise(x, x.extra(), [](int, const Elem& e) { return differential(e); });
}

int nilpotency(const TwElem& x) { return x.ctx()->artin ? x.ctx()->artin->nilpotency() : 0; }
int path_vars(const TwElem& x) { return x.extra(); }

TwElem add_path_vars(const TwElem& x, int k) {
    return levelwise(x, x.extra() + k, [&](int n, const Elem& e) {
        std::vector<int> map;
        for (int j = 0; j < n + x.extra(); ++j) map.push_back(j);
        return extend_vars(e, n + x.extra() + k, map);
    });
}

TwElem mul_path_var(const TwElem& x, int k) {
    return levelwise(x, x.extra(), [&](int n, const Elem& e) { return mul_var(e, n + k); });
}

TwElem subst_path_var(const TwElem& x, int k, const Rat& c) {
    return levelwise(x, x.extra() - 1, [&](int n, const Elem& e) { return substitute(e, n + k, c); });
}

TwElem form_mul(const std::vector<Form>& f, const TwElem& x) {
    return levelwise(x, x.extra(), [&](int n, const Elem& e) { return form_mul(f[static_cast<size_t>(n)], e); });
}

ValidationReport tw_compatible(const TwElem& x) {
    ValidationReport rep;
    const TotContext& c = *x.ctx();
    for (int n = 1; n < x.levels(); ++n)
        for (int k = 0; k <= n; ++k) {
            Elem lhs = pullback(x.at(n), AffineSub::face(k, n, x.extra()));
            Elem rhs = c.face(k, n, x.at(n - 1));
            if (lhs != rhs)
                rep.add("δ^{" + std::to_string(k) + "," + std::to_string(n) + "} x_" + std::to_string(n) + " = ∂_{" +
                        std::to_string(k) + "," + std::to_string(n) + "} x_" + std::to_string(n - 1) + " fails");
        }
    return rep;
}

Vec integration_map(const TwElem& x, const TotalComplex& t, int deg) {
    if (x.extra() != 0) throw std::invalid_argument("integration_map: path variables present");
    const int cd = x.ctx()->ctx[0]->coeff_dim();
    const Index dim = t.complex.dim(deg);
    Vec v = Vec::Zero(dim * cd);
    for (int p = 0; p < x.levels(); ++p) {
        const Dgla& l = *t.levels[static_cast<size_t>(p)];
        const unsigned full = (1u << p) - 1u;
        const Index off = t.block_offset(deg, p);
        for (const auto& [k, c] : x.at(p).terms()) {
            if (k.form.dmask() != full) continue;
            const int q = l.degree(k.basis);
            if (q + p != deg) throw std::invalid_argument("integration_map: element is not of the requested degree");
            const Index pos = off + (k.basis - l.offset(q));
            v(pos * cd + k.coeff) += c * simplex_monomial_integral(k.form, p);
        }
    }
    return v;
}

TwElem whitney_map(const TotPtr& ctx, const TotalComplex& t, const Vec& z, int deg) {
    TwElem out(ctx, 0);
    const int cd = ctx->ctx[0]->coeff_dim();
    for (int p = 0; p <= ctx->top(); ++p) {
        const Dgla& l = *t.levels[static_cast<size_t>(p)];
        const int q = deg - p;
        if (l.dim(q) == 0) continue;
        const Index off = t.block_offset(deg, p);
        Elem zp(ctx->ctx[static_cast<size_t>(p)], 0);
        for (Index i = 0; i < l.dim(q); ++i)
            for (int c = 0; c < cd; ++c) {
                const Rat& v = z((off + i) * cd + c);
                if (v != 0) zp.add({l.offset(q) + static_cast<int>(i), c, FormKey{}}, v);
            }
        if (zp.is_zero()) continue;
        std::vector<int> full;
        for (int i = 0; i <= p; ++i) full.push_back(i);
        // form_mul puts the form in front of z: (−1)^{pq} restores z ⊗ ω.
        const Rat eps = integrate_simplex(whitney_form(full, p)) * Rat(sgn(p * q));
        for (int n = p; n <= ctx->top(); ++n)
            for (const auto& sub : multi_indices(n + 1, p)) {
                Elem img = ctx->coface(sub, n, zp);
                Elem ext = extend_vars(img, n, {});
                out.at(n) += eps * form_mul(whitney_form(sub, n), ext);
            }
    }
    return out;
}

std::vector<Form> power_sum_family(int k, int top, int extra) {
    std::vector<Form> out;
    for (int n = 0; n <= top; ++n) {
        Form f(n + extra);
        for (int i = 0; i <= n; ++i) {
            Form b = barycentric(i, n);
            Form pw = Form::constant(n, 1);
            for (int e = 0; e < k; ++e) pw = wedge(pw, b);
            if (extra > 0) {
                AffineSub s = AffineSub::identity(n);
                s.new_vars = n + extra;
                for (auto& row : s.lin) row.resize(static_cast<size_t>(n + extra), Rat(0));
                pw = pullback(pw, s);
            }
            f = f + pw;
        }
        out.push_back(f);
    }
    return out;
}

namespace {
Vec random_total_vec(const TotalComplex& t, int deg, int cd, const ArtinPtr& a, int min_power, Rng& rng) {
    Vec v = Vec::Zero(t.complex.dim(deg) * cd);
    for (Index i = 0; i < t.complex.dim(deg); ++i)
        for (int c = 0; c < cd; ++c) {
            if (a && a->degree(c) < min_power) continue;
            if (rng.coin(40)) v(i * cd + c) = rng.small_rat();
        }
    return v;
}
}  // namespace

TwElem random_tw_elem(const TotPtr& ctx, const TotalComplex& t, int deg, Rng& rng, int maxdeg) {
    const int cd = ctx->ctx[0]->coeff_dim();
    TwElem out = whitney_map(ctx, t, random_total_vec(t, deg, cd, ctx->artin, 1, rng), deg);
    for (int k = 1; k <= maxdeg; ++k) {
        auto fam = power_sum_family(k, ctx->top());
        TwElem w = whitney_map(ctx, t, random_total_vec(t, deg, cd, ctx->artin, 1, rng), deg);
        out = out + rng.small_rat() * form_mul(fam, w);
        std::vector<Form> dfam;
        for (const auto& f : fam) dfam.push_back(d_form(f));
        TwElem w1 = whitney_map(ctx, t, random_total_vec(t, deg - 1, cd, ctx->artin, 1, rng), deg - 1);
        out = out + rng.small_rat() * form_mul(dfam, w1);
    }
    return out;
}

TwElem random_tw_mc(const TotPtr& ctx, const TotalComplex& t, Rng& rng) {
    const int cd = ctx->ctx[0]->coeff_dim();
    const int top = ctx->artin->nilpotency() - 1;
    Subspace z = kernel(t.complex.d(1));
    Vec c = Vec::Zero(t.complex.dim(1) * cd);
    for (Index j = 0; j < z.dim(); ++j)
        for (int a = 0; a < cd; ++a) {
            if (ctx->artin->degree(a) != top || !rng.coin()) continue;
            const Rat w = rng.small_rat();
            for (Index i = 0; i < z.basis.rows(); ++i) c(i * cd + a) += w * z.basis(i, j);
        }
    return gauge(random_tw_elem(ctx, t, 0, rng), whitney_map(ctx, t, c, 1));
}

TwTruncMC tw_mc_assemble(const TotContext& c, const Elem& x, const Elem& p, const Elem& r) {
    if (c.top() < 2) throw std::invalid_argument("tw_mc_assemble: needs levels 0..2");
    if (x.nvars() != 0 || p.nvars() != 1 || r.nvars() != 2) throw std::invalid_argument("tw_mc_assemble: wrong variable counts");
    if (x.ctx() != c.ctx[0] || p.ctx() != c.ctx[1] || r.ctx() != c.ctx[2])
        throw std::invalid_argument("tw_mc_assemble: components live in the wrong levels");
    return TwTruncMC{x, p, r};
}

ValidationReport tw_mc_verify(const TotContext& c, const TwTruncMC& e) {
    ValidationReport rep;
    if (!is_mc(e.x)) rep.add("x is not Maurer–Cartan");
    if (!e.p.homogeneous_of(0) || !substitute(e.p, 0, 0).is_zero() || !dpart(e.p, 1u).is_zero())
        rep.add("p(t) must lie in g_1^0[t]·t ⊗ m_A");
    if (!two_homotopy_shape_ok(e.r)) rep.add("r(t,s,ds) violates the 2-homotopy shape");
    if (!rep.ok()) return rep;
    const Elem x01 = c.face(0, 1, e.x);
    if (c.face(1, 1, e.x) != gauge(substitute(e.p, 0, 1), x01)) rep.add("condition 1: ∂_{1,1}x = e^{p(1)}*∂_{0,1}x fails");
    if (c.face(0, 2, e.p) != substitute(e.r, 0, 0)) rep.add("condition 2: ∂_{0,2}p(t) = r(0,t,dt) fails");
    if (c.face(1, 2, e.p) != substitute(e.r, 1, 0)) rep.add("condition 3: ∂_{1,2}p(t) = r(t,0,0) fails");
    AffineSub diag;
    diag.new_vars = 1;
    diag.constant = {Rat(0), Rat(1)};
    diag.lin = {{Rat(1)}, {Rat(-1)}};
    const Elem r_edge = pullback(e.r, diag);
    const Elem r01 = add_path_vars(substitute(substitute(e.r, 0, 0), 0, 1), 1);
    const Elem b = add_path_vars(c.face(2, 2, x01), 1);
    const Elem loop = bch(bch(-c.face(2, 2, e.p), r_edge), -r01);
    if (gauge(loop, b) != b)
        rep.add("condition 4: e^{(−∂_{2,2}p(t))•r(t,1−t,−dt)•(−r(0,1))}*∂_{2,2}∂_{0,1}x = ∂_{2,2}∂_{0,1}x fails");
    return rep;
}

TwElem tw_mc_element(const TotPtr& ctx, const TwTruncMC& e) {
    TwElem z(ctx, 0);
    z.at(0) = e.x;
    const Elem x01 = ctx->face(0, 1, e.x);
    z.at(1) = gauge(e.p, add_path_vars(x01, 1));
    z.at(2) = gauge(e.r, add_path_vars(ctx->face(0, 2, x01), 2));
    return z;
}

Elem totdel_cocycle(const TotContext& c, const Elem& m) {
    return bch(bch(c.face(0, 2, m), -c.face(1, 2, m)), c.face(2, 2, m));
}

Elem totdel_morphism_loop(const TotContext& c, const Elem& a, const Elem& m0, const Elem& m1) {
    return bch(bch(bch(-m0, -c.face(1, 1, a)), m1), c.face(0, 1, a));
}

ValidationReport totdel_verify(const TotContext& c, const TotDelObject& o) {
    ValidationReport rep;
    if (!is_mc(o.l)) rep.add("l is not Maurer–Cartan");
    if (!o.m.homogeneous_of(0)) rep.add("m must have degree 0");
    if (!o.u.homogeneous_of(-1)) rep.add("u must have degree −1");
    if (!rep.ok()) return rep;
    if (gauge(o.m, c.face(0, 1, o.l)) != c.face(1, 1, o.l)) rep.add("e^m*∂_{0,1}l = ∂_{1,1}l fails");
    if (c.top() >= 2) {
        const Elem b = c.face(2, 2, c.face(0, 1, o.l));
        Elem u = o.u.is_zero() ? Elem(c.ctx[2], 0) : o.u;
        if (totdel_cocycle(c, o.m) != differential(u) + bracket(b, u))
            rep.add("∂_{0,2}m•(−∂_{1,2}m)•∂_{2,2}m = du+[∂_{2,2}∂_{0,1}l,u] fails");
    }
    return rep;
}

ValidationReport totdel_verify(const TotContext& c, const TotDelMorphism& f) {
    ValidationReport rep;
    rep.merge(totdel_verify(c, f.source), "source: ");
    rep.merge(totdel_verify(c, f.target), "target: ");
    if (!rep.ok()) return rep;
    if (gauge(f.a, f.source.l) != f.target.l) rep.add("e^a*l_0 = l_1 fails");
    const Elem base = c.face(0, 1, f.source.l);
    Elem b = f.b.is_zero() ? Elem(c.ctx[1], 0) : f.b;
    if (totdel_morphism_loop(c, f.a, f.source.m, f.target.m) != differential(b) + bracket(base, b))
        rep.add("(−m_0)•(−∂_{1,1}a)•m_1•∂_{0,1}a = db+[∂_{0,1}l_0,b] fails");
    return rep;
}

TotDelMorphism totdel_identity(const TotContext& c, const TotDelObject& o) {
    return TotDelMorphism{Elem(c.ctx[0], 0), Elem(c.ctx[1], 0), o, o};
}

namespace {
TotDelMorphism with_witness(const TotContext& c, const Elem& a, const TotDelObject& s, const TotDelObject& t) {
    auto b = stabilizer_membership(totdel_morphism_loop(c, a, s.m, t.m), c.face(0, 1, s.l));
    if (!b) throw std::logic_error("totdel: no witness for the composite (internal inconsistency)");
    return TotDelMorphism{a, *b, s, t};
}
}  // namespace

TotDelMorphism totdel_compose(const TotContext& c, const TotDelMorphism& f, const TotDelMorphism& g) {
    if (g.target.l != f.source.l || g.target.m != f.source.m) throw std::invalid_argument("totdel_compose: not composable");
    return with_witness(c, bch(f.a, g.a), g.source, f.target);
}

TotDelMorphism totdel_inverse(const TotContext& c, const TotDelMorphism& f) {
    return with_witness(c, -f.a, f.target, f.source);
}

bool totdel_morphism_equal(const TotDelMorphism& f, const TotDelMorphism& g) {
    if (f.source.l != g.source.l || f.target.l != g.target.l) return false;
    return morphism_equal(f.a, g.a, f.source.l);
}

}  // namespace defo
