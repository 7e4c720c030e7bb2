#include "defo/mc.hpp"

#include <mutex>

namespace defo {

namespace {

using Word = std::pair<int, unsigned>;
using FreePoly = std::map<Word, Rat>;

FreePoly free_mul(const FreePoly& x, const FreePoly& y, int order) {
    FreePoly r;
    for (const auto& [wx, cx] : x)
        for (const auto& [wy, cy] : y) {
            if (wx.first + wy.first > order) continue;
            Word w{wx.first + wy.first, wx.second | (wy.second << wx.first)};
            r[w] += cx * cy;
        }
    for (auto it = r.begin(); it != r.end();) it = (it->second == 0) ? r.erase(it) : std::next(it);
    return r;
}

std::vector<std::pair<BchWord, Rat>> compute_bch(int order) {
    // Z = e^a e^b − 1 truncated at `order`.
    FreePoly z;
    Rat fi = 1;
    for (int i = 0; i <= order; ++i) {
        if (i > 0) fi *= i;
        Rat fj = 1;
        for (int j = 0; i + j <= order; ++j) {
            if (j > 0) fj *= j;
            if (i + j == 0) continue;
            unsigned bits = ((1u << j) - 1u) << i;
            z[{i + j, bits}] += Rat(1) / (fi * fj);
        }
    }
    FreePoly log, power = z;
    for (int k = 1; k <= order; ++k) {
        const Rat c = Rat((k % 2) ? 1 : -1, k);
        for (const auto& [w, v] : power) log[w] += c * v;
        power = free_mul(power, z, order);
    }
    std::vector<std::pair<BchWord, Rat>> out;
    for (const auto& [w, v] : log)
        if (v != 0) out.push_back({BchWord{w.first, w.second}, v / w.first});
    return out;
}

}  // namespace

const std::vector<std::pair<BchWord, Rat>>& bch_coefficients(int order) {
    static std::mutex mu;
    static std::map<int, std::vector<std::pair<BchWord, Rat>>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(order);
    if (it == cache.end()) it = cache.emplace(order, compute_bch(std::max(order, 1))).first;
    return it->second;
}

std::vector<Elem> degree_basis(const NilpPtr& ctx, int deg, int nvars) {
    std::vector<Elem> out;
    const Dgla& L = ctx->dgla();
    for (int b = L.offset(deg); b < L.offset(deg) + L.dim(deg); ++b)
        for (int c = 0; c < ctx->coeff_dim(); ++c) out.push_back(Elem::term(ctx, nvars, b, c, FormKey{}, Rat(1)));
    return out;
}

namespace {

std::optional<Elem> solve_in_span(const std::vector<Elem>& basis, const std::vector<Elem>& images, const Elem& target) {
    const Index n = static_cast<Index>(target.ctx()->dgla().size()) * target.ctx()->coeff_dim();
    Mat m = Mat::Zero(n, static_cast<Index>(images.size()));
    for (size_t j = 0; j < images.size(); ++j) {
        if (images[j].is_zero()) continue;
        m.col(static_cast<Index>(j)) = images[j].to_vec();
    }
    Vec rhs = target.is_zero() ? Vec(Vec::Zero(n)) : target.to_vec();
    auto sol = solve(m, rhs);
    if (!sol) return std::nullopt;
    Elem u(target.ctx(), 0);
    for (size_t j = 0; j < basis.size(); ++j) u += sol->particular(static_cast<Index>(j)) * basis[j];
    return u;
}

void require_constant(const Elem& x, const char* who) {
    if (x.nvars() != 0) throw std::invalid_argument(std::string(who) + ": expected a constant element");
}

}  // namespace

std::optional<Elem> stabilizer_membership(const Elem& b, const Elem& x) {
    require_constant(b, "stabilizer_membership");
    require_constant(x, "stabilizer_membership");
    if (!b.homogeneous_of(0)) throw std::invalid_argument("stabilizer_membership: b must have degree 0");
    const NilpPtr& ctx = x.ctx() ? x.ctx() : b.ctx();
    auto basis = degree_basis(ctx, -1);
    std::vector<Elem> images;
    images.reserve(basis.size());
    for (const auto& e : basis) images.push_back(differential(e) + bracket(x, e));
    Elem target = b.is_zero() ? Elem(ctx, 0) : b;
    return solve_in_span(basis, images, target);
}

bool gauge_witness_valid(const GaugeWitness& w) { return gauge(w.a, w.source) == w.target; }

bool morphism_equal(const Elem& a, const Elem& b, const Elem& x) {
    return stabilizer_membership(bch(-a, b), x).has_value();
}

Elem homotopy_path(const Homotopy& h) { return gauge(h.p, add_path_vars(h.x, 1)); }

Elem two_homotopy_surface(const TwoHomotopy& r) { return gauge(r.r, add_path_vars(r.x, 2)); }

Homotopy homotopy_from_gauge(const Elem& a, const Elem& x) {
    return Homotopy{mul_var(add_path_vars(a, 1), 0), x};
}

GaugeWitness gauge_from_homotopy(const Homotopy& h) {
    if (!substitute(h.p, 0, 0).is_zero()) throw std::invalid_argument("gauge_from_homotopy: p(0) != 0");
    Elem a = substitute(h.p, 0, 1);
    return GaugeWitness{a, h.x, gauge(a, h.x)};
}

Homotopy decompose_1var(const Elem& xi) {
    if (xi.nvars() != 1) throw std::invalid_argument("decompose_1var: expected one variable");
    if (!xi.homogeneous_of(1)) throw std::invalid_argument("decompose_1var: expected degree 1");
    if (!is_mc(xi)) throw std::invalid_argument("decompose_1var: input is not Maurer-Cartan");
    Elem x = substitute(xi, 0, 0);
    Elem x1 = add_path_vars(x, 1);
    Elem p(xi.ctx(), 1);
    const int cap = nilpotency(xi) + 2;
    for (int iter = 0; iter <= cap; ++iter) {
        Elem rho = xi - gauge(p, x1);
        if (rho.is_zero()) return Homotopy{p, x};
        p = p - integrate_var(dpart(rho, 1u), 0);
    }
    throw std::logic_error("decompose_1var: residual did not vanish");
}

TwoHomotopy decompose_2var(const Elem& xi) {
    if (xi.nvars() != 2) throw std::invalid_argument("decompose_2var: expected two variables");
    if (!xi.homogeneous_of(1)) throw std::invalid_argument("decompose_2var: expected degree 1");
    if (!is_mc(xi)) throw std::invalid_argument("decompose_2var: input is not Maurer-Cartan");
    Elem x = substitute(substitute(xi, 1, 0), 0, 0);
    Elem x2 = add_path_vars(x, 2);
    Elem r(xi.ctx(), 2);
    const int cap = 2 * nilpotency(xi) + 2;
    for (int iter = 0; iter <= cap; ++iter) {
        Elem rho = xi - gauge(r, x2);
        if (rho.is_zero()) return TwoHomotopy{r, x};
        Elem rs0 = substitute(dpart(rho, 2u), 0, 0);  // in the single variable s
        Elem along_s = extend_vars(integrate_var(rs0, 0), 2, {1});
        Elem along_t = integrate_var(dpart(rho, 1u), 0);
        Elem area = attach_d(integrate_var(dpart(rho, 3u), 0), 2u);
        r = r - along_s - along_t + area;
    }
    throw std::logic_error("decompose_2var: residual did not vanish");
}

bool two_homotopy_shape_ok(const Elem& r) {
    if (r.nvars() != 2) return false;
    if (r.is_zero()) return true;
    const Dgla& L = r.ctx()->dgla();
    for (const auto& [k, c] : r.terms()) {
        const int deg = L.degree(k.basis);
        const unsigned dm = k.form.dmask();
        if (dm == 0) {
            if (deg != 0 || k.form.poly_degree() == 0) return false;
        } else if (dm == 2u) {
            if (deg != -1 || k.form.exp(0) == 0) return false;
        } else {
            return false;
        }
    }
    return true;
}

ValidationReport two_homotopy_verify(const TwoHomotopy& r, const Homotopy& p, const Homotopy& q, const Elem& x,
                                     const Elem& y) {
    ValidationReport rep;
    if (!two_homotopy_shape_ok(r.r)) rep.add("shape: r ∈ L⁰[t,s]·(t,s) + L^{-1}[t,s]·t ds violated");
    if (r.x != p.x || p.x != x) rep.add("base: R, P and x must share the base point");
    Elem surf = two_homotopy_surface(r);
    if (subst_path_var(surf, 1, 0) != homotopy_path(p)) rep.add("R(t,0,dt,0) = P(t,dt) fails");
    if (subst_path_var(surf, 1, 1) != homotopy_path(q)) rep.add("R(t,1,dt,0) = Q(t,dt) fails");
    if (subst_path_var(surf, 0, 0) != add_path_vars(x, 1)) rep.add("R(0,s,0,ds) = x fails");
    if (subst_path_var(surf, 0, 1) != add_path_vars(y, 1)) rep.add("R(1,s,0,ds) = y fails");
    return rep;
}

namespace {
Elem as_t_of_2(const Elem& p) { return extend_vars(p, 2, {0}); }
}  // namespace

TwoHomotopy two_homotopy_reflexive(const Homotopy& p) { return TwoHomotopy{as_t_of_2(p.p), p.x}; }

TwoHomotopy two_homotopy_standardize(const Homotopy& p) {
    Elem pt = as_t_of_2(p.p);
    Elem p1 = add_path_vars(substitute(p.p, 0, 1), 2);
    return TwoHomotopy{mul_var(mul_var(p1, 0), 1) + pt - mul_var(pt, 1), p.x};
}

TwoHomotopy two_homotopy_invert(const TwoHomotopy& r, const Homotopy& p, const Homotopy& q) {
    return TwoHomotopy{bch(bch(as_t_of_2(q.p), -r.r), as_t_of_2(p.p)), r.x};
}

TwoHomotopy two_homotopy_compose(const TwoHomotopy& r, const TwoHomotopy& r2, const Homotopy& q) {
    if (r.x != r2.x) throw std::invalid_argument("two_homotopy_compose: base points differ");
    return TwoHomotopy{bch(bch(r2.r, -as_t_of_2(q.p)), r.r), r.x};
}

TwoHomotopy two_homotopy_product(const TwoHomotopy& r2, const TwoHomotopy& r) {
    Elem y = substitute(substitute(two_homotopy_surface(r), 1, 0), 0, 1);
    if (y != r2.x) throw std::invalid_argument("two_homotopy_product: surfaces are not composable");
    return TwoHomotopy{bch(r2.r, r.r), r.x};
}

Elem extract_irrelevant(const Elem& p, const Elem& xpath) {
    if (p.nvars() != 1 || xpath.nvars() != 1) throw std::invalid_argument("extract_irrelevant: expected paths in one variable");
    if (!substitute(p, 0, 0).is_zero()) throw std::invalid_argument("extract_irrelevant: p(0) != 0");
    if (gauge(p, xpath) != xpath) throw std::invalid_argument("extract_irrelevant: p does not fix the path");
    auto u = stabilizer_membership(substitute(p, 0, 1), substitute(xpath, 0, 1));
    if (!u) throw std::logic_error("extract_irrelevant: linear system inconsistent");
    return *u;
}

Elem irrelevant_from_two_homotopy(const TwoHomotopy& r, const Elem& a) {
    Elem edge = substitute(r.r, 0, 1);  // r(1,s,ds)
    Elem mu = bch(-add_path_vars(a, 1), edge);
    return extract_irrelevant(mu, add_path_vars(r.x, 1));
}

std::optional<Elem> orbit_decide_square_zero(const Elem& x, const Elem& y) {
    require_constant(x, "orbit_decide_square_zero");
    require_constant(y, "orbit_decide_square_zero");
    const NilpPtr& ctx = x.ctx();
    if (!ctx->artin() || !ctx->artin()->square_zero())
        throw std::invalid_argument("orbit_decide_square_zero: requires m_A^2 = 0");
    auto basis = degree_basis(ctx, 0);
    std::vector<Elem> images;
    for (const auto& e : basis) images.push_back(-differential(e));
    return solve_in_span(basis, images, y - x);
}

}  // namespace defo
