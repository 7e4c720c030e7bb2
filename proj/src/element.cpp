#include "defo/element.hpp"

#include <sstream>
#include <stdexcept>

namespace defo {

namespace {

int parity_sign(int e) { return (e % 2 == 0) ? 1 : -1; }

}  // namespace

std::string NilpDgla::coeff_name(int i) const { return a_ ? a_->monomial_name(i) : std::string("1"); }

NilpPtr tensor_artin(const DglaPtr& l, const ArtinPtr& a) {
    if (!a) throw std::invalid_argument("tensor_artin: missing Artin algebra");
    return std::make_shared<const NilpDgla>(l, a);
}

NilpPtr tensor_scalar(const DglaPtr& l) { return std::make_shared<const NilpDgla>(l, nullptr); }

Elem Elem::term(const NilpPtr& ctx, int nvars, int basis, int coeff, FormKey f, const Rat& c) {
    Elem e(ctx, nvars);
    e.add({basis, coeff, f}, c);
    return e;
}

Elem Elem::term(const NilpPtr& ctx, int nvars, int basis, int coeff, const Form& f) {
    if (f.nvars() != nvars) throw std::invalid_argument("Elem::term: form has the wrong variable count");
    Elem e(ctx, nvars);
    for (const auto& [k, c] : f.terms()) e.add({basis, coeff, k}, c);
    return e;
}

Elem Elem::from_vec(const NilpPtr& ctx, const Vec& v, int nvars) {
    const int cd = ctx->coeff_dim();
    if (v.size() != static_cast<Index>(ctx->dgla().size()) * cd) throw std::invalid_argument("Elem::from_vec: size mismatch");
    Elem e(ctx, nvars);
    for (Index i = 0; i < v.size(); ++i)
        if (v(i) != 0) e.add({static_cast<int>(i / cd), static_cast<int>(i % cd), FormKey{}}, v(i));
    return e;
}

void Elem::add(const TermKey& k, const Rat& c) {
    if (c == 0) return;
    auto it = terms_.find(k);
    if (it == terms_.end()) {
        terms_.emplace(k, c);
        return;
    }
    it->second += c;
    if (it->second == 0) terms_.erase(it);
}

std::optional<int> Elem::degree() const {
    std::optional<int> d;
    for (const auto& [k, c] : terms_) {
        int dk = ctx_->dgla().degree(k.basis) + k.form.form_degree();
        if (d && *d != dk) return std::nullopt;
        d = dk;
    }
    return d;
}

bool Elem::homogeneous_of(int deg) const {
    if (is_zero()) return true;
    auto d = degree();
    return d && *d == deg;
}

int Elem::poly_degree() const {
    int m = 0;
    for (const auto& [k, c] : terms_) m = std::max(m, k.form.poly_degree());
    return m;
}

Vec Elem::to_vec() const {
    const int cd = ctx_->coeff_dim();
    Vec v = Vec::Zero(static_cast<Index>(ctx_->dgla().size()) * cd);
    for (const auto& [k, c] : terms_) {
        if (k.form.raw() != 0) throw std::invalid_argument("Elem::to_vec: element is not constant");
        v(static_cast<Index>(k.basis) * cd + k.coeff) += c;
    }
    return v;
}

void Elem::check_compatible(const Elem& o) const {
    if (o.is_zero() && !o.ctx_) return;
    if (ctx_ && o.ctx_ && ctx_ != o.ctx_ &&
        (ctx_->dgla_ptr() != o.ctx_->dgla_ptr() || ctx_->artin() != o.ctx_->artin()))
        throw std::invalid_argument("Elem: operands live in different dgLas");
    if (n_ != o.n_) throw std::invalid_argument("Elem: variable count mismatch");
}

Elem& Elem::operator+=(const Elem& o) {
    if (!ctx_) {
        *this = o;
        return *this;
    }
    check_compatible(o);
    for (const auto& [k, c] : o.terms_) add(k, c);
    return *this;
}

Elem Elem::operator+(const Elem& o) const {
    Elem r = *this;
    r += o;
    return r;
}

Elem Elem::operator-() const {
    Elem r(ctx_, n_);
    for (const auto& [k, c] : terms_) r.terms_.emplace(k, -c);
    return r;
}

Elem Elem::operator-(const Elem& o) const { return *this + (-o); }

Elem operator*(const Rat& c, const Elem& x) {
    Elem r(x.ctx_, x.n_);
    if (c == 0) return r;
    for (const auto& [k, v] : x.terms_) r.terms_.emplace(k, c * v);
    return r;
}

std::string Elem::str(const std::vector<std::string>& var_names) const {
    if (terms_.empty()) return "0";
    auto nm = [&](int i) {
        if (i < static_cast<int>(var_names.size())) return var_names[static_cast<size_t>(i)];
        static const char* defaults[] = {"t", "s", "u", "v", "w", "z"};
        return std::string(defaults[i]);
    };
    std::ostringstream os;
    bool first = true;
    for (const auto& [k, c] : terms_) {
        if (!first) os << " + ";
        first = false;
        os << c << "*" << ctx_->dgla().name(k.basis);
        if (!ctx_->scalar()) os << "⊗" << ctx_->coeff_name(k.coeff);
        for (int i = 0; i < n_; ++i) {
            if (k.form.exp(i) == 0) continue;
            os << "*" << nm(i);
            if (k.form.exp(i) > 1) os << "^" << k.form.exp(i);
        }
        for (int i = 0; i < n_; ++i)
            if (k.form.has_d(i)) os << "*d" << nm(i);
    }
    return os.str();
}

Elem bracket(const Elem& x, const Elem& y) {
    if (x.is_zero()) return Elem(y.ctx(), y.nvars());
    if (y.is_zero()) return Elem(x.ctx(), x.nvars());
    if (x.nvars() != y.nvars()) throw std::invalid_argument("bracket: variable count mismatch");
    const NilpDgla& ctx = *x.ctx();
    const Dgla& L = ctx.dgla();
    Elem r(x.ctx(), x.nvars());
    for (const auto& [kx, cx] : x.terms())
        for (const auto& [ky, cy] : y.terms()) {
            const auto& br = L.bracket(kx.basis, ky.basis);
            if (br.empty()) continue;
            const int coeff = ctx.coeff_product(kx.coeff, ky.coeff);
            if (coeff < 0) continue;
            auto [s, f] = wedge_keys(kx.form, ky.form, x.nvars());
            if (s == 0) continue;
            const int sg = s * parity_sign(kx.form.form_degree() * L.degree(ky.basis));
            const Rat c = sg * cx * cy;
            for (const auto& [b, v] : br) r.add({b, coeff, f}, c * v);
        }
    return r;
}

Elem differential(const Elem& x) {
    if (x.is_zero()) return x;
    const Dgla& L = x.ctx()->dgla();
    Elem r(x.ctx(), x.nvars());
    for (const auto& [k, c] : x.terms()) {
        for (const auto& [b, v] : L.d(k.basis)) r.add({b, k.coeff, k.form}, c * v);
        Form df = d_form(Form::monomial(x.nvars(), k.form, c));
        const int sg = parity_sign(L.degree(k.basis));
        for (const auto& [f, v] : df.terms()) r.add({k.basis, k.coeff, f}, sg * v);
    }
    return r;
}

Elem form_mul(const Form& w, const Elem& x) {
    if (x.is_zero()) return x;
    if (w.nvars() != x.nvars()) throw std::invalid_argument("form_mul: variable count mismatch");
    const Dgla& L = x.ctx()->dgla();
    Elem r(x.ctx(), x.nvars());
    for (const auto& [kw, cw] : w.terms())
        for (const auto& [k, c] : x.terms()) {
            auto [s, f] = wedge_keys(kw, k.form, x.nvars());
            if (s == 0) continue;
            const int sg = s * parity_sign(kw.form_degree() * L.degree(k.basis));
            r.add({k.basis, k.coeff, f}, sg * cw * c);
        }
    return r;
}

Elem mul_var(const Elem& x, int var) { return form_mul(Form::var(x.nvars(), var), x); }

Elem pullback(const Elem& x, const AffineSub& s) {
    Elem r(x.ctx(), s.new_vars);
    std::map<FormKey, Form> cache;
    for (const auto& [k, c] : x.terms()) {
        auto it = cache.find(k.form);
        if (it == cache.end())
            it = cache.emplace(k.form, pullback(Form::monomial(x.nvars(), k.form, Rat(1)), s)).first;
        for (const auto& [f, v] : it->second.terms()) r.add({k.basis, k.coeff, f}, c * v);
    }
    return r;
}

Elem substitute(const Elem& x, int var, const Rat& c) {
    if (var < 0 || var >= x.nvars()) throw std::invalid_argument("substitute: variable out of range");
    return pullback(x, AffineSub::evaluate(x.nvars(), var, c));
}

Elem extend_vars(const Elem& x, int nvars, const std::vector<int>& map) {
    AffineSub s;
    s.new_vars = nvars;
    s.constant.assign(static_cast<size_t>(x.nvars()), Rat(0));
    s.lin.assign(static_cast<size_t>(x.nvars()), std::vector<Rat>(static_cast<size_t>(nvars), Rat(0)));
    for (int j = 0; j < x.nvars(); ++j) s.lin[static_cast<size_t>(j)][static_cast<size_t>(map.at(static_cast<size_t>(j)))] = 1;
    return pullback(x, s);
}

Elem dpart(const Elem& x, unsigned dmask) {
    Elem r(x.ctx(), x.nvars());
    for (const auto& [k, c] : x.terms())
        if (k.form.dmask() == dmask) r.add({k.basis, k.coeff, k.form.with_dmask(0)}, c);
    return r;
}

Elem attach_d(const Elem& x, unsigned dmask) {
    Elem r(x.ctx(), x.nvars());
    for (const auto& [k, c] : x.terms()) {
        if (k.form.dmask() != 0) throw std::invalid_argument("attach_d: element already carries differentials");
        r.add({k.basis, k.coeff, k.form.with_dmask(dmask)}, c);
    }
    return r;
}

Elem integrate_var(const Elem& x, int var) {
    Elem r(x.ctx(), x.nvars());
    for (const auto& [k, c] : x.terms()) {
        if (k.form.has_d(var)) throw std::invalid_argument("integrate_var: integrand carries d of the variable");
        const int e = k.form.exp(var);
        r.add({k.basis, k.coeff, k.form.with_exp(var, e + 1)}, c / (e + 1));
    }
    return r;
}

Elem apply_map(const DglaMap& f, const Elem& x, const NilpPtr& target) {
    if (f.source.get() != &x.ctx()->dgla()) throw std::invalid_argument("apply_map: source dgLa mismatch");
    if (f.target.get() != &target->dgla()) throw std::invalid_argument("apply_map: target dgLa mismatch");
    Elem r(target, x.nvars());
    std::map<int, SparseVec> cache;
    for (const auto& [k, c] : x.terms()) {
        auto it = cache.find(k.basis);
        if (it == cache.end()) it = cache.emplace(k.basis, f.image(k.basis)).first;
        for (const auto& [b, v] : it->second) r.add({b, k.coeff, k.form}, c * v);
    }
    return r;
}

Elem base_change(const ArtinMorphism& f, const Elem& x, const NilpPtr& target) {
    if (x.ctx()->artin().get() != f.source().get()) throw std::invalid_argument("base_change: element not over the source algebra");
    if (target->artin().get() != f.target().get()) throw std::invalid_argument("base_change: target context mismatch");
    Elem r(target, x.nvars());
    for (const auto& [k, c] : x.terms()) {
        const Vec& img = f.basis_image(k.coeff);
        for (Index j = 0; j < img.size(); ++j)
            if (img(j) != 0) r.add({k.basis, static_cast<int>(j), k.form}, c * img(j));
    }
    return r;
}

Elem rebase(const Elem& x, const NilpPtr& target) {
    Elem r(target, x.nvars());
    for (const auto& [k, c] : x.terms()) r.add(k, c);
    return r;
}

}  // namespace defo
