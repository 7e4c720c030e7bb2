#include "defo/forms.hpp"

#include <bit>
#include <sstream>
#include <stdexcept>

namespace defo {

FormKey FormKey::from(const std::vector<int>& exps, unsigned dmask) {
    if (exps.size() > static_cast<size_t>(kMaxVars)) throw std::invalid_argument("FormKey: too many variables");
    FormKey k;
    for (size_t i = 0; i < exps.size(); ++i) {
        if (exps[i] < 0 || exps[i] > 255) throw std::overflow_error("FormKey: exponent out of range");
        k.bits_ |= static_cast<std::uint64_t>(exps[i]) << (8 * i);
    }
    k.bits_ |= static_cast<std::uint64_t>(dmask & 0x3fu) << 48;
    return k;
}

int FormKey::form_degree() const { return std::popcount(dmask()); }

int FormKey::poly_degree() const {
    int s = 0;
    for (int i = 0; i < kMaxVars; ++i) s += exp(i);
    return s;
}

FormKey FormKey::with_exp(int i, int e) const {
    if (e < 0 || e > 255) throw std::overflow_error("FormKey: exponent out of range");
    FormKey k = *this;
    k.bits_ &= ~(static_cast<std::uint64_t>(0xffu) << (8 * i));
    k.bits_ |= static_cast<std::uint64_t>(e) << (8 * i);
    return k;
}

FormKey FormKey::with_dmask(unsigned m) const {
    FormKey k = *this;
    k.bits_ &= ~(static_cast<std::uint64_t>(0x3fu) << 48);
    k.bits_ |= static_cast<std::uint64_t>(m & 0x3fu) << 48;
    return k;
}

std::pair<int, FormKey> wedge_keys(FormKey a, FormKey b, int nvars) {
    const unsigned ma = a.dmask(), mb = b.dmask();
    if (ma & mb) return {0, FormKey{}};
    int inversions = 0;
    for (int j = 0; j < nvars; ++j)
        if ((mb >> j) & 1u) inversions += std::popcount(ma >> (j + 1));
    std::vector<int> e(static_cast<size_t>(nvars));
    for (int i = 0; i < nvars; ++i) e[static_cast<size_t>(i)] = a.exp(i) + b.exp(i);
    return {(inversions % 2) ? -1 : 1, FormKey::from(e, ma | mb)};
}

AffineSub AffineSub::identity(int n) {
    AffineSub s;
    s.new_vars = n;
    s.constant.assign(static_cast<size_t>(n), Rat(0));
    s.lin.assign(static_cast<size_t>(n), std::vector<Rat>(static_cast<size_t>(n), Rat(0)));
    for (int i = 0; i < n; ++i) s.lin[static_cast<size_t>(i)][static_cast<size_t>(i)] = 1;
    return s;
}

AffineSub AffineSub::evaluate(int n, int var, const Rat& c) {
    AffineSub s;
    s.new_vars = n - 1;
    s.constant.assign(static_cast<size_t>(n), Rat(0));
    s.lin.assign(static_cast<size_t>(n), std::vector<Rat>(static_cast<size_t>(n - 1), Rat(0)));
    for (int j = 0; j < n; ++j) {
        if (j == var) s.constant[static_cast<size_t>(j)] = c;
        else s.lin[static_cast<size_t>(j)][static_cast<size_t>(j < var ? j : j - 1)] = 1;
    }
    return s;
}

AffineSub AffineSub::face(int k, int n, int extra) {
    if (k < 0 || k > n || n < 1) throw std::invalid_argument("face_map: index out of range");
    AffineSub s;
    const int old_n = n + extra, new_n = n - 1 + extra;
    s.new_vars = new_n;
    s.constant.assign(static_cast<size_t>(old_n), Rat(0));
    s.lin.assign(static_cast<size_t>(old_n), std::vector<Rat>(static_cast<size_t>(new_n), Rat(0)));
    for (int j = 0; j < n; ++j) {
        auto& row = s.lin[static_cast<size_t>(j)];
        if (k == n) {
            if (j < n - 1) row[static_cast<size_t>(j)] = 1;
            else {
                s.constant[static_cast<size_t>(j)] = 1;
                for (int i = 0; i < n - 1; ++i) row[static_cast<size_t>(i)] = -1;
            }
        } else if (j < k) {
            row[static_cast<size_t>(j)] = 1;
        } else if (j > k) {
            row[static_cast<size_t>(j - 1)] = 1;
        }
    }
    for (int e = 0; e < extra; ++e) s.lin[static_cast<size_t>(n + e)][static_cast<size_t>(n - 1 + e)] = 1;
    return s;
}

Form Form::constant(int nvars, const Rat& c) {
    Form f(nvars);
    f.add(FormKey{}, c);
    return f;
}

Form Form::var(int nvars, int i) {
    Form f(nvars);
    f.add(FormKey{}.with_exp(i, 1), Rat(1));
    return f;
}

Form Form::dvar(int nvars, int i) {
    Form f(nvars);
    f.add(FormKey{}.with_dmask(1u << i), Rat(1));
    return f;
}

Form Form::monomial(int nvars, FormKey k, const Rat& c) {
    Form f(nvars);
    f.add(k, c);
    return f;
}

void Form::add(FormKey k, const Rat& c) {
    if (c == 0) return;
    auto it = terms_.find(k);
    if (it == terms_.end()) {
        terms_.emplace(k, c);
        return;
    }
    it->second += c;
    if (it->second == 0) terms_.erase(it);
}

Form Form::operator+(const Form& o) const {
    if (o.n_ != n_) throw std::invalid_argument("Form: variable count mismatch");
    Form r = *this;
    for (const auto& [k, c] : o.terms_) r.add(k, c);
    return r;
}

Form Form::operator-() const {
    Form r(n_);
    for (const auto& [k, c] : terms_) r.terms_.emplace(k, -c);
    return r;
}

Form Form::operator-(const Form& o) const { return *this + (-o); }

Form operator*(const Rat& c, const Form& f) {
    Form r(f.n_);
    if (c == 0) return r;
    for (const auto& [k, v] : f.terms_) r.terms_.emplace(k, c * v);
    return r;
}

std::string Form::str(const std::vector<std::string>& names) const {
    if (terms_.empty()) return "0";
    auto nm = [&](int i) {
        if (i < static_cast<int>(names.size())) return names[static_cast<size_t>(i)];
        return "t" + std::to_string(i);
    };
    std::ostringstream os;
    bool first = true;
    for (const auto& [k, c] : terms_) {
        if (!first) os << " + ";
        first = false;
        os << c;
        for (int i = 0; i < n_; ++i) {
            if (k.exp(i) == 0) continue;
            os << "*" << nm(i);
            if (k.exp(i) > 1) os << "^" << k.exp(i);
        }
        for (int i = 0; i < n_; ++i)
            if (k.has_d(i)) os << "*d" << nm(i);
    }
    return os.str();
}

Form d_form(const Form& w) {
    Form r(w.nvars());
    for (const auto& [k, c] : w.terms()) {
        const unsigned m = k.dmask();
        for (int i = 0; i < w.nvars(); ++i) {
            const int e = k.exp(i);
            if (e == 0 || ((m >> i) & 1u)) continue;
            const int before = std::popcount(m & ((1u << i) - 1u));
            const Rat coeff = (before % 2 ? -1 : 1) * c * e;
            r.add(k.with_exp(i, e - 1).with_dmask(m | (1u << i)), coeff);
        }
    }
    return r;
}

Form wedge(const Form& a, const Form& b) {
    if (a.nvars() != b.nvars()) throw std::invalid_argument("wedge: variable count mismatch");
    Form r(a.nvars());
    for (const auto& [ka, ca] : a.terms())
        for (const auto& [kb, cb] : b.terms()) {
            auto [s, k] = wedge_keys(ka, kb, a.nvars());
            if (s != 0) r.add(k, s * ca * cb);
        }
    return r;
}

Form pullback(const Form& w, const AffineSub& s) {
    const int n = w.nvars();
    if (static_cast<int>(s.constant.size()) != n) throw std::invalid_argument("pullback: substitution arity mismatch");
    const int m = s.new_vars;
    std::vector<Form> img(static_cast<size_t>(n), Form(m)), dimg(static_cast<size_t>(n), Form(m));
    for (int j = 0; j < n; ++j) {
        img[static_cast<size_t>(j)] = Form::constant(m, s.constant[static_cast<size_t>(j)]);
        for (int k = 0; k < m; ++k) {
            const Rat& a = s.lin[static_cast<size_t>(j)][static_cast<size_t>(k)];
            if (a == 0) continue;
            img[static_cast<size_t>(j)] = img[static_cast<size_t>(j)] + a * Form::var(m, k);
            dimg[static_cast<size_t>(j)] = dimg[static_cast<size_t>(j)] + a * Form::dvar(m, k);
        }
    }
    std::vector<std::vector<Form>> powers(static_cast<size_t>(n));
    auto power = [&](int j, int e) -> const Form& {
        auto& p = powers[static_cast<size_t>(j)];
        if (p.empty()) p.push_back(Form::constant(m, Rat(1)));
        while (static_cast<int>(p.size()) <= e) p.push_back(wedge(p.back(), img[static_cast<size_t>(j)]));
        return p[static_cast<size_t>(e)];
    };
    Form r(m);
    for (const auto& [k, c] : w.terms()) {
        Form term = Form::constant(m, c);
        for (int j = 0; j < n && !term.is_zero(); ++j)
            if (k.exp(j)) term = wedge(term, power(j, k.exp(j)));
        for (int j = 0; j < n && !term.is_zero(); ++j)
            if (k.has_d(j)) term = wedge(term, dimg[static_cast<size_t>(j)]);
        r = r + term;
    }
    return r;
}

Form face_map(int k, int n, const Form& w) {
    if (w.nvars() != n) throw std::invalid_argument("face_map: form is not on Δ^" + std::to_string(n));
    return pullback(w, AffineSub::face(k, n));
}

Rat simplex_monomial_integral(FormKey k, int n) {
    boost::multiprecision::mpz_int num = 1, den = 1;
    int total = n;
    for (int i = 0; i < n; ++i) {
        for (int f = 2; f <= k.exp(i); ++f) num *= f;
        total += k.exp(i);
    }
    for (int f = 2; f <= total; ++f) den *= f;
    return Rat(num, den);
}

Rat integrate_simplex(const Form& w) {
    const int n = w.nvars();
    const unsigned top = (1u << n) - 1u;
    Rat acc = 0;
    for (const auto& [k, c] : w.terms()) {
        if (k.dmask() != top) throw std::invalid_argument("integrate_simplex: form is not of top degree " + std::to_string(n));
        acc += c * simplex_monomial_integral(k, n);
    }
    return acc;
}

Form barycentric(int i, int n) {
    if (i < n) return Form::var(n, i);
    Form f = Form::constant(n, Rat(1));
    for (int j = 0; j < n; ++j) f = f - Form::var(n, j);
    return f;
}

Form d_barycentric(int i, int n) { return d_form(barycentric(i, n)); }

Form whitney_form(const std::vector<int>& subset, int n) {
    if (subset.empty()) throw std::invalid_argument("whitney_form: empty subset");
    for (size_t a = 0; a < subset.size(); ++a) {
        if (subset[a] < 0 || subset[a] > n) throw std::invalid_argument("whitney_form: vertex out of range");
        if (a && subset[a] <= subset[a - 1]) throw std::invalid_argument("whitney_form: subset must be increasing");
    }
    const int k = static_cast<int>(subset.size()) - 1;
    Rat fact = 1;
    for (int f = 2; f <= k; ++f) fact *= f;
    Form acc(n);
    for (int j = 0; j <= k; ++j) {
        Form term = barycentric(subset[static_cast<size_t>(j)], n);
        for (int l = 0; l <= k; ++l)
            if (l != j) term = wedge(term, d_barycentric(subset[static_cast<size_t>(l)], n));
        acc = acc + Rat(j % 2 ? -1 : 1) * term;
    }
    return fact * acc;
}

}  // namespace defo
