#include "defo/artin.hpp"

#include <algorithm>
#include <functional>
#include <sstream>
#include <stdexcept>

namespace defo {

namespace {

bool divides(const Monomial& g, const Monomial& m) {
    for (size_t i = 0; i < g.size(); ++i)
        if (g[i] > m[i]) return false;
    return true;
}

int total(const Monomial& m) {
    int s = 0;
    for (int e : m) s += e;
    return s;
}

}  // namespace

ArtinAlgebra::ArtinAlgebra(int r, std::vector<Monomial> ideal) : r_(r), ideal_(std::move(ideal)) {
    if (r < 0) throw std::invalid_argument("make_artin: negative variable count");
    for (const auto& g : ideal_) {
        if (static_cast<int>(g.size()) != r) throw std::invalid_argument("make_artin: monomial arity mismatch");
        if (total(g) == 0) throw std::invalid_argument("make_artin: ideal contains 1, A is not local");
    }
    std::vector<int> bound(static_cast<size_t>(r), -1);
    for (const auto& g : ideal_) {
        int nz = -1, cnt = 0;
        for (int i = 0; i < r; ++i)
            if (g[static_cast<size_t>(i)] > 0) { nz = i; ++cnt; }
        if (cnt == 1) {
            int& b = bound[static_cast<size_t>(nz)];
            if (b < 0 || g[static_cast<size_t>(nz)] < b) b = g[static_cast<size_t>(nz)];
        }
    }
    for (int i = 0; i < r; ++i)
        if (bound[static_cast<size_t>(i)] < 0)
            throw std::invalid_argument("make_artin: ideal is not cofinite (no power of x" + std::to_string(i + 1) +
                                        " in the ideal)");
    Monomial cur(static_cast<size_t>(r), 0);
    std::function<void(int)> rec = [&](int v) {
        if (v == r) {
            if (total(cur) == 0) return;
            for (const auto& g : ideal_)
                if (divides(g, cur)) return;
            basis_.push_back(cur);
            return;
        }
        for (int e = 0; e < bound[static_cast<size_t>(v)]; ++e) {
            cur[static_cast<size_t>(v)] = e;
            rec(v + 1);
        }
        cur[static_cast<size_t>(v)] = 0;
    };
    rec(0);
    std::sort(basis_.begin(), basis_.end(), [](const Monomial& a, const Monomial& b) {
        int ta = total(a), tb = total(b);
        if (ta != tb) return ta < tb;
        return a > b;
    });
    const size_t n = basis_.size();
    table_.assign(n, std::vector<int>(n, -1));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) {
            Monomial m(static_cast<size_t>(r));
            for (int v = 0; v < r; ++v) m[static_cast<size_t>(v)] = basis_[i][static_cast<size_t>(v)] + basis_[j][static_cast<size_t>(v)];
            table_[i][j] = index_of(m);
        }
    nu_ = 1;
    for (const auto& b : basis_) nu_ = std::max(nu_, total(b) + 1);
}

int ArtinAlgebra::index_of(const Monomial& m) const {
    for (size_t k = 0; k < basis_.size(); ++k)
        if (basis_[k] == m) return static_cast<int>(k);
    return -1;
}

int ArtinAlgebra::generator(int i) const {
    Monomial m(static_cast<size_t>(r_), 0);
    m[static_cast<size_t>(i)] = 1;
    return index_of(m);
}

int ArtinAlgebra::degree(int i) const { return total(basis_[static_cast<size_t>(i)]); }

std::string ArtinAlgebra::monomial_name(int i) const {
    std::ostringstream os;
    bool first = true;
    const auto& m = basis_[static_cast<size_t>(i)];
    for (int v = 0; v < r_; ++v) {
        int e = m[static_cast<size_t>(v)];
        if (e == 0) continue;
        if (!first) os << "*";
        first = false;
        os << "x" << (v + 1);
        if (e > 1) os << "^" << e;
    }
    return os.str();
}

std::string ArtinAlgebra::describe() const {
    std::ostringstream os;
    os << "Q[";
    for (int v = 0; v < r_; ++v) os << (v ? "," : "") << "x" << (v + 1);
    os << "]/(";
    for (size_t k = 0; k < ideal_.size(); ++k) {
        if (k) os << ",";
        bool first = true;
        for (int v = 0; v < r_; ++v) {
            int e = ideal_[k][static_cast<size_t>(v)];
            if (e == 0) continue;
            if (!first) os << "*";
            first = false;
            os << "x" << (v + 1);
            if (e > 1) os << "^" << e;
        }
    }
    os << ")";
    return os.str();
}

ArtinPtr make_artin(int r, const std::vector<Monomial>& ideal) {
    return std::make_shared<const ArtinAlgebra>(r, ideal);
}

Monomial parse_monomial(const std::string& s, int r) {
    Monomial m(static_cast<size_t>(r), 0);
    std::stringstream ss(s);
    std::string factor;
    while (std::getline(ss, factor, '*')) {
        factor.erase(std::remove(factor.begin(), factor.end(), ' '), factor.end());
        if (factor.empty()) throw std::invalid_argument("empty factor in monomial '" + s + "'");
        int e = 1;
        auto caret = factor.find('^');
        std::string var = factor.substr(0, caret);
        if (caret != std::string::npos) e = std::stoi(factor.substr(caret + 1));
        int idx = -1;
        if (var == "x" || var == "t" || var == "e" || var == "eps") idx = 0;
        else if (var == "y" || var == "s") idx = 1;
        else if (var == "z") idx = 2;
        else if (var.size() > 1 && var[0] == 'x') idx = std::stoi(var.substr(1)) - 1;
        if (idx < 0 || idx >= r) throw std::invalid_argument("unknown variable '" + var + "' in monomial '" + s + "'");
        m[static_cast<size_t>(idx)] += e;
    }
    return m;
}

ArtinPtr artin_from_name(const std::string& name) {
    if (name == "eps2") return make_artin(1, {{2}});
    if (name.size() > 1 && name[0] == 't' && name.find_first_not_of("0123456789", 1) == std::string::npos) {
        const int k = std::stoi(name.substr(1));
        if (k < 2) throw std::invalid_argument("bad Artin algebra name '" + name + "'");
        return make_artin(1, {{k}});
    }
    if (name == "xy2") return make_artin(2, {{2, 0}, {1, 1}, {0, 2}});
    if (name.size() > 1 && name[0] == 'm') {
        auto caret = name.find('^');
        if (caret != std::string::npos) {
            int r = std::stoi(name.substr(1, caret - 1));
            int k = std::stoi(name.substr(caret + 1));
            if (r < 1 || k < 1) throw std::invalid_argument("bad Artin algebra name '" + name + "'");
            std::vector<Monomial> gens;
            Monomial cur(static_cast<size_t>(r), 0);
            std::function<void(int, int)> rec = [&](int v, int left) {
                if (v == r - 1) {
                    cur[static_cast<size_t>(v)] = left;
                    gens.push_back(cur);
                    return;
                }
                for (int e = left; e >= 0; --e) {
                    cur[static_cast<size_t>(v)] = e;
                    rec(v + 1, left - e);
                }
            };
            rec(0, k);
            return make_artin(r, gens);
        }
    }
    throw std::invalid_argument("unknown Artin algebra '" + name + "'");
}

Vec multiply(const ArtinAlgebra& a, const Vec& u, const Vec& v) {
    if (u.size() != a.dim() || v.size() != a.dim()) throw std::invalid_argument("multiply: size mismatch");
    Vec out = Vec::Zero(a.dim());
    for (Index i = 0; i < a.dim(); ++i) {
        if (u(i) == 0) continue;
        for (Index j = 0; j < a.dim(); ++j) {
            if (v(j) == 0) continue;
            int k = a.product(static_cast<int>(i), static_cast<int>(j));
            if (k >= 0) out(k) += u(i) * v(j);
        }
    }
    return out;
}

ArtinMorphism::ArtinMorphism(ArtinPtr source, ArtinPtr target, std::vector<Vec> images)
    : src_(std::move(source)), tgt_(std::move(target)), images_(std::move(images)) {
    if (static_cast<int>(images_.size()) != src_->vars())
        throw std::invalid_argument("ArtinMorphism: one image per source generator required");
    for (const auto& im : images_)
        if (im.size() != tgt_->dim()) throw std::invalid_argument("ArtinMorphism: image not an m-element of target");
    auto power = [&](const Monomial& m) {
        // Product of images; the unit is tracked separately since images lie in m.
        Vec acc;
        bool have = false;
        for (int v = 0; v < src_->vars(); ++v)
            for (int e = 0; e < m[static_cast<size_t>(v)]; ++e) {
                acc = have ? multiply(*tgt_, acc, images_[static_cast<size_t>(v)]) : images_[static_cast<size_t>(v)];
                have = true;
            }
        return acc;
    };
    for (size_t k = 0; k < src_->ideal().size(); ++k)
        if (!is_zero(power(src_->ideal()[k])))
            throw std::invalid_argument("ArtinMorphism: relation " + std::to_string(k) + " of the source is not respected");
    for (const auto& b : src_->basis()) basis_images_.push_back(power(b));
}

Vec ArtinMorphism::apply(const Vec& u) const {
    if (u.size() != src_->dim()) throw std::invalid_argument("base_change: element not over the source");
    Vec out = Vec::Zero(tgt_->dim());
    for (Index i = 0; i < u.size(); ++i)
        if (u(i) != 0) out += u(i) * basis_images_[static_cast<size_t>(i)];
    return out;
}

ArtinMorphism compose(const ArtinMorphism& f, const ArtinMorphism& g) {
    if (g.target().get() != f.source().get() && g.target()->describe() != f.source()->describe())
        throw std::invalid_argument("compose: Artin morphisms not composable");
    std::vector<Vec> imgs;
    for (const auto& im : g.images()) imgs.push_back(f.apply(im));
    return ArtinMorphism(g.source(), f.target(), imgs);
}

ArtinMorphism identity_morphism(const ArtinPtr& a) {
    std::vector<Vec> imgs;
    for (int v = 0; v < a->vars(); ++v) {
        Vec e = Vec::Zero(a->dim());
        int g = a->generator(v);
        if (g >= 0) e(g) = 1;
        imgs.push_back(e);
    }
    return ArtinMorphism(a, a, imgs);
}

}  // namespace defo
