#include "defo/dgla.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>
#include <tuple>

namespace defo {

namespace {

int sign(int e) { return (e % 2 == 0) ? 1 : -1; }

void normalize(SparseVec& v) {
    std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    SparseVec out;
    for (auto& [k, c] : v) {
        if (!out.empty() && out.back().first == k) out.back().second += c;
        else out.emplace_back(k, c);
    }
    out.erase(std::remove_if(out.begin(), out.end(), [](const auto& p) { return p.second == 0; }), out.end());
    v = std::move(out);
}

Vec to_dense(const SparseVec& s, int n) {
    Vec v = Vec::Zero(n);
    for (const auto& [k, c] : s) v(k) += c;
    return v;
}

std::string fmt_vec(const Dgla& l, const Vec& v) {
    std::ostringstream os;
    bool first = true;
    for (int i = 0; i < l.size(); ++i) {
        if (v(i) == 0) continue;
        if (!first) os << " + ";
        first = false;
        os << v(i) << "*" << l.name(i);
    }
    if (first) os << "0";
    return os.str();
}

}  // namespace

void ValidationReport::merge(const ValidationReport& o, const std::string& prefix) {
    for (const auto& v : o.violations) violations.push_back(prefix + v);
}

Dgla::Dgla(std::vector<Basis> basis, std::vector<SparseVec> diff, std::vector<SparseVec> bracket)
    : basis_(std::move(basis)), diff_(std::move(diff)), bracket_(std::move(bracket)) {
    const size_t n = basis_.size();
    for (size_t i = 1; i < n; ++i)
        if (basis_[i].degree < basis_[i - 1].degree)
            throw std::invalid_argument("Dgla: basis must be sorted by degree");
    if (diff_.size() != n) throw std::invalid_argument("Dgla: one differential entry per basis vector required");
    if (bracket_.size() != n * n) throw std::invalid_argument("Dgla: bracket table must be n x n");
    for (auto& v : diff_) normalize(v);
    for (auto& v : bracket_) normalize(v);
    if (n > 0) {
        lo_ = basis_.front().degree;
        hi_ = basis_.back().degree;
    }
    offsets_.assign(static_cast<size_t>(std::max(0, hi_ - lo_ + 2)), 0);
    for (int k = lo_; k <= hi_ + 1; ++k) {
        int off = 0;
        while (off < static_cast<int>(n) && basis_[static_cast<size_t>(off)].degree < k) ++off;
        offsets_[static_cast<size_t>(k - lo_)] = off;
    }
    for (size_t i = 0; i < n; ++i)
        for (const auto& [k, c] : diff_[i])
            if (k < 0 || k >= static_cast<int>(n) || basis_[static_cast<size_t>(k)].degree != basis_[i].degree + 1)
                throw std::invalid_argument("Dgla: d(" + basis_[i].name + ") is not of degree +1");
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j)
            for (const auto& [k, c] : bracket_[i * n + j])
                if (k < 0 || k >= static_cast<int>(n) ||
                    basis_[static_cast<size_t>(k)].degree != basis_[i].degree + basis_[j].degree)
                    throw std::invalid_argument("Dgla: [" + basis_[i].name + "," + basis_[j].name +
                                                "] has a component of the wrong degree");
}

int Dgla::index_of(const std::string& nm) const {
    for (size_t i = 0; i < basis_.size(); ++i)
        if (basis_[i].name == nm) return static_cast<int>(i);
    return -1;
}

int Dgla::offset(int k) const {
    if (k < lo_) return 0;
    if (k > hi_) return size();
    return offsets_[static_cast<size_t>(k - lo_)];
}

Index Dgla::dim(int k) const {
    if (k < lo_ || k > hi_) return 0;
    return offset(k + 1) - offset(k);
}

Mat Dgla::d_matrix(int k) const {
    Mat m = Mat::Zero(dim(k + 1), dim(k));
    const int o = offset(k), o1 = offset(k + 1);
    for (int j = 0; j < dim(k); ++j)
        for (const auto& [i, c] : diff_[static_cast<size_t>(o + j)]) m(i - o1, j) += c;
    return m;
}

Vec Dgla::d_vec(const Vec& a) const {
    Vec out = Vec::Zero(size());
    for (int i = 0; i < size(); ++i) {
        if (a(i) == 0) continue;
        for (const auto& [k, c] : diff_[static_cast<size_t>(i)]) out(k) += a(i) * c;
    }
    return out;
}

Vec Dgla::bracket_vec(const Vec& a, const Vec& b) const {
    Vec out = Vec::Zero(size());
    std::vector<int> nb;
    for (int j = 0; j < size(); ++j)
        if (b(j) != 0) nb.push_back(j);
    for (int i = 0; i < size(); ++i) {
        if (a(i) == 0) continue;
        for (int j : nb) {
            const SparseVec& ij = bracket(i, j);
            if (ij.empty()) continue;
            const Rat ab = a(i) * b(j);
            for (const auto& [k, c] : ij) out(k) += ab * c;
        }
    }
    return out;
}

ChainComplexQ Dgla::complex() const {
    if (size() == 0) return ChainComplexQ(0, {0}, {});
    std::vector<Index> dims;
    std::vector<Mat> diffs;
    for (int k = lo_; k <= hi_; ++k) dims.push_back(dim(k));
    for (int k = lo_; k < hi_; ++k) diffs.push_back(d_matrix(k));
    return ChainComplexQ(lo_, dims, diffs);
}

int DglaBuilder::add(const std::string& name, int degree) {
    for (const auto& b : basis_)
        if (b.name == name) throw std::invalid_argument("DglaBuilder: duplicate basis name '" + name + "'");
    basis_.push_back({name, degree});
    return static_cast<int>(basis_.size()) - 1;
}

int DglaBuilder::idx(const std::string& n) const {
    for (size_t i = 0; i < basis_.size(); ++i)
        if (basis_[i].name == n) return static_cast<int>(i);
    throw std::invalid_argument("DglaBuilder: unknown basis name '" + n + "'");
}

void DglaBuilder::set_d(const std::string& from, const std::string& to, const Rat& c) {
    d_entries_.emplace_back(idx(from), idx(to), c);
}

void DglaBuilder::set_bracket(const std::string& a, const std::string& b, const SparseVec& value) {
    brackets_.emplace_back(idx(a), idx(b), value);
}

void DglaBuilder::set_bracket(const std::string& a, const std::string& b, const std::string& c, const Rat& coeff) {
    set_bracket(a, b, SparseVec{{idx(c), coeff}});
}

DglaPtr DglaBuilder::build() const {
    const size_t n = basis_.size();
    std::vector<size_t> order(n);
    for (size_t i = 0; i < n; ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(),
                     [&](size_t a, size_t b) { return basis_[a].degree < basis_[b].degree; });
    std::vector<int> pos(n);
    for (size_t k = 0; k < n; ++k) pos[order[k]] = static_cast<int>(k);
    std::vector<Dgla::Basis> basis(n);
    for (size_t k = 0; k < n; ++k) basis[k] = basis_[order[k]];
    std::vector<SparseVec> diff(n);
    for (const auto& [f, t, c] : d_entries_) diff[static_cast<size_t>(pos[static_cast<size_t>(f)])].emplace_back(pos[static_cast<size_t>(t)], c);
    std::vector<SparseVec> br(n * n);
    std::vector<bool> explicit_set(n * n, false);
    for (const auto& [a, b, v] : brackets_) {
        size_t i = static_cast<size_t>(pos[static_cast<size_t>(a)]), j = static_cast<size_t>(pos[static_cast<size_t>(b)]);
        SparseVec w;
        for (const auto& [k, c] : v) w.emplace_back(pos[static_cast<size_t>(k)], c);
        br[i * n + j] = w;
        explicit_set[i * n + j] = true;
    }
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) {
            if (explicit_set[i * n + j] || !explicit_set[j * n + i]) continue;
            const int s = -sign(basis[i].degree * basis[j].degree);
            SparseVec w;
            for (const auto& [k, c] : br[j * n + i]) w.emplace_back(k, s * c);
            br[i * n + j] = w;
        }
    return std::make_shared<const Dgla>(basis, diff, br);
}

ValidationReport validate_dgla(const Dgla& l) {
    ValidationReport rep;
    const int n = l.size();
    constexpr size_t cap = 50;
    for (int k = l.lo(); k <= l.hi(); ++k) {
        Mat dd = l.d_matrix(k + 1) * l.d_matrix(k);
        if (!is_zero(dd)) rep.add("d∘d != 0 on degree " + std::to_string(k));
    }
    std::vector<Vec> e(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) e[static_cast<size_t>(i)] = to_dense({{i, Rat(1)}}, n);
    auto br = [&](int i, int j) { return to_dense(l.bracket(i, j), n); };
    for (int i = 0; i < n && rep.violations.size() < cap; ++i)
        for (int j = i; j < n; ++j) {
            Vec lhs = br(i, j);
            Vec rhs = -sign(l.degree(i) * l.degree(j)) * br(j, i);
            if (lhs != rhs) rep.add("antisymmetry fails on (" + l.name(i) + ", " + l.name(j) + "): [" + l.name(i) + "," +
                                    l.name(j) + "] = " + fmt_vec(l, lhs));
        }
    for (int i = 0; i < n && rep.violations.size() < cap; ++i)
        for (int j = 0; j < n; ++j) {
            Vec lhs = l.d_vec(br(i, j));
            Vec rhs = l.bracket_vec(l.d_vec(e[static_cast<size_t>(i)]), e[static_cast<size_t>(j)]) +
                      sign(l.degree(i)) * l.bracket_vec(e[static_cast<size_t>(i)], l.d_vec(e[static_cast<size_t>(j)]));
            if (lhs != rhs) rep.add("Leibniz fails on (" + l.name(i) + ", " + l.name(j) + ")");
        }
    // [a,[b,c]] = [[a,b],c] + (-1)^{|a||b|}[b,[a,c]]
    std::vector<Vec> bc(static_cast<size_t>(n) * static_cast<size_t>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) bc[static_cast<size_t>(i * n + j)] = br(i, j);
    auto brv = [&](int i, const Vec& v) {
        Vec out = Vec::Zero(n);
        for (int k = 0; k < n; ++k)
            if (v(k) != 0) out += v(k) * bc[static_cast<size_t>(i * n + k)];
        return out;
    };
    auto vbr = [&](const Vec& v, int j) {
        Vec out = Vec::Zero(n);
        for (int k = 0; k < n; ++k)
            if (v(k) != 0) out += v(k) * bc[static_cast<size_t>(k * n + j)];
        return out;
    };
    for (int a = 0; a < n && rep.violations.size() < cap; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c) {
                const int da = l.degree(a), db = l.degree(b), dc = l.degree(c);
                if (da + db + dc < l.lo() || da + db + dc > l.hi()) continue;
                Vec lhs = brv(a, bc[static_cast<size_t>(b * n + c)]);
                Vec rhs = vbr(bc[static_cast<size_t>(a * n + b)], c) + sign(da * db) * brv(b, bc[static_cast<size_t>(a * n + c)]);
                if (lhs != rhs) {
                    rep.add("Jacobi fails on (" + l.name(a) + ", " + l.name(b) + ", " + l.name(c) + ")");
                    if (rep.violations.size() >= cap) break;
                }
            }
    return rep;
}

Index cohomology_dgla(const Dgla& l, int i) { return cohomology(l.complex(), i).dim; }

SparseVec DglaMap::image(int i) const {
    SparseVec out;
    for (Index r = 0; r < m.rows(); ++r)
        if (m(r, i) != 0) out.emplace_back(static_cast<int>(r), m(r, i));
    return out;
}

ValidationReport validate_map(const DglaMap& f) {
    ValidationReport rep;
    const Dgla& s = *f.source;
    const Dgla& t = *f.target;
    if (f.m.rows() != t.size() || f.m.cols() != s.size()) {
        rep.add("map has wrong shape");
        return rep;
    }
    for (int j = 0; j < s.size(); ++j)
        for (int i = 0; i < t.size(); ++i)
            if (f.m(i, j) != 0 && t.degree(i) != s.degree(j))
                rep.add("map does not preserve degree on " + s.name(j));
    if (!rep.ok()) return rep;
    const int n = s.size();
    for (int j = 0; j < n; ++j) {
        Vec e = to_dense({{j, Rat(1)}}, n);
        if (t.d_vec(f(e)) != f(s.d_vec(e))) rep.add("map does not commute with d on " + s.name(j));
    }
    std::vector<SparseVec> img(static_cast<size_t>(n));
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < t.size(); ++i)
            if (f.m(i, j) != 0) img[static_cast<size_t>(j)].emplace_back(i, f.m(i, j));
    for (int a = 0; a < n && rep.violations.size() < 50; ++a)
        for (int b = 0; b < n; ++b) {
            std::map<int, Rat> diff;
            for (const auto& [k, c] : s.bracket(a, b))
                for (const auto& [i, v] : img[static_cast<size_t>(k)]) diff[i] += c * v;
            for (const auto& [x, cx] : img[static_cast<size_t>(a)])
                for (const auto& [y, cy] : img[static_cast<size_t>(b)]) {
                    const SparseVec& xy = t.bracket(x, y);
                    if (xy.empty()) continue;
                    const Rat w = cx * cy;
                    for (const auto& [i, v] : xy) diff[i] -= w * v;
                }
            for (const auto& [i, v] : diff)
                if (v != 0) {
                    rep.add("map does not commute with bracket on (" + s.name(a) + ", " + s.name(b) + ")");
                    break;
                }
        }
    return rep;
}

DglaMap compose(const DglaMap& f, const DglaMap& g) { return DglaMap{g.source, f.target, f.m * g.m}; }

DglaMap identity_map(const DglaPtr& l) { return DglaMap{l, l, Mat::Identity(l->size(), l->size())}; }

DglaMap zero_map(const DglaPtr& s, const DglaPtr& t) { return DglaMap{s, t, Mat::Zero(t->size(), s->size())}; }

ChainMapQ chain_map(const DglaMap& f) {
    ChainComplexQ src = f.source->complex();
    ChainComplexQ tgt = f.target->complex();
    const int lo = std::min(src.lo(), tgt.lo());
    const int hi = std::max(src.hi(), tgt.hi());
    std::vector<Mat> maps;
    for (int k = lo; k <= hi; ++k) {
        Mat b = Mat::Zero(f.target->dim(k), f.source->dim(k));
        if (b.size() > 0) b = f.m.block(f.target->offset(k), f.source->offset(k), b.rows(), b.cols());
        maps.push_back(b);
    }
    return make_chain_map(src, tgt, maps, lo);
}

DglaPtr zero_dgla() { return std::make_shared<const Dgla>(std::vector<Dgla::Basis>{}, std::vector<SparseVec>{}, std::vector<SparseVec>{}); }

namespace {

// Position of a's and b's basis vectors inside direct_sum(a, b).
std::pair<std::vector<int>, std::vector<int>> sum_positions(const Dgla& a, const Dgla& b) {
    std::vector<std::tuple<int, int, int>> all;  // degree, which, index
    for (int i = 0; i < a.size(); ++i) all.emplace_back(a.degree(i), 0, i);
    for (int i = 0; i < b.size(); ++i) all.emplace_back(b.degree(i), 1, i);
    std::stable_sort(all.begin(), all.end());
    std::vector<int> pa(static_cast<size_t>(a.size())), pb(static_cast<size_t>(b.size()));
    for (size_t k = 0; k < all.size(); ++k) {
        auto [deg, w, i] = all[k];
        (w == 0 ? pa : pb)[static_cast<size_t>(i)] = static_cast<int>(k);
    }
    return {pa, pb};
}

}  // namespace

DglaPtr direct_sum(const DglaPtr& a, const DglaPtr& b) {
    auto [pa, pb] = sum_positions(*a, *b);
    const int n = a->size() + b->size();
    std::vector<Dgla::Basis> basis(static_cast<size_t>(n));
    std::vector<SparseVec> diff(static_cast<size_t>(n));
    std::vector<SparseVec> br(static_cast<size_t>(n) * static_cast<size_t>(n));
    auto fill = [&](const Dgla& l, const std::vector<int>& p) {
        for (int i = 0; i < l.size(); ++i) {
            basis[static_cast<size_t>(p[static_cast<size_t>(i)])] = l.basis(i);
            for (const auto& [k, c] : l.d(i)) diff[static_cast<size_t>(p[static_cast<size_t>(i)])].emplace_back(p[static_cast<size_t>(k)], c);
            for (int j = 0; j < l.size(); ++j)
                for (const auto& [k, c] : l.bracket(i, j))
                    br[static_cast<size_t>(p[static_cast<size_t>(i)]) * static_cast<size_t>(n) + static_cast<size_t>(p[static_cast<size_t>(j)])]
                        .emplace_back(p[static_cast<size_t>(k)], c);
        }
    };
    fill(*a, pa);
    fill(*b, pb);
    // Disambiguate repeated names.
    std::map<std::string, int> seen;
    for (const auto& bs : basis) seen[bs.name]++;
    for (int i = 0; i < a->size(); ++i) {
        auto& nm = basis[static_cast<size_t>(pa[static_cast<size_t>(i)])].name;
        if (seen[nm] > 1) nm = "L." + nm;
    }
    for (int i = 0; i < b->size(); ++i) {
        auto& nm = basis[static_cast<size_t>(pb[static_cast<size_t>(i)])].name;
        if (seen[nm] > 1) nm = "R." + nm;
    }
    return std::make_shared<const Dgla>(basis, diff, br);
}

DirectSum direct_sum_of(const std::vector<DglaPtr>& parts, const std::vector<std::string>& prefixes) {
    DirectSum out;
    out.parts = parts;
    int lo = 0, hi = -1;
    bool any = false;
    for (const auto& p : parts)
        if (p->size() > 0) {
            lo = any ? std::min(lo, p->lo()) : p->lo();
            hi = any ? std::max(hi, p->hi()) : p->hi();
            any = true;
        }
    out.pos.resize(parts.size());
    int next = 0;
    for (int k = lo; k <= hi; ++k)
        for (size_t i = 0; i < parts.size(); ++i) {
            out.pos[i].resize(static_cast<size_t>(parts[i]->size()));
            for (int j = parts[i]->offset(k); j < parts[i]->offset(k) + parts[i]->dim(k); ++j) out.pos[i][static_cast<size_t>(j)] = next++;
        }
    for (size_t i = 0; i < parts.size(); ++i) out.pos[i].resize(static_cast<size_t>(parts[i]->size()));
    const size_t n = static_cast<size_t>(next);
    std::vector<Dgla::Basis> basis(n);
    std::vector<SparseVec> diff(n);
    std::vector<SparseVec> br(n * n);
    for (size_t i = 0; i < parts.size(); ++i) {
        const Dgla& l = *parts[i];
        const auto& p = out.pos[i];
        for (int a = 0; a < l.size(); ++a) {
            const size_t pa = static_cast<size_t>(p[static_cast<size_t>(a)]);
            basis[pa] = l.basis(a);
            if (i < prefixes.size() && !prefixes[i].empty()) basis[pa].name = prefixes[i] + "." + basis[pa].name;
            for (const auto& [k, c] : l.d(a)) diff[pa].emplace_back(p[static_cast<size_t>(k)], c);
            for (int b = 0; b < l.size(); ++b)
                for (const auto& [k, c] : l.bracket(a, b))
                    br[pa * n + static_cast<size_t>(p[static_cast<size_t>(b)])].emplace_back(p[static_cast<size_t>(k)], c);
        }
    }
    out.sum = std::make_shared<const Dgla>(basis, diff, br);
    return out;
}

DglaMap DirectSum::inclusion(size_t i) const {
    Mat m = Mat::Zero(sum->size(), parts[i]->size());
    for (int j = 0; j < parts[i]->size(); ++j) m(pos[i][static_cast<size_t>(j)], j) = 1;
    return DglaMap{parts[i], sum, m};
}

DglaMap DirectSum::projection(size_t i) const {
    DglaMap inc = inclusion(i);
    return DglaMap{sum, parts[i], inc.m.transpose()};
}

DglaMap sum_inclusion(const DglaPtr& sum, const DglaPtr& a, const DglaPtr& b, int which) {
    auto [pa, pb] = sum_positions(*a, *b);
    const auto& p = which == 0 ? pa : pb;
    const DglaPtr& part = which == 0 ? a : b;
    Mat m = Mat::Zero(sum->size(), part->size());
    for (int i = 0; i < part->size(); ++i) m(p[static_cast<size_t>(i)], i) = 1;
    return DglaMap{part, sum, m};
}

DglaMap sum_projection(const DglaPtr& sum, const DglaPtr& a, const DglaPtr& b, int which) {
    DglaMap inc = sum_inclusion(sum, a, b, which);
    return DglaMap{sum, inc.source, inc.m.transpose()};
}

SubDgla sub_dgla(const DglaPtr& amb, const std::vector<Mat>& spans, const std::string& prefix) {
    const Dgla& L = *amb;
    const int n = L.size();
    std::vector<Vec> cols;
    std::vector<Dgla::Basis> basis;
    std::vector<int> deg_start;
    std::vector<Mat> degree_basis;
    std::vector<std::vector<Index>> pivot_rows;
    std::vector<Mat> left_inv;
    for (int k = L.lo(); k <= L.hi(); ++k) {
        const size_t kk = static_cast<size_t>(k - L.lo());
        Mat s = kk < spans.size() ? spans[kk] : Mat(n, 0);
        if (s.rows() != n) throw std::invalid_argument("sub_dgla: span has wrong ambient size");
        deg_start.push_back(static_cast<int>(cols.size()));
        for (Index c = 0; c < s.cols(); ++c) {
            cols.push_back(s.col(c));
            basis.push_back({prefix + "v" + std::to_string(cols.size() - 1), k});
        }
        // Left inverse on a set of independent rows.
        Rref rr = rref(Mat(s.transpose()));
        if (rr.rank() != s.cols()) throw std::invalid_argument("sub_dgla: spanning vectors are dependent");
        Mat sub(s.cols(), s.cols());
        for (Index r = 0; r < s.cols(); ++r) sub.row(r) = s.row(rr.pivots[static_cast<size_t>(r)]);
        pivot_rows.push_back(rr.pivots);
        degree_basis.push_back(s);
        left_inv.push_back(invert(sub));
    }
    deg_start.push_back(static_cast<int>(cols.size()));
    const size_t m = cols.size();
    // Sparse supports of the spanning vectors.
    std::vector<SparseVec> sparse(m);
    for (size_t i = 0; i < m; ++i)
        for (int r = 0; r < n; ++r)
            if (cols[i](r) != 0) sparse[i].emplace_back(r, cols[i](r));
    auto coords = [&](int k, const std::map<int, Rat>& v, const std::string& what) -> SparseVec {
        SparseVec out;
        if (v.empty()) return out;
        if (k < L.lo() || k > L.hi()) throw std::invalid_argument("sub_dgla: " + what + " leaves the degree range");
        const size_t kk = static_cast<size_t>(k - L.lo());
        const Mat& s = degree_basis[kk];
        if (s.cols() == 0) throw std::invalid_argument("sub_dgla: not closed under " + what);
        Vec rhs = Vec::Zero(s.cols());
        for (Index r = 0; r < s.cols(); ++r) {
            auto it = v.find(static_cast<int>(pivot_rows[kk][static_cast<size_t>(r)]));
            if (it != v.end()) rhs(r) = it->second;
        }
        const Vec x = left_inv[kk] * rhs;
        std::map<int, Rat> back;
        for (Index r = 0; r < s.cols(); ++r) {
            if (x(r) == 0) continue;
            const int g = deg_start[kk] + static_cast<int>(r);
            out.emplace_back(g, x(r));
            for (const auto& [row, c] : sparse[static_cast<size_t>(g)]) back[row] += x(r) * c;
        }
        for (auto it = back.begin(); it != back.end();) it = it->second == 0 ? back.erase(it) : std::next(it);
        if (back != v) throw std::invalid_argument("sub_dgla: not closed under " + what);
        return out;
    };
    auto clean = [](std::map<int, Rat>& acc) {
        for (auto it = acc.begin(); it != acc.end();) it = it->second == 0 ? acc.erase(it) : std::next(it);
    };
    std::vector<SparseVec> diff(m);
    std::vector<SparseVec> br(m * m);
    for (size_t i = 0; i < m; ++i) {
        std::map<int, Rat> acc;
        for (const auto& [a, ca] : sparse[i])
            for (const auto& [k, c] : L.d(a)) acc[k] += ca * c;
        clean(acc);
        diff[i] = coords(basis[i].degree + 1, acc, "d");
    }
    for (size_t i = 0; i < m; ++i)
        for (size_t j = 0; j < m; ++j) {
            std::map<int, Rat> acc;
            for (const auto& [a, ca] : sparse[i])
                for (const auto& [b, cb] : sparse[j]) {
                    const SparseVec& ab = L.bracket(a, b);
                    if (ab.empty()) continue;
                    const Rat w = ca * cb;
                    for (const auto& [k, c] : ab) acc[k] += w * c;
                }
            clean(acc);
            br[i * m + j] = coords(basis[i].degree + basis[j].degree, acc, "bracket");
        }
    auto sub = std::make_shared<const Dgla>(basis, diff, br);
    Mat inc(n, static_cast<Index>(m));
    for (size_t i = 0; i < m; ++i) inc.col(static_cast<Index>(i)) = cols[i];
    return SubDgla{sub, DglaMap{sub, amb, inc}};
}

}  // namespace defo
